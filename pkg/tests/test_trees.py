"""Plotted trees, probe balls, recovery round-trips, and the tree dendrite."""

import random
from fractions import Fraction as F

from planarpi.cantor import TreePresentation, full_tree
from planarpi.cesets import EnumerationScript
from planarpi.continua import (
    PlottedTreePresentation,
    build_dendrite_h,
    fat_tree,
    h_cut_box,
    placed_fat_tree,
    plot_point,
    plotted_tree,
    probe_balls,
    recover_tree,
)
from planarpi.geom import (
    connectivity_components,
    point,
    region_covers,
    segment,
    squared_distance,
    subtract_poly,
)


def all_strings_upto(depth):
    out = [""]
    for length in range(1, depth + 1):
        out.extend(format(i, f"0{length}b") for i in range(1 << length))
    return out


def random_schedule(rng, depth=7, entries=5):
    prune = []
    for _ in range(entries):
        length = rng.randint(1, depth)
        sigma = "".join(rng.choice("01") for _ in range(length))
        prune.append((sigma, rng.randint(0, depth)))
    return TreePresentation(prune)


class TestPlotPoint:
    def test_root(self):
        assert plot_point("") == (F(1, 2), F(1))

    def test_one(self):
        assert plot_point("1") == (F(5, 6), F(1, 2))

    def test_zero_one(self):
        assert plot_point("01") == (F(5, 18), F(1, 4))

    def test_level_order_matches_layout(self):
        # left subtree left of right subtree at each level
        for length in range(1, 6):
            xs = [plot_point(format(i, f"0{length}b"))[0] for i in range(1 << length)]
            assert xs == sorted(xs)


class TestProbeBalls:
    def test_minus_root(self):
        minus, plus = probe_balls("")
        assert minus.center == (F(1, 2), F(1))
        assert minus.radius == F(1, 4)
        assert plus is None

    def test_minus_balls_pairwise_disjoint(self):
        specs = [probe_balls(s)[0] for s in all_strings_upto(6)]
        for i in range(len(specs)):
            for j in range(i + 1, len(specs)):
                a, b = specs[i], specs[j]
                d2 = (a.center[0] - b.center[0]) ** 2 + (a.center[1] - b.center[1]) ** 2
                assert d2 > (a.radius + b.radius) ** 2

    def test_plus_ball_meets_only_its_edge(self):
        _, plus = probe_balls("0")
        center = point(*plus.center)
        r2 = plus.radius * plus.radius
        for sigma in all_strings_upto(6):
            if not sigma:
                continue
            edge = segment(plot_point(sigma[:-1]), plot_point(sigma))
            d2 = squared_distance(center, edge)
            if sigma == "0":
                assert d2 < r2
            else:
                assert d2 >= r2


class TestPlottedTree:
    def test_full_tree_edge_count(self):
        region = plotted_tree(full_tree(), 0, 3)
        assert len(region.pieces) == 2 + 4 + 8

    def test_prune_drops_subtree(self):
        tree = TreePresentation([("1", 0)])
        region = plotted_tree(tree, 1, 3)
        assert len(region.pieces) == 1 + 2 + 4

    def test_connected(self):
        rng = random.Random(12)
        for _ in range(5):
            tree = random_schedule(rng, depth=5)
            if tree.is_empty(9):
                continue
            region = plotted_tree(tree, 9, 5)
            assert len(connectivity_components(region)) == 1


class TestRecoverTree:
    def test_full_tree_round_trip(self):
        pres = PlottedTreePresentation(full_tree(), depth=4)
        recovered = recover_tree(pres, 0, 4)
        assert list(recovered.strings) == sorted(
            all_strings_upto(4), key=lambda s: (len(s), s)
        )

    def test_pruned_subtree_omitted(self):
        tree = TreePresentation([("1", 0)])
        pres = PlottedTreePresentation(tree, depth=4)
        recovered = recover_tree(pres, tree.final_stage, 4)
        assert all(not s.startswith("1") for s in recovered.strings)
        assert "0" in recovered.strings

    def test_empty_region_flagged(self):
        class EmptyPresentation:
            final_stage = 0

            def snapshot(self, stage):
                from planarpi.geom import RegionSnapshot

                return RegionSnapshot(stage, [])

        recovered = recover_tree(EmptyPresentation(), 0, 3)
        assert recovered.strings == ("",)
        assert recovered.region_empty

    def test_round_trip_random_schedules(self):
        rng = random.Random(99)
        for _ in range(12):
            tree = random_schedule(rng, depth=6)
            if tree.is_empty(10):
                continue
            depth = 5
            pres = PlottedTreePresentation(tree, depth=depth)
            stage = tree.final_stage
            recovered = recover_tree(pres, stage, depth)
            expected = [
                s
                for s in all_strings_upto(depth)
                if tree.survives(s, stage)
            ]
            assert list(recovered.strings) == sorted(
                expected, key=lambda s: (len(s), s)
            )


class TestFatTree:
    def test_zero_width_collapses(self):
        flat = fat_tree(full_tree(), F(0), 0, 3)
        plain = plotted_tree(full_tree(), 0, 3)
        ok, _ = region_covers(plain.pieces, flat.pieces)
        assert ok
        ok, _ = region_covers(flat.pieces, plain.pieces)
        assert ok

    def test_placed_bounding_box(self):
        w, c, t, q = F(1, 2), F(1, 4), 2, F(1, 16)
        region = placed_fat_tree(full_tree(), w, c, t, q, 0, 4)
        for piece in region.pieces:
            x0, y0, x1, y1 = piece.bbox()
            assert x0 >= c - q / 2 and x1 <= c + q / 2
            assert y0 >= F(1, 1 << (t + 1)) and y1 <= F(1, 1 << t)

    def test_root_maps_to_bottom_center(self):
        region = placed_fat_tree(full_tree(), F(0), F(1, 4), 2, F(1, 16), 0, 2)
        target = (F(1, 4), F(1, 8))
        assert any(p.contains_point(target) for p in region.pieces)

    def test_fat_tree_connected_full(self):
        region = fat_tree(full_tree(), F(1, 2), 0, 4)
        assert len(connectivity_components(region)) == 1


class TestDendriteH:
    SCRIPT = EnumerationScript([(1, 1), (3, 3)])

    def test_connected_every_stage(self):
        tree = full_tree()
        for stage in range(4):
            region = build_dendrite_h(stage, self.SCRIPT, tree)
            assert len(connectivity_components(region)) == 1, stage

    def test_enumerated_rising_is_fat_path(self):
        # t=1 enumerated at stage 1: a single fat path of depth `stage`
        # hangs over the rising: 2 copies per edge plus one tip cap, all
        # inside the probe window [3/8, 5/8] above the leg tops
        stage = 3
        region = build_dendrite_h(stage, self.SCRIPT, full_tree())
        x_lo, x_hi = F(3, 8), F(5, 8)
        tree_pieces = [
            p
            for p in region.pieces
            if p.bbox()[1] >= F(1, 4) and x_lo <= p.bbox()[0] and p.bbox()[2] <= x_hi
        ]
        assert len(tree_pieces) == 2 * stage + 1

    def test_unenumerated_rising_is_thin_full_tree(self):
        stage = 2
        region = build_dendrite_h(stage, self.SCRIPT, full_tree())
        # t=2 not enumerated: zero-width copy of the truncated full tree
        # (2 + 4 edges, the +- copies coincide, no caps)
        x_lo, x_hi = F(3, 16), F(5, 16)
        tree_pieces = [
            p
            for p in region.pieces
            if p.bbox()[1] >= F(1, 8) and x_lo <= p.bbox()[0] and p.bbox()[2] <= x_hi
        ]
        assert len(tree_pieces) == 2 + 4

    def test_cut_dichotomy(self):
        stage = 3
        depth = max(stage, 1)
        region = build_dendrite_h(stage, self.SCRIPT, full_tree())
        for t in range(stage + 1):
            cut = subtract_poly(region, h_cut_box(t, depth))
            expected = 2 if t in (1, 3) else 1
            assert len(connectivity_components(cut)) == expected, t
