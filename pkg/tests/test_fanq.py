"""The snake machine: stage 0, chains, injuries, and containment facts."""

from fractions import Fraction as F

import pytest

from planarpi.cantor import TreePresentation, fat_level, full_tree
from planarpi.continua.fanq import (
    DestinationTrack,
    build_cantor_fan_q,
    check_touch,
    q_snapshots,
)
from planarpi.continua.regions import LEFT, RIGHT, UP
from planarpi.geom import (
    RegionSnapshot,
    connectivity_components,
    rect,
    region_covers,
    regions_equal,
)
from planarpi.verify import check_touch_chain


def two_branch_tree(depth: int = 12) -> TreePresentation:
    """Symmetric presentation keeping exactly 0^k and 1^k (pruned at stage 0)."""
    entries = []
    for k in range(1, depth):
        entries.append(("0" * k + "1", 0))
        entries.append(("1" * k + "0", 0))
    return TreePresentation(entries)


INJURY_TRACK = [(1, 4), (2, 2), (3, 6), (4, 1), (5, 8), (6, 11)]


class TestDestinationTrack:
    def test_stage_zero_full_interval(self):
        track = DestinationTrack(INJURY_TRACK)
        assert track.gamma(0) == (F(1, 3), F(2, 3))

    def test_monotone_min(self):
        track = DestinationTrack(INJURY_TRACK)
        gmins = [track.gamma(s)[0] for s in range(7)]
        assert gmins == sorted(gmins)
        assert len(set(gmins)) == len(gmins)

    def test_bounds(self):
        track = DestinationTrack(INJURY_TRACK)
        for s in range(7):
            g0, g1 = track.gamma(s)
            assert F(1, 3) <= g0 <= g1 <= F(2, 3)

    def test_injury_pattern(self):
        track = DestinationTrack(INJURY_TRACK)
        injured = []
        for s in range(6):
            g0, g1 = track.gamma(s)
            h0, h1 = track.gamma(s + 1)
            injured.append(not (g0 <= h0 and h1 <= g1))
        assert injured == [False, True, False, True, False, False]

    def test_validation(self):
        with pytest.raises(ValueError):
            DestinationTrack([(1, 0)])  # 0 is reserved for the tail
        with pytest.raises(ValueError):
            DestinationTrack([(1, 3), (2, 3)])  # repeated element


class TestStageZero:
    def test_q0_is_single_box(self):
        tree = two_branch_tree()
        track = DestinationTrack(INJURY_TRACK)
        snapshot, graph = build_cantor_fan_q(0, tree, track)
        m = fat_level(tree, 0)
        box = RegionSnapshot(0, [rect(F(1, 3) - F(1, 3), m.l_minus, F(2, 3), m.r_plus)])
        assert regions_equal(snapshot, box)
        assert len(graph.blocks) == 1
        assert len(graph.end_boxes) == 1


class TestNonInjuredChain:
    def test_six_blocks_and_directions(self):
        tree = two_branch_tree()
        track = DestinationTrack([(1, 4), (2, 7)])  # never injured
        _, graph = build_cantor_fan_q(2, tree, track)
        # stage block + 2 * 6 new blocks
        assert len(graph.blocks) == 13
        dirs = [e.direction for e in graph.touches[1:7]]
        assert dirs == [LEFT, UP, RIGHT, RIGHT, UP, LEFT]
        rep = check_touch_chain(graph, tree)
        assert rep.verdict == "pass", rep.witness

    def test_new_blocks_inside_old_straight_and_end_box(self):
        tree = two_branch_tree()
        track = DestinationTrack([(1, 4), (2, 7)])
        _, graph = build_cantor_fan_q(1, tree, track)
        old = graph.blocks[0]
        end_box = graph.end_boxes[0]
        z_new = [b for b in graph.blocks if b.creation_stage == 1]
        assert len(z_new) == 6
        # corners 0,1 inside the end box; 2..5 inside the straight block body
        host_old = old.body_at(tree, 0)
        host_end = end_box.body_at(tree, 0)
        for blk in z_new[:2]:
            ok, _ = region_covers(host_end, blk.body_at(tree, 1))
            assert ok, blk.id
        for blk in z_new[2:]:
            ok, _ = region_covers(host_old, blk.body_at(tree, 1))
            assert ok, blk.id

    def test_new_end_box_inside_old_straight_body(self):
        tree = two_branch_tree()
        track = DestinationTrack([(1, 4), (2, 7)])
        _, graph = build_cantor_fan_q(1, tree, track)
        host_old = graph.blocks[0].body_at(tree, 0)
        ok, _ = region_covers(host_old, graph.end_boxes[1].body_at(tree, 1))
        assert ok

    def test_block_bodies_antitone(self):
        tree = two_branch_tree()
        track = DestinationTrack(INJURY_TRACK)
        _, graph = build_cantor_fan_q(4, tree, track)
        for blk in graph.blocks:
            for v in range(blk.creation_stage, 4):
                older = blk.body_at(tree, v)
                newer = blk.body_at(tree, v + 1)
                ok, witness = region_covers(older, newer)
                assert ok, (blk.id, v, witness)

    def test_new_blocks_avoid_next_straight_body(self):
        # union of Z(s,2..6) misses the shrunken old straight block
        tree = two_branch_tree()
        track = DestinationTrack([(1, 4)])
        _, graph = build_cantor_fan_q(1, tree, track)
        old = graph.blocks[0]
        shrunk = old.body_at(tree, 1)
        for blk in graph.blocks[3:]:
            for piece in blk.body_at(tree, 1):
                for host_piece in shrunk:
                    from planarpi.geom import convex_intersection

                    inter = convex_intersection(piece, host_piece)
                    assert inter is None or inter.dim() < 2


class TestInjuredStages:
    def test_rollback_host_returns(self):
        tree = two_branch_tree()
        track = DestinationTrack(INJURY_TRACK)
        _, graph = build_cantor_fan_q(2, tree, track)
        returns = [b for b in graph.blocks if b.host_id is not None]
        # retracing stage-1's six blocks: 3 per corner (x4) + 1 per straight (x2)
        assert len(returns) == 14
        by_host: dict[int, int] = {}
        for b in returns:
            by_host[b.host_id] = by_host.get(b.host_id, 0) + 1
        for host_id, count in by_host.items():
            host = graph.block(host_id)
            assert count == (3 if host.kind == "corner" else 1)

    def test_returns_inside_hosts(self):
        tree = two_branch_tree()
        track = DestinationTrack(INJURY_TRACK)
        _, graph = build_cantor_fan_q(4, tree, track)
        for blk in graph.blocks:
            if blk.host_id is None:
                continue
            host = graph.block(blk.host_id)
            s = blk.creation_stage - 1
            host_body = host.body_at(tree, s)
            ok, witness = region_covers(host_body, blk.body_at(tree, blk.creation_stage))
            assert ok, (blk.id, blk.host_id, witness)

    def test_corner_return_triple_order(self):
        tree = two_branch_tree()
        track = DestinationTrack(INJURY_TRACK)
        _, graph = build_cantor_fan_q(2, tree, track)
        # find a corner host's triple: entry leg, chunk, exit leg share host_id
        triples: dict[int, list] = {}
        for b in graph.blocks:
            if b.host_id is not None:
                triples.setdefault(b.host_id, []).append(b)
        for host_id, blocks in triples.items():
            host = graph.block(host_id)
            if host.kind != "corner":
                continue
            entry, chunk, exit_leg = sorted(blocks, key=lambda b: b.id)
            assert chunk.kind == "corner" and chunk.symbol == host.symbol
            assert entry.d_in == host.d_out.reverse()
            assert exit_leg.d_in == host.d_in.reverse()

    def test_partial_rollback_stops_at_frontier(self):
        # elements [1,5,7,3]: the stage-4 injury lands back inside the
        # stage-1 interval but not the stage-2 one, so only the blocks of
        # collections 2 and 3 are retraced
        tree = two_branch_tree()
        track = DestinationTrack([(1, 1), (2, 5), (3, 7), (4, 3)])
        snaps, graph = q_snapshots(4, tree, track)
        returns = [b for b in graph.blocks if b.host_id is not None]
        host_stages = sorted({graph.block(b.host_id).creation_stage for b in returns})
        assert host_stages == [2, 3]
        assert check_touch_chain(graph, tree).verdict == "pass"
        for a, b in zip(snaps, snaps[1:]):
            ok, witness = region_covers(a.pieces, b.pieces)
            assert ok, (b.stage, witness)
        for snap in snaps:
            assert len(connectivity_components(snap)) == 1

    def test_degenerate_script_rejected(self):
        # consecutive elements 4 then 5 collapse the max track, zeroing a
        # corner width: the builder must refuse rather than emit degenerate
        # blocks (the distinctness assumption on the track)
        tree = two_branch_tree()
        track = DestinationTrack([(1, 1), (2, 4), (3, 5)])
        with pytest.raises(ValueError):
            build_cantor_fan_q(3, tree, track)

    def test_full_run_chain_and_geometry(self):
        tree = two_branch_tree()
        track = DestinationTrack(INJURY_TRACK)
        _, graph = build_cantor_fan_q(6, tree, track)
        rep = check_touch_chain(graph, tree)
        assert rep.verdict == "pass", rep.witness


class TestSnapshots:
    def test_nesting_connectivity_product_counts(self):
        tree = two_branch_tree()
        track = DestinationTrack(INJURY_TRACK)
        snaps, graph = q_snapshots(6, tree, track)
        for a, b in zip(snaps, snaps[1:]):
            ok, witness = region_covers(a.pieces, b.pieces)
            assert ok, (b.stage, witness)
        for snap in snaps:
            assert len(connectivity_components(snap)) == 1, snap.stage
        # straight-block product structure: rectangles = level interval count
        for blk in graph.blocks:
            if blk.kind != "straight":
                continue
            for t in range(blk.creation_stage, 7):
                body = blk.body_at(tree, t)
                assert len(body) == len(fat_level(tree, t).intervals)

    def test_requires_symmetric_tree(self):
        lopsided = TreePresentation([("1", 0)])
        track = DestinationTrack([(1, 4)])
        with pytest.raises(ValueError):
            build_cantor_fan_q(1, lopsided, track)

    def test_stage_budget_enforced(self):
        tree = two_branch_tree()
        track = DestinationTrack([(1, 4)])
        with pytest.raises(ValueError):
            build_cantor_fan_q(3, tree, track)

    def test_full_tree_also_works(self):
        tree = full_tree()
        track = DestinationTrack([(1, 4), (2, 2), (3, 6)])
        snaps, graph = q_snapshots(3, tree, track)
        for a, b in zip(snaps, snaps[1:]):
            ok, witness = region_covers(a.pieces, b.pieces)
            assert ok, (b.stage, witness)
        rep = check_touch_chain(graph, tree)
        assert rep.verdict == "pass", rep.witness


class TestCheckTouch:
    def _solid_graph(self):
        """Hand-built configuration of solid blocks chained <- <- v ->."""
        from planarpi.continua.fanq import BlockGraph, BlockRecord, TouchEdge
        from planarpi.continua.regions import DOWN

        def solid(bid, box):
            return BlockRecord(
                id=bid,
                creation_stage=0,
                kind="end-box",
                d_in=None,
                d_out=None,
                frame_stage=0,
                box=tuple(F(v) for v in box),
            )

        z_first = solid(0, (5, 11, 0, 5))
        z0 = solid(1, (0, 5, 0, 5))
        z1 = solid(2, (0, 5, -5, 0))
        z2 = solid(3, (5, 9, -5, 0))
        graph = BlockGraph(blocks=[z_first, z0, z1, z2])
        graph.touches = [
            TouchEdge(None, 0, LEFT),
            TouchEdge(0, 1, LEFT),
            TouchEdge(1, 2, DOWN),
            TouchEdge(2, 3, RIGHT),
        ]
        return graph

    def test_solid_chain_all_true(self):
        from planarpi.continua.regions import DOWN

        graph = self._solid_graph()
        tree = full_tree()
        z = {b.id: b for b in graph.blocks}
        assert check_touch(z[0], z[1], LEFT, graph, tree, 0)
        assert check_touch(z[1], z[2], DOWN, graph, tree, 0)
        assert check_touch(z[2], z[3], RIGHT, graph, tree, 0)

    def test_disjoint_boxes_false(self):
        graph = self._solid_graph()
        tree = full_tree()
        z = {b.id: b for b in graph.blocks}
        assert not check_touch(z[0], z[2], LEFT, graph, tree, 0)

    def test_unreached_source_false(self):
        from planarpi.continua.fanq import BlockGraph, TouchEdge

        graph = self._solid_graph()
        # drop all incoming edges of block 1: condition (2) must fail
        graph.touches = [e for e in graph.touches if e.dst != 1]
        tree = full_tree()
        z = {b.id: b for b in graph.blocks}
        assert not check_touch(z[1], z[2], LEFT, graph, tree, 0)