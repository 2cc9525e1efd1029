"""Checkers: reports, negative controls, bound resolution."""

from fractions import Fraction as F

import pytest

from planarpi.cantor import TreePresentation
from planarpi.cesets import EnumerationScript, FamilyMember, SequenceFamily
from planarpi.continua import build_dendrite_d
from planarpi.continua.fanq import DestinationTrack, q_snapshots
from planarpi.geom import RegionSnapshot, rect, segment
from planarpi.verify import (
    CheckReport,
    check_cut_dichotomy,
    check_hausdorff_bound,
    check_nesting,
    check_touch_chain,
    exit_code,
    reports_to_json,
)


def two_branch_tree(depth: int = 12) -> TreePresentation:
    entries = []
    for k in range(1, depth):
        entries.append(("0" * k + "1", 0))
        entries.append(("1" * k + "0", 0))
    return TreePresentation(entries)


class TestNesting:
    def test_constant_builder_passes(self):
        snaps = [RegionSnapshot(s, [rect(0, 0, 1, 1)]) for s in range(3)]
        assert check_nesting(snaps).verdict == "pass"

    def test_q_builder_with_injuries_passes(self):
        tree = two_branch_tree()
        track = DestinationTrack([(1, 4), (2, 2), (3, 6), (4, 1), (5, 8), (6, 11)])
        snaps, _ = q_snapshots(6, tree, track)
        assert check_nesting(snaps).verdict == "pass"

    def test_mutated_stage_fails_with_witness(self):
        snaps = [
            RegionSnapshot(0, [rect(0, 0, 1, 1)]),
            RegionSnapshot(1, [rect(0, 0, 1, F(9, 8))]),  # grows: corrupted
        ]
        report = check_nesting(snaps)
        assert report.verdict == "fail"
        assert report.witness is not None

    def test_fail_requires_witness(self):
        with pytest.raises(ValueError):
            CheckReport("x", (0, 1), "fail", None)


class TestCutDichotomy:
    def test_dendrite_d_pass(self):
        script = EnumerationScript([(1, 1), (3, 3), (5, 5)])
        report = check_cut_dichotomy("dendrite-d", 6, script=script)
        assert report.verdict == "pass"

    def test_dendrite_d_empty_script(self):
        report = check_cut_dichotomy("dendrite-d", 4, script=EnumerationScript([]))
        assert report.verdict == "pass"  # no cut ever disconnects

    def test_dendroid_k_figure_script(self):
        triples = tuple((n, 2, 2) for n in range(12))
        fam = SequenceFamily([FamilyMember("V0", triples)])
        report = check_cut_dichotomy("dendroid-k", 3, family=fam)
        assert report.verdict == "pass"


class TestTouchChain:
    def test_pass_and_negative_control(self):
        tree = two_branch_tree()
        track = DestinationTrack([(1, 4), (2, 2)])
        _, graph = q_snapshots(2, tree, track)
        assert check_touch_chain(graph, tree).verdict == "pass"
        # negative control: drop an edge so a block goes unreached
        graph.touches = graph.touches[:-1]
        assert check_touch_chain(graph).verdict == "fail"


class TestHausdorffBound:
    def test_d_vs_left_half_resolves_half(self):
        from planarpi.geom import clip_halfplane

        script = EnumerationScript([(1, 1), (3, 3), (5, 5)])
        snap = build_dendrite_d(8, script)
        clipped = [clip_halfplane(p, 1, 0, 0) for p in snap.pieces]
        left = RegionSnapshot(8, [p for p in clipped if p is not None], snap.frame)
        report = check_hausdorff_bound(snap, left, F(1, 2), ">=", 8)
        assert report.verdict == "pass"

    def test_identical_fails_lower_bound(self):
        snap = RegionSnapshot(0, [rect(0, 0, 1, 1)])
        report = check_hausdorff_bound(snap, snap, 1, ">=", 8)
        assert report.verdict == "fail"

    def test_exact_distance_resolves_at_its_own_bound(self):
        a = RegionSnapshot(0, [segment((0, 0), (1, 0))])
        b = RegionSnapshot(0, [segment((0, 1), (1, 1))])
        report = check_hausdorff_bound(a, b, 1, ">=", 10)
        assert report.verdict == "pass"

    def test_inconclusive_when_bound_inside(self):
        from planarpi.geom import hausdorff_enclosure, point

        a = RegionSnapshot(0, [point(0, 0)])
        b = RegionSnapshot(0, [point(1, 1)])  # distance sqrt(2), irrational
        enc = hausdorff_enclosure(a, b, 10)
        assert enc.low < enc.high
        mid = (enc.low + enc.high) / 2
        report = check_hausdorff_bound(a, b, mid, ">=", 10)
        assert report.verdict == "inconclusive"

    def test_upper_sense(self):
        a = RegionSnapshot(0, [segment((0, 0), (1, 0))])
        b = RegionSnapshot(0, [segment((0, 1), (1, 1))])
        assert check_hausdorff_bound(a, b, 2, "<=", 10).verdict == "pass"
        assert check_hausdorff_bound(a, b, F(1, 2), "<=", 10).verdict == "fail"


class TestReports:
    def test_json_and_exit_code(self):
        passing = CheckReport("a", (0, 1), "pass")
        failing = CheckReport("b", (0, 1), "fail", {"stage": 0})
        blob = reports_to_json([passing, failing])
        assert '"verdict": "fail"' in blob
        assert exit_code([passing]) == 0
        assert exit_code([passing, failing]) == 1

    def test_reports_reproducible(self):
        script = EnumerationScript([(1, 1)])
        r1 = check_cut_dichotomy("dendrite-d", 3, script=script)
        r2 = check_cut_dichotomy("dendrite-d", 3, script=script)
        assert reports_to_json([r1]) == reports_to_json([r2])