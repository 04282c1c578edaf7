"""Space enumeration and the counterexample search driver.

Enumeration counts are checked against the oracle's validator scan; search
fixtures (status, spaces scanned, witness) are frozen from the deterministic
serial scan and must stay byte-identical under parallelism.
"""

import json

import pytest

import oracle
from idealtop import dsl, search
from idealtop.space import GroundSet

ADDITIVITY = "{op}(union(A,B)) == union({op}(A),{op}(B))"


def bits_family(ground, family):
    return frozenset(oracle.bits_to_set(ground, m) for m in family)


class TestEnumeration:
    def test_topology_counts_match_oracle(self):
        for n, want in ((1, 1), (2, 4), (3, 29), (4, 355)):
            assert search.count_topologies(n) == want
        for n in (1, 2, 3):
            labels = list(search.default_labels(n))
            assert search.count_topologies(n) == len(oracle.all_topologies(labels))

    def test_topologies_match_oracle_setwise(self):
        for n in (1, 2, 3):
            g = GroundSet(search.default_labels(n))
            mine = {bits_family(g, t.family) for t in search.enumerate_topologies(n)}
            theirs = {frozenset(t) for t in oracle.all_topologies(list(g.labels))}
            assert mine == theirs

    def test_ideal_counts_and_sets_match_oracle(self):
        for n in (1, 2, 3):
            g = GroundSet(search.default_labels(n))
            mine = [i.family.members for i in search.enumerate_ideals(n)]
            assert len(mine) == 2 ** n
            theirs = {frozenset(i) for i in oracle.all_ideals(list(g.labels))}
            assert {bits_family(g, m) for m in mine} == theirs

    def test_enumeration_order_is_membership_mask_ascending(self):
        assert [t.family.members for t in search.enumerate_topologies(2)] == [
            (0, 3), (0, 1, 3), (0, 2, 3), (0, 1, 2, 3),
        ]
        assert [i.family.members for i in search.enumerate_ideals(2)] == [
            (0,), (0, 1), (0, 2), (0, 1, 2, 3),
        ]

    def test_every_ideal_is_a_powerset(self):
        for n in (1, 2, 3, 4):
            for ideal in search.enumerate_ideals(n):
                members = ideal.family.members
                assert len(members) == 1 << bin(members[-1]).count("1")

    def test_exhaustive_mode_bounds(self):
        with pytest.raises(ValueError):
            list(search.enumerate_topologies(5, "exhaustive"))
        with pytest.raises(ValueError):
            list(search.enumerate_topologies(0))
        with pytest.raises(ValueError):
            list(search.enumerate_topologies(3, "weird"))
        # past the exhaustive bound the default falls back to subbases
        first = next(search.enumerate_topologies(5))
        assert first.family.members == (0, 31)

    def test_subbase_mode_covers_everything_at_three_points(self):
        exhaustive = {t.family.members for t in search.enumerate_topologies(3)}
        sub = [t.family.members for t in search.enumerate_topologies(3, "subbase")]
        assert len(sub) == len(set(sub))  # deduplicated
        assert set(sub) == exhaustive

    def test_subbase_size_limits_reach(self):
        small = {t.family.members for t in search.enumerate_topologies(3, "subbase", max_subbase_size=1)}
        assert (0, 7) in small
        assert len(small) < 29


class TestTaskValidation:
    def test_mode_and_want_validated(self):
        with pytest.raises(ValueError):
            search.SearchTask("star(A) == A", 2, mode="nope")
        with pytest.raises(ValueError):
            search.SearchTask("star(A) == A", 2, want="everything")
        with pytest.raises(ValueError):
            search.SearchTask("star(A) == A", 0)
        with pytest.raises(ValueError):
            search.SearchTask("star(A) == A", 2, mode="documents")

    def test_run_rejects_bad_law_and_scale(self):
        with pytest.raises(dsl.DslError):
            search.run_search(search.SearchTask("star(A == A", 2))
        with pytest.raises(ValueError):
            search.run_search(search.SearchTask(ADDITIVITY.format(op="star"), 5))
        with pytest.raises(dsl.VariableCapError):
            search.run_search(
                search.SearchTask("union(union(A,B),union(C,D)) == X", 2)
            )


# (op, n=3 spaces_scanned): ops whose additivity first fails on the chain
# {{}, {w1,w2}, X} scan position 25, vs. those needing {{},{w1},{w2},{w1,w2},X}
MINIMAL_N3 = {
    "sstar": 49, "pstar": 25, "bstar": 25, "betastar": 25,
    "xis": 49, "xip": 25, "xib": 25, "xibeta": 25,
}


class TestSearchFixtures:
    @pytest.mark.parametrize("op", sorted(MINIMAL_N3))
    def test_additivity_certified_at_two_points(self, op):
        result = search.run_search(search.SearchTask(ADDITIVITY.format(op=op), 2))
        assert result.status == search.STATUS_CERTIFIED
        assert result.witnesses == ()
        assert result.spaces_scanned == result.spaces_total == 16
        assert result.assignments_evaluated == 16 * 16

    @pytest.mark.parametrize("op", sorted(MINIMAL_N3))
    def test_additivity_refuted_at_three_points(self, op):
        result = search.run_search(search.SearchTask(ADDITIVITY.format(op=op), 3))
        assert result.status == search.STATUS_FOUND
        assert result.spaces_scanned == MINIMAL_N3[op]
        w, = result.witnesses
        expected_topo = (0, 1, 2, 3, 7) if MINIMAL_N3[op] == 49 else (0, 3, 7)
        assert w.topology == expected_topo
        assert w.ideal == (0,)
        assert (w.bindings, w.lhs, w.rhs) == ((("A", 1), ("B", 2)), 7, 3)

    def test_witnesses_hold_up_in_the_oracle(self):
        for op in ("sstar", "xibeta"):
            result = search.run_search(search.SearchTask(ADDITIVITY.format(op=op), 3))
            w, = result.witnesses
            space = w.space()
            topo, ideal, points = oracle.space_to_oracle(space)
            nbhd, cl = oracle.NAMED_LOCAL_FNS[op]
            f = lambda s: oracle.local_function(topo, ideal, points, nbhd, cl, s)
            env = {name: oracle.bits_to_set(space.ground, bits) for name, bits in w.bindings}
            lhs = f(env["A"] | env["B"])
            rhs = f(env["A"]) | f(env["B"])
            assert lhs != rhs
            assert oracle.set_to_bits(space.ground, lhs) == w.lhs
            assert oracle.set_to_bits(space.ground, rhs) == w.rhs

    def test_b_local_function_fails_at_four_points_too(self):
        result = search.run_search(search.SearchTask(ADDITIVITY.format(op="bstar"), 4))
        assert result.status == search.STATUS_FOUND
        assert result.spaces_scanned == 49
        assert result.spaces_total == 355 * 16
        w, = result.witnesses
        assert (w.topology, w.ideal) == ((0, 3, 15), (0,))
        assert (w.bindings, w.lhs, w.rhs) == ((("A", 1), ("B", 2)), 15, 3)

    def test_open_star_additivity_certified_at_three_points(self):
        result = search.run_search(search.SearchTask(ADDITIVITY.format(op="star"), 3))
        assert result.status == search.STATUS_CERTIFIED
        assert result.spaces_scanned == 232
        assert result.assignments_evaluated == 232 * 64


class TestAllMinimal:
    def test_collects_tied_minimal_spaces_in_order(self):
        task = search.SearchTask(ADDITIVITY.format(op="xis"), 3, want="all-minimal")
        result = search.run_search(task)
        assert result.status == search.STATUS_FOUND
        assert result.spaces_scanned == 232  # full sweep before filtering
        assert [(w.topology, w.ideal, w.bindings) for w in result.witnesses] == [
            ((0, 1, 2, 3, 7), (0,), (("A", 1), ("B", 2))),
            ((0, 1, 4, 5, 7), (0,), (("A", 1), ("B", 4))),
            ((0, 2, 4, 6, 7), (0,), (("A", 2), ("B", 4))),
        ]
        keys = [w.sort_key() for w in result.witnesses]
        assert keys == sorted(keys)
        sizes = {(len(w.topology), len(w.ideal)) for w in result.witnesses}
        assert sizes == {(5, 1)}

    def test_first_and_all_minimal_agree_on_the_minimum(self):
        for op in ("pstar", "xis"):
            law = ADDITIVITY.format(op=op)
            first = search.run_search(search.SearchTask(law, 3))
            all_min = search.run_search(search.SearchTask(law, 3, want="all-minimal"))
            fw, = first.witnesses
            assert (len(fw.topology), len(fw.ideal)) == (
                len(all_min.witnesses[0].topology),
                len(all_min.witnesses[0].ideal),
            )
            assert fw in all_min.witnesses


class TestBudgets:
    LAW = ADDITIVITY.format(op="sstar")

    def test_space_budget(self):
        result = search.run_search(search.SearchTask(self.LAW, 3, budget_spaces=5))
        assert result.status == search.STATUS_BUDGET
        assert result.spaces_scanned == 5
        assert result.assignments_evaluated == 5 * 64
        assert result.witnesses == ()

    def test_assignment_budget_cuts_mid_space(self):
        result = search.run_search(search.SearchTask(self.LAW, 3, budget_assignments=100))
        assert result.status == search.STATUS_BUDGET
        assert (result.spaces_scanned, result.assignments_evaluated) == (2, 100)

    def test_budget_boundary_around_the_witness(self):
        full = search.run_search(search.SearchTask(self.LAW, 3))
        assert (full.status, full.assignments_evaluated) == (search.STATUS_FOUND, 3083)
        exact = search.run_search(
            search.SearchTask(self.LAW, 3, budget_assignments=3083)
        )
        assert exact.status == search.STATUS_FOUND
        assert exact.witnesses == full.witnesses
        short = search.run_search(
            search.SearchTask(self.LAW, 3, budget_assignments=3082)
        )
        assert short.status == search.STATUS_BUDGET
        assert short.witnesses == ()
        assert short.assignments_evaluated == 3082

    def test_zero_space_budget(self):
        result = search.run_search(search.SearchTask(self.LAW, 3, budget_spaces=0))
        assert (result.status, result.spaces_scanned) == (search.STATUS_BUDGET, 0)


class TestNonExhaustiveModes:
    def test_subbase_scan_never_certifies(self):
        result = search.run_search(
            search.SearchTask(ADDITIVITY.format(op="star"), 3, mode="subbase")
        )
        assert result.status == search.STATUS_BUDGET
        assert result.spaces_scanned == 232
        assert result.spaces_total is None

    def test_subbase_scan_still_finds_witnesses(self):
        result = search.run_search(
            search.SearchTask(ADDITIVITY.format(op="pstar"), 3, mode="subbase")
        )
        assert result.status == search.STATUS_FOUND
        w, = result.witnesses
        assert w.space()  # revalidated, constructible

    def test_documents_mode(self, space_a):
        from idealtop.space import serialize_space

        law = ADDITIVITY.format(op="sstar")
        doc_a = serialize_space(space_a)
        doc_1pt = json.dumps({"points": ["w1"], "topology": [[], ["w1"]], "ideal": [[]]})
        hit = search.run_search(
            search.SearchTask(law, 0, mode="documents", documents=(doc_1pt, doc_a))
        )
        assert hit.status == search.STATUS_FOUND
        assert hit.spaces_scanned == 2
        w, = hit.witnesses
        assert w.bindings == (("A", 1), ("B", 2))
        miss = search.run_search(
            search.SearchTask(law, 0, mode="documents", documents=(doc_1pt,))
        )
        assert miss.status == search.STATUS_BUDGET
        assert miss.spaces_total == 1


class TestDeterminismAndReports:
    def test_parallel_report_is_byte_identical(self):
        for kwargs in (
            dict(law_text=ADDITIVITY.format(op="xis"), n=3),
            dict(law_text=ADDITIVITY.format(op="xis"), n=3, want="all-minimal"),
            dict(law_text=ADDITIVITY.format(op="star"), n=2),
            dict(law_text=ADDITIVITY.format(op="sstar"), n=3, budget_assignments=3082),
        ):
            task = search.SearchTask(**kwargs)
            serial = search.report_json(search.run_search(task, workers=1))
            parallel = search.report_json(search.run_search(task, workers=3))
            assert serial == parallel

    def test_report_shape(self):
        task = search.SearchTask(ADDITIVITY.format(op="pstar"), 3)
        report = search.result_to_report(search.run_search(task))
        assert sorted(report) == ["law", "mode", "n", "stats", "status", "want", "witnesses"]
        assert report["n"] == 3
        assert report["status"] == "CounterexampleFound"
        w, = report["witnesses"]
        assert sorted(w) == ["bindings", "lhs", "rhs", "space"]
        assert w["space"]["points"] == ["w1", "w2", "w3"]
        assert w["space"]["topology"] == [[], ["w1", "w2"], ["w1", "w2", "w3"]]
        assert w["bindings"] == {"A": ("w1",), "B": ("w2",)}
        assert w["lhs"] == ("w1", "w2", "w3")
        assert w["rhs"] == ("w1", "w2")
        # 24 clean spaces of 8*8 assignments, then 11 in the violating one
        assert report["stats"] == {
            "spaces_scanned": 25,
            "assignments_evaluated": 24 * 64 + 11,
            "spaces_total": 232,
        }

    def test_documents_report_has_null_n(self):
        doc = json.dumps({"points": ["w1"], "topology": [[], ["w1"]], "ideal": [[]]})
        task = search.SearchTask("star(A) == cl(A)", 0, mode="documents", documents=(doc,))
        report = search.result_to_report(search.run_search(task))
        assert report["n"] is None
        assert report["mode"] == "documents"

    def test_report_json_is_stable_text(self):
        task = search.SearchTask(ADDITIVITY.format(op="star"), 2)
        text = search.report_json(search.run_search(task))
        assert text.endswith("\n")
        assert json.loads(text)["status"] == "LawCertified"
        assert text == json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n"
