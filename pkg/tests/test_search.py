import pytest

from rqcdesign import (
    CapacityExceededError,
    LatticeSpec,
    PathSearchConfig,
    PatternCode,
    baseline_code,
    build_lattice,
    code_from_index,
)
from rqcdesign.search import (
    SearchConfig,
    evaluate_candidate,
    search,
    symmetry_score,
)


def grid(w, h, defects=()):
    return build_lattice(
        LatticeSpec(mode="grid", width=w, height=h, defects=tuple(defects))
    )


@pytest.fixture(scope="module")
def report5(grid5):
    return search(grid5, SearchConfig(depth=20, include_baseline=True))


class TestSearch:
    def test_evaluates_all_2048(self, report5):
        assert report5.total_candidates == 2048
        assert report5.candidates_evaluated == 2048

    def test_optimum_dominates_everyone(self, grid5, report5):
        # exhaustiveness witness: nothing scores above the reported optimum
        from rqcdesign import SfaCostModel, cycle_sequence, enumerate_cut_paths, build_dual

        paths = enumerate_cut_paths(build_dual(grid5), PathSearchConfig())
        model = SfaCostModel(grid5, paths)
        letters = cycle_sequence(20).letters
        best = report5.top[0].log2_cost
        for idx in range(0, 2048, 31):
            assert model.cost(code_from_index(grid5, idx), letters) <= best + 1e-12
        assert report5.baseline.log2_cost <= best

    def test_top_sorted_and_ranked(self, report5):
        costs = [c.log2_cost for c in report5.top]
        assert costs == sorted(costs, reverse=True)
        assert [c.rank for c in report5.top] == list(range(1, len(report5.top) + 1))
        for a, b in zip(report5.top, report5.top[1:]):
            if a.log2_cost == b.log2_cost:
                assert a.symmetry >= b.symmetry

    def test_tie_set_shares_cutoff_cost(self, grid5, report5):
        from rqcdesign import SfaCostModel, build_dual, enumerate_cut_paths

        cutoff = report5.top[-1].log2_cost
        paths = enumerate_cut_paths(build_dual(grid5), PathSearchConfig())
        model = SfaCostModel(grid5, paths)
        tie_costs = {
            model.cost(code, report5.ranking_letters) for code in report5.tie_set
        }
        assert tie_costs == {cutoff}
        # every top entry at the cutoff cost is part of the tie set
        for entry in report5.top:
            if entry.log2_cost == cutoff:
                assert entry.code in report5.tie_set

    def test_thread_invariance(self, grid5, report5):
        rep8 = search(grid5, SearchConfig(depth=20, threads=8, include_baseline=True))
        a = report5.to_doc()
        b = rep8.to_doc()
        a.pop("execution")
        b.pop("execution")
        assert a == b

    def test_progress_monotone(self, grid5):
        fractions = []
        search(grid5, SearchConfig(depth=20), progress=fractions.append)
        assert fractions == sorted(fractions)
        assert fractions[-1] == pytest.approx(1.0)

    def test_baseline_rank_counts_strictly_better(self, grid5, report5):
        from rqcdesign import SfaCostModel, cycle_sequence, enumerate_cut_paths, build_dual

        paths = enumerate_cut_paths(build_dual(grid5), PathSearchConfig())
        model = SfaCostModel(grid5, paths)
        letters = report5.ranking_letters
        better = sum(
            1
            for idx in range(2048)
            if model.cost(code_from_index(grid5, idx), letters)
            > report5.baseline.log2_cost
        )
        assert report5.baseline.rank == better + 1

    def test_enumeration_cap(self, grid5):
        with pytest.raises(CapacityExceededError):
            search(grid5, SearchConfig(depth=8, enum_cap=10))

    def test_tail_search_d18(self):
        lat = grid(3, 3)
        rep = search(lat, SearchConfig(depth=18))
        assert rep.tail is not None
        assert rep.tail.prefix_depth == 16
        assert len(rep.tail.words) == 9
        assert rep.candidates_evaluated == rep.total_candidates + 9
        assert len(rep.tail.chosen) == 2
        best_cost = max(c for _, c in rep.tail.words)
        assert rep.tail.breakdown.log2_cost == pytest.approx(best_cost)


class TestSymmetry:
    def test_uniform_bits_score_rotation(self, grid5):
        code = PatternCode((1,) * 5, (1,) * 5, 0)
        assert symmetry_score(grid5, code) >= 1

    def test_baseline_is_fully_symmetric(self, grid5):
        assert symmetry_score(grid5, baseline_code(grid5)) == 3

    def test_single_qubit_vacuous(self):
        lat = grid(1, 1)
        assert symmetry_score(lat, PatternCode((), (), 0)) == 3

    def test_asymmetric_code_scores_low(self, grid5):
        code = PatternCode((1, 0, 0, 0, 0), (0, 0, 1, 1, 0), 0)
        assert symmetry_score(grid5, code) <= 1

    def test_defect_breaks_symmetry(self):
        lat = grid(5, 5, defects=[(0, 1)])
        assert symmetry_score(lat, baseline_code(lat)) == 0

    def test_range(self, grid5):
        for idx in range(0, 2048, 111):
            assert 0 <= symmetry_score(grid5, code_from_index(grid5, idx)) <= 3


class TestEvaluateCandidate:
    def test_multiple_of_four(self, grid5):
        res = evaluate_candidate(grid5, baseline_code(grid5), 20)
        assert res.sequence.letters == "ABCDCDAB" * 2 + "ABCD"
        assert res.tail_words is None
        assert res.breakdown.log2_cost == pytest.approx(60.0444, abs=1e-3)

    def test_depth_18_reports_tail(self, grid5):
        res = evaluate_candidate(grid5, baseline_code(grid5), 18)
        assert res.tail_words is not None and len(res.tail_words) == 9
        assert res.sequence.depth == 18
        assert res.sequence.tail == res.sequence.letters[16:]
        best = max(c for _, c in res.tail_words)
        assert res.breakdown.log2_cost == pytest.approx(best)

    def test_chooses_hardest_tail(self, grid5):
        res = evaluate_candidate(grid5, baseline_code(grid5), 17)
        costs = dict(res.tail_words)
        assert costs[res.sequence.tail] == max(costs.values())
