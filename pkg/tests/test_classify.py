"""The morphism classifier across the twelve categories."""

import pytest

from sdcat import analysis as an
from sdcat import classify as cl
from sdcat import oracle as orc
from sdcat.core import (
    compose,
    full_shift,
    identity_map,
    make_block_map,
    make_presentation,
    maps_equal,
)
from sdcat.limits import CategoryTag

K1, K2, K3 = (CategoryTag.parse(t) for t in ("K1", "K2", "K3"))
T1, T3 = CategoryTag.parse("T1"), CategoryTag.parse("T3")
M1, M2, M3 = (CategoryTag.parse(t) for t in ("M1", "M2", "M3"))
P2 = CategoryTag.parse("P2")


@pytest.fixture(scope="module")
def golden_inclusion(golden, full2):
    return make_block_map(golden, full2, 0, {("0",): "0", ("1",): "1"})


@pytest.fixture(scope="module")
def even_inclusion(even_shift, full2):
    return make_block_map(even_shift, full2, 0, {("0",): "0", ("1",): "1"})


class TestEpic:
    def test_identity(self, full2):
        assert cl.is_epic(identity_map(full2), K2).yes

    def test_xor3_surjective(self, xor3):
        assert cl.is_epic(xor3, K3).yes

    def test_inclusion_with_witness(self, golden_inclusion):
        v = cl.is_epic(golden_inclusion, K2)
        assert v.no and v.witness["word"] == ("1", "1")


class TestMonic:
    def test_identity_everywhere(self, full2, golden):
        for tag in (K1, K2, K3, M2, M3, T3):
            target = full2
            assert cl.is_monic(identity_map(target), tag).yes

    def test_xor3_monic_in_m2_not_injective(self, xor3):
        assert cl.is_monic(xor3, M2).yes
        assert not an.injectivity_family(xor3).injective

    def test_xor3_monic_in_m3_by_period_argument(self, xor3):
        v = cl.is_monic(xor3, M3)
        assert v.yes

    def test_xor2_on_no000111_not_monic_m2(self, xor2_no000111):
        assert cl.is_monic(xor2_no000111, M2).no

    def test_xor2_not_monic_k2(self, xor2):
        assert cl.is_monic(xor2, K2).no

    def test_t3_periodic_injectivity_suffices(self, t3_monic_map):
        assert cl.is_monic(t3_monic_map, T3).yes
        assert an.is_preinjective(t3_monic_map).no

    def test_m1_uniform_point_violation(self, const0):
        v = cl.is_monic(const0, M1)
        assert v.no


class TestStrongCondition:
    def test_identity_holds(self, full2):
        rep = cl.strong_condition(identity_map(full2), 2)
        assert rep.holds
        assert all(u == a for u, a in rep.assignment)

    def test_xor2_fails_at_one(self, xor2):
        rep = cl.strong_condition(xor2, 1)
        assert not rep.holds
        assert rep.failures

    def test_xor3_fails_at_p1(self, xor3):
        # the forced choice G(0) = 0 cannot absorb the point ..0 0 . 1 0 0..
        rep = cl.strong_condition(xor3, 1)
        assert not rep.holds
        tup = rep.failing_tuple()
        assert tup["u"] == ("0",) and tup["w"] == ("1",)
        assert orc.ep_preimage_search(xor3, rep.failures[0], pad=6) is None

    def test_compress_fails_with_diagonal_tuples(self, compress_map):
        rep = cl.strong_condition(compress_map, 1)
        assert not rep.holds
        tuples = [t for t in rep.failures if "w" in t]
        assert tuples
        for t in tuples:
            assert t["u"] == ("#",) and t["v"] == ("#",)
            # oracle confirmation: no conforming preimage with these tails
            assert orc.ep_preimage_search(compress_map, t, pad=8) is None


class TestSplitEpic:
    def test_identity(self, full2):
        v = cl.is_split_epic(identity_map(full2), K2)
        assert v.yes

    def test_k1_shrink_example(self, shrink_map, x012):
        v = cl.is_split_epic(shrink_map, K1)
        assert v.yes
        g = v.certificate
        assert g.radius <= 1
        assert maps_equal(compose(shrink_map, g), identity_map(x012))

    def test_compress_not_split_epic(self, compress_map):
        v = cl.is_split_epic(compress_map, K2)
        assert v.no
        assert v.witness["p"] == 1

    def test_not_surjective_fails_fast(self, golden_inclusion):
        assert cl.is_split_epic(golden_inclusion, K2).no

    def test_tmp1_bijectivity(self, flip, xor3):
        assert cl.is_split_epic(flip, M1).yes
        assert cl.is_split_epic(xor3, M1).no

    def test_track_projection_split_epic(self, full2):
        from sdcat import limits as li

        pr = li.product(full2, full2)
        p1 = pr.legs[0]
        v = cl.is_split_epic(p1, M2)
        assert v.yes
        g = v.certificate
        assert maps_equal(compose(p1, g), identity_map(full2))
        # the image of a split epi out of a mixing SFT stays a mixing SFT
        img = an.image(p1)
        assert an.is_mixing(img) and an.is_sft(img).yes

    def test_pointed_projection_section_preserves_points(self, full2p):
        from sdcat import limits as li
        from sdcat.core import PeriodicPoint, apply_map

        pr = li.product(full2p, full2p)
        obj = pr.object.with_point("(0,0)")
        p1 = make_block_map(obj, full2p, 0, dict(pr.legs[0].rule_dict))
        v = cl.is_split_epic(p1, CategoryTag.parse("P2"))
        assert v.yes
        g = v.certificate
        img = apply_map(g, PeriodicPoint(("0",)))
        assert img.same_point(PeriodicPoint(("(0,0)",)))

    def test_engine_no_means_brute_finds_no_section(self, full2):
        windows = full2.words(3)
        for bits in (24, 60, 90, 105, 150, 195, 204, 240):
            rule = {w: str((bits >> i) & 1) for i, w in enumerate(windows)}
            f = make_block_map(full2, full2, 1, rule)
            verdict = cl.is_split_epic(f, K2, p_cap=2, radius_cap=1)
            if verdict.no:
                assert not orc.brute_decide("split_epic", f, {"radius_bound": 1})
            elif verdict.yes:
                g = verdict.certificate
                assert maps_equal(compose(f, g), identity_map(full2))


class TestSplitMonic:
    def test_golden_inclusion_m2(self, golden_inclusion):
        v = cl.is_split_monic(golden_inclusion, M2)
        assert v.yes
        h = v.certificate
        assert h is not None and h.radius <= 1
        assert maps_equal(compose(h, golden_inclusion), identity_map(golden_inclusion.source))

    def test_xor2_not_split_monic(self, xor2):
        assert cl.is_split_monic(xor2, M2).no

    def test_period_obstruction(self):
        # mixing SFT without fixed points: no symbol repeats
        y = make_presentation(["0", "1", "2"], "sft", [("0", "0"), ("1", "1"), ("2", "2")])
        assert an.is_mixing(y) and an.is_sft(y).yes
        assert not an.periods(y).contains(1)
        assert an.periods(y).contains(2)
        # an injection of the no-repeat shift into the full shift cannot
        # split: the full shift has a fixed point, the source does not
        full3 = full_shift(["0", "1", "2"])
        inc = make_block_map(y, full3, 0, {(a,): a for a in y.alphabet})
        v = cl.is_split_monic(inc, M2)
        assert v.no and v.witness["period"] == 1

    def test_m1_bijectivity(self, flip, xor2):
        assert cl.is_split_monic(flip, M1).yes
        assert cl.is_split_monic(xor2, M1).no


class TestRegularEpic:
    def test_k_levels_reduce_to_surjectivity(self, xor3, golden_inclusion):
        assert cl.is_regular_epic(xor3, K2).yes
        assert cl.is_regular_epic(golden_inclusion, K3).no

    def test_xor2_regular_epic_in_m1_with_witness(self, xor2, flip):
        v = cl.is_regular_epic(xor2, M1, witness_endo=flip)
        assert v.yes

    def test_blank_cell_without_witness(self, xor2):
        assert cl.is_regular_epic(xor2, M1).undecided


class TestRegularMonic:
    def test_golden_inclusion_k2(self, golden_inclusion):
        v = cl.is_regular_monic(golden_inclusion, K2)
        assert v.yes and v.certificate["window"] == 2

    def test_even_inclusion_k3_fails(self, even_inclusion):
        v = cl.is_regular_monic(even_inclusion, K3)
        assert v.no

    def test_even_inclusion_m3_fails(self, even_inclusion):
        v = cl.is_regular_monic(even_inclusion, M3)
        assert v.no

    def test_non_injective_fails(self, xor2):
        assert cl.is_regular_monic(xor2, K2).no

    def test_t3_and_m3_accept_subsft_images(self, golden_inclusion):
        assert cl.is_regular_monic(golden_inclusion, M3).yes
        assert cl.is_regular_monic(golden_inclusion, T3).yes

    def test_marked_host_separates_k3_from_level3(self, odd_runs_in_marked_sofic):
        # regular monic in M3 and T3 through an enclosing subSFT, but the
        # image is not a subSFT of the host, so not regular monic in K3
        inc = odd_runs_in_marked_sofic
        assert an.is_mixing(inc.source) and an.is_mixing(inc.target)
        k3 = cl.is_regular_monic(inc, K3)
        assert k3.no and k3.witness is not None
        assert cl.is_regular_monic(inc, M3).yes
        assert cl.is_regular_monic(inc, T3).yes


class TestClassifyRow:
    def test_identity_all_yes(self, full2):
        row = cl.classify(identity_map(full2), K2)
        for key in ("epic", "monic", "split_epic", "split_monic", "regular_epic", "regular_monic"):
            assert row[key].yes, key

    def test_xor3_m2_row(self, xor3):
        row = cl.classify(xor3, M2)
        assert row["epic"].yes
        assert row["monic"].yes
        assert row["split_epic"].no
        assert row["split_monic"].no
        assert row["regular_epic"].undecided
        assert row["regular_monic"].no

    def test_golden_inclusion_m2_row(self, golden_inclusion):
        row = cl.classify(golden_inclusion, M2)
        assert row["epic"].no
        assert row["monic"].yes
        assert row["split_monic"].yes
        assert row["regular_monic"].yes
        assert row["split_epic"].no
        assert row["regular_epic"].no

    def test_implication_lattice_on_rows(self, full2, xor3, golden_inclusion):
        for f, cat in ((identity_map(full2), K2), (xor3, M2), (golden_inclusion, M2)):
            row = cl.classify(f, cat)
            assert not cl.implication_violations(row)


class TestExistsMorphism:
    def test_golden_to_full(self, golden, full2):
        assert cl.exists_morphism(golden, full2).yes

    def test_fixed_point_into_fixed_point_free(self, trivial):
        y = make_presentation(["0", "1", "2"], "sft", [("0", "0"), ("1", "1"), ("2", "2")])
        assert an.is_mixing(y) and an.is_sft(y).yes
        v = cl.exists_morphism(trivial, y)
        assert v.no and v.witness["period"] == 1

    def test_empty_source(self, full2):
        from sdcat.core import empty_shift

        assert cl.exists_morphism(empty_shift(["0"]), full2).yes

    def test_non_mixing_target_only_necessity(self, golden, orbit01):
        v = cl.exists_morphism(orbit01, golden)
        # period condition holds (evens inside all), target mixing SFT: YES
        assert v.yes
        v2 = cl.exists_morphism(golden, orbit01)
        assert v2.no
