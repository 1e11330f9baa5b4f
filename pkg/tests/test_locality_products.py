import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from partialgroups.errors import HypothesisError, InvalidInputError, VerificationError
from partialgroups.fixtures import (
    broken_star,
    non_invariant_objects,
    sym3_squared,
    sym4_full,
    sym4_restricted,
    trivial_action_on,
    wreath_sym2_sym3,
)
from partialgroups.locality_products import (
    build_hypothesis,
    classify_internal_product,
    external_semidirect_locality,
    group_locality,
    locality_action_report,
    product_set,
    project_PN,
    project_PX,
    strongly_closed_check,
    strongly_closed_counterexample,
)
from partialgroups.properties import product_locality_report
from partialgroups.semidirect import check_internal_semidirect

C2, M2 = oracle.cyclic(2, "c")
POINTS = {"sym3_squared": 6, "sym4_restricted": 4}
# (lattice, sparse, ample) sizes for C2 acting trivially, frozen from the oracle
FAMILY_SIZES = {"sym3_squared": (16, 11, 14), "sym4_restricted": (35, 11, 18)}
S4 = oracle.perm_group(["(1 2 3 4)", "(1 3)"], 4)
G4 = oracle.perm_group(["(1 2)", "(1 2 3 4)"], 4)
LATTICE4 = oracle.subgroups(S4, oracle.perm_mul, tuple(range(4)))


def _oracle_families(which):
    n = POINTS[which]
    base = {"sym3_squared": sym3_squared, "sym4_restricted": sym4_restricted}[which]()
    T = frozenset(oracle.parse(x, n) for x in base.S)
    gamma = [frozenset(oracle.parse(x, n) for x in P) for P in base.loc.delta]
    fams = oracle.trivial_action_families(frozenset(C2), T, gamma, (M2, oracle.perm_mul), ("1", tuple(range(n))))

    def relabel(family):
        return {frozenset((s, oracle.label(t)) for s, t in P) for P in family}

    return tuple(relabel(f) for f in fams)


@pytest.mark.parametrize("which", sorted(POINTS))
def test_trivial_action_families_match_the_oracle(which):
    lattice, sparse, ample, _ = _oracle_families(which)
    assert (len(lattice), len(sparse), len(ample)) == FAMILY_SIZES[which]
    fams = trivial_action_on(which).loc.families
    assert set(fams["lattice"]) == lattice
    assert set(fams["sparse"]) == sparse
    assert set(fams["ample"]) == ample
    assert sparse < ample


@pytest.mark.parametrize("which", sorted(POINTS))
def test_sparse_family_is_cut_out_by_the_normal_factor(which):
    # for a trivial action the sparse objects are exactly those meeting T in Γ
    _, sparse, _, meet = _oracle_families(which)
    assert sparse == meet


@pytest.mark.parametrize("which", sorted(POINTS))
@pytest.mark.parametrize("variant", ["sparse", "ample"])
def test_both_extreme_products_are_localities(which, variant):
    loc = trivial_action_on(which, variant).loc
    assert loc.report.ok and loc.variant == variant
    assert loc.classification.kind == variant
    assert product_locality_report(loc).ok


def test_wreath_families_coincide():
    W = wreath_sym2_sym3()
    for loc in (W.sparse, W.ample):
        assert loc.classification.kind == "sparse-and-ample"
    assert W.sparse.delta == W.ample.delta
    assert len(W.sparse.delta) == 1


def test_custom_family_must_lie_between_the_extremes():
    f = trivial_action_on("sym3_squared", "ample")
    fams = f.loc.families
    too_small = [P for P in fams["sparse"] if len(P) < max(map(len, fams["sparse"]))]
    with pytest.raises(VerificationError) as info:
        external_semidirect_locality(f.loc.X_loc, f.N, f.action, too_small)
    assert not info.value.report.get("custom-between").passed


def test_custom_family_equal_to_an_extreme_is_accepted():
    f = trivial_action_on("sym3_squared", "ample")
    loc = external_semidirect_locality(f.loc.X_loc, f.N, f.action, f.loc.families["ample"])
    assert loc.variant == "custom" and loc.delta == f.loc.delta


def test_non_invariant_object_set_is_rejected():
    m = non_invariant_objects()
    rep = locality_action_report(group_locality(m.X, 2), m.N_loc, m.action)
    bad = rep.get("gamma-invariance")
    assert not bad.passed
    assert bad.counterexample == [frozenset({"()", "(1 2)"}), "s"]
    with pytest.raises(HypothesisError) as info:
        external_semidirect_locality(group_locality(m.X, 2), m.N_loc, m.action)
    assert info.value.bullet == "gamma-invariance"


def test_broken_star_is_rejected():
    m = broken_star()
    rep = locality_action_report(m.X_loc, m.N_loc, m.action)
    assert rep.get("gamma-invariance").passed
    bad = rep.get("star")
    assert not bad.passed and bad.counterexample == frozenset({"1", "x"})
    with pytest.raises(HypothesisError) as info:
        external_semidirect_locality(m.X_loc, m.N_loc, m.action)
    assert info.value.bullet == "star"


def test_mixed_primes_are_rejected():
    m = broken_star()
    N3 = wreath_sym2_sym3().N
    with pytest.raises(InvalidInputError):
        external_semidirect_locality(m.X_loc, N3, m.action)


def test_internal_hypothesis_and_projections_on_the_wreath_product():
    W = wreath_sym2_sym3().sparse
    wit = check_internal_semidirect(W.L, W.hat_X.L.labels, W.hat_N.L.labels)
    data = build_hypothesis(wit, W.hat_X, W.hat_N)
    assert data.report.ok
    assert data.S == W.S and len(data.S) == 9
    # Sym(2) swaps the coordinates, so only the identity centralises the base
    assert data.C == frozenset({W.hat_X.L.identity})
    assert data.S0 == W.hat_N.S
    assert project_PX(data, W.S) == data.C
    assert project_PN(data, W.S) == W.hat_N.S


def test_product_set_reports_undefined_pairs():
    loc = sym3_squared().loc
    L = loc.L
    a, b = next((a, b) for a in L.labels for b in L.labels if L.binary_rows[L.idx(a)][L.idx(b)] < 0)
    assert product_set(L, [a], [b]) is None
    assert product_set(L, loc.S, ["()"]) == loc.S


def test_classification_rejects_swapped_factors():
    W = wreath_sym2_sym3().sparse
    assert classify_internal_product(W, W.hat_X, W.hat_N).kind == "sparse-and-ample"
    assert not classify_internal_product(W, W.hat_N, W.hat_X)


def _brute_strongly_closed(P):
    for f in G4:
        for x in P:
            if oracle.perm_conj(x, f) in S4 and oracle.perm_conj(x, f) not in P:
                return False
    return True


@given(st.sampled_from(sorted(LATTICE4, key=lambda P: sorted(P))))
def test_strong_closure_matches_brute_force(P):
    loc = sym4_full().loc
    labels = frozenset(oracle.label(x) for x in P)
    assert strongly_closed_check(loc, labels) == _brute_strongly_closed(P)


def test_strong_closure_examples():
    loc = sym4_restricted().loc
    klein = frozenset({"()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"})
    assert strongly_closed_check(loc, klein)
    centre = frozenset({"()", "(1 3)(2 4)"})
    x, f = strongly_closed_counterexample(loc, centre)
    assert x == "(1 3)(2 4)"
    with pytest.raises(InvalidInputError):
        strongly_closed_check(loc, {"(1 2)"})
