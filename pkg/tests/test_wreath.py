import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from partialgroups.errors import HypothesisNotMetError, InvalidInputError
from partialgroups.fixtures import sym3_at_three, sym3_squared, wreath_sym2_sym3
from partialgroups.groups import cyclic_group, permutation_group, symmetric_group
from partialgroups.morphisms import is_action
from partialgroups.partial_group import centralizer, verify_axioms
from partialgroups.wreath import (
    centralizer_lemma_check,
    centralizer_lemma_report,
    coordinate_witnesses,
    direct_product_localities,
    direct_product_partial_group,
    perm_action,
    star_product,
    wreath_product,
)

# Sym(2) ≀ Sym(3) as a permutation group on six points: two blocks of three
SYM6_COPY = oracle.perm_group(["(1 4)(2 5)(3 6)", "(1 2)", "(1 2 3)"], 6)


def as_perm(element):
    """(x, (n1, n2)) = x·(n1, n2): swap the blocks by x, then act blockwise."""
    x, (a, b) = element
    swap = oracle.parse(x, 2)
    blocks = tuple(swap[i // 3] * 3 + i % 3 for i in range(6))
    base = oracle.parse(a, 3) + tuple(3 + v for v in oracle.parse(b, 3))
    return oracle.perm_mul(blocks, base)


def test_wreath_product_has_72_elements():
    W = wreath_sym2_sym3().sparse
    assert len(SYM6_COPY) == 72
    assert len(W.L) == 72 and len(W.S) == 9
    assert {as_perm(g) for g in W.L.labels} == SYM6_COPY


@given(st.data())
def test_wreath_product_matches_the_permutation_group(data):
    W = wreath_sym2_sym3().sparse
    a = data.draw(st.sampled_from(W.L.labels))
    b = data.draw(st.sampled_from(W.L.labels))
    assert as_perm(W.L.mul(a, b)) == oracle.perm_mul(as_perm(a), as_perm(b))
    assert as_perm(W.L.inverse(a)) == oracle.perm_inv(as_perm(a))


def test_wreath_product_is_a_locality_with_a_single_object():
    W = wreath_sym2_sym3()
    assert verify_axioms(W.sparse.L, 3).ok
    assert W.sparse.report.ok and W.ample.report.ok
    assert W.sparse.delta == W.ample.delta
    assert len(W.sparse.delta) == 1 and W.sparse.info["degree"] == 2


def test_swap_exchanges_coordinates():
    W = wreath_sym2_sym3().sparse
    n = ("(1 2)", "(1 2 3)")
    assert W.action.apply(n, "(1 2)") == ("(1 2 3)", "(1 2)")
    assert W.action.apply(n, "()") == n


def test_rotation_of_three_coordinates():
    N = sym3_at_three(2).loc
    power = direct_product_localities([N] * 3, 2)
    assert len(power.L) == 216
    X = permutation_group(["(1 2 3)"], 3, name="C3")
    phi = perm_action(X, power, 2)
    assert is_action(phi, 2)
    # the entry in position i moves to position i^x
    assert phi.apply(("(1 2)", "()", "(1 2 3)"), "(1 2 3)") == ("(1 2 3)", "(1 2)", "()")
    assert phi.apply(("(1 2)", "()", "(1 2 3)"), "(1 3 2)") == ("()", "(1 2 3)", "(1 2)")
    # with a non-abelian permutation group the convention is what makes it an action
    assert is_action(perm_action(symmetric_group(3), power, 2), 2)


def test_coordinate_action_needs_identical_nontrivial_factors():
    a, b = sym3_at_three().loc, sym3_squared().loc
    with pytest.raises(InvalidInputError):
        wreath_product(symmetric_group(2), a, 1)
    with pytest.raises(InvalidInputError):
        direct_product_localities([a, b])
    with pytest.raises(InvalidInputError):
        perm_action(cyclic_group(2, "s"), wreath_sym2_sym3().power, 2)


def test_direct_product_of_partial_groups_is_componentwise():
    L = sym3_squared().loc.L
    C2 = cyclic_group(2, "s")
    P = direct_product_partial_group([L, C2])
    assert len(P) == 2 * len(L)
    a, b = next((a, b) for a in L.labels for b in L.labels if L.binary_rows[L.idx(a)][L.idx(b)] < 0)
    assert P.binary_rows[P.idx((a, "s"))][P.idx((b, "s"))] < 0
    assert P.mul(("(1 2)", "s"), ("(1 2)", "s")) == ("()", "1")


def test_star_product_examples():
    one, two = frozenset({0}), frozenset({0, 1})
    lattice = [frozenset({(0, 0)}), frozenset({(0, 0), (1, 0)}), frozenset({(0, 0), (1, 0), (0, 1), (1, 1)})]
    assert star_product(lattice, [[two], [one]]) == lattice[1:]
    assert star_product(lattice, [[one], [one]]) == lattice
    assert star_product(lattice, [[two], [two]]) == lattice[2:]


def test_centralizer_lemma_on_the_whole_base():
    W = wreath_sym2_sym3().sparse
    rep = centralizer_lemma_report(W)
    assert rep.ok
    assert [e.check for e in rep.entries] == ["coordinate-centralizer", "object-centralizer"]
    assert centralizer_lemma_check(wreath_sym2_sym3().ample)


def test_centralizer_lemma_with_coordinate_witnesses():
    W = wreath_sym2_sym3().sparse
    e = W.X_loc.L.identity
    H = {(e, ("(1 2 3)", "()")), (e, ("()", "(1 2)")), (e, ("()", "()"))}
    assert set(coordinate_witnesses(W, H)) == {0, 1}
    assert centralizer_lemma_check(W, H)


def test_centralizer_lemma_needs_every_coordinate():
    W = wreath_sym2_sym3().sparse
    e = W.X_loc.L.identity
    inside_one_factor = {(e, (g, "()")) for g in ["()", "(1 2 3)", "(1 3 2)"]}
    assert coordinate_witnesses(W, inside_one_factor) is None
    with pytest.raises(HypothesisNotMetError):
        centralizer_lemma_report(W, inside_one_factor)
    with pytest.raises(InvalidInputError):
        centralizer_lemma_report(W, {("(1 2)", ("()", "()"))})


def test_centralizer_of_a_one_factor_subgroup_matches_brute_force():
    # C3 in the first block is centralised by itself times the whole second block
    W = wreath_sym2_sym3().sparse
    e = W.X_loc.L.identity
    H = {(e, (g, "()")) for g in ["()", "(1 2 3)", "(1 3 2)"]}
    C = centralizer(W.L, W.L.labels, H)
    perms = {as_perm(h) for h in H}
    brute = {g for g in W.L.labels if all(oracle.perm_conj(p, as_perm(g)) == p for p in perms)}
    assert C == brute and len(C) == 18
