import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from partialgroups.errors import (
    ConjugationUndefinedError,
    DomainBoundError,
    InvalidInputError,
    UndefinedProductError,
)
from partialgroups.fixtures import (
    corrupted_table,
    cyclic_by_inversion,
    sym3_squared,
    sym4_full,
    sym4_restricted,
    wreath_sym2_sym3,
)
from partialgroups.oracles import ExplicitBounded, Full
from partialgroups.partial_group import (
    PartialGroup,
    centralizer,
    conjugate,
    conjugation_domain,
    is_defined,
    is_partial_normal,
    is_partial_subgroup,
    is_subgroup,
    normalizer,
    product,
    verify_axioms,
)
from partialgroups.properties import conjugation_inverse_report, partial_group_identities

C2, M2 = oracle.cyclic(2, "x")
C3, M3 = oracle.cyclic(3, "a")
INV3 = {"1": "1", "a": "a^2", "a^2": "a"}
L1_ELEMS, L1_TABLE = oracle.semidirect_table(C2, M2, C3, M3, lambda f, y: INV3[f] if y == "x" else f)


def explicit_c2(bound=3):
    """C2 with its domain listed explicitly up to ``bound``."""
    words = [w for n in range(bound + 1) for w in itertools.product(range(2), repeat=n)]
    return PartialGroup(["1", "x"], "1", [0, 1], [[0, 1], [1, 0]], ExplicitBounded(2, bound, words), name="C2e")


def test_product_examples():
    L1 = cyclic_by_inversion().L
    assert product(L1, [("x", "1"), ("x", "1")]) == ("1", "1")
    G = sym4_full().G
    assert product(G, ["(1 2)", "(1 2)", "(1 2)"]) == "(1 2)"
    assert product(G, []) == "()"


def test_undefined_product_is_an_error():
    loc = sym3_squared().loc
    L = loc.L
    a, b = next((a, b) for a in L.labels for b in L.labels if not is_defined(L, [a, b]))
    with pytest.raises(UndefinedProductError):
        product(L, [a, b])


def test_explicit_domain_beyond_its_bound():
    L = explicit_c2(3)
    assert is_defined(L, ["x", "x", "x"])
    with pytest.raises(DomainBoundError):
        is_defined(L, ["x"] * 4)
    rep = verify_axioms(L, 3)
    assert rep.ok and all(e.exhaustive for e in rep.entries)


def test_validation_rejects_inconsistent_tables():
    with pytest.raises(InvalidInputError):
        PartialGroup(["1", "x"], "1", [0, 0], [[0, 1], [1, 0]], Full(2))
    with pytest.raises(InvalidInputError):
        PartialGroup(["1", "x"], "1", [0, 1], [[0, 1], [1, -1]], Full(2))


def test_axioms_pass_on_the_six_element_product():
    rep = verify_axioms(cyclic_by_inversion().L, 4)
    assert rep.ok
    assert [e.check for e in rep.entries] == ["PG1", "PG2", "PG3", "PG4"]


def test_corrupted_table_fails_pg4_with_counterexample():
    rep = verify_axioms(corrupted_table(), 3)
    pg4 = rep.get("PG4")
    assert not pg4.passed
    assert pg4.counterexample == [("1", "1"), ("1", "1"), ("x", "a")]
    assert rep.get("PG1").passed and rep.get("PG2").passed


def test_conjugation_examples():
    G = sym4_full().G
    assert conjugate(G, "(1 2)", "(1 3)") == "(2 3)"
    L = sym3_squared().loc.L
    x, g = next((x, g) for g in L.labels for x in L.labels if x not in conjugation_domain(L, g))
    with pytest.raises(ConjugationUndefinedError):
        conjugate(L, x, g)


def test_sylow_subgroup_is_self_normalizing():
    base = sym4_full()
    assert normalizer(base.G, base.G.labels, base.S) == base.S


def test_centralizer_of_the_base_in_the_wreath_product():
    W = wreath_sym2_sym3().sparse
    base = W.hat_N.L.labels
    C = centralizer(W.L, W.L.labels, base)
    assert C <= frozenset(base)
    assert len(C) == 1  # the base Sym(3) × Sym(3) has trivial centre


def test_partial_subgroups_of_the_six_element_product():
    L1 = cyclic_by_inversion().L
    N = {("1", "1"), ("1", "a"), ("1", "a^2")}
    assert is_partial_subgroup(L1, N) and is_partial_normal(L1, N)
    X = {("1", "1"), ("x", "1")}
    assert is_partial_subgroup(L1, X) and not is_partial_normal(L1, X)
    assert is_subgroup(L1, X)


def test_conjugation_inverse_property():
    for L in (cyclic_by_inversion().L, sym3_squared().loc.L):
        assert conjugation_inverse_report(L).ok


def test_identity_suite_on_explicit_domain():
    assert partial_group_identities(explicit_c2(4), 4).ok


def _brute_subgroup(elems):
    return all(L1_TABLE[(a, b)] in elems for a in elems for b in elems)


@given(st.lists(st.sampled_from(L1_ELEMS), max_size=6))
def test_product_matches_brute_force_table(word):
    L1 = cyclic_by_inversion().L
    expected = ("1", "1")
    for g in word:
        expected = L1_TABLE[(expected, g)]
    assert product(L1, word) == expected


@given(st.sets(st.sampled_from(L1_ELEMS), min_size=1))
def test_partial_subgroup_matches_brute_force(H):
    L1 = cyclic_by_inversion().L
    inv_closed = all(L1.inverse(h) in H for h in H)
    assert is_partial_subgroup(L1, H) == (inv_closed and _brute_subgroup(H))


@given(st.data())
def test_domain_matches_chain_search(data):
    base = sym3_squared()
    L = base.loc.L
    n = 6
    S = frozenset(oracle.parse(x, n) for x in base.S)
    delta = [frozenset(oracle.parse(x, n) for x in P) for P in base.delta]
    word = data.draw(st.lists(st.sampled_from(L.labels), max_size=4))
    assert is_defined(L, word) == oracle.chain_member([oracle.parse(g, n) for g in word], S, delta)


def test_restricted_sym4_carrier_matches_oracle():
    f4 = sym4_restricted()
    G = oracle.perm_group(["(1 2)", "(1 2 3 4)"], 4)
    S = oracle.perm_group(["(1 2 3 4)", "(1 3)"], 4)
    delta = [P for P in oracle.subgroups(S, oracle.perm_mul, tuple(range(4))) if len(P) >= 4]
    carrier = oracle.restricted_carrier(G, S, delta)
    assert {oracle.label(g) for g in carrier} == set(f4.loc.L.labels)
    assert len(carrier) == 24  # the normal Klein four group lies in every Sylow subgroup
