from functools import cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from partialgroups.errors import IncompatibleIsosError, InvalidActionError
from partialgroups.fixtures import (
    corrupted_action,
    cyclic_by_inversion,
    cyclic_trivial,
    klein_by_swap,
    sym3_squared,
    wreath_sym2_sym3,
)
from partialgroups.groups import cyclic_group
from partialgroups.morphisms import ActionHom, PartialGroupMap, find_isomorphism, is_isomorphism
from partialgroups.partial_group import is_defined, product, verify_axioms
from partialgroups.properties import (
    conjugation_calculus_report,
    external_split_report,
    semidirect_structure_report,
)
from partialgroups.semidirect import (
    SDFailure,
    canonical_parts,
    check_internal_semidirect,
    decompose,
    derived_action,
    external_semidirect,
    internal_to_external_iso,
    iso_from_component_isos,
    split_word,
)

C2, M2 = oracle.cyclic(2, "x")
C3, M3 = oracle.cyclic(3, "a")
INV3 = {"1": "1", "a": "a^2", "a^2": "a"}
L1_ELEMS, L1_TABLE = oracle.semidirect_table(C2, M2, C3, M3, lambda f, y: INV3[f] if y == "x" else f)
SWAP6 = oracle.parse("(1 4)(2 5)(3 6)", 6)


@cache
def swapped_partial_product():
    """C2 swapping the two factors of the restricted Sym(3) × Sym(3) locality:
    an external product whose second factor is a proper partial group."""
    N = sym3_squared().loc.L
    X = cyclic_group(2, "s")
    swap = {f: oracle.label(oracle.perm_conj(oracle.parse(f, 6), SWAP6)) for f in N.labels}
    phi = ActionHom(X, N, lambda x: swap if x == "s" else {})
    return X, N, phi, external_semidirect(X, N, phi, name="C2⋉(Sym(3)×Sym(3))_Δ")


def test_split_word_examples():
    f1, f2 = cyclic_by_inversion(), cyclic_trivial()
    assert split_word([("x", "a"), ("x", "1")], f1.action) == (("x", "x"), ("a^2", "1"))
    assert split_word([("x", "a"), ("x", "a^2")], f2.action) == (("x", "x"), ("a", "a^2"))


def test_six_element_product_matches_brute_force_table():
    L1 = cyclic_by_inversion().L
    assert len(L1) == 6 and verify_axioms(L1, 4).ok
    assert all(L1.mul(a, b) == L1_TABLE[(a, b)] for a in L1_ELEMS for b in L1_ELEMS)
    assert any(L1.mul(a, b) != L1.mul(b, a) for a in L1.labels for b in L1.labels)


def test_trivial_action_gives_c6():
    assert find_isomorphism(cyclic_trivial().L, cyclic_group(6, "c")) is not None


def test_invalid_action_is_rejected():
    X, N = cyclic_group(2, "x"), cyclic_group(3, "a")
    phi = corrupted_action()
    with pytest.raises(InvalidActionError):
        external_semidirect(phi.actor, phi.target, phi)
    assert len(X) == 2 and len(N) == 3


def test_internal_recognition_of_the_six_element_product():
    L1 = cyclic_by_inversion().L
    hx, hn = canonical_parts(L1)
    wit = check_internal_semidirect(L1, hx, hn)
    assert wit
    assert decompose(wit, ("x", "a")) == (("x", "1"), ("1", "a"))
    bad = check_internal_semidirect(L1, hn, hx)
    assert isinstance(bad, SDFailure) and bad.axiom == "SD1"


def test_internal_recognition_in_a_cyclic_group():
    C6 = cyclic_group(6, "c")
    wit = check_internal_semidirect(C6, {"1", "c^3"}, {"1", "c^2", "c^4"})
    assert wit and len(wit.decomposition) == 6


def test_derived_action_recovers_inversion():
    f1 = cyclic_by_inversion()
    wit = check_internal_semidirect(f1.L, *f1.parts)
    phi = derived_action(wit)
    for x in f1.X.labels:
        for f in f1.N.labels:
            assert phi.apply(("1", f), (x, "1")) == ("1", f1.action.apply(f, x))


def test_derived_action_on_the_wreath_product_permutes_coordinates():
    W = wreath_sym2_sym3().sparse
    wit = check_internal_semidirect(W.L, W.hat_X.L.labels, W.hat_N.L.labels)
    phi = derived_action(wit)
    e = W.X_loc.L.identity
    for n1, n2 in [("(1 2)", "()"), ("(1 2 3)", "(1 3)")]:
        assert phi.apply((e, (n1, n2)), ("(1 2)", ("()", "()"))) == (e, (n2, n1))


@pytest.mark.parametrize("which", ["inversion", "trivial", "wreath"])
def test_internal_external_round_trip(which):
    if which == "wreath":
        W = wreath_sym2_sym3().sparse
        wit = check_internal_semidirect(W.L, W.hat_X.L.labels, W.hat_N.L.labels)
    else:
        f = cyclic_by_inversion() if which == "inversion" else cyclic_trivial()
        wit = check_internal_semidirect(f.L, *f.parts)
    iso, E = internal_to_external_iso(wit)
    assert len(E) == len(wit.ambient)
    assert is_isomorphism(iso, 4)


def test_component_isomorphisms():
    f1 = cyclic_by_inversion()
    wit = check_internal_semidirect(f1.L, *f1.parts)
    e = "1"
    beta = {(e, "1"): (e, "1"), (e, "a"): (e, "a^2"), (e, "a^2"): (e, "a")}
    iso = iso_from_component_isos(wit, wit, PartialGroupMap.identity(wit.X), beta)
    assert is_isomorphism(iso)
    k = klein_by_swap()
    with pytest.raises(IncompatibleIsosError):
        iso_from_component_isos(k.witness, k.witness, k.alpha, k.beta)


@pytest.mark.parametrize("which", ["inversion", "trivial", "swap"])
def test_structure_and_conjugation_suites(which):
    if which == "swap":
        wit = klein_by_swap().witness
    else:
        f = cyclic_by_inversion() if which == "inversion" else cyclic_trivial()
        wit = check_internal_semidirect(f.L, *f.parts)
    assert semidirect_structure_report(wit).ok
    assert conjugation_calculus_report(wit).ok


def test_split_word_suite_on_a_partial_factor():
    X, N, phi, E = swapped_partial_product()
    assert verify_axioms(E, 3).ok
    assert external_split_report(E, phi, 3).ok


def _oracle_split(word):
    """w_X and the twisted N-components, with the swap computed on permutations."""
    xs = [x for x, _ in word]
    out = []
    for i, (_, f) in enumerate(word):
        p = oracle.parse(f, 6)
        if xs[i + 1 :].count("s") % 2:
            p = oracle.perm_conj(p, SWAP6)
        out.append(oracle.label(p))
    return xs, out


@given(st.data())
def test_split_domain_and_product_match_the_oracle(data):
    X, N, phi, E = swapped_partial_product()
    word = data.draw(st.lists(st.sampled_from(E.labels), max_size=4))
    xs, ns = _oracle_split(word)
    base = sym3_squared()
    S = frozenset(oracle.parse(x, 6) for x in base.S)
    delta = [frozenset(oracle.parse(x, 6) for x in P) for P in base.delta]
    expected = oracle.chain_member([oracle.parse(f, 6) for f in ns], S, delta)
    assert is_defined(E, word) == expected
    if expected:
        px = "s" if xs.count("s") % 2 else "1"
        pn = tuple(range(6))
        for f in ns:
            pn = oracle.perm_mul(pn, oracle.parse(f, 6))
        assert product(E, word) == (px, oracle.label(pn))
