"""Small named structures used by the tests, the benchmark and the corpus.

Every builder is cached and returns a :class:`types.SimpleNamespace`; the
mutants return structures that are deliberately broken in one place.
"""

from __future__ import annotations

from functools import cache
from types import SimpleNamespace

from .groups import cyclic_group, generated, permutation_group, subgroups, symmetric_group
from .locality import check_locality, locality_from_group, verify_locality
from .locality_products import group_semidirect_locality
from .morphisms import ActionHom, PartialGroupMap
from .partial_group import PartialGroup
from .semidirect import canonical_parts, check_internal_semidirect, external_semidirect
from .wreath import direct_product_localities, wreath_product

#: generators of the dihedral Sylow 2-subgroup of Sym(4) used throughout
D8_IN_SYM4 = ("(1 2 3 4)", "(1 3)")
KLEIN_NORMAL_IN_SYM4 = ("(1 2)(3 4)", "(1 3)(2 4)")


def _inversion(X: PartialGroup, N: PartialGroup) -> ActionHom:
    """The non-trivial element of X acting on N by inversion."""
    return ActionHom.from_function(X, N, lambda x, f: f if x == X.identity else N.labels[N.inv_list[N.idx(f)]])


@cache
def cyclic_by_inversion() -> SimpleNamespace:
    """C2 = {1, x} acting on C3 = {1, a, a^2} by inversion; six elements."""
    X, N = cyclic_group(2, "x"), cyclic_group(3, "a")
    phi = _inversion(X, N)
    L = external_semidirect(X, N, phi, name="C2⋉C3")
    return SimpleNamespace(X=X, N=N, action=phi, L=L, parts=canonical_parts(L))


@cache
def cyclic_trivial() -> SimpleNamespace:
    """The same carriers with the trivial action; a cyclic group of order 6."""
    X, N = cyclic_group(2, "x"), cyclic_group(3, "a")
    phi = ActionHom.trivial(X, N)
    L = external_semidirect(X, N, phi, name="C2×C3")
    return SimpleNamespace(X=X, N=N, action=phi, L=L, parts=canonical_parts(L))


@cache
def sym4_full(max_len: int | None = 4) -> SimpleNamespace:
    """Sym(4) at p = 2 with every subgroup of the dihedral Sylow subgroup."""
    G = symmetric_group(4)
    S = generated(G, D8_IN_SYM4)
    lattice = subgroups(G, S)
    return SimpleNamespace(G=G, S=S, lattice=lattice, loc=verify_locality(G, 2, S, lattice, max_len))


@cache
def sym4_restricted(max_len: int | None = 4) -> SimpleNamespace:
    """Sym(4) at p = 2 restricted to the subgroups of S of order at least 4."""
    base = sym4_full(max_len)
    delta = [P for P in base.lattice if len(P) >= 4]
    carrier, loc = locality_from_group(base.G, 2, base.S, delta, max_len, name="Sym(4)_Δ≥4")
    return SimpleNamespace(G=base.G, S=base.S, delta=delta, carrier=carrier, loc=loc)


@cache
def sym3_at_three(max_len: int | None = 4) -> SimpleNamespace:
    """Sym(3) at p = 3 whose only object is Alt(3)."""
    G = symmetric_group(3)
    T = generated(G, ["(1 2 3)"])
    _, loc = locality_from_group(G, 3, T, [T], max_len, name="Sym(3)")
    return SimpleNamespace(G=G, T=T, loc=loc)


@cache
def wreath_sym2_sym3(max_len: int | None = 4) -> SimpleNamespace:
    """Sym(2) permuting two copies of the Sym(3) locality at p = 3."""
    N = sym3_at_three(max_len)
    X = symmetric_group(2)
    power = direct_product_localities([N.loc, N.loc], max_len, name="Sym(3)^2")
    sparse = wreath_product(X, N.loc, 2, "sparse", max_len, name="Sym(2)≀Sym(3)")
    ample = wreath_product(X, N.loc, 2, "ample", max_len, name="Sym(2)≀Sym(3)+")
    return SimpleNamespace(X=X, N=N.loc, power=power, sparse=sparse, ample=ample)


@cache
def sym3_squared(max_len: int | None = 4) -> SimpleNamespace:
    """Sym(3) × Sym(3) on six points at p = 2 with every non-trivial
    subgroup of S as an object; its carrier misses the products of two
    elements whose Sylow intersection is trivial."""
    G = permutation_group(["(1 2)", "(1 2 3)", "(4 5)", "(4 5 6)"], 6, name="Sym(3)×Sym(3)")
    S = generated(G, ["(1 2)", "(4 5)"])
    delta = [P for P in subgroups(G, S) if len(P) > 1]
    carrier, loc = locality_from_group(G, 2, S, delta, max_len, name="(Sym(3)×Sym(3))_Δ")
    return SimpleNamespace(G=G, S=S, delta=delta, carrier=carrier, loc=loc)


@cache
def trivial_action_on(which: str, variant: str = "sparse", max_len: int | None = 4) -> SimpleNamespace:
    """C2 acting trivially on a proper locality; the two families differ."""
    N_loc = {"sym3_squared": sym3_squared, "sym4_restricted": sym4_restricted}[which](max_len).loc
    X = cyclic_group(2, "c")
    phi = ActionHom.trivial(X, N_loc.L)
    loc = group_semidirect_locality(X, phi, N_loc, variant, max_len, name=f"C2×{N_loc.name}/{variant}")
    return SimpleNamespace(X=X, N=N_loc, action=phi, loc=loc)


@cache
def klein_by_swap() -> SimpleNamespace:
    """V4 = <(1 2), (3 4)> with C2 swapping the two generators (a dihedral
    group of order 8), together with an automorphism of V4 that does not
    commute with the swap."""
    V = permutation_group(["(1 2)", "(3 4)"], 4, name="V4")
    X = cyclic_group(2, "s")
    swap = {"()": "()", "(1 2)": "(3 4)", "(3 4)": "(1 2)", "(1 2)(3 4)": "(1 2)(3 4)"}
    phi = ActionHom(X, V, lambda x: swap if x == "s" else {})
    L = external_semidirect(X, V, phi, name="V4⋊C2")
    hx, hn = canonical_parts(L)
    wit = check_internal_semidirect(L, hx, hn)
    alpha = PartialGroupMap.identity(wit.X)
    e = X.identity
    beta = PartialGroupMap(
        wit.N,
        wit.N,
        {
            (e, "()"): (e, "()"),
            (e, "(1 2)"): (e, "(1 2)"),
            (e, "(3 4)"): (e, "(1 2)(3 4)"),
            (e, "(1 2)(3 4)"): (e, "(3 4)"),
        },
    )
    return SimpleNamespace(X=X, N=V, action=phi, L=L, witness=wit, alpha=alpha, beta=beta)


# -- mutants -----------------------------------------------------------


def corrupted_table() -> PartialGroup:
    """The six-element product with one entry of its table changed:
    (x, a)(x, a) is recorded as (1, a) instead of the identity."""
    L = cyclic_by_inversion().L
    binary = L.binary.copy()
    binary[L.idx(("x", "a")), L.idx(("x", "a"))] = L.idx(("1", "a"))
    return PartialGroup(L.labels, L.identity, L.inv_list, binary, L.oracle, name="corrupted C2⋉C3")


def corrupted_action() -> ActionHom:
    """x sends both a and a^2 to a, so its image is not a bijection."""
    X, N = cyclic_group(2, "x"), cyclic_group(3, "a")
    return ActionHom(X, N, lambda x: {"a^2": "a"} if x == "x" else {})


def non_invariant_objects() -> SimpleNamespace:
    """C2 swapping the factors of V4 while Γ contains <(1 2)> but not <(3 4)>."""
    V = permutation_group(["(1 2)", "(3 4)"], 4, name="V4")
    full = frozenset(V.labels)
    gamma = [frozenset(["()", "(1 2)"]), full]
    N_loc = verify_locality(V, 2, full, gamma)
    X = cyclic_group(2, "s")
    swap = {"(1 2)": "(3 4)", "(3 4)": "(1 2)"}
    phi = ActionHom(X, V, lambda x: swap if x == "s" else {})
    return SimpleNamespace(X=X, N_loc=N_loc, action=phi)


def broken_star() -> SimpleNamespace:
    """C2 with C2 as its only object acting by inversion on C3 at p = 2.

    The kernel of the action is trivial, so Q ∩ C = 1 is not an object."""
    X, N = cyclic_group(2, "x"), cyclic_group(3, "a")
    X_loc = verify_locality(X, 2, frozenset(X.labels), [frozenset(X.labels)])
    one = frozenset([N.identity])
    N_loc = verify_locality(N, 2, one, [one])
    return SimpleNamespace(X_loc=X_loc, N_loc=N_loc, action=_inversion(X, N))


def missing_overgroup():
    """Sym(4) at p = 2 with S itself removed from the object set."""
    base = sym4_full()
    delta = [P for P in base.lattice if P != base.S]
    return check_locality(base.G, 2, base.S, delta)


def non_maximal_sylow():
    """Sym(4) at p = 2 with the normal Klein four group in place of S."""
    G = symmetric_group(4)
    V = generated(G, KLEIN_NORMAL_IN_SYM4)
    return check_locality(G, 2, V, subgroups(G, V))

