"""External and internal semidirect products of partial groups.

An external product ``X ⋉_φ N`` has carrier ``X × N`` with labels ``(x, f)``.
A word ``w`` splits into ``w_X`` (first coordinates) and, when ``w_X`` is in
D(X), ``w_N`` whose i-th letter is ``f_i`` twisted by the product of the
later first coordinates.  The internal notion asks the same of a partial
group and two of its partial subgroups; recognising it is a table
computation plus one word sweep.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import IncompatibleIsosError, InvalidActionError, InvalidInputError, VerificationError
from .morphisms import ActionHom, PartialGroupMap, action_report, is_isomorphism
from .oracles import SemidirectSplit
from .partial_group import PartialGroup, _conj_set_idx, is_partial_subgroup
from .report import CheckResult, VerificationReport


def split_word(w, phi: ActionHom):
    """``(w_X, w_N)`` for a word of pairs; ``w_N`` is None when w_X ∉ D(X)."""
    X, N = phi.actor, phi.target
    xs = [X.idx(x) for x, _ in w]
    fs = [N.idx(f) for _, f in w]
    wx = tuple(X.labels[x] for x in xs)
    if not X.defined(xs):
        return wx, None
    wn = []
    for i, f in enumerate(fs):
        y = X.fold(xs[i + 1 :])
        wn.append(N.labels[phi.act_rows[y][f]])
    return wx, tuple(wn)


def external_semidirect(
    X: PartialGroup,
    N: PartialGroup,
    phi: ActionHom,
    name: str | None = None,
    max_len: int | None = 4,
    check_action: bool = True,
) -> PartialGroup:
    """X ⋉_φ N with the split domain and the twisted product and inversion."""
    if phi.actor is not X or phi.target is not N:
        raise InvalidInputError("the action must go from X to the automorphisms of N")
    if check_action:
        rep = action_report(phi, max_len)
        if not rep.ok:
            bad = rep.failures()[0]
            raise InvalidActionError(f"not an action ({bad.check} fails at {bad.counterexample!r})")
    nX, nN = len(X), len(N)
    act = phi.act_rows
    bx, bn = X.binary_rows, N.binary_rows
    labels = [(X.labels[x], N.labels[f]) for x in range(nX) for f in range(nN)]
    binary = np.full((nX * nN, nX * nN), -1, dtype=np.int32)
    for x in range(nX):
        for y in range(nX):
            xy = bx[x][y]
            if xy < 0:
                continue
            ay = act[y]
            for f in range(nN):
                row = bn[ay[f]]
                i = x * nN + f
                for g in range(nN):
                    p = row[g]
                    if p >= 0:
                        binary[i, y * nN + g] = xy * nN + p
    inv = []
    for x in range(nX):
        xi = X.inv_list[x]
        for f in range(nN):
            inv.append(xi * nN + act[xi][N.inv_list[f]])
    return PartialGroup(
        labels,
        (X.identity, N.identity),
        inv,
        binary,
        SemidirectSplit(X, N, act),
        name=name or f"{X.name}⋉{N.name}",
    )


def embeddings(E: PartialGroup) -> tuple[PartialGroupMap, PartialGroupMap]:
    """The canonical maps X -> (X, 1) and N -> (1, N) of an external product."""
    X, N = E.oracle.X, E.oracle.N
    alpha = PartialGroupMap(X, E, {x: (x, N.identity) for x in X.labels})
    beta = PartialGroupMap(N, E, {f: (X.identity, f) for f in N.labels})
    return alpha, beta


def canonical_parts(E: PartialGroup) -> tuple[frozenset, frozenset]:
    """The subsets (X, 1) and (1, N) of an external product."""
    X, N = E.oracle.X, E.oracle.N
    return (
        frozenset((x, N.identity) for x in X.labels),
        frozenset((X.identity, f) for f in N.labels),
    )


# -- internal products -------------------------------------------------


@dataclass
class InternalSDWitness:
    """Evidence that ``ambient`` is the internal semidirect product of its
    partial subgroups ``part_X`` and ``part_N``.

    ``decomposition`` maps each element g to the unique pair (x, n) with
    g = Π(x, n); ``X`` and ``N`` are the two parts regarded as partial groups.
    """

    ambient: PartialGroup
    part_X: frozenset
    part_N: frozenset
    decomposition: dict
    report: VerificationReport
    max_len: int
    X: PartialGroup = field(repr=False, default=None)
    N: PartialGroup = field(repr=False, default=None)
    dec_x: list = field(repr=False, default=None)
    dec_n: list = field(repr=False, default=None)

    def __bool__(self) -> bool:
        return True


@dataclass
class SDFailure:
    """A failed recognition; falsy.  ``axiom`` is SD1, SD2 or SD3."""

    axiom: str
    counterexample: object
    report: VerificationReport
    detail: str = ""

    def __bool__(self) -> bool:
        return False


def check_internal_semidirect(
    L: PartialGroup, X, N, max_len: int = 4, backend: str | None = None
) -> InternalSDWitness | SDFailure:
    """Recognise L as the internal semidirect product of X with N.

    The normalising condition and unique factorisation are decided exactly;
    the splitting of domain and product is swept over all words of length at
    most ``max_len``.
    """
    Xi, Ni = L.idx_set(X), L.idx_set(N)
    for part, name in ((X, "X"), (N, "N")):
        if not is_partial_subgroup(L, part):
            raise InvalidInputError(f"{name} is not a partial subgroup")
    report = VerificationReport(f"internal semidirect product {L.name}")

    # normalising: N ⊆ D(x) and N^x = N for x in X
    bad = None
    for x in sorted(Xi):
        img = _conj_set_idx(L, Ni, x)
        if img != Ni:
            row = L.conj_rows[x]
            n = next((n for n in sorted(Ni) if row[n] < 0 or row[n] not in Ni), None)
            bad = [L.labels[x], L.labels[n]] if n is not None else [L.labels[x]]
            break
    report.add(
        CheckResult(
            "SD1",
            bad is None,
            counterexample=bad,
            instances=len(Xi) * len(Ni),
            detail="X normalises N",
        )
    )
    if bad is not None:
        return SDFailure("SD1", bad, report, "an element of X does not normalise N")

    # unique factorisation
    found: dict[int, list[tuple[int, int]]] = {g: [] for g in range(len(L))}
    rows = L.binary_rows
    for x in sorted(Xi):
        for n in sorted(Ni):
            p = rows[x][n]
            if p >= 0:
                found[p].append((x, n))
    bad = None
    for g in range(len(L)):
        if len(found[g]) != 1:
            bad = [L.labels[g], [[L.labels[x], L.labels[n]] for x, n in found[g]]]
            break
    report.add(
        CheckResult(
            "SD2",
            bad is None,
            counterexample=bad,
            instances=len(L),
            detail="unique factorisation g = xn",
        )
    )
    if bad is not None:
        return SDFailure("SD2", bad, report, "an element has no factorisation or several")
    dec_x = [found[g][0][0] for g in range(len(L))]
    dec_n = [found[g][0][1] for g in range(len(L))]

    inst, skipped, cex, aux = kernels.sd3_sweep(L, dec_x, dec_n, max_len, backend)
    detail = "domain and product split along (w_X, w_N)"
    if cex is not None:
        detail += "; " + kernels._kernels_py.SD3_REASONS[aux[0]]
    report.add(
        CheckResult(
            "SD3",
            cex is None,
            bound=max_len,
            counterexample=None if cex is None else L.label_word(cex),
            instances=inst,
            skipped=skipped,
            detail=detail,
        )
    )
    if cex is not None:
        return SDFailure("SD3", L.label_word(cex), report, detail)

    decomposition = {L.labels[g]: (L.labels[dec_x[g]], L.labels[dec_n[g]]) for g in range(len(L))}
    return InternalSDWitness(
        ambient=L,
        part_X=L.label_set(Xi),
        part_N=L.label_set(Ni),
        decomposition=decomposition,
        report=report,
        max_len=max_len,
        X=L.restrict(X, name=f"{L.name}:X"),
        N=L.restrict(N, name=f"{L.name}:N"),
        dec_x=dec_x,
        dec_n=dec_n,
    )


def decompose(witness: InternalSDWitness, g) -> tuple:
    """The unique (x, n) with g = Π(x, n)."""
    witness.ambient.idx(g)
    return witness.decomposition[g]


def derived_action(witness: InternalSDWitness) -> ActionHom:
    """X acting on N by conjugation inside the ambient partial group."""
    L, X, N = witness.ambient, witness.X, witness.N
    conj = L.conj_rows

    def image(x):
        row = conj[L.idx(x)]
        return {n: L.labels[row[L.idx(n)]] for n in N.labels}

    return ActionHom(X, N, image)


def internal_to_external_iso(
    witness: InternalSDWitness, max_len: int | None = 4
) -> tuple[PartialGroupMap, PartialGroup]:
    """The map Π(x, n) -> (x, n) onto X ⋉ N built from the derived action.

    Returns the map and the external product it lands in.
    """
    phi = derived_action(witness)
    E = external_semidirect(witness.X, witness.N, phi, name=f"ext({witness.ambient.name})", max_len=max_len)
    return PartialGroupMap(witness.ambient, E, dict(witness.decomposition)), E


def compatibility_counterexample(wit1: InternalSDWitness, wit2: InternalSDWitness, alpha, beta):
    """First (x, n) with (n^β)^(x^α) ≠ (n^x)^β, or None."""
    L1, L2 = wit1.ambient, wit2.ambient
    for x in sorted(wit1.part_X, key=L1.idx):
        row1 = L1.conj_rows[L1.idx(x)]
        row2 = L2.conj_rows[L2.idx(alpha(x))]
        for n in sorted(wit1.part_N, key=L1.idx):
            lhs = row2[L2.idx(beta(n))]
            rhs = L2.idx(beta(L1.labels[row1[L1.idx(n)]]))
            if lhs != rhs:
                return [x, n]
    return None


def iso_from_component_isos(
    wit1: InternalSDWitness,
    wit2: InternalSDWitness,
    alpha,
    beta,
    max_len: int | None = 4,
) -> PartialGroupMap:
    """Π(x, n) -> Π'(x^α, n^β) for compatible isomorphisms α: X -> X', β: N -> N'.

    ``alpha`` and ``beta`` are :class:`PartialGroupMap` between the parts
    (as returned in the witnesses) or plain label mappings.
    """
    alpha = _as_map(alpha, wit1.X, wit2.X)
    beta = _as_map(beta, wit1.N, wit2.N)
    for m, what in ((alpha, "alpha"), (beta, "beta")):
        if not is_isomorphism(m, max_len):
            raise InvalidInputError(f"{what} is not an isomorphism")
    bad = compatibility_counterexample(wit1, wit2, alpha, beta)
    if bad is not None:
        raise IncompatibleIsosError(f"(n^beta)^(x^alpha) differs from (n^x)^beta at x={bad[0]!r}, n={bad[1]!r}")
    L1, L2 = wit1.ambient, wit2.ambient
    mapping = {}
    for g, (x, n) in wit1.decomposition.items():
        mapping[g] = L2.mul(alpha(x), beta(n))
    phi = PartialGroupMap(L1, L2, mapping)
    if not is_isomorphism(phi, max_len):
        raise VerificationError(
            "the induced map is not an isomorphism",
            VerificationReport(f"iso {L1.name} -> {L2.name}"),
        )
    return phi


def _as_map(m, source, target) -> PartialGroupMap:
    if isinstance(m, PartialGroupMap):
        if len(m.source) != len(source) or len(m.target) != len(target):
            raise InvalidInputError("component map does not match the parts")
        if m.source is source and m.target is target:
            return m
        return PartialGroupMap(source, target, {g: m(g) for g in source.labels})
    if isinstance(m, Mapping) or callable(m):
        return PartialGroupMap(source, target, m)
    raise InvalidInputError("component maps must be mappings or PartialGroupMap")
