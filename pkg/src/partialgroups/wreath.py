"""Direct products of localities, coordinate permutation actions and wreath products."""

from __future__ import annotations

import itertools

import numpy as np

from .errors import HypothesisNotMetError, InvalidActionError, InvalidInputError
from .groups import parse_cycles, subgroups_idx
from .locality import Locality, verify_locality
from .locality_products import ProductLocality, group_semidirect_locality
from .morphisms import ActionHom, action_report
from .oracles import DirectPower
from .partial_group import PartialGroup, centralizer
from .report import CheckResult, VerificationReport, set_key


class DirectProductLocality(Locality):
    """The componentwise product of localities; labels are tuples."""

    def __init__(self, base: Locality, factors: list[Locality]):
        super().__init__(base.L, base.p, base.S, base.delta, base.report, base.info)
        self.factors = factors


def direct_product_partial_group(factors: list[PartialGroup], name: str | None = None) -> PartialGroup:
    """Componentwise carrier, product, inversion and domain."""
    sizes = [len(F) for F in factors]
    coords = list(itertools.product(*(range(n) for n in sizes)))
    pos = {c: i for i, c in enumerate(coords)}
    labels = [tuple(F.labels[c] for F, c in zip(factors, cs)) for cs in coords]
    n = len(coords)
    binary = np.full((n, n), -1, dtype=np.int32)
    rows = [F.binary_rows for F in factors]
    for i, a in enumerate(coords):
        for j, b in enumerate(coords):
            out = []
            for r, x, y in zip(rows, a, b):
                p = r[x][y]
                if p < 0:
                    break
                out.append(p)
            else:
                binary[i, j] = pos[tuple(out)]
    inv = [pos[tuple(F.inv_list[x] for F, x in zip(factors, c))] for c in coords]
    ident = tuple(F.identity for F in factors)
    return PartialGroup(
        labels, ident, inv, binary, DirectPower(factors), name=name or "×".join(F.name for F in factors)
    )


def star_product(lattice: list[frozenset], families: list) -> list[frozenset]:
    """{P in lattice : Q_1 × ... × Q_n ≤ P for some Q_i in the i-th family}."""
    boxes = []
    for choice in itertools.product(*(sorted(f, key=set_key) for f in families)):
        box = frozenset(itertools.product(*choice))
        boxes.append(box)
    return [P for P in lattice if any(B <= P for B in boxes)]


def direct_product_localities(
    factors: list[Locality], max_len: int | None = 4, name: str | None = None
) -> DirectProductLocality:
    if not factors:
        raise InvalidInputError("at least one factor is required")
    primes = {loc.p for loc in factors}
    if len(primes) != 1:
        raise InvalidInputError(f"factors are at different primes {sorted(primes)}")
    L = direct_product_partial_group([loc.L for loc in factors], name=name)
    S = frozenset(itertools.product(*(sorted(loc.S, key=str) for loc in factors)))
    lattice = [L.label_set(P) for P in subgroups_idx(L, L.idx_set(S))]
    delta = star_product(lattice, [loc.delta for loc in factors])
    base = verify_locality(L, factors[0].p, S, delta, max_len, {"factors": [loc.name for loc in factors]})
    return DirectProductLocality(base, list(factors))


def _same_locality(a: Locality, b: Locality) -> bool:
    if a is b:
        return True
    return (
        a.p == b.p
        and a.L.labels == b.L.labels
        and a.L.e == b.L.e
        and np.array_equal(a.L.binary, b.L.binary)
        and a.S == b.S
        and a.delta == b.delta
    )


def permutation_images(X: PartialGroup, k: int) -> dict:
    """Each label of the permutation group X as an image tuple on 0..k-1."""
    try:
        return {x: parse_cycles(x, k) for x in X.labels}
    except (InvalidInputError, TypeError):
        raise InvalidInputError(f"{X.name} is not a permutation group on {k} points") from None


def perm_action(X: PartialGroup, Npow: DirectProductLocality, max_len: int | None = 4) -> ActionHom:
    """X ≤ Sym(k) permuting the coordinates of N^k.

    The entry in position i moves to position i^x, i.e.
    ``(n^x)_j = n_{j^(x⁻¹)}``; this is a homomorphism for permutations
    composed left to right.
    """
    k = len(Npow.factors)
    if k < 2:
        raise InvalidInputError("at least two coordinates are required")
    if not all(_same_locality(Npow.factors[0], f) for f in Npow.factors[1:]):
        raise InvalidInputError("coordinate permutations need identical factors")
    if len(Npow.factors[0].L) < 2:
        raise InvalidInputError("the factor locality must be non-trivial")
    perms = permutation_images(X, k)
    N = Npow.L

    def image(x):
        perm = perms[x]
        out = {}
        for n in N.labels:
            moved = [None] * k
            for i in range(k):
                moved[perm[i]] = n[i]
            out[n] = tuple(moved)
        return out

    phi = ActionHom(X, N, image)
    rep = action_report(phi, max_len)
    if not rep.ok:
        raise InvalidActionError(f"coordinate permutation is not an action: {rep.failures()[0].check}")
    members = {N.idx_set(R) for R in Npow.delta}
    for row in phi.act_rows:
        for R in members:
            if frozenset(row[r] for r in R) not in members:
                raise InvalidActionError("the coordinate action does not preserve the object set")
    return phi


def wreath_product(
    X: PartialGroup,
    N_loc: Locality,
    k: int,
    variant: str = "sparse",
    max_len: int | None = 4,
    name: str | None = None,
) -> ProductLocality:
    """The sparse or ample wreath product of X ≤ Sym(k) with a locality."""
    if k < 2:
        raise InvalidInputError("wreath products need k ≥ 2")
    if len(N_loc.L) < 2:
        raise InvalidInputError("the locality must be non-trivial")
    Npow = direct_product_localities([N_loc] * k, max_len, name=f"{N_loc.name}^{k}")
    phi = perm_action(X, Npow, max_len)
    loc = group_semidirect_locality(X, phi, Npow, variant, max_len, name=name or f"{X.name}≀{N_loc.name}")
    loc.info.update({"degree": k, "power": Npow})
    return loc


# -- centralizer lemmas -------------------------------------------------


def coordinate_witnesses(wreath: ProductLocality, H) -> dict | None:
    """For each coordinate i an element of H whose entries other than the
    i-th are trivial and whose i-th entry is not; None if one is missing."""
    eN = wreath.N_loc.factors[0].L.identity
    k = len(wreath.N_loc.factors)
    out = {}
    for i in range(k):
        for h in sorted(H, key=str):
            entries = h[1]
            if entries[i] != eN and all(entries[j] == eN for j in range(k) if j != i):
                out[i] = h
                break
        else:
            return None
    return out


def centralizer_lemma_report(wreath: ProductLocality, H=None) -> VerificationReport:
    """C_L(H) = C_{N^k}(H) for H in the N^k-copy with coordinate witnesses
    (H defaults to the whole copy), and C_L(R) = C_{N^k}(R) for every R
    between an object and S when the trivial subgroup is not an object of
    the factor."""
    L = wreath.L
    Nk = wreath.hat_N.L.labels
    H = frozenset(Nk if H is None else H)
    report = VerificationReport(f"centralizers in {L.name}")
    if not H <= frozenset(Nk):
        raise InvalidInputError("H must lie in the N^k-copy")
    wit = coordinate_witnesses(wreath, H)
    if wit is None:
        raise HypothesisNotMetError("some coordinate has no witness in H")
    cl, cn = centralizer(L, L.labels, H), centralizer(L, Nk, H)
    report.add(
        CheckResult(
            "coordinate-centralizer",
            cl == cn,
            counterexample=None if cl == cn else sorted(cl - cn, key=str)[:1],
            instances=len(L),
            detail="C_L(H) = C_{N^k}(H)",
        )
    )
    factor = wreath.N_loc.factors[0]
    if frozenset([factor.L.identity]) not in factor.delta:
        lattice = wreath.families["lattice"]
        bad, count = None, 0
        for P in sorted(wreath.delta, key=set_key):
            for R in lattice:
                if not P <= R:
                    continue
                count += 1
                if centralizer(L, L.labels, R) != centralizer(L, Nk, R):
                    bad = [P, R]
                    break
            if bad:
                break
        report.add(
            CheckResult(
                "object-centralizer",
                bad is None,
                counterexample=bad,
                instances=count,
                detail="C_L(R) = C_{N^k}(R) for P ∈ Δ, P ≤ R ≤ S",
            )
        )
    return report


def centralizer_lemma_check(wreath: ProductLocality, H=None) -> bool:
    return centralizer_lemma_report(wreath, H).ok
