"""Semidirect products of localities.

Given an internal semidirect product L = XN where (X, Δ_X, S_X) and
(N, Γ, T) are localities, three families of subgroups of S = S_X T are
built:

* the generating family of products QR with Q ∈ Δ_X centralising N, R ∈ Γ;
* its overgroup closure (the sparse choice);
* the subgroups whose two projections lie in Δ_X and Γ (the ample choice).

Both extreme choices, and any closed family in between, make L a locality.
The external variant builds ``X ⋉_φ N`` first and then applies the same
machinery to the canonical copies of X and N inside it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisError, InvalidInputError, VerificationError
from .groups import subgroups_idx, sylow_subgroup
from .locality import (
    Locality,
    _maximal_idx,
    _s_f_idx,
    conjugation_closure_counterexample,
    domain_check,
    overgroup_closure_counterexample,
    sublocality_report,
    verify_locality,
)
from .morphisms import ActionHom, fixed_centralizer
from .partial_group import PartialGroup, _conj_set_idx, centralizer, subgroup_check
from .report import CheckResult, VerificationReport, first_set, set_key
from .semidirect import InternalSDWitness, canonical_parts, check_internal_semidirect, external_semidirect

VARIANTS = ("sparse", "ample")


@dataclass
class ProductHypothesisData:
    """The standing data of a product of localities inside L.

    All subsets are label sets of the ambient partial group; ``C`` is the
    centraliser of N in X and ``S0`` is C_{S_X}(N)·T.
    """

    witness: InternalSDWitness
    X_loc: Locality
    N_loc: Locality
    S: frozenset
    C: frozenset
    S0: frozenset
    report: VerificationReport = field(repr=False)

    @property
    def L(self) -> PartialGroup:
        return self.witness.ambient

    @property
    def p(self) -> int:
        return self.X_loc.p


@dataclass
class DeltaFamily:
    """The generating, sparse and ample object families (label sets)."""

    delta0: frozenset
    delta_sparse: frozenset
    delta_plus: frozenset
    lattice: list = field(repr=False)
    report: VerificationReport = field(repr=False)


def product_set(L: PartialGroup, A, B) -> frozenset | None:
    """{Π(a, b)}, or None when some pair has no product."""
    out = set()
    rows = L.binary_rows
    for a in L.idx_set(A):
        for b in L.idx_set(B):
            p = rows[a][b]
            if p < 0:
                return None
            out.add(L.labels[p])
    return frozenset(out)


def gamma_invariance_counterexample(L: PartialGroup, X, gamma) -> list | None:
    """First (R, x) with R^x undefined or outside Γ (conjugation in L)."""
    members = {L.idx_set(R) for R in gamma}
    for x in sorted(L.idx_set(X)):
        for R in sorted(members, key=lambda R: (len(R), sorted(R))):
            img = _conj_set_idx(L, R, x)
            if img not in members:
                return [L.label_set(R), L.labels[x]]
    return None


def star_counterexample(delta_X, C) -> frozenset | None:
    """First Q ∈ Δ_X with Q ∩ C ∉ Δ_X."""
    members = set(map(frozenset, delta_X))
    for Q in sorted(members, key=set_key):
        if Q & C not in members:
            return Q
    return None


def build_hypothesis(witness: InternalSDWitness, X_loc: Locality, N_loc: Locality) -> ProductHypothesisData:
    """Check the standing hypothesis; raise :class:`HypothesisError` naming
    the violated bullet."""
    L = witness.ambient
    report = VerificationReport(f"product hypothesis on {L.name}")
    if X_loc.p != N_loc.p:
        raise InvalidInputError("the two localities are at different primes")
    if set(X_loc.L.labels) != set(witness.part_X) or set(N_loc.L.labels) != set(witness.part_N):
        raise HypothesisError("localities", "the localities must live on the two parts of the witness")
    bad = gamma_invariance_counterexample(L, witness.part_X, N_loc.delta)
    report.add(CheckResult("gamma-invariance", bad is None, counterexample=bad, detail="R^x ∈ Γ for R ∈ Γ, x ∈ X"))
    if bad is not None:
        raise HypothesisError("gamma-invariance", f"{sorted(map(str, bad[0]))} conjugated by {bad[1]!r} leaves Γ", bad)
    C = centralizer(L, witness.part_X, witness.part_N)
    bad = star_counterexample(X_loc.delta, C)
    report.add(CheckResult("star", bad is None, counterexample=bad, detail="Q ∩ C_X(N) ∈ Δ_X for Q ∈ Δ_X"))
    if bad is not None:
        raise HypothesisError("star", f"Q ∩ C_X(N) is not an object for Q = {sorted(map(str, bad))}", bad)
    S = product_set(L, X_loc.S, N_loc.S)
    holds = S is not None and subgroup_check(L, S)[0]
    report.add(CheckResult("product-subgroup", holds, detail="S_X T is a subgroup"))
    if not holds:
        raise HypothesisError("product-subgroup", "S_X T is not a subgroup")
    f = _maximal_idx(L, L.idx_set(S), X_loc.p)
    bad = None if f is None else L.labels[f]
    report.add(CheckResult("maximal", bad is None, counterexample=bad, detail="S_X T is a maximal p-subgroup"))
    if bad is not None:
        raise HypothesisError("maximal", "S_X T is not a maximal p-subgroup", bad)
    S0 = product_set(L, X_loc.S & C, N_loc.S)
    return ProductHypothesisData(witness, X_loc, N_loc, S, C, S0, report)


def project_PX(data: ProductHypothesisData, P) -> frozenset:
    """{s ∈ C_{S_X}(N) : Π(s, t) ∈ P for some t ∈ T}."""
    L, Pi = data.L, data.L.idx_set(P)
    rows = L.binary_rows
    T = L.idx_set(data.N_loc.S)
    return frozenset(
        L.labels[s] for s in L.idx_set(data.X_loc.S & data.C) if any(rows[s][t] in Pi for t in T)
    )


def project_PN(data: ProductHypothesisData, P) -> frozenset:
    """{t ∈ T : Π(s, t) ∈ P for some s ∈ C_{S_X}(N)}."""
    L, Pi = data.L, data.L.idx_set(P)
    rows = L.binary_rows
    SC = L.idx_set(data.X_loc.S & data.C)
    return frozenset(L.labels[t] for t in L.idx_set(data.N_loc.S) if any(rows[s][t] in Pi for s in SC))


def build_delta_family(data: ProductHypothesisData) -> DeltaFamily:
    L = data.L
    lattice_idx = subgroups_idx(L, L.idx_set(data.S))
    lattice = [L.label_set(P) for P in lattice_idx]
    lat = set(lattice)
    delta0 = set()
    for Q in sorted(data.X_loc.delta, key=set_key):
        if not Q <= data.C:
            continue
        for R in sorted(data.N_loc.delta, key=set_key):
            QR = product_set(L, Q, R)
            if QR is not None and QR in lat:
                delta0.add(QR)
    sparse = {P for P in lattice if any(D <= P for D in delta0)}
    dX, gamma = data.X_loc.delta, data.N_loc.delta
    plus = {P for P in lattice if project_PX(data, P) in dX and project_PN(data, P) in gamma}
    report = VerificationReport(f"object families on {L.name}")
    missing = first_set(sparse - plus)
    report.add(
        CheckResult(
            "sparse-within-ample",
            missing is None,
            counterexample=missing,
            instances=len(sparse),
            detail="every overgroup of a generating object lies in the ample family",
        )
    )
    return DeltaFamily(frozenset(delta0), frozenset(sparse), frozenset(plus), lattice, report)


def verify_product_localities(
    data: ProductHypothesisData, family: DeltaFamily, max_len: int | None = 4
) -> tuple[Locality, Locality]:
    """(L, Δ, S) and (L, Δ⁺, S) as verified localities.

    Also checks the two facts the construction rests on: the generating
    family is closed under conjugation into S and already describes D(L).
    """
    L = data.L
    extra = VerificationReport("generating family")
    members0 = [L.idx_set(P) for P in family.delta0]
    c = conjugation_closure_counterexample(L, L.idx_set(data.S), members0)
    extra.add(
        CheckResult(
            "generating-conjugation-closed",
            c is None,
            counterexample=None if c is None else [L.label_set(c[0]), L.labels[c[1]]],
            instances=len(L) * len(members0),
            detail="the generating family is closed under conjugation into S",
        )
    )
    extra.add(domain_check(L, members0, max_len, "generating-domain"))
    extra.extend(family.report)
    if not extra.ok:
        raise VerificationError("the generating family does not behave", extra)
    out = []
    for variant, delta in (("sparse", family.delta_sparse), ("ample", family.delta_plus)):
        loc = verify_locality(L, data.p, data.S, delta, max_len, {"variant": variant})
        loc.report.entries[:0] = extra.entries
        out.append(loc)
    return out[0], out[1]


@dataclass
class Classification:
    """Outcome of recognising an internal product of localities."""

    kind: str
    sparse: bool
    ample: bool
    report: VerificationReport
    family: DeltaFamily | None = None

    def __bool__(self) -> bool:
        return self.kind != "not-a-product"


def classify_internal_product(
    ambient: Locality, X_loc: Locality, N_loc: Locality, max_len: int | None = 4
) -> Classification:
    """``not-a-product``, ``general``, ``sparse``, ``ample`` or, when the two
    extreme families coincide, ``sparse-and-ample``."""
    L = ambient.L
    report = VerificationReport(f"internal product of localities on {L.name}")

    def fail():
        return Classification("not-a-product", False, False, report)

    for name, loc in (("actor-sublocality", X_loc), ("normal-sublocality", N_loc)):
        sub = sublocality_report(ambient, loc.L.labels, loc.delta, loc.S, max_len)
        report.add(CheckResult(name, sub.ok, counterexample=None if sub.ok else sub.failures()[0].check))
    if not report.ok:
        return fail()
    wit = check_internal_semidirect(L, X_loc.L.labels, N_loc.L.labels, max_len=max_len or 4)
    report.extend(wit.report)
    if not wit:
        return fail()
    try:
        data = build_hypothesis(wit, X_loc, N_loc)
    except HypothesisError as exc:
        report.add(CheckResult(exc.bullet, False, counterexample=exc.counterexample, detail=str(exc)))
        return fail()
    report.extend(data.report)
    same_S = data.S == ambient.S
    report.add(CheckResult("S-product", same_S, detail="S = S_X T"))
    if not same_S:
        return fail()
    family = build_delta_family(data)
    report.extend(family.report)
    dstar = ambient.delta
    low = first_set(family.delta_sparse - dstar)
    high = first_set(dstar - family.delta_plus)
    report.add(CheckResult("contains-sparse", low is None, counterexample=low, detail="Δ ⊆ Δ*"))
    report.add(CheckResult("within-ample", high is None, counterexample=high, detail="Δ* ⊆ Δ⁺"))
    if low is not None or high is not None:
        return Classification("not-a-product", False, False, report, family)
    sparse, ample = dstar == family.delta_sparse, dstar == family.delta_plus
    kind = {(True, True): "sparse-and-ample", (True, False): "sparse", (False, True): "ample"}.get(
        (sparse, ample), "general"
    )
    return Classification(kind, sparse, ample, report, family)


# -- actions and external products ------------------------------------


def locality_action_report(X_loc: Locality, N_loc: Locality, phi: ActionHom) -> VerificationReport:
    report = VerificationReport(f"locality action {X_loc.name} on {N_loc.name}")
    N = N_loc.L
    members = {N.idx_set(R) for R in N_loc.delta}
    bad = None
    for x, row in zip(phi.actor.labels, phi.act_rows):
        for R in sorted(members, key=lambda R: (len(R), sorted(R))):
            if frozenset(row[r] for r in R) not in members:
                bad = [N.label_set(R), x]
                break
        if bad:
            break
    report.add(CheckResult("gamma-invariance", bad is None, counterexample=bad, detail="R^(x^φ) ∈ Γ"))
    C = fixed_centralizer(phi, phi.actor.labels, N.labels)
    Q = star_counterexample(X_loc.delta, C)
    report.add(CheckResult("star", Q is None, counterexample=Q, detail="Q ∩ C_X^φ(N) ∈ Δ_X"))
    return report


def check_locality_action(X_loc: Locality, N_loc: Locality, phi: ActionHom) -> bool:
    return locality_action_report(X_loc, N_loc, phi).ok


class ProductLocality(Locality):
    """A locality built as a semidirect product, with its construction data."""

    def __init__(self, base: Locality, **data):
        super().__init__(base.L, base.p, base.S, base.delta, base.report, base.info)
        self.X_loc: Locality = data.get("X_loc")
        self.N_loc: Locality = data.get("N_loc")
        self.action: ActionHom = data.get("action")
        self.variant: str = data.get("variant")
        self.hat_X: Locality = data.get("hat_X")
        self.hat_N: Locality = data.get("hat_N")
        self.families: dict = data.get("families", {})
        self.classification: Classification | None = data.get("classification")


def external_families(E: PartialGroup, X_loc: Locality, N_loc: Locality, phi: ActionHom):
    """(lattice, Δ_φ, Δ⁺_φ) on S = (S_X, T) in the external product E."""
    S = frozenset((s, t) for s in X_loc.S for t in N_loc.S)
    lattice = [E.label_set(P) for P in subgroups_idx(E, E.idx_set(S))]
    CS = fixed_centralizer(phi, X_loc.S, N_loc.L.labels)
    pairs = [frozenset((q, r) for q in Q for r in R) for Q in X_loc.delta for R in N_loc.delta]
    lattice.sort(key=set_key)
    sparse = frozenset(P for P in lattice if any(QR <= P for QR in pairs))
    plus = set()
    for P in lattice:
        px = frozenset(s for s, t in P if s in CS)
        pn = frozenset(t for s, t in P if s in CS)
        if px in X_loc.delta and pn in N_loc.delta:
            plus.add(P)
    return S, lattice, sparse, frozenset(plus)


def external_semidirect_locality(
    X_loc: Locality,
    N_loc: Locality,
    phi: ActionHom,
    variant="sparse",
    max_len: int | None = 4,
    name: str | None = None,
) -> ProductLocality:
    """The sparse, ample or custom external semidirect product of localities.

    ``variant`` is "sparse", "ample" or an explicit set of subgroups (as sets
    of pair labels) lying between the two.
    """
    if X_loc.p != N_loc.p:
        raise InvalidInputError("the two localities are at different primes")
    act_rep = locality_action_report(X_loc, N_loc, phi)
    if not act_rep.ok:
        bad = act_rep.failures()[0]
        raise HypothesisError(bad.check, "the locality does not act on the other locality", bad.counterexample)
    E = external_semidirect(X_loc.L, N_loc.L, phi, name=name, max_len=max_len)
    S, lattice, sparse, plus = external_families(E, X_loc, N_loc, phi)
    pre = VerificationReport("external families")
    Si = E.idx_set(S)
    lat_idx = [E.idx_set(P) for P in lattice]
    for label, fam in (("sparse", sparse), ("ample", plus)):
        mem = [E.idx_set(P) for P in sorted(fam, key=set_key)]
        c = conjugation_closure_counterexample(E, Si, mem)
        pre.add(
            CheckResult(
                f"{label}-conjugation-closed",
                c is None,
                counterexample=None if c is None else [E.label_set(c[0]), E.labels[c[1]]],
            )
        )
        c = overgroup_closure_counterexample(lat_idx, mem)
        pre.add(
            CheckResult(
                f"{label}-overgroup-closed",
                c is None,
                counterexample=None if c is None else [E.label_set(c[0]), E.label_set(c[1])],
            )
        )
    if variant == "sparse":
        dstar, vname = sparse, "sparse"
    elif variant == "ample":
        dstar, vname = plus, "ample"
    else:
        dstar, vname = frozenset(frozenset(P) for P in variant), "custom"
        low = first_set(sparse - dstar)
        high = first_set(dstar - plus)
        pre.add(CheckResult("custom-between", low is None and high is None, counterexample=low or high))
    if not pre.ok:
        raise VerificationError("the requested object family is not admissible", pre)
    base = verify_locality(E, X_loc.p, S, dstar, max_len, {"variant": vname})
    base.report.entries[:0] = pre.entries

    # canonical copies of the factors as sublocalities
    hx, hn = canonical_parts(E)
    eX, eN = X_loc.L.identity, N_loc.L.identity
    hat_X = verify_locality(
        E.restrict(hx, name=f"{E.name}:X"),
        X_loc.p,
        frozenset((s, eN) for s in X_loc.S),
        [frozenset((q, eN) for q in Q) for Q in X_loc.delta],
        max_len,
    )
    hat_N = verify_locality(
        E.restrict(hn, name=f"{E.name}:N"),
        N_loc.p,
        frozenset((eX, t) for t in N_loc.S),
        [frozenset((eX, r) for r in R) for R in N_loc.delta],
        max_len,
    )
    cls = classify_internal_product(base, hat_X, hat_N, max_len)
    agrees = cls.kind != "not-a-product" and (
        (vname == "sparse" and cls.sparse) or (vname == "ample" and cls.ample) or vname == "custom"
    )
    base.report.add(
        CheckResult(
            "classification",
            agrees,
            counterexample=None if agrees else cls.kind,
            detail=f"internal classification: {cls.kind}",
        )
    )
    if cls.family is not None:
        for label, ext, internal in (
            ("sparse-family-matches", sparse, cls.family.delta_sparse),
            ("ample-family-matches", plus, cls.family.delta_plus),
        ):
            diff = first_set(ext ^ internal)
            base.report.add(CheckResult(label, diff is None, counterexample=diff))
    if not base.report.ok:
        raise VerificationError("external product of localities fails its checks", base.report)
    return ProductLocality(
        base,
        X_loc=X_loc,
        N_loc=N_loc,
        action=phi,
        variant=vname,
        hat_X=hat_X,
        hat_N=hat_N,
        families={"sparse": sparse, "ample": plus, "lattice": lattice},
        classification=cls,
    )


def group_locality(X: PartialGroup, p: int, max_len: int | None = 4) -> Locality:
    """(X, all subgroups of a Sylow p-subgroup S_X, S_X) for a group X."""
    SX = sylow_subgroup(X, p)
    lattice = [X.label_set(P) for P in subgroups_idx(X, X.idx_set(SX))]
    return verify_locality(X, p, SX, lattice, max_len)


def group_semidirect_locality(
    X: PartialGroup, phi: ActionHom, N_loc: Locality, variant="sparse", max_len: int | None = 4, name=None
) -> ProductLocality:
    """External product of a group X (with all subgroups of a Sylow subgroup
    as objects) with a locality."""
    X_loc = group_locality(X, N_loc.p, max_len)
    return external_semidirect_locality(X_loc, N_loc, phi, variant, max_len, name)


def strongly_closed_counterexample(loc: Locality, S0) -> list | None:
    """First (x, f) with x ∈ S0 ∩ S_f and x^f ∉ S0."""
    L = loc.L
    S0i = L.idx_set(S0)
    for f in range(len(L)):
        row = L.conj_rows[f]
        for x in sorted(S0i & _s_f_idx(L, loc.S_idx, f)):
            if row[x] not in S0i:
                return [L.labels[x], L.labels[f]]
    return None


def strongly_closed_check(loc: Locality, S0) -> bool:
    """For x ∈ S0 and f with x ∈ S_f, x^f ∈ S0."""
    if not frozenset(S0) <= loc.S:
        raise InvalidInputError("S0 must be a subgroup of S")
    return strongly_closed_counterexample(loc, S0) is None

