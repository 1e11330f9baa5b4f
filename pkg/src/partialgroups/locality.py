"""Localities: a partial group with a maximal p-subgroup S and an object set Δ.

Verification covers three conditions.  S is maximal among p-subgroups,
decided exactly by closures.  The domain equals the Δ-chain domain, decided
by walking both automata together.  Δ is closed under conjugation into S and
under overgroups in S, which is a finite scan.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from functools import cached_property

from .errors import (
    ConjugationUndefinedError,
    FixtureInvalidError,
    InvalidInputError,
    VerificationError,
)
from .groups import closure_idx, is_p_power, is_prime, subgroups_idx
from .morphisms import PartialGroupMap
from .oracles import Automaton, DeltaChain
from .partial_group import PartialGroup, _conj_set_idx, is_partial_subgroup, subgroup_check
from .report import CheckResult, VerificationReport


class Locality:
    """A verified triple (L, Δ, S) at the prime p.

    ``S`` is a frozenset of labels and ``delta`` a frozenset of frozensets.
    ``info`` carries construction details (stages of a closure, variants).
    """

    def __init__(self, L: PartialGroup, p: int, S, delta, report: VerificationReport, info=None):
        self.L, self.p = L, p
        self.S = frozenset(S)
        self.delta = frozenset(frozenset(P) for P in delta)
        self.report = report
        self.info = dict(info or {})

    @property
    def name(self) -> str:
        return self.L.name

    def __len__(self) -> int:
        return len(self.L)

    def __repr__(self) -> str:
        return f"Locality({self.L.name!r}, p={self.p}, |S|={len(self.S)}, |Δ|={len(self.delta)})"

    @cached_property
    def S_idx(self) -> frozenset[int]:
        return self.L.idx_set(self.S)

    @cached_property
    def delta_idx(self) -> list[frozenset[int]]:
        return sorted((self.L.idx_set(P) for P in self.delta), key=lambda P: (len(P), sorted(P)))

    @cached_property
    def lattice_idx(self) -> list[frozenset[int]]:
        """All subgroups of S as index sets, smallest first."""
        return subgroups_idx(self.L, self.S_idx)

    @property
    def lattice(self) -> list[frozenset]:
        return [self.L.label_set(P) for P in self.lattice_idx]

    @cached_property
    def delta_oracle(self) -> DeltaChain:
        return delta_chain(self.L, self.delta_idx)


# -- Δ-chains -----------------------------------------------------------


def delta_chain(L: PartialGroup, members: Iterable[frozenset[int]]) -> DeltaChain:
    """The D(L)_Δ oracle for subgroups given as index sets."""
    conj = L.conj_rows
    return DeltaChain.from_conjugation(len(L), list(members), lambda g, x: conj[g][x])


def d_delta_membership(loc: Locality, w, delta=None) -> tuple[bool, list | None]:
    """Whether w ∈ D(L)_Δ, with a witness chain P_0, ..., P_k on success.

    ``delta`` overrides the locality's object set.
    """
    L = loc.L
    word = L.idx_word(w)
    oracle = loc.delta_oracle if delta is None else delta_chain(L, [L.idx_set(P) for P in delta])
    chain = oracle.witness(word)
    if chain is None:
        return False, None
    return True, [L.label_set(oracle.members[i]) for i in chain]


def compare_domains(A: Automaton, B: Automaton, max_len: int | None):
    """Walk two automata over the same alphabet together.

    Returns ``(cex, direction, configs, saturated)`` where ``cex`` is the
    shortest word in exactly one language (``direction`` "first-only" or
    "second-only") and ``saturated`` means every length was covered.
    """
    ra, rb, ua, ub = A.rows, B.rows, A.unknown_list, B.unknown_list
    n = A.n_letters
    parent = {(0, 0): None}
    queue = deque([((0, 0), 0)])
    saturated = True
    while queue:
        conf, depth = queue.popleft()
        if max_len is not None and depth >= max_len:
            saturated = False
            continue
        sa, sb = conf
        for g in range(n):
            ta, tb = ra[sa][g], rb[sb][g]
            if (ta < 0) != (tb < 0):
                word = [g]
                c = conf
                while parent[c] is not None:
                    c, h = parent[c]
                    word.append(h)
                return word[::-1], ("first-only" if tb < 0 else "second-only"), len(parent), True
            if ta < 0:
                continue
            if ua[ta] or ub[tb]:
                saturated = False
                continue
            nxt = (ta, tb)
            if nxt not in parent:
                parent[nxt] = (conf, g)
                queue.append((nxt, depth + 1))
    return None, "", len(parent), saturated


def domain_check(L: PartialGroup, members: list[frozenset[int]], max_len: int | None, label: str) -> CheckResult:
    """D(L) = D(L)_Δ for words up to ``max_len`` (both inclusions)."""
    cex, direction, configs, saturated = compare_domains(L.automaton, delta_chain(L, members).compile(), max_len)
    if cex is None:
        detail = "both inclusions"
        if saturated:
            detail += "; the joint walk saturated, so every length is covered"
    else:
        detail = "word in D(L) without a chain" if direction == "first-only" else "chain exists but word not in D(L)"
    return CheckResult(
        label,
        cex is None,
        bound=max_len,
        counterexample=None if cex is None else L.label_word(cex),
        exhaustive=saturated and cex is None,
        instances=configs,
        detail=detail,
    )


# -- S_f and closure scans --------------------------------------------


def _s_f_idx(L: PartialGroup, S: frozenset[int], f: int) -> frozenset[int]:
    row = L.conj_rows[f]
    return frozenset(x for x in S if row[x] >= 0 and row[x] in S)


def s_f(loc: Locality, f) -> frozenset:
    """S_f = {x ∈ S : x ∈ D(f) and x^f ∈ S}."""
    return loc.L.label_set(_s_f_idx(loc.L, loc.S_idx, loc.L.idx(f)))


def conjugation_closure_counterexample(L: PartialGroup, S: frozenset[int], members) -> list | None:
    """First (P, f) with P ⊆ S_f and P^f outside ``members``."""
    mem = set(members)
    for f in range(len(L)):
        sf = _s_f_idx(L, S, f)
        for P in members:
            if P <= sf and _conj_set_idx(L, P, f) not in mem:
                return [P, f]
    return None


def overgroup_closure_counterexample(lattice, members) -> list | None:
    """First (P, Q) with P a member, P ⊆ Q ≤ S and Q not a member."""
    mem = set(members)
    for P in members:
        for Q in lattice:
            if P <= Q and Q not in mem:
                return [P, Q]
    return None


def overgroup_closure(lattice, members) -> list[frozenset[int]]:
    return [Q for Q in lattice if any(P <= Q for P in members)]


# -- maximality --------------------------------------------------------


def maximal_p_subgroup_check(L: PartialGroup, S, p: int | None = None) -> bool:
    """True iff no p-subgroup of L properly contains S."""
    Si = L.idx_set(S)
    if p is None:
        p = _prime_of(len(Si))
    return _maximal_idx(L, Si, p) is None


def _maximal_idx(L, Si: frozenset[int], p: int) -> int | None:
    """An element f ∉ S such that S ∪ {f} lies in a p-subgroup, or None.

    Any subgroup containing S and f contains the closure of S ∪ {f} under
    pair products and inversion.  Either that closure has an undefined pair,
    or it is not a subgroup, or its order is not a power of p, or it is the
    witness itself.
    """
    for f in range(len(L)):
        if f in Si:
            continue
        Q = closure_idx(L, Si | {f})
        if Q is None or not is_p_power(len(Q), p):
            continue
        if subgroup_check(L, L.label_set(Q))[0]:
            return f
    return None


def _prime_of(n: int) -> int:
    for q in range(2, n + 1):
        if n % q == 0:
            if not is_p_power(n, q):
                raise InvalidInputError(f"{n} is not a prime power")
            return q
    raise InvalidInputError("the prime cannot be inferred from a trivial subgroup")


# -- verification ------------------------------------------------------


def check_locality(L: PartialGroup, p: int, S, delta, max_len: int | None = 4) -> VerificationReport:
    """All locality conditions, as a report (never raises on failure)."""
    report = VerificationReport(f"locality {L.name}")
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    Si = L.idx_set(S)
    holds, exact, cex = subgroup_check(L, S) if Si else (False, True, None)
    p_ok = holds and is_p_power(len(Si), p)
    report.add(
        CheckResult(
            "p-subgroup",
            p_ok,
            bound=None if exact else max_len,
            counterexample=cex,
            instances=len(Si),
            detail=f"S is a subgroup of order {len(Si)}",
        )
    )
    if not p_ok:
        return report
    lattice = subgroups_idx(L, Si)
    lat_set = set(lattice)
    members = sorted((L.idx_set(P) for P in delta), key=lambda P: (len(P), sorted(P)))
    bad = next((P for P in members if P not in lat_set), None)
    report.add(
        CheckResult(
            "objects",
            bool(members) and bad is None,
            counterexample=None if bad is None else L.label_set(bad),
            instances=len(members),
            detail="Δ is a non-empty set of subgroups of S",
        )
    )
    if not members or bad is not None:
        return report
    f = _maximal_idx(L, Si, p)
    report.add(
        CheckResult(
            "maximal",
            f is None,
            counterexample=None if f is None else L.labels[f],
            instances=len(L) - len(Si),
            detail="no p-subgroup properly contains S",
        )
    )
    report.add(domain_check(L, members, max_len, "domain"))
    c = conjugation_closure_counterexample(L, Si, members)
    report.add(
        CheckResult(
            "conjugation-closed",
            c is None,
            counterexample=None if c is None else [L.label_set(c[0]), L.labels[c[1]]],
            instances=len(L) * len(members),
            detail="P ⊆ S_f implies P^f ∈ Δ",
        )
    )
    c = overgroup_closure_counterexample(lattice, members)
    report.add(
        CheckResult(
            "overgroup-closed",
            c is None,
            counterexample=None if c is None else [L.label_set(c[0]), L.label_set(c[1])],
            instances=len(members) * len(lattice),
            detail="P ∈ Δ and P ≤ Q ≤ S imply Q ∈ Δ",
        )
    )
    return report


def verify_locality(L: PartialGroup, p: int, S, delta, max_len: int | None = 4, info=None) -> Locality:
    """Verify (L, Δ, S) and return the :class:`Locality`; raises
    :class:`VerificationError` carrying the report on failure."""
    report = check_locality(L, p, S, delta, max_len)
    if not report.ok:
        bad = report.failures()[0]
        raise VerificationError(f"{L.name} is not a locality: {bad.check} fails", report)
    return Locality(L, p, S, delta, report, info)


# -- constructions -----------------------------------------------------


def subnormal_stages(
    L: PartialGroup, lattice: list[frozenset[int]], delta0: list[frozenset[int]]
) -> list[list[frozenset[int]]]:
    """Δ_0, Δ_1, ... where Δ_i adds subgroups P of S with some Q ∈ Δ_{i-1}
    normal in P; stops when a stage repeats."""
    stages = [sorted(set(delta0), key=lambda P: (len(P), sorted(P)))]
    while True:
        prev = set(stages[-1])
        nxt = set(prev)
        for P in lattice:
            if P in nxt:
                continue
            for Q in prev:
                if Q <= P and all(_conj_set_idx(L, Q, g) == Q for g in P):
                    nxt.add(P)
                    break
        if nxt == prev:
            return stages
        stages.append(sorted(nxt, key=lambda P: (len(P), sorted(P))))


def closure_construct(
    L: PartialGroup, p: int, S, delta0, max_len: int | None = 4, name: str | None = None
) -> Locality:
    """The locality (L, Δ, S) with Δ the overgroup closure of Δ_0.

    Preconditions: Δ_0 closed under conjugation into S and D(L) = D(L)_{Δ_0}.
    The subnormal stages are kept in ``info["stages"]``.
    """
    Si = L.idx_set(S)
    members = sorted((L.idx_set(P) for P in delta0), key=lambda P: (len(P), sorted(P)))
    pre = VerificationReport(f"closure construction on {L.name}")
    c = conjugation_closure_counterexample(L, Si, members)
    pre.add(
        CheckResult(
            "conjugation-closed",
            c is None,
            counterexample=None if c is None else [L.label_set(c[0]), L.labels[c[1]]],
            detail="Δ_0 closed under conjugation into S",
        )
    )
    pre.add(domain_check(L, members, max_len, "domain"))
    if not pre.ok:
        raise VerificationError("closure construction preconditions fail", pre)
    lattice = subgroups_idx(L, Si)
    stages = subnormal_stages(L, lattice, members)
    closure = overgroup_closure(lattice, members)
    info = {
        "stages": [[L.label_set(P) for P in st] for st in stages],
        "stages_reach_closure": set(stages[-1]) == set(closure),
        "delta0": [L.label_set(P) for P in members],
    }
    loc = verify_locality(L, p, S, [L.label_set(P) for P in closure], max_len, info)
    loc.report.entries[:0] = pre.entries
    return loc


def normalizer_idx(L: PartialGroup, P: frozenset[int]) -> frozenset[int]:
    return frozenset(g for g in range(len(L)) if _conj_set_idx(L, P, g) == P)


def conjugation_isomorphism(loc: Locality, P, f) -> PartialGroupMap:
    """c_f : N_L(P) -> N_L(P^f), g -> g^f, for P ∈ Δ with P ⊆ S_f and P^f ∈ Δ."""
    L = loc.L
    Pi, fi = L.idx_set(P), L.idx(f)
    if Pi not in set(loc.delta_idx):
        raise InvalidInputError("P must be an object of the locality")
    if not Pi <= _s_f_idx(L, loc.S_idx, fi):
        raise ConjugationUndefinedError(f"P is not contained in S_{f}")
    Qi = _conj_set_idx(L, Pi, fi)
    if Qi not in set(loc.delta_idx):
        raise ConjugationUndefinedError("P^f is not an object of the locality")
    NP, NQ = normalizer_idx(L, Pi), normalizer_idx(L, Qi)
    row = L.conj_rows[fi]
    images = {}
    for g in NP:
        h = row[g]
        if h < 0 or h not in NQ:
            raise VerificationError(
                f"conjugation by {f!r} does not map N_L(P) into N_L(P^f)",
                VerificationReport("conjugation isomorphism"),
            )
        images[g] = h
    if len(set(images.values())) != len(NQ):
        raise VerificationError("conjugation is not a bijection of normalizers", VerificationReport("conjugation isomorphism"))
    b = L.binary_rows
    for g in NP:
        for h in NP:
            gh = b[g][h]
            if gh < 0 or b[images[g]][images[h]] != images[gh]:
                raise VerificationError(
                    "conjugation is not multiplicative on the normalizer",
                    VerificationReport("conjugation isomorphism"),
                )
    src = L.restrict(L.label_set(NP), name=f"N({len(Pi)})")
    dst = L.restrict(L.label_set(NQ), name=f"N({len(Qi)})")
    return PartialGroupMap(src, dst, {L.labels[g]: L.labels[h] for g, h in images.items()})


def locality_from_group(
    G: PartialGroup, p: int, S, delta, max_len: int | None = 4, name: str | None = None
) -> tuple[frozenset, Locality]:
    """The locality on L_Δ = {g ∈ G : S ∩ S^(g⁻¹) contains a member of Δ}.

    The domain is the Δ-chain domain; the result is always passed through
    :func:`verify_locality` and an invalid fixture raises
    :class:`FixtureInvalidError`.
    """
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    Si = G.idx_set(S)
    order = len(G)
    p_part = 1
    while order % p == 0:
        order //= p
        p_part *= p
    if closure_idx(G, Si) != Si or len(Si) != p_part:
        raise FixtureInvalidError(f"S is not a Sylow {p}-subgroup of {G.name}", VerificationReport(G.name))
    members = sorted((G.idx_set(P) for P in delta), key=lambda P: (len(P), sorted(P)))
    lattice = subgroups_idx(G, Si)
    bad = [c for c in (conjugation_closure_counterexample(G, Si, members), overgroup_closure_counterexample(lattice, members)) if c]
    if bad:
        raise FixtureInvalidError("Δ is not closed under conjugation into S and overgroups", VerificationReport(G.name))
    carrier = [g for g in range(len(G)) if any(P <= _s_f_idx(G, Si, g) for P in members)]
    pos = {g: i for i, g in enumerate(carrier)}
    conj = G.conj_rows

    chain = DeltaChain.from_conjugation(len(carrier), members, lambda i, x: conj[carrier[i]][x])
    # chain members are G-indices; restate them in carrier indices
    members_c = [frozenset(pos[x] for x in P) for P in members]
    chain = DeltaChain(len(carrier), members_c, chain.moves)
    binary = [[-1] * len(carrier) for _ in carrier]
    gb = G.binary_rows
    for i, a in enumerate(carrier):
        for j, b in enumerate(carrier):
            if chain.accepts((i, j)):
                binary[i][j] = pos[gb[a][b]]
    L = PartialGroup(
        [G.labels[g] for g in carrier],
        G.identity,
        [pos[G.inv_list[g]] for g in carrier],
        binary,
        chain,
        name=name or f"{G.name}_Δ",
    )
    try:
        loc = verify_locality(L, p, S, delta, max_len, {"group": G.name})
    except VerificationError as exc:
        raise FixtureInvalidError(str(exc), exc.report) from None
    return L.label_set(range(len(L))), loc


def sublocality_report(outer: Locality, H, delta_H, S_H, max_len: int | None = 4) -> VerificationReport:
    L = outer.L
    Hs = frozenset(H)
    report = VerificationReport(f"sublocality of {L.name}")
    if not is_partial_subgroup(L, Hs):
        report.add(CheckResult("partial-subgroup", False, counterexample=sorted(map(str, Hs))[:1]))
        return report
    expected = outer.S & Hs
    report.add(
        CheckResult(
            "S_H",
            frozenset(S_H) == expected,
            counterexample=None if frozenset(S_H) == expected else [frozenset(S_H), expected],
            detail="S_H = S ∩ H",
        )
    )
    sub = L.restrict(Hs, name=f"{L.name}|H")
    report.extend(check_locality(sub, outer.p, S_H, delta_H, max_len))
    return report


def is_sublocality(outer: Locality, H, delta_H, S_H, max_len: int | None = 4) -> bool:
    """(H, Δ_H, S_H) is a locality with S_H = S ∩ H; Δ_H need not lie in Δ."""
    return sublocality_report(outer, H, delta_H, S_H, max_len).ok
