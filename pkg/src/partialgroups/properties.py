"""Property suites: identities that every partial group, internal product,
locality and product of localities must satisfy, checked on concrete data.

Each suite returns a :class:`VerificationReport` with one entry per identity.
A failing entry carries the first counterexample met in a canonical order.
"""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterator

from . import kernels
from .errors import HypothesisError, InvalidInputError
from .groups import closure_idx
from .locality import (
    Locality,
    _maximal_idx,
    _s_f_idx,
    delta_chain,
    domain_check,
    normalizer_idx,
)
from .locality_products import (
    ProductLocality,
    build_delta_family,
    build_hypothesis,
    classify_internal_product,
    product_set,
    project_PN,
    project_PX,
    strongly_closed_counterexample,
)
from .morphisms import ActionHom, PartialGroupMap, fixed_centralizer, homomorphism_counterexample
from .partial_group import PartialGroup, _conj_set_idx, centralizer, is_partial_normal, is_partial_subgroup, subgroup_check
from .report import CheckResult, VerificationReport, set_key
from .semidirect import InternalSDWitness, check_internal_semidirect


class _Tally:
    """Counts instances of one identity and keeps the first failure."""

    __slots__ = ("name", "detail", "instances", "cex")

    def __init__(self, name: str, detail: str):
        self.name, self.detail = name, detail
        self.instances = 0
        self.cex = None

    def __call__(self, ok: bool, cex=None) -> None:
        self.instances += 1
        if not ok and self.cex is None:
            self.cex = cex if cex is not None else "unnamed instance"

    def result(self, bound=None, exhaustive=False) -> CheckResult:
        return CheckResult(
            self.name,
            self.cex is None,
            bound=bound,
            counterexample=self.cex,
            exhaustive=exhaustive and self.cex is None,
            instances=self.instances,
            detail=self.detail,
        )


# -- word enumeration --------------------------------------------------


def domain_words(L: PartialGroup, max_len: int) -> Iterator[tuple[int, ...]]:
    """Every word of length at most ``max_len`` known to lie in D(L)."""
    a = L.automaton
    rows, unknown = a.rows, a.unknown_list
    stack = [((), 0)]
    while stack:
        w, s = stack.pop()
        yield w
        if len(w) == max_len:
            continue
        row = rows[s]
        for g in range(len(L) - 1, -1, -1):
            t = row[g]
            if t >= 0 and not unknown[t]:
                stack.append((w + (g,), t))


def random_domain_words(L: PartialGroup, count: int, max_len: int, seed: int = 0) -> Iterator[tuple[int, ...]]:
    """``count`` words of D(L) drawn by random walks of random length."""
    rng = random.Random(seed)
    a = L.automaton
    rows, unknown = a.rows, a.unknown_list
    live = [[g for g, t in enumerate(row) if t >= 0 and not unknown[t]] for row in rows]
    for _ in range(count):
        target = rng.randint(0, max_len)
        w, s = [], 0
        while len(w) < target and live[s]:
            g = rng.choice(live[s])
            w.append(g)
            s = rows[s][g]
        yield tuple(w)


def _inverse_word(L: PartialGroup, w) -> tuple[int, ...]:
    inv = L.inv_list
    return tuple(inv[g] for g in reversed(w))


# -- partial groups -----------------------------------------------------


IDENTITY_NOTES = {
    "fold": ("split-product", "Π(u∘v) = Π(Π(u), Π(v)) with (Π(u), Π(v)) ∈ D"),
    "cancel": ("cancel-inverse-word", "u⁻¹∘u∘v and u∘v∘v⁻¹ lie in D with products Π(v) and Π(u)"),
    "self-inverse-powers": ("self-inverse-powers", "u = u⁻¹ gives u^k ∈ D and Π(u^k) = Π(Π(u)^k)"),
    "identity-insertion": ("insert-identity", "inserting identities keeps a word in D with the same product"),
    "identity-words": ("identity-words", "words in the identity have product 1"),
    "conjugate-identity-powers": ("conjugate-identity-powers", "(f⁻¹, 1, f)^k ∈ D with product 1"),
    "inverse-word": ("inverse-word", "u⁻¹ ∈ D and Π(u)⁻¹ = Π(u⁻¹)"),
    "cancel-middle": ("remove-cancelling-pair", "u∘v∘v⁻¹∘w ∈ D gives u∘w ∈ D with the same product"),
}


def partial_group_identities(
    L: PartialGroup,
    max_len: int = 4,
    samples: int | None = None,
    seed: int = 0,
    powers: int = 3,
    backend: str | None = None,
) -> VerificationReport:
    """The elementary consequences of the axioms, on every word of D(L) up to
    ``max_len`` (or on ``samples`` seeded random words of D(L))."""
    words = None if samples is None else list(random_domain_words(L, samples, max_len, seed))
    res = kernels.lemma_sweep(L, max_len, words, powers, backend)
    report = VerificationReport(f"partial group identities on {L.name}")
    for key in kernels._kernels_py.LEMMAS:
        inst, skipped, cex, aux = res[key]
        name, detail = IDENTITY_NOTES[key]
        if key == "identity-words":
            bound, exhaustive = max_len, True
        elif key == "conjugate-identity-powers":
            bound, exhaustive = 3 * powers, False
        else:
            bound, exhaustive = max_len, samples is None
        report.add(
            CheckResult(
                name,
                cex is None,
                bound=bound,
                counterexample=None if cex is None else [L.label_word(cex), list(aux)],
                exhaustive=exhaustive and cex is None and not skipped,
                instances=inst,
                skipped=skipped,
                detail=detail,
            )
        )
    return report


def conjugation_inverse_report(L: PartialGroup) -> VerificationReport:
    """c_g is a bijection D(g) -> D(g⁻¹) whose inverse is c_{g⁻¹}."""
    conj, inv = L.conj_rows, L.inv_list
    t = _Tally("conjugation-inverse", "c_g and c_{g⁻¹} are mutually inverse between D(g) and D(g⁻¹)")
    for g in range(len(L)):
        row, back = conj[g], conj[inv[g]]
        dom = {x for x in range(len(L)) if row[x] >= 0}
        codom = {x for x in range(len(L)) if back[x] >= 0}
        t({row[x] for x in dom} == codom, [L.labels[g]])
        for x in sorted(dom):
            t(back[row[x]] == x, [L.labels[g], L.labels[x]])
    report = VerificationReport(f"conjugation maps of {L.name}")
    report.add(t.result(None, True))
    return report


# -- homomorphisms and actions ------------------------------------------


def homomorphism_report(phi: PartialGroupMap, max_len: int | None = 4) -> VerificationReport:
    """Inverses and the identity are preserved, and so are defined products."""
    A, B = phi.source, phi.target
    img = phi.images
    t_inv = _Tally("preserves-inverses", "(g⁻¹)^φ = (g^φ)⁻¹")
    for g in range(len(A)):
        t_inv(img[A.inv_list[g]] == B.inv_list[img[g]], [A.labels[g]])
    t_one = _Tally("preserves-identity", "1^φ = 1'")
    t_one(img[A.e] == B.e, [A.identity])
    cex, reason, exact = homomorphism_counterexample(phi, max_len)
    report = VerificationReport(f"homomorphism {A.name} -> {B.name}")
    report.add(t_inv.result(None, True))
    report.add(t_one.result(None, True))
    report.add(
        CheckResult(
            "preserves-products",
            cex is None,
            bound=None if exact else max_len,
            counterexample=cex,
            exhaustive=exact and cex is None,
            detail=reason or "words of D map into D with Π(w)^φ = Π'(w^φ)",
        )
    )
    return report


def action_kernel_report(phi: ActionHom) -> VerificationReport:
    """The elements acting trivially form a partial normal subgroup."""
    X = phi.actor
    C = fixed_centralizer(phi, X.labels, phi.target.labels)
    report = VerificationReport(f"kernel of {phi!r}")
    ok = is_partial_normal(X, C)
    report.add(
        CheckResult("kernel-normal", ok, counterexample=None if ok else sorted(C, key=str), instances=len(X))
    )
    return report


# -- internal semidirect products ---------------------------------------


def _cyclic_candidates(L: PartialGroup, part: frozenset[int]) -> list[frozenset[int]]:
    """The trivial subgroup, ``part`` itself and every subgroup of L generated
    by one element of ``part``."""
    out = {frozenset([L.e]), frozenset(part)}
    for g in part:
        c = closure_idx(L, [g])
        if c is not None and c <= part:
            out.add(c)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def semidirect_structure_report(witness: InternalSDWitness) -> VerificationReport:
    """Consequences of recognising L as the internal product of X with N."""
    L = witness.ambient
    X, N = L.idx_set(witness.part_X), L.idx_set(witness.part_N)
    b, inv, conj, e = L.binary_rows, L.inv_list, L.conj_rows, L.e
    lab = L.labels

    t_pairs = _Tally("mixed-pairs-defined", "(x, n) and (n, x) lie in D")
    t_inv = _Tally("inverse-of-product", "Π(x, n)⁻¹ = Π(x⁻¹, (n⁻¹)^(x⁻¹))")
    t_swap = _Tally("move-past-actor", "Π(n, x) = Π(x, n^x)")
    for x in sorted(X):
        for n in sorted(N):
            t_pairs(b[x][n] >= 0 and b[n][x] >= 0, [lab[x], lab[n]])
            xn = b[x][n]
            if xn < 0:
                continue
            xi = inv[x]
            twisted = conj[xi][inv[n]]
            t_inv(twisted >= 0 and b[xi][twisted] == inv[xn], [lab[x], lab[n]])
            nx = b[n][x]
            nconj = conj[x][n]
            t_swap(nx >= 0 and nconj >= 0 and b[x][nconj] == nx, [lab[x], lab[n]])

    t_cover = _Tally("product-decomposition", "L = XN and X ∩ N = 1")
    covered = {b[x][n] for x in X for n in N if b[x][n] >= 0}
    t_cover(covered == set(range(len(L))), "L ≠ XN")
    t_cover(X & N == {e}, sorted(L.label_set(X & N), key=str))

    t_normal = _Tally("normal-part", "N is a partial normal subgroup of L")
    t_normal(is_partial_normal(L, witness.part_N), "N")

    C = centralizer(L, witness.part_X, witness.part_N)
    t_cnx = _Tally("centralizer-normal-in-actor", "C_X(N) is a partial normal subgroup of X")
    t_cnx(is_partial_normal(witness.X, C), sorted(C, key=str))
    t_cnl = _Tally("centralizer-products-normal", "C_X(N)M is partial normal in L for M = 1 and M = N")
    for M, name in ((frozenset([L.identity]), "1"), (witness.part_N, "N")):
        CM = product_set(L, C, M)
        t_cnl(CM is not None and is_partial_normal(L, CM), name)

    t_sub = _Tally("normalised-products", "Y ⊆ N_X(M) makes YM a partial subgroup")
    Ci = L.idx_set(C)
    for Y in _cyclic_candidates(L, X) + ([Ci] if Ci else []):
        for M in _cyclic_candidates(L, N):
            if not all(_conj_set_idx(L, M, y) == M for y in Y):
                continue
            YM = product_set(L, L.label_set(Y), L.label_set(M))
            t_sub(
                YM is not None and is_partial_subgroup(L, YM),
                [L.label_set(Y), L.label_set(M)],
            )

    report = VerificationReport(f"internal product structure of {L.name}")
    for t in (t_pairs, t_inv, t_swap, t_cover, t_normal, t_cnx, t_cnl, t_sub):
        report.add(t.result(None, True))
    return report


def conjugation_calculus_report(witness: InternalSDWitness) -> VerificationReport:
    """Conjugation by xn, nx and n^x in terms of the two parts, over every
    x, y ∈ X with y centralising N and every m, n ∈ N."""
    L = witness.ambient
    X, N = sorted(L.idx_set(witness.part_X)), sorted(L.idx_set(witness.part_N))
    b, inv, conj, lab = L.binary_rows, L.inv_list, L.conj_rows, L.labels
    C = sorted(L.idx_set(centralizer(L, witness.part_X, witness.part_N)))

    t_xn = _Tally("conjugate-by-xn", "ym ∈ D(xn) iff y ∈ D(x) and m^x ∈ D(n); then (ym)^(xn) = y^x (m^x)^n")
    t_nx = _Tally("conjugate-by-nx", "ym ∈ D(nx) iff y ∈ D(x) and m ∈ D(n); then (ym)^(nx) = y^x (m^n)^x")
    t_a = _Tally("element-by-xn", "m ∈ D(xn) iff m^x ∈ D(n); then (m^x)^n = m^(xn)")
    t_b = _Tally("element-by-nx", "m ∈ D(n) iff m ∈ D(nx); then (m^n)^x = m^(nx)")
    t_c = _Tally("element-by-twisted", "m^(x⁻¹) ∈ D(n) iff m ∈ D(n^x); then m^(n^x) = ((m^(x⁻¹))^n)^x")

    for x in X:
        cx = conj[x]
        xi = inv[x]
        for n in N:
            xn, nx = b[x][n], b[n][x]
            nX = cx[n]
            cxn, cnx, cn = conj[xn], conj[nx], conj[n]
            for m in N:
                mx = cx[m]
                # identities involving one element of N
                lhs = cxn[m] >= 0
                rhs = cn[mx] >= 0
                t_a(lhs == rhs and (not lhs or cn[mx] == cxn[m]), [lab[x], lab[n], lab[m]])
                lhs = cn[m] >= 0
                rhs = cnx[m] >= 0
                t_b(lhs == rhs and (not lhs or cx[cn[m]] == cnx[m]), [lab[x], lab[n], lab[m]])
                mxi = conj[xi][m]
                lhs = mxi >= 0 and cn[mxi] >= 0
                rhs = conj[nX][m] >= 0
                t_c(
                    lhs == rhs and (not lhs or conj[nX][m] == cx[cn[mxi]]),
                    [lab[x], lab[n], lab[m]],
                )
                for y in C:
                    g = b[y][m]
                    yx = cx[y]
                    # by xn
                    lhs = cxn[g] >= 0
                    rhs = yx >= 0 and cn[mx] >= 0
                    same = lhs == rhs
                    if same and lhs:
                        same = cxn[g] == b[yx][cn[mx]]
                    t_xn(same, [lab[x], lab[y], lab[m], lab[n]])
                    # by nx
                    lhs = cnx[g] >= 0
                    rhs = yx >= 0 and cn[m] >= 0
                    same = lhs == rhs
                    if same and lhs:
                        same = cnx[g] == b[yx][cx[cn[m]]]
                    t_nx(same, [lab[x], lab[y], lab[m], lab[n]])

    report = VerificationReport(f"conjugation calculus in {L.name}")
    for t in (t_xn, t_nx, t_a, t_b, t_c):
        report.add(t.result(None, True))
    return report


def external_split_report(E: PartialGroup, phi: ActionHom, max_len: int = 3) -> VerificationReport:
    """How the splitting w -> (w_X, w_N) of an external product interacts
    with concatenation and inversion, on every word up to ``max_len``."""
    X, N = phi.actor, phi.target
    nN = len(N)
    act = phi.act_rows
    lab = E.labels

    def parts(w):
        xs = tuple(g // nN for g in w)
        fs = tuple(g % nN for g in w)
        if not X.defined(xs):
            return xs, None
        wn = tuple(act[X.fold(xs[i + 1 :])][f] for i, f in enumerate(fs))
        return xs, wn

    t_cat = _Tally("split-concatenation", "(u∘v)_X = u_X∘v_X and (u∘v)_N = u_N^(Π(v_X)) ∘ v_N")
    t_inv = _Tally("split-inversion", "(u⁻¹)_X = (u_X)⁻¹ and (u⁻¹∘u)_N = (u_N)⁻¹ ∘ u_N")
    letters = range(len(E))
    frontier = [()]
    for _ in range(max_len + 1):
        nxt = []
        for w in frontier:
            wx, wn = parts(w)
            for i in range(len(w) + 1):
                u, v = w[:i], w[i:]
                ux, un = parts(u)
                vx, vn = parts(v)
                ok = wx == ux + vx
                if ok and wn is not None:
                    y = X.fold(vx)
                    ok = un is not None and vn is not None and wn == tuple(act[y][f] for f in un) + vn
                t_cat(ok, [[lab[g] for g in u], [lab[g] for g in v]])
            ui = _inverse_word(E, w)
            uix, _ = parts(ui)
            ok = uix == _inverse_word(X, wx)
            both = ui + w
            bx, bn = parts(both)
            if ok and bn is not None:
                ok = wn is not None and bn == _inverse_word(N, wn) + wn
            t_inv(ok, [lab[g] for g in w])
            if len(w) < max_len:
                nxt.extend(w + (g,) for g in letters)
        frontier = nxt
    report = VerificationReport(f"splitting words of {E.name}")
    report.add(t_cat.result(max_len, True))
    report.add(t_inv.result(max_len, True))
    return report


# -- localities -----------------------------------------------------------


def locality_structure_report(loc: Locality, samples: int = 200, max_len: int = 3, seed: int = 0) -> VerificationReport:
    """Normalisers of objects are subgroups, conjugation between them is an
    isomorphism, conjugation along a chain composes, and every S_f and
    every P^f with P ≤ S_f is a subgroup."""
    L = loc.L
    b, conj, lab = L.binary_rows, L.conj_rows, L.labels
    members = loc.delta_idx
    mem = set(members)

    t_norm = _Tally("normalisers-are-subgroups", "N_L(P) is a subgroup for every object P")
    norms = {}
    for P in members:
        NP = normalizer_idx(L, P)
        norms[P] = NP
        holds, _, cex = subgroup_check(L, L.label_set(NP))
        t_norm(holds, [L.label_set(P), cex])

    t_iso = _Tally("object-conjugation-isomorphism", "c_f maps N_L(P) isomorphically onto N_L(P^f)")
    for f in range(len(L)):
        sf = _s_f_idx(L, loc.S_idx, f)
        row = conj[f]
        for P in members:
            if not P <= sf:
                continue
            Pf = _conj_set_idx(L, P, f)
            if Pf not in mem:
                continue
            NP, NPf = norms[P], norms[Pf]
            images = [row[x] for x in sorted(NP)]
            ok = all(y >= 0 for y in images) and set(images) == set(NPf)
            if ok:
                for x in NP:
                    for y in NP:
                        if row[b[x][y]] != b[row[x]][row[y]]:
                            ok = False
                            break
                    if not ok:
                        break
            t_iso(ok, [L.label_set(P), lab[f]])

    t_chain = _Tally("chain-composite", "c_Π(w) = c_f1 ∘ ... ∘ c_fn on N_L(P_0) along a chain")
    oracle = loc.delta_oracle
    for w in random_domain_words(L, samples, max_len, seed):
        chain = oracle.witness(w)
        if chain is None:
            t_chain(False, [L.label_word(w), "no chain"])
            continue
        P0 = oracle.members[chain[0]]
        pw = L.fold(w)
        ok = True
        for x in norms.get(P0, normalizer_idx(L, P0)):
            y = x
            for g in w:
                y = conj[g][y]
                if y < 0:
                    break
            if y < 0 or conj[pw][x] != y:
                ok = False
                break
        t_chain(ok, L.label_word(w))

    t_sf = _Tally("conjugates-are-subgroups", "S_f is a subgroup and so is P^f for P ≤ S_f")
    lattice = loc.lattice_idx
    for f in range(len(L)):
        sf = _s_f_idx(L, loc.S_idx, f)
        t_sf(closure_idx(L, sf) == sf, [lab[f]])
        for P in lattice:
            if P <= sf:
                Pf = _conj_set_idx(L, P, f)
                t_sf(Pf is not None and closure_idx(L, Pf) == Pf, [L.label_set(P), lab[f]])

    report = VerificationReport(f"locality structure of {L.name}")
    report.add(t_norm.result(None, True))
    report.add(t_iso.result(None, True))
    report.add(t_chain.result(max_len, False))
    report.add(t_sf.result(None, True))
    return report


def _inclusion_counterexample(A, B, max_len: int | None):
    """Shortest word accepted by A and rejected by B (None if none up to
    max_len), and the number of joint configurations visited."""
    ra, rb, ua, ub = A.rows, B.rows, A.unknown_list, B.unknown_list
    parent = {(0, 0): None}
    queue = deque([((0, 0), 0)])
    while queue:
        conf, depth = queue.popleft()
        if max_len is not None and depth >= max_len:
            continue
        sa, sb = conf
        for g in range(A.n_letters):
            ta, tb = ra[sa][g], rb[sb][g]
            if ta < 0 or ua[ta]:
                continue
            if tb < 0:
                word, c = [g], conf
                while parent[c] is not None:
                    c, h = parent[c]
                    word.append(h)
                return word[::-1], len(parent)
            if ub[tb]:
                continue
            nxt = (ta, tb)
            if nxt not in parent:
                parent[nxt] = (conf, g)
                queue.append((nxt, depth + 1))
    return None, len(parent)


def delta_family_report(
    ambient: Locality,
    X_loc: Locality,
    N_loc: Locality,
    expected: str | None = None,
    max_len: int = 3,
) -> VerificationReport:
    """The generating, sparse and ample families of an internal product of
    localities and the facts relating them, as exact set comparisons (the
    domain comparisons are bounded by ``max_len``)."""
    L = ambient.L
    report = VerificationReport(f"object families of {L.name}")
    wit = check_internal_semidirect(L, X_loc.L.labels, N_loc.L.labels, max_len=max_len)
    if not wit:
        report.extend(wit.report)
        return report
    try:
        data = build_hypothesis(wit, X_loc, N_loc)
    except HypothesisError as exc:
        report.add(CheckResult(exc.bullet, False, counterexample=exc.counterexample, detail=str(exc)))
        return report
    family = build_delta_family(data)
    conj, lab = L.conj_rows, L.labels
    Sidx = L.idx_set(data.S)
    dX, gamma = X_loc.delta, N_loc.delta
    C = data.C

    # generating family: conjugation splits along f = xn
    t_gen = _Tally(
        "generating-conjugates",
        "QR ⊆ S_f iff Q ⊆ S_x and R^x ⊆ S_n; then (QR)^f = Q^x (R^x)^n lies in the generating family",
    )
    pairs = [
        (Q, R)
        for Q in sorted(dX, key=set_key)
        if Q <= C
        for R in sorted(gamma, key=set_key)
    ]
    for f in range(len(L)):
        x_lab, n_lab = wit.decomposition[lab[f]]
        x, n = L.idx(x_lab), L.idx(n_lab)
        sf, sx, sn = (_s_f_idx(L, Sidx, g) for g in (f, x, n))
        for Q, R in pairs:
            Qi, Ri = L.idx_set(Q), L.idx_set(R)
            QR = L.idx_set(product_set(L, Q, R))
            Rx = _conj_set_idx(L, Ri, x)
            lhs = QR <= sf
            rhs = Qi <= sx and Rx is not None and Rx <= sn
            ok = lhs == rhs
            if ok and lhs:
                Qx = _conj_set_idx(L, Qi, x)
                Rxn = _conj_set_idx(L, Rx, n)
                QRf = _conj_set_idx(L, QR, f)
                ok = (
                    L.label_set(Qx) in dX
                    and L.label_set(Rxn) in gamma
                    and L.label_set(Qx) <= C
                    and L.label_set(QRf) == product_set(L, L.label_set(Qx), L.label_set(Rxn))
                    and L.label_set(QRf) in family.delta0
                )
            t_gen(ok, [Q, R, lab[f]])
    report.add(t_gen.result(None, True))
    report.add(domain_check(L, [L.idx_set(P) for P in family.delta0], max_len, "generating-domain"))

    low = min(family.delta_sparse - family.delta_plus, key=set_key, default=None)
    report.add(
        CheckResult(
            "sparse-within-ample",
            low is None,
            counterexample=low,
            instances=len(family.delta_sparse),
            detail="Δ ⊆ Δ⁺",
        )
    )

    # larger families describe larger domains
    chains = [
        ("generating", family.delta0),
        ("sparse", family.delta_sparse),
        ("ample", family.delta_plus),
    ]
    autos = [delta_chain(L, [L.idx_set(P) for P in sorted(fam, key=set_key)]).compile() for _, fam in chains]
    for (na, _), (nb, _), A, B in zip(chains, chains[1:], autos, autos[1:]):
        cex, configs = _inclusion_counterexample(A, B, max_len + 1)
        report.add(
            CheckResult(
                f"{na}-domain-within-{nb}",
                cex is None,
                bound=max_len + 1,
                counterexample=None if cex is None else L.label_word(cex),
                instances=configs,
                detail="a smaller object family gives a smaller chain domain",
            )
        )

    # projections
    SC = X_loc.S & C
    Xset, Nset = frozenset(X_loc.L.labels), frozenset(N_loc.L.labels)
    t_proj = _Tally(
        "projection-bounds",
        "P ∩ C_{S_X}(N) ≤ P_X, (P ∩ X)_X = P ∩ C_{S_X}(N), P ∩ N ≤ P_N and (P ∩ N)_N = P ∩ N",
    )
    t_core = _Tally("projection-core", "(P ∩ S0)_X = P_X, (P ∩ S0)_N = P_N, and P ∈ Δ⁺ iff P ∩ S0 ∈ Δ⁺")
    for P in family.lattice:
        px, pn = project_PX(data, P), project_PN(data, P)
        PX, PN = P & Xset, P & Nset
        ok = (
            (P & SC) <= px
            and project_PX(data, PX) == P & SC
            and PN <= pn
            and project_PN(data, PN) == PN
        )
        t_proj(ok, P)
        P0 = P & data.S0
        ok = project_PX(data, P0) == px and project_PN(data, P0) == pn
        ok = ok and ((P in family.delta_plus) == (P0 in family.delta_plus))
        t_core(ok, P)
    report.add(t_proj.result(None, True))
    report.add(t_core.result(None, True))

    bad = strongly_closed_counterexample(ambient, data.S0)
    report.add(
        CheckResult(
            "core-strongly-closed",
            bad is None,
            counterexample=bad,
            instances=len(L),
            detail="S0 = C_{S_X}(N)T is strongly closed",
        )
    )

    holds = subgroup_check(L, data.S)[0]
    f = _maximal_idx(L, Sidx, ambient.p)
    report.add(
        CheckResult(
            "sylow-product",
            holds and f is None,
            counterexample=None if f is None else lab[f],
            detail="S_X T is a subgroup and a maximal p-subgroup",
        )
    )

    if expected is not None:
        if expected not in ("sparse", "ample"):
            raise InvalidInputError(f"unknown variant {expected!r}")
        cls = classify_internal_product(ambient, X_loc, N_loc, max_len)
        ok = getattr(cls, expected)
        report.add(
            CheckResult(
                "classification",
                ok,
                counterexample=None if ok else cls.kind,
                detail=f"recognised as {cls.kind}; built as {expected}",
            )
        )
    return report


def product_locality_report(loc: ProductLocality, max_len: int = 3) -> VerificationReport:
    """:func:`delta_family_report` for a constructed product of localities,
    with the canonical copies of the factors."""
    expected = loc.variant if loc.variant in ("sparse", "ample") else None
    return delta_family_report(loc, loc.hat_X, loc.hat_N, expected, max_len)
