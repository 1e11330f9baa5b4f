"""Homomorphisms, isomorphisms, automorphism groups and actions.

Maps are written on the right: ``f^φ``.  Homomorphism checks walk the
product of the two domain automata while carrying the running products, so a
check up to word length k visits each reachable configuration once instead
of every word.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Mapping

import numpy as np

from .errors import InvalidActionError, InvalidInputError, TooLargeError
from .oracles import Full
from .partial_group import PartialGroup
from .report import CheckResult, VerificationReport

AUT_CAP = 16


class PartialGroupMap:
    """A total map between the carriers of two partial groups."""

    def __init__(self, source: PartialGroup, target: PartialGroup, mapping):
        self.source, self.target = source, target
        if isinstance(mapping, Mapping):
            images = [target.idx(mapping[g]) for g in source.labels]
        elif callable(mapping):
            images = [target.idx(mapping(g)) for g in source.labels]
        else:
            images = [int(i) for i in mapping]
        if len(images) != len(source):
            raise InvalidInputError("the map must be total on the source carrier")
        self.images = images

    @classmethod
    def identity(cls, L: PartialGroup) -> "PartialGroupMap":
        return cls(L, L, list(range(len(L))))

    def __call__(self, g):
        return self.target.labels[self.images[self.source.idx(g)]]

    def image_word(self, w) -> tuple:
        return tuple(self(g) for g in w)

    def as_dict(self) -> dict:
        return {g: self(g) for g in self.source.labels}

    def is_bijective(self) -> bool:
        return len(self.source) == len(self.target) and len(set(self.images)) == len(self.images)

    def inverse(self) -> "PartialGroupMap":
        if not self.is_bijective():
            raise InvalidInputError("only bijections have inverses")
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return PartialGroupMap(self.target, self.source, inv)

    def then(self, other: "PartialGroupMap") -> "PartialGroupMap":
        """Apply self, then other."""
        if other.source is not self.target:
            raise InvalidInputError("maps do not compose")
        return PartialGroupMap(self.source, other.target, [other.images[i] for i in self.images])

    def __repr__(self) -> str:
        return f"PartialGroupMap({self.source.name} -> {self.target.name})"


def homomorphism_counterexample(phi: PartialGroupMap, max_len: int | None = 4):
    """First word of D(source) (shortest first) violating the homomorphism
    conditions, as ``(word_labels, reason, exact)``; ``word_labels`` is None
    when no violation exists.  ``exact`` is True when the search saturated,
    i.e. the answer holds for words of every length.
    """
    A, B, f = phi.source, phi.target, phi.images
    ra, rb = A.automaton.rows, B.automaton.rows
    ua, ub = A.automaton.unknown_list, B.automaton.unknown_list
    ba, bb = A.binary_rows, B.binary_rows
    if f[A.e] != B.e:
        return [], "identity not preserved", True
    start = (0, 0, -1, -1)  # -1: empty prefix
    parent = {start: None}
    queue = deque([(start, 0)])
    exact = True
    while queue:
        conf, depth = queue.popleft()
        if max_len is not None and depth >= max_len:
            exact = False
            continue
        sa0, sb0, pa, pb = conf
        for g in range(len(A)):
            sa = ra[sa0][g]
            if sa < 0:
                continue
            if ua[sa]:
                exact = False
                continue
            fg = f[g]
            sb = rb[sb0][fg]
            a = g if pa < 0 else ba[pa][g]
            nxt = (sa, sb, a, -2)
            if sb < 0:
                return _path(parent, conf, g, A), "image word outside the target domain", True
            if ub[sb]:
                exact = False
                continue
            b = fg if pb < 0 else bb[pb][fg]
            if a < 0 or b != f[a]:
                return _path(parent, conf, g, A), "products do not correspond", True
            nxt = (sa, sb, a, b)
            if nxt not in parent:
                parent[nxt] = (conf, g)
                queue.append((nxt, depth + 1))
    return None, "", exact


def _path(parent, conf, last, A) -> list:
    word = [last]
    while parent[conf] is not None:
        conf, g = parent[conf]
        word.append(g)
    return A.label_word(reversed(word))


def is_homomorphism(phi: PartialGroupMap, max_len: int | None = 4) -> bool:
    """Both homomorphism conditions for every word of D(source) of length at
    most ``max_len`` (all lengths when ``max_len`` is None)."""
    return homomorphism_counterexample(phi, max_len)[0] is None


def is_isomorphism(phi: PartialGroupMap, max_len: int | None = 4) -> bool:
    return phi.is_bijective() and is_homomorphism(phi, max_len) and is_homomorphism(phi.inverse(), max_len)


# -- isomorphism search ------------------------------------------------


def _signature(L: PartialGroup, g: int) -> tuple:
    row = L.binary_rows[g]
    defined = sum(1 for x in row if x >= 0)
    col = sum(1 for r in L.binary_rows if r[g] >= 0)
    order, p = 1, g
    while p != L.e and order <= len(L):
        p = L.binary_rows[p][g]
        if p < 0:
            order = -1
            break
        order += 1
    return (g == L.e, L.inv_list[g] == g, defined, col, order)


def find_isomorphisms(A: PartialGroup, B: PartialGroup, limit: int | None = None, max_len: int | None = None):
    """All isomorphisms A -> B (up to ``limit``), by exhaustive search.

    Candidates must fix the identity, commute with inversion, preserve the
    definedness pattern of the product table and match products of assigned
    pairs; survivors are confirmed with :func:`is_isomorphism`.
    """
    n = len(A)
    if n != len(B):
        return []
    sa = [_signature(A, g) for g in range(n)]
    sb = [_signature(B, g) for g in range(n)]
    if sorted(sa) != sorted(sb):
        return []
    ba, bb, ia, ib = A.binary_rows, B.binary_rows, A.inv_list, B.inv_list
    found: list[PartialGroupMap] = []

    def assign(m, used, a, b):
        """Assign a -> b and propagate; False on contradiction."""
        todo = [(a, b)]
        while todo:
            a, b = todo.pop()
            if m[a] >= 0:
                if m[a] != b:
                    return False
                continue
            if b in used or sa[a] != sb[b]:
                return False
            m[a] = b
            used.add(b)
            todo.append((ia[a], ib[b]))
            for c in range(n):
                d = m[c]
                if d < 0:
                    continue
                for x, y, u, v in ((a, c, b, d), (c, a, d, b)):
                    p, q = ba[x][y], bb[u][v]
                    if (p < 0) != (q < 0):
                        return False
                    if p >= 0:
                        todo.append((p, q))
        return True

    def search(m, used):
        if limit is not None and len(found) >= limit:
            return
        try:
            a = m.index(-1)
        except ValueError:
            phi = PartialGroupMap(A, B, list(m))
            if is_isomorphism(phi, max_len):
                found.append(phi)
            return
        for b in range(n):
            if b in used or sa[a] != sb[b]:
                continue
            m2, u2 = list(m), set(used)
            if assign(m2, u2, a, b):
                search(m2, u2)

    m0, u0 = [-1] * n, set()
    if assign(m0, u0, A.e, B.e):
        search(m0, u0)
    return found


def find_isomorphism(A: PartialGroup, B: PartialGroup) -> PartialGroupMap | None:
    res = find_isomorphisms(A, B, limit=1)
    return res[0] if res else None


def automorphism_group(N: PartialGroup, cap: int = AUT_CAP, name: str | None = None) -> PartialGroup:
    """Aut(N) as a group under composition (apply left factor first).

    Elements are labelled by the tuple of images of N's elements in carrier order.
    """
    if len(N) > cap:
        raise TooLargeError(f"automorphism search is capped at {cap} elements (got {len(N)})")
    autos = sorted(tuple(phi.images) for phi in find_isomorphisms(N, N))
    pos = {a: i for i, a in enumerate(autos)}
    k = len(autos)
    binary = np.empty((k, k), dtype=np.int32)
    inv = []
    for i, a in enumerate(autos):
        for j, b in enumerate(autos):
            binary[i, j] = pos[tuple(b[x] for x in a)]
        ai = [0] * len(a)
        for x, y in enumerate(a):
            ai[y] = x
        inv.append(pos[tuple(ai)])
    labels = [tuple(N.labels[x] for x in a) for a in autos]
    ident = tuple(N.labels)
    return PartialGroup(labels, ident, inv, binary, Full(k), name=name or f"Aut({N.name})")


# -- actions -----------------------------------------------------------


class ActionHom:
    """A map from X into the automorphisms of N.

    ``act[x][f]`` is the index of ``f^{x^φ}``.
    """

    def __init__(self, actor: PartialGroup, target: PartialGroup, images):
        self.actor, self.target = actor, target
        act = np.empty((len(actor), len(target)), dtype=np.int32)
        for x, lab in enumerate(actor.labels):
            img = images(lab) if callable(images) else images[lab]
            if isinstance(img, Mapping):
                act[x] = [target.idx(img.get(f, f)) for f in target.labels]
            elif callable(img):
                act[x] = [target.idx(img(f)) for f in target.labels]
            else:
                act[x] = [target.idx(f) for f in img]
        self.act = act
        self.act_rows = act.tolist()

    @classmethod
    def from_function(cls, X: PartialGroup, N: PartialGroup, fn: Callable) -> "ActionHom":
        """``fn(x, f)`` returns the label of ``f^{x^φ}``."""
        return cls(X, N, lambda x: {f: fn(x, f) for f in N.labels})

    @classmethod
    def trivial(cls, X: PartialGroup, N: PartialGroup) -> "ActionHom":
        return cls(X, N, lambda x: {})

    @classmethod
    def from_generators(cls, X: PartialGroup, N: PartialGroup, gen_images: Mapping) -> "ActionHom":
        """Extend images of generators along products (X is assumed to be
        generated by them); the result still has to pass :func:`is_action`."""
        n = len(N)
        known: dict[int, tuple[int, ...]] = {X.e: tuple(range(n))}
        gens = {}
        for x, img in gen_images.items():
            xi = X.idx(x)
            gens[xi] = tuple(N.idx(img.get(f, f)) for f in N.labels)
            known.setdefault(xi, gens[xi])
        frontier = list(known)
        while frontier:
            nxt = []
            for a in frontier:
                for g, pg in gens.items():
                    p = X.binary_rows[a][g]
                    if p >= 0 and p not in known:
                        pa = known[a]
                        known[p] = tuple(pg[pa[f]] for f in range(n))
                        nxt.append(p)
            frontier = nxt
        missing = [X.labels[x] for x in range(len(X)) if x not in known]
        if missing:
            raise InvalidActionError(f"generator images do not reach {missing[0]!r}")
        return cls(X, N, lambda x: [N.labels[f] for f in known[X.idx(x)]])

    def image_map(self, x) -> PartialGroupMap:
        return PartialGroupMap(self.target, self.target, self.act_rows[self.actor.idx(x)])

    def apply(self, f, x):
        """f^{x^φ}."""
        return self.target.labels[self.act_rows[self.actor.idx(x)][self.target.idx(f)]]

    def __repr__(self) -> str:
        return f"ActionHom({self.actor.name} -> Aut({self.target.name}))"


def action_report(phi: ActionHom, max_len: int | None = 4) -> VerificationReport:
    """Each image is an automorphism and x -> x^φ is a homomorphism into Aut(N)."""
    X, N = phi.actor, phi.target
    report = VerificationReport(f"action {X.name} on {N.name}")
    bad, exact = None, True
    for x in range(len(X)):
        m = PartialGroupMap(N, N, phi.act_rows[x])
        if not m.is_bijective():
            bad = [X.labels[x]]
            break
        c1, _, ex1 = homomorphism_counterexample(m, max_len)
        c2, _, ex2 = homomorphism_counterexample(m.inverse(), max_len)
        exact = exact and ex1 and ex2
        if c1 is not None or c2 is not None:
            bad = [X.labels[x]]
            break
    report.add(
        CheckResult(
            "automorphism",
            bad is None,
            bound=None if exact else max_len,
            counterexample=bad,
            instances=len(X),
            detail="image is a bijection preserving domain and products",
        )
    )
    cex, exact = _action_hom_counterexample(phi, max_len)
    report.add(
        CheckResult(
            "homomorphism",
            cex is None,
            bound=None if exact else max_len,
            counterexample=cex,
            instances=len(X),
            detail="image of a product is the composite of images",
        )
    )
    return report


def _action_hom_counterexample(phi: ActionHom, max_len):
    X = phi.actor
    rows, unknown, b = X.automaton.rows, X.automaton.unknown_list, X.binary_rows
    act = [tuple(r) for r in phi.act_rows]
    ident = tuple(range(len(phi.target)))
    if act[X.e] != ident:
        return [], True
    start = (0, -1, ident)
    parent = {start: None}
    queue = deque([(start, 0)])
    exact = True
    while queue:
        conf, depth = queue.popleft()
        if max_len is not None and depth >= max_len:
            exact = False
            continue
        s0, a0, psi = conf
        for x in range(len(X)):
            s = rows[s0][x]
            if s < 0:
                continue
            if unknown[s]:
                exact = False
                continue
            a = x if a0 < 0 else b[a0][x]
            ax = act[x]
            psi2 = tuple(ax[f] for f in psi)
            if a < 0 or act[a] != psi2:
                return _path(parent, conf, x, X), True
            nxt = (s, a, psi2)
            if nxt not in parent:
                parent[nxt] = (conf, x)
                queue.append((nxt, depth + 1))
    return None, exact


def is_action(phi: ActionHom, max_len: int | None = 4) -> bool:
    return action_report(phi, max_len).ok


def fixed_centralizer(phi: ActionHom, Y, M) -> frozenset:
    """{y in Y : m^{y^φ} = m for all m in M}."""
    Mi = phi.target.idx_set(M)
    rows = phi.act_rows
    return frozenset(y for y in Y if all(rows[phi.actor.idx(y)][m] == m for m in Mi))
