"""Finite groups as partial groups with full domain, plus subgroup utilities.

Permutations act on the right: ``i^(gh) = (i^g)^h``.  They are labelled in
cycle notation on the points ``1..k`` (``"()"`` for the identity).
"""

from __future__ import annotations

import re
from collections.abc import Hashable, Iterable, Sequence

import numpy as np

from .errors import InvalidInputError, TooLargeError
from .oracles import Full
from .partial_group import PartialGroup

MAX_GROUP_ORDER = 5000


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def is_p_power(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


# -- permutations ------------------------------------------------------


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Images (0-based) of the permutation written in cycle notation."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\))+", text):
        raise InvalidInputError(f"not a permutation in cycle notation: {text!r}")
    images = list(range(degree))
    seen: set[int] = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) - 1 for t in re.split(r"[\s,]+", body.strip()) if t]
        for a in pts:
            if not 0 <= a < degree or a in seen:
                raise InvalidInputError(f"bad point in {text!r} for degree {degree}")
            seen.add(a)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return tuple(images)


def cycle_label(perm: Sequence[int]) -> str:
    seen, parts = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(str(i + 1))
            i = perm[i]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def compose(g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
    """Apply g, then h."""
    return tuple(h[i] for i in g)


def permutation_group(generators: Iterable, degree: int, name: str | None = None) -> PartialGroup:
    """The group generated by permutations (cycle strings or image tuples)."""
    gens = [parse_cycles(g, degree) if isinstance(g, str) else tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise InvalidInputError(f"{g} is not a permutation of {degree} points")
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
                    if len(elems) > MAX_GROUP_ORDER:
                        raise TooLargeError(f"group order exceeds {MAX_GROUP_ORDER}")
        frontier = nxt
    perms = sorted(elems)
    pos = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    binary = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            binary[i, j] = pos[compose(a, b)]
    inv = []
    for a in perms:
        ia = [0] * degree
        for i, j in enumerate(a):
            ia[j] = i
        inv.append(pos[tuple(ia)])
    return PartialGroup([cycle_label(p) for p in perms], "()", inv, binary, Full(n), name=name)


def symmetric_group(k: int, name: str | None = None) -> PartialGroup:
    if k <= 1:
        return permutation_group([], max(k, 1), name=name or f"Sym({k})")
    gens = [cycle_label((1, 0) + tuple(range(2, k))), cycle_label(tuple(range(1, k)) + (0,))]
    return permutation_group(gens, k, name=name or f"Sym({k})")


def alternating_group(k: int, name: str | None = None) -> PartialGroup:
    gens = [cycle_label(tuple([1, 2, 0] + list(range(3, k))) if k >= 3 else tuple(range(k)))]
    gens += [f"(1 2 {i})" for i in range(4, k + 1)]
    return permutation_group(gens, max(k, 1), name=name or f"Alt({k})")


# -- abstract tables ---------------------------------------------------


def cyclic_group(n: int, generator: str = "a", name: str | None = None) -> PartialGroup:
    labels = ["1"] + [generator if i == 1 else f"{generator}^{i}" for i in range(1, n)]
    idx = np.arange(n)
    binary = (idx[:, None] + idx[None, :]) % n
    return PartialGroup(labels, "1", [(-i) % n for i in range(n)], binary, Full(n), name=name or f"C{n}")


def cayley_group(
    elements: Sequence[Hashable],
    rows: Sequence[Sequence[Hashable]],
    identity: Hashable | None = None,
    name: str | None = None,
) -> PartialGroup:
    """A group from its multiplication table (``rows[i][j]`` = element i times j)."""
    pos = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InvalidInputError("the table must be square over the listed elements")
    try:
        binary = np.array([[pos[x] for x in r] for r in rows], dtype=np.int32)
    except KeyError as exc:
        raise InvalidInputError(f"table entry {exc.args[0]!r} is not a listed element") from None
    if identity is None:
        cands = [i for i in range(n) if all(binary[i, j] == j and binary[j, i] == j for j in range(n))]
        if not cands:
            raise InvalidInputError("the table has no identity element")
        e = cands[0]
    else:
        e = pos[identity]
    inv = []
    for i in range(n):
        found = [j for j in range(n) if binary[i, j] == e]
        if not found:
            raise InvalidInputError(f"{elements[i]!r} has no inverse in the table")
        inv.append(found[0])
    return PartialGroup(list(elements), elements[e], inv, binary, Full(n), name=name)


# -- subgroup utilities ------------------------------------------------


def closure_idx(L: PartialGroup, gens: Iterable[int]) -> frozenset[int] | None:
    """Smallest set containing ``gens`` and the identity, closed under inversion
    and products of pairs.  None when some pair of its elements has no product."""
    rows, inv = L.binary_rows, L.inv_list
    elems = {L.e}
    frontier = []
    for g in gens:
        for h in (g, inv[g]):
            if h not in elems:
                elems.add(h)
                frontier.append(h)
    done: list[int] = [L.e]
    while frontier:
        new = []
        for a in frontier:
            for b in done + frontier + new:
                for p in (rows[a][b], rows[b][a]):
                    if p < 0:
                        return None
                    if p not in elems:
                        elems.add(p)
                        new.append(p)
                        if inv[p] not in elems:
                            elems.add(inv[p])
                            new.append(inv[p])
            done.append(a)
        frontier = new
    # final pass: every pair defined
    es = list(elems)
    for a in es:
        row = rows[a]
        for b in es:
            if row[b] < 0:
                return None
    return frozenset(elems)


def generated(L: PartialGroup, gens) -> frozenset | None:
    out = closure_idx(L, L.idx_set(gens))
    return None if out is None else L.label_set(out)


def subgroups_idx(L: PartialGroup, S: frozenset[int]) -> list[frozenset[int]]:
    """All subgroups of the subgroup ``S`` (closed under products in L)."""
    found = {frozenset([L.e])}
    for s in S:
        c = closure_idx(L, [s])
        if c is None:
            raise InvalidInputError("the given set is not a subgroup")
        found.add(c)
    layer = set(found)
    while layer:
        new = set()
        for A in layer:
            for B in list(found):
                if A <= B or B <= A:
                    continue
                C = closure_idx(L, A | B)
                if C is None:
                    raise InvalidInputError("the given set is not a subgroup")
                if C not in found:
                    new.add(C)
        found |= new
        layer = new
    return sorted(found, key=lambda P: (len(P), sorted(P)))


def subgroups(L: PartialGroup, S) -> list[frozenset]:
    return [L.label_set(P) for P in subgroups_idx(L, L.idx_set(S))]


def element_order(L: PartialGroup, g) -> int:
    gi, p, k = L.idx(g), L.idx(g), 1
    while p != L.e:
        p = L.binary_rows[p][gi]
        if p < 0:
            raise InvalidInputError(f"powers of {g!r} leave the domain")
        k += 1
    return k


def sylow_subgroup(G: PartialGroup, p: int) -> frozenset:
    """A Sylow p-subgroup of the group G (a maximal p-subgroup, grown greedily)."""
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    P = frozenset([G.e])
    changed = True
    while changed:
        changed = False
        for g in range(len(G)):
            if g in P:
                continue
            Q = closure_idx(G, P | {g})
            if Q is not None and is_p_power(len(Q), p):
                P, changed = Q, True
    return G.label_set(P)
