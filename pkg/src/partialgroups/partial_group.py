"""Finite partial groups with decidable word domains.

A :class:`PartialGroup` stores a carrier of labelled elements, an involutory
inversion, the table of products of length-two words and a domain oracle.
Products of longer words are left folds of the table.  Internally elements
are indices ``0..n-1``; the public functions take and return labels.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Hashable, Iterable
from functools import cached_property

import numpy as np

from . import kernels
from .errors import (
    ConjugationUndefinedError,
    DomainBoundError,
    InvalidInputError,
    UndefinedProductError,
    UnknownElementError,
)
from .oracles import Automaton, DomainOracle, ExplicitBounded, Full, Restricted
from .report import CheckResult, VerificationReport
from .words import Word, as_word

_names = itertools.count()


class PartialGroup:
    """A finite partial group.

    Parameters
    ----------
    labels : sequence of hashable
        Element labels; position is the internal index.
    identity : hashable
        Label of the identity.
    inverse : sequence of int or mapping label -> label
        The inversion, as indices or as a label mapping.
    binary : array-like (n, n)
        ``binary[a][b]`` is the index of the product of the word ``(a, b)`` or
        -1 when that word is outside the domain.
    oracle : DomainOracle
        Decides membership of longer words.
    validate : bool
        Check the structural invariants (involutory inversion, single letters
        in the domain, agreement of the oracle with the table on pairs).
    """

    def __init__(
        self,
        labels: Iterable[Hashable],
        identity: Hashable,
        inverse,
        binary,
        oracle: DomainOracle,
        name: str | None = None,
        validate: bool = True,
    ):
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise InvalidInputError("duplicate element labels")
        n = len(self.labels)
        if n == 0:
            raise InvalidInputError("a partial group has at least its identity")
        self.name = name if name is not None else f"pg{next(_names)}"
        self.e = self.idx(identity)
        if hasattr(inverse, "items"):
            inv = [self.idx(inverse[lab]) for lab in self.labels]
        else:
            inv = [int(i) for i in inverse]
        self.inv = np.asarray(inv, dtype=np.int32)
        self.inv_list = inv
        self.binary = np.ascontiguousarray(binary, dtype=np.int32)
        if self.binary.shape != (n, n) or len(inv) != n:
            raise InvalidInputError("table shapes do not match the carrier")
        self.binary_rows = self.binary.tolist()
        self.oracle = oracle
        if oracle.n_letters != n:
            raise InvalidInputError("oracle alphabet does not match the carrier")
        if validate:
            self._validate()

    # -- structure -----------------------------------------------------
    def _validate(self) -> None:
        n, inv, e = len(self), self.inv_list, self.e
        for g in range(n):
            if not 0 <= inv[g] < n or inv[inv[g]] != g:
                raise InvalidInputError(f"inversion is not involutory at {self.labels[g]!r}")
        if inv[e] != e:
            raise InvalidInputError("the identity is not self-inverse")
        a = self.automaton
        if a.member(()) != 1:
            raise InvalidInputError("the empty word must be in the domain")
        for g in range(n):
            if a.member((g,)) != 1:
                raise InvalidInputError(f"single letter {self.labels[g]!r} outside the domain")
            row = self.binary_rows[g]
            for h in range(n):
                m = a.member((g, h))
                if (m == 1) != (row[h] >= 0):
                    raise InvalidInputError(
                        f"domain and product table disagree on ({self.labels[g]!r}, {self.labels[h]!r})"
                    )
                if not -1 <= row[h] < n:
                    raise InvalidInputError("product table entry out of range")

    @property
    def identity(self) -> Hashable:
        return self.labels[self.e]

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __repr__(self) -> str:
        return f"PartialGroup({self.name!r}, {len(self)} elements, {self.oracle.describe()})"

    @cached_property
    def automaton(self) -> Automaton:
        return self.oracle.compile()

    # -- index helpers -------------------------------------------------
    def idx(self, label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownElementError(f"{label!r} is not an element of {self.name}") from None

    def idx_word(self, w) -> tuple[int, ...]:
        w = as_word(w, self.name)
        return tuple(self.idx(g) for g in w.letters)

    def idx_set(self, labels) -> frozenset[int]:
        return frozenset(self.idx(g) for g in labels)

    def label_set(self, idxs) -> frozenset:
        return frozenset(self.labels[i] for i in idxs)

    def label_word(self, idxs) -> list:
        return [self.labels[i] for i in idxs]

    def word(self, *labels) -> Word:
        for g in labels:
            self.idx(g)
        return Word(tuple(labels), self.name)

    def member(self, word) -> int:
        """1 / 0 / -1 (undetermined) for a word of indices."""
        return self.automaton.member(word)

    def defined(self, word) -> bool:
        m = self.automaton.member(word)
        if m < 0:
            raise DomainBoundError(f"membership of a word of length {len(word)} in {self.name} is not determined")
        return m == 1

    def fold(self, word) -> int:
        """Left fold of the product table over indices (-1 if a step is undefined)."""
        if not word:
            return self.e
        rows = self.binary_rows
        p = word[0]
        for g in word[1:]:
            p = rows[p][g]
            if p < 0:
                return -1
        return p

    def inverse(self, label):
        return self.labels[self.inv_list[self.idx(label)]]

    def mul(self, a, b):
        """Product of the word ``(a, b)``."""
        p = self.binary_rows[self.idx(a)][self.idx(b)]
        if p < 0:
            raise UndefinedProductError(f"({a!r}, {b!r}) is not in D({self.name})")
        return self.labels[p]

    @cached_property
    def conj_table(self) -> np.ndarray:
        """``conj[g][x]`` is the index of ``x^g`` or -1 when ``x`` is not in D(g)."""
        n, rows = len(self), self.automaton.rows
        unknown = self.automaton.unknown_list
        inv, b = self.inv_list, self.binary_rows
        out = np.full((n, n), -1, dtype=np.int32)
        for g in range(n):
            s1 = rows[0][inv[g]]
            bg = b[inv[g]]
            for x in range(n):
                s2 = rows[s1][x]
                if s2 < 0:
                    continue
                s3 = rows[s2][g]
                if s3 < 0:
                    continue
                if unknown[s3]:
                    raise DomainBoundError(f"conjugation in {self.name} needs words of length 3")
                out[g, x] = b[bg[x]][g]
        return out

    @cached_property
    def conj_rows(self) -> list[list[int]]:
        return self.conj_table.tolist()

    def restrict(self, subset, name: str | None = None) -> "PartialGroup":
        """The subset regarded as a partial group (domain D(L) ∩ W(H)).

        Labels are kept, so subsets of the restriction are subsets of ``self``.
        The subset must be a partial subgroup.
        """
        idxs = sorted(self.idx_set(subset))
        if not is_partial_subgroup(self, subset):
            raise InvalidInputError("only partial subgroups can be regarded as partial groups")
        pos = {g: i for i, g in enumerate(idxs)}
        binary = np.full((len(idxs), len(idxs)), -1, dtype=np.int32)
        for i, a in enumerate(idxs):
            row = self.binary_rows[a]
            for j, b in enumerate(idxs):
                if row[b] >= 0:
                    binary[i, j] = pos[row[b]]
        return PartialGroup(
            [self.labels[g] for g in idxs],
            self.identity,
            [pos[self.inv_list[g]] for g in idxs],
            binary,
            Restricted(self, idxs),
            name=name or f"{self.name}|{len(idxs)}",
            validate=False,
        )


# -- word-level operations ---------------------------------------------


def is_defined(L: PartialGroup, w) -> bool:
    return L.defined(L.idx_word(w))


def product(L: PartialGroup, w):
    """Π(w), the left fold of the product table over ``w``."""
    word = L.idx_word(w)
    if not L.defined(word):
        raise UndefinedProductError(f"{as_word(w)} is not in D({L.name})")
    return L.labels[L.fold(word)]


def verify_axioms(L: PartialGroup, max_len: int = 4, backend: str | None = None) -> VerificationReport:
    """Bounded-exhaustive check of the four partial-group axioms.

    Every word of length at most ``max_len`` in the domain is visited with all
    of its two- and three-part splittings.
    """
    if max_len < 2:
        raise InvalidInputError("max_len must be at least 2")
    res = kernels.axiom_sweep(L, max_len, backend)
    exhaustive = isinstance(L.oracle, ExplicitBounded) and L.oracle.bound <= max_len
    report = VerificationReport(f"partial group {L.name}")
    notes = {
        "PG1": "suffix closure and single letters",
        "PG2": "products of single letters",
        "PG3": "contracting a middle factor",
        "PG4": "inverse word times word",
    }
    for axiom in kernels._kernels_py.AXIOMS:
        inst, skipped, cex, aux = res[axiom]
        detail = notes[axiom]
        if cex is not None and aux:
            detail += f"; split at {list(aux)}"
        report.add(
            CheckResult(
                axiom,
                cex is None,
                bound=max_len,
                counterexample=None if cex is None else L.label_word(cex),
                exhaustive=exhaustive,
                instances=inst,
                skipped=skipped,
                detail=detail,
            )
        )
    return report


# -- conjugation -------------------------------------------------------


def conjugate(L: PartialGroup, x, g):
    """x^g = Π(g⁻¹, x, g)."""
    c = L.conj_rows[L.idx(g)][L.idx(x)]
    if c < 0:
        raise ConjugationUndefinedError(f"{x!r} is not in D({g!r}) in {L.name}")
    return L.labels[c]


def conjugation_domain(L: PartialGroup, g) -> frozenset:
    row = L.conj_rows[L.idx(g)]
    return frozenset(L.labels[x] for x in range(len(L)) if row[x] >= 0)


def conjugate_set(L: PartialGroup, H, g) -> frozenset | None:
    """H^g, or None when H is not contained in D(g)."""
    out = _conj_set_idx(L, L.idx_set(H), L.idx(g))
    return None if out is None else L.label_set(out)


def _conj_set_idx(L: PartialGroup, H: Iterable[int], g: int) -> frozenset[int] | None:
    row = L.conj_rows[g]
    out = []
    for x in H:
        y = row[x]
        if y < 0:
            return None
        out.append(y)
    return frozenset(out)


def normalizer(L: PartialGroup, M, H) -> frozenset:
    """N_M(H): elements g of M with H ⊆ D(g) and H^g = H."""
    Hi = L.idx_set(H)
    return frozenset(g for g in M if _conj_set_idx(L, Hi, L.idx(g)) == Hi)


def centralizer(L: PartialGroup, M, H) -> frozenset:
    """C_M(H): elements g of M with H ⊆ D(g) and h^g = h for every h in H."""
    Hi = L.idx_set(H)
    out = []
    for g in M:
        row = L.conj_rows[L.idx(g)]
        if all(row[h] == h for h in Hi):
            out.append(g)
    return frozenset(out)


# -- subgroups ---------------------------------------------------------


def _nonempty(L: PartialGroup, H) -> frozenset[int]:
    Hi = L.idx_set(H)
    if not Hi:
        raise InvalidInputError("the subset must be non-empty")
    return Hi


def is_partial_subgroup(L: PartialGroup, H) -> bool:
    """Closed under inversion and under every defined product of its elements.

    Closure of the product table suffices: the product of a longer word is a
    fold whose intermediate pairs are all in the domain.
    """
    Hi = _nonempty(L, H)
    inv, rows = L.inv_list, L.binary_rows
    for a in Hi:
        if inv[a] not in Hi:
            return False
        row = rows[a]
        for b in Hi:
            p = row[b]
            if p >= 0 and p not in Hi:
                return False
    return True


def is_partial_normal(L: PartialGroup, N) -> bool:
    Ni = _nonempty(L, N)
    if not is_partial_subgroup(L, N):
        return False
    for row in L.conj_rows:
        for n in Ni:
            y = row[n]
            if y >= 0 and y not in Ni:
                return False
    return True


def subgroup_check(L: PartialGroup, H, max_len: int = 4) -> tuple[bool, bool, list | None]:
    """Decide W(H) ⊆ D(L).

    Returns ``(holds, exact, counterexample)``.  The automaton restricted to
    the letters of H is searched breadth first, so the answer is exact unless
    undetermined states are met, in which case only words up to ``max_len``
    are covered.
    """
    Hi = sorted(_nonempty(L, H))
    if not is_partial_subgroup(L, H):
        # a subgroup is in particular a partial subgroup; find a witness pair
        for a in Hi:
            for b in Hi:
                p = L.binary_rows[a][b]
                if p >= 0 and p not in Hi:
                    return False, True, L.label_word((a, b))
            if L.inv_list[a] not in Hi:
                return False, True, L.label_word((a,))
    a = L.automaton
    rows, unknown = a.rows, a.unknown_list
    seen = {0: ()}
    queue = deque([0])
    exact = True
    while queue:
        s = queue.popleft()
        path = seen[s]
        for g in Hi:
            t = rows[s][g]
            if t < 0:
                return False, True, L.label_word(path + (g,))
            if unknown[t]:
                exact = False
                continue
            if t not in seen:
                seen[t] = path + (g,)
                queue.append(t)
    if not exact:
        # fall back to the bounded statement over determined words
        return True, False, None
    return True, True, None


def is_subgroup(L: PartialGroup, H, max_len: int = 4) -> bool:
    return subgroup_check(L, H, max_len)[0]


def trivial_partial_group(name: str = "1") -> PartialGroup:
    return PartialGroup(["1"], "1", [0], [[0]], Full(1), name=name)

