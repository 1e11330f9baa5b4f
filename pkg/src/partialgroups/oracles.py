"""Decidable word domains.

A domain oracle answers "is this word in D(L)?" for words over the carrier
indices ``0..n-1``.  Every oracle offers two routes:

* ``accepts(word)`` evaluates the defining condition directly (chain search,
  splitting, coordinate projection ...);
* ``compile()`` produces an :class:`Automaton`, a deterministic automaton whose
  live states accept.  Domains are prefix closed, so one dead sink suffices.

The automaton is what the fast paths use; ``accepts`` is kept as the
independent reference and the two are compared in the test-suite.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import DomainBoundError, InvalidInputError, TooLargeError

DEAD = -1
MAX_STATES = 200_000


class Automaton:
    """Deterministic automaton with dead sink ``-1``; state 0 is the start.

    ``unknown[s]`` marks states whose membership is not determined (words
    longer than an explicit bound).
    """

    __slots__ = ("trans", "unknown", "rows", "unknown_list")

    def __init__(self, trans, unknown):
        self.trans = np.ascontiguousarray(trans, dtype=np.int32)
        self.unknown = np.ascontiguousarray(unknown, dtype=np.uint8)
        self.rows = self.trans.tolist()
        self.unknown_list = [bool(u) for u in self.unknown]

    @property
    def n_states(self) -> int:
        return self.trans.shape[0]

    @property
    def n_letters(self) -> int:
        return self.trans.shape[1]

    def run(self, word: Iterable[int], state: int = 0) -> int:
        rows = self.rows
        for g in word:
            state = rows[state][g]
            if state < 0:
                return DEAD
        return state

    def member(self, word: Iterable[int]) -> int:
        """1 if accepted, 0 if rejected, -1 if undetermined."""
        s = self.run(word)
        if s < 0:
            return 0
        return -1 if self.unknown_list[s] else 1

    @classmethod
    def explore(
        cls,
        n_letters: int,
        start: Hashable,
        step: Callable[[Hashable, int], Hashable | None],
        is_unknown: Callable[[Hashable], bool] | None = None,
        max_states: int = MAX_STATES,
    ) -> "Automaton":
        """Breadth-first construction from a successor function (``None`` = dead)."""
        index = {start: 0}
        states = [start]
        rows = []
        i = 0
        while i < len(states):
            s = states[i]
            row = []
            for g in range(n_letters):
                t = step(s, g)
                if t is None:
                    row.append(DEAD)
                    continue
                j = index.get(t)
                if j is None:
                    j = len(states)
                    if j >= max_states:
                        raise TooLargeError(f"automaton exceeds {max_states} states")
                    index[t] = j
                    states.append(t)
                row.append(j)
            rows.append(row)
            i += 1
        unknown = [bool(is_unknown(s)) if is_unknown else False for s in states]
        trans = np.array(rows, dtype=np.int32).reshape(len(states), n_letters)
        return cls(trans, unknown)


class DomainOracle:
    n_letters: int

    def accepts(self, word: Sequence[int]) -> bool:
        raise NotImplementedError

    def compile(self) -> Automaton:
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__


class Full(DomainOracle):
    """Every word is defined (the domain of a group)."""

    def __init__(self, n_letters: int):
        self.n_letters = n_letters

    def accepts(self, word):
        return True

    def compile(self):
        return Automaton(np.zeros((1, self.n_letters), dtype=np.int32), [False])


class DeltaChain(DomainOracle):
    """Words admitting a chain of object-set members conjugated letter by letter.

    ``members`` are the subgroups (as frozensets of carrier indices) and
    ``moves[g][i]`` is the index of ``members[i]^g`` when every element of the
    member is conjugable by ``g`` and the image is again a member, else -1.
    """

    def __init__(self, n_letters: int, members: Sequence[frozenset], moves):
        self.n_letters = n_letters
        self.members = list(members)
        if not self.members:
            raise InvalidInputError("object set must be non-empty")
        self.moves = [list(r) for r in moves]

    @classmethod
    def from_conjugation(cls, n_letters, members, conj: Callable[[int, int], int | None]):
        """Build the move table from ``conj(g, x)`` (``None`` when undefined)."""
        members = list(members)
        pos = {P: i for i, P in enumerate(members)}
        moves = []
        for g in range(n_letters):
            row = []
            for P in members:
                image = []
                for x in P:
                    y = conj(g, x)
                    if y is None or y < 0:
                        image = None
                        break
                    image.append(y)
                row.append(-1 if image is None else pos.get(frozenset(image), -1))
            moves.append(row)
        return cls(n_letters, members, moves)

    def witness(self, word: Sequence[int]) -> list[int] | None:
        """Member indices ``P_0..P_k`` of a chain for ``word``, or None.

        Depth-first over starting members; dead (member, position) pairs are
        memoised so shared tails are not re-explored.
        """
        dead: set[tuple[int, int]] = set()
        k = len(word)
        for start in range(len(self.members)):
            chain = [start]
            i = start
            for pos, g in enumerate(word):
                if (i, pos) in dead:
                    chain = None
                    break
                j = self.moves[g][i]
                if j < 0:
                    dead.add((i, pos))
                    chain = None
                    break
                chain.append(j)
                i = j
            if chain is not None and len(chain) == k + 1:
                return chain
        return None

    def accepts(self, word):
        return self.witness(word) is not None

    def compile(self):
        moves = self.moves

        def step(state, g):
            row = moves[g]
            image = frozenset(row[i] for i in state if row[i] >= 0)
            return image or None

        return Automaton.explore(self.n_letters, frozenset(range(len(self.members))), step)

    def describe(self):
        return f"DeltaChain({len(self.members)} objects)"


class SemidirectSplit(DomainOracle):
    """Domain of an external semidirect product of ``X`` by ``N``.

    Letters are pairs encoded as ``x * |N| + f``; ``act[x][f]`` is ``f``
    transformed by the automorphism attached to ``x``.
    """

    def __init__(self, X, N, act):
        self.X, self.N = X, N
        self.nX, self.nN = len(X), len(N)
        self.act = [list(r) for r in act]
        self.n_letters = self.nX * self.nN

    def split(self, word: Sequence[int]) -> tuple[tuple, tuple | None]:
        """``(w_X, w_N)`` with ``w_N`` None when ``w_X`` is not defined in X."""
        nN = self.nN
        wx = tuple(g // nN for g in word)
        if not self.X.oracle.accepts(wx):
            return wx, None
        wn = []
        for i, g in enumerate(word):
            y = self.X.fold(wx[i + 1 :])
            wn.append(self.act[y][g % nN])
        return wx, tuple(wn)

    def accepts(self, word):
        _, wn = self.split(word)
        return wn is not None and self.N.oracle.accepts(wn)

    def compile(self):
        # Reading left to right, twist each N-letter by the inverse of the
        # running X-prefix product.  The resulting word differs from w_N by one
        # automorphism (that of the full X-product), and D(N) is invariant
        # under automorphisms, so membership is unchanged.
        ax, an = self.X.automaton, self.N.automaton
        xr, nr = ax.rows, an.rows
        xb = self.X.binary_rows
        xinv = self.X.inv_list
        act = self.act
        nN = self.nN

        def step(state, g):
            sx, z, sn = state
            x, f = divmod(g, nN)
            sx = xr[sx][x]
            if sx < 0:
                return None
            z = xb[z][x]
            if z < 0:
                return None
            sn = nr[sn][act[xinv[z]][f]]
            if sn < 0:
                return None
            return (sx, z, sn)

        def unknown(state):
            return ax.unknown_list[state[0]] or an.unknown_list[state[2]]

        return Automaton.explore(self.n_letters, (0, self.X.e, 0), step, unknown)

    def describe(self):
        return f"SemidirectSplit({self.X.name}, {self.N.name})"


class DirectPower(DomainOracle):
    """Componentwise domain of a direct product; letters are mixed-radix tuples."""

    def __init__(self, factors: Sequence):
        self.factors = list(factors)
        sizes = [len(F) for F in self.factors]
        self.n_letters = int(np.prod(sizes)) if sizes else 1
        self.coords = [tuple(c) for c in np.ndindex(*sizes)] if sizes else [()]

    def accepts(self, word):
        for i, F in enumerate(self.factors):
            if not F.oracle.accepts(tuple(self.coords[g][i] for g in word)):
                return False
        return True

    def compile(self):
        autos = [F.automaton for F in self.factors]
        rows = [a.rows for a in autos]
        coords = self.coords

        def step(state, g):
            c = coords[g]
            out = []
            for i, s in enumerate(state):
                t = rows[i][s][c[i]]
                if t < 0:
                    return None
                out.append(t)
            return tuple(out)

        def unknown(state):
            return any(a.unknown_list[s] for a, s in zip(autos, state))

        return Automaton.explore(self.n_letters, (0,) * len(autos), step, unknown)

    def describe(self):
        return f"DirectPower({', '.join(F.name for F in self.factors)})"


class ExplicitBounded(DomainOracle):
    """A domain known only up to words of length ``bound``."""

    _BEYOND = "beyond"

    def __init__(self, n_letters: int, bound: int, words: Iterable[Sequence[int]]):
        if bound < 2:
            raise InvalidInputError("an explicit domain must list words up to length at least 2")
        self.n_letters = n_letters
        self.bound = bound
        self.words = {tuple(w) for w in words}
        self.words.add(())
        for w in self.words:
            if len(w) > bound:
                raise InvalidInputError(f"word {w} exceeds the declared bound {bound}")

    def accepts(self, word):
        word = tuple(word)
        if len(word) > self.bound:
            raise DomainBoundError(f"membership of a length-{len(word)} word is beyond bound {self.bound}")
        return word in self.words

    def compile(self):
        words, bound, beyond = self.words, self.bound, self._BEYOND

        def step(state, g):
            if state == beyond or len(state) == bound:
                return beyond
            t = state + (g,)
            return t if t in words else None

        return Automaton.explore(self.n_letters, (), step, lambda s: s == beyond)

    def describe(self):
        return f"ExplicitBounded(bound={self.bound}, {len(self.words)} words)"


class Restricted(DomainOracle):
    """Domain of a subset regarded as a partial group: D(L) ∩ W(H).

    ``letter_map[i]`` is the parent index of the i-th element of the subset.
    """

    def __init__(self, parent, letter_map: Sequence[int]):
        self.parent = parent
        self.letter_map = list(letter_map)
        self.n_letters = len(self.letter_map)

    def accepts(self, word):
        return self.parent.oracle.accepts(tuple(self.letter_map[g] for g in word))

    def compile(self):
        pa = self.parent.automaton
        rows, lm = pa.rows, self.letter_map

        def step(s, g):
            t = rows[s][lm[g]]
            return None if t < 0 else t

        return Automaton.explore(self.n_letters, 0, step, lambda s: pa.unknown_list[s])

    def describe(self):
        return f"Restricted({self.parent.name})"
