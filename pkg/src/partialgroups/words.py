"""Words over a finite carrier: the free monoid with concatenation and inversion."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass

from .errors import CarrierMismatchError, InvalidInputError, UnknownElementError


@dataclass(frozen=True)
class Word:
    """An immutable sequence of element ids tagged with the id of its carrier.

    ``carrier=None`` means the word is not yet bound to a carrier and may be
    concatenated with anything.
    """

    letters: tuple = ()
    carrier: Hashable | None = None

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.carrier)
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __repr__(self) -> str:
        body = ", ".join(map(str, self.letters))
        return f"Word({body})" if self.carrier is None else f"Word[{self.carrier}]({body})"


EMPTY = Word()


def as_word(w, carrier: Hashable | None = None) -> Word:
    """Coerce a Word or plain iterable of ids into a Word."""
    if isinstance(w, Word):
        if carrier is not None and w.carrier is not None and w.carrier != carrier:
            raise CarrierMismatchError(f"word over {w.carrier!r} used with carrier {carrier!r}")
        return w if w.carrier is not None or carrier is None else Word(w.letters, carrier)
    return Word(tuple(w), carrier)


def concat(u: Word, v: Word) -> Word:
    if u.carrier is not None and v.carrier is not None and u.carrier != v.carrier:
        raise CarrierMismatchError(f"cannot concatenate words over {u.carrier!r} and {v.carrier!r}")
    return Word(u.letters + v.letters, u.carrier if u.carrier is not None else v.carrier)


def power(u: Word, k: int) -> Word:
    if k < 0:
        raise InvalidInputError(f"negative exponent {k}")
    return Word(u.letters * k, u.carrier)


def invert_word(w: Word, inv: Mapping | Callable) -> Word:
    """Reverse ``w`` and invert each letter with ``inv`` (a mapping or callable)."""
    out = []
    for g in reversed(w.letters):
        try:
            out.append(inv[g] if isinstance(inv, Mapping) else inv(g))
        except (KeyError, IndexError) as exc:
            raise UnknownElementError(f"no inverse known for {g!r}") from exc
    return Word(tuple(out), w.carrier)


def words_up_to(letters: Iterable, max_len: int):
    """Yield every tuple over ``letters`` of length 0..max_len, shortest first."""
    letters = list(letters)
    layer = [()]
    yield ()
    for _ in range(max_len):
        layer = [w + (g,) for w in layer for g in letters]
        yield from layer
