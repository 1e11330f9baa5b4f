import pytest
from hypothesis import given
from hypothesis import strategies as st

from partialgroups.errors import CarrierMismatchError, InvalidInputError, UnknownElementError
from partialgroups.fixtures import cyclic_by_inversion
from partialgroups.words import EMPTY, Word, as_word, concat, invert_word, power, words_up_to

letters = st.sampled_from(["g", "h", "k", "1"])
words = st.lists(letters, max_size=6).map(lambda xs: Word(tuple(xs)))
INV = {"g": "h", "h": "g", "k": "k", "1": "1"}


def test_concat_examples():
    assert concat(Word(("a",)), Word(("b",))) == Word(("a", "b"))
    assert concat(Word(("a", "b")), EMPTY) == Word(("a", "b"))
    assert concat(EMPTY, EMPTY) == EMPTY
    assert Word(("a",)) + Word(("b",)) == Word(("a", "b"))


def test_concat_rejects_mixed_carriers():
    with pytest.raises(CarrierMismatchError):
        concat(Word(("a",), "M"), Word(("b",), "K"))
    with pytest.raises(CarrierMismatchError):
        as_word(Word(("a",), "M"), "K")


def test_unbound_words_take_the_carrier_of_the_other_side():
    assert concat(Word(("a",)), Word(("b",), "M")).carrier == "M"


def test_power_examples():
    assert power(Word(("a",)), 3) == Word(("a", "a", "a"))
    assert power(Word(("a", "b")), 0) == EMPTY
    assert power(EMPTY, 5) == EMPTY
    with pytest.raises(InvalidInputError):
        power(Word(("a",)), -1)


def test_invert_word_examples():
    assert invert_word(Word(("g", "h")), {"g": "G", "h": "H"}) == Word(("H", "G"))
    assert invert_word(EMPTY, {}) == EMPTY
    with pytest.raises(UnknownElementError):
        invert_word(Word(("z",)), {})


def test_invert_word_in_the_six_element_product():
    L = cyclic_by_inversion().L
    w = Word((("x", "1"), ("1", "a")))
    assert invert_word(w, L.inverse) == Word((("1", "a^2"), ("x", "1")))


def test_words_up_to_counts():
    assert [len(list(words_up_to("ab", n))) for n in range(4)] == [1, 3, 7, 15]


@given(words)
def test_inversion_is_involutory(w):
    assert invert_word(invert_word(w, INV), INV) == w


@given(words, words)
def test_inversion_reverses_concatenation(u, v):
    assert invert_word(concat(u, v), INV) == concat(invert_word(v, INV), invert_word(u, INV))


@given(words, st.integers(0, 5))
def test_power_length(u, k):
    assert len(power(u, k)) == k * len(u)


@given(words, words, words)
def test_concatenation_is_associative(u, v, w):
    assert concat(concat(u, v), w) == concat(u, concat(v, w))
