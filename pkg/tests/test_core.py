import pytest
from hypothesis import given
from hypothesis import strategies as st

from memauto.core import (
    Letter,
    MemoryContext,
    VariableId,
    apply_reset,
    format_word,
    fresh_letter,
    intern_letter,
    layer_injective,
    parse_word,
)
from memauto.errors import DomainError, FormatError

X, Y = VariableId("X"), VariableId("Y")


def test_intern_letter():
    assert intern_letter("a") == Letter("a")
    assert intern_letter("a") is intern_letter("a")
    assert Letter("a").symbol == "a"


@pytest.mark.parametrize("bad", ["", "a b", "a\tb", "x\n"])
def test_intern_letter_rejects(bad):
    with pytest.raises(FormatError):
        intern_letter(bad)


def test_fresh_letter():
    assert fresh_letter(set()) == "τ0"
    assert fresh_letter({"τ0"}) == "τ1"
    assert fresh_letter({"a", "b"}) == "τ0"
    assert fresh_letter({"κ0"}, prefix="κ") == "κ1"


@given(st.sets(st.text(min_size=1, max_size=3).filter(lambda s: not any(c.isspace() for c in s))))
def test_fresh_letter_avoids(avoid):
    assert fresh_letter(avoid) not in avoid


def test_words():
    assert parse_word("a b a c a") == tuple(map(Letter, "abaca"))
    assert parse_word("") == ()
    assert format_word(parse_word("a  b")) == "a b"
    with pytest.raises(FormatError):
        parse_word("a\nb")


def test_variable_id():
    assert str(VariableId("X", 2)) == "X^2"
    assert str(VariableId("X")) == "X"
    with pytest.raises(FormatError):
        VariableId("X", 0)


def test_layer_injective():
    A1, B1 = VariableId("A", 1), VariableId("B", 1)
    assert layer_injective(MemoryContext({A1: {"a"}, B1: {"b"}}), 1)
    assert not layer_injective(MemoryContext({A1: {"a"}, B1: {"a"}}), 1)
    assert layer_injective(MemoryContext({A1: (), B1: ()}), 1)
    with pytest.raises(DomainError):
        layer_injective(MemoryContext({A1: ()}), 2)


def test_apply_reset():
    M = MemoryContext({X: {"a"}, Y: {"b"}})
    assert apply_reset(MemoryContext({X: {"a"}}), {X}) == MemoryContext({X: ()})
    assert apply_reset(M, set()) == M
    assert apply_reset(M, {Y}) == MemoryContext({X: {"a"}, Y: ()})
    assert M[Y] == {"b"}  # input untouched
    with pytest.raises(DomainError):
        apply_reset(M, {VariableId("Z")})


letters = st.sets(st.sampled_from("abcd"))


@given(letters, letters, st.sets(st.sampled_from([X, Y])))
def test_reset_idempotent(a, b, rset):
    M = MemoryContext({X: a, Y: b})
    once = apply_reset(M, rset)
    assert apply_reset(once, rset) == once


@given(letters, letters)
def test_memory_extensional(a, b):
    M1 = MemoryContext({X: a, Y: b})
    M2 = MemoryContext({Y: set(b), X: list(a)})
    assert M1 == M2 and hash(M1) == hash(M2)


def test_memory_queries():
    M = MemoryContext({X: {"a", "b"}, Y: {"b"}})
    assert M.holders("b") == {X, Y}
    assert M.letters() == {"a", "b"}
    assert M.to_plain() == {"X": ["a", "b"], "Y": ["b"]}
    with pytest.raises(DomainError):
        M[VariableId("Z")]
