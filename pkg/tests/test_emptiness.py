import random

import pytest

from memauto.automata import AnyLetter, NuAutomaton, Read, Reset, Write
from memauto.core import MemoryContext, VariableId
from memauto.corpus import fig2_lp, fig3_hra
from memauto.emptiness import (
    TOKEN,
    AbstractState,
    KeyLabel,
    canonicalize,
    decide_nonempty,
    decide_nonempty_randomized,
    fsm_successors,
    random_walks,
    state_bound,
)
from memauto.errors import UsageError
from memauto.membership import decide_membership, enumerate_language
from memauto.reductions import EXISTS, FORALL, Cnf, Qbf, reduce_tqbf
from randgen import random_nu

X, Y, v = VariableId("X"), VariableId("Y"), VariableId("v")


def nu(ts, finals=("f",), M0=None, states=("q", "r", "f"), variables=(v,)):
    return NuAutomaton(states=list(states), initial=states[0], finals=list(finals), initial_memory=M0 or {}, transitions=ts, variables=list(variables))


def test_canonicalize_keys():
    A = nu([], M0={X: {"b", "a"}, Y: ()}, variables=(X, Y))
    C, keys = canonicalize(A)
    assert C.initial_memory == MemoryContext({X: {"a"}, Y: ()})
    assert keys[X] == "a" and keys[Y] == "κ0"
    B = nu([], variables=(X, Y))
    C, keys = canonicalize(B)
    assert all(not s for s in C.initial_memory.values())
    assert keys[X] == "κ0" and keys[Y] == "κ1"


def test_canonical_language_included():
    for seed in range(40):
        A = random_nu(random.Random(seed))
        C, keys = canonicalize(A)
        for w in enumerate_language(C, 3, set(keys.letters()) | {"τ0"}):
            assert decide_membership(A, w).accepted


def test_fsm_successors():
    A = nu([Read("q", v, "r")])
    assert fsm_successors(A, None, AbstractState("q", frozenset())) == set()
    B = nu([Write("q", v, "r")])
    assert fsm_successors(B, None, AbstractState("q", frozenset())) == {(KeyLabel(v), AbstractState("r", frozenset({v})))}
    assert fsm_successors(B, None, AbstractState("q", frozenset({v}))) == {(TOKEN, AbstractState("r", frozenset({v})))}
    C = nu([AnyLetter("q", "r"), Reset("q", {v}, "f")])
    assert fsm_successors(C, None, AbstractState("q", frozenset({v}))) == {
        (TOKEN, AbstractState("r", frozenset({v}))),
        ("reset", AbstractState("f", frozenset())),
    }


def test_examples():
    assert decide_nonempty(nu([], finals=("q",))).witness == ()
    assert not decide_nonempty(nu([Read("q", v, "f")])).nonempty
    res = decide_nonempty(nu([Write("q", v, "r"), Read("r", v, "f")]))
    assert res.nonempty and " ".join(res.witness) == "κ0 κ0"


def test_tokens_used_once_and_fresh():
    A = nu([Write("q", v, "q"), AnyLetter("q", "r"), Write("r", v, "f")], M0={v: {"τ0"}})
    res = decide_nonempty(A)
    assert res.nonempty
    tokens = [u for u in res.witness if u.startswith("τ")]
    assert len(tokens) == len(set(tokens))
    assert "τ0" not in tokens


def test_tqbf_examples():
    assert not decide_nonempty(reduce_tqbf(Qbf([(FORALL, 1)], Cnf(1, [[1]])))).nonempty
    res = decide_nonempty(reduce_tqbf(Qbf([(EXISTS, 1)], Cnf(1, [[1]]))))
    assert res.nonempty and len(res.witness) == 2 and res.witness[0] == res.witness[1]


def test_only_nu():
    with pytest.raises(UsageError, match="ν-automata only"):
        decide_nonempty(fig2_lp())
    with pytest.raises(UsageError):
        decide_nonempty_randomized(fig3_hra(), 0, 10)


def test_random_walk():
    assert decide_nonempty_randomized(nu([], finals=("q",)), 0, 1)
    blocked = nu([Read("q", v, "f")])
    assert not any(decide_nonempty_randomized(blocked, s, 50) for s in range(10))
    two = nu([Write("q", v, "r"), Read("r", v, "f")])
    assert all(decide_nonempty_randomized(two, s, 100) for s in range(10))


def test_random_walk_is_seeded():
    A = random_nu(random.Random(3))
    assert random_walks(A, 7, 20) == random_walks(A, 7, 20)


def test_explored_within_bound_and_one_sided():
    for seed in range(100):
        A = random_nu(random.Random(seed))
        res = decide_nonempty(A)
        assert res.explored_count <= state_bound(A)
        if decide_nonempty_randomized(A, seed, 20):
            assert res.nonempty
