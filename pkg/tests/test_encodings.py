import itertools
import random

import pytest

from memauto.automata import AnyLetter, Hra, LamaObs, Mode, NuAutomaton, Read, Reset, Write, enabled, validate
from memauto.core import Letter, MemoryContext, VariableId, parse_word
from memauto.corpus import fig2_lp, fig3_hra
from memauto.encodings import hra_layout, hra_to_lama, is_well_formed, lama_to_nu, nu_to_lama, xi_rename, zeta_rename
from memauto.errors import FormatError, UsageError
from memauto.membership import decide_membership, eps_closure
from randgen import random_hra, random_lama, random_nu


def W(s):
    return parse_word(s)


def text(w):
    return " ".join(w)


def test_xi_rename():
    assert text(xi_rename(W("a b a"), 2)) == "a~1 a~2 b~1 b~2 a~1 a~2"
    assert text(xi_rename(W("a b"), 1)) == "a~1 b~1"
    assert xi_rename((), 2) == ()
    with pytest.raises(FormatError):
        xi_rename(W("a~1"), 2)


def test_zeta_rename():
    assert text(zeta_rename(W("a b a c a"))) == "a#0 a#1 b#0 b#1 a#1 a#2 c#0 c#1 a#2 a#3"
    assert text(zeta_rename(W("a b c a b b a"))) == "a#0 a#1 b#0 b#1 c#0 c#1 a#1 a#2 b#1 b#2 b#2 b#3 a#2 a#3"
    assert zeta_rename(()) == ()
    with pytest.raises(FormatError):
        zeta_rename(W("a#0"))


def test_lama_to_nu_fig2():
    F = fig2_lp()
    N = lama_to_nu(F)
    assert validate(N) == []
    assert len(N.states) == 12
    assert len(N.observable_transitions) == 12


def test_lama_to_nu_memory_and_base_case():
    X1, Y2 = VariableId("X", 1), VariableId("Y", 2)
    F = fig2_lp()
    from dataclasses import replace

    G = replace(F, initial_memory=MemoryContext({X1: {"a"}, Y2: ()}))
    N = lama_to_nu(G)
    assert N.initial_memory[VariableId("X^1")] == {"a~1"}
    one = nu_to_lama(NuAutomaton(states=["q"], initial="q", finals=[], initial_memory={}, transitions=[Read("q", VariableId("v"), "q")], variables=[VariableId("v")]))
    back = lama_to_nu(one)
    assert back.states == one.states
    assert back.transitions == (Read("q", VariableId("v"), "q"),)


def test_nu_to_lama_direct():
    v = VariableId("v")
    A = NuAutomaton(states=["q", "r"], initial="q", finals=["r"], initial_memory={}, transitions=[AnyLetter("q", "r"), Read("q", v, "r"), Write("r", v, "q"), Reset("r", {v}, "q")], variables=[v])
    L = nu_to_lama(A)
    assert L.layers == 1
    assert L.transitions[0] == LamaObs("q", {1: None}, "r")
    assert L.transitions[1] == LamaObs("q", {1: (v, Mode.R)}, "r")
    assert L.transitions[3] == A.transitions[3]


def test_nu_to_lama_membership():
    words = [w for k in range(4) for w in itertools.product("ab", repeat=k)]
    for seed in range(50):
        A = random_nu(random.Random(seed))
        L = nu_to_lama(A)
        for w in words:
            assert decide_membership(A, w).accepted == decide_membership(L, w).accepted


def test_hra_to_lama_fig3():
    L = hra_to_lama(fig3_hra())
    assert validate(L) == []
    assert len(L.states) == 10
    assert {str(v) for v in L.variables} == {"O", "ω", "E^2", "ω^2"}


def test_hra_to_lama_memory():
    O, E = VariableId("O"), VariableId("E")
    H = Hra(states=["q"], initial="q", finals=[], initial_memory={O: {"a"}}, transitions=[], histories=[O, E])
    L = hra_to_lama(H)
    M = L.initial_memory
    assert M[VariableId("O", 1)] == {"a#0"}
    assert M[VariableId("E", 2)] == frozenset()
    assert M[VariableId("ω", 1)] == frozenset() and M[VariableId("ω", 2)] == frozenset()


def test_hra_named_omega_is_renamed():
    w = VariableId("ω")
    H = Hra(states=["q"], initial="q", finals=[], initial_memory={}, transitions=[], histories=[w])
    L = hra_to_lama(H)
    assert validate(L) == []
    assert len({v for v in L.variables}) == 2


def test_fig3_round_trip():
    H = fig3_hra()
    L = hra_to_lama(H)
    for k in range(5):
        for w in itertools.product("ab", repeat=k):
            assert decide_membership(H, w).accepted == decide_membership(L, zeta_rename(w)).accepted


def test_size_bounds_random():
    for seed in range(40):
        A = random_lama(random.Random(seed))
        N = lama_to_nu(A)
        assert len(N.states) == len(A.states) + len(A.observable_transitions) * (A.layers - 1)
        H = random_hra(random.Random(seed))
        L = hra_to_lama(H)
        assert len(L.states) == len(H.states) + len(H.observable_transitions)
        assert len(L.variables) == 2 * len(H.histories)


def test_well_formed_examples():
    H = fig3_hra()
    O, E = VariableId("O"), VariableId("E")
    L = hra_to_lama(H)
    empty_enc = L.initial_memory
    assert is_well_formed(empty_enc, W("a b"), H.initial_memory, H.histories)
    O1 = VariableId("O", 1)
    enc = empty_enc.replace({O1: {"a#1"}})
    M = MemoryContext({O: {"a"}, E: ()})
    assert is_well_formed(enc, W("a"), M, H.histories)
    stale = empty_enc.replace({O1: {"a#0"}})
    assert not is_well_formed(stale, W("a"), M, H.histories)
    with pytest.raises(UsageError):
        is_well_formed(enc, W("a"), MemoryContext({O: ()}), H.histories)


def _lockstep(H, L, w):
    """Pair every HRA configuration after each prefix with an encoded one."""
    hv, _ = hra_layout(H)
    hra = eps_closure(H, [H.initial_configuration()])
    enc = eps_closure(L, [L.initial_configuration()])
    prefix = ()
    for u, (z1, z2) in zip(w, zip(zeta_rename(w)[0::2], zeta_rename(w)[1::2])):
        prefix += (u,)
        hra = eps_closure(H, {d for c in hra for _i, d in enabled(H, c, u)})
        mid = {d for c in enc for _i, d in enabled(L, c, z1)}
        enc = eps_closure(L, {d for c in mid for _i, d in enabled(L, c, z2)})
        for c in hra:
            assert any(e.state == c.state and is_well_formed(e.memory, prefix, c.memory, H.histories) for e in enc)
        for e in enc:
            if e.state in H.states:
                assert any(e.state == c.state and is_well_formed(e.memory, prefix, c.memory, H.histories) for c in hra)


def test_lockstep_well_formedness():
    words = [w for k in range(1, 5) for w in itertools.product(map(Letter, "ab"), repeat=k)]
    for seed in range(40):
        H = random_hra(random.Random(seed))
        L = hra_to_lama(H)
        for w in words:
            _lockstep(H, L, w)
