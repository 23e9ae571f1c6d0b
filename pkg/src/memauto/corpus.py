"""Reference machines: the L2∩L3 LaMA, the odd/even HRA and a LaMA family
whose shortest accepted words have doubly exponential length."""

from __future__ import annotations

import re

from memauto.automata import Hra, HraObs, Lama, LamaObs, Mode, Reset
from memauto.core import Letter, VariableId
from memauto.errors import UsageError

EXAMPLE_IDS = ("fig2_lp", "fig3_hra", "double_exp(n)")
DOUBLE_EXP_WITNESS_RANGE = (3, 5)


def fig2_lp() -> Lama:
    """2-LaMA for words whose letters at even positions are pairwise distinct
    and whose letters at positions divisible by 3 are pairwise distinct."""
    X, Y = VariableId("X", 1), VariableId("Y", 2)
    W = Mode.W
    ts = [
        LamaObs("q1", (), "q2"),
        LamaObs("q2", [(1, X, W)], "q3"),
        LamaObs("q3", [(2, Y, W)], "q4"),
        LamaObs("q4", [(1, X, W)], "q5"),
        LamaObs("q5", (), "q6"),
        LamaObs("q6", [(1, X, W), (2, Y, W)], "q1"),
    ]
    states = [f"q{i}" for i in range(1, 7)]
    return Lama(
        states=states,
        initial="q1",
        finals=states,
        initial_memory={},
        transitions=ts,
        variables=[X, Y],
        layers=2,
    )


def in_l2_l3(word) -> bool:
    """Direct definition: letters at positions that are multiples of p
    (1-based) are pairwise distinct, for p = 2 and p = 3."""
    for p in (2, 3):
        picked = [word[k - 1] for k in range(p, len(word) + 1, p)]
        if len(set(picked)) != len(picked):
            return False
    return True


def fig3_hra() -> Hra:
    """HRA storing a prefix of distinct letters by position parity, then
    accepting repetitions that alternate parity."""
    O, E = VariableId("O"), VariableId("E")
    ts = [
        HraObs("q_ow", (), {O}, "q_ew"),
        HraObs("q_ew", (), {E}, "q_ow"),
        HraObs("q_ow", {E}, {O}, "q_er"),
        HraObs("q_ew", {O}, {E}, "q_or"),
        HraObs("q_or", {E}, {O}, "q_er"),
        HraObs("q_er", {O}, {E}, "q_or"),
    ]
    return Hra(
        states=["q_ow", "q_ew", "q_er", "q_or"],
        initial="q_ow",
        finals=["q_er", "q_or"],
        initial_memory={},
        transitions=ts,
        histories=[O, E],
    )


def _dx_vars(n):
    X = VariableId("X", 1)
    Y, Z = VariableId("Y", 2), VariableId("Z", 2)
    A = {l: VariableId("A", l) for l in range(3, n + 1)}
    return X, Y, Z, A


def double_exp(n: int) -> Lama:
    """n-LaMA accepting only words with at least 2^(2^(n-2)) distinct letters.

    ``q0`` stores letters in X¹.  Each pass through ``q1..q3`` keeps at most
    half of them: they are split evenly between Y² and Z², X¹ is reset and
    refilled from Y².  States ``q4 .. q(2n-1)`` form a binary counter over
    A³..Aⁿ (level l tests at ``q(2l-2)``, increments through ``q(2l-1)``)
    that sends the run back to ``q1`` until 2^(n-2) passes are done; then
    ``q(2n)`` must still read a letter of X¹ to reach ``qf``.
    """
    if not isinstance(n, int) or n < 3:
        raise UsageError("double_exp needs n >= 3")
    X, Y, Z, A = _dx_vars(n)
    R, W = Mode.R, Mode.W
    qm = f"q{2 * n}"
    ts = [
        LamaObs("q0", [(1, X, W)], "q0"),
        Reset("q0", (), "q1"),
        LamaObs("q1", [(1, X, R), (2, Y, W)], "q2"),
        LamaObs("q2", [(1, X, R), (2, Z, W)], "q1"),
        Reset("q1", {X}, "q3"),
        LamaObs("q3", [(1, X, W), (2, Y, R)], "q3"),
        Reset("q3", {Y, Z}, "q4"),
    ]
    for l in range(3, n + 1):
        test, inc = f"q{2 * l - 2}", f"q{2 * l - 1}"
        nxt = qm if l == n else f"q{2 * l}"
        ts.append(LamaObs(test, [(l, A[l], W)], inc))
        ts.append(Reset(inc, {A[k] for k in range(3, l)}, "q1"))
        ts.append(LamaObs(test, [(l, A[l], R)], nxt))
    ts.append(LamaObs(qm, [(1, X, R)], "qf"))
    states = [f"q{i}" for i in range(2 * n + 1)] + ["qf"]
    return Lama(
        states=states,
        initial="q0",
        finals=["qf"],
        initial_memory={},
        transitions=ts,
        variables=[X, Y, Z, *A.values()],
        layers=n,
    )


def double_exp_word(n: int, phase1: int) -> tuple:
    """The word driving :func:`double_exp` with ``phase1`` stored letters.

    Letters ``u<i>`` are stored first; every pass reads them in pairs (one to
    Y², one to Z²) and replays the Y² half; counter levels use new letters
    ``a<j>``.  The last letter re-reads the first surviving stored letter
    (``u0`` when none survives).
    """
    if n < 3:
        raise UsageError("double_exp needs n >= 3")
    stored = [f"u{i}" for i in range(phase1)]
    word = list(stored)
    counter = {}
    fresh = 0
    while True:
        kept = stored[0 : len(stored) - len(stored) % 2 : 2]
        for i in range(len(stored) // 2):
            word += [stored[2 * i], stored[2 * i + 1]]
        word += kept
        stored = kept
        for l in range(3, n + 1):
            if l in counter:
                word.append(counter[l])
                continue
            counter[l] = f"a{fresh}"
            fresh += 1
            word.append(counter[l])
            for k in range(3, l):
                counter.pop(k, None)
            break
        else:
            word.append(stored[0] if stored else "u0")
            return tuple(Letter(u) for u in word)


def double_exp_witness(n: int) -> tuple:
    """Accepted word of :func:`double_exp` storing 2^(2^(n-2)) letters first."""
    lo, hi = DOUBLE_EXP_WITNESS_RANGE
    if not isinstance(n, int) or not lo <= n <= hi:
        raise UsageError(f"witnesses are generated for {lo} <= n <= {hi}")
    return double_exp_word(n, 2 ** (2 ** (n - 2)))


def halved_witness(n: int) -> tuple:
    """Same driving word with only half the required stored letters."""
    return double_exp_word(n, 2 ** (2 ** (n - 2)) // 2)


_DX = re.compile(r"double_exp\((\d+)\)$")


def example(name, n=None):
    """``fig2_lp``, ``fig3_hra``, ``double_exp(n)`` (or ``"double_exp", n``)."""
    if name == "fig2_lp":
        return fig2_lp()
    if name == "fig3_hra":
        return fig3_hra()
    if name == "double_exp" and n is not None:
        return double_exp(n)
    m = _DX.match(str(name))
    if m:
        return double_exp(int(m.group(1)))
    raise UsageError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_IDS)}")
