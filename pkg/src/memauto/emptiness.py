"""Non-emptiness of ν-automata through the key/token abstraction.

Writing is never blocking (the alphabet always has a fresh letter) while
reading needs the variable to be nonempty.  So it suffices to track, per
variable, whether its designated *key* letter is present: abstract states
are pairs ``(state, keys present)``, at most ``|Q|·2^|V|`` of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from memauto import kernels
from memauto.automata import AnyLetter, NuAutomaton, Read, Reset, Write, check_valid, with_initial_memory
from memauto.compiled import A_ANY, A_READ, A_RESET, A_WRITE, lower_abstract
from memauto.core import Letter, MemoryContext, fresh_letter
from memauto.errors import UsageError

KEY_PREFIX = "κ"

# edge labels of the abstract transition system
TOKEN = "token"
RESET = "reset"


@dataclass(frozen=True)
class KeyLabel:
    var: object

    def __str__(self):
        return f"key({self.var})"


@dataclass(frozen=True)
class KeyAssignment:
    key: dict  # VariableId -> Letter

    def __getitem__(self, v):
        return self.key[v]

    def letters(self) -> frozenset:
        return frozenset(self.key.values())


@dataclass(frozen=True)
class AbstractState:
    state: str
    keys_present: frozenset


class EmptinessVerdict(NamedTuple):
    nonempty: bool
    witness: Optional[tuple]
    explored_count: int

    @property
    def empty(self) -> bool:
        return not self.nonempty


def _require_nu(A):
    if not isinstance(A, NuAutomaton):
        raise UsageError(
            f"emptiness is decided for ν-automata only; {A.formalism} emptiness is not supported "
            "(open for LaMA, Ackermann-complete for HRA)"
        )
    check_valid(A)


def state_bound(A) -> int:
    """``|Q|·2^|V|``, the number of abstract states."""
    return len(A.states) * 2 ** len(A.variables)


def choose_keys(A: NuAutomaton) -> KeyAssignment:
    """Smallest letter of ``M0(v)``, or a new ``κ<k>`` when ``M0(v)`` is empty."""
    M0 = A.initial_memory
    used = set(M0.letters())
    key = {}
    for v in A.variables:
        if M0[v]:
            key[v] = min(M0[v])
        else:
            key[v] = fresh_letter(used, KEY_PREFIX)
            used.add(key[v])
    return KeyAssignment(key)


def canonicalize(A: NuAutomaton):
    """``(A', keys)`` where ``A'`` keeps only each nonempty variable's key."""
    _require_nu(A)
    keys = choose_keys(A)
    M0 = A.initial_memory
    mem = MemoryContext({v: ({keys[v]} if M0[v] else ()) for v in A.variables})
    return with_initial_memory(A, mem), keys


def initial_abstract_state(A) -> AbstractState:
    return AbstractState(A.initial, frozenset(v for v in A.variables if A.initial_memory[v]))


def fsm_successors(A, keys, s: AbstractState) -> set:
    """Labelled successors of abstract state ``s``.

    Labels: :class:`KeyLabel` (a key is read or written), ``TOKEN`` (a
    once-only letter is consumed) and ``RESET``.
    """
    out = set()
    m = s.keys_present
    for _i, t in A.outgoing(s.state):
        if isinstance(t, Read):
            if t.var in m:
                out.add((KeyLabel(t.var), AbstractState(t.target, m)))
        elif isinstance(t, Write):
            if t.var in m:
                out.add((TOKEN, AbstractState(t.target, m)))
            else:
                out.add((KeyLabel(t.var), AbstractState(t.target, m | {t.var})))
        elif isinstance(t, AnyLetter):
            out.add((TOKEN, AbstractState(t.target, m)))
        elif isinstance(t, Reset):
            out.add((RESET, AbstractState(t.target, m - t.vars)))
    return out


def witness_from_path(A, keys: KeyAssignment, prog, path) -> tuple:
    """Concrete word along an abstract path; every token is a new letter."""
    avoid = set(A.initial_memory.letters()) | keys.letters()
    m = prog.m0
    word = []
    for t in path:
        kd, bit = prog.kind[t], prog.var[t]
        if kd == A_READ:
            word.append(keys[prog.var_ids[bit]])
        elif kd == A_WRITE:
            if (m >> bit) & 1:
                tok = fresh_letter(avoid)
                avoid.add(tok)
                word.append(tok)
            else:
                word.append(keys[prog.var_ids[bit]])
                m |= 1 << bit
        elif kd == A_ANY:
            tok = fresh_letter(avoid)
            avoid.add(tok)
            word.append(tok)
        elif kd == A_RESET:
            m &= ~prog.rmask[t]
    return tuple(Letter(u) for u in word)


def _program(A):
    return lower_abstract(A, [v for v in A.variables if A.initial_memory[v]])


def decide_nonempty(A: NuAutomaton, backend=None, verify: bool = True) -> EmptinessVerdict:
    """Breadth-first reachability of a final abstract state.

    With ``verify`` the witness is replayed through exact membership.
    """
    _require_nu(A)
    keys = choose_keys(A)
    prog = _program(A)
    path, explored = kernels.abstract_search(prog, backend=backend)
    if path is None:
        return EmptinessVerdict(False, None, explored)
    word = witness_from_path(A, keys, prog, path)
    if verify:
        from memauto.membership import decide_membership

        if not decide_membership(A, word).accepted:  # pragma: no cover - would be a bug
            raise AssertionError(f"emptiness witness {' '.join(word)} is rejected")
    return EmptinessVerdict(True, word, explored)


class WalkResult(NamedTuple):
    found: bool
    witness: Optional[tuple]
    walks: int
    moves: int


def max_walk_steps(A) -> int:
    """Step budget of one walk: ``|Δ|·2^|V|``."""
    return max(1, len(A.transitions)) * 2 ** len(A.variables)


def random_walks(A: NuAutomaton, seed: int, max_restarts: int, backend=None) -> WalkResult:
    """Seeded random walks on the abstraction (one-sided: found ⇒ nonempty)."""
    _require_nu(A)
    if max_restarts < 1:
        raise UsageError("at least one walk is needed")
    prog = _program(A)
    bitgen = np.random.PCG64(seed)
    path, walks, moves = kernels.random_walk(prog, bitgen, max_walk_steps(A), max_restarts, backend=backend)
    if path is None:
        return WalkResult(False, None, walks, moves)
    return WalkResult(True, witness_from_path(A, choose_keys(A), prog, path), walks, moves)


def decide_nonempty_randomized(A: NuAutomaton, seed: int, max_restarts: int, backend=None) -> bool:
    """True only if some walk reached a final state; False means *unknown*."""
    return random_walks(A, seed, max_restarts, backend=backend).found
