"""Syntax, validation and one-step semantics of ν-automata, n-LaMA and HRA.

Transitions are plain frozen dataclasses.  Each automaton keeps them in a
tuple (the position is the *transition index* used by run certificates) and
indexes them by source state on first use.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Optional, Union

from memauto.core import (
    Configuration,
    Letter,
    MemoryContext,
    VariableId,
    apply_reset,
    layer_injective,
)
from memauto.errors import UsageError


class Mode(enum.Enum):
    R = "r"
    W = "w"


def _vars(items) -> frozenset:
    return frozenset(v if isinstance(v, VariableId) else VariableId(v) for v in items)


# ---------------------------------------------------------------- transitions


@dataclass(frozen=True)
class Read:
    source: str
    var: VariableId
    target: str


@dataclass(frozen=True)
class Write:
    source: str
    var: VariableId
    target: str


@dataclass(frozen=True)
class AnyLetter:
    """Observable transition enabled by every letter; memory untouched."""

    source: str
    target: str


@dataclass(frozen=True)
class Reset:
    """Non-observable transition emptying ``vars`` (ν and LaMA)."""

    source: str
    vars: frozenset
    target: str

    def __post_init__(self):
        object.__setattr__(self, "vars", _vars(self.vars))


@dataclass(frozen=True)
class LamaObs:
    """Observable LaMA transition.

    ``alpha`` lists ``(layer, variable, mode)`` for the examined layers,
    sorted by layer; layers that do not appear carry ♯.  A mapping
    ``{layer: (var, mode)}`` is accepted on construction, with ``None``
    standing for ♯ and modes given as :class:`Mode` or ``"r"``/``"w"``.
    """

    source: str
    alpha: tuple
    target: str

    def __post_init__(self):
        alpha = self.alpha
        if isinstance(alpha, Mapping):
            alpha = [(l, *e) for l, e in alpha.items() if e is not None]
        norm = []
        for layer, var, mode in alpha:
            if not isinstance(var, VariableId):
                var = VariableId(var, layer)
            norm.append((int(layer), var, Mode(mode)))
        norm.sort(key=lambda e: e[0])
        object.__setattr__(self, "alpha", tuple(norm))

    def at(self, layer: int):
        """``(var, mode)`` examined on ``layer``, or None for ♯."""
        for l, var, mode in self.alpha:
            if l == layer:
                return var, mode
        return None


@dataclass(frozen=True)
class HraObs:
    source: str
    read: frozenset
    write: frozenset
    target: str

    def __post_init__(self):
        object.__setattr__(self, "read", _vars(self.read))
        object.__setattr__(self, "write", _vars(self.write))


@dataclass(frozen=True)
class HraEps:
    source: str
    reset: frozenset
    target: str

    def __post_init__(self):
        object.__setattr__(self, "reset", _vars(self.reset))


NuTransition = Union[Read, Write, AnyLetter, Reset]
LamaTransition = Union[LamaObs, Reset]
HraTransition = Union[HraObs, HraEps]

OBSERVABLE = (Read, Write, AnyLetter, LamaObs, HraObs)
SILENT = (Reset, HraEps)


def is_observable(t) -> bool:
    return isinstance(t, OBSERVABLE)


def reset_set(t) -> frozenset:
    return t.reset if isinstance(t, HraEps) else t.vars


# ----------------------------------------------------------------- automata


@dataclass(frozen=True)
class _Automaton:
    states: tuple
    initial: str
    finals: frozenset
    initial_memory: MemoryContext
    transitions: tuple
    _out: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    formalism = ""

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        mem = self.initial_memory
        if not isinstance(mem, MemoryContext):
            mem = MemoryContext(
                {(v if isinstance(v, VariableId) else VariableId(v)): s for v, s in (mem or {}).items()}
            )
        # unmentioned variables start empty
        missing = [v for v in self.memory_ids if v not in mem]
        if missing:
            mem = MemoryContext({**dict(mem), **{v: () for v in missing}})
        object.__setattr__(self, "initial_memory", mem)

    @property
    def memory_ids(self) -> tuple:
        raise NotImplementedError

    def outgoing(self, state) -> tuple:
        """``((index, transition), ...)`` leaving ``state``, in index order."""
        if self._out is None:
            out = {}
            for i, t in enumerate(self.transitions):
                out.setdefault(t.source, []).append((i, t))
            object.__setattr__(self, "_out", {q: tuple(ts) for q, ts in out.items()})
        return self._out.get(state, ())

    def initial_configuration(self) -> Configuration:
        return Configuration(self.initial, self.initial_memory)

    @property
    def observable_transitions(self) -> tuple:
        return tuple(t for t in self.transitions if is_observable(t))


@dataclass(frozen=True)
class NuAutomaton(_Automaton):
    variables: tuple = ()

    formalism = "nu"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(_vars_ordered(self.variables)))
        super().__post_init__()

    @property
    def memory_ids(self):
        return self.variables


@dataclass(frozen=True)
class Lama(_Automaton):
    variables: tuple = ()
    layers: int = 1

    formalism = "lama"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(_vars_ordered(self.variables)))
        super().__post_init__()

    @property
    def memory_ids(self):
        return self.variables

    def layer_vars(self, layer: int) -> tuple:
        return tuple(v for v in self.variables if v.layer == layer)


@dataclass(frozen=True)
class Hra(_Automaton):
    histories: tuple = ()

    formalism = "hra"

    def __post_init__(self):
        object.__setattr__(self, "histories", tuple(_vars_ordered(self.histories)))
        super().__post_init__()

    @property
    def memory_ids(self):
        return self.histories


Automaton = Union[NuAutomaton, Lama, Hra]


def _vars_ordered(items) -> list:
    return [v if isinstance(v, VariableId) else VariableId(v) for v in items]


# --------------------------------------------------------------- validation


def validate(automaton) -> list:
    """List every violated structural invariant; empty iff well formed."""
    out = []
    A = automaton
    Q = set(A.states)
    if len(Q) != len(A.states):
        out.append("duplicate state names")
    if A.initial not in Q:
        out.append(f"initial state {A.initial!r} is not a state")
    for q in sorted(A.finals - Q):
        out.append(f"final state {q!r} is not a state")
    ids = A.memory_ids
    idset = set(ids)
    if len(idset) != len(ids):
        out.append("duplicate variable declarations")
    mem = A.initial_memory
    for v in mem:
        if v not in idset:
            out.append(f"initial memory mentions undeclared variable {v}")

    kinds = {
        "nu": (Read, Write, AnyLetter, Reset),
        "lama": (LamaObs, Reset),
        "hra": (HraObs, HraEps),
    }[A.formalism]
    for i, t in enumerate(A.transitions):
        where = f"transition {i}"
        if not isinstance(t, kinds):
            out.append(f"{where}: {type(t).__name__} is not a {A.formalism} transition")
            continue
        for end in (t.source, t.target):
            if end not in Q:
                out.append(f"{where}: endpoint {end!r} is not a state")
        if isinstance(t, (Read, Write)) and t.var not in idset:
            out.append(f"{where}: unknown variable {t.var}")
        elif isinstance(t, (Reset, HraEps)):
            for v in sorted(reset_set(t) - idset):
                out.append(f"{where}: resets unknown variable {v}")
        elif isinstance(t, HraObs):
            for v in sorted((t.read | t.write) - idset):
                out.append(f"{where}: unknown history {v}")
        elif isinstance(t, LamaObs):
            layers_seen = set()
            for layer, var, _mode in t.alpha:
                if not 1 <= layer <= A.layers:
                    out.append(f"{where}: alpha names layer {layer} outside [1,{A.layers}]")
                if layer in layers_seen:
                    out.append(f"{where}: alpha defined twice on layer {layer}")
                layers_seen.add(layer)
                if var not in idset:
                    out.append(f"{where}: unknown variable {var}")
                elif var.layer != layer:
                    out.append(f"{where}: layer mismatch, alpha({layer}) examines {var}")

    if A.formalism == "nu":
        for v in ids:
            if v.layer != 1:
                out.append(f"variable {v} of a ν-automaton must be on layer 1")
        if ids and not layer_injective(_restrict(mem, idset), 1):
            out.append(f"initial memory is not injective: {_shared(mem, ids)}")
    elif A.formalism == "lama":
        if A.layers < 1:
            out.append("layer count must be >= 1")
        for v in ids:
            if not 1 <= v.layer <= A.layers:
                out.append(f"variable {v} lies outside layers [1,{A.layers}]")
        for layer in sorted({v.layer for v in ids}):
            layer_ids = [v for v in ids if v.layer == layer]
            if not layer_injective(_restrict(mem, set(layer_ids)), layer):
                out.append(f"initial memory is not injective on layer {layer}: {_shared(mem, layer_ids)}")
    else:
        for v in ids:
            if v.layer != 1:
                out.append(f"history {v} must be declared on layer 1")
    return out


def _restrict(mem, keep) -> MemoryContext:
    return MemoryContext({v: s for v, s in mem.items() if v in keep})


def _shared(mem, ids) -> str:
    seen = {}
    clashes = []
    for v in ids:
        for u in sorted(mem[v]):
            if u in seen:
                clashes.append(f"{u} in {seen[u]} and {v}")
            else:
                seen[u] = v
    return "; ".join(clashes)


def check_valid(automaton):
    problems = validate(automaton)
    if problems:
        raise UsageError("invalid automaton: " + "; ".join(problems))


# ---------------------------------------------------------------- semantics


def _check_source(c: Configuration, t):
    if t.source != c.state:
        raise UsageError(f"transition leaves {t.source!r}, configuration is in {c.state!r}")


def step_obs_nu(A: NuAutomaton, c: Configuration, t, u) -> Optional[Configuration]:
    """Fire ν observable transition ``t`` on letter ``u``; None if disabled."""
    _check_source(c, t)
    M = c.memory
    if isinstance(t, AnyLetter):
        return Configuration(t.target, M)
    if isinstance(t, Read):
        return Configuration(t.target, M) if u in M[t.var] else None
    if isinstance(t, Write):
        # freshness is global in ν
        if any(u in s for s in M.values()):
            return None
        return Configuration(t.target, M.replace({t.var: M[t.var] | {Letter(u)}}))
    raise UsageError(f"{type(t).__name__} is not a ν observable transition")


def step_obs_lama(A: Lama, c: Configuration, t: LamaObs, u) -> Optional[Configuration]:
    """Fire LaMA transition ``t`` on ``u``.

    Every per-layer condition is checked against the pre-step memory, then
    all writes happen at once.
    """
    _check_source(c, t)
    if not isinstance(t, LamaObs):
        raise UsageError(f"{type(t).__name__} is not a LaMA observable transition")
    M = c.memory
    writes = []
    for layer, var, mode in t.alpha:
        if mode is Mode.R:
            if u not in M[var]:
                return None
        else:
            if any(u in M[v] for v in M if v.layer == layer):
                return None
            writes.append(var)
    if not writes:
        return Configuration(t.target, M)
    u = Letter(u)
    return Configuration(t.target, M.replace({v: M[v] | {u} for v in writes}))


def step_obs_hra(A: Hra, c: Configuration, t: HraObs, u) -> Optional[Configuration]:
    """Fire HRA transition ``t``: enabled iff ``u`` sits in exactly ``t.read``;
    afterwards ``u`` sits in exactly ``t.write``."""
    _check_source(c, t)
    if not isinstance(t, HraObs):
        raise UsageError(f"{type(t).__name__} is not an HRA observable transition")
    M = c.memory
    if M.holders(u) != t.read:
        return None
    u = Letter(u)
    updates = {h: (M[h] | {u}) if h in t.write else (M[h] - {u}) for h in M}
    return Configuration(t.target, M.replace(updates))


def step_eps(A, c: Configuration, t) -> Configuration:
    """Fire a reset-style transition (ν/LaMA ``Reset`` or HRA ``HraEps``)."""
    _check_source(c, t)
    if not isinstance(t, SILENT):
        raise UsageError(f"{type(t).__name__} is not a non-observable transition")
    return Configuration(t.target, apply_reset(c.memory, reset_set(t)))


def step(A, c: Configuration, t, u=None) -> Optional[Configuration]:
    """Fire any transition; ``u`` must be None exactly for silent ones."""
    if isinstance(t, SILENT):
        if u is not None:
            raise UsageError("a non-observable transition consumes no letter")
        return step_eps(A, c, t)
    if u is None:
        raise UsageError("an observable transition needs a letter")
    if A.formalism == "nu":
        return step_obs_nu(A, c, t, u)
    if A.formalism == "lama":
        return step_obs_lama(A, c, t, u)
    return step_obs_hra(A, c, t, u)


def enabled(A, c: Configuration, u=None):
    """Yield ``(index, successor)`` for every transition firing from ``c``.

    ``u=None`` means ε: only non-observable transitions are considered.
    """
    for i, t in A.outgoing(c.state):
        if u is None:
            if isinstance(t, SILENT):
                yield i, step_eps(A, c, t)
        elif not isinstance(t, SILENT):
            nxt = step(A, c, t, u)
            if nxt is not None:
                yield i, nxt


def successors(A, c: Configuration, u=None) -> frozenset:
    """Configurations reachable from ``c`` in one step on ``u`` (None = ε)."""
    return frozenset(nxt for _i, nxt in enabled(A, c, u))


def all_letters(automaton) -> frozenset:
    return automaton.initial_memory.letters()


def with_initial_memory(automaton, memory) -> "Automaton":
    """Copy of ``automaton`` with another initial memory context."""
    from dataclasses import replace

    return replace(automaton, initial_memory=memory)


def rename_letters(automaton, mapping: Mapping):
    """Apply a letter renaming to the initial memory (letters not in
    ``mapping`` are kept)."""
    M = automaton.initial_memory
    renamed = MemoryContext({v: {mapping.get(u, u) for u in s} for v, s in M.items()})
    return with_initial_memory(automaton, renamed)
