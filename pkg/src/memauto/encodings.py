"""Letter renamings and the LaMA→ν, ν→LaMA and HRA→LaMA encodings.

Two textual renaming schemes make the encodings concrete:

* layer renaming: letter ``u`` becomes ``u~1 ... u~n``, one copy per layer;
* occurrence renaming: the j-th occurrence of ``u`` becomes ``u#(j-1) u#j``.

The separators ``~`` and ``#`` are reserved and rejected in input letters.
"""

from __future__ import annotations

from memauto.automata import (
    AnyLetter,
    Hra,
    HraEps,
    Lama,
    LamaObs,
    Mode,
    NuAutomaton,
    Read,
    Reset,
    Write,
    check_valid,
)
from memauto.core import Letter, MemoryContext, VariableId
from memauto.errors import FormatError, UsageError

XI_SEP = "~"
ZETA_SEP = "#"


def _check_sep(letters, sep):
    for u in letters:
        if sep in u:
            raise FormatError(f"letter {u!r} contains the reserved separator {sep!r}")


def xi_letter(u, layer: int) -> Letter:
    return Letter(f"{u}{XI_SEP}{layer}")


def xi_rename(w, n: int) -> tuple:
    """Replace every letter ``u`` by ``u~1 ... u~n``."""
    if n < 1:
        raise UsageError("layer count must be >= 1")
    w = tuple(w)
    _check_sep(w, XI_SEP)
    return tuple(xi_letter(u, l) for u in w for l in range(1, n + 1))


def zeta_letter(u, index: int) -> Letter:
    return Letter(f"{u}{ZETA_SEP}{index}")


def zeta_rename(w) -> tuple:
    """Replace the j-th occurrence of ``u`` by ``u#(j-1) u#j``."""
    w = tuple(w)
    _check_sep(w, ZETA_SEP)
    seen = {}
    out = []
    for u in w:
        j = seen.get(u, 0) + 1
        seen[u] = j
        out += (zeta_letter(u, j - 1), zeta_letter(u, j))
    return tuple(out)


def _fresh_state(base, taken):
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


# ------------------------------------------------------------ LaMA -> ν


def xi_variable(var: VariableId, n: int) -> VariableId:
    """ν variable standing for LaMA variable ``var`` (qualified when n > 1)."""
    return VariableId(var.name if n == 1 else f"{var.name}^{var.layer}")


def lama_to_nu(A: Lama) -> NuAutomaton:
    """Encode an n-LaMA as a ν-automaton reading layer-renamed words.

    Each observable transition becomes a chain of n steps, step l handling
    layer l; resets are copied.  Initial letters of layer-l variables are
    renamed to their l-th component.
    """
    check_valid(A)
    n = A.layers
    _check_sep(A.initial_memory.letters(), XI_SEP)
    rename = {v: xi_variable(v, n) for v in A.variables}
    states = list(A.states)
    taken = set(states)
    transitions = []
    for i, t in enumerate(A.transitions):
        if isinstance(t, Reset):
            transitions.append(Reset(t.source, {rename[v] for v in t.vars}, t.target))
            continue
        chain = [t.source]
        for l in range(1, n):
            q = _fresh_state(f"{t.source}.t{i}.{l}", taken)
            states.append(q)
            chain.append(q)
        chain.append(t.target)
        for l in range(1, n + 1):
            p, q = chain[l - 1], chain[l]
            entry = t.at(l)
            if entry is None:
                transitions.append(AnyLetter(p, q))
            elif entry[1] is Mode.R:
                transitions.append(Read(p, rename[entry[0]], q))
            else:
                transitions.append(Write(p, rename[entry[0]], q))
    memory = {rename[v]: {xi_letter(u, v.layer) for u in s} for v, s in A.initial_memory.items()}
    return NuAutomaton(
        states=states,
        initial=A.initial,
        finals=A.finals,
        initial_memory=MemoryContext(memory),
        transitions=transitions,
        variables=[rename[v] for v in A.variables],
    )


def nu_to_lama(A: NuAutomaton) -> Lama:
    """View a ν-automaton as a 1-LaMA."""
    check_valid(A)
    transitions = []
    for t in A.transitions:
        if isinstance(t, Read):
            transitions.append(LamaObs(t.source, [(1, t.var, Mode.R)], t.target))
        elif isinstance(t, Write):
            transitions.append(LamaObs(t.source, [(1, t.var, Mode.W)], t.target))
        elif isinstance(t, AnyLetter):
            transitions.append(LamaObs(t.source, (), t.target))
        else:
            transitions.append(t)
    return Lama(
        states=A.states,
        initial=A.initial,
        finals=A.finals,
        initial_memory=A.initial_memory,
        transitions=transitions,
        variables=A.variables,
        layers=1,
    )


# ------------------------------------------------------------ HRA -> LaMA


def _omega_name(histories) -> str:
    names = {h.name for h in histories}
    name = "ω"
    while name in names:
        name += "'"
    return name


def hra_layout(A: Hra):
    """``(history -> h^l, layer -> ω^l)`` for the encoding of ``A``."""
    omega = _omega_name(A.histories)
    hvar = {h: VariableId(h.name, l) for l, h in enumerate(A.histories, start=1)}
    wvar = {l: VariableId(omega, l) for l in range(1, len(A.histories) + 1)}
    return hvar, wvar


def hra_to_lama(A: Hra) -> Lama:
    """Encode an HRA with n histories as an n-LaMA over occurrence-renamed words.

    History ``h_l`` lives on layer l as ``h^l``, next to a scratch variable
    ``ω^l``.  An observable transition is split in two through a new state:
    the first step checks the letter's previous occurrence index (read
    ``h^l`` when ``h_l`` must hold it, otherwise write it to ``ω^l``, which
    proves absence from ``h^l``); the second stores the new occurrence index
    in the written histories.
    """
    check_valid(A)
    _check_sep(A.initial_memory.letters(), ZETA_SEP)
    hvar, wvar = hra_layout(A)
    n = len(A.histories)
    states = list(A.states)
    taken = set(states)
    transitions = []
    for i, t in enumerate(A.transitions):
        if isinstance(t, HraEps):
            transitions.append(Reset(t.source, {hvar[h] for h in t.reset}, t.target))
            continue
        mid = _fresh_state(f"{t.source}.t{i}", taken)
        states.append(mid)
        check = []
        store = []
        for l, h in enumerate(A.histories, start=1):
            if h in t.read:
                check.append((l, hvar[h], Mode.R))
            else:
                check.append((l, wvar[l], Mode.W))
            if h in t.write:
                store.append((l, hvar[h], Mode.W))
        transitions.append(LamaObs(t.source, check, mid))
        transitions.append(LamaObs(mid, store, t.target))
    memory = {hvar[h]: {zeta_letter(u, 0) for u in A.initial_memory[h]} for h in A.histories}
    memory.update({wvar[l]: () for l in wvar})
    variables = []
    for l, h in enumerate(A.histories, start=1):
        variables += [hvar[h], wvar[l]]
    return Lama(
        states=states,
        initial=A.initial,
        finals=A.finals,
        initial_memory=MemoryContext(memory),
        transitions=transitions,
        variables=variables,
        layers=max(n, 1),
    )


def _zeta_base(letter):
    base, sep, idx = str(letter).rpartition(ZETA_SEP)
    if not sep or not idx.isdigit():
        return None
    return base


def is_well_formed(M_enc: MemoryContext, w, M: MemoryContext, H) -> bool:
    """Does encoded context ``M_enc`` mirror HRA context ``M`` after ``w``?

    ``H`` is the ordered history list (history l sits on layer l).  For each
    letter u and history h_l: u ∈ M(h_l) iff ``M_enc(h^l)`` holds u's latest
    occurrence code (``u#k`` after k occurrences in ``w``, ``u#0`` when absent).
    """
    H = list(H)
    if set(M) != set(H):
        raise UsageError("HRA context does not range over the given histories")
    hvar = {h: VariableId(h.name, l) for l, h in enumerate(H, start=1)}
    for v in hvar.values():
        if v not in M_enc:
            raise UsageError(f"encoded context lacks variable {v}")
    w = tuple(w)
    counts = {}
    for u in w:
        counts[u] = counts.get(u, 0) + 1
    universe = set(w) | set(M.letters())
    for v in hvar.values():
        for code in M_enc[v]:
            base = _zeta_base(code)
            if base is not None:
                universe.add(base)
    for h in H:
        enc = M_enc[hvar[h]]
        for u in universe:
            code = zeta_letter(u, counts.get(u, 0))
            if (u in M[h]) != (code in enc):
                return False
    return True
