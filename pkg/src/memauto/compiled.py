"""Integer lowering of automata for the search kernels.

All three formalisms reduce to one observable-step rule once memory is kept
*per letter*: a letter ``u`` carries the bitmask ``vec(u)`` of variables
holding it.  An observable transition is enabled on ``u`` iff::

    vec & require == require  and  vec & forbid == 0

and leaves ``vec' = (vec & ~clear) | set``.  Silent transitions clear their
reset mask in every letter's vector.

=============  =========  ================  =========  =========
transition     require    forbid            set        clear
=============  =========  ================  =========  =========
ν Read v       {v}        ∅                 ∅          ∅
ν Write v      ∅          all               {v}        ∅
ν / LaMA ♯     ∅          ∅                 ∅          ∅
LaMA (v^l, R)  +{v}
LaMA (v^l, W)             +layer l          +{v}
HRA (Hr, Hw)   Hr         H \\ Hr            Hw         H
=============  =========  ================  =========  =========

Only letters of the input word need vectors: guards inspect the letter being
read, and the effects on one letter never depend on another.
"""

from __future__ import annotations

from dataclasses import dataclass

from memauto.automata import (
    AnyLetter,
    HraEps,
    HraObs,
    LamaObs,
    Mode,
    Read,
    Reset,
    Write,
    reset_set,
)

OBS, SILENT = 0, 1
A_READ, A_WRITE, A_ANY, A_RESET = 0, 1, 2, 3


@dataclass
class Program:
    state_names: list
    state_index: dict
    initial: int
    finals: list  # 0/1 per state
    var_ids: list
    var_bit: dict
    kind: list
    src: list
    dst: list
    req: list
    forb: list
    setm: list
    clr: list
    out_start: list  # CSR over transitions grouped by source
    out_idx: list

    @property
    def n_states(self) -> int:
        return len(self.state_names)

    @property
    def n_vars(self) -> int:
        return len(self.var_ids)

    def mask(self, variables) -> int:
        m = 0
        for v in variables:
            m |= 1 << self.var_bit[v]
        return m

    def vectors(self, memory, letters) -> list:
        """Per-letter holder masks of ``letters`` in ``memory``."""
        vec = {u: 0 for u in letters}
        for v, s in memory.items():
            bit = 1 << self.var_bit[v]
            for u in s:
                if u in vec:
                    vec[u] |= bit
        return [vec[u] for u in letters]


@dataclass
class AbstractProgram:
    """ν-automaton lowered for key/token reachability."""

    state_names: list
    initial: int
    finals: list
    var_ids: list
    kind: list  # A_READ / A_WRITE / A_ANY / A_RESET
    var: list  # bit index, -1 when not applicable
    rmask: list
    dst: list
    out_start: list
    out_idx: list
    m0: int

    @property
    def n_states(self) -> int:
        return len(self.state_names)

    @property
    def n_vars(self) -> int:
        return len(self.var_ids)


def _csr(n_states, src):
    buckets = [[] for _ in range(n_states)]
    for t, q in enumerate(src):
        buckets[q].append(t)
    start, idx = [0], []
    for b in buckets:
        idx.extend(b)
        start.append(len(idx))
    return start, idx


def lower(A) -> Program:
    """Lower a validated automaton; cached on the automaton object."""
    cached = A.__dict__.get("_program")
    if cached is not None:
        return cached
    names = list(A.states)
    index = {q: i for i, q in enumerate(names)}
    var_ids = list(A.memory_ids)
    var_bit = {v: i for i, v in enumerate(var_ids)}
    full = (1 << len(var_ids)) - 1

    def mask(vs):
        m = 0
        for v in vs:
            m |= 1 << var_bit[v]
        return m

    layer_mask = {}
    for v, i in var_bit.items():
        layer_mask[v.layer] = layer_mask.get(v.layer, 0) | (1 << i)

    kind, src, dst, req, forb, setm, clr = [], [], [], [], [], [], []
    for t in A.transitions:
        src.append(index[t.source])
        dst.append(index[t.target])
        r = f = s = c = 0
        k = OBS
        if isinstance(t, (Reset, HraEps)):
            k = SILENT
            c = mask(reset_set(t))
        elif isinstance(t, Read):
            r = 1 << var_bit[t.var]
        elif isinstance(t, Write):
            f = full
            s = 1 << var_bit[t.var]
        elif isinstance(t, AnyLetter):
            pass
        elif isinstance(t, LamaObs):
            for layer, var, mode in t.alpha:
                if mode is Mode.R:
                    r |= 1 << var_bit[var]
                else:
                    f |= layer_mask.get(layer, 0)
                    s |= 1 << var_bit[var]
        elif isinstance(t, HraObs):
            r = mask(t.read)
            f = full & ~r
            s = mask(t.write)
            c = full
        else:  # pragma: no cover - validate() rejects these
            raise TypeError(type(t).__name__)
        kind.append(k)
        req.append(r)
        forb.append(f)
        setm.append(s)
        clr.append(c)
    start, idx = _csr(len(names), src)
    prog = Program(
        state_names=names,
        state_index=index,
        initial=index[A.initial],
        finals=[1 if q in A.finals else 0 for q in names],
        var_ids=var_ids,
        var_bit=var_bit,
        kind=kind,
        src=src,
        dst=dst,
        req=req,
        forb=forb,
        setm=setm,
        clr=clr,
        out_start=start,
        out_idx=idx,
    )
    object.__setattr__(A, "_program", prog)
    return prog


def lower_abstract(A, m0_vars) -> AbstractProgram:
    """Lower a ν-automaton for the key-presence abstraction.

    ``m0_vars`` are the variables whose key is present initially.
    """
    names = list(A.states)
    index = {q: i for i, q in enumerate(names)}
    var_ids = list(A.variables)
    bit = {v: i for i, v in enumerate(var_ids)}
    kind, var, rmask, src, dst = [], [], [], [], []
    for t in A.transitions:
        src.append(index[t.source])
        dst.append(index[t.target])
        if isinstance(t, Read):
            kind.append(A_READ)
            var.append(bit[t.var])
            rmask.append(0)
        elif isinstance(t, Write):
            kind.append(A_WRITE)
            var.append(bit[t.var])
            rmask.append(0)
        elif isinstance(t, AnyLetter):
            kind.append(A_ANY)
            var.append(-1)
            rmask.append(0)
        else:
            kind.append(A_RESET)
            var.append(-1)
            m = 0
            for v in t.vars:
                m |= 1 << bit[v]
            rmask.append(m)
    start, idx = _csr(len(names), src)
    m0 = 0
    for v in m0_vars:
        m0 |= 1 << bit[v]
    return AbstractProgram(
        state_names=names,
        initial=index[A.initial],
        finals=[1 if q in A.finals else 0 for q in names],
        var_ids=var_ids,
        kind=kind,
        var=var,
        rmask=rmask,
        dst=dst,
        out_start=start,
        out_idx=idx,
        m0=m0,
    )
