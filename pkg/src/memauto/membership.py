"""Exact membership, run certificates and brute-force language oracles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional

from memauto import kernels
from memauto.automata import SILENT, check_valid, enabled, is_observable, step
from memauto.compiled import lower
from memauto.core import Configuration, Letter, MemoryContext
from memauto.errors import FormatError, UsageError


@dataclass(frozen=True)
class Step:
    transition_index: int
    letter: Optional[Letter]  # None for a non-observable step


@dataclass(frozen=True)
class Run:
    """``s0 t1 s1 ... tm sm``: ``len(configurations) == len(steps) + 1``."""

    configurations: tuple
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "configurations", tuple(self.configurations))
        object.__setattr__(self, "steps", tuple(self.steps))
        if len(self.configurations) != len(self.steps) + 1:
            raise UsageError("a run alternates configurations and steps, starting and ending with a configuration")

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def word(self) -> tuple:
        return tuple(s.letter for s in self.steps if s.letter is not None)

    def to_json(self, A) -> list:
        from memauto.serialize import VarResolver

        label = VarResolver(A.memory_ids).label
        out = []
        for i, c in enumerate(self.configurations):
            if i:
                s = self.steps[i - 1]
                out.append({"transition_index": s.transition_index, "letter": s.letter})
            out.append({"state": c.state, "memory": {label(v): sorted(ls) for v, ls in c.memory.items()}})
        return out

    @classmethod
    def from_json(cls, A, doc) -> "Run":
        from memauto.serialize import VarResolver

        resolve = VarResolver(A.memory_ids)
        if not isinstance(doc, list) or len(doc) % 2 != 1:
            raise FormatError("a run is an odd-length JSON array")
        configs, steps = [], []
        try:
            for i, item in enumerate(doc):
                path = f"$[{i}]"
                if i % 2 == 0:
                    if set(item) != {"state", "memory"}:
                        raise FormatError(f"{path}: expected fields state and memory")
                    mem = {resolve(k, f"{path}.memory.{k}"): v for k, v in item["memory"].items()}
                    configs.append(Configuration(item["state"], MemoryContext(mem)))
                else:
                    if set(item) != {"transition_index", "letter"}:
                        raise FormatError(f"{path}: expected fields transition_index and letter")
                    k = item["transition_index"]
                    if not isinstance(k, int) or isinstance(k, bool):
                        raise FormatError(f"{path}.transition_index: expected an integer")
                    u = item["letter"]
                    steps.append(Step(k, None if u is None else Letter(u)))
        except (TypeError, AttributeError) as exc:
            raise FormatError(f"malformed run: {exc}") from None
        return cls(configs, steps)


class Membership(NamedTuple):
    accepted: bool
    witness: Optional[Run]


class CertificateCheck(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def _replay(A, w, path) -> Run:
    c = A.initial_configuration()
    configs, steps = [c], []
    pos = 0
    for k in path:
        t = A.transitions[k]
        if isinstance(t, SILENT):
            u = None
        else:
            u = w[pos]
            pos += 1
        c = step(A, c, t, u)
        if c is None:  # the kernel and the reference semantics disagree
            raise AssertionError(f"kernel path fires disabled transition {k}")
        configs.append(c)
        steps.append(Step(k, u))
    return Run(configs, steps)


def decide_membership(A, w, backend=None, stats=None) -> Membership:
    """Is ``w`` accepted by ``A``?  The witness is a shortest accepting run.

    ``stats``, when a dict, receives the number of explored search nodes.
    """
    check_valid(A)
    w = tuple(Letter(u) for u in w)
    prog = lower(A)
    letters = list(dict.fromkeys(w))
    slot = {u: i for i, u in enumerate(letters)}
    mem0 = prog.vectors(A.initial_memory, letters)
    path, explored = kernels.membership_search(prog, [slot[u] for u in w], mem0, backend=backend)
    if stats is not None:
        stats["explored"] = explored
    if path is None:
        return Membership(False, None)
    return Membership(True, _replay(A, w, path))


def certificate_bound(A, w) -> int:
    """Longest admissible certificate: ``|w| + |w|·|Q|·|V|``."""
    n = len(w)
    return n + n * len(A.states) * len(A.memory_ids)


def check_certificate(A, w, run: Run) -> CertificateCheck:
    """Verify ``run`` as an NP certificate for ``w ∈ L(A)``."""
    w = tuple(w)
    bound = certificate_bound(A, w)
    if run.length > bound:
        return CertificateCheck(False, f"run has {run.length} transitions, bound is {bound}")
    if not run.configurations or run.configurations[0] != A.initial_configuration():
        return CertificateCheck(False, "run does not start in the initial configuration")
    pos = 0
    for i, s in enumerate(run.steps):
        if not 0 <= s.transition_index < len(A.transitions):
            return CertificateCheck(False, f"step {i + 1}: no transition {s.transition_index}")
        t = A.transitions[s.transition_index]
        before, after = run.configurations[i], run.configurations[i + 1]
        if t.source != before.state:
            return CertificateCheck(False, f"step {i + 1}: transition {s.transition_index} does not leave {before.state!r}")
        if is_observable(t):
            if s.letter is None:
                return CertificateCheck(False, f"step {i + 1}: observable transition without a letter")
            if pos >= len(w) or w[pos] != s.letter:
                return CertificateCheck(False, f"step {i + 1}: letter {s.letter} does not match the word")
            pos += 1
        elif s.letter is not None:
            return CertificateCheck(False, f"step {i + 1}: non-observable transition consumes a letter")
        nxt = step(A, before, t, s.letter)
        if nxt is None:
            return CertificateCheck(False, f"step {i + 1}: transition {s.transition_index} is not enabled")
        if nxt != after:
            return CertificateCheck(False, f"step {i + 1}: configuration differs from the transition's result")
    if pos != len(w):
        return CertificateCheck(False, f"run consumes {pos} of {len(w)} letters")
    last = run.configurations[-1].state
    if last not in A.finals:
        return CertificateCheck(False, f"run ends in non-final state {last!r}")
    return CertificateCheck(True, "ok")


# ------------------------------------------------------------- oracles


def eps_closure(A, configs) -> frozenset:
    seen = set(configs)
    stack = list(seen)
    while stack:
        c = stack.pop()
        for _i, nxt in enabled(A, c, None):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


def _advance(A, configs, u) -> frozenset:
    out = set()
    for c in configs:
        for _i, nxt in enabled(A, c, u):
            out.add(nxt)
    return eps_closure(A, out)


def accepts_by_simulation(A, w) -> bool:
    """Subset simulation with the reference step functions (no kernels)."""
    current = eps_closure(A, [A.initial_configuration()])
    for u in w:
        current = _advance(A, current, Letter(u))
        if not current:
            return False
    return any(c.state in A.finals for c in current)


def enumerate_language(A, max_len: int, letter_pool) -> set:
    """All words over ``letter_pool`` of length ``<= max_len`` in ``L(A)``.

    Prefixes are extended only while some run survives them.
    """
    check_valid(A)
    pool = sorted({Letter(u) for u in letter_pool})
    found = set()
    frontier = [((), eps_closure(A, [A.initial_configuration()]))]
    for depth in range(max_len + 1):
        nxt = []
        for word, configs in frontier:
            if any(c.state in A.finals for c in configs):
                found.add(word)
            if depth == max_len:
                continue
            for u in pool:
                after = _advance(A, configs, u)
                if after:
                    nxt.append((word + (u,), after))
        frontier = nxt
    return found


def shortest_word(A, letter_pool, max_steps: Optional[int] = None) -> Optional[tuple]:
    """Shortest word over ``letter_pool`` accepted by ``A``, or None.

    Breadth-first over concrete configurations; exhaustive when the pool is
    finite (memories then range over finitely many contexts).  ``max_steps``
    caps the number of observable steps explored.
    """
    check_valid(A)
    pool = sorted({Letter(u) for u in letter_pool})
    start = A.initial_configuration()
    seen = {start: None}
    layer = deque()
    for c in eps_closure(A, [start]):
        if c not in seen:
            seen[c] = (start, None)
        layer.append(c)
    depth = 0
    while layer:
        for c in layer:
            if c.state in A.finals:
                return _letters_to(seen, c)
        if max_steps is not None and depth >= max_steps:
            return None
        nxt = deque()
        for c in layer:
            for u in pool:
                for _i, d in enabled(A, c, u):
                    if d in seen:
                        continue
                    seen[d] = (c, u)
                    nxt.append(d)
                    for e in eps_closure(A, [d]):
                        if e not in seen:
                            seen[e] = (d, None)
                            nxt.append(e)
        layer = nxt
        depth += 1
    return None


def _letters_to(seen, c) -> tuple:
    out = []
    while seen[c] is not None:
        c, u = seen[c]
        if u is not None:
            out.append(u)
    return tuple(reversed(out))
