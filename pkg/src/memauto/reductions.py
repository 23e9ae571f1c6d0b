"""3SAT → LaMA membership and TQBF → ν-automaton emptiness constructions.

Also DIMACS / QDIMACS readers and brute-force SAT / QBF evaluators used as
oracles.  Variables of a formula are numbered ``1..n``; a literal is a
nonzero signed integer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from memauto.automata import Lama, LamaObs, Mode, NuAutomaton, Read, Reset, Write
from memauto.core import Letter, VariableId
from memauto.errors import FormatError, UsageError

EXISTS = "e"
FORALL = "a"

SAT_BRUTE_FORCE_LIMIT = 24
QBF_BRUTE_FORCE_LIMIT = 16


@dataclass(frozen=True)
class Cnf:
    num_vars: int
    clauses: tuple
    dropped_tautologies: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise FormatError(f"literal {lit} out of range 1..{self.num_vars}")


@dataclass(frozen=True)
class Qbf:
    prefix: tuple  # ((EXISTS | FORALL, var), ...) over 1..n in order
    matrix: Cnf

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple((q, int(v)) for q, v in self.prefix))
        for q, _v in self.prefix:
            if q not in (EXISTS, FORALL):
                raise FormatError(f"unknown quantifier {q!r}")
        if [v for _q, v in self.prefix] != list(range(1, len(self.prefix) + 1)):
            raise FormatError("the prefix must quantify variables 1..n in order")
        if self.matrix.num_vars != len(self.prefix):
            raise FormatError("every matrix variable must be quantified exactly once")

    @property
    def num_vars(self) -> int:
        return len(self.prefix)


def normalize_clause(lits):
    """Sorted by variable, duplicates removed; None for a tautology."""
    s = set(lits)
    if any(-x in s for x in s):
        return None
    return tuple(sorted(s, key=lambda x: (abs(x), x)))


def normalize(num_vars, clauses) -> Cnf:
    kept, dropped = [], 0
    for c in clauses:
        n = normalize_clause(c)
        if n is None:
            dropped += 1
        else:
            kept.append(n)
    return Cnf(num_vars, kept, dropped)


# ----------------------------------------------------------------- parsing


def _parse_body(text, allow_quantifiers):
    header = None
    clauses, current = [], []
    blocks = []
    clause_started = False
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        last_line = lineno
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise FormatError(f"line {lineno}: second problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or not all(p.isdigit() for p in parts[2:]):
                raise FormatError(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise FormatError(f"line {lineno}: data before the 'p cnf' line")
        tokens = line.split()
        if tokens[0] in ("a", "e"):
            if not allow_quantifiers:
                raise FormatError(f"line {lineno}: quantifier line in a DIMACS file")
            if clause_started or current:
                raise FormatError(f"line {lineno}: quantifier line after clauses")
            try:
                nums = [int(t) for t in tokens[1:]]
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer token") from None
            if not nums or nums[-1] != 0 or 0 in nums[:-1]:
                raise FormatError(f"line {lineno}: quantifier line must end with a single 0")
            for v in nums[:-1]:
                if not 1 <= v <= header[0]:
                    raise FormatError(f"line {lineno}: variable {v} out of range 1..{header[0]}")
            blocks.append((tokens[0], nums[:-1], lineno))
            continue
        clause_started = True
        for tok in tokens:
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer token {tok!r}") from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise FormatError(f"line {lineno}: literal {lit} out of range 1..{header[0]}")
            else:
                current.append(lit)
    if header is None:
        raise FormatError("missing 'p cnf' line")
    if current:
        raise FormatError(f"line {last_line}: last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise FormatError(f"line {last_line}: header announces {header[1]} clauses, found {len(clauses)}")
    return header[0], clauses, blocks


def parse_dimacs(text: str) -> Cnf:
    num_vars, clauses, _ = _parse_body(text, allow_quantifiers=False)
    return normalize(num_vars, clauses)


def parse_qdimacs(text: str) -> Qbf:
    """Read QDIMACS.  Unquantified variables are existential and outermost;
    variables are renumbered 1..n in quantification order."""
    num_vars, clauses, blocks = _parse_body(text, allow_quantifiers=True)
    order = []
    seen = set()
    for q, vs, lineno in blocks:
        for v in vs:
            if v in seen:
                raise FormatError(f"line {lineno}: variable {v} quantified twice")
            seen.add(v)
    free = [v for v in range(1, num_vars + 1) if v not in seen]
    order = [(EXISTS, v) for v in free]
    for q, vs, _lineno in blocks:
        order += [(q, v) for v in vs]
    rank = {v: i for i, (_q, v) in enumerate(order, start=1)}
    renamed = [[(1 if lit > 0 else -1) * rank[abs(lit)] for lit in c] for c in clauses]
    prefix = [(q, rank[v]) for q, v in order]
    return Qbf(prefix, normalize(num_vars, renamed))


def format_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def format_qdimacs(qbf: Qbf) -> str:
    lines = [f"p cnf {qbf.num_vars} {len(qbf.matrix.clauses)}"]
    for q, group in itertools.groupby(qbf.prefix, key=lambda e: e[0]):
        lines.append(q + " " + " ".join(str(v) for _q, v in group) + " 0")
    lines += [" ".join(map(str, c)) + " 0" for c in qbf.matrix.clauses]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- oracles


def _satisfies(assignment, clauses) -> bool:
    return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in clauses)


def brute_force_sat(cnf: Cnf) -> bool:
    if cnf.num_vars > SAT_BRUTE_FORCE_LIMIT:
        raise UsageError(f"brute force is limited to {SAT_BRUTE_FORCE_LIMIT} variables")
    for bits in itertools.product((False, True), repeat=cnf.num_vars):
        if _satisfies((None,) + bits, cnf.clauses):
            return True
    return False


def brute_force_qbf(qbf: Qbf) -> bool:
    if qbf.num_vars > QBF_BRUTE_FORCE_LIMIT:
        raise UsageError(f"brute force is limited to {QBF_BRUTE_FORCE_LIMIT} variables")
    clauses = qbf.matrix.clauses
    prefix = qbf.prefix

    def value(i, assignment):
        if i == len(prefix):
            return _satisfies(assignment, clauses)
        branches = (value(i + 1, assignment + (b,)) for b in (False, True))
        return any(branches) if prefix[i][0] == EXISTS else all(branches)

    return value(0, (None,))


# -------------------------------------------------------------- 3SAT gadgets


def sat_variables(i: int):
    """``(X_i, ¬X_i)`` on layer i."""
    return VariableId(f"X{i}", i), VariableId(f"¬X{i}", i)


def reduce_3sat(cnf: Cnf):
    """``(LaMA, word)`` such that the word is accepted iff ``cnf`` is satisfiable.

    States ``s0 .. s(n+m)``: from ``s(i-1)`` two writes pick X_i or ¬X_i,
    then from ``s(n+j-1)`` three reads check a literal of clause j.  The
    word is n+m copies of the letter ``1``.
    """
    n, m = cnf.num_vars, len(cnf.clauses)
    if n < 1:
        raise UsageError("the reduction needs at least one variable")
    for j, c in enumerate(cnf.clauses, start=1):
        if len(c) != 3 or len({abs(l) for l in c}) != 3:
            raise UsageError(f"clause {j} must have exactly 3 literals on distinct variables, got {list(c)}")
    states = [f"s{k}" for k in range(n + m + 1)]
    variables = [v for i in range(1, n + 1) for v in sat_variables(i)]
    transitions = []
    for i in range(1, n + 1):
        pos, neg = sat_variables(i)
        for var in (pos, neg):
            transitions.append(LamaObs(states[i - 1], [(i, var, Mode.W)], states[i]))
    for j, c in enumerate(cnf.clauses, start=1):
        src, dst = states[n + j - 1], states[n + j]
        for lit in c:
            pos, neg = sat_variables(abs(lit))
            transitions.append(LamaObs(src, [(abs(lit), pos if lit > 0 else neg, Mode.R)], dst))
    lama = Lama(
        states=states,
        initial=states[0],
        finals=[states[-1]],
        initial_memory={},
        transitions=transitions,
        variables=variables,
        layers=n,
    )
    return lama, tuple(Letter("1") for _ in range(n + m))


# -------------------------------------------------------------- TQBF gadgets


def qbf_variables(i: int, universal: bool):
    """``X_i``, ``¬X_i`` and, for universal variables, the flag ``~X_i``."""
    out = [VariableId(f"X{i}"), VariableId(f"¬X{i}")]
    if universal:
        out.append(VariableId(f"~X{i}"))
    return out


def _lit_vars(lit):
    x, nx = VariableId(f"X{abs(lit)}"), VariableId(f"¬X{abs(lit)}")
    return (x, nx) if lit > 0 else (nx, x)


class _Builder:
    def __init__(self):
        self.states = []
        self.transitions = []

    def state(self, name):
        self.states.append(name)
        return name


def reduce_tqbf(qbf: Qbf) -> NuAutomaton:
    """ν-automaton with nonempty language iff ``qbf`` is true.

    Clause gadgets are chained first; variable gadgets are then wrapped
    around the result from the last declared variable to the first.  An
    existential gadget guesses a value by writing ``1_i`` to X_i or ¬X_i.  A
    universal gadget runs the inner block with ¬X_i, sets the flag ~X_i,
    then reruns it with X_i and leaves by reading the flag.
    """
    for j, c in enumerate(qbf.matrix.clauses, start=1):
        if normalize_clause(c) != tuple(c):
            raise UsageError(f"clause {j} is not normalized (one literal per variable, sorted)")
    b = _Builder()
    entry = b.state("c0")
    exit_ = entry
    for j, c in enumerate(qbf.matrix.clauses, start=1):
        exit_ = _clause_gadget(b, j, c, exit_)
    universal = {v for q, v in qbf.prefix if q == FORALL}
    for q, i in reversed(qbf.prefix):
        if q == EXISTS:
            start = b.state(f"e{i}")
            for var in qbf_variables(i, False):
                b.transitions.append(Write(start, var, entry))
            entry = start
        else:
            entry, exit_ = _universal_gadget(b, i, qbf, universal, entry, exit_)
    variables = [v for _q, i in qbf.prefix for v in qbf_variables(i, i in universal)]
    order = {q: k for k, q in enumerate(b.states)}
    # list states from the overall entry onwards for readability
    states = sorted(b.states, key=lambda q: (q != entry, order[q]))
    return NuAutomaton(
        states=states,
        initial=entry,
        finals=[exit_],
        initial_memory={},
        transitions=b.transitions,
        variables=variables,
    )


def _clause_gadget(b, j, clause, start):
    k = len(clause)
    if k == 0:
        # an empty clause is false: its exit is unreachable
        return b.state(f"c{j}.sat")
    top = [start] + [b.state(f"c{j}.t{p}") for p in range(1, k + 1)]
    bot = [start] + [b.state(f"c{j}.b{p}") for p in range(1, k + 1)]
    for p, lit in enumerate(clause, start=1):
        yes, no = _lit_vars(lit)
        if p > 1:
            # satisfied row: the rest of the clause is read either way
            b.transitions.append(Read(top[p - 1], yes, top[p]))
            b.transitions.append(Read(top[p - 1], no, top[p]))
        b.transitions.append(Read(bot[p - 1], yes, top[p]))
        b.transitions.append(Read(bot[p - 1], no, bot[p]))
    return top[k]


def _universal_gadget(b, i, qbf, universal, inner_entry, inner_exit):
    x, nx, flag = qbf_variables(i, True)
    q0 = b.state(f"u{i}.0")
    q3 = b.state(f"u{i}.3")
    q4 = b.state(f"u{i}.4")
    q5 = b.state(f"u{i}.5")
    qf = b.state(f"u{i}.f")
    inner = [v for _q, j in qbf.prefix if j > i for v in qbf_variables(j, j in universal)]
    b.transitions += [
        Write(q0, nx, inner_entry),
        Write(inner_exit, flag, q3),
        Reset(q3, {nx}, q4),
        Write(q4, x, q5),
        Reset(q5, set(inner), inner_entry),
        Read(inner_exit, flag, qf),
    ]
    return q0, qf


def init_letter(i: int) -> Letter:
    return Letter(f"1_{i}")


def done_letter(i: int) -> Letter:
    return Letter(f"2_{i}")


def clause_word(clause) -> tuple:
    return tuple(init_letter(abs(l)) for l in clause)


def tqbf_input_word(qbf: Qbf) -> tuple:
    """The word unfolding every loop of :func:`reduce_tqbf`'s automaton:
    ``∃x_i φ ↦ 1_i·φ``, ``∀x_i φ ↦ 1_i·φ·2_i·1_i·φ·2_i``, clauses ``↦``
    one ``1_i`` per literal."""
    tail = tuple(u for c in qbf.matrix.clauses for u in clause_word(c))
    for q, i in reversed(qbf.prefix):
        if q == EXISTS:
            tail = (init_letter(i),) + tail
        else:
            half = (init_letter(i),) + tail + (done_letter(i),)
            tail = half + half
    return tail


def tqbf_sizes(qbf: Qbf) -> dict:
    """Closed-form state/transition/variable counts of :func:`reduce_tqbf`."""
    states, transitions, variables = 1, 0, 0
    for c in qbf.matrix.clauses:
        k = len(c)
        states += 2 * k if k else 1
        transitions += 4 * k - 2 if k else 0
    for q, _i in qbf.prefix:
        if q == EXISTS:
            states, transitions, variables = states + 1, transitions + 2, variables + 2
        else:
            states, transitions, variables = states + 5, transitions + 6, variables + 3
    return {"states": states, "transitions": transitions, "variables": variables}
