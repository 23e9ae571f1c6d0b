"""Letters, words, variables, memory contexts and configurations.

The alphabet is infinite and realized lazily: any whitespace-free token is a
letter.  Letters compare by value only; no ordering carries meaning beyond
giving memory contexts a canonical (sorted) form.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Optional

from memauto.errors import DomainError, FormatError

#: prefix of machine-generated fresh letters (witness tokens, renamings)
FRESH_PREFIX = "τ"


class Letter(str):
    """A letter of the infinite alphabet.

    Letters are interned: ``Letter("a") is Letter("a")``.  Being a ``str``
    subclass, a letter also compares equal to its plain symbol text.
    """

    __slots__ = ()
    _table: dict = {}

    def __new__(cls, symbol):
        cached = cls._table.get(symbol)
        if cached is not None:
            return cached
        if not isinstance(symbol, str) or not symbol:
            raise FormatError(f"letter must be nonempty text, got {symbol!r}")
        if any(ch.isspace() for ch in symbol):
            raise FormatError(f"letter {symbol!r} contains whitespace")
        letter = super().__new__(cls, symbol)
        cls._table[str(symbol)] = letter
        return letter

    def __repr__(self):
        return f"Letter({str.__repr__(self)})"

    @property
    def symbol(self) -> str:
        return str(self)


def intern_letter(text: str) -> Letter:
    """Return the canonical letter for ``text``."""
    return Letter(text)


def fresh_letter(avoid: Iterable[str], prefix: str = FRESH_PREFIX) -> Letter:
    """Smallest ``<prefix><k>`` not in ``avoid``."""
    taken = set(avoid)
    k = 0
    while f"{prefix}{k}" in taken:
        k += 1
    return Letter(f"{prefix}{k}")


Word = tuple  # tuple[Letter, ...]


def make_word(letters: Iterable[str]) -> tuple:
    return tuple(Letter(x) for x in letters)


def parse_word(text: str) -> tuple:
    """Parse the one-line word format: letters separated by single spaces.

    An empty (or all-whitespace) line is the empty word.  Runs of spaces and
    tabs are tolerated on input.
    """
    if "\n" in text.rstrip("\r\n"):
        raise FormatError("a word occupies exactly one line")
    return tuple(Letter(tok) for tok in text.split())


def format_word(word: Iterable[str]) -> str:
    return " ".join(word)


@dataclass(frozen=True, order=True)
class VariableId:
    """A memory identifier: ν variable, LaMA variable ``name^layer`` or history."""

    name: str
    layer: int = 1

    def __post_init__(self):
        if not self.name or any(ch.isspace() for ch in self.name):
            raise FormatError(f"bad variable name {self.name!r}")
        if not isinstance(self.layer, int) or self.layer < 1:
            raise FormatError(f"variable {self.name!r}: layer must be an integer >= 1")

    def __str__(self):
        return self.name if self.layer == 1 else f"{self.name}^{self.layer}"


class MemoryContext(Mapping):
    """Immutable assignment variable -> finite set of letters.

    Iteration order is canonical (sorted variables); equality and hashing are
    extensional, so contexts can key memo tables directly.
    """

    __slots__ = ("_data", "_key", "_hash")

    def __init__(self, assignment: Optional[Mapping] = None):
        data = {}
        for var, letters in (assignment or {}).items():
            if not isinstance(var, VariableId):
                raise DomainError(f"memory keys must be VariableId, got {var!r}")
            data[var] = frozenset(Letter(u) for u in letters)
        self._data = dict(sorted(data.items()))
        self._key = tuple((v, tuple(sorted(s))) for v, s in self._data.items())
        self._hash = hash(self._key)

    @classmethod
    def empty(cls, variables: Iterable[VariableId]) -> "MemoryContext":
        return cls({v: () for v in variables})

    def __getitem__(self, var):
        try:
            return self._data[var]
        except KeyError:
            raise DomainError(f"unknown variable {var}") from None

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __contains__(self, var):
        return var in self._data

    def __eq__(self, other):
        if isinstance(other, MemoryContext):
            return self._key == other._key
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(
            f"{v}: {{{', '.join(sorted(s))}}}" for v, s in self._data.items()
        )
        return f"MemoryContext({{{body}}})"

    @property
    def variables(self) -> tuple:
        return tuple(self._data)

    def letters(self) -> frozenset:
        """All letters stored anywhere in the context."""
        out = set()
        for s in self._data.values():
            out |= s
        return frozenset(out)

    def holders(self, letter) -> frozenset:
        """Variables whose set contains ``letter``."""
        return frozenset(v for v, s in self._data.items() if letter in s)

    def replace(self, updates: Mapping) -> "MemoryContext":
        for var in updates:
            if var not in self._data:
                raise DomainError(f"unknown variable {var}")
        merged = dict(self._data)
        merged.update({v: frozenset(s) for v, s in updates.items()})
        return MemoryContext(merged)

    def to_plain(self) -> dict:
        """``{str(var): sorted letters}``, for display and serialization."""
        return {str(v): sorted(s) for v, s in self._data.items()}


@dataclass(frozen=True)
class Configuration:
    state: str
    memory: MemoryContext

    def __str__(self):
        return f"({self.state}, {self.memory!r})"


def layer_injective(memory: MemoryContext, layer: int) -> bool:
    """True iff the variables of ``layer`` hold pairwise disjoint sets."""
    on_layer = [v for v in memory if v.layer == layer]
    if not on_layer:
        raise DomainError(f"no variable on layer {layer}")
    seen = set()
    for v in on_layer:
        s = memory[v]
        if seen & s:
            return False
        seen |= s
    return True


def apply_reset(memory: MemoryContext, rset: Iterable[VariableId]) -> MemoryContext:
    """Empty every variable of ``rset``; other variables keep their letters."""
    rset = frozenset(rset)
    if not rset:
        return memory
    return memory.replace({v: frozenset() for v in rset})
