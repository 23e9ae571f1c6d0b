"""JSON automaton documents and DOT export.

One document per automaton::

    {"formalism": "nu" | "lama" | "hra",
     "states": [...], "initial": q, "final": [...],
     "initial_memory": {var: [letters]},
     ... formalism-specific declarations and "transitions" ...}

LaMA variables are ``{"name", "layer"}`` objects.  Wherever a LaMA variable
is referred to by text (resets, initial memory) the bare name is accepted if
it is unique across layers, and ``name^layer`` always.
"""

from __future__ import annotations

import json

from memauto.automata import (
    AnyLetter,
    Hra,
    HraEps,
    HraObs,
    Lama,
    LamaObs,
    Mode,
    NuAutomaton,
    Read,
    Reset,
    Write,
)
from memauto.core import Letter, MemoryContext, VariableId
from memauto.errors import FormatError, LoadError

_COMMON = {"formalism", "states", "initial", "final", "initial_memory", "transitions"}
_EXTRA = {"nu": {"variables"}, "lama": {"variables", "layers"}, "hra": {"histories"}}
_TRANSITION_KEYS = {
    ("nu", "read"): {"kind", "from", "to", "var"},
    ("nu", "write"): {"kind", "from", "to", "var"},
    ("nu", "any"): {"kind", "from", "to"},
    ("nu", "reset"): {"kind", "from", "to", "vars"},
    ("lama", "obs"): {"kind", "from", "to", "alpha"},
    ("lama", "reset"): {"kind", "from", "to", "vars"},
    ("hra", "obs"): {"kind", "from", "to", "read", "write"},
    ("hra", "eps"): {"kind", "from", "to", "reset"},
}


class VarResolver:
    """Maps variable text (``name`` or ``name^layer``) to declared ids."""

    def __init__(self, ids):
        self.ids = tuple(ids)
        self.by_name = {}
        for v in self.ids:
            self.by_name.setdefault(v.name, []).append(v)

    def __call__(self, text, path):
        if not isinstance(text, str):
            raise LoadError("variable reference must be text", path)
        hits = self.by_name.get(text)
        if hits:
            if len(hits) > 1:
                raise LoadError(f"ambiguous variable {text!r}; write {text}^<layer>", path)
            return hits[0]
        name, sep, layer = text.rpartition("^")
        if sep and layer.isdigit():
            return VariableId(name, int(layer))
        try:
            return VariableId(text)
        except FormatError as exc:
            raise LoadError(str(exc), path) from None

    def label(self, var):
        hits = self.by_name.get(var.name, [])
        return var.name if len(hits) == 1 and hits[0] == var else f"{var.name}^{var.layer}"


def _expect(cond, msg, path):
    if not cond:
        raise LoadError(msg, path)


def _text(x, path):
    _expect(isinstance(x, str) and x != "", "expected nonempty text", path)
    return x


def _text_list(x, path):
    _expect(isinstance(x, list), "expected a list", path)
    return [_text(e, f"{path}[{i}]") for i, e in enumerate(x)]


def _check_keys(obj, allowed, path, required=None):
    _expect(isinstance(obj, dict), "expected an object", path)
    for key in obj:
        if key not in allowed:
            raise LoadError(f"unknown field {key!r}", f"{path}.{key}")
    for key in required if required is not None else allowed:
        if key not in obj:
            raise LoadError(f"missing field {key!r}", path)


def load_automaton(doc):
    """Build an automaton from a parsed JSON document (or JSON text)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise LoadError(f"invalid JSON: {exc}") from None
    _expect(isinstance(doc, dict), "expected an object", "$")
    formalism = doc.get("formalism")
    _expect(formalism in _EXTRA, "formalism must be 'nu', 'lama' or 'hra'", "$.formalism")
    allowed = _COMMON | _EXTRA[formalism]
    required = allowed - {"initial_memory"}
    _check_keys(doc, allowed, "$", required)

    states = _text_list(doc["states"], "$.states")
    initial = _text(doc["initial"], "$.initial")
    finals = _text_list(doc["final"], "$.final")

    if formalism == "nu":
        ids = [_mkvar(n, 1, f"$.variables[{i}]") for i, n in enumerate(_text_list(doc["variables"], "$.variables"))]
    elif formalism == "hra":
        ids = [_mkvar(n, 1, f"$.histories[{i}]") for i, n in enumerate(_text_list(doc["histories"], "$.histories"))]
    else:
        layers = doc["layers"]
        _expect(isinstance(layers, int) and not isinstance(layers, bool), "expected an integer", "$.layers")
        _expect(isinstance(doc["variables"], list), "expected a list", "$.variables")
        ids = []
        for i, entry in enumerate(doc["variables"]):
            p = f"$.variables[{i}]"
            _check_keys(entry, {"name", "layer"}, p)
            layer = entry["layer"]
            _expect(isinstance(layer, int) and not isinstance(layer, bool), "expected an integer", f"{p}.layer")
            ids.append(_mkvar(_text(entry["name"], f"{p}.name"), layer, p))
    resolve = VarResolver(ids)

    memory = {}
    raw_mem = doc.get("initial_memory", {})
    _expect(isinstance(raw_mem, dict), "expected an object", "$.initial_memory")
    for key, letters in raw_mem.items():
        p = f"$.initial_memory.{key}"
        var = resolve(key, p)
        memory[var] = [_letter(u, f"{p}[{i}]") for i, u in enumerate(_text_list(letters, p))]
    memory = MemoryContext(memory)

    raw_ts = doc["transitions"]
    _expect(isinstance(raw_ts, list), "expected a list", "$.transitions")
    transitions = [_load_transition(formalism, t, f"$.transitions[{i}]", resolve) for i, t in enumerate(raw_ts)]

    common = dict(
        states=states,
        initial=initial,
        finals=finals,
        initial_memory=memory,
        transitions=transitions,
    )
    if formalism == "nu":
        return NuAutomaton(variables=ids, **common)
    if formalism == "hra":
        return Hra(histories=ids, **common)
    return Lama(variables=ids, layers=doc["layers"], **common)


def _mkvar(name, layer, path):
    try:
        return VariableId(name, layer)
    except FormatError as exc:
        raise LoadError(str(exc), path) from None


def _letter(u, path):
    try:
        return Letter(u)
    except FormatError as exc:
        raise LoadError(str(exc), path) from None


def _load_transition(formalism, t, path, resolve):
    _expect(isinstance(t, dict), "expected an object", path)
    kind = t.get("kind")
    keys = _TRANSITION_KEYS.get((formalism, kind))
    if keys is None:
        raise LoadError(f"unknown transition kind {kind!r} for {formalism}", f"{path}.kind")
    _check_keys(t, keys, path)
    src = _text(t["from"], f"{path}.from")
    dst = _text(t["to"], f"{path}.to")
    if kind in ("read", "write"):
        var = resolve(t["var"], f"{path}.var")
        return (Read if kind == "read" else Write)(src, var, dst)
    if kind == "any":
        return AnyLetter(src, dst)
    if kind == "reset":
        names = _text_list(t["vars"], f"{path}.vars")
        return Reset(src, [resolve(n, f"{path}.vars[{i}]") for i, n in enumerate(names)], dst)
    if kind == "eps":
        names = _text_list(t["reset"], f"{path}.reset")
        return HraEps(src, [resolve(n, f"{path}.reset[{i}]") for i, n in enumerate(names)], dst)
    if formalism == "hra":
        read = [resolve(n, f"{path}.read[{i}]") for i, n in enumerate(_text_list(t["read"], f"{path}.read"))]
        write = [resolve(n, f"{path}.write[{i}]") for i, n in enumerate(_text_list(t["write"], f"{path}.write"))]
        return HraObs(src, read, write, dst)
    alpha = t["alpha"]
    _expect(isinstance(alpha, dict), "expected an object", f"{path}.alpha")
    entries = []
    for layer_text, entry in alpha.items():
        p = f"{path}.alpha.{layer_text}"
        _expect(layer_text.isdigit(), "layer keys are positive integers", p)
        if entry is None:
            continue
        _check_keys(entry, {"var", "mode"}, p)
        mode = entry["mode"]
        _expect(mode in ("r", "w"), "mode must be 'r' or 'w'", f"{p}.mode")
        layer = int(layer_text)
        entries.append((layer, _mkvar(_text(entry["var"], f"{p}.var"), max(layer, 1), p), Mode(mode)))
    return LamaObs(src, entries, dst)


def dump_automaton(A) -> dict:
    """Inverse of :func:`load_automaton` (field order is fixed)."""
    label = VarResolver(A.memory_ids).label
    doc = {
        "formalism": A.formalism,
        "states": list(A.states),
        "initial": A.initial,
        "final": [q for q in A.states if q in A.finals],
    }
    if A.formalism == "nu":
        doc["variables"] = [v.name for v in A.variables]
    elif A.formalism == "hra":
        doc["histories"] = [v.name for v in A.histories]
    else:
        doc["layers"] = A.layers
        doc["variables"] = [{"name": v.name, "layer": v.layer} for v in A.variables]
    doc["initial_memory"] = {label(v): sorted(s) for v, s in A.initial_memory.items()}
    doc["transitions"] = [_dump_transition(t, label) for t in A.transitions]
    return doc


def _dump_transition(t, label):
    base = {"from": t.source, "to": t.target}
    if isinstance(t, Read):
        return {"kind": "read", **base, "var": label(t.var)}
    if isinstance(t, Write):
        return {"kind": "write", **base, "var": label(t.var)}
    if isinstance(t, AnyLetter):
        return {"kind": "any", **base}
    if isinstance(t, Reset):
        return {"kind": "reset", **base, "vars": sorted(label(v) for v in t.vars)}
    if isinstance(t, HraEps):
        return {"kind": "eps", **base, "reset": sorted(label(v) for v in t.reset)}
    if isinstance(t, HraObs):
        return {
            "kind": "obs",
            **base,
            "read": sorted(label(v) for v in t.read),
            "write": sorted(label(v) for v in t.write),
        }
    alpha = {str(layer): {"var": var.name, "mode": mode.value} for layer, var, mode in t.alpha}
    return {"kind": "obs", **base, "alpha": alpha}


def to_json(A) -> str:
    return json.dumps(dump_automaton(A), indent=2, ensure_ascii=False)


def transition_label(t, label=str) -> str:
    if isinstance(t, Read):
        return f"({label(t.var)},R)"
    if isinstance(t, Write):
        return f"({label(t.var)},W)"
    if isinstance(t, AnyLetter):
        return "♯"
    if isinstance(t, Reset):
        return "ε reset{" + ",".join(sorted(label(v) for v in t.vars)) + "}"
    if isinstance(t, HraEps):
        return "ε reset{" + ",".join(sorted(label(v) for v in t.reset)) + "}"
    if isinstance(t, HraObs):
        r = ",".join(sorted(label(v) for v in t.read)) or "∅"
        w = ",".join(sorted(label(v) for v in t.write)) or "∅"
        return f"{r}/{w}"
    if not t.alpha:
        return "♯"
    return " ".join(f"({var.name}^{layer},{mode.name})" for layer, var, mode in t.alpha)


def to_dot(A) -> str:
    """Plain structural dump in Graphviz DOT."""
    label = VarResolver(A.memory_ids).label
    lines = ["digraph automaton {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in A.states:
        shape = "doublecircle" if q in A.finals else "circle"
        lines.append(f"  {json.dumps(q)} [shape={shape}];")
    lines.append(f"  __start -> {json.dumps(A.initial)};")
    for t in A.transitions:
        lab = json.dumps(transition_label(t, label), ensure_ascii=False)
        lines.append(f"  {json.dumps(t.source)} -> {json.dumps(t.target)} [label={lab}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
