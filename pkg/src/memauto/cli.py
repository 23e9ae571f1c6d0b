"""Command-line front end.

Exit codes: 0 success / accepted / nonempty, 1 negative verdict (invalid,
rejected, certificate refused, empty), 2 I/O or parse error, 64 usage error.

Automaton arguments accept ``-`` for standard input.  A stream may carry a
JSON automaton followed by one word line, which is what ``reduce-sat`` and
``reduce-qbf --word`` print; ``run - --word -`` consumes both.
"""

from __future__ import annotations

import argparse
import json
import sys

from memauto import corpus, emptiness, encodings, reductions
from memauto.automata import validate
from memauto.core import format_word, parse_word
from memauto.errors import FormatError, LoadError, MemautoError, UsageError
from memauto.membership import Run, check_certificate, decide_membership
from memauto.serialize import dump_automaton, load_automaton, to_dot

EXIT_OK, EXIT_NO, EXIT_IO, EXIT_USAGE = 0, 1, 2, 64


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


class _Input:
    """Reads standard input at most once and splits JSON from a word line."""

    def __init__(self, stdin):
        self.stdin = stdin
        self._doc = None
        self._rest = None

    def _load(self):
        if self._rest is None:
            text = self.stdin.read()
            stripped = text.lstrip()
            if stripped.startswith("{") or stripped.startswith("["):
                try:
                    doc, end = json.JSONDecoder().raw_decode(stripped)
                except json.JSONDecodeError as exc:
                    raise LoadError(f"<stdin>: invalid JSON: {exc}") from None
                self._doc, self._rest = doc, stripped[end:]
            else:
                self._rest = text
        return self._doc, self._rest

    def document(self):
        doc, _ = self._load()
        if doc is None:
            raise LoadError("<stdin>: expected a JSON document")
        return doc

    def word_line(self):
        _, rest = self._load()
        lines = [l for l in rest.splitlines() if l.strip()]
        if len(lines) > 1:
            raise FormatError("<stdin>: expected a single word line")
        return parse_word(lines[0] if lines else "")


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise LoadError(f"{path}: {exc.strerror or exc}") from None


def _read_json(path, inp):
    if path == "-":
        return inp.document()
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path}: invalid JSON: {exc}") from None


def _automaton(path, inp):
    try:
        return load_automaton(_read_json(path, inp))
    except LoadError as exc:
        if path != "-" and not str(exc).startswith(path):
            raise LoadError(f"{path}: {exc}") from None
        raise


def _word(spec, inp):
    if spec is None:
        return ()
    if spec == "-":
        return inp.word_line()
    if spec.startswith("@"):
        return parse_word(_read_text(spec[1:]).strip("\r\n"))
    return parse_word(spec)


def _emit(out, obj):
    out.write(json.dumps(obj, ensure_ascii=False, indent=2) + "\n")


def _emit_automaton(args, out, A, word=None):
    if args.json:
        result = {"automaton": dump_automaton(A)}
        if word is not None:
            result["word"] = format_word(word)
        _emit(out, result)
        return
    if args.dot:
        out.write(to_dot(A))
    else:
        _emit(out, dump_automaton(A))
    if word is not None:
        out.write(format_word(word) + "\n")


# ----------------------------------------------------------- subcommands


def cmd_validate(args, inp, out, err):
    A = _automaton(args.file, inp)
    problems = validate(A)
    if args.json:
        _emit(out, {"valid": not problems, "violations": problems})
    else:
        for p in problems:
            err.write(p + "\n")
        out.write("VALID\n" if not problems else "INVALID\n")
    return EXIT_OK if not problems else EXIT_NO


def cmd_run(args, inp, out, err):
    A = _automaton(args.file, inp)
    w = _word(args.word, inp)
    stats = {}
    result = decide_membership(A, w, stats=stats)
    if args.json:
        obj = {"accepted": result.accepted, "word": format_word(w), "explored": stats["explored"]}
        if args.certificate:
            obj["run"] = result.witness.to_json(A) if result.witness else None
        _emit(out, obj)
    else:
        out.write("ACCEPT\n" if result.accepted else "REJECT\n")
        if args.certificate and result.witness is not None:
            _emit(out, result.witness.to_json(A))
    return EXIT_OK if result.accepted else EXIT_NO


def cmd_check_cert(args, inp, out, err):
    A = _automaton(args.file, inp)
    w = _word(args.word, inp)
    run = Run.from_json(A, _read_json(args.run, inp))
    verdict = check_certificate(A, w, run)
    if args.json:
        _emit(out, {"valid": verdict.ok, "reason": verdict.reason, "length": run.length})
    else:
        out.write("VALID\n" if verdict.ok else f"INVALID: {verdict.reason}\n")
    return EXIT_OK if verdict.ok else EXIT_NO


_ENCODERS = {
    ("lama", "nu"): encodings.lama_to_nu,
    ("nu", "lama"): encodings.nu_to_lama,
    ("hra", "lama"): encodings.hra_to_lama,
}
_DEFAULT_TARGET = {"lama": "nu", "nu": "lama", "hra": "lama"}


def cmd_encode(args, inp, out, err):
    A = _automaton(args.file, inp)
    target = args.to or _DEFAULT_TARGET[A.formalism]
    enc = _ENCODERS.get((A.formalism, target))
    if enc is None:
        raise UsageError(f"no encoding from {A.formalism} to {target}")
    w = _word(args.word, inp) if args.word is not None else None
    B = enc(A)
    if w is not None:
        if enc is encodings.lama_to_nu:
            w = encodings.xi_rename(w, A.layers)
        elif enc is encodings.hra_to_lama:
            w = encodings.zeta_rename(w)
    _emit_automaton(args, out, B, w)
    return EXIT_OK


def cmd_empty(args, inp, out, err):
    A = _automaton(args.file, inp)
    if args.randomized:
        res = emptiness.random_walks(A, args.seed, args.restarts)
        if args.stats:
            err.write(f"walks: {res.walks}, moves: {res.moves}, step budget per walk: {emptiness.max_walk_steps(A)}\n")
        if args.json:
            obj = {"nonempty": res.found, "witness": format_word(res.witness) if res.found else None}
            obj.update({"walks": res.walks, "moves": res.moves, "one_sided": True})
            _emit(out, obj)
        elif res.found:
            out.write(format_word(res.witness) + "\n")
        else:
            out.write("EMPTY\n")
            err.write(f"note: no accepting walk in {res.walks} restarts; a randomized EMPTY is not a proof\n")
        return EXIT_OK if res.found else EXIT_NO
    verdict = emptiness.decide_nonempty(A)
    bound = emptiness.state_bound(A)
    if args.stats:
        err.write(f"explored abstract states: {verdict.explored_count} (bound |Q|*2^|V| = {bound})\n")
    if args.json:
        _emit(
            out,
            {
                "nonempty": verdict.nonempty,
                "witness": format_word(verdict.witness) if verdict.nonempty else None,
                "explored": verdict.explored_count,
                "bound": bound,
            },
        )
    else:
        out.write(format_word(verdict.witness) + "\n" if verdict.nonempty else "EMPTY\n")
    return EXIT_OK if verdict.nonempty else EXIT_NO


def _write_word_file(path, w):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(format_word(w) + "\n")
    except OSError as exc:
        raise LoadError(f"{path}: {exc.strerror or exc}") from None


def _formula_text(path, inp):
    return inp.stdin.read() if path == "-" else _read_text(path)


def cmd_reduce_sat(args, inp, out, err):
    cnf = reductions.parse_dimacs(_formula_text(args.file, inp))
    if cnf.dropped_tautologies:
        err.write(f"dropped {cnf.dropped_tautologies} tautological clause(s)\n")
    A, w = reductions.reduce_3sat(cnf)
    if args.word_file:
        _write_word_file(args.word_file, w)
    _emit_automaton(args, out, A, None if args.word_file else w)
    return EXIT_OK


def cmd_reduce_qbf(args, inp, out, err):
    qbf = reductions.parse_qdimacs(_formula_text(args.file, inp))
    if qbf.matrix.dropped_tautologies:
        err.write(f"dropped {qbf.matrix.dropped_tautologies} tautological clause(s)\n")
    A = reductions.reduce_tqbf(qbf)
    w = reductions.tqbf_input_word(qbf) if args.word else None
    _emit_automaton(args, out, A, w)
    return EXIT_OK


def cmd_gen_example(args, inp, out, err):
    A = corpus.example(args.id)
    w = None
    if args.witness or args.halved:
        if A.formalism != "lama" or not args.id.startswith("double_exp"):
            raise UsageError("--witness and --halved apply to double_exp(n) only")
        n = A.layers
        w = corpus.halved_witness(n) if args.halved else corpus.double_exp_witness(n)
    _emit_automaton(args, out, A, w)
    return EXIT_OK


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="memauto",
        description="Memory automata over infinite alphabets (ν-automata, n-LaMA, HRA).",
        epilog=(
            "Words are single lines of space-separated letters; '-' reads the word from the line "
            "following the JSON automaton on standard input and '@FILE' reads it from a file. "
            "Letters starting with 'τ' or 'κ' are generated by the emptiness witness builder; "
            "avoid them in inputs whose witnesses you compare. "
            "Exit codes: 0 ok/accept/nonempty, 1 negative verdict, 2 I/O or parse error, 64 usage error."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, emits=False):
        sp.add_argument("--json", action="store_true", help="print one JSON result object")
        if emits:
            sp.add_argument("--dot", action="store_true", help="print the automaton as Graphviz DOT")

    sp = sub.add_parser("validate", help="check structural invariants")
    sp.add_argument("file", help="automaton JSON ('-' for stdin)")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("run", help="decide membership of a word")
    sp.add_argument("file")
    sp.add_argument("--word", default="", help="the word, '-' or '@FILE'")
    sp.add_argument("--certificate", action="store_true", help="also print the accepting run")
    common(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("check-cert", help="verify a run certificate")
    sp.add_argument("file")
    sp.add_argument("--word", default="", help="the word, '-' or '@FILE'")
    sp.add_argument("--run", required=True, help="run JSON file ('-' for stdin)")
    common(sp)
    sp.set_defaults(func=cmd_check_cert)

    sp = sub.add_parser("encode", help="translate to another formalism")
    sp.add_argument("file")
    sp.add_argument("--to", choices=("nu", "lama"), help="target (default: lama→nu, hra→lama, nu→lama)")
    sp.add_argument("--word", help="also print the renamed word")
    common(sp, emits=True)
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("empty", help="decide non-emptiness of a ν-automaton")
    sp.add_argument("file")
    sp.add_argument("--randomized", action="store_true", help="seeded random walks (one-sided)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=int, default=100, help="number of walks (default 100)")
    sp.add_argument("--stats", action="store_true", help="report search statistics on stderr")
    common(sp)
    sp.set_defaults(func=cmd_empty)

    sp = sub.add_parser("reduce-sat", help="3-CNF (DIMACS) to LaMA plus word")
    sp.add_argument("file", help="DIMACS file ('-' for stdin)")
    sp.add_argument("--word-file", help="write the word here instead of after the automaton")
    common(sp, emits=True)
    sp.set_defaults(func=cmd_reduce_sat)

    sp = sub.add_parser("reduce-qbf", help="QBF (QDIMACS) to ν-automaton")
    sp.add_argument("file", help="QDIMACS file ('-' for stdin)")
    sp.add_argument("--word", action="store_true", help="also print the unfolded input word")
    common(sp, emits=True)
    sp.set_defaults(func=cmd_reduce_qbf)

    sp = sub.add_parser("gen-example", help="emit a reference automaton")
    sp.add_argument("id", help="fig2_lp, fig3_hra or double_exp(N)")
    sp.add_argument("--witness", action="store_true", help="append an accepted word (double_exp)")
    sp.add_argument("--halved", action="store_true", help="append the word with half the letters (double_exp)")
    common(sp, emits=True)
    sp.set_defaults(func=cmd_gen_example)
    return p


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args, _Input(stdin), out, err)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (LoadError, FormatError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO
    except MemautoError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
