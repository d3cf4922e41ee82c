"""``ctree`` command line.

Every option that takes an object accepts either a file path or the
s-expression text itself (anything starting with ``(``).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import io
from .classify import ClassificationError, Decidable, ReductionClass, classify, explain
from .logic import And, LogicError, format_formula
from .optimize import ComplexityMeasure, OptimizerError, optimize, sat_via_optimizer
from .prefix import PrefixError
from .satisfiability import sat_check
from .schemes import SchemeError, is_predicate, kappa, normalize_variables, term_sequence
from .semantics import Bounded, ExplosionError, evaluate_problem, evaluate_tree
from .sexpr import ParseError
from .solvability import ReductionWitness, StructureWitness, solves_relative

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2
EXIT_REDUCTION, EXIT_UNKNOWN = 3, 4
EXIT_DIVERGED = 5


class UsageError(Exception):
    pass


def _text(value: str) -> str:
    if value.lstrip().startswith("("):
        return value
    path = Path(value)
    if not path.exists():
        raise UsageError(f"no such file: {value}")
    return path.read_text()


def _inputs(value: str) -> tuple:
    parts = value.replace(",", " ").split()
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"input must be integers, got {value!r}") from None


def _signature(args, required=True):
    if getattr(args, "signature", None):
        return io.read_signature(_text(args.signature))
    if required:
        raise UsageError("--signature is required")
    return None


def _spec(args):
    return Bounded(args.max_size)


def _alpha(args):
    return io.read_sentence_file(_text(args.alpha)) if getattr(args, "alpha", None) else None


def _emit(args, payload: dict, lines: list[str]):
    payload["timings"] = {"seconds": round(time.perf_counter() - args._t0, 6)}
    if args.json:
        print(json.dumps(payload, indent=None, sort_keys=True, default=str))
    else:
        for line in lines:
            print(line)


def _trace_lines(ev):
    out = []
    for node, regs in ev.trace:
        regs_s = " ".join(f"x{k}={v}" for k, v in sorted(regs.items()))
        out.append(f"  n{node} [{regs_s}]")
    return out


# -- subcommands --------------------------------------------------------------

def cmd_eval(args):
    S = io.read_tree(_text(args.tree))
    sig = _signature(args, required=False)
    U = io.read_structure(_text(args.structure), sig)
    ev = evaluate_tree(S, U, _inputs(args.input))
    path = " ".join(f"n{i}" for i in ev.path.nodes)
    formulas = [format_formula(f) for f in ev.path.formulas]
    _emit(args, {"verdict": {"label": ev.label, "path": path, "formulas": formulas,
                             "trace": [[n, r] for n, r in ev.trace]}},
          [f"label {ev.label}", f"path {path}", "formulas " + " ".join(formulas), "trace"]
          + _trace_lines(ev))
    return EXIT_OK


def cmd_problem_eval(args):
    s = io.read_problem(_text(args.problem))
    sig = _signature(args, required=False)
    U = io.read_structure(_text(args.structure), sig)
    value = evaluate_problem(s, U, _inputs(args.input))
    _emit(args, {"verdict": {"value": value}}, [f"value {value}"])
    return EXIT_OK


def _sat_result(args, verdict):
    if verdict.sat:
        dump = io.format_structure(verdict.witness)
        _emit(args, {"verdict": "SAT", "witness": dump}, ["SAT", dump])
        return EXIT_OK
    _emit(args, {"verdict": f"UNSAT-UP-TO {verdict.bound}"}, [f"UNSAT-UP-TO {verdict.bound}"])
    return EXIT_NO


def cmd_sat(args):
    sig = _signature(args)
    f = io.read_sentence_file(_text(args.sentence))
    alpha = _alpha(args)
    sentence = f if alpha is None else And((alpha, f))
    return _sat_result(args, sat_check(sentence, sig, _spec(args), args.guard))


def _witness(w):
    if isinstance(w, StructureWitness):
        return {"structure": io.format_structure(w.structure), "input": list(w.inputs),
                "expected": w.expected, "got": w.got}
    if isinstance(w, ReductionWitness):
        return {"path": " ".join(f"n{i}" for i in w.path.nodes), "delta": "".join(map(str, w.delta)),
                "sentence": format_formula(w.sentence),
                "structure": io.format_structure(w.structure)}
    return None


def cmd_solve_check(args):
    sig = _signature(args)
    S = io.read_tree(_text(args.tree))
    s = io.read_problem(_text(args.problem))
    alpha = _alpha(args)
    spec = _spec(args)
    methods = ("brute", "reduction") if args.method == "both" else (args.method,)
    verdicts = {m: solves_relative(S, s, sig, spec, alpha, m, args.guard) for m in methods}
    answers = {m: v.solves for m, v in verdicts.items()}
    lines, payload = [], {"verdict": {}}
    for m, v in verdicts.items():
        word = "SOLVES" if v.solves else "FAILS"
        lines.append(f"{m}: {word}" + ("" if v.solves else f" ({v.reason})"))
        payload["verdict"][m] = word
        if not v.solves and v.witness is not None:
            payload.setdefault("witness", {})[m] = _witness(v.witness)
            lines += [f"  {k}: {val}" for k, val in _witness(v.witness).items()]
    if len(set(answers.values())) > 1:
        lines.append("DIVERGED: methods disagree")
        payload["diverged"] = True
        _emit(args, payload, lines)
        return EXIT_DIVERGED
    _emit(args, payload, lines)
    return EXIT_OK if all(answers.values()) else EXIT_NO


def _measure(args, sig):
    weights = io.read_weights(Path(args.measure).read_text()) if args.measure else {}
    return ComplexityMeasure.for_signature(sig, weights)


def cmd_optimize(args):
    sig = _signature(args)
    s = io.read_problem(_text(args.problem))
    m = _measure(args, sig)
    res = optimize(s, sig, _spec(args), _alpha(args), m, args.method, args.var_cap, args.guard)
    tree = io.format_tree(res.tree)
    cert = " ".join(f"b{b}:{c}" for b, c in res.certificate.items())
    lines = [tree, f"psi={res.psi}", f"certificate {cert}"]
    if res.note:
        lines.append(f"note: {res.note}")
    _emit(args, {"verdict": {"tree": tree, "psi": res.psi, "bound": res.bound},
                 "certificate": res.certificate}, lines)
    return EXIT_OK


def cmd_sat_via_opt(args):
    sig = _signature(args)
    gamma = io.read_sentence_file(_text(args.sentence))
    return _sat_result(args, sat_via_optimizer(_alpha(args), gamma, sig, _spec(args),
                                               _measure(args, sig), args.guard))


def cmd_classify(args):
    desc = io.read_class_description(_text(args.spec), args.r0)
    report = explain(desc)
    if report.error:
        raise ClassificationError(report.error)
    verdict = classify(desc)
    lines = [str(verdict)]
    if isinstance(verdict, Decidable) and verdict.note:
        lines.append(f"note: {verdict.note}")
    if args.explain:
        lines += report.lines()[:-1]
    payload = {"verdict": str(verdict),
               "conditions": {c.tag: {"holds": c.holds, "detail": c.detail}
                              for c in report.conditions}}
    _emit(args, payload, lines)
    if isinstance(verdict, Decidable):
        return EXIT_OK
    return EXIT_REDUCTION if isinstance(verdict, ReductionClass) else EXIT_UNKNOWN


def cmd_kappa(args):
    seq = io.read_seq(_text(args.seq))
    rows = term_sequence(seq)
    lines, out = [], []
    for i, e in enumerate(seq.exprs, 1):
        if not is_predicate(e):
            continue
        row = rows[i - 1]
        atom = io.format_formula(kappa(seq, i))
        lines.append(f"M{i}: " + " ".join(map(str, row.items)) + f" | kappa[{i}]: {atom}")
        out.append({"index": i, "row": [str(t) for t in row.items], "kappa": atom})
    _emit(args, {"verdict": out}, lines)
    return EXIT_OK


def cmd_normalize(args):
    S = io.read_tree(_text(args.tree))
    text = io.format_tree(normalize_variables(S))
    _emit(args, {"verdict": text}, [text])
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for anything randomized")
    common.add_argument("--threads", type=int, default=1, help="worker count (default 1)")
    common.add_argument("--guard", type=int, default=2_000_000,
                        help="refuse to enumerate more structures than this")

    p = argparse.ArgumentParser(prog="ctree", description="Computation trees over finite structures.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("eval", cmd_eval, "run a tree scheme on a structure and input")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--structure", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--signature")

    sp = add("problem-eval", cmd_problem_eval, "evaluate a problem scheme")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--structure", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--signature")

    def bounded(sp):
        sp.add_argument("--signature", required=True)
        sp.add_argument("--max-size", type=int, required=True)
        sp.add_argument("--alpha")

    sp = add("sat", cmd_sat, "bounded satisfiability search")
    sp.add_argument("--sentence", required=True)
    bounded(sp)

    sp = add("solve-check", cmd_solve_check, "does a tree solve a problem over the class")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--problem", required=True)
    sp.add_argument("--method", choices=("brute", "reduction", "both"), default="brute")
    bounded(sp)

    sp = add("optimize", cmd_optimize, "minimum-complexity solver for a problem")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--measure", help="weights file, lines 'symbol<TAB>weight'")
    sp.add_argument("--var-cap", type=int, default=8)
    sp.add_argument("--method", choices=("brute", "reduction"), default="brute")
    bounded(sp)

    sp = add("sat-via-opt", cmd_sat_via_opt, "satisfiability of an existential sentence via the optimizer")
    sp.add_argument("--sentence", required=True)
    sp.add_argument("--measure")
    bounded(sp)

    sp = add("classify", cmd_classify, "decidability verdict for a prefix class")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--r0", type=int)
    sp.add_argument("--explain", action="store_true")

    sp = add("kappa", cmd_kappa, "print the term rows and atoms of a sequence")
    sp.add_argument("--seq", required=True)

    sp = add("normalize", cmd_normalize, "rename scheme variables into the normal range")
    sp.add_argument("--tree", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.perf_counter()
    random.seed(args.seed)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except (ParseError, LogicError, SchemeError, PrefixError, ClassificationError,
            ExplosionError, OptimizerError, UsageError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        if args.json:
            print(json.dumps({"verdict": "ERROR", "error": msg}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
