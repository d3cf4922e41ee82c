"""Text formats: readers and printers for every object the CLI handles.

Each ``read_*`` accepts either source text or an already parsed node and
raises :class:`~ctree.sexpr.ParseError` with a line and column on bad input.
Each ``format_*`` produces text that reads back to an equal object.
"""
from __future__ import annotations

import re

from .classify import DEFAULT_R0, ClassDescription
from .logic import (And, App, Eq, Exists, Forall, Formula, Imp, LogicError, Not, Or, Pred,
                    Signature, Symbol, Var, format_formula)
from .prefix import PrefixError, PrefixLanguage
from .schemes import (EqVars, ExprSequence, FuncExpr, FunctionNode, PredicateNode, PredVars,
                      ProblemScheme, SchemeError, TerminalNode, TreeScheme, delta_index,
                      MAX_PREDICATES)
from .semantics import Bounded, Explicit, FiniteStructure
from .sexpr import ParseError, SList, Sym, parse

_VAR = re.compile(r"x(\d+)$")
_NAT = re.compile(r"\d+$")
_FORMULA_HEADS = {"and", "or", "not", "imp", "forall", "exists", "="}


def _node(src):
    return parse(src) if isinstance(src, str) else src


def _err(node, message):
    return ParseError(message, getattr(node, "line", 0), getattr(node, "col", 0))


def _atom(node, what="symbol") -> str:
    if not isinstance(node, Sym) or node.quoted:
        raise _err(node, f"expected {what}")
    return node.name


def _nat(node, what="natural number") -> int:
    s = _atom(node, what)
    if not _NAT.match(s):
        raise _err(node, f"expected {what}, got {s!r}")
    return int(s)


def _var(node) -> int:
    s = _atom(node, "variable")
    m = _VAR.match(s)
    if not m:
        raise _err(node, f"expected a variable like x0, got {s!r}")
    return int(m.group(1))


def _list(node, head=None, min_len=1) -> SList:
    if not isinstance(node, SList) or len(node) < min_len:
        raise _err(node, f"expected a list{' (' + head + ' ...)' if head else ''}")
    if head is not None and node.head() != head:
        raise _err(node, f"expected ({head} ...), got {node.head() or 'a list'}")
    return node


def _flag(node) -> bool:
    s = _atom(node, "on/off")
    if s in ("on", "yes", "true"):
        return True
    if s in ("off", "no", "false"):
        return False
    raise _err(node, f"expected on/off, got {s!r}")


def _fields(node, allowed) -> dict:
    """Map ``(key ...)`` children of a list to the child lists."""
    out = {}
    for item in node.items[1:]:
        key = _list(item).head()
        if key not in allowed:
            raise _err(item, f"unexpected field {key!r} in ({node.head()} ...)")
        out.setdefault(key, []).append(item)
    return out


def _one(fields, key, node, required=True):
    items = fields.get(key, [])
    if len(items) > 1:
        raise _err(items[1], f"duplicate field ({key} ...)")
    if not items:
        if required:
            raise _err(node, f"missing field ({key} ...)")
        return None
    return items[0]


def _with_location(node, fn, *args):
    try:
        return fn(*args)
    except (LogicError, SchemeError, PrefixError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise _err(node, str(e)) from None


# -- signatures ---------------------------------------------------------------

def read_signature(src) -> Signature:
    """``(signature (pred r 1) (fn f 1) (equality on))``; optional
    ``(infinite yes)`` and ``(constants on)``."""
    node = _list(_node(src), "signature")
    symbols, flags = [], {"equality": False, "infinite": False, "constants": False}
    seen = set()
    for item in node.items[1:]:
        item = _list(item)
        head = item.head()
        if head in ("pred", "fn"):
            if len(item) != 3:
                raise _err(item, f"expected ({head} name arity)")
            symbols.append(Symbol(_atom(item[1]), head, _nat(item[2], "arity")))
        elif head in flags:
            if head in seen or len(item) != 2:
                raise _err(item, f"bad or duplicate ({head} ...)")
            seen.add(head)
            flags[head] = _flag(item[1])
        else:
            raise _err(item, f"unexpected field {head!r} in signature")
    return _with_location(node, Signature, tuple(symbols), flags["equality"],
                          flags["infinite"], flags["constants"])


def format_signature(sig: Signature) -> str:
    parts = [f"({s.kind} {s.name} {s.arity})" for s in sig.symbols]
    parts.append(f"(equality {'on' if sig.equality else 'off'})")
    if sig.infinite:
        parts.append("(infinite yes)")
    if sig.allow_constants:
        parts.append("(constants on)")
    return "(signature " + " ".join(parts) + ")"


# -- terms and formulas -------------------------------------------------------

def read_term(src):
    node = _node(src)
    if isinstance(node, Sym):
        if _VAR.match(node.name) and not node.quoted:
            return Var(int(node.name[1:]))
        return App(_atom(node, "term"), ())
    head = node.head()
    if head is None or head in _FORMULA_HEADS or head == "<=":
        raise _err(node, "expected a term")
    return App(head, tuple(read_term(a) for a in node.items[1:]))


def read_formula(src) -> Formula:
    node = _node(src)
    if isinstance(node, Sym):
        raise _err(node, "expected a formula, got a bare symbol")
    head = node.head()
    args = node.items[1:]
    if head is None:
        raise _err(node, "expected a formula")
    if head == "=":
        if len(args) != 2:
            raise _err(node, "(= t1 t2) takes two terms")
        return Eq(read_term(args[0]), read_term(args[1]))
    if head == "not":
        if len(args) != 1:
            raise _err(node, "(not f) takes one formula")
        return Not(read_formula(args[0]))
    if head in ("and", "or"):
        if len(args) < 2:
            raise _err(node, f"({head} ...) needs at least two formulas")
        parts = tuple(read_formula(a) for a in args)
        return And(parts) if head == "and" else Or(parts)
    if head == "imp":
        if len(args) != 2:
            raise _err(node, "(imp f g) takes two formulas")
        return Imp(read_formula(args[0]), read_formula(args[1]))
    if head in ("forall", "exists"):
        if len(args) != 2:
            raise _err(node, f"({head} xi f) takes a variable and a formula")
        cls = Forall if head == "forall" else Exists
        return cls(_var(args[0]), read_formula(args[1]))
    if _VAR.match(head):
        raise _err(node, f"variable {head} used as a predicate")
    return Pred(head, tuple(read_term(a) for a in args))


def read_sentence_file(src) -> Formula:
    """A formula file holds one formula; ``(sentence f)`` is accepted too."""
    node = _node(src)
    if isinstance(node, SList) and node.head() == "sentence":
        if len(node) != 2:
            raise _err(node, "(sentence f) holds one formula")
        node = node[1]
    return read_formula(node)


# -- prefix languages ---------------------------------------------------------

def read_prefix_lang(src) -> PrefixLanguage:
    """``(prefix-lang "E*A2" "A*")``; raw words as ``(word "AE")``."""
    node = _list(_node(src), "prefix-lang")
    patterns, words = [], []
    for item in node.items[1:]:
        if isinstance(item, Sym):
            if not item.quoted:
                raise _err(item, "pattern words are quoted strings")
            patterns.append(item.name)
        elif item.head() == "word" and len(item) == 2 and isinstance(item[1], Sym):
            words.append(item[1].name)
        else:
            raise _err(item, 'expected "pattern" or (word "...")')
    return _with_location(node, PrefixLanguage, tuple(patterns), tuple(words))


def format_prefix_lang(lang: PrefixLanguage) -> str:
    return str(lang)


# -- expressions and sequences ------------------------------------------------

def read_expr(src):
    """``(x1 <= f x0)``, ``(= x0 x1)`` or ``(r x0 x1)``."""
    node = _list(_node(src))
    if len(node) >= 3 and isinstance(node[1], Sym) and node[1].name == "<=" and not node[1].quoted:
        return FuncExpr(_var(node[0]), _atom(node[2], "function symbol"),
                        tuple(_var(a) for a in node.items[3:]))
    head = node.head()
    if head == "=":
        if len(node) != 3:
            raise _err(node, "(= xi xj) takes two variables")
        return EqVars(_var(node[1]), _var(node[2]))
    if head is None or _VAR.match(head):
        raise _err(node, "expected an expression")
    return PredVars(head, tuple(_var(a) for a in node.items[1:]))


def format_expr(e) -> str:
    if isinstance(e, FuncExpr):
        return "(" + " ".join([f"x{e.target}", "<=", e.symbol, *(f"x{a}" for a in e.args)]) + ")"
    if isinstance(e, EqVars):
        return f"(= x{e.left} x{e.right})"
    return "(" + " ".join([e.symbol, *(f"x{a}" for a in e.args)]) + ")"


def _n_field(node, fields) -> int:
    item = _one(fields, "n", node)
    if len(item) != 2:
        raise _err(item, "expected (n k)")
    return _nat(item[1], "input arity")


def read_seq(src) -> ExprSequence:
    """``(seq (n 1) (x1 <= f x0) (r x1))``"""
    node = _list(_node(src), "seq")
    n = None
    exprs = []
    for item in node.items[1:]:
        if isinstance(item, SList) and item.head() == "n" and len(item) == 2:
            if n is not None:
                raise _err(item, "duplicate (n ...)")
            n = _nat(item[1])
        else:
            exprs.append(read_expr(item))
    if n is None:
        raise _err(node, "missing field (n ...)")
    return _with_location(node, ExprSequence, n, tuple(exprs))


def format_seq(seq: ExprSequence) -> str:
    return " ".join([f"(seq (n {seq.n})", *map(format_expr, seq.exprs)]) + ")"


# -- tree schemes -------------------------------------------------------------

def read_tree(src) -> TreeScheme:
    """``(tree (n 1) (root n0) (node n0 pred (r x0) (0 n1) (1 n2)) ...)``"""
    node = _list(_node(src), "tree")
    fields = _fields(node, {"n", "root", "node"})
    n = _n_field(node, fields)
    root_item = _one(fields, "root", node)
    if len(root_item) != 2:
        raise _err(root_item, "expected (root name)")
    decls = fields.get("node", [])
    if not decls:
        raise _err(node, "a tree needs at least one node")
    names = {}
    for d in decls:
        if len(d) < 3:
            raise _err(d, "expected (node name kind ...)")
        name = _atom(d[1], "node name")
        if name in names:
            raise _err(d[1], f"duplicate node {name!r}")
        names[name] = len(names)

    def ref(item):
        name = _atom(item, "node name")
        if name not in names:
            raise _err(item, f"unknown node {name!r}")
        return names[name]

    def edge(item, key):
        item = _list(item)
        if len(item) != 2 or not isinstance(item[0], Sym) or item[0].name != key:
            raise _err(item, f"expected ({key} node)")
        return ref(item[1])

    nodes = []
    for d in decls:
        kind = _atom(d[2], "node kind")
        if kind == "term":
            if len(d) != 4:
                raise _err(d, "expected (node name term label)")
            nodes.append(TerminalNode(_nat(d[3], "label")))
        elif kind == "fn":
            if len(d) != 5:
                raise _err(d, "expected (node name fn (xj <= f ...) (next node))")
            e = read_expr(d[3])
            if not isinstance(e, FuncExpr):
                raise _err(d[3], "function node needs (xj <= f ...)")
            nodes.append(FunctionNode(e, edge(d[4], "next")))
        elif kind == "pred":
            if len(d) != 6:
                raise _err(d, "expected (node name pred expr (0 node) (1 node))")
            e = read_expr(d[3])
            if isinstance(e, FuncExpr):
                raise _err(d[3], "predicate node needs a predicate expression")
            nodes.append(PredicateNode(e, edge(d[4], "0"), edge(d[5], "1")))
        else:
            raise _err(d[2], f"unknown node kind {kind!r}")
    return _with_location(node, TreeScheme, n, tuple(nodes), ref(root_item[1]))


def format_tree(S: TreeScheme) -> str:
    parts = [f"(n {S.n})", f"(root n{S.root})"]
    for i, nd in enumerate(S.nodes):
        if isinstance(nd, TerminalNode):
            parts.append(f"(node n{i} term {nd.label})")
        elif isinstance(nd, FunctionNode):
            parts.append(f"(node n{i} fn {format_expr(nd.expr)} (next n{nd.child}))")
        else:
            parts.append(f"(node n{i} pred {format_expr(nd.expr)} (0 n{nd.child0}) (1 n{nd.child1}))")
    return "(tree " + " ".join(parts) + ")"


# -- problem schemes ----------------------------------------------------------

def _delta_key(node, k):
    s = _atom(node, "sign tuple")
    if not re.fullmatch(r"[01]+", s) or len(s) != k:
        raise _err(node, f"expected a {k}-digit 0/1 tuple, got {s!r}")
    return tuple(int(c) for c in s)


def read_problem(src) -> ProblemScheme:
    """``(problem (n 1) (exprs (x1 <= f x0) (r x1)) (nu (0 5) (1 7)))``

    ``nu`` entries are keyed by 0/1 strings with one digit per predicate
    expression; ``(default v)`` fills the entries not listed.
    """
    node = _list(_node(src), "problem")
    fields = _fields(node, {"n", "exprs", "nu"})
    n = _n_field(node, fields)
    exprs = tuple(read_expr(e) for e in _one(fields, "exprs", node).items[1:])
    k = sum(1 for e in exprs if not isinstance(e, FuncExpr))
    if not 1 <= k <= MAX_PREDICATES:
        raise _err(node, f"a problem needs between 1 and {MAX_PREDICATES} predicate expressions, got {k}")
    nu_node = _one(fields, "nu", node)
    table, default = {}, None
    for entry in nu_node.items[1:]:
        entry = _list(entry)
        if len(entry) != 2:
            raise _err(entry, "expected (tuple value)")
        if entry.head() == "default":
            default = _nat(entry[1], "label")
            continue
        key = _delta_key(entry[0], k)
        if key in table:
            raise _err(entry, f"duplicate entry for {entry[0].name}")
        table[key] = _nat(entry[1], "label")
    nu = [default] * (2 ** k)
    for key, v in table.items():
        nu[delta_index(key)] = v
    if None in nu:
        missing = nu.index(None)
        raise _err(nu_node, f"nu has no entry for {format(missing, f'0{k}b')}")
    return _with_location(node, ProblemScheme, n, tuple(nu), exprs)


def format_problem(s: ProblemScheme) -> str:
    k = s.k
    entries = " ".join(f"({format(i, f'0{k}b')} {v})" for i, v in enumerate(s.nu))
    exprs = " ".join(map(format_expr, s.exprs))
    return f"(problem (n {s.n}) (exprs {exprs}) (nu {entries}))"


# -- structures ---------------------------------------------------------------

def _infer_arity(size, cells, node):
    if size == 1:
        if cells != 1:
            raise _err(node, "a size-1 structure has one entry per table")
        return 1
    a, c = 0, 1
    while c < cells:
        c *= size
        a += 1
    if c != cells:
        raise _err(node, f"{cells} entries is not a power of the size {size}")
    return a


def read_structure(src, sig: Signature | None = None) -> FiniteStructure:
    """``(structure (size 2) (pred r (0 1)) (fn f (1 0)))``.

    Tables are row-major.  ``(pred r 1 (0 1))`` gives the arity explicitly;
    without a signature, missing arities are inferred from the table length
    (size-1 tables default to arity 1).
    """
    node = _list(_node(src), "structure")
    size = None
    tables = {}
    decl = []
    for item in node.items[1:]:
        item = _list(item)
        head = item.head()
        if head == "size":
            if size is not None or len(item) != 2:
                raise _err(item, "bad or duplicate (size ...)")
            size = _nat(item[1], "size")
            continue
        if head not in ("pred", "fn") or len(item) not in (3, 4):
            raise _err(item, "expected (pred name (table)) or (fn name (table))")
        name = _atom(item[1])
        if name in tables:
            raise _err(item, f"duplicate table for {name!r}")
        arity = _nat(item[2], "arity") if len(item) == 4 else None
        cells = _list(item[-1], min_len=0)
        tables[name] = (head, arity, tuple(_nat(c, "table entry") for c in cells.items), item)
        decl.append(name)
    if size is None:
        raise _err(node, "missing field (size ...)")
    if size < 1:
        raise _err(node, "size must be at least 1")
    if sig is None:
        syms = []
        for name in decl:
            kind, arity, cells, item = tables[name]
            if arity is None:
                arity = _infer_arity(size, len(cells), item)
            syms.append(Symbol(name, kind, arity))
        sig = _with_location(node, Signature, tuple(syms), False, False, True)
    for name, (kind, arity, _, item) in tables.items():
        if name not in sig:
            raise _err(item, f"unknown symbol {name!r}")
        sym = sig.lookup(name)
        if sym.kind != kind or (arity is not None and arity != sym.arity):
            raise _err(item, f"{name!r} does not match its signature declaration")
    for s in sig.symbols:
        if s.name not in tables:
            raise _err(node, f"missing table for {s.name!r}")
    return _with_location(node, FiniteStructure, sig, size,
                          tuple(tables[s.name][2] for s in sig.symbols))


def format_structure(U: FiniteStructure, arities: bool = False) -> str:
    parts = [f"(size {U.size})"]
    for s, t in zip(U.sig.symbols, U.tables):
        ar = f" {s.arity}" if arities else ""
        parts.append(f"({s.kind} {s.name}{ar} (" + " ".join(map(str, t)) + "))")
    return "(structure " + " ".join(parts) + ")"


# -- class specs for structures -------------------------------------------------

def read_class_spec(src, sig: Signature):
    """``(bounded N [formula])`` or ``(explicit (structure ...) ...)``."""
    node = _list(_node(src))
    head = node.head()
    if head == "bounded":
        if len(node) not in (2, 3):
            raise _err(node, "expected (bounded N [constraint])")
        constraint = read_formula(node[2]) if len(node) == 3 else None
        return _with_location(node, Bounded, _nat(node[1]), constraint)
    if head == "explicit":
        return Explicit(tuple(read_structure(s, sig) for s in node.items[1:]))
    raise _err(node, "expected (bounded ...) or (explicit ...)")


def format_class_spec(spec) -> str:
    if isinstance(spec, Bounded):
        extra = f" {format_formula(spec.constraint)}" if spec.constraint is not None else ""
        return f"(bounded {spec.max_size}{extra})"
    return "(explicit" + "".join(" " + format_structure(U) for U in spec.structures) + ")"


# -- classifier descriptions --------------------------------------------------

def _count(node) -> int:
    s = _atom(node, "count like x3")
    m = re.fullmatch(r"x?(\d+)", s)
    if not m:
        raise _err(node, f"expected a count like x3, got {s!r}")
    return int(m.group(1))


def read_class_description(src, r0: int | None = None) -> ClassDescription:
    """``(class (sig-summary (pred 1 x3) (fn 1 x0) (infinite no)) (equality off)
    (prefixes (prefix-lang "E*A*") ...) [(r0 13)])``"""
    node = _list(_node(src), "class")
    fields = _fields(node, {"sig-summary", "equality", "prefixes", "r0"})
    summary = _one(fields, "sig-summary", node)
    preds, fns, infinite = [], [], False
    for item in summary.items[1:]:
        item = _list(item)
        head = item.head()
        if head in ("pred", "fn"):
            if len(item) != 3:
                raise _err(item, f"expected ({head} arity xcount)")
            (preds if head == "pred" else fns).append((_nat(item[1], "arity"), _count(item[2])))
        elif head == "infinite" and len(item) == 2:
            infinite = _flag(item[1])
        else:
            raise _err(item, "expected (pred a xk), (fn a xk) or (infinite yes/no)")
    eq_item = _one(fields, "equality", node, required=False)
    equality = _flag(eq_item[1]) if eq_item is not None and len(eq_item) == 2 else False
    pref = _one(fields, "prefixes", node)
    langs = tuple(read_prefix_lang(p) for p in pref.items[1:])
    r0_item = _one(fields, "r0", node, required=False)
    if r0 is None:
        r0 = _nat(r0_item[1]) if r0_item is not None else DEFAULT_R0
    return ClassDescription(tuple(preds), tuple(fns), infinite, equality, langs, r0)


def format_class_description(d: ClassDescription) -> str:
    parts = [f"(pred {a} x{c})" for a, c in d.preds] + [f"(fn {a} x{c})" for a, c in d.fns]
    parts.append(f"(infinite {'yes' if d.infinite else 'no'})")
    langs = " ".join(map(str, d.prefix_sets))
    return (f"(class (sig-summary {' '.join(parts)}) (equality {'on' if d.equality else 'off'}) "
            f"(prefixes {langs}) (r0 {d.r0}))")


# -- weights ------------------------------------------------------------------

def read_weights(text: str) -> dict:
    """Lines ``symbol<TAB>weight``; blank lines and ``#`` comments ignored."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split("\t") if "\t" in stripped else stripped.split()
        if len(parts) != 2:
            raise ParseError("expected 'symbol<TAB>weight'", lineno, 1)
        name, w = parts[0].strip(), parts[1].strip()
        if not _NAT.match(w) or int(w) < 1:
            raise ParseError(f"weight must be a positive integer, got {w!r}", lineno,
                             line.index(w) + 1)
        if name in out:
            raise ParseError(f"duplicate weight for {name!r}", lineno, 1)
        out[name] = int(w)
    return out


def format_weights(weights) -> str:
    return "".join(f"{k}\t{v}\n" for k, v in dict(weights).items())

