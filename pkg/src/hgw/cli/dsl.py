"""The stanza language for sessions: parser, evaluator and printer.

A file is a list of stanzas::

    [kind.name]
    key = value
    gen -> tensor        # morphism stanzas only

Kinds are ``session``, ``matrix``, ``presentation``, ``morphism`` and
``system``.  Parsing happens in two passes: the first reads every stanza
and tokenizes nothing but the headers and keys, the second evaluates the
values kind by kind (matrices, presentations, morphisms, systems), so a
stanza may refer to one that appears later in the file.

Expression grammar (``@`` binds tighter than ``+``/``-``)::

    tensor  := ['-'] tterm (('+'|'-') tterm)*
    tterm   := prod ('@' prod)*
    prod    := atom (['*'] atom)*
    atom    := INT ['/' INT] | 'xi' ['^' ['-'] INT] | GEN ['^' INT] | '(' poly ')'
    poly    := ['-'] prod (('+'|'-') prod)*

A polynomial is a tensor with one factor; a scalar is a polynomial with
no generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..exact import Field, FieldMismatch, mpq
from ..ncalg.morphism import AlgMorphism
from ..ncalg.poly import Alphabet, NcPoly, TensorElem
from ..ncalg.presentation import Presentation, free_algebra
from ..system import HopfGaloisSystem
from .config import ConfigError, SessionConfig

KINDS = ("session", "matrix", "presentation", "morphism", "system")
RESERVED = ("xi", "k")


class DSLError(ValueError):
    """Parse or evaluation error with a 1-based line and column."""

    def __init__(self, message: str, line: int, col: int, expected: str | None = None):
        self.message, self.line, self.col, self.expected = message, line, col, expected
        text = f"line {line}, column {col}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


# ---------------------------------------------------------------------------
# tokens

@dataclass
class Tok:
    kind: str   # NUM, IDENT, OP, EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|[-+*/^@()\[\],;=])")


def tokenize(text: str, line: int = 1, col: int = 1) -> List[Tok]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLError(f"unexpected character {text[pos]!r}", line, col + pos)
        kind = {"num": "NUM", "ident": "IDENT", "op": "OP"}[m.lastgroup]
        out.append(Tok(kind, m.group(), line, col + pos))
        pos = m.end()
    out.append(Tok("EOF", "", line, col + len(text)))
    return out


# ---------------------------------------------------------------------------
# expression syntax trees

@dataclass
class Node:
    op: str             # num, xi, gen, pow, mul, add
    line: int
    col: int
    value: object = None
    args: list = field(default_factory=list)


@dataclass
class TensorTerm:
    sign: int
    factors: List[Node]
    line: int
    col: int


class ExprParser:
    def __init__(self, text: str, line: int = 1, col: int = 1):
        self.toks = tokenize(text, line, col)
        self.i = 0

    # token helpers --------------------------------------------------------
    def peek(self) -> Tok:
        return self.toks[self.i]

    def next(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "OP" and t.text == text

    def error(self, expected: str, tok: Tok | None = None):
        tok = tok or self.peek()
        shown = "end of value" if tok.kind == "EOF" else repr(tok.text)
        raise DSLError(f"syntax error at {shown}", tok.line, tok.col, expected)

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.error(repr(text))
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Tok:
        if self.peek().kind != kind:
            self.error(what)
        return self.next()

    def end(self):
        if self.peek().kind != "EOF":
            self.error("end of value")

    def _starts_atom(self) -> bool:
        t = self.peek()
        return t.kind in ("NUM", "IDENT") or (t.kind == "OP" and t.text == "(")

    # grammar ----------------------------------------------------------------
    def signed_int(self) -> int:
        neg = False
        if self.at("-"):
            self.next()
            neg = True
        t = self.expect_kind("NUM", "an integer")
        return -int(t.text) if neg else int(t.text)

    def atom(self) -> Node:
        t = self.peek()
        if t.kind == "NUM":
            self.next()
            v = mpq(int(t.text))
            if self.at("/"):
                self.next()
                d = self.expect_kind("NUM", "a denominator")
                if int(d.text) == 0:
                    raise DSLError("zero denominator", d.line, d.col)
                v = v / int(d.text)
            return Node("num", t.line, t.col, v)
        if t.kind == "IDENT":
            self.next()
            if t.text == "xi":
                e = 1
                if self.at("^"):
                    self.next()
                    e = self.signed_int()
                return Node("xi", t.line, t.col, e)
            node = Node("gen", t.line, t.col, t.text)
            if self.at("^"):
                self.next()
                k = self.expect_kind("NUM", "a nonnegative exponent")
                node = Node("pow", t.line, t.col, int(k.text), [node])
            return node
        if self.at("("):
            self.next()
            inner = self.poly()
            self.expect(")")
            return inner
        self.error("a number, 'xi', a generator or '('")

    def prod(self) -> Node:
        t = self.peek()
        args = [self.atom()]
        while True:
            if self.at("*"):
                self.next()
                args.append(self.atom())
            elif self._starts_atom():
                args.append(self.atom())
            else:
                break
        return args[0] if len(args) == 1 else Node("mul", t.line, t.col, None, args)

    def poly(self) -> Node:
        t = self.peek()
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        terms = [(sign, self.prod())]
        while self.at("+") or self.at("-"):
            s = 1 if self.next().text == "+" else -1
            terms.append((s, self.prod()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Node("add", t.line, t.col, None, terms)

    def tensor(self) -> List[TensorTerm]:
        terms = []
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        while True:
            t = self.peek()
            factors = [self.prod()]
            while self.at("@"):
                self.next()
                factors.append(self.prod())
            terms.append(TensorTerm(sign, factors, t.line, t.col))
            if self.at("+") or self.at("-"):
                sign = 1 if self.next().text == "+" else -1
                continue
            break
        return terms

    def ident_list(self, what: str = "a name") -> List[Tok]:
        out = [self.expect_kind("IDENT", what)]
        while self.at(","):
            self.next()
            out.append(self.expect_kind("IDENT", what))
        return out

    def matrix(self) -> List[List[Node]]:
        """``[a, b; c, d]`` or ``[[a, b], [c, d]]``."""
        self.expect("[")
        rows: List[List[Node]] = []
        if self.at("["):
            while True:
                self.expect("[")
                rows.append(self._row())
                self.expect("]")
                if not self.at(","):
                    break
                self.next()
        else:
            rows.append(self._row())
            while self.at(";"):
                self.next()
                rows.append(self._row())
        self.expect("]")
        return rows

    def _row(self) -> List[Node]:
        row = [self.poly()]
        while self.at(","):
            self.next()
            row.append(self.poly())
        return row


# ---------------------------------------------------------------------------
# evaluation

_EMPTY = Alphabet(())


def eval_poly(node: Node, alphabet: Alphabet, fld: Field) -> NcPoly:
    op = node.op
    if op == "num":
        return NcPoly.const(alphabet, fld.coerce(node.value))
    if op == "xi":
        if fld.order == 1:
            raise DSLError("field mismatch: 'xi' needs a cyclotomic session "
                           "(set field = cyclotomic N)", node.line, node.col)
        return NcPoly.const(alphabet, fld.xi(node.value))
    if op == "gen":
        if node.value not in alphabet.index:
            raise DSLError(f"unknown identifier {node.value!r}", node.line, node.col,
                           "a generator of the target algebra")
        return NcPoly.gen(alphabet, node.value)
    if op == "pow":
        base = eval_poly(node.args[0], alphabet, fld)
        out = NcPoly.const(alphabet, 1)
        for _ in range(node.value):
            out = out * base
        return out
    if op == "mul":
        out = NcPoly.const(alphabet, 1)
        for a in node.args:
            out = out * eval_poly(a, alphabet, fld)
        return out
    if op == "add":
        out = NcPoly(alphabet)
        for s, a in node.args:
            p = eval_poly(a, alphabet, fld)
            out = out + p if s > 0 else out - p
        return out
    raise AssertionError(op)


def eval_scalar(node: Node, fld: Field):
    p = eval_poly(node, _EMPTY, fld)
    return p.terms.get((), mpq(0))


def eval_tensor(terms: List[TensorTerm], factors: Tuple, fld: Field) -> TensorElem:
    """Evaluate a tensor sum in the tensor product of ``factors`` (the ground field when empty)."""
    out = TensorElem(factors)
    for term in terms:
        if not factors:
            if len(term.factors) != 1:
                raise DSLError(f"arity mismatch: {len(term.factors)} tensor factors for the "
                               "ground field", term.line, term.col, "a scalar")
            out = out + TensorElem.scalar((), term.sign * eval_scalar(term.factors[0], fld))
            continue
        if len(term.factors) == 1 and len(factors) > 1:
            c = eval_scalar_or_none(term.factors[0], fld)
            if c is None:
                raise DSLError(f"arity mismatch: 1 tensor factor for a codomain with {len(factors)}",
                               term.line, term.col, f"{len(factors)} factors joined by '@'")
            out = out + TensorElem.scalar(factors, term.sign * c)
            continue
        if len(term.factors) != len(factors):
            raise DSLError(f"arity mismatch: {len(term.factors)} tensor factors for a codomain "
                           f"with {len(factors)}", term.line, term.col,
                           f"{len(factors)} factors joined by '@'")
        polys = [eval_poly(n, P.alphabet, P.field) for n, P in zip(term.factors, factors)]
        combos: Dict[tuple, object] = {(): mpq(term.sign)}
        for p in polys:
            nxt: Dict[tuple, object] = {}
            for key, c in combos.items():
                for w, d in p.terms.items():
                    nxt[key + (w,)] = c * d
            combos = nxt
        out = out + TensorElem(factors, combos)
    return out


def eval_scalar_or_none(node: Node, fld: Field):
    try:
        return eval_scalar(node, fld)
    except DSLError:
        return None


# ---------------------------------------------------------------------------
# stanzas

@dataclass
class Entry:
    key: str
    op: str          # '=' or '->'
    value: str
    line: int
    col: int         # column where the value starts
    key_col: int = 1


@dataclass
class Stanza:
    kind: str
    name: str
    line: int
    entries: List[Entry] = field(default_factory=list)

    def get(self, key: str) -> Optional[Entry]:
        for e in self.entries:
            if e.key == key and e.op == "=":
                return e
        return None

    def all(self, key: str) -> List[Entry]:
        return [e for e in self.entries if e.key == key and e.op == "="]

    def require(self, key: str) -> Entry:
        e = self.get(key)
        if e is None:
            raise DSLError(f"[{self.kind}.{self.name}] needs '{key} = ...'", self.line, 1, f"key {key!r}")
        return e


_HEADER = re.compile(r"\[\s*([A-Za-z_]\w*)\s*\.\s*([A-Za-z_]\w*)\s*\]\s*$")
_ENTRY = re.compile(r"([A-Za-z_]\w*)\s*(->|=)\s*")
_REPEATABLE = {("presentation", "relation"), ("system", "assumption")}


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def read_stanzas(text: str) -> List[Stanza]:
    """First pass: headers, keys and raw values with positions."""
    stanzas: List[Stanza] = []
    seen = set()
    cur: Stanza | None = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).rstrip()
        stripped = body.lstrip()
        if not stripped:
            continue
        c0 = len(body) - len(stripped) + 1
        if stripped.startswith("["):
            m = _HEADER.match(stripped)
            if not m:
                raise DSLError("malformed stanza header", ln, c0, "'[' kind '.' name ']'")
            kind, name = m.group(1), m.group(2)
            if kind not in KINDS:
                raise DSLError(f"unknown stanza kind {kind!r}", ln, c0 + 1, " or ".join(KINDS))
            if (kind, name) in seen:
                raise DSLError(f"duplicate stanza [{kind}.{name}]", ln, c0)
            seen.add((kind, name))
            cur = Stanza(kind, name, ln)
            stanzas.append(cur)
            continue
        m = _ENTRY.match(stripped)
        if not m:
            raise DSLError("syntax error in entry", ln, c0, "key '=' value or generator '->' tensor")
        if cur is None:
            raise DSLError("entry outside any stanza", ln, c0, "a stanza header")
        key, op = m.group(1), m.group(2)
        value = stripped[m.end():].strip()
        vcol = c0 + m.end()
        if not value:
            raise DSLError(f"missing value for {key!r}", ln, vcol, "a value")
        if op == "->" and cur.kind != "morphism":
            raise DSLError("'->' entries belong to morphism stanzas", ln, c0 + m.start(2), "'='")
        if op == "=" and (cur.kind, key) not in _REPEATABLE and cur.get(key) is not None:
            raise DSLError(f"duplicate key {key!r}", ln, c0)
        cur.entries.append(Entry(key, op, value, ln, vcol, c0))
    return stanzas


# ---------------------------------------------------------------------------
# value readers

def _parser(e: Entry) -> ExprParser:
    return ExprParser(e.value, e.line, e.col)


def read_int(e: Entry) -> int:
    p = _parser(e)
    v = p.signed_int()
    p.end()
    return v


def read_bool(e: Entry) -> bool:
    v = e.value.strip().lower()
    if v not in ("true", "false"):
        raise DSLError(f"bad boolean {e.value!r}", e.line, e.col, "true or false")
    return v == "true"


def read_name(e: Entry) -> Tok:
    p = _parser(e)
    t = p.expect_kind("IDENT", "a name")
    p.end()
    return t


def read_scalar(e: Entry, fld: Field):
    p = _parser(e)
    node = p.poly()
    p.end()
    return eval_scalar(node, fld)


def read_matrix_rows(text: str, fld: Field, line: int = 1, col: int = 1):
    p = ExprParser(text, line, col)
    rows = p.matrix()
    p.end()
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise DSLError(f"arity mismatch: row of length {len(r)} in a matrix with {width} columns",
                           r[0].line, r[0].col)
    return [[eval_scalar(n, fld) for n in r] for r in rows]


def parse_matrix(text: str, fld: Field | None = None):
    """A matrix literal such as ``[1, 2; 0, 1]`` as a FieldMatrix."""
    from ..catalog.matrices import FieldMatrix
    fld = fld or Field(1)
    return FieldMatrix(read_matrix_rows(text, fld), fld)


def parse_polynomial(text: str, pres: Presentation) -> NcPoly:
    p = ExprParser(text)
    node = p.poly()
    p.end()
    return eval_poly(node, pres.alphabet, pres.field)


def parse_tensor(text: str, factors: Tuple, fld: Field | None = None,
                 line: int = 1, col: int = 1) -> TensorElem:
    p = ExprParser(text, line, col)
    terms = p.tensor()
    p.end()
    if fld is None:
        fld = factors[0].field if factors else Field(1)
    return eval_tensor(terms, tuple(factors), fld)


_AST_ENTRY = re.compile(r"e(\d)(\d)$|e(\d+)_(\d+)$")


def parse_ast(text: str, m: int, n: int, line: int = 1, col: int = 1):
    """An AST matrix with roots of order m on n blocks.

    Accepted forms: ``trivial``; named entries ``e12=1, e13=2``; or the full
    strict-upper-triangle exponent list in row-major order (``1, 0, 2``).
    """
    from ..findim.rmatrix import ASTMatrix
    p = ExprParser(text, line, col)
    t = p.peek()
    upper: Dict[Tuple[int, int], int] = {}
    if t.kind == "IDENT" and t.text == "trivial":
        p.next()
    elif t.kind == "IDENT":
        while True:
            name = p.expect_kind("IDENT", "an entry like e12")
            mm = _AST_ENTRY.match(name.text)
            if not mm:
                raise DSLError(f"bad AST entry {name.text!r}", name.line, name.col, "e<i><j>")
            i, j = (int(g) for g in mm.groups() if g is not None)
            p.expect("=")
            upper[(i, j)] = p.signed_int()
            if not p.at(","):
                break
            p.next()
    else:
        vals = [p.signed_int()]
        while p.at(","):
            p.next()
            vals.append(p.signed_int())
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        if len(vals) != len(pairs):
            raise DSLError(f"arity mismatch: {len(vals)} exponents for {len(pairs)} "
                           "upper-triangle entries", t.line, t.col)
        upper = dict(zip(pairs, vals))
    p.end()
    try:
        return ASTMatrix.from_upper(m, n, upper)
    except ValueError as exc:
        raise DSLError(str(exc), t.line, t.col) from None


# ---------------------------------------------------------------------------
# sessions

@dataclass
class Session:
    config: SessionConfig = field(default_factory=SessionConfig)
    matrices: Dict[str, object] = field(default_factory=dict)
    presentations: Dict[str, Presentation] = field(default_factory=dict)
    morphisms: Dict[str, AlgMorphism] = field(default_factory=dict)
    systems: Dict[str, HopfGaloisSystem] = field(default_factory=dict)
    # stanzas that are printed back as written (family presentations, systems)
    sources: Dict[Tuple[str, str], Stanza] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not (self.matrices or self.presentations or self.morphisms or self.systems)


SESSION_KEYS = {"field", "degree_cap", "alpha_cap", "capacity_monomials", "parallel", "report",
                "seed", "timing"}


def _session_config(st: Stanza, base: SessionConfig) -> SessionConfig:
    changes = {}
    for e in st.entries:
        if e.key not in SESSION_KEYS:
            raise DSLError(f"unknown session key {e.key!r}", e.line, e.key_col,
                           ", ".join(sorted(SESSION_KEYS)))
        if e.key == "field":
            v = e.value.split()
            if v == ["rational"]:
                changes["cyclotomic_order"] = 1
            elif len(v) == 2 and v[0] == "cyclotomic" and v[1].isdigit():
                changes["cyclotomic_order"] = int(v[1])
            else:
                raise DSLError(f"bad field {e.value!r}", e.line, e.col, "rational or cyclotomic N")
        elif e.key == "report":
            changes["report"] = e.value.strip()
        elif e.key == "timing":
            changes["timing"] = read_bool(e)
        else:
            changes[e.key] = read_int(e)
    try:
        return base.updated(**changes)
    except ConfigError as exc:
        raise DSLError(str(exc), st.line, 1) from None


class _Builder:
    def __init__(self, session: Session):
        self.s = session

    @property
    def field(self) -> Field:
        return self.s.config.field

    def lookup(self, table: str, e: Entry, what: str):
        t = read_name(e)
        d = getattr(self.s, table)
        if t.text not in d:
            raise DSLError(f"unknown identifier {t.text!r}", t.line, t.col, f"a declared {what}")
        return d[t.text]

    def matrix_value(self, e: Entry):
        """A matrix entry: either a literal or the name of a matrix stanza."""
        from ..catalog.matrices import FieldMatrix
        if e.value.lstrip().startswith("["):
            return FieldMatrix(read_matrix_rows(e.value, self.field, e.line, e.col), self.field)
        return self.lookup("matrices", e, "matrix")

    def check_field(self, P: Presentation, st: Stanza):
        if P.field != self.field:
            raise DSLError(f"field mismatch: {P.name} lives over {P.field!r}, the session over "
                           f"{self.field!r}", st.line, 1, "a matching 'field =' session setting")

    # matrices ---------------------------------------------------------------
    def matrix(self, st: Stanza):
        from ..catalog.matrices import FieldMatrix
        e = st.require("value")
        self.s.matrices[st.name] = FieldMatrix(read_matrix_rows(e.value, self.field, e.line, e.col),
                                               self.field)

    # presentations ------------------------------------------------------------
    def presentation(self, st: Stanza):
        if st.name in RESERVED:
            raise DSLError(f"{st.name!r} is reserved", st.line, 1, "another presentation name")
        fam = st.get("family")
        if fam is not None:
            P = self.family_presentation(st, fam)
            self.check_field(P, st)
            self.s.sources[("presentation", st.name)] = st
        else:
            gens = st.require("generators")
            toks = _parser(gens).ident_list("a generator name")
            for t in toks:
                if t.text in RESERVED:
                    raise DSLError(f"{t.text!r} is reserved", t.line, t.col, "a generator name")
            names = [t.text for t in toks]
            if len(set(names)) != len(names):
                raise DSLError("duplicate generator", gens.line, gens.col)
            free = free_algebra("free", names, self.field)
            rels = []
            for e in st.all("relation"):
                p = _parser(e)
                node = p.poly()
                p.end()
                rels.append(eval_poly(node, free.alphabet, self.field))
            P = Presentation(st.name, free.alphabet, rels, self.field)
        self.s.presentations[st.name] = P

    def family_presentation(self, st: Stanza, fam: Entry) -> Presentation:
        from ..catalog import build_BEF, build_HEF, build_Hmn
        from ..findim.rmatrix import build_Oqp
        from ..group_algebras import cyclic_group_presentation, laurent_presentation
        kind = fam.value.strip()
        if kind == "BEF":
            E = self.matrix_value(st.require("E"))
            F = self.matrix_value(st.get("F") or st.require("E"))
            return build_BEF(E, F)
        if kind == "HEF":
            E = self.matrix_value(st.require("E"))
            F = self.matrix_value(st.get("F") or st.require("E"))
            return build_HEF(E, F)
        if kind == "Hmn":
            m = read_int(st.require("m"))
            n = read_int(st.get("n") or st.require("m"))
            a = st.get("alpha_cap")
            return build_Hmn(m, n, read_int(a) if a else self.s.config.alpha_cap)
        if kind == "Oqp":
            m, n = read_int(st.require("m")), read_int(st.require("n"))
            p = self.ast(st.require("p"), m, n)
            q = self.ast(st.get("q") or st.require("p"), m, n)
            return build_Oqp(q, p)
        if kind == "cyclic":
            return cyclic_group_presentation(read_int(st.require("order")))
        if kind == "laurent":
            return laurent_presentation()
        raise DSLError(f"unknown presentation family {kind!r}", fam.line, fam.col,
                       "BEF, HEF, Hmn, Oqp, cyclic or laurent")

    def ast(self, e: Entry, m: int, n: int):
        return parse_ast(e.value, m, n, e.line, e.col)

    # morphisms ----------------------------------------------------------------
    def morphism(self, st: Stanza):
        dom = self.lookup("presentations", st.require("domain"), "presentation")
        cod_e = st.require("codomain")
        p = _parser(cod_e)
        factors = []
        if p.peek().kind == "IDENT" and p.peek().text == "k":
            p.next()
        else:
            while True:
                t = p.expect_kind("IDENT", "a presentation name or k")
                if t.text not in self.s.presentations:
                    raise DSLError(f"unknown identifier {t.text!r}", t.line, t.col, "a declared presentation")
                factors.append(self.s.presentations[t.text])
                if not p.at("@"):
                    break
                p.next()
        p.end()
        anti_e = st.get("anti")
        anti = read_bool(anti_e) if anti_e else False
        if anti and len(factors) != 1:
            raise DSLError("an anti-morphism needs a single codomain factor", anti_e.line, anti_e.col)
        images = {}
        for e in st.entries:
            if e.op != "->":
                if e.key not in ("domain", "codomain", "anti"):
                    raise DSLError(f"unknown morphism key {e.key!r}", e.line, e.key_col,
                                   "domain, codomain, anti or generator '->' image")
                continue
            if e.key not in dom.alphabet.index:
                raise DSLError(f"unknown identifier {e.key!r}", e.line, e.key_col,
                               f"a generator of {dom.name}")
            if e.key in images:
                raise DSLError(f"duplicate image for {e.key!r}", e.line, e.key_col)
            images[e.key] = parse_tensor(e.value, tuple(factors), self.field, e.line, e.col)
        self.s.morphisms[st.name] = AlgMorphism(st.name, dom, tuple(factors), images, anti=anti)

    # systems --------------------------------------------------------------------
    def system(self, st: Stanza):
        from ..system import Bialgebra, BicomoduleAlgebra, hopf_algebra_system
        fam = st.get("family")
        kind = fam.value.strip() if fam else "explicit"
        sys = None
        if kind in ("prop24", "Oqp"):
            from ..findim.smn import build_smn_system
            m = read_int(st.get("m")) if st.get("m") else 2
            n = read_int(st.get("n")) if st.get("n") else 2
            p = self.ast(st.require("p"), m, n)
            q = self.ast(st.get("q") or st.require("p"), m, n)
            ev = st.get("evidence")
            sys = build_smn_system(q, p, evidence=read_bool(ev) if ev else True)
        elif kind == "bef":
            from ..catalog import build_bef_system
            E = self.matrix_value(st.require("E"))
            sys = build_bef_system(E, self.matrix_value(st.get("F") or st.require("E")))
        elif kind == "hef":
            from ..catalog import build_hef_system
            E = self.matrix_value(st.require("E"))
            F = self.matrix_value(st.get("F") or st.require("E"))
            sym = None
            if st.get("G") or st.get("K"):
                sym = (self.matrix_value(st.require("G")), self.matrix_value(st.require("K")))
            an = st.get("assume_nonzero")
            sys = build_hef_system(E, F, sym, assume_nonzero=read_bool(an) if an else False)
        elif kind == "hmn":
            from ..catalog import build_hmn_system
            m = read_int(st.require("m"))
            n = read_int(st.get("n") or st.require("m"))
            a = st.get("alpha_cap")
            sys = build_hmn_system(m, n, read_int(a) if a else self.s.config.alpha_cap)
        elif kind == "grouplike":
            from ..group_algebras import group_algebra_system
            o = st.get("order")
            sys = group_algebra_system(read_int(o) if o else None)
        elif kind == "degenerate":
            H = Bialgebra(self.lookup("presentations", st.require("algebra"), "presentation"),
                          self.lookup("morphisms", st.require("Delta"), "morphism"),
                          self.lookup("morphisms", st.require("eps"), "morphism"),
                          self.lookup("morphisms", st.require("antipode"), "morphism"))
            sys = hopf_algebra_system(st.name, H)
        elif kind == "explicit":
            P = {r: self.lookup("presentations", st.require(r), "presentation") for r in "ABZT"}
            M = {}
            for r in ("Delta_A", "eps_A", "Delta_B", "eps_B", "alpha", "beta", "gamma", "delta", "S"):
                M[r] = self.lookup("morphisms", st.require(r), "morphism")
            for r in ("S_A", "S_B"):
                M[r] = self.lookup("morphisms", st.get(r), "morphism") if st.get(r) else None
            A = Bialgebra(P["A"], M["Delta_A"], M["eps_A"], M["S_A"])
            B = Bialgebra(P["B"], M["Delta_B"], M["eps_B"], M["S_B"])
            sys = HopfGaloisSystem(st.name, A, B, BicomoduleAlgebra(P["Z"], M["alpha"], M["beta"]),
                                   P["T"], M["gamma"], M["delta"], M["S"],
                                   assumptions=[e.value for e in st.all("assumption")])
        else:
            raise DSLError(f"unknown system family {kind!r}", fam.line, fam.col,
                           "prop24 (alias Oqp), bef, hef, hmn, grouplike, degenerate or explicit")
        if kind != "explicit":
            for p in sys.presentations():
                self.check_field(p, st)
        self.s.sources[("system", st.name)] = st
        self.s.systems[st.name] = sys


def _wrap(exc: Exception, st: Stanza) -> DSLError:
    if isinstance(exc, DSLError):
        return exc
    kind = "field mismatch" if isinstance(exc, FieldMismatch) else "invalid value"
    return DSLError(f"{kind} in [{st.kind}.{st.name}]: {exc}", st.line, 1)


def parse_session(text: str, overrides: dict | None = None,
                  base: SessionConfig | None = None) -> Session:
    """Parse a session file.  ``overrides`` (environment and flags) win over the file."""
    stanzas = read_stanzas(text)
    cfg = base or SessionConfig()
    sess_st = [s for s in stanzas if s.kind == "session"]
    if len(sess_st) > 1:
        raise DSLError("more than one session stanza", sess_st[1].line, 1)
    if sess_st:
        cfg = _session_config(sess_st[0], cfg)
    if overrides:
        try:
            cfg = cfg.updated(**overrides)
        except ConfigError as exc:
            raise DSLError(str(exc), 1, 1) from None
    session = Session(cfg)
    b = _Builder(session)
    for kind in ("matrix", "presentation", "morphism", "system"):
        for st in stanzas:
            if st.kind != kind:
                continue
            try:
                getattr(b, kind)(st)
            except (DSLError, ValueError, KeyError, ArithmeticError) as exc:
                raise _wrap(exc, st) from None
    return session


# ---------------------------------------------------------------------------
# printing

def _stanza_text(kind: str, name: str, lines: List[str]) -> str:
    return "\n".join([f"[{kind}.{name}]"] + lines)


def print_session(session: Session) -> str:
    """Render a session in the stanza language; parsing the output gives equal objects."""
    cfg = session.config
    blocks = []
    fld = "rational" if cfg.cyclotomic_order == 1 else f"cyclotomic {cfg.cyclotomic_order}"
    blocks.append(_stanza_text("session", "main", [
        f"field = {fld}", f"degree_cap = {cfg.degree_cap}", f"alpha_cap = {cfg.alpha_cap}",
        f"capacity_monomials = {cfg.capacity_monomials}", f"parallel = {cfg.parallel}",
        f"report = {cfg.report}", f"seed = {cfg.seed}", f"timing = {str(cfg.timing).lower()}"]))
    for name, M in session.matrices.items():
        blocks.append(_stanza_text("matrix", name, [f"value = {M.label()}"]))
    names = {id(P): n for n, P in session.presentations.items()}
    for name, P in session.presentations.items():
        src = session.sources.get(("presentation", name))
        if src is not None:
            lines = [f"{e.key} = {e.value}" for e in src.entries]
        else:
            lines = [f"generators = {', '.join(P.generators)}"]
            lines += [f"relation = {r}" for r in P.relations]
        blocks.append(_stanza_text("presentation", name, lines))
    for name, f in session.morphisms.items():
        cod = " @ ".join(names[id(c)] for c in f.codomain) if f.codomain else "k"
        lines = [f"domain = {names[id(f.domain)]}", f"codomain = {cod}"]
        if f.anti:
            lines.append("anti = true")
        for g in sorted(f.images):
            lines.append(f"{f.domain.alphabet.names[g]} -> {f.images[g].format()}")
        blocks.append(_stanza_text("morphism", name, lines))
    for name in session.systems:
        src = session.sources[("system", name)]
        blocks.append(_stanza_text("system", name, [f"{e.key} = {e.value}" for e in src.entries]))
    return "\n\n".join(blocks) + "\n"


def session_from_system(sys: HopfGaloisSystem, name: str = "exported",
                        config: SessionConfig | None = None) -> str:
    """Export any system as explicit presentation, morphism and system stanzas."""
    fields_ = {P.field for P in sys.presentations()}
    if len(fields_) != 1:
        raise ValueError("the system's algebras live over different fields")
    order = fields_.pop().order
    cfg = (config or SessionConfig()).updated(cyclotomic_order=order)
    pres_names: Dict[int, str] = {}
    lines_by_block = []

    def pres(P, role):
        if id(P) not in pres_names:
            pres_names[id(P)] = role
            lines = [f"generators = {', '.join(P.generators)}"] + [f"relation = {r}" for r in P.relations]
            lines_by_block.append(_stanza_text("presentation", role, lines))
        return pres_names[id(P)]

    for P, role in ((sys.A.carrier, "A"), (sys.B.carrier, "B"), (sys.Z.carrier, "Z"), (sys.T, "T")):
        pres(P, role)
    for f in sys.A.delta.codomain + sys.B.delta.codomain:
        pres(f, f"P{len(pres_names)}")
    maps = list(sys.structure_maps())
    if sys.A.antipode is not None:
        maps.append(("S_A", sys.A.antipode))
    if sys.B.antipode is not None:
        maps.append(("S_B", sys.B.antipode))
    sys_lines = [f"{r} = {pres_names[id(P)]}" for r, P in
                 (("A", sys.A.carrier), ("B", sys.B.carrier), ("Z", sys.Z.carrier), ("T", sys.T))]
    for role, f in maps:
        mname = f"m_{role}"
        for c in f.codomain:
            pres(c, f"P{len(pres_names)}")
        cod = " @ ".join(pres_names[id(c)] for c in f.codomain) if f.codomain else "k"
        lines = [f"domain = {pres(f.domain, f'P{len(pres_names)}')}", f"codomain = {cod}"]
        if f.anti:
            lines.append("anti = true")
        for g in sorted(f.images):
            lines.append(f"{f.domain.alphabet.names[g]} -> {f.images[g].format()}")
        lines_by_block.append(_stanza_text("morphism", mname, lines))
        sys_lines.append(f"{role} = {mname}")
    sys_lines += [f"assumption = {a}" for a in sys.assumptions]
    fld = "rational" if order == 1 else f"cyclotomic {order}"
    head = _stanza_text("session", "main", [f"field = {fld}", f"degree_cap = {cfg.degree_cap}"])
    return "\n\n".join([head] + lines_by_block + [_stanza_text("system", name, sys_lines)]) + "\n"
