"""The .foodn text format.

A network file is a sequence of statements:

    class T_Sq {
      property p1 "Number of sides" = 4;
      property p2 "Lengths of sides" : fuzzy;
      property p4 "Sizes of angles" = (90, 90, 90, 90) deg;
      method f2 "Area" = "a^2" bind a = p2[1] unit cm^2;
    }

    object Sq1 : T_Sq {
      p2 = [{2.7/0.85 + 3/1 + 3.1/0.95} cm] * 4;
      p6 = 1;
    }

    relation Sq1 instance-of T_Sq;
    relation T_Sq is-a T_Rb degree 0.9;

    modifier M1_Sq1 object Sq1 -> Rb1 target-class T_Rb {
      p4: (90, 90, 90, 90) deg -> (95, 85, 95, 85) deg;
      p6: 1 -> fuzzy(0.8);
    }

Values: numbers with optional units, tuples, `interval(0, 180)` (square
bracket for a closed bound), fuzzy set literals `{1.8/0.9 + 2/1} cm`, truth
degrees `fuzzy(0.8)`, the class-side markers `fuzzy` and `absent`, and the
repeat form `[<value>] * n` for uniform tuples.  `//` starts a comment.
Objects inherit semantics and methods from their declared class.

Parsing never yields a partial network: any error raises DslError carrying
every diagnostic found.  Warnings (for example a modifier whose result
would not belong to its own target class) come back alongside the network.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DslError, FoodnError, SemanticMismatch
from .fuzzy import DEFAULT_TOL, make_fuzzy_set
from .model import (
    Absent,
    Binding,
    CrispNumber,
    CrispTuple,
    Fuzzy,
    FuzzyMarker,
    FuzzyTuple,
    HeterogeneousClass,
    Interval,
    MethodDef,
    Property,
    TruthDegree,
    define_class,
    define_object,
    membership_degree,
)
from .modifiers import Change, check_applicable, define_modifier, transform
from .network import Network


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str  # "error" or "warning"
    message: str
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}: {self.severity}: {self.message}"


@dataclass(frozen=True)
class Token:
    kind: str  # ident, number, string, punct, eof
    value: object
    line: int
    col: int


class _Bail(Exception):
    """Internal: abandon the current statement after recording an error."""


_NUM_RE = re.compile(r"-?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")
_PUNCT = set("{}()[],;:=/+*^")


def _tokenize(text: str):
    tokens: list[Token] = []
    diags: list[ParseDiagnostic] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == '"':
            j = i + 1
            out = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    out.append(text[j + 1])
                    j += 2
                elif text[j] == "\n":
                    break
                else:
                    out.append(text[j])
                    j += 1
            if j >= n or text[j] != '"':
                diags.append(ParseDiagnostic("error", "unterminated string", line, col))
                tokens.append(Token("eof", None, line, col))
                return tokens, diags
            tokens.append(Token("string", "".join(out), line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if c == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(Token("punct", "->", line, col))
            i += 2
            col += 2
            continue
        if c.isdigit() or (c in "-." and i + 1 < n and (text[i + 1].isdigit() or text[i + 1] == ".")):
            m = _NUM_RE.match(text, i)
            if m:
                tokens.append(Token("number", float(m.group()), line, col))
                col += m.end() - i
                i = m.end()
                continue
        if c.isalpha() or c == "_":
            j = i
            while j < n:
                ch = text[j]
                if ch.isalnum() or ch == "_":
                    j += 1
                elif ch == "-" and j + 1 < n and text[j + 1].isalpha():
                    j += 1
                else:
                    break
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in _PUNCT:
            tokens.append(Token("punct", c, line, col))
            i += 1
            col += 1
            continue
        diags.append(ParseDiagnostic("error", f"unexpected character {c!r}", line, col))
        tokens.append(Token("eof", None, line, col))
        return tokens, diags
    tokens.append(Token("eof", None, line, col))
    return tokens, diags


@dataclass
class _ClassStmt:
    name: str
    extensional: bool
    properties: list
    methods: list
    extension: list
    tok: Token


@dataclass
class _ObjectStmt:
    name: str
    declared: str | None
    items: list  # (id, semantic | None, value, tok)
    methods: list
    tok: Token


@dataclass
class _RelationStmt:
    source: str
    kind: str
    target: str
    degree: float
    tok: Token


@dataclass
class _ModifierStmt:
    name: str
    level: str
    source: str
    target: str
    target_class: str | None
    changes: list
    tok: Token


class _Parser:
    def __init__(self, text: str):
        self.tokens, self.diags = _tokenize(text)
        self.i = 0
        self.statements = []

    # -- token plumbing ---------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, kind: str, value=None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (value is None or tok.value == value)

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        self.diags.append(ParseDiagnostic("error", message, tok.line, tok.col))
        raise _Bail()

    def expect(self, kind: str, value=None, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind == kind and (value is None or tok.value == value):
            return self.take()
        want = what or (value if value is not None else kind)
        got = "end of file" if tok.kind == "eof" else repr(tok.value)
        self.error(f"expected {want}, got {got}", tok)

    def ident(self, what: str) -> str:
        return self.expect("ident", what=what).value

    def number(self, what: str = "a number") -> float:
        return self.expect("number", what=what).value

    def integer(self, what: str = "an integer") -> int:
        tok = self.peek()
        value = self.number(what)
        if value != int(value):
            self.error(f"expected {what}, got {value!r}", tok)
        return int(value)

    def sync_item(self):
        """Skip to just past the next ';' (or stop before '}' / eof)."""
        depth = 0
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                return
            if tok.kind == "punct":
                if tok.value == "{":
                    depth += 1
                elif tok.value == "}":
                    if depth == 0:
                        return
                    depth -= 1
                elif tok.value == ";" and depth == 0:
                    self.take()
                    return
            self.take()

    def sync_statement(self):
        """Skip to the next plausible statement start."""
        depth = 0
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                return
            if depth == 0 and tok.kind == "ident" and tok.value in (
                "class",
                "object",
                "relation",
                "modifier",
            ):
                return
            if tok.kind == "punct":
                if tok.value == "{":
                    depth += 1
                elif tok.value == "}":
                    depth = max(0, depth - 1)
                    self.take()
                    if depth == 0:
                        return
                    continue
            self.take()

    # -- values -----------------------------------------------------------

    def opt_unit(self) -> str | None:
        if self.at("ident"):
            unit = self.take().value
            if self.at("punct", "^"):
                self.take()
                power = self.integer("a unit power")
                unit = f"{unit}^{power}"
            return unit
        if self.at("string"):
            return self.take().value
        return None

    def fuzzy_literal(self):
        """Pairs of a '{s/d + ...}' literal; caller applies the unit."""
        self.expect("punct", "{")
        pairs = []
        while True:
            s = self.number("a support")
            self.expect("punct", "/")
            d = self.number("a degree")
            pairs.append((s, d))
            if self.at("punct", "+"):
                self.take()
                continue
            break
        self.expect("punct", "}")
        return pairs

    def value(self):
        tok = self.peek()
        if tok.kind == "number":
            self.take()
            return CrispNumber(tok.value, self.opt_unit())
        if self.at("punct", "{"):
            pairs = self.fuzzy_literal()
            return Fuzzy(make_fuzzy_set(pairs, self.opt_unit()))
        if self.at("punct", "("):
            return self.tuple_value()
        if self.at("punct", "["):
            return self.repeat_value()
        if self.at("ident", "interval"):
            return self.interval_value()
        if self.at("ident", "fuzzy"):
            self.take()
            if self.at("punct", "("):
                self.take()
                degree = self.number("a truth degree")
                self.expect("punct", ")")
                return TruthDegree(degree)
            return FuzzyMarker()
        if self.at("ident", "absent"):
            self.take()
            return Absent()
        self.error(f"expected a value, got {tok.value!r}", tok)

    def tuple_value(self):
        open_tok = self.take()  # "("
        elements = []
        while True:
            if self.peek().kind == "number":
                elements.append(self.take().value)
            elif self.at("punct", "{"):
                elements.append(self.fuzzy_literal())
            else:
                self.error("expected a number or fuzzy set inside the tuple")
            if self.at("punct", ","):
                self.take()
                continue
            break
        self.expect("punct", ")")
        unit = self.opt_unit()
        if len(elements) < 2:
            self.error("a tuple needs at least two components", open_tok)
        if all(isinstance(e, float) for e in elements):
            return CrispTuple(tuple(elements), unit)
        if all(isinstance(e, list) for e in elements):
            return FuzzyTuple(tuple(make_fuzzy_set(pairs, unit) for pairs in elements))
        self.error("tuple components must be all numbers or all fuzzy sets", open_tok)

    def repeat_value(self):
        open_tok = self.take()  # "["
        if self.at("punct", "{"):
            pairs = self.fuzzy_literal()
            element = Fuzzy(make_fuzzy_set(pairs, self.opt_unit()))
        elif self.peek().kind == "number":
            element = CrispNumber(self.take().value, self.opt_unit())
        else:
            self.error("expected a number or fuzzy set to repeat")
        self.expect("punct", "]")
        self.expect("punct", "*")
        count = self.integer("a repeat count")
        if count < 2:
            self.error("a repeat count must be at least 2", open_tok)
        if isinstance(element, Fuzzy):
            return FuzzyTuple((element.value,) * count)
        return CrispTuple((element.value,) * count, element.unit)

    def interval_value(self):
        self.take()  # "interval"
        if self.at("punct", "("):
            lo_open = True
        elif self.at("punct", "["):
            lo_open = False
        else:
            self.error("expected ( or [ after interval")
        self.take()
        lo = self.number("the lower bound")
        self.expect("punct", ",")
        hi = self.number("the upper bound")
        if self.at("punct", ")"):
            hi_open = True
        elif self.at("punct", "]"):
            hi_open = False
        else:
            self.error("expected ) or ] to close the interval")
        self.take()
        return Interval(lo, hi, self.opt_unit(), lo_open, hi_open)

    # -- members ----------------------------------------------------------

    def property_decl(self) -> Property:
        tok = self.expect("ident", "property")
        pid = self.ident("a property id")
        semantic = self.expect("string", what="the property semantic").value
        if self.at("punct", ":"):
            self.take()
            word = self.ident("fuzzy or absent")
            if word == "fuzzy":
                value = FuzzyMarker()
            elif word == "absent":
                value = Absent()
            else:
                self.error(f"expected fuzzy or absent after ':', got {word!r}", tok)
        else:
            self.expect("punct", "=")
            value = self.value()
        self.expect("punct", ";")
        return Property(pid, semantic, value)

    def method_decl(self) -> MethodDef:
        self.expect("ident", "method")
        mid = self.ident("a method id")
        semantic = self.expect("string", what="the method semantic").value
        self.expect("punct", "=")
        body = self.expect("string", what="the method body").value
        bindings = []
        if self.at("ident", "bind"):
            self.take()
            while True:
                var = self.ident("a variable name")
                self.expect("punct", "=")
                bindings.append(self.selector(var))
                if self.at("punct", ","):
                    self.take()
                    continue
                break
        unit = None
        if self.at("ident", "unit"):
            self.take()
            unit = self.opt_unit()
            if unit is None:
                self.error("expected a unit name")
        self.expect("punct", ";")
        return MethodDef(mid, semantic, body, tuple(bindings), unit)

    def selector(self, var: str) -> Binding:
        name = self.ident("a property id")
        if name == "count" and self.at("punct", "("):
            self.take()
            pid = self.ident("a property id")
            self.expect("punct", ")")
            return Binding(var, pid, "count")
        if self.at("punct", "["):
            self.take()
            if self.at("punct", "*"):
                self.take()
                self.expect("punct", "]")
                return Binding(var, name, "all")
            index = self.integer("a 1-based component index")
            self.expect("punct", "]")
            return Binding(var, name, "component", index)
        return Binding(var, name, "scalar")

    # -- statements ---------------------------------------------------------

    def class_def(self):
        tok = self.take()  # "class"
        name = self.ident("a class name")
        extensional = False
        if self.at("ident", "extensional"):
            self.take()
            extensional = True
        self.expect("punct", "{")
        properties, methods, extension = [], [], []
        while not self.at("punct", "}") and not self.at("eof"):
            try:
                if self.at("ident", "property"):
                    properties.append(self.property_decl())
                elif self.at("ident", "method"):
                    methods.append(self.method_decl())
                elif self.at("ident", "extension"):
                    self.take()
                    while True:
                        extension.append(self.ident("a member name"))
                        if self.at("punct", ","):
                            self.take()
                            continue
                        break
                    self.expect("punct", ";")
                else:
                    self.error("expected property, method or extension")
            except _Bail:
                self.sync_item()
            except (FoodnError, ValueError) as exc:
                self.diags.append(ParseDiagnostic("error", str(exc), tok.line, tok.col))
                self.sync_item()
        self.expect("punct", "}")
        self.statements.append(_ClassStmt(name, extensional, properties, methods, extension, tok))

    def object_def(self):
        tok = self.take()  # "object"
        name = self.ident("an object name")
        declared = None
        if self.at("punct", ":"):
            self.take()
            declared = self.ident("a class name")
        self.expect("punct", "{")
        items, methods = [], []
        while not self.at("punct", "}") and not self.at("eof"):
            try:
                if self.at("ident", "method"):
                    methods.append(self.method_decl())
                    continue
                item_tok = self.peek()
                pid = self.ident("a property id")
                semantic = self.take().value if self.at("string") else None
                self.expect("punct", "=")
                value = self.value()
                self.expect("punct", ";")
                items.append((pid, semantic, value, item_tok))
            except _Bail:
                self.sync_item()
            except (FoodnError, ValueError) as exc:
                self.diags.append(ParseDiagnostic("error", str(exc), tok.line, tok.col))
                self.sync_item()
        self.expect("punct", "}")
        self.statements.append(_ObjectStmt(name, declared, items, methods, tok))

    def relation_def(self):
        tok = self.take()  # "relation"
        source = self.ident("the source entity")
        kind = self.ident("a relation kind")
        target = self.ident("the target entity")
        degree = 1.0
        if self.at("ident", "degree"):
            self.take()
            degree = self.number("a degree")
        self.expect("punct", ";")
        self.statements.append(_RelationStmt(source, kind, target, degree, tok))

    def modifier_def(self):
        tok = self.take()  # "modifier"
        name = self.ident("a modifier name")
        level = self.ident("object or class")
        if level not in ("object", "class"):
            self.error(f"expected object or class, got {level!r}", tok)
        source = self.ident("the source entity")
        self.expect("punct", "->")
        target = self.ident("the target name")
        target_class = None
        if self.at("ident", "target-class"):
            self.take()
            target_class = self.ident("a class name")
        self.expect("punct", "{")
        changes = []
        while not self.at("punct", "}") and not self.at("eof"):
            try:
                change_tok = self.peek()
                pid = self.ident("a property id")
                self.expect("punct", ":")
                before = self.value()
                self.expect("punct", "->")
                after = self.value()
                self.expect("punct", ";")
                changes.append(Change(pid, before, after))
            except _Bail:
                self.sync_item()
            except (FoodnError, ValueError) as exc:
                self.diags.append(
                    ParseDiagnostic("error", str(exc), change_tok.line, change_tok.col)
                )
                self.sync_item()
        self.expect("punct", "}")
        self.statements.append(_ModifierStmt(name, level, source, target, target_class, changes, tok))

    def parse(self):
        while not self.at("eof"):
            try:
                tok = self.peek()
                if self.at("ident", "class"):
                    self.class_def()
                elif self.at("ident", "object"):
                    self.object_def()
                elif self.at("ident", "relation"):
                    self.relation_def()
                elif self.at("ident", "modifier"):
                    self.modifier_def()
                else:
                    self.error(
                        f"expected class, object, relation or modifier, got {tok.value!r}"
                    )
            except _Bail:
                self.sync_statement()
        return self.statements, self.diags


def _build(statements, diags, tol: float) -> Network:
    net = Network(tol)

    def fail(stmt, exc):
        diags.append(ParseDiagnostic("error", str(exc), stmt.tok.line, stmt.tok.col))

    for stmt in statements:
        if isinstance(stmt, _ClassStmt):
            try:
                net.add(
                    define_class(
                        stmt.name,
                        stmt.properties,
                        stmt.methods,
                        "extensional" if stmt.extensional else "intensional",
                        stmt.extension,
                    )
                )
            except (FoodnError, ValueError) as exc:
                fail(stmt, exc)

    for stmt in statements:
        if not isinstance(stmt, _ObjectStmt):
            continue
        try:
            base = None
            if stmt.declared is not None:
                if stmt.declared not in net.classes:
                    raise FoodnError(f"object {stmt.name}: unknown class {stmt.declared!r}")
                base = net.classes[stmt.declared]
                if isinstance(base, HeterogeneousClass):
                    raise FoodnError(
                        f"object {stmt.name}: {stmt.declared} is heterogeneous and "
                        "cannot be a declared class"
                    )
            properties = []
            for pid, semantic, value, item_tok in stmt.items:
                if semantic is None:
                    declared = base.get_property(pid) if base is not None else None
                    if declared is None:
                        diags.append(
                            ParseDiagnostic(
                                "error",
                                f"object {stmt.name}: property {pid} needs a semantic "
                                "string (not declared by the class)",
                                item_tok.line,
                                item_tok.col,
                            )
                        )
                        continue
                    semantic = declared.semantic
                properties.append(Property(pid, semantic, value))
            signature = {m.id: m for m in base.signature} if base is not None else {}
            for m in stmt.methods:
                signature[m.id] = m
            net.add(
                define_object(stmt.name, properties, tuple(signature.values()), stmt.declared)
            )
        except (FoodnError, ValueError) as exc:
            fail(stmt, exc)

    for stmt in statements:
        if isinstance(stmt, _RelationStmt):
            try:
                net.add_relation(stmt.source, stmt.target, stmt.kind, stmt.degree)
            except (FoodnError, ValueError) as exc:
                fail(stmt, exc)

    for stmt in statements:
        if isinstance(stmt, _ModifierStmt):
            try:
                net.register_modifier(
                    define_modifier(
                        stmt.name, stmt.level, stmt.source, stmt.target, stmt.changes,
                        stmt.target_class,
                    )
                )
            except (FoodnError, ValueError) as exc:
                fail(stmt, exc)

    # Static reflection lint: would an object-level modifier's result still
    # belong to its declared target class?
    for stmt in statements:
        if not isinstance(stmt, _ModifierStmt):
            continue
        mod = net.modifiers.get(stmt.name)
        if mod is None or mod.level != "object" or mod.target_class is None:
            continue
        if mod.source not in net.objects or mod.target_class not in net.classes:
            continue
        donor = net.classes[mod.target_class]
        entity = net.objects[mod.source]
        ok, _ = check_applicable(mod, entity, tol)
        if not ok:
            continue
        try:
            result = transform(mod, entity)
            degree = membership_degree(result, donor, "min", tol)
        except SemanticMismatch:
            degree = 0.0
        if degree == 0.0:
            diags.append(
                ParseDiagnostic(
                    "warning",
                    f"modifier {mod.name}: the result would not belong to its "
                    f"target class {mod.target_class}",
                    stmt.tok.line,
                    stmt.tok.col,
                )
            )
    return net


def parse_network(text: str, tol: float = DEFAULT_TOL):
    """Parse network text.

    Returns (network, warnings).  Raises DslError carrying every diagnostic
    if anything is wrong; a partial network is never returned.
    """
    parser = _Parser(text)
    statements, diags = parser.parse()
    net = _build(statements, diags, tol)
    errors = [d for d in diags if d.severity == "error"]
    if errors:
        raise DslError(errors)
    return net, [d for d in diags if d.severity == "warning"]
