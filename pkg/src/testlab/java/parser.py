"""Metrics-oriented parser for a Java subset.

Covers classes, interfaces, enums, fields, methods, constructors, nested
types, and the standard statement forms. Generic type arguments are
parsed but ignored; annotations are skipped. Expressions are not built
into full trees: a scanner collects the events the metrics need (calls,
instantiations, type references, name chains, short-circuit and ternary
operators, lambda blocks, anonymous class bodies).
"""

from dataclasses import dataclass, field

from testlab.java.lexer import ASSIGNMENT_OPERATORS

PRIMITIVES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"}
)

MODIFIER_KEYWORDS = frozenset(
    {
        "public", "private", "protected", "static", "abstract", "final",
        "native", "synchronized", "transient", "volatile", "strictfp",
        "default",
    }
)


class ParseError(Exception):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass
class ExprInfo:
    """Aggregate of expression events inside one expression region."""

    sc_count: int = 0          # && and ||
    ternary_count: int = 0     # ?: conditionals
    assign_count: int = 0
    calls: list = field(default_factory=list)        # (receiver_chain|None, name, argc)
    new_types: list = field(default_factory=list)    # dotted type names
    type_refs: list = field(default_factory=list)    # casts, instanceof, .class, ::
    name_chains: list = field(default_factory=list)  # identifier chains, tuples
    lambda_blocks: list = field(default_factory=list)
    anon_types: list = field(default_factory=list)
    simple_chain: tuple | None = None   # set when the region is one bare chain
    simple_assign: tuple | None = None  # (lhs_chain, rhs_chain) for `a = b`

    def merge(self, other):
        self.sc_count += other.sc_count
        self.ternary_count += other.ternary_count
        self.assign_count += other.assign_count
        self.calls.extend(other.calls)
        self.new_types.extend(other.new_types)
        self.type_refs.extend(other.type_refs)
        self.name_chains.extend(other.name_chains)
        self.lambda_blocks.extend(other.lambda_blocks)
        self.anon_types.extend(other.anon_types)


@dataclass
class Block:
    statements: list
    line: int = 0
    end_line: int = 0


@dataclass
class IfStmt:
    cond: ExprInfo
    then: object
    els: object
    line: int = 0
    end_line: int = 0


@dataclass
class LoopStmt:
    kind: str  # while | do | for | foreach
    cond: ExprInfo | None
    body: object
    extra: ExprInfo | None = None  # for-init/update or foreach iterable
    line: int = 0
    end_line: int = 0
    decl_types: list = field(default_factory=list)


@dataclass
class SwitchCase:
    n_labels: int
    has_default: bool
    body: list
    label_expr: ExprInfo | None = None


@dataclass
class SwitchStmt:
    selector: ExprInfo
    cases: list
    line: int = 0
    end_line: int = 0


@dataclass
class CatchClause:
    types: list
    body: object


@dataclass
class TryStmt:
    resources: ExprInfo | None
    body: object
    catches: list
    finally_block: object
    line: int = 0
    end_line: int = 0


@dataclass
class ReturnStmt:
    expr: ExprInfo | None
    line: int = 0
    end_line: int = 0


@dataclass
class ThrowStmt:
    expr: ExprInfo
    line: int = 0
    end_line: int = 0


@dataclass
class BreakStmt:
    label: str | None
    line: int = 0
    end_line: int = 0


@dataclass
class ContinueStmt:
    label: str | None
    line: int = 0
    end_line: int = 0


@dataclass
class LabeledStmt:
    label: str
    stmt: object
    line: int = 0
    end_line: int = 0


@dataclass
class SyncStmt:
    expr: ExprInfo
    body: object
    line: int = 0
    end_line: int = 0


@dataclass
class ExprStmt:
    expr: ExprInfo
    line: int = 0
    end_line: int = 0


@dataclass
class LocalVarDecl:
    type_name: str
    names: list
    init: ExprInfo
    line: int = 0
    end_line: int = 0


@dataclass
class AssertStmt:
    expr: ExprInfo
    line: int = 0
    end_line: int = 0


@dataclass
class EmptyStmt:
    line: int = 0
    end_line: int = 0


@dataclass
class FieldDecl:
    name: str
    type_name: str
    is_static: bool
    visibility: str
    line: int = 0
    init: ExprInfo | None = None


@dataclass
class MethodDecl:
    name: str
    params: list  # (type_name, param_name)
    return_type: str | None
    visibility: str
    is_static: bool
    is_constructor: bool
    is_abstract: bool
    body: Block | None
    throws: list
    line: int = 0
    end_line: int = 0


@dataclass
class TypeDecl:
    kind: str  # class | interface | enum
    name: str
    modifiers: set
    extends: list
    implements: list
    fields: list
    methods: list
    nested: list
    initializers: list
    init_exprs: list  # field initializer / enum constant argument events
    line: int = 0
    end_line: int = 0
    anonymous: bool = False
    local: bool = False


@dataclass
class CompilationUnit:
    package: str
    imports: list  # (dotted_name, is_static, is_wildcard)
    types: list


class _Parser:
    def __init__(self, tokens):
        self.toks = [t for t in tokens if t.kind != "comment"]
        self.pos = 0

    # ---- token helpers -------------------------------------------------

    def peek(self, offset=0):
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def at_end(self):
        return self.pos >= len(self.toks)

    def cur_line(self):
        t = self.peek()
        if t is not None:
            return t.line
        return self.toks[-1].line if self.toks else 1

    def next(self):
        t = self.peek()
        if t is None:
            raise ParseError(self.cur_line(), "unexpected end of input")
        self.pos += 1
        return t

    def accept(self, text):
        t = self.peek()
        if t is not None and t.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text):
        t = self.peek()
        if t is None or t.text != text:
            found = t.text if t else "end of input"
            raise ParseError(self.cur_line(), f"expected {text!r}, found {found!r}")
        self.pos += 1
        return t

    def check(self, text, offset=0):
        t = self.peek(offset)
        return t is not None and t.text == text

    def check_kind(self, kind, offset=0):
        t = self.peek(offset)
        return t is not None and t.kind == kind

    # ---- top level -----------------------------------------------------

    def parse_unit(self):
        package = ""
        imports = []
        types = []
        self._skip_annotations()
        if self.check("package"):
            self.next()
            package = self._parse_qualified_name()
            self.expect(";")
        while self.check("import"):
            self.next()
            is_static = self.accept("static")
            name = []
            wildcard = False
            name.append(self.next().text)
            while self.accept("."):
                if self.accept("*"):
                    wildcard = True
                    break
                name.append(self.next().text)
            self.expect(";")
            imports.append((".".join(name), is_static, wildcard))
        while not self.at_end():
            if self.accept(";"):
                continue
            decl = self.parse_type_decl()
            if decl is not None:
                types.append(decl)
        return CompilationUnit(package, imports, types)

    def _skip_annotations(self):
        while self.check("@") and not self.check("interface", 1):
            self.next()
            self._parse_qualified_name()
            if self.check("("):
                self._skip_balanced("(", ")")

    def _skip_balanced(self, open_text, close_text):
        self.expect(open_text)
        depth = 1
        while depth > 0:
            t = self.next()
            if t.text == open_text:
                depth += 1
            elif t.text == close_text:
                depth -= 1

    def _parse_modifiers(self):
        mods = set()
        while True:
            self._skip_annotations()
            t = self.peek()
            if t is not None and t.text in MODIFIER_KEYWORDS:
                mods.add(t.text)
                self.next()
            else:
                break
        return mods

    def parse_type_decl(self, local=False):
        start = self.cur_line()
        mods = self._parse_modifiers()
        if self.check("@") and self.check("interface", 1):
            # annotation type declaration: skip entirely
            self.next()
            self.next()
            self.next()  # name
            self._skip_balanced("{", "}")
            return None
        t = self.peek()
        if t is None or t.text not in ("class", "interface", "enum"):
            raise ParseError(self.cur_line(), f"expected type declaration, found {t.text if t else 'EOF'!r}")
        kind = self.next().text
        name = self.next().text
        self._skip_type_params()
        extends = []
        implements = []
        if self.accept("extends"):
            extends.append(self._parse_type_name())
            while self.accept(","):
                extends.append(self._parse_type_name())
        if self.accept("implements"):
            implements.append(self._parse_type_name())
            while self.accept(","):
                implements.append(self._parse_type_name())
        decl = TypeDecl(kind, name, mods, extends, implements, [], [], [], [], [],
                        line=start, local=local)
        self._parse_type_body(decl)
        return decl

    def _skip_type_params(self):
        if not self.check("<"):
            return
        depth = 0
        while True:
            t = self.next()
            if t.text == "<":
                depth += 1
            elif t.text == ">":
                depth -= 1
            elif t.text == ">>":
                depth -= 2
            elif t.text == ">>>":
                depth -= 3
            if depth <= 0:
                return

    def _parse_qualified_name(self):
        parts = [self.next().text]
        while self.check(".") and self.check_kind("identifier", 1):
            self.next()
            parts.append(self.next().text)
        return ".".join(parts)

    def _parse_type_name(self):
        """Type reference: dotted name, generics skipped, dims skipped."""
        self._skip_annotations()
        t = self.peek()
        if t is None:
            raise ParseError(self.cur_line(), "expected type name")
        if t.text in PRIMITIVES:
            self.next()
            name = t.text
        else:
            name = self._parse_qualified_name()
        self._skip_type_params()
        while self.check("[") and self.check("]", 1):
            self.next()
            self.next()
        # trailing varargs handled by caller
        return name

    # ---- class body ----------------------------------------------------

    def _parse_type_body(self, decl):
        self.expect("{")
        if decl.kind == "enum":
            self._parse_enum_constants(decl)
        while not self.check("}"):
            if self.at_end():
                raise ParseError(self.cur_line(), "unterminated type body")
            self._parse_member(decl)
        end = self.expect("}")
        decl.end_line = end.line

    def _parse_enum_constants(self, decl):
        while True:
            self._skip_annotations()
            if self.check(";"):
                self.next()
                return
            if self.check("}"):
                return
            self.next()  # constant name
            if self.check("("):
                info = ExprInfo()
                self._scan_args(info)
                decl.init_exprs.append(info)
            if self.check("{"):
                anon = TypeDecl("class", f"{decl.name}$const", set(), [], [], [],
                                [], [], [], [], anonymous=True)
                self._parse_type_body(anon)
                decl.init_exprs.append(_anon_expr(anon))
            if self.accept(","):
                continue
            if self.accept(";"):
                return
            if self.check("}"):
                return

    def _parse_member(self, decl):
        start = self.cur_line()
        mods = self._parse_modifiers()
        t = self.peek()
        if t is None:
            raise ParseError(start, "unexpected end of type body")
        if t.text == ";":
            self.next()
            return
        if t.text in ("class", "interface", "enum"):
            nested = self._parse_type_decl_with_mods(mods, start)
            decl.nested.append(nested)
            return
        if t.text == "@" and self.check("interface", 1):
            self.next(); self.next(); self.next()
            self._skip_balanced("{", "}")
            return
        if t.text == "{":
            # instance or static initializer block
            block = self.parse_block()
            decl.initializers.append(block)
            return
        if t.text == "<":
            self._skip_type_params()
            t = self.peek()
        # constructor: Name (
        if (t is not None and t.kind == "identifier" and t.text == decl.name
                and self.check("(", 1)):
            self.next()
            method = self._parse_method_rest(decl, None, decl.name, mods, start,
                                             is_constructor=True)
            decl.methods.append(method)
            return
        rtype = self._parse_type_name()
        t = self.peek()
        if t is None:
            raise ParseError(start, "unexpected end of member")
        name = self.next().text
        if self.check("("):
            method = self._parse_method_rest(decl, rtype, name, mods, start,
                                             is_constructor=False)
            decl.methods.append(method)
        else:
            self._parse_field_rest(decl, rtype, name, mods, start)

    def _parse_type_decl_with_mods(self, mods, start):
        kind = self.next().text
        name = self.next().text
        self._skip_type_params()
        extends = []
        implements = []
        if self.accept("extends"):
            extends.append(self._parse_type_name())
            while self.accept(","):
                extends.append(self._parse_type_name())
        if self.accept("implements"):
            implements.append(self._parse_type_name())
            while self.accept(","):
                implements.append(self._parse_type_name())
        decl = TypeDecl(kind, name, mods, extends, implements, [], [], [], [], [],
                        line=start)
        self._parse_type_body(decl)
        return decl

    def _visibility(self, mods):
        if "public" in mods:
            return "public"
        if "protected" in mods:
            return "protected"
        if "private" in mods:
            return "private"
        return "package"

    def _parse_method_rest(self, decl, rtype, name, mods, start, is_constructor):
        params = []
        self.expect("(")
        if not self.check(")"):
            while True:
                self._skip_annotations()
                while self.accept("final"):
                    self._skip_annotations()
                ptype = self._parse_type_name()
                self.accept("...")
                self._skip_annotations()
                pname = self.next().text
                while self.check("[") and self.check("]", 1):
                    self.next()
                    self.next()
                params.append((ptype, pname))
                if not self.accept(","):
                    break
        self.expect(")")
        while self.check("[") and self.check("]", 1):
            self.next()
            self.next()
        throws = []
        if self.accept("throws"):
            throws.append(self._parse_type_name())
            while self.accept(","):
                throws.append(self._parse_type_name())
        if self.accept("default"):
            # annotation member default: skip value
            info = ExprInfo()
            self._scan_expression(info, stop={";"})
            self.expect(";")
            body = None
        elif self.check("{"):
            body = self.parse_block()
        else:
            self.expect(";")
            body = None
        end_line = self.toks[self.pos - 1].line
        return MethodDecl(
            name=name,
            params=params,
            return_type=rtype,
            visibility=self._visibility(mods),
            is_static="static" in mods,
            is_constructor=is_constructor,
            is_abstract=body is None,
            body=body,
            throws=throws,
            line=start,
            end_line=end_line,
        )

    def _parse_field_rest(self, decl, ftype, first_name, mods, start):
        names = [first_name]
        while self.check("[") and self.check("]", 1):
            self.next()
            self.next()
        init = ExprInfo()
        if self.accept("="):
            self._scan_expression(init, stop={",", ";"})
        while self.accept(","):
            self._skip_annotations()
            names.append(self.next().text)
            while self.check("[") and self.check("]", 1):
                self.next()
                self.next()
            if self.accept("="):
                self._scan_expression(init, stop={",", ";"})
        self.expect(";")
        vis = self._visibility(mods)
        static = "static" in mods or decl.kind == "interface"
        for nm in names:
            decl.fields.append(FieldDecl(nm, ftype, static, vis, line=start, init=init))
        if init.calls or init.new_types or init.name_chains or init.type_refs:
            decl.init_exprs.append(init)

    # ---- statements ----------------------------------------------------

    def parse_block(self):
        open_tok = self.expect("{")
        stmts = []
        while not self.check("}"):
            if self.at_end():
                raise ParseError(self.cur_line(), "unterminated block")
            stmts.append(self.parse_statement())
        close = self.expect("}")
        return Block(stmts, line=open_tok.line, end_line=close.line)

    def parse_statement(self):
        t = self.peek()
        if t is None:
            raise ParseError(self.cur_line(), "unexpected end of statements")
        line = t.line
        text = t.text

        if text == "{":
            return self.parse_block()
        if text == ";":
            self.next()
            return EmptyStmt(line=line, end_line=line)
        if text == "if":
            return self._parse_if(line)
        if text == "while":
            self.next()
            cond = self._parse_paren_expr()
            body = self.parse_statement()
            return LoopStmt("while", cond, body, line=line, end_line=_end(body))
        if text == "do":
            self.next()
            body = self.parse_statement()
            self.expect("while")
            cond = self._parse_paren_expr()
            end = self.expect(";")
            return LoopStmt("do", cond, body, line=line, end_line=end.line)
        if text == "for":
            return self._parse_for(line)
        if text == "switch":
            return self._parse_switch(line)
        if text == "try":
            return self._parse_try(line)
        if text == "return":
            self.next()
            expr = None
            if not self.check(";"):
                expr = ExprInfo()
                self._scan_expression(expr, stop={";"})
                _finalize_simple(expr)
            end = self.expect(";")
            return ReturnStmt(expr, line=line, end_line=end.line)
        if text == "throw":
            self.next()
            expr = ExprInfo()
            self._scan_expression(expr, stop={";"})
            end = self.expect(";")
            return ThrowStmt(expr, line=line, end_line=end.line)
        if text == "break":
            self.next()
            label = None
            if self.check_kind("identifier"):
                label = self.next().text
            end = self.expect(";")
            return BreakStmt(label, line=line, end_line=end.line)
        if text == "continue":
            self.next()
            label = None
            if self.check_kind("identifier"):
                label = self.next().text
            end = self.expect(";")
            return ContinueStmt(label, line=line, end_line=end.line)
        if text == "synchronized":
            self.next()
            expr = self._parse_paren_expr()
            body = self.parse_block()
            return SyncStmt(expr, body, line=line, end_line=body.end_line)
        if text == "assert":
            self.next()
            expr = ExprInfo()
            self._scan_expression(expr, stop={";"})
            end = self.expect(";")
            return AssertStmt(expr, line=line, end_line=end.line)
        if text in ("class", "interface", "enum") or (
            text in ("final", "abstract", "static") and self.peek(1) is not None
            and self.peek(1).text in ("class", "interface", "enum")
        ):
            decl = self.parse_type_decl(local=True)
            return _local_type_stmt(decl, line)
        if t.kind == "identifier" and self.check(":", 1):
            self.next()
            self.next()
            inner = self.parse_statement()
            return LabeledStmt(t.text, inner, line=line, end_line=_end(inner))

        decl = self._try_local_var_decl(line)
        if decl is not None:
            return decl
        expr = ExprInfo()
        self._scan_expression(expr, stop={";"})
        _finalize_assign(expr)
        end = self.expect(";")
        return ExprStmt(expr, line=line, end_line=end.line)

    def _parse_if(self, line):
        self.next()
        cond = self._parse_paren_expr()
        then = self.parse_statement()
        els = None
        if self.accept("else"):
            els = self.parse_statement()
        return IfStmt(cond, then, els, line=line, end_line=_end(els or then))

    def _parse_paren_expr(self):
        self.expect("(")
        info = ExprInfo()
        self._scan_expression(info, stop={")"})
        self.expect(")")
        return info

    def _parse_for(self, line):
        self.next()
        self.expect("(")
        # Decide classic vs enhanced by scanning forward for ';' or ':' at
        # depth 0 inside the parentheses.
        depth = 1
        k = self.pos
        enhanced = None
        while k < len(self.toks):
            txt = self.toks[k].text
            if txt in ("(", "[", "{"):
                depth += 1
            elif txt in (")", "]", "}"):
                depth -= 1
                if depth == 0:
                    break
            elif depth == 1 and txt == ";":
                enhanced = False
                break
            elif depth == 1 and txt == ":":
                enhanced = True
                break
            k += 1
        if enhanced is None:
            enhanced = False
        if enhanced:
            self._skip_annotations()
            self.accept("final")
            decl_type = self._parse_type_name()
            self.next()  # variable name
            self.expect(":")
            iterable = ExprInfo()
            self._scan_expression(iterable, stop={")"})
            iterable.type_refs.append(decl_type)
            self.expect(")")
            body = self.parse_statement()
            loop = LoopStmt("foreach", None, body, extra=iterable, line=line,
                            end_line=_end(body))
            loop.decl_types.append(decl_type)
            return loop
        init = ExprInfo()
        if not self.check(";"):
            d = self._try_local_var_decl(line, stop_extra={";"},
                                         consume_terminator=False)
            if d is not None:
                init.merge(d.init)
            else:
                self._scan_expression(init, stop={";"})
        self.expect(";")
        cond = None
        if not self.check(";"):
            cond = ExprInfo()
            self._scan_expression(cond, stop={";"})
        self.expect(";")
        update = ExprInfo()
        if not self.check(")"):
            self._scan_expression(update, stop={")"})
        self.expect(")")
        init.merge(update)
        body = self.parse_statement()
        return LoopStmt("for", cond, body, extra=init, line=line, end_line=_end(body))

    def _parse_switch(self, line):
        self.next()
        selector = self._parse_paren_expr()
        self.expect("{")
        cases = []
        current = None
        while not self.check("}"):
            if self.at_end():
                raise ParseError(self.cur_line(), "unterminated switch")
            if self.check("case") or self.check("default"):
                n_labels = 0
                has_default = False
                label_expr = ExprInfo()
                arrow = False
                while self.check("case") or self.check("default"):
                    if self.next().text == "case":
                        n_labels += 1
                        self._scan_expression(label_expr, stop={":", "->"}, commas_split=True)
                        while self.accept(","):  # multi-label `case A, B:`
                            n_labels += 1
                            self._scan_expression(label_expr, stop={":", "->"}, commas_split=True)
                    else:
                        has_default = True
                    if self.check("->"):
                        self.next()
                        arrow = True
                        break
                    self.expect(":")
                current = SwitchCase(n_labels, has_default, [], label_expr)
                cases.append(current)
                if arrow:
                    if self.check("{"):
                        current.body.append(self.parse_block())
                    else:
                        current.body.append(self.parse_statement())
                    current = None
                continue
            if current is None:
                raise ParseError(self.cur_line(), "statement outside switch case")
            current.body.append(self.parse_statement())
        end = self.expect("}")
        return SwitchStmt(selector, cases, line=line, end_line=end.line)

    def _parse_try(self, line):
        self.next()
        resources = None
        if self.check("("):
            self.next()
            resources = ExprInfo()
            while not self.check(")"):
                d = self._try_local_var_decl(self.cur_line(), stop_extra={";", ")"},
                                             consume_terminator=False)
                if d is not None:
                    resources.merge(d.init)
                    resources.type_refs.append(d.type_name)
                else:
                    self._scan_expression(resources, stop={";", ")"})
                if not self.accept(";"):
                    break
            self.expect(")")
        body = self.parse_block()
        catches = []
        while self.check("catch"):
            self.next()
            self.expect("(")
            self._skip_annotations()
            self.accept("final")
            types = [self._parse_type_name()]
            while self.accept("|"):
                types.append(self._parse_type_name())
            self.next()  # exception variable
            self.expect(")")
            catches.append(CatchClause(types, self.parse_block()))
        finally_block = None
        if self.accept("finally"):
            finally_block = self.parse_block()
        last = finally_block or (catches[-1].body if catches else body)
        return TryStmt(resources, body, catches, finally_block, line=line,
                       end_line=last.end_line)

    def _try_local_var_decl(self, line, stop_extra=None, consume_terminator=True):
        """Attempt `Type name [= expr] (, name [= expr])* ;` with rollback."""
        saved = self.pos
        try:
            self._skip_annotations()
            while self.accept("final"):
                self._skip_annotations()
            t = self.peek()
            if t is None:
                self.pos = saved
                return None
            if t.text in PRIMITIVES or (t.kind == "identifier"):
                type_name = self._parse_type_name()
            else:
                self.pos = saved
                return None
            t = self.peek()
            if t is None or t.kind != "identifier":
                self.pos = saved
                return None
            follow = self.peek(1)
            if follow is None or follow.text not in ("=", ",", ";", "[", ":"):
                self.pos = saved
                return None
            if follow.text == ":":  # labeled statement or foreach, not a decl
                self.pos = saved
                return None
            names = [self.next().text]
            while self.check("[") and self.check("]", 1):
                self.next()
                self.next()
            init = ExprInfo()
            stops = {",", ";"} | (stop_extra or set())
            if self.accept("="):
                self._scan_expression(init, stop=stops)
            while self.accept(","):
                names.append(self.next().text)
                while self.check("[") and self.check("]", 1):
                    self.next()
                    self.next()
                if self.accept("="):
                    self._scan_expression(init, stop=stops)
            if consume_terminator:
                end = self.expect(";")
                end_line = end.line
            else:
                end_line = self.toks[self.pos - 1].line
            init.type_refs.append(type_name)
            return LocalVarDecl(type_name, names, init, line=line, end_line=end_line)
        except ParseError:
            self.pos = saved
            return None

    # ---- expression scanning --------------------------------------------

    def _scan_expression(self, info, stop, commas_split=False):
        """Scan one expression region, collecting events into `info`.

        Stops before any token in `stop` at depth 0. Consumes nothing of
        the stop token. With commas_split, top-level commas also stop
        (used by argument scanning)...
        """
        depth = 0
        first_chain = None
        token_count = 0
        pending_assign_lhs = None
        assign_seen = 0
        while True:
            t = self.peek()
            if t is None:
                raise ParseError(self.cur_line(), "unterminated expression")
            if depth == 0 and t.text in stop:
                break
            if depth == 0 and commas_split and t.text == ",":
                break
            text = t.text
            if text in ("(",):
                cast = self._try_cast(info)
                if cast:
                    token_count += 1
                    continue
                self.next()
                depth += 1
                token_count += 1
                continue
            if text in ("[",):
                self.next()
                depth += 1
                token_count += 1
                continue
            if text in (")", "]"):
                if depth == 0:
                    raise ParseError(t.line, f"unbalanced {text!r} in expression")
                self.next()
                depth -= 1
                token_count += 1
                continue
            if text == "{":
                # array initializer: scan inside as part of this region
                self.next()
                depth += 1
                token_count += 1
                continue
            if text == "}":
                if depth == 0:
                    raise ParseError(t.line, "unbalanced '}' in expression")
                self.next()
                depth -= 1
                token_count += 1
                continue
            if text in ("&&", "||"):
                info.sc_count += 1
                self.next()
                token_count += 1
                continue
            if text == "?":
                info.ternary_count += 1
                self.next()
                token_count += 1
                continue
            if text == "new":
                self.next()
                self._scan_new(info)
                token_count += 2
                continue
            if text == "->":
                self.next()
                token_count += 1
                if self.check("{"):
                    info.lambda_blocks.append(self.parse_block())
                continue
            if text == "instanceof":
                self.next()
                info.type_refs.append(self._parse_type_name())
                if self.check_kind("identifier"):
                    self.next()  # pattern variable
                token_count += 2
                continue
            if t.kind in ("identifier",) or text in ("this", "super"):
                chain, is_call = self._scan_chain(info)
                token_count += 1
                if first_chain is None and token_count == 1 and not is_call:
                    first_chain = chain
                continue
            if t.kind == "operator":
                if text in ASSIGNMENT_OPERATORS:
                    info.assign_count += 1
                    assign_seen += 1
                    if text == "=" and token_count == 1 and first_chain is not None:
                        pending_assign_lhs = first_chain
                self.next()
                token_count += 1
                continue
            if t.kind in ("literal", "separator", "keyword"):
                self.next()
                token_count += 1
                continue
            raise ParseError(t.line, f"unexpected token {text!r} in expression")
        if pending_assign_lhs is not None and assign_seen == 1:
            info._assign_lhs = pending_assign_lhs
            info._assign_token_count = token_count
        info._token_count = token_count
        info._first_chain = first_chain

    def _try_cast(self, info):
        """Detect `(Type) expr` and record the type reference."""
        saved = self.pos
        if not self.check("("):
            return False
        self.next()
        t = self.peek()
        if t is None or (t.kind != "identifier" and t.text not in PRIMITIVES):
            self.pos = saved
            return False
        try:
            name = self._parse_type_name()
        except ParseError:
            self.pos = saved
            return False
        if not self.check(")"):
            self.pos = saved
            return False
        after = self.peek(1)
        if after is None:
            self.pos = saved
            return False
        if after.kind in ("identifier", "literal") or after.text in (
            "(", "this", "super", "new", "!", "~",
        ):
            self.next()  # ')'
            if name not in PRIMITIVES:
                info.type_refs.append(name)
            return True
        self.pos = saved
        return False

    def _scan_chain(self, info):
        """Scan an identifier chain, possibly a call or method reference."""
        segments = [self.next().text]
        while True:
            if self.check(".") and (self.check_kind("identifier", 1)
                                    or self.check("this", 1) or self.check("class", 1)
                                    or self.check("super", 1)):
                nxt = self.peek(1)
                if nxt.text == "class":
                    self.next()
                    self.next()
                    info.type_refs.append(".".join(segments))
                    return tuple(segments), False
                self.next()
                segments.append(self.next().text)
                continue
            if self.check("<") and self._looks_like_generic_args():
                self._skip_type_params()
                continue
            break
        if self.check("::"):
            self.next()
            if not self.at_end():
                self.next()  # method name or 'new'
            info.type_refs.append(".".join(segments))
            return tuple(segments), False
        if self.check("("):
            argc = self._scan_args(info)
            receiver = tuple(segments[:-1]) if len(segments) > 1 else None
            info.calls.append((receiver, segments[-1], argc))
            if receiver:
                info.name_chains.append(receiver)
            # chained calls: .name(...) ...
            while self.check("."):
                if not (self.check_kind("identifier", 1)):
                    break
                self.next()
                mname = self.next().text
                if self.check("<") and self._looks_like_generic_args():
                    self._skip_type_params()
                if self.check("("):
                    argc = self._scan_args(info)
                    info.calls.append((None, mname, argc))
                else:
                    break
            return tuple(segments), True
        chain = tuple(segments)
        info.name_chains.append(chain)
        return chain, False

    def _looks_like_generic_args(self):
        """Tentatively decide whether '<' opens type arguments."""
        k = self.pos
        depth = 0
        allowed_texts = {",", ".", "?", "extends", "super", "&", "[", "]", "@"}
        steps = 0
        while k < len(self.toks) and steps < 100:
            txt = self.toks[k].text
            kind = self.toks[k].kind
            if txt == "<":
                depth += 1
            elif txt == ">":
                depth -= 1
            elif txt == ">>":
                depth -= 2
            elif txt == ">>>":
                depth -= 3
            elif kind == "identifier" or txt in PRIMITIVES or txt in allowed_texts:
                pass
            else:
                return False
            if depth <= 0:
                nxt = self.toks[k + 1] if k + 1 < len(self.toks) else None
                return nxt is not None and (nxt.text in ("(", "::") or nxt.kind == "identifier")
            k += 1
            steps += 1
        return False

    def _scan_args(self, info):
        """Scan a parenthesized argument list; returns the argument count."""
        self.expect("(")
        if self.check(")"):
            self.next()
            return 0
        argc = 1
        while True:
            self._scan_expression(info, stop={",", ")"})
            if self.accept(","):
                argc += 1
                continue
            self.expect(")")
            return argc

    def _scan_new(self, info):
        """Scan the tail of a `new` expression."""
        t = self.peek()
        if t is None:
            return
        if t.text in PRIMITIVES:
            self.next()
            name = t.text
        else:
            name = self._parse_qualified_name()
        self._skip_type_params()
        if name not in PRIMITIVES:
            info.new_types.append(name)
        if self.check("["):
            # array creation: dims scanned as part of the region
            return
        if self.check("("):
            self._scan_args(info)
            if self.check("{"):
                anon = TypeDecl("class", name + "$anon", set(), [name], [], [],
                                [], [], [], [], anonymous=True)
                self._parse_type_body(anon)
                info.anon_types.append(anon)


def _end(node):
    return getattr(node, "end_line", getattr(node, "line", 0))


def _anon_expr(anon):
    info = ExprInfo()
    info.anon_types.append(anon)
    return info


def _local_type_stmt(decl, line):
    """Local classes appear as opaque statements; they are not emitted."""
    stmt = EmptyStmt(line=line, end_line=decl.end_line)
    stmt.local_type = decl
    return stmt


def _finalize_simple(info):
    """Mark a return expression that is a single bare identifier chain."""
    if (getattr(info, "_token_count", 0) == 1
            and getattr(info, "_first_chain", None) is not None
            and not info.calls and not info.new_types
            and info.assign_count == 0):
        info.simple_chain = info._first_chain


def _finalize_assign(info):
    """Mark expressions of the exact shape `chain = chain`."""
    lhs = getattr(info, "_assign_lhs", None)
    if lhs is None or info.assign_count != 1 or info.calls or info.new_types:
        return
    chains = [c for c in info.name_chains if c != lhs]
    if len(chains) == 1 and getattr(info, "_token_count", 0) == 3:
        info.simple_assign = (lhs, chains[0])


def parse_compilation_unit(stream):
    """Parse a token stream into a CompilationUnit."""
    return _Parser(stream).parse_unit()
