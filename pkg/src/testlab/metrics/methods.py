"""Method-level structural metrics.

For each declared method or constructor this module computes line count,
statement count, the four cyclomatic variants, maximum nesting depth, an
NPATH-style acyclic path count, and the overlapping-jump (knot) count.

Conventions:
  * cyclomatic counts if/loops/case labels/catches plus short-circuit and
    ternary operators appearing in control conditions;
  * cyclomatic-modified counts a switch as one decision regardless of its
    case labels;
  * cyclomatic-strict additionally counts short-circuits and ternaries in
    non-branch contexts (initializers, arguments, returns);
  * essential collapses structured subgraphs: only constructs that a jump
    (break out of a loop, continue, mid-body return or throw) escapes
    retain their decisions.
  * Lambda bodies contribute to the enclosing method; anonymous class
    bodies do not.
"""

from dataclasses import dataclass

from testlab.java import parser as P

PATH_CAP = 10**6


@dataclass
class MethodRecord:
    name: str
    loc: int
    nost: int
    params: int
    cc: int
    cc_modified: int
    cc_strict: int
    cc_essential: int
    nesting: int
    paths: int
    knots: int
    visibility: str
    is_static: bool
    is_constructor: bool
    is_accessor_or_mutator: bool

    @property
    def cc_variants(self):
        return (self.cc, self.cc_modified, self.cc_strict, self.cc_essential)


class _Walk:
    def __init__(self):
        self.n_if = 0
        self.n_loops = 0
        self.n_cases = 0
        self.n_switches = 0
        self.n_catches = 0
        self.branch_sc = 0
        self.branch_ternary = 0
        self.other_sc = 0
        self.other_ternary = 0
        self.nost = 0
        self.max_depth = 0
        self.jumps = []           # (src_line, tgt_line)
        self.marked = []          # essential-complexity contributions
        self.method_end = 0

    # construct stack entries: [kind, contribution, marked, label, line, end]
    def walk_block(self, block, depth, stack):
        stmts = block.statements
        for idx, stmt in enumerate(stmts):
            top_level = not stack and idx == len(stmts) - 1
            self.walk_stmt(stmt, depth + 1, stack, is_last_top=top_level)

    def walk_stmt(self, stmt, depth, stack, is_last_top=False):
        if isinstance(stmt, P.Block):
            self.walk_block(stmt, depth, stack)
            return
        self.max_depth = max(self.max_depth, depth)
        if isinstance(stmt, P.EmptyStmt):
            return
        self.nost += 1

        if isinstance(stmt, P.IfStmt):
            self.n_if += 1
            self.expr(stmt.cond, branch=True, depth=depth, stack=stack)
            frame = ["if", 1, False, None, stmt.line, stmt.end_line]
            stack.append(frame)
            self.child(stmt.then, depth, stack)
            if stmt.els is not None:
                if isinstance(stmt.els, P.IfStmt):
                    # else-if chains stay on the same nesting level
                    self.walk_stmt(stmt.els, depth, stack)
                else:
                    self.child(stmt.els, depth, stack)
            stack.pop()
            if frame[2]:
                self.marked.append(frame[1])
        elif isinstance(stmt, P.LoopStmt):
            self.n_loops += 1
            if stmt.cond is not None:
                self.expr(stmt.cond, branch=True, depth=depth, stack=stack)
            if stmt.extra is not None:
                self.expr(stmt.extra, branch=False, depth=depth, stack=stack)
            frame = ["loop", 1, False, getattr(stmt, "_label_value", None),
                     stmt.line, stmt.end_line]
            stack.append(frame)
            self.child(stmt.body, depth, stack)
            stack.pop()
            if frame[2]:
                self.marked.append(frame[1])
        elif isinstance(stmt, P.SwitchStmt):
            self.n_switches += 1
            self.expr(stmt.selector, branch=True, depth=depth, stack=stack)
            n_labels = sum(c.n_labels for c in stmt.cases)
            self.n_cases += n_labels
            frame = ["switch", max(n_labels, 1), False,
                     getattr(stmt, "_label_value", None), stmt.line, stmt.end_line]
            stack.append(frame)
            for case in stmt.cases:
                if case.label_expr is not None:
                    self.expr(case.label_expr, branch=False, depth=depth, stack=stack)
                for s in case.body:
                    self.walk_stmt(s, depth + 1, stack)
            stack.pop()
            if frame[2]:
                self.marked.append(frame[1])
        elif isinstance(stmt, P.TryStmt):
            self.n_catches += len(stmt.catches)
            if stmt.resources is not None:
                self.expr(stmt.resources, branch=False, depth=depth, stack=stack)
            frame = ["try", max(len(stmt.catches), 1), False, None, stmt.line,
                     stmt.end_line]
            stack.append(frame)
            self.child(stmt.body, depth, stack)
            for cl in stmt.catches:
                self.child(cl.body, depth, stack)
            if stmt.finally_block is not None:
                self.child(stmt.finally_block, depth, stack)
            stack.pop()
            if frame[2]:
                self.marked.append(frame[1])
        elif isinstance(stmt, P.ReturnStmt):
            if stmt.expr is not None:
                self.expr(stmt.expr, branch=False, depth=depth, stack=stack)
            self.jumps.append((stmt.line, self.method_end))
            if not is_last_top:
                self.mark_all(stack)
        elif isinstance(stmt, P.ThrowStmt):
            self.expr(stmt.expr, branch=False, depth=depth, stack=stack)
            self.jumps.append((stmt.line, self.method_end))
            if not is_last_top:
                self.mark_all(stack)
        elif isinstance(stmt, P.BreakStmt):
            self.mark_jump(stack, stmt, kinds=("loop", "switch"),
                           structured_switch=stmt.label is None)
        elif isinstance(stmt, P.ContinueStmt):
            self.mark_jump(stack, stmt, kinds=("loop",), structured_switch=False,
                           backward=True)
        elif isinstance(stmt, P.LabeledStmt):
            self.nost -= 1  # the wrapper itself is not a statement
            frame_label = stmt.label
            inner = stmt.stmt
            # label the construct the statement introduces
            self.walk_labeled(inner, depth, stack, frame_label)
        elif isinstance(stmt, P.SyncStmt):
            self.expr(stmt.expr, branch=False, depth=depth, stack=stack)
            self.child(stmt.body, depth, stack)
        elif isinstance(stmt, P.ExprStmt):
            self.expr(stmt.expr, branch=False, depth=depth, stack=stack)
        elif isinstance(stmt, P.LocalVarDecl):
            self.expr(stmt.init, branch=False, depth=depth, stack=stack)
        elif isinstance(stmt, P.AssertStmt):
            self.expr(stmt.expr, branch=False, depth=depth, stack=stack)

    def walk_labeled(self, inner, depth, stack, label):
        if isinstance(inner, (P.LoopStmt, P.SwitchStmt)):
            inner._label_value = label
        self.walk_stmt(inner, depth, stack)

    def child(self, stmt, depth, stack):
        """Walk a control-structure body: +1 level unless it is a block."""
        if isinstance(stmt, P.Block):
            self.walk_block(stmt, depth, stack)
        else:
            self.walk_stmt(stmt, depth + 1, stack)

    def expr(self, info, branch, depth, stack):
        if branch:
            self.branch_sc += info.sc_count
            self.branch_ternary += info.ternary_count
        else:
            self.other_sc += info.sc_count
            self.other_ternary += info.ternary_count
        for block in info.lambda_blocks:
            self.walk_block(block, depth, stack)

    def mark_all(self, stack):
        for frame in stack:
            frame[2] = True

    def mark_jump(self, stack, stmt, kinds, structured_switch, backward=False):
        """Mark constructs a break/continue escapes; record the jump edge."""
        target = None
        if stmt.label is not None:
            for frame in reversed(stack):
                if frame[3] == stmt.label:
                    target = frame
                    break
        else:
            for frame in reversed(stack):
                if frame[0] in kinds:
                    target = frame
                    break
        if target is None:
            self.jumps.append((stmt.line, self.method_end))
            self.mark_all(stack)
            return
        tgt_line = target[4] if backward else target[5]
        self.jumps.append((stmt.line, tgt_line))
        if structured_switch and target[0] == "switch":
            # a plain break terminating a switch case is structured, but
            # decision constructs between the break and the switch are not
            for frame in reversed(stack):
                if frame is target:
                    break
                frame[2] = True
            return
        for frame in reversed(stack):
            frame[2] = True
            if frame is target:
                break


def _npath_block(stmts):
    total = 1
    for s in stmts:
        total = min(total * _npath(s), PATH_CAP)
    return total


def _npath(stmt):
    if isinstance(stmt, P.Block):
        return _npath_block(stmt.statements)
    if isinstance(stmt, P.IfStmt):
        els = _npath(stmt.els) if stmt.els is not None else 1
        base = stmt.cond.sc_count + _npath(stmt.then) + els
        return min(base * 2**stmt.cond.ternary_count, PATH_CAP)
    if isinstance(stmt, P.LoopStmt):
        sc = stmt.cond.sc_count if stmt.cond is not None else 0
        return min(sc + _npath(stmt.body) + 1, PATH_CAP)
    if isinstance(stmt, P.SwitchStmt):
        total = stmt.selector.sc_count
        has_default = False
        for case in stmt.cases:
            has_default = has_default or case.has_default
            total += _npath_block(case.body)
        if not has_default:
            total += 1
        return min(total, PATH_CAP)
    if isinstance(stmt, P.TryStmt):
        total = _npath(stmt.body)
        for cl in stmt.catches:
            total += _npath(cl.body)
        if stmt.finally_block is not None:
            total = min(total * _npath(stmt.finally_block), PATH_CAP)
        return min(total, PATH_CAP)
    if isinstance(stmt, P.LabeledStmt):
        return _npath(stmt.stmt)
    if isinstance(stmt, P.SyncStmt):
        return _npath(stmt.body)
    ternaries = 0
    for info in _stmt_exprs(stmt):
        ternaries += info.ternary_count
    return min(2**ternaries, PATH_CAP) if ternaries else 1


def _stmt_exprs(stmt):
    for attr in ("expr", "init", "cond", "extra", "selector", "resources"):
        info = getattr(stmt, attr, None)
        if isinstance(info, P.ExprInfo):
            yield info


def _knots(jumps):
    """Count pairs of jump edges whose line intervals strictly interleave."""
    intervals = [(min(a, b), max(a, b)) for a, b in jumps]
    count = 0
    for i in range(len(intervals)):
        a1, b1 = intervals[i]
        for j in range(i + 1, len(intervals)):
            a2, b2 = intervals[j]
            lo, hi = (a1, b1), (a2, b2)
            if lo > hi:
                lo, hi = hi, lo
            if lo[0] < hi[0] < lo[1] < hi[1]:
                count += 1
    return count


def count_statements(block):
    """Statement count of a block (used for initializer blocks)."""
    w = _Walk()
    w.method_end = block.end_line
    w.walk_block(block, 0, [])
    return w.nost


def is_accessor(method, field_names):
    """Single `return <field>;` body on a non-static method."""
    if method.is_static or method.is_constructor or method.body is None:
        return False
    stmts = method.body.statements
    if len(stmts) != 1 or not isinstance(stmts[0], P.ReturnStmt):
        return False
    chain = stmts[0].expr.simple_chain if stmts[0].expr is not None else None
    if chain is None:
        return False
    if len(chain) == 1:
        return chain[0] in field_names
    return len(chain) == 2 and chain[0] == "this" and chain[1] in field_names


def is_mutator(method, field_names):
    """Single `this.<field> = <param>;` (or unqualified) body."""
    if method.is_static or method.is_constructor or method.body is None:
        return False
    stmts = method.body.statements
    if len(stmts) != 1 or not isinstance(stmts[0], P.ExprStmt):
        return False
    assign = stmts[0].expr.simple_assign
    if assign is None:
        return False
    lhs, rhs = assign
    if len(lhs) == 2 and lhs[0] == "this":
        target = lhs[1]
    elif len(lhs) == 1:
        target = lhs[0]
    else:
        return False
    params = {p[1] for p in method.params}
    return target in field_names and len(rhs) == 1 and rhs[0] in params


def analyze_method(method, field_names):
    """Build the MethodRecord for one parsed method or constructor."""
    loc = method.end_line - method.line + 1
    if method.body is None:
        return MethodRecord(
            name=method.name, loc=loc, nost=0, params=len(method.params),
            cc=1, cc_modified=1, cc_strict=1, cc_essential=1,
            nesting=0, paths=1, knots=0,
            visibility=method.visibility, is_static=method.is_static,
            is_constructor=method.is_constructor, is_accessor_or_mutator=False,
        )
    w = _Walk()
    w.method_end = method.body.end_line
    w.walk_block(method.body, 0, [])
    cc = 1 + w.n_if + w.n_loops + w.n_cases + w.n_catches + w.branch_sc + w.branch_ternary
    cc_mod = 1 + w.n_if + w.n_loops + w.n_switches + w.n_catches + w.branch_sc + w.branch_ternary
    cc_strict = cc + w.other_sc + w.other_ternary
    essential = min(1 + sum(w.marked), cc)
    paths = _npath(method.body)
    accessor = is_accessor(method, field_names)
    mutator = is_mutator(method, field_names)
    return MethodRecord(
        name=method.name,
        loc=loc,
        nost=w.nost,
        params=len(method.params),
        cc=cc,
        cc_modified=cc_mod,
        cc_strict=cc_strict,
        cc_essential=essential,
        nesting=max(w.max_depth, 1),
        paths=paths,
        knots=_knots(w.jumps),
        visibility=method.visibility,
        is_static=method.is_static,
        is_constructor=method.is_constructor,
        is_accessor_or_mutator=accessor or mutator,
    )


def iter_statements(node):
    """Depth-first iteration over all statements in a body."""
    if isinstance(node, P.Block):
        for s in node.statements:
            yield from iter_statements(s)
        return
    yield node
    if isinstance(node, P.IfStmt):
        yield from iter_statements(node.then)
        if node.els is not None:
            yield from iter_statements(node.els)
    elif isinstance(node, P.LoopStmt):
        yield from iter_statements(node.body)
    elif isinstance(node, P.SwitchStmt):
        for case in node.cases:
            for s in case.body:
                yield from iter_statements(s)
    elif isinstance(node, P.TryStmt):
        yield from iter_statements(node.body)
        for cl in node.catches:
            yield from iter_statements(cl.body)
        if node.finally_block is not None:
            yield from iter_statements(node.finally_block)
    elif isinstance(node, (P.LabeledStmt, P.SyncStmt)):
        inner = node.stmt if isinstance(node, P.LabeledStmt) else node.body
        yield from iter_statements(inner)


def iter_expr_infos(body):
    """All expression regions of a body, including lambda bodies."""
    pending = []
    for stmt in iter_statements(body):
        for info in _stmt_exprs(stmt):
            pending.append(info)
        if isinstance(stmt, P.SwitchStmt):
            for case in stmt.cases:
                if case.label_expr is not None:
                    pending.append(case.label_expr)
    seen = []
    while pending:
        info = pending.pop()
        seen.append(info)
        for block in info.lambda_blocks:
            for stmt in iter_statements(block):
                for sub in _stmt_exprs(stmt):
                    pending.append(sub)
    return seen
