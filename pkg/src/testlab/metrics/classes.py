"""Class-level metrics over a project index.

Name resolution is syntactic: simple names resolve through the enclosing
class chain, explicit imports, the declaring package, then wildcard
imports. Unresolved names are treated as external: they count toward
DEPENDS but never toward intra-project metrics like CBO or FANOUT.
"""

from dataclasses import dataclass, field

from testlab.java import parser as P
from testlab.metrics import methods as M

PRIMITIVE_TYPES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double",
     "void", "var"}
)

ACCESSOR_NAME_PREFIXES = ("get", "set", "is")

CLASS_METRIC_NAMES = [
    # size
    "CSLOC", "CSNOST", "CSNOSM", "CSNOSA", "CSNOIM", "CSNOIA", "CSNOM",
    "CSNOMNAMM", "CSNOCON",
    # cohesion and coupling
    "CSNOMCALL", "CSDAC", "CSATFD", "CSLOCM", "CSCBO", "CSRFC", "CSFANIN",
    "CSFANOUT", "CSDEPENDS", "CSDEPENDSBY", "CSCFNAMM",
    # visibility
    "CSNODM", "CSNOPM", "CSNOPRM", "CSNOPLM", "CSNOAMM",
    # inheritance
    "CSDIT", "CSNOC", "CSNOP", "CSNIM", "CSNMO", "CSNOII",
]


class UnresolvedReference(Exception):
    """Not raised during extraction; unresolved names are external."""


@dataclass
class ClassInfo:
    qualified_name: str
    simple_name: str
    package: str
    file: str
    decl: P.TypeDecl
    unit: P.CompilationUnit
    outer: str | None = None


@dataclass
class ProjectIndex:
    by_qname: dict = field(default_factory=dict)
    by_package: dict = field(default_factory=dict)
    by_simple: dict = field(default_factory=dict)
    files_by_package: dict = field(default_factory=dict)

    def add(self, info):
        self.by_qname[info.qualified_name] = info
        self.by_package.setdefault(info.package, []).append(info.qualified_name)
        self.by_simple.setdefault(info.simple_name, []).append(info.qualified_name)
        self.files_by_package.setdefault(info.package, set()).add(info.file)


def build_project_index(units):
    """Index all named, non-local types of the project.

    `units` is a list of (relative_file_path, CompilationUnit).
    """
    index = ProjectIndex()

    def visit(decl, prefix, file, unit):
        if decl.anonymous or decl.local:
            return
        qname = f"{prefix}.{decl.name}" if prefix else decl.name
        outer = prefix if prefix != unit.package else None
        if prefix == unit.package or not prefix:
            outer = None
        index.add(ClassInfo(qname, decl.name, unit.package, file, decl, unit, outer))
        for nested in decl.nested:
            visit(nested, qname, file, unit)

    for file, unit in units:
        for decl in unit.types:
            visit(decl, unit.package, file, unit)
    return index


class _Resolver:
    def __init__(self, info, index):
        self.info = info
        self.index = index
        self.explicit = {}
        self.wildcards = []
        for name, _static, wildcard in info.unit.imports:
            if wildcard:
                self.wildcards.append(name)
            else:
                self.explicit[name.rsplit(".", 1)[-1]] = name
        self.cache = {}

    def resolve(self, name):
        if name in self.cache:
            return self.cache[name]
        result = self._resolve(name)
        self.cache[name] = result
        return result

    def _resolve(self, name):
        if not name or name in PRIMITIVE_TYPES:
            return None
        index = self.index
        if name in index.by_qname:
            return name
        if "." in name:
            head, rest = name.split(".", 1)
            base = self._resolve(head)
            if base is not None:
                cand = f"{base}.{rest}"
                if cand in index.by_qname:
                    return cand
            return None
        # own nested types and the enclosing chain
        scope = self.info.qualified_name
        while scope:
            cand = f"{scope}.{name}"
            if cand in index.by_qname:
                return cand
            scope_info = index.by_qname.get(scope)
            scope = scope_info.outer if scope_info else None
        if self.info.simple_name == name:
            return self.info.qualified_name
        if name in self.explicit:
            target = self.explicit[name]
            return target if target in index.by_qname else None
        pkg = self.info.package
        cand = f"{pkg}.{name}" if pkg else name
        if cand in index.by_qname:
            return cand
        for w in self.wildcards:
            cand = f"{w}.{name}"
            if cand in index.by_qname:
                return cand
        return None


@dataclass
class ClassAnalysis:
    info: ClassInfo
    records: list
    field_names: set
    referenced: set          # resolved project classes (excl. self)
    external_refs: set       # unresolved type-ish names
    invoked_classes: set     # project classes whose methods/ctors are called
    invoked_methods: set     # distinct (target, name, argc)
    call_count: int
    atfd: int
    cfnamm: set
    dac: int
    locm: int
    super_qname: str | None
    method_sigs: dict        # (name, argc) -> visibility for inheritance
    own_nonctor_sigs: set


def _iter_bodies(decl):
    """All statement bodies of a type: methods, ctors, initializers."""
    for m in decl.methods:
        if m.body is not None:
            yield m, m.body
    for block in decl.initializers:
        yield None, block


def _expand_anonymous(infos, referenced_types):
    """Pull expression regions and type names out of anonymous bodies."""
    extra = []
    stack = list(infos)
    while stack:
        info = stack.pop()
        for anon in info.anon_types:
            referenced_types.extend(anon.extends)
            referenced_types.extend(anon.implements)
            referenced_types.extend(f.type_name for f in anon.fields)
            referenced_types.extend(_catch_and_decl_types(anon))
            for m in anon.methods:
                referenced_types.extend(pt for pt, _ in m.params)
                if m.return_type:
                    referenced_types.append(m.return_type)
                if m.body is not None:
                    sub = M.iter_expr_infos(m.body)
                    extra.extend(sub)
                    stack.extend(sub)
            for block in anon.initializers:
                sub = M.iter_expr_infos(block)
                extra.extend(sub)
                stack.extend(sub)
    return extra


def _catch_and_decl_types(decl):
    names = []
    for _m, body in _iter_bodies(decl):
        for stmt in M.iter_statements(body):
            if isinstance(stmt, P.TryStmt):
                for cl in stmt.catches:
                    names.extend(cl.types)
    return names


def analyze_class(info, index):
    """Phase-1 analysis of one class: records plus raw reference facts."""
    decl = info.decl
    resolver = _Resolver(info, index)
    field_names = {f.name for f in decl.fields}
    records = [M.analyze_method(m, field_names) for m in decl.methods]

    # variable type environment: fields, then per-method params/locals
    field_types = {f.name: f.type_name for f in decl.fields}

    referenced_types = []
    referenced_types.extend(decl.extends)
    referenced_types.extend(decl.implements)
    referenced_types.extend(f.type_name for f in decl.fields)
    referenced_types.extend(_catch_and_decl_types(decl))

    call_count = 0
    invoked_classes = set()
    invoked_methods = set()
    atfd = 0
    cfnamm = set()
    used_fields_per_method = []

    infos_per_method = []
    for m in decl.methods:
        referenced_types.extend(pt for pt, _ in m.params)
        if m.return_type:
            referenced_types.append(m.return_type)
        referenced_types.extend(m.throws)
        if m.body is not None:
            infos = M.iter_expr_infos(m.body)
        else:
            infos = []
        infos_per_method.append((m, infos))

    init_infos = []
    for _m, body in _iter_bodies(decl):
        if _m is None:
            init_infos.extend(M.iter_expr_infos(body))
    init_infos.extend(decl.init_exprs)
    all_infos = [info for _m, infos in infos_per_method for info in infos]
    init_infos.extend(_expand_anonymous(all_infos + init_infos, referenced_types))

    def var_env(m):
        env = dict(field_types)
        if m is not None:
            for ptype, pname in m.params:
                env[pname] = ptype
            if m.body is not None:
                for stmt in M.iter_statements(m.body):
                    if isinstance(stmt, P.LocalVarDecl):
                        for nm in stmt.names:
                            env[nm] = stmt.type_name
        return env

    def process_infos(m, infos, used_fields):
        nonlocal call_count, atfd
        env = var_env(m)
        for info in infos:
            referenced_types.extend(info.type_refs)
            referenced_types.extend(info.new_types)
            for t in info.new_types:
                q = resolver.resolve(t)
                if q is not None and q != info_qname:
                    invoked_classes.add(q)
                    invoked_methods.add((q, "<init>", 0))
            for receiver, name, argc in info.calls:
                call_count += 1
                target = None
                foreign = False
                if receiver:
                    head = receiver[0]
                    if head == "this":
                        target = info_qname
                    elif head in env:
                        target = resolver.resolve(env[head])
                        foreign = target is not None and target != info_qname
                    else:
                        target = resolver.resolve(".".join(receiver))
                        if target is None and len(receiver) > 1:
                            target = resolver.resolve(head)
                        foreign = target is not None and target != info_qname
                    if target is not None and foreign:
                        invoked_classes.add(target)
                    key = (target or ".".join(receiver), name, argc)
                else:
                    key = (info_qname, name, argc)
                invoked_methods.add(key)
                if receiver and target is None:
                    # unresolved foreign call: name-based accessor heuristic
                    if not name.startswith(ACCESSOR_NAME_PREFIXES):
                        cfnamm.add((".".join(receiver), name, argc))
                elif foreign:
                    other = index.by_qname.get(target)
                    flag = _accessor_flag(other, name, argc) if other else False
                    if flag:
                        atfd += 1
                    else:
                        cfnamm.add((target, name, argc))
            for chain in info.name_chains:
                head = chain[0]
                if head == "this" and len(chain) > 1:
                    used_fields.add(chain[1])
                elif head in field_names:
                    used_fields.add(head)
                if len(chain) > 1 and head != "this":
                    owner = None
                    if head in env:
                        owner = resolver.resolve(env[head])
                    else:
                        owner = resolver.resolve(head)
                    if owner is not None and owner != info_qname:
                        other = index.by_qname.get(owner)
                        if other is not None and chain[1] in {
                            f.name for f in other.decl.fields
                        }:
                            atfd += 1
                            referenced_types.append(head if head not in env else env[head])

    info_qname = info.qualified_name
    for m, infos in infos_per_method:
        used = set()
        process_infos(m, infos, used)
        if not m.is_constructor:
            used_fields_per_method.append(used)
    process_infos(None, init_infos, set())

    # resolve collected type names
    referenced = set()
    external = set()
    for t in referenced_types:
        if not t or t in PRIMITIVE_TYPES:
            continue
        q = resolver.resolve(t)
        if q is None:
            external.add(t)
        elif q != info_qname:
            referenced.add(q)
    referenced |= {c for c in invoked_classes if c != info_qname}

    dac = 0
    for f in decl.fields:
        q = resolver.resolve(f.type_name)
        if q is not None and q != info_qname:
            dac += 1

    # LCOM1: method pairs sharing no field
    locm = 0
    n = len(used_fields_per_method)
    for i in range(n):
        for j in range(i + 1, n):
            if not (used_fields_per_method[i] & used_fields_per_method[j]):
                locm += 1

    super_qname = None
    for sup in decl.extends:
        q = resolver.resolve(sup)
        if q is not None:
            super_qname = q
            break

    method_sigs = {}
    own_nonctor = set()
    for m in decl.methods:
        if m.is_constructor:
            continue
        sig = (m.name, len(m.params))
        method_sigs[sig] = m.visibility
        own_nonctor.add(sig)

    return ClassAnalysis(
        info=info,
        records=records,
        field_names=field_names,
        referenced=referenced,
        external_refs=external,
        invoked_classes=invoked_classes,
        invoked_methods=invoked_methods,
        call_count=call_count,
        atfd=atfd,
        cfnamm=cfnamm,
        dac=dac,
        locm=locm,
        super_qname=super_qname,
        method_sigs=method_sigs,
        own_nonctor_sigs=own_nonctor,
    )


def _accessor_flag(other_info, name, argc):
    for m in other_info.decl.methods:
        if m.name == name and len(m.params) == argc:
            fields_ = {f.name for f in other_info.decl.fields}
            return M.is_accessor(m, fields_) or M.is_mutator(m, fields_)
    return False


def analyze_project(index):
    """Phase-1 analysis for every class in the index."""
    return {q: analyze_class(info, index) for q, info in sorted(index.by_qname.items())}


def _ancestor_chain(qname, analyses, limit=64):
    chain = []
    seen = {qname}
    current = analyses.get(qname)
    while current is not None and current.super_qname and len(chain) < limit:
        nxt = current.super_qname
        if nxt in seen:
            break
        chain.append(nxt)
        seen.add(nxt)
        current = analyses.get(nxt)
    return chain


def compute_class_metrics(qname, analyses):
    """Assemble the class-level metric map (CS block) for one class."""
    a = analyses[qname]
    decl = a.info.decl
    records = a.records
    nonctor = [r for r in records if not r.is_constructor]

    fanin = 0
    dependsby = 0
    noc = 0
    for other_q, other in analyses.items():
        if other_q == qname:
            continue
        if qname in other.invoked_classes:
            fanin += 1
        if qname in other.referenced:
            dependsby += 1
        if other.super_qname == qname:
            noc += 1

    chain = _ancestor_chain(qname, analyses)
    dit = len(chain)
    seen_sigs = set(a.own_nonctor_sigs)
    nim = 0
    nmo = 0
    ancestor_sigs = set()
    for anc in chain:
        anc_a = analyses.get(anc)
        if anc_a is None:
            continue
        for sig, vis in anc_a.method_sigs.items():
            if vis == "private":
                continue
            ancestor_sigs.add(sig)
            if sig not in seen_sigs:
                nim += 1
                seen_sigs.add(sig)
    nmo = sum(1 for sig in a.own_nonctor_sigs if sig in ancestor_sigs)

    out = {
        "CSLOC": float(decl.end_line - decl.line + 1),
        "CSNOST": float(sum(r.nost for r in records)
                        + sum(M.count_statements(b) for b in decl.initializers)),
        "CSNOSM": float(sum(1 for r in nonctor if r.is_static)),
        "CSNOSA": float(sum(1 for f in decl.fields if f.is_static)),
        "CSNOIM": float(sum(1 for r in nonctor if not r.is_static)),
        "CSNOIA": float(sum(1 for f in decl.fields if not f.is_static)),
        "CSNOM": float(len(nonctor)),
        "CSNOMNAMM": float(sum(1 for r in nonctor if not r.is_accessor_or_mutator)),
        "CSNOCON": float(sum(1 for r in records if r.is_constructor)),
        "CSNOMCALL": float(a.call_count),
        "CSDAC": float(a.dac),
        "CSATFD": float(a.atfd),
        "CSLOCM": float(a.locm),
        "CSCBO": float(len(a.referenced)),
        "CSRFC": float(len(nonctor) + len(a.invoked_methods)),
        "CSFANIN": float(fanin),
        "CSFANOUT": float(len(a.invoked_classes)),
        "CSDEPENDS": float(len(a.referenced) + len(a.external_refs)),
        "CSDEPENDSBY": float(dependsby),
        "CSCFNAMM": float(len(a.cfnamm)),
        "CSNODM": float(sum(1 for r in nonctor if r.visibility == "package")),
        "CSNOPM": float(sum(1 for r in nonctor if r.visibility == "private")),
        "CSNOPRM": float(sum(1 for r in nonctor if r.visibility == "protected")),
        "CSNOPLM": float(sum(1 for r in nonctor if r.visibility == "public")),
        "CSNOAMM": float(sum(1 for r in nonctor if r.is_accessor_or_mutator)),
        "CSDIT": float(dit),
        "CSNOC": float(noc),
        "CSNOP": float(len(decl.extends) + len(decl.implements)),
        "CSNIM": float(nim),
        "CSNMO": float(nmo),
        "CSNOII": float(len(decl.implements)),
    }
    return out
