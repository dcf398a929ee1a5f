"""Syntactic recognizers with verifiable witnesses.

Every accepting recognizer re-verifies its own witness through the matching
verify_* routine before returning it; a failure there raises
VerificationError, which always indicates a bug rather than bad input.

The renamable-partially-Horn recognizer builds a directed implication graph
on vertices {x, x'} per variable and reads the witness off its strongly
connected components.  Vertex x stands for "x is renamed (and admissible)",
vertex x' for "x is admissible but not renamed"; both zero means x is not
admissible.  For each clause and each ordered pair of distinct variables
u, v in it there is an edge src(u) -> tgt(v), where src(u) is the vertex
that makes u's literal positive after renaming and tgt(v) the vertex that
makes v's literal negative.  An SCC is bad when it contains both x and x'.
Exclusive-or parts force their variables out of the admissible set, and
or-parts of mixed clauses behave like occurrences in an inadmissible clause
(their "positive after renaming" vertex is seeded dead).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import VerificationError
from .formula import ClauseKind, Formula, rename


@dataclass(frozen=True)
class SyntacticFlags:
    horn: bool
    dual_horn: bool
    bijunctive: bool
    affine: bool


@dataclass(frozen=True)
class SeparabilityWitness:
    part1: frozenset[int]
    part2: frozenset[int]


@dataclass(frozen=True)
class RPHWitness:
    """Renaming set V* and admissible set V0 with V* <= V0."""

    renamed: frozenset[int]
    admissible: frozenset[int]


@dataclass(frozen=True)
class LpicWitness:
    """Renaming V* plus the three-way split (V0, V1, V2) of occurring variables."""

    renamed: frozenset[int]
    v0: frozenset[int]
    v1: frozenset[int]
    v2: frozenset[int]


@dataclass(frozen=True)
class PicResult:
    separable: SeparabilityWitness | None
    renamable_partially_horn: RPHWitness | None
    affine: bool

    @property
    def accepted(self) -> bool:
        return self.affine or self.separable is not None or self.renamable_partially_horn is not None

    def kinds(self) -> tuple[str, ...]:
        found = []
        if self.separable is not None:
            found.append("separable")
        if self.renamable_partially_horn is not None:
            found.append("renamable-partially-horn")
        if self.affine:
            found.append("affine")
        return tuple(found)


def check_syntactic_class(f: Formula) -> SyntacticFlags:
    """Single linear scan for the four classical clause classes."""
    all_or = all(c.kind is ClauseKind.OR for c in f.clauses)
    return SyntacticFlags(
        horn=all_or and all(c.is_horn() for c in f.clauses),
        dual_horn=all_or and all(c.is_dual_horn() for c in f.clauses),
        bijunctive=all_or and all(len(c.or_literals) <= 2 for c in f.clauses),
        affine=all(c.kind is ClauseKind.XOR for c in f.clauses),
    )


# ---------------------------------------------------------------------------
# separability
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {item: item for item in items}

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def variable_components(clause_var_lists, variables) -> list[set[int]]:
    """Connected components of the graph joining consecutive variables of
    each clause.  Each clause's variable set lies inside one component."""
    uf = _UnionFind(variables)
    for var_list in clause_var_lists:
        for a, b in zip(var_list, var_list[1:]):
            uf.union(a, b)
    groups: dict[int, set[int]] = {}
    for v in variables:
        groups.setdefault(uf.find(v), set()).add(v)
    return sorted(groups.values(), key=min)


def check_separable(f: Formula) -> SeparabilityWitness | None:
    """Partition of the occurring variables with no clause crossing it, or
    None when the variable graph is connected.  Linear in formula length."""
    occurring = sorted(f.occurring_variables())
    if len(occurring) < 2:
        raise ValueError("separability needs at least two occurring variables")
    components = variable_components((c.variables() for c in f.clauses), occurring)
    if len(components) == 1:
        return None
    part1 = frozenset(components[0])
    part2 = frozenset(v for comp in components[1:] for v in comp)
    return SeparabilityWitness(part1, part2)


# ---------------------------------------------------------------------------
# partially Horn
# ---------------------------------------------------------------------------


def verify_partially_horn(f: Formula, admissible: set[int]) -> bool:
    """Mechanical check of the admissible-set conditions.

    Clauses made only of admissible variables must be Horn, and admissible
    variables may occur only negatively in any clause that reaches outside
    the set.  Mixed and xor clauses always count as reaching outside, and
    their xor parts must not meet the admissible set at all.
    """
    if not admissible:
        raise ValueError("the admissible set must be non-empty")
    for clause in f.clauses:
        if clause.kind is ClauseKind.OR:
            if {l.var for l in clause.or_literals} <= admissible:
                if not clause.is_horn():
                    return False
            else:
                if any(l.positive and l.var in admissible for l in clause.or_literals):
                    return False
        else:
            if any(l.var in admissible for l in clause.xor_literals):
                return False
            if any(l.positive and l.var in admissible for l in clause.or_literals):
                return False
    return True


def check_partially_horn(f: Formula) -> frozenset[int] | None:
    """Maximal admissible set without renaming, or None.

    Variables are excluded by fixpoint propagation: a positive occurrence in
    a clause with two or more positive literals, in a clause that already
    contains an excluded variable, or in a mixed clause, is disqualifying;
    xor-part variables are excluded outright.
    """
    excluded: set[int] = set()
    for clause in f.clauses:
        if clause.kind is not ClauseKind.OR:
            excluded.update(l.var for l in clause.xor_literals)
            excluded.update(l.var for l in clause.or_literals if l.positive)
    changed = True
    while changed:
        changed = False
        for clause in f.clauses:
            if clause.kind is not ClauseKind.OR:
                continue
            positives = clause.positive_vars()
            inadmissible = len(positives) >= 2 or any(v in excluded for v in clause.variables())
            if inadmissible and not positives <= excluded:
                excluded.update(positives)
                changed = True
    admissible = frozenset(range(1, f.n + 1)) - excluded
    if not admissible:
        return None
    if not verify_partially_horn(f, set(admissible)):
        raise VerificationError("partially-Horn witness failed re-verification")
    return admissible


# ---------------------------------------------------------------------------
# renamable partially Horn
# ---------------------------------------------------------------------------

# vertex 2(v-1) is "v renamed into the admissible set",
# vertex 2(v-1)+1 is "v admissible, kept as is"


def _src_vertex(lit) -> int:
    return 2 * (lit.var - 1) + (1 if lit.positive else 0)


def _tgt_vertex(lit) -> int:
    return 2 * (lit.var - 1) + (0 if lit.positive else 1)


def build_implication_graph(f: Formula) -> tuple[list[list[int]], set[int]]:
    """Adjacency lists over the 2n renaming vertices plus the dead seeds."""
    adj: list[list[int]] = [[] for _ in range(2 * f.n)]
    dead: set[int] = set()
    for clause in f.clauses:
        if clause.kind is ClauseKind.OR:
            literals = clause.or_literals
            sources = [_src_vertex(l) for l in literals]
            targets = [_tgt_vertex(l) for l in literals]
            # skew symmetry: the pair (v, u) contributes exactly the edge
            # counterpart(tgt(u)) -> counterpart(src(v)), because src and tgt
            # of one literal are always counterparts of each other
            assert all(s ^ 1 == t for s, t in zip(sources, targets))
            for i, src in enumerate(sources):
                bucket = adj[src]
                for j, tgt in enumerate(targets):
                    if i != j:
                        bucket.append(tgt)
        else:
            for l in clause.xor_literals:
                dead.add(2 * (l.var - 1))
                dead.add(2 * (l.var - 1) + 1)
            for l in clause.or_literals:
                dead.add(_src_vertex(l))
    return adj, dead


def _tarjan(nvertices: int, adj: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """SCCs in completion order (reverse topological), visiting vertices in
    index order for reproducible witnesses."""
    UNVISITED = -1
    index_of = [UNVISITED] * nvertices
    low = [0] * nvertices
    on_stack = bytearray(nvertices)
    stack: list[int] = []
    comp_id = [UNVISITED] * nvertices
    comps: list[list[int]] = []
    counter = 0
    work_vertex: list[int] = []
    work_edge: list[int] = []
    for root in range(nvertices):
        if index_of[root] != UNVISITED:
            continue
        work_vertex.append(root)
        work_edge.append(0)
        while work_vertex:
            v = work_vertex[-1]
            edge_pos = work_edge[-1]
            if edge_pos == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            descended = False
            neighbors = adj[v]
            low_v = low[v]
            for i in range(edge_pos, len(neighbors)):
                w = neighbors[i]
                if index_of[w] == UNVISITED:
                    work_edge[-1] = i + 1
                    work_vertex.append(w)
                    work_edge.append(0)
                    descended = True
                    break
                if on_stack[w] and index_of[w] < low_v:
                    low_v = index_of[w]
            low[v] = low_v
            if descended:
                continue
            work_vertex.pop()
            work_edge.pop()
            if work_vertex:
                parent = work_vertex[-1]
                if low_v < low[parent]:
                    low[parent] = low_v
            if low_v == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp_id[w] = len(comps)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps, comp_id


def check_renamable_partially_horn(f: Formula) -> RPHWitness | None:
    adj, dead = build_implication_graph(f)
    comps, comp_id = _tarjan(2 * f.n, adj)

    # An SCC is zeroed when it is bad (contains some x together with x'),
    # contains a dead seed, or reaches a zeroed SCC.  Completion order is
    # reverse topological, so successors are already decided.
    zero = [False] * len(comps)
    for cid, comp in enumerate(comps):
        members = set(comp)
        z = any(v ^ 1 in members for v in comp) or any(v in dead for v in comp)
        if not z:
            for v in comp:
                for w in adj[v]:
                    if comp_id[w] != cid and zero[comp_id[w]]:
                        z = True
                        break
                if z:
                    break
        zero[cid] = z

    UNSET = -1
    value = [UNSET] * (2 * f.n)
    for cid, comp in enumerate(comps):
        if zero[cid]:
            for v in comp:
                value[v] = 0
        else:
            for v in sorted(comp):
                if value[v] == UNSET:
                    value[v] = 1
                    value[v ^ 1] = 0

    renamed = frozenset(v for v in range(1, f.n + 1) if value[2 * (v - 1)] == 1)
    admissible = frozenset(
        v for v in range(1, f.n + 1) if value[2 * (v - 1)] == 1 or value[2 * (v - 1) + 1] == 1
    )
    if not admissible:
        return None
    if not verify_partially_horn(rename(f, renamed), set(admissible)):
        raise VerificationError("renamable-partially-Horn witness failed re-verification")
    return RPHWitness(renamed, admissible)


def check_renamable_horn(f: Formula) -> frozenset[int] | None:
    """Renaming that turns f into a Horn formula, or None.

    Accepts exactly when the renamable-partially-Horn witness covers every
    occurring variable; mixed and xor clauses therefore always reject.
    """
    witness = check_renamable_partially_horn(f)
    if witness is None or not f.occurring_variables() <= witness.admissible:
        return None
    return witness.renamed


# ---------------------------------------------------------------------------
# possibility / local possibility integrity constraints
# ---------------------------------------------------------------------------


def check_pic(f: Formula) -> PicResult:
    """Run all three branches and report every witness found."""
    try:
        separable = check_separable(f)
    except ValueError:
        separable = None
    rph = check_renamable_partially_horn(f)
    affine = check_syntactic_class(f).affine
    return PicResult(separable, rph, affine)


def verify_lpic(
    f: Formula,
    renamed: set[int],
    v0: set[int],
    v1: set[int],
    v2: set[int],
) -> bool:
    """Mechanical check of the three local-possibility conditions on
    rename(f, renamed).  The parts must partition the occurring variables."""
    occurring = f.occurring_variables()
    if v0 | v1 | v2 != occurring or len(v0) + len(v1) + len(v2) != len(occurring):
        raise ValueError("V0, V1, V2 must partition the occurring variables")
    if not renamed <= v0:
        raise ValueError("the renamed set must lie inside V0")
    renamed_formula = rename(f, renamed)
    if v0:
        if not verify_partially_horn(renamed_formula, v0):
            return False
    for clause in renamed_formula.clauses:
        variables = clause.variables()
        if sum(v in v1 for v in variables) > 2:
            return False
        if any(v in v1 for v in variables) and any(v in v2 for v in variables):
            return False
        if any(v in v2 for v in variables):
            if clause.kind is ClauseKind.OR:
                return False
            if not {l.var for l in clause.xor_literals} <= v2:
                return False
            if not {l.var for l in clause.or_literals} <= v0:
                return False
    return True


def check_lpic(f: Formula) -> LpicWitness | None:
    """Recognize local possibility integrity constraints.

    Bijunctive and affine formulas are accepted outright.  Otherwise the
    admissible set V0 comes from the renamable-partially-Horn recognizer
    (which makes it maximal); an empty V0 leaves only the separable split
    into bijunctive and affine parts, and a partial V0 forces every
    remaining variable of a mixed or xor clause into V2.
    """
    occurring = f.occurring_variables()
    flags = check_syntactic_class(f)
    if flags.bijunctive:
        witness = LpicWitness(frozenset(), frozenset(), frozenset(occurring), frozenset())
        return _verified_lpic(f, witness)
    if flags.affine:
        witness = LpicWitness(frozenset(), frozenset(), frozenset(), frozenset(occurring))
        return _verified_lpic(f, witness)

    rph = check_renamable_partially_horn(f)
    v0 = frozenset() if rph is None else rph.admissible & occurring
    renamed = frozenset() if rph is None else rph.renamed & v0

    if occurring <= (rph.admissible if rph else frozenset()):
        witness = LpicWitness(renamed, frozenset(occurring), frozenset(), frozenset())
        return _verified_lpic(f, witness)

    if not v0:
        components = variable_components((c.variables() for c in f.clauses), sorted(occurring))
        if len(components) == 1:
            return None
        v1: set[int] = set()
        v2: set[int] = set()
        for comp in components:
            clauses = [c for c in f.clauses if set(c.variables()) & comp]
            if all(c.kind is ClauseKind.OR and len(c.or_literals) <= 2 for c in clauses):
                v1 |= comp
            elif all(c.kind is ClauseKind.XOR for c in clauses):
                v2 |= comp
            else:
                return None
        witness = LpicWitness(frozenset(), frozenset(), frozenset(v1), frozenset(v2))
        return _verified_lpic(f, witness)

    rest = occurring - v0
    v2 = frozenset(
        v
        for clause in f.clauses
        if clause.kind is not ClauseKind.OR
        for v in clause.variables()
        if v in rest
    )
    v1 = rest - v2
    if not verify_lpic(f, set(renamed), set(v0), set(v1), set(v2)):
        return None
    return LpicWitness(renamed, v0, frozenset(v1), v2)


def _verified_lpic(f: Formula, witness: LpicWitness) -> LpicWitness:
    if not verify_lpic(f, set(witness.renamed), set(witness.v0), set(witness.v1), set(witness.v2)):
        raise VerificationError("lpic witness failed re-verification")
    return witness


# ---------------------------------------------------------------------------
# combined report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormulaClassReport:
    horn: bool
    dual_horn: bool
    bijunctive: bool
    affine: bool
    renamable_horn: frozenset[int] | None
    separable: SeparabilityWitness | None
    partially_horn: frozenset[int] | None
    renamable_partially_horn: RPHWitness | None
    pic: PicResult
    lpic: LpicWitness | None
    notes: tuple[str, ...] = ()


def classify_formula(f: Formula) -> FormulaClassReport:
    flags = check_syntactic_class(f)
    notes = ()
    if any(c.kind is not ClauseKind.OR for c in f.clauses):
        notes = ("mixed-clause-extension",)
    try:
        separable = check_separable(f)
    except ValueError:
        separable = None
    return FormulaClassReport(
        horn=flags.horn,
        dual_horn=flags.dual_horn,
        bijunctive=flags.bijunctive,
        affine=flags.affine,
        renamable_horn=check_renamable_horn(f),
        separable=separable,
        partially_horn=check_partially_horn(f),
        renamable_partially_horn=check_renamable_partially_horn(f),
        pic=check_pic(f),
        lpic=check_lpic(f),
        notes=notes,
    )
