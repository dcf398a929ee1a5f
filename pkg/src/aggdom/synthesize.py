"""Constraint synthesis: from an explicit domain to an equivalent prime CNF
and, when the structure allows it, to a possibility or local possibility
integrity constraint.

The prime CNF is built by maxterm shrinking: every excluded assignment
contributes the clause falsified only by it, literals are then greedily
deleted (ascending variable index) while every member still satisfies the
clause, duplicates are dropped, and finally clauses that other clauses make
redundant are pruned greedily, longest first.  Each kept clause is a prime
implicate and the model set is machine-checked to equal the input.  This
route does not promise the O(|D| n) clause bound of the literature's
dedicated construction, only correctness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import DegeneracyReport, Domain, degeneracy, is_affine, project
from .errors import (
    CapExceededError,
    DegenerateDomainError,
    EmptyDomainError,
    VerificationError,
)
from .formula import (
    DEFAULT_MODELS_CAP,
    Clause,
    ClauseKind,
    Formula,
    Literal,
    models,
)
from .recognize import (
    LpicWitness,
    RPHWitness,
    SeparabilityWitness,
    check_lpic,
    check_renamable_partially_horn,
    check_separable,
    variable_components,
    verify_lpic,
)


@dataclass(frozen=True)
class PrimeFormula:
    formula: Formula
    prime_certified: bool


@dataclass(frozen=True)
class SynthesisResult:
    formula: Formula
    kind: str  # separable | renamable-partially-horn | affine | lpic
    witness: SeparabilityWitness | RPHWitness | LpicWitness | None
    fixed_coordinates: tuple[tuple[int, int], ...] = ()


def _require_members(d: Domain):
    if not d.members:
        raise EmptyDomainError("synthesis needs a non-empty domain")


def prime_cnf(d: Domain, cap: int = DEFAULT_MODELS_CAP) -> PrimeFormula:
    """Equivalent prime CNF of an explicit domain (OR clauses only)."""
    _require_members(d)
    n = d.n
    if n > cap:
        raise CapExceededError(f"prime CNF synthesis needs n <= {cap}, got n={n}")
    size = 1 << n
    member_matrix = np.array(d.members, dtype=np.uint8)
    member_positions = set(d.members_as_ints)

    clauses: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for p in range(size):
        if p in member_positions:
            continue
        excluded = np.array([(p >> (n - v)) & 1 for v in range(1, n + 1)], dtype=np.uint8)
        sat = member_matrix != excluded  # member x literal incidence
        counts = sat.sum(axis=1)
        kept = []
        for i in range(n):
            column = sat[:, i]
            if not bool(np.any(column & (counts == 1))):
                counts = counts - column
                sat[:, i] = False
            else:
                kept.append(i)
        clause = tuple(
            (i + 1) if excluded[i] == 0 else -(i + 1) for i in kept
        )
        if clause not in seen:
            seen.add(clause)
            clauses.append(clause)

    clauses = _prune_redundant(clauses, d, member_positions)
    formula = Formula(
        n, tuple(Clause.disjunction(*clause) for clause in clauses)
    )
    _check_prime_cnf(formula, d, member_matrix, member_positions)
    return PrimeFormula(formula, prime_certified=True)


def _falsified_positions(clause: tuple[int, ...], n: int) -> np.ndarray:
    """Positions of all assignments violating every literal of the clause."""
    base = 0
    free_bits = []
    fixed = set()
    for lit in clause:
        v = abs(lit)
        fixed.add(v)
        if lit < 0:
            base |= 1 << (n - v)
    for v in range(1, n + 1):
        if v not in fixed:
            free_bits.append(1 << (n - v))
    positions = np.array([base], dtype=np.int64)
    for bit in free_bits:
        positions = np.concatenate([positions, positions | bit])
    return positions


def _prune_redundant(clauses, d: Domain, member_positions) -> list[tuple[int, ...]]:
    """Drop clauses whose removal keeps the model set, longest first."""
    n = d.n
    counts = np.zeros(1 << n, dtype=np.int32)
    falsified = {c: _falsified_positions(c, n) for c in clauses}
    for c in clauses:
        counts[falsified[c]] += 1
    removed = set()
    for c in sorted(clauses, key=lambda c: (-len(c), c)):
        positions = falsified[c]
        if bool(np.all(counts[positions] >= 2)):
            counts[positions] -= 1
            removed.add(c)
    return [c for c in clauses if c not in removed]


def _check_prime_cnf(formula: Formula, d: Domain, member_matrix, member_positions):
    n = d.n
    covered = np.zeros(1 << n, dtype=bool)
    covered[list(member_positions)] = True
    for clause in formula.clauses:
        signed = [l.signed for l in clause.or_literals]
        cols = [abs(s) - 1 for s in signed]
        wanted = np.array([1 if s > 0 else 0 for s in signed], dtype=np.uint8)
        sat = member_matrix[:, cols] == wanted
        if not bool(sat.any(axis=1).all()):
            raise VerificationError(f"clause {signed} excludes a member")
        row_counts = sat.sum(axis=1)
        critical = sat[row_counts == 1]
        # prime: every literal is, for some member, the only satisfied one
        if not bool(critical.any(axis=0).all()):
            raise VerificationError(f"clause {signed} is not prime")
        covered[_falsified_positions(tuple(signed), n)] = True
    if not bool(covered.all()):
        raise VerificationError("synthesized formula admits a non-member")


def _xor_normal_form(clause: Clause) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Key identifying the models of a generalized clause: or-part literals,
    xor-part variable set, and the parity the xor part must reach."""
    negatives = sum(not l.positive for l in clause.xor_literals)
    return (
        tuple(sorted(l.signed for l in clause.or_literals)),
        tuple(sorted(l.var for l in clause.xor_literals)),
        1 ^ (negatives & 1),
    )


def affine_formula(d: Domain, cap: int = DEFAULT_MODELS_CAP) -> Formula | None:
    """All-XOR formula with model set d, or None when d is not affine.

    Each prime clause is rewritten as the exclusive-or of its literals; for a
    prime formula of an affine domain this preserves the model set, which is
    machine-checked anyway.
    """
    _require_members(d)
    if not is_affine(d):
        return None
    prime = prime_cnf(d, cap=cap)
    clauses = []
    seen = set()
    for clause in prime.formula.clauses:
        xor_clause = Clause(ClauseKind.XOR, xor_literals=clause.or_literals)
        key = _xor_normal_form(xor_clause)
        if key not in seen:
            seen.add(key)
            clauses.append(xor_clause)
    formula = Formula(d.n, tuple(clauses))
    if models(formula, cap=cap) != d:
        raise VerificationError("affine rewrite changed the model set")
    return formula


def _strict_policy(d: Domain, policy: str) -> DegeneracyReport:
    report = degeneracy(d)
    if not report.non_degenerate and policy == "strict":
        fixed = ", ".join(f"x{j}={b}" for j, b in report.fixed_coordinates)
        raise DegenerateDomainError(f"domain is degenerate ({fixed}); use the permissive policy to proceed")
    return report


def _split_fixed(d: Domain, report: DegeneracyReport):
    fixed = dict(report.fixed_coordinates)
    free = [v for v in range(1, d.n + 1) if v not in fixed]
    reduced = project(d, free) if free else None
    return fixed, free, reduced


def _lift_result(result: SynthesisResult | None, d: Domain, fixed, free) -> SynthesisResult | None:
    """Re-embed a reduced-domain synthesis into the full arity.

    Fixed coordinates come back as unit clauses (xor units when the class is
    affine, so the formula stays all-xor); witness variable sets are mapped
    through the free-coordinate positions, with the fixed coordinates joining
    the part that tolerates them (admissible set, or the first factor).
    """
    if result is None:
        return None
    if result.kind == "affine":
        units = tuple(
            Clause.exclusive_or(v if bit else -v) for v, bit in sorted(fixed.items())
        )
    else:
        units = tuple(
            Clause.disjunction(v if bit else -v) for v, bit in sorted(fixed.items())
        )

    def lift_vars(variables):
        return frozenset(free[v - 1] for v in variables)

    def lift_literals(literals):
        return tuple(Literal(free[l.var - 1], l.positive) for l in literals)

    lifted_clauses = tuple(
        Clause(c.kind, lift_literals(c.or_literals), lift_literals(c.xor_literals))
        for c in result.formula.clauses
    )
    fixed_vars = frozenset(fixed)
    witness = result.witness
    if isinstance(witness, SeparabilityWitness):
        witness = SeparabilityWitness(lift_vars(witness.part1) | fixed_vars, lift_vars(witness.part2))
    elif isinstance(witness, RPHWitness):
        witness = RPHWitness(lift_vars(witness.renamed), lift_vars(witness.admissible) | fixed_vars)
    elif isinstance(witness, LpicWitness):
        witness = LpicWitness(
            lift_vars(witness.renamed),
            lift_vars(witness.v0) | fixed_vars,
            lift_vars(witness.v1),
            lift_vars(witness.v2),
        )
    formula = Formula(d.n, units + lifted_clauses)
    if models(formula) != d:
        raise VerificationError("permissive re-embedding changed the model set")
    return SynthesisResult(
        formula,
        result.kind,
        witness,
        fixed_coordinates=tuple(sorted(fixed.items())),
    )


def pic_for(d: Domain, policy: str = "strict", cap: int = DEFAULT_MODELS_CAP) -> SynthesisResult | None:
    """Possibility integrity constraint describing d, or None.

    Affine domains get the XOR rewrite; otherwise the prime CNF is returned
    when it is separable or renamable partially Horn.  Primality makes those
    two checks complete, so a reject here means no such constraint exists.

    Under the permissive policy a degenerate domain is synthesized on its
    free coordinates; the class and witness then describe that projection,
    with unit clauses re-imposing the fixed coordinates (model set is still
    machine-checked against the full input).
    """
    _require_members(d)
    report = _strict_policy(d, policy)
    if not report.non_degenerate:
        fixed, free, reduced = _split_fixed(d, report)
        if reduced is None:
            units = Formula(d.n, tuple(
                Clause.disjunction(v if bit else -v) for v, bit in sorted(fixed.items())
            ))
            witness = RPHWitness(frozenset(), frozenset(fixed))
            return SynthesisResult(units, "renamable-partially-horn", witness,
                                   fixed_coordinates=tuple(sorted(fixed.items())))
        return _lift_result(pic_for(reduced, cap=cap), d, fixed, free)

    if is_affine(d):
        formula = affine_formula(d, cap=cap)
        return SynthesisResult(formula, "affine", None)
    prime = prime_cnf(d, cap=cap).formula
    try:
        separable = check_separable(prime)
    except ValueError:
        separable = None
    if separable is not None:
        return SynthesisResult(prime, "separable", separable)
    rph = check_renamable_partially_horn(prime)
    if rph is not None:
        return SynthesisResult(prime, "renamable-partially-horn", rph)
    return None


def lpic_for(d: Domain, policy: str = "strict", cap: int = DEFAULT_MODELS_CAP) -> SynthesisResult | None:
    result, _reason = lpic_analysis(d, policy=policy, cap=cap)
    return result


def lpic_analysis(
    d: Domain, policy: str = "strict", cap: int = DEFAULT_MODELS_CAP
) -> tuple[SynthesisResult | None, str]:
    """Local possibility integrity constraint for d, plus a reject reason.

    The prime CNF is split along the maximal admissible set V0; the clause
    tails outside V0 fall apart into connected components, each of which must
    be bijunctive (tails of at most two literals) or affine (tail models
    closed under ternary xor; those clauses are rewritten with an xor tail
    behind the V0 guard).  The rewritten formula must reproduce the model
    set exactly: the guarded xor rewrite is not always model-preserving, and
    a mismatch is a genuine reject, not an error.
    """
    _require_members(d)
    report = _strict_policy(d, policy)
    if not report.non_degenerate:
        fixed, free, reduced = _split_fixed(d, report)
        if reduced is None:
            base = pic_for(d, policy="permissive", cap=cap)
            return SynthesisResult(base.formula, "lpic",
                                   LpicWitness(frozenset(), frozenset(fixed), frozenset(), frozenset()),
                                   base.fixed_coordinates), "accepted"
        inner, reason = lpic_analysis(reduced, cap=cap)
        return _lift_result(inner, d, fixed, free), reason

    prime = prime_cnf(d, cap=cap).formula
    occurring = prime.occurring_variables()
    rph = check_renamable_partially_horn(prime)
    admissible = rph.admissible if rph is not None else frozenset()
    v0 = frozenset(admissible & occurring)
    renamed = frozenset(rph.renamed & v0) if rph is not None else frozenset()

    if occurring <= admissible:
        witness = LpicWitness(renamed, frozenset(occurring), frozenset(), frozenset())
        return _verified(prime, d, witness, cap), "accepted"

    inside = [c for c in prime.clauses if set(c.variables()) <= v0]
    outside = [c for c in prime.clauses if not set(c.variables()) <= v0]
    tails = {
        id(c): [l for l in c.or_literals if l.var not in v0] for c in outside
    }
    rest = sorted(occurring - v0)
    components = variable_components(
        ([l.var for l in tails[id(c)]] for c in outside), rest
    )

    v1: set[int] = set()
    v2: set[int] = set()
    rewrite: set[int] = set()
    for comp in components:
        comp_clauses = [c for c in outside if tails[id(c)] and tails[id(c)][0].var in comp]
        if all(len(tails[id(c)]) <= 2 for c in comp_clauses):
            v1 |= comp
            continue
        if _tail_models_affine(comp, comp_clauses, tails, cap):
            v2 |= comp
            rewrite.update(id(c) for c in comp_clauses)
        else:
            return None, "component neither bijunctive nor affine"

    transformed = []
    for c in prime.clauses:
        if id(c) in rewrite:
            guard = tuple(l for l in c.or_literals if l.var in v0)
            tail = tuple(tails[id(c)])
            if guard:
                transformed.append(Clause(ClauseKind.GENERALIZED, guard, tail))
            else:
                transformed.append(Clause(ClauseKind.XOR, xor_literals=tail))
        else:
            transformed.append(c)
    candidate = Formula(d.n, tuple(transformed))
    witness = LpicWitness(renamed, v0, frozenset(v1), frozenset(v2))

    if models(candidate, cap=cap) != d:
        # The xor rewrite is only sound when every guard-activated subset of
        # the tails stays equivalent; when it is not, no lpic exists on this
        # route and the exhaustive census backs the reject up.
        return None, "xor rewrite not model-preserving"
    return _verified(candidate, d, witness, cap), "accepted"


def _tail_models_affine(comp, comp_clauses, tails, cap) -> bool:
    order = sorted(comp)
    if len(order) > cap:
        raise CapExceededError(f"affine tail check needs component size <= {cap}")
    position = {v: i + 1 for i, v in enumerate(order)}
    sub_clauses = tuple(
        Clause.disjunction(*(
            position[l.var] if l.positive else -position[l.var]
            for l in tails[id(c)]
        ))
        for c in comp_clauses
    )
    sub = Formula(len(order), sub_clauses)
    tail_models = models(sub, cap=cap)
    # an empty model set is the model set of a contradictory pair of xor
    # clauses, so it counts as affine; the rewrite is model-checked anyway
    return not tail_models.members or is_affine(tail_models)


def _verified(formula: Formula, d: Domain, witness: LpicWitness, cap: int) -> SynthesisResult:
    if models(formula, cap=cap) != d:
        raise VerificationError("lpic synthesis changed the model set")
    if not verify_lpic(formula, set(witness.renamed), set(witness.v0), set(witness.v1), set(witness.v2)):
        raise VerificationError("lpic witness failed re-verification")
    if check_lpic(formula) is None:
        raise VerificationError("lpic recognizer rejects the synthesized formula")
    return SynthesisResult(formula, "lpic", witness)
