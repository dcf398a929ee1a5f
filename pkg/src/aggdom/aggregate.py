"""Aggregators (issue-wise tuples of unanimous Boolean functions), their
property predicates, combinators, and theorem-backed domain classification.

Classification builds every witness from a syntactic witness produced by the
synthesis pipeline, never by search; the brute-force search lives in the
oracle module and is used only for cross-validation.  Every positive verdict
re-verifies its witness with the closure check plus the property predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .boolfn import (
    BoolFn,
    fn_name,
    is_1_immune,
    is_anonymous as fn_anonymous,
    is_monotone as fn_monotone,
    is_projection,
    is_unanimous,
    named_fn,
    pr,
)
from .domain import DEFAULT_TUPLE_CAP, Domain, degeneracy, is_affine, is_closed_under, rename_domain
from .errors import CapExceededError, DegenerateDomainError, EmptyDomainError, ParseError, VerificationError
from .formula import DEFAULT_MODELS_CAP
from .recognize import LpicWitness, RPHWitness, SeparabilityWitness, check_renamable_partially_horn, check_separable
from .synthesize import SynthesisResult, affine_formula, lpic_analysis, lpic_for, pic_for, prime_cnf


@dataclass(frozen=True)
class Aggregator:
    components: tuple[BoolFn, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("an aggregator needs at least one component")
        arities = {f.arity for f in self.components}
        if len(arities) != 1:
            raise ValueError(f"components must share one arity, got {sorted(arities)}")

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def k(self) -> int:
        return self.components[0].arity

    def describe(self) -> tuple[str, ...]:
        return tuple(
            fn_name(f) or "t " + "".join(map(str, f.table)) for f in self.components
        )

    def __repr__(self):
        return "Aggregator(" + ", ".join(self.describe()) + ")"


def systematic(f: BoolFn, n: int) -> Aggregator:
    return Aggregator((f,) * n)


def apply(F: Aggregator, rows) -> tuple[int, ...]:
    """Componentwise column application of F to k member rows."""
    rows = [tuple(r) for r in rows]
    if len(rows) != F.k:
        raise ValueError(f"expected {F.k} rows, got {len(rows)}")
    if any(len(r) != F.n for r in rows):
        raise ValueError("row length does not match the aggregator")
    out = []
    for j, f in enumerate(F.components):
        idx = 0
        for row in rows:
            idx = (idx << 1) | row[j]
        out.append(f.table[idx])
    return tuple(out)


def aggregator_counterexample(F: Aggregator, d: Domain, tuple_cap: int = DEFAULT_TUPLE_CAP):
    """None when F maps every member tuple into d, else the offending rows."""
    if any(not is_unanimous(f) for f in F.components):
        raise ValueError("all components must be unanimous")
    if F.n != d.n:
        raise ValueError(f"aggregator has {F.n} components, domain arity is {d.n}")
    if len(d.members) ** F.k > tuple_cap:
        raise CapExceededError(f"|d|^k = {len(d.members)}^{F.k} exceeds cap {tuple_cap}")
    member_set = d.member_set
    tables = [f.table for f in F.components]
    for rows in product(d.members, repeat=F.k):
        out = []
        for j in range(d.n):
            idx = 0
            for row in rows:
                idx = (idx << 1) | row[j]
            out.append(tables[j][idx])
        if tuple(out) not in member_set:
            return rows
    return None


def is_aggregator(F: Aggregator, d: Domain, tuple_cap: int = DEFAULT_TUPLE_CAP) -> bool:
    return aggregator_counterexample(F, d, tuple_cap) is None


def generalized_dictatorship_counterexample(
    F: Aggregator, d: Domain, tuple_cap: int = DEFAULT_TUPLE_CAP
):
    """Member rows whose image is none of them, or None when F always
    returns one of its inputs (on the domain only)."""
    if F.n != d.n:
        raise ValueError(f"aggregator has {F.n} components, domain arity is {d.n}")
    if len(d.members) ** F.k > tuple_cap:
        raise CapExceededError(f"|d|^k = {len(d.members)}^{F.k} exceeds cap {tuple_cap}")
    tables = [f.table for f in F.components]
    for rows in product(d.members, repeat=F.k):
        out = []
        for j in range(d.n):
            idx = 0
            for row in rows:
                idx = (idx << 1) | row[j]
            out.append(tables[j][idx])
        if tuple(out) not in rows:
            return rows
    return None


def is_generalized_dictatorship(F: Aggregator, d: Domain, tuple_cap: int = DEFAULT_TUPLE_CAP) -> bool:
    return generalized_dictatorship_counterexample(F, d, tuple_cap) is None


# ---------------------------------------------------------------------------
# aggregator-level predicates
# ---------------------------------------------------------------------------


def is_dictatorial(F: Aggregator) -> bool:
    return any(all(f == pr(d, F.k) for f in F.components) for d in range(1, F.k + 1))


def is_projection_aggregator(F: Aggregator) -> bool:
    return all(is_projection(f) for f in F.components)


def is_systematic(F: Aggregator) -> bool:
    return len(set(F.components)) == 1


def is_anonymous(F: Aggregator) -> bool:
    return all(fn_anonymous(f) for f in F.components)


def is_monotone(F: Aggregator) -> bool:
    return all(fn_monotone(f) for f in F.components)


def is_strongdem(F: Aggregator) -> bool:
    return all(is_1_immune(f) for f in F.components)


def is_locally_nondictatorial(F: Aggregator) -> bool:
    return all(not is_projection(f) for f in F.components)


# ---------------------------------------------------------------------------
# combinators
# ---------------------------------------------------------------------------


def superpose(F: Aggregator, inner: list[Aggregator]) -> Aggregator:
    """h_j(x) = f_j(g^1_j(x), ..., g^k_j(x)); aggregators are closed under it."""
    if len(inner) != F.k:
        raise ValueError(f"need {F.k} inner aggregators, got {len(inner)}")
    if any(G.n != F.n for G in inner):
        raise ValueError("inner aggregators must have the same number of components")
    arities = {G.k for G in inner}
    if len(arities) != 1:
        raise ValueError("inner aggregators must share one arity")
    l = arities.pop()
    components = []
    for j in range(F.n):
        table = []
        for bits in product((0, 1), repeat=l):
            table.append(F.components[j](*(G.components[j](*bits) for G in inner)))
        components.append(BoolFn(l, tuple(table)))
    return Aggregator(tuple(components))


def diamond(F: Aggregator, G: Aggregator) -> Aggregator:
    """e_j(x,y,z) = f_j(g_j(x,y,z), g_j(y,z,x), g_j(z,x,y))."""
    _require_ternary(F, G)
    components = []
    for f, g in zip(F.components, G.components):
        table = [
            f(g(x, y, z), g(y, z, x), g(z, x, y))
            for x, y, z in product((0, 1), repeat=3)
        ]
        components.append(BoolFn(3, tuple(table)))
    return Aggregator(tuple(components))


def star(F: Aggregator, G: Aggregator) -> Aggregator:
    """h_j(x,y,z) = f_j(f_j(x,y,z), f_j(x,y,z), g_j(x,y,z))."""
    _require_ternary(F, G)
    components = []
    for f, g in zip(F.components, G.components):
        table = []
        for x, y, z in product((0, 1), repeat=3):
            fv = f(x, y, z)
            table.append(f(fv, fv, g(x, y, z)))
        components.append(BoolFn(3, tuple(table)))
    return Aggregator(tuple(components))


def _require_ternary(F: Aggregator, G: Aggregator):
    if F.k != 3 or G.k != 3:
        raise ValueError("both aggregators must be ternary")
    if F.n != G.n:
        raise ValueError("component counts differ")


# ---------------------------------------------------------------------------
# aggregator files: `a <n> <k>` then one component per line
# ---------------------------------------------------------------------------


def parse_aggregator(text: str) -> Aggregator:
    header = None
    components: list[BoolFn] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.split(None, 1)[0] == "c":
            continue
        parts = stripped.split()
        if header is None:
            if parts[0] != "a" or len(parts) != 3:
                raise ParseError("expected header 'a <n> <k>'", lineno, 1)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError("bad aggregator header", lineno, 1) from None
            continue
        n, k = header
        if parts[0] == "t":
            if len(parts) != 2 or len(parts[1]) != (1 << k) or set(parts[1]) - {"0", "1"}:
                raise ParseError(f"expected 't <{1 << k} bits>'", lineno, 1)
            components.append(BoolFn(k, tuple(int(ch) for ch in parts[1])))
        elif len(parts) == 1:
            try:
                components.append(named_fn(parts[0], k))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 1) from None
        else:
            raise ParseError("expected a named function or 't <bits>'", lineno, 1)
    if header is None:
        raise ParseError("missing 'a <n> <k>' header")
    n, k = header
    if len(components) != n:
        raise ParseError(f"header declares {n} components, got {len(components)}")
    return Aggregator(tuple(components))


def render_aggregator(F: Aggregator) -> str:
    lines = [f"a {F.n} {F.k}"]
    lines.extend(F.describe())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# domain classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Aggregator | None = None
    method: str = ""
    counterexample: tuple | None = None


@dataclass(frozen=True)
class DomainClassification:
    size: int
    degenerate_coordinates: tuple[tuple[int, int], ...]
    possibility: Verdict
    local_possibility: Verdict
    anonymous: Verdict
    monotone_nondictatorial: Verdict
    strongdem: Verdict
    non_generalized_dictatorship: Verdict
    systematic_family: tuple[str, ...]
    pic: SynthesisResult | None
    lpic: SynthesisResult | None

    def verdicts(self) -> dict[str, bool]:
        return {
            "possibility": self.possibility.holds,
            "local_possibility": self.local_possibility.holds,
            "anonymous": self.anonymous.holds,
            "monotone_nondictatorial": self.monotone_nondictatorial.holds,
            "strongdem": self.strongdem.holds,
            "non_generalized_dictatorship": self.non_generalized_dictatorship.holds,
        }


def _components_by_sets(n: int, assignment: dict[str, set[int]], default: str, arity: int) -> Aggregator:
    names = {}
    for name, variables in assignment.items():
        for v in variables:
            names[v] = name
    fns = tuple(named_fn(names.get(v, default), arity) for v in range(1, n + 1))
    return Aggregator(fns)


def _binary_from_rph(n: int, witness: RPHWitness) -> Aggregator:
    # renamed coordinates swap and/or (model-level renaming argument)
    return _components_by_sets(
        n,
        {"or": set(witness.renamed), "and": set(witness.admissible - witness.renamed)},
        "pr1",
        2,
    )


def _binary_from_separable(n: int, witness: SeparabilityWitness) -> Aggregator:
    return _components_by_sets(n, {"pr2": set(witness.part2)}, "pr1", 2)


def _ternary_from_lpic(n: int, witness: LpicWitness) -> Aggregator:
    return _components_by_sets(
        n,
        {
            "or3": set(witness.renamed),
            "and3": set(witness.v0 - witness.renamed),
            "xor3": set(witness.v2),
        },
        "maj",
        3,
    )


def _checked(F: Aggregator, d: Domain, predicate, label: str, tuple_cap: int) -> Aggregator:
    if not is_aggregator(F, d, tuple_cap):
        raise VerificationError(f"{label} witness is not an aggregator: {F}")
    if not predicate(F):
        raise VerificationError(f"{label} witness fails its property: {F}")
    return F


def classify_domain(
    d: Domain,
    policy: str = "strict",
    cap: int = DEFAULT_MODELS_CAP,
    tuple_cap: int = DEFAULT_TUPLE_CAP,
) -> DomainClassification:
    """Theorem-path classification with verified witnesses.

    Under the permissive policy a degenerate domain is classified through its
    projection onto the free coordinates; witnesses are extended back with
    `and`-type components on the fixed coordinates.
    """
    if not d.members:
        raise EmptyDomainError("cannot classify an empty domain")
    if len(d.members) < 2:
        if policy == "strict":
            raise DegenerateDomainError("a one-member domain is degenerate everywhere")
    report = degeneracy(d)
    if not report.non_degenerate:
        if policy == "strict":
            fixed = ", ".join(f"x{j}={b}" for j, b in report.fixed_coordinates)
            raise DegenerateDomainError(f"domain is degenerate ({fixed}); use the permissive policy")
        return _classify_permissive(d, report, cap, tuple_cap)

    prime = prime_cnf(d, cap=cap).formula
    affine = is_affine(d)
    try:
        separable = check_separable(prime)
    except ValueError:
        separable = None
    rph = check_renamable_partially_horn(prime)
    lpic_result, lpic_reason = lpic_analysis(d, cap=cap)

    n = d.n
    nondictatorial = lambda F: not is_dictatorial(F)

    # the possibility constraint, in the same branch order as pic_for
    if affine:
        pic_result = SynthesisResult(affine_formula(d, cap=cap), "affine", None)
    elif separable is not None:
        pic_result = SynthesisResult(prime, "separable", separable)
    elif rph is not None:
        pic_result = SynthesisResult(prime, "renamable-partially-horn", rph)
    else:
        pic_result = None

    if pic_result is None:
        possibility = Verdict(False, None, "synthesis-reject")
    else:
        if pic_result.kind == "separable":
            base = _binary_from_separable(n, separable)
        elif pic_result.kind == "renamable-partially-horn":
            base = _binary_from_rph(n, rph)
        else:
            base = systematic(named_fn("xor3"), n)
        possibility_witness = _checked(base, d, nondictatorial, "possibility", tuple_cap)
        possibility = Verdict(True, possibility_witness, f"pic-{pic_result.kind}")

    # local possibility via the lpic construction
    if lpic_result is not None:
        lw = lpic_result.witness
        ternary = _checked(
            _ternary_from_lpic(n, lw), d, is_locally_nondictatorial, "local-possibility", tuple_cap
        )
        local_possibility = Verdict(True, ternary, "lpic")
        anonymous = Verdict(True, _checked(ternary, d, is_anonymous, "anonymous", tuple_cap), "lpic")
        if not lw.v2:
            strongdem = Verdict(True, _checked(ternary, d, is_strongdem, "strongdem", tuple_cap), "xor-free-lpic")
        else:
            strongdem = Verdict(False, None, "lpic-needs-xor-part")
    else:
        local_possibility = Verdict(False, None, f"lpic-reject: {lpic_reason}")
        anonymous = Verdict(False, None, f"lpic-reject: {lpic_reason}")
        strongdem = Verdict(False, None, f"lpic-reject: {lpic_reason}")

    # monotone non-dictatorial: separable or renamable partially Horn
    if separable is not None or rph is not None:
        base = (
            _binary_from_separable(n, separable)
            if separable is not None
            else _binary_from_rph(n, rph)
        )
        witness = _checked(
            base, d, lambda F: is_monotone(F) and not is_dictatorial(F), "monotone", tuple_cap
        )
        monotone = Verdict(True, witness, "separable-or-rph")
    else:
        monotone = Verdict(False, None, "no-separable-or-rph-constraint")

    ngd = _classify_non_generalized_dictatorship(
        d, affine, separable, rph, possibility, tuple_cap
    )

    family = tuple(
        name for name in ("and", "or", "maj", "xor3") if is_closed_under(d, named_fn(name), tuple_cap)
    )
    return DomainClassification(
        size=len(d.members),
        degenerate_coordinates=(),
        possibility=possibility,
        local_possibility=local_possibility,
        anonymous=anonymous,
        monotone_nondictatorial=monotone,
        strongdem=strongdem,
        non_generalized_dictatorship=ngd,
        systematic_family=family,
        pic=pic_result,
        lpic=lpic_result,
    )


def _classify_non_generalized_dictatorship(
    d: Domain, affine, separable, rph, possibility, tuple_cap
) -> Verdict:
    if len(d.members) < 3:
        return Verdict(False, None, "two-element-domain")
    if not possibility.holds:
        return Verdict(False, None, "impossibility")
    n = d.n
    not_gendict = lambda F: not is_generalized_dictatorship(F, d, tuple_cap)
    if affine:
        F = systematic(named_fn("xor3"), n)
        return Verdict(True, _checked(F, d, not_gendict, "non-generalized-dictatorship", tuple_cap), "affine-minority")
    if separable is not None:
        F = _binary_from_separable(n, separable)
        return Verdict(True, _checked(F, d, not_gendict, "non-generalized-dictatorship", tuple_cap), "non-symmetric-binary")
    F = _binary_from_rph(n, rph)
    if len(rph.admissible) < n:
        # has a projection component, so it can never be a generalized dictatorship
        return Verdict(True, _checked(F, d, not_gendict, "non-generalized-dictatorship", tuple_cap), "non-symmetric-binary")
    if not is_generalized_dictatorship(F, d, tuple_cap):
        return Verdict(True, _checked(F, d, not_gendict, "non-generalized-dictatorship", tuple_cap), "symmetric-binary")
    # All-symmetric witness that is a generalized dictatorship: complement the
    # or-coordinates, where the witness becomes all-and and the members form a
    # chain under bitwise dominance; joining everything below the top member
    # with or, and the top-only coordinates with and, yields the second-best
    # member on mixed inputs, which is never one of them.
    renamed = rph.renamed
    star_domain = rename_domain(d, renamed)
    members = sorted(star_domain.members, key=lambda row: (sum(row), row))
    for low, high in zip(members, members[1:]):
        if any(a > b for a, b in zip(low, high)):
            raise VerificationError("dominance order is not total on the complemented domain")
    top, second = members[-1], members[-2]
    only_top = {j + 1 for j in range(n) if top[j] == 1 and second[j] == 0}
    swapped = _components_by_sets(n, {"and": only_top}, "or", 2)
    components = tuple(
        named_fn("or" if fn_name(f) == "and" else "and")
        if (j + 1) in renamed
        else f
        for j, f in enumerate(swapped.components)
    )
    F = Aggregator(components)
    return Verdict(
        True,
        _checked(F, d, not_gendict, "non-generalized-dictatorship", tuple_cap),
        "total-order-construction",
    )


def _classify_permissive(d: Domain, report, cap, tuple_cap) -> DomainClassification:
    from .domain import project

    fixed = dict(report.fixed_coordinates)
    free = [v for v in range(1, d.n + 1) if v not in fixed]
    if not free:
        raise DegenerateDomainError("every coordinate is fixed; nothing to classify")
    inner = classify_domain(project(d, free), cap=cap, tuple_cap=tuple_cap)

    def lift(verdict: Verdict) -> Verdict:
        if verdict.witness is None:
            return verdict
        arity = verdict.witness.k
        fill = named_fn("and" if arity == 2 else "and3")
        components = []
        inner_iter = iter(verdict.witness.components)
        for v in range(1, d.n + 1):
            components.append(fill if v in fixed else next(inner_iter))
        F = Aggregator(tuple(components))
        if not is_aggregator(F, d, tuple_cap):
            raise VerificationError("permissive witness extension failed")
        return Verdict(verdict.holds, F, verdict.method + "+fixed-coordinates", verdict.counterexample)

    family = tuple(
        name for name in ("and", "or", "maj", "xor3") if is_closed_under(d, named_fn(name), tuple_cap)
    )
    return DomainClassification(
        size=len(d.members),
        degenerate_coordinates=tuple(sorted(fixed.items())),
        possibility=lift(inner.possibility),
        local_possibility=lift(inner.local_possibility),
        anonymous=lift(inner.anonymous),
        monotone_nondictatorial=lift(inner.monotone_nondictatorial),
        strongdem=lift(inner.strongdem),
        non_generalized_dictatorship=lift(inner.non_generalized_dictatorship),
        systematic_family=family,
        pic=pic_for(d, policy="permissive", cap=cap),
        lpic=lpic_for(d, policy="permissive", cap=cap),
    )
