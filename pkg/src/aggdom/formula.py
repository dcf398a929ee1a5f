"""Propositional formulas with OR, XOR and generalized (mixed) clauses.

A clause is one of:

* an OR clause  ``(l1 v ... v ls)``,
* an XOR clause ``(l1 + ... + lt)``, satisfied when an odd number of its
  literals are true,
* a generalized clause ``(l1 v ... v ls v (l_{s+1} + ... + l_t))``, falsified
  exactly when every or-literal is false and an even number of xor-literals
  are true.

All variables inside a single clause must be distinct.  Clause kind is part
of the syntax: a one-literal OR clause and a one-literal XOR clause evaluate
identically but are different objects, because the recognizers downstream
are syntactic.  Duplicate clauses are preserved as written.

The text format is an extended DIMACS dialect (see `parse_formula`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapExceededError, ParseError

DEFAULT_MODELS_CAP = 24


class ClauseKind(enum.Enum):
    OR = "or"
    XOR = "xor"
    GENERALIZED = "generalized"


@dataclass(frozen=True, order=True)
class Literal:
    """A signed occurrence of a 1-based variable."""

    var: int
    positive: bool

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"variable index must be >= 1, got {self.var}")

    @classmethod
    def of(cls, signed: int) -> "Literal":
        if signed == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(signed), signed > 0)

    @property
    def signed(self) -> int:
        return self.var if self.positive else -self.var

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __repr__(self):
        return f"Literal({self.signed})"


def lits(*signed: int) -> tuple[Literal, ...]:
    return tuple(Literal.of(s) for s in signed)


@dataclass(frozen=True)
class Clause:
    kind: ClauseKind
    or_literals: tuple[Literal, ...] = ()
    xor_literals: tuple[Literal, ...] = ()

    def __post_init__(self):
        if self.kind is ClauseKind.OR:
            if self.xor_literals:
                raise ValueError("OR clause must not have an xor part")
            if not self.or_literals:
                raise ValueError("OR clause needs at least one literal")
        elif self.kind is ClauseKind.XOR:
            if self.or_literals:
                raise ValueError("XOR clause must not have an or part")
            if not self.xor_literals:
                raise ValueError("XOR clause needs at least one literal")
        else:
            if not self.or_literals or not self.xor_literals:
                raise ValueError("generalized clause needs both parts non-empty")
        seen = set()
        for lit in self.literals():
            if lit.var in seen:
                raise ValueError(f"variable x{lit.var} repeated within a clause")
            seen.add(lit.var)

    @classmethod
    def disjunction(cls, *signed: int) -> "Clause":
        return cls(ClauseKind.OR, or_literals=lits(*signed))

    @classmethod
    def exclusive_or(cls, *signed: int) -> "Clause":
        return cls(ClauseKind.XOR, xor_literals=lits(*signed))

    @classmethod
    def generalized(cls, or_part: Iterable[int], xor_part: Iterable[int]) -> "Clause":
        return cls(ClauseKind.GENERALIZED, lits(*or_part), lits(*xor_part))

    def literals(self) -> Iterator[Literal]:
        yield from self.or_literals
        yield from self.xor_literals

    def variables(self) -> list[int]:
        """Variables in literal order (or part first)."""
        return [lit.var for lit in self.literals()]

    def positive_vars(self) -> set[int]:
        return {lit.var for lit in self.literals() if lit.positive}

    def is_horn(self) -> bool:
        """At most one positive literal; only meaningful for OR clauses."""
        return self.kind is ClauseKind.OR and sum(l.positive for l in self.or_literals) <= 1

    def is_dual_horn(self) -> bool:
        return self.kind is ClauseKind.OR and sum(not l.positive for l in self.or_literals) <= 1


@dataclass(frozen=True)
class Formula:
    """A conjunction of clauses over variables x1..xn.

    An empty clause list is allowed and denotes the full cube (needed as the
    synthesis output for the unconstrained domain).
    """

    n: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a formula needs at least one variable")
        if not isinstance(self.clauses, tuple):
            object.__setattr__(self, "clauses", tuple(self.clauses))
        for clause in self.clauses:
            for lit in clause.literals():
                if lit.var > self.n:
                    raise ValueError(f"variable x{lit.var} out of range (n={self.n})")

    def occurring_variables(self) -> set[int]:
        return {lit.var for clause in self.clauses for lit in clause.literals()}


# ---------------------------------------------------------------------------
# extended-DIMACS parsing / rendering
#
# comment lines:      c ...
# header:             p ecnf <nvars> <nclauses>
# OR clause:          <lit> ... 0
# XOR clause:         x <lit> ... 0
# generalized clause: g <or-lits...> x <xor-lits...> 0
# ---------------------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.split(None, 1)[0] == "c":
            continue
        col = 0
        for part in line.split():
            col = line.index(part, col) + 1
            tokens.append((part, lineno, col))
            col += len(part) - 1
    return tokens


def _parse_int(token: tuple[str, int, int]) -> int:
    text, line, col = token
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", line, col) from None


def parse_formula(text: str) -> Formula:
    """Parse extended-DIMACS text into a Formula.

    Rejects repeated variables inside a clause, out-of-range indices and a
    clause count that disagrees with the header.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input, expected 'p ecnf <nvars> <nclauses>' header")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    head = tokens[pos]
    if head[0] != "p":
        raise ParseError(f"expected 'p' header, got {head[0]!r}", head[1], head[2])
    if pos + 3 >= len(tokens):
        raise ParseError("truncated header", head[1], head[2])
    fmt = tokens[pos + 1]
    if fmt[0] != "ecnf":
        raise ParseError(f"expected format 'ecnf', got {fmt[0]!r}", fmt[1], fmt[2])
    nvars = _parse_int(tokens[pos + 2])
    nclauses = _parse_int(tokens[pos + 3])
    if nvars < 1:
        raise ParseError("header must declare at least one variable", head[1], head[2])
    if nclauses < 0:
        raise ParseError("negative clause count", head[1], head[2])
    pos += 4

    def read_literals(stop_tokens: set[str]) -> tuple[list[Literal], tuple[str, int, int]]:
        found = []
        while True:
            token = peek()
            if token is None:
                raise ParseError("clause not terminated by 0", *tokens[-1][1:])
            if token[0] in stop_tokens:
                return found, token
            value = _parse_int(token)
            if value == 0:
                return found, token
            if abs(value) > nvars:
                raise ParseError(f"variable x{abs(value)} out of range (n={nvars})", token[1], token[2])
            found.append(Literal.of(value))
            advance()

    def advance():
        nonlocal pos
        pos += 1

    clauses: list[Clause] = []
    while peek() is not None:
        token = peek()
        start = token
        try:
            if token[0] == "x":
                advance()
                xor_part, end = read_literals(set())
                if end[0] != "0":
                    raise ParseError(f"unexpected token {end[0]!r} in xor clause", end[1], end[2])
                advance()
                clause = Clause(ClauseKind.XOR, xor_literals=tuple(xor_part))
            elif token[0] == "g":
                advance()
                or_part, stop = read_literals({"x"})
                if stop[0] != "x":
                    raise ParseError("generalized clause needs an 'x' separator", stop[1], stop[2])
                advance()
                xor_part, end = read_literals(set())
                if end[0] != "0":
                    raise ParseError(f"unexpected token {end[0]!r} in generalized clause", end[1], end[2])
                advance()
                clause = Clause(ClauseKind.GENERALIZED, tuple(or_part), tuple(xor_part))
            else:
                or_part, end = read_literals(set())
                if end[0] != "0":
                    raise ParseError(f"unexpected token {end[0]!r} in clause", end[1], end[2])
                advance()
                clause = Clause(ClauseKind.OR, or_literals=tuple(or_part))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), start[1], start[2]) from None
        clauses.append(clause)

    if len(clauses) != nclauses:
        raise ParseError(f"header declares {nclauses} clauses but {len(clauses)} were given")
    return Formula(nvars, tuple(clauses))


def render_formula(f: Formula) -> str:
    """Inverse of parse_formula: parse(render(f)) is structurally equal to f."""
    lines = [f"p ecnf {f.n} {len(f.clauses)}"]
    for clause in f.clauses:
        parts = []
        if clause.kind is ClauseKind.GENERALIZED:
            parts.append("g")
        if clause.kind is ClauseKind.OR or clause.kind is ClauseKind.GENERALIZED:
            parts.extend(str(l.signed) for l in clause.or_literals)
        if clause.kind is not ClauseKind.OR:
            parts.append("x")
            parts.extend(str(l.signed) for l in clause.xor_literals)
        parts.append("0")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# evaluation and model enumeration
# ---------------------------------------------------------------------------


def clause_satisfied(clause: Clause, a: tuple[int, ...]) -> bool:
    or_hit = any(a[l.var - 1] == (1 if l.positive else 0) for l in clause.or_literals)
    if clause.kind is ClauseKind.OR:
        return or_hit
    parity = sum(a[l.var - 1] == (1 if l.positive else 0) for l in clause.xor_literals) & 1
    if clause.kind is ClauseKind.XOR:
        return parity == 1
    return or_hit or parity == 1


def evaluate(f: Formula, a: Iterable[int]) -> bool:
    """True iff every clause of f is satisfied by the assignment."""
    a = tuple(a)
    if len(a) != f.n:
        raise ValueError(f"assignment has length {len(a)}, formula has n={f.n}")
    return all(clause_satisfied(clause, a) for clause in f.clauses)


def _variable_masks(n: int) -> list[int]:
    """masks[v-1] has bit p set iff assignment #p gives variable v the value 1.

    Assignment #p reads p in binary with x1 as the most significant bit.
    """
    size = 1 << n
    masks = []
    for v in range(1, n + 1):
        half = 1 << (n - v)
        period = half << 1
        unit = ((1 << half) - 1) << half
        repunit = ((1 << size) - 1) // ((1 << period) - 1)
        masks.append(unit * repunit)
    return masks


def satisfying_mask(f: Formula, masks: list[int] | None = None) -> int:
    """Bitmask over all 2^n assignments with the satisfying positions set."""
    if masks is None:
        masks = _variable_masks(f.n)
    full = (1 << (1 << f.n)) - 1
    result = full
    for clause in f.clauses:
        or_mask = 0
        for l in clause.or_literals:
            m = masks[l.var - 1]
            or_mask |= m if l.positive else (full & ~m)
        xor_mask = 0
        for l in clause.xor_literals:
            m = masks[l.var - 1]
            xor_mask ^= m if l.positive else (full & ~m)
        if clause.kind is ClauseKind.OR:
            clause_mask = or_mask
        elif clause.kind is ClauseKind.XOR:
            clause_mask = xor_mask
        else:
            clause_mask = or_mask | xor_mask
        result &= clause_mask
        if not result:
            break
    return result


def position_to_assignment(p: int, n: int) -> tuple[int, ...]:
    return tuple((p >> (n - v)) & 1 for v in range(1, n + 1))


def models(f: Formula, cap: int = DEFAULT_MODELS_CAP):
    """Enumerate the full model set of f as a Domain.  Refuses when n > cap."""
    from .domain import Domain

    if f.n > cap:
        raise CapExceededError(f"model enumeration needs n <= {cap}, got n={f.n}")
    mask = satisfying_mask(f)
    return Domain(f.n, _mask_positions_assignments(mask, f.n))


def _mask_positions_assignments(mask: int, n: int) -> list[tuple[int, ...]]:
    import numpy as np

    size = 1 << n
    raw = mask.to_bytes((size + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size]
    positions = np.nonzero(bits)[0]
    return [position_to_assignment(int(p), n) for p in positions]


def rename(f: Formula, variables: Iterable[int]) -> Formula:
    """Flip the polarity of every literal whose variable is in `variables`.

    Renaming is an involution and clause kinds are unchanged.
    """
    flip = set(variables)
    for v in flip:
        if not 1 <= v <= f.n:
            raise ValueError(f"variable x{v} out of range (n={f.n})")

    def rename_literals(literals):
        return tuple(l.negated() if l.var in flip else l for l in literals)

    return Formula(
        f.n,
        tuple(
            Clause(c.kind, rename_literals(c.or_literals), rename_literals(c.xor_literals))
            for c in f.clauses
        ),
    )


def flip_assignment(a: tuple[int, ...], variables: Iterable[int]) -> tuple[int, ...]:
    """Complement the coordinates in `variables` (1-based)."""
    flip = set(variables)
    return tuple(1 - b if v in flip else b for v, b in enumerate(a, start=1))
