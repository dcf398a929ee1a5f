"""Explicit Boolean domains: finite sets of n-bit judgment vectors.

Members are stored sorted with a hash index, since closure checks are
membership-heavy.  Domains are immutable; every operation returns a new one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import TYPE_CHECKING, Iterable

from .errors import CapExceededError, EmptyDomainError, ParseError

if TYPE_CHECKING:  # pragma: no cover
    from .boolfn import BoolFn

DEFAULT_TUPLE_CAP = 10_000_000


@dataclass(frozen=True)
class DegeneracyReport:
    non_degenerate: bool
    fixed_coordinates: tuple[tuple[int, int], ...]  # (1-based index, forced bit)


@dataclass(frozen=True)
class Domain:
    n: int
    members: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a domain needs arity >= 1")
        rows = sorted(set(tuple(m) for m in self.members))
        for row in rows:
            if len(row) != self.n:
                raise ValueError(f"member {row} does not have length n={self.n}")
            if any(b not in (0, 1) for b in row):
                raise ValueError(f"member {row} is not a bitvector")
        object.__setattr__(self, "members", tuple(rows))

    @cached_property
    def member_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.members)

    @cached_property
    def members_as_ints(self) -> tuple[int, ...]:
        """Each member packed into an int, x1 as the most significant bit."""
        return tuple(self.pack(m) for m in self.members)

    def pack(self, row: tuple[int, ...]) -> int:
        value = 0
        for b in row:
            value = (value << 1) | b
        return value

    def unpack(self, value: int) -> tuple[int, ...]:
        return tuple((value >> (self.n - v)) & 1 for v in range(1, self.n + 1))

    def __len__(self):
        return len(self.members)

    def __contains__(self, row) -> bool:
        return tuple(row) in self.member_set

    def __iter__(self):
        return iter(self.members)


def parse_domain(text: str) -> Domain:
    """Parse a domain file: header ``d <n>`` then one 0/1 row per line.

    Comment lines starting with ``c`` are allowed anywhere.  Ragged rows,
    non-binary characters, duplicate rows and empty domains are rejected.
    """
    n = None
    rows: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.split(None, 1)[0] == "c":
            continue
        parts = stripped.split()
        if n is None:
            if parts[0] != "d" or len(parts) != 2:
                raise ParseError("expected header 'd <n>'", lineno, 1)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad arity {parts[1]!r}", lineno, 1) from None
            if n < 1:
                raise ParseError("arity must be >= 1", lineno, 1)
            continue
        if len(parts) != 1:
            raise ParseError("expected one 0/1 row per line", lineno, 1)
        row_text = parts[0]
        if len(row_text) != n:
            raise ParseError(f"row has length {len(row_text)}, expected {n}", lineno, 1)
        if any(ch not in "01" for ch in row_text):
            raise ParseError(f"row {row_text!r} has non-binary characters", lineno, 1)
        row = tuple(int(ch) for ch in row_text)
        if row in seen:
            raise ParseError(f"duplicate row {row_text!r}", lineno, 1)
        seen.add(row)
        rows.append(row)
    if n is None:
        raise ParseError("missing 'd <n>' header")
    if not rows:
        raise ParseError("empty domain")
    return Domain(n, tuple(rows))


def render_domain(d: Domain) -> str:
    lines = [f"d {d.n}"]
    lines.extend("".join(str(b) for b in row) for row in d.members)
    return "\n".join(lines) + "\n"


def degeneracy(d: Domain) -> DegeneracyReport:
    """Coordinates on which all members agree, i.e. issues that are no choice."""
    if not d.members:
        raise EmptyDomainError("degeneracy of an empty domain is undefined")
    fixed = []
    for j in range(d.n):
        column = {row[j] for row in d.members}
        if len(column) == 1:
            fixed.append((j + 1, d.members[0][j]))
    return DegeneracyReport(not fixed, tuple(fixed))


def project(d: Domain, indices: Iterable[int]) -> Domain:
    """Restrict every member to the given coordinates, in ascending order."""
    idx = sorted(set(indices))
    if not idx:
        raise ValueError("projection needs a non-empty index set")
    for j in idx:
        if not 1 <= j <= d.n:
            raise ValueError(f"index {j} out of range (n={d.n})")
    return Domain(len(idx), tuple(tuple(row[j - 1] for j in idx) for row in d.members))


def rename_domain(d: Domain, variables: Iterable[int]) -> Domain:
    """Complement every member on the given coordinates.  An involution."""
    flip = set(variables)
    for j in flip:
        if not 1 <= j <= d.n:
            raise ValueError(f"index {j} out of range (n={d.n})")
    return Domain(
        d.n,
        tuple(
            tuple(1 - b if v in flip else b for v, b in enumerate(row, start=1))
            for row in d.members
        ),
    )


def is_closed_under(d: Domain, f: "BoolFn", tuple_cap: int = DEFAULT_TUPLE_CAP) -> bool:
    """True iff applying f componentwise to every k-tuple of members stays in d."""
    return closure_counterexample(d, f, tuple_cap) is None


def closure_counterexample(d: Domain, f: "BoolFn", tuple_cap: int = DEFAULT_TUPLE_CAP):
    """None if closed; otherwise a k-tuple of members whose image escapes d."""
    k = f.arity
    if len(d.members) ** k > tuple_cap:
        raise CapExceededError(f"|d|^k = {len(d.members)}^{k} exceeds cap {tuple_cap}")
    table = f.table
    member_set = d.member_set
    for rows in product(d.members, repeat=k):
        out = []
        for j in range(d.n):
            idx = 0
            for row in rows:
                idx = (idx << 1) | row[j]
            out.append(table[idx])
        if tuple(out) not in member_set:
            return rows
    return None


def is_affine(d: Domain) -> bool:
    """Closure under the ternary sum mod 2.

    Equivalent to the translate of d by any fixed member being closed under
    pairwise XOR, which is quadratic instead of cubic in |d|.
    """
    if not d.members:
        raise EmptyDomainError("affineness of an empty domain is undefined")
    ints = d.members_as_ints
    base = ints[0]
    translated = frozenset(v ^ base for v in ints)
    return all(a ^ b in translated for a in translated for b in translated)
