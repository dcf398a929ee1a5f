"""Brute-force existence checks for aggregator classes at small arity.

These searches are deliberately independent of the synthesis pipeline: the
census runs both paths over every small domain and reports any disagreement.
Candidate tuples are enumerated lexicographically over a fixed component
ordering (and < or < pr1 < pr2 for the binary set, and3 < or3 < maj < xor3
for the ternary commutative set) so that returned witnesses are reproducible.
Members are packed into machine integers and every candidate is applied with
a handful of bitwise operations per tuple; any find is re-verified through
the ordinary table-based closure check before being reported.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import product

from .aggregate import (
    Aggregator,
    classify_domain,
    is_aggregator,
    is_anonymous,
    is_dictatorial,
    is_generalized_dictatorship,
    is_locally_nondictatorial,
    is_monotone,
    is_strongdem,
    systematic,
)
from .boolfn import BoolFn, named_fn
from .domain import Domain, degeneracy, is_affine
from .errors import CapExceededError, VerificationError

DEFAULT_CANDIDATE_CAP = 1 << 20

BINARY_SET = ("and", "or", "pr1", "pr2")
TERNARY_SET = ("and3", "or3", "maj", "xor3")
TERNARY_SET_NO_XOR = ("and3", "or3", "maj")


@dataclass(frozen=True)
class SearchSpaceSpec:
    """Per-coordinate candidate set for the generic search engine."""

    arity: int
    candidates: tuple[BoolFn, ...]
    candidate_cap: int = DEFAULT_CANDIDATE_CAP
    tuple_cap: int = 10_000_000

    @classmethod
    def named(cls, name: str, k: int | None = None) -> "SearchSpaceSpec":
        if name == "binary-unanimous":
            return cls(2, tuple(named_fn(f, 2) for f in BINARY_SET))
        if name == "ternary-commutative":
            return cls(3, tuple(named_fn(f, 3) for f in TERNARY_SET))
        if name == "ternary-commutative-no-xor":
            return cls(3, tuple(named_fn(f, 3) for f in TERNARY_SET_NO_XOR))
        if name == "all-unanimous":
            if k is None:
                raise ValueError("all-unanimous needs an explicit arity")
            from .boolfn import all_unanimous_tables

            return cls(k, tuple(all_unanimous_tables(k)))
        raise ValueError(f"unknown search space {name!r}")


def _coordinate_bits(d: Domain) -> list[int]:
    return [1 << (d.n - v) for v in range(1, d.n + 1)]


def _binary_apply(x: int, y: int, masks: tuple[int, int, int, int]) -> int:
    m_and, m_or, m_pr1, m_pr2 = masks
    return (x & y & m_and) | ((x | y) & m_or) | (x & m_pr1) | (y & m_pr2)


def _ternary_apply(a: int, b: int, c: int, masks: tuple[int, int, int, int]) -> int:
    m_and, m_or, m_maj, m_xor = masks
    return (
        (a & b & c & m_and)
        | ((a | b | c) & m_or)
        | (((a & b) | (b & c) | (a & c)) & m_maj)
        | ((a ^ b ^ c) & m_xor)
    )


def _digit_masks(digits: tuple[int, ...], bits: list[int], nsets: int) -> tuple[int, ...]:
    masks = [0] * nsets
    for bit, digit in zip(bits, digits):
        masks[digit] |= bit
    return tuple(masks)


def _candidate_aggregator(digits: tuple[int, ...], names: tuple[str, ...], k: int) -> Aggregator:
    return Aggregator(tuple(named_fn(names[g], k) for g in digits))


def _verify_find(F: Aggregator, d: Domain, extra=None) -> Aggregator:
    if not is_aggregator(F, d):
        raise VerificationError(f"oracle returned a non-aggregator {F}")
    if extra is not None and not extra(F):
        raise VerificationError(f"oracle find {F} fails the requested property")
    return F


def brute_binary(d: Domain, candidate_cap: int = DEFAULT_CANDIDATE_CAP) -> Aggregator | None:
    """First non-dictatorial binary tuple over {and, or, pr1, pr2} that
    aggregates d, in lexicographic candidate order; None when none exists."""
    if 4 ** d.n > candidate_cap:
        raise CapExceededError(f"4^{d.n} candidates exceed cap {candidate_cap}")
    bits = _coordinate_bits(d)
    ints = d.members_as_ints
    member_set = frozenset(ints)
    all_pr1 = (2,) * d.n
    all_pr2 = (3,) * d.n
    for digits in product(range(4), repeat=d.n):
        if digits == all_pr1 or digits == all_pr2:
            continue
        masks = _digit_masks(digits, bits, 4)
        if all(
            _binary_apply(x, y, masks) in member_set for x in ints for y in ints
        ):
            F = _candidate_aggregator(digits, BINARY_SET, 2)
            return _verify_find(F, d)
    return None


def brute_ternary_commutative(
    d: Domain, allow_xor: bool = True, candidate_cap: int = DEFAULT_CANDIDATE_CAP
) -> Aggregator | None:
    """First tuple over {and3, or3, maj} (plus xor3 when allowed) that
    aggregates d; all its components are non-projections by construction."""
    names = TERNARY_SET if allow_xor else TERNARY_SET_NO_XOR
    if len(names) ** d.n > candidate_cap:
        raise CapExceededError(f"{len(names)}^{d.n} candidates exceed cap {candidate_cap}")
    bits = _coordinate_bits(d)
    ints = d.members_as_ints
    member_set = frozenset(ints)
    digit_of = {name: TERNARY_SET.index(name) for name in names}
    for chosen in product(names, repeat=d.n):
        digits = tuple(digit_of[name] for name in chosen)
        masks = _digit_masks(digits, bits, 4)
        ok = True
        for a in ints:
            for b in ints:
                for c in ints:
                    if _ternary_apply(a, b, c, masks) not in member_set:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            F = _candidate_aggregator(digits, TERNARY_SET, 3)
            return _verify_find(F, d)
    return None


PROPERTY_TAGS = {
    "nondictatorial": lambda F, d: not is_dictatorial(F),
    "locally-nondictatorial": lambda F, d: is_locally_nondictatorial(F),
    "anonymous": lambda F, d: is_anonymous(F),
    "monotone-nondictatorial": lambda F, d: is_monotone(F) and not is_dictatorial(F),
    "strongdem": lambda F, d: is_strongdem(F),
    "not-generalized-dictatorship": lambda F, d: not is_generalized_dictatorship(F, d),
}


def brute_property(d: Domain, property_tag: str, spec: SearchSpaceSpec) -> Aggregator | None:
    """Generic engine: first candidate tuple that is an aggregator for d and
    satisfies the tagged property; exhaustive and deterministic.  This is a
    sanity tool: arity 3 already settles every census question, so the
    all-table spaces carry an extra n * 2^(2^k) <= 10^6 guard."""
    if property_tag not in PROPERTY_TAGS:
        raise ValueError(f"unknown property {property_tag!r}; choose from {sorted(PROPERTY_TAGS)}")
    if len(spec.candidates) ** d.n > spec.candidate_cap:
        raise CapExceededError(
            f"{len(spec.candidates)}^{d.n} candidates exceed cap {spec.candidate_cap}"
        )
    if d.n * (1 << (1 << spec.arity)) > 1_000_000:
        raise CapExceededError(
            f"n * 2^(2^{spec.arity}) = {d.n * (1 << (1 << spec.arity))} exceeds 10^6"
        )
    predicate = PROPERTY_TAGS[property_tag]
    for chosen in product(spec.candidates, repeat=d.n):
        F = Aggregator(chosen)
        if predicate(F, d) and is_aggregator(F, d, spec.tuple_cap):
            return _verify_find(F, d, extra=lambda G: predicate(G, d))
    return None


def _oracle_not_gendict(d: Domain, candidate_cap: int) -> Aggregator | None:
    """Binary tuples first; minority as the fallback for affine domains."""
    if len(d.members) < 3:
        return None
    if 4 ** d.n > candidate_cap:
        raise CapExceededError(f"4^{d.n} candidates exceed cap {candidate_cap}")
    bits = _coordinate_bits(d)
    ints = d.members_as_ints
    member_set = frozenset(ints)
    for digits in product(range(4), repeat=d.n):
        masks = _digit_masks(digits, bits, 4)
        escapes = False
        ok = True
        for x in ints:
            for y in ints:
                z = _binary_apply(x, y, masks)
                if z not in member_set:
                    ok = False
                    break
                if z != x and z != y:
                    escapes = True
            if not ok:
                break
        if ok and escapes:
            F = _candidate_aggregator(digits, BINARY_SET, 2)
            return _verify_find(F, d, extra=lambda G: not is_generalized_dictatorship(G, d))
    if is_affine(d):
        F = systematic(named_fn("xor3"), d.n)
        if is_aggregator(F, d) and not is_generalized_dictatorship(F, d):
            return F
    return None


# ---------------------------------------------------------------------------
# census: theory path vs oracle path over every small domain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRecord:
    domain_bits: str
    members: tuple[str, ...]
    theory: dict
    oracle: dict
    match: bool

    def to_json(self) -> dict:
        return {
            "domain_bits": self.domain_bits,
            "members": list(self.members),
            "theory_verdicts": self.theory,
            "oracle_verdicts": self.oracle,
            "match": self.match,
        }


@dataclass(frozen=True)
class CensusReport:
    n: int
    mode: str
    seed: int
    records: tuple[CensusRecord, ...]

    @property
    def mismatches(self) -> tuple[CensusRecord, ...]:
        return tuple(r for r in self.records if not r.match)

    def to_json(self) -> str:
        return json.dumps([r.to_json() for r in self.records], indent=None)


def oracle_verdicts(d: Domain, candidate_cap: int = DEFAULT_CANDIDATE_CAP) -> dict:
    binary = brute_binary(d, candidate_cap)
    affine = is_affine(d)
    lpd = brute_ternary_commutative(d, allow_xor=True, candidate_cap=candidate_cap)
    strongdem = brute_ternary_commutative(d, allow_xor=False, candidate_cap=candidate_cap)
    ngd = _oracle_not_gendict(d, candidate_cap)
    return {
        "possibility": binary is not None or affine,
        "local_possibility": lpd is not None,
        "anonymous": lpd is not None,
        "monotone_nondictatorial": binary is not None,
        "strongdem": strongdem is not None,
        "non_generalized_dictatorship": ngd is not None,
    }


def _domain_from_mask(mask: int, n: int) -> Domain:
    size = 1 << n
    members = [
        tuple((p >> (n - v)) & 1 for v in range(1, n + 1))
        for p in range(size)
        if mask >> p & 1
    ]
    return Domain(n, members)


def _eligible(d: Domain) -> bool:
    return len(d.members) >= 2 and degeneracy(d).non_degenerate


def census_domains(n: int, mode: str = "exhaustive", sample: int = 2000, seed: int = 0):
    """Non-degenerate domains with at least two members: all of them for
    n <= 3, a seeded sample of subsets for larger n."""
    size = 1 << n
    if mode == "exhaustive":
        if n > 3:
            raise CapExceededError("exhaustive census is limited to n <= 3")
        for mask in range(1, 1 << size):
            d = _domain_from_mask(mask, n)
            if _eligible(d):
                yield mask, d
    elif mode == "sample":
        rng = random.Random(seed)
        seen = set()
        produced = 0
        while produced < sample:
            mask = rng.getrandbits(size)
            if mask in seen:
                continue
            seen.add(mask)
            if not mask:
                continue
            d = _domain_from_mask(mask, n)
            if _eligible(d):
                produced += 1
                yield mask, d
    else:
        raise ValueError(f"unknown census mode {mode!r}")


def census(n: int, mode: str = "exhaustive", sample: int = 2000, seed: int = 0) -> CensusReport:
    records = []
    for mask, d in census_domains(n, mode=mode, sample=sample, seed=seed):
        theory = classify_domain(d).verdicts()
        oracle = oracle_verdicts(d)
        records.append(
            CensusRecord(
                domain_bits=format(mask, f"0{1 << n}b"),
                members=tuple("".join(map(str, row)) for row in d.members),
                theory=theory,
                oracle=oracle,
                match=theory == oracle,
            )
        )
    return CensusReport(n, mode, seed, tuple(records))
