"""Partitions of d in exponent form and the combinatorics attached to them.

A partition ``(1^{e_1} 2^{e_2} ... d^{e_d})`` is stored as the map ``r -> e_r``
with zero exponents omitted.  The part list is only a view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from crl.polyring import MultiPoly


class PartitionError(ValueError):
    """Raised for malformed partitions or unsupported partition shapes."""


@dataclass(frozen=True, order=True)
class Partition:
    """A partition of ``d``; ``exps`` is a sorted tuple of ``(r, e_r)`` pairs."""

    exps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.exps:
            raise PartitionError("a partition needs at least one part")
        prev = 0
        for r, e in self.exps:
            if r <= prev:
                raise PartitionError("part sizes must be strictly increasing in exps")
            if e <= 0:
                raise PartitionError(f"exponent of part {r} must be positive")
            prev = r

    @classmethod
    def from_exps(cls, exps: Mapping[int, int]) -> "Partition":
        return cls(tuple(sorted((r, e) for r, e in exps.items() if e != 0)))

    @property
    def exp_map(self) -> dict[int, int]:
        return dict(self.exps)

    def e(self, r: int) -> int:
        for s, e in self.exps:
            if s == r:
                return e
        return 0

    @property
    def d(self) -> int:
        return sum(r * e for r, e in self.exps)

    @property
    def n(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def M(self) -> int:
        # max over stored r only
        return max(math.ceil(Fraction(e + 1, r)) for r, e in self.exps)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.exps)

    @property
    def parts(self) -> list[int]:
        """Weakly decreasing list of parts."""
        out: list[int] = []
        for r, e in reversed(self.exps):
            out.extend([r] * e)
        return out

    def to_json(self) -> list[int]:
        return self.parts

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def exponent_notation(self) -> str:
        chunks = []
        for r, e in self.exps:
            chunks.append(str(r) if e == 1 else f"{r}^{e}")
        return "(" + " ".join(chunks) + ")"


def parse_partition(parts: Iterable[int] | str) -> Partition:
    """Build a partition from a list of parts, or a comma list such as ``"3,2,2"``."""
    if isinstance(parts, str):
        text = parts.strip().strip("()[]")
        try:
            parts = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError as exc:
            raise PartitionError(f"cannot parse partition {text!r}") from exc
    parts = list(parts)
    if not parts:
        raise PartitionError("empty partition")
    counts: dict[int, int] = {}
    for p in parts:
        if isinstance(p, bool) or not isinstance(p, int) or p <= 0:
            raise PartitionError(f"parts must be positive integers, got {p!r}")
        counts[p] = counts.get(p, 0) + 1
    return Partition.from_exps(counts)


def partitions_of(d: int) -> Iterator[Partition]:
    """All partitions of ``d`` (d >= 1), largest parts first."""

    def rec(rest: int, cap: int) -> Iterator[list[int]]:
        if rest == 0:
            yield []
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in rec(rest - p, p):
                yield [p] + tail

    for parts in rec(d, d):
        yield parse_partition(parts)


def refines(fine: Partition, coarse: Partition) -> bool:
    """True iff every part of ``coarse`` is a sum of a disjoint group of parts of ``fine``."""
    if fine.d != coarse.d:
        raise PartitionError(f"degree mismatch: {fine.d} != {coarse.d}")
    small = tuple(fine.parts)

    @lru_cache(maxsize=None)
    def place(i: int, room: tuple[int, ...]) -> bool:
        if i == len(small):
            return all(c == 0 for c in room)
        p = small[i]
        tried = set()
        for k, c in enumerate(room):
            if c >= p and c not in tried:
                tried.add(c)
                nxt = list(room)
                nxt[k] -= p
                if place(i + 1, tuple(sorted(nxt, reverse=True))):
                    return True
        return False

    return place(0, tuple(coarse.parts))


def crl_degree(lam: Partition) -> int:
    """Degree of the coincident root locus: ``n!/prod(e_r!) * prod(r^e_r)``."""
    multinomial = math.factorial(lam.n)
    for _, e in lam.exps:
        multinomial //= math.factorial(e)
    prod = 1
    for r, e in lam.exps:
        prod *= r**e
    return multinomial * prod


def de_jonquieres_degree(lam: Partition) -> int:
    """Coefficient of ``prod t_r^{e_r}`` in ``(1 + t_1 + 2 t_2 + ... + d t_d)^n``.

    The power is expanded one factor at a time, discarding monomials that
    already exceed the target exponent in some ``t_r``.  Variables ``t_r``
    with ``e_r = 0`` can never contribute and are left out of the expansion.
    """
    sizes = lam.sizes
    target = tuple(e for _, e in lam.exps)
    # factor = 1 + sum_r r*t_r, restricted to the live variables
    factor = [((0,) * len(sizes), 1)]
    for k, r in enumerate(sizes):
        expo = [0] * len(sizes)
        expo[k] = 1
        factor.append((tuple(expo), r))
    acc: dict[tuple[int, ...], int] = {(0,) * len(sizes): 1}
    for _ in range(lam.n):
        nxt: dict[tuple[int, ...], int] = {}
        for mono, c in acc.items():
            for fm, fc in factor:
                prod = tuple(a + b for a, b in zip(mono, fm))
                if any(p > t for p, t in zip(prod, target)):
                    continue
                nxt[prod] = nxt.get(prod, 0) + c * fc
        acc = nxt
    return acc.get(target, 0)


@dataclass(frozen=True)
class MergeSet:
    """Partitions ``mu`` indexing the components of the singular locus.

    Each case maps ``mu`` to the sorted list of witness tuples that produce it:
    ``(r1, r2)`` for case (a), ``(r1, r2, t)`` for (b) and ``(r1, r2, r3, t1, t2)``
    for (c).
    """

    case_a: dict[Partition, list[tuple[int, ...]]] = field(default_factory=dict)
    case_b: dict[Partition, list[tuple[int, ...]]] = field(default_factory=dict)
    case_c: dict[Partition, list[tuple[int, ...]]] = field(default_factory=dict)

    def cases(self) -> dict[str, dict[Partition, list[tuple[int, ...]]]]:
        return {"a": self.case_a, "b": self.case_b, "c": self.case_c}

    def all(self) -> set[Partition]:
        return set(self.case_a) | set(self.case_b) | set(self.case_c)

    def is_empty(self) -> bool:
        return not (self.case_a or self.case_b or self.case_c)

    def to_json(self) -> dict:
        out = {}
        for name, case in self.cases().items():
            out[f"case_{name}"] = [
                {"partition": mu.to_json(), "witnesses": [list(w) for w in case[mu]]}
                for mu in sorted(case, key=lambda p: p.parts, reverse=True)
            ]
        return out


def _shifted(exps: dict[int, int], delta: dict[int, int]) -> Partition | None:
    new = dict(exps)
    for r, dv in delta.items():
        new[r] = new.get(r, 0) + dv
        if new[r] < 0:
            return None
    return Partition.from_exps(new)


def singular_merge_set(lam: Partition) -> MergeSet:
    """Enumerate the three merge cases (a), (b), (c) for ``lam``.

    (a) one part ``r1`` and one part ``r2 != r1`` merge into ``r1 + r2``;
    (b) ``t`` parts of size ``r2`` are replaced by one extra part ``r1 = t*r2``,
        where ``r1`` already occurs in ``lam``;
    (c) ``t1`` parts ``r1`` and ``t2`` parts ``r2`` become two parts ``r3``,
        with ``r3 = t1*r1 = t2*r2`` and ``r1, r2, r3`` pairwise distinct.
    """
    exps = lam.exp_map
    d = lam.d
    sizes = lam.sizes
    out = MergeSet()

    def add(case, mu, witness):
        case.setdefault(mu, [])
        if witness not in case[mu]:
            case[mu].append(witness)
            case[mu].sort()

    for i, r1 in enumerate(sizes):
        for r2 in sizes[i + 1:]:
            mu = _shifted(exps, {r1: -1, r2: -1, r1 + r2: 1})
            if mu is not None:
                add(out.case_a, mu, (r1, r2))

    for r1 in sizes:
        for r2 in sizes:
            if r2 >= r1 or r1 % r2:
                continue
            t = r1 // r2
            if exps[r2] >= t:
                add(out.case_b, _shifted(exps, {r1: 1, r2: -t}), (r1, r2, t))

    for i, r1 in enumerate(sizes):
        for r2 in sizes[i + 1:]:
            step = r1 * r2 // math.gcd(r1, r2)
            for r3 in range(step, d + 1, step):
                if r3 in (r1, r2):
                    continue
                t1, t2 = r3 // r1, r3 // r2
                if exps[r1] >= t1 and exps[r2] >= t2:
                    mu = _shifted(exps, {r1: -t1, r2: -t2, r3: 2})
                    add(out.case_c, mu, (r1, r2, r3, t1, t2))
    return out


def _two_parts(lam: Partition) -> tuple[int, int]:
    parts = lam.parts
    if len(parts) != 2:
        raise PartitionError(f"expected exactly two parts, got {lam}")
    return parts[0], parts[1]


def regularity_bound(lam: Partition) -> int:
    """Closed-form regularity bound for the ideal sheaf of a two-part locus."""
    l1, l2 = _two_parts(lam)
    d = l1 + l2
    if l1 == l2:
        return d * d // 4 - d + 3
    p = l1 * l2
    return p * (2 * p - d + 2) ** 2 + 2 * p - d + 5


def hilbert_polynomial_two_part(lam: Partition) -> MultiPoly:
    """``l1*l2*m^2 + 2`` as a polynomial in ``m``; only for two distinct parts."""
    l1, l2 = _two_parts(lam)
    if l1 == l2:
        raise PartitionError("Hilbert polynomial formula needs two distinct parts")
    m = MultiPoly.var("m")
    return l1 * l2 * m**2 + 2
