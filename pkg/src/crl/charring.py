"""The character ring of SL2.

A character is a finite integer combination of the irreducible characters
``s_k`` (the character of ``Sym^k V``).  Because SL2 irreducibles are
self-dual, ``Sym^k V`` and ``Sym^k V*`` get the same symbol.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterable, Mapping


class CharacterError(ValueError):
    """Inconsistent weight data or an unexpected virtual character."""


class Character:
    """Virtual SL2 character ``sum_k mults[k] * s_k``."""

    __slots__ = ("mults",)

    def __init__(self, mults: Mapping[int, int] | None = None):
        clean = {}
        for k, v in (mults or {}).items():
            k, v = int(k), int(v)
            if k < 0:
                raise CharacterError(f"irreducible index must be >= 0, got {k}")
            if v:
                clean[k] = v
        self.mults: dict[int, int] = clean

    @classmethod
    def s(cls, k: int, mult: int = 1) -> "Character":
        """The irreducible ``s_k``; negative ``k`` gives the zero character."""
        return cls({k: mult}) if k >= 0 else cls()

    @classmethod
    def zero(cls) -> "Character":
        return cls()

    @classmethod
    def from_list(cls, ks: Iterable[int]) -> "Character":
        """``[12, 8, 8, 4]`` -> ``s12 + 2 s8 + s4``; see ``brace`` for the ``{12,8^2,4}`` form."""
        return cls(Counter(ks))

    def __add__(self, other: "Character") -> "Character":
        out = dict(self.mults)
        for k, v in other.mults.items():
            out[k] = out.get(k, 0) + v
        return Character(out)

    def __neg__(self) -> "Character":
        return Character({k: -v for k, v in self.mults.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __mul__(self, other) -> "Character":
        if isinstance(other, Character):
            return tensor(self, other)
        return Character({k: v * int(other) for k, v in self.mults.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Character):
            return self.mults == other.mults
        if other == 0:
            return not self.mults
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.mults.items()))

    def __bool__(self) -> bool:
        return bool(self.mults)

    def is_genuine(self) -> bool:
        return all(v > 0 for v in self.mults.values())

    def dim(self) -> int:
        return sum(v * (k + 1) for k, v in self.mults.items())

    def weights(self) -> Counter:
        """Weight multiset ``{k, k-2, ..., -k}`` summed with multiplicity."""
        out: Counter = Counter()
        for k, v in self.mults.items():
            for w in range(-k, k + 1, 2):
                out[w] += v
        return +out if self.is_genuine() else out

    def as_list(self) -> list[int]:
        """Decreasing list of indices with repetition; only for genuine characters."""
        if not self.is_genuine():
            raise CharacterError(f"virtual character {self} has no module list")
        out = []
        for k in sorted(self.mults, reverse=True):
            out.extend([k] * self.mults[k])
        return out

    def __str__(self) -> str:
        if not self.mults:
            return "0"
        parts = []
        for k in sorted(self.mults, reverse=True):
            v = self.mults[k]
            mag = abs(v)
            body = f"s{k}" if mag == 1 else f"{mag}*s{k}"
            parts.append(("-" if v < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def brace(self) -> str:
        """Compact ``{30,26,22^2}`` form for genuine characters."""
        items = []
        for k in sorted(self.mults, reverse=True):
            v = self.mults[k]
            items.append(str(k) if v == 1 else f"{k}^{v}")
        return "{" + ",".join(items) + "}"

    def __repr__(self) -> str:
        return f"Character({self})"

    def to_json(self) -> dict:
        return {
            "mults": {str(k): self.mults[k] for k in sorted(self.mults)},
            "text": str(self),
            "dim": self.dim(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Character":
        mults = data["mults"] if "mults" in data else data
        return cls({int(k): v for k, v in mults.items()})


def cg_tensor(m: int, n: int) -> Character:
    """Clebsch-Gordan: ``s_m * s_n = s_{m+n} + s_{m+n-2} + ... + s_{|m-n|}``."""
    if m < 0 or n < 0:
        return Character()
    return Character({m + n - 2 * r: 1 for r in range(min(m, n) + 1)})


def tensor(a: Character, b: Character) -> Character:
    out: dict[int, int] = {}
    for k1, v1 in a.mults.items():
        for k2, v2 in b.mults.items():
            for k in range(abs(k1 - k2), k1 + k2 + 1, 2):
                out[k] = out.get(k, 0) + v1 * v2
    return Character(out)


@lru_cache(maxsize=None)
def _partition_table(m: int, n: int) -> tuple[int, ...]:
    """``p(r, m, n)`` for ``r = 0..m*n``: partitions of r into at most m parts, each <= n."""
    size = m * n
    # by_count[c][s]: partitions of s into exactly c parts, part sizes seen so far
    by_count = [[0] * (size + 1) for _ in range(m + 1)]
    by_count[0][0] = 1
    for v in range(1, n + 1):
        for c in range(1, m + 1):
            row, below = by_count[c], by_count[c - 1]
            for s in range(v, size + 1):
                row[s] += below[s - v]
    return tuple(sum(by_count[c][s] for c in range(m + 1)) for s in range(size + 1))


def box_partitions(r: int, m: int, n: int) -> int:
    """Number of partitions of ``r`` into at most ``m`` parts, none exceeding ``n``."""
    if r < 0 or m < 0 or n < 0:
        return 0
    if m == 0 or n == 0:
        return 1 if r == 0 else 0
    table = _partition_table(m, n)
    return table[r] if r < len(table) else 0


def plethysm_sym_sym(m: int, n: int) -> Character:
    """Cayley-Sylvester decomposition of ``Sym^m(Sym^n V)``; zero for ``m < 0``."""
    if m < 0 or n < 0:
        return Character()
    out = {}
    for r in range(m * n // 2 + 1):
        mult = box_partitions(r, m, n) - box_partitions(r - 1, m, n)
        if mult:
            out[m * n - 2 * r] = mult
    return Character(out)


def wedge_sym(k: int, n: int) -> Character:
    """``wedge^k(Sym^n V) = Sym^k(Sym^{n+1-k} V)``; zero outside ``0 <= k <= n+1``."""
    if k < 0 or k > n + 1:
        return Character()
    if k == 0:
        return Character.s(0)
    return plethysm_sym_sym(k, n + 1 - k)


def char_from_weights(weights: Iterable[int] | Mapping[int, int],
                      genuine: bool = True) -> Character:
    """Recover the character from a weight multiset: ``mult(s_k) = c(k) - c(k+2)``.

    Raises if the multiset is not symmetric under negation or (with
    ``genuine``) yields a negative multiplicity.  Odd and even weights are
    handled independently, so mixed-parity characters are fine.
    """
    counts = Counter(weights) if not isinstance(weights, Mapping) else Counter(dict(weights))
    counts = Counter({w: c for w, c in counts.items() if c})
    for w, c in counts.items():
        if counts.get(-w, 0) != c:
            raise CharacterError(f"weight multiset is not symmetric at weight {w}")
    out = {}
    for k in range(max(counts, default=-1) + 1):
        mult = counts[k] - counts.get(k + 2, 0)
        if mult < 0 and genuine:
            raise CharacterError(f"negative multiplicity {mult} for s{k}")
        if mult:
            out[k] = mult
    return Character(out)
