"""Buchberger elimination over Q as a cross-check of the degreewise kernels.

Works on the affine chart ``a_0 = 1`` with every ``G_r`` monic in ``y``:
the graph ideal ``(a_j - q_j(u))`` is eliminated with a block order
(parameters > a-variables, grevlex inside each block) and the result is
homogenized with ``a_0``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from crl.ideal_la.linalg import rank_exact
from crl.partitions import Partition
from crl.polyring import MultiPoly

Mono = tuple[int, ...]
Poly = dict  # Mono -> Fraction


class GroebnerBudgetExceeded(RuntimeError):
    """Buchberger did not finish within the time budget."""


def grevlex_key(m: Mono) -> tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


def block_order(split: int) -> Callable[[Mono], tuple]:
    """Elimination order: grevlex on ``m[:split]``, ties broken by grevlex on the rest."""
    def key(m: Mono) -> tuple:
        return (grevlex_key(m[:split]), grevlex_key(m[split:]))
    return key


def _lead(f: Poly, key) -> Mono:
    return max(f, key=key)


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(f: Poly, key) -> Poly:
    lc = f[_lead(f, key)]
    return {m: c / lc for m, c in f.items()}


def _sub_mul(f: Poly, c: Fraction, shift: Mono, g: Poly) -> Poly:
    out = dict(f)
    for m, v in g.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        s = out.get(mm, 0) - c * v
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


def _reduce(f: Poly, basis: list[tuple[Mono, Poly]], key) -> Poly:
    """Full reduction of ``f`` modulo monic basis elements ``(lead, poly)``."""
    rem: Poly = {}
    f = dict(f)
    while f:
        lm = _lead(f, key)
        c = f[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                f = _sub_mul(f, c, tuple(x - y for x, y in zip(lm, glm)), g)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def buchberger(gens: list[Poly], key, timeout_s: float = 120.0) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    start = time.monotonic()
    basis: list[tuple[Mono, Poly]] = []
    for f in gens:
        if f:
            f = _monic(f, key)
            basis.append((_lead(f, key), f))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        if time.monotonic() - start > timeout_s:
            raise GroebnerBudgetExceeded(f"Buchberger exceeded {timeout_s}s")
        # normal strategy: smallest lcm first
        pairs.sort(key=lambda ij: key(_lcm(basis[ij[0]][0], basis[ij[1]][0])))
        i, j = pairs.pop(0)
        li, fi = basis[i]
        lj, fj = basis[j]
        lcm = _lcm(li, lj)
        if all(min(x, y) == 0 for x, y in zip(li, lj)):
            continue  # coprime leading monomials
        if any(k not in (i, j) and _divides(basis[k][0], lcm)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue  # chain criterion
        s = _sub_mul(_shift(fi, tuple(x - y for x, y in zip(lcm, li))), Fraction(1),
                     tuple(x - y for x, y in zip(lcm, lj)), fj)
        r = _reduce(s, basis, key)
        if r:
            r = _monic(r, key)
            basis.append((_lead(r, key), r))
            k = len(basis) - 1
            pairs.extend((i2, k) for i2 in range(k))
    return _reduced(basis, key)


def _shift(f: Poly, s: Mono) -> Poly:
    return {tuple(x + y for x, y in zip(m, s)): c for m, c in f.items()}


def _reduced(basis: list[tuple[Mono, Poly]], key) -> list[Poly]:
    # drop elements whose lead is divisible by another lead, then interreduce
    minimal = []
    for k, (lm, f) in enumerate(basis):
        if any(_divides(basis[i][0], lm) and (basis[i][0] != lm or i < k)
               for i in range(len(basis)) if i != k):
            continue
        minimal.append((lm, f))
    out = []
    for k, (lm, f) in enumerate(minimal):
        others = [b for i, b in enumerate(minimal) if i != k]
        out.append(_reduce(f, others, key))
    return sorted((_monic(f, key) for f in out), key=lambda f: key(_lead(f, key)))


@dataclass
class EliminationResult:
    lam: Partition
    generators: list[MultiPoly]  # homogeneous in a0..ad
    affine_basis: list[MultiPoly]
    seconds: float

    def degrees(self) -> list[int]:
        return sorted(g.total_degree() for g in self.generators)

    def dim_in_degree(self, m: int) -> int:
        return ideal_dim_in_degree(self.generators, self.lam.d, m)


def affine_parameterization(lam: Partition) -> tuple[tuple[str, ...], list[MultiPoly]]:
    """Parameters ``u{r}_{k}`` (k >= 1) and images ``q_1..q_d`` on the chart a_0 = 1."""
    names = []
    for r, e in lam.exps:
        names.extend(f"u{r}_{k}" for k in range(1, e + 1))
    allv = tuple(names) + ("x", "y")
    X, Y = MultiPoly.var("x", allv), MultiPoly.var("y", allv)
    F = MultiPoly.const(1, allv)
    for r, e in lam.exps:
        G = Y**e
        for k in range(1, e + 1):
            G = G + MultiPoly.var(f"u{r}_{k}", allv) * X**k * Y**(e - k)
        F = F * G**r
    d = lam.d
    q = [F.coefficient(x=j, y=d - j).with_vars(tuple(names)) for j in range(d + 1)]
    if q[0] != 1:
        raise AssertionError("monic chart must give a_0 = 1")
    return tuple(names), q[1:]


def groebner_eliminate(lam: Partition, timeout_s: float = 120.0) -> EliminationResult:
    """Eliminate the parameters from ``(a_j - q_j)`` and homogenize with ``a_0``."""
    start = time.monotonic()
    d = lam.d
    params, q = affine_parameterization(lam)
    avars = tuple(f"a{j}" for j in range(1, d + 1))
    allv = params + avars
    split = len(params)
    gens = []
    for j, qj in enumerate(q, start=1):
        f = MultiPoly.var(f"a{j}", allv) - qj.with_vars(allv)
        gens.append({m: Fraction(c) for m, c in f.terms.items()})
    key = block_order(split)
    gb = buchberger(gens, key, timeout_s)
    elim = [f for f in gb if all(not any(m[:split]) for m in f)]
    affine = [MultiPoly({m[split:]: c for m, c in f.items()}, avars) for f in elim]
    homog = [_homogenize(p, d) for p in affine]
    return EliminationResult(lam, homog, affine, time.monotonic() - start)


def _homogenize(p: MultiPoly, d: int) -> MultiPoly:
    deg = p.total_degree()
    names = tuple(f"a{j}" for j in range(d + 1))
    out = {}
    for m, c in p.terms.items():
        out[(deg - sum(m),) + m] = c
    h = MultiPoly(out, names)
    # clear denominators for readability
    den = 1
    for c in h.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    return h * den


def ideal_dim_in_degree(gens: list[MultiPoly], d: int, m: int) -> int:
    """Dimension of the degree-m part of the ideal spanned by homogeneous ``gens``."""
    from itertools import combinations_with_replacement

    names = tuple(f"a{j}" for j in range(d + 1))
    cols = [tuple(sum(1 for j in c if j == i) for i in range(d + 1))
            for c in combinations_with_replacement(range(d + 1), m)]
    index = {c: k for k, c in enumerate(cols)}
    rows = []
    for g in gens:
        g = g.with_vars(names)
        k = g.total_degree()
        if k > m:
            continue
        den = 1
        for c in g.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        for mult in combinations_with_replacement(range(d + 1), m - k):
            shift = [0] * (d + 1)
            for j in mult:
                shift[j] += 1
            row = [0] * len(cols)
            for mono, c in g.terms.items():
                mm = tuple(x + y for x, y in zip(mono, shift))
                row[index[mm]] = int(c * den)
            rows.append(row)
    return rank_exact(rows, len(cols)) if rows else 0
