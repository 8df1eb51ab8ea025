"""Graded pieces of the ideal of a coincident root locus by exact linear algebra.

The degree-m piece ``(I_X)_m`` is the kernel of the map sending a monomial in
``a_0..a_d`` to the polynomial obtained by substituting ``a_j = q_j(g)``, where
``q_j`` is the coefficient of ``x^j y^(d-j)`` in ``prod_r G_r^r``.  The map
preserves torus weight, so the kernel is computed one weight block at a time
and the SL2 character falls out of the block dimensions.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement

from crl.charring import Character, CharacterError, char_from_weights
from crl.ideal_la.linalg import DEFAULT_PRIMES, certified_nullspace, rank_exact
from crl.partitions import Partition
from crl.polyring import MultiPoly


class BudgetExceeded(RuntimeError):
    """The requested computation exceeds the configured size budget."""


class EquivarianceError(RuntimeError):
    """Internal invariant violation: weight data is not that of an SL2 module."""


@dataclass(frozen=True)
class LAConfig:
    max_ambient_dim: int = 5000
    modular_primes: tuple[int, ...] = DEFAULT_PRIMES
    groebner_timeout_s: float = 120.0
    jobs: int = 1

    @classmethod
    def from_env(cls, **overrides) -> "LAConfig":
        env = os.environ.get("CRL_MAX_DIM")
        if env and "max_ambient_dim" not in overrides:
            overrides["max_ambient_dim"] = int(env)
        return cls(**overrides)


DEFAULT_CONFIG = LAConfig()


@dataclass(frozen=True)
class SubstitutionMap:
    """Images ``q_j`` of the coordinates ``a_j`` under ``(G_r) -> prod G_r^r``."""

    lam: Partition
    param_vars: tuple[str, ...]
    images: tuple[MultiPoly, ...]
    param_weights: dict[str, int] = field(hash=False)
    blocks: dict[int, tuple[str, ...]] = field(hash=False)

    @property
    def d(self) -> int:
        return self.lam.d

    def a_weight(self, j: int) -> int:
        return 2 * j - self.d


def param_name(r: int, k: int) -> str:
    return f"g{r}_{k}"


def build_parameterization(lam: Partition) -> SubstitutionMap:
    """Expand ``prod_r G_r(x, y)^r`` with ``G_r = sum_k g_{r,k} x^k y^(e_r - k)``."""
    names: list[str] = []
    blocks: dict[int, tuple[str, ...]] = {}
    weights: dict[str, int] = {}
    for r, e in lam.exps:
        blk = tuple(param_name(r, k) for k in range(e + 1))
        blocks[r] = blk
        names.extend(blk)
        for k, v in enumerate(blk):
            weights[v] = 2 * k - e
    allv = tuple(names) + ("x", "y")
    X, Y = MultiPoly.var("x", allv), MultiPoly.var("y", allv)
    F = MultiPoly.const(1, allv)
    for r, e in lam.exps:
        G = MultiPoly.const(0, allv)
        for k, v in enumerate(blocks[r]):
            G = G + MultiPoly.var(v, allv) * X**k * Y**(e - k)
        F = F * G**r
    d = lam.d
    images = tuple(F.coefficient(x=j, y=d - j).with_vars(tuple(names)) for j in range(d + 1))
    smap = SubstitutionMap(lam, tuple(names), images, weights, blocks)
    _check_parameterization(smap)
    return smap


def _check_parameterization(smap: SubstitutionMap) -> None:
    for j, q in enumerate(smap.images):
        for r, blk in smap.blocks.items():
            if q.degree_in(blk) != {r}:
                raise EquivarianceError(f"q_{j} is not of degree {r} in block {r}")
        idx = [smap.param_weights[v] for v in q.vars]
        ws = {sum(w * e for w, e in zip(idx, mono)) for mono in q.terms}
        if ws != {smap.a_weight(j)}:
            raise EquivarianceError(f"q_{j} is not weight-homogeneous of weight {smap.a_weight(j)}")


# -- monomials in a_0..a_d ---------------------------------------------------------


def a_monomials(d: int, m: int) -> list[tuple[int, ...]]:
    """Degree-m monomials as sorted index tuples ``(j_1 <= ... <= j_m)``."""
    return list(combinations_with_replacement(range(d + 1), m))


def mono_weight(mono: tuple[int, ...], d: int) -> int:
    return sum(2 * j - d for j in mono)


def mono_exponents(mono: tuple[int, ...], d: int) -> tuple[int, ...]:
    out = [0] * (d + 1)
    for j in mono:
        out[j] += 1
    return tuple(out)


def a_vars(d: int) -> tuple[str, ...]:
    return tuple(f"a{j}" for j in range(d + 1))


class _PackedImages:
    """Images of a-monomials as dicts keyed by bit-packed parameter exponents."""

    def __init__(self, smap: SubstitutionMap, max_degree: int):
        nv = len(smap.param_vars)
        top = max_degree * max(smap.lam.sizes) + 1
        self.bits = max(top.bit_length(), 1)
        shifts = [self.bits * i for i in range(nv)]
        self.q = []
        for q in smap.images:
            packed = []
            for mono, c in q.terms.items():
                key = sum(e << s for e, s in zip(mono, shifts))
                packed.append((key, int(c)))
            self.q.append(packed)
        self.cache: dict[tuple[int, ...], dict[int, int]] = {(): {0: 1}}

    def image(self, mono: tuple[int, ...]) -> dict[int, int]:
        got = self.cache.get(mono)
        if got is not None:
            return got
        base = self.image(mono[:-1])
        out: dict[int, int] = {}
        get = out.get
        for qk, qc in self.q[mono[-1]]:
            for bk, bc in base.items():
                k = bk + qk
                out[k] = get(k, 0) + bc * qc
        out = {k: v for k, v in out.items() if v}
        self.cache[mono] = out
        return out


def _block_kernel(args):
    cols, images, primes = args
    rowkeys = sorted({k for img in images for k in img})
    index = {k: i for i, k in enumerate(rowkeys)}
    ncols = len(cols)
    rows = [[0] * ncols for _ in rowkeys]
    for c, img in enumerate(images):
        for k, v in img.items():
            rows[index[k]][c] = v
    return certified_nullspace(rows, ncols, primes)


@dataclass
class GradedPieceReport:
    lam: Partition
    m: int
    dim_ideal: int
    character: Character
    dim_ambient: int
    block_dims: dict[int, int]
    certified: bool
    basis: list[dict[tuple[int, ...], int]] = field(repr=False, default_factory=list)
    minimal_generators: int | None = None
    method: str = "linear-algebra"
    block_info: dict[int, dict] = field(repr=False, default_factory=dict)

    @property
    def hilbert_value(self) -> int:
        return self.dim_ambient - self.dim_ideal

    def basis_polys(self) -> list[MultiPoly]:
        names = a_vars(self.lam.d)
        return [MultiPoly(v, names) for v in self.basis]

    def to_json(self, include_basis: bool = False) -> dict:
        out = {
            "partition": self.lam.to_json(),
            "m": self.m,
            "dim_ideal": self.dim_ideal,
            "dim_ambient": self.dim_ambient,
            "hilbert_value": self.hilbert_value,
            "character": self.character.to_json(),
            "block_dims": {str(w): self.block_dims[w] for w in sorted(self.block_dims)},
            "certified": self.certified,
            "method": self.method,
        }
        if self.minimal_generators is not None:
            out["minimal_generators"] = self.minimal_generators
        if include_basis:
            out["basis"] = [str(p) for p in self.basis_polys()]
        return out


def ambient_dim(d: int, m: int) -> int:
    return math.comb(d + m, m)


def _check_budget(lam: Partition, m: int, config: LAConfig) -> None:
    amb = ambient_dim(lam.d, m)
    if amb > config.max_ambient_dim:
        raise BudgetExceeded(
            f"degree-{m} piece for {lam} has ambient dimension {amb} > "
            f"{config.max_ambient_dim}; raise max_ambient_dim (CRL_MAX_DIM) to proceed")


@lru_cache(maxsize=64)
def _kernel_cached(lam: Partition, m: int, primes: tuple[int, ...], jobs: int):
    d = lam.d
    smap = build_parameterization(lam)
    packed = _PackedImages(smap, m)
    by_weight: dict[int, list[tuple[int, ...]]] = {}
    for mono in a_monomials(d, m):
        by_weight.setdefault(mono_weight(mono, d), []).append(mono)
    weights = sorted(by_weight)
    tasks = [(by_weight[w], [packed.image(mono) for mono in by_weight[w]], primes)
             for w in weights]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_block_kernel, tasks))
    else:
        results = [_block_kernel(t) for t in tasks]
    basis: list[dict[tuple[int, ...], int]] = []
    block_dims: dict[int, int] = {}
    block_info: dict[int, dict] = {}
    certified = True
    for w, (vecs, info) in zip(weights, results):
        cols = by_weight[w]
        block_dims[w] = len(vecs)
        block_info[w] = info
        certified = certified and info["certified"]
        for v in vecs:
            basis.append({mono_exponents(cols[k], d): x for k, x in enumerate(v) if x})
    return block_dims, basis, certified, block_info


def graded_piece_kernel(lam: Partition, m: int,
                        config: LAConfig = DEFAULT_CONFIG) -> GradedPieceReport:
    """Kernel of the substitution map in degree ``m``, with its character."""
    if m < 0:
        raise ValueError("degree m must be >= 0")
    _check_budget(lam, m, config)
    block_dims, basis, certified, info = _kernel_cached(
        lam, m, tuple(config.modular_primes), config.jobs)
    weights = Counter({w: k for w, k in block_dims.items() if k})
    try:
        ch = char_from_weights(weights)
    except CharacterError as exc:
        raise EquivarianceError(f"kernel weights for {lam}, m={m} are not an SL2 module: {exc}")
    dim = sum(block_dims.values())
    if ch.dim() != dim:
        raise EquivarianceError("character dimension disagrees with kernel dimension")
    return GradedPieceReport(lam, m, dim, ch, ambient_dim(lam.d, m), dict(block_dims),
                             certified, list(basis), block_info=info)


def kernel_character(lam: Partition, m: int, config: LAConfig = DEFAULT_CONFIG) -> Character:
    return graded_piece_kernel(lam, m, config).character


def hilbert_function(lam: Partition, m: int, config: LAConfig = DEFAULT_CONFIG) -> int:
    return graded_piece_kernel(lam, m, config).hilbert_value


def _multiply_by_linear(basis: list[dict[tuple[int, ...], int]], d: int):
    """All products ``a_j * v`` as exponent-keyed dicts."""
    out = []
    for v in basis:
        for j in range(d + 1):
            prod = {}
            for mono, c in v.items():
                e = list(mono)
                e[j] += 1
                prod[tuple(e)] = c
            out.append(prod)
    return out


def span_rank(vectors: list[dict[tuple[int, ...], int]], d: int) -> int:
    """Exact rank of sparse vectors over monomials, split by torus weight."""
    by_w: dict[int, list[dict]] = {}
    for v in vectors:
        if not v:
            continue
        mono = next(iter(v))
        w = sum((2 * j - d) * e for j, e in enumerate(mono))
        by_w.setdefault(w, []).append(v)
    total = 0
    for vecs in by_w.values():
        cols = sorted({k for v in vecs for k in v})
        idx = {k: i for i, k in enumerate(cols)}
        rows = []
        for v in vecs:
            row = [0] * len(cols)
            for k, c in v.items():
                row[idx[k]] = c
            rows.append(row)
        total += rank_exact(rows, len(cols))
    return total


def minimal_generators_by_degree(lam: Partition, m_max: int,
                                 config: LAConfig = DEFAULT_CONFIG) -> dict[int, int]:
    """Number of new minimal generators in each degree ``1..m_max``."""
    out: dict[int, int] = {}
    prev: list[dict[tuple[int, ...], int]] = []
    for m in range(1, m_max + 1):
        rep = graded_piece_kernel(lam, m, config)
        inherited = span_rank(_multiply_by_linear(prev, lam.d), lam.d) if prev else 0
        out[m] = rep.dim_ideal - inherited
        prev = rep.basis
    return out


def generator_characters(lam: Partition, m_max: int,
                         config: LAConfig = DEFAULT_CONFIG) -> dict[int, Character]:
    """Characters of the new generators in each degree, from weight-block ranks.

    The inherited part ``(a) * I_{m-1}`` is an SL2 submodule of ``I_m``, so
    the quotient's character is the difference of characters, computed from
    per-weight ranks.
    """
    out: dict[int, Character] = {}
    prev: list[dict[tuple[int, ...], int]] = []
    d = lam.d
    for m in range(1, m_max + 1):
        rep = graded_piece_kernel(lam, m, config)
        inherited_w: Counter = Counter()
        if prev:
            prods = _multiply_by_linear(prev, d)
            by_w: dict[int, list] = {}
            for v in prods:
                mono = next(iter(v))
                w = sum((2 * j - d) * e for j, e in enumerate(mono))
                by_w.setdefault(w, []).append(v)
            for w, vecs in by_w.items():
                inherited_w[w] = span_rank(vecs, d)
        new_w = Counter({w: rep.block_dims.get(w, 0) - inherited_w.get(w, 0)
                         for w in set(rep.block_dims) | set(inherited_w)})
        out[m] = char_from_weights(+new_w) if +new_w else Character()
        prev = rep.basis
    return out
