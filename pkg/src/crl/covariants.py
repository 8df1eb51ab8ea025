"""Covariants of the generic binary form and transvectants between them.

The generic form is ``F = sum_j binom(d, j) a_j x^j y^(d-j)``.  The r-th
transvectant is computed by the Omega process,

    (P, Q)^r = (q1-r)!(q2-r)!/(q1! q2!) * sum_i (-1)^i binom(r, i)
               * d^r P / dx^(r-i) dy^i * d^r Q / dx^i dy^(r-i),

whose scalar agrees with the symbolic-method definition
``(a1 b2 - a2 b1)^r (a.x)^(q1-r) (b.x)^(q2-r)``.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from crl.ideal_la.kernel import build_parameterization
from crl.ideal_la.linalg import nullspace
from crl.partitions import Partition, parse_partition
from crl.polyring import MultiPoly


class CovariantError(ValueError):
    """Type mismatch, out-of-range transvectant, or unknown covariant name."""


def form_vars(d: int) -> tuple[str, ...]:
    return tuple(f"a{j}" for j in range(d + 1)) + ("x", "y")


@dataclass(frozen=True)
class CovariantExpr:
    """Bihomogeneous polynomial of degree ``p`` in the a's and order ``q`` in x, y."""

    d: int
    p: int
    q: int
    body: MultiPoly
    name: str = ""

    def __post_init__(self):
        body = self.body.with_vars(form_vars(self.d))
        object.__setattr__(self, "body", body)
        if body.is_zero():
            return
        avars = form_vars(self.d)[:-2]
        if body.degree_in(avars) != {self.p}:
            raise CovariantError(f"body is not of degree {self.p} in the coefficients")
        if body.degree_in(("x", "y")) != {self.q}:
            raise CovariantError(f"body is not of order {self.q} in x, y")

    @property
    def type(self) -> tuple[int, int]:
        return (self.p, self.q)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def _same_base(self, other: "CovariantExpr") -> None:
        if self.d != other.d:
            raise CovariantError(f"base degrees differ: {self.d} vs {other.d}")

    def __add__(self, other: "CovariantExpr") -> "CovariantExpr":
        self._same_base(other)
        if self.type != other.type:
            raise CovariantError(f"cannot add types {self.type} and {other.type}")
        return CovariantExpr(self.d, self.p, self.q, self.body + other.body,
                             f"{self.name} + {other.name}")

    def __neg__(self) -> "CovariantExpr":
        return CovariantExpr(self.d, self.p, self.q, -self.body, f"-{self.name}")

    def __sub__(self, other: "CovariantExpr") -> "CovariantExpr":
        return self + (-other)

    def __mul__(self, other) -> "CovariantExpr":
        if isinstance(other, CovariantExpr):
            self._same_base(other)
            return CovariantExpr(self.d, self.p + other.p, self.q + other.q,
                                 self.body * other.body, f"{self.name}*{other.name}")
        return CovariantExpr(self.d, self.p, self.q, self.body * other, f"{other}*{self.name}")

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CovariantExpr":
        if not isinstance(k, int) or k < 0:
            raise CovariantError("covariant powers need a nonnegative integer")
        return CovariantExpr(self.d, self.p * k, self.q * k, self.body**k, f"{self.name}^{k}")

    def named(self, name: str) -> "CovariantExpr":
        return CovariantExpr(self.d, self.p, self.q, self.body, name)

    def coefficients(self) -> list[MultiPoly]:
        """``phi_k`` with ``body = sum_k phi_k x^k y^(q-k)``, as polynomials in the a's."""
        avars = form_vars(self.d)[:-2]
        return [self.body.coefficient(x=k, y=self.q - k).with_vars(avars)
                for k in range(self.q + 1)]

    def to_json(self) -> dict:
        return {"name": self.name, "d": self.d, "type": [self.p, self.q],
                "terms": len(self.body.terms)}


def generic_form(d: int) -> CovariantExpr:
    names = form_vars(d)
    X, Y = MultiPoly.var("x", names), MultiPoly.var("y", names)
    body = MultiPoly.const(0, names)
    for j in range(d + 1):
        body = body + MultiPoly.var(f"a{j}", names) * (math.comb(d, j) * X**j * Y**(d - j))
    return CovariantExpr(d, 1, d, body, "F")


def transvectant(phi1: CovariantExpr, phi2: CovariantExpr, r: int) -> CovariantExpr:
    phi1._same_base(phi2)
    q1, q2 = phi1.q, phi2.q
    if not isinstance(r, int) or r < 1 or r > min(q1, q2):
        raise CovariantError(f"transvectant index {r} outside 1..{min(q1, q2)}")
    names = form_vars(phi1.d)
    total = MultiPoly.const(0, names)
    for i in range(r + 1):
        left = phi1.body.diff("x", r - i).diff("y", i)
        right = phi2.body.diff("x", i).diff("y", r - i)
        term = left * right * math.comb(r, i)
        total = total + term if i % 2 == 0 else total - term
    scale = Fraction(math.factorial(q1 - r) * math.factorial(q2 - r),
                     math.factorial(q1) * math.factorial(q2))
    out = CovariantExpr(phi1.d, phi1.p + phi2.p, q1 + q2 - 2 * r, total * scale,
                        f"({phi1.name},{phi2.name})^{r}")
    return out


@lru_cache(maxsize=None)
def named_covariants(d: int) -> dict[str, CovariantExpr]:
    """``F``, ``H = (F,F)^2``, ``i = (F,F)^4``, ``A = (i,i)^2``, ``FF6 = (F,F)^6`` where defined."""
    F = generic_form(d)
    out = {"F": F}
    if d >= 2:
        out["H"] = transvectant(F, F, 2).named("H")
    if d >= 4:
        out["i"] = transvectant(F, F, 4).named("i")
    if d >= 5:
        out["A"] = transvectant(out["i"], out["i"], 2).named("A")
    if d >= 6:
        out["FF6"] = transvectant(F, F, 6).named("(F,F)^6")
    return out


# -- expression grammar ----------------------------------------------------------


def parse_covariant(text: str, d: int) -> CovariantExpr:
    """Evaluate names, integers, ``+ - * ^`` and ``T(a, b, r)`` over the generic d-ic.

    Classical notation is accepted too: ``(F,i)`` is the first transvectant
    and ``(F,i)^2`` the second.
    """
    names = named_covariants(d)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise CovariantError(f"cannot parse {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise CovariantError(f"unknown covariant {node.id!r} for d={d}")
            return names[node.id]
        if isinstance(node, ast.Tuple) and len(node.elts) == 2:
            return transvectant(ev(node.elts[0]), ev(node.elts[1]), 1)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and node.func.id == "T" and len(node.args) == 3:
            r = ev(node.args[2])
            if not isinstance(r, int):
                raise CovariantError("transvectant index must be an integer")
            return transvectant(ev(node.args[0]), ev(node.args[1]), r)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow) and isinstance(node.left, ast.Tuple):
                a, b = node.left.elts
                return transvectant(ev(a), ev(b), ev(node.right))
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Pow):
                return left**right
        raise CovariantError(f"unsupported syntax in {text!r}")

    out = ev(tree)
    if not isinstance(out, CovariantExpr):
        raise CovariantError(f"{text!r} is a number, not a covariant")
    return out.named(text)


# -- restriction to a coincident root locus ----------------------------------------


@lru_cache(maxsize=None)
def _locus_images(lam: Partition) -> dict[str, MultiPoly]:
    """``a_j`` scaled images on the locus: ``L / binom(d, j) * q_j`` with a common ``L``.

    The common factor multiplies a degree-p covariant by ``L^p``, which is
    harmless for vanishing tests and for comparing covariants of one type.
    """
    smap = build_parameterization(lam)
    d = lam.d
    L = math.lcm(*(math.comb(d, j) for j in range(d + 1)))
    return {f"a{j}": q * (L // math.comb(d, j)) for j, q in enumerate(smap.images)}


def restrict_to_locus(C: CovariantExpr, lam: Partition) -> MultiPoly:
    """``C`` evaluated on the generic parameterized member of the locus (up to ``L^p``)."""
    if C.d != lam.d:
        raise CovariantError(f"covariant is over d={C.d}, partition has d={lam.d}")
    return C.body.substitute(_locus_images(lam))


def vanishes_on_locus(C: CovariantExpr, lam: Partition) -> bool:
    """Exact identity test: does ``C`` vanish on every form ``prod G_r^r``?"""
    return restrict_to_locus(C, lam).is_zero()


def _primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    v = [x // g for x in v] if g else list(v)
    first = next((x for x in v if x), 0)
    return [-x for x in v] if first < 0 else v


def calibrate_combination(basis: Sequence[CovariantExpr], lam: Partition) -> list[list[int]]:
    """Integer coefficient vectors ``c`` with ``sum c_i basis_i`` vanishing on the locus."""
    if not basis:
        raise CovariantError("calibration needs a nonempty basis")
    types = {(b.d, b.type) for b in basis}
    if len(types) != 1:
        raise CovariantError(f"basis elements have different types: {sorted(types)}")
    restricted = [restrict_to_locus(b, lam) for b in basis]
    monos = sorted({m for r in restricted for m in r.terms})
    rows = []
    for mono in monos:
        row = [Fraction(r.terms.get(mono, 0)) for r in restricted]
        den = math.lcm(*(c.denominator for c in row))
        rows.append([int(c * den) for c in row])
    return [_primitive(v) for v in nullspace(rows, len(basis))]


# -- the table of minimal generators for two-part partitions, 4 <= d <= 6 -------------

_TABLE: dict[tuple[int, tuple[int, ...]], dict[int, list[str]]] = {
    (4, (3, 1)): {2: ["i"], 3: ["(F,H)^4"]},
    (4, (2, 2)): {3: ["(F,H)"]},
    (5, (4, 1)): {2: ["i"]},
    (5, (3, 2)): {4: ["25*H^2 - 6*i*F^2", "5*i*H + 6*F*(i,F)^2",
                      "2*i^2 + 15*(i,H)^2", "A"]},
    (6, (5, 1)): {2: ["i", "FF6"]},
    (6, (4, 2)): {2: ["FF6"], 3: ["(F,i)^4"],
                  4: ["27*H^2 - 8*i*F^2", "3*i*H + 4*F*(F,i)^2", "(i,i)^4"]},
    (6, (3, 3)): {3: ["(F,H)", "(F,i)", "8*F*FF6 - 75*(F,i)^2"]},
}


def table_entries() -> list[tuple[int, Partition]]:
    return [(d, parse_partition(list(parts))) for d, parts in _TABLE]


def criterion_table(d: int, lam: Partition) -> list[tuple[int, list[CovariantExpr]]]:
    """Covariants spanning the minimal generators of ``I_X`` degree by degree."""
    key = (d, tuple(lam.parts))
    if key not in _TABLE:
        raise CovariantError(f"(d={d}, {lam}) is not in the covariant table")
    return [(m, [parse_covariant(t, d) for t in texts])
            for m, texts in sorted(_TABLE[key].items())]
