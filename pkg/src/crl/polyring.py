"""Exact multivariate polynomials over Q, binary forms, resultants.

``MultiPoly`` is a sparse map from exponent tuples (over an ordered tuple of
variable names) to exact coefficients.  Coefficients are ``int`` or
``Fraction``; no floats are accepted anywhere.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Exps = tuple[int, ...]


class PolyError(ValueError):
    """Bad polynomial input: unknown variable, malformed text, inexact number."""


def _coeff(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _coeff(Fraction(c.numerator, c.denominator))
    raise PolyError(f"inexact or unsupported coefficient {c!r}")


class MultiPoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[Exps, Coeff] | None = None,
                 vars: Sequence[str] = ()):
        self.vars: tuple[str, ...] = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise PolyError(f"duplicate variable names in {self.vars}")
        nv = len(self.vars)
        clean: dict[Exps, Coeff] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nv:
                raise PolyError("exponent length does not match variable count")
            c = _coeff(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exps, Coeff], vars: tuple[str, ...]) -> "MultiPoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c, vars: Sequence[str] = ()) -> "MultiPoly":
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            raise PolyError(f"unknown variable {name!r}")
        expo = tuple(1 if v == name else 0 for v in vars)
        return cls._raw({expo: 1}, vars)

    @classmethod
    def gens(cls, *names: str) -> tuple["MultiPoly", ...]:
        return tuple(cls.var(n, names) for n in names)

    # -- variable bookkeeping -------------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over ``vars``; every variable actually used must be present."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        idx = []
        for k, v in enumerate(self.vars):
            if v in pos:
                idx.append((k, pos[v]))
            elif any(m[k] for m in self.terms):
                raise PolyError(f"variable {v!r} is used but missing from {vars}")
        out = {}
        for mono, c in self.terms.items():
            new = [0] * len(vars)
            for k, j in idx:
                new[j] = mono[k]
            out[tuple(new)] = c
        return MultiPoly._raw(out, vars)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for k, v in enumerate(self.vars)
                     if any(m[k] for m in self.terms))

    def _align(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.vars == other.vars:
            return self, other
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(merged), other.with_vars(merged)

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(other, self.vars)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        a, b = self._align(self._lift(other))
        out = dict(a.terms)
        for mono, c in b.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return MultiPoly._raw(out, a.vars)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({m: -c for m, c in self.terms.items()}, self.vars)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) + (-self)

    def scale(self, c) -> "MultiPoly":
        c = _coeff(c)
        if not c:
            return MultiPoly({}, self.vars)
        return MultiPoly._raw({m: _coeff(v * c) for m, v in self.terms.items()}, self.vars)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out: dict[Exps, Coeff] = {}
        get = out.get
        for m2, c2 in b.terms.items():
            for m1, c1 in a.terms.items():
                mono = tuple(x + y for x, y in zip(m1, m2))
                out[mono] = get(mono, 0) + c1 * c2
        return MultiPoly._raw({m: _coeff(c) for m, c in out.items() if c}, a.vars)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            raise PolyError("polynomial division is not supported")
        return self.scale(Fraction(1) / _coeff(other))

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a nonnegative integer")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------------

    def _named(self) -> frozenset:
        return frozenset(
            (tuple((v, e) for v, e in zip(self.vars, m) if e), c)
            for m, c in self.terms.items()
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                other = MultiPoly.const(other)
            else:
                return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        return self._named() == other._named()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._named())
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection -----------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, names: Iterable[str]) -> set[int]:
        """Set of degrees of the terms in the variable block ``names``."""
        idx = [self.vars.index(v) for v in names if v in self.vars]
        return {sum(m[k] for k in idx) for m in self.terms}

    def is_homogeneous_in(self, names: Iterable[str]) -> bool:
        return len(self.degree_in(list(names))) <= 1

    def coefficient(self, **powers: int) -> "MultiPoly":
        """Coefficient of the given monomial in the named variables (a polynomial in the rest)."""
        for v in powers:
            if v not in self.vars:
                raise PolyError(f"unknown variable {v!r}")
        idx = {self.vars.index(v): e for v, e in powers.items()}
        out = {}
        for m, c in self.terms.items():
            if all(m[k] == e for k, e in idx.items()):
                mm = tuple(0 if k in idx else x for k, x in enumerate(m))
                out[mm] = c
        return MultiPoly._raw(out, self.vars)

    def constant(self) -> Coeff:
        return self.terms.get((0,) * len(self.vars), 0)

    def sorted_terms(self) -> list[tuple[Exps, Coeff]]:
        """Terms in degree-lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    # -- calculus and substitution --------------------------------------------

    def diff(self, name: str, k: int = 1) -> "MultiPoly":
        if name not in self.vars:
            raise PolyError(f"unknown variable {name!r}")
        i = self.vars.index(name)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e < k:
                continue
            mm = m[:i] + (e - k,) + m[i + 1:]
            out[mm] = c * math.perm(e, k)
        return MultiPoly._raw(out, self.vars)

    def substitute(self, mapping: Mapping[str, "MultiPoly | int | Fraction"]) -> "MultiPoly":
        """Ring homomorphism sending each mapped variable to its image.

        Unmapped variables are kept.  Powers of the images are cached, so
        substituting into a large polynomial costs one product per term.
        """
        for v in mapping:
            if v not in self.vars:
                raise PolyError(f"unknown variable {v!r}")
        keep = [v for v in self.vars if v not in mapping]
        images = {v: (p if isinstance(p, MultiPoly) else MultiPoly.const(p))
                  for v, p in mapping.items()}
        target = tuple(keep)
        for p in images.values():
            target += tuple(v for v in p.vars if v not in target)
        images = {v: p.with_vars(target) for v, p in images.items()}
        keep_idx = [(self.vars.index(v), target.index(v)) for v in keep]
        sub_idx = [(self.vars.index(v), v) for v in mapping]
        powers: dict[tuple[str, int], MultiPoly] = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] if e == 1 else power(v, e - 1) * images[v]
            return powers[key]

        # group terms by their substituted part to share products
        groups: dict[Exps, dict[Exps, Coeff]] = {}
        for m, c in self.terms.items():
            sub_key = tuple(m[k] for k, _ in sub_idx)
            rest = [0] * len(target)
            for k, j in keep_idx:
                rest[j] = m[k]
            groups.setdefault(sub_key, {})[tuple(rest)] = c
        acc: dict[Exps, Coeff] = {}
        one = MultiPoly.const(1, target)
        for sub_key, rest_terms in groups.items():
            img = one
            for (_, v), e in zip(sub_idx, sub_key):
                if e:
                    img = img * power(v, e)
            for rm, rc in rest_terms.items():
                for im, ic in img.terms.items():
                    mono = tuple(x + y for x, y in zip(rm, im))
                    acc[mono] = acc.get(mono, 0) + rc * ic
        return MultiPoly._raw({m: _coeff(c) for m, c in acc.items() if c}, target)

    def evaluate(self, values: Mapping[str, Coeff]) -> "MultiPoly":
        return self.substitute(values)

    # -- text and json ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e]
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, vars={self.vars!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(m), str(c)] for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        return cls({tuple(m): Fraction(c) for m, c in data["terms"]}, data["vars"])


# -- text parser ----------------------------------------------------------------


def _eval_ast(node, lookup, text):
    if isinstance(node, ast.Expression):
        return _eval_ast(node.body, lookup, text)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) \
            and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name):
        return lookup(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_ast(node.operand, lookup, text)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left, lookup, text)
        right = _eval_ast(node.right, lookup, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if isinstance(right, MultiPoly):
                raise PolyError(f"division by a polynomial in {text!r}")
            if isinstance(left, MultiPoly):
                return left / right
            return Fraction(left) / right
        if isinstance(node.op, ast.Pow):
            if not isinstance(right, int) or right < 0:
                raise PolyError(f"exponent must be a nonnegative integer in {text!r}")
            return left**right
    raise PolyError(f"unsupported syntax in {text!r}")


def parse_poly(text: str, vars: Sequence[str] | None = None) -> MultiPoly:
    """Parse ``"3/2*x^2*y - a1*x*y^2"``.  Variables are collected in order of
    first appearance unless ``vars`` is given."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolyError(f"cannot parse {text!r}") from exc
    names = [n.id for n in ast.walk(tree) if isinstance(n, ast.Name)]
    if vars is None:
        order: list[str] = []
        for n in names:
            if n not in order:
                order.append(n)
        vars = tuple(order)
    else:
        vars = tuple(vars)
        for n in names:
            if n not in vars:
                raise PolyError(f"unknown variable {n!r}")
    result = _eval_ast(tree, lambda n: MultiPoly.var(n, vars), text)
    if not isinstance(result, MultiPoly):
        result = MultiPoly.const(result, vars)
    return result.with_vars(vars)


# -- binary forms -----------------------------------------------------------------


class BinaryForm:
    """A binary form of declared degree with polynomial coefficients.

    ``coeffs[k]`` multiplies ``x^k y^(q-k)`` (plain) or
    ``binom(q,k) x^k y^(q-k)`` (binomial).
    """

    PLAIN = "plain"
    BINOMIAL = "binomial"

    __slots__ = ("degree", "coeffs", "convention")

    def __init__(self, coeffs: Sequence, convention: str = PLAIN):
        if convention not in (self.PLAIN, self.BINOMIAL):
            raise PolyError(f"unknown convention {convention!r}")
        if not coeffs:
            raise PolyError("a binary form needs at least one coefficient")
        self.coeffs: tuple[MultiPoly, ...] = tuple(
            c if isinstance(c, MultiPoly) else MultiPoly.const(c) for c in coeffs
        )
        self.degree = len(self.coeffs) - 1
        self.convention = convention

    def plain_coeffs(self) -> tuple[MultiPoly, ...]:
        if self.convention == self.PLAIN:
            return self.coeffs
        q = self.degree
        return tuple(c * math.comb(q, k) for k, c in enumerate(self.coeffs))

    def to_plain(self) -> "BinaryForm":
        return BinaryForm(self.plain_coeffs(), self.PLAIN)

    def to_binomial(self) -> "BinaryForm":
        q = self.degree
        return BinaryForm(
            [c / math.comb(q, k) for k, c in enumerate(self.plain_coeffs())], self.BINOMIAL
        )

    def as_poly(self, x: str = "x", y: str = "y") -> MultiPoly:
        q = self.degree
        X, Y = MultiPoly.var(x, (x, y)), MultiPoly.var(y, (x, y))
        out = MultiPoly.const(0, (x, y))
        for k, c in enumerate(self.plain_coeffs()):
            out = out + c * X**k * Y**(q - k)
        return out

    @classmethod
    def from_poly(cls, poly: MultiPoly, degree: int, x: str = "x", y: str = "y") -> "BinaryForm":
        """Read off plain coefficients of a polynomial homogeneous of ``degree`` in x, y."""
        if poly.is_zero():
            return cls([0] * (degree + 1))
        missing = tuple(v for v in (x, y) if v not in poly.vars)
        poly = poly.with_vars(poly.vars + missing)
        if poly.degree_in([x, y]) != {degree}:
            raise PolyError(f"polynomial is not homogeneous of degree {degree} in {x},{y}")
        coeffs = []
        for k in range(degree + 1):
            coeffs.append(poly.coefficient(**{x: k, y: degree - k}))
        rest = [v for v in poly.vars if v not in (x, y)]
        return cls([c.with_vars(rest) for c in coeffs])

    def diff_x(self) -> "BinaryForm":
        pc = self.plain_coeffs()
        return BinaryForm([pc[k + 1] * (k + 1) for k in range(self.degree)])

    def diff_y(self) -> "BinaryForm":
        pc = self.plain_coeffs()
        q = self.degree
        return BinaryForm([pc[k] * (q - k) for k in range(self.degree)])


def _det(mat: list[list[MultiPoly]]) -> MultiPoly:
    """Determinant of a square polynomial matrix.

    Constant matrices go through rational elimination; otherwise cofactor
    expansion memoized on row subsets, which is fine for Sylvester sizes here.
    """
    n = len(mat)
    if n == 0:
        return MultiPoly.const(1)
    if all(not e.used_vars() for row in mat for e in row):
        return MultiPoly.const(_det_rational([[e.constant() for e in row] for row in mat]))
    return _det_laplace(mat)


def _det_rational(mat: list[list[Coeff]]) -> Coeff:
    rows = [[Fraction(e) for e in row] for row in mat]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det *= p
        for i in range(c + 1, n):
            f = rows[i][c] / p
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return _coeff(det)


def _det_laplace(mat: list[list[MultiPoly]]) -> MultiPoly:
    memo: dict[tuple[int, ...], MultiPoly] = {}
    n = len(mat)

    def minor(col: int, rows: tuple[int, ...]) -> MultiPoly:
        # determinant of mat[rows][col:]
        if col == n:
            return MultiPoly.const(1)
        if rows in memo:
            return memo[rows]
        total = MultiPoly.const(0)
        for k, r in enumerate(rows):
            e = mat[r][col]
            if e.is_zero():
                continue
            sub = minor(col + 1, rows[:k] + rows[k + 1:])
            term = e * sub
            total = total + term if k % 2 == 0 else total - term
        memo[rows] = total
        return total

    return minor(0, tuple(range(n)))


def sylvester_matrix(A: BinaryForm, B: BinaryForm) -> list[list[MultiPoly]]:
    """Rows of A shifted ``deg B`` times, then rows of B shifted ``deg A`` times.

    Columns follow descending powers of x (coefficient of ``x^top`` first).
    """
    m, n = A.degree, B.degree
    if m < 1 or n < 1:
        raise PolyError("resultant needs forms of degree >= 1")
    zero = MultiPoly.const(0)
    a = list(reversed(A.plain_coeffs()))
    b = list(reversed(B.plain_coeffs()))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def sylvester_resultant(A: BinaryForm, B: BinaryForm) -> MultiPoly:
    """Determinant of the standard Sylvester matrix, A's rows first, using declared degrees."""
    return _det(sylvester_matrix(A, B))


def discriminant(F: BinaryForm) -> MultiPoly:
    """Resultant of the two partial derivatives of ``F``."""
    if F.degree < 2:
        raise PolyError("discriminant needs degree >= 2")
    return sylvester_resultant(F.diff_x(), F.diff_y())


def generic_binary_form(d: int, prefix: str = "a",
                        convention: str = BinaryForm.BINOMIAL) -> BinaryForm:
    """Form with indeterminate coefficients ``a0..ad`` in the given convention."""
    names = tuple(f"{prefix}{j}" for j in range(d + 1))
    return BinaryForm([MultiPoly.var(v, names) for v in names], convention)
