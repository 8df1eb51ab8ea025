"""Characters of the twisted Eagon-Northcott row complex and the ideal prediction.

For a partition ``lam`` and twist ``m`` the global sections of the p-th term
split into summands

    Q(alpha, p) = M(alpha) (x) Sym^{m+p+alpha-n-1}(Sym^d) (x) wedge^{n+2-p}(Sym^d),
    M(alpha)    = (x)_r Sym^{z(alpha, r)}(Sym^{e_r}),   z(alpha, r) = r*alpha + r - e_r - 1,

for ``M - 1 <= alpha <= n - p``.  The alternating sum of their characters is
``chi(I_X)_m - chi(H^0 D(m))`` whenever ``H^1(I_X(m)) = H^1(O_X(m)) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from crl.charring import Character, cg_tensor, plethysm_sym_sym, tensor, wedge_sym
from crl.partitions import Partition, parse_partition

ASSUMPTIONS = ("H1_IX_vanishes", "H1_OX_vanishes")


class UnknownDError(ValueError):
    """The correction sheaf D_lambda is not known for this partition."""


class VanishingAssumptionError(ArithmeticError):
    """A predicted module came out virtual, so the vanishing hypotheses fail."""

    def __init__(self, message: str, character: Character | None = None):
        super().__init__(message)
        self.character = character


@dataclass(frozen=True)
class TermDescriptor:
    lam: Partition
    m: int
    p: int
    alpha: int
    z_values: dict[int, int] = field(hash=False)
    sym_exponent: int
    wedge_index: int
    character: Character = field(hash=False)

    @property
    def nonzero(self) -> bool:
        return bool(self.character)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "alpha": self.alpha,
            "z": {str(r): z for r, z in sorted(self.z_values.items())},
            "sym_exponent": self.sym_exponent,
            "wedge_index": self.wedge_index,
            "character": self.character.to_json(),
        }


def z_value(lam: Partition, alpha: int, r: int) -> int:
    return r * alpha + r - lam.e(r) - 1


def m_alpha_char(lam: Partition, alpha: int) -> Character:
    out = Character.s(0)
    for r, e in lam.exps:
        z = r * alpha + r - e - 1
        if z < 0:
            return Character()
        out = tensor(out, plethysm_sym_sym(z, e))
    return out


def term(lam: Partition, m: int, alpha: int, p: int) -> TermDescriptor:
    n, d = lam.n, lam.d
    sym_exp = m + p + alpha - n - 1
    wedge_idx = n + 2 - p
    zs = {r: z_value(lam, alpha, r) for r in lam.sizes}
    ch = Character()
    if sym_exp >= 0 and 0 <= wedge_idx <= d + 1 and all(z >= 0 for z in zs.values()):
        ch = tensor(tensor(m_alpha_char(lam, alpha), plethysm_sym_sym(sym_exp, d)),
                    wedge_sym(wedge_idx, d))
    return TermDescriptor(lam, m, p, alpha, zs, sym_exp, wedge_idx, ch)


def q_term_char(lam: Partition, m: int, alpha: int, p: int) -> Character:
    if m < 0:
        raise ValueError("twist m must be >= 0")
    return term(lam, m, alpha, p).character


def p_range(lam: Partition) -> range:
    """Indices p where the p-th term can be nonzero: ``n+1-d <= p <= n+1-M``."""
    return range(lam.n + 1 - lam.d, lam.n + 2 - lam.M)


def terms(lam: Partition, m: int, p: int) -> list[TermDescriptor]:
    return [term(lam, m, alpha, p) for alpha in range(lam.M - 1, lam.n - p + 1)]


def h0_gp_char(lam: Partition, m: int, p: int) -> Character:
    if m < 0:
        raise ValueError("twist m must be >= 0")
    out = Character()
    if p not in p_range(lam):
        return out
    for t in terms(lam, m, p):
        out = out + t.character
    return out


def euler_h0_char(lam: Partition, m: int) -> Character:
    """Alternating sum over p of the section characters (a virtual character)."""
    out = Character()
    for p in p_range(lam):
        ch = h0_gp_char(lam, m, p)
        out = out + ch if p % 2 == 0 else out - ch
    return out


_P322 = parse_partition([3, 2, 2])
_P33 = parse_partition([3, 3])


def d_sheaf_support(lam: Partition) -> str | None:
    """Name of the known description of D for ``lam``, or None."""
    parts = lam.parts
    if len(parts) == 1:
        return "single-part"
    if len(parts) == 2 and parts[0] != parts[1]:
        return "two-distinct-parts"
    if lam == _P33:
        return "(3,3)"
    if lam == _P322:
        return "(3,2,2)"
    return None


def d_sheaf_char(lam: Partition, m: int) -> Character:
    """Character of ``H^0(D_lam(m))`` for the partitions where D is known."""
    kind = d_sheaf_support(lam)
    if kind is None:
        raise UnknownDError(f"D is not known for {lam}")
    if kind in ("single-part", "(3,3)"):
        return Character()
    if kind == "two-distinct-parts":
        return Character.s(lam.d * m - 2)
    return cg_tensor(5 * m - 3, 2 * m - 1) + Character.s(7 * m - 2)


def predicted_ideal_char(lam: Partition, m: int) -> Character:
    """Euler characteristic plus the D correction; must be a genuine character."""
    if m < 0:
        raise ValueError("twist m must be >= 0")
    ch = euler_h0_char(lam, m) + d_sheaf_char(lam, m)
    if not ch.is_genuine():
        raise VanishingAssumptionError(
            f"prediction for {lam} at m={m} is virtual ({ch}); "
            "the vanishing assumptions fail here", ch)
    return ch


def syzygy_char_step(lam: Partition, m: int,
                     known_gen_chars: Iterable[tuple[int, Character]]) -> Character:
    """Character of the first syzygy module in degree ``m``.

    ``sum_gens Sym^{m-deg}(Sym^d) (x) gens  -  (I_X)_m``, valid when the
    first syzygies start in degree ``m`` and the vanishing assumptions hold.
    """
    total = Character()
    for deg, ch in known_gen_chars:
        if deg > m:
            continue
        total = total + tensor(plethysm_sym_sym(m - deg, lam.d), ch)
    out = total - predicted_ideal_char(lam, m)
    if not out.is_genuine():
        raise VanishingAssumptionError(
            f"syzygy character for {lam} at m={m} is virtual ({out})", out)
    return out


def report(lam: Partition, m: int) -> dict:
    """JSON-ready breakdown of the prediction at ``(lam, m)``."""
    listed = []
    for p in p_range(lam):
        for t in terms(lam, m, p):
            if t.nonzero:
                listed.append(t.to_json())
    euler = euler_h0_char(lam, m)
    out = {
        "terms": listed,
        "euler": euler.to_json(),
        "assumptions": list(ASSUMPTIONS),
    }
    try:
        dch = d_sheaf_char(lam, m)
    except UnknownDError as exc:
        out["d_correction"] = None
        out["predicted"] = None
        out["error"] = str(exc)
        return out
    out["d_correction"] = dch.to_json()
    total = euler + dch
    out["predicted"] = total.to_json()
    out["genuine"] = total.is_genuine()
    return out


def predicted_generators(lam: Partition, degrees: Sequence[int]) -> dict[int, Character]:
    """Predicted ideal characters at several twists (convenience for reports)."""
    return {m: predicted_ideal_char(lam, m) for m in degrees}
