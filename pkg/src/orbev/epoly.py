"""Exact bivariate polynomials in u, v and the E-characters of space factors.

Every E-computation in the package is valued in BivariatePolynomial: a map
from (degree_u, degree_v) to a rational coefficient with no stored zeros.  A
SpaceDescriptor is an ordered list of factors (elliptic | c_star |
affine_line, each tensored with the primal or dual lattice); the E-character
of a finite-order lattice automorphism c on each factor kind is a
characteristic-polynomial expression:

    elliptic:     det(1 - u·c) · det(1 - v·c)
    c_star:       det(uv·1 - c)
    affine_line:  (uv)^rank
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .lattice_core import IntegerMatrix, LatticeError


class PolynomialError(LatticeError):
    """Invalid polynomial operation."""


class InexactDivisionError(PolynomialError):
    """Polynomial division left a nonzero remainder."""


class BivariatePolynomial:
    """Polynomial in u, v with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], Fraction | int] | None = None):
        cleaned: dict[tuple[int, int], Fraction] = {}
        if coeffs:
            for (p, q), c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    if p < 0 or q < 0:
                        raise PolynomialError("negative exponents are not supported")
                    cleaned[(int(p), int(q))] = c
        object.__setattr__(self, "coeffs", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("BivariatePolynomial is immutable")

    @staticmethod
    def zero() -> "BivariatePolynomial":
        return BivariatePolynomial()

    @staticmethod
    def one() -> "BivariatePolynomial":
        return BivariatePolynomial({(0, 0): 1})

    @staticmethod
    def constant(c: Fraction | int) -> "BivariatePolynomial":
        return BivariatePolynomial({(0, 0): Fraction(c)})

    @staticmethod
    def monomial(p: int, q: int, c: Fraction | int = 1) -> "BivariatePolynomial":
        return BivariatePolynomial({(p, q): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) or isinstance(other, Fraction):
            other = BivariatePolynomial.constant(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return BivariatePolynomial(out)

    def __sub__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        return self + (-other)

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial({k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out: dict[tuple[int, int], Fraction] = {}
        for (p1, q1), c1 in self.coeffs.items():
            for (p2, q2), c2 in other.coeffs.items():
                key = (p1 + p2, q1 + q2)
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return BivariatePolynomial(out)

    def __pow__(self, n: int) -> "BivariatePolynomial":
        if n < 0:
            raise PolynomialError("negative powers are not supported")
        result = BivariatePolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Fraction | int) -> "BivariatePolynomial":
        c = Fraction(c)
        return BivariatePolynomial({k: v * c for k, v in self.coeffs.items()})

    def substitute_powers(self, i: int, j: int) -> "BivariatePolynomial":
        """u -> u^i, v -> v^j."""
        if i < 0 or j < 0:
            raise PolynomialError("substitution powers must be nonnegative")
        return BivariatePolynomial({(p * i, q * j): c for (p, q), c in self.coeffs.items()})

    def evaluate(self, u: Fraction | int, v: Fraction | int) -> Fraction:
        u = Fraction(u)
        v = Fraction(v)
        total = Fraction(0)
        for (p, q), c in self.coeffs.items():
            total += c * u**p * v**q
        return total

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def sorted_terms(self) -> list[tuple[int, int, Fraction]]:
        return [(p, q, self.coeffs[(p, q)]) for p, q in sorted(self.coeffs)]

    def to_json_terms(self) -> list[dict]:
        return [{"p": p, "q": q, "coeff": str(c)} for p, q, c in self.sorted_terms()]

    @staticmethod
    def from_json_terms(terms: Iterable[Mapping]) -> "BivariatePolynomial":
        return BivariatePolynomial({(int(t["p"]), int(t["q"])): Fraction(t["coeff"]) for t in terms})

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*u^{p}*v^{q}" for p, q, c in self.sorted_terms())

    @staticmethod
    def from_text(text: str) -> "BivariatePolynomial":
        text = text.strip()
        if text == "0":
            return BivariatePolynomial.zero()
        coeffs: dict[tuple[int, int], Fraction] = {}
        for term in text.split(" + "):
            c, up, vq = term.split("*")
            p = int(up.removeprefix("u^"))
            q = int(vq.removeprefix("v^"))
            coeffs[(p, q)] = coeffs.get((p, q), Fraction(0)) + Fraction(c)
        return BivariatePolynomial(coeffs)

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self.to_text()})"


def exact_divide(p: BivariatePolynomial, q: BivariatePolynomial) -> BivariatePolynomial:
    """r with r·q = p; raises InexactDivisionError when no such polynomial exists."""
    if q.is_zero():
        raise PolynomialError("division by the zero polynomial")
    remainder = dict(p.coeffs)
    q_lead = max(q.coeffs)  # lex order on (degree_u, degree_v)
    q_lead_coeff = q.coeffs[q_lead]
    quotient: dict[tuple[int, int], Fraction] = {}
    while remainder:
        r_lead = max(remainder)
        dp, dq = r_lead[0] - q_lead[0], r_lead[1] - q_lead[1]
        if dp < 0 or dq < 0:
            raise InexactDivisionError("division is not exact")
        c = remainder[r_lead] / q_lead_coeff
        quotient[(dp, dq)] = c
        for (p2, q2), c2 in q.coeffs.items():
            key = (p2 + dp, q2 + dq)
            s = remainder.get(key, Fraction(0)) - c * c2
            if s:
                remainder[key] = s
            else:
                remainder.pop(key, None)
    return BivariatePolynomial(quotient)


UV = BivariatePolynomial.monomial(1, 1)


@lru_cache(maxsize=None)
def char_poly(m: IntegerMatrix) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_n) of det(t·1 - m) = Σ c_k t^k.

    Faddeev-LeVerrier recursion in exact rational arithmetic; the output is
    integral for integer matrices.
    """
    if not m.is_square():
        raise PolynomialError("characteristic polynomial requires a square matrix")
    n = m.rows
    if n == 0:
        return (1,)
    a = [[Fraction(x) for x in row] for row in m.entries]

    def mat_mul(x, y):
        return [
            [sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    mk = None
    for k in range(1, n + 1):
        mk = mat_mul(a, aux) if k > 1 else [row[:] for row in a]
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs[n - k] = ck
        aux = [[mk[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    assert all(c.denominator == 1 for c in coeffs)
    return tuple(int(c) for c in coeffs)


def char_poly_product(c: IntegerMatrix, x_monomial: tuple[int, int]) -> BivariatePolynomial:
    """det(1 - x·c) where x is the monomial u^a v^b."""
    a, b = x_monomial
    coeffs = char_poly(c)
    n = len(coeffs) - 1
    # det(1 - x·c) = x^n · det((1/x)·1 - c) = Σ_k c_k x^(n-k)
    out: dict[tuple[int, int], Fraction] = {}
    for k, ck in enumerate(coeffs):
        if ck:
            key = ((n - k) * a, (n - k) * b)
            out[key] = out.get(key, Fraction(0)) + ck
    return BivariatePolynomial(out)


ELLIPTIC = "elliptic"
C_STAR = "c_star"
AFFINE_LINE = "affine_line"
PRIMAL = "primal"
DUAL = "dual"

_FACTOR_DIMENSION = {ELLIPTIC: 2, C_STAR: 1, AFFINE_LINE: 0}


def factor_dimension(kind: str) -> int:
    """Number of U(1) factors of the group A_kind (A = R^c × U(1)^d)."""
    try:
        return _FACTOR_DIMENSION[kind]
    except KeyError:
        raise PolynomialError(f"unknown factor kind {kind!r}") from None


@dataclass(frozen=True)
class SpaceDescriptor:
    """Ordered factor list; each factor is (kind, lattice_side)."""

    name: str
    factors: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.factors:
            raise PolynomialError("a space descriptor needs at least one factor")
        for kind, side in self.factors:
            factor_dimension(kind)
            if side not in (PRIMAL, DUAL):
                raise PolynomialError(f"unknown lattice side {side!r}")

    @property
    def uses_dual(self) -> bool:
        return any(side == DUAL for _, side in self.factors)


# The de Rham space is a Zariski-locally-trivial affine-line bundle over the
# elliptic-curve factor, so its E-character data coincide with Dolbeault's.
SPACES: dict[str, SpaceDescriptor] = {
    "betti": SpaceDescriptor("betti", ((C_STAR, PRIMAL), (C_STAR, PRIMAL))),
    "dolbeault": SpaceDescriptor("dolbeault", ((ELLIPTIC, PRIMAL), (AFFINE_LINE, PRIMAL))),
    "derham": SpaceDescriptor("derham", ((ELLIPTIC, PRIMAL), (AFFINE_LINE, PRIMAL))),
    "abelian-surface": SpaceDescriptor("abelian-surface", ((ELLIPTIC, PRIMAL), (ELLIPTIC, PRIMAL))),
    "mixed": SpaceDescriptor("mixed", ((ELLIPTIC, DUAL), (ELLIPTIC, PRIMAL))),
}


@lru_cache(maxsize=None)
def factor_e_character(kind: str, c: IntegerMatrix) -> BivariatePolynomial:
    """E-polynomial-valued trace of c on the identity component A_kind ⊗ M.

    M is the lattice c acts on (for the engine: a fixed sublattice Λ^w in its
    own basis).  At c = identity this is the plain E-polynomial of the factor:
    (1-u)^r (1-v)^r, (uv-1)^r, and (uv)^r respectively.
    """
    if not c.is_square():
        raise PolynomialError("factor_e_character requires a square matrix")
    if kind == ELLIPTIC:
        return char_poly_product(c, (1, 0)) * char_poly_product(c, (0, 1))
    if kind == C_STAR:
        # det(uv·1 - c) = Σ_k c_k (uv)^k with c_k the characteristic coefficients.
        coeffs = char_poly(c)
        return BivariatePolynomial({(k, k): ck for k, ck in enumerate(coeffs) if ck})
    if kind == AFFINE_LINE:
        return BivariatePolynomial.monomial(c.rows, c.rows)
    raise PolynomialError(f"unknown factor kind {kind!r}")


def space_e_character(
    space: SpaceDescriptor, factor_matrices: Sequence[IntegerMatrix]
) -> BivariatePolynomial:
    """Product of factor_e_character over the factors of the space.

    factor_matrices[i] is the action restricted to the i-th factor's fixed
    sublattice, expressed in a basis of that sublattice.
    """
    if len(factor_matrices) != len(space.factors):
        raise PolynomialError("one matrix per factor is required")
    result = BivariatePolynomial.one()
    for (kind, _), m in zip(space.factors, factor_matrices):
        result = result * factor_e_character(kind, m)
    return result
