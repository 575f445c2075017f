"""Coweight lattices with Weyl actions, invariant forms, and Langlands duals.

A RootDatum stores a lattice Λ through an integral basis in a fixed rational
ambient space (an integer matrix of scaled coordinates plus one common
denominator), the Weyl generators as integer matrices acting in that basis,
and a W-invariant positive definite rational form on the basis.  Every
downstream computation uses only the basis representation; the ambient
coordinates exist so that Λ and its dual Λ̂ = Hom(Λ, Z) live in one space and
can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Sequence

from .lattice_core import (
    IntegerMatrix,
    InexactSolveError,
    LatticeError,
    column_span_basis,
    solve_exact,
    solve_right_integer,
)

FractionMatrix = tuple[tuple[Fraction, ...], ...]


class DatumError(LatticeError):
    """A root datum violates one of its invariants."""


class DatumFormatError(DatumError):
    """A datum file is malformed."""


@dataclass(frozen=True)
class RootDatum:
    rank: int
    basis: IntegerMatrix  # ambient_dim x rank; true basis vectors are columns / denominator
    denominator: int
    gram: FractionMatrix  # rank x rank, in basis coordinates
    generators: tuple[IntegerMatrix, ...]  # rank x rank, acting in basis coordinates
    label: str

    @property
    def ambient_dim(self) -> int:
        return self.basis.rows

    def validate(self) -> None:
        _validate_datum(self)


def _fractions(rows: Sequence[Sequence[Fraction | int]]) -> FractionMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _frac_det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(m)
    a = [list(row) for row in m]
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det

def _frac_inverse(m: FractionMatrix) -> FractionMatrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            raise DatumError("gram matrix is singular")
        aug[k], aug[pivot] = aug[pivot], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [x * inv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return tuple(tuple(row[n:]) for row in aug)


def _congruence(g: IntegerMatrix, gram: FractionMatrix) -> FractionMatrix:
    """g^T · gram · g for an integer matrix g."""
    n = g.rows
    gt_gram = [
        [sum(Fraction(g[k, i]) * gram[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    return tuple(
        tuple(sum(gt_gram[i][k] * g[k, j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _is_positive_definite(gram: FractionMatrix) -> bool:
    # Sylvester: all leading principal minors positive.
    for k in range(1, len(gram) + 1):
        if _frac_det([row[:k] for row in gram[:k]]) <= 0:
            return False
    return True


def _validate_datum(d: RootDatum) -> None:
    if d.rank < 0:
        raise DatumError("rank must be nonnegative")
    if d.denominator < 1:
        raise DatumError("denominator must be a positive integer")
    if d.basis.cols != d.rank:
        raise DatumError("basis must have one column per lattice rank")
    if d.rank > 0 and d.basis.rank() != d.rank:
        raise DatumError("basis columns are linearly dependent")
    if len(d.gram) != d.rank or any(len(row) != d.rank for row in d.gram):
        raise DatumError("gram matrix must be rank x rank")
    for i in range(d.rank):
        for j in range(d.rank):
            if d.gram[i][j] != d.gram[j][i]:
                raise DatumError("gram matrix is not symmetric")
    if not _is_positive_definite(d.gram):
        raise DatumError("gram matrix is not positive definite")
    for idx, g in enumerate(d.generators, start=1):
        if g.rows != d.rank or g.cols != d.rank:
            raise DatumError(f"generator {idx} is not a rank x rank matrix")
        if not g.is_unimodular():
            raise DatumError(f"generator {idx} is not unimodular")
        if _congruence(g, d.gram) != d.gram:
            raise DatumError(f"generator {idx} does not preserve the gram form")


def _normalized_basis(basis: IntegerMatrix, denominator: int) -> tuple[IntegerMatrix, int]:
    """Reduce (basis, denominator) to lowest terms for exact double duality."""
    content = 0
    for row in basis.entries:
        for x in row:
            content = gcd(content, x)
    g = gcd(content, denominator)
    if g > 1:
        basis = IntegerMatrix.from_rows(
            [[x // g for x in row] for row in basis.entries], cols=basis.cols
        )
        denominator //= g
    return basis, denominator


def _make_datum(
    basis: IntegerMatrix,
    denominator: int,
    gram: FractionMatrix,
    generators: Sequence[IntegerMatrix],
    label: str,
) -> RootDatum:
    basis, denominator = _normalized_basis(basis, denominator)
    d = RootDatum(
        rank=basis.cols,
        basis=basis,
        denominator=denominator,
        gram=gram,
        generators=tuple(generators),
        label=label,
    )
    d.validate()
    return d


def _gram_from_ambient(basis: IntegerMatrix, denominator: int) -> FractionMatrix:
    """Standard Euclidean form of the ambient space, restricted to the basis."""
    bt_b = basis.transpose() * basis
    den2 = denominator * denominator
    return tuple(
        tuple(Fraction(bt_b[i, j], den2) for j in range(basis.cols)) for i in range(basis.cols)
    )


def _restrict_ambient_action(basis: IntegerMatrix, action: IntegerMatrix) -> IntegerMatrix:
    """Matrix of an ambient lattice automorphism in the given basis coordinates."""
    try:
        return solve_right_integer(basis, action * basis)
    except InexactSolveError as exc:
        raise DatumError("ambient action does not preserve the lattice") from exc


def _permutation_matrix(image: Sequence[int]) -> IntegerMatrix:
    n = len(image)
    cols = []
    for j in range(n):
        col = [0] * n
        col[image[j]] = 1
        cols.append(col)
    return IntegerMatrix.from_columns(cols, rows=n)


def _adjacent_swap(n: int, i: int) -> IntegerMatrix:
    image = list(range(n))
    image[i], image[i + 1] = image[i + 1], image[i]
    return _permutation_matrix(image)


def sl_quotient_datum(n: int, m: int) -> RootDatum:
    """Coweight datum of SL(n)/Z_m: Λ = {x ∈ Z^n + Z·(1/m,…,1/m) : Σx_j = 0}.

    S_n permutes the ambient coordinates; the gram form is the restriction of
    the standard form on Q^n.
    """
    if n < 2:
        raise DatumError("sl_quotient_datum requires n >= 2")
    if m < 1 or n % m != 0:
        raise DatumError(f"m = {m} does not divide n = {n}")
    # Scaled generators of m·Λ inside Z^n.
    cols = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        cols[i][i] = m
        cols[i][i + 1] = -m
    cols[n - 1] = [1] * n
    cols[n - 1][n - 1] = 1 - n
    basis = column_span_basis(IntegerMatrix.from_columns(cols, rows=n))
    assert basis.cols == n - 1
    generators = tuple(
        _restrict_ambient_action(basis, _adjacent_swap(n, i)) for i in range(n - 1)
    )
    label = f"SL({n})" if m == 1 else f"SL({n})/Z{m}"
    return _make_datum(basis, m, _gram_from_ambient(basis, m), generators, label)


_FORMS = {"simply_connected": "sc", "adjoint": "ad"}


def classical_datum(family: str, n: int, form: str) -> RootDatum:
    """Coweight data for types B, C, D in ambient Z^n coordinates.

    Bourbaki conventions: B_n short roots e_i, C_n long roots 2e_i, D_n roots
    ±e_i±e_j.  "simply_connected" means the coroot lattice, "adjoint" the full
    coweight lattice (dual of the root lattice).  W consists of all signed
    permutations for B and C and of evenly-signed permutations for D.
    """
    if family not in ("B", "C", "D"):
        raise DatumError(f"unknown classical family {family!r}")
    if form not in _FORMS:
        raise DatumError(f"unknown form {form!r}; use simply_connected or adjoint")
    if family in ("B", "C") and n < 2:
        raise DatumError(f"type {family} requires rank >= 2")
    if family == "D" and n < 3:
        raise DatumError("type D requires rank >= 3")

    def even_sum_basis() -> tuple[IntegerMatrix, int]:
        cols = [[0] * n for _ in range(n)]
        for i in range(n - 1):
            cols[i][i] = 1
            cols[i][i + 1] = -1
        cols[n - 1][n - 2] = 1
        cols[n - 1][n - 1] = 1
        return IntegerMatrix.from_columns(cols, rows=n), 1

    def standard_basis() -> tuple[IntegerMatrix, int]:
        return IntegerMatrix.identity(n), 1

    def half_sum_basis() -> tuple[IntegerMatrix, int]:
        cols = [[2 if i == j else 0 for i in range(n)] for j in range(n)] + [[1] * n]
        return column_span_basis(IntegerMatrix.from_columns(cols, rows=n)), 2

    lattice = {
        ("B", "simply_connected"): even_sum_basis,
        ("B", "adjoint"): standard_basis,
        ("C", "simply_connected"): standard_basis,
        ("C", "adjoint"): half_sum_basis,
        ("D", "simply_connected"): even_sum_basis,
        ("D", "adjoint"): half_sum_basis,
    }[(family, form)]
    basis, denominator = lattice()

    ambient_gens = [_adjacent_swap(n, i) for i in range(n - 1)]
    if family in ("B", "C"):
        flip = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        flip[n - 1][n - 1] = -1
        ambient_gens.append(IntegerMatrix.from_rows(flip, cols=n))
    else:
        # Reflection in e_{n-1} + e_n: swap the last two coordinates, negated.
        refl = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        refl[n - 2][n - 2] = refl[n - 1][n - 1] = 0
        refl[n - 2][n - 1] = refl[n - 1][n - 2] = -1
        ambient_gens.append(IntegerMatrix.from_rows(refl, cols=n))

    generators = tuple(_restrict_ambient_action(basis, g) for g in ambient_gens)
    label = f"{family}{n}_{_FORMS[form]}"
    return _make_datum(basis, denominator, _gram_from_ambient(basis, denominator), generators, label)


def dual_datum(d: RootDatum) -> RootDatum:
    """Langlands-dual datum: Λ̂ = Hom(Λ, Z) realized via the gram pairing.

    The dual basis vectors are b̂_j = Σ_k (gram⁻¹)_{kj} b_k, the generators are
    replaced by their inverse transposes, and the gram form by its inverse.
    """
    if d.rank == 0:
        return replace(d, label=_dual_label(d.label))
    ginv = _frac_inverse(d.gram)
    # Ambient coordinates of the dual basis: (basis/denominator) · gram⁻¹.
    frac_cols = [
        [
            sum(Fraction(d.basis[i, k], d.denominator) * ginv[k][j] for k in range(d.rank))
            for i in range(d.ambient_dim)
        ]
        for j in range(d.rank)
    ]
    denominator = 1
    for col in frac_cols:
        for x in col:
            denominator = lcm(denominator, x.denominator)
    basis = IntegerMatrix.from_columns(
        [[int(x * denominator) for x in col] for col in frac_cols], rows=d.ambient_dim
    )
    generators = tuple(g.inverse_transpose() for g in d.generators)
    return _make_datum(basis, denominator, ginv, generators, _dual_label(d.label))


def _dual_label(label: str) -> str:
    if label.startswith("dual(") and label.endswith(")"):
        return label[len("dual(") : -1]
    return f"dual({label})"


def datum_equivalent(d1: RootDatum, d2: RootDatum, up_to_gram_scale: bool = False) -> bool:
    """Same ambient lattice, same generator set, and matching gram form.

    The comparison allows for a change of basis: it finds the integral basis
    change T with basis2/den2 = (basis1/den1)·T, requires it to be unimodular
    in both directions, and compares generator sets and gram forms through T.
    With up_to_gram_scale the gram forms may differ by a positive rational
    factor.
    """
    if d1.rank != d2.rank or d1.ambient_dim != d2.ambient_dim:
        return False
    if d1.rank == 0:
        return True
    try:
        x12 = solve_exact(d1.basis, d2.basis)
        x21 = solve_exact(d2.basis, d1.basis)
    except InexactSolveError:
        return False
    scale12 = Fraction(d1.denominator, d2.denominator)
    scale21 = Fraction(d2.denominator, d1.denominator)
    t12 = [[x * scale12 for x in row] for row in x12]
    t21 = [[x * scale21 for x in row] for row in x21]
    if any(x.denominator != 1 for row in t12 for x in row):
        return False
    if any(x.denominator != 1 for row in t21 for x in row):
        return False
    t = IntegerMatrix.from_rows([[int(x) for x in row] for row in t12], cols=d1.rank)
    if not t.is_unimodular():
        return False
    tinv = t.inverse_unimodular()
    gens1 = set(d1.generators)
    gens2 = {t * h * tinv for h in d2.generators}
    if gens1 != gens2:
        return False
    transported = _congruence(t, d1.gram)
    if transported == d2.gram:
        return True
    if up_to_gram_scale:
        base = next((x for row in transported for x in row if x != 0), None)
        other = next((x for row in d2.gram for x in row if x != 0), None)
        if base is None or other is None:
            return False
        ratio = other / base
        if ratio <= 0:
            return False
        return all(
            transported[i][j] * ratio == d2.gram[i][j]
            for i in range(d2.rank)
            for j in range(d2.rank)
        )
    return False


# --- datum file format -------------------------------------------------------
#
# Line-oriented UTF-8 text; '#' starts a comment; blank lines are ignored.
#   rank N
#   denominator N          (optional, default 1)
#   label NAME             (optional, default: file stem)
#   basis                  (then `rank` rows of ambient integer coordinates,
#                           one basis vector per row, scaled by denominator)
#   gram                   (then `rank` rows of `rank` rationals, `p/q` or `p`)
#   generators             (then any number of rank x rank integer blocks,
#                           one matrix row per line)

_KEYWORDS = {"rank", "denominator", "label", "basis", "gram", "generators"}


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def custom_datum(path: str | Path) -> RootDatum:
    """Load and validate a RootDatum from a datum file."""
    path = Path(path)
    return parse_datum_text(path.read_text(encoding="utf-8"), default_label=path.stem)


def parse_datum_text(text: str, default_label: str = "custom") -> RootDatum:
    lines = _content_lines(text)
    rank: int | None = None
    denominator = 1
    label = default_label
    basis_rows: list[list[int]] | None = None
    gram_rows: list[list[Fraction]] | None = None
    generator_rows: list[list[int]] = []
    pos = 0

    def parse_int_row(line: str, what: str) -> list[int]:
        try:
            return [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise DatumFormatError(f"malformed {what} row: {line!r}") from exc

    while pos < len(lines):
        head, _, rest = lines[pos].partition(" ")
        if head not in _KEYWORDS:
            raise DatumFormatError(f"unexpected line: {lines[pos]!r}")
        pos += 1
        if head == "rank":
            try:
                rank = int(rest)
            except ValueError as exc:
                raise DatumFormatError(f"malformed rank: {rest!r}") from exc
        elif head == "denominator":
            try:
                denominator = int(rest)
            except ValueError as exc:
                raise DatumFormatError(f"malformed denominator: {rest!r}") from exc
        elif head == "label":
            if not rest.strip():
                raise DatumFormatError("label line is missing a value")
            label = rest.strip()
        else:
            if rank is None:
                raise DatumFormatError(f"{head} section appears before rank")
            if head == "basis":
                basis_rows = []
                for _ in range(rank):
                    if pos >= len(lines):
                        raise DatumFormatError("basis section ends early")
                    basis_rows.append(parse_int_row(lines[pos], "basis"))
                    pos += 1
                widths = {len(r) for r in basis_rows}
                if len(widths) > 1:
                    raise DatumFormatError("basis rows have inconsistent lengths")
            elif head == "gram":
                gram_rows = []
                for _ in range(rank):
                    if pos >= len(lines):
                        raise DatumFormatError("gram section ends early")
                    try:
                        gram_rows.append([Fraction(tok) for tok in lines[pos].split()])
                    except (ValueError, ZeroDivisionError) as exc:
                        raise DatumFormatError(f"malformed gram row: {lines[pos]!r}") from exc
                    pos += 1
            else:  # generators
                while pos < len(lines) and lines[pos].split(" ", 1)[0] not in _KEYWORDS:
                    generator_rows.append(parse_int_row(lines[pos], "generator"))
                    pos += 1

    if rank is None:
        raise DatumFormatError("missing rank")
    if basis_rows is None:
        raise DatumFormatError("missing basis section")
    if gram_rows is None:
        raise DatumFormatError("missing gram section")
    if any(len(r) != rank for r in gram_rows):
        raise DatumFormatError("gram rows must each have `rank` entries")
    if len(generator_rows) % max(rank, 1) != 0:
        raise DatumFormatError("generators section is not a whole number of rank-row blocks")

    # Basis vectors are file rows; internally they are columns.
    basis = IntegerMatrix.from_rows(basis_rows, cols=len(basis_rows[0]) if basis_rows else 0).transpose()
    generators = []
    for k in range(0, len(generator_rows), max(rank, 1)):
        block = generator_rows[k : k + rank]
        if any(len(r) != rank for r in block):
            raise DatumFormatError(f"generator {k // max(rank, 1) + 1} is not a rank x rank matrix")
        generators.append(IntegerMatrix.from_rows(block, cols=rank))

    d = RootDatum(
        rank=rank,
        basis=basis,
        denominator=denominator,
        gram=_fractions(gram_rows),
        generators=tuple(generators),
        label=label,
    )
    d.validate()
    return d


def datum_to_text(d: RootDatum) -> str:
    lines = [f"rank {d.rank}", f"denominator {d.denominator}", f"label {d.label}", "basis"]
    bt = d.basis.transpose()
    for row in bt.entries:
        lines.append(" ".join(str(x) for x in row))
    lines.append("gram")
    for row in d.gram:
        lines.append(" ".join(str(x) for x in row))
    lines.append("generators")
    for g in d.generators:
        for row in g.entries:
            lines.append(" ".join(str(x) for x in row))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
