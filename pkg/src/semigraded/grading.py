"""Degree decomposition, filtration windows, and the semi-graded criterion.

The standard filtration of an algebra with PBW basis assigns every monomial
its total degree.  This module decomposes elements into homogeneous pieces,
enumerates the finite-dimensional window F_d of all monomials of degree at
most d, intersects left ideals with such windows (as a lower approximation,
monotone in d), and tests whether a window subspace is closed under taking
homogeneous components — the finite-window version of the semi-graded
submodule criterion.

Linear algebra runs over exact rationals after the parameters have been
specialized; the resulting subspace records which specialization was used.
Row reduction uses a fixed pivot rule (leftmost column, first available row)
so results are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Optional, Sequence, Union

from .presentation import AlgebraPresentation, format_monomial, specialize_presentation
from .rewrite import NCPoly, monomial, nc_mul
from .scalars import ScalarField

__all__ = [
    "FiltrationWindow",
    "WindowSubspace",
    "SemigradedReport",
    "homogeneous_components",
    "window_dims",
    "left_ideal_window",
    "is_semigraded_window",
]


# ---------------------------------------------------------------------------
# homogeneous decomposition
# ---------------------------------------------------------------------------


def homogeneous_components(p: NCPoly) -> list[tuple[int, NCPoly]]:
    """Split ``p`` into its homogeneous pieces, lowest degree first.

    Returns ``[(degree, piece), ...]`` with strictly increasing degrees and
    every piece nonzero; the pieces sum back to ``p``.  The zero element has
    no components.
    """
    buckets: dict[int, dict] = {}
    for exp, coeff in p.terms.items():
        buckets.setdefault(sum(exp), {})[exp] = coeff
    return [(k, NCPoly(buckets[k])) for k in sorted(buckets)]


# ---------------------------------------------------------------------------
# monomial counting
# ---------------------------------------------------------------------------

_ENUMERATION_CAP = 200_000


def _monomials_of_degree(n: int, k: int, prefix: tuple = ()) -> list[tuple]:
    """All exponent vectors in n variables of total degree k, descending lex."""
    if n == 1:
        return [prefix + (k,)]
    out: list[tuple] = []
    for e in range(k, -1, -1):
        out.extend(_monomials_of_degree(n - 1, k - e, prefix + (e,)))
    return out


def _count_by_degree(n: int, d: int) -> list[int]:
    """Stars-and-bars table: entry k counts degree-k monomials in n variables.

    Built by the variable-at-a-time recurrence, deliberately independent of
    the binomial formula so the two can be cross-checked.
    """
    counts = [1] + [0] * d
    for _ in range(n):
        for k in range(1, d + 1):
            counts[k] += counts[k - 1]
    return counts


def window_dims(presentation: AlgebraPresentation, d: int) -> list[int]:
    """Per-degree dimensions ``[dim A_0, ..., dim A_d]`` of the PBW basis.

    Each entry is computed by counting exponent vectors (literal enumeration
    for small windows, a stars-and-bars recurrence for large ones) and
    compared against the closed form C(n+k-1, k); a mismatch means the
    package itself is broken and raises immediately.
    """
    if d < 0:
        raise ValueError(f"degree bound must be >= 0, got {d}")
    n = presentation.n
    if n == 0:
        counted = [1] + [0] * d
    elif comb(n + d, d) <= _ENUMERATION_CAP:
        counted = [len(_monomials_of_degree(n, k)) for k in range(d + 1)]
    else:
        counted = _count_by_degree(n, d)
    formula = [comb(n + k - 1, k) for k in range(d + 1)]
    if counted != formula:
        raise RuntimeError(
            "internal consistency failure: monomial enumeration "
            f"{counted} != binomial formula {formula} for n={n}, d={d}"
        )
    return counted


# ---------------------------------------------------------------------------
# filtration windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiltrationWindow:
    """All monomials of degree <= d, ordered leading-first (descending deglex).

    ``basis`` lists exponent vectors sorted by (total degree, exponents)
    descending, so the constant monomial comes last.  ``dimension`` equals
    the stars-and-bars count C(n+d, d).
    """

    gens: tuple
    d: int
    basis: tuple

    @property
    def n(self) -> int:
        return len(self.gens)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index_of(self, exponents: tuple) -> int:
        return self._positions[exponents]

    @property
    def _positions(self) -> dict:
        cached = self.__dict__.get("_positions_cache")
        if cached is None:
            cached = {exp: c for c, exp in enumerate(self.basis)}
            object.__setattr__(self, "_positions_cache", cached)
        return cached


def filtration_window(presentation: AlgebraPresentation, d: int) -> FiltrationWindow:
    """The window F_d of ``presentation``: all monomials of degree <= d."""
    if d < 0:
        raise ValueError(f"degree bound must be >= 0, got {d}")
    n = presentation.n
    basis: list[tuple] = []
    for k in range(d, -1, -1):
        basis.extend(_monomials_of_degree(n, k))
    window = FiltrationWindow(tuple(presentation.gens), d, tuple(basis))
    if window.dimension != comb(n + d, d):
        raise RuntimeError(
            "internal consistency failure: window dimension "
            f"{window.dimension} != C({n + d},{d}) for n={n}, d={d}"
        )
    return window


# ---------------------------------------------------------------------------
# row reduction over exact rationals
# ---------------------------------------------------------------------------


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with the fixed pivot rule.

    Scans columns left to right; the first row with a nonzero entry in the
    scanned column becomes the pivot row.  Returns the nonzero rows (pivots
    normalized to 1, eliminated above and below) and their pivot columns,
    which are strictly increasing.
    """
    rows = [list(row) for row in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for k in range(r, len(rows)):
            if rows[k][col]:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        head = rows[r][col]
        if head != 1:
            rows[r] = [x / head for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                factor = rows[k][col]
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


@dataclass
class WindowSubspace:
    """A subspace of a filtration window in reduced row echelon form.

    ``rows`` hold exact rational coordinates relative to ``window.basis``;
    pivot columns are strictly increasing and the rank equals the row count.
    ``specialization`` records the parameter assignment under which the
    coordinates were computed (values apply to the declared root of each
    parameter).
    """

    window: FiltrationWindow
    specialization: dict
    rows: list
    pivots: list

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivot_monomials(self) -> list[str]:
        return [
            format_monomial(self.window.basis[col], self.window.gens)
            for col in self.pivots
        ]

    def contains(self, vector: Sequence[Fraction]) -> bool:
        """Whether ``vector`` lies in the row space."""
        return not any(self._reduce(vector))

    def _reduce(self, vector: Sequence[Fraction]) -> list[Fraction]:
        residual = list(vector)
        for row, col in zip(self.rows, self.pivots):
            factor = residual[col]
            if factor:
                residual = [a - factor * b for a, b in zip(residual, row)]
        return residual

    def to_dict(self) -> dict:
        return {
            "window_degree": self.window.d,
            "specialization": {
                name: str(value) for name, value in sorted(self.specialization.items())
            },
            "rank": self.rank,
            "pivot_monomials": self.pivot_monomials(),
        }


def left_ideal_window(
    presentation: AlgebraPresentation,
    generators: Sequence[NCPoly],
    d: int,
    specialization: Optional[Mapping[str, Union[Fraction, int]]] = None,
) -> WindowSubspace:
    """Degree-``d`` window of the left ideal spanned by ``generators``.

    Spans the normal forms of all products (monomial) * (generator) whose
    degree fits in the window, with parameters specialized to exact
    rationals first.  This is a lower approximation of the true ideal
    intersected with F_d, and its rank is monotone nondecreasing in ``d``.
    """
    spec_pres, full = specialize_presentation(presentation, specialization)
    window = filtration_window(spec_pres, d)
    field = presentation.field
    raw_rows: list[list[Fraction]] = []
    for gen in generators:
        spec_terms = {}
        for exp, coeff in gen.terms.items():
            value = field.specialize(coeff, full)
            if value:
                spec_terms[exp] = value
        spec_gen = NCPoly(spec_terms)
        if not spec_gen:
            continue
        gen_degree = spec_gen.degree()
        budget = d - gen_degree
        if budget < 0:
            continue
        for mu in (exp for exp in window.basis if sum(exp) <= budget):
            product = nc_mul(spec_pres, monomial(spec_pres, mu), spec_gen)
            row = [Fraction(0)] * window.dimension
            for exp, coeff in product.terms.items():
                row[window.index_of(exp)] = coeff
            raw_rows.append(row)
    rows, pivots = rref(raw_rows)
    return WindowSubspace(window, dict(full), rows, pivots)


# ---------------------------------------------------------------------------
# semi-graded criterion on a window
# ---------------------------------------------------------------------------


@dataclass
class SemigradedReport:
    """Outcome of the window criterion: every homogeneous component of every
    element of the subspace must itself lie in the subspace.

    A negative answer carries a witness (the offending element, the degree of
    the escaping component, and the component itself).  A negative at window
    degree d refutes semi-gradedness only as far as the window approximation
    reaches, so the report records the window.
    """

    ok: bool
    window_degree: int
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "window_degree": self.window_degree,
            "witness": self.witness,
        }


def is_semigraded_window(ws: WindowSubspace) -> SemigradedReport:
    """Test whether the subspace is closed under homogeneous components.

    Checks each reduced row: its coordinates are split by monomial degree and
    every degree slice must reduce to zero against the row space.  The zero
    subspace passes vacuously.
    """
    window = ws.window
    degrees = [sum(exp) for exp in window.basis]
    gens = window.gens
    field = ScalarField(())
    for row in ws.rows:
        present = sorted({degrees[c] for c, x in enumerate(row) if x})
        if len(present) <= 1:
            continue
        for k in present:
            slice_vec = [
                x if degrees[c] == k else Fraction(0) for c, x in enumerate(row)
            ]
            if not ws.contains(slice_vec):
                witness = {
                    "row": _format_vector(row, window, gens, field),
                    "degree": k,
                    "component": _format_vector(slice_vec, window, gens, field),
                }
                return SemigradedReport(False, window.d, witness)
    return SemigradedReport(True, window.d)


def _format_vector(
    vector: Sequence[Fraction],
    window: FiltrationWindow,
    gens: tuple,
    field: ScalarField,
) -> str:
    from .presentation import format_element

    terms = {window.basis[c]: x for c, x in enumerate(vector) if x}
    return format_element(terms, gens, field)
