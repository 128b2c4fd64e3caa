"""Hilbert-type growth invariants of the standard filtration.

For an algebra with an n-variable PBW basis the degree-k slice has dimension
C(n+k-1, k).  This module packages that as a Hilbert series (closed form
1/(1-t)^n plus an exact truncation), a Hilbert polynomial of degree n-1
(computed two independent ways that must agree), and the growth dimension
n = 1 + deg of the polynomial, together with an empirical estimator that
measures the growth of powers of a finite-dimensional generating frame and
fits the growth exponent by least squares on a log-log scale.

All series and polynomial arithmetic is exact (integers and Fractions);
floating point enters only in the logarithms of the estimator fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Optional, Sequence, Union

from .grading import filtration_window, rref
from .presentation import AlgebraPresentation, specialize_presentation
from .rewrite import NCPoly, deglex_key, nc_mul
from .scalars import SpecializationError

__all__ = [
    "HilbertData",
    "Frame",
    "GkEstimate",
    "hilbert_function",
    "hilbert_series",
    "hilbert_polynomial",
    "format_polynomial",
    "ggk_exact",
    "ggk_estimate",
]


# ---------------------------------------------------------------------------
# Hilbert function / series / polynomial
# ---------------------------------------------------------------------------

_FUNCTION_CHECK_CAP = 10_000
_POLYNOMIAL_CHECK_RANGE = 50


@dataclass
class HilbertData:
    """Exact growth data of an n-variable PBW algebra.

    ``truncated_coefficients[k]`` is the dimension of the degree-k slice for
    k up to the chosen bound; the closed form of the generating series is
    1/(1-t)^n.  ``polynomial_coefficients`` lists the Hilbert polynomial's
    exact rational coefficients, constant term first (``None`` only in the
    degenerate zero-variable case); it evaluates to the coefficient list on
    every truncated index, its coefficients are strictly positive, and its
    degree is n - 1.
    """

    n: int
    series_denominator_exponent: int
    truncated_coefficients: tuple
    polynomial_coefficients: Optional[tuple]

    @property
    def ggk(self) -> int:
        return self.n

    def polynomial_value(self, k: int) -> Fraction:
        if self.polynomial_coefficients is None:
            raise ValueError("no polynomial in the zero-variable case")
        return _eval_poly(self.polynomial_coefficients, k)

    def to_dict(self) -> dict:
        if self.polynomial_coefficients is None:
            polynomial = None
        else:
            denominator = math.factorial(self.n - 1)
            polynomial = {
                "denominator": denominator,
                "numerator_coefficients": [
                    int(c * denominator) for c in self.polynomial_coefficients
                ],
            }
        exponent = self.series_denominator_exponent
        return {
            "n": self.n,
            "series": "1" if exponent == 0 else f"1/(1-t)^{exponent}",
            "coefficients": list(self.truncated_coefficients),
            "polynomial": polynomial,
            "ggk": self.ggk,
        }


def _eval_poly(coeffs: Sequence[Fraction], k: int) -> Fraction:
    value = Fraction(0)
    for c in reversed(coeffs):
        value = value * k + c
    return value


def _expand_series(n: int, bound: int) -> list[int]:
    """Power-series coefficients of 1/(1-t)^n up to degree ``bound``.

    Multiplies the geometric series in one at a time (each factor turns the
    coefficient list into its running sums), so the result is independent of
    the binomial formula it is checked against.
    """
    coeffs = [1] + [0] * bound
    for _ in range(n):
        running = 0
        for k in range(bound + 1):
            running += coeffs[k]
            coeffs[k] = running
    return coeffs


def hilbert_function(presentation: AlgebraPresentation, k: int) -> int:
    """Dimension C(n+k-1, k) of the degree-k slice of the PBW basis.

    Small values are cross-checked against a literal count of exponent
    vectors; a disagreement means the package is broken and raises.
    """
    if k < 0:
        raise ValueError(f"degree must be >= 0, got {k}")
    n = presentation.n
    if n == 0:
        return 1 if k == 0 else 0
    value = comb(n + k - 1, k)
    if value <= _FUNCTION_CHECK_CAP:
        from .grading import _monomials_of_degree

        counted = len(_monomials_of_degree(n, k))
        if counted != value:
            raise RuntimeError(
                "internal consistency failure: counted "
                f"{counted} degree-{k} monomials in {n} variables, formula says {value}"
            )
    return value


def hilbert_series(presentation: AlgebraPresentation, K: int) -> HilbertData:
    """Series data truncated at degree ``K`` plus the Hilbert polynomial.

    The truncation of the closed form 1/(1-t)^n (expanded as an actual power
    series) must equal the per-degree dimensions exactly; the polynomial part
    is attached whenever n >= 1.
    """
    if K < 0:
        raise ValueError(f"truncation bound must be >= 0, got {K}")
    n = presentation.n
    coefficients = tuple(hilbert_function(presentation, k) for k in range(K + 1))
    expanded = tuple(_expand_series(n, K))
    if expanded != coefficients:
        raise RuntimeError(
            "internal consistency failure: series expansion "
            f"{expanded} != dimension sequence {coefficients} for n={n}"
        )
    polynomial = _gp_coefficients(presentation) if n >= 1 else None
    data = HilbertData(n, n, coefficients, polynomial)
    if polynomial is not None:
        for k, c in enumerate(coefficients):
            if data.polynomial_value(k) != c:
                raise RuntimeError(
                    "internal consistency failure: polynomial value at "
                    f"k={k} is {data.polynomial_value(k)}, dimension is {c}"
                )
    return data


def hilbert_polynomial(presentation: AlgebraPresentation) -> HilbertData:
    """Hilbert polynomial of degree n-1, built two independent ways.

    Route one assembles the coefficients from the elementary symmetric
    polynomials of the integers {1-n, ..., -1}; route two expands the
    product (t+1)(t+2)...(t+n-1) directly.  Both are divided by (n-1)! and
    must agree exactly; the result must evaluate to C(n+k-1, k) for every
    k in 0..50 and have strictly positive coefficients.
    """
    if presentation.n < 1:
        raise ValueError("the Hilbert polynomial needs at least one variable")
    return hilbert_series(presentation, _POLYNOMIAL_CHECK_RANGE)


def _elementary_symmetric(values: Sequence[int]) -> list[int]:
    """e_0, e_1, ..., e_len of the given values, by the one-at-a-time rule."""
    es = [1] + [0] * len(values)
    for count, v in enumerate(values, start=1):
        for r in range(count, 0, -1):
            es[r] += v * es[r - 1]
    return es


def _falling_product(n: int) -> list[int]:
    """Integer coefficients of (t+1)(t+2)...(t+n-1), constant term first."""
    coeffs = [1]
    for i in range(1, n):
        shifted = [0] + coeffs
        coeffs = [i * c for c in coeffs] + [0]
        coeffs = [a + b for a, b in zip(coeffs, shifted)]
    return coeffs


def _gp_coefficients(presentation: AlgebraPresentation) -> tuple:
    n = presentation.n
    values = list(range(1 - n, 0))
    es = _elementary_symmetric(values)
    denominator = math.factorial(n - 1)
    via_symmetric = [
        Fraction((-1) ** r * es[r], denominator) for r in range(n - 1, -1, -1)
    ]
    via_product = [Fraction(c, denominator) for c in _falling_product(n)]
    if via_symmetric != via_product:
        raise RuntimeError(
            "internal consistency failure: symmetric-function route "
            f"{via_symmetric} != product route {via_product} for n={n}"
        )
    if len(via_product) != n or any(c <= 0 for c in via_product):
        raise RuntimeError(
            f"internal consistency failure: malformed polynomial {via_product} for n={n}"
        )
    return tuple(via_product)


def format_polynomial(coefficients: Sequence[Fraction]) -> str:
    """Render exact rational polynomial coefficients (constant first).

    Clears denominators, prints highest degree first, and wraps multi-term
    numerators as "(...)/(common denominator)" — e.g. "(t^2 + 3*t + 2)/2".
    """
    denominator = 1
    for c in coefficients:
        denominator = denominator * c.denominator // math.gcd(denominator, c.denominator)
    numerators = [int(c * denominator) for c in coefficients]
    parts: list[str] = []
    for power in range(len(numerators) - 1, -1, -1):
        value = numerators[power]
        if not value:
            continue
        if power == 0:
            body = str(abs(value))
        else:
            t = "t" if power == 1 else f"t^{power}"
            body = t if abs(value) == 1 else f"{abs(value)}*{t}"
        if not parts:
            parts.append(body if value > 0 else f"-{body}")
        else:
            parts.append(f"{' + ' if value > 0 else ' - '}{body}")
    rendered = "".join(parts) or "0"
    if denominator == 1:
        return rendered
    if len([v for v in numerators if v]) > 1:
        return f"({rendered})/{denominator}"
    return f"{rendered}/{denominator}"


# ---------------------------------------------------------------------------
# growth dimension: exact value and empirical estimator
# ---------------------------------------------------------------------------


def ggk_exact(presentation: AlgebraPresentation) -> int:
    """The growth dimension: the variable count n, equal to 1 + deg(Gp)."""
    n = presentation.n
    if n == 0:
        return 0
    data = hilbert_polynomial(presentation)
    degree = len(data.polynomial_coefficients) - 1
    if n != 1 + degree:
        raise RuntimeError(
            f"internal consistency failure: n={n} but 1 + deg(Gp) = {1 + degree}"
        )
    return n


@dataclass(frozen=True)
class Frame:
    """A finite-dimensional generating subspace, given by a spanning basis.

    The span must contain 1 and the basis must stay linearly independent
    under the active specialization; both are enforced when the frame is
    used by the estimator.
    """

    basis: tuple

    def __post_init__(self) -> None:
        if not self.basis:
            raise ValueError("a frame needs at least one basis element")


@dataclass
class GkEstimate:
    """Fit report of the growth estimator.

    ``estimate`` is the least-squares slope of ln f(k) against ln k over the
    sample points, where f(k) is the dimension of the k-th power of the
    frame; ``pointwise`` lists log_k f(k) at the same points.  ``method``
    records how f was computed: "closed_form" (default frame),
    "window_power" (frame spans a full filtration window), or "span_growth"
    (literal iterated products).
    """

    estimate: float
    method: str
    k_max: int
    sample_points: tuple
    dims: tuple
    pointwise: tuple
    specialization: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "method": self.method,
            "k_max": self.k_max,
            "samples": [
                {"k": k, "dim": dim, "log_k_dim": pw}
                for k, dim, pw in zip(self.sample_points, self.dims, self.pointwise)
            ],
            "specialization": (
                None
                if self.specialization is None
                else {name: str(v) for name, v in sorted(self.specialization.items())}
            ),
        }


def sample_points(k_max: int) -> tuple:
    """Dyadic anchors {k_max, k_max/2, k_max/4} plus an arithmetic tail.

    The tail spaces six steps evenly between k_max/4 and k_max, so large k
    dominate the fit.
    """
    quarter = k_max // 4
    points = {k_max, k_max // 2, quarter}
    for i in range(7):
        points.add(quarter + round(i * (k_max - quarter) / 6))
    return tuple(sorted(p for p in points if p >= 1))


def _fit_slope(points: Sequence[int], dims: Sequence[int]) -> float:
    xs = [math.log(k) for k in points]
    ys = [math.log(d) for d in dims]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    sxx = sum((x - mean_x) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("need at least two distinct sample points")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return sxy / sxx


def _pointwise(points: Sequence[int], dims: Sequence[int]) -> tuple:
    out = []
    for k, d in zip(points, dims):
        if k <= 1:
            out.append(float("nan"))
        else:
            out.append(math.log(d) / math.log(k))
    return tuple(out)


_GROWTH_DIMENSION_CAP = 3_000


def ggk_estimate(
    presentation: AlgebraPresentation,
    frame: Optional[Frame] = None,
    k_max: int = 200,
    specialization: Optional[Mapping[str, Union[Fraction, int]]] = None,
) -> GkEstimate:
    """Empirical growth exponent from the dimensions of frame powers.

    With the default frame (span of 1 and the generators) the k-th power is
    the full degree-k window, so f(k) = C(n+k, k) in closed form.  A custom
    frame whose span is a full window F_D likewise gives f(k) = C(n+kD, kD):
    products of k window-D monomials reach every monomial of degree kD, one
    commutation at a time, because leading coefficients stay invertible.
    Any other frame is grown literally — S_{k+1} = span of (frame element) *
    (row of S_k) — which is exact but only affordable while the ambient
    window stays small; past the cap a ValueError explains the options.
    """
    if k_max < 8:
        raise ValueError(f"k_max must be >= 8, got {k_max}")
    n = presentation.n
    if n == 0:
        raise ValueError("the growth estimator needs at least one variable")
    points = sample_points(k_max)

    if frame is None:
        dims = tuple(comb(n + k, k) for k in points)
        return GkEstimate(
            _fit_slope(points, dims), "closed_form", k_max, points, dims,
            _pointwise(points, dims),
        )

    spec_pres, full = specialize_presentation(presentation, specialization)
    field = presentation.field
    basis: list[NCPoly] = []
    for element in frame.basis:
        terms = {}
        for exp, coeff in element.terms.items():
            value = field.specialize(coeff, full)
            if value:
                terms[exp] = value
        basis.append(NCPoly(terms))
    degree = max((b.degree() for b in basis if b), default=0)
    if any(not b for b in basis):
        raise SpecializationError(
            "frame basis degenerates to zero under the specialization "
            f"{_spec_summary(full)}; try a different specialization"
        )

    window = filtration_window(spec_pres, int(degree))
    coords = []
    for b in basis:
        row = [Fraction(0)] * window.dimension
        for exp, coeff in b.terms.items():
            row[window.index_of(exp)] = coeff
        coords.append(row)
    rows, pivots = rref(coords)
    if len(rows) != len(basis):
        raise SpecializationError(
            "frame basis is linearly dependent under the specialization "
            f"{_spec_summary(full)}; try a different specialization"
        )
    unit = [Fraction(0)] * window.dimension
    unit[window.index_of((0,) * n)] = Fraction(1)
    residual = list(unit)
    for row, col in zip(rows, pivots):
        if residual[col]:
            factor = residual[col]
            residual = [a - factor * b for a, b in zip(residual, row)]
    if any(residual):
        raise ValueError("the frame span must contain 1")

    if len(rows) == window.dimension and degree >= 1:
        d = int(degree)
        dims = tuple(comb(n + k * d, k * d) for k in points)
        return GkEstimate(
            _fit_slope(points, dims), "window_power", k_max, points, dims,
            _pointwise(points, dims), dict(full),
        )

    dims_all = _span_growth(spec_pres, basis, int(degree), k_max)
    dims = tuple(dims_all[k] for k in points)
    return GkEstimate(
        _fit_slope(points, dims), "span_growth", k_max, points, dims,
        _pointwise(points, dims), dict(full),
    )


def _spec_summary(full: Mapping) -> str:
    return "{" + ", ".join(f"{k}={v}" for k, v in sorted(full.items())) + "}"


def _span_growth(
    spec_pres: AlgebraPresentation,
    basis: Sequence[NCPoly],
    degree: int,
    k_max: int,
) -> dict:
    """Literal frame-power dimensions f(1..k_max) by iterated products.

    Subspaces are held as reduced sparse rows pivoted on their leading
    monomial; each round multiplies the frame into the rows added last
    round (earlier rows were already absorbed).  Dimensions are exact.
    """
    n = spec_pres.n
    ambient = comb(n + degree * k_max, n) if degree else 1
    if ambient > _GROWTH_DIMENSION_CAP:
        raise ValueError(
            f"span growth would track a window of dimension {ambient} "
            f"(> {_GROWTH_DIMENSION_CAP}); lower k_max or use a frame that "
            "spans a full filtration window, which has a closed form"
        )
    pivots: dict = {}

    def insert(terms: dict) -> Optional[dict]:
        row = dict(terms)
        while row:
            lead = max(row, key=deglex_key)
            hit = pivots.get(lead)
            if hit is None:
                factor = row[lead]
                if factor != 1:
                    row = {e: c / factor for e, c in row.items()}
                pivots[lead] = row
                return row
            factor = row[lead]
            for e, c in hit.items():
                value = row.get(e, Fraction(0)) - factor * c
                if value:
                    row[e] = value
                else:
                    row.pop(e, None)
        return None

    frontier: list[dict] = []
    for b in basis:
        added = insert(b.terms)
        if added is not None:
            frontier.append(added)
    dims = {1: len(pivots)}
    for k in range(2, k_max + 1):
        fresh: list[dict] = []
        for b in basis:
            if b.degree() == 0:
                continue
            for row in frontier:
                product = nc_mul(spec_pres, b, NCPoly(dict(row)))
                added = insert(product.terms)
                if added is not None:
                    fresh.append(added)
        frontier = fresh
        dims[k] = len(pivots)
        if not frontier:
            for rest in range(k + 1, k_max + 1):
                dims[rest] = len(pivots)
            break
    return dims
