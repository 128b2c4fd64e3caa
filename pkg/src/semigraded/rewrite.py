"""Normal forms for algebras given by pair relations xj*xi = c*xi*xj + lower.

Every element has a unique expansion over the ordered monomials
x1^a1 * x2^a2 * ... * xn^an.  This module rewrites arbitrary products into
that basis by repeatedly applying the pair relations to inverted adjacent
letters.  Rewriting terminates: each step either lowers total degree (the
lower-order terms of a relation) or moves a smaller generator index leftward
at the same degree, which is a well-founded measure.

The worker is ``x_i * (ordered monomial)``; its results are memoized per
presentation, as are full monomial-pair products, so repeated multiplications
over the same presentation stay cheap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

from .presentation import AlgebraPresentation, format_element

__all__ = [
    "NCPoly",
    "nc_add",
    "nc_scale",
    "nc_mul",
    "nc_pow",
    "variable",
    "constant",
    "monomial",
    "free_to_normal_form",
    "deglex_key",
    "PbwReport",
    "check_pbw",
    "random_element",
]

NEG_INF = float("-inf")


def deglex_key(exponents) -> tuple:
    """Sort key realizing graded lexicographic order with x1 > x2 > ... > xn."""
    return (sum(exponents), exponents)


class NCPoly:
    """An element in normal form: ordered-monomial exponent vector -> scalar.

    Instances never store zero coefficients.  Addition and negation are
    coefficient-wise; multiplication depends on the presentation and lives in
    :func:`nc_mul`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping) -> None:
        self.terms = {exp: c for exp, c in terms.items() if c}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            cur = out.get(exp)
            s = c if cur is None else cur + c
            if s:
                out[exp] = s
            else:
                del out[exp]
        return NCPoly(out)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self) -> "NCPoly":
        return NCPoly({exp: -c for exp, c in self.terms.items()})

    def degree(self):
        """Total degree; the zero element reports -inf."""
        if not self.terms:
            return NEG_INF
        return max(sum(exp) for exp in self.terms)

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex leading monomial."""
        if not self.terms:
            raise ValueError("zero element has no leading term")
        exp = max(self.terms, key=deglex_key)
        return exp, self.terms[exp]

    def sorted_terms(self) -> list:
        """Terms in printing order: graded-lex descending."""
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def scale(self, c) -> "NCPoly":
        if not c:
            return NCPoly({})
        return NCPoly({exp: c * v for exp, v in self.terms.items()})

    def __repr__(self) -> str:
        return f"NCPoly({self.terms!r})"


def nc_add(p: NCPoly, q: NCPoly) -> NCPoly:
    return p + q


def nc_scale(p: NCPoly, c) -> NCPoly:
    return p.scale(c)


def variable(presentation: AlgebraPresentation, index: int) -> NCPoly:
    exp = [0] * presentation.n
    exp[index] = 1
    return NCPoly({tuple(exp): presentation.field.one})


def constant(presentation: AlgebraPresentation, value) -> NCPoly:
    c = presentation.field.coerce(value)
    if not c:
        return NCPoly({})
    return NCPoly({(0,) * presentation.n: c})


def monomial(presentation: AlgebraPresentation, exponents, coeff=None) -> NCPoly:
    c = presentation.field.one if coeff is None else presentation.field.coerce(coeff)
    return NCPoly({tuple(exponents): c})


# ---------------------------------------------------------------------------
# rewriting engine
# ---------------------------------------------------------------------------


class _Engine:
    def __init__(self, presentation: AlgebraPresentation) -> None:
        p = presentation
        self.n = p.n
        self.one = p.field.one
        self.rules = {}
        for (i, j), rel in p.relations.items():
            sparse = tuple((k, s) for k, s in enumerate(rel.linear) if s)
            self.rules[(i, j)] = (rel.c, sparse, rel.constant, rel.is_default(p.field))
        self._var: dict = {}
        self._pair: dict = {}

    # x_index * (ordered monomial) in normal form.  Cached results are
    # immutable; all accumulation happens in fresh dicts.
    def var_times_monomial(self, index: int, beta: tuple) -> dict:
        key = (index, beta)
        cached = self._var.get(key)
        if cached is not None:
            return cached
        first = -1
        for m, e in enumerate(beta):
            if e:
                first = m
                break
        if first < 0 or index <= first:
            exp = list(beta)
            exp[index] += 1
            result = {tuple(exp): self.one}
            self._var[key] = result
            return result
        j = first
        shrunk = list(beta)
        shrunk[j] -= 1
        beta1 = tuple(shrunk)
        c, linear, const, default = self.rules[(j, index)]
        tail = self.var_times_monomial(index, beta1)
        if default:
            result = self.var_times_poly(j, tail)
        else:
            out: dict = {}
            for exp, cf in self.var_times_poly(j, tail).items():
                _acc(out, exp, c * cf)
            for k, d in linear:
                for exp, cf in self.var_times_monomial(k, beta1).items():
                    _acc(out, exp, d * cf)
            if const:
                _acc(out, beta1, const)
            result = out
        self._var[key] = result
        return result

    def var_times_poly(self, index: int, terms: Mapping) -> dict:
        out: dict = {}
        for exp, cf in terms.items():
            for exp2, c2 in self.var_times_monomial(index, exp).items():
                _acc(out, exp2, cf * c2)
        return out

    def monomial_product(self, alpha: tuple, beta: tuple) -> dict:
        key = (alpha, beta)
        cached = self._pair.get(key)
        if cached is not None:
            return cached
        result = {beta: self.one}
        for i in range(self.n - 1, -1, -1):
            for _ in range(alpha[i]):
                result = self.var_times_poly(i, result)
        self._pair[key] = result
        return result

    def product(self, p_terms: Mapping, q_terms: Mapping) -> dict:
        out: dict = {}
        for alpha, ca in p_terms.items():
            for beta, cb in q_terms.items():
                cab = ca * cb
                for gamma, cg in self.monomial_product(alpha, beta).items():
                    _acc(out, gamma, cab * cg)
        return out

    def word_normal_form(self, word: tuple) -> dict:
        result = {(0,) * self.n: self.one}
        for letter in reversed(word):
            result = self.var_times_poly(letter, result)
        return result


def _acc(out: dict, exp: tuple, val) -> None:
    cur = out.get(exp)
    if cur is None:
        if val:
            out[exp] = val
    else:
        s = cur + val
        if s:
            out[exp] = s
        else:
            del out[exp]


def _engine(presentation: AlgebraPresentation) -> _Engine:
    caches = presentation.runtime_caches()
    eng = caches.get("engine")
    if eng is None:
        eng = _Engine(presentation)
        caches["engine"] = eng
    return eng


def nc_mul(presentation: AlgebraPresentation, p: NCPoly, q: NCPoly) -> NCPoly:
    """Product in normal form.  deg(pq) <= deg(p) + deg(q)."""
    return NCPoly(_engine(presentation).product(p.terms, q.terms))


def nc_pow(presentation: AlgebraPresentation, p: NCPoly, k: int) -> NCPoly:
    if k < 0:
        raise ValueError("negative powers are not defined for elements")
    result = constant(presentation, 1)
    for _ in range(k):
        result = nc_mul(presentation, result, p)
    return result


def free_to_normal_form(presentation: AlgebraPresentation, free: Mapping) -> NCPoly:
    """Normal form of a free-word combination {word tuple: scalar}."""
    eng = _engine(presentation)
    out: dict = {}
    for word, coeff in free.items():
        for exp, c in eng.word_normal_form(word).items():
            _acc(out, exp, coeff * c)
    return NCPoly(out)


# ---------------------------------------------------------------------------
# confluence evidence
# ---------------------------------------------------------------------------


@dataclass
class PbwReport:
    """Outcome of bounded-degree consistency checks for a presentation.

    ``ok`` means every generator triple reassociated identically and all
    sampled random triples did too.  This is evidence at the checked degrees,
    not a proof for all degrees.
    """

    ok: bool
    triples_checked: int
    sample_triples_checked: int
    degree_bound: int
    seed: int
    failures: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "triples_checked": self.triples_checked,
            "sample_triples_checked": self.sample_triples_checked,
            "degree_bound": self.degree_bound,
            "seed": self.seed,
            "failures": list(self.failures),
        }


def random_element(
    presentation: AlgebraPresentation,
    rng: random.Random,
    max_degree: int = 3,
    max_terms: int = 2,
) -> NCPoly:
    """Sparse random element: up to max_terms monomials of degree <= max_degree
    with small nonzero integer coefficients."""
    n = presentation.n
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(0, max_degree)
        exp = [0] * n
        for _ in range(degree):
            exp[rng.randrange(n)] += 1
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[tuple(exp)] = presentation.field.from_int(coeff)
    return NCPoly(terms)


def check_pbw(
    presentation: AlgebraPresentation,
    degree_bound: int = 3,
    samples: int = 20,
    seed: int = 0,
) -> PbwReport:
    """Associativity/confluence evidence for the rewrite rules.

    Re-associates every generator triple x_k, x_j, x_i (k > j > i) — the
    critical overlaps — and additionally ``samples`` random element triples of
    degree <= degree_bound.  Any mismatch is reported with the two normal
    forms; a presentation whose relations are not mutually consistent fails
    here with a concrete witness.
    """
    p = presentation
    gens = p.gens
    failures: list = []
    triples = 0
    for i in range(p.n):
        for j in range(i + 1, p.n):
            for k in range(j + 1, p.n):
                triples += 1
                xi, xj, xk = (variable(p, t) for t in (i, j, k))
                left = nc_mul(p, nc_mul(p, xk, xj), xi)
                right = nc_mul(p, xk, nc_mul(p, xj, xi))
                if left != right:
                    failures.append({
                        "kind": "overlap",
                        "triple": f"({gens[k]}, {gens[j]}, {gens[i]})",
                        "left": format_element(left.terms, gens, p.field),
                        "right": format_element(right.terms, gens, p.field),
                    })
    rng = random.Random(seed)
    sampled = 0
    for _ in range(samples):
        a = random_element(p, rng, max_degree=degree_bound)
        b = random_element(p, rng, max_degree=degree_bound)
        c = random_element(p, rng, max_degree=degree_bound)
        sampled += 1
        left = nc_mul(p, nc_mul(p, a, b), c)
        right = nc_mul(p, a, nc_mul(p, b, c))
        if left != right:
            failures.append({
                "kind": "random",
                "triple": " ; ".join(
                    format_element(t.terms, gens, p.field) for t in (a, b, c)
                ),
                "left": format_element(left.terms, gens, p.field),
                "right": format_element(right.terms, gens, p.field),
            })
    return PbwReport(
        ok=not failures,
        triples_checked=triples,
        sample_triples_checked=sampled,
        degree_bound=degree_bound,
        seed=seed,
        failures=failures,
    )
