"""Hall polynomials, the multiplication formula, degenerations and r-coefficients."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .category import CCObject, ClusterCategory
from .ccmap import x_of
from .filtration import EpsilonForm, find_epsilon
from .grassmannian import euler_char, grassmannian_degree_bound, submodules
from .laurent import LaurentPoly
from .qpoly import QPoly, interpolate_many
from .reps import IsoType, quotient_rep, subrep

CONVENTIONS = ("cluster_ext", "module_ext")


class ExpansionError(ArithmeticError):
    """Leading-term elimination did not reach zero within the iteration cap."""


# -- classical Hall polynomials -----------------------------------------------------

def hall_table(cat: ClusterCategory, X: IsoType, e) -> dict[tuple[IsoType, IsoType], QPoly]:
    """(quotient, sub) -> number of submodules of X of dimension e with those iso-types."""
    e = tuple(e)
    dims = X.dim(cat.n)
    engine = cat.engine

    def counts(p):
        rep = engine.rep_of(X, p)
        tally = Counter()
        for bases in submodules(rep, e, cat.budget):
            sub = engine.decompose(subrep(rep, bases))
            quo = engine.decompose(quotient_rep(rep, bases))
            tally[(quo, sub)] += 1
        return tally

    return interpolate_many(counts, grassmannian_degree_bound(dims, e), cat.primes)


def hall_polynomial(cat: ClusterCategory, M: IsoType, N: IsoType, X: IsoType) -> QPoly:
    """P^X_{M,N}: submodules Y of X with Y ~ N and X/Y ~ M."""
    n = cat.n
    if tuple(a + b for a, b in zip(M.dim(n), N.dim(n))) != X.dim(n):
        raise ValueError("dim M + dim N must equal dim X")
    return hall_table(cat, X, N.dim(n)).get((M, N), QPoly())


def b_product(cat: ClusterCategory, e_quot, e_sub) -> dict[IsoType, int]:
    """Coefficients of b_{e'} b_e = sum_M (sum_{N', N} P^M_{N', N}(1)) e_M."""
    total = tuple(a + b for a, b in zip(e_quot, e_sub))
    out = {}
    for M in cat.engine.isotypes_of_dim(total):
        table = hall_table(cat, M, e_sub)
        coef = sum(P.chi() for P in table.values())
        if coef:
            out[M] = coef
    return out


def b_product_check(cat: ClusterCategory, e_quot, e_sub) -> bool:
    """b_product agrees with chi(Gr_e(M)) for every M of the right dimension."""
    total = tuple(a + b for a, b in zip(e_quot, e_sub))
    prod = b_product(cat, e_quot, e_sub)
    engine = cat.engine
    for M in engine.isotypes_of_dim(total):
        chi = euler_char(lambda p: engine.rep_of(M, p), e_sub, cat.primes)
        if prod.get(M, 0) != chi:
            return False
    return True


# -- the multiplication formula ------------------------------------------------------------

def verify_multiplication(cat: ClusterCategory, n: CCObject, m: CCObject) -> dict:
    """d X_n X_m = sum_Y (chi P Ext^1(n,m)_Y + chi P Ext^1(m,n)_Y) X_Y, or X_{n+m} if d = 0."""
    d = cat.ext1_dim_cc(n, m)
    lhs = x_of(cat, n) * x_of(cat, m)
    report = {"n": cat.name(n), "m": cat.name(m), "dim": d}
    if d == 0:
        report["ok"] = lhs == x_of(cat, n + m)
        return report
    forward = cat.middle_terms(n, m)
    backward = cat.middle_terms(m, n)
    rhs = LaurentPoly.zero(cat.n)
    for tc in (forward, backward):
        for y, c in tc.chis.items():
            rhs = rhs + x_of(cat, y) * c
    report["ok"] = lhs * d == rhs and forward.partition_ok() and backward.partition_ok()
    for label, tc in (("ext_nm", forward), ("ext_mn", backward)):
        if tc.polys is not None:
            report[label] = {cat.name(y): str(P) for y, P in sorted(tc.polys.items(),
                                                                     key=lambda t: t[0].key())}
        else:
            report[label] = {cat.name(y): c for y, c in sorted(tc.chis.items(),
                                                               key=lambda t: t[0].key())}
    return report


def two_term_identity(cat: ClusterCategory, n: CCObject, m: CCObject) -> bool:
    """For dim Ext^1 = 1: X_n X_m = X_B + X_B' with B, B' the two middle terms."""
    ys = list(cat.middle_terms(n, m).chis) + list(cat.middle_terms(m, n).chis)
    if len(ys) != 2:
        return False
    return x_of(cat, n) * x_of(cat, m) == x_of(cat, ys[0]) + x_of(cat, ys[1])


# -- elementary degenerations and r-coefficients ---------------------------------------------

@dataclass(frozen=True)
class ElementaryStep:
    source: CCObject
    target: CCObject
    pair: tuple[CCObject, CCObject]
    middle: CCObject
    c: int
    z_i: int
    z_j: int


def elementary_degenerations(cat: ClusterCategory, x: CCObject) -> list[ElementaryStep]:
    """Steps x = L + U + V ~> L + E over nonsplit triangles between U and V, both directions."""
    summ = x.summands()
    steps = []
    for a in range(len(summ)):
        for b in range(a + 1, len(summ)):
            (U, zu), (V, zv) = summ[a], summ[b]
            for first, second, z1, z2 in ((U, V, zu, zv), (V, U, zv, zu)):
                # triangles first -> E -> second -> S first
                for E, c in sorted(cat.middle_terms(second, first).chis.items(),
                                   key=lambda t: t[0].key()):
                    target = x - first - second + E
                    steps.append(ElementaryStep(x, target, (first, second), E, c, z1, z2))
    return steps


def _denominator(cat: ClusterCategory, x: CCObject, convention: str) -> Fraction:
    d = cat.ext1_dim_cc(x, x)
    if convention == "cluster_ext":
        return Fraction(d)
    if convention == "module_ext":
        return Fraction(d, 2)
    raise ValueError(f"unknown convention {convention!r}")


def step_ratio(cat: ClusterCategory, step: ElementaryStep, convention: str) -> Fraction:
    return Fraction(step.c * step.z_i * step.z_j) / _denominator(cat, step.source, convention)


def r_all(cat: ClusterCategory, x: CCObject, convention: str) -> dict[CCObject, Fraction]:
    """K -> r(x, K) for every exceptional K reached by degeneration chains from x."""
    memo = cat.cache.setdefault(("r", convention), {})
    if x in memo:
        return memo[x]
    if cat.is_exceptional(x):
        out = {x: Fraction(1)}
    else:
        out = {}
        for step in elementary_degenerations(cat, x):
            ratio = step_ratio(cat, step, convention)
            for k, r in r_all(cat, step.target, convention).items():
                out[k] = out.get(k, Fraction(0)) + ratio * r
        out = {k: r for k, r in out.items() if r}
    memo[x] = out
    return out


def r_coefficient(cat: ClusterCategory, x: CCObject, k: CCObject,
                  convention: str = "module_ext") -> Fraction:
    """Sum over chains x ~> ... ~> k of the products of step ratios; r(k, k) = 1."""
    if not cat.is_exceptional(k):
        raise ValueError("r(x, K) needs an exceptional K")
    if x == k:
        return Fraction(1)
    return r_all(cat, x, convention).get(k, Fraction(0))


def hall_multiply(cat: ClusterCategory, m: CCObject, n: CCObject,
                  convention: str = "module_ext") -> dict[CCObject, Fraction]:
    return dict(r_all(cat, m + n, convention))


# -- basis expansion ----------------------------------------------------------------------------

@dataclass
class BasisExpansion:
    coefficients: dict = field(default_factory=dict)
    steps: int = 0

    def contract(self, cat: ClusterCategory) -> LaurentPoly:
        out = LaurentPoly.zero(cat.n)
        for k, c in self.coefficients.items():
            out = out + x_of(cat, k) * c
        return out

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coefficients.values())

    def to_json(self, cat: ClusterCategory) -> dict:
        return {cat.name(k): str(c) for k, c in sorted(self.coefficients.items(),
                                                        key=lambda t: t[0].key())}


def expand_in_basis(cat: ClusterCategory, p: LaurentPoly, eps: EpsilonForm | None = None,
                    cap: int = 10_000) -> BasisExpansion:
    """Write p as a combination of X_K, K exceptional, by leading-term elimination.

    The leading point is epsilon-minimal (ties: lex-largest); its coefficient
    times X of the exceptional object with that lambda vector is removed.
    """
    eps = eps or cat.cache.get("epsilon") or find_epsilon(cat.quiver)
    if eps is None:
        raise ExpansionError(f"{cat.quiver} admits no epsilon form")
    cat.cache["epsilon"] = eps
    out = BasisExpansion()
    rest = p
    while rest:
        if out.steps >= cap:
            raise ExpansionError("not in span: iteration cap reached")
        low = min(eps(e) for e, _ in rest.terms)
        point, coef = max((e, c) for e, c in rest.terms if eps(e) == low)
        k = cat.exceptional_from_lambda(point)
        rest = rest - x_of(cat, k) * coef
        out.coefficients[k] = out.coefficients.get(k, 0) + coef
        out.steps += 1
    out.coefficients = {k: c for k, c in out.coefficients.items() if c}
    return out


def compare_multiplication(cat: ClusterCategory, m: CCObject, n: CCObject) -> dict:
    """hall_multiply under each convention against the basis expansion of X_m X_n."""
    expansion = expand_in_basis(cat, x_of(cat, m) * x_of(cat, n)).coefficients
    report = {"m": cat.name(m), "n": cat.name(n),
              "expansion": {cat.name(k): str(c) for k, c in expansion.items()}}
    for conv in CONVENTIONS:
        got = hall_multiply(cat, m, n, conv)
        keys = set(got) | set(expansion)
        diff = {cat.name(k): {"r": str(got.get(k, 0)), "expansion": str(expansion.get(k, 0))}
                for k in keys if got.get(k, 0) != expansion.get(k, 0)}
        entry = {"match": not diff, "mismatches": diff}
        if diff:
            entry["chains"] = chain_data(cat, m + n, conv)
        report[conv] = entry
    return report


def chain_data(cat: ClusterCategory, x: CCObject, convention: str, limit: int = 200) -> list:
    """Every chain from x to an exceptional object with its step ratios (truncated)."""
    chains = []

    def walk(obj, path):
        if len(chains) >= limit:
            return
        if cat.is_exceptional(obj):
            chains.append({"chain": [cat.name(o) for o in [x] + [s.target for s in path]],
                           "ratios": [str(step_ratio(cat, s, convention)) for s in path]})
            return
        for step in elementary_degenerations(cat, obj):
            walk(step.target, path + [step])

    walk(x, [])
    return chains


def r_positivity_report(cat: ClusterCategory, bound: int = 2) -> dict:
    """Minimum of r(M, K) over objects with summand multiplicities <= bound."""
    ind = cat.indecomposables
    report = {"bound": bound}
    objects = []
    for mults in product(range(bound + 1), repeat=len(ind)):
        obj = CCObject()
        for k, m in zip(ind, mults):
            if m:
                obj = obj + k.times(m)
        objects.append(obj)
    for conv in CONVENTIONS:
        pairs, low, negatives, fractional = 0, None, [], 0
        for obj in objects:
            for k, r in r_all(cat, obj, conv).items():
                pairs += 1
                low = r if low is None else min(low, r)
                fractional += r.denominator != 1
                if r < 0:
                    negatives.append({"M": cat.name(obj), "K": cat.name(k), "r": str(r)})
        report[conv] = {"pairs_checked": pairs, "min_r": str(low), "nonnegative": not negatives,
                        "negatives": negatives, "non_integral": fractional}
    report["objects"] = len(objects)
    return report
