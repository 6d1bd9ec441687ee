"""Linear forms epsilon, epsilon-leading terms, the lambda-fan and toric leading terms.

With (Be)_i = <e, a_i> - <a_i, e>, the e-term of X_M sits at lambda_M - Be,
and epsilon(B a_i) < 0 makes every such term strictly larger in epsilon than
lambda_M.  So the leading term of X_M for the filtration by epsilon is its
epsilon-minimal support point, and that is what :func:`graded_leading` returns.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .category import CCObject, ClusterCategory
from .laurent import LaurentPoly
from .mutation import exchange_graph, initial_seed
from .quiver import Quiver, Vector

EPSILON_CAP = 16
EPSILON_SEARCH_BUDGET = 2_000_000


@dataclass(frozen=True)
class EpsilonForm:
    coeffs: tuple[int, ...]

    def __call__(self, v) -> int:
        return sum(a * b for a, b in zip(self.coeffs, v))

    def valid_for(self, q: Quiver) -> bool:
        return all(self(q.apply_b(q.unit(i))) < 0 for i in q.vertices)

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def find_epsilon(q: Quiver, cap: int = EPSILON_CAP,
                 budget: int = EPSILON_SEARCH_BUDGET) -> EpsilonForm | None:
    """An integer form with epsilon(B a_i) < 0 for every i, or None.

    Tries the source-negative, sink-positive pattern first (it works for
    alternating orientations), then boxes of growing radius.
    """
    if all(q.is_source(i) or q.is_sink(i) for i in q.vertices):
        eps = EpsilonForm(tuple(-1 if q.is_source(i) else 1 for i in q.vertices))
        if eps.valid_for(q):
            return eps
    tried = 0
    for r in range(1, cap + 1):
        for v in product(range(-r, r + 1), repeat=q.n):
            if max(map(abs, v)) != r:
                continue
            tried += 1
            if tried > budget:
                return None
            eps = EpsilonForm(v)
            if eps.valid_for(q):
                return eps
    return None


@dataclass(frozen=True)
class LeadingTerm:
    point: Vector
    coefficient: int
    tied: bool


def graded_leading(p: LaurentPoly, eps: EpsilonForm) -> LeadingTerm:
    """The epsilon-minimal support point (ties: lex-largest) and its coefficient."""
    if not p:
        raise ValueError("the zero polynomial has no leading term")
    best = min(eps(e) for e, _ in p.terms)
    tops = [(e, c) for e, c in p.terms if eps(e) == best]
    e, c = max(tops)
    return LeadingTerm(e, c, len(tops) > 1)


def order_key(eps: EpsilonForm):
    """Sort key realizing the total order used for leading-term elimination."""
    return lambda e: (eps(e), tuple(-x for x in e))


# -- exact rational linear algebra ----------------------------------------------

def solve_rational(A, b) -> list[Fraction] | None:
    """Unique solution of the square system A a = b, or None if A is singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def determinant(A) -> Fraction:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


# -- the lambda fan ---------------------------------------------------------------

def tilting_cones(cat: ClusterCategory) -> list[tuple[CCObject, list[Vector]]]:
    out = []
    for t in cat.tilting_objects():
        out.append((t, [cat.lambda_vector(z) for z, _ in t.summands()]))
    return out


def fan_check(cat: ClusterCategory, samples: int = 200, seed: int = 0,
              radius: int = 1000) -> dict:
    """Each random lattice point lies in exactly one tilting lambda-cone."""
    rng = random.Random(seed)
    cones = tilting_cones(cat)
    columns = {}
    simplicial = True
    for t, lams in cones:
        A = [[lams[k][i] for k in range(len(lams))] for i in range(cat.n)]
        if determinant(A) == 0:
            simplicial = False
        columns[t] = A
    unique = boundary = 0
    failures = []
    done = 0
    while done < samples:
        v = [rng.randint(-radius, radius) for _ in range(cat.n)]
        if not any(v):
            continue
        hits, on_boundary = [], False
        for t, A in columns.items():
            a = solve_rational(A, v)
            if a is None or any(x < 0 for x in a):
                continue
            if any(x == 0 for x in a):
                on_boundary = True
                break
            hits.append(t)
        if on_boundary:
            boundary += 1
            continue
        done += 1
        if len(hits) == 1:
            unique += 1
        else:
            failures.append({"point": v, "cones": len(hits)})
    return {"samples": samples, "unique_cone_hits": unique, "boundary_resamples": boundary,
            "cones": len(cones), "simplicial": simplicial, "failures": failures,
            "ok": simplicial and unique == samples}


def exceptional_objects_in_cones(cat: ClusterCategory, radius: int,
                                 mult_cap: int = 8) -> dict[CCObject, Vector]:
    """Exceptional objects (sums of compatible indecomposables) with |lambda| <= radius.

    Built from tilting objects and multiplicities, independently of
    :meth:`ClusterCategory.exceptional_from_lambda`.
    """
    out = {}
    for t, lams in tilting_cones(cat):
        summands = [z for z, _ in t.summands()]
        for mults in product(range(mult_cap + 1), repeat=len(summands)):
            lam = tuple(sum(m * l[i] for m, l in zip(mults, lams)) for i in range(cat.n))
            if max(map(abs, lam)) > radius:
                continue
            obj = CCObject()
            for m, z in zip(mults, summands):
                if m:
                    obj = obj + z.times(m)
            out[obj] = lam
    return out


# -- toric leading terms with principal coefficients ----------------------------------

def lifted_leading(p: LaurentPoly, eps: EpsilonForm, rank: int) -> list[tuple[Vector, int]]:
    """Terms of p whose first ``rank`` exponents are epsilon-minimal."""
    best = min(eps(e[:rank]) for e, _ in p.terms)
    return [(e, c) for e, c in p.terms if eps(e[:rank]) == best]


def toric_leading_check(q: Quiver, eps: EpsilonForm | None = None) -> dict:
    """Every lifted cluster variable has a single leading monomial with coefficient 1."""
    eps = eps or find_epsilon(q)
    if eps is None:
        raise ValueError(f"no epsilon form for {q}")
    n = q.n
    graph = exchange_graph(initial_seed(q, "principal"))
    bad, projected_ok = [], True
    for x in sorted(graph.variables):
        lead = lifted_leading(x, eps, n)
        if len(lead) != 1 or lead[0][1] != 1:
            bad.append(x.to_json())
            continue
        plain = graded_leading(x.truncate_vars(n), eps)
        if plain.point != lead[0][0][:n] or plain.coefficient != 1:
            projected_ok = False
    return {"epsilon": eps.to_json(), "variables": len(graph.variables),
            "non_unitary": bad, "projection_compatible": projected_ok,
            "ok": not bad and projected_ok}
