"""Quiver Grassmannians Gr_e(M): F_p point counts and Euler characteristics."""

from __future__ import annotations

from typing import Callable

from . import ffalg
from .ffalg import BudgetExceeded, gaussian_binomial
from .qpoly import DEFAULT_PRIMES, QPoly, interpolate
from .reps import Rep

__all__ = ["QPoly", "count_submodules", "submodules", "grassmann_poly", "euler_char",
           "grassmannian_degree_bound"]


def grassmannian_degree_bound(dims, e) -> int:
    """Dimension of the ambient product of ordinary Grassmannians."""
    return sum(x * (d - x) for x, d in zip(e, dims))


def _vertex_plan(M: Rep):
    q = M.quiver
    order = list(reversed(q.sink_order))  # sources first
    inner = [v for v in order if not q.is_sink(v)]
    sinks = [v for v in order if q.is_sink(v)]
    incoming = {v: [(a, s) for a, (s, t) in enumerate(q.arrows) if t == v] for v in q.vertices}
    return inner, sinks, incoming


def _forced_span(M: Rep, v: int, chosen, incoming):
    """RREF basis of the sum of images of the already chosen U_s, s -> v."""
    p = M.p
    rows = []
    for a, s in incoming[v]:
        for b in chosen[s]:
            img = ffalg.matvec(M.maps[a], b, p)
            if any(img):
                rows.append(img)
    if not rows:
        return [], []
    return ffalg.rref(rows, p, M.dims[v - 1])


def _containing(M: Rep, v: int, W, piv, k: int, budget: int):
    """Subspaces U of M_v with W <= U and dim U = k."""
    m = M.dims[v - 1]
    p = M.p
    free = [c for c in range(m) if c not in set(piv)]
    for S in ffalg.subspaces(len(free), k - len(W), p, budget):
        rows = [list(r) for r in W]
        for srow in S:
            row = [0] * m
            for c, x in zip(free, srow):
                row[c] = x
            rows.append(row)
        yield ffalg.rref(rows, p, m)[0] if rows else []


def _check(M: Rep, e):
    if len(e) != M.quiver.n or any(x < 0 or x > d for x, d in zip(e, M.dims)):
        raise ValueError(f"need 0 <= e <= dim M, got e={tuple(e)} for dim {M.dims}")


def _estimate(M: Rep, e, vertices) -> int:
    est = 1
    for v in vertices:
        est *= gaussian_binomial(M.dims[v - 1], e[v - 1], M.p)
    return est


def count_submodules(M: Rep, e, p: int | None = None,
                     budget: int = ffalg.DEFAULT_SUBSPACE_BUDGET) -> int:
    """|Gr_e(M)(F_p)|: tuples U_v <= M_v, dim U_v = e_v, closed under the arrows.

    Vertices are visited sources first; each U_v must contain the images of
    the earlier choices, so only subspaces of the quotient are enumerated.
    Sinks impose no further constraint and contribute a Gaussian binomial.
    """
    if p is not None and p != M.p:
        raise ValueError("representation is defined over a different prime")
    e = tuple(e)
    _check(M, e)
    inner, sinks, incoming = _vertex_plan(M)
    est = _estimate(M, e, inner)
    if est > budget:
        raise BudgetExceeded(f"Gr_{e} enumeration estimate {est} exceeds budget {budget}", est)
    chosen = {}

    def rec(i):
        if i == len(inner):
            total = 1
            for v in sinks:
                W, piv = _forced_span(M, v, chosen, incoming)
                k = e[v - 1]
                if len(W) > k:
                    return 0
                total *= gaussian_binomial(M.dims[v - 1] - len(W), k - len(W), M.p)
            return total
        v = inner[i]
        W, piv = _forced_span(M, v, chosen, incoming)
        k = e[v - 1]
        if len(W) > k:
            return 0
        acc = 0
        for U in _containing(M, v, W, piv, k, budget):
            chosen[v] = U
            acc += rec(i + 1)
        chosen.pop(v, None)
        return acc

    return rec(0)


def submodules(M: Rep, e, budget: int = ffalg.DEFAULT_SUBSPACE_BUDGET):
    """Yield every point of Gr_e(M) as a list of RREF bases, one per vertex."""
    e = tuple(e)
    _check(M, e)
    inner, sinks, incoming = _vertex_plan(M)
    est = _estimate(M, e, inner + sinks)
    if est > budget:
        raise BudgetExceeded(f"Gr_{e} enumeration estimate {est} exceeds budget {budget}", est)
    order = inner + sinks
    chosen = {}

    def rec(i):
        if i == len(order):
            yield [chosen[v] for v in M.quiver.vertices]
            return
        v = order[i]
        W, piv = _forced_span(M, v, chosen, incoming)
        k = e[v - 1]
        if len(W) > k:
            return
        for U in _containing(M, v, W, piv, k, budget):
            chosen[v] = U
            yield from rec(i + 1)
        chosen.pop(v, None)

    yield from rec(0)


def grassmann_poly(family: Callable[[int], Rep], e, primes=DEFAULT_PRIMES,
                   budget: int = ffalg.DEFAULT_SUBSPACE_BUDGET) -> QPoly:
    """Point count of Gr_e(M) as a polynomial in q.

    ``family(p)`` must return the same module realized over F_p.
    """
    e = tuple(e)
    dims = family(2).dims
    bound = grassmannian_degree_bound(dims, e)
    return interpolate(lambda p: count_submodules(family(p), e, budget=budget), bound, primes)


def euler_char(family: Callable[[int], Rep], e, primes=DEFAULT_PRIMES) -> int:
    """chi(Gr_e(M)), the point-count polynomial evaluated at q = 1."""
    return grassmann_poly(family, e, primes).chi()
