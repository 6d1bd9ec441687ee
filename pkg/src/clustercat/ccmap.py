"""The cluster character X: objects of C_Q -> Laurent polynomials in x_1..x_n."""

from __future__ import annotations

from itertools import product

from .category import CCObject, ClusterCategory
from .grassmannian import euler_char
from .laurent import LaurentPoly
from .quiver import Vector


def _submodule_dims(d: Vector):
    return product(*(range(x + 1) for x in d))


def gr_euler(cat: ClusterCategory, root: Vector, e) -> int:
    """chi(Gr_e(M)) for the indecomposable M of dimension ``root`` (cached)."""
    cache = cat.cache.setdefault("gr_chi", {})
    key = (tuple(root), tuple(e))
    if key not in cache:
        cache[key] = euler_char(lambda p: cat.engine.indecomposable(root, p), e, cat.primes)
    return cache[key]


def x_indecomposable_module(cat: ClusterCategory, root: Vector) -> LaurentPoly:
    """sum_e chi(Gr_e(M)) prod_i x_i^(-<e, a_i> - <a_i, d - e>)."""
    q = cat.quiver
    d = tuple(root)
    acc = {}
    for e in _submodule_dims(d):
        chi = gr_euler(cat, d, e)
        if not chi:
            continue
        rest = tuple(a - b for a, b in zip(d, e))
        exp = tuple(-q.euler_form(e, q.unit(i)) - q.euler_form(q.unit(i), rest)
                    for i in q.vertices)
        acc[exp] = acc.get(exp, 0) + chi
    return LaurentPoly(q.n, acc)


def x_indecomposable_module_tau(cat: ClusterCategory, root: Vector) -> LaurentPoly:
    """Same character with exponents written as <a_i, Phi(e) - d + e>.

    Used as an independent check of the Euler-form bookkeeping.
    """
    q = cat.quiver
    d = tuple(root)
    acc = {}
    for e in _submodule_dims(d):
        chi = gr_euler(cat, d, e)
        if not chi:
            continue
        phi = q.coxeter(e, 1)
        v = tuple(a - b + c for a, b, c in zip(phi, d, e))
        exp = tuple(q.euler_form(q.unit(i), v) for i in q.vertices)
        acc[exp] = acc.get(exp, 0) + chi
    return LaurentPoly(q.n, acc)


def x_of(cat: ClusterCategory, obj: CCObject) -> LaurentPoly:
    """X_M, multiplicative on direct sums, with X_{SP_i} = x_i."""
    cache = cat.cache.setdefault("x", {})
    if obj in cache:
        return cache[obj]
    n = cat.n
    out = LaurentPoly.one(n)
    for z, mult in obj.summands():
        if z.sp:
            base = LaurentPoly.variable(z.only_vertex(), n)
        else:
            key = CCObject.indec_module(z.only_root())
            if key not in cache:
                cache[key] = x_indecomposable_module(cat, z.only_root())
            base = cache[key]
        out = out * base ** mult
    cache[obj] = out
    return out


def denominator_vector(x: LaurentPoly) -> Vector:
    return x.denominator()


def expected_denominator(cat: ClusterCategory, obj: CCObject) -> Vector:
    """dim M_0 - (multiplicities of SP_i): the predicted reduced denominator."""
    d = cat.dim_module(obj)
    sp = obj.sp_dict()
    return tuple(x - sp.get(i, 0) for i, x in zip(cat.quiver.vertices, d))


def support(x: LaurentPoly) -> set[Vector]:
    return x.support()


def cone_certificate(cat: ClusterCategory, obj: CCObject, point) -> Vector | None:
    """Some e with 0 <= e <= dim M_0 and point = lambda_M - B e, or None.

    Such an e witnesses membership of ``point`` in the cone at lambda_M
    spanned by the vectors -B(alpha_i).  The sign follows from
    (Be)_i = <e, a_i> - <a_i, e>: the e-term of X_M has exponent lambda_M - Be.
    """
    q = cat.quiver
    lam = cat.lambda_vector(obj)
    target = tuple(b - a for a, b in zip(point, lam))
    for e in _submodule_dims(cat.dim_module(obj)):
        if q.apply_b(e) == target:
            return e
    return None


def check_support_cone(cat: ClusterCategory, obj: CCObject) -> bool:
    """Support of X_M inside the lambda_M-cone, with coefficient 1 at lambda_M."""
    x = x_of(cat, obj)
    if x.coefficient(cat.lambda_vector(obj)) != 1:
        return False
    return all(cone_certificate(cat, obj, s) is not None for s in x.support())
