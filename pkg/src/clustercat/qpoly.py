"""Integer polynomials in the field size q, recovered from point counts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .ffalg import primes_from

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


class InterpolationError(ArithmeticError):
    """Counts are not an integer polynomial of the expected degree."""


@dataclass(frozen=True)
class QPoly:
    """Dense integer coefficients, constant term first, no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def const(cls, c: int) -> "QPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def chi(self) -> int:
        return sum(self.coeffs)

    def __add__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return QPoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "QPoly") -> "QPoly":
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return QPoly(tuple(out))

    def scale(self, k: int) -> "QPoly":
        return QPoly(tuple(k * c for c in self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def projective_space(d: int) -> QPoly:
    """Point count of P^(d-1), i.e. (q^d - 1)/(q - 1)."""
    return QPoly((1,) * d)


def lagrange(points: Iterable[tuple[int, int]]) -> list[Fraction]:
    """Exact coefficients of the interpolating polynomial through ``points``."""
    points = list(points)
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    return coeffs


def interpolate(count: Callable[[int], int], degree: int,
                primes: Iterable[int] = DEFAULT_PRIMES, check: bool = True) -> QPoly:
    """Recover an integer polynomial of degree <= ``degree`` from F_p counts.

    Uses ``degree + 1`` primes (extending the list if needed), asserts integer
    coefficients and, when ``check`` is set, agreement at one further prime.
    """
    chosen = _take_primes(primes, degree + 1 + int(check))
    fit, held = chosen[:degree + 1], chosen[degree + 1:]
    coeffs = lagrange((p, count(p)) for p in fit)
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError(f"non-integer interpolation {coeffs} from primes {fit}")
    poly = QPoly(tuple(int(c) for c in coeffs))
    for p in held:
        direct = count(p)
        if poly(p) != direct:
            raise InterpolationError(
                f"held-out prime {p}: polynomial {poly} gives {poly(p)}, count is {direct}")
    return poly


def _take_primes(primes, k: int) -> list[int]:
    chosen = []
    for p in primes:
        if p not in chosen:
            chosen.append(p)
        if len(chosen) == k:
            return chosen
    start = (max(chosen) + 1) if chosen else 2
    for p in primes_from(start):
        if len(chosen) == k:
            break
        chosen.append(p)
    return chosen


def interpolate_many(counts: Callable[[int], dict], degree: int,
                     primes: Iterable[int] = DEFAULT_PRIMES, check: bool = True) -> dict:
    """Like :func:`interpolate` for a family of counts keyed by label.

    ``counts(p)`` returns {label: count}; labels absent at a prime count 0.
    """
    chosen = _take_primes(primes, degree + 1 + int(check))
    fit, held = chosen[:degree + 1], chosen[degree + 1:]
    tables = {p: counts(p) for p in chosen}
    labels = set()
    for t in tables.values():
        labels.update(t)
    out = {}
    for lab in labels:
        coeffs = lagrange((p, tables[p].get(lab, 0)) for p in fit)
        if any(c.denominator != 1 for c in coeffs):
            raise InterpolationError(f"non-integer interpolation for {lab}: {coeffs}")
        poly = QPoly(tuple(int(c) for c in coeffs))
        for p in held:
            if poly(p) != tables[p].get(lab, 0):
                raise InterpolationError(f"held-out prime {p} disagrees for {lab}")
        if poly:
            out[lab] = poly
    return out
