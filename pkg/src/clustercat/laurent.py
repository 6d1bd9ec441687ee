"""Sparse integer Laurent polynomials in n variables."""

from __future__ import annotations

from fractions import Fraction

Exp = tuple[int, ...]


class DivisionError(ArithmeticError):
    """The divisor does not divide the dividend in the Laurent ring."""


class LaurentPoly:
    """Immutable map exponent vector -> nonzero integer coefficient.

    Terms are kept sorted lexicographically by exponent, which makes the
    tuple of terms a canonical key (equality and hashing use it).
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, mapping=None):
        items = {}
        if mapping:
            pairs = mapping.items() if isinstance(mapping, dict) else mapping
            for exp, c in pairs:
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not have {nvars} entries")
                items[exp] = items.get(exp, 0) + c
        self.nvars = nvars
        self.terms = tuple(sorted((e, c) for e, c in items.items() if c))
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, items: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = tuple(sorted((e, c) for e, c in items.items() if c))
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exp, coef: int = 1) -> "LaurentPoly":
        exp = tuple(exp)
        return cls(len(exp), {exp: coef})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "LaurentPoly":
        """x_i, with i counted from 1."""
        return cls.monomial(tuple(int(j == i - 1) for j in range(nvars)))

    # -- protocol -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.one(self.nvars) * other
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars \
            and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.terms))
        return self._hash

    def __lt__(self, other: "LaurentPoly") -> bool:
        return self.terms < other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, exp) -> int:
        return self.as_dict().get(tuple(exp), 0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.one(self.nvars) * other if other else LaurentPoly(self.nvars)
        if other.nvars != self.nvars:
            raise ValueError("Laurent polynomials in different numbers of variables")
        return other

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly._raw(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly._raw(self.nvars, {e: c * other for e, c in self.terms})
        other = self._coerce(other)
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers need exact division")
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial x^exp."""
        return LaurentPoly._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient in Z[x^{+-1}]; raises DivisionError if not exact.

        Lex order on Z^n is compatible with multiplication, so peeling off
        lex-leading terms recovers the quotient; a quotient term below
        low(self)/low(other), or outside the Newton box, means no exact quotient.
        """
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if len(other.terms) == 1:
            (e0, c0), = other.terms
            out = {}
            for e, c in self.terms:
                if c % c0:
                    raise DivisionError("coefficient not divisible")
                out[tuple(a - b for a, b in zip(e, e0))] = c // c0
            return LaurentPoly._raw(self.nvars, out)
        if not self:
            return LaurentPoly(self.nvars)
        lead_d, lc_d = other.terms[-1]
        low = tuple(a - b for a, b in zip(self.terms[0][0], other.terms[0][0]))
        # Newton polytopes add, so the quotient lives in this box
        lo = [min(e[i] for e, _ in self.terms) - min(e[i] for e, _ in other.terms)
              for i in range(self.nvars)]
        hi = [max(e[i] for e, _ in self.terms) - max(e[i] for e, _ in other.terms)
              for i in range(self.nvars)]
        rem = dict(self.terms)
        quot = {}
        while rem:
            top = max(rem)
            c = rem[top]
            if c % lc_d:
                raise DivisionError("leading coefficient not divisible")
            qe = tuple(a - b for a, b in zip(top, lead_d))
            if qe < low or any(not a <= x <= b for x, a, b in zip(qe, lo, hi)):
                raise DivisionError("no exact Laurent quotient")
            qc = c // lc_d
            quot[qe] = qc
            for e, cd in other.terms:
                k = tuple(a + b for a, b in zip(e, qe))
                v = rem.get(k, 0) - qc * cd
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly._raw(self.nvars, quot)

    # -- substitutions and views ---------------------------------------------

    def evaluate(self, values) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms:
            term = Fraction(c)
            for v, k in zip(values, e):
                term *= Fraction(v) ** k
            total += term
        return total

    def truncate_vars(self, keep: int) -> "LaurentPoly":
        """Set variables keep+1..nvars to 1 and drop them."""
        acc = {}
        for e, c in self.terms:
            k = e[:keep]
            acc[k] = acc.get(k, 0) + c
        return LaurentPoly._raw(keep, acc)

    def extend_vars(self, nvars: int) -> "LaurentPoly":
        pad = (0,) * (nvars - self.nvars)
        return LaurentPoly._raw(nvars, {e + pad: c for e, c in self.terms})

    def support(self) -> set[Exp]:
        return {e for e, _ in self.terms}

    def denominator(self) -> Exp:
        """Componentwise max(0, -exponent): the monomial x^d clearing denominators."""
        d = [0] * self.nvars
        for e, _ in self.terms:
            for i, x in enumerate(e):
                if -x > d[i]:
                    d[i] = -x
        return tuple(d)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def nonnegative(self) -> bool:
        return all(c > 0 for _, c in self.terms)

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "coef": c} for e, c in self.terms]

    @classmethod
    def from_json(cls, data, nvars: int | None = None) -> "LaurentPoly":
        if nvars is None:
            nvars = len(data[0]["exp"]) if data else 0
        return cls(nvars, {tuple(t["exp"]): t["coef"] for t in data})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
