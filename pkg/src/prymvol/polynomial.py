"""Sparse multivariate polynomials with exact rational coefficients.

Variables are strings (edge ids). Terms are stored as a dict from dense
exponent tuples over a sorted variable tuple to nonzero coefficients, which are
kept as ``int`` whenever they are integral and as ``Fraction`` otherwise.
Terms are listed in graded lexicographic order: higher total degree first,
then lexicographically larger exponent vectors over the sorted variables.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

from .errors import NotDivisibleError, ParseError

Coeff = int | Fraction


def _norm(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _cdiv(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _norm(Fraction(a) / b)


def _remap(terms: dict, old: tuple[str, ...], new: tuple[str, ...]) -> dict:
    if old == new:
        return terms
    pos = [new.index(v) for v in old]
    width = len(new)
    out = {}
    for exps, c in terms.items():
        dense = [0] * width
        for i, k in zip(pos, exps):
            dense[i] = k
        out[tuple(dense)] = c
    return out


def _order_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial; supports ``+ - *``, ``**`` and exact division."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Coeff] | None = None,
                 variables: Iterable[str] = ()):
        self.variables = tuple(variables)
        if list(self.variables) != sorted(set(self.variables)):
            raise ValueError("variables must be sorted and distinct")
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(self.variables):
                raise ValueError("exponent vector length does not match variables")
            c = _norm(c)
            if c:
                clean[tuple(exps)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, variables: tuple[str, ...]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw({}, ())

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(): c} if c else {}, ())

    @classmethod
    def var(cls, name: str, coeff=1) -> "MultiPoly":
        coeff = _norm(Fraction(coeff))
        return cls._raw({(1,): coeff} if coeff else {}, (name,))

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff=1) -> "MultiPoly":
        powers = {v: k for v, k in powers.items() if k}
        if any(k < 0 for k in powers.values()):
            raise ValueError("negative exponent")
        variables = tuple(sorted(powers))
        coeff = _norm(Fraction(coeff))
        return cls._raw({tuple(powers[v] for v in variables): coeff} if coeff else {}, variables)

    @classmethod
    def from_terms(cls, items: Iterable[tuple[object, Mapping[str, int]]]) -> "MultiPoly":
        """Build from ``(coeff, {var: exponent})`` pairs; like terms are combined."""
        items = list(items)
        variables = tuple(sorted({v for _, mono in items for v, k in mono.items() if k}))
        terms: dict = {}
        for coeff, mono in items:
            exps = tuple(mono.get(v, 0) for v in variables)
            terms[exps] = terms.get(exps, 0) + _norm(Fraction(coeff))
        return cls({e: c for e, c in terms.items() if c}, variables)

    # -- inspection ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def trimmed(self) -> "MultiPoly":
        used = self.used_variables()
        if used == self.variables:
            return self
        keep = [i for i, v in enumerate(self.variables) if v in used]
        return MultiPoly._raw({tuple(e[i] for i in keep): c for e, c in self.terms.items()}, used)

    def sorted_terms(self) -> list[tuple[Coeff, dict[str, int]]]:
        """Terms in graded lex order as ``(coeff, {var: exponent})``."""
        p = self.trimmed()
        out = []
        for exps in sorted(p.terms, key=_order_key, reverse=True):
            out.append((p.terms[exps], {v: k for v, k in zip(p.variables, exps) if k}))
        return out

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, powers: Mapping[str, int]) -> Coeff:
        p = self.trimmed()
        if any(k and v not in p.variables for v, k in powers.items()):
            return 0
        exps = tuple(powers.get(v, 0) for v in p.variables)
        return p.terms.get(exps, 0)

    def coefficients(self) -> list[Coeff]:
        return [c for c, _ in self.sorted_terms()]

    def leading_term(self) -> tuple[Coeff, dict[str, int]]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return MultiPoly.constant(x)
        raise TypeError(f"cannot combine MultiPoly with {type(x).__name__}")

    def _aligned(self, other: "MultiPoly"):
        if self.variables == other.variables:
            return self.terms, other.terms, self.variables
        variables = tuple(sorted(set(self.variables) | set(other.variables)))
        return (_remap(self.terms, self.variables, variables),
                _remap(other.terms, other.variables, variables), variables)

    def __add__(self, other) -> "MultiPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b, variables = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, variables)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other) -> "MultiPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, k) -> "MultiPoly":
        k = _norm(Fraction(k)) if not isinstance(k, int) else k
        if not k:
            return MultiPoly.zero()
        return MultiPoly._raw({e: _norm(c * k) for e, c in self.terms.items()}, self.variables)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b, variables = self._aligned(other)
        out: dict = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw({e: _norm(c) for e, c in out.items() if c}, variables)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / other)
        if isinstance(other, MultiPoly):
            return exact_div(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return a == b

    def __hash__(self) -> int:
        if self._hash is None:
            p = self.trimmed()
            self._hash = hash((p.variables, frozenset(p.terms.items())))
        return self._hash

    # -- evaluation ------------------------------------------------------
    def eval(self, assignment: Mapping[str, object]) -> Fraction:
        """Exact value at a rational point; every used variable must be assigned."""
        p = self.trimmed()
        missing = [v for v in p.variables if v not in assignment]
        if missing:
            raise KeyError(f"no value for variable(s) {', '.join(missing)}")
        values = [Fraction(assignment[v]) for v in p.variables]
        total = Fraction(0)
        for exps, c in p.terms.items():
            t = Fraction(c)
            for x, k in zip(values, exps):
                if k:
                    t *= x ** k
            total += t
        return total

    def subs(self, assignment: Mapping[str, object]) -> "MultiPoly":
        """Substitute numbers for some variables, keeping the others symbolic."""
        out = MultiPoly.zero()
        for c, mono in self.sorted_terms():
            coeff = Fraction(c)
            rest = {}
            for v, k in mono.items():
                if v in assignment:
                    coeff *= Fraction(assignment[v]) ** k
                else:
                    rest[v] = k
            out = out + MultiPoly.monomial(rest, coeff)
        return out

    def common_denominator(self) -> int:
        d = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        return d

    # -- rendering -------------------------------------------------------
    def __str__(self) -> str:
        items = self.sorted_terms()
        if not items:
            return "0"
        parts = []
        for i, (c, mono) in enumerate(items):
            factors = [v if k == 1 else f"{v}^{k}" for v, k in mono.items()]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    def to_json(self) -> list:
        """Term list ``[[coeff, {var: exp}], ...]`` in canonical order."""
        return [[str(c), mono] for c, mono in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list) -> "MultiPoly":
        try:
            return cls.from_terms((Fraction(str(c)), dict(m)) for c, m in data)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from exc

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Inverse of ``str``: e.g. ``"8*e1*e3 - 3/2*e2^2 + 1"``."""
        src = text.replace(" ", "")
        if not src:
            raise ParseError("empty polynomial")
        if src[0] not in "+-":
            src = "+" + src
        chunks = re.findall(r"[+-][^+-]+", src)
        if "".join(chunks) != src:
            raise ParseError(f"cannot parse polynomial {text!r}")
        items = []
        for chunk in chunks:
            sign = -1 if chunk[0] == "-" else 1
            coeff = Fraction(sign)
            mono: dict[str, int] = {}
            for factor in chunk[1:].split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                m = re.fullmatch(r"([A-Za-z_][\w.]*)(?:\^(\d+))?", factor)
                if not m:
                    raise ParseError(f"bad factor {factor!r} in {text!r}")
                mono[m.group(1)] = mono.get(m.group(1), 0) + int(m.group(2) or 1)
            items.append((coeff, mono))
        return cls.from_terms(items)


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return ``r`` with ``p == q * r``; raise :class:`NotDivisibleError` otherwise.

    Multivariate division by leading terms in graded lex order, with a heap
    tracking the current leading monomial of the remainder.
    """
    p, q = MultiPoly._coerce(p), MultiPoly._coerce(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a, b, variables = p._aligned(q)
    lead = max(b, key=_order_key)
    lead_c = b[lead]
    rest = [(e, c) for e, c in b.items() if e != lead]
    rem = dict(a)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quotient: dict = {}
    while heap:
        _, neg = heapq.heappop(heap)
        exps = tuple(-x for x in neg)
        c = rem.pop(exps, 0)
        if not c:
            continue
        shift = tuple([x - y for x, y in zip(exps, lead)])
        if min(shift, default=0) < 0:
            raise NotDivisibleError(f"{p} is not divisible by {q}")
        t = _cdiv(c, lead_c)
        quotient[shift] = t
        for e2, c2 in rest:
            m = tuple([x + y for x, y in zip(shift, e2)])
            old = rem.get(m)
            new = (old or 0) - t * c2
            if new:
                rem[m] = _norm(new)
                if old is None:
                    heapq.heappush(heap, (-sum(m), tuple(-x for x in m)))
            elif old is not None:
                del rem[m]
    return MultiPoly._raw(quotient, variables)


def det(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Determinant of a square matrix of polynomials by fraction-free elimination.

    Rational coefficients are cleared first so that the Bareiss steps divide
    integer polynomials.
    """
    n = len(matrix)
    if n == 0:
        return MultiPoly.constant(1)
    rows = [[MultiPoly._coerce(x) for x in row] for row in matrix]
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    scale = 1
    for row in rows:
        for x in row:
            scale = lcm(scale, x.common_denominator())
    if scale != 1:
        rows = [[x.scale(scale) for x in row] for row in rows]
    sign = 1
    prev = MultiPoly.constant(1)
    for k in range(n - 1):
        if rows[k][k].is_zero():
            for i in range(k + 1, n):
                if not rows[i][k].is_zero():
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero()
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            for j in range(k + 1, n):
                num = pivot * rows[i][j]
                if not rik.is_zero() and not rows[k][j].is_zero():
                    num = num - rik * rows[k][j]
                rows[i][j] = num if prev == 1 else exact_div(num, prev)
        prev = pivot
    result = rows[n - 1][n - 1]
    if sign < 0:
        result = -result
    if scale != 1:
        result = result.scale(Fraction(1, scale ** n))
    return result
