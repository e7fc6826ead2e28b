"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is a map from exponent vectors to nonzero
:class:`fractions.Fraction` coefficients, tied to a :class:`VarContext`
that fixes the variable order. Terms are ordered by graded
lexicographic order (total degree first, then lexicographic with the
first context variable most significant).

Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from operator import add
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Rational = Fraction
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class PolyError(Exception):
    """Base class for polynomial arithmetic errors."""


class ContextMismatch(PolyError):
    pass


class DivisionByZero(PolyError, ZeroDivisionError):
    pass


class NotDivisible(PolyError):
    """Raised by :func:`exact_div` when the remainder is nonzero."""

    def __init__(self, remainder: "Polynomial", quotient: "Polynomial"):
        self.remainder = remainder
        self.quotient = quotient
        super().__init__(f"not divisible, remainder {remainder}")


class IncompletePoint(PolyError):
    pass


class UnknownVariable(PolyError):
    pass


class _MinusInfinity:
    """Degree of the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MINUS_INFINITY"

    def __reduce__(self):
        return (_MinusInfinity, ())


MINUS_INFINITY = _MinusInfinity()


class VarContext:
    """An ordered tuple of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarContext({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"variable {name!r} not in {self!r}") from None

    def extend(self, names: Iterable[str]) -> "VarContext":
        """Return a context with ``names`` appended (existing ones skipped)."""
        extra = [n for n in names if n not in self._index]
        if not extra:
            return self
        return VarContext(self.names + tuple(dict.fromkeys(extra)))

    def var(self, name: str) -> "Polynomial":
        return Polynomial.variable(self, name)

    def vars(self) -> Tuple["Polynomial", ...]:
        return tuple(Polynomial.variable(self, n) for n in self.names)

    def const(self, c: Scalar) -> "Polynomial":
        return Polynomial.constant(self, c)


def _coeff(c) -> Scalar:
    """Integers stay ``int``; other rationals become reduced ``Fraction``."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _quo(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if not r else Fraction(a, b)
    return _coeff(Fraction(a) / b)


def grlex_key(m: Monomial):
    return (sum(m), m)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(add, a, b))


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple([y - x for x, y in zip(a, b)])


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping[Monomial, Scalar] = None):
        self.ctx = ctx
        clean: Dict[Monomial, Fraction] = {}
        n = len(ctx)
        for m, c in (terms or {}).items():
            if len(m) != n:
                raise ValueError(f"monomial {m} does not match context of {n} variables")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            if c:
                clean[tuple(m)] = _coeff(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx: VarContext, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        # caller guarantees canonical terms (no zeros, int or Fraction coefficients)
        p = cls.__new__(cls)
        p.ctx = ctx
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, ctx: VarContext) -> "Polynomial":
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx: VarContext, c: Scalar) -> "Polynomial":
        c = _coeff(c)
        return cls._raw(ctx, {(0,) * len(ctx): c} if c else {})

    @classmethod
    def variable(cls, ctx: VarContext, name: str) -> "Polynomial":
        i = ctx.index(name)
        m = [0] * len(ctx)
        m[i] = 1
        return cls._raw(ctx, {tuple(m): 1})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        """Coefficients as ``Fraction`` values keyed by exponent vector."""
        return {m: Fraction(c) for m, c in self._terms.items()}

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        """Coefficient of the monomial 1."""
        return Fraction(self._terms.get((0,) * len(self.ctx), 0))

    def degree(self):
        if not self._terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self._terms)

    def degree_in(self, name: str):
        i = self.ctx.index(name)
        if not self._terms:
            return MINUS_INFINITY
        return max(m[i] for m in self._terms)

    def variables(self) -> Tuple[str, ...]:
        """Names of the variables that actually occur, in context order."""
        used = [False] * len(self.ctx)
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.ctx.names, used) if u)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # -- context handling -------------------------------------------------

    def embed(self, ctx: VarContext) -> "Polynomial":
        """Re-express in a context containing every variable of ours."""
        if ctx is self.ctx or ctx == self.ctx:
            return self if ctx is self.ctx else Polynomial._raw(ctx, self._terms)
        missing = [n for n in self.ctx.names if n not in ctx]
        used = set(self.variables())
        if any(n in used for n in missing):
            raise ContextMismatch(f"cannot embed {self.ctx!r} into {ctx!r}")
        pos = [(ctx.index(n) if n in ctx else None) for n in self.ctx.names]
        width = len(ctx)
        out = {}
        for m, c in self._terms.items():
            nm = [0] * width
            for i, e in enumerate(m):
                if e:
                    nm[pos[i]] = e
            out[tuple(nm)] = c
        return Polynomial._raw(ctx, out)

    def _coerce(self, other) -> Tuple["Polynomial", "Polynomial"]:
        if isinstance(other, Polynomial):
            if other.ctx is self.ctx or other.ctx == self.ctx:
                return self, other
            mine, theirs = set(self.ctx.names), set(other.ctx.names)
            if mine <= theirs:
                return self.embed(other.ctx), other
            if theirs <= mine:
                return self, other.embed(self.ctx)
            raise ContextMismatch(f"{self.ctx!r} and {other.ctx!r} are incompatible")
        if isinstance(other, (int, Fraction)):
            return self, Polynomial.constant(self.ctx, other)
        return NotImplemented, NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        out = dict(a._terms)
        for m, c in b._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v if isinstance(v, int) else _coeff(v)
                else:
                    del out[m]
        return Polynomial._raw(a.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        c = _coeff(c)
        if not c:
            return Polynomial.zero(self.ctx)
        if isinstance(c, int):
            return Polynomial._raw(self.ctx, {m: v * c for m, v in self._terms.items()})
        return Polynomial._raw(self.ctx, {m: _coeff(v * c) for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        if len(a._terms) < len(b._terms):
            a, b = b, a
        bt = list(b._terms.items())
        if len(bt) == 1 and not any(bt[0][0]):
            return a.scale(bt[0][1])
        out: Dict[Monomial, Fraction] = {}
        get = out.get
        if len(a.ctx) == 1:
            # univariate: accumulate on bare exponents, the common hot path
            acc: Dict[int, Fraction] = {}
            aget = acc.get
            bt1 = [(mb[0], cb) for mb, cb in bt]
            for (ea,), ca in a._terms.items():
                for eb, cb in bt1:
                    e = ea + eb
                    acc[e] = aget(e, 0) + ca * cb
            out = {(e,): c for e, c in acc.items()}
        else:
            for ma, ca in a._terms.items():
                for mb, cb in bt:
                    m = tuple(map(add, ma, mb))
                    out[m] = get(m, 0) + ca * cb
        return Polynomial._raw(a.ctx, {m: _coeff(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        try:
            a, b = self._coerce(other)
        except ContextMismatch:
            return False
        return a._terms == b._terms

    def __hash__(self):
        if self._hash is None:
            # context-independent so that embedded copies hash alike
            named = frozenset(
                (tuple((n, e) for n, e in zip(self.ctx.names, m) if e), c)
                for m, c in self._terms.items()
            )
            self._hash = hash(named)
        return self._hash

    def __str__(self):
        from .polyparse import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


# -- module-level operations ----------------------------------------------


def ring_ops(a: Polynomial, b: Polynomial, op: str = "mul") -> Polynomial:
    """Apply a named ring operation: ``add``, ``sub``, ``mul`` or ``pow``.

    For ``pow`` the second argument is a nonnegative integer.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown ring operation {op!r}")


def substitute(
    p: Polynomial,
    assignment: Mapping[str, Union[Polynomial, Scalar]],
    ctx: VarContext = None,
) -> Polynomial:
    """Ring homomorphism sending each assigned variable to its image.

    Unassigned variables map to themselves. The result lives in ``ctx``
    if given, otherwise in the context of the images, extended by any
    unassigned variables of ``p`` that it lacks.
    """
    images = {k: v for k, v in assignment.items() if isinstance(v, Polynomial)}
    if ctx is None:
        ctx = None
        for img in images.values():
            if ctx is None or set(ctx.names) < set(img.ctx.names):
                ctx = img.ctx
        if ctx is None:
            ctx = p.ctx
        keep = [n for n in p.variables() if n not in assignment]
        ctx = ctx.extend(keep)
    for name in assignment:
        p.ctx.index(name)

    width = len(ctx)
    imgs = []
    for i, name in enumerate(p.ctx.names):
        if name in assignment:
            v = assignment[name]
            if isinstance(v, Polynomial):
                imgs.append(v.embed(ctx))
            else:
                imgs.append(Polynomial.constant(ctx, v))
        else:
            imgs.append(None)

    # variables that map to themselves are handled by shifting exponents
    ident_pos = [ctx.index(n) if imgs[i] is None else None for i, n in enumerate(p.ctx.names)]
    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in powers:
            if e == 1:
                powers[key] = imgs[i]
            else:
                half = power(i, e // 2)
                sq = half * half
                powers[key] = sq * imgs[i] if e % 2 else sq
        return powers[key]

    # group terms by their substituted part to share products
    groups: Dict[Monomial, Dict[Monomial, Fraction]] = {}
    for m, c in p._terms.items():
        sub_part = tuple(e if imgs[i] is not None else 0 for i, e in enumerate(m))
        kept = [0] * width
        for i, e in enumerate(m):
            if e and imgs[i] is None:
                kept[ident_pos[i]] += e
        groups.setdefault(sub_part, {})[tuple(kept)] = c

    acc: Dict[Monomial, Fraction] = {}
    for sub_part, kept_terms in groups.items():
        factor = Polynomial.constant(ctx, 1)
        for i, e in enumerate(sub_part):
            if e:
                factor = factor * power(i, e)
        multiplier = Polynomial._raw(ctx, kept_terms)
        prod = factor * multiplier
        for m, c in prod._terms.items():
            acc[m] = acc.get(m, 0) + c
    return Polynomial._raw(ctx, {m: _coeff(c) for m, c in acc.items() if c})


def _divide(f: Polynomial, g: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Single-divisor division in graded-lex order: returns (q, r)."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    f, g = f._coerce(g)
    ctx = f.ctx
    lm, lc = g.leading_term()
    rest = [(m, c) for m, c in g._terms.items() if m != lm]
    work = dict(f._terms)
    heap = [(-sum(m), tuple(-e for e in m), m) for m in work]
    heapq.heapify(heap)
    quot: Dict[Monomial, Fraction] = {}
    rem: Dict[Monomial, Fraction] = {}
    while heap:
        _, _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue  # stale heap entry or cancelled term
        if _mono_divides(lm, m):
            qm = _mono_div(m, lm)
            qc = _quo(c, lc)
            quot[qm] = qc
            for gm, gc in rest:
                nm = _mono_mul(qm, gm)
                v = work.get(nm)
                if v is None:
                    work[nm] = _coeff(-qc * gc)
                    heapq.heappush(heap, (-sum(nm), tuple(-e for e in nm), nm))
                else:
                    v -= qc * gc
                    if v:
                        work[nm] = _coeff(v)
                    else:
                        del work[nm]
        else:
            rem[m] = c
    return Polynomial._raw(ctx, quot), Polynomial._raw(ctx, rem)


def divmod_poly(f: Polynomial, g: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Quotient and remainder of single-divisor graded-lex division."""
    return _divide(f, g)


def exact_div(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return ``q`` with ``f == q * g`` or raise :class:`NotDivisible`.

    With a single divisor, a zero remainder is equivalent to divisibility:
    if ``g`` divides ``f`` every intermediate remainder is a multiple of
    ``g`` and so has a leading monomial divisible by that of ``g``.
    """
    q, r = _divide(f, g)
    if r:
        raise NotDivisible(r, q)
    return q


def evaluate(p: Polynomial, point: Mapping[str, Scalar]) -> Fraction:
    """Exact value of ``p`` at a rational point."""
    used = p.variables()
    missing = [n for n in used if n not in point]
    if missing:
        raise IncompletePoint(f"no value for {', '.join(missing)}")
    vals = [_coeff(point[n]) if n in point else 0 for n in p.ctx.names]
    idx = [i for i, n in enumerate(p.ctx.names) if n in used]
    cache: Dict[Tuple[int, int], Fraction] = {}
    total = 0
    for m, c in p._terms.items():
        term = c
        for i in idx:
            e = m[i]
            if e:
                key = (i, e)
                v = cache.get(key)
                if v is None:
                    v = cache[key] = vals[i] ** e
                term *= v
        total += term
    return Fraction(total)


def derivative(p: Polynomial, v: str) -> Polynomial:
    """Formal partial derivative with respect to ``v``."""
    i = p.ctx.index(v)
    out = {}
    for m, c in p._terms.items():
        e = m[i]
        if e:
            nm = list(m)
            nm[i] = e - 1
            out[tuple(nm)] = _coeff(c * e)
    return Polynomial._raw(p.ctx, out)


def rename(p: Polynomial, mapping: Mapping[str, str], ctx: VarContext = None) -> Polynomial:
    """Rename variables (a substitution by variables, done monomial-wise)."""
    names = [mapping.get(n, n) for n in p.ctx.names]
    if ctx is None:
        ctx = VarContext(dict.fromkeys(names))
    pos = [ctx.index(n) for n in names]
    width = len(ctx)
    out: Dict[Monomial, Fraction] = {}
    for m, c in p._terms.items():
        nm = [0] * width
        for i, e in enumerate(m):
            if e:
                nm[pos[i]] += e
        key = tuple(nm)
        out[key] = out.get(key, 0) + c
    return Polynomial._raw(ctx, {m: _coeff(c) for m, c in out.items() if c})


def univariate(coeffs: Sequence[Scalar], ctx: VarContext, name: str) -> Polynomial:
    """Build ``sum(coeffs[k] * name**k)``."""
    i = ctx.index(name)
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            m = [0] * len(ctx)
            m[i] = k
            out[tuple(m)] = _coeff(c)
    return Polynomial._raw(ctx, out)
