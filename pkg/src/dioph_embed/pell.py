"""Solutions of X^2 - (T^2 - 1) Y^2 = 1 over a polynomial ring.

The solutions form an abelian group under

    (X, Y) o (X', Y') = (X X' + lam Y Y', X Y' + X' Y),   lam = T^2 - 1,

with identity (1, 0) and inverse obtained by negating Y. For nonconstant
T the group is generated by (T, 1) up to sign; ``solution(N)`` returns
its N-th power.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .polyring import Polynomial, divmod_poly, exact_div


class PellError(Exception):
    pass


class InvalidPellPair(PellError):
    pass


class NotPellCanonical(PellError):
    pass


@dataclass(frozen=True)
class PellContext:
    T: Polynomial
    lam: Polynomial = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", self.T * self.T - 1)

    @property
    def ctx(self):
        return self.T.ctx

    def pair(self, X, Y) -> "PellPair":
        return PellPair(_lift(X, self), _lift(Y, self), self)


def _lift(v, pc: PellContext) -> Polynomial:
    if isinstance(v, Polynomial):
        return v
    return Polynomial.constant(pc.ctx, v)


@dataclass(frozen=True)
class PellPair:
    """A solution (X, Y); the Pell identity is checked on construction."""

    X: Polynomial
    Y: Polynomial
    pc: PellContext = field(repr=False, compare=False)

    def __post_init__(self):
        if not is_solution(self.X, self.Y, self.pc):
            raise InvalidPellPair(f"({self.X}, {self.Y}) does not satisfy X^2 - ({self.pc.lam})Y^2 = 1")

    def inverse(self) -> "PellPair":
        return PellPair(self.X, -self.Y, self.pc)

    def __iter__(self):
        return iter((self.X, self.Y))


def is_solution(X: Polynomial, Y: Polynomial, pc: PellContext) -> bool:
    return (X * X - pc.lam * Y * Y - 1).is_zero()


def _compose_raw(a, b, lam):
    X, Y = a
    X2, Y2 = b
    return X * X2 + lam * Y * Y2, X * Y2 + X2 * Y


def compose(a: PellPair, b: PellPair, pc: PellContext) -> PellPair:
    for p in (a, b):
        if not is_solution(p.X, p.Y, pc):
            raise InvalidPellPair(f"({p.X}, {p.Y}) is not a solution for T = {pc.T}")
    X, Y = _compose_raw((a.X, a.Y), (b.X, b.Y), pc.lam)
    return PellPair(X, Y, pc)


def closed_form(N: int, pc: PellContext):
    """(X_N, Y_N) from the binomial sums, for N >= 0."""
    T, lam = pc.T, pc.lam
    one = Polynomial.constant(pc.ctx, 1)
    lam_pow = [one]
    t_pow = [one]
    for _ in range(N):
        t_pow.append(t_pow[-1] * T)
    for _ in range(N // 2):
        lam_pow.append(lam_pow[-1] * lam)
    X = Polynomial.zero(pc.ctx)
    Y = Polynomial.zero(pc.ctx)
    for k in range(N // 2 + 1):
        X = X + lam_pow[k] * t_pow[N - 2 * k] * comb(N, 2 * k)
        if 2 * k + 1 <= N:
            Y = Y + lam_pow[k] * t_pow[N - 1 - 2 * k] * comb(N, 2 * k + 1)
    return X, Y


def recurrence(N: int, pc: PellContext):
    """(X_N, Y_N) by composing with (T, 1) N times, for N >= 0."""
    X = Polynomial.constant(pc.ctx, 1)
    Y = Polynomial.zero(pc.ctx)
    T, lam = pc.T, pc.lam
    for _ in range(N):
        X, Y = T * X + lam * Y, X + T * Y
    return X, Y


def solution(N: int, pc: PellContext) -> PellPair:
    """The N-th power of (T, 1); negative N gives the inverse."""
    n = abs(N)
    X, Y = closed_form(n, pc)
    Xr, Yr = recurrence(n, pc)
    if X != Xr or Y != Yr:
        raise AssertionError(f"closed form and recurrence disagree at N={n}")
    if N < 0:
        Y = -Y
    return PellPair(X, Y, pc)


def residue_mod_Tminus1(p: PellPair, pc: PellContext) -> Fraction:
    """Remainder of Y on division by T - 1, which must be a constant.

    Single-divisor remainders are unique, so Y = q (T - 1) + c with c
    constant is found exactly when it exists.
    """
    if pc.T.is_constant():
        raise NotPellCanonical(f"T = {pc.T} is constant")
    _, r = divmod_poly(p.Y, pc.T - 1)
    if not r.is_constant():
        raise NotPellCanonical(f"Y mod (T - 1) = {r} is not a constant")
    return r.constant_value()


def z_component(p: PellPair, N: int, pc: PellContext) -> Polynomial:
    """The exact quotient (Y - N) / (T - 1)."""
    return exact_div(p.Y - N, pc.T - 1)
