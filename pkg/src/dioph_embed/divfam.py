"""Polynomial families with simultaneous divisibility conditions.

Given distinct constants C_1..C_m, :func:`build_families` produces
H_1..H_m and P_m with H_k(x1..xk) dividing P_m - C_k for every k. The
construction is inductive: shifting every variable by u * Q_m, where Q_m
is the product of the P_m - C_k, keeps P_m - C_k a factor of the shifted
polynomial and leaves a cofactor that becomes the next H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .polyring import NotDivisible, Polynomial, VarContext, exact_div, substitute

DEFAULT_SIZE_CAP = 3


class DivFamilyError(Exception):
    pass


class DegenerateConstants(DivFamilyError):
    pass


class SizeLimitExceeded(DivFamilyError):
    pass


def var_names(m: int) -> List[str]:
    return [f"x{i}" for i in range(1, m + 1)]


def _shift(P: Polynomial, Q: Polynomial, u: str) -> Tuple[Polynomial, Polynomial]:
    """Return (P(x + u Q), R) with P(x + u Q) = P + Q R."""
    base = P.ctx if set(Q.ctx.names) <= set(P.ctx.names) else Q.ctx
    if u in base or u in P.ctx or u in Q.ctx:
        raise ValueError(f"shift variable {u!r} is not fresh")
    ctx = base.extend(P.ctx.names).extend([u])
    Pe, Qe = P.embed(ctx), Q.embed(ctx)
    uQ = Polynomial.variable(ctx, u) * Qe
    shifted = substitute(Pe, {x: Polynomial.variable(ctx, x) + uQ for x in ctx.names if x != u}, ctx)
    if Qe.is_zero():
        return shifted, Polynomial.zero(ctx)
    try:
        R = exact_div(shifted - Pe, Qe)
    except NotDivisible as exc:  # the shift identity is a theorem
        raise AssertionError(f"shift identity failed: remainder {exc.remainder}") from exc
    return shifted, R


def shift_decompose(P: Polynomial, Q: Polynomial, u: str = "u") -> Polynomial:
    """R such that P(x_1 + uQ, ..., x_n + uQ) = P + Q * R."""
    return _shift(P, Q, u)[1]


@dataclass(frozen=True)
class DivFamily:
    constants: Tuple[Fraction, ...]
    H: Tuple[Polynomial, ...]
    P: Polynomial
    varnames: Tuple[str, ...]
    term_counts: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def m(self) -> int:
        return len(self.constants)

    def certificate(self, k: int) -> Polynomial:
        """The quotient (P - C_k) / H_k, 1-based ``k``."""
        return exact_div(self.P - self.constants[k - 1], self.H[k - 1])

    def check(self):
        names = self.varnames
        for k in range(1, self.m + 1):
            self.certificate(k)
            for later in names[k:]:
                if self.H[k - 1].degree_in(later) not in (0,) and not self.H[k - 1].is_zero():
                    raise AssertionError(f"H_{k} depends on {later}")
        last = names[-1]
        if not (self.H[-1].degree_in(last) > 0 and self.P.degree_in(last) > 0):
            raise AssertionError(f"H_{self.m} and P_{self.m} must involve {last}")

    def to_json(self) -> dict:
        from .polyparse import format_polynomial

        return {
            "constants": [_const_str(c) for c in self.constants],
            "H": [format_polynomial(h) for h in self.H],
            "P": format_polynomial(self.P),
        }


def _const_str(c: Fraction):
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def build_families(constants: Sequence) -> DivFamily:
    """Run the inductive construction for the given distinct constants."""
    cs = tuple(Fraction(c) for c in constants)
    if not cs:
        raise ValueError("need at least one constant")
    if len(set(cs)) != len(cs):
        raise DegenerateConstants(f"constants must be pairwise distinct: {list(constants)}")

    names = var_names(len(cs))
    ctx = VarContext(names[:1])
    x1 = Polynomial.variable(ctx, "x1")
    H = [x1]
    P = x1 + cs[0]
    counts = [len(P)]
    for m in range(1, len(cs)):
        Q = Polynomial.constant(ctx, 1)
        for c in cs[: m + 1]:
            Q = Q * (P - c)
        shifted, R = _shift(P, Q, names[m])
        ctx = shifted.ctx
        cofactor = exact_div(Q, P - cs[m])
        H = [h.embed(ctx) for h in H]
        H.append(1 + R * cofactor.embed(ctx))
        P = shifted
        counts.append(len(P))

    fam = DivFamily(cs, tuple(H), P, tuple(names), tuple(counts))
    fam.check()
    return fam


def build_w_phat(n: int, allow_large: bool = False) -> DivFamily:
    """Families with C_k = 3k: W_k = H_k and P-hat = P_n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > DEFAULT_SIZE_CAP and not allow_large:
        raise SizeLimitExceeded(
            f"n={n} exceeds the size cap {DEFAULT_SIZE_CAP}; P-hat degree grows roughly "
            f"as deg P_m * (1 + (m+1) deg P_m) per step"
        )
    return build_families([3 * k for k in range(1, n + 1)])
