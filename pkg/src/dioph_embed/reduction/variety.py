"""Diophantine instances and the affine varieties built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..divfam import DivFamily, build_w_phat
from ..polyring import Polynomial, VarContext, rename, substitute


class ReductionError(Exception):
    """Semantic errors in reduction inputs."""


class NotIntegral(ReductionError):
    pass


class DimensionTooSmall(ReductionError):
    pass


@dataclass(frozen=True)
class DiophantineInstance:
    """An integer polynomial Q in the variables ``varnames``."""

    Q: Polynomial
    varnames: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.varnames)
        object.__setattr__(self, "varnames", names)
        if not names:
            raise ReductionError("a Diophantine instance needs at least one variable")
        ctx = VarContext(names)
        stray = [v for v in self.Q.variables() if v not in ctx]
        if stray:
            raise ReductionError(f"Q uses undeclared variables {stray}")
        if not self.Q.is_integral():
            raise NotIntegral("Q must have integer coefficients")
        object.__setattr__(self, "Q", self.Q.embed(ctx))

    @property
    def s(self) -> int:
        return len(self.varnames)

    def value(self, N: Sequence[int]) -> int:
        from ..polyring import evaluate

        if len(N) != self.s:
            raise ReductionError(f"expected {self.s} integers, got {len(N)}")
        return evaluate(self.Q, dict(zip(self.varnames, N)))

    def at(self, coords: Sequence[Polynomial]) -> Polynomial:
        """Q with its variables replaced by the given polynomials."""
        return substitute(self.Q, dict(zip(self.varnames, coords)))


@dataclass(frozen=True)
class Coordinate:
    name: str
    role: str


@dataclass(frozen=True)
class VarietyPresentation:
    coordinates: Tuple[Coordinate, ...]
    equations: Tuple[Polynomial, ...]
    meta: Dict[str, object]
    labels: Tuple[str, ...] = ()

    @property
    def ctx(self) -> VarContext:
        return self.equations[0].ctx if self.equations else VarContext(self.names)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.coordinates)

    def validate(self):
        declared = set(self.names)
        for k, eq in enumerate(self.equations):
            extra = set(eq.variables()) - declared
            if extra:
                raise ReductionError(f"equation {k} uses undeclared coordinates {sorted(extra)}")
        nc, ne = expected_counts(self.meta)
        if (len(self.coordinates), len(self.equations)) != (nc, ne):
            raise ReductionError(
                f"expected {nc} coordinates and {ne} equations, "
                f"got {len(self.coordinates)} and {len(self.equations)}"
            )


def expected_counts(meta) -> Tuple[int, int]:
    d = meta["d"]
    if meta["case"] == "real":
        return 5 * d + 2, 3 * d + 2
    e = meta["e"]
    return 5 * d * e + 3 * e, 3 * d * e + 2 * e + d


# -- real case ------------------------------------------------------------


def real_coordinates(d: int) -> List[Coordinate]:
    coords = []
    for i in range(1, d + 1):
        for role in "XYZUV":
            coords.append(Coordinate(f"{role}_{i}", role))
    coords += [Coordinate("T", "T"), Coordinate("S", "S")]
    return coords


def build_real_variety(inst: DiophantineInstance) -> VarietyPresentation:
    """Pell clones sharing T = S^2 + 2, plus Q(V_1, ..., V_s) = 0."""
    d = inst.s
    coords = real_coordinates(d)
    ctx = VarContext(c.name for c in coords)
    v = ctx.var
    T, S = v("T"), v("S")
    eqs, labels = [], []
    for i in range(1, d + 1):
        X, Y, Z, U, V = (v(f"{r}_{i}") for r in "XYZUV")
        eqs += [X * X - (T * T - 1) * Y * Y - 1, Y - (T - 1) * Z - V, V * U - 1]
        labels += [f"pell_{i}", f"residue_{i}", f"unit_{i}"]
    eqs.append(T - S * S - 2)
    labels.append("square")
    eqs.append(inst.at([v(f"V_{i}") for i in range(1, d + 1)]).embed(ctx))
    labels.append("dioph")
    pres = VarietyPresentation(
        tuple(coords), tuple(eqs), {"case": "real", "d": d, "e": None, "n": None}, tuple(labels)
    )
    pres.validate()
    return pres


# -- complex case ---------------------------------------------------------


def complex_layout(s: int) -> Tuple[List[Coordinate], List[str], Dict[str, object]]:
    """Coordinates, equation labels and meta for the complex system at ``s``.

    Available without building the divisibility family, whose size grows
    too fast beyond s = 3.
    """
    if s < 3:
        raise DimensionTooSmall(f"the complex construction needs s >= 3, got s={s}")
    d, e = s - 2, s
    n = e
    coords = []
    for i in range(1, d + 1):
        for j in range(1, e + 1):
            for role in "XYZUV":
                coords.append(Coordinate(f"{role}_{i}_{j}", role))
    coords += [Coordinate(f"T_{j}", "T") for j in range(1, e + 1)]
    coords += [Coordinate(f"W_{k}", "W") for k in range(1, n + 1)]
    coords += [Coordinate(f"xi_{k}", "xi") for k in range(1, n + 1)]
    labels = []
    for i in range(1, d + 1):
        for j in range(1, e + 1):
            labels += [f"pell_{i}_{j}", f"residue_{i}_{j}", f"unit_{i}_{j}"]
    labels += [f"chain_{j + 1}" for j in range(1, e)]
    labels += [f"divisor_{k}" for k in range(1, n + 1)]
    labels.append("phat")
    labels += [f"dioph_{i}" for i in range(1, d + 1)]
    return coords, labels, {"case": "complex", "d": d, "e": e, "n": n}


def chain_product(j: int, T: Sequence[Polynomial], W: Sequence[Polynomial]) -> Polynomial:
    """prod_{k<=j} ((T_k^2 - 1) W_k) * W_{j+1}, with 1-based ``j``."""
    acc = W[j]
    for k in range(j):
        acc = acc * (T[k] * T[k] - 1) * W[k]
    return acc


def family_in(fam: DivFamily, ctx: VarContext, names: Sequence[str]):
    """H_k and P-hat with x_k renamed to ``names[k-1]`` inside ``ctx``."""
    mapping = dict(zip(fam.varnames, names))
    H = [rename(h, mapping, ctx) for h in fam.H]
    return H, rename(fam.P, mapping, ctx)


def build_complex_variety(
    inst: DiophantineInstance, family: Optional[DivFamily] = None
) -> VarietyPresentation:
    """Cloned Pell systems linked by the T-chain and the divisibility family.

    The divisibility polynomials are attached through auxiliary
    coordinates xi_k: W_k = H_k(xi) and T_1 = P-hat(xi).
    """
    coords, labels, meta = complex_layout(inst.s)
    d, e, n = meta["d"], meta["e"], meta["n"]
    if family is None:
        family = build_w_phat(n)
    if family.m != n or list(family.constants) != [3 * k for k in range(1, n + 1)]:
        raise ReductionError(f"family must have constants 3, 6, ..., {3 * n}")
    ctx = VarContext(c.name for c in coords)
    v = ctx.var
    T = [v(f"T_{j}") for j in range(1, e + 1)]
    W = [v(f"W_{k}") for k in range(1, n + 1)]
    H, phat = family_in(family, ctx, [f"xi_{k}" for k in range(1, n + 1)])

    eqs = []
    for i in range(1, d + 1):
        for j in range(1, e + 1):
            X, Y, Z, U, V = (v(f"{r}_{i}_{j}") for r in "XYZUV")
            Tj = T[j - 1]
            eqs += [X * X - (Tj * Tj - 1) * Y * Y - 1, Y - (Tj - 1) * Z - V, V * U - 1]
    for j in range(1, e):
        eqs.append(T[j] - chain_product(j, T, W))
    for k in range(n):
        eqs.append(W[k] - H[k])
    eqs.append(T[0] - phat)
    for i in range(1, d + 1):
        eqs.append(inst.at([v(f"V_{i}_{j}") for j in range(1, e + 1)]).embed(ctx))

    pres = VarietyPresentation(tuple(coords), tuple(eqs), meta, tuple(labels))
    pres.validate()
    return pres
