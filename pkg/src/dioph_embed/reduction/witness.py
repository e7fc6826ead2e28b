"""Embedding witnesses built from integer solutions.

An assignment maps every coordinate to a polynomial in the domain
variables and, optionally, in other coordinates. The latter keeps the
complex-case witness small: X_ij is stored as X_N(T_j) rather than as its
expansion in t_1..t_m, which has hundreds of millions of terms already at
s = 3. Coordinate references must be acyclic; expanding them in
dependency order yields the actual polynomial map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..divfam import DivFamily, build_w_phat
from ..pell import PellContext, residue_mod_Tminus1, solution, z_component
from ..polyring import Polynomial, VarContext, substitute
from .variety import (
    DiophantineInstance,
    ReductionError,
    chain_product,
    complex_layout,
    family_in,
    real_coordinates,
)


class NotASolution(ReductionError):
    pass


class ZeroComponent(ReductionError):
    pass


class NonconstantTjViolation(ReductionError):
    pass


class InvalidWitness(ReductionError):
    pass


@dataclass(frozen=True)
class EmbeddingWitness:
    domain_vars: Tuple[str, ...]
    assignment: Dict[str, Polynomial]
    integers: Tuple[Tuple[int, ...], ...]
    case: str = "real"
    info: Dict[str, object] = field(default_factory=dict, compare=False)

    @property
    def m(self) -> int:
        return len(self.domain_vars)

    @cached_property
    def ctx(self) -> VarContext:
        return VarContext(self.domain_vars + tuple(self.assignment))

    def depths(self) -> Dict[str, int]:
        """Dependency depth of each coordinate; domain variables are depth 0."""
        domain = set(self.domain_vars)
        deps = {}
        for name, poly in self.assignment.items():
            refs = [v for v in poly.variables() if v not in domain]
            unknown = [r for r in refs if r not in self.assignment]
            if unknown:
                raise InvalidWitness(f"{name} refers to unknown symbols {unknown}")
            deps[name] = refs
        depth: Dict[str, int] = {}
        visiting = set()

        def visit(c):
            if c in depth:
                return depth[c]
            if c in visiting:
                raise InvalidWitness(f"cyclic assignment through {c}")
            visiting.add(c)
            depth[c] = 1 + max((visit(r) for r in deps[c]), default=0)
            visiting.discard(c)
            return depth[c]

        for c in self.assignment:
            visit(c)
        return depth

    def expanded(self, names: Optional[Sequence[str]] = None) -> Dict[str, Polynomial]:
        """Coordinates as polynomials in the domain variables only.

        Cost grows with the nesting; fine for real-case witnesses.
        """
        depth = self.depths()
        targets = list(names) if names is not None else list(self.assignment)
        ctx = self.ctx
        dom_ctx = VarContext(self.domain_vars)
        done: Dict[str, Polynomial] = {}
        for c in sorted(_closure(self, targets), key=lambda c: depth[c]):
            poly = self.assignment[c].embed(ctx)
            refs = {r: done[r].embed(ctx) for r in poly.variables() if r in done}
            out = substitute(poly, refs, ctx) if refs else poly
            done[c] = out.embed(dom_ctx)
        return {c: done[c] for c in targets}


def _closure(w: EmbeddingWitness, names) -> set:
    seen = set()
    stack = list(names)
    domain = set(w.domain_vars)
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        stack += [v for v in w.assignment[c].variables() if v not in domain]
    return seen


def _check_integers(inst: DiophantineInstance, N: Sequence[int]):
    N = tuple(int(x) for x in N)
    if len(N) != inst.s:
        raise ReductionError(f"expected {inst.s} integers, got {len(N)}")
    if any(x == 0 for x in N):
        raise ZeroComponent(f"solution {N} has a zero entry; V U = 1 cannot hold")
    if inst.value(N) != 0:
        raise NotASolution(f"Q{N} = {inst.value(N)} != 0")
    return N


def _pell_block(N: int, Tname: str, ctx: VarContext) -> Dict[str, Polynomial]:
    """X, Y, Z, U, V for one clone, as polynomials in the coordinate T."""
    pc = PellContext(Polynomial.variable(ctx, Tname))
    pair = solution(N, pc)
    if residue_mod_Tminus1(pair, pc) != N:
        raise AssertionError(f"residue of Y_{N} mod (T - 1) is not {N}")
    return {
        "X": pair.X,
        "Y": pair.Y,
        "Z": z_component(pair, N, pc),
        "U": Polynomial.constant(ctx, Fraction(1, N)),
        "V": Polynomial.constant(ctx, N),
    }


def real_witness(inst: DiophantineInstance, N: Sequence[int], expand: bool = False) -> EmbeddingWitness:
    """The line t -> (S = t, T = t^2 + 2, X_i = X_{N_i}(T), ...)."""
    N = _check_integers(inst, N)
    coords = real_coordinates(inst.s)
    ctx = VarContext(["t"] + [c.name for c in coords])
    t = ctx.var("t")
    assignment: Dict[str, Polynomial] = {}
    for i, n_i in enumerate(N, start=1):
        for role, poly in _pell_block(n_i, "T", ctx).items():
            assignment[f"{role}_{i}"] = poly
    assignment["T"] = t * t + 2
    assignment["S"] = t
    # keep coordinate order of the variety
    assignment = {c.name: assignment[c.name] for c in coords}
    w = EmbeddingWitness(("t",), assignment, (N,), "real")
    if expand:
        w = EmbeddingWitness(("t",), {k: v.embed(ctx) for k, v in w.expanded().items()}, (N,), "real")
    return w


def complex_witness(
    inst: DiophantineInstance,
    rows: Sequence[Sequence[int]],
    family: Optional[DivFamily] = None,
) -> EmbeddingWitness:
    """A map from A^s built from the divisibility family and the solution rows."""
    coords, _, meta = complex_layout(inst.s)
    d, e, n = meta["d"], meta["e"], meta["n"]
    if len(rows) != d:
        raise ReductionError(f"expected {d} solution rows, got {len(rows)}")
    rows = tuple(_check_integers(inst, r) for r in rows)
    if family is None:
        family = build_w_phat(n)

    tnames = [f"t_{k}" for k in range(1, inst.s + 1)]
    ctx = VarContext(tnames + [c.name for c in coords])
    v = ctx.var
    H, phat = family_in(family, ctx, tnames[:n])
    assignment: Dict[str, Polynomial] = {}
    for i, row in enumerate(rows, start=1):
        for j, n_ij in enumerate(row, start=1):
            for role, poly in _pell_block(n_ij, f"T_{j}", ctx).items():
                assignment[f"{role}_{i}_{j}"] = poly

    T = [v(f"T_{j}") for j in range(1, e + 1)]
    W = [v(f"W_{k}") for k in range(1, n + 1)]
    assignment["T_1"] = phat
    for j in range(1, e):
        assignment[f"T_{j + 1}"] = chain_product(j, T, W)
    for k in range(1, n + 1):
        assignment[f"W_{k}"] = H[k - 1]
        assignment[f"xi_{k}"] = v(tnames[k - 1])

    # deg T_{j+1} = sum_{k<=j} (2 deg T_k + deg W_k) + deg W_{j+1}, all W_k nonzero
    wdeg = [h.degree() for h in H]
    if any(h.is_zero() for h in H):
        raise NonconstantTjViolation("some W_k is the zero polynomial")
    tdeg = [phat.degree()]
    for j in range(1, e):
        tdeg.append(sum(2 * tdeg[k] + wdeg[k] for k in range(j)) + wdeg[j])
    if any(dg <= 0 for dg in tdeg):
        raise NonconstantTjViolation(f"constant T_j in chain, degrees {tdeg}")

    assignment = {c.name: assignment[c.name] for c in coords}
    return EmbeddingWitness(tuple(tnames), assignment, rows, "complex", {"T_degrees": tdeg})
