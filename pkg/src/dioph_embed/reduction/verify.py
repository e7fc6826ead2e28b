"""Symbolic verification of embedding witnesses.

Three things are certified: every defining equation vanishes identically
under the witness map, the map is not constant, and its Jacobian has full
rank m at a sampled rational point (an immersion there).

Identical vanishing is decided exactly. An equation is first evaluated at
the sample point using the layered assignment; a nonzero value proves it
does not vanish. Otherwise coordinates are substituted deepest-first and
the result is tested for zero after every layer. Each substitution is a
ring homomorphism, so reaching zero at any layer proves the fully
expanded composition is zero as well.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..polyparse import format_polynomial
from ..polyring import Polynomial, derivative, evaluate, substitute
from .rank import rank
from .variety import ReductionError, VarietyPresentation
from .witness import EmbeddingWitness

SAMPLE_BOUND = 997
COLLISION_SET = frozenset({-1, 0, 1})
MAX_POINTS = 3
WORK_BUDGET = 2_000_000
RESIDUAL_TERMS_SHOWN = 2000


class IncompleteWitness(ReductionError):
    pass


@dataclass
class EquationStatus:
    index: int
    label: str
    vanishes: Optional[bool]
    residual: str = "0"
    residual_expanded: bool = True

    def to_json(self):
        return {
            "index": self.index,
            "label": self.label,
            "vanishes": self.vanishes,
            "residual": self.residual,
            "residual_expanded": self.residual_expanded,
        }


@dataclass
class VerificationReport:
    equations: List[EquationStatus]
    nonconstant: bool
    jacobian_rank: int
    domain_dim: int
    seed: int
    points: List[List[int]]
    injective_by_projection: bool
    caveats: List[str] = field(default_factory=list)

    @property
    def failing(self) -> List[int]:
        return [s.index for s in self.equations if not s.vanishes]

    @property
    def verdict(self) -> str:
        ok = not self.failing and self.nonconstant and self.jacobian_rank == self.domain_dim
        return "pass" if ok else "fail"

    def to_json(self):
        return {
            "version": 1,
            "verdict": self.verdict,
            "failing_equations": self.failing,
            "nonconstant": self.nonconstant,
            "jacobian_rank": self.jacobian_rank,
            "domain_dim": self.domain_dim,
            "seed": self.seed,
            "points": self.points,
            "injective_by_projection": self.injective_by_projection,
            "caveats": self.caveats,
            "equations": [s.to_json() for s in self.equations],
        }


def sample_points(seed: int, m: int, count: int = MAX_POINTS) -> List[List[int]]:
    """Points with pairwise distinct entries from [-B, B] minus {-1, 0, 1}."""
    rng = random.Random(seed)
    pool = [x for x in range(-SAMPLE_BOUND, SAMPLE_BOUND + 1) if x not in COLLISION_SET]
    return [rng.sample(pool, m) for _ in range(count)]


class _Layered:
    """Values and gradients of the witness map at a point (forward mode)."""

    def __init__(self, w: EmbeddingWitness, depth: Dict[str, int], point: Sequence[int]):
        m = w.m
        self.values: Dict[str, Fraction] = {}
        self.grads: Dict[str, List[Fraction]] = {}
        for k, name in enumerate(w.domain_vars):
            self.values[name] = Fraction(point[k])
            self.grads[name] = [Fraction(int(i == k)) for i in range(m)]
        for c in sorted(w.assignment, key=lambda c: depth[c]):
            poly = w.assignment[c]
            used = poly.variables()
            env = {u: self.values[u] for u in used}
            self.values[c] = evaluate(poly, env)
            grad = [Fraction(0)] * m
            for u in used:
                du = evaluate(derivative(poly, u), env)
                if du:
                    gu = self.grads[u]
                    grad = [g + du * x for g, x in zip(grad, gu)]
            self.grads[c] = grad


def _work_estimate(poly: Polynomial, images: Dict[str, Polynomial]) -> int:
    idx = [(i, len(images[n])) for i, n in enumerate(poly.ctx.names) if n in images]
    total = 0
    for m in poly.terms:
        prod = 1
        for i, size in idx:
            if m[i]:
                prod *= size ** m[i]
        total += prod
        if total > WORK_BUDGET:
            break
    return total


def _reduce_layers(eq: Polynomial, w: EmbeddingWitness, depth: Dict[str, int]):
    """Substitute coordinates deepest-first until zero, domain-only, or over budget.

    Returns (poly, complete) where ``complete`` is False if the budget
    stopped the expansion.
    """
    ctx = w.ctx
    poly = eq.embed(ctx)
    while not poly.is_zero():
        present = [v for v in poly.variables() if v in w.assignment]
        if not present:
            return poly, True
        top = max(depth[c] for c in present)
        layer = {c: w.assignment[c].embed(ctx) for c in present if depth[c] == top}
        if _work_estimate(poly, layer) > WORK_BUDGET:
            return poly, False
        poly = substitute(poly, layer, ctx)
    return poly, True


def _render(poly: Polynomial) -> str:
    if len(poly) <= RESIDUAL_TERMS_SHOWN:
        return format_polynomial(poly)
    return f"<{len(poly)} terms, degree {poly.degree()}>"


def verify_witness(v: VarietyPresentation, w: EmbeddingWitness, seed: int = 0) -> VerificationReport:
    missing = [c for c in v.names if c not in w.assignment]
    if missing:
        raise IncompleteWitness(f"no assignment for {', '.join(missing)}")
    depth = w.depths()
    m = w.m
    caveats: List[str] = []
    points = sample_points(seed, m)
    first = _Layered(w, depth, points[0])

    labels = v.labels or tuple(f"eq_{k}" for k in range(len(v.equations)))
    statuses = []
    for k, eq in enumerate(v.equations):
        value = evaluate(eq, {c: first.values[c] for c in eq.variables()})
        poly, complete = _reduce_layers(eq, w, depth)
        if value != 0:
            statuses.append(EquationStatus(k, labels[k], False, _render(poly), complete))
            continue
        if poly.is_zero():
            statuses.append(EquationStatus(k, labels[k], True))
        elif complete:
            statuses.append(EquationStatus(k, labels[k], False, _render(poly), True))
        else:
            statuses.append(EquationStatus(k, labels[k], None, _render(poly), False))
            caveats.append(f"equation {k} ({labels[k]}): expansion exceeded the work budget")

    coords = list(v.names)
    evaluated = [first]
    best = rank([first.grads[c] for c in coords])
    for pt in points[1:]:
        if best == m:
            break
        ev = _Layered(w, depth, pt)
        evaluated.append(ev)
        best = max(best, rank([ev.grads[c] for c in coords]))
    used_points = points[: len(evaluated)]
    if best < m:
        caveats.append(
            f"Jacobian rank {best} < {m} at {len(evaluated)} random points; "
            "rank deficiency is likely but not certain"
        )

    nonconstant = any(any(ev.grads[c]) for ev in evaluated for c in coords)
    if not nonconstant:
        nonconstant = _nonconstant_by_expansion(w, coords, depth, caveats)

    domain = {name: Polynomial.variable(w.ctx, name) for name in w.domain_vars}
    projected = {
        name for name in w.domain_vars
        if any(w.assignment[c].embed(w.ctx) == domain[name] for c in coords)
    }
    injective = len(projected) == m

    return VerificationReport(statuses, nonconstant, best, m, seed, used_points, injective, caveats)


def _nonconstant_by_expansion(w, coords, depth, caveats) -> bool:
    domain = set(w.domain_vars)
    for c in coords:
        poly, complete = _reduce_layers(w.assignment[c], w, depth)
        if not complete:
            caveats.append(f"could not expand {c} to decide constancy")
            continue
        if any(x in domain for x in poly.variables()):
            return True
    return False
