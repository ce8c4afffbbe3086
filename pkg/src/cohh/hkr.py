"""HKR comparison for cofree cocommutative coalgebras.

For ``S^c(X)`` the coHochschild homology is predicted by the module of
coalgebra Kaehler codifferentials: a copy of ``S^c(X)`` in cosimplicial
degree 0 tensored with a shifted copy of ``X`` in cosimplicial degree 1.
This module builds the predicted bigraded table, compares it with the
computed one, and exhibits explicit cycles for a single cogenerator.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .coalgebra import (DIVIDED_POWER, EXTERIOR, CoalgebraPresentation, Generator,
                        cofree_cocommutative, monomial_coalgebra)
from .complex import BigradedResult, cohh, horizontal_vector
from .field import Field, Matrix, Scalar, row_reduce, vec_add_into, vec_axpy
from .graded import ChainComplex, GradedSpace, StructuralError, complex_homology

Cell = Tuple[int, int]


@dataclass(frozen=True)
class OmegaGenerator:
    name: str
    bidegree: Cell
    kind: str            # DividedPower or Exterior


@dataclass
class OmegaModule:
    """Bigraded ``U(S^c(X)) (x) U(S^c(s^{-1} X))`` (or ``(x) Lambda(s^{-1} X)`` in char 2).

    Shifted generators are placed at bidegree ``(1, |x|)``.
    """

    field: Field
    D: int
    generators: List[OmegaGenerator]
    dims: Dict[Cell, int]

    def dim(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)


def omega_generators(x: GradedSpace, F: Field) -> List[OmegaGenerator]:
    char2 = F.characteristic == 2
    out = []
    for name, d in x.items():
        if d <= 0:
            raise ValueError(f"cogenerator {name!r} must have positive degree")
        base = DIVIDED_POWER if (char2 or d % 2 == 0) else EXTERIOR
        if char2:
            shifted = EXTERIOR
        else:
            shifted = EXTERIOR if d % 2 == 0 else DIVIDED_POWER
        out.append(OmegaGenerator(str(name), (0, d), base))
        out.append(OmegaGenerator(f"d{name}", (1, d), shifted))
    return out


def bigraded_series(gens: List[OmegaGenerator], D: int) -> Dict[Cell, int]:
    """Dimensions of the free graded-commutative object on ``gens`` for ``t <= D``."""
    dims: Dict[Cell, int] = {(0, 0): 1}
    for g in gens:
        s0, t0 = g.bidegree
        cap = 1 if g.kind == EXTERIOR else D // t0
        nxt: Dict[Cell, int] = {}
        for (s, t), m in dims.items():
            for k in range(cap + 1):
                if t + k * t0 > D:
                    break
                key = (s + k * s0, t + k * t0)
                nxt[key] = nxt.get(key, 0) + m
        dims = nxt
    return {k: v for k, v in sorted(dims.items()) if v}


def omega(x: GradedSpace, F: Field, D: Optional[int] = None) -> OmegaModule:
    D = x.D if D is None else D
    gens = omega_generators(x, F)
    return OmegaModule(F, D, gens, bigraded_series(gens, D))


@dataclass
class HKRReport:
    field: Field
    D: int
    computed: Dict[Cell, int]
    predicted: Dict[Cell, int]
    mismatches: List[Tuple[Cell, int, int]] = dc_field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.mismatches


def hkr_compare(x: GradedSpace, F: Field, D: Optional[int] = None) -> HKRReport:
    """Compare computed coHH of ``S^c(x)`` with the predicted table, cell by cell."""
    D = x.D if D is None else D
    c = cofree_cocommutative(x, F, D)
    computed = cohh(c, D).dims()
    predicted = omega(x, F, D).dims
    rep = HKRReport(F, D, computed, predicted)
    for key in sorted(set(computed) | set(predicted)):
        a, b = computed.get(key, 0), predicted.get(key, 0)
        if a != b:
            rep.mismatches.append((key, a, b))
    return rep


# explicit cycles for one cogenerator -------------------------------------------------------


@dataclass
class CycleReport:
    degree: int
    field: Field
    D: int
    cycles: Dict[Cell, Dict]
    coordinates: Dict[Cell, List[Scalar]]
    coalgebra: CoalgebraPresentation
    result: BigradedResult


def _gamma(c: CoalgebraPresentation, d: int, k: int) -> Optional[str]:
    if k < 0 or k * d > c.D:
        return None
    return c.space[k * d][0]


def paper_cycles(c: CoalgebraPresentation, d: int, divided: bool) -> Dict[Cell, Dict]:
    """The standard cycles of the one-cogenerator complex, by bidegree."""
    F = c.field
    D = c.D
    out: Dict[Cell, Dict] = {}
    if divided:
        for n in range(0, D // d + 1):
            out[(0, n * d)] = {(_gamma(c, d, n),): F.one}
            if n >= 1:
                v: Dict = {}
                for i in range(1, n + 1):
                    vec_add_into(F, v, (_gamma(c, d, n - i), _gamma(c, d, i)), F(i))
                out[(1, n * d)] = v
    else:
        y = c.space[d][0]
        for a in range(0, D // d + 1):
            out[(a, a * d)] = {(c.unit,) + (y,) * a: F.one}
            if (a + 1) * d <= D:
                out[(a, (a + 1) * d)] = {(y,) + (y,) * a: F.one}
    return out


def single_cogen_cycles(degree: int, F: Field, D: int) -> CycleReport:
    """Emit and verify the explicit cycles for ``S^c`` on one generator.

    Even degree (or characteristic 2): ``gamma_n`` at ``(0, n|x|)`` and
    ``sum_i i * gamma_{n-i} (x) gamma_i`` at ``(1, n|x|)``.  Odd degree:
    ``1 (x) y^{(x) a}`` at ``(a, a|y|)`` and ``y (x) y^{(x) a}`` at
    ``(a, (a+1)|y|)``.  Every cycle is checked to be closed and the cycles
    are checked to give a basis of homology in each bidegree.
    """
    if degree <= 0:
        raise ValueError("degree must be positive")
    divided = degree % 2 == 0 or F.characteristic == 2
    x = GradedSpace.from_degrees([("x" if divided else "y", degree)], D)
    c = cofree_cocommutative(x, F, D)
    res = cohh(c, D)
    cycles = paper_cycles(c, degree, divided)
    coords: Dict[Cell, List[Scalar]] = {}
    for cell, v in cycles.items():
        dv: Dict = {}
        for tensor, a in v.items():
            vec_axpy(F, dv, a, horizontal_vector(c, tensor))
        if dv:
            raise StructuralError(f"the cycle at {cell} is not closed: d = {dv}")
        hc = res.cells.get(cell)
        if hc is None or hc.dim != 1:
            raise StructuralError(f"homology at {cell} is not one-dimensional")
        co = hc.classify(v)
        if co is None or not any(co):
            raise StructuralError(f"the cycle at {cell} is zero in homology")
        coords[cell] = co
    extra = [k for k, h in res.dims().items() if k not in cycles]
    if extra:
        raise StructuralError(f"homology not accounted for at {extra}")
    return CycleReport(degree, F, D, cycles, coords, c, res)


# the two-step resolution ---------------------------------------------------------------------


@dataclass
class ResolutionReport:
    degree: int
    field: Field
    D: int
    exact: bool
    ranks: Dict[int, Tuple[int, int, int, int, int]]   # t -> (dim S, dim S(x)S, dim S(x)X(x)S, rk delta, rk f)
    failures: List[str] = dc_field(default_factory=list)


def doi_maps(degree: int, F: Field, D: int):
    """``S -> S (x) S -> S (x) X (x) S`` for ``S = Gamma[x]``, as per-degree matrices.

    ``f(g_i (x) g_j) = g_{i-1} (x) x (x) g_j - g_i (x) x (x) g_{j-1}`` with
    ``g_{-1} = 0``.
    """
    if degree % 2 and F.characteristic != 2:
        raise ValueError("the resolution is built for an even cogenerator (or characteristic 2)")
    top = D // degree
    out = {}
    for t in range(D + 1):
        if t % degree:
            continue
        n = t // degree
        s_basis = [n]
        ss_basis = [(i, n - i) for i in range(n + 1)]
        sxs_basis = [(i, n - 1 - i) for i in range(n)] if n >= 1 else []
        ss_idx = {k: i for i, k in enumerate(ss_basis)}
        sxs_idx = {k: i for i, k in enumerate(sxs_basis)}
        delta = Matrix.from_columns(F, len(ss_basis), [{ss_idx[p]: F.one for p in ss_basis}])
        cols = []
        for (i, j) in ss_basis:
            col: Dict[int, Scalar] = {}
            if i >= 1:
                vec_add_into(F, col, sxs_idx[(i - 1, j)], F.one)
            if j >= 1:
                vec_add_into(F, col, sxs_idx[(i, j - 1)], F.neg(F.one))
            cols.append(col)
        f = Matrix.from_columns(F, len(sxs_basis), cols)
        out[t] = (s_basis, ss_basis, sxs_basis, delta, f)
    return out


def doi_resolution_check(degree: int, F: Field, D: int) -> ResolutionReport:
    """Exactness of ``0 -> S -> S (x) S -> S (x) X (x) S -> 0`` in degrees ``<= D``."""
    rep = ResolutionReport(degree, F, D, True, {})
    for t, (s_b, ss_b, sxs_b, delta, f) in doi_maps(degree, F, D).items():
        rd = row_reduce(delta).rank
        rf = row_reduce(f).rank
        rep.ranks[t] = (len(s_b), len(ss_b), len(sxs_b), rd, rf)
        if not (f @ delta).is_zero():
            rep.failures.append(f"t={t}: f o delta != 0")
        if rd != len(s_b):
            rep.failures.append(f"t={t}: delta not injective")
        if len(ss_b) - rf != rd:
            rep.failures.append(f"t={t}: ker f != im delta (dim ker {len(ss_b) - rf}, rank delta {rd})")
        if rf != len(sxs_b):
            rep.failures.append(f"t={t}: f not surjective")
        # the two-term complex S(x)S -> S(x)X(x)S has homology S at its left end
        cc = ChainComplex(F, {0: list(ss_b), 1: list(sxs_b)}, {0: f}, 1)
        h0 = complex_homology(cc, 0).dim
        h1 = complex_homology(cc, 1).dim
        if (h0, h1) != (len(s_b), 0):
            rep.failures.append(f"t={t}: homology ({h0}, {h1}) instead of ({len(s_b)}, 0)")
    rep.exact = not rep.failures
    return rep
