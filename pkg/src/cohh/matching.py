"""Matching spaces of the coHochschild object and an explicit section of the matching map.

``M_n`` is the space of tuples ``(x_0, ..., x_{n-1})`` in ``C^{(x) n}`` with
``sigma_i(x_j) = sigma_{j-1}(x_i)`` for ``i < j``; the matching map sends
``y`` to ``(sigma_0 y, ..., sigma_{n-1} y)``.  The section inserts the
coaugmentation with ``eta_i`` (slot ``i + 1``); it has degree 0, so no
Koszul signs arise.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .coalgebra import CoalgebraPresentation, Tensor
from .complex import codegeneracy, codegeneracy_vector
from .field import Matrix, Scalar, row_reduce, vec_add_into, vec_axpy
from .graded import GradedMap, StructuralError

Block = Dict[Tensor, Scalar]
MatchingTuple = Tuple[Block, ...]


class MatchingRelationError(ValueError):
    pass


def eta_vector(c: CoalgebraPresentation, x: Tensor, i: int) -> Dict[Tensor, Scalar]:
    if not 0 <= i <= len(x) - 1:
        raise IndexError(f"eta index {i} out of range")
    return {x[:i + 1] + (c.unit,) + x[i + 1:]: c.field.one}


def eta(c: CoalgebraPresentation, n: int, i: int) -> GradedMap:
    """``eta_i : C^{(x) n+1} -> C^{(x) n+2}``, the coaugmentation in slot ``i + 1``."""
    if not 0 <= i <= n:
        raise IndexError(f"eta index {i} out of range for level {n}")
    return GradedMap.from_function(c.field, c.tensor_space(n + 1), c.tensor_space(n + 2), 0,
                                   lambda x: eta_vector(c, x, i))


def _apply(c: CoalgebraPresentation, fn, vec: Block, i: int) -> Block:
    F = c.field
    out: Block = {}
    for x, a in vec.items():
        vec_axpy(F, out, a, fn(c, x, i))
    return out


def sigma(c: CoalgebraPresentation, vec: Block, i: int) -> Block:
    return _apply(c, codegeneracy_vector, vec, i)


def eta_apply(c: CoalgebraPresentation, vec: Block, i: int) -> Block:
    return _apply(c, eta_vector, vec, i)


@dataclass
class MatchingSpace:
    """Basis of ``M_n`` in internal degree ``t``.

    The ambient space is ``n`` copies of ``(C^{(x) n})_t``, flattened block by
    block; ``basis`` holds tuples of sparse blocks.
    """

    n: int
    t: int
    block_basis: Tuple[Tensor, ...]
    basis: List[MatchingTuple] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def flatten(self, tup: Sequence[Block]) -> Dict[int, Scalar]:
        idx = {x: i for i, x in enumerate(self.block_basis)}
        m = len(self.block_basis)
        out = {}
        for j, blk in enumerate(tup):
            for x, a in blk.items():
                if a:
                    out[j * m + idx[x]] = a
        return out


def relation_violations(c: CoalgebraPresentation, tup: Sequence[Block]) -> List[Tuple[int, int]]:
    """Pairs ``(i, j)`` with ``sigma_i(x_j) != sigma_{j-1}(x_i)``."""
    bad = []
    for j in range(len(tup)):
        for i in range(j):
            if sigma(c, tup[j], i) != sigma(c, tup[i], j - 1):
                bad.append((i, j))
    return bad


def matching_space(c: CoalgebraPresentation, n: int, t: int) -> MatchingSpace:
    """Kernel of the assembled relation matrix in internal degree ``t``."""
    if n < 1:
        raise ValueError("matching spaces start at n = 1")
    F = c.field
    block = c.tensors(n, t)
    m = len(block)
    space = MatchingSpace(n, t, block)
    if m == 0:
        return space
    lower = c.tensors(n - 1, t) if n >= 2 else ()
    lidx = {x: i for i, x in enumerate(lower)}
    rows: Dict[int, Dict[int, Scalar]] = {}
    r0 = 0
    for j in range(n):
        for i in range(j):
            # sigma_i(x_j) - sigma_{j-1}(x_i) = 0, one row per lower basis tensor
            for k, x in enumerate(block):
                for y, a in codegeneracy_vector(c, x, i).items():
                    vec_add_into(F, rows.setdefault(r0 + lidx[y], {}), j * m + k, a)
                for y, a in codegeneracy_vector(c, x, j - 1).items():
                    vec_add_into(F, rows.setdefault(r0 + lidx[y], {}), i * m + k, F.neg(a))
            r0 += len(lower)
    mat = Matrix(F, r0, n * m, {r: v for r, v in rows.items() if v})
    for v in row_reduce(mat).kernel:
        tup = tuple({block[p % m]: a for p, a in sorted(v.items()) if p // m == j}
                    for j in range(n))
        space.basis.append(tup)
    return space


def matching_vector(c: CoalgebraPresentation, y: Block, n: int) -> MatchingTuple:
    """``sigma(y) = (sigma_0 y, ..., sigma_{n-1} y)`` for ``y`` in ``C^{(x) n+1}``."""
    return tuple(sigma(c, y, i) for i in range(n))


def matching_map(c: CoalgebraPresentation, n: int) -> GradedMap:
    """The matching map as a graded map into the flattened ambient ``(C^{(x) n})^n``."""
    from .graded import GradedSpace

    D = c.D
    slices = []
    for t in range(D + 1):
        slices.append(tuple((j, x) for j in range(n) for x in c.tensors(n, t)))
    target = GradedSpace(D, tuple(slices))
    F = c.field

    def fn(y):
        out = {}
        for j, blk in enumerate(matching_vector(c, {y: F.one}, n)):
            for x, a in blk.items():
                out[(j, x)] = a
        return out

    return GradedMap.from_function(F, c.tensor_space(n + 1), target, 0, fn)


def matching_preimage(c: CoalgebraPresentation, n: int, tup: Sequence[Block]) -> Block:
    """An explicit ``y`` with ``sigma(y) = tup``.

    ``y = sum_i eta_i( sum_{S subset {0..i-1}} (-1)^{|S|} prod_{l in S} eta_l sigma_l (x_i) )``,
    the product composed with the largest ``l`` applied first.
    """
    if len(tup) != n:
        raise ValueError(f"expected {n} components, got {len(tup)}")
    bad = relation_violations(c, tup)
    if bad:
        raise MatchingRelationError(f"tuple violates matching relations at (i, j) = {bad}")
    F = c.field
    y: Block = {}
    for i, x in enumerate(tup):
        inner: Block = {}
        for size in range(i + 1):
            for S in itertools.combinations(range(i), size):
                v = dict(x)
                for l in reversed(S):
                    v = eta_apply(c, sigma(c, v, l), l)
                vec_axpy(F, inner, F.sign(size), v)
        vec_axpy(F, y, F.one, eta_apply(c, inner, i))
    return y


@dataclass
class SurjectivityReport:
    n: int
    degrees: List[int]
    matching_dims: Dict[int, int]
    map_ranks: Dict[int, int]
    witnesses: int = 0
    failures: List[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_surjectivity(c: CoalgebraPresentation, n: int, t_max: Optional[int] = None,
                        trials: int = 20, seed: int = 0) -> SurjectivityReport:
    """Constructive surjectivity of the matching map ``C^{(x) n+1} -> M_n``.

    For every internal degree ``t <= t_max`` the section is applied to each
    basis tuple of ``M_n`` and to ``trials`` random combinations; each result
    must reproduce its tuple exactly.  Independently the rank of the
    matching map must equal ``dim M_n``.
    """
    F = c.field
    t_max = c.D if t_max is None else min(t_max, c.D)
    rng = random.Random(seed)
    mmap = matching_map(c, n)
    rep = SurjectivityReport(n, list(range(t_max + 1)), {}, {})
    for t in range(t_max + 1):
        ms = matching_space(c, n, t)
        rep.matching_dims[t] = ms.dim
        rank = row_reduce(mmap.block(t)).rank if t in mmap.blocks else 0
        rep.map_ranks[t] = rank
        if rank != ms.dim:
            rep.failures.append(f"t={t}: rank of matching map {rank} != dim M_{n} = {ms.dim}")
        samples = list(ms.basis)
        if ms.dim:
            for _ in range(trials):
                coeffs = [F(rng.randint(-3, 3)) for _ in ms.basis]
                tup = []
                for j in range(n):
                    blk: Block = {}
                    for a, b in zip(coeffs, ms.basis):
                        vec_axpy(F, blk, a, b[j])
                    tup.append(blk)
                samples.append(tuple(tup))
        for tup in samples:
            y = matching_preimage(c, n, tup)
            back = matching_vector(c, y, n)
            if tuple(back) != tuple(tup):
                rep.failures.append(f"t={t}: sigma(preimage) != tuple for {tup!r}; got {back!r}")
            else:
                rep.witnesses += 1
    return rep
