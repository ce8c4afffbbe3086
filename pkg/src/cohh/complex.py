"""The cosimplicial coHochschild object of a coalgebra and its homology.

Level ``n`` is ``C^{(x) n+1}``.  Cofaces ``delta_i`` comultiply slot ``i``;
the last coface comultiplies slot 0 and rotates the left half to the far
right.  Codegeneracies apply the counit to slot ``i + 1``.

Because the basis is counit-compatible, the normalized cochains ``N^s`` are
spanned by the basis tensors whose slots ``1..s`` avoid the unit, so the
normalized bicomplex is assembled directly in those coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .coalgebra import (CoalgebraPresentation, Tensor, apply_in_slot, check_coalgebra,
                        iterated_comult_vector, tensor_differential)
from .field import Echelon, Field, Matrix, Scalar, row_reduce, solve, vec_add_into, vec_axpy
from .graded import (ChainComplex, GradedMap, GradedSpace, StructuralError,
                     homology_from_matrices)

Cell = Tuple[int, int]


class NotCocommutativeError(ValueError):
    pass


# cosimplicial structure maps ---------------------------------------------------------


def coface_vector(c: CoalgebraPresentation, x: Tensor, i: int) -> Dict[Tensor, Scalar]:
    n = len(x) - 1
    if not 0 <= i <= n + 1:
        raise IndexError(f"coface index {i} out of range for level {n}")
    F = c.field
    if i <= n:
        return apply_in_slot(c, {x: F.one}, i)
    rest = sum(c.degree(y) for y in x[1:])
    out: Dict[Tensor, Scalar] = {}
    for (a, b), k in c.comult[x[0]].items():
        s = c.degree(a) * (c.degree(b) + rest)
        vec_add_into(F, out, (b,) + x[1:] + (a,), F.mul(F.sign(s), k))
    return out


def codegeneracy_vector(c: CoalgebraPresentation, x: Tensor, i: int) -> Dict[Tensor, Scalar]:
    n = len(x) - 2
    if not 0 <= i <= n:
        raise IndexError(f"codegeneracy index {i} out of range for level {n}")
    if x[i + 1] != c.unit:
        return {}
    return {x[:i + 1] + x[i + 2:]: c.field.one}


def _level_space(c: CoalgebraPresentation, n: int) -> GradedSpace:
    return c.tensor_space(n + 1)


def coface(c: CoalgebraPresentation, n: int, i: int) -> GradedMap:
    """``delta_i : C^{(x) n+1} -> C^{(x) n+2}``."""
    if not 0 <= i <= n + 1:
        raise IndexError(f"coface index {i} out of range for level {n}")
    return GradedMap.from_function(c.field, _level_space(c, n), _level_space(c, n + 1), 0,
                                   lambda x: coface_vector(c, x, i))


def codegeneracy(c: CoalgebraPresentation, n: int, i: int) -> GradedMap:
    """``sigma_i : C^{(x) n+2} -> C^{(x) n+1}``, the counit in slot ``i + 1``."""
    if not 0 <= i <= n:
        raise IndexError(f"codegeneracy index {i} out of range for level {n}")
    return GradedMap.from_function(c.field, _level_space(c, n + 1), _level_space(c, n), 0,
                                   lambda x: codegeneracy_vector(c, x, i))


def check_cosimplicial_identities(c: CoalgebraPresentation, max_level: int) -> List[str]:
    """All cosimplicial identities up to ``max_level`` as exact map equalities.

    Returns a description of every failing identity (empty when all hold).
    """
    from .graded import identity_map

    bad = []
    for n in range(max_level + 1):
        d0 = [coface(c, n, i) for i in range(n + 2)]
        d1 = [coface(c, n + 1, i) for i in range(n + 3)]
        s0 = [codegeneracy(c, n, j) for j in range(n + 1)]
        for j in range(n + 2):
            for i in range(j):
                if d1[j].compose(d0[i]) != d1[i].compose(d0[j - 1]):
                    bad.append(f"level {n}: delta_{j} delta_{i} != delta_{i} delta_{j - 1}")
        s1 = [codegeneracy(c, n + 1, j) for j in range(n + 2)]
        for j in range(n + 1):
            for i in range(j + 1):
                if s0[j].compose(s1[i]) != s0[i].compose(s1[j + 1]):
                    bad.append(f"level {n}: sigma_{j} sigma_{i} != sigma_{i} sigma_{j + 1}")
        ident = identity_map(c.field, c.tensor_space(n + 1))
        lower = [codegeneracy(c, n - 1, j) for j in range(n)] if n >= 1 else []
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = s0[j].compose(d0[i])
                if i in (j, j + 1):
                    rhs = ident
                elif i < j:
                    rhs = coface(c, n - 1, i).compose(lower[j - 1])
                else:
                    rhs = coface(c, n - 1, i - 1).compose(lower[j])
                if lhs != rhs:
                    bad.append(f"level {n}: sigma_{j} delta_{i}")
    return bad


# normalized bicomplex ----------------------------------------------------------------


@dataclass
class Bicomplex:
    """Cells ``N^{s,t}`` with ``d_h : (s,t) -> (s+1,t)`` and ``d_v : (s,t) -> (s,t+1)``."""

    field: Field
    S: int
    D: int
    cells: Dict[Cell, Tuple[Tensor, ...]]
    dh: Dict[Cell, Matrix]
    dv: Dict[Cell, Matrix]

    def dim(self, s: int, t: int) -> int:
        return len(self.cells.get((s, t), ()))

    def index(self, s: int, t: int) -> Dict[Tensor, int]:
        return {x: i for i, x in enumerate(self.cells.get((s, t), ()))}

    def horizontal(self, s: int, t: int) -> Matrix:
        m = self.dh.get((s, t))
        if m is None:
            return Matrix.zeros(self.field, self.dim(s + 1, t), self.dim(s, t))
        return m

    def vertical(self, s: int, t: int) -> Matrix:
        m = self.dv.get((s, t))
        if m is None:
            return Matrix.zeros(self.field, self.dim(s, t + 1), self.dim(s, t))
        return m


def horizontal_vector(c: CoalgebraPresentation, x: Tensor) -> Dict[Tensor, Scalar]:
    """``sum_i (-1)^i delta_i`` applied to one basis tensor."""
    F = c.field
    out: Dict[Tensor, Scalar] = {}
    for i in range(len(x) + 1):
        vec_axpy(F, out, F.sign(i), coface_vector(c, x, i))
    return out


def _matrix(F: Field, src: Sequence[Tensor], tgt_index: Mapping[Tensor, int], fn, what: str) -> Matrix:
    cols = []
    for x in src:
        col: Dict[int, Scalar] = {}
        for y, a in fn(x).items():
            r = tgt_index.get(y)
            if r is None:
                raise StructuralError(f"{what} of {x} leaves the normalized cochains at {y}")
            vec_add_into(F, col, r, a)
        cols.append(col)
    return Matrix.from_columns(F, len(tgt_index), cols)


def normalized_bicomplex(c: CoalgebraPresentation, S: Optional[int] = None,
                         D: Optional[int] = None) -> Bicomplex:
    """Normalized coHochschild bicomplex for ``s <= S + 1`` and ``t <= D``.

    The extra column ``S + 1`` carries the targets of the outgoing horizontal
    differential so that homology at ``s = S`` is exact.
    """
    D = c.D if D is None else D
    S = D if S is None else S
    if D > c.D:
        raise ValueError(f"truncation {D} exceeds the presentation's {c.D}")
    if not c.is_connected:
        raise ValueError("the coalgebra must be connected")
    F = c.field
    cells = {}
    for s in range(S + 2):
        for t in range(D + 1):
            basis = c.tensors(s + 1, t, normalized=True)
            if basis:
                cells[(s, t)] = basis
    index = {k: {x: i for i, x in enumerate(v)} for k, v in cells.items()}
    dh = {}
    dv = {}
    for (s, t), basis in cells.items():
        if s <= S:
            dh[(s, t)] = _matrix(F, basis, index.get((s + 1, t), {}),
                                 lambda x: horizontal_vector(c, x), "d_h")
        if c.has_differential and t < D:
            def vert(x):
                return {y: a for y, a in tensor_differential(c, {x: F.one}).items()}
            dv[(s, t)] = _matrix(F, basis, index.get((s, t + 1), {}), vert, "d_v")
    b = Bicomplex(F, S, D, cells, dh, dv)
    _check_bicomplex(b)
    return b


def _check_bicomplex(b: Bicomplex) -> None:
    for (s, t) in b.dh:
        if (s + 1, t) in b.dh and not (b.horizontal(s + 1, t) @ b.horizontal(s, t)).is_zero():
            raise StructuralError(f"d_h o d_h != 0 at ({s}, {t})")
    if not b.dv:
        return
    for (s, t) in b.cells:
        if t + 2 <= b.D and not (b.vertical(s, t + 1) @ b.vertical(s, t)).is_zero():
            raise StructuralError(f"d_v o d_v != 0 at ({s}, {t})")
        if s <= b.S and t + 1 <= b.D:
            if b.vertical(s + 1, t) @ b.horizontal(s, t) != b.horizontal(s, t + 1) @ b.vertical(s, t):
                raise StructuralError(f"d_h and d_v do not commute at ({s}, {t})")


def total_complex(b: Bicomplex) -> ChainComplex:
    """Totalization by ``n = s + t`` with ``D_tot = d_h + (-1)^s d_v``.

    Only total degrees ``n <= min(S, D - 1)`` have complete cells and
    differentials; higher degrees are omitted.
    """
    F = b.field
    top = min(b.S, b.D - 1)
    spaces: Dict[int, List] = {}
    for n in range(top + 2):
        spaces[n] = [(s, x) for s in range(0, n + 1) for x in b.cells.get((s, n - s), ())]
    index = {n: {k: i for i, k in enumerate(v)} for n, v in spaces.items()}
    cols: Dict[Cell, List] = {}

    def col(kind, s, t, pos):
        key = (kind, s, t)
        if key not in cols:
            m = b.horizontal(s, t) if kind == "h" else b.vertical(s, t)
            cols[key] = m.columns()
        return cols[key][pos]

    diffs = {}
    for n in range(top + 1):
        rows: Dict[int, Dict[int, Scalar]] = {}
        for j, (s, x) in enumerate(spaces[n]):
            t = n - s
            pos = b.index(s, t)[x]
            for r, a in col("h", s, t, pos).items():
                y = b.cells[(s + 1, t)][r]
                vec_add_into(F, rows.setdefault(index[n + 1][(s + 1, y)], {}), j, a)
            if t < b.D:
                for r, a in col("v", s, t, pos).items():
                    y = b.cells[(s, t + 1)][r]
                    vec_add_into(F, rows.setdefault(index[n + 1][(s, y)], {}), j,
                                 F.mul(F.sign(s), a))
        diffs[n] = Matrix(F, len(spaces[n + 1]), len(spaces[n]),
                          {r: row for r, row in rows.items() if row})
    spaces = {n: v for n, v in spaces.items() if n <= top + 1}
    cc = ChainComplex(F, spaces, diffs, 1)
    cc.check_square_zero()
    return cc


# homology -------------------------------------------------------------------------------


@dataclass
class CellHomology:
    basis: Tuple
    reps: List[Dict]
    image: Echelon
    field: Field

    @property
    def dim(self) -> int:
        return len(self.reps)

    def classify(self, vec: Mapping) -> Optional[List[Scalar]]:
        """Coordinates of a cycle's class in the representative basis.

        Returns None when ``vec`` is not a cycle of this cell's span of
        ``image + reps``.
        """
        F = self.field
        idx = {x: i for i, x in enumerate(self.basis)}
        try:
            v = {idx[x]: a for x, a in vec.items() if a != 0}
        except KeyError:
            return None
        r = self.image.reduce(v)
        if not self.reps:
            return [] if not r else None
        cols = [{idx[x]: a for x, a in rep.items()} for rep in self.reps]
        m = Matrix.from_columns(F, len(self.basis), cols)
        sol = solve(m, r)
        if sol is None:
            return None
        return [sol.get(k, F.zero) for k in range(len(self.reps))]


def _cell_homology(F: Field, basis: Tuple, d_out: Matrix, d_in: Matrix) -> CellHomology:
    h, reps, image = homology_from_matrices(F, len(basis), d_out, d_in, True)
    named = [{basis[i]: a for i, a in sorted(r.items())} for r in reps]
    return CellHomology(tuple(basis), named, image, F)


@dataclass
class BigradedResult:
    """coHH of a coalgebra within the window ``s <= S``, ``t <= D``.

    Without an internal differential ``cells[(s, t)]`` holds the homology of
    the normalized complex in each bidegree.  With one, ``total[n]`` holds the
    homology of the totalization in total degree ``n = s + t``.
    """

    field: Field
    S: int
    D: int
    cells: Dict[Cell, CellHomology] = dc_field(default_factory=dict)
    total: Dict[int, CellHomology] = dc_field(default_factory=dict)
    dg: bool = False
    min_positive_degree: Optional[int] = None
    bicomplex: Optional[Bicomplex] = None

    def dim(self, s: int, t: int) -> int:
        cell = self.cells.get((s, t))
        return cell.dim if cell else 0

    def dims(self) -> Dict[Cell, int]:
        return {k: v.dim for k, v in sorted(self.cells.items()) if v.dim}

    def reps(self, s: int, t: int) -> List[Dict]:
        cell = self.cells.get((s, t))
        return cell.reps if cell else []

    def total_dims(self) -> Dict[int, int]:
        return {n: h.dim for n, h in sorted(self.total.items())}

    def total_view(self) -> Dict[int, Tuple[int, bool]]:
        """Dimensions by ``t - s`` with a completeness flag.

        Degree ``n`` gathers the cells ``(s, n + s)``.  For a connected
        coalgebra whose positive part starts in degree ``m >= 2`` those cells
        vanish once ``s > n / (m - 1)``, so degree ``n`` is complete when the
        window reaches that far.
        """
        if self.dg:
            raise ValueError("total view by t - s applies to coalgebras without differential")
        out: Dict[int, Tuple[int, bool]] = {}
        m = self.min_positive_degree
        for n in range(self.D + 1):
            total = sum(self.dim(s, n + s) for s in range(self.S + 1) if n + s <= self.D)
            if m is None:
                complete = True
            elif m < 2:
                complete = False
            else:
                s_max = n // (m - 1)
                complete = n + s_max <= self.D and s_max <= self.S
            out[n] = (total, complete)
        return out

    def euler_check(self) -> bool:
        """Per internal degree, alternating sums of cells and of homology agree."""
        b = self.bicomplex
        if b is None or self.dg:
            return True
        for t in range(self.D + 1):
            if t > self.S:
                break
            chi_n = sum((-1) ** s * b.dim(s, t) for s in range(t + 1))
            chi_h = sum((-1) ** s * self.dim(s, t) for s in range(t + 1))
            if chi_n != chi_h:
                return False
        return True


def cohh(c: CoalgebraPresentation, D: Optional[int] = None, S: Optional[int] = None) -> BigradedResult:
    """Bigraded coHochschild homology (or total homology in the dg case)."""
    D = c.D if D is None else D
    S = D if S is None else S
    b = normalized_bicomplex(c, S, D)
    F = c.field
    positive = [t for t in range(1, c.D + 1) if c.space.dim(t)]
    res = BigradedResult(F, S, D, dg=c.has_differential,
                         min_positive_degree=positive[0] if positive else None, bicomplex=b)
    if not c.has_differential:
        for s in range(S + 1):
            for t in range(D + 1):
                basis = b.cells.get((s, t), ())
                if not basis:
                    continue
                d_in = b.horizontal(s - 1, t) if s > 0 else Matrix.zeros(F, len(basis), 0)
                res.cells[(s, t)] = _cell_homology(F, basis, b.horizontal(s, t), d_in)
        return res
    tot = total_complex(b)
    for n in range(0, min(S, D - 1) + 1):
        basis = tot.spaces.get(n, [])
        if not basis:
            continue
        res.total[n] = _cell_homology(F, tuple(basis), tot.d(n), tot.d(n - 1)
                                      if n > 0 else Matrix.zeros(F, len(basis), 0))
    return res


# the circle model ---------------------------------------------------------------------------


def hom_from_set_map(c: CoalgebraPresentation, f: Sequence[int], n_target: int):
    """``Hom(f, C) : C^{(x) Y} -> C^{(x) X}`` for ``f : X -> Y`` of finite ordered sets.

    ``f[x]`` is the image of ``x``; ``n_target = |Y|``.  Each factor ``c_y``
    is comultiplied into ``|f^{-1}(y)|`` pieces (counit when empty) which are
    placed at the positions of the preimage, with the Koszul sign of the
    resulting shuffle.
    """
    F = c.field
    pre = [[x for x in range(len(f)) if f[x] == y] for y in range(n_target)]
    order = [x for block in pre for x in block]

    def apply(tensor: Tensor) -> Dict[Tensor, Scalar]:
        acc: Dict[Tuple, Scalar] = {(): F.one}
        for y, block in enumerate(pre):
            k = len(block)
            if k == 0:
                piece = {(): c.counit(tensor[y])}
            else:
                piece = iterated_comult_vector(c, tensor[y], k - 1)
            nxt: Dict[Tuple, Scalar] = {}
            for w, a in acc.items():
                for p, b in piece.items():
                    if b:
                        vec_add_into(F, nxt, w + p, F.mul(a, b))
            acc = nxt
        out: Dict[Tensor, Scalar] = {}
        for w, a in acc.items():
            placed = [None] * len(f)
            for pos, name in zip(order, w):
                placed[pos] = name
            sgn = 0
            for i in range(len(order)):
                for j in range(i + 1, len(order)):
                    if order[i] > order[j]:
                        sgn += c.degree(w[i]) * c.degree(w[j])
            vec_add_into(F, out, tuple(placed), F.mul(F.sign(sgn), a))
        return out

    return apply


def circle_face(n: int, i: int) -> List[int]:
    """``d_i : S^1_n -> S^1_{n-1}`` on indices ``0..n`` (``n`` is identified with 0)."""
    return [(t if t <= i else t - 1) % n for t in range(n + 1)]


def circle_degeneracy(n: int, i: int) -> List[int]:
    """``s_i : S^1_n -> S^1_{n+1}``."""
    return [(t if t <= i else t + 1) % (n + 2) for t in range(n + 1)]


@dataclass
class CosimplicialLevel:
    n: int
    space: GradedSpace
    cofaces: List[GradedMap]
    codegeneracies: List[GradedMap]


def circle_construction(c: CoalgebraPresentation, n: int) -> CosimplicialLevel:
    """Level ``n`` of ``Hom(S^1_., C)`` with its structure maps.

    ``cofaces[i] : level n -> level n+1`` is induced by the face
    ``d_i : S^1_{n+1} -> S^1_n``; ``codegeneracies[i] : level n+1 -> level n``
    by the degeneracy ``s_i : S^1_n -> S^1_{n+1}``.
    """
    rep = check_coalgebra(c)
    if not rep.cocommutative:
        raise NotCocommutativeError("the circle construction needs a cocommutative coalgebra")
    F = c.field
    src = c.tensor_space(n + 1)
    up = c.tensor_space(n + 2)
    cofaces = []
    for i in range(n + 2):
        fn = hom_from_set_map(c, circle_face(n + 1, i), n + 1)
        cofaces.append(GradedMap.from_function(F, src, up, 0, fn))
    codegs = []
    for i in range(n + 1):
        fn = hom_from_set_map(c, circle_degeneracy(n, i), n + 2)
        codegs.append(GradedMap.from_function(F, up, src, 0, fn))
    return CosimplicialLevel(n, src, cofaces, codegs)


# the coproduct on coHH --------------------------------------------------------------------

Pair = Tuple[Tensor, Tensor]


def codiagonal_vector(c: CoalgebraPresentation, x: Tensor) -> Dict[Pair, Scalar]:
    """``C^{(x) n+1} -> C^{(x) n+1} (x) C^{(x) n+1}`` induced by the fold of two circles.

    ``(c_0 ... c_n) -> sum (-1)^e (c_0' ... c_n') (x) (c_0'' ... c_n'')`` with
    ``e = sum_{j<i} |c_j''| |c_i'|``.
    """
    F = c.field
    acc: Dict[Tuple[Tuple, Tuple, int], Scalar] = {((), (), 0): F.one}
    for y in x:
        nxt: Dict = {}
        for (l, r, deg_r), a in acc.items():
            for (p, q), b in c.comult[y].items():
                s = F.sign(deg_r * c.degree(p))
                vec_add_into(F, nxt, (l + (p,), r + (q,), deg_r + c.degree(q)), F.mul(s, F.mul(a, b)))
        acc = nxt
    out: Dict[Pair, Scalar] = {}
    for (l, r, _), a in acc.items():
        vec_add_into(F, out, (l, r), a)
    return out


def _diag_cells(c: CoalgebraPresentation, s: int, t: int) -> List[Pair]:
    """Normalized cochains of the diagonal in level ``s``, internal degree ``t``."""
    u = c.unit
    out = []
    for ta in range(t + 1):
        for a in c.tensors(s + 1, ta):
            for b in c.tensors(s + 1, t - ta):
                if any(a[i] == u and b[i] == u for i in range(1, s + 1)):
                    continue
                out.append((a, b))
    return out


def _diag_differential(c: CoalgebraPresentation, pair: Pair) -> Dict[Pair, Scalar]:
    F = c.field
    a, b = pair
    out: Dict[Pair, Scalar] = {}
    for i in range(len(a) + 1):
        da = coface_vector(c, a, i)
        db = coface_vector(c, b, i)
        sg = F.sign(i)
        for x, p in da.items():
            for y, q in db.items():
                vec_add_into(F, out, (x, y), F.mul(sg, F.mul(p, q)))
    return out


def alexander_whitney(c: CoalgebraPresentation, u: Mapping[Tensor, Scalar], p: int,
                      v: Mapping[Tensor, Scalar], q: int) -> Dict[Pair, Scalar]:
    """``u (x) v -> delta_{p+q} ... delta_{p+1}(u) (x) delta_0^p(v)``."""
    F = c.field
    front = dict(u)
    for k in range(p + 1, p + q + 1):
        nxt: Dict[Tensor, Scalar] = {}
        for x, a in front.items():
            vec_axpy(F, nxt, a, coface_vector(c, x, k))
        front = nxt
    back = dict(v)
    for _ in range(p):
        nxt = {}
        for x, a in back.items():
            vec_axpy(F, nxt, a, coface_vector(c, x, 0))
        back = nxt
    out: Dict[Pair, Scalar] = {}
    for x, a in front.items():
        for y, b in back.items():
            vec_add_into(F, out, (x, y), F.mul(a, b))
    return out


ClassKey = Tuple[int, int, int]


@dataclass
class InducedCoproduct:
    """Structure constants of the coproduct on homology classes.

    ``table[(s, t, k)]`` maps pairs of class keys to coefficients; class
    ``(s, t, k)`` is the ``k``-th representative of cell ``(s, t)``.
    """

    field: Field
    table: Dict[ClassKey, Dict[Tuple[ClassKey, ClassKey], Scalar]]
    overflow: List[ClassKey]
    D: int

    def coassociative(self) -> List[ClassKey]:
        F = self.field
        bad = []
        for key, terms in self.table.items():
            lhs: Dict = {}
            rhs: Dict = {}
            ok = True
            for (a, b), k in terms.items():
                if a not in self.table or b not in self.table:
                    ok = False
                    break
                for (a1, a2), x in self.table[a].items():
                    vec_add_into(F, lhs, (a1, a2, b), F.mul(k, x))
                for (b1, b2), y in self.table[b].items():
                    vec_add_into(F, rhs, (a, b1, b2), F.mul(k, y))
            if ok and lhs != rhs:
                bad.append(key)
        return bad

    def counital(self, unit: ClassKey = (0, 0, 0)) -> List[ClassKey]:
        F = self.field
        bad = []
        for key, terms in self.table.items():
            left = {b: k for (a, b), k in terms.items() if a == unit}
            right = {a: k for (a, b), k in terms.items() if b == unit}
            if left != {key: F.one} or right != {key: F.one}:
                bad.append(key)
        return bad


def cohh_coproduct(c: CoalgebraPresentation, result: Optional[BigradedResult] = None,
                   D: Optional[int] = None) -> InducedCoproduct:
    """Coproduct on coHH induced by the fold map of circles and Alexander-Whitney.

    For each representative cycle ``w`` in ``N^{s,t}`` the codiagonal image is
    written, modulo boundaries of the normalized diagonal, as a combination of
    ``AW(u (x) v)`` over representative pairs; the coefficients are the
    structure constants.
    """
    if c.has_differential:
        raise ValueError("the coproduct is computed for coalgebras without differential")
    if not check_coalgebra(c).cocommutative:
        raise NotCocommutativeError("the coproduct needs a cocommutative coalgebra")
    if result is None:
        result = cohh(c, D)
    F = c.field
    table: Dict[ClassKey, Dict] = {}
    overflow: List[ClassKey] = []
    for (s, t), cell in sorted(result.cells.items()):
        if not cell.dim:
            continue
        # every pair of classes of total bidegree (s, t)
        pairs = []
        for p in range(s + 1):
            q = s - p
            for t1 in range(t + 1):
                c1 = result.cells.get((p, t1))
                c2 = result.cells.get((q, t - t1))
                if not c1 or not c2:
                    continue
                for i, u in enumerate(c1.reps):
                    for j, v in enumerate(c2.reps):
                        pairs.append(((p, t1, i), (q, t - t1, j), alexander_whitney(c, u, p, v, q)))
        basis = _diag_cells(c, s, t)
        index = {x: i for i, x in enumerate(basis)}
        boundaries = Echelon(F)
        if s > 0:
            for y in _diag_cells(c, s - 1, t):
                img = _diag_differential(c, y)
                boundaries.insert({index[k]: a for k, a in img.items()})
        cols = [boundaries.reduce({index[k]: a for k, a in aw.items()}) for _, _, aw in pairs]
        m = Matrix.from_columns(F, len(basis), cols)
        for k, rep in enumerate(cell.reps):
            target: Dict[Pair, Scalar] = {}
            for x, a in rep.items():
                vec_axpy(F, target, a, codiagonal_vector(c, x))
            vec = boundaries.reduce({index[key]: a for key, a in target.items()})
            sol = solve(m, vec)
            if sol is None:
                overflow.append((s, t, k))
                continue
            table[(s, t, k)] = {(pairs[j][0], pairs[j][1]): a for j, a in sorted(sol.items())}
    return InducedCoproduct(F, table, overflow, result.D)
