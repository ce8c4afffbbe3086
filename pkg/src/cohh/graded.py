"""Truncated graded vector spaces, graded maps, and chain complex homology.

Every space carries a truncation bound ``D``: internal degrees live in
``[0, D]`` and anything a map would produce above ``D`` is discarded.
Answers computed from truncated data are valid for internal degree <= D only.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .field import Echelon, Field, Matrix, Scalar, row_reduce, vec_add_into


class StructuralError(RuntimeError):
    """An identity that must hold exactly (d^2 = 0, a cosimplicial law) failed."""


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class GradedSpace:
    """Finite basis in each internal degree ``0..D``.

    ``basis[t]`` is the ordered tuple of basis names in degree ``t``; names are
    unique across the whole space.
    """

    D: int
    basis: Tuple[Tuple[Hashable, ...], ...]

    def __post_init__(self):
        if self.D < 0:
            raise ValueError("truncation must be nonnegative")
        if len(self.basis) != self.D + 1:
            raise ValueError(f"need {self.D + 1} degree slices, got {len(self.basis)}")
        seen = set()
        for t, names in enumerate(self.basis):
            for n in names:
                if n in seen:
                    raise ValueError(f"duplicate basis name {n!r}")
                seen.add(n)

    @classmethod
    def from_degrees(cls, items: Sequence[Tuple[Hashable, int]], D: int) -> "GradedSpace":
        """Build from ``(name, degree)`` pairs, keeping input order per degree."""
        slices: List[List[Hashable]] = [[] for _ in range(D + 1)]
        for name, deg in items:
            if deg < 0:
                raise ValueError(f"negative degree for {name!r}")
            if deg <= D:
                slices[deg].append(name)
        return cls(D, tuple(tuple(s) for s in slices))

    @classmethod
    def zero(cls, D: int) -> "GradedSpace":
        return cls(D, tuple(() for _ in range(D + 1)))

    @classmethod
    def unit(cls, D: int, name: Hashable = "1") -> "GradedSpace":
        return cls(D, ((name,),) + tuple(() for _ in range(D)))

    def __getitem__(self, t: int) -> Tuple[Hashable, ...]:
        if 0 <= t <= self.D:
            return self.basis[t]
        return ()

    def dims(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.basis)

    def dim(self, t: int) -> int:
        return len(self[t])

    @property
    def total_dim(self) -> int:
        return sum(self.dims())

    def names(self):
        for b in self.basis:
            yield from b

    def items(self):
        for t, b in enumerate(self.basis):
            for n in b:
                yield n, t

    @property
    def degree_of(self) -> Dict[Hashable, int]:
        d = self.__dict__.get("_deg")
        if d is None:
            d = {n: t for n, t in self.items()}
            object.__setattr__(self, "_deg", d)
        return d

    def index(self, name: Hashable) -> int:
        """Position of ``name`` inside its own degree slice."""
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {n: i for b in self.basis for i, n in enumerate(b)}
            object.__setattr__(self, "_idx", idx)
        return idx[name]

    def truncate(self, D: int) -> "GradedSpace":
        if D > self.D:
            raise TruncationError(f"cannot extend truncation {self.D} to {D}")
        return GradedSpace(D, self.basis[: D + 1])

    def relabel(self, f) -> "GradedSpace":
        return GradedSpace(self.D, tuple(tuple(f(n) for n in b) for b in self.basis))


def tensor_space(v: GradedSpace, w: GradedSpace) -> GradedSpace:
    """Truncated tensor product; basis names are pairs ``(a, b)``.

    Degree-t pairs are ordered by the position of ``a`` in ``v`` (degree
    first), then by the position of ``b`` in ``w``.
    """
    if v.D != w.D:
        raise TruncationError(f"truncation mismatch: {v.D} vs {w.D}")
    D = v.D
    slices: List[List[Hashable]] = [[] for _ in range(D + 1)]
    for da in range(D + 1):
        for a in v[da]:
            for db in range(D + 1 - da):
                for b in w[db]:
                    slices[da + db].append((a, b))
    return GradedSpace(D, tuple(tuple(s) for s in slices))


def convolve_dims(a: Sequence[int], b: Sequence[int], D: int) -> Tuple[int, ...]:
    out = [0] * (D + 1)
    for i, x in enumerate(a[: D + 1]):
        if x:
            for j, y in enumerate(b[: D + 1 - i]):
                out[i + j] += x * y
    return tuple(out)


@dataclass
class GradedMap:
    """Linear map raising internal degree by ``shift``.

    ``blocks[t]`` is the matrix from ``source[t]`` to ``target[t + shift]``;
    blocks whose target degree falls outside ``[0, D]`` are absent.
    """

    source: GradedSpace
    target: GradedSpace
    shift: int
    blocks: Dict[int, Matrix]
    field: Field

    def __post_init__(self):
        for t, m in self.blocks.items():
            if m.shape != (self.target.dim(t + self.shift), self.source.dim(t)):
                raise ValueError(f"block {t} has shape {m.shape}")

    @classmethod
    def from_function(cls, F: Field, source: GradedSpace, target: GradedSpace,
                      shift: int, fn) -> "GradedMap":
        """Assemble from ``fn(name) -> {target_name: coeff}``."""
        blocks = {}
        for t in range(source.D + 1):
            u = t + shift
            if not 0 <= u <= target.D:
                continue
            cols = []
            for name in source[t]:
                col: Dict[int, Scalar] = {}
                for tn, c in fn(name).items():
                    if target.degree_of.get(tn) != u:
                        raise ValueError(f"{tn!r} is not a degree-{u} basis element of the target")
                    vec_add_into(F, col, target.index(tn), c)
                cols.append(col)
            blocks[t] = Matrix.from_columns(F, target.dim(u), cols)
        return cls(source, target, shift, blocks, F)

    def block(self, t: int) -> Matrix:
        m = self.blocks.get(t)
        if m is None:
            return Matrix.zeros(self.field, self.target.dim(t + self.shift), self.source.dim(t))
        return m

    def __call__(self, v: Mapping[Hashable, Scalar]) -> Dict[Hashable, Scalar]:
        F = self.field
        out: Dict[Hashable, Scalar] = {}
        for name, c in v.items():
            t = self.source.degree_of[name]
            m = self.blocks.get(t)
            if m is None:
                continue
            j = self.source.index(name)
            for r, row in m.rows.items():
                a = row.get(j)
                if a is not None:
                    vec_add_into(F, out, self.target[t + self.shift][r], F.mul(a, c))
        return out

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self o other``."""
        if other.target != self.source:
            raise ValueError("composition of incompatible maps")
        shift = self.shift + other.shift
        blocks = {}
        for t in range(other.source.D + 1):
            if not 0 <= t + shift <= self.target.D:
                continue
            blocks[t] = self.block(t + other.shift) @ other.block(t) \
                if 0 <= t + other.shift <= other.target.D else \
                Matrix.zeros(self.field, self.target.dim(t + shift), other.source.dim(t))
        return GradedMap(other.source, self.target, shift, blocks, self.field)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if (self.source, self.target, self.shift) != (other.source, other.target, other.shift):
            raise ValueError("sum of incompatible maps")
        keys = set(self.blocks) | set(other.blocks)
        return GradedMap(self.source, self.target, self.shift,
                         {t: self.block(t) + other.block(t) for t in keys}, self.field)

    def scale(self, a) -> "GradedMap":
        return GradedMap(self.source, self.target, self.shift,
                         {t: m.scale(a) for t, m in self.blocks.items()}, self.field)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if (self.source, self.target, self.shift) != (other.source, other.target, other.shift):
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(self.block(t) == other.block(t) for t in keys)


def identity_map(F: Field, v: GradedSpace) -> GradedMap:
    return GradedMap(v, v, 0, {t: Matrix.identity(F, v.dim(t)) for t in range(v.D + 1)}, F)


def tensor_map_koszul(f: GradedMap, g: GradedMap) -> GradedMap:
    """``(f (x) g)(a (x) b) = (-1)^(|g| |a|) f(a) (x) g(b)``."""
    if f.source.D != g.source.D or f.target.D != g.target.D:
        raise TruncationError("incompatible truncations")
    F = f.field
    src = tensor_space(f.source, g.source)
    tgt = tensor_space(f.target, g.target)
    sign_g = g.shift % 2

    def on_pair(pair):
        a, b = pair
        deg_a = f.source.degree_of[a]
        fa = f({a: F.one})
        gb = g({b: F.one})
        s = F.sign(sign_g * deg_a)
        out: Dict[Hashable, Scalar] = {}
        for x, cx in fa.items():
            for y, cy in gb.items():
                if f.target.degree_of[x] + g.target.degree_of[y] <= tgt.D:
                    vec_add_into(F, out, (x, y), F.mul(s, F.mul(cx, cy)))
        return out

    return GradedMap.from_function(F, src, tgt, f.shift + g.shift, on_pair)


# chain complexes ------------------------------------------------------------


@dataclass
class ChainComplex:
    """Finite complex indexed by integer degree.

    ``spaces[n]`` is the ordered basis in degree ``n`` and ``differentials[n]``
    the matrix from degree ``n`` to degree ``n + step`` (``step`` is +1 for
    cochain orientation, -1 for chain orientation).  Missing entries are zero.
    """

    field: Field
    spaces: Dict[int, List[Hashable]]
    differentials: Dict[int, Matrix]
    step: int = 1

    def __post_init__(self):
        if self.step not in (1, -1):
            raise ValueError("step must be +1 or -1")
        for n, m in self.differentials.items():
            if m.shape != (self.dim(n + self.step), self.dim(n)):
                raise ValueError(f"differential out of degree {n} has shape {m.shape}")

    def dim(self, n: int) -> int:
        return len(self.spaces.get(n, ()))

    def d(self, n: int) -> Matrix:
        m = self.differentials.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n + self.step), self.dim(n))
        return m

    def degrees(self) -> List[int]:
        return sorted(n for n in self.spaces if self.spaces[n])

    def check_square_zero(self) -> None:
        for n in self.differentials:
            comp = self.d(n + self.step) @ self.d(n)
            if not comp.is_zero():
                raise StructuralError(f"d o d != 0 out of degree {n}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * self.dim(n) for n in self.spaces)


@dataclass
class Homology:
    degree: int
    dim: int
    representatives: List[Dict[Hashable, Scalar]] = dc_field(default_factory=list)


def homology_from_matrices(F: Field, dim: int, d_out: Matrix, d_in: Matrix,
                           with_reps: bool = True):
    """Kernel of ``d_out`` modulo image of ``d_in`` on a ``dim``-dimensional space.

    Returns ``(dimension, reps, image_echelon)``; reps are integer-indexed
    sparse vectors, each a kernel vector reduced against the image and the
    earlier reps.
    """
    if d_out.ncols != dim or d_in.nrows != dim:
        raise ValueError("shape mismatch in homology computation")
    if not (d_out @ d_in).is_zero():
        raise StructuralError("d o d != 0")
    ker = row_reduce(d_out)
    img = row_reduce(d_in)
    h = len(ker.kernel) - img.rank
    if not with_reps:
        return h, [], None
    ech = Echelon(F)
    for v in img.image:
        ech.insert(v)
    image_ech = Echelon(F)
    image_ech.rows = {p: dict(r) for p, r in ech.rows.items()}
    reps = []
    for v in ker.kernel:
        r = ech.reduce(v)
        if r:
            reps.append(r)
            ech.insert(r)
    if len(reps) != h:
        raise StructuralError("representative count disagrees with rank-nullity")
    return h, reps, image_ech


def complex_homology(c: ChainComplex, n: int, with_reps: bool = True) -> Homology:
    """Homology of ``c`` in degree ``n`` with representative cycles."""
    d_out = c.d(n)
    d_in = c.d(n - c.step)
    h, reps, _ = homology_from_matrices(c.field, c.dim(n), d_out, d_in, with_reps)
    basis = c.spaces.get(n, [])
    return Homology(n, h, [{basis[i]: a for i, a in sorted(r.items())} for r in reps])
