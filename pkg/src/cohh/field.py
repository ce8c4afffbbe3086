"""Exact scalars over Q or F_p, sparse matrices, and row reduction.

Scalars are plain Python values: ``Fraction`` for the rationals and ``int``
in ``range(p)`` for a prime field.  Everything above this module treats them
opaquely through a :class:`Field`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence

Scalar = object  # int (mod p) or Fraction
Vector = Dict[Hashable, Scalar]


class FieldError(ArithmeticError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The coefficient field: ``Field(0)`` is Q, ``Field(p)`` is F_p."""

    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or (c != 0 and not _is_prime(c)):
            raise FieldError(f"characteristic must be 0 or a prime, got {c!r}")

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def __repr__(self):
        return f"Field({self.name})"

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ", "Rationals", "0"):
            return cls(0)
        m = re.fullmatch(r"(?:F|GF|F_)\(?(\d+)\)?", t)
        if not m:
            raise FieldError(f"unrecognized field {text!r} (use Q or Fp, e.g. F3)")
        p = int(m.group(1))
        if not _is_prime(p):
            raise FieldError(f"{t}: {p} is not a prime")
        return cls(p)

    # scalar construction ------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, value) -> Scalar:
        p = self.characteristic
        if isinstance(value, str):
            return self.parse_scalar(value)
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"{value} has denominator divisible by {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def parse_scalar(self, text: str) -> Scalar:
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?", text)
        if not m:
            raise FieldError(f"malformed coefficient {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise FieldError(f"malformed coefficient {text!r}: zero denominator")
        return self(Fraction(num, den))

    def format(self, a: Scalar) -> str:
        if self.characteristic == 0:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a))

    # arithmetic ---------------------------------------------------------

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        p = self.characteristic
        return 1 / Fraction(a) if p == 0 else pow(int(a), -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sign(self, exponent: int):
        """(-1)^exponent as a field element."""
        return self.one if exponent % 2 == 0 else self.neg(self.one)

    def binomial(self, n: int, k: int):
        from math import comb

        return self(comb(n, k))

    def elements(self) -> List[Scalar]:
        if self.characteristic == 0:
            raise FieldError("Q is infinite")
        return list(range(self.characteristic))


# sparse vectors ---------------------------------------------------------


def vec_add_into(F: Field, acc: Vector, key, coeff) -> None:
    """acc[key] += coeff, dropping zeros."""
    if coeff == 0:
        return
    v = acc.get(key)
    if v is None:
        acc[key] = coeff
        return
    v = F.add(v, coeff)
    if v == 0:
        del acc[key]
    else:
        acc[key] = v


def vec_axpy(F: Field, acc: Vector, a, x: Mapping) -> None:
    """acc += a * x."""
    if a == 0:
        return
    for k, v in x.items():
        vec_add_into(F, acc, k, F.mul(a, v))


def vec_scale(F: Field, a, x: Mapping) -> Vector:
    if a == 0:
        return {}
    return {k: F.mul(a, v) for k, v in x.items()}


def vec_sub(F: Field, x: Mapping, y: Mapping) -> Vector:
    out = dict(x)
    vec_axpy(F, out, F.neg(F.one), y)
    return out


# matrices ---------------------------------------------------------------


@dataclass
class Matrix:
    """Sparse ``nrows x ncols`` matrix; ``rows[r]`` maps column -> nonzero scalar."""

    field: Field
    nrows: int
    ncols: int
    rows: Dict[int, Dict[int, Scalar]] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for r, row in self.rows.items():
            if not 0 <= r < self.nrows:
                raise IndexError(f"row {r} out of range")
            row = {c: v for c, v in row.items() if v != 0}
            for c in row:
                if not 0 <= c < self.ncols:
                    raise IndexError(f"column {c} out of range")
            if row:
                clean[r] = row
        self.rows = clean

    @classmethod
    def zeros(cls, F: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(F, nrows, ncols, {})

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls(F, n, n, {i: {i: F.one} for i in range(n)})

    @classmethod
    def from_entries(cls, F: Field, nrows: int, ncols: int, entries: Iterable) -> "Matrix":
        rows: Dict[int, Dict[int, Scalar]] = {}
        for r, c, v in entries:
            row = rows.setdefault(r, {})
            if c in row:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            row[c] = F(v)
        return cls(F, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, F: Field, nrows: int, columns: Sequence[Mapping[int, Scalar]]) -> "Matrix":
        rows: Dict[int, Dict[int, Scalar]] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v != 0:
                    rows.setdefault(r, {})[c] = v
        return cls(F, nrows, len(columns), rows)

    @classmethod
    def from_dense(cls, F: Field, data: Sequence[Sequence]) -> "Matrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = {}
        for r, row in enumerate(data):
            d = {c: F(v) for c, v in enumerate(row) if F(v) != 0}
            if d:
                rows[r] = d
        return cls(F, nrows, ncols, rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entries(self):
        for r in sorted(self.rows):
            for c in sorted(self.rows[r]):
                yield r, c, self.rows[r][c]

    def to_dense(self) -> List[List[Scalar]]:
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self.rows

    def transpose(self) -> "Matrix":
        rows: Dict[int, Dict[int, Scalar]] = {}
        for r, c, v in self.entries():
            rows.setdefault(c, {})[r] = v
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def columns(self) -> List[Dict[int, Scalar]]:
        cols: List[Dict[int, Scalar]] = [{} for _ in range(self.ncols)]
        for r, c, v in self.entries():
            cols[c][r] = v
        return cols

    def apply(self, v: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        F = self.field
        out: Dict[int, Scalar] = {}
        for r, row in self.rows.items():
            s = F.zero
            for c, a in row.items():
                b = v.get(c)
                if b is not None:
                    s = F.add(s, F.mul(a, b))
            if s != 0:
                out[r] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        out: Dict[int, Dict[int, Scalar]] = {}
        for r, row in self.rows.items():
            acc: Dict[int, Scalar] = {}
            for k, a in row.items():
                orow = other.rows.get(k)
                if orow:
                    vec_axpy(F, acc, a, orow)
            if acc:
                out[r] = acc
        return Matrix(F, self.nrows, other.ncols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        F = self.field
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            acc = out.setdefault(r, {})
            vec_axpy(F, acc, F.one, row)
        return Matrix(F, self.nrows, self.ncols, out)

    def scale(self, a) -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols,
                      {r: vec_scale(self.field, a, row) for r, row in self.rows.items()})

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.rows == other.rows)


# row reduction ------------------------------------------------------------


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Vectors are sparse dicts keyed by integer coordinates; the pivot of a row
    is its smallest coordinate.  Rows are kept fully reduced against each
    other, so :meth:`reduce` returns a canonical remainder.
    """

    def __init__(self, F: Field):
        self.field = F
        self.rows: Dict[int, Dict[int, Scalar]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        F = self.field
        out = dict(v)
        for p in [c for c in out if c in self.rows]:
            a = out.get(p)
            if a is not None:
                vec_axpy(F, out, F.neg(a), self.rows[p])
        return out

    def insert(self, v: Mapping[int, Scalar]) -> bool:
        """Add ``v`` to the span; returns False if it was already there."""
        F = self.field
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        r = vec_scale(F, F.inv(r[p]), r)
        for row in self.rows.values():
            a = row.get(p)
            if a is not None:
                vec_axpy(F, row, F.neg(a), r)
        self.rows[p] = r
        return True

    def contains(self, v: Mapping[int, Scalar]) -> bool:
        return not self.reduce(v)


@dataclass
class RowReduction:
    rank: int
    pivots: List[int]                 # pivot column of each nonzero RREF row
    rref: List[Dict[int, Scalar]]     # rows of the reduced echelon form
    kernel: List[Dict[int, Scalar]]   # basis of {v : m v = 0}
    image: List[Dict[int, Scalar]]    # basis of the column space (pivot columns of m)


def row_reduce(m: Matrix) -> RowReduction:
    """Reduced row echelon form of ``m`` with kernel and image bases.

    Rows are processed in index order and each new pivot is the first
    nonzero entry of the reduced row, so identical inputs give identical
    bases.
    """
    F = m.field
    ech = Echelon(F)
    for r in range(m.nrows):
        row = m.rows.get(r)
        if row:
            ech.insert(row)
    pivots = sorted(ech.rows)
    rref = [ech.rows[p] for p in pivots]
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = {f: F.one}
        for p, row in zip(pivots, rref):
            a = row.get(f)
            if a is not None:
                v[p] = F.neg(a)
        kernel.append(v)
    cols = m.columns()
    image = [cols[p] for p in pivots]
    return RowReduction(len(pivots), pivots, rref, kernel, image)


def rank(m: Matrix) -> int:
    return row_reduce(m).rank


def solve(m: Matrix, b: Mapping[int, Scalar]):
    """Some x with ``m x = b``, or None if inconsistent."""
    F = m.field
    # augment with the target as an extra column and reduce
    aug_rows = {r: dict(row) for r, row in m.rows.items()}
    for r, v in b.items():
        if v != 0:
            aug_rows.setdefault(r, {})[m.ncols] = v
    red = row_reduce(Matrix(F, m.nrows, m.ncols + 1, aug_rows))
    x: Dict[int, Scalar] = {}
    for p, row in zip(red.pivots, red.rref):
        if p == m.ncols:
            return None
        a = row.get(m.ncols)
        if a is not None:
            x[p] = a
    return x
