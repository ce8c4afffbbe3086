"""Coaugmented graded coalgebras: presentations, axiom checks, cofree models.

A presentation stores the comultiplication as a coefficient table
``comult[c] = {(a, b): coeff}``.  The basis is required to be compatible
with the counit: exactly one basis element (the coaugmentation ``unit``) has
counit 1 and every other basis element has counit 0.

Signs follow the Koszul rule.  The symmetry is
``tau(a (x) b) = (-1)^(|a||b|) b (x) a`` and maps act on tensors by
``(f (x) g)(a (x) b) = (-1)^(|g||a|) f(a) (x) g(b)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .field import Echelon, Field, Matrix, Scalar, row_reduce, vec_add_into, vec_axpy
from .graded import GradedMap, GradedSpace, TruncationError

Name = str
Tensor = Tuple[Name, ...]

DIVIDED_POWER = "DividedPower"
EXTERIOR = "Exterior"
POLYNOMIAL = "Polynomial"
KINDS = (DIVIDED_POWER, EXTERIOR, POLYNOMIAL)

_RESERVED = set("*|^[]() ")


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    kind: str


@dataclass(frozen=True)
class Model:
    """How a presentation was built: a tensor product of one-generator pieces."""

    generators: Tuple[Generator, ...]

    @property
    def is_divided_power(self) -> bool:
        return all(g.kind == DIVIDED_POWER for g in self.generators)


@dataclass(eq=False)
class CoalgebraPresentation:
    field: Field
    space: GradedSpace
    comult: Dict[Name, Dict[Tuple[Name, Name], Scalar]]
    unit: Name
    differential: Optional[Dict[Name, Dict[Name, Scalar]]] = None
    model: Optional[Model] = None
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        deg = self.space.degree_of
        if self.unit not in deg:
            raise PresentationError(f"coaugmentation {self.unit!r} is not a basis element")
        if deg[self.unit] != 0:
            raise PresentationError("coaugmentation must sit in degree 0")
        for c, terms in self.comult.items():
            if c not in deg:
                raise PresentationError(f"comultiplication given for unknown element {c!r}")
            for (a, b) in terms:
                for x in (a, b):
                    if x not in deg:
                        raise PresentationError(f"unknown element {x!r} in comult({c})")
                if deg[a] + deg[b] != deg[c]:
                    raise PresentationError(f"term {a} (x) {b} of comult({c}) has the wrong degree")
        for n in self.space.names():
            self.comult.setdefault(n, {})
        self.comult = {c: {k: v for k, v in t.items() if v != 0} for c, t in self.comult.items()}
        if self.differential is not None:
            d = {}
            for c, terms in self.differential.items():
                if c not in deg:
                    raise PresentationError(f"differential given for unknown element {c!r}")
                for x in terms:
                    if x not in deg:
                        raise PresentationError(f"unknown element {x!r} in d({c})")
                    if deg[x] != deg[c] + 1:
                        raise PresentationError(f"d({c}) must raise degree by one")
                d[c] = {x: v for x, v in terms.items() if v != 0}
            self.differential = d if any(d.values()) else None

    @property
    def D(self) -> int:
        return self.space.D

    def degree(self, name: Name) -> int:
        return self.space.degree_of[name]

    def counit(self, name: Name) -> Scalar:
        return self.field.one if name == self.unit else self.field.zero

    def delta(self, name: Name) -> Dict[Tuple[Name, Name], Scalar]:
        return self.comult[name]

    def d(self, name: Name) -> Dict[Name, Scalar]:
        if self.differential is None:
            return {}
        return self.differential.get(name, {})

    @property
    def has_differential(self) -> bool:
        return self.differential is not None

    @property
    def is_connected(self) -> bool:
        return self.space[0] == (self.unit,)

    def nonunit(self) -> List[Name]:
        return [n for n in self.space.names() if n != self.unit]

    def position(self, name: Name) -> Tuple[int, int]:
        return (self.degree(name), self.space.index(name))

    # tensor powers ------------------------------------------------------

    def tensors(self, k: int, t: int, normalized: bool = False) -> Tuple[Tensor, ...]:
        """Basis tensors of ``C^{(x) k}`` in degree ``t`` in lexicographic order.

        With ``normalized`` every slot after the first avoids the coaugmentation.
        """
        if not normalized:
            return self._tensors(k, t, False)
        if k == 0:
            return ((),) if t == 0 else ()
        key = ("norm", k, t)
        hit = self._cache.get(key)
        if hit is None:
            hit = tuple((a,) + rest
                        for d0 in range(min(t, self.D) + 1) for a in self.space[d0]
                        for rest in self._tensors(k - 1, t - d0, True))
            self._cache[key] = hit
        return hit

    def _tensors(self, k: int, t: int, nonunit: bool) -> Tuple[Tensor, ...]:
        key = ("tensors", k, t, nonunit)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if k == 0:
            out: Tuple[Tensor, ...] = ((),) if t == 0 else ()
        elif t < 0 or t > self.D:
            out = ()
        else:
            items = []
            for d0 in range(t + 1):
                for a in self.space[d0]:
                    if nonunit and a == self.unit:
                        continue
                    for rest in self._tensors(k - 1, t - d0, nonunit):
                        items.append((a,) + rest)
            out = tuple(items)
        self._cache[key] = out
        return out

    def tensor_degree(self, tensor: Tensor) -> int:
        deg = self.space.degree_of
        return sum(deg[x] for x in tensor)

    def tensor_space(self, k: int) -> GradedSpace:
        return GradedSpace(self.D, tuple(self.tensors(k, t) for t in range(self.D + 1)))


# helpers on tensors -----------------------------------------------------------


def apply_in_slot(c: CoalgebraPresentation, vec: Mapping[Tensor, Scalar], slot: int
                  ) -> Dict[Tensor, Scalar]:
    """``id^{slot} (x) Delta (x) id`` on a tensor vector (Delta has degree 0)."""
    F = c.field
    out: Dict[Tensor, Scalar] = {}
    for x, a in vec.items():
        for (l, r), b in c.comult[x[slot]].items():
            vec_add_into(F, out, x[:slot] + (l, r) + x[slot + 1:], F.mul(a, b))
    return out


def swap_sign(c: CoalgebraPresentation, a: Name, b: Name) -> int:
    return (c.degree(a) * c.degree(b)) % 2


def reduced_delta(c: CoalgebraPresentation, name: Name) -> Dict[Tuple[Name, Name], Scalar]:
    """``Delta(c) - c (x) 1 - 1 (x) c`` for ``c`` in the coaugmentation coideal."""
    F = c.field
    out = dict(c.comult[name])
    if name != c.unit:
        vec_add_into(F, out, (name, c.unit), F.neg(F.one))
        vec_add_into(F, out, (c.unit, name), F.neg(F.one))
    return out


def reduced_iterated(c: CoalgebraPresentation, name: Name, n: int) -> Dict[Tensor, Scalar]:
    """Reduced iterated coproduct into ``Cbar^{(x) n+1}``."""
    F = c.field
    if name == c.unit:
        return {}
    vec: Dict[Tensor, Scalar] = {(name,): F.one}
    for _ in range(n):
        nxt: Dict[Tensor, Scalar] = {}
        for x, a in vec.items():
            for (l, r), b in reduced_delta(c, x[0]).items():
                if l == c.unit or r == c.unit:
                    continue
                vec_add_into(F, nxt, (l, r) + x[1:], F.mul(a, b))
        vec = nxt
        if not vec:
            break
    return vec


# axiom checking ---------------------------------------------------------------


@dataclass
class AxiomReport:
    coassociative: bool = True
    counital: bool = True
    coaugmented: bool = True
    cocommutative: bool = True
    conilpotent: bool = True
    differential_ok: bool = True
    witnesses: Dict[str, List[Name]] = dc_field(default_factory=dict)

    FLAGS = ("coassociative", "counital", "coaugmented", "cocommutative",
             "conilpotent", "differential_ok")

    def fail(self, flag: str, witness: Name) -> None:
        setattr(self, flag, False)
        self.witnesses.setdefault(flag, []).append(witness)

    def ok(self, require_cocommutative: bool = False) -> bool:
        flags = ["coassociative", "counital", "coaugmented", "conilpotent", "differential_ok"]
        if require_cocommutative:
            flags.append("cocommutative")
        return all(getattr(self, f) for f in flags)

    def lines(self) -> List[str]:
        out = []
        for f in self.FLAGS:
            good = getattr(self, f)
            w = self.witnesses.get(f, [])
            tail = "" if good else "  witnesses: " + ", ".join(map(str, w[:8]))
            out.append(f"{f:15s} {'PASS' if good else 'FAIL'}{tail}")
        return out


def check_coalgebra(c: CoalgebraPresentation) -> AxiomReport:
    """Check every coalgebra identity exactly on every basis element."""
    F = c.field
    rep = AxiomReport()
    one = F.one
    u = c.unit
    # coaugmentation: Delta(1) = 1 (x) 1 (counit(1) = 1 holds by construction)
    if c.comult[u] != {(u, u): one}:
        rep.fail("coaugmented", u)
    for name in c.space.names():
        dlt = c.comult[name]
        # counit
        left: Dict[Name, Scalar] = {}
        right: Dict[Name, Scalar] = {}
        for (a, b), k in dlt.items():
            if a == u:
                vec_add_into(F, left, b, k)
            if b == u:
                vec_add_into(F, right, a, k)
        if left != {name: one} or right != {name: one}:
            rep.fail("counital", name)
        # coassociativity
        lhs = apply_in_slot(c, {(a, b): k for (a, b), k in dlt.items()}, 0)
        rhs = apply_in_slot(c, {(a, b): k for (a, b), k in dlt.items()}, 1)
        if lhs != rhs:
            rep.fail("coassociative", name)
        # cocommutativity
        tw: Dict[Tuple[Name, Name], Scalar] = {}
        for (a, b), k in dlt.items():
            vec_add_into(F, tw, (b, a), F.mul(F.sign(swap_sign(c, a, b)), k))
        if tw != dlt:
            rep.fail("cocommutative", name)
        # conilpotency within the truncation
        if name != u:
            bound = c.degree(name) + c.space.dim(0) + 1
            if reduced_iterated(c, name, bound):
                rep.fail("conilpotent", name)
    if c.differential is not None:
        _check_differential(c, rep)
    return rep


def _check_differential(c: CoalgebraPresentation, rep: AxiomReport) -> None:
    F = c.field
    u = c.unit
    if c.d(u):
        rep.fail("differential_ok", u)
    for name in c.space.names():
        t = c.degree(name)
        dn = c.d(name)
        if t + 1 > c.D:
            continue
        # counit kills the differential
        if dn.get(u, 0) != 0:
            rep.fail("differential_ok", name)
            continue
        if t + 2 <= c.D:
            dd: Dict[Name, Scalar] = {}
            for x, a in dn.items():
                vec_axpy(F, dd, a, c.d(x))
            if dd:
                rep.fail("differential_ok", name)
                continue
        # coderivation: Delta d = (d (x) 1 + 1 (x) d) Delta
        lhs: Dict[Tuple[Name, Name], Scalar] = {}
        for x, a in dn.items():
            vec_axpy(F, lhs, a, c.comult[x])
        rhs = tensor_differential(c, {k: v for k, v in c.comult[name].items()})
        if lhs != rhs:
            rep.fail("differential_ok", name)


def tensor_differential(c: CoalgebraPresentation, vec: Mapping[Tensor, Scalar]) -> Dict[Tensor, Scalar]:
    """Leibniz extension of the internal differential to tensors."""
    F = c.field
    out: Dict[Tensor, Scalar] = {}
    if c.differential is None:
        return out
    for x, a in vec.items():
        sgn = 0
        for i, y in enumerate(x):
            dy = c.d(y)
            if dy:
                s = F.mul(F.sign(sgn), a)
                for z, b in dy.items():
                    vec_add_into(F, out, x[:i] + (z,) + x[i + 1:], F.mul(s, b))
            sgn += c.degree(y)
    return out


# iterated comultiplication -------------------------------------------------------


def iterated_comult_vector(c: CoalgebraPresentation, name: Name, n: int) -> Dict[Tensor, Scalar]:
    """``Delta^n(name)``, with ``Delta^{n+1} = (Delta (x) C^{(x) n}) Delta^n``."""
    vec: Dict[Tensor, Scalar] = {(name,): c.field.one}
    for _ in range(n):
        vec = apply_in_slot(c, vec, 0)
    return vec


def iterated_comult(c: CoalgebraPresentation, n: int) -> GradedMap:
    """``Delta^n : C -> C^{(x) n+1}`` as a graded map."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    target = c.tensor_space(n + 1)
    if n == 0:
        target = GradedSpace(c.D, tuple(tuple((x,) for x in c.space[t]) for t in range(c.D + 1)))
    return GradedMap.from_function(c.field, c.space, target, 0,
                                   lambda name: iterated_comult_vector(c, name, n))


# constructors -----------------------------------------------------------------


def _check_generator_names(names: Sequence[str]) -> None:
    if len(set(names)) != len(names):
        raise PresentationError("generator names must be distinct")
    for n in names:
        if not n or n == "1" or set(n) & _RESERVED:
            raise PresentationError(f"bad generator name {n!r}")


def _factor_name(g: Generator, e: int) -> str:
    if e == 1:
        return g.name
    if g.kind == DIVIDED_POWER:
        return f"{g.name}^[{e}]"
    return f"{g.name}^{e}"


def monomial_name(gens: Sequence[Generator], exps: Sequence[int]) -> str:
    parts = [_factor_name(g, e) for g, e in zip(gens, exps) if e]
    return "*".join(parts) if parts else "1"


def _monomials(gens: Sequence[Generator], D: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of degree <= D (exterior exponents are 0/1)."""
    out = [()]
    for g in gens:
        cap = 1 if g.kind == EXTERIOR else D // g.degree
        nxt = []
        for m in out:
            used = sum(e * h.degree for e, h in zip(m, gens))
            for e in range(cap + 1):
                if used + e * g.degree > D:
                    break
                nxt.append(m + (e,))
        out = nxt
    return out


def monomial_coalgebra(F: Field, gens: Sequence[Generator], D: int) -> CoalgebraPresentation:
    """Tensor product of one-generator Gamma / Lambda / polynomial coalgebras.

    Each generator contributes ``Delta(g^(e)) = sum c(e, a) g^(a) (x) g^(e-a)``
    with ``c = 1`` for divided powers and exterior factors and ``c = binom``
    for polynomial ones; the factors are combined with the middle-swap sign.
    """
    gens = tuple(gens)
    _check_generator_names([g.name for g in gens])
    for g in gens:
        if g.degree <= 0:
            raise PresentationError(f"generator {g.name} must have positive degree")
        if g.kind not in KINDS:
            raise PresentationError(f"unknown kind {g.kind!r}")
    monos = _monomials(gens, D)

    def weight(m):
        return sum(m)

    def key(m):
        pairs = tuple((i, e) for i, e in enumerate(m) if e)
        return (weight(m), pairs)

    deg = lambda m: sum(e * g.degree for e, g in zip(m, gens))
    slices: List[List[str]] = [[] for _ in range(D + 1)]
    for m in sorted(monos, key=key):
        slices[deg(m)].append(monomial_name(gens, m))
    space = GradedSpace(D, tuple(tuple(s) for s in slices))

    comult: Dict[str, Dict[Tuple[str, str], Scalar]] = {}
    for m in monos:
        terms: Dict[Tuple[str, str], Scalar] = {}
        ranges = [range(e + 1) for e in m]
        for split in itertools.product(*ranges):
            left = split
            right = tuple(e - a for e, a in zip(m, split))
            coeff = F.one
            for g, e, a in zip(gens, m, left):
                if g.kind == POLYNOMIAL:
                    coeff = F.mul(coeff, F.binomial(e, a))
            if coeff == 0:
                continue
            sgn = 0
            for i in range(len(gens)):
                for j in range(i + 1, len(gens)):
                    sgn += (right[i] * gens[i].degree) * (left[j] * gens[j].degree)
            coeff = F.mul(coeff, F.sign(sgn))
            vec_add_into(F, terms, (monomial_name(gens, left), monomial_name(gens, right)), coeff)
        comult[monomial_name(gens, m)] = terms
    return CoalgebraPresentation(F, space, comult, "1", model=Model(gens))


def named_coalgebra(kind: str, generators, F: Field, D: int) -> CoalgebraPresentation:
    """``Gamma_k[x_i]``, ``Lambda_k(y_i)`` or ``k[w_i]`` truncated at ``D``.

    ``generators`` is a list of ``(name, degree)`` pairs, or a mapping
    ``degree -> count`` (names are then generated).  Parity is enforced
    outside characteristic 2: divided power and polynomial generators must
    be even, exterior ones odd.
    """
    if kind not in KINDS:
        raise PresentationError(f"unknown coalgebra kind {kind!r}")
    gens = _generator_list(generators)
    if F.characteristic != 2:
        for name, d in gens:
            want_even = kind != EXTERIOR
            if (d % 2 == 0) != want_even:
                raise PresentationError(
                    f"generator {name} of degree {d} has the wrong parity for {kind}")
    return monomial_coalgebra(F, [Generator(n, d, kind) for n, d in gens], D)


def _generator_list(generators) -> List[Tuple[str, int]]:
    if isinstance(generators, Mapping):
        out = []
        for d in sorted(generators):
            count = generators[d]
            if isinstance(count, float) and math.isinf(count):
                raise PresentationError(
                    f"infinitely many generators in degree {d}; need finitely many per degree")
            if int(count) != count or count < 0:
                raise PresentationError(f"bad generator count {count!r} in degree {d}")
            for i in range(int(count)):
                out.append((f"x{d}_{i + 1}" if count > 1 else f"x{d}", int(d)))
        return out
    out = []
    for item in generators:
        name, d = item
        if not isinstance(d, int):
            raise PresentationError(f"degree of {name} must be an integer")
        out.append((str(name), d))
    return out


def cofree_cocommutative(x: GradedSpace, F: Field, D: Optional[int] = None) -> CoalgebraPresentation:
    """``S^c(x)`` via its divided power / exterior model.

    Outside characteristic 2 even generators give divided power factors and
    odd generators exterior factors; in characteristic 2 every generator
    gives a divided power factor.
    """
    D = x.D if D is None else D
    gens = []
    for name, t in x.items():
        if t == 0:
            raise PresentationError(f"degree-0 cogenerator {name!r} rejected")
        kind = DIVIDED_POWER if (F.characteristic == 2 or t % 2 == 0) else EXTERIOR
        gens.append(Generator(str(name), t, kind))
    return monomial_coalgebra(F, gens, D)


def cogenerators(items: Sequence[Tuple[str, int]], D: int) -> GradedSpace:
    """Graded space of cogenerators from ``(name, degree)`` pairs."""
    for name, t in items:
        if t > D:
            raise TruncationError(f"cogenerator {name} lies above the truncation {D}")
    return GradedSpace.from_degrees(list(items), D)


def cofree_tensor(x: GradedSpace, F: Field, D: Optional[int] = None,
                  letter_differential: Optional[Mapping[str, Mapping[str, Scalar]]] = None
                  ) -> CoalgebraPresentation:
    """``T^c(x)``: words in the basis of ``x`` with deconcatenation.

    ``letter_differential`` (a degree +1 differential on ``x``) extends to
    words by the Leibniz rule, which is a coderivation of deconcatenation.
    """
    D = x.D if D is None else D
    for name, t in x.items():
        if t == 0:
            raise PresentationError(f"degree-0 cogenerator {name!r} rejected")
        if not isinstance(name, str) or set(name) & _RESERVED or name == "1":
            raise PresentationError(f"bad generator name {name!r}")
    letters = [(n, t) for n, t in x.items()]
    words: List[Tuple[Tuple[str, ...], int]] = [((), 0)]
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for w, t in frontier:
            for n, d in letters:
                if t + d <= D:
                    nxt.append((w + (n,), t + d))
        words.extend(nxt)
        frontier = nxt
    order = {n: i for i, (n, _) in enumerate(letters)}
    words.sort(key=lambda wt: (len(wt[0]), [order[n] for n in wt[0]]))

    def wname(w):
        return "|".join(w) if w else "1"

    space = GradedSpace.from_degrees([(wname(w), t) for w, t in words], D)
    comult = {}
    for w, _ in words:
        comult[wname(w)] = {(wname(w[:i]), wname(w[i:])): F.one for i in range(len(w) + 1)}
    differential = None
    if letter_differential:
        deg = dict(letters)
        differential = {}
        for w, t in words:
            out: Dict[str, Scalar] = {}
            if t + 1 <= D:
                before = 0
                for i, a in enumerate(w):
                    for b, k in letter_differential.get(a, {}).items():
                        vec_add_into(F, out, wname(w[:i] + (b,) + w[i + 1:]), F.mul(F.sign(before), F(k)))
                    before += deg[a]
            differential[wname(w)] = out
    return CoalgebraPresentation(F, space, comult, "1", differential)


def trivial_coalgebra(F: Field, D: int) -> CoalgebraPresentation:
    return CoalgebraPresentation(F, GradedSpace.unit(D), {"1": {("1", "1"): F.one}}, "1",
                                 model=Model(()))


def coalgebra_tensor(c1: CoalgebraPresentation, c2: CoalgebraPresentation) -> CoalgebraPresentation:
    """Tensor product coalgebra with the middle-swap coproduct.

    ``Delta(a (x) b) = sum (-1)^(|a''||b'|) (a' (x) b') (x) (a'' (x) b'')``,
    counit ``eps (x) eps``.  Basis names are ``a*b`` with unit factors dropped.
    """
    if c1.field != c2.field:
        raise PresentationError("field mismatch")
    if c1.D != c2.D:
        raise TruncationError(f"truncation mismatch: {c1.D} vs {c2.D}")
    F = c1.field
    D = c1.D

    def nm(a, b):
        if a == c1.unit and b == c2.unit:
            return "1" if a == b == "1" else f"{a}*{b}"
        if a == c1.unit:
            return b
        if b == c2.unit:
            return a
        return f"{a}*{b}"

    slices: List[List[str]] = [[] for _ in range(D + 1)]
    names = {}
    for da in range(D + 1):
        for a in c1.space[da]:
            for db in range(D + 1 - da):
                for b in c2.space[db]:
                    n = nm(a, b)
                    if n in names:
                        raise PresentationError(f"basis name collision {n!r}")
                    names[n] = (a, b)
                    slices[da + db].append(n)
    space = GradedSpace(D, tuple(tuple(s) for s in slices))
    comult = {}
    for n, (a, b) in names.items():
        terms: Dict[Tuple[str, str], Scalar] = {}
        for (a1, a2), x in c1.comult[a].items():
            for (b1, b2), y in c2.comult[b].items():
                s = F.sign(c1.degree(a2) * c2.degree(b1))
                vec_add_into(F, terms, (nm(a1, b1), nm(a2, b2)), F.mul(s, F.mul(x, y)))
        comult[n] = terms
    differential = None
    if c1.has_differential or c2.has_differential:
        differential = {}
        for n, (a, b) in names.items():
            out: Dict[str, Scalar] = {}
            for x, k in c1.d(a).items():
                if c1.degree(x) + c2.degree(b) <= D:
                    vec_add_into(F, out, nm(x, b), k)
            s = F.sign(c1.degree(a))
            for y, k in c2.d(b).items():
                if c1.degree(a) + c2.degree(y) <= D:
                    vec_add_into(F, out, nm(a, y), F.mul(s, k))
            differential[n] = out
    model = None
    if c1.model is not None and c2.model is not None:
        gnames = [g.name for g in c1.model.generators + c2.model.generators]
        if len(set(gnames)) == len(gnames):
            model = Model(c1.model.generators + c2.model.generators)
    return CoalgebraPresentation(F, space, comult, nm(c1.unit, c2.unit), differential, model)


def with_differential(c: CoalgebraPresentation, differential: Mapping[Name, Mapping[Name, Scalar]]
                      ) -> CoalgebraPresentation:
    F = c.field
    d = {k: {x: F(v) for x, v in terms.items()} for k, terms in differential.items()}
    return CoalgebraPresentation(F, c.space, c.comult, c.unit, d, c.model)


def check_coalgebra_morphism(src: CoalgebraPresentation, tgt: CoalgebraPresentation,
                             images: Mapping[Name, Mapping[Name, Scalar]]) -> List[str]:
    """Failures of ``f`` (given on basis elements) to be a coalgebra isomorphism.

    Checks degree preservation, ``(f (x) f) Delta = Delta f``, ``eps f = eps``
    and invertibility in every degree.
    """
    F = src.field
    bad = []
    for n in src.space.names():
        img = images.get(n, {})
        if any(tgt.degree(y) != src.degree(n) for y in img):
            bad.append(f"{n}: degree not preserved")
            continue
        lhs: Dict[Tuple[Name, Name], Scalar] = {}
        for y, a in img.items():
            vec_axpy(F, lhs, a, tgt.comult[y])
        rhs: Dict[Tuple[Name, Name], Scalar] = {}
        for (a, b), k in src.comult[n].items():
            for y, p in images.get(a, {}).items():
                for z, q in images.get(b, {}).items():
                    vec_add_into(F, rhs, (y, z), F.mul(k, F.mul(p, q)))
        if lhs != rhs:
            bad.append(f"{n}: comultiplication not preserved")
        if img.get(tgt.unit, F.zero) != src.counit(n):
            bad.append(f"{n}: counit not preserved")
    for t in range(src.D + 1):
        names = src.space[t]
        cols = [{tgt.space.index(y): a for y, a in images.get(n, {}).items()} for n in names]
        m = Matrix.from_columns(F, tgt.space.dim(t), cols)
        if len(names) != tgt.space.dim(t) or row_reduce(m).rank != len(names):
            bad.append(f"degree {t}: not bijective")
    return bad


# structure ------------------------------------------------------------------------


@dataclass
class Subspace:
    """Per-degree basis vectors (in the coalgebra basis) of a graded subspace."""

    ambient: CoalgebraPresentation
    vectors: Dict[int, List[Dict[Name, Scalar]]]

    def dims(self) -> Tuple[int, ...]:
        return tuple(len(self.vectors.get(t, [])) for t in range(self.ambient.D + 1))

    def all_vectors(self):
        for t in sorted(self.vectors):
            for v in self.vectors[t]:
                yield t, v

    @property
    def space(self) -> GradedSpace:
        items = []
        for t, v in self.all_vectors():
            items.append((format_vector(self.ambient.field, v), t))
        return GradedSpace.from_degrees(items, self.ambient.D)


def format_vector(F: Field, v: Mapping, name=str) -> str:
    if not v:
        return "0"
    parts = []
    for k, a in v.items():
        s = F.format(a)
        label = name(k)
        parts.append(label if s == "1" else f"{s}*{label}")
    return " + ".join(parts)


def primitives(c: CoalgebraPresentation) -> Subspace:
    """Kernel of the reduced coproduct on the coaugmentation coideal, per degree."""
    F = c.field
    out: Dict[int, List[Dict[Name, Scalar]]] = {}
    for t in range(c.D + 1):
        basis = [n for n in c.space[t] if n != c.unit]
        if not basis:
            continue
        rows_index: Dict[Tuple[Name, Name], int] = {}
        cols = []
        for n in basis:
            col: Dict[int, Scalar] = {}
            for k, a in reduced_delta(c, n).items():
                r = rows_index.setdefault(k, len(rows_index))
                vec_add_into(F, col, r, a)
            cols.append(col)
        m = Matrix.from_columns(F, len(rows_index), cols)
        ker = row_reduce(m).kernel
        if ker:
            out[t] = [{basis[j]: a for j, a in sorted(v.items())} for v in ker]
    return Subspace(c, out)


def cogeneration_vectors(c: CoalgebraPresentation, proj: GradedMap, name: Name
                         ) -> Dict[Tuple[Hashable, ...], Scalar]:
    """Image of a basis element under ``C -> T^c(C) -> T^c(Y)``.

    The coaugmentation goes to the empty word; an element of the coideal goes
    to ``sum_n proj^{(x) n+1} Deltabar^n(c)``.
    """
    F = c.field
    if name == c.unit:
        return {(): F.one}
    out: Dict[Tuple[Hashable, ...], Scalar] = {}
    images: Dict[Name, Dict] = {}
    for n in range(c.degree(name) + c.space.dim(0) + 1):
        vec = reduced_iterated(c, name, n)
        if not vec:
            break
        for word, a in vec.items():
            # proj^{(x) n+1}; proj has degree 0 so no signs arise
            acc = {(): a}
            for x in word:
                px = images.get(x)
                if px is None:
                    px = images[x] = proj({x: F.one})
                nxt: Dict[Tuple, Scalar] = {}
                for w, b in acc.items():
                    for y, e in px.items():
                        vec_add_into(F, nxt, w + (y,), F.mul(b, e))
                acc = nxt
                if not acc:
                    break
            for w, b in acc.items():
                vec_add_into(F, out, w, b)
    return out


def cogenerated_by_check(c: CoalgebraPresentation, proj: GradedMap) -> bool:
    """Is ``C -> T^c(C) -> T^c(Y)`` injective in every degree <= D?"""
    if proj.shift != 0 or proj.source != c.space:
        raise ValueError("projection must be a degree-0 map out of the coalgebra")
    F = c.field
    for t in range(c.D + 1):
        basis = c.space[t]
        if not basis:
            continue
        index: Dict[Tuple, int] = {}
        cols = []
        for n in basis:
            col: Dict[int, Scalar] = {}
            for w, a in cogeneration_vectors(c, proj, n).items():
                vec_add_into(F, col, index.setdefault(w, len(index)), a)
            cols.append(col)
        m = Matrix.from_columns(F, len(index), cols)
        if row_reduce(m).rank != len(basis):
            return False
    return True


def canonical_projection(c: CoalgebraPresentation) -> GradedMap:
    """For a monomial model: the projection onto the span of the generators."""
    if c.model is None:
        raise PresentationError("presentation carries no generator model")
    gens = [(g.name, g.degree) for g in c.model.generators if g.degree <= c.D]
    y = GradedSpace.from_degrees(gens, c.D)
    names = set(n for n, _ in gens)
    F = c.field
    return GradedMap.from_function(F, c.space, y, 0,
                                   lambda n: {n: F.one} if n in names else {})


def projection_onto(c: CoalgebraPresentation, sub: Subspace, labels=None) -> Tuple[GradedSpace, GradedMap]:
    """A linear retraction of ``C`` onto ``sub`` (identity on ``sub``).

    The subspace basis is put in reduced echelon form; each basis element of
    ``C`` at a pivot position maps to the matching subspace vector.
    """
    F = c.field
    items = []
    images: Dict[Name, Dict] = {}
    for t in range(c.D + 1):
        vecs = sub.vectors.get(t, [])
        if not vecs:
            continue
        basis = c.space[t]
        ech = Echelon(F)
        for v in vecs:
            ech.insert({c.space.index(n): a for n, a in v.items()})
        for k, p in enumerate(sorted(ech.rows)):
            label = labels(t, k) if labels else f"p{t}_{k + 1}"
            items.append((label, t))
            images[basis[p]] = {label: F.one}
    y = GradedSpace.from_degrees(items, c.D)
    proj = GradedMap.from_function(F, c.space, y, 0, lambda n: images.get(n, {}))
    return y, proj


def cofree_dims(degrees: Sequence[int], F: Field, D: int) -> Tuple[int, ...]:
    """Dimension sequence of ``S^c`` on generators of the given degrees."""
    dims = [1] + [0] * D
    for d in degrees:
        if F.characteristic != 2 and d % 2 == 1:
            dims = [dims[t] + (dims[t - d] if t >= d else 0) for t in range(D + 1)]
        else:
            for t in range(d, D + 1):
                dims[t] += dims[t - d]
    return tuple(dims)


@dataclass
class Recognition:
    is_cofree: bool
    generator_degrees: List[int]
    reason: str

    @property
    def is_divided_power_even(self) -> bool:
        return self.is_cofree and all(d % 2 == 0 and d > 0 for d in self.generator_degrees)


def recognize_cofree(c: CoalgebraPresentation) -> Recognition:
    """Decide whether ``c`` is cofree cocommutative conilpotent (through degree D).

    Uses the primitives as candidate cogenerators: ``c`` is cofree on them
    iff the induced map into ``T^c(P)`` is injective and the dimensions match
    those of ``S^c(P)``.
    """
    if c.has_differential:
        return Recognition(False, [], "presentation has an internal differential")
    if not c.is_connected:
        return Recognition(False, [], "not connected")
    rep = check_coalgebra(c)
    if not rep.ok(require_cocommutative=True):
        bad = [f for f in AxiomReport.FLAGS if not getattr(rep, f)]
        return Recognition(False, [], "coalgebra axioms fail: " + ", ".join(bad))
    prim = primitives(c)
    degrees = [t for t, _ in prim.all_vectors()]
    _, proj = projection_onto(c, prim)
    if cofree_dims(degrees, c.field, c.D) != c.space.dims():
        return Recognition(False, degrees, "dimensions differ from the cofree coalgebra on the primitives")
    if not cogenerated_by_check(c, proj):
        return Recognition(False, degrees, "not cogenerated by its primitives")
    return Recognition(True, degrees, "cofree on its primitives")


# symmetric invariants cross-check ------------------------------------------------


def symmetric_invariants(x: GradedSpace, F: Field, D: int, max_weight: int = 4
                         ) -> Dict[int, List[Dict[Tuple[Hashable, ...], Scalar]]]:
    """``(X^{(x) n})^{Sigma_n}`` inside ``T^c(X)`` for ``n <= max_weight``.

    Keys are internal degrees; the symmetric group acts by permuting factors
    with the Koszul sign.  Built independently of the divided power model.
    """
    letters = list(x.items())
    deg = dict(letters)
    out: Dict[int, List[Dict]] = {}
    for n in range(0, max_weight + 1):
        words_by_deg: Dict[int, List[Tuple]] = {}
        for w in itertools.product([l for l, _ in letters], repeat=n):
            t = sum(deg[a] for a in w)
            if t <= D:
                words_by_deg.setdefault(t, []).append(w)
        for t, words in sorted(words_by_deg.items()):
            idx = {w: i for i, w in enumerate(words)}
            # assemble (sum over i) as a stacked matrix
            mat_rows: Dict[int, Dict[int, Scalar]] = {}
            for i in range(n - 1):
                for j, w in enumerate(words):
                    swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                    s = F.sign(deg[w[i]] * deg[w[i + 1]])
                    base = i * len(words)
                    col = j
                    r = base + idx[swapped]
                    vec_add_into(F, mat_rows.setdefault(r, {}), col, s)
                    vec_add_into(F, mat_rows.setdefault(base + j, {}), col, F.neg(F.one))
            m = Matrix(F, max(n - 1, 0) * len(words), len(words), mat_rows)
            ker = row_reduce(m).kernel
            if ker:
                out.setdefault(t, []).extend({words[j]: a for j, a in v.items()} for v in ker)
    return out
