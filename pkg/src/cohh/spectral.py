"""E2 pages of the coBoekstedt spectral sequence and the collapse certificate.

The E2 page of the spectral sequence for a coalgebra spectrum with homology
coalgebra ``H`` is ``coHH(H)``.  Nothing beyond E2 is computed here: the
collapse verdict for divided power inputs on even cogenerators is a
certificate from the degree argument, and every request for higher
differentials or convergence fails with :class:`NotComputedError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .coalgebra import (DIVIDED_POWER, EXTERIOR, CoalgebraPresentation, named_coalgebra,
                        recognize_cofree)
from .complex import BigradedResult, InducedCoproduct, cohh, cohh_coproduct
from .field import Field
from .graded import TruncationError
from .hkr import OmegaGenerator, bigraded_series

NOT_COMPUTED = "not computed — certified by theorem hypothesis only"

COLLAPSES = "Collapses"
INAPPLICABLE = "Inapplicable"


class NotComputedError(RuntimeError):
    """Raised for anything beyond the E2 page (d_r for r >= 2, convergence)."""

    def __init__(self, what: str):
        super().__init__(f"{what}: {NOT_COMPUTED}")


class NotCertifiedError(RuntimeError):
    pass


@dataclass
class GammaRecognition:
    ok: bool
    degrees: List[int]
    complete: bool          # generator list known beyond the truncation
    reason: str


def recognize_gamma(h: CoalgebraPresentation) -> GammaRecognition:
    """Is ``h`` a divided power coalgebra on positive even-degree cogenerators?

    Presentations built by the named constructors carry their generator list;
    anything else must pass the cofree recognition on its primitives.
    """
    if h.has_differential:
        return GammaRecognition(False, [], False, "input has an internal differential")
    if h.model is not None:
        degs = [g.degree for g in h.model.generators]
        if not all(g.kind == DIVIDED_POWER for g in h.model.generators):
            return GammaRecognition(False, degs, True, "model has non-divided-power factors")
        odd = [d for d in degs if d % 2]
        if odd:
            return GammaRecognition(False, degs, True, f"cogenerators in odd degrees {odd}")
        return GammaRecognition(True, sorted(degs), True, "divided power model on even cogenerators")
    rec = recognize_cofree(h)
    if not rec.is_cofree:
        return GammaRecognition(False, rec.generator_degrees, False, rec.reason)
    odd = [d for d in rec.generator_degrees if d % 2]
    if odd:
        return GammaRecognition(False, rec.generator_degrees, False,
                                f"cofree but with cogenerators in odd degrees {odd}")
    return GammaRecognition(True, rec.generator_degrees, False,
                            "cofree on even-degree primitives (recognized up to the truncation)")


@dataclass
class E2Page:
    result: BigradedResult
    coproduct: Optional[InducedCoproduct]
    cogenerator_bidegrees: List[Tuple[int, int]]
    recognition: GammaRecognition

    def dims(self) -> Dict[Tuple[int, int], int]:
        return self.result.dims()


def e2_page(h: CoalgebraPresentation, D: Optional[int] = None, with_coproduct: bool = False) -> E2Page:
    """``E_2^{s,t} = coHH_{s,t}(h)`` with optional induced coproduct."""
    if h.has_differential:
        raise ValueError("the E2 input must be a coalgebra without differential")
    res = cohh(h, D)
    cop = cohh_coproduct(h, res) if with_coproduct else None
    rec = recognize_gamma(h)
    bideg: List[Tuple[int, int]] = []
    if rec.ok:
        for d in rec.degrees:
            bideg += [(0, d), (1, d)]
    return E2Page(res, cop, bideg, rec)


@dataclass
class CollapseVerdict:
    status: str
    justification: List[str] = dc_field(default_factory=list)
    cogenerator_bidegrees: List[Tuple[int, int]] = dc_field(default_factory=list)

    @property
    def collapses(self) -> bool:
        return self.status == COLLAPSES

    def headline(self) -> str:
        if self.collapses:
            return ("Collapses at E2 (collapse hypothesis satisfied: "
                    "Γ on positive even-degree cogenerators)")
        return f"Inapplicable: {self.justification[0] if self.justification else ''}"


def collapse_check(h: CoalgebraPresentation, D: Optional[int] = None) -> CollapseVerdict:
    """Certificate that the spectral sequence collapses at E2, or the reason it is not given.

    For ``h = Gamma[x_i]`` with ``|x_i|`` even and positive, E2 is
    ``Gamma[x_i] (x) Lambda(z_i)`` cogenerated in cosimplicial degrees 0 and 1.
    A differential ``d_r`` has bidegree ``(r, r - 1)`` so its image lies in
    cosimplicial degree ``>= 2``, and a coderivation into a cofree coalgebra
    whose corestriction to the cogenerators vanishes is zero.
    """
    rec = recognize_gamma(h)
    if not rec.ok:
        return CollapseVerdict(INAPPLICABLE, [rec.reason,
                                              "collapse is certified only for divided power "
                                              "coalgebras on positive even-degree cogenerators"])
    bideg = []
    for d in rec.degrees:
        bideg += [(0, d), (1, d)]
    lines = [
        f"cogenerators of E2 at bidegrees {bideg}",
        "E2 = Γ[x_i] ⊗ Λ(z_i) with x_i at (0, |x_i|) and z_i at (1, |x_i|)",
        "d_r has bidegree (r, r-1) for r >= 2, so its image lies in s >= 2",
        "no cogenerator (s in {0, 1}) is hit; the corestriction of d_r to cogenerators vanishes",
        "a coderivation of a cofree coalgebra with vanishing corestriction is zero, so d_r = 0",
    ]
    if not rec.complete:
        lines.append(f"recognition verified through internal degree {h.D}")
    return CollapseVerdict(COLLAPSES, lines, bideg)


def einfty_series(h: CoalgebraPresentation, max_total: int, D: Optional[int] = None
                  ) -> Dict[int, int]:
    """Poincare series of E_infinity by total degree ``t - s``, up to ``max_total``.

    Requires a collapse certificate.  With a generator model the series is
    exact for all requested degrees; for a recognized ad-hoc input only total
    degrees below the truncation are reported.
    """
    verdict = collapse_check(h, D)
    if not verdict.collapses:
        raise NotCertifiedError("E_infinity requires a collapse certificate: "
                                + verdict.headline())
    rec = recognize_gamma(h)
    if not rec.complete:
        max_total = min(max_total, h.D - 1)
    gens = []
    for i, d in enumerate(rec.degrees):
        gens.append(OmegaGenerator(f"x{i}", (0, d), DIVIDED_POWER))
        gens.append(OmegaGenerator(f"z{i}", (0, d - 1), EXTERIOR))
    series = bigraded_series(gens, max_total)
    out = {n: 0 for n in range(max_total + 1)}
    for (_, t), m in series.items():
        out[t] += m
    return out


def higher_differential(h: CoalgebraPresentation, r: int):
    raise NotComputedError(f"d_{r} of the coBoekstedt spectral sequence")


def convergence_check(h: CoalgebraPresentation):
    raise NotComputedError("convergence of the coBoekstedt spectral sequence")


# catalog ------------------------------------------------------------------------------------

_CATALOG = re.compile(r"^\s*(CPinfPower|BU|BSU|BSp)\s*\(\s*(\d+)\s*\)\s*$")


def catalog_generators(name: str) -> List[Tuple[str, int]]:
    m = _CATALOG.match(name)
    if not m:
        raise ValueError(f"unknown catalog entry {name!r}; "
                         "expected CPinfPower(n), BU(n), BSU(n) or BSp(n)")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ValueError("catalog index must be at least 1")
    if kind == "BU":
        return [(f"y{i}", 2 * i) for i in range(1, n + 1)]
    if kind == "BSU":
        return [(f"y{i}", 2 * i) for i in range(2, n + 1)]
    if kind == "BSp":
        return [(f"z{i}", 4 * i) for i in range(1, n + 1)]
    return [(f"x{i}", 2) for i in range(1, n + 1)]


def catalog(name: str, F: Field, D: int) -> CoalgebraPresentation:
    """Homology coalgebras of classifying spaces as divided power coalgebras."""
    gens = catalog_generators(name)
    too_big = [g for g, d in gens if d > D]
    if too_big:
        raise TruncationError(f"{name}: generators {too_big} lie above the truncation {D}")
    return named_coalgebra(DIVIDED_POWER, gens, F, D)
