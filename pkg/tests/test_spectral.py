import pytest

from cohh.coalgebra import (DIVIDED_POWER, EXTERIOR, CoalgebraPresentation, PresentationError,
                            named_coalgebra, trivial_coalgebra)
from cohh.complex import cohh
from cohh.field import Field
from cohh.graded import TruncationError
from cohh.spectral import (NOT_COMPUTED, NotCertifiedError, NotComputedError, catalog,
                           catalog_generators, collapse_check, convergence_check, e2_page,
                           einfty_series, higher_differential, recognize_gamma)

from oracles import series_expand, total_series

F2, F3, F5 = Field(2), Field(3), Field(5)


def test_e2_of_gamma_f2():
    h = named_coalgebra(DIVIDED_POWER, [("x", 2)], F2, 10)
    page = e2_page(h)
    assert page.dims() == series_expand([(0, 2, False), (1, 2, True)], 10)
    assert page.cogenerator_bidegrees == [(0, 2), (1, 2)]
    assert page.dims() == cohh(h).dims()


def test_e2_of_ground_field():
    assert e2_page(trivial_coalgebra(F3, 6)).dims() == {(0, 0): 1}


def test_e2_of_exterior():
    h = named_coalgebra(EXTERIOR, [("y", 3)], F3, 12)
    assert e2_page(h).dims() == series_expand([(0, 3, True), (1, 3, False)], 12)
    assert e2_page(h).cogenerator_bidegrees == []


def test_e2_with_coproduct():
    h = named_coalgebra(DIVIDED_POWER, [("x", 2)], F3, 6)
    page = e2_page(h, with_coproduct=True)
    assert page.coproduct.coassociative() == [] and page.coproduct.counital() == []


def test_collapse_verdicts():
    h = named_coalgebra(DIVIDED_POWER, [("x1", 2), ("x2", 4)], F5, 8)
    v = collapse_check(h)
    assert v.collapses and v.cogenerator_bidegrees == [(0, 2), (1, 2), (0, 4), (1, 4)]
    assert any("(r, r-1)" in line for line in v.justification)
    assert v.headline().startswith("Collapses at E2")
    lam = collapse_check(named_coalgebra(EXTERIOR, [("y", 3)], F3, 9))
    assert not lam.collapses and lam.headline().startswith("Inapplicable")


def test_infinitely_many_generators_rejected():
    with pytest.raises(PresentationError):
        named_coalgebra(DIVIDED_POWER, {2: float("inf")}, F3, 8)


def test_collapse_by_recognition_without_model():
    h = named_coalgebra(DIVIDED_POWER, [("x", 2)], F3, 8)
    bare = CoalgebraPresentation(h.field, h.space, h.comult, h.unit)
    rec = recognize_gamma(bare)
    assert rec.ok and not rec.complete and rec.degrees == [2]
    v = collapse_check(bare)
    assert v.collapses and "through internal degree 8" in v.justification[-1]
    assert einfty_series(bare, 20) == {n: 1 for n in range(8)}


def test_polynomial_f2_is_not_certified():
    h = named_coalgebra("Polynomial", [("w", 2)], F2, 8)
    bare = CoalgebraPresentation(h.field, h.space, h.comult, h.unit)
    assert not collapse_check(bare).collapses
    with pytest.raises(NotCertifiedError):
        einfty_series(bare, 6)


def test_einfty_of_gamma():
    h = named_coalgebra(DIVIDED_POWER, [("x", 2)], F3, 8)
    assert einfty_series(h, 10) == {n: 1 for n in range(11)}


def test_einfty_of_bu2():
    h = catalog("BU(2)", F2, 8)
    series = einfty_series(h, 12)
    oracle = total_series([(2, False), (4, False), (1, True), (3, True)], 12)
    assert [series[n] for n in range(13)] == oracle
    assert oracle[:5] == [1, 1, 1, 2, 3]


def test_einfty_of_ground_field():
    assert einfty_series(trivial_coalgebra(F3, 4), 5) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0}


def test_einfty_requires_certificate():
    with pytest.raises(NotCertifiedError):
        einfty_series(named_coalgebra(EXTERIOR, [("y", 3)], F3, 9), 6)


def test_catalog():
    bsp = catalog("BSp(1)", F3, 8)
    assert [(g.name, g.degree) for g in bsp.model.generators] == [("z1", 4)]
    assert catalog_generators("BSU(2)") == [("y2", 4)]
    bu1, cp1 = catalog("BU(1)", F3, 8), catalog("CPinfPower(1)", F3, 8)
    assert bu1.space.dims() == cp1.space.dims()
    rename = lambda n: n.replace("y1", "x1")
    assert {rename(k): {(rename(a), rename(b)): v for (a, b), v in t.items()}
            for k, t in bu1.comult.items()} == cp1.comult
    assert catalog_generators("BU(3)") == [("y1", 2), ("y2", 4), ("y3", 6)]
    assert catalog_generators("CPinfPower(2)") == [("x1", 2), ("x2", 2)]
    with pytest.raises(ValueError):
        catalog("BO(2)", F3, 8)
    with pytest.raises(TruncationError):
        catalog("BU(3)", F3, 4)


def test_beyond_e2_is_not_computed():
    h = named_coalgebra(DIVIDED_POWER, [("x", 2)], F3, 6)
    with pytest.raises(NotComputedError) as e:
        higher_differential(h, 2)
    assert NOT_COMPUTED in str(e.value)
    with pytest.raises(NotComputedError) as e:
        convergence_check(h)
    assert NOT_COMPUTED in str(e.value)
