from fractions import Fraction

import pytest

import sqpack


def test_adversarial_costs():
    inst = sqpack.Instance.adversarial(3)
    assert len(inst) == 12
    assert sqpack.nfdh(inst).cost == 38
    assert sqpack.ffdh(inst).cost == 21
    packing, report = sqpack.approx5322(inst)
    assert packing.cost == 18
    assert report["lb1"] == 14 and report["R"] == 9
    assert sqpack.exact(inst, max_items=12).cost == 18


def test_sizes_are_fractions():
    inst = sqpack.Instance([Fraction(1, 3), "2/3", 1, "0.25"])
    assert inst.sizes == [Fraction(1, 3), Fraction(2, 3), Fraction(1), Fraction(1, 4)]
    assert inst.total_area == Fraction(1, 9) + Fraction(4, 9) + 1 + Fraction(1, 16)
    with pytest.raises(TypeError):
        sqpack.Instance([0.5])


def test_fits():
    two_thirds = Fraction(2, 3)
    third = Fraction(1, 3)
    assert sqpack.fits([two_thirds] + [third] * 5)
    assert not sqpack.fits([two_thirds] + [third] * 6)
    assert not sqpack.fits([Fraction(34, 100)] * 5)
    assert sqpack.fits([Fraction(34, 100)] * 4)


def test_round_trip_and_validate():
    inst = sqpack.Instance.generate("uniform", n=40, seed=3)
    assert sqpack.Instance.parse(inst.serialize()).sizes == inst.sizes
    packing = sqpack.ffdh(inst)
    again = sqpack.Packing.parse(packing.serialize(), inst)
    assert sorted(again.placements) == sorted(packing.placements)
    assert sqpack.validate(packing, inst) == []
    item, bin_, x, y = packing.placements[0]
    assert bin_ >= 1 and isinstance(x, Fraction)
    assert sqpack.render_svg(packing, inst).startswith("<svg")


def test_ptas_relaxed_reports_stages():
    inst = sqpack.Instance.generate("uniform", n=120, seed=4)
    packing, rows = sqpack.ptas(inst)
    assert sqpack.validate(packing, inst) == []
    b = sqpack.bounds(inst)
    assert packing.cost >= max(b["lb1"], b["lb2"])
    assert {"merge", "reinstate", "medium"} <= {r["stage"] for r in rows}


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        sqpack.Instance.parse("not an instance")
    with pytest.raises(ValueError):
        sqpack.Instance.generate("uniform", n=5, lo="1/2", hi="1/4")
    with pytest.raises(sqpack.BudgetExceeded):
        sqpack.exact(sqpack.Instance.generate("uniform", n=12), max_items=9)
    with pytest.raises(sqpack.InvalidArgument):
        sqpack.ptas(sqpack.Instance.generate("uniform", n=10), mode="strict")
