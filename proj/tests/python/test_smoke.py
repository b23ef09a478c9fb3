import math

import numpy as np
import pytest

import pertpade as pp


def test_sqrt_pade():
    a = pp.pade_from_series([1, 0.5, -0.125, 0.0625, -0.0390625], 2, 2)
    assert a.num == pytest.approx([1, 1.25, 5 / 16])
    assert a.den == pytest.approx([1, 0.75, 1 / 16])
    assert a(3.0) == pytest.approx(121 / 61, rel=1e-14)
    assert pp.series_eval([1, 0.5, -0.125, 0.0625, -0.0390625], 1.0) == pytest.approx(1.3984375)


def test_poles_and_ladder():
    a = pp.pade_from_series([1, -1, 1], 0, 1)
    (loc, res), = pp.poles(a)
    assert loc == pytest.approx(-1.0)
    r = pp.continue_to_one([(-0.5) ** k for k in range(9)])
    assert r.value == pytest.approx(2 / 3, abs=1e-12)
    assert r.spread < 1e-12


def test_exact_basis():
    b = pp.ExactBasis.oscillator(1.0)
    assert [b.eigenvalue(n) for n in range(3)] == pytest.approx([1, 3, 5])
    x = np.linspace(-8, 8, 4001)
    psi = b.eigenfunction(1, x)
    assert np.trapezoid(psi * psi, x) == pytest.approx(1.0, abs=1e-9)
    c = pp.ExactBasis.coulomb(6.0)
    assert c.index_origin == 1
    assert c.eigenvalue(2) == pytest.approx(-2.25)


def test_pipeline_steps():
    v = pp.potential("poschl-teller", {"beta": 20})
    assert v(0.0) == pytest.approx(-420)
    s = pp.make_split(v, "taylor-x:0")
    m = pp.build_delta_matrix(s, dim=32)
    assert m.matrix.shape == (32, 32)
    assert np.allclose(m.matrix, m.matrix.T)
    series = pp.rs_expand(m, 0, 16)
    e = pp.continue_to_one(series.energy_coeffs).value
    assert e == pytest.approx(-400, rel=1e-9)


def test_solve_rows():
    rows = pp.solve(potential="hulthen", levels=[1, 2])
    assert [r["n"] for r in rows] == [1, 2]
    assert rows[0]["E_reference"] == pytest.approx(-289 / 36)
    assert rows[0]["rel_err"] < 1e-4
    csv = pp.solve_csv(potential="poschl-teller", params={"beta": 20}, levels="0:1")
    assert csv.startswith("# pertpade ")
    body = [l for l in csv.splitlines() if not l.startswith("#")]
    assert body[0].split(",")[:2] == ["n", "E_zeroth"]
    assert [int(l.split(",")[0]) for l in body[1:]] == [0, 1]
    assert float(body[1].split(",")[3]) == pytest.approx(-400, rel=1e-9)


def test_oracle():
    v = pp.potential("harmonic")
    r = pp.richardson_refine(v, k=3)
    assert r.energies == pytest.approx([1, 3, 5], abs=1e-5)


def test_errors():
    with pytest.raises(pp.Error, match="Config"):
        pp.solve(potential="nope")
    with pytest.raises(pp.Error):
        pp.solve(potential="hulthen", levels=[5])
    with pytest.raises(pp.Error):
        pp.ExactBasis.oscillator(-1.0)
