import math

import pytest

import mhd


def test_complex_is_exact():
    cx = mhd.DeRhamComplex(2)
    grad, curl = cx.grad(), cx.curl()
    assert grad["shape"] == (cx.num_dofs(mhd.SpaceKind.Curl), cx.num_dofs(mhd.SpaceKind.Grad))
    # C G = 0 row by row.
    ncols = grad["shape"][1]
    dense_g = [[0.0] * ncols for _ in range(grad["shape"][0])]
    for i in range(grad["shape"][0]):
        for k in range(grad["indptr"][i], grad["indptr"][i + 1]):
            dense_g[i][grad["indices"][k]] = grad["data"][k]
    for i in range(curl["shape"][0]):
        row = [0.0] * ncols
        for k in range(curl["indptr"][i], curl["indptr"][i + 1]):
            e, c = curl["indices"][k], curl["data"][k]
            for j in range(ncols):
                row[j] += c * dense_g[e][j]
        assert all(v == 0.0 for v in row)


def test_ideal_step_conserves_invariants():
    cx = mhd.DeRhamComplex(3)
    p = mhd.SimParams()
    p.n = 3
    p.dt = 0.01
    integ = mhd.Integrator(cx, p)
    s = integ.vortex_initial_state()
    e0 = mhd.energy(cx, s)
    hc0 = mhd.cross_helicity(cx, s.u, s.B)
    for _ in range(3):
        s, rep = integ.step(s)
        assert rep.converged
    assert abs(mhd.energy(cx, s) - e0) < 1e-9 * e0
    assert abs(mhd.cross_helicity(cx, s.u, s.B) - hc0) < 1e-10
    assert mhd.div_max_raw(cx, s.B) < 1e-14
    assert s.step == 3 and math.isclose(s.t, 0.03)


def test_helicity_precondition():
    cx = mhd.DeRhamComplex(2)
    b = mhd.FieldVector(mhd.SpaceKind.Div, [float(i % 7) for i in range(cx.num_dofs(mhd.SpaceKind.Div))])
    with pytest.raises(ValueError):
        mhd.magnetic_helicity(cx, b)


def test_sources_and_convergence():
    check = mhd.validate_sources()
    assert check.passed and check.momentum_error < 1e-6
    rows = mhd.run_convergence([2, 4], 0.05, 0.1)
    assert len(rows) == 2 and rows[1]["err_b"] < rows[0]["err_b"]


def test_run_experiment(tmp_path):
    status, log = mhd.run_experiment("conserve", f"n = 2\ndt = 0.05\nt_end = 0.05\noutput_dir = {tmp_path}\n")
    assert status == 0
    lines = (tmp_path / "timeseries.csv").read_text().splitlines()
    assert lines[0].startswith("step,time,energy,hm,hc")
    assert len(lines) == 3
    with pytest.raises(ValueError):
        mhd.run_experiment("conserve", "bogus = 1\n")
