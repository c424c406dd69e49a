import math

import pytest

import calabikit as ck


def test_flat_resolvability():
    phi = ck.BiSeries.abs2_variable(2, 1, 0) + ck.BiSeries.abs2_variable(2, 1, 1)
    phi.mark_real_valued()
    d0 = ck.diastasis_from_potential(phi)
    report = ck.resolvability(d0)
    assert report["psd"]
    assert report["rank"] == 2


def test_series_ops_and_labels():
    s = ck.BiSeries.abs2_variable(1, 2, 0)
    sq = s * s
    assert sq.coeff([2], [2]) == pytest.approx(1.0)
    labels, entries = ck.calabi_matrix(sq.pure_part_removed())
    assert labels == ["z1", "z1^2"]
    assert entries.shape == (2, 2)


def test_go_potential_values():
    assert ck.go_potential(1.0, 1.0, 1.0, 1.0) == pytest.approx(2.0, rel=1e-12)
    t = (math.sqrt(5.0) - 1.0) / 2.0
    assert ck.go_potential(4.0 / 3.0, 2.0 / 3.0, 1.0, 1.0) == pytest.approx(t ** -1.5, rel=1e-12)


def test_witness_and_derivative_check():
    assert ck.go_negative_witness(4.0 / 3.0, 2.0 / 3.0, 40) == 2
    assert ck.go_negative_witness(1.0, 1.0, 40) is None
    closed, fd = ck.go_derivative_check(4.0 / 3.0, 2.0 / 3.0, 1.0, 2)
    assert closed == pytest.approx(-2.25, rel=1e-12)
    assert fd == pytest.approx(closed, abs=1e-4)


def test_character_rank():
    assert ck.character_rank([0.25, 1.0 / 9.0])["rank"] == 2
    assert ck.character_rank([0.25, 0.0625])["rank"] == 1


def test_surface_and_reports():
    surface = ck.build_surface("inoue", 4)
    assert "f0" in surface.deck_names
    h = surface.homothety("f0", samples=20, seed=1)
    assert h["homothetic"]
    assert h["factor"] == pytest.approx(0.7548776662466927, rel=1e-9)

    report = ck.run("verify", surface="parton:k=2", samples=50)
    assert report["pass"]
    assert report["certificate"]["c"] == pytest.approx(1.0, rel=1e-8)

    descent = ck.run("descent", surface="hopf:alpha=2,beta=2i", samples=60)
    assert descent["descent"]["mode"] == "gram"

    witness = ck.run("witness", alpha_abs=4.0, beta_abs=2.0)
    assert witness["witness_j"] == 2
