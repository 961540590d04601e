import math

import numpy as np
import pytest

import isav

SMALL = {"preset": "ex1-isav-be", "grid": {"nx": 16, "ny": 16}, "tau": 0.05, "t_end": 0.25}


def test_presets_cover_all_schemes():
    names = [name for name, _ in isav.presets()]
    assert len(names) == 16
    assert "ex2-sav-bdf" in names


def test_resolve_config_fills_preset_values():
    cfg = isav.resolve_config({"preset": "ex1-isav-bdf"})
    assert cfg["S"] == 6.0
    assert cfg["scheme"] == "isav-bdf"


def test_run_returns_records_and_field():
    out = isav.run(SMALL)
    records = out["records"]
    assert [r["step"] for r in records] == list(range(6))
    assert records[0]["D_be"] is None
    assert out["phi"].shape == (16, 16)
    energies = [r["E_orig"] for r in records]
    assert all(b <= a for a, b in zip(energies, energies[1:]))
    assert math.isclose(records[-1]["t"], 0.25)


def test_run_is_deterministic():
    a = isav.run(SMALL)["phi"]
    b = isav.run(SMALL)["phi"]
    assert np.array_equal(a, b)


def test_validation_error_is_a_value_error():
    with pytest.raises(ValueError, match="tau"):
        isav.run({"preset": "ex1-isav-be", "tau": -1.0})
    with pytest.raises(isav.ValidationError):
        isav.resolve_config('{"bogus": 1}')


def test_bulk_energy_zero_raises_scheme_error(tmp_path):
    lx = 2 * math.pi
    rows = "\n".join(" ".join(["1"] * 8) for _ in range(8))
    (tmp_path / "one.txt").write_text(f"8 8 {lx!r} {lx!r} 0\n{rows}\n")
    cfg = {"preset": "ex1-isav-be", "grid": {"nx": 8, "ny": 8},
           "init": {"kind": "file", "path": str(tmp_path / "one.txt")}}
    with pytest.raises(isav.NonPositiveEnergy):
        isav.run(cfg)
    with pytest.raises(isav.SchemeError):
        isav.run(cfg)


def test_temporal_convergence_is_first_order():
    cfg = {**SMALL, "t_end": 0.2}
    rows = isav.converge(cfg, taus=[0.02, 0.01], ref_tau=1e-4)
    assert rows[0]["order"] is None
    assert 0.8 < rows[1]["order"] < 1.2


def test_potential_matches_double_well():
    phi = np.linspace(-2.0, 2.0, 9)
    np.testing.assert_allclose(isav.potential("double-well", phi, 0), (phi**2 - 1) ** 2 / 4)
    np.testing.assert_allclose(isav.potential("double-well", phi, 1), phi**3 - phi)
    fh = isav.potential("flory-huggins", phi, 0, eps=1.0, beta=3.0, sigma=0.01)
    assert np.all(np.isfinite(fh))
