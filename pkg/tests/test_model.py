import math

import numpy as np
import pytest
from scipy import constants

from vitats import (
    CoherentPump,
    DivisionDegenerate,
    MissingCavityFrequency,
    NegativeRate,
    NonpositiveBeta,
    NonpositiveTemperature,
    ParameterError,
    SystemParams,
    TemperaturePump,
    ThermalPump,
    effective_rates,
    params_from_config,
    params_to_config,
    thermal_occupation,
    validate_params,
)


def test_validate_identity_for_clean_params():
    p = SystemParams(gamma={("e", "g"): 10.0, ("f", "g"): 2.0}, eta=4.0,
                     kappa=1.0, delta=0.0)
    q = validate_params(p)
    assert q.gamma[("e", "g")] == 10.0
    assert q.gamma[("f", "g")] == 2.0
    assert q.gamma[("g", "g")] == 0.0
    assert q.eta == 4.0 and q.kappa == 1.0 and q.pump is None


def test_negative_rate_rejected():
    with pytest.raises(NegativeRate):
        validate_params(SystemParams(gamma={("e", "g"): -1.0}))
    with pytest.raises(NegativeRate):
        validate_params(SystemParams(gamma={}, eta=-0.5))
    with pytest.raises(NegativeRate):
        validate_params(SystemParams(gamma={}, kappa=-0.1))


def test_nonpositive_beta_rejected():
    with pytest.raises(NonpositiveBeta):
        validate_params(SystemParams(gamma={}, beta=0.0))


def test_gamma_gg_forced_to_zero():
    p = validate_params(SystemParams(gamma={("g", "g"): 3.0, ("e", "g"): 1.0}))
    assert p.gamma[("g", "g")] == 0.0


def test_temperature_pump_converts_to_thermal():
    # 80 mK at omega_c/2pi = 5 GHz
    omega_c = 2 * math.pi * 5e9
    p = SystemParams(gamma={("e", "g"): 1.0},
                     pump=TemperaturePump(temperature=0.080, omega_c=omega_c))
    q = validate_params(p)
    assert isinstance(q.pump, ThermalPump)
    assert q.n_th == pytest.approx(0.0524, abs=5e-4)
    assert q.n_th == pytest.approx(0.0524217894, rel=1e-8)


def test_temperature_pump_requires_omega_c():
    with pytest.raises(MissingCavityFrequency):
        validate_params(SystemParams(
            gamma={}, pump=TemperaturePump(temperature=0.08, omega_c=0.0)))


def test_thermal_occupation_ln2_gives_one():
    # hbar*omega/(kB*T) = ln 2  ->  n_th = 1
    temperature = 0.010
    omega = math.log(2.0) * constants.k * temperature / constants.hbar
    assert thermal_occupation(omega, temperature) == pytest.approx(1.0, rel=1e-12)


def test_thermal_occupation_low_temperature_limit():
    omega = 2 * math.pi * 5e9
    assert thermal_occupation(omega, 1e-6) == 0.0
    assert thermal_occupation(omega, 0.010) == pytest.approx(3.789449e-11, rel=1e-5)
    with pytest.raises(NonpositiveTemperature):
        thermal_occupation(omega, 0.0)
    with pytest.raises(NonpositiveTemperature):
        thermal_occupation(omega, -1.0)


def test_thermal_occupation_monotonicity():
    rng = np.random.default_rng(7)
    omega = 2 * math.pi * 5e9
    temps = np.sort(rng.uniform(0.005, 0.5, size=50))
    occ = [thermal_occupation(omega, t) for t in temps]
    assert all(b > a for a, b in zip(occ, occ[1:]))
    omegas = np.sort(rng.uniform(0.5, 10.0, size=50)) * 2 * math.pi * 1e9
    occ_w = [thermal_occupation(w, 0.080) for w in omegas]
    assert all(b < a for a, b in zip(occ_w, occ_w[1:]))


def test_effective_rates_published_regime_point():
    # gamma map in 2pi*MHz; kappa and eta stay as quoted in the regime example
    p = SystemParams(gamma={("e", "g"): 15.0, ("f", "g"): 6.5},
                     eta=36.0, kappa=0.63)
    r = effective_rates(validate_params(p))
    assert r.gamma_e == pytest.approx(7.5)
    assert r.gamma_f == pytest.approx(3.25)
    assert r.gamma_R == pytest.approx(1.93, abs=5e-3)
    assert r.eta_R == pytest.approx(9.28, abs=5e-3)


def test_effective_rates_eta_T():
    p = SystemParams.from_effective(5.0, 1.0, eta=4.0, kappa=1.0)
    assert effective_rates(p).eta_T == pytest.approx(3.0, abs=1e-15)


def test_effective_rates_degenerate():
    with pytest.raises(DivisionDegenerate) as info:
        effective_rates(validate_params(SystemParams(gamma={}, eta=1.0)))
    assert info.value.gamma_e == 0.0
    assert info.value.gamma_f == 0.0


def test_effective_rates_scale_covariance():
    rng = np.random.default_rng(11)
    for _ in range(200):
        ge, gf, kappa, eta = rng.uniform(0.05, 20.0, size=4)
        scale = rng.uniform(0.01, 100.0)
        base = effective_rates(SystemParams.from_effective(ge, gf, eta=eta, kappa=kappa))
        scaled = effective_rates(SystemParams.from_effective(
            scale * ge, scale * gf, eta=scale * eta, kappa=scale * kappa))
        assert scaled.gamma_e == pytest.approx(scale * base.gamma_e, rel=1e-12)
        assert scaled.gamma_f == pytest.approx(scale * base.gamma_f, rel=1e-12)
        assert scaled.eta_T == pytest.approx(scale * base.eta_T, rel=1e-9, abs=1e-12)
        assert scaled.gamma_R == pytest.approx(base.gamma_R, rel=1e-12)
        assert scaled.eta_R == pytest.approx(base.eta_R, rel=1e-12)


def test_from_effective_expansion():
    p = SystemParams.from_effective(5.0, 1.0, eta=2.0, kappa=0.2)
    assert p.gamma[("e", "g")] == 10.0
    assert p.gamma[("f", "g")] == 2.0
    r = effective_rates(p)
    assert r.gamma_e == 5.0 and r.gamma_f == 1.0


def test_config_rejects_unknown_and_mixed_keys():
    with pytest.raises(ParameterError):
        params_from_config({"gamma_e": 5, "gamma_f": 1, "bogus": 1})
    with pytest.raises(ParameterError):
        params_from_config({"gamma_e": 5, "gamma_f": 1, "gamma_eg": 10})
    with pytest.raises(ParameterError):
        params_from_config({"gamma_e": 5})  # pair must be complete
    with pytest.raises(ParameterError):
        params_from_config({"gamma_e": 5, "gamma_f": 1, "n_th": 0.1, "Omega": 0.2})
    with pytest.raises(ParameterError):
        params_from_config({"gamma_e": 5, "gamma_f": 1, "pump_detuning": 0.5})
    with pytest.raises(MissingCavityFrequency):
        params_from_config({"gamma_e": 5, "gamma_f": 1, "temperature_mK": 80})


def test_config_pumps():
    p = params_from_config({"gamma_e": 5, "gamma_f": 1, "n_th": 0.3})
    assert isinstance(p.pump, ThermalPump) and p.n_th == 0.3
    p = params_from_config({"gamma_e": 5, "gamma_f": 1, "Omega": 0.4,
                            "pump_detuning": 0.1})
    assert isinstance(p.pump, CoherentPump)
    assert p.Omega == 0.4 and p.pump_detuning == 0.1
    p = params_from_config({"gamma_e": 5, "gamma_f": 1,
                            "temperature_mK": 80, "omega_c_GHz": 5})
    assert isinstance(p.pump, ThermalPump)
    assert p.n_th == pytest.approx(0.0524217894, rel=1e-8)


def test_config_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(50):
        cfg = {"gamma_eg": rng.uniform(0, 10), "gamma_ef": rng.uniform(0, 2),
               "gamma_fg": rng.uniform(0, 4), "eta": rng.uniform(0, 10),
               "kappa": rng.uniform(0, 3), "delta": rng.uniform(-2, 2),
               "beta": rng.uniform(0.1, 3), "epsilon": rng.uniform(1e-4, 1e-2),
               "n_th": rng.uniform(0, 1)}
        p = params_from_config(cfg)
        echo = params_to_config(p)
        q = params_from_config(echo)
        assert q == p
        for key, value in cfg.items():
            assert echo[key] == value


def test_pump_defaults_zero():
    p = validate_params(SystemParams(gamma={("e", "g"): 1.0}))
    assert p.n_th == 0.0 and p.Omega == 0.0 and p.pump_detuning == 0.0
