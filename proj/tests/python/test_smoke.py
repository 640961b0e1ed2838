import math

import pytest

import phasekit as pk


def test_densities_normalize():
    grid = pk.QuadratureGrid.periodic(64)
    for density in [pk.WrappedNormal(1.0), pk.VonMises(0.5), pk.WrappedCauchy(2.0)]:
        mass = sum(w * density.pdf(x) for x, w in zip(grid.nodes, grid.weights))
        assert mass == pytest.approx(1.0, abs=1e-8)


def test_divergence_identities():
    p = pk.WrappedNormal(1.0)
    q = pk.WrappedNormal(2.0)
    assert pk.relative_entropy(p, p).value == pytest.approx(0.0, abs=1e-10)
    rep = pk.chernoff(p, q)
    assert rep.value > 0.0
    assert 0.0 <= rep.optimizer <= 1.0
    assert rep.value <= pk.relative_entropy(p, q).value + 1e-8


def test_small_variance_gaussian_oracle():
    p = pk.WrappedNormal(0.1)
    q = pk.WrappedNormal(0.2)
    closed = 0.5 * (math.log(2.0) - 0.5)
    assert pk.relative_entropy(p, q).value == pytest.approx(closed, rel=0.01)
    assert pk.fisher_information(pk.Family.wrapped_normal, 0.05) == pytest.approx(
        200.0, rel=0.01
    )


def test_fejer_pmf_and_smoothing():
    pmf = pk.fejer_pmf(8, 0.0)
    assert pmf[0] == pytest.approx(1.0, abs=1e-12)
    assert sum(pk.fejer_pmf(16, 1.234)) == pytest.approx(1.0, abs=1e-10)
    assert pk.smoothed_conditional(4, 0.1, 0.0) == pytest.approx(2.0 / math.pi, abs=1e-10)
    assert pk.rician_conditional(0.0, 0.3, -1.0) == pytest.approx(
        1.0 / (2 * math.pi), abs=1e-15
    )


def test_lossy_pmf_limits():
    lossless = pk.fejer_pmf(6, 0.7)
    at_one = pk.lossy_fejer_pmf(6, 1.0, 0.7)
    assert max(abs(a - b) for a, b in zip(lossless, at_one)) < 1e-12
    vacuum = pk.lossy_fejer_pmf(6, 0.0, 0.7)
    assert all(v == pytest.approx(1.0 / 6, abs=1e-12) for v in vacuum)


def test_induced_density_and_sampling():
    base = pk.WrappedNormal(1.0)
    induced = pk.PhotonInducedDensity(16, base)
    assert sum(induced.outcome_weights) == pytest.approx(1.0, abs=1e-8)
    assert pk.l1_distance(base, induced) < pk.l1_distance(
        base, pk.PhotonInducedDensity(8, base)
    )
    draws = pk.sample(base, 7, 2000)
    assert len(draws) == 2000
    assert draws == pk.sample(base, 7, 2000)
    assert all(-math.pi <= x < math.pi for x in draws)


def test_monte_carlo_roundtrip():
    p = pk.WrappedNormal(1.0)
    q = pk.WrappedNormal(3.0)
    spec = pk.TestSpec(prior=0.5, n=1, trials=20000, seed=11)
    out = pk.bayes_test(p, q, spec)
    exact = pk.bayes_error_exact_n1(p, q, 0.5)
    assert out.average_error(0.5) == pytest.approx(exact, abs=0.01)

    est = pk.estimation_risk(pk.Family.wrapped_normal, 1.0, 200, 200, 3)
    assert est.risk == pytest.approx(est.cramer_rao, rel=0.5)


def test_scheme_end_to_end_uninformative():
    p = pk.WrappedNormal(1.0)
    q = pk.WrappedNormal(3.0)
    spec = pk.TestSpec(prior=0.5, n=1, trials=2000, seed=5)
    out = pk.scheme_end_to_end(pk.RicianScheme(0.0), p, q, spec)
    assert out.average_error(0.5) == pytest.approx(0.5, abs=1e-12)
