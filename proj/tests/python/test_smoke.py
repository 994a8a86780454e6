"""End-to-end smoke tests for the python bindings.

The numerical heavy lifting is covered by the C++ suites; these tests check
that the bindings expose the main operations faithfully and deterministically.
"""

import math

import pytest

import hawkesmf as hm


def make_config(**overrides):
    kwargs = dict(
        n=5,
        p=0.8,
        regime="subcritical",
        kernel=hm.Kernel.exponential(1.0, 1.0),
        transfer=hm.Transfer.sigmoid(1.0, 1.0, 0.0),
        horizon=4.0,
        seed=12,
    )
    kwargs.update(overrides)
    return hm.Config(**kwargs)


def test_version():
    assert hm.__version__ == "0.1.0"


def test_kernel_closed_forms():
    kernel = hm.Kernel.exponential(1.0, 1.0)
    assert kernel.value(0.0) == pytest.approx(1.0)
    assert kernel.integral(1.0) == pytest.approx(1.0 - math.exp(-1.0))
    assert kernel.squared_integral(1.0) == pytest.approx(
        (1.0 - math.exp(-2.0)) / 2.0
    )

    erlang = hm.Kernel.erlang(2.0, 1.0)
    assert erlang.value(0.0) == 0.0
    assert erlang.value(0.5) == pytest.approx(0.5 * math.exp(-1.0))

    with pytest.raises(ValueError):
        hm.Kernel.exponential(-1.0, 1.0)


def test_transfer_families():
    sig = hm.Transfer.sigmoid(2.0, 1.0, 0.0)
    assert sig.value(0.0) == pytest.approx(1.0)
    assert sig.bound() == 2.0
    assert sig.derivative(0.0) == pytest.approx(0.5)

    const = hm.Transfer.constant(3.0)
    assert const.value(-100.0) == 3.0
    with pytest.raises(ValueError):
        hm.Transfer.constant(-1.0)


def test_config_and_theta():
    config = make_config()
    assert config.theta() == pytest.approx(0.2)
    critical = make_config(regime="critical", p=0.5, n=16)
    assert critical.theta() == pytest.approx(0.25)
    with pytest.raises(ValueError):
        make_config(p=1.5)
    with pytest.raises(ValueError):
        make_config(regime="Critical")


def test_sign_statistic():
    assert hm.sign_statistic([1, 1, 1, 1, 1], 1.0) == 0.0
    w = hm.sign_statistic([1, 1, 1, -1, -1], 0.5)
    assert w == pytest.approx(1.0 / math.sqrt(5.0))

    signs = hm.draw_signs(make_config(p=1.0))
    assert signs == [1, 1, 1, 1, 1]


def test_simulation_is_deterministic():
    config = make_config()
    a = hm.simulate(config)
    b = hm.simulate(config)
    assert a.total_count() == b.total_count()
    assert a.signs == b.signs
    for node in range(config.n):
        assert a.node_times(node) == b.node_times(node)

    other = hm.simulate(make_config(seed=13))
    flat_a = sorted(t for j in range(config.n) for t in a.node_times(j))
    flat_o = sorted(t for j in range(config.n) for t in other.node_times(j))
    assert flat_a != flat_o


def test_field_and_compensator():
    config = make_config()
    events = hm.simulate(config)
    path = hm.compute_in(events, 0.01)
    assert len(path) == 401
    assert path.values[0] == 0.0

    comp = hm.compensator_path(events, path)
    values = comp.values
    assert values[0] == 0.0
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert hm.compute_in_at(events, 2.0) == pytest.approx(
        path.values[200], abs=1e-9
    )


def test_volterra_against_closed_form():
    # h = 2, p = 1, unit exponential kernel: I(t) = 2 (1 - e^{-t}).
    path = hm.solve_volterra(
        hm.Kernel.exponential(1.0, 1.0),
        hm.Transfer.constant(2.0),
        1.0,
        1.0,
        dt=1e-3,
    )
    exact = 2.0 * (1.0 - math.exp(-1.0))
    assert path.values[-1] == pytest.approx(exact, abs=5e-3)

    ode = hm.solve_ode(
        hm.Kernel.exponential(1.0, 1.0),
        hm.Transfer.constant(2.0),
        1.0,
        1.0,
        dt=1e-3,
    )
    assert ode.values[-1] == pytest.approx(exact, abs=1e-10)


def test_stochastic_solvers_share_the_equation():
    kwargs = dict(
        kernel=hm.Kernel.exponential(1.0, 1.0),
        transfer=hm.Transfer.sigmoid(1.0, 1.0, 0.0),
        w=0.7,
        i0=0.0,
        horizon=1.0,
        dt=1e-3,
        seed=21,
    )
    conv = hm.solve_stochastic_convolution(**kwargs)
    markov = hm.markov_sde(**kwargs)
    sup = max(abs(a - b) for a, b in zip(conv.values, markov.values))
    assert sup < 5e-2
    again = hm.solve_stochastic_convolution(**kwargs)
    assert conv.values == again.values


def test_fluctuation_pair():
    limit = hm.solve_volterra(
        hm.Kernel.exponential(1.0, 1.0),
        hm.Transfer.sigmoid(1.0, 1.0, 0.0),
        0.8,
        1.0,
        dt=1e-3,
    )
    k_path, g_path = hm.solve_fluctuation(
        hm.Kernel.exponential(1.0, 1.0),
        hm.Transfer.sigmoid(1.0, 1.0, 0.0),
        0.8,
        limit,
        0.3,
        1.0,
        1e-3,
        seed=4,
    )
    assert len(k_path) == len(limit)
    assert len(g_path) == len(limit)
    assert k_path.values[0] == 0.0
    assert g_path.values[0] == 0.0


def test_stats_helpers():
    assert hm.ks_two_sample([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0
    slope, intercept, r2 = hm.fit_loglog_slope(
        [(10.0, 4.0 / 10.0), (20.0, 4.0 / 20.0), (40.0, 4.0 / 40.0)]
    )
    assert slope == pytest.approx(-1.0)
    assert intercept == pytest.approx(math.log(4.0))
    assert r2 == pytest.approx(1.0)


def test_brownian_increments():
    noise = hm.BrownianIncrements.generate(1.0, 1e-3, seed=3)
    assert noise.dt == 1e-3
    assert len(noise.increments) == 1000
    again = hm.BrownianIncrements.generate(1.0, 1e-3, seed=3)
    assert noise.increments == again.increments
