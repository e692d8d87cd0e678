"""The compiled core and the pure-Python fallback must agree bit for bit."""

import math

import numpy as np
import pytest

from vmhmc import _kernels_py
from vmhmc.samplers import make_stream

compiled = pytest.importorskip("vmhmc._kernels", reason="compiled core not built")


def tuple_stream(count, seed):
    rng = make_stream(seed)
    for _ in range(count):
        yield (
            float(rng.uniform(-12.0, 12.0)),
            _kernels_py.laplace_from_uniform(rng.random()),
            float(np.exp(rng.uniform(math.log(0.1), math.log(20.0)))),
            float(rng.uniform(0.0, 2.5 * math.pi)),
        )


def test_wrap_identical():
    for x in np.linspace(-50.0, 50.0, 10001):
        assert compiled.wrap(float(x)) == _kernels_py.wrap(float(x))


def test_laplace_identical():
    for u in np.linspace(0.0, 1.0 - 2**-53, 4001):
        assert compiled.laplace_from_uniform(float(u)) == _kernels_py.laplace_from_uniform(float(u))


def test_evolve_endpoint_identical():
    for x, p, kappa, T in tuple_stream(20000, seed=101):
        assert compiled.evolve_endpoint(x, p, kappa, T) == _kernels_py.evolve_endpoint(
            x, p, kappa, T
        )


def test_chains_identical():
    uniforms = make_stream(55).random(20000)
    a = np.empty(uniforms.size)
    b = np.empty(uniforms.size)
    compiled.run_chain(0.25, 4.0, 2.32, uniforms, a)
    _kernels_py.run_chain(0.25, 4.0, 2.32, uniforms, b)
    assert np.array_equal(a, b)


def test_oracle_identical():
    for x, p, kappa, T in tuple_stream(30, seed=102):
        assert compiled.oracle_endpoint(x, p, kappa, T, 1e-3) == _kernels_py.oracle_endpoint(
            x, p, kappa, T, 1e-3
        )
