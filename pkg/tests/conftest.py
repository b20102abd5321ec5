import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_poly(rng, max_deg=4, max_terms=6, scale=2.0):
    """Random sparse mixed polynomial as a term dict."""
    from lensroots import mixedpoly as mp

    terms = {}
    for _ in range(rng.integers(1, max_terms + 1)):
        nu = int(rng.integers(0, max_deg + 1))
        mu = int(rng.integers(0, max_deg + 1))
        c = complex(rng.normal() * scale, rng.normal() * scale)
        terms[(nu, mu)] = terms.get((nu, mu), 0) + c
    return mp.MixedPolynomial(terms)
