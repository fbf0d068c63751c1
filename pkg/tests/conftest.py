import random

import pytest

from chowforms import MPoly, VarTable


def pytest_configure(config):
    config.addinivalue_line("markers",
                            "slow: long-running end-to-end fixtures")


def rand_poly(rng, vars, max_deg=3, max_coeff_bits=8, max_terms=6, nonzero=False):
    """Random sparse polynomial with per-term total degree <= max_deg."""
    terms = {}
    bound = 2 ** max_coeff_bits - 1
    for _ in range(rng.randint(1, max_terms)):
        exp = [0] * vars.nvars
        budget = rng.randint(0, max_deg)
        for _ in range(budget):
            exp[rng.randrange(vars.nvars)] += 1
        c = rng.randint(-bound, bound)
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + c
    f = MPoly(vars, terms)
    if nonzero and f.is_zero():
        return MPoly.const(vars, 1)
    return f


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def xy():
    return VarTable(("x", "y"))


@pytest.fixture
def xyz():
    return VarTable(("x", "y", "z"))
