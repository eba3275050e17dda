import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfstruct.errors import AmbiguousRelationError, EnumerationCapError
from mfstruct.lattice import (
    ANQuery,
    a_n_closed_form_k1,
    a_n_report,
    a_n_value,
    compositions,
    multinomial,
)

SQRT2 = math.sqrt(2)


def brute_force(gammas, N, x, tol=1e-9):
    """Expand |1 + sum e^{it gamma}|^{2N} as 2N-tuples and count resonant pairs."""
    g = (0.0, *gammas)
    total = 0
    for left in itertools.product(range(len(g)), repeat=N):
        a = sum(g[i] for i in left)
        for right in itertools.product(range(len(g)), repeat=N):
            if abs(a - sum(g[i] for i in right) - x) <= tol:
                total += 1
    return total


def test_examples():
    assert a_n_value(ANQuery((SQRT2,), 2, 0.0)) == 6
    assert a_n_value(ANQuery((SQRT2,), 2, SQRT2)) == 4
    assert a_n_value(ANQuery((0.7,), 1, 0.0)) == 2
    assert a_n_value(ANQuery((1.41421356,), 3, 0.0)) == 20


@pytest.mark.parametrize("N", range(1, 7))
def test_k1_closed_form(N):
    for m in range(-N, N + 1):
        got = a_n_value(ANQuery((1.0,), N, float(m)))
        assert got == math.comb(2 * N, N - m) == a_n_closed_form_k1(N, m)
    assert a_n_value(ANQuery((1.0,), N, float(N + 1))) == 0 == a_n_closed_form_k1(N, N + 1)


@pytest.mark.parametrize(
    "gammas, N, x",
    [
        ((SQRT2, math.sqrt(3)), 2, 0.0),
        ((SQRT2, math.sqrt(3)), 2, SQRT2),
        ((SQRT2, math.sqrt(3)), 3, math.sqrt(3) - SQRT2),
        ((1.0, 2.0), 2, 1.0),
        ((0.0, 2.0), 2, 2.0),
        ((1.0, 2.0, 3.0), 2, 0.0),
    ],
)
def test_against_tuple_enumeration(gammas, N, x):
    assert a_n_value(ANQuery(gammas, N, x)) == brute_force(gammas, N, x)


def test_zero_ordinate_is_the_all_ones_case():
    for N in range(1, 6):
        assert a_n_value(ANQuery((0.0,), N, 0.0)) == 4**N


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.sampled_from([-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, SQRT2]), min_size=1, max_size=3, unique=True),
    st.integers(1, 3),
    st.sampled_from([0.0, 0.5, 1.0, -1.0, SQRT2, 2.5]),
)
def test_negation_symmetry_and_total_mass(gammas, N, x):
    q = ANQuery(tuple(gammas), N, x)
    qn = ANQuery(tuple(-g for g in gammas), N, -x)
    assert a_n_value(q) == a_n_value(qn)
    # summing A_N over every reachable phase difference recovers (k+1)^{2N}
    k = len(gammas)
    g = np.array([0.0, *gammas])
    phases = [float(np.dot(c, g)) for c in compositions(N, k + 1)]
    raw = sorted(a - b for a in phases for b in phases)
    diffs = [d for i, d in enumerate(raw) if i == 0 or d - raw[i - 1] > 1e-12]
    assert sum(a_n_value(ANQuery(tuple(gammas), N, d)) for d in diffs) == (k + 1) ** (2 * N)


def test_compositions_and_multinomials():
    comps = list(compositions(3, 3))
    assert len(comps) == math.comb(5, 2) and all(sum(c) == 3 for c in comps)
    assert sum(multinomial(3, c) for c in comps) == 3**3


def test_errors():
    with pytest.raises(EnumerationCapError):
        a_n_value(ANQuery((1.0, 2.0, 3.0), 7, 0.0))
    with pytest.raises(AmbiguousRelationError):
        a_n_value(ANQuery((1.0, 1.0 + 1e-11), 1, 0.0))
    with pytest.raises(ValueError):
        ANQuery((1.0, 1.0), 1)
    with pytest.raises(ValueError):
        ANQuery((1.0,), 0)
    with pytest.raises(ValueError):
        ANQuery((), 1)


def test_report_ratios_approach_one():
    prev = 0.0
    for N in (1, 2, 4, 8):
        rep = a_n_report(ANQuery((SQRT2,), N, 0.0))
        assert rep.value == rep.at_zero == math.comb(2 * N, N)
        assert rep.growth_ratio > 0.2
        assert rep.min_gamma_ratio > prev
        prev = rep.min_gamma_ratio
    assert prev > 0.8
