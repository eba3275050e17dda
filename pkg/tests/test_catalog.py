import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfstruct.catalog import (
    CatalogEntry,
    DEFAULT_NAMES,
    default_catalog,
    describe,
    kronecker_symbol,
    parse,
    register,
)
from mfstruct.core import check_class_membership
from mfstruct.errors import CatalogError


def legendre(a, p):
    """Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@given(st.integers(-50, 50), st.sampled_from([3, 5, 7, 11, 13, 97, 101]))
def test_kronecker_odd_primes_follow_euler_criterion(a, p):
    assert kronecker_symbol(a, p) == legendre(a, p)


@given(st.integers(-60, 60), st.integers(1, 300), st.integers(1, 300))
def test_kronecker_is_completely_multiplicative_in_n(a, m, n):
    assert kronecker_symbol(a, m * n) == kronecker_symbol(a, m) * kronecker_symbol(a, n)


def test_kronecker_at_two():
    assert [kronecker_symbol(a, 2) for a in (1, 3, 5, 7, 8)] == [1, -1, -1, 1, 0]


@pytest.mark.parametrize("d", [-4, -3, 5, 8])
def test_kronecker_entries_are_periodic_characters(d):
    f = parse(f"kronecker({d})").table(2000)
    vals = f.values.real
    for n in range(1, 2000 - abs(d)):
        assert vals[n] == vals[n + abs(d)] == kronecker_symbol(d, n)
    assert np.all(f.values.imag == 0)


def test_parser():
    e = parse("moebius * twist(2)")
    assert e.D == 2 and e.orders == {0.0: 1, 2.0: 1}
    assert e.known_gamma.entries == ((0.0, 1), (2.0, 1))
    inv = parse("inv(one)")
    assert inv.orders == {0.0: 1}
    assert parse("(moebius) * (one)").orders == {}
    assert parse("one").has_pole and parse("one").known_gamma is None and parse("one").A is None
    assert parse("tau(3)").D == 3
    for bad in ("nosuch", "tau(9)", "twist(x)", "moebius *", "moebius one", "kronecker(7)", "inv(moebius", "mo$"):
        with pytest.raises(CatalogError):
            parse(bad)


def test_parsed_tables_agree_with_direct_definitions():
    n = np.arange(1, 1001)
    assert np.allclose(parse("pow(1.5)").table(1000).values[1:], n ** 1.5j)
    assert np.allclose(parse("identity").table(1000).values[1:], n == 1)
    assert np.allclose(parse("inv(one)").table(1000).values, parse("moebius").table(1000).values)


@pytest.mark.parametrize("name", DEFAULT_NAMES)
def test_default_entries_register(name):
    entry = register(name, 10**4)
    assert check_class_membership(entry.table(10**4), D=entry.D).member
    assert name.split("(")[0].split()[0] in describe(entry)


def test_registration_rejects_understated_D():
    tau3 = parse("tau(3)")
    with pytest.raises(CatalogError):
        register(CatalogEntry("tau(3)", 2, tau3.build, tau3.orders), 10**3)


def test_default_catalog_size():
    assert len(default_catalog()) == len(DEFAULT_NAMES) == 17
    assert {e.D for e in default_catalog()} == {1, 2, 3, 4}
