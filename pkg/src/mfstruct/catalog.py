"""Named multiplicative functions and a small expression language over them.

Base entries::

    moebius  liouville  one  identity  tau(m)  twist(g)  pow(g)  kronecker(d)

Expressions combine them with Dirichlet convolution ``*``, inversion
``inv(...)`` and parentheses, e.g. ``moebius * twist(2.0)``.

Each entry tracks the order of L(s, f) at the points 1 + i gamma where it is
known in closed form: positive for zeros, negative for poles.  From this the
catalog derives the expected zero multiset and flags entries whose partial
sums cannot be small (those with poles on the 1-line).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import (
    Mode,
    MultFnTable,
    PrimePowerSpec,
    RealMultiset,
    check_class_membership,
    dirichlet_convolve,
    dirichlet_inverse,
    sieve_from_spec,
    tau_multiset,
)
from .errors import CatalogError

KRONECKER_DISCRIMINANTS = (-4, -3, 5, 8)
REGISTRATION_N = 10**5


def kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a/n) for integers a and n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class CatalogEntry:
    """A catalog function with its declared class parameters.

    Args:
        name: Canonical expression for the function.
        D: Declared bound in |Lambda_f| <= D Lambda.
        build: Maps N to the sieved table.
        orders: Known order of L(s, f) at 1 + i gamma (zero > 0, pole < 0).
        A: Declared partial-sum exponent, or None when the partial sums are
            not small.
    """

    name: str
    D: int
    build: Callable[[int], MultFnTable] = field(repr=False, compare=False)
    orders: dict[float, int] = field(default_factory=dict)

    @property
    def has_pole(self) -> bool:
        return any(m < 0 for m in self.orders.values())

    @property
    def known_gamma(self) -> RealMultiset | None:
        """Expected 1-line zero multiset, or None when a pole is present."""
        if self.has_pole:
            return None
        return RealMultiset(tuple(sorted((g, m) for g, m in self.orders.items() if m > 0)))

    @property
    def A(self) -> float | None:
        return None if self.has_pole else float(self.D + 3)

    def table(self, N: int) -> MultFnTable:
        return self.build(N)


def _spec_table(label, D, func) -> Callable[[int], MultFnTable]:
    spec = PrimePowerSpec(label, D, Mode.F_VALUES, func, vectorized=True)
    return lambda N: sieve_from_spec(spec, N)


def _moebius():
    f = lambda p, k: np.where(k == 1, -1.0, 0.0)
    return CatalogEntry("moebius", 1, _spec_table("moebius", 1, f), {0.0: 1})


def _liouville():
    f = lambda p, k: np.where(k % 2 == 1, -1.0, 1.0)
    return CatalogEntry("liouville", 1, _spec_table("liouville", 1, f), {0.0: 1})


def _one():
    return CatalogEntry("one", 1, _spec_table("one", 1, lambda p, k: np.ones(p.shape)), {0.0: -1})


def _identity():
    return CatalogEntry("identity", 1, _spec_table("identity", 1, lambda p, k: np.zeros(p.shape)))


def _tau(m: int):
    if not 1 <= m <= 4:
        raise CatalogError("tau(m) needs 1 <= m <= 4")
    name = f"tau({m})"
    build = lambda N: MultFnTable(
        tau_multiset(RealMultiset(((0.0, m),)), N).values, m, name, "builtin"
    )
    return CatalogEntry(name, m, build, {0.0: -m})


def _twist(g: float):
    name = f"twist({g:g})"
    f = lambda p, k: np.where(k == 1, -np.exp(1j * g * np.log(p)), 0.0)
    return CatalogEntry(name, 1, _spec_table(name, 1, f), {float(g): 1})


def _pow(g: float):
    name = f"pow({g:g})"
    f = lambda p, k: np.exp(1j * g * k * np.log(p))
    return CatalogEntry(name, 1, _spec_table(name, 1, f), {float(g): -1})


def _kronecker(d: int):
    if d not in KRONECKER_DISCRIMINANTS:
        raise CatalogError(f"kronecker(d) supports d in {KRONECKER_DISCRIMINANTS}")
    residues = np.array([kronecker_symbol(d, r) if r else 0 for r in range(abs(d))], dtype=float)
    # (d/.) is periodic mod |d| for these discriminants; r = 0 only arises for p | d
    chi_p = lambda p: np.where(np.gcd(p, abs(d)) > 1, 0.0, residues[p % abs(d)])
    f = lambda p, k: chi_p(p) ** k
    name = f"kronecker({d})"
    return CatalogEntry(name, 1, _spec_table(name, 1, f))


_BASE = {
    "moebius": (0, lambda: _moebius()),
    "liouville": (0, lambda: _liouville()),
    "one": (0, lambda: _one()),
    "identity": (0, lambda: _identity()),
    "tau": (1, lambda m: _tau(int(m))),
    "twist": (1, lambda g: _twist(float(g))),
    "pow": (1, lambda g: _pow(float(g))),
    "kronecker": (1, lambda d: _kronecker(int(d))),
}

DEFAULT_NAMES = (
    "moebius",
    "liouville",
    "one",
    "identity",
    "tau(2)",
    "tau(3)",
    "tau(4)",
    "twist(2)",
    "twist(-1)",
    "pow(1)",
    "kronecker(-4)",
    "kronecker(-3)",
    "kronecker(5)",
    "kronecker(8)",
    "moebius * twist(2)",
    "moebius * moebius",
    "inv(liouville)",
)


def _combine(a: CatalogEntry, b: CatalogEntry) -> CatalogEntry:
    orders = dict(a.orders)
    for g, m in b.orders.items():
        orders[g] = orders.get(g, 0) + m
    orders = {g: m for g, m in orders.items() if m}
    build = lambda N: dirichlet_convolve(a.build(N), b.build(N))
    return CatalogEntry(f"{a.name} * {b.name}", a.D + b.D, build, orders)


def _invert(a: CatalogEntry) -> CatalogEntry:
    build = lambda N: dirichlet_inverse(a.build(N))
    return CatalogEntry(f"inv({a.name})", a.D, build, {g: -m for g, m in a.orders.items()})


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z_0-9]*)|(\()|(\))|(\*)|(,)|([-+]?[0-9.]+(?:[eE][-+]?\d+)?))")


def _tokenize(expr: str) -> list[str]:
    out, pos = [], 0
    expr = expr.strip()
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise CatalogError(f"unexpected character at {pos} in {expr!r}")
        out.append(m.group().strip())
        pos = m.end()
    return [t for t in out if t]


class _Parser:
    def __init__(self, expr: str):
        self.expr = expr
        self.toks = _tokenize(expr)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise CatalogError(f"expected {want or 'a token'} in {self.expr!r}")
        self.i += 1
        return tok

    def product(self) -> CatalogEntry:
        out = self.atom()
        while self.peek() == "*":
            self.take("*")
            out = _combine(out, self.atom())
        return out

    def atom(self) -> CatalogEntry:
        tok = self.take()
        if tok == "(":
            inner = self.product()
            self.take(")")
            return inner
        if tok == "inv":
            self.take("(")
            inner = self.product()
            self.take(")")
            return _invert(inner)
        if tok not in _BASE:
            raise CatalogError(f"unknown function {tok!r}")
        nargs, make = _BASE[tok]
        if nargs == 0:
            return make()
        self.take("(")
        arg = self.take()
        self.take(")")
        try:
            return make(arg)
        except ValueError as exc:
            raise CatalogError(f"bad argument {arg!r} to {tok}") from exc


def parse(expr: str) -> CatalogEntry:
    """Parse a catalog expression into an entry (no tables are built)."""
    p = _Parser(expr)
    out = p.product()
    if p.peek() is not None:
        raise CatalogError(f"trailing input {p.peek()!r} in {expr!r}")
    return out


def register(expr: "str | CatalogEntry", N: int = REGISTRATION_N) -> CatalogEntry:
    """Parse an expression (or take an entry) and confirm its declared D on [1, N].

    Raises:
        CatalogError: the declared D fails the membership test.
    """
    entry = parse(expr) if isinstance(expr, str) else expr
    rep = check_class_membership(entry.table(N), D=entry.D)
    if not rep.member:
        raise CatalogError(f"{entry.name}: declared D={entry.D} fails: {'; '.join(rep.notes)}")
    return entry


def default_catalog() -> list[CatalogEntry]:
    return [parse(name) for name in DEFAULT_NAMES]


def gamma_from_orders(entry: CatalogEntry) -> list[tuple[float, int]]:
    return [(g, m) for g, m in sorted(entry.orders.items()) if m > 0]


def expected_total(entry: CatalogEntry) -> int:
    return sum(m for _, m in gamma_from_orders(entry))


def describe(entry: CatalogEntry) -> str:
    kg = entry.known_gamma
    gamma = "pole on 1-line" if kg is None else "{" + ", ".join(f"{g:g}:{m}" for g, m in kg.entries) + "}"
    A = "-" if entry.A is None else f"{entry.A:g}"
    return f"{entry.name:<24} D={entry.D}  A={A:<3} Gamma={gamma}"


__all__ = [
    "CatalogEntry",
    "kronecker_symbol",
    "parse",
    "register",
    "default_catalog",
    "describe",
    "DEFAULT_NAMES",
]
