"""End-to-end analysis of a catalog function.

Sieve (through the cache), locate the 1-line zeros, choose the multiset used
for compensation and evaluate the compensated prime sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analytic import GammaMultiset, SeriesEvaluationConfig, build_gamma_multiset
from .cache import cached_table
from .catalog import CatalogEntry, parse
from .core import MultFnTable
from .verify import (
    VerificationReport,
    default_checkpoints,
    partial_sums_small,
    theorem_report,
)

GAMMA_MATCH_TOL = 1e-3


def resolve_weight(weight: str, D: int) -> str:
    """``auto`` picks Riesz weights when zeros of order 2 or more are possible."""
    if weight == "auto":
        return "riesz" if D >= 2 else "sharp"
    return weight


def load_table(
    entry: CatalogEntry, N: int, cache_dir=None, use_cache: bool = True
) -> MultFnTable:
    return cached_table(entry.name, N, entry.table, cache_dir, enabled=use_cache)


def matches(found: GammaMultiset, known, tol: float = GAMMA_MATCH_TOL) -> bool:
    """Same multiplicities and ordinates within ``tol``."""
    if known is None or len(found.entries) != len(known.entries):
        return False
    return all(
        m1 == m2 and abs(g1 - g2) < tol for (g1, m1), (g2, m2) in zip(found.entries, known.entries)
    )


@dataclass
class Analysis:
    entry: CatalogEntry
    table: MultFnTable
    D: int
    A: float
    found: GammaMultiset
    used: GammaMultiset
    gamma_source: str
    report: VerificationReport
    notes: list[str] = field(default_factory=list)


def analyze(
    expr: str | CatalogEntry,
    N: int = 10**6,
    T: float = 5.0,
    D: int | None = None,
    A: float | None = None,
    K: float | None = None,
    checkpoints=None,
    grid_step: float = 1e-2,
    weight: str = "auto",
    gamma_source: str = "auto",
    cache_dir=None,
    use_cache: bool = True,
    table: MultFnTable | None = None,
) -> Analysis:
    """Run the full structure check on one function.

    ``gamma_source``: ``scan`` compensates with the zeros found numerically;
    ``auto`` substitutes the closed-form ordinates known to the catalog when
    they agree with the scan to 1e-3 (the scan's ordinates carry truncation
    error for functions without symmetry).

    Raises:
        MembershipError, MultiplicityOverflowError: f is outside F(D).
    """
    entry = parse(expr) if isinstance(expr, str) else expr
    D = entry.D if D is None else D
    A = (entry.A or float(D + 3)) if A is None else A
    if table is None:
        table = load_table(entry, N, cache_dir, use_cache)
    cfg = SeriesEvaluationConfig(A=A, K=K, truncation=table.N, weight=resolve_weight(weight, D))
    xs = checkpoints or default_checkpoints(table.N)
    notes = []
    small = partial_sums_small(table, xs)
    if not small:
        notes.append("partial sums of f are not small; unresolved scan points are ignored")
    found = build_gamma_multiset(table, D, T, cfg, grid_step, allow_unresolved=not small)
    used, source = found, "scan"
    known = entry.known_gamma
    if gamma_source == "auto" and known is not None:
        known_T = GammaMultiset.of([(g, m) for g, m in known.entries if abs(g) <= T], D, T)
        if matches(found, known_T):
            used, source = known_T, "catalog"
        else:
            notes.append(f"scan {found.entries} disagrees with closed form {known_T.entries}")
    report = theorem_report(table, D, A, used, T, xs)
    return Analysis(entry, table, D, A, found, used, source, report, notes)
