"""Dimension vectors, the Euler and Tits quadratic forms, and the admissible cone.

A dimension vector is ``(alpha0; alpha_s)``: an ambient dimension plus one
integer per poset element. Forms are evaluated on arbitrary integer vectors;
only the dimension formula needs admissibility.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .errors import (
    InternalInconsistencyError,
    NotAdmissibleError,
    SearchSpaceTooLargeError,
    UnknownLabelError,
)
from .matrix import IntMatrix, checked, dot, frobenius_factors, incidence_inverse, incidence_matrix, vecmat
from .poset import Poset, fresh_label

DEFAULT_SUMMAND_BUDGET = 10**7


@dataclass(frozen=True)
class DimVector:
    """Ambient dimension ``alpha0`` and per-element dimensions ``alpha``.

    Entries may be negative: the quadratic forms are defined on the whole
    integer lattice. Input parsing rejects negatives separately.
    """

    alpha0: int
    alpha: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alpha0", int(self.alpha0))
        object.__setattr__(self, "alpha", {str(k): int(v) for k, v in dict(self.alpha).items()})

    def __getitem__(self, label: str) -> int:
        return self.alpha[label]

    def __hash__(self) -> int:
        return hash((self.alpha0, tuple(sorted(self.alpha.items()))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DimVector):
            return NotImplemented
        return self.alpha0 == other.alpha0 and dict(self.alpha) == dict(other.alpha)

    def __add__(self, other: DimVector) -> DimVector:
        return DimVector(self.alpha0 + other.alpha0, {k: v + other.alpha[k] for k, v in self.alpha.items()})

    def __sub__(self, other: DimVector) -> DimVector:
        return DimVector(self.alpha0 - other.alpha0, {k: v - other.alpha[k] for k, v in self.alpha.items()})

    def restrict(self, labels: Iterable[str]) -> DimVector:
        return DimVector(self.alpha0, {s: self.alpha[s] for s in labels})

    def values(self, order: Iterable[str]) -> list[int]:
        return [self.alpha[s] for s in order]

    def is_zero(self) -> bool:
        return self.alpha0 == 0 and not any(self.alpha.values())

    def format(self, order: Iterable[str]) -> str:
        return f"({self.alpha0}; {', '.join(str(self.alpha[s]) for s in order)})"

    @classmethod
    def from_sequence(cls, P: Poset, alpha0: int, values: Iterable[int], order: Iterable[str] | None = None) -> DimVector:
        """Build from values listed in ``order`` (input label order by default)."""
        order = list(P.labels if order is None else order)
        values = list(values)
        if len(values) != len(order):
            raise ValueError(f"expected {len(order)} values, got {len(values)}")
        return cls(alpha0, dict(zip(order, values)))


def check_vector(P: Poset, alpha: DimVector) -> None:
    missing = [s for s in P.labels if s not in alpha.alpha]
    extra = [s for s in alpha.alpha if s not in P]
    if missing or extra:
        raise UnknownLabelError(
            f"dimension vector does not match poset (missing {missing}, unknown {extra})")


# -- coordinate vector and iterates ----------------------------------------------

def coordinate_vector(P: Poset, alpha: DimVector) -> dict[str, int]:
    """``c = alpha_P . C_P^-1``, so that ``alpha_s = sum_{t <= s} c_t``."""
    check_vector(P, alpha)
    order = P.level_order
    row = vecmat(alpha.values(order), incidence_inverse(P))
    c = dict(zip(order, row))
    for s in order:
        if c[s] + sum(c[t] for t in P.down_set(s)) != alpha[s]:
            raise InternalInconsistencyError(f"coordinate vector fails to reproduce alpha[{s}]")
    return c


def iteration_sequence(P: Poset, alpha: DimVector) -> list[tuple[int, ...]]:
    """Iterates ``alpha^(1) = alpha_P`` and ``alpha^(k) = alpha^(k-1) F_{k-1}^-1``.

    Vectors are in level order; the last one is the coordinate vector.
    """
    check_vector(P, alpha)
    current = alpha.values(P.level_order)
    trace = [tuple(current)]
    for _, inv in frobenius_factors(P):
        current = vecmat(current, inv)
        trace.append(tuple(current))
    return trace


# -- admissibility ---------------------------------------------------------------

@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    coordinates: dict[str, int]
    violations: list[str]

    def __bool__(self) -> bool:
        return self.admissible

    @property
    def certificate(self) -> str | None:
        return self.violations[0] if self.violations else None


def is_admissible(P: Poset, alpha: DimVector) -> Admissibility:
    """Cone membership: ``c >= 0`` and ``alpha0 >= alpha_s`` for every s.

    Violations are listed coordinate conditions first, in level order.
    """
    c = coordinate_vector(P, alpha)
    violations = [f"c[{s}] = {c[s]} < 0" for s in P.level_order if c[s] < 0]
    violations += [f"alpha[{s}] = {alpha[s]} > alpha0 = {alpha.alpha0}"
                   for s in P.level_order if alpha[s] > alpha.alpha0]
    return Admissibility(not violations, c, violations)


def require_admissible(P: Poset, alpha: DimVector) -> dict[str, int]:
    adm = is_admissible(P, alpha)
    if not adm:
        raise NotAdmissibleError(
            f"dimension vector is not admissible: {adm.certificate}", adm.violations)
    return adm.coordinates


def is_p0_nonnegative(P: Poset, alpha: DimVector) -> bool:
    """Whether ``alpha . C_{P0}^-1`` is non-negative (all c_s and alpha0 - sum c)."""
    c = coordinate_vector(P, alpha)
    return all(v >= 0 for v in c.values()) and alpha.alpha0 - sum(c.values()) >= 0


# -- quadratic forms -------------------------------------------------------------

def _enlarged(P: Poset, alpha: DimVector) -> tuple[Poset, list[int]]:
    top = fresh_label(P)
    P0 = P.enlarge(top)
    values = [alpha.alpha0 if s == top else alpha[s] for s in P0.level_order]
    return P0, values


def euler_form(P: Poset, alpha: DimVector) -> int:
    """``Q_P(alpha) = alpha . C_{P0}^-1 . alpha^tr`` on the enlarged poset."""
    check_vector(P, alpha)
    P0, vec = _enlarged(P, alpha)
    value = dot(vecmat(vec, incidence_inverse(P0)), vec)
    c = coordinate_vector(P, alpha)
    a0 = alpha.alpha0
    expansion = checked(checked(a0 * a0) - checked(sum(c.values()) * a0)
                        + sum(checked(c[s] * alpha[s]) for s in P.labels))
    if value != expansion:
        raise InternalInconsistencyError(f"Euler form mismatch: matrix {value}, expansion {expansion}")
    return value


def tits_matrix(P: Poset) -> IntMatrix:
    """``[[1, 0], [-E_P, C_P^tr]]``; row/col 0 is the ambient, then level order."""
    n = len(P)
    Ct = incidence_matrix(P).transpose()
    rows = [[1] + [0] * n]
    for i in range(n):
        rows.append([-1] + list(Ct.row(i)))
    return IntMatrix.from_rows(rows, cols=n + 1)


def tits_form(P: Poset, beta: DimVector) -> int:
    check_vector(P, beta)
    vec = [beta.alpha0] + beta.values(P.level_order)
    return dot(vecmat(vec, tits_matrix(P)), vec)


# -- summands --------------------------------------------------------------------

def summands(P: Poset, alpha: DimVector, budget: int = DEFAULT_SUMMAND_BUDGET) -> list[DimVector]:
    """All non-zero admissible ``a'`` with ``alpha - a'`` admissible.

    Brute force over the box ``0 <= a' <= alpha``; results sorted by
    ``(alpha0', level-order values)``.
    """
    require_admissible(P, alpha)
    order = P.level_order
    size = (alpha.alpha0 + 1) * math.prod(alpha[s] + 1 for s in order)
    if size > budget:
        raise SearchSpaceTooLargeError(f"summand search space {size} exceeds budget {budget}")
    Cinv = incidence_inverse(P)
    top = [alpha[s] for s in order]

    def admissible(a0: int, vals: list[int]) -> bool:
        return all(v <= a0 for v in vals) and all(x >= 0 for x in vecmat(vals, Cinv))

    found = []
    for a0 in range(alpha.alpha0 + 1):
        for vals in itertools.product(*(range(t + 1) for t in top)):
            vals = list(vals)
            if a0 == 0 and not any(vals):
                continue
            if admissible(a0, vals) and admissible(alpha.alpha0 - a0, [t - v for t, v in zip(top, vals)]):
                found.append(DimVector(a0, dict(zip(order, vals))))
    return found


@dataclass(frozen=True)
class ScanResult:
    passed: bool
    witness: DimVector | None
    witness_q: int | None
    checked: int

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def summand_scan(P: Poset, alpha: DimVector, budget: int = DEFAULT_SUMMAND_BUDGET) -> ScanResult:
    """Check ``Q(a') >= 1`` for alpha and each of its summands.

    A failure is a certificate that alpha is not of finite type.
    """
    candidates: Iterator[DimVector] = itertools.chain([alpha], summands(P, alpha, budget))
    count = 0
    for cand in candidates:
        count += 1
        q = euler_form(P, cand)
        if q < 1:
            return ScanResult(False, cand, q, count)
    return ScanResult(True, None, None, count)


# -- sampling --------------------------------------------------------------------

def random_admissible(P: Poset, rng: random.Random, max_coord: int = 3, slack: int = 2,
                      max_entry: int | None = None) -> DimVector:
    """Admissible vector built from random non-negative coordinates.

    Draws ``c_s`` in ``[0, max_coord]``, sets ``alpha_P = c . C_P`` and
    ``alpha0 = max(sum c, max alpha_s) + uniform[0, slack]``. With
    ``max_entry``, random coordinates are decremented until every entry fits.
    """
    order = P.level_order
    c = [rng.randint(0, max_coord) for _ in order]
    if max_entry is not None:
        while sum(c) > max_entry:
            i = rng.choice([k for k, v in enumerate(c) if v > 0])
            c[i] -= 1
    vals = vecmat(c, incidence_matrix(P))
    alpha0 = max([sum(c)] + vals)
    extra = rng.randint(0, slack)
    if max_entry is not None:
        extra = min(extra, max_entry - alpha0)
    return DimVector(alpha0 + extra, dict(zip(order, vals)))


def random_vector(P: Poset, rng: random.Random, lo: int = -5, hi: int = 8) -> DimVector:
    return DimVector(rng.randint(lo, hi), {s: rng.randint(lo, hi) for s in P.labels})
