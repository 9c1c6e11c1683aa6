"""Brute-force oracle over prime fields.

Points of the representation variety over ``F_p`` are tuples of subspaces
``V_s`` of ``F_p^alpha0`` with ``dim V_s = alpha_s`` and ``V_s <= V_t`` whenever
``s < t``. Subspaces are stored as reduced row echelon bases, which are
canonical, so equality of subspaces is equality of bases.

:func:`enumerate_points` walks every point explicitly. :func:`count_points`
returns the same number without visiting each point: it splits the remaining
elements into independent components, and when the subspaces confining a
component are nested it counts one representative per orbit of the flag's
stabiliser (Schubert-type cells), weighting each by the orbit size.
"""

from __future__ import annotations

import itertools
import warnings
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BudgetExceededError,
    EmptyVarietyError,
    InsufficientPrimesError,
    InvalidDimensionsError,
)
from .forms import DimVector, check_vector
from .matrix import checked
from .poset import Poset, TieBreak, resolve_tie_break

DEFAULT_ENUM_LIMIT = 10**6
DEFAULT_COUNT_BUDGET = 10**7
POLY_CAVEAT = ("polynomiality of the point count in q is assumed, not proven; "
               "a CONSISTENT verdict is evidence, not proof")

Basis = tuple[tuple[int, ...], ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidDimensionsError(f"{p!r} is not a prime")
    return p


@lru_cache(maxsize=None)
def _inverses(p: int) -> tuple[int, ...]:
    return (0,) + tuple(pow(a, p - 2, p) for a in range(1, p))


class PrimeField:
    """Arithmetic in ``F_p``; elements are plain ints in ``[0, p)``."""

    def __init__(self, p: int):
        self.p = check_prime(p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return _inverses(self.p)[a]

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def elements(self) -> range:
        return range(self.p)


def rref(rows: Iterable[Sequence[int]], p: int) -> Basis:
    """Reduced row echelon form over ``F_p`` with zero rows dropped."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return ()
    inv = _inverses(p)
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        f = inv[m[r][c]]
        if f != 1:
            m[r] = [x * f % p for x in m[r]]
        row_r = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                g = m[i][c]
                m[i] = [(a - g * b) % p for a, b in zip(m[i], row_r)]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of ``F_p^n`` held as its canonical RREF basis."""

    n: int
    p: int
    basis: Basis

    @property
    def k(self) -> int:
        return len(self.basis)

    dim = k

    @classmethod
    def span(cls, rows: Iterable[Sequence[int]], n: int, p: int) -> SubspaceBasis:
        return cls(n, p, rref(rows, p))

    @classmethod
    def full(cls, n: int, p: int) -> SubspaceBasis:
        return cls.coordinate(n, n, p)

    @classmethod
    def coordinate(cls, k: int, n: int, p: int) -> SubspaceBasis:
        """Span of the first ``k`` standard basis vectors."""
        return cls(n, p, tuple(tuple(int(i == j) for j in range(n)) for i in range(k)))

    def contains(self, other: SubspaceBasis) -> bool:
        return rref(self.basis + other.basis, self.p) == self.basis

    def __le__(self, other: SubspaceBasis) -> bool:
        return other.contains(self)

    def __add__(self, other: SubspaceBasis) -> SubspaceBasis:
        return SubspaceBasis(self.n, self.p, rref(self.basis + other.basis, self.p))

    def intersect(self, other: SubspaceBasis) -> SubspaceBasis:
        # Zassenhaus: rows [u | u] and [v | 0]; zero left halves carry the intersection.
        if not self.k or not other.k:
            return SubspaceBasis(self.n, self.p, ())
        if self.k == self.n:
            return other
        if other.k == other.n:
            return self
        n = self.n
        zero = (0,) * n
        red = rref([u + u for u in self.basis] + [v + zero for v in other.basis], self.p)
        return SubspaceBasis(n, self.p, rref([r[n:] for r in red if not any(r[:n])], self.p))

    __and__ = intersect

    def embed(self, coeffs: Basis) -> SubspaceBasis:
        """Subspace spanned by ``coeffs`` expressed in this subspace's basis."""
        p, n = self.p, self.n
        rows = [[sum(c * b[j] for c, b in zip(cr, self.basis)) % p for j in range(n)] for cr in coeffs]
        return SubspaceBasis(n, p, rref(rows, p))


# -- Grassmannians ---------------------------------------------------------------

def _gaussian_binomial_exact(n: int, k: int, q: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of ``F_q^n``, checked to 64 bits."""
    if k < 0 or n < 0 or k > n or q < 2:
        raise InvalidDimensionsError(f"gaussian binomial [{n} choose {k}]_{q} undefined")
    return checked(_gaussian_binomial_exact(n, k, q))


def iter_rref(n: int, k: int, p: int) -> Iterator[Basis]:
    """Every k x n RREF matrix of rank k over ``F_p``, by pivot pattern."""
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivset]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def enumerate_subspaces(n: int, k: int, p: int, limit: int = DEFAULT_ENUM_LIMIT) -> list[SubspaceBasis]:
    check_prime(p)
    total = _gaussian_binomial_exact(n, k, p)
    if total > limit:
        raise BudgetExceededError(f"Gr({k}, {n}) over F_{p} has {total} points, limit {limit}")
    return [SubspaceBasis(n, p, b) for b in iter_rref(n, k, p)]


def subspaces_within(U: SubspaceBasis, k: int, limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[SubspaceBasis]:
    """All k-dimensional subspaces of ``U``."""
    if k > U.k:
        return
    if _gaussian_binomial_exact(U.k, k, U.p) > limit:
        raise BudgetExceededError(f"Gr({k}, {U.k}) over F_{U.p} exceeds limit {limit}")
    for coeffs in iter_rref(U.k, k, U.p):
        yield U.embed(coeffs)


# -- points of the variety -------------------------------------------------------

def _validate_dims(P: Poset, alpha: DimVector) -> bool:
    """Raise on impossible ambient dims; False (with a warning) for an empty variety."""
    check_vector(P, alpha)
    if alpha.alpha0 < 0 or any(v < 0 for v in alpha.alpha.values()):
        raise InvalidDimensionsError("dimensions must be non-negative")
    over = [s for s in P.labels if alpha[s] > alpha.alpha0]
    if over:
        raise InvalidDimensionsError(f"alpha[{over[0]}] = {alpha[over[0]]} exceeds alpha0 = {alpha.alpha0}")
    bad = [(s, t) for s, t in sorted(P.lt) if alpha[s] > alpha[t]]
    if bad:
        s, t = bad[0]
        warnings.warn(f"alpha[{s}] > alpha[{t}] although {s} < {t}: the variety is empty", stacklevel=3)
        return False
    return True


def _maximal_in(P: Poset, S: Iterable[str]) -> list[str]:
    S = set(S)
    return [s for s in P.level_order if s in S and not (P.up_set(s) & S)]


def top_down_order(P: Poset, tie_break: str | TieBreak = "first") -> list[str]:
    """Linear extension listing maximal elements first."""
    choose = resolve_tie_break(tie_break)
    remaining = set(P.labels)
    order = []
    while remaining:
        x = choose(P, _maximal_in(P, remaining))
        order.append(x)
        remaining.remove(x)
    return order


def enumerate_points(P: Poset, alpha: DimVector, p: int, tie_break: str | TieBreak = "first",
                     limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[dict[str, SubspaceBasis]]:
    """Yield every point of the variety over ``F_p`` as a label -> subspace map.

    Each element ranges over subspaces of the intersection of the already
    chosen subspaces above it.
    """
    check_prime(p)
    if not _validate_dims(P, alpha):
        return
    n = alpha.alpha0
    order = top_down_order(P, tie_break)
    ambient = SubspaceBasis.full(n, p)
    chosen: dict[str, SubspaceBasis] = {}

    def walk(i: int) -> Iterator[dict[str, SubspaceBasis]]:
        if i == len(order):
            point = dict(chosen)
            for s, t in P.lt:
                assert point[s] <= point[t], f"containment {s} < {t} violated"
            assert all(point[s].k == alpha[s] for s in point)
            yield point
            return
        s = order[i]
        bound = ambient
        for t in P.up_set(s):
            bound = bound & chosen[t]
        for V in subspaces_within(bound, alpha[s], limit):
            chosen[s] = V
            yield from walk(i + 1)
        chosen.pop(s, None)

    yield from walk(0)


def _flag_cell_size(blocks: Sequence[int], taken: Sequence[int], q: int) -> int:
    """Number of subspaces meeting a flag with prescribed dimension jumps.

    ``blocks[i]`` is the dimension gained by the i-th flag member and
    ``taken[i]`` how much of it the subspace picks up.
    """
    size, below_free = 1, 0
    for m, j in zip(blocks, taken):
        size *= _gaussian_binomial_exact(m, j, q) * q ** (j * below_free)
        below_free += m - j
    return size


class _PointCounter:
    """Memoised point counter.

    Constraints map each remaining element to the subspace it must lie in:
    either a set of coordinate indices (a coordinate subspace) or a
    :class:`SubspaceBasis`. When the constraints of a connected component are
    nested, the configuration is determined up to ``GL`` by their dimensions;
    the counter then replaces them by a coordinate flag and enumerates one
    representative per orbit of the flag's stabiliser, weighted by orbit size.
    Otherwise it enumerates subspaces explicitly.
    """

    def __init__(self, P: Poset, alpha: DimVector, p: int, tie_break: TieBreak, budget: int):
        self.P, self.alpha, self.p = P, alpha, p
        self.choose = tie_break
        self.budget = budget
        self.work = 0
        self._memo: dict = {}

    def _tick(self, amount: int = 1) -> None:
        self.work += amount
        if self.work > self.budget:
            raise BudgetExceededError(f"point counting exceeded work budget {self.budget}")

    def components(self, S: frozenset[str]) -> list[frozenset[str]]:
        P = self.P
        left, comps = set(S), []
        while left:
            seed = left.pop()
            comp, stack = {seed}, [seed]
            while stack:
                s = stack.pop()
                nbrs = (P.up_set(s) | P.down_set(s)) & left
                left -= nbrs
                comp |= nbrs
                stack.extend(nbrs)
            comps.append(frozenset(comp))
        return sorted(comps, key=lambda c: P.sort_level_order(c))

    @staticmethod
    def _dim(space) -> int:
        return len(space) if isinstance(space, frozenset) else space.k

    @staticmethod
    def _contains(big, small) -> bool:
        if isinstance(big, frozenset):
            return small <= big
        return big.contains(small)

    def _as_basis(self, space, n: int) -> SubspaceBasis:
        if isinstance(space, SubspaceBasis):
            return space
        return SubspaceBasis(n, self.p, tuple(tuple(int(c == i) for c in range(n)) for i in sorted(space)))

    def _chain_dims(self, spaces: list) -> list[int] | None:
        """Sorted distinct dimensions if the spaces are totally ordered by inclusion."""
        by_dim: dict[int, object] = {}
        for sp in spaces:
            d = self._dim(sp)
            if d in by_dim:
                if by_dim[d] != sp:
                    return None
            else:
                by_dim[d] = sp
        dims = sorted(by_dim)
        for a, b in zip(dims, dims[1:]):
            if not self._contains(by_dim[b], by_dim[a]):
                return None
        return dims

    def count(self, S: frozenset[str], cons: dict, n: int) -> int:
        if not S:
            return 1
        if any(self.alpha[s] > self._dim(cons[s]) for s in S):
            return 0
        comps = self.components(S)
        if len(comps) > 1:
            total = 1
            for comp in comps:
                total *= self.count(comp, {s: cons[s] for s in comp}, n)
                if not total:
                    break
            return total
        dims = self._chain_dims([cons[s] for s in S])
        if dims is not None:
            return self.count_flag(S, {s: self._dim(cons[s]) for s in S})
        key = (S, n, tuple(sorted((s, tuple(sorted(c)) if isinstance(c, frozenset) else c.basis)
                                  for s, c in cons.items())))
        if key in self._memo:
            return self._memo[key]
        bases = {s: self._as_basis(cons[s], n) for s in S}
        x = self.choose(self.P, _maximal_in(self.P, S))
        rest = S - {x}
        below = self.P.down_set(x)
        total = 0
        for V in subspaces_within(bases[x], self.alpha[x]):
            self._tick()
            total += self.count(rest, {s: (bases[s] & V if s in below else bases[s]) for s in rest}, n)
        self._memo[key] = total
        return total

    def count_flag(self, S: frozenset[str], dims: dict[str, int]) -> int:
        # Constraints nested: model them as prefixes F^d of F^max(d).
        key = (S, tuple(sorted(dims.items())))
        if key in self._memo:
            return self._memo[key]
        x = self.choose(self.P, _maximal_in(self.P, S))
        k, m = self.alpha[x], dims[x]
        levels = sorted({d for d in dims.values() if d <= m})
        blocks = [b - a for a, b in zip([0] + levels, levels)]
        rest = S - {x}
        below = self.P.down_set(x)
        n = max(dims.values())
        total = 0
        for taken in _compositions(k, blocks):
            self._tick()
            weight = _flag_cell_size(blocks, taken, self.p)
            V, start = set(), 0
            for b, j in zip(blocks, taken):
                V.update(range(start, start + j))
                start += b
            V = frozenset(V)
            new = {s: (frozenset(c for c in range(dims[s]) if c in V) if s in below else frozenset(range(dims[s])))
                   for s in rest}
            total += weight * self.count(rest, new, n)
        self._memo[key] = total
        return total


def _compositions(k: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Tuples ``j`` with ``0 <= j[i] <= caps[i]`` summing to ``k``."""
    if not caps:
        if k == 0:
            yield ()
        return
    head, tail = caps[0], caps[1:]
    room = sum(tail)
    for j in range(max(0, k - room), min(head, k) + 1):
        for rest in _compositions(k - j, tail):
            yield (j,) + rest


def count_points(P: Poset, alpha: DimVector, p: int, tie_break: str | TieBreak = "first",
                 budget: int = DEFAULT_COUNT_BUDGET) -> int:
    """Exact number of points of the variety over ``F_p``."""
    check_prime(p)
    if not _validate_dims(P, alpha):
        return 0
    counter = _PointCounter(P, alpha, p, resolve_tie_break(tie_break), budget)
    n = alpha.alpha0
    ambient = frozenset(range(n))
    return counter.count(frozenset(P.labels), {s: ambient for s in P.labels}, n)


# -- maximal sum dimension ---------------------------------------------------------------

def max_sum_dim_empirical(P: Poset, alpha: DimVector, p: int, exhaustive: bool = False,
                          budget: int = DEFAULT_COUNT_BUDGET) -> int:
    """Maximum over points of ``dim(sum of V_y for y on the top level)``.

    With ``exhaustive`` every point is visited. Otherwise the search uses GL
    symmetry: the first top subspace is fixed to a coordinate subspace, the
    second runs over one representative per intersection dimension with it,
    the rest are enumerated with branch and bound; a top configuration counts
    only if the elements below it can be completed.
    """
    check_prime(p)
    if not _validate_dims(P, alpha):
        raise EmptyVarietyError("the variety has no points")
    n = alpha.alpha0
    top = list(P.level(P.height)) if P.height else []
    if exhaustive:
        best = None
        for point in enumerate_points(P, alpha, p):
            d = SubspaceBasis(n, p, rref([r for y in top for r in point[y].basis], p)).k if top else 0
            best = d if best is None else max(best, d)
        if best is None:
            raise EmptyVarietyError("the variety has no points")
        return best
    if not top:
        return 0

    counter = _PointCounter(P, alpha, p, resolve_tie_break("first"), budget)
    lower = frozenset(P.labels) - set(top)
    ambient = SubspaceBasis.full(n, p)
    bound = min(n, sum(alpha[y] for y in top))
    best = -1

    def feasible(chosen: dict[str, SubspaceBasis]) -> bool:
        cons = {}
        for s in lower:
            U = ambient
            for y in top:
                if y in P.up_set(s):
                    U = U & chosen[y]
            cons[s] = U
        return counter.count(lower, cons, n) > 0

    def second_reps(W: SubspaceBasis, a: int) -> Iterator[SubspaceBasis]:
        k = W.k
        for j in range(max(0, a - (n - k)), min(a, k) + 1):
            rows = [tuple(int(c == i) for c in range(n)) for i in range(j)]
            rows += [tuple(int(c == k + i) for c in range(n)) for i in range(a - j)]
            yield SubspaceBasis.span(rows, n, p)

    def search(i: int, chosen: dict[str, SubspaceBasis], acc: SubspaceBasis) -> None:
        nonlocal best
        if best == bound:
            return
        if acc.k + sum(alpha[y] for y in top[i:]) <= best:
            return
        if i == len(top):
            if feasible(chosen):
                best = max(best, acc.k)
            return
        y = top[i]
        if i == 0:
            options: Iterable[SubspaceBasis] = [SubspaceBasis.coordinate(alpha[y], n, p)]
        elif i == 1:
            options = second_reps(chosen[top[0]], alpha[y])
        else:
            options = subspaces_within(ambient, alpha[y])
        for V in options:
            counter._tick()
            chosen[y] = V
            search(i + 1, chosen, acc + V)
            del chosen[y]

    search(0, {}, SubspaceBasis(n, p, ()))
    if best < 0:
        raise EmptyVarietyError("the variety has no points")
    return best


# -- dimension by interpolation --------------------------------------------------

def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (low to high) of the polynomial through the points."""
    n = len(xs)
    # Newton divided differences, then expand to the monomial basis.
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[i] * a for s, a in zip(shifted, poly)]
        poly[0] += coef[i]
    return poly


def evaluate(poly: Sequence[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for a in reversed(poly):
        acc = acc * x + a
    return acc


def poly_degree(poly: Sequence[Fraction]) -> int:
    nz = [i for i, a in enumerate(poly) if a != 0]
    return nz[-1] if nz else -1


@dataclass(frozen=True)
class FitReport:
    counts: dict[int, int]
    poly: list[Fraction]
    degree: int
    claimed_dim: int
    residuals: dict[int, Fraction]
    verdict: str
    caveat: str = field(default=POLY_CAVEAT)

    def as_dict(self) -> dict:
        def num(a: Fraction):
            return a.numerator if a.denominator == 1 else str(a)

        return {
            "counts": {str(p): c for p, c in self.counts.items()},
            "poly": [num(a) for a in self.poly],
            "degree": self.degree,
            "claimed_dim": self.claimed_dim,
            "residuals": {str(p): num(r) for p, r in self.residuals.items()},
            "verdict": self.verdict,
            "caveat": self.caveat,
        }


def fit_dimension(P: Poset, alpha: DimVector, primes: Sequence[int], claimed_dim: int,
                  budget: int = DEFAULT_COUNT_BUDGET) -> FitReport:
    """Fit the point count through the first ``d+1`` primes and test the rest.

    CONSISTENT when the fitted polynomial has degree exactly ``d`` and
    reproduces the count at every remaining prime.
    """
    primes = list(primes)
    for p in primes:
        check_prime(p)
    if len(set(primes)) != len(primes):
        raise InsufficientPrimesError("primes must be distinct")
    if claimed_dim < 0:
        raise InvalidDimensionsError("claimed dimension must be non-negative")
    if len(primes) < claimed_dim + 1:
        raise InsufficientPrimesError(
            f"degree {claimed_dim} needs at least {claimed_dim + 1} primes, got {len(primes)}")
    counts = {p: count_points(P, alpha, p, budget=budget) for p in primes}
    fit_at = primes[:claimed_dim + 1]
    poly = interpolate(fit_at, [counts[p] for p in fit_at])
    residuals = {p: counts[p] - evaluate(poly, p) for p in primes[claimed_dim + 1:]}
    degree = poly_degree(poly)
    ok = degree == claimed_dim and all(r == 0 for r in residuals.values())
    return FitReport(counts, poly, degree, claimed_dim, residuals, "CONSISTENT" if ok else "INCONSISTENT")
