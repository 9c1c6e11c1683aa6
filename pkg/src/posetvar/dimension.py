"""Dimension of the variety of subspace representations.

Two independent routes: the closed form ``alpha0**2 - Q_P(alpha)`` and the
peeling recursion that removes one maximal element at a time and adds the
dimension of the generic fibre ``Gr(alpha_x - X, alpha0 - X)``, where ``X`` is
the generic dimension of the sum of the subspaces below ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisViolatedError, InternalInconsistencyError, InvalidDimensionsError, NotMaximalError
from .forms import DimVector, check_vector, coordinate_vector, euler_form, is_p0_nonnegative, require_admissible
from .matrix import checked
from .poset import Poset, TieBreak, resolve_tie_break


@dataclass(frozen=True)
class PeelStep:
    x: str
    X: int
    fiber: tuple[int, int]
    fiber_dim: int
    remaining_dim: int | None = None

    def as_dict(self) -> dict:
        return {"x": self.x, "X": self.X, "fiber": list(self.fiber), "fiber_dim": self.fiber_dim,
                "remaining_dim": self.remaining_dim}


@dataclass(frozen=True)
class DimReport:
    dim_variety: int
    q_value: int
    gl_dim: int
    method: str
    recursion_trace: list[PeelStep] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"dim": self.dim_variety, "Q": self.q_value, "gl_dim": self.gl_dim, "method": self.method}
        if self.method == "recursive":
            out["steps"] = [step.as_dict() for step in self.recursion_trace]
        return out


def grassmann_dim(k: int, n: int) -> int:
    if k < 0 or n < 0 or k > n:
        raise InvalidDimensionsError(f"Gr({k}, {n}) is not defined")
    return checked(k * (n - k))


def generic_sum_dim(P: Poset, alpha: DimVector) -> int:
    """Generic dimension of the sum of the top-level subspaces: ``sum_s c_s``."""
    if not is_p0_nonnegative(P, alpha):
        raise HypothesisViolatedError("generic sum dimension needs alpha . C_{P0}^-1 >= 0")
    return sum(coordinate_vector(P, alpha).values())


def variety_dim(P: Poset, alpha: DimVector) -> DimReport:
    """Closed form ``dim R = alpha0**2 - Q_P(alpha)`` for admissible alpha."""
    require_admissible(P, alpha)
    q = euler_form(P, alpha)
    gl = checked(alpha.alpha0 * alpha.alpha0)
    return DimReport(gl - q, q, gl, "closed")


def variety_dim_recursive(P: Poset, alpha: DimVector, tie_break: str | TieBreak = "first") -> DimReport:
    """Peel maximal elements, summing generic fibre dimensions.

    ``tie_break`` picks which maximal element to remove (candidates come in
    level order); the result does not depend on it.
    """
    require_admissible(P, alpha)
    choose = resolve_tie_break(tie_break)
    a0 = alpha.alpha0
    steps: list[PeelStep] = []
    current = P
    while len(current):
        x = choose(current, current.maximal_elements())
        below = current.down_set(x)
        if below:
            sub = current.induced_subposet(below)
            X = generic_sum_dim(sub, alpha.restrict(sub.labels))
        else:
            X = 0
        k, n = alpha[x] - X, a0 - X
        if k < 0 or n < 0 or k > n:
            raise InternalInconsistencyError(f"fibre Gr({k}, {n}) at {x} is undefined")
        steps.append(PeelStep(x, X, (k, n), grassmann_dim(k, n)))
        current = current.remove_element(x)
    # remaining_dim: dimension of the variety left after each peel
    total = 0
    for i in range(len(steps) - 1, -1, -1):
        steps[i] = PeelStep(steps[i].x, steps[i].X, steps[i].fiber, steps[i].fiber_dim, total)
        total = checked(total + steps[i].fiber_dim)
    q = euler_form(P, alpha)
    return DimReport(total, q, checked(a0 * a0), "recursive", steps)


def lemma2_defect(P: Poset, x: str, alpha: DimVector) -> int:
    """``LHS - RHS`` of the Euler-form drop identity at a maximal element x.

    ``Q_P(a) - Q_{P-x}(a|P-x) = -(a_x - a_{D_x} C_{D_x}^-1 E)(a0 - a_x)``.
    Zero for every integer vector.
    """
    check_vector(P, alpha)
    if x not in P.maximal_elements():
        raise NotMaximalError(f"{x!r} is not a maximal element")
    rest = P.remove_element(x)
    lhs = euler_form(P, alpha) - euler_form(rest, alpha.restrict(rest.labels))
    below = P.induced_subposet(P.down_set(x))
    sum_below = sum(coordinate_vector(below, alpha.restrict(below.labels)).values())
    rhs = -checked((alpha[x] - sum_below) * (alpha.alpha0 - alpha[x]))
    return lhs - rhs
