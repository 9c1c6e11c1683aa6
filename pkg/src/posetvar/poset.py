"""Finite posets: closure, height, level partition, down-sets and Hasse covers.

A :class:`Poset` is immutable. Elements are string labels; ``lt`` holds the
strict order as a transitively closed set of pairs ``(s, t)`` meaning s < t.

The level partition ``T_h, ..., T_1`` is derived from the *up-height* of each
element (length of the longest chain starting at it): an element with up-height
``u`` sits on level ``h - u + 1``. Maximal elements therefore all live on the
top level ``T_h`` and minimal ones with the longest chains above them on ``T_1``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence

from .errors import (
    CycleDetectedError,
    DuplicateLabelError,
    InvalidLabelError,
    LabelCollisionError,
    UnknownLabelError,
)

RESERVED_CHARS = frozenset("<:;=#")


def check_label(label: str) -> str:
    if not isinstance(label, str) or not label:
        raise InvalidLabelError(f"element label must be a non-empty string, got {label!r}")
    bad = [ch for ch in label if ch in RESERVED_CHARS or ch.isspace()]
    if bad:
        raise InvalidLabelError(f"element label {label!r} contains reserved character {bad[0]!r}")
    return label


class Poset:
    """Immutable finite strict partial order over string labels."""

    __slots__ = (
        "labels", "lt", "height", "level_of", "level_order",
        "_index", "_below", "_above",
    )

    def __init__(self, labels: Iterable[str], relations: Iterable[tuple[str, str]] = ()):
        labels = tuple(labels)
        index: dict[str, int] = {}
        for lab in labels:
            check_label(lab)
            if lab in index:
                raise DuplicateLabelError(f"duplicate element label {lab!r}")
            index[lab] = len(index)
        n = len(labels)

        # Bitset rows: up[i] has bit j set iff labels[i] < labels[j].
        up = [0] * n
        for s, t in relations:
            for lab in (s, t):
                if lab not in index:
                    raise UnknownLabelError(f"relation {s}<{t} mentions unknown element {lab!r}")
            up[index[s]] |= 1 << index[t]
        # Warshall closure.
        for k in range(n):
            bit = 1 << k
            row_k = up[k]
            for i in range(n):
                if up[i] & bit:
                    up[i] |= row_k
        for i in range(n):
            if up[i] >> i & 1:
                raise CycleDetectedError(f"relations imply {labels[i]} < {labels[i]}")

        above = {labels[i]: frozenset(labels[j] for j in range(n) if up[i] >> j & 1) for i in range(n)}
        below: dict[str, set[str]] = {lab: set() for lab in labels}
        for s, ups in above.items():
            for t in ups:
                below[t].add(s)

        # up-height by memoised DFS over a topological order (largest first)
        up_height: dict[str, int] = {}
        for lab in sorted(labels, key=lambda x: len(above[x])):
            up_height[lab] = 1 + max((up_height[t] for t in above[lab]), default=0)
        height = max(up_height.values(), default=0)
        level_of = {lab: height - up_height[lab] + 1 for lab in labels}
        level_order = tuple(sorted(labels, key=lambda x: (-level_of[x], index[x])))

        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "lt", frozenset((s, t) for s in labels for t in above[s]))
        object.__setattr__(self, "height", height)
        object.__setattr__(self, "level_of", level_of)
        object.__setattr__(self, "level_order", level_order)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_above", above)
        object.__setattr__(self, "_below", {k: frozenset(v) for k, v in below.items()})

    def __setattr__(self, name, value):
        raise AttributeError("Poset is immutable")

    # -- basic protocol --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return frozenset(self.labels) == frozenset(other.labels) and self.lt == other.lt

    def __hash__(self) -> int:
        return hash((frozenset(self.labels), self.lt))

    def __repr__(self) -> str:
        rels = " ".join(f"{s}<{t}" for s, t in self.hasse_covers())
        return f"Poset([{' '.join(self.labels)}]; {rels})"

    # -- queries ---------------------------------------------------------------

    def _check(self, label: str) -> str:
        if label not in self._index:
            raise UnknownLabelError(f"unknown element {label!r}")
        return label

    def _check_all(self, labels: Iterable[str]) -> list[str]:
        return [self._check(lab) for lab in labels]

    def index(self, label: str) -> int:
        """Position of ``label`` in the input label order."""
        return self._index[self._check(label)]

    def less(self, s: str, t: str) -> bool:
        return t in self._above[self._check(s)]

    def leq(self, s: str, t: str) -> bool:
        return s == t or self.less(s, t)

    def down_set(self, s: str) -> frozenset[str]:
        """Strict predecessors of ``s``."""
        return self._below[self._check(s)]

    def up_set(self, s: str) -> frozenset[str]:
        """Strict successors of ``s``."""
        return self._above[self._check(s)]

    def maximal_elements(self) -> list[str]:
        """Maximal elements, in level order."""
        return [s for s in self.level_order if not self._above[s]]

    def minimal_elements(self) -> list[str]:
        return [s for s in self.level_order if not self._below[s]]

    def levels(self) -> list[tuple[str, ...]]:
        """Level partition ``[T_h, ..., T_1]``, each level in input order."""
        return [tuple(s for s in self.level_order if self.level_of[s] == i)
                for i in range(self.height, 0, -1)]

    def level(self, i: int) -> tuple[str, ...]:
        """The level set ``T_i`` for ``1 <= i <= height``."""
        return tuple(s for s in self.level_order if self.level_of[s] == i)

    def sort_level_order(self, labels: Iterable[str]) -> list[str]:
        pos = {s: k for k, s in enumerate(self.level_order)}
        return sorted(self._check_all(labels), key=pos.__getitem__)

    def hasse_covers(self) -> list[tuple[str, str]]:
        """Cover pairs ``(s, t)``: s < t with nothing strictly between."""
        covers = []
        for s in self.labels:
            ups = self._above[s]
            for t in self.labels:
                if t in ups and not any(t in self._above[u] for u in ups):
                    covers.append((s, t))
        return covers

    def is_chain(self) -> bool:
        return all(len(lvl) == 1 for lvl in self.levels())

    # -- constructions ---------------------------------------------------------

    def induced_subposet(self, subset: Iterable[str]) -> Poset:
        keep = set(self._check_all(subset))
        labels = [s for s in self.labels if s in keep]
        return Poset(labels, [(s, t) for s, t in self.lt if s in keep and t in keep])

    def remove_element(self, x: str) -> Poset:
        self._check(x)
        return self.induced_subposet(s for s in self.labels if s != x)

    def enlarge(self, top: str = "0") -> Poset:
        """Adjoin a new top element ``top`` above every element."""
        if top in self._index:
            raise LabelCollisionError(f"cannot enlarge: label {top!r} already used")
        return Poset((top,) + self.labels, list(self.lt) + [(s, top) for s in self.labels])

    def relabel(self, mapping: dict[str, str]) -> Poset:
        return Poset([mapping[s] for s in self.labels], [(mapping[s], mapping[t]) for s, t in self.lt])

    def reorder(self, labels: Sequence[str]) -> Poset:
        """Same poset with a different input label order."""
        if sorted(labels) != sorted(self.labels):
            raise UnknownLabelError("reorder needs a permutation of the element labels")
        return Poset(labels, self.lt)


def build_poset(labels: Iterable[str], relations: Iterable[tuple[str, str]] = ()) -> Poset:
    """Build a poset from labels and any strict relations (closed transitively)."""
    labels = list(labels)
    return Poset(labels, relations)


def fresh_label(P: Poset, base: str = "0") -> str:
    """A label not present in ``P``, ``base`` when it is free."""
    label, k = base, 0
    while label in P:
        k += 1
        label = f"{base}_{k}"
    return label


# -- free-function aliases ------------------------------------------------------

def height(P: Poset) -> int:
    return P.height


def level_partition(P: Poset) -> list[tuple[str, ...]]:
    return P.levels()


def down_set(P: Poset, s: str) -> frozenset[str]:
    return P.down_set(s)


def maximal_elements(P: Poset) -> list[str]:
    return P.maximal_elements()


def enlarge(P: Poset, top: str = "0") -> Poset:
    return P.enlarge(top)


def remove_element(P: Poset, x: str) -> Poset:
    return P.remove_element(x)


def induced_subposet(P: Poset, subset: Iterable[str]) -> Poset:
    return P.induced_subposet(subset)


def hasse_covers(P: Poset) -> list[tuple[str, str]]:
    return P.hasse_covers()


TieBreak = Callable[[Poset, list[str]], str]


def pick_first(P: Poset, candidates: list[str]) -> str:
    return candidates[0]


def pick_last(P: Poset, candidates: list[str]) -> str:
    return candidates[-1]


def pick_middle(P: Poset, candidates: list[str]) -> str:
    return candidates[len(candidates) // 2]


TIE_BREAKS: dict[str, TieBreak] = {"first": pick_first, "last": pick_last, "middle": pick_middle}


def resolve_tie_break(rule: str | TieBreak) -> TieBreak:
    if callable(rule):
        return rule
    try:
        return TIE_BREAKS[rule]
    except KeyError:
        raise ValueError(f"unknown tie-break rule {rule!r}; choose from {sorted(TIE_BREAKS)}") from None
