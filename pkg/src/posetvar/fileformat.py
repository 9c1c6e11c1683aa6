"""Line-based poset files and Graphviz export.

Format (UTF-8, ``#`` starts a comment)::

    elements = 1 2 3 4 5 6 7
    order = 1<3 1<4 1<5 2<4 2<5 3<6 3<7 4<6 4<7 5<7
    dim main = 8 ; 1:1 2:2 3:2 4:4 5:5 6:6 7:7

``order`` lines may repeat and accept chains ``a<b<c``. A ``dim`` line names
an optional vector, gives ``alpha0`` before the ``;`` and must list every
element exactly once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    CycleDetectedError,
    DuplicateLabelError,
    InputError,
    NegativeDimensionError,
    PosetSyntaxError,
    UnknownLabelError,
)
from .forms import DimVector
from .poset import Poset, build_poset

_KEYWORD = re.compile(r"^\s*(elements|order|dim)\b(.*)$")
_INT = re.compile(r"^[+-]?\d+$")


@dataclass
class PosetFile:
    poset: Poset
    vectors: dict[str, DimVector] = field(default_factory=dict)
    path: str | None = None

    def vector(self, name: str | None = None) -> DimVector:
        if not self.vectors:
            raise PosetSyntaxError("file defines no dimension vector")
        if name is None:
            return next(iter(self.vectors.values()))
        try:
            return self.vectors[name]
        except KeyError:
            raise UnknownLabelError(f"no dimension vector named {name!r}") from None


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _parse_int(token: str, lineno: int, col: int, what: str) -> int:
    if not _INT.match(token):
        raise PosetSyntaxError(f"expected integer for {what}, got {token!r}", lineno, col)
    return int(token)


def parse_poset_file(text: str, path: str | None = None) -> PosetFile:
    labels: list[str] | None = None
    relations: list[tuple[str, str]] = []
    dim_lines: list[tuple[int, str | None, str, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _KEYWORD.match(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise PosetSyntaxError(f"unrecognised line {line.strip()!r}", lineno, col)
        kind, rest = m.group(1), m.group(2)
        if "=" not in rest:
            raise PosetSyntaxError(f"missing '=' after {kind!r}", lineno, len(line))
        head, body = rest.split("=", 1)
        body_col = line.index("=", m.start(2)) + 2
        head = head.strip()
        if kind == "elements":
            if head:
                raise PosetSyntaxError(f"unexpected {head!r} before '='", lineno, m.start(2) + 1)
            if labels is not None:
                raise PosetSyntaxError("duplicate 'elements' line", lineno, 1)
            labels = body.split()
            if not labels:
                raise PosetSyntaxError("'elements' line lists no elements", lineno, body_col)
        elif kind == "order":
            if head:
                raise PosetSyntaxError(f"unexpected {head!r} before '='", lineno, m.start(2) + 1)
            compact = re.sub(r"\s*<\s*", "<", body)
            for token in compact.split():
                parts = token.split("<")
                if len(parts) < 2 or not all(parts):
                    raise PosetSyntaxError(f"bad relation {token!r}", lineno, body_col)
                relations.extend(zip(parts, parts[1:]))
        else:
            if head and len(head.split()) != 1:
                raise PosetSyntaxError(f"bad vector name {head!r}", lineno, m.start(2) + 1)
            dim_lines.append((lineno, head or None, body, body_col))

    if labels is None:
        raise PosetSyntaxError("missing 'elements' line")
    try:
        P = build_poset(labels, relations)
    except (DuplicateLabelError, UnknownLabelError, CycleDetectedError):
        raise
    except InputError as exc:
        raise PosetSyntaxError(str(exc)) from exc

    vectors: dict[str, DimVector] = {}
    for lineno, name, body, col in dim_lines:
        name = name or "default"
        if name in vectors:
            raise PosetSyntaxError(f"duplicate dimension vector {name!r}", lineno, 1)
        vectors[name] = _parse_dim(P, body, lineno, col)
    return PosetFile(P, vectors, path)


def _parse_dim(P: Poset, body: str, lineno: int, col: int) -> DimVector:
    if ";" not in body:
        raise PosetSyntaxError("dimension vector needs 'alpha0 ; label:value ...'", lineno, col)
    amb, entries = body.split(";", 1)
    amb = amb.strip()
    alpha0 = _parse_int(amb, lineno, col, "alpha0")
    if alpha0 < 0:
        raise NegativeDimensionError(f"line {lineno}: alpha0 = {alpha0} is negative")
    compact = re.sub(r"\s*:\s*", ":", entries)
    values: dict[str, int] = {}
    for token in compact.split():
        if token.count(":") != 1:
            raise PosetSyntaxError(f"bad entry {token!r}, expected label:value", lineno, col)
        lab, val = token.split(":")
        if lab not in P:
            raise UnknownLabelError(f"line {lineno}: unknown element {lab!r} in dimension vector")
        if lab in values:
            raise PosetSyntaxError(f"element {lab!r} given twice", lineno, col)
        v = _parse_int(val, lineno, col, f"element {lab}")
        if v < 0:
            raise NegativeDimensionError(f"line {lineno}: alpha[{lab}] = {v} is negative")
        values[lab] = v
    missing = [s for s in P.labels if s not in values]
    if missing:
        raise PosetSyntaxError(f"dimension vector has no value for element {missing[0]!r}", lineno, col)
    return DimVector(alpha0, values)


def render_poset_file(P: Poset, vectors: dict[str, DimVector] | None = None) -> str:
    lines = [f"elements = {' '.join(P.labels)}"]
    covers = P.hasse_covers()
    if covers:
        lines.append("order = " + " ".join(f"{s}<{t}" for s, t in covers))
    for name, vec in (vectors or {}).items():
        entries = " ".join(f"{s}:{vec[s]}" for s in P.labels)
        lines.append(f"dim {name} = {vec.alpha0} ; {entries}".rstrip())
    return "\n".join(lines) + "\n"


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_export(P: Poset, alpha: DimVector | None = None, name: str = "hasse") -> str:
    """Hasse diagram as a DOT digraph, edges pointing upward (``s -> t`` for s < t)."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for s in P.labels:
        text = s if alpha is None else f"{s}:{alpha[s]}"
        lines.append(f"  {_dot_id(s)} [label={_dot_id(text)}];")
    for s, t in P.hasse_covers():
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
