"""Loop documents (JSON) and text renderings of synthesised loops."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Any, Sequence

from .errors import DimensionMismatch, UnsupportedFormat
from .synthesis import LinearLoop, SynthesisReport

SCHEMA_VERSION = 1
FORMATS = ("pseudo", "c", "json")


def frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_frac(s: str | int) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"rational must be a string like 'p/q', got {s!r}")
    return Fraction(s)


@dataclass(frozen=True)
class LoopDocument:
    vars: tuple[str, ...]
    init: tuple[Fraction, ...]
    update: tuple[tuple[Fraction, ...], ...]
    metadata: dict[str, Any]
    schema: int = SCHEMA_VERSION

    @classmethod
    def from_loop(cls, loop: LinearLoop, metadata: dict[str, Any] | None = None) -> LoopDocument:
        return cls(loop.vars, tuple(loop.init), tuple(loop.update), metadata or {})

    @classmethod
    def from_report(cls, report: SynthesisReport) -> LoopDocument:
        meta = {
            "A": [list(row) for row in report.A],
            "lambdas": [frac_str(x) for x in report.lambdas],
            "rank": report.lattice.rank,
            "nontrivial": report.nontrivial,
            "exactness": report.exactness.level.name,
            "justification": report.exactness.justification,
            "transform": None,
        }
        if report.transformed is not None:
            meta["transform"] = [[frac_str(x) for x in row] for row in report.transformed[0]]
        return cls.from_loop(report.loop, meta)

    def to_loop(self) -> LinearLoop:
        return LinearLoop(self.vars, self.update, self.init)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": self.schema,
            "vars": list(self.vars),
            "init": [frac_str(x) for x in self.init],
            "update": [[frac_str(x) for x in row] for row in self.update],
            "metadata": self.metadata,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> LoopDocument:
        schema = data.get("schema")
        if schema != SCHEMA_VERSION:
            raise ValueError(f"unsupported loop document schema {schema!r}")
        doc = cls(
            vars=tuple(data["vars"]),
            init=tuple(parse_frac(x) for x in data["init"]),
            update=tuple(tuple(parse_frac(x) for x in row) for row in data["update"]),
            metadata=dict(data.get("metadata") or {}),
        )
        doc.to_loop()  # dimension check
        return doc

    @classmethod
    def loads(cls, text: str) -> LoopDocument:
        return cls.from_dict(json.loads(text))


def load_matrix(text: str) -> tuple[tuple[Fraction, ...], ...]:
    """Read ``{"matrix": [["p/q", ...], ...]}``."""
    data = json.loads(text)
    rows = data["matrix"] if isinstance(data, dict) else None
    if not isinstance(rows, list) or not rows:
        raise ValueError('expected {"matrix": [[...], ...]}')
    M = tuple(tuple(parse_frac(x) for x in row) for row in rows)
    if any(len(row) != len(M) for row in M):
        raise DimensionMismatch("transform matrix must be square")
    return M


def _linear_form(row: Sequence[Fraction], names: Sequence[str]) -> str:
    parts = []
    for c, name in zip(row, names):
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else (f"{mag}{name}" if mag.denominator == 1 else f"({mag}){name}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) or "0"


def render_pseudo(loop: LinearLoop) -> str:
    names = loop.vars
    lines = [f"({', '.join(names)}):=({','.join(frac_str(x) for x in loop.init)});", "while ⋆ {"]
    for name, row in zip(names, loop.update):
        lines.append(f"  {name}:={_linear_form(row, names)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _c_expr(row: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for c, name in zip(row, names):
        if c == 0:
            continue
        term = name if abs(c) == 1 else f"{abs(c)}*{name}"
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append((" - " if c < 0 else " + ") + term)
    return "".join(parts) or "0"


def render_c(loop: LinearLoop) -> str:
    names = loop.vars
    out = ["/* Linear loop, simultaneous assignment over the rationals:"]
    out += [f" *   {n} := {_linear_form(row, names)}" for n, row in zip(names, loop.update)]
    out += [f" * initial values: {', '.join(f'{n} = {frac_str(x)}' for n, x in zip(names, loop.init))}",
            " */",
            "#include <stdbool.h>",
            "",
            "extern bool nondet(void);",
            "",
            "void loop(void)",
            "{"]
    integral = all(x.denominator == 1 for row in loop.update for x in row)
    if integral:
        scale = reduce(lcm, (x.denominator for x in loop.init), 1)
        if scale != 1:
            out.append(f"    /* integer-scaled: each variable holds {scale} times its value */")
        decl = ", ".join(f"{n} = {int(x * scale)}" for n, x in zip(names, loop.init))
        out += [f"    long long {decl};", "    while (nondet()) {"]
        out += [f"        long long {n}_next = {_c_expr([int(x) for x in row], names)};"
                for n, row in zip(names, loop.update)]
        out += [f"        {n} = {n}_next;" for n in names]
        out.append("    }")
    else:
        out += ["    /* update has non-integer entries; see the rational form above */",
                "    while (nondet()) {",
                "    }"]
    out.append("}")
    return "\n".join(out) + "\n"


def render(loop: LinearLoop, fmt: str, report: SynthesisReport | None = None) -> str:
    if fmt == "pseudo":
        return render_pseudo(loop)
    if fmt == "c":
        return render_c(loop)
    if fmt == "json":
        doc = LoopDocument.from_report(report) if report is not None else LoopDocument.from_loop(loop)
        return doc.dumps()
    raise UnsupportedFormat(f"unknown format {fmt!r}; choose one of {', '.join(FORMATS)}")
