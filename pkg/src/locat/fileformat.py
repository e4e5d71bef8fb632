"""Plain-text presentations of finite categories.

::

    # comment
    ob X
    mor f : X -> Y
    comp t . f = h        # t∘f = h
    sigma f, t

Identities ``1_<ob>`` are implicit. Files emitted for a localization may
also carry ``map ob X = Y`` and ``map mor f = g`` lines describing the
projection from the original category; they are returned separately.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .category import (
    FiniteCategory,
    Functor,
    LocalizationError,
    Report,
    identity_name,
    make_category,
    validate_category,
)

IDENT = r"[A-Za-z0-9_]+"
_LINES = {
    "ob": re.compile(rf"ob\s+({IDENT})"),
    "mor": re.compile(rf"mor\s+({IDENT})\s*:\s*({IDENT})\s*->\s*({IDENT})"),
    "comp": re.compile(rf"comp\s+({IDENT})\s*\.\s*({IDENT})\s*=\s*({IDENT})"),
    "sigma": re.compile(rf"sigma\s+({IDENT}(?:\s*,\s*{IDENT})*)"),
    "map": re.compile(rf"map\s+(ob|mor)\s+({IDENT})\s*=\s*({IDENT})"),
}


class PresentationError(LocalizationError):
    def __init__(self, line: int | None, message: str):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class PresentationSyntaxError(PresentationError):
    pass


class UnknownIdent(PresentationError):
    pass


class DuplicateComp(PresentationError):
    pass


class ValidationFail(PresentationError):
    def __init__(self, report: Report, line: int | None = None):
        super().__init__(line, f"not a category: {report}")
        self.report = report


@dataclass
class Presentation:
    category: FiniteCategory
    sigma: frozenset[str]
    ob_map: dict[str, str] = field(default_factory=dict)
    mor_map: dict[str, str] = field(default_factory=dict)


def parse(text: str) -> Presentation:
    objects: list[str] = []
    arrows: dict[str, tuple[str, str]] = {}
    comp_lines: dict[tuple[str, str], tuple[str, int]] = {}
    sigma_lines: list[tuple[str, int]] = []
    ob_map: dict[str, str] = {}
    mor_map: dict[str, str] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword = line.split(None, 1)[0]
        pattern = _LINES.get(keyword)
        m = pattern.fullmatch(line) if pattern else None
        if m is None:
            raise PresentationSyntaxError(lineno, f"cannot read {raw.strip()!r}")
        if keyword == "ob":
            if m[1] in objects:
                raise PresentationSyntaxError(lineno, f"object {m[1]} declared twice")
            objects.append(m[1])
        elif keyword == "mor":
            name, x, y = m.groups()
            for ob in (x, y):
                if ob not in objects:
                    raise UnknownIdent(lineno, f"unknown object {ob}")
            if name in arrows or name in {identity_name(o) for o in objects}:
                raise PresentationSyntaxError(lineno, f"morphism {name} declared twice or shadows an identity")
            arrows[name] = (x, y)
        elif keyword == "comp":
            g, f, h = m.groups()
            if (g, f) in comp_lines:
                raise DuplicateComp(lineno, f"{g} . {f} already given on line {comp_lines[g, f][1]}")
            comp_lines[g, f] = (h, lineno)
        elif keyword == "sigma":
            sigma_lines.extend((name.strip(), lineno) for name in m[1].split(","))
        else:
            kind, a, b = m.groups()
            (ob_map if kind == "ob" else mor_map)[a] = b

    known = set(arrows) | {identity_name(o) for o in objects}
    for o in objects:
        if identity_name(o) in arrows:
            raise PresentationSyntaxError(None, f"{identity_name(o)} is an implicit identity")
    ends = dict(arrows)
    ends.update({identity_name(o): (o, o) for o in objects})
    table = {}
    for (g, f), (h, lineno) in comp_lines.items():
        for name in (g, f, h):
            if name not in known:
                raise UnknownIdent(lineno, f"unknown morphism {name}")
        if ends[g][0] != ends[f][1]:
            raise ValidationFail(Report(False, "NotComposable", (g, f)), lineno)
        if ends[h] != (ends[f][0], ends[g][1]):
            raise ValidationFail(Report(False, "BadCompositeEndpoints", (g, f, h)), lineno)
        table[g, f] = h
    for name, lineno in sigma_lines:
        if name not in known:
            raise UnknownIdent(lineno, f"unknown morphism {name}")

    c = make_category(objects, arrows, table)
    for (g, f), (h, lineno) in comp_lines.items():
        # explicit identity composites must agree with the unit laws
        if (g in c.identities and h != f) or (f in c.identities and h != g):
            raise ValidationFail(Report(False, "IdentityLaw", (g, f, h)), lineno)
    report = validate_category(c)
    if not report:
        raise ValidationFail(report)
    return Presentation(c, frozenset(n for n, _ in sigma_lines), ob_map, mor_map)


def load(path) -> Presentation:
    return parse(Path(path).read_text(encoding="utf-8"))


def serialize(
    c: FiniteCategory,
    sigma=frozenset(),
    projection: Functor | None = None,
    header: str = "",
) -> str:
    """Canonical text: objects, morphisms and composites sorted by name."""
    for x, i in c.identity.items():
        if i != identity_name(x):
            raise ValueError(f"identity of {x} is named {i}, expected {identity_name(x)}")
    lines = [f"# {row}" for row in header.splitlines()]
    lines += [f"ob {x}" for x in sorted(c.objects)]
    lines += [f"mor {f} : {x} -> {y}" for f, (x, y) in sorted(c.morphisms.items()) if f not in c.identities]
    lines += [
        f"comp {g} . {f} = {h}"
        for (g, f), h in sorted(c.comp.items())
        if g not in c.identities and f not in c.identities
    ]
    if sigma:
        lines.append("sigma " + ", ".join(sorted(sigma)))
    if projection is not None:
        lines += [f"map ob {x} = {y}" for x, y in sorted(projection.ob_map.items())]
        lines += [f"map mor {f} = {g}" for f, g in sorted(projection.mor_map.items())]
    return "\n".join(lines) + "\n"
