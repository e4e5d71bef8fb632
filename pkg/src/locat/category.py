"""Finite categories given by an explicit composition table, and functors between them.

Morphisms and objects are plain strings. The composition table maps a pair
``(g, f)`` to the name of ``g∘f`` (``f`` applied first) and is defined exactly on
pairs with ``source(g) == target(f)``. Identities are materialized as morphisms
named ``1_<object>``.

Nothing here validates on construction; call :func:`validate_category` and
:func:`check_functor`, which return a :class:`Report` instead of raising.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping


class LocalizationError(Exception):
    """Base class for errors raised by this package."""


class NotComposable(LocalizationError):
    pass


class UnknownMorphism(LocalizationError):
    pass


def identity_name(obj: str) -> str:
    return f"1_{obj}"


@dataclass(frozen=True)
class Report:
    """Outcome of a check: ``ok`` plus the first violation found, if any."""

    ok: bool
    kind: str | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return f"fail({self.kind}, {', '.join(map(str, self.witness))})"


PASS = Report(True)


@dataclass(frozen=True, eq=True)
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: Mapping[str, tuple[str, str]]
    identity: Mapping[str, str]
    comp: Mapping[tuple[str, str], str]

    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def tgt(self, f: str) -> str:
        return self.morphisms[f][1]

    @cached_property
    def order(self) -> tuple[str, ...]:
        """Canonical (lexicographic) order of morphism names."""
        return tuple(sorted(self.morphisms))

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        out = defaultdict(list)
        for f in self.order:
            out[self.src(f)].append(f)
        return {x: tuple(out[x]) for x in self.objects}

    @cached_property
    def _into(self) -> dict[str, tuple[str, ...]]:
        into = defaultdict(list)
        for f in self.order:
            into[self.tgt(f)].append(f)
        return {x: tuple(into[x]) for x in self.objects}

    @cached_property
    def _hom(self) -> dict[tuple[str, str], tuple[str, ...]]:
        hom = defaultdict(list)
        for f in self.order:
            hom[self.morphisms[f]].append(f)
        return {k: tuple(v) for k, v in hom.items()}

    def out_of(self, x: str) -> tuple[str, ...]:
        return self._out.get(x, ())

    def into(self, y: str) -> tuple[str, ...]:
        return self._into.get(y, ())

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    @cached_property
    def identities(self) -> frozenset[str]:
        return frozenset(self.identity.values())

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        """All ``(g, f)`` with ``source(g) == target(f)``, in canonical order."""
        for f in self.order:
            for g in self.out_of(self.tgt(f)):
                yield g, f

    def __len__(self) -> int:
        return len(self.morphisms)


def make_category(
    objects: Iterable[str],
    arrows: Mapping[str, tuple[str, str]],
    table: Mapping[tuple[str, str], str] = (),
) -> FiniteCategory:
    """Build a category from its non-identity arrows and their composites.

    Identities ``1_<x>`` are added automatically together with every composite
    that involves an identity. ``table`` maps ``(g, f)`` to ``g∘f``.
    """
    objects = tuple(sorted(set(objects)))
    identity = {x: identity_name(x) for x in objects}
    morphisms = {identity[x]: (x, x) for x in objects}
    for name, ends in arrows.items():
        if name in morphisms:
            raise ValueError(f"identity name {name!r} declared as an arrow")
        morphisms[name] = tuple(ends)
    comp = dict(table)
    for f, (x, y) in morphisms.items():
        comp.setdefault((identity[y], f), f)
        comp.setdefault((f, identity[x]), f)
    return FiniteCategory(objects, morphisms, identity, comp)


def compose(c: FiniteCategory, g: str, f: str) -> str:
    """``g∘f`` (``f`` first)."""
    if c.src(g) != c.tgt(f):
        raise NotComposable(f"{g} after {f}: {c.tgt(f)} != {c.src(g)}")
    return c.comp[g, f]


def compose_chain(c: FiniteCategory, chain: Iterable[str], at: str) -> str:
    """Compose morphisms listed in the order they are applied."""
    result = c.identity[at]
    for f in chain:
        result = compose(c, f, result)
    return result


def validate_category(c: FiniteCategory) -> Report:
    for x in c.objects:
        i = c.identity.get(x)
        if i is None or c.morphisms.get(i) != (x, x):
            return Report(False, "BadIdentity", (x,))
    objs = set(c.objects)
    for f, (x, y) in c.morphisms.items():
        if x not in objs or y not in objs:
            return Report(False, "UnknownObject", (f,))
    for (g, f), h in c.comp.items():
        if g not in c.morphisms or f not in c.morphisms or h not in c.morphisms:
            return Report(False, "UnknownMorphism", (g, f, h))
        if c.src(g) != c.tgt(f):
            return Report(False, "SpuriousComposite", (g, f))
        if c.morphisms[h] != (c.src(f), c.tgt(g)):
            return Report(False, "BadCompositeEndpoints", (g, f, h))
    for g, f in c.composable_pairs():
        if (g, f) not in c.comp:
            return Report(False, "MissingComposite", (g, f))
    for f, (x, y) in c.morphisms.items():
        if c.comp[c.identity[y], f] != f or c.comp[f, c.identity[x]] != f:
            return Report(False, "IdentityLaw", (f,))
    for f in c.order:
        for g in c.out_of(c.tgt(f)):
            gf = c.comp[g, f]
            for h in c.out_of(c.tgt(g)):
                if c.comp[h, gf] != c.comp[c.comp[h, g], f]:
                    return Report(False, "NotAssociative", (h, g, f))
    return PASS


def sigma_set(c: FiniteCategory, names: Iterable[str]) -> frozenset[str]:
    sigma = frozenset(names)
    unknown = sorted(sigma - set(c.morphisms))
    if unknown:
        raise UnknownMorphism(", ".join(unknown))
    return sigma


def close_sigma(c: FiniteCategory, generators) -> frozenset[str]:
    """Smallest set containing the identities and ``generators`` closed under composition."""
    sigma = set(c.identities) | set(generators)
    changed = True
    while changed:
        changed = False
        for g, f in c.composable_pairs():
            if f in sigma and g in sigma and c.comp[g, f] not in sigma:
                sigma.add(c.comp[g, f])
                changed = True
    return frozenset(sigma)


def opposite(
    c: FiniteCategory, sigma: frozenset[str] = frozenset()
) -> tuple[FiniteCategory, frozenset[str]]:
    morphisms = {f: (y, x) for f, (x, y) in c.morphisms.items()}
    comp = {(f, g): h for (g, f), h in c.comp.items()}
    return FiniteCategory(c.objects, morphisms, dict(c.identity), comp), sigma


@dataclass(frozen=True)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    ob_map: Mapping[str, str]
    mor_map: Mapping[str, str]

    def __call__(self, f: str) -> str:
        return self.mor_map[f]

    def same_maps(self, other: "Functor") -> bool:
        return dict(self.ob_map) == dict(other.ob_map) and dict(self.mor_map) == dict(
            other.mor_map
        )


def identity_functor(c: FiniteCategory) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.morphisms})


def fcompose(g: Functor, f: Functor) -> Functor:
    """``g∘f`` as functors (``f`` applied first)."""
    return Functor(
        f.source,
        g.target,
        {x: g.ob_map[y] for x, y in f.ob_map.items()},
        {u: g.mor_map[v] for u, v in f.mor_map.items()},
    )


def check_functor(F: Functor) -> Report:
    c, d = F.source, F.target
    for x in c.objects:
        if F.ob_map.get(x) not in d.identity:
            return Report(False, "ObjectMap", (x,))
    for f, (x, y) in c.morphisms.items():
        image = F.mor_map.get(f)
        if image not in d.morphisms:
            return Report(False, "MorphismMap", (f,))
        if d.morphisms[image] != (F.ob_map[x], F.ob_map[y]):
            return Report(False, "Endpoints", (f,))
    for x in c.objects:
        if F.mor_map[c.identity[x]] != d.identity[F.ob_map[x]]:
            return Report(False, "Identity", (x,))
    for g, f in c.composable_pairs():
        if F.mor_map[c.comp[g, f]] != d.comp[F.mor_map[g], F.mor_map[f]]:
            return Report(False, "Composition", (g, f))
    return PASS


def find_inverse(c: FiniteCategory, f: str) -> str | None:
    x, y = c.morphisms[f]
    for g in c.hom(y, x):
        if c.comp[g, f] == c.identity[x] and c.comp[f, g] == c.identity[y]:
            return g
    return None


def is_groupoid(c: FiniteCategory) -> Report:
    for f in c.order:
        if find_inverse(c, f) is None:
            return Report(False, "NotInvertible", (f,))
    return PASS


# Small named categories used as fixtures and functor targets.


def terminal_category(obj: str = "0") -> FiniteCategory:
    return make_category([obj], {})


def walking_arrow() -> FiniteCategory:
    return make_category(["0", "1"], {"f": ("0", "1")})


def walking_isomorphism() -> FiniteCategory:
    return make_category(
        ["0", "1"],
        {"f": ("0", "1"), "g": ("1", "0")},
        {("g", "f"): "1_0", ("f", "g"): "1_1"},
    )


def fix_p() -> FiniteCategory:
    """Objects X, Y, Z; parallel f, g: X→Y coequalized by t: Y→Z, with t∘f = t∘g = h."""
    return make_category(
        ["X", "Y", "Z"],
        {"f": ("X", "Y"), "g": ("X", "Y"), "t": ("Y", "Z"), "h": ("X", "Z")},
        {("t", "f"): "h", ("t", "g"): "h"},
    )


def monoid_category(elements: Iterable[str], table: Mapping[tuple[str, str], str], obj: str = "0"):
    """One-object category from a monoid whose unit is ``1_<obj>``."""
    return make_category([obj], {e: (obj, obj) for e in elements}, table)


def cyclic_group(n: int = 2, obj: str = "0") -> FiniteCategory:
    names = [identity_name(obj)] + [f"z{k}" for k in range(1, n)]
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(1, n) for j in range(1, n)}
    return monoid_category(names[1:], table, obj)


def idempotent_monoid(obj: str = "0") -> FiniteCategory:
    return monoid_category(["e"], {("e", "e"): "e"}, obj)


def preorder_category(objects: Iterable[str], le: Iterable[tuple[str, str]]) -> FiniteCategory:
    """Thin category of a preorder; ``le`` must already be reflexive and transitive.

    The arrow ``x ≤ y`` is named ``<x>to<y>``.
    """
    objects = sorted(set(objects))
    rel = {(x, y) for x, y in le if x != y}
    arrows = {f"{x}to{y}": (x, y) for x, y in sorted(rel)}

    def name(x, y):
        return identity_name(x) if x == y else f"{x}to{y}"

    table = {}
    for x, y in rel:
        for y2, z in rel:
            if y == y2:
                table[name(y, z), name(x, y)] = name(x, z)
    return make_category(objects, arrows, table)


def loc_compatible(F: Functor, sigma) -> Report:
    """Whether ``F`` sends every member of ``sigma`` to an isomorphism."""
    for q in sorted(sigma):
        if find_inverse(F.target, F.mor_map[q]) is None:
            return Report(False, "NotInverted", (q,))
    return PASS
