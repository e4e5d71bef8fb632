"""Relations on morphisms, congruence closure and quotient categories."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .category import (
    PASS,
    FiniteCategory,
    Functor,
    LocalizationError,
    Report,
)


class NotParallel(LocalizationError):
    pass


class NotCongruence(LocalizationError):
    def __init__(self, report: Report):
        super().__init__(str(report))
        self.report = report


class NotConstantOnClasses(LocalizationError):
    pass


class QuotientNotCategory(LocalizationError):
    def __init__(self, law: str, witness: tuple):
        super().__init__(f"{law}: {witness}")
        self.law = law
        self.witness = witness


@dataclass(frozen=True)
class CatRelation:
    """A set of ordered pairs of parallel morphisms of ``host``."""

    host: FiniteCategory
    pairs: frozenset

    def __post_init__(self):
        m = self.host.morphisms
        for u, v in self.pairs:
            if m[u] != m[v]:
                raise NotParallel(f"{u} and {v}")

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __le__(self, other: "CatRelation") -> bool:
        return self.pairs <= other.pairs


def relation(c: FiniteCategory, pairs: Iterable[tuple[str, str]]) -> CatRelation:
    return CatRelation(c, frozenset(pairs))


def equality(c: FiniteCategory) -> CatRelation:
    return relation(c, ((f, f) for f in c.morphisms))


def coarse(c: FiniteCategory) -> CatRelation:
    return relation(c, ((u, v) for u in c.order for v in c.hom(*c.morphisms[u])))


def is_cat_equiv_rel(r: CatRelation) -> Report:
    c, pairs = r.host, r.pairs
    for f in c.order:
        if (f, f) not in pairs:
            return Report(False, "NotReflexive", (f,))
    for u, v in sorted(pairs):
        if (v, u) not in pairs:
            return Report(False, "NotSymmetric", (u, v))
    related = {}
    for u, v in pairs:
        related.setdefault(u, set()).add(v)
    for u in sorted(related):
        for v in sorted(related[u]):
            for w in sorted(related[v]):
                if (u, w) not in pairs:
                    return Report(False, "NotTransitive", (u, v, w))
    for g, f in c.composable_pairs():
        gf = c.comp[g, f]
        for g2 in sorted(related[g]):
            for f2 in sorted(related[f]):
                if (gf, c.comp[g2, f2]) not in pairs:
                    return Report(False, "NotCompatible", (g, f, g2, f2))
    return PASS


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def cer(c: FiniteCategory, r: CatRelation) -> CatRelation:
    """Smallest congruence (equivalence compatible with composition) containing ``r``."""
    uf = _UnionFind(c.order)
    for u, v in r.pairs:
        uf.union(u, v)
    pairs = list(c.composable_pairs())
    changed = True
    while changed:
        changed = False
        seen: dict = {}
        for g, f in pairs:
            key = (uf.find(g), uf.find(f))
            gf = c.comp[g, f]
            if key in seen:
                changed |= uf.union(seen[key], gf)
            else:
                seen[key] = gf
    return relation(
        c, ((u, v) for members in uf.classes().values() for u in members for v in members)
    )


def classes_of(r: CatRelation, key: Callable | None = None) -> list[list[str]]:
    """Equivalence classes of ``r``, members and classes sorted by ``key``."""
    uf = _UnionFind(r.host.order)
    for u, v in r.pairs:
        uf.union(u, v)
    out = [sorted(m, key=key) for m in uf.classes().values()]
    return sorted(out, key=lambda m: (key(m[0]) if key else m[0]))


def _class_names(host: FiniteCategory, classes: list[list[str]]) -> dict[str, str]:
    """Map each member to the name of its class: an identity if one is present, else the least member."""
    name_of = {}
    for members in classes:
        ids = [m for m in members if m in host.identities]
        label = ids[0] if ids else members[0]
        for m in members:
            name_of[m] = label
    return name_of


def _induced(host: FiniteCategory, name_of: dict[str, str]) -> FiniteCategory:
    morphisms = {}
    for f, ends in host.morphisms.items():
        morphisms[name_of[f]] = ends
    comp = {}
    for g, f in host.composable_pairs():
        k = (name_of[g], name_of[f])
        comp.setdefault(k, name_of[host.comp[g, f]])
    identity = {x: name_of[i] for x, i in host.identity.items()}
    return FiniteCategory(host.objects, morphisms, identity, comp)


def quotient_category(c: FiniteCategory, r: CatRelation) -> tuple[FiniteCategory, Functor]:
    report = is_cat_equiv_rel(r)
    if not report:
        raise NotCongruence(report)
    name_of = _class_names(c, classes_of(r))
    q = _induced(c, name_of)
    proj = Functor(c, q, {x: x for x in c.objects}, dict(name_of))
    return q, proj


def qdotted(r: CatRelation, F: Functor) -> Functor:
    """The functor out of the quotient through which ``F`` factors."""
    if F.source != r.host:
        raise ValueError("functor source is not the host of the relation")
    for u, v in sorted(r.pairs):
        if F.mor_map[u] != F.mor_map[v]:
            raise NotConstantOnClasses(f"{u} ~ {v} but F({u}) = {F.mor_map[u]} != {F.mor_map[v]}")
    q, proj = quotient_category(r.host, r)
    mor_map = {}
    for f, cls in proj.mor_map.items():
        mor_map.setdefault(cls, F.mor_map[f])
    return Functor(q, F.target, dict(F.ob_map), mor_map)


def associating_quotient(
    p: FiniteCategory,
    r: CatRelation,
    *,
    key: Callable | None = None,
    namer: Callable[[list[str]], str] | None = None,
) -> tuple[FiniteCategory, dict[str, str]]:
    """Quotient a pre-category (composition not assumed associative or unital).

    Returns the quotient category and the map sending each morphism of ``p``
    to its class name. Members of a class are sorted by ``key``; ``namer``
    receives that list. By default a class is named by the identity it
    contains, else by its least member.
    """
    uf = _UnionFind(p.order)
    for u, v in r.pairs:
        uf.union(u, v)
    for u, v in r.pairs:
        if (v, u) not in r.pairs:
            raise QuotientNotCategory("symmetry", (u, v))
    for f in p.order:
        if (f, f) not in r.pairs:
            raise QuotientNotCategory("reflexivity", (f,))
    classes = [sorted(m, key=key) for m in uf.classes().values()]
    for members in classes:
        for u in members:
            for v in members:
                if (u, v) not in r.pairs:
                    raise QuotientNotCategory("transitivity", (u, v))

    name_of = {}
    for members in classes:
        ids = [m for m in members if m in p.identities]
        if len(ids) > 1:
            raise QuotientNotCategory("identities merged", tuple(ids))
        if namer is not None:
            label = namer(members)
        else:
            label = ids[0] if ids else members[0]
        for m in members:
            name_of[m] = label
    if len(set(name_of.values())) != len(classes):
        raise QuotientNotCategory("class names collide", ())

    comp: dict = {}
    for g, f in p.composable_pairs():
        k = (name_of[g], name_of[f])
        h = name_of[p.comp[g, f]]
        if comp.setdefault(k, h) != h:
            raise QuotientNotCategory("well-definedness", (g, f))
    morphisms = {name_of[f]: ends for f, ends in p.morphisms.items()}
    identity = {x: name_of[i] for x, i in p.identity.items()}
    q = FiniteCategory(p.objects, morphisms, identity, comp)

    for f, (x, y) in morphisms.items():
        if comp[identity[y], f] != f or comp[f, identity[x]] != f:
            raise QuotientNotCategory("identity", (f,))
    for f in q.order:
        for g in q.out_of(q.tgt(f)):
            for h in q.out_of(q.tgt(g)):
                if comp[h, comp[g, f]] != comp[comp[h, g], f]:
                    raise QuotientNotCategory("associativity", (h, g, f))
    return q, name_of
