"""Generators for small finite categories and localizing sets.

Two families are produced: thin categories (preorders), enumerated
exhaustively, and concrete categories, obtained by closing a few random maps
between small finite sets under composition. Both are valid by construction.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .category import (
    close_sigma,
    FiniteCategory,
    cyclic_group,
    fix_p,
    identity_name,
    idempotent_monoid,
    make_category,
    preorder_category,
    walking_arrow,
    walking_isomorphism,
)
from .fileformat import serialize
from .fractions import LeftFractions

OBJECT_NAMES = "ABCDEFGH"


def preorders(n: int) -> Iterator[frozenset[tuple[int, int]]]:
    """Every preorder on ``range(n)``, as a set of pairs ``(i, j)`` meaning ``i ≤ j``."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag = {(i, i) for i in range(n)}
    for bits in itertools.product((0, 1), repeat=len(off)):
        le = diag | {p for p, b in zip(off, bits) if b}
        if all((i, k) in le for i, j in le for j2, k in le if j == j2):
            yield frozenset(le)


def thin_category(n: int, le) -> FiniteCategory:
    names = [str(i) for i in range(n)]
    return preorder_category(names, [(names[i], names[j]) for i, j in le])


def concrete_category(
    rng: random.Random,
    n_objects: int,
    n_generators: int,
    max_morphisms: int = 12,
    max_size: int = 3,
) -> FiniteCategory | None:
    """Close random maps between small sets under composition; None if it grows too big."""
    objects = OBJECT_NAMES[:n_objects]
    size = {x: rng.randint(1, max_size) for x in objects}
    maps = {(x, x, tuple(range(size[x]))) for x in objects}
    for _ in range(n_generators):
        x, y = rng.choice(objects), rng.choice(objects)
        maps.add((x, y, tuple(rng.randrange(size[y]) for _ in range(size[x]))))
    frontier = list(maps)
    while frontier:
        new = []
        for f in frontier:
            for g in list(maps):
                for a, b in ((f, g), (g, f)):
                    if a[1] == b[0]:
                        h = (a[0], b[1], tuple(b[2][i] for i in a[2]))
                        if h not in maps:
                            maps.add(h)
                            new.append(h)
            if len(maps) > max_morphisms:
                return None
        frontier = new
    ids = {x: (x, x, tuple(range(size[x]))) for x in objects}
    others = sorted(m for m in maps if m not in ids.values())
    name = {ids[x]: identity_name(x) for x in objects}
    for i, m in enumerate(others):
        name[m] = "abcdefghijklmnopqrstuvwxyz"[i]
    arrows = {name[m]: (m[0], m[1]) for m in others}
    table = {}
    for f in maps:
        for g in maps:
            if f[1] == g[0]:
                table[name[g], name[f]] = name[(f[0], g[1], tuple(g[2][i] for i in f[2]))]
    return make_category(objects, arrows, table)


def random_sigmas(c: FiniteCategory, rng: random.Random, tries: int = 6) -> list[frozenset[str]]:
    non_ids = [f for f in c.order if f not in c.identities]
    out = [close_sigma(c, ()), frozenset(c.morphisms)]
    for _ in range(tries):
        k = rng.randint(1, max(1, len(non_ids)))
        out.append(close_sigma(c, rng.sample(non_ids, min(k, len(non_ids)))))
    seen, unique = set(), []
    for s in out:
        if s not in seen:
            seen.add(s)
            unique.append(s)
    return unique


def satisfies_left_fractions(c: FiniteCategory, sigma) -> bool:
    return LeftFractions(c, sigma).check_axioms().ok


def named_instances() -> list[tuple[str, FiniteCategory, frozenset[str]]]:
    arrow, iso, p = walking_arrow(), walking_isomorphism(), fix_p()
    return [
        ("walking_arrow_all", arrow, frozenset(arrow.morphisms)),
        ("walking_arrow_ids", arrow, arrow.identities),
        ("fix_p_t", p, p.identities | {"t"}),
        ("fix_p_ids", p, p.identities),
        ("walking_iso_all", iso, frozenset(iso.morphisms)),
        ("z2_all", cyclic_group(2), frozenset(cyclic_group(2).morphisms)),
        ("z3_all", cyclic_group(3), frozenset(cyclic_group(3).morphisms)),
        ("idempotent_all", idempotent_monoid(), frozenset(idempotent_monoid().morphisms)),
    ]


def corpus(
    size: int = 60,
    seed: int = 0,
    max_objects: int = 4,
    max_morphisms: int = 12,
) -> list[tuple[str, FiniteCategory, frozenset[str]]]:
    """A deterministic mix of small ``(c, Σ)`` pairs satisfying (a)-(d).

    Roughly half thin, half concrete; trivial Σ (identities only) is kept only
    for the named fixtures.
    """
    rng = random.Random(seed)
    out = [inst for inst in named_instances() if satisfies_left_fractions(inst[1], inst[2])]
    seen = set()

    def add(name, c, sigma):
        key = (tuple(sorted(c.morphisms.items())), tuple(sorted(c.comp.items())), sigma)
        if key in seen or sigma == c.identities:
            return False
        if not satisfies_left_fractions(c, sigma):
            return False
        seen.add(key)
        out.append((name, c, sigma))
        return True

    thin_budget = len(out) + (size - len(out)) // 2
    attempts = 0
    while len(out) < thin_budget and attempts < 10_000:
        attempts += 1
        n = rng.randint(2, max_objects)
        rels = [le for le in preorders(n) if len(le) <= max_morphisms and len(le) > n]
        le = rng.choice(rels)
        c = thin_category(n, le)
        for sigma in random_sigmas(c, rng, tries=2):
            if add(f"thin{len(out):02d}", c, sigma):
                break
    attempts = 0
    while len(out) < size and attempts < 50_000:
        attempts += 1
        c = concrete_category(
            rng, rng.randint(1, max_objects), rng.randint(1, 4), max_morphisms=max_morphisms
        )
        if c is None or len(c) <= len(c.objects):
            continue
        sigmas = random_sigmas(c, rng, tries=4)
        proper = [s for s in sigmas if s != frozenset(c.morphisms)]
        for sigma in proper + [frozenset(c.morphisms)]:
            if add(f"conc{len(out):02d}", c, sigma):
                break
    return out


def corpus_files(**kwargs) -> dict[str, str]:
    """The corpus as ``{file name: presentation text}``."""
    return {f"{name}.cat": serialize(c, sigma) for name, c, sigma in corpus(**kwargs)}


if __name__ == "__main__":
    import sys
    from pathlib import Path

    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    out.mkdir(parents=True, exist_ok=True)
    for name, text in corpus_files().items():
        (out / name).write_text(text, encoding="utf-8", newline="\n")
