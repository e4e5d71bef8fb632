"""Cross-checks between the constructions, by exhaustive enumeration at small scale."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .category import (
    PASS,
    FiniteCategory,
    Functor,
    LocalizationError,
    Report,
    check_functor,
    fcompose,
    identity_functor,
    loc_compatible,
    make_category,
)
from .fractions import (
    FractionLocalization,
    LeftFractions,
    Symbol,
    build_fraction_category,
    fraction_dotted,
)
from .freecat import Path
from .generate import concrete_category, preorders, random_sigmas, thin_category
from .words import LocalizedPresentation, bwd, format_word, fwd, word_ends, words_up_to

DEFAULT_NODE_CAP = 2_000_000


class SizeBound(LocalizationError):
    pass


class NotFound(LocalizationError):
    pass


# -- functor and natural transformation enumeration ---------------------------


def enumerate_functors(
    source: FiniteCategory, target: FiniteCategory, cap: int = DEFAULT_NODE_CAP
) -> list[Functor]:
    """Every functor ``source -> target``, by backtracking over object then morphism images."""
    objs = list(source.objects)
    arrows = [f for f in source.order if f not in source.identities]
    position = {f: i for i, f in enumerate(arrows)}
    # constraints checked once the last of g, f, g∘f has been assigned
    checks: list[list[tuple[str, str, str]]] = [[] for _ in arrows]
    for g, f in source.composable_pairs():
        h = source.comp[g, f]
        involved = [position[m] for m in (g, f, h) if m in position]
        if involved:
            checks[max(involved)].append((g, f, h))
    out = []
    nodes = 0
    for images in product(target.objects, repeat=len(objs)):
        ob_map = dict(zip(objs, images))
        mor_map = {source.identity[x]: target.identity[ob_map[x]] for x in objs}

        def extend(i: int):
            nonlocal nodes
            if i == len(arrows):
                out.append(Functor(source, target, dict(ob_map), dict(mor_map)))
                return
            f = arrows[i]
            x, y = source.morphisms[f]
            for image in target.hom(ob_map[x], ob_map[y]):
                nodes += 1
                if nodes > cap:
                    raise SizeBound(f"functor search exceeded {cap} nodes")
                mor_map[f] = image
                if all(target.comp[mor_map[g], mor_map[h]] == mor_map[k] for g, h, k in checks[i]):
                    extend(i + 1)
            mor_map.pop(f, None)

        extend(0)
    return out


def enumerate_nat_trans(F: Functor, G: Functor) -> list[dict[str, str]]:
    """Every natural transformation ``F => G``, as a map object -> component."""
    c, d = F.source, F.target
    objs = list(c.objects)
    out = []

    def natural(comp: dict, f: str) -> bool:
        x, y = c.morphisms[f]
        return d.comp[G.mor_map[f], comp[x]] == d.comp[comp[y], F.mor_map[f]]

    def extend(i: int, comp: dict):
        if i == len(objs):
            out.append(dict(comp))
            return
        x = objs[i]
        done = set(objs[: i + 1])
        for alpha in d.hom(F.ob_map[x], G.ob_map[x]):
            comp[x] = alpha
            ok = all(
                natural(comp, f)
                for y in done
                for f in list(c.out_of(x)) + list(c.into(x))
                if c.src(f) in done and c.tgt(f) in done
            )
            if ok:
                extend(i + 1, comp)
            del comp[x]

    extend(0, {})
    return out


def _functor_key(F: Functor) -> tuple:
    return tuple(sorted(F.ob_map.items())), tuple(sorted(F.mor_map.items()))


# -- functor categories at desk scale ------------------------------------------


@dataclass
class Lemma12Report:
    functors_from_localization: int
    inverting_functors: int
    bijection: dict = field(default_factory=dict)
    nat_trans_counts: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def check_lemma_1_2(
    c: FiniteCategory, sigma, x: FiniteCategory, cap: int = DEFAULT_NODE_CAP
) -> Lemma12Report:
    """Precomposition with the projection, checked to be an isomorphism of functor categories
    onto the Σ-inverting part: bijective on functors and on natural transformations."""
    loc = build_fraction_category(c, sigma)
    P = loc.projection
    from_loc = enumerate_functors(loc.category, x, cap)
    from_c = enumerate_functors(c, x, cap)
    inverting = [F for F in from_c if loc_compatible(F, loc.sigma)]
    report = Lemma12Report(len(from_loc), len(inverting))

    for G in from_loc:
        if not check_functor(G):
            report.failures.append(("not a functor", _functor_key(G)))
    images = {}
    for i, G in enumerate(from_loc):
        key = _functor_key(fcompose(G, P))
        if key in images:
            report.failures.append(("not injective", i, images[key]))
        images[key] = i
    inverting_keys = {_functor_key(F): j for j, F in enumerate(inverting)}
    if set(images) != set(inverting_keys):
        report.failures.append(("image is not the inverting subset",))
    for key, i in images.items():
        if key in inverting_keys:
            report.bijection[i] = inverting_keys[key]
    # the inverse table comes from the universal property
    for j, F in enumerate(inverting):
        G = fraction_dotted(loc, F)
        if not fcompose(G, P).same_maps(F):
            report.failures.append(("dotted does not factor", j))
        i = images.get(_functor_key(fcompose(G, P)))
        if i is None or not from_loc[i].same_maps(G):
            report.failures.append(("tables not mutually inverse", j))

    for i, G in enumerate(from_loc):
        for j, H in enumerate(from_loc):
            upstairs = enumerate_nat_trans(G, H)
            downstairs = enumerate_nat_trans(fcompose(G, P), fcompose(H, P))
            # P is the identity on objects, so whiskering keeps the components
            whiskered = {tuple(sorted(a.items())) for a in upstairs}
            below = {tuple(sorted(a.items())) for a in downstairs}
            report.nat_trans_counts.append((i, j, len(upstairs), len(downstairs)))
            if len(whiskered) != len(upstairs) or whiskered != below:
                report.failures.append(("nat trans not bijective", i, j))
    return report


# -- universal property -------------------------------------------------------


def probe_target() -> FiniteCategory:
    """Two objects, five morphisms: an involution ``z`` on 0, an idempotent ``e`` on 1,
    and ``f: 0 -> 1`` absorbing both."""
    return make_category(
        ["0", "1"],
        {"z": ("0", "0"), "f": ("0", "1"), "e": ("1", "1")},
        {("z", "z"): "1_0", ("f", "z"): "f", ("e", "e"): "e", ("e", "f"): "f"},
    )


@dataclass
class UniversalReport:
    compatible: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def check_universal_property(c: FiniteCategory, sigma, target: FiniteCategory) -> UniversalReport:
    """Every Σ-inverting functor into ``target`` factors through the projection, uniquely."""
    loc = build_fraction_category(c, sigma)
    P = loc.projection
    from_loc = enumerate_functors(loc.category, target)
    report = UniversalReport()
    for F in enumerate_functors(c, target):
        if not loc_compatible(F, loc.sigma):
            continue
        report.compatible += 1
        G = fraction_dotted(loc, F)
        if not check_functor(G):
            report.failures.append(("not a functor", _functor_key(F)))
        if not fcompose(G, P).same_maps(F):
            report.failures.append(("does not factor", _functor_key(F)))
        through = [H for H in from_loc if fcompose(H, P).same_maps(F)]
        if len(through) != 1 or not through[0].same_maps(G):
            report.failures.append(("not unique", _functor_key(F), len(through)))
    return report


# -- uniqueness of the localization -------------------------------------------


def permuted_order(c: FiniteCategory) -> list[str]:
    return list(reversed(c.order))


def check_localizations_isomorphic(c: FiniteCategory, sigma) -> Report:
    """Build the fraction category under two tie-break orders and compare them through
    their universal properties: both composites must be identity functors."""
    first = build_fraction_category(c, sigma)
    second = build_fraction_category(c, sigma, order=permuted_order(c))
    there = fraction_dotted(first, second.projection)
    back = fraction_dotted(second, first.projection)
    for name, F in (("first", there), ("second", back)):
        r = check_functor(F)
        if not r:
            return Report(False, f"DottedNotFunctor[{name}]", r.witness)
    if not fcompose(back, there).same_maps(identity_functor(first.category)):
        return Report(False, "NotInverse", ("first",))
    if not fcompose(there, back).same_maps(identity_functor(second.category)):
        return Report(False, "NotInverse", ("second",))
    if not fcompose(there, first.projection).same_maps(second.projection):
        return Report(False, "ProjectionMismatch", ())
    return PASS


# -- words versus fractions ---------------------------------------------------------


def symbol_word(loc: FractionLocalization, u: Symbol) -> Path:
    """``(t, f)`` as the zigzag word ``f.~t``."""
    lf = loc.fractions
    return Path(lf.source(u), (fwd(u.fwd), bwd(u.bwd)))


def word_symbol(lf: LeftFractions, w: Path) -> Symbol:
    """Fold a word into a single symbol with the raw (fill-in) composition."""
    c = lf.c
    result = lf.identity_symbol(w.at)
    for tok in w.edges:
        if tok.backward:
            step = Symbol(c.identity[c.tgt(tok.mor)], tok.mor)
        else:
            step = Symbol(tok.mor, c.identity[c.tgt(tok.mor)])
        result = lf.compose(result, step)
    return result


@dataclass
class LfPropertyReport:
    words: int = 0
    pairs: int = 0
    equal_by_search: int = 0
    equal_by_bridge: int = 0
    distinct: int = 0
    mismatches: list = field(default_factory=list)
    roundtrip_failures: list = field(default_factory=list)

    @property
    def fallback_rate(self) -> float:
        return self.equal_by_bridge / self.pairs if self.pairs else 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.roundtrip_failures

    def __bool__(self) -> bool:
        return self.ok


def check_theorem_lfproperty(
    c: FiniteCategory, sigma, max_len: int, budget: int = 50_000
) -> LfPropertyReport:
    """Every word is some ``t⁻¹∘f``, and word equality agrees with fraction equivalence."""
    pres = LocalizedPresentation(c, sigma)
    loc = pres.fractions
    if loc is None or loc.sigma != pres.sigma:
        raise LocalizationError("(a)-(d) fail; the fraction bridge is unavailable")
    lf = loc.fractions
    evaluate = pres.bridge
    report = LfPropertyReport()

    for u in lf.symbols():
        if evaluate(symbol_word(loc, u)) != loc.class_of[u]:
            report.roundtrip_failures.append(("symbol", str(u)))

    words = words_up_to(c, pres.sigma, max_len)
    report.words = len(words)
    groups: dict = {}
    info = {}
    for w in words:
        cls = evaluate(w)
        sym = word_symbol(lf, w)
        info[w] = (cls, sym)
        groups.setdefault(word_ends(c, w), []).append(w)
        back = pres.equal(w, symbol_word(loc, loc.representative(cls)), budget=budget, certify=False)
        if not back or loc.class_of[sym] != cls:
            report.roundtrip_failures.append(("word", format_word(w)))

    witnessed_pairs: dict = {}
    for members in groups.values():
        for i, w1 in enumerate(members):
            cls1, sym1 = info[w1]
            for w2 in members[i + 1 :]:
                cls2, sym2 = info[w2]
                verdict = pres.equal(w1, w2, budget=budget, certify=False)
                report.pairs += 1
                if verdict.method == "bridge":
                    report.equal_by_bridge += 1
                elif verdict:
                    report.equal_by_search += 1
                else:
                    report.distinct += 1
                same = cls1 == cls2
                if (sym1, sym2) not in witnessed_pairs:
                    witnessed_pairs[sym1, sym2] = lf.equiv(sym1, sym2) is not None
                witnessed = witnessed_pairs[sym1, sym2]
                if bool(verdict) != same or same != witnessed:
                    report.mismatches.append((format_word(w1), format_word(w2), verdict.verdict))
    return report


# -- the beyond/under counterexample -------------------------------------------------


@dataclass
class CounterexampleInstance:
    category: FiniteCategory
    sigma: frozenset[str]
    u: Symbol
    v: Symbol
    intermediary: str
    transcript: list[str] = field(default_factory=list)


def _find_pair(lf: LeftFractions) -> tuple[Symbol, Symbol, str] | None:
    """A pair with ``u`` beyond ``v`` but no symbol under both."""
    syms = lf.symbols()
    under_sets = {}
    for w in syms:
        for u in syms:
            if lf.under(w, u) is not None:
                under_sets.setdefault(u, set()).add(w)
    for v in syms:
        for u in syms:
            if u == v:
                continue
            a = lf.beyond(u, v)
            if a is None:
                continue
            if not (under_sets.get(u, set()) & under_sets.get(v, set())):
                return u, v, a
    return None


def _candidates(max_objects: int, max_morphisms: int, seed: int):
    """Thin categories in order of size, then seeded random concrete ones."""
    for n in range(1, max_objects + 1):
        rels = sorted(
            (le for le in preorders(n) if len(le) <= max_morphisms),
            key=lambda le: (len(le), sorted(le)),
        )
        for le in rels:
            c = thin_category(n, le)
            arrows = [f for f in c.order if f not in c.identities]
            for bits in product((0, 1), repeat=len(arrows)):
                yield c, c.identities | {f for f, b in zip(arrows, bits) if b}
    rng = random.Random(seed)
    for _ in range(2_000):
        c = concrete_category(rng, rng.randint(1, max_objects), rng.randint(1, 4), max_morphisms)
        if c is not None:
            for sigma in random_sigmas(c, rng):
                yield c, sigma


def search_beyond_under_counterexample(
    max_objects: int = 4, max_morphisms: int = 12, seed: int = 0
) -> CounterexampleInstance:
    """First ``(c, Σ)`` within bounds satisfying (a)-(d) where some symbol is beyond
    another yet no symbol lies under both."""
    for c, sigma in _candidates(max_objects, max_morphisms, seed):
        if len(c) > max_morphisms:
            continue
        lf = LeftFractions(c, sigma)
        if not lf.check_axioms().ok:
            continue
        found = _find_pair(lf)
        if found is None:
            continue
        u, v, a = found
        inst = CounterexampleInstance(c, frozenset(sigma), u, v, a)
        inst.transcript = verify_counterexample(inst)
        if any(line.startswith("FAIL") for line in inst.transcript):
            raise LocalizationError("counterexample failed re-verification:\n" + "\n".join(inst.transcript))
        return inst
    raise NotFound(f"no counterexample with <= {max_objects} objects and <= {max_morphisms} morphisms")


def verify_counterexample(inst: CounterexampleInstance) -> list[str]:
    """Re-check every claim about the instance from scratch; one line per claim."""
    c, sigma, u, v = inst.category, inst.sigma, inst.u, inst.v
    lf = LeftFractions(c, sigma)
    lines = []

    def claim(ok: bool, text: str):
        lines.append(f"{'ok  ' if ok else 'FAIL'} {text}")

    report = lf.check_axioms()
    for name, r in report.items()[:4]:
        claim(bool(r), f"({name}) holds")
    claim(not report.e, f"(e) fails: {report.e}")
    claim(lf.is_symbol(u) and lf.is_symbol(v), f"u = {u} and v = {v} are symbols")
    a = inst.intermediary
    ok = c.src(a) == lf.vertex(v) and lf.extend(a, v) == u if lf.is_symbol(v) else False
    claim(ok, f"u is beyond v via {a}")
    claim(a not in sigma, f"intermediary {a} is not in sigma")
    witness = lf.equiv(u, v)
    claim(witness is not None, f"u ~ v, witnesses {witness}")
    syms = lf.symbols()
    common = [w for w in syms if lf.under(w, u) is not None and lf.under(w, v) is not None]
    claim(not common, f"no symbol is under both u and v ({len(syms)} symbols checked)")
    trans = _equiv_is_equivalence(lf, syms)
    claim(trans is None, f"equivalence of symbols is an equivalence relation{'' if trans is None else ': ' + str(trans)}")
    claim(not _under_relation_contains_equiv(lf, syms), "sharing a symbol under both is strictly weaker than equivalence")
    return lines


def _equiv_is_equivalence(lf: LeftFractions, syms):
    rel = {(p, q) for p in syms for q in syms if lf.equiv(p, q) is not None}
    for p in syms:
        if (p, p) not in rel:
            return ("reflexivity", p)
    for p, q in rel:
        if (q, p) not in rel:
            return ("symmetry", p, q)
        for r in syms:
            if (q, r) in rel and (p, r) not in rel:
                return ("transitivity", p, q, r)
    return None


def _under_relation_contains_equiv(lf: LeftFractions, syms) -> bool:
    for p in syms:
        for q in syms:
            if lf.equiv(p, q) is not None and lf.common_under(p, q) is None:
                return False
    return True
