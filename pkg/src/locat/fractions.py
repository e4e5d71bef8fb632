"""Calculus of left fractions on a finite category.

A left fraction symbol ``(t, f)`` is a cospan ``x --f--> y <--t-- z`` with ``t``
in Σ, standing for ``t⁻¹∘f``. Its *vertex* is ``y``, its source ``x`` and its
target ``z``. Symbol ``far`` is *beyond* ``near`` when some intermediary ``a``
out of the vertex of ``near`` gives ``far = (a∘t, a∘f)``; it is *under*
``near`` when such an ``a`` can be chosen in Σ.

Two symbols are equivalent when a third symbol is beyond both. The
intermediaries are deliberately not required to lie in Σ: without the
three-for-two property that stronger relation fails to be transitive.

All searches are exhaustive over the (finite) morphism set and break ties by
a fixed total order on morphism names, so every choice made here is
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .category import (
    PASS,
    FiniteCategory,
    Functor,
    LocalizationError,
    NotComposable,
    Report,
    check_functor,
    find_inverse,
    loc_compatible,
    opposite,
    validate_category,
)
from .quotient import associating_quotient, relation


class NotASymbol(LocalizationError):
    pass


class NoSquare(LocalizationError):
    pass


class NoWitness(LocalizationError):
    pass


class NotLocCompatible(LocalizationError):
    pass


class RepresentativeDisagreement(LocalizationError):
    pass


class AxiomsFail(LocalizationError):
    def __init__(self, report: "AxiomReport"):
        super().__init__(report.summary())
        self.report = report


class Symbol(NamedTuple):
    fwd: str
    bwd: str

    def __str__(self) -> str:
        return f"{self.fwd} / {self.bwd}"


class Square(NamedTuple):
    """A fill-in for the cospan ``(sig, u)``: ``right∘u == bottom∘sig`` with ``right`` in Σ."""

    bottom: str
    right: str


@dataclass(frozen=True)
class AxiomReport:
    a: Report
    b: Report
    c: Report
    d: Report
    e: Report

    @property
    def ok(self) -> bool:
        """Conditions (a)-(d); three-for-two is reported but not required."""
        return bool(self.a and self.b and self.c and self.d)

    def __bool__(self) -> bool:
        return self.ok

    def items(self):
        return [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d), ("e", self.e)]

    def summary(self) -> str:
        return "; ".join(f"({k}) {v}" for k, v in self.items())


class LeftFractions:
    """Left-fraction machinery for a fixed ``(c, sigma)`` and tie-break order."""

    def __init__(self, c: FiniteCategory, sigma: Iterable[str], order: Sequence[str] | None = None):
        self.c = c
        self.sigma = frozenset(sigma)
        order = tuple(order) if order is not None else c.order
        if sorted(order) != sorted(c.morphisms):
            raise ValueError("order must list every morphism exactly once")
        self.rank = {f: i for i, f in enumerate(order)}
        self._out = {
            x: tuple(sorted(c.out_of(x), key=self.rank.__getitem__)) for x in c.objects
        }
        self._squares: dict = {}

    # -- basic bookkeeping -------------------------------------------------

    def out_of(self, x: str) -> tuple[str, ...]:
        return self._out[x]

    def vertex(self, u: Symbol) -> str:
        return self.c.tgt(u.fwd)

    def source(self, u: Symbol) -> str:
        return self.c.src(u.fwd)

    def target(self, u: Symbol) -> str:
        return self.c.src(u.bwd)

    def ends(self, u: Symbol) -> tuple[str, str]:
        return self.source(u), self.target(u)

    def is_symbol(self, u: Symbol) -> bool:
        m = self.c.morphisms
        return u.fwd in m and u.bwd in self.sigma and m[u.fwd][1] == m[u.bwd][1]

    def key(self, u: Symbol) -> tuple[int, int]:
        return self.rank[u.bwd], self.rank[u.fwd]

    def identity_symbol(self, x: str) -> Symbol:
        i = self.c.identity[x]
        return Symbol(i, i)

    def symbols(self) -> list[Symbol]:
        c = self.c
        out = []
        for y in c.objects:
            for t in c.into(y):
                if t in self.sigma:
                    out.extend(Symbol(f, t) for f in c.into(y))
        return sorted(out, key=self.key)

    def _comp(self, g: str, f: str) -> str:
        return self.c.comp[g, f]

    # -- extension, beyond, under, equivalence ----------------------------

    def extend(self, p: str, u: Symbol) -> Symbol:
        if self.c.src(p) != self.vertex(u):
            raise NotComposable(f"{p} does not start at the vertex of {u}")
        bwd = self._comp(p, u.bwd)
        if bwd not in self.sigma:
            raise NotASymbol(f"{p}∘{u.bwd} = {bwd} is not in Σ")
        return Symbol(self._comp(p, u.fwd), bwd)

    def beyond(self, far: Symbol, near: Symbol, *, in_sigma: bool = False) -> str | None:
        """The least intermediary from ``near`` to ``far``, or None."""
        if self.ends(far) != self.ends(near):
            return None
        v = self.vertex(far)
        for a in self.out_of(self.vertex(near)):
            if self.c.tgt(a) != v or (in_sigma and a not in self.sigma):
                continue
            if self._comp(a, near.fwd) == far.fwd and self._comp(a, near.bwd) == far.bwd:
                return a
        return None

    def under(self, far: Symbol, near: Symbol) -> str | None:
        return self.beyond(far, near, in_sigma=True)

    def equiv(self, u: Symbol, v: Symbol) -> tuple[str, str] | None:
        """Least ``(a, b)`` with ``a∘u.fwd == b∘v.fwd`` and ``a∘u.bwd == b∘v.bwd`` in Σ."""
        if self.ends(u) != self.ends(v):
            return None
        c = self.c
        for a in self.out_of(self.vertex(u)):
            at = self._comp(a, u.bwd)
            if at not in self.sigma:
                continue
            af = self._comp(a, u.fwd)
            w = c.tgt(a)
            for b in self.out_of(self.vertex(v)):
                if c.tgt(b) == w and self._comp(b, v.bwd) == at and self._comp(b, v.fwd) == af:
                    return a, b
        return None

    def equiv_via_beyond(self, u: Symbol, v: Symbol) -> Symbol | None:
        """A symbol beyond both ``u`` and ``v``, found by scanning all symbols."""
        for w in self.symbols():
            if self.beyond(w, u) is not None and self.beyond(w, v) is not None:
                return w
        return None

    def common_under(self, u: Symbol, v: Symbol) -> Symbol | None:
        for w in self.symbols():
            if self.under(w, u) is not None and self.under(w, v) is not None:
                return w
        return None

    # -- fill-in squares and composition ----------------------------------

    def fill_in_squares(self, sig: str, u: str) -> list[Square]:
        """Every square completing the cospan ``(sig, u)``, least ``(right, bottom)`` first."""
        c = self.c
        if c.src(sig) != c.src(u):
            raise NotComposable(f"{sig} and {u} do not share a source")
        top = self.out_of(c.tgt(sig))
        out = []
        for right in self.out_of(c.tgt(u)):
            if right not in self.sigma:
                continue
            ru = self._comp(right, u)
            w = c.tgt(right)
            for bottom in top:
                if c.tgt(bottom) == w and self._comp(bottom, sig) == ru:
                    out.append(Square(bottom, right))
        return sorted(out, key=lambda sq: (self.rank[sq.right], self.rank[sq.bottom]))

    def fill_in_square(self, sig: str, u: str) -> Square:
        key = (sig, u)
        if key not in self._squares:
            squares = self.fill_in_squares(sig, u)
            self._squares[key] = squares[0] if squares else None
        sq = self._squares[key]
        if sq is None:
            raise NoSquare(f"no commutative square completes ({sig}, {u})")
        return sq

    def compose_with(self, s1: Symbol, s2: Symbol, sq: Square) -> Symbol:
        """``s2∘s1`` using the given fill-in of the middle cospan."""
        return Symbol(self._comp(sq.bottom, s1.fwd), self._comp(sq.right, s2.bwd))

    def compose(self, s1: Symbol, s2: Symbol) -> Symbol:
        """``s1`` followed by ``s2``, via the canonical fill-in square."""
        if self.target(s1) != self.source(s2):
            raise NotComposable(f"{s1} then {s2}")
        return self.compose_with(s1, s2, self.fill_in_square(s1.bwd, s2.fwd))

    # -- from beyond to under ----------------------------------------------

    def left_equalizer(self, f: str, g: str) -> str | None:
        """Least ``t`` in Σ with ``t∘f == t∘g``."""
        for t in self.out_of(self.c.tgt(f)):
            if t in self.sigma and self._comp(t, f) == self._comp(t, g):
                return t
        return None

    def weak_three_for_two_witness(self, sig: str, a: str) -> str:
        """Given ``sig`` and ``a∘sig`` in Σ, some ``b`` with ``b∘a`` in Σ.

        Follows the constructive route: complete the cospan ``(a∘sig, sig)`` to a
        square ``x∘(a∘sig) == t∘sig`` with ``t`` in Σ, then left-equalize
        ``x∘a`` and ``t`` by some ``e`` in Σ and take ``b = e∘x``.
        """
        c = self.c
        r = self._comp(a, sig)
        if sig not in self.sigma or r not in self.sigma:
            raise NoWitness(f"need {sig} and {a}∘{sig} in Σ")
        try:
            x, t = self.fill_in_square(r, sig)
            xa = self._comp(x, a)
            e = c.identity[c.tgt(t)] if xa == t else self.left_equalizer(xa, t)
            if e is not None:
                b = self._comp(e, x)
                if self._comp(b, a) in self.sigma:
                    return b
        except NoSquare:
            pass
        for b in self.out_of(c.tgt(a)):
            if self._comp(b, a) in self.sigma:
                return b
        raise NoWitness(f"no b with b∘{a} in Σ")

    def _under_via(self, base: Symbol, beyond_sym: Symbol) -> tuple[Symbol, str, str]:
        a = self.beyond(beyond_sym, base)
        if a is None:
            raise ValueError(f"{beyond_sym} is not beyond {base}")
        b = self.weak_three_for_two_witness(base.bwd, a)
        return self.extend(b, beyond_sym), b, self._comp(b, a)

    def exists_lf_under(self, base: Symbol, beyond_sym: Symbol) -> Symbol:
        """A symbol beyond ``beyond_sym`` and under ``base``."""
        return self._under_via(base, beyond_sym)[0]

    def exists_lf_further(self, base: Symbol, x: Symbol, y: Symbol) -> Symbol:
        """A symbol beyond both ``x`` and ``y``, which are both beyond ``base``."""
        if x == y:
            return x
        x2, _, ba = self._under_via(base, x)
        by = self.beyond(y, base)
        if by is None:
            raise ValueError(f"{y} is not beyond {base}")
        bottom, _ = self.fill_in_square(ba, by)
        return self.extend(bottom, x2)

    # -- axioms -------------------------------------------------------------

    def check_axioms(self) -> AxiomReport:
        return AxiomReport(
            self._check_a(), self._check_b(), self._check_c(), self._check_d(), self.check_e()
        )

    def _check_a(self) -> Report:
        for x in self.c.objects:
            if self.c.identity[x] not in self.sigma:
                return Report(False, "MissingIdentity", (x,))
        return PASS

    def _check_b(self) -> Report:
        for g, f in self.c.composable_pairs():
            if f in self.sigma and g in self.sigma and self._comp(g, f) not in self.sigma:
                return Report(False, "NotClosed", (g, f))
        return PASS

    def _check_c(self) -> Report:
        c = self.c
        for sig in sorted(self.sigma, key=self.rank.__getitem__):
            for u in self.out_of(c.src(sig)):
                if not self.fill_in_squares(sig, u):
                    return Report(False, "NoSquare", (sig, u))
        return PASS

    def _check_d(self) -> Report:
        c = self.c
        for f in c.order:
            x, y = c.morphisms[f]
            for g in c.hom(x, y):
                if g <= f:
                    continue
                s = next(
                    (s for s in c.into(x) if s in self.sigma and c.comp[f, s] == c.comp[g, s]),
                    None,
                )
                if s is not None and self.left_equalizer(f, g) is None:
                    return Report(False, "NoLeftEqualizer", (f, g, s))
        return PASS

    def check_e(self) -> Report:
        for g, f in self.c.composable_pairs():
            gf = self._comp(g, f)
            inside = (f in self.sigma, g in self.sigma, gf in self.sigma)
            if sum(inside) == 2:
                return Report(False, "ThreeForTwo", (g, f))
        return PASS


# -- wrappers taking (c, sigma) ------------------------------------------


def check_left_fraction_axioms(c: FiniteCategory, sigma) -> AxiomReport:
    return LeftFractions(c, sigma).check_axioms()


def check_three_for_two(c: FiniteCategory, sigma) -> Report:
    return LeftFractions(c, sigma).check_e()


def lf_extend(c, sigma, p: str, sym: Symbol) -> Symbol:
    return LeftFractions(c, sigma).extend(p, sym)


def lf_beyond(c, sigma, far: Symbol, near: Symbol) -> str | None:
    return LeftFractions(c, sigma).beyond(far, near)


def lf_under(c, sigma, far: Symbol, near: Symbol) -> str | None:
    return LeftFractions(c, sigma).under(far, near)


def lf_equiv(c, sigma, u: Symbol, v: Symbol) -> tuple[str, str] | None:
    return LeftFractions(c, sigma).equiv(u, v)


def weak_three_for_two_witness(c, sigma, sig: str, a: str) -> str:
    return LeftFractions(c, sigma).weak_three_for_two_witness(sig, a)


def exists_lf_under(c, sigma, base: Symbol, beyond_sym: Symbol) -> Symbol:
    return LeftFractions(c, sigma).exists_lf_under(base, beyond_sym)


def exists_lf_further(c, sigma, base: Symbol, x: Symbol, y: Symbol) -> Symbol:
    return LeftFractions(c, sigma).exists_lf_further(base, x, y)


def fill_in_square(c, sigma, sig: str, u: str) -> Square:
    return LeftFractions(c, sigma).fill_in_square(sig, u)


def compose_symbols(c, sigma, s1: Symbol, s2: Symbol) -> Symbol:
    return LeftFractions(c, sigma).compose(s1, s2)


# -- the fraction category -------------------------------------------------


@dataclass
class FractionLocalization:
    """The category of left fractions together with its projection."""

    base: FiniteCategory
    sigma: frozenset[str]
    fractions: LeftFractions
    category: FiniteCategory
    projection: Functor
    inverses: dict[str, str]
    class_of: dict[Symbol, str]
    members: dict[str, list[Symbol]] = field(default_factory=dict)

    def representative(self, cls: str) -> Symbol:
        return self.members[cls][0]

    def symbol_class(self, u: Symbol) -> str:
        return self.class_of[u]


def raw_precategory(lf: LeftFractions) -> FiniteCategory:
    """Symbols with the fill-in composition: neither associative nor unital on the nose."""
    c = lf.c
    syms = lf.symbols()
    morphisms = {u: lf.ends(u) for u in syms}
    by_source: dict = {}
    for u in syms:
        by_source.setdefault(lf.source(u), []).append(u)
    comp = {}
    for s1 in syms:
        for s2 in by_source.get(lf.target(s1), ()):
            comp[s2, s1] = lf.compose(s1, s2)
    identity = {x: lf.identity_symbol(x) for x in c.objects}
    return FiniteCategory(c.objects, morphisms, identity, comp)


def equivalence_pairs(lf: LeftFractions) -> set[tuple[Symbol, Symbol]]:
    groups: dict = {}
    for u in lf.symbols():
        groups.setdefault(lf.ends(u), []).append(u)
    pairs = set()
    for members in groups.values():
        for i, u in enumerate(members):
            pairs.add((u, u))
            for v in members[i + 1 :]:
                if lf.equiv(u, v) is not None:
                    pairs.add((u, v))
                    pairs.add((v, u))
    return pairs


def _class_namer(lf: LeftFractions):
    c = lf.c
    used = set(c.identity.values())

    def namer(members: list[Symbol]) -> str:
        for x in c.objects:
            if lf.identity_symbol(x) in members:
                return c.identity[x]
        rep = members[0]
        name = rep.fwd if rep.bwd in c.identities else f"{rep.fwd}_over_{rep.bwd}"
        base, k = name, 1
        while name in used:
            name = f"{base}_{k}"
            k += 1
        used.add(name)
        return name

    return namer


def build_fraction_category(
    c: FiniteCategory, sigma, order: Sequence[str] | None = None
) -> FractionLocalization:
    lf = LeftFractions(c, sigma, order)
    report = lf.check_axioms()
    if not report:
        raise AxiomsFail(report)
    pre = raw_precategory(lf)
    rel = relation(pre, equivalence_pairs(lf))
    category, class_of = associating_quotient(pre, rel, key=lf.key, namer=_class_namer(lf))
    members: dict = {}
    for u in sorted(class_of, key=lf.key):
        members.setdefault(class_of[u], []).append(u)

    ids = c.identity
    projection = Functor(
        c,
        category,
        {x: x for x in c.objects},
        {f: class_of[Symbol(f, ids[c.tgt(f)])] for f in c.order},
    )
    inverses = {q: class_of[Symbol(ids[c.tgt(q)], q)] for q in sorted(lf.sigma)}
    loc = FractionLocalization(c, lf.sigma, lf, category, projection, inverses, class_of, members)
    _self_check(loc)
    return loc


def _self_check(loc: FractionLocalization) -> None:
    cat = loc.category
    for what, report in (
        ("category", validate_category(cat)),
        ("projection", check_functor(loc.projection)),
    ):
        if not report:
            raise RepresentativeDisagreement(f"{what}: {report}")
    for q, inv in loc.inverses.items():
        pq = loc.projection.mor_map[q]
        x, y = loc.base.morphisms[q]
        if cat.comp[inv, pq] != cat.identity[x] or cat.comp[pq, inv] != cat.identity[y]:
            raise RepresentativeDisagreement(f"inverse of {q}")


def fraction_dotted(loc: FractionLocalization, F: Functor) -> Functor:
    """The functor ``G`` out of the fraction category with ``G∘P == F``.

    ``G`` sends the class of ``(t, f)`` to ``F(t)⁻¹∘F(f)``; every member of a
    class is evaluated and must agree.
    """
    report = loc_compatible(F, loc.sigma)
    if not report:
        raise NotLocCompatible(str(report))
    x = F.target
    inverse = {t: find_inverse(x, F.mor_map[t]) for t in loc.sigma}
    mor_map = {}
    for cls, syms in loc.members.items():
        for u in syms:
            value = x.comp[inverse[u.bwd], F.mor_map[u.fwd]]
            if mor_map.setdefault(cls, value) != value:
                raise RepresentativeDisagreement(f"{cls}: {syms[0]} vs {u}")
    return Functor(loc.category, x, dict(F.ob_map), mor_map)


def build_right_fraction_category(c: FiniteCategory, sigma) -> tuple[FiniteCategory, Functor]:
    op_c, op_sigma = opposite(c, frozenset(sigma))
    loc = build_fraction_category(op_c, op_sigma)
    category, _ = opposite(loc.category)
    projection = Functor(c, category, dict(loc.projection.ob_map), dict(loc.projection.mor_map))
    return category, projection
