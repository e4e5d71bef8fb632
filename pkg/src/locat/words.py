"""Localization by zigzag words.

A morphism of the localization is represented by a path in the graph whose
edges are every morphism of ``c`` (forward) plus every member of Σ reversed
(backward). Words are identified by the congruence generated by four families
of ground relations:

1. ``[1_x]`` ~ the empty word at ``x``;
2. ``[~q, q]`` ~ the empty word at the target of ``q``;
3. ``[q, ~q]`` ~ the empty word at the source of ``q``;
4. ``[a, b]`` ~ ``[b∘a]`` for composable ``a`` then ``b``.

Word syntax: tokens joined by ``.`` and read left to right, a backward token
prefixed with ``~``, the empty word at ``x`` written ``@x``.

Equality is only semi-decided by search in general. When (a)-(d) hold the
fraction category gives an exact answer, which :class:`LocalizedPresentation`
uses to refute equalities and, as a last resort, to settle them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, NamedTuple

from .category import (
    FiniteCategory,
    Functor,
    LocalizationError,
    close_sigma,
    find_inverse,
    is_groupoid,
    loc_compatible,
)
from .fractions import (
    FractionLocalization,
    NotLocCompatible,
    build_fraction_category,
    check_left_fraction_axioms,
)
from .freecat import DirectedGraph, FreeCategory, Path

DEFAULT_BUDGET = 50_000
LENGTH_SLACK = 4


class RequiresFractions(LocalizationError):
    pass


class WordSyntaxError(LocalizationError, ValueError):
    pass


class Token(NamedTuple):
    mor: str
    backward: bool = False

    def __str__(self) -> str:
        return f"~{self.mor}" if self.backward else self.mor


def fwd(f: str) -> Token:
    return Token(f, False)


def bwd(q: str) -> Token:
    return Token(q, True)


def word(at: str, *tokens: Token) -> Path:
    return Path(at, tuple(tokens))


class RelationInstance(NamedTuple):
    family: int
    at: str
    lhs: tuple
    rhs: tuple

    def __str__(self) -> str:
        show = lambda side: ".".join(map(str, side)) or f"@{self.at}"  # noqa: E731
        return f"[{self.family}] {show(self.lhs)} ~ {show(self.rhs)}"


class RewriteStep(NamedTuple):
    """Replace ``instance.lhs`` by ``instance.rhs`` at ``position`` (or the reverse)."""

    before: Path
    after: Path
    position: int
    instance: RelationInstance
    reducing: bool

    def reversed(self) -> "RewriteStep":
        return RewriteStep(self.after, self.before, self.position, self.instance, not self.reducing)

    def __str__(self) -> str:
        lhs, rhs = self.instance.lhs, self.instance.rhs
        if not self.reducing:
            lhs, rhs = rhs, lhs
        show = lambda side: ".".join(map(str, side)) or "()"  # noqa: E731
        return (
            f"{format_word(self.before)} => {format_word(self.after)}"
            f"  (family {self.instance.family}: {show(lhs)} -> {show(rhs)} at {self.position})"
        )


def format_word(w: Path) -> str:
    return ".".join(map(str, w.edges)) if w.edges else f"@{w.at}"


_IDENT = re.compile(r"[A-Za-z0-9_]+")


def parse_word(c: FiniteCategory, sigma, text: str) -> Path:
    text = text.strip()
    if text.startswith("@"):
        at = text[1:]
        if at not in c.identity:
            raise WordSyntaxError(f"unknown object {at!r}")
        return Path(at, ())
    tokens = []
    for part in text.split("."):
        part = part.strip()
        back = part.startswith("~")
        name = part[1:] if back else part
        if not _IDENT.fullmatch(name or ""):
            raise WordSyntaxError(f"bad token {part!r}")
        if name not in c.morphisms:
            raise WordSyntaxError(f"unknown morphism {name!r}")
        if back and name not in sigma:
            raise WordSyntaxError(f"backward token {part!r} needs {name} in sigma")
        tokens.append(Token(name, back))
    first = tokens[0]
    at = c.tgt(first.mor) if first.backward else c.src(first.mor)
    w = Path(at, tuple(tokens))
    if not is_word(c, sigma, w):
        raise WordSyntaxError(f"tokens of {text!r} are not composable")
    return w


def token_ends(c: FiniteCategory, tok: Token) -> tuple[str, str]:
    x, y = c.morphisms[tok.mor]
    return (y, x) if tok.backward else (x, y)


def is_word(c: FiniteCategory, sigma, w: Path) -> bool:
    if w.at not in c.identity:
        return False
    here = w.at
    for tok in w.edges:
        if tok.mor not in c.morphisms or (tok.backward and tok.mor not in sigma):
            return False
        x, y = token_ends(c, tok)
        if x != here:
            return False
        here = y
    return True


def word_ends(c: FiniteCategory, w: Path) -> tuple[str, str]:
    here = w.at
    for tok in w.edges:
        here = token_ends(c, tok)[1]
    return w.at, here


def gz_graph(c: FiniteCategory, sigma) -> DirectedGraph:
    edges = {fwd(f): c.morphisms[f] for f in c.order}
    for q in sorted(sigma):
        x, y = c.morphisms[q]
        edges[bwd(q)] = (y, x)
    return DirectedGraph(frozenset(c.objects), edges)


def gz_relation_instances(c: FiniteCategory, sigma) -> list[RelationInstance]:
    out = []
    for x in c.objects:
        out.append(RelationInstance(1, x, (fwd(c.identity[x]),), ()))
    for q in sorted(sigma):
        out.append(RelationInstance(2, c.tgt(q), (bwd(q), fwd(q)), ()))
    for q in sorted(sigma):
        out.append(RelationInstance(3, c.src(q), (fwd(q), bwd(q)), ()))
    for b, a in sorted(c.composable_pairs(), key=lambda p: (p[1], p[0])):
        out.append(RelationInstance(4, c.src(a), (fwd(a), fwd(b)), (fwd(c.comp[b, a]),)))
    return out


def words_up_to(c: FiniteCategory, sigma, max_len: int) -> list[Path]:
    free = FreeCategory(gz_graph(c, sigma))
    return [p for x in c.objects for p in free.paths_from(x, max_len)]


def _splice(w: Path, pos: int, old_len: int, new: tuple) -> Path:
    t = w.edges
    return Path(w.at, t[:pos] + new + t[pos + old_len :])


def check_certificate(c: FiniteCategory, sigma, w1: Path, w2: Path, steps) -> bool:
    """Replay a rewrite chain from ``w1`` to ``w2`` against the relation families."""
    current = w1
    for step in steps:
        if step.before != current:
            return False
        inst = step.instance
        if not _is_ground_instance(c, sigma, inst):
            return False
        old, new = (inst.lhs, inst.rhs) if step.reducing else (inst.rhs, inst.lhs)
        toks = current.edges
        if toks[step.position : step.position + len(old)] != old:
            return False
        here = current.at
        for tok in toks[: step.position]:
            here = token_ends(c, tok)[1]
        if here != inst.at:
            return False
        current = _splice(current, step.position, len(old), new)
        if current != step.after or not is_word(c, sigma, current):
            return False
    return current == w2


def _is_ground_instance(c: FiniteCategory, sigma, inst: RelationInstance) -> bool:
    fam, x, lhs, rhs = inst
    if fam == 1:
        return lhs == (fwd(c.identity[x]),) and rhs == ()
    if fam in (2, 3):
        if len(lhs) != 2 or rhs != () or lhs[0].mor != lhs[1].mor or lhs[0].mor not in sigma:
            return False
        q = lhs[0].mor
        if fam == 2:
            return lhs == (bwd(q), fwd(q)) and c.tgt(q) == x
        return lhs == (fwd(q), bwd(q)) and c.src(q) == x
    if fam == 4:
        if len(lhs) != 2 or len(rhs) != 1 or any(t.backward for t in lhs + rhs):
            return False
        a, b = lhs[0].mor, lhs[1].mor
        return c.src(a) == x and c.tgt(a) == c.src(b) and c.comp[b, a] == rhs[0].mor
    return False


@dataclass
class WordVerdict:
    verdict: str  # "Equal", "Distinct" or "NotProvenEqual"
    method: str
    certificate: list | None = None
    budget_exhausted: bool = False
    note: str = ""

    def __bool__(self) -> bool:
        return self.verdict == "Equal"


class _ProofForest:
    """Union-find whose merges remember the rewrite that justified them."""

    def __init__(self):
        self.parent: dict = {}
        self.link: dict = {}  # node -> (neighbour, step from node to neighbour)

    def __contains__(self, node) -> bool:
        return node in self.parent

    def add(self, node) -> None:
        if node not in self.parent:
            self.parent[node] = node
            self.link[node] = None

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, step: RewriteStep) -> None:
        a, b = step.before, step.after
        self.add(a)
        self.add(b)
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        self._reroot(a)
        self.link[a] = (b, step)
        self.parent[ra] = rb

    def _reroot(self, node) -> None:
        prev, prev_step = None, None
        while node is not None:
            nxt = self.link[node]
            self.link[node] = (prev, prev_step) if prev is not None else None
            if nxt is None:
                break
            prev, prev_step = node, nxt[1].reversed()
            node = nxt[0]

    def _ancestors(self, node) -> list:
        out = [node]
        while self.link[node] is not None:
            node = self.link[node][0]
            out.append(node)
        return out

    def explain(self, a, b) -> list[RewriteStep]:
        up_a = self._ancestors(a)
        up_b = self._ancestors(b)
        in_b = {n: i for i, n in enumerate(up_b)}
        i = next(i for i, n in enumerate(up_a) if n in in_b)
        lca = up_a[i]
        steps = [self.link[n][1] for n in up_a[:i]]
        tail = [self.link[n][1].reversed() for n in up_b[: in_b[lca]]]
        return steps + tail[::-1]


class LocalizedPresentation:
    """The localization of ``c`` at ``sigma`` by zigzag words, with an equality prover.

    Proven equalities accumulate, so repeated queries against the same
    presentation get cheaper.
    """

    def __init__(self, c: FiniteCategory, sigma, *, use_fractions: bool = True):
        self.c = c
        self.sigma = frozenset(sigma)
        self.use_fractions = use_fractions
        self.forest = _ProofForest()
        self._failed: set = set()
        self._checked: dict = {}
        self._reduced: dict = {}
        self._inserts: dict = {x: [] for x in c.objects}
        self._pairs: dict = {}
        self._splits: dict = {}
        for inst in gz_relation_instances(c, self.sigma):
            if inst.rhs == ():
                if len(inst.lhs) == 2:
                    self._pairs[inst.lhs] = inst
                self._inserts[inst.at].append(inst)
            else:
                self._pairs[inst.lhs] = inst
                self._splits.setdefault(inst.rhs[0], []).append(inst)
        self._identity_instance = {
            fwd(c.identity[x]): RelationInstance(1, x, (fwd(c.identity[x]),), ())
            for x in c.objects
        }

    @cached_property
    def graph(self) -> DirectedGraph:
        return gz_graph(self.c, self.sigma)

    @cached_property
    def fractions(self) -> FractionLocalization | None:
        """Fraction category at the closure of sigma under identities and composites.

        Inverting sigma inverts its closure too, so this is the same
        localization; None when the closure fails (a)-(d).
        """
        closed = close_sigma(self.c, self.sigma)
        if not self.use_fractions or not check_left_fraction_axioms(self.c, closed):
            return None
        return build_fraction_category(self.c, closed)

    @cached_property
    def bridge(self) -> Callable[[Path], str] | None:
        """Evaluator from words to fraction classes, when available."""
        loc = self.fractions
        if loc is None:
            return None
        return gz_dotted(self.c, self.sigma, loc.projection)

    def objects_along(self, w: Path) -> list[str]:
        out = [w.at]
        for tok in w.edges:
            out.append(token_ends(self.c, tok)[1])
        return out

    # -- rewriting ------------------------------------------------------------

    def _reduction_at(self, w: Path, i: int) -> RewriteStep | None:
        toks = w.edges
        inst = self._identity_instance.get(toks[i])
        if inst is not None:
            return RewriteStep(w, _splice(w, i, 1, ()), i, inst, True)
        if i + 1 < len(toks):
            inst = self._pairs.get(toks[i : i + 2])
            if inst is not None:
                return RewriteStep(w, _splice(w, i, 2, inst.rhs), i, inst, True)
        return None

    def reduce(self, w: Path, *, rightmost: bool = False) -> tuple[Path, list[RewriteStep]]:
        steps = []
        while True:
            positions = range(len(w.edges))
            if rightmost:
                positions = reversed(positions)
            for i in positions:
                step = self._reduction_at(w, i)
                if step is not None:
                    steps.append(step)
                    w = step.after
                    break
            else:
                return w, steps

    def neighbours(self, w: Path, cap: int) -> Iterator[RewriteStep]:
        toks = w.edges
        n = len(toks)
        for i in range(n):
            inst = self._identity_instance.get(toks[i])
            if inst is not None:
                yield RewriteStep(w, _splice(w, i, 1, ()), i, inst, True)
            if i + 1 < n:
                inst = self._pairs.get(toks[i : i + 2])
                if inst is not None:
                    yield RewriteStep(w, _splice(w, i, 2, inst.rhs), i, inst, True)
        if n + 1 <= cap:
            for i, tok in enumerate(toks):
                for inst in self._splits.get(tok, ()):
                    yield RewriteStep(w, _splice(w, i, 1, inst.lhs), i, inst, False)
        objs = self.objects_along(w)
        for i in range(n + 1):
            for inst in self._inserts[objs[i]]:
                if n + len(inst.lhs) <= cap:
                    yield RewriteStep(w, _splice(w, i, 0, inst.lhs), i, inst, False)

    def _reduced_form(self, w: Path) -> Path:
        r = self._reduced.get(w)
        if r is None:
            r, steps = self.reduce(w)
            for step in steps:
                self.forest.union(step)
            self.forest.add(w)
            self._reduced[w] = r
        return r

    def _search(self, a: Path, b: Path, cap: int, budget: int, keep_len: int) -> bool:
        """Bidirectional breadth-first search; merges what it learns into the forest."""
        forest = self.forest
        root = {0: forest.find(a), 1: forest.find(b)}
        seen = ({a: None}, {b: None})
        frontier = ([a], [b])
        visited = 2
        met = None
        while frontier[0] and frontier[1] and met is None:
            side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
            other = 1 - side
            nxt = []
            for node in frontier[side]:
                for step in self.neighbours(node, cap):
                    m = step.after
                    if m in seen[side]:
                        continue
                    seen[side][m] = step
                    visited += 1
                    if m in seen[other] or (m in forest and forest.find(m) == root[other]):
                        met = m
                        break
                    nxt.append(m)
                    if visited >= budget:
                        break
                if met is not None or visited >= budget:
                    break
            frontier[side][:] = nxt if met is None else []
            if visited >= budget:
                break
        for side in (0, 1):
            keep = [m for m in seen[side] if len(m.edges) <= keep_len]
            if met in seen[side]:
                keep.append(met)
            linked = set()
            for node in keep:
                while node not in linked and seen[side][node] is not None:
                    linked.add(node)
                    step = seen[side][node]
                    forest.union(step)
                    node = step.before
        return met is not None

    # -- queries ----------------------------------------------------------------

    def _ends(self, w: Path) -> tuple[str, str] | None:
        if w not in self._checked:
            ok = is_word(self.c, self.sigma, w)
            self._checked[w] = word_ends(self.c, w) if ok else None
        return self._checked[w]

    def equal(
        self, w1: Path, w2: Path, *, budget: int = DEFAULT_BUDGET, certify: bool = True
    ) -> WordVerdict:
        e1, e2 = self._ends(w1), self._ends(w2)
        if e1 is None or e2 is None:
            return WordVerdict("NotProvenEqual", "invalid", note="not a word")
        if e1 != e2:
            return WordVerdict("NotProvenEqual", "mismatch", note="endpoints differ")
        if w1 == w2:
            return WordVerdict("Equal", "reflexive", [])
        r1, r2 = self._reduced_form(w1), self._reduced_form(w2)
        forest = self.forest

        def proved(method):
            cert = forest.explain(w1, w2) if certify else None
            return WordVerdict("Equal", method, cert)

        if forest.find(r1) == forest.find(r2):
            return proved("bfs")
        bridge = self.bridge
        if bridge is not None and bridge(r1) != bridge(r2):
            return WordVerdict("Distinct", "separated", note="fraction classes differ")
        key = frozenset((forest.find(r1), forest.find(r2)))
        if key not in self._failed:
            cap = max(len(w1.edges), len(w2.edges)) + LENGTH_SLACK
            keep = max(len(r1.edges), len(r2.edges))
            if self._search(r1, r2, cap, budget, keep):
                return proved("bfs")
            self._failed.add(frozenset((forest.find(r1), forest.find(r2))))
        if bridge is not None:
            return WordVerdict("Equal", "bridge", None, budget_exhausted=True)
        return WordVerdict("NotProvenEqual", "budget", None, budget_exhausted=True)


def reduce_word(c: FiniteCategory, sigma, w: Path, *, rightmost: bool = False) -> Path:
    return LocalizedPresentation(c, sigma, use_fractions=False).reduce(w, rightmost=rightmost)[0]


def words_equal(
    c: FiniteCategory, sigma, w1: Path, w2: Path, budget: int = DEFAULT_BUDGET
) -> WordVerdict:
    return LocalizedPresentation(c, sigma).equal(w1, w2, budget=budget)


@dataclass
class GzProjection:
    """``u`` goes to the one-token word ``[u]``; identities go to empty words."""

    c: FiniteCategory

    def __call__(self, u: str) -> Path:
        x, _ = self.c.morphisms[u]
        if u in self.c.identities:
            return Path(x, ())
        return Path(x, (fwd(u),))


def gz_proj(c: FiniteCategory, sigma=frozenset()) -> GzProjection:
    return GzProjection(c)


@dataclass
class WordEvaluator:
    """Functor out of the word localization given by images of the tokens."""

    functor: Functor
    token_image: dict = field(default_factory=dict)

    def __call__(self, w: Path) -> str:
        x = self.functor.target
        result = x.identity[self.functor.ob_map[w.at]]
        for tok in w.edges:
            result = x.comp[self.token_image[tok], result]
        return result


def gz_dotted(c: FiniteCategory, sigma, F: Functor) -> WordEvaluator:
    report = loc_compatible(F, sigma)
    if not report:
        raise NotLocCompatible(str(report))
    images = {fwd(f): F.mor_map[f] for f in c.order}
    for q in sorted(sigma):
        images[bwd(q)] = find_inverse(F.target, F.mor_map[q])
    return WordEvaluator(F, images)


def saturation(c: FiniteCategory, sigma) -> frozenset[str]:
    """Morphisms that become invertible in the localization (needs (a)-(d))."""
    report = check_left_fraction_axioms(c, sigma)
    if not report:
        raise RequiresFractions(report.summary())
    loc = build_fraction_category(c, sigma)
    P = loc.projection
    return frozenset(f for f in c.order if find_inverse(loc.category, P.mor_map[f]) is not None)


def groupoid_completion(c: FiniteCategory) -> tuple[FiniteCategory, Functor]:
    sigma = frozenset(c.morphisms)
    report = check_left_fraction_axioms(c, sigma)
    if not report:
        raise RequiresFractions(report.summary())
    loc = build_fraction_category(c, sigma)
    check = is_groupoid(loc.category)
    if not check:
        raise LocalizationError(f"completion is not a groupoid: {check}")
    return loc.category, loc.projection
