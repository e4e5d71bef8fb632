"""Command-line entry point: ``locat <command> ...``.

Exit codes: 0 success, 1 property fails, 2 bad input, 3 budget or size cap hit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .category import LocalizationError, find_inverse
from .fileformat import PresentationError, load, serialize
from .fractions import (
    AxiomsFail,
    build_fraction_category,
    build_right_fraction_category,
    check_left_fraction_axioms,
)
from .verify import (
    DEFAULT_NODE_CAP,
    NotFound,
    SizeBound,
    check_lemma_1_2,
    check_theorem_lfproperty,
    search_beyond_under_counterexample,
)
from .words import (
    DEFAULT_BUDGET,
    LocalizedPresentation,
    RequiresFractions,
    WordSyntaxError,
    gz_graph,
    gz_relation_instances,
    groupoid_completion,
    parse_word,
    saturation,
)

OK, FAILS, BAD_INPUT, CAPPED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str):
    try:
        return load(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    except PresentationError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    p = _load(args.file)
    c = p.category
    print(f"valid: {len(c.objects)} objects, {len(c)} morphisms, sigma of size {len(p.sigma)}")
    return OK


def cmd_localize(args) -> int:
    p = _load(args.file)
    c, sigma = p.category, p.sigma
    if args.method == "words":
        graph = gz_graph(c, sigma)
        counts = {}
        for inst in gz_relation_instances(c, sigma):
            counts[inst.family] = counts.get(inst.family, 0) + 1
        lines = [
            f"vertices: {len(graph.vertices)}",
            f"edges: {len(graph.edges)} ({len(c)} forward, {len(sigma)} backward)",
        ]
        lines += [f"family {k} instances: {counts.get(k, 0)}" for k in (1, 2, 3, 4)]
        _emit("\n".join(lines) + "\n", args.output)
        return OK
    try:
        if args.side == "left":
            loc = build_fraction_category(c, sigma)
            category, projection = loc.category, loc.projection
        else:
            category, projection = build_right_fraction_category(c, sigma)
    except AxiomsFail as exc:
        print(f"fractions unavailable: {exc.report.summary()}", file=sys.stderr)
        return FAILS
    header = f"{args.side} fractions of {Path(args.file).name}"
    _emit(serialize(category, projection=projection, header=header), args.output)
    return OK


def cmd_equal(args) -> int:
    p = _load(args.file)
    try:
        w1 = parse_word(p.category, p.sigma, args.word1)
        w2 = parse_word(p.category, p.sigma, args.word2)
    except WordSyntaxError as exc:
        raise InputError(str(exc)) from exc
    pres = LocalizedPresentation(p.category, p.sigma)
    verdict = pres.equal(w1, w2, budget=args.budget)
    print(f"{verdict.verdict} ({verdict.method})")
    if verdict.note:
        print(verdict.note)
    for step in verdict.certificate or ():
        print(f"  {step}")
    if verdict.verdict == "Equal":
        return OK
    if verdict.verdict == "Distinct" or verdict.method in ("mismatch",):
        return FAILS
    return CAPPED


def cmd_check_fractions(args) -> int:
    p = _load(args.file)
    report = check_left_fraction_axioms(p.category, p.sigma)
    for name, r in report.items():
        print(f"({name}) {r}")
    return OK if report.ok else FAILS


def cmd_saturate(args) -> int:
    p = _load(args.file)
    try:
        sat = saturation(p.category, p.sigma)
    except RequiresFractions as exc:
        print(f"saturation needs (a)-(d): {exc}", file=sys.stderr)
        return FAILS
    print("sigma " + ", ".join(sorted(sat)))
    added = sorted(sat - p.sigma)
    print("added: " + (", ".join(added) if added else "none"))
    return OK


def cmd_groupoidify(args) -> int:
    p = _load(args.file)
    try:
        category, projection = groupoid_completion(p.category)
    except RequiresFractions as exc:
        print(f"completion needs (a)-(d) for all morphisms: {exc}", file=sys.stderr)
        return FAILS
    if any(find_inverse(category, f) is None for f in category.order):
        print("completion is not a groupoid", file=sys.stderr)
        return FAILS
    header = f"groupoid completion of {Path(args.file).name}"
    _emit(serialize(category, projection=projection, header=header), args.output)
    print(f"{len(category.objects)} objects, {len(category)} morphisms", file=sys.stderr)
    return OK


def cmd_lemma12(args) -> int:
    p = _load(args.file)
    target = _load(args.target)
    try:
        report = check_lemma_1_2(p.category, p.sigma, target.category, cap=args.cap)
    except AxiomsFail as exc:
        print(f"fractions unavailable: {exc.report.summary()}", file=sys.stderr)
        return FAILS
    print(f"functors from the localization: {report.functors_from_localization}")
    print(f"sigma-inverting functors from the category: {report.inverting_functors}")
    for i, j, up, down in report.nat_trans_counts:
        print(f"  nat({i}, {j}): {up} = {down}" if up == down else f"  nat({i}, {j}): {up} != {down}")
    for failure in report.failures:
        print(f"FAIL {failure}")
    return OK if report.ok else FAILS


def cmd_bridge_check(args) -> int:
    p = _load(args.file)
    try:
        report = check_theorem_lfproperty(p.category, p.sigma, args.max_word_len, args.budget)
    except LocalizationError as exc:
        print(str(exc), file=sys.stderr)
        return FAILS
    print(f"words: {report.words}, parallel pairs: {report.pairs}")
    print(f"equal by rewriting: {report.equal_by_search}, by fallback: {report.equal_by_bridge}")
    print(f"distinct: {report.distinct}")
    for m in report.mismatches[:20]:
        print(f"MISMATCH {m}")
    for m in report.roundtrip_failures[:20]:
        print(f"ROUNDTRIP {m}")
    return OK if report.ok else FAILS


def cmd_find_counterexample(args) -> int:
    try:
        inst = search_beyond_under_counterexample(args.max_obj, args.max_mor, args.seed)
    except NotFound as exc:
        print(f"NotFound: {exc}")
        return FAILS
    log = "\n".join(
        [f"u = {inst.u}", f"v = {inst.v}", f"intermediary = {inst.intermediary}"] + inst.transcript
    )
    _emit(serialize(inst.category, inst.sigma, header=log), args.output)
    if args.output:
        print(log)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locat", description="Localizations of finite categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "parse and validate a presentation")
    p.add_argument("file")
    p = add("localize", cmd_localize, "build the localization")
    p.add_argument("file")
    p.add_argument("--method", choices=["fractions", "words"], default="fractions")
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("-o", "--output")
    p = add("equal", cmd_equal, "decide equality of two zigzag words")
    p.add_argument("file")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p = add("check-fractions", cmd_check_fractions, "check the left-fraction conditions")
    p.add_argument("file")
    p = add("saturate", cmd_saturate, "morphisms made invertible by the localization")
    p.add_argument("file")
    p = add("groupoidify", cmd_groupoidify, "invert every morphism")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p = add("lemma12", cmd_lemma12, "compare functors out of the localization and inverting functors")
    p.add_argument("file")
    p.add_argument("--target", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP, help="functor search node limit")
    p = add("bridge-check", cmd_bridge_check, "compare word equality with fraction classes")
    p.add_argument("file")
    p.add_argument("--max-word-len", type=int, default=3)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p = add("find-counterexample", cmd_find_counterexample, "search for beyond without a common under")
    p.add_argument("--max-obj", type=int, default=4)
    p.add_argument("--max-mor", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except SizeBound as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return CAPPED


if __name__ == "__main__":
    sys.exit(main())
