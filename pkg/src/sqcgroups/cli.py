"""Command-line front end.

Commands:
  check        analyze a presentation or catalog group for square commutativity
  enumerate    run coset enumeration on a presentation, optionally dumping the table
  catalog      list catalog families with square-commutativity verdicts
  verify-paper run every cross-checking suite over the full corpus

Exit codes: 0 square commutative / success, 1 not square commutative or a
failed suite, 2 usage or input error, 3 coset limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from sqcgroups.catalog import (
    BadParameter,
    CatalogEntry,
    bs_relation_quotient,
    cyclic,
    dihedral,
    elementary_abelian,
    heisenberg_mod,
    metacyclic,
    quaternion8,
    small_groups_under_12,
)
from sqcgroups.core import CayleyGroup, GeneratorsDoNotGenerate, NotAGroup, center
from sqcgroups.presentation import (
    CosetLimitExceeded,
    DEFAULT_MAX_COSETS,
    EmptyGeneratorList,
    PresentationSyntaxError,
    Realization,
    UnknownGenerator,
    parse_presentation,
    todd_coxeter,
)
from sqcgroups.sqcomm import (
    AnalysisReport,
    GeneratorListTooLong,
    NotGenerating,
    TooFewGenerators,
    analyze,
    z2_subgroup,
)
from sqcgroups.verify import build_corpus, run_all_suites

__all__ = ["main", "entry", "format_cayley_table"]

_USER_ERRORS = (
    BadParameter,
    PresentationSyntaxError,
    UnknownGenerator,
    EmptyGeneratorList,
    NotGenerating,
    TooFewGenerators,
    GeneratorListTooLong,
    GeneratorsDoNotGenerate,
    NotAGroup,
    KeyError,
    ValueError,
)


def _is_presentation(spec: str) -> bool:
    s = spec.lstrip()
    return s.startswith("<") or s.startswith("⟨")


def _split_labels(text: str) -> list[str]:
    """Split a comma-separated label list, ignoring commas inside parentheses."""
    out: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(current).strip())
            current = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        current.append(ch)
    out.append("".join(current).strip())
    return [s for s in out if s]


def _resolve_catalog_spec(spec: str, rel: str, max_cosets: int) -> CatalogEntry:
    parts = spec.strip().split(":")
    family = parts[0].lower()
    args = parts[1:]

    def ints(expected: int) -> list[int]:
        if len(args) != expected:
            raise BadParameter(
                f"{family} takes {expected} parameter(s), got {len(args)} in {spec!r}"
            )
        try:
            return [int(a) for a in args]
        except ValueError:
            raise BadParameter(f"non-integer parameter in {spec!r}") from None

    if family == "q8":
        ints(0)
        return quaternion8()
    if family == "cyclic":
        return cyclic(*ints(1))
    if family == "dihedral":
        return dihedral(*ints(1))
    if family == "elemabelian":
        return elementary_abelian(*ints(2))
    if family == "heisenberg":
        return heisenberg_mod(*ints(1))
    if family == "metacyclic":
        n, m, j = ints(3)
        return metacyclic(n, m, j, max_cosets=max_cosets)
    if family == "bs":
        p, q = ints(2)
        return bs_relation_quotient(p, q, rel, max_cosets=max_cosets)
    raise BadParameter(f"unknown catalog family {family!r} in {spec!r}")


def _resolve_subject(
    spec: str, rel: str, max_cosets: int
) -> tuple[CayleyGroup, tuple[int, ...]]:
    if _is_presentation(spec):
        realization: Realization = todd_coxeter(parse_presentation(spec), max_cosets)
        return realization.group, realization.assignment
    entry = _resolve_catalog_spec(spec, rel, max_cosets)
    return entry.group, entry.canonical_generators


def _witness_labels(G: CayleyGroup, witness) -> Optional[list[str]]:
    if witness is None:
        return None
    return [G.labels[w] for w in witness]


def _report_json(
    subject: str,
    G: CayleyGroup,
    rep: AnalysisReport,
    timings: Optional[dict[str, float]],
) -> str:
    criteria = None
    if rep.criteria is not None:
        criteria = [
            {
                "name": r.name,
                "holds": r.holds,
                "witness": _witness_labels(G, r.witness),
            }
            for r in rep.criteria.relations
        ]
    doc = {
        "schema_version": "1",
        "subject": subject,
        "order": rep.order,
        "is_square_commutative": rep.is_sq_comm,
        "witness": _witness_labels(G, rep.brute_witness),
        "center_size": rep.center_size,
        "z2_size": rep.z2_size,
        "hat_order": rep.hat_order,
        "hat_abelian": rep.hat_abelian,
        "squares_central": rep.squares_central,
        "g_mod_z_abelian": rep.g_mod_z_abelian,
        "criteria": criteria,
        "coverage_ok": rep.coverage_ok,
        "consistent": rep.consistent,
    }
    if timings is not None:
        doc["timings"] = {k: round(v, 3) for k, v in timings.items()}
    return json.dumps(doc, indent=2)


def _report_text(
    subject: str,
    G: CayleyGroup,
    rep: AnalysisReport,
    timings: Optional[dict[str, float]],
) -> str:
    lines = [
        f"subject: {subject}",
        f"order: {rep.order}",
        f"square commutative: {'yes' if rep.is_sq_comm else 'no'}",
    ]
    if rep.brute_witness is not None:
        x, y = rep.brute_witness
        lines.append(f"witness: ({G.labels[x]}, {G.labels[y]})")
    lines += [
        f"center size: {rep.center_size}",
        f"central involutions: {rep.z2_size}",
        f"hat order: {rep.hat_order}",
        f"hat abelian: {'yes' if rep.hat_abelian else 'no'}",
        f"squares central: {'yes' if rep.squares_central else 'no'}",
        f"G/Z abelian: {'yes' if rep.g_mod_z_abelian else 'no'}",
    ]
    if rep.criteria is not None:
        lines.append("criteria:")
        for r in rep.criteria.relations:
            if r.holds:
                lines.append(f"  {r.name}: holds")
            else:
                witness = ", ".join(G.labels[w] for w in r.witness)
                lines.append(f"  {r.name}: fails (witness: {witness})")
    if rep.coverage_ok is not None:
        lines.append(f"coverage: {'yes' if rep.coverage_ok else 'no'}")
    lines.append(f"consistent: {'yes' if rep.consistent else 'no'}")
    if timings is not None:
        shown = " ".join(f"{k}={v:.1f}ms" for k, v in timings.items())
        lines.append(f"timings: {shown}")
    return "\n".join(lines)


def format_cayley_table(G: CayleyGroup) -> str:
    """Text dump: header with order, the labels, the full table (entry x*y at
    row x, column y), and the generator labels when present."""
    lines = [f"cayley v1 {G.order}", " ".join(G.labels)]
    for x in range(G.order):
        lines.append(" ".join(str(int(v)) for v in G.mul_table[x]))
    if G.generators:
        lines.append("generators: " + " ".join(G.labels[g] for g in G.generators))
    return "\n".join(lines) + "\n"


def cmd_check(args: argparse.Namespace) -> int:
    try:
        t0 = time.perf_counter()
        G, default_gens = _resolve_subject(args.spec, args.rel, args.max_cosets)
        t1 = time.perf_counter()
        if args.gens is not None:
            labels = _split_labels(args.gens)
            gens: Optional[Sequence[int]] = [G.element_by_label(s) for s in labels]
        else:
            gens = default_gens if default_gens else None
        rep = analyze(G, gens)
        t2 = time.perf_counter()
    except CosetLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    timings = None
    if args.timings:
        timings = {"build_ms": (t1 - t0) * 1e3, "analyze_ms": (t2 - t1) * 1e3}
    if args.json:
        print(_report_json(args.spec, G, rep, timings))
    else:
        print(_report_text(args.spec, G, rep, timings))
    return 0 if rep.is_sq_comm else 1


def cmd_enumerate(args: argparse.Namespace) -> int:
    try:
        pres = parse_presentation(args.presentation)
        realization = todd_coxeter(pres, args.max_cosets)
    except CosetLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"order {realization.group.order}")
    if args.dump is not None:
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write(format_cayley_table(realization.group))
        print(f"dump: {args.dump}")
    return 0


def _parse_n_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    n = int(text)
    return range(n, n + 1)


def _catalog_rows(args: argparse.Namespace) -> list[CatalogEntry]:
    if args.under is not None:
        if args.under > 12:
            raise BadParameter("the census covers orders below 12 only")
        return [e for e in small_groups_under_12() if e.group.order < args.under]
    if args.family is None:
        raise BadParameter("name a family (or a family:params spec) or pass --under N")
    spec = args.family
    if ":" in spec or spec.lower() == "q8":
        return [_resolve_catalog_spec(spec, args.rel, args.max_cosets)]
    family = spec.lower()
    ns = _parse_n_range(args.n) if args.n is not None else None
    if family == "cyclic":
        return [cyclic(n) for n in (ns or range(1, 13))]
    if family == "dihedral":
        return [dihedral(n) for n in (ns or range(1, 9))]
    if family == "heisenberg":
        return [heisenberg_mod(p) for p in (ns or (2, 3))]
    raise BadParameter(f"unknown catalog family {spec!r}")


def cmd_catalog(args: argparse.Namespace) -> int:
    try:
        rows = _catalog_rows(args)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    from sqcgroups.sqcomm import is_square_commutative

    name_width = max(4, max(len(e.name) for e in rows))
    print(f"{'name':<{name_width}}  {'order':>5}  {'|Z|':>4}  {'|Z2|':>4}  square_commutative")
    for entry in rows:
        G = entry.group
        verdict = "yes" if is_square_commutative(G) else "no"
        print(
            f"{entry.name:<{name_width}}  {G.order:>5}  {len(center(G)):>4}  "
            f"{len(z2_subgroup(G)):>4}  {verdict}"
        )
    return 0


def cmd_verify_paper(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    corpus = build_corpus()
    results = run_all_suites(corpus)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
    failures = [r for r in results if not r.passed]
    total = time.perf_counter() - t0
    if failures:
        print(f"{len(failures)} of {len(results)} suites failed")
        return 1
    summary = f"all {len(results)} suites passed over {len(corpus)} corpus groups"
    if args.timings:
        summary += f" ({total * 1e3:.0f}ms)"
    print(summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqcgroups",
        description="Finite-group square-commutativity toolkit: (xy)^2 = (yx)^2 analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="analyze one group")
    p_check.add_argument("spec", help="presentation text or catalog spec (e.g. dihedral:4)")
    p_check.add_argument("--json", action="store_true", help="emit the structured report")
    p_check.add_argument("--gens", help="comma-separated generator labels for the criteria")
    p_check.add_argument("--rel", default="", help="extra relations for bs:p:q specs")
    p_check.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p_check.add_argument("--timings", action="store_true", help="include phase timings")
    p_check.set_defaults(func=cmd_check)

    p_enum = sub.add_parser("enumerate", help="coset enumeration of a presentation")
    p_enum.add_argument("presentation")
    p_enum.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p_enum.add_argument("--dump", help="write the multiplication table to this path")
    p_enum.set_defaults(func=cmd_enumerate)

    p_cat = sub.add_parser("catalog", help="list catalog entries with verdicts")
    p_cat.add_argument("family", nargs="?", help="family name or family:params spec")
    p_cat.add_argument("--under", type=int, help="list all groups of order below N (N <= 12)")
    p_cat.add_argument("--n", help="parameter range for a family, e.g. 1..8")
    p_cat.add_argument("--rel", default="", help="extra relations for bs:p:q specs")
    p_cat.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p_cat.set_defaults(func=cmd_catalog)

    p_verify = sub.add_parser("verify-paper", help="run every cross-checking suite")
    p_verify.add_argument("--timings", action="store_true", help="print the total runtime")
    p_verify.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


def entry() -> None:
    raise SystemExit(main())
