"""CLI entry point for alm-workbench."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

from alm_workbench import __version__, config
from alm_workbench.algebra import FiniteAlgebra, dump_algebra, load_algebra, serialize_algebra
from alm_workbench.axioms import AxiomReport, check_al_monoid
from alm_workbench.congruences import bijection_check, enumerate_congruences, quotient
from alm_workbench.errors import AlmError
from alm_workbench.ideals import (
    IdealSet,
    as_ideal,
    classify_all,
    distant_pairs,
    enumerate_ideals,
    ideal_lattice,
    radical,
    star_image,
    strong_witness,
)
from alm_workbench.logs import log
from alm_workbench.morphisms import (
    chain_checks,
    enumerate_homs,
    find_isomorphism,
    iso_theorem_checks,
)
from alm_workbench.products import (
    decompose_distant,
    direct_product,
    representability_check,
    subdirect_representation,
)
from alm_workbench.search import SearchSpec, counterexample_search, enumerate_models
from alm_workbench.spectrum import (
    minimal_maximal_primes,
    separation_check,
    spectrum,
    values_and_mu,
)
from alm_workbench.theorems import REGISTRY, verify_algebra
from alm_workbench.tracing import create_span


def emit_json(payload: Any) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def mark(flag: bool) -> str:
    return "✓" if flag else "·"


def _load(path: str) -> FiniteAlgebra:
    return load_algebra(Path(path))


def _bound(args: argparse.Namespace, default: int) -> int:
    return args.bound if args.bound is not None else default


def print_axiom_report(report: AxiomReport) -> None:
    print(f"{report.algebra}")
    for r in report.results:
        status = "ok  " if r.holds else "FAIL"
        witness = f"  witness ({','.join(r.witness)})" if r.witness else ""
        print(f"  {status} {r.axiom_id}{witness}")
    for r in report.informational:
        print(f"  info {r.axiom_id}: {'holds' if r.holds else 'fails'}")
    print()
    for name, value in report.verdicts.items():
        print(f"  {name:34} {str(value).lower()}")


def cmd_check(args: argparse.Namespace) -> int:
    """Check every axiom and report the verdicts."""
    report = check_al_monoid(_load(args.file))
    if args.json:
        emit_json(report.to_dict())
    else:
        print_axiom_report(report)
    return 0 if report.is_al_monoid else 1


def cmd_ideals(args: argparse.Namespace) -> int:
    """List ideals with their classification, the radical and distant pairs."""
    alg = _load(args.file)
    ideals = classify_all(alg, enumerate_ideals(alg, bound=_bound(args, config.IDEAL_BOUND)))
    lattice = ideal_lattice(alg, ideals)
    rad = radical(alg, ideals)
    distant = distant_pairs(alg, ideals)

    if args.json:
        rows = []
        for I, principal in zip(ideals, lattice.principal, strict=True):
            row = I.to_dict()
            row["principal"] = principal
            rows.append(row)
        emit_json(
            {
                "algebra": alg.name,
                "ideals": rows,
                "radical": list(rad.labels()),
                "distant": distant.to_dict(),
                "algebraic": lattice.algebraic,
            }
        )
        return 0

    print(f"{alg.name}: {len(ideals)} ideals")
    print(f"  {'members':24} principal prime maximal regular strong")
    for I, principal in zip(ideals, lattice.principal, strict=True):
        f = I.flags
        assert f is not None
        gen = f"⟨{principal}⟩" if principal else "-"
        print(
            f"  {str(I):24} {gen:9} {mark(f.is_prime):5} {mark(f.is_maximal):7} "
            f"{mark(f.is_regular):7} {mark(f.is_strong)}"
        )
        found = strong_witness(alg, I)
        if found and found[0] == "member":
            a = alg.index(found[1][0])
            image = "{" + ",".join(alg.labels(sorted(star_image(alg, a, I)))) + "}"
            print(f"    not strong: {alg.label(a)}∗I = {image} ≠ I")
        elif found:
            print(f"    not strong: coset condition fails at ({','.join(found[1])})")
    print(f"radical: {rad}")
    print("distant pairs:")
    for p in distant.pairs:
        print(f"  ({p.first}, {p.second})")
    print(f"directly indecomposable: {str(distant.is_directly_indecomposable).lower()}")
    return 0


def cmd_congruences(args: argparse.Namespace) -> int:
    """List congruences and check the ideal correspondence."""
    alg = _load(args.file)
    bound = _bound(args, config.IDEAL_BOUND)
    congruences = enumerate_congruences(alg, bound=bound)
    report = bijection_check(alg, enumerate_ideals(alg, bound=bound), congruences)
    if args.json:
        emit_json(
            {
                "algebra": alg.name,
                "congruences": [theta.labels() for theta in congruences],
                "bijection": report.to_dict(),
            }
        )
    else:
        print(f"{alg.name}: {len(congruences)} congruences")
        for theta in congruences:
            print(f"  {theta}")
        verdict = "holds" if report.holds else "FAILS"
        print(f"ideal ↔ congruence: {verdict} ({report.ideal_count} = {report.congruence_count})")
        for failure in report.failures:
            print(f"  {failure}")
    return 0 if report.holds else 1


def cmd_quotient(args: argparse.Namespace) -> int:
    """Print A/M as an .alm document."""
    alg = _load(args.file)
    labels = [s.strip() for s in args.ideal.split(",") if s.strip()]
    M = as_ideal(alg, IdealSet.of(alg, labels).members)
    q = quotient(alg, M)
    if args.json:
        emit_json(q.to_dict() | {"document": serialize_algebra(q.algebra)})
    else:
        print(serialize_algebra(q.algebra), end="")
    if not q.report.is_al_monoid and check_al_monoid(alg).is_al_monoid:
        failed = ", ".join(r.axiom_id for r in q.report.failures())
        log(f"quotient fails: {failed}")
        return 1
    return 0


def cmd_homs(args: argparse.Namespace) -> int:
    """List homomorphisms between two algebras."""
    A, B = _load(args.source), _load(args.target)
    homs = enumerate_homs(A, B)
    if args.json:
        emit_json({"count": len(homs), "homomorphisms": [f.to_dict() for f in homs]})
        return 0
    for f in homs:
        kind = "iso" if f.is_isomorphism else "epi" if f.is_epimorphism else "mono" if f.is_monomorphism else ""
        pairs = " ".join(f"{x}↦{y}" for x, y in f.labels().items())
        print(f"  {pairs}  {kind}".rstrip())
    print(f"{len(homs)} homomorphism(s) {A.name} → {B.name}")
    return 0


def cmd_iso(args: argparse.Namespace) -> int:
    """Decide isomorphism; exit 0 iff isomorphic."""
    A, B = _load(args.source), _load(args.target)
    f = find_isomorphism(A, B)
    if args.json:
        emit_json({"isomorphic": f is not None, "map": f.labels() if f else None})
    elif f is None:
        print(f"{A.name} and {B.name} are not isomorphic")
    else:
        print(" ".join(f"{x}↦{y}" for x, y in f.labels().items()))
    return 0 if f is not None else 1


def cmd_isotheorems(args: argparse.Namespace) -> int:
    """Check both isomorphism theorems and the chain criteria."""
    alg = _load(args.file)
    reports = iso_theorem_checks(alg)
    chains = chain_checks(alg)
    ok = all(r.holds for r in reports) and chains.consistent
    if args.json:
        emit_json(
            {"theorems": [r.to_dict() for r in reports], "chains": chains.to_dict(), "holds": ok}
        )
        return 0 if ok else 1
    for name in ("first", "second"):
        mine = [r for r in reports if r.theorem == name]
        passed = sum(r.holds for r in mine)
        print(f"{name} isomorphism theorem: {passed}/{len(mine)} instances hold")
        for r in mine:
            if not r.holds:
                print(f"  FAIL {r.left.name if r.left else '?'} vs {r.right.name if r.right else '?'} {r.detail}")
    print(f"chain: {str(chains.is_chain).lower()}  criterion: {str(chains.criterion_holds).lower()}"
          f"  simple: {str(chains.is_simple).lower()}")
    for line in chains.quotient_discrepancies + chains.upset_failures:
        print(f"  {line}")
    return 0 if ok else 1


def cmd_product(args: argparse.Namespace) -> int:
    """Build the direct product of two algebras."""
    A, B = _load(args.first), _load(args.second)
    prod = direct_product([A, B], bound=_bound(args, config.PRODUCT_BOUND))
    report = check_al_monoid(prod.algebra)
    if args.output:
        dump_algebra(prod.algebra, args.output)
        log(f"wrote {args.output}")
    if args.json:
        emit_json({"algebra": prod.algebra.name, "n": prod.algebra.n, "check": report.to_dict()})
    elif not args.output:
        print(serialize_algebra(prod.algebra), end="")
    both = check_al_monoid(A).is_al_monoid and check_al_monoid(B).is_al_monoid
    return 1 if both and not report.is_al_monoid else 0


def cmd_decompose(args: argparse.Namespace) -> int:
    """Decompose along distant pairs."""
    alg = _load(args.file)
    reports = decompose_distant(alg)
    ok = all(r.isomorphic for r in reports)
    if args.json:
        emit_json({"algebra": alg.name, "decompositions": [r.to_dict() for r in reports], "holds": ok})
        return 0 if ok else 1
    if not reports:
        print(f"{alg.name}: no proper distant pair (directly indecomposable)")
    for r in reports:
        verdict = "≅ A/I × A/J" if r.isomorphic else "NOT isomorphic"
        print(f"  I={r.first} J={r.second}: {verdict}")
        if r.isomorphism:
            print("    " + " ".join(f"{x}↦{y}" for x, y in r.isomorphism.labels().items()))
    return 0 if ok else 1


def cmd_subdirect(args: argparse.Namespace) -> int:
    """Find a smallest prime family meeting in {0}."""
    alg = _load(args.file)
    report = subdirect_representation(alg)
    if args.json:
        emit_json(report.to_dict())
    elif not report.found:
        print(f"{alg.name}: no family of primes meets in {{0}}")
    else:
        family = ", ".join(str(P) for P in report.family) or "(empty)"
        print(f"family: {family}")
        print(f"injective: {str(report.injective).lower()}  onto factors: "
              f"{str(report.projections_onto).lower()}")
        print(f"factors are chains: {', '.join(str(c).lower() for c in report.factors_are_chains) or '-'}")
    return 0 if report.found and report.injective else 1


def cmd_representable(args: argparse.Namespace) -> int:
    """Cross-check the three representability conditions."""
    report = representability_check(_load(args.file))
    if args.json:
        emit_json(report.to_dict())
    else:
        for key, value in report.to_dict().items():
            if key != "notes":
                print(f"  {key:6} {str(value).lower()}")
        for note in report.notes:
            print(f"  note: {note}")
    return 0 if report.agree else 1


def cmd_spectrum(args: argparse.Namespace) -> int:
    """Primes, basic opens, extreme primes and values."""
    alg = _load(args.file)
    ideals = classify_all(alg, enumerate_ideals(alg, bound=_bound(args, config.IDEAL_BOUND)))
    spec = spectrum(alg, ideals)
    sep = separation_check(alg, spec)
    extremes = minimal_maximal_primes(alg, spec)
    elements = [alg.index(args.element)] if args.element else [a for a in alg.elements if a != alg.zero]
    vals = [values_and_mu(alg, a, spec, ideals) for a in elements]
    ok = sep.holds and extremes.holds and all(v.unique and v.continuous for v in vals if v.values)

    if args.json:
        emit_json(
            {
                "spectrum": spec.to_dict(),
                "separation": sep.to_dict(),
                "extremes": extremes.to_dict(spec),
                "values": [v.to_dict(spec) for v in vals],
                "holds": ok,
            }
        )
        return 0 if ok else 1

    print(f"Spec({alg.name}): {len(spec.primes)} primes")
    for k, P in enumerate(spec.primes):
        print(f"  P{k} = {P}")
    for a in alg.elements:
        opens = ",".join(f"P{k}" for k in range(len(spec.primes)) if spec.S(a) >> k & 1)
        print(f"  S({alg.label(a)}) = {{{opens}}}")
    print(f"m(A): {', '.join(f'P{k}' for k in extremes.minimal) or '-'}"
          f"  T2: {str(extremes.minimal_t2).lower()}")
    print(f"M(A): {', '.join(f'P{k}' for k in extremes.maximal) or '-'}"
          f"  T2: {str(extremes.maximal_t2).lower()}")
    print(f"separation: {'vacuous' if sep.vacuous else str(sep.holds).lower()}")
    for v in vals:
        mu = ", ".join(f"P{p}↦{v.values[i]}" for p, i in v.mu.items()) or "-"
        print(f"  Val({alg.label(v.element)}) = {', '.join(str(V) for V in v.values) or '∅'}; μ: {mu}")
    return 0 if ok else 1


def cmd_search(args: argparse.Namespace) -> int:
    """Enumerate AL-monoids of one order up to isomorphism."""
    models = enumerate_models(args.order, bound=_bound(args, config.SEARCH_BOUND))
    if args.emit:
        out = Path(args.emit)
        out.mkdir(parents=True, exist_ok=True)
        for alg in models:
            dump_algebra(alg, out / f"{alg.name}.alm")
        log(f"wrote {len(models)} file(s) to {out}")
    if args.json:
        emit_json({"order": args.order, "count": len(models), "models": [m.name for m in models]})
    elif args.count_only:
        print(len(models))
    else:
        for alg in models:
            print(serialize_algebra(alg))
        print(f"{len(models)} AL-monoid(s) of order {args.order}")
    return 0


def cmd_falsify(args: argparse.Namespace) -> int:
    """Look for a model violating a registered property."""
    spec = SearchSpec(args.order, tuple(args.property), mode="counterexample")
    outcome = counterexample_search(spec, bound=_bound(args, config.SEARCH_BOUND))
    if args.json:
        emit_json(outcome.to_dict())
    elif not outcome.found:
        print(f"none found up to order {args.order} ({outcome.models_checked} models)")
    else:
        assert outcome.algebra is not None
        witness = ",".join(outcome.witness) if outcome.witness else "-"
        print(f"{outcome.property_id} fails on {outcome.algebra.name}: witness ({witness}) {outcome.detail}")
        print(serialize_algebra(outcome.algebra), end="")
    return 1 if outcome.found else 0


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the theorem registry on one algebra or on every model of an order."""
    if args.file:
        algebras = [_load(args.file)]
    elif args.order:
        algebras = enumerate_models(args.order, bound=_bound(args, config.SEARCH_BOUND))
    else:
        print("Error: verify needs a file or --order", file=sys.stderr)
        return 2
    ids = args.property or None
    reports = [verify_algebra(alg, ids) for alg in algebras]
    ok = all(r.holds for r in reports)
    if args.json:
        emit_json({"reports": [r.to_dict() for r in reports], "holds": ok})
        return 0 if ok else 1
    for r in reports:
        print(f"{r.algebra} (AL-monoid: {str(r.is_al_monoid).lower()})")
        for c in r.checks:
            status = "ok  " if c.holds else "FAIL"
            tag = " (vacuous)" if c.vacuous else ""
            witness = f" witness ({','.join(c.witness)})" if c.witness else ""
            detail = f" {c.detail}" if c.detail and not c.holds else ""
            print(f"  {status} {c.theorem_id}{tag}{witness}{detail}")
    return 0 if ok else 1


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "check": cmd_check,
    "ideals": cmd_ideals,
    "congruences": cmd_congruences,
    "quotient": cmd_quotient,
    "homs": cmd_homs,
    "iso": cmd_iso,
    "isotheorems": cmd_isotheorems,
    "product": cmd_product,
    "decompose": cmd_decompose,
    "subdirect": cmd_subdirect,
    "representable": cmd_representable,
    "spectrum": cmd_spectrum,
    "search": cmd_search,
    "falsify": cmd_falsify,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit JSON instead of tables")
    bounded = argparse.ArgumentParser(add_help=False, parents=[common])
    bounded.add_argument("--bound", type=int, default=None, help="Override the size bound")

    parser = argparse.ArgumentParser(
        prog="alm",
        description="Finite workbench for autometrized lattice-ordered monoids.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", help="Commands")

    for name, help_text in (
        ("ideals", "Enumerate and classify ideals"),
        ("congruences", "Enumerate congruences"),
    ):
        sub.add_parser(name, parents=[bounded], help=help_text).add_argument("file")

    for name, help_text in (
        ("check", "Check the axioms"),
        ("isotheorems", "Check the isomorphism theorems and chain criteria"),
        ("decompose", "Decompose along distant ideals"),
        ("subdirect", "Find a subdirect representation"),
        ("representable", "Cross-check representability"),
    ):
        sub.add_parser(name, parents=[common], help=help_text).add_argument("file")

    p = sub.add_parser("quotient", parents=[common], help="Quotient by an ideal")
    p.add_argument("file")
    p.add_argument("--ideal", required=True, help="Comma-separated ideal members, e.g. 0,a")

    for name, help_text in (("homs", "List homomorphisms"), ("iso", "Decide isomorphism")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("source")
        p.add_argument("target")

    p = sub.add_parser("product", parents=[bounded], help="Direct product of two algebras")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", help="Write the product to this .alm file")

    p = sub.add_parser("spectrum", parents=[bounded], help="Prime spectrum and values")
    p.add_argument("file")
    p.add_argument("--element", help="Only compute Val/μ for this element")

    p = sub.add_parser("search", parents=[bounded], help="Enumerate models of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--emit", help="Directory to write one .alm file per model")

    p = sub.add_parser("falsify", parents=[bounded], help="Search for a counterexample")
    p.add_argument("--order", type=int, required=True)
    p.add_argument(
        "--property", action="append", required=True, help=f"One of: {', '.join(REGISTRY)}"
    )

    p = sub.add_parser("verify", parents=[bounded], help="Run the theorem registry")
    p.add_argument("file", nargs="?")
    p.add_argument("--order", type=int)
    p.add_argument("--property", action="append", help="Restrict to these ids")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    handler = COMMANDS.get(args.command or "")
    if handler is None:
        parser.print_help()
        return 2

    try:
        with create_span(f"cli.{args.command}", {"command": args.command}):
            return handler(args)
    except (AlmError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
