"""Command-line front end: analyze stick knots end to end, sweep height
directions, change crossings, search homomorphisms, compute invariants,
and batch-process fixture directories.

Exit codes: 0 success, 1 usage, 2 parse, 3 geometry, 4 contradiction,
5 internal.  All randomness flows from --seed, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import certify, diagram, geom, invariants, quotients, store

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_GEOMETRY = 3
EXIT_CONTRADICTION = 4
EXIT_INTERNAL = 5


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="stickcert", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        if seed:
            sp.add_argument("--seed", type=int, default=0, help="RNG seed")
        sp.add_argument("--machine", action="store_true", help="line-oriented output")

    sp = sub.add_parser("analyze", help="full pipeline on a coordinate file")
    sp.add_argument("coords", help="coordinate file (.tsv)")
    sp.add_argument("--degree-max", type=int, default=5,
                    help="largest symmetric-group degree to search")
    sp.add_argument("--tolerance", default="1e-5",
                    help="relative equilaterality tolerance (rational)")
    sp.add_argument("--output", help="also write the report to this path")
    sp.add_argument("--catalog", help="catalog directory to record the result")
    common(sp)

    sp = sub.add_parser("sweep", help="min/max height extrema over directions")
    sp.add_argument("coords")
    sp.add_argument("--samples", type=int, default=10000)
    common(sp)

    sp = sub.add_parser("change", help="switch crossings in a PD file")
    sp.add_argument("pd", help="PD file")
    sp.add_argument("--crossings", default="",
                    help="comma-separated crossing ids to switch")
    sp.add_argument("--degree", type=int, default=5,
                    help="symmetric-group degree for the follow-up search")
    sp.add_argument("--output", help="write the changed PD here")
    common(sp, seed=False)

    sp = sub.add_parser("batch", help="summary table over a fixtures directory")
    sp.add_argument("dir")
    sp.add_argument("--degree-max", type=int, default=5)
    sp.add_argument("--tolerance", default="1e-5")
    common(sp)

    sp = sub.add_parser("homsearch", help="transposition homomorphisms from a PD file")
    sp.add_argument("pd")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--max-results", type=int, default=None)
    common(sp, seed=False)

    sp = sub.add_parser("invariants", help="diagram invariants from a PD file")
    sp.add_argument("pd")
    sp.add_argument("--crossing-cap", type=int, default=24)
    common(sp, seed=False)
    return p


def _tolerance(text: str) -> Fraction:
    try:
        tol = store._parse_scale(text)
    except store.StoreError as exc:
        raise _UsageError(str(exc)) from exc
    if tol <= 0:
        raise _UsageError("tolerance must be positive")
    return tol


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise store.StoreError(f"cannot read {path}: {exc}") from exc


def _analyze_pipeline(poly, seed: int, degree_max: int, tol: Fraction):
    """Shared by analyze and batch: returns (facts, details dict)."""
    eq = geom.check_equilateral(poly, tol)
    direction, _ = geom.find_regular_direction(poly, seed=seed)
    dg = geom.project_to_diagram(poly, direction)
    fp = diagram.fingerprint(dg)
    details = {
        "direction": direction,
        "diagram": dg,
        "equilateral": eq,
        "fingerprint": fp,
    }
    facts = certify.new_facts(poly.name or "unnamed")
    facts = certify.add_stick_witness(facts, poly)
    if dg.n_crossings == 0:
        details["alexander"] = invariants.LaurentPoly.one()
        details["determinant"] = 1
        details["colorings"] = [invariants.count_colorings(dg, p) for p in (3, 5)]
        details["bound"] = quotients.BridgeBound(1, None)
        details["verdict"] = "projects with 0 crossings: unknot diagram, no certificate"
        return certify.saturate(facts), details
    alex = invariants.alexander(dg)
    det = invariants.determinant(dg)
    cols = [invariants.count_colorings(dg, p) for p in (3, 5)]
    pres = diagram.wirtinger(dg)
    bound = quotients.bridge_lower_bound(pres, degree_max, fp)
    details.update(alexander=alex, determinant=det, colorings=cols, bound=bound)
    if det != 1:
        facts = certify.set_nontrivial(facts, f"determinant {det} != 1")
    else:
        for col in cols:
            if col.nontrivial:
                facts = certify.set_nontrivial(
                    facts, f"{col.count} Fox {col.p}-colorings > {col.p}"
                )
                break
    if bound.certificate is not None:
        if not facts.nontrivial:
            facts = certify.set_nontrivial(
                facts,
                f"surjection onto S_{bound.certificate.degree} with transposition "
                "meridians (impossible for the unknot group)",
            )
        facts = certify.add_hom_certificate(facts, bound.certificate)
    facts = certify.saturate(facts)
    details["verdict"] = None
    return facts, details


def _fmt_dev(x: Fraction) -> str:
    return f"{float(x):.3e}"


def _cmd_analyze(args) -> int:
    tol = _tolerance(args.tolerance)
    poly = store.parse_coordinates(_read(args.coords), name=None)
    if not poly.name:
        poly = geom.Polygon3(poly.vertices, poly.scale, Path(args.coords).stem)
    facts, d = _analyze_pipeline(poly, args.seed, args.degree_max, tol)
    eq = d["equilateral"]
    dg = d["diagram"]
    out = []
    if args.machine:
        out.append(f"EQ {poly.name} equilateral={str(eq.equilateral).lower()} "
                   f"max_rel_dev={_fmt_dev(eq.max_rel_deviation)}")
        out.append(f"DIAGRAM {poly.name} crossings={dg.n_crossings} "
                   f"fingerprint={d['fingerprint'][:16]}")
        out.append(f"ALEXANDER {poly.name} {invariants.poly_text(d['alexander'])}")
        out.append(f"DETERMINANT {poly.name} {d['determinant']}")
        for col in d["colorings"]:
            out.append(f"COLORINGS {poly.name} p={col.p} count={col.count}")
        bound = d["bound"]
        cert = bound.certificate
        out.append(f"HOM {poly.name} bound={bound.bound} "
                   f"degree={cert.degree if cert else '-'}")
        out.append(certify.machine_report(facts).rstrip("\n"))
    else:
        out.append(f"analyze: {poly.name}")
        out.append(f"  sticks: {poly.n} (scale {poly.scale})")
        out.append(
            f"  equilateral at tol {tol}: "
            f"{'yes' if eq.equilateral else 'NO'} "
            f"(max relative deviation ~ {_fmt_dev(eq.max_rel_deviation)})"
        )
        out.append(f"  projection direction: {d['direction'].d} (seed {args.seed})")
        out.append(f"  diagram: {dg.n_crossings} crossings, "
                   f"fingerprint {d['fingerprint'][:16]}")
        if d["verdict"]:
            out.append(f"  verdict: {d['verdict']}")
        else:
            out.append(f"  alexander: {invariants.poly_text(d['alexander'])}")
            out.append(f"  determinant: {d['determinant']}")
            for col in d["colorings"]:
                mark = " (nontrivial)" if col.nontrivial else ""
                out.append(f"  fox colorings p={col.p}: {col.count}{mark}")
            bound = d["bound"]
            if bound.certificate is not None:
                out.append(
                    f"  homomorphism search: surjection onto "
                    f"S_{bound.certificate.degree} found; bridge >= {bound.bound}"
                )
            else:
                out.append(
                    f"  homomorphism search: none up to degree {args.degree_max}"
                )
        out.append("")
        out.append(certify.report(facts).rstrip("\n"))
        bound = d["bound"]
        if bound.certificate is not None:
            out.append("")
            out.append(quotients.certificate_text(bound.certificate).rstrip("\n"))
    text = "\n".join(out) + "\n"
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(text)
    if args.catalog:
        record = store.make_record(
            poly.name,
            poly,
            dg,
            invariant_values={
                "alexander": invariants.poly_text(d["alexander"]),
                "determinant": str(d["determinant"]),
            },
            certificates=(
                (quotients.certificate_text(d["bound"].certificate),)
                if d["bound"].certificate
                else ()
            ),
        )
        store.catalog_put(args.catalog, record)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.samples < 1:
        raise _UsageError("--samples must be >= 1")
    poly = store.parse_coordinates(_read(args.coords))
    res = geom.direction_sweep(poly, args.samples, seed=args.seed)
    if args.machine:
        sys.stdout.write(
            f"SWEEP samples={res.samples} min={res.min_count} max={res.max_count} "
            f"min_dir={','.join(map(str, res.min_witness.d))} "
            f"max_dir={','.join(map(str, res.max_witness.d))}\n"
        )
    else:
        sys.stdout.write(
            f"sweep over {res.samples} directions (seed {args.seed}):\n"
            f"  min local maxima: {res.min_count} at direction {res.min_witness.d}\n"
            f"  max local maxima: {res.max_count} at direction {res.max_witness.d}\n"
        )
    return EXIT_OK


def _parse_crossing_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise _UsageError(f"bad crossing list {text!r}") from exc


def _cmd_change(args) -> int:
    dg = diagram.parse_pd(_read(args.pd))
    ids = _parse_crossing_list(args.crossings)
    changed = diagram.change_crossings(dg, ids)
    pd_text = diagram.write_pd(changed)
    pres = diagram.wirtinger(changed) if changed.n_crossings else None
    results = (
        quotients.search_homomorphisms(pres, args.degree, max_results=1)
        if pres is not None
        else ()
    )
    if args.output:
        Path(args.output).write_text(pd_text)
    else:
        sys.stdout.write(pd_text)
    fp = diagram.fingerprint(changed)
    if args.machine:
        sys.stdout.write(
            f"CHANGED crossings={','.join(map(str, ids)) or '-'} "
            f"fingerprint={fp[:16]} "
            f"S{args.degree}_surjection={'yes' if results else 'no'}\n"
        )
    else:
        sys.stdout.write(
            f"# changed crossings {ids or 'none'}; fingerprint {fp[:16]}\n"
            f"# S_{args.degree} surjection with transposition meridians: "
            f"{'found' if results else 'none (exhaustive)'}\n"
        )
    if results:
        cert = quotients.verify_labeling(pres, results[0], fp)
        sys.stdout.write(quotients.certificate_text(cert))
    return EXIT_OK


def _cmd_batch(args) -> int:
    tol = _tolerance(args.tolerance)
    root = Path(args.dir)
    if not root.is_dir():
        raise store.StoreError(f"{args.dir} is not a directory")
    rows = []
    first_error = EXIT_OK
    for path in sorted(root.glob("*.tsv")):
        name = path.stem
        try:
            poly = store.parse_coordinates(path.read_text(), name=None)
            if not poly.name:
                poly = geom.Polygon3(poly.vertices, poly.scale, name)
            facts, d = _analyze_pipeline(poly, args.seed, args.degree_max, tol)
            conclusion = (
                f"bridge={facts.bridge} sb={facts.superbridge} stick={facts.stick}"
            )
            rows.append(
                "\t".join(
                    [
                        poly.name,
                        str(poly.n),
                        "yes" if d["equilateral"].equilateral else "no",
                        str(d["diagram"].n_crossings),
                        str(d["bound"].bound),
                        conclusion,
                    ]
                )
            )
        except Exception as exc:  # report, continue, flag the batch
            code = _exception_code(exc)
            if first_error == EXIT_OK:
                first_error = code
            rows.append(f"{name}\tERROR\t{exc}")
    sys.stdout.write("#name\tsticks\tequilateral\tcrossings\tbridge_lo\tconclusion\n")
    for row in rows:
        sys.stdout.write(row + "\n")
    return first_error


def _cmd_homsearch(args) -> int:
    if args.degree < 3:
        raise _UsageError("--degree must be >= 3")
    dg = diagram.parse_pd(_read(args.pd))
    pres = diagram.wirtinger(dg)
    found = quotients.search_homomorphisms(pres, args.degree, args.max_results)
    fp = diagram.fingerprint(dg)
    if args.machine:
        sys.stdout.write(f"HOMSEARCH degree={args.degree} classes={len(found)}\n")
        for k, lab in enumerate(found):
            vec = " ".join(str(t) for t in lab.assignment)
            sys.stdout.write(f"CLASS {k} {vec}\n")
    else:
        sys.stdout.write(
            f"surjections onto S_{args.degree} with transposition meridians "
            f"(up to conjugation): {len(found)}\n"
        )
        for k, lab in enumerate(found):
            cert = quotients.verify_labeling(pres, lab, fp)
            sys.stdout.write(f"--- class {k}\n")
            sys.stdout.write(quotients.certificate_text(cert))
    return EXIT_OK


def _cmd_invariants(args) -> int:
    dg = diagram.parse_pd(_read(args.pd))
    alex = invariants.alexander(dg)
    det = invariants.determinant(dg)
    lines = [
        f"crossings: {dg.n_crossings}",
        f"alexander: {invariants.poly_text(alex)}",
        f"determinant: {det}",
    ]
    for p in (3, 5, 7):
        col = invariants.count_colorings(dg, p)
        lines.append(f"colorings p={p}: {col.count}")
    try:
        bracket = invariants.kauffman_bracket(dg, args.crossing_cap)
        lines.append(f"bracket: {invariants.poly_text(bracket, 'A')}")
    except invariants.CapExceeded as exc:
        lines.append(f"bracket: skipped ({exc})")
    if args.machine:
        prefix = diagram.fingerprint(dg)[:16]
        sys.stdout.write(
            "\n".join(f"INV {prefix} {ln.replace(': ', '=', 1)}" for ln in lines) + "\n"
        )
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "sweep": _cmd_sweep,
    "change": _cmd_change,
    "batch": _cmd_batch,
    "homsearch": _cmd_homsearch,
    "invariants": _cmd_invariants,
}


def _exception_code(exc: Exception) -> int:
    if isinstance(exc, (store.StoreError, diagram.DiagramError, invariants.InvariantError)):
        return EXIT_PARSE
    if isinstance(exc, geom.GeometryError):
        return EXIT_GEOMETRY
    if isinstance(exc, certify.ContradictionError):
        return EXIT_CONTRADICTION
    return EXIT_INTERNAL


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:
        code = _exception_code(exc)
        kind = {
            EXIT_PARSE: "parse error",
            EXIT_GEOMETRY: "geometry error",
            EXIT_CONTRADICTION: "contradiction",
            EXIT_INTERNAL: "internal error",
        }[code]
        sys.stderr.write(f"{kind}: {exc}\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
