"""Command-line front end.

Subcommands: verify, decompose, roots, affinize, twist.  Documents are JSON
(see documents.py); the path argument also accepts "builtin:<name>" for the
shipped fixtures.  Exit codes: 0 all checks passed, 1 a check failed, 2 the
input could not be read or parsed.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import affinize as affz
from . import documents, fixtures, matrixsuper, rootsys
from .algebra import (NotAWeightBasisError, even_part, structural_root_checks,
                      verify_eals, verify_form, verify_superalgebra,
                      weight_decomposition)
from .osp12 import ModuleError, decompose
from .reports import Report
from .scalars import Rat, scalar_from_string
from .matrixsuper import SuperIndexSet

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _load_algebra(path: str):
    if path.startswith("builtin:") or path in fixtures.ALGEBRA_NAMES:
        name = path[len("builtin:"):] if path.startswith("builtin:") else path
        try:
            return fixtures.algebra_fixture(name)
        except KeyError as exc:
            raise documents.DocumentError(str(exc)) from exc
    return documents.algebra_from_dict(documents.load(path))


def _load_module(path: str):
    import os
    if path.startswith("builtin:") or not os.path.exists(path):
        name = path[len("builtin:"):] if path.startswith("builtin:") else path
        try:
            return fixtures.module_fixture(name)
        except (KeyError, ValueError) as exc:
            if os.path.exists(path):
                raise documents.DocumentError(str(exc)) from exc
            raise documents.DocumentError(
                f"no such file and not a builtin module spec: {path}") from exc
    return documents.module_from_dict(documents.load(path))


def _emit(report: Report, fmt: str) -> int:
    if fmt == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render_text())
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    started = time.monotonic()
    L = _load_algebra(args.path)
    combined = Report(title=f"verify {args.path}")
    combined.extend(verify_superalgebra(L))
    if L.gram is None:
        combined.skip("bilinear form", {"reason": "no form in document"})
        combined.elapsed = time.monotonic() - started
        return _emit(combined, args.format)
    combined.extend(verify_form(L))
    if L.cartan is None or L.weights is None:
        combined.skip("weight decomposition", {"reason": "no Cartan/weights"})
        combined.elapsed = time.monotonic() - started
        return _emit(combined, args.format)
    try:
        datum = weight_decomposition(L)
    except (NotAWeightBasisError, ValueError) as exc:
        combined.check("weight decomposition", False, {"detail": str(exc)})
        combined.elapsed = time.monotonic() - started
        return _emit(combined, args.format)
    combined.extend(verify_eals(L, datum))
    combined.extend(structural_root_checks(L, datum))
    combined.extend(rootsys.check_axioms(rootsys.from_root_datum(datum)))
    even = even_part(L)
    combined.check("even part is a subalgebra",
                   verify_superalgebra(even).passed, None)
    combined.elapsed = time.monotonic() - started
    return _emit(combined, args.format)


def cmd_decompose(args) -> int:
    m = _load_module(args.path)
    try:
        summands = decompose(m)
    except ModuleError as exc:
        sys.stdout.write(f"error: {exc}\n")
        return EXIT_FAIL
    lams = [lam for lam, _ in summands]
    if args.format == "json":
        doc = {"lambda": lams,
               "summands": [{"lambda": lam,
                             "basis": [[str(x) for x in v] for v in chain]}
                            for lam, chain in summands]}
        import json
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(f"lambda: {lams}\n")
        for lam, chain in summands:
            sys.stdout.write(f"  summand lambda={lam} dim={lam + 1}\n")
    return EXIT_PASS


def cmd_roots(args) -> int:
    started = time.monotonic()
    L = _load_algebra(args.path)
    if not verify_superalgebra(L).passed or L.gram is None:
        sys.stdout.write("error: not a verified algebra with a form\n")
        return EXIT_FAIL
    try:
        datum = weight_decomposition(L)
    except (NotAWeightBasisError, ValueError) as exc:
        sys.stdout.write(f"error: {exc}\n")
        return EXIT_FAIL
    system = rootsys.from_root_datum(datum)
    report = Report(title=f"roots {args.path}")
    report.note("roots", {"count": len(system.roots),
                          "roots": [list(r) for r in system.roots],
                          "real": [list(r) for r in sorted(system.real_roots)],
                          "nonsingular": [list(r) for r in
                                          sorted(system.nonsingular_roots)],
                          "radical": [list(r) for r in
                                      sorted(system.radical_roots)]})
    report.extend(rootsys.check_axioms(system))
    report.elapsed = time.monotonic() - started
    return _emit(report, args.format)


def _qmatrix(rank: int, q: str):
    val = scalar_from_string(q)
    return tuple(tuple(val for _ in range(rank)) for _ in range(rank))


def cmd_affinize(args) -> int:
    started = time.monotonic()
    L = _load_algebra(args.base)
    datum = weight_decomposition(L)
    if not (verify_superalgebra(L).passed and verify_form(L).passed
            and verify_eals(L, datum).passed):
        sys.stdout.write("error: base algebra is not verified\n")
        return EXIT_FAIL
    if args.q is None:
        torus = affz.trivial_torus(args.rank)
    else:
        torus = affz.CocycleTorus(rank=args.rank, qmatrix=_qmatrix(args.rank, args.q))
    degrees = affz.window_box(args.rank, args.window)
    combined = Report(title=f"affinize {args.base} rank={args.rank}",
                      seed=args.seed, window={"radius": args.window})
    combined.extend(affz.verify_cocycle(torus, degrees, samples=args.samples,
                                        seed=args.seed))
    alg = affz.AffinizedAlgebra(L, datum, torus)
    combined.extend(affz.verify_affinized(alg, degrees, samples=args.samples,
                                          seed=args.seed))
    spaces = affz.affinized_roots(alg, degrees)
    combined.note("window roots", {
        "count": len(spaces),
        "sample": [[list(map(str, r)), list(d)]
                   for (r, d) in sorted(spaces, key=str)[:10]]})
    combined.elapsed = time.monotonic() - started
    return _emit(combined, args.format)


def cmd_twist(args) -> int:
    started = time.monotonic()
    if args.field != "Qi":
        sys.stdout.write("error: the twisted construction needs --field Qi\n")
        return EXIT_INPUT
    idx = SuperIndexSet(i_dot=args.i_dot, j_dot=args.j_dot,
                        with_zero_i=args.with_zero, barred=True)
    if args.q is None:
        torus = affz.trivial_torus(args.rank)
    else:
        torus = affz.CocycleTorus(rank=args.rank, qmatrix=_qmatrix(args.rank, args.q))
    try:
        aff = matrixsuper.matrix_affinization(idx, torus, field="Qi")
    except matrixsuper.DegenerateFormError as exc:
        sys.stdout.write(f"error: {exc}\n")
        return EXIT_FAIL
    sh = matrixsuper.SharpOperator(idx, aff, star_signs=args.star_signs)
    tw = matrixsuper.twisted_affinize(aff, sh)
    taus = affz.window_box(args.rank, args.window)
    report = matrixsuper.verify_twisted(tw, idx, taus, args.zwindow,
                                        samples=args.samples, seed=args.seed)
    sys.stdout.write(f"type: {idx.type_label()}\n")
    report.elapsed = time.monotonic() - started
    return _emit(report, args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superlie",
        description="Exact verification toolkit for Lie superalgebras, "
                    "root supersystems, and affinizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--field", choices=("Q", "Qi"), default=None)

    p = sub.add_parser("verify", help="run the full algebra pipeline")
    p.add_argument("path", help="JSON document or builtin:<name>")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="split a module into irreducibles")
    p.add_argument("path", help="JSON module document or builtin:<spec>")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("roots", help="print and check the root system")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("affinize", help="loop-affinize a verified algebra")
    p.add_argument("--base", default="builtin:osp12")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q", default=None, help="off-diagonal cocycle value")
    common(p)
    p.set_defaults(func=cmd_affinize)

    p = sub.add_parser("twist", help="order-4 twisted affinization")
    p.add_argument("--I", dest="i_dot", type=int, default=1)
    p.add_argument("--J", dest="j_dot", type=int, default=1)
    p.add_argument("--with-zero", action="store_true")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--window", type=int, default=2, help="torus degree radius")
    p.add_argument("--zwindow", type=int, default=4, help="Z-grading radius")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q", default=None)
    p.add_argument("--star-signs", type=int, nargs="*", default=None)
    common(p)
    p.set_defaults(func=cmd_twist)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "field", None) is None:
        args.field = "Qi" if args.command == "twist" else "Q"
    try:
        return args.func(args)
    except documents.DocumentError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"check error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
