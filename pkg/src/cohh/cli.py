"""Command line interface: ``cohh check | cohh | suite | make``.

Exit codes: 0 success, 1 mathematical failure (axiom violation, mismatch),
2 usage or parse error, including requests for quantities that are not
computed.  ``COHH_FIELD`` and ``COHH_MAX_DEGREE`` supply defaults for
``--field`` and ``--max-degree`` where a command builds its own input.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import io as cio
from .coalgebra import (KINDS, PresentationError, check_coalgebra, cogenerators,
                        named_coalgebra)
from .complex import cohh
from .field import Field, FieldError
from .graded import StructuralError, TruncationError
from .hkr import doi_resolution_check, hkr_compare, single_cogen_cycles
from .matching import verify_surjectivity
from .report import FORMATS, Table, emit, format_tensor, format_vector, provenance
from .spectral import (NotCertifiedError, NotComputedError, catalog, collapse_check,
                       convergence_check, e2_page, einfty_series, higher_differential)

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_field() -> str:
    return os.environ.get("COHH_FIELD", "F2")


def _default_degree() -> Optional[int]:
    v = os.environ.get("COHH_MAX_DEGREE")
    if v is None:
        return None
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"COHH_MAX_DEGREE must be an integer, got {v!r}") from None


def _field(text: Optional[str]) -> Field:
    try:
        return Field.parse(text or _default_field())
    except FieldError as e:
        raise UsageError(str(e)) from None


def _degree(value: Optional[int], fallback: int) -> int:
    if value is not None:
        return value
    env = _default_degree()
    return fallback if env is None else env


def _gens(specs: Sequence[str]) -> List[tuple]:
    out = []
    for spec in specs:
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            name, sep, deg = part.rpartition(":")
            if not sep or not name:
                raise UsageError(f"generator spec {part!r} must look like name:degree")
            try:
                out.append((name, int(deg)))
            except ValueError:
                raise UsageError(f"bad degree in {part!r}") from None
    if not out:
        raise UsageError("no generators given")
    return out


def _command_string(argv: Sequence[str]) -> str:
    parts = []
    it = iter(argv)
    for a in it:
        # output destinations do not affect the content
        if a in ("-o", "--output", "--figure"):
            next(it, None)
            continue
        if a.startswith(("--output=", "--figure=")):
            continue
        # inputs are identified by digest, so keep only the file name
        parts.append(Path(a).name if a.endswith(".json") else a)
    return "cohh " + " ".join(parts)


def _load(path: str):
    try:
        loaded = cio.load(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    return loaded


def _out(text: str, dest: Optional[str]) -> None:
    if dest:
        Path(dest).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# commands ---------------------------------------------------------------------------


def cmd_check(args, argv) -> int:
    loaded = _load(args.path)
    rep = check_coalgebra(loaded.coalgebra)
    rows = []
    for flag in rep.FLAGS:
        good = getattr(rep, flag)
        if flag == "cocommutative":
            status = "yes" if good else "no"
        else:
            status = "PASS" if good else "FAIL"
        rows.append([flag, status, ", ".join(map(str, rep.witnesses.get(flag, [])[:8]))])
    t = Table("coalgebra axioms", ["axiom", "status", "witnesses"], rows,
              provenance(_command_string(argv), loaded.digest,
                         f"valid for internal degree <= {loaded.coalgebra.D}"))
    _out(emit(t, args.emit), args.output)
    return EXIT_OK if rep.ok() else EXIT_MATH


def _require_axioms(c) -> Optional[int]:
    rep = check_coalgebra(c)
    if rep.ok():
        return None
    sys.stderr.write("input fails the coalgebra axioms:\n" + "\n".join(rep.lines()) + "\n")
    return EXIT_MATH


def cmd_cohh(args, argv) -> int:
    loaded = _load(args.path)
    c = loaded.coalgebra
    bad = _require_axioms(c)
    if bad is not None:
        return bad
    D = args.max_degree if args.max_degree is not None else c.D
    if D > c.D:
        raise UsageError(f"--max-degree {D} exceeds the file's max_degree {c.D}")
    S = args.max_s if args.max_s is not None else D
    res = cohh(c, D, S)
    prov = provenance(_command_string(argv), loaded.digest,
                      f"valid for internal degree <= {D}, cosimplicial degree <= {S}")
    notes = []
    if S < D:
        notes.append(f"partial: cosimplicial degrees above {S} not computed")
    F = c.field
    if res.dg:
        if args.bigraded:
            raise UsageError("input has an internal differential; only --total is available")
        rows = []
        for n, h in sorted(res.total.items()):
            row = [n, h.dim]
            if args.reps:
                row.append(" ; ".join(format_vector(F, {_tot_label(s, x): a
                                                        for (s, x), a in r.items()})
                                      for r in h.reps))
            rows.append(row)
        cols = ["n=s+t", "dim"] + (["representatives"] if args.reps else [])
        notes.append("total complex graded by s + t with differential d_h + (-1)^s d_v")
        t = Table("coHH total homology", cols, rows, prov, notes)
    elif args.total:
        rows = [[n, d, "yes" if ok else "no"] for n, (d, ok) in res.total_view().items()]
        notes.append("degree t - s; complete=no means cells beyond the window may contribute")
        t = Table("coHH by total degree", ["n=t-s", "dim", "complete"], rows, prov, notes)
    else:
        rows = []
        for (s, tt), d in res.dims().items():
            row = [s, tt, d]
            if args.reps:
                row.append(" ; ".join(format_vector(F, r) for r in res.reps(s, tt)))
            rows.append(row)
        cols = ["s", "t", "dim"] + (["representatives"] if args.reps else [])
        t = Table("coHH bigraded", cols, rows, prov, notes)
    _out(emit(t, args.emit), args.output)
    if args.figure and not res.dg:
        from .plotting import plot_bigraded
        plot_bigraded(res.dims(), args.figure, "coHH")
    return EXIT_OK


def _tot_label(s, x):
    return f"[{s}]" + format_tensor(x)


def suite_hkr(args, argv) -> int:
    F = _field(args.field)
    D = _degree(args.max_degree, 10)
    x = cogenerators(_gens(args.gens), D)
    rep = hkr_compare(x, F, D)
    rows = []
    for key in sorted(set(rep.computed) | set(rep.predicted)):
        a, b = rep.computed.get(key, 0), rep.predicted.get(key, 0)
        rows.append([key[0], key[1], a, b, "ok" if a == b else "MISMATCH"])
    verdict = "MATCH" if rep.match else "MISMATCH"
    t = Table(f"HKR comparison: {verdict}", ["s", "t", "coHH", "omega", "status"], rows,
              provenance(_command_string(argv), None, f"valid for internal degree <= {D}"))
    _out(emit(t, args.emit), args.output)
    return EXIT_OK if rep.match else EXIT_MATH


def suite_matching(args, argv) -> int:
    loaded = _load(args.input)
    c = loaded.coalgebra
    bad = _require_axioms(c)
    if bad is not None:
        return bad
    D = min(_degree(args.max_degree, c.D), c.D)
    rows = []
    ok = True
    for n in range(1, args.n + 1):
        rep = verify_surjectivity(c, n, D, trials=args.trials, seed=args.seed)
        ok = ok and rep.ok
        for tt in rep.degrees:
            rows.append([n, tt, rep.matching_dims[tt], rep.map_ranks[tt],
                         "surjective" if rep.matching_dims[tt] == rep.map_ranks[tt] else "FAIL"])
        for f in rep.failures:
            sys.stderr.write(f"counterexample: n={n} {f}\n")
    t = Table("matching map surjectivity: " + ("surjective with witnesses" if ok else "FAILED"),
              ["n", "t", "dim M_n", "rank", "status"], rows,
              provenance(_command_string(argv), loaded.digest, f"valid for internal degree <= {D}"))
    _out(emit(t, args.emit), args.output)
    return EXIT_OK if ok else EXIT_MATH


def _input_or_catalog(args):
    if getattr(args, "catalog", None):
        F = _field(args.field)
        D = _degree(args.max_degree, 12)
        return catalog(args.catalog, F, D), None
    if not args.input:
        raise UsageError("give --input FILE or --catalog NAME")
    loaded = _load(args.input)
    return loaded.coalgebra, loaded.digest


def suite_e2(args, argv) -> int:
    h, digest = _input_or_catalog(args)
    bad = _require_axioms(h)
    if bad is not None:
        return bad
    D = min(_degree(args.max_degree, h.D), h.D)
    page = e2_page(h, D, with_coproduct=args.coproduct)
    rows = [[s, t, d] for (s, t), d in page.dims().items()]
    notes = []
    if page.cogenerator_bidegrees:
        notes.append(f"cogenerator bidegrees {page.cogenerator_bidegrees}")
    if page.coproduct is not None:
        cp = page.coproduct
        notes.append("coproduct coassociative: " + ("yes" if not cp.coassociative() else "no"))
        notes.append("coproduct counital: " + ("yes" if not cp.counital() else "no"))
        if cp.overflow:
            notes.append(f"truncation overflow for classes {cp.overflow}")
    t = Table("E2 page", ["s", "t", "dim"], rows,
              provenance(_command_string(argv), digest, f"valid for internal degree <= {D}"), notes)
    _out(emit(t, args.emit), args.output)
    if args.figure:
        from .plotting import plot_bigraded
        plot_bigraded(page.dims(), args.figure, "E2")
    return EXIT_OK


def suite_collapse(args, argv) -> int:
    h, digest = _input_or_catalog(args)
    v = collapse_check(h)
    rows = [[i + 1, line] for i, line in enumerate(v.justification)]
    t = Table(v.headline(), ["step", "justification"], rows,
              provenance(_command_string(argv), digest, f"valid for internal degree <= {h.D}"))
    _out(emit(t, args.emit), args.output)
    return EXIT_OK


def suite_catalog(args, argv) -> int:
    F = _field(args.field)
    D = _degree(args.max_degree, 12)
    h = catalog(args.name, F, D)
    v = collapse_check(h)
    if not v.collapses:
        sys.stderr.write(v.headline() + "\n")
        return EXIT_MATH
    series = einfty_series(h, args.max_total)
    rows = [[n, d] for n, d in series.items()]
    t = Table(f"E_infinity series for {args.name}: {v.headline()}", ["n=t-s", "dim"], rows,
              provenance(_command_string(argv), None, f"total degree <= {args.max_total}"),
              ["series of Γ[x_i] ⊗ Λ(z_i), z_i in total degree |x_i| - 1"])
    _out(emit(t, args.emit), args.output)
    return EXIT_OK


def suite_cycles(args, argv) -> int:
    F = _field(args.field)
    D = _degree(args.max_degree, 12)
    rep = single_cogen_cycles(args.degree, F, D)
    rows = [[s, t, format_vector(F, v)] for (s, t), v in sorted(rep.cycles.items())]
    t = Table("explicit cycles (closed, homology basis verified)", ["s", "t", "cycle"], rows,
              provenance(_command_string(argv), None, f"valid for internal degree <= {D}"))
    _out(emit(t, args.emit), args.output)
    return EXIT_OK


def suite_doi(args, argv) -> int:
    F = _field(args.field)
    D = _degree(args.max_degree, 8)
    rep = doi_resolution_check(args.degree, F, D)
    rows = [[t] + list(r) for t, r in sorted(rep.ranks.items())]
    t = Table("two-step resolution: " + ("exact" if rep.exact else "NOT exact"),
              ["t", "dim S", "dim S⊗S", "dim S⊗X⊗S", "rank Δ", "rank f"], rows,
              provenance(_command_string(argv), None, f"valid for internal degree <= {D}"),
              rep.failures)
    _out(emit(t, args.emit), args.output)
    return EXIT_OK if rep.exact else EXIT_MATH


def suite_differential(args, argv) -> int:
    higher_differential(None, args.r)
    return EXIT_OK


def suite_convergence(args, argv) -> int:
    convergence_check(None)
    return EXIT_OK


def cmd_make(args, argv) -> int:
    F = _field(args.field)
    D = _degree(args.max_degree, 8)
    if args.catalog:
        c = catalog(args.catalog, F, D)
    else:
        if not args.kind or not args.gens:
            raise UsageError("give --catalog NAME or --kind KIND --gens name:deg,...")
        c = named_coalgebra(args.kind, _gens(args.gens), F, D)
    _out(cio.dumps(c), args.output)
    return EXIT_OK


# parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cohh", description="Exact coHochschild homology of coalgebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, emit=True):
        if emit:
            sp.add_argument("--emit", choices=FORMATS, default="table")
        sp.add_argument("-o", "--output", help="write the table here instead of stdout")

    sp = sub.add_parser("check", help="check the coalgebra axioms of a file")
    sp.add_argument("path")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("cohh", help="coHochschild homology of a coalgebra file")
    sp.add_argument("path")
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--max-s", type=int, help="largest cosimplicial degree (default: max degree)")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--bigraded", action="store_true", help="table by (s, t) (default)")
    g.add_argument("--total", action="store_true", help="table by total degree")
    sp.add_argument("--reps", action="store_true", help="include representative cycles")
    sp.add_argument("--figure", help="also render the bigraded table to this image file")
    common(sp)
    sp.set_defaults(func=cmd_cohh)

    sp = sub.add_parser("suite", help="verification suites")
    ss = sp.add_subparsers(dest="suite", required=True)

    q = ss.add_parser("hkr", help="compare coHH(S^c(X)) with the HKR prediction")
    q.add_argument("--gens", action="append", required=True, help="name:degree[,name:degree...]")
    q.add_argument("--field")
    q.add_argument("--max-degree", type=int)
    common(q)
    q.set_defaults(func=suite_hkr)

    q = ss.add_parser("matching", help="constructive surjectivity of matching maps")
    q.add_argument("--input", required=True)
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--max-degree", type=int)
    q.add_argument("--trials", type=int, default=10)
    q.add_argument("--seed", type=int, default=0)
    common(q)
    q.set_defaults(func=suite_matching)

    for name, fn, hlp in (("e2", suite_e2, "E2 page of the coBoekstedt spectral sequence"),
                          ("collapse", suite_collapse, "collapse certificate")):
        q = ss.add_parser(name, help=hlp)
        q.add_argument("--input")
        q.add_argument("--catalog", help="e.g. BU(2), BSU(3), BSp(1), CPinfPower(2)")
        q.add_argument("--field")
        q.add_argument("--max-degree", type=int)
        if name == "e2":
            q.add_argument("--coproduct", action="store_true")
            q.add_argument("--figure")
        common(q)
        q.set_defaults(func=fn)

    q = ss.add_parser("catalog", help="E_infinity series of a catalog entry")
    q.add_argument("--name", required=True)
    q.add_argument("--field")
    q.add_argument("--max-degree", type=int)
    q.add_argument("--max-total", type=int, default=12)
    common(q)
    q.set_defaults(func=suite_catalog)

    q = ss.add_parser("cycles", help="explicit cycles for one cogenerator")
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--field")
    q.add_argument("--max-degree", type=int)
    common(q)
    q.set_defaults(func=suite_cycles)

    q = ss.add_parser("doi", help="exactness of the two-step resolution")
    q.add_argument("--degree", type=int, default=2)
    q.add_argument("--field")
    q.add_argument("--max-degree", type=int)
    common(q)
    q.set_defaults(func=suite_doi)

    q = ss.add_parser("differential", help="higher differentials (not computed)")
    q.add_argument("--input")
    q.add_argument("--r", type=int, default=2)
    q.set_defaults(func=suite_differential)

    q = ss.add_parser("convergence", help="convergence (not computed)")
    q.add_argument("--input")
    q.set_defaults(func=suite_convergence)

    sp = sub.add_parser("make", help="write a coalgebra file")
    sp.add_argument("--kind", choices=KINDS)
    sp.add_argument("--gens", action="append")
    sp.add_argument("--catalog")
    sp.add_argument("--field")
    sp.add_argument("--max-degree", type=int)
    common(sp, emit=False)
    sp.set_defaults(func=cmd_make)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args, argv)
    except NotComputedError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except cio.ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_USAGE
    except (UsageError, FieldError, TruncationError, PresentationError, NotCertifiedError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except StructuralError as e:
        sys.stderr.write(f"structural failure: {e}\n")
        return EXIT_MATH
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
