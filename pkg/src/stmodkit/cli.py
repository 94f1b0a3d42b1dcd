"""stmodkit <cmd> --in FILE --out FILE [--range A..B] [--seed N] [--window W]

Exit codes: 0 ok, 1 invalid input (JSON diagnostic on stderr), 2 InvariantViolation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import InvariantViolation, InvalidModule, StModError, TooLarge

COMMANDS = ("analyze", "filtrate", "cohomology", "decompose", "duality", "randomgen", "selftest", "diagram")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stmodkit", description="Modules, Tate cohomology and filtrations.")
    p.add_argument("cmd", choices=COMMANDS)
    p.add_argument("--in", dest="inputs", action="append", default=[], metavar="FILE",
                   help="module file (duality takes two)")
    p.add_argument("--out", metavar="FILE", help="output file (default: stdout)")
    p.add_argument("--range", dest="range_", metavar="A..B", help="degree range")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=int, help="Tate window size (default: $STMODKIT_WINDOW or 13)")
    # randomgen
    p.add_argument("--case", default="A", help="randomgen: A or B (or D, A4)")
    p.add_argument("--r", type=int, default=1, help="randomgen: case A exponent")
    p.add_argument("--construction", default="mixed",
                   choices=["mixed", "submodule_of_free", "quotient", "extension", "syzygy"])
    p.add_argument("--copies", type=int, default=1, help="randomgen: free summands to start from")
    p.add_argument("--max-dim", type=int, default=40)
    p.add_argument("--pieces", default="", help="randomgen extension pieces, e.g. 'ε,P_ε'")
    # diagram
    p.add_argument("--format", default="dot", choices=["dot", "ascii", "json"], help="diagram output format")
    # selftest
    p.add_argument("--only", default="", help="selftest: comma-separated criterion numbers")
    return p


def parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"range must look like A..B, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _window(args) -> tuple[int, int]:
    from .cohomology import window_range

    try:
        return window_range(args.window)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _load(args, count: int = 1):
    from .io import read_module

    if len(args.inputs) != count:
        raise UsageError(f"{args.cmd} needs exactly {count} --in file(s), got {len(args.inputs)}")
    out = []
    for path in args.inputs:
        if not Path(path).exists() or Path(path).is_dir():
            raise UsageError(f"no such file: {path}")
        out.append(read_module(path))
    return out


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(args, obj):
    from .io import canonical_json

    _emit(args, canonical_json(obj))


# -- commands --------------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    from .calculus import dim_hom_from_trivial, dim_hom_to_trivial, eigen_part, loewy_length, radical, radical_series
    from .calculus import socle, socle_series
    from .projectives import d_invariant, strip_projectives

    (m,) = _load(args)
    a = m.algebra
    soc, rad = socle(m), radical(m)
    report = {
        "algebra": a.descriptor(),
        "label": m.label,
        "dim": m.dim,
        "eigenspaces": {a.simple_name(l): m.eigenspace(l).dim for l in a.eigenvalues},
        "socle_dim": soc.dim,
        "socle_factors": {a.simple_name(l): eigen_part(m, soc, l).dim for l in a.eigenvalues},
        "radical_dim": rad.dim,
        "top_factors": {a.simple_name(l): m.eigenspace(l).dim - eigen_part(m, rad, l).dim for l in a.eigenvalues},
        "radical_series": [s.dim for s in radical_series(m)],
        "socle_series": [s.dim for s in socle_series(m)],
        "loewy_length": loewy_length(m),
        "hom_from_k": dim_hom_from_trivial(m),
        "hom_to_k": dim_hom_to_trivial(m),
    }
    if a.case in ("A", "B", "D", "A4"):
        report["d"] = d_invariant(m)
    if a.case in ("A", "B"):
        core, rep = strip_projectives(m)
        report["projective_summands"] = rep.projective_part()
        report["core_dim"] = core.dim
    _json(args, report)
    return 0


def cmd_filtrate(args) -> int:
    from .solver import solve, verify_filtration

    (m,) = _load(args)
    if m.algebra.case not in ("A", "B"):
        raise UsageError(f"filtrate needs a case A or B module, got {m.algebra.case}")
    res = solve(m)
    lo, hi = _window(args)
    out = res.to_json()
    out["verification"] = verify_filtration(m, res, hi - lo + 1).to_json()
    _json(args, out)
    return 0


def cmd_cohomology(args) -> int:
    from .cohomology import tate_cohomology

    (m,) = _load(args)
    lo, hi = parse_range(args.range_) if args.range_ else _window(args)
    _json(args, tate_cohomology(m, lo, hi).to_json())
    return 0


def cmd_decompose(args) -> int:
    from .errors import UnclassifiedSummand
    from .projectives import decompose_restriction, strip_projectives

    (m,) = _load(args)
    out = {}
    if m.algebra.case in ("A", "B"):
        core, rep = strip_projectives(m)
        out["kG"] = rep.to_json()
    try:
        out["restriction"] = decompose_restriction(m).to_json()
    except UnclassifiedSummand as e:
        out["restriction"] = {"error": "UnclassifiedSummand", "message": str(e)}
    _json(args, out)
    return 0


def cmd_duality(args) -> int:
    from .cohomology import duality_check

    m, n = _load(args, 2)
    if m.algebra.descriptor() != n.algebra.descriptor():
        raise UsageError("the two modules are over different algebras")
    lo, hi = parse_range(args.range_) if args.range_ else (-4, 4)
    _json(args, duality_check(m, n, lo, hi).to_json())
    return 0


def cmd_randomgen(args) -> int:
    from .io import module_to_json
    from .random_modules import RandomSpec, random_module, random_subalgebra_module
    from .algebra import presentation_from_descriptor

    if not 0 <= args.max_dim <= 64:
        raise UsageError("--max-dim must be between 0 and 64")
    desc = {"case": args.case, "r": args.r} if args.case == "A" else {"case": args.case}
    try:
        a = presentation_from_descriptor(desc)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if a.case in ("D", "A4"):
        m = random_subalgebra_module(a, args.seed, min(args.max_dim, 12))
    else:
        pieces = [p for p in args.pieces.split(",") if p]
        construction = "extension" if pieces and args.construction == "mixed" else args.construction
        try:
            m = random_module(RandomSpec(args.seed, construction, args.copies, pieces, args.max_dim, desc))
        except ValueError as e:
            raise UsageError(str(e)) from None
    _emit(args, module_to_json(m))
    return 0


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    only = {int(x) for x in args.only.split(",") if x.strip()} if args.only else None
    results = run_all(echo=lambda line: print(line, flush=True), only=only)
    if args.out:
        from .io import write_json

        write_json({"passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}, args.out)
    return 0 if all(r.passed for r in results) else 3


def cmd_diagram(args) -> int:
    from .diagram import loewy_diagram, to_ascii, to_dot

    (m,) = _load(args)
    d = loewy_diagram(m)
    if args.format == "ascii":
        _emit(args, to_ascii(d))
    elif args.format == "json":
        _json(args, d.to_json())
    else:
        _emit(args, to_dot(d, m.field.symbol))
    return 0


HANDLERS = {
    "analyze": cmd_analyze,
    "filtrate": cmd_filtrate,
    "cohomology": cmd_cohomology,
    "decompose": cmd_decompose,
    "duality": cmd_duality,
    "randomgen": cmd_randomgen,
    "selftest": cmd_selftest,
    "diagram": cmd_diagram,
}


def _glue_range(argv: list) -> list:
    """`--range -2..2` would read as an option; glue the value on."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--range" and i + 1 < len(argv):
            out.append(f"--range={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _diagnostic(kind: str, message: str, **extra) -> str:
    from .io import canonical_json

    return canonical_json({"error": kind, "message": message, **extra})


def main(argv=None) -> int:
    argv = _glue_range(list(sys.argv[1:] if argv is None else argv))
    try:
        args = _parser().parse_args(argv)
        return HANDLERS[args.cmd](args)
    except InvariantViolation as e:
        sys.stderr.write(_diagnostic("InvariantViolation", str(e), step=e.step))
        return 2
    except InvalidModule as e:
        sys.stderr.write(_diagnostic("InvalidModule", str(e), violations=e.violations))
        return 1
    except (UsageError, TooLarge) as e:
        sys.stderr.write(_diagnostic(type(e).__name__, str(e)))
        return 1
    except StModError as e:
        sys.stderr.write(_diagnostic(type(e).__name__, str(e)))
        return 1
    except (OSError, json.JSONDecodeError) as e:
        sys.stderr.write(_diagnostic(type(e).__name__, str(e)))
        return 1


if __name__ == "__main__":
    sys.exit(main())
