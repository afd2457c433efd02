"""Command line front end.

Exit codes: 0 success / property holds, 1 property fails or infeasible,
2 bad input or usage, 3 a size bound was exceeded.

Settings come from (lowest to highest priority) built-in defaults, a JSON
config file given with ``--config``, the environment variables
``CHARBETTI_SCAN_BOUND``, ``CHARBETTI_JOBS`` and ``CHARBETTI_PRIMES``
(comma separated), and explicit flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .betti import (
    DEFAULT_SCAN_BOUND,
    IDEAL,
    QUOTIENT,
    betti_table,
    cancellation_feasible,
    char_dependence_scan,
    is_componentwise_linear,
)
from .complex import is_vertex_decomposable, sr_complex
from .constructions import bipartite_from_complex, cone_tilde, whisker_all
from .errors import CapacityError, CharBettiError
from .fileio import (
    covers_from_json,
    format_complex,
    format_ideal,
    g_sets_from_json,
    read_betti,
    read_complex,
    read_ideal,
)
from .homology import homology_groups_Z, torsion_primes_of
from .ideal import FieldSpec

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3

DEFAULTS = {"scan_bound": DEFAULT_SCAN_BOUND, "jobs": 1, "primes": [2, 3, 5, 7]}


def load_settings(config_path=None, environ=None) -> dict:
    settings = dict(DEFAULTS)
    if config_path:
        data = json.loads(Path(config_path).read_text())
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise CharBettiError(f"unknown config keys: {sorted(unknown)}")
        settings.update(data)
    env = os.environ if environ is None else environ
    if env.get("CHARBETTI_SCAN_BOUND"):
        settings["scan_bound"] = int(env["CHARBETTI_SCAN_BOUND"])
    if env.get("CHARBETTI_JOBS"):
        settings["jobs"] = int(env["CHARBETTI_JOBS"])
    if env.get("CHARBETTI_PRIMES"):
        settings["primes"] = [int(p) for p in env["CHARBETTI_PRIMES"].split(",") if p.strip()]
    for p in settings["primes"]:
        FieldSpec(p)
    return settings


def _emit(obj):
    obj = {"schema": SCHEMA_VERSION, **obj}
    print(json.dumps(obj, indent=2))


def _scan_kw(args, settings):
    return {
        "jobs": args.jobs if args.jobs is not None else settings["jobs"],
        "bound": args.bound if args.bound is not None else settings["scan_bound"],
        "allow_large": args.allow_large,
    }


def cmd_table(args, settings):
    I = read_ideal(args.file)
    F = FieldSpec.parse(args.char)
    table = betti_table(I, F, args.module, **_scan_kw(args, settings))
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA_VERSION, **table.to_json()}))
    else:
        sys.stdout.write(table.render())
    return EXIT_OK


def cmd_scan(args, settings):
    I = read_ideal(args.file)
    report = char_dependence_scan(I, early_exit=args.early_exit, **_scan_kw(args, settings))
    payload = {"schema": SCHEMA_VERSION, **report.to_json()}
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _read_complex_or_ideal(path):
    """Complex files are taken as they are; ideal files via their Stanley-Reisner complex."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        is_ideal = "vars" in json.loads(text)
    else:
        first = next((ln.split("#", 1)[0].split() for ln in text.splitlines()
                      if ln.split("#", 1)[0].strip()), [""])
        is_ideal = first[0] == "ring"
    return sr_complex(read_ideal(path)) if is_ideal else read_complex(path)


def cmd_check(args, settings):
    if args.vertex_decomposable:
        delta = _read_complex_or_ideal(args.vertex_decomposable)
        res = is_vertex_decomposable(delta)
        _emit({
            "check": "vertex-decomposable",
            "holds": res.decomposable,
            "witness": res.witness.to_json() if res.witness else None,
        })
        return EXIT_OK if res.decomposable else EXIT_FAIL
    if args.componentwise_linear:
        I = read_ideal(args.componentwise_linear)
        chars = [int(args.char)] if args.char is not None else [0] + settings["primes"]
        results = []
        for c in chars:
            rep = is_componentwise_linear(I, FieldSpec(c), **_scan_kw(args, settings))
            results.append({
                "char": c,
                "holds": rep.linear,
                "checked": [[t, ok] for t, ok in rep.checked],
                "first_failure": rep.first_failure,
                "bound": rep.bound,
            })
        holds = all(r["holds"] for r in results)
        _emit({"check": "componentwise-linear", "holds": holds, "results": results})
        return EXIT_OK if holds else EXIT_FAIL
    if args.cancellation:
        src, dst = (read_betti(p) for p in args.cancellation)
        steps = cancellation_feasible(src, dst)
        _emit({
            "check": "cancellation",
            "feasible": steps is not None,
            "steps": [s.to_json() for s in steps] if steps is not None else None,
        })
        return EXIT_OK if steps is not None else EXIT_FAIL
    if args.homology:
        delta = _read_complex_or_ideal(args.homology)
        groups = homology_groups_Z(delta)
        _emit({
            "check": "homology",
            "groups": {str(k): {**g.to_json(), "text": str(g)} for k, g in groups.items()},
            "torsion_primes": sorted(torsion_primes_of(groups)),
        })
        return EXIT_OK
    raise CharBettiError("check needs one of --vertex-decomposable, "
                         "--componentwise-linear, --cancellation, --homology")


def _write(out_dir, name, text, written):
    path = Path(out_dir) / name
    path.write_text(text)
    written.append(str(path))


def cmd_construct(args, settings):
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if args.whisker_all:
        I = read_ideal(args.whisker_all)
        J = whisker_all(I)
        stem = args.name or Path(args.whisker_all).stem + "_whiskered"
        _write(out, f"{stem}.ideal", format_ideal(J), written)
        prov = {J.ring[I.nvars + v]: I.ring[v] for v in range(I.nvars)}
        _write(out, f"{stem}.provenance.json", json.dumps({"whiskers": prov}, indent=2) + "\n", written)
        _emit({"construct": "whisker-all", "written": written, "nvars": J.nvars})
        return EXIT_OK
    if args.complex is None:
        raise CharBettiError("--bipartite and --cone-tilde need --complex FILE")
    gamma = read_complex(args.complex)
    stem = args.name or Path(args.complex).stem
    if args.bipartite:
        G = g_sets_from_json(Path(args.covers).read_text()) if args.covers else None
        inst = bipartite_from_complex(gamma, G)
        _write(out, f"{stem}_bipartite.ideal", format_ideal(inst.ideal), written)
        _write(out, f"{stem}_delta.complex", format_complex(inst.delta), written)
        _write(out, f"{stem}_delta_prime.complex", format_complex(inst.delta_prime), written)
        _write(out, f"{stem}_gamma.ideal", format_ideal(inst.ideal_gamma), written)
        _write(out, f"{stem}_bipartite.provenance.json",
               json.dumps({"G": inst.provenance()}, indent=2) + "\n", written)
        _emit({"construct": "bipartite", "written": written,
               "nvars": len(inst.ideal.ring), "ngens": len(inst.ideal.gens)})
        return EXIT_OK
    if args.cone_tilde:
        if not args.covers:
            raise CharBettiError("--cone-tilde needs --covers FILE")
        covers = covers_from_json(Path(args.covers).read_text(), gamma)
        tilde = cone_tilde(gamma, covers)
        _write(out, f"{stem}_tilde.complex", format_complex(tilde), written)
        prov = {tilde.vertices[gamma.nvertices + j]: c.facet_names() for j, c in enumerate(covers)}
        prov = {y: [list(f) for f in fs] for y, fs in prov.items()}
        _write(out, f"{stem}_tilde.provenance.json", json.dumps({"covers": prov}, indent=2) + "\n", written)
        _emit({"construct": "cone-tilde", "written": written, "nvertices": tilde.nvertices})
        return EXIT_OK
    raise CharBettiError("construct needs one of --whisker-all, --bipartite, --cone-tilde")


def _add_scan_flags(p):
    p.add_argument("--jobs", type=int, default=None, help="worker processes for subset scans")
    p.add_argument("--bound", type=int, default=None, help="max variables for subset scans")
    p.add_argument("--allow-large", action="store_true", help="ignore the scan bound")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="charbetti",
        description="Betti tables of monomial ideals and their dependence on the characteristic.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="JSON config file (scan_bound, jobs, primes)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print a graded Betti table")
    p.add_argument("file", help="ideal file (text or JSON)")
    p.add_argument("--char", default="0", help="0 or a prime")
    p.add_argument("--module", choices=[QUOTIENT, IDEAL], default=QUOTIENT)
    p.add_argument("--format", choices=["ascii", "json"], default="ascii")
    _add_scan_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scan", help="find subsets whose restriction has torsion")
    p.add_argument("file")
    p.add_argument("--early-exit", action="store_true")
    p.add_argument("--out", help="also write the report to this JSON file")
    _add_scan_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("check", help="check a property")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--vertex-decomposable", metavar="FILE")
    g.add_argument("--componentwise-linear", metavar="FILE")
    g.add_argument("--cancellation", nargs=2, metavar=("FROM", "TO"))
    g.add_argument("--homology", metavar="FILE")
    p.add_argument("--char", default=None)
    _add_scan_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="build whiskered, bipartite or coned instances")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--whisker-all", metavar="IDEAL")
    g.add_argument("--bipartite", action="store_true")
    g.add_argument("--cone-tilde", action="store_true")
    p.add_argument("--complex", metavar="FILE")
    p.add_argument("--covers", metavar="FILE",
                   help='JSON: {"G": [[...]]} for --bipartite, {"covers": [[[...]]]} for --cone-tilde')
    p.add_argument("--out-dir", default=".")
    p.add_argument("--name", help="stem for output file names")
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(args.config)
        return args.func(args, settings)
    except CapacityError as exc:
        print(f"charbetti: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (CharBettiError, OSError, ValueError) as exc:
        print(f"charbetti: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
