"""Command-line interface binding the modules into batch workflows.

Exit codes form a stable contract: 0 success / verified, 1 verification
failure (a mathematical counterexample, violation or unrecognized
graph), 2 input error, 3 configuration error.  Rationals are always
serialized as "p/q".  Every run emits a manifest describing the
configuration and input hashes; reports are deterministic given the
manifest.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classify import classify, forbidden_pair_check, membership, propagation_check
from .curvature import edge_curvatures
from .enumeration import (
    cross_check_engines,
    verify_classification,
    verify_ollivier_classification,
    verify_scheme_equivalence,
)
from .exceptions import BadParamError, RicciError, WrongSchemeError
from .families import (
    Family,
    QuasiLadderSpec,
    gen_cycle,
    gen_infinite_window,
    gen_mobius,
    gen_particular,
    gen_path,
    gen_prism,
    gen_quasi_ladder,
)
from .graphio import emit_graph6, parse_graph_file
from .graphs import WeightScheme, diameter_path
from .harmonic import liouville_window_check

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2
EXIT_CONFIG = 3


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _hash_file(path: str) -> str:
    digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return f"sha256:{digest}"


def _manifest(subcommand: str, config: dict, inputs: dict, outputs: list) -> dict:
    return {
        "tool": "ricci3",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "inputs": inputs,
        "outputs": outputs,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_graph(path: str, scheme: str | None):
    text = Path(path).read_text(encoding="utf-8")
    g = parse_graph_file(text)
    if scheme is not None and g.scheme.value != scheme:
        if g.scheme is WeightScheme.COMBINATORIAL:
            g = g.with_scheme(WeightScheme(scheme))
        else:
            raise WrongSchemeError(
                f"input declares scheme {g.scheme.value}, got --scheme {scheme}"
            )
    return g


def cmd_curvature(args) -> int:
    scheme = args.scheme
    engine = args.engine
    if engine == "transport" and scheme != "combinatorial":
        raise WrongSchemeError("the transport engine needs --scheme combinatorial")
    if engine == "ollivier" and scheme != "normalized":
        raise WrongSchemeError("the non-lazy engine needs --scheme normalized")
    g = _read_graph(args.infile, scheme)
    values = edge_curvatures(g, engine)
    rows = [
        {"edge": [u, v], "kappa": _frac(k)} for (u, v), k in sorted(values.items())
    ]
    manifest = _manifest(
        "curvature",
        {"scheme": scheme, "engine": engine, "format": args.format},
        {args.infile: _hash_file(args.infile)},
        [args.out] if args.out else [],
    )
    if args.format == "csv":
        lines = ["u,v,kappa"] + [f"{r['edge'][0]},{r['edge'][1]},{r['kappa']}" for r in rows]
        text = "\n".join(lines) + "\n"
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        sys.stderr.write(json.dumps(manifest) + "\n")
    else:
        _emit(
            {
                "scheme": scheme,
                "engine": engine,
                "edges": rows,
                "min": _frac(min(values.values())),
                "manifest": manifest,
            },
            args.out,
        )
    return EXIT_OK


def cmd_generate(args) -> int:
    family = args.family
    if family == "path":
        g = gen_path(args.n)
        descriptor = {"kind": "path", "length": args.n}
    elif family == "cycle":
        g = gen_cycle(args.n)
        descriptor = {"kind": "cycle", "n": args.n}
    elif family == "prism":
        g = gen_prism(args.k)
        descriptor = {"kind": "prism", "k": args.k}
    elif family == "mobius":
        g = gen_mobius(args.k)
        descriptor = {"kind": "mobius_ladder", "k": args.k}
    elif family == "particular":
        g = gen_particular()
        descriptor = {"kind": "particular"}
    elif family == "quasi-ladder":
        spec = QuasiLadderSpec(args.core, args.left, args.right, args.flip_right)
        g = gen_quasi_ladder(spec)
        descriptor = {
            "kind": "quasi_ladder",
            "core_rungs": args.core,
            "left_form": args.left,
            "right_form": args.right,
            "flip_right": args.flip_right,
        }
    else:  # window
        w = gen_infinite_window(args.kind, args.width)
        g = w.graph
        descriptor = {
            "kind": "infinite_window",
            "window_kind": w.kind,
            "width": w.width,
            "boundary": sorted(w.boundary),
            "interior_edges": sorted(map(list, w.interior_edges)),
        }
    g6 = emit_graph6(g)
    if args.out:
        Path(args.out).write_text(g6 + "\n", encoding="utf-8")
    manifest = _manifest(
        "generate", descriptor, {}, [args.out] if args.out else []
    )
    _emit({"graph6": g6, "n": g.n, "descriptor": descriptor, "manifest": manifest}, None)
    return EXIT_OK


def cmd_classify(args) -> int:
    g = _read_graph(args.infile, None)
    m = membership(g)
    desc = classify(g, require_membership=False)
    report = {
        "membership": {
            "max_degree_ok": m.max_degree_ok,
            "min_curvature": _frac(m.min_curvature) if m.min_curvature is not None else None,
            "diameter": m.diameter,
            "in_class": m.in_class,
        },
        "family": desc.to_json(),
        "manifest": _manifest(
            "classify", {}, {args.infile: _hash_file(args.infile)}, []
        ),
    }
    _emit(report, args.out)
    if not m.in_class or desc.kind is Family.UNRECOGNIZED:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_verify(args) -> int:
    task = args.task
    runner = {
        "classification": verify_classification,
        "scheme-equivalence": verify_scheme_equivalence,
        "engines": cross_check_engines,
        "ollivier": verify_ollivier_classification,
    }[task]
    report = runner(args.n, jobs=args.jobs)
    payload = report.to_json()
    payload["manifest"] = _manifest(
        "verify", {"task": task, "n": args.n, "jobs": args.jobs}, {}, []
    )
    _emit(payload, args.out)
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def cmd_liouville(args) -> int:
    report = liouville_window_check(args.width)
    report["manifest"] = _manifest("liouville", {"width": args.width}, {}, [])
    _emit(report, args.out)
    return EXIT_OK if report["ok"] else EXIT_COUNTEREXAMPLE


def cmd_local_structure(args) -> int:
    g = _read_graph(args.infile, None)
    path = diameter_path(g)
    rep = forbidden_pair_check(g, path)
    prop_ok = propagation_check(g, path) if len(path) >= 5 else True
    payload = {
        "diameter_path": list(rep.path),
        "windows": [
            {
                "index": w.index,
                "pair": list(w.pair),
                "template": w.template,
                "long_path_template": w.template_long,
            }
            for w in rep.windows
        ],
        "violations": len(rep.violations),
        "propagation_ok": prop_ok,
        "manifest": _manifest(
            "local-structure", {}, {args.infile: _hash_file(args.infile)}, []
        ),
    }
    _emit(payload, args.out)
    return EXIT_OK if rep.ok and prop_ok else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ricci3",
        description="Exact Ricci-curvature toolkit for graphs of maximum degree 3.",
    )
    top.add_argument("--version", action="version", version=f"ricci3 {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curvature", help="per-edge curvature table")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--scheme", choices=["combinatorial", "normalized"],
                   default="combinatorial")
    p.add_argument("--engine", choices=["auto", "transport", "ot-limit", "ollivier"],
                   default="auto")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(run=cmd_curvature)

    p = sub.add_parser("generate", help="emit a family member as graph6")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("path"); q.add_argument("--n", type=int, required=True)
    q = fam.add_parser("cycle"); q.add_argument("--n", type=int, required=True)
    q = fam.add_parser("prism"); q.add_argument("--k", type=int, required=True)
    q = fam.add_parser("mobius"); q.add_argument("--k", type=int, required=True)
    fam.add_parser("particular")
    q = fam.add_parser("quasi-ladder")
    q.add_argument("--core", type=int, required=True)
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.add_argument("--flip-right", action="store_true", dest="flip_right")
    q = fam.add_parser("window")
    q.add_argument("--kind", required=True)
    q.add_argument("--width", type=int, required=True)
    for q in fam.choices.values():
        q.add_argument("--out")
    p.set_defaults(run=cmd_generate)

    p = sub.add_parser("classify", help="recognize the family of a graph")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("verify", help="exhaustive desk-scale verification")
    p.add_argument("task", choices=["classification", "scheme-equivalence",
                                    "engines", "ollivier"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("liouville", help="ladder-window recurrence checks")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(run=cmd_liouville)

    p = sub.add_parser("local-structure", help="state-pair checks on a diameter path")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(run=cmd_local_structure)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (WrongSchemeError, BadParamError) as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return EXIT_CONFIG
    except (RicciError, OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
