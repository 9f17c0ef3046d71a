"""Command-line front end.

Subcommands: ``check`` (validate any domain object), ``convert`` (the
bridges between the three classifications), ``enumerate`` / ``emit-table``
(small-rank classification), ``ews`` (extended-weight-semigroup
generators and invariants), and ``report`` (delimited output plus fan
figures).

Exit codes: 0 success / valid, 1 validation failure (with a per-axiom
report on stdout), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from spherica import ars as ars_mod
from spherica import ews as ews_mod
from spherica import luna, serialize, tables
from spherica.admissible import (
    AdmissibleMap,
    admissible_from_system,
    spherical_system_of_admissible,
    validate_admissible,
    validate_enriques,
    build_fan_eta,
)
from spherica.enumeration import DEFAULT_RANK_BOUND, EnumerationError, enumerate_cuspidal_systems
from spherica.rootsys import RootSystemError, build_root_system
from spherica.serialize import InputError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_MALFORMED):
        super().__init__(message)
        self.code = code


def _rank_bound(args) -> int:
    if args.rank_bound is not None:
        return args.rank_bound
    env = os.environ.get("SPHERICA_RANK_BOUND")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise CliError(f"SPHERICA_RANK_BOUND is not an integer: {env!r}") from exc
    return DEFAULT_RANK_BOUND


def _load_doc(args) -> dict:
    if getattr(args, "input", None):
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {args.input}: {exc}") from exc
    elif getattr(args, "json", None):
        text = args.json
    elif getattr(args, "matrix", None) and getattr(args, "type", None):
        try:
            matrix = json.loads(args.matrix)
        except json.JSONDecodeError as exc:
            raise CliError(f"--matrix is not valid JSON: {exc}") from exc
        return {"kind": "admissible", "diagram": args.type, "matrix": matrix}
    else:
        raise CliError("provide --input, --json, or --type with --matrix")
    try:
        return serialize.load_document(text)
    except InputError as exc:
        raise CliError(str(exc)) from exc


def _build(doc):
    try:
        return serialize.object_from_doc(doc)
    except (InputError, RootSystemError, ValueError) as exc:
        raise CliError(str(exc)) from exc


def cmd_check(args) -> int:
    doc = _load_doc(args)
    if doc["kind"] != args.what:
        raise CliError(f"input kind {doc['kind']!r} does not match {args.what!r}")
    obj = _build(doc)
    if args.what == "diagram":
        print(f"diagram {obj} is valid (rank {obj.rank})")
        return EXIT_OK
    if args.what in ("system", "hsd"):
        report = luna.validate_hsd(obj)
    elif args.what == "admissible":
        report = validate_admissible(obj)
    elif args.what == "ars":
        if isinstance(obj, ars_mod.ExtendedARSSet):
            report = ars_mod.validate_extended(obj)
        else:
            report = ars_mod.validate_ars(obj)
    elif args.what == "ews":
        try:
            ews_mod.invariants_from_ews(obj)
        except ews_mod.EWSError as exc:
            print(f"free-generators: FAIL ({exc})")
            return EXIT_INVALID
        print("free-generators: pass")
        return EXIT_OK
    else:  # pragma: no cover
        raise CliError(f"unhandled kind {args.what}")
    print(report.format())
    return EXIT_OK if report.ok else EXIT_INVALID


def _parse_dsc(arg, n_colors) -> frozenset[int]:
    if not arg:
        raise CliError("--dsc is required for this conversion")
    try:
        ids = [int(x) for x in arg.split(",") if x.strip()]
    except ValueError as exc:
        raise CliError(f"--dsc must be comma-separated integers: {arg!r}") from exc
    if any(not 1 <= i <= n_colors for i in ids):
        raise CliError(f"--dsc indices out of range 1..{n_colors}")
    return frozenset(i - 1 for i in ids)


def cmd_convert(args) -> int:
    doc = _load_doc(args)
    obj = _build(doc)
    direction = args.direction
    try:
        if direction == "system-to-admissible":
            if not isinstance(obj, luna.SphericalSystem):
                raise CliError("expected a system document")
            witness = _parse_dsc(args.dsc, obj.n_colors)
            result = serialize.admissible_to_doc(admissible_from_system(obj, witness))
        elif direction == "admissible-to-system":
            system, marked = spherical_system_of_admissible(obj)
            result = serialize.system_to_doc(system)
            result["marked"] = sorted(i + 1 for i in marked)
        elif direction == "admissible-to-ars":
            active, aset = ars_mod.ars_from_admissible(obj)
            result = serialize.ars_to_doc(aset)
            result["active_classes"] = serialize.active_classes_doc(active.classes)
        elif direction == "ars-to-admissible":
            ext = _as_extended(obj)
            result = serialize.admissible_to_doc(ars_mod.admissible_from_ars(ext))
        elif direction == "ars-to-hsd":
            ext = _as_extended(obj)
            result = serialize.hsd_to_doc(ars_mod.hsd_from_ars(ext))
        elif direction == "hsd-to-ars":
            if isinstance(obj, luna.SphericalSystem):
                obj = luna.system_as_datum(obj)
            if not isinstance(obj, luna.HomogeneousSphericalDatum):
                raise CliError("expected an hsd or system document")
            witness = _parse_dsc(args.dsc, len(obj.kappa))
            result = serialize.ars_to_doc(ars_mod.ars_from_hsd(obj, witness))
        else:  # pragma: no cover
            raise CliError(f"unknown direction {direction!r}")
    except (luna.LunaError, ars_mod.ARSError, ValueError) as exc:
        if isinstance(exc, CliError):
            raise
        print(f"conversion failed: {exc}")
        return EXIT_INVALID
    sys.stdout.write(serialize.dumps(result))
    return EXIT_OK


def _as_extended(obj) -> ars_mod.ExtendedARSSet:
    if isinstance(obj, ars_mod.ExtendedARSSet):
        return obj
    if isinstance(obj, ars_mod.ARSSet):
        return ars_mod.normalize_wonderful(
            ars_mod.ExtendedARSSet(obj, 0, ars_mod.difference_lattice(obj))
        )
    raise CliError("expected an ars document")


def _enumerate(args):
    try:
        rs = build_root_system(serialize.parse_diagram(args.type))
    except (RootSystemError, InputError) as exc:
        raise CliError(str(exc)) from exc
    bound = _rank_bound(args)
    try:
        if getattr(args, "parallel", False):
            records = _enumerate_parallel(rs, bound, args.cuspidal)
        else:
            records = enumerate_cuspidal_systems(
                rs, rank_bound=bound, cuspidal_only=args.cuspidal
            )
    except EnumerationError as exc:
        raise CliError(str(exc)) from exc
    return records


def _enumerate_parallel(rs, bound, cuspidal):
    """Parallel search over support subsets; the merged result is sorted,
    so the output is identical to the serial run."""
    if cuspidal:
        return enumerate_cuspidal_systems(rs, rank_bound=bound, cuspidal_only=True)
    import itertools
    from concurrent.futures import ProcessPoolExecutor

    from spherica import enumeration as en

    n = rs.rank
    masks = [tuple(bits) for bits in itertools.product((0, 1), repeat=n)]
    with ProcessPoolExecutor() as pool:
        groups = list(
            pool.map(_enumerate_mask, [(str(rs.diagram), mask, bound) for mask in masks])
        )
    systems = {}
    for chunk in groups:
        for doc in chunk:
            system = serialize.system_from_doc(doc)
            canon = system.canonical()
            systems.setdefault(en._dedup_key(canon), canon)
    return [
        en._record_for_system(systems[k]) for k in sorted(systems, key=en._sort_key)
    ]


def _enumerate_mask(payload):
    name, mask, bound = payload
    from spherica import enumeration as en
    from spherica import serialize as ser
    from spherica.admissible import spherical_system_of_admissible as sys_of
    from spherica.rootsys import DynkinDiagram, build_root_system as build

    rs = build(DynkinDiagram.parse(name))
    out = []
    for am in en.enumerate_admissible(rs, cuspidal_only=False, rank_bound=bound):
        if tuple(1 if am.eta[i][i] == 1 else 0 for i in range(rs.rank)) != mask:
            continue
        system, _ = sys_of(am)
        out.append(ser.system_to_doc(system))
    return out


def cmd_enumerate(args) -> int:
    records = _enumerate(args)
    if args.format == "table":
        sys.stdout.write(tables.records_markdown(records))
    elif args.format == "text":
        sys.stdout.write(tables.records_text(records))
    else:
        sys.stdout.write(serialize.dumps(tables.records_json_doc(records)))
    return EXIT_OK


def cmd_emit_table(args) -> int:
    records = _enumerate(args)
    sys.stdout.write(tables.records_markdown(records))
    return EXIT_OK


def cmd_ews(args) -> int:
    doc = _load_doc(args)
    obj = _build(doc)
    if isinstance(obj, (ars_mod.ARSSet, ars_mod.ExtendedARSSet)):
        ext = _as_extended(obj)
        gens = ars_mod.ews_generators_from_ars(ext)
        sys.stdout.write(serialize.dumps(serialize.ews_to_doc(gens)))
        return EXIT_OK
    if isinstance(obj, ews_mod.EWSGenerators):
        try:
            inv = ews_mod.invariants_from_ews(obj)
        except ews_mod.EWSError as exc:
            print(f"invariant extraction failed: {exc}")
            return EXIT_INVALID
        out = {
            "kind": "ews-invariants",
            "lattice": [list(r) for r in inv.lam.basis],
            "pp": sorted(inv.pp),
            "kappa": [list(r) for r in inv.kappa],
            "lambda_weights": [list(w.ss) + list(w.central) for w in inv.lambda_weights],
            "sigma_detected": [
                {"num": list(s.num), "den": s.den} for s in inv.sigma_detected
            ],
        }
        sys.stdout.write(serialize.dumps(out))
        return EXIT_OK
    raise CliError("expected an ars or ews document")


def cmd_report(args) -> int:
    from spherica import report as report_mod

    records = _enumerate(args)
    written = report_mod.write_report(records, args.out_dir)
    for name in written:
        print(os.path.join(args.out_dir, name))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherica",
        description="exact combinatorics of strongly solvable spherical subgroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--input", help="path to a JSON document")
        p.add_argument("--json", help="inline JSON document")

    p = sub.add_parser("check", help="validate a domain object axiom by axiom")
    p.add_argument("what", choices=["diagram", "system", "hsd", "admissible", "ars", "ews"])
    add_io(p)
    p.add_argument("--type", help="diagram, e.g. A2 or A1xA1 (with --matrix)")
    p.add_argument("--matrix", help="inline admissible matrix, e.g. [[1,0],[0,1]]")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convert", help="convert between the classifications")
    p.add_argument(
        "direction",
        choices=[
            "system-to-admissible",
            "admissible-to-system",
            "admissible-to-ars",
            "ars-to-admissible",
            "ars-to-hsd",
            "hsd-to-ars",
        ],
    )
    add_io(p)
    p.add_argument("--dsc", help="1-based witness color indices, e.g. 1,4")
    p.set_defaults(func=cmd_convert)

    def add_enum(p):
        p.add_argument("--type", required=True, help="diagram, e.g. A3")
        p.add_argument("--cuspidal", action="store_true", help="full-support systems only")
        p.add_argument("--rank-bound", type=int, default=None)
        p.add_argument("--parallel", action="store_true")

    p = sub.add_parser("enumerate", help="classify the strongly solvable systems")
    add_enum(p)
    p.add_argument("--format", choices=["json", "table", "text"], default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("emit-table", help="classification in the appendix layout")
    add_enum(p)
    p.set_defaults(func=cmd_emit_table)

    p = sub.add_parser("ews", help="extended-weight-semigroup generators / invariants")
    add_io(p)
    p.set_defaults(func=cmd_ews)

    p = sub.add_parser("report", help="delimited records plus fan figures")
    add_enum(p)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InputError, RootSystemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
