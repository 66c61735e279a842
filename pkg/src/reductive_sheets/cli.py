"""Command-line interface: ``reductive-sheets {pseudolevis,sheets,jordan,poset}``.

Exit codes: 0 success, 2 usage, 3 capability/data, 4 resource.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .errors import CapabilityError, ResourceError, SheetsError, SpecError
from .pseudolevi import admissible_cosets, coset_classes, enumerate_pseudolevis, levi_envelope
from .rootsys import GroupSpec, RootSystem
from .sheets import build_poset, coset_name, enumerate_jordan_classes, enumerate_sheets, to_dot
from .unipotent import DATA_ENV

SCHEMA_VERSION = "1"
EXIT_USAGE, EXIT_DATA, EXIT_RESOURCE = 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _weights(text: str):
    try:
        return tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip())
    except ValueError:
        raise UsageError(f"cannot parse weights {text!r}; use e.g. '1,0,1;0,1,0'") from None


def parse_spec(args) -> GroupSpec:
    gens = _weights(args.weights) if args.weights else ()
    iso = args.isogeny.replace("-", "_")
    if iso == "sc":
        iso = "simply_connected"
    try:
        return GroupSpec.parse(args.type, iso, gens, args.central_torus)
    except SpecError as e:
        raise UsageError(str(e)) from None


def _data_dir(args):
    # the flag wins over the environment; unipotent.data_dir() reads the env var itself
    return args.data_dir


def _query(args, spec: GroupSpec) -> dict:
    q = {"command": args.command, "type": spec.name, "isogeny": spec.isogeny,
         "central_torus_rank": spec.central_torus_rank}
    if spec.generators:
        q["weights"] = [list(g) for g in spec.generators]
    if getattr(args, "pairs_view", False):
        q["view"] = "pairs"
    return q


def record(args, spec, payload, summary=None) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "query": _query(args, spec), "payload": payload}
    if summary is not None:
        out["summary"] = summary
    return out


# -- serializers -------------------------------------------------------------


def pseudolevi_row(pl) -> dict:
    env = levi_envelope(pl)
    adm = admissible_cosets(pl)
    return {
        "type": pl.cartan_type,
        "J": pl.J_label,
        "is_levi": pl.is_levi,
        "component_group": str(pl.component_group),
        "component_group_order": pl.component_group.order,
        "dim_M": pl.dim_M,
        "dim_Z0": pl.dim_Z0,
        "envelope": env.label,
        "admissible_cosets": len(adm),
        "admissible_cosets_unquotiented": len(admissible_cosets(pl, quotient=False)),
        "cosets": [{"coset": list(c.element), "admissible": c.admissible, "orbit_size": c.orbit_size}
                   for c in coset_classes(pl)],
    }


def sheet_row(s) -> dict:
    j = s.jordan
    return {
        "type": j.M.cartan_type,
        "J": j.M.J_label,
        "coset": coset_name(j.coset),
        "coset_orbit_size": j.coset.orbit_size,
        "class": j.O.name,
        "n": s.n,
        "dim": s.dim_sheet,
        "dim_Z0": s.dim_Z0,
        "is_levi": j.M.is_levi,
        "is_dixmier": s.is_dixmier,
        "contains_unipotent_up_to_center": s.contains_unipotent_up_to_center,
        "contains_genuine_unipotent": s.contains_genuine_unipotent,
        "is_single_class": s.is_single_class,
        "induced_unipotent": s.induced_unipotent.name if s.induced_unipotent else None,
    }


def pairs_row(s) -> dict:
    pv = s.pairs_view
    return {"levi": pv["levi"], "levi_J": pv["levi_J"], "M": pv["rigid_class"]["M"],
            "coset": pv["rigid_class"]["coset"], "class": pv["rigid_class"]["unipotent"],
            "rigid_class_dim_in_levi": pv["rigid_class"]["dim_in_levi"],
            "exceptional_in_levi": pv["exceptional_in_levi"], "n": s.n, "dim": s.dim_sheet}


def jordan_row(j) -> dict:
    return {"type": j.M.cartan_type, "J": j.M.J_label, "coset": coset_name(j.coset),
            "class": j.O.name, "n": j.n, "dim_Z0": j.dim_Z0, "dim_jordan": j.dim_jordan,
            "rigid": j.O.rigid}


# -- output --------------------------------------------------------------------


def _flat(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return ""
    return str(v)


def render(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    rows = rec["payload"]
    cols = list(rows[0].keys()) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_flat(r[c]) for c in cols])
        return buf.getvalue()
    cols = [c for c in cols if c != "cosets"]
    table = [cols] + [[_flat(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
    q = rec["query"]
    head = f"# {q['command']} {q['type']} ({q['isogeny']}), {len(rows)} rows, schema {rec['schema_version']}"
    lines = [head] + ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in table]
    if "summary" in rec:
        lines.append("# " + ", ".join(f"{k}={v}" for k, v in rec["summary"].items()))
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------


def cmd_pseudolevis(args) -> dict:
    spec = parse_spec(args)
    pls = enumerate_pseudolevis(RootSystem(spec))
    return record(args, spec, [pseudolevi_row(p) for p in pls])


def cmd_sheets(args) -> dict:
    spec = parse_spec(args)
    sheets = enumerate_sheets(spec, _data_dir(args))
    rows = [pairs_row(s) if args.pairs_view else sheet_row(s) for s in sheets]
    summary = {"sheets": len(sheets),
               "sheets_unquotiented": sum(s.jordan.coset.orbit_size for s in sheets)}
    return record(args, spec, rows, summary)


def cmd_jordan(args) -> dict:
    spec = parse_spec(args)
    js = enumerate_jordan_classes(spec, _data_dir(args))
    return record(args, spec, [jordan_row(j) for j in js])


def cmd_poset(args) -> str:
    spec = parse_spec(args)
    if spec.rank > args.max_rank:
        raise ResourceError(f"rank {spec.rank} exceeds --max-rank {args.max_rank}")
    if not spec.is_classical:
        raise CapabilityError("the Jordan-class order needs induction, available for classical types only")
    return to_dot(build_poset(spec, _data_dir(args)), title=spec.name)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reductive-sheets", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name, helptext in [("pseudolevis", "pseudo-Levi classes with component groups"),
                           ("sheets", "sheets as triples (M, coset, rigid class)"),
                           ("jordan", "all Jordan classes"),
                           ("poset", "Hasse diagram of Jordan classes (DOT)")]:
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--type", required=True, help="Cartan type, e.g. C2 or A1xB3")
        s.add_argument("--isogeny", default="adjoint",
                       choices=["adjoint", "simply_connected", "simply-connected", "sc", "intermediate"])
        s.add_argument("--weights", help="intermediate isogeny: generators of X/Q, e.g. '1,0,1'")
        s.add_argument("--central-torus", type=int, default=0, metavar="RANK")
        s.add_argument("--data-dir", help=f"exceptional tables directory (overrides ${DATA_ENV})")
        if name != "poset":
            s.add_argument("--format", choices=["text", "json", "csv"], default="text")
        else:
            s.add_argument("--max-rank", type=int, default=8)
        if name == "sheets":
            s.add_argument("--pairs-view", action="store_true", help="show (Levi envelope, rigid class) pairs")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage() + "reductive-sheets: error: a command is required")
        if args.command == "poset":
            out.write(cmd_poset(args))
        else:
            fn = {"pseudolevis": cmd_pseudolevis, "sheets": cmd_sheets, "jordan": cmd_jordan}[args.command]
            out.write(render(fn(args), args.format))
        return 0
    except UsageError as e:
        sys.stderr.write(str(e).rstrip() + "\n")
        return EXIT_USAGE
    except CapabilityError as e:
        sys.stderr.write(f"capability error: {e}\n")
        return EXIT_DATA
    except ResourceError as e:
        sys.stderr.write(f"resource error: {e}\n")
        return EXIT_RESOURCE
    except SpecError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DATA if "tsv" in str(e) else EXIT_USAGE
    except SheetsError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
