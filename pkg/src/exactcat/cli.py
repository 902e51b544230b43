"""Command-line entry point: ``exactcat {analyze,reconstruct,k0,dot} FILE``.

Exit codes: 0 success, 1 usage error, 2 input that does not parse,
3 Gröbner/degree cap exceeded, 4 a requested verification failed (or was
undetermined without ``--allow-undetermined``).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field as dc_field

from .exactlin import FieldSpec, QQ
from .exstruct import (
    TooManyStructures,
    UnknownDottedSpec,
    count_exact_structures,
    enumerate_exact_structures,
    frobenius_structures,
    parse_dotted_spec,
    to_dot,
    translation_quiver,
)
from .homology import DEFAULT_CHECK_SPAN, DEFAULT_MAX_DEG, global_dimension
from .k0 import k0_group, verify_ex_equals_ar
from .pathalg import GroebnerCapError, ParseError, format_element, format_presentation, groebner_basis, parse_presentation
from .reconstruct import EmptyKeptSet, reconstruct_algebra, verify_iwanaga_gorenstein

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    file: str
    field: str
    payload: dict = dc_field(default_factory=dict)
    timing: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_field(text: str) -> FieldSpec:
    t = text.replace(" ", "").upper()
    if t in ("Q", "QQ"):
        return QQ
    t = t.removeprefix("F").removeprefix(":").removeprefix("_")
    if t.isdigit():
        try:
            return FieldSpec.prime(int(t))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown field {text!r}; use Q or F<p>")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="quiver presentation in the exactcat DSL")
    common.add_argument("--field", help="override the field line (Q or F<p>, e.g. F5)")
    common.add_argument("--max-deg", type=int, default=DEFAULT_MAX_DEG,
                        help="resolution length bound; the Gröbner degree cap is max(30, this) (default: %(default)s)")
    common.add_argument("--check-span", type=int, default=DEFAULT_CHECK_SPAN,
                        help="Ext window for injective-dimension checks (default: %(default)s)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--dot", action="store_true", help="also emit the translation quiver as DOT")
    common.add_argument("--allow-undetermined", action="store_true",
                        help="exit 0 when verifications are only undetermined")
    dotted = argparse.ArgumentParser(add_help=False)
    dotted.add_argument("--dotted", default="",
                        help="chosen dotted arrows: orbit names (A,B), arrow indices (0,1,3), 'all' "
                             "or empty for the split structure (default: empty)")

    p = _Parser(prog="exactcat", description="Exact structures on proj of a bound quiver algebra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    a = sub.add_parser("analyze", parents=[common], help="2-regular simples, dotted arrows, structure counts")
    a.add_argument("--count-only", action="store_true", help="report counts without listing structures")
    r = sub.add_parser("reconstruct", parents=[common, dotted], help="presentation of the algebra of a structure")
    r.add_argument("--verify-ig", action="store_true", help="check the Iwanaga-Gorenstein property")
    k = sub.add_parser("k0", parents=[common, dotted], help="Grothendieck group and Ex=AR sampling")
    k.add_argument("--samples", type=int, default=50, help="number of sampled conflations (default: %(default)s)")
    k.add_argument("--seed", type=int, default=0, help="sampling seed (default: %(default)s)")
    sub.add_parser("dot", parents=[common, dotted], help="DOT rendering of the translation quiver")
    return p


def _load(args):
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    field = parse_field(args.field) if args.field else None
    pres = parse_presentation(text, field)
    ab = groebner_basis(pres, max(args.max_deg, 30))
    args._field = "Q" if pres.field.characteristic == 0 else f"F{pres.field.characteristic}"
    return ab


def _summary_line(tq, count, frob) -> str:
    names = tq.vertices
    n = len(tq.dotted_arrows)
    head = f"{n} dotted arrow{'s' if n != 1 else ''}"
    loops = [names[i] for i, j in tq.dotted_arrows if i == j]
    if loops:
        head += " (self-loop at " + ", ".join(loops) + ")"
    if n == 0:
        return head + "; 1 exact structure (split)"
    parts = [head, f"{count} exact structures"]
    if len(tq.dotted_orbits) > 1:
        # orbit names only carry information when there is more than one orbit
        parts.append("stable orbits: " + (", ".join(o.name for o in tq.stable_orbits) or "none"))
    parts.append(f"{frob} Frobenius")
    return "; ".join(parts)


def cmd_analyze(args, out) -> int:
    ab = _load(args)
    tq = translation_quiver(ab, args.max_deg)
    names = tq.vertices
    count = count_exact_structures(tq)
    frob = frobenius_structures(tq)
    structures = []
    if not args.count_only:
        for s in enumerate_exact_structures(tq):
            structures.append({
                "mask": s.mask,
                "label": s.label(),
                "projective": [names[v] for v in s.projective_vertices],
                "injective": [names[v] for v in s.injective_vertices],
                "frobenius": s.frobenius,
            })
    payload = {
        "two_regular": [
            {"vertex": names[r.vertex], "pd": str(r.pd), "ext0_vanishes": r.ext0_vanishes,
             "ext1_vanishes": r.ext1_vanishes, "ext2_dim": r.ext2_dim,
             "tau": names[r.ext2_support_vertex] if r.ext2_support_vertex is not None else None,
             "two_regular": r.is_two_regular}
            for r in tq.reports
        ],
        "dotted_arrows": [[names[i], names[j]] for i, j in tq.dotted_arrows],
        "solid_arrows": [[names[i], names[j], m] for i, j, m in tq.solid_arrows],
        "orbits": [{"name": o.name, "vertices": [names[v] for v in o.vertices], "stable": o.stable}
                   for o in tq.dotted_orbits],
        "exact_structures": count,
        "frobenius_structures": len(frob),
        "global_dimension": str(global_dimension(ab, args.max_deg)),
        "summary": _summary_line(tq, count, len(frob)),
    }
    if not args.count_only:
        payload["structures"] = structures
    if args.dot:
        payload["dot"] = to_dot(tq)
    if args.json:
        return _emit_json(args, out, payload)
    print("vertex  pd  Ext0=0  Ext1=0  dimExt2  tau  2-regular", file=out)
    for row in payload["two_regular"]:
        print(f"{row['vertex']:>6}  {row['pd']:>2}  {str(row['ext0_vanishes']):>6}  {str(row['ext1_vanishes']):>6}"
              f"  {row['ext2_dim']:>7}  {row['tau'] or '-':>3}  {row['two_regular']}", file=out)
    for k, (i, j) in enumerate(payload["dotted_arrows"]):
        print(f"dotted {k}: {i} ~> {j}", file=out)
    for o in payload["orbits"]:
        print(f"orbit {o['name']}: {{{', '.join(o['vertices'])}}} {'stable' if o['stable'] else 'non-stable'}", file=out)
    print(f"global dimension: {payload['global_dimension']}", file=out)
    for s in structures:
        flag = "  Frobenius" if s["frobenius"] else ""
        print(f"structure {s['mask']}: {s['label']}; projectives {{{', '.join(s['projective'])}}}{flag}", file=out)
    print(payload["summary"], file=out)
    if args.dot:
        out.write(payload["dot"])
    return EXIT_OK


def _emit_json(args, out, payload) -> int:
    rep = Report(args.command, args.file, args._field, payload, round(time.perf_counter() - args._t0, 3))
    print(rep.to_json(), file=out)
    return EXIT_OK


def _verdict_exit(statuses, allow_undetermined) -> int:
    if any(s == "no" for s in statuses):
        return EXIT_VERIFY
    if any(s == "undetermined" for s in statuses) and not allow_undetermined:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_reconstruct(args, out) -> int:
    ab = _load(args)
    tq = translation_quiver(ab, args.max_deg)
    spec = parse_dotted_spec(tq, args.dotted)
    pres = reconstruct_algebra(spec)
    comment = f"endomorphism algebra for the structure {spec.label()}; dim {pres.dim_total}"
    text = format_presentation(pres.quiver, comment)
    payload = {
        "structure": spec.label(),
        "kept": list(pres.quiver.vertices),
        "dim_total": pres.dim_total,
        "loewy_length": pres.loewy_length,
        "presentation": text,
        "generator_map": {name: format_element(ab, x) for name, x in pres.generator_map.items()},
    }
    code = EXIT_OK
    if args.verify_ig:
        ig = verify_iwanaga_gorenstein(pres, check_span=args.check_span)
        payload["iwanaga_gorenstein"] = {"right": str(ig.right_id_verdict), "left": str(ig.left_id_verdict),
                                         "bound": ig.n, "check_span": ig.check_span}
        code = _verdict_exit([ig.right_id_verdict.status, ig.left_id_verdict.status], args.allow_undetermined)
    if args.dot:
        payload["dot"] = to_dot(tq, spec)
    if args.json:
        _emit_json(args, out, payload)
        return code
    out.write(text)
    for name, expr in payload["generator_map"].items():
        print(f"# {name} = {expr}", file=out)
    if args.verify_ig:
        ig = payload["iwanaga_gorenstein"]
        print(f"# IG: {ig['right']}/{ig['left']} (bound {ig['bound']}, window {ig['check_span']})", file=out)
    if args.dot:
        out.write(payload["dot"])
    return code


def _linear_text(vec, names) -> str:
    """Render an integer combination of vertex classes, e.g. ``2[v] - [u]``."""
    text = ""
    for v, c in sorted(enumerate(vec), key=lambda t: -t[1]):
        if not c:
            continue
        coeff = "" if abs(c) == 1 else str(abs(c))
        sign = ("-" if c < 0 else "") if not text else (" - " if c < 0 else " + ")
        text += f"{sign}{coeff}[{names[v]}]"
    return text or "0"


def cmd_k0(args, out) -> int:
    ab = _load(args)
    tq = translation_quiver(ab, args.max_deg)
    spec = parse_dotted_spec(tq, args.dotted)
    rep = k0_group(spec)
    ver = verify_ex_equals_ar(spec, args.samples, args.seed, report=rep)
    names = tq.vertices
    payload = {
        "structure": spec.label(),
        "k0": rep.group_text(),
        "free_rank": rep.free_rank,
        "torsion": rep.torsion,
        "ar_relations": {f"{names[i]}~>{names[j]}": [rep.ar_matrix[v, c] for v in range(rep.ar_matrix.rows)]
                         for c, (i, j) in enumerate(spec.chosen)},
        "samples": ver.samples,
        "samples_passed": ver.passed,
        "seed": args.seed,
    }
    code = EXIT_OK if ver.ok else EXIT_VERIFY
    if args.dot:
        payload["dot"] = to_dot(tq, spec)
    if args.json:
        _emit_json(args, out, payload)
        return code
    for arrow, vec in payload["ar_relations"].items():
        print(f"AR relation {arrow}: {_linear_text(vec, names)}", file=out)
    print(f"K0 = {payload['k0']}; {ver.passed}/{ver.samples} Ex=AR samples pass", file=out)
    if args.dot:
        out.write(payload["dot"])
    return code


def cmd_dot(args, out) -> int:
    ab = _load(args)
    tq = translation_quiver(ab, args.max_deg)
    spec = parse_dotted_spec(tq, args.dotted or "all")
    if args.json:
        return _emit_json(args, out, {"structure": spec.label(), "dot": to_dot(tq, spec)})
    out.write(to_dot(tq, spec))
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "reconstruct": cmd_reconstruct, "k0": cmd_k0, "dot": cmd_dot}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GroebnerCapError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, UnknownDottedSpec, TooManyStructures, EmptyKeptSet) as exc:
        print(f"exactcat: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
