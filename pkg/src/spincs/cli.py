"""Command-line front end.

Every subcommand builds a plain document through the library and prints it
either as a text table or as JSON (``--format json``).  Exit status: 0 on
success, 1 on a domain error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import action, cohomology, ko, levels, lines, moduli, quadratic
from .cohomology import CohomologyRing
from .ko import KOClass
from .phase import Phase

SCHEMA_VERSION = 1


# -- value encoding -------------------------------------------------------------


def rational(x) -> str | int:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def phase_doc(p: Phase) -> dict:
    return {"value": p.render(), "angle": rational(p.angle)}


def _document(command: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **fields}


# -- input helpers ------------------------------------------------------------------


def load_ring_arg(name: str) -> CohomologyRing:
    path = Path(name)
    if name.endswith(".json") or path.is_file():
        return cohomology.load_ring(path.read_text(encoding="utf-8"))
    return cohomology.ring_by_name(name)


def ring_name(ring: CohomologyRing) -> str:
    return ring.name or "custom"


def parse_lie(text: str) -> moduli.LieVec:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        return moduli.cartan(Fraction(parts[0]))
    try:
        return moduli.lie(*(Fraction(p) for p in parts))
    except ValueError as exc:
        raise moduli.ModuliError(f"bad su2 element {text!r}: {exc}") from None


def parse_pair(text: str) -> tuple[moduli.LieVec, moduli.LieVec]:
    try:
        x, y = text.split(";")
    except ValueError:
        raise moduli.ModuliError(f"expected 'dx-part;dy-part', got {text!r}") from None
    return parse_lie(x), parse_lie(y)


def lie_doc(v) -> list:
    return [rational(c) for c in v]


def parse_linear_part(text: str | None):
    if text is None:
        return None
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise quadratic.RefinementError(f"linear part must be comma-separated integers, got {text!r}") from None


# -- documents --------------------------------------------------------------------


def ring_document(ring: CohomologyRing) -> dict:
    products = []
    for (di, dj, i, j), coords in ring.products:
        products.append(
            {
                "a": ring.labels[di][i],
                "b": ring.labels[dj][j],
                "result": ring.format_class(cohomology.CohClass(ring, di + dj, coords)),
            }
        )
    return _document(
        "ring",
        ring=ring_name(ring),
        dimension=ring.dimension,
        betti=list(ring.betti),
        labels=[list(n) for n in ring.labels],
        products=products,
        schema=ring.to_document(),
    )


def ko_class_doc(x: KOClass) -> dict:
    return {"w1": str(x.w1), "w2": str(x.w2)}


def ko_document(ring, op, x, y=None, line=None, table=False) -> dict:
    fields = {"ring": ring_name(ring), "op": op, "x": ko_class_doc(x)}
    if op == "add":
        result = ko.add(x, y)
        fields["y"] = ko_class_doc(y)
    elif op == "neg":
        result = ko.neg(x)
    elif op == "tensor":
        result = ko.tensor_line(x, line)
        fields["line"] = str(line)
    elif op == "from-pair":
        # x and y carry the Stiefel-Whitney data of the bundles E and F
        result = ko.from_bundle_pair((x.w1, x.w2), (y.w1, y.w2))
        fields["y"] = ko_class_doc(y)
    else:
        result = x
    fields["result"] = ko_class_doc(result)
    fields["order"] = ko.order(result)
    if table:
        elems, tab = ko.group_table(ring)
        fields["elements"] = [ko_class_doc(e) for e in elems]
        fields["table"] = tab
    return _document("ko", **fields)


def q_table_document(ring, E: KOClass, sigma, linear_part=None) -> dict:
    rows = [
        {"l": str(l), "q": phase_doc(v)}
        for l, v in quadratic.q_table(E, sigma, linear_part)
    ]
    return _document(
        "q-table",
        ring=ring_name(ring),
        E=ko_class_doc(E),
        spin=str(sigma),
        linear_part=linear_part,
        rows=rows,
    )


def level_document(rho: levels.VirtualRep) -> dict:
    lev = levels.lam(rho) if levels.rank(rho) == 0 else None
    doc = {
        "group": rho.group,
        "rep": str(rho),
        "rank": levels.rank(rho),
        "pairing_1_1": rational(levels.pairing(rho, 1, 1)),
        "w2": levels.w2_of_rep(rho),
        "integral": levels.integrality_check(rho),
    }
    if lev is None:
        doc.update(coeff=None, p1=None, generator=None, note="rank != 0: lambda is only defined for rank-zero levels")
    else:
        doc.update(coeff=lev.coeff, p1=lev.p1, generator=lev.generator)
    return _document("level", **doc)


def glue_document(doc: dict) -> dict:
    e = lines.run_document(doc)
    return _document("glue", result=lines.expr_to_doc(e))


def moduli_document(pi1: moduli.FPGroup, G: moduli.FiniteGroup, budget=None) -> dict:
    classes = moduli.enumerate_moduli(pi1, G, budget)
    rows = [
        {
            "representative": [G.names[a] for a in c.representative],
            "orbit_size": c.orbit_size,
            "stabilizer_order": moduli.stabilizer_pi0_report(c),
        }
        for c in classes
    ]
    return _document(
        "moduli",
        pi1=pi1.name,
        generators=list(pi1.generators),
        relators=[pi1.format_word(w) for w in pi1.relators],
        group=G.name or "custom",
        group_order=G.order,
        class_count=len(classes),
        tuple_count=sum(c.orbit_size for c in classes),
        rows=rows,
    )


def symplectic_document(rho, a1, a2) -> dict:
    value = moduli.symplectic(a1, a2, rho)
    return _document(
        "symplectic",
        rep=str(rho),
        a1=[lie_doc(v) for v in a1],
        a2=[lie_doc(v) for v in a2],
        omega=rational(value),
        normalization="unit-volume T^2; <e3,e3>_rho = pairing(rho,1,1)",
    )


def moment_document(rho, B: moduli.ConstantConnection, zeta) -> dict:
    F = moduli.curvature(B)
    doc = {
        "rep": str(rho),
        "B": [lie_doc(v) for v in B.components],
        "zeta": lie_doc(zeta),
        "curvature": lie_doc(F),
        "moment": rational(moduli.moment(B, zeta, rho)),
        "normalization": "unit-volume T^2; <e3,e3>_rho = pairing(rho,1,1)",
    }
    try:
        doc["critical"] = moduli.el_critical_test(B, rho)
    except moduli.DegeneratePairingError:
        doc["critical"] = None
    return _document("moment", **doc)


def action_document(mode: str, **kw) -> dict:
    if mode == "spin-ratio":
        E, l, sigma = kw["E"], kw["l"], kw["sigma"]
        value = action.spin_ratio(E, l, sigma)
        return _document(
            "action", mode=mode, ring=ring_name(E.ring), E=ko_class_doc(E), l=str(l), spin=str(sigma),
            value=phase_doc(value),
        )
    if mode == "product-tau":
        value = action.product_tau(kw["w2"], kw["circle"])
        return _document("action", mode=mode, w2=kw["w2"], circle=kw["circle"], value=phase_doc(value))
    if mode == "detector":
        E, l = kw["E"], kw["l"]
        value = action.cobordism_detector(E.ring, E, l)
        return _document("action", mode=mode, ring=ring_name(E.ring), E=ko_class_doc(E), l=str(l), value=value)
    if mode == "spin-indep":
        lev = kw["level"]
        value = action.spin_independence_check(lev)
        return _document(
            "action", mode=mode, group=lev.group, coeff=lev.coeff, w2=lev.w2, independent=value,
        )
    raise ValueError(f"unknown action mode {mode!r}")


# -- rendering ----------------------------------------------------------------------


def emit(document: dict, mode: str = "table") -> str:
    if mode == "json":
        return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=True) + "\n"
    return render_table(document)


def _cell(v) -> str:
    if isinstance(v, dict):
        if set(v) == {"value", "angle"}:
            return v["value"]
        if set(v) == {"w1", "w2"}:
            return f"({v['w1']}; {v['w2']})"
        return json.dumps(v, sort_keys=True)
    if isinstance(v, list):
        if v and all(isinstance(x, list) for x in v):
            return " ".join("(" + ",".join(_cell(y) for y in x) + ")" for x in v)
        return " ".join(_cell(x) for x in v)
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _columns(rows: list[dict]) -> str:
    if not rows:
        return ""
    headers = list(rows[0])
    cells = [[_cell(r[h]) for h in headers] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    out = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    out += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(out) + "\n"


def render_table(doc: dict) -> str:
    skip = {"schema_version", "command", "rows", "schema", "table", "elements", "products"}
    out = []
    for key in doc:
        if key not in skip:
            out.append(f"{key}: {_cell(doc[key])}")
    text = "\n".join(out) + "\n"
    if doc.get("command") == "ring":
        text += _columns(doc["products"]) or "no nonzero products\n"
    if doc.get("command") == "moduli":
        text += _columns(doc["rows"]) if doc["rows"] else "0 classes\n"
    elif "rows" in doc:
        text += _columns(doc["rows"])
    if "table" in doc:
        text += "group table (indices into elements):\n"
        text += "".join(f"{k}: {_cell(e)}\n" for k, e in enumerate(doc["elements"]))
        text += "".join(" ".join(str(x) for x in row) + "\n" for row in doc["table"])
    return text


# -- argument parsing ---------------------------------------------------------------


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: usage error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spincs", description="Exact topological data of the spin-Chern-Simons action.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=("table", "json"), default="table")
        return p

    p = add("ring", "show a Z/2 cohomology ring")
    p.add_argument("--ring", required=True, help="t3, t2, s1xs2, surface:<g> or a ring JSON file")
    p.add_argument("--dump", action="store_true", help="print only the ring schema document")

    p = add("ko", "KO classes on a closed 3-manifold")
    p.add_argument("--ring", required=True)
    p.add_argument("--x", required=True, help="class as 'w1;w2', e.g. 'l1;l1^l2'")
    p.add_argument("--y", help="second class (add) or bundle F data (from-pair)")
    p.add_argument("--op", choices=("show", "add", "neg", "tensor", "from-pair"), default="show")
    p.add_argument("--line", help="degree-1 class for --op tensor")
    p.add_argument("--table", action="store_true", help="include the full group table")

    p = add("q-table", "table of q(E, l) over H^1")
    p.add_argument("--ring", required=True)
    p.add_argument("--e", required=True, help="E as 'w1;w2'")
    p.add_argument("--spin", default="0", help="spin structure offset from the base (degree-1 class)")
    p.add_argument("--linear-part", help="Z/4 values of q on the H^1 basis when w1(E) != 0")

    p = add("level", "level of a virtual representation")
    p.add_argument("rep", nargs="+", help="'su2: std - 4' or: su2 'std - 4'")

    p = add("glue", "reduce a graded-line expression document")
    p.add_argument("document", help="JSON file, or - for stdin")

    p = add("moduli", "flat connections Hom(pi1, G)/G with stabilizers")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--g", help="Z/n, S3, Q8 or D4")
    g.add_argument("--group-file", help="group-table JSON document")
    p.add_argument("--pi1", required=True, help="Z<n>, F<n> or surface:<g>")
    p.add_argument("--budget", type=int, help="candidate tuple cap (default SPINCS_BUDGET or 10^7)")

    p = add("symplectic", "symplectic form on constant tangents of T^2")
    p.add_argument("--rep", required=True)
    p.add_argument("--a1", required=True, help="'dx;dy' with su2 elements 'a,b,c' (single number = Cartan)")
    p.add_argument("--a2", required=True)

    p = add("moment", "moment map of a constant connection on T^2")
    p.add_argument("--rep", required=True)
    p.add_argument("--b1", required=True)
    p.add_argument("--b2", required=True)
    p.add_argument("--zeta", required=True)

    p = add("action", "closed-form values of the action")
    p.add_argument("mode", choices=("spin-ratio", "product-tau", "detector", "spin-indep"))
    p.add_argument("--ring")
    p.add_argument("--e")
    p.add_argument("--l")
    p.add_argument("--spin", default="0")
    p.add_argument("--w2", type=int, choices=(0, 1))
    p.add_argument("--circle", choices=(action.BOUNDING, action.NONBOUNDING))
    p.add_argument("--level", help="representation expression, e.g. 'so3: id - 3'")
    p.add_argument("--group", choices=("su2", "so3"))
    p.add_argument("--coeff", type=int)
    return parser


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'mode', '')}: missing " + ", ".join(f"--{m}" for m in missing))


def dispatch(args) -> dict:
    cmd = args.command
    if cmd == "ring":
        ring = load_ring_arg(args.ring)
        if args.dump:
            return ring.to_document()
        return ring_document(ring)
    if cmd == "ko":
        ring = load_ring_arg(args.ring)
        x = KOClass.parse(ring, args.x)
        y = KOClass.parse(ring, args.y) if args.y else None
        line = ring.parse_class(args.line, 1) if args.line else None
        if args.op in ("add", "from-pair") and y is None:
            raise UsageError(f"--op {args.op} needs --y")
        if args.op == "tensor" and line is None:
            raise UsageError("--op tensor needs --line")
        return ko_document(ring, args.op, x, y, line, args.table)
    if cmd == "q-table":
        ring = load_ring_arg(args.ring)
        E = KOClass.parse(ring, args.e)
        sigma = quadratic.spin_shift(quadratic.SpinStructure.base_of(ring), ring.parse_class(args.spin, 1))
        return q_table_document(ring, E, sigma, parse_linear_part(args.linear_part))
    if cmd == "level":
        text = " ".join(args.rep)
        if len(args.rep) >= 2 and ":" not in args.rep[0]:
            rho = levels.parse_rep(" ".join(args.rep[1:]), args.rep[0])
        else:
            rho = levels.parse_rep(text)
        return level_document(rho)
    if cmd == "glue":
        raw = sys.stdin.read() if args.document == "-" else Path(args.document).read_text(encoding="utf-8")
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise lines.LineError(f"glue document is not valid JSON: {exc}") from None
        return glue_document(doc)
    if cmd == "moduli":
        if args.g:
            G = moduli.group_by_name(args.g)
        else:
            G = moduli.load_group(json.loads(Path(args.group_file).read_text(encoding="utf-8")))
        return moduli_document(moduli.pi1_by_name(args.pi1), G, args.budget)
    if cmd == "symplectic":
        rho = levels.parse_rep(args.rep)
        return symplectic_document(rho, parse_pair(args.a1), parse_pair(args.a2))
    if cmd == "moment":
        rho = levels.parse_rep(args.rep)
        B = moduli.ConstantConnection((parse_lie(args.b1), parse_lie(args.b2)))
        return moment_document(rho, B, parse_lie(args.zeta))
    if cmd == "action":
        mode = args.mode
        if mode in ("spin-ratio", "detector"):
            _need(args, "ring", "e", "l")
            ring = load_ring_arg(args.ring)
            E = KOClass.parse(ring, args.e)
            l = ring.parse_class(args.l, 1)
            sigma = quadratic.spin_shift(quadratic.SpinStructure.base_of(ring), ring.parse_class(args.spin, 1))
            return action_document(mode, E=E, l=l, sigma=sigma)
        if mode == "product-tau":
            _need(args, "w2", "circle")
            return action_document(mode, w2=args.w2, circle=args.circle)
        if args.level:
            rho = levels.parse_rep(args.level)
            lev = levels.lam(rho)
        else:
            _need(args, "group", "coeff")
            lev = levels.LevelClass.from_coeff(args.group, args.coeff)
        return action_document(mode, level=lev)
    raise UsageError(f"unknown command {cmd!r}")


DOMAIN_ERRORS = (
    cohomology.RingError,
    ko.KOError,
    quadratic.UnderdeterminedError,
    quadratic.RefinementError,
    quadratic.SpinError,
    levels.RepError,
    levels.LevelError,
    lines.LineError,
    moduli.ModuliError,
    action.ActionError,
)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = dispatch(args)
    except UsageError as exc:
        stderr.write(f"spincs: usage error: {exc}\n")
        return 2
    except DOMAIN_ERRORS as exc:
        stderr.write(f"spincs: {type(exc).__name__}: {exc}\n")
        return 1
    except OSError as exc:
        stderr.write(f"spincs: {type(exc).__name__}: {exc}\n")
        return 1
    if args.command == "ring" and args.dump:
        stdout.write(cohomology.dump_ring(cohomology.load_ring(doc)))
    else:
        stdout.write(emit(doc, args.format))
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
