"""Command line front end: ``maxfam <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when a mathematical check fails, 2 on
invalid input.  ``--format json`` prints one document with the fields
command, params, results and checks.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import curve, gaps, iso, maps, verification
from .errors import CaseNotApplicable, InternalInconsistency, InvalidParameter, MaxfamError, NotFound
from .verification import Check


class Report:
    def __init__(self, command: str, params: dict):
        self.command = command
        self.params = params
        self.results: dict = {}
        self.checks: list[Check] = []

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "checks": [c.as_dict() for c in self.checks],
        }


def _fmt_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt_value(x)}" for k, x in v.items()) + "}"
    return str(v)


def render_text(rep: Report) -> str:
    lines = [f"{rep.command} " + " ".join(f"{k}={v}" for k, v in rep.params.items())]
    for k, v in rep.results.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            for row in v:
                lines.append("  " + ", ".join(f"{a}={_fmt_value(b)}" for a, b in row.items()))
        else:
            lines.append(f"{k}: {_fmt_value(v)}")
    for c in rep.checks:
        lines.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
    return "\n".join(lines)


# --- subcommands ----------------------------------------------------------------


def cmd_classify(args) -> Report:
    d = args.d
    rep = Report("classify", {"d": d})
    part = iso.partition_classes(d)
    n_formula, n_enum = iso.class_count(d), len(part.classes)
    rep.results = {
        "valid_indices": iso.valid_indices(d),
        "classes": [list(c) for c in part.classes],
        "size_histogram": {str(k): v for k, v in part.size_histogram.items()},
        "singletons": list(part.singleton_indices),
        "pi": iso.pi_count(d),
        "phi2": iso.phi2(d),
        "N_formula": n_formula,
        "N_enumeration": n_enum,
    }
    rep.check("class_count_formula_vs_enumeration", n_formula == n_enum, f"{n_formula} vs {n_enum}")
    rep.check("relation_is_transitive", True, "checked during enumeration")
    return rep


def cmd_classes(args) -> Report:
    d = args.d
    params = {"d": d}
    if args.i is not None:
        params["i"] = args.i
    if args.j is not None:
        params["j"] = args.j
    rep = Report("classes", params)
    if args.j is not None and args.i is None:
        raise InvalidParameter("--j needs --i")
    if args.i is None:
        st = iso.class_stats(d)
        rep.results = {
            "N": st.n_classes,
            "size_histogram": {str(k): v for k, v in st.size_histogram.items()},
            "singletons": list(st.singletons),
            "pairs": [list(p) for p in st.pairs],
        }
        want = [i for i in range(1, (d - 1) // 2 + 1) if (i * i + i + 1) % d == 0]
        rep.check("singletons_are_cube_roots", list(st.singletons) == want, f"want {want}")
        rep.check("single_pair_1_and_half", st.pairs == ((1, (d - 1) // 2),), f"{st.pairs}")
        return rep
    i = args.i
    if args.j is not None:
        j = args.j
        names = ("ij=1", "ij+i+j=0", "ij+i+1=0", "ij+j+1=0")
        held = [n for n, ok in zip(names, iso.congruences(i, j, d)) if ok]
        rep.results = {"isomorphic": iso.are_isomorphic(i, j, d), "congruences": held}
        rep.check("symmetric", iso.are_isomorphic(i, j, d) == iso.are_isomorphic(j, i, d))
        return rep
    part = iso.partition_classes(d)
    if i not in iso.valid_indices(d):
        raise InvalidParameter(f"{i} is not a canonical valid index for d = {d}")
    prof = iso.subfield_indices(i, d) if d >= 7 else None
    rep.results = {"class": list(part.class_of(i)), "partners": sorted(iso.partners(i, d))}
    if prof is not None:
        rep.results["subfield_indices"] = list(prof.fj_indices)
        rep.results["subfield_pattern"] = prof.pattern.value
    return rep


def _curve(args) -> curve.CurveIndex:
    c = curve.validate_index(args.q, args.i)
    if c.i != args.i:
        raise InvalidParameter(f"i = {args.i} is not canonical for q = {args.q}; use {c.i}")
    return c


def cmd_gaps(args) -> Report:
    c = _curve(args)
    rep = Report("gaps", {"q": c.q, "i": c.i, "place": args.place})
    places = list(gaps.PlaceClass) if args.place == "all" else [gaps.PlaceClass(args.place)]
    rows = []
    for pc in places:
        g = gaps.gap_set(c, pc)
        rows.append({"place": pc.value, "size": len(g), "gaps": list(g.gaps)})
        rep.check(f"size_{pc.value}", len(g) == c.genus, f"{len(g)} gaps, genus {c.genus}")
        rep.check(
            f"range_{pc.value}", all(1 <= n <= 2 * c.q - 3 for n in g), f"max {max(g.gaps)}"
        )
        rep.check(f"semigroup_{pc.value}", gaps.is_numerical_semigroup(gaps.nongaps(c, pc), c.genus))
    rep.results = {"genus": c.genus, "gap_sets": rows}
    return rep


def cmd_count(args) -> Report:
    c = _curve(args)
    rep = Report("count", {"q": c.q, "i": c.i, "method": args.method})
    n = curve.count_places(c, args.method, allow_large=args.allow_large)
    bound = curve.hasse_weil_bound(c.q, c.genus)
    rep.results = {"N": n, "hasse_weil_bound": bound, "genus": c.genus, "maximal": n == bound}
    rep.check("maximal", n == bound, f"N={n}, bound={bound}")
    return rep


def cmd_maps(args) -> Report:
    c = _curve(args)
    cj = curve.validate_index(args.q, args.j)
    if cj.i != args.j:
        raise InvalidParameter(f"j = {args.j} is not canonical for q = {args.q}; use {cj.i}")
    i, j, d, F = c.i, cj.i, c.d, c.field
    rep = Report("maps", {"q": c.q, "i": i, "j": j})
    rows = []
    for kind, k in verification.ISO_KINDS:
        if not iso.congruences(i, j, d)[k]:
            continue
        m = maps.standard_map(kind, {"i": i, "j": j}, F)
        ok = maps.preserves_relation(m)
        rows.append(
            {
                "kind": kind,
                "congruence": maps.ISO_CONGRUENCE[kind],
                "src": m.src,
                "dst": m.dst,
                "map": m.describe(),
                "preserves": ok,
            }
        )
        rep.check(f"{kind}_preserves_relation", ok)
    if i == j:
        auts = [("identity", maps.identity_map(F, i))]
        if (i * i + i + 1) % d == 0:
            auts.append(("omega", maps.standard_map("omega", {"i": i}, F)))
        if i == 1:
            auts += [(k, maps.standard_map(k, {}, F)) for k in ("pi", "pi_prime")]
        auts += [(k, maps.standard_map(k, {"i": i}, F)) for k in ("sigma0", "sigma1", "sigma2")]
        for name, m in auts:
            ok = maps.preserves_relation(m, c, c)
            order = maps.order_on_curve(m, c) if ok else None
            rows.append({"kind": name, "map": m.describe(), "preserves": ok, "order": order})
            rep.check(f"{name}_preserves_relation", ok)
        want = {"identity": 1, "omega": 3, "pi": 2, "pi_prime": 2, "sigma0": 2, "sigma1": 2, "sigma2": 2}
        for row in rows:
            if row.get("order") is not None and row["kind"] in want:
                rep.check(f"{row['kind']}_order", row["order"] == want[row["kind"]], f"order {row['order']}")
        hs = maps.h_group(c)
        ok = all(maps.preserves_relation(h, c, c) for h in hs)
        rep.check("h_group_preserves_relation", ok, f"{len(hs)} elements")
    neg = maps.standard_map("negative_control", {"e": i}, F)
    rep.check("negative_control_fails", not maps.preserves_relation(neg))
    rep.results = {"isomorphic": iso.are_isomorphic(i, j, d), "maps": rows}
    return rep


def cmd_aut(args) -> Report:
    c = _curve(args)
    rep = Report("aut", {"q": c.q, "i": c.i})
    st = maps.aut_structure(c.q, c.i)
    rep.results = {
        "order": st.stated_order,
        "case": st.case,
        "h_order": st.h_order,
        "extra_generators": list(st.extra),
        "constructed_order": st.constructed_order,
    }
    rep.check("h_order_is_2(q+1)", st.h_order == 2 * (c.q + 1), f"{st.h_order}")
    rep.check(
        "constructed_group_fits_stated_order",
        st.consistent,
        f"explicit maps generate {st.constructed_order} automorphisms, stated order {st.stated_order}",
    )
    return rep


def cmd_verify(args) -> Report:
    rep = Report("verify", {"q": args.q})
    curve.validate_index(args.q, 1)  # rejects unsupported q with exit 2
    rep.checks = verification.checks_for_q(args.q)
    rep.results = {"checks_run": len(rep.checks), "cases": sum(c.cases for c in rep.checks)}
    return rep


def cmd_sweep(args) -> Report:
    m = args.max_d
    if m < 7:
        raise InvalidParameter(f"--max-d must be at least 7, got {m}")
    mc = m if args.max_class_d is None else min(m, args.max_class_d)
    rep = Report("sweep", {"max_d": m, "max_class_d": mc})
    rep.checks = [verification.check_counting(m, mc), verification.check_class_structure(mc)]
    rep.results = {"odd_d_checked": len(range(7, m + 1, 2)), "cases": sum(c.cases for c in rep.checks)}
    return rep


COMMANDS = {
    "classify": cmd_classify,
    "classes": cmd_classes,
    "gaps": cmd_gaps,
    "count": cmd_count,
    "maps": cmd_maps,
    "aut": cmd_aut,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxfam", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="isomorphism classes and N(d) both ways")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("classes", parents=[common], help="class structure, one class, or one pair")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)

    p = sub.add_parser("gaps", parents=[common], help="gap sequences at the places of Omega")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--place", choices=("all", "inf", "zero", "alpha"), default="all")

    p = sub.add_parser("count", parents=[common], help="number of degree-one places")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--method", choices=("fast", "naive"), default="fast")
    p.add_argument("--allow-large", action="store_true", help="permit the naive count above q = 25")

    p = sub.add_parser("maps", parents=[common], help="explicit isomorphisms F_i <-> F_j")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)

    p = sub.add_parser("aut", parents=[common], help="automorphism group order")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--i", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="all acceptance checks for one q")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("sweep", parents=[common], help="counting-formula cross-checks over odd d")
    p.add_argument("--max-d", type=int, required=True)
    p.add_argument("--max-class-d", type=int, help="cap for the class enumeration (default: --max-d)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = COMMANDS[args.command](args)
    except (InvalidParameter, CaseNotApplicable) as exc:
        print(f"maxfam: error: {exc}", file=sys.stderr)
        return 2
    except (InternalInconsistency, NotFound) as exc:
        rep = Report(args.command, {k: v for k, v in vars(args).items() if k not in ("command", "format")})
        rep.check("internal_consistency", False, str(exc))
    except MaxfamError as exc:
        print(f"maxfam: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(rep.as_dict(), indent=2))
    else:
        print(render_text(rep))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
