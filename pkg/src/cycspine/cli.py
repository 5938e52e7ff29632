"""Command-line frontend.

Every subcommand is a thin orchestration over the library modules; no
mathematical logic lives here.  Exit codes: 0 = expected outcome matched,
1 = a mathematical cross-check failed, 2 = usage error.  All output is
available as human text or, with --json, as a schema-versioned object.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import gcd

from . import enumeration, homology, polyhedra, whitehead, words

SCHEMA = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _max_cosets(args) -> int:
    if getattr(args, "max_cosets", None):
        return args.max_cosets
    env = os.environ.get("SPINE_MAX_COSETS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(EXIT_USAGE)
    return enumeration.DEFAULT_MAX_COSETS


def _emit(args, payload: dict, text_lines: list[str]):
    if args.json:
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, indent=1, default=str))
    else:
        for line in text_lines:
            print(line)


def _parse_family_or_exit(text: str) -> words.FamilySpec:
    try:
        return words.parse_family(text)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_family(args) -> int:
    spec = _parse_family_or_exit(args.spec)
    p = words.build_family(spec)
    lines = [f"family {spec.shorthand()}  rank {p.rank}"]
    lines += [f"  r{i}: {rel.to_text()}" for i, rel in enumerate(p.relators())]
    _emit(
        args,
        {
            "command": "family",
            "spec": spec.shorthand(),
            "presentation": p.to_json(),
            "relators": [r.to_text() for r in p.relators()],
        },
        lines,
    )
    return EXIT_OK


def cmd_whitehead(args) -> int:
    spec = _parse_family_or_exit(args.spec)
    p = words.build_family(spec)
    g = whitehead.whitehead_graph(p)
    if args.reduced:
        g = whitehead.reduce_graph(g)
    planar, rs = whitehead.is_planar(g)
    pattern = whitehead.match_family_pattern(g, spec)
    payload = {
        "command": "whitehead",
        "spec": spec.shorthand(),
        "graph": g.to_json(),
        "connected": whitehead.is_connected(g),
        "loops_at": [f"{v[0]}{v[1]}" for v in g.loop_vertices()],
        "planar": planar,
        "pattern": pattern.value,
    }
    lines = [
        f"whitehead graph of {spec.shorthand()}: {g.total_multiplicity()} edges "
        f"on {2 * g.rank} vertices",
        f"  connected: {payload['connected']}   planar: {planar}   pattern: {pattern.value}",
    ]
    if g.has_loops():
        lines.append(f"  loops at: {', '.join(payload['loops_at'])}")
    if args.census:
        if planar and rs is not None and rs.is_spherical():
            census = whitehead.face_census(rs)
            payload["census"] = {str(k): v for k, v in census.items()}
            lines.append(f"  face census: {census}")
        else:
            payload["census"] = None
            lines.append("  face census: unavailable (not a certified spherical embedding)")
    if args.dot is not None:
        dot = g.to_dot()
        if args.dot == "-":
            print(dot)
        else:
            with open(args.dot, "w") as fh:
                fh.write(dot + "\n")
            lines.append(f"  wrote DOT to {args.dot}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_abelian(args) -> int:
    spec = _parse_family_or_exit(args.spec)
    p = words.build_family(spec)
    inv = homology.abelian_invariants(p)
    order_snf = inv.order()
    order_res = homology.abelianization_order(p)
    agree = order_snf == order_res
    payload = {
        "command": "abelian",
        "spec": spec.shorthand(),
        "torsion": list(inv.torsion),
        "free_rank": inv.free_rank,
        "order_smith": str(order_snf),
        "order_resultant": str(order_res),
        "agree": agree,
    }
    lines = [
        f"abelianization of {spec.shorthand()}: torsion {list(inv.torsion)}, "
        f"free rank {inv.free_rank}",
        f"  order (Smith normal form): {order_snf}",
        f"  order (resultant):         {order_res}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if agree else EXIT_CHECK_FAILED


def _parse_poly(text: str) -> homology.IntPolynomial:
    try:
        coeffs = tuple(int(x) for x in text.split(","))
    except ValueError:
        print(f"error: cannot parse coefficient list {text!r}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return homology.IntPolynomial(coeffs)


def cmd_resultant(args) -> int:
    p = _parse_poly(args.p)
    q = _parse_poly(args.q)
    try:
        r = homology.resultant(p, q)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(
        args,
        {"command": "resultant", "p": list(p.coeffs), "q": list(q.coeffs), "resultant": str(r)},
        [str(r)],
    )
    return EXIT_OK


def cmd_lemma42(args) -> int:
    try:
        fp = homology.FractionalParams(args.k, args.l)
        rec = homology.resultant_closed_forms(fp, args.n)
        split_ok = True
        for f in (0, args.n // 2):
            p = homology.representer_polynomial(
                words.build_family(words.G(args.k, args.l, args.n, f))
            )
            a, b = homology.resultant_split(p, args.n)
            split_ok &= a * b == homology.resultant(p, homology.t_pow_minus_one(args.n))
        distinct = homology.distinguish_f0_fhalf(fp, args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "command": "lemma42",
        "k": args.k,
        "l": args.l,
        "n": args.n,
        "closed_form_f0_plus": str(rec.res_f0_plus),
        "direct_f0_plus": str(rec.direct_f0_plus),
        "f0_matches": rec.f0_matches,
        "closed_form_fhalf_plus": str(rec.res_fhalf_plus),
        "direct_fhalf_plus": str(rec.direct_fhalf_plus),
        "fhalf_matches": rec.fhalf_matches,
        "common_minus": str(rec.res_common_minus),
        "split_multiplicative": split_ok,
        "orders_distinct": distinct,
    }
    lines = [
        f"k={args.k} l={args.l} n={args.n}:",
        f"  f=0   vs t^(n/2)+1: closed {rec.res_f0_plus}  direct {rec.direct_f0_plus}"
        f"  match={rec.f0_matches}",
        f"  f=n/2 vs t^(n/2)+1: closed {rec.res_fhalf_plus}  direct {rec.direct_fhalf_plus}"
        f"  match={rec.fhalf_matches}",
        f"  shared t^(n/2)-1 resultant: {rec.res_common_minus}",
        f"  split multiplicative: {split_ok}   abelianization orders distinct: {distinct}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if distinct and split_ok else EXIT_CHECK_FAILED


def cmd_scheme_build(args) -> int:
    spec = _parse_family_or_exit(args.spec)
    try:
        s = polyhedra.build_scheme(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    data = s.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(data, fh, indent=1)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(s.to_dot() + "\n")
    lines = [
        f"scheme for {spec.shorthand()}: {len(s.faces)} faces, {len(s.arcs)} arcs, "
        f"{len(s.vertices())} vertices"
    ]
    if args.output:
        lines.append(f"  wrote {args.output}")
    _emit(args, {"command": "scheme-build", "spec": spec.shorthand(), "scheme": data}, lines)
    return EXIT_OK


def cmd_scheme_verify(args) -> int:
    spec = _parse_family_or_exit(args.family)
    p = words.build_family(spec)
    try:
        with open(args.file) as fh:
            s = polyhedra.FacePairingScheme.from_json(json.load(fh))
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: cannot load scheme: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cert = polyhedra.certificate(s, p)
    if args.certificate:
        with open(args.certificate, "w") as fh:
            json.dump(cert, fh, indent=1)
    lines = [f"scheme verification against {spec.shorthand()}:"]
    for c in cert["checks"]:
        lines.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['check']} {c['detail']}")
    if cert["valid"]:
        lines.append(
            f"  cells (V,E,F,C) = ({cert['cells']['V']},{cert['cells']['E']},"
            f"{cert['cells']['F']},{cert['cells']['C']})  chi = {cert['chi']}"
            f"  manifold: {cert['seifert_threlfall']}"
        )
    _emit(args, {"command": "scheme-verify", **cert}, lines)
    return EXIT_OK if cert["valid"] else EXIT_CHECK_FAILED


def cmd_heegaard(args) -> int:
    try:
        d = polyhedra.heegaard_H(args.r, args.n)
        q = polyhedra.rho_quotient(d, args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    canonical = polyhedra.canonical_lens_diagram(args.r)
    ok = q == canonical
    payload = {
        "command": "heegaard",
        "r": args.r,
        "n": args.n,
        "discs": list(d.discs),
        "bundles": [list(b) for b in d.bundles],
        "quotient_strands": q.bundles[0][2],
        "quotient_is_canonical_lens": ok,
    }
    lines = [
        f"diagram for r={args.r}, n={args.n}: {len(d.discs)} discs, rotation invariant",
        f"  quotient: one pair joined by {q.bundles[0][2]} strands "
        f"(canonical lens diagram: {ok})",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_enumerate(args) -> int:
    spec = _parse_family_or_exit(args.spec)
    p = words.build_family(spec)
    res = enumeration.order_of(p, _max_cosets(args), args.strategy)
    payload = {
        "command": "enumerate",
        "spec": spec.shorthand(),
        "status": res.status,
        "order": res.order,
        "live_cosets": res.live_cosets,
        "total_defined": res.total_defined,
    }
    lines = [
        f"{spec.shorthand()}: {res.status}"
        + (f" order {res.order}" if res.finite else "")
        + f"  (live {res.live_cosets}, defined {res.total_defined})"
    ]
    _emit(args, payload, lines)
    if args.trace:
        print("# trace omitted in summary mode; use the library CosetTable for full logs")
    return EXIT_OK


def certify_stages(k: int, l: int, n: int, f: int, do_enumerate: bool, max_cosets: int) -> dict:
    """Run the verification pipeline; every stage records pass/fail/skip."""
    report: dict = {
        "params": {"k": k, "l": l, "n": n, "f": f},
        "stages": {},
    }
    stages = report["stages"]
    spec = words.G(k, l, n, f)
    p = words.build_family(spec)
    g = whitehead.whitehead_graph(p)

    planar_generic, rs = whitehead.is_planar(g)
    if n >= 4:
        crit = whitehead.planarity_criterion_G(k, l, n, f)
        stages["planarity"] = {
            "status": "pass" if crit == planar_generic else "fail",
            "criterion": crit,
            "generic": planar_generic,
        }
    else:
        stages["planarity"] = {"status": "skipped", "generic": planar_generic,
                               "detail": "criterion stated for n >= 4"}

    pattern = whitehead.match_family_pattern(g, spec)
    expected = (
        whitehead.PatternType.NONE
        if not planar_generic
        else (whitehead.PatternType.TYPE_II11 if (k, l) == (1, 1) else whitehead.PatternType.TYPE_II7)
    )
    if n >= 4:
        stages["pattern"] = {
            "status": "pass" if pattern == expected else "fail",
            "pattern": pattern.value,
            "expected": expected.value,
        }
    else:
        stages["pattern"] = {"status": "skipped", "pattern": pattern.value}

    inv = homology.abelian_invariants(p)
    o_snf = inv.order()
    o_res = homology.abelianization_order(p)
    stages["abelianization"] = {
        "status": "pass" if o_snf == o_res else "fail",
        "order": str(o_res),
        "torsion": list(inv.torsion),
        "free_rank": inv.free_rank,
    }

    if n < 4:
        stages["spine"] = {"status": "skipped", "detail": "decision stated for n >= 4"}
    elif (f * k) % n == 2:
        stages["spine"] = {"status": "skipped", "detail": "f*k = 2 mod n: outside theorem scope"}
    else:
        decision = polyhedra.spine_decision(k, l, n, f)
        stage = {"spine": decision}
        ok = True
        if decision:
            try:
                s = polyhedra.build_scheme(spec)
                rep = polyhedra.validate_scheme(s, p)
                q = polyhedra.quotient(s)
                orbits = polyhedra.edge_orbits(s)
                L = len(p.defining_word)
                stage["scheme"] = {
                    "valid": rep.passed,
                    "cells": list(q.cell_counts()),
                    "chi": q.chi,
                    "orbit_sizes_ok": all(len(o.arcs) == L for o in orbits),
                }
                seifert = polyhedra.seifert_threlfall(s)
                stage["seifert_threlfall"] = seifert
                ok = rep.passed and seifert == decision and stage["scheme"]["orbit_sizes_ok"]
            except (ValueError, polyhedra.SchemeError) as exc:
                ok = False
                stage["error"] = str(exc)
        else:
            if n % 2 == 0 and f % 2 == 1 and (f * k) % n == 0 and gcd(k, l) == 1:
                rec = polyhedra.odd_f_obstruction(k, l, n, f)
                stage["obstruction"] = {
                    "duplicated_face_index": rec.duplicated_face_index,
                    "even": rec.duplicated_face_index % 2 == 0,
                }
                ok = rec.duplicated_face_index % 2 == 0
            else:
                stage["detail"] = (
                    "graph is non-planar" if not planar_generic else "no retraction with this offset"
                )
        stage["status"] = "pass" if ok else "fail"
        stages["spine"] = stage

    if do_enumerate:
        res = enumeration.order_of(p, max_cosets)
        stage = {"result": repr(res)}
        if res.finite:
            finite_part = 1
            for d in inv.torsion:
                finite_part *= d
            stage["divisible_by_abelianization"] = (
                inv.free_rank == 0 and res.order % finite_part == 0
            )
            stage["status"] = "pass" if stage["divisible_by_abelianization"] else "fail"
        else:
            stage["status"] = "skipped"
            stage["detail"] = "enumeration did not close"
        stages["enumeration"] = stage

    attempted = [s for s in stages.values() if s["status"] != "skipped"]
    report["verdict"] = "pass" if all(s["status"] == "pass" for s in attempted) else "fail"
    return report


def cmd_certify(args) -> int:
    k, l, n, f = args.k, args.l, args.n, args.f
    if n < 2 or k < 1 or l < 1 or not 0 <= f < n:
        print("error: need n >= 2, k, l >= 1 and 0 <= f < n", file=sys.stderr)
        return EXIT_USAGE
    report = certify_stages(k, l, n, f, args.enumerate, _max_cosets(args))
    lines = [f"certify k={k} l={l} n={n} f={f}:"]
    for name, st in report["stages"].items():
        extra = {kk: vv for kk, vv in st.items() if kk != "status"}
        lines.append(f"  [{st['status']}] {name}: {extra}")
    lines.append(f"verdict: {report['verdict']}")
    _emit(args, {"command": "certify", **report}, lines)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_CHECK_FAILED


def _parse_range(text: str) -> list[int]:
    if ":" in text:
        a, b = text.split(":", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def cmd_sweep(args) -> int:
    import csv

    ks = _parse_range(args.k)
    ls = _parse_range(args.l)
    ns = _parse_range(args.n)
    rows = []
    for n in ns:
        for k in ks:
            for l in ls:
                fs = _parse_range(args.f) if args.f else list(range(n))
                for f in fs:
                    if not 0 <= f < n:
                        continue
                    rep = certify_stages(k, l, n, f, False, _max_cosets(args))
                    st = rep["stages"]
                    rows.append(
                        {
                            "k": k,
                            "l": l,
                            "n": n,
                            "f": f,
                            "planar": st["planarity"].get("generic"),
                            "pattern": st["pattern"].get("pattern"),
                            "ab_order": st["abelianization"]["order"],
                            "spine": st.get("spine", {}).get("spine", ""),
                            "verdict": rep["verdict"],
                        }
                    )
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    writer = csv.DictWriter(out, fieldnames=["k", "l", "n", "f", "planar", "pattern", "ab_order", "spine", "verdict"])
    writer.writeheader()
    writer.writerows(rows)
    if args.output:
        out.close()
        print(f"wrote {len(rows)} rows to {args.output}")
    bad = [r for r in rows if r["verdict"] != "pass"]
    return EXIT_OK if not bad else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cycspine", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("family", cmd_family, help="print the relators of a family instance")
    sp.add_argument("spec", help="family shorthand, e.g. H:3,4 or G:5,2,12,0 or F:1,1,6")

    sp = add("whitehead", cmd_whitehead, help="Whitehead graph, planarity, pattern type")
    sp.add_argument("spec")
    sp.add_argument("--reduced", action="store_true", help="clamp multiplicities to 1")
    sp.add_argument("--dot", nargs="?", const="-", default=None, help="emit DOT (to file or stdout)")
    sp.add_argument("--census", action="store_true", help="face census of the embedding")

    sp = add("abelian", cmd_abelian, help="abelianization invariants (Smith form vs resultant)")
    sp.add_argument("spec")

    sp = add("resultant", cmd_resultant, help="|Res(p, q)| of two integer polynomials")
    sp.add_argument("p", help="coefficients, lowest degree first, e.g. 1,3,-1")
    sp.add_argument(
        "q",
        help="coefficients, lowest degree first; prefix the argument list "
        "with -- when a polynomial starts with a minus sign",
    )

    sp = add("lemma42", cmd_lemma42, help="closed-form resultant identities for f=0 vs f=n/2")
    sp.add_argument("k", type=int)
    sp.add_argument("l", type=int)
    sp.add_argument("n", type=int)

    scheme = sub.add_parser("scheme", help="face-pairing scheme tools")
    ssub = scheme.add_subparsers(dest="scheme_command", required=True)
    sp = ssub.add_parser("build", help="generate a family scheme")
    sp.set_defaults(fn=cmd_scheme_build)
    sp.add_argument("spec")
    sp.add_argument("-o", "--output", help="write scheme JSON here")
    sp.add_argument("--dot", help="write the boundary 1-skeleton as DOT")
    sp.add_argument("--json", action="store_true")
    sp = ssub.add_parser("verify", help="validate a scheme file against a family")
    sp.set_defaults(fn=cmd_scheme_verify)
    sp.add_argument("file")
    sp.add_argument("--family", required=True, help="family shorthand the scheme should realize")
    sp.add_argument("--certificate", help="write certificate JSON here")
    sp.add_argument("--json", action="store_true")

    sp = add("heegaard", cmd_heegaard, help="rotation-invariant diagram and its lens quotient")
    sp.add_argument("r", type=int)
    sp.add_argument("n", type=int)

    sp = add("enumerate", cmd_enumerate, help="Todd-Coxeter order of a family instance")
    sp.add_argument("spec")
    sp.add_argument("--max-cosets", type=int, default=None)
    sp.add_argument("--strategy", choices=list(enumeration.STRATEGIES), default="hlt")
    sp.add_argument("--trace", action="store_true")

    sp = add("certify", cmd_certify, help="full verification pipeline for one (k,l,n,f)")
    sp.add_argument("k", type=int)
    sp.add_argument("l", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("f", type=int)
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--max-cosets", type=int, default=None)

    sp = add("sweep", cmd_sweep, help="run certify over a parameter grid, emit CSV")
    sp.add_argument("--k", default="1:4")
    sp.add_argument("--l", default="1:4")
    sp.add_argument("--n", default="4:12")
    sp.add_argument("--f", default=None, help="offset range; default all 0 <= f < n")
    sp.add_argument("-o", "--output")
    sp.add_argument("--max-cosets", type=int, default=None)

    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
