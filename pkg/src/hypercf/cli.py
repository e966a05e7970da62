"""Command-line entry point.

Subcommands: expand, orbit, moments, hankel, tau, somos {find|verify},
verify {theorem2|poisson|identities|all}, repro.  Data goes to stdout,
diagnostics to stderr.  Exit codes: 0 success/verified, 1 verification
failure, 2 input error.  Rationals are always strings "p/q"; output is
deterministic for fixed inputs and seeds.  HYPERCF_THREADS caps the
fan-out of the verification suites.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import bundled, cfrac, maps, moments, poisson, repro, samples, somos
from .errors import HypercfError, InputError, VerificationError
from .exactnum import rat, rat_str
from .parallel import run_ordered
from .report import VerifyReport

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2


def _read_json(path_or_inline: str):
    try:
        if path_or_inline.strip().startswith(("{", "[")):
            return json.loads(path_or_inline)
        with open(path_or_inline) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path_or_inline!r}: {exc}") from exc


def _load_curve(args) -> tuple:
    if args.curve == "random":
        rng = random.Random(args.seed)
        return samples.nonsingular_curve_seed(
            args.genus, rng, steps_forward=6, steps_backward=4
        )
    if args.curve == "example3":
        return bundled.example3()
    if args.curve == "example4":
        return bundled.example4()
    return cfrac.curve_seed_from_json(_read_json(args.curve))


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _print_report(rep: VerifyReport, quiet: bool = False) -> int:
    _emit(rep.to_json())
    for note in rep.notes:
        print(f"# {note}", file=sys.stderr)
    if not rep.ok and not quiet:
        for f in rep.failures[:10]:
            print(f"FAIL: {f}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_VERIFY


# -- subcommands --------------------------------------------------------------


def cmd_expand(args) -> int:
    if args.lines < 1 or args.backward < 0:
        raise InputError("expand needs --lines >= 1 and --backward >= 0")
    curve, seed = _load_curve(args)
    state = cfrac.validate_seed(curve, seed)
    records = [state.line()]
    records.extend(cfrac.lines(state, args.lines - 1))
    if args.backward:
        records = list(reversed(cfrac.lines_backward(state, args.backward))) + records
        records.sort(key=lambda ln: ln.n)
    for ln in records:
        _emit(cfrac.line_to_json(ln))
    return EXIT_OK


def _field(doc: dict, key: str, what: str):
    try:
        return rat(doc[key])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"orbit {what} JSON needs a rational field {key!r}") from exc


def cmd_orbit(args) -> int:
    doc = _read_json(args.seed_json)
    try:
        params_doc = doc["params"]
        state_doc = doc["state"]
    except (KeyError, TypeError) as exc:
        raise InputError("orbit seed JSON needs 'params' and 'state' objects") from exc
    out = sys.stdout
    if args.genus == 1:
        p = maps.G1Params(
            _field(params_doc, "f", "params"), _field(params_doc, "u", "params"),
            rat(params_doc["v"]) if "v" in params_doc else None,
        )
        s = maps.G1State(_field(state_doc, "d", "state"), _field(state_doc, "v", "state"))
        out.write("n,d,v\n" if not args.float else "n,d,v,d_float,v_float\n")
        for n in range(args.steps + 1):
            row = [str(n), rat_str(s.d), rat_str(s.v)]
            if args.float:
                row += [f"{float(s.d):.17g}", f"{float(s.v):.17g}"]
            out.write(",".join(row) + "\n")
            if n < args.steps:
                s = maps.g1_step(p, s)
        return EXIT_OK
    if args.genus == 2:
        p = maps.G2Params(
            _field(params_doc, "f", "params"), _field(params_doc, "g", "params"),
            _field(params_doc, "u", "params"),
            rat(params_doc["v"]) if "v" in params_doc else None,
            rat(params_doc["w"]) if "w" in params_doc else None,
        )
        s = maps.G2State(
            _field(state_doc, "d", "state"), _field(state_doc, "e", "state"),
            _field(state_doc, "v_prev", "state"), _field(state_doc, "w_prev", "state"),
        )
        header = "n,d,e,v,w"
        if args.float:
            header += ",d_float,e_float,v_float,w_float"
        out.write(header + "\n")
        for n in range(args.steps + 1):
            row = [str(n), rat_str(s.d), rat_str(s.e), rat_str(s.v_prev), rat_str(s.w_prev)]
            if args.float:
                row += [f"{float(x):.17g}" for x in (s.d, s.e, s.v_prev, s.w_prev)]
            out.write(",".join(row) + "\n")
            if n < args.steps:
                s = maps.g2_step(p, s)
        return EXIT_OK
    raise InputError("orbit supports genus 1 or 2")


def _maybe_oeis(values, args) -> bool:
    if getattr(args, "oeis_style", False):
        qs = [rat(v) for v in values]
        if all(q.denominator == 1 for q in qs):
            print(" ".join(str(q.numerator) for q in qs))
            return True
        print("# values are not all integral; falling back to JSON", file=sys.stderr)
    return False


def cmd_moments(args) -> int:
    curve, seed = _load_curve(args)
    fn = moments.moments_backward if args.backward else moments.moments_forward
    mom = fn(curve, seed, args.count)
    if not _maybe_oeis(mom.values, args):
        _emit([rat_str(v) for v in mom.values])
    return EXIT_OK


def cmd_hankel(args) -> int:
    curve, seed = _load_curve(args)
    fn = moments.moments_backward if args.backward else moments.moments_forward
    mom = fn(curve, seed, 2 * args.size + 1)
    table = moments.hankel_table(mom, args.size)
    if not _maybe_oeis(table.delta, args):
        _emit({
            "delta": [rat_str(v) for v in table.delta],
            "delta_star": [rat_str(v) for v in table.delta_star],
        })
    return EXIT_OK


def cmd_tau(args) -> int:
    curve, seed = _load_curve(args)
    mf = moments.moments_forward(curve, seed, 2 * args.forward + 1)
    mb = moments.moments_backward(curve, seed, 2 * args.back + 3)
    tf = moments.hankel_table(mf, args.forward)
    tb = moments.hankel_table(mb, args.back + 1)
    ts = moments.glue_tau(tf, tb, curve, seed)
    lo, hi = -args.back, args.forward
    values = ts.window(lo, hi)
    if not _maybe_oeis(values, args):
        _emit({
            "lo": lo,
            "hi": hi,
            "tau": [rat_str(v) for v in values],
            "tau_star": [rat_str(ts.tau_star[n]) for n in range(lo, hi + 1)],
        })
    return EXIT_OK


def _load_sequence(doc) -> dict:
    if isinstance(doc, list):
        return {n: rat(v) for n, v in enumerate(doc)}
    if isinstance(doc, dict) and "values" in doc:
        start = int(doc.get("start", 0))
        return {start + i: rat(v) for i, v in enumerate(doc["values"])}
    raise InputError("sequence JSON must be an array or {start, values}")


def cmd_somos_find(args) -> int:
    seq = _load_sequence(_read_json(args.input))
    rel = somos.somos_k_find(seq, args.kmax)
    if rel is None:
        print(f"# no Somos-k relation with k <= {args.kmax}", file=sys.stderr)
        return EXIT_VERIFY
    _emit(rel.to_json())
    return EXIT_OK


def cmd_somos_verify(args) -> int:
    seq = _load_sequence(_read_json(args.input))
    rel = somos.SomosRelation.from_json(_read_json(args.relation))
    rep = somos.verify_relation(rel, seq)
    return _print_report(rep)


def cmd_verify_theorem2(args) -> int:
    curve, seed = _load_curve(args)
    rep = moments.verify_theorem2(curve, seed, args.depth)
    try:
        rep.merge(moments.verify_theorem3(curve, seed, max(2, args.depth // 2)))
    except HypercfError as exc:
        rep.note(f"backward direction skipped: {exc}")
    return _print_report(rep)


def cmd_verify_identities(args) -> int:
    curve, seed = _load_curve(args)
    mom = moments.moments_forward(curve, seed, 2 * args.depth + 1)
    rep = moments.appendix_identities(mom, args.depth)
    rng = random.Random(args.seed)
    raw = [rat(rng.randint(-9, 9)) for _ in range(2 * args.depth + 1)]
    rep2 = moments.appendix_identities(raw, args.depth)
    rep2.name = "appendix-identities(random data)"
    rep.merge(rep2)
    return _print_report(rep)


def _poisson_point_properties(task) -> list:
    """Per-property reports for one deterministic sample point."""
    genus, seed_val, idx = task
    rng = random.Random((seed_val, genus, idx))
    point = samples.random_lax_point(genus, rng)
    dump = f"point coords {[rat_str(c) for c in point.coords()]}"
    out = []
    for name, ok in (
        ("antisymmetry", poisson.antisymmetry_ok(point)),
        ("jacobi", poisson.jacobi_ok(point)),
        ("isospectrality", poisson.isospectrality_ok(point, 2)),
    ):
        rep = VerifyReport(name)
        rep.check(ok, f"{name} fails at sample {idx}: {dump}")
        out.append(rep)
    for rep in (
        poisson.casimir_check(point),
        poisson.hamiltonian_involution(point),
        poisson.flow_degree_report(point),
        poisson.poisson_map_check(point),
        poisson.lax_form_check(point, rat(2), rat(-1, 3)),
        poisson.shifted_bracket_check(point, rat(1, 2), rat(3)),
    ):
        if not rep.ok:
            rep.failures.append(f"at sample {idx}: {dump}")
        out.append(rep)
    pt2, roots = samples.random_lax_point(genus, rng, factored_r=True)
    rep = poisson.canonical_pairs_check(pt2, roots)
    if not rep.ok:
        rep.failures.append(
            f"at sample {idx}: point coords {[rat_str(c) for c in pt2.coords()]}"
        )
    out.append(rep)
    return out


_POISSON_PROPERTIES = (
    "antisymmetry", "jacobi", "isospectrality", "casimirs", "involution",
    "flow-degrees", "poisson-map", "lax-form", "shifted-brackets", "canonical-pairs",
)


def cmd_verify_poisson(args) -> int:
    """One JSON verdict per property, aggregated over the sample points."""
    tasks = [(args.genus, args.seed, i) for i in range(args.samples)]
    per_property = {name: VerifyReport(name) for name in _POISSON_PROPERTIES}
    for reports in run_ordered(_poisson_point_properties, tasks):
        for rep in reports:
            key = rep.name.split("(")[0]
            target = per_property.get(key)
            if target is None:
                target = per_property.setdefault(key, VerifyReport(key))
            target.checks += rep.checks
            target.failures.extend(rep.failures)
    overall = all(rep.ok for rep in per_property.values())
    _emit({
        "name": f"poisson-suite(genus={args.genus}, samples={args.samples}, seed={args.seed})",
        "ok": overall,
        "properties": {name: rep.to_json() for name, rep in per_property.items()},
    })
    if not overall:
        for rep in per_property.values():
            for f in rep.failures[:3]:
                print(f"FAIL [{rep.name}]: {f}", file=sys.stderr)
    return EXIT_OK if overall else EXIT_VERIFY


def cmd_verify_all(args) -> int:
    rep = VerifyReport(f"verify-all(genus={args.genus}, seed={args.seed})")
    curve, seed = _load_curve(args)
    rep.merge(moments.verify_theorem2(curve, seed, args.depth))
    try:
        rep.merge(moments.verify_theorem3(curve, seed, max(2, args.depth // 2)))
    except HypercfError as exc:
        rep.note(f"backward direction skipped: {exc}")
    mom = moments.moments_forward(curve, seed, 13)
    rep.merge(moments.appendix_identities(mom, 6))
    for i in range(3):
        for sub in _poisson_point_properties((args.genus, args.seed, i)):
            rep.merge(sub)
    if curve.genus == 1:
        p, s = maps.g1_from_seed(curve, seed)
        orbit = maps.g1_orbit(p, s, 20)
        if p.v is not None:
            rep.merge(somos.qrt_check([st.d for st in orbit], p.f, p.u, p.v))
    return _print_report(rep)


def cmd_repro(args) -> int:
    kwargs = {}
    if args.bundle == "fig1-orbit":
        if args.out:
            kwargs["csv_path"] = args.out
        if args.steps:
            kwargs["steps"] = args.steps
    rep = repro.run_bundle(args.bundle, **kwargs)
    return _print_report(rep)


# -- wiring ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="hypercf", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_curve_opts(p):
        p.add_argument("--curve", required=True,
                       help="curve+seed JSON (path or inline), 'example3', 'example4', or 'random'")
        p.add_argument("--genus", type=int, default=2, help="genus for --curve random")
        p.add_argument("--seed", type=int, default=0, help="RNG seed for --curve random")

    p = sub.add_parser("expand", help="continued-fraction lines of a curve+seed")
    add_curve_opts(p)
    p.add_argument("--lines", type=int, default=10)
    p.add_argument("--backward", type=int, default=0)
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("orbit", help="iterate the explicit genus-1/2 map, CSV output")
    p.add_argument("--genus", type=int, choices=(1, 2), required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed-json", required=True, help="{'params': {...}, 'state': {...}}")
    p.add_argument("--float", action="store_true", help="append lossy decimal columns")
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("moments", help="moment sequence of a curve+seed")
    add_curve_opts(p)
    p.add_argument("--count", type=int, default=15)
    p.add_argument("--backward", action="store_true")
    p.add_argument("--oeis-style", action="store_true", dest="oeis_style")
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("hankel", help="Hankel and shifted Hankel determinants")
    add_curve_opts(p)
    p.add_argument("--size", type=int, default=8)
    p.add_argument("--backward", action="store_true")
    p.add_argument("--oeis-style", action="store_true", dest="oeis_style")
    p.set_defaults(fn=cmd_hankel)

    p = sub.add_parser("tau", help="two-sided glued tau sequence")
    add_curve_opts(p)
    p.add_argument("--forward", type=int, default=8)
    p.add_argument("--back", type=int, default=8)
    p.add_argument("--oeis-style", action="store_true", dest="oeis_style")
    p.set_defaults(fn=cmd_tau)

    p = sub.add_parser("somos", help="detect or verify bilinear relations")
    ssub = p.add_subparsers(dest="somos_command", required=True)
    pf = ssub.add_parser("find")
    pf.add_argument("--input", required=True, help="sequence JSON (array or {start, values})")
    pf.add_argument("--kmax", type=int, default=16)
    pf.set_defaults(fn=cmd_somos_find)
    pv = ssub.add_parser("verify")
    pv.add_argument("--relation", required=True)
    pv.add_argument("--input", required=True)
    pv.set_defaults(fn=cmd_somos_verify)

    p = sub.add_parser("verify", help="exact verification suites")
    vsub = p.add_subparsers(dest="verify_command", required=True)
    pt2 = vsub.add_parser("theorem2")
    add_curve_opts(pt2)
    pt2.add_argument("--depth", type=int, default=8)
    pt2.set_defaults(fn=cmd_verify_theorem2)
    pid = vsub.add_parser("identities")
    add_curve_opts(pid)
    pid.add_argument("--depth", type=int, default=6)
    pid.set_defaults(fn=cmd_verify_identities)
    pp = vsub.add_parser("poisson")
    pp.add_argument("--genus", type=int, default=2)
    pp.add_argument("--samples", type=int, default=5)
    pp.add_argument("--seed", type=int, default=0)
    pp.set_defaults(fn=cmd_verify_poisson)
    pa = vsub.add_parser("all")
    add_curve_opts(pa)
    pa.add_argument("--depth", type=int, default=8)
    pa.set_defaults(fn=cmd_verify_all)

    p = sub.add_parser("repro", help="regenerate a reference bundle and diff bit-exactly")
    p.add_argument("bundle", choices=repro.BUNDLE_IDS)
    p.add_argument("--out", help="CSV output path (fig1-orbit)")
    p.add_argument("--steps", type=int, default=0, help="override step count (fig1-orbit)")
    p.set_defaults(fn=cmd_repro)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except HypercfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
