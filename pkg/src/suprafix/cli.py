"""Command-line front end.

Subcommands: classify, convert, solve, certify, falsify, theta. Every run is
seeded and reproducible; machine mode (--format machine) prints one JSON
document per run including the full run configuration, with floats at 17
significant digits so identical invocations are byte-identical.

Exit codes:
    0  success (classification clean / converged / witness found / no violation)
    2  semi-metric violation found by classify
    3  unreadable or invalid input (file, reference, or parameter)
    4  solve did not converge (including domain escape)
    5  falsification found no witness within budget
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .axioms import (FitLimits, classify, falsify, interpolative_to_b_index,
                     parse_claim, verify_b_metric, verify_interpolative)
from .comparison import (check_monotone, check_subdiagonal, check_theta1,
                         check_theta2, theta_from_ref, DEFAULT_BUDGET,
                         DEFAULT_CAP, DEFAULT_EPS, DEFAULT_PROBES)
from .errors import (DegenerateSampleError, EvaluationError,
                     SemimetricFileError, SpaceFormatError, SupraError)
from .gallery import GALLERY_NAMES, list_gallery, load_gallery
from .picard import (SolveConfig, check_ciric_contraction, check_orbit_bounded,
                     check_plain_contraction, map_from_ref,
                     probe_separate_continuity, run_orbit, solve_fixed_point)
from .reporting import dumps_machine, fmt
from .sampling import SampleSpec
from .spaces import AnalyticSpace, FORMULAS, load_space

EXIT_OK = 0
EXIT_SEMIMETRIC = 2
EXIT_INVALID = 3
EXIT_NOT_CONVERGED = 4
EXIT_NO_WITNESS = 5


def _parse_box(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("--box expects 'lo,hi'")
    return float(parts[0]), float(parts[1])


def resolve_space(ref, box=None, no_validate=False):
    """Resolve a space reference: gallery name, file:PATH, or builtin[:params].

    Returns (oracle, gallery_item_or_None)."""
    if ref.startswith("file:"):
        oracle = load_space(ref[5:], validate=not no_validate)
        if box is not None:
            raise ValueError("--box applies to analytic spaces only")
        return oracle, None
    name, _, rest = ref.partition(":")
    if name in GALLERY_NAMES:
        if rest:
            raise ValueError(f"gallery item {name!r} takes no parameters")
        item = load_gallery(name)
        if box is not None:
            item.oracle = item.oracle.with_box(box)
        return item.oracle, item
    if name in FORMULAS:
        params = tuple(float(p) for p in rest.split(",")) if rest else ()
        return AnalyticSpace(name, params, box=box), None
    raise ValueError(f"unknown space reference {ref!r}; gallery items: "
                     f"{', '.join(GALLERY_NAMES)}; builtins: "
                     f"{', '.join(sorted(FORMULAS))}; or file:PATH")


def _parse_x0(space, text):
    if space.kind == "finite":
        if text in space.labels:
            return space.labels.index(text)
        idx = int(text)
        if not 0 <= idx < space.n:
            raise ValueError(f"start index {idx} outside [0, {space.n})")
        return idx
    coords = np.asarray([float(p) for p in text.split(",")], float)
    if coords.size != space.dim:
        raise ValueError(f"start point needs {space.dim} coordinate(s)")
    if not np.all(space.contains(coords)):
        raise ValueError(f"start point {text} lies outside the domain box")
    return coords


def _default_probe_start(space):
    if space.kind == "finite":
        return 0
    lo, hi = space.box
    return np.full(space.dim, lo + 0.75 * (hi - lo))


def _sample_spec(args):
    return SampleSpec(seed=args.seed, n_points=args.samples,
                      n_pairs=args.samples, n_triples=args.samples)


def _point_out(space, p):
    return space.point_native(np.asarray(p)) if not np.isscalar(p) else p


def _emit(args, doc, text_lines):
    if args.format == "machine":
        sys.stdout.write(dumps_machine(doc))
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _config_doc(args, extra=None):
    doc = {"seed": args.seed, "format": args.format}
    for key in ("samples", "tol", "residual_tol", "max_iter"):
        if hasattr(args, key):
            doc[key] = getattr(args, key)
    if getattr(args, "box", None) is not None:
        doc["box"] = [args.box[0], args.box[1]]
    if hasattr(args, "no_validate"):
        doc["no_validate"] = bool(args.no_validate)
    if extra:
        doc.update(extra)
    return doc


# ---------------------------------------------------------------------------
# classify

def _witness_doc(w):
    return w.as_dict() if w is not None else None


def _classes_doc(report):
    out = {}
    for name, verdict in report.classes.items():
        out[name] = {
            "status": verdict.status,
            "constants": verdict.constants,
            "witness": _witness_doc(verdict.witness),
            "note": verdict.note,
            "detail": verdict.detail,
        }
    return out


def _growth_note(space, args):
    """For analytic spaces that fail the b-metric class: compare the required
    index on the half box, to show the ratio growing with the domain."""
    from .axioms import fit_b_index
    lo, hi = space.box
    mid = (lo + hi) / 2.0
    half = space.with_box((mid - (hi - lo) / 4.0, mid + (hi - lo) / 4.0))
    spec = _sample_spec(args)
    s_half = fit_b_index(half, spec).s
    s_full = fit_b_index(space, spec).s
    return {"required_s_half_box": s_half, "required_s_full_box": s_full,
            "growing": bool(s_full > 4.0 * s_half)}


def cmd_classify(args):
    try:
        space, item = resolve_space(args.space, args.box, args.no_validate)
    except SemimetricFileError as exc:
        lines = [f"classify {args.space}: semi-metric validation failed"]
        for kind, i, j, v, cv in exc.witnesses[:10]:
            lines.append(f"  {kind} witness at ({i}, {j}): {fmt(v)} vs {fmt(cv)}")
        doc = {"command": "classify", "config": _config_doc(args),
               "error": "semimetric_validation",
               "witnesses": [{"kind": k, "i": i, "j": j, "value": v, "counter": cv}
                             for k, i, j, v, cv in exc.witnesses]}
        _emit(args, doc, lines)
        return EXIT_SEMIMETRIC
    declared = item.expected if item is not None else []
    report = classify(space, _sample_spec(args), FitLimits(), declared=declared)

    if (space.kind == "analytic" and report.semimetric_ok
            and report.classes["b_metric"].status == "fails"):
        report.classes["b_metric"].detail["growth"] = _growth_note(space, args)

    doc = {
        "command": "classify",
        "config": _config_doc(args),
        "space": report.oracle,
        "result": {
            "sampling": report.sampling,
            "semimetric": {"ok": report.semimetric_ok,
                           "witnesses": [w.as_dict() for w in report.semimetric_witnesses]},
            "classes": _classes_doc(report),
            "declared": report.declared,
        },
    }
    lines = [f"space: {report.oracle['label']} ({report.oracle['kind']})"]
    if report.semimetric_ok:
        lines.append("semi-metric: ok")
        for name, verdict in report.classes.items():
            consts = ", ".join(f"{k}={fmt(v)}" for k, v in verdict.constants.items())
            extra = ""
            if name == "b_metric" and "growth" in verdict.detail:
                g = verdict.detail["growth"]
                if g["growing"]:
                    extra = (f"  [required index grows with the box: "
                             f"{fmt(g['required_s_half_box'])} on the half box -> "
                             f"{fmt(g['required_s_full_box'])} on the full box]")
            lines.append(f"{name}: {verdict.status}" + (f" ({consts})" if consts else "") + extra)
        for d in report.declared:
            consts = ", ".join(f"{k}={fmt(v)}" for k, v in d["constants"].items())
            lines.append(f"declared {d['class']} ({consts}): "
                         + ("ok" if d["ok"] else "violated"))
    else:
        lines.append("semi-metric: FAILED")
        for w in report.semimetric_witnesses:
            lines.append(f"  {w.kind} witness: x={fmt(w.x)} y={fmt(w.y)} "
                         f"d(x,y)={fmt(w.d_xy)} d(y,x)={fmt(w.d_yx)}")
    _emit(args, doc, lines)
    return EXIT_OK if report.semimetric_ok else EXIT_SEMIMETRIC


# ---------------------------------------------------------------------------
# convert

def cmd_convert(args):
    s = interpolative_to_b_index(args.alpha, args.c)
    doc = {"command": "convert", "config": _config_doc(args),
           "alpha": args.alpha, "c": args.c, "s": s}
    lines = [f"s = {fmt(s)}"]
    code = EXIT_OK
    if args.verify is not None:
        space, _ = resolve_space(args.verify, args.box, args.no_validate)
        spec = _sample_spec(args)
        interp = verify_interpolative(space, args.alpha, args.c, spec)
        bmet = verify_b_metric(space, s, spec)
        doc["verify"] = {
            "space": space.describe(),
            "interpolative_ok": interp.ok,
            "b_metric_ok": bmet.ok,
            "checked": interp.checked,
            "worst_b_slack": bmet.worst.slack if bmet.worst else None,
        }
        lines.append(f"interpolative(alpha={fmt(args.alpha)}, c={fmt(args.c)}) "
                     f"on {space.label}: {'ok' if interp.ok else 'violated'}")
        lines.append(f"b_metric(s={fmt(s)}): {'ok' if bmet.ok else 'violated'} "
                     f"(worst slack {fmt(bmet.worst.slack)})")
        if interp.ok and not bmet.ok:
            lines.append("implication refuted: interpolative holds but the "
                         "converted index fails")
            code = EXIT_SEMIMETRIC
    _emit(args, doc, lines)
    return code


# ---------------------------------------------------------------------------
# solve

def cmd_solve(args):
    space, item = resolve_space(args.space, args.box, args.no_validate)
    if args.map is not None:
        tmap = map_from_ref(args.map, space)
    elif item is not None and item.tmap is not None:
        tmap = item.tmap
    else:
        raise ValueError("no self-map: pass --map or pick a gallery item with one")
    x0 = _parse_x0(space, args.x0)
    config = SolveConfig(tol=args.tol, residual_tol=args.residual_tol,
                         max_iter=args.max_iter)
    want_trace = args.trace_out is not None
    solved = solve_fixed_point(tmap, x0, space, config, record_trace=want_trace)
    result, trace = solved if want_trace else (solved, None)
    if trace is not None:
        _write_trace(args.trace_out, space, trace)

    doc = {"command": "solve", "config": _config_doc(args),
           "space": space.describe(), "map": tmap.describe(),
           "x0": _point_out(space, x0),
           "result": {"status": result.status, "fixed_point": result.fixed_point,
                      "iterations": result.iterations,
                      "last_step": result.last_step, "residual": result.residual,
                      "note": result.note}}
    lines = [f"status: {result.status}",
             f"fixed_point: {fmt(result.fixed_point)}",
             f"iterations: {result.iterations}",
             f"last_step: {fmt(result.last_step)}",
             f"residual: {fmt(result.residual)}"]
    if result.note:
        lines.append(f"note: {result.note}")
    _emit(args, doc, lines)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def _write_trace(path, space, trace):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# iteration point step_distance\n")
        steps = trace.step_distances
        for i, p in enumerate(np.asarray(trace.points)):
            native = space.point_native(p)
            if isinstance(native, tuple):
                ptext = ",".join(format(v, ".17g") for v in native)
            elif isinstance(native, float):
                ptext = format(native, ".17g")
            else:
                ptext = str(native)
            step = 0.0 if i == 0 else float(steps[i - 1])
            fh.write(f"{i} {ptext} {format(step, '.17g')}\n")


# ---------------------------------------------------------------------------
# certify

def cmd_certify(args):
    space, item = resolve_space(args.space, args.box, args.no_validate)
    if args.map is not None:
        tmap = map_from_ref(args.map, space)
    elif item is not None and item.tmap is not None:
        tmap = item.tmap
    else:
        raise ValueError("no self-map: pass --map or pick a gallery item with one")
    if args.theta is not None:
        theta = theta_from_ref(args.theta)
    elif item is not None and item.theta is not None:
        theta = item.theta
    else:
        raise ValueError("no comparison function: pass --theta or pick a "
                         "gallery item with one")
    x0 = _parse_x0(space, args.x0) if args.x0 is not None else _default_probe_start(space)
    spec = _sample_spec(args)

    mono = check_monotone(theta)
    if not mono.ok:
        raise ValueError(
            f"{theta.label} is not non-decreasing "
            f"(theta({fmt(mono.witness.t1)})={fmt(mono.witness.v1)} > "
            f"theta({fmt(mono.witness.t2)})={fmt(mono.witness.v2)})")
    sub = check_subdiagonal(theta)
    t1 = check_theta1(theta)

    checker = check_ciric_contraction if args.kind == "ciric" else check_plain_contraction
    cert = checker(tmap, space, theta, spec, x0=x0)

    trace = run_orbit(tmap, x0, space, 64, on_escape="truncate")
    bound = check_orbit_bounded(trace, space)

    continuity = {"declared": item.continuity if item is not None else "unspecified"}
    if space.kind == "analytic":
        probe = probe_separate_continuity(space, anchor=_default_probe_start(space),
                                          base=np.zeros(space.dim))
        continuity["probe"] = {"verdict": probe.verdict, "detail": probe.detail}
    else:
        continuity["probe"] = None

    doc = {"command": "certify", "config": _config_doc(args, {"kind": args.kind}),
           "space": space.describe(), "map": tmap.describe(),
           "theta": theta.describe(),
           "result": {
               "certificate": {
                   "kind": cert.kind, "theta": cert.theta_label,
                   "pairs_checked": cert.pairs_checked,
                   "worst_slack": cert.worst_slack,
                   "worst_pair": list(cert.worst_pair),
                   "verdict": cert.verdict},
               "orbit": {"x0": _point_out(space, x0), "points": len(trace),
                         "M": bound.M, "growing": bound.growing,
                         "truncated": trace.truncated},
               "theta_checks": {
                   "monotone": True,
                   "subdiagonal": sub.ok,
                   "theta1": t1.verdict},
               "continuity": continuity,
           }}
    lines = [f"contraction ({cert.kind}, theta={cert.theta_label}): {cert.verdict}",
             f"pairs checked: {cert.pairs_checked}",
             f"worst slack: {fmt(cert.worst_slack)} at pair "
             f"({fmt(cert.worst_pair[0])}, {fmt(cert.worst_pair[1])})",
             f"orbit bound from x0={fmt(_point_out(space, x0))}: M={fmt(bound.M)}"
             + (" [growing]" if bound.growing else ""),
             f"theta checks: monotone=ok subdiagonal={'ok' if sub.ok else 'FAILS'} "
             f"theta1={t1.verdict}",
             f"continuity: {continuity['declared']}"]
    if continuity["probe"] is not None:
        lines.append(f"continuity probe: {continuity['probe']['verdict']}")
    _emit(args, doc, lines)
    return EXIT_OK if cert.verdict == "no_violation" else EXIT_NOT_CONVERGED


# ---------------------------------------------------------------------------
# falsify

def cmd_falsify(args):
    space, _ = resolve_space(args.space, args.box, args.no_validate)
    claim = parse_claim(args.claim)
    witness = falsify(space, claim, _sample_spec(args))
    found = witness is not None
    doc = {"command": "falsify", "config": _config_doc(args),
           "space": space.describe(), "claim": claim.text(),
           "found": found, "witness": _witness_doc(witness)}
    if not found:
        _emit(args, doc, [f"claim {claim.text()}: no witness found "
                          f"(searched {args.samples} samples plus stress inputs)"])
        return EXIT_NO_WITNESS
    if claim.kind == "symmetry":
        lines = [f"claim {claim.text()}: WITNESS",
                 f"  x={fmt(witness.x)} y={fmt(witness.y)}",
                 f"  d(x,y)={fmt(witness.d_xy)}  d(y,x)={fmt(witness.d_yx)}"]
    else:
        lines = [f"claim {claim.text()}: WITNESS",
                 f"  x={fmt(witness.x)} z={fmt(witness.z)} y={fmt(witness.y)}",
                 f"  d(x,y)={fmt(witness.lhs)} legs=({fmt(witness.leg_a)}, "
                 f"{fmt(witness.leg_b)}) slack={fmt(witness.slack)}"]
        if claim.kind == "b_metric":
            ratio = witness.lhs / (witness.leg_a + witness.leg_b)
            lines.append(f"  triangle ratio d(x,y)/(legs sum) = {fmt(ratio)}")
    _emit(args, doc, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# theta

def cmd_theta(args):
    theta = theta_from_ref(args.theta)
    probes = tuple(float(p) for p in args.probes.split(",")) if args.probes else DEFAULT_PROBES
    mono = check_monotone(theta)
    sub = check_subdiagonal(theta)
    t1 = check_theta1(theta, probes, args.cap, args.eps)
    t2 = check_theta2(theta, probes, args.cap, args.budget)

    def _probe_doc(p):
        return {"t": p.t, "status": p.status, "steps": p.steps,
                "final": p.final, "detail": p.detail, "value": p.value}

    doc = {"command": "theta",
           "config": _config_doc(args, {"probes": list(probes), "cap": args.cap,
                                        "eps": args.eps, "budget": args.budget}),
           "theta": theta.describe(),
           "result": {
               "monotone": {"ok": mono.ok,
                            "witness": None if mono.ok else vars(mono.witness)},
               "subdiagonal": {"ok": sub.ok,
                               "witness": None if sub.ok else vars(sub.witness)},
               "theta1": {"verdict": t1.verdict,
                          "probes": [_probe_doc(p) for p in t1.probes]},
               "theta2": {"verdict": t2.verdict,
                          "probes": [_probe_doc(p) for p in t2.probes]},
           }}
    lines = [f"theta: {theta.label}",
             f"monotone: {'ok' if mono.ok else 'FAILS'}",
             f"subdiagonal: {'ok' if sub.ok else 'FAILS'}"
             + ("" if sub.ok else f" (theta({fmt(sub.witness.t1)})={fmt(sub.witness.v1)})"),
             f"theta1 (iterates vanish): {t1.verdict}",
             f"theta2 (iterates summable): {t2.verdict}"]
    ev = t2.evidence()
    if ev is not None and ev.status == t2.verdict:
        lines.append(f"  theta2 evidence at t={fmt(ev.t)}: {ev.detail}")
    _emit(args, doc, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# gallery listing (convenience)

def cmd_gallery(args):
    items = list_gallery()
    doc = {"command": "gallery", "items": items}
    lines = []
    for it in items:
        expect = "; ".join(
            f"{e['class']}(" + ", ".join(f"{k}={fmt(v)}" for k, v in e["constants"].items()) + ")"
            for e in it["expected"]) or "-"
        lines.append(f"{it['name']}: {expect}")
    _emit(args, doc, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="suprafix",
        description="Classify generalized metrics, certify contraction "
                    "hypotheses, and solve fixed-point problems by Picard "
                    "iteration.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples=True, solver=False):
        p.add_argument("--seed", type=int, default=0)
        if samples:
            p.add_argument("--samples", type=int, default=4096)
        if solver:
            p.add_argument("--tol", type=float, default=1e-10)
            p.add_argument("--residual-tol", dest="residual_tol", type=float,
                           default=1e-8)
            p.add_argument("--max-iter", dest="max_iter", type=int, default=10_000)
        p.add_argument("--box", type=_parse_box, default=None,
                       metavar="LO,HI", help="override the analytic domain box")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        p.add_argument("--no-validate", dest="no_validate", action="store_true",
                       help="load space files without semi-metric validation")

    p = sub.add_parser("classify", help="full axiom-lattice report for a space")
    p.add_argument("space")
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("convert",
                       help="b-index implied by interpolative constants")
    p.add_argument("alpha", type=float)
    p.add_argument("c", type=float)
    p.add_argument("--verify", metavar="SPACE", default=None,
                   help="also run the implication test on a space")
    common(p)
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("solve", help="Picard iteration to a fixed point")
    p.add_argument("space")
    p.add_argument("--map", default=None, help="self-map reference")
    p.add_argument("--x0", required=True, help="start point (or index/label)")
    p.add_argument("--trace-out", dest="trace_out", default=None,
                   help="write the orbit as columnar text")
    common(p, samples=False, solver=True)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("certify",
                       help="contraction certificate plus hypothesis checks")
    p.add_argument("space")
    p.add_argument("--map", default=None)
    p.add_argument("--theta", default=None)
    p.add_argument("--kind", choices=("ciric", "plain"), default="ciric")
    p.add_argument("--x0", default=None)
    common(p)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("falsify", help="search for an axiom-violating witness")
    p.add_argument("space")
    p.add_argument("claim",
                   help="b_metric:S | strong_b:S | supra:S,C | "
                        "interpolative:ALPHA,C | symmetry")
    common(p)
    p.set_defaults(fn=cmd_falsify)

    p = sub.add_parser("theta", help="comparison-function class verdicts")
    p.add_argument("theta")
    p.add_argument("--probes", default=None, metavar="T1,T2,...")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    common(p, samples=False)
    p.set_defaults(fn=cmd_theta)

    p = sub.add_parser("gallery", help="list the bundled example spaces")
    common(p, samples=False)
    p.set_defaults(fn=cmd_gallery)

    return parser


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    # Join "--box -20,20" so argparse does not read the value as an option.
    joined = []
    skip = False
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok == "--box" and i + 1 < len(argv):
            joined.append(f"--box={argv[i + 1]}")
            skip = True
        else:
            joined.append(tok)
    try:
        args = parser.parse_args(joined)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that code means "semi-metric
        # violation" here, so remap while keeping --help/--version at 0.
        return int(exc.code) if not exc.code else EXIT_INVALID
    try:
        return args.fn(args)
    except (SpaceFormatError, SemimetricFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, KeyError, DegenerateSampleError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SupraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
