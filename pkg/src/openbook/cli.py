"""Command-line front end.  Every command prints one JSON report.

Exit codes: 0 analysis completed (whatever the verdict), 2 bad input,
3 search bound hit, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
import warnings
from typing import Any, Callable

import numpy as np

from . import __version__
from . import kernels, polyloop, svg
from .braid import (band_to_artin, artin_to_band, mirror, parse_artin_word, parse_band_word,
                    word_invariants)
from .cactus import (boundary_rotate, condition9, count_cacti, enumerate_cacti, hurwitz_move,
                     parse_cactus, transposition_graph, validate_cactus)
from .errors import DisconnectedSurface, IllegalEvent, NumericalFailure, ParseError
from .ladder import (braid3_decide, find_passes, ladder_from_word, sufficient_condition,
                     verify_certificate)
from .rampichini import (parse_script, script_valid, search_all_conjugates, search_braidable,
                         synthesize_diagram, validate_diagram)

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_NUMERIC = 0, 2, 3, 4


class _Exhausted(Exception):
    def __init__(self, report: dict):
        self.report = report


def _read(arg: str) -> str:
    """Literal text, ``@path`` for a file, or ``-`` for stdin."""
    try:
        if arg == "-":
            return sys.stdin.read()
        if arg.startswith("@"):
            with open(arg[1:], encoding="utf-8") as fh:
                return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {arg[1:]!r}: {exc.strerror}") from exc
    return arg


def _read_file(path: str) -> str:
    return _read(path if path == "-" or path.startswith("@") else "@" + path)


def _write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _parse_coeffs(text: str) -> np.ndarray:
    try:
        vals = [complex(tok.replace(" ", "")) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParseError(f"bad coefficient list {text!r}") from exc
    if not vals:
        raise ParseError("empty coefficient list")
    return np.array(vals, dtype=complex)


def _cx(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _loop(args) -> polyloop.SampledPolyLoop:
    if args.example:
        return polyloop.example_loop(args.example, args.samples or 256)
    if not args.loop:
        raise ParseError("give a loop JSON file or --example")
    loop = polyloop.loop_from_json(_read_file(args.loop))
    if args.samples is not None and args.samples != loop.m:
        raise ParseError(f"--samples {args.samples} does not match the {loop.m} samples in the file")
    return loop


# ------------------------------------------------------------------ commands

def cmd_convert(args) -> dict:
    if args.source == "band":
        w = parse_band_word(_read(args.word))
        a = band_to_artin(w)
        if args.mirror:
            a = mirror(a)
        return {"artin": a.to_text(), "letters": list(a.letters), "exponent_sum": a.exponent_sum()}
    a = parse_artin_word(_read(args.word))
    if args.mirror:
        a = mirror(a)
    b = artin_to_band(a)
    return {"band": b.to_text(), "letters": b.to_json()}


def cmd_analyze(args) -> dict:
    w = parse_band_word(_read(args.word))
    perm, st = word_invariants(w)
    a = band_to_artin(w)
    return {
        "word": w.to_text(), "pretty": str(w), "n": w.n, "length": len(w),
        "permutation": str(perm), "cycles": [list(c) for c in perm.cycles()],
        "components": st.components, "euler": st.euler, "betti1": st.betti1, "connected": st.connected,
        "artin": a.to_text(), "exponent_sum": a.exponent_sum(),
        "sufficient_condition": sufficient_condition(w),
    }


def cmd_cacti_enumerate(args) -> dict:
    out: dict[str, Any] = {"n": args.n, "backend": args.backend or kernels.BACKEND}
    try:
        if args.count_only:
            out["count"] = count_cacti(args.n, args.backend)
        else:
            cs = enumerate_cacti(args.n, args.backend)
            out["count"] = len(cs)
            out["cacti"] = [c.to_json()["taus"] for c in cs]
    except (ValueError, RuntimeError) as exc:
        raise ParseError(str(exc)) from exc
    out["expected"] = args.n ** (args.n - 2)
    return out


def cmd_cacti_move(args) -> dict:
    c = parse_cactus(_read(args.cactus))
    try:
        if args.hurwitz is not None:
            res = hurwitz_move(c, args.hurwitz, args.dir)
        else:
            res = boundary_rotate(c, args.rotate)
    except (IndexError, ValueError) as exc:
        raise ParseError(str(exc)) from exc
    return {"input": c.to_json(), "output": res.to_json(), "text": res.to_text(),
            "valid": validate_cactus(res), "product": str(res.product())}


def cmd_cacti_check(args) -> dict:
    c = parse_cactus(_read(args.cactus))
    edges, tree = transposition_graph(c)
    return {"cactus": c.to_json(), "valid": validate_cactus(c), "product": str(c.product()),
            "is_tree": tree, "condition9": condition9(c.taus, c.n).to_json()}


def cmd_search(args, timing: dict) -> dict:
    w = parse_band_word(_read(args.word))
    t0 = time.perf_counter()
    if args.all_conjugates:
        agg, results = search_all_conjugates(w, args.max_states)
        out = {"word": w.to_text(), "aggregate": agg,
               "conjugates": [{"word": c.to_text(), "verdict": v.to_json(timing=False)} for c, v in results]}
        witness = next((v.script for _, v in results if v.status == "FOUND"), None)
        status = agg
    else:
        v = search_braidable(w, args.max_states)
        out = {"word": w.to_text(), "verdict": v.to_json(timing=False)}
        witness, status = v.script, v.status
    timing["search_seconds"] = round(time.perf_counter() - t0, 6)
    out["max_states"] = args.max_states
    if witness is not None:
        d = synthesize_diagram(witness)
        out["diagram_check"] = validate_diagram(d).to_json()
        if args.render:
            _write_atomic(args.render, svg.render_diagram(d))
            out["rendered"] = args.render
    if status == "EXHAUSTED":
        raise _Exhausted(out)
    return out


def cmd_validate_script(args) -> dict:
    s = parse_script(_read_file(args.script))
    rep = script_valid(s)
    out = {"script": s.to_json(), "script_check": rep.to_json()}
    if rep.valid:
        d = synthesize_diagram(s)
        out["diagram_check"] = validate_diagram(d).to_json()
        if args.render:
            _write_atomic(args.render, svg.render_diagram(d))
            out["rendered"] = args.render
    return out


def cmd_ladder_passes(args) -> dict:
    w = parse_band_word(_read(args.word))
    d = ladder_from_word(w)
    cert = find_passes(d)
    out = {"word": w.to_text(), "ladder": d.to_json(), "found": cert is not None}
    if cert is not None:
        out["certificate"] = cert.to_json()
        checks = verify_certificate(d, cert)
        out["verified"] = all(checks.values())
        out["checks"] = checks
    if args.render:
        _write_atomic(args.render, svg.render_ladder(d, cert))
        out["rendered"] = args.render
    return out


def cmd_ladder_braid3(args) -> dict:
    w = parse_band_word(_read(args.word))
    if w.n > 3:
        raise ParseError("braid3 takes words on at most three strands")
    cert = braid3_decide(w)
    return {"word": w.to_text(), "found": cert is not None, "certificate": cert.to_json() if cert else None}


def cmd_ladder_sufficient(args) -> dict:
    w = parse_band_word(_read(args.word))
    return {"word": w.to_text(), "sufficient_condition": sufficient_condition(w)}


def _tolerances(args) -> dict:
    out = {"distinct": polyloop.TOL_DISTINCT, "newton_residual": polyloop.NEWTON_RESIDUAL,
           "newton_iterations": polyloop.NEWTON_ITERS, "collision_ratio": polyloop.COLLISION_RATIO}
    if hasattr(args, "tol_rate"):
        out["tol_rate"] = args.tol_rate
    return out


def cmd_pfib_check(args) -> dict:
    loop = _loop(args)
    cd = polyloop.critical_data(loop)
    cert = polyloop.pfib_check(cd, args.tol_rate)
    out = {"n": loop.n, "m": loop.m, "certificate": cert.to_json(), "closure": cd.closure}
    if args.render:
        _write_atomic(args.render, svg.render_critical_values(cd.values))
        out["rendered"] = args.render
    return out


def cmd_pfib_braid(args) -> dict:
    loop = _loop(args)
    w = polyloop.extract_braid_word(loop, args.theta)
    return {"n": loop.n, "m": loop.m, "artin": w.to_text(), "letters": list(w.letters),
            "permutation": str(w.permutation()), "root_permutation": str(polyloop.root_permutation(loop, args.theta))}


def cmd_pfib_monodromy(args) -> dict:
    p = _parse_coeffs(args.coeffs)
    c = polyloop.cactus_of_polynomial(p)
    _, v = polyloop.critical_values(p)
    v = v[np.argsort(np.mod(np.angle(v), 2 * np.pi))]
    edges, tree = transposition_graph(c)
    return {"coeffs": [_cx(z) for z in p], "critical_values": [_cx(z) for z in v],
            "cactus": c.to_json(), "product": str(c.product()), "is_tree": tree,
            "labels_reversed": polyloop.calibrate()}


def cmd_pfib_lift(args) -> dict:
    p0 = _parse_coeffs(args.coeffs)
    if args.cv:
        try:
            data = json.loads(_read_file(args.cv))
            cv = polyloop.complex_rows(data["values"] if isinstance(data, dict) else data)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad critical-value loop: {exc}") from exc
    else:
        m = args.samples or 256
        t = 2 * np.pi * np.arange(m) / m
        cv = (-np.exp(1j * t))[:, None]
    loop, end = polyloop.lift_cv_loop(p0, cv)
    cd = polyloop.critical_data(loop)
    dev = float(np.max(np.abs(cd.values - cv))) if cv.shape[1] == 1 else float(
        max(np.max(np.min(np.abs(cd.values[k][:, None] - cv[k][None, :]), axis=0)) for k in range(len(cv))))
    return {"start": [_cx(z) for z in p0], "end": [_cx(z) for z in end], "m": loop.m,
            "max_cv_deviation": dev, "returns_to_start": bool(np.max(np.abs(end - p0)) < 1e-8)}


def cmd_pfib_fiber(args) -> dict:
    target = _parse_coeffs(args.target) if args.target else None
    found = polyloop.fiber_probe(args.n, target, starts=args.starts, seed=args.seed)
    return {"n": args.n, "found": len(found), "expected": args.n ** (args.n - 1),
            "polynomials": [[_cx(z) for z in f] for f in found]}


def cmd_rh(args) -> dict:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            euler, unknot = polyloop.riemann_hurwitz(args.n, args.b)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    out = {"n": args.n, "b": args.b, "euler": euler, "unknot": unknot}
    if caught:
        out["warning"] = str(caught[0].message)
    return out


def cmd_render(args) -> dict:
    if args.kind == "diagram":
        s = parse_script(_read_file(args.input))
        text = svg.render_diagram(synthesize_diagram(s))
    elif args.kind == "ladder":
        w = parse_band_word(_read(args.input))
        d = ladder_from_word(w)
        text = svg.render_ladder(d, find_passes(d))
    else:
        loop = polyloop.loop_from_json(_read_file(args.input))
        text = svg.render_critical_values(polyloop.critical_data(loop).values)
    _write_atomic(args.output, text)
    return {"kind": args.kind, "rendered": args.output}


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="openbook", description="Braids, open books and P-fibered braid certificates.")
    p.add_argument("--version", action="version", version=f"openbook {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def word_cmd(sp, fn, help_word="band word, e.g. 'n=4; 3:4 -1:2 2:3' (or @file)"):
        sp.add_argument("word", help=help_word)
        sp.set_defaults(func=fn)

    c = sub.add_parser("convert", help="convert between band-generator and Artin braid words",
                       description="Convert a braid word between band generators a_{i,j} and Artin generators sigma_k.")
    c.add_argument("--from", dest="source", choices=["band", "artin"], default="band")
    c.add_argument("--mirror", action="store_true", help="negate every Artin exponent")
    word_cmd(c, cmd_convert, "braid word text (or @file)")

    a = sub.add_parser("analyze", help="permutation and banded-surface invariants of a band word",
                       description="Closure permutation, component count, Euler characteristic and connectivity "
                                   "of the banded Seifert surface of a band word.")
    word_cmd(a, cmd_analyze)

    ca = sub.add_parser("cacti", help="cacti: transposition factorizations of the n-cycle (1 n ... 2)")
    csub = ca.add_subparsers(dest="cacti_command", required=True)
    ce = csub.add_parser("enumerate", help="list all cacti of degree n",
                         description="Enumerate ordered transposition lists whose product is (1 n ... 2).")
    ce.add_argument("-n", type=int, required=True)
    ce.add_argument("--count-only", action="store_true")
    ce.add_argument("--backend", choices=["cython", "python"], default=None)
    ce.set_defaults(func=cmd_cacti_enumerate)
    cm = csub.add_parser("move", help="Hurwitz move or boundary rotation of a cactus",
                         description="Apply a Hurwitz exchange of two adjacent factors or a boundary rotation.")
    cm.add_argument("cactus", help="'n=4; (1,2) (3,4) (2,4)' or JSON (or @file)")
    g = cm.add_mutually_exclusive_group(required=True)
    g.add_argument("--hurwitz", type=int, metavar="I", help="exchange factors I and I+1 (1-based)")
    g.add_argument("--rotate", choices=["forward", "backward"])
    cm.add_argument("--dir", choices=["under", "over"], default="under")
    cm.set_defaults(func=cmd_cacti_move)
    cc = csub.add_parser("check", help="product, tree and t=0 row conditions of a cactus",
                         description="Check a transposition list against the cactus product condition.")
    cc.add_argument("cactus")
    cc.set_defaults(func=cmd_cacti_check)

    s = sub.add_parser("search", help="search for a Rampichini diagram of a band word",
                       description="Breadth-first search over band-relation and conjugation moves for a move "
                                   "script realizing a Rampichini diagram (a certificate that the braid is "
                                   "P-fibered with respect to its axis).")
    s.add_argument("word")
    s.add_argument("--all-conjugates", action="store_true")
    s.add_argument("--max-states", type=int, default=None)
    s.add_argument("--render", metavar="OUT.svg")
    s.set_defaults(func=cmd_search, wants_timing=True)

    v = sub.add_parser("validate-script", help="check a Rampichini move script and its diagram",
                       description="Validate a move script and the torus diagram synthesized from it.")
    v.add_argument("script", help="move script JSON file (or -)")
    v.add_argument("--render", metavar="OUT.svg")
    v.set_defaults(func=cmd_validate_script)

    la = sub.add_parser("ladder", help="ladder diagrams, overpasses and underpasses")
    lsub = la.add_subparsers(dest="ladder_command", required=True)
    lp = lsub.add_parser("passes", help="search an overpass/underpass pair in the ladder diagram",
                         description="Find an overpass and an underpass in the ladder diagram of a banded surface.")
    lp.add_argument("word")
    lp.add_argument("--render", metavar="OUT.svg")
    lp.set_defaults(func=cmd_ladder_passes)
    lb = lsub.add_parser("braid3", help="certificate for a banded surface on at most three strands",
                         description="Search index shifts, rotations and the mirror for a ladder with passes.")
    word_cmd(lb, cmd_ladder_braid3)
    ls = lsub.add_parser("sufficient", help="letters a_{i,i+1} for all i and a_{1,n} present",
                         description="Check the letter condition that guarantees an overpass/underpass pair.")
    word_cmd(ls, cmd_ladder_sufficient)

    pf = sub.add_parser("pfib", help="polynomial loops: P-fibered braid certificates and monodromy")
    psub = pf.add_subparsers(dest="pfib_command", required=True)

    def loop_args(sp):
        sp.add_argument("loop", nargs="?", help="loop JSON with 'roots' or 'coeffs'")
        sp.add_argument("--example", choices=["square", "cubic", "reversing", "cube"])
        sp.add_argument("--samples", type=int, default=None, help="sample count m (default 256 for --example)")

    pc = psub.add_parser("check", help="argument rates of the critical values never vanish",
                         description="Certify a polynomial loop as P-fibered at sampling resolution m: every "
                                     "critical value strand turns about 0 with rates of one sign.")
    loop_args(pc)
    pc.add_argument("--tol-rate", type=float, default=polyloop.TOL_RATE)
    pc.add_argument("--render", metavar="OUT.svg")
    pc.set_defaults(func=cmd_pfib_check)
    pb = psub.add_parser("braid", help="Artin word of the braid traced by the roots",
                         description="Read the geometric braid of the roots of a polynomial loop as an Artin word.")
    loop_args(pb)
    pb.add_argument("--theta", type=float, default=0.0, help="projection direction")
    pb.set_defaults(func=cmd_pfib_braid)
    pm = psub.add_parser("monodromy", help="cactus of a polynomial from petal monodromies",
                         description="Monodromy of the branched cover z -> p(z) around each critical value.")
    pm.add_argument("--coeffs", required=True, help="a0,...,a_{n-1} of the monic polynomial, e.g. '0.5+0.2j,-0.27,0'")
    pm.set_defaults(func=cmd_pfib_monodromy)
    pl = psub.add_parser("lift", help="lift a critical-value loop to a coefficient loop",
                         description="Path lifting through the covering from polynomials to critical values.")
    pl.add_argument("--coeffs", required=True, help="start polynomial a0,...,a_{n-1}; a0 stays fixed")
    pl.add_argument("--cv", help="JSON file with the critical-value loop (default: -e^{it})")
    pl.add_argument("--samples", type=int, default=None)
    pl.set_defaults(func=cmd_pfib_lift)
    pfi = psub.add_parser("fiber", help="polynomials with prescribed critical values",
                          description="Count the fiber of the critical-value map over a generic point.")
    pfi.add_argument("-n", type=int, required=True)
    pfi.add_argument("--target", help="critical values v1,...,v_{n-1}")
    pfi.add_argument("--starts", type=int, default=60)
    pfi.add_argument("--seed", type=int, default=0)
    pfi.set_defaults(func=cmd_pfib_fiber)

    r = sub.add_parser("rh", help="Euler characteristic of a branched cover of the disk",
                       description="Riemann-Hurwitz count for an n-fold cover of the disk branched over a "
                                   "b-strand braid.")
    r.add_argument("-n", type=int, required=True)
    r.add_argument("-b", type=int, required=True)
    r.set_defaults(func=cmd_rh)

    rd = sub.add_parser("render", help="draw a Rampichini diagram, ladder or critical-value plot as SVG",
                        description="Render a torus diagram (from a move script), a ladder diagram with passes, "
                                    "or critical-value trajectories.")
    rd.add_argument("kind", choices=["diagram", "ladder", "cv"])
    rd.add_argument("input")
    rd.add_argument("-o", "--output", required=True)
    rd.set_defaults(func=cmd_render)
    return p


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        # argparse has already printed its usage message to stderr
        return EXIT_INPUT, {"command": None, "version": __version__, "inputs": {"argv": argv},
                            "error": {"type": "UsageError", "message": "invalid command line"},
                            "exit_code": EXIT_INPUT}
    report: dict[str, Any] = {"command": " ".join(
        x for x in (args.command, getattr(args, "cacti_command", None), getattr(args, "ladder_command", None),
                    getattr(args, "pfib_command", None)) if x),
        "version": __version__}
    report["inputs"] = {k: v for k, v in sorted(vars(args).items())
                        if k not in ("func", "wants_timing", "command") and not k.endswith("_command")}
    if args.command == "pfib":
        report["tolerances"] = _tolerances(args)
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    code = EXIT_OK
    fn: Callable = args.func
    try:
        report["result"] = fn(args, timing) if getattr(args, "wants_timing", False) else fn(args)
    except _Exhausted as exc:
        report["result"] = exc.report
        code = EXIT_BOUND
    except (ParseError, IllegalEvent, DisconnectedSurface) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
    except NumericalFailure as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_NUMERIC
    timing["seconds"] = round(time.perf_counter() - t0, 6)
    report["timing"] = timing
    report["exit_code"] = code
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
