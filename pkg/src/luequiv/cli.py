"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input validation failure, 3 numerical
failure. Every failure writes one line ``error[<kind>]: <message>`` to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import audit as au
from . import bipartite as bp
from . import equivalence as eq
from . import sampling
from .errors import InputError, NumericalError, ValidationError

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _complex_arg(text: str) -> complex:
    try:
        re, im = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None
    return complex(re, im)


def _cvec(z) -> list:
    return [[round(float(x.real), 12) + 0.0, round(float(x.imag), 12) + 0.0] for x in np.ravel(z)]


def _cmat(m) -> list:
    return [_cvec(row) for row in np.asarray(m)]


def _fmt_matrix(m, indent: str = "  ") -> str:
    rows = []
    for row in np.asarray(m):
        rows.append(indent + "[" + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row) + "]")
    return "\n".join(rows)


def _short(x: float) -> str:
    return repr(round(float(x), 4))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", type=Path, help="state-set JSON document")
    common.add_argument("--tol", type=float, default=au.DEFAULT_TOL, help="equality tolerance (default 1e-8)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=None, help="seed for generated test data")

    parser = _Parser(prog="luequiv", description="Local-unitary relations between bipartite pure states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("schmidt", "entropy", "filter"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--state", help="state name (default: every state)")

    for name in ("overlap", "max-overlap", "chain-check", "witness", "gap"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--from", dest="source", help="first state (default: first in file)")
        p.add_argument("--to", dest="target", help="second state (default: second in file)")
        if name == "max-overlap":
            p.add_argument("--side", choices=["A", "B"], default="A")
        if name == "witness":
            kind = p.add_mutually_exclusive_group(required=True)
            kind.add_argument("--one-sided", action="store_true")
            kind.add_argument("--two-sided", action="store_true")
            p.add_argument("--side", choices=["A", "B"], default="A")
        if name == "gap":
            p.add_argument("--random", action="store_true",
                           help="random contraction M, unitaries V, W and state phi (uses --seed)")
            p.add_argument("--dim", type=int, nargs="+", default=[2], help="dA [dB] for --random")

    p = sub.add_parser("counterexample", parents=[common])
    p.add_argument("--a", type=_complex_arg, required=True, metavar="RE,IM")
    p.add_argument("--b", type=_complex_arg, required=True, metavar="RE,IM")

    sub.add_parser("audit", parents=[common])
    return parser


def _load(args) -> au.StateSetDocument:
    if args.input is None:
        raise UsageError(f"{args.command} requires --input")
    try:
        data = args.input.read_bytes()
    except OSError as exc:
        raise ValidationError(f"cannot read {args.input}: {exc.strerror}") from None
    return au.parse_document(data)


def _selected(doc, name):
    if name is None:
        return list(zip(doc.names, doc.states))
    return [(name, doc.get(name))]


def _pair(doc, args):
    if len(doc) < 2 and (args.source is None or args.target is None):
        raise ValidationError("need two states (use --from/--to)")
    src = args.source or doc.names[0]
    dst = args.target or doc.names[1]
    return src, doc.get(src), dst, doc.get(dst)


def cmd_schmidt(args, out):
    doc = _load(args)
    result = {}
    for name, psi in _selected(doc, args.state):
        s = bp.schmidt(psi)
        result[name] = {
            "coefficients": [round(float(x), 12) for x in s.coefficients],
            "rank": s.rank,
            "left": _cmat(s.left),
            "right": _cmat(s.right),
        }
    if args.json:
        return result
    for name, r in result.items():
        out.append(f"{name}: coefficients ({', '.join(f'{x:.9f}' for x in r['coefficients'])}), rank {r['rank']}")
    return None


def cmd_entropy(args, out):
    doc = _load(args)
    result = {name: round(bp.entanglement_entropy(psi), 12) for name, psi in _selected(doc, args.state)}
    if args.json:
        return {"entropy_bits": result}
    out.extend(f"{name}: {s:.9f} bits" for name, s in result.items())
    return None


def cmd_overlap(args, out):
    doc = _load(args)
    src, p1, dst, p2 = _pair(doc, args)
    ov = bp.overlap(p1, p2)
    same, theta = bp.equal_up_to_phase(p1, p2, args.tol)
    if args.json:
        return {"from": src, "to": dst, "overlap": _cvec([ov])[0], "abs": round(abs(ov), 12),
                "equal_up_to_phase": same, "phase": theta}
    out.append(f"<{src}|{dst}> = {ov.real:+.9f}{ov.imag:+.9f}j  |.| = {abs(ov):.9f}")
    out.append(f"equal up to phase: {'yes' if same else 'no'}" + (f" (theta = {theta:.9f})" if same else ""))
    return None


def cmd_witness(args, out):
    doc = _load(args)
    src, p1, dst, p2 = _pair(doc, args)
    if args.one_sided:
        w = eq.one_sided_witness(p1, p2, args.side, args.tol)
        kind = f"one-sided ({args.side})"
    else:
        w = eq.two_sided_witness(p1, p2, args.tol)
        kind = "two-sided"
    if not w:
        if args.json:
            return {"from": src, "to": dst, "kind": kind, "exists": False,
                    "reason": w.reason, "diagnostic": round(w.diagnostic, 12)}
        out.append(f"NO WITNESS ({kind}) {src} -> {dst}: {w.reason}; diagnostic norm = {w.diagnostic:.9f}")
        return None
    if args.one_sided:
        mats = {"unitary": w.unitary}
    else:
        mats = {"unitary_a": w.unitary_a, "unitary_b": w.unitary_b}
    if args.json:
        return {"from": src, "to": dst, "kind": kind, "exists": True,
                "residual": w.residual, "phase": w.phase,
                **{label: _cmat(m) for label, m in mats.items()}}
    out.append(f"WITNESS ({kind}) {src} -> {dst}: residual = {w.residual:.3e}, phase = {w.phase:.9f}")
    for label, m in mats.items():
        out.append(f"{label}:")
        out.append(_fmt_matrix(m))
    return None


def cmd_filter(args, out):
    doc = _load(args)
    result = {}
    for name, psi in _selected(doc, args.state):
        f = eq.filter_from_max_entangled(psi)
        result[name] = {"matrix": _cmat(f.matrix), "success_probability": round(f.success_probability, 12)}
        if not args.json:
            out.append(f"{name}: success probability {f.success_probability:.9f}")
            out.append(_fmt_matrix(f.matrix))
    return result if args.json else None


def cmd_max_overlap(args, out):
    doc = _load(args)
    src, p1, dst, p2 = _pair(doc, args)
    value, u = eq.max_overlap_one_sided(p1, p2, args.side)
    if args.json:
        return {"from": src, "to": dst, "side": args.side, "value": round(value, 12), "optimizer": _cmat(u)}
    out.append(f"max one-sided ({args.side}) overlap {src} -> {dst}: {value:.9f}")
    out.append(_fmt_matrix(u))
    return None


def cmd_counterexample(args, out):
    norm = float(np.sqrt(abs(args.a) ** 2 + abs(args.b) ** 2))
    if norm == 0.0:
        raise ValidationError("a and b are both zero")
    # Command-line values are rounded decimals; rescale onto the unit sphere.
    params = eq.CounterexampleParams(args.a / norm, args.b / norm)
    res = eq.solve_one_sided_2x2(params, tol=args.tol)
    psi1, psi2 = params.states()
    wit = eq.one_sided_witness(psi1, psi2, "A", args.tol)
    mo, _ = eq.max_overlap_one_sided(psi1, psi2, "A")
    if args.json:
        body = {"a": _cvec([params.a])[0], "b": _cvec([params.b])[0],
                "unequal_moduli": params.unequal_moduli,
                "one_sided_witness": bool(wit), "max_overlap_one_sided": round(mo, 12)}
        if res:
            body.update(consistent=True, alpha=_cvec([res.alpha])[0], beta=_cvec([res.beta])[0],
                        lam=_cvec([res.lam])[0], unitary=_cmat(res.matrix))
        else:
            body.update(consistent=False, beta=0.0,
                        required_moduli=[round(res.required_modulus_first, 12),
                                         round(res.required_modulus_second, 12)])
        return body
    out.append(f"a = {params.a:.6f}, b = {params.b:.6f}")
    if res:
        out.append("CONSISTENT: (U (x) I) psi1 = psi2 is solvable")
        out.append(f"alpha = {res.alpha:.9f}, beta = 0, lambda = {res.lam:.9f}")
        out.append(_fmt_matrix(res.matrix))
    else:
        out.append("INCONSISTENT: equations force beta = 0, then require")
        out.append(f"  |alpha| = {_short(res.required_modulus_first)} (from a*alpha = conj(b))")
        out.append(f"  |alpha| = {_short(res.required_modulus_second)} (from b*lambda*conj(alpha) = -conj(a))")
        out.append(f"moduli: {_short(res.required_modulus_first)} vs {_short(res.required_modulus_second)}")
    out.append(f"one-sided witness: {'yes' if wit else 'no'}; max one-sided overlap = {mo:.9f}")
    return None


def cmd_gap(args, out):
    if args.random:
        seed = 0 if args.seed is None else args.seed
        rng = sampling.rng_from(seed)
        dims = (args.dim + args.dim)[:2] if len(args.dim) == 1 else args.dim[:2]
        m = sampling.random_contraction(rng, dims[0])
        v = sampling.random_unitary(rng, dims[0])
        w = sampling.random_unitary(rng, dims[1])
        phi = sampling.random_state(rng, *dims)
        label = f"random (seed {seed}, dims {dims[0]}x{dims[1]})"
    else:
        doc = _load(args)
        src, p1, dst, p2 = _pair(doc, args)
        if p1.dim_a != p1.dim_b:
            raise ValidationError("gap from a document needs square dimensions")
        wit = eq.two_sided_witness(p1, p2, args.tol)
        if not wit:
            raise ValidationError(f"no two-sided witness {src} -> {dst} (spectra differ by {wit.diagnostic:.3e})")
        m = eq.filter_from_max_entangled(p1).matrix
        v, w = wit.unitary_a, wit.unitary_b
        phi = bp.max_entangled(p1.dim_a)
        label = f"filter({src}) vs two-sided witness {src} -> {dst} on Phi_{p1.dim_a}"
        seed = args.seed
    gap = eq.commutation_gap(m, v, w, phi)
    if args.json:
        return {"source": label, "seed": seed, "gap": round(gap, 12)}
    out.append(f"commutation gap [{label}]: {gap:.9f}")
    return None


def cmd_chain_check(args, out):
    doc = _load(args)
    src, p1, dst, p2 = _pair(doc, args)
    r = eq.relation_chain_check(p1, p2, args.tol)
    if args.json:
        return {"from": src, "to": dst,
                "composed": {"residual": round(r.composed_residual, 12), "holds": r.composed_holds},
                "swapped": {"residual": round(r.swapped_residual, 12), "holds": r.swapped_holds},
                "gap": round(r.gap, 12)}
    out.append(f"(V(x)W)(M(x)I) Phi -> {dst}: residual {r.composed_residual:.3e} "
               f"[{'holds' if r.composed_holds else 'FAILS'}]")
    out.append(f"(M(x)I)(V(x)W) Phi -> {dst}: residual {r.swapped_residual:.3e} "
               f"[{'holds' if r.swapped_holds else 'FAILS'}]")
    out.append(f"commutation gap: {r.gap:.9f}")
    return None


def cmd_audit(args, out):
    doc = _load(args)
    report = au.audit(doc, args.tol)
    if args.json:
        return report.to_dict()
    out.append(report.render())
    return None


COMMANDS = {
    "schmidt": cmd_schmidt,
    "entropy": cmd_entropy,
    "overlap": cmd_overlap,
    "witness": cmd_witness,
    "filter": cmd_filter,
    "max-overlap": cmd_max_overlap,
    "counterexample": cmd_counterexample,
    "gap": cmd_gap,
    "audit": cmd_audit,
    "chain-check": cmd_chain_check,
}


def _fail(kind: str, message: str, stderr) -> None:
    print(f"error[{kind}]: {' '.join(str(message).split())}", file=stderr)


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _fail("usage", exc, stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    out: list[str] = []
    try:
        result = COMMANDS[args.command](args, out)
    except UsageError as exc:
        _fail("usage", exc, stderr)
        return EXIT_USAGE
    except InputError as exc:
        _fail("input", exc, stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        _fail("numerical", exc, stderr)
        return EXIT_NUMERICAL
    if args.json:
        print(json.dumps(result, indent=2), file=stdout)
    else:
        print("\n".join(out), file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())
