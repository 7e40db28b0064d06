"""Command-line surface: JSON in, JSON (or text summary) out.

Exit codes: 0 = Classical / check passed, 1 = NotClassical / check failed,
2 = Unknown or inconclusive, 64 = usage or input error.  All commands are
deterministic given the same inputs and --seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import certify, oracle, spinmap, symtensor

__all__ = ["run", "main", "gen_random_classical"]

EX_USAGE = 64


class InputError(Exception):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_tensor(doc):
    try:
        return symtensor.SymTensor.from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad tensor JSON: {exc}") from exc


def _parse_density(doc):
    try:
        return spinmap.DensityMatrix.from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad density JSON: {exc}") from exc


def _parse_mixture(doc):
    try:
        terms = [(t["w"], spinmap.CoherentLabel(t["theta"], t["phi"]))
                 for t in doc["terms"]]
        return spinmap.classical_mixture(doc["N"], terms)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad mixture JSON: {exc}") from exc


def _tensor_from_any(doc):
    """Accept tensor, density, or mixture JSON and return the tensor."""
    if "entries" in doc:
        return _parse_tensor(doc)
    if "matrix" in doc:
        return spinmap.density_to_tensor(_parse_density(doc))
    if "terms" in doc:
        return _parse_mixture(doc)[1]
    raise InputError("input JSON is neither a tensor, a density matrix, "
                     "nor a mixture")


def _emit(args, payload, text):
    out = (json.dumps(payload, indent=2) + "\n"
           if args.format == "json" else text + "\n")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _config(args):
    cfg = certify.SolverConfig()
    if args.grid:
        cfg.grid_size = args.grid
    if args.starts:
        cfg.starts = args.starts
    if args.seed is not None:
        cfg.seed = args.seed
    if args.tol:
        cfg.tau_dec = args.tol
        cfg.tol_psd = args.tol
        cfg.tol_sos = args.tol
    return cfg


def gen_random_classical(N, terms, seed):
    """Random classical mixture: uniform directions, Dirichlet(1,...,1) weights."""
    cap = (N + 1) ** 2 + 1
    if not 1 <= terms <= cap:
        raise ValueError(f"terms must be between 1 and {cap}")
    rng = np.random.default_rng(seed)
    ws = rng.dirichlet(np.ones(terms))
    out = []
    for w in ws:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        theta = math.acos(np.clip(v[2], -1.0, 1.0))
        phi = math.atan2(v[1], v[0]) % (2 * math.pi)
        out.append({"w": float(w), "theta": theta, "phi": phi})
    return {"N": N, "terms": out}


# ---------------------------------------------------------------------------
# commands


def _cmd_map(args):
    doc = _load_json(args.input)
    if "matrix" in doc:
        tensor = spinmap.density_to_tensor(_parse_density(doc))
        _emit(args, tensor.to_dict(),
              f"tensor: order {tensor.order}, {len(tensor.entries)} entries")
    elif "entries" in doc:
        rho = spinmap.tensor_to_density(_parse_tensor(doc))
        _emit(args, rho.to_dict(),
              f"density matrix: N={rho.N}, trace {rho.trace:.12g}")
    else:
        raise InputError("map expects a tensor or density JSON")
    return 0


def _cmd_classify(args):
    A = _tensor_from_any(_load_json(args.input))
    verdict = certify.classify(A, _config(args))
    lines = [f"status: {verdict.status}"]
    for name, outcome, value in verdict.stages:
        lines.append(f"  {name}: {outcome} ({value:.6g})")
    if verdict.certificate:
        lines.append(f"  certificate: {len(verdict.certificate.terms)} term(s), "
                     f"residual {verdict.certificate.residual:.3g}")
    if verdict.witness:
        lines.append(f"  witness: {verdict.witness.kind}, "
                     f"value {verdict.witness.value:.6g}")
    _emit(args, verdict.to_dict(), "\n".join(lines))
    return {"Classical": 0, "NotClassical": 1, "Unknown": 2}[verdict.status]


def _cmd_check(args):
    A = _tensor_from_any(_load_json(args.input))
    cfg = _config(args)
    if args.what == "regsym":
        viol = A.regular_symmetry_violation()
        ok = viol <= 1e-10 * max(1.0, abs(A.entry((0,) * A.order)))
        _emit(args, {"check": "regsym", "passed": ok, "violation": viol},
              f"regular symmetry: {'pass' if ok else 'fail'} (violation {viol:.3g})")
        return 0 if ok else 1
    if args.what == "psd":
        if A.order % 2:
            raise InputError("psd check requires even order")
        val, point = certify.min_z_eig(A, cfg)
        ok = val >= -cfg.tol_psd
        _emit(args, {"check": "psd", "passed": ok, "min_value": val,
                     "point": [float(p) for p in point]},
              f"min Z-eigenvalue {val:.6g} at {np.round(point, 6).tolist()}: "
              f"{'pass' if ok else 'fail'}")
        return 0 if ok else 1
    if args.what == "restricted":
        val, nhat = certify.restricted_min(A, cfg)
        ok = val >= -cfg.tol_psd
        _emit(args, {"check": "restricted", "passed": ok, "min_value": val,
                     "nhat": [float(p) for p in nhat]},
              f"restricted minimum {val:.6g}: {'pass' if ok else 'fail'}")
        return 0 if ok else 1
    if args.what == "sos":
        if A.order % 2:
            raise InputError("sos check requires even order")
        status, cert = certify.sos_check(A, cfg)
        payload = {"check": "sos", "status": status}
        if cert:
            payload.update(constraint_residual=cert.constraint_residual,
                           min_eigenvalue=cert.min_eigenvalue)
        _emit(args, payload, f"sos: {status}")
        return 0 if status == "Certified" else 2
    raise InputError(f"unknown check {args.what!r}")


def _cmd_decompose(args):
    A = _tensor_from_any(_load_json(args.input))
    status, dec = certify.regular_decompose(A, _config(args))
    if status == "Found":
        _emit(args, {"status": "Found", **dec.to_dict()},
              f"Found: {len(dec.terms)} term(s), residual {dec.residual:.3g}")
        return 0
    _emit(args, {"status": "NotFound"}, "NotFound (inconclusive)")
    return 2


def _cmd_rotate(args):
    A = _parse_tensor(_load_json(args.input))
    rdoc = _load_json(args.rotation)
    R = np.asarray(rdoc["R"] if isinstance(rdoc, dict) else rdoc, dtype=float)
    try:
        B = A.rotate(R)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(args, B.to_dict(), f"rotated tensor: {len(B.entries)} entries")
    return 0


def _cmd_gen(args):
    if args.kind == "coherent":
        spinmap.CoherentLabel(args.theta, args.phi)  # validate ranges
        doc = {"N": args.N,
               "terms": [{"w": 1.0, "theta": args.theta, "phi": args.phi}]}
    elif args.kind == "mixture":
        if not args.term:
            raise InputError("gen mixture needs at least one --term w,theta,phi")
        terms = []
        for spec in args.term:
            try:
                w, theta, phi = (float(p) for p in spec.split(","))
            except ValueError as exc:
                raise InputError(f"bad --term {spec!r}") from exc
            terms.append({"w": w, "theta": theta, "phi": phi})
        doc = {"N": args.N, "terms": terms}
    else:  # random-classical
        try:
            doc = gen_random_classical(args.N, args.terms, args.seed or 0)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    _parse_mixture(doc)  # sanity: every generated fixture must parse
    _emit(args, doc, json.dumps(doc))
    return 0


# ---------------------------------------------------------------------------


def _build_parser():
    p = argparse.ArgumentParser(
        prog="spincones",
        description="Certify or refute classicality of spin-j states via "
                    "their representing tensors.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file")
    common.add_argument("--output", help="output file (default stdout)")
    common.add_argument("--tol", type=float, help="override solver tolerances")
    common.add_argument("--grid", type=int, help="sphere dictionary size")
    common.add_argument("--starts", type=int, help="multi-start count")
    common.add_argument("--seed", type=int, help="solver seed")
    common.add_argument("--format", choices=("json", "text"), default="json")

    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("map", parents=[common]).set_defaults(fn=_cmd_map)
    sub.add_parser("classify", parents=[common]).set_defaults(fn=_cmd_classify)

    chk = sub.add_parser("check", parents=[common])
    chk.add_argument("what", choices=("psd", "sos", "regsym", "restricted"))
    chk.set_defaults(fn=_cmd_check)

    sub.add_parser("decompose", parents=[common]).set_defaults(fn=_cmd_decompose)

    rot = sub.add_parser("rotate", parents=[common])
    rot.add_argument("--rotation", required=True,
                     help="JSON file with a 3x3 orthogonal matrix (or {\"R\": ...})")
    rot.set_defaults(fn=_cmd_rotate)

    gen = sub.add_parser("gen", parents=[common])
    gen.add_argument("kind", choices=("coherent", "mixture", "random-classical"))
    gen.add_argument("--N", type=int, default=2)
    gen.add_argument("--theta", type=float, default=0.0)
    gen.add_argument("--phi", type=float, default=0.0)
    gen.add_argument("--terms", type=int, default=1)
    gen.add_argument("--term", action="append",
                     help="mixture term as w,theta,phi (repeatable)")
    gen.set_defaults(fn=_cmd_gen)
    return p


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EX_USAGE if exc.code not in (0, None) else 0
    if args.fn is not _cmd_gen and not args.input:
        sys.stderr.write("error: --input is required for this command\n")
        return EX_USAGE
    try:
        return args.fn(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EX_USAGE
    except (np.linalg.LinAlgError, FloatingPointError, RuntimeError) as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
