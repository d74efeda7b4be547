"""Command-line front end: ``infocoh <command> [files] [--alpha ...] [--N ...]``.

Exit codes: 0 success, 1 computational inconsistency, 2 input error.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import __version__
from .cochain import (
    _alpha_str, as_alpha, cochain_from_dict, cocycle_residual, entropy,
    entropy_cochain, semidirect_check,
)
from .cohomology import (
    assemble_z1_system, component_entropy_vectors, entropy_vector,
    fit_entropy_multiples, h0_compute, nullspace_membership, predict_h1,
    prime_components,
    z1_h1_dimensions,
)
from .exact import LogLinear, exact_str
from .funceq import (
    assemble_funceq_system, assemble_two_function_system, closed_form_check,
    entropy_sample, modular_group_check, orbit_witness, symmetry_propagation,
)
from .inputs import InputError, dumps, label_json, parse_spec
from .linalg import exact_rank, float_nullspace, vector_rank
from .models import induced_model
from .probability import law_key
from .structure import (
    coproduct_structure, limit_sections, product_structure, validate_structure,
)

COMMANDS = (
    "validate", "limit", "model", "product", "coproduct", "entropy", "cocycle-check",
    "h0", "z1", "h1", "predict-h1", "fit-lambda", "funceq", "modular-check", "orbit",
)
FILES_NEEDED = {"product": 2, "coproduct": 2, "funceq": 0, "modular-check": 0, "orbit": 0, "entropy": 0}


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    alphas: list = field(default_factory=lambda: ["1"])
    N: int = 4
    tol: float = 1e-10
    format: str = "text"
    seed: int = 0
    law: str = None
    cochain: str = None
    fraction: str = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError("unknown command %r" % self.command)
        if self.N < 1:
            raise InputError("--N must be at least 1")
        if not self.tol > 0:
            raise InputError("--tol must be positive")
        try:
            self.alpha_params = [as_alpha(a) for a in self.alphas]
        except (ValueError, ZeroDivisionError) as e:
            raise InputError("bad --alpha: %s" % e) from None


class Inconsistent(Exception):
    """Raised inside a command when two independent routes disagree."""


def _num(x):
    """JSON value for a number: exact values as strings, floats as floats."""
    if isinstance(x, (Fraction, LogLinear)):
        return exact_str(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    return float(x)


def _load(cfg, k=0):
    S, Q = parse_spec(cfg.inputs[k])
    rep = validate_structure(S)
    if not rep.ok:
        names = ", ".join(r.name for r in rep.failures())
        raise InputError("%s: axiom check failed: %s" % (cfg.inputs[k], names), rep)
    return S, Q


def _per_alpha(cfg, fn):
    return {_alpha_str(a): fn(a) for a in cfg.alpha_params}


# -- commands --------------------------------------------------------------

def cmd_validate(cfg):
    S, _ = parse_spec(cfg.inputs[0])
    rep = validate_structure(S)
    out = rep.to_dict()
    out["objects"] = len(S.ids)
    out["height"] = S.height() if not S.cycles else None
    if not rep.ok:
        raise InputError("axiom check failed: " + ", ".join(r.name for r in rep.failures()), out)
    return out


def cmd_limit(cfg):
    S, _ = _load(cfg)
    secs = limit_sections(S)
    return {
        "variables": list(S.ids),
        "count": len(secs),
        "sections": [[label_json(v) for v in s] for s in secs],
    }


def cmd_model(cfg):
    S, _ = _load(cfg)
    model, rep = induced_model(S)
    out = {"model": model is not None, "omega_size": len(limit_sections(S))}
    if model is not None:
        out["partitions"] = {x: list(model.rho(x).assignment) for x in S.ids}
    else:
        out["failure"] = {k: label_json(v) for k, v in vars(rep).items() if v not in (None, False)}
    return out


def cmd_product(cfg):
    S1, _ = _load(cfg, 0)
    S2, _ = _load(cfg, 1)
    P, _, _ = product_structure(S1, S2)
    rep = validate_structure(P)
    return {"objects": len(P.ids), "height": P.height(), "valid": rep.ok,
            "failures": [r.name for r in rep.failures()], "sections": len(limit_sections(P))}


def cmd_coproduct(cfg):
    S1, _ = _load(cfg, 0)
    S2, _ = _load(cfg, 1)
    C, _, _ = coproduct_structure(S1, S2)
    rep = validate_structure(C)
    n = len(limit_sections(C))
    expect = len(limit_sections(S1)) * len(limit_sections(S2))
    if n != expect:
        raise Inconsistent("coproduct has %d sections, expected %d" % (n, expect))
    return {"objects": len(C.ids), "height": C.height(), "valid": rep.ok,
            "failures": [r.name for r in rep.failures()], "sections": n}


def _parse_law(s):
    try:
        w = [Fraction(t.strip()) for t in s.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError("bad --law %r" % s) from None
    if any(p < 0 for p in w) or sum(w) != 1:
        raise InputError("--law must be non-negative and sum to 1")
    return w


def cmd_entropy(cfg):
    if cfg.law:
        w = _parse_law(cfg.law)
        return {"law": law_key(w), "entropy": _per_alpha(cfg, lambda a: _num(entropy(a, w)))}
    if not cfg.inputs:
        raise InputError("entropy needs --law or a structure file")
    S, Q = _load(cfg)

    def one(a):
        f = entropy_cochain(a, S, Q).materialize(cfg.N)
        return f.to_dict()["tables"]
    return {"tables": _per_alpha(cfg, one)}


def _user_cochain(cfg, S, Q):
    try:
        with open(cfg.cochain, encoding="utf-8") as fh:
            return cochain_from_dict(S, Q, json.load(fh))
    except (OSError, ValueError, KeyError) as e:
        raise InputError("cannot read cochain %s: %s" % (cfg.cochain, e)) from None


def cmd_cocycle_check(cfg):
    S, Q = _load(cfg)
    if cfg.cochain:
        f = _user_cochain(cfg, S, Q)
        r = cocycle_residual(f, cfg.N)
        return {"cochain": f.label or "file", "alpha": _alpha_str(f.alpha), "residual": r.value,
                "exact_zero": r.exact_zero, "cocycle": r.exact_zero or r.value <= cfg.tol,
                "witness": list(r.witness) if r.witness else None, "checked": r.count}

    def one(a):
        f = entropy_cochain(a, S, Q)
        r = cocycle_residual(f, cfg.N)
        sd = semidirect_check(f, cfg.N, trials=50, seed=cfg.seed, tol=max(cfg.tol, 1e-12), with_residual=False)
        ok = r.exact_zero if a.exact else r.value <= cfg.tol
        if not ok or not sd.splitting:
            raise Inconsistent("entropy is not a cocycle at alpha=%s (residual %g)" % (_alpha_str(a), r.value))
        return {"residual": r.value, "exact_zero": r.exact_zero, "checked": r.count,
                "semidirect_defect": sd.defect}
    return {"cochain": "entropy", "results": _per_alpha(cfg, one)}


def cmd_h0(cfg):
    S, Q = _load(cfg)

    def one(a):
        r = h0_compute(a, S, Q, cfg.N)
        return {"dim": r.dim, "witness": label_json(r.witness)}
    return {"results": _per_alpha(cfg, one)}


def _membership_ok(m, a, tol):
    return m.exact_zero if a.exact else m.residual <= tol


def cmd_z1(cfg):
    S, Q = _load(cfg)

    def one(a):
        sysm = assemble_z1_system(a, S, Q, cfg.N)
        d = z1_h1_dimensions(sysm, a)
        m = nullspace_membership(sysm, entropy_vector(sysm, a))
        if not _membership_ok(m, a, cfg.tol):
            raise Inconsistent("entropy vector not in the grid nullspace (residual %g)" % m.residual)
        return {"rows": sysm.n_rows, "unknowns": sysm.n_cols, "rank": d.rank, "z1": d.z1,
                "b1": d.b1, "h1": d.h1, "method": d.method, "gap": d.gap,
                "entropy_residual": m.residual, "entropy_exact_zero": m.exact_zero}
    return {"results": _per_alpha(cfg, one)}


def _prediction_dict(p):
    certs = {m: (None if c is None else {"factors": [c[0], c[1]], "chain": c[2].to_dict()})
             for m, c in sorted(p.certificates.items())}
    return {"verdict": p.verdict, "components": [sorted(c) for c in p.components],
            "certificates": certs, "witness": label_json(p.witness)}


def cmd_predict_h1(cfg):
    S, Q = _load(cfg)
    return {"results": _per_alpha(cfg, lambda a: _prediction_dict(predict_h1(a, S, Q)))}


def cmd_h1(cfg):
    S, Q = _load(cfg)

    def one(a):
        pred = predict_h1(a, S, Q)
        sysm = assemble_z1_system(a, S, Q, cfg.N)
        d = z1_h1_dimensions(sysm, a)
        m = nullspace_membership(sysm, entropy_vector(sysm, a))
        vecs = component_entropy_vectors(sysm, a, pred.components)
        inside = [v for v in vecs if _membership_ok(nullspace_membership(sysm, v), a, cfg.tol)]
        explained = vector_rank([[float(c) for c in v] for v in inside], exact=False) if inside else 0
        entropy_ok = _membership_ok(m, a, cfg.tol)
        primes = None
        if a.exact:
            qs, pv = prime_components(entropy_vector(sysm, a))
            pv = [v for v in pv if nullspace_membership(sysm, v).exact_zero]
            primes = {"primes": qs, "dim": vector_rank(pv) if pv else 0}
            primes["fraction"] = primes["dim"] / d.z1 if d.z1 else 1.0
        if not entropy_ok:
            raise Inconsistent("entropy vector not in the grid nullspace (residual %g)" % m.residual)
        if isinstance(pred.verdict, int) and d.z1 < pred.verdict + d.b1:
            raise Inconsistent("grid Z^1 dimension %d below structural prediction" % d.z1)
        return {
            "structural": pred.verdict,
            "components": len(pred.components),
            "grid": {"rows": sysm.n_rows, "unknowns": sysm.n_cols, "z1": d.z1, "h1": d.h1,
                     "method": d.method},
            "entropy_in_nullspace": entropy_ok,
            "entropy_residual": m.residual,
            "explained_dim": explained,
            "explained_fraction": explained / d.z1 if d.z1 else 1.0,
            "prime_components": primes,
        }
    return {"results": _per_alpha(cfg, one)}


def cmd_fit_lambda(cfg):
    S, Q = _load(cfg)

    def one(a):
        f = _user_cochain(cfg, S, Q) if cfg.cochain else entropy_cochain(a, S, Q)
        fit = fit_entropy_multiples(f, a, S, Q, cfg.N)
        return {"lambdas": fit.lambdas, "components": [sorted(c) for c in fit.components],
                "residual": fit.residual}
    return {"cochain": "file" if cfg.cochain else "entropy", "results": _per_alpha(cfg, one)}


def cmd_funceq(cfg):
    def one(a):
        sysm = assemble_funceq_system(a, cfg.N)
        m = nullspace_membership(sysm, entropy_sample(a, sysm.unknowns))
        if a.exact:
            nullity = sysm.n_cols - exact_rank(sysm)
        else:
            nullity = sysm.n_cols - float_nullspace(sysm).rank
        two = assemble_two_function_system(a, cfg.N)
        two_null = two.n_cols - (exact_rank(two) if a.exact else float_nullspace(two).rank)
        worst, half = closed_form_check(a, 1.0, 10000, seed=cfg.seed)
        if not _membership_ok(m, a, cfg.tol) or worst > cfg.tol:
            raise Inconsistent("entropy sample fails the functional equation at alpha=%s" % _alpha_str(a))
        return {"rows": sysm.n_rows, "unknowns": sysm.n_cols, "nullity": nullity,
                "sample_residual": m.residual, "sample_exact_zero": m.exact_zero,
                "two_function_nullity": two_null, "closed_form_residual": worst, "u_half": half}
    prop = symmetry_propagation(1, cfg.N)
    return {"results": _per_alpha(cfg, one),
            "propagation": {"N": prop.N, "M": prop.M, "covered": prop.covered,
                            "coverage": prop.coverage, "ambient_tried": prop.ambient_tried}}


def cmd_modular_check(cfg):
    res = modular_group_check()
    out = {"identities": [{"name": n, "pass": ok} for n, ok in res],
           "passed": sum(ok for _, ok in res), "total": len(res)}
    if out["passed"] != out["total"]:
        raise Inconsistent("modular identity failed", out)
    return out


def _witness_dict(p, q):
    w = orbit_witness(p, q)
    return {"fraction": "%d/%d" % (p, q), "matrix": [list(r) for r in w.g.entries()],
            "word": w.word, "length": len(w.word), "verified": w.verified}


def cmd_orbit(cfg):
    if cfg.fraction:
        try:
            r = Fraction(cfg.fraction)
        except (ValueError, ZeroDivisionError):
            raise InputError("bad fraction %r" % cfg.fraction) from None
        out = _witness_dict(r.numerator, r.denominator)
        if not out["verified"]:
            raise Inconsistent("orbit word does not evaluate to the matrix", out)
        return out
    rng = random.Random(cfg.seed)
    checked, bad = [], []
    while len(checked) < 100:
        q = rng.randint(1, 50)
        p = rng.randint(-q, q)
        if gcd(p, q) != 1:
            continue
        w = orbit_witness(p, q)
        checked.append("%d/%d" % (p, q))
        if not w.verified:
            bad.append("%d/%d" % (p, q))
    if bad:
        raise Inconsistent("orbit witnesses failed for %s" % ", ".join(bad))
    return {"checked": len(checked), "failed": bad, "fractions": checked}


HANDLERS = {
    "validate": cmd_validate, "limit": cmd_limit, "model": cmd_model, "product": cmd_product,
    "coproduct": cmd_coproduct, "entropy": cmd_entropy, "cocycle-check": cmd_cocycle_check,
    "h0": cmd_h0, "z1": cmd_z1, "h1": cmd_h1, "predict-h1": cmd_predict_h1,
    "fit-lambda": cmd_fit_lambda, "funceq": cmd_funceq, "modular-check": cmd_modular_check,
    "orbit": cmd_orbit,
}


# -- reports ---------------------------------------------------------------

def envelope(cfg, result, status, error=None):
    import os
    rep = {
        "tool": "infocoh",
        "version": __version__,
        "command": cfg.command,
        "inputs": [os.path.basename(p) for p in cfg.inputs],
        "alpha": [_alpha_str(a) for a in cfg.alpha_params],
        "N": cfg.N,
        "tol": cfg.tol,
        "seed": cfg.seed,
        "log_base": "e",
        "status": status,
        "result": result,
    }
    if error:
        rep["error"] = error
    return rep


def run(cfg):
    """(report, exit code) for a RunConfig."""
    need = FILES_NEEDED.get(cfg.command, 1)
    if cfg.command != "entropy" and len(cfg.inputs) != need:
        raise InputError("%s takes %d structure file(s), got %d" % (cfg.command, need, len(cfg.inputs)))
    try:
        result = HANDLERS[cfg.command](cfg)
    except Inconsistent as e:
        body = e.args[1] if len(e.args) > 1 else None
        return envelope(cfg, body, "inconsistent", e.args[0]), 1
    except InputError as e:
        body = e.args[1] if len(e.args) > 1 else None
        if hasattr(body, "to_dict"):
            body = body.to_dict()
        return envelope(cfg, body, "input error", e.args[0]), 2
    return envelope(cfg, result, "ok"), 0


def _fmt(v):
    if isinstance(v, float):
        return "%.12g" % v
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return ", ".join("%s=%s" % (k, _fmt(x)) for k, x in v.items())
    return str(v)


def _flat(v):
    if isinstance(v, dict):
        return all(not isinstance(x, dict) and _flat(x) for x in v.values())
    if isinstance(v, list):
        return all(not isinstance(x, dict) and _flat(x) for x in v)
    return True


def render_text(rep):
    """Indented key: value lines; numbers to 12 significant digits."""
    lines = ["infocoh %s  %s" % (rep["version"], rep["command"])]

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat(v) or isinstance(v, dict) and v:
                    lines.append("%s%s:" % (pad, k))
                    walk(v, indent + 1)
                else:
                    lines.append("%s%s: %s" % (pad, k, _fmt(v)))
        else:
            for v in obj:
                lines.append("%s- %s" % (pad, _fmt(v)))
    head = {k: rep[k] for k in ("inputs", "alpha", "N", "tol", "status") if rep.get(k) not in (None, [])}
    walk(head, 0)
    if rep.get("error"):
        lines.append("error: %s" % rep["error"])
    if rep.get("result") is not None:
        lines.append("result:")
        walk(rep["result"], 1)
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="infocoh", description="Information cohomology on finite structures.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="structure files (orbit: a fraction p/q)")
    p.add_argument("--alpha", default="1", help="comma-separated list, e.g. 1,2")
    p.add_argument("--N", type=int, default=4, help="grid denominator bound")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="also write the JSON report here")
    p.add_argument("--law", help="entropy of a single law, e.g. 1/2,1/3,1/6")
    p.add_argument("--cochain", help="cochain JSON for cocycle-check / fit-lambda")
    return p


def main(argv=None):
    args = build_parser().parse_intermixed_args(argv)
    inputs = list(args.inputs)
    fraction = None
    if args.command == "orbit" and inputs:
        fraction = inputs.pop(0)
    try:
        cfg = RunConfig(args.command, inputs, [a for a in args.alpha.split(",") if a], args.N,
                        args.tol, args.format, args.seed, args.law, args.cochain, fraction)
        rep, code = run(cfg)
    except InputError as e:
        print("error: %s" % e.args[0], file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(rep))
    sys.stdout.write(dumps(rep) if args.format == "json" else render_text(rep))
    if code:
        print("error: %s" % rep.get("error"), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
