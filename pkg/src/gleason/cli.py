"""Command-line front end.

Each subcommand reads one JSON object (from ``--input`` or stdin) and
writes one JSON document.  Exit status is 0 for a certified answer, 2 when
the answer could not be certified within the budget, and 1 on any error.

Example::

    echo '{"z": {"tail": {"kind": "radial_power", "phase": [1, 0], "a": 1, "p": 1}},
           "w": {"tail": {"kind": "radial_power", "phase": [1, 0], "a": 0.5, "p": 1}}}' \\
        | gleason rho
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import autom, blaschke, metric
from .disc import CertifiedValue, gleason_norm_from_rho, rho_disc
from .errors import GleasonError, ParseError
from .seqspace import BallSeq, IndexSet, parse_complex

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDETERMINED = 2


class UsageError(GleasonError):
    pass


# ---------------------------------------------------------------- input helpers


def _require(doc: dict, key: str):
    if key not in doc:
        raise ParseError(key, "missing")
    return doc[key]


def _seq(doc: dict, key: str) -> BallSeq:
    return BallSeq.from_json(_require(doc, key), key)


def _int(doc: dict, key: str, default=None) -> int:
    v = doc.get(key, default)
    if v is None:
        raise ParseError(key, "missing")
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(key, f"expected an integer, got {v!r}")
    return v


def _real(doc: dict, key: str, default=None) -> float:
    v = doc.get(key, default)
    if v is None:
        raise ParseError(key, "missing")
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise ParseError(key, f"expected a number, got {v!r}")
    return float(v)


def _vector(doc: dict, key: str) -> np.ndarray:
    raw = _require(doc, key)
    if not isinstance(raw, list):
        raise ParseError(key, "expected a list of [re, im] pairs")
    return np.array([parse_complex(v, f"{key}[{i}]") for i, v in enumerate(raw)], dtype=complex)


def _matrix(doc: dict, key: str) -> np.ndarray:
    raw = _require(doc, key)
    if not isinstance(raw, list) or not raw or not all(isinstance(row, list) for row in raw):
        raise ParseError(key, "expected a d x d array of [re, im] pairs")
    d = len(raw)
    if any(len(row) != d for row in raw):
        raise ParseError(key, "matrix must be square")
    return np.array(
        [[parse_complex(v, f"{key}[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(raw)],
        dtype=complex,
    )


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _matrix_json(m) -> list:
    return [[_pair(v) for v in row] for row in np.atleast_2d(m)]


def _enclosure(v: CertifiedValue) -> dict:
    return {"lo": v.lo, "hi": v.hi}


def _certified_doc(method: str, key: str, v: CertifiedValue) -> dict:
    out = {"method": method, key: _enclosure(v), "status": v.status}
    if v.attained_at is not None:
        out["attained_at"] = v.attained_at
    if v.examined_up_to is not None:
        out["examined_up_to"] = v.examined_up_to
    return out


def _is_certified(v: CertifiedValue, eps: float) -> bool:
    return v.complete and v.width <= eps


def _load_config(path: str | None) -> blaschke.BlaschkeConfig:
    if path is None:
        return blaschke.make_config()
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError("config", str(exc)) from exc
    try:
        return blaschke.BlaschkeConfig.from_json(doc)
    except KeyError as exc:
        raise ParseError(f"config.{exc.args[0]}", "missing") from exc


# ---------------------------------------------------------------- commands


def cmd_rho(doc, opts):
    v = metric.rho_seq(_seq(doc, "z"), _seq(doc, "w"), opts.eps, opts.max_index)
    out = _certified_doc("metric.rho_seq", "rho", v)
    out["gleason_norm"] = _enclosure(v.map_increasing(gleason_norm_from_rho))
    return out, _is_certified(v, opts.eps)


def cmd_gleason_norm(doc, opts):
    v = metric.gleason_norm_seq(_seq(doc, "z"), _seq(doc, "w"), opts.eps, opts.max_index)
    return _certified_doc("metric.gleason_norm_seq", "gleason_norm", v), _is_certified(v, opts.eps)


def cmd_classify(doc, opts):
    pc = metric.classify(_seq(doc, "z"), opts.eps)
    out = {"method": "metric.classify", "case": pc.label, "descriptor": pc.description}
    if pc.dimension is not None:
        out["dimension"] = pc.dimension
    out["partition"] = pc.partition.to_json()
    return out, True


def cmd_same_part(doc, opts):
    verdict = metric.same_part(_seq(doc, "z"), _seq(doc, "w"), opts.eps, opts.max_index)
    out = {"method": "metric.same_part"}
    if isinstance(verdict, metric.Same):
        out["verdict"] = "same"
        out["rho"] = _enclosure(verdict.rho)
        return out, True
    if isinstance(verdict, metric.Different):
        out["verdict"] = "different"
        w = verdict.witness
        out["witness"] = {"index": w} if isinstance(w, int) else {"tail": w.to_json()}
        return out, True
    out["verdict"] = "undetermined"
    out["rho_lo"] = verdict.rho_lo
    out["examined_up_to"] = verdict.examined_up_to
    return out, False


def cmd_autom_apply(doc, opts):
    if "a" in doc:
        res = autom.phi_seq(_seq(doc, "a"), _seq(doc, "z"), opts.eps)
        return {"method": "autom.phi_seq", "result": res.to_json()}, True
    if "x" in doc:
        res = autom.beta_ell2(_vector(doc, "x"), _vector(doc, "y"))
        return {"method": "autom.beta_ell2", "result": [_pair(v) for v in res]}, True
    if "R" in doc:
        res = autom.phi_operator(_matrix(doc, "R"), _matrix(doc, "T"))
        return {"method": "autom.phi_operator", "result": _matrix_json(res), "norm": autom.operator_norm(res)}, True
    raise ParseError("input", "expected keys a/z (sequences), x/y (l2 vectors) or R/T (matrices)")


def cmd_autom_check(doc, opts):
    x, y = _seq(doc, "x"), _seq(doc, "y")
    via = autom.rho_via_autom(x, y, opts.eps)
    direct = metric.rho_seq(x, y, opts.eps, opts.max_index)
    back = autom.phi_seq(x, autom.phi_seq(x, y, opts.eps), opts.eps)
    span = max(x.tail_start, y.tail_start) + 1000
    involution = float(np.max(np.abs(back.entries(span) - y.entries(span))))
    checks = {
        "center_to_zero": autom.rho_via_autom(x, x, opts.eps).hi == 0.0,
        "involution": involution <= 1e-10,
        "metric_agreement": abs(via.lo - direct.lo) <= opts.eps and abs(via.hi - direct.hi) <= opts.eps,
    }
    out = {
        "method": "autom.rho_via_autom",
        "rho_via_autom": _enclosure(via),
        "rho_seq": _enclosure(direct),
        "involution_error": involution,
        "checks": checks,
    }
    if not all(checks.values()):
        failed = sorted(k for k, ok in checks.items() if not ok)
        raise GleasonError(f"automorphism checks failed: {', '.join(failed)}")
    return out, True


def cmd_operator_rho(doc, opts):
    r, s = _matrix(doc, "R"), _matrix(doc, "S")
    return {"method": "autom.rho_operator", "rho": autom.rho_operator(r, s)}, True


def cmd_blaschke_eval(doc, opts):
    cfg = _load_config(opts.config)
    out = {"method": "blaschke.blaschke_eval", "config": cfg.to_json()}
    if "z" in doc:
        out["G"] = blaschke.blaschke_eval(cfg, _seq(doc, "z"), opts.eps).to_dict()
        return out, True
    k = _int(doc, "k")
    lam = parse_complex(_require(doc, "lambda"), "lambda")
    xi = blaschke.solve_xi(cfg, k, lam, opts.eps)
    out["method"] = "blaschke.solve_xi"
    out["xi"] = _pair(xi)
    if cfg.rho_gap is not None:
        out["xi_closed_form"] = _pair(blaschke.closed_form_xi(cfg, k, lam))
    out["z_k_lambda"] = blaschke.curve_w(cfg, k, xi).to_json()
    return out, True


def cmd_blaschke_separate(doc, opts):
    cfg = _load_config(opts.config)
    n, k = _int(doc, "N"), _int(doc, "k")
    out = {
        "method": "blaschke.test_fN",
        "config": cfg.to_json(),
        "f_N_at_z_k": blaschke.test_fN(cfg, n, cfg.point(k), opts.eps).to_dict(),
        "f_N_at_0": blaschke.test_fN(cfg, n, BallSeq.finite([]), opts.eps).to_dict(),
    }
    if "J" in doc:
        j_set = IndexSet.from_json(doc["J"], "J")
        res = blaschke.test_fJN(cfg, j_set, n, k, _real(doc, "eps", 0.1), opts.eps)
        out["f_JN_at_z_k"] = res.to_dict()
    return out, True


def _circle_samples(b: complex, radius: float, count: int):
    for i in range(count):
        c = b + radius * complex(math.cos(2 * math.pi * i / count), math.sin(2 * math.pi * i / count))
        yield c, rho_disc(b, c)


def cmd_shift_radius(doc, opts):
    b = parse_complex(_require(doc, "b"), "b")
    margin = _real(doc, "margin", 1e-6)
    count = _int(doc, "samples", 1000)
    r = metric.shift_radius(b, margin)
    samples = list(_circle_samples(b, 0.999 * r, count))
    worst = max(gleason_norm_from_rho(rho) for _, rho in samples)
    out = {"method": "metric.shift_radius", "radius": r, "max_norm_on_samples": worst, "samples": samples}
    return out, worst < 1.0


def cmd_peak_eval(doc, opts):
    raw = _require(doc, "theta")
    if not isinstance(raw, list) or not raw or not all(isinstance(t, (int, float)) for t in raw):
        raise ParseError("theta", "expected a non-empty list of angles, repeated periodically")
    angles = [float(t) for t in raw]

    def theta(n):
        return angles[(n - 1) % len(angles)]

    target = doc.get("x", "peak")
    if target == "peak":
        point = blaschke.peak_point(theta)
        flips = set(doc.get("flip", []))
        x = (lambda n: -point(n) if n in flips else point(n)) if flips else point
    else:
        x = BallSeq.from_json(target, "x")
    enc = blaschke.peak_function(theta, x, opts.eps)
    out = {"method": "blaschke.peak_function", **enc.to_dict(), "modulus": abs(enc.center)}
    return out, True


COMMANDS = {
    "rho": cmd_rho,
    "gleason-norm": cmd_gleason_norm,
    "classify": cmd_classify,
    "same-part": cmd_same_part,
    "autom-apply": cmd_autom_apply,
    "autom-check": cmd_autom_check,
    "operator-rho": cmd_operator_rho,
    "blaschke-eval": cmd_blaschke_eval,
    "blaschke-separate": cmd_blaschke_separate,
    "shift-radius": cmd_shift_radius,
    "peak-eval": cmd_peak_eval,
}


# ---------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gleason", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--eps", type=float, default=1e-9, help="target enclosure width (default 1e-9)")
    parser.add_argument("--max-index", type=int, default=metric.DEFAULT_MAX_INDEX, help="coordinate scan budget")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--config", help="JSON file with a Blaschke configuration")
    parser.add_argument("--input", help="JSON request file (default: stdin)")
    return parser


def _render(command: str, out: dict, fmt: str) -> str:
    if fmt == "csv":
        if command != "shift-radius":
            raise UsageError("csv output is only available for shift-radius")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["re", "im", "rho_to_center"])
        for c, rho in out["samples"]:
            writer.writerow([repr(c.real), repr(c.imag), repr(rho)])
        return buf.getvalue()
    if "samples" in out:
        out = dict(out, samples=[[c.real, c.imag, rho] for c, rho in out["samples"]])
    return json.dumps(out, indent=2) + "\n"


def run(argv=None, stdin=None) -> tuple[int, str, str]:
    """Run one request; returns ``(exit_code, stdout_text, stderr_text)``."""
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_ERROR if exc.code else EXIT_OK), "", ""
    try:
        if not opts.eps > 0:
            raise UsageError("--eps must be positive")
        if opts.max_index < 1:
            raise UsageError("--max-index must be at least 1")
        if opts.input:
            with open(opts.input) as fh:
                text = fh.read()
        else:
            text = (stdin or sys.stdin).read()
        try:
            doc = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as exc:
            raise ParseError("input", f"invalid JSON ({exc})") from exc
        if not isinstance(doc, dict):
            raise ParseError("input", "expected a JSON object")
        out, certified = COMMANDS[opts.command](doc, opts)
        rendered = _render(opts.command, out, opts.format)
    except (GleasonError, OSError, ArithmeticError, ValueError) as exc:
        return EXIT_ERROR, "", f"error: {exc}\n"
    return (EXIT_OK if certified else EXIT_UNDETERMINED), rendered, ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
