"""Command-line front end.

    scl profile --matrix T.json --curve circle
    scl meansquare --matrix J.json --side outside
    scl dynkin apply --matrix T.json --fn "rational:1/(z-2)" --quad 512,16
    scl zoo make --kind shift --alpha 1.4142 --beta 1.4142 --n 401 -o shift.json
    scl reproduce-paper --seed 7 --out out/

Exit status: 0 when every certified check passes, 1 when a criterion
fails, 2 on bad input.  Reports are JSON (sorted keys, shortest
round-trip floats) with a CSV companion, written atomically, and embed the
configuration that produced them.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import operator
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import criteria as crit
from . import dynkin, zoo
from .curves import JordanCurve, circle, parse_curve, project_many, radial_diffeo
from .errors import (BadCurve, BadParams, BetaTooLarge, DomainError, InputError, NotAContraction,
                     NotStarShaped, SCLError, SpectrumOffCurve, TubeTooWide)
from .linalg import hausdorff, load_matrix, matrix_to_json
from .pseudoanalytic import CurveFunction, ExtensionSampling, jet_extension, verify_extension

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
INPUT_ERRORS = (InputError, BadParams, BadCurve, DomainError, SpectrumOffCurve, NotStarShaped,
                TubeTooWide, BetaTooLarge, NotAContraction)

DEFAULT_TOL = {"stampfli": 1e-6, "growth": crit.GROWTH_CUT, "kappa": crit.KAPPA_THRESHOLD,
               "rho": 1e-8, "spectrum": 1e-6}


@dataclass
class RunConfig:
    command: str = ""
    matrix: str | None = None
    curve: str = "circle"
    suite: str = "all"
    quad: str = "512,16"
    seed: int = 0
    out: str = "scl-out"
    tol: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def tolerance(self, key: str) -> float:
        return float(self.tol.get(key, DEFAULT_TOL[key]))

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        obj = json.loads(text)
        names = {f.name for f in fields(cls)}
        unknown = set(obj) - names
        if unknown:
            raise InputError(f"config: unknown fields {sorted(unknown)}")
        return cls(**obj)


# ----------------------------------------------------------------- output


def _clean(x):
    """JSON-safe copy: numpy scalars to Python, complex to [re, im], non-finite to strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_clean(float(x.real)), _clean(float(x.imag))]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    return x


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report(cfg: RunConfig, name: str, result: dict, table: tuple | None = None) -> str:
    """<out>/<name>.json, plus <name>.csv when a (header, rows) table is given."""
    doc = {"config": asdict(cfg), "result": result}
    path = os.path.join(cfg.out, f"{name}.json")
    _atomic_write(path, json.dumps(_clean(doc), sort_keys=True, indent=2) + "\n")
    if table is not None:
        header, rows = table
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
        _atomic_write(os.path.join(cfg.out, f"{name}.csv"), buf.getvalue())
    return path


# ------------------------------------------------------------ input parsing

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def rational_function(expr: str):
    """Vectorised callable for an arithmetic expression in z (+ - * / and integer powers)."""
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise InputError(f"--fn rational: col {exc.offset}: {exc.msg}") from exc

    def check(node):
        if isinstance(node, ast.Expression):
            return check(node.body)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            if isinstance(node.op, ast.Pow) and not (isinstance(node.right, ast.Constant)
                                                     and isinstance(node.right.value, int)):
                raise InputError("--fn rational: exponents must be integer literals")
            return check(node.left) and check(node.right)
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return check(node.operand)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
            return True
        if isinstance(node, ast.Name) and node.id == "z":
            return True
        raise InputError(f"--fn rational: unsupported element {ast.dump(node)[:40]!r}")

    check(tree)

    def ev(node, z):
        if isinstance(node, ast.Expression):
            return ev(node.body, z)
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](ev(node.left, z), ev(node.right, z))
        if isinstance(node, ast.UnaryOp):
            return _UNOPS[type(node.op)](ev(node.operand, z))
        if isinstance(node, ast.Constant):
            return node.value
        return z

    return lambda z: ev(tree, np.asarray(z, dtype=complex)) + 0 * np.asarray(z, dtype=complex)


def load_function(spec: str, curve: JordanCurve) -> CurveFunction:
    kind, _, arg = spec.partition(":")
    if kind == "rational":
        return CurveFunction.from_callable(curve, rational_function(arg))
    if kind == "boundary-samples":
        try:
            with open(arg) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"boundary samples {arg}: {exc}") from exc
        vals = obj.get("values") if isinstance(obj, dict) else None
        if not isinstance(vals, list) or len(vals) < 8:
            raise InputError(f'boundary samples {arg}: field "values" must list >= 8 [re, im] pairs')
        return CurveFunction.from_samples(curve, [complex(v[0], v[1]) for v in vals])
    raise InputError(f"--fn must start with rational: or boundary-samples:, got {spec!r}")


def _load_inputs(cfg: RunConfig):
    curve = parse_curve(cfg.curve)
    if cfg.matrix is None:
        raise InputError("--matrix is required for this command")
    return load_matrix(cfg.matrix), curve


def _load_matrix_only(cfg: RunConfig):
    if cfg.matrix is None:
        raise InputError("--matrix is required for this command")
    return load_matrix(cfg.matrix)


def _quad(cfg: RunConfig) -> dynkin.QuadratureSpec:
    try:
        return dynkin.QuadratureSpec.parse(cfg.quad)
    except ValueError as exc:
        raise InputError(f"--quad {cfg.quad!r}: {exc}") from exc


def _families(curve, cfg):
    beta = cfg.params.get("beta_family")
    return crit.default_families(curve, None if beta is None else float(beta))


# --------------------------------------------------------------- commands


def cmd_profile(cfg):
    T, curve = _load_inputs(cfg)
    prof = crit.resolvent_profile(T, curve, tol=cfg.tolerance("stampfli"),
                                  spectrum_tol=cfg.tolerance("spectrum"))
    ok = prof.growth_exponent <= cfg.tolerance("growth")
    res = prof.summary() | {"pass": ok}
    write_report(cfg, "profile", res, (("re", "im", "dist", "resolvent_norm", "side"), prof.rows()))
    return ok, res


def _meansquare_table(rep):
    return ("s", "per_s", "nodes"), list(zip(rep.s, rep.per_s, rep.nodes))


def cmd_meansquare(cfg):
    T, curve = _load_inputs(cfg)
    fo, fi = _families(curve, cfg)
    fam = fi if cfg.params.get("side", "outside") == "inside" else fo
    rep = crit.mean_square(T, fam, bool(cfg.params.get("adjoint", False)), seed=cfg.seed,
                           growth_cut=cfg.tolerance("growth"))
    res = rep.to_dict() | {"pass": rep.bounded}
    write_report(cfg, "meansquare", res, _meansquare_table(rep))
    return rep.bounded, res


def cmd_naboko(cfg):
    T, curve = _load_inputs(cfg)
    fo, fi = _families(curve, cfg)
    res = crit.naboko_check(T, fo, fi, seed=cfg.seed, growth_cut=cfg.tolerance("growth"))
    write_report(cfg, "naboko", res)
    return res["pass"], res


def cmd_vancasteren(cfg):
    T, curve = _load_inputs(cfg)
    fo, _ = _families(curve, cfg)
    res = crit.van_casteren_check(T, curve, fo, seed=cfg.seed, growth_cut=cfg.tolerance("growth"))
    write_report(cfg, "vancasteren", res)
    return res["pass"], res


def cmd_dynkin(cfg):
    T, curve = _load_inputs(cfg)
    f = load_function(cfg.params.get("fn", "rational:z"), curve)
    r = dynkin.apply_function(T, f, curve, quad=_quad(cfg))
    res = r.to_dict()
    write_report(cfg, "dynkin", res)
    return True, res


def cmd_transplant(cfg):
    T, curve = _load_inputs(cfg)
    diffeo = radial_diffeo(curve)
    r = dynkin.transplant(T, diffeo, curve, _quad(cfg), return_result=True)
    ev = np.linalg.eigvals(T)
    eta_ev = diffeo.boundary_values(project_many(curve, ev)[0])
    spec_map = hausdorff(np.linalg.eigvals(r.matrix), eta_ev)
    ext = dynkin.eta_extension(diffeo)
    grid = dynkin.comparability_grid(curve, ext)
    comp = dynkin.comparability_check(T, r.matrix, diffeo, curve, grid,
                                      dynkin.default_probes(T.shape[0], seed=cfg.seed), ext)
    res = {"A": r.matrix, "residual_estimate": r.residual_estimate, "spectral_mapping_distance": spec_map,
           "C": comp.C, "phi_sup": comp.phi_sup, "psi_sup": comp.psi_sup}
    ok = spec_map <= 1e-3 and math.isfinite(comp.C)
    write_report(cfg, "transplant", res | {"pass": ok})
    return ok, res


def cmd_charfn(cfg):
    T = _load_matrix_only(cfg)
    rep = crit.nf_criterion(T, eps_edge=float(cfg.params.get("eps_edge", 1e-2)))
    res = rep.summary()
    write_report(cfg, "charfn", res)
    return rep.invertible_everywhere, res


def cmd_rho(cfg):
    T = _load_matrix_only(cfg)
    rep = crit.rho_tests(T, float(cfg.params.get("rho", 2.0)), int(cfg.params.get("theta_count", 64)),
                         tol=cfg.tolerance("rho"))
    res = asdict(rep)
    ok = rep.two_contraction and rep.band_ok if rep.rho == 2 else rep.band_ok
    write_report(cfg, "rho", res | {"pass": ok})
    return ok, res


def cmd_power(cfg):
    T = _load_matrix_only(cfg)
    rep = crit.power_bounded_check(T, int(cfg.params.get("n_max", 1000)),
                                   bool(cfg.params.get("two_sided", False)),
                                   growth_cut=cfg.tolerance("growth"))
    res = asdict(rep)
    norms = res.pop("norms")
    write_report(cfg, "power", res, (("n", "norm"), list(enumerate(norms))))
    return rep.bounded, res


def cmd_zoo(cfg):
    p = cfg.params
    kind = p.get("kind", "normal")
    curve = parse_curve(cfg.curve) if kind != "shift" else None
    T = zoo.make_operator(kind, curve, int(p.get("n", 8)), p, seed=cfg.seed)
    dest = p.get("output") or os.path.join(cfg.out, f"{kind}.json")
    _atomic_write(dest, matrix_to_json(T) + "\n")
    return True, {"matrix_path": dest, "n": T.shape[0]}


def cmd_verify_extension(cfg):
    curve = parse_curve(cfg.curve)
    f = load_function(cfg.params.get("fn", "rational:z"), curve)
    ext = jet_extension(curve, f)
    spec = ExtensionSampling()
    a = verify_extension(ext, curve, spec)
    b = verify_extension(ext, curve, spec.refined())
    drift = abs(b - a) / max(abs(a), 1e-300)
    ok = math.isfinite(b) and (drift < 0.1 or b <= 1e-8)
    res = {"constant": a, "constant_refined": b, "drift": drift, "alpha": ext.holder_exponent,
           "delta": ext.cutoff_width, "pass": ok}
    write_report(cfg, "verify-extension", res)
    return ok, res


def cmd_lemma_integral(cfg):
    p = cfg.params
    a, b, beta = float(p.get("a", 0.5)), float(p.get("b", 2.0)), float(p.get("exponent", -0.5))
    level = int(p.get("level", 6))
    try:
        v1 = dynkin.lemma_integral_bound(a, b, beta, level=level)
        v2 = dynkin.lemma_integral_bound(a, b, beta, level=2 * level)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    change = abs(v2 - v1) / v1
    ok = math.isfinite(v2) and change < 0.02
    res = {"sup": v1, "sup_doubled": v2, "relative_change": change, "a": a, "b": b, "beta": beta,
           "level": level, "pass": ok}
    write_report(cfg, "lemma-integral", res)
    return ok, res


SUITES = ("pointwise", "meansquare", "naboko", "vancasteren", "charfn", "rho", "power")


def cmd_criteria(cfg):
    T, curve = _load_inputs(cfg)
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    if any(n not in SUITES for n in names):
        raise InputError(f"--suite must be one of {', '.join(SUITES + ('all',))}")
    results, ok = {}, True
    fo, fi = _families(curve, cfg)
    tables = {}
    for name in names:
        try:
            if name == "pointwise":
                prof = crit.resolvent_profile(T, curve)
                r = prof.summary() | {"pass": prof.growth_exponent <= cfg.tolerance("growth")}
                tables["pointwise"] = (("dist", "sup_dist_norm"), list(zip(prof.levels, prof.level_sup())))
            elif name == "meansquare":
                rep = crit.mean_square(T, fo, seed=cfg.seed)
                r = rep.to_dict() | {"pass": rep.bounded}
                tables["meansquare"] = _meansquare_table(rep)
            elif name == "naboko":
                r = crit.naboko_check(T, fo, fi, seed=cfg.seed)
            elif name == "vancasteren":
                r = crit.van_casteren_check(T, curve, fo, seed=cfg.seed)
            elif name == "charfn":
                rep = crit.nf_criterion(T)
                r = rep.summary() | {"pass": rep.invertible_everywhere}
            elif name == "rho":
                rep = crit.rho_tests(T)
                r = asdict(rep) | {"pass": rep.two_contraction}
            else:
                rep = crit.power_bounded_check(T, 1000, two_sided=True)
                r = {k: v for k, v in asdict(rep).items() if k != "norms"} | {"pass": rep.bounded}
        except NotAContraction as exc:
            r = {"pass": False, "not_applicable": str(exc)}
        results[name] = r
        ok &= bool(r["pass"])
    for name, table in tables.items():
        write_report(cfg, f"criteria-{name}", {"suite": name}, table)
    res = {"suites": results, "pass": ok}
    write_report(cfg, "criteria", res)
    return ok, res


def reproduce_paper(seed: int = 0) -> list[dict]:
    """The weighted-shift example and companion checks as (name, value, threshold, pass) rows."""
    rows = []

    def add(name, value, threshold, ok):
        rows.append({"check": name, "value": value, "threshold": threshold, "status": "PASS" if ok else "FAIL"})

    s2 = math.sqrt(2.0)
    shift = zoo.WeightedShiftSpec(s2, s2, 101)
    rho = crit.rho_tests(shift.matrix(), 2.0, 64)
    add("shift 2-contraction margin (alpha=beta=sqrt2, n=101)", rho.margin, -1e-8, rho.margin >= -1e-8)
    lams = np.linspace(2, 10, 51)[1:]
    fmin = min(zoo.shift_f(l, s2, s2) for l in lams)
    add("shift f-positivity on (2, 10]", fmin, 0.0, fmin > 0)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        l, a, b = rng.uniform(2, 6), rng.uniform(0.1, 2), rng.uniform(0.1, 2)
        f = zoo.shift_f(l, a, b)
        worst = max(worst, abs(zoo.transfer_f(l, a, b) - f) / max(1.0, abs(f)))
    add("transfer-product identity residual", worst, 1e-9, worst <= 1e-9)
    top = zoo.shift_real_part_top_eig(zoo.WeightedShiftSpec(s2, s2, 401))
    add("shift top eigenvalue of 2 Re T_401", top, 2 + 1e-3, top <= 2 + 1e-3)
    free = zoo.shift_real_part_top_eig(zoo.WeightedShiftSpec(1.0, 1.0, 101))
    err = abs(free - 2 * math.cos(math.pi / 102))
    add("free Jacobi top eigenvalue vs 2cos(pi/102)", err, 1e-10, err <= 1e-10)
    point = zoo.real_part_point_eigenvalue(s2, s2)
    add("eigenvalue of 2 Re T above 2 (infinite shift)", point if point is not None else "none",
        "none", point is None)
    c = circle()
    N = zoo.make_operator("normal", c, 8, {"spacing": "random"}, seed=seed)
    prof = crit.resolvent_profile(N, c)
    dev = max(abs(prof.C_inside - 1), abs(prof.C_outside - 1))
    add("normal-profile C = 1", dev, 1e-8, dev <= 1e-8)
    th = crit.char_fn(np.array([[0.5]]), 0.25)
    err = abs(th[0, 0] - (-2 / 7))
    add("characteristic function of T = 1/2 at 1/4", err, 1e-12, err <= 1e-12)
    J = zoo.make_operator("jordan", c, 2)
    fo, _ = crit.default_families(c)
    g = crit.mean_square(J, fo, seed=seed).growth_exponent
    add("Jordan block mean-square growth exponent", g, 0.8, g >= 0.8)
    return rows


def cmd_reproduce(cfg):
    rows = reproduce_paper(cfg.seed)
    ok = all(r["status"] == "PASS" for r in rows)
    res = {"summary": rows, "pass": ok}
    header = ("check", "value", "threshold", "status")
    write_report(cfg, "reproduce-paper", res, (header, [[r[h] for h in header] for r in rows]))
    return ok, res


COMMANDS = {
    "profile": cmd_profile, "meansquare": cmd_meansquare, "naboko": cmd_naboko,
    "vancasteren": cmd_vancasteren, "dynkin": cmd_dynkin, "transplant": cmd_transplant,
    "charfn": cmd_charfn, "rho": cmd_rho, "power": cmd_power, "zoo": cmd_zoo,
    "verify-extension": cmd_verify_extension, "lemma-integral": cmd_lemma_integral,
    "criteria": cmd_criteria, "reproduce-paper": cmd_reproduce,
}


# ----------------------------------------------------------------- parser


def _parse_tol(items) -> dict:
    out = {}
    for item in items or []:
        for part in item.split(","):
            key, sep, val = part.partition("=")
            if not sep or key not in DEFAULT_TOL:
                raise InputError(f"--tol {part!r}: expected K=V with K in {sorted(DEFAULT_TOL)}")
            try:
                out[key] = float(val)
            except ValueError as exc:
                raise InputError(f"--tol {part!r}: {exc}") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matrix", help="matrix file (.json or .csv)")
    common.add_argument("--curve", default="circle", help="circle | circle:R | ellipse:A:B | blob:SEED | PATH")
    common.add_argument("--quad", default="512,16", help="contour nodes and radial layers, NODES,LAYERS")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default="scl-out", help="report directory")
    common.add_argument("--tol", action="append", metavar="K=V", help="tolerance override")
    common.add_argument("--config", help="RunConfig JSON; flags given explicitly are ignored")

    p = argparse.ArgumentParser(prog="scl", description="Resolvent criteria for similarity to normal operators.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("profile", parents=[common], help="pointwise resolvent profile in the tube")
    for name in ("meansquare", "naboko", "vancasteren"):
        sp = sub.add_parser(name, parents=[common], help=f"{name} criterion")
        sp.add_argument("--beta-family", type=float, dest="beta_family")
        if name == "meansquare":
            sp.add_argument("--side", choices=("outside", "inside"), default="outside")
            sp.add_argument("--adjoint", action="store_true")

    dk = sub.add_parser("dynkin", help="Cauchy-Green functional calculus")
    dks = dk.add_subparsers(dest="action", required=True)
    da = dks.add_parser("apply", parents=[common])
    da.add_argument("--fn", default="rational:z", help='"rational:EXPR" or "boundary-samples:PATH"')

    sub.add_parser("transplant", parents=[common], help="A = eta(T) with spectral mapping and comparability")
    cf = sub.add_parser("charfn", parents=[common], help="characteristic-function criterion")
    cf.add_argument("--eps-edge", type=float, default=1e-2, dest="eps_edge")
    rp = sub.add_parser("rho", parents=[common], help="rho-contraction and resolvent band tests")
    rp.add_argument("--rho", type=float, default=2.0)
    rp.add_argument("--theta-count", type=int, default=64, dest="theta_count")
    pw = sub.add_parser("power", parents=[common], help="power boundedness")
    pw.add_argument("--n-max", type=int, default=1000, dest="n_max")
    pw.add_argument("--two-sided", action="store_true", dest="two_sided")

    zo = sub.add_parser("zoo", help="operator constructors")
    zos = zo.add_subparsers(dest="action", required=True)
    zm = zos.add_parser("make", parents=[common])
    zm.add_argument("--kind", choices=zoo.KINDS, default="normal")
    zm.add_argument("--n", type=int, default=8)
    zm.add_argument("--alpha", type=float)
    zm.add_argument("--beta", type=float)
    zm.add_argument("--kappa", type=float)
    zm.add_argument("--spacing", choices=("equispaced", "random"))
    zm.add_argument("-o", "--output")

    ve = sub.add_parser("verify-extension", parents=[common], help="dbar F / dist^alpha certificate")
    ve.add_argument("--fn", default="rational:z")
    li = sub.add_parser("lemma-integral", parents=[common], help="uniform bound of the weighted Cauchy integral")
    li.add_argument("--a", type=float, default=0.5)
    li.add_argument("--b", type=float, default=2.0)
    li.add_argument("--exponent", type=float, default=-0.5, help="beta in (-1, 0)")
    li.add_argument("--level", type=int, default=6)

    cr = sub.add_parser("criteria", help="criteria suites")
    crs = cr.add_subparsers(dest="action", required=True)
    run = crs.add_parser("run", parents=[common])
    run.add_argument("--suite", default="all", choices=SUITES + ("all",))

    sub.add_parser("reproduce-paper", parents=[common], help="weighted-shift example suite with summary table")
    return p


_CONFIG_KEYS = {"matrix", "curve", "quad", "seed", "out", "suite"}
_SKIP = {"command", "action", "tol", "config"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if getattr(ns, "config", None):
        try:
            with open(ns.config) as fh:
                return RunConfig.from_json(fh.read())
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise InputError(f"--config {ns.config}: {exc}") from exc
    d = vars(ns)
    cfg = RunConfig(command=ns.command, tol=_parse_tol(d.get("tol")))
    for k, v in d.items():
        if k in _CONFIG_KEYS:
            setattr(cfg, k, v)
        elif k not in _SKIP and v is not None:
            cfg.params[k] = v
    return cfg


def run(cfg: RunConfig) -> int:
    try:
        fn = COMMANDS[cfg.command]
    except KeyError:
        print(f"scl: unknown command {cfg.command!r}", file=sys.stderr)
        return EXIT_INPUT
    try:
        ok, res = fn(cfg)
    except INPUT_ERRORS as exc:
        print(f"scl: {exc.module}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SCLError as exc:
        print(f"scl: {exc.module}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, ValueError) as exc:
        print(f"scl: cli: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.command == "reproduce-paper":
        for row in res["summary"]:
            print(f"{row['status']:4s}  {row['check']}")
    else:
        print(f"{cfg.command}: {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        cfg = config_from_args(ns)
    except InputError as exc:
        print(f"scl: {exc.module}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
