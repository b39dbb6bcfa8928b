"""Command-line interface.

One command per process, one JSON report on stdout.  Exit codes: 0 for
mathematical success, 2 for a mathematically meaningful negative answer
(obstructed kernel, inequivalent extensions, invalid factor system, a
failed reproduction check) with a structured certificate in the report,
1 for malformed input.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import io as lio
from .catalog import catalog, killing_form
from .cochains import Cochain, OuterActionMap
from .cohomology import EmptyAffine, cohomology
from .crossed import (CrossedModule, characteristic_class_omega_route,
                      characteristic_class_theta_route, split_crossed_module,
                      validate_crossed_module)
from .currents import (Polynomial, cyclic_cocycle_defect, v2_characteristic_cocycle,
                       v2_cocycle_identity)
from .errors import (InputError, InvalidFactorSystemError, LiecohError,
                     NegativeResult, ObstructedError, ParseError, UnknownBundleError,
                     UnknownNameError)
from .extensions import (FactorSystem, GKernel, build_extension,
                         classify_extensions, factor_system_report,
                         obstruction_class, reduce_via_stage)
from .liealg import LieAlgebra, Representation, center
from .symmetry import (automorphism_pair_obstruction, extension_derivations,
                       lifting_cocycle)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NEGATIVE = 2


def _emit(report: dict) -> None:
    sys.stdout.write(lio.emit(report))


def _load_algebra(spec: str) -> LieAlgebra:
    if spec.endswith(".json"):
        return lio.load_file(spec, "algebra")
    obj = catalog(spec)
    if not isinstance(obj, LieAlgebra):
        raise ParseError(f"catalog entry {spec!r} is not an algebra")
    return obj


def _load_factor_parts(args):
    """(n, g, matrices, omega) from --ext or from --n/--g/--S/--omega."""
    if getattr(args, "ext", None):
        return lio.load_file(args.ext, "factor-system-parts")
    if not (args.n and args.g and args.S):
        raise ParseError("either --ext or all of --n, --g, --S are required")
    n_alg = _load_algebra(args.n)
    g_alg = _load_algebra(args.g)
    s_data = lio.load_file(args.S, "json")
    if isinstance(s_data, dict):
        s_data = s_data.get("matrices", [])
    mats = [lio.matrix_from_json(m, rows=n_alg.dim, cols=n_alg.dim)
            for m in s_data]
    if len(mats) != g_alg.dim:
        raise ParseError("one S matrix per basis element of g is required")
    if getattr(args, "omega", None):
        omega = lio.cochain_from_json(lio.load_file(args.omega, "json"), g_alg)
    else:
        omega = Cochain(g_alg, 2, n_alg.dim)
    return n_alg, g_alg, mats, omega


def _factor_system(args) -> FactorSystem:
    n_alg, g_alg, mats, omega = _load_factor_parts(args)
    return FactorSystem(n_alg, g_alg, mats, omega)


def _class_report(cls) -> dict:
    return {
        "zero": cls.is_zero(),
        "representative": lio.cochain_to_json(cls.representative),
        "h_dim": cls.space.h_dim,
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    workspace = lio.Workspace()
    report = {}
    if args.algebra:
        L = _load_algebra(args.algebra)
        _register(workspace, "algebra", L, args.algebra)
        report["algebra"] = {"dim": L.dim, "jacobi": True}
    if args.rep:
        rep = lio.load_file(args.rep, "representation")
        _register(workspace, "representation", rep, args.rep)
        report["representation"] = {"space_dim": rep.space_dim,
                                    "representation_law": True}
    if args.ext:
        n_alg, g_alg, mats, omega = lio.load_file(args.ext, "factor-system-parts")
        _register(workspace, "extension", (n_alg, g_alg), args.ext)
        fr = factor_system_report(n_alg, g_alg, mats, omega)
        report["factor_system"] = fr.as_dict()
        _emit({"command": "validate", "report": report,
               "provenance": _provenance(workspace)})
        return EXIT_OK if fr.ok else EXIT_NEGATIVE
    if args.cm:
        h, ghat, alpha, action = lio.load_file(args.cm, "crossed-module-parts")
        _register(workspace, "crossed-module", (h, ghat), args.cm)
        cr = validate_crossed_module((h, ghat, alpha, action))
        report["crossed_module"] = cr.as_dict()
        _emit({"command": "validate", "report": report,
               "provenance": _provenance(workspace)})
        return EXIT_OK if cr.ok else EXIT_NEGATIVE
    if not report:
        raise ParseError("nothing to validate: pass --algebra, --rep, --ext or --cm")
    _emit({"command": "validate", "report": report,
           "provenance": _provenance(workspace)})
    return EXIT_OK


def _register(workspace, name, obj, source) -> None:
    text = None
    if source and source.endswith(".json"):
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError:
            text = None
    workspace.add(name, obj, source=source, text=text)


def _provenance(workspace) -> dict:
    return {name: workspace.provenance(name) for name in workspace.names()}


def cmd_cohomology(args) -> int:
    if args.rep:
        rep = lio.load_file(args.rep, "representation")
        if args.algebra:
            L = _load_algebra(args.algebra)
            if rep.algebra != L:
                raise ParseError("--rep disagrees with --algebra")
    else:
        if not args.algebra:
            raise ParseError("--algebra (or --rep) is required")
        rep = Representation.trivial(_load_algebra(args.algebra), 1)
    space = cohomology(rep, args.degree)
    algebra = rep.algebra
    cocycles = [lio.cochain_to_json(
        Cochain.from_coordinates(algebra, args.degree, rep.space_dim, v))
        for v in space.cocycles.basis]
    report = {
        "command": "cohomology",
        "degree": args.degree,
        "dim_cocycles": space.dim_cocycles,
        "dim_coboundaries": space.dim_coboundaries,
        "dim_cohomology": space.h_dim,
        "cocycle_basis": cocycles,
        "cohomology_representatives": [lio.cochain_to_json(c)
                                       for c in space.representative_cochains()],
    }
    _emit(report)
    return EXIT_OK


def cmd_extension(args) -> int:
    if args.action == "check":
        n_alg, g_alg, mats, omega = _load_factor_parts(args)
        fr = factor_system_report(n_alg, g_alg, mats, omega)
        _emit({"command": "extension-check", "report": fr.as_dict()})
        return EXIT_OK if fr.ok else EXIT_NEGATIVE
    fs = _factor_system(args)
    if args.action == "build":
        ext = build_extension(fs)
        report = {
            "command": "extension-build",
            "total": lio.algebra_to_json(ext.total),
            "center_dim": center(ext.total).dim,
        }
        if args.emit:
            with open(args.emit, "w", encoding="utf-8") as fh:
                fh.write(lio.emit(lio.algebra_to_json(ext.total)))
        _emit(report)
        return EXIT_OK
    if args.action == "classify":
        kernel = GKernel.from_factor_system(fs)
        cls = classify_extensions(kernel)
        report = {
            "command": "extension-classify",
            "base_omega": lio.cochain_to_json(cls.base.omega),
            "translation_dim": cls.h2.h_dim,
            "translations": [lio.cochain_to_json(t) for t in cls.translations],
        }
        _emit(report)
        return EXIT_OK
    if args.action == "reduce":
        red = reduce_via_stage(fs)
        report = {
            "command": "extension-reduce",
            "stage_dim": red.stage.gs.dim,
            "center_dim": red.stage.z.dim,
            "f_tilde": lio.cochain_to_json(red.f_tilde),
            "solution_translation_dim": red.solutions.dim,
            "round_trip_witnessed": True,
            "witness": lio.matrix_to_json(red.witness),
        }
        _emit(report)
        return EXIT_OK
    raise ParseError(f"unknown extension action {args.action!r}")


def cmd_obstruction(args) -> int:
    n_alg, g_alg, mats, omega_given = _load_factor_parts(args)
    S = OuterActionMap(g_alg, mats, target=n_alg)
    omega = omega_given if omega_given.coeffs else None
    kernel = GKernel(n_alg, g_alg, S, omega)
    chi = obstruction_class(kernel)
    report = {"command": "obstruction", "obstruction": _class_report(chi)}
    _emit(report)
    return EXIT_OK if chi.is_zero() else EXIT_NEGATIVE


def cmd_crossed_module(args) -> int:
    h, ghat, alpha, action = lio.load_file(args.cm, "crossed-module-parts")
    if args.action == "validate":
        cr = validate_crossed_module((h, ghat, alpha, action))
        _emit({"command": "crossed-module-validate", "report": cr.as_dict()})
        return EXIT_OK if cr.ok else EXIT_NEGATIVE
    cm = CrossedModule(h, ghat, alpha, action)
    sp = split_crossed_module(cm)
    c_theta = characteristic_class_theta_route(sp)
    c_omega = characteristic_class_omega_route(sp)
    agree = c_theta.normalized == c_omega.normalized
    report = {
        "command": "crossed-module-class",
        "theta_route": _class_report(c_theta),
        "omega_route": _class_report(c_omega),
        "routes_agree": agree,
    }
    _emit(report)
    if not agree:
        raise LiecohError("characteristic class routes disagree")
    return EXIT_OK if c_theta.is_zero() else EXIT_NEGATIVE


def cmd_derivations(args) -> int:
    fs = _factor_system(args)
    report = extension_derivations(fs)
    _emit({"command": "derivations", "report": report.as_dict()})
    return EXIT_OK


def cmd_lift(args) -> int:
    fs = _factor_system(args)
    data = lio.load_file(args.pair, "json")
    h_alg = lio.algebra_from_json(data.get("h"))
    psi_n = [lio.matrix_from_json(m, rows=fs.n.dim, cols=fs.n.dim)
             for m in data.get("psi_n", [])]
    psi_g = [lio.matrix_from_json(m, rows=fs.g.dim, cols=fs.g.dim)
             for m in data.get("psi_g", [])]
    theta = [lio.cochain_from_json(c, fs.g) for c in data.get("theta", [])]
    rep = lifting_cocycle(fs, h_alg, psi_n, psi_g, theta)
    report = {
        "command": "lift",
        "cocycle_zero": rep.is_zero_cocycle,
        "obstruction_zero": rep.obstruction.is_zero(),
        "lift_exists": rep.lift_exists,
    }
    _emit(report)
    return EXIT_OK if rep.lift_exists else EXIT_NEGATIVE


def cmd_automorphism(args) -> int:
    fs = _factor_system(args)
    data = lio.load_file(args.pair, "json")
    alpha = lio.matrix_from_json(data.get("alpha"), rows=fs.n.dim, cols=fs.n.dim)
    beta = lio.matrix_from_json(data.get("beta"), rows=fs.g.dim, cols=fs.g.dim)
    res = automorphism_pair_obstruction(fs, alpha, beta)
    report = {
        "command": "automorphism",
        "obstruction": _class_report(res.obstruction),
        "lift_exists": res.lift_exists,
    }
    if res.lift_exists:
        report["lift"] = lio.matrix_to_json(res.lift)
    _emit(report)
    return EXIT_OK if res.lift_exists else EXIT_NEGATIVE


def cmd_catalog(args) -> int:
    obj = catalog(args.name)
    if isinstance(obj, LieAlgebra):
        payload = lio.algebra_to_json(obj)
        kind = "algebra"
    else:
        payload = lio.factor_system_to_json(obj)
        kind = "factor-system"
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(lio.emit(payload))
    _emit({"command": "catalog", "name": args.name, "kind": kind,
           "object": payload})
    return EXIT_OK


def _random_vanishing_polynomial(rng: random.Random, max_degree: int = 5) -> Polynomial:
    coeffs = [0] + [Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                    for _ in range(rng.randint(1, max_degree))]
    return Polynomial(coeffs)


def run_v2_samples(samples: int, seed: int):
    """Randomized current-identity suite on sl2 with the trace form."""
    rng = random.Random(seed)
    L = catalog("sl2")
    kappa = killing_form(L)
    failures = 0
    for _ in range(samples):
        a = _random_vanishing_polynomial(rng)
        a1 = _random_vanishing_polynomial(rng)
        a2 = _random_vanishing_polynomial(rng)
        x = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        x1 = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        x2 = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
        _, _, equal = v2_cocycle_identity(kappa, a, a1, a2, x, x1, x2)
        if not equal:
            failures += 1
        b = _random_vanishing_polynomial(rng)
        c = _random_vanishing_polynomial(rng)
        a_ker = a - Polynomial((0, a.at_one()))  # now vanishes at 0 and 1
        if cyclic_cocycle_defect(a_ker, b, c) != 0:
            failures += 1
    eta, cls = v2_characteristic_cocycle(kappa)
    return {
        "identity_samples": samples,
        "failures": failures,
        "eta_e_f_h": lio.scalar_to_str(eta.component((0, 1, 2))[0]),
        "eta_class_nonzero": not cls.is_zero(),
        "h3_dim": cls.space.h_dim,
    }


def cmd_v2_check(args) -> int:
    if args.algebra not in (None, "sl2"):
        raise ParseError("the current-identity suite runs on the sl2 catalog entry")
    report = run_v2_samples(args.samples, args.seed)
    ok = (report["failures"] == 0 and report["eta_e_f_h"] == "4"
          and report["eta_class_nonzero"] and report["h3_dim"] == 1)
    _emit({"command": "v2-check", "report": report})
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_reproduce(args) -> int:
    from .reproduce import run_bundle
    report, passed = run_bundle(args.name)
    _emit({"command": "reproduce", "bundle": args.name, "pass": passed,
           "report": report})
    return EXIT_OK if passed else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_fs_flags(p):
    p.add_argument("--n", help="kernel algebra file or catalog name")
    p.add_argument("--g", help="quotient algebra file or catalog name")
    p.add_argument("--S", help="JSON file with the action matrices")
    p.add_argument("--omega", help="JSON file with the 2-cochain")
    p.add_argument("--ext", help="bundled factor-system JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liecoh",
        description="exact cohomology, extensions and crossed modules of Lie algebras")
    parser.add_argument("--format", choices=["json"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="load and re-check structural invariants")
    p.add_argument("--algebra")
    p.add_argument("--rep")
    p.add_argument("--ext")
    p.add_argument("--cm")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("cohomology", help="cocycles, coboundaries and dimensions")
    p.add_argument("--algebra")
    p.add_argument("--rep")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("extension", help="build, check, classify or reduce")
    p.add_argument("action", choices=["build", "check", "classify", "reduce"])
    _add_fs_flags(p)
    p.add_argument("--emit")
    p.set_defaults(fn=cmd_extension)

    p = sub.add_parser("obstruction", help="degree-3 class of an outer action")
    _add_fs_flags(p)
    p.set_defaults(fn=cmd_obstruction)

    p = sub.add_parser("crossed-module", help="validate or compute the class")
    p.add_argument("action", choices=["validate", "class"])
    p.add_argument("--cm", required=True)
    p.set_defaults(fn=cmd_crossed_module)

    p = sub.add_parser("derivations", help="derivation sequence of an extension")
    _add_fs_flags(p)
    p.set_defaults(fn=cmd_derivations)

    p = sub.add_parser("lift", help="lift an outside action to the extension")
    _add_fs_flags(p)
    p.add_argument("--pair", required=True)
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("automorphism", help="liftability of an automorphism pair")
    _add_fs_flags(p)
    p.add_argument("--pair", required=True)
    p.set_defaults(fn=cmd_automorphism)

    p = sub.add_parser("catalog", help="emit a built-in object")
    p.add_argument("name")
    p.add_argument("--emit")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("v2-check", help="randomized current-identity suite")
    p.add_argument("--algebra", default="sl2")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_v2_check)

    p = sub.add_parser("reproduce", help="run a named reproduction bundle")
    p.add_argument("name")
    p.set_defaults(fn=cmd_reproduce)

    return parser


def run_command(argv) -> int:
    """Dispatch one command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except InvalidFactorSystemError as exc:
        _emit({"command": args.command, "error": {
            "kind": "InvalidFactorSystem",
            "certificate": exc.report.as_dict(),
        }})
        return EXIT_NEGATIVE
    except ObstructedError as exc:
        certificate = (exc.obstruction.describe()
                       if isinstance(exc.obstruction, EmptyAffine)
                       else _class_report(exc.obstruction))
        _emit({"command": args.command, "error": {
            "kind": "Obstructed", "certificate": certificate}})
        return EXIT_NEGATIVE
    except NegativeResult as exc:
        _emit({"command": args.command, "error": {
            "kind": type(exc).__name__, "message": str(exc)}})
        return EXIT_NEGATIVE
    except (UnknownNameError, UnknownBundleError, ParseError) as exc:
        _emit({"command": args.command, "error": {
            "kind": type(exc).__name__, "message": str(exc)}})
        return EXIT_INPUT_ERROR
    except InputError as exc:
        payload = {"kind": type(exc).__name__, "message": str(exc)}
        violations = getattr(exc, "violations", None)
        if violations:
            payload["violations"] = list(violations)
        _emit({"command": args.command, "error": payload})
        return EXIT_INPUT_ERROR
    except FileNotFoundError as exc:
        _emit({"command": args.command, "error": {
            "kind": "FileNotFound", "message": str(exc)}})
        return EXIT_INPUT_ERROR


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
