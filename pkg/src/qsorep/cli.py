"""Command-line front end.

Subcommands: patterns, build, verify, commutant, intertwine, spectrum,
branch, irreducible.  Specs are JSON, inline or in a file; outputs are
JSON plus Matrix Market matrices.  Exit code 0 on success/pass, 1 on a
verification failure, 2 on a usage or spec error.

The default output directory may be set through the QSOREP_OUT
environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .artifacts import (
    SpecError,
    build_from_spec,
    halfint_from_json,
    load_build,
    rep_spec_from_json,
    write_build,
    write_json,
)
from .patterns import CLASSICAL, NONCLASSICAL, HighestWeight, enumerate_basis
from .rep_iso import branch
from .rep_lorentz import irreducible
from .scalars import HalfInt
from .verify import (
    all_relation_residuals,
    commutant_nullity,
    intertwiner_nullity,
    spectrum,
)

DEFAULT_DEPTH = 3
DEFAULT_TOL = 1e-9


def _read_spec(arg: str) -> dict:
    text = arg
    if not arg.lstrip().startswith("{"):
        path = Path(arg[1:] if arg.startswith("@") else arg)
        if not path.exists():
            raise SpecError(f"spec file {path} does not exist")
        text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec is not valid JSON: {exc}") from exc


def _apply_overrides(spec: dict, args) -> dict:
    if getattr(args, "q", None) is not None:
        spec["q"] = args.q
    if getattr(args, "cutoff", None) is not None:
        spec["cutoff"] = args.cutoff
    if getattr(args, "variant", None) is not None:
        spec["variant"] = args.variant
    return spec


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_target(args):
    """Generator set from --in artifacts or an inline --spec."""
    if getattr(args, "indir", None):
        return load_build(args.indir)
    if getattr(args, "spec", None):
        spec_json = _apply_overrides(_read_spec(args.spec), args)
        gs = build_from_spec(rep_spec_from_json(spec_json))
        return gs, {"spec": spec_json}
    raise SpecError("need --in or --spec")


def _mask_for(gs, manifest, depth):
    basis = gs.basis
    if hasattr(basis, "interior_mask"):
        return basis.interior_mask(depth), depth
    return None, None


def cmd_patterns(args) -> int:
    d = _read_spec(args.spec)
    kind = d.get("kind", CLASSICAL)
    if kind not in (CLASSICAL, NONCLASSICAL):
        raise SpecError(f"unknown kind {kind!r}")
    try:
        w = HighestWeight(int(d["n"]), kind, tuple(halfint_from_json(v) for v in d["weight"]))
        basis = enumerate_basis(w)
    except (KeyError, ValueError) as exc:
        raise SpecError(f"bad weight spec: {exc}") from exc
    payload = {
        "weight": [str(e) for e in w.entries],
        "kind": kind,
        "n": w.n,
        "dim": basis.dim,
        "patterns": [
            [[str(e) for e in row] for row in pat.rows] for pat in basis.patterns
        ],
    }
    _emit(payload, args.out)
    return 0


def cmd_branch(args) -> int:
    d = _read_spec(args.spec)
    kind = d.get("kind", CLASSICAL)
    try:
        weights = branch(
            int(d["n"]),
            tuple(halfint_from_json(v) for v in d["m"]),
            kind,
            halfint_from_json(d["cutoff"]),
        )
    except (KeyError, ValueError) as exc:
        raise SpecError(f"bad branch spec: {exc}") from exc
    payload = {
        "n": int(d["n"]),
        "kind": kind,
        "m": list(d["m"]),
        "cutoff": str(halfint_from_json(d["cutoff"])),
        "weights": [[str(e) for e in w.entries] for w in weights],
    }
    _emit(payload, args.out)
    return 0


def cmd_build(args) -> int:
    spec_json = _apply_overrides(_read_spec(args.spec), args)
    spec = rep_spec_from_json(spec_json)
    gs = build_from_spec(spec)
    outdir = args.out or os.environ.get("QSOREP_OUT") or "qsorep-out"
    extra = {"depth": args.depth, "tolerance": args.tol}
    manifest_path = write_build(outdir, gs, spec_json, extra)
    print(manifest_path)
    return 0


def cmd_verify(args) -> int:
    gs, manifest = _load_target(args)
    q = _q_of(gs)
    mask, depth = _mask_for(gs, manifest, args.depth)
    residuals = all_relation_residuals(gs, q, mask)
    worst = max(residuals.values()) if residuals else 0.0
    payload = {
        "residuals": {k: float(v) for k, v in residuals.items()},
        "tolerance": args.tol,
        "mask_depth": depth,
        "worst": worst,
        "dim": gs.dim,
        "pass": bool(worst <= args.tol),
    }
    if any(name.startswith("T_") for name in gs.gens):
        top = [g for n_, g in gs.gens.items() if n_.startswith("T_")][0]
        payload["translation_norm"] = float(np.linalg.norm(top, 2))
    _emit(payload, args.out)
    return 0 if payload["pass"] else 1


def _q_of(gs):
    from .scalars import QParam

    qval = gs.meta.get("q")
    if qval is None:
        raise SpecError("generator set records no q; cannot verify")
    return QParam(float(qval))


def cmd_commutant(args) -> int:
    gs, _ = _load_target(args)
    mask = None
    if hasattr(gs.basis, "interior_mask"):
        mask = gs.basis.interior_mask(args.depth)
        gs = _restricted(gs, mask)
        evidence = True
    else:
        evidence = False
    res = commutant_nullity(gs, rtol=args.rank_tol)
    payload = {
        "commutant_dim": res.dim,
        "threshold": res.threshold,
        "smallest_singular_values": res.smallest,
        "gap": res.gap if res.gap != float("inf") else None,
        "evidence_only": evidence,
    }
    _emit(payload, args.out)
    return 0


def cmd_intertwine(args) -> int:
    gs_a, _ = _load_target(_TargetArgs(args.a, args))
    gs_b, _ = _load_target(_TargetArgs(args.b, args))
    evidence = False
    if hasattr(gs_a.basis, "interior_mask"):
        gs_a = _restricted(gs_a, gs_a.basis.interior_mask(args.depth))
        evidence = True
    if hasattr(gs_b.basis, "interior_mask"):
        gs_b = _restricted(gs_b, gs_b.basis.interior_mask(args.depth))
        evidence = True
    res = intertwiner_nullity(gs_a, gs_b, rtol=args.rank_tol)
    payload = {
        "intertwiner_dim": res.dim,
        "threshold": res.threshold,
        "smallest_singular_values": res.smallest,
        "gap": res.gap if res.gap != float("inf") else None,
        "evidence_only": evidence,
    }
    _emit(payload, args.out)
    return 0


class _TargetArgs:
    """Adapter so one --a/--b value feeds _load_target."""

    def __init__(self, value: str, args):
        if value.lstrip().startswith("{") or value.startswith("@"):
            self.spec, self.indir = value, None
        elif Path(value).is_dir():
            self.spec, self.indir = None, value
        else:
            self.spec, self.indir = value, None
        self.q = getattr(args, "q", None)
        self.cutoff = getattr(args, "cutoff", None)
        self.variant = getattr(args, "variant", None)


def _restricted(gs, mask):
    from .rep_so import GeneratorSet

    idx = np.where(mask)[0]
    gens = {name: G[np.ix_(idx, idx)] for name, G in gs.gens.items()}
    return GeneratorSet(basis=None, gens=gens, meta=dict(gs.meta))


def cmd_spectrum(args) -> int:
    gs, _ = _load_target(args)
    if args.gen not in gs.gens:
        raise SpecError(f"no generator {args.gen!r}; have {sorted(gs.gens)}")
    vals = spectrum(gs.gens[args.gen])
    payload = {
        "generator": args.gen,
        "eigenvalues": [{"re": z.real, "im": z.imag} for z in vals],
    }
    _emit(payload, args.out)
    return 0


def cmd_irreducible(args) -> int:
    d = _read_spec(args.spec)
    family = d.get("family", "")
    if not family.startswith("lorentz-"):
        raise SpecError("irreducible expects a lorentz-* family spec")
    from .artifacts import LORENTZ_FAMILIES, complex_from_json

    if family not in LORENTZ_FAMILIES:
        raise SpecError(f"unknown family {family!r}")
    try:
        verdict = irreducible(
            LORENTZ_FAMILIES[family],
            complex_from_json(d["c"]),
            tuple(halfint_from_json(v) for v in d["m"]),
            int(d["n"]),
        )
    except (KeyError, ValueError) as exc:
        raise SpecError(f"bad irreducibility spec: {exc}") from exc
    payload = {
        "family": family,
        "n": int(d["n"]),
        "c": d["c"],
        "m": list(d["m"]),
        "irreducible": verdict.irreducible,
        "witness": str(verdict.witness) if verdict.witness is not None else None,
    }
    _emit(payload, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qsorep",
        description="Generator matrices and verification for nonstandard "
        "q-deformed orthogonal algebras on Gel'fand-Tsetlin bases.",
    )
    p.add_argument("--version", action="version", version=f"qsorep {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, spec_required=True, target=False):
        if target:
            sp.add_argument("--in", dest="indir", help="build directory to load")
            sp.add_argument("--spec", help="inline JSON spec or @file / path")
        elif spec_required:
            sp.add_argument("--spec", required=True, help="inline JSON spec or @file / path")
        sp.add_argument("--q", type=float, help="override q in the spec")
        sp.add_argument("--cutoff", help="override cutoff in the spec")
        sp.add_argument("--variant", help="override the odd-rank nonclassical reading")
        sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="interior mask depth")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relation residual tolerance")
        sp.add_argument("--rank-tol", type=float, default=1e-8, help="relative singular-value cutoff")
        sp.add_argument("--out", help="output file or directory")

    sp = sub.add_parser("patterns", help="enumerate a tableau basis")
    common(sp)
    sp.set_defaults(func=cmd_patterns)

    sp = sub.add_parser("branch", help="list the component weights of a truncated family")
    common(sp)
    sp.set_defaults(func=cmd_branch)

    sp = sub.add_parser("build", help="build generator matrices and write artifacts")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="check the defining relations")
    common(sp, target=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("commutant", help="dimension of the commutant")
    common(sp, target=True)
    sp.set_defaults(func=cmd_commutant)

    sp = sub.add_parser("intertwine", help="dimension of the intertwiner space")
    common(sp, spec_required=False)
    sp.add_argument("--a", required=True, help="first build dir or spec")
    sp.add_argument("--b", required=True, help="second build dir or spec")
    sp.set_defaults(func=cmd_intertwine)

    sp = sub.add_parser("spectrum", help="eigenvalues of one generator")
    common(sp, target=True)
    sp.add_argument("--gen", required=True, help="generator name, e.g. I_21")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("irreducible", help="principal-series irreducibility verdict")
    common(sp)
    sp.set_defaults(func=cmd_irreducible)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
