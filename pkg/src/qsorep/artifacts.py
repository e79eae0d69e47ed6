"""Build artifacts: spec parsing, manifests and Matrix Market files.

Half-integers travel through JSON as the exact strings "k" or "k/2",
never as floats; complex scalars as {"re": x, "im": y} (a bare number or
half-integer string is also accepted where a complex value is expected).
Manifests carry every input plus the decisions taken (variant, tolerances)
so a rerun reproduces matrices entry for entry.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from . import __version__
from .patterns import CLASSICAL, NONCLASSICAL, HighestWeight
from .rep_iso import IsoRepSpec, build_iso
from .rep_lorentz import DEFAULT_VARIANT, LorentzRepSpec, build_lorentz
from .rep_so import (
    FAMILY_CLASSICAL,
    FAMILY_NONCLASSICAL,
    FAMILY_ONEDIM,
    FAMILY_TPRIME,
    GeneratorSet,
    SoRepSpec,
    build as build_so,
)
from .scalars import HalfInt, QParam

SO_FAMILIES = {
    "so-classical": FAMILY_CLASSICAL,
    "so-nonclassical": FAMILY_NONCLASSICAL,
    "so-tprime": FAMILY_TPRIME,
    "so-onedim": FAMILY_ONEDIM,
}
ISO_FAMILIES = {"iso-classical": FAMILY_CLASSICAL, "iso-nonclassical": FAMILY_NONCLASSICAL}
LORENTZ_FAMILIES = {
    "lorentz-classical": FAMILY_CLASSICAL,
    "lorentz-nonclassical": FAMILY_NONCLASSICAL,
}


class SpecError(ValueError):
    """Malformed representation spec; the message names the offending field."""


def halfint_from_json(value) -> HalfInt:
    if isinstance(value, str):
        return HalfInt.parse(value)
    if isinstance(value, int):
        return HalfInt.of(value)
    raise SpecError(f"expected a half-integer string, got {value!r}")


def complex_from_json(value) -> complex:
    if isinstance(value, dict):
        if not set(value) <= {"re", "im"}:
            raise SpecError(f"complex value keys must be re/im, got {sorted(value)}")
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        s = value.strip()
        if s.endswith("/2"):
            return complex(int(s[:-2]) / 2.0)
        return complex(float(s))
    raise SpecError(f"cannot read complex value from {value!r}")


def _field(d: dict, name: str):
    if name not in d:
        raise SpecError(f"missing field {name!r}")
    return d[name]


def _eps_from_json(d: dict, length: int) -> tuple[int, ...]:
    eps = _field(d, "eps")
    if not isinstance(eps, list) or len(eps) != length or any(e not in (-1, 1) for e in eps):
        raise SpecError(f"field 'eps' must be a list of {length} signs +1/-1")
    return tuple(eps)


def rep_spec_from_json(d: dict):
    """Parse a representation spec dict (the CLI --spec payload)."""
    if not isinstance(d, dict):
        raise SpecError("spec must be a JSON object")
    family = _field(d, "family")
    try:
        q = QParam(float(_field(d, "q")))
    except ValueError as exc:
        raise SpecError(f"field 'q': {exc}") from exc
    if family in SO_FAMILIES:
        n = int(_field(d, "n"))
        fam = SO_FAMILIES[family]
        kind = CLASSICAL if fam in (FAMILY_CLASSICAL, FAMILY_TPRIME) else NONCLASSICAL
        if fam == FAMILY_ONEDIM and "weight" not in d:
            entries = tuple(HalfInt(1) for _ in range(n // 2))
        else:
            entries = tuple(halfint_from_json(v) for v in _field(d, "weight"))
        try:
            weight = HighestWeight(n, kind, entries)
        except ValueError as exc:
            raise SpecError(f"field 'weight': {exc}") from exc
        eps = None
        if fam in (FAMILY_NONCLASSICAL, FAMILY_ONEDIM):
            eps = _eps_from_json(d, n - 1)
        elif fam == FAMILY_TPRIME:
            eps = _eps_from_json(d, n // 2)
        return SoRepSpec(weight=weight, q=q, family=fam, eps=eps)
    if family in ISO_FAMILIES:
        n = int(_field(d, "n"))
        fam = ISO_FAMILIES[family]
        m = tuple(halfint_from_json(v) for v in _field(d, "m"))
        eps = _eps_from_json(d, n) if fam == FAMILY_NONCLASSICAL else None
        try:
            return IsoRepSpec(
                n=n,
                family=fam,
                lam=complex_from_json(_field(d, "lambda")),
                m=m,
                q=q,
                cutoff=halfint_from_json(_field(d, "cutoff")),
                eps=eps,
            )
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
    if family in LORENTZ_FAMILIES:
        n = int(_field(d, "n"))
        fam = LORENTZ_FAMILIES[family]
        m = tuple(halfint_from_json(v) for v in _field(d, "m"))
        eps = _eps_from_json(d, n) if fam == FAMILY_NONCLASSICAL else None
        try:
            return LorentzRepSpec(
                n=n,
                family=fam,
                c=complex_from_json(_field(d, "c")),
                m=m,
                q=q,
                cutoff=halfint_from_json(_field(d, "cutoff")),
                eps=eps,
                variant=d.get("variant", DEFAULT_VARIANT),
            )
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown family {family!r}")


def build_from_spec(spec) -> GeneratorSet:
    if isinstance(spec, SoRepSpec):
        return build_so(spec)
    if isinstance(spec, IsoRepSpec):
        return build_iso(spec)
    if isinstance(spec, LorentzRepSpec):
        return build_lorentz(spec)
    raise SpecError(f"cannot build from {type(spec).__name__}")


def write_json(path: Path, payload: dict):
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _gen_filename(name: str) -> str:
    return name.lower() + ".mtx"


def write_build(outdir, gs: GeneratorSet, spec_json: dict, extra: dict | None = None) -> Path:
    """Write one matrix file per generator plus a manifest; returns the
    manifest path.  No timestamps: reruns are byte-identical."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    files = {}
    for name, mat in gs.gens.items():
        fname = _gen_filename(name)
        scipy.io.mmwrite(
            outdir / fname,
            scipy.sparse.coo_matrix(mat),
            field="complex",
            comment="",
        )
        files[name] = fname
    manifest = {
        "library": "qsorep",
        "version": __version__,
        "spec": spec_json,
        "dim": gs.dim,
        "generators": files,
        "meta": gs.meta,
    }
    if extra:
        manifest.update(extra)
    path = outdir / "manifest.json"
    write_json(path, manifest)
    return path


def load_build(indir):
    """Read back a build directory: (GeneratorSet, manifest dict).

    The basis object is reconstructed from the recorded spec so masks and
    follow-up verification work on loaded artifacts.
    """
    indir = Path(indir)
    manifest = json.loads((indir / "manifest.json").read_text(encoding="utf-8"))
    spec = rep_spec_from_json(manifest["spec"])
    rebuilt = build_from_spec(spec)
    gens = {}
    for name, fname in manifest["generators"].items():
        mat = scipy.io.mmread(indir / fname)
        gens[name] = np.asarray(mat.todense() if scipy.sparse.issparse(mat) else mat, dtype=complex)
    if set(gens) != set(rebuilt.gens):
        raise SpecError("manifest generators do not match the recorded spec")
    return GeneratorSet(basis=rebuilt.basis, gens=gens, meta=rebuilt.meta), manifest
