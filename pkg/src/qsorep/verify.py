"""Numerical verification: relation residuals, commutants, intertwiners.

Residuals are Frobenius norms of defining-relation words, optionally
restricted to interior columns of a truncated basis, normalized as
||(LHS - RHS) P|| / (1 + ||RHS P||).  Commutant and intertwiner dimensions
come from the nullity of the stacked Sylvester system, with singular
values below a relative threshold counted as zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .scalars import QParam, q_pow

RANK_RTOL = 1e-8
MAX_NULLITY_DIM = 2000


def _i_generators(gs) -> list[tuple[int, str]]:
    """Sorted (k, name) for the rotation generators I_{k,k-1}."""
    out = []
    for name in gs.gens:
        m = re.fullmatch(r"I_(\d)(\d)", name)
        if m:
            out.append((int(m.group(1)), name))
    out.sort()
    return out


def _t_generator(gs) -> str | None:
    for name in gs.gens:
        if name.startswith("T_"):
            return name
    return None


def _masked_residual(lhs: np.ndarray, rhs: np.ndarray, mask) -> float:
    if mask is not None:
        lhs = lhs[:, mask]
        rhs = rhs[:, mask]
    return float(np.linalg.norm(lhs - rhs) / (1.0 + np.linalg.norm(rhs)))


def _sandwich_residuals(X, Y, x_name, y_name, q: QParam, mask, out: dict):
    """Residuals of the two trilinear relations of a neighbouring pair:
    Y conjugated twice by X equals -Y, and vice versa."""
    qq = q.value + 1.0 / q.value
    out[f"tri({x_name}|{y_name})"] = _masked_residual(
        X @ Y @ Y - qq * (Y @ X @ Y) + Y @ Y @ X, -X, mask
    )
    out[f"tri({y_name}|{x_name})"] = _masked_residual(
        X @ X @ Y - qq * (X @ Y @ X) + Y @ X @ X, -Y, mask
    )


def so_relation_residual(gs, q: QParam, mask=None) -> dict[str, float]:
    """Residuals of every defining relation among the rotation generators:
    the trilinear pair for each consecutive (k-1, k) and commutation for
    all non-adjacent pairs."""
    gens = _i_generators(gs)
    out: dict[str, float] = {}
    zero = None
    for (k1, n1), (k2, n2) in zip(gens, gens[1:]):
        if k2 == k1 + 1:
            _sandwich_residuals(gs.gens[n2], gs.gens[n1], n2, n1, q, mask, out)
    for (k1, n1), (k2, n2) in ((a, b) for a in gens for b in gens if b[0] > a[0] + 1):
        A, B = gs.gens[n1], gs.gens[n2]
        if zero is None:
            zero = np.zeros_like(A)
        out[f"comm({n1},{n2})"] = _masked_residual(A @ B - B @ A, zero, mask)
    return out


def iso_relation_residual(gs, q: QParam, mask=None) -> dict[str, float]:
    """Residuals of the translation-generator relations, plus, for the
    rank-2 Euclidean algebra, the derived bilinear triple."""
    t_name = _t_generator(gs)
    if t_name is None:
        raise ValueError("generator set has no translation generator")
    gens = _i_generators(gs)
    n = gens[-1][0]
    T = gs.gens[t_name]
    In = gs.gens[gens[-1][1]]
    qq = q.value + 1.0 / q.value
    zero = np.zeros_like(T)
    out: dict[str, float] = {}
    out[f"tri({t_name}|{gens[-1][1]})"] = _masked_residual(
        In @ In @ T - qq * (In @ T @ In) + T @ In @ In, -T, mask
    )
    out[f"tri0({gens[-1][1]}|{t_name})"] = _masked_residual(
        T @ T @ In - qq * (T @ In @ T) + In @ T @ T, zero, mask
    )
    for k, name in gens[:-1]:
        G = gs.gens[name]
        out[f"comm({name},{t_name})"] = _masked_residual(G @ T - T @ G, zero, mask)
    if n == 2:
        rq = q_pow(0.5, q)
        I, T2 = In, T
        T1 = rq * (I @ T2) - (T2 @ I) / rq
        out["qbr(I_21,T_2)-T_1"] = _masked_residual(rq * (I @ T2) - (T2 @ I) / rq, T1, mask)
        out["qbr(T_1,I_21)-T_2"] = _masked_residual(rq * (T1 @ I) - (I @ T1) / rq, T2, mask)
        out["qcomm(T_2,T_1)"] = _masked_residual(rq * (T2 @ T1) - (T1 @ T2) / rq, zero, mask)
    return out


def all_relation_residuals(gs, q: QParam, mask=None) -> dict[str, float]:
    """Every relation the generator set is subject to."""
    out = so_relation_residual(gs, q, mask)
    if _t_generator(gs) is not None:
        out.update(iso_relation_residual(gs, q, mask))
    return out


@dataclass
class NullityResult:
    """Nullity call with its audit trail: the small end of the singular
    spectrum and the threshold that split it."""

    dim: int
    threshold: float
    smallest: list[float]
    largest: float

    @property
    def gap(self) -> float:
        """Ratio of the smallest kept to the largest dropped singular value."""
        kept = [s for s in self.smallest if s > self.threshold]
        dropped = [s for s in self.smallest if s <= self.threshold]
        if not dropped:
            return float("inf")
        lo = max(dropped)
        hi = min(kept) if kept else self.largest
        return float("inf") if lo == 0.0 else hi / lo


def _stacked_nullity(blocks: list[np.ndarray], rtol: float) -> NullityResult:
    M = np.vstack(blocks)
    svals = np.linalg.svd(M, compute_uv=False)
    smax = float(svals[0]) if len(svals) else 0.0
    if smax == 0.0:
        return NullityResult(M.shape[1], 0.0, [], 0.0)
    thr = rtol * smax
    nullity = int(np.sum(svals <= thr)) + (M.shape[1] - len(svals) if M.shape[0] < M.shape[1] else 0)
    tail = [float(s) for s in svals[-min(10, len(svals)):]]
    return NullityResult(nullity, thr, tail, smax)


def commutant_nullity(gs, rtol: float = RANK_RTOL) -> NullityResult:
    """Dimension of {X : XG = GX for every generator G}.

    Each generator's block is scaled by its norm (which leaves the
    solution space untouched) so that the relative singular-value
    threshold is meaningful even when generator norms differ by orders
    of magnitude.
    """
    d = gs.dim
    if d > MAX_NULLITY_DIM:
        raise ValueError(f"too large: dim {d} > {MAX_NULLITY_DIM}")
    eye = np.eye(d)
    blocks = []
    for G in gs.gens.values():
        s = max(float(np.linalg.norm(G)), 1e-300)
        blocks.append((np.kron(eye, G.T) - np.kron(G, eye)) / s)
    return _stacked_nullity(blocks, rtol)


def commutant_dim(gs, rtol: float = RANK_RTOL) -> int:
    return commutant_nullity(gs, rtol).dim


def intertwiner_nullity(gs_a, gs_b, rtol: float = RANK_RTOL) -> NullityResult:
    """Dimension of {X : X A_g = B_g X for every generator g}.

    Both sets must expose the same generator names; X is d_B x d_A.
    """
    if set(gs_a.gens) != set(gs_b.gens):
        raise ValueError("generator sets have different generator names")
    da, db = gs_a.dim, gs_b.dim
    if da * db > MAX_NULLITY_DIM**2 or max(da, db) > MAX_NULLITY_DIM:
        raise ValueError("too large")
    blocks = []
    for name in gs_a.gens:
        A, B = gs_a.gens[name], gs_b.gens[name]
        s = max(float(np.linalg.norm(A)), float(np.linalg.norm(B)), 1e-300)
        blocks.append((np.kron(np.eye(db), A.T) - np.kron(B, np.eye(da))) / s)
    return _stacked_nullity(blocks, rtol)


def intertwiner_dim(gs_a, gs_b, rtol: float = RANK_RTOL) -> int:
    return intertwiner_nullity(gs_a, gs_b, rtol).dim


def spectrum(matrix: np.ndarray) -> list[complex]:
    """Eigenvalues with multiplicity, sorted by (real, imaginary) part."""
    if matrix.shape[0] != matrix.shape[1]:
        raise ValueError("spectrum needs a square matrix")
    if matrix.shape[0] > MAX_NULLITY_DIM:
        raise ValueError("too large")
    vals = np.linalg.eigvals(matrix)
    return sorted((complex(v) for v in vals), key=lambda z: (z.real, z.imag))


@dataclass
class VerificationReport:
    """Residuals and dimension counts for one verification run."""

    residuals: dict[str, float]
    tolerance: float
    mask_depth: int | None = None
    commutant: int | None = None
    intertwiner: int | None = None
    expected_commutant: int | None = None
    expected_intertwiner: int | None = None
    spectra: dict[str, list[complex]] = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        ok = all(r <= self.tolerance for r in self.residuals.values())
        if self.expected_commutant is not None:
            ok = ok and self.commutant == self.expected_commutant
        if self.expected_intertwiner is not None:
            ok = ok and self.intertwiner == self.expected_intertwiner
        return ok

    def as_dict(self) -> dict:
        out = {
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "tolerance": self.tolerance,
            "mask_depth": self.mask_depth,
            "pass": self.passed,
        }
        if self.commutant is not None:
            out["commutant_dim"] = self.commutant
        if self.intertwiner is not None:
            out["intertwiner_dim"] = self.intertwiner
        if self.expected_commutant is not None:
            out["expected_commutant_dim"] = self.expected_commutant
        if self.expected_intertwiner is not None:
            out["expected_intertwiner_dim"] = self.expected_intertwiner
        if self.spectra:
            out["spectra"] = {
                k: [{"re": z.real, "im": z.imag} for z in v] for k, v in self.spectra.items()
            }
        out.update(self.extras)
        return out
