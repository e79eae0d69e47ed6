"""Truncated principal-series representations of the q-deformed Lorentz
algebras, and their irreducibility criteria.

The rotation generators act block-diagonally over the branching
components exactly as in the finite-dimensional families; the extra top
generator moves the leading tableau row between components carrying
square-root factors in the complex parameter c.  Principal-branch square
roots are used throughout.

The odd-rank nonclassical top generator is printed with inconsistent row
indices in its source; two readings are provided behind ``variant``:
``paired`` (raise [c+l][c-l], lower [c+l-1][c-l+1], all at the acted
row's l, mirroring the classical family), and ``printed`` (offsets as
printed, the second bracket taking the phantom-row l where one exists).
The default is the variant that passes the defining-relation suite.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .patterns import CLASSICAL, NONCLASSICAL, GTPattern, l_coords, l_of_row
from .rep_so import FAMILY_CLASSICAL, FAMILY_NONCLASSICAL, GeneratorSet, gen_name
from .rep_iso import (
    TruncatedBasis,
    _phantom_l,
    _tilde_A,
    _tilde_B,
    _tilde_C,
    _tilde_Chat,
    _tilde_D,
    _top_target,
    _validate_labels,
    _validate_truncated,
    build_truncated_basis,
    rotation_blocks,
)
from .scalars import ONE_HALF, HalfInt, QParam, q_bracket, q_bracket_plus, q_pow

VARIANT_PAIRED = "paired"
VARIANT_PRINTED = "printed"
DEFAULT_VARIANT = VARIANT_PAIRED

GRID_TOL = 1e-9
BRANCH_TOL = 1e-12


@dataclass(frozen=True)
class LorentzRepSpec:
    """Parameters of one truncated principal-series representation."""

    n: int
    family: str
    c: complex
    m: tuple[HalfInt, ...]
    q: QParam
    cutoff: HalfInt
    eps: tuple[int, ...] | None = None
    variant: str = DEFAULT_VARIANT

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(HalfInt.of(e) for e in self.m))
        object.__setattr__(self, "cutoff", HalfInt.of(self.cutoff))
        object.__setattr__(self, "c", complex(self.c))
        _validate_truncated(self.n, self.family, self.m, self.cutoff, self.eps)
        if self.variant not in (VARIANT_PAIRED, VARIANT_PRINTED):
            raise ValueError(f"unknown variant {self.variant!r}")


@dataclass(frozen=True)
class IrreducibilityVerdict:
    """Outcome of the irreducibility criterion.

    For an irreducible verdict the witness is the coincidence value or
    bound that rescued irreducibility (None when c is off the lattice
    grid); for a reducible one it is the predicted level of a vanishing
    coupling along the top-row lattice.
    """

    irreducible: bool
    witness: HalfInt | None = None


def _csqrt(z: complex) -> complex:
    """Principal-branch square root, rejecting radicands that sit on the
    branch cut with a sub-tolerance imaginary part."""
    z = complex(z)
    if z.real < 0.0 and 0.0 < abs(z.imag) < 1e-12 * max(1.0, abs(z)):
        raise ValueError(f"ill-conditioned branch: radicand {z}")
    return cmath.sqrt(z)


def _c_factors(spec: LorentzRepSpec, pat: GTPattern, j: int, phantom_l):
    """(raising, lowering) square-root factors for top-row slot j, both
    evaluated at the acted tableau."""
    c = spec.c
    q = spec.q
    lj = l_coords(pat, pat.n)[j - 1]
    if pat.n % 2 == 0:
        up = q_bracket(c + float(lj), q) * q_bracket(c - float(lj) - 1, q)
        dn = q_bracket(c + float(lj) - 1, q) * q_bracket(c - float(lj), q)
    elif spec.family == FAMILY_CLASSICAL or spec.variant == VARIANT_PAIRED:
        up = q_bracket(c + float(lj), q) * q_bracket(c - float(lj), q)
        dn = q_bracket(c + float(lj) - 1, q) * q_bracket(c - float(lj) + 1, q)
    else:
        # printed reading: second bracket uses the phantom-row l where one
        # exists (slots 2..), the acted row's own l in the leading slot
        other = float(phantom_l[j - 2]) if j >= 2 else float(lj)
        up = q_bracket(c + float(lj), q) * q_bracket(c - other, q)
        dn = q_bracket(c + float(lj) + 1, q) * q_bracket(c - other + 1, q)
    return _csqrt(up), _csqrt(dn)


def _top_generator(tb: TruncatedBasis, spec: LorentzRepSpec) -> np.ndarray:
    n, q, c = spec.n, spec.q, spec.c
    phantom = _phantom_l(n, spec.m)
    nonclass = spec.family == FAMILY_NONCLASSICAL
    eps_last = spec.eps[-1] if nonclass else 0
    M = np.zeros((tb.dim, tb.dim), dtype=complex)
    rq = q_pow(ONE_HALF, q)
    for w, b, sl in tb.component_slices():
        off = sl.start
        for local, pat in enumerate(b.patterns):
            col = off + local
            l_own = l_coords(pat, n)
            if n % 2 == 0:
                k = n // 2
                floor_hit = nonclass and pat.top[k - 1] == ONE_HALF
                for j in range(1, k + 1):
                    t = q_pow(l_own[j - 1], q)
                    den = (t - 1.0 / t) if nonclass else (t + 1.0 / t)
                    up = _top_target(tb, pat, j, +1)
                    if up is not None:
                        cf, _ = _c_factors(spec, pat, j, phantom)
                        M[up[0], col] += cf * _tilde_A(pat, j, phantom, q) / den
                    if floor_hit and j == k:
                        continue
                    dn = _top_target(tb, pat, j, -1)
                    if dn is not None:
                        _, cf = _c_factors(spec, pat, j, phantom)
                        M[dn[0], col] -= cf * _tilde_A(dn[1], j, phantom, q) / den
                if floor_hit:
                    M[col, col] += (
                        q_bracket(c - 0.5, q)
                        * eps_last
                        * _tilde_D(pat, phantom, q)
                        / (rq - 1.0 / rq)
                    )
            else:
                k = (n + 1) // 2
                for j in range(1, k):
                    lj = l_own[j - 1]
                    b2 = q_bracket(lj + lj - 1, q)
                    if nonclass:
                        den_up = b2 * q_bracket_plus(lj, q)
                        den_dn = b2 * q_bracket_plus(lj - 1, q)
                    else:
                        den_up = b2 * q_bracket(lj, q)
                        den_dn = b2 * q_bracket(lj - 1, q)
                    up = _top_target(tb, pat, j, +1)
                    if up is not None:
                        cf, _ = _c_factors(spec, pat, j, phantom)
                        M[up[0], col] += cf * _tilde_B(pat, j, phantom, q) / den_up
                    dn = _top_target(tb, pat, j, -1)
                    if dn is not None:
                        _, cf = _c_factors(spec, pat, j, phantom)
                        M[dn[0], col] -= cf * _tilde_B(dn[1], j, phantom, q) / den_dn
                if nonclass:
                    M[col, col] += eps_last * q_bracket_plus(c, q) * _tilde_Chat(pat, phantom, q)
                else:
                    M[col, col] += 1j * q_bracket(c, q) * _tilde_C(pat, phantom, q)
    return M


def build_lorentz(spec: LorentzRepSpec) -> GeneratorSet:
    """Generator set (I_21, ..., I_{n+1,n}) of one truncated principal-series
    representation."""
    kind = CLASSICAL if spec.family == FAMILY_CLASSICAL else NONCLASSICAL
    tb = build_truncated_basis(spec.n, spec.m, kind, spec.cutoff)
    eps_sub = tuple(spec.eps[: spec.n - 1]) if spec.eps is not None else None
    gens = rotation_blocks(tb, spec.q, spec.family, eps_sub)
    gens[gen_name(spec.n + 1)] = _top_generator(tb, spec)
    meta = {
        "family": f"lorentz-{spec.family}",
        "n": spec.n,
        "m": [str(e) for e in spec.m],
        "c": {"re": spec.c.real, "im": spec.c.imag},
        "q": spec.q.value,
        "cutoff": str(spec.cutoff),
        "variant": spec.variant,
    }
    if spec.eps is not None:
        meta["eps"] = list(spec.eps)
    return GeneratorSet(basis=tb, gens=gens, meta=meta)


# -- irreducibility criteria ---------------------------------------------


def _as_grid_value(x: float) -> HalfInt | None:
    """Snap a real number to the exact half-integer grid, if it is on it."""
    t = round(2.0 * x)
    if abs(2.0 * x - t) <= 2.0 * GRID_TOL:
        return HalfInt(int(t))
    return None


def _grid_c(c: complex, want_half_odd: bool | None) -> HalfInt | None:
    """c as an exact grid value of the required parity, else None."""
    c = complex(c)
    if abs(c.imag) > GRID_TOL:
        return None
    h = _as_grid_value(c.real)
    if h is None:
        return None
    if want_half_odd is None:
        return h
    return h if h.is_half_odd == want_half_odd else None


def _phantom_l_values(n: int, m: tuple[HalfInt, ...]) -> list[HalfInt]:
    return list(_phantom_l(n, tuple(HalfInt.of(e) for e in m)))


def irreducible_classical(c, m, n: int) -> IrreducibilityVerdict:
    """Classical-family criterion.

    Even rank: reducibility requires c on the same integral/half-odd grid
    as the phantom l-coordinates, and is rescued exactly when c or 1-c
    coincides with one of them.  Odd rank: rescued when |c| coincides
    with a phantom l-coordinate or is at most the smallest one in
    magnitude.
    """
    m = tuple(HalfInt.of(e) for e in m)
    _validate_labels(n, FAMILY_CLASSICAL, m)
    half_odd = m[0].is_half_odd if m else False
    ch = _grid_c(c, half_odd)
    if ch is None:
        return IrreducibilityVerdict(True, None)
    L = _phantom_l_values(n, m)
    if n % 2 == 0:
        one = HalfInt.of(1)
        for l in L:
            if ch == l or one - ch == l:
                return IrreducibilityVerdict(True, l)
        return IrreducibilityVerdict(False, _even_cut_level(ch, lattice_floor=None))
    bound = abs(L[-1])
    if abs(ch) <= bound:
        return IrreducibilityVerdict(True, bound)
    for l in L[:-1]:
        if abs(ch) == l:
            return IrreducibilityVerdict(True, l)
    return IrreducibilityVerdict(False, abs(ch))


def irreducible_nonclassical(c, m, n: int) -> IrreducibilityVerdict:
    """Nonclassical-family criterion.

    Reducibility requires real half-odd c.  Even rank: rescued when c or
    1-c coincides with a phantom l-coordinate, or when c = 1/2 (both
    candidate cut levels then lie below the lattice floor of 1/2, so no
    coupling can vanish).  Odd rank: rescued when |c| is at most the
    smallest phantom l-coordinate or coincides with one of the others.
    """
    m = tuple(HalfInt.of(e) for e in m)
    _validate_labels(n, FAMILY_NONCLASSICAL, m)
    ch = _grid_c(c, True)
    if ch is None:
        return IrreducibilityVerdict(True, None)
    L = _phantom_l_values(n, m)
    if n % 2 == 0:
        if ch == ONE_HALF:
            return IrreducibilityVerdict(True, ONE_HALF)
        one = HalfInt.of(1)
        for l in L:
            if ch == l or one - ch == l:
                return IrreducibilityVerdict(True, l)
        return IrreducibilityVerdict(False, _even_cut_level(ch, lattice_floor=ONE_HALF))
    bound = L[-1]
    if abs(ch) <= bound:
        return IrreducibilityVerdict(True, bound)
    for l in L[:-1]:
        if abs(ch) == l:
            return IrreducibilityVerdict(True, l)
    return IrreducibilityVerdict(False, abs(ch))


def _even_cut_level(ch: HalfInt, lattice_floor: HalfInt | None) -> HalfInt:
    # couplings along an even-rank top-row chain vanish between levels v
    # and v+1 for v = c-1 or v = -c; report the level above the floor
    floor = lattice_floor if lattice_floor is not None else None
    if floor is None:
        return ch - 1 if ch >= 1 else -ch
    return ch - 1 if ch - 1 >= floor else -ch


def irreducible(family: str, c, m, n: int) -> IrreducibilityVerdict:
    if family == FAMILY_CLASSICAL:
        return irreducible_classical(c, m, n)
    if family == FAMILY_NONCLASSICAL:
        return irreducible_nonclassical(c, m, n)
    raise ValueError(f"unknown family {family!r}")


# -- coupling probe --------------------------------------------------------


def coupling_cut_probe(gs: GeneratorSet, *, tol: float = BRANCH_TOL):
    """Search the built top generator for an invariant coordinate subspace.

    Scans every top-row slot and boundary level for a cut across which all
    raising couplings vanish while both sides remain populated inside the
    truncation window.  Returns (found, slot, level, mask) where mask
    selects the invariant lower block, or (False, None, None, None).
    """
    tb: TruncatedBasis = gs.basis
    top_name = sorted(
        (name for name in gs.gens if name.startswith("I_")), key=lambda s: int(s[2])
    )[-1]
    T = gs.gens[top_name]
    scale = max(float(np.max(np.abs(T))), 1.0)
    n = tb.components[0][0].n
    slots = n // 2
    weights = [w.entries for w, _ in tb.components]
    l_tops = [l_of_row(entries, n) for entries in weights]
    for j in range(slots):
        levels = sorted({l[j].twice for l in l_tops})
        for tw in levels[:-1]:
            lower = [ci for ci, l in enumerate(l_tops) if l[j].twice <= tw]
            upper = [ci for ci, l in enumerate(l_tops) if l[j].twice > tw]
            if not lower or not upper:
                continue
            crossing = []
            for ci in lower:
                for cj in upper:
                    blk = T[
                        tb.offsets[cj] : tb.offsets[cj] + tb.components[cj][1].dim,
                        tb.offsets[ci] : tb.offsets[ci] + tb.components[ci][1].dim,
                    ]
                    crossing.append(float(np.max(np.abs(blk))) if blk.size else 0.0)
            if crossing and max(crossing) <= tol * scale:
                mask = np.zeros(tb.dim, dtype=bool)
                for ci in lower:
                    mask[tb.offsets[ci] : tb.offsets[ci] + tb.components[ci][1].dim] = True
                return True, j + 1, HalfInt(tw), mask
    return False, None, None, None


def invariant_block_leakage(gs: GeneratorSet, block_mask: np.ndarray, interior: np.ndarray) -> float:
    """Largest norm leaked out of a coordinate block by any generator,
    measured on interior columns of the block."""
    cols = block_mask & interior
    out = ~block_mask
    worst = 0.0
    for G in gs.gens.values():
        if not cols.any():
            continue
        leak = np.linalg.norm(G[np.ix_(out, cols)])
        worst = max(worst, float(leak))
    return worst
