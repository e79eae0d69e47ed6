"""Truncated representations of the q-deformed Euclidean algebra.

The infinite-dimensional families restrict to a multiplicity-free direct
sum of finite-dimensional rotation-algebra representations selected by an
interlacing rule; the extra translation generator moves the top tableau
row between adjacent components.  Truncation keeps every component whose
leading top-row entry is at most ``cutoff``; defining relations then hold
exactly on columns whose component sits deep enough inside the window
(the interior mask).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .patterns import (
    CLASSICAL,
    NONCLASSICAL,
    Basis,
    GTPattern,
    HighestWeight,
    enumerate_basis,
    l_coords,
    validate_weight,
)
from .rep_so import (
    FAMILY_CLASSICAL,
    FAMILY_NONCLASSICAL,
    GeneratorSet,
    _even_generator,
    _odd_generator,
    _sqrt_nonneg,
    gen_name,
)
from .scalars import ONE_HALF, HalfInt, QParam, q_bracket, q_bracket_plus, q_pow


@dataclass(frozen=True)
class IsoRepSpec:
    """Parameters of one truncated Euclidean-algebra representation.

    ``m`` lists the subalgebra labels (slots 2 .. floor((n+1)/2) of the
    phantom row n+1); ``eps`` is (eps_2, ..., eps_{n+1}) and is required
    for the nonclassical family.
    """

    n: int
    family: str
    lam: complex
    m: tuple[HalfInt, ...]
    q: QParam
    cutoff: HalfInt
    eps: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(HalfInt.of(e) for e in self.m))
        object.__setattr__(self, "cutoff", HalfInt.of(self.cutoff))
        object.__setattr__(self, "lam", complex(self.lam))
        _validate_truncated(self.n, self.family, self.m, self.cutoff, self.eps)
        if self.lam == 0:
            raise ValueError("lambda must be nonzero (the zero case is the finite family)")


def _validate_labels(n, family, m):
    if n < 2:
        raise ValueError("rank n must be >= 2")
    if family not in (FAMILY_CLASSICAL, FAMILY_NONCLASSICAL):
        raise ValueError(f"unknown family {family!r}")
    if len(m) != (n + 1) // 2 - 1:
        raise ValueError(f"need {(n + 1) // 2 - 1} subalgebra labels for n={n}")
    kind = CLASSICAL if family == FAMILY_CLASSICAL else NONCLASSICAL
    if m:
        sub = HighestWeight(n - 1, kind, m)
        if not validate_weight(sub):
            raise ValueError(f"labels {[str(e) for e in m]} are not a valid rank-{n - 1} weight")


def _validate_truncated(n, family, m, cutoff, eps):
    _validate_labels(n, family, m)
    if family == FAMILY_NONCLASSICAL:
        if eps is None or len(eps) != n or any(e not in (-1, 1) for e in eps):
            raise ValueError(f"nonclassical family requires {n} signs (eps_2..eps_{n + 1})")
    floor = max((abs(e) for e in m), default=ONE_HALF if family == FAMILY_NONCLASSICAL else HalfInt(0))
    if cutoff < floor + 3:
        raise ValueError(f"cutoff {cutoff} too small; need at least {floor + 3}")


def _phantom_l(n: int, m: tuple[HalfInt, ...]) -> tuple[HalfInt, ...]:
    """l-coordinates of the phantom row n+1 labels (slots 2 and beyond)."""
    r = n + 1
    if r % 2 == 1:
        p = (r - 1) // 2
        return tuple(mu + (p - i + 1) for i, mu in enumerate(m, start=2))
    p = r // 2
    return tuple(mu + (p - i) for i, mu in enumerate(m, start=2))


def branch(n: int, m: tuple[HalfInt, ...], kind: str, cutoff) -> list[HighestWeight]:
    """Rotation-algebra weights interlacing the subalgebra labels, with the
    leading entry capped by the truncation cutoff.

    Ordered ascending in the leading entry, then lexicographically.
    """
    m = tuple(HalfInt.of(e) for e in m)
    cutoff = HalfInt.of(cutoff)
    if kind not in (CLASSICAL, NONCLASSICAL):
        raise ValueError(f"unknown kind {kind!r}")
    slots = n // 2
    ranges: list[tuple[HalfInt, HalfInt]] = []
    if n == 2:
        if kind == CLASSICAL:
            hi = cutoff.twice // 2  # largest integer <= cutoff
            return [HighestWeight(2, kind, (HalfInt(2 * t),)) for t in range(-hi, hi + 1)]
        ranges.append((ONE_HALF, cutoff))
    elif n % 2 == 0:
        k = n // 2
        mu = {i: m[i - 2] for i in range(2, k + 1)}
        ranges.append((mu[2], cutoff))
        for j in range(2, k):
            ranges.append((mu[j + 1], mu[j]))
        lo = -mu[k] if kind == CLASSICAL else ONE_HALF
        ranges.append((lo, mu[k]))
    else:
        k = (n + 1) // 2
        mu = {i: m[i - 2] for i in range(2, k + 1)}
        last_lo = abs(mu[k]) if kind == CLASSICAL else mu[k]
        if slots == 1:
            ranges.append((last_lo, cutoff))
        else:
            ranges.append((mu[2], cutoff))
            for j in range(2, slots):
                ranges.append((mu[j + 1], mu[j]))
            ranges.append((last_lo, mu[slots]))

    out: list[HighestWeight] = []

    def rec(prefix: list[HalfInt]):
        j = len(prefix)
        if j == slots:
            out.append(HighestWeight(n, kind, tuple(prefix)))
            return
        lo, hi = ranges[j]
        for t in range(lo.twice, hi.twice + 1, 2):
            rec(prefix + [HalfInt(t)])

    rec([])
    for w in out:
        if not validate_weight(w):
            raise ValueError(f"branching produced invalid weight {w}")
    return out


@dataclass
class TruncatedBasis:
    """Branching components with a flat index and truncation bookkeeping."""

    kind: str
    components: tuple[tuple[HighestWeight, Basis], ...]
    cutoff: HalfInt
    offsets: tuple[int, ...] = field(init=False)
    weight_index: dict[tuple, int] = field(init=False)

    def __post_init__(self):
        offs, total = [], 0
        seen = {}
        for ci, (w, b) in enumerate(self.components):
            offs.append(total)
            total += b.dim
            if w.entries in seen:
                raise ValueError("branching is not multiplicity-free")
            seen[w.entries] = ci
        self.offsets = tuple(offs)
        self.weight_index = seen
        self._dim = total

    @property
    def dim(self) -> int:
        return self._dim

    def interior_mask(self, depth: int) -> np.ndarray:
        """True for vectors whose component top row can move ``depth`` times
        without crossing the truncation window.

        Only the leading slot is truncated; the rank-2 classical chain is
        infinite in both directions, so there the lower edge is guarded too.
        """
        two_sided = self.kind == CLASSICAL and self.components[0][0].n == 2
        mask = np.zeros(self.dim, dtype=bool)
        for off, (w, b) in zip(self.offsets, self.components):
            ok = w.entries[0] + depth <= self.cutoff
            if two_sided:
                ok = ok and w.entries[0] - depth >= -self.cutoff
            if ok:
                mask[off : off + b.dim] = True
        return mask

    def component_slices(self):
        for off, (w, b) in zip(self.offsets, self.components):
            yield w, b, slice(off, off + b.dim)


def build_truncated_basis(n, m, kind, cutoff) -> TruncatedBasis:
    comps = tuple((w, enumerate_basis(w)) for w in branch(n, m, kind, cutoff))
    return TruncatedBasis(kind=kind, components=comps, cutoff=HalfInt.of(cutoff))


def interior_residual_mask(basis: TruncatedBasis, depth: int) -> np.ndarray:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return basis.interior_mask(depth)


# -- tilde coefficients: the finite-dimensional amplitudes with the row
#    above the top replaced by the phantom labels (leading slot absent) ----


def _tilde_A(pat: GTPattern, j: int, phantom_l, q: QParam) -> float:
    n = pat.n
    l_own = l_coords(pat, n)
    l_dn = l_coords(pat, n - 1) if n > 2 else ()
    lj = l_own[j - 1]
    num = 1.0
    for li in phantom_l:
        num *= q_bracket(li + lj, q) * q_bracket(li - lj - 1, q)
    for li in l_dn:
        num *= q_bracket(li + lj, q) * q_bracket(li - lj - 1, q)
    den = 1.0
    for i, li in enumerate(l_own, start=1):
        if i == j:
            continue
        den *= (
            q_bracket(li + lj, q)
            * q_bracket(li - lj, q)
            * q_bracket(li + lj + 1, q)
            * q_bracket(li - lj - 1, q)
        )
    return _sqrt_nonneg(num / den)


def _tilde_B(pat: GTPattern, j: int, phantom_l, q: QParam) -> float:
    n = pat.n
    l_own = l_coords(pat, n)
    l_dn = l_coords(pat, n - 1)
    lj = l_own[j - 1]
    num = 1.0
    for li in phantom_l:
        num *= q_bracket(li + lj, q) * q_bracket(li - lj, q)
    for li in l_dn:
        num *= q_bracket(li + lj, q) * q_bracket(li - lj, q)
    den = 1.0
    for i, li in enumerate(l_own, start=1):
        if i == j:
            continue
        den *= (
            q_bracket(li + lj, q)
            * q_bracket(li - lj, q)
            * q_bracket(li + lj - 1, q)
            * q_bracket(li - lj - 1, q)
        )
    return _sqrt_nonneg(num / den)


def _tilde_C(pat: GTPattern, phantom_l, q: QParam) -> float:
    if phantom_l[-1] == 0:
        return 0.0  # identically zero; the raw quotient is 0/0 here
    num = 1.0
    for li in phantom_l:
        num *= q_bracket(li, q)
    for li in l_coords(pat, pat.n - 1):
        num *= q_bracket(li, q)
    den = 1.0
    for li in l_coords(pat, pat.n):
        den *= q_bracket(li, q) * q_bracket(li - 1, q)
    return num / den


def _tilde_Chat(pat: GTPattern, phantom_l, q: QParam) -> float:
    num = 1.0
    for li in phantom_l:
        num *= q_bracket_plus(li, q)
    for li in l_coords(pat, pat.n - 1):
        num *= q_bracket_plus(li, q)
    den = 1.0
    for li in l_coords(pat, pat.n):
        den *= q_bracket_plus(li, q) * q_bracket_plus(li - 1, q)
    return num / den


def _tilde_D(pat: GTPattern, phantom_l, q: QParam) -> float:
    num = 1.0
    for li in phantom_l:
        num *= q_bracket(li - ONE_HALF, q)
    if pat.n > 2:
        for li in l_coords(pat, pat.n - 1):
            num *= q_bracket(li - ONE_HALF, q)
    den = 1.0
    own = l_coords(pat, pat.n)
    for li in own[:-1]:
        den *= q_bracket(li + ONE_HALF, q) * q_bracket(li - ONE_HALF, q)
    return num / den


def _top_target(tb: TruncatedBasis, pat: GTPattern, j: int, delta: int):
    """Flat index and tableau after shifting top-row slot j, or None if the
    move leaves the branching lattice or the truncation window."""
    n = pat.n
    top = pat.top
    new_top = top[: j - 1] + (top[j - 1] + delta,) + top[j:]
    ci = tb.weight_index.get(new_top)
    if ci is None:
        return None
    cand = pat.replace_row(n, new_top)
    local = tb.components[ci][1].index.get(cand)
    if local is None:
        return None
    return tb.offsets[ci] + local, cand


def _block_diag_so(tb: TruncatedBasis, k: int, q: QParam, family: str, eps) -> np.ndarray:
    M = np.zeros((tb.dim, tb.dim), dtype=complex)
    builder = _odd_generator if k % 2 == 1 else _even_generator
    for _, b, sl in tb.component_slices():
        M[sl, sl] = builder(b, k, q, family, eps)
    return M


def rotation_blocks(tb: TruncatedBasis, q: QParam, family: str, eps) -> dict[str, np.ndarray]:
    """The rotation generators, block diagonal over the components."""
    n = tb.components[0][0].n
    return {
        gen_name(k): _block_diag_so(tb, k, q, family, eps) for k in range(2, n + 1)
    }


def _translation_matrix(tb: TruncatedBasis, spec: IsoRepSpec) -> np.ndarray:
    n, q, lam = spec.n, spec.q, spec.lam
    phantom = _phantom_l(n, spec.m)
    nonclass = spec.family == FAMILY_NONCLASSICAL
    eps_last = spec.eps[-1] if nonclass else 0
    T = np.zeros((tb.dim, tb.dim), dtype=complex)
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
                        T[up[0], col] += lam * _tilde_A(pat, j, phantom, q) / den
                    if floor_hit and j == k:
                        continue
                    dn = _top_target(tb, pat, j, -1)
                    if dn is not None:
                        T[dn[0], col] += lam * _tilde_A(dn[1], j, phantom, q) / den
                if floor_hit:
                    T[col, col] += (
                        1j * lam * eps_last * _tilde_D(pat, phantom, q) / (rq - 1.0 / rq)
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
                        T[up[0], col] += lam * _tilde_B(pat, j, phantom, q) / den_up
                    dn = _top_target(tb, pat, j, -1)
                    if dn is not None:
                        T[dn[0], col] += lam * _tilde_B(dn[1], j, phantom, q) / den_dn
                if nonclass:
                    T[col, col] += 1j * eps_last * lam * _tilde_Chat(pat, phantom, q)
                else:
                    T[col, col] += lam * _tilde_C(pat, phantom, q)
    return T


def build_iso(spec: IsoRepSpec) -> GeneratorSet:
    """Generator set (I_21, ..., I_{n,n-1}, T_n) of one truncated family."""
    kind = CLASSICAL if spec.family == FAMILY_CLASSICAL else NONCLASSICAL
    tb = build_truncated_basis(spec.n, spec.m, kind, spec.cutoff)
    eps_sub = tuple(spec.eps[: spec.n - 1]) if spec.eps is not None else None
    gens = rotation_blocks(tb, spec.q, spec.family, eps_sub)
    gens[f"T_{spec.n}"] = _translation_matrix(tb, spec)
    meta = {
        "family": f"iso-{spec.family}",
        "n": spec.n,
        "m": [str(e) for e in spec.m],
        "lambda": {"re": spec.lam.real, "im": spec.lam.imag},
        "q": spec.q.value,
        "cutoff": str(spec.cutoff),
    }
    if spec.eps is not None:
        meta["eps"] = list(spec.eps)
    return GeneratorSet(basis=tb, gens=gens, meta=meta)
