"""Finite-dimensional representations of the nonstandard q-deformed so_n.

Builds the generator matrices of the classical-type and nonclassical-type
families over Gel'fand-Tsetlin bases, the intermediate reducible family on
the signed half-integral basis, its splitting into invariant subspaces,
and the one-dimensional representations.

Matrices are stored column-by-source: if a generator sends |xi> to
sum_eta c_{eta,xi} |eta>, then M[eta_index, xi_index] = c_{eta,xi}.
"""

from __future__ import annotations

import itertools
import math
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
    shift,
    validate_weight,
)
from .scalars import ONE_HALF, HalfInt, QParam, q_bracket, q_bracket_plus, q_pow

FAMILY_CLASSICAL = "classical"
FAMILY_NONCLASSICAL = "nonclassical"
FAMILY_TPRIME = "tprime"
FAMILY_ONEDIM = "onedim"

RADICAND_TOL = 1e-12


@dataclass(frozen=True)
class SoRepSpec:
    """Parameters of one finite-dimensional representation.

    ``eps`` is the full sign vector (eps_2, ..., eps_n) for the
    nonclassical and one-dimensional families, and the even-index subset
    (eps_2, eps_4, ...) for the signed intermediate family.
    """

    weight: HighestWeight
    q: QParam
    family: str
    eps: tuple[int, ...] | None = None


@dataclass
class GeneratorSet:
    """Generator name -> dense complex matrix over one ordered basis.

    ``basis`` is a finite ``Basis`` here; the truncated families attach
    their own component-indexed basis object.  ``meta`` records how the
    set was built (family, weight, signs, q, ...), enough to reproduce it.
    """

    basis: object
    gens: dict[str, np.ndarray]
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return next(iter(self.gens.values())).shape[0]

    @property
    def names(self) -> list[str]:
        return list(self.gens.keys())

    def interior_mask(self, depth: int) -> np.ndarray:
        basis = self.basis
        if hasattr(basis, "interior_mask"):
            return basis.interior_mask(depth)
        return np.ones(self.dim, dtype=bool)


def gen_name(k: int) -> str:
    if k > 9:
        raise ValueError("generator labels only defined up to rank 9")
    return f"I_{k}{k - 1}"


def _sqrt_nonneg(radicand: float) -> float:
    """Square root of a product of brackets that is nonnegative for every
    lattice-valid tableau; tiny negatives are roundoff and clamp to 0."""
    if radicand < -RADICAND_TOL * max(1.0, abs(radicand)):
        raise ValueError(f"radicand negative: {radicand}")
    return math.sqrt(max(radicand, 0.0))


def _coeff_A(pat: GTPattern, r: int, j: int, q: QParam) -> float:
    """Shift amplitude for slot j of even row r."""
    l_up = l_coords(pat, r + 1)
    l_own = l_coords(pat, r)
    l_dn = l_coords(pat, r - 1) if r > 2 else ()
    lj = l_own[j - 1]
    num = 1.0
    for li in l_up:
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


def _coeff_B(pat: GTPattern, r: int, j: int, q: QParam) -> float:
    """Shift amplitude for slot j of odd row r (r >= 3)."""
    l_up = l_coords(pat, r + 1)
    l_own = l_coords(pat, r)
    l_dn = l_coords(pat, r - 1)
    lj = l_own[j - 1]
    num = 1.0
    for li in l_up:
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


def _coeff_C(pat: GTPattern, r: int, q: QParam) -> float:
    """Diagonal amplitude of the generator moving odd row r; vanishes
    identically when the last entry of the even row above is zero (the
    raw quotient degenerates to 0/0 exactly at those patterns)."""
    l_up = l_coords(pat, r + 1)
    if l_up[-1] == 0:
        return 0.0
    num = 1.0
    for li in l_up:
        num *= q_bracket(li, q)
    den = 1.0
    if r > 1:
        for li in l_coords(pat, r - 1):
            num *= q_bracket(li, q)
        for li in l_coords(pat, r):
            den *= q_bracket(li, q) * q_bracket(li - 1, q)
    return num / den


def _coeff_Chat(pat: GTPattern, r: int, q: QParam) -> float:
    """Plus-bracket counterpart of the diagonal amplitude."""
    num = 1.0
    for li in l_coords(pat, r + 1):
        num *= q_bracket_plus(li, q)
    den = 1.0
    if r > 1:
        for li in l_coords(pat, r - 1):
            num *= q_bracket_plus(li, q)
        for li in l_coords(pat, r):
            den *= q_bracket_plus(li, q) * q_bracket_plus(li - 1, q)
    return num / den


def _coeff_D(pat: GTPattern, r: int, q: QParam) -> float:
    """Diagonal amplitude multiplying the floor-value delta term of the
    generator moving even row r; the last own slot is excluded below."""
    num = 1.0
    for li in l_coords(pat, r + 1):
        num *= q_bracket(li - ONE_HALF, q)
    if r > 2:
        for li in l_coords(pat, r - 1):
            num *= q_bracket(li - ONE_HALF, q)
    den = 1.0
    own = l_coords(pat, r)
    for li in own[:-1]:
        den *= q_bracket(li + ONE_HALF, q) * q_bracket(li - ONE_HALF, q)
    return num / den


def coefficient(kind: str, pat: GTPattern, k: int, j: int, q: QParam) -> float:
    """Evaluate one matrix-element amplitude on a tableau.

    ``kind`` is one of A (even-row shift), B (odd-row shift), C / Chat
    (odd-row diagonal; j ignored), D (even-row floor diagonal; j ignored);
    ``k`` is the row the generator moves.
    """
    if kind == "A":
        return _coeff_A(pat, k, j, q)
    if kind == "B":
        return _coeff_B(pat, k, j, q)
    if kind == "C":
        return _coeff_C(pat, k, q)
    if kind == "Chat":
        return _coeff_Chat(pat, k, q)
    if kind == "D":
        return _coeff_D(pat, k, q)
    raise ValueError(f"unknown coefficient kind {kind!r}")


def _eps_lookup(eps: tuple[int, ...], k: int) -> int:
    """Sign attached to generator index k from the vector (eps_2..eps_n)."""
    return eps[k - 2]


def _odd_generator(basis: Basis, k: int, q: QParam, family: str, eps) -> np.ndarray:
    """Matrix of the generator moving even row r = k - 1 (k odd)."""
    r = k - 1
    p = r // 2
    kind = basis.weight.kind
    dim = basis.dim
    M = np.zeros((dim, dim), dtype=complex)
    minus = family in (FAMILY_NONCLASSICAL, FAMILY_TPRIME)
    for col, pat in enumerate(basis.patterns):
        l_own = l_coords(pat, r)
        floor_hit = family == FAMILY_NONCLASSICAL and pat.row(r)[p - 1] == ONE_HALF
        for j in range(1, p + 1):
            lj = l_own[j - 1]
            t = q_pow(lj, q)
            den = (t - 1.0 / t) if minus else (t + 1.0 / t)
            up = shift(pat, r, j, +1, kind)
            if up is not None:
                M[basis.index[up], col] += _coeff_A(pat, r, j, q) / den
            if floor_hit and j == p:
                continue  # the lowering sum shrinks at the floor value
            dn = shift(pat, r, j, -1, kind)
            if dn is not None:
                M[basis.index[dn], col] -= _coeff_A(dn, r, j, q) / den
        if floor_hit:
            s = q_pow(ONE_HALF, q)
            M[col, col] += (
                _eps_lookup(eps, k) * _coeff_D(pat, r, q) / (s - 1.0 / s)
            )
    return M


def _even_generator(basis: Basis, k: int, q: QParam, family: str, eps) -> np.ndarray:
    """Matrix of the generator moving odd row r = k - 1 (k even)."""
    r = k - 1
    p = k // 2
    kind = basis.weight.kind
    dim = basis.dim
    M = np.zeros((dim, dim), dtype=complex)
    plus_type = family in (FAMILY_NONCLASSICAL, FAMILY_TPRIME)
    for col, pat in enumerate(basis.patterns):
        if p >= 2:
            l_own = l_coords(pat, r)
            for j in range(1, p):
                lj = l_own[j - 1]
                b2 = q_bracket(lj + lj - 1, q)
                if plus_type:
                    den_up = b2 * q_bracket_plus(lj, q)
                    den_dn = b2 * q_bracket_plus(lj - 1, q)
                else:
                    den_up = b2 * q_bracket(lj, q)
                    den_dn = b2 * q_bracket(lj - 1, q)
                up = shift(pat, r, j, +1, kind)
                if up is not None:
                    M[basis.index[up], col] += _coeff_B(pat, r, j, q) / den_up
                dn = shift(pat, r, j, -1, kind)
                if dn is not None:
                    M[basis.index[dn], col] -= _coeff_B(dn, r, j, q) / den_dn
        if plus_type:
            M[col, col] += _eps_lookup_even(family, eps, k) * _coeff_Chat(pat, r, q)
        else:
            M[col, col] += 1j * _coeff_C(pat, r, q)
    return M


def _eps_lookup_even(family: str, eps, k: int) -> int:
    if family == FAMILY_TPRIME:
        return eps[k // 2 - 1]  # eps holds (eps_2, eps_4, ...)
    return _eps_lookup(eps, k)


def _check_eps(eps, length: int, what: str):
    if eps is None or len(eps) != length or any(e not in (-1, 1) for e in eps):
        raise ValueError(f"{what} requires a sign vector of length {length}")


def build_classical(spec: SoRepSpec) -> GeneratorSet:
    """Classical-type representation on the Gel'fand-Tsetlin basis."""
    w = spec.weight
    if spec.family != FAMILY_CLASSICAL or w.kind != CLASSICAL:
        raise ValueError("spec is not a classical family spec")
    if spec.eps is not None:
        raise ValueError("classical family takes no sign vector")
    basis = enumerate_basis(w)
    gens = {}
    for k in range(2, w.n + 1):
        builder = _odd_generator if k % 2 == 1 else _even_generator
        gens[gen_name(k)] = builder(basis, k, spec.q, FAMILY_CLASSICAL, None)
    meta = {"family": FAMILY_CLASSICAL, "weight": [str(e) for e in w.entries],
            "n": w.n, "q": spec.q.value}
    return GeneratorSet(basis=basis, gens=gens, meta=meta)


def build_nonclassical(spec: SoRepSpec) -> GeneratorSet:
    """Nonclassical-type representation, labelled by a half-odd weight and
    the sign vector (eps_2, ..., eps_n)."""
    w = spec.weight
    if spec.family not in (FAMILY_NONCLASSICAL, FAMILY_ONEDIM) or w.kind != NONCLASSICAL:
        raise ValueError("spec is not a nonclassical family spec")
    _check_eps(spec.eps, w.n - 1, "nonclassical family")
    if spec.family == FAMILY_ONEDIM and any(e != ONE_HALF for e in w.entries):
        raise ValueError("one-dimensional family requires weight (1/2, ..., 1/2)")
    basis = enumerate_basis(w)
    gens = {}
    for k in range(2, w.n + 1):
        builder = _odd_generator if k % 2 == 1 else _even_generator
        gens[gen_name(k)] = builder(basis, k, spec.q, FAMILY_NONCLASSICAL, spec.eps)
    if spec.family == FAMILY_ONEDIM and basis.dim != 1:
        raise ValueError("one-dimensional spec produced dim != 1")
    meta = {"family": spec.family, "weight": [str(e) for e in w.entries],
            "n": w.n, "q": spec.q.value, "eps": list(spec.eps)}
    return GeneratorSet(basis=basis, gens=gens, meta=meta)


def build_onedim(n: int, eps: tuple[int, ...], q: QParam) -> GeneratorSet:
    """One-dimensional representation attached to a sign vector: every
    generator acts by eps_{k} / (q^{1/2} - q^{-1/2})."""
    w = HighestWeight(n, NONCLASSICAL, tuple(ONE_HALF for _ in range(n // 2)))
    return build_nonclassical(SoRepSpec(weight=w, q=q, family=FAMILY_ONEDIM, eps=tuple(eps)))


def build_tprime(weight: HighestWeight, eps_even: tuple[int, ...], q: QParam) -> GeneratorSet:
    """Reducible representation on the signed half-integral basis.

    The basis is the classical one for a half-odd weight; shift terms use
    the difference denominators and the even-generator diagonal carries
    the signs (eps_2, eps_4, ...).  It splits under ``split_tprime``.
    """
    if weight.kind != CLASSICAL or not all(e.is_half_odd for e in weight.entries):
        raise ValueError("signed intermediate family needs a half-odd classical weight")
    if not validate_weight(weight):
        raise ValueError(f"invalid highest weight {weight}")
    _check_eps(eps_even, weight.n // 2, "signed intermediate family")
    basis = enumerate_basis(weight)
    gens = {}
    for k in range(2, weight.n + 1):
        builder = _odd_generator if k % 2 == 1 else _even_generator
        gens[gen_name(k)] = builder(basis, k, q, FAMILY_TPRIME, tuple(eps_even))
    meta = {"family": FAMILY_TPRIME, "weight": [str(e) for e in weight.entries],
            "n": weight.n, "q": q.value, "eps_even": list(eps_even)}
    return GeneratorSet(basis=basis, gens=gens, meta=meta)


def _flip_rows(pat: GTPattern, rows: tuple[int, ...]) -> GTPattern:
    out = pat
    for r in rows:
        row = out.row(r)
        out = out.replace_row(r, row[:-1] + (-row[-1],))
    return out


def split_tprime(gs: GeneratorSet, signs: tuple[int, ...], *, tol: float = 1e-8) -> GeneratorSet:
    """Subrepresentation of a signed-basis build on one joint eigenspace.

    For each even non-top row the basis splits along |xi> - eps |xi'>
    with the row's last entry sign-flipped in |xi'>; ``signs`` picks the
    eps for rows (2, 4, ...) in order.  The result is expressed in the
    symmetrized basis, which matches the nonclassical enumeration of the
    absolute weight, and must be exactly invariant.
    """
    basis: Basis = gs.basis
    n = basis.weight.n
    split_rows = tuple(2 * p for p in range(1, (n - 1) // 2 + 1))
    if len(signs) != len(split_rows) or any(s not in (-1, 1) for s in signs):
        raise ValueError(f"need {len(split_rows)} signs of +/-1")

    reduced = [
        pat
        for pat in basis.patterns
        if all(pat.row(r)[-1] > 0 for r in split_rows)
    ]
    dim = basis.dim
    V = np.zeros((dim, len(reduced)))
    w = len(split_rows)
    for cidx, pat in enumerate(reduced):
        for picks in itertools.product((False, True), repeat=w):
            flipped = _flip_rows(pat, tuple(r for r, f in zip(split_rows, picks) if f))
            coef = 1.0
            for s, f in zip(signs, picks):
                if f:
                    coef *= -s
            V[basis.index[flipped], cidx] = coef

    sub = {}
    for name, G in gs.gens.items():
        R = (V.T @ (G @ V)) / (2.0**w)
        leak = np.linalg.norm(G @ V - V @ R)
        if leak > tol * (1.0 + np.linalg.norm(G @ V)):
            raise ValueError(f"splitting failed: generator {name} leaks {leak:.3e}")
        sub[name] = R

    nc_weight = HighestWeight(n, NONCLASSICAL, tuple(abs(e) for e in basis.weight.entries))
    nc_basis = enumerate_basis(nc_weight)
    stripped = tuple(pat.rows for pat in reduced)
    if stripped != tuple(pat.rows for pat in nc_basis.patterns):
        raise ValueError("splitting failed: reduced basis does not match enumeration")
    meta = dict(gs.meta)
    meta.update({"family": "tprime-split", "signs_odd": list(signs)})
    return GeneratorSet(basis=nc_basis, gens=sub, meta=meta)


def build(spec: SoRepSpec) -> GeneratorSet:
    """Dispatch on the family tag."""
    if spec.family == FAMILY_CLASSICAL:
        return build_classical(spec)
    if spec.family in (FAMILY_NONCLASSICAL, FAMILY_ONEDIM):
        return build_nonclassical(spec)
    if spec.family == FAMILY_TPRIME:
        return build_tprime(spec.weight, spec.eps, spec.q)
    raise ValueError(f"unknown family {spec.family!r}")
