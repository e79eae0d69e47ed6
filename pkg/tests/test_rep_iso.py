import numpy as np
import pytest

from qsorep.patterns import CLASSICAL, NONCLASSICAL, HighestWeight
from qsorep.rep_iso import (
    IsoRepSpec,
    branch,
    build_iso,
    build_truncated_basis,
    interior_residual_mask,
)
from qsorep.rep_so import SoRepSpec, build_classical, build_nonclassical
from qsorep.scalars import HalfInt, QParam, q_bracket
from qsorep.verify import all_relation_residuals, iso_relation_residual

Q = QParam(1.3)
H = HalfInt


def test_branch_examples():
    ws = branch(3, (H.of(0),), CLASSICAL, H.of(3))
    assert [w.entries[0].twice for w in ws] == [0, 2, 4, 6]
    ws = branch(3, (H(1),), NONCLASSICAL, H(5))
    assert [w.entries[0].twice for w in ws] == [1, 3, 5]
    ws = branch(2, (), CLASSICAL, H.of(2))
    assert [w.entries[0].twice for w in ws] == [-4, -2, 0, 2, 4]
    ws = branch(2, (), NONCLASSICAL, H(5))
    assert [w.entries[0].twice for w in ws] == [1, 3, 5]


def test_branch_multiplicity_free_and_valid():
    ws = branch(4, (H.of(1),), CLASSICAL, H.of(5))
    assert len({w.entries for w in ws}) == len(ws)
    ws = branch(5, (H(3), H(1)), NONCLASSICAL, H(9))
    assert len({w.entries for w in ws}) == len(ws)
    leading = [w.entries[0].twice for w in ws]
    assert leading == sorted(leading)


def test_branch_signed_last_slot_even_rank():
    ws = branch(4, (H.of(1),), CLASSICAL, H.of(4))
    assert {w.entries[1].twice for w in ws} == {-2, 0, 2}
    ws = branch(4, (H(3),), NONCLASSICAL, H(11))
    assert {w.entries[1].twice for w in ws} == {1, 3}


def test_iso_spec_validation():
    with pytest.raises(ValueError, match="lambda"):
        IsoRepSpec(n=2, family="classical", lam=0.0, m=(), q=Q, cutoff=H.of(5))
    with pytest.raises(ValueError, match="cutoff"):
        IsoRepSpec(n=3, family="classical", lam=1.0, m=(H.of(2),), q=Q, cutoff=H.of(3))
    with pytest.raises(ValueError, match="signs"):
        IsoRepSpec(n=3, family="nonclassical", lam=1.0, m=(H(1),), q=Q, cutoff=H(17))
    with pytest.raises(ValueError):
        IsoRepSpec(n=3, family="nonclassical", lam=1.0, m=(H.of(1),), q=Q,
                   cutoff=H(17), eps=(1, 1, 1))  # integral labels


def test_rank2_classical_translation_entries():
    spec = IsoRepSpec(n=2, family="classical", lam=1.0, m=(), q=Q, cutoff=H.of(6))
    gs = build_iso(spec)
    tb = gs.basis
    T = gs.gens["T_2"]
    for ci, (w, b) in enumerate(tb.components):
        m = float(w.entries[0])
        col = tb.offsets[ci]
        expect = 1.0 / (Q.value**m + Q.value**-m)
        up = tb.weight_index.get((w.entries[0] + 1,))
        if up is not None:
            assert T[tb.offsets[up], col] == pytest.approx(expect, rel=1e-14)
        dn = tb.weight_index.get((w.entries[0] - 1,))
        if dn is None:
            continue
        assert T[tb.offsets[dn], col] == pytest.approx(expect, rel=1e-14)


def test_rank3_translation_diagonal_hand_value():
    # diagonal of the odd-rank translation operator, evaluated by hand for
    # one column with nonzero subalgebra label
    lam = 2.0 + 0.0j
    spec = IsoRepSpec(n=3, family="classical", lam=lam, m=(H.of(1),), q=Q, cutoff=H.of(5))
    gs = build_iso(spec)
    tb = gs.basis
    ci = tb.weight_index[(H.of(1),)]
    b = tb.components[ci][1]
    local = next(i for i, p in enumerate(b.patterns) if p.row(2)[0] == 0)
    col = tb.offsets[ci] + local
    l24 = q_bracket(H.of(1), Q)   # phantom label l
    l12 = q_bracket(H.of(0), Q)
    l13 = H.of(2)
    expect = lam * l24 * l12 / (q_bracket(l13, Q) * q_bracket(l13 - 1, Q))
    assert gs.gens["T_3"][col, col] == pytest.approx(expect, abs=1e-14)


def test_masked_relations_rank2_reference_case():
    spec = IsoRepSpec(n=2, family="classical", lam=1.0, m=(), q=Q, cutoff=H.of(10))
    gs = build_iso(spec)
    mask = interior_residual_mask(gs.basis, 3)
    res = iso_relation_residual(gs, Q, mask)
    assert max(res.values()) <= 1e-9
    # bilinear triple keys exist for the rank-2 algebra
    assert "qcomm(T_2,T_1)" in res and "qbr(T_1,I_21)-T_2" in res


def test_interior_mask_depths():
    tb = build_truncated_basis(3, (H.of(0),), CLASSICAL, H.of(3))
    assert interior_residual_mask(tb, 0).all()
    deep = interior_residual_mask(tb, 3)
    w0 = tb.components[0]
    assert deep[: w0[1].dim].all() and deep.sum() == w0[1].dim
    with pytest.raises(ValueError):
        interior_residual_mask(tb, -1)


def test_restriction_blocks_equal_finite_builds():
    spec = IsoRepSpec(
        n=3, family="nonclassical", lam=1.5, m=(H(1),), q=Q, cutoff=H(9), eps=(1, -1, 1)
    )
    gs = build_iso(spec)
    tb = gs.basis
    for w, b, sl in tb.component_slices():
        direct = build_nonclassical(
            SoRepSpec(weight=w, q=Q, family="nonclassical", eps=(1, -1))
        )
        for name in direct.gens:
            assert np.max(np.abs(gs.gens[name][sl, sl] - direct.gens[name])) < 1e-12

    spec = IsoRepSpec(n=4, family="classical", lam=1.0, m=(H.of(1),), q=Q, cutoff=H.of(4))
    gs = build_iso(spec)
    for w, b, sl in gs.basis.component_slices():
        direct = build_classical(SoRepSpec(weight=w, q=Q, family="classical"))
        for name in direct.gens:
            assert np.max(np.abs(gs.gens[name][sl, sl] - direct.gens[name])) < 1e-12


def test_translation_is_block_tridiagonal():
    spec = IsoRepSpec(n=3, family="classical", lam=1.0, m=(H.of(1),), q=Q, cutoff=H.of(6))
    gs = build_iso(spec)
    tb = gs.basis
    T = gs.gens["T_3"]
    for ci, (wi, bi) in enumerate(tb.components):
        for cj, (wj, bj) in enumerate(tb.components):
            blk = T[tb.offsets[cj]: tb.offsets[cj] + bj.dim,
                    tb.offsets[ci]: tb.offsets[ci] + bi.dim]
            dist = abs(wi.entries[0].twice - wj.entries[0].twice) // 2
            if dist > 1:
                assert np.max(np.abs(blk)) == 0.0


def test_lambda_scaling_covariance():
    base = IsoRepSpec(n=3, family="classical", lam=1.0 + 0.0j, m=(H.of(0),), q=Q, cutoff=H.of(4))
    scaled = IsoRepSpec(n=3, family="classical", lam=2.5 - 1.0j, m=(H.of(0),), q=Q, cutoff=H.of(4))
    g1, g2 = build_iso(base), build_iso(scaled)
    assert np.max(np.abs(g2.gens["T_3"] - (2.5 - 1.0j) * g1.gens["T_3"])) < 1e-12
    for name in g1.gens:
        if name.startswith("I_"):
            assert np.max(np.abs(g2.gens[name] - g1.gens[name])) == 0.0


def test_masked_relations_both_families_small_grid():
    cases = [
        IsoRepSpec(n=2, family="nonclassical", lam=1.0, m=(), q=QParam(0.7), cutoff=H(19), eps=(1, -1)),
        IsoRepSpec(n=3, family="classical", lam=0.5 + 2.0j, m=(H.of(1),), q=QParam(2.5), cutoff=H.of(6)),
        IsoRepSpec(n=4, family="nonclassical", lam=1.0, m=(H(3),), q=Q, cutoff=H(13), eps=(1, 1, -1, 1)),
    ]
    for spec in cases:
        gs = build_iso(spec)
        mask = gs.interior_mask(3)
        res = all_relation_residuals(gs, spec.q, mask)
        assert max(res.values()) <= 1e-9, (spec.n, spec.family)
