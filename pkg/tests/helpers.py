"""Shared test utilities: independent oracles and weight pickers.

Everything here is deliberately written from the interlacing chains
directly, without reusing the library's enumeration internals, so tests
compare two independent routes.
"""

from __future__ import annotations

import itertools

from qsorep.patterns import CLASSICAL, NONCLASSICAL, HighestWeight
from qsorep.scalars import HalfInt


def halves(lo_twice: int, hi_twice: int, step: int = 2):
    return [HalfInt(t) for t in range(lo_twice, hi_twice + 1, step)]


# -- independent chain validator (transcribed, not imported) ---------------


def chain_ok(upper, lower, upper_k, kind) -> bool:
    """Betweenness between row upper_k and the row below, written out
    directly from the inequality chains."""
    u = [e.twice for e in upper]
    l = [e.twice for e in lower]
    if upper_k % 2 == 1:
        p = len(u)
        seq = []
        for j in range(p):
            seq.append(u[j])
            seq.append(l[j])
        if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
            return False
        return l[p - 1] >= (-u[p - 1] if kind == CLASSICAL else 1)
    p = len(u)
    if p < 2:
        return True
    seq = []
    for j in range(p - 1):
        seq.append(u[j])
        seq.append(l[j])
    if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
        return False
    bound = abs(u[p - 1]) if kind == CLASSICAL else u[p - 1]
    return l[p - 2] >= bound


def brute_force_count(w: HighestWeight) -> int:
    """Count tableaux by scanning a bounded box row by row, keeping the
    partial stacks that pass the chain validator."""
    top = list(w.entries)
    hi = max(abs(e.twice) for e in top) if top else 0
    parity = top[0].twice % 2 if top else 0
    values = halves(-hi if w.kind == CLASSICAL else 1, hi)
    values = [v for v in values if v.twice % 2 == parity]
    stacks = [[tuple(top)]]
    for k in range(w.n - 1, 1, -1):
        slots = k // 2
        new_stacks = []
        for stack in stacks:
            for combo in itertools.product(values, repeat=slots):
                if chain_ok(stack[-1], combo, k + 1, w.kind):
                    new_stacks.append(stack + [combo])
        stacks = new_stacks
    return len(stacks)


def weyl_dimension(n: int, entries) -> float:
    """Closed-form dimension of the classical orthogonal irreducible."""
    m = [e.twice / 2.0 for e in entries]
    p = n // 2
    if n % 2 == 1:
        # l_i = m_i + p - i + 1/2, slots i counted from 1
        l = [m[i] + p - (i + 1) + 0.5 for i in range(p)]
        l0 = [p - (i + 1) + 0.5 for i in range(p)]
        dim = 1.0
        for i in range(p):
            for j in range(i + 1, p):
                dim *= (l[i] ** 2 - l[j] ** 2) / (l0[i] ** 2 - l0[j] ** 2)
            dim *= l[i] / l0[i]
        return dim
    l = [m[i] + p - (i + 1) for i in range(p)]
    l0 = [p - (i + 1) for i in range(p)]
    dim = 1.0
    for i in range(p):
        for j in range(i + 1, p):
            dim *= (l[i] ** 2 - l[j] ** 2) / (l0[i] ** 2 - l0[j] ** 2)
    return dim


# -- deterministic weight pickers for the suites ---------------------------


def candidate_weights(n: int, kind: str):
    """Valid weights in ascending lexicographic order, smallest first."""
    from qsorep.patterns import validate_weight

    slots = n // 2
    start = 0 if kind == CLASSICAL else 1
    for total in itertools.count(0):
        found = []
        for combo in itertools.product(range(total + 1), repeat=slots):
            if sum(combo) != total:
                continue
            entries = tuple(HalfInt(start + 2 * c) for c in combo)
            w = HighestWeight(n, kind, entries)
            if validate_weight(w):
                found.append(w)
        yield from sorted(found, key=lambda w: [e.twice for e in w.entries])
        if total > 12:
            return


def pick_weights(n: int, kind: str, count: int, max_dim: int):
    from qsorep.patterns import dimension

    out = []
    for w in candidate_weights(n, kind):
        if dimension(w) <= max_dim:
            out.append(w)
        if len(out) == count:
            return out
    raise AssertionError(f"could not find {count} weights for n={n} {kind}")


def eps_vectors(n: int, all_of_them: bool):
    length = n - 1
    if all_of_them:
        return list(itertools.product((1, -1), repeat=length))
    base = tuple(1 for _ in range(length))
    alt = tuple(-1 if i % 2 else 1 for i in range(length))
    return [base, alt]
