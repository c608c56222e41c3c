"""Term identities behind the categorical structure.

Two families of witnesses: a binary-operation recovery identity that
exhibits protomodularity, and a Pixley-style ternary term giving the
arithmetical (Mal'tsev plus distributive) behaviour.  Both are verified
exhaustively on finite tables via vectorized evaluation and by sampling
on block algebras.  The kernel-restriction harness then checks, square by
square, that comparison maps into pullbacks are injective, surjective or
bijective exactly when the induced restriction between kernels is.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .catalog import chain_product_catalog
from .core import (
    Algebra,
    CheckReport,
    CheckResult,
    FiniteAlgebra,
    arrow,
    carrier_size,
    describe,
    elements,
    join,
    meet,
    neg,
    ominus,
    oplus,
    otimes,
    sample_tuples,
    to_finite,
)
from .ideals import all_ideals, ideal_elements, ideal_leq
from .morphisms import (
    Morphism,
    compose,
    enumerate_homs,
    factor_through_quotient,
    mediator_to_pullback,
    pullback,
    quotient,
)

__all__ = [
    "verify_protomodularity",
    "verify_pixley",
    "HarnessReport",
    "kernel_restriction_harness",
]


def _derived_tables(algebra: FiniteAlgebra):
    negt, plust = algebra.tables()
    times = negt[plust[negt[:, None], negt[None, :]]]
    arrowt = plust[negt[:, None], np.arange(algebra.size)[None, :]]
    joint = plust[times[:, negt], np.arange(algebra.size)[None, :]]
    meett = times[np.arange(algebra.size)[:, None], arrowt]
    return negt, plust, times, arrowt, joint, meett


def _protomodularity_finite(algebra: FiniteAlgebra) -> CheckReport:
    negt, plust, times, _, _, _ = _derived_tables(algebra)
    n = algebra.size
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    t1 = times[x, negt[y]]
    t2 = plust[x, negt[y]]
    recovered = plust[t1, times[t2, y]]
    bad = np.argwhere(recovered != x)
    res = CheckResult("recovery_identity", bad.size == 0,
                      tuple(int(v) for v in bad[0]) if bad.size else None,
                      n * n)
    return CheckReport(describe(algebra), "exhaustive", (res,))


def _recover(algebra: Algebra, x, y):
    t1 = ominus(algebra, x, y)
    t2 = oplus(algebra, x, neg(algebra, y))
    return oplus(algebra, t1, otimes(algebra, t2, y))


def verify_protomodularity(algebra: Algebra, mode: str = "auto",
                           count: int = 2000, bound: int = 8,
                           seed: int = 0) -> CheckReport:
    """The identity (x - y) + ((x + not y) . y) = x, which rebuilds the
    first argument from two binary terms and the second argument."""
    if mode == "auto":
        mode = "exhaustive" if carrier_size(algebra) is not None else "sample"
    if mode == "exhaustive":
        if isinstance(algebra, FiniteAlgebra):
            return _protomodularity_finite(algebra)
        return _protomodularity_finite(to_finite(algebra))
    rng = random.Random(f"{seed}:protomodularity")
    witness = None
    checked = 0
    for x, y in sample_tuples(algebra, 2, count, rng, bound=bound):
        checked += 1
        if _recover(algebra, x, y) != x:
            witness = (x, y)
            break
    res = CheckResult("recovery_identity", witness is None, witness, checked)
    return CheckReport(describe(algebra), "sample", (res,))


def _pixley_finite(algebra: FiniteAlgebra) -> CheckReport:
    negt, plust, times, arrowt, joint, meett = _derived_tables(algebra)
    n = algebra.size
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    p = meett[arrowt[arrowt[x, y], z], arrowt[arrowt[z, y], x]]
    t = meett[arrowt[y, meett[x, z]], joint[x, z]]
    r = meett[p, t]
    results = []
    idx = np.arange(n)
    checks = (
        ("pixley_xxz", r[idx[:, None], idx[:, None], idx[None, :]],
         idx[None, :]),
        ("pixley_xyy", r[idx[:, None], idx[None, :], idx[None, :]],
         idx[:, None]),
        ("pixley_xyx", r[idx[:, None], idx[None, :], idx[:, None]],
         idx[:, None]),
    )
    for name, got, want in checks:
        bad = np.argwhere(got != np.broadcast_to(want, got.shape))
        results.append(CheckResult(
            name, bad.size == 0,
            tuple(int(v) for v in bad[0]) if bad.size else None, n ** 3))
    return CheckReport(describe(algebra), "exhaustive", tuple(results))


def _pixley(algebra: Algebra, x, y, z):
    p = meet(algebra,
             arrow(algebra, arrow(algebra, x, y), z),
             arrow(algebra, arrow(algebra, z, y), x))
    t = meet(algebra,
             arrow(algebra, y, meet(algebra, x, z)),
             join(algebra, x, z))
    return meet(algebra, p, t)


def verify_pixley(algebra: Algebra, mode: str = "auto", count: int = 2000,
                  bound: int = 8, seed: int = 0) -> CheckReport:
    """A Pixley term from arrow, meet and join: r(x, x, z) = z,
    r(x, y, y) = x and r(x, y, x) = x."""
    if mode == "auto":
        mode = "exhaustive" if carrier_size(algebra) is not None else "sample"
    if mode == "exhaustive":
        fin = algebra if isinstance(algebra, FiniteAlgebra) else to_finite(algebra)
        return _pixley_finite(fin)
    rng = random.Random(f"{seed}:pixley")
    results = []
    specs = (
        ("pixley_xxz", lambda x, y, z: (x, x, z), lambda x, y, z: z),
        ("pixley_xyy", lambda x, y, z: (x, y, y), lambda x, y, z: x),
        ("pixley_xyx", lambda x, y, z: (x, y, x), lambda x, y, z: x),
    )
    samples = list(sample_tuples(algebra, 3, count, rng, bound=bound))
    for name, args, want in specs:
        witness = None
        for x, y, z in samples:
            a, b, c = args(x, y, z)
            if _pixley(algebra, a, b, c) != want(x, y, z):
                witness = (x, y, z)
                break
        results.append(CheckResult(name, witness is None, witness,
                                   len(samples)))
    return CheckReport(describe(algebra), "sample", tuple(results))


@dataclass(frozen=True)
class HarnessReport:
    squares: int
    negatives: int
    violations: tuple
    injective_mismatches: int
    surjective_mismatches: int


def kernel_restriction_harness(max_size: int = 6, seed: int = 0) -> HarnessReport:
    """For every square of finite quotients with a compatible horizontal
    map, compare the comparison morphism into the pullback against the
    restriction between the vertical kernels: injectivity, surjectivity
    and bijectivity must transfer both ways.  Squares where the
    restriction fails a property are counted as negatives and must still
    satisfy the equivalence."""
    algebras = [to_finite(a) for a in chain_product_catalog(max_size)]
    squares = negatives = 0
    inj_bad = sur_bad = 0
    violations = []
    for A in algebras:
        ideals_a = all_ideals(A)
        for B in algebras:
            homs = enumerate_homs(A, B)
            if not homs:
                continue
            ideals_b = all_ideals(B)
            for I in ideals_a:
                f = quotient(A, I).projection
                kerf = ideal_elements(A, I)
                for J in ideals_b:
                    g = quotient(B, J).projection
                    kerg = set(ideal_elements(B, J))
                    for h in homs:
                        if not ideal_leq(A, I, compose(h, g).kernel()):
                            continue
                        k = factor_through_quotient(f, compose(h, g))
                        squares += 1
                        image = [h(x) for x in kerf]
                        r_inj = len(set(image)) == len(kerf)
                        r_sur = kerg <= set(image)
                        pb = pullback(g, k)
                        psi = mediator_to_pullback(pb, h, f)
                        c_inj = psi.is_injective()
                        c_sur = psi.is_surjective()
                        if not (r_inj and r_sur):
                            negatives += 1
                        if c_inj != r_inj:
                            inj_bad += 1
                            violations.append(
                                (describe(A), describe(B), I, J, "injective"))
                        if c_sur != r_sur:
                            sur_bad += 1
                            violations.append(
                                (describe(A), describe(B), I, J, "surjective"))
    return HarnessReport(squares, negatives, tuple(violations),
                         inj_bad, sur_bad)
