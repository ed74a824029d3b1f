"""
The invariant suite run by `k3arith selftest`.

Every check is a function of a random generator and a `Scope` returning
None on success and a description of the failure otherwise.
Deterministic checks run once, randomized ones once per trial with the
generator seeded by (seed, trial), so that a failing trial is reproduced
by its pair alone.

The default scope covers reduced parameter ranges; `FULL_SCOPE`, behind
`k3arith selftest --full`, covers the whole acceptance ranges.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, NamedTuple, Tuple

import numpy as np
from linkeddeepdict import LinkedDeepDict

from ..clifford import (
    CliffordAlgebra,
    EndOperator,
    filtration_compatibility_check,
    gspin_membership,
    isotropic_filtration,
    projector_pi,
    structural_filtration_dimension,
    trace_pair,
)
from ..fcrystal import (
    FCrystal,
    K3_HODGE_POLYGON,
    check_k3_crystal,
    k3_model_crystal,
    k3_newton_polygon,
    katz_check,
    naive_k3_crystal,
    random_unimodular,
    slope_decompose,
)
from ..formalgroup import (
    FglHom,
    height,
    honda_law,
    lift_with_action,
    multiplicative_law,
    p_series,
    reduction_commutes,
)
from ..lattice import QuadLattice, discriminant, embed_into_selfdual, signature, standard_lattice, direct_sum
from ..padic import TruncSeries, padic_ring

__all__ = ["CHECKS", "Scope", "QUICK_SCOPE", "FULL_SCOPE", "selftest", "projector_failures"]

logger = logging.getLogger(__name__)


class Scope(NamedTuple):
    """
    Parameter ranges of the checks.
    """

    degrees: range  # d of the lattice embeddings
    primes: Tuple[int, ...]  # p of the lattice embeddings
    isometry_ranks: Tuple[int, ...]
    pairs: int  # per trial and rank
    projector_ranks: Tuple[int, ...]
    filtration_ranks: Tuple[int, ...]
    compatibility_ranks: Tuple[int, ...]
    heights: range  # h of the K3 model crystals
    crystal_primes: Tuple[int, ...]
    katz_rank: int
    decomposition_heights: Tuple[int, ...]
    conjugations: int
    honda: Tuple[Tuple[int, int], ...]  # (p, h)
    verify_laws: bool
    lift_elements: int


QUICK_SCOPE = Scope(
    degrees=range(1, 6),
    primes=(2, 3, 5),
    isometry_ranks=(4,),
    pairs=1,
    projector_ranks=(4,),
    filtration_ranks=(4,),
    compatibility_ranks=(4,),
    heights=range(1, 5),
    crystal_primes=(2, 3),
    katz_rank=4,
    decomposition_heights=(2,),
    conjugations=1,
    honda=((2, 1), (2, 2), (3, 1), (3, 2), (5, 1)),
    verify_laws=True,
    lift_elements=2,
)

FULL_SCOPE = Scope(
    degrees=range(1, 26),
    primes=(2, 3, 5, 7, 11),
    isometry_ranks=(2, 4, 6, 8),
    pairs=20,
    projector_ranks=(2, 4, 6),
    filtration_ranks=(2, 4, 6, 8),
    compatibility_ranks=(4, 6),
    heights=range(1, 11),
    crystal_primes=(2, 3, 5),
    katz_rank=6,
    decomposition_heights=(2, 3, 5),
    conjugations=20,
    honda=tuple((2, h) for h in range(1, 6)) + tuple((3, h) for h in range(1, 4)) + ((5, 1), (5, 2)),
    # axioms of the larger laws are not expanded
    verify_laws=False,
    lift_elements=10,
)

Check = Callable[[np.random.Generator, Scope], object]


def projector_failures(alg: CliffordAlgebra, pi, rng) -> list:
    """
    Returns the names of the properties of π that fail on a random
    integral operator and a random lattice vector.
    """
    n, N = alg.rank, alg.dim
    g = EndOperator(rng.integers(-3, 4, size=(N, N)).astype(np.int64))
    pg = pi(g)
    iv = alg.lmul_operator([int(x) for x in rng.integers(-3, 4, size=n)])
    ops = [alg.lmul_operator([int(i == k) for i in range(n)]) for k in range(n)]
    checks = {
        "idempotent": pi(pg) == pg,
        "kernel": all(trace_pair(g - pg, op) == 0 for op in ops),
        "fixes_image": pi(iv) == iv,
        "hyperbolic": pi.hyperbolic(g) == pg,
    }
    return [k for k, ok in checks.items() if not ok]


def _hyperbolic(n: int) -> QuadLattice:
    U = standard_lattice("U")
    return direct_sum(*[U] * (n // 2))


def _first(n: int) -> list:
    return [int(i == 0) for i in range(n)]


def check_embedding(rng, scope):
    for d in scope.degrees:
        for p in scope.primes:
            _, Lt, E = embed_into_selfdual(d, p)
            ok = (
                discriminant(Lt) == 4 * d * p - 1
                and signature(Lt) == (20, 2)
                and Lt.is_even
                and E.is_primitive()
            )
            if not ok:
                return {"d": d, "p": p}
    return None


def check_trace_isometry(rng, scope):
    for n in scope.isometry_ranks:
        alg = CliffordAlgebra(_hyperbolic(n))
        A = alg.lattice
        for _ in range(scope.pairs):
            v = [int(x) for x in rng.integers(-4, 5, size=n)]
            w = [int(x) for x in rng.integers(-4, 5, size=n)]
            lhs = trace_pair(alg.lmul_operator(v), alg.lmul_operator(w))
            if lhs != A.inner(v, w):
                return {"rank": n, "v": v, "w": w, "pairing": str(lhs)}
    return None


def check_projector(rng, scope):
    for n in scope.projector_ranks:
        alg = CliffordAlgebra(_hyperbolic(n))
        failed = projector_failures(alg, projector_pi(alg), rng)
        if failed:
            return {"rank": n, "failed": failed}
    return None


def check_filtration(rng, scope):
    for n in scope.filtration_ranks:
        alg = CliffordAlgebra(_hyperbolic(n))
        dim = isotropic_filtration(alg, _first(n))[1].dimension(0)
        if dim != 2 ** (n - 1):
            return {"rank": n, "dimension": dim}
    for n in scope.compatibility_ranks:
        alg = CliffordAlgebra(_hyperbolic(n))
        report = filtration_compatibility_check(alg, _first(n))
        if not report["passed"]:
            return {"rank": n, "clauses": report["clauses"]}
    K3 = standard_lattice("K3")
    e = [int(i == 16) for i in range(K3.rank)]
    dim = structural_filtration_dimension(K3, e)
    if dim != 2 ** (K3.rank - 1):
        return {"rank": K3.rank, "dimension": dim}
    return None


def check_k3_slopes(rng, scope):
    for h in scope.heights:
        for p in scope.crystal_primes:
            C = k3_model_crystal(h, p)
            if C.newton_polygon() != k3_newton_polygon(h) or C.hodge_polygon() != K3_HODGE_POLYGON:
                return {"h": h, "p": p}
    return None


def check_katz(rng, scope):
    p, r = 3, scope.katz_rank
    F = [[int(x) for x in row] for row in rng.integers(0, p**6, size=(r, r))]
    report = katz_check(FCrystal(F, p))
    if not report["passed"]:
        return {"frobenius": F}
    return None


def check_decomposition(rng, scope):
    for h in scope.decomposition_heights:
        C = k3_model_crystal(h, 2)
        expected = {Fraction(h - 1, h): h}
        for _ in range(scope.conjugations):
            g = random_unimodular(C.rank, rng, C.ring)
            D = slope_decompose(C.base_change(g), 1)
            newton = D.sub.newton_polygon()
            if D.sub.rank != h or newton != expected:
                return {"h": h, "rank": D.sub.rank, "newton": str(newton)}
            if newton | D.quotient.newton_polygon() != C.newton_polygon():
                return {"h": h, "quotient": str(D.quotient.newton_polygon())}
    return None


def check_heights(rng, scope):
    for p, h in scope.honda:
        F = honda_law(h, p=p, N=p ** (h + 1) + 1, prec=4, verify=scope.verify_laws)
        found = height(F)
        if found != h:
            return {"p": p, "h": h, "height": str(found)}
    for p in (2, 3):
        F = multiplicative_law(p=p, N=p + 2, prec=6)
        R = F.ring
        x = TruncSeries.gen(R, F.trunc)
        expected = (x + 1) ** p - 1
        if p_series(F) != expected or height(F) != 1:
            return {"p": p, "law": "multiplicative"}
    return None


def check_lift(rng, scope):
    result = lift_with_action(2, 2, 6, 17, count=scope.lift_elements, rng=rng)
    if not result.report["passed"]:
        return {"report": result.report}
    return None


def check_negative_controls(rng, scope):
    for h in (2, 3):
        if check_k3_crystal(naive_k3_crystal(h, 2))["verdict"] == "height":
            return {"naive": h}
    alg = CliffordAlgebra(_hyperbolic(4))
    if gspin_membership(alg, alg.gens()[0]):
        return {"gspin": "odd element accepted"}
    F = multiplicative_law(padic_ring(3, 6), 8)
    corrupted = FglHom(F, F, TruncSeries(F.ring, {1: 2, 2: 2}, trunc=F.trunc))
    if reduction_commutes(F, corrupted):
        return {"endomorphism": "corrupted series accepted"}
    return None


# name: (check, randomized)
CHECKS: Dict[str, Tuple[Check, bool]] = {
    "lattice-embedding": (check_embedding, False),
    "trace-isometry": (check_trace_isometry, True),
    "projector": (check_projector, True),
    "filtration": (check_filtration, False),
    "k3-slopes": (check_k3_slopes, False),
    "katz": (check_katz, True),
    "decomposition": (check_decomposition, True),
    "heights": (check_heights, False),
    "lift-with-action": (check_lift, True),
    "negative-controls": (check_negative_controls, False),
}


def _run(name: str, check: Check, scope: Scope, seed: int, trial: int):
    rng = np.random.default_rng([seed, trial])
    try:
        return trial, check(rng, scope)
    except Exception as e:
        logger.debug("check %s failed at trial %d", name, trial, exc_info=True)
        return trial, "{}: {}".format(type(e).__name__, e)


def selftest(
    seed: int = 0, trials: int = 5, workers: int = 1, only=None, full: bool = False
) -> LinkedDeepDict:
    """
    Runs the checks and returns a report with a `passed` flag and the
    (check, seed, trial) reproducers of the failures.

    Trials of a randomized check are independent and may run on
    `workers` threads; the outcome is collected in trial order. With
    `full` the checks cover `FULL_SCOPE` instead of `QUICK_SCOPE`.
    """
    scope = FULL_SCOPE if full else QUICK_SCOPE
    report = LinkedDeepDict({"seed": seed, "trials": trials, "full": full, "passed": True, "checks": {}})
    reproducers = []
    for name, (check, randomized) in CHECKS.items():
        if only and name not in only:
            continue
        runs = range(trials if randomized else 1)
        if workers > 1 and randomized:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(lambda t: _run(name, check, scope, seed, t), runs))
        else:
            outcomes = [_run(name, check, scope, seed, t) for t in runs]
        outcomes.sort(key=lambda o: o[0])
        failures = [
            {"seed": seed, "trial": t, "detail": detail} for t, detail in outcomes if detail is not None
        ]
        reproducers.extend({"check": name, "seed": f["seed"], "trial": f["trial"]} for f in failures)
        report["checks"][name] = {"passed": not failures, "runs": len(outcomes), "failures": failures}
        logger.debug("selftest %s: %d runs, %d failures", name, len(outcomes), len(failures))
    report["passed"] = not reproducers
    report["reproducers"] = reproducers
    return report
