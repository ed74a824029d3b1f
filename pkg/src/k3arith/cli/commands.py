"""
Handlers of the subcommands. Each takes the parsed arguments and returns
a report, a plain dictionary or a `LinkedDeepDict`.
"""
import logging
from fractions import Fraction

import numpy as np
from linkeddeepdict import LinkedDeepDict

from ..clifford import (
    CliffordAlgebra,
    CliffordElement,
    EndOperator,
    filtration_compatibility_check,
    find_isotropic,
    gspin_check,
    isotropic_filtration,
    projector_pi,
    structural_filtration_dimension,
    trace_pair,
)
from ..constants import DENSE_RANK_LIMIT
from ..exceptions import PreconditionError
from ..fcrystal import (
    FCrystal,
    check_k3_crystal,
    hodge_polygon,
    k3_model_crystal,
    katz_check,
    newton_polygon,
    slope_decompose,
)
from ..formalgroup import (
    FormalGroupLaw,
    additive_law,
    height,
    honda_law,
    lift_with_action,
    multiplicative_law,
    p_series,
)
from ..lattice import (
    QuadLattice,
    SublatticeEmbedding,
    discriminant,
    discriminant_group,
    embed_into_selfdual,
    is_self_dual_at,
    orthogonal_complement,
    signature,
    standard_lattice,
)
from ..padic import coefficient_ring
from .io import read_input

__all__ = ["COMMANDS"]

logger = logging.getLogger(__name__)


def _input(args, required: bool = True):
    return read_input(args.input, args.inline, required=required)


def _params(args, *names) -> dict:
    return {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}


def _lattice(args) -> QuadLattice:
    if getattr(args, "name", None):
        return standard_lattice(args.name, **_params(args, "d", "p"))
    data = _input(args)
    if isinstance(data, dict) and "lattice" in data:
        data = data["lattice"]
    try:
        return QuadLattice.from_dict(data)
    except (KeyError, TypeError) as e:
        raise PreconditionError("Expected a lattice {{'rank', 'gram'}}: {}".format(e))


def _crystal(args) -> FCrystal:
    data = _input(args)
    try:
        return FCrystal.from_dict(data)
    except (KeyError, TypeError) as e:
        raise PreconditionError("Expected a crystal {{'p', 'precision', 'frobenius'}}: {}".format(e))


def _law(args) -> FormalGroupLaw:
    if getattr(args, "kind", None):
        return fgl_build(args, as_law=True)
    data = _input(args)
    try:
        return FormalGroupLaw.from_dict(data, degree=args.verify_degree)
    except (KeyError, TypeError) as e:
        raise PreconditionError("Expected a formal group law {{'p', 'precision', 'trunc', 'F'}}: {}".format(e))


# lattice


def lattice_build(args) -> dict:
    A = _lattice(args)
    out = A.to_dict()
    out["name"] = A.name
    return out


def lattice_disc(args) -> dict:
    A = _lattice(args)
    return {"discriminant": discriminant(A), "group": discriminant_group(A)}


def lattice_signature(args) -> dict:
    return {"signature": list(signature(_lattice(args)))}


def lattice_embed(args) -> LinkedDeepDict:
    if args.d is None or args.p is None:
        raise PreconditionError("lattice embed needs --d and --p.")
    L, Lt, E = embed_into_selfdual(args.d, args.p)
    return LinkedDeepDict(
        {
            "d": args.d,
            "p": args.p,
            "det": discriminant(Lt),
            "signature": list(signature(Lt)),
            "even": Lt.is_even,
            "self_dual_at_p": is_self_dual_at(Lt, args.p),
            "primitive": E.is_primitive(),
            "elementary_divisors": E.elementary_divisors(),
            "embedding": E.to_dict(),
        }
    )


def lattice_complement(args) -> dict:
    if args.d is not None and args.p is not None:
        E = embed_into_selfdual(args.d, args.p)[2]
    else:
        data = _input(args)
        if "embedding" in data:
            data = data["embedding"]
        E = SublatticeEmbedding.from_dict(data)
    C = orthogonal_complement(E)
    return {
        "rank": C.sub.rank,
        "gram": C.sub.to_dict()["gram"],
        "signature": list(signature(C.sub)),
        "discriminant": discriminant(C.sub) if C.sub.rank else 1,
        "embedding": C.to_dict(),
    }


# clifford


def _vector(text: str):
    return [Fraction(x) for x in text.split(",")]


def clifford_pi_check(args) -> LinkedDeepDict:
    """
    Checks π on random integral operators: idempotence, image in i(M),
    kernel orthogonal to i(M), π(i(v)) = i(v) and the agreement of the
    two formulas.
    """
    alg = CliffordAlgebra(_lattice(args))
    pi = projector_pi(alg)
    n, N = alg.rank, alg.dim
    rng = np.random.default_rng(args.seed)
    ops = [alg.lmul_operator([int(i == k) for i in range(n)]) for k in range(n)]
    failures = []
    for trial in range(args.trials):
        g = EndOperator(rng.integers(-3, 4, size=(N, N)).astype(np.int64))
        pg = pi(g)
        v = [int(x) for x in rng.integers(-3, 4, size=n)]
        iv = alg.lmul_operator(v)
        checks = {
            "idempotent": pi(pg) == pg,
            "kernel": all(trace_pair(g - pg, op) == 0 for op in ops),
            "fixes_image": pi(iv) == iv,
            "hyperbolic": pi.hyperbolic(g) == pg,
        }
        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            failures.append({"seed": args.seed, "trial": trial, "failed": bad})
    return LinkedDeepDict(
        {"rank": n, "trials": args.trials, "passed": not failures, "failures": failures}
    )


def clifford_filtration(args) -> LinkedDeepDict:
    A = _lattice(args)
    e = _vector(args.vector) if args.vector else find_isotropic(A.gram)
    structural = structural_filtration_dimension(A, e)
    if A.rank > DENSE_RANK_LIMIT:
        # no dense operators: only the monomial count
        return LinkedDeepDict(
            {
                "rank": A.rank,
                "vector": [str(x) for x in e],
                "structural_dimension": structural,
                "passed": structural == 2 ** (A.rank - 1),
            }
        )
    alg = CliffordAlgebra(A)
    report = filtration_compatibility_check(alg, e)
    _, FilH = isotropic_filtration(alg, e)
    report["image_dimension"] = FilH.dimension(0)
    report["structural_dimension"] = structural
    report["passed"] = report["passed"] and structural == FilH.dimension(0)
    return report


def clifford_gspin(args) -> LinkedDeepDict:
    data = _input(args)
    try:
        alg = CliffordAlgebra(QuadLattice.from_dict(data["lattice"]))
        g = CliffordElement.from_dict(alg, data["element"])
    except (KeyError, TypeError) as e:
        raise PreconditionError("Expected {{'lattice', 'element'}}: {}".format(e))
    return gspin_check(alg, g)


# crystal


def crystal_newton(args) -> dict:
    return newton_polygon(_crystal(args)).to_dict()


def crystal_hodge(args) -> dict:
    return hodge_polygon(_crystal(args)).to_dict()


def crystal_katz(args) -> LinkedDeepDict:
    return katz_check(_crystal(args))


def crystal_k3_model(args) -> dict:
    C = k3_model_crystal(args.h, args.p or 2, args.precision, args.hodge_compatible)
    return C.to_dict()


def crystal_k3_check(args) -> LinkedDeepDict:
    return check_k3_crystal(_crystal(args))


def crystal_decompose(args) -> dict:
    D = slope_decompose(_crystal(args), Fraction(args.s))
    out = D.to_dict()
    out["sub_newton"] = D.sub.newton_polygon().to_dict()
    out["quotient_newton"] = D.quotient.newton_polygon().to_dict()
    return out


# formal groups


def fgl_build(args, as_law: bool = False):
    kind = args.kind or "honda"
    if args.p is None:
        raise PreconditionError("fgl build needs --p.")
    ring = coefficient_ring(args.p, args.a, args.precision)
    if kind == "honda":
        if args.h is None:
            raise PreconditionError("A Honda law needs --h.")
        F = honda_law(args.h, ring, args.trunc, degree=args.verify_degree)
    elif kind == "multiplicative":
        F = multiplicative_law(ring, args.trunc)
    elif kind == "additive":
        F = additive_law(ring, args.trunc)
    else:
        raise PreconditionError("Unknown law '{}'.".format(kind))
    return F if as_law else F.to_dict()


def fgl_height(args) -> dict:
    F = _law(args)
    return {"p": F.p, "trunc": F.trunc, "height": height(F)}


def fgl_p_series(args) -> dict:
    F = _law(args)
    return {"p": F.p, "precision": F.prec, "trunc": F.trunc, "p_series": p_series(F).to_dict()}


def fgl_lift_check(args) -> LinkedDeepDict:
    if args.h is None or args.p is None:
        raise PreconditionError("fgl lift-check needs --h and --p.")
    rng = np.random.default_rng(args.seed)
    result = lift_with_action(
        args.h,
        args.p,
        args.precision,
        args.trunc,
        count=args.trials,
        rng=rng,
        degree=args.verify_degree,
    )
    return result.report


COMMANDS = {
    "lattice": {
        "build": lattice_build,
        "disc": lattice_disc,
        "signature": lattice_signature,
        "embed": lattice_embed,
        "complement": lattice_complement,
    },
    "clifford": {
        "pi-check": clifford_pi_check,
        "filtration": clifford_filtration,
        "gspin": clifford_gspin,
    },
    "crystal": {
        "newton": crystal_newton,
        "hodge": crystal_hodge,
        "katz": crystal_katz,
        "k3-model": crystal_k3_model,
        "k3-check": crystal_k3_check,
        "decompose": crystal_decompose,
    },
    "fgl": {
        "build": fgl_build,
        "height": fgl_height,
        "p-series": fgl_p_series,
        "lift-check": fgl_lift_check,
    },
}
