from typing import Callable, Dict

import numpy as np
from sympy import isprime

from ..exceptions import PreconditionError
from .lattice import QuadLattice

__all__ = ["standard_lattice", "lattice_names", "E8_GRAM", "U_GRAM"]


U_GRAM = [[0, 1], [1, 0]]

# edges of the E8 Dynkin diagram in Bourbaki labelling, 0-based
_E8_EDGES = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]


def _e8_gram() -> list:
    G = [[0] * 8 for _ in range(8)]
    for i in range(8):
        G[i][i] = 2
    for i, j in _E8_EDGES:
        G[i][j] = G[j][i] = -1
    return G


E8_GRAM = _e8_gram()


def _block_diagonal(*blocks) -> list:
    n = sum(len(b) for b in blocks)
    G = np.zeros((n, n), dtype=object)
    i = 0
    for b in blocks:
        k = len(b)
        if k:
            G[i : i + k, i : i + k] = np.array(b, dtype=object)
        i += k
    return G.tolist()


def _positive(name: str, value) -> int:
    if value is None or int(value) != value or int(value) < 1:
        raise PreconditionError(
            "Parameter '{}' must be a positive integer, got {}.".format(name, value)
        )
    return int(value)


def _prime(value) -> int:
    value = _positive("p", value)
    if not isprime(value):
        raise PreconditionError("{} is not a prime.".format(value))
    return value


def _span2d(d=None, **_) -> QuadLattice:
    d = _positive("d", d)
    return QuadLattice([[2 * d]], name="<{}>".format(2 * d))


def _lprime(d=None, p=None, **_) -> QuadLattice:
    d, p = _positive("d", d), _prime(p)
    return QuadLattice([[2 * d, 1], [1, 2 * p]], name="L'")


def _L(d=None, **_) -> QuadLattice:
    d = _positive("d", d)
    G = _block_diagonal(E8_GRAM, E8_GRAM, U_GRAM, U_GRAM, [[2 * d]])
    return QuadLattice(G, name="L")


def _Ltilde(d=None, p=None, **_) -> QuadLattice:
    G = _block_diagonal(E8_GRAM, E8_GRAM, U_GRAM, U_GRAM, _lprime(d, p).gram.tolist())
    return QuadLattice(G, name="Ltilde")


_builders: Dict[str, Callable[..., QuadLattice]] = {
    "U": lambda **_: QuadLattice(U_GRAM, name="U"),
    "E8": lambda **_: QuadLattice(E8_GRAM, name="E8"),
    "K3": lambda **_: QuadLattice(
        _block_diagonal(E8_GRAM, E8_GRAM, U_GRAM, U_GRAM, U_GRAM), name="K3"
    ),
    "span2d": _span2d,
    "L": _L,
    "Lprime": _lprime,
    "Ltilde": _Ltilde,
    "zero": lambda **_: QuadLattice([], name="zero"),
}


def lattice_names() -> list:
    return list(_builders)


def standard_lattice(name: str, **params) -> QuadLattice:
    """
    Returns one of the named lattices.

    Parameters
    ----------
    name : str
        One of

        - 'U' : the hyperbolic plane [[0, 1], [1, 0]]
        - 'E8' : the positive definite E8 root lattice
        - 'K3' : E8 + E8 + U + U + U, of signature (19, 3)
        - 'span2d' : the rank one lattice <2d>, needs `d`
        - 'L' : E8 + E8 + U + U + <2d>, needs `d`
        - 'Lprime' : [[2d, 1], [1, 2p]], needs `d` and `p`
        - 'Ltilde' : E8 + E8 + U + U + Lprime, needs `d` and `p`
        - 'zero' : the lattice of rank 0

    **params : dict
        The parameters `d` and `p` where needed.

    Examples
    --------
    >>> from k3arith.lattice import standard_lattice
    >>> standard_lattice("span2d", d=7).gram.tolist()
    [[14]]
    """
    try:
        builder = _builders[name]
    except KeyError:
        raise PreconditionError(
            "Unknown lattice '{}', expected one of {}.".format(name, lattice_names())
        )
    return builder(**params)
