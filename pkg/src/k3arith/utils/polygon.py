from fractions import Fraction
from typing import Iterable, List, Tuple

__all__ = ["lower_hull", "hull_ordinate"]

Point = Tuple[int, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Iterable[Point]) -> List[Point]:
    """
    Returns the vertices of the lower convex hull of a finite set of
    points, from left to right. Collinear points are dropped.

    Examples
    --------
    >>> from k3arith.utils.polygon import lower_hull
    >>> lower_hull([(0, 0), (1, 2), (2, 1)])
    [(0, 0), (2, 1)]
    """
    pts = sorted({(int(x), Fraction(y)) for x, y in points})
    hull: List[Point] = []
    for p in pts:
        if hull and hull[-1][0] == p[0]:
            # same abscissa, the lower point came first
            continue
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def hull_ordinate(vertices: List[Point], x) -> Fraction:
    """
    Evaluates the piecewise linear function through the vertices.
    """
    if not vertices or x < vertices[0][0] or x > vertices[-1][0]:
        raise ValueError("{} is outside of the polygon.".format(x))
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * Fraction(x - x0) / (x1 - x0)
    return vertices[0][1]
