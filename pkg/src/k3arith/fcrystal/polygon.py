from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from ..exceptions import PreconditionError
from ..utils.polygon import hull_ordinate

__all__ = ["Polygon"]

Slopes = Union[Dict[Fraction, int], Iterable[Tuple[Fraction, int]]]


class Polygon:
    """
    A Newton or Hodge polygon, stored as a multiset of slopes.

    The graph starts at the origin and has abscissa `count` and ordinate
    `slope sum`; slopes are sorted in ascending order so the graph is
    convex and its vertices are where the slope changes.

    Parameters
    ----------
    slopes : dict or Iterable
        Slopes with their multiplicities, either as a mapping or as
        pairs. Repeated slopes are merged.

    Examples
    --------
    >>> from fractions import Fraction
    >>> from k3arith.fcrystal import Polygon
    >>> P = Polygon({Fraction(1, 2): 2, 1: 1})
    >>> P.vertices
    [(0, Fraction(0, 1)), (2, Fraction(1, 1)), (3, Fraction(2, 1))]
    """

    __slots__ = ("_slopes",)

    def __init__(self, slopes: Slopes = None):
        items = slopes.items() if isinstance(slopes, dict) else (slopes or [])
        merged: Dict[Fraction, int] = {}
        for s, mult in items:
            mult = int(mult)
            if mult < 0:
                raise PreconditionError("Multiplicities must be nonnegative.")
            if mult:
                s = Fraction(s)
                merged[s] = merged.get(s, 0) + mult
        self._slopes = tuple(sorted(merged.items()))

    @classmethod
    def from_vertices(cls, vertices: List[Tuple[int, Fraction]], scale=1) -> "Polygon":
        """
        Builds a polygon from the vertices of a convex graph, dividing
        every slope by `scale`.
        """
        slopes = []
        for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
            dx = x1 - x0
            slopes.append((Fraction(y1 - y0) / dx / scale, dx))
        return cls(slopes)

    @classmethod
    def from_valuations(cls, values: Iterable[int]) -> "Polygon":
        """Builds a polygon with one slope per value."""
        return cls([(v, 1) for v in values])

    def __iter__(self):
        return iter(self._slopes)

    def __len__(self) -> int:
        return len(self._slopes)

    def as_dict(self) -> Dict[Fraction, int]:
        return dict(self._slopes)

    @property
    def slopes(self) -> List[Fraction]:
        """The slopes with repetition, in ascending order."""
        return [s for s, mult in self._slopes for _ in range(mult)]

    @property
    def rank(self) -> int:
        return sum(mult for _, mult in self._slopes)

    @property
    def total(self) -> Fraction:
        """The ordinate of the endpoint."""
        return sum((s * mult for s, mult in self._slopes), Fraction(0))

    @property
    def vertices(self) -> List[Tuple[int, Fraction]]:
        x, y = 0, Fraction(0)
        out = [(x, y)]
        for s, mult in self._slopes:
            x += mult
            y += s * mult
            out.append((x, y))
        return out

    @property
    def breakpoints(self) -> List[int]:
        """The abscissae of the interior vertices."""
        return [x for x, _ in self.vertices[1:-1]]

    def ordinate(self, x) -> Fraction:
        return hull_ordinate(self.vertices, x)

    def count_below(self, s) -> int:
        """The number of slopes strictly less than s."""
        s = Fraction(s)
        return sum(mult for t, mult in self._slopes if t < s)

    def shift(self, i) -> "Polygon":
        """Returns the polygon with every slope lowered by i."""
        return Polygon([(s - i, mult) for s, mult in self._slopes])

    def union(self, other: "Polygon") -> "Polygon":
        """Returns the polygon of the union of the slope multisets."""
        return Polygon(list(self._slopes) + list(other._slopes))

    __or__ = union

    def first_violation(self, other: "Polygon") -> Union[int, None]:
        """
        Returns the least abscissa where this polygon lies strictly below
        the other one, or None. Both graphs break at integers only, so it
        suffices to compare there.
        """
        if self.rank != other.rank:
            raise PreconditionError("Polygons of different lengths.")
        for x in range(self.rank + 1):
            if self.ordinate(x) < other.ordinate(x):
                return x
        return None

    def lies_above(self, other: "Polygon") -> bool:
        return self.first_violation(other) is None

    def __eq__(self, other) -> bool:
        if isinstance(other, dict):
            other = Polygon(other)
        if not isinstance(other, Polygon):
            return NotImplemented
        return self._slopes == other._slopes

    def __hash__(self) -> int:
        return hash(self._slopes)

    def __repr__(self) -> str:
        body = ", ".join("{}: {}".format(s, mult) for s, mult in self._slopes)
        return "Polygon({" + body + "})"

    def to_dict(self) -> dict:
        return {
            "slopes": [
                {"num": s.numerator, "den": s.denominator, "mult": mult}
                for s, mult in self._slopes
            ],
            "vertices": [[x, str(y)] for x, y in self.vertices],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Polygon":
        return cls([(Fraction(e["num"], e["den"]), e["mult"]) for e in d["slopes"]])
