from fractions import Fraction


__all__ = ["RationalField", "QQ"]


class RationalField:
    """
    The field of rational numbers with the raw-element interface of the
    truncated rings. Raw elements are `fractions.Fraction` instances.
    """

    degree = 1
    prec = None

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __call__(self, value=0) -> Fraction:
        return self.convert(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def convert(self, value) -> Fraction:
        return Fraction(value)

    def element(self, raw: Fraction) -> Fraction:
        return raw

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def scalar(self, c, x):
        return c * x

    def is_zero(self, x) -> bool:
        return x == 0

    def is_unit(self, x) -> bool:
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise ZeroDivisionError("Division by zero.")
        return 1 / Fraction(x)

    def power(self, x, n: int):
        return x**n

    def frobenius(self, x, k: int = 1):
        return x

    def to_json(self, x) -> str:
        return str(x)

    def from_json(self, obj) -> Fraction:
        return Fraction(obj)


QQ = RationalField()
