"""Rationals and towers of simple algebraic extensions.

Level 0 of every tower is Q, represented by :class:`fractions.Fraction`.  A
:class:`NumberField` adjoins one root of a monic polynomial over the previous
level; its elements are :class:`FieldElem` coefficient vectors in the power
basis ``1, a, ..., a^(n-1)``.

Rank computations never need the quotient ring to be a field: if a "minimal"
polynomial is merely squarefree, ``base[a]/(m)`` is a product of fields, and
the rank of a system of conditions over that ring, expanded in the power basis,
still equals the rank over C of the family of all conjugate systems.  This is
why a level can be accepted with an ``unverified`` irreducibility flag.  Only
inversion can fail on such a ring (:class:`~adedefect.errors.NotInvertible`).
"""

from fractions import Fraction
from numbers import Rational

from . import upoly
from .errors import AlgebraError, NotInvertible, TowerMismatch

MAX_TOWER_HEIGHT = 3
MAX_VERIFIED_DEGREE = 4


def to_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, FieldElem):
        if x.field is None:
            raise TowerMismatch("malformed field element")
        if x.is_in_base():
            return to_rational(x.c[0])
        raise TowerMismatch(f"{x} is not rational")
    raise TypeError(f"not an exact scalar: {x!r}")


def field_of(x):
    """The tower level of a scalar (``None`` for Q)."""
    return x.field if isinstance(x, FieldElem) else None


def height(field):
    return 0 if field is None else field.height


def absolute_degree(field):
    return 1 if field is None else field.absolute_degree


def contains(big, small):
    """True if ``small`` is ``big`` or one of its subfields."""
    if small is None:
        return True
    while big is not None:
        if big == small:
            return True
        big = big.base
    return False


def common_field(*fields):
    """The largest of a chain of tower levels; raise if they are not nested."""
    best = None
    for f in fields:
        if contains(f, best):
            best = f
        elif not contains(best, f):
            raise TowerMismatch(f"incompatible tower levels {best!r} and {f!r}")
    return best


def lift(x, field):
    if field is None:
        return to_rational(x)
    return field.coerce(x)


class NumberField:
    """``base(a)`` with ``a`` a root of the monic polynomial ``minpoly``."""

    def __init__(self, name, minpoly, base=None, verify=True):
        coeffs = upoly.trim([lift(c, base) for c in minpoly])
        if len(coeffs) < 3:
            raise AlgebraError("minimal polynomial must have degree >= 2",
                               "FieldTower")
        lead = coeffs[-1]
        self.name = name
        self.base = base
        self.minpoly = tuple(c / lead for c in coeffs)
        self.degree = len(self.minpoly) - 1
        self.height = height(base) + 1
        self.absolute_degree = self.degree * absolute_degree(base)
        if self.height > MAX_TOWER_HEIGHT:
            from .errors import TowerHeightExceeded
            raise TowerHeightExceeded(
                f"tower height {self.height} exceeds {MAX_TOWER_HEIGHT}",
                "FieldTower")
        self._key = (name, tuple(str(c) for c in self.minpoly),
                     None if base is None else base._key)
        self.irreducible = "unverified"
        if verify and self.degree <= MAX_VERIFIED_DEGREE:
            from .roots import is_irreducible
            if not is_irreducible(list(self.minpoly), base):
                raise AlgebraError(
                    f"{self.minpoly_str()} is reducible over its base",
                    "FieldTower")
            self.irreducible = "verified"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"NumberField({self.name}: {self.minpoly_str()})"

    def __getstate__(self):
        return self.__dict__

    def minpoly_str(self):
        return poly_to_str(list(self.minpoly), self.name)

    def tower(self):
        """Levels from the first extension up to this one."""
        out = []
        f = self
        while f is not None:
            out.append(f)
            f = f.base
        return out[::-1]

    def gen(self):
        c = [lift(0, self.base)] * self.degree
        c[1] = lift(1, self.base)
        return FieldElem(self, c)

    def zero(self):
        return FieldElem(self, [lift(0, self.base)] * self.degree)

    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        if isinstance(x, FieldElem) and x.field == self:
            return x
        f = field_of(x)
        if f is not None and not contains(self, f):
            raise TowerMismatch(f"cannot coerce {x} from {f!r} into {self!r}")
        c = [lift(0, self.base)] * self.degree
        c[0] = lift(x, self.base)
        return FieldElem(self, c)


class FieldElem:
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        base = field.base
        self.c = tuple(lift(x, base) for x in coeffs)
        if len(self.c) != field.degree:
            raise AlgebraError("coefficient vector length must equal the "
                               "extension degree", "FieldElem")

    # -- coercion -----------------------------------------------------------
    def _pair(self, other):
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return self, other
            f = common_field(self.field, other.field)
            return lift(self, f), lift(other, f)
        if isinstance(other, (int, Rational)):
            return self, self.field.coerce(other)
        return None, None

    def is_in_base(self):
        return not any(self.c[1:])

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.field != self.field:
            return a + b
        return FieldElem(a.field, [x + y for x, y in zip(a.c, b.c)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, [-x for x in self.c])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) or (
                isinstance(other, FieldElem) and other.field != self.field
                and contains(self.field.base, other.field)):
            return FieldElem(self.field, [x * other for x in self.c])
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.field != self.field:
            return a * b
        field = a.field
        n = field.degree
        prod = upoly.mul(upoly.trim(a.c), upoly.trim(b.c))
        m = field.minpoly
        prod = list(prod)
        for k in range(len(prod) - 1, n - 1, -1):
            top = prod[k]
            if not top:
                continue
            for j in range(n + 1):
                prod[k - n + j] = prod[k - n + j] - top * m[j]
        return FieldElem(field, (prod + [0] * n)[:n])

    __rmul__ = __mul__

    def inverse(self):
        a = upoly.trim(self.c)
        if not a:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = upoly.xgcd(a, list(self.field.minpoly))
        if len(g) != 1:
            raise NotInvertible(
                f"{self} is a zero divisor modulo {self.field.minpoly_str()}",
                "FieldElem.inverse")
        s = (list(s) + [0] * self.field.degree)[:self.field.degree]
        return FieldElem(self.field, s)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(bool(x) for x in self.c)

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.c == b.c

    def __hash__(self):
        if self.is_in_base():
            return hash(self.c[0])
        return hash((self.field, self.c))

    def __repr__(self):
        return f"FieldElem({self})"

    def __str__(self):
        return poly_to_str(list(self.c), self.field.name)

    def __reduce__(self):
        return (FieldElem, (self.field, self.c))

    def rational_coordinates(self):
        """Coordinates over Q in the flattened power basis of the tower."""
        out = []
        for x in self.c:
            if isinstance(x, FieldElem):
                out.extend(x.rational_coordinates())
            else:
                out.append(to_rational(x))
        return out


def rational_coordinates(x, field):
    """Coordinates of ``x`` (lifted into ``field``) over Q."""
    if field is None:
        return [to_rational(x)]
    return field.coerce(x).rational_coordinates()


def restrict_scalars(row, field=None):
    """Expand a row over a tower level into ``[field : Q]`` rows over Q.

    Row ``j`` holds the ``j``-th power-basis coordinate of every entry, so the
    Q-span of the result equals the C-span of all Galois conjugates of ``row``.
    Entries at lower levels of the same tower are lifted; entries from
    unrelated towers raise :class:`TowerMismatch`.
    """
    row = list(row)
    if field is None:
        field = common_field(*(field_of(x) for x in row))
    elif not all(contains(field, field_of(x)) for x in row):
        raise TowerMismatch("row entries are not all in the given level",
                            "restrict_scalars")
    e = absolute_degree(field)
    cols = [rational_coordinates(x, field) for x in row]
    return [[col[j] for col in cols] for j in range(e)]


def _coeff_str(c):
    s = str(c)
    if isinstance(c, FieldElem) and not c.is_in_base():
        return f"({s})"
    if isinstance(c, FieldElem):
        return _coeff_str(c.c[0])
    return s


def poly_to_str(coeffs, name):
    """Render ``sum coeffs[i] * name^i`` in the input grammar."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        cs = _coeff_str(c)
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append(f"-{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out
