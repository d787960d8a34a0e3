"""Sparse multivariate polynomials with exact coefficients.

Terms are stored in a dict ``exponent tuple -> coefficient``; zero
coefficients are never stored.  Exponents may be negative (Laurent
polynomials on a torus); operations that need polynomial exponents say so.
"""

from math import comb

from .errors import NotDivisible, VariableMismatch
from .fields import FieldElem, common_field, field_of, lift


def _nonzero(c):
    return bool(c)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise VariableMismatch(
                        f"exponent {e} does not match variables {self.vars}")
                if _nonzero(c):
                    clean[e] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, variables, c):
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables, exponent, c=1):
        return cls(variables, {tuple(exponent): c})

    def _like(self, terms):
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {e: c for e, c in terms.items() if c}
        return out

    # -- basic queries ------------------------------------------------------
    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def field(self):
        return common_field(*(field_of(c) for c in self.terms.values()))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def order(self):
        """Order of vanishing at the origin (lowest total degree)."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def used_variables(self):
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def is_homogeneous(self, degree=None):
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise VariableMismatch(f"unknown variable {name!r}") from None

    def _check(self, other):
        if other.vars != self.vars:
            raise VariableMismatch(f"variables {self.vars} vs {other.vars}")

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return self._like({})
            return self._like({e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = MultiPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        return self == MultiPoly.constant(self.vars, other)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __reduce__(self):
        return (MultiPoly, (self.vars, self.terms))

    # -- calculus and rewriting ---------------------------------------------
    def diff(self, i):
        if isinstance(i, str):
            i = self.index(i)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return self._like(out)

    def gradient(self):
        return [self.diff(i) for i in range(self.nvars)]

    def homogeneous_part(self, k):
        return self._like({e: c for e, c in self.terms.items() if sum(e) == k})

    def coefficient(self, i, power):
        """Coefficient of ``vars[i]**power`` as a polynomial (same variables)."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                f = list(e)
                f[i] = 0
                out[tuple(f)] = c
        return self._like(out)

    def to_field(self, field):
        return self._like({e: lift(c, field) for e, c in self.terms.items()})

    def rename(self, variables):
        if len(variables) != self.nvars:
            raise VariableMismatch("rename needs one name per variable")
        out = MultiPoly.__new__(MultiPoly)
        out.vars = tuple(variables)
        out.terms = dict(self.terms)
        return out

    def evaluate(self, point):
        point = list(point)
        if len(point) != self.nvars:
            raise VariableMismatch(
                f"point has {len(point)} coordinates, polynomial has "
                f"{self.nvars} variables", "poly_eval")
        common_field(self.field(), *(field_of(x) for x in point))
        powers = [dict() for _ in point]
        acc = 0
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = point[i] ** k
                    t = t * cache[k]
            acc = acc + t
        return acc

    def substitute(self, images):
        images = list(images)
        if len(images) != self.nvars:
            raise VariableMismatch(
                f"{len(images)} images for {self.nvars} variables",
                "poly_substitute")
        if not images:
            return self
        target = images[0].vars
        for im in images:
            if im.vars != target:
                raise VariableMismatch("images must share a variable set",
                                       "poly_substitute")
        powers = [{0: MultiPoly.constant(target, 1)} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k < 0:
                raise VariableMismatch("cannot substitute into negative "
                                       "exponents", "poly_substitute")
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = {}
        for e, c in self.terms.items():
            t = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for f, d in t.terms.items():
                out[f] = out[f] + d if f in out else d
        res = MultiPoly.__new__(MultiPoly)
        res.vars = target
        res.terms = {f: d for f, d in out.items() if d}
        return res

    def subs(self, i, image):
        """Replace the single variable ``i`` by the polynomial ``image``."""
        if isinstance(i, str):
            i = self.index(i)
        if not isinstance(image, MultiPoly):
            image = MultiPoly.constant(self.vars, image)
        self._check(image)
        powers = {0: MultiPoly.constant(self.vars, 1)}
        out = MultiPoly(self.vars)
        grouped = {}
        for e, c in self.terms.items():
            grouped.setdefault(e[i], {})
            f = list(e)
            f[i] = 0
            grouped[e[i]][tuple(f)] = c
        for k in sorted(grouped):
            if k < 0:
                raise VariableMismatch("cannot substitute into negative "
                                       "exponents", "poly_substitute")
            while k not in powers:
                top = max(powers)
                powers[top + 1] = powers[top] * image
            out = out + self._like(grouped[k]) * powers[k]
        return out

    def translate(self, shift):
        """Return ``p(x + shift)``."""
        shift = list(shift)
        if len(shift) != self.nvars:
            raise VariableMismatch("shift length must equal variable count",
                                   "translate")
        terms = dict(self.terms)
        for i, s in enumerate(shift):
            if not s:
                continue
            out = {}
            for e, c in terms.items():
                k = e[i]
                if k < 0:
                    raise VariableMismatch("cannot translate a Laurent term",
                                           "translate")
                spow = 1
                for j in range(k, -1, -1):
                    # coefficient of x_i^j in (x_i + s)^k
                    f = list(e)
                    f[i] = j
                    f = tuple(f)
                    d = c * comb(k, j) * spow
                    out[f] = out[f] + d if f in out else d
                    spow = spow * s
            terms = {e: c for e, c in out.items() if c}
        return self._like(terms)

    def chart_map(self, j):
        """Pull back along the blow-up chart ``x_j = v, x_i = v * x_i'``."""
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[j] = sum(e)
            out[tuple(f)] = c
        return self._like(out)

    def exact_divide(self, i, power):
        if isinstance(i, str):
            i = self.index(i)
        out = {}
        for e, c in self.terms.items():
            if e[i] < power:
                raise NotDivisible(
                    f"term with {self.vars[i]}^{e[i]} not divisible by "
                    f"{self.vars[i]}^{power}", "poly_exact_divide")
            f = list(e)
            f[i] -= power
            out[tuple(f)] = c
        return self._like(out)

    def shift_exponents(self, delta):
        """Multiply by the (Laurent) monomial with exponent ``delta``."""
        return self._like({tuple(a + b for a, b in zip(e, delta)): c
                           for e, c in self.terms.items()})

    # -- display ------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda ec: (-sum(ec[0]), tuple(-k for k in ec[0])))

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"MultiPoly({self.vars}, {poly_str(self)!r})"


def _coeff_text(c):
    if isinstance(c, FieldElem):
        if c.is_in_base():
            return _coeff_text(c.c[0])
        return f"({c})"
    return str(c)


def poly_str(p):
    """Render in the input grammar (round-trips through ``parse_polynomial``)."""
    parts = []
    for e, c in p.sorted_terms():
        mono = []
        for name, k in zip(p.vars, e):
            if k == 1:
                mono.append(name)
            elif k:
                mono.append(f"{name}^{k}")
        cs = _coeff_text(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if mono and cs == "1":
            body = "*".join(mono)
        else:
            body = "*".join([cs] + mono)
        parts.append((neg, body))
    if not parts:
        return "0"
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


# Operation-level wrappers --------------------------------------------------

def poly_eval(p, point):
    return p.evaluate(point)


def poly_substitute(p, images):
    return p.substitute(images)


def poly_exact_divide(p, var, power):
    return p.exact_divide(var, power)
