"""Dense polynomial and truncated power series calculus in t, T and U.

`Poly` is a dense univariate polynomial over Scalars.  `TruncSeries` keeps a
coefficient list up to an explicit truncation order and never reads beyond
it; its coefficients may be Scalars, Polys, base-ring elements, or nested
series, as long as they support ring arithmetic.  Mixed-order arithmetic
truncates to the smaller order.  `BiSeries` is a rectangular grid in two
series variables.
"""

from __future__ import annotations

from .errors import (
    NotAUnit,
    OrderMismatch,
    RootObstruction,
    ShiftUnavailable,
    ZeroInput,
)
from .scalars import FieldSpec, Scalar, binomial


class Poly:
    """Dense univariate polynomial with no trailing zero coefficients.

    The zero polynomial has degree -1.
    """

    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field: FieldSpec, coeffs=(), var: str = "t"):
        cs = [field.scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.var = var
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, field, degree, coeff=1, var="t"):
        return cls(field, [0] * degree + [coeff], var=var)

    @classmethod
    def variable(cls, field, var="t"):
        return cls(field, [0, 1], var=var)

    @classmethod
    def constant(cls, field, value, var="t"):
        return cls(field, [value], var=var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> Scalar:
        if not self.coeffs:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i <= self.degree else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def zero(self) -> "Poly":
        return Poly(self.field, (), var=self.var)

    def one(self) -> "Poly":
        return Poly(self.field, (1,), var=self.var)

    def _like(self, other):
        if isinstance(other, Poly):
            if other.field != self.field or other.var != self.var:
                raise ValueError("mixed polynomial rings")
            return other
        if isinstance(other, (int, Scalar)):
            return Poly(self.field, (self.field.scalar(other),), var=self.var)
        return None

    def __add__(self, other):
        o = self._like(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(
            self.field,
            [self.coeff(i) + o.coeff(i) for i in range(n)],
            var=self.var,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._like(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._like(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs], var=self.var)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            s = self.field.scalar(other)
            return Poly(self.field, [c * s for c in self.coeffs], var=self.var)
        o = self._like(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return self.zero()
        out = [self.field.zero] * (self.degree + o.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out, var=self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._like(other)
        return o is not None and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.var, self.coeffs))

    def evaluate(self, c: Scalar) -> Scalar:
        acc = self.field.zero
        for a in reversed(self.coeffs):
            acc = acc * c + a
        return acc

    def hasse_derivative(self, n: int) -> "Poly":
        """n-th Hasse derivative: sum_i C(i, n) a_i x^(i-n)."""
        if n == 0:
            return self
        out = [
            binomial(i, n, self.field) * self.coeffs[i]
            for i in range(n, len(self.coeffs))
        ]
        return Poly(self.field, out, var=self.var)

    def shift(self, c: Scalar) -> "Poly":
        """Exact substitution x -> x + c."""
        c = self.field.scalar(c)
        shifted = Poly(self.field, (c, self.field.one), var=self.var)
        acc = self.zero()
        for a in reversed(self.coeffs):
            acc = acc * shifted + a
        return acc

    def divmod(self, divisor: "Poly"):
        if divisor.is_zero():
            raise ZeroInput("division by the zero polynomial")
        rem = self
        quo = self.zero()
        inv = divisor.leading_coefficient.inverse()
        while not rem.is_zero() and rem.degree >= divisor.degree:
            d = rem.degree - divisor.degree
            c = rem.leading_coefficient * inv
            term = Poly.monomial(self.field, d, c, var=self.var)
            quo = quo + term
            rem = rem - term * divisor
        return quo, rem

    def exact_divide(self, divisor: "Poly"):
        """Quotient when the division is exact, else None."""
        quo, rem = self.divmod(divisor)
        return quo if rem.is_zero() else None

    def inverse(self) -> "Poly":
        if self.degree != 0:
            raise NotAUnit("only nonzero constants are units in the polynomial ring")
        return Poly(self.field, (self.coeffs[0].inverse(),), var=self.var)

    def to_series(self, order: int, var=None) -> "TruncSeries":
        var = var or self.var
        return TruncSeries(var, order, [self.coeff(i) for i in range(order + 1)])

    def decompose(self):
        """Coefficients keyed by degree (monomial basis)."""
        return {i: c for i, c in enumerate(self.coeffs) if not c.is_zero()}

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c.is_zero():
                continue
            if i == 0:
                mono = str(c)
            else:
                v = self.var if i == 1 else f"{self.var}^{i}"
                mono = v if c.is_one() else f"{c}*{v}"
            parts.append(mono)
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _zero_like(x):
    return x - x


class TruncSeries:
    """Truncated power series: exactly order+1 stored coefficients."""

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var: str, order: int, coeffs):
        if order < 0:
            raise OrderMismatch("truncation order must be nonnegative")
        coeffs = list(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError(
                f"need {order + 1} coefficients for order {order}, got {len(coeffs)}"
            )
        self.var = var
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, var, order, value):
        zero = _zero_like(value)
        return cls(var, order, [value] + [zero] * order)

    def coeff(self, n: int):
        if n > self.order:
            raise OrderMismatch(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    @property
    def constant_term(self):
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def zero(self) -> "TruncSeries":
        return TruncSeries.constant(self.var, self.order, _zero_like(self.coeffs[0]))

    def one(self) -> "TruncSeries":
        return TruncSeries.constant(self.var, self.order, _one_like(self.coeffs[0]))

    def truncated(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise OrderMismatch(
                f"cannot extend a series of order {self.order} to {order}"
            )
        return TruncSeries(self.var, order, self.coeffs[: order + 1])

    def renamed(self, var: str) -> "TruncSeries":
        return TruncSeries(var, self.order, self.coeffs)

    def map_coeffs(self, f) -> "TruncSeries":
        return TruncSeries(self.var, self.order, [f(c) for c in self.coeffs])

    def valuation(self):
        """Index of the first nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return None

    def _common(self, other):
        if not isinstance(other, TruncSeries):
            return None
        if other.var != self.var:
            raise ValueError(f"mixed series variables {self.var!r}, {other.var!r}")
        return min(self.order, other.order)

    def __add__(self, other):
        n = self._common(other)
        if n is None:
            return NotImplemented
        return TruncSeries(
            self.var, n, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
        )

    def __sub__(self, other):
        n = self._common(other)
        if n is None:
            return NotImplemented
        return TruncSeries(
            self.var, n, [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)]
        )

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            # coefficient-ring scalar
            return self.map_coeffs(lambda c: c * other)
        n = self._common(other)
        out = []
        for k in range(n + 1):
            acc = None
            for i in range(k + 1):
                term = self.coeffs[i] * other.coeffs[k - i]
                acc = term if acc is None else acc + term
            out.append(acc)
        return TruncSeries(self.var, n, out)

    def __rmul__(self, other):
        return self.map_coeffs(lambda c: other * c)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.order == other.order
            and all(self.coeffs[i] == other.coeffs[i] for i in range(self.order + 1))
        )

    __hash__ = None

    def agrees_with(self, other) -> bool:
        """Equality up to the smaller of the two truncation orders."""
        n = self._common(other)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def inverse(self) -> "TruncSeries":
        return series_inverse(self)

    def hasse_derivative(self, n: int) -> "TruncSeries":
        """n-th Hasse derivative; the order shrinks to order - n."""
        if n == 0:
            return self
        if n > self.order:
            raise OrderMismatch(
                f"Hasse derivative {n} of a series of order {self.order}"
            )
        field = _field_of(self.coeffs[0])
        out = [
            self.coeffs[i] * binomial(i, n, field)
            for i in range(n, self.order + 1)
        ]
        return TruncSeries(self.var, self.order - n, out)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            v = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = str(c)
            if "+" in cs or "-" in cs[1:] or " " in cs:
                cs = f"({cs})"
            parts.append(cs if not v else f"{cs}*{v}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{self.order + 1})"

    __repr__ = __str__


def _is_zero(x):
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def _one_like(x):
    return x.one()


def _field_of(x):
    while not isinstance(x, Scalar):
        if isinstance(x, TruncSeries):
            x = x.coeffs[0]
        elif hasattr(x, "field"):
            return x.field
        else:
            raise TypeError(f"no field on {type(x).__name__}")
    return x.field


def series_inverse(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse up to the truncation order.

    The constant term must be a unit of the coefficient ring.
    """
    c0 = s.constant_term
    if _is_zero(c0):
        raise NotAUnit("series with zero constant term")
    inv0 = c0.inverse()
    out = [inv0]
    for n in range(1, s.order + 1):
        acc = None
        for k in range(1, n + 1):
            term = s.coeffs[k] * out[n - k]
            acc = term if acc is None else acc + term
        out.append(-inv0 * acc)
    return TruncSeries(s.var, s.order, out)


def mth_root(s: TruncSeries, m: int) -> TruncSeries:
    """The series r with r^m = s and constant term 1.

    Solved coefficient by coefficient; requires constant term 1 and m prime
    to the characteristic (otherwise the linear step m*r_n = ... degenerates).
    """
    if m <= 0:
        raise ValueError("root index must be positive")
    one = _one_like(s.constant_term)
    if not s.constant_term == one:
        raise NotAUnit("m-th root wants constant term 1")
    field = _field_of(s.constant_term)
    p = field.characteristic
    if p and m % p == 0:
        raise RootObstruction(f"characteristic {p} divides root index {m}")
    minv = field.scalar(m).inverse()
    root = [one] + [_zero_like(one)] * s.order
    for n in range(1, s.order + 1):
        current = TruncSeries(s.var, n, root[: n + 1]) ** m
        delta = (s.coeffs[n] - current.coeff(n)) * minv
        root[n] = delta
    return TruncSeries(s.var, s.order, root)


class BiSeries:
    """Truncated series in two variables stored as a rectangular grid.

    grid[i][j] is the coefficient of var1^i * var2^j.
    """

    __slots__ = ("var1", "var2", "order1", "order2", "grid")

    def __init__(self, var1, var2, order1, order2, grid):
        grid = [list(row) for row in grid]
        if len(grid) != order1 + 1 or any(len(r) != order2 + 1 for r in grid):
            raise ValueError("grid shape does not match the stated orders")
        self.var1, self.var2 = var1, var2
        self.order1, self.order2 = order1, order2
        self.grid = tuple(tuple(r) for r in grid)

    def cell(self, i, j):
        return self.grid[i][j]

    def _common(self, other):
        if self.var1 != other.var1 or self.var2 != other.var2:
            raise ValueError("mixed bivariate series variables")
        return min(self.order1, other.order1), min(self.order2, other.order2)

    def __add__(self, other):
        n1, n2 = self._common(other)
        return BiSeries(
            self.var1,
            self.var2,
            n1,
            n2,
            [
                [self.grid[i][j] + other.grid[i][j] for j in range(n2 + 1)]
                for i in range(n1 + 1)
            ],
        )

    def __sub__(self, other):
        n1, n2 = self._common(other)
        return BiSeries(
            self.var1,
            self.var2,
            n1,
            n2,
            [
                [self.grid[i][j] - other.grid[i][j] for j in range(n2 + 1)]
                for i in range(n1 + 1)
            ],
        )

    def __mul__(self, other):
        n1, n2 = self._common(other)
        rows = []
        for i in range(n1 + 1):
            row = []
            for j in range(n2 + 1):
                acc = None
                for a in range(i + 1):
                    for b in range(j + 1):
                        term = self.grid[a][b] * other.grid[i - a][j - b]
                        acc = term if acc is None else acc + term
                row.append(acc)
            rows.append(row)
        return BiSeries(self.var1, self.var2, n1, n2, rows)

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        n1, n2 = self._common(other)
        return all(
            self.grid[i][j] == other.grid[i][j]
            for i in range(n1 + 1)
            for j in range(n2 + 1)
        )

    __hash__ = None

    @classmethod
    def from_outer(cls, var1, var2, order1, order2, series: TruncSeries):
        """Embed a series in var1 with all var2-components zero."""
        zero = _zero_like(series.coeffs[0])
        rows = []
        for i in range(order1 + 1):
            c = series.coeff(i) if i <= series.order else zero
            rows.append([c] + [zero] * order2)
        return cls(var1, var2, order1, order2, rows)


def shift_poly_to_series(f: Poly, K: int, var: str = "T") -> TruncSeries:
    """Exact substitution x -> x + V for a polynomial: the Taylor expansion
    whose V^n coefficient is the n-th Hasse derivative."""
    return TruncSeries(var, K, [f.hasse_derivative(n) for n in range(K + 1)])


def expand_to_two_vars(s: TruncSeries, order1: int, order2: int, var2: str = "U") -> BiSeries:
    """Substitution V -> V + W by the binomial expansion.

    Cell (i, j) is C(i+j, i) times the (i+j)-th coefficient, so the input
    must carry at least order1+order2 coefficients.
    """
    if order1 + order2 > s.order:
        raise OrderMismatch(
            f"need order {order1 + order2}, series has {s.order}"
        )
    field = None
    rows = []
    for i in range(order1 + 1):
        row = []
        for j in range(order2 + 1):
            c = s.coeff(i + j)
            if field is None:
                field = _field_of(c)
            row.append(c * binomial(i + j, i, field))
        rows.append(row)
    return BiSeries(s.var, var2, order1, order2, rows)


def substitute_outer_neg_inner(s: TruncSeries, order: int, inner_var: str = "t") -> TruncSeries:
    """Substitute V -> -x into a series in V whose coefficients live in x.

    Coefficients may be Polys, inner truncated series, or Scalars; the result
    is a series in the inner variable, its order clipped to the information
    actually present (a V-coefficient of order N contributes from degree n on,
    so it constrains the result to order N + n).
    """
    effective = min(s.order, order)
    for n in range(effective + 1):
        c = s.coeff(n)
        if isinstance(c, TruncSeries):
            effective = min(effective, c.order + n)
    terms = []
    for n in range(min(s.order, effective) + 1):
        c = s.coeff(n)
        if isinstance(c, Poly):
            cs = c.to_series(effective, var=inner_var)
        elif isinstance(c, TruncSeries):
            if c.var != inner_var:
                raise ValueError("inner variable mismatch")
            cs = c.truncated(min(effective, c.order))
        elif isinstance(c, Scalar):
            cs = TruncSeries.constant(inner_var, effective, c)
        else:
            raise TypeError(f"cannot substitute into coefficients {type(c).__name__}")
        sign = -1 if n % 2 else 1
        shifted = _shift_up(cs, n, effective)
        terms.append(shifted if sign > 0 else -shifted)
    acc = terms[0]
    for term in terms[1:]:
        acc = acc + term
    return acc


def _shift_up(s: TruncSeries, n: int, order: int) -> TruncSeries:
    """Multiply by var^n, truncating to the given order."""
    zero = _zero_like(s.coeffs[0])
    out = [zero] * (order + 1)
    for i, c in enumerate(s.coeffs):
        if i + n > order:
            break
        out[i + n] = c
    return TruncSeries(s.var, order, out)


def shift_series_coeffs(s: TruncSeries, c: Scalar) -> TruncSeries:
    """Substitute t -> t + c inside every (polynomial) coefficient."""
    for x in s.coeffs:
        if not isinstance(x, Poly):
            raise ShiftUnavailable(
                "t -> t + c needs polynomial coefficients; "
                f"got {type(x).__name__}"
            )
    return s.map_coeffs(lambda f: f.shift(c))


def substitute(obj, rule: str, **kw):
    """Dispatch the four supported formal substitutions.

    rule is one of ``"T->-t"``, ``"T->T+U"``, ``"t->t+T"``, ``"t->t+c"``.
    """
    if rule == "T->-t":
        return substitute_outer_neg_inner(obj, kw["order"], kw.get("inner_var", "t"))
    if rule == "T->T+U":
        return expand_to_two_vars(obj, kw["order1"], kw["order2"], kw.get("var2", "U"))
    if rule == "t->t+T":
        if isinstance(obj, Poly):
            return shift_poly_to_series(obj, kw["order"], kw.get("var", "T"))
        raise ShiftUnavailable(
            "t -> t + T is exact for polynomial inputs only; "
            f"got {type(obj).__name__}"
        )
    if rule == "t->t+c":
        if isinstance(obj, Poly):
            return obj.shift(kw["c"])
        if isinstance(obj, TruncSeries):
            return shift_series_coeffs(obj, kw["c"])
        raise TypeError(f"cannot shift {type(obj).__name__}")
    raise ValueError(f"unknown substitution rule {rule!r}")
