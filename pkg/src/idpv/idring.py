"""Iterative derivations on concrete base rings.

A ring descriptor bundles a coefficient field with one of five shapes:

* ``PolyThetaRing``      -- C[t] with the derivation t -> t + T,
* ``LocalizedPolyThetaRing`` -- C[t] with a finite set of inverted polynomials,
* ``SeriesThetaRing``    -- C[[t]] truncated at a fixed order,
* ``TrivialRing``        -- a finitely generated constants-side algebra,
* ``TensorProductRing``  -- a tensor product of two descriptors over the field.

``theta(ring, x, K)`` expands x as a T-series whose n-th coefficient is the
n-th component of the derivation; the checkers verify the defining laws
(ring homomorphism plus the iteration rule) exactly at bounded order, and
``taylor_embed`` realizes the embedding x -> sum theta_n(x)(c) t^n into a
truncated power series ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import BadPoint, NotAUnit, OrderMismatch, SpanNotClosed, ZeroInput
from .linalg import kernel_basis
from .report import CheckResult, failure, success
from .scalars import FieldSpec, Scalar, binomial
from .series import Poly, TruncSeries, expand_to_two_vars, series_inverse, shift_poly_to_series


# ---------------------------------------------------------------------------
# elements


class LocalizedElem:
    """f / (g_1^e_1 ... g_s^e_s) with the exponent vector kept minimal.

    Common factors between the numerator and the inverted denominators are
    cancelled whenever exact division detects them.
    """

    __slots__ = ("ring", "num", "exps")

    @property
    def field(self):
        return self.ring.field

    def __init__(self, ring, num: Poly, exps):
        exps = list(exps)
        if len(exps) != len(ring.inverted):
            raise ValueError("exponent vector length mismatch")
        if num.is_zero():
            exps = [0] * len(exps)
        else:
            for i, g in enumerate(ring.inverted):
                while exps[i] > 0:
                    quo = num.exact_divide(g)
                    if quo is None:
                        break
                    num = quo
                    exps[i] -= 1
        self.ring = ring
        self.num = num
        self.exps = tuple(exps)

    def _like(self, other):
        if isinstance(other, LocalizedElem):
            if other.ring != self.ring:
                raise ValueError("mixed localized rings")
            return other
        if isinstance(other, (int, Scalar, Poly)):
            return self.ring.coerce(other)
        return None

    def __add__(self, other):
        o = self._like(other)
        if o is None:
            return NotImplemented
        exps = tuple(max(a, b) for a, b in zip(self.exps, o.exps))
        a = self.num * self.ring.denominator_power(tuple(e - f for e, f in zip(exps, self.exps)))
        b = o.num * self.ring.denominator_power(tuple(e - f for e, f in zip(exps, o.exps)))
        return LocalizedElem(self.ring, a + b, exps)

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
        return LocalizedElem(self.ring, -self.num, self.exps)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return LocalizedElem(self.ring, self.num * other, self.exps)
        o = self._like(other)
        if o is None:
            return NotImplemented
        return LocalizedElem(
            self.ring,
            self.num * o.num,
            tuple(a + b for a, b in zip(self.exps, o.exps)),
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        o = self._like(other)
        return o is not None and self.num == o.num and self.exps == o.exps

    __hash__ = None

    def is_zero(self):
        return self.num.is_zero()

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    def inverse(self):
        """Invertible iff the numerator is a scalar times inverted factors."""
        if self.is_zero():
            raise NotAUnit("inverse of zero")
        num = self.num
        dens = [0] * len(self.ring.inverted)
        for i, g in enumerate(self.ring.inverted):
            while True:
                quo = num.exact_divide(g)
                if quo is None:
                    break
                num = quo
                dens[i] += 1
        if num.degree != 0:
            raise NotAUnit(f"{self} is not a unit of the localized ring")
        unit = num.coeffs[0].inverse()
        new_num = Poly.constant(self.ring.field, unit) * self.ring.denominator_power(self.exps)
        return LocalizedElem(self.ring, new_num, tuple(dens))

    def __str__(self):
        den_parts = []
        for g, e in zip(self.ring.inverted, self.exps):
            if e == 1:
                den_parts.append(f"({g})")
            elif e > 1:
                den_parts.append(f"({g})^{e}")
        if not den_parts:
            return str(self.num)
        return f"({self.num})/({'*'.join(den_parts)})"

    __repr__ = __str__


class GenPoly:
    """Polynomial in named generators over the field (constants-side algebra)."""

    __slots__ = ("ring", "terms")

    @property
    def field(self):
        return self.ring.field

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {
            k: v for k, v in terms.items() if not v.is_zero()
        }

    def _like(self, other):
        if isinstance(other, GenPoly):
            if other.ring != self.ring:
                raise ValueError("mixed generator algebras")
            return other
        if isinstance(other, (int, Scalar)):
            return self.ring.coerce(other)
        return None

    def __add__(self, other):
        o = self._like(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return GenPoly(self.ring, out)

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
        return GenPoly(self.ring, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            s = self.ring.field.scalar(other)
            return GenPoly(self.ring, {k: v * s for k, v in self.terms.items()})
        o = self._like(other)
        if o is None:
            return NotImplemented
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in o.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                w = out.get(k)
                w = va * vb if w is None else w + va * vb
                out[k] = w
        return GenPoly(self.ring, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._like(other)
        return o is not None and self.terms == o.terms

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def zero(self):
        return GenPoly(self.ring, {})

    def one(self):
        return self.ring.one()

    def inverse(self):
        key = (0,) * len(self.ring.gens)
        if list(self.terms) == [key]:
            return GenPoly(self.ring, {key: self.terms[key].inverse()})
        raise NotAUnit("only scalars are units here")

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            factors = [
                g if e == 1 else f"{g}^{e}"
                for g, e in zip(self.ring.gens, k)
                if e
            ]
            c = self.terms[k]
            body = "*".join(factors)
            parts.append(f"{c}*{body}" if body and not c.is_one() else (body or str(c)))
        return " + ".join(parts)

    __repr__ = __str__


class TensorElem:
    """Sum of elementary tensors stored on the product monomial basis."""

    __slots__ = ("ring", "terms")

    @property
    def field(self):
        return self.ring.field

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def _like(self, other):
        if isinstance(other, TensorElem):
            if other.ring != self.ring:
                raise ValueError("mixed tensor rings")
            return other
        if isinstance(other, (int, Scalar)):
            return self.ring.coerce(other)
        return None

    def __add__(self, other):
        o = self._like(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return TensorElem(self.ring, out)

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
        return TensorElem(self.ring, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            s = self.ring.field.scalar(other)
            return TensorElem(self.ring, {k: v * s for k, v in self.terms.items()})
        o = self._like(other)
        if o is None:
            return NotImplemented
        out = {}
        for (la, ra), va in self.terms.items():
            for (lb, rb), vb in o.terms.items():
                lprod = self.ring.left.basis_product(la, lb)
                rprod = self.ring.right.basis_product(ra, rb)
                c = va * vb
                for lk, lc in lprod.items():
                    for rk, rc in rprod.items():
                        key = (lk, rk)
                        w = out.get(key)
                        add = c * lc * rc
                        w = add if w is None else w + add
                        out[key] = w
        return TensorElem(self.ring, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._like(other)
        return o is not None and self.terms == o.terms

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def zero(self):
        return TensorElem(self.ring, {})

    def one(self):
        return self.ring.one()

    def inverse(self):
        key = (self.ring.left.one_key(), self.ring.right.one_key())
        if list(self.terms) == [key]:
            return TensorElem(self.ring, {key: self.terms[key].inverse()})
        raise NotAUnit("only scalar multiples of 1 (x) 1 invert here")

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (lk, rk) in sorted(self.terms):
            c = self.terms[(lk, rk)]
            parts.append(
                f"{c}*[{self.ring.left.key_str(lk)} (x) {self.ring.right.key_str(rk)}]"
            )
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# ring descriptors


class _RingBase:
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, obj):
        raise NotImplementedError

    def theta(self, x, K: int) -> TruncSeries:
        raise NotImplementedError


@dataclass(frozen=True)
class PolyThetaRing(_RingBase):
    """C[t] with the iterative derivation determined by t -> t + T."""

    field: FieldSpec
    var: str = "t"

    def zero(self):
        return Poly(self.field, (), var=self.var)

    def one(self):
        return Poly(self.field, (1,), var=self.var)

    def t(self):
        return Poly.variable(self.field, var=self.var)

    def coerce(self, obj):
        if isinstance(obj, Poly):
            if obj.field != self.field:
                raise ValueError("wrong field")
            return obj
        if isinstance(obj, (int, Scalar)):
            return Poly.constant(self.field, self.field.scalar(obj), var=self.var)
        raise TypeError(f"cannot coerce {type(obj).__name__}")

    def theta(self, x, K):
        return shift_poly_to_series(self.coerce(x), K)

    # monomial-basis hooks (shared with the tensor construction)
    def decompose(self, x):
        return self.coerce(x).decompose()

    def basis_element(self, key):
        return Poly.monomial(self.field, key, var=self.var)

    def basis_product(self, a, b):
        return {a + b: self.field.one}

    def one_key(self):
        return 0

    def key_str(self, key):
        return "1" if key == 0 else f"{self.var}^{key}"


@dataclass(frozen=True)
class LocalizedPolyThetaRing(_RingBase):
    """C[t] with a finite nonzero inverted set, derivation extended by
    theta(f/g) = theta(f) * theta(g)^(-1)."""

    field: FieldSpec
    inverted: tuple
    var: str = "t"

    def __post_init__(self):
        for g in self.inverted:
            if not isinstance(g, Poly) or g.is_zero():
                raise ValueError("inverted set must consist of nonzero polynomials")

    def poly_ring(self):
        return PolyThetaRing(self.field, self.var)

    def zero(self):
        return LocalizedElem(self, Poly(self.field, (), var=self.var), (0,) * len(self.inverted))

    def one(self):
        return LocalizedElem(self, Poly(self.field, (1,), var=self.var), (0,) * len(self.inverted))

    def t(self):
        return self.coerce(Poly.variable(self.field, var=self.var))

    def coerce(self, obj):
        if isinstance(obj, LocalizedElem):
            if obj.ring != self:
                raise ValueError("wrong localized ring")
            return obj
        if isinstance(obj, Poly):
            return LocalizedElem(self, obj, (0,) * len(self.inverted))
        if isinstance(obj, (int, Scalar)):
            return LocalizedElem(
                self,
                Poly.constant(self.field, self.field.scalar(obj), var=self.var),
                (0,) * len(self.inverted),
            )
        raise TypeError(f"cannot coerce {type(obj).__name__}")

    def denominator_power(self, exps) -> Poly:
        acc = Poly(self.field, (1,), var=self.var)
        for g, e in zip(self.inverted, exps):
            acc = acc * g ** e
        return acc

    def fraction(self, num, exps):
        return LocalizedElem(self, self.poly_ring().coerce(num), exps)

    def theta(self, x, K):
        x = self.coerce(x)
        num_series = shift_poly_to_series(x.num, K).map_coeffs(self.coerce)
        if not any(x.exps):
            return num_series
        den = self.denominator_power(x.exps)
        den_series = shift_poly_to_series(den, K).map_coeffs(self.coerce)
        return num_series * series_inverse(den_series)


@dataclass(frozen=True)
class SeriesThetaRing(_RingBase):
    """C[[t]] truncated at a fixed order, derivation from t -> t + T.

    Derivative components are only determined up to order - n, so each
    T-coefficient shrinks accordingly.
    """

    field: FieldSpec
    order: int
    var: str = "t"

    def zero(self):
        return TruncSeries.constant(self.var, self.order, self.field.zero)

    def one(self):
        return TruncSeries.constant(self.var, self.order, self.field.one)

    def coerce(self, obj):
        if isinstance(obj, TruncSeries):
            if obj.var != self.var:
                raise ValueError("wrong series variable")
            return obj.truncated(min(obj.order, self.order))
        if isinstance(obj, Poly):
            return obj.to_series(self.order, var=self.var)
        if isinstance(obj, (int, Scalar)):
            return TruncSeries.constant(self.var, self.order, self.field.scalar(obj))
        raise TypeError(f"cannot coerce {type(obj).__name__}")

    def theta(self, x, K):
        x = self.coerce(x)
        if K > x.order:
            raise OrderMismatch(
                f"theta to order {K} of a series truncated at {x.order}"
            )
        return TruncSeries("T", K, [x.hasse_derivative(n) for n in range(K + 1)])

    def decompose(self, x):
        x = self.coerce(x)
        return {i: c for i, c in enumerate(x.coeffs) if not c.is_zero()}

    def basis_element(self, key):
        return Poly.monomial(self.field, key, var=self.var).to_series(self.order, var=self.var)

    def basis_product(self, a, b):
        if a + b > self.order:
            return {}
        return {a + b: self.field.one}

    def one_key(self):
        return 0

    def key_str(self, key):
        return "1" if key == 0 else f"{self.var}^{key}"


@dataclass(frozen=True)
class TrivialRing(_RingBase):
    """Finitely generated algebra of constants with named generators."""

    field: FieldSpec
    gens: tuple = ()

    def zero(self):
        return GenPoly(self, {})

    def one(self):
        return GenPoly(self, {(0,) * len(self.gens): self.field.one})

    def gen(self, name):
        idx = self.gens.index(name)
        key = tuple(1 if i == idx else 0 for i in range(len(self.gens)))
        return GenPoly(self, {key: self.field.one})

    def coerce(self, obj):
        if isinstance(obj, GenPoly):
            if obj.ring != self:
                raise ValueError("wrong generator algebra")
            return obj
        if isinstance(obj, (int, Scalar)):
            s = self.field.scalar(obj)
            return GenPoly(self, {(0,) * len(self.gens): s})
        raise TypeError(f"cannot coerce {type(obj).__name__}")

    def theta(self, x, K):
        x = self.coerce(x)
        zero = self.zero()
        return TruncSeries("T", K, [x] + [zero] * K)

    def decompose(self, x):
        return dict(self.coerce(x).terms)

    def basis_element(self, key):
        return GenPoly(self, {key: self.field.one})

    def basis_product(self, a, b):
        return {tuple(x + y for x, y in zip(a, b)): self.field.one}

    def one_key(self):
        return (0,) * len(self.gens)

    def key_str(self, key):
        parts = [g if e == 1 else f"{g}^{e}" for g, e in zip(self.gens, key) if e]
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class TensorProductRing(_RingBase):
    """Tensor product over the common field, with the convolution derivation
    theta_k(a (x) b) = sum_{i+j=k} theta_i(a) (x) theta_j(b).

    Both factors must expose a monomial basis (polynomial, truncated-series
    or trivial descriptors); localized factors have no finite monomial basis
    and are rejected.
    """

    left: _RingBase
    right: _RingBase

    def __post_init__(self):
        if self.left.field != self.right.field:
            raise ValueError("tensor factors must share the field")
        for side in (self.left, self.right):
            if not hasattr(side, "decompose"):
                raise TypeError(
                    f"{type(side).__name__} has no monomial basis; "
                    "cannot form this tensor product"
                )

    @property
    def field(self):
        return self.left.field

    def zero(self):
        return TensorElem(self, {})

    def one(self):
        return TensorElem(
            self, {(self.left.one_key(), self.right.one_key()): self.field.one}
        )

    def tensor(self, a, b):
        """Elementary tensor of a left element and a right element."""
        da = self.left.decompose(self.left.coerce(a))
        db = self.right.decompose(self.right.coerce(b))
        terms = {}
        for lk, lv in da.items():
            for rk, rv in db.items():
                terms[(lk, rk)] = lv * rv
        return TensorElem(self, terms)

    def coerce(self, obj):
        if isinstance(obj, TensorElem):
            if obj.ring != self:
                raise ValueError("wrong tensor ring")
            return obj
        if isinstance(obj, (int, Scalar)):
            s = self.field.scalar(obj)
            return TensorElem(
                self, {(self.left.one_key(), self.right.one_key()): s}
            )
        raise TypeError(f"cannot coerce {type(obj).__name__}")

    def theta(self, x, K):
        x = self.coerce(x)
        out = [dict() for _ in range(K + 1)]
        for (lk, rk), c in x.terms.items():
            lth = self.left.theta(self.left.basis_element(lk), K)
            rth = self.right.theta(self.right.basis_element(rk), K)
            ldec = [self.left.decompose(lth.coeff(i)) for i in range(K + 1)]
            rdec = [self.right.decompose(rth.coeff(j)) for j in range(K + 1)]
            for k in range(K + 1):
                bucket = out[k]
                for i in range(k + 1):
                    for la, lv in ldec[i].items():
                        for rb, rv in rdec[k - i].items():
                            key = (la, rb)
                            add = c * lv * rv
                            w = bucket.get(key)
                            bucket[key] = add if w is None else w + add
        return TruncSeries("T", K, [TensorElem(self, d) for d in out])

    def decompose(self, x):
        return dict(self.coerce(x).terms)

    def basis_element(self, key):
        return TensorElem(self, {key: self.field.one})

    def basis_product(self, a, b):
        lprod = self.left.basis_product(a[0], b[0])
        rprod = self.right.basis_product(a[1], b[1])
        out = {}
        for lk, lv in lprod.items():
            for rk, rv in rprod.items():
                out[(lk, rk)] = lv * rv
        return out

    def one_key(self):
        return (self.left.one_key(), self.right.one_key())

    def key_str(self, key):
        return f"{self.left.key_str(key[0])} (x) {self.right.key_str(key[1])}"


# ---------------------------------------------------------------------------
# operations


def theta(ring, x, K: int) -> TruncSeries:
    """T-series expansion of x under the ring's iterative derivation."""
    return ring.theta(x, K)


def _elems_agree(a, b) -> bool:
    if isinstance(a, TruncSeries) and isinstance(b, TruncSeries):
        return a.agrees_with(b)
    return a == b


def check_iteration_rule(ring, samples, K: int) -> CheckResult:
    """Verify theta_i . theta_j = C(i+j, i) theta_{i+j} on each sample.

    Both the indexwise identity (all i + j <= K) and its substitution form
    (expanding T -> T + U coefficientwise) are checked; violations are
    reported, not raised.
    """
    entries = []
    field = ring.field
    for idx, x in enumerate(samples):
        x = ring.coerce(x)
        th = ring.theta(x, K)
        nested = [ring.theta(th.coeff(j), K - j) for j in range(K + 1)]
        for j in range(K + 1):
            for i in range(K - j + 1):
                lhs = nested[j].coeff(i)
                rhs = th.coeff(i + j) * binomial(i + j, i, field)
                if not _elems_agree(lhs, rhs):
                    entries.append(
                        {
                            "law": "iteration-indexwise",
                            "sample": str(x),
                            "indices": f"({i},{j})",
                            "lhs": str(lhs),
                            "rhs": str(rhs),
                        }
                    )
        # substitution form: applying theta in U, then theta in T on each
        # coefficient, must match the binomial expansion of T -> T + U.
        half = K // 2
        expanded = expand_to_two_vars(th, half, K - half)
        for j in range(K - half + 1):
            for i in range(half + 1):
                lhs = nested[j].coeff(i) if i <= K - j else None
                rhs = expanded.cell(i, j)
                if lhs is not None and not _elems_agree(lhs, rhs):
                    entries.append(
                        {
                            "law": "iteration-substitution",
                            "sample": str(x),
                            "indices": f"({i},{j})",
                            "lhs": str(lhs),
                            "rhs": str(rhs),
                        }
                    )
    if entries:
        return failure("iteration_rule", entries, samples=len(samples), K=K)
    return success("iteration_rule", samples=len(samples), K=K)


def check_homomorphism(ring, x, y, K: int) -> CheckResult:
    """Verify additivity and multiplicativity of theta up to order K."""
    x = ring.coerce(x)
    y = ring.coerce(y)
    entries = []
    tx = ring.theta(x, K)
    ty = ring.theta(y, K)
    ts = ring.theta(x + y, K)
    tp = ring.theta(x * y, K)
    sum_rhs = tx + ty
    prod_rhs = tx * ty
    for n in range(K + 1):
        if not _elems_agree(ts.coeff(n), sum_rhs.coeff(n)):
            entries.append(
                {
                    "law": "additivity",
                    "sample": f"{x} , {y}",
                    "indices": str(n),
                    "lhs": str(ts.coeff(n)),
                    "rhs": str(sum_rhs.coeff(n)),
                }
            )
        if not _elems_agree(tp.coeff(n), prod_rhs.coeff(n)):
            entries.append(
                {
                    "law": "multiplicativity",
                    "sample": f"{x} , {y}",
                    "indices": str(n),
                    "lhs": str(tp.coeff(n)),
                    "rhs": str(prod_rhs.coeff(n)),
                }
            )
    if entries:
        return failure("homomorphism", entries, K=K)
    return success("homomorphism", K=K)


def linearize_elements(ring, elems):
    """Sparse coefficient vectors of ring elements on a common linear basis.

    Monomial-basis rings decompose directly; localized elements are brought
    to the common denominator determined by the whole batch first, so the
    map stays linear.  Raises SpanNotClosed when no linearization exists.
    """
    elems = [ring.coerce(x) for x in elems]
    if isinstance(ring, LocalizedPolyThetaRing):
        emax = tuple(
            max((x.exps[i] for x in elems), default=0)
            for i in range(len(ring.inverted))
        )
        out = []
        for x in elems:
            scaled = x.num * ring.denominator_power(
                tuple(a - b for a, b in zip(emax, x.exps))
            )
            out.append(scaled.decompose())
        return out
    if hasattr(ring, "decompose"):
        return [ring.decompose(x) for x in elems]
    raise SpanNotClosed(
        f"{type(ring).__name__} elements admit no finite linear coordinates"
    )


def constants_of_span(ring, basis, K: int):
    """Basis of the constants inside the span of the given elements.

    A constant is an element whose derivative components 1..K all vanish;
    the result is the exact kernel of the stacked coefficient-extraction
    map, as coefficient vectors with respect to the input basis.
    """
    basis = [ring.coerce(b) for b in basis]
    images = []  # images[n][i] = theta_n(basis[i]) for n in 1..K
    for b in basis:
        th = ring.theta(b, K)
        images.append([th.coeff(n) for n in range(1, K + 1)])
    rows = []
    for n in range(K):
        batch = linearize_elements(ring, [img[n] for img in images])
        keys = sorted({k for vec in batch for k in vec})
        for key in keys:
            row = [vec.get(key, ring.field.zero) for vec in batch]
            rows.append(row)
    return kernel_basis(rows, len(basis), ring.field)


def taylor_embed(ring, x, c: Scalar, N: int) -> TruncSeries:
    """Embed into the truncated power series ring at the point t = c.

    The image is sum_n theta_n(x)|_{t=c} t^n; every inverted polynomial must
    be nonzero at c so the evaluation is defined.
    """
    if isinstance(ring, PolyThetaRing):
        f = ring.coerce(x)
        c = ring.field.scalar(c)
        return f.shift(c).to_series(N, var=ring.var)
    if isinstance(ring, LocalizedPolyThetaRing):
        x = ring.coerce(x)
        c = ring.field.scalar(c)
        num = x.num.shift(c).to_series(N, var=ring.var)
        for g, e in zip(ring.inverted, x.exps):
            if not e:
                continue
            if g.evaluate(c).is_zero():
                raise BadPoint(f"inverted polynomial {g} vanishes at {c}")
            ginv = series_inverse(g.shift(c).to_series(N, var=ring.var))
            num = num * ginv ** e
        return num
    raise TypeError(f"taylor_embed needs a polynomial base, got {type(ring).__name__}")


def simplicity_certificate(f: Poly):
    """Witness (n, u) that the derivation ideal of f contains a unit:
    the deg(f)-th derivative component of f is its leading coefficient."""
    if f.is_zero():
        raise ZeroInput("zero polynomial has no certificate")
    n = f.degree
    witness = f.hasse_derivative(n)
    return n, witness.coeff(0)
