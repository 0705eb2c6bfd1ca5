"""Trivialization over truncated power series: fundamental solution
matrices, constancy verification, Wronskian-style independence certificates
and bounded-order linear relation detection.

After embedding the base at a point c, every module trivializes: F(t) =
A-hat(t, -t) is invertible and b * F is a basis of constants, equivalently
F(t) = A-hat(t, T) * F(t + T) as a T-series identity.  All verification is
exact at the stated truncation orders.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientOrder
from .idring import taylor_embed
from .idmodule import IdModuleSpec
from .linalg import SpanBasis, kernel_basis, primitive_normalize
from .matrices import determinant, freeze, mat_map
from .report import CheckResult, failure, success
from .scalars import Scalar
from .series import Poly, TruncSeries, substitute_outer_neg_inner


@dataclass(frozen=True)
class FundamentalMatrix:
    """F with e = b * F a constant basis, expanded at the point c.

    ``ahat`` keeps the embedded module matrix (T-series entries whose
    coefficients are t-series) for downstream verification; ``t_image`` is
    the embedded base coordinate c + t.
    """

    point: Scalar
    order: int
    F: tuple  # r x r of TruncSeries in t over Scalar
    ahat: tuple  # r x r of TruncSeries in T over TruncSeries in t
    t_image: TruncSeries

    @property
    def rank(self):
        return len(self.F)


def embed_module(m: IdModuleSpec, c: Scalar, N: int):
    """Taylor-embed every matrix coefficient at the point c."""
    return freeze(
        [
            [
                entry.map_coeffs(lambda x: taylor_embed(m.base, x, c, N))
                for entry in row
            ]
            for row in m.A
        ]
    )


def fundamental_matrix(m: IdModuleSpec, c, N: int) -> FundamentalMatrix:
    """F = A-hat(t, -t) in the local coordinate at c.

    The t-information available is capped by the module's T-order, so the
    effective order is min(N, m.order).
    """
    c = m.base.field.scalar(c)
    ahat = embed_module(m, c, N)
    eff = min(N, m.order)
    F = mat_map(ahat, lambda s: substitute_outer_neg_inner(s, eff))
    t_poly = Poly.variable(m.base.field, var="t")
    t_image = t_poly.shift(c).to_series(eff, var="t")
    return FundamentalMatrix(point=c, order=eff, F=F, ahat=ahat, t_image=t_image)


def verify_constant_basis(m: IdModuleSpec, f: FundamentalMatrix, K_T: int) -> CheckResult:
    """Check A-hat(t, T) * F(t + T) = F(t) coefficientwise in T.

    The T^k cell is sum_{a+b=k} A-hat_a * theta_b(F) and must equal F for
    k = 0 and vanish for k > 0; the t-order of cell k is N - k, exactly the
    information the truncation carries.
    """
    K_T = min(K_T, m.order, f.order)
    r = f.rank
    entries = []
    hasse_F = [mat_map(f.F, lambda s: s.hasse_derivative(b)) for b in range(K_T + 1)]
    ahat_coeff = [
        freeze([[f.ahat[i][j].coeff(a) for j in range(r)] for i in range(r)])
        for a in range(K_T + 1)
    ]
    for k in range(K_T + 1):
        for i in range(r):
            for j in range(r):
                acc = None
                for a in range(k + 1):
                    b = k - a
                    for s in range(r):
                        term = ahat_coeff[a][i][s] * hasse_F[b][s][j]
                        acc = term if acc is None else acc + term
                want = f.F[i][j] if k == 0 else f.F[i][j].zero()
                if not acc.agrees_with(want):
                    entries.append(
                        {
                            "law": "constant-basis",
                            "sample": f"F[{i}][{j}]",
                            "indices": f"T^{k}",
                            "lhs": str(acc),
                            "rhs": str(want),
                        }
                    )
    if entries:
        return failure("verify_constant_basis", entries, K_T=K_T, N=f.order)
    return success("verify_constant_basis", K_T=K_T, N=f.order)


@dataclass(frozen=True)
class WronskianResult:
    independent: bool
    indices: tuple = ()
    det: TruncSeries = None
    combination: tuple = ()
    certified_order: int = 0


def hasse_wronskian(series_list, bound: int) -> WronskianResult:
    """Greedy search for derivative orders k_1 < ... < k_r whose matrix of
    Hasse derivatives has unit determinant, certifying independence of the
    inputs over the constants.

    The k-th derivative row, evaluated at the origin, is the row of k-th
    coefficients, so the greedy scan row-reduces the coefficient matrix over
    increasing k and keeps rows that raise the rank.  If the rank stays
    below r, the kernel of the inspected rows gives a dependence valid to
    the inspected order.
    """
    r = len(series_list)
    field = None
    for s in series_list:
        for c in s.coeffs:
            if isinstance(c, Scalar):
                field = c.field
                break
        if field:
            break
    max_k = min(bound, min(s.order for s in series_list))
    span = SpanBasis()
    chosen = []
    for k in range(max_k + 1):
        row = {i: series_list[i].coeff(k) for i in range(r)}
        row = {i: v for i, v in row.items() if not v.is_zero()}
        if span.insert(row):
            chosen.append(k)
        if len(chosen) == r:
            break
    if len(chosen) == r:
        W = [
            [series_list[j].hasse_derivative(k) for j in range(r)]
            for k in chosen
        ]
        det = determinant(freeze(W))
        return WronskianResult(
            independent=True,
            indices=tuple(chosen),
            det=det,
            certified_order=max_k,
        )
    rows = [
        [series_list[i].coeff(k) for i in range(r)] for k in range(max_k + 1)
    ]
    kernel = kernel_basis(rows, r, field)
    combo = primitive_normalize(kernel[0]) if kernel else ()
    return WronskianResult(
        independent=False,
        combination=tuple(combo),
        certified_order=max_k,
    )


@dataclass(frozen=True)
class LinearIdRelation:
    """sum_i s_i(t) * theta_i(x) = 0, certified to the stated order only."""

    coefficients: tuple  # Poly per derivative order
    certified_order: int

    def __str__(self):
        parts = [
            f"({s})*theta_{i}(x)"
            for i, s in enumerate(self.coefficients)
            if not s.is_zero()
        ]
        return " + ".join(parts) + " = 0"


def find_linear_id_relation(
    x: TruncSeries, base, order_bound: int, coeff_deg_bound: int
):
    """Search for polynomial coefficients s_0..s_d (degree <= e) with
    sum s_i theta_i(x) vanishing at every checkable order.

    The series must be overdetermined: N >= (d+1)(e+1) + 4.  Returns a
    truncation-certified relation or None when the kernel is trivial.
    """
    d, e = order_bound, coeff_deg_bound
    N = x.order
    if N < (d + 1) * (e + 1) + 4:
        raise InsufficientOrder(
            f"order {N} < (d+1)(e+1)+4 = {(d + 1) * (e + 1) + 4}"
        )
    field = base.field
    derivs = [x.hasse_derivative(i) for i in range(d + 1)]
    cols = [(i, j) for i in range(d + 1) for j in range(e + 1)]
    rows = []
    for k in range(N - d + 1):
        row = []
        for (i, j) in cols:
            if k - j < 0 or k - j > derivs[i].order:
                row.append(field.zero)
            else:
                row.append(derivs[i].coeff(k - j))
        rows.append(row)
    kernel = kernel_basis(rows, len(cols), field)
    if not kernel:
        return None
    vec = primitive_normalize(kernel[0])
    polys = []
    for i in range(d + 1):
        coeffs = [vec[cols.index((i, j))] for j in range(e + 1)]
        polys.append(Poly(field, coeffs, var="t"))
    return LinearIdRelation(coefficients=tuple(polys), certified_order=N - d)
