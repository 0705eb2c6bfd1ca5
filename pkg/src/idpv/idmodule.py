"""Modules with an iterative derivation, presented by their matrix A(t, T).

The distinguished generators b satisfy theta_M(b) = b * A(t, T) (a matrix
identity, columns indexing theta_M of each generator), so A(t, 0) must be
the identity and A must be invertible as a T-series matrix.  Builders cover
the characteristic-zero correspondence with ordinary derivation matrices,
rank-one radicand modules in any characteristic, direct sums and tensor
products; checkers verify the defining identities exactly at bounded order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BaseMismatch,
    CharNotZero,
    NotAUnit,
    RootObstruction,
    ShiftUnavailable,
)
from .idring import LocalizedPolyThetaRing, PolyThetaRing, SeriesThetaRing
from .matrices import freeze, identity, mat_eq, mat_mul
from .report import CheckResult, failure, success
from .scalars import binomial
from .series import Poly, TruncSeries, mth_root


@dataclass(frozen=True)
class IdModuleSpec:
    """A rank-r module given by its derivation matrix A (T-series entries
    with base-ring coefficients)."""

    base: object
    rank: int
    A: tuple  # r x r of TruncSeries in T over base elements

    def __post_init__(self):
        if len(self.A) != self.rank or any(len(row) != self.rank for row in self.A):
            raise ValueError("matrix shape does not match the rank")

    @property
    def order(self) -> int:
        return self.A[0][0].order

    def coefficient_matrix(self, n: int):
        """The matrix of T^n coefficients."""
        return freeze([[entry.coeff(n) for entry in row] for row in self.A])


def module_from_matrix(base, A_rows) -> IdModuleSpec:
    """Wrap a nested list of T-series (or coercible coefficients) as a spec."""
    rows = []
    for row in A_rows:
        rows.append([_coerce_series(base, entry) for entry in row])
    orders = {s.order for r in rows for s in r}
    order = min(orders)
    rows = [[s.truncated(order) for s in row] for row in rows]
    return IdModuleSpec(base, len(rows), freeze(rows))


def _coerce_series(base, entry):
    if isinstance(entry, TruncSeries):
        return entry.map_coeffs(base.coerce)
    raise TypeError("matrix entries must be T-series")


def validate_module(m: IdModuleSpec) -> CheckResult:
    """A(t, 0) must be the identity; then the constant matrix is invertible."""
    entries = []
    one = m.base.one()
    zero = m.base.zero()
    const = m.coefficient_matrix(0)
    for i in range(m.rank):
        for j in range(m.rank):
            want = one if i == j else zero
            if not const[i][j] == want:
                entries.append(
                    {
                        "law": "unit-constant-term",
                        "sample": f"A[{i}][{j}]",
                        "indices": "T^0",
                        "lhs": str(const[i][j]),
                        "rhs": str(want),
                    }
                )
    if not entries:
        return success("validate_module", rank=m.rank, order=m.order)
    # report invertibility of the offending constant matrix as extra signal
    try:
        from .matrices import mat_inverse

        mat_inverse(const)
        invertible = True
    except Exception:
        invertible = False
    return failure(
        "validate_module",
        entries,
        rank=m.rank,
        order=m.order,
        constant_matrix_invertible=invertible,
    )


def _theta_entrywise(base, M, K):
    """Apply the base derivation to each entry; entry (i,j) of the result at
    T-order n is theta_n of M[i][j]."""
    return [[base.theta(entry, K) for entry in row] for row in M]


def check_cocycle(m: IdModuleSpec, K_T: int, K_U: int) -> CheckResult:
    """Verify A(t, T+U) = A(t, T) * A(t+T, U) cell by cell.

    The left side expands binomially; on the right the shift t -> t + T is
    the base derivation applied to each U-coefficient.  Cells with i + j
    beyond the stored order carry no information and are skipped (the
    effective orders are recorded in the report).
    """
    if isinstance(m.base, SeriesThetaRing):
        raise ShiftUnavailable(
            "cocycle check needs exact coefficient shifts; "
            "truncated-series coefficients lose precision"
        )
    K = m.order
    eff_T, eff_U = min(K_T, K), min(K_U, K)
    field = m.base.field
    # theta of every U-coefficient matrix, up to T-order eff_T
    coeff_mats = [m.coefficient_matrix(j) for j in range(eff_U + 1)]
    shifted = [
        _theta_entrywise(m.base, coeff_mats[j], eff_T) for j in range(eff_U + 1)
    ]
    entries = []
    for i in range(eff_T + 1):
        for j in range(eff_U + 1):
            if i + j > K:
                continue
            lhs = [
                [entry * binomial(i + j, i, field) for entry in row]
                for row in m.coefficient_matrix(i + j)
            ]
            rhs = None
            for a in range(i + 1):
                b = i - a
                term = mat_mul(
                    m.coefficient_matrix(a),
                    [[s.coeff(b) for s in row] for row in shifted[j]],
                )
                rhs = term if rhs is None else freeze(
                    [
                        [x + y for x, y in zip(r1, r2)]
                        for r1, r2 in zip(rhs, term)
                    ]
                )
            for r in range(m.rank):
                for c in range(m.rank):
                    if not lhs[r][c] == rhs[r][c]:
                        entries.append(
                            {
                                "law": "cocycle",
                                "sample": f"entry[{r}][{c}]",
                                "indices": f"T^{i} U^{j}",
                                "lhs": str(lhs[r][c]),
                                "rhs": str(rhs[r][c]),
                            }
                        )
    name = "check_cocycle"
    if entries:
        return failure(name, entries, K_T=eff_T, K_U=eff_U)
    return success(name, K_T=eff_T, K_U=eff_U)


def module_theta(m: IdModuleSpec, vec, K: int):
    """Derivation of a coordinate vector: theta_M(v) = A * theta(v).

    ``vec`` is a tuple of base elements (coordinates in the distinguished
    generators); the result is a T-series of coordinate vectors.
    """
    K = min(K, m.order)
    theta_vec = [m.base.theta(m.base.coerce(v), K) for v in vec]
    out = []
    for n in range(K + 1):
        coords = []
        for i in range(m.rank):
            acc = None
            for a in range(n + 1):
                Aa = m.coefficient_matrix(a)
                for j in range(m.rank):
                    term = Aa[i][j] * theta_vec[j].coeff(n - a)
                    acc = term if acc is None else acc + term
            coords.append(acc)
        out.append(tuple(coords))
    return out  # list indexed by T-power


def check_module_iteration_rule(m: IdModuleSpec, samples, K: int) -> CheckResult:
    """Indexwise iteration rule for theta_M on coordinate-vector samples."""
    K = min(K, m.order)
    field = m.base.field
    entries = []
    for vec in samples:
        vec = tuple(m.base.coerce(v) for v in vec)
        th = module_theta(m, vec, K)
        for j in range(K + 1):
            nested = module_theta(m, th[j], K - j)
            for i in range(K - j + 1):
                lhs = nested[i]
                rhs = tuple(x * binomial(i + j, i, field) for x in th[i + j])
                if any(not a == b for a, b in zip(lhs, rhs)):
                    entries.append(
                        {
                            "law": "module-iteration",
                            "sample": "(" + ", ".join(str(v) for v in vec) + ")",
                            "indices": f"({i},{j})",
                            "lhs": "(" + ", ".join(str(v) for v in lhs) + ")",
                            "rhs": "(" + ", ".join(str(v) for v in rhs) + ")",
                        }
                    )
    if entries:
        return failure("module_iteration_rule", entries, K=K)
    return success("module_iteration_rule", K=K, samples=len(samples))


def from_derivation_matrix(base, D, K: int) -> IdModuleSpec:
    """Characteristic-zero construction from an ordinary derivation matrix.

    A_0 = identity, (n+1) A_{n+1} = theta_1(A_n) + D A_n; the resulting
    spec satisfies the cocycle identity.
    """
    if base.field.characteristic != 0:
        raise CharNotZero(
            "the derivation recursion divides by n+1; "
            "no such construction exists in positive characteristic"
        )
    D = freeze([[base.coerce(entry) for entry in row] for row in D])
    r = len(D)
    one = base.one()
    mats = [identity(r, one)]
    for n in range(K):
        prev = mats[-1]
        d_prev = [
            [base.theta(prev[i][j], 1).coeff(1) for j in range(r)]
            for i in range(r)
        ]
        DA = mat_mul(D, prev)
        inv = base.field.scalar(n + 1).inverse()
        mats.append(
            freeze(
                [
                    [(d_prev[i][j] + DA[i][j]) * inv for j in range(r)]
                    for i in range(r)
                ]
            )
        )
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            row.append(TruncSeries("T", K, [mats[n][i][j] for n in range(K + 1)]))
        rows.append(row)
    return IdModuleSpec(base, r, freeze(rows))


def radicand_module(base, m: int, radicand=None, K: int = 8) -> IdModuleSpec:
    """Rank-one module of an m-th root of a unit f of the base:
    A(t, T) = (theta(f)/f)^(1/m), defined whenever m is prime to the
    characteristic.  Default radicand is t (which must then be inverted)."""
    p = base.field.characteristic
    if p and m % p == 0:
        raise RootObstruction(f"characteristic {p} divides {m}")
    if radicand is None:
        if not isinstance(base, LocalizedPolyThetaRing):
            raise NotAUnit("default radicand t needs a base where t is inverted")
        radicand = base.t()
    f = base.coerce(radicand)
    ratio = base.theta(f, K) * f.inverse()
    A = mth_root(ratio, m)
    return IdModuleSpec(base, 1, freeze([[A]]))


def direct_sum(m1: IdModuleSpec, m2: IdModuleSpec) -> IdModuleSpec:
    _require_same_base(m1, m2)
    zero_series = m1.A[0][0].zero()
    r1, r2 = m1.rank, m2.rank
    rows = []
    for i in range(r1 + r2):
        row = []
        for j in range(r1 + r2):
            if i < r1 and j < r1:
                row.append(m1.A[i][j])
            elif i >= r1 and j >= r1:
                row.append(m2.A[i - r1][j - r1])
            else:
                row.append(zero_series)
        rows.append(row)
    return IdModuleSpec(m1.base, r1 + r2, freeze(rows))


def tensor_product(m1: IdModuleSpec, m2: IdModuleSpec) -> IdModuleSpec:
    """Kronecker product with T-series coefficient convolution."""
    _require_same_base(m1, m2)
    r1, r2 = m1.rank, m2.rank
    rows = []
    for a in range(r1):
        for b in range(r2):
            row = []
            for i in range(r1):
                for j in range(r2):
                    row.append(m1.A[a][i] * m2.A[b][j])
            rows.append(row)
    return IdModuleSpec(m1.base, r1 * r2, freeze(rows))


def _require_same_base(m1, m2):
    if m1.base != m2.base:
        raise BaseMismatch("modules live over different bases")
    if m1.order != m2.order:
        raise BaseMismatch(
            f"mixed truncation orders {m1.order} and {m2.order}"
        )


@dataclass(frozen=True)
class LocalCoverData:
    """Cover elements x_i with exponents n_i, a partition of unity
    sum a_i x_i^(n_i) = 1, and optional local basis/transition matrices."""

    x: tuple  # Poly
    n: tuple  # naturals
    a: tuple  # base elements
    basis_mats: tuple = None  # per piece, r x r over base (None = identity)
    transitions: dict = None  # (i, j) -> r x r over base


def trivial_cover(base) -> LocalCoverData:
    return LocalCoverData(
        x=(Poly.constant(base.field, 1),),
        n=(0,),
        a=(base.one(),),
    )


def is_trivial_cover(cover: LocalCoverData) -> bool:
    return (
        len(cover.x) == 1
        and cover.n[0] == 0
        and cover.x[0].degree == 0
        and cover.basis_mats is None
    )


def validate_cover(cover: LocalCoverData, m: IdModuleSpec) -> CheckResult:
    """Partition identity, nonzero cover elements, transition consistency."""
    base = m.base
    entries = []
    acc = None
    for xi, ni, ai in zip(cover.x, cover.n, cover.a):
        if xi.is_zero():
            entries.append(
                {
                    "law": "nonzero-cover-element",
                    "sample": str(xi),
                    "indices": "",
                    "lhs": "0",
                    "rhs": "nonzero",
                }
            )
            continue
        term = base.coerce(ai) * base.coerce(xi) ** ni
        acc = term if acc is None else acc + term
    one = base.one()
    if acc is None or not acc == one:
        entries.append(
            {
                "law": "partition-of-unity",
                "sample": "sum a_i x_i^n_i",
                "indices": "",
                "lhs": str(acc),
                "rhs": "1",
            }
        )
    if cover.transitions:
        for (i, j), Tij in sorted(cover.transitions.items()):
            Tji = cover.transitions.get((j, i))
            if Tji is None:
                continue
            scale = base.coerce(cover.x[i]) ** cover.n[i] * base.coerce(cover.x[j]) ** cover.n[j]
            want = [
                [scale if r == c else base.zero() for c in range(m.rank)]
                for r in range(m.rank)
            ]
            got = mat_mul(
                freeze([[base.coerce(v) for v in row] for row in Tij]),
                freeze([[base.coerce(v) for v in row] for row in Tji]),
            )
            if not mat_eq(got, freeze(want)):
                entries.append(
                    {
                        "law": "transition-consistency",
                        "sample": f"T[{i}][{j}] * T[{j}][{i}]",
                        "indices": "",
                        "lhs": str(got),
                        "rhs": f"x_{i}^n_{i} x_{j}^n_{j} * identity",
                    }
                )
    if entries:
        return failure("validate_cover", entries, pieces=len(cover.x))
    return success("validate_cover", pieces=len(cover.x))
