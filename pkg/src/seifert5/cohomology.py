"""Recompute the invariants of a Seifert total space from its presentation.

All formulas are the evaluated consequences, on a smooth connected-sum-of-
CP^2 base, of the spectral sequence of the quotient map f: L -> X.  With
H^1(X) = H^3(X) = 0 and H^2(X) free they collapse to exact integer linear
algebra:

* The restriction map H^2(X, Z) -> sum_i H^2(D_i, Z/m_i) is the matrix of
  intersection numbers H_l . [D_i] with row i read mod m_i.  It is
  surjective iff, for every prime p, the rows with p | m_i are independent
  over F_p.

* When the restriction map is surjective, the order of H_1(L, Z) is the
  gcd of the coordinates of the integral class c1(L/mu); order one means L
  is simply connected (for the standard divisor arrangements, whose
  complement has abelian fundamental group).  When it is not surjective,
  H_1 surjects onto the cokernel, which is reported as a lower bound.

* With H_1 = 0, both the torsion of H_2(L) and the torsion of H^3(L) are
  sum_i (Z/m_i)^beta_i with beta_i = dim H_1(D_i, Z/2); the free rank of
  H_2(L) is charts - 1.

* w2(L) is the pullback of w2(X) + sum b_i [D_i] + twist (all divisors
  orientable).  Two generator families provably die under the mod-2
  pullback: c1(L/mu) and every [D_i] with even m_i; their span K2 gives
  the certificate for Wu invariant 0.  For INFINITY the certificate is an
  injectivity argument on the even-free charts: restricting the bundle to
  those charts plus a single even chart, the mod-2 pullback is injective
  on the even-free coordinates because the remaining cokernel has odd
  order.  Any nonorientable divisor forces Wu invariant 1.  When no
  certificate applies the honest answer is INDETERMINATE.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .abgroup import AbelianGroup, IntMatrix, factorize, group_from_cokernel
from .classify import INFINITY, encode_i
from .seifert import Nonorientable, SeifertSpec, chern_class, chern_mu

__all__ = [
    "INDETERMINATE",
    "Indeterminate",
    "UnknownNonzero",
    "RestrictionMap",
    "CohomologyReport",
    "restriction_matrix",
    "h1_order",
    "h2_group",
    "h3_torsion",
    "w2_class",
    "wu_invariant",
    "simply_connected",
    "full_report",
]


class Indeterminate:
    """Fourth answer for the Wu invariant: no vanishing or nonvanishing
    certificate applies, so the engine abstains instead of guessing."""

    _instance = None

    def __new__(cls) -> "Indeterminate":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INDETERMINATE"


INDETERMINATE = Indeterminate()


@dataclass(frozen=True)
class UnknownNonzero:
    """H_1 is provably nonzero but its exact order is not computed here;
    carries the cokernel of the restriction map as a lower bound."""

    lower_bound: AbelianGroup


@dataclass(frozen=True)
class RestrictionMap:
    """Rows of intersection numbers against the chart basis, row i mod m_i."""

    rows: tuple[tuple[int, ...], ...]
    moduli: tuple[int, ...]

    def is_surjective(self) -> bool:
        primes = sorted({p for m in self.moduli for p in factorize(m)})
        for p in primes:
            rows = [row for row, m in zip(self.rows, self.moduli) if m % p == 0]
            if _rank_mod_p(rows, p) < len(rows):
                return False
        return True

    def cokernel(self) -> AbelianGroup:
        """Cokernel of Z^charts -> sum_i Z/m_i as an abelian group."""
        n = len(self.rows)
        width = len(self.rows[0]) if self.rows else 1
        rows = []
        for i, row in enumerate(self.rows):
            diag = tuple(self.moduli[i] if j == i else 0 for j in range(n))
            rows.append(tuple(row) + diag)
        if not rows:
            return AbelianGroup.trivial()
        return group_from_cokernel(IntMatrix.from_rows(rows)) if width else AbelianGroup.trivial()


def _rank_mod_p(rows: list[tuple[int, ...]], p: int) -> int:
    mat = [[x % p for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] % p), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [(a - factor * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def restriction_matrix(spec: SeifertSpec) -> RestrictionMap:
    """The map H^2(X, Z) -> sum_i H^2(D_i, Z/m_i) in chart coordinates.

    Entry (i, l) is the intersection number H_l . [D_i] reduced mod m_i;
    the intersection form of the base is the identity, so the row is just
    the divisor's class vector.
    """
    spec.require_valid()
    rows = []
    for d in spec.divisors:
        cls = d.resolved_class(spec.charts)
        rows.append(tuple(x % d.m for x in cls))
    return RestrictionMap(rows=tuple(rows), moduli=tuple(d.m for d in spec.divisors))


def h1_order(spec: SeifertSpec) -> int | UnknownNonzero:
    """Order of H_1 of the total space; 1 means trivial, 0 means infinite.

    When the restriction map is surjective this is the gcd of the
    coordinates of c1(L/mu); a primitive class gives H_1 = 0.  Otherwise
    the exact order is out of reach and the cokernel is returned as an
    UnknownNonzero lower bound.
    """
    rm = restriction_matrix(spec)
    if not rm.is_surjective():
        return UnknownNonzero(lower_bound=rm.cokernel())
    return math.gcd(*chern_mu(spec))


def _h2_torsion_counts(spec: SeifertSpec) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for d in spec.divisors:
        beta = d.surface.h1_mod2_dim
        if beta == 0:
            continue
        for p, e in factorize(d.m).items():
            key = (p, e)
            counts[key] = counts.get(key, 0) + beta
    return counts


def _require_h1_trivial(spec: SeifertSpec, what: str) -> None:
    order = h1_order(spec)
    if order != 1:
        raise ValueError(f"{what} requires |H_1| = 1, but h1_order gave {order!r}")


def h2_group(spec: SeifertSpec) -> AbelianGroup:
    """H_2 of the total space when H_1 = 0.

    Free rank charts - 1; each divisor contributes (Z/m)^beta with
    beta = dim H_1(D, Z/2), split into primary parts.  Genus-zero
    orientable divisors contribute nothing.
    """
    _require_h1_trivial(spec, "h2_group")
    return AbelianGroup.from_counts(spec.charts - 1, _h2_torsion_counts(spec))


def h3_torsion(spec: SeifertSpec) -> AbelianGroup:
    """Torsion of H^3 of the total space; isomorphic to the H_2 torsion."""
    _require_h1_trivial(spec, "h3_torsion")
    return AbelianGroup.from_counts(0, _h2_torsion_counts(spec))


def w2_class(spec: SeifertSpec) -> tuple[int, ...]:
    """The class over the base whose pullback is w2 of the total space.

    Only defined when every divisor is orientable: w = w2(X) + sum b_i [D_i]
    + twist, reduced mod 2, in chart coordinates.
    """
    spec.require_valid()
    if any(isinstance(d.surface, Nonorientable) for d in spec.divisors):
        raise ValueError("w2_class needs orientable divisors; use wu_invariant instead")
    coords = [1 + h for h in spec.twist]
    for d in spec.divisors:
        for l, x in enumerate(d.resolved_class(spec.charts)):
            coords[l] += d.b * x
    return tuple(x % 2 for x in coords)


def _bits(vec) -> int:
    mask = 0
    for j, x in enumerate(vec):
        if x % 2:
            mask |= 1 << j
    return mask


class _F2Span:
    """Row-reduced span of F_2 vectors packed as bitmasks."""

    def __init__(self, vectors=()):
        self.basis: list[int] = []
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        for b in self.basis:
            v = min(v, v ^ b)
        return v

    def add(self, v: int) -> None:
        v = self.reduce(v)
        if v:
            self.basis.append(v)
            self.basis.sort(reverse=True)

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0


def _even_kernel_span(spec: SeifertSpec) -> _F2Span:
    """K2: the certified subspace of the mod-2 kernel of the pullback.

    Spanned by c1(L/mu) mod 2 together with the classes of even-multiplicity
    divisors (the pullback of [D] is m times a class, so it dies mod 2 for
    even m).
    """
    span = _F2Span([_bits(chern_mu(spec))])
    for d in spec.divisors:
        if d.m % 2 == 0:
            span.add(_bits(d.resolved_class(spec.charts)))
    return span


def wu_invariant(spec: SeifertSpec):
    """The Wu invariant of the total space: 0, 1, INFINITY or INDETERMINATE.

    Requires |H_1| = 1.  A nonorientable divisor forces 1.  Otherwise let
    w be the w2 class over the base and K2 the certified mod-2 kernel:
    w in K2 certifies 0.  If w is congruent mod K2 to a vector supported
    on charts carrying no even multiplicity, the pullback of that vector
    is provably nonzero (restrict to those charts plus one even chart;
    the residual cokernel has odd order, so the mod-2 pullback is
    injective there), certifying INFINITY.  Anything else is
    INDETERMINATE.
    """
    spec.require_valid()
    _require_h1_trivial(spec, "wu_invariant")
    if any(isinstance(d.surface, Nonorientable) for d in spec.divisors):
        return 1
    w = _bits(w2_class(spec))
    k2 = _even_kernel_span(spec)
    if k2.contains(w):
        return 0
    if not spec.all_generator_classes():
        return INDETERMINATE
    even_charts = {d.chart for d in spec.divisors if d.m % 2 == 0}
    witness_span = _F2Span(k2.basis)
    for j in range(spec.charts):
        if j not in even_charts:
            witness_span.add(1 << j)
    if witness_span.contains(w):
        return INFINITY
    return INDETERMINATE


def simply_connected(spec: SeifertSpec) -> bool:
    """Triviality of the fundamental group, via |H_1| = 1.

    Certified only for generator divisor classes: those are the standard
    transverse arrangements, whose complements have abelian fundamental
    group, so pi_1 vanishes exactly when H_1 does.
    """
    spec.require_valid()
    if not spec.all_generator_classes():
        raise ValueError("simply_connected is only certified for generator divisor classes")
    return h1_order(spec) == 1


@dataclass(frozen=True)
class CohomologyReport:
    """Everything recomputed from a presentation in one value."""

    h1_order: int | UnknownNonzero
    h2: AbelianGroup | None
    h3_tors: AbelianGroup | None
    c1: tuple[Fraction, ...]
    c1_mu: tuple[int, ...]
    wu: object
    simply_connected: bool

    def to_json_dict(self) -> dict:
        if isinstance(self.h1_order, UnknownNonzero):
            h1: object = "unknown_nonzero"
            h1_bound = self.h1_order.lower_bound.to_json_dict()
        else:
            h1 = self.h1_order
            h1_bound = None
        if isinstance(self.wu, Indeterminate):
            wu: object = "indeterminate"
        else:
            wu = encode_i(self.wu)
        out = {
            "h1_order": h1,
            "h2": self.h2.to_json_dict() if self.h2 is not None else None,
            "h3_torsion": self.h3_tors.to_json_dict() if self.h3_tors is not None else None,
            "c1": [str(c) for c in self.c1],
            "c1_mu": list(self.c1_mu),
            "wu": wu,
            "simply_connected": self.simply_connected,
        }
        if h1_bound is not None:
            out["h1_torsion_lower_bound"] = h1_bound
        return out


def full_report(spec: SeifertSpec) -> CohomologyReport:
    """Compose the whole engine over one presentation.

    H_2 and the H^3 torsion are present exactly when |H_1| = 1; with H_1
    unsettled the Wu invariant is reported INDETERMINATE.
    """
    spec.require_valid()
    if not spec.all_generator_classes():
        raise ValueError("full_report is only certified for generator divisor classes")
    order = h1_order(spec)
    c1 = chern_class(spec)
    c1_mu = chern_mu(spec)
    if order == 1:
        h2 = h2_group(spec)
        h3 = h3_torsion(spec)
        wu = wu_invariant(spec)
        sc = True
    else:
        h2 = None
        h3 = None
        wu = INDETERMINATE
        sc = False
    return CohomologyReport(
        h1_order=order, h2=h2, h3_tors=h3, c1=c1, c1_mu=c1_mu, wu=wu, simply_connected=sc
    )
