"""Seifert bundle presentations over connected sums of CP^2.

The base is a connected sum of `charts` copies of CP^2.  Its second
cohomology has the chart basis H_0, ..., H_k with the identity intersection
form, and its second Stiefel-Whitney class is the all-ones vector mod 2 (by
the Wu identity x.x = w2.x on a closed oriented 4-manifold, applied to the
identity form).

A presentation consists of branch divisors (each living in a single chart,
with a surface type, a multiplicity m >= 2 and an orbit invariant b coprime
to m) plus an integer twist vector: the first Chern class of the background
line bundle in chart coordinates.  Divisors in the same chart intersect, so
their multiplicities must be pairwise coprime; divisors in distinct charts
are disjoint.  Nonorientable divisors only occur with m = 2, since for
m >= 3 the normal plane bundle is orientable.

The rational first Chern class of the total space over the base is

    c1 = twist + sum over divisors of (b/m) * [D],

and clearing denominators with m(X) = lcm of the multiplicities gives the
integral class `chern_mu`, the Chern class of the quotient circle bundle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Orientable",
    "Nonorientable",
    "SurfaceType",
    "Divisor",
    "SeifertSpec",
    "SpecIssue",
    "SpecValidationError",
    "SpecSchemaError",
    "base_w2",
    "chern_class",
    "chern_mu",
    "COPRIMALITY",
    "BAD_ORBIT_INVARIANT",
    "NONORIENTABLE_M",
    "BAD_CHART",
    "BAD_MULTIPLICITY",
    "TWIST_LENGTH",
    "BAD_H2_CLASS",
]

COPRIMALITY = "COPRIMALITY"
BAD_ORBIT_INVARIANT = "BAD_ORBIT_INVARIANT"
NONORIENTABLE_M = "NONORIENTABLE_M"
BAD_CHART = "BAD_CHART"
BAD_MULTIPLICITY = "BAD_MULTIPLICITY"
TWIST_LENGTH = "TWIST_LENGTH"
BAD_H2_CLASS = "BAD_H2_CLASS"


@dataclass(frozen=True)
class Orientable:
    """Closed orientable surface of the given genus; dim H1(D, Z/2) = 2g."""

    genus: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be >= 0")

    @property
    def h1_mod2_dim(self) -> int:
        return 2 * self.genus


@dataclass(frozen=True)
class Nonorientable:
    """Closed nonorientable surface with dim H1(D, Z/2) = b1 >= 1."""

    b1: int

    def __post_init__(self) -> None:
        if self.b1 < 1:
            raise ValueError("b1 must be >= 1")

    @property
    def h1_mod2_dim(self) -> int:
        return self.b1


SurfaceType = Union[Orientable, Nonorientable]


@dataclass(frozen=True)
class Divisor:
    """A branch divisor: chart index, surface type, multiplicity and orbit invariant.

    h2_class is the divisor's homology class in chart coordinates; None
    means the generator of its chart (the default produced by the
    constructions, and the only case the cohomology certificates cover).
    Arithmetic invariants (gcd(b, m) = 1, m >= 2, nonorientable implies
    m = 2) are checked by SeifertSpec.validate, not here, so invalid data
    can be represented and rejected with coded issues.
    """

    chart: int
    surface: SurfaceType
    m: int
    b: int
    h2_class: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.chart < 0:
            raise ValueError("chart index must be >= 0")
        if self.h2_class is not None:
            object.__setattr__(self, "h2_class", tuple(int(x) for x in self.h2_class))

    def resolved_class(self, charts: int) -> tuple[int, ...]:
        if self.h2_class is not None:
            return self.h2_class
        return tuple(1 if l == self.chart else 0 for l in range(charts))

    def is_generator_class(self, charts: int) -> bool:
        return self.h2_class is None or self.resolved_class(charts) == tuple(
            1 if l == self.chart else 0 for l in range(charts)
        )


@dataclass(frozen=True)
class SpecIssue:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class SpecValidationError(ValueError):
    def __init__(self, issues: list[SpecIssue]):
        self.issues = issues
        super().__init__("; ".join(str(i) for i in issues))


class SpecSchemaError(ValueError):
    pass


def base_w2(charts: int) -> tuple[int, ...]:
    """w2 of the connected sum of `charts` copies of CP^2, in chart coordinates."""
    return (1,) * charts


@dataclass(frozen=True)
class SeifertSpec:
    """A Seifert bundle presentation over the connected sum of `charts` CP^2's."""

    charts: int
    divisors: tuple[Divisor, ...]
    twist: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.charts < 1:
            raise ValueError("need at least one chart")
        object.__setattr__(self, "divisors", tuple(self.divisors))
        object.__setattr__(self, "twist", tuple(int(h) for h in self.twist))

    @property
    def k(self) -> int:
        return self.charts - 1

    def multiplicity_lcm(self) -> int:
        """m(X): the lcm of all multiplicities, 1 when there are no divisors."""
        return math.lcm(*(d.m for d in self.divisors)) if self.divisors else 1

    def validate(self) -> list[SpecIssue]:
        """All invariant violations, each tagged with a stable code."""
        issues: list[SpecIssue] = []
        if len(self.twist) != self.charts:
            issues.append(
                SpecIssue(TWIST_LENGTH, f"twist has {len(self.twist)} entries, need {self.charts}")
            )
        for idx, d in enumerate(self.divisors):
            if d.chart >= self.charts:
                issues.append(SpecIssue(BAD_CHART, f"divisor {idx} chart {d.chart} >= {self.charts}"))
            if d.m < 2:
                issues.append(SpecIssue(BAD_MULTIPLICITY, f"divisor {idx} multiplicity {d.m} < 2"))
            elif not 1 <= d.b < d.m or math.gcd(d.b, d.m) != 1:
                issues.append(
                    SpecIssue(BAD_ORBIT_INVARIANT, f"divisor {idx} has (m, b) = ({d.m}, {d.b})")
                )
            if isinstance(d.surface, Nonorientable) and d.m != 2:
                issues.append(
                    SpecIssue(NONORIENTABLE_M, f"divisor {idx} is nonorientable with m = {d.m}")
                )
            if d.h2_class is not None and len(d.h2_class) != self.charts:
                issues.append(
                    SpecIssue(BAD_H2_CLASS, f"divisor {idx} class has {len(d.h2_class)} coordinates")
                )
        for a in range(len(self.divisors)):
            for b in range(a + 1, len(self.divisors)):
                da, db = self.divisors[a], self.divisors[b]
                if da.chart == db.chart and math.gcd(da.m, db.m) != 1:
                    issues.append(
                        SpecIssue(
                            COPRIMALITY,
                            f"chart {da.chart} carries multiplicities {da.m} and {db.m}",
                        )
                    )
        return issues

    def require_valid(self) -> None:
        issues = self.validate()
        if issues:
            raise SpecValidationError(issues)

    def all_generator_classes(self) -> bool:
        return all(d.is_generator_class(self.charts) for d in self.divisors)

    def to_json_dict(self) -> dict:
        divisors = []
        for d in self.divisors:
            if isinstance(d.surface, Orientable):
                surface = {"orientable": True, "genus": d.surface.genus}
            else:
                surface = {"orientable": False, "b1": d.surface.b1}
            entry = {"chart": d.chart, "surface": surface, "m": d.m, "b": d.b}
            if d.h2_class is not None:
                entry["h2_class"] = list(d.h2_class)
            divisors.append(entry)
        return {"charts": self.charts, "divisors": divisors, "twist": list(self.twist)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SeifertSpec":
        """Strict decoding: unknown fields are rejected by name, and the
        decoded spec must pass validate()."""
        if not isinstance(data, dict):
            raise SpecSchemaError("spec must be a JSON object")
        extra = set(data) - {"charts", "divisors", "twist"}
        if extra:
            raise SpecSchemaError(f"unknown field {sorted(extra)[0]!r}")
        missing = {"charts", "divisors", "twist"} - set(data)
        if missing:
            raise SpecSchemaError(f"missing field {sorted(missing)[0]!r}")
        divisors = []
        for idx, entry in enumerate(data["divisors"]):
            if not isinstance(entry, dict):
                raise SpecSchemaError(f"divisor {idx} must be an object")
            extra = set(entry) - {"chart", "surface", "m", "b", "h2_class"}
            if extra:
                raise SpecSchemaError(f"unknown field {sorted(extra)[0]!r} in divisor {idx}")
            missing = {"chart", "surface", "m", "b"} - set(entry)
            if missing:
                raise SpecSchemaError(f"missing field {sorted(missing)[0]!r} in divisor {idx}")
            surf = entry["surface"]
            if not isinstance(surf, dict) or "orientable" not in surf:
                raise SpecSchemaError(f"divisor {idx} surface must carry 'orientable'")
            if surf["orientable"]:
                extra = set(surf) - {"orientable", "genus"}
                if extra:
                    raise SpecSchemaError(f"unknown field {sorted(extra)[0]!r} in surface {idx}")
                surface: SurfaceType = Orientable(genus=surf.get("genus", 0))
            else:
                extra = set(surf) - {"orientable", "b1"}
                if extra:
                    raise SpecSchemaError(f"unknown field {sorted(extra)[0]!r} in surface {idx}")
                if "b1" not in surf:
                    raise SpecSchemaError(f"missing field 'b1' in nonorientable surface {idx}")
                surface = Nonorientable(b1=surf["b1"])
            divisors.append(
                Divisor(
                    chart=entry["chart"],
                    surface=surface,
                    m=entry["m"],
                    b=entry["b"],
                    h2_class=tuple(entry["h2_class"]) if "h2_class" in entry else None,
                )
            )
        spec = cls(charts=data["charts"], divisors=tuple(divisors), twist=tuple(data["twist"]))
        spec.require_valid()
        return spec

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "SeifertSpec":
        return cls.from_json_dict(json.loads(text))


def chern_class(spec: SeifertSpec) -> tuple[Fraction, ...]:
    """c1 of the total space over the base: twist + sum of (b/m) [D], exact.

    Linear in the twist vector.
    """
    spec.require_valid()
    coords = [Fraction(h) for h in spec.twist]
    for d in spec.divisors:
        weight = Fraction(d.b, d.m)
        for l, x in enumerate(d.resolved_class(spec.charts)):
            coords[l] += weight * x
    return tuple(coords)


def chern_mu(spec: SeifertSpec) -> tuple[int, ...]:
    """The integral class m(X) * c1, the Chern class of the quotient circle bundle."""
    m_x = spec.multiplicity_lcm()
    out = []
    for c in chern_class(spec):
        scaled = c * m_x
        if scaled.denominator != 1:
            raise ArithmeticError(f"m(X) = {m_x} failed to clear denominator of {c}")
        out.append(int(scaled))
    return tuple(out)
