"""Copula generating functions for shock models.

Five kinds of generator are distinguished by a string tag:

* ``"phi"`` / ``"psi"`` -- max-type generators: increasing on [0,1] with
  value 0 at 0 and 1 at 1, and u -> phi(u)/u non-increasing on (0,1].
* ``"chi"``             -- min-type generator: increasing with the same
  endpoint values, and the substar transform non-increasing (see
  :meth:`Generator.substar`).
* ``"rmm_f"`` / ``"rmm_g"`` -- reflected-maxmin generators: f(0) = f(1) = 0,
  f(u) + u increasing, and u -> f(u)/u non-increasing on (0,1] with
  f(1)/1 = 0.

The central constructors are :func:`extend_phi`, :func:`extend_psi` and
:func:`extend_chi`, which build the canonical generator of a shock-model
lifetime from the component distribution and the shock distribution.  For a
max-type lifetime G = F_X * F_Z the extension evaluates, for u in (0, 1),

    x0  = smallest point with G(x0-) <= u <= G(x0+)
    u_l = F_X(x0-) * F_Z(x0),   u_u = F_X(x0+) * F_Z(x0)

    phi(u) = u / F_Z(x0)   if u_l <= u <= u_u   (checked first, so ties at
             F_X(x0-)      if u < u_l            branch edges resolve to the
             F_X(x0+)      if u > u_u            middle branch)

and for a min-type lifetime G = F_Y + F_Z - F_Y F_Z,

    v_l = F_Y(y0-) + F_Z(y0) - F_Y(y0-) F_Z(y0)
    v_u = F_Y(y0+) + F_Z(y0) - F_Y(y0+) F_Z(y0)

    chi(v) = (v - F_Z(y0)) / (1 - F_Z(y0))   if v_l <= v <= v_u
             F_Y(y0-)                         if v < v_l
             F_Y(y0+)                         if v > v_u

Any admissible x0 produces the same generator; the smallest is used, and
:meth:`consistency_gap` measures the (theoretically zero) difference against
the largest admissible point as a numerical diagnostic.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from bisect import bisect_left
from dataclasses import dataclass, field

from .distfn import (
    DistributionFn,
    Product,
    SurvivalComplementProduct,
    from_spec as dist_from_spec,
    lifetime_max,
    lifetime_min,
)

__all__ = [
    "PHI",
    "PSI",
    "CHI",
    "RMM_F",
    "RMM_G",
    "DegenerateModelError",
    "GeneratorDomainError",
    "Generator",
    "ExtendedMaxGenerator",
    "ExtendedMinGenerator",
    "RMMFromPhi",
    "RMMFromChi",
    "TruncatedLinear",
    "IdentityGenerator",
    "UnitGenerator",
    "ZeroGenerator",
    "PiecewiseLinearGenerator",
    "extend_phi",
    "extend_psi",
    "extend_chi",
    "to_rmm",
    "tabulate",
    "validate",
    "ValidationIssue",
    "ValidationReport",
    "generator_from_spec",
]

PHI = "phi"
PSI = "psi"
CHI = "chi"
RMM_F = "rmm_f"
RMM_G = "rmm_g"

_MAX_KINDS = (PHI, PSI)
_RMM_KINDS = (RMM_F, RMM_G)
_ALL_KINDS = (PHI, PSI, CHI, RMM_F, RMM_G)

# Cutoff for declaring the ratio limit at 0 infinite: star transforms of
# valid generators are non-increasing, so a probe at STAR_PROBE bounds the
# limit from below; anything above STAR_INF_CUTOFF is reported as inf.
STAR_PROBE = 2.0**-40
STAR_INF_CUTOFF = 1e9

# Relative tolerance for the chi(v) = v test inside substar.  Values this
# close to v are preimage rounding, not a genuine gap; a true finite
# substar value would have to exceed 1/SUBSTAR_SNAP to be misread, at
# which point inf is the better answer anyway.
SUBSTAR_SNAP = 1e-12


class DegenerateModelError(ValueError):
    """A generator branch needs a division the model cannot support."""


class GeneratorDomainError(ValueError):
    """A transform was queried outside its domain."""


def _survival_join(a: float, b: float) -> float:
    """a + b - a*b, kept exact when either argument is 1."""
    if a == 1.0 or b == 1.0:
        return 1.0
    return a + b - a * b


class Generator(ABC):
    """A generating function on [0, 1], tagged with its kind."""

    kind: str

    @abstractmethod
    def __call__(self, u: float) -> float:
        ...

    def breakpoints(self) -> tuple[float, ...]:
        """u-coordinates where the generator changes branch (may be empty)."""
        return ()

    def star(self, u: float) -> float:
        """The ratio transform gen(u)/u on (0, 1].

        At u = 0 the right limit is returned when it is finite, and
        ``math.inf`` otherwise.  The generic implementation detects
        infinity by probing at ``STAR_PROBE`` (valid star transforms are
        non-increasing, so the probe is a lower bound for the limit);
        closed-form subclasses override with the exact value.
        """
        if not 0.0 <= u <= 1.0:
            raise GeneratorDomainError(f"star is defined on [0, 1], got {u!r}")
        if u == 0.0:
            return self._star_at_zero()
        return self(u) / u

    def _star_at_zero(self) -> float:
        probe = self(STAR_PROBE) / STAR_PROBE
        return math.inf if probe > STAR_INF_CUTOFF else probe

    def substar(self, v: float) -> float:
        """Min-type ratio transform (1 - chi(v)) / (v - chi(v)).

        Returns 1 at v = 1, ``math.inf`` where chi(v) = v < 1.  The
        equality test uses a relative tolerance: where chi follows a
        continuous stretch of the lifetime curve it equals v only up to
        preimage rounding, and dividing by that noise would produce huge
        values of arbitrary sign instead of the intended infinity.
        """
        if self.kind != CHI:
            raise GeneratorDomainError(f"substar is defined for chi generators, not {self.kind!r}")
        if not 0.0 <= v <= 1.0:
            raise GeneratorDomainError(f"substar is defined on [0, 1], got {v!r}")
        if v == 1.0:
            return 1.0
        cv = self(v)
        if abs(v - cv) <= SUBSTAR_SNAP * v:
            return math.inf
        return (1.0 - cv) / (v - cv)

    def dagger(self, u: float) -> float:
        """Shock-recovery transform: u/phi(u) for max kinds on (0, 1],
        (u - chi(u)) / (1 - chi(u)) for chi on [0, 1], fixed to 1 at u = 1."""
        if self.kind in _MAX_KINDS:
            if not 0.0 < u <= 1.0:
                raise GeneratorDomainError("dagger of a max-type generator needs u in (0, 1]")
            pu = self(u)
            if pu == 0.0:
                raise DegenerateModelError(f"phi({u!r}) = 0; dagger undefined")
            return u / pu
        if self.kind == CHI:
            if not 0.0 <= u <= 1.0:
                raise GeneratorDomainError("dagger of a chi generator needs u in [0, 1]")
            if u == 1.0:
                return 1.0
            cu = self(u)
            if cu >= 1.0:
                raise DegenerateModelError(f"chi({u!r}) = 1 below 1; dagger undefined")
            return (u - cu) / (1.0 - cu)
        raise GeneratorDomainError(f"dagger is not defined for kind {self.kind!r}")


# ---------------------------------------------------------------------------
# canonical extensions from shock models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtendedMaxGenerator(Generator):
    """phi (or psi) extended from a max-type lifetime G = F_X * F_Z."""

    component: DistributionFn
    shock: DistributionFn
    kind: str = PHI
    lifetime: Product = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in _MAX_KINDS:
            raise ValueError(f"kind must be phi or psi, got {self.kind!r}")
        object.__setattr__(self, "lifetime", lifetime_max(self.component, self.shock))

    def __call__(self, u: float) -> float:
        u = float(u)
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        return self._value_at(u, self.lifetime.smallest_preimage(u))

    def value_with_largest_x0(self, u: float) -> float:
        u = float(u)
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 1.0
        return self._value_at(u, self.lifetime.largest_preimage(u))

    def _value_at(self, u: float, x0: float) -> float:
        lo = self.component.left_limit(x0)
        hi = self.component.right_limit(x0)
        z = self.shock.value(x0)
        u_l = lo * z
        u_u = hi * z
        if u_l <= u <= u_u:
            if z == 0.0:
                raise DegenerateModelError(
                    f"shock distribution is 0 at x0={x0!r} on the interpolating branch"
                )
            return u / z
        return lo if u < u_l else hi

    def consistency_gap(self, us) -> float:
        """max |phi(smallest x0) - phi(largest x0)| over the given arguments."""
        gap = 0.0
        for u in us:
            if 0.0 < u < 1.0:
                gap = max(gap, abs(self(u) - self.value_with_largest_x0(u)))
        return gap

    def breakpoints(self) -> tuple[float, ...]:
        pts = {0.0, 1.0}
        for xj in self.lifetime.jump_points():
            z = self.shock.value(xj)
            pts.add(self.lifetime.left_limit(xj))
            pts.add(self.lifetime.right_limit(xj))
            pts.add(self.component.left_limit(xj) * z)
            pts.add(self.component.right_limit(xj) * z)
        return tuple(sorted(p for p in pts if 0.0 <= p <= 1.0))


@dataclass(frozen=True)
class ExtendedMinGenerator(Generator):
    """chi extended from a min-type lifetime G = F_Y + F_Z - F_Y F_Z."""

    component: DistributionFn
    shock: DistributionFn
    kind: str = field(default=CHI, init=False)
    lifetime: SurvivalComplementProduct = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lifetime", lifetime_min(self.component, self.shock))

    def __call__(self, v: float) -> float:
        v = float(v)
        if v <= 0.0:
            return 0.0
        if v >= 1.0:
            return 1.0
        return self._value_at(v, self.lifetime.smallest_preimage(v))

    def value_with_largest_x0(self, v: float) -> float:
        v = float(v)
        if v <= 0.0:
            return 0.0
        if v >= 1.0:
            return 1.0
        return self._value_at(v, self.lifetime.largest_preimage(v))

    def _value_at(self, v: float, y0: float) -> float:
        lo = self.component.left_limit(y0)
        hi = self.component.right_limit(y0)
        z = self.shock.value(y0)
        v_l = _survival_join(lo, z)
        v_u = _survival_join(hi, z)
        if v_l <= v <= v_u:
            if z == 1.0:
                raise DegenerateModelError(
                    f"shock distribution is 1 at y0={y0!r} on the interpolating branch"
                )
            return (v - z) / (1.0 - z)
        return lo if v < v_l else hi

    def consistency_gap(self, vs) -> float:
        gap = 0.0
        for v in vs:
            if 0.0 < v < 1.0:
                gap = max(gap, abs(self(v) - self.value_with_largest_x0(v)))
        return gap

    def breakpoints(self) -> tuple[float, ...]:
        pts = {0.0, 1.0}
        for yj in self.lifetime.jump_points():
            z = self.shock.value(yj)
            lo = self.component.left_limit(yj)
            hi = self.component.right_limit(yj)
            pts.add(self.lifetime.left_limit(yj))
            pts.add(self.lifetime.right_limit(yj))
            pts.add(_survival_join(lo, z))
            pts.add(_survival_join(hi, z))
        return tuple(sorted(p for p in pts if 0.0 <= p <= 1.0))


def extend_phi(component: DistributionFn, shock: DistributionFn) -> ExtendedMaxGenerator:
    """Canonical phi with phi(G(x)) = F_X(x) wherever G(x) = F_X(x)F_Z(x) > 0."""
    return ExtendedMaxGenerator(component, shock, kind=PHI)


def extend_psi(component: DistributionFn, shock: DistributionFn) -> ExtendedMaxGenerator:
    """Same extension as :func:`extend_phi`, tagged for the second coordinate."""
    return ExtendedMaxGenerator(component, shock, kind=PSI)


def extend_chi(component: DistributionFn, shock: DistributionFn) -> ExtendedMinGenerator:
    """Canonical chi with chi(G(y)) = F_Y(y) wherever G(y) < 1."""
    return ExtendedMinGenerator(component, shock)


# ---------------------------------------------------------------------------
# reflected-maxmin transforms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RMMFromPhi(Generator):
    """f(u) = phi(u) - u."""

    base: Generator
    kind: str = field(default=RMM_F, init=False)

    def __post_init__(self) -> None:
        if self.base.kind not in _MAX_KINDS:
            raise ValueError(f"RMMFromPhi needs a phi/psi generator, got {self.base.kind!r}")

    def __call__(self, u: float) -> float:
        u = float(u)
        if u <= 0.0:
            return 0.0
        if u >= 1.0:
            return 0.0
        return self.base(u) - u

    def breakpoints(self) -> tuple[float, ...]:
        return self.base.breakpoints()


@dataclass(frozen=True)
class RMMFromChi(Generator):
    """g(w) = 1 - w - chi(1 - w)."""

    base: Generator
    kind: str = field(default=RMM_G, init=False)

    def __post_init__(self) -> None:
        if self.base.kind != CHI:
            raise ValueError(f"RMMFromChi needs a chi generator, got {self.base.kind!r}")

    def __call__(self, w: float) -> float:
        w = float(w)
        if w <= 0.0:
            return 0.0
        if w >= 1.0:
            return 0.0
        return 1.0 - w - self.base(1.0 - w)

    def breakpoints(self) -> tuple[float, ...]:
        return tuple(sorted(1.0 - b for b in self.base.breakpoints()))


def to_rmm(gen: Generator) -> Generator:
    """Reflected-maxmin generator from a max-type or min-type generator."""
    if gen.kind in _MAX_KINDS:
        return RMMFromPhi(gen)
    if gen.kind == CHI:
        return RMMFromChi(gen)
    raise ValueError(f"to_rmm expects a phi/psi/chi generator, got kind {gen.kind!r}")


# ---------------------------------------------------------------------------
# closed-form generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedLinear(Generator):
    """f(u) = scale * max(c - u, 0) on (0, 1], with f(0) = 0.

    Valid as an rmm generator for c in (0, 1) and scale in (0, 1].
    """

    c: float
    scale: float = 1.0
    kind: str = RMM_F

    def __post_init__(self) -> None:
        if self.kind not in _RMM_KINDS:
            raise ValueError(f"TruncatedLinear is an rmm generator, got kind {self.kind!r}")
        if not 0.0 < self.c < 1.0:
            raise ValueError(f"c must lie in (0, 1), got {self.c!r}")
        if not 0.0 < self.scale <= 1.0:
            raise ValueError(f"scale must lie in (0, 1], got {self.scale!r}")

    def __call__(self, u: float) -> float:
        u = float(u)
        if u <= 0.0:
            return 0.0
        return self.scale * max(self.c - u, 0.0)

    def _star_at_zero(self) -> float:
        return math.inf

    def breakpoints(self) -> tuple[float, ...]:
        return (0.0, self.c, 1.0)


@dataclass(frozen=True)
class IdentityGenerator(Generator):
    """gen(u) = u; the independence generator for phi/psi/chi kinds."""

    kind: str = PHI

    def __post_init__(self) -> None:
        if self.kind not in (PHI, PSI, CHI):
            raise ValueError(f"identity generator kinds are phi/psi/chi, got {self.kind!r}")

    def __call__(self, u: float) -> float:
        u = float(u)
        return min(max(u, 0.0), 1.0)

    def _star_at_zero(self) -> float:
        return 1.0

    def breakpoints(self) -> tuple[float, ...]:
        return (0.0, 1.0)


@dataclass(frozen=True)
class UnitGenerator(Generator):
    """gen(u) = 1 for u > 0, 0 at 0; the comonotone limit for max kinds."""

    kind: str = PHI

    def __post_init__(self) -> None:
        if self.kind not in _MAX_KINDS:
            raise ValueError(f"unit generator kinds are phi/psi, got {self.kind!r}")

    def __call__(self, u: float) -> float:
        return 1.0 if u > 0.0 else 0.0

    def _star_at_zero(self) -> float:
        return math.inf

    def breakpoints(self) -> tuple[float, ...]:
        return (0.0, 1.0)


@dataclass(frozen=True)
class ZeroGenerator(Generator):
    """f = 0; the independence generator for rmm kinds."""

    kind: str = RMM_F

    def __post_init__(self) -> None:
        if self.kind not in _RMM_KINDS:
            raise ValueError(f"zero generator kinds are rmm_f/rmm_g, got {self.kind!r}")

    def __call__(self, u: float) -> float:
        return 0.0

    def _star_at_zero(self) -> float:
        return 0.0

    def breakpoints(self) -> tuple[float, ...]:
        return (0.0, 1.0)


@dataclass(frozen=True)
class PiecewiseLinearGenerator(Generator):
    """Tabulated generator: linear interpolation through (us, vs) nodes.

    Intended for user-supplied tables and for freezing other generators via
    :func:`tabulate`.  Node values are reproduced exactly; between nodes the
    table interpolates, so a jump of the underlying function is represented
    by a steep segment between neighbouring nodes.
    """

    kind: str
    us: tuple[float, ...]
    vs: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.kind not in _ALL_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        us, vs = self.us, self.vs
        if len(us) != len(vs) or len(us) < 2:
            raise ValueError("need matching us/vs with at least two nodes")
        if us[0] != 0.0 or us[-1] != 1.0:
            raise ValueError("table must span [0, 1]")
        if any(a >= b for a, b in zip(us, us[1:])):
            raise ValueError("us must be strictly increasing")

    def __call__(self, u: float) -> float:
        u = float(u)
        if u <= 0.0:
            return self.vs[0]
        if u >= 1.0:
            return self.vs[-1]
        i = bisect_left(self.us, u)
        if self.us[i] == u:
            return self.vs[i]
        u1, u2 = self.us[i - 1], self.us[i]
        v1, v2 = self.vs[i - 1], self.vs[i]
        return v1 + (u - u1) * (v2 - v1) / (u2 - u1)

    def breakpoints(self) -> tuple[float, ...]:
        return self.us


def tabulate(gen: Generator, nodes: int = 2049) -> PiecewiseLinearGenerator:
    """Freeze a generator onto a uniform grid enriched with its breakpoints."""
    if nodes < 2:
        raise ValueError("need at least two nodes")
    us = sorted({i / (nodes - 1) for i in range(nodes)} | set(gen.breakpoints()))
    return PiecewiseLinearGenerator(gen.kind, tuple(us), tuple(gen(u) for u in us))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

_VALIDATE_TOL = 1e-12


@dataclass(frozen=True)
class ValidationIssue:
    condition: str
    argument: float
    detail: str


@dataclass
class ValidationReport:
    kind: str
    samples: int
    issues: list[ValidationIssue]
    diagnostics: dict[str, float]

    @property
    def passed(self) -> bool:
        return not self.issues

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "samples": self.samples,
            "passed": self.passed,
            "issues": [
                {"condition": i.condition, "argument": i.argument, "detail": i.detail}
                for i in self.issues
            ],
            "diagnostics": dict(self.diagnostics),
        }


def _nonincreasing_violation(prev: float, cur: float) -> bool:
    if math.isinf(prev):
        return False
    if math.isinf(cur):
        return True
    return cur > prev + _VALIDATE_TOL * max(1.0, abs(prev))


def validate(gen: Generator, samples: int = 513) -> ValidationReport:
    """Check the defining conditions of ``gen`` on a grid and report violations.

    The grid is ``samples`` uniform points on [0, 1] enriched with the
    generator's breakpoints.  Monotonicity and ratio-monotonicity use a
    1e-12 slack; endpoint values are exact.  The report also carries
    diagnostics (largest adjacent gap as a discontinuity indicator, and the
    extension-point consistency gap for extended generators); diagnostics
    never fail the report.
    """
    if samples < 3:
        raise ValueError("need at least three samples")
    grid = sorted({i / (samples - 1) for i in range(samples)} | set(gen.breakpoints()))
    vals = [gen(u) for u in grid]
    issues: list[ValidationIssue] = []

    def issue(condition: str, argument: float, detail: str) -> None:
        issues.append(ValidationIssue(condition, argument, detail))

    for u, v in zip(grid, vals):
        if not -_VALIDATE_TOL <= v <= 1.0 + _VALIDATE_TOL:
            issue("codomain", u, f"value {v!r} outside [0, 1]")

    if gen.kind in (PHI, PSI, CHI):
        if vals[0] != 0.0:
            issue("endpoint-0", 0.0, f"gen(0) = {vals[0]!r}")
        if vals[-1] != 1.0:
            issue("endpoint-1", 1.0, f"gen(1) = {vals[-1]!r}")
        for (u1, v1), (u2, v2) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
            if v2 < v1 - _VALIDATE_TOL:
                issue("monotone", u2, f"gen({u1!r}) = {v1!r} > gen({u2!r}) = {v2!r}")
        if gen.kind in _MAX_KINDS:
            prev = None
            for u in grid:
                if u <= 0.0:
                    continue
                s = gen.star(u)
                if prev is not None and _nonincreasing_violation(prev, s):
                    issue("star-decreasing", u, f"star rises to {s!r}")
                prev = s
        else:
            prev = None
            for u in grid:
                s = gen.substar(u)
                if s < 1.0 - _VALIDATE_TOL:
                    issue("substar-codomain", u, f"substar {s!r} below 1")
                if prev is not None and _nonincreasing_violation(prev, s):
                    issue("substar-decreasing", u, f"substar rises to {s!r}")
                prev = s
    elif gen.kind in _RMM_KINDS:
        if vals[0] != 0.0:
            issue("endpoint-0", 0.0, f"gen(0) = {vals[0]!r}")
        if abs(vals[-1]) > _VALIDATE_TOL:
            issue("endpoint-1", 1.0, f"gen(1) = {vals[-1]!r}")
        if abs(gen.star(1.0)) > _VALIDATE_TOL:
            issue("star-at-1", 1.0, f"star(1) = {gen.star(1.0)!r}")
        for (u1, v1), (u2, v2) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
            if u2 + v2 < u1 + v1 - _VALIDATE_TOL:
                issue("shifted-monotone", u2,
                      f"u + gen(u) falls from {u1 + v1!r} to {u2 + v2!r}")
        prev = None
        for u in grid:
            if u <= 0.0:
                continue
            s = gen.star(u)
            if prev is not None and _nonincreasing_violation(prev, s):
                issue("star-decreasing", u, f"star rises to {s!r}")
            prev = s
    else:
        raise ValueError(f"unknown generator kind {gen.kind!r}")

    diagnostics: dict[str, float] = {}
    diagnostics["max_adjacent_gap"] = max(
        (abs(v2 - v1) for v1, v2 in zip(vals, vals[1:])), default=0.0
    )
    if isinstance(gen, (ExtendedMaxGenerator, ExtendedMinGenerator)):
        probe = [u for u in grid if 0.0 < u < 1.0][:: max(1, len(grid) // 128)]
        diagnostics["x0_choice_gap"] = gen.consistency_gap(probe)
    return ValidationReport(gen.kind, len(grid), issues, diagnostics)


# ---------------------------------------------------------------------------
# JSON-facing constructors
# ---------------------------------------------------------------------------

def generator_from_spec(spec: dict) -> Generator:
    """Build a generator from its JSON dict form.

    Forms: ``from_shocks`` (component+shock distributions, canonical
    extension), ``truncatedLinear`` (rmm kinds), ``identity``, ``unit``,
    ``zero``, or an explicit ``table``.
    """
    if not isinstance(spec, dict):
        raise ValueError(f"generator spec must be a dict, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind not in _ALL_KINDS:
        raise ValueError(f"unknown generator kind {kind!r}")
    if "from_shocks" in spec:
        shocks = spec["from_shocks"]
        try:
            z = dist_from_spec(shocks["z"])
        except KeyError:
            raise ValueError("from_shocks needs a 'z' entry") from None
        comp_spec = shocks.get("x", shocks.get("y"))
        if comp_spec is None:
            raise ValueError("from_shocks needs an 'x' or 'y' entry")
        comp = dist_from_spec(comp_spec)
        if kind in _MAX_KINDS:
            return ExtendedMaxGenerator(comp, z, kind=kind)
        if kind == CHI:
            return extend_chi(comp, z)
        if kind == RMM_F:
            return to_rmm(extend_phi(comp, z))
        return to_rmm(extend_chi(comp, z))
    if "table" in spec:
        table = spec["table"]
        return PiecewiseLinearGenerator(
            kind, tuple(float(u) for u in table["us"]), tuple(float(v) for v in table["vs"])
        )
    form = spec.get("form")
    if form == "truncatedLinear":
        return TruncatedLinear(c=float(spec["c"]), scale=float(spec.get("scale", 1.0)), kind=kind)
    if form == "identity":
        return IdentityGenerator(kind=kind)
    if form == "unit":
        return UnitGenerator(kind=kind)
    if form == "zero":
        return ZeroGenerator(kind=kind)
    raise ValueError(f"generator spec needs 'from_shocks', 'table', or a known 'form': {spec!r}")
