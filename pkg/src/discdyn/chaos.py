"""Orbit constructions for a single hyperbolic or parabolic element.

Dense seed: given a target family f_1, f_2, ... and an integer schedule
k_1 < k_2 < ..., the boundary function f_inf places a shrunken copy of each
f_n in a window on the line so that the k_n-th translate recovers f_n on a
set A_n whose complement has small arclength.  The report certifies per level

    metric_distance(translate_n, f_n) <= arclength(A_n complement)/pi + bar.

Periodic seed: f_eps sums translates of a window restriction of f along the
cyclic group generated by gamma^k, giving a boundary function fixed by
gamma^k at the representation level and metric-close to f.

Conjugacy transport: for two elements of the same class, an explicit circle
homeomorphism h with h o gamma2 = gamma1 o h transports boundary data by
f -> f o h and intertwines the two translation actions.

Line windows use the angle coordinate s(x) = 2*atan(x); all window content is
materialized exactly as piecewise-constant data, with far translates beyond a
resolution floor certified into error bars instead of being materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import moebius
from .arcspace import act_arc
from .boundary import (
    TWO_PI,
    Arc,
    BoundaryFunction,
    LazyBoundaryFunction,
    angle_to_line,
    arc_length_of_region,
    compose_with_moebius,
    from_line_segments,
    l1_distance,
    line_to_angle,
)
from .moebius import ElementClass, MoebiusElement
from .poisson import CompactExhaustion, HarmonicFunction, metric_distance


class NotHyperbolicError(ValueError):
    pass


class NotParabolicError(ValueError):
    pass


class ResolutionError(ValueError):
    pass


class NotConjugateError(ValueError):
    pass


# --- schedules ---------------------------------------------------------------


@dataclass(frozen=True)
class DenseOrbitSchedule:
    """Window schedule: k_n exponents plus the window geometry they induce.

    Hyperbolic (rate = multiplier lam > 1): windows +-[a_n, b_n] with
    a_n = lam^-k_n / n, b_n = n lam^-k_n; the defining inequality
    n(n+1) < lam^(k_{n+1}-k_n) makes consecutive windows disjoint.

    Parabolic (rate = shift a > 0): windows [a k_n - n, a k_n + n], disjoint
    when a(k_{n+1}-k_n) > 2n+1.
    """

    kind: str
    rate: float
    ks: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("hyperbolic", "parabolic"):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))

    def a(self, n: int) -> float:
        return self.rate ** (-self.ks[n - 1]) / n

    def b(self, n: int) -> float:
        return n * self.rate ** (-self.ks[n - 1])

    def window(self, n: int) -> tuple[float, float]:
        c = self.rate * self.ks[n - 1]
        return c - n, c + n

    def check(self):
        ks = self.ks
        if list(ks) != sorted(set(ks)) or ks[0] < 1:
            raise ValueError("exponents must be strictly increasing positive integers")
        for i in range(len(ks) - 1):
            n = i + 1
            gap = ks[i + 1] - ks[i]
            if self.kind == "hyperbolic":
                if not n * (n + 1) < self.rate**gap:
                    raise ValueError(f"n(n+1) < rate^gap fails at n = {n}")
                if not self.b(n + 1) < self.a(n):
                    raise ValueError(f"window disjointness fails at n = {n}")
            else:
                if not self.rate * gap > 2 * n + 1:
                    raise ValueError(f"rate*gap > 2n+1 fails at n = {n}")


def make_schedule(lam: float, n_levels: int) -> DenseOrbitSchedule:
    """Minimal hyperbolic schedule: k_1 = 1, smallest gaps keeping windows apart."""
    if not lam > 1.0 + 1e-9:
        raise NotHyperbolicError(f"multiplier {lam} must exceed 1")
    ks = [1]
    for n in range(1, n_levels):
        target = n * (n + 1)
        d = int(math.floor(math.log(target) / math.log(lam))) + 1
        while lam**d <= target:
            d += 1
        while d > 1 and lam ** (d - 1) > target:
            d -= 1
        ks.append(ks[-1] + d)
    sched = DenseOrbitSchedule("hyperbolic", float(lam), tuple(ks))
    sched.check()
    return sched


def make_parabolic_schedule(a: float, n_levels: int) -> DenseOrbitSchedule:
    """Minimal parabolic schedule: windows [a k_n - n, a k_n + n] kept disjoint."""
    if not a > 0.0:
        raise NotParabolicError(f"shift {a} must be positive")
    ks = [1]
    for n in range(1, n_levels):
        d = max(1, math.ceil((2 * n + 2) / a))
        while a * d <= 2 * n + 1:
            d += 1
        ks.append(ks[-1] + d)
    sched = DenseOrbitSchedule("parabolic", float(a), tuple(ks))
    sched.check()
    return sched


# --- target family -----------------------------------------------------------

# half-integer Gaussian-integer grid intersected with the closed unit disc
_VALUE_GRID = np.array(
    [
        0.0,
        0.5,
        -0.5,
        0.5j,
        -0.5j,
        0.5 + 0.5j,
        0.5 - 0.5j,
        -0.5 + 0.5j,
        -0.5 - 0.5j,
        1.0,
        -1.0,
        1j,
        -1j,
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class TargetFamily:
    """Deterministic finite prefix of a countable dense family of unit-ball data."""

    functions: tuple[BoundaryFunction, ...]
    seed: int | None = None

    def __len__(self) -> int:
        return len(self.functions)

    @classmethod
    def generate(cls, count: int, seed: int) -> "TargetFamily":
        funcs = []
        for i in range(count):
            rng = np.random.default_rng([int(seed), i])
            level = int(rng.integers(0, 5))
            m = 2**level
            br = np.arange(m) * (TWO_PI / m)
            vals = _VALUE_GRID[rng.integers(0, len(_VALUE_GRID), size=m)]
            funcs.append(BoundaryFunction(br, vals))
        return cls(tuple(funcs), int(seed))

    def replaced(self, index: int, f: BoundaryFunction) -> "TargetFamily":
        funcs = list(self.functions)
        funcs[index] = f
        return TargetFamily(tuple(funcs), self.seed)


# --- line windows ------------------------------------------------------------


def _restrict_line(
    f: BoundaryFunction, lo: float, hi: float
) -> list[tuple[float, float, complex]]:
    """Pieces of f (as a function of the line coordinate) on the finite [lo, hi]."""
    xs = []
    for s in f.breakpoints:
        x = angle_to_line(float(s))
        if math.isfinite(x) and lo < x < hi:
            xs.append(x)
    pts = [lo] + sorted(xs) + [hi]
    out = []
    for u, v in zip(pts, pts[1:]):
        if v - u <= 0.0:
            continue
        out.append((u, v, f.evaluate(line_to_angle(0.5 * (u + v)))))
    return out


def _shifted(segs, scale=1.0, shift=0.0):
    return [(u * scale + shift, v * scale + shift, val) for u, v, val in segs]


def _arc_of_line_interval(lo: float, hi: float) -> Arc:
    a = line_to_angle(lo)
    b = line_to_angle(hi)
    width = (b - a) % TWO_PI
    return Arc(complex(math.cos(a), math.sin(a)), width)


# --- dense seed --------------------------------------------------------------


def build_dense_seed(
    family: TargetFamily, sched: DenseOrbitSchedule, level: int | None = None
) -> LazyBoundaryFunction:
    """The seed boundary function whose translates sweep past every family member.

    Hyperbolic: value f_n(lam^{k_n} x) on +-[a_n, b_n], 0 on the gaps, 0 above
    b_1, and 0 below the innermost window of the finite family.  Materializes
    levels 1..level exactly; deeper levels (when level < family size) stay
    unrepresented with tail bound 1 on the accumulation arc around angle 0.

    Parabolic: value f_n(x - a k_n) on [a k_n - n, a k_n + n]; windows march
    to +infinity, so the unrepresented region is a single arc ending at the
    angle of infinity.
    """
    n_family = len(family)
    if n_family == 0:
        raise ValueError("family is empty")
    if len(sched.ks) < n_family:
        raise ValueError("schedule shorter than the family")
    lvl = n_family if level is None else int(level)
    if not 1 <= lvl <= n_family:
        raise ValueError(f"level {lvl} outside 1..{n_family}")

    segs = []
    for n in range(1, lvl + 1):
        fn = family.functions[n - 1]
        if sched.kind == "hyperbolic":
            scale = sched.rate ** (-sched.ks[n - 1])
            segs += _shifted(_restrict_line(fn, 1.0 / n, float(n)), scale=scale)
            segs += _shifted(_restrict_line(fn, -float(n), -1.0 / n), scale=scale)
        else:
            shift = sched.rate * sched.ks[n - 1]
            segs += _shifted(_restrict_line(fn, -float(n), float(n)), shift=shift)
    mat = from_line_segments(segs)

    if lvl == n_family:
        unrep: tuple[Arc, ...] = ()
        tail = 0.0
    elif sched.kind == "hyperbolic":
        cutoff = sched.b(lvl + 1)
        unrep = (_arc_of_line_interval(-cutoff, cutoff),)
        tail = 1.0
    else:
        lo, _ = sched.window(lvl + 1)
        unrep = (_arc_of_line_interval(lo, math.inf),)
        tail = 1.0

    funcs = family.functions
    ks = sched.ks
    rate = sched.rate
    kind = sched.kind

    def evaluator(s: float) -> complex:
        x = angle_to_line(s)
        if math.isinf(x):
            return 0.0
        for n in range(1, n_family + 1):
            if kind == "hyperbolic":
                if x == 0.0:
                    return 0.0
                y = x * rate ** ks[n - 1]
                if 1.0 / n <= abs(y) <= n:
                    return funcs[n - 1].evaluate(line_to_angle(y))
            else:
                y = x - rate * ks[n - 1]
                if -n <= y <= n:
                    return funcs[n - 1].evaluate(line_to_angle(y))
        return 0.0

    return LazyBoundaryFunction(evaluator, mat, unrep, tail)


def build_parabolic_dense_seed(
    family: TargetFamily, sched: DenseOrbitSchedule, level: int | None = None
) -> LazyBoundaryFunction:
    if sched.kind != "parabolic":
        raise NotParabolicError("schedule is not parabolic")
    return build_dense_seed(family, sched, level)


def translate_boundary(phi: HarmonicFunction, g: MoebiusElement) -> HarmonicFunction:
    """The translate with boundary data f o g^{-1}; unrepresented arcs move by g."""
    f2 = compose_with_moebius(phi.boundary, moebius.inverse(g))
    arcs = tuple(act_arc(g, a) for a in phi.unrepresented)
    return HarmonicFunction(f2, arcs, phi.tail_bound)


@dataclass(frozen=True)
class CertificateRow:
    n: int
    k: int
    dist: float
    bound: float
    error_bar: float

    @property
    def ok(self) -> bool:
        return self.dist <= self.bound + self.error_bar


def dense_orbit_report(
    family: TargetFamily,
    sched: DenseOrbitSchedule,
    ex: CompactExhaustion | None = None,
    n_levels: int | None = None,
) -> list[CertificateRow]:
    """Per-level certificate rows (n, k_n, dist, bound, bar).

    dist is the metric distance between the k_n-indexed translate of the seed
    extension and the n-th family extension; bound = arclength(A_n^c)/pi.
    For the parabolic window placement the matching group power is the
    Z-action index -k_n (the translate is f_inf o gamma^{+k_n}); the certified
    inequality is the same.
    """
    ex = ex or CompactExhaustion()
    n_levels = len(family) if n_levels is None else int(n_levels)
    if n_levels > len(family):
        raise ValueError("more levels requested than family members")
    lazy = build_dense_seed(family, sched, min(len(family), n_levels + 2))
    phi_inf = HarmonicFunction.from_lazy(lazy)
    rows = []
    for n in range(1, n_levels + 1):
        k = sched.ks[n - 1]
        if sched.kind == "hyperbolic":
            g = moebius.hyperbolic_multiplier(sched.rate**k)  # gamma^{k}
            comp = [(-1.0 / n, 1.0 / n), (float(n), -float(n))]
        else:
            g = moebius.parabolic_shift(-sched.rate * k)  # gamma^{-k}
            comp = [(float(n), -float(n))]
        shifted = translate_boundary(phi_inf, g)
        dist, bar = metric_distance(shifted, HarmonicFunction(family.functions[n - 1]), ex)
        bound = arc_length_of_region(comp) / math.pi
        rows.append(CertificateRow(n, k, dist, bound, bar))
    return rows


# --- periodic approximant ----------------------------------------------------


@dataclass
class PeriodicApproximant:
    """Boundary function with f o gamma^k = f at the representation level."""

    function: LazyBoundaryFunction
    gamma: MoebiusElement
    kind: str
    rate: float
    n: int
    k: int
    m_materialized: int
    source: BoundaryFunction

    def materialize_range(self, m_lo: int, m_hi: int) -> BoundaryFunction:
        """Sum of the translate terms for m in [m_lo, m_hi], materialized exactly."""
        segs = []
        for m in range(m_lo, m_hi + 1):
            segs += _translate_window_segments(
                self.source, self.kind, self.rate, self.n, self.k, m
            )
        return from_line_segments(segs)

    def l1_defect(self) -> tuple[float, float]:
        """(integral of |f - f_eps| over the circle, error bar)."""
        defect = l1_distance(self.source, self.function.represented)
        bar = self.function.unrepresented_length() * (
            self.function.tail_bound + self.source.sup_norm()
        )
        return defect, bar

    def metric_defect(self, ex: CompactExhaustion | None = None) -> tuple[float, float]:
        ex = ex or CompactExhaustion()
        return metric_distance(
            HarmonicFunction(self.source),
            HarmonicFunction.from_lazy(self.function),
            ex,
        )


def _translate_window_segments(f, kind, rate, n, k, m):
    """Segments of the m-th translate term (window restriction of f moved by gamma^{mk})."""
    if kind == "hyperbolic":
        s = rate ** (m * k)
        return _shifted(_restrict_line(f, 1.0 / n, float(n)), scale=s) + _shifted(
            _restrict_line(f, -float(n), -1.0 / n), scale=s
        )
    shift = -m * k * rate
    return _shifted(_restrict_line(f, -float(n), float(n)), shift=shift)


def _pick_n(epsilon: float, kind: str) -> int:
    """Minimal n with arclength(B_n^c) <= epsilon*pi."""
    coeff = 8.0 if kind == "hyperbolic" else 4.0
    if epsilon <= 0.0:
        raise ResolutionError("epsilon must be positive")
    if coeff / (epsilon * math.pi) > 1e12:
        raise ResolutionError("epsilon too small for double-precision windows")
    # atan(1/n) ~ 1/n, so start a few steps below the asymptotic answer and
    # walk up; keeps the minimality exact without a unit-step search from 1
    n = max(1, int(coeff / (epsilon * math.pi)) - 2)
    while n > 1 and coeff * math.atan(1.0 / (n - 1)) <= epsilon * math.pi:
        n -= 1
    while coeff * math.atan(1.0 / n) > epsilon * math.pi:
        n += 1
    return n


def build_periodic_approximant(
    f: BoundaryFunction, epsilon: float, gamma: MoebiusElement
) -> PeriodicApproximant:
    """Periodic boundary function within metric epsilon of f.

    gamma must be hyperbolic in the normalized form fixing z = 1 and z = -1
    (real alpha and beta; the element x -> lam*x on the line).  Window level n
    is minimal with arclength(B_n^c) <= epsilon*pi, and the period exponent k
    is minimal with lam^k > n^2, which keeps all translates of the window
    disjoint.
    """
    if not 0.0 < epsilon <= 2.0:
        raise ValueError(f"epsilon = {epsilon} outside (0, 2]")
    if moebius.classify(gamma) is not ElementClass.HYPERBOLIC:
        raise NotHyperbolicError("gamma must be hyperbolic")
    if abs(gamma.alpha.imag) > 1e-12 or abs(gamma.beta.imag) > 1e-12:
        raise NotHyperbolicError(
            "gamma must fix z = 1 and z = -1 (use the normalized multiplier form; "
            "transport general elements with conjugating_map)"
        )
    lam = moebius.multiplier(gamma)
    n = _pick_n(epsilon, "hyperbolic")
    # lam^k > n^2, strictly: the relative guard keeps float noise in the
    # multiplier from stealing the boundary case (lam=2, n=4 must give k=5)
    k = 1
    while lam**k <= n * n * (1.0 + 1e-12):
        k += 1
    return _assemble_periodic(f, gamma, "hyperbolic", lam, n, k)


def build_parabolic_periodic(
    f: BoundaryFunction, epsilon: float, gamma: MoebiusElement
) -> PeriodicApproximant:
    """Parabolic counterpart: window [-n, n], period exponent minimal with a*k > 2n.

    Far translates pile up near the angle of infinity with length decaying
    like 1/m, so the unmaterialized-length floor scales with epsilon instead
    of chasing a fixed tiny floor; the certificate absorbs it in the bar.
    """
    if not 0.0 < epsilon <= 2.0:
        raise ValueError(f"epsilon = {epsilon} outside (0, 2]")
    if moebius.classify(gamma) is not ElementClass.PARABOLIC:
        raise NotParabolicError("gamma must be parabolic")
    m = moebius.to_half_plane(gamma)
    a = moebius.act_line(gamma, 0.0)
    if not (abs(m.c) < 1e-12 and a > 0.0):
        raise NotParabolicError("gamma must act as x -> x + a with a > 0")
    n = _pick_n(epsilon, "parabolic")
    k = 1
    while a * k <= 2 * n * (1.0 + 1e-12):
        k += 1
    return _assemble_periodic(f, gamma, "parabolic", a, n, k, min(0.02, epsilon / 12.0))


def _unrep_arcs_periodic(kind, rate, n, k, m_cap):
    """Arcs holding every translate with |m| > m_cap, plus their total length."""
    if kind == "hyperbolic":
        step = rate**k
        inner = n * step ** (-(m_cap + 1))
        outer = step ** (m_cap + 1) / n
        arcs = (
            _arc_of_line_interval(-inner, inner),
            _arc_of_line_interval(outer, -outer),
        )
    else:
        reach = (m_cap + 1) * k * rate - n
        arcs = (_arc_of_line_interval(reach, -reach),)
    return arcs, float(sum(a.theta for a in arcs))


def _assemble_periodic(f, gamma, kind, rate, n, k, len_floor=None) -> PeriodicApproximant:
    if len_floor is None:
        len_floor = 1e-9 if kind == "hyperbolic" else 1e-4
    m_cap = 1
    while True:
        arcs, tail_len = _unrep_arcs_periodic(kind, rate, n, k, m_cap)
        if tail_len <= len_floor or m_cap >= 4000:
            break
        if kind == "hyperbolic" and (m_cap + 2) * k * math.log2(rate) > 960:
            break
        m_cap += 1
    segs = []
    for m in range(-m_cap, m_cap + 1):
        segs += _translate_window_segments(f, kind, rate, n, k, m)
    mat = from_line_segments(segs)
    sup = f.sup_norm()

    if kind == "hyperbolic":
        step = rate**k

        def evaluator(s: float) -> complex:
            x = angle_to_line(s)
            if x == 0.0 or math.isinf(x):
                return 0.0
            m0 = round(math.log(abs(x)) / math.log(step))
            for mm in (m0 - 1, m0, m0 + 1):
                y = x * step ** (-mm)
                if 1.0 / n <= abs(y) <= n:
                    return f.evaluate(line_to_angle(y))
            return 0.0

    else:
        stride = k * rate

        def evaluator(s: float) -> complex:
            x = angle_to_line(s)
            if math.isinf(x):
                return 0.0
            m0 = round(-x / stride)
            for mm in (m0 - 1, m0, m0 + 1):
                y = x + mm * stride
                if -n <= y <= n:
                    return f.evaluate(line_to_angle(y))
            return 0.0

    lazy = LazyBoundaryFunction(evaluator, mat, arcs, sup)
    return PeriodicApproximant(lazy, gamma, kind, rate, n, k, m_cap, f)


def periodic_report(
    f: BoundaryFunction,
    epsilons: Sequence[float],
    gamma: MoebiusElement,
    ex: CompactExhaustion | None = None,
) -> list[tuple[float, int, int, float, float, float]]:
    """Rows (epsilon, n, k, l1_defect, metric_defect, bar) for each epsilon."""
    ex = ex or CompactExhaustion()
    kind = (
        "hyperbolic"
        if moebius.classify(gamma) is ElementClass.HYPERBOLIC
        else "parabolic"
    )
    rows = []
    for eps in epsilons:
        if kind == "hyperbolic":
            approx = build_periodic_approximant(f, eps, gamma)
        else:
            approx = build_parabolic_periodic(f, eps, gamma)
        l1, l1_bar = approx.l1_defect()
        dist, bar = approx.metric_defect(ex)
        rows.append((float(eps), approx.n, approx.k, l1 + l1_bar, dist, bar))
    return rows


# --- sensitivity probe -------------------------------------------------------


def sensitivity_probe(
    phi: HarmonicFunction,
    gamma: MoebiusElement,
    perturbed: Sequence[HarmonicFunction],
    n_max: int = 12,
    ex: CompactExhaustion | None = None,
) -> tuple[float, list[tuple[int, int, float]]]:
    """Empirical separation under iteration: rows (trial, n, distance).

    Returns the max over trials and n <= n_max of
    metric_distance(translate_n(phi), translate_n(phi')).  Monotone
    non-decreasing in n_max by construction (max over a growing range).
    """
    ex = ex or CompactExhaustion()
    rows = []
    worst = 0.0
    for i, phi2 in enumerate(perturbed):
        # iterate one translate per step; forming gamma^n directly loses the
        # unit determinant to cancellation once lambda^n nears 1/eps_machine
        a, b = phi, phi2
        for n in range(n_max + 1):
            if n > 0:
                a = translate_boundary(a, gamma)
                b = translate_boundary(b, gamma)
            d, bar = metric_distance(a, b, ex)
            rows.append((i, n, d))
            worst = max(worst, d)
    return worst, rows


# --- conjugacy ---------------------------------------------------------------


def _hyperbolic_normalizer(g: MoebiusElement) -> MoebiusElement:
    """c with c(0) = expanding fixed point, c(inf) = contracting, c d c^-1 = g."""
    e, f = moebius.fixed_points_line(g)
    if math.isinf(e):
        m = moebius.HalfPlaneMatrix.normalized(-f, 1.0, -1.0, 0.0)
    elif math.isinf(f):
        m = moebius.HalfPlaneMatrix.normalized(1.0, e, 0.0, 1.0)
    else:
        det = f - e
        if det > 0.0:
            m = moebius.HalfPlaneMatrix.normalized(f, e, 1.0, 1.0)
        else:
            m = moebius.HalfPlaneMatrix.normalized(-f, e, -1.0, 1.0)
    c = moebius.from_half_plane(m)
    d = moebius.hyperbolic_multiplier(moebius.multiplier(g))
    check = moebius.compose(moebius.compose(c, d), moebius.inverse(c))
    if check.distance_to(g) > 1e-9:
        raise RuntimeError("normalizer construction failed to reproduce the element")
    return c


def _parabolic_normalizer(g: MoebiusElement) -> tuple[MoebiusElement, float]:
    """(c, a) with c^-1 g c acting as x -> x + a."""
    p, _ = moebius.fixed_points_line(g)
    if math.isinf(p):
        c = moebius.identity()
    else:
        c = moebius.from_half_plane(moebius.HalfPlaneMatrix(p, -1.0, 1.0, 0.0))
    nrm = moebius.compose(moebius.compose(moebius.inverse(c), g), c)
    a = moebius.act_line(nrm, 0.0)
    if abs(moebius.act_line(nrm, 1.0) - (1.0 + a)) > 1e-9:
        raise RuntimeError("normalizer construction failed to straighten the shift")
    return c, a


@dataclass(frozen=True)
class Conjugacy:
    """Circle homeomorphism h with h o gamma2 = gamma1 o h, and its transport."""

    gamma1: MoebiusElement
    gamma2: MoebiusElement
    kind: str
    c1: MoebiusElement
    c2: MoebiusElement
    exponent: float  # log lam1 / log lam2, or shift ratio a1/a2

    def _hn(self, x: float) -> float:
        if self.kind == "hyperbolic":
            if math.isinf(x):
                return math.inf
            return math.copysign(abs(x) ** self.exponent, x) if x != 0.0 else 0.0
        return x if math.isinf(x) else self.exponent * x

    def _hn_inv(self, x: float) -> float:
        if self.kind == "hyperbolic":
            if math.isinf(x):
                return math.inf
            return math.copysign(abs(x) ** (1.0 / self.exponent), x) if x != 0.0 else 0.0
        return x if math.isinf(x) else x / self.exponent

    def h_line(self, x: float) -> float:
        return moebius.act_line(self.c1, self._hn(moebius.act_line(moebius.inverse(self.c2), x)))

    def h_inv_line(self, x: float) -> float:
        return moebius.act_line(self.c2, self._hn_inv(moebius.act_line(moebius.inverse(self.c1), x)))

    def h_circle(self, z: complex) -> complex:
        from .boundary import cayley, cayley_inv

        return cayley_inv(self.h_line(cayley(z)))

    def __call__(self, z: complex) -> complex:
        return self.h_circle(z)

    def transport(self, f: BoundaryFunction) -> BoundaryFunction:
        """Boundary data f o h; breakpoints pull back through h^{-1}."""
        if f.breakpoints.size == 0:
            return BoundaryFunction.constant(complex(f.values[0]))
        new = np.array(
            [
                line_to_angle(self.h_inv_line(angle_to_line(float(s))))
                for s in f.breakpoints
            ]
        )
        br = np.sort(np.mod(new, TWO_PI))
        widths = np.diff(br, append=br[0] + TWO_PI)
        mids = br + 0.5 * widths
        vals = [
            f.evaluate(line_to_angle(self.h_line(angle_to_line(float(t)))))
            for t in mids
        ]
        return BoundaryFunction(br, vals)

    def intertwine_residual(
        self, f: BoundaryFunction, ex: CompactExhaustion | None = None
    ) -> tuple[float, float]:
        """Metric distance between (f o gamma1^-1) o h and (f o h) o gamma2^-1."""
        ex = ex or CompactExhaustion()
        lhs = self.transport(compose_with_moebius(f, moebius.inverse(self.gamma1)))
        rhs = compose_with_moebius(self.transport(f), moebius.inverse(self.gamma2))
        return metric_distance(HarmonicFunction(lhs), HarmonicFunction(rhs), ex)


def conjugating_map(gamma1: MoebiusElement, gamma2: MoebiusElement) -> Conjugacy:
    """Explicit conjugating circle map for two elements of the same class.

    Hyperbolic pair: after moving both to x -> lam_i x, h is the power map
    sign(x) |x|^(log lam1 / log lam2).  Parabolic pair: h is linear.  Any other
    combination (including hyperbolic with parabolic, where no answer is
    known) raises NotConjugateError.
    """
    c1cls = moebius.classify(gamma1)
    c2cls = moebius.classify(gamma2)
    if c1cls is ElementClass.HYPERBOLIC and c2cls is ElementClass.HYPERBOLIC:
        n1 = _hyperbolic_normalizer(gamma1)
        n2 = _hyperbolic_normalizer(gamma2)
        rho = math.log(moebius.multiplier(gamma1)) / math.log(moebius.multiplier(gamma2))
        return Conjugacy(gamma1, gamma2, "hyperbolic", n1, n2, rho)
    if c1cls is ElementClass.PARABOLIC and c2cls is ElementClass.PARABOLIC:
        n1, a1 = _parabolic_normalizer(gamma1)
        n2, a2 = _parabolic_normalizer(gamma2)
        return Conjugacy(gamma1, gamma2, "parabolic", n1, n2, a1 / a2)
    raise NotConjugateError(
        f"no conjugating map constructed for classes "
        f"{c1cls.value} and {c2cls.value}: only matching hyperbolic or "
        f"matching parabolic pairs are supported"
    )
