"""Surface-group machinery: a concrete genus-2 group acting on the disc, orbit
sampling on the arc cylinder, the leafwise harmonic measure function, the
tautological evaluation map, and the projective-cone model with its invariant
fiberwise-holomorphic function.

The group is certified numerically, not assumed: the eight-term side-pairing
relation must collapse to the identity and no short reduced word may come
near the identity.  Every dynamical statement exposed here is a finite-sample
diagnostic (coverage fractions, invariance residuals), never a theorem claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import moebius
from .arcspace import Arc, act_arc, big_F
from .boundary import TWO_PI, BoundaryFunction
from .moebius import MoebiusElement
from .poisson import extend


class SingularPointError(ValueError):
    pass


class InvalidPointError(ValueError):
    pass


# --- the group ----------------------------------------------------------------


@dataclass(frozen=True)
class FuchsianGroup:
    generators: tuple[MoebiusElement, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    def __len__(self) -> int:
        return len(self.generators)

    def letters(self) -> tuple[MoebiusElement, ...]:
        """Generators followed by their inverses; letter i has inverse i XOR n."""
        return self.generators + tuple(moebius.inverse(g) for g in self.generators)


def genus2_group() -> FuchsianGroup:
    """Regular-octagon side pairings: alpha = 1 + sqrt(2), |beta| = sqrt(2 alpha),
    beta phases at multiples of pi/4.  All four generators are hyperbolic with
    the same translation length; certified by relation_residual and
    short_word_scan rather than taken on faith."""
    alpha = 1.0 + math.sqrt(2.0)
    r = math.sqrt(2.0 + 2.0 * math.sqrt(2.0))
    gens = tuple(
        MoebiusElement(alpha, r * complex(math.cos(k * math.pi / 4), math.sin(k * math.pi / 4)))
        for k in range(4)
    )
    return FuchsianGroup(gens, "genus-2 regular octagon")


_RELATION = (0, 5, 2, 7, 4, 1, 6, 3)  # g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3


def relation_residual(group: FuchsianGroup) -> float:
    """Distance from the octagon relation word to the identity."""
    letters = group.letters()
    word = reduce(moebius.compose, (letters[i] for i in _RELATION))
    return word.distance_to(moebius.identity())


def short_word_scan(
    group: FuchsianGroup, max_len: int = 4
) -> tuple[float, tuple[int, ...]]:
    """Minimum distance to the identity over nonempty reduced words.

    A healthy discrete group keeps this bounded well away from 0 for word
    lengths below the defining relation (length 8 here).
    """
    letters = group.letters()
    n = len(letters)
    half = n // 2
    frontier: list[tuple[int, MoebiusElement]] = [(-1, moebius.identity())]
    ident = moebius.identity()
    best = math.inf
    best_word: tuple[int, ...] = ()
    words: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        nxt_words = []
        for (last, g), w in zip(frontier, words):
            for i in range(n):
                if last >= 0 and i == last ^ half:
                    continue
                h = moebius.compose(g, letters[i])
                d = h.distance_to(ident)
                if d < best:
                    best = d
                    best_word = w + (i,)
                nxt.append((i, h))
                nxt_words.append(w + (i,))
        frontier = nxt
        words = nxt_words
    return best, best_word


# --- orbit sampling on the arc cylinder ----------------------------------------


@dataclass(frozen=True)
class OrbitSample:
    points: tuple[Arc, ...]
    word_lengths: tuple[int, ...]
    rng_seed: int
    base: Arc
    on_boundary: bool = False


def _random_reduced_word(rng, n_letters: int, length: int) -> list[int]:
    half = n_letters // 2
    word = []
    prev = -1
    for _ in range(length):
        pick = int(rng.integers(0, n_letters - (1 if prev >= 0 else 0)))
        if prev >= 0 and pick >= (prev ^ half):
            pick += 1
        word.append(pick)
        prev = pick
    return word


def _apply_word(letters, word: Iterable[int], base: Arc) -> Arc:
    g = moebius.identity()
    for i in word:
        g = moebius.compose(g, letters[i])
    return act_arc(g, base)


def orbit_sample(
    group: FuchsianGroup,
    base: Arc,
    n_points: int,
    max_word_len: int,
    seed: int,
) -> OrbitSample:
    """Random reduced words of length <= max_word_len applied to the base arc.

    Deterministic per seed.  Boundary bases (theta 0 or 2pi) stay on their
    boundary circle; that is flagged, not rejected.
    """
    rng = np.random.default_rng(int(seed))
    letters = group.letters()
    pts = []
    lens = []
    for _ in range(n_points):
        length = int(rng.integers(0, max_word_len + 1))
        word = _random_reduced_word(rng, len(letters), length)
        pts.append(_apply_word(letters, word, base))
        lens.append(length)
    on_b = base.theta <= 0.0 or base.theta >= TWO_PI
    return OrbitSample(tuple(pts), tuple(lens), int(seed), base, on_b)


def _occupied_cells(points: Sequence[Arc], grid: int) -> set[tuple[int, int]]:
    lo, hi = 0.2, TWO_PI - 0.2
    cells = set()
    for arc in points:
        if not lo <= arc.theta <= hi:
            continue
        ang = math.atan2(arc.zeta.imag, arc.zeta.real) % TWO_PI
        i = min(grid - 1, int(ang / (TWO_PI / grid)))
        j = min(grid - 1, int((arc.theta - lo) / ((hi - lo) / grid)))
        cells.add((i, j))
    return cells


def coverage_statistic(sample: OrbitSample, grid: int = 32) -> float:
    """Fraction of occupied cells on the interior band of the arc cylinder."""
    return len(_occupied_cells(sample.points, grid)) / (grid * grid)


def coverage_sweep(
    group: FuchsianGroup,
    base: Arc,
    n_per_length: int,
    max_word_len: int,
    seed: int,
    grid: int = 32,
) -> list[tuple[int, float]]:
    """Cumulative coverage rows (budget, fraction), non-decreasing by design.

    The budget-L row pools words of every exact length <= L, each batch drawn
    from its own (seed, length) stream, so raising the budget only adds points.
    """
    letters = group.letters()
    cells: set[tuple[int, int]] = set()
    rows = []
    for length in range(max_word_len + 1):
        rng = np.random.default_rng([int(seed), length])
        batch = [
            _apply_word(letters, _random_reduced_word(rng, len(letters), length), base)
            for _ in range(n_per_length)
        ]
        cells |= _occupied_cells(batch, grid)
        rows.append((length, len(cells) / (grid * grid)))
    return rows


# --- leafwise functions ---------------------------------------------------------


def leafwise_F0(z: complex, x: Arc) -> float:
    """Harmonic measure of the arc, seen at z: the bundle's leafwise harmonic
    function.  Constant 0 and 1 on the two boundary circles of the cylinder."""
    return big_F(z, x)


def tautological_eval(z: complex, f: BoundaryFunction) -> complex:
    """Evaluation of the universal fiber function: the extension of f at z.

    Equivariant by the change-of-variables identity: evaluating at g^{-1}(z)
    equals evaluating the g-translated data at z.
    """
    return extend(f, z)


# --- projective cone model ------------------------------------------------------


@dataclass(frozen=True)
class ProjectivePoint:
    """Point [z1, z2, t] on the cone |z1|^2 - |z2|^2 = t^2, stored normalized.

    Real projective scale is fixed by making the largest coordinate magnitude 1
    and the first nonzero component of (Re z1, Im z1, Re z2, Im z2, t) positive.
    """

    z1: complex
    z2: complex
    t: float

    def __post_init__(self):
        z1, z2, t = complex(self.z1), complex(self.z2), float(self.t)
        scale = max(abs(z1), abs(z2), abs(t))
        if not scale > 1e-300 or not math.isfinite(scale):
            raise InvalidPointError("projective point has no nonzero coordinate")
        z1, z2, t = z1 / scale, z2 / scale, t / scale
        for c in (z1.real, z1.imag, z2.real, z2.imag, t):
            if abs(c) > 1e-13:
                if c < 0.0:
                    z1, z2, t = -z1, -z2, -t
                break
        if abs(abs(z1) ** 2 - abs(z2) ** 2 - t * t) > 1e-10:
            raise InvalidPointError(
                f"coordinates violate |z1|^2 - |z2|^2 = t^2 "
                f"(residual {abs(abs(z1)**2 - abs(z2)**2 - t*t):.3e})"
            )
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)
        object.__setattr__(self, "t", t)

    def cone_residual(self) -> float:
        return abs(abs(self.z1) ** 2 - abs(self.z2) ** 2 - self.t**2)

    def coords(self) -> tuple[complex, complex, float]:
        return self.z1, self.z2, self.t


def random_projective_point(rng) -> ProjectivePoint:
    """Uniform-ish sample of the cone: pick z2 and t, set |z1| accordingly."""
    z2 = complex(rng.normal(), rng.normal())
    t = float(rng.normal())
    psi = rng.uniform(0.0, TWO_PI)
    z1 = math.sqrt(abs(z2) ** 2 + t * t) * complex(math.cos(psi), math.sin(psi))
    return ProjectivePoint(z1, z2, t)


def projective_act(g: MoebiusElement, p: ProjectivePoint) -> ProjectivePoint:
    """[z1, z2, t] -> [alpha z1 + beta conj(z2), alpha z2 + beta conj(z1), t].

    The cone quantity |z1|^2 - |z2|^2 is multiplied by |alpha|^2 - |beta|^2 = 1,
    so membership is preserved exactly up to roundoff."""
    a, b = g.alpha, g.beta
    return ProjectivePoint(
        a * p.z1 + b * p.z2.conjugate(),
        a * p.z2 + b * p.z1.conjugate(),
        p.t,
    )


def projective_f(z: complex, p: ProjectivePoint) -> complex:
    """The invariant fiberwise function (conj(u1) z - u2) / (-conj(u2) z + u1).

    Well defined on the projective class (ratio of linear forms), holomorphic
    in z on the open disc, and invariant under the simultaneous action on z
    and p.  The denominator can only vanish on the t = 0 degenerate locus."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"|z| = {abs(z)} not inside the open disc")
    u1, u2 = p.z1, p.z2
    den = -u2.conjugate() * z + u1
    if abs(den) <= 1e-12:
        raise SingularPointError(
            "denominator vanishes (degenerate t = 0 locus of the cone)"
        )
    return (u1.conjugate() * z - u2) / den
