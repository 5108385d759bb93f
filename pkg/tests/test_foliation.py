import math

import numpy as np
import pytest

from discdyn import (
    Arc,
    BoundaryFunction,
    ElementClass,
    InvalidPointError,
    ProjectivePoint,
    SingularPointError,
    act_arc,
    act_disc,
    classify,
    compose_with_moebius,
    coverage_statistic,
    coverage_sweep,
    extend,
    genus2_group,
    inverse,
    leafwise_F0,
    orbit_sample,
    projective_act,
    projective_f,
    quotient_to_sphere,
    random_projective_point,
    relation_residual,
    short_word_scan,
    tautological_eval,
)

from conftest import random_boundary, random_element

TWO_PI = 2.0 * math.pi


class TestGroup:
    def test_relation_closes(self):
        assert relation_residual(genus2_group()) < 1e-9

    def test_generators_hyperbolic(self):
        for g in genus2_group().generators:
            assert classify(g) is ElementClass.HYPERBOLIC

    def test_no_short_relation(self):
        # discreteness witness: nothing within word length 4 approaches the identity
        best, word = short_word_scan(genus2_group(), max_len=4)
        assert best > 0.5
        assert len(word) >= 1

    def test_letters_include_inverses(self):
        G = genus2_group()
        letters = G.letters()
        assert len(letters) == 8
        from discdyn import compose, identity

        ident = identity()
        for i in range(4):
            prod = compose(letters[i], letters[i + 4])
            assert abs(prod.alpha - ident.alpha) < 1e-12
            assert abs(prod.beta - ident.beta) < 1e-12


class TestOrbitSampling:
    def test_deterministic_per_seed(self):
        G = genus2_group()
        base = Arc(1.0 + 0j, math.pi / 2)
        s1 = orbit_sample(G, base, 100, 6, seed=5)
        s2 = orbit_sample(G, base, 100, 6, seed=5)
        assert s1.points == s2.points
        s3 = orbit_sample(G, base, 100, 6, seed=6)
        assert s1.points != s3.points

    def test_word_lengths_within_budget(self):
        s = orbit_sample(genus2_group(), Arc(1.0 + 0j, 1.0), 200, 5, seed=1)
        assert max(s.word_lengths) <= 5
        assert min(s.word_lengths) >= 0

    def test_boundary_base_flagged(self):
        s = orbit_sample(genus2_group(), Arc(1.0 + 0j, 0.0), 10, 3, seed=1)
        assert s.on_boundary
        assert all(p.theta == 0.0 for p in s.points)

    def test_coverage_statistic_range(self):
        s = orbit_sample(genus2_group(), Arc(1.0 + 0j, math.pi / 2), 500, 8, seed=2)
        c = coverage_statistic(s)
        assert 0.0 < c < 1.0

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_sweep_monotone(self, seed):
        rows = coverage_sweep(genus2_group(), Arc(1.0 + 0j, math.pi / 2), 150, 8, seed)
        fr = [r[1] for r in rows]
        assert all(b >= a for a, b in zip(fr, fr[1:]))
        assert fr[-1] > 0.0


class TestLeafwise:
    def test_F0_constant_on_boundary_leaves(self, rng):
        for _ in range(10):
            z = rng.uniform(0, 0.8) * np.exp(1j * rng.uniform(0, TWO_PI))
            zeta = np.exp(1j * rng.uniform(0, TWO_PI))
            assert leafwise_F0(complex(z), Arc(zeta, 0.0)) == 0.0
            assert leafwise_F0(complex(z), Arc(zeta, TWO_PI)) == pytest.approx(1.0)

    def test_F0_generator_invariance(self, rng):
        G = genus2_group()
        worst = 0.0
        for _ in range(100):
            g = G.generators[rng.integers(0, 4)]
            if rng.integers(0, 2):
                g = inverse(g)
            z = rng.uniform(0, 0.7) * np.exp(1j * rng.uniform(0, TWO_PI))
            x = Arc(np.exp(1j * rng.uniform(0, TWO_PI)), rng.uniform(0.3, TWO_PI - 0.3))
            worst = max(worst, abs(leafwise_F0(act_disc(g, complex(z)), act_arc(g, x)) - leafwise_F0(complex(z), x)))
        assert worst < 1e-9

    def test_tautological_eval_is_extension(self, rng):
        f = random_boundary(rng)
        z = 0.3 - 0.2j
        assert tautological_eval(z, f) == extend(f, z)

    def test_tautological_equivariance(self, rng):
        worst = 0.0
        for _ in range(60):
            g = random_element(rng)
            z = rng.uniform(0, 0.6) * np.exp(1j * rng.uniform(0, TWO_PI))
            f = random_boundary(rng)
            lhs = tautological_eval(act_disc(inverse(g), complex(z)), f)
            rhs = tautological_eval(complex(z), compose_with_moebius(f, inverse(g)))
            worst = max(worst, abs(lhs - rhs))
        assert worst < 1e-10

    def test_constant_fiber(self):
        assert tautological_eval(0.2 + 0.4j, BoundaryFunction.constant(0.7)) == pytest.approx(0.7)


class TestProjectiveModel:
    def test_cone_membership_enforced(self):
        with pytest.raises(InvalidPointError):
            ProjectivePoint(1.0, 0.5, 1.0)

    def test_normalization_collapses_scale(self, rng):
        p = random_projective_point(rng)
        q = ProjectivePoint(3 * p.z1, 3 * p.z2, 3 * p.t)
        assert np.allclose(p.coords(), q.coords())

    def test_sign_canonicalization(self, rng):
        p = random_projective_point(rng)
        q = ProjectivePoint(-p.z1, -p.z2, -p.t)
        assert np.allclose(p.coords(), q.coords())

    def test_action_preserves_cone(self, rng):
        p = random_projective_point(rng)
        for _ in range(300):
            p = projective_act(random_element(rng), p)
            assert p.cone_residual() < 1e-9

    def test_identity_action(self, rng):
        from discdyn import identity

        p = random_projective_point(rng)
        q = projective_act(identity(), p)
        assert np.allclose(p.coords(), q.coords())

    def test_random_points_on_cone(self, rng):
        for _ in range(50):
            assert random_projective_point(rng).cone_residual() < 1e-10


class TestProjectiveFunction:
    def test_reference_point_gives_identity_map(self):
        p = ProjectivePoint(1.0, 0.0, 1.0)
        for z in (0.0, 0.3 - 0.4j, 0.7j):
            assert projective_f(z, p) == pytest.approx(z)

    def test_scale_independent(self, rng):
        p = random_projective_point(rng)
        q = ProjectivePoint(2.5 * p.z1, 2.5 * p.z2, 2.5 * p.t)
        z = 0.4 + 0.1j
        assert projective_f(z, p) == pytest.approx(projective_f(z, q), abs=1e-12)

    def test_invariance_under_action(self, rng):
        worst = 0.0
        for _ in range(150):
            g = random_element(rng)
            p = random_projective_point(rng)
            z = rng.uniform(0, 0.7) * complex(np.exp(1j * rng.uniform(0, TWO_PI)))
            try:
                lhs = projective_f(act_disc(g, z), projective_act(g, p))
            except SingularPointError:
                continue
            worst = max(worst, abs(lhs - projective_f(z, p)))
        assert worst < 1e-9

    def test_holomorphic_in_z(self):
        p = random_projective_point(np.random.default_rng(5))
        z = 0.1 + 0.2j
        res = []
        for h in (0.02, 0.01, 0.005):
            fx = (projective_f(z + h, p) - projective_f(z - h, p)) / (2 * h)
            fy = (projective_f(z + 1j * h, p) - projective_f(z - 1j * h, p)) / (2 * h)
            res.append(abs(fx + 1j * fy))
        assert 3.0 < res[0] / res[1] < 5.0
        assert 3.0 < res[1] / res[2] < 5.0

    def test_degenerate_locus_raises(self):
        p = ProjectivePoint(1.0, 1.0, 0.0)   # t = 0: pole sits on the circle
        with pytest.raises(SingularPointError):
            projective_f(1.0 - 1e-14, p)

    def test_outside_disc_rejected(self, rng):
        p = random_projective_point(rng)
        with pytest.raises(ValueError):
            projective_f(1.2, p)


class TestQuotientConsistency:
    def test_orbit_points_project_to_sphere(self):
        # every sampled arc has a well-defined image in the quotient
        s = orbit_sample(genus2_group(), Arc(1.0 + 0j, math.pi / 2), 100, 6, seed=3)
        kinds = {quotient_to_sphere(p).kind for p in s.points}
        assert "interior" in kinds
