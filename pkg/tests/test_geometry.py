import itertools
import random
from fractions import Fraction

import pytest

from wilfkit import geometry as G
from wilfkit.geometry import (
    EmptyInput,
    NotPointed,
    Relation,
    eq,
    ge,
    system,
)


def kunz_cone_system(m):
    # local copy so these tests do not depend on the cones module
    d = m - 1
    cons = []
    for i in range(1, m):
        for j in range(i, m):
            if (i + j) % m == 0:
                continue
            coeffs = [0] * d
            coeffs[i - 1] += 1
            coeffs[j - 1] += 1
            coeffs[(i + j) % m - 1] -= 1
            cons.append(ge(coeffs, 0))
    return system(d, cons)


def brute_force_rays(sys):
    """Independent oracle: try every (dim-1)-subset of constraints."""
    d = sys.dim
    normals = [c.coeffs for c in sys.constraints]
    found = set()
    for subset in itertools.combinations(range(len(normals)), d - 1):
        rows = [normals[i] for i in subset]
        v = G.nullspace_vector(rows, d)
        if v is None:
            continue
        for cand in (v, tuple(-x for x in v)):
            if all(G.dot(n, cand) >= 0 for n in normals):
                tight = [n for n in normals if G.dot(n, cand) == 0]
                if G.integer_rank(tight, d) == d - 1:
                    found.add(cand)
    return sorted(found)


class TestPrimitives:
    def test_primitive_ray_keeps_direction(self):
        assert G.primitive_ray((-2, -4)) == (-1, -2)
        assert G.primitive_ray((Fraction(1, 2), Fraction(3, 4))) == (2, 3)

    def test_primitive_vector_fixes_sign(self):
        assert G.primitive_vector((-2, -4)) == (1, 2)
        assert G.primitive_vector((0, -3, 6)) == (0, 1, -2)

    def test_rank(self):
        assert G.codimension([], 4) == 0
        assert G.codimension([(1, 0), (0, 1)], 2) == 2
        assert G.codimension([(1, 1), (2, 2)], 2) == 1


class TestExtremeRays:
    def test_kunz_m3(self):
        rays = G.extreme_rays(kunz_cone_system(3))
        assert rays == [(1, 2), (2, 1)]

    def test_kunz_m7_count(self):
        rays = G.extreme_rays(kunz_cone_system(7))
        assert len(rays) == 30

    def test_rays_satisfy_all_constraints(self):
        sys = kunz_cone_system(6)
        for r in G.extreme_rays(sys):
            assert sys.satisfied_by(r)

    def test_not_pointed(self):
        sys = system(2, [ge((1, 0), 0)])
        with pytest.raises(NotPointed):
            G.extreme_rays(sys)

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            G.extreme_rays(system(2, []))

    def test_matches_brute_force_on_random_cones(self):
        rng = random.Random(20240811)
        checked = 0
        while checked < 40:
            d = rng.randint(2, 4)
            n = rng.randint(d, 8)
            cons = []
            for _ in range(n):
                coeffs = [rng.randint(-3, 3) for _ in range(d)]
                if any(coeffs):
                    cons.append(ge(coeffs, 0))
            if not cons:
                continue
            sys = system(d, cons)
            normals = [c.coeffs for c in cons]
            if G.integer_rank(normals, d) != d:
                continue
            checked += 1
            assert G.extreme_rays(sys) == brute_force_rays(sys)


class TestRationalFeasible:
    def test_contradictory_pair(self):
        sys = system(1, [ge((1,), 1), ge((-1,), 0)])
        assert not G.rational_feasible(sys).feasible

    def test_simple_feasible(self):
        sys = system(1, [ge((1,), 1)])
        res = G.rational_feasible(sys)
        assert res.feasible
        assert sys.satisfied_by(res.witness)

    def test_equalities_and_inequalities(self):
        sys = system(3, [eq((1, 1, 1), 6), ge((1, -1, 0), 2), ge((0, 0, 1), 1)])
        res = G.rational_feasible(sys)
        assert res.feasible
        assert sys.satisfied_by(res.witness)

    def test_inconsistent_equalities(self):
        sys = system(2, [eq((1, 1), 1), eq((2, 2), 3)])
        assert not G.rational_feasible(sys).feasible

    def test_trivial_rows(self):
        sys = system(2, [ge((0, 0), 1)])
        assert not G.rational_feasible(sys).feasible
        sys = system(2, [ge((0, 0), -1), eq((0, 0), 0), ge((1, 0), 0)])
        assert G.rational_feasible(sys).feasible

    def test_agrees_with_fourier_motzkin_randomized(self):
        rng = random.Random(987123)
        for _ in range(120):
            d = rng.randint(1, 5)
            n = rng.randint(1, 10)
            cons = []
            for _ in range(n):
                coeffs = [rng.randint(-3, 3) for _ in range(d)]
                rel = Relation.EQ if rng.random() < 0.25 else Relation.GE
                cons.append(G.constraint(coeffs, rng.randint(-4, 4), rel))
            sys = system(d, cons)
            assert G.rational_feasible(sys).feasible == G.fourier_motzkin_feasible(sys)


class TestMinimize:
    def test_bounded_minimum(self):
        sys = system(2, [ge((1, 0), 2), ge((0, 1), 3), ge((-1, -1), -10)])
        st, point, val = G.minimize(sys, [1, 1])
        assert st == "optimal"
        assert val == 5
        st, point, val = G.maximize(sys, [1, 1])
        assert st == "optimal"
        assert val == 10

    def test_unbounded(self):
        sys = system(1, [ge((1,), 0)])
        st, _, _ = G.maximize(sys, [1])
        assert st == "unbounded"

    def test_infeasible(self):
        sys = system(1, [ge((1,), 1), ge((-1,), 0)])
        assert G.minimize(sys, [1])[0] == "infeasible"

    def test_optimum_with_equalities(self):
        sys = system(3, [eq((1, 1, 0), 4), ge((0, 0, 1), -2), ge((0, 1, 0), 1)])
        st, point, val = G.minimize(sys, [1, 0, 1])
        assert st == "optimal"
        # x0 = 4 - x1 <= 3, x2 >= -2
        assert val == 1


class TestIntegerSearch:
    def test_point_found(self):
        sys = system(1, [ge((1,), 1), ge((-1,), -3), eq((2,), 4)])
        res = G.find_integer_point(sys)
        assert res.status == "POINT"
        assert res.point == (2,)

    def test_parity_empty(self):
        sys = system(1, [eq((2,), 1), ge((1,), 0)])
        res = G.find_integer_point(sys)
        assert res.status == "EMPTY"

    def test_fractional_slab_empty(self):
        # 3 <= 5x <= 4 has rational points but no integer ones
        sys = system(1, [ge((5,), 3), ge((-5,), -4)])
        res = G.find_integer_point(sys)
        assert res.status == "EMPTY"

    def test_budget_exhausted_reported(self):
        # unbounded strip with no integer points: 4x - 4y = 2 scaled oddly
        sys = system(2, [eq((2, -2), 1), ge((1, 0), 0)])
        res = G.find_integer_point(sys, node_budget=5)
        assert res.status in ("EMPTY", "BUDGET_EXHAUSTED")

    def test_point_satisfies_system(self):
        sys = system(2, [ge((1, 0), 1), ge((0, 1), 1), ge((-1, -1), -5), ge((3, -7), 0)])
        res = G.find_integer_point(sys)
        assert res.status == "POINT"
        assert sys.satisfied_by(res.point)

    def test_random_boxes_agree_with_enumeration(self):
        rng = random.Random(5150)
        for _ in range(30):
            d = rng.randint(1, 3)
            cons = []
            for j in range(d):
                unit = [0] * d
                unit[j] = 1
                lo = rng.randint(-2, 2)
                cons.append(ge(unit, lo))
                cons.append(ge([-u for u in unit], -(lo + rng.randint(0, 3))))
            for _ in range(rng.randint(0, 3)):
                cons.append(ge([rng.randint(-2, 2) for _ in range(d)], rng.randint(-3, 3)))
            sys = system(d, cons)
            pts = G.enumerate_integer_points(sys)
            res = G.find_integer_point(sys)
            if pts:
                assert res.status == "POINT"
                assert res.point in pts
            else:
                assert res.status == "EMPTY"


class TestEnumerateIntegerPoints:
    def test_simple_box(self):
        sys = system(2, [ge((1, 0), 0), ge((0, 1), 0), ge((-1, 0), -1), ge((0, -1), -1)])
        pts = G.enumerate_integer_points(sys)
        assert pts == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_unbounded_raises(self):
        sys = system(1, [ge((1,), 0)])
        with pytest.raises(G.UnboundedRegion):
            G.enumerate_integer_points(sys)

    def test_empty_region(self):
        sys = system(1, [ge((1,), 1), ge((-1,), 0)])
        assert G.enumerate_integer_points(sys) == []
