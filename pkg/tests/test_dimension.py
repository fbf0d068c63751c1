import pytest

from chowforms import MPoly, VarTable
from chowforms.errors import UsageError
from chowforms.mpoly import parse_poly
from chowforms.dimension import (ProjectiveVariety, RandomGrid, affine_solvable,
                                 dim_leq, dim_projection, find_dimension,
                                 has_projective_zero)

X3 = VarTable(("x0", "x1", "x2"))
X4 = VarTable(("x0", "x1", "x2", "x3"))
GRID = RandomGrid(seed=20240817)


def P(text, vars):
    return parse_poly(text, vars)


def twisted_cubic():
    return ProjectiveVariety(X4, [P("x0*x2 - x1^2", X4), P("x1*x3 - x2^2", X4),
                                  P("x0*x3 - x1*x2", X4)])


class TestProjectiveZero:
    def test_unit_ideal_empty(self):
        V = ProjectiveVariety(X3, [MPoly.const(X3, 2)])
        assert not has_projective_zero(V, GRID)

    def test_all_coordinate_pairs_has_points(self):
        # V(x0*x1, x0*x2, x1*x2) = the three coordinate points.
        V = ProjectiveVariety(X3, [P("x0*x1", X3), P("x0*x2", X3), P("x1*x2", X3)])
        assert has_projective_zero(V, GRID)

    def test_full_coordinate_ideal_empty(self):
        V = ProjectiveVariety(X3, [MPoly.var(X3, n) for n in X3.names])
        assert not has_projective_zero(V, GRID)

    def test_constructed_common_zero(self, rng):
        # forms vanishing at (1:1:1)
        for _ in range(5):
            fs = []
            for _ in range(3):
                a, b = rng.randint(-9, 9), rng.randint(-9, 9)
                fs.append(MPoly(X3, {(2, 0, 0): a, (0, 2, 0): b,
                                     (0, 0, 2): -a - b}))
            V = ProjectiveVariety(X3, fs)
            assert has_projective_zero(V, GRID)

class TestDimLeq:
    def test_hyperplane(self):
        V = ProjectiveVariety(X3, [MPoly.var(X3, "x0")])
        assert dim_leq(V, 1, GRID)
        assert not dim_leq(V, 0, GRID)

    def test_point(self):
        V = ProjectiveVariety(X3, [MPoly.var(X3, "x0"), MPoly.var(X3, "x1")])
        assert dim_leq(V, 0, GRID)

    def test_twisted_cubic_is_a_curve(self):
        V = twisted_cubic()
        assert dim_leq(V, 1, GRID)
        assert not dim_leq(V, 0, GRID)

    def test_monotone_in_r(self):
        V = twisted_cubic()
        verdicts = [dim_leq(V, r, GRID) for r in range(4)]
        # once true, stays true
        assert verdicts == sorted(verdicts)

    def test_bad_r_rejected(self):
        V = ProjectiveVariety(X3, [MPoly.var(X3, "x0")])
        with pytest.raises(UsageError):
            dim_leq(V, 5, GRID)


class TestFindDimension:
    def test_empty(self):
        V = ProjectiveVariety(X3, [MPoly.const(X3, 1)])
        assert find_dimension(V, GRID) == -1

    def test_hypersurface(self):
        V = ProjectiveVariety(X3, [P("x0*x2 - x1^2", X3)])
        assert find_dimension(V, GRID) == 1

    def test_twisted_cubic(self):
        assert find_dimension(twisted_cubic(), GRID) == 1

class TestAffineSolvable:
    def test_inconsistent_linear(self):
        T = VarTable(("t0", "t1"))
        eqs = [P("t0 + t1 - 1", T), P("t0 + t1 - 2", T)]
        assert not affine_solvable(eqs, T, GRID)

    def test_unique_solution(self):
        T = VarTable(("t0", "t1"))
        eqs = [P("t0 - 1", T), P("t1 - 2", T), P("t0*t1 - 2", T)]
        assert affine_solvable(eqs, T, GRID)

    def test_unique_solution_contradicted(self):
        T = VarTable(("t0", "t1"))
        eqs = [P("t0 - 1", T), P("t1 - 2", T), P("t0*t1 - 5", T)]
        assert not affine_solvable(eqs, T, GRID)

    def test_plane_curve(self):
        T = VarTable(("t0", "t1"))
        assert affine_solvable([P("t0^2 + t1^2 - 1", T)], T, GRID)

    def test_two_conics(self):
        T = VarTable(("t0", "t1"))
        eqs = [P("t0^2 + t1^2 - 25", T), P("t0 - 3", T)]
        assert affine_solvable(eqs, T, GRID)


class TestDimProjection:
    def inner_product(self):
        vars = VarTable(("x0", "x1", "y0", "y1"), blocks=((0, 1), (2, 3)))
        f = P("x0*y0 + x1*y1", vars)
        return [f], [("x0", "x1"), ("y0", "y1")]

    def product_of_conics(self):
        names = ("x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3")
        vars = VarTable(names, blocks=((0, 1, 2, 3), (4, 5, 6, 7)))
        polys = [P("x3", vars), P("x0*x2 - x1^2", vars),
                 P("y3", vars), P("y0^2 + y1^2 - y2^2", vars)]
        return polys, [names[:4], names[4:]]

    def test_inner_product_projections(self):
        polys, blocks = self.inner_product()
        assert dim_projection(polys, blocks, [0], GRID) == 1
        assert dim_projection(polys, blocks, [1], GRID) == 1
        assert dim_projection(polys, blocks, [0, 1], GRID) == 1

    def test_product_of_conics_projections(self):
        polys, blocks = self.product_of_conics()
        assert dim_projection(polys, blocks, [0], GRID) == 1
        assert dim_projection(polys, blocks, [1], GRID) == 1
        assert dim_projection(polys, blocks, [0, 1], GRID) == 2

    def test_projection_table_is_monotone_and_submodular(self):
        polys, blocks = self.product_of_conics()
        d = {(): 0}
        d[(0,)] = dim_projection(polys, blocks, [0], GRID) + 1
        d[(1,)] = dim_projection(polys, blocks, [1], GRID) + 1
        d[(0, 1)] = dim_projection(polys, blocks, [0, 1], GRID) + 2
        # cone dimensions: monotone and submodular
        assert d[()] <= d[(0,)] <= d[(0, 1)]
        assert d[()] <= d[(1,)] <= d[(0, 1)]
        assert d[(0,)] + d[(1,)] >= d[(0, 1)] + d[()]
