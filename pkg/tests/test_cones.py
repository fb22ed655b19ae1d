"""Exact cone arithmetic: double description, duality, Hilbert bases, fans."""

import pytest
from hypothesis import given, settings, strategies as st

from richfan import Cone, Fan, hilbert_basis, is_unimodular
from richfan.cones import unit
from richfan.errors import DimensionMismatch


def orthant(k: int) -> Cone:
    return Cone.from_rays(k, [unit(k, i) for i in range(k)])


class TestDoubleDescription:
    def test_orthant_self_dual(self):
        o = orthant(3)
        assert set(o.dual().rays) == set(o.rays)

    def test_chain_cone_rays(self):
        # x1 >= x2 >= x3 >= 0
        c = Cone.from_inequalities(3, [(1, -1, 0), (0, 1, -1), (0, 0, 1)])
        assert set(c.rays) == {(1, 0, 0), (1, 1, 0), (1, 1, 1)}

    def test_quarter_plane_facets(self):
        c = Cone.from_rays(2, [(1, 0), (1, 2)])
        assert set(c.facet_normals) == {(0, 1), (2, -1)}

    def test_halfplane_has_a_line(self):
        c = Cone.from_inequalities(2, [(0, 1)])
        assert c.lines == ((1, 0),)
        assert c.rays == ((0, 1),)

    def test_single_ray(self):
        c = Cone.from_rays(3, [(2, 4, 6)])
        assert c.rays == ((1, 2, 3),)
        assert c.dim() == 1

    def test_zero_cone(self):
        c = Cone.from_rays(2, [])
        assert c.rays == ()
        assert c.dim() == 0

    def test_primitive_normalization(self):
        c = Cone.from_rays(2, [(2, 0), (0, 4)])
        assert set(c.rays) == {(1, 0), (0, 1)}

    def test_double_dual_identity(self):
        c = Cone.from_rays(3, [(1, 0, 0), (1, 1, 0), (0, 1, 1)])
        assert c.dual().dual() == c

    @given(
        st.lists(
            st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
            min_size=1,
            max_size=4,
        )
    )
    @settings(max_examples=100, deadline=None)
    def test_dual_pairing_nonnegative(self, rays):
        c = Cone.from_rays(3, rays)
        d = c.dual()
        for r in c.rays:
            for f in d.rays:
                assert sum(a * b for a, b in zip(r, f)) >= 0

    @given(
        st.lists(
            st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
            min_size=1,
            max_size=3,
        )
    )
    @settings(max_examples=100, deadline=None)
    def test_rays_satisfy_own_facets(self, rays):
        c = Cone.from_rays(2, rays)
        for r in c.rays:
            assert c.contains(r)
        for l in c.lines:
            assert c.contains(l)
            assert c.contains(tuple(-t for t in l))


class TestContainment:
    def test_interior(self):
        o = orthant(2)
        assert o.interior_contains((1, 1))
        assert not o.interior_contains((1, 0))
        assert o.contains((1, 0))

    def test_intersect(self):
        a = Cone.from_inequalities(2, [(1, -1), (0, 1)])  # x >= y >= 0
        b = Cone.from_inequalities(2, [(-1, 1), (1, 0)])  # y >= x >= 0
        cap = a.intersect(b)
        assert cap.rays == ((1, 1),)

    def test_contains_cone(self):
        o = orthant(2)
        sub = Cone.from_rays(2, [(1, 0), (1, 1)])
        assert o.contains_cone(sub)
        assert not sub.contains_cone(o)

    def test_pointed(self):
        assert orthant(2).is_pointed
        assert not Cone.from_inequalities(2, [(0, 1)]).is_pointed


class TestHilbertBasis:
    def test_orthant(self):
        assert sorted(hilbert_basis(orthant(2))) == [(0, 1), (1, 0)]

    def test_needs_interior_point(self):
        c = Cone.from_rays(2, [(1, 0), (1, 2)])
        assert sorted(hilbert_basis(c)) == [(1, 0), (1, 1), (1, 2)]

    def test_deep_interior_points(self):
        c = Cone.from_rays(2, [(1, 0), (1, 4)])
        assert sorted(hilbert_basis(c)) == [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4)]

    def test_every_small_point_is_a_combination(self):
        c = Cone.from_rays(2, [(2, 1), (1, 3)])
        hb = hilbert_basis(c)
        # greedy subtraction reaches zero for every contained lattice point
        for x in range(7):
            for y in range(7):
                if not c.contains((x, y)):
                    continue
                v = (x, y)
                for _ in range(40):
                    if v == (0, 0):
                        break
                    for h in hb:
                        w = tuple(a - b for a, b in zip(v, h))
                        if c.contains(w):
                            v = w
                            break
                    else:
                        pytest.fail(f"({x},{y}) stuck at {v}")
                assert v == (0, 0)


class TestUnimodular:
    def test_standard(self):
        assert is_unimodular(Cone.from_rays(2, [(1, 0), (1, 1)]))

    def test_index_two(self):
        assert not is_unimodular(Cone.from_rays(2, [(1, 0), (1, 2)]))

    def test_non_simplicial(self):
        c = Cone.from_rays(3, [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
        assert len(c.rays) == 4
        assert not is_unimodular(c)

    def test_lower_dimensional_unimodular(self):
        assert is_unimodular(Cone.from_rays(3, [(1, 0, 0), (1, 1, 0)]))


class TestFan:
    def two_cone_fan(self) -> Fan:
        a = Cone.from_rays(2, [(1, 0), (1, 1)])
        b = Cone.from_rays(2, [(1, 1), (0, 1)])
        return Fan(2, [a, b])

    def test_valid_and_complete(self):
        f = self.two_cone_fan()
        assert f.is_valid()
        assert f.is_complete_on_orthant()

    def test_overlapping_interiors_invalid(self):
        a = Cone.from_rays(2, [(1, 0), (1, 2)])
        b = Cone.from_rays(2, [(2, 1), (0, 1)])
        assert not Fan(2, [a, b]).is_valid()

    def test_gap_not_complete(self):
        f = Fan(2, [Cone.from_rays(2, [(1, 0), (1, 1)])])
        assert not f.is_complete_on_orthant()

    def test_orthant_fan_complete(self):
        assert Fan(2, [orthant(2)]).is_complete_on_orthant()

    def test_refine_identity(self):
        f = self.two_cone_fan()
        assert f.refine(Fan(2, [orthant(2)])) == f

    def test_refine_rank_mismatch(self):
        with pytest.raises(DimensionMismatch):
            self.two_cone_fan().refine(Fan(3, [orthant(3)]))

    def test_restrict_drops_coordinate(self):
        # x >= y >= z >= 0 sliced at z = 0 leaves x >= y >= 0
        cones = [
            Cone.from_inequalities(3, [(1, -1, 0), (0, 1, -1), (0, 0, 1)]),
            Cone.from_inequalities(3, [(-1, 1, 0), (1, 0, -1), (0, 0, 1)]),
        ]
        f = Fan(3, cones)
        r = f.restrict([2])
        assert r.rank == 2

    def test_round_trip(self):
        f = self.two_cone_fan()
        assert Fan.from_obj(f.to_obj()) == f

    def test_canonical_cone_order_is_stable(self):
        f = self.two_cone_fan()
        g = Fan(2, list(reversed(list(f.cones))))
        assert f.to_obj() == g.to_obj()
