import random

import pytest

from oracles import OCTAHEDRON, RP2_6, TORUS7
from trisurf.cycles import double_pyramid
from trisurf.errors import EmptyComplex, NotAClosedSurfaceError
from trisurf.hypercore import Hypergraph3
from trisurf.surface import (
    SurfaceClass,
    Verdict,
    classify_surface,
    euler_characteristic,
    face_count_identity,
    is_closed_surface,
    is_orientable,
    is_orientable_bruteforce,
    skeleton_counts,
)


def relabel(h: Hypergraph3, perm: dict[int, int]) -> Hypergraph3:
    return Hypergraph3.from_edges(
        [tuple(perm[v] for v in e) for e in h.edges], n_vertices=h.n_vertices
    )


class TestCounts:
    def test_octahedron_counts(self):
        c = skeleton_counts(OCTAHEDRON)
        assert (c.v, c.e, c.f) == (6, 12, 8)
        assert euler_characteristic(OCTAHEDRON) == 2

    def test_torus_chi_zero(self):
        assert euler_characteristic(TORUS7) == 0

    def test_projective_plane_chi_one(self):
        assert euler_characteristic(RP2_6) == 1

    def test_empty_raises(self):
        with pytest.raises(EmptyComplex):
            skeleton_counts(Hypergraph3.from_edges([]))

    def test_isolated_vertices_ignored(self):
        padded = Hypergraph3(n_vertices=20, edges=OCTAHEDRON.edges)
        assert skeleton_counts(padded) == skeleton_counts(OCTAHEDRON)
        assert classify_surface(padded) == classify_surface(OCTAHEDRON)


class TestRecognition:
    def test_octahedron_is_closed(self):
        assert is_closed_surface(OCTAHEDRON) == (True, None)

    def test_single_triangle_link_fails(self):
        h = Hypergraph3.from_edges([(0, 1, 2)])
        ok, reason = is_closed_surface(h)
        assert not ok
        assert reason == "LinkNotACycle(0)"

    def test_disconnected_surfaces(self):
        tetra = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        far = [tuple(v + 4 for v in e) for e in tetra]
        ok, reason = is_closed_surface(Hypergraph3.from_edges(tetra + far))
        assert not ok
        assert reason == "Disconnected"

    def test_pinched_sphere_fails(self):
        # two tetrahedron boundaries sharing one vertex: that link is two cycles
        tetra = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        other = [(0, 4, 5), (0, 4, 6), (0, 5, 6), (4, 5, 6)]
        ok, reason = is_closed_surface(Hypergraph3.from_edges(tetra + other))
        assert not ok
        assert reason == "LinkNotACycle(0)"


class TestClassification:
    def test_octahedron_sphere(self):
        cls = classify_surface(OCTAHEDRON)
        assert str(cls) == "OrientableGenus(0)"
        assert cls.is_sphere()

    @pytest.mark.parametrize("s", [3, 4, 6, 10])
    def test_double_pyramids_are_spheres(self, s):
        assert classify_surface(double_pyramid(s)).is_sphere()

    def test_torus(self):
        cls = classify_surface(TORUS7)
        assert cls == SurfaceClass(verdict=Verdict.ORIENTABLE, genus=1, chi=0)

    def test_projective_plane(self):
        cls = classify_surface(RP2_6)
        assert str(cls) == "NonOrientableCrossCaps(1)"

    def test_not_a_surface_carries_reason(self):
        cls = classify_surface(Hypergraph3.from_edges([(0, 1, 2)]))
        assert cls.verdict is Verdict.NOT_A_SURFACE
        assert not cls.is_surface

    def test_empty_complex(self):
        cls = classify_surface(Hypergraph3.from_edges([]))
        assert cls.reason == "EmptyComplex"

    def test_face_count_identity(self):
        for h in (OCTAHEDRON, TORUS7, RP2_6, double_pyramid(5)):
            assert face_count_identity(h)
        with pytest.raises(NotAClosedSurfaceError):
            face_count_identity(Hypergraph3.from_edges([(0, 1, 2)]))


class TestOrientability:
    def test_requires_closed_surface(self):
        with pytest.raises(NotAClosedSurfaceError):
            is_orientable(Hypergraph3.from_edges([(0, 1, 2)]))

    @pytest.mark.parametrize(
        "h", [OCTAHEDRON, TORUS7, RP2_6, double_pyramid(3), double_pyramid(5)]
    )
    def test_agrees_with_bruteforce(self, h):
        assert is_orientable(h) == is_orientable_bruteforce(h)

    def test_bruteforce_cap(self):
        with pytest.raises(ValueError):
            is_orientable_bruteforce(double_pyramid(11))  # 22 faces


class TestRelabelingInvariance:
    @pytest.mark.parametrize("h", [OCTAHEDRON, TORUS7, RP2_6])
    def test_classification_invariant(self, h):
        rng = random.Random(42)
        verts = list(range(h.n_vertices))
        for _ in range(10):
            shuffled = verts[:]
            rng.shuffle(shuffled)
            perm = dict(zip(verts, shuffled))
            assert classify_surface(relabel(h, perm)) == classify_surface(h)
