import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fillvol._rational import Q
from fillvol.constants import build_constants
from fillvol.decomposition import (
    DecompositionError,
    VolumeGrowth,
    choose_slice_radius,
    compute_r0,
    decompose,
    verify_decomposition,
    vitali_select,
    volume_growth,
)
from fillvol.generators import box_surface, subdivided_sphere
from fillvol.geometry import translate

C1 = build_constants(1, 2)
C2 = build_constants(2, 3)


class TestVolumeGrowth:
    def test_square(self, square):
        assert volume_growth(square, (0, 0), Q(1, 2)) == 1.0
        assert volume_growth(square, (0, 0), 0) == 0.0
        assert volume_growth(square, (0, 0), 2) == 4.0

    def test_float_matches_exact(self, octa):
        g = VolumeGrowth(octa, (Q(1, 3), Q(1, 3), Q(1, 3)))
        for r in (Q(1, 7), Q(2, 5), Q(5, 7), Q(3, 2)):
            assert g(r) == pytest.approx(g.exact(r), rel=1e-9)

    @given(st.lists(st.floats(0.001, 3), min_size=2, max_size=20))
    def test_monotone(self, radii):
        g = VolumeGrowth(subdivided_sphere(1), (Q(1, 2), Q(1, 3), Q(-1, 5)))
        radii = sorted(radii)
        vals = g.profile(radii)
        assert np.all(np.diff(vals) >= -1e-9)


def square_growth(r):
    """V((1/2, 0), r) on the unit square loop, by hand."""
    if r <= Q(1, 2):
        return 2 * r
    if r < 1:
        return 1 + 2 * r
    return 4


class TestComputeR0:
    def test_square_edge_midpoint(self, square):
        # A_1 eps = 1/2; V grows to 4 and then the condition 4 >= r/2 holds until r = 8
        x = (Q(1, 2), Q(0))
        table = C1.with_epsilon(1, 0.5)
        density = table[1].A * table[1].epsilon
        r0 = compute_r0(square, x, table)
        assert float(r0) == pytest.approx(8, rel=1e-6)
        assert square_growth(r0) >= density * r0

    def test_scale_equivariance(self, square):
        x = (Q(3, 2), Q(0))
        big = square.map_terms(lambda s: tuple(tuple(3 * a for a in v) for v in s))
        r0 = compute_r0(square, (Q(1, 2), Q(0)), C1.with_epsilon(1, 0.5))
        assert compute_r0(big, x, C1.with_epsilon(1, 0.5)) == pytest.approx(3 * r0, rel=1e-6)

    def test_last_crossing(self, octa):
        x = (Q(1, 3), Q(1, 3), Q(1, 3))
        density = C2[2].A * C2[2].epsilon
        r0 = compute_r0(octa, x, C2)
        assert volume_growth(octa, x, r0) >= density * float(r0) ** 2
        g = VolumeGrowth(octa, x)
        later = np.linspace(float(r0) * (1 + 1e-5), 5 * float(r0), 200)
        assert np.all(g.profile(later) < density * later**2)

    def test_small_density_gives_large_radius(self, octa):
        x = (Q(1, 3), Q(1, 3), Q(1, 3))
        assert compute_r0(octa, x, C2, epsilon=1e-3) > compute_r0(octa, x, C2, epsilon=1e-1)


class TestVitali:
    def test_far_apart(self):
        assert vitali_select([((0,), Q(1, 2)), ((10,), Q(1, 2))]) == [0, 1]

    def test_overlap_keeps_first(self):
        assert vitali_select([((0,), Q(1, 2)), ((1,), Q(1, 2))]) == [0]

    def test_single(self):
        assert vitali_select([((0, 0), Q(1))]) == [0]

    def test_largest_first(self):
        assert vitali_select([((0,), Q(1, 2)), ((1,), Q(2))]) == [1]

    @given(st.lists(st.tuples(st.integers(-20, 20), st.integers(1, 6)), min_size=1, max_size=12))
    def test_disjoint_and_covering(self, raw):
        cands = [((Q(x),), Q(r, 2)) for x, r in raw]
        kept = vitali_select(cands)
        for i in kept:
            for j in kept:
                if i < j:
                    assert abs(cands[i][0][0] - cands[j][0][0]) > 2 * cands[i][1] + 2 * cands[j][1]
        # 5r covering: every B(x, r0) lies in some kept B(x_j, 5 r0_j)
        for x, r in cands:
            assert any(abs(x[0] - cands[j][0][0]) + r <= 5 * cands[j][1] for j in kept)


class TestSliceRadius:
    def test_octahedron_face(self, octa):
        x = (Q(1, 3), Q(1, 3), Q(1, 3))
        r_hat = compute_r0(octa, x, C2)
        choice = choose_slice_radius(octa, x, r_hat, C2, samples=64)
        assert r_hat < choice.radius < 2 * r_hat
        assert choice.bound_ok == (choice.slice_volume < choice.bound)
        assert choice.slice.is_cycle()

    def test_single_sample(self, octa):
        x = (Q(1, 3), Q(1, 3), Q(1, 3))
        choice = choose_slice_radius(octa, x, Q(1, 5), C2, samples=1, seed=3)
        assert choice.tried == 1
        assert choice.bound_ok == (choice.slice_volume < choice.bound)


class TestDecompose:
    def test_octahedron(self, octa):
        dec = decompose(octa, C2)
        assert dec.ok and len(dec.balls) >= 1
        assert verify_decomposition(octa, dec, C2).ok

    def test_two_components(self, octa):
        z = octa + translate(octa, (100, 0, 0))
        dec = decompose(z, C2)
        assert dec.ok and len(dec.balls) == 2
        assert verify_decomposition(z, dec, C2).ok
        assert dec.coverage >= 5.0**-2

    def test_long_box_partial_cover(self):
        z = box_surface((1, 1, 200), (1, 1, 200))
        dec = decompose(z, C2)
        assert dec.ok and dec.rest and dec.coverage < 1
        rep = verify_decomposition(z, dec, C2)
        assert rep.ok, rep.lines()

    def test_deterministic(self, octa):
        a, b = decompose(octa, C2, seed=5), decompose(octa, C2, seed=5)
        assert a.balls == b.balls and a.rest == b.rest

    def test_rejects(self, square, octa):
        with pytest.raises(ValueError):
            decompose(square, C1)
        with pytest.raises(ValueError):
            decompose(octa - octa, C2)  # empty, volume 0
        with pytest.raises(ValueError):
            decompose(_open_disc(), C2)

    def test_failure_reports_coverage(self, octa):
        with pytest.raises(DecompositionError) as err:
            decompose(octa, C2, epsilon=1e4, max_retries=0)
        assert 0 <= err.value.best_coverage < 5.0**-2

    def test_tampered_certificate_detected(self, octa):
        dec = decompose(octa, C2)
        dec.pieces[0].volume *= 2
        rep = verify_decomposition(octa, dec, C2)
        assert not rep["matches producer"]


def _open_disc():
    from fillvol.chain import Chain

    return Chain(2, 3, [(((0, 0, 0), (1, 0, 0), (0, 1, 0)), 1)])
