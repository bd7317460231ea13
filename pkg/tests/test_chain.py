import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_chain
from fillvol._rational import Q
from fillvol.chain import Z, Z2, Chain, add, boundary, canonicalize, is_cycle, negate, permutation_sign

v0, v1, v2 = (0, 0), (1, 0), (2, 5)  # lexicographic order v0 < v1 < v2


def P(*xs):
    return tuple(Q(x) for x in xs)


class TestCanonicalize:
    def test_transposition(self):
        assert canonicalize([v1, v0], 1) == ((P(*v0), P(*v1)), -1)

    def test_identity(self):
        assert canonicalize([v0, v1], 1) == ((P(*v0), P(*v1)), 1)

    def test_three_cycle_is_even(self):
        assert canonicalize([v2, v0, v1], 1) == ((P(*v0), P(*v1), P(*v2)), 1)

    def test_repeated_vertex_is_zero(self):
        assert canonicalize([v0, v1, v0], 3)[1] == 0

    def test_z2_reduces(self):
        assert canonicalize([v1, v0], -3, Z2)[1] == 1
        assert canonicalize([v1, v0], 2, Z2)[1] == 0

    @given(st.permutations(range(5)))
    def test_sign_is_parity(self, perm):
        inversions = sum(1 for i in range(5) for j in range(i + 1, 5) if perm[i] > perm[j])
        assert permutation_sign(perm) == (-1) ** inversions


class TestArithmetic:
    def test_additive_inverse(self):
        a = Chain(1, 2, [((v0, v1), 3), ((v1, v2), -1)])
        assert not (a + negate(a))
        assert a + Chain.empty(1, 2) == a

    def test_characteristic_two(self):
        s = Chain(1, 2, [((v0, v1), 1)], Z2)
        assert not (s + s)
        assert -s == s

    def test_mismatch_rejected(self):
        a = Chain(1, 2, [((v0, v1), 1)])
        with pytest.raises(ValueError):
            a + Chain(2, 2)
        with pytest.raises(ValueError):
            a + Chain(1, 3)
        with pytest.raises(ValueError):
            a + Chain(1, 2, ring=Z2)

    def test_bad_vertex_count_rejected(self):
        with pytest.raises(ValueError):
            Chain(2, 2, [((v0, v1), 1)])
        with pytest.raises(ValueError):
            Chain(1, 3, [((v0, v1), 1)])

    def test_scalar(self):
        a = Chain(1, 2, [((v0, v1), 1)])
        assert 2 * a == a + a
        assert not (a * 0)


class TestBoundary:
    def test_triangle(self):
        tri = Chain(2, 2, [((v0, v1, v2), 1)])
        expected = Chain(1, 2, [((v1, v2), 1), ((v0, v2), -1), ((v0, v1), 1)])
        assert boundary(tri) == expected

    def test_square_loop_cancels(self, square):
        # 8 endpoint terms cancel pairwise
        assert not square.boundary()
        assert square.boundary().dim == 0
        assert is_cycle(square)

    def test_single_segment_not_cycle(self):
        assert not Chain(1, 2, [((v0, v1), 1)]).is_cycle()

    def test_empty_is_cycle(self):
        assert Chain.empty(2, 3).is_cycle()

    def test_zero_chain_augmentation(self):
        assert Chain(0, 2, [((v0,), 1), ((v1,), -1)]).is_cycle()
        assert not Chain(0, 2, [((v0,), 1)]).is_cycle()

    def test_dim_zero_rejected(self):
        with pytest.raises(ValueError):
            Chain(0, 2, [((v0,), 1)]).boundary()

    @pytest.mark.parametrize("ring", [Z, Z2])
    def test_boundary_squared_random(self, ring):
        rng = random.Random(7)
        for k in (2, 3):
            for _ in range(20):
                c = random_chain(rng, k, 4, ring)
                assert not c.boundary().boundary()


coords = st.integers(-3, 3)


@st.composite
def chains(draw, k=2, N=3, ring=Z):
    n = draw(st.integers(0, 5))
    terms = []
    for _ in range(n):
        verts = [tuple(draw(coords) for _ in range(N)) for _ in range(k + 1)]
        terms.append((verts, draw(st.integers(-3, 3))))
    return Chain(k, N, terms, ring)


class TestProperties:
    @given(chains(), st.sampled_from([Z, Z2]))
    def test_boundary_squared(self, c, ring):
        c = Chain(c.dim, c.ambient, list(c), ring)
        assert not c.boundary().boundary()

    @given(chains(), chains(), chains())
    def test_add_associative_commutative(self, a, b, c):
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert add(a, b) == a + b

    @given(chains())
    def test_canonicalize_idempotent(self, c):
        for s, m in c:
            assert canonicalize(s, m) == (s, m)

    @given(chains(), st.data())
    def test_swap_and_negate(self, c, data):
        if not c:
            return
        terms = []
        for s, m in c:
            i, j = data.draw(st.sampled_from([(0, 1), (0, 2), (1, 2)]))
            s = list(s)
            s[i], s[j] = s[j], s[i]
            terms.append((s, -m))
        assert Chain(c.dim, c.ambient, terms) == c

    @given(chains(ring=Z2))
    def test_z2_self_negation(self, c):
        assert -c == c
        assert not (c + c)
