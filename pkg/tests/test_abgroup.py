import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seifert5.abgroup import (
    AbelianGroup,
    IntMatrix,
    PrimePower,
    crt,
    factorize,
    group_from_cokernel,
    is_isomorphic,
    is_prime,
    primary_decomposition,
    smith_normal_form,
)


def random_matrix(rng, max_dim=6, max_entry=20):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(-max_entry, max_entry) for _ in range(cols)] for _ in range(rows)]
    )


def check_snf(A):
    U, D, V = smith_normal_form(A)
    assert U @ A @ V == D
    assert abs(U.det()) == 1
    assert abs(V.det()) == 1
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D.entries[i][j] == 0
    diag = D.diagonal()
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a != 0:
            assert b % a == 0
        else:
            assert b == 0
    return diag


class TestSmithNormalForm:
    def test_identity(self):
        I3 = IntMatrix.identity(3)
        U, D, V = smith_normal_form(I3)
        assert (U, D, V) == (I3, I3, I3)

    def test_two_by_two(self):
        # d1 is the gcd of all entries, d1*d2 equals |det|
        A = IntMatrix.from_rows([[2, 4], [6, 8]])
        diag = check_snf(A)
        assert diag == (2, 4)
        entries = [x for row in A.entries for x in row]
        assert diag[0] == math.gcd(*entries)
        assert diag[0] * diag[1] == abs(A.det())

    def test_zero(self):
        A = IntMatrix.zeros(2, 2)
        U, D, V = smith_normal_form(A)
        assert D == A
        assert U == IntMatrix.identity(2)
        assert V == IntMatrix.identity(2)

    def test_fuzz(self):
        rng = random.Random(20260810)
        for _ in range(500):
            check_snf(random_matrix(rng))

    def test_deterministic(self):
        A = IntMatrix.from_rows([[3, 1, -4], [2, 0, 5], [7, -2, 2]])
        assert smith_normal_form(A) == smith_normal_form(A)

    def test_rectangular(self):
        diag = check_snf(IntMatrix.from_rows([[2, 0, 0], [0, 3, 0]]))
        assert diag == (1, 6)


class TestMatrix:
    def test_det_bareiss(self):
        rng = random.Random(7)
        # cross-check Bareiss against cofactor expansion on small matrices
        def cofactor_det(rows):
            n = len(rows)
            if n == 1:
                return rows[0][0]
            total = 0
            for j in range(n):
                minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
                total += (-1) ** j * rows[0][j] * cofactor_det(minor)
            return total

        for _ in range(50):
            n = rng.randint(1, 4)
            rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            assert IntMatrix.from_rows(rows).det() == cofactor_det(rows)

    def test_shape_errors(self):
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])
        with pytest.raises(ValueError):
            IntMatrix(entries=())


class TestPrimesAndFactoring:
    def test_is_prime_small(self):
        sieve = [True] * 1000
        sieve[0] = sieve[1] = False
        for i in range(2, 1000):
            if sieve[i]:
                for j in range(2 * i, 1000, i):
                    sieve[j] = False
        for n in range(1000):
            assert is_prime(n) == sieve[n]

    @given(st.integers(min_value=1, max_value=10**6))
    def test_factorize_reassembles(self, n):
        f = factorize(n)
        assert math.prod(p**e for p, e in f.items()) == n
        assert all(is_prime(p) for p in f)

    def test_prime_power_validation(self):
        with pytest.raises(ValueError):
            PrimePower(4, 1)
        with pytest.raises(ValueError):
            PrimePower(3, 0)
        assert PrimePower(3, 2).value == 9

    def test_crt(self):
        assert crt([3, 1], [4, 3]) == 7
        assert crt([0], [5]) == 0
        rng = random.Random(11)
        for _ in range(100):
            mods = rng.sample([4, 9, 25, 7, 11, 13], k=rng.randint(1, 4))
            x = rng.randrange(math.prod(mods))
            assert crt([x % m for m in mods], mods) == x


class TestPrimaryDecomposition:
    def test_examples(self):
        assert primary_decomposition([12]) == {(2, 2): 1, (3, 1): 1}
        assert primary_decomposition([]) == {}
        assert primary_decomposition([2, 2]) == {(2, 1): 2}

    def test_rejects_small_factors(self):
        with pytest.raises(ValueError):
            primary_decomposition([1])
        with pytest.raises(ValueError):
            primary_decomposition([0])

    def test_round_trip_on_random_groups(self):
        # primary decomposition then reassembly by invariant factors is the identity
        rng = random.Random(3)
        for _ in range(200):
            factors = []
            order = 1
            while True:
                f = rng.randint(2, 50)
                if order * f > 10**4 or (factors and rng.random() < 0.4):
                    break
                factors.append(f)
                order *= f
            if not factors:
                continue
            g = AbelianGroup.from_invariant_factors(factors)
            assert AbelianGroup.from_invariant_factors(g.invariant_factors()) == g
            assert g.torsion_order() == math.prod(factors)


class TestIsomorphism:
    def test_examples(self):
        z2 = AbelianGroup.free(2)
        assert is_isomorphic(z2, AbelianGroup.free(2))
        g = AbelianGroup.from_counts(0, {(5, 1): 4})
        h = AbelianGroup.from_counts(0, {(5, 2): 2})
        assert not is_isomorphic(g, h)
        assert is_isomorphic(
            AbelianGroup.from_invariant_factors([4, 3]),
            AbelianGroup.from_counts(0, {(2, 2): 1, (3, 1): 1}),
        )

    def test_equivalence_relation(self):
        rng = random.Random(5)
        groups = []
        for _ in range(30):
            counts = {}
            for _ in range(rng.randint(0, 3)):
                counts[(rng.choice([2, 3, 5]), rng.randint(1, 2))] = rng.randint(1, 3)
            groups.append(AbelianGroup.from_counts(rng.randint(0, 2), counts))
        for g in groups:
            assert is_isomorphic(g, g)
        for g in groups:
            for h in groups:
                assert is_isomorphic(g, h) == is_isomorphic(h, g)
                for f in groups:
                    if is_isomorphic(g, h) and is_isomorphic(h, f):
                        assert is_isomorphic(g, f)


class TestCokernel:
    def test_examples(self):
        assert group_from_cokernel(IntMatrix.from_rows([[1, 0], [0, 1]])).is_trivial()
        assert group_from_cokernel(IntMatrix.from_rows([[2, 0], [0, 0]])) == AbelianGroup(
            1, ((2, 1, 1),)
        )
        assert group_from_cokernel(IntMatrix.from_rows([[6]])) == AbelianGroup.from_counts(
            0, {(2, 1): 1, (3, 1): 1}
        )

    def test_wide_and_tall(self):
        # Z^3 -> Z: cokernel of a surjection is trivial
        assert group_from_cokernel(IntMatrix.from_rows([[1, 2, 3]])).is_trivial()
        # Z -> Z^2 by (2, 4): quotient is Z + Z/2
        g = group_from_cokernel(IntMatrix.from_rows([[2], [4]]))
        assert g == AbelianGroup(1, ((2, 1, 1),))


class TestAbelianGroupBasics:
    def test_canonicalization(self):
        g = AbelianGroup(0, ((3, 1, 1), (2, 1, 2), (3, 1, 1), (5, 1, 0)))
        assert g.torsion == ((2, 1, 2), (3, 1, 2))

    def test_json_round_trip(self):
        g = AbelianGroup.from_counts(2, {(2, 3): 1, (7, 1): 4})
        assert AbelianGroup.from_json_dict(g.to_json_dict()) == g
        assert g.to_json_dict()["torsion"] == [
            {"p": 2, "e": 3, "count": 1},
            {"p": 7, "e": 1, "count": 4},
        ]

    def test_json_rejects_unknown_field(self):
        with pytest.raises(ValueError, match="rank"):
            AbelianGroup.from_json_dict({"free_rank": 0, "torsion": [], "rank": 3})

    def test_str(self):
        assert str(AbelianGroup.trivial()) == "0"
        assert str(AbelianGroup.from_counts(1, {(5, 1): 2})) == "Z + (Z/5)^2"

    @given(
        st.integers(min_value=0, max_value=3),
        st.dictionaries(
            st.tuples(st.sampled_from([2, 3, 5, 7]), st.integers(1, 3)),
            st.integers(1, 4),
            max_size=4,
        ),
    )
    @settings(max_examples=100)
    def test_direct_sum_order(self, rank, counts):
        g = AbelianGroup.from_counts(rank, counts)
        h = AbelianGroup.from_counts(1, {(2, 1): 1})
        s = g.direct_sum(h)
        assert s.free_rank == rank + 1
        assert s.torsion_order() == g.torsion_order() * 2
