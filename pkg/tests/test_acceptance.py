"""Acceptance suite: one marked group of tests per criterion.

Run with ``pytest tests/test_acceptance.py`` (or ``python3 tests/test_acceptance.py``);
the terminal summary prints one PASS/FAIL line per criterion.  Every check is
exact, so there is no tolerance anywhere.
"""

from __future__ import annotations

import random
import sys

import pytest

from lghodge.hodge import IVerdict, f_pipeline, f_table, h_table, i_obstruction, x_hodge_table
from lghodge.lattice import section_augmented_det
from lghodge.les import Status, solve
from lghodge.linalg import Matrix, inverse
from lghodge.nilpotent import jordan_profile, nilpotent_exp, unipotent_log, verify_filtration_axioms, weight_filtration
from lghodge.surface import build_surface_model, fano_type
from oracles import brute_force_chase, exp_series, random_invertible, random_nilpotent, random_sequence

N_RANDOM = 250

criterion = pytest.mark.criterion


def antidiagonal(d):
    return ((0, 0, 1), (0, 10 - d, 0), (1, 0, 0))


@pytest.fixture(scope="module")
def models():
    return {d: build_surface_model(d) for d in range(10)}


@criterion(1, "h-table: h^{0,2} = h^{2,0} = 1, h^{1,1} = 10 - d, else 0 (d = 1..9)")
@pytest.mark.parametrize("d", range(1, 10))
def test_c01_h_table(models, d):
    assert h_table(models[d]).values == antidiagonal(d)


@criterion(2, "f-table by the chase pipeline, f^{1,1} = 10 - d (d = 0..9); f = h for d >= 1")
@pytest.mark.parametrize("d", range(10))
def test_c02_f_table(models, d):
    f = f_table(d)
    assert f.values == antidiagonal(d)
    if d >= 1:
        assert f.values == h_table(models[d]).values


@criterion(3, "mirror rotation f^{p,q} = h^{p,2-q}(X) (d = 1..9)")
@pytest.mark.parametrize("d", range(1, 10))
def test_c03_mirror_rotation(d):
    f, x = f_table(d), x_hodge_table(d)
    for p in range(3):
        for q in range(3):
            assert f[p, q] == x[p, 2 - q]


@criterion(4, "Fano type true for d = 1..9, false for d = 0 (from N_rel^2)")
@pytest.mark.parametrize("d", range(10))
def test_c04_fano_type(models, d):
    n = models[d].N_rel
    assert (not (n @ n).is_zero()) == (d >= 1)
    assert (n @ n @ n).is_zero()
    assert fano_type(models[d]) == (d >= 1)


@criterion(5, "Jordan partition of N_rel: {3, 1^(9-d)} for d >= 1, {2, 2, 1^8} for d = 0")
@pytest.mark.parametrize("d", range(10))
def test_c05_jordan(models, d):
    part = jordan_profile(models[d].N_rel).partition
    assert part == ((3,) + (1,) * (9 - d) if d else (2, 2) + (1,) * 8)


@criterion(6, "sum identity: degree-2 sums are 12 - d, other degrees 0, for h and f")
@pytest.mark.parametrize("d", range(10))
def test_c06_sum_identity(models, d):
    expected = (0, 0, 12 - d, 0, 0)
    assert models[d].h_rel == expected
    assert f_table(d).degree_sums() == expected
    if d >= 1:
        assert h_table(models[d]).degree_sums() == expected


@criterion(7, "i-obstruction at d = 9: no table of multiples of 3 matches (1, 1, 1)")
def test_c07_i_counterexample():
    r = i_obstruction(9)
    assert r.verdict is IVerdict.COUNTEREXAMPLE
    assert r.divisor == 3 and r.candidates > 0 and r.matches == 0


@criterion(8, "section-augmented determinant (-1)^(d-1) d (d = 2..9)")
@pytest.mark.parametrize("d", range(2, 10))
def test_c08_lattice(d):
    assert section_augmented_det(d) == (-1) ** (d - 1) * d


@criterion(9, f"weight filtration: axioms, symmetry, uniqueness on {N_RANDOM} random operators")
def test_c09_weight_filtration_property():
    rng = random.Random(9001)
    for _ in range(N_RANDOM):
        s = random_nilpotent(rng, max_dim=8)
        m = max(s.partition) - 1 + rng.randint(0, 2)
        w = weight_filtration(s.n, m)
        assert verify_filtration_axioms(s.n, w).ok
        g = w.graded_dims
        assert all(g[m + l] == g[m - l] for l in range(m + 1))
        assert weight_filtration(s.n, m, reverse=True) == w


def _random_unipotent(rng: random.Random) -> Matrix:
    n = rng.randint(1, 6)
    u = Matrix([[rng.choice((0, 0, 1, -1, 2, -3)) if j > i else 0 for j in range(n)] for i in range(n)])
    p = random_invertible(rng, n)
    return p @ exp_series(u) @ inverse(p)


@criterion(10, f"log/exp: exp(log T) = T and partition(log T) = partition(T - I) on {N_RANDOM} matrices")
def test_c10_log_exp_property():
    rng = random.Random(10010)
    for _ in range(N_RANDOM):
        t = _random_unipotent(rng)
        n = unipotent_log(t)
        assert nilpotent_exp(n) == t
        i = Matrix.identity(t.rows)
        assert jordan_profile(n).partition == jordan_profile(t - i).partition


@criterion(11, f"LES solver agrees with brute force on {N_RANDOM} specs; surface chases give the stated values")
def test_c11_les_random():
    rng = random.Random(11011)
    for _ in range(N_RANDOM):
        spec, dims, ranks = random_sequence(rng)
        sols = brute_force_chase(spec, bound=6)
        sol = solve(spec)
        assert sol.status is not Status.INCONSISTENT
        assert sol.solved == (len(sols) == 1)
        forced = {
            label: sols[0][0][i] for i, label in enumerate(spec.labels) if len({s[0][i] for s in sols}) == 1
        }
        assert sol.dims == forced
        if sol.solved:
            assert sol.dim_vector(spec.labels) == dims


@criterion(11, f"LES solver agrees with brute force on {N_RANDOM} specs; surface chases give the stated values")
@pytest.mark.parametrize("d", range(10))
def test_c11_surface_chases(models, d):
    m = models[d]
    assert m.h_D == ((1, 2, 1) if d == 0 else (1, 1, d))
    assert m.hc_Y == (0, 0, 11 - d, 0, 1)
    assert f_pipeline(d, m).h_omega1_minus_D == (0, 10 - d, 0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
