import numpy as np
import pytest

from conftest import random_complex
from umeb.generators import clock_shift, rect_clock_shift
from umeb.lifts import (LiftParams, expected_count, lift, lift_theorem1, lift_theorem2,
                        matrix_to_state, state_to_matrix)
from umeb.linalg import gram_matrix, hs_inner, rank, singular_values, stack_vectors
from umeb.seeds import SeedBasis, SeedKind, bravyi_smolin_seed, two_by_three_seed
from umeb.verify import project_onto_s

W3 = np.exp(2j * np.pi / 3)


def count_seed_t1(d):
    """Orthogonal unitaries d^2 - 1 of the clock/shift family; only for counting."""
    return SeedBasis(SeedKind.UUB, d, d,
                     tuple(clock_shift(d, n, m) for n in range(d) for m in range(d))[1:], "count")


def count_seed_t2(p, q):
    return SeedBasis(SeedKind.USV1B, p, q,
                     tuple(rect_clock_shift(p, q, k, l) for k in range(p) for l in range(q))[1:],
                     "count")


def test_example1_count_and_shape(example1):
    assert len(example1) == 48 == expected_count("T1", LiftParams(2, 3, 3), 6)
    assert all(m.shape == (9, 6) for m in example1.members)
    assert (example1.dA, example1.dB) == (6, 9)


def test_example1_displayed_blocks(example1):
    seed = bravyi_smolin_seed()
    z = np.zeros((3, 3))
    for j, w in enumerate(seed.members):
        b00 = example1.members[j]
        b10 = example1.members[6 + j]
        np.testing.assert_allclose(b00, np.block([[w, z], [z, w], [z, z]]))
        np.testing.assert_allclose(b10, np.block([[w, z], [z, -w], [z, z]]), atol=1e-15)
    tags = list(example1.tags)
    for n in range(3):
        for m in range(3):
            u = clock_shift(3, n, m)
            displays = {
                (0, 1): np.block([[z, z], [u, z], [z, u]]),
                (1, 1): np.block([[z, z], [u, z], [z, -u]]),
                (0, 2): np.block([[z, u], [z, z], [u, z]]),
                # shown as (0 U; 0 0; -U 0): the defining sum gives the negative
                (1, 2): -np.block([[z, u], [z, z], [-u, z]]),
            }
            for (k, l), shown in displays.items():
                i = tags.index({"family": "C2", "k": k, "l": l, "n": n, "m": m})
                np.testing.assert_allclose(example1.members[i], shown, atol=1e-15)


def test_example2_displayed_blocks(example2):
    seed = two_by_three_seed()
    z = np.zeros((3, 2))
    tags = list(example2.tags)
    for j, w in enumerate(seed.members):
        shown = {
            0: np.block([[w, z, z], [z, w, z], [z, z, w]]),
            1: np.block([[w, z, z], [z, W3 * w, z], [z, z, W3**2 * w]]),
            2: np.block([[w, z, z], [z, W3**2 * w, z], [z, z, W3 * w]]),
        }
        for n, mat in shown.items():
            i = tags.index({"family": "C1", "n": n, "j": j})
            np.testing.assert_allclose(example2.members[i], mat, atol=1e-14)
    for k in range(2):
        for l in range(3):
            v = rect_clock_shift(2, 3, k, l)
            shown = {
                (0, 1): np.block([[z, z, v], [v, z, z], [z, v, z]]),
                (1, 1): np.block([[z, z, W3**2 * v], [v, z, z], [z, W3 * v, z]]),
                (2, 1): np.block([[z, z, W3 * v], [v, z, z], [z, W3**2 * v, z]]),
                (0, 2): np.block([[z, v, z], [z, z, v], [v, z, z]]),
                (1, 2): np.block([[z, W3 * v, z], [z, z, W3**2 * v], [v, z, z]]),
                (2, 2): np.block([[z, W3**2 * v, z], [z, z, W3 * v], [v, z, z]]),
            }
            for (n, m), mat in shown.items():
                i = tags.index({"family": "C2", "n": n, "m": m, "k": k, "l": l})
                np.testing.assert_allclose(example2.members[i], mat, atol=1e-14)


def test_example2_count(example2):
    assert len(example2) == 48 == expected_count("T2", LiftParams(2, 3, 3), 4)


@pytest.mark.parametrize("lifted", ["example1", "example2"])
def test_lift_gram_is_pd_identity(lifted, request):
    c = request.getfixturevalue(lifted)
    np.testing.assert_allclose(gram_matrix(c.members), c.dA * np.eye(len(c)), atol=1e-12)
    for m in c.members:
        np.testing.assert_allclose(singular_values(m), 1, atol=1e-12)


@pytest.mark.parametrize("p,q", [(p, q) for q in range(1, 5) for p in range(1, q + 1)])
def test_theorem1_sweep(p, q):
    for seed in (bravyi_smolin_seed(), count_seed_t1(2)):
        with pytest.warns(UserWarning) if p == q == 1 else _nullwarn():
            c = lift_theorem1(seed, p, q)
        d, n = seed.d_small, len(seed)
        assert len(c) == p * q * d * d - p * (d * d - n)
        c1 = [m for m, t in zip(c.members, c.tags) if t["family"] == "C1"]
        c2 = [m for m, t in zip(c.members, c.tags) if t["family"] == "C2"]
        assert len(c1) == p * n and len(c2) == p * (q - 1) * d * d
        # C2 lives in the complement of the diagonal-block space S and fills it
        for m in c2:
            assert np.linalg.norm(project_onto_s(m, "T1", c.params)) == 0
        if c2:
            assert np.linalg.matrix_rank(stack_vectors(c2)) == p * (q - 1) * d * d


@pytest.mark.parametrize("p,q", [(p, q) for q in range(1, 5) for p in range(1, q + 1)
                                 if p * q > 1])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_theorem2_sweep(p, q, d):
    seed = count_seed_t2(p, q)
    with pytest.warns(UserWarning) if d == 1 else _nullwarn():
        c = lift_theorem2(seed, d)
    n = len(seed)
    assert len(c) == p * q * d * d - d * (p * q - n)
    c2 = [m for m, t in zip(c.members, c.tags) if t["family"] == "C2"]
    assert len(c2) == p * q * (d - 1) * d
    for m in c2:
        assert np.linalg.norm(project_onto_s(m, "T2", c.params)) == 0
    if c2:
        assert np.linalg.matrix_rank(stack_vectors(c2)) == p * q * (d - 1) * d


class _nullwarn:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def test_degenerate_lifts_return_seed():
    seed = bravyi_smolin_seed()
    with pytest.warns(UserWarning):
        c = lift_theorem1(seed, 1, 1)
    for a, b in zip(c.members, seed.members):
        np.testing.assert_array_equal(a, b)
    seed2 = two_by_three_seed()
    with pytest.warns(UserWarning):
        c2 = lift_theorem2(seed2, 1)
    assert len(c2) == 4 and c2.notes
    for a, b in zip(c2.members, seed2.members):
        np.testing.assert_array_equal(a, b)


def test_kind_and_order_errors():
    with pytest.raises(ValueError, match="incompatible with T1"):
        lift_theorem1(two_by_three_seed(), 2, 3)
    with pytest.raises(ValueError, match="incompatible with T2"):
        lift_theorem2(bravyi_smolin_seed(), 3)
    with pytest.raises(ValueError):
        lift_theorem1(bravyi_smolin_seed(), 3, 2)
    with pytest.raises(ValueError):
        lift(two_by_three_seed(), "T2", d=3, p=3)


def test_matrix_state_examples():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    np.testing.assert_allclose(matrix_to_state(np.eye(2)), bell)
    np.testing.assert_allclose(state_to_matrix(bell, 2, 2), np.eye(2))
    w0 = two_by_three_seed().members[0]
    expect = np.zeros(6)
    expect[0 * 3 + 0] = expect[1 * 3 + 1] = 1 / np.sqrt(2)
    np.testing.assert_allclose(matrix_to_state(w0), expect)
    np.testing.assert_array_equal(state_to_matrix(matrix_to_state(np.eye(3)), 3, 3), np.eye(3))


def test_round_trip_example1(example1):
    for m in example1.members:
        back = state_to_matrix(matrix_to_state(m), example1.dA, example1.dB)
        np.testing.assert_allclose(back, m, atol=1e-12, rtol=0)


def test_state_overlaps_match_hs_inner(example1, example2):
    for c in (example1, example2):
        states = np.stack([matrix_to_state(m) for m in c.members])
        overlaps = states.conj() @ states.T
        np.testing.assert_allclose(overlaps, gram_matrix(c.members) / c.dA, atol=1e-12)
        np.testing.assert_allclose(overlaps, np.eye(len(c)), atol=1e-12)


def test_schmidt_rank_equals_matrix_rank(rng):
    for _ in range(100):
        rows, cols = rng.integers(1, 10), rng.integers(1, 7)
        r = rng.integers(0, min(rows, cols) + 1)
        a = random_complex(rng, (rows, r)) @ random_complex(rng, (r, cols))
        psi = matrix_to_state(a).reshape(cols, rows)
        assert np.linalg.matrix_rank(psi) == rank(a)
