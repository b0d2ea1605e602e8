from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparkforge.certifier import certify_full_spark_symbolic
from sparkforge.frames import (
    FrameEnsemble,
    SparkCapExceeded,
    analysis,
    construct_w,
    construct_w_exact,
    frame_bounds,
    frame_operator,
    genericity_experiment,
    numeric_spark_check,
    reconstruct_from_subset,
    synthesis,
)
from sparkforge.grouprep import fourier_matrix
from sparkforge.subsets import enumerate_subsets


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_construct_w_examples():
    assert np.allclose(construct_w(3, 1), [3, 0, 0], atol=1e-14)
    assert np.allclose(construct_w(3, 0), [1, 1, 1], atol=1e-14)
    w = construct_w(3, 2)
    assert abs(w[0] - 7) < 1e-12
    assert np.max(np.abs(w - construct_w(3, 2, method="fourier"))) < 1e-12
    with pytest.raises(ValueError):
        construct_w(2, 1)


@pytest.mark.parametrize("n", range(3, 10))
def test_construct_w_dual_path(n):
    for lam in (-4, -1.5, 0.5, 2, 3.25, 4, 2 + 1j):
        direct = construct_w(n, lam)
        via_dft = construct_w(n, lam, method="fourier")
        assert np.linalg.norm(direct - via_dft) <= 1e-12 * np.linalg.norm(direct)


def test_construct_w_exact_matches_float():
    for n in (3, 5, 6):
        lam = Fraction(5, 3)
        exact = np.array([c.to_complex() for c in construct_w_exact(n, lam)])
        assert np.allclose(exact, construct_w(n, lam), atol=1e-11)


def test_synthesis_analysis():
    rng = np.random.default_rng(0)
    frame = FrameEnsemble.orbit(rand_complex(rng, 5))
    for j in (0, 3, 9):
        e = np.zeros(frame.size)
        e[j] = 1
        assert np.allclose(synthesis(frame, e), frame.vectors[j])
    assert np.allclose(synthesis(frame, np.zeros(frame.size)), 0)
    assert np.allclose(analysis(frame, np.zeros(5)), 0)
    c = rand_complex(rng, frame.size)
    v = rand_complex(rng, 5)
    assert np.allclose(synthesis(frame, c), sum(ck * vk for ck, vk in zip(c, frame.vectors)))
    # <Tc, v> = <c, T* v>, conjugate-linear in the second slot
    assert abs(np.vdot(v, synthesis(frame, c)) - np.vdot(analysis(frame, v), c)) < 1e-10
    with pytest.raises(ValueError):
        synthesis(frame, c[:3])


def test_orthonormal_basis_analysis():
    frame = FrameEnsemble(3, np.eye(3))
    v = np.array([1 + 2j, -3, 0.5j])
    assert np.allclose(analysis(frame, v), v)


def test_frame_operator_examples():
    s = frame_operator(FrameEnsemble(2, np.eye(2)))
    assert np.allclose(s, np.eye(2))
    assert frame_bounds(FrameEnsemble(2, np.eye(2))) == pytest.approx((1, 1))
    f1 = FrameEnsemble(1, np.array([[1], [1]]))
    assert np.allclose(frame_operator(f1), [[2]])
    assert frame_bounds(f1) == pytest.approx((2, 2))
    with pytest.raises(ValueError):
        FrameEnsemble(3, np.eye(3)[:2])


def test_frame_operator_is_synthesis_after_analysis():
    rng = np.random.default_rng(4)
    frame = FrameEnsemble.orbit(rand_complex(rng, 5))
    s = frame_operator(frame)
    v = rand_complex(rng, 5)
    assert np.allclose(s @ v, synthesis(frame, analysis(frame, v)))
    a, b = frame_bounds(frame)
    assert 0 < a <= b
    # frame inequality with |<v, v_k>|^2
    energy = np.sum(np.abs(analysis(frame, v)) ** 2)
    norm2 = np.vdot(v, v).real
    assert a * norm2 - 1e-9 <= energy <= b * norm2 + 1e-9


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 9), seed=st.integers(0, 2**31))
def test_dft_unitarity(n, seed):
    rng = np.random.default_rng(seed)
    f = fourier_matrix(n)
    phi, psi = rand_complex(rng, n), rand_complex(rng, n)
    assert abs(np.vdot(psi, phi) - np.vdot(f @ psi, f @ phi)) < 1e-12 * max(1.0, np.linalg.norm(phi) * np.linalg.norm(psi))


def test_global_reconstruction_identity():
    rng = np.random.default_rng(5)
    frame = FrameEnsemble.orbit(construct_w(5, 2))
    s_inv = np.linalg.inv(frame_operator(frame))
    for _ in range(20):
        v = rand_complex(rng, 5)
        c = analysis(frame, v)
        rebuilt = sum(ck * (s_inv @ vk) for ck, vk in zip(c, frame.vectors))
        assert np.linalg.norm(v - rebuilt) / np.linalg.norm(v) < 1e-10
        res = reconstruct_from_subset(frame, range(frame.size), c)
        assert res.ok and np.linalg.norm(res.recovered - v) / np.linalg.norm(v) < 1e-10


def test_reconstruction_from_every_subset_n3():
    rng = np.random.default_rng(6)
    frame = FrameEnsemble.orbit(construct_w(3, 2))
    v = rand_complex(rng, 3)
    coeffs = analysis(frame, v)
    for sub in enumerate_subsets(6, 3):
        res = reconstruct_from_subset(frame, sub, coeffs[list(sub)])
        assert res.ok and res.residual < 1e-10
        assert np.linalg.norm(res.recovered - v) / np.linalg.norm(v) < 1e-6


def test_reconstruction_batched_columns():
    rng = np.random.default_rng(7)
    frame = FrameEnsemble.orbit(construct_w(5, 2))
    vs = rand_complex(rng, 5, 4)
    kept = [0, 2, 3, 7, 9]
    res = reconstruct_from_subset(frame, kept, (frame.vectors.conj() @ vs)[kept])
    assert res.ok and np.allclose(res.recovered, vs, atol=1e-8)


def test_reconstruction_singular_subset_n4():
    rng = np.random.default_rng(8)
    frame = FrameEnsemble.orbit(rand_complex(rng, 4))
    witness = certify_full_spark_symbolic(4).witnesses
    assert witness
    v = rand_complex(rng, 4)
    for sub in witness[:5]:
        res = reconstruct_from_subset(frame, sub, analysis(frame, v)[list(sub)])
        assert not res.ok
        assert res.condition < 1e-10 * np.linalg.norm(frame.vectors, 2)
        assert res.recovered is None


def test_reconstruction_input_errors():
    frame = FrameEnsemble.orbit(construct_w(3, 2))
    with pytest.raises(ValueError):
        reconstruct_from_subset(frame, [0, 1], [1, 2])
    with pytest.raises(ValueError):
        reconstruct_from_subset(frame, [0, 0, 1], [1, 2, 3])
    with pytest.raises(ValueError):
        reconstruct_from_subset(frame, [0, 1, 2], [1, 2])


def test_numeric_spark_examples():
    assert numeric_spark_check(FrameEnsemble.orbit(construct_w(3, 2)), tol=1e-10).full_spark
    rng = np.random.default_rng(9)
    bad = numeric_spark_check(FrameEnsemble.orbit(rand_complex(rng, 4)))
    assert not bad.full_spark
    witnesses = set(certify_full_spark_symbolic(4).witnesses)
    assert {s for s, _ in bad.violations} == witnesses
    dup = FrameEnsemble(2, np.array([[1, 2], [1, 2], [0, 1]]))
    rep = numeric_spark_check(dup)
    assert rep.violations[0][0] == (0, 1) and rep.violations[0][1] < 1e-12


def test_numeric_spark_cap_and_parallel():
    frame = FrameEnsemble.orbit(construct_w(5, 2))
    with pytest.raises(SparkCapExceeded):
        numeric_spark_check(frame, cap=100)
    a = numeric_spark_check(frame, chunk_size=17)
    b = numeric_spark_check(frame, workers=2, chunk_size=50)
    assert a.full_spark and np.array_equal(a.min_singular, b.min_singular)


def test_genericity_small():
    assert genericity_experiment(3, 1, seed=42) == genericity_experiment(3, 1, seed=42)
    assert genericity_experiment(3, 20, seed=1) == 1.0
    assert genericity_experiment(6, 3, seed=1) == 0.0
