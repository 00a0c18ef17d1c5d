import numpy as np
import pytest

from oapoly import (
    AlgElement,
    GroupAlgebra,
    HomPoly,
    LinearMap,
    MatrixAlgebra,
    VerificationFailure,
    builtin_group_by_name,
    estimate_norms,
    fourier,
    phi_group,
    phi_group_blockwise,
    phi_matrix_algebra,
    power,
    span_check,
    verify_representation,
)
from oapoly.represent import linear_map_from_json, linear_map_to_json


def trace_square_poly(domain):
    k = domain.k
    return HomPoly(
        2, domain, 1, lambda x: np.array([np.trace((x.reshape(k, k) @ x.reshape(k, k)))])
    )


def test_phi_matrix_algebra_trace_square():
    domain = MatrixAlgebra(2)
    L = phi_matrix_algebra(trace_square_poly(domain))
    # phi(a, I) = trace(a): the matrix of the trace functional
    np.testing.assert_allclose(L.matrix, [[1, 0, 0, 1]], atol=1e-10)


def test_phi_matrix_algebra_recovers_random_linear():
    rng = np.random.default_rng(0)
    domain = MatrixAlgebra(3)
    linear = rng.standard_normal((2, 9)) + 1j * rng.standard_normal((2, 9))
    P = HomPoly.prototypical(linear, 2, domain)
    L = phi_matrix_algebra(P)
    assert np.abs(L.matrix - linear).max() <= 1e-10


def test_phi_matrix_algebra_rejects_trace_squared():
    domain = MatrixAlgebra(2)
    bad = HomPoly(2, domain, 1, lambda x: np.array([np.trace(x.reshape(2, 2)) ** 2]))
    with pytest.raises(VerificationFailure):
        phi_matrix_algebra(bad)


def weighted_spectral_poly(group, registry, weights, n):
    """P(f) = sum_k w_k fhat(k)^n on an abelian group (1-dim blocks)."""
    domain = GroupAlgebra(group, registry)

    def evaluate(x):
        side = fourier(AlgElement(group, x), registry)
        total = sum(w * side.blocks[k][0, 0] ** n for k, w in enumerate(weights))
        return np.array([total])

    return HomPoly(n, domain, 1, evaluate)


def test_phi_group_weighted_spectrum_z3():
    group, registry = builtin_group_by_name("z3")
    weights = [1.0, 2.0, 3.0]
    P = weighted_spectral_poly(group, registry, weights, 2)
    L = phi_group(P, seed=0)
    # the representing map is f -> sum_k w_k fhat(k); its matrix row is
    # sum_k w_k chi_k(t^-1) / 3, assembled here independently
    t = np.arange(3)
    expected = sum(
        w * np.exp(-2j * np.pi * k * t / 3) / 3 for k, w in enumerate(weights)
    )
    np.testing.assert_allclose(L.matrix[0], expected, atol=1e-10)
    # probe f = chi_0 + chi_1: P(f) = 3 and L(f * f) = 3
    f = AlgElement(group, np.exp(2j * np.pi * 0 * t / 3) + np.exp(2j * np.pi * 1 * t / 3))
    np.testing.assert_allclose(P(f.values)[0], 3.0, atol=1e-12)
    np.testing.assert_allclose(L(power(f, 2).values)[0], 3.0, atol=1e-12)


def test_phi_group_z2_difference_of_squares():
    group, registry = builtin_group_by_name("z2")
    P = weighted_spectral_poly(group, registry, [1.0, -1.0], 2)
    L = phi_group(P, seed=1)
    # fhat(0) - fhat(1) = f(1) under the normalized measure
    np.testing.assert_allclose(L.matrix, [[0.0, 1.0]], atol=1e-10)


def test_phi_group_round_trip_s3_cubic():
    group, registry = builtin_group_by_name("s3")
    domain = GroupAlgebra(group, registry)
    rng = np.random.default_rng(2)
    linear = rng.standard_normal((1, 6)) + 1j * rng.standard_normal((1, 6))
    P = HomPoly.prototypical(linear, 3, domain)
    L = phi_group(P, seed=3)
    assert np.abs(L.matrix - linear).max() <= 1e-9


def test_phi_group_vector_codomain():
    group, registry = builtin_group_by_name("z4")
    domain = GroupAlgebra(group, registry)
    rng = np.random.default_rng(3)
    linear = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    P = HomPoly.prototypical(linear, 2, domain)
    L = phi_group(P, seed=4)
    assert np.abs(L.matrix - linear).max() <= 1e-9
    B = phi_group_blockwise(P, seed=4)
    assert np.abs(B.matrix - linear).max() <= 1e-9


def test_phi_group_rejects_global_trace_square():
    group, registry = builtin_group_by_name("s3")
    domain = GroupAlgebra(group, registry)
    bad = HomPoly(2, domain, 1, lambda x: np.array([x[group.identity] ** 2]))
    with pytest.raises(VerificationFailure) as excinfo:
        phi_group(bad, seed=5)
    assert excinfo.value.max_residual > 0.1
    assert excinfo.value.precheck is not None and not excinfo.value.precheck.passed


def test_phi_gate_suite_does_not_change_extraction():
    # the pair suite only gates; the extracted matrix is suite-independent
    group, registry = builtin_group_by_name("d4")
    domain = GroupAlgebra(group, registry)
    rng = np.random.default_rng(6)
    linear = rng.standard_normal((1, 8)) + 1j * rng.standard_normal((1, 8))
    P = HomPoly.prototypical(linear, 2, domain)
    a = phi_group(P, seed=7, pair_count=50)
    b = phi_group(P, seed=8, pair_count=200)
    c = phi_group(P, seed=9, precheck=False)
    assert np.abs(a.matrix - b.matrix).max() <= 1e-12
    assert np.abs(a.matrix - c.matrix).max() <= 1e-12


def test_path_agreement_direct_vs_blockwise():
    group, registry = builtin_group_by_name("d4")
    domain = GroupAlgebra(group, registry)
    rng = np.random.default_rng(10)
    for n in (2, 3):
        for _ in range(3):
            linear = rng.standard_normal((1, 8)) + 1j * rng.standard_normal((1, 8))
            P = HomPoly.prototypical(linear, n, domain)
            direct = phi_group(P, seed=11)
            blockwise = phi_group_blockwise(P, seed=11)
            assert np.abs(direct.matrix - blockwise.matrix).max() <= 1e-10


def test_verify_representation_pass_and_fail():
    group, registry = builtin_group_by_name("s3")
    domain = GroupAlgebra(group, registry)
    rng = np.random.default_rng(12)
    linear = rng.standard_normal((1, 6)) + 1j * rng.standard_normal((1, 6))
    P = HomPoly.prototypical(linear, 2, domain)
    L = phi_group(P, seed=13)
    report = verify_representation(P, L, samples=200, seed=14)
    assert report["pass"] and report["max_residual"] <= 1e-9

    zero = LinearMap(domain, 1, np.zeros((1, 6)))
    report = verify_representation(P, zero, samples=50, seed=15)
    assert not report["pass"]
    assert report["max_residual"] > 0.1


def test_span_check_examples():
    z4, _ = builtin_group_by_name("z4")
    assert span_check(z4, 2, seed=0) == {
        "group": "z4",
        "order": 4,
        "degree": 2,
        "samples": 8,
        "rank": 4,
        "pass": True,
    }
    s3, _ = builtin_group_by_name("s3")
    assert span_check(s3, 3, seed=1)["rank"] == 6
    z1, _ = builtin_group_by_name("z1")
    assert span_check(z1, 4, seed=2)["rank"] == 1


def test_estimate_norms_zero_polynomial():
    group, registry = builtin_group_by_name("z4")
    domain = GroupAlgebra(group, registry)
    P = HomPoly.prototypical(np.zeros((1, 4)), 2, domain)
    L = LinearMap(domain, 1, np.zeros((1, 4)))
    report = estimate_norms(P, L, samples=50, seed=0)
    assert report["poly_norm_est"] == 0.0
    assert report["bound_check"]


def test_estimate_norms_trace_square():
    domain = MatrixAlgebra(2)
    P = trace_square_poly(domain)
    L = phi_matrix_algebra(P)
    report = estimate_norms(P, L, samples=300, seed=1)
    # |trace(a^2)| <= 2 on the spectral-norm unit ball, attained at I
    assert report["poly_norm_est"] <= 2.0 + 1e-9
    assert report["poly_norm_est"] >= 1.0  # trace pairings of unit matrices reach this
    assert abs(report["poly_norm_upper"] - 2.0) <= 1e-12  # nuclear norm of I
    assert report["bound_check"]


def test_estimate_norms_scaling_is_exact():
    group, registry = builtin_group_by_name("z6")
    domain = GroupAlgebra(group, registry)
    rng = np.random.default_rng(2)
    linear = rng.standard_normal((1, 6)) + 1j * rng.standard_normal((1, 6))
    P = HomPoly.prototypical(linear, 2, domain)
    L = phi_group(P, seed=3)
    scaled = HomPoly.prototypical(5.0 * linear, 2, domain)
    Ls = LinearMap(domain, 1, 5.0 * L.matrix)
    base = estimate_norms(P, L, samples=100, seed=4)
    times5 = estimate_norms(scaled, Ls, samples=100, seed=4)
    np.testing.assert_allclose(times5["poly_norm_est"], 5.0 * base["poly_norm_est"], rtol=1e-12)


def test_estimate_norms_refinement_does_not_regress():
    domain = MatrixAlgebra(2)
    P = trace_square_poly(domain)
    L = phi_matrix_algebra(P)
    plain = estimate_norms(P, L, samples=50, seed=5)
    refined = estimate_norms(P, L, samples=50, seed=5, refine_steps=200)
    assert refined["poly_norm_est"] >= plain["poly_norm_est"] - 1e-15
    assert refined["poly_norm_est"] <= 2.0 + 1e-9


def test_linear_map_json_round_trip():
    group, registry = builtin_group_by_name("z4")
    domain = GroupAlgebra(group, registry)
    rng = np.random.default_rng(6)
    matrix = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
    L = LinearMap(domain, 2, matrix)
    doc = linear_map_to_json(L)
    loaded = linear_map_from_json(doc, domain)
    np.testing.assert_allclose(loaded.matrix, matrix, atol=0)
