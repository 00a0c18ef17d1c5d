import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oapoly import (
    AlgElement,
    BadExponent,
    FourierSide,
    GroupMismatch,
    IncompleteRegistry,
    banach_norm,
    builtin_group_by_name,
    central_idempotent,
    convolve,
    decompose,
    delta_identity,
    fourier,
    inverse_fourier,
    l1_norm,
    power,
    random_element,
)
from oapoly.groups import IrrepRegistry


def elem(group, values):
    return AlgElement(group, np.asarray(values, dtype=complex))


def test_delta_is_identity():
    group, _ = builtin_group_by_name("s3")
    rng = np.random.default_rng(0)
    f = random_element(group, rng)
    delta = delta_identity(group)
    np.testing.assert_allclose(convolve(delta, f).values, f.values, atol=1e-13)
    np.testing.assert_allclose(convolve(f, delta).values, f.values, atol=1e-13)
    assert abs(l1_norm(delta) - 1.0) < 1e-15


def test_z2_convolution_by_hand():
    # (1/2) sum_s f(s) g(s^-1 t) worked out directly
    group, _ = builtin_group_by_name("z2")
    f = elem(group, [1, 2])
    g = elem(group, [3, 4])
    np.testing.assert_allclose(convolve(f, g).values, [5.5, 5.0], atol=1e-15)


def test_z4_character_orthogonality_under_convolution():
    group, registry = builtin_group_by_name("z4")
    chars = [elem(group, rep.matrices[:, 0, 0]) for rep in registry.irreps]
    for j, cj in enumerate(chars):
        for k, ck in enumerate(chars):
            expected = ck.values if j == k else np.zeros(4)
            np.testing.assert_allclose(convolve(cj, ck).values, expected, atol=1e-14)


def test_powers():
    group, registry = builtin_group_by_name("s3")
    delta = delta_identity(group)
    for n in (1, 2, 5):
        np.testing.assert_allclose(power(delta, n).values, delta.values, atol=1e-12)
    two_dim = registry.by_label("std2")
    e = central_idempotent(group, two_dim)
    np.testing.assert_allclose(power(e, 3).values, e.values, atol=1e-12)

    z2, _ = builtin_group_by_name("z2")
    ones = elem(z2, [1, 1])
    np.testing.assert_allclose(power(ones, 2).values, ones.values, atol=1e-15)


def test_fourier_of_delta_is_identity_blocks():
    group, registry = builtin_group_by_name("q8")
    side = fourier(delta_identity(group), registry)
    for rep, block in zip(registry.irreps, side.blocks):
        np.testing.assert_allclose(block, np.eye(rep.dim), atol=1e-13)


def test_fourier_z2_scalars():
    group, registry = builtin_group_by_name("z2")
    f = elem(group, [3.0, 5.0])
    side = fourier(f, registry)
    np.testing.assert_allclose(side.blocks[0][0, 0], 4.0, atol=1e-15)  # (a+b)/2
    np.testing.assert_allclose(side.blocks[1][0, 0], -1.0, atol=1e-15)  # (a-b)/2


def test_fourier_turns_convolution_into_reversed_products():
    # fourier(f * g)(pi) = ghat(pi) fhat(pi); the oracle is convolve itself
    group, registry = builtin_group_by_name("s3")
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(100):
        f = random_element(group, rng)
        g = random_element(group, rng)
        lhs = fourier(convolve(f, g), registry)
        fhat = fourier(f, registry)
        ghat = fourier(g, registry)
        for bl, bg, bf in zip(lhs.blocks, ghat.blocks, fhat.blocks):
            worst = max(worst, np.abs(bl - bg @ bf).max())
    assert worst <= 1e-12


def test_inverse_fourier_round_trip_q8():
    group, registry = builtin_group_by_name("q8")
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        f = random_element(group, rng)
        back = inverse_fourier(fourier(f, registry))
        worst = max(worst, np.abs(back.values - f.values).max())
    assert worst <= 1e-12


def test_inverse_fourier_of_identity_blocks_is_delta():
    group, registry = builtin_group_by_name("d4")
    side = FourierSide(registry, tuple(np.eye(rep.dim) for rep in registry.irreps))
    np.testing.assert_allclose(
        inverse_fourier(side).values, delta_identity(group).values, atol=1e-12
    )


def test_single_block_identity_gives_central_idempotent():
    group, registry = builtin_group_by_name("s3")
    for index, rep in enumerate(registry.irreps):
        blocks = [np.zeros((r.dim, r.dim)) for r in registry.irreps]
        blocks[index] = np.eye(rep.dim)
        recovered = inverse_fourier(FourierSide(registry, tuple(blocks)))
        np.testing.assert_allclose(
            recovered.values, rep.dim * rep.character, atol=1e-12
        )


def test_incomplete_registry_rejected_by_inverse():
    group, registry = builtin_group_by_name("z4")
    partial = IrrepRegistry(group, registry.irreps[:2])
    side = fourier(random_element(group, np.random.default_rng(0)), partial)
    with pytest.raises(IncompleteRegistry):
        inverse_fourier(side)


def test_central_idempotents():
    group, registry = builtin_group_by_name("s3")
    trivial = registry.by_label("triv")
    np.testing.assert_allclose(
        central_idempotent(group, trivial).values, np.ones(6), atol=1e-15
    )
    e = central_idempotent(group, registry.by_label("std2"))
    assert l1_norm(convolve(e, e) - e) <= 1e-12
    # idempotents are central
    f = random_element(group, np.random.default_rng(3))
    np.testing.assert_allclose(convolve(e, f).values, convolve(f, e).values, atol=1e-12)


def test_idempotent_cross_annihilation_d4():
    group, registry = builtin_group_by_name("d4")
    idempotents = [central_idempotent(group, rep) for rep in registry.irreps]
    for i, ei in enumerate(idempotents):
        for j, ej in enumerate(idempotents):
            product = convolve(ei, ej)
            target = ei.values if i == j else np.zeros(group.order)
            assert np.abs(product.values - target).max() <= 1e-12


def test_decompose_delta_into_idempotents():
    group, registry = builtin_group_by_name("s3")
    parts = decompose(delta_identity(group), registry)
    total = np.zeros(group.order, dtype=complex)
    for rep, component in parts:
        np.testing.assert_allclose(
            component.values, central_idempotent(group, rep).values, atol=1e-12
        )
        total += component.values
    np.testing.assert_allclose(total, delta_identity(group).values, atol=1e-12)


def test_decompose_idempotent_is_single_component():
    group, registry = builtin_group_by_name("s3")
    e = central_idempotent(group, registry.by_label("std2"))
    for rep, component in decompose(e, registry):
        expected = e.values if rep.label == "std2" else np.zeros(group.order)
        np.testing.assert_allclose(component.values, expected, atol=1e-12)


def test_decompose_random_reconstruction_and_annihilation():
    group, registry = builtin_group_by_name("s3")
    rng = np.random.default_rng(4)
    for _ in range(100):
        f = random_element(group, rng)
        parts = decompose(f, registry)
        total = sum(c.values for _, c in parts)
        assert np.abs(total - f.values).max() <= 1e-12
    parts = decompose(random_element(group, rng), registry)
    for i, (_, ci) in enumerate(parts):
        for j, (_, cj) in enumerate(parts):
            if i != j:
                assert np.abs(convolve(ci, cj).values).max() <= 1e-12


def test_banach_norms():
    group, registry = builtin_group_by_name("q8")
    delta = delta_identity(group)
    assert abs(banach_norm(delta, "lp", p=1) - 1.0) <= 1e-15
    # delta has identity blocks: trace norms are the dims, weighted sum is order
    assert abs(banach_norm(delta, "ag", registry=registry) - group.order) <= 1e-12
    ones = AlgElement(group, np.ones(group.order))
    for p in (1.0, 2.0, 3.5):
        assert abs(banach_norm(ones, "lp", p=p) - 1.0) <= 1e-15
    assert abs(banach_norm(ones, "linf") - 1.0) <= 1e-15
    sp = banach_norm(delta, "sp", p=2, registry=registry)
    # blocks are identities: sum_pi dim * dim = order inside the root
    assert abs(sp - (1.0 + group.order ** 0.5)) <= 1e-12
    with pytest.raises(BadExponent):
        banach_norm(delta, "lp", p=0.5)
    with pytest.raises(IncompleteRegistry):
        banach_norm(delta, "ag")


def test_convolution_banach_inequality():
    group, _ = builtin_group_by_name("d4")
    rng = np.random.default_rng(5)
    for _ in range(50):
        f = random_element(group, rng)
        g = random_element(group, rng)
        assert l1_norm(convolve(f, g)) <= l1_norm(f) * l1_norm(g) + 1e-12


def test_group_mismatch():
    g1, _ = builtin_group_by_name("z4")
    g2, _ = builtin_group_by_name("z6")
    with pytest.raises(GroupMismatch):
        convolve(delta_identity(g1), delta_identity(g2))


@settings(max_examples=25, deadline=None)
@given(
    fv=st.lists(st.floats(-10, 10), min_size=6, max_size=6),
    gv=st.lists(st.floats(-10, 10), min_size=6, max_size=6),
    hv=st.lists(st.floats(-10, 10), min_size=6, max_size=6),
)
def test_convolution_associative_and_bilinear(fv, gv, hv):
    group, _ = builtin_group_by_name("s3")
    f, g, h = elem(group, fv), elem(group, gv), elem(group, hv)
    left = convolve(convolve(f, g), h)
    right = convolve(f, convolve(g, h))
    scale = 1.0 + np.abs(left.values).max()
    assert np.abs(left.values - right.values).max() <= 1e-12 * scale
    lin = convolve(f + g, h)
    split = convolve(f, h) + convolve(g, h)
    assert np.abs(lin.values - split.values).max() <= 1e-12 * scale
