"""The convolution algebra of a finite group and its Fourier side.

With normalized counting measure the convolution is

    (f * g)(t) = (1/N) sum_s f(s) g(s^-1 t),

the algebra identity is ``delta`` (value N at the identity, 0
elsewhere, L1 norm one), and the Fourier transform is

    fhat(pi) = (1/N) sum_t f(t) U_pi(t^-1).

Convolution turns into reversed block products under this transform,
fourier(f * g)(pi) = ghat(pi) fhat(pi); for abelian groups the order is
immaterial. Inversion is f(t) = sum_pi dim_pi trace(fhat(pi) U_pi(t)).

The block of the central idempotent e_pi = dim_pi * chi_pi is the
identity on its own irrep and zero on all others, which is what makes
e_pi the unit of the minimal two-sided ideal it generates.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

from .errors import BadExponent, GroupMismatch, IncompleteRegistry
from .groups import GroupTable, Irrep, IrrepRegistry
from .jsonio import pairs_to_vector, matrix_to_pairs, vector_to_pairs


@dataclass(frozen=True, eq=False)
class AlgElement:
    """An element of the convolution algebra: a function on the group."""

    group: GroupTable
    values: np.ndarray

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.complex128)
        if vals.shape != (self.group.order,):
            raise GroupMismatch(
                f"value vector of length {vals.shape} for group of order {self.group.order}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def _require_same_group(self, other: "AlgElement") -> None:
        if self.group is not other.group:
            raise GroupMismatch("operands live on different groups")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._require_same_group(other)
        return AlgElement(self.group, self.values + other.values)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._require_same_group(other)
        return AlgElement(self.group, self.values - other.values)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.group, -self.values)

    def __mul__(self, scalar) -> "AlgElement":
        if not isinstance(scalar, Number):
            return NotImplemented
        return AlgElement(self.group, self.values * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class FourierSide:
    """Fourier transform blocks, one per registry irrep."""

    registry: IrrepRegistry
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        blocks = []
        for rep, block in zip(self.registry.irreps, self.blocks):
            b = np.ascontiguousarray(block, dtype=np.complex128)
            if b.shape != (rep.dim, rep.dim):
                raise GroupMismatch(
                    f"block for {rep.label!r} shaped {b.shape}, expected ({rep.dim}, {rep.dim})"
                )
            b.setflags(write=False)
            blocks.append(b)
        if len(blocks) != len(self.registry.irreps):
            raise GroupMismatch("one block per registry irrep required")
        object.__setattr__(self, "blocks", tuple(blocks))


def delta_identity(group: GroupTable) -> AlgElement:
    """The convolution identity: value N at the identity element."""
    vals = np.zeros(group.order, dtype=np.complex128)
    vals[group.identity] = group.order
    return AlgElement(group, vals)


def zero_element(group: GroupTable) -> AlgElement:
    return AlgElement(group, np.zeros(group.order, dtype=np.complex128))


def random_element(group: GroupTable, rng: np.random.Generator) -> AlgElement:
    vals = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
    return AlgElement(group, vals)


def convolve_values(fv: np.ndarray, gv: np.ndarray, group: GroupTable) -> np.ndarray:
    """Direct convolution on raw value arrays; batches over leading axes."""
    table = group.mult[group.inv]  # table[s, t] = inv(s) * t
    gathered = np.asarray(gv)[..., table]
    return np.einsum("...s,...st->...t", np.asarray(fv), gathered) / group.order


def convolve(f: AlgElement, g: AlgElement) -> AlgElement:
    if f.group is not g.group:
        raise GroupMismatch("convolution operands live on different groups")
    return AlgElement(f.group, convolve_values(f.values, g.values, f.group))


def power_values(fv: np.ndarray, n: int, group: GroupTable) -> np.ndarray:
    if n < 1:
        raise ValueError("convolution power needs n >= 1")
    out = np.asarray(fv, dtype=np.complex128)
    for _ in range(n - 1):
        out = convolve_values(fv, out, group)
    return out


def power(f: AlgElement, n: int) -> AlgElement:
    """The n-fold convolution power of f."""
    return AlgElement(f.group, power_values(f.values, n, f.group))


def fourier(f: AlgElement, registry: IrrepRegistry) -> FourierSide:
    if registry.group is not f.group:
        raise GroupMismatch("registry belongs to a different group")
    return FourierSide(registry, tuple(fourier_block(f.values, rep, f.group) for rep in registry.irreps))


def fourier_block(values: np.ndarray, rep: Irrep, group: GroupTable) -> np.ndarray:
    return np.einsum("...t,tij->...ij", np.asarray(values), rep.matrices[group.inv]) / group.order


def inverse_fourier(side: FourierSide) -> AlgElement:
    registry = side.registry
    if not registry.is_complete():
        raise IncompleteRegistry(
            f"registry for {registry.group.name} has sum(dim^2) != order"
        )
    vals = np.zeros(registry.group.order, dtype=np.complex128)
    for rep, block in zip(registry.irreps, side.blocks):
        vals += rep.dim * np.einsum("ij,tji->t", block, rep.matrices)
    return AlgElement(registry.group, vals)


def central_idempotent(group: GroupTable, rep: Irrep) -> AlgElement:
    """e_pi = dim_pi * chi_pi, the unit of the ideal attached to pi."""
    if rep.matrices.shape[0] != group.order:
        raise GroupMismatch("irrep matrices do not match the group order")
    return AlgElement(group, rep.dim * rep.character)


def block_element(registry: IrrepRegistry, index: int, matrix: np.ndarray) -> AlgElement:
    """The algebra element whose Fourier side is `matrix` on one irrep
    and zero on every other block."""
    rep = registry.irreps[index]
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (rep.dim, rep.dim):
        raise GroupMismatch(f"block for {rep.label!r} must be {rep.dim} x {rep.dim}")
    vals = rep.dim * np.einsum("ij,tji->t", matrix, rep.matrices)
    return AlgElement(registry.group, vals)


def fourier_block_matrix(registry: IrrepRegistry, index: int) -> np.ndarray:
    """Matrix of the linear map values -> flattened Fourier block."""
    rep = registry.irreps[index]
    group = registry.group
    return rep.matrices[group.inv].reshape(group.order, rep.dim * rep.dim).T / group.order


def decompose(f: AlgElement, registry: IrrepRegistry) -> list[tuple[Irrep, AlgElement]]:
    """Split f into its ideal components f * e_pi; they reconstruct f
    and annihilate each other pairwise under convolution."""
    if registry.group is not f.group:
        raise GroupMismatch("registry belongs to a different group")
    if not registry.is_complete():
        raise IncompleteRegistry(
            f"registry for {registry.group.name} has sum(dim^2) != order"
        )
    out = []
    for rep in registry.irreps:
        component = convolve(f, central_idempotent(f.group, rep))
        out.append((rep, component))
    return out


def l1_norm(f: AlgElement) -> float:
    return float(np.abs(f.values).sum() / f.group.order)


def banach_norm(
    f: AlgElement,
    which: str,
    p: float | None = None,
    registry: IrrepRegistry | None = None,
) -> float:
    """Norms on the group algebra.

    which: "lp" (needs p >= 1), "linf", "ag" (sum of dim * trace norms of
    the Fourier blocks), or "sp" (needs p >= 1; L1 norm plus the
    dim-weighted Schatten-p aggregate of the blocks). "ag" and "sp"
    need a complete registry.
    """
    if which == "lp":
        if p is None or p < 1:
            raise BadExponent(f"lp norm needs p >= 1, got {p}")
        return float((np.abs(f.values) ** p).mean() ** (1.0 / p))
    if which == "linf":
        return float(np.abs(f.values).max())
    if which in ("ag", "sp"):
        if registry is None or not registry.is_complete():
            raise IncompleteRegistry(f"{which} norm needs a complete registry")
        side = fourier(f, registry)
        if which == "ag":
            total = 0.0
            for rep, block in zip(registry.irreps, side.blocks):
                total += rep.dim * np.linalg.svd(block, compute_uv=False).sum()
            return float(total)
        if p is None or p < 1:
            raise BadExponent(f"sp norm needs p >= 1, got {p}")
        total = 0.0
        for rep, block in zip(registry.irreps, side.blocks):
            sv = np.linalg.svd(block, compute_uv=False)
            total += rep.dim * float((sv**p).sum())
        return l1_norm(f) + float(total ** (1.0 / p))
    raise BadExponent(f"unknown norm selector {which!r}")


# ---------------------------------------------------------------------------
# JSON formats


def element_to_json(f: AlgElement) -> dict:
    return {"group": f.group.name, "values": vector_to_pairs(f.values)}


def element_from_json(doc: dict, group: GroupTable) -> AlgElement:
    if str(doc.get("group")) != group.name:
        raise GroupMismatch(
            f"element file names group {doc.get('group')!r}, expected {group.name!r}"
        )
    return AlgElement(group, pairs_to_vector(doc["values"]))


def fourier_to_json(side: FourierSide) -> dict:
    return {
        "group": side.registry.group.name,
        "blocks": [
            {"label": rep.label, "dim": rep.dim, "matrix": matrix_to_pairs(block)}
            for rep, block in zip(side.registry.irreps, side.blocks)
        ],
    }
