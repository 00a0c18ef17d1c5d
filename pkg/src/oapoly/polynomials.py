"""Homogeneous polynomials, polarization, and orthogonal additivity.

An n-homogeneous polynomial P determines a unique symmetric n-linear
map phi with phi(x, ..., x) = P(x), recovered by the signed average

    phi(x_1, ..., x_n)
        = 1/(n! 2^n) sum over signs e_i = +-1 of
          e_1 ... e_n P(e_1 x_1 + ... + e_n x_n).

P is orthogonally additive when P(a+b) = P(a) + P(b) whenever
a b = b a = 0. The pair generator below produces structured witnesses
of such zero products (distinct minimal ideals, and complementary
diagonal blocks inside a single ideal conjugated by a random unitary),
plus the degenerate pair (f, 0).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .domains import AlgebraDomain, GroupAlgebra, MatrixAlgebra, PointwiseAlgebra
from .errors import GroupMismatch, HomogeneityViolation, NotOrthogonal
from .fourier import AlgElement, block_element
from .jsonio import pair_to_complex, complex_to_pair

MAX_DEGREE = 6  # polarization costs 2^n evaluations per tuple

# zero products are accepted when |xy| <= ORTHO_SCALE * |x| |y|
ORTHO_SCALE = 1e-12


@dataclass(frozen=True, eq=False)
class HomPoly:
    """Degree-n homogeneous polynomial on an algebra domain.

    The evaluator maps a coefficient vector to a codomain vector of
    length `codomain_dim`. A dense symmetric coefficient tensor, when
    available, is kept as a map from sorted multi-indices to values.
    """

    degree: int
    domain: AlgebraDomain
    codomain_dim: int
    evaluator: Callable[[np.ndarray], np.ndarray]
    tensor: dict | None = None

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("homogeneous degree must be at least 2")

    def __call__(self, x) -> np.ndarray:
        out = np.asarray(self.evaluator(np.asarray(x, dtype=np.complex128)))
        return out.reshape(self.codomain_dim).astype(np.complex128)

    @classmethod
    def from_evaluator(cls, degree, domain, codomain_dim, evaluator) -> "HomPoly":
        return cls(degree, domain, codomain_dim, evaluator)

    @classmethod
    def from_tensor(cls, degree, domain, codomain_dim, tensor: dict) -> "HomPoly":
        """Build from a symmetric tensor stored on sorted multi-indices.

        Each entry maps a nondecreasing index tuple to the tensor value
        there; evaluation weights every entry by the number of distinct
        permutations of its index tuple.
        """
        entries = []
        for index, value in tensor.items():
            index = tuple(int(i) for i in index)
            if list(index) != sorted(index) or len(index) != degree:
                raise ValueError(f"tensor multi-index {index} not sorted of length {degree}")
            value = np.asarray(value, dtype=np.complex128).reshape(codomain_dim)
            entries.append((index, value, _distinct_permutations(index)))

        def evaluate(x):
            out = np.zeros(codomain_dim, dtype=np.complex128)
            for index, value, mult in entries:
                term = mult
                for i in index:
                    term = term * x[i]
                out += term * value
            return out

        return cls(degree, domain, codomain_dim, evaluate, tensor=dict(tensor))

    @classmethod
    def prototypical(cls, linear: np.ndarray, degree: int, domain: AlgebraDomain) -> "HomPoly":
        """P(x) = L(x^n) for a linear map L given as an (m, dim) matrix."""
        linear = np.atleast_2d(np.asarray(linear, dtype=np.complex128))

        def evaluate(x):
            return linear @ domain.product_power(x, degree)

        return cls(degree, domain, linear.shape[0], evaluate)


@dataclass(frozen=True, eq=False)
class SymMultilinear:
    """Symmetric n-linear map on an algebra domain."""

    degree: int
    domain: AlgebraDomain
    codomain_dim: int
    evaluator: Callable[..., np.ndarray]

    def __call__(self, *xs) -> np.ndarray:
        if len(xs) != self.degree:
            raise ValueError(f"expected {self.degree} arguments, got {len(xs)}")
        out = np.asarray(self.evaluator(*[np.asarray(x, dtype=np.complex128) for x in xs]))
        return out.reshape(self.codomain_dim).astype(np.complex128)


def _distinct_permutations(index: tuple[int, ...]) -> int:
    counts: dict[int, int] = {}
    for i in index:
        counts[i] = counts.get(i, 0) + 1
    total = math.factorial(len(index))
    for c in counts.values():
        total //= math.factorial(c)
    return total


def check_homogeneity(P: HomPoly, rng: np.random.Generator, probes: int = 3, tol: float = 1e-9) -> float:
    """Probe P(lambda x) = lambda^n P(x); raises on failure.

    Polarization silently corrupts non-homogeneous inputs, so black
    boxes are never trusted on their declared degree.
    """
    worst = 0.0
    for _ in range(probes):
        x = P.domain.random(rng)
        lam = complex(rng.standard_normal(), rng.standard_normal())
        lhs = P(lam * x)
        rhs = lam**P.degree * P(x)
        residual = float(np.linalg.norm(lhs - rhs) / (1.0 + np.linalg.norm(rhs)))
        worst = max(worst, residual)
    if worst > tol:
        raise HomogeneityViolation(
            f"declared degree {P.degree} fails the homogeneity probe "
            f"(relative residual {worst:.3e})"
        )
    return worst


def polarize(P: HomPoly, seed: int = 0, probe_tol: float = 1e-9) -> SymMultilinear:
    """The unique symmetric n-linear map whose diagonal is P."""
    n = P.degree
    if n > MAX_DEGREE:
        raise ValueError(f"polarization degree capped at {MAX_DEGREE}")
    check_homogeneity(P, np.random.default_rng(seed), tol=probe_tol)
    sign_patterns = [
        (np.prod(signs), signs) for signs in itertools.product((1, -1), repeat=n)
    ]
    scale = 1.0 / (math.factorial(n) * 2**n)

    def evaluate(*xs):
        total = np.zeros(P.codomain_dim, dtype=np.complex128)
        for weight, signs in sign_patterns:
            combo = sum(s * x for s, x in zip(signs, xs))
            total += weight * P(combo)
        return scale * total

    return SymMultilinear(n, P.domain, P.codomain_dim, evaluate)


def tensor_of(phi: SymMultilinear) -> dict:
    """Dense symmetric tensor of phi on sorted basis multi-indices."""
    dim = phi.domain.dim
    basis = np.eye(dim, dtype=np.complex128)
    out = {}
    for index in itertools.combinations_with_replacement(range(dim), phi.degree):
        out[index] = phi(*[basis[i] for i in index])
    return out


def sym_product(xs: Sequence, domain: AlgebraDomain | None = None):
    """Symmetrized product: the average of all products over orderings.

    Accepts AlgElements (domain inferred from their shared group) or
    raw coefficient vectors together with an explicit domain. The
    diagonal case sym_product([a] * n) is the plain n-th power.
    """
    xs = list(xs)
    if not xs:
        raise ValueError("need at least one factor")
    wrap = None
    if all(isinstance(x, AlgElement) for x in xs):
        group = xs[0].group
        for x in xs[1:]:
            if x.group is not group:
                raise GroupMismatch("factors live on different groups")
        domain = GroupAlgebra(group)
        wrap = lambda v: AlgElement(group, v)
        xs = [x.values for x in xs]
    elif domain is None:
        raise ValueError("raw vectors need an explicit domain")
    xs = [np.asarray(x, dtype=np.complex128) for x in xs]
    total = np.zeros(domain.dim, dtype=np.complex128)
    count = 0
    for order in itertools.permutations(range(len(xs))):
        prod = xs[order[0]]
        for i in order[1:]:
            prod = domain.mul(prod, xs[i])
        total += prod
        count += 1
    result = total / count
    return wrap(result) if wrap is not None else result


# ---------------------------------------------------------------------------
# orthogonal pairs


def _haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _split_diagonals(d: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    cut = int(rng.integers(1, d))
    a = np.zeros(d, dtype=np.complex128)
    b = np.zeros(d, dtype=np.complex128)
    a[:cut] = rng.standard_normal(cut) + 1j * rng.standard_normal(cut)
    b[cut:] = rng.standard_normal(d - cut) + 1j * rng.standard_normal(d - cut)
    return a, b


def orthogonal_pairs(
    domain: AlgebraDomain,
    count: int,
    seed: int,
    mode: str = "mixed",
    include_zero: bool = True,
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Generate pairs (x, y) with x y = y x = 0 in the domain.

    mode chooses the construction family for group algebras: "cross"
    (supports in two distinct minimal ideals), "within" (complementary
    diagonal blocks of one ideal, conjugated by a random unitary), or
    "mixed" (50/50 where both exist). Matrix algebras only have the
    within-block family; pointwise algebras use disjoint supports.
    Every emitted pair is checked for two-sided zero products.
    """
    rng = np.random.default_rng(seed)
    pairs: list[tuple[np.ndarray, np.ndarray]] = []

    if include_zero and count > 0:
        pairs.append((domain.random(rng), np.zeros(domain.dim, dtype=np.complex128)))

    if isinstance(domain, GroupAlgebra):
        registry = domain.require_registry()
        wide = [i for i, rep in enumerate(registry.irreps) if rep.dim >= 2]
        n_irreps = len(registry.irreps)
        can_cross = n_irreps >= 2
        while len(pairs) < count:
            use_within = bool(wide) and (not can_cross or rng.random() < 0.5)
            if mode == "cross":
                use_within = False
            elif mode == "within":
                use_within = True
            if use_within:
                if not wide:
                    raise ValueError("no irrep of dimension >= 2 for within-block pairs")
                i = int(rng.choice(wide))
                d = registry.irreps[i].dim
                u = _haar_unitary(d, rng)
                da, db = _split_diagonals(d, rng)
                x = block_element(registry, i, u @ np.diag(da) @ u.conj().T).values
                y = block_element(registry, i, u @ np.diag(db) @ u.conj().T).values
            else:
                if not can_cross:
                    raise ValueError("a single-irrep registry has no cross-ideal pairs")
                i, j = rng.choice(n_irreps, size=2, replace=False)
                di = registry.irreps[int(i)].dim
                dj = registry.irreps[int(j)].dim
                mi = rng.standard_normal((di, di)) + 1j * rng.standard_normal((di, di))
                mj = rng.standard_normal((dj, dj)) + 1j * rng.standard_normal((dj, dj))
                x = block_element(registry, int(i), mi).values
                y = block_element(registry, int(j), mj).values
            pairs.append((x, y))
    elif isinstance(domain, MatrixAlgebra):
        d = domain.k
        if d < 2 and count > len(pairs):
            raise ValueError("1 x 1 matrices admit only zero pairs")
        while len(pairs) < count:
            u = _haar_unitary(d, rng)
            da, db = _split_diagonals(d, rng)
            pairs.append(
                ((u @ np.diag(da) @ u.conj().T).reshape(-1), (u @ np.diag(db) @ u.conj().T).reshape(-1))
            )
    elif isinstance(domain, PointwiseAlgebra):
        if domain.dim < 2 and count > len(pairs):
            raise ValueError("need at least two slots for disjoint supports")
        while len(pairs) < count:
            mask = np.zeros(domain.dim)
            keep = rng.permutation(domain.dim)[: int(rng.integers(1, domain.dim))]
            mask[keep] = 1.0
            x = domain.random(rng) * mask
            y = domain.random(rng) * (1.0 - mask)
            pairs.append((x, y))
    else:
        raise ValueError(f"no pair construction for domain {type(domain).__name__}")

    for x, y in pairs:
        _require_orthogonal(domain, x, y)
    return pairs[:count]


def _require_orthogonal(domain: AlgebraDomain, x, y) -> None:
    scale = domain.norm(x) * domain.norm(y)
    forward = domain.norm(domain.mul(x, y))
    backward = domain.norm(domain.mul(y, x))
    if max(forward, backward) > ORTHO_SCALE * max(scale, 1e-30):
        raise NotOrthogonal(
            f"pair has nonzero products: |xy| = {forward:.3e}, |yx| = {backward:.3e}, "
            f"|x||y| = {scale:.3e}"
        )


@dataclass(frozen=True)
class OrthoAdditivityReport:
    passed: bool
    pair_count: int
    max_residual: float
    worst_index: int | None
    tol: float

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "pair_count": self.pair_count,
            "max_residual": self.max_residual,
            "worst_index": self.worst_index,
            "tol": self.tol,
        }


def check_orthogonal_additivity(P: HomPoly, pairs, tol: float = 1e-9) -> OrthoAdditivityReport:
    """Test P(x+y) = P(x) + P(y) on two-sided zero-product pairs.

    Supplied pairs are revalidated; a pair that is not orthogonal
    raises instead of being silently scored. The pass criterion is
    relative: residual <= tol * (1 + |P(x)| + |P(y)|) for every pair.
    """
    worst = 0.0
    worst_index = None
    passed = True
    pairs = list(pairs)
    for i, (x, y) in enumerate(pairs):
        x = np.asarray(x, dtype=np.complex128)
        y = np.asarray(y, dtype=np.complex128)
        _require_orthogonal(P.domain, x, y)
        px, py = P(x), P(y)
        residual = float(np.linalg.norm(P(x + y) - px - py))
        if residual > worst:
            worst, worst_index = residual, i
        if residual > tol * (1.0 + np.linalg.norm(px) + np.linalg.norm(py)):
            passed = False
    return OrthoAdditivityReport(passed, len(pairs), worst, worst_index, tol)


# ---------------------------------------------------------------------------
# JSON format


def poly_to_json(P: HomPoly) -> dict:
    if P.tensor is None:
        raise ValueError("only tensor-backed polynomials serialize to JSON")
    tensor_doc = {}
    for index, value in P.tensor.items():
        key = ",".join(str(i) for i in index)
        value = np.asarray(value, dtype=np.complex128).reshape(P.codomain_dim)
        if P.codomain_dim == 1:
            tensor_doc[key] = complex_to_pair(value[0])
        else:
            tensor_doc[key] = [complex_to_pair(z) for z in value]
    return {
        "degree": P.degree,
        "domain": P.domain.descriptor(),
        "codomain_dim": P.codomain_dim,
        "tensor": tensor_doc,
    }


def poly_from_json(doc: dict, domain: AlgebraDomain) -> HomPoly:
    degree = int(doc["degree"])
    codomain_dim = int(doc["codomain_dim"])
    tensor = {}
    for key, value in doc["tensor"].items():
        index = tuple(int(part) for part in key.split(","))
        if codomain_dim == 1:
            tensor[index] = np.array([pair_to_complex(value)])
        else:
            tensor[index] = np.array([pair_to_complex(p) for p in value])
    return HomPoly.from_tensor(degree, domain, codomain_dim, tensor)
