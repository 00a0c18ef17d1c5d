"""Finite groups as dense index tables, with unitary irrep registries.

A group of order N lives on element indices 0..N-1: a multiplication
table, an inverse table and an identity index describe it completely.
Integration against normalized counting measure, (1/N) sum_t f(t),
makes every finite group an exactly computable compact group.

Irreps are stored as explicit families of unitary matrices, one per
element. The builtin menu (cyclic, dihedral, symmetric 3/4, quaternion)
ships complete registries built from standard constructions; general
irrep computation from a bare table is out of scope, so user-supplied
groups must bring their own registry through the JSON format and pass
:func:`validate_irreps`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, UnsupportedGroup
from .jsonio import matrix_to_pairs, pairs_to_matrix

MAX_ORDER = 512

# Default tolerances: essentially-linear identities vs squared quantities.
TOL_LINEAR = 1e-12
TOL_QUADRATIC = 1e-10


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group on element indices 0..order-1."""

    name: str
    order: int
    mult: np.ndarray
    inv: np.ndarray
    identity: int

    def __post_init__(self):
        mult = _readonly(np.ascontiguousarray(self.mult, dtype=np.int64))
        inv = _readonly(np.ascontiguousarray(self.inv, dtype=np.int64))
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "inv", inv)
        if self.order < 1:
            raise UnsupportedGroup("group order must be positive")
        if self.order > MAX_ORDER:
            raise UnsupportedGroup(
                f"order {self.order} exceeds the dense-table cap {MAX_ORDER}"
            )
        if mult.shape != (self.order, self.order) or inv.shape != (self.order,):
            raise DimensionMismatch("mult/inv tables do not match the declared order")
        if not 0 <= self.identity < self.order:
            raise ValueError("identity index out of range")

    def multiply(self, s: int, t: int) -> int:
        return int(self.mult[s, t])

    def inverse(self, t: int) -> int:
        return int(self.inv[t])


@dataclass(frozen=True, eq=False)
class Irrep:
    """One irreducible unitary representation as explicit matrices."""

    label: str
    dim: int
    matrices: np.ndarray  # (order, dim, dim)

    def __post_init__(self):
        mats = _readonly(np.ascontiguousarray(self.matrices, dtype=np.complex128))
        object.__setattr__(self, "matrices", mats)
        if mats.ndim != 3 or mats.shape[1:] != (self.dim, self.dim):
            raise DimensionMismatch(
                f"irrep {self.label!r}: matrices are not order x {self.dim} x {self.dim}"
            )

    @property
    def character(self) -> np.ndarray:
        return np.einsum("tii->t", self.matrices)


@dataclass(frozen=True, eq=False)
class IrrepRegistry:
    """All irrep classes of a group, one representative each."""

    group: GroupTable
    irreps: tuple[Irrep, ...]

    def __post_init__(self):
        object.__setattr__(self, "irreps", tuple(self.irreps))
        for rep in self.irreps:
            if rep.matrices.shape[0] != self.group.order:
                raise DimensionMismatch(
                    f"irrep {rep.label!r} has matrices for "
                    f"{rep.matrices.shape[0]} elements, group has {self.group.order}"
                )

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(rep.dim for rep in self.irreps)

    def is_complete(self) -> bool:
        return sum(d * d for d in self.dims) == self.group.order

    def by_label(self, label: str) -> Irrep:
        for rep in self.irreps:
            if rep.label == label:
                return rep
        raise KeyError(label)


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    ok: bool
    violations: tuple[str, ...]
    residuals: dict

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": list(self.violations),
            "residuals": {k: float(v) for k, v in self.residuals.items()},
        }


# ---------------------------------------------------------------------------
# builtin constructions


def _cyclic(n: int) -> tuple[GroupTable, IrrepRegistry]:
    idx = np.arange(n)
    mult = (idx[:, None] + idx[None, :]) % n
    inv = (-idx) % n
    g = GroupTable(name=f"z{n}", order=n, mult=mult, inv=inv, identity=0)
    irreps = []
    for j in range(n):
        # exponents reduced mod n before exp() so large j*t stays accurate
        theta = 2.0 * np.pi * ((j * idx) % n) / n
        mats = np.exp(1j * theta).reshape(n, 1, 1)
        irreps.append(Irrep(label=f"chi{j}", dim=1, matrices=mats))
    return g, IrrepRegistry(group=g, irreps=tuple(irreps))


def _dihedral(n: int) -> tuple[GroupTable, IrrepRegistry]:
    # indices 0..n-1 are rotations r^i, n..2n-1 are reflections s r^i
    order = 2 * n
    mult = np.zeros((order, order), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mult[i, j] = (i + j) % n
            mult[i, n + j] = n + (j - i) % n
            mult[n + i, j] = n + (i + j) % n
            mult[n + i, n + j] = (j - i) % n
    inv = np.concatenate([(-np.arange(n)) % n, n + np.arange(n)])
    g = GroupTable(name=f"d{n}", order=order, mult=mult, inv=inv, identity=0)

    i = np.arange(n)
    irreps = [
        Irrep("triv", 1, np.ones((order, 1, 1), dtype=complex)),
        Irrep(
            "sgn",
            1,
            np.concatenate([np.ones(n), -np.ones(n)]).reshape(order, 1, 1).astype(complex),
        ),
    ]
    if n % 2 == 0:
        alt = (-1.0) ** i
        irreps.append(Irrep("alt_r", 1, np.concatenate([alt, alt]).reshape(order, 1, 1).astype(complex)))
        irreps.append(Irrep("alt_rs", 1, np.concatenate([alt, -alt]).reshape(order, 1, 1).astype(complex)))
    two_dim_count = (n - 1) // 2 if n % 2 == 1 else n // 2 - 1
    for h in range(1, two_dim_count + 1):
        w = np.exp(2j * np.pi * ((h * i) % n) / n)
        mats = np.zeros((order, 2, 2), dtype=complex)
        mats[:n, 0, 0] = w
        mats[:n, 1, 1] = w.conj()
        mats[n:, 0, 1] = w.conj()
        mats[n:, 1, 0] = w
        irreps.append(Irrep(f"rot{h}", 2, mats))
    return g, IrrepRegistry(group=g, irreps=tuple(irreps))


def _perm_matrix(p: tuple[int, ...]) -> np.ndarray:
    m = len(p)
    mat = np.zeros((m, m))
    for j in range(m):
        mat[p[j], j] = 1.0
    return mat


def _helmert(m: int) -> np.ndarray:
    """Orthonormal basis of the sum-zero hyperplane in R^m, shape (m, m-1)."""
    cols = []
    for j in range(1, m):
        v = np.zeros(m)
        v[:j] = 1.0
        v[j] = -j
        cols.append(v / np.sqrt(j * (j + 1)))
    return np.stack(cols, axis=1)


def _perm_sign(p: tuple[int, ...]) -> int:
    sign = 1
    for a, b in itertools.combinations(range(len(p)), 2):
        if p[a] > p[b]:
            sign = -sign
    return sign


def _standard_matrices(perms: list[tuple[int, ...]]) -> np.ndarray:
    m = len(perms[0])
    basis = _helmert(m)
    return np.array([basis.T @ _perm_matrix(p) @ basis for p in perms]).astype(complex)


def _symmetric(m: int) -> tuple[GroupTable, IrrepRegistry]:
    perms = sorted(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    order = len(perms)

    def compose(s, t):
        return tuple(s[t[x]] for x in range(m))

    mult = np.array(
        [[index[compose(perms[a], perms[b])] for b in range(order)] for a in range(order)]
    )
    inv = np.array([index[tuple(int(x) for x in np.argsort(p))] for p in perms])
    g = GroupTable(name=f"s{m}", order=order, mult=mult, inv=inv, identity=0)

    signs = np.array([_perm_sign(p) for p in perms], dtype=complex)
    triv = Irrep("triv", 1, np.ones((order, 1, 1), dtype=complex))
    sgn = Irrep("sgn", 1, signs.reshape(order, 1, 1))
    std = _standard_matrices(perms)

    if m == 3:
        irreps = (triv, sgn, Irrep("std2", 2, std))
    else:  # m == 4
        # the 2-dim irrep factors through the action on the three
        # pairings {01|23, 02|13, 03|12}
        pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]

        def act(p, pairing):
            moved = tuple(
                sorted(tuple(sorted((p[a], p[b]))) for (a, b) in pairing)
            )
            return moved

        canon = {tuple(sorted(pairing)): i for i, pairing in enumerate(pairings)}
        quotient = []
        for p in perms:
            quotient.append(tuple(canon[act(p, pairing)] for pairing in pairings))
        three = sorted(itertools.permutations(range(3)))
        std3pt = _standard_matrices(three)
        where = {q: i for i, q in enumerate(three)}
        quot2 = np.array([std3pt[where[q]] for q in quotient])
        irreps = (
            triv,
            sgn,
            Irrep("quot2", 2, quot2),
            Irrep("std3", 3, std),
            Irrep("std3_sgn", 3, signs[:, None, None] * std),
        )
    return g, IrrepRegistry(group=g, irreps=irreps)


_QUAT_AXIS_MULT = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
    (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
    (1, 2): (1, 3), (2, 1): (-1, 3),
    (2, 3): (1, 1), (3, 2): (-1, 1),
    (3, 1): (1, 2), (1, 3): (-1, 2),
}


def _quaternion() -> tuple[GroupTable, IrrepRegistry]:
    # index = 2*axis + (0 for +, 1 for -); axes are 1, i, j, k
    order = 8

    def unpack(t):
        return (-1 if t % 2 else 1), t // 2

    def pack(sign, axis):
        return 2 * axis + (0 if sign == 1 else 1)

    mult = np.zeros((order, order), dtype=np.int64)
    for a in range(order):
        for b in range(order):
            sa, xa = unpack(a)
            sb, xb = unpack(b)
            sp, xp = _QUAT_AXIS_MULT[(xa, xb)]
            mult[a, b] = pack(sa * sb * sp, xp)
    inv = np.zeros(order, dtype=np.int64)
    for a in range(order):
        sa, xa = unpack(a)
        inv[a] = pack(sa, xa) if xa == 0 else pack(-sa, xa)
    g = GroupTable(name="q8", order=order, mult=mult, inv=inv, identity=0)

    def one_dim(values):
        return np.array(values, dtype=complex).reshape(order, 1, 1)

    spin_axis = {
        0: np.eye(2, dtype=complex),
        1: np.array([[1j, 0], [0, -1j]]),
        2: np.array([[0, 1], [-1, 0]], dtype=complex),
        3: np.array([[0, 1j], [1j, 0]]),
    }
    spin = np.array([unpack(t)[0] * spin_axis[unpack(t)[1]] for t in range(order)])
    irreps = (
        Irrep("triv", 1, one_dim([1, 1, 1, 1, 1, 1, 1, 1])),
        Irrep("chi_i", 1, one_dim([1, 1, 1, 1, -1, -1, -1, -1])),
        Irrep("chi_j", 1, one_dim([1, 1, -1, -1, 1, 1, -1, -1])),
        Irrep("chi_k", 1, one_dim([1, 1, -1, -1, -1, -1, 1, 1])),
        Irrep("spin2", 2, spin),
    )
    return g, IrrepRegistry(group=g, irreps=irreps)


def builtin_group(kind: str, param: int) -> tuple[GroupTable, IrrepRegistry]:
    """Build a group and its complete registry from the builtin menu.

    kind is one of "cyclic" (param >= 1), "dihedral" (param >= 3, order
    2*param), "symmetric" (param in {3, 4}) or "quaternion" (param 8).
    """
    if kind == "cyclic":
        if not 1 <= param <= MAX_ORDER:
            raise UnsupportedGroup(f"cyclic parameter {param} outside 1..{MAX_ORDER}")
        return _cyclic(param)
    if kind == "dihedral":
        if not 3 <= param <= MAX_ORDER // 2:
            raise UnsupportedGroup(
                f"dihedral parameter {param} outside 3..{MAX_ORDER // 2}"
            )
        return _dihedral(param)
    if kind == "symmetric":
        if param not in (3, 4):
            raise UnsupportedGroup("symmetric groups are supported for param in {3, 4}")
        return _symmetric(param)
    if kind == "quaternion":
        if param != 8:
            raise UnsupportedGroup("the quaternion menu entry is the order-8 group")
        return _quaternion()
    raise UnsupportedGroup(f"unknown group kind {kind!r}")


_NAME_RE = re.compile(r"^(z|d|s|q)(\d+)$")
_KIND_BY_PREFIX = {"z": "cyclic", "d": "dihedral", "s": "symmetric", "q": "quaternion"}


def builtin_group_by_name(name: str) -> tuple[GroupTable, IrrepRegistry]:
    """Resolve short names like z4, d4, s3, q8 to builtin groups."""
    match = _NAME_RE.match(name.strip().lower())
    if not match:
        raise UnsupportedGroup(f"unrecognized group name {name!r}")
    return builtin_group(_KIND_BY_PREFIX[match.group(1)], int(match.group(2)))


# ---------------------------------------------------------------------------
# validation


def validate_group(g: GroupTable, max_listed: int = 20) -> ValidationReport:
    """Check the group axioms exhaustively and report every violation."""
    violations: list[str] = []
    n = g.order
    mult, inv, e = g.mult, g.inv, g.identity

    if mult.min() < 0 or mult.max() >= n:
        violations.append("mult contains out-of-range element indices")
    if inv.min() < 0 or inv.max() >= n:
        violations.append("inv contains out-of-range element indices")
    if violations:
        return ValidationReport(g.name, False, tuple(violations), {})

    idx = np.arange(n)
    bad = np.nonzero(mult[e] != idx)[0]
    for t in bad[:max_listed]:
        violations.append(f"identity: e*{t} = {mult[e, t]} != {t}")
    bad = np.nonzero(mult[:, e] != idx)[0]
    for t in bad[:max_listed]:
        violations.append(f"identity: {t}*e = {mult[t, e]} != {t}")
    bad = np.nonzero((mult[idx, inv] != e) | (mult[inv, idx] != e))[0]
    for t in bad[:max_listed]:
        violations.append(f"inverse: {t} and inv[{t}]={inv[t]} do not compose to e")

    assoc_bad = 0
    for a in range(n):
        lhs = mult[mult[a]]  # (b, c) -> (a*b)*c
        rhs = mult[a][mult]  # (b, c) -> a*(b*c)
        mism = np.argwhere(lhs != rhs)
        for b, c in mism:
            if assoc_bad < max_listed:
                violations.append(f"associativity: ({a}*{b})*{c} != {a}*({b}*{c})")
            assoc_bad += 1
    if assoc_bad > max_listed:
        violations.append(f"associativity: {assoc_bad} violating triples in total")

    return ValidationReport(g.name, not violations, tuple(violations), {})


def validate_irreps(
    g: GroupTable,
    registry: IrrepRegistry,
    tol_linear: float = TOL_LINEAR,
    tol_quadratic: float = TOL_QUADRATIC,
) -> ValidationReport:
    """Check unitarity, homomorphism, irreducibility, completeness and
    character orthogonality; report max residuals for each."""
    violations: list[str] = []
    residuals: dict = {}
    n = g.order
    eye_cache: dict[int, np.ndarray] = {}

    for rep in registry.irreps:
        mats = rep.matrices
        if mats.shape != (n, rep.dim, rep.dim):
            raise DimensionMismatch(
                f"irrep {rep.label!r}: matrices shaped {mats.shape}, "
                f"expected ({n}, {rep.dim}, {rep.dim})"
            )
        eye = eye_cache.setdefault(rep.dim, np.eye(rep.dim))
        unit = np.abs(mats @ mats.conj().transpose(0, 2, 1) - eye).max()
        residuals[f"unitarity[{rep.label}]"] = unit
        if unit > tol_linear:
            violations.append(f"{rep.label}: unitarity residual {unit:.3e}")

        prod = np.einsum("sij,tjk->stik", mats, mats)
        hom = np.abs(mats[g.mult] - prod).max()
        residuals[f"homomorphism[{rep.label}]"] = hom
        if hom > tol_linear:
            violations.append(f"{rep.label}: homomorphism residual {hom:.3e}")

        chi = rep.character
        irr = abs(np.vdot(chi, chi).real / n - 1.0)
        residuals[f"irreducibility[{rep.label}]"] = irr
        if irr > tol_quadratic:
            violations.append(f"{rep.label}: |chi|^2 mean off by {irr:.3e}")

    total = sum(d * d for d in registry.dims)
    residuals["completeness"] = float(abs(total - n))
    if total != n:
        violations.append(f"completeness: sum(dim^2) = {total} != {n}")

    chars = np.array([rep.character for rep in registry.irreps])
    gram = chars @ chars.conj().T / n
    ortho = np.abs(gram - np.eye(len(registry.irreps))).max() if len(registry.irreps) else 0.0
    residuals["character_orthogonality"] = float(ortho)
    if ortho > tol_quadratic:
        violations.append(f"character orthogonality residual {ortho:.3e}")

    if total == n:
        # the regular character: sum_pi dim * chi_pi = order at e, 0 elsewhere
        regular = np.zeros(n, dtype=complex)
        for rep in registry.irreps:
            regular += rep.dim * rep.character
        target = np.zeros(n, dtype=complex)
        target[g.identity] = n
        reg = np.abs(regular - target).max()
        residuals["regular_character"] = float(reg)
        if reg > tol_quadratic:
            violations.append(f"regular character residual {reg:.3e}")

    return ValidationReport(
        f"{g.name}:irreps", not violations, tuple(violations), residuals
    )


# ---------------------------------------------------------------------------
# JSON format


def group_to_json(g: GroupTable, registry: IrrepRegistry | None = None) -> dict:
    doc = {
        "name": g.name,
        "order": g.order,
        "identity": g.identity,
        "mult": g.mult.tolist(),
        "inv": g.inv.tolist(),
    }
    if registry is not None:
        doc["irreps"] = [
            {
                "label": rep.label,
                "dim": rep.dim,
                "matrices": [matrix_to_pairs(m) for m in rep.matrices],
            }
            for rep in registry.irreps
        ]
    return doc


def group_from_json(doc: dict) -> tuple[GroupTable, IrrepRegistry | None]:
    g = GroupTable(
        name=str(doc["name"]),
        order=int(doc["order"]),
        mult=np.array(doc["mult"]),
        inv=np.array(doc["inv"]),
        identity=int(doc["identity"]),
    )
    registry = None
    if "irreps" in doc:
        irreps = []
        for entry in doc["irreps"]:
            mats = np.array([pairs_to_matrix(m) for m in entry["matrices"]])
            irreps.append(Irrep(label=str(entry["label"]), dim=int(entry["dim"]), matrices=mats))
        registry = IrrepRegistry(group=g, irreps=tuple(irreps))
    return g, registry
