"""Truncated harmonic analysis on the unit circle.

Everything here lives at the level of finitely supported Fourier
coefficients: convolution multiplies coefficients slot by slot
(chi_k * chi_k = chi_k and cross frequencies annihilate), the Fejér
kernel family F_m realizes a norm-one positive approximate identity
with coefficients 1 - |k|/(m+1), and Lp norms are evaluated by uniform
quadrature at roots of unity with mandatory 4x oversampling.

The three diagnostics exhibit the divergent quantities that obstruct a
standard-form representation of coefficient-defined quadratic
functionals on the larger convolution algebras of the circle: partial
dual norms that grow like a harmonic sum, Lq norms of the symmetric
truncation kernels D_N, and L1 norms of the analytic truncation
kernels K_N (logarithmic growth). Divergence thresholds are slack
versions of the known asymptotics so quadrature error cannot flip
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domains import PointwiseAlgebra
from .errors import BadExponent, UnderSampled
from .jsonio import complex_to_pair, pair_to_complex
from .polynomials import HomPoly, polarize

DEFAULT_QUADRATURE_POINTS = 1 << 14


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """A trigonometric polynomial as a finitely supported coefficient map."""

    coeffs: dict
    cap: int | None = None

    def __post_init__(self):
        cleaned = {}
        for k, c in self.coeffs.items():
            c = complex(c)
            if c != 0:
                cleaned[int(k)] = c
        cap = self.cap
        degree = max((abs(k) for k in cleaned), default=0)
        if cap is None:
            cap = degree
        elif degree > cap:
            raise ValueError(f"support reaches degree {degree}, beyond the cap {cap}")
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "cap", int(cap))

    @property
    def degree(self) -> int:
        return max((abs(k) for k in self.coeffs), default=0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def coeff(self, k: int) -> complex:
        return self.coeffs.get(int(k), 0j)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0j) + c
        return TrigPoly(out)

    def __mul__(self, scalar) -> "TrigPoly":
        return TrigPoly({k: scalar * c for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def sample(self, points: int) -> np.ndarray:
        """Values at the `points`-th roots of unity (FFT evaluation)."""
        if points <= 2 * self.degree:
            raise UnderSampled(
                f"{points} points alias a polynomial of degree {self.degree}"
            )
        spectrum = np.zeros(points, dtype=np.complex128)
        for k, c in self.coeffs.items():
            spectrum[k % points] += c
        return points * np.fft.ifft(spectrum)


def chi(k: int) -> TrigPoly:
    """The character z -> z^k."""
    return TrigPoly({int(k): 1.0})


def convolve_t(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Convolution on the circle is a coefficientwise product."""
    shared = set(f.coeffs) & set(g.coeffs)
    return TrigPoly({k: f.coeffs[k] * g.coeffs[k] for k in shared})


def fejer(m: int) -> TrigPoly:
    """Fejér kernel F_m: coefficients 1 - |k|/(m+1) for |k| <= m.

    The family has unit L1 norm, nonnegative coefficients that tend to
    one frequency by frequency, and is automatically central; it is the
    circle instance of a norm-one central approximate identity.
    """
    if m < 0:
        raise ValueError("Fejér kernel order must be nonnegative")
    return TrigPoly({k: 1.0 - abs(k) / (m + 1) for k in range(-m, m + 1)})


@dataclass(frozen=True)
class Grid:
    """Uniform quadrature grid on the circle."""

    points: int

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("grid needs at least one point")


def default_grid(*polys: TrigPoly, minimum: int = DEFAULT_QUADRATURE_POINTS) -> Grid:
    degree = max((f.degree for f in polys), default=0)
    return Grid(max(4 * (degree + 1), minimum))


def lp_norm_t(f: TrigPoly, p: float, grid: Grid) -> float:
    """Lp norm by quadrature at grid.points-th roots of unity.

    Requires grid.points >= 4 * (degree + 1). p = 2 is exact up to
    rounding (the quadrature resolves |f|^2); odd and fractional p
    carry quadrature error of order (degree / points)^2.
    """
    if p != math.inf and p < 1:
        raise BadExponent(f"Lp norm needs p >= 1 or infinity, got {p}")
    if grid.points < 4 * (f.degree + 1):
        raise UnderSampled(
            f"grid of {grid.points} points under the 4x oversampling floor "
            f"{4 * (f.degree + 1)} for degree {f.degree}"
        )
    values = np.abs(f.sample(grid.points))
    if p == math.inf:
        return float(values.max(initial=0.0))
    return float((values**p).mean() ** (1.0 / p))


# ---------------------------------------------------------------------------
# approximate-identity limit behaviour


def fejer_limit_check(weights: dict, f: TrigPoly, n: int, m_list) -> dict:
    """Feed Fejér kernels into the symmetric multilinear map of the model
    polynomial P(g) = sum_k w_k ghat(k)^n and watch the one-slot limit.

    For each m the value phi(f, F_m, ..., F_m) is computed two ways:
    honestly, by polarizing the black-box P, and in closed form as
    sum_k w_k fhat(k) (1 - |k|/(m+1))^(n-1) (coefficients beyond m drop
    out). The report records both, the distance to the limiting value
    sum_k w_k fhat(k), and whether errors decay monotonically.
    """
    weights = {int(k): complex(c) for k, c in weights.items()}
    limit = sum(c * f.coeff(k) for k, c in weights.items())
    rows = []
    errors = []
    for m in m_list:
        m = int(m)
        kernel = fejer(m)
        support = tuple(
            sorted(set(weights) | set(f.coeffs) | set(kernel.coeffs))
        )
        domain = PointwiseAlgebra(support)
        slot = {k: i for i, k in enumerate(support)}
        w_vec = np.zeros(len(support), dtype=np.complex128)
        for k, c in weights.items():
            w_vec[slot[k]] = c

        def evaluate(x, _w=w_vec):
            return np.array([np.sum(_w * x**n)])

        model = HomPoly(n, domain, 1, evaluate)
        phi = polarize(model)
        f_vec = np.array([f.coeff(k) for k in support])
        kernel_vec = np.array([kernel.coeff(k) for k in support])
        value = complex(phi(f_vec, *([kernel_vec] * (n - 1)))[0])
        closed = sum(
            c * f.coeff(k) * kernel.coeff(k) ** (n - 1) for k, c in weights.items()
        )
        error = abs(value - limit)
        rows.append(
            {
                "m": m,
                "value": complex_to_pair(value),
                "closed_form": complex_to_pair(closed),
                "error": error,
                "closed_form_error": abs(closed - limit),
                "match": abs(value - closed) <= 1e-12 * (1.0 + abs(closed)),
            }
        )
        errors.append(error)
    monotone = all(b <= a + 1e-15 for a, b in zip(errors, errors[1:]))
    return {
        "limit": complex_to_pair(limit),
        "rows": rows,
        "monotone_decay": monotone,
        "final_error": errors[-1] if errors else 0.0,
        "pass": monotone and all(r["match"] for r in rows),
    }


# ---------------------------------------------------------------------------
# divergence diagnostics


def default_dual_profile(s: float):
    """Coefficient profile |k|^(-1/s) (1 at k = 0): q-summable but not
    s-summable, the sharpest elementary witness of the gap s < q."""

    def hhat(k: int) -> float:
        return 1.0 if k == 0 else float(abs(k) ** (-1.0 / s))

    return hhat


def diagnostic_dual_growth(p: float, m_list, hcoeffs=None) -> dict:
    """Partial dual norms (sum_{|k|<=m} |hhat(k)|^s)^(1/s) for 1 < p < 2.

    s = q/2 with q the conjugate exponent. With the default profile the
    s-th powers are 1 + 2 H_m (a harmonic sum), so the norms grow
    without bound while the companion column |phi_m|^s - 2 ln m
    stabilizes. A summable profile instead produces a bounded, flat
    table (the convergent control case).
    """
    if not 1.0 < p < 2.0:
        raise BadExponent(f"dual-growth diagnostic needs p in (1, 2), got {p}")
    q = p / (p - 1.0)
    s = q / 2.0
    default_used = hcoeffs is None
    if default_used:
        hcoeffs = default_dual_profile(s)
    rows = []
    norms = []
    for m in m_list:
        m = int(m)
        if m < 1:
            raise ValueError("diagnostic rows need m >= 1")
        power_sum = float(sum(abs(hcoeffs(k)) ** s for k in range(-m, m + 1)))
        norm = power_sum ** (1.0 / s)
        rows.append(
            {
                "m": m,
                "phi_norm": norm,
                "phi_norm_pow_s": power_sum,
                "companion": power_sum - 2.0 * math.log(m),
                "pass": (not norms) or norm > norms[-1],
            }
        )
        norms.append(norm)
    increasing = all(b > a for a, b in zip(norms, norms[1:]))
    tail = [r["companion"] for r in rows if r["m"] >= 100]
    oscillation = (max(tail) - min(tail)) if len(tail) >= 2 else 0.0
    stable = oscillation < 0.5
    return {
        "p": p,
        "q": q,
        "s": s,
        "default_profile": default_used,
        "rows": rows,
        "strictly_increasing": increasing,
        "companion_oscillation": oscillation,
        "pass": increasing and (stable or not default_used),
    }


def dirichlet(N: int) -> TrigPoly:
    """D_N = sum of chi_k for |k| <= N."""
    return TrigPoly({k: 1.0 for k in range(-N, N + 1)})


def diagnostic_kernel_blowup(p: float, N_list) -> dict:
    """Lq norms of the truncated symmetric kernels D_N for p >= 2.

    A standard-form representation here would force a kernel whose
    Fourier coefficients are identically one; its truncations D_N must
    then stay Lq bounded, but they grow like N^(1 - 1/q). Each row
    checks the slack ratio |D_4N|_q >= 1.3 |D_N|_q.
    """
    if p < 2.0:
        raise BadExponent(f"kernel-blowup diagnostic needs p >= 2, got {p}")
    q = p / (p - 1.0)
    rows = []
    norms = []
    for N in N_list:
        N = int(N)
        d_n = dirichlet(N)
        d_4n = dirichlet(4 * N)
        norm = lp_norm_t(d_n, q, default_grid(d_n))
        norm4 = lp_norm_t(d_4n, q, default_grid(d_4n))
        ratio = norm4 / norm if norm > 0 else math.inf
        rows.append(
            {
                "N": N,
                "norm_q": norm,
                "norm_q_at_4N": norm4,
                "ratio": ratio,
                "pass": ratio >= 1.3,
            }
        )
        norms.append(norm)
    increasing = all(b > a for a, b in zip(norms, norms[1:]))
    return {
        "p": p,
        "q": q,
        "rows": rows,
        "strictly_increasing": increasing,
        "pass": increasing and all(r["pass"] for r in rows),
    }


def analytic_kernel(N: int) -> TrigPoly:
    """K_N = sum of chi_k for 0 <= k <= N."""
    return TrigPoly({k: 1.0 for k in range(N + 1)})


def diagnostic_analytic_growth(N_list) -> dict:
    """L1 norms of the one-sided truncation kernels K_N.

    The obstruction on the sup-norm algebra is a would-be measure with
    coefficients one on all nonnegative frequencies; boundedness of
    such coefficients would cap |K_N|_1, which instead grows like
    (4/pi^2) ln N. The floor checked is the slack 0.3 ln N.
    """
    rows = []
    norms = []
    for N in N_list:
        N = int(N)
        kernel = analytic_kernel(N)
        norm = lp_norm_t(kernel, 1.0, default_grid(kernel))
        floor = 0.3 * math.log(max(N, 1))
        rows.append({"N": N, "l1_norm": norm, "floor": floor, "pass": norm >= floor})
        norms.append(norm)
    increasing = all(b > a for a, b in zip(norms, norms[1:]))
    return {
        "rows": rows,
        "strictly_increasing": increasing,
        "pass": increasing and all(r["pass"] for r in rows),
    }


# ---------------------------------------------------------------------------
# JSON format


def trig_to_json(f: TrigPoly) -> dict:
    return {"coeffs": {str(k): complex_to_pair(c) for k, c in sorted(f.coeffs.items())}}


def trig_from_json(doc: dict) -> TrigPoly:
    return TrigPoly({int(k): pair_to_complex(pair) for k, pair in doc["coeffs"].items()})
