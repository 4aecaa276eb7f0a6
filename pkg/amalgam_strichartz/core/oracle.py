"""Closed-form Gaussian and chirp arithmetic.

Every state is x -> amplitude * exp(-pi * c * |x|^2) on R^d. The family is
closed under products, convolution and free Schroedinger evolution, and its
Wiener amalgam norms are known exactly for the window g(x) = exp(-pi |x|^2).
These values are the ground truth for the numeric engines.
"""
import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from amalgam_strichartz.const import SUPPORTED_DIMS
from amalgam_strichartz.core.errors import DomainError

Exponent = float
ArrayLike = Union[float, np.ndarray]


def inv(p: Exponent) -> float:
    """1/p with 1/inf = 0."""
    if p <= 0:
        raise DomainError(f"Exponent must be positive, got {p}")
    return 0.0 if math.isinf(p) else 1.0 / p


def conjugate(p: Exponent) -> float:
    """Hoelder conjugate p' with 1/p + 1/p' = 1."""
    if p < 1:
        raise DomainError(f"Exponent must be in [1, inf], got {p}")
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _window_constant(p: Exponent, d: int) -> float:
    # p^{-d/(2p)}, equal to 1 at p = inf
    if math.isinf(p):
        return 1.0
    return p ** (-d / (2.0 * p))


def _check_dim(d: int):
    if d not in SUPPORTED_DIMS:
        raise DomainError(f"Dimension must be one of {SUPPORTED_DIMS}, got {d}")


@dataclass(frozen=True)
class GaussianState:
    """The function x -> amplitude * exp(-pi * c * |x|^2).

    Pure chirps (Re(c) = 0) are allowed; they represent the free kernel.

    Args:
        amplitude (complex): Constant factor
        c (complex): Gaussian parameter with Re(c) >= 0 and c != 0
        dim (int): Space dimension d

    Raises:
        DomainError: if c is zero, Re(c) < 0 or the dimension is unsupported

    Examples:
        >>> u = GaussianState(1, 1)
        >>> u(0.0)
        (1+0j)
    """
    amplitude: complex
    c: complex
    dim: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'amplitude', complex(self.amplitude))
        object.__setattr__(self, 'c', complex(self.c))
        _check_dim(self.dim)
        if self.c == 0:
            raise DomainError("Gaussian parameter c must not be zero")
        if self.c.real < 0:
            raise DomainError(f"Gaussian parameter must have Re(c) >= 0, got {self.c}")

    @property
    def is_chirp(self) -> bool:
        return self.c.real == 0

    def evaluate_r2(self, r2: ArrayLike) -> np.ndarray:
        """Evaluates the state at points given by their squared radius."""
        return self.amplitude * np.exp(-np.pi * self.c * np.asarray(r2))

    def __call__(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.dim == 1:
            r2 = x ** 2
        else:
            r2 = np.sum(x ** 2, axis=-1)
        return self.evaluate_r2(r2)


def kernel_state(t: float, d: int = 1) -> GaussianState:
    """The free Schroedinger kernel K_t(x) = (4 pi i t)^{-d/2} exp(i |x|^2 / (4t)).

    Raises:
        DomainError: if t = 0
    """
    if t == 0:
        raise DomainError("The kernel is not a function at t = 0")
    return GaussianState((4j * math.pi * t) ** (-d / 2.0), -1j / (4.0 * math.pi * t), d)


def chirp_state(a: float, b: float, d: int = 1) -> GaussianState:
    """f_{a+ib}(x) = (a+ib)^{-d/2} exp(-pi |x|^2 / (a+ib)); a = 0 gives the pure chirp f_{bi}."""
    w = complex(a, b)
    if w == 0 or a < 0:
        raise DomainError(f"Need a >= 0 and a + ib != 0, got a={a}, b={b}")
    return GaussianState(w ** (-d / 2.0), 1.0 / w, d)


def rescaled_gaussian(lam: float, d: int = 1) -> GaussianState:
    """x -> exp(-pi lam^2 |x|^2), the unit Gaussian viewed at scale 1/lam."""
    if lam <= 0:
        raise DomainError(f"Scale must be positive, got {lam}")
    return GaussianState(1.0, lam * lam, d)


def gauss_integral(a: complex, z=0.0, d: int = 1) -> complex:
    """Integral of exp(-pi a |x|^2 - 2 pi i z.x) over R^d.

    Args:
        a (complex): Parameter with Re(a) >= 0, a != 0
        z: Complex scalar (d = 1) or d-vector
        d (int): Dimension

    Returns:
        a^{-d/2} exp(-pi z.z / a), principal branch

    Raises:
        DomainError: if a = 0 or Re(a) < 0

    Examples:
        >>> abs(gauss_integral(2.0) - 2 ** -0.5) < 1e-15
        True
    """
    _check_dim(d)
    a = complex(a)
    if a == 0:
        raise DomainError("Gaussian integral diverges for a = 0")
    if a.real < 0:
        raise DomainError(f"Gaussian integral diverges for Re(a) < 0, got {a}")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.size not in (1, d):
        raise DomainError(f"Shift vector must have {d} components, got {z.size}")
    zz = complex(np.sum(z * z)) if z.size == d else complex(z[0] * z[0] * d)
    return a ** (-d / 2.0) * cmath.exp(-math.pi * zz / a)


def _check_same_dim(u: GaussianState, v: GaussianState):
    if u.dim != v.dim:
        raise DomainError(f"Dimension mismatch: {u.dim} vs {v.dim}")


def gauss_multiply(u: GaussianState, v: GaussianState) -> GaussianState:
    _check_same_dim(u, v)
    return GaussianState(u.amplitude * v.amplitude, u.c + v.c, u.dim)


def gauss_convolve(u: GaussianState, v: GaussianState) -> GaussianState:
    """Convolution of two states; at most one of them may be a pure chirp.

    Raises:
        DomainError: on dimension mismatch or if both states are pure chirps
    """
    _check_same_dim(u, v)
    if u.is_chirp and v.is_chirp:
        raise DomainError("Cannot convolve two pure chirps")
    d = u.dim
    s = u.c + v.c
    return GaussianState(u.amplitude * v.amplitude * s ** (-d / 2.0), u.c * v.c / s, d)


def gauss_inner_product(u: GaussianState, v: GaussianState) -> complex:
    """The L^2 pairing of u and v, integral of u * conj(v)."""
    _check_same_dim(u, v)
    s = u.c + v.c.conjugate()
    if s.real <= 0:
        raise DomainError("Inner product of two pure chirps diverges")
    return u.amplitude * v.amplitude.conjugate() * s ** (-u.dim / 2.0)


def free_evolve_gaussian(u0: GaussianState, t: float) -> GaussianState:
    """Evolves decaying Gaussian data under the free Schroedinger flow.

    c -> c / (1 + 4 pi i t c) and amplitude -> amplitude (1 + 4 pi i t c)^{-d/2}.
    For Re(c) > 0 the base never meets the negative real axis, so the
    principal branch is the branch continuous from t = 0.

    Raises:
        DomainError: for chirp data
    """
    if u0.is_chirp:
        raise DomainError("Free evolution of pure chirp data is not supported")
    if t == 0:
        return u0
    w = 1.0 + 4j * math.pi * t * u0.c
    return GaussianState(u0.amplitude * w ** (-u0.dim / 2.0), u0.c / w, u0.dim)


def exact_chirp_amalgam_norm(a: float, p: Exponent, d: int = 1) -> float:
    """Exact W(FL^p, L^inf) norm of the chirp f_{ai} with the Gaussian window.

    Returns:
        (1 + a^2)^{(d/2)(1/p - 1/2)} |a|^{-d/p} p^{-d/(2p)}

    Raises:
        DomainError: if a = 0

    Examples:
        >>> round(exact_chirp_amalgam_norm(1.0, 2), 5)
        0.8409
    """
    _check_dim(d)
    if a == 0:
        raise DomainError("Chirp parameter must be non-zero")
    ip = inv(p)
    return ((1.0 + a * a) ** (0.5 * d * (ip - 0.5)) * abs(a) ** (-d * ip)
            * _window_constant(p, d))


def exact_flq_lr_norm(a: ArrayLike, b: ArrayLike, q: Exponent, r: Exponent, d: int = 1) -> ArrayLike:
    """Exact W(FL^q, L^r) norm of f_{a+ib} with the Gaussian window.

    Vectorized in a and b.

    Raises:
        DomainError: if any a <= 0
    """
    _check_dim(d)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a <= 0):
        raise DomainError("exact_flq_lr_norm requires a > 0")
    iq, ir = inv(q), inv(r)
    e = (a + 1.0) ** 2 + b ** 2
    dd = a * (a + 1.0) + b ** 2
    value = (_window_constant(q, d) * _window_constant(r, d)
             * a ** (-0.5 * d * ir)
             * e ** (0.5 * d * (iq - 0.5))
             * dd ** (0.5 * d * (ir - iq)))
    return value if value.ndim else float(value)


def exact_lr1_lr2_norm(a: ArrayLike, b: ArrayLike, r1: Exponent, r2: Exponent, d: int = 1) -> ArrayLike:
    """Exact W(L^{r1}, L^{r2}) norm of phi^{(a+ib)} with the Gaussian window.

    The modulus of phi^{(a+ib)} T_y g does not depend on b, so neither does the norm.

    Raises:
        DomainError: if any a <= 0
    """
    _check_dim(d)
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0):
        raise DomainError("exact_lr1_lr2_norm requires a > 0")
    i1, i2 = inv(r1), inv(r2)
    value = (_window_constant(r1, d) * _window_constant(r2, d)
             * (a + 1.0) ** (0.5 * d * (i2 - i1))
             * a ** (-0.5 * d * i2))
    return value if value.ndim else float(value)


def evolved_rescaled_norm(lam: float, t: ArrayLike, r1: Exponent, r2: Exponent, d: int = 1) -> ArrayLike:
    """The equivalent (up to window constants) of ||u(lam^2 t, lam x)||_{W(L^{r1}, L^{r2})}.

    Only meant for exponent extraction.
    """
    _check_dim(d)
    if lam <= 0:
        raise DomainError(f"Scale must be positive, got {lam}")
    i1, i2 = inv(r1), inv(r2)
    s2 = (np.asarray(t, dtype=float) * lam ** 2) ** 2
    value = (lam ** (-d * i2)
             * (1.0 + s2) ** (0.5 * d * (i1 - 0.5))
             * (1.0 + lam ** 2 + s2) ** (0.5 * d * (i2 - i1)))
    return value if np.ndim(value) else float(value)


def exact_evolved_lr1_lr2_norm(lam: float, t: ArrayLike, r1: Exponent, r2: Exponent, d: int = 1) -> ArrayLike:
    """Exact ||e^{it Delta} phi^{(lam^2)}||_{W(L^{r1}, L^{r2})}, vectorized in t."""
    if lam <= 0:
        raise DomainError(f"Scale must be positive, got {lam}")
    l2 = lam * lam
    s2 = (4.0 * math.pi * np.asarray(t, dtype=float) * l2) ** 2
    value = (1.0 + s2) ** (-0.25 * d) * exact_lr1_lr2_norm(l2 / (1.0 + s2), 0.0, r1, r2, d)
    return value if np.ndim(value) else float(value)


def exact_evolved_flq_lr_norm(lam: float, t: ArrayLike, q: Exponent, r: Exponent, d: int = 1) -> ArrayLike:
    """Exact ||e^{it Delta} phi^{(lam^2)}||_{W(FL^q, L^r)}, vectorized in t."""
    if lam <= 0:
        raise DomainError(f"Scale must be positive, got {lam}")
    b = 4.0 * math.pi * np.asarray(t, dtype=float)
    value = lam ** (-d) * exact_flq_lr_norm(lam ** -2 + 0.0 * b, b, q, r, d)
    return value if np.ndim(value) else float(value)


def state_lp_norm(u: GaussianState, p: Exponent) -> float:
    if math.isinf(p):
        return abs(u.amplitude)
    if u.is_chirp:
        raise DomainError("Pure chirps have infinite L^p norm for p < inf")
    return abs(u.amplitude) * (p * u.c.real) ** (-u.dim / (2.0 * p))


def state_l2_norm(u: GaussianState) -> float:
    return state_lp_norm(u, 2)


def state_flq_lr_norm(u: GaussianState, q: Exponent, r: Exponent) -> float:
    """Exact W(FL^q, L^r) norm of any state, Gaussian window.

    A exp(-pi c |x|^2) = A c^{-d/2} f_{1/c}, so the norm is |A| |c|^{-d/2}
    times the f_{1/c} value. Pure chirps have finite norm only for r = inf.
    """
    w = 1.0 / u.c
    scale = abs(u.amplitude) * abs(u.c) ** (-u.dim / 2.0)
    if u.is_chirp:
        if not math.isinf(r):
            raise DomainError("Pure chirps lie in W(FL^q, L^r) only for r = inf")
        return scale * exact_chirp_amalgam_norm(w.imag, q, u.dim)
    return scale * exact_flq_lr_norm(w.real, w.imag, q, r, u.dim)


def state_lr1_lr2_norm(u: GaussianState, r1: Exponent, r2: Exponent) -> float:
    """Exact W(L^{r1}, L^{r2}) norm of a decaying state, Gaussian window."""
    if u.is_chirp:
        if not math.isinf(r2):
            raise DomainError("Pure chirps lie in W(L^{r1}, L^{r2}) only for r2 = inf")
        return abs(u.amplitude) * _window_constant(r1, u.dim)
    return abs(u.amplitude) * exact_lr1_lr2_norm(u.c.real, u.c.imag, r1, r2, u.dim)
