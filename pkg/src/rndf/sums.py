"""Deterministic kernels for long oscillatory sums with quadratic phases.

Every series in this package reduces to partial sums of the form

    sum_k  e^{2*pi*i*sign*(k^2*u + k^2*num/den)} / k^(2n),

with u a double and num/den an exact rational.  A naive double product k^2*u
loses the phase entirely near k ~ 5e7, so the fractional part of k^2*u is
computed with an error-free Dekker two-product: the phases are those of the
exactly representable parameter u, to ~1 ulp, independent of chunking.  The
rational part is reduced in integers mod den.  Chunk partial sums are
combined with Kahan compensation so ~1e8-term runs stay byte-reproducible
and lose no digits.
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant

CHUNK = 1 << 21

K_EXACT_LIMIT = 90_000_000  # beyond this k^2 exceeds 2^53 and phases degrade


def _two_prod(a: np.ndarray, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Error-free product: returns (p, e) with p + e == a*b exactly."""
    p = a * b
    ca = _SPLIT * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLIT * b
    bhi = cb - (cb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


def frac_mul(n2: np.ndarray, u: float) -> np.ndarray:
    """Fractional part of n2*u in [0, 1), exact to ~1 ulp for |n2| < 2^53.

    n2 must hold exactly representable integers as float64.
    """
    p, e = _two_prod(n2, float(u))
    f = np.mod(p, 1.0) + e
    return np.mod(f, 1.0)


class KahanAccumulator:
    """Compensated accumulation of complex chunk sums."""

    def __init__(self) -> None:
        self._s = 0.0 + 0.0j
        self._c = 0.0 + 0.0j

    def add(self, value: complex) -> None:
        y = value - self._c
        t = self._s + y
        self._c = (t - self._s) - y
        self._s = t

    @property
    def value(self) -> complex:
        return self._s


def _rational_phase(k: np.ndarray, num: int, den: int) -> np.ndarray:
    """(k^2 * num mod den) / den as float64, exact integer arithmetic."""
    kr = (k % den).astype(np.uint64)
    n = (kr * kr) % np.uint64(den)
    n = (n * np.uint64(num)) % np.uint64(den)
    return n.astype(np.float64) / den


def quad_sum(
    k_max: int,
    u: float = 0.0,
    num: int = 0,
    den: int = 1,
    sign: int = -1,
    inv_power: int = 2,
    odd_only: bool = False,
    k_min: int = 1,
) -> complex:
    """sum_k e^{2*pi*i*sign*(k^2*u + k^2*num/den)} / k^inv_power, k in [k_min, k_max]."""
    if k_max < k_min:
        return 0.0 + 0.0j
    if k_max > K_EXACT_LIMIT:
        raise ValueError(f"k_max={k_max} exceeds exact-phase limit {K_EXACT_LIMIT}")
    acc = KahanAccumulator()
    num %= den
    for lo in range(k_min, k_max + 1, CHUNK):
        hi = min(lo + CHUNK - 1, k_max)
        k = np.arange(lo, hi + 1, dtype=np.int64)
        if odd_only:
            k = k[k % 2 == 1]
            if k.size == 0:
                continue
        kf = k.astype(np.float64)
        phase = frac_mul(kf * kf, u) if u != 0.0 else np.zeros(k.size)
        if num:
            phase = phase + _rational_phase(k, num, den)
        theta = (2.0 * np.pi * sign) * phase
        w = kf ** float(-inv_power)
        acc.add(complex((np.cos(theta) * w).sum(), (np.sin(theta) * w).sum()))
    return acc.value


def fused_increment_sum(num: int, den: int, h: float, k_max: int) -> complex:
    """Oscillatory part of phi(t_{num/den} + h) - phi(t_{num/den}), truncated at k_max.

    Equals sum_{k=1}^{k_max} e^{-2*pi*i*k^2*num/den} (e^{-2*pi*i*k^2*u} - 1) / (-2*pi^2*k^2)
    with u = fl(2*pi*h).  The factor e^{-i*theta} - 1 is formed as
    -2*sin(theta/2)*(sin(theta/2) + i*cos(theta/2)), stable as h -> 0.
    """
    if h == 0.0 or k_max < 1:
        return 0.0 + 0.0j
    if k_max > K_EXACT_LIMIT:
        raise ValueError(f"k_max={k_max} exceeds exact-phase limit {K_EXACT_LIMIT}")
    u = 2.0 * np.pi * h
    acc = KahanAccumulator()
    num %= den
    for lo in range(1, k_max + 1, CHUNK):
        hi = min(lo + CHUNK - 1, k_max)
        k = np.arange(lo, hi + 1, dtype=np.int64)
        kf = k.astype(np.float64)
        half = np.pi * frac_mul(kf * kf, u)  # theta/2, theta = 2*pi*frac(k^2 u)
        sh = np.sin(half)
        ch = np.cos(half)
        dre = -2.0 * sh * sh
        dim = -2.0 * sh * ch
        if num:
            beta = (-2.0 * np.pi) * _rational_phase(k, num, den)
            cb = np.cos(beta)
            sb = np.sin(beta)
            re = cb * dre - sb * dim
            im = cb * dim + sb * dre
        else:
            re, im = dre, dim
        w = 1.0 / (kf * kf)
        acc.add(complex((re * w).sum(), (im * w).sum()))
    return acc.value / (-2.0 * np.pi ** 2)


def periodic_grid_sum(m: int, k_max: int) -> np.ndarray:
    """values[j] = sum_{k=1}^{k_max} e^{-2*pi*i*k^2*j/m} / k^2 for j = 0..m-1.

    Bins the weights 1/k^2 at the exact residues k^2 mod m and applies one
    FFT; every phase is exact and the cost is O(k_max + m*log m).
    """
    spec = np.zeros(m, dtype=np.float64)
    step = CHUNK << 3
    for lo in range(1, k_max + 1, step):
        hi = min(lo + step - 1, k_max)
        k = np.arange(lo, hi + 1, dtype=np.uint64)
        idx = ((k % np.uint64(m)) ** 2) % np.uint64(m)
        kf = k.astype(np.float64)
        spec += np.bincount(idx.astype(np.int64), weights=1.0 / (kf * kf), minlength=m)
    return np.fft.fft(spec)


_NUFFT_W = 14  # Gaussian half-width in fine-grid bins; ~3e-13 relative accuracy


def nufft_grid_sum(freqs: np.ndarray, coeffs: np.ndarray, n_out: int) -> np.ndarray:
    """values[j] = sum_k coeffs[k] e^{2*pi*i*freqs[k]*j}  for j = 0..n_out-1.

    Type-1 nonuniform FFT with Gaussian gridding (oversampling 2, half-width
    _NUFFT_W): sources are spread onto a fine grid, transformed with one FFT,
    and the Gaussian is deconvolved at the output modes.  The output modes
    are recentred around n_out/2 so the deconvolution factor stays bounded.
    """
    m_modes = max(int(n_out), 16)
    m_modes += m_modes % 2
    mr = 2 * m_modes
    tau = np.pi * _NUFFT_W / (2.0 * np.sqrt(2.0) * m_modes * m_modes)
    j0 = n_out // 2

    f = np.mod(np.asarray(freqs, dtype=np.float64), 1.0)
    c = np.asarray(coeffs, dtype=np.complex128) * np.exp((2j * np.pi * j0) * f)

    pos = f * mr
    base = np.floor(pos).astype(np.int64)
    d0 = base - pos
    grid = np.zeros(mr, dtype=np.complex128)
    scale = (2.0 * np.pi / mr) ** 2 / (4.0 * tau)
    for off in range(-_NUFFT_W + 1, _NUFFT_W + 1):
        d = d0 + off
        w = np.exp(-scale * d * d)
        idx = np.mod(base + off, mr)
        cw = c * w
        grid.real += np.bincount(idx, weights=cw.real, minlength=mr)
        grid.imag += np.bincount(idx, weights=cw.imag, minlength=mr)

    fhat = np.fft.ifft(grid) * mr  # sum_i grid[i] e^{+2*pi*i*i*m/mr}
    modes = np.arange(n_out) - j0
    vals = fhat[np.mod(modes, mr)]
    deconv = (2.0 * np.pi / mr) * np.exp(tau * modes.astype(np.float64) ** 2) / (
        2.0 * np.sqrt(np.pi * tau)
    )
    return vals * deconv
