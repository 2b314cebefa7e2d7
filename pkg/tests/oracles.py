"""Independent reference computations used only by the test-suite.

Nothing here calls the library's root finder, residue formula or quadrature.
"""

import math

import numpy as np


def j2_ref(k, lam, a=1.0):
    """J2 written from the resonance condition, hbar = 2m = 1 units."""
    k = np.asarray(k, dtype=complex)
    return 0.5 * np.exp(1j * k * a) * ((1 + 1j * lam / (a * k)) * np.sin(k * a) + 1j * np.cos(k * a))


def s_ref(q, lam):
    j1 = 0.5 * np.exp(-1j * q) * ((1 - 1j * lam / q) * np.sin(q) - 1j * np.cos(q))
    return -j1 / j2_ref(q, lam)


def grid_scan_poles(lam, count, re_max=None, im_min=-math.pi, density=400):
    """
    First ``count`` zeros of J2 by brute force: a dense |J2| grid, then
    repeated zooming (halving the box around the current modulus minimum)
    until the box is below 1e-15 relative.
    """
    re_max = (count + 1) * math.pi if re_max is None else re_max
    nx, ny = int(re_max * density / math.pi), int(-im_min * density / math.pi)
    xs = np.linspace(1e-3, re_max, nx)
    ys = np.linspace(im_min, -1e-14, ny)
    K = xs[None, :] + 1j * ys[:, None]
    A = np.abs(j2_ref(K, lam))
    P = np.pad(A, 1, constant_values=np.inf)
    is_min = np.ones_like(A, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= A <= P[1 + di:1 + di + ny, 1 + dj:1 + dj + nx]
    seeds = sorted((complex(K[i, j]) for i, j in zip(*np.nonzero(is_min))), key=lambda z: z.real)
    dx, dy = xs[1] - xs[0], ys[1] - ys[0]
    roots = [_zoom(s, dx, dy, lam) for s in seeds]
    roots = [r for r in roots if abs(j2_ref(r, lam)) < 1e-10 * max(1.0, lam)]
    return roots[:count]


def _zoom(center, hx, hy, lam, m=9):
    """Bisection in modulus: shrink a box around the |J2| minimum."""
    while max(hx, hy) > 1e-15 * abs(center):
        xs = center.real + hx * np.linspace(-1, 1, m)
        ys = center.imag + hy * np.linspace(-1, 1, m)
        K = xs[None, :] + 1j * ys[:, None]
        A = np.abs(j2_ref(K, lam))
        i, j = np.unravel_index(np.argmin(A), A.shape)
        center = complex(K[i, j])
        hx, hy = hx / 2, hy / 2
    return center


def contour_residue(lam, k_pole, radius, nodes=256):
    """(1/2 pi i) contour integral of S over a circle, trapezoidal rule."""
    theta = 2 * np.pi * np.arange(nodes) / nodes
    q = k_pole + radius * np.exp(1j * theta)
    dq = 1j * radius * np.exp(1j * theta)
    return complex(np.sum(s_ref(q, lam) * dq) / nodes / 1j)


def simpson(y, h):
    """Composite Simpson rule on an odd number of equally spaced samples."""
    y = np.asarray(y)
    if len(y) % 2 == 0:
        raise ValueError("Simpson needs an even number of panels")
    return h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())


def simpson_halfline_k(g, k_cut, panels=10**6):
    """
    int_0^inf g(k) dk: Simpson with ``panels`` panels on [0, k_cut] plus a
    second Simpson pass over the tail in u = 1/k, u in (0, 1/k_cut].
    """
    k = np.linspace(0.0, k_cut, panels + 1)
    head = simpson(g(k), k_cut / panels)
    u = np.linspace(0.0, 1.0 / k_cut, panels + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        tail_vals = np.where(u > 0, g(1.0 / np.where(u > 0, u, 1.0)) / np.where(u > 0, u, 1.0) ** 2, 0.0)
    tail = simpson(tail_vals, (1.0 / k_cut) / panels)
    return head, tail


def winding_count_dense(lam, re_max, im_min, n=200000):
    """Argument principle on a very finely sampled rectangle (no adaptivity)."""
    edges = [(complex(1e-9, im_min), complex(re_max, im_min)),
             (complex(re_max, im_min), complex(re_max, 0)),
             (complex(re_max, 0), complex(1e-9, 0)),
             (complex(1e-9, 0), complex(1e-9, im_min))]
    total = 0.0
    for p, q in edges:
        z = p + (q - p) * np.linspace(0, 1, n)
        ph = np.unwrap(np.angle(j2_ref(z, lam)))
        total += ph[-1] - ph[0]
    return round(total / (2 * math.pi))


def lorentzian_fraction(half_width_in_gammas):
    """Share of a unit Lorentzian (FWHM Gamma) inside E_R +/- w Gamma."""
    return 2 / math.pi * math.atan(2 * half_width_in_gammas)

