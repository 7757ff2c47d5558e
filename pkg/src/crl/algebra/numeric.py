"""Floating-point roots, used for witnesses and oracles only."""

from __future__ import annotations

import numpy as np


def horner(coeffs, z):
    """Value and derivative of sum(coeffs[i] * z**i)."""
    val = 0j
    der = 0j
    for c in reversed(coeffs):
        der = der * z + val
        val = val * z + c
    return val, der


def roots(coeffs, newton_steps: int = 1) -> np.ndarray:
    """Roots of sum(coeffs[i] * x**i): companion eigenvalues plus Newton polish."""
    c = [complex(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return np.zeros(0, dtype=complex)
    z = np.roots(c[::-1]).astype(complex)
    for _ in range(newton_steps):
        for k, zk in enumerate(z):
            val, der = horner(c, zk)
            if der != 0:
                step = val / der
                # keep polish local; a wild step means a multiple root
                if abs(step) < 1e-3 * max(1.0, abs(zk)):
                    z[k] = zk - step
    return z


def relative_residual(coeffs, z) -> float:
    """|p(z)| divided by the sum of the absolute values of the terms."""
    val = 0j
    scale = 0.0
    zk = 1 + 0j
    for c in coeffs:
        val += c * zk
        scale += abs(c) * abs(zk)
        zk *= z
    return abs(val) / scale if scale else 0.0
