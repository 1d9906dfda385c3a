#!/usr/bin/env python3
"""Regenerate data/gold.csv, a gold-like optical absorption table.

Drude background (omega_p = 1.37e16 rad/s, gamma = 5.32e13 rad/s) plus two
interband Lorentz oscillators near 2.6 eV and 4 eV, sampled on a log grid
from 0.1 eV to 100 eV.  Column three (eps_imag) is what the continuation
integral consumes; column two is the matching real part at real frequency,
kept for completeness.
"""

import math

OMEGA_P = 1.37e16
GAMMA = 5.32e13
# (strength rad^2/s^2, center rad/s, width rad/s)
LORENTZ = [
    (1.4e31, 4.0e15, 9.0e14),
    (6.0e31, 6.0e15, 2.0e15),
]


def eps_imag(w):
    v = OMEGA_P**2 * GAMMA / (w * (w * w + GAMMA * GAMMA))
    for f, x0, g in LORENTZ:
        v += f * g * w / ((x0 * x0 - w * w) ** 2 + g * g * w * w)
    return v


def eps_real(w):
    v = 1.0 - OMEGA_P**2 / (w * w + GAMMA * GAMMA)
    for f, x0, g in LORENTZ:
        v += f * (x0 * x0 - w * w) / ((x0 * x0 - w * w) ** 2 + g * g * w * w)
    return v


def main():
    lo, hi, n = 1.5e14, 1.5e17, 140
    rows = ["omega_rad_s,eps_real,eps_imag"]
    for i in range(n):
        w = lo * (hi / lo) ** (i / (n - 1))
        rows.append(f"{w:.6e},{eps_real(w):.6e},{eps_imag(w):.6e}")
    with open("data/gold.csv", "w") as f:
        f.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
