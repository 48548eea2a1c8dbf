#!/usr/bin/env python3
"""Regenerate tests/oracles/reference_values.inc.

Reference values are evaluated with mpmath at 45 significant digits:
ln Gamma via mpmath.loggamma, I_x(a, b) via a high-precision continued
fraction (the mpmath hypergeometric route stalls for shapes near 1e6), and
P(a, x) via the same series / continued fraction split carried at 45
digits. Inputs are drawn from a fixed seed so the file
is reproducible.
"""
import random
import sys

import mpmath as mp

mp.mp.dps = 45


def inc_beta(a, b, x):
    a, b, x = mp.mpf(a), mp.mpf(b), mp.mpf(x)
    if x == 0:
        return mp.mpf(0)
    if x == 1:
        return mp.mpf(1)
    if x > (a + 1) / (a + b + 2):
        return 1 - inc_beta(b, a, 1 - x)
    front = mp.exp(a * mp.log(x) + b * mp.log1p(-x) - mp.log(mp.beta(a, b)))
    qab, qap, qam = a + b, a + 1, a - 1
    c = mp.mpf(1)
    d = 1 / (1 - qab * x / qap)
    h = d
    for k in range(1, 200000):
        m2 = 2 * k
        aa = k * (b - k) * x / ((qam + m2) * (a + m2))
        d = 1 / (1 + aa * d)
        c = 1 + aa / c
        h *= d * c
        aa = -(a + k) * (qab + k) * x / ((a + m2) * (qap + m2))
        d = 1 / (1 + aa * d)
        c = 1 + aa / c
        de = d * c
        h *= de
        if abs(de - 1) < mp.mpf(10) ** -42:
            break
    return front * h / a


def inc_gamma_p(a, x):
    a, x = mp.mpf(a), mp.mpf(x)
    if x == 0:
        return mp.mpf(0)
    front = mp.exp(a * mp.log(x) - x - mp.loggamma(a))
    tol = mp.mpf(10) ** -42
    if x < a + 1:
        ap, term = a, 1 / a
        total = term
        while True:
            ap += 1
            term *= x / ap
            total += term
            if abs(term) < abs(total) * tol:
                return front * total
    b = x + 1 - a
    c = 1 / mp.mpf(10) ** -300
    d = 1 / b
    h = d
    i = 0
    while True:
        i += 1
        an = -i * (i - a)
        b += 2
        d = 1 / (an * d + b)
        c = b + an / c
        de = d * c
        h *= de
        if abs(de - 1) < tol:
            return 1 - front * h


def log_uniform(rng, lo, hi):
    return float(mp.e ** rng.uniform(float(mp.log(lo)), float(mp.log(hi))))


def fmt(v):
    return repr(float(v))


def main(out):
    rng = random.Random(20111101)
    lines = ["// Generated by gen_reference.py; do not edit.", ""]

    lines.append("struct LogGammaRef { double x; double value; };")
    lines.append("inline constexpr LogGammaRef kLogGammaRef[] = {")
    xs = [log_uniform(rng, 1e-6, 1e8) for _ in range(150)]
    xs += [rng.uniform(0.5, 2.5) for _ in range(40)]
    xs += [1 + 1e-9, 1 - 1e-9, 2 + 1e-9, 2 - 1e-9, 1 + 3e-5, 2 - 7e-6, 9.999999, 10.0, 0.5, 2.5]
    for x in xs:
        lines.append(f"    {{{fmt(x)}, {fmt(mp.loggamma(mp.mpf(x)))}}},")
    lines.append("};")
    lines.append("")

    lines.append("struct IncBetaRef { double x; double a; double b; double value; };")
    lines.append("inline constexpr IncBetaRef kIncBetaRef[] = {")
    count = 0
    while count < 240:
        a = log_uniform(rng, 1e-3, 1e6)
        b = log_uniform(rng, 1e-3, 1e6)
        if count % 3 == 0:
            x = rng.uniform(0.0, 1.0)
        else:
            mean = a / (a + b)
            sd = (a * b / ((a + b) ** 2 * (a + b + 1))) ** 0.5
            x = mean + rng.gauss(0.0, 2.0) * sd
        if not 0.0 < x < 1.0:
            continue
        lines.append(f"    {{{fmt(x)}, {fmt(a)}, {fmt(b)}, {fmt(inc_beta(a, b, x))}}},")
        count += 1
    lines.append("};")
    lines.append("")

    lines.append("struct IncGammaRef { double a; double x; double value; };")
    lines.append("inline constexpr IncGammaRef kIncGammaRef[] = {")
    count = 0
    while count < 160:
        a = log_uniform(rng, 1e-3, 1e6)
        if count % 3 == 0:
            x = log_uniform(rng, 1e-4, 2e6)
        else:
            x = a + rng.gauss(0.0, 2.0) * a ** 0.5
        if x < 0.0:
            continue
        value = inc_gamma_p(a, x)
        lines.append(f"    {{{fmt(a)}, {fmt(x)}, {fmt(value)}}},")
        count += 1
    lines.append("};")

    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "reference_values.inc")
