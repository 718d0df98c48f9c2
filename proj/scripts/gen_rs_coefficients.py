"""Generate Taylor coefficients (in z = 2p - 1) of the Riemann-Siegel
correction functions C0..C4 and print them as C++ arrays.

Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) becomes
f(z) = -cos(pi z^2 / 2 - 5 pi / 8) / cos(pi z); derivatives in p are
2^n times derivatives in z.
"""
import mpmath as mp

mp.mp.dps = 60
DEG = 90


def series_mul(a, b):
    out = [mp.mpf(0)] * DEG
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(DEG - i):
            out[i + j] += ai * b[j]
    return out


def series_inv(a):
    out = [mp.mpf(0)] * DEG
    out[0] = 1 / a[0]
    for n in range(1, DEG):
        s = sum(a[k] * out[n - k] for k in range(1, n + 1))
        out[n] = -s / a[0]
    return out


def deriv(a, times=1):
    for _ in range(times):
        a = [a[i + 1] * (i + 1) for i in range(len(a) - 1)] + [mp.mpf(0)]
    return a


def scale(a, c):
    return [c * v for v in a]


def add(*arrs):
    return [sum(v) for v in zip(*arrs)]


pi = mp.pi
# numerator: -cos(pi z^2/2 - 5pi/8) = -(cos(u)cos(5pi/8) + sin(u)sin(5pi/8)), u = pi z^2/2
num = [mp.mpf(0)] * DEG
c58, s58 = mp.cos(5 * pi / 8), mp.sin(5 * pi / 8)
for k in range(0, DEG):
    if 2 * k >= DEG:
        break
    # u^k / k! with u = pi z^2 / 2 -> coefficient on z^{2k}
    term = (pi / 2) ** k / mp.factorial(k)
    if k % 4 == 0:
        cu, su = 1, 0
    elif k % 4 == 1:
        cu, su = 0, 1
    elif k % 4 == 2:
        cu, su = -1, 0
    else:
        cu, su = 0, -1
    num[2 * k] = -(cu * c58 + su * s58) * term
den = [mp.mpf(0)] * DEG
for k in range(0, DEG):
    if 2 * k >= DEG:
        break
    den[2 * k] = (-1) ** k * pi ** (2 * k) / mp.factorial(2 * k)
f = series_mul(num, series_inv(den))


def d(n):
    return scale(deriv(f, n), mp.mpf(2) ** n)


C = [
    f,
    scale(d(3), -1 / (96 * pi ** 2)),
    add(scale(d(2), 1 / (64 * pi ** 2)), scale(d(6), 1 / (18432 * pi ** 4))),
    add(scale(d(1), -1 / (64 * pi ** 2)), scale(d(5), -1 / (3840 * pi ** 4)),
        scale(d(9), -1 / (5308416 * pi ** 6))),
    add(scale(f, 1 / (128 * pi ** 2)), scale(d(4), 19 / (24576 * pi ** 4)),
        scale(d(8), 11 / (5898240 * pi ** 6)), scale(d(12), 1 / (2038431744 * pi ** 8))),
]

if __name__ == "__main__":
    print("// Generated by scripts/gen_rs_coefficients.py. Do not edit.")
    print("//")
    print("// Taylor coefficients in z = 2p - 1 of the Riemann-Siegel correction")
    print("// functions C0..C4 (ascending powers).")
    print("#pragma once")
    print("")
    print("#include <array>")
    print("")
    print("namespace zeta_osc::detail {")
    print("")
    for k, coeffs in enumerate(C):
        last = max(i for i, v in enumerate(coeffs[:DEG - 14]) if abs(v) > mp.mpf("1e-22"))
        print(f"// C{k}: degree {last}")
        print(f"constexpr std::array<double, {last + 1}> kC{k} = {{")
        for i in range(last + 1):
            print(f"    {mp.nstr(coeffs[i], 20, min_fixed=-1, max_fixed=-1)},")
        print("};")
        print("")
    print("}  // namespace zeta_osc::detail")
