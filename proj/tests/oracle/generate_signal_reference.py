#!/usr/bin/env python3
"""Reference signals for the evaluator tests, computed independently of the library.

Run from the repository root:

    python3 tests/oracle/generate_signal_reference.py > tests/fixtures/signal_reference.hpp

Unbounded signals come from mpmath quadrature of the Fourier integrals and of
the Ramsey time integral. Finite-region signals come from quadrature of the
Green-function representation with erf/Bessel closed forms for the inner
integrals.
"""
import mpmath as mp

mp.mp.dps = 30

NU, GAMMA, V0, A, LAM = mp.mpf(1000), mp.mpf(1), mp.mpf(100), mp.mpf(1), mp.mpf(1)


def rates(dw):
    return mp.mpc(NU + GAMMA, dw), mp.mpc(GAMMA, dw)


def beta(dw):
    alpha, alpha0 = rates(dw)
    return mp.sqrt(2 * alpha0 * alpha**2 / (NU * V0**2))


def lam_hat(dim, k):
    g = mp.exp(-k * k * A * A / 4)
    return (mp.sqrt(mp.pi) * A * LAM if dim == 1 else mp.pi * A * A * LAM) * g


def fourier(dim, dw, exact):
    alpha, alpha0 = rates(dw)

    def kernel(k):
        if exact:
            if k == 0:
                return 1 / alpha0
            z = alpha / (k * V0)
            fhat = mp.sqrt(mp.pi) / (k * V0) * mp.exp(z * z) * mp.erfc(z)
            return fhat / (1 - NU * fhat)
        return 1 / (alpha0 + k * k * V0 * V0 / (2 * alpha))

    if dim == 1:
        f = lambda k: lam_hat(1, k) ** 2 * kernel(k) / mp.pi
    else:
        f = lambda k: k * lam_hat(2, k) ** 2 * kernel(k) / (2 * mp.pi)
    return mp.quad(f, [0, 0.5, 1, 2, 4, 8, 16])


def ramsey(dim, dw):
    alpha, alpha0 = rates(dw)
    tau_r = alpha * A * A / V0**2
    c = mp.sqrt(mp.pi / 2) * A * LAM**2 if dim == 1 else mp.pi * LAM**2 * A * A / 2
    w = (lambda t: (1 + t / tau_r) ** mp.mpf(-0.5)) if dim == 1 else (lambda t: 1 / (1 + t / tau_r))
    return c * mp.quad(lambda t: mp.exp(-alpha0 * t) * w(t), [0, 0.01, 0.1, 1, 5, 20, mp.inf])


def slab(dw, R):
    alpha, alpha0 = rates(dw)
    b = beta(dw)
    eps = b * A / 2
    C = lambda x: mp.sqrt(mp.pi) * A / 4 * mp.exp(eps**2) * (mp.erf(x / A - eps) + mp.erf(x / A + eps))
    f = lambda x: mp.sinh(b * (R - x)) / mp.cosh(b * R) * mp.exp(-x * x / A**2) * C(x)
    return 4 * b * LAM**2 / alpha0 * mp.quad(f, mp.linspace(0, R, 5))


def disk(dw, R):
    alpha, alpha0 = rates(dw)
    b = beta(dw)
    inner = lambda r: mp.quad(lambda x: x * mp.besseli(0, b * x) * mp.exp(-x * x / A**2), [0, r])
    k0R, i0R = mp.besselk(0, b * R), mp.besseli(0, b * R)

    def f(r):
        if r == 0:
            return mp.mpf(0)
        return r * mp.exp(-r * r / A**2) * (mp.besselk(0, b * r) - k0R * mp.besseli(0, b * r) / i0R) * inner(r)

    return 4 * mp.pi * b**2 * LAM**2 / alpha0 * mp.quad(f, mp.linspace(0, R, 5))


def fmt(x):
    return mp.nstr(x, 17, min_fixed=-1, max_fixed=-1)


def emit(name, rows):
    print("inline constexpr SignalReference %s[] = {" % name)
    for dim, dw, R, v in rows:
        print("    {%d, %s, %s, %s, %s}," % (dim, fmt(dw), R, fmt(mp.re(v)), fmt(mp.im(v))))
    print("};\n")


def main():
    print("// Generated by tests/oracle/generate_signal_reference.py. Do not edit.")
    print("#pragma once\n")
    print("namespace ramsey::fixtures {\n")
    print("inline constexpr double kInf = __builtin_inf();\n")
    print("// Reference parameters: nu 1000, gamma 1, v0 100, a 1, lambda0 1.")
    print("struct SignalReference {\n  int dim;\n  double delta_omega, R, re, im;\n};\n")
    grid = [0, 1, 5, -3]
    emit("kTruncatedFourier", [(d, w, "kInf", fourier(d, w, False)) for d in (1, 2) for w in grid])
    emit("kExactFourier", [(d, w, "kInf", fourier(d, w, True)) for d in (1, 2) for w in (0, 2)])
    emit("kRamseyIntegral", [(d, w, "kInf", ramsey(d, w)) for d in (1, 2) for w in grid])
    emit("kSlab", [(1, w, "%.1f" % R, slab(w, mp.mpf(R))) for R in (2, 3, 5) for w in (0, 2)])
    emit("kDisk", [(2, w, "%.1f" % R, disk(w, mp.mpf(R))) for R in (2, 3) for w in (0, 2)])
    print("}  // namespace ramsey::fixtures")


if __name__ == "__main__":
    main()
