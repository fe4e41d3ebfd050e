"""Independent reference values frozen into tests/frozen_values.hpp."""
import itertools

import mpmath
import sympy as sp

mpmath.mp.dps = 40


def theta_series(c, terms=10**6):
    # sum_{j<=terms} log(1 + c/j^2); split so the tail uses the asymptotic form
    head = 2000
    s = mpmath.fsum(mpmath.log1p(mpmath.mpf(c) / j**2) for j in range(1, head + 1))
    s += mpmath.nsum(lambda j: mpmath.log1p(mpmath.mpf(c) / j**2), [head + 1, terms])
    return s


def kkt_exact(H, c, lower):
    n = H.shape[0]
    for active in itertools.product([False, True], repeat=n):
        free = [i for i in range(n) if not active[i]]
        act = [i for i in range(n) if active[i]]
        x = sp.zeros(n, 1)
        for i in act:
            x[i] = lower[i]
        if free:
            Hff = H.extract(free, free)
            rhs = sp.Matrix([c[i] for i in free]) - H.extract(free, act) * sp.Matrix([lower[i] for i in act]) if act else sp.Matrix([c[i] for i in free])
            xf = Hff.LUsolve(rhs)
            for k, i in enumerate(free):
                x[i] = xf[k]
        if any(x[i] < lower[i] for i in free):
            continue
        z = H * x - c
        if any(z[i] < 0 for i in act):
            continue
        return x
    raise RuntimeError("no KKT point")


def main():
    for c in (1, 10**4, 10**10):
        print(f"theta c={c}: {mpmath.nstr(theta_series(c), 20)}")
    print("kl 2ln2-1:", mpmath.nstr(2 * mpmath.log(2) - 1, 20))
    R = sp.Rational
    H = sp.Matrix([[4, 1, 0, R(1, 2)], [1, 3, R(-1, 2), 0], [0, R(-1, 2), 2, R(1, 4)], [R(1, 2), 0, R(1, 4), 1]])
    c = sp.Matrix([1, -2, R(3, 2), R(-1, 2)])
    lower = [0, 0, 0, 0]
    x = kkt_exact(H, c, lower)
    print("qp4 x* =", [str(v) for v in x], [float(v) for v in x])
    f = (x.T * H * x)[0] / 2 - (c.T * x)[0]
    print("qp4 f* =", f, float(f))


if __name__ == "__main__":
    main()
