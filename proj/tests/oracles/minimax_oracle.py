# SPDX-License-Identifier: Apache-2.0
# Reference minimax designs over the full K*N weight vector (no aperture
# reduction), solved with CLARABEL through cvxpy. The printed ripples are
# frozen in tests/test_pattern.cpp.
import numpy as np
import cvxpy as cp


def grid(lo, hi, guard, step):
    n = int(round(180 / step))
    deg = -90 + step * np.arange(n + 1)
    tol = 1e-9
    main = (deg >= lo - tol) & (deg <= hi + tol)
    side = ((deg <= lo - guard + tol) | (deg >= hi + guard - tol)) & ~main
    return np.deg2rad(deg[main]), np.deg2rad(deg[side])


def design(sub, d, N, drx, lo, hi, guard, step, eps, profile):
    tx = d * np.array(sub)
    rx = drx * np.arange(N)
    pos = (tx[:, None] + rx[None, :]).ravel()  # entry k*N + n
    ml, sl = grid(lo, hi, guard, step)
    ref = 0.5 * (pos.min() + pos.max()) if profile == "center" else 0.0
    w = cp.Variable(len(pos), complex=True)
    rho = cp.Variable()
    steer = lambda th: np.exp(2j * np.pi * np.outer(np.sin(th), pos))
    tgt = np.exp(2j * np.pi * ref * np.sin(ml))
    cons = [cp.abs(steer(ml) @ cp.conj(w) - tgt) <= rho, cp.abs(steer(sl) @ cp.conj(w)) <= eps]
    prob = cp.Problem(cp.Minimize(rho), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    return float(rho.value), prob.status


if __name__ == "__main__":
    toy = (0.25, 4, 0.5, -20, 20, 5, 1.0)
    print("constant", design([0, 2, 5], *toy, 0.1, "const"))
    print("tight", design([0, 1, 2], *toy, 0.001, "center"))
    print("K2 {0,1}", design([0, 1], 0.25, 2, 0.5, -30, 30, 10, 2.0, 0.3, "center"))
    print("K2 {0,3}", design([0, 3], 0.25, 2, 0.5, -30, 30, 10, 2.0, 0.3, "center"))
    for e in [0.05, 0.1, 0.2, 0.4]:
        print("eps", e, design([0, 2, 5], *toy, e, "center"))
