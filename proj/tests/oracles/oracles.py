"""Independent reference computations for values frozen into the C++ tests.

Run with `python3 tests/oracles/oracles.py`. Nothing here shares code with the
C++ implementation; each value is recomputed from first principles.
"""

import math

import numpy as np


def eta_schedule():
    print("eta(2, 10) =", repr(10.0 / 2.0 ** 1.1))


def backtracking_trace():
    # f(x) = x^2 from x = 1 along d = -3, gamma = 0.9, M = 0, eta = 0, sigma = 0.5
    f = lambda x: x * x
    x, d, g, gamma = 1.0, -3.0, 2.0, 0.9
    alpha = 1.0
    trace = []
    while True:
        ft = f(x + alpha * d)
        bound = f(x) + gamma * alpha * g * d
        trace.append((alpha, x + alpha * d, ft, bound, ft <= bound))
        if ft <= bound:
            break
        alpha *= 0.5
    for row in trace:
        print("  alpha=%.6g x=%.6g f=%.10g bound=%.10g ok=%s" % row)
    print("accepted alpha =", alpha, "evals =", len(trace))


def chained_lq_error():
    fstar = -math.sqrt(2.0)
    print("error(-1.4, -sqrt2) =", repr(abs(-1.4 - fstar) / abs(fstar)))


def ssim_constant_images():
    c1, c2 = 1e-4, 9e-4
    mx, my = 0.0, 1.0
    val = (2 * mx * my + c1) * (0 + c2) / ((mx * mx + my * my + c1) * (0 + 0 + c2))
    print("ssim(0-image, 1-image) =", repr(val))


def mifflin2_optimum(n=50):
    # 2r + 1.75|r| = 0.25 r + 3.5 max(r, 0) is convex nondecreasing in r, and
    # r = x_i^2 + x_{i+1}^2 - 1 is convex, so the whole objective is convex.
    import cvxpy as cp

    x = cp.Variable(n)
    r = cp.square(x[:-1]) + cp.square(x[1:]) - 1.0
    obj = cp.sum(-x[:-1] + 0.25 * r + 3.5 * cp.pos(r))
    prob = cp.Problem(cp.Minimize(obj))
    prob.solve()
    print("Mifflin2 n=%d optimum = %.6f" % (n, prob.value))


def tv_examples():
    def tv(img):
        img = np.asarray(img, dtype=float)
        n = img.shape[0]
        s = 0.0
        for i in range(n - 1):
            for j in range(n - 1):
                s += math.hypot(img[i, j + 1] - img[i, j], img[i + 1, j] - img[i, j])
        return s

    print("tv([[0,1],[0,1]]) =", tv([[0, 1], [0, 1]]))
    print("tv(x_ij = j, 3x3) =", tv([[0, 1, 2]] * 3))


def psnr_examples():
    print("psnr shift 0.1 =", 10 * math.log10(1.0 / 0.01))
    print("psnr drop for doubling =", 10 * math.log10(4.0))


if __name__ == "__main__":
    eta_schedule()
    backtracking_trace()
    chained_lq_error()
    ssim_constant_images()
    tv_examples()
    psnr_examples()
    mifflin2_optimum()
