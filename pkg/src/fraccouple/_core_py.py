"""Pure-NumPy generation core, the fallback when the compiled extension
is unavailable.

Step-for-step mirror of ``_core``: same state updates in the same order,
with the inner product delegated to ``np.dot``.  Results agree with the
compiled backend to rounding of the dot product; within this backend the
W=1 decoupling reduction is exact because single and paired recursions
share the same dot.
"""

import math

import numpy as np

__all__ = [
    "backend_name",
    "arfima_single",
    "arfima_pair",
    "fiarch_single",
    "fiarch_pair",
]

_dot = np.dot


def backend_name():
    return "python"


def arfima_single(w_rev, eps, burn_in):
    L = w_rev.shape[0]
    total = eps.shape[0]
    h = np.zeros(L + total, dtype=np.float64)
    for t in range(total):
        h[L + t] = _dot(w_rev, h[t:t + L]) + eps[t]
    return h[L + burn_in:].copy()


def arfima_pair(w1_rev, w2_rev, w, eps_x, eps_y, burn_in):
    L = w1_rev.shape[0]
    total = eps_x.shape[0]
    hx = np.zeros(L + total, dtype=np.float64)
    hy = np.zeros(L + total, dtype=np.float64)
    cw = 1.0 - w
    for t in range(total):
        X = _dot(w1_rev, hx[t:t + L])
        Y = _dot(w2_rev, hy[t:t + L])
        hx[L + t] = (w * X + cw * Y) + eps_x[t]
        hy[L + t] = (cw * X + w * Y) + eps_y[t]
    return hx[L + burn_in:].copy(), hy[L + burn_in:].copy()


def fiarch_single(w_rev, eps, burn_in, init_abs_mean, tail_comp):
    L = w_rev.shape[0]
    total = eps.shape[0]
    x = np.empty(total, dtype=np.float64)
    habs = np.empty(L + total, dtype=np.float64)
    habs[:L] = init_abs_mean
    sum_abs = init_abs_mean
    cnt = 1.0
    sig_sum_out = 0.0
    for t in range(total):
        mu = sum_abs / cnt
        sig = _dot(w_rev, habs[t:t + L]) / mu + tail_comp
        xv = sig * eps[t]
        x[t] = xv
        av = math.fabs(xv)
        habs[L + t] = av
        sum_abs = sum_abs + av
        cnt = cnt + 1.0
        if t >= burn_in:
            sig_sum_out = sig_sum_out + sig
    return x[burn_in:].copy(), sig_sum_out / float(total - burn_in)


def fiarch_pair(w1_rev, w2_rev, w, eps_x, eps_y, burn_in, init_abs_mean,
                tail_comp_1, tail_comp_2, check_interval, lo, hi):
    L = w1_rev.shape[0]
    total = eps_x.shape[0]
    x = np.empty(total, dtype=np.float64)
    y = np.empty(total, dtype=np.float64)
    habsx = np.empty(L + total, dtype=np.float64)
    habsy = np.empty(L + total, dtype=np.float64)
    habsx[:L] = init_abs_mean
    habsy[:L] = init_abs_mean
    cw = 1.0 - w
    sum_ax = init_abs_mean
    sum_ay = init_abs_mean
    cnt_x = 1.0
    cnt_y = 1.0
    comp_sum_x = 0.0
    comp_sum_y = 0.0
    out_sum_x = 0.0
    out_sum_y = 0.0
    fail_step = -1
    for t in range(total):
        mux = sum_ax / cnt_x
        muy = sum_ay / cnt_y
        sx = _dot(w1_rev, habsx[t:t + L]) / mux + tail_comp_1
        sy = _dot(w2_rev, habsy[t:t + L]) / muy + tail_comp_2
        cx = w * sx + cw * sy
        cy = cw * sx + w * sy
        xv = cx * eps_x[t]
        yv = cy * eps_y[t]
        x[t] = xv
        y[t] = yv
        ax = math.fabs(xv)
        ay = math.fabs(yv)
        habsx[L + t] = ax
        habsy[L + t] = ay
        sum_ax = sum_ax + ax
        sum_ay = sum_ay + ay
        cnt_x = cnt_x + 1.0
        cnt_y = cnt_y + 1.0
        comp_sum_x = comp_sum_x + cx
        comp_sum_y = comp_sum_y + cy
        if t >= burn_in:
            out_sum_x = out_sum_x + cx
            out_sum_y = out_sum_y + cy
        if check_interval > 0 and (t + 1) % check_interval == 0:
            m = comp_sum_x / float(t + 1)
            if m < lo or m > hi:
                fail_step = t
                break
            m = comp_sum_y / float(t + 1)
            if m < lo or m > hi:
                fail_step = t
                break
    n_out = float(total - burn_in)
    return (x[burn_in:].copy(), y[burn_in:].copy(),
            out_sum_x / n_out, out_sum_y / n_out, fail_step)
