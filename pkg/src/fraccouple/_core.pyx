# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled generation core: the O(N*L) causal recursions.

Each function mirrors its twin in ``_core_py`` step for step; only the
rounding of the inner product differs between the two backends.  Within
this backend the paired generators reuse ``_dot`` so that the W=1
decoupling reduction is exact to the last bit.

The inner product uses four independent accumulators (fixed order, so
results are deterministic for a given build) to break the FMA latency
chain; the tails are summed as (a0+a1)+(a2+a3).
"""

import numpy as np

from libc.math cimport fabs


cdef inline double _dot(const double* w, const double* h, Py_ssize_t L) noexcept nogil:
    cdef double a0 = 0.0
    cdef double a1 = 0.0
    cdef double a2 = 0.0
    cdef double a3 = 0.0
    cdef Py_ssize_t j = 0
    while j + 4 <= L:
        a0 = a0 + w[j] * h[j]
        a1 = a1 + w[j + 1] * h[j + 1]
        a2 = a2 + w[j + 2] * h[j + 2]
        a3 = a3 + w[j + 3] * h[j + 3]
        j += 4
    while j < L:
        a0 = a0 + w[j] * h[j]
        j += 1
    return (a0 + a1) + (a2 + a3)


def backend_name():
    return "compiled"


def arfima_single(const double[::1] w_rev, const double[::1] eps,
                  Py_ssize_t burn_in):
    """Long-memory linear recursion x_t = sum_n a_n x_{t-n} + eps_t.

    ``w_rev`` holds the kernel weights reversed (a_L..a_1); ``eps`` holds
    burn_in + N innovations.  Pre-sample history is zero; the first
    burn_in generated values are discarded.
    """
    cdef Py_ssize_t L = w_rev.shape[0]
    cdef Py_ssize_t total = eps.shape[0]
    h_arr = np.zeros(L + total, dtype=np.float64)
    cdef double[::1] h = h_arr
    cdef const double* wp = &w_rev[0]
    cdef double* hp = &h[0]
    cdef Py_ssize_t t
    with nogil:
        for t in range(total):
            hp[L + t] = _dot(wp, hp + t, L) + eps[t]
    return h_arr[L + burn_in:].copy()


def arfima_pair(const double[::1] w1_rev, const double[::1] w2_rev, double w,
                const double[::1] eps_x, const double[::1] eps_y,
                Py_ssize_t burn_in):
    """Coupled pair: each memory term mixes both components with weight w."""
    cdef Py_ssize_t L = w1_rev.shape[0]
    cdef Py_ssize_t total = eps_x.shape[0]
    hx_arr = np.zeros(L + total, dtype=np.float64)
    hy_arr = np.zeros(L + total, dtype=np.float64)
    cdef double[::1] hx = hx_arr
    cdef double[::1] hy = hy_arr
    cdef const double* w1p = &w1_rev[0]
    cdef const double* w2p = &w2_rev[0]
    cdef double* hxp = &hx[0]
    cdef double* hyp = &hy[0]
    cdef double cw = 1.0 - w
    cdef double X, Y
    cdef Py_ssize_t t
    with nogil:
        for t in range(total):
            X = _dot(w1p, hxp + t, L)
            Y = _dot(w2p, hyp + t, L)
            hxp[L + t] = (w * X + cw * Y) + eps_x[t]
            hyp[L + t] = (cw * X + w * Y) + eps_y[t]
    return hx_arr[L + burn_in:].copy(), hy_arr[L + burn_in:].copy()


def fiarch_single(const double[::1] w_rev, const double[::1] eps,
                  Py_ssize_t burn_in, double init_abs_mean, double tail_comp):
    """Volatility recursion x_t = sigma_t eps_t over normalized |x| history.

    ``w_rev`` holds the raw kernel weights reversed; ``tail_comp`` is the
    truncated tail mass, added as a constant so the weight mass acting on
    sigma stays exactly 1 without introducing a unit root into the
    feedback (the infinite tail is replaced by its unconditional mean).
    Pre-sample |x| history is filled with ``init_abs_mean``, which also
    seeds the running mean of |x| as one pseudo-observation, so sigma_1
    is exactly 1.

    Returns (x, sigma_mean) with sigma_mean taken over the kept samples.
    """
    cdef Py_ssize_t L = w_rev.shape[0]
    cdef Py_ssize_t total = eps.shape[0]
    x_arr = np.empty(total, dtype=np.float64)
    habs_arr = np.empty(L + total, dtype=np.float64)
    habs_arr[:L] = init_abs_mean
    cdef double[::1] x = x_arr
    cdef double[::1] habs = habs_arr
    cdef const double* wp = &w_rev[0]
    cdef double* hp = &habs[0]
    cdef double sum_abs = init_abs_mean
    cdef double cnt = 1.0
    cdef double mu, sig, xv, av
    cdef double sig_sum_out = 0.0
    cdef Py_ssize_t t
    with nogil:
        for t in range(total):
            mu = sum_abs / cnt
            sig = _dot(wp, hp + t, L) / mu + tail_comp
            xv = sig * eps[t]
            x[t] = xv
            av = fabs(xv)
            hp[L + t] = av
            sum_abs = sum_abs + av
            cnt = cnt + 1.0
            if t >= burn_in:
                sig_sum_out = sig_sum_out + sig
    return x_arr[burn_in:].copy(), sig_sum_out / <double>(total - burn_in)


def fiarch_pair(const double[::1] w1_rev, const double[::1] w2_rev, double w,
                const double[::1] eps_x, const double[::1] eps_y,
                Py_ssize_t burn_in, double init_abs_mean,
                double tail_comp_1, double tail_comp_2,
                Py_ssize_t check_interval, double lo, double hi):
    """Coupled volatility pair driven by composite volatilities.

    Tail handling as in fiarch_single.  The running mean of each
    composite volatility (over all generated steps) is checked every
    ``check_interval`` steps against [lo, hi]; the returned fail_step is
    the step index of the first breach, or -1.

    Returns (x, y, comp_x_mean, comp_y_mean, fail_step); the means are
    over the kept samples and are valid only when fail_step == -1.
    """
    cdef Py_ssize_t L = w1_rev.shape[0]
    cdef Py_ssize_t total = eps_x.shape[0]
    x_arr = np.empty(total, dtype=np.float64)
    y_arr = np.empty(total, dtype=np.float64)
    habsx_arr = np.empty(L + total, dtype=np.float64)
    habsy_arr = np.empty(L + total, dtype=np.float64)
    habsx_arr[:L] = init_abs_mean
    habsy_arr[:L] = init_abs_mean
    cdef double[::1] x = x_arr
    cdef double[::1] y = y_arr
    cdef double[::1] habsx = habsx_arr
    cdef double[::1] habsy = habsy_arr
    cdef const double* w1p = &w1_rev[0]
    cdef const double* w2p = &w2_rev[0]
    cdef double* hxp = &habsx[0]
    cdef double* hyp = &habsy[0]
    cdef double cw = 1.0 - w
    cdef double sum_ax = init_abs_mean
    cdef double sum_ay = init_abs_mean
    cdef double cnt_x = 1.0
    cdef double cnt_y = 1.0
    cdef double comp_sum_x = 0.0
    cdef double comp_sum_y = 0.0
    cdef double out_sum_x = 0.0
    cdef double out_sum_y = 0.0
    cdef double mux, muy, sx, sy, cx, cy, xv, yv, m
    cdef Py_ssize_t t
    cdef Py_ssize_t fail_step = -1
    with nogil:
        for t in range(total):
            mux = sum_ax / cnt_x
            muy = sum_ay / cnt_y
            sx = _dot(w1p, hxp + t, L) / mux + tail_comp_1
            sy = _dot(w2p, hyp + t, L) / muy + tail_comp_2
            cx = w * sx + cw * sy
            cy = cw * sx + w * sy
            xv = cx * eps_x[t]
            yv = cy * eps_y[t]
            x[t] = xv
            y[t] = yv
            hxp[L + t] = fabs(xv)
            hyp[L + t] = fabs(yv)
            sum_ax = sum_ax + hxp[L + t]
            sum_ay = sum_ay + hyp[L + t]
            cnt_x = cnt_x + 1.0
            cnt_y = cnt_y + 1.0
            comp_sum_x = comp_sum_x + cx
            comp_sum_y = comp_sum_y + cy
            if t >= burn_in:
                out_sum_x = out_sum_x + cx
                out_sum_y = out_sum_y + cy
            if check_interval > 0 and (t + 1) % check_interval == 0:
                m = comp_sum_x / <double>(t + 1)
                if m < lo or m > hi:
                    fail_step = t
                    break
                m = comp_sum_y / <double>(t + 1)
                if m < lo or m > hi:
                    fail_step = t
                    break
    cdef double n_out = <double>(total - burn_in)
    return (x_arr[burn_in:].copy(), y_arr[burn_in:].copy(),
            out_sum_x / n_out, out_sum_y / n_out, fail_step)
