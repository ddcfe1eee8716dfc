"""Compiled inner loops: spanning-tree selection and the SVM dual solver."""

import numpy as np
from numba import njit


@njit(cache=False, nogil=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=False, nogil=True)
def kruskal_tree_mask(order, iu, ju, node_count):
    """Mark the edges greedily accepted in `order`; returns a mask over edges."""
    parent = np.arange(node_count)
    rank = np.zeros(node_count, np.int64)
    mask = np.zeros(order.size, np.bool_)
    picked = 0
    for t in range(order.size):
        e = order[t]
        ra = _find(parent, iu[e])
        rb = _find(parent, ju[e])
        if ra == rb:
            continue
        if rank[ra] < rank[rb]:
            parent[ra] = rb
        elif rank[rb] < rank[ra]:
            parent[rb] = ra
        else:
            parent[rb] = ra
            rank[ra] += 1
        mask[e] = True
        picked += 1
        if picked == node_count - 1:
            break
    return mask


@njit(cache=False, nogil=True)
def smo_hinge(kernel, y, c, tol, max_epochs):
    """Sequential minimal optimization for the soft-margin SVM dual.

    Minimizes 0.5 a'Qa - e'a with Q_st = y_s y_t kernel_st subject to
    y'a = 0 and 0 <= a <= c, via pairwise updates along the constraint with
    second-order working-set selection. Stops when the maximal KKT violation
    gap drops below tol or after max_epochs blocks of n iterations.

    Returns (alpha, bias, history) where history holds the dual objective at
    the end of each iteration block and at termination; it is non-increasing.
    """
    n = y.size
    TAU = 1e-12
    alpha = np.zeros(n)
    grad = -np.ones(n)
    history = np.empty(max_epochs + 1)
    n_hist = 0
    iterations = 0
    max_iter = max_epochs * n
    while iterations < max_iter:
        # i: maximal ascent candidate among coordinates free to move up.
        gmax = -1e300
        i = -1
        for t in range(n):
            if (y[t] > 0.0 and alpha[t] < c) or (y[t] < 0.0 and alpha[t] > 0.0):
                v = -y[t] * grad[t]
                if v > gmax:
                    gmax = v
                    i = t
        # j: best second-order gain among coordinates free to move down.
        gmin = 1e300
        j = -1
        best_gain = -1.0
        for t in range(n):
            if (y[t] > 0.0 and alpha[t] > 0.0) or (y[t] < 0.0 and alpha[t] < c):
                v = -y[t] * grad[t]
                if v < gmin:
                    gmin = v
                diff = gmax - v
                if diff > 0.0:
                    quad = kernel[i, i] + kernel[t, t] - 2.0 * kernel[i, t]
                    if quad < TAU:
                        quad = TAU
                    gain = diff * diff / quad
                    if gain > best_gain:
                        best_gain = gain
                        j = t
        if i < 0 or j < 0 or gmax - gmin < tol:
            break
        quad = kernel[i, i] + kernel[j, j] - 2.0 * kernel[i, j]
        if quad < TAU:
            quad = TAU
        vj = -y[j] * grad[j]
        step = (gmax - vj) / quad
        # Clip the step so both coordinates stay inside [0, c].
        if y[i] > 0.0:
            if step > c - alpha[i]:
                step = c - alpha[i]
        else:
            if step > alpha[i]:
                step = alpha[i]
        if y[j] > 0.0:
            if step > alpha[j]:
                step = alpha[j]
        else:
            if step > c - alpha[j]:
                step = c - alpha[j]
        d_i = y[i] * step
        d_j = -y[j] * step
        alpha[i] += d_i
        alpha[j] += d_j
        ci = d_i * y[i]
        cj = d_j * y[j]
        for t in range(n):
            grad[t] += y[t] * (ci * kernel[i, t] + cj * kernel[j, t])
        iterations += 1
        if iterations % n == 0:
            history[n_hist] = 0.5 * (np.dot(alpha, grad) - alpha.sum())
            n_hist += 1
    history[n_hist] = 0.5 * (np.dot(alpha, grad) - alpha.sum())
    n_hist += 1
    # Bias from the KKT bounds (midpoint of the violation interval).
    gmax = -1e300
    gmin = 1e300
    for t in range(n):
        v = -y[t] * grad[t]
        if (y[t] > 0.0 and alpha[t] < c) or (y[t] < 0.0 and alpha[t] > 0.0):
            if v > gmax:
                gmax = v
        if (y[t] > 0.0 and alpha[t] > 0.0) or (y[t] < 0.0 and alpha[t] < c):
            if v < gmin:
                gmin = v
    if gmax == -1e300 and gmin == 1e300:
        bias = 0.0
    elif gmax == -1e300:
        bias = gmin
    elif gmin == 1e300:
        bias = gmax
    else:
        bias = (gmax + gmin) / 2.0
    return alpha, bias, history[:n_hist].copy()
