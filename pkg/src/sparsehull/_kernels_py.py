"""Pure-NumPy inner loops for the greedy solver.

This is the reference backend; ``sparsehull._speedups`` is a compiled
drop-in replacement with the same call signatures and the same arithmetic
(max-abs prescaling, first-minimum tie breaking). Both are selected through
``sparsehull._kernels``.

All functions assume float64 inputs of the documented shapes and do no
validation; the public modules validate before calling in.
"""

from __future__ import annotations

import numpy as np


def vector_norm(u, p):
    """l_p norm of a 1-d vector, finite p >= 1; prescaled by max|u_i|."""
    m = float(np.abs(u).max())
    if m == 0.0:
        return 0.0
    w = np.abs(u) / m
    return m * float(np.sum(w**p)) ** (1.0 / p)


def norming_direction(u, p):
    """Unit-dual-norm functional u* of a nonzero u in l_p, 1 < p < inf.

    Components are sign(u_i) |u_i|^(p-1) / ||u||_p^(p-1), evaluated on the
    max-abs-rescaled vector so large or tiny coordinates cannot overflow.
    """
    m = float(np.abs(u).max())
    w = np.abs(u) / m
    s = float(np.sum(w**p))
    return np.sign(u) * w ** (p - 1.0) / s ** ((p - 1.0) / p)


def min_pairing(points, ustar):
    """Index and value of the minimum of <ustar, row> over rows of ``points``.

    Ties resolve to the lowest index (first occurrence of the minimum).
    """
    pairings = np.einsum("ij,j->i", points, ustar)
    idx = int(np.argmin(pairings))
    return idx, float(pairings[idx])


def greedy_iterate_into(points, p, K, tol, chosen, usums, unorms):
    """Run K greedy steps over one recentered candidate matrix.

    points : (n, d) candidates, already translated so the target is 0
    chosen : (K,) int64 out, usums : (K, d) out, unorms : (K,) out

    Returns (status, step, index, margin): status 0 on success with outputs
    filled for all K steps; status 1 if at 0-based ``step`` the minimum
    pairing ``margin`` (attained at ``index``) exceeded ``tol``, in which
    case outputs are filled only for steps before ``step``.
    """
    d = points.shape[1]
    u = np.zeros(d)
    for k in range(K):
        if float(np.abs(u).max()) == 0.0:
            idx, val = 0, 0.0
        else:
            idx, val = min_pairing(points, norming_direction(u, p))
            if val > tol:
                return 1, k, idx, val
        u += points[idx]
        chosen[k] = idx
        usums[k] = u
        unorms[k] = vector_norm(u, p)
    return 0, K, -1, 0.0
