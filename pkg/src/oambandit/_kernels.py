"""Jitted numerical core shared by the public modules.

Everything here is a plain function of float64 arrays so that the per-step
hot path of a trial (softmax probabilities, phase optimization, joint
outcome matrix, post-selected sampling) runs at compiled speed.  The public
modules wrap these kernels with validation and dataclass types; tests
exercise the wrappers.
"""

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi


@njit(cache=True)
def top_two_softmax(mu_hat, beta):
    """Probability that each arm ranks in the top two under Gumbel noise.

    p_n = 1/2 * s_n * (1 + sum_{j != n} e_j / (S - e_j)) with s_n the
    softmax weight of arm n.  Evaluated in the log domain so that huge
    beta * mu_hat spreads (up to ~1e3) neither overflow nor produce NaN:
    every exponential below has a nonpositive argument.
    """
    n_arms = mu_hat.size
    x = np.empty(n_arms)
    xmax = -np.inf
    for i in range(n_arms):
        v = beta * mu_hat[i]
        x[i] = v
        if v > xmax:
            xmax = v
    s = 0.0
    for i in range(n_arms):
        x[i] -= xmax
        s += np.exp(x[i])
    log_total = np.log(s)

    # log of the exponential sum with arm j removed
    log_excl = np.empty(n_arms)
    for j in range(n_arms):
        m = -np.inf
        for k in range(n_arms):
            if k != j and x[k] > m:
                m = x[k]
        acc = 0.0
        for k in range(n_arms):
            if k != j:
                acc += np.exp(x[k] - m)
        log_excl[j] = m + np.log(acc)

    p = np.empty(n_arms)
    for n in range(n_arms):
        acc = np.exp(x[n] - log_total)
        for j in range(n_arms):
            if j != n:
                # s_j * e_n / (S - e_j), grouped so both factors are <= 1
                acc += np.exp(x[j] - log_total) * np.exp(x[n] - log_excl[j])
        p[n] = 0.5 * acc
    return p


@njit(cache=True)
def phase_objective_grad(p, omega, grad):
    """Squared modulus of sum_n p_n e^{i omega_n} and its gradient in place."""
    cr = 0.0
    ci = 0.0
    for i in range(p.size):
        cr += p[i] * np.cos(omega[i])
        ci += p[i] * np.sin(omega[i])
    for i in range(p.size):
        grad[i] = 2.0 * p[i] * (ci * np.cos(omega[i]) - cr * np.sin(omega[i]))
    return cr * cr + ci * ci


@njit(cache=True)
def phase_objective_grad_hess(p, omega, grad, hess):
    """Objective, gradient, and analytic Hessian of the phase objective."""
    n = p.size
    cr = 0.0
    ci = 0.0
    for i in range(n):
        cr += p[i] * np.cos(omega[i])
        ci += p[i] * np.sin(omega[i])
    f = cr * cr + ci * ci
    for i in range(n):
        cwi = np.cos(omega[i])
        swi = np.sin(omega[i])
        grad[i] = 2.0 * p[i] * (ci * cwi - cr * swi)
        for j in range(n):
            hess[i, j] = 2.0 * p[i] * p[j] * (
                cwi * np.cos(omega[j]) + swi * np.sin(omega[j])
            )
        hess[i, i] -= 2.0 * p[i] * (cr * cwi + ci * swi)
    return f


@njit(cache=True)
def _cholesky_solve(a, b, out):
    """Solve a x = -b for symmetric a via Cholesky; False when not PD."""
    n = b.size
    L = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s = a[i, j]
            for k in range(j):
                s -= L[i, k] * L[j, k]
            if i == j:
                if s <= 1e-300:
                    return False
                L[i, i] = np.sqrt(s)
            else:
                L[i, j] = s / L[j, j]
    # forward then backward substitution on -b
    y = np.empty(n)
    for i in range(n):
        s = -b[i]
        for k in range(i):
            s -= L[i, k] * y[k]
        y[i] = s / L[i, i]
    for i in range(n - 1, -1, -1):
        s = y[i]
        for k in range(i + 1, n):
            s -= L[k, i] * out[k]
        out[i] = s / L[i, i]
    return True


# Fixed step of the descent phase.  The objective's gradient is Lipschitz
# with constant at most 2 for any weight vector on the simplex, so 0.1 is
# well inside the monotone-descent regime and small enough to track the
# continuous flow closely.
FLOW_STEP = 0.1
# Gradient infinity-norm below which curvature information takes over.
NEWTON_SWITCH = 0.01
# Shallow valleys can make the descent phase crawl; hand over to Newton
# after this many flow iterations regardless of the gradient norm.
FLOW_ITER_CAP = 200


@njit(cache=True)
def minimize_phases(p, omega0, tol_grad, tol_f, max_iter):
    """Minimize the phase objective from a fixed start.

    Returns (omega, objective, iterations, converged).  Two phases: short
    damped gradient steps first, then damped Newton with the analytic
    Hessian.  The gradient phase tracks the continuous descent flow, which
    keeps the mapping from weights to solution effectively continuous; this
    matters because two players with nearly equal weights must land on
    compatible solutions for the averaged phases to stay anti-bunching.
    Both phases are monotone in the objective.
    """
    n = omega0.size
    w = omega0.copy()
    g = np.empty(n)
    H = np.empty((n, n))
    f = phase_objective_grad(p, w, g)
    it = 0
    converged = False

    # phase 1: follow the gradient flow until the local basin is reached
    while True:
        gn = 0.0
        for i in range(n):
            if abs(g[i]) > gn:
                gn = abs(g[i])
        if gn < tol_grad:
            return w, f, it, True
        if gn < NEWTON_SWITCH or it >= FLOW_ITER_CAP:
            break
        if it >= max_iter:
            return w, f, it, False
        it += 1
        for i in range(n):
            w[i] -= FLOW_STEP * g[i]
        f_new = phase_objective_grad(p, w, g)
        if f - f_new < 1e-15:
            break  # plateau: let curvature take over
        f = f_new
    f = phase_objective_grad_hess(p, w, g, H)

    # phase 2: damped Newton with a step-size cap.  The cap matters: near
    # uniform weights the Hessian is close to singular, and an undamped step
    # would fly far along the flat directions, landing players with similar
    # weights on incompatible solutions.
    mu = 1e-6
    g_new = np.empty(n)
    H_new = np.empty((n, n))
    d = np.empty(n)
    while it < max_iter:
        gn = 0.0
        for i in range(n):
            if abs(g[i]) > gn:
                gn = abs(g[i])
        if gn < tol_grad:
            converged = True
            break
        it += 1
        accepted = False
        f_try = f
        for _ in range(50):
            A = H.copy()
            for k in range(n):
                A[k, k] += mu
            if _cholesky_solve(A, g, d):
                dnorm = 0.0
                for i in range(n):
                    dnorm += d[i] * d[i]
                if dnorm <= 1.0:
                    w_try = w + d
                    f_try = phase_objective_grad_hess(p, w_try, g_new, H_new)
                    if f_try <= f:
                        accepted = True
                        break
            mu *= 10.0
            if mu > 1e14:
                break
        if not accepted:
            converged = True  # no downhill step exists at this scale
            break
        df = f - f_try
        w = w_try
        f = f_try
        for i in range(n):
            g[i] = g_new[i]
            for j in range(n):
                H[i, j] = H_new[i, j]
        mu = max(mu * 0.25, 1e-12)
        if df < tol_f:
            converged = True
            break
    if not converged:
        gn = 0.0
        for i in range(n):
            if abs(g[i]) > gn:
                gn = abs(g[i])
        converged = gn < tol_grad
    return w, f, it, converged


@njit(cache=True)
def spiral_phases(n_arms):
    """Evenly wound initial phase-difference vector 2*(n-1)*pi/N."""
    out = np.empty(n_arms)
    for i in range(n_arms):
        out[i] = TWO_PI * i / n_arms
    return out


@njit(cache=True)
def joint_pair_probs(amp1, theta1, amp2, theta2):
    """Post-selected joint outcome matrix of the two-photon interference.

    Entry (i, j) is the probability that player 1 reads arm i+1 and player 2
    reads arm j+1, NOT conditioned on separation.  Computed from the
    determinant form |c1_i c2_j - c1_j c2_i|^2 / 4, which is exactly zero on
    the diagonal, so same-arm outcomes never occur.
    """
    n = amp1.size
    c1r = np.empty(n)
    c1i = np.empty(n)
    c2r = np.empty(n)
    c2i = np.empty(n)
    for k in range(n):
        c1r[k] = amp1[k] * np.cos(theta1[k])
        c1i[k] = amp1[k] * np.sin(theta1[k])
        c2r[k] = amp2[k] * np.cos(theta2[k])
        c2i[k] = amp2[k] * np.sin(theta2[k])
    probs = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ar = c1r[i] * c2r[j] - c1i[i] * c2i[j] - (c1r[j] * c2r[i] - c1i[j] * c2i[i])
            ai = c1r[i] * c2i[j] + c1i[i] * c2r[j] - (c1r[j] * c2i[i] + c1i[j] * c2r[i])
            probs[i, j] = 0.25 * (ar * ar + ai * ai)
    return probs


@njit(cache=True)
def state_overlap_sq(amp1, theta1, amp2, theta2):
    """|<state1|state2-reflected>|^2 given amplitudes and phases."""
    re = 0.0
    im = 0.0
    for k in range(amp1.size):
        w = theta2[k] - theta1[k]
        a = amp1[k] * amp2[k]
        re += a * np.cos(w)
        im += a * np.sin(w)
    return re * re + im * im


@njit(cache=True)
def row_marginals(probs):
    n = probs.shape[0]
    out = np.zeros(n)
    for i in range(n):
        for j in range(n):
            out[i] += probs[i, j]
    return out


@njit(cache=True)
def matrix_total(probs):
    n = probs.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            s += probs[i, j]
    return s


@njit(cache=True)
def sample_pair(probs, u):
    """Draw (row, col) from an unnormalized matrix using one uniform u."""
    n = probs.shape[0]
    total = matrix_total(probs)
    target = u * total
    acc = 0.0
    for i in range(n):
        for j in range(n):
            acc += probs[i, j]
            if acc >= target and probs[i, j] > 0.0:
                return i, j
    # numerical tail: return the last nonzero entry
    for i in range(n - 1, -1, -1):
        for j in range(n - 1, -1, -1):
            if probs[i, j] > 0.0:
                return i, j
    return 0, 0


@njit(cache=True)
def attenuator_pair_probs(p1, p2):
    """Pair-selection matrix of the attenuator method.

    Entry (i, j) proportional to p1_i * p2_j * sin^2((j - i) * pi / N),
    normalized to sum 1.  The sin^2 factor makes the diagonal exactly zero.
    """
    n = p1.size
    probs = np.zeros((n, n))
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s = np.sin((j - i) * np.pi / n)
            v = p1[i] * p2[j] * s * s
            probs[i, j] = v
            total += v
    if total > 0.0:
        for i in range(n):
            for j in range(n):
                probs[i, j] /= total
    return probs, total


@njit(cache=True)
def win_rates(wins, losses):
    """Per-arm win rate plus a flag for whether every arm has been pulled."""
    n = wins.size
    means = np.zeros(n)
    all_seen = True
    for i in range(n):
        pulls = wins[i] + losses[i]
        if pulls > 0:
            means[i] = wins[i] / pulls
        else:
            all_seen = False
    return means, all_seen


@njit(cache=True)
def geometric_draw(u, p):
    """Number of Bernoulli(p) attempts up to and including the first success."""
    if p >= 1.0:
        return 1
    # inverse CDF of the geometric distribution on {1, 2, ...}
    k = int(np.ceil(np.log1p(-u) / np.log1p(-p)))
    if k < 1:
        k = 1
    return k
