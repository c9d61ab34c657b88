"""Pure-Python twin of the compiled tracker in ``_kernel.pyx``.

Same algorithm, same signature, numpy arithmetic instead of C loops. Used
when the extension is unavailable or when EDTRANSFER_PURE_PYTHON is set.
"""

import numpy as np

STATUS_TRACKED = 0
STATUS_DIVERGED = 1
STATUS_FAILED = 2

IS_COMPILED = False


def _eval_packed(offsets, exps, coeffs, x, m):
    if exps.shape[0] == 0:
        return np.zeros(m, dtype=complex)
    monomials = coeffs * np.prod(x[None, :] ** exps, axis=1)
    if m == 1:
        return np.array([monomials.sum()])
    return np.add.reduceat(monomials, offsets[:-1])


def _hx(x, t, gamma, degrees, j_offsets, j_exps, j_coeffs, m):
    jac = _eval_packed(j_offsets, j_exps, j_coeffs, x, m * m).reshape(m, m)
    hx = t * jac
    hx[np.arange(m), np.arange(m)] += (1.0 - t) * gamma * degrees * x ** (degrees - 1)
    return hx


def track_path(x0, gamma, degrees, f_offsets, f_exps, f_coeffs,
               j_offsets, j_exps, j_coeffs, step_init, step_min,
               corrector_tol, divergence_bound, max_steps):
    m = len(x0)
    x = np.array(x0, dtype=complex)
    degrees = np.asarray(degrees)
    t = 0.0
    h = step_init
    steps = 0
    consecutive = 0

    # reduceat needs strictly valid start indices; empty polys cannot occur
    # here because every equation of a valid square system is nonzero.
    while t < 1.0 - 1e-14:
        if steps >= max_steps:
            return x, STATUS_FAILED
        steps += 1
        dt = min(h, 1.0 - t)

        fval = _eval_packed(f_offsets, f_exps, f_coeffs, x, m)
        gval = x**degrees - 1.0
        try:
            hx = _hx(x, t, gamma, degrees, j_offsets, j_exps, j_coeffs, m)
            dx = np.linalg.solve(hx, -(fval - gamma * gval))
        except np.linalg.LinAlgError:
            h *= 0.5
            consecutive = 0
            if h < step_min:
                return x, STATUS_DIVERGED
            continue
        xp = x + dt * dx

        ok = False
        for _ in range(3):
            fval = _eval_packed(f_offsets, f_exps, f_coeffs, xp, m)
            gval = xp**degrees - 1.0
            hval = (1.0 - (t + dt)) * gamma * gval + (t + dt) * fval
            try:
                hx = _hx(xp, t + dt, gamma, degrees, j_offsets, j_exps, j_coeffs, m)
                delta = np.linalg.solve(hx, -hval)
            except np.linalg.LinAlgError:
                break
            xp = xp + delta
            if np.linalg.norm(delta) < corrector_tol * max(1.0, np.linalg.norm(xp)):
                ok = True
                break

        if ok:
            x = xp
            t += dt
            consecutive += 1
            if consecutive >= 5:
                h = min(h * 2.0, step_init)
                consecutive = 0
        else:
            h *= 0.5
            consecutive = 0
            if h < step_min:
                return x, STATUS_DIVERGED

        if np.linalg.norm(x) > divergence_bound:
            return x, STATUS_DIVERGED

    return x, STATUS_TRACKED
