"""Floating-point inner loops.

Everything here is written in the numba-compatible subset of Python and numpy
and decorated with :func:`centerkit._jit.jit`, so it compiles when numba is
present and runs unchanged (slowly) otherwise.  Lines are passed as four
parallel arrays ``A, B, C, N`` meaning ``l_k = A[k] x + B[k] y + C[k]`` with
multiplicity ``N[k]``.
"""
import numpy as np

from ._jit import jit


# ---------------------------------------------------------------- real plane


@jit
def log_abs_f(A, B, C, N, x, y):
    s = 0.0
    for k in range(A.shape[0]):
        s += N[k] * np.log(abs(A[k] * x + B[k] * y + C[k]))
    return s


@jit
def center_newton(A, B, C, N, x0, y0, tol, maxit):
    """Maximise ``sum n_k log|l_k|`` on the face containing ``(x0, y0)``.

    The function is strictly concave on a face, so damped Newton with a
    sign-preserving backtrack converges to the unique critical point.
    Returns ``(x, y, gradient_norm, iterations)``.
    """
    m = A.shape[0]
    sg = np.empty(m)
    for k in range(m):
        sg[k] = np.sign(A[k] * x0 + B[k] * y0 + C[k])
    x = x0
    y = y0
    gnorm = np.inf
    it = 0
    for it in range(maxit):
        gx = 0.0
        gy = 0.0
        hxx = 0.0
        hxy = 0.0
        hyy = 0.0
        for k in range(m):
            l = A[k] * x + B[k] * y + C[k]
            gx += N[k] * A[k] / l
            gy += N[k] * B[k] / l
            w = N[k] / (l * l)
            hxx -= w * A[k] * A[k]
            hxy -= w * A[k] * B[k]
            hyy -= w * B[k] * B[k]
        gnorm = np.sqrt(gx * gx + gy * gy)
        if gnorm < tol:
            break
        det = hxx * hyy - hxy * hxy
        dx = -(hyy * gx - hxy * gy) / det
        dy = -(-hxy * gx + hxx * gy) / det
        f0 = log_abs_f(A, B, C, N, x, y)
        lam = 1.0
        for _ in range(60):
            xn = x + lam * dx
            yn = y + lam * dy
            inside = True
            for k in range(m):
                if np.sign(A[k] * xn + B[k] * yn + C[k]) != sg[k]:
                    inside = False
                    break
            if inside and log_abs_f(A, B, C, N, xn, yn) >= f0 - 1e-14 * abs(f0):
                break
            lam *= 0.5
        x = x + lam * dx
        y = y + lam * dy
    return x, y, gnorm, it


# ---------------------------------------------------------------- complex fibre
#
# Points of C^2 are handled through the values of all the lines at them:
# ``L[k] = l_k(z)``.  Along a path ``L = L0 + s Ll + exp(c0 + s c1) Le + w
# (D0 + s D1)``; building these vectors from exact data keeps ``l_i``
# exactly zero on a real segment of ``l_i``, which plain coordinates do not.


@jit
def _fibre_residual(N, L, D, logt):
    """``(f/t - 1, d/dw of it)`` at line values ``L`` moving along ``D``."""
    s = 0j
    ds = 0j
    for k in range(N.shape[0]):
        s += N[k] * np.log(L[k])
        ds += N[k] * D[k] / L[k]
    r = np.exp(s - logt)
    return r - 1.0, r * ds


@jit
def fibre_newton(N, Lb, D, w, logt):
    """The ``w`` near the starting value with ``Lb + w D`` on ``f = t``."""
    for _ in range(50):
        F, dF = _fibre_residual(N, Lb + w * D, D, logt)
        step = F / dF
        w = w - step
        if abs(step) <= 1e-14 * abs(w):
            break
    return w


@jit
def trace_piece(N, L0, Ll, Le, c0, c1, D0, D1, s0, s1, w0, logt, nmin):
    """Continue a point of ``f = t`` along a moving complex line.

    Starting from ``w0`` at ``s0`` the root is followed to ``s1`` with steps
    no longer than ``(s1 - s0) / nmin``.  Returns ``(w, darg, status, steps)``
    where ``darg[k]`` is the total change of ``arg l_k``; ``status`` is 1 when
    the step size collapsed.
    """
    m = N.shape[0]
    darg = np.zeros(m)
    span = s1 - s0
    if span == 0.0:
        return w0, darg, 0, 0
    hmax = span / nmin
    h = hmax
    s = s0
    w = w0
    wprev = w0
    hprev = 0.0
    have_prev = False
    steps = 0
    Lcur = L0 + s * Ll + np.exp(c0 + s * c1) * Le + w * (D0 + s * D1)
    while (s1 - s) * np.sign(span) > 0.0:
        last = abs(h) >= abs(s1 - s)
        if last:
            h = s1 - s
        sn = s1 if last else s + h
        Lb = L0 + sn * Ll + np.exp(c0 + sn * c1) * Le
        D = D0 + sn * D1
        wn = w + (w - wprev) * (h / hprev) if have_prev else w
        conv = False
        for _ in range(12):
            F, dF = _fibre_residual(N, Lb + wn * D, D, logt)
            step = F / dF
            wn = wn - step
            if abs(step) <= 1e-12 * abs(wn):
                conv = True
                break
        ok = conv and abs(wn - w) <= 0.1 * abs(w)
        Lnew = Lb + wn * D
        if ok:
            for k in range(m):
                if abs(np.angle(Lnew[k] / Lcur[k])) > 0.2:
                    ok = False
                    break
        if not ok:
            h *= 0.5
            if abs(h) < 1e-12 * abs(span):
                return w, darg, 1, steps
            continue
        for k in range(m):
            darg[k] += np.angle(Lnew[k] / Lcur[k])
        Lcur = Lnew
        wprev = w
        hprev = h
        have_prev = True
        w = wn
        s = sn
        steps += 1
        h = h * 1.5
        if abs(h) > abs(hmax):
            h = hmax
    return w, darg, 0, steps


# ---------------------------------------------------------------- real ovals


@jit
def _phi_grad(A, B, C, N, x, y):
    """``log|f|`` and its gradient."""
    phi = 0.0
    gx = 0.0
    gy = 0.0
    for k in range(A.shape[0]):
        l = A[k] * x + B[k] * y + C[k]
        phi += N[k] * np.log(abs(l))
        gx += N[k] * A[k] / l
        gy += N[k] * B[k] / l
    return phi, gx, gy


@jit
def project_to_level(A, B, C, N, x, y, ux, uy, level):
    """Move from ``(x, y)`` along ``(ux, uy)`` onto ``log|f| = level``.

    Returns ``(s, status)`` with the point ``(x + s ux, y + s uy)``.
    """
    s = 0.0
    for _ in range(60):
        phi, gx, gy = _phi_grad(A, B, C, N, x + s * ux, y + s * uy)
        der = gx * ux + gy * uy
        if der == 0.0:
            return s, 1
        ds = (phi - level) / der
        s -= ds
        # near a center the gradient is small and ds stalls at noise level
        if abs(ds) <= 1e-15 * (1.0 + abs(s)) or abs(phi - level) <= 1e-14 * (1.0 + abs(level)):
            return s, 0
    return s, 1


@jit
def trace_level_loop(A, B, C, N, cx, cy, level, x0, y0, hmax, maxpts):
    """Anticlockwise closed level curve of ``log|f|`` around ``(cx, cy)``.

    Tangent predictor with a Newton corrector along the gradient.  The step
    is cut when the tangent turns by more than 0.05 rad or the corrector
    moves the point by more than a tenth of the step.  The last point
    returned coincides with the first.  ``status`` is 0 on success.
    """
    xs = np.empty(maxpts)
    ys = np.empty(maxpts)
    xs[0] = x0
    ys[0] = y0
    npts = 1
    x = x0
    y = y0
    a0 = np.arctan2(y0 - cy, x0 - cx)
    turned = 0.0
    h = hmax
    while npts < maxpts - 1:
        phi, gx, gy = _phi_grad(A, B, C, N, x, y)
        gn = np.sqrt(gx * gx + gy * gy)
        tx = gy / gn
        ty = -gx / gn
        accepted = False
        for _ in range(60):
            px = x + h * tx
            py = y + h * ty
            s, st = project_to_level(A, B, C, N, px, py, gx / gn, gy / gn, level)
            nx = px + s * gx / gn
            ny = py + s * gy / gn
            if st == 0 and abs(s) <= 0.1 * h:
                _, hx, hy = _phi_grad(A, B, C, N, nx, ny)
                hn = np.sqrt(hx * hx + hy * hy)
                cosang = (hx * gx + hy * gy) / (hn * gn)
                if cosang >= np.cos(0.05):
                    accepted = True
                    break
            h *= 0.5
        if not accepted:
            return xs, ys, npts, 1
        a1 = np.arctan2(ny - cy, nx - cx)
        da = a1 - np.arctan2(y - cy, x - cx)
        if da > np.pi:
            da -= 2.0 * np.pi
        elif da < -np.pi:
            da += 2.0 * np.pi
        if turned + da >= 2.0 * np.pi:
            # the start point is closer than a full step: close the loop
            xs[npts] = x0
            ys[npts] = y0
            npts += 1
            return xs, ys, npts, 0
        turned += da
        x = nx
        y = ny
        xs[npts] = x
        ys[npts] = y
        npts += 1
        h = min(h * 1.5, hmax)
    return xs, ys, npts, 2


@jit
def _eval_poly(ex, ey, c, x, y):
    s = 0.0
    for k in range(c.shape[0]):
        if c[k] != 0.0:
            s += c[k] * x ** ex[k] * y ** ey[k]
    return s


@jit
def arc_integral(A, B, C, ex, ey, pc, qc, N, xs, ys, npts, level, gx_nodes, gw, stride):
    """Integral of ``(P dy - Q dx) / prod l_k`` over the closed polyline.

    Every ``stride``-th vertex is used.  On each chord the Gauss nodes are
    pushed onto the level curve along the chord normal; the derivative of
    that parametrisation comes from implicit differentiation.  Returns the
    integral and the integral of ``|omega| |ds|``.
    """
    total = 0.0
    scale = 0.0
    k = 0
    while k < npts - 1:
        k2 = min(k + stride, npts - 1)
        x0 = xs[k]
        y0 = ys[k]
        cx = xs[k2] - x0
        cy = ys[k2] - y0
        ln = np.sqrt(cx * cx + cy * cy)
        ux = -cy / ln
        uy = cx / ln
        for g in range(gx_nodes.shape[0]):
            sg = gx_nodes[g]
            bx = x0 + sg * cx
            by = y0 + sg * cy
            off, st = project_to_level(A, B, C, N, bx, by, ux, uy, level)
            px = bx + off * ux
            py = by + off * uy
            _, gxx, gyy = _phi_grad(A, B, C, N, px, py)
            doff = -(gxx * cx + gyy * cy) / (gxx * ux + gyy * uy)
            vx = cx + doff * ux
            vy = cy + doff * uy
            den = 1.0
            for m in range(A.shape[0]):
                den *= A[m] * px + B[m] * py + C[m]
            pv = _eval_poly(ex, ey, pc, px, py) / den
            qv = _eval_poly(ex, ey, qc, px, py) / den
            total += gw[g] * (pv * vy - qv * vx)
            scale += gw[g] * np.sqrt(pv * pv + qv * qv) * np.sqrt(vx * vx + vy * vy)
        k = k2
    return total, scale
