"""Independent brute-force oracle for CSC paths.

Builds CSC paths by searching over the first-arc angle with plain
kinematic stepping, never using the closed-form center/tangent formulas
of the library.  Slow but trustworthy; used to freeze expected values and
to cross-check constructions on random instances.
"""

import math

TWO_PI = 2.0 * math.pi


def wrap_pi(a):
    b = a % TWO_PI
    return b - TWO_PI if b > math.pi else b


def step_arc(pose, turn, phi, r):
    """Advance a pose along a circular arc (closed-form kinematics)."""
    x, y, th = pose
    if turn == "L":
        ox, oy = x - r * math.sin(th), y + r * math.cos(th)
        t2 = th + phi
        return (ox + r * math.sin(t2), oy - r * math.cos(t2), t2)
    ox, oy = x + r * math.sin(th), y - r * math.cos(th)
    t2 = th - phi
    return (ox - r * math.sin(t2), oy + r * math.cos(t2), t2)


def step_line(pose, s):
    x, y, th = pose
    return (x + s * math.cos(th), y + s * math.sin(th), th)


def _arc_back(pose, turn, phi, r):
    """Undo a final arc: the pose that reaches ``pose`` after the arc."""
    x, y, th = pose
    if turn == "L":
        ox, oy = x - r * math.sin(th), y + r * math.cos(th)
        t0 = th - phi
        return (ox + r * math.sin(t0), oy - r * math.cos(t0), t0)
    ox, oy = x + r * math.sin(th), y - r * math.cos(th)
    t0 = th + phi
    return (ox - r * math.sin(t0), oy + r * math.cos(t0), t0)


def _phi2_for(ptype, dtheta, phi1):
    """Second-arc angle forced by the net heading change."""
    signs = {"L": 1.0, "R": -1.0}
    s1, s2 = signs[ptype[0]], signs[ptype[2]]
    return (s2 * (dtheta - s1 * phi1)) % TWO_PI


def _mismatch(ptype, start, goal, r, phi1):
    """Angle between the required straight direction and the actual one.

    Zero exactly when (phi1, straight, phi2) closes the path.  Returns
    None when the straight segment would be degenerate.
    """
    dtheta = goal[2] - start[2]
    phi2 = _phi2_for(ptype, dtheta, phi1)
    p1 = step_arc(start, ptype[0], phi1, r)
    q = _arc_back(goal, ptype[2], phi2, r)
    vx, vy = q[0] - p1[0], q[1] - p1[1]
    if math.hypot(vx, vy) < 1e-12 * r:
        return None
    return wrap_pi(math.atan2(vy, vx) - p1[2])


def csc_by_search(start, goal, r, ptype, n=4096, iters=80):
    """All CSC paths of ``ptype`` between two poses, found by search.

    Scans phi1 over [0, 2*pi), brackets sign changes of the direction
    mismatch, and bisects.  Returns a list of (phi1, ls, phi2, length)
    tuples sorted by length; empty if the type is infeasible.
    """
    vals = []
    for k in range(n + 1):
        phi1 = TWO_PI * k / n
        vals.append((phi1, _mismatch(ptype, start, goal, r, phi1)))
    sols = []
    for (a, fa), (b, fb) in zip(vals, vals[1:]):
        if fa is None or fb is None:
            continue
        if fa == 0.0:
            sols.append(a)
            continue
        if fa * fb < 0.0 and abs(fa) < 1.5 and abs(fb) < 1.5:
            lo, hi, flo = a, b, fa
            for _ in range(iters):
                mid = 0.5 * (lo + hi)
                fm = _mismatch(ptype, start, goal, r, mid)
                if fm is None:
                    break
                if flo * fm <= 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            sols.append(0.5 * (lo + hi))
    out = []
    for phi1 in sols:
        dtheta = goal[2] - start[2]
        phi2 = _phi2_for(ptype, dtheta, phi1)
        p1 = step_arc(start, ptype[0], phi1, r)
        q = _arc_back(goal, ptype[2], phi2, r)
        ls = math.hypot(q[0] - p1[0], q[1] - p1[1])
        # verify the closure before accepting
        end = step_arc(step_line(p1, ls), ptype[2], phi2, r)
        err = math.hypot(end[0] - goal[0], end[1] - goal[1])
        if err < 1e-6 * max(r, ls):
            out.append((phi1 % TWO_PI, ls, phi2, ls + r * (phi1 % TWO_PI + phi2)))
    out.sort(key=lambda t: t[3])
    return out


def circle_goal(center, r, direction, alpha):
    """Pose on the target circle at angle ``alpha`` with tangential heading."""
    cx, cy = center
    x = cx + r * math.cos(alpha)
    y = cy + r * math.sin(alpha)
    th = alpha - math.pi / 2 if direction == "cw" else alpha + math.pi / 2
    return (x, y, th % TWO_PI)


def length_on_circle(start, center, r, direction, ptype, alpha, n=512):
    """Length of the requested CSC path to the circle point at ``alpha``.

    Returns None when the type is infeasible there.
    """
    goal = circle_goal(center, r, direction, alpha)
    sols = csc_by_search(start, goal, r, ptype, n=n)
    if not sols:
        return None
    return sols[0][3]


def min_on_circle(start, center, r, direction, ptype, n_alpha=2048, shrink=40):
    """Grid-plus-refinement minimum of the circle-goal length function.

    Golden-section refinement on the best grid bracket; robust to kinks.
    Returns (alpha, length).
    """
    best_k, best_len = None, math.inf
    grid = [TWO_PI * k / n_alpha for k in range(n_alpha)]
    lens = [length_on_circle(start, center, r, direction, ptype, a) for a in grid]
    for k, L in enumerate(lens):
        if L is not None and L < best_len:
            best_k, best_len = k, L
    if best_k is None:
        return None
    lo = grid[best_k] - TWO_PI / n_alpha
    hi = grid[best_k] + TWO_PI / n_alpha

    def f(a):
        L = length_on_circle(start, center, r, direction, ptype, a)
        return math.inf if L is None else L

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(shrink):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    a = 0.5 * (lo + hi)
    return a % TWO_PI, f(a)
