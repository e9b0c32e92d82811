"""2D plan geometry and small 3D helpers used by the access calculations."""

from __future__ import annotations

import math

import numpy as np

EPS = 1e-9

Point2 = tuple[float, float]


def polygon_area(poly) -> float:
    pts = np.asarray(poly, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _on_segment(p, a, b, eps=EPS) -> bool:
    ax, ay = a; bx, by = b; px, py = p
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    seg_len = math.hypot(bx - ax, by - ay)
    if seg_len == 0.0:
        return math.hypot(px - ax, py - ay) <= eps
    if abs(cross) / seg_len > eps:
        return False
    dot = (px - ax) * (bx - ax) + (py - ay) * (by - ay)
    return -eps * seg_len <= dot <= seg_len * seg_len + eps * seg_len


def point_on_polygon_boundary(p, poly, eps=EPS) -> bool:
    n = len(poly)
    return any(_on_segment(p, poly[i], poly[(i + 1) % n], eps) for i in range(n))


def point_in_polygon(p, poly) -> bool:
    """Even-odd test; boundary points count as inside."""
    if point_on_polygon_boundary(p, poly):
        return True
    px, py = p
    inside = False
    n = len(poly)
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        if (ay > py) != (by > py):
            x_cross = ax + (py - ay) * (bx - ax) / (by - ay)
            if px < x_cross:
                inside = not inside
    return inside


def point_strictly_in_polygon(p, poly, eps=EPS) -> bool:
    return point_in_polygon(p, poly) and not point_on_polygon_boundary(p, poly, eps)


def _seg_seg_params(p, q, a, b):
    """t values along pq (0..1) where segment pq meets segment ab, incl. touches."""
    px, py = p; qx, qy = q; ax, ay = a; bx, by = b
    r = (qx - px, qy - py)
    s = (bx - ax, by - ay)
    denom = r[0] * s[1] - r[1] * s[0]
    qp = (ax - px, ay - py)
    if abs(denom) > EPS * max(1.0, abs(r[0]), abs(r[1]), abs(s[0]), abs(s[1])):
        t = (qp[0] * s[1] - qp[1] * s[0]) / denom
        u = (qp[0] * r[1] - qp[1] * r[0]) / denom
        if -EPS <= t <= 1 + EPS and -EPS <= u <= 1 + EPS:
            return [min(1.0, max(0.0, t))]
        return []
    # parallel: collinear overlap contributes its end parameters
    if abs(qp[0] * r[1] - qp[1] * r[0]) > EPS * max(1.0, abs(r[0]), abs(r[1])):
        return []
    rr = r[0] * r[0] + r[1] * r[1]
    if rr == 0.0:
        return []
    t0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
    t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
    lo, hi = min(t0, t1), max(t0, t1)
    if hi < -EPS or lo > 1 + EPS:
        return []
    return [min(1.0, max(0.0, lo)), min(1.0, max(0.0, hi))]


def _interval_midpoints(p, q, polys):
    """Midpoints of the sub-intervals of pq cut by all edges of the given polygons."""
    ts = {0.0, 1.0}
    for poly in polys:
        n = len(poly)
        for i in range(n):
            for t in _seg_seg_params(p, q, poly[i], poly[(i + 1) % n]):
                ts.add(t)
    ts = sorted(ts)
    px, py = p; qx, qy = q
    mids = []
    for t0, t1 in zip(ts, ts[1:]):
        if t1 - t0 > EPS:
            tm = 0.5 * (t0 + t1)
            mids.append((px + tm * (qx - px), py + tm * (qy - py)))
    return mids


def segment_crosses_polygon_interior(p, q, poly) -> bool:
    """True iff some open sub-interval of segment pq lies strictly inside poly."""
    mids = _interval_midpoints(p, q, [poly])
    return any(point_strictly_in_polygon(m, poly) for m in mids)


def segment_leaves_polygon(p, q, poly) -> bool:
    """True iff some open sub-interval of segment pq lies strictly outside poly."""
    mids = _interval_midpoints(p, q, [poly])
    return any(not point_in_polygon(m, poly) for m in mids)


def bearing_deg(origin: Point2, target: Point2) -> float:
    """Direction from origin to target, degrees CCW from +x, in [0, 360)."""
    ang = math.degrees(math.atan2(target[1] - origin[1], target[0] - origin[0]))
    return ang % 360.0


def bearing_separation_deg(b1: float, b2: float) -> float:
    """Smallest angle between two bearings, in [0, 180]."""
    d = abs(b1 - b2) % 360.0
    return min(d, 360.0 - d)


def angle_between_2d_deg(origin: Point2, a: Point2, b: Point2) -> float:
    """Angle at origin between rays toward a and b, in [0, 180]."""
    va = (a[0] - origin[0], a[1] - origin[1])
    vb = (b[0] - origin[0], b[1] - origin[1])
    cross = va[0] * vb[1] - va[1] * vb[0]
    dot = va[0] * vb[0] + va[1] * vb[1]
    return math.degrees(math.atan2(abs(cross), dot))


def triangle_solid_angle_sr(r1, r2, r3) -> float:
    # Van Oosterom & Strackee: tan(omega/2) from the triple product and pairwise dots
    n1, n2, n3 = (np.linalg.norm(r) for r in (r1, r2, r3))
    numer = abs(float(np.dot(r1, np.cross(r2, r3))))
    denom = n1 * n2 * n3 + float(np.dot(r1, r2)) * n3 + float(np.dot(r1, r3)) * n2 + float(np.dot(r2, r3)) * n1
    return 2.0 * math.atan2(numer, denom)


def rectangle_solid_angle_sr(eye, corners) -> float:
    """Solid angle of a planar quad (corners in ring order) seen from eye."""
    eye = np.asarray(eye, dtype=float)
    c = [np.asarray(p, dtype=float) - eye for p in corners]
    return triangle_solid_angle_sr(c[0], c[1], c[2]) + triangle_solid_angle_sr(c[0], c[2], c[3])
