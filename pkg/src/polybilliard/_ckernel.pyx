# cython: language_level=3, boundscheck=False, wraparound=True
"""Compiled exact kernels for the unfolding searches.

Numbers are elements of Z[sqrt(d)] stored as pairs of Python ints.  A
homogeneous 3-vector is a flat 6-tuple ``(xa, xb, ya, yb, wa, wb)``; points
have ``wb == 0`` and ``wa > 0``.  An affine map is a 13-tuple
``(m11, m12, m21, m22, tx, ty)`` (each a pair) followed by a positive
integer denominator.

This is a typed port of ``_pykernel``; keep the two in step.  Integers stay
Python ints because coordinates outgrow 64 bits in deep corridors.
"""
import random
from math import gcd

IMPL = "cython"


from ._pykernel import CapExceeded


cpdef int sgn(object a, object b, object d):
    if b == 0:
        return (a > 0) - (a < 0)
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    diff = a * a - d * b * b
    if a > 0:
        return (diff > 0) - (diff < 0)
    return (diff < 0) - (diff > 0)


cpdef int dot_sign(tuple u, tuple v, object d):
    a = u[0] * v[0] + u[2] * v[2] + u[4] * v[4]
    b = u[0] * v[1] + u[1] * v[0] + u[2] * v[3] + u[3] * v[2] + u[4] * v[5] + u[5] * v[4]
    if d:
        a += d * (u[1] * v[1] + u[3] * v[3] + u[5] * v[5])
    return sgn(a, b, d)


cpdef tuple cross3(tuple u, tuple v, object d):
    xa, xb, ya, yb, za, zb = u
    pa, pb, qa, qb, ra, rb = v
    # (y r - z q, z p - x r, x q - y p)
    c0a = ya * ra - za * qa
    c0b = ya * rb + yb * ra - za * qb - zb * qa
    c1a = za * pa - xa * ra
    c1b = za * pb + zb * pa - xa * rb - xb * ra
    c2a = xa * qa - ya * pa
    c2b = xa * qb + xb * qa - ya * pb - yb * pa
    if d:
        c0a += d * (yb * rb - zb * qb)
        c1a += d * (zb * pb - xb * rb)
        c2a += d * (xb * qb - yb * pb)
    return (c0a, c0b, c1a, c1b, c2a, c2b)


cpdef tuple neg(tuple u):
    return (-u[0], -u[1], -u[2], -u[3], -u[4], -u[5])


cpdef tuple apply_map(tuple f, tuple p, object d):
    m11a, m11b, m12a, m12b, m21a, m21b, m22a, m22b, txa, txb, tya, tyb, den = f
    xa, xb, ya, yb, w, _ = p
    nxa = m11a * xa + m12a * ya + txa * w
    nxb = m11a * xb + m11b * xa + m12a * yb + m12b * ya + txb * w
    nya = m21a * xa + m22a * ya + tya * w
    nyb = m21a * xb + m21b * xa + m22a * yb + m22b * ya + tyb * w
    if d:
        nxa += d * (m11b * xb + m12b * yb)
        nya += d * (m21b * xb + m22b * yb)
    return (nxa, nxb, nya, nyb, den * w, 0)


def _mul(a, b, c, e, d):
    return a * c + d * b * e, a * e + b * c


def compose(f, g, d):
    """``f o g`` as an integer map, reduced by the common content."""
    fa = f
    ga = g
    f11, f12, f21, f22 = (fa[0], fa[1]), (fa[2], fa[3]), (fa[4], fa[5]), (fa[6], fa[7])
    g11, g12, g21, g22 = (ga[0], ga[1]), (ga[2], ga[3]), (ga[4], ga[5]), (ga[6], ga[7])
    ftx, fty, fd = (fa[8], fa[9]), (fa[10], fa[11]), fa[12]
    gtx, gty, gd = (ga[8], ga[9]), (ga[10], ga[11]), ga[12]

    def mul(p, q):
        return _mul(p[0], p[1], q[0], q[1], d)

    def add(p, q):
        return p[0] + q[0], p[1] + q[1]

    m11 = add(mul(f11, g11), mul(f12, g21))
    m12 = add(mul(f11, g12), mul(f12, g22))
    m21 = add(mul(f21, g11), mul(f22, g21))
    m22 = add(mul(f21, g12), mul(f22, g22))
    tx = add(add(mul(f11, gtx), mul(f12, gty)), (ftx[0] * gd, ftx[1] * gd))
    ty = add(add(mul(f21, gtx), mul(f22, gty)), (fty[0] * gd, fty[1] * gd))
    out = [*m11, *m12, *m21, *m22, *tx, *ty, fd * gd]
    g_all = 0
    for v in out:
        g_all = gcd(g_all, v)
        if g_all == 1:
            break
    if g_all > 1:
        out = [v // g_all for v in out]
    return tuple(out)


def map_det_positive(f, d):
    """True if the linear part of ``f`` preserves orientation."""
    m11a, m11b, m12a, m12b, m21a, m21b, m22a, m22b = f[:8]
    a, b = _mul(m11a, m11b, m22a, m22b, d)
    c, e = _mul(m12a, m12b, m21a, m21b, d)
    return sgn(a - c, b - e, d) > 0


# -- window: a pointed polyhedral cone of separating lines --------------------
#
# A line a*x + b*y + c = 0 is the vector h = (a, b, c).  Left endpoints l
# need <h, l> > 0 and right endpoints r need <h, r> < 0, i.e. <h, -r> > 0.
# The closed cone of admissible h is kept as a cyclic list of faces
# (constraint vectors); vertex i is the ray faces[i] x faces[i+1].  The open
# window is nonempty iff the closed cone has interior.


cpdef tuple _orient_ray(tuple v, tuple g, object d):
    return v if dot_sign(v, g, d) > 0 else neg(v)


def window_init(constraints, d):
    """Cone from the first constraints; None if they do not span R^3."""
    cs = []
    for c in constraints:
        if c not in cs:
            cs.append(c)
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            cij = cross3(cs[i], cs[j], d)
            for k in range(j + 1, len(cs)):
                det = dot_sign(cij, cs[k], d)
                if det != 0:
                    faces = [cs[i], cs[j], cs[k]]
                    g = tuple(cs[i][t] + cs[j][t] + cs[k][t] for t in range(6))
                    verts = [
                        _orient_ray(cross3(faces[t], faces[(t + 1) % 3], d), g, d)
                        for t in range(3)
                    ]
                    win = (faces, verts, g)
                    for c in cs:
                        if c is cs[i] or c is cs[j] or c is cs[k]:
                            continue
                        win = window_clip(win, c, d)
                        if win is None:
                            return None
                    return win
    return None


def window_clip(win, tuple u, object d):
    """Intersect the window with <h, u> > 0; None when it becomes empty."""
    cdef Py_ssize_t m, i, k, start, end
    cdef bint has_pos, has_neg
    faces, verts, g = win
    m = len(verts)
    s = [dot_sign(v, u, d) for v in verts]
    has_pos = False
    has_neg = False
    for x in s:
        if x > 0:
            has_pos = True
        elif x < 0:
            has_neg = True
    if not has_pos:
        return None
    if not has_neg:
        return win
    # non-positive vertices form one cyclic run start..end
    start = end = -1
    for i in range(m):
        if s[i] <= 0 and s[i - 1] > 0:
            start = i
        if s[i] <= 0 and s[(i + 1) % m] > 0:
            end = i
    # face k spans vertices k-1 and k; drop faces start+1..end
    new_faces = []
    new_verts = []
    k = (end + 1) % m
    while True:
        new_faces.append(faces[k])
        if k == start:
            break
        new_verts.append(verts[k])
        k = (k + 1) % m
    fa = faces[start]
    fb = faces[(end + 1) % m]
    new_verts.append(_orient_ray(cross3(fa, u, d), g, d))
    new_faces.append(u)
    new_verts.append(_orient_ray(cross3(u, fb, d), g, d))
    return (new_faces, new_verts, g)


def window_contains(win, line, d):
    """True if ``line`` (a 3-vector) lies strictly inside the window."""
    faces = win[0]
    return all(dot_sign(line, f, d) > 0 for f in faces)


# -- corridor geometry ---------------------------------------------------------


def _images(frame, verts, d):
    return [apply_map(frame, v, d) for v in verts]


def _segment(images, b, r, positive):
    """Left and right endpoints of edge ``b`` of a copy, seen by a line exiting it."""
    p = images[b]
    q = images[(b + 1) % r]
    return (q, p) if positive else (p, q)


class KPolygon:
    """Integer form of a polygon: homogeneous vertices and edge reflections."""

    def __init__(self, d, verts, reflections):
        self.d = d
        self.r = len(verts)
        self.verts = list(verts)
        self.refl = list(reflections)
        ident = (1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1)
        self.identity = ident


def corridor_window(kp, word):
    """Window of a word (sequence of edge labels), or None if infeasible."""
    d, r = kp.d, kp.r
    w0 = word[0]
    left0, right0 = kp.verts[w0], kp.verts[(w0 + 1) % r]
    cons = [left0, neg(right0)]
    if len(word) == 1:
        return cons
    frame = kp.identity
    positive = True
    images = kp.verts
    win = None
    for j in range(1, len(word)):
        b = word[j]
        if b == word[j - 1]:
            return None
        left, right = _segment(images, b, r, positive)
        if win is None:
            win = window_init(cons + [left, neg(right)], d)
        else:
            win = window_clip(win, left, d)
            if win is not None:
                win = window_clip(win, neg(right), d)
        if win is None:
            return None
        if j + 1 < len(word):
            frame = compose(frame, kp.refl[b], d)
            positive = not positive
            images = _images(frame, kp.verts, d)
    return win


def language(kp, n_max, store, cap, first=None):
    """DFS over feasible words up to length ``n_max``.

    Returns ``(counts, words)`` where ``counts[n]`` is p(n) for 1 <= n <=
    n_max (index 0 unused) and ``words[n]`` the lexicographically ordered
    list of words of length n when ``store`` is true.  ``first`` restricts
    the search to words starting with those letters.
    """
    d, r = kp.d, kp.r
    counts = [0] * (n_max + 1)
    words = [[] for _ in range(n_max + 1)] if store else None
    total = [0]

    def emit(word):
        n = len(word)
        counts[n] += 1
        total[0] += 1
        if total[0] > cap:
            raise CapExceeded(total[0])
        if store:
            words[n].append(word)

    def visit(word, frame, positive, images, win, prev_left, prev_right):
        # node for a feasible word; children extend it by one letter
        n = len(word)
        last = word[-1]
        for b in range(r):
            if b == last:
                continue
            left, right = _segment(images, b, r, positive)
            if win is None:
                child = window_init([prev_left, neg(prev_right), left, neg(right)], d)
            else:
                child = win
                if left != prev_left:
                    child = window_clip(child, left, d)
                if child is not None and right != prev_right:
                    child = window_clip(child, neg(right), d)
            if child is None:
                continue
            w = word + (b,)
            emit(w)
            if n + 1 < n_max:
                f = compose(frame, kp.refl[b], d)
                visit(w, f, not positive, _images(f, kp.verts, d), child, left, right)

    for w0 in (range(r) if first is None else first):
        word = (w0,)
        emit(word)
        if n_max > 1:
            # S_0 is entered, not exited: its left endpoint is vertex w0
            left0, right0 = kp.verts[w0], kp.verts[(w0 + 1) % r]
            visit(word, kp.identity, True, kp.verts, None, left0, right0)
    return counts, words


# -- generalized diagonals -----------------------------------------------------


cpdef tuple _vec(tuple a, tuple p, object pw):
    """Vector a - p scaled by the positive factor wa * wp (2D, Z[sqrt d])."""
    xa, xb, ya, yb, wa, _ = a
    return (xa * pw - p[0] * wa, xb * pw - p[1] * wa, ya * pw - p[2] * wa, yb * pw - p[3] * wa)


cpdef int cross2_sign(tuple u, tuple v, object d):
    a = u[0] * v[2] - u[2] * v[0]
    b = u[0] * v[3] + u[1] * v[2] - u[2] * v[1] - u[3] * v[0]
    if d:
        a += d * (u[1] * v[3] - u[3] * v[1])
    return sgn(a, b, d)


def _cone_cut(lo, hi, a, d):
    """Intersect the open cone (lo, hi) with {x: a x x > 0}."""
    c1 = cross2_sign(a, lo, d)
    c2 = cross2_sign(a, hi, d)
    if c1 >= 0 and c2 >= 0:
        return lo, hi
    if c1 <= 0 and c2 <= 0:
        return None
    if c1 < 0:
        return a, hi
    return lo, (-a[0], -a[1], -a[2], -a[3])


def diagonals_from(kp, start, max_links, cap, listing):
    """Generalized diagonals leaving vertex ``start`` with at most ``max_links`` links.

    Returns ``(exact, by_word, found)``: ``exact[j]`` counts diagonals with
    exactly j links, ``by_word`` maps a code (tuple) to its count, and
    ``found`` lists ``(word, end_vertex, end_point)`` when ``listing``.
    """
    d, r = kp.d, kp.r
    P = kp.verts[start]
    pw = P[4]
    exact = [0] * (max_links + 1)
    by_word = {}
    found = [] if listing else None
    nodes = [0]

    def record(word, i, pt):
        exact[len(word) + 1] += 1
        by_word[word] = by_word.get(word, 0) + 1
        if listing:
            found.append((word, i, pt))

    # one link: straight to a non-adjacent vertex
    for i in range(r):
        if i != start and i != (start + 1) % r and i != (start - 1) % r:
            record((), i, kp.verts[i])

    def visit(word, frame, positive, images, lo, hi):
        nodes[0] += 1
        if nodes[0] > cap:
            raise CapExceeded(nodes[0])
        k = len(word)
        last = word[-1]
        # end vertices of the current copy: those not on the crossed edge
        for i in range(r):
            if i == last or i == (last + 1) % r:
                continue
            e = _vec(images[i], P, pw)
            if cross2_sign(lo, e, d) > 0 and cross2_sign(e, hi, d) > 0:
                record(word, i, images[i])
        if k + 2 > max_links:
            return
        for b in range(r):
            if b == last:
                continue
            left, right = _segment(images, b, r, positive)
            cone = _cone_cut(lo, hi, _vec(right, P, pw), d)
            if cone is None:
                continue
            lv = _vec(left, P, pw)
            cone = _cone_cut(cone[0], cone[1], (-lv[0], -lv[1], -lv[2], -lv[3]), d)
            if cone is None:
                continue
            f = compose(frame, kp.refl[b], d)
            visit(word + (b,), f, not positive, _images(f, kp.verts, d), cone[0], cone[1])

    if max_links >= 2:
        for b in range(r):
            if b == start or b == (start - 1) % r:
                continue
            f = compose(kp.identity, kp.refl[b], d)
            left, right = _segment(kp.verts, b, r, True)
            lo = _vec(right, P, pw)
            hi = _vec(left, P, pw)
            if cross2_sign(lo, hi, d) <= 0:
                raise AssertionError("start vertex does not see the first edge")
            visit((b,), f, False, _images(f, kp.verts, d), lo, hi)
    return exact, by_word, found


def diagonal_ends(kp, start, word):
    """End vertices of the diagonals from ``start`` whose code is ``word``."""
    d, r = kp.d, kp.r
    P = kp.verts[start]
    pw = P[4]
    if not word:
        return [
            i for i in range(r)
            if i != start and i != (start + 1) % r and i != (start - 1) % r
        ]
    b = word[0]
    if b == start or b == (start - 1) % r:
        return []
    left, right = _segment(kp.verts, b, r, True)
    lo, hi = _vec(right, P, pw), _vec(left, P, pw)
    frame = compose(kp.identity, kp.refl[b], d)
    positive = False
    for j in range(1, len(word)):
        b = word[j]
        if b == word[j - 1]:
            return []
        images = _images(frame, kp.verts, d)
        left, right = _segment(images, b, r, positive)
        cone = _cone_cut(lo, hi, _vec(right, P, pw), d)
        if cone is None:
            return []
        lv = _vec(left, P, pw)
        cone = _cone_cut(cone[0], cone[1], (-lv[0], -lv[1], -lv[2], -lv[3]), d)
        if cone is None:
            return []
        lo, hi = cone
        frame = compose(frame, kp.refl[b], d)
        positive = not positive
    images = _images(frame, kp.verts, d)
    last = word[-1]
    ends = []
    for i in range(r):
        if i == last or i == (last + 1) % r:
            continue
        e = _vec(images[i], P, pw)
        if cross2_sign(lo, e, d) > 0 and cross2_sign(e, hi, d) > 0:
            ends.append(i)
    return ends


# -- trajectory sampling -------------------------------------------------------


def _reduce(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return v


def _normalize_point(h, d):
    """Scale a homogeneous point so its weight is a positive integer."""
    wa, wb = h[4], h[5]
    if wb != 0:
        # multiply by the conjugate of the weight
        ca, cb = wa, -wb
        out = []
        for t in range(0, 6, 2):
            a, b = _mul(h[t], h[t + 1], ca, cb, d)
            out += [a, b]
        h = tuple(out)
    if h[4] < 0:
        h = neg(h)
    return _reduce(h)


def sample(kp, n, trials, seed, dir_bound, pos_den):
    """Shoot ``trials`` exact billiard orbits and collect their length-n codes.

    Start points are uniform rational points on a uniform edge; directions
    are integer vectors with entries in [-dir_bound, dir_bound].  Orbits that
    hit a vertex are discarded and redrawn.
    """
    d, r = kp.d, kp.r
    rng = random.Random(seed)
    verts = kp.verts
    edge_lines = [cross3(verts[j], verts[(j + 1) % r], d) for j in range(r)]
    edge_dirs = [_vec(verts[(j + 1) % r], verts[j], verts[j][4]) for j in range(r)]
    words = set()
    done = 0
    vertex_hits = 0
    while done < trials:
        i = rng.randrange(r)
        t = rng.randint(1, pos_den - 1)
        p, q = verts[i], verts[(i + 1) % r]
        # x = p + t/pos_den (q - p), homogeneous with weight pos_den*wp*wq
        pw, qw = p[4], q[4]
        x = tuple(
            (pos_den - t) * p[c] * qw + t * q[c] * pw for c in range(4)
        ) + (pos_den * pw * qw, 0)
        x = _reduce(x)
        e = edge_dirs[i]
        while True:
            dx = rng.randint(-dir_bound, dir_bound)
            dy = rng.randint(-dir_bound, dir_bound)
            delta = (dx, 0, dy, 0)
            if cross2_sign(e, delta, d) > 0:
                break
        word = [i]
        cur = i
        ok = True
        while len(word) < n:
            line = cross3(x, delta + (0, 0), d)
            sides = [dot_sign(line, v, d) for v in verts]
            if 0 in sides:
                ok = False
                break
            nxt = -1
            for j in range(r):
                if j != cur and sides[j] < 0 < sides[(j + 1) % r]:
                    nxt = j
                    break
            if nxt < 0:
                raise AssertionError("trajectory left the polygon")
            x = _normalize_point(cross3(line, edge_lines[nxt], d), d)
            ed = edge_dirs[nxt]
            # delta' = 2 <delta, e> e - <e, e> delta
            da, db = _mul(delta[0], delta[1], ed[0], ed[1], d)
            ea, eb = _mul(delta[2], delta[3], ed[2], ed[3], d)
            dp = (2 * (da + ea), 2 * (db + eb))
            na, nb = _mul(ed[0], ed[1], ed[0], ed[1], d)
            ma, mb = _mul(ed[2], ed[3], ed[2], ed[3], d)
            ee = (na + ma, nb + mb)
            nd = []
            for c in range(0, 4, 2):
                pa, pb = _mul(dp[0], dp[1], ed[c], ed[c + 1], d)
                qa, qb = _mul(ee[0], ee[1], delta[c], delta[c + 1], d)
                nd += [pa - qa, pb - qb]
            delta = _reduce(tuple(nd))
            word.append(nxt)
            cur = nxt
        if not ok:
            vertex_hits += 1
            continue
        words.add(tuple(word))
        done += 1
    return words, vertex_hits
