# Copyright 2026 The twistlab Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values for the unit tests.

Plain Python with mpmath at 50 digits; no code shared with the library.
Run: python3 golden.py [name ...]
"""
import itertools
import math
import sys
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 50

T = mp.findroot(lambda x: x**3 - x - 1, 1.3247)
CUBIC = [T, T**2]  # 2x1 column


def nearest_dist(alpha, q, beta):
    """min_p |alpha q + beta + p| for a column alpha and scalar q."""
    d2 = 0
    p = []
    for a, b in zip(alpha, beta):
        v = a * q + b
        k = -mp.nint(v)
        p.append(int(k))
        d2 += (v + k) ** 2
    return mp.sqrt(d2), p


def h1(q):
    # m=2, n=1: (q log q)^{-1/2}
    q = mp.mpf(q)
    return (q * mp.log(q)) ** mp.mpf(-0.5)


def phi1(q):
    return h1(q) * mp.log(mp.log(q))


def approxfn():
    e = mp.e
    print("hardy_h1(e^e) =", mp.nstr((mp.exp(e) * e) ** -0.5, 20))
    q = mp.mpf(1024)
    print("capital hardy_phi1(1024) =", mp.nstr(mp.sqrt(q) * phi1(q), 20))
    s = mp.fsum(1 / (mp.mpf(k) * mp.log(k)) for k in range(3, 100001))
    print("series_partial hardy_h1 to 1e5 =", mp.nstr(s, 20))
    c = mp.fsum((mp.sqrt(mp.mpf(2) ** k) * phi1(mp.mpf(2) ** k)) ** 2 for k in range(3, 21))
    print("condensed_sum hardy_phi1 2^3..2^20 =", mp.nstr(c, 20))


def embeddings():
    Q = mp.mpf(4)
    v = [mp.sqrt(Q) * (CUBIC[0] - 1), mp.sqrt(Q) * (CUBIC[1] - 2), mp.mpf(1) / Q]
    print("embed Q=4 p=(-1,-2) q=1:", [mp.nstr(x, 20) for x in v])
    Q = mp.mpf(8)
    v = [1 / mp.sqrt(Q), mp.mpf(0), Q * (0 - CUBIC[0])]
    print("dual_embed Q=8 p=(1,0) q=0:", [mp.nstr(x, 20) for x in v])


def primal_points(Q, T_):
    """All (p, q, P, V) with |P| <= T_ and |V| <= T_ in Lambda_Q for cubic."""
    sq = mp.sqrt(Q)
    out = []
    for q in range(-int(T_ * Q), int(T_ * Q) + 1):
        ranges = []
        for a in CUBIC:
            c = -a * q
            ranges.append(range(int(mp.floor(c - T_ / sq)), int(mp.ceil(c + T_ / sq)) + 1))
        for p in itertools.product(*ranges):
            P = [sq * (a * q + pi) for a, pi in zip(CUBIC, p)]
            V = mp.mpf(q) / Q
            out.append((p, q, P, V))
    return out


def dual_points(Q, T_):
    isq = 1 / mp.sqrt(Q)
    R = int(T_ * mp.sqrt(Q)) + 1
    out = []
    for p in itertools.product(range(-R, R + 1), repeat=2):
        c = CUBIC[0] * p[0] + CUBIC[1] * p[1]
        for q in range(int(mp.floor(c - T_ / Q)), int(mp.ceil(c + T_ / Q)) + 1):
            P = [isq * p[0], isq * p[1]]
            V = Q * (q - c)
            out.append((p, q, P, V))
    return out


def norm(v):
    return mp.sqrt(mp.fsum(x * x for x in v))


def rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def minima(points, gauge, d=3):
    pts = sorted((gauge(P, V), list(p) + [q]) for p, q, P, V in points if any(p) or q)
    chosen, lam = [], []
    for g, v in pts:
        if rank(chosen + [v]) > len(chosen):
            chosen.append(v)
            lam.append(g)
            if len(lam) == d:
                break
    return lam


def lattice():
    Q = mp.mpf(256)
    pts = primal_points(Q, 1)
    count = sum(1 for p, q, P, V in pts if norm(P) <= 1 and abs(V) <= 1)
    print("points_in_region Q=256 R(1,1) primal count =", count)
    Q = mp.mpf(64)
    lam = minima(primal_points(Q, 4), lambda P, V: max(norm(P), abs(V)))
    print("minima Q=64 R(1,1) primal =", [mp.nstr(x, 17) for x in lam])
    lam = minima(dual_points(Q, 4), lambda P, V: norm(P) + abs(V))
    print("minima Q=64 polar dual =", [mp.nstr(x, 17) for x in lam])
    # Lambda_Q cap R(3 Psi, 2) = {0}, psi = h1
    Q = mp.mpf(1024)
    r = 3 * mp.sqrt(Q) * h1(Q)
    hits = [(p, q) for p, q, P, V in primal_points(Q, 2) if (any(p) or q) and norm(P) <= r and abs(V) <= 2]
    print("notpsiapprox Q=1024 h1:", not hits, hits[:3])
    # polar lattice cap R(2 Delta, 2 C1) = {0}
    Q = mp.mpf(256)
    inv_gamma = mp.mpf(0.5) - (1 - 2 * mp.mpf(0.25)) / 8
    Delta = mp.mpf(0.5) / mp.sqrt(Q) * (2 * 4 / Q) ** (-inv_gamma)
    hits = [(p, q) for p, q, P, V in dual_points(Q, 8)
            if (any(p) or q) and norm(P) <= 2 * Delta and abs(V) <= 8]
    print("assump1 Q=256 Delta=%s C1=4:" % mp.nstr(Delta, 17), not hits, hits[:3])


def approx():
    beta = [mp.mpf("0.3"), mp.mpf("0.7")]
    best = None
    for q in range(-10000, 10001):
        d, p = nearest_dist(CUBIC, q, beta)
        key = (d, abs(q), 0 if q > 0 else 1)
        if best is None or key < best[0]:
            best = (key, q, p)
    print("best_twisted beta=(0.3,0.7) Qmax=1e4: dist=%s q=%d p=%s" % (mp.nstr(best[0][0], 17), best[1], best[2]))
    sols = []
    for q in range(-10000, 10001):
        if abs(q) < 3:
            continue
        d, p = nearest_dist(CUBIC, q, beta)
        if d <= h1(abs(q)):
            sols.append((abs(q), q, p, d))
    sols.sort(key=lambda s: (s[0], -s[1]))
    print("solutions h1 Qmax=1e4:", [(s[1], s[2], mp.nstr(s[3], 12)) for s in sols])
    Q = 1024
    hit = any(nearest_dist(CUBIC, q, beta)[0] <= h1(Q) for q in range(-Q, Q + 1))
    print("in_A_psi_Q h1 Q=1024:", hit)
    # f(0.37) on the Veronese curve
    s = mp.mpf("0.37")
    hit = any(nearest_dist(CUBIC, q, [s, s * s])[0] <= h1(Q) for q in range(-Q, Q + 1))
    print("sq_contains s=0.37 h1 Q=1024:", hit)


def margin(Qmax=100000):
    best, arg = mp.inf, None
    for q in range(1, Qmax + 1):
        d, _ = nearest_dist(CUBIC, q, [0, 0])
        v = mp.sqrt(q) * d
        if v < best:
            best, arg = v, q
    print("bad_margin cubic Qmax=1e5: %s at q=%d; epsilon_estimate %s" % (
        mp.nstr(best, 17), arg, mp.nstr(mp.mpf("0.99") * best, 17)))
    return best


def omega(Qmax=100000):
    record = mp.inf
    trace = []
    for q in range(1, Qmax + 1):
        d, _ = nearest_dist(CUBIC, q, [0, 0])
        if d < record:
            record = d
            trace.append((q, d))
    tail = math.sqrt(Qmax)
    w = 0
    for k, (q, d) in enumerate(trace):
        if q <= 1 or (q < tail and k + 1 != len(trace)):
            continue
        w = max(w, mp.log(1 / d) / mp.log(q))
    print("omega_hat cubic Qmax=1e5 =", mp.nstr(w, 17), "records", len(trace))


def unique(eps):
    x = [mp.mpf("0.3"), mp.mpf("0.7")]
    Q = mp.mpf(256)
    r = eps / 2 / mp.sqrt(Q)
    hits = []
    for q in range(-128, 129):
        d, p = nearest_dist(CUBIC, q, x)
        if d <= r:
            hits.append((q, p, d))
    print("unique_pair x=(0.3,0.7) Q=256 eps=%s: %s" % (mp.nstr(eps, 10), hits))


def veronese_fp(s):
    return [mp.mpf(1), 2 * s]


def stilde(s, Q, c, psi_c, theta):
    """x-intervals in [-1,1] with |alpha q + p + f(s) + x theta f'(s)| <= c psi(Q), psi = psi_c q^{-1/2}."""
    r = c * psi_c / mp.sqrt(Q)
    f = [s, s * s]
    w = [theta * v for v in veronese_fp(s)]
    A = w[0] ** 2 + w[1] ** 2
    parts = []
    for q in range(-int(Q), int(Q) + 1):
        v0 = [a * q + fi for a, fi in zip(CUBIC, f)]
        ranges = [range(int(mp.floor(-v - abs(wi) - r)), int(mp.ceil(-v + abs(wi) + r)) + 1) for v, wi in zip(v0, w)]
        for p in itertools.product(*ranges):
            v = [a + pi for a, pi in zip(v0, p)]
            B = v[0] * w[0] + v[1] * w[1]
            C = v[0] ** 2 + v[1] ** 2 - r * r
            disc = B * B - A * C
            if disc < 0:
                continue
            x1 = (-B - mp.sqrt(disc)) / A
            x2 = (-B + mp.sqrt(disc)) / A
            lo, hi = max(x1, -1), min(x2, 1)
            if lo <= hi:
                parts.append((lo, hi))
    parts.sort()
    merged = []
    for lo, hi in parts:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def curve():
    Q = mp.mpf(1024)
    # thm3: eps 0.1, Delta 1: Theta = Q^eps Psi^{-1}, theta = Theta Q^{-1/2}
    Theta = Q ** (mp.mpf(1) / 10) / mp.mpf("0.1")
    theta = Theta / mp.sqrt(Q)
    parts = stilde(mp.mpf("0.3"), Q, mp.mpf(1.5), mp.mpf("0.1"), theta)
    print("stilde s=0.3 Q=1024 c=3/2 theta=%s:" % mp.nstr(theta, 17))
    for lo, hi in parts:
        print("   {%s, %s}," % (mp.nstr(lo, 17), mp.nstr(hi, 17)))
    print("   measure", mp.nstr(mp.fsum(hi - lo for lo, hi in parts), 17))
    # good/bad: polar points with |P| <= 2 C1 / Psi, |V| <= C1; bad when |P . f'(s)| <= C1 / Theta
    for C1 in (mp.mpf(1), mp.mpf("0.5")):
        Psi = mp.mpf("0.5")
        Theta = Q ** (mp.mpf(1) / 10) / Psi
        pts = [(P, V) for p, q, P, V in dual_points(Q, 2 * C1 / Psi + 1)
               if (any(p) or q) and norm(P) <= 2 * C1 / Psi and abs(V) <= C1]
        grid = [mp.mpf(k) / 100 for k in range(10, 91, 5)]
        good = []
        for s in grid:
            fp = veronese_fp(s)
            bad = any(abs(P[0] * fp[0] + P[1] * fp[1]) <= C1 / Theta for P, V in pts)
            good.append(0 if bad else 1)
        print("is_good C1=%s psi=0.5 q^-1/2 grid 0.10:0.05:0.90, %d polar points:" % (C1, len(pts)), good)


if __name__ == "__main__":
    want = set(sys.argv[1:])
    run = lambda name: not want or name in want
    if run("approxfn"):
        approxfn()
    if run("embed"):
        embeddings()
    if run("lattice"):
        lattice()
    if run("approx"):
        approx()
    if run("curve"):
        curve()
    if run("margin") or run("game"):
        eps = mp.mpf("0.99") * margin()
        if run("game"):
            unique(eps)
    if run("omega"):
        omega()
