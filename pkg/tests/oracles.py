"""Independent slow reference implementations used only by the tests."""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp


def inversions(w) -> int:
    w = list(w)
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def height(w, x, y) -> int:
    w = list(w)
    return sum(1 for j in range(y - 1, len(w)) if w[j] >= x)


def trace_dream(n, crosses, reduce=True, demote=None):
    """Follow pipes box by box along the diagonals j-i = const, top-left first.

    Pipe c enters row c from the left; half-bumps sit on i+j = n+1.  With
    ``reduce`` a cross whose two pipes have already met is read as a bump.
    Returns the colors leaving the tops of columns 1..n.
    """
    crosses = set(crosses)
    boxes = [(i, j) for i in range(1, n) for j in range(1, n) if i + j <= n]
    top, right = {}, {}
    for tau in range(-(n - 1), n):
        for i, j in boxes:
            if j - i != tau:
                continue
            left = i if j == 1 else right[i, j - 1]
            if i + 1 + j <= n:
                below = top[i + 1, j]
            else:
                below = i + 1 if j == 1 else right[i + 1, j - 1]
            c = (i, j) in crosses
            if c and reduce and below < left:
                c = False
                if demote is not None:
                    demote.append((i, j))
            if c:
                top[i, j], right[i, j] = below, left
            else:
                top[i, j], right[i, j] = left, below
    if n == 1:
        return [1]
    return [top[1, j] for j in range(1, n)] + [right[1, n - 1]]


def demazure_by_positions(word, n):
    """Fold s_r on the right (swap positions r, r+1) whenever length grows."""
    w = list(range(1, n + 1))
    for r in word:
        v = w[:]
        v[r - 1], v[r] = v[r], v[r - 1]
        if inversions(v) > inversions(w):
            w = v
    return tuple(w)


def grothendieck_specializations(n, beta):
    """Y_w(beta) for all w in S_n from isobaric divided differences
    applied to x1^{n-1} x2^{n-2} ... and evaluated at all x = 1."""
    x = sp.symbols(f"x1:{n + 1}")
    w0 = tuple(range(n, 0, -1))
    G = {w0: sp.Mul(*[x[i] ** (n - 1 - i) for i in range(n)])}
    frontier = [w0]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(n - 1):
                if w[i] > w[i + 1]:
                    v = list(w)
                    v[i], v[i + 1] = v[i + 1], v[i]
                    v = tuple(v)
                    if v in G:
                        continue
                    f = (1 + beta * x[i + 1]) * G[w]
                    swapped = f.subs({x[i]: x[i + 1], x[i + 1]: x[i]}, simultaneous=True)
                    G[v] = sp.expand(sp.cancel((f - swapped) / (x[i] - x[i + 1])))
                    nxt.append(v)
        frontier = nxt
    return {w: Fraction(str(g.subs({xi: 1 for xi in x}))) for w, g in G.items()}


def asm_list(n):
    """All n x n alternating sign matrices by brute force over {-1,0,1}."""
    out = []
    for cells in itertools.product((-1, 0, 1), repeat=n * n):
        A = [cells[i * n:(i + 1) * n] for i in range(n)]
        ok = True
        for line in A + [tuple(A[i][j] for i in range(n)) for j in range(n)]:
            s = 0
            for v in line:
                if v:
                    if v == (1 if s == 0 else -1):
                        s += v
                    else:
                        ok = False
                        break
            if not ok or s != 1:
                ok = False
                break
        if ok:
            out.append(A)
    return out


def ssyt_count(lam, m):
    """Semistandard Young tableaux of shape lam with entries <= m."""
    cells = [(r, c) for r, length in enumerate(lam) for c in range(length)]
    fill = {}

    def rec(k):
        if k == len(cells):
            return 1
        r, c = cells[k]
        lo = 1
        if c > 0:
            lo = max(lo, fill[r, c - 1])
        if r > 0:
            lo = max(lo, fill[r - 1, c] + 1)
        total = 0
        for v in range(lo, m + 1):
            fill[r, c] = v
            total += rec(k + 1)
        return total

    return rec(0)
