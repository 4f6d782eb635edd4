"""Independent brute-force reference computations.

Nothing here imports the package: coefficients are plain ints and ring
arithmetic is passed in as two functions.  Composition sums powers
directly instead of using Horner's rule.
"""

import itertools


def zmod(m):
    # element lists always start with zero, one
    return list(range(m)), (lambda a, b: (a + b) % m), (lambda a, b: (a * b) % m)


def f4():
    # a + bX encoded as (a, b) with X^2 = X + 1 over Z/2
    els = [(0, 0), (1, 0), (0, 1), (1, 1)]  # zero and one first

    def add(x, y):
        return ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)

    def mul(x, y):
        a, b = x
        c, d = y
        # (a + bX)(c + dX) = ac + (ad + bc)X + bd X^2, X^2 = 1 + X
        return ((a * c + b * d) % 2, (a * d + b * c + b * d) % 2)

    return els, add, mul


def smul(a, b, add, mul, zero):
    n = len(a)
    c = [zero] * n
    for i in range(n):
        for j in range(n - i):
            c[i + j] = add(c[i + j], mul(a[i], b[j]))
    return c


def scompose(f, g, add, mul, zero, one):
    n = len(f)
    out = [zero] * n
    power = [one] + [zero] * (n - 1)
    for k in range(n):
        out = [add(x, mul(f[k], y)) for x, y in zip(out, power)]
        power = smul(power, g, add, mul, zero)
    return out


def substitution_search(ring, N):
    """(|F|, |H|, number of solutions, any solution with f != t)."""
    els, add, mul = ring
    zero, one = els[0], els[1]
    t = [zero, one] + [zero] * (N - 1)
    cands = [[zero, one] + list(c) for c in itertools.product(els, repeat=N - 1)]

    def it(f, k):
        r = t
        for _ in range(k):
            r = scompose(f, r, add, mul, zero, one)
        return r

    F = [f for f in cands if it(f, 2) == t]
    H = [h for h in cands if it(h, 3) == t]
    sols = [(f, h) for f in F for h in H if it(scompose(h, f, add, mul, zero, one), 3) == t]
    return len(F), len(H), len(sols), any(f != t for f, _ in sols)


def level1_claim5(m):
    """Exhaustive claim-5 data over R_1(Z/m) with matrices [[g0, 0], [g1, g0 f1]].

    Returns (involutions, ordered involution pairs, order-3 products,
    violations)."""
    units = [u for u in range(m) if any(u * v % m == 1 for v in range(m))]

    def mmul(A, B):
        (a, b, c), (d, e, f) = A, B
        # [[a,0],[b,c]] [[d,0],[e,f]] = [[ad,0],[bd+ce, cf]]
        return (a * d % m, (b * d + c * e) % m, c * f % m)

    I = (1, 0, 1)
    G = [(g0, g1, g0 * f1 % m) for g0 in units for g1 in range(m) for f1 in units]
    inv = [x for x in G if x != I and mmul(x, x) == I]
    pairs = order3 = bad = 0
    for x in inv:
        for y in inv:
            pairs += 1
            p = mmul(x, y)
            if p != I and mmul(mmul(p, p), p) == I:
                order3 += 1
                g0, f1 = p[0], p[2] * pow(p[0], -1, m) % m
                if not (g0 == 1 and f1 == 1):
                    bad += 1
    return len(inv), pairs, order3, bad


def catalan_numbers(n):
    c = [1]
    while len(c) < n:
        c.append(sum(c[i] * c[len(c) - 1 - i] for i in range(len(c))))
    return c
