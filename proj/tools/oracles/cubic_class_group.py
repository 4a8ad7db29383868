#!/usr/bin/env python3
"""Independent class-group oracle for small monogenic cyclic cubic fields.

Recomputes the class-group invariants stored in data/cubic_fixture.csv.

Upper bound: Cl is generated by prime ideals of norm <= Minkowski bound.
Relations come from elements of small height whose norms factor over those
primes; the cokernel of the relation lattice surjects onto Cl.

Lower bound: the analytic class number formula h*R = |L(1,chi)|^2 f / 4 for
a cyclic cubic of conductor f, with R bounded above by the regulator of a
pair of units found during the search. When ceil(lower) == |upper group|,
the two agree and Cl is the relation group.

Usage: cubic_class_group.py [--csv]
"""
import argparse
import cmath
import itertools
import math
import sys

import numpy as np
import sympy as sp
from sympy.matrices.normalforms import smith_normal_form

X = sp.symbols("x")

# (conductor, monic defining polynomial with disc == conductor^2, so Z[theta] is maximal)
FIELDS = [
    (7, [1, 1, -2, -1]),
    (9, [1, 0, -3, 1]),
    (13, [1, 1, -4, 1]),
    (63, [1, 0, -21, 35]),
]


def poly_expr(coeffs):
    return sum(c * X ** (3 - i) for i, c in enumerate(coeffs))


def norm(coeffs, alpha):
    # alpha = a0 + a1 theta + a2 theta^2; N(alpha) = resultant(f, alpha(x)).
    f = poly_expr(coeffs)
    g = alpha[0] + alpha[1] * X + alpha[2] * X ** 2
    return int(sp.resultant(f, g, X))


def hensel_root(coeffs, r, q, k):
    f = sp.Poly(poly_expr(coeffs), X)
    df = f.diff(X)
    mod = q
    for _ in range(k):
        mod_next = mod * q
        fr = int(f.eval(r)) % mod_next
        dfr = int(df.eval(r)) % q
        inv = pow(dfr, -1, q)
        r = (r - fr * inv) % mod_next
        mod = mod_next
    return r


def prime_ideals(coeffs, conductor, bound):
    """Degree-1 prime ideals of norm <= bound as (q, root, ramified)."""
    out = []
    for q in sp.primerange(2, int(bound) + 1):
        roots = [r for r in range(q) if sum(c * r ** (3 - i) for i, c in enumerate(coeffs)) % q == 0]
        if conductor % q == 0:
            assert len(roots) == 1
            out.append((q, roots[0], True))
        elif len(roots) == 3:
            for r in roots:
                out.append((q, r, False))
        else:
            assert len(roots) == 0, "cyclic cubic primes split completely, are inert, or ramify"
    return out


def valuations(coeffs, primes, alpha, n):
    vec = []
    for q, r, ramified in primes:
        vq = 0
        m = abs(n)
        while m % q == 0:
            m //= q
            vq += 1
        if ramified:
            vec.append(vq)
            continue
        k = vq + 2
        rr = hensel_root(coeffs, r, q, k)
        val = alpha[0] + alpha[1] * rr + alpha[2] * rr * rr
        mod = q ** (k + 1)
        val %= mod
        v = 0
        while val % q == 0 and v <= k:
            val //= q
            v += 1
        vec.append(v)
    return vec


def smooth(n, primes):
    m = abs(n)
    for q in sorted({q for q, _, _ in primes}):
        while m % q == 0:
            m //= q
    return m == 1


def cubic_characters(f):
    """Primitive cubic Dirichlet characters mod f as dicts a -> complex."""
    units = [a for a in range(1, f) if math.gcd(a, f) == 1]
    group_order = len(units)
    chars = []
    # brute force: characters are homomorphisms to cube roots of unity
    gens = []
    remaining = set(units)
    # find generators of (Z/f)^* by greedy closure
    closure = {1}
    for g in units:
        if g in closure:
            continue
        gens.append(g)
        new = set(closure)
        frontier = list(closure)
        while frontier:
            x = frontier.pop()
            for h in gens:
                y = x * h % f
                if y not in new:
                    new.add(y)
                    frontier.append(y)
        closure = new
        if len(closure) == group_order:
            break
    w = cmath.exp(2j * math.pi / 3)
    for exps in itertools.product(range(3), repeat=len(gens)):
        table = {}
        frontier = [(1, 0)]
        table[1] = 0
        ok = True
        while frontier:
            x, e = frontier.pop()
            for g, ge in zip(gens, exps):
                y = x * g % f
                ey = (e + ge) % 3
                if y in table:
                    if table[y] != ey:
                        ok = False
                else:
                    table[y] = ey
                    frontier.append((y, ey))
        if not ok or all(v == 0 for v in table.values()):
            continue
        # primitive: not induced from a proper divisor
        primitive = True
        for dvs in sp.divisors(f)[:-1]:
            if all(table[a] == 0 for a in units if a % dvs == 1 % dvs):
                primitive = False
        if primitive:
            chars.append({a: w ** table[a] for a in units})
    return chars


def analytic_hR(f, chi):
    s = 0
    for a, v in chi.items():
        s += v * math.log(abs(1 - cmath.exp(2j * math.pi * a / f)))
    return abs(s) ** 2 / 4


def analyse(conductor, coeffs, height):
    minkowski = 6 / 27 * conductor
    primes = prime_ideals(coeffs, conductor, minkowski)
    rels = []
    units = []
    rng = range(-height, height + 1)
    for alpha in itertools.product(rng, rng, rng):
        if alpha == (0, 0, 0):
            continue
        n = norm(coeffs, alpha)
        if n == 0:
            continue
        if abs(n) == 1:
            units.append(alpha)
            continue
        if primes and smooth(n, primes):
            rels.append(valuations(coeffs, primes, alpha, n))
    for q in sorted({q for q, _, _ in primes}):
        n = q ** 3
        rels.append(valuations(coeffs, primes, (q, 0, 0), n))
    if primes:
        snf = smith_normal_form(sp.Matrix(rels), domain=sp.ZZ)
        diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
        assert all(d != 0 for d in diag), "relation lattice not full rank"
        invariants = sorted(d for d in diag if d != 1)
    else:
        invariants = []
    upper = math.prod(invariants) if invariants else 1

    roots = np.roots(coeffs)
    assert np.allclose(roots.imag, 0)
    roots = roots.real

    def logvec(alpha):
        return [math.log(abs(alpha[0] + alpha[1] * r + alpha[2] * r * r)) for r in roots[:2]]

    logs = [logvec(u) for u in units]
    reg = min(
        abs(a[0] * b[1] - a[1] * b[0])
        for a, b in itertools.combinations(logs, 2)
        if abs(a[0] * b[1] - a[1] * b[0]) > 1e-6
    )
    # select the character whose kernel matches the completely split primes
    chars = cubic_characters(conductor)
    split = [q for q in sp.primerange(2, 400) if conductor % q and
             sum(1 for r in range(q) if sum(c * r ** (3 - i) for i, c in enumerate(coeffs)) % q == 0) == 3]
    inert = [q for q in sp.primerange(2, 400) if conductor % q and q not in split]
    chi = next(c for c in chars
               if all(abs(c[q % conductor] - 1) < 1e-9 for q in split)
               and all(abs(c[q % conductor] - 1) > 1e-3 for q in inert))
    hR = analytic_hR(conductor, chi)
    lower = hR / reg
    return invariants, upper, lower, len(rels), len(units)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--csv", action="store_true", help="emit fixture CSV on stdout")
    ap.add_argument("--height", type=int, default=5)
    args = ap.parse_args()
    rows = []
    for conductor, coeffs in FIELDS:
        invariants, upper, lower, nrel, nunit = analyse(conductor, coeffs, args.height)
        certified = math.ceil(lower - 1e-6) >= upper
        print(f"# conductor {conductor}: relations={nrel} units={nunit} "
              f"upper |G_rel|={upper} analytic lower h>={lower:.6f} certified={certified}",
              file=sys.stderr)
        if not certified:
            sys.exit(f"conductor {conductor}: bounds do not meet")
        rows.append((conductor, ";".join(str(v) for v in invariants)))
    if args.csv:
        print("conductor,class_invariants")
        for c, inv in rows:
            print(f"{c},{inv}")


if __name__ == "__main__":
    main()
