#!/usr/bin/env python3
"""Solve the structure constants of the 3-dimensional (kappa, mu) frame model.

Frame {e0 = xi, e1 = e, e2 = phi e}, g = identity, eta = e0^*, phi e1 = e2,
phi e2 = -e1. Ansatz: [e1, e2] = c e0, [e0, e1] = a e2, [e0, e2] = b e1.

Conditions imposed:
  * Jacobi identity,
  * deta(X, Y) = g(X, phi Y) with deta(X,Y) = 1/2 (X eta(Y) - Y eta(X) - eta([X,Y])),
  * h = 1/2 L_xi phi has h e1 = lambda e1,
  * R(X, Y) xi = kappa (eta(Y) X - eta(X) Y) + mu (eta(Y) hX - eta(X) hY)
    for the Levi-Civita connection from the Koszul formula.

Prints the symbolic solution and, for each requested (kappa, mu), the numeric
constants as [i, j, k, value] entries of the model file format. With --check
it compares against the closed form used by the library and exits non-zero on
mismatch.

    python3 tools/oracles/kappa_mu_frame.py -8 -8 -8 2 -8 -1 --check
"""

import argparse
import json
import sys

import sympy as sp

D = 3


def solve():
    a, b, c = sp.symbols("a b c", real=True)
    lam = sp.symbols("lambda", positive=True)
    kappa, mu = sp.symbols("kappa mu", real=True)

    br = {}
    for i in range(D):
        for j in range(D):
            br[i, j] = sp.zeros(D, 1)

    def set_bracket(i, j, v):
        br[i, j] = sp.Matrix(v)
        br[j, i] = -sp.Matrix(v)

    set_bracket(1, 2, [c, 0, 0])
    set_bracket(0, 1, [0, 0, a])
    set_bracket(0, 2, [0, b, 0])

    E = [sp.eye(D)[:, i] for i in range(D)]
    g = sp.eye(D)
    eta = sp.Matrix([[1, 0, 0]])
    phi = sp.Matrix([[0, 0, 0], [0, 0, -1], [0, 1, 0]])

    def bracket(x, y):
        r = sp.zeros(D, 1)
        for i in range(D):
            for j in range(D):
                r += x[i] * y[j] * br[i, j]
        return r

    # Koszul for a constant metric on a frame.
    gamma = {}
    for i in range(D):
        for j in range(D):
            v = sp.Matrix([
                sp.Rational(1, 2) * ((br[i, j].T * g)[k] - (br[i, k].T * g)[j] - (br[j, k].T * g)[i])
                for k in range(D)
            ])
            gamma[i, j] = g.inv() * v

    def nabla(x, y):
        r = sp.zeros(D, 1)
        for i in range(D):
            for j in range(D):
                r += x[i] * y[j] * gamma[i, j]
        return r

    def curvature(x, y, z):
        return nabla(x, nabla(y, z)) - nabla(y, nabla(x, z)) - nabla(bracket(x, y), z)

    eqs = []
    # Jacobi.
    for i in range(D):
        for j in range(D):
            for k in range(D):
                eqs += list(bracket(E[i], bracket(E[j], E[k])) + bracket(E[j], bracket(E[k], E[i]))
                            + bracket(E[k], bracket(E[i], E[j])))
    # Associated metric.
    for i in range(D):
        for j in range(D):
            d_eta = -sp.Rational(1, 2) * (eta * bracket(E[i], E[j]))[0]
            eqs.append(d_eta - (E[i].T * g * phi * E[j])[0])
    # h = 1/2 L_xi phi, with (L_xi phi) Y = [xi, phi Y] - phi [xi, Y].
    h = sp.zeros(D, D)
    for j in range(D):
        h[:, j] = sp.Rational(1, 2) * (bracket(E[0], phi * E[j]) - phi * bracket(E[0], E[j]))
    eqs += list(h * E[1] - lam * E[1])
    # Nullity.
    xi = E[0]
    for i in range(D):
        for j in range(D):
            x, y = E[i], E[j]
            ex, ey = (eta * x)[0], (eta * y)[0]
            target = kappa * (ey * x - ex * y) + mu * (ey * h * x - ex * h * y)
            eqs += list(curvature(x, y, xi) - target)

    eqs = [sp.simplify(e) for e in eqs if sp.simplify(e) != 0]
    sols = sp.solve(eqs, [a, b, c, kappa], dict=True)
    return sols, (a, b, c, kappa, lam, mu)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("pairs", nargs="*", type=float, help="kappa mu [kappa mu ...]")
    ap.add_argument("--check", action="store_true", help="compare with the library's closed form")
    args = ap.parse_args()
    if len(args.pairs) % 2:
        ap.error("values come in (kappa, mu) pairs")

    sols, (a, b, c, kappa, lam, mu) = solve()
    if len(sols) != 1:
        print("expected one solution, got", sols, file=sys.stderr)
        return 1
    sol = sols[0]
    print("solution:", {str(k): sp.simplify(v) for k, v in sol.items()})

    bad = 0
    for kv, mv in zip(args.pairs[0::2], args.pairs[1::2]):
        if kv >= 1:
            print(f"kappa={kv:g}: needs kappa < 1", file=sys.stderr)
            bad += 1
            continue
        lv = sp.sqrt(1 - sp.nsimplify(kv))
        subs = {lam: lv, mu: sp.nsimplify(mv)}
        av, bv, cv = (sp.simplify(sol[s].subs(subs)) for s in (a, b, c))
        entries = [[1, 2, 0, float(cv)], [0, 1, 2, float(av)], [0, 2, 1, float(bv)]]
        print(json.dumps({"kappa": kv, "mu": mv, "lambda": float(lv), "c": entries}))
        if args.check:
            la = float(lv)
            closed = (la + 1 - mv / 2, la - 1 + mv / 2, 2.0)
            got = (float(av), float(bv), float(cv))
            if max(abs(x - y) for x, y in zip(closed, got)) > 1e-12:
                print(f"  mismatch: oracle {got}, closed form {closed}", file=sys.stderr)
                bad += 1
            if abs(float(sol[kappa].subs(subs)) - kv) > 1e-12:
                print(f"  kappa does not round-trip: {float(sol[kappa].subs(subs))}", file=sys.stderr)
                bad += 1
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
