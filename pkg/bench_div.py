"""Scratch benchmark: division closure example, full prolongation vs presolve."""
import time

from adeq.groebner import buchberger, eliminate
from adeq.poly import MPoly, MonomialOrder


def v(name, shift, e=1):
    return MPoly.var(("seq", name, shift), e)


def zvar(j):
    return ("seq", "z", j)


def run_full():
    M = 3
    gens = []
    for j in range(M):
        gens.append(v("u", j + 2) - v("u", j + 1) * v("u", j))          # sigma^j p
        gens.append(v("v", j + 1) - v("v", j, 2) - v("v", j))           # sigma^j q
    for j in range(M + 1):
        gens.append(v("v", j) * MPoly.var(zvar(j)) - v("u", j))         # output
    H = MPoly.one()
    for j in range(M + 1):
        H = H * v("v", j)
    t = ("sat", 0)
    gens.append(MPoly.var(t) * H - 1)
    elim = [t]
    for shift in range(4, -1, -1):
        for name in ("u", "v"):
            key = ("seq", name, shift)
            if any(key in g.vars() for g in gens):
                elim.append(key)
    keep = [zvar(j) for j in range(M, -1, -1)]
    order = MonomialOrder(elim + keep)
    t0 = time.time()
    basis = buchberger(gens, order)
    out = eliminate(basis, set(keep))
    print(f"full: {time.time()-t0:.2f}s, basis {len(basis.generators)}, elim {len(out)}")
    return out


def run_presolved():
    M = 3
    u = {0: v("u", 0), 1: v("u", 1)}
    for j in range(2, M + 2):
        u[j] = u[j - 1] * u[j - 2]
    w = {0: v("v", 0)}
    for j in range(1, M + 1):
        w[j] = w[j - 1] * w[j - 1] + w[j - 1]
    gens = [w[j] * MPoly.var(zvar(j)) - u[j] for j in range(M + 1)]
    H = MPoly.one()
    for j in range(M + 1):
        H = H * w[j]
    t = ("sat", 0)
    gens.append(MPoly.var(t) * H - 1)
    elim = [t, ("seq", "u", 1), ("seq", "u", 0), ("seq", "v", 0)]
    keep = [zvar(j) for j in range(M, -1, -1)]
    order = MonomialOrder(elim + keep)
    t0 = time.time()
    basis = buchberger(gens, order)
    out = eliminate(basis, set(keep))
    print(f"presolved: {time.time()-t0:.2f}s, basis {len(basis.generators)}, elim {len(out)}")
    return out


def expected():
    def z(j, e=1):
        return MPoly.var(zvar(j), e)
    return (z(0, 4) * z(1, 4) * z(3, 2)
            - z(0, 3) * z(1, 4) * z(2, 2) * z(3)
            - z(0, 3) * z(1, 3) * z(2) * z(3, 2)
            - z(0, 2) * z(1, 3) * z(2, 3) * z(3)
            + z(0) * z(1, 3) * z(2, 5)
            - z(0, 2) * z(1, 2) * z(2, 2) * z(3, 2)
            + 2 * z(0) * z(1, 2) * z(2, 4) * z(3)
            + z(1, 2) * z(2, 6)
            + z(0) * z(1) * z(2, 3) * z(3, 2)
            + 2 * z(1) * z(2, 5) * z(3)
            + z(2, 4) * z(3, 2))


if __name__ == "__main__":
    exp = expected()
    out2 = run_presolved()
    print("presolved matches eq(37):", any(g == exp or g == -exp for g in out2))
    out1 = run_full()
    print("full matches eq(37):", any(g == exp or g == -exp for g in out1))
