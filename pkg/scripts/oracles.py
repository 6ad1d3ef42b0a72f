"""Independent oracle values, frozen into tests/data/oracles.json.

Nothing here imports szczarba.  Simplicial sets are modelled directly as
nondecreasing vertex tuples, homology is plain Fraction elimination, cut
counts come from brute force over all integer tuples.
"""

import itertools
import json
from fractions import Fraction
from math import gcd
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracles.json"


# rank over Q or F_p -------------------------------------------------------------------

def rank(rows, p=None):
    M = [[Fraction(v) if p is None else v % p for v in r] for r in rows]
    if not M or not M[0]:
        return 0
    r = 0
    for c in range(len(M[0])):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c] if p is None else pow(M[r][c], p - 2, p)
        M[r] = [v * inv if p is None else v * inv % p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b if p is None else (a - f * b) % p for a, b in zip(M[i], M[r])]
        r += 1
    return r


def betti(basis, face, top, p=None):
    """basis[n] = list of simplices, face(i, x) -> simplex or None if degenerate."""
    def dmat(n):
        idx = {b: k for k, b in enumerate(basis[n - 1])}
        M = [[0] * len(basis[n]) for _ in basis[n - 1]]
        for j, x in enumerate(basis[n]):
            for i in range(n + 1):
                y = face(i, x)
                if y is not None:
                    M[idx[y]][j] += (-1) ** i
        return M

    ranks = {n: rank(dmat(n), p) if basis[n] and basis[n - 1] else 0 for n in range(1, top + 2)}
    return [len(basis[n]) - ranks.get(n, 0) - ranks[n + 1] for n in range(top + 1)]


# the minimal circle as Δ¹/∂Δ¹ ---------------------------------------------------------------

def circle(n):
    """n-simplices: nondecreasing 0/1 tuples, all constants collapsed to 'pt'."""
    out = ["pt"]
    for k in range(1, n + 1):
        out.append(tuple([0] * k + [1] * (n + 1 - k)))
    return out


def c_face(i, a, n):
    if a == "pt":
        return "pt"
    b = a[:i] + a[i + 1:]
    return "pt" if len(set(b)) == 1 else b


def c_repeat(a, n):
    if a == "pt":
        return set(range(n))
    return {j for j in range(n) if a[j] == a[j + 1]}


def c_tau_is_g(a):
    return a != "pt" and a[0] == 0 and a[1] == 1


def circle_betti(top):
    basis = {n: [a for a in circle(n) if a != "pt" and not c_repeat(a, n)] for n in range(1, top + 2)}
    basis[0] = ["pt"]

    def face(i, a):
        n = len(a) - 1
        b = c_face(i, a, n)
        return b if n == 1 or not c_repeat(b, n - 1) else None

    return betti(basis, face, top)


def torus_betti(top):
    def nondeg(n):
        return [(a, b) for a in circle(n) for b in circle(n) if not (c_repeat(a, n) & c_repeat(b, n))]

    basis = {n: nondeg(n) for n in range(top + 2)}
    # the all-"pt" pair only lives in degree 0
    for n in range(1, top + 2):
        basis[n] = [x for x in basis[n] if x != ("pt", "pt")]
    basis[0] = [("pt", "pt")]

    def face(i, x):
        n = next(len(c) - 1 for c in x if c != "pt")
        a, b = x
        y = (c_face(i, a, n), c_face(i, b, n))
        if n - 1 == 0:
            return ("pt", "pt")
        return None if c_repeat(y[0], n - 1) & c_repeat(y[1], n - 1) else y

    return betti(basis, face, top)


def cover_betti(top, p=None):
    """X ×_τ Z/2 over the minimal circle with τ(e) = g; fibre elements 0 (=1) and 1 (=g)."""
    def nondeg(n):
        if n == 0:
            return [("pt", 0), ("pt", 1)]
        return [(a, h) for a in circle(n) if a != "pt" and not c_repeat(a, n) for h in (0, 1)]

    basis = {n: nondeg(n) for n in range(top + 2)}

    def face(i, x):
        a, h = x
        n = len(a) - 1
        if i == 0 and c_tau_is_g(a):
            h ^= 1
        b = c_face(i, a, n)
        if n - 1 == 0:
            return ("pt", h)
        return None if c_repeat(b, n - 1) else (b, h)

    return betti(basis, face, top, p)


# cuts ----------------------------------------------------------------------------------------

def cut_count(n, k):
    """0 = p_0 <= p_1 < p_2 <= p_3 < ... < p_{2k} <= p_{2k+1} = n."""
    count = 0
    for mid in itertools.product(range(n + 1), repeat=2 * k):
        b = (0, *mid, n)
        if all(b[j] <= b[j + 1] if j % 2 == 0 else b[j] < b[j + 1] for j in range(2 * k + 1)):
            count += 1
    return count


# shuffles --------------------------------------------------------------------------------------

def signed_shuffles(a, b):
    """(sign, degeneracy set on x, degeneracy set on y) for Shuff(a, b), by permutation inversions."""
    out = []
    n = a + b
    for perm in itertools.permutations(range(n)):
        if list(perm[:a]) != sorted(perm[:a]) or list(perm[a:]) != sorted(perm[a:]):
            continue
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        # x gets degeneracies at the positions taken by y, and vice versa
        out.append([(-1) ** inv, sorted(perm[a:]), sorted(perm[:a])])
    return sorted(out, key=lambda t: t[1])


def z2_group_ring_square():
    """(g - 1)^2 in Z[Z/2] with g^2 = 1, as coefficients of 1 and g."""
    a = {0: -1, 1: 1}
    out = {0: 0, 1: 0}
    for i, x in a.items():
        for j, y in a.items():
            out[(i + j) % 2] += x * y
    return {"1": out[0], "g": out[1]}


# SNF of a diagonal 2x2 ---------------------------------------------------------------------------

def snf_2x2(m):
    d1 = gcd(*[abs(v) for r in m for v in r])
    det = abs(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    return [d1, det // d1]


def main():
    data = {
        "cut_counts": {f"{n},{k}": cut_count(n, k) for n in range(0, 7) for k in range(0, 4)},
        "shuffles": {f"{a},{b}": signed_shuffles(a, b) for a in range(3) for b in range(3)},
        "snf_2_3": snf_2x2([[2, 0], [0, 3]]),
        "cover_betti_Q": cover_betti(3),
        "cover_betti_F2": cover_betti(3, 2),
        "circle_betti": circle_betti(3),
        "torus_betti": torus_betti(3),
        "z2_square": z2_group_ring_square(),
        # ΩC of the minimal 2-sphere has exactly one word [σ|...|σ] per degree and d = 0
        "loop_s2_betti": [1] * 5,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {OUT}")
    for k in ("cover_betti_Q", "cover_betti_F2", "circle_betti", "torus_betti"):
        print(k, data[k])
    print("cuts (4,2):", data["cut_counts"]["4,2"], " (2,1):", data["cut_counts"]["2,1"])


if __name__ == "__main__":
    main()
