"""Exact dense linear algebra over ℤ, ℚ and F_p.

Matrices are lists of rows.  Sizes here are tiny (a few hundred at most),
so plain Python with Fraction / modular ints is fast enough and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class NonField(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """ℚ when ``p`` is None, otherwise F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1))):
            raise NonField(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(None)
        if text.startswith("fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError as e:
                raise NonField(f"bad prime in {text!r}") from e
        raise NonField(f"unknown field {text!r} (use q or fp:<prime>)")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def matrix(self, M):
        return [[self(v) for v in row] for row in M]

    def vector(self, v):
        return [self(a) for a in v]


QQ = Field(None)


def zeros(r: int, c: int):
    return [[0] * c for _ in range(r)]


def identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M, cols: int | None = None):
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*M)]


def matmul(A, B, inner: int | None = None):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def is_zero_matrix(M) -> bool:
    return all(v == 0 for row in M for v in row)


# field routines -----------------------------------------------------------------------

def rref(M, F: Field):
    """Reduced row echelon form and pivot columns."""
    A = F.matrix(M)
    rows = len(A)
    cols = len(A[0]) if A else 0
    piv = []
    r = 0
    for c in range(cols):
        k = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F(v * inv) for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [F(a - f * b) for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], piv


def rank(M, F: Field) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M, F)[1])


def nullspace(M, F: Field, cols: int | None = None):
    """Basis of {v : Mv = 0} as a list of vectors."""
    n = cols if cols is not None else (len(M[0]) if M else 0)
    if not M:
        return [[F(1) if i == j else F(0) for i in range(n)] for j in range(n)]
    R, piv = rref(M, F)
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        v = [F(0)] * n
        v[f] = F(1)
        for row, pc in zip(R, piv):
            v[pc] = F(-row[f])
        out.append(v)
    return out


def span_basis(vectors, F: Field, dim: int):
    """A basis (list of vectors) of the span of ``vectors``."""
    vectors = [F.vector(v) for v in vectors]
    if not vectors:
        return []
    R, _ = rref(vectors, F)
    return [list(r) for r in R]


def solve(A_cols, b, F: Field):
    """Coefficients c with Σ c_i A_cols[i] = b, or None."""
    n = len(b)
    k = len(A_cols)
    if k == 0:
        return [] if all(F(v) == 0 for v in b) else None
    aug = [[A_cols[j][i] for j in range(k)] + [b[i]] for i in range(n)]
    R, piv = rref(aug, F)
    if k in piv:
        return None
    x = [F(0)] * k
    for row, pc in zip(R, piv):
        x[pc] = row[k]
    return x


def intersect(U, W, F: Field, dim: int):
    """Basis of span(U) ∩ span(W)."""
    if not U or not W:
        return []
    # a·U = b·W  ⇔ [U | -W] (a, b) = 0
    M = [[u[i] for u in U] + [F(-w[i]) for w in W] for i in range(dim)]
    out = []
    for v in nullspace(M, F, len(U) + len(W)):
        out.append([F(sum(v[j] * U[j][i] for j in range(len(U)))) for i in range(dim)])
    return span_basis(out, F, dim)


def complement(sub, whole, F: Field, dim: int):
    """Vectors of ``whole`` extending a basis of span(sub) to a basis of span(sub ∪ whole)."""
    base = span_basis(sub, F, dim)
    r = len(base)
    out = []
    for w in whole:
        trial = base + out + [F.vector(w)]
        if rank(trial, F) > r + len(out):
            out.append(F.vector(w))
    return out


# integer routines -------------------------------------------------------------------------

def smith_normal_form(M):
    """(U, D, V) with U·M·V = D, U and V unimodular, D diagonal with d_1 | d_2 | ...

    Plain pivoting on the entry of least absolute value; everything is exact.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f·row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(t, i, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(t, j, -q)
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: fold in any entry p does not divide
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                  if A[i][j] and (i == t or j == t)]
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, A, V


def diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]
