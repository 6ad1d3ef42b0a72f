"""Interval cuts for the surjections e_k = (k+1, 1, k+1, 2, ..., k, k+1).

A cut of [0..n] is p = (p_0=0, p_1, ..., p_{2k+1}=n).  Intervals
[p_{2s-1}, p_{2s}] carry label s (length >= 1), the others carry the
final label k+1 (any length >= 0).

The sign ε(p) is obtained by refining p until every final interval has
length zero and then reading off the closed formula that holds there,
Σ_s (s-1)(q_s - 1).  Refinement does not change ε, so only the position
of each original labelled interval inside the maximal refinement matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .chains import Chain
from .simplicial import DimensionMismatch, Simplex, SimplicialError


class InvalidSplit(SimplicialError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class IntervalCut:
    n: int
    bounds: tuple[int, ...]

    def __post_init__(self):
        b = self.bounds
        if len(b) % 2 or len(b) < 2 or b[0] != 0 or b[-1] != self.n:
            raise ValueError(f"bad cut {b} of [0..{self.n}]")
        for a, c in zip(b, b[1:]):
            if c < a:
                raise ValueError(f"bad cut {b}: not monotone")
        for s in range(1, self.k + 1):
            if b[2 * s] - b[2 * s - 1] < 1:
                raise ValueError(f"bad cut {b}: labelled interval {s} is empty")

    @property
    def k(self) -> int:
        return len(self.bounds) // 2 - 1

    def labelled(self, s: int) -> tuple[int, int]:
        return self.bounds[2 * s - 1], self.bounds[2 * s]

    def final(self, m: int) -> tuple[int, int]:
        return self.bounds[2 * m], self.bounds[2 * m + 1]

    @property
    def q(self) -> tuple[int, ...]:
        return tuple(self.bounds[2 * s] - self.bounds[2 * s - 1] for s in range(1, self.k + 1))

    @property
    def final_lengths(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in (self.final(m) for m in range(self.k + 1)))

    @property
    def ell(self) -> int:
        return sum(self.final_lengths)

    @property
    def ell1(self) -> int:
        return sum(1 for q in self.q if q == 1)

    def final_vertices(self) -> tuple[int, ...]:
        out: list[int] = []
        for m in range(self.k + 1):
            a, b = self.final(m)
            out.extend(range(a, b + 1))
        return tuple(out)

    def labels(self) -> str:
        """Arrow notation 0→(2)0→(1)1→(2)3."""
        k = self.k
        parts = [str(self.bounds[0])]
        for i in range(1, len(self.bounds)):
            lab = k + 1 if i % 2 else i // 2
            parts.append(f"({lab}){self.bounds[i]}")
        return "→".join(parts)

    def __str__(self):
        return str(self.bounds)


def enumerate_cuts(n: int, k: int) -> list[IntervalCut]:
    return list(_cuts(n, k))


@lru_cache(maxsize=None)
def _cuts(n: int, k: int) -> tuple[IntervalCut, ...]:
    if k < 0 or n < 0:
        return ()
    out = []
    # p_1 <= p_2 - 1 <= p_3 - 1 <= p_4 - 2 ... shift to a weakly increasing sequence
    for raw in combinations_with_replacement(range(n + 1), 2 * k):
        b = list(raw)
        ok = True
        for s in range(1, k + 1):
            if b[2 * s - 1] <= b[2 * s - 2]:
                ok = False
                break
        if ok:
            out.append(IntervalCut(n, (0, *b, n)))
    return tuple(sorted(out))


def refine(p: IntervalCut, m: int, q: int) -> IntervalCut:
    """Split final interval m at [q, q+1] into a new labelled interval."""
    if not 0 <= m <= p.k:
        raise InvalidSplit(f"no final interval {m} in {p}")
    a, b = p.final(m)
    if not a <= q < b:
        raise InvalidSplit(f"split position {q} outside [{a}, {b})")
    bs = p.bounds
    return IntervalCut(p.n, bs[: 2 * m + 1] + (q, q + 1) + bs[2 * m + 1:])


def refinements(p: IntervalCut) -> list[IntervalCut]:
    out = []
    for m in range(p.k + 1):
        a, b = p.final(m)
        for q in range(a, b):
            out.append(refine(p, m, q))
    return out


def maximal_refinement(p: IntervalCut) -> IntervalCut:
    while p.ell:
        p = refinements(p)[0]
    return p


def epsilon_closed(p: IntervalCut) -> int:
    """Σ (s-1)(q_s-1) mod 2; the value of ε when all final intervals are empty."""
    return sum((s - 1) * (q - 1) for s, q in enumerate(p.q, start=1)) % 2


def epsilon(p: IntervalCut) -> int:
    """Exponent ε(p) mod 2."""
    e = 0
    before = 0
    for s in range(1, p.k + 1):
        before += p.final_lengths[s - 1]
        idx = s + before
        e += (p.q[s - 1] - 1) * (idx - 1)
    return e % 2


def epsilon_sign(p: IntervalCut) -> int:
    return -1 if epsilon(p) else 1


def cuts_above(p: IntervalCut) -> set[IntervalCut]:
    seen = {p}
    todo = [p]
    while todo:
        for r in refinements(todo.pop()):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def cuts_below(p: IntervalCut) -> set[IntervalCut]:
    """Coarsenings: merge a length-1 labelled interval into the neighbouring finals."""
    seen = {p}
    todo = [p]
    while todo:
        r = todo.pop()
        bs = r.bounds
        for s in range(1, r.k + 1):
            a, b = r.labelled(s)
            if b - a == 1:
                c = IntervalCut(r.n, bs[: 2 * s - 1] + bs[2 * s + 1:])
                if c not in seen:
                    seen.add(c)
                    todo.append(c)
    return seen


def cut_faces(X, x: Simplex, p: IntervalCut) -> tuple[Simplex, ...]:
    if x.dim != p.n:
        raise DimensionMismatch(f"cut of [0..{p.n}] applied to a {x.dim}-simplex")
    parts = [X.subsimplex(x, tuple(range(a, b + 1))) for a, b in (p.labelled(s) for s in range(1, p.k + 1))]
    parts.append(X.subsimplex(x, p.final_vertices()))
    return tuple(parts)


def suspended_cooperation(X, x: Simplex, k: int) -> Chain:
    """Σ_p (-1)^ε(p) x^p_1 ⊗ ... ⊗ x^p_{k+1}; tuples with a degenerate factor vanish."""
    out = Chain()
    for p in enumerate_cuts(x.dim, k):
        out.add(cut_faces(X, x, p), epsilon_sign(p))
    return out
