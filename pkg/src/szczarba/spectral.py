"""Filtered complexes over a field and their spectral sequences.

Filtrations are increasing: F_q ⊂ F_{q+1}, d(F_q) ⊂ F_q, stored as an
adapted basis (one level per vector).  Levels are plain integers; the
display index p = n - q is only used when printing.

    Z^r_q  = F_q ∩ d^{-1} F_{q-r}
    E^r_q  = Z^r_q / (Z^{r-1}_{q-1} + d Z^{r-1}_{q+r-1})
    d^r    : E^r_{q,n} → E^r_{q-r,n-1}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .chains import Chain
from .homology import FiniteComplex, homology_field
from .linalg import Field, NonField, complement, nullspace, rank, solve, span_basis


class BadFiltration(ValueError):
    pass


@dataclass
class Filtration:
    complex: FiniteComplex
    field: Field
    adapted: dict[int, list[tuple[list, int]]]  # degree → [(vector over the complex basis, level)]

    def __post_init__(self):
        F = self.field
        self._A = {}
        self._levels = {}
        for n in self.complex.degrees():
            pairs = sorted(self.adapted.get(n, []), key=lambda t: t[1])
            vecs = [F.vector(v) for v, _ in pairs]
            if rank(vecs, F) != self.complex.rank(n) or len(vecs) != self.complex.rank(n):
                raise BadFiltration(f"adapted vectors in degree {n} are not a basis")
            self._A[n] = vecs
            self._levels[n] = [lv for _, lv in pairs]
        self._d = {}
        for n in self.complex.degrees():
            if n - 1 < self.complex.bounds[0]:
                continue
            self._d[n] = self._adapted_boundary(n)
            for j, lj in enumerate(self._levels[n]):
                for i, li in enumerate(self._levels[n - 1]):
                    if self._d[n][i][j] != 0 and li > lj:
                        raise BadFiltration(f"d raises the filtration level in degree {n}")

    @classmethod
    def from_levels(cls, C: FiniteComplex, level: Callable[[object], int], field: Field) -> "Filtration":
        adapted = {}
        for n in C.degrees():
            adapted[n] = [([1 if i == j else 0 for i in range(C.rank(n))], level(b)) for j, b in enumerate(C.basis.get(n, []))]
        return cls(C, field, adapted)

    @classmethod
    def trivial(cls, C: FiniteComplex, field: Field) -> "Filtration":
        return cls.from_levels(C, lambda b: 0, field)

    def _adapted_boundary(self, n: int):
        """Matrix of d_n in adapted coordinates."""
        F = self.field
        M = self.complex.boundary_matrix(n)
        cols = []
        for v in self._A[n]:
            w = [F(sum(M[i][j] * v[j] for j in range(len(v)))) for i in range(len(M))]
            c = solve(self._A[n - 1], w, F) if self._A[n - 1] else []
            cols.append(c)
        rows = len(self._A[n - 1])
        return [[cols[j][i] for j in range(len(cols))] for i in range(rows)]

    def levels(self, n: int) -> list[int]:
        return self._levels.get(n, [])

    def level_range(self) -> tuple[int, int]:
        allv = [lv for n in self._levels for lv in self._levels[n]]
        return (min(allv), max(allv)) if allv else (0, 0)

    def to_vector(self, n: int, coords) -> list:
        """Adapted coordinates → vector over the complex basis."""
        F = self.field
        out = [F(0)] * self.complex.rank(n)
        for c, v in zip(coords, self._A[n]):
            if c:
                out = [F(a + c * b) for a, b in zip(out, v)]
        return out

    def coords(self, n: int, vec) -> list:
        return solve(self._A[n], self.field.vector(vec), self.field)

    def dual(self) -> "Filtration":
        """The annihilator filtration on the dual complex: level(e*_j) = -level(e_j)."""
        F = self.field
        D = self.complex.dual()
        adapted = {}
        for n in self.complex.degrees():
            A = self._A[n]
            k = len(A)
            # rows of A^{-1} are the dual basis vectors
            inv_cols = [solve(A, [F(1) if i == j else F(0) for i in range(k)], F) for j in range(k)]
            rows = [[inv_cols[j][i] for j in range(k)] for i in range(k)]
            adapted[-n] = [(rows[i], -self._levels[n][i]) for i in range(k)]
        return Filtration(D, F, adapted)


@dataclass
class Page:
    r: int
    ranks: dict[tuple[int, int], int]          # (level q, degree n) → rank
    reps: dict[tuple[int, int], list] = field(repr=False, default_factory=dict)
    dens: dict[tuple[int, int], list] = field(repr=False, default_factory=dict)
    d: dict[tuple[int, int], list] = field(repr=False, default_factory=dict)  # source (q, n) → matrix

    def rank(self, q: int, n: int) -> int:
        return self.ranks.get((q, n), 0)

    def d_rank(self, q: int, n: int, F: Field) -> int:
        M = self.d.get((q, n))
        return rank(M, F) if M else 0

    def total(self, n: int) -> int:
        return sum(v for (q, m), v in self.ranks.items() if m == n)


class SpectralSequence:
    def __init__(self, filtration: Filtration):
        self.filt = filtration
        self.F = filtration.field
        self.C = filtration.complex
        lo, hi = filtration.level_range()
        self.lo, self.hi = lo, hi
        self._pages: dict[int, Page] = {}

    # subspaces in adapted coordinates
    def _F(self, q: int, n: int) -> list[int]:
        return [j for j, lv in enumerate(self.filt.levels(n)) if lv <= q]

    def _unit(self, n: int, j: int):
        return [self.F(1) if i == j else self.F(0) for i in range(self.C.rank(n))]

    def Z(self, r: int, q: int, n: int) -> list:
        F = self.F
        cols = self._F(q, n)
        if not cols:
            return []
        if n - 1 not in self.filt._levels or n not in self.filt._d:
            return [self._unit(n, j) for j in cols]
        D = self.filt._d[n]
        bad_rows = [i for i, lv in enumerate(self.filt.levels(n - 1)) if lv > q - r]
        if not bad_rows:
            return [self._unit(n, j) for j in cols]
        M = [[D[i][j] for j in cols] for i in bad_rows]
        out = []
        for v in nullspace(M, F, len(cols)):
            w = [F(0)] * self.C.rank(n)
            for c, j in zip(v, cols):
                w[j] = c
            out.append(w)
        return out

    def _apply_d(self, n: int, v) -> list:
        D = self.filt._d[n]
        return [self.F(sum(D[i][j] * v[j] for j in range(len(v)))) for i in range(len(D))]

    def denominator(self, r: int, q: int, n: int) -> list:
        dim = self.C.rank(n)
        vecs = list(self.Z(r - 1, q - 1, n)) if r >= 1 else [self._unit(n, j) for j in self._F(q - 1, n)]
        if r >= 1 and n + 1 in self.filt._d:
            vecs += [self._apply_d(n + 1, v) for v in self.Z(r - 1, q + r - 1, n + 1)]
        return span_basis(vecs, self.F, dim)

    def page(self, r: int) -> Page:
        if r in self._pages:
            return self._pages[r]
        F = self.F
        ranks, reps, dens = {}, {}, {}
        for n in self.C.degrees():
            for q in range(self.lo, self.hi + 1):
                Z = self.Z(r, q, n) if r >= 0 else []
                den = self.denominator(r, q, n)
                R = complement(den, Z, F, self.C.rank(n))
                if R:
                    ranks[(q, n)] = len(R)
                reps[(q, n)] = R
                dens[(q, n)] = den
        page = Page(r, ranks, reps, dens)
        for (q, n), R in reps.items():
            if not R or n not in self.filt._d:
                continue
            tgt = (q - r, n - 1)
            TR, TD = reps.get(tgt, []), dens.get(tgt, [])
            if not TR:
                continue
            cols = []
            for v in R:
                sol = solve(TR + TD, self._apply_d(n, v), F)
                if sol is None:
                    raise BadFiltration(f"d^{r} image of a class at {(q, n)} left the page")
                cols.append(sol[: len(TR)])
            page.d[(q, n)] = [[cols[j][i] for j in range(len(cols))] for i in range(len(TR))]
        self._pages[r] = page
        return page

    def class_coords(self, r: int, q: int, n: int, vec) -> list:
        """Coordinates in E^r_{q,n} of an adapted-coordinate vector lying in Z^r_q."""
        page = self.page(r)
        R, D = page.reps.get((q, n), []), page.dens.get((q, n), [])
        sol = solve(R + D, vec, self.F)
        if sol is None:
            raise BadFiltration(f"vector is not in Z^{r} at {(q, n)}")
        return sol[: len(R)]

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1

    def infinity(self) -> Page:
        return self.page(self.length + 1)

    def check_pages(self, upto: int) -> list:
        """E^{r+1} = H(E^r, d^r) on ranks."""
        fails = []
        for r in range(upto):
            P, Q = self.page(r), self.page(r + 1)
            for n in self.C.degrees():
                for q in range(self.lo, self.hi + 1):
                    if n + 1 > self.C.bounds[1] or n - 1 < self.C.bounds[0]:
                        continue
                    out = P.d_rank(q, n, self.F)
                    inc = P.d_rank(q + r, n + 1, self.F)
                    if P.rank(q, n) - out - inc != Q.rank(q, n):
                        fails.append((r, q, n))
        return fails

    def converges(self) -> bool:
        """Σ_q E^∞_{q,n} = dim H_n in every degree where H_n is known."""
        E = self.infinity()
        return all(E.total(n) == homology_field(self.C, n, self.F) for n in self.C.homology_degrees())

    def table(self, r: int, display: bool = True) -> list[tuple[int, int, int, int]]:
        """Rows (p, q, n, rank) with p = n - q."""
        page = self.page(r)
        rows = [(n - q, q, n, v) for (q, n), v in page.ranks.items()]
        return sorted(rows, key=lambda t: (t[2], t[1]))


def format_page(ss: SpectralSequence, r: int, label: str | None = None) -> str:
    page = ss.page(r)
    lines = [f"E^{label or r}  ({ss.F.name})", "    p    q    n  rank  d-rank"]
    for p, q, n, v in ss.table(r):
        lines.append(f"{p:5d}{q:5d}{n:5d}{v:6d}{page.d_rank(q, n, ss.F):8d}")
    return "\n".join(lines)


# the augmentation ideal ------------------------------------------------------------------

@dataclass
class IdealPowers:
    """Powers 𝔞^p of the augmentation ideal of 𝕜[G_0], as subspaces of 𝕜[G_0]."""

    group: object
    field: Field
    powers: list[list]
    nilpotent: bool

    def level_of_power(self, p: int) -> int:
        return -p


def augmentation_powers(G, field: Field, limit: int = 32) -> IdealPowers:
    els = G.elements(0)
    k = len(els)
    F = field
    idx = {e: i for i, e in enumerate(els)}
    one = idx[G.identity(0)]

    def mul(a, b):
        out = [F(0)] * k
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    m = idx[G.mul(els[i], els[j])]
                    out[m] = F(out[m] + x * y)
        return out

    gens = []
    for i in range(k):
        if i != one:
            v = [F(0)] * k
            v[i], v[one] = F(1), F(-1)
            gens.append(v)
    powers = [[[F(1) if i == j else F(0) for i in range(k)] for j in range(k)], span_basis(gens, F, k)]
    while powers[-1] and len(powers) <= limit:
        nxt = span_basis([mul(a, b) for a in powers[-1] for b in powers[1]], F, k)
        if len(nxt) == len(powers[-1]):
            return IdealPowers(G, F, powers, nilpotent=False)
        powers.append(nxt)
    return IdealPowers(G, F, powers, nilpotent=not powers[-1])


def fibre_filtration(fibre, powers: IdealPowers, n: int, basis: Sequence) -> list[tuple[list, int]]:
    """Adapted basis of C_n(F) for F_{-p} = 𝔞^p C_n(F); levels -p."""
    G, F = powers.group, powers.field
    els = G.elements(0)
    idx = {b: i for i, b in enumerate(basis)}
    dim = len(basis)

    def act(a, y):
        out = [F(0)] * dim
        for i, c in enumerate(a):
            if c:
                g = G.element(els[i].name, n)
                out[idx[fibre.act(g, y)]] = F(out[idx[fibre.act(g, y)]] + c)
        return out

    spaces = [span_basis([act(a, y) for a in P for y in basis], F, dim) for P in powers.powers]
    adapted = []
    for p in range(len(spaces) - 1, -1, -1):
        deeper = spaces[p + 1] if p + 1 < len(spaces) else []
        have = [v for v, _ in adapted]
        for v in complement(deeper + have, spaces[p], F, dim):
            adapted.append((v, -p))
    return adapted


def twisted_filtration(T, max_deg: int, field: Field) -> tuple[Filtration, IdealPowers]:
    """F_{-p}(C(X) ⊗_t C(F)) = C(X) ⊗ 𝔞^p C(F) for a discrete group G."""
    if getattr(T.group, "elements", None) is None:
        raise NonField("the augmentation filtration needs a finite discrete group")
    C = T.to_complex(max_deg)
    powers = augmentation_powers(T.group, field)
    fib = {}
    adapted = {}
    for n in C.degrees():
        vecs = []
        for a in range(n + 1):
            xs = T.base.nondegenerate(a)
            ys = T.fibre_basis(n - a)
            if n - a not in fib:
                fib[n - a] = fibre_filtration(T.fibre, powers, n - a, ys)
            for x in xs:
                for w, lv in fib[n - a]:
                    v = [0] * C.rank(n)
                    for y, c in zip(ys, w):
                        if c:
                            v[C.index(n, (x, y))] = c
                    vecs.append((v, lv))
        adapted[n] = vecs
    return Filtration(C, field, adapted), powers


def base_degree_filtration(T, max_deg: int, field: Field) -> Filtration:
    """Filter by the degree of the C(X) factor."""
    C = T.to_complex(max_deg)
    return Filtration.from_levels(C, lambda key: key[0].dim, field)


# the graded twisting cochain -------------------------------------------------------------------

@dataclass
class GradedTwist:
    values: dict        # 1-simplex → coordinates in 𝔞/𝔞²
    well_defined: bool
    witnesses: list


def graded_twisting_cochain(T, field: Field) -> GradedTwist:
    """t_*: [c] ↦ [t(c)] ∈ 𝔞/𝔞² for 1-simplices, with the check t(dc) ∈ 𝔞² on 2-simplices."""
    G = T.group
    powers = augmentation_powers(G, field)
    els = G.elements(0)
    F = field
    k = len(els)
    a1 = powers.powers[1] if len(powers.powers) > 1 else []
    a2 = powers.powers[2] if len(powers.powers) > 2 else (a1 if not powers.nilpotent else [])
    quot = complement(a2, a1, F, k)

    def vec(chain: Chain):
        v = [F(0)] * k
        for g, c in chain.items():
            i = next(i for i, e in enumerate(els) if e.index == g.index)
            v[i] = F(v[i] + c)
        return v

    values = {}
    for c in T.base.nondegenerate(1):
        v = vec(T.t(c))
        sol = solve(quot + a2, v, F) if (quot or a2) else []
        values[c] = sol[: len(quot)] if sol is not None else None
    witnesses = []
    from .chains import boundary_of
    for c in T.base.nondegenerate(2):
        w = vec(boundary_of(T.base, c).map(T.t))
        if a2 and solve(a2, w, F) is None or (not a2 and any(w)):
            witnesses.append(c)
    return GradedTwist(values, not witnesses, witnesses)


def d1_against_delta(ss: SpectralSequence, T, field: Field) -> list:
    """Compare d^1 with -δ_{t_*} on E^1 (discrete fibre, so E^1 = H(X) ⊗ gr F).

    A class is represented by its top-level component; -δ_t of it is taken
    modulo F_{q-2}, which is where t and t_* agree.
    """
    page = ss.page(1)
    filt = ss.filt
    C = filt.complex
    fails = []
    for (q, n), R in page.reps.items():
        if not R or (q, n) not in page.d:
            continue
        for col, v in enumerate(R):
            top = [c if filt.levels(n)[j] == q else field(0) for j, c in enumerate(v)]
            chain = C.chain(n, filt.to_vector(n, top))
            img = Chain()
            for (x, y), c in chain.items():
                img.add_chain(T.delta_t(x, y), -c)
            w = filt.coords(n - 1, C.vector(n - 1, img) if img else [0] * C.rank(n - 1))
            w = [c if filt.levels(n - 1)[j] >= q - 1 else field(0) for j, c in enumerate(w)]
            got = ss.class_coords(1, q - 1, n - 1, w)
            want = [row[col] for row in page.d[(q, n)]]
            if [field(a) for a in got] != [field(a) for a in want]:
                fails.append(((q, n), col, got, want))
    return fails


def multiplicative(dual_filt: Filtration, algebra, max_deg: int) -> list:
    """G_s · G_t ⊂ G_{s+t} on adapted basis vectors of the dual filtration."""
    F = dual_filt.field
    fails = []
    for a in range(max_deg + 1):
        for b in range(max_deg + 1 - a):
            for u, lu in dual_filt.adapted[-a]:
                for v, lv in dual_filt.adapted[-b]:
                    w = algebra.mul(a, u, b, v)
                    co = dual_filt.coords(-(a + b), w)
                    bad = [j for j, c in enumerate(co) if F(c) != 0 and dual_filt.levels(-(a + b))[j] > lu + lv]
                    if bad:
                        fails.append((a, b, lu, lv))
    return fails
