"""Reduced cobar construction on normalized chains of a reduced simplicial set.

Words [c_1|...|c_m] have degree Σ (dim c_i - 1).  The diagonal is the
multiplicative extension of E(x) = [x]⊗1 + Σ_k Σ_p ±[x^p_1|...|x^p_k]⊗[x^p_{k+1}].
Also here: the Hom(C, A) calculus (cup product, differential, the
twisting-cochain check and the induced algebra map) and the map 𝔈.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .chains import (
    IDENTITY,
    Chain,
    aw_of,
    boundary,
    boundary_of,
    degree,
    pontryagin_product,
    tensor,
    tensor_map,
)
from .cuts import cut_faces, enumerate_cuts, epsilon
from .simplicial import Simplex, SimplicialError, SimplicialSet


class CobarError(SimplicialError, ValueError):
    pass


class NotOneReduced(CobarError):
    pass


@dataclass(frozen=True)
class CobarWord:
    letters: tuple[Simplex, ...] = ()

    def __post_init__(self):
        for c in self.letters:
            if c.dim == 0:
                raise CobarError(f"letter {c} has dimension 0")

    @property
    def deg(self) -> int:
        return sum(c.dim - 1 for c in self.letters)

    dim = deg

    @property
    def degenerate(self) -> bool:
        return any(c.degenerate for c in self.letters)

    def sort_key(self):
        return (self.deg, len(self.letters), tuple(c.sort_key() for c in self.letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "CobarWord") -> "CobarWord":
        return CobarWord(self.letters + other.letters)

    def format(self, fmt=str) -> str:
        if not self.letters:
            return "1"
        return "[" + "|".join(fmt(c) for c in self.letters) + "]"

    def __str__(self):
        return self.format()


UNIT = CobarWord()


def word(*letters: Simplex) -> CobarWord:
    return CobarWord(tuple(letters))


def words(X: SimplicialSet, max_deg: int, max_len: int | None = None) -> list[CobarWord]:
    """All words of degree <= max_deg (letters of dimension 1 need ``max_len``)."""
    letters = [x for d in range(1, max_deg + 2) for x in X.nondegenerate(d)]
    if any(x.dim == 1 for x in letters) and max_len is None:
        raise CobarError("degree-0 letters present; give max_len")
    out = [UNIT]
    frontier = [()]
    length = 0
    while frontier and (max_len is None or length < max_len):
        nxt = []
        for w in frontier:
            used = sum(c.dim - 1 for c in w)
            for c in letters:
                if used + c.dim - 1 <= max_deg:
                    nxt.append(w + (c,))
        frontier = nxt
        length += 1
        out.extend(CobarWord(w) for w in frontier)
    return out


def _require_reduced(X: SimplicialSet):
    if not X.reduced:
        raise CobarError(f"{X.name} is not reduced; the cobar construction here needs one vertex")


# dga structure -----------------------------------------------------------------

def cobar_product(a: Chain, b: Chain) -> Chain:
    out = Chain()
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            out.add(k1 * k2, c1 * c2)
    return out


def _letter_differential(X: SimplicialSet, c: Simplex) -> Chain:
    """d[c] = -[dc] + Σ_{0<k<n} (-1)^k [c(0..k)|c(k..n)]."""
    n = c.dim
    out = Chain()
    for f, coeff in boundary_of(X, c).items():
        if f.dim >= 1:
            out.add(word(f), -coeff)
    for k in range(1, n):
        a = X.subsimplex(c, tuple(range(k + 1)))
        b = X.subsimplex(c, tuple(range(k, n + 1)))
        out.add(word(a, b), (-1) ** k)
    return out


def cobar_differential(X: SimplicialSet, chain: Chain) -> Chain:
    _require_reduced(X)

    def d_word(w: CobarWord) -> Chain:
        out = Chain()
        sign = 0
        for i, c in enumerate(w.letters):
            pre, post = CobarWord(w.letters[:i]), CobarWord(w.letters[i + 1:])
            for mid, coeff in _letter_differential(X, c).items():
                out.add(pre * mid * post, -coeff if sign % 2 else coeff)
            sign += c.dim - 1
        return out

    return chain.map(d_word)


def augment_cobar(chain: Chain) -> int:
    return chain.coefficient(UNIT)


def tensor_product_mul(a: Chain, b: Chain, mul1: Callable, mul2: Callable) -> Chain:
    """(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa' ⊗ bb' on 2-factor tensor chains."""
    out = Chain()
    for (x, y), c1 in a.items():
        for (x2, y2), c2 in b.items():
            s = -1 if (degree(y) * degree(x2)) % 2 else 1
            left = mul1(Chain.basis(x), Chain.basis(x2))
            right = mul2(Chain.basis(y), Chain.basis(y2))
            out.add_chain(tensor(left, right), s * c1 * c2)
    return out


def omega_tensor_mul(a: Chain, b: Chain) -> Chain:
    return tensor_product_mul(a, b, cobar_product, cobar_product)


# diagonals --------------------------------------------------------------------------

def E_of(X: SimplicialSet, x: Simplex) -> Chain:
    """E(x) = Δ[x]; x a simplex of positive dimension."""
    out = Chain()
    out.add((word(x), UNIT), 1)
    for k in range(0, x.dim + 1):
        for p in enumerate_cuts(x.dim, k):
            parts = cut_faces(X, x, p)
            if any(f.degenerate for f in parts):
                continue
            out.add((CobarWord(parts[:-1]), word(parts[-1])), -1 if epsilon(p) else 1)
    return out


def cobar_diagonal(X: SimplicialSet, chain: Chain) -> Chain:
    _require_reduced(X)
    cache: dict = {}

    def diag(w: CobarWord) -> Chain:
        out = Chain([((UNIT, UNIT), 1)])
        for c in w.letters:
            if c not in cache:
                cache[c] = E_of(X, c)
            out = omega_tensor_mul(out, cache[c])
        return out

    return chain.map(diag)


def baues_of(X: SimplicialSet, x: Simplex) -> Chain:
    n = x.dim
    out = Chain()
    out.add((word(x), UNIT), 1)
    inner = list(range(1, n))
    for r in range(len(inner) + 1):
        for b in combinations(inner, r):
            bs = set(b)
            comp = [c for c in inner if c not in bs]
            inv = sum(1 for c in comp for beta in b if beta < c)
            kept = (0, *b, n)
            gaps = [
                X.subsimplex(x, tuple(range(u, v + 1)))
                for u, v in zip(kept, kept[1:])
                if v - u >= 2
            ]
            last = X.subsimplex(x, kept)
            out.add((CobarWord(tuple(gaps)), word(last)), -1 if inv % 2 else 1)
    return out


def baues_diagonal(X: SimplicialSet, chain: Chain) -> Chain:
    if not X.one_reduced:
        raise NotOneReduced(f"{X.name} is not 1-reduced")

    def diag(w: CobarWord) -> Chain:
        out = Chain([((UNIT, UNIT), 1)])
        for c in w.letters:
            out = omega_tensor_mul(out, baues_of(X, c))
        return out

    return chain.map(diag)


def frak_E(X: SimplicialSet, c: Simplex) -> Chain:
    """𝔈(c) = 1⊗c + Σ_{k≥1} Σ_p (-1)^{ε(p)+deg} [x^p_1|...|x^p_k] ⊗ x^p_{k+1}."""
    out = Chain()
    out.add((UNIT, c), 1)
    for k in range(1, c.dim + 1):
        for p in enumerate_cuts(c.dim, k):
            parts = cut_faces(X, c, p)
            if any(f.degenerate for f in parts):
                continue
            w = CobarWord(parts[:-1])
            out.add((w, parts[-1]), -1 if (epsilon(p) + w.deg) % 2 else 1)
    return out


# Hom(C, A) --------------------------------------------------------------------------

@dataclass
class Algebra:
    """An augmented dga given by its structure maps on chains."""

    name: str
    mul: Callable[[Chain, Chain], Chain]
    d: Callable[[Chain], Chain]
    unit: Callable[[], Chain]
    augment: Callable[[Chain], int]
    diagonal: Callable[[Chain], Chain] | None = None

    def product(self, chains: Iterable[Chain]) -> Chain:
        out = self.unit()
        for c in chains:
            out = self.mul(out, c)
        return out


def cobar_algebra(X: SimplicialSet) -> Algebra:
    return Algebra(
        f"Ω C({X.name})",
        cobar_product,
        lambda ch: cobar_differential(X, ch),
        lambda: Chain.basis(UNIT),
        augment_cobar,
        lambda ch: cobar_diagonal(X, ch),
    )


def group_algebra(G) -> Algebra:
    from .chains import aw, augment

    return Algebra(
        f"C({G.name})",
        lambda a, b: pontryagin_product(G, a, b),
        lambda ch: boundary(G, ch),
        lambda: Chain.basis(G.identity(0)),
        augment,
        lambda ch: aw(G, ch),
    )


@dataclass
class Cochain:
    """A homogeneous map from basis simplices to chains of an algebra."""

    degree: int
    fn: Callable[[Simplex], Chain]

    def __call__(self, x) -> Chain:
        return self.fn(x)

    def on(self, chain: Chain) -> Chain:
        return chain.map(self.fn)


def cup(f: Cochain, g: Cochain, X, A: Algebra) -> Cochain:
    def fn(x):
        out = Chain()
        for (a, b), c in aw_of(X, x).items():
            fa, gb = f(a), g(b)
            if not fa or not gb:
                continue
            s = -1 if (g.degree * a.dim) % 2 else 1
            out.add_chain(A.mul(fa, gb), s * c)
        return out

    return Cochain(f.degree + g.degree, fn)


def hom_differential(f: Cochain, X, A: Algebra) -> Cochain:
    def fn(x):
        out = A.d(f(x))
        out.add_chain(f.on(boundary_of(X, x)), 1 if f.degree % 2 else -1)
        return out

    return Cochain(f.degree - 1, fn)


def unit_cochain(X, A: Algebra) -> Cochain:
    return Cochain(0, lambda x: A.unit() if x.dim == 0 else Chain())


@dataclass
class TwistingReport:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def check_twisting(t: Cochain, X, A: Algebra, max_dim: int, basis=None) -> TwistingReport:
    """d(t) = t∪t on every basis simplex up to ``max_dim``, plus tι = 0 and εt = 0."""
    dt = hom_differential(t, X, A)
    tt = cup(t, t, X, A)
    fails = []
    checked = 0
    if getattr(X, "basepoint", None) is not None and t(X.point()):
        fails.append(("t(basepoint) ≠ 0", X.point(), t(X.point()), Chain()))
    simplices = basis if basis is not None else X.basis(max_dim)
    for x in simplices:
        if x.dim > max_dim:
            continue
        checked += 1
        lhs, rhs = dt(x), tt(x)
        if lhs != rhs:
            fails.append(("d(t) ≠ t∪t", x, lhs, rhs))
        if A.augment(t(x)):
            fails.append(("ε t ≠ 0", x, t(x), Chain()))
    return TwistingReport(checked, fails)


def canonical_cochain(X) -> Cochain:
    return Cochain(-1, lambda x: Chain.basis(word(x)) if x.dim >= 1 else Chain())


def induced_map(t: Cochain, A: Algebra) -> Callable[[Chain], Chain]:
    """The dga map Ω C → A, [c_1|...|c_k] ↦ t(c_1)⋯t(c_k)."""
    cache: dict = {}

    def tc(c):
        if c not in cache:
            cache[c] = t(c)
        return cache[c]

    def on_word(w: CobarWord) -> Chain:
        return A.product(tc(c) for c in w.letters)

    return lambda chain: chain.map(on_word)


def frak_F(X, c: Simplex, f: Callable[[Chain], Chain]) -> Chain:
    """𝔉 = (f ⊗ 1) 𝔈, a chain with keys (A-basis, simplex)."""
    return tensor_map(frak_E(X, c), [(1, lambda w: f(Chain.basis(w)), 0), IDENTITY])
