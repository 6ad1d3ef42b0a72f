"""Szczarba operators, the twisting cochain t and the twisted shuffle map ψ.

Notation: S_{n,l} is the set of sequences (i_1, ..., i_l) with
0 <= i_s <= n - s, and S_n = S_{n,n}.  D^k_i are the simplicial operators
defined by the usual three-case recursion; σ = τ^{-1}.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

from .bundles import Bundle, GroupFibre, TwistedProduct, TwistingFunction
from .chains import Chain, shuffle_terms
from .simplicial import (
    IDENTITY,
    OperatorWord,
    Prod,
    Simplex,
    SimplicialError,
    apply_word,
    degen_op,
    face_op,
)


class InvalidCase(SimplicialError, ValueError):
    pass


class NotInSnp(SimplicialError, ValueError):
    pass


# index sequences ------------------------------------------------------------------

@lru_cache(maxsize=None)
def index_sequences(n: int, l: int | None = None) -> tuple[tuple[int, ...], ...]:
    """S_{n,l} in lexicographic order."""
    l = n if l is None else l
    if l < 0 or l > max(n, 0):
        return ((),) if l == 0 else ()
    return tuple(product(*(range(n - s + 1) for s in range(1, l + 1))))


def in_S(i: Sequence[int], n: int) -> bool:
    return all(0 <= v <= n - s for s, v in enumerate(i, start=1))


def seq_degree(i: Sequence[int]) -> int:
    return sum(i)


# D operators -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def d_operator(k: int, i: tuple[int, ...]) -> OperatorWord:
    """D^k_i as an operator word."""
    if not i:
        if k != 0:
            raise InvalidCase(f"D^{k} of the empty sequence")
        return IDENTITY
    if not 0 <= k <= len(i):
        raise InvalidCase(f"D^{k}_{i}: k out of range")
    i1, rest = i[0], tuple(i[1:])
    if k < i1:
        return d_operator(k, rest).derived() @ OperatorWord((degen_op(0), face_op(i1 - k)))
    if k == i1:
        return d_operator(k, rest).derived()
    return d_operator(k - 1, rest).derived() @ OperatorWord((degen_op(0),))


# Szczarba operators ------------------------------------------------------------------

class _Sigmas:
    """σ((∂_0)^k x), computed once per simplex."""

    def __init__(self, twist: TwistingFunction, x: Simplex):
        self.values = []
        X = twist.base
        y = x
        for _ in range(x.dim):
            self.values.append(twist.sigma(y))
            y = X.face(0, y)


def sz(twist: TwistingFunction, i: Sequence[int], x: Simplex, _sig: _Sigmas | None = None):
    """Sz_i x = Π_k D^k_i σ((∂_0)^k x) ∈ G_{n-1} for i ∈ S_{n-1}."""
    n = x.dim
    i = tuple(i)
    if n < 1 or len(i) != n - 1 or not in_S(i, n - 1):
        raise InvalidCase(f"Sz_{i} on a {n}-simplex")
    G = twist.group
    sig = _sig or _Sigmas(twist, x)
    parts = [apply_word(G, d_operator(k, i), sig.values[k]) for k in range(n)]
    return G.product(parts)


def szczarba_terms(twist: TwistingFunction, x: Simplex) -> list[tuple[tuple[int, ...], int, object]]:
    """(i, sign, Sz_i x) for i ∈ S_{n-1}, in lexicographic order."""
    n = x.dim
    if n < 2:
        raise InvalidCase("terms are listed for n >= 2")
    sig = _Sigmas(twist, x)
    return [(i, -1 if seq_degree(i) % 2 else 1, sz(twist, i, x, sig)) for i in index_sequences(n - 1)]


def szczarba_t(twist: TwistingFunction, x: Simplex) -> Chain:
    n = x.dim
    G = twist.group
    if n == 0:
        return Chain()
    if n == 1:
        return Chain([(twist.sigma(x), 1), (G.identity(0), -1)])
    out = Chain()
    for _, sign, g in szczarba_terms(twist, x):
        out.add(g, sign)
    return out


class SzczarbaCochain:
    """t as a memoized cochain C(X) → C(G)."""

    degree = -1

    def __init__(self, twist: TwistingFunction):
        self.twist = twist
        self._cache: dict = {}

    def __call__(self, x: Simplex) -> Chain:
        if x not in self._cache:
            self._cache[x] = szczarba_t(self.twist, x)
        return self._cache[x]

    def on(self, chain: Chain) -> Chain:
        return chain.map(self)


def hat_sz(twist: TwistingFunction, i: Sequence[int], x: Simplex, _sig: _Sigmas | None = None) -> Prod:
    """hatSz_i x = (D^0_i x, Π_{k=1}^n D^k_i σ((∂_0)^{k-1} x)) for i ∈ S_n."""
    n = x.dim
    i = tuple(i)
    if len(i) != n or not in_S(i, n):
        raise InvalidCase(f"hatSz_{i} on a {n}-simplex")
    G = twist.group
    X = twist.base
    if n == 0:
        return Prod((x, G.identity(0)))
    sig = _sig or _Sigmas(twist, x)
    parts = [apply_word(G, d_operator(k, i), sig.values[k - 1]) for k in range(1, n + 1)]
    return Prod((apply_word(X, d_operator(0, i), x), G.product(parts)))


def psi_key(bundle: Bundle, x: Simplex, y) -> Chain:
    """ψ(x ⊗ y) = Σ_i (-1)^{deg i} (id, μ)_* shuffle(hatSz_i x ⊗ y)."""
    twist, F, G, X = bundle.twist, bundle.fibre, bundle.group, bundle.base
    n, m = x.dim, y.dim
    sig = _Sigmas(twist, x) if n else None
    terms = shuffle_terms((n, m))
    out = Chain()
    for i in index_sequences(n):
        h = hat_sz(twist, i, x, sig)
        base_sign = -1 if seq_degree(i) % 2 else 1
        for sign, (a1, a2) in terms:
            xx, gg = h.parts
            for j in a1:
                xx = X.degeneracy(j, xx)
                gg = G.degeneracy(j, gg)
            yy = y
            for j in a2:
                yy = F.degeneracy(j, yy)
            out.add(Prod((xx, F.act(gg, yy))), base_sign * sign)
    return out


def psi(bundle: Bundle, chain: Chain) -> Chain:
    return chain.map(lambda k: psi_key(bundle, k[0], k[1]))


# the bijection Ψ_p ----------------------------------------------------------------------

def _removals(n: int, i: Sequence[int]) -> tuple[list[int], list[int]]:
    cur = list(range(n + 1))
    removed = []
    for v in i:
        if not 0 <= v + 1 < len(cur):
            raise NotInSnp(f"{tuple(i)}: index {v} out of range")
        removed.append(cur.pop(v + 1))
    return removed, cur


def S_of_p(n: int, p: Sequence[int]) -> list[tuple[int, ...]]:
    """S_{n-1}(p): sequences in S_{n-1,l} removing exactly the vertices missing from p."""
    p = tuple(p)
    l = n - (len(p) - 1)
    return [i for i in index_sequences(n - 1, l) if _removals(n, i)[1] == list(p)]


def Psi_p(p: Sequence[int], i: Sequence[int]):
    """Decode the removal order: returns (α_1..α_k, j_1..j_k)."""
    p = tuple(p)
    n = p[-1]
    k = len(p) - 1
    removed, rest = _removals(n, i)
    if rest != list(p):
        raise NotInSnp(f"{tuple(i)} does not cut [0..{n}] down to {p}")
    alphas = [[] for _ in range(k)]
    js = [[] for _ in range(k)]
    local = [list(range(p[s], p[s + 1] + 1)) for s in range(k)]
    for step, v in enumerate(removed):
        s = next(s for s in range(k) if p[s] < v < p[s + 1])
        alphas[s].append(step)
        pos = local[s].index(v)
        js[s].append(pos - 1)
        local[s].pop(pos)
    return tuple(tuple(a) for a in alphas), tuple(tuple(j) for j in js)


def inverse_Psi_p(p: Sequence[int], alphas, js) -> tuple[int, ...]:
    p = tuple(p)
    k = len(p) - 1
    l = sum(len(a) for a in alphas)
    cur = list(range(p[-1] + 1))
    local = [list(range(p[s], p[s + 1] + 1)) for s in range(k)]
    nxt = [0] * k
    out = []
    for step in range(l):
        s = next(s for s in range(k) if step in alphas[s])
        pos = js[s][nxt[s]] + 1
        nxt[s] += 1
        v = local[s].pop(pos)
        idx = cur.index(v)
        cur.pop(idx)
        out.append(idx - 1)
    return tuple(out)


def shuffle_sign_exponent(alphas) -> int:
    flat = [a for al in alphas for a in sorted(al)]
    return sum(1 for x in range(len(flat)) for y in range(x + 1, len(flat)) if flat[x] > flat[y]) % 2


def degree_congruence_holds(p: Sequence[int], i: Sequence[int]) -> bool:
    alphas, js = Psi_p(p, i)
    q = [p[s + 1] - p[s] for s in range(len(p) - 1)]
    rhs = shuffle_sign_exponent(alphas) + sum(map(sum, js)) + sum(s * (qq - 1) for s, qq in enumerate(q))
    return (seq_degree(i) - rhs) % 2 == 0


# degeneracies ------------------------------------------------------------------------------

@lru_cache(maxsize=None)
def Phi(i: tuple[int, ...], p: int) -> tuple[tuple[int, ...], int]:
    i = tuple(i)
    if not i:
        raise InvalidCase("Φ needs n >= 1")
    i1, rest = i[0], i[1:]
    if p < i1:
        j, q = Phi(rest, p)
        return (i1 - 1, *j), q + 1
    if p in (i1, i1 + 1):
        return rest, 0
    j, q = Phi(rest, p - 1)
    return (i1, *j), q + 1


# printing ---------------------------------------------------------------------------------

def format_group_word(g, X) -> str:
    """σ(vertex list) notation for loop-group words over a standard-simplex quotient."""
    letters = getattr(g, "letters", None)
    if letters is None:
        return str(g)
    if not letters:
        return "1"
    out = []
    for y, e in letters:
        vs = X.vertex_list(y)
        label = "".join(map(str, vs)) if vs is not None else str(y)
        out.append(f"σ({label})" if e == -1 else f"σ({label})^-1")
    return "".join(out)


def format_t(twist: TwistingFunction, x: Simplex) -> str:
    """t(x) term by term in lexicographic i-order, vertex notation."""
    X = twist.base
    name = X.format_simplex(x)
    if x.dim == 0:
        return f"t({name}) = 0"
    if x.dim == 1:
        return f"t({name}) = + {format_group_word(twist.sigma(x), X)} - 1"
    parts = []
    for _, sign, g in szczarba_terms(twist, x):
        if g.degenerate:
            continue
        parts.append(f"{'+' if sign > 0 else '-'} {format_group_word(g, X)}")
    return f"t({name}) = " + " ".join(parts) if parts else f"t({name}) = 0"


# identity checks ---------------------------------------------------------------------------
# Each returns a list of failures (empty means the identity held everywhere it was tried).

def _degen_set(obj, js, a):
    for j in sorted(js):
        a = obj.degeneracy(j, a)
    return a


def _last_face(obj, a, times):
    for _ in range(times):
        a = obj.face(a.dim, a) if not isinstance(a, Prod) else obj.face(a.parts[0].dim, a)
    return a


def _first_face(obj, a, times):
    for _ in range(times):
        a = obj.face(0, a)
    return a


def check_degeneracy_descent(twist: TwistingFunction, max_n: int, simplices=None) -> list:
    """Sz_i s_p x = s_q Sz_j x and hatSz_i s_p x = s_q hatSz_j x."""
    X, G = twist.base, twist.group
    P = TwistedProduct(X, GroupFibre(G), twist)
    fails = []
    pool = simplices if simplices is not None else X.basis(max_n)
    for x in pool:
        n = x.dim
        if n > max_n:
            continue
        for p in range(n + 1):
            y = X.degeneracy(p, x)
            if n >= 1:
                for i in index_sequences(n):
                    j, q = Phi(i, p)
                    lhs, rhs = sz(twist, i, y), G.degeneracy(q, sz(twist, j, x))
                    if lhs != rhs:
                        fails.append(("Sz", x, i, p, lhs, rhs))
            for i in index_sequences(n + 1):
                j, q = Phi(i, p + 1)
                lhs, rhs = hat_sz(twist, i, y), P.degeneracy(q, hat_sz(twist, j, x))
                if lhs != rhs:
                    fails.append(("hatSz", x, i, p, lhs, rhs))
    return fails


def check_d_operator_commutation(max_n: int) -> list:
    """Both parts of the D^k_i / Φ commutation, tested on universal simplices."""
    from .presets import standard_simplex

    fails = []
    cache = {}

    def top(m):
        if m not in cache:
            D = standard_simplex(m)
            cache[m] = (D, D.simplex("v" + "".join(map(str, range(m + 1)))))
        return cache[m]

    for n in range(1, max_n + 1):
        for i in index_sequences(n):
            for p in range(n + 1):
                j, q = Phi(i, p)
                for k in range(p):
                    for m in range(max(n - k - 1, 0), max(n - k - 1, 0) + 2):
                        D, x = top(m)
                        lhs = apply_word(D, d_operator(k, i), D.degeneracy(p - 1 - k, x))
                        rhs = D.degeneracy(q, apply_word(D, d_operator(k, j), x))
                        if lhs != rhs:
                            fails.append(("i", i, p, k, m))
                for k in range(p + 1, n + 1):
                    for m in range(n - k, n - k + 2):
                        D, x = top(m)
                        lhs = apply_word(D, d_operator(k, i), x)
                        rhs = D.degeneracy(q, apply_word(D, d_operator(k - 1, j), x))
                        if lhs != rhs:
                            fails.append(("ii", i, p, k, m))
    return fails


def check_sz_faces(twist: TwistingFunction, max_n: int, simplices=None) -> list:
    """Front and back faces of Sz_i x through the removal-order decoding."""
    X, G = twist.base, twist.group
    fails = []
    pool = simplices if simplices is not None else X.basis(max_n)
    for x in pool:
        n = x.dim
        if n < 1 or n > max_n:
            continue
        for i in index_sequences(n - 1):
            g = sz(twist, i, x)
            for k in range(1, n + 1):
                l = n - k
                i1, i2 = i[:l], i[l:]
                p = tuple(_removals(n, i1)[1])
                rhs1 = sz(twist, i2, X.subsimplex(x, p))
                if _first_face(G, g, l) != rhs1:
                    fails.append(("front", x, i, k))
                alphas, js = Psi_p(p, i1)
                parts = []
                for s in range(k):
                    bar = set(range(l)) - set(alphas[s])
                    piece = sz(twist, js[s], X.subsimplex(x, tuple(range(p[s], p[s + 1] + 1))))
                    parts.append(_degen_set(G, bar, piece))
                if _last_face(G, g, k - 1) != G.product(parts, level=l):
                    fails.append(("back", x, i, k))
    return fails


def check_hat_sz_faces(twist: TwistingFunction, max_n: int, simplices=None) -> list:
    X, G = twist.base, twist.group
    P = TwistedProduct(X, GroupFibre(G), twist)
    fails = []
    pool = simplices if simplices is not None else X.basis(max_n)
    for x in pool:
        n = x.dim
        if n > max_n:
            continue
        for i in index_sequences(n):
            h = hat_sz(twist, i, x)
            for k in range(n + 1):
                l = n - k
                i1, i2 = i[:l], i[l:]
                p = tuple(_removals(n + 1, i1)[1])
                rhs1 = hat_sz(twist, i2, X.subsimplex(x, tuple(v - 1 for v in p[1:])))
                if _first_face(P, h, l) != rhs1:
                    fails.append(("front", x, i, k))
                alphas, js = Psi_p(p, i1)
                bar = set(range(l)) - set(alphas[0])
                head = _degen_set(P, bar, hat_sz(twist, js[0], X.subsimplex(x, tuple(range(p[1])))))
                parts = []
                for s in range(1, k + 1):
                    bar = set(range(l)) - set(alphas[s])
                    piece = sz(twist, js[s], X.subsimplex(x, tuple(range(p[s] - 1, p[s + 1]))))
                    parts.append(_degen_set(G, bar, piece))
                rhs2 = P.right_act(head, G.product(parts, level=l))
                if _last_face(P, h, k) != rhs2:
                    fails.append(("back", x, i, k))
    return fails


def check_psi_index_sets(max_n: int) -> list:
    """Ψ_p round trip, bijectivity onto the product of shuffles and S's, and the degree congruence."""
    from itertools import combinations
    from math import comb, factorial, prod

    fails = []
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            for inner in combinations(range(1, n), k - 1):
                p = (0, *inner, n)
                q = [p[s + 1] - p[s] for s in range(k)]
                members = S_of_p(n, p)
                images = set()
                for i in members:
                    img = Psi_p(p, i)
                    images.add(img)
                    if inverse_Psi_p(p, *img) != i:
                        fails.append(("roundtrip", p, i))
                    if not degree_congruence_holds(p, i):
                        fails.append(("degree", p, i))
                # |Shuff(q_1-1, ..., q_k-1)| · Π |S_{q_s-1}|
                l = n - k
                multinom, rest = 1, l
                for qq in q:
                    multinom *= comb(rest, qq - 1)
                    rest -= qq - 1
                expected = multinom * prod(factorial(qq - 1) for qq in q)
                if len(images) != len(members) or len(members) != expected:
                    fails.append(("count", p, len(members), expected))
    return fails


