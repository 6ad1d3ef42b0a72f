"""Normalized chains with integer coefficients.

A :class:`Chain` is a dict from basis elements to nonzero coefficients.
Basis elements are simplices (anything with ``deg``, ``degenerate`` and
``sort_key``) or flat tuples of them for tensor products.  Degenerate
elements are dropped on insertion, which is what makes the chains
normalized.  Koszul signs live in the operations, never in the keys.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .simplicial import NoBasepoint, Prod


def is_degenerate(key) -> bool:
    if isinstance(key, tuple):
        return any(is_degenerate(k) for k in key)
    return key.degenerate


def degree(key) -> int:
    if isinstance(key, tuple):
        return sum(degree(k) for k in key)
    return key.deg


def sort_key(key):
    if isinstance(key, tuple):
        return (len(key),) + tuple(sort_key(k) for k in key)
    return key.sort_key()


def _flat(key) -> tuple:
    return key if isinstance(key, tuple) else (key,)


class Chain:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        self.terms: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                self.add(k, c)

    @classmethod
    def basis(cls, key, coeff=1) -> "Chain":
        return cls([(key, coeff)])

    def add(self, key, coeff) -> None:
        if not coeff or is_degenerate(key):
            return
        v = self.terms.get(key, 0) + coeff
        if v:
            self.terms[key] = v
        else:
            del self.terms[key]

    def add_chain(self, other: "Chain", scale=1) -> None:
        for k, c in other.terms.items():
            self.add(k, scale * c)

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def coefficient(self, key):
        return self.terms.get(key, 0)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kc: sort_key(kc[0]))

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Chain) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = Chain(self.terms)
        out.add_chain(other)
        return out

    def __sub__(self, other):
        out = Chain(self.terms)
        out.add_chain(other, -1)
        return out

    def __neg__(self):
        return Chain((k, -c) for k, c in self.terms.items())

    def __mul__(self, scalar):
        return Chain((k, scalar * c) for k, c in self.terms.items())

    __rmul__ = __mul__

    def map(self, fn: Callable[[object], "Chain"]) -> "Chain":
        """Linear extension of a basis map."""
        out = Chain()
        for k, c in self.terms.items():
            out.add_chain(fn(k), c)
        return out

    def degrees(self) -> set[int]:
        return {degree(k) for k in self.terms}

    def part(self, deg: int) -> "Chain":
        return Chain((k, c) for k, c in self.terms.items() if degree(k) == deg)

    def mod(self, p: int) -> "Chain":
        return Chain((k, c % p) for k, c in self.terms.items())

    def __repr__(self):
        return f"Chain({format_chain(self)})"

    def __str__(self):
        return format_chain(self)


ZERO = Chain()


def format_key(key, fmt=str) -> str:
    if isinstance(key, tuple):
        return " ⊗ ".join(fmt(k) for k in key) if key else "()"
    return fmt(key)


def format_chain(chain: Chain, fmt=str) -> str:
    if not chain:
        return "0"
    parts = []
    for k, c in chain.sorted_items():
        parts.append(f"{'+' if c > 0 else '-'}{abs(c)}·[{format_key(k, fmt)}]")
    return " ".join(parts)


# tensor products ---------------------------------------------------------------

def tensor(*chains: Chain) -> Chain:
    out = Chain([((), 1)])
    for ch in chains:
        nxt = Chain()
        for k1, c1 in out.terms.items():
            for k2, c2 in ch.terms.items():
                nxt.add(k1 + _flat(k2), c1 * c2)
        out = nxt
    return out


def ident(key) -> Chain:
    return Chain.basis(key)


IDENTITY = (1, ident, 0)


def tensor_map(chain: Chain, maps: Sequence[tuple[int, Callable, int]]) -> Chain:
    """Apply f_1 ⊗ ... ⊗ f_m with the Koszul rule.

    Each entry is ``(arity, fn, degree)``; ``fn`` receives one basis element
    (arity 1) or a tuple of ``arity`` elements and returns a Chain.
    """
    out = Chain()
    total = sum(a for a, _, _ in maps)
    for key, c in chain.terms.items():
        key = _flat(key)
        if len(key) != total:
            raise ValueError(f"tensor_map: key of length {len(key)}, maps expect {total}")
        sign = 0
        pos = 0
        before = 0
        pieces = []
        for arity, fn, fdeg in maps:
            group = key[pos:pos + arity]
            pos += arity
            sign += fdeg * before
            before += sum(degree(k) for k in group)
            pieces.append(fn(group[0] if arity == 1 else group))
        out.add_chain(tensor(*pieces), -c if sign % 2 else c)
    return out


def tensor_differential(chain: Chain, diffs: Sequence[Callable]) -> Chain:
    """d on a tensor product of complexes, each with differential ``diffs[i]``."""
    out = Chain()
    for i, d in enumerate(diffs):
        maps = [IDENTITY] * len(diffs)
        maps[i] = (1, d, -1)
        out.add_chain(tensor_map(chain, maps))
    return out


def transpose(chain: Chain, split: int) -> Chain:
    """T: a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a where a is the first ``split`` factors."""
    out = Chain()
    for k, c in chain.terms.items():
        a, b = k[:split], k[split:]
        s = degree(a) * degree(b)
        out.add(b + a, -c if s % 2 else c)
    return out


# simplicial chain operations -----------------------------------------------------

def boundary_of(obj, x) -> Chain:
    out = Chain()
    if x.dim == 0:
        return out
    for i in range(x.dim + 1):
        out.add(obj.face(i, x), (-1) ** i)
    return out


def boundary(obj, chain: Chain) -> Chain:
    return chain.map(lambda x: boundary_of(obj, x))


def last_face(obj, x, times=1):
    for _ in range(times):
        x = obj.face(x.dim, x)
    return x


def first_face(obj, x, times=1):
    for _ in range(times):
        x = obj.face(0, x)
    return x


def aw_of(obj, x) -> Chain:
    n = x.dim
    out = Chain()
    for k in range(n + 1):
        out.add((last_face(obj, x, n - k), first_face(obj, x, k)), 1)
    return out


def aw(obj, chain: Chain) -> Chain:
    return chain.map(lambda x: aw_of(obj, x))


@lru_cache(maxsize=None)
def shuffle_terms(qs: tuple[int, ...]) -> tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]:
    """Signed complements (sign, (ᾱ_1, ..., ᾱ_k)) over Shuff(q_1, ..., q_k)."""
    q = sum(qs)
    out = []
    for w in _label_words(qs, tuple(range(q))):
        inv = sum(1 for a in range(q) for b in range(a + 1, q) if w[a] > w[b])
        comps = tuple(tuple(p for p in range(q) if w[p] != s) for s in range(len(qs)))
        out.append((-1 if inv % 2 else 1, comps))
    return tuple(out)


def _label_words(qs, free, s=0):
    """Assignments position -> factor with q_s positions for factor s."""
    if s == len(qs):
        yield {}
        return
    for chosen in combinations(free, qs[s]):
        rest = tuple(p for p in free if p not in chosen)
        for tail in _label_words(qs, rest, s + 1):
            w = dict(tail)
            w.update((p, s) for p in chosen)
            yield w


def _degen_all(obj, js, x):
    for j in js:
        x = obj.degeneracy(j, x)
    return x


def shuffle_key(objs: Sequence, key: tuple) -> Chain:
    out = Chain()
    qs = tuple(k.dim for k in key)
    for sign, comps in shuffle_terms(qs):
        parts = tuple(_degen_all(o, js, k) for o, js, k in zip(objs, comps, key))
        out.add(Prod(parts), sign)
    return out


def shuffle(objs: Sequence, chain: Chain) -> Chain:
    """Eilenberg-Zilber shuffle map into the product of ``objs``."""
    return chain.map(lambda k: shuffle_key(objs, _flat(k)))


def pontryagin_key(group, key: tuple) -> Chain:
    if not key:
        return Chain.basis(group.identity(0))
    out = Chain()
    qs = tuple(k.dim for k in key)
    for sign, comps in shuffle_terms(qs):
        parts = [_degen_all(group, js, k) for js, k in zip(comps, key)]
        out.add(group.product(parts), sign)
    return out


def pontryagin(group, chain: Chain) -> Chain:
    """m-fold Pontryagin product on a chain of m-tuples of group simplices."""
    return chain.map(lambda k: pontryagin_key(group, _flat(k)))


def pontryagin_product(group, *factors: Chain) -> Chain:
    return pontryagin(group, tensor(*factors))


def augment(chain: Chain) -> int:
    """ε: vertices (and tuples of vertices) go to 1, everything else to 0."""
    return sum(c for k, c in chain.terms.items() if degree(k) == 0)


def coaugment(space, n: int = 1) -> Chain:
    if getattr(space, "basepoint", None) is None:
        raise NoBasepoint(getattr(space, "name", "?"))
    return Chain.basis(space.point(), n)
