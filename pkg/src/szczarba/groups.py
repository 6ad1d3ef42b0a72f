"""Simplicial groups: finite discrete groups and the truncated Kan loop group."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Sequence

from .simplicial import (
    IndexOutOfRange,
    PresentationError,
    Simplex,
    SimplicialError,
    SimplicialSet,
    degenerate_simplex,
)


class LevelMismatch(SimplicialError, ValueError):
    pass


class GroupMismatch(SimplicialError, ValueError):
    pass


class Unbounded(SimplicialError, ValueError):
    pass


class SimplicialGroup:
    name: str

    def identity(self, level: int):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def face(self, i: int, a):
        raise NotImplementedError

    def degeneracy(self, i: int, a):
        raise NotImplementedError

    def product(self, elems: Sequence, level: int | None = None):
        if not elems:
            if level is None:
                raise LevelMismatch("empty product needs a level")
            return self.identity(level)
        out = elems[0]
        for e in elems[1:]:
            out = self.mul(out, e)
        return out

    def power(self, a, k: int):
        base = a if k >= 0 else self.inv(a)
        out = self.identity(a.level)
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def act(self, g, y):
        """Left action on itself."""
        return self.mul(g, y)


# finite discrete ---------------------------------------------------------------

@dataclass(frozen=True)
class FiniteElement:
    group: str
    index: int
    name: str
    level: int = 0

    @property
    def dim(self) -> int:
        return self.level

    deg = dim

    @property
    def degenerate(self) -> bool:
        return self.level >= 1

    @property
    def degeneracy_indices(self) -> frozenset[int]:
        return frozenset(range(self.level))

    def sort_key(self):
        return (self.level, self.index)

    def __str__(self):
        return self.name


class FiniteGroup(SimplicialGroup):
    """A finite group viewed as a constant simplicial group."""

    def __init__(self, name: str, elements: Sequence[str], table: Sequence[Sequence[int]]):
        self.name = name
        self.names = list(elements)
        self.table = [list(r) for r in table]
        n = len(self.names)
        if len(set(self.names)) != n or len(self.table) != n or any(len(r) != n for r in self.table):
            raise PresentationError(f"{name}: malformed multiplication table")
        units = [e for e in range(n) if all(self.table[e][a] == a == self.table[a][e] for a in range(n))]
        if not units:
            raise PresentationError(f"{name}: no unit")
        self.unit = units[0]
        for a, b, c in iproduct(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise PresentationError(f"{name}: not associative at {self.names[a]},{self.names[b]},{self.names[c]}")
        self.inverses = []
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == self.unit]
            if not inv:
                raise PresentationError(f"{name}: {self.names[a]} has no inverse")
            self.inverses.append(inv[0])

    @classmethod
    def cyclic(cls, m: int, name: str | None = None, gen: str = "g") -> "FiniteGroup":
        names = ["1"] + ([gen] if m == 2 else [f"{gen}{k}" for k in range(1, m)])
        return cls(name or f"Z{m}", names, [[(a + b) % m for b in range(m)] for a in range(m)])

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls("trivial", ["1"], [[0]])

    def __len__(self):
        return len(self.names)

    def element(self, name: str, level: int = 0) -> FiniteElement:
        try:
            return FiniteElement(self.name, self.names.index(name), name, level)
        except ValueError:
            raise PresentationError(f"{name!r} is not an element of {self.name}") from None

    def _el(self, idx: int, level: int) -> FiniteElement:
        return FiniteElement(self.name, idx, self.names[idx], level)

    def _own(self, a: FiniteElement):
        if a.group != self.name:
            raise GroupMismatch(f"{a} is not in {self.name}")

    def identity(self, level: int) -> FiniteElement:
        return self._el(self.unit, level)

    def mul(self, a, b):
        self._own(a)
        self._own(b)
        if a.level != b.level:
            raise LevelMismatch(f"levels {a.level} and {b.level}")
        return self._el(self.table[a.index][b.index], a.level)

    def inv(self, a):
        self._own(a)
        return self._el(self.inverses[a.index], a.level)

    def face(self, i, a):
        if a.level == 0 or not 0 <= i <= a.level:
            raise IndexOutOfRange(f"∂_{i} on level {a.level}")
        return self._el(a.index, a.level - 1)

    def degeneracy(self, i, a):
        if not 0 <= i <= a.level:
            raise IndexOutOfRange(f"s_{i} on level {a.level}")
        return self._el(a.index, a.level + 1)

    def elements(self, level: int = 0) -> list[FiniteElement]:
        return [self._el(i, level) for i in range(len(self.names))]

    def nondegenerate(self, level: int, max_length: int | None = None) -> list[FiniteElement]:
        return self.elements(0) if level == 0 else []

    def simplices(self, level: int) -> list[FiniteElement]:
        return self.elements(level)


# Kan loop group --------------------------------------------------------------

@dataclass(frozen=True)
class LoopWord:
    """Reduced word in the generators x̄ (x not s_0-degenerate) of one level."""

    level: int
    letters: tuple[tuple[Simplex, int], ...] = ()

    @property
    def dim(self) -> int:
        return self.level

    deg = dim

    @property
    def degeneracy_indices(self) -> frozenset[int]:
        if not self.letters:
            return frozenset(range(self.level))
        out = None
        for x, _ in self.letters:
            idx = frozenset(j - 1 for j in x.degens if j >= 1)
            out = idx if out is None else out & idx
        return out

    @property
    def degenerate(self) -> bool:
        return bool(self.degeneracy_indices)

    def sort_key(self):
        return (self.level, len(self.letters), tuple((x.sort_key(), -e) for x, e in self.letters))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        for x, e in self.letters:
            s = x.gen if not x.degens else f"({x})"
            parts.append(f"{s}~" + ("" if e == 1 else "^-1"))
        return " ".join(parts)


def _reduce(letters) -> tuple:
    out: list = []
    for x, e in letters:
        if 0 in x.degens:
            continue
        if out and out[-1][0] == x and out[-1][1] == -e:
            out.pop()
        else:
            out.append((x, e))
    return tuple(out)


class LoopGroup(SimplicialGroup):
    """Kan's loop group of a reduced simplicial set, up to a truncation level.

    Faces are normalized so that x ↦ x̄ is a twisting function:
    ∂_0 x̄ = (∂_0 x)‾⁻¹ (∂_1 x)‾,  ∂_i x̄ = (∂_{i+1} x)‾ (i ≥ 1),
    s_i x̄ = (s_{i+1} x)‾.
    """

    def __init__(self, base: SimplicialSet, truncation: int | None = None):
        if not base.reduced:
            raise PresentationError(f"{base.name} is not reduced; its loop group is not defined here")
        self.base = base
        self.truncation = truncation
        self.name = f"G({base.name})"

    def identity(self, level):
        return LoopWord(level)

    def letter(self, x: Simplex, exponent: int = 1) -> LoopWord:
        return LoopWord(x.dim - 1, _reduce([(x, exponent)]))

    def _own(self, a):
        if not isinstance(a, LoopWord):
            raise GroupMismatch(f"{a!r} is not a loop-group word")

    def mul(self, a, b):
        self._own(a)
        self._own(b)
        if a.level != b.level:
            raise LevelMismatch(f"levels {a.level} and {b.level}")
        return LoopWord(a.level, _reduce(a.letters + b.letters))

    def inv(self, a):
        self._own(a)
        return LoopWord(a.level, tuple((x, -e) for x, e in reversed(a.letters)))

    def _letter_face(self, i, x: Simplex) -> tuple:
        X = self.base
        if i == 0:
            return ((X.face(0, x), -1), (X.face(1, x), 1))
        return ((X.face(i + 1, x), 1),)

    def face(self, i, a):
        if a.level == 0 or not 0 <= i <= a.level:
            raise IndexOutOfRange(f"∂_{i} on level {a.level}")
        out = []
        for x, e in a.letters:
            img = self._letter_face(i, x)
            if e == -1:
                img = tuple((y, -f) for y, f in reversed(img))
            out.extend(img)
        return LoopWord(a.level - 1, _reduce(out))

    def degeneracy(self, i, a):
        if not 0 <= i <= a.level:
            raise IndexOutOfRange(f"s_{i} on level {a.level}")
        return LoopWord(a.level + 1, _reduce((degenerate_simplex(i + 1, x), e) for x, e in a.letters))

    def letters_at(self, level: int) -> list[Simplex]:
        return [x for x in self.base.simplices(level + 1) if 0 not in x.degens]

    def nondegenerate(self, level: int, max_length: int | None = None) -> list[LoopWord]:
        if max_length is None:
            raise Unbounded("the loop group has infinitely many simplices per level; give max_length")
        if self.truncation is not None and level > self.truncation:
            raise Unbounded(f"level {level} above truncation {self.truncation}")
        gens = self.letters_at(level)
        out = [LoopWord(level)] if level == 0 else []
        frontier = [()]
        for _ in range(max_length):
            nxt = []
            for w in frontier:
                for x in gens:
                    for e in (1, -1):
                        if w and w[-1] == (x, -e):
                            continue
                        nxt.append(w + ((x, e),))
            frontier = nxt
            out.extend(LoopWord(level, w) for w in frontier if not LoopWord(level, w).degenerate)
        return out
