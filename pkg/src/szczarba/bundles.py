"""Twisting functions, G-spaces and twisted Cartesian products."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .groups import FiniteElement, FiniteGroup, LoopGroup, SimplicialGroup
from .simplicial import (
    DimensionMismatch,
    IndexOutOfRange,
    PresentationError,
    Prod,
    Simplex,
    SimplicialError,
    SimplicialSet,
    degenerate_simplex,
)


class TwistError(SimplicialError, ValueError):
    """A twisting-function identity fails; ``witness`` names the simplex."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class TwistingFunction:
    """τ: X_{>0} → G given on nondegenerate simplices, extended to all of X."""

    def __init__(self, base: SimplicialSet, group: SimplicialGroup, values: Mapping[str, object],
                 validate: bool = True, check_dim: int | None = None):
        self.base = base
        self.group = group
        self.values = dict(values)
        for g, d in base.generators.items():
            if d == 0:
                continue
            if g not in self.values:
                raise PresentationError(f"twist: no value for {g}")
            if self.values[g].level != d - 1:
                raise PresentationError(f"twist: value for {g} has level {self.values[g].level}, want {d - 1}")
        if validate:
            bad = self.failures(check_dim if check_dim is not None else max(base.max_dim, 1) + 1)
            if bad:
                raise TwistError(bad[0][0], bad[0][1])

    @classmethod
    def canonical(cls, base: SimplicialSet, group: LoopGroup) -> "TwistingFunction":
        vals = {g: group.letter(base.simplex(g)) for g, d in base.generators.items() if d >= 1}
        return cls(base, group, vals, validate=False)

    @classmethod
    def trivial(cls, base: SimplicialSet, group: SimplicialGroup) -> "TwistingFunction":
        vals = {g: group.identity(d - 1) for g, d in base.generators.items() if d >= 1}
        return cls(base, group, vals, validate=False)

    def __call__(self, x: Simplex):
        if x.dim == 0:
            raise IndexOutOfRange("τ is not defined on vertices")
        if 0 in x.degens:
            return self.group.identity(x.dim - 1)
        val = self.values[x.gen]
        for j in reversed(x.degens):
            val = self.group.degeneracy(j - 1, val)
        return val

    def sigma(self, x: Simplex):
        return self.group.inv(self(x))

    def failures(self, max_dim: int) -> list[tuple[str, Simplex]]:
        X, G = self.base, self.group
        out = []
        for n in range(1, max_dim + 1):
            for x in X.simplices(n):
                tx = self(x)
                if n >= 2:
                    lhs = G.face(0, tx)
                    rhs = G.mul(G.inv(self(X.face(0, x))), self(X.face(1, x)))
                    if lhs != rhs:
                        out.append((f"∂_0 τ({x}) = {lhs} but τ(∂_0)^-1 τ(∂_1) = {rhs}", x))
                    for k in range(1, n):
                        if G.face(k, tx) != self(X.face(k + 1, x)):
                            out.append((f"∂_{k} τ({x}) ≠ τ(∂_{k + 1} {x})", x))
                for k in range(n):
                    if G.degeneracy(k, tx) != self(degenerate_simplex(k + 1, x)):
                        out.append((f"s_{k} τ({x}) ≠ τ(s_{k + 1} {x})", x))
                if self(degenerate_simplex(0, x)) != G.identity(n):
                    out.append((f"τ(s_0 {x}) ≠ 1", x))
        return out


# fibres ----------------------------------------------------------------------

class GroupFibre:
    """G acting on itself by left multiplication."""

    def __init__(self, group: SimplicialGroup):
        self.group = group
        self.name = group.name

    def face(self, i, y):
        return self.group.face(i, y)

    def degeneracy(self, i, y):
        return self.group.degeneracy(i, y)

    def act(self, g, y):
        return self.group.mul(g, y)

    def nondegenerate(self, dim, max_length=None):
        return self.group.nondegenerate(dim, max_length)

    def simplices(self, dim):
        return self.group.simplices(dim)


class GSet:
    """A finitely presented simplicial set with a left action of a finite group.

    ``action[(element name, generator)]`` is the image generator; the action is
    extended to degenerate simplices by commuting with degeneracies.
    """

    def __init__(self, space: SimplicialSet, group: FiniteGroup, action: Mapping[tuple[str, str], str] | None = None):
        self.space = space
        self.group = group
        self.name = space.name
        one = group.names[group.unit]
        act = {}
        for el in group.names:
            for g in space.generators:
                default = g if action is None or el == one else None
                act[(el, g)] = (action or {}).get((el, g), default)
                if act[(el, g)] is None:
                    raise PresentationError(f"action of {el} on {g} missing")
        self.action = act
        self._check()

    @classmethod
    def trivial_action(cls, space: SimplicialSet, group: FiniteGroup) -> "GSet":
        return cls(space, group, None)

    def _check(self):
        G, F = self.group, self.space
        one = G.names[G.unit]
        for (el, g), h in self.action.items():
            if F.generators.get(h) != F.generators[g]:
                raise PresentationError(f"action {el}·{g} = {h} changes dimension")
            if el == one and h != g:
                raise PresentationError("unit acts nontrivially")
        for a in G.names:
            for b in G.names:
                ab = G.names[G.table[G.names.index(a)][G.names.index(b)]]
                for g in F.generators:
                    if self.action[(a, self.action[(b, g)])] != self.action[(ab, g)]:
                        raise PresentationError(f"action not associative at {a},{b},{g}")
            for g, d in F.generators.items():
                x = F.simplex(g)
                for i in range(d + 1 if d else 0):
                    lhs = self._move(a, F.face(i, x))
                    rhs = F.face(i, self._move(a, x))
                    if lhs != rhs:
                        raise PresentationError(f"action of {a} does not commute with ∂_{i} on {g}")

    def _move(self, name: str, y: Simplex) -> Simplex:
        h = self.action[(name, y.gen)]
        return Simplex(h, y.gdim, y.degens)

    def face(self, i, y):
        return self.space.face(i, y)

    def degeneracy(self, i, y):
        return self.space.degeneracy(i, y)

    def act(self, g: FiniteElement, y: Simplex) -> Simplex:
        if g.level != y.dim:
            raise DimensionMismatch(f"acting by level {g.level} on a {y.dim}-simplex")
        return self._move(g.name, y)

    def nondegenerate(self, dim, max_length=None):
        return self.space.nondegenerate(dim)

    def simplices(self, dim):
        return self.space.simplices(dim)


# twisted products --------------------------------------------------------------

class TwistedProduct:
    """X ×_τ F: componentwise operators except ∂_0(x, y) = (∂_0 x, τ(x)·∂_0 y)."""

    def __init__(self, base: SimplicialSet, fibre, twist: TwistingFunction):
        self.base = base
        self.fibre = fibre
        self.twist = twist
        self.name = f"{base.name}x{fibre.name}"

    def pair(self, x, y) -> Prod:
        if x.dim != y.dim:
            raise DimensionMismatch(f"({x}, {y}): dimensions {x.dim} and {y.dim}")
        return Prod((x, y))

    def face(self, i, p: Prod) -> Prod:
        x, y = p.parts
        if x.dim != y.dim:
            raise DimensionMismatch(f"{p}")
        if i == 0:
            return Prod((self.base.face(0, x), self.fibre.act(self.twist(x), self.fibre.face(0, y))))
        return Prod((self.base.face(i, x), self.fibre.face(i, y)))

    def degeneracy(self, i, p: Prod) -> Prod:
        x, y = p.parts
        return Prod((self.base.degeneracy(i, x), self.fibre.degeneracy(i, y)))

    def right_act(self, p: Prod, g) -> Prod:
        """(x, h)·g = (x, hg); only meaningful when the fibre is the group itself."""
        x, h = p.parts
        return Prod((x, self.fibre.group.mul(h, g)))


@dataclass
class Bundle:
    """Everything needed for the twisted shuffle map: X, G, τ and a G-space F."""

    base: SimplicialSet
    group: SimplicialGroup
    twist: TwistingFunction
    fibre: object
    name: str = "bundle"

    @property
    def total(self) -> TwistedProduct:
        return TwistedProduct(self.base, self.fibre, self.twist)

    @property
    def principal(self) -> TwistedProduct:
        return TwistedProduct(self.base, GroupFibre(self.group), self.twist)
