"""Finitely presented simplicial sets.

Every simplex is kept in Eilenberg-Zilber normal form: a strictly
decreasing tuple of degeneracy indices applied to a nondegenerate
generator.  Two simplices are equal iff their normal forms are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class SimplicialError(Exception):
    pass


class IndexOutOfRange(SimplicialError, IndexError):
    pass


class DimensionMismatch(SimplicialError, ValueError):
    pass


class PresentationError(SimplicialError, ValueError):
    pass


class NoBasepoint(SimplicialError):
    pass


@dataclass(frozen=True, order=True)
class Simplex:
    gen: str
    gdim: int
    degens: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return self.gdim + len(self.degens)

    deg = dim

    @property
    def degenerate(self) -> bool:
        return bool(self.degens)

    @property
    def degeneracy_indices(self) -> frozenset[int]:
        return frozenset(self.degens)

    def sort_key(self):
        return (self.dim, self.gen, self.degens)

    def __str__(self) -> str:
        return " ".join([f"s_{j}" for j in self.degens] + [self.gen])


def degenerate_simplex(i: int, x: Simplex) -> Simplex:
    """s_i x, renormalized."""
    if not 0 <= i <= x.dim:
        raise IndexOutOfRange(f"s_{i} on a {x.dim}-simplex")
    hi = tuple(j + 1 for j in x.degens if j >= i)
    lo = tuple(j for j in x.degens if j < i)
    return Simplex(x.gen, x.gdim, hi + (i,) + lo)


def degenerate_many(js: Iterable[int], x: Simplex) -> Simplex:
    """Apply s_j for j in js, first element first."""
    for j in js:
        x = degenerate_simplex(j, x)
    return x


# operator words ------------------------------------------------------------

@dataclass(frozen=True)
class Op:
    kind: str  # "d" or "s"
    index: int

    def __str__(self):
        return f"{'∂' if self.kind == 'd' else 's'}_{self.index}"


def face_op(i: int) -> Op:
    return Op("d", i)


def degen_op(i: int) -> Op:
    return Op("s", i)


@dataclass(frozen=True)
class OperatorWord:
    """A composite of faces and degeneracies; letters apply right to left."""

    letters: tuple[Op, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "OperatorWord":
        out = []
        for tok in text.replace("∘", " ").split():
            kind, _, idx = tok.partition("_")
            kind = {"d": "d", "∂": "d", "s": "s"}[kind]
            out.append(Op(kind, int(idx.strip("{}"))))
        return cls(tuple(out))

    def __matmul__(self, other: "OperatorWord") -> "OperatorWord":
        return OperatorWord(self.letters + other.letters)

    def derived(self) -> "OperatorWord":
        return OperatorWord(tuple(Op(o.kind, o.index + 1) for o in self.letters))

    @property
    def shift(self) -> int:
        return sum(1 if o.kind == "s" else -1 for o in self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "∘".join(map(str, self.letters)) or "id"


IDENTITY = OperatorWord()


def apply_word(obj, word: OperatorWord, x):
    """Apply ``word`` to ``x`` using ``obj.face`` / ``obj.degeneracy``."""
    for op in reversed(word.letters):
        try:
            x = obj.face(op.index, x) if op.kind == "d" else obj.degeneracy(op.index, x)
        except IndexOutOfRange as exc:
            raise IndexOutOfRange(f"letter {op} of {word}: {exc}") from None
    return x


# products ------------------------------------------------------------------

@dataclass(frozen=True)
class Prod:
    """A simplex of a (possibly twisted) product, one entry per factor."""

    parts: tuple

    @property
    def dim(self) -> int:
        return self.parts[0].dim

    deg = dim

    @property
    def degeneracy_indices(self) -> frozenset[int]:
        out = self.parts[0].degeneracy_indices
        for p in self.parts[1:]:
            out = out & p.degeneracy_indices
        return out

    @property
    def degenerate(self) -> bool:
        return bool(self.degeneracy_indices)

    def sort_key(self):
        return (self.dim,) + tuple(p.sort_key() for p in self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "(" + ", ".join(map(str, self.parts)) + ")"


class CartesianProduct:
    """Plain product of simplicial objects."""

    def __init__(self, *factors):
        self.factors = factors

    def face(self, i, p: Prod) -> Prod:
        return Prod(tuple(f.face(i, x) for f, x in zip(self.factors, p.parts)))

    def degeneracy(self, i, p: Prod) -> Prod:
        return Prod(tuple(f.degeneracy(i, x) for f, x in zip(self.factors, p.parts)))


# presentations ---------------------------------------------------------------

@dataclass
class SimplicialSet:
    """A finitely presented simplicial set.

    ``generators`` maps each nondegenerate simplex name to its dimension
    (insertion order is the canonical order), ``faces`` maps a generator
    of positive dimension to its list of faces.
    """

    name: str
    generators: dict[str, int]
    faces: dict[str, tuple[Simplex, ...]] = field(default_factory=dict)
    basepoint: str | None = None
    vertices: dict[str, tuple[int, ...]] | None = None
    validate: bool = True

    def __post_init__(self):
        self.generators = dict(self.generators)
        self.faces = {g: tuple(fs) for g, fs in self.faces.items()}
        if self.basepoint is None:
            zero = self.gens(0)
            if len(zero) == 1:
                self.basepoint = zero[0]
        if self.validate:
            self.check()

    # generators
    def gens(self, dim: int) -> list[str]:
        return [g for g, d in self.generators.items() if d == dim]

    def simplex(self, name: str) -> Simplex:
        try:
            return Simplex(name, self.generators[name])
        except KeyError:
            raise PresentationError(f"unknown generator {name!r}") from None

    @property
    def max_dim(self) -> int:
        return max(self.generators.values(), default=-1)

    @property
    def reduced(self) -> bool:
        return len(self.gens(0)) == 1

    @property
    def one_reduced(self) -> bool:
        return self.reduced and not self.gens(1)

    def point(self) -> Simplex:
        if self.basepoint is None:
            raise NoBasepoint(self.name)
        return self.simplex(self.basepoint)

    # operators
    def face(self, i: int, x: Simplex) -> Simplex:
        n = x.dim
        if n == 0 or not 0 <= i <= n:
            raise IndexOutOfRange(f"∂_{i} on {x} of dimension {n}")
        outer = []
        degens = x.degens
        for pos, j in enumerate(degens):
            if i < j:
                outer.append(j - 1)
            elif i in (j, j + 1):
                inner = Simplex(x.gen, x.gdim, degens[pos + 1:])
                return _wrap(outer, inner)
            else:
                outer.append(j)
                i -= 1
        return _wrap(outer, self.faces[x.gen][i])

    def degeneracy(self, i: int, x: Simplex) -> Simplex:
        return degenerate_simplex(i, x)

    def apply(self, word: OperatorWord | str, x: Simplex) -> Simplex:
        if isinstance(word, str):
            word = OperatorWord.parse(word)
        return apply_word(self, word, x)

    def last_face(self, x: Simplex, times: int = 1) -> Simplex:
        for _ in range(times):
            x = self.face(x.dim, x)
        return x

    def first_face(self, x: Simplex, times: int = 1) -> Simplex:
        for _ in range(times):
            x = self.face(0, x)
        return x

    def vertex_of(self, x: Simplex, k: int) -> Simplex:
        return self.subsimplex(x, (k,))

    def subsimplex(self, x: Simplex, verts: Sequence[int]) -> Simplex:
        """x(v_0, ..., v_m) for a weakly increasing vertex list."""
        n = x.dim
        if any(b < a for a, b in zip(verts, verts[1:])) or verts[0] < 0 or verts[-1] > n:
            raise DimensionMismatch(f"bad vertex list {tuple(verts)} for a {n}-simplex")
        keep = sorted(set(verts))
        y = x
        for v in reversed(range(n + 1)):
            if v not in keep:
                y = self.face(v, y)
        for p in range(len(verts) - 1):
            if verts[p] == verts[p + 1]:
                y = degenerate_simplex(p, y)
        return y

    def vertex_list(self, x: Simplex) -> tuple[int, ...] | None:
        """Vertex labels of x when generators carry them (standard-simplex quotients)."""
        if not self.vertices or x.gen not in self.vertices:
            return None
        vs = list(self.vertices[x.gen])
        for j in reversed(x.degens):
            vs.insert(j, vs[j])
        return tuple(vs)

    # enumeration
    def simplices(self, dim: int) -> list[Simplex]:
        out = []
        for g, d in self.generators.items():
            if d > dim:
                continue
            for js in combinations(range(dim - 1, -1, -1), dim - d):
                out.append(Simplex(g, d, js))
        return out

    def nondegenerate(self, dim: int) -> list[Simplex]:
        return [Simplex(g, dim) for g in self.gens(dim)]

    def basis(self, max_dim: int) -> list[Simplex]:
        return [x for d in range(max_dim + 1) for x in self.nondegenerate(d)]

    # validation
    def check(self) -> None:
        for g, d in self.generators.items():
            if d < 0:
                raise PresentationError(f"{g}: negative dimension")
            fs = self.faces.get(g, ())
            if d == 0:
                if fs:
                    raise PresentationError(f"{g}: a vertex has no faces")
                continue
            if len(fs) != d + 1:
                raise PresentationError(f"{g}: expected {d + 1} faces, got {len(fs)}")
            for i, f in enumerate(fs):
                if f.gen not in self.generators:
                    raise PresentationError(f"{g}.{i}: unknown generator {f.gen!r}")
                if self.generators[f.gen] != f.gdim or f.dim != d - 1:
                    raise PresentationError(f"{g}.{i}: face {f} has wrong dimension")
                if list(f.degens) != sorted(set(f.degens), reverse=True) or (
                    f.degens and f.degens[0] > f.dim - 1
                ):
                    raise PresentationError(f"{g}.{i}: {f} is not in normal form")
        bad = self.identity_failures()
        if bad:
            raise PresentationError(f"simplicial identity fails: {bad[0]}")

    def identity_failures(self) -> list[str]:
        out = []
        for g, d in self.generators.items():
            if d < 2:
                continue
            x = self.simplex(g)
            for j in range(d + 1):
                for i in range(j):
                    lhs = self.face(i, self.face(j, x))
                    rhs = self.face(j - 1, self.face(i, x))
                    if lhs != rhs:
                        out.append(f"∂_{i}∂_{j} {g} = {lhs} but ∂_{j - 1}∂_{i} {g} = {rhs}")
        return out

    def full_identity_failures(self, max_dim: int) -> list[str]:
        """All simplicial identities on every simplex (degenerate included)."""
        out = []
        for n in range(max_dim + 1):
            for x in self.simplices(n):
                for j in range(n + 1 if n >= 2 else 0):
                    for i in range(j):
                        if self.face(i, self.face(j, x)) != self.face(j - 1, self.face(i, x)):
                            out.append(f"dd {i},{j} on {x}")
                for i in range(n + 1):
                    sx = degenerate_simplex(i, x)
                    for j in range(n + 2):
                        lhs = self.face(j, sx)
                        if j < i:
                            rhs = degenerate_simplex(i - 1, self.face(j, x)) if n else None
                        elif j in (i, i + 1):
                            rhs = x
                        else:
                            rhs = degenerate_simplex(i, self.face(j - 1, x))
                        if rhs is not None and lhs != rhs:
                            out.append(f"d_{j} s_{i} on {x}")
                    for j in range(i + 1):
                        if degenerate_simplex(i + 1, degenerate_simplex(j, x)) != degenerate_simplex(
                            j, degenerate_simplex(i, x)
                        ):
                            out.append(f"ss {i},{j} on {x}")
        return out

    def format_simplex(self, x: Simplex) -> str:
        vs = self.vertex_list(x)
        if vs is not None:
            return "".join(map(str, vs))
        return str(x)


def _wrap(outer: list[int], y: Simplex) -> Simplex:
    for j in reversed(outer):
        y = degenerate_simplex(j, y)
    return y
