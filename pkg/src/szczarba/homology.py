"""Finite chain complexes with exact integer / field homology and mapping cones."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .chains import Chain
from .linalg import QQ, Field, diagonal, is_zero_matrix, matmul, rank, smith_normal_form, zeros


class NotAComplex(ValueError):
    pass


class NotChainMap(ValueError):
    pass


class MissingBasis(KeyError):
    pass


@dataclass
class FiniteComplex:
    """Basis labels per degree and integer boundary matrices d_n: C_n → C_{n-1}.

    ``bounds`` is the closed degree window in which the complex is known;
    homology is only reported for degrees whose outgoing and incoming
    boundaries both lie inside the window.
    """

    basis: dict[int, list]
    d: dict[int, list[list]]
    bounds: tuple[int, int]
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for n, labels in self.basis.items():
            self._index[n] = {b: i for i, b in enumerate(labels)}
        for n in range(self.bounds[0] + 1, self.bounds[1] + 1):
            self.d.setdefault(n, zeros(self.rank(n - 1), self.rank(n)))
        for n in range(self.bounds[0] + 2, self.bounds[1] + 1):
            prod = matmul(self.d[n - 1], self.d[n])
            if prod and not is_zero_matrix(prod):
                raise NotAComplex(f"{self.name}: d_{n-1} d_{n} ≠ 0")

    @classmethod
    def from_chains(cls, basis: Mapping[int, Sequence], boundary: Callable[[object], Chain],
                    bounds: tuple[int, int] | None = None, name: str = "") -> "FiniteComplex":
        basis = {n: list(v) for n, v in basis.items()}
        lo = min(basis) if basis else 0
        hi = max(basis) if basis else 0
        bounds = bounds or (lo, hi)
        index = {n: {b: i for i, b in enumerate(v)} for n, v in basis.items()}
        d = {}
        for n in range(bounds[0] + 1, bounds[1] + 1):
            rows = len(basis.get(n - 1, []))
            M = zeros(rows, len(basis.get(n, [])))
            for j, b in enumerate(basis.get(n, [])):
                for key, c in boundary(b).items():
                    i = index.get(n - 1, {}).get(key)
                    if i is None:
                        raise MissingBasis(f"{key} (boundary of {b}) is not a basis element in degree {n-1}")
                    M[i][j] += c
            d[n] = M
        return cls(basis, d, bounds, name)

    def rank(self, n: int) -> int:
        return len(self.basis.get(n, []))

    def degrees(self) -> range:
        return range(self.bounds[0], self.bounds[1] + 1)

    def index(self, n: int, label) -> int:
        return self._index[n][label]

    def vector(self, n: int, chain: Chain) -> list:
        v = [0] * self.rank(n)
        for key, c in chain.items():
            try:
                v[self._index[n][key]] += c
            except KeyError as e:
                raise MissingBasis(f"{key} not in degree {n}") from e
        return v

    def chain(self, n: int, v) -> Chain:
        return Chain((self.basis[n][i], c) for i, c in enumerate(v) if c)

    def boundary_matrix(self, n: int):
        if n <= self.bounds[0] or n > self.bounds[1]:
            return zeros(self.rank(n - 1), self.rank(n))
        return self.d[n]

    def homology_degrees(self) -> range:
        # H_n needs d_n and d_{n+1}; the top degree is unreliable unless the complex ends there
        return range(self.bounds[0], self.bounds[1])

    def dual(self) -> "FiniteComplex":
        """Degreewise dual placed in degrees -n with differential -dᵀ."""
        basis = {-n: list(v) for n, v in self.basis.items()}
        d = {}
        for n in range(self.bounds[0] + 1, self.bounds[1] + 1):
            M = self.d[n]
            # d*: C^{n-1} → C^n lives in degree -(n-1) → -n
            d[-(n - 1)] = [[-M[i][j] for i in range(self.rank(n - 1))] for j in range(self.rank(n))]
        return FiniteComplex(basis, d, (-self.bounds[1], -self.bounds[0]), f"{self.name}*")


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = ["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(C: FiniteComplex, n: int) -> HomologyGroup:
    """H_n over ℤ via Smith normal form."""
    dn = C.boundary_matrix(n)
    dn1 = C.boundary_matrix(n + 1)
    r_out = len(diagonal(smith_normal_form(dn)[1])) if C.rank(n) and C.rank(n - 1) else 0
    inv = diagonal(smith_normal_form(dn1)[1]) if C.rank(n + 1) and C.rank(n) else []
    betti = C.rank(n) - r_out - len(inv)
    return HomologyGroup(betti, tuple(t for t in inv if t != 1))


def homology_field(C: FiniteComplex, n: int, F: Field = QQ) -> int:
    return C.rank(n) - rank(C.boundary_matrix(n), F) - rank(C.boundary_matrix(n + 1), F)


def homology_table(C: FiniteComplex, F: Field | None = None) -> dict[int, object]:
    out = {}
    for n in C.homology_degrees():
        out[n] = homology(C, n) if F is None else homology_field(C, n, F)
    return out


# chain maps and cones -----------------------------------------------------------------------

@dataclass
class ChainMap:
    source: FiniteComplex
    target: FiniteComplex
    matrices: dict[int, list[list]]

    @classmethod
    def from_chains(cls, source: FiniteComplex, target: FiniteComplex, fn: Callable[[object], Chain],
                    degrees: Sequence[int] | None = None) -> "ChainMap":
        mats = {}
        for n in degrees if degrees is not None else source.degrees():
            M = zeros(target.rank(n), source.rank(n))
            for j, b in enumerate(source.basis.get(n, [])):
                v = target.vector(n, fn(b))
                for i, c in enumerate(v):
                    M[i][j] = c
            mats[n] = M
        return cls(source, target, mats)

    def check(self) -> None:
        for n in self.matrices:
            if n - 1 not in self.matrices:
                continue
            lhs = matmul(self.target.boundary_matrix(n), self.matrices[n])
            rhs = matmul(self.matrices[n - 1], self.source.boundary_matrix(n))
            if lhs != rhs:
                raise NotChainMap(f"f d ≠ d f in degree {n}")


def mapping_cone(f: ChainMap) -> FiniteComplex:
    """Cone_n = C_{n-1} ⊕ D_n with d(c, e) = (-dc, f c + d e)."""
    f.check()
    C, D = f.source, f.target
    lo = min(C.bounds[0] + 1, D.bounds[0])
    hi = min(C.bounds[1] + 1, D.bounds[1])
    hi = min(hi, max(f.matrices) + 1)
    basis = {n: [("s", b) for b in C.basis.get(n - 1, [])] + [("t", b) for b in D.basis.get(n, [])]
             for n in range(lo, hi + 1)}
    d = {}
    for n in range(lo + 1, hi + 1):
        cn1, dn = C.rank(n - 1), D.rank(n)
        cn2, dn1 = C.rank(n - 2), D.rank(n - 1)
        M = zeros(cn2 + dn1, cn1 + dn)
        dc = C.boundary_matrix(n - 1)
        dd = D.boundary_matrix(n)
        fm = f.matrices.get(n - 1, zeros(dn1, cn1))
        for i in range(cn2):
            for j in range(cn1):
                M[i][j] = -dc[i][j]
        for i in range(dn1):
            for j in range(cn1):
                M[cn2 + i][j] = fm[i][j]
            for j in range(dn):
                M[cn2 + i][cn1 + j] = dd[i][j]
        d[n] = M
    return FiniteComplex(basis, d, (lo, hi), "cone")


def is_quasi_iso(f: ChainMap, top: int, field: Field | None = None) -> bool:
    """H_n(cone f) = 0 for all n <= top + 1, i.e. f_* iso through degree ``top``."""
    K = mapping_cone(f)
    if K.bounds[1] < top + 2:
        raise ValueError(f"cone only known through degree {K.bounds[1]}; need {top + 2}")
    for n in range(K.bounds[0], top + 2):
        h = homology(K, n) if field is None else homology_field(K, n, field)
        if (h.rank or h.torsion) if field is None else h:
            return False
    return True
