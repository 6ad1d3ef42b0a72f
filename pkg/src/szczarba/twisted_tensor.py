"""C(X) ⊗_t C(F): twisted differential, the comultiplication and the dual dga.

Basis keys are pairs (x, y) of nondegenerate simplices; diagonal terms are
4-tuples (x1, y1, x2, y2) read as (x1 ⊗ y1) ⊗ (x2 ⊗ y2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bundles import Bundle, TwistedProduct
from .chains import (
    Chain,
    aw_of,
    boundary_of,
    first_face,
    last_face,
    pontryagin_product,
    shuffle_key,
)
from .cobar import Cochain, frak_F, group_algebra, induced_map
from .cuts import cut_faces, enumerate_cuts, epsilon
from .groups import Unbounded
from .homology import ChainMap, FiniteComplex
from .simplicial import Prod, SimplicialError
from .szczarba import SzczarbaCochain, psi_key


class InfiniteDegree(SimplicialError, ValueError):
    pass


class TwistedTensorProduct:
    def __init__(self, bundle: Bundle, cochain: Callable | None = None, max_length: int | None = None):
        self.bundle = bundle
        self.base = bundle.base
        self.fibre = bundle.fibre
        self.group = bundle.group
        self.t = cochain or SzczarbaCochain(bundle.twist)
        self.max_length = max_length
        self.algebra = group_algebra(self.group)
        self._f = induced_map(Cochain(-1, self.t), self.algebra)
        self.name = f"C({self.base.name}) (x)_t C({self.fibre.name})"

    # module structure --------------------------------------------------------------
    def act(self, a: Chain, y) -> Chain:
        """μ_M(a ⊗ y) = (μ)_* shuffle(a ⊗ y)."""
        G, F = self.group, self.fibre
        out = Chain()
        for g, c in a.items():
            for p, s in shuffle_key((G, F), (g, y)).items():
                gg, yy = p.parts
                out.add(F.act(gg, yy), c * s)
        return out

    def act_chain(self, a: Chain, m: Chain) -> Chain:
        out = Chain()
        for y, c in m.items():
            out.add_chain(self.act(a, y), c)
        return out

    # basis ----------------------------------------------------------------------------
    def fibre_basis(self, dim: int) -> list:
        try:
            return list(self.fibre.nondegenerate(dim, self.max_length))
        except Unbounded as e:
            raise InfiniteDegree(str(e)) from e

    def basis(self, n: int) -> list[tuple]:
        out = []
        for a in range(n + 1):
            for x in self.base.nondegenerate(a):
                for y in self.fibre_basis(n - a):
                    out.append((x, y))
        return out

    # differential -------------------------------------------------------------------------
    def delta_t(self, x, y) -> Chain:
        """(1 ⊗ μ)(1 ⊗ t ⊗ 1)(Δ ⊗ 1) on x ⊗ y."""
        out = Chain()
        for (a, b), c in aw_of(self.base, x).items():
            tb = self.t(b)
            if not tb:
                continue
            s = -c if a.dim % 2 else c
            for yy, k in self.act(tb, y).items():
                out.add((a, yy), s * k)
        return out

    def d_key(self, key) -> Chain:
        x, y = key
        out = Chain()
        for xx, c in boundary_of(self.base, x).items():
            out.add((xx, y), c)
        sx = -1 if x.dim % 2 else 1
        for yy, c in boundary_of(self.fibre, y).items():
            out.add((x, yy), sx * c)
        out.add_chain(self.delta_t(x, y), -1)
        return out

    def d(self, chain: Chain) -> Chain:
        return chain.map(self.d_key)

    def counit(self, chain: Chain) -> int:
        return sum(c for (x, y), c in chain.items() if x.dim == 0 and y.dim == 0)

    # diagonal -------------------------------------------------------------------------
    def diagonal_key(self, key) -> Chain:
        """The explicit double sum over i, j and interval cuts p of [0..i]."""
        x, y = key
        X, F, G = self.base, self.fibre, self.group
        n, m = x.dim, y.dim
        out = Chain()
        for i in range(n + 1):
            front = last_face(X, x, i)
            z = first_face(X, x, n - i)
            for k in range(i + 1):
                for p in enumerate_cuts(i, k):
                    parts = cut_faces(X, z, p)
                    last = parts[-1]
                    if last.degenerate:
                        continue
                    ts = [self.t(zz) for zz in parts[:-1]]
                    if any(not c for c in ts):
                        continue
                    a = pontryagin_product(G, *ts) if ts else Chain.basis(G.identity(0))
                    for j in range(m + 1):
                        e = epsilon(p) + i + (m - j - 1) * last.dim
                        sign = -1 if e % 2 else 1
                        y2 = first_face(F, y, m - j)
                        for yy, c in self.act(a, last_face(F, y, j)).items():
                            out.add((front, yy, last, y2), sign * c)
        return out

    def diagonal_abstract_key(self, key) -> Chain:
        """(1 ⊗ μ ⊗ 1 ⊗ 1)(1 ⊗ 1 ⊗ T ⊗ 1)(1 ⊗ 𝔉 ⊗ 1 ⊗ 1)(Δ ⊗ Δ)."""
        x, y = key
        X, F = self.base, self.fibre
        out = Chain()
        for (c1, c2), u in aw_of(X, x).items():
            fr = frak_F(X, c2, self._f)
            for (y1, y2), v in aw_of(F, y).items():
                for (g, ci), w in fr.items():
                    s = -1 if (ci.dim * y1.dim) % 2 else 1
                    for yy, k in self.act(Chain.basis(g), y1).items():
                        out.add((c1, yy, ci, y2), s * u * v * w * k)
        return out

    def diagonal(self, chain: Chain, abstract: bool = False) -> Chain:
        fn = self.diagonal_abstract_key if abstract else self.diagonal_key
        return chain.map(fn)

    def d_tensor2(self, chain: Chain) -> Chain:
        """Differential on (C ⊗_t M) ⊗ (C ⊗_t M) for 4-tuple keys."""
        out = Chain()
        for (x1, y1, x2, y2), c in chain.items():
            for (a, b), k in self.d_key((x1, y1)).items():
                out.add((a, b, x2, y2), c * k)
            s = -1 if (x1.dim + y1.dim) % 2 else 1
            for (a, b), k in self.d_key((x2, y2)).items():
                out.add((x1, y1, a, b), s * c * k)
        return out

    # complexes ------------------------------------------------------------------------
    def to_complex(self, max_deg: int) -> FiniteComplex:
        basis = {n: self.basis(n) for n in range(max_deg + 1)}
        return FiniteComplex.from_chains(basis, self.d_key, (0, max_deg), name=self.name)

    def dualize(self, max_deg: int) -> "DualAlgebra":
        return DualAlgebra(self, max_deg)


# total space and ψ -------------------------------------------------------------------------

def total_basis(bundle: Bundle, n: int) -> list[Prod]:
    X, F = bundle.base, bundle.fibre
    out = []
    for x in X.simplices(n):
        for y in F.simplices(n):
            p = Prod((x, y))
            if not p.degenerate:
                out.append(p)
    return sorted(out, key=lambda p: p.sort_key())


def total_complex(bundle: Bundle, max_deg: int) -> FiniteComplex:
    P = bundle.total
    basis = {n: total_basis(bundle, n) for n in range(max_deg + 1)}
    return FiniteComplex.from_chains(basis, lambda p: boundary_of(P, p), (0, max_deg), name=P.name)


def psi_chain_map(T: TwistedTensorProduct, max_deg: int) -> ChainMap:
    src = T.to_complex(max_deg)
    dst = total_complex(T.bundle, max_deg)
    return ChainMap.from_chains(src, dst, lambda k: psi_key(T.bundle, k[0], k[1]))


def product_diagonal(P: TwistedProduct, chain: Chain) -> Chain:
    """Alexander-Whitney on C(X ×_τ F), flattened to 4-tuples."""
    out = Chain()
    for p, c in chain.items():
        for (a, b), k in aw_of(P, p).items():
            out.add((a, b), c * k)
    return out


# the dual dga ---------------------------------------------------------------------------------

@dataclass
class DualAlgebra:
    """(C ⊗_t M)* in degrees -n: product = Δᵀ, differential = -dᵀ, unit = ε."""

    T: TwistedTensorProduct
    max_deg: int

    def __post_init__(self):
        self.chains = self.T.to_complex(self.max_deg)
        self.complex = self.chains.dual()
        self._diag = {}

    def diag(self, key) -> Chain:
        if key not in self._diag:
            self._diag[key] = self.T.diagonal_key(key)
        return self._diag[key]

    def mul(self, a: int, phi, b: int, chi):
        """φ ∈ degree -a, χ ∈ degree -b, both as coefficient vectors."""
        C = self.chains
        if a + b > self.max_deg:
            raise InfiniteDegree(f"product lands in degree {-(a + b)}, outside the window")
        out = [0] * C.rank(a + b)
        for j, key in enumerate(C.basis[a + b]):
            s = 0
            for (x1, y1, x2, y2), c in self.diag(key).items():
                if x1.dim + y1.dim != a:
                    continue
                s += c * phi[C.index(a, (x1, y1))] * chi[C.index(b, (x2, y2))]
            out[j] = s
        return out

    def d(self, a: int, phi):
        """d* φ = -φ∘d, from degree -a to -(a+1)."""
        C = self.chains
        M = C.boundary_matrix(a + 1)
        return [-sum(M[i][j] * phi[i] for i in range(C.rank(a))) for j in range(C.rank(a + 1))]

    def unit(self):
        C = self.chains
        return [1 if (x.dim == 0 and y.dim == 0) else 0 for x, y in C.basis.get(0, [])]
