import random

import pytest
from hypothesis import given, strategies as st

from szczarba import presets
from szczarba.chains import Chain, boundary_of
from szczarba.homology import (
    ChainMap,
    FiniteComplex,
    NotAComplex,
    NotChainMap,
    homology,
    homology_field,
    is_quasi_iso,
    mapping_cone,
)
from szczarba.linalg import Field, NonField, QQ, diagonal, matmul, smith_normal_form
from szczarba.twisted_tensor import total_complex


def det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def test_snf_small(oracles):
    U, D, V = smith_normal_form([[2, 0], [0, 3]])
    assert diagonal(D) == oracles["snf_2_3"]
    assert matmul(matmul(U, [[2, 0], [0, 3]]), V) == D


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_properties(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    d = diagonal(D)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


def test_projective_plane_torsion():
    # C_2 → C_1 → C_0 = ℤ -2→ ℤ -0→ ℤ
    C = FiniteComplex({0: ["v"], 1: ["e"], 2: ["f"]}, {1: [[0]], 2: [[2]]}, (0, 2))
    assert str(homology(C, 1)) == "Z/2"
    assert homology_field(C, 1, QQ) == 0
    assert homology_field(C, 1, Field(2)) == 1


def test_not_a_complex():
    with pytest.raises(NotAComplex):
        FiniteComplex({0: ["a"], 1: ["b"], 2: ["c"]}, {1: [[1]], 2: [[1]]}, (0, 2))


def test_basis_reordering_invariance():
    X = presets.standard_simplex(3)
    basis = {n: list(X.nondegenerate(n)) for n in range(4)}
    C = FiniteComplex.from_chains(basis, lambda x: boundary_of(X, x), (0, 3))
    rng = random.Random(7)
    shuffled = {n: rng.sample(v, len(v)) for n, v in basis.items()}
    C2 = FiniteComplex.from_chains(shuffled, lambda x: boundary_of(X, x), (0, 3))
    assert [homology(C, n) for n in range(3)] == [homology(C2, n) for n in range(3)]
    assert [homology(C, n).rank for n in range(3)] == [1, 0, 0]


def test_circle_and_torus(oracles, cover, trivial):
    X = presets.minimal_circle()
    C = FiniteComplex.from_chains({n: list(X.nondegenerate(n)) for n in range(3)},
                                  lambda x: boundary_of(X, x), (0, 2))
    assert [homology(C, n).rank for n in range(2)] == oracles["circle_betti"][:2]
    T = total_complex(trivial, 4)
    assert [homology(T, n).rank for n in range(4)] == oracles["torus_betti"]
    K = total_complex(cover, 4)
    assert [homology(K, n).rank for n in range(4)] == oracles["cover_betti_Q"]
    assert [homology_field(K, n, Field(2)) for n in range(4)] == oracles["cover_betti_F2"]


def test_identity_cone_is_acyclic():
    X = presets.collapsed_simplex(3, 0)
    basis = {n: list(X.nondegenerate(n)) for n in range(4)}
    C = FiniteComplex.from_chains(basis, lambda x: boundary_of(X, x), (0, 3))
    f = ChainMap.from_chains(C, C, Chain.basis)
    assert is_quasi_iso(f, 1)
    z = ChainMap.from_chains(C, C, lambda x: Chain())
    assert not is_quasi_iso(z, 1)
    assert homology(mapping_cone(f), 2).rank == 0


def test_non_chain_map_rejected():
    X = presets.standard_simplex(1)
    C = FiniteComplex.from_chains({n: list(X.nondegenerate(n)) for n in range(2)},
                                  lambda x: boundary_of(X, x), (0, 1))
    v1 = C.basis[0][1]
    # every vertex goes to v1 but the edge stays put
    with pytest.raises(NotChainMap):
        ChainMap.from_chains(C, C, lambda k: Chain.basis(v1) if k.dim == 0 else Chain.basis(k)).check()


def test_field_parsing():
    assert Field.parse("q") == QQ
    assert Field.parse("fp:5").p == 5
    for bad in ("fp:4", "fp:x", "z"):
        with pytest.raises(NonField):
            Field.parse(bad)
