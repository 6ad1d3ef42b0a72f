import pytest

from szczarba import presets
from szczarba.chains import Chain
from szczarba.homology import homology, is_quasi_iso, mapping_cone
from szczarba.linalg import QQ
from szczarba.homology import homology_field
from szczarba.twisted_tensor import (
    InfiniteDegree,
    TwistedTensorProduct,
    product_diagonal,
    psi_chain_map,
    total_complex,
)
from szczarba.szczarba import psi_key

from conftest import loop


def test_cover_differential_on_edge(cover):
    T = TwistedTensorProduct(cover)
    X, G = cover.base, cover.group
    e, pt = X.simplex("e"), X.simplex("pt")
    one, g = G.element("1"), G.element("g")
    assert T.d_key((e, one)) == Chain({(pt, one): 1, (pt, g): -1})


def test_trivial_twist_gives_plain_tensor_product(trivial):
    T = TwistedTensorProduct(trivial)
    for n in range(3):
        for key in T.basis(n):
            assert not T.delta_t(*key)
    assert len(T.basis(2)) == 1


def bundles():
    return {
        "cover": presets.double_cover(),
        "cover3": presets.cyclic_cover(3),
        "trivial": presets.trivial_bundle(),
    }


@pytest.mark.parametrize("name", ["cover", "cover3", "trivial"])
def test_dt_squares_to_zero_and_diagonals_agree(name):
    T = TwistedTensorProduct(bundles()[name])
    for n in range(4):
        for key in T.basis(n):
            c = Chain.basis(key)
            assert not T.d(T.d(c))
            D = T.diagonal(c)
            assert D == T.diagonal(c, abstract=True), key
            assert T.diagonal(T.d(c)) == T.d_tensor2(D)


@pytest.mark.parametrize("name", ["S2", "D3"])
def test_diagonals_agree_on_loop_fibres(name):
    B = loop(name)
    T = TwistedTensorProduct(B, max_length=1)
    top = 3 if name == "D3" else 4
    for n in range(top + 1):
        for key in T.basis(n):
            if key[0].dim + key[1].dim > top:
                continue
            c = Chain.basis(key)
            assert not T.d(T.d(c))
            assert T.diagonal(c) == T.diagonal(c, abstract=True), key


def test_counit(cover):
    T = TwistedTensorProduct(cover)
    for n in range(3):
        for key in T.basis(n):
            D = T.diagonal_key(key)
            left = Chain()
            for (x1, y1, x2, y2), c in D.items():
                if x1.dim == 0 and y1.dim == 0:
                    left.add((x2, y2), c)
            assert left == Chain.basis(key)


@pytest.mark.parametrize("name", ["cover", "trivial"])
def test_psi_is_a_dgc_map(name):
    B = bundles()[name]
    T = TwistedTensorProduct(B)
    P = B.total
    for n in range(5):
        for key in T.basis(n):
            c = Chain.basis(key)
            lhs = product_diagonal(P, c.map(lambda k: psi_key(B, *k)))
            rhs = Chain()
            for (x1, y1, x2, y2), k in T.diagonal(c).items():
                for a, u in psi_key(B, x1, y1).items():
                    for b, v in psi_key(B, x2, y2).items():
                        rhs.add((a, b), k * u * v)
            assert lhs == rhs, key
    f = psi_chain_map(T, 5)
    f.check()


@pytest.mark.parametrize("name", ["cover", "cover3", "trivial"])
def test_psi_quasi_isomorphism(name):
    T = TwistedTensorProduct(bundles()[name])
    f = psi_chain_map(T, 5)
    assert is_quasi_iso(f, 3)
    K = mapping_cone(f)
    assert all(homology(K, n).rank == 0 and not homology(K, n).torsion for n in range(5))


def test_zero_map_is_not_a_quasi_iso(cover):
    from szczarba.homology import ChainMap

    T = TwistedTensorProduct(cover)
    f = ChainMap.from_chains(T.to_complex(5), total_complex(cover, 5), lambda k: Chain())
    assert not is_quasi_iso(f, 3)


def test_twisted_homology_of_cover(cover, oracles):
    C = TwistedTensorProduct(cover).to_complex(4)
    got = [homology(C, n) for n in range(3)]
    assert [h.rank for h in got] == oracles["cover_betti_Q"][:3]
    assert all(not h.torsion for h in got)
    direct = total_complex(cover, 4)
    assert [homology(direct, n).rank for n in range(3)] == [h.rank for h in got]


def test_loop_fibre_has_infinite_degrees():
    T = TwistedTensorProduct(loop("S2"))
    with pytest.raises(InfiniteDegree):
        T.fibre_basis(1)


# the dual algebra ------------------------------------------------------------------------------

def test_dual_algebra_unit_and_leibniz(cover):
    A = TwistedTensorProduct(cover).dualize(2)
    u = A.unit()
    C = A.chains
    for a in range(3):
        for j in range(C.rank(a)):
            phi = [1 if i == j else 0 for i in range(C.rank(a))]
            assert A.mul(0, u, a, phi) == phi
            assert A.mul(a, phi, 0, u) == phi
    # d is a derivation: d(φχ) = dφ χ + (-1)^|φ| φ dχ, |φ| = -a
    for j in range(C.rank(0)):
        for k in range(C.rank(0)):
            phi = [1 if i == j else 0 for i in range(C.rank(0))]
            chi = [1 if i == k else 0 for i in range(C.rank(0))]
            lhs = A.d(0, A.mul(0, phi, 0, chi))
            rhs = [x + y for x, y in zip(A.mul(1, A.d(0, phi), 0, chi), A.mul(0, phi, 1, A.d(0, chi)))]
            assert lhs == rhs
    with pytest.raises(InfiniteDegree):
        A.mul(2, [0] * C.rank(2), 1, [0] * C.rank(1))


def test_dual_cohomology_ranks(cover):
    A = TwistedTensorProduct(cover).dualize(3)
    K = A.complex
    assert [homology_field(K, -n, QQ) for n in range(2)] == [1, 1]
