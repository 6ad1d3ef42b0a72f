import pytest

from szczarba import presets
from szczarba.homology import homology_field
from szczarba.linalg import Field, QQ
from szczarba.spectral import (
    BadFiltration,
    Filtration,
    SpectralSequence,
    augmentation_powers,
    base_degree_filtration,
    d1_against_delta,
    format_page,
    graded_twisting_cochain,
    multiplicative,
    twisted_filtration,
)
from szczarba.twisted_tensor import TwistedTensorProduct

F2 = Field(2)


@pytest.fixture(scope="module")
def cover_ss():
    T = TwistedTensorProduct(presets.double_cover())
    filt, powers = twisted_filtration(T, 3, F2)
    return T, filt, SpectralSequence(filt)


def transposed(page):
    return {(-q, -n): v for (q, n), v in page.ranks.items()}


def test_augmentation_ideal_of_z2():
    G = presets.double_cover().group
    P = augmentation_powers(G, F2)
    assert [len(p) for p in P.powers] == [2, 1, 0] and P.nilpotent
    # over ℚ, (g-1)² = -2(g-1), so 𝔞² = 𝔞
    Q = augmentation_powers(G, QQ)
    assert [len(p) for p in Q.powers] == [2, 1] and not Q.nilpotent


def test_cyclic_3_over_f3_is_nilpotent():
    P = augmentation_powers(presets.cyclic_cover(3).group, Field(3))
    assert P.nilpotent and [len(p) for p in P.powers] == [3, 2, 1, 0]


def test_cover_e1_is_base_homology_times_graded_fibre(cover_ss, oracles):
    T, filt, ss = cover_ss
    E1 = ss.page(1)
    # H(S¹; F₂) in degrees 0, 1 times gr F = F₂ at levels 0 and -1
    assert E1.ranks == {(0, 0): 1, (-1, 0): 1, (0, 1): 1, (-1, 1): 1}
    assert E1.d_rank(0, 1, F2) == 1
    E = ss.infinity()
    for n in range(2):
        assert E.total(n) == oracles["cover_betti_F2"][n]
    assert ss.converges()
    assert ss.check_pages(3) == []


def test_d1_is_minus_graded_twist(cover_ss):
    T, filt, ss = cover_ss
    assert d1_against_delta(ss, T, F2) == []
    gt = graded_twisting_cochain(T, F2)
    assert gt.well_defined
    assert list(gt.values.values()) == [[1]]


def test_dual_pages_are_transposed(cover_ss):
    T, filt, ss = cover_ss
    D = filt.dual()
    sd = SpectralSequence(D)
    for r in range(4):
        assert sd.page(r).ranks == transposed(ss.page(r))
    assert multiplicative(D, T.dualize(3), 3) == []


def test_trivial_bundle_kunneth():
    B = presets.trivial_bundle()
    T = TwistedTensorProduct(B)
    ss = SpectralSequence(base_degree_filtration(T, 3, QQ))
    E2 = ss.page(2)
    assert E2.ranks == {(0, 0): 1, (0, 1): 1, (1, 1): 1, (1, 2): 1}
    for r in range(2, 5):
        assert ss.page(r).ranks == E2.ranks
        assert all(ss.page(r).d_rank(q, n, QQ) == 0 for q, n in E2.ranks)
    C = T.to_complex(3)
    assert [E2.total(n) for n in range(3)] == [homology_field(C, n, QQ) for n in range(3)] == [1, 2, 1]


def test_base_filtration_d1_is_base_differential():
    # trivial action on H(F): E¹ = C(X) ⊗ H(F) and d¹ = d ⊗ 1
    X = presets.collapsed_simplex(2, 0)
    T = TwistedTensorProduct(presets.trivial_bundle(base=X))
    ss = SpectralSequence(base_degree_filtration(T, 3, QQ))
    E1 = ss.page(1)
    for q in range(3):
        assert E1.rank(q, q) == len(X.nondegenerate(q))
        assert E1.rank(q, q + 1) == len(X.nondegenerate(q))
    assert E1.d_rank(2, 2, QQ) == 1 and E1.d_rank(2, 3, QQ) == 1
    assert E1.d_rank(1, 1, QQ) == 0
    assert ss.page(2).ranks == {(0, 0): 1, (0, 1): 1, (1, 1): 2, (1, 2): 2}


def test_filtration_must_be_compatible():
    T = TwistedTensorProduct(presets.double_cover())
    C = T.to_complex(2)
    # putting degree-1 chains below their boundaries breaks d(F_q) ⊂ F_q
    with pytest.raises(BadFiltration):
        Filtration.from_levels(C, lambda key: -key[0].dim, QQ)


def test_page_table_format(cover_ss):
    T, filt, ss = cover_ss
    text = format_page(ss, 1)
    assert text.splitlines()[0] == "E^1  (F2)"
    assert len(text.splitlines()) == 2 + 4
