import pytest
from hypothesis import given, strategies as st

from szczarba import presets
from szczarba.bundles import TwistError, TwistingFunction
from szczarba.groups import FiniteGroup, LevelMismatch, LoopGroup, Unbounded
from szczarba.presentation import (
    ChainCodec,
    ParseError,
    bundle_doc,
    dumps,
    from_doc,
    load,
    loads,
    parse_simplex,
    parse_word,
)
from szczarba.simplicial import (
    IndexOutOfRange,
    OperatorWord,
    PresentationError,
    Prod,
    Simplex,
    SimplicialSet,
    apply_word,
    degenerate_simplex,
)
from szczarba.twisted_tensor import total_basis

from conftest import loop


SETS = {
    "S1": presets.minimal_circle,
    "S2": lambda: presets.minimal_sphere(2),
    "D3": lambda: presets.collapsed_simplex(3, 0),
    "D4_sk1": lambda: presets.collapsed_simplex(4, 1),
    "std3": lambda: presets.standard_simplex(3),
    "R1": lambda: presets.random_one_reduced(1),
}


@pytest.mark.parametrize("name", sorted(SETS))
def test_simplicial_identities_everywhere(name):
    X = SETS[name]()
    assert X.full_identity_failures(min(X.max_dim + 1, 4)) == []


def test_ez_normal_form_reorders():
    x = Simplex("a", 1)
    # s_0 s_1 a = s_2 s_0 a
    assert degenerate_simplex(0, degenerate_simplex(1, x)) == degenerate_simplex(2, degenerate_simplex(0, x))
    assert degenerate_simplex(0, degenerate_simplex(1, x)).degens == (2, 0)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_degeneracies_normalize_strictly_decreasing(js):
    x = Simplex("a", 2)
    y = x
    for j in js:
        j = min(j, y.dim)
        y = degenerate_simplex(j, y)
    assert list(y.degens) == sorted(set(y.degens), reverse=True)
    assert y.dim == 2 + len(js)


@given(st.integers(0, 3), st.integers(0, 4))
def test_face_of_degeneracy(i, j):
    X = presets.standard_simplex(3)
    x = X.simplex("v0123")
    sx = degenerate_simplex(i, x)
    if j in (i, i + 1):
        assert X.face(j, sx) == x
    elif j < i:
        assert X.face(j, sx) == degenerate_simplex(i - 1, X.face(j, x))
    else:
        assert X.face(j, sx) == degenerate_simplex(i, X.face(j - 1, x))


def test_out_of_range():
    X = presets.minimal_circle()
    with pytest.raises(IndexOutOfRange):
        X.face(3, X.simplex("e"))
    with pytest.raises(IndexOutOfRange):
        degenerate_simplex(5, X.simplex("e"))


def test_operator_word_apply():
    X = presets.standard_simplex(3)
    x = X.simplex("v0123")
    w = OperatorWord.parse("s_0 d_1")
    # rightmost first: d_1 then s_0
    assert X.format_simplex(apply_word(X, w, x)) == "0023"


def test_subsimplex_vertex_lists():
    X = presets.standard_simplex(4)
    x = X.simplex("v01234")
    assert X.format_simplex(X.subsimplex(x, (0, 2, 2, 4))) == "0224"
    assert X.subsimplex(x, (1, 1)) == degenerate_simplex(0, X.simplex("v1"))


def test_nondegenerate_counts():
    X = presets.collapsed_simplex(3, 0)
    assert [len(X.nondegenerate(d)) for d in range(4)] == [1, 6, 4, 1]
    S = presets.minimal_sphere(2)
    assert [len(S.nondegenerate(d)) for d in range(3)] == [1, 0, 1]


def test_bad_presentations():
    with pytest.raises(PresentationError):
        SimplicialSet("bad", {"pt": 0, "e": 1}, {"e": (Simplex("pt", 0),)})
    with pytest.raises(PresentationError):
        # ∂_0∂_2 ≠ ∂_1∂_0
        SimplicialSet("bad", {"a": 0, "b": 0, "e": 1, "f": 1, "x": 2},
                      {"e": (Simplex("a", 0), Simplex("b", 0)), "f": (Simplex("a", 0), Simplex("a", 0)),
                       "x": (Simplex("e", 1), Simplex("f", 1), Simplex("f", 1))})


# groups -----------------------------------------------------------------------------------

def test_loop_group_free_reduction():
    G = LoopGroup(presets.minimal_sphere(2))
    s = G.letter(Simplex("sigma", 2))
    assert len(G.mul(s, s)) == 2
    assert G.mul(s, G.inv(s)) == G.identity(1)


def test_loop_group_face_zero_formula():
    X = presets.collapsed_simplex(3, 0)
    G = LoopGroup(X)
    x = X.simplex("x0123")
    lhs = G.face(0, G.letter(x))
    rhs = G.mul(G.inv(G.letter(X.face(0, x))), G.letter(X.face(1, x)))
    assert lhs == rhs


@given(st.integers(0, 2), st.integers(0, 2))
def test_loop_group_simplicial_identities(i, j):
    X = presets.collapsed_simplex(4, 0)
    G = LoopGroup(X)
    g = G.mul(G.letter(X.simplex("x0124")), G.inv(G.letter(X.simplex("x1234"))))
    if i < j:
        assert G.face(i, G.face(j, g)) == G.face(j - 1, G.face(i, g))
    assert G.face(i, G.degeneracy(i, g)) == g
    # faces and degeneracies are homomorphisms
    h = G.letter(X.simplex("x0234"))
    assert G.face(j, G.mul(g, h)) == G.mul(G.face(j, g), G.face(j, h))


def test_loop_group_needs_reduced_and_bounds():
    with pytest.raises(PresentationError):
        LoopGroup(presets.standard_simplex(1))
    G = LoopGroup(presets.minimal_sphere(2), truncation=2)
    with pytest.raises(Unbounded):
        G.nondegenerate(1)
    with pytest.raises(Unbounded):
        G.nondegenerate(3, 2)
    with pytest.raises(LevelMismatch):
        G.mul(G.identity(0), G.identity(1))


def test_finite_group_table_and_levels():
    G = FiniteGroup.cyclic(3)
    a = G.elements(0)[1]
    assert G.power(a, 3) == G.identity(0)
    assert G.face(0, G.degeneracy(0, a)) == a
    with pytest.raises(PresentationError):
        FiniteGroup("bad", ["1", "g"], [[0, 1], [0, 1]])


# bundles -------------------------------------------------------------------------------------

def test_canonical_twist_identities():
    for name in ("S2", "D4", "R1"):
        B = loop(name)
        assert B.twist.failures(4) == []


def test_corrupted_twist_detected():
    X = presets.collapsed_simplex(3, 0)
    G = LoopGroup(X)
    vals = {g: G.letter(X.simplex(g)) for g, d in X.generators.items() if d}
    vals["x0123"] = G.inv(vals["x0123"])
    with pytest.raises(TwistError) as e:
        TwistingFunction(X, G, vals, check_dim=4)
    assert str(e.value.witness) == "x0123"


def test_cover_face(cover):
    # ∂_0 (e, 1) = (*, g)
    P = cover.total
    G = cover.group
    p = Prod((cover.base.simplex("e"), G.identity(1)))
    assert P.face(0, p) == Prod((cover.base.simplex("pt"), G.element("g")))
    assert P.face(1, p) == Prod((cover.base.simplex("pt"), G.element("1")))


def test_total_space_bases(cover, trivial):
    assert {str(p) for p in total_basis(cover, 1)} == {str(Prod((cover.base.simplex("e"), g)))
                                                        for g in cover.group.elements(1)}
    two = total_basis(trivial, 2)
    e = trivial.base.simplex("e")
    assert set(two) == {Prod((degenerate_simplex(0, e), degenerate_simplex(1, e))),
                        Prod((degenerate_simplex(1, e), degenerate_simplex(0, e)))}


# presentations ------------------------------------------------------------------------------------

def test_parse_simplex_and_word():
    X = presets.collapsed_simplex(3, 0)
    assert parse_simplex("s_1 s_0 x01", X.generators).degens == (1, 0)
    with pytest.raises(ParseError):
        parse_simplex("s_x x01", X.generators)
    with pytest.raises(ParseError):
        parse_simplex("nope", X.generators)
    G = LoopGroup(X)
    w = parse_word("x012~ x123~^-1", G, 1)
    assert len(w) == 2
    with pytest.raises(ParseError):
        parse_word("x012~", G, 0)


@pytest.mark.parametrize("name", ["S2", "D3", "R1"])
def test_bundle_json_roundtrip(name):
    B = loop(name)
    doc = bundle_doc(B, truncation=5)
    P = loads(dumps(doc))
    assert P.base.generators == B.base.generators
    assert P.base.faces == B.base.faces
    assert dumps(bundle_doc(P.bundle, truncation=5)) == dumps(doc)


def test_finite_bundle_roundtrip(cover, trivial):
    for B in (cover, trivial):
        P = from_doc(bundle_doc(B))
        assert P.bundle.twist.values.keys() == B.twist.values.keys()


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load(bad)
    with pytest.raises(ParseError):
        load(tmp_path / "missing.json")
    with pytest.raises(ParseError):
        loads('{"generators": [["pt"], ["e"]], "faces": {"e.0": "pt"}}')


def test_preset_files_load(preset_dir):
    for path in sorted(preset_dir.glob("*.json")):
        if "corrupt" in path.name:
            with pytest.raises(TwistError):
                load(path, check_dim=4)
        else:
            assert load(path, check_dim=4).bundle is not None


def test_chain_codec_roundtrip(cover):
    from szczarba.chains import Chain
    from szczarba.szczarba import psi_key

    P = from_doc(bundle_doc(cover))
    B = P.bundle
    ch = psi_key(B, B.base.simplex("e"), B.group.element("g"))
    codec = ChainCodec(P)
    assert codec.decode(codec.encode(ch)) == ch
    mixed = Chain({(B.base.simplex("e"), B.group.element("g")): 3, (B.base.simplex("pt"), B.group.element("1")): -1})
    assert codec.decode(codec.encode(mixed)) == mixed
