"""Small simplicial sets and bundles used throughout the tests and scripts."""

from __future__ import annotations

import random
from itertools import combinations

from .bundles import Bundle, GroupFibre, GSet, TwistingFunction
from .groups import FiniteGroup, LoopGroup
from .simplicial import PresentationError, Simplex, SimplicialSet


def _collapsed(d: int, base: str = "pt") -> Simplex:
    return Simplex(base, 0, tuple(range(d - 1, -1, -1)))


def point(name: str = "pt") -> SimplicialSet:
    return SimplicialSet(name, {"pt": 0})


def minimal_circle() -> SimplicialSet:
    return SimplicialSet("S1", {"pt": 0, "e": 1}, {"e": (Simplex("pt", 0), Simplex("pt", 0))})


def minimal_sphere(n: int = 2) -> SimplicialSet:
    faces = {"sigma": tuple(_collapsed(n - 1) for _ in range(n + 1))}
    return SimplicialSet(f"S{n}", {"pt": 0, "sigma": n}, faces)


def standard_simplex(n: int) -> SimplicialSet:
    gens, faces, verts = {}, {}, {}
    for d in range(n + 1):
        for v in combinations(range(n + 1), d + 1):
            name = "v" + "".join(map(str, v))
            gens[name] = d
            verts[name] = v
            if d:
                faces[name] = tuple(
                    Simplex("v" + "".join(map(str, v[:i] + v[i + 1:])), d - 1) for i in range(d + 1)
                )
    return SimplicialSet(f"Delta{n}", gens, faces, basepoint="v0", vertices=verts)


def collapsed_simplex(n: int, skeleton: int = 0) -> SimplicialSet:
    """Δ^n with its ``skeleton``-skeleton collapsed to the basepoint.

    ``skeleton=0`` gives a reduced set whose edges survive, ``skeleton=1``
    a 1-reduced one.  Generators are named x<vertices>.
    """
    if n > 9:
        raise PresentationError("vertex names are single digits")
    gens = {"pt": 0}
    faces, verts = {}, {}

    def ref(v):
        d = len(v) - 1
        return Simplex("x" + "".join(map(str, v)), d) if d > skeleton else _collapsed(d)

    for d in range(skeleton + 1, n + 1):
        for v in combinations(range(n + 1), d + 1):
            name = "x" + "".join(map(str, v))
            gens[name] = d
            verts[name] = v
            faces[name] = tuple(ref(v[:i] + v[i + 1:]) for i in range(d + 1))
    return SimplicialSet(f"Delta{n}_sk{skeleton}", gens, faces, vertices=verts)


def random_one_reduced(seed: int, counts: dict[int, int] | None = None, attempts: int = 200) -> SimplicialSet:
    """A random 1-reduced set; faces of each new generator are found by backtracking."""
    rng = random.Random(seed)
    counts = counts or {2: 2, 3: 2, 4: 1}
    X = SimplicialSet("R", {"pt": 0}, {}, validate=False)
    for d in sorted(counts):
        if d < 2:
            raise PresentationError("1-reduced sets have no generators below dimension 2")
        for idx in range(counts[d]):
            name = f"r{d}_{idx}"
            cands = [y for y in X.simplices(d - 1)]
            rng.shuffle(cands)
            found = _backtrack(X, d, cands, [], rng, [attempts * 50])
            if found is None:
                raise PresentationError(f"no consistent faces for a new {d}-simplex (seed {seed})")
            X.generators[name] = d
            X.faces[name] = tuple(found)
    X.name = f"random{seed}"
    X.validate = True
    X.check()
    return X


def _backtrack(X, d, cands, chosen, rng, budget):
    if budget[0] <= 0:
        return None
    budget[0] -= 1
    j = len(chosen)
    if j == d + 1:
        return chosen
    order = cands[:]
    rng.shuffle(order)
    for y in order:
        ok = True
        for i in range(j):
            # ∂_i ∂_j x = ∂_{j-1} ∂_i x for i < j
            if d - 1 >= 1 and X.face(i, y) != X.face(j - 1, chosen[i]):
                ok = False
                break
        if ok:
            res = _backtrack(X, d, cands, chosen + [y], rng, budget)
            if res is not None:
                return res
    return None


# bundles ----------------------------------------------------------------------------

def double_cover() -> Bundle:
    X = minimal_circle()
    G = FiniteGroup.cyclic(2)
    tau = TwistingFunction(X, G, {"e": G.element("g")})
    return Bundle(X, G, tau, GroupFibre(G), name="double-cover")


def trivial_bundle(base: SimplicialSet | None = None, fibre: SimplicialSet | None = None) -> Bundle:
    X = base or minimal_circle()
    F = fibre or minimal_circle()
    G = FiniteGroup.trivial()
    return Bundle(X, G, TwistingFunction.trivial(X, G), GSet.trivial_action(F, G), name="trivial-bundle")


def loop_bundle(X: SimplicialSet, truncation: int | None = None) -> Bundle:
    G = LoopGroup(X, truncation)
    return Bundle(X, G, TwistingFunction.canonical(X, G), GroupFibre(G), name=f"loop-{X.name}")


def cyclic_cover(m: int) -> Bundle:
    X = minimal_circle()
    G = FiniteGroup.cyclic(m)
    tau = TwistingFunction(X, G, {"e": G.elements(0)[1]})
    return Bundle(X, G, tau, GroupFibre(G), name=f"cover{m}")
