"""Named verification suites run by ``szczarba check``.

Every suite returns a :class:`SuiteResult`; a failure carries the first
offending basis element and both sides of the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .bundles import TwistError
from .chains import Chain, IDENTITY, aw, boundary_of, format_chain, tensor_map
from .cobar import (
    Cochain,
    E_of,
    NotOneReduced,
    augment_cobar,
    baues_of,
    check_twisting,
    cobar_diagonal,
    cobar_differential,
    group_algebra,
    induced_map,
    word,
    words,
)
from .groups import LoopGroup
from .homology import is_quasi_iso
from .presentation import Presentation
from .szczarba import (
    SzczarbaCochain,
    check_d_operator_commutation,
    check_degeneracy_descent,
    check_hat_sz_faces,
    check_psi_index_sets,
    check_sz_faces,
    psi_key,
    szczarba_t,
)
from .twisted_tensor import TwistedTensorProduct, product_diagonal, psi_chain_map


class UnknownSuite(KeyError):
    pass


@dataclass
class RunConfig:
    path: str = ""
    command: str = "check"
    dim: int = 4
    truncation: int = 5
    field: str = "q"
    fmt: str = "text"
    word_length: int = 2

    def __post_init__(self):
        if self.dim < 0 or self.truncation < 0 or self.word_length < 0:
            raise ValueError("bounds must be non-negative")


@dataclass
class Failure:
    what: str
    witness: str
    lhs: str = ""
    rhs: str = ""

    def __str__(self):
        s = f"{self.what} at {self.witness}"
        if self.lhs or self.rhs:
            s += f"\n    lhs: {self.lhs}\n    rhs: {self.rhs}"
        return s


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    skipped: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, what, witness, lhs="", rhs=""):
        self.failures.append(Failure(what, str(witness), str(lhs), str(rhs)))

    def line(self) -> str:
        if self.skipped:
            return f"SKIP {self.name}: {self.skipped}"
        status = "PASS" if self.ok else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name} ({self.checked} checked){extra}"


# suites ------------------------------------------------------------------------------------

def suite_simplicial(p: Presentation, cfg: RunConfig) -> SuiteResult:
    r = SuiteResult("simplicial")
    X = p.base
    for what, x in X.full_identity_failures(cfg.dim):
        r.fail(what, x)
    r.checked = len(X.basis(cfg.dim))
    if p.twist is not None:
        for what, x in p.twist.failures(cfg.dim):
            r.fail(what, x)
    return r


def suite_twisting(p: Presentation, cfg: RunConfig) -> SuiteResult:
    r = SuiteResult("twisting")
    B = p.bundle
    rep = check_twisting(Cochain(-1, SzczarbaCochain(B.twist)), B.base, group_algebra(B.group), cfg.dim)
    r.checked = rep.checked
    for what, x, lhs, rhs in rep.failures:
        r.fail(what, p.base.format_simplex(x), format_chain(lhs), format_chain(rhs))
    return r


def _szczarba_map(p: Presentation):
    B = p.bundle
    A = group_algebra(B.group)
    return B, A, induced_map(Cochain(-1, SzczarbaCochain(B.twist)), A)


def suite_comultiplicativity(p: Presentation, cfg: RunConfig) -> SuiteResult:
    """Δ Sz[x] = (Sz ⊗ Sz) Δ[x] on every generator [x]."""
    r = SuiteResult("comultiplicativity")
    B, A, f = _szczarba_map(p)
    fw = (1, lambda w: f(Chain.basis(w)), 0)
    for x in p.base.basis(cfg.dim):
        if x.dim == 0:
            continue
        c = Chain.basis(word(x))
        lhs = aw(B.group, f(c))
        rhs = tensor_map(cobar_diagonal(p.base, c), [fw, fw])
        r.checked += 1
        if lhs != rhs:
            r.fail("Δ Sz ≠ (Sz⊗Sz) Δ", p.base.format_simplex(x), format_chain(lhs), format_chain(rhs))
    return r


def suite_bialgebra(p: Presentation, cfg: RunConfig) -> SuiteResult:
    """The induced map on all cobar words of degree ≤ dim: d, Δ and ε are preserved."""
    r = SuiteResult("bialgebra")
    B, A, f = _szczarba_map(p)
    X = p.base
    fw = (1, lambda w: f(Chain.basis(w)), 0)
    for w in words(X, cfg.dim, cfg.dim + 2):
        c = Chain.basis(w)
        r.checked += 1
        lhs, rhs = A.d(f(c)), f(cobar_differential(X, c))
        if lhs != rhs:
            r.fail("d f ≠ f d", w, format_chain(lhs), format_chain(rhs))
        lhs, rhs = aw(B.group, f(c)), tensor_map(cobar_diagonal(X, c), [fw, fw])
        if lhs != rhs:
            r.fail("Δ f ≠ (f⊗f) Δ", w, format_chain(lhs), format_chain(rhs))
        if A.augment(f(c)) != augment_cobar(c):
            r.fail("ε f ≠ ε", w)
    return r


def suite_cobar(p: Presentation, cfg: RunConfig) -> SuiteResult:
    """d² = 0, Δ a chain map, coassociative and counital on words of degree ≤ dim."""
    r = SuiteResult("cobar")
    X = p.base
    d = lambda ch: cobar_differential(X, ch)
    D = lambda ch: cobar_diagonal(X, ch)
    dk = (1, lambda w: d(Chain.basis(w)), -1)
    Dk = (1, lambda w: D(Chain.basis(w)), 0)
    for w in words(X, cfg.dim, cfg.dim + 2):
        c = Chain.basis(w)
        r.checked += 1
        if d(d(c)):
            r.fail("d² ≠ 0", w, format_chain(d(d(c))), "0")
        lhs = D(d(c))
        rhs = tensor_map(D(c), [dk, IDENTITY]) + tensor_map(D(c), [IDENTITY, dk])
        if lhs != rhs:
            r.fail("Δ d ≠ d Δ", w, format_chain(lhs), format_chain(rhs))
        lhs = tensor_map(D(c), [Dk, IDENTITY])
        rhs = tensor_map(D(c), [IDENTITY, Dk])
        if lhs != rhs:
            r.fail("not coassociative", w, format_chain(lhs), format_chain(rhs))
        left = Chain()
        right = Chain()
        for (a, b), k in D(c).items():
            if augment_cobar(Chain.basis(a)):
                left.add(b, k)
            if augment_cobar(Chain.basis(b)):
                right.add(a, k)
        if left != c or right != c:
            r.fail("not counital", w, format_chain(left), format_chain(right))
    return r


def suite_baues(p: Presentation, cfg: RunConfig) -> SuiteResult:
    r = SuiteResult("baues")
    X = p.base
    if not X.one_reduced:
        r.skipped = "needs a 1-reduced simplicial set"
        return r
    for x in X.basis(cfg.dim):
        if x.dim < 2:
            continue
        r.checked += 1
        lhs, rhs = E_of(X, x), baues_of(X, x)
        if lhs != rhs:
            r.fail("Δ ≠ Baues diagonal", X.format_simplex(x), format_chain(lhs), format_chain(rhs))
    return r


def suite_degeneracies(p: Presentation, cfg: RunConfig) -> SuiteResult:
    """Sz_i s_p = s_q Sz_j, its hatSz analogue, and vanishing of t and ψ on degenerate inputs."""
    r = SuiteResult("degeneracies")
    B = p.bundle
    X = B.base
    top = min(cfg.dim, 5)
    for what, x, i, q, lhs, rhs in check_degeneracy_descent(B.twist, top - 1):
        r.fail(f"{what}_{i} s_{q}", X.format_simplex(x), lhs, rhs)
    for fail in check_d_operator_commutation(top):
        r.fail("D-operator commutation", fail)
    # ψ is a map of right modules over the fibre, so fibre degree 0 and
    # single letters are enough
    T = TwistedTensorProduct(B, max_length=min(cfg.word_length, 1))
    ys = T.fibre_basis(0)[:4]
    for n in range(1, top + 1):
        for x in X.simplices(n):
            if not x.degenerate:
                continue
            r.checked += 1
            t = szczarba_t(B.twist, x)
            if t:
                r.fail("t(degenerate) ≠ 0", x, format_chain(t), "0")
            for y in ys:
                v = psi_key(B, x, y)
                if v:
                    r.fail("ψ(degenerate ⊗ y) ≠ 0", f"{x} ⊗ {y}", format_chain(v), "0")
    return r


def suite_sz_faces(p: Presentation, cfg: RunConfig) -> SuiteResult:
    r = SuiteResult("sz-faces")
    B = p.bundle
    top = min(cfg.dim, 5)
    for what, x, i, k in check_sz_faces(B.twist, top):
        r.fail(f"Sz {what} face, k={k}", f"{p.base.format_simplex(x)}, i={i}")
    for what, x, i, k in check_hat_sz_faces(B.twist, top):
        r.fail(f"hatSz {what} face, k={k}", f"{p.base.format_simplex(x)}, i={i}")
    r.checked = len(B.base.basis(top))
    return r


def suite_index_sets(p: Presentation, cfg: RunConfig) -> SuiteResult:
    r = SuiteResult("index-sets")
    for fail in check_psi_index_sets(min(max(cfg.dim, 1), 7)):
        r.fail("Ψ_p", fail)
    r.checked = 1
    return r


def _tensor(p: Presentation, cfg: RunConfig) -> TwistedTensorProduct:
    return TwistedTensorProduct(p.bundle, max_length=cfg.word_length)


def suite_twisted_tensor(p: Presentation, cfg: RunConfig) -> SuiteResult:
    """d_t² = 0; the diagonal agrees with the abstract composite, is a chain map, coassociative, counital."""
    r = SuiteResult("twisted-tensor")
    T = _tensor(p, cfg)
    for n in range(cfg.dim + 1):
        for key in T.basis(n):
            c = Chain.basis(key)
            r.checked += 1
            dd = T.d(T.d(c))
            if dd:
                r.fail("d_t² ≠ 0", key, format_chain(dd), "0")
            D = T.diagonal(c)
            A = T.diagonal(c, abstract=True)
            if D != A:
                r.fail("explicit ≠ abstract diagonal", key, format_chain(D), format_chain(A))
            lhs, rhs = T.d_tensor2(D), T.diagonal(T.d(c))
            if lhs != rhs:
                r.fail("Δ d_t ≠ d_t Δ", key, format_chain(lhs), format_chain(rhs))
            left, right = _coassoc(T, D)
            if left != right:
                r.fail("not coassociative", key, format_chain(left), format_chain(right))
            lc = Chain(((a2, b2), k) for (a1, b1, a2, b2), k in D.items() if a1.dim == 0 and b1.dim == 0)
            rc = Chain(((a1, b1), k) for (a1, b1, a2, b2), k in D.items() if a2.dim == 0 and b2.dim == 0)
            if lc != c or rc != c:
                r.fail("not counital", key, format_chain(lc), format_chain(rc))
    return r


def _coassoc(T, D: Chain):
    left, right = Chain(), Chain()
    for (a1, b1, a2, b2), k in D.items():
        for (c1, e1, c2, e2), m in T.diagonal_key((a1, b1)).items():
            left.add((c1, e1, c2, e2, a2, b2), k * m)
        # Δ has degree 0, so no Koszul sign
        for (c1, e1, c2, e2), m in T.diagonal_key((a2, b2)).items():
            right.add((a1, b1, c1, e1, c2, e2), k * m)
    return left, right


def suite_psi_dgc(p: Presentation, cfg: RunConfig) -> SuiteResult:
    """ψ is a chain map, commutes with the diagonals and preserves the counit."""
    r = SuiteResult("psi-dgc")
    B = p.bundle
    T = _tensor(p, cfg)
    P = B.total
    ps = lambda k: psi_key(B, k[0], k[1])
    for n in range(cfg.dim + 1):
        for key in T.basis(n):
            r.checked += 1
            val = ps(key)
            lhs = Chain()
            for q, c in val.items():
                lhs.add_chain(boundary_of(P, q), c)
            rhs = T.d(Chain.basis(key)).map(ps)
            if lhs != rhs:
                r.fail("d ψ ≠ ψ d_t", key, format_chain(lhs), format_chain(rhs))
            lhs = product_diagonal(P, val)
            rhs = tensor_map(T.diagonal(Chain.basis(key)), [(2, ps, 0), (2, ps, 0)])
            if lhs != rhs:
                r.fail("Δ ψ ≠ (ψ⊗ψ) Δ", key, format_chain(lhs), format_chain(rhs))
            e1 = sum(c for q, c in val.items() if q.dim == 0)
            e2 = T.counit(Chain.basis(key))
            if e1 != e2:
                r.fail("ε ψ ≠ ε", key, e1, e2)
    return r


def suite_quasi_iso(p: Presentation, cfg: RunConfig) -> SuiteResult:
    r = SuiteResult("quasi-iso")
    if isinstance(p.group, LoopGroup):
        r.skipped = "the fibre has infinitely many simplices per degree"
        return r
    T = _tensor(p, cfg)
    f = psi_chain_map(T, cfg.dim + 2)
    r.checked = cfg.dim + 2
    if not is_quasi_iso(f, cfg.dim):
        r.fail("mapping cone of ψ not acyclic", f"degrees ≤ {cfg.dim + 1}")
    return r


SUITES: dict[str, Callable[[Presentation, RunConfig], SuiteResult]] = {
    "simplicial": suite_simplicial,
    "twisting": suite_twisting,
    "comultiplicativity": suite_comultiplicativity,
    "bialgebra": suite_bialgebra,
    "cobar": suite_cobar,
    "baues": suite_baues,
    "degeneracies": suite_degeneracies,
    "sz-faces": suite_sz_faces,
    "index-sets": suite_index_sets,
    "twisted-tensor": suite_twisted_tensor,
    "psi-dgc": suite_psi_dgc,
    "quasi-iso": suite_quasi_iso,
}


def run_suite(name: str, p: Presentation, cfg: RunConfig) -> list[SuiteResult]:
    if name == "all":
        out = []
        for n, fn in SUITES.items():
            try:
                out.append(fn(p, cfg))
            except (NotOneReduced, TwistError) as e:
                out.append(SuiteResult(n, skipped=str(e)))
        return out
    if name not in SUITES:
        raise UnknownSuite(name)
    try:
        return [SUITES[name](p, cfg)]
    except NotOneReduced as e:
        return [SuiteResult(name, skipped=str(e))]
