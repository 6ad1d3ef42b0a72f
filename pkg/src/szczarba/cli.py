"""``szczarba`` command line: check, eval, homology, ss, list-basis.

Exit codes: 0 pass, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .bundles import GSet, TwistError
from .chains import Chain, boundary_of, format_chain
from .cobar import cobar_diagonal, word
from .groups import FiniteGroup, LoopGroup
from .homology import FiniteComplex, homology_table
from .linalg import Field, NonField
from .presentation import ChainCodec, ParseError, Presentation, load, parse_simplex, parse_word
from .simplicial import PresentationError, SimplicialError
from .spectral import SpectralSequence, base_degree_filtration, format_page, twisted_filtration
from .suites import RunConfig, UnknownSuite, SUITES, run_suite
from .szczarba import format_group_word, format_t, psi_key, sz
from .twisted_tensor import InfiniteDegree, TwistedTensorProduct, total_complex

OK, FAIL, USAGE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=4, help="dimension / degree bound (default 4)")
    common.add_argument("--truncation", type=int, default=5, help="loop-group level bound (default 5)")
    common.add_argument("--word-length", type=int, default=2, help="max loop-group word length in fibre bases")
    common.add_argument("--field", default="q", help="q or fp:<prime>")
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    ap = argparse.ArgumentParser(prog="szczarba", description="Szczarba twisting cochains on finite simplicial sets.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run a verification suite")
    p.add_argument("file")
    p.add_argument("suite", help="one of: " + ", ".join([*SUITES, "all"]))

    p = sub.add_parser("eval", parents=[common], help="evaluate t(x), Delta[x], psi(x,y) or Sz((i..),x)")
    p.add_argument("file")
    p.add_argument("expr")

    p = sub.add_parser("homology", parents=[common], help="homology of X, or of C(X) (x)_t C(F) with --twisted")
    p.add_argument("file")
    p.add_argument("--twisted", action="store_true")

    p = sub.add_parser("ss", parents=[common], help="spectral sequence pages of C(X) (x)_t C(F)")
    p.add_argument("file")
    p.add_argument("--filtration", choices=("auto", "augmentation", "base"), default="auto")

    p = sub.add_parser("list-basis", parents=[common], help="list nondegenerate simplices")
    p.add_argument("file")
    return ap


# helpers ----------------------------------------------------------------------------------

def resolve_simplex(pres: Presentation, text: str):
    """A simplex expression, or a vertex string like 0123 when the set carries vertex labels."""
    text = text.strip()
    X = pres.base
    try:
        return parse_simplex(text, pres.dims)
    except ParseError:
        if not text.isdigit():
            raise
    for n in range(len(text) - 1, -1, -1):
        for x in X.simplices(n) if n <= X.max_dim + 1 else []:
            if X.format_simplex(x) == text:
                return x
    raise ParseError(f"no simplex with vertices {text}")


def _fibre_element(pres: Presentation, text: str):
    """A fibre simplex; group elements take an optional ``@level`` (inferred from the letters otherwise)."""
    fib = pres.bundle.fibre
    text = text.strip()
    if isinstance(fib, GSet):
        return parse_simplex(text, fib.space.generators)
    text, _, lev = text.partition("@")
    if lev:
        return parse_word(text, pres.group, int(lev), pres.dims)
    level = 0
    m = re.search(r"\(([^)]*)\)~|([A-Za-z0-9_]+)~", text)
    if m and isinstance(pres.group, LoopGroup):
        level = parse_simplex(m.group(1) or m.group(2), pres.dims).dim - 1
    return parse_word(text, pres.group, level, pres.dims)


def _normalized_complex(X, max_deg: int) -> FiniteComplex:
    basis = {n: X.nondegenerate(n) for n in range(max_deg + 1)}
    return FiniteComplex.from_chains(basis, lambda x: boundary_of(X, x), (0, max_deg), name=f"C({X.name})")


def _emit(cfg: RunConfig, text: str, data) -> None:
    if cfg.fmt == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


# commands -----------------------------------------------------------------------------------

def cmd_check(pres: Presentation, suite: str, cfg: RunConfig) -> int:
    results = run_suite(suite, pres, cfg)
    failed = any(not r.ok for r in results)
    data = {
        "file": cfg.path,
        "results": [
            {
                "suite": r.name,
                "status": "SKIP" if r.skipped else ("PASS" if r.ok else "FAIL"),
                "checked": r.checked,
                "skipped": r.skipped,
                "first_failure": vars(r.failures[0]) if r.failures else None,
                "failures": len(r.failures),
            }
            for r in results
        ],
    }
    _emit(cfg, "\n".join(r.line() for r in results), data)
    return FAIL if failed else OK


EXPR = {
    "t": re.compile(r"^t\((?P<x>[^()]+)\)$"),
    "Delta": re.compile(r"^Delta\[(?P<x>[^\]]+)\]$"),
    "psi": re.compile(r"^psi\((?P<x>[^,]+),(?P<y>.+)\)$"),
    "Sz": re.compile(r"^Sz\(\((?P<i>[\d,\s]*)\),(?P<x>[^()]+)\)$"),
}


def cmd_eval(pres: Presentation, expr: str, cfg: RunConfig) -> int:
    expr = expr.strip()
    codec = ChainCodec(pres)
    X = pres.base
    for kind, rx in EXPR.items():
        m = rx.match(expr)
        if m:
            break
    else:
        raise ParseError(f"cannot parse expression {expr!r}")
    x = resolve_simplex(pres, m.group("x"))

    if kind == "t":
        from .szczarba import SzczarbaCochain

        twist = pres.bundle.twist
        chain = SzczarbaCochain(twist)(x)
        text = format_t(twist, x) if isinstance(pres.group, LoopGroup) else f"t({X.format_simplex(x)}) = {format_chain(chain)}"
    elif kind == "Delta":
        chain = cobar_diagonal(X, Chain.basis(word(x)))
        text = f"Delta[{X.format_simplex(x)}] = {format_chain(chain)}"
    elif kind == "psi":
        y = _fibre_element(pres, m.group("y"))
        chain = psi_key(pres.bundle, x, y)
        text = f"psi({x}, {y}) = {format_chain(chain)}"
    else:
        i = tuple(int(v) for v in re.split(r"[,\s]+", m.group("i").strip()) if v)
        g = sz(pres.bundle.twist, i, x)
        chain = Chain.basis(g)
        label = format_group_word(g, X) if isinstance(pres.group, LoopGroup) else str(g)
        text = f"Sz({i}, {X.format_simplex(x)}) = {label}"
    _emit(cfg, text, {"expression": expr, "text": text, "chain": codec.encode(chain)})
    return OK


def cmd_homology(pres: Presentation, twisted: bool, cfg: RunConfig) -> int:
    if not twisted:
        C = _normalized_complex(pres.base, cfg.dim + 1)
        tables = {C.name: homology_table(C)}
    else:
        if isinstance(pres.group, LoopGroup):
            raise InfiniteDegree("the loop-group fibre has infinitely many simplices per degree")
        T = TwistedTensorProduct(pres.bundle, max_length=cfg.word_length)
        A = T.to_complex(cfg.dim + 1)
        B = total_complex(pres.bundle, cfg.dim + 1)
        tables = {"twisted tensor product": homology_table(A), "total space": homology_table(B)}
    lines = []
    for name, tab in tables.items():
        lines.append(name)
        lines += [f"  H_{n} = {h}" for n, h in tab.items()]
    data = {name: {str(n): {"rank": h.rank, "torsion": list(h.torsion)} for n, h in tab.items()}
            for name, tab in tables.items()}
    _emit(cfg, "\n".join(lines), data)
    return OK


def cmd_ss(pres: Presentation, mode: str, cfg: RunConfig) -> int:
    F = Field.parse(cfg.field)
    if isinstance(pres.group, LoopGroup):
        raise InfiniteDegree("spectral sequences need a finite structure group")
    T = TwistedTensorProduct(pres.bundle, max_length=cfg.word_length)
    if mode == "auto":
        mode = "augmentation" if isinstance(pres.group, FiniteGroup) and len(pres.group) > 1 else "base"
    if mode == "augmentation":
        filt, powers = twisted_filtration(T, cfg.dim, F)
        note = f"augmentation-ideal filtration over {F.name}" + ("" if powers.nilpotent else " (ideal not nilpotent)")
    else:
        filt = base_degree_filtration(T, cfg.dim, F)
        note = f"base-degree filtration over {F.name}"
    ss = SpectralSequence(filt)
    pages = {"1": ss.page(1), "2": ss.page(2), "inf": ss.infinity()}
    blocks = [note] + [format_page(ss, int(r) if r != "inf" else ss.length + 1, r) for r in pages]
    data = {
        "filtration": note,
        "pages": {r: [list(row) for row in ss.table(int(r) if r != "inf" else ss.length + 1)] for r in pages},
        "converges": ss.converges(),
    }
    _emit(cfg, "\n\n".join(blocks), data)
    return OK


def cmd_list_basis(pres: Presentation, cfg: RunConfig) -> int:
    X = pres.base
    rows = [(n, [X.format_simplex(x) for x in X.nondegenerate(n)]) for n in range(min(cfg.dim, X.max_dim) + 1)]
    lines = [f"{n}: {' '.join(v)}" for n, v in rows if v]
    data = {"base": {str(n): v for n, v in rows}}
    if pres.group is not None and not isinstance(pres.group, LoopGroup):
        T = TwistedTensorProduct(pres.bundle)
        frows = [(n, [str(y) for y in T.fibre_basis(n)]) for n in range(cfg.dim + 1)]
        lines += ["fibre:"] + [f"{n}: {' '.join(v)}" for n, v in frows if v]
        data["fibre"] = {str(n): v for n, v in frows}
    _emit(cfg, "\n".join(lines), data)
    return OK


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        cfg = RunConfig(args.file, args.command, args.dim, args.truncation, args.field, args.fmt, args.word_length)
        Field.parse(cfg.field)
    except (ValueError, NonField) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    try:
        pres = load(cfg.path, truncation=cfg.truncation, check_dim=cfg.dim)
    except TwistError as e:
        print(f"FAIL twisting function: {e}")
        if e.witness is not None:
            print(f"  witness: {e.witness}")
        return FAIL
    except (ParseError, PresentationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE

    try:
        if args.command == "check":
            return cmd_check(pres, args.suite, cfg)
        if args.command == "eval":
            return cmd_eval(pres, args.expr, cfg)
        if args.command == "homology":
            return cmd_homology(pres, args.twisted, cfg)
        if args.command == "ss":
            return cmd_ss(pres, args.filtration, cfg)
        return cmd_list_basis(pres, cfg)
    except UnknownSuite as e:
        print(f"error: unknown suite {e.args[0]!r}; choose from {', '.join([*SUITES, 'all'])}", file=sys.stderr)
        return USAGE
    except (ParseError, NonField, InfiniteDegree, SimplicialError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
