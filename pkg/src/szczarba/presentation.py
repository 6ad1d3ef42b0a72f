"""JSON presentations of simplicial sets, groups, twists and fibres.

    {
      "name": "cover",
      "generators": [["pt"], ["e"]],                  # one list per dimension
      "faces": {"e.0": "pt", "e.1": "pt"},            # "gen.i" -> "s_j ... name"
      "basepoint": "pt",
      "vertices": {"e": [0, 1]},                      # optional, for vertex notation
      "group": {"finite": {"elements": ["1", "g"], "table": [[0, 1], [1, 0]]}},
      "twist": {"e": "g"},
      "fibre": "group"                                # or a presentation + "action"
    }

A loop group is ``{"loopgroup_of": <name of this set>, "truncation": N}``;
its twist defaults to the canonical x ↦ x̄ and words are written
``"x~ y~^-1"`` (a degenerate letter as ``"(s_1 x)~"``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .bundles import Bundle, GroupFibre, GSet, TwistingFunction
from .chains import Chain
from .cobar import CobarWord
from .groups import FiniteElement, FiniteGroup, LoopGroup, LoopWord
from .simplicial import PresentationError, Prod, Simplex, SimplicialSet, degenerate_simplex

NAME = re.compile(r"^[A-Za-z0-9_]+$")
LETTER = re.compile(r"^(?:\((?P<deg>[^)]*)\)|(?P<name>[A-Za-z0-9_]+))~(?P<inv>\^-1)?$")


class ParseError(PresentationError):
    pass


# simplex expressions ------------------------------------------------------------------

def parse_simplex(text: str, dims: dict[str, int]) -> Simplex:
    toks = text.split()
    if not toks:
        raise ParseError("empty simplex expression")
    name = toks[-1]
    if not NAME.match(name) or name not in dims:
        raise ParseError(f"unknown generator {name!r}")
    x = Simplex(name, dims[name])
    for tok in reversed(toks[:-1]):
        m = re.fullmatch(r"s_\{?(\d+)\}?", tok)
        if not m:
            raise ParseError(f"bad degeneracy {tok!r} in {text!r}")
        x = degenerate_simplex(int(m.group(1)), x)
    return x


def format_simplex(x: Simplex) -> str:
    return str(x)


def parse_word(text: str, G, level: int, dims: dict[str, int] | None = None):
    text = text.strip()
    if isinstance(G, FiniteGroup):
        return G.element(text, level)
    if text in ("1", ""):
        return G.identity(level)
    dims = dims or G.base.generators
    out = G.identity(level)
    for tok in re.findall(r"\([^)]*\)~(?:\^-1)?|\S+", text):
        m = LETTER.match(tok)
        if not m:
            raise ParseError(f"bad group letter {tok!r}")
        x = parse_simplex(m.group("deg") or m.group("name"), dims)
        if x.dim != level + 1:
            raise ParseError(f"letter {tok!r} has level {x.dim - 1}, expected {level}")
        out = G.mul(out, G.letter(x, -1 if m.group("inv") else 1))
    return out


# presentations ------------------------------------------------------------------------------

def build_set(doc: dict) -> SimplicialSet:
    try:
        gens_by_dim = doc["generators"]
    except KeyError:
        raise ParseError("missing 'generators'") from None
    dims = {}
    for d, names in enumerate(gens_by_dim):
        for g in names:
            if not NAME.match(g):
                raise ParseError(f"bad generator name {g!r}")
            if g in dims:
                raise ParseError(f"duplicate generator {g!r}")
            dims[g] = d
    faces = {}
    raw = doc.get("faces", {})
    for g, d in dims.items():
        if d == 0:
            continue
        fs = []
        for i in range(d + 1):
            key = f"{g}.{i}"
            if key not in raw:
                raise ParseError(f"missing face {key}")
            y = parse_simplex(raw[key], dims)
            if y.dim != d - 1:
                raise ParseError(f"face {key} = {raw[key]!r} has dimension {y.dim}, expected {d - 1}")
            fs.append(y)
        faces[g] = tuple(fs)
    extra = set(raw) - {f"{g}.{i}" for g, d in dims.items() for i in range(d + 1)}
    if extra:
        raise ParseError(f"faces given for unknown keys: {sorted(extra)}")
    verts = {k: tuple(v) for k, v in doc.get("vertices", {}).items()}
    return SimplicialSet(doc.get("name", "X"), dims, faces, basepoint=doc.get("basepoint"), vertices=verts or None)


def build_group(desc: dict, X: SimplicialSet, truncation: int | None = None):
    if "finite" in desc:
        f = desc["finite"]
        return FiniteGroup(f.get("name", "G"), f["elements"], f["table"])
    if "loopgroup_of" in desc:
        if desc["loopgroup_of"] != X.name:
            raise ParseError(f"loopgroup_of {desc['loopgroup_of']!r} does not name this set ({X.name!r})")
        trunc = truncation if truncation is not None else desc.get("truncation")
        return LoopGroup(X, trunc)
    if "trivial" in desc:
        return FiniteGroup.trivial()
    raise ParseError("group must be 'finite', 'loopgroup_of' or 'trivial'")


@dataclass
class Presentation:
    doc: dict
    base: SimplicialSet
    group: object | None = None
    twist: TwistingFunction | None = None
    fibre: object | None = None
    name: str = ""
    source: str | None = None

    @property
    def bundle(self) -> Bundle:
        if self.twist is None:
            raise ParseError("presentation has no group/twist")
        return Bundle(self.base, self.group, self.twist, self.fibre or GroupFibre(self.group), name=self.name)

    @property
    def dims(self) -> dict[str, int]:
        return self.base.generators


def loads(text: str, truncation: int | None = None, check_dim: int | None = None) -> Presentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e
    return from_doc(doc, truncation, check_dim)


def load(path: str | Path, truncation: int | None = None, check_dim: int | None = None) -> Presentation:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    pres = loads(text, truncation, check_dim)
    pres.source = str(p)
    return pres


def from_doc(doc: dict, truncation: int | None = None, check_dim: int | None = None) -> Presentation:
    X = build_set(doc)
    pres = Presentation(doc, X, name=doc.get("name", X.name))
    if "group" not in doc:
        return pres
    G = build_group(doc["group"], X, truncation)
    pres.group = G
    raw = doc.get("twist")
    if raw is None:
        if not isinstance(G, LoopGroup):
            raise ParseError("a finite group needs an explicit twist")
        vals = {g: G.letter(X.simplex(g)) for g, d in X.generators.items() if d >= 1}
    else:
        vals = {}
        for g, d in X.generators.items():
            if d == 0:
                continue
            if g not in raw:
                raise ParseError(f"twist: no value for {g}")
            vals[g] = parse_word(raw[g], G, d - 1, X.generators)
    pres.twist = TwistingFunction(X, G, vals, check_dim=check_dim)
    fib = doc.get("fibre", "group")
    if fib == "group":
        pres.fibre = GroupFibre(G)
    else:
        if not isinstance(G, FiniteGroup):
            raise ParseError("G-set fibres need a finite group")
        F = build_set(fib)
        action = {}
        for k, v in doc.get("action", {}).items():
            el, _, g = k.partition(".")
            action[(el, g)] = v
        pres.fibre = GSet(F, G, action or None)
    return pres


# writing --------------------------------------------------------------------------------------

def set_doc(X: SimplicialSet) -> dict:
    gens = [[] for _ in range(X.max_dim + 1)]
    for g, d in X.generators.items():
        gens[d].append(g)
    faces = {f"{g}.{i}": str(y) for g, fs in X.faces.items() for i, y in enumerate(fs)}
    doc = {"name": X.name, "generators": gens, "faces": faces}
    if X.basepoint is not None:
        doc["basepoint"] = X.basepoint
    if X.vertices:
        doc["vertices"] = {k: list(v) for k, v in X.vertices.items()}
    return doc


def bundle_doc(B: Bundle, truncation: int | None = None) -> dict:
    doc = set_doc(B.base)
    G = B.group
    if isinstance(G, LoopGroup):
        doc["group"] = {"loopgroup_of": B.base.name, "truncation": truncation if truncation is not None else G.truncation}
    else:
        doc["group"] = {"finite": {"name": G.name, "elements": G.names, "table": G.table}}
    doc["twist"] = {g: str(v) for g, v in B.twist.values.items()}
    if isinstance(B.fibre, GSet):
        doc["fibre"] = set_doc(B.fibre.space)
        doc["action"] = {f"{el}.{g}": v for (el, g), v in B.fibre.action.items()}
    else:
        doc["fibre"] = "group"
    doc["name"] = B.base.name
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# chains as JSON ---------------------------------------------------------------------------------

class ChainCodec:
    """Round-trippable JSON for chains over a presentation."""

    def __init__(self, pres: Presentation):
        self.pres = pres

    def key(self, k):
        if isinstance(k, tuple):
            return {"tensor": [self.key(a) for a in k]}
        if isinstance(k, Prod):
            return {"pair": [self.key(a) for a in k.parts]}
        if isinstance(k, CobarWord):
            return {"cobar": [str(x) for x in k.letters]}
        if isinstance(k, LoopWord):
            return {"word": str(k), "level": k.level}
        if isinstance(k, FiniteElement):
            return {"element": k.name, "level": k.level}
        if isinstance(k, Simplex):
            # the generator dimension travels along so base and fibre names may clash
            return {"simplex": str(k), "gdim": k.gdim}
        raise ParseError(f"cannot encode {k!r}")

    def unkey(self, obj):
        if "tensor" in obj:
            return tuple(self.unkey(a) for a in obj["tensor"])
        if "pair" in obj:
            return Prod(tuple(self.unkey(a) for a in obj["pair"]))
        if "cobar" in obj:
            return CobarWord(tuple(parse_simplex(s, self.pres.dims) for s in obj["cobar"]))
        if "word" in obj:
            return parse_word(obj["word"], self.pres.group, obj["level"], self.pres.dims)
        if "element" in obj:
            return self.pres.group.element(obj["element"], obj["level"])
        if "simplex" in obj:
            name = obj["simplex"].split()[-1]
            return parse_simplex(obj["simplex"], {name: obj["gdim"]})
        raise ParseError(f"cannot decode {obj!r}")

    def encode(self, chain: Chain) -> list:
        return [[c, self.key(k)] for k, c in chain.sorted_items()]

    def decode(self, data: list) -> Chain:
        return Chain((self.unkey(k), c) for c, k in data)
