"""Line-oriented instance files.

A file is a sequence of blocks, each opened by a header line::

    alg p=2 dim=3 name=UT2
    c 0 0 0 1            # b0 * b0 = 1 * b0   (only nonzero constants)
    unit 1 0 1
    mod p=2 dim=2 over=UT2 name=S
    act 0 : 1 0 0 1      # action matrix of b0, row-major
    map from=A to=B name=phi
    row 1 0 0            # one row per codomain coordinate
    hom from=M to=N name=f
    row 1 0              # one row per domain basis vector
    meta family=triangular seed=3

Blank lines and ``#`` comments are ignored.  ``serialize`` writes the
canonical form: keys in fixed order, constants sorted, no comments, and
``parse(serialize(doc))`` reproduces it exactly.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import MAX_DIM, AlgebraMorphism, StructureAlgebra, make_algebra
from .errors import ParseError, ValidationError
from .modules import FdModule, ModuleHom

HEADERS = ("alg", "mod", "map", "hom")
_REQUIRED = {
    "alg": ("p", "dim", "name"),
    "mod": ("p", "dim", "over", "name"),
    "map": ("from", "to", "name"),
    "hom": ("from", "to", "name"),
}
MAX_MODULE_DIM = 256
KIND = {"alg": "algebra", "mod": "module", "map": "morphism", "hom": "module-hom"}


@dataclass
class Instance:
    kind: str  # algebra | module | morphism | module-hom
    name: str
    obj: object
    meta: dict = field(default_factory=dict)


@dataclass
class Document:
    instances: list = field(default_factory=list)

    def __getitem__(self, name):
        for inst in self.instances:
            if inst.name == name:
                return inst.obj
        raise KeyError(name)

    def of_kind(self, kind):
        return [i for i in self.instances if i.kind == kind]

    def first(self, kind):
        found = self.of_kind(kind)
        if not found:
            raise ValidationError(f"file contains no {kind}")
        return found[0].obj

    def add(self, kind, name, obj, **meta):
        self.instances.append(Instance(kind, name, obj, {k: str(v) for k, v in meta.items()}))
        return self


# ---------------------------------------------------------------- parsing


@dataclass
class _Block:
    head: str
    attrs: dict
    line: int
    body: list = field(default_factory=list)  # (line, tokens with columns)


def _tokens(line):
    """Whitespace tokens with 1-based start columns."""
    out, i, n = [], 0, len(line)
    while i < n:
        while i < n and line[i].isspace():
            i += 1
        if i >= n:
            break
        j = i
        while j < n and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _int(tok, lineno, what="integer"):
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected {what}, got {text!r}", lineno, col) from None


def _blocks(text):
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        word, col = toks[0]
        if word in HEADERS:
            attrs = {}
            for t, c in toks[1:]:
                if "=" not in t:
                    raise ParseError(f"expected key=value, got {t!r}", lineno, c)
                k, v = t.split("=", 1)
                if not k or not v:
                    raise ParseError(f"empty key or value in {t!r}", lineno, c)
                if k in attrs:
                    raise ParseError(f"duplicate key {k!r}", lineno, c)
                attrs[k] = (v, c)
            for k in _REQUIRED[word]:
                if k not in attrs:
                    raise ParseError(f"{word} header is missing {k}=", lineno, len(line.rstrip()) + 1)
            blocks.append(_Block(word, attrs, lineno))
        else:
            if not blocks:
                raise ParseError(f"{word!r} line before any header", lineno, col)
            blocks[-1].body.append((lineno, toks))
    return blocks


def _attr_int(block, key):
    v, c = block.attrs[key]
    n = _int((v, c + len(key) + 1), block.line, f"integer for {key}")
    if n < 0:
        raise ParseError(f"{key} must be nonnegative", block.line, c)
    return n


def _meta(block, lineno, toks, meta):
    for t, c in toks[1:]:
        if "=" not in t:
            raise ParseError(f"expected key=value in meta, got {t!r}", lineno, c)
        k, v = t.split("=", 1)
        meta[k] = v


def _row(lineno, toks, width, p):
    vals = [_int(t, lineno) for t in toks]
    if len(vals) != width:
        col = toks[width][1] if len(toks) > width else (toks[-1][1] if toks else 1)
        raise ParseError(f"expected {width} entries, got {len(vals)}", lineno, col)
    return [v % p for v in vals]


def parse(text):
    doc = Document()
    names = {}
    for b in _blocks(text):
        name = b.attrs["name"][0]
        if name in names:
            raise ParseError(f"duplicate name {name!r}", b.line, b.attrs["name"][1])
        meta = {}
        if b.head == "alg":
            obj = _parse_alg(b, meta)
        elif b.head == "mod":
            obj = _parse_mod(b, meta, names)
        elif b.head == "map":
            obj = _parse_map(b, meta, names)
        else:
            obj = _parse_hom(b, meta, names)
        names[name] = obj
        doc.instances.append(Instance(KIND[b.head], name, obj, meta))
    return doc


def _lookup(b, key, names, cls):
    v, c = b.attrs[key]
    obj = names.get(v)
    if not isinstance(obj, cls):
        raise ParseError(f"{key}={v} does not name an earlier {cls.__name__}", b.line, c)
    return obj


def _parse_alg(b, meta):
    p, n = _attr_int(b, "p"), _attr_int(b, "dim")
    if n > MAX_DIM:
        raise ParseError(f"dim={n} exceeds the cap {MAX_DIM}", b.line, b.attrs["dim"][1])
    const = np.zeros((n, n, n), dtype=np.int64)
    unit = None
    for lineno, toks in b.body:
        word, col = toks[0]
        if word == "c":
            if len(toks) != 5:
                raise ParseError("constant line needs 'c i j k v'", lineno, col)
            i, j, k, v = (_int(t, lineno) for t in toks[1:])
            for t, x in zip(toks[1:4], (i, j, k)):
                if not 0 <= x < n:
                    raise ParseError(f"index {x} out of range", lineno, t[1])
            const[i, j, k] = v % p
        elif word == "unit":
            unit = _row(lineno, toks[1:], n, p)
        elif word == "meta":
            _meta(b, lineno, toks, meta)
        else:
            raise ParseError(f"unexpected {word!r} in alg block", lineno, col)
    if unit is None:
        raise ParseError("alg block has no unit line", b.line, 1)
    return make_algebra(p, const, unit, name=b.attrs["name"][0])


def _parse_mod(b, meta, names):
    A = _lookup(b, "over", names, StructureAlgebra)
    p, m = _attr_int(b, "p"), _attr_int(b, "dim")
    if m > MAX_MODULE_DIM:
        raise ParseError(f"dim={m} exceeds the cap {MAX_MODULE_DIM}", b.line, b.attrs["dim"][1])
    if p != A.p:
        raise ParseError(f"p={p} differs from the algebra's {A.p}", b.line, b.attrs["p"][1])
    acts = np.zeros((A.dim, m, m), dtype=np.int64)
    seen = set()
    for lineno, toks in b.body:
        word, col = toks[0]
        if word == "act":
            if len(toks) < 3 or toks[2][0] != ":":
                raise ParseError("action line needs 'act i : entries'", lineno, col)
            i = _int(toks[1], lineno)
            if not 0 <= i < A.dim:
                raise ParseError(f"basis index {i} out of range", lineno, toks[1][1])
            acts[i] = np.array(_row(lineno, toks[3:], m * m, p), dtype=np.int64).reshape(m, m)
            seen.add(i)
        elif word == "meta":
            _meta(b, lineno, toks, meta)
        else:
            raise ParseError(f"unexpected {word!r} in mod block", lineno, col)
    if len(seen) != A.dim and m:
        raise ParseError(f"mod block gives {len(seen)} of {A.dim} action matrices", b.line, 1)
    return FdModule(A, acts, name=b.attrs["name"][0])


def _matrix_rows(b, meta, width, height, p):
    rows = []
    for lineno, toks in b.body:
        word, col = toks[0]
        if word == "row":
            rows.append(_row(lineno, toks[1:], width, p))
        elif word == "meta":
            _meta(b, lineno, toks, meta)
        else:
            raise ParseError(f"unexpected {word!r} in {b.head} block", lineno, col)
    if len(rows) != height:
        raise ParseError(f"expected {height} rows, got {len(rows)}", b.line, 1)
    return np.array(rows, dtype=np.int64).reshape(height, width)


def _parse_map(b, meta, names):
    A = _lookup(b, "from", names, StructureAlgebra)
    B = _lookup(b, "to", names, StructureAlgebra)
    m = _matrix_rows(b, meta, A.dim, B.dim, A.p)
    return AlgebraMorphism(A, B, m, name=b.attrs["name"][0])


def _parse_hom(b, meta, names):
    M = _lookup(b, "from", names, FdModule)
    N = _lookup(b, "to", names, FdModule)
    m = _matrix_rows(b, meta, N.dim, M.dim, M.p)
    return ModuleHom(M, N, m)


# ---------------------------------------------------------------- serialization


def _line(*parts):
    return " ".join(str(x) for x in parts)


def _meta_lines(meta):
    if not meta:
        return []
    return [_line("meta", *(f"{k}={meta[k]}" for k in sorted(meta)))]


def serialize(doc):
    """Canonical text of a Document; objects are referenced by instance name."""
    out = []
    names = {}
    for inst in doc.instances:
        o = inst.obj
        if inst.kind == "algebra":
            out.append(_line("alg", f"p={o.p}", f"dim={o.dim}", f"name={inst.name}"))
            for i, j, k in zip(*np.nonzero(o.const)):
                out.append(_line("c", i, j, k, o.const[i, j, k]))
            out.append(_line("unit", *o.unit.tolist()))
        elif inst.kind == "module":
            out.append(_line("mod", f"p={o.p}", f"dim={o.dim}", f"over={names[o.algebra.id]}", f"name={inst.name}"))
            for i in range(o.algebra.dim):
                if o.dim:
                    out.append(_line("act", i, ":", *o.actions[i].reshape(-1).tolist()))
        elif inst.kind == "morphism":
            out.append(_line("map", f"from={names[o.domain.id]}", f"to={names[o.codomain.id]}", f"name={inst.name}"))
            out.extend(_line("row", *r.tolist()) for r in o.matrix)
        elif inst.kind == "module-hom":
            out.append(_line("hom", f"from={names[o.domain.id]}", f"to={names[o.codomain.id]}", f"name={inst.name}"))
            out.extend(_line("row", *r.tolist()) for r in o.matrix)
        else:
            raise ValidationError(f"unknown instance kind {inst.kind!r}")
        out.extend(_meta_lines(inst.meta))
        if hasattr(o, "id"):
            names[o.id] = inst.name
    return "\n".join(out) + "\n"


def document_for(obj, name=None, **meta):
    """A Document holding obj together with everything it refers to."""
    doc = Document()
    seen = set()

    def add(kind, x, nm):
        if getattr(x, "id", None) in seen:
            return
        seen.add(getattr(x, "id", None))
        doc.add(kind, nm, x)

    def alg(A):
        add("algebra", A, _safe(A.name) or f"A{A.id}")

    if isinstance(obj, StructureAlgebra):
        add("algebra", obj, name or _safe(obj.name) or "A")
    elif isinstance(obj, FdModule):
        alg(obj.algebra)
        add("module", obj, name or _safe(obj.name) or "M")
    elif isinstance(obj, AlgebraMorphism):
        alg(obj.domain)
        alg(obj.codomain)
        doc.add("morphism", name or _safe(obj.name) or "phi", obj)
    elif isinstance(obj, ModuleHom):
        alg(obj.domain.algebra)
        add("module", obj.domain, _safe(obj.domain.name) or "M")
        add("module", obj.codomain, _safe(obj.codomain.name) or "N")
        doc.add("module-hom", name or "f", obj)
    else:
        raise ValidationError(f"cannot serialize {type(obj).__name__}")
    doc.instances[-1].meta.update({k: str(v) for k, v in meta.items()})
    _dedupe_names(doc)
    return doc


def _safe(name):
    """Names become single tokens without '=' or '#'."""
    out = "".join(ch if (ch.isalnum() or ch in "_-.^()+,") else "_" for ch in str(name))
    return out.strip("_")


def _dedupe_names(doc):
    used = {}
    for inst in doc.instances:
        base = inst.name
        if base in used:
            used[base] += 1
            inst.name = f"{base}_{used[base]}"
        else:
            used[base] = 0


def load(path):
    with open(path) as fh:
        return parse(fh.read())


def dump(doc, path):
    with open(path, "w") as fh:
        fh.write(serialize(doc))
