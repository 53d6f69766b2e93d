"""Line-based ring definition files.

::

    ring <name>
    orders <n1> ... <nk>
    mul <i> <j> : <c1> ... <ck>     # one line for every 1 <= i, j <= k
    end
    subring <name> of <ring-name>
    gen <c1> ... <ck>               # zero gen lines give the zero subring
    end

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .catalog import BUILDERS, get_ring
from .ring import Ring, RingError, RingSpec, Subring, build_ring, subring_closure


class RingFileError(ValueError):
    pass


class RingFileSyntaxError(RingFileError):
    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


class UnknownRingReference(RingFileError):
    pass


class ValidationError(RingFileError):
    pass


@dataclass
class SubringDecl:
    name: str
    ring: str
    generators: list[tuple[int, ...]]
    subring: Subring | None = None


@dataclass
class RingFile:
    source: str
    specs: list[RingSpec] = field(default_factory=list)
    rings: dict[str, Ring] = field(default_factory=dict)
    subrings: dict[str, SubringDecl] = field(default_factory=dict)

    def resolve_ring(self, name: str) -> Ring:
        if name in self.rings:
            return self.rings[name]
        return get_ring(name)


def _tokens(raw: str) -> list[tuple[str, int]]:
    """Split a line into (token, 1-based column) pairs, dropping comments."""
    text = raw.split("#", 1)[0]
    out, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], i + 1))
        i = j
    return out


def _int(tok: tuple[str, int], lineno: int) -> int:
    try:
        return int(tok[0])
    except ValueError:
        raise RingFileSyntaxError(f"expected an integer, got {tok[0]!r}", lineno, tok[1]) from None


def parse_ring_file(text: str, source: str = "<string>") -> RingFile:
    rf = RingFile(source)
    lines = text.splitlines()
    n = 0
    pending: list = []  # (kind, header tokens, body lines, start line)

    def err(msg, lineno, col=1):
        return RingFileSyntaxError(msg, lineno, col)

    while n < len(lines):
        toks = _tokens(lines[n])
        n += 1
        if not toks:
            continue
        head = toks[0][0]
        if head == "ring":
            if len(toks) != 2:
                raise err("expected 'ring <name>'", n)
            kind = "ring"
        elif head == "subring":
            if len(toks) != 4 or toks[2][0] != "of":
                raise err("expected 'subring <name> of <ring-name>'", n)
            kind = "subring"
        else:
            raise err(f"unexpected {head!r}; expected 'ring' or 'subring'", n, toks[0][1])
        start = n
        body = []
        while True:
            if n >= len(lines):
                raise err(f"{kind} block starting here is missing 'end'", start)
            btoks = _tokens(lines[n])
            n += 1
            if not btoks:
                continue
            if btoks[0][0] == "end":
                break
            body.append((n, btoks))
        pending.append((kind, toks, body, start))

    names = set()
    for kind, toks, body, start in pending:
        name = toks[1][0]
        if name in names:
            raise err(f"duplicate name {name!r}", start, toks[1][1])
        names.add(name)
        if kind == "ring":
            rf.specs.append(_parse_ring(name, body, start))

    for spec in rf.specs:
        try:
            rf.rings[spec.name] = build_ring(spec)
        except RingError as e:
            raise ValidationError(str(e)) from e

    for kind, toks, body, start in pending:
        if kind != "subring":
            continue
        name, parent = toks[1][0], toks[3][0]
        if parent not in rf.rings and parent not in BUILDERS:
            raise UnknownRingReference(f"line {start}: subring {name!r} refers to unknown ring {parent!r}")
        R = rf.resolve_ring(parent)
        gens = []
        for lineno, btoks in body:
            if btoks[0][0] != "gen":
                raise err(f"expected 'gen', got {btoks[0][0]!r}", lineno, btoks[0][1])
            vec = tuple(_int(t, lineno) for t in btoks[1:])
            if len(vec) != R.k:
                raise err(f"generator needs {R.k} coefficients, got {len(vec)}", lineno, btoks[0][1])
            for (tok, col), c, m in zip(btoks[1:], vec, R.spec.orders):
                if not 0 <= c < m:
                    raise ValidationError(f"line {lineno}, column {col}: coefficient {c} outside [0, {m})")
            gens.append(vec)
        rf.subrings[name] = SubringDecl(name, parent, gens, subring_closure(R, gens))
    return rf


def _parse_ring(name: str, body, start: int) -> RingSpec:
    orders = None
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    for lineno, toks in body:
        head = toks[0][0]
        if head == "orders":
            if orders is not None:
                raise RingFileSyntaxError("duplicate 'orders' line", lineno, toks[0][1])
            orders = tuple(_int(t, lineno) for t in toks[1:])
            for (tok, col), o in zip(toks[1:], orders):
                if o < 1:
                    raise RingFileSyntaxError("orders must be >= 1", lineno, col)
        elif head == "mul":
            if orders is None:
                raise RingFileSyntaxError("'mul' before 'orders'", lineno, toks[0][1])
            if len(toks) < 4 or toks[3][0] != ":":
                raise RingFileSyntaxError("expected 'mul <i> <j> : <c1> ... <ck>'", lineno, toks[0][1])
            i, j = _int(toks[1], lineno), _int(toks[2], lineno)
            k = len(orders)
            for tok, v in ((toks[1], i), (toks[2], j)):
                if not 1 <= v <= k:
                    raise RingFileSyntaxError(f"generator index {v} outside 1..{k}", lineno, tok[1])
            vec = tuple(_int(t, lineno) for t in toks[4:])
            if len(vec) != k:
                raise RingFileSyntaxError(f"product needs {k} coefficients, got {len(vec)}", lineno, toks[0][1])
            if (i, j) in table:
                raise RingFileSyntaxError(f"duplicate product {i} {j}", lineno, toks[0][1])
            for (tok, col), c, m in zip(toks[4:], vec, orders):
                if not 0 <= c < m:
                    raise ValidationError(f"line {lineno}, column {col}: coefficient {c} outside [0, {m})")
            table[(i, j)] = vec
        else:
            raise RingFileSyntaxError(f"unexpected {head!r} in ring block", lineno, toks[0][1])
    if orders is None:
        raise RingFileSyntaxError(f"ring {name!r} has no 'orders' line", start, 1)
    k = len(orders)
    missing = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1) if (i, j) not in table]
    if missing:
        raise RingFileSyntaxError(f"ring {name!r} is missing products {missing[:3]}", start, 1)
    consts = tuple(tuple(table[(i, j)] for j in range(1, k + 1)) for i in range(1, k + 1))
    return RingSpec(name, orders, consts)


def load_ring_file(path: str | Path) -> RingFile:
    p = Path(path)
    return parse_ring_file(p.read_text(encoding="utf-8"), str(p))


def serialize_ring(R: Ring | RingSpec) -> str:
    spec = R.spec if isinstance(R, Ring) else R
    lines = [f"ring {spec.name}", "orders " + " ".join(str(n) for n in spec.orders) if spec.k else "orders"]
    for i, row in enumerate(spec.structure_constants, start=1):
        for j, vec in enumerate(row, start=1):
            lines.append(f"mul {i} {j} : " + " ".join(str(c) for c in vec))
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize_subring(name: str, ring_name: str, generators) -> str:
    lines = [f"subring {name} of {ring_name}"]
    lines += ["gen " + " ".join(str(c) for c in g) for g in generators]
    lines.append("end")
    return "\n".join(lines) + "\n"
