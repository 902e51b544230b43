"""Quiver presentations, their input language, and path-algebra Gröbner bases.

Paths are read left to right: for ``a: i -> j`` and ``b: j -> l`` the word
``a*b`` is a path ``i -> l``.  Monomials are ordered length-lexicographically
with arrows ranked by declaration order.
"""
from __future__ import annotations

import re
from collections import defaultdict, deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .exactlin import FieldSpec, QQ

Word = tuple  # tuple of arrow indices


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        loc = f"line {line}, column {column}: " if line else ""
        super().__init__(loc + message)


class GroebnerCapError(Exception):
    """Raised when completion or the normal-word count runs past the cap."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class PathWord:
    source: int
    target: int
    arrows: Word = ()

    def __len__(self):
        return len(self.arrows)

    @property
    def is_lazy(self) -> bool:
        return not self.arrows


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each of length at least 2."""

    terms: tuple  # ((coefficient, word), ...)
    source: int
    target: int
    line: int = 0

    def as_dict(self) -> dict:
        return {w: c for c, w in self.terms}


@dataclass(frozen=True)
class QuiverPresentation:
    field: FieldSpec
    vertices: tuple
    arrows: tuple
    relations: tuple = ()

    def vertex_index(self, name: str) -> int:
        return self.vertices.index(name)

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise KeyError(name)

    def word(self, *names: str) -> Word:
        return tuple(self.arrow_index(n) for n in names)

    def word_text(self, w: Word) -> str:
        return "*".join(self.arrows[a].name for a in w)

    def with_field(self, field: FieldSpec) -> "QuiverPresentation":
        rels = tuple(
            Relation(tuple((field(c if not hasattr(c, "p") else int(c)), w) for c, w in r.terms), r.source, r.target, r.line)
            for r in self.relations
        )
        return QuiverPresentation(field, self.vertices, self.arrows, rels)


# -------------------------------------------------------------------------
# parsing

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_VERTEX = r"[A-Za-z0-9_][A-Za-z0-9_']*"
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>" + _NAME + r")|(?P<op>[*+\-=]))")


def _tokenize(body: str, line: int, col0: int):
    pos = 0
    out = []
    while pos < len(body):
        if body[pos:].strip() == "":
            break
        m = _TOKEN.match(body, pos)
        if not m:
            raise ParseError(f"syntax error near {body[pos:].strip()[:10]!r}", line, col0 + pos + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), col0 + m.start(kind) + 1))
        pos = m.end()
    return out


def _parse_side(tokens, arrows_by_name, field, line):
    """Parse ``[±] term (± term)*`` into a list of (coeff, word, column)."""
    terms = []
    i = 0
    n = len(tokens)
    if n == 0:
        raise ParseError("empty side of a relation", line, 0)
    if n == 1 and tokens[0][0] == "num" and tokens[0][1] == "0":
        return terms
    while i < n:
        sign = 1
        if tokens[i][0] == "op" and tokens[i][1] in "+-":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif terms:
            raise ParseError("expected '+' or '-' between terms", line, tokens[i][2])
        if i >= n:
            raise ParseError("dangling sign", line, tokens[-1][2])
        coeff = Fraction(1)
        col = tokens[i][2]
        if tokens[i][0] == "num":
            coeff = Fraction(tokens[i][1])
            i += 1
            if i < n and tokens[i] [0] == "op" and tokens[i][1] == "*":
                i += 1
            else:
                raise ParseError("a coefficient must be followed by '*' and a path", line, col)
        word = []
        while True:
            if i >= n or tokens[i][0] != "name":
                raise ParseError("expected an arrow name", line, tokens[i][2] if i < n else col)
            name = tokens[i][1]
            if name not in arrows_by_name:
                raise ParseError(f"unknown arrow {name!r}", line, tokens[i][2])
            word.append(arrows_by_name[name])
            i += 1
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                continue
            break
        terms.append((field(sign * coeff), tuple(word), col))
    return terms


def parse_presentation(text: str, field: FieldSpec | None = None) -> QuiverPresentation:
    """Parse the line-oriented quiver DSL.

    ``field`` overrides the ``field`` line when given.
    """
    declared_field = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    arrows_by_name: dict[str, int] = {}
    pending_relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        col0 = len(line) - len(line.lstrip())
        head, _, rest = stripped.partition(" ")
        rest_col = col0 + len(head) + 1
        if head == "field":
            parts = rest.split()
            if parts == ["Q"]:
                declared_field = QQ
            elif len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
                try:
                    declared_field = FieldSpec.prime(int(parts[1]))
                except ValueError as exc:
                    raise ParseError(str(exc), lineno, rest_col) from None
            else:
                raise ParseError("expected 'field Q' or 'field F <p>'", lineno, rest_col)
        elif head == "vertex":
            names = rest.split()
            if not names:
                raise ParseError("'vertex' needs at least one name", lineno, rest_col)
            for nm in names:
                if not re.fullmatch(_VERTEX, nm):
                    raise ParseError(f"invalid vertex name {nm!r}", lineno, col0 + line.strip().index(nm) + 1)
                if nm in vertices:
                    raise ParseError(f"duplicate vertex {nm!r}", lineno, rest_col)
                vertices.append(nm)
        elif head == "arrow":
            m = re.fullmatch(r"\s*(" + _NAME + r")\s*:\s*(\S+)\s*->\s*(\S+)\s*", rest)
            if not m:
                raise ParseError("expected 'arrow <name>: <src> -> <tgt>'", lineno, rest_col)
            name, src, tgt = m.groups()
            if name in arrows_by_name:
                raise ParseError(f"duplicate arrow {name!r}", lineno, rest_col)
            for v in (src, tgt):
                if v not in vertices:
                    raise ParseError(f"unknown vertex {v!r}", lineno, rest_col + rest.index(v))
            arrows_by_name[name] = len(arrows)
            arrows.append(Arrow(name, vertices.index(src), vertices.index(tgt)))
        elif head == "relation":
            pending_relations.append((lineno, rest, rest_col))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col0 + 1)

    fld = field or declared_field
    if fld is None:
        raise ParseError("missing 'field' line", 1, 1)

    relations = []
    for lineno, body, col in pending_relations:
        tokens = _tokenize(body, lineno, col)
        sides = [[]]
        for t in tokens:
            if t[0] == "op" and t[1] == "=":
                sides.append([])
            else:
                sides[-1].append(t)
        parsed = [_parse_side(s, arrows_by_name, fld, lineno) for s in sides]
        if len(parsed) == 1:
            combos = [parsed[0]]
        elif any(not side for side in parsed):
            # "x = y = 0": every side vanishes on its own
            combos = [side for side in parsed if side]
        else:
            combos = [
                parsed[k] + [(-c, w, cl) for c, w, cl in parsed[k + 1]]
                for k in range(len(parsed) - 1)
            ]
        for combo in combos:
            relations.append(_check_relation(combo, arrows, fld, lineno))
    return QuiverPresentation(fld, tuple(vertices), tuple(arrows), tuple(relations))


def parse_element(ab: "AlgebraBasis", text: str) -> dict:
    """Normal form of a linear combination of paths, e.g. ``"x1_2*x2_3 - 2*x1_4*x4_3"``.

    A bare vertex name prefixed with ``e_`` denotes its idempotent.
    """
    p = ab.presentation
    names = {a.name: k for k, a in enumerate(p.arrows)}
    field = p.field
    out: dict = {}
    idem = re.fullmatch(r"\s*e_(\S+)\s*", text)
    if idem and idem.group(1) in p.vertices:
        return {ab.idempotent(p.vertex_index(idem.group(1))): field.one}
    for c, w, _ in _parse_side(_tokenize(text, 1, 0), names, field, 1):
        for k, x in ab.element_of_word(w).items():
            s = out.get(k, field.zero) + c * x
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _check_relation(terms, arrows, field, lineno) -> Relation:
    endpoints = None
    acc: dict = {}
    for c, w, col in terms:
        if len(w) < 2:
            raise ParseError("relation term of length < 2 (relations must lie in the square of the arrow ideal)", lineno, col)
        for x, y in zip(w, w[1:]):
            if arrows[x].target != arrows[y].source:
                raise ParseError(
                    f"non-composable path: {arrows[x].name} ends where {arrows[y].name} does not start",
                    lineno, col,
                )
        ends = (arrows[w[0]].source, arrows[w[-1]].target)
        if endpoints is None:
            endpoints = ends
        elif ends != endpoints:
            raise ParseError("relation terms do not share source and target", lineno, col)
        acc[w] = acc.get(w, field.zero) + c
    acc = {w: c for w, c in acc.items() if c}
    if not acc:
        raise ParseError("relation is identically zero", lineno, terms[0][2] if terms else 0)
    ordered = tuple((acc[w], w) for w in sorted(acc, key=_key, reverse=True))
    return Relation(ordered, endpoints[0], endpoints[1], lineno)


def format_coefficient(c) -> str:
    c = Fraction(int(c)) if hasattr(c, "p") else Fraction(c)
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return f"{c}*"


def format_presentation(p: QuiverPresentation, comment: str | None = None) -> str:
    """Render ``p`` in the DSL accepted by :func:`parse_presentation`."""
    lines = []
    if comment:
        lines.extend("# " + ln for ln in comment.splitlines())
    lines.append("field Q" if p.field.characteristic == 0 else f"field F {p.field.characteristic}")
    lines.append("vertex " + " ".join(p.vertices))
    for a in p.arrows:
        lines.append(f"arrow {a.name}: {p.vertices[a.source]} -> {p.vertices[a.target]}")
    for r in p.relations:
        parts = []
        for k, (c, w) in enumerate(r.terms):
            coef = format_coefficient(c)
            txt = p.word_text(w)
            if k == 0:
                parts.append(coef + txt)
            elif coef.startswith("-"):
                parts.append("- " + coef[1:] + txt)
            else:
                parts.append("+ " + coef + txt)
        lines.append("relation " + " ".join(parts))
    return "\n".join(lines) + "\n"


def format_element(ab: "AlgebraBasis", x: dict) -> str:
    """Render an element (normal-word combination) as a DSL expression."""
    if not x:
        return "0"
    p = ab.presentation
    parts = []
    for k in sorted(x, key=lambda k: (len(ab.normal_words[k]), k)):
        w = ab.normal_words[k]
        txt = p.word_text(w.arrows) if w.arrows else f"e_{p.vertices[w.source]}"
        coef = format_coefficient(x[k])
        if not parts:
            parts.append(coef + txt)
        elif coef.startswith("-"):
            parts.append("- " + coef[1:] + txt)
        else:
            parts.append("+ " + coef + txt)
    return " ".join(parts)


# -------------------------------------------------------------------------
# noncommutative polynomials: dict word -> coefficient


def _key(w: Word):
    return (len(w), w)


def _lead(poly: dict) -> Word:
    return max(poly, key=_key)


def _monic(poly: dict) -> dict:
    lc = poly[_lead(poly)]
    if lc == 1:
        return poly
    inv = 1 / lc
    return {w: c * inv for w, c in poly.items()}


class _Reducer:
    def __init__(self, zero):
        self.zero = zero
        self.lead: dict[Word, dict] = {}
        self.lengths: set[int] = set()

    def set_basis(self, polys: Iterable[dict]):
        self.lead = {_lead(g): g for g in polys}
        self.lengths = {len(u) for u in self.lead}

    def find(self, w: Word):
        n = len(w)
        for i in range(n):
            for L in self.lengths:
                if i + L <= n and w[i:i + L] in self.lead:
                    return i, L
        return None

    def reduce(self, poly: dict) -> dict:
        result = {}
        work = dict(poly)
        zero = self.zero
        while work:
            w = max(work, key=_key)
            c = work.pop(w)
            hit = self.find(w)
            if hit is None:
                result[w] = c
                continue
            i, L = hit
            lt = w[i:i + L]
            g = self.lead[lt]
            left, right = w[:i], w[i + L:]
            for gw, gc in g.items():
                if gw == lt:
                    continue
                nw = left + gw + right
                nc = work.get(nw, zero) - c * gc
                if nc:
                    work[nw] = nc
                else:
                    work.pop(nw, None)
        return result


def _contains(big: Word, small: Word) -> bool:
    n, m = len(big), len(small)
    return any(big[i:i + m] == small for i in range(n - m + 1))


def _overlaps(u: Word, v: Word):
    """Lengths k of proper overlaps: suffix of u == prefix of v."""
    for k in range(1, min(len(u), len(v))):
        if u[-k:] == v[:k]:
            yield k


def _buchberger(relations: list[dict], field: FieldSpec, cap: int) -> list[dict]:
    zero = field.zero
    red = _Reducer(zero)
    basis: dict[int, dict] = {}
    next_id = 0
    queue = deque(relations)
    pairs = deque()

    def refresh():
        red.set_basis(basis.values())

    def add(h):
        nonlocal next_id
        lt = _lead(h)
        if len(lt) > cap:
            raise GroebnerCapError(
                f"Gröbner completion produced a leading word of length {len(lt)} > cap {cap}: "
                "possibly infinite-dimensional or cap too low"
            )
        for gid in [gid for gid, g in basis.items() if _contains(_lead(g), lt)]:
            queue.append(basis.pop(gid))
        hid = next_id
        next_id += 1
        basis[hid] = h
        for gid in list(basis):
            pairs.append((hid, gid))
            if gid != hid:
                pairs.append((gid, hid))
        refresh()

    while queue or pairs:
        if queue:
            f = queue.popleft()
            r = red.reduce(f)
            if r:
                add(_monic(r))
            continue
        fid, gid = pairs.popleft()
        if fid not in basis or gid not in basis:
            continue
        f, g = basis[fid], basis[gid]
        u, v = _lead(f), _lead(g)
        for k in _overlaps(u, v):
            s: dict = {}
            for w, c in f.items():
                nw = w + v[k:]
                s[nw] = s.get(nw, zero) + c
            for w, c in g.items():
                nw = u[:-k] + w
                s[nw] = s.get(nw, zero) - c
            s = {w: c for w, c in s.items() if c}
            r = red.reduce(s)
            if r:
                add(_monic(r))
                if fid not in basis or gid not in basis:
                    break
    # interreduce tails
    polys = list(basis.values())
    out = []
    for g in polys:
        lt = _lead(g)
        others = [h for h in polys if h is not g]
        red.set_basis(others)
        tail = red.reduce({w: c for w, c in g.items() if w != lt})
        tail[lt] = field.one
        out.append(tail)
    out.sort(key=lambda g: _key(_lead(g)))
    return out


# -------------------------------------------------------------------------
# the finite basis


@dataclass
class AlgebraBasis:
    """Finite basis of kQ/I with right-multiplication data by arrows.

    Elements are sparse dicts ``{normal word index: coefficient}``.
    """

    presentation: QuiverPresentation
    normal_words: list
    groebner: list
    mult_table: dict
    total_dim: int
    loewy_length: int
    index: dict = dc_field(repr=False, default_factory=dict)
    _prod_cache: dict = dc_field(repr=False, default_factory=dict)

    @property
    def field(self) -> FieldSpec:
        return self.presentation.field

    @property
    def num_vertices(self) -> int:
        return len(self.presentation.vertices)

    @property
    def arrows(self):
        return self.presentation.arrows

    def idempotent(self, v: int) -> int:
        return self.index[(v, ())]

    def words_from(self, i: int) -> list[int]:
        return [k for k, w in enumerate(self.normal_words) if w.source == i]

    def words_between(self, i: int, j: int) -> list[int]:
        return self._between[(i, j)] if hasattr(self, "_between") else [
            k for k, w in enumerate(self.normal_words) if w.source == i and w.target == j
        ]

    def __post_init__(self):
        self.index = {(w.source, w.arrows): k for k, w in enumerate(self.normal_words)}
        between = defaultdict(list)
        for k, w in enumerate(self.normal_words):
            between[(w.source, w.target)].append(k)
        self._between = between

    def element_of_word(self, w: Word, source: int | None = None) -> dict:
        """Normal form of a path given as a tuple of arrow indices."""
        if not w:
            return {self.idempotent(source): self.field.one}
        arrows = self.arrows
        x = {self.index[(arrows[w[0]].source, ())]: self.field.one}
        for a in w:
            x = self.times_arrow(x, a)
        return x

    def element(self, *names: str) -> dict:
        return self.element_of_word(self.presentation.word(*names))

    def times_arrow(self, x: dict, a: int) -> dict:
        zero = self.field.zero
        out: dict = {}
        for k, c in x.items():
            for j, d in self.mult_table.get((k, a), {}).items():
                s = out.get(j, zero) + c * d
                if s:
                    out[j] = s
                else:
                    out.pop(j, None)
        return out

    def _basis_product(self, i: int, j: int) -> dict:
        key = (i, j)
        hit = self._prod_cache.get(key)
        if hit is not None:
            return hit
        wi, wj = self.normal_words[i], self.normal_words[j]
        if wi.target != wj.source:
            res = {}
        elif wj.is_lazy:
            res = {i: self.field.one}
        else:
            res = {i: self.field.one}
            for a in wj.arrows:
                res = self.times_arrow(res, a)
        self._prod_cache[key] = res
        return res

    def multiply(self, x: dict, y: dict) -> dict:
        zero = self.field.zero
        out: dict = {}
        for i, c in x.items():
            for j, d in y.items():
                cd = c * d
                for k, e in self._basis_product(i, j).items():
                    s = out.get(k, zero) + cd * e
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def layer_dimensions(self) -> dict:
        """dim e_i (rad^l / rad^(l+1)) e_j, keyed by (i, j, l).

        Computed from products in the algebra, so it is the radical
        filtration even when relations are not homogeneous (where normal
        word length and radical layer disagree).
        """
        field = self.field
        out: dict = defaultdict(int)
        for v in range(self.num_vertices):
            out[(v, v, 0)] = 1

        def ends_dims(vecs):
            d: dict = defaultdict(int)
            for x in vecs:
                w = self.normal_words[next(iter(x))]
                d[(w.source, w.target)] += 1
            return d

        # rad = span of all nontrivial normal words; rad^(n+1) = rad^n * arrows.
        # (Starting from the arrows alone would give span of paths of length
        # exactly n, which is smaller than rad^n for non-homogeneous relations.)
        layer = [{k: field.one} for k, w in enumerate(self.normal_words) if not w.is_lazy]
        n = 1
        while layer:
            nxt = _span_rank([y for x in layer for k in range(len(self.arrows)) if (y := self.times_arrow(x, k))],
                             field)
            here, below = ends_dims(layer), ends_dims(nxt)
            for ends, d in here.items():
                if d - below.get(ends, 0):
                    out[(ends[0], ends[1], n)] = d - below.get(ends, 0)
            layer, n = nxt, n + 1
        return dict(out)

    def vertex_pair_dimensions(self) -> dict:
        out: dict = defaultdict(int)
        for w in self.normal_words:
            out[(w.source, w.target)] += 1
        return dict(out)


def multiply(ab: AlgebraBasis, x: dict, y: dict) -> dict:
    return ab.multiply(x, y)


def _span_rank(vectors: list[dict], field: FieldSpec) -> list[dict]:
    """Echelon basis (leading key = max index) of a span of sparse vectors."""
    zero = field.zero
    rows: dict = {}
    out = []
    for v in vectors:
        v = dict(v)
        while v:
            p = max(v)
            if p in rows:
                r = rows[p]
                c = v[p]
                for k, x in r.items():
                    s = v.get(k, zero) - c * x
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
            else:
                inv = 1 / v[p]
                v = {k: x * inv for k, x in v.items()}
                rows[p] = v
                out.append(v)
                break
    return out


def groebner_basis(p: QuiverPresentation, degree_cap: int = 30) -> AlgebraBasis:
    """Reduced Gröbner basis, normal words and multiplication table of kQ/I."""
    field = p.field
    arrows = p.arrows
    rels = [_monic(r.as_dict()) for r in p.relations]
    gb = _buchberger(rels, field, degree_cap)
    red = _Reducer(field.zero)
    red.set_basis(gb)
    leads = set(red.lead)
    lengths = red.lengths

    def is_normal_extension(w: Word) -> bool:
        n = len(w)
        return not any(n - L >= 0 and w[n - L:] in leads for L in lengths)

    out_by_vertex = defaultdict(list)
    for k, a in enumerate(arrows):
        out_by_vertex[a.source].append(k)

    words = [PathWord(v, v, ()) for v in range(len(p.vertices))]
    level = [PathWord(a.source, a.target, (k,)) for k, a in enumerate(arrows)]
    length = 1
    while level:
        if length > degree_cap:
            raise GroebnerCapError(
                f"normal words of length {length} exist beyond cap {degree_cap}: "
                "possibly infinite-dimensional or cap too low"
            )
        words.extend(level)
        nxt = []
        for w in level:
            for a in out_by_vertex[w.target]:
                nw = w.arrows + (a,)
                if is_normal_extension(nw):
                    nxt.append(PathWord(w.source, arrows[a].target, nw))
        level = nxt
        length += 1
    words.sort(key=lambda w: (len(w), w.source, w.arrows))
    index = {(w.source, w.arrows): k for k, w in enumerate(words)}

    mult: dict = {}
    for k, w in enumerate(words):
        for a in out_by_vertex[w.target]:
            nw = w.arrows + (a,)
            nf = red.reduce({nw: field.one})
            mult[(k, a)] = {index[(arrows[u[0]].source, u)]: c for u, c in nf.items()}

    ab = AlgebraBasis(p, words, gb, mult, len(words), 0)
    ab.loewy_length = _loewy_length(ab)
    return ab


def _loewy_length(ab: AlgebraBasis) -> int:
    if ab.total_dim == 0:
        return 0
    field = ab.field
    layer = _span_rank([{ab.index[(a.source, (k,))]: field.one} for k, a in enumerate(ab.arrows)], field)
    n = 1
    while layer:
        n += 1
        prods = []
        for x in layer:
            for k, a in enumerate(ab.arrows):
                y = ab.times_arrow(x, k)
                if y:
                    prods.append(y)
        layer = _span_rank(prods, field)
    return n


def opposite_presentation(p: QuiverPresentation) -> QuiverPresentation:
    arrows = tuple(Arrow(a.name, a.target, a.source) for a in p.arrows)
    rels = []
    for r in p.relations:
        terms = tuple((c, tuple(reversed(w))) for c, w in r.terms)
        terms = tuple(sorted(terms, key=lambda t: _key(t[1]), reverse=True))
        rels.append(Relation(terms, r.target, r.source, r.line))
    return QuiverPresentation(p.field, p.vertices, arrows, tuple(rels))


def opposite_algebra(ab: AlgebraBasis, degree_cap: int = 30) -> AlgebraBasis:
    """Γ^op: arrows reversed, relation words reversed."""
    return groebner_basis(opposite_presentation(ab.presentation), degree_cap)


# -------------------------------------------------------------------------
# independent oracle


def _all_paths(p: QuiverPresentation, max_len: int) -> dict:
    """Paths of length 1..max_len grouped by (source, target)."""
    out = defaultdict(list)
    level = [(k,) for k in range(len(p.arrows))]
    ln = 1
    while level and ln <= max_len:
        for w in level:
            out[(p.arrows[w[0]].source, p.arrows[w[-1]].target)].append(w)
        level = [w + (b,) for w in level for b in range(len(p.arrows))
                 if p.arrows[w[-1]].target == p.arrows[b].source]
        ln += 1
    return out


def oracle_layer_dimensions(p: QuiverPresentation, max_degree: int = 30) -> dict:
    """Dimensions of kQ/I per (source, target, length) without Buchberger.

    For D = 2, 3, ... the truncated ideal (I + J^D)/J^D is computed as the
    smallest subspace of paths of length < D containing the relations and
    closed under multiplication by arrows on both sides.  Echelon pivots are the lowest-degree terms, so the pivots of
    length l count the initial forms of degree l and the non-pivot paths
    count the associated graded.  Stops once every path of length D-1 lies
    in the ideal.
    """
    field = p.field
    zero = field.zero
    arrows = p.arrows
    into = defaultdict(list)
    outof = defaultdict(list)
    for k, a in enumerate(arrows):
        into[a.target].append(k)
        outof[a.source].append(k)
    nv = len(p.vertices)
    for D in range(2, max_degree + 2):
        pivots: dict = defaultdict(dict)  # (i,j) -> leading word -> row
        work = deque()

        def insert(vec: dict, ends):
            vec = {w: c for w, c in vec.items() if len(w) < D and c}
            rows = pivots[ends]
            while vec:
                lw = min(vec, key=_key)
                if lw in rows:
                    r = rows[lw]
                    c = vec[lw]
                    for w, x in r.items():
                        s = vec.get(w, zero) - c * x
                        if s:
                            vec[w] = s
                        else:
                            vec.pop(w, None)
                else:
                    inv = 1 / vec[lw]
                    vec = {w: x * inv for w, x in vec.items()}
                    rows[lw] = vec
                    work.append((vec, ends))
                    return

        for r in p.relations:
            insert(r.as_dict(), (r.source, r.target))
        while work:
            vec, (i, j) = work.popleft()
            for a in into[i]:
                insert({(a,) + w: c for w, c in vec.items()}, (arrows[a].source, j))
            for b in outof[j]:
                insert({w + (b,): c for w, c in vec.items()}, (i, arrows[b].target))

        paths = _all_paths(p, D - 1)
        dims: dict = {}
        for v in range(nv):
            dims[(v, v, 0)] = 1
        top_layer_free = False
        for ends, ws in paths.items():
            piv = pivots.get(ends, {})
            for w in ws:
                if w not in piv:
                    key = (ends[0], ends[1], len(w))
                    dims[key] = dims.get(key, 0) + 1
                    if len(w) == D - 1:
                        top_layer_free = True
        if not top_layer_free:
            return dims
    raise GroebnerCapError(f"oracle did not stabilise below length {max_degree}")
