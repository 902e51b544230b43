"""Endomorphism algebras Λ = End_Γ(e Γ) ≅ eΓe as quiver presentations.

A map P_i -> P_j is left multiplication by an element of e_jΓe_i, and
composition of maps is multiplication in Γ.  So the output presentation
uses the same path convention as Γ: an output arrow ``i -> j`` is realized
by an element of ``e_i Γ e_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exactlin import Matrix, kernel_basis
from .homology import (
    DEFAULT_CHECK_SPAN,
    IDVerdict,
    LowerBound,
    cached_resolution,
    ext_against_algebra,
    global_dimension,
    injective_dimension_leq,
)
from .pathalg import (
    AlgebraBasis,
    Arrow,
    GroebnerCapError,
    QuiverPresentation,
    Relation,
    _key,
    _span_rank,
    groebner_basis,
    parse_element,
)
from .repmod import (
    LEFT,
    RIGHT,
    ModuleMap,
    Representation,
    direct_sum,
    gamma_matrix,
    map_from_gamma,
    projective_sum,
)


class EmptyKeptSet(ValueError):
    """Every vertex is a source of a chosen arrow: no projectives survive."""


@dataclass
class AlgebraPresentation:
    quiver: QuiverPresentation
    dim_total: int
    loewy_length: int
    generator_map: dict  # output arrow name -> element of Γ (dict word index -> coeff)
    kept: tuple  # Γ vertex indices, in output vertex order
    gamma: AlgebraBasis = dc_field(repr=False)
    algebra: AlgebraBasis | None = dc_field(default=None, repr=False)

    def evaluate(self, word: Sequence[int]) -> dict:
        """Image in Γ of an output path (tuple of output arrow indices)."""
        ab = self.gamma
        x = None
        for a in word:
            r = self.generator_map[self.quiver.arrows[a].name]
            x = r if x is None else ab.multiply(x, r)
            if not x:
                return {}
        return x

    def evaluate_relation(self, rel: Relation) -> dict:
        return _combine(self.gamma, [(c, self.evaluate(w)) for c, w in rel.terms])

    def generator_module_map(self, name: str) -> ModuleMap:
        """The arrow ``i -> j`` as the map P_j -> P_i (left multiplication)."""
        arrow = self.quiver.arrows[self.quiver.arrow_index(name)]
        i, j = self.kept[arrow.source], self.kept[arrow.target]
        ab = self.gamma
        Pj = projective_sum(ab, [j])
        Pi = projective_sum(ab, [i])
        return map_from_gamma(ab, Pj, Pi, [[self.generator_map[name]]])


def _combine(ab: AlgebraBasis, terms) -> dict:
    zero = ab.field.zero
    out: dict = {}
    for c, x in terms:
        for k, v in x.items():
            s = out.get(k, zero) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _names(used: set):
    k = 0
    while True:
        n = k
        s = ""
        while True:
            s = chr(ord("a") + n % 26) + s
            n = n // 26 - 1
            if n < 0:
                break
        k += 1
        if s not in used:
            yield s


def _integral(terms, field):
    """Scale a relation to coprime integer coefficients with positive lead (over Q)."""
    if field.characteristic:
        return terms
    den = 1
    for c, _ in terms:
        den = lcm(den, Fraction(c).denominator)
    ints = [(int(Fraction(c) * den), w) for c, w in terms]
    g = 0
    for c, _ in ints:
        g = gcd(g, c)
    sign = -1 if ints[0][0] < 0 else 1
    return [(field(sign * c // g), w) for c, w in ints]


def _in_span(vec: dict, rows: dict, zero) -> bool:
    v = dict(vec)
    while v:
        p = max(v, key=_key)
        if p not in rows:
            return False
        c = v[p]
        for k, x in rows[p].items():
            s = v.get(k, zero) - c * x
            if s:
                v[k] = s
            else:
                v.pop(k, None)
    return True


def _insert(vec: dict, rows: dict, zero) -> bool:
    """Add ``vec`` to an echelon basis keyed by leading path; False if dependent."""
    v = dict(vec)
    while v:
        p = max(v, key=_key)
        if p in rows:
            c = v[p]
            for k, x in rows[p].items():
                s = v.get(k, zero) - c * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        else:
            inv = 1 / v[p]
            rows[p] = {k: x * inv for k, x in v.items()}
            return True
    return False


def endomorphism_presentation(ab: AlgebraBasis, kept: Sequence[int], max_rel_deg: int = 30) -> AlgebraPresentation:
    """Quiver with relations of eΓe for ``e = Σ_{i ∈ kept} e_i``."""
    kept = tuple(sorted(set(kept)))
    if not kept:
        raise EmptyKeptSet("no vertices kept")
    field = ab.field
    zero, one = field.zero, field.one
    pos = {v: n for n, v in enumerate(kept)}
    words = ab.normal_words
    lam = [k for k, w in enumerate(words) if w.source in pos and w.target in pos]
    dim_total = len(lam)

    # rad Λ and rad² Λ, per vertex pair
    rad = {}
    for k in lam:
        w = words[k]
        if len(w):
            rad.setdefault((w.source, w.target), []).append(k)
    rad2 = {}
    for (i, j), xs in rad.items():
        for (j2, l), ys in rad.items():
            if j2 != j:
                continue
            for x in xs:
                for y in ys:
                    p = ab.multiply({x: one}, {y: one})
                    if p:
                        rad2.setdefault((i, l), []).append(p)
    rad2 = {key: _span_rank(v, field) for key, v in rad2.items()}

    # arrows: words independent modulo rad², greedily in normal-word order;
    # a single Γ arrow keeps its name, longer paths get fresh letters
    pending = []
    for i in kept:
        for j in kept:
            rows = {max(r): r for r in rad2.get((i, j), [])}
            for k in rad.get((i, j), []):
                if _insert_int({k: one}, rows, zero):
                    w = words[k]
                    pending.append((i, j, k, ab.arrows[w.arrows[0]].name if len(w) == 1 else None))
    taken = {name for *_, name in pending if name is not None}
    fresh = _names(taken)
    arrows, gmap = [], {}
    for i, j, k, name in pending:
        name = name or next(fresh)
        arrows.append(Arrow(name, pos[i], pos[j]))
        gmap[name] = {k: one}

    out_arrows = tuple(arrows)
    vertices = tuple(ab.presentation.vertices[v] for v in kept)
    base = QuiverPresentation(field, vertices, out_arrows, ())
    pres = AlgebraPresentation(base, dim_total, 0, gmap, kept, ab)

    # living paths and their values in Γ
    n_arrows = len(out_arrows)
    out_by_src = {}
    for a, arr in enumerate(out_arrows):
        out_by_src.setdefault(arr.source, []).append(a)
    value = {(a,): gmap[out_arrows[a].name] for a in range(n_arrows)}
    level = [(a,) for a in range(n_arrows)]
    living = list(level)
    length = 1
    loewy = 1 if not n_arrows else None
    while level:
        if length > max_rel_deg:
            raise GroebnerCapError(f"relations beyond length {max_rel_deg}: cap too low")
        nxt = []
        for p in level:
            if not value[p]:
                continue
            for a in out_by_src.get(out_arrows[p[-1]].target, []):
                q = p[1:] + (a,)
                if len(q) > 1 and (q not in value or not value[q]):
                    continue
                if len(q) == 1 and not value[q]:
                    continue
                np_ = p + (a,)
                value[np_] = ab.multiply(value[p], gmap[out_arrows[a].name])
                nxt.append(np_)
        length += 1
        if nxt:
            living.extend(nxt)
        level = nxt
    max_nonzero = max((len(p) for p in living if value[p]), default=0)
    loewy = max_nonzero + 1
    pres.loewy_length = loewy

    # kernel of evaluation on living paths of length >= 2, per vertex pair
    by_pair = {}
    for p in living:
        if len(p) >= 2:
            by_pair.setdefault((out_arrows[p[0]].source, out_arrows[p[-1]].target), []).append(p)
    kernel_rows = {}  # leading path -> row, over all pairs
    for pair, paths in sorted(by_pair.items()):
        paths.sort(key=_key)
        support = sorted({k for p in paths for k in value[p]})
        rix = {k: r for r, k in enumerate(support)}
        data = [[zero] * len(paths) for _ in support]
        for c, p in enumerate(paths):
            for k, x in value[p].items():
                data[rix[k]][c] = x
        if support:
            K = kernel_basis(Matrix.from_rows(field, data, len(paths)))
            vecs = [{paths[r]: x for r, x in enumerate(K.column(j)) if x} for j in range(K.cols)]
        else:
            vecs = [{p: one} for p in paths]
        for v in vecs:
            _insert(v, kernel_rows, zero)
    _reduce_fully(kernel_rows, zero)
    living_set = set(living)

    def truncate(vec):
        return {p: c for p, c in vec.items() if p in living_set}

    # J·I + I·J inside the living span
    prod_rows: dict = {}
    for row in kernel_rows.values():
        p0 = next(iter(row))
        s, t = out_arrows[p0[0]].source, out_arrows[p0[-1]].target
        for a in range(n_arrows):
            if out_arrows[a].target == s:
                v = truncate({(a,) + p: c for p, c in row.items()})
                if v:
                    _insert(v, prod_rows, zero)
            if out_arrows[a].source == t:
                v = truncate({p + (a,): c for p, c in row.items()})
                if v:
                    _insert(v, prod_rows, zero)

    chosen = []
    span = {k: dict(v) for k, v in prod_rows.items()}
    for lead in sorted(kernel_rows, key=_key):
        row = kernel_rows[lead]
        if _insert(row, span, zero):
            chosen.append(row)

    relations = _to_relations(chosen, out_arrows, field)
    quiver = QuiverPresentation(field, vertices, out_arrows, tuple(relations))
    alg = groebner_basis(quiver, max_rel_deg)
    if alg.total_dim != dim_total:
        # a non-homogeneous generator can hide a lower-length consequence;
        # add kernel rows until the presented dimension is right
        for lead in sorted(kernel_rows, key=_key):
            row = kernel_rows[lead]
            if any(row is c for c in chosen):
                continue
            chosen.append(row)
            relations = _to_relations(chosen, out_arrows, field)
            quiver = QuiverPresentation(field, vertices, out_arrows, tuple(relations))
            alg = groebner_basis(quiver, max_rel_deg)
            if alg.total_dim == dim_total:
                break
    if alg.total_dim != dim_total:
        raise AssertionError("reconstructed presentation has the wrong dimension")
    pres.quiver = quiver
    pres.algebra = alg
    return pres


def _insert_int(vec, rows, zero):
    # rows keyed by max word index (the _span_rank convention)
    v = dict(vec)
    while v:
        p = max(v)
        if p in rows:
            c = v[p]
            for k, x in rows[p].items():
                s = v.get(k, zero) - c * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        else:
            inv = 1 / v[p]
            rows[p] = {k: x * inv for k, x in v.items()}
            return True
    return False


def _reduce_fully(rows: dict, zero):
    """Turn an echelon basis into the reduced one (each lead absent elsewhere)."""
    for lead in sorted(rows, key=_key):
        r = rows[lead]
        for other_lead, other in rows.items():
            if other_lead == lead or lead not in other:
                continue
            c = other[lead]
            for k, x in r.items():
                s = other.get(k, zero) - c * x
                if s:
                    other[k] = s
                else:
                    other.pop(k, None)


def _to_relations(rows, arrows, field):
    rels = []
    for row in rows:
        terms = sorted(row.items(), key=lambda t: _key(t[0]), reverse=True)
        terms = _integral([(c, w) for w, c in terms], field)
        s = arrows[terms[0][1][0]].source
        t = arrows[terms[0][1][-1]].target
        rels.append(Relation(tuple(terms), s, t))
    return rels


def reconstruct_algebra(spec, max_rel_deg: int = 30) -> AlgebraPresentation:
    """Λ for an exact structure: keep the projectives of the structure."""
    kept = spec.projective_vertices
    if not kept:
        raise EmptyKeptSet("every vertex is a source of a chosen dotted arrow; no projectives remain")
    return endomorphism_presentation(spec.quiver.algebra, kept, max_rel_deg)


# -------------------------------------------------------------------------
# comparing with a stated presentation


@dataclass
class IsomorphismCertificate:
    relations_vanish: bool
    arrows_generate: bool
    dims_equal: bool
    presented_dim: int
    target_dim: int
    failing_relations: list

    @property
    def ok(self) -> bool:
        return self.relations_vanish and self.arrows_generate and self.dims_equal


def check_stated_presentation(ab: AlgebraBasis, kept: Sequence[int], stated: QuiverPresentation,
                              realization: dict) -> IsomorphismCertificate:
    """Two-sided criterion that ``stated`` presents eΓe.

    ``realization`` maps each stated arrow name to an element of Γ (dict).
    The stated relations must vanish, the realized arrows must generate
    eΓe, and the stated quotient must have dimension dim eΓe.  Together
    these give an isomorphism: the free path algebra surjects onto eΓe with
    kernel containing the stated ideal, and the dimensions agree.
    """
    kept = tuple(kept)
    vertex_of = {ab.presentation.vertices[v]: v for v in kept}
    field = ab.field
    one = field.one
    target_dim = sum(1 for w in ab.normal_words if w.source in kept and w.target in kept)

    def value(word):
        x = None
        for a in word:
            r = realization[stated.arrows[a].name]
            x = r if x is None else ab.multiply(x, r)
            if not x:
                return {}
        return x

    failing = []
    for rel in stated.relations:
        if _combine(ab, [(c, value(w)) for c, w in rel.terms]):
            failing.append(rel)
    for a in stated.arrows:
        src = vertex_of[stated.vertices[a.source]]
        tgt = vertex_of[stated.vertices[a.target]]
        for k in realization[a.name]:
            w = ab.normal_words[k]
            if (w.source, w.target) != (src, tgt) or not len(w):
                failing.append(f"arrow {a.name} is not realized in e_{src}Je_{tgt}")
                break

    # generation: span of values of stated paths (plus idempotents) = eΓe
    alg = groebner_basis(stated)
    vecs = []
    for w in alg.normal_words:
        if w.is_lazy:
            vecs.append({ab.idempotent(vertex_of[stated.vertices[w.source]]): one})
        else:
            v = value(w.arrows)
            if v:
                vecs.append(v)
    spanned = len(_span_rank(vecs, field))
    # normal words of the stated algebra span it, so their values span the image
    return IsomorphismCertificate(
        relations_vanish=not failing,
        arrows_generate=spanned == target_dim,
        dims_equal=alg.total_dim == target_dim,
        presented_dim=alg.total_dim,
        target_dim=target_dim,
        failing_relations=failing,
    )


# -------------------------------------------------------------------------
# modules over Λ obtained by restriction


def restricted_module(pres: AlgebraPresentation, vertex: int) -> Representation:
    """Hom_Γ(eΓ, P_vertex) = e_vΓe as a right Λ-module."""
    ab = pres.gamma
    lam = pres.algebra
    field = ab.field
    kept = pres.kept
    comp = [[k for k, w in enumerate(ab.normal_words) if w.source == vertex and w.target == i] for i in kept]
    dims = [len(c) for c in comp]
    action = []
    for arr in pres.quiver.arrows:
        r = pres.generator_map[arr.name]
        src, tgt = comp[arr.source], comp[arr.target]
        tpos = {k: n for n, k in enumerate(tgt)}
        data = [[field.zero] * len(src) for _ in tgt]
        for c, k in enumerate(src):
            for k2, x in ab.multiply({k: field.one}, r).items():
                data[tpos[k2]][c] = x
        action.append(Matrix.from_rows(field, data, len(src)))
    return Representation(lam, dims, action, RIGHT, check=True)


def ext_dimensions(M: Representation, N: Representation, upto: int, max_deg: int | None = None) -> list:
    """dim Ext^j(M, N) for j = 0..upto, via Hom(P•, N) and Yoneda (right modules).

    Entries are ``None`` where the resolution is too short to decide.
    """
    from .exactlin import rank as _rank

    res = cached_resolution(M, max_deg or upto + 1)
    ab = M.algebra
    field = ab.field

    def hom_dim(P):
        return sum(N.dims[v] for v in P.summands)

    def dual(d):
        # Hom(d, N): ⊕_k N_{v_k} -> ⊕_l N_{w_l}, u ↦ u·γ[k][l]
        gamma = gamma_matrix(d)
        rows = hom_dim(d.source)
        cols = []
        for k, v in enumerate(d.target.summands):
            for e in range(N.dims[v]):
                vec = [field.zero] * N.dims[v]
                vec[e] = field.one
                col = []
                for l, w in enumerate(d.source.summands):
                    col.extend(_act(N, vec, gamma[k][l], w))
                cols.append(col)
        return Matrix.from_columns(field, cols, rows) if cols else Matrix.zeros(field, rows, 0)

    ranks = [_rank(dual(d)) for d in res.differentials]
    out = []
    for j in range(upto + 1):
        if j > res.length_computed:
            out.append(0 if res.complete else None)
            continue
        if j + 1 > res.length_computed and not res.complete:
            out.append(None)
            continue
        h = hom_dim(res.terms[j])
        outgoing = ranks[j] if j < len(ranks) else 0
        incoming = ranks[j - 1] if j >= 1 else 0
        out.append(h - outgoing - incoming)
    return out


def _act(N: Representation, vec, element: dict, w: int) -> list:
    """``vec · element`` for a right module, landing in the component at ``w``."""
    ab = N.algebra
    field = ab.field
    acc = [field.zero] * N.dims[w]
    for k, c in element.items():
        word = ab.normal_words[k]
        v = list(vec)
        for a in word.arrows:
            v = N.action[a].apply(v)
        for i, x in enumerate(v):
            acc[i] += c * x
    return acc


@dataclass
class CotiltingReport:
    module: Representation
    ext_dims: list  # dim Ext^j(U, U) for j = 1..check_span (None = undetermined)
    verdict: str
    is_projective_generator: bool


def cotilting_module(spec, pres: AlgebraPresentation | None = None,
                     check_span: int = DEFAULT_CHECK_SPAN) -> CotiltingReport:
    """U = Hom_Γ(eΓ, fΓ) with f the injective vertices; checks Ext^{>0}(U, U) = 0."""
    pres = pres or reconstruct_algebra(spec)
    parts = [restricted_module(pres, v) for v in spec.injective_vertices]
    U, _, _ = direct_sum(parts, pres.algebra, RIGHT)
    U = Representation(U.algebra, U.dims, U.action, RIGHT, check=False)
    dims = ext_dimensions(U, U, check_span, check_span + 1)[1:]
    if any(d for d in dims if d):
        verdict = "no"
    elif any(d is None for d in dims):
        verdict = "undetermined"
    else:
        verdict = "yes"
    from .repmod import is_projective

    projgen = is_projective(U) and all(U.dims)
    return CotiltingReport(U, dims, verdict, projgen)


@dataclass
class IGReport:
    right_id_verdict: IDVerdict
    left_id_verdict: IDVerdict
    n: int
    check_span: int

    def __str__(self):
        return f"{self.right_id_verdict}/{self.left_id_verdict}"

    @property
    def ok(self) -> bool:
        return self.right_id_verdict.status == "yes" and self.left_id_verdict.status == "yes"


def _smallest_yes(alg: AlgebraBasis, side: str, n: int, check_span: int) -> IDVerdict:
    last = None
    for m in range(n + 1):
        last = injective_dimension_leq(alg, side, m, check_span)
        if last.status == "yes":
            return last
        if last.status == "undetermined":
            return last
    return last


def verify_iwanaga_gorenstein(pres: AlgebraPresentation, n: int | None = None,
                              check_span: int = DEFAULT_CHECK_SPAN) -> IGReport:
    """Self-injective dimension of Λ on both sides, bounded by ``n``.

    ``n`` defaults to gl.dim Γ.  Each verdict reports the least m <= n with
    id <= m, or "no" when even id <= n fails.
    """
    if n is None:
        gd = global_dimension(pres.gamma)
        n = gd.bound + 1 if isinstance(gd, LowerBound) else gd
    alg = pres.algebra
    return IGReport(_smallest_yes(alg, RIGHT, n, check_span), _smallest_yes(alg, LEFT, n, check_span), n, check_span)


@dataclass
class GPReport:
    per_vertex: dict  # Γ vertex -> list of dim Ext^j(Hom(eΓ, P_v), Λ), j = 1..span
    verdict: str


def gp_orthogonality_check(spec, pres: AlgebraPresentation | None = None,
                           check_span: int = DEFAULT_CHECK_SPAN) -> GPReport:
    """Ext^j_Λ(Hom_Γ(eΓ, P_i), Λ) = 0 for 1 <= j <= check_span and every vertex i."""
    if not spec.frobenius:
        raise ValueError("the orthogonality check applies to Frobenius structures")
    pres = pres or reconstruct_algebra(spec)
    per = {}
    verdict = "yes"
    for v in range(spec.quiver.num_vertices):
        M = restricted_module(pres, v)
        res = cached_resolution(M, check_span + 1)
        dims = []
        for j in range(1, check_span + 1):
            try:
                dims.append(ext_against_algebra(M, j, res).dim)
            except Exception:
                dims.append(None)
        per[v] = dims
        if any(d for d in dims if d):
            verdict = "no"
        elif any(d is None for d in dims) and verdict == "yes":
            verdict = "undetermined"
    return GPReport(per, verdict)


# -------------------------------------------------------------------------
# realization files


@dataclass
class Realization:
    """A stated presentation together with the Γ-paths realizing its arrows."""

    gamma_file: str
    kept: tuple  # vertex names of Γ
    arrows: dict  # stated arrow name -> expression over Γ's arrows


def parse_realization(text: str) -> Realization:
    """Read ``gamma <file>``, ``kept <names>`` and ``<arrow> = <expression>`` lines."""
    gamma_file, kept, arrows = None, (), {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "gamma":
            gamma_file = rest.strip()
        elif head == "kept":
            kept = tuple(rest.split())
        elif "=" in line:
            name, _, expr = line.partition("=")
            arrows[name.strip()] = expr.strip()
        else:
            raise ValueError(f"line {lineno}: cannot read {line!r}")
    if gamma_file is None or not kept:
        raise ValueError("realization needs 'gamma' and 'kept' lines")
    return Realization(gamma_file, kept, arrows)


def certify_realization(real: Realization, gamma: AlgebraBasis, stated: QuiverPresentation) -> IsomorphismCertificate:
    """Run :func:`check_stated_presentation` on a parsed realization file."""
    kept = tuple(gamma.presentation.vertex_index(v) for v in real.kept)
    if sorted(real.kept) != sorted(stated.vertices):
        raise ValueError("kept vertices differ from the stated presentation's vertices")
    missing = {a.name for a in stated.arrows} - set(real.arrows)
    if missing:
        raise ValueError("no realization for arrows " + ", ".join(sorted(missing)))
    realization = {name: parse_element(gamma, expr) for name, expr in real.arrows.items()}
    return check_stated_presentation(gamma, kept, stated, realization)
