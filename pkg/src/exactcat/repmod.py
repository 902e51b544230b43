"""Finite-dimensional modules over a bound quiver algebra as representations.

A right module assigns to an arrow ``a: i -> j`` a matrix from the vertex-i
component to the vertex-j component (shape ``(d_j, d_i)``); a left module
uses the reverse direction.  Every construction here works with the
*effective* direction of an arrow, so kernels, cokernels, Hom spaces and
radicals are side-agnostic.  Projective covers and resolutions are computed
for right modules; a left module is handled as a right module over the
opposite algebra (same matrices, arrows reversed).
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exactlin import (
    FieldSpec,
    Matrix,
    column_basis,
    complement_basis,
    hstack_all,
    inverse,
    kernel_basis,
    rank,
    solve,
)
from .pathalg import AlgebraBasis, opposite_algebra

RIGHT = "right"
LEFT = "left"


class RelationViolation(ValueError):
    """An arrow action does not satisfy the algebra's relations."""


class NotAModuleMap(ValueError):
    pass


def opposite(ab: AlgebraBasis) -> AlgebraBasis:
    """Cached opposite algebra; ``opposite(opposite(ab)) is ab``."""
    op = getattr(ab, "_opposite", None)
    if op is None:
        op = opposite_algebra(ab)
        op._opposite = ab
        ab._opposite = op
    return op


def _ends(ab: AlgebraBasis, a: int, side: str) -> tuple[int, int]:
    arr = ab.arrows[a]
    return (arr.source, arr.target) if side == RIGHT else (arr.target, arr.source)


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: AlgebraBasis
    dims: tuple
    action: tuple
    side: str = RIGHT
    summands: tuple | None = None  # vertices of P_v summands, for projective sums
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        ab = self.algebra
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "action", tuple(self.action))
        if len(self.dims) != ab.num_vertices or len(self.action) != len(ab.arrows):
            raise ValueError("dims/action do not match the quiver")
        for a, m in enumerate(self.action):
            s, t = _ends(ab, a, self.side)
            if m.shape != (self.dims[t], self.dims[s]):
                raise ValueError(f"arrow {ab.arrows[a].name}: matrix shape {m.shape} does not match dims")
        if self.check:
            self.check_relations()

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_matrix(self, word: Sequence[int]) -> Matrix:
        """Matrix of the action of a nonempty path."""
        mats = [self.action[a] for a in word]
        if self.side == LEFT:
            mats = mats[::-1]
        out = mats[0]
        for m in mats[1:]:
            out = m @ out
        return out

    def check_relations(self):
        ab = self.algebra
        for rel in ab.presentation.relations:
            acc = None
            for c, w in rel.terms:
                term = self.path_matrix(w).scale(c)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                raise RelationViolation(f"relation on line {rel.line} fails in this representation")

    def composition_factors(self) -> Counter:
        return composition_factors(self)

    def __repr__(self):
        return f"Representation({self.side}, dims={list(self.dims)})"


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Representation
    target: Representation
    blocks: tuple
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        src, tgt = self.source, self.target
        if src.side != tgt.side or src.algebra is not tgt.algebra:
            raise NotAModuleMap("source and target live over different algebras or sides")
        for v, b in enumerate(self.blocks):
            if b.shape != (tgt.dims[v], src.dims[v]):
                raise NotAModuleMap(f"block at vertex {v} has shape {b.shape}")
        if self.check:
            for a in range(len(src.algebra.arrows)):
                s, t = _ends(src.algebra, a, src.side)
                if tgt.action[a] @ self.blocks[s] != self.blocks[t] @ src.action[a]:
                    raise NotAModuleMap(f"naturality fails at arrow {src.algebra.arrows[a].name}")

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition ``self ∘ other``."""
        return ModuleMap(other.source, self.target,
                         [b @ c for b, c in zip(self.blocks, other.blocks)], check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [b + c for b, c in zip(self.blocks, other.blocks)], check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [b - c for b, c in zip(self.blocks, other.blocks)], check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [b.scale(c) for b in self.blocks], check=False)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def rank(self) -> int:
        return sum(rank(b) for b in self.blocks)

    def is_injective(self) -> bool:
        return all(rank(b) == b.cols for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(rank(b) == b.rows for b in self.blocks)


def zero_map(M: Representation, N: Representation) -> ModuleMap:
    return ModuleMap(M, N, [Matrix.zeros(M.field, n, m) for m, n in zip(M.dims, N.dims)], check=False)


def identity_map(M: Representation) -> ModuleMap:
    return ModuleMap(M, M, [Matrix.identity(M.field, d) for d in M.dims], check=False)


def zero_module(ab: AlgebraBasis, side: str = RIGHT) -> Representation:
    dims = [0] * ab.num_vertices
    return Representation(ab, dims, [Matrix.zeros(ab.field, 0, 0) for _ in ab.arrows], side, summands=(), check=False)


# -------------------------------------------------------------------------
# standard modules


def simple_module(ab: AlgebraBasis, vertex: int, side: str = RIGHT) -> Representation:
    dims = [1 if v == vertex else 0 for v in range(ab.num_vertices)]
    action = []
    for a in range(len(ab.arrows)):
        s, t = _ends(ab, a, side)
        action.append(Matrix.zeros(ab.field, dims[t], dims[s]))
    return Representation(ab, dims, action, side, check=False)


def _word_positions(ab: AlgebraBasis, words: list[int], key) -> tuple[list[int], dict]:
    """Split a list of normal-word indices by vertex ``key(word)``."""
    dims = [0] * ab.num_vertices
    pos = {}
    for k in words:
        v = key(ab.normal_words[k])
        pos[k] = dims[v]
        dims[v] += 1
    return dims, pos


def projective_module(ab: AlgebraBasis, vertex: int, side: str = RIGHT) -> Representation:
    """``e_i Γ`` (right) or ``Γ e_i`` (left) on the normal-word basis."""
    field = ab.field
    if side == RIGHT:
        words = ab.words_from(vertex)
        dims, pos = _word_positions(ab, words, lambda w: w.target)
        action = []
        for a, arr in enumerate(ab.arrows):
            m = [[field.zero] * dims[arr.source] for _ in range(dims[arr.target])]
            for k in words:
                if ab.normal_words[k].target != arr.source:
                    continue
                for j, c in ab.mult_table.get((k, a), {}).items():
                    m[pos[j]][pos[k]] = c
            action.append(Matrix.from_rows(field, m, dims[arr.source]))
    else:
        words = [k for k, w in enumerate(ab.normal_words) if w.target == vertex]
        dims, pos = _word_positions(ab, words, lambda w: w.source)
        action = []
        for a, arr in enumerate(ab.arrows):
            m = [[field.zero] * dims[arr.target] for _ in range(dims[arr.source])]
            ea = ab.element_of_word((a,))
            for k in words:
                if ab.normal_words[k].source != arr.target:
                    continue
                for j, c in ab.multiply(ea, {k: field.one}).items():
                    m[pos[j]][pos[k]] = c
            action.append(Matrix.from_rows(field, m, dims[arr.target]))
    return Representation(ab, dims, action, side, summands=(vertex,), check=False)


def projective_basis(ab: AlgebraBasis, vertex: int, side: str = RIGHT) -> list[list[int]]:
    """Normal-word indices spanning each component of ``projective_module``."""
    if side == RIGHT:
        words = ab.words_from(vertex)
        key = lambda w: w.target  # noqa: E731
    else:
        words = [k for k, w in enumerate(ab.normal_words) if w.target == vertex]
        key = lambda w: w.source  # noqa: E731
    out = [[] for _ in range(ab.num_vertices)]
    for k in words:
        out[key(ab.normal_words[k])].append(k)
    return out


def direct_sum(modules: Sequence[Representation], ab: AlgebraBasis | None = None, side: str | None = None):
    """Direct sum with its list of injections and projections."""
    if not modules:
        if ab is None:
            raise ValueError("empty direct sum needs an algebra")
        return zero_module(ab, side or RIGHT), [], []
    ab = modules[0].algebra
    side = modules[0].side
    field = ab.field
    n = ab.num_vertices
    dims = [sum(M.dims[v] for M in modules) for v in range(n)]
    action = []
    for a in range(len(ab.arrows)):
        s, t = _ends(ab, a, side)
        blocks = [M.action[a] for M in modules]
        action.append(_block_diag(field, blocks, dims[t], dims[s]))
    summands = None
    if all(M.summands is not None for M in modules):
        summands = tuple(v for M in modules for v in M.summands)
    S = Representation(ab, dims, action, side, summands=summands, check=False)
    injections, projections = [], []
    offsets = [0] * n
    for M in modules:
        inj, proj = [], []
        for v in range(n):
            e = [[field.zero] * M.dims[v] for _ in range(dims[v])]
            for r in range(M.dims[v]):
                e[offsets[v] + r][r] = field.one
            E = Matrix.from_rows(field, e, M.dims[v])
            inj.append(E)
            proj.append(E.transpose())
            offsets[v] += M.dims[v]
        injections.append(ModuleMap(M, S, inj, check=False))
        projections.append(ModuleMap(S, M, proj, check=False))
    return S, injections, projections


def _block_diag(field, blocks, rows, cols) -> Matrix:
    data = [[field.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            row = b.row(i)
            for j in range(b.cols):
                data[r0 + i][c0 + j] = row[j]
        r0 += b.rows
        c0 += b.cols
    return Matrix.from_rows(field, data, cols)


def projective_sum(ab: AlgebraBasis, vertices: Sequence[int], side: str = RIGHT) -> Representation:
    cache = ab.__dict__.setdefault("_proj_cache", {})
    mods = []
    for v in vertices:
        key = (v, side)
        if key not in cache:
            cache[key] = projective_module(ab, v, side)
        mods.append(cache[key])
    return direct_sum(mods, ab, side)[0]


# -------------------------------------------------------------------------
# maps out of projective sums (Yoneda)


def _word_images(M: Representation, vertex: int, vec: list) -> dict:
    """Images ``vec · w`` for all normal words ``w`` from ``vertex`` (right modules)."""
    ab = M.algebra
    field = ab.field
    out = {}
    for k in ab.words_from(vertex):
        w = ab.normal_words[k]
        if w.is_lazy:
            out[k] = list(vec)
        else:
            prefix = ab.index[(w.source, w.arrows[:-1])]
            out[k] = M.action[w.arrows[-1]].apply(out[prefix])
    return out


def map_from_projective(P: Representation, N: Representation, images: Sequence[Sequence]) -> ModuleMap:
    """The map sending the generator ``e_v`` of the k-th summand of ``P`` to ``images[k]``.

    ``images[k]`` is a vector in the component of ``N`` at ``P.summands[k]``.
    """
    if P.side != RIGHT:
        raise ValueError("map_from_projective works with right modules")
    ab = P.algebra
    field = ab.field
    cols = [[] for _ in range(ab.num_vertices)]
    for v, img in zip(P.summands, images):
        if len(img) != N.dims[v]:
            raise ValueError("generator image has the wrong length")
        wi = _word_images(N, v, img)
        for k in ab.words_from(v):
            cols[ab.normal_words[k].target].append(wi[k])
    blocks = [Matrix.from_columns(field, cols[u], N.dims[u]) if cols[u] else Matrix.zeros(field, N.dims[u], 0)
              for u in range(ab.num_vertices)]
    return ModuleMap(P, N, blocks, check=False)


def generator_images(f: ModuleMap) -> list[list]:
    """Inverse of :func:`map_from_projective`: images of the summand generators."""
    P = f.source
    out = []
    seen = Counter()
    for v in P.summands:
        # position of e_v of this summand inside the vertex-v component of P
        pos = _generator_position(P, v, seen[v])
        seen[v] += 1
        out.append(f.blocks[v].column(pos))
    return out


def _generator_position(P: Representation, v: int, occurrence: int) -> int:
    ab = P.algebra
    pos = 0
    count = 0
    for u in P.summands:
        if u == v and count == occurrence:
            return pos
        if u == v:
            count += 1
        pos += len(projective_basis_cached(ab, u)[v])
    raise IndexError("summand not found")


def projective_basis_cached(ab: AlgebraBasis, vertex: int) -> list[list[int]]:
    cache = ab.__dict__.setdefault("_pbasis_cache", {})
    if vertex not in cache:
        cache[vertex] = projective_basis(ab, vertex, RIGHT)
    return cache[vertex]


def gamma_matrix(f: ModuleMap) -> list[list[dict]]:
    """Entries ``γ[k][l] ∈ e_{v_k} Γ e_{w_l}`` of a map between projective sums.

    ``f(e_{w_l}) = Σ_k γ[k][l]`` viewed in the k-th summand ``P_{v_k}`` of the
    target; in other words ``f`` is left multiplication by the matrix ``γ``.
    """
    ab = f.source.algebra
    src, tgt = f.source, f.target
    images = generator_images(f)
    result = [[{} for _ in src.summands] for _ in tgt.summands]
    for l, (w, vec) in enumerate(zip(src.summands, images)):
        pos = 0
        for k, v in enumerate(tgt.summands):
            basis = projective_basis_cached(ab, v)[w]
            elem = {}
            for r, word in enumerate(basis):
                c = vec[pos + r]
                if c:
                    elem[word] = c
            result[k][l] = elem
            pos += len(basis)
    return result


def map_from_gamma(ab: AlgebraBasis, src: Representation, tgt: Representation, gamma) -> ModuleMap:
    """Inverse of :func:`gamma_matrix`."""
    field = ab.field
    images = []
    for l, w in enumerate(src.summands):
        vec = []
        for k, v in enumerate(tgt.summands):
            basis = projective_basis_cached(ab, v)[w]
            elem = gamma[k][l]
            vec.extend(elem.get(word, field.zero) for word in basis)
        images.append(vec)
    return map_from_projective(src, tgt, images)


# -------------------------------------------------------------------------
# Hom spaces


def hom_space(M: Representation, N: Representation) -> list[ModuleMap]:
    """Basis of Hom(M, N) from the naturality equations."""
    if M.side != N.side or M.algebra is not N.algebra:
        raise ValueError("modules over different algebras or sides")
    ab = M.algebra
    field = ab.field
    n = ab.num_vertices
    offsets = []
    total = 0
    for v in range(n):
        offsets.append(total)
        total += M.dims[v] * N.dims[v]
    if total == 0:
        return []

    def var(v, r, c):
        return offsets[v] + r * M.dims[v] + c

    eqs = []
    for a in range(len(ab.arrows)):
        s, t = _ends(ab, a, M.side)
        Na, Ma = N.action[a], M.action[a]
        # N_a X_s - X_t M_a = 0, an (N_t x M_s) system
        for r in range(N.dims[t]):
            nrow = Na.row(r)
            for c in range(M.dims[s]):
                eq = {}
                for k in range(N.dims[s]):
                    x = nrow[k]
                    if x:
                        key = var(s, k, c)
                        eq[key] = eq.get(key, field.zero) + x
                for k in range(M.dims[t]):
                    x = Ma[k, c]
                    if x:
                        key = var(t, r, k)
                        eq[key] = eq.get(key, field.zero) - x
                eq = {key: x for key, x in eq.items() if x}
                if eq:
                    eqs.append(eq)
    rows = [[eq.get(j, field.zero) for j in range(total)] for eq in eqs]
    K = kernel_basis(Matrix.from_rows(field, rows, total)) if rows else Matrix.identity(field, total)
    out = []
    for j in range(K.cols):
        col = K.column(j)
        blocks = []
        for v in range(n):
            data = [[col[var(v, r, c)] for c in range(M.dims[v])] for r in range(N.dims[v])]
            blocks.append(Matrix.from_rows(field, data, M.dims[v]))
        out.append(ModuleMap(M, N, blocks, check=False))
    return out


# -------------------------------------------------------------------------
# submodules, kernels, cokernels


def submodule(M: Representation, bases: Sequence[Matrix]) -> tuple[Representation, ModuleMap]:
    """Submodule spanned per vertex by the (independent) columns of ``bases``."""
    ab = M.algebra
    field = ab.field
    dims = [b.cols for b in bases]
    action = []
    for a in range(len(ab.arrows)):
        s, t = _ends(ab, a, M.side)
        if dims[s] == 0 or dims[t] == 0:
            action.append(Matrix.zeros(field, dims[t], dims[s]))
            continue
        x = solve(bases[t], M.action[a] @ bases[s])
        if x is None:
            raise ValueError("subspaces are not closed under the action")
        action.append(x)
    S = Representation(ab, dims, action, M.side, check=False)
    return S, ModuleMap(S, M, list(bases), check=False)


def kernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return submodule(f.source, [kernel_basis(b) for b in f.blocks])


def image(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return submodule(f.target, [column_basis(b) for b in f.blocks])


def quotient(M: Representation, bases: Sequence[Matrix]) -> tuple[Representation, ModuleMap]:
    """Quotient of ``M`` by the submodule with per-vertex bases ``bases``."""
    ab = M.algebra
    field = ab.field
    comps, projs = [], []
    for v in range(ab.num_vertices):
        B = bases[v]
        C = complement_basis(B)
        full = B.hstack(C)
        inv = inverse(full) if full.rows else full
        q = inv.select_rows(range(B.cols, full.rows))
        comps.append(C)
        projs.append(q)
    dims = [c.cols for c in comps]
    action = []
    for a in range(len(ab.arrows)):
        s, t = _ends(ab, a, M.side)
        action.append(projs[t] @ (M.action[a] @ comps[s]))
    Q = Representation(ab, dims, action, M.side, check=False)
    return Q, ModuleMap(M, Q, projs, check=False)


def cokernel(f: ModuleMap) -> tuple[Representation, ModuleMap]:
    return quotient(f.target, [column_basis(b) for b in f.blocks])


def factor_through_mono(f: ModuleMap, mono: ModuleMap) -> ModuleMap:
    """The map ``h`` with ``mono ∘ h = f``."""
    blocks = []
    for v, (b, m) in enumerate(zip(f.blocks, mono.blocks)):
        if b.cols == 0 or m.cols == 0:
            blocks.append(Matrix.zeros(f.source.field, m.cols, b.cols))
            continue
        x = solve(m, b)
        if x is None:
            raise ValueError("map does not factor through the monomorphism")
        blocks.append(x)
    return ModuleMap(f.source, mono.source, blocks, check=False)


def factor_through_epi(f: ModuleMap, epi: ModuleMap) -> ModuleMap:
    """A map ``h`` with ``h ∘ epi = f`` when ``f`` kills ``ker epi``."""
    blocks = []
    for b, e in zip(f.blocks, epi.blocks):
        # h e = b  <=>  e^T h^T = b^T
        if e.rows == 0 or b.rows == 0:
            blocks.append(Matrix.zeros(f.source.field, b.rows, e.rows))
            continue
        x = solve(e.transpose(), b.transpose())
        if x is None:
            raise ValueError("map does not factor through the epimorphism")
        blocks.append(x.transpose())
    return ModuleMap(epi.target, f.target, blocks, check=False)


def cohomology(f: ModuleMap, g: ModuleMap) -> Representation:
    """``ker g / im f`` for ``A --f--> B --g--> C`` with ``g ∘ f = 0``."""
    K, inc = kernel(g)
    h = factor_through_mono(f, inc)
    return cokernel(h)[0]


# -------------------------------------------------------------------------
# radical, top, covers


def radical(M: Representation) -> tuple[Representation, ModuleMap]:
    """``M · J``: at each vertex, the span of all arrow images landing there."""
    ab = M.algebra
    field = ab.field
    spans = [[] for _ in range(ab.num_vertices)]
    for a in range(len(ab.arrows)):
        s, t = _ends(ab, a, M.side)
        if M.dims[s] and M.dims[t]:
            spans[t].append(M.action[a])
    bases = []
    for v in range(ab.num_vertices):
        if spans[v]:
            bases.append(column_basis(hstack_all(field, M.dims[v], spans[v])))
        else:
            bases.append(Matrix.zeros(field, M.dims[v], 0))
    return submodule(M, bases)


def top(M: Representation) -> tuple[Representation, ModuleMap]:
    R, inc = radical(M)
    return quotient(M, list(inc.blocks))


def projective_cover(M: Representation) -> tuple[Representation, ModuleMap]:
    """Minimal projective cover of a right module (left modules via the opposite algebra)."""
    if M.side == LEFT:
        P, epi = projective_cover(as_opposite(M))
        return from_opposite(P), from_opposite_map(epi)
    ab = M.algebra
    R, inc = radical(M)
    vertices, images = [], []
    for v in range(ab.num_vertices):
        comp = complement_basis(inc.blocks[v]) if M.dims[v] else Matrix.zeros(ab.field, 0, 0)
        for j in range(comp.cols):
            vertices.append(v)
            images.append(comp.column(j))
    P = projective_sum(ab, vertices)
    return P, map_from_projective(P, M, images)


def is_projective(M: Representation) -> bool:
    P, _ = projective_cover(M)
    return P.dim == M.dim


def top_multiplicities(M: Representation) -> list[int]:
    R, _ = radical(M)
    return [d - r for d, r in zip(M.dims, R.dims)]


def composition_factors(M: Representation) -> Counter:
    """Multiset of simple factors (vertex indices).

    All simples are one-dimensional over a bound quiver algebra, so the
    factors are read off the dimension vector; this equals the multiset
    obtained by stripping tops layer by layer.
    """
    return Counter({v: d for v, d in enumerate(M.dims) if d})


def radical_layers(M: Representation) -> list[list[int]]:
    """Top dimension vectors of M, rad M, rad² M, ... (top-stripping)."""
    layers = []
    while M.dim:
        R, _ = radical(M)
        layers.append([d - r for d, r in zip(M.dims, R.dims)])
        M = R
    return layers


# -------------------------------------------------------------------------
# sides


def as_opposite(M: Representation) -> Representation:
    """A left Γ-module as a right Γ^op-module (and vice versa)."""
    op = opposite(M.algebra)
    side = RIGHT if M.side == LEFT else LEFT
    return Representation(op, M.dims, M.action, side, summands=M.summands, check=False)


def from_opposite(M: Representation) -> Representation:
    return as_opposite(M)


def from_opposite_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(as_opposite(f.source), as_opposite(f.target), f.blocks, check=False)


# -------------------------------------------------------------------------
# random modules


def random_map(M: Representation, N: Representation, rng: random.Random, height: int = 3) -> ModuleMap:
    """A random element of Hom(M, N); cheap for projective ``M``."""
    field = M.field
    if M.summands is not None and M.side == RIGHT:
        images = [[field.random_element(rng, height) for _ in range(N.dims[v])] for v in M.summands]
        return map_from_projective(M, N, images)
    basis = hom_space(M, N)
    f = zero_map(M, N)
    for h in basis:
        f = f + h.scale(field.random_element(rng, height))
    return f


def random_extension(M: Representation, vertex: int, rng: random.Random, height: int = 3) -> Representation:
    """A random extension ``0 -> M -> E -> S_vertex -> 0`` (right modules).

    Ext¹(S_v, M) is the cokernel of Hom(P_v, M) -> Hom(rad P_v, M); a random
    φ in Hom(rad P_v, M) gives the pushout ``E = (M ⊕ P_v) / {(φ(x), -x)}``.
    The split extension is included in the sample space.
    """
    ab = M.algebra
    field = ab.field
    P = projective_sum(ab, [vertex])
    R, inc = radical(P)
    phi = random_map(R, M, rng, height) if R.dim else zero_map(R, M)
    S, (iM, iP), _ = direct_sum([M, P])
    # submodule spanned by (φ(x), -x)
    blocks = []
    for v in range(ab.num_vertices):
        gen = iM.blocks[v] @ phi.blocks[v] - iP.blocks[v] @ inc.blocks[v]
        blocks.append(column_basis(gen) if gen.cols else Matrix.zeros(field, S.dims[v], 0))
    E, _ = quotient(S, blocks)
    return Representation(ab, E.dims, E.action, RIGHT, check=True)


def random_filt_module(ab: AlgebraBasis, allowed: Sequence[int], length: int, seed=None,
                       rng: random.Random | None = None, height: int = 3) -> Representation:
    """Module of composition length ``length`` with all factors in ``allowed``."""
    allowed = sorted(set(allowed))
    if not allowed or length < 1:
        raise ValueError("need a nonempty vertex set and length >= 1")
    rng = rng or random.Random(seed)
    M = simple_module(ab, rng.choice(allowed))
    for _ in range(length - 1):
        M = random_extension(M, rng.choice(allowed), rng, height)
    return M
