"""Minimal projective resolutions, Ext against the algebra, and dimensions."""
from __future__ import annotations

from dataclasses import dataclass

from .exactlin import Matrix
from .pathalg import AlgebraBasis
from .repmod import (
    LEFT,
    RIGHT,
    ModuleMap,
    Representation,
    as_opposite,
    cohomology,
    gamma_matrix,
    identity_map,
    kernel,
    opposite,
    projective_cover,
    projective_sum,
    projective_basis,
    radical,
    simple_module,
    zero_map,
    zero_module,
)
from .exactlin import rank

DEFAULT_MAX_DEG = 20
DEFAULT_CHECK_SPAN = 10


class ResolutionTooShort(Exception):
    pass


@dataclass(frozen=True)
class LowerBound:
    """Marker for a dimension known only to exceed ``bound``."""

    bound: int

    def __str__(self):
        return f"> {self.bound}"


@dataclass
class ProjResolution:
    module: Representation
    terms: list
    differentials: list  # differentials[k] : terms[k+1] -> terms[k]
    augmentation: ModuleMap
    minimal: bool = True
    complete: bool = False
    length_computed: int = 0

    def check(self):
        """Raise AssertionError unless the resolution is exact and minimal."""
        maps = [self.augmentation] + list(self.differentials)
        for f, g in zip(maps, maps[1:]):
            assert (f @ g).is_zero(), "consecutive maps do not compose to zero"
        assert self.augmentation.is_surjective()
        # exactness by dimension count: rank of incoming = nullity of outgoing
        for k, f in enumerate(maps):
            nullity = [b.cols - rank(b) for b in f.blocks]
            incoming = [rank(b) for b in maps[k + 1].blocks] if k + 1 < len(maps) else None
            if incoming is not None:
                assert nullity == incoming, f"not exact at term {k}"
            elif self.complete:
                assert not any(nullity), "last differential is not injective"
        if self.minimal:
            for d in self.differentials:
                R, inc = radical(d.target)
                for v, b in enumerate(d.blocks):
                    if b.cols:
                        assert rank(inc.blocks[v].hstack(b)) == inc.blocks[v].cols, "differential not radical"
        return True


@dataclass
class LeftExtModule:
    degree: int
    value: Representation

    @property
    def dim(self) -> int:
        return self.value.dim


def minimal_resolution(M: Representation, max_deg: int = DEFAULT_MAX_DEG) -> ProjResolution:
    """Iterated projective covers of syzygies, up to ``P_max_deg``."""
    if M.side != RIGHT:
        raise ValueError("resolve right modules; pass a left module through as_opposite")
    P0, aug = projective_cover(M)
    terms = [P0]
    diffs = []
    K, inc = kernel(aug)
    while K.dim and len(terms) <= max_deg:
        P, e = projective_cover(K)
        diffs.append(inc @ e)
        terms.append(P)
        K, inc = kernel(e)
    return ProjResolution(M, terms, diffs, aug, True, K.dim == 0, len(terms) - 1)


def _resolution_cache(M: Representation) -> dict:
    cache = M.__dict__.get("_res_cache")
    if cache is None:
        cache = {}
        object.__setattr__(M, "_res_cache", cache)
    return cache


def cached_resolution(M: Representation, max_deg: int) -> ProjResolution:
    cache = _resolution_cache(M)
    best = cache.get("res")
    if best is not None and (best.complete or best.length_computed >= max_deg):
        return best
    res = minimal_resolution(M, max_deg)
    cache["res"] = res
    return res


def dual_term(ab: AlgebraBasis, P: Representation) -> Representation:
    """Hom_Γ(P, Γ) for a projective sum ``P = ⊕ e_vΓ``: the left module ⊕ Γe_v."""
    return projective_sum(ab, P.summands, LEFT)


def dual_map(ab: AlgebraBasis, d: ModuleMap, src_dual: Representation, tgt_dual: Representation) -> ModuleMap:
    """Hom(d, Γ): right multiplication by the Γ-matrix of ``d``.

    ``d: ⊕_l e_{w_l}Γ -> ⊕_k e_{v_k}Γ`` is left multiplication by ``γ[k][l]``;
    its dual ``⊕_k Γe_{v_k} -> ⊕_l Γe_{w_l}`` sends ``(x_k)`` to ``(Σ_k x_k γ[k][l])_l``.
    """
    field = ab.field
    gamma = gamma_matrix(d)
    src_summands = d.target.summands  # the v_k
    tgt_summands = d.source.summands  # the w_l
    n = ab.num_vertices
    lbasis = {v: projective_basis(ab, v, LEFT) for v in set(src_summands) | set(tgt_summands)}
    blocks = []
    for u in range(n):
        # columns indexed by basis of (⊕ Γe_{v_k})_u, rows by (⊕ Γe_{w_l})_u
        row_offsets = []
        off = 0
        for w in tgt_summands:
            row_offsets.append(off)
            off += len(lbasis[w][u])
        nrows = off
        cols = []
        for k, v in enumerate(src_summands):
            for word in lbasis[v][u]:
                col = [field.zero] * nrows
                x = {word: field.one}
                for l, w in enumerate(tgt_summands):
                    g = gamma[k][l]
                    if not g:
                        continue
                    prod = ab.multiply(x, g)
                    pos = {b: i for i, b in enumerate(lbasis[w][u])}
                    for b, c in prod.items():
                        col[row_offsets[l] + pos[b]] += c
                cols.append(col)
        if cols:
            blocks.append(Matrix.from_columns(field, cols, nrows))
        else:
            blocks.append(Matrix.zeros(field, nrows, 0))
    return ModuleMap(src_dual, tgt_dual, blocks, check=False)


def dual_complex(res: ProjResolution, upto: int):
    """Terms D^0..D^upto and maps D^k -> D^{k+1} of Hom_Γ(P•, Γ)."""
    ab = res.module.algebra
    duals = [dual_term(ab, P) for P in res.terms[: upto + 1]]
    maps = []
    for k in range(min(upto, len(res.differentials))):
        maps.append(dual_map(ab, res.differentials[k], duals[k], duals[k + 1]))
    return duals, maps


def ext_against_algebra(M: Representation, i: int, res: ProjResolution | None = None,
                        max_deg: int = DEFAULT_MAX_DEG) -> LeftExtModule:
    """Ext^i_Γ(M, Γ) as a left Γ-module, from the dual of a minimal resolution."""
    ab = M.algebra
    if i < 0:
        raise ValueError("negative degree")
    if res is None:
        res = cached_resolution(M, max(max_deg, i + 1))
    if i > res.length_computed:
        if res.complete:
            return LeftExtModule(i, zero_module(ab, LEFT))
        raise ResolutionTooShort(f"need P_{i + 1} but only P_{res.length_computed} computed")
    if i + 1 > res.length_computed and not res.complete:
        raise ResolutionTooShort(f"need P_{i + 1} but only P_{res.length_computed} computed")
    duals, maps = dual_complex(res, min(i + 1, res.length_computed))
    Di = duals[i]
    incoming = maps[i - 1] if i >= 1 else zero_map(zero_module(ab, LEFT), Di)
    if i < len(maps):
        outgoing = maps[i]
    else:
        outgoing = zero_map(Di, zero_module(ab, LEFT))
    H = cohomology(incoming, outgoing)
    return LeftExtModule(i, Representation(ab, H.dims, H.action, LEFT, check=True))


def projective_dimension(M: Representation, max_deg: int = DEFAULT_MAX_DEG):
    """Exact pd, or ``LowerBound(max_deg)`` when the resolution does not finish."""
    res = cached_resolution(M, max_deg)
    if not res.complete:
        return LowerBound(max_deg)
    return res.length_computed if M.dim else 0


def global_dimension(ab: AlgebraBasis, max_deg: int = DEFAULT_MAX_DEG):
    best = 0
    for v in range(ab.num_vertices):
        pd = projective_dimension(simple_module_cached(ab, v), max_deg)
        if isinstance(pd, LowerBound):
            return pd
        best = max(best, pd)
    return best


def simple_module_cached(ab: AlgebraBasis, v: int, side: str = RIGHT) -> Representation:
    cache = ab.__dict__.setdefault("_simple_cache", {})
    if (v, side) not in cache:
        cache[(v, side)] = simple_module(ab, v, side)
    return cache[(v, side)]


@dataclass(frozen=True)
class IDVerdict:
    status: str  # "yes", "no" or "undetermined"
    n: int
    detail: str = ""

    def __str__(self):
        return f"yes({self.n})" if self.status == "yes" else self.status


def _window(ab: AlgebraBasis, n: int, check_span: int):
    """Per simple: (Ext^{n+1} nonzero?, window all zero?, complete?)."""
    out = []
    for v in range(ab.num_vertices):
        S = simple_module_cached(ab, v)
        res = cached_resolution(S, n + check_span + 1)
        first_nonzero = ext_against_algebra(S, n + 1, res).dim != 0
        window_zero = not first_nonzero and all(
            ext_against_algebra(S, i, res).dim == 0 for i in range(n + 2, n + check_span + 1)
        )
        out.append((v, first_nonzero, window_zero, res.complete))
    return out


def injective_dimension_leq(ab: AlgebraBasis, side: str, n: int,
                            check_span: int = DEFAULT_CHECK_SPAN) -> IDVerdict:
    """Decide id(Γ_Γ) <= n (side "right") or id(_ΓΓ) <= n (side "left").

    "no" when some simple S has Ext^{n+1}(S, Γ) != 0.  "yes" when the
    window n < i <= n + check_span vanishes for every simple and each
    simple's resolution either finished or the opposite side's window also
    vanishes.  Otherwise "undetermined".
    """
    if n < 0 or check_span < 1:
        raise ValueError("need n >= 0 and check_span >= 1")
    alg = ab if side == RIGHT else opposite(ab)
    rows = _window(alg, n, check_span)
    for v, first_nonzero, _, _ in rows:
        if first_nonzero:
            return IDVerdict("no", n, f"Ext^{n + 1}(S_{ab.presentation.vertices[v]}, Γ) != 0")
    if not all(w for _, _, w, _ in rows):
        return IDVerdict("undetermined", n, "nonzero Ext inside the window")
    if all(c for _, _, _, c in rows):
        return IDVerdict("yes", n, "all simple resolutions complete")
    other = opposite(alg)
    orows = _window(other, n, check_span)
    if all(w for _, _, w, _ in orows):
        return IDVerdict("yes", n, "window vanishes on both sides")
    return IDVerdict("undetermined", n, "window not corroborated on the opposite side")
