"""2-regular simples, the translation quiver, and exact structures on proj Γ.

An exact structure is identified with a set of dotted arrows ``P ⤏ τP``;
its conflations are the sequences of projectives whose cokernel (as a map
of Γ-modules) has all composition factors among the sources of the chosen
arrows.
"""
from __future__ import annotations

import random
import string
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .homology import (
    DEFAULT_MAX_DEG,
    ProjResolution,
    cached_resolution,
    ext_against_algebra,
    projective_dimension,
    LowerBound,
    simple_module_cached,
)
from .pathalg import AlgebraBasis
from .repmod import (
    ModuleMap,
    Representation,
    cokernel,
    composition_factors,
    direct_sum,
    identity_map,
    is_projective,
    kernel,
    projective_sum,
    random_filt_module,
    zero_map,
)

MAX_MATERIALIZED = 2 ** 20


class TooManyStructures(Exception):
    pass


class UnknownDottedSpec(ValueError):
    pass


@dataclass
class TwoRegularReport:
    vertex: int
    pd_is_2: bool
    ext0_vanishes: bool
    ext1_vanishes: bool
    ext2_dim: int
    ext2_support_vertex: int | None
    is_two_regular: bool
    c2_resolution: ProjResolution | None = None
    pd: object = None
    reason: str = ""


def check_two_regular(ab: AlgebraBasis, vertex: int, max_deg: int = DEFAULT_MAX_DEG) -> TwoRegularReport:
    """Definition of a 2-regular simple, evaluated on ``S_vertex``."""
    S = simple_module_cached(ab, vertex)
    res = cached_resolution(S, max_deg)
    pd = projective_dimension(S, max_deg)
    if isinstance(pd, LowerBound):
        return TwoRegularReport(vertex, False, False, False, 0, None, False, None, pd,
                                f"projective dimension {pd}: resolution unfinished at max_deg")
    exts = [ext_against_algebra(S, i, res) for i in range(3)]
    e0, e1, e2 = (e.value.dims for e in exts)
    ext2_dim = sum(e2)
    support = e2.index(1) if ext2_dim == 1 else None
    ok = pd == 2 and not any(e0) and not any(e1) and ext2_dim == 1
    if ok:
        reason = "2-regular"
    elif pd != 2:
        reason = f"pd = {pd}"
    elif any(e0) or any(e1):
        reason = "Hom or Ext^1 against the algebra is nonzero"
    else:
        reason = f"Ext^2 has dimension {ext2_dim}"
    return TwoRegularReport(vertex, pd == 2, not any(e0), not any(e1), ext2_dim, support, ok,
                            res if pd == 2 else None, pd, reason)


@dataclass(frozen=True)
class Orbit:
    name: str
    vertices: tuple
    arrows: tuple
    stable: bool


@dataclass
class TranslationQuiver:
    """Q(Γ): one vertex per indecomposable projective.

    A solid arrow ``(i, j, m)`` stands for ``m`` irreducible maps P_i -> P_j,
    i.e. ``m`` arrows ``j -> i`` in the presentation (a map P_i -> P_j is
    left multiplication by a path from j to i).
    """

    algebra: AlgebraBasis
    vertices: tuple
    solid_arrows: list
    dotted_arrows: list
    orbits: list
    reports: list = dc_field(repr=False, default_factory=list)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def orbit_of(self, vertex: int) -> Orbit:
        for o in self.orbits:
            if vertex in o.vertices:
                return o
        raise KeyError(vertex)

    @property
    def stable_orbits(self) -> list[Orbit]:
        return [o for o in self.orbits if o.stable]

    @property
    def dotted_orbits(self) -> list[Orbit]:
        return [o for o in self.orbits if o.arrows]

    def tau(self, vertex: int) -> int | None:
        for i, j in self.dotted_arrows:
            if i == vertex:
                return j
        return None


def _orbit_partition(n: int, dotted: list, names: Sequence[str] | None = None) -> list[Orbit]:
    """Connected components of the dotted-arrow graph.

    Orbits with arrows are lettered A, B, ... by smallest vertex; singletons
    without arrows are named ``[vertex]``.
    """
    names = names or [str(v) for v in range(n)]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in dotted:
        parent[find(i)] = find(j)
    groups: dict = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    comps = sorted(groups.values(), key=min)
    sources = {i for i, _ in dotted}
    targets = {j for _, j in dotted}
    orbits = []
    letters = iter(_orbit_names())
    for comp in comps:
        arrows = tuple(a for a in dotted if a[0] in comp)
        stable = bool(arrows) and all(v in sources and v in targets for v in comp)
        name = next(letters) if arrows else f"[{names[comp[0]]}]"
        orbits.append(Orbit(name, tuple(comp), arrows, stable))
    return orbits


def _orbit_names():
    for c in string.ascii_uppercase:
        yield c
    k = 2
    while True:
        for c in string.ascii_uppercase:
            yield c * k
        k += 1


def translation_quiver(ab: AlgebraBasis, max_deg: int = DEFAULT_MAX_DEG) -> TranslationQuiver:
    n = ab.num_vertices
    mult = Counter()
    for w in ab.normal_words:
        if len(w) == 1:
            mult[(w.target, w.source)] += 1
    solid = sorted((i, j, m) for (i, j), m in mult.items())
    reports = [check_two_regular(ab, v, max_deg) for v in range(n)]
    dotted = [(r.vertex, r.ext2_support_vertex) for r in reports if r.is_two_regular]
    dotted.sort()
    return TranslationQuiver(ab, ab.presentation.vertices, solid, dotted, _orbit_partition(n, dotted, ab.presentation.vertices), reports)


# -------------------------------------------------------------------------
# exact structures


@dataclass
class ExactStructureSpec:
    quiver: TranslationQuiver
    chosen: tuple
    allowed_simples: frozenset = frozenset()
    projective_vertices: tuple = ()
    injective_vertices: tuple = ()
    frobenius: bool = False

    def __post_init__(self):
        tq = self.quiver
        chosen = tuple(sorted(set(self.chosen)))
        for a in chosen:
            if a not in tq.dotted_arrows:
                raise UnknownDottedSpec(f"{a} is not a dotted arrow")
        self.chosen = chosen
        sources = {i for i, _ in chosen}
        targets = {j for _, j in chosen}
        self.allowed_simples = frozenset(sources)
        self.projective_vertices = tuple(v for v in range(tq.num_vertices) if v not in sources)
        self.injective_vertices = tuple(v for v in range(tq.num_vertices) if v not in targets)
        self.frobenius = self.projective_vertices == self.injective_vertices

    @property
    def mask(self) -> int:
        return sum(1 << k for k, a in enumerate(self.quiver.dotted_arrows) if a in self.chosen)

    def is_union_of_stable_orbits(self) -> bool:
        chosen = set(self.chosen)
        for o in self.quiver.dotted_orbits:
            inside = chosen & set(o.arrows)
            if inside and (inside != set(o.arrows) or not o.stable):
                return False
        return True

    def label(self) -> str:
        names = []
        rest = set(self.chosen)
        for o in self.quiver.dotted_orbits:
            if set(o.arrows) <= rest and o.arrows:
                names.append(o.name)
                rest -= set(o.arrows)
        idx = [str(self.quiver.dotted_arrows.index(a)) for a in sorted(rest)]
        return ",".join(names + idx) if names or idx else "split"


def structure(tq: TranslationQuiver, arrows: Sequence) -> ExactStructureSpec:
    return ExactStructureSpec(tq, tuple(arrows))


def split_structure(tq: TranslationQuiver) -> ExactStructureSpec:
    return ExactStructureSpec(tq, ())


def full_structure(tq: TranslationQuiver) -> ExactStructureSpec:
    return ExactStructureSpec(tq, tuple(tq.dotted_arrows))


def count_exact_structures(tq: TranslationQuiver) -> int:
    return 2 ** len(tq.dotted_arrows)


def enumerate_exact_structures(tq: TranslationQuiver) -> Iterator[ExactStructureSpec]:
    """All subsets of dotted arrows, little-endian bitmask order."""
    n = len(tq.dotted_arrows)
    if 2 ** n > MAX_MATERIALIZED:
        raise TooManyStructures(f"2^{n} exact structures; use count_exact_structures")
    for mask in range(2 ** n):
        yield ExactStructureSpec(tq, tuple(a for k, a in enumerate(tq.dotted_arrows) if mask >> k & 1))


def frobenius_structures(tq: TranslationQuiver) -> list[ExactStructureSpec]:
    stable = tq.stable_orbits
    out = []
    for mask in range(2 ** len(stable)):
        arrows = [a for k, o in enumerate(stable) if mask >> k & 1 for a in o.arrows]
        out.append(ExactStructureSpec(tq, tuple(arrows)))
    return out


def parse_dotted_spec(tq: TranslationQuiver, text: str | None) -> ExactStructureSpec:
    """``"A,B"`` (orbit names), ``"0,1,3"`` (arrow indices), ``"all"`` or empty."""
    if text is None or not text.strip() or text.strip() == "split":
        return split_structure(tq)
    if text.strip() == "all":
        return full_structure(tq)
    arrows = []
    names = {o.name: o for o in tq.dotted_orbits}
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in names:
            arrows.extend(names[tok].arrows)
        elif tok.isdigit() and int(tok) < len(tq.dotted_arrows):
            arrows.append(tq.dotted_arrows[int(tok)])
        else:
            raise UnknownDottedSpec(f"unknown orbit or dotted arrow {tok!r}")
    return ExactStructureSpec(tq, tuple(arrows))


# -------------------------------------------------------------------------
# conflations


@dataclass
class ConflationCertificate:
    f: ModuleMap | None
    g: ModuleMap
    cokernel_module: Representation
    factor_multiset: Counter
    verdict: bool
    reason: str
    kernel_module: Representation | None = None
    kernel_projective: bool = True


def is_deflation(spec: ExactStructureSpec, g: ModuleMap) -> ConflationCertificate:
    """g is a deflation iff coker g has all factors among the allowed simples."""
    C, _ = cokernel(g)
    factors = composition_factors(C)
    bad = sorted(v for v in factors if v not in spec.allowed_simples)
    K, inc = kernel(g)
    kproj = is_projective(K)
    names = spec.quiver.vertices
    if bad:
        reason = "cokernel has factors outside the allowed simples: " + ", ".join(names[v] for v in bad)
    elif not kproj:
        reason = "kernel is not projective"
    else:
        reason = "cokernel in Filt of allowed simples; kernel projective"
    return ConflationCertificate(inc, g, C, factors, not bad and kproj, reason, K, kproj)


@dataclass
class ARConflation:
    arrow: tuple
    X: Representation
    Y: Representation
    Z: Representation
    f: ModuleMap
    g: ModuleMap


def ar_conflation(spec: ExactStructureSpec, arrow: tuple, max_deg: int = DEFAULT_MAX_DEG) -> ARConflation:
    """X ↣ Y ↠ Z from the minimal resolution 0 -> X -> Y -> Z -> S_i -> 0."""
    if tuple(arrow) not in spec.chosen:
        raise UnknownDottedSpec(f"{arrow} is not chosen in this structure")
    i, j = arrow
    ab = spec.quiver.algebra
    res = cached_resolution(simple_module_cached(ab, i), max_deg)
    if len(res.terms) != 3 or not res.complete:
        raise AssertionError("a 2-regular simple must have a resolution of length 2")
    X, Y, Z = res.terms[2], res.terms[1], res.terms[0]
    if X.summands != (j,):
        raise AssertionError(f"left term is not P_{j}")
    return ARConflation(tuple(arrow), X, Y, Z, res.differentials[1], res.differentials[0])


def pullback_deflation(spec: ExactStructureSpec, g: ModuleMap, h: ModuleMap):
    """Pullback of a deflation ``g: Y -> Z`` along ``h: W -> Z``.

    ``E = ker(Y ⊕ W -> Z, (y, w) ↦ g(y) - h(w))`` and ``k: E -> W`` the projection.
    """
    if g.target is not h.target:
        raise ValueError("g and h must share their target")
    Y, W = g.source, h.source
    S, (iY, iW), (pY, pW) = direct_sum([Y, W])
    diff = (g @ pY) - (h @ pW)
    E, inc = kernel(diff)
    if not is_projective(E):
        raise AssertionError("pullback of a deflation is not projective")
    k = pW @ inc
    return E, k, is_deflation(spec, k)


def compose_deflations(spec: ExactStructureSpec, g: ModuleMap, k: ModuleMap) -> ConflationCertificate:
    """Certificate for ``g ∘ k`` (``k: X -> Y``, ``g: Y -> Z``).

    Besides the verdict, checks the bookkeeping of the exact sequence
    ker g -> coker k -> coker(gk) -> coker g -> 0: the factors of coker(gk)
    lie between those of coker g and the sum of both cokernels.
    """
    cert = is_deflation(spec, g @ k)
    cg = composition_factors(cokernel(g)[0])
    ck = composition_factors(cokernel(k)[0])
    cgk = cert.factor_multiset
    if not (all(cgk[v] >= c for v, c in cg.items()) and all((cg + ck)[v] >= c for v, c in cgk.items())):
        cert.verdict = False
        cert.reason = "cokernel bookkeeping of the composite failed"
    return cert


def direct_sum_map(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    """``f ⊕ g`` between the direct sums of sources and targets."""
    S, (i1, i2), (p1, p2) = direct_sum([f.source, g.source])
    T, (j1, j2), (q1, q2) = direct_sum([f.target, g.target])
    return (j1 @ f @ p1) + (j2 @ g @ p2)


def random_projective(ab: AlgebraBasis, rng: random.Random, max_summands: int = 2) -> Representation:
    return projective_sum(ab, [rng.randrange(ab.num_vertices) for _ in range(rng.randint(0, max_summands))])


def random_deflation(spec: ExactStructureSpec, rng: random.Random, max_length: int = 3,
                     pad: bool = True) -> ModuleMap:
    """A random deflation of ``spec``.

    The core is P_1 -> P_0 from the minimal resolution of a random module in
    Filt of the allowed simples (absent for the split structure); padding adds
    an identity ``W -> W`` and a zero map ``W' -> 0``, both split.
    """
    ab = spec.quiver.algebra
    allowed = sorted(spec.allowed_simples)
    if allowed:
        M = random_filt_module(ab, allowed, rng.randint(1, max_length), rng=rng)
        res = cached_resolution(M, 3)
        if len(res.differentials):
            g = res.differentials[0]
        else:
            g = zero_map(projective_sum(ab, []), res.terms[0])
    else:
        P = random_projective(ab, rng)
        g = identity_map(P)
    if pad:
        W, W2 = random_projective(ab, rng), random_projective(ab, rng)
        g = direct_sum_map(g, identity_map(W))
        g = direct_sum_map(g, zero_map(W2, projective_sum(ab, [])))
    return g


# -------------------------------------------------------------------------
# rendering


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def to_dot(tq: TranslationQuiver, spec: ExactStructureSpec | None = None) -> str:
    """Graphviz DOT text for Q(Γ); deterministic for identical input."""
    spec = spec or full_structure(tq)
    names = tq.vertices
    proj = set(spec.projective_vertices)
    inj = set(spec.injective_vertices)
    lines = ["digraph Q {", "  rankdir=RL;"]
    for v, nm in enumerate(names):
        attrs = ["shape=doublecircle" if v in proj else "shape=circle"]
        if v in inj:
            attrs.append("style=filled")
            attrs.append("fillcolor=lightgray")
        lines.append(f"  {_quote(nm)} [{', '.join(attrs)}];")
    for i, j, m in tq.solid_arrows:
        label = f', label="{m}"'
        lines.append(f"  {_quote(names[i])} -> {_quote(names[j])} [style=solid{label}];")
    for i, j in spec.chosen:
        lines.append(f"  {_quote(names[i])} -> {_quote(names[j])} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
