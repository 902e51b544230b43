"""Grothendieck groups of exact structures on proj Γ.

K₀ is the free group on the indecomposable projectives modulo the AR
relations [X] - [Y] + [Z], one per chosen dotted arrow.  ``verify_ex_equals_ar``
samples further conflations and checks that their relations already lie in
the AR lattice.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .exactlin import IntegerMatrix, lattice_membership, smith_normal_form
from .exstruct import ExactStructureSpec, ar_conflation
from .homology import minimal_resolution
from .repmod import random_filt_module


def _multiplicities(n: int, summands) -> list[int]:
    c = Counter(summands)
    return [c[v] for v in range(n)]


def conflation_vector(n: int, X, Y, Z) -> list[int]:
    """[X] - [Y] + [Z] over the vertex basis, from summand lists."""
    x, y, z = (_multiplicities(n, s) for s in (X, Y, Z))
    return [a - b + c for a, b, c in zip(x, y, z)]


def ar_relation_vector(spec: ExactStructureSpec, arrow) -> list[int]:
    conf = ar_conflation(spec, arrow)
    n = spec.quiver.num_vertices
    return conflation_vector(n, conf.X.summands, conf.Y.summands, conf.Z.summands)


@dataclass
class GrothendieckReport:
    spec: ExactStructureSpec
    ar_matrix: IntegerMatrix
    free_rank: int
    torsion: list
    invariant_factors: list = dc_field(default_factory=list)

    def group_text(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def k0_group(spec: ExactStructureSpec) -> GrothendieckReport:
    n = spec.quiver.num_vertices
    cols = [ar_relation_vector(spec, a) for a in spec.chosen]
    A = IntegerMatrix.from_columns(cols, n)
    factors, _, _ = smith_normal_form(A)
    # second elimination order as a cross-check: the transpose has the same factors
    tfactors, _, _ = smith_normal_form(A.transpose())
    if [d for d in factors if d] != [d for d in tfactors if d]:
        raise AssertionError("Smith normal form disagrees with its transpose")
    nonzero = [d for d in factors if d]
    return GrothendieckReport(spec, A, n - len(nonzero), [d for d in nonzero if d > 1], factors)


@dataclass
class ExArReport:
    spec: ExactStructureSpec
    samples: int
    passed: int
    vectors: list
    failures: list

    @property
    def ok(self) -> bool:
        return self.passed == self.samples


def sample_conflation_vector(spec: ExactStructureSpec, rng: random.Random, max_length: int = 4,
                             pad: bool = True) -> tuple[list[int], object]:
    """Relation vector of a random conflation with cokernel defect in Filt S.

    The conflation is 0 -> X -> Y -> Z -> M -> 0 for a random M in Filt S,
    optionally padded by split summands W (X⊕W -> Y⊕W⊕W' -> Z⊕W').
    """
    ab = spec.quiver.algebra
    n = ab.num_vertices
    allowed = sorted(spec.allowed_simples)
    if not allowed:
        return [0] * n, None
    M = random_filt_module(ab, allowed, rng.randint(1, max_length), rng=rng)
    res = minimal_resolution(M, 3)
    if not res.complete or len(res.terms) > 3:
        raise AssertionError("a module in Filt S must have projective dimension at most 2")
    terms = [P.summands for P in res.terms] + [()] * (3 - len(res.terms))
    Z, Y, X = terms
    if pad:
        w1 = tuple(rng.randrange(n) for _ in range(rng.randint(0, 2)))
        w2 = tuple(rng.randrange(n) for _ in range(rng.randint(0, 2)))
        X, Y, Z = X + w1, Y + w1 + w2, Z + w2
    return conflation_vector(n, X, Y, Z), M


def verify_ex_equals_ar(spec: ExactStructureSpec, samples: int = 50, seed: int = 0,
                        max_length: int = 4, report: GrothendieckReport | None = None) -> ExArReport:
    if samples < 1:
        raise ValueError("samples must be positive")
    report = report or k0_group(spec)
    rng = random.Random(seed)
    passed, vectors, failures = 0, [], []
    for _ in range(samples):
        v, _ = sample_conflation_vector(spec, rng, max_length)
        vectors.append(v)
        if lattice_membership(report.ar_matrix, v):
            passed += 1
        else:
            failures.append(v)
    return ExArReport(spec, samples, passed, vectors, failures)
