import random

import pytest

from exactcat.exactlin import Matrix
from exactcat.repmod import (
    LEFT,
    RIGHT,
    NotAModuleMap,
    RelationViolation,
    Representation,
    as_opposite,
    cokernel,
    composition_factors,
    direct_sum,
    gamma_matrix,
    generator_images,
    hom_space,
    identity_map,
    image,
    is_projective,
    kernel,
    map_from_gamma,
    projective_cover,
    projective_module,
    projective_sum,
    radical,
    radical_layers,
    random_filt_module,
    random_map,
    simple_module,
    top_multiplicities,
    zero_map,
)

from conftest import load_algebra

NAMES = ["aus2", "a2", "ex1"]


def test_aus2_projectives_and_simples(aus2):
    Pu, Pv = projective_module(aus2, 0), projective_module(aus2, 1)
    # e_uΓ = <e_u, a, ab>, e_vΓ = <e_v, b>
    assert Pu.dims == (2, 1) and Pv.dims == (1, 1)
    assert Pu.summands == (0,)
    assert top_multiplicities(Pu) == [1, 0]
    assert radical_layers(Pu) == [[1, 0], [0, 1], [1, 0]]
    Qu = projective_module(aus2, 0, LEFT)  # Γe_u = <e_u, ab, b>
    assert Qu.dims == (2, 1)
    S = simple_module(aus2, 1)
    assert S.dims == (0, 1) and not is_projective(S)


def test_relation_violation(aus2):
    f = aus2.field
    one = Matrix.from_rows(f, [[1]])
    # a and b both identity on k ⊕ k would give b*a = 1 != 0
    with pytest.raises(RelationViolation):
        Representation(aus2, (1, 1), (one, one))


def test_not_a_module_map(aus2):
    Pu = projective_module(aus2, 0)
    S = simple_module(aus2, 1)
    bad = [Matrix.zeros(aus2.field, 0, 2), Matrix.from_rows(aus2.field, [[1]])]
    # (P_u)_v = span{a} is hit by the arrow a from (P_u)_u, but S_v is zero at u
    with pytest.raises(NotAModuleMap):
        from exactcat.repmod import ModuleMap

        ModuleMap(Pu, S, bad)


@pytest.mark.parametrize("name", NAMES)
def test_projectives_match_algebra(name):
    ab = load_algebra(name)
    for v in range(ab.num_vertices):
        P = projective_module(ab, v)
        assert P.dim == len(ab.words_from(v))
        assert is_projective(P)
        L = projective_module(ab, v, LEFT)
        assert L.dim == sum(1 for w in ab.normal_words if w.target == v)


@pytest.mark.parametrize("name", NAMES)
def test_hom_between_projectives_is_e_gamma_e(name):
    ab = load_algebra(name)
    dims = ab.vertex_pair_dimensions()
    n = ab.num_vertices
    for i in range(n):
        for j in range(n):
            # Hom(P_i, P_j) = e_j Γ e_i
            assert len(hom_space(projective_module(ab, i), projective_module(ab, j))) == dims.get((j, i), 0)


@pytest.mark.parametrize("name", NAMES)
def test_yoneda(name):
    ab = load_algebra(name)
    rng = random.Random(5)
    M = random_filt_module(ab, range(ab.num_vertices), 4, rng=rng)
    for v in range(ab.num_vertices):
        assert len(hom_space(projective_module(ab, v), M)) == M.dims[v]


def test_gamma_round_trip(ex1):
    rng = random.Random(2)
    P = projective_sum(ex1, [0, 3, 3])
    Q = projective_sum(ex1, [1, 7])
    for _ in range(5):
        f = random_map(P, Q, rng)
        g = map_from_gamma(ex1, P, Q, gamma_matrix(f))
        assert all(a == b for a, b in zip(f.blocks, g.blocks))
        assert generator_images(f) == generator_images(g)


def test_kernel_image_cokernel(ex1):
    rng = random.Random(9)
    P = projective_sum(ex1, [2, 5])
    Q = projective_sum(ex1, [0, 1])
    f = random_map(P, Q, rng)
    K, inc = kernel(f)
    I, _ = image(f)
    C, proj = cokernel(f)
    assert (f @ inc).is_zero() and inc.is_injective()
    assert K.dim + I.dim == P.dim
    assert I.dim + C.dim == Q.dim
    assert (proj @ f).is_zero() and proj.is_surjective()


def test_direct_sum_identities(aus2):
    M = [projective_module(aus2, 0), simple_module(aus2, 1)]
    S, inj, proj = direct_sum(M)
    assert S.dims == (2, 2)
    for k in range(2):
        for l in range(2):
            comp = proj[l] @ inj[k]
            assert comp.is_zero() == (k != l)
    total = (inj[0] @ proj[0]) + (inj[1] @ proj[1])
    assert all(a == b for a, b in zip(total.blocks, identity_map(S).blocks))


@pytest.mark.parametrize("name", NAMES)
def test_projective_cover_is_minimal(name):
    ab = load_algebra(name)
    rng = random.Random(13)
    for _ in range(5):
        M = random_filt_module(ab, range(ab.num_vertices), 3, rng=rng)
        P, epi = projective_cover(M)
        assert epi.is_surjective()
        assert sorted(P.summands) == sorted(v for v, m in enumerate(top_multiplicities(M)) for _ in range(m))


def test_left_cover_via_opposite(aus2):
    S = simple_module(aus2, 0, LEFT)
    P, epi = projective_cover(S)
    assert P.side == LEFT and P.dims == projective_module(aus2, 0, LEFT).dims
    assert epi.is_surjective()
    assert as_opposite(as_opposite(S)).side == LEFT


def test_random_filt_module_factors(ex1):
    for seed in range(10):
        M = random_filt_module(ex1, [0, 3, 7], 4, seed=seed)
        assert M.dim == 4
        assert set(composition_factors(M)) <= {0, 3, 7}
        layers = radical_layers(M)
        assert [sum(col) for col in zip(*layers)] == list(M.dims)


def test_radical_of_simple_is_zero(aus2):
    R, inc = radical(simple_module(aus2, 0))
    assert R.dim == 0
    assert zero_map(R, R).is_zero()
