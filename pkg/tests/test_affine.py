import random

import pytest
from hypothesis import given, settings, strategies as st

from affgebra.affine import (
    AffgebraError, IsoSearchError, KLViolation, LieAffgebra, SubaffgebraError, affgebra_at,
    compose_homs, find_isomorphism, is_homomorphism, iso_conditions, new_affgebra,
    preserves_bracket, raw_bracket, simplex_lattice, simplicity_report, subaffgebra_check,
    tangent_data, tangent_lie, tangent_lie_of, transport, verify_affine_axioms,
    verify_bracket_axioms,
)
from affgebra.catalog import (
    abelian, action_affgebra, borel, classification_family, heisenberg, sl2, so3,
)
from affgebra.linalg import Field, Matrix, Subspace, random_invertible, vadd, vsub
from affgebra.lie import adjoint, is_gen_der_pair

from helpers import random_affgebra

Q, F3, F5 = Field(), Field(3), Field(5)


def test_construction_examples():
    rng = random.Random(1)
    for n in (1, 2, 3):
        g = abelian(n, F5)
        new_affgebra(g, random_invertible(F5, n, rng), Matrix.zeros(F5, n, n), (1,) * n)
    g = sl2(Q)
    for gamma in (0, 1, -3):
        G = Matrix.scalar(Q, 3, gamma)
        new_affgebra(g, G, G, (1, 2, 3))
    with pytest.raises(KLViolation) as err:
        new_affgebra(g, Matrix.identity(Q, 3), adjoint(g, g.basis()[0]) * 2, (0, 0, 0))
    assert "basis pair" in str(err.value)


def test_bracket_examples():
    A = classification_family("borel", Q, gamma=3, sigma=0)
    assert A.bracket((0, 0), (0, 0)) == A.s
    B = classification_family("borel-e1", Q, gamma=3)
    g = borel(Q)
    for x, y in [((1, 0), (0, 1)), ((2, -1), (5, 7))]:
        want = vadd(vadd(g.bracket(x, y), tuple(3 * t for t in y)), (1, 0))
        assert B.bracket(x, y) == want
    idem = action_affgebra(2, Q, 5)
    for a in [(1, 2), (0, -3)]:
        assert idem.bracket(a, a) == a


def test_action_affgebra_bracket():
    for zeta, expect in [(0, lambda a, b: a), (1, lambda a, b: b)]:
        A = action_affgebra(2, Q, zeta)
        assert A.bracket((1, 2), (3, 5)) == expect((1, 2), (3, 5))
    A = action_affgebra(1, Q, 3)
    assert A.bracket((2,), (5,)) == ((1 - 3) * 2 + 3 * 5,)
    assert verify_affine_axioms(A)
    assert tangent_lie(A, (4,)).is_abelian()


def test_simplex_lattice_size():
    assert sum(1 for _ in simplex_lattice(Q, 9, 3)) == 220


def test_axioms_fail_for_kappa_outside_qc():
    g = sl2(Q)
    e = g.basis()[0]
    kappa = adjoint(g, e)  # [a, kappa a] != 0 for a = f
    br = raw_bracket(g, kappa, kappa, (0, 0, 0))
    rep = verify_bracket_axioms(br, Q, 3)
    assert not rep and rep.check == "jacobi"
    assert rep.mode == "complete"


def test_axioms_witness_replays():
    g = sl2(F5)
    rng = random.Random(3)
    kappa = Matrix(F5, tuple(F5.random_vector(rng, 3) for _ in range(3)))
    br = raw_bracket(g, kappa, Matrix.identity(F5, 3), (1, 0, 0))
    rep = verify_bracket_axioms(br, F5, 3, seed=7)
    assert not rep and rep.seed == 7
    from affgebra.affine import jacobi_residual
    w = rep.witness
    assert jacobi_residual(br, w["a"], w["b"], w["c"]) == w["residual"]


def test_antisymmetry_needs_no_pair_condition():
    rng = random.Random(0)
    g = sl2(F5)
    for _ in range(10):
        k = Matrix(F5, tuple(F5.random_vector(rng, 3) for _ in range(3)))
        l = Matrix(F5, tuple(F5.random_vector(rng, 3) for _ in range(3)))
        br = raw_bracket(g, k, l, F5.random_vector(rng, 3))
        from affgebra.affine import antisymmetry_residual
        for _ in range(10):
            a, b = F5.random_vector(rng, 3), F5.random_vector(rng, 3)
            assert not any(antisymmetry_residual(br, a, b))


def test_tangent_examples():
    A = classification_family("sl2-h", Q, gamma=3, sigma=2)
    assert tangent_data(A, (0, 0, 0)) == (A.kappa, A.lam, A.s)
    assert tangent_lie(A, (0, 0, 0)) == A.fibre
    k, l, s = tangent_data(A, (1, -2, 5))
    assert k == Matrix.scalar(Q, 3, 3)


def test_tangent_one_dim_transfer_rule():
    # rebasing at o is the isomorphism Psi = id, q = -o, so xi = -1 for o = e
    for kappa, lam, sigma in [(2, 3, 1), (1, 4, 1), (0, 0, 2)]:
        A = LieAffgebra(abelian(1, F5), Matrix(F5, ((kappa,),)), Matrix(F5, ((lam,),)), (sigma,))
        k, l, s = tangent_data(A, (1,))
        xi, psi = -1, 1
        assert s == (F5(psi * (sigma + (1 - kappa) * xi)),)
        assert (k, l) == (A.kappa, A.lam)


def test_tangent_lie_isomorphic_to_fibre():
    rng = random.Random(5)
    for g in (sl2(F5), borel(F5), heisenberg(F5)):
        A = random_affgebra(g, rng)
        o = F5.random_vector(rng, g.dim)
        # the shift a -> a - o identifies the coordinates, so the structure constants agree
        assert tangent_lie(A, o).structure == g.structure


def test_homomorphism_examples():
    rng = random.Random(2)
    A = random_affgebra(sl2(F5), rng)
    I = Matrix.identity(F5, 3)
    assert is_homomorphism(A, A, I, (0, 0, 0))
    # constant map psi = 0 onto a point p: needs 0 = s' - p + kappa'(p)
    B = LieAffgebra(abelian(1, F5), Matrix(F5, ((3,),)), Matrix(F5, ((1,),)), (2,))
    Z = Matrix.zeros(F5, 1, 3)
    for p in range(5):
        fixed = (F5(2) - p + 3 * p) == 0
        assert is_homomorphism(A, B, Z, (p,)) == fixed
        assert preserves_bracket(A, B, Z, (p,)) == fixed


def test_one_dim_hom_rule():
    # (psi, q = xi) between one-dim affgebras carries sigma to psi (sigma + (1 - kappa) xi)
    for kappa, lam, sigma, psi, xi in [(2, 3, 1, 4, 2), (1, 0, 3, 2, 1), (4, 4, 0, 1, 3)]:
        A = LieAffgebra(abelian(1, F5), Matrix(F5, ((kappa,),)), Matrix(F5, ((lam,),)), (sigma,))
        s2 = F5(psi * (sigma + (1 - kappa) * xi))
        B = LieAffgebra(abelian(1, F5), A.kappa, A.lam, (s2,))
        P = Matrix(F5, ((psi,),))
        assert iso_conditions(A, B, P, (xi,))
        assert is_homomorphism(A, B, P, (F5(psi * xi),))


def test_iso_conditions_examples():
    A = classification_family("sl2-h", Q, gamma=2, sigma=1)
    assert iso_conditions(A, A, Matrix.identity(Q, 3), (0, 0, 0))
    from affgebra.catalog import sl2_unipotent
    Psi = sl2_unipotent(Q, 3)
    B = LieAffgebra(A.fibre, A.kappa, A.lam, Psi.apply(A.s))
    assert iso_conditions(A, B, Psi, (0, 0, 0))
    C = classification_family("sl2-h", Q, gamma=5, sigma=1)
    assert not iso_conditions(A, C, Psi, (0, 0, 0))
    with pytest.raises(AffgebraError):
        iso_conditions(A, A, Matrix.zeros(Q, 3, 3), (0, 0, 0))


def test_gamma_separates_on_simple_fibre_dim_two():
    for g1, g2 in [(1, 2), (0, 3)]:
        A = classification_family("borel", F5, gamma=g1, sigma=1)
        B = classification_family("borel", F5, gamma=g2, sigma=1)
        r = find_isomorphism(A, B)
        assert r.mode == "exhaustive" and not r.found


def test_find_isomorphism_examples():
    A = classification_family("one-dim", F5, kappa=2, **{"lambda": 3})
    r = find_isomorphism(A, A)
    assert r.found and r.witness == (Matrix.identity(F5, 1), (0,))
    B = classification_family("one-dim-unit", F5, **{"lambda": 3})
    r = find_isomorphism(A, B, exhaustive=True)
    assert r.mode == "exhaustive" and not r.found and r.is_proof
    with pytest.raises(IsoSearchError):
        find_isomorphism(classification_family("one-dim", Q), classification_family("one-dim", Q),
                         exhaustive=True)
    with pytest.raises(IsoSearchError):
        find_isomorphism(classification_family("sl2-e", F5), classification_family("sl2-f", F5),
                         exhaustive=True)


def test_find_isomorphism_recovers_random_twists():
    rng = random.Random(11)
    for g in (abelian(2, F3), borel(F3)):
        for _ in range(3):
            A = random_affgebra(g, rng)
            Psi = random_invertible(F3, 2, rng)
            q = F3.random_vector(rng, 2)
            B = transport(A, Psi, q)
            assert iso_conditions(A, B, Psi, q)
            if B.fibre.structure == A.fibre.structure:
                r = find_isomorphism(A, B)
                assert r.found and iso_conditions(A, B, *r.witness)


def test_sl2_e_and_f_are_isomorphic():
    from affgebra.catalog import sl2_swap
    for F in (Q, F5):
        A = classification_family("sl2-e", F, gamma=2)
        B = classification_family("sl2-f", F, gamma=2)
        assert iso_conditions(A, B, sl2_swap(F), (0, 0, 0))


def test_subaffgebra_examples():
    rng = random.Random(4)
    A = random_affgebra(heisenberg(F5), rng)
    full = Subspace.full(F5, 3)
    sub = subaffgebra_check(A, (0, 0, 0), full)
    assert sub.fibre.structure == A.fibre.structure
    assert (sub.kappa, sub.lam, sub.s) == (A.kappa, A.lam, A.s)
    B = LieAffgebra(abelian(2, Q), Matrix(Q, ((0, 0), (1, 0))), Matrix.zeros(Q, 2, 2), (0, 0))
    with pytest.raises(SubaffgebraError) as err:
        subaffgebra_check(B, (0, 0), Subspace.span(Q, 2, [(1, 0)]))
    assert err.value.condition == "b"
    C = classification_family("sl2-e", Q, gamma=1)
    with pytest.raises(SubaffgebraError) as err:
        subaffgebra_check(C, (0, 0, 0), Subspace.span(Q, 3, [(0, 1, 0)]))
    assert err.value.condition == "a"
    with pytest.raises(SubaffgebraError) as err:
        subaffgebra_check(C, (0, 0, 0), Subspace.span(Q, 3, [(1, 0, 0), (0, 0, 1)]))
    assert err.value.condition == "subalgebra"


def test_subaffgebra_embeds_bracket():
    from affgebra.affine import coset_embedding
    A = classification_family("borel", Q, gamma=2, sigma=0)
    a = (5, 0)
    h = Subspace.span(Q, 2, [(1, 0)])
    sub = subaffgebra_check(A, a, h)
    emb = coset_embedding(a, h)
    for u in [(0,), (1,), (-3,)]:
        for v in [(2,), (7,)]:
            assert emb(sub.bracket(u, v)) == A.bracket(emb(u), emb(v))


def test_simplicity_examples():
    assert simplicity_report(classification_family("sl2-e", Q)).affgebra_simple
    r = simplicity_report(action_affgebra(2, Q, 1))
    assert not r.fibre_simple and r.affgebra_simple is None
    r = simplicity_report(classification_family("borel", Q))
    assert not r.fibre_simple and r.proper_ideal == Subspace.span(Q, 2, [(1, 0)])
    r = simplicity_report(classification_family("so3", F5, gamma=1, sigma=1))
    assert r.fibre_simple and r.mode == "exhaustive"


FIBRES = [abelian(1, F5), abelian(2, F5), abelian(3, F5), borel(F5), sl2(F5), so3(F5),
          heisenberg(F5)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FIBRES), st.integers(0, 10 ** 6))
def test_constructor_soundness(g, seed):
    A = random_affgebra(g, random.Random(seed))
    rep = verify_affine_axioms(A, 25, seed)
    assert rep and rep.mode == "complete"


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FIBRES), st.integers(0, 10 ** 6))
def test_round_trip(g, seed):
    rng = random.Random(seed)
    A = random_affgebra(g, rng)
    assert tangent_data(A, (0,) * g.dim) == (A.kappa, A.lam, A.s)
    o = F5.random_vector(rng, g.dim)
    At = affgebra_at(A, o)
    assert iso_conditions(A, At, Matrix.identity(F5, g.dim), tuple(-x for x in o))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([borel(F5), sl2(F5), so3(F5), heisenberg(F5)]), st.integers(0, 10 ** 6))
def test_necessity(g, seed):
    rng = random.Random(seed)
    n = g.dim
    k = Matrix(F5, tuple(F5.random_vector(rng, n) for _ in range(n)))
    l = Matrix(F5, tuple(F5.random_vector(rng, n) for _ in range(n)))
    rep = verify_bracket_axioms(raw_bracket(g, k, l, F5.random_vector(rng, n)), F5, n)
    assert bool(rep) == is_gen_der_pair(g, k, l)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([abelian(2, F5), borel(F5), heisenberg(F5)]), st.integers(0, 10 ** 6))
def test_hom_composition(g, seed):
    rng = random.Random(seed)
    A = random_affgebra(g, rng)
    h1 = (random_invertible(F5, g.dim, rng), F5.random_vector(rng, g.dim))
    B = transport(A, *h1)
    h2 = (random_invertible(F5, g.dim, rng), F5.random_vector(rng, g.dim))
    C = transport(B, *h2)
    # iso (Psi, q) is the hom (Psi, Psi q)
    f1 = (h1[0], h1[0].apply(h1[1]))
    f2 = (h2[0], h2[0].apply(h2[1]))
    assert is_homomorphism(A, B, *f1) and is_homomorphism(B, C, *f2)
    comp = compose_homs(f1, f2)
    assert is_homomorphism(A, C, *comp)
    assert preserves_bracket(A, C, *comp)


def test_raw_bracket_formula():
    g = borel(Q)
    k, l = Matrix(Q, ((1, 2), (3, 4))), Matrix(Q, ((0, 1), (1, 0)))
    br = raw_bracket(g, k, l, (5, 6))
    a, b = (1, 2), (3, -1)
    want = vadd(vadd(vadd(g.bracket(a, b), k.apply(a)), l.apply(vsub(b, a))), (5, 6))
    assert br(a, b) == want


def test_tangent_lie_black_box():
    g = sl2(F3)
    A = LieAffgebra(g, Matrix.identity(F3, 3), Matrix.identity(F3, 3), (1, 2, 0))
    assert tangent_lie_of(A.bracket, F3, 3, (2, 2, 1)).structure == g.structure
