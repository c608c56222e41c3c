"""Quotients, subalgebras, pullbacks, and kernel pairs."""

import itertools
import random

import pytest

from mvtk import (
    FiniteIdeal,
    MarkerIdeal,
    all_ideals,
    are_isomorphic,
    carrier_size,
    compose,
    corestrict,
    describe,
    elements,
    enumerate_homs,
    factor_through_quotient,
    find_isomorphism,
    from_initial,
    full_ideal,
    ideal_subalgebra,
    identity,
    image_ideal,
    image_set,
    initial_algebra,
    is_morphism,
    kernel_pair,
    make_chain,
    make_komori,
    mediator_to_pullback,
    product,
    product_with_projections,
    pullback,
    quotient,
    radical,
    same_morphism,
    subalgebra_decode,
    terminal_algebra,
    to_finite,
    to_terminal,
    zero_ideal,
)

CHANG = make_komori(1, 1)


class TestQuotients:
    def test_killing_the_radical_tail_leaves_a_chain(self):
        k = make_komori(2, 1)
        q = quotient(k, MarkerIdeal((("sub", frozenset({0})),)))
        assert describe(q.algebra) == "Chain(2)"
        assert q.projection(((1, (9,)),)) == (1,)
        assert q.projection(((0, (5,)),)) == (0,)

    def test_collapsing_one_product_factor(self):
        prod = product([make_chain(1), make_chain(2)])
        q = quotient(prod, MarkerIdeal(("full", "zero")))
        assert are_isomorphic(q.algebra, make_chain(2))
        assert q.projection((1, 2)) == (2,)

    def test_quotient_by_zero_is_bijective(self):
        prod = product([make_chain(1), make_chain(2)])
        q = quotient(prod, zero_ideal(prod))
        assert q.projection.is_injective() and q.projection.is_surjective()

    def test_quotient_by_full_is_terminal(self):
        q = quotient(CHANG, full_ideal(CHANG))
        assert carrier_size(q.algebra) == 1

    def test_projection_kernel_recovers_the_ideal(self):
        prod = product([make_komori(2, 1), make_chain(2)])
        for ideal in all_ideals(prod):
            q = quotient(prod, ideal)
            assert q.projection.kernel() == ideal
            assert is_morphism(q.projection, mode="sample", count=150).ok

    def test_finite_quotient_by_explicit_index_ideal(self):
        sym = product([make_chain(1), make_chain(2)])
        idx = {e: i for i, e in enumerate(elements(sym))}
        fin = to_finite(sym)
        first_factor = FiniteIdeal(frozenset({idx[(0, 0)], idx[(1, 0)]}))
        q = quotient(fin, first_factor)
        assert carrier_size(q.algebra) == 3
        assert are_isomorphic(q.algebra, make_chain(2))


class TestFactorisation:
    def test_factor_through_quotient(self):
        prod = product([make_chain(1), make_chain(2)])
        q = quotient(prod, MarkerIdeal(("full", "zero")))
        f = quotient(prod, full_ideal(prod)).projection
        g = factor_through_quotient(q.projection, f)
        assert same_morphism(compose(q.projection, g), f)

    def test_factor_requires_kernel_containment(self):
        prod = product([make_chain(1), make_chain(2)])
        big = quotient(prod, MarkerIdeal(("full", "zero"))).projection
        small = quotient(prod, zero_ideal(prod)).projection
        with pytest.raises(ValueError):
            factor_through_quotient(big, small)

    def test_factored_map_kernel(self):
        prod = product([make_chain(1), make_chain(2)])
        q = quotient(prod, MarkerIdeal(("zero", "zero"))).projection
        f = quotient(prod, MarkerIdeal(("zero", "full"))).projection
        d = factor_through_quotient(q, f)
        assert d.kernel().markers == ("zero", "full")

    def test_image_ideal_pushes_markers(self):
        prod = product([make_komori(1, 1), make_chain(2)])
        q = quotient(prod, MarkerIdeal((("sub", frozenset()), "full")))
        img = image_ideal(q.projection,
                          MarkerIdeal((("sub", frozenset({0})), "zero")))
        assert img.markers == (("sub", frozenset({0})),)


class TestSubalgebras:
    def test_radical_subalgebra_of_chang_is_everything(self):
        sub = ideal_subalgebra(CHANG, radical(CHANG))
        assert describe(sub.algebra) == describe(CHANG)
        assert same_morphism(sub.inclusion, identity(CHANG))

    def test_zero_ideal_gives_initial_copy(self):
        sub = ideal_subalgebra(CHANG, zero_ideal(CHANG))
        assert carrier_size(sub.algebra) == 2
        assert sub.inclusion(sub.algebra.zero) == CHANG.zero
        assert sub.inclusion(sub.algebra.one) == CHANG.one

    def test_product_factor_as_subalgebra(self):
        prod = product([make_komori(2, 1), make_chain(2)])
        sub = ideal_subalgebra(prod, MarkerIdeal(("full", "zero")))
        assert describe(sub.algebra) == "Komori(2,1) x Chain(1)"
        assert sub.inclusion(((1, (4,)), 0)) == ((1, (4,)), 0)
        # the two-point second factor lands on the ambient chain endpoints
        top = sub.inclusion(((1, (4,)), 1))
        assert top == ((1, (4,)), 2)
        assert subalgebra_decode(sub.inclusion, top) == ((1, (4,)), 1)

    def test_inclusion_is_injective_morphism(self):
        prod = product([make_komori(2, 1), make_chain(2)])
        for ideal in all_ideals(prod):
            sub = ideal_subalgebra(prod, ideal)
            assert sub.inclusion.is_injective()
            assert is_morphism(sub.inclusion, mode="sample", count=120).ok


class TestHoms:
    def test_chain_hom_counts_follow_divisibility(self):
        for n, m in itertools.product(range(1, 6), repeat=2):
            homs = enumerate_homs(to_finite(make_chain(n)),
                                  to_finite(make_chain(m)))
            expected = 1 if m % n == 0 else 0
            assert len(homs) == expected, (n, m)

    def test_surjective_chain_homs_are_identities(self):
        for n, m in itertools.product(range(1, 5), repeat=2):
            homs = enumerate_homs(to_finite(make_chain(n)),
                                  to_finite(make_chain(m)))
            for h in homs:
                if h.is_surjective():
                    assert n == m

    def test_find_isomorphism_between_shuffled_products(self):
        a = to_finite(product([make_chain(1), make_chain(2)]))
        b = to_finite(product([make_chain(2), make_chain(1)]))
        iso = find_isomorphism(a, b)
        assert iso is not None
        assert iso.is_injective() and iso.is_surjective()
        assert find_isomorphism(a, to_finite(make_chain(5))) is None

    def test_initial_map_exists_everywhere(self):
        for target in [CHANG, product([make_chain(2), make_komori(1, 2)])]:
            m = from_initial(target)
            assert m(m.dom.zero) == target.zero
            assert m(m.dom.one) == target.one
            assert is_morphism(m, mode="sample", count=60).ok


class TestPullbacks:
    def test_pullback_square_commutes(self):
        c2 = to_finite(make_chain(2))
        f = to_terminal(c2)
        pb = pullback(f, f)
        assert carrier_size(pb.algebra) == 9
        assert same_morphism(compose(pb.left, f), compose(pb.right, f))

    def test_mediator_is_unique_diagonal(self):
        c2 = to_finite(make_chain(2))
        f = to_terminal(c2)
        pb = pullback(f, f)
        med = mediator_to_pullback(pb, identity(c2), identity(c2))
        for x in range(c2.size):
            assert pb.left(med(x)) == x
            assert pb.right(med(x)) == x

    def test_mediator_rejects_non_commuting_input(self):
        c1 = to_finite(make_chain(1))
        c2 = to_finite(make_chain(2))
        up = enumerate_homs(c1, c2)[0]
        pb = pullback(to_terminal(c2), to_terminal(c2))
        med = mediator_to_pullback(pb, up, up)
        assert med(0) == pb.pairs.index((0, 0))

    def test_kernel_pair_of_symbolic_quotient_permutes_tails(self):
        k = make_komori(1, 3)
        q = quotient(k, MarkerIdeal((("sub", frozenset({1})),)))
        kp, p1, p2 = kernel_pair(q.projection)
        x = next(e for e in [((0, (5, 7, 9, 11)),)] if kp.contains(e))
        assert p1(x) == ((0, (5, 7, 9)),)
        assert p2(x) == ((0, (5, 11, 9)),)
        assert same_morphism(compose(p1, q.projection),
                             compose(p2, q.projection), mode="sample",
                             count=200)

    def test_kernel_pair_of_injection_is_diagonal(self):
        c2 = to_finite(make_chain(2))
        kp, p1, p2 = kernel_pair(identity(c2))
        assert carrier_size(kp) == 3
        assert same_morphism(p1, p2)


class TestProducts:
    def test_projections_cover(self):
        prod, projs = product_with_projections(
            [make_chain(2), make_komori(1, 1)])
        assert describe(prod) == "Chain(2) x Komori(1,1)"
        x = ((1,), ((0, (3,)),))
        packed = (1, (0, (3,)))
        assert projs[0](packed) == (1,)
        assert projs[1](packed) == ((0, (3,)),)

    def test_image_set_of_finite_surjection(self):
        prod = to_finite(product([make_chain(1), make_chain(1)]))
        q = quotient(prod, FiniteIdeal(frozenset({0, 1})))
        assert image_set(q.projection) == set(range(2))
