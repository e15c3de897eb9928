"""Permutation engine: construction, classes, centralizers, normalizers,
Sylow machinery, derived series, parsing.  The heavy lifting is oracled by
plain brute force over element sets, which never touches the stabilizer
chain."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pickylab.errors import InvalidArgument, ParseError
from pickylab.permgroup import (
    Perm,
    PermGroup,
    centralizer,
    class_index_of,
    conjugacy_classes,
    construct,
    derived_length,
    derived_series,
    is_ti_sylow,
    named_group,
    normal_closure,
    normalizer,
    p_elements,
    parse_generator_text,
    parse_perm,
    sylow_count_containing,
    sylow_data,
    sylow_subgroup,
)


def brute_closure(gens, degree):
    """All products of the generators, by saturation over raw tuples."""
    elems = {tuple(range(degree))}
    frontier = [tuple(range(degree))]
    gens = [g.images for g in gens]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                prod = tuple(g[i] for i in e)
                if prod not in elems:
                    elems.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return elems


class TestPerm:
    def test_parse_and_format(self):
        x = parse_perm("(1,2,3)(4,5)")
        assert x.cycle_string() == "(1,2,3)(4,5)"
        assert x.order() == 6
        assert x.cycle_type() == (3, 2)
        assert x.cycle_type(include_fixed=True) == (3, 2)
        assert parse_perm("()", 3).is_identity()

    def test_parse_errors(self):
        for bad in ["(1,2", "1,2)", "(0,1)", "(1,1,2)", "xyz"]:
            with pytest.raises(ParseError):
                parse_perm(bad)

    def test_composition_convention(self):
        a = parse_perm("(1,2)", 3)
        b = parse_perm("(2,3)", 3)
        # apply a then b
        assert (a * b).cycle_string() == "(1,3,2)"
        assert (b * a).cycle_string() == "(1,2,3)"

    def test_conjugation(self):
        x = parse_perm("(1,2)", 4)
        g = parse_perm("(1,3)(2,4)", 4)
        assert x.conj(g).cycle_string() == "(3,4)"

    @given(st.permutations(list(range(6))))
    @settings(max_examples=50, deadline=None)
    def test_roundtrip_and_inverse(self, images):
        x = Perm(tuple(images))
        assert parse_perm(x.cycle_string(), 6) == x
        assert (x * x.inverse()).is_identity()
        assert x ** x.order() == Perm.identity(6)


class TestConstruction:
    def test_s3_by_exhaustive_products(self):
        gens = [parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)]
        G = construct(gens)
        assert G.order == len(brute_closure(gens, 3)) == 6

    def test_trivial_group(self):
        assert PermGroup([], 4).order == 1

    def test_dihedral_by_exhaustive_closure(self):
        gens = [parse_perm("(1,2,3,4)"), parse_perm("(1,3)", 4)]
        G = construct(gens)
        assert G.order == len(brute_closure(gens, 4)) == 8

    @given(st.lists(st.permutations(list(range(5))), min_size=1, max_size=2))
    @settings(max_examples=40, deadline=None)
    def test_order_matches_brute_closure(self, images_list):
        gens = [Perm(tuple(im)) for im in images_list]
        G = construct(gens, 5)
        assert G.order == len(brute_closure(gens, 5))

    def test_membership(self):
        S4 = named_group("S:4")
        A4 = named_group("A:4")
        assert parse_perm("(1,2,3)", 4) in A4
        assert parse_perm("(1,2)", 4) not in A4
        assert A4.is_subgroup_of(S4)
        assert not S4.is_subgroup_of(A4)

    def test_mixed_degrees_rejected(self):
        with pytest.raises(InvalidArgument):
            PermGroup([parse_perm("(1,2)"), parse_perm("(1,2,3)")])


class TestNamedGroups:
    @pytest.mark.parametrize(
        "source,order",
        [
            ("S:4", 24),
            ("S:7", 5040),
            ("A:4", 12),
            ("A:5", 60),
            ("C:6", 6),
            ("C:1", 1),
            ("D:8", 8),
            ("D:16", 16),
            ("Q:8", 8),
            ("wr:S:3~C:2", 72),
            ("wr:S:4~C:2", 1152),
        ],
    )
    def test_orders(self, source, order):
        assert named_group(source).order == order

    def test_quaternion_structure(self):
        Q8 = named_group("Q:8")
        orders = sorted(x.order() for x in Q8.elements())
        assert orders == [1, 2, 4, 4, 4, 4, 4, 4]

    def test_unknown_constructor(self):
        with pytest.raises(ParseError):
            named_group("X:5")

    def test_generator_file_parsing(self):
        text = """
        # a comment
        (1,2,3,4,5,6,7)

        (2,3,5)(4,7,6)  # trailing comment
        """
        G = parse_generator_text(text)
        assert G.order == 21
        with pytest.raises(ParseError):
            parse_generator_text("# only comments\n")


class TestConjugacyClasses:
    def brute_classes(self, G):
        elems = [x.images for x in G.elements()]
        gens = [g.images for g in G.generators]
        seen, classes = set(), []
        for t in sorted(elems):
            if t in seen:
                continue
            orbit = {t}
            queue = [t]
            while queue:
                y = queue.pop()
                # conjugation via the Perm API, independent of the engine internals
                for g in G.generators:
                    z = (g.inverse() * Perm(y) * g).images
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            seen |= orbit
            classes.append(orbit)
        return classes

    def test_s3_classes(self):
        S3 = named_group("S:3")
        cls = conjugacy_classes(S3)
        assert [(c.element_order, c.size) for c in cls] == [(1, 1), (2, 3), (3, 2)]

    def test_s4_class_sizes(self):
        cls = conjugacy_classes(named_group("S:4"))
        assert sorted(c.size for c in cls) == [1, 3, 6, 6, 8]
        assert sum(c.size for c in cls) == 24

    def test_trivial_group_single_class(self):
        assert len(conjugacy_classes(PermGroup([], 4))) == 1

    def test_against_brute_force(self):
        for name in ["S:4", "A:4", "Q:8", "D:12"]:
            G = named_group(name)
            engine = conjugacy_classes(G)
            brute = self.brute_classes(G)
            assert sorted(len(o) for o in brute) == sorted(c.size for c in engine)
            # representatives are the lexicographic minima of their classes
            for c in engine:
                orbit = next(o for o in brute if c.representative.images in o)
                assert c.representative.images == min(orbit)

    def test_class_equation(self, small_catalog_groups):
        for label, (G, _) in small_catalog_groups.items():
            cls = conjugacy_classes(G)
            assert sum(c.size for c in cls) == G.order
            for c in cls[:4]:
                C = centralizer(G, c.representative)
                assert c.size * C.order == G.order

    def test_class_index_of_rejects_outsiders(self):
        with pytest.raises(InvalidArgument):
            class_index_of(named_group("A:4"), parse_perm("(1,2)", 4))


class TestCentralizerNormalizer:
    def test_centralizer_of_4_cycle(self):
        S4 = named_group("S:4")
        C = centralizer(S4, parse_perm("(1,2,3,4)", 4))
        assert C.order == 4 and C.is_abelian()

    def test_brute_force_centralizer_agreement(self):
        for name in ["S:4", "D:12", "Q:8"]:
            G = named_group(name)
            for c in conjugacy_classes(G):
                x = c.representative
                C = centralizer(G, x)
                brute = [g for g in G.elements() if (g * x).images == (x * g).images]
                assert C.order == len(brute)
                assert all(Perm(b.images) in C for b in brute)

    def test_normalizer_of_sylow_in_s4(self):
        S4 = named_group("S:4")
        D8 = construct([parse_perm("(1,2,3,4)"), parse_perm("(1,3)", 4)])
        assert normalizer(S4, D8).same_group(D8)
        assert normalizer(S4, S4).same_group(S4)

    def test_brute_force_normalizer_agreement(self):
        S4 = named_group("S:4")
        subs = [
            construct([parse_perm("(1,2)", 4)]),
            construct([parse_perm("(1,2,3)", 4)]),
            construct([parse_perm("(1,2)(3,4)", 4), parse_perm("(1,3)(2,4)", 4)]),
        ]
        for H in subs:
            N = normalizer(S4, H)
            brute = [
                g for g in S4.elements() if H.conjugate_subgroup(g).same_group(H)
            ]
            assert N.order == len(brute)

    def test_normalizer_requires_subgroup(self):
        with pytest.raises(InvalidArgument):
            normalizer(named_group("A:4"), construct([parse_perm("(1,2)", 4)]))


class TestSylow:
    def test_orders(self):
        assert sylow_subgroup(named_group("S:4"), 2).order == 8
        assert sylow_subgroup(named_group("S:3"), 3).order == 3
        assert sylow_subgroup(named_group("S:3"), 5).order == 1

    def test_sylow_invariants(self, small_catalog_groups):
        from pickylab.exactnum import p_adic_valuation, prime_factors

        for label, (G, primes) in small_catalog_groups.items():
            for p in primes:
                data = sylow_data(G, p)
                assert data.subgroup.order == p ** p_adic_valuation(G.order, p)
                assert data.count % p == 1
                assert data.count * data.normalizer.order == G.order
                assert data.subgroup.is_subgroup_of(data.normalizer)

    def test_count_containing(self):
        S4 = named_group("S:4")
        assert sylow_count_containing(S4, 2, parse_perm("(1,2,3,4)", 4)) == 1
        assert sylow_count_containing(S4, 2, parse_perm("(1,2)(3,4)", 4)) == 3
        assert sylow_count_containing(S4, 2, Perm.identity(4)) == 3
        with pytest.raises(InvalidArgument):
            sylow_count_containing(S4, 2, parse_perm("(1,2,3)", 4))

    def test_p_elements(self):
        S3 = named_group("S:3")
        twos = sorted(x.cycle_string() for x in p_elements(S3, 2))
        assert twos == ["()", "(1,2)", "(1,3)", "(2,3)"]
        threes = sorted(x.cycle_string() for x in p_elements(S3, 3))
        assert threes == ["()", "(1,2,3)", "(1,3,2)"]
        assert [x.cycle_string() for x in p_elements(PermGroup([], 2), 3)] == ["()"]
        # each p-element exactly once, and Sylow covering
        S4 = named_group("S:4")
        elems = list(p_elements(S4, 2))
        assert len(elems) == len({e.images for e in elems})
        for x in elems:
            assert sylow_count_containing(S4, 2, x) >= 1

    def test_is_ti(self):
        assert is_ti_sylow(named_group("S:3"), 3)
        assert not is_ti_sylow(named_group("S:4"), 2)
        assert is_ti_sylow(named_group("Q:8"), 2)  # normal Sylow
        assert is_ti_sylow(named_group("A:4"), 3)


class TestDerivedSeries:
    def test_abelian(self):
        assert derived_length(named_group("C:6")) == 1

    def test_s4(self):
        series = derived_series(named_group("S:4"))
        assert [H.order for H in series] == [24, 12, 4, 1]
        assert derived_length(named_group("S:4")) == 3

    def test_s5_not_solvable(self):
        S5 = named_group("S:5")
        assert derived_length(S5) is None
        series = derived_series(S5)
        assert series[-1].order == 60  # stabilizes at the alternating group

    def test_normal_closure(self):
        A4 = named_group("A:4")
        V = normal_closure(A4, [parse_perm("(1,2)(3,4)", 4)])
        assert V.order == 4
