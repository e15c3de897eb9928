"""Subnormality, subnormalizers, picky elements, covering, chain lengths.

The brute-force oracles here work purely with element sets (saturation
closures), never with stabilizer chains, so they are independent of the
engine they check."""

import pytest

from pickylab.config import EngineConfig
from pickylab.errors import InvalidArgument, ScaleExceeded
from pickylab.permgroup import (
    Perm,
    PermGroup,
    conjugacy_classes,
    construct,
    named_group,
    normalizer,
    parse_perm,
    sylow_data,
)
from pickylab.subnorm import (
    chain_length,
    covering_analysis,
    is_subnormal,
    p_element_class_representatives,
    picky_class_representatives,
    picky_report,
    subnormalizer_set,
    subnormalizer_subgroup,
)

# ----------------------------------------------------------------------
# Set-based oracles.

def set_closure(seed, degree):
    """Subgroup generated by the seed tuples, as a set of image tuples."""
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    seed = list(seed)
    while frontier:
        nxt = []
        for e in frontier:
            for g in seed:
                prod = tuple(g[i] for i in e)
                if prod not in elems:
                    elems.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return frozenset(elems)


def set_normal_closure(group_set, seeds, degree):
    """Normal closure of <seeds> inside the subgroup given as a set."""

    def inv(p):
        out = [0] * len(p)
        for i, j in enumerate(p):
            out[j] = i
        return tuple(out)

    gens = set(seeds)
    while True:
        new = set(gens)
        for s in list(gens):
            for k in group_set:
                ki = inv(k)
                conj = tuple(k[s[ki[i]]] for i in range(degree))
                new.add(conj)
        closed = set_closure(new, degree)
        if closed == set_closure(gens, degree):
            return closed
        gens = closed


def brute_is_subnormal(h_seed, k_set, degree):
    """Descending normal-closure series computed with raw element sets."""
    h_set = set_closure(h_seed, degree)
    cur = k_set
    while True:
        nxt = set_normal_closure(cur, h_seed, degree)
        if nxt == h_set:
            return True
        if nxt == cur:
            return False
        cur = nxt


def brute_subnormalizer_set(G, x):
    degree = G.degree
    out = []
    for g in G.elements():
        k_set = set_closure({x.images, g.images}, degree)
        if brute_is_subnormal({x.images}, k_set, degree):
            out.append(g)
    return out


# ----------------------------------------------------------------------


class TestIsSubnormal:
    def test_normal_subgroup(self):
        A4 = named_group("A:4")
        V = construct([parse_perm("(1,2)(3,4)", 4), parse_perm("(1,3)(2,4)", 4)])
        assert is_subnormal(V, A4)

    def test_two_step_chain(self):
        A4 = named_group("A:4")
        H = construct([parse_perm("(1,2)(3,4)", 4)])
        assert is_subnormal(H, A4)  # <x> normal in V normal in A4

    def test_not_subnormal(self):
        S3 = named_group("S:3")
        H = construct([parse_perm("(1,2)", 3)])
        assert not is_subnormal(H, S3)

    def test_equal_groups(self):
        S3 = named_group("S:3")
        assert is_subnormal(S3, S3)

    def test_trivial_subgroup(self):
        assert is_subnormal(PermGroup([], 4), named_group("S:4"))

    def test_requires_containment(self):
        with pytest.raises(InvalidArgument):
            is_subnormal(construct([parse_perm("(1,2)", 4)]), named_group("A:4"))

    def test_against_brute_force(self):
        S4 = named_group("S:4")
        for xs, gs in [("(1,2)", "(3,4)"), ("(1,2)", "(1,3)"), ("(1,2)(3,4)", "(1,2,3)"),
                       ("(1,2,3,4)", "(1,3)"), ("(1,2,3)", "(1,2)")]:
            x = parse_perm(xs, 4)
            g = parse_perm(gs, 4)
            K = construct([x, g])
            expected = brute_is_subnormal(
                {x.images}, set_closure({x.images, g.images}, 4), 4
            )
            assert is_subnormal(construct([x]), K) == expected


class TestSubnormalizerSet:
    def test_central_element(self):
        Q8 = named_group("Q:8")
        z = next(g for g in Q8.elements() if g.order() == 2)
        assert len(subnormalizer_set(Q8, z)) == 8

    def test_s4_examples(self):
        S4 = named_group("S:4")
        four = subnormalizer_set(S4, parse_perm("(1,2,3,4)", 4))
        sub = subnormalizer_subgroup(S4, parse_perm("(1,2,3,4)", 4))
        assert sub.order == 8
        assert all(Perm(g.images) in sub for g in four)
        assert subnormalizer_subgroup(S4, parse_perm("(1,2)(3,4)", 4)).order == 24

    def test_exact_sets_against_brute_force(self):
        for name, elements in [
            ("S:4", ["(1,2)", "(1,2,3,4)", "(1,2)(3,4)", "(1,2,3)"]),
            ("A:4", ["(1,2)(3,4)", "(1,2,3)"]),
            ("D:12", ["(1,4)(2,5)(3,6)", "(1,3,5)(2,4,6)"]),
        ]:
            G = named_group(name)
            for xs in elements:
                x = parse_perm(xs, G.degree)
                got = {g.images for g in subnormalizer_set(G, x)}
                want = {g.images for g in brute_subnormalizer_set(G, x)}
                assert got == want, (name, xs)

    def test_centralizer_contained(self, small_catalog_groups):
        for label, (G, _) in small_catalog_groups.items():
            if G.order > 72:
                continue
            for c in conjugacy_classes(G)[:5]:
                x = c.representative
                if x.is_identity():
                    continue
                sset = {g.images for g in subnormalizer_set(G, x)}
                for g in G.elements():
                    if (g * x).images == (x * g).images:
                        assert g.images in sset

    def test_identity_gets_everything(self):
        S4 = named_group("S:4")
        assert len(subnormalizer_set(S4, Perm.identity(4))) == 24

    def test_scale_bound(self):
        with pytest.raises(ScaleExceeded):
            subnormalizer_set(named_group("S:5"), parse_perm("(1,2)", 5), EngineConfig(subnormalizer_bound=100))

    def test_conjugation_equivariance(self):
        S4 = named_group("S:4")
        x = parse_perm("(1,2)", 4)
        g = parse_perm("(1,3,2,4)", 4)
        sub_x = subnormalizer_subgroup(S4, x)
        sub_xg = subnormalizer_subgroup(S4, x.conj(g))
        assert sub_x.conjugate_subgroup(g).same_group(sub_xg)


class TestPicky:
    def test_s4_reports(self):
        S4 = named_group("S:4")
        r = picky_report(S4, 2, parse_perm("(1,2,3,4)", 4))
        assert r.is_picky and r.sylow_count == 1
        assert r.sub_group.order == 8 and r.normalizer.order == 8
        r2 = picky_report(S4, 2, parse_perm("(1,2)(3,4)", 4))
        assert not r2.is_picky and r2.sylow_count == 3
        assert r2.sub_group.order == 24

    def test_normal_sylow_everything_picky(self):
        Q8 = named_group("Q:8")
        for x in p_element_class_representatives(Q8, 2):
            assert picky_report(Q8, 2, x).is_picky

    def test_rejects_non_p_elements(self):
        with pytest.raises(InvalidArgument):
            picky_report(named_group("S:4"), 2, parse_perm("(1,2,3)", 4))

    def test_lemma_58_sweep(self, small_catalog_groups):
        # N_G(P) <= Sub_G(x) always; equality exactly for picky x.
        # Both directions are asserted inside picky_report.
        for label, (G, primes) in small_catalog_groups.items():
            for p in primes:
                for x in p_element_class_representatives(G, p):
                    picky_report(G, p, x)

    def test_picky_class_representatives(self):
        S4 = named_group("S:4")
        picky = {x.cycle_string() for x in picky_class_representatives(S4, 2)}
        assert picky == {"(3,4)", "(1,2,3,4)"}


class TestCovering:
    def test_s4(self):
        r = covering_analysis(named_group("S:4"), 2)
        assert r.all_sylows_needed and r.picky_exists
        r3 = covering_analysis(named_group("S:4"), 3)
        assert r3.all_sylows_needed and r3.picky_exists

    def test_normal_sylow(self):
        r = covering_analysis(named_group("Q:8"), 2)
        assert r.all_sylows_needed and r.picky_exists

    def test_lemma_51_sweep(self, small_catalog_groups):
        # the equivalence is asserted inside covering_analysis
        for label, (G, primes) in small_catalog_groups.items():
            for p in primes:
                covering_analysis(G, p)


class TestChainLength:
    def brute_all_subgroups(self, G):
        """Every subgroup of G, generated from pairs of elements plus a
        saturation pass (sufficient for |G| <= 24)."""
        elems = [g.images for g in G.elements()]
        subs = {frozenset({tuple(range(G.degree))})}
        for a in elems:
            for b in elems:
                subs.add(set_closure({a, b}, G.degree))
        # close under join until stable
        while True:
            new = set(subs)
            for s in subs:
                for t in subs:
                    if not (s <= t or t <= s):
                        new.add(set_closure(set(s) | set(t), G.degree))
            if new == subs:
                return subs
            subs = new

    def test_fixed_examples(self):
        S4 = named_group("S:4")
        D8 = construct([parse_perm("(1,2,3,4)"), parse_perm("(1,3)", 4)])
        assert chain_length(S4, D8) == 1  # maximal
        assert chain_length(S4, S4) == 0
        S3 = construct([parse_perm("(1,2)", 4), parse_perm("(1,2,3)", 4)])
        assert chain_length(S4, S3) == 1  # also maximal

    def test_against_lattice_oracle(self):
        S4 = named_group("S:4")
        subs = self.brute_all_subgroups(S4)
        top = frozenset(g.images for g in S4.elements())

        def longest_from(s):
            overs = [t for t in subs if s < t]
            if not overs:
                return 0
            return max(
                1 + longest_from(t)
                for t in overs
                if not any(s < u < t for u in subs)
            )

        for gens in [["(1,2)"], ["(1,2,3)"], ["(1,2)(3,4)", "(1,3)(2,4)"], ["(1,2,3,4)"], []]:
            N = construct([parse_perm(g, 4) for g in gens], 4)
            key = frozenset(g.images for g in N.elements())
            assert chain_length(S4, N) == longest_from(key), gens

    def test_s5_sylow2_normalizer(self):
        S5 = named_group("S:5")
        N = sylow_data(S5, 2).normalizer
        assert N.order == 8
        assert chain_length(S5, N) == 2  # D8 < S4 < S5

    def test_requires_subgroup(self):
        with pytest.raises(InvalidArgument):
            chain_length(named_group("A:4"), construct([parse_perm("(1,2)", 4)]))

    def test_scale_bound(self):
        with pytest.raises(ScaleExceeded):
            chain_length(named_group("S:5"), named_group("S:5"), EngineConfig(chain_length_bound=60))
