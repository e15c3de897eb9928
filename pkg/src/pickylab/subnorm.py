"""Subnormality, subnormalizers, picky elements, Sylow covering, and
subgroup chain lengths.

Everything is derived from the definitions: H is subnormal in K when the
descending normal-closure series K >= <H^K> >= <H^<H^K>> >= ... terminates
at H, and the subnormalizer set of x collects the g with <x> subnormal in
<x, g>.  The only shortcuts taken are ones justified directly by the
definition: membership of g is constant on double cosets <x> g <x> (the
generated subgroup <x, g> does not change), centralizing or normalizing
elements are accepted immediately, and the scan runs over those coset
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_CONFIG, EngineConfig
from .errors import EngineDefect, InvalidArgument, ScaleExceeded
from .exactnum import prime_factors
from .permgroup import (
    Perm,
    PermGroup,
    _conj,
    _mul,
    _Chain,
    conjugacy_classes,
    extended_group,
    group_generated_by,
    is_p_element,
    normalizer,
    sylow_containing,
    sylow_count_containing,
    sylow_data,
)

# ----------------------------------------------------------------------
# Subnormality via normal closure series.

def _closure_chain(gen_tuples, seed_tuples, degree: int) -> tuple[_Chain, list]:
    """Chain for the normal closure of the seeds under the given generators."""
    ch = _Chain(degree)
    gens: list = []
    queue: list = []
    for t in seed_tuples:
        if ch.insert(t):
            gens.append(t)
            queue.append(t)
    qi = 0
    while qi < len(queue):
        s = queue[qi]
        qi += 1
        for g in gen_tuples:
            c = _conj(s, g)
            if ch.insert(c):
                gens.append(c)
                queue.append(c)
    return ch, gens


def _is_subnormal_tuples(seed_tuples, seed_order: int, group_gens, degree: int) -> bool:
    """<seeds> subnormal in <group_gens>, by the descending closure series."""
    current_gens = list(group_gens)
    ch = _Chain(degree)
    for t in current_gens:
        ch.insert(t)
    current_order = ch.order()
    while True:
        if current_order == seed_order:
            return True
        ch, closure_gens = _closure_chain(current_gens, seed_tuples, degree)
        new_order = ch.order()
        if new_order == current_order:
            return new_order == seed_order
        current_gens = closure_gens
        current_order = new_order


def is_subnormal(H: PermGroup, K: PermGroup) -> bool:
    """Whether H is linked to K by a chain of successive normal subgroups."""
    if not H.is_subgroup_of(K):
        raise InvalidArgument("H is not a subgroup of K")
    return _is_subnormal_tuples(
        [g.images for g in H.generators] or [tuple(range(K.degree))],
        H.order,
        [g.images for g in K.generators],
        K.degree,
    )


# ----------------------------------------------------------------------
# Subnormalizer sets and subgroups.

def _subnormal_in_generated(x: Perm, x_tuples, x_order: int, g: Perm) -> bool:
    """Is <x> subnormal in <x, g>?  (x_tuples = all powers of x.)"""
    xt = x.images
    gt = g.images
    # Centralizing or <x>-normalizing elements qualify immediately.
    if _mul(xt, gt) == _mul(gt, xt):
        return True
    if _conj(xt, gt) in x_tuples:
        return True
    return _is_subnormal_tuples([xt], x_order, [xt, gt], len(xt))


def subnormalizer_set(
    G: PermGroup, x: Perm, config: EngineConfig = DEFAULT_CONFIG
) -> list[Perm]:
    """S_G(<x>) = { g : <x> subnormal in <x, g> }, as a sorted list.

    The verdict is constant on each double coset <x> g <x>, so one test per
    coset suffices; every element is still reported.
    """
    if x not in G:
        raise InvalidArgument("element does not belong to the group")
    if G.order > config.subnormalizer_bound:
        raise ScaleExceeded(
            f"|G| = {G.order} exceeds the subnormalizer bound {config.subnormalizer_bound}"
        )
    x_order = x.order()
    powers = [x.images]
    while len(powers) < x_order:
        powers.append(_mul(powers[-1], x.images))
    powers_set = frozenset(powers)
    members: list[Perm] = []
    decided: dict[tuple, bool] = {}
    for g in G.elements(config):
        gt = g.images
        if gt in decided:
            if decided[gt]:
                members.append(g)
            continue
        verdict = _subnormal_in_generated(x, powers_set, x_order, g)
        # Mark the whole double coset <x> g <x>.
        for a in powers:
            ag = _mul(a, gt)
            for b in powers:
                decided[_mul(ag, b)] = verdict
        if verdict:
            members.append(g)
    return members


def subnormalizer_subgroup(
    G: PermGroup, x: Perm, config: EngineConfig = DEFAULT_CONFIG
) -> PermGroup:
    """Sub_G(x) = <S_G(<x>)>.  For p-elements the containment
    N_G(P) <= Sub_G(x) is asserted."""
    key = ("subnormalizer", x.images)
    if key in G._cache:
        return G._cache[key]
    sset = subnormalizer_set(G, x, config)
    sub = group_generated_by(sset, G.degree)
    order = x.order()
    if order > 1:
        primes = prime_factors(order)
        if len(primes) == 1:
            (p,) = primes
            _, N = sylow_containing(G, p, x, config)
            if not N.is_subgroup_of(sub):
                raise EngineDefect("N_G(P) is not contained in the subnormalizer subgroup")
    G._cache[key] = sub
    return sub


# ----------------------------------------------------------------------
# Picky elements.

@dataclass
class PickyReport:
    element: Perm
    prime: int
    sylow_count: int
    is_picky: bool
    sub_group: PermGroup
    normalizer: PermGroup

    def to_json_dict(self) -> dict:
        return {
            "element": self.element.cycle_string(),
            "prime": self.prime,
            "sylow_count": self.sylow_count,
            "is_picky": self.is_picky,
            "subnormalizer_order": self.sub_group.order,
            "normalizer_order": self.normalizer.order,
        }


def picky_report(
    G: PermGroup, p: int, x: Perm, config: EngineConfig = DEFAULT_CONFIG
) -> PickyReport:
    """Full picky diagnostics for a p-element, cross-validating that
    x is picky exactly when Sub_G(x) = N_G(P)."""
    if not is_p_element(x, p):
        raise InvalidArgument("element order is not a power of p")
    count = sylow_count_containing(G, p, x, config)
    _, N = sylow_containing(G, p, x, config)
    sub = subnormalizer_subgroup(G, x, config)
    picky = count == 1
    if not N.is_subgroup_of(sub):
        raise EngineDefect("N_G(P) is not contained in Sub_G(x)")
    if picky != N.same_group(sub):
        raise EngineDefect("pickiness disagrees with Sub_G(x) = N_G(P)")
    return PickyReport(
        element=x, prime=p, sylow_count=count, is_picky=picky, sub_group=sub, normalizer=N
    )


def p_element_class_representatives(
    G: PermGroup, p: int, include_identity: bool = False, config: EngineConfig = DEFAULT_CONFIG
) -> list[Perm]:
    """Class representatives of p-power order (identity optional)."""
    reps = []
    for c in conjugacy_classes(G, config):
        x = c.representative
        if x.is_identity():
            if include_identity:
                reps.append(x)
            continue
        if is_p_element(x, p):
            reps.append(x)
    return reps


def picky_class_representatives(
    G: PermGroup, p: int, config: EngineConfig = DEFAULT_CONFIG
) -> list[Perm]:
    """Nonidentity p-element class representatives lying in a unique Sylow
    p-subgroup.  Cheap: no subnormalizer computation involved."""
    return [
        x
        for x in p_element_class_representatives(G, p, config=config)
        if sylow_count_containing(G, p, x, config) == 1
    ]


@dataclass(frozen=True)
class CoveringAnalysis:
    all_sylows_needed: bool
    picky_exists: bool


def covering_analysis(
    G: PermGroup, p: int, config: EngineConfig = DEFAULT_CONFIG
) -> CoveringAnalysis:
    """Do all Sylow p-subgroups participate in covering the p-elements, and
    does a picky element exist?  The two answers must agree."""
    data = sylow_data(G, p, config)
    P = data.subgroup
    sylow_sets = []
    for g in data.transversal:
        gt = g.images
        sylow_sets.append(frozenset(_conj(t.images, gt) for t in P.elements(config)))
    all_needed = True
    for i, Q in enumerate(sylow_sets):
        # Q is needed iff some element of Q lies in no other Sylow subgroup.
        needed = any(
            all(t not in other for j, other in enumerate(sylow_sets) if j != i) for t in Q
        )
        if not needed:
            all_needed = False
            break
    picky_exists = False
    for x in p_element_class_representatives(G, p, include_identity=True, config=config):
        report = picky_report(G, p, x, config)
        if report.is_picky:
            picky_exists = True
            break
    if all_needed != picky_exists:
        raise EngineDefect("covering criterion disagrees with picky existence")
    return CoveringAnalysis(all_sylows_needed=all_needed, picky_exists=picky_exists)


# ----------------------------------------------------------------------
# Longest subgroup chains.

def chain_length(G: PermGroup, N: PermGroup, config: EngineConfig = DEFAULT_CONFIG) -> int:
    """Maximal length t of a strictly increasing subgroup chain
    N = H_0 < H_1 < ... < H_t = G."""
    if not N.is_subgroup_of(G):
        raise InvalidArgument("N is not a subgroup of G")
    if G.order > config.chain_length_bound:
        raise ScaleExceeded(
            f"|G| = {G.order} exceeds the chain-length bound {config.chain_length_bound}"
        )
    memo: dict[frozenset, int] = {}
    g_elements = G.elements(config)

    def longest(H: PermGroup) -> int:
        if H.order == G.order:
            return 0
        key = H.element_fingerprint(config)
        if key in memo:
            return memo[key]
        overgroups = _minimal_overgroups(H, key)
        result = 1 + max(longest(K) for K in overgroups)
        memo[key] = result
        return result

    def _minimal_overgroups(H: PermGroup, h_key: frozenset) -> list[PermGroup]:
        # Every minimal overgroup is <H, g>; <H, g> only depends on the
        # coset Hg, so scan one representative per coset.
        found: dict[frozenset, PermGroup] = {}
        seen_cosets: set = set(h_key)
        hit_G = False
        h_elems = [t for t in h_key]
        for g in g_elements:
            gt = g.images
            if gt in seen_cosets:
                continue
            for h in h_elems:
                seen_cosets.add(_mul(h, gt))
            K = extended_group(H, [g])
            if K.order == G.order:
                hit_G = True
                continue
            kkey = K.element_fingerprint(config)
            if kkey not in found:
                found[kkey] = K
        if not found:
            if not hit_G:
                raise EngineDefect("no overgroup found for a proper subgroup")
            return [G]
        minimal = []
        keys = sorted(found, key=lambda fs: (len(fs), sorted(fs)))
        for key in keys:
            if not any(other < key for other in found if other is not key):
                minimal.append(found[key])
        return minimal

    return longest(N)
