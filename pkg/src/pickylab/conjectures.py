"""The verification harness: one structured check per theorem- or
conjecture-shaped statement, each returning a CheckReport with enough
witness data to reproduce the verdict independently.

Bijection-style statements (McKay at a picky element, the subnormalizer
comparison) constrain only per-character data, so a bijection with the
required properties exists exactly when the signature multisets on the two
sides coincide; the checks compare those multisets.  Signature variants:

* ``plain``  - (degree p-part, field fingerprint of the value),
* ``strong`` - (degree p-part, value up to sign),
* ``ppart``  - (degree p-part, p-part exponent of the value),
* ``degree`` - degree p-part alone (the coarsening all variants refine).

Any ``fails`` verdict for a multiset check is re-verified by rebuilding
both groups and tables from scratch before it is reported.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

from .blocks import block_partition, principal_block
from .chartab import (
    CharacterTable,
    character_table,
    cd,
    cd_p,
    irr_nonvanishing_on,
    irr_pprime,
)
from .config import DEFAULT_CONFIG, EngineConfig
from .errors import EngineDefect, ScaleExceeded
from .exactnum import algebraic_p_part, field_fingerprint, p_adic_valuation, prime_factors
from .permgroup import (
    Perm,
    PermGroup,
    conjugacy_classes,
    derived_length,
    is_ti_sylow,
    sylow_containing,
    sylow_data,
)
from .subnorm import (
    chain_length,
    p_element_class_representatives,
    picky_class_representatives,
    subnormalizer_subgroup,
)

HOLDS = "holds"
FAILS = "fails"
SKIPPED = "skipped"


@dataclass
class CheckReport:
    check_name: str
    group_label: str
    prime: int
    status: str
    witnesses: dict
    runtime_ms: int = 0

    def to_json_dict(self, include_timing: bool = False) -> dict:
        out = {
            "check": self.check_name,
            "group": self.group_label,
            "prime": self.prime,
            "status": self.status,
            "witnesses": self.witnesses,
        }
        if include_timing:
            out["runtime_ms"] = self.runtime_ms
        return out


def _finish(name, label, p, status, witnesses, t0) -> CheckReport:
    return CheckReport(
        check_name=name,
        group_label=label,
        prime=p,
        status=status,
        witnesses=witnesses,
        runtime_ms=int((time.monotonic() - t0) * 1000),
    )


# ----------------------------------------------------------------------
# Bijection signatures.

VARIANTS = ("plain", "strong", "ppart")


@dataclass(frozen=True)
class BijectionSignature:
    """Multiset of per-character signature tuples for one side of a
    bijection statement."""

    variant: str
    multiset: tuple

    @classmethod
    def build(cls, T: CharacterTable, x: Perm, p: int, variant: str) -> "BijectionSignature":
        j = T.class_index(x)
        m = x.order()
        items = []
        for i in range(T.k):
            v = T.values[i][j]
            if v.is_zero():
                continue
            d = T.degrees[i]
            dp = p ** (p_adic_valuation(d, p) if d % p == 0 else 0)
            if variant == "degree":
                items.append((dp,))
            elif variant == "plain":
                fp = field_fingerprint(v, m)
                items.append((dp, fp.modulus, fp.stabilizer))
            elif variant == "strong":
                items.append((dp, max(v.to_string(), (-v).to_string())))
            elif variant == "ppart":
                e = algebraic_p_part(v, p).exponent
                items.append((dp, (e.numerator, e.denominator)))
            else:
                raise ValueError(f"unknown variant {variant!r}")
        return cls(variant=variant, multiset=tuple(sorted(items)))

    def to_json(self):
        counts = Counter(self.multiset)
        return [[_jsonify(sig), n] for sig, n in sorted(counts.items())]


def _jsonify(obj):
    if isinstance(obj, tuple):
        return [_jsonify(o) for o in obj]
    return obj


def _signature_comparison(TG, TH, x, p) -> dict:
    """All signature variants on both sides, with equality verdicts and
    the structural implications asserted."""
    out = {}
    for variant in ("degree",) + VARIANTS:
        sg = BijectionSignature.build(TG, x, p, variant)
        sh = BijectionSignature.build(TH, x, p, variant)
        out[variant] = {"left": sg, "right": sh, "equal": sg.multiset == sh.multiset}
    # strong refines both ppart and plain, which refine the degree clause.
    if out["strong"]["equal"]:
        if not (out["ppart"]["equal"] and out["plain"]["equal"]):
            raise EngineDefect("strong signatures match but a coarsening does not")
    if out["ppart"]["equal"] or out["plain"]["equal"]:
        if not out["degree"]["equal"]:
            raise EngineDefect("refined signatures match but degree p-parts do not")
    return out


def _comparison_json(comp: dict) -> dict:
    return {
        variant: {
            "equal": data["equal"],
            "left": data["left"].to_json(),
            "right": data["right"].to_json(),
        }
        for variant, data in comp.items()
    }


def _fresh(G: PermGroup) -> PermGroup:
    """A new group object with no cached derived data."""
    return PermGroup([Perm(g.images) for g in G.generators], G.degree)


def _reverify_mismatch(G, H, x, p, variant, config) -> bool:
    """Recompute both multisets from scratch and confirm they still differ."""
    TG = character_table(_fresh(G), config)
    TH = character_table(_fresh(H), config)
    sg = BijectionSignature.build(TG, x, p, variant)
    sh = BijectionSignature.build(TH, x, p, variant)
    return sg.multiset != sh.multiset


# ----------------------------------------------------------------------
# Theorem checks.

def check_ito_michler(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """Normal abelian Sylow p-subgroup iff no degree divisible by p."""
    t0 = time.monotonic()
    data = sylow_data(G, p, config)
    left = data.count == 1 and data.subgroup.is_abelian()
    degrees_p = cd_p(character_table(G, config), p)
    right = degrees_p == (1,)
    status = HOLDS if left == right else FAILS
    witnesses = {
        "sylow_normal": data.count == 1,
        "sylow_abelian": data.subgroup.is_abelian(),
        "cd_p": list(degrees_p),
    }
    if status == FAILS:
        witnesses["engine_bug"] = True  # a proved theorem cannot fail
    return _finish("ito_michler", group_label, p, status, witnesses, t0)


def check_normality_via_qblocks(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """P normal iff p divides no degree in any principal q-block, q != p."""
    t0 = time.monotonic()
    left = sylow_data(G, p, config).count == 1
    T = character_table(G, config)
    right = True
    witness_q = None
    for q in prime_factors(G.order):
        if q == p:
            continue
        b0 = principal_block(block_partition(T, q))
        for i in b0.indices:
            if T.degrees[i] % p == 0:
                right = False
                witness_q = {"q": q, "degree": T.degrees[i]}
                break
        if not right:
            break
    status = HOLDS if left == right else FAILS
    witnesses = {"sylow_normal": left, "all_principal_qblock_degrees_coprime": right}
    if witness_q:
        witnesses["divisible_degree"] = witness_q
    if status == FAILS:
        witnesses["engine_bug"] = True
    return _finish("normality_via_qblocks", group_label, p, status, witnesses, t0)


def check_mckay(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """|Irr_{p'}(G)| = |Irr_{p'}(N_G(P))|."""
    t0 = time.monotonic()
    data = sylow_data(G, p, config)
    count_g = len(irr_pprime(character_table(G, config), p))
    count_n = len(irr_pprime(character_table(data.normalizer, config), p))
    status = HOLDS if count_g == count_n else FAILS
    witnesses = {
        "count_G": count_g,
        "count_N": count_n,
        "normalizer_order": data.normalizer.order,
    }
    return _finish("mckay", group_label, p, status, witnesses, t0)


def check_degree_conjectures(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """|cd(P)| <= |cd_p(G)| + 1, and the sharp b <= 2f bound; the
    asymptotic clauses are reported as data only."""
    t0 = time.monotonic()
    P = sylow_data(G, p, config).subgroup
    TP = character_table(P, config)
    cd_P = cd(TP)
    cd_pG = cd_p(character_table(G, config), p)
    b = p_adic_valuation(max(cd_P), p) if max(cd_P) > 1 else 0
    f = p_adic_valuation(max(cd_pG), p) if max(cd_pG) > 1 else 0
    ok_count = len(cd_P) <= len(cd_pG) + 1
    ok_b2f = b <= 2 * f
    status = HOLDS if (ok_count and ok_b2f) else FAILS
    witnesses = {
        "dl_P": derived_length(P),
        "b": b,
        "f": f,
        "cd_P": list(cd_P),
        "cd_p_G": list(cd_pG),
        "count_bound_holds": ok_count,
        "b_le_2f_holds": ok_b2f,
    }
    return _finish("degree_conjectures", group_label, p, status, witnesses, t0)


def check_chain_conjecture(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """Chains between N_G(P) and G are no longer than the number of
    irreducible degrees divisible by p."""
    t0 = time.monotonic()
    T = character_table(G, config)
    n = sum(1 for d in T.degrees if d % p == 0)
    data = sylow_data(G, p, config)
    N = data.normalizer
    if N.same_group(G) and n == 0:
        return _finish(
            "chain_conjecture", group_label, p, HOLDS, {"chain_length": 0, "n": 0}, t0
        )
    try:
        t = chain_length(G, N, config)
    except ScaleExceeded as exc:
        return _finish("chain_conjecture", group_label, p, SKIPPED, {"reason": str(exc)}, t0)
    status = HOLDS if t <= n else FAILS
    witnesses = {"chain_length": t, "n": n, "normalizer_order": N.order}
    return _finish("chain_conjecture", group_label, p, status, witnesses, t0)


def check_height_conjectures(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """Principal-block height statements: |cd(P)| <= |ht(B0)| + 1 and the
    equality min(cd(P) - {1}) = p^min(ht(B0) - {0}), with empty infima
    reading as infinity on both sides."""
    t0 = time.monotonic()
    if G.order % p != 0:
        return _finish(
            "height_conjectures",
            group_label,
            p,
            SKIPPED,
            {"reason": "p does not divide |G|"},
            t0,
        )
    T = character_table(G, config)
    b0 = principal_block(block_partition(T, p))
    ht = b0.height_set
    P = sylow_data(G, p, config).subgroup
    cd_P = cd(character_table(P, config))
    ok_count = len(cd_P) <= len(ht) + 1
    nontrivial_cd = [d for d in cd_P if d > 1]
    nonzero_ht = [h for h in ht if h > 0]
    if not nontrivial_cd and not nonzero_ht:
        ok_em = True  # both infima infinite: the height-zero/abelian case
        em = {"lhs": None, "rhs": None}
    elif nontrivial_cd and nonzero_ht:
        lhs = min(nontrivial_cd)
        rhs = p ** min(nonzero_ht)
        ok_em = lhs == rhs
        em = {"lhs": lhs, "rhs": rhs}
    else:
        ok_em = False
        em = {
            "lhs": min(nontrivial_cd) if nontrivial_cd else None,
            "rhs": p ** min(nonzero_ht) if nonzero_ht else None,
        }
    status = HOLDS if (ok_count and ok_em) else FAILS
    witnesses = {
        "height_set": list(ht),
        "cd_P": list(cd_P),
        "count_bound_holds": ok_count,
        "smallest_nontrivial": em,
        "dl_P": derived_length(P),
        "max_height": max(ht),
    }
    return _finish("height_conjectures", group_label, p, status, witnesses, t0)


def check_vanishing_proposition(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """Characters outside the maximal-defect blocks vanish at every picky
    element."""
    t0 = time.monotonic()
    T = character_table(G, config)
    bp = block_partition(T, p)
    small_defect_rows = [i for b in bp.blocks if b.defect < bp.a for i in b.indices]
    picky = picky_class_representatives(G, p, config)
    violations = []
    for x in picky:
        j = T.class_index(x)
        for i in small_defect_rows:
            if not T.values[i][j].is_zero():
                violations.append(
                    {"element": x.cycle_string(), "degree": T.degrees[i], "value": T.values[i][j].to_string()}
                )
    status = HOLDS if not violations else FAILS
    witnesses = {
        "picky_classes": [x.cycle_string() for x in picky],
        "small_defect_characters": len(small_defect_rows),
    }
    if violations:
        witnesses["violations"] = violations
        witnesses["engine_bug"] = True
    return _finish("vanishing_proposition", group_label, p, status, witnesses, t0)


def check_alperin_c(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """For a TI Sylow p-subgroup: the number of characters not vanishing on
    P matches |Irr(N_G(P))|.  Both readings of "not vanishing on P" are
    computed: with the identity included the left side is all of Irr(G), so
    the literal count is tried first and the nonidentity reading second."""
    t0 = time.monotonic()
    if not is_ti_sylow(G, p, config):
        return _finish(
            "alperin_c", group_label, p, SKIPPED, {"reason": "Sylow subgroup is not TI"}, t0
        )
    data = sylow_data(G, p, config)
    T = character_table(G, config)
    literal = len(irr_nonvanishing_on(T, data.subgroup))
    nonidentity = len(irr_nonvanishing_on(T, data.subgroup, nonidentity_only=True))
    target = len(conjugacy_classes(data.normalizer, config))
    witnesses = {
        "count_literal": literal,
        "count_nonidentity": nonidentity,
        "count_N": target,
    }
    if literal == target:
        witnesses["reading"] = "literal"
        status = HOLDS
    elif nonidentity == target:
        witnesses["reading"] = "nonidentity"
        status = HOLDS
    else:
        witnesses["engine_bug_or_definition_mismatch"] = True
        status = FAILS
    return _finish("alperin_c", group_label, p, status, witnesses, t0)


def check_kb_principal(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """The principal block has at most |P| characters."""
    t0 = time.monotonic()
    T = character_table(G, config)
    bp = block_partition(T, p)
    b0 = principal_block(bp)
    bound = p ** bp.a
    status = HOLDS if len(b0) <= bound else FAILS
    return _finish(
        "kb_principal",
        group_label,
        p,
        status,
        {"principal_block_size": len(b0), "sylow_order": bound},
        t0,
    )


# ----------------------------------------------------------------------
# Bijection checks.

def check_picky_conjecture(
    G, p, variant: str = "plain", *, group_label="G", config: EngineConfig = DEFAULT_CONFIG
):
    """For every picky class representative x, the signature multisets of
    Irr^x(G) and Irr^x(N_G(P)) coincide (P the unique Sylow containing x)."""
    t0 = time.monotonic()
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    picky = picky_class_representatives(G, p, config)
    if not picky:
        # Vacuous instance: no picky elements, nothing to compare.
        return _finish(
            "picky_conjecture",
            group_label,
            p,
            HOLDS,
            {"variant": variant, "picky_classes": [], "vacuous": True},
            t0,
        )
    T = character_table(G, config)
    per_class = []
    all_hold = True
    for x in picky:
        _, N = sylow_containing(G, p, x, config)
        TN = character_table(N, config)
        comp = _signature_comparison(T, TN, x, p)
        entry = {
            "element": x.cycle_string(),
            "normalizer_order": N.order,
            "comparison": _comparison_json(comp),
        }
        if not comp[variant]["equal"]:
            all_hold = False
            entry["witness_reverified"] = _reverify_mismatch(G, N, x, p, variant, config)
        per_class.append(entry)
    status = HOLDS if all_hold else FAILS
    witnesses = {"variant": variant, "picky_classes": per_class}
    return _finish("picky_conjecture", group_label, p, status, witnesses, t0)


def _sylow_count_cached(G, p, x, config):
    from .permgroup import sylow_count_containing

    key = ("sylow_count", p, x.images)
    if key not in G._cache:
        G._cache[key] = sylow_count_containing(G, p, x, config)
    return G._cache[key]


def check_subnormalizer_conjecture(
    G, p, variant: str = "plain", *, group_label="G", config: EngineConfig = DEFAULT_CONFIG
):
    """For every nonidentity p-element class representative x, the signature
    multisets of Irr^x(G) and Irr^x(Sub_G(x)) coincide.  Picky classes must
    reproduce the picky comparison exactly (Sub_G(x) = N_G(P))."""
    t0 = time.monotonic()
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    reps = p_element_class_representatives(G, p, config=config)
    T = character_table(G, config)
    per_class = []
    all_hold = True
    any_skipped = False
    for x in reps:
        entry = {"element": x.cycle_string()}
        try:
            sub = subnormalizer_subgroup(G, x, config)
        except ScaleExceeded as exc:
            entry["skipped"] = str(exc)
            any_skipped = True
            per_class.append(entry)
            continue
        picky = _sylow_count_cached(G, p, x, config) == 1
        if picky:
            _, N = sylow_containing(G, p, x, config)
            if not sub.same_group(N):
                raise EngineDefect("picky element with Sub_G(x) != N_G(P)")
        Tsub = character_table(sub, config)
        comp = _signature_comparison(T, Tsub, x, p)
        entry["subnormalizer_order"] = sub.order
        entry["picky"] = picky
        entry["comparison"] = _comparison_json(comp)
        if not comp[variant]["equal"]:
            all_hold = False
            entry["witness_reverified"] = _reverify_mismatch(G, sub, x, p, variant, config)
        per_class.append(entry)
    if not all_hold:
        status = FAILS
    elif any_skipped:
        status = SKIPPED
    else:
        status = HOLDS
    witnesses = {"variant": variant, "classes": per_class}
    return _finish("subnormalizer_conjecture", group_label, p, status, witnesses, t0)


def check_fusion_lemma(G, p, *, group_label="G", config: EngineConfig = DEFAULT_CONFIG):
    """Elements of Sub_G(x) that are G-conjugate to x are already
    Sub_G(x)-conjugate to x."""
    from .permgroup import _conj

    t0 = time.monotonic()
    reps = p_element_class_representatives(G, p, config=config)
    checked = []
    violations = []
    any_skipped = False
    for x in reps:
        try:
            sub = subnormalizer_subgroup(G, x, config)
        except ScaleExceeded as exc:
            any_skipped = True
            checked.append({"element": x.cycle_string(), "skipped": str(exc)})
            continue
        # G-class of x, filtered into Sub, versus the Sub-class of x.
        g_gens = [g.images for g in G.generators]
        orbit = {x.images}
        queue = [x.images]
        while queue:
            t = queue.pop()
            for g in g_gens:
                c = _conj(t, g)
                if c not in orbit:
                    orbit.add(c)
                    queue.append(c)
        sub_gens = [g.images for g in sub.generators]
        sub_orbit = {x.images}
        queue = [x.images]
        while queue:
            t = queue.pop()
            for g in sub_gens:
                c = _conj(t, g)
                if c not in sub_orbit:
                    sub_orbit.add(c)
                    queue.append(c)
        inside = {t for t in orbit if Perm(t) in sub}
        if inside != sub_orbit:
            stray = sorted(inside - sub_orbit)[:3]
            violations.append(
                {
                    "element": x.cycle_string(),
                    "not_locally_conjugate": [Perm(t).cycle_string() for t in stray],
                }
            )
        checked.append({"element": x.cycle_string(), "class_members_in_sub": len(inside)})
    if violations:
        status = FAILS
    elif any_skipped:
        status = SKIPPED
    else:
        status = HOLDS
    witnesses = {"classes": checked}
    if violations:
        witnesses["violations"] = violations
        witnesses["engine_bug"] = True
    return _finish("fusion_lemma", group_label, p, status, witnesses, t0)


# ----------------------------------------------------------------------
# Registry and batch helper.

CHECKS = {
    "ito_michler": check_ito_michler,
    "normality_via_qblocks": check_normality_via_qblocks,
    "mckay": check_mckay,
    "degree_conjectures": check_degree_conjectures,
    "chain_conjecture": check_chain_conjecture,
    "height_conjectures": check_height_conjectures,
    "vanishing_proposition": check_vanishing_proposition,
    "alperin_c": check_alperin_c,
    "kb_principal": check_kb_principal,
    "picky_conjecture": check_picky_conjecture,
    "subnormalizer_conjecture": check_subnormalizer_conjecture,
    "fusion_lemma": check_fusion_lemma,
}

THEOREM_CHECKS = (
    "ito_michler",
    "normality_via_qblocks",
    "vanishing_proposition",
    "alperin_c",
    "fusion_lemma",
)


def run_check(
    name: str,
    G: PermGroup,
    p: int,
    *,
    group_label="G",
    variant: str = "plain",
    config: EngineConfig = DEFAULT_CONFIG,
) -> CheckReport:
    fn = CHECKS.get(name)
    if fn is None:
        raise ValueError(f"unknown check {name!r}")
    if name in ("picky_conjecture", "subnormalizer_conjecture"):
        return fn(G, p, variant, group_label=group_label, config=config)
    return fn(G, p, group_label=group_label, config=config)


def run_all_checks(
    G: PermGroup,
    p: int,
    *,
    group_label="G",
    config: EngineConfig = DEFAULT_CONFIG,
) -> list[CheckReport]:
    """Every applicable check for one (group, prime): the picky comparison
    in all three variants, everything else once.  The TI-only check is
    included only when its precondition is met, so "all" means "all
    applicable" and a clean run reports nothing but holds.
    Cross-statement implications are asserted before returning."""
    reports: list[CheckReport] = []
    for name in CHECKS:
        if name == "picky_conjecture":
            for variant in VARIANTS:
                reports.append(run_check(name, G, p, group_label=group_label, variant=variant, config=config))
        elif name == "subnormalizer_conjecture":
            reports.append(run_check(name, G, p, group_label=group_label, variant="plain", config=config))
        elif name == "alperin_c" and not is_ti_sylow(G, p, config):
            continue
        else:
            reports.append(run_check(name, G, p, group_label=group_label, config=config))
    # A picky bijection preserving degree p-parts forces the McKay count.
    picky_plain = next(
        r
        for r in reports
        if r.check_name == "picky_conjecture" and r.witnesses.get("variant") == "plain"
    )
    mckay = next(r for r in reports if r.check_name == "mckay")
    if (
        picky_plain.status == HOLDS
        and not picky_plain.witnesses.get("vacuous")
        and mckay.status != HOLDS
    ):
        raise EngineDefect("picky comparison holds but the McKay count does not")
    return reports
