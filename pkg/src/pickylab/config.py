"""Scale bounds for the exact engines.

Everything here is exact arithmetic; the bounds only protect against
accidentally launching an infeasible computation.  They are generous for
desk scale (symmetric groups up to S8 for tables, up to ~10^4 elements
for subnormalizer sweeps).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EngineConfig:
    # Largest |G| for which all elements may be materialised (classes,
    # brute-force sweeps, covering analysis).
    enum_bound: int = 100_000
    # Largest |G| for which a generic character table is computed; bigger
    # symmetric/wreath groups should go through the fast symmetric-group
    # evaluator instead.
    table_bound: int = 50_000
    # Largest |G| for which the element-by-element subnormalizer set is
    # computed.
    subnormalizer_bound: int = 10_000
    # Largest |G| for which subgroup chain lengths are computed.
    chain_length_bound: int = 10_000


DEFAULT_CONFIG = EngineConfig()
