import pytest

from pickylab.cli import load_catalog


@pytest.fixture(scope="session")
def full_catalog_groups():
    """label -> (PermGroup, primes) for the shipped full catalog; shared so
    that per-group caches (tables, Sylow data, subnormalizers) are reused
    across the whole session."""
    out = {}
    for entry in load_catalog("full"):
        G = entry.build()
        out[entry.label] = (G, entry.effective_primes(G))
    return out


@pytest.fixture(scope="session")
def small_catalog_groups(full_catalog_groups):
    """The catalog entries of order <= 200 (the exhaustive-sweep scale)."""
    return {
        label: (G, primes)
        for label, (G, primes) in full_catalog_groups.items()
        if G.order <= 200
    }
