"""Brauer p-blocks from the character table.

Two irreducible characters are linked when the sum of chi(g) psi(g^-1)
over the p-regular elements (taken class-wise with exact cyclotomic
arithmetic) is nonzero; the blocks are the connected components of that
graph.  Defect numbers and heights come from the degree p-parts:
chi(1)_p = p^(a - d + h) with a = v_p(|G|), d the block defect and h >= 0
the height.  Defect groups are only constructed for the principal block,
where they are the Sylow p-subgroups; other blocks carry the defect
number alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chartab import CharacterTable
from .errors import EngineDefect
from .exactnum import Cyclotomic, p_adic_valuation

# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One p-block: character row indices with defect and heights."""

    indices: tuple[int, ...]
    defect: int
    heights: dict[int, int]
    height_set: tuple[int, ...]
    is_principal: bool

    def __len__(self):
        return len(self.indices)


@dataclass(frozen=True)
class BlockPartition:
    prime: int
    a: int  # v_p(|G|)
    blocks: tuple[Block, ...]

    def block_of(self, row: int) -> Block:
        for b in self.blocks:
            if row in b.heights:
                return b
        raise EngineDefect("character belongs to no block")


def block_partition(T: CharacterTable, p: int) -> BlockPartition:
    """The p-block partition of Irr(G), with defects and heights."""
    key = ("blocks", p)
    if key in T.group._cache:
        return T.group._cache[key]
    k = T.k
    order = T.group.order
    a = p_adic_valuation(order, p) if order % p == 0 else 0
    regular = [j for j, c in enumerate(T.classes) if c.element_order % p != 0]
    inv = T.inverse_classes
    sizes = [c.size for c in T.classes]

    # The value at the inverse class must agree with the complex conjugate;
    # the table already asserts this, and we rely on it here.
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        for l in range(i + 1, k):
            if find(i) == find(l):
                continue
            s = Cyclotomic.from_rational(0)
            for j in regular:
                s = s + T.values[i][j] * T.values[l][inv[j]] * sizes[j]
            if not s.is_zero():
                parent[find(l)] = find(i)

    comps: dict[int, list[int]] = {}
    for i in range(k):
        comps.setdefault(find(i), []).append(i)

    blocks = []
    for rows in sorted(comps.values(), key=lambda rs: rs[0]):
        vals = {i: p_adic_valuation(T.degrees[i], p) if T.degrees[i] % p == 0 else 0 for i in rows}
        d = a - min(vals.values())
        heights = {i: vals[i] - (a - d) for i in rows}
        hset = tuple(sorted(set(heights.values())))
        if 0 not in hset:
            raise EngineDefect("block without height-zero characters")
        if (len(rows) == 1) != (d == 0):
            raise EngineDefect(
                f"defect-{d} block with {len(rows)} characters contradicts "
                "the defect-zero criterion"
            )
        blocks.append(
            Block(
                indices=tuple(rows),
                defect=d,
                heights=heights,
                height_set=hset,
                is_principal=0 in rows,
            )
        )
    bp = BlockPartition(prime=p, a=a, blocks=tuple(blocks))
    T.group._cache[key] = bp
    return bp


def principal_block(bp: BlockPartition) -> Block:
    """The block containing the principal character; its defect groups are
    the Sylow p-subgroups, so its defect equals a."""
    for b in bp.blocks:
        if b.is_principal:
            if b.defect != bp.a:
                raise EngineDefect("principal block defect differs from v_p(|G|)")
            return b
    raise EngineDefect("no principal block")


def height_set(b: Block) -> tuple[int, ...]:
    """Distinct heights occurring in the block, ascending."""
    return b.height_set


def blocks_json(T: CharacterTable, bp: BlockPartition) -> dict:
    return {
        "format": 1,
        "prime": bp.prime,
        "a": bp.a,
        "blocks": [
            {
                "degrees": [T.degrees[i] for i in b.indices],
                "defect": b.defect,
                "heights": [b.heights[i] for i in b.indices],
                "principal": b.is_principal,
            }
            for b in bp.blocks
        ],
    }
