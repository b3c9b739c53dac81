"""Generators for the three benchmark scenarios.

Each generator returns a :class:`PuzzleInstance`: a vocabulary, an initial
state law as a formula, per-agent observations, an optional designated
state, and the announcement sequence.  Instances are recipes rather than
built structures, so a benchmark can re-encode the same scenario under every
diagram variant with a fresh manager.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Union

from .dd import (
    Atom,
    DdManager,
    EliminationRule,
    Not,
    Vocabulary,
    big_and,
    big_or,
    big_xor,
)
from .epistemic import AgentId, KnowledgeStructure, Knows, knows_whether

logger = logging.getLogger(__name__)

PLAIN = "plain"
WHETHER = "whether"


class InvalidInstanceError(Exception):
    """Puzzle parameters outside the scenario's domain."""


@dataclass
class PuzzleInstance:
    name: str
    vocab: Vocabulary
    law: object
    obs: dict[AgentId, tuple[int, ...]]
    actual: Optional[frozenset[int]]
    announcements: tuple[tuple[object, str], ...]
    n: int
    m: Optional[int] = None

    def structure(self, manager: DdManager) -> KnowledgeStructure:
        """Encode the initial law and observations under the given manager."""
        if manager.vocab != self.vocab:
            raise InvalidInstanceError("manager vocabulary does not match")
        return KnowledgeStructure(
            manager, manager.from_formula(self.law), self.obs
        )

    def build(
        self,
        rule: Union[EliminationRule, str] = EliminationRule.EQ,
        complement_edges: bool = False,
        node_cap: Optional[int] = None,
    ) -> KnowledgeStructure:
        kwargs = {} if node_cap is None else {"node_cap": node_cap}
        manager = DdManager(
            self.vocab, rule, complement_edges=complement_edges, **kwargs
        )
        return self.structure(manager)


def muddy_children(n: int, m: Optional[int] = None) -> PuzzleInstance:
    """n children, the first m of them muddy.

    The father's opening statement is folded into the initial law (at least
    one child is muddy), so round 0 is the state before any child speaks.
    Each of the m-1 rounds announces that nobody knows their own state.
    """
    if m is None:
        m = n
    if not 1 <= m <= n:
        raise InvalidInstanceError(
            f"need 1 <= muddy <= children, got m={m}, n={n}"
        )
    vocab = Vocabulary(f"p{i}" for i in range(1, n + 1))
    law = big_or(Atom(i) for i in range(n))
    obs = {
        i: tuple(j for j in range(n) if j != i - 1) for i in range(1, n + 1)
    }
    nobody_knows = big_and(
        Not(knows_whether(i, Atom(i - 1))) for i in range(1, n + 1)
    )
    return PuzzleInstance(
        name="mc",
        vocab=vocab,
        law=law,
        obs=obs,
        actual=frozenset(range(m)),
        announcements=((nobody_knows, PLAIN),) * (m - 1),
        n=n,
        m=m,
    )


def dining_cryptographers(
    n: int = 3, actual: Optional[frozenset[int]] = None
) -> PuzzleInstance:
    """n diners (odd), one payer among them or the outside party.

    Variable p0 means the outside party paid, p1..pn that diner i paid;
    coin ci is shared by neighbours i and i+1 around the table (cyclically).
    Each diner announces, in whether-mode, the XOR of their own payment bit
    and their two adjacent coins; including the own bit realizes the payer's
    inversion of the announced coin parity.
    """
    if n < 3 or n % 2 == 0:
        raise InvalidInstanceError(f"need an odd number of diners >= 3, got {n}")
    names = [f"p{i}" for i in range(n + 1)] + [f"c{i}" for i in range(1, n + 1)]
    vocab = Vocabulary(names)
    pay = list(range(n + 1))
    coin = {i: n + i for i in range(1, n + 1)}  # index of ci in the vocabulary

    exactly_one = big_or(
        big_and(
            Atom(k) if j == k else Not(Atom(j)) for j in pay
        )
        for k in pay
    )

    def coins_of(i: int) -> tuple[int, int]:
        left = coin[i - 1] if i > 1 else coin[n]
        return left, coin[i]

    obs: dict[AgentId, tuple[int, ...]] = {}
    announcements = []
    for i in range(1, n + 1):
        left, right = coins_of(i)
        obs[i] = (i, left, right)
        announcements.append(
            (big_xor([Atom(i), Atom(left), Atom(right)]), WHETHER)
        )

    if actual is None:
        actual = frozenset({0})  # outside party paid, all coins tails
    return PuzzleInstance(
        name="dc",
        vocab=vocab,
        law=exactly_one,
        obs=obs,
        actual=frozenset(actual),
        announcements=tuple(announcements),
        n=n,
    )


def sap_layout(bound: int) -> tuple[int, int]:
    """(width of the x/y/s blocks, width of the product block).

    Blocks hold values up to the scenario bounds (the sum bound itself for
    x, y and s, its square for the product), so a block gains a bit just
    above each power of two.  If the bound is an exact power of two the sum
    can equal it and wraps to the all-zero pattern, which stays injective
    because no feasible sum is 0.
    """
    width = max(1, (bound - 1).bit_length())
    p_width = max(1, (bound * bound - 1).bit_length())
    return width, p_width


def sap_pairs(bound: int) -> list[tuple[int, int]]:
    return [
        (x, y)
        for x in range(2, bound)
        for y in range(x + 1, bound)
        if x + y <= bound
    ]


def sum_and_product(bound: int = 100) -> PuzzleInstance:
    """Two secret numbers 1 < x < y with x + y <= bound.

    x, y, their sum and their product are encoded in disjoint fixed-width
    bit blocks, most significant bit first; agent S observes the sum block
    and agent P the product block.  The three announcements compress the
    dialogue: S knows that P cannot name the pair, then P can, then S can.
    "Naming the pair" is expressed per bit: the agent knows whether each
    x/y bit holds, which pins the whole pair exactly when the law-states in
    the agent's information set agree on every bit.
    """
    if bound < 5:
        raise InvalidInstanceError(f"no candidate pairs below bound 5, got {bound}")
    if bound < 65:
        logger.warning(
            "sum-and-product bound %d is below 65; the dialogue may have no solution",
            bound,
        )
    width, p_width = sap_layout(bound)
    names = (
        [f"x{i}" for i in range(1, width + 1)]
        + [f"y{i}" for i in range(1, width + 1)]
        + [f"s{i}" for i in range(1, width + 1)]
        + [f"p{i}" for i in range(1, p_width + 1)]
    )
    vocab = Vocabulary(names)
    blocks = {
        "x": (0, width),
        "y": (width, width),
        "s": (2 * width, width),
        "p": (3 * width, p_width),
    }

    def block_cube(block: str, value: int):
        start, w = blocks[block]
        return [
            Atom(start + j) if (value >> (w - 1 - j)) & 1 else Not(Atom(start + j))
            for j in range(w)
        ]

    cubes = []
    for x, y in sap_pairs(bound):
        literals = (
            block_cube("x", x)
            + block_cube("y", y)
            + block_cube("s", x + y)
            + block_cube("p", x * y)
        )
        cubes.append(big_and(literals))
    law = big_or(cubes)

    obs = {
        "S": tuple(range(blocks["s"][0], blocks["s"][0] + width)),
        "P": tuple(range(blocks["p"][0], blocks["p"][0] + p_width)),
    }
    xy_bits = range(0, 2 * width)
    p_names_pair = big_and(knows_whether("P", Atom(b)) for b in xy_bits)
    s_names_pair = big_and(knows_whether("S", Atom(b)) for b in xy_bits)
    announcements = (
        (Knows("S", Not(p_names_pair)), PLAIN),
        (p_names_pair, PLAIN),
        (s_names_pair, PLAIN),
    )
    return PuzzleInstance(
        name="sap",
        vocab=vocab,
        law=law,
        obs=obs,
        actual=None,
        announcements=announcements,
        n=bound,
    )


def sap_decode(state: frozenset[int], bound: int) -> tuple[int, int]:
    """Read the (x, y) pair off a state of the sum-and-product vocabulary."""
    width, _ = sap_layout(bound)

    def value(start: int) -> int:
        v = 0
        for j in range(width):
            v = (v << 1) | (1 if start + j in state else 0)
        return v

    return value(0), value(width)


def sap_solutions(
    bound: int,
    rule: Union[EliminationRule, str] = EliminationRule.T0,
    node_cap: Optional[int] = None,
) -> set[tuple[int, int]]:
    """States surviving the three announcements, decoded to (x, y) pairs."""
    inst = sum_and_product(bound)
    structure = inst.build(rule=rule, node_cap=node_cap)
    for psi, _ in inst.announcements:
        structure = structure.update(psi)
    return {sap_decode(state, bound) for state in structure.states()}
