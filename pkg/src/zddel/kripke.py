"""Explicit pointed Kripke models, used as a small-scale correctness oracle.

Worlds are identified with their states (sets of true variables), so there
is exactly one world per state.  Indistinguishability relations are stored
as partitions keyed by a per-agent block label, which keeps them equivalence
relations by construction.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from .dd import And, Atom, Not, ResourceLimitError, Top
from .epistemic import (
    AgentId,
    Announce,
    KnowledgeStructure,
    Knows,
    ValidationError,
)

World = frozenset

DEFAULT_WORLD_LIMIT = 4096


class KripkeModel:
    """Finite S5 model: worlds plus one partition per agent."""

    def __init__(
        self,
        worlds: Iterable[World],
        blocks: Mapping[AgentId, Mapping[World, Hashable]],
    ):
        self.worlds = tuple(worlds)
        self._world_set = frozenset(self.worlds)
        if len(self._world_set) != len(self.worlds):
            raise ValidationError("duplicate worlds")
        self.blocks = {
            agent: dict(mapping) for agent, mapping in blocks.items()
        }
        for agent, mapping in self.blocks.items():
            for w in self.worlds:
                if w not in mapping:
                    raise ValidationError(
                        f"agent {agent!r} has no block for world {sorted(w)}"
                    )

    @classmethod
    def from_observations(
        cls,
        worlds: Iterable[World],
        obs: Mapping[AgentId, frozenset[int]],
    ) -> "KripkeModel":
        worlds = tuple(worlds)
        blocks = {
            agent: {w: w & observed for w in worlds}
            for agent, observed in obs.items()
        }
        return cls(worlds, blocks)

    def related(self, agent: AgentId, w1: World, w2: World) -> bool:
        mapping = self.blocks[agent]
        return mapping[w1] == mapping[w2]

    def announce(self, psi) -> "KripkeModel":
        """Restrict to the worlds where psi holds; partitions restrict along."""
        kept = [w for w in self.worlds if self.eval(w, psi)]
        blocks = {
            agent: {w: mapping[w] for w in kept}
            for agent, mapping in self.blocks.items()
        }
        return KripkeModel(kept, blocks)

    def eval(self, world: World, formula) -> int:
        world = frozenset(world)
        if world not in self._world_set:
            raise ValidationError(f"world {sorted(world)} not in the model")
        return self._eval(world, formula)

    def _eval(self, world: World, formula) -> int:
        if isinstance(formula, Top):
            return 1
        if isinstance(formula, Atom):
            return 1 if formula.var in world else 0
        if isinstance(formula, Not):
            return 1 - self._eval(world, formula.sub)
        if isinstance(formula, And):
            return self._eval(world, formula.left) and self._eval(
                world, formula.right
            )
        if isinstance(formula, Knows):
            try:
                mapping = self.blocks[formula.agent]
            except KeyError:
                raise ValidationError(
                    f"unknown agent {formula.agent!r}"
                ) from None
            label = mapping[world]
            return (
                1
                if all(
                    self._eval(w, formula.sub)
                    for w in self.worlds
                    if mapping[w] == label
                )
                else 0
            )
        if isinstance(formula, Announce):
            if not self._eval(world, formula.announced):
                return 1
            return self.announce(formula.announced)._eval(world, formula.sub)
        raise ValidationError(
            f"not an epistemic formula node: {type(formula).__name__}"
        )

    def __len__(self) -> int:
        return len(self.worlds)

    def __repr__(self) -> str:
        return f"<KripkeModel {len(self.worlds)} worlds>"


def ks_to_kripke(
    structure: KnowledgeStructure, max_worlds: int = DEFAULT_WORLD_LIMIT
) -> KripkeModel:
    """Explicit model of a knowledge structure: one world per law state."""
    count = structure.num_states()
    if count > max_worlds:
        raise ResourceLimitError(
            f"{count} states exceed the explicit-model limit of {max_worlds}"
        )
    return KripkeModel.from_observations(structure.states(), structure.obs)
