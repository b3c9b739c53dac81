"""Knowledge structures: symbolic semantics for epistemic formulas.

A knowledge structure is a vocabulary, a state law (a diagram handle in one
manager) and per-agent observational variable sets.  Epistemic formulas are
compiled to plain Boolean functions: knowledge becomes universal Boolean
quantification over the variables the agent does not observe, and a public
announcement conjoins the law with the announced formula's translation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .dd import (
    And,
    Atom,
    DdManager,
    NodeRef,
    Not,
    Top,
    big_and,
    or_,
)

AgentId = Union[int, str]


class ValidationError(Exception):
    """Formula refers to an unknown agent or variable."""


class InvalidSceneError(Exception):
    """The designated state does not satisfy the state law."""


@dataclass(frozen=True)
class Knows:
    agent: AgentId
    sub: object


@dataclass(frozen=True)
class Announce:
    announced: object
    sub: object


DelFormula = Union[Top, Atom, Not, And, Knows, Announce]


def knows_whether(agent: AgentId, f) -> object:
    """Agent knows f or knows its negation."""
    return or_(Knows(agent, f), Knows(agent, Not(f)))


def announce_whether(psi, f) -> And:
    """f holds after announcing psi and after announcing its negation."""
    return And(Announce(psi, f), Announce(Not(psi), f))


class KnowledgeStructure:
    """Vocabulary, state law and observational variables, in one manager."""

    def __init__(
        self,
        manager: DdManager,
        law: NodeRef,
        obs: Mapping[AgentId, Iterable[Union[int, str]]],
    ):
        manager._u(law)
        self.manager = manager
        self.theta = law
        self.obs: dict[AgentId, frozenset[int]] = {
            agent: frozenset(manager._level(v) for v in variables)
            for agent, variables in obs.items()
        }
        every = frozenset(range(manager.num_vars))
        self._hidden = {
            agent: tuple(sorted(every - observed))
            for agent, observed in self.obs.items()
        }

    @property
    def agents(self) -> tuple[AgentId, ...]:
        return tuple(self.obs)

    def translate(self, formula) -> NodeRef:
        """Boolean function of a formula relative to this structure."""
        m = self.manager
        if isinstance(formula, Top):
            return m.one
        if isinstance(formula, Atom):
            return m.var(formula.var)
        if isinstance(formula, Not):
            return m.negate(self.translate(formula.sub))
        if isinstance(formula, And):
            return m.apply(
                "and", self.translate(formula.left), self.translate(formula.right)
            )
        if isinstance(formula, Knows):
            try:
                hidden = self._hidden[formula.agent]
            except KeyError:
                raise ValidationError(
                    f"unknown agent {formula.agent!r}"
                ) from None
            body = m.negate(
                m.apply("and", self.theta, m.negate(self.translate(formula.sub)))
            )
            return m.forall(body, hidden)
        if isinstance(formula, Announce):
            announced = self.translate(formula.announced)
            updated = self._with_law(m.apply("and", self.theta, announced))
            # announced -> translation in the updated structure
            return m.negate(
                m.apply("and", announced, m.negate(updated.translate(formula.sub)))
            )
        raise ValidationError(
            f"not an epistemic formula node: {type(formula).__name__}"
        )

    def _with_law(self, law: NodeRef) -> "KnowledgeStructure":
        new = object.__new__(KnowledgeStructure)
        new.manager = self.manager
        new.theta = law
        new.obs = self.obs
        new._hidden = self._hidden
        return new

    def update(self, psi) -> "KnowledgeStructure":
        """Publicly announce psi: conjoin the law with its translation."""
        return self._with_law(
            self.manager.apply("and", self.theta, self.translate(psi))
        )

    def num_states(self) -> int:
        return self.manager.sat_count(self.theta)

    def states(self) -> list[frozenset[int]]:
        return self.manager.states(self.theta)

    def sparsity(self) -> Fraction:
        return self.manager.sparsity(self.theta)

    def __repr__(self) -> str:
        return (
            f"<KnowledgeStructure {len(self.agents)} agents over "
            f"{self.manager.num_vars} vars>"
        )


class Scene:
    """A knowledge structure with a designated state satisfying the law."""

    def __init__(self, structure: KnowledgeStructure, actual):
        self.structure = structure
        self.actual = structure.manager._state(actual)
        if not structure.manager.evaluate(structure.theta, self.actual):
            raise InvalidSceneError(
                f"state {sorted(self.actual)} does not satisfy the state law"
            )

    def eval(self, formula) -> int:
        return self.structure.manager.evaluate(
            self.structure.translate(formula), self.actual
        )

    def announce_whether(self, psi) -> "Scene":
        """Announce psi if it holds at the designated state, else its negation."""
        effective = psi if self.eval(psi) else Not(psi)
        return Scene(self.structure.update(effective), self.actual)

    def __repr__(self) -> str:
        return f"<Scene at {sorted(self.actual)}>"
