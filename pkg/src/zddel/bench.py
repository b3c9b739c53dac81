"""Node-count measurements per announcement round, and `.dat` serialization.

For each requested diagram variant the scenario is rebuilt from scratch in a
fresh manager (one manager per variant) and the state-law node count is
recorded at round 0 and after every announcement.  Whether-announcements are
resolved against the instance's designated state.  A final row with round -1
holds the per-column average over all rounds, rounded to the nearest integer
with ties up.  Cells of variants that were not requested, or whose manager
overran the node budget, are recorded as -1.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .dd import (
    DdManager,
    EliminationRule,
    Not,
    NodeRef,
    ResourceLimitError,
    Vocabulary,
)
from .epistemic import KnowledgeStructure, Scene
from .puzzles import (
    PLAIN,
    PuzzleInstance,
    WHETHER,
    dining_cryptographers,
    muddy_children,
    sum_and_product,
)

logger = logging.getLogger(__name__)

VARIANTS = ("BDD", "BDDc", "T0", "T1", "E0", "E1")
NODE_CAP_ENV = "ZDDEL_NODE_CAP"
DEFAULT_NODE_CAP = 10_000_000

MISSING = -1


class BenchError(Exception):
    """Invalid benchmark parameters or a failed conversion cross-check."""


def resolve_node_cap(node_cap: Optional[int] = None) -> int:
    if node_cap is not None:
        return node_cap
    env = os.environ.get(NODE_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise BenchError(f"{NODE_CAP_ENV} must be an integer, got {env!r}")
    return DEFAULT_NODE_CAP


_VARIANT_ALIASES = {"eq": "BDD"}


def normalize_variant(name: str) -> str:
    lowered = name.lower()
    if lowered in _VARIANT_ALIASES:
        return _VARIANT_ALIASES[lowered]
    for v in VARIANTS:
        if lowered == v.lower():
            return v
    raise BenchError(f"unknown variant {name!r}; choose from {', '.join(VARIANTS)}")


def make_manager(
    variant: str,
    vocab: Union[Vocabulary, Sequence[str]],
    node_cap: Optional[int] = None,
) -> DdManager:
    variant = normalize_variant(variant)
    cap = resolve_node_cap(node_cap)
    if variant == "BDD":
        return DdManager(vocab, EliminationRule.EQ, node_cap=cap)
    if variant == "BDDc":
        return DdManager(
            vocab, EliminationRule.EQ, complement_edges=True, node_cap=cap
        )
    return DdManager(vocab, EliminationRule(variant), node_cap=cap)


@dataclass
class BenchRecord:
    n: int
    m: Optional[int]
    round: int  # -1 marks the per-instance average row
    sizes: tuple[int, ...]  # aligned with VARIANTS; -1 where not measured


@dataclass
class BenchTable:
    has_m: bool
    records: list[BenchRecord] = field(default_factory=list)
    aborted: list[str] = field(default_factory=list)

    @property
    def columns(self) -> tuple[str, ...]:
        base = ("n", "m", "round") if self.has_m else ("n", "round")
        return base + VARIANTS


def _round_half_up(total: int, count: int) -> int:
    return (2 * total + count) // (2 * count)


def _pipeline(
    inst: PuzzleInstance, manager: DdManager
) -> tuple[list[int], list[NodeRef]]:
    """Law node counts per round, plus the law handles for cross-checks."""
    structure = inst.structure(manager)
    counts = [manager.node_count(structure.theta)]
    laws = [structure.theta]
    for psi, mode in inst.announcements:
        if mode == WHETHER:
            scene = Scene(structure, inst.actual)
            effective = psi if scene.eval(psi) else Not(psi)
        else:
            effective = psi
        structure = structure.update(effective)
        counts.append(manager.node_count(structure.theta))
        laws.append(structure.theta)
    return counts, laws


def _converted_counts(
    inst: PuzzleInstance, laws_t0: list[NodeRef], target: str, node_cap: int
) -> list[int]:
    """Per-round counts of the target variant built from T0 diagrams by flips."""
    t0 = laws_t0[0].manager
    rule = EliminationRule(target)
    manager = DdManager(inst.vocab, rule, node_cap=node_cap)
    counts = []
    for law in laws_t0:
        if rule is EliminationRule.T1:
            copied = t0.flip_leaves(t0.negate(law), manager)
        elif rule is EliminationRule.E0:
            copied = t0.flip_edges(t0.complement_vars(law), manager)
        else:
            flipped = t0.negate(t0.complement_vars(law))
            copied = t0._copy_flipped(
                flipped, manager, swap_leaves=True, swap_edges=True
            )
        counts.append(manager.node_count(copied))
    return counts


def measure_instance(
    inst: PuzzleInstance,
    variants: Sequence[str] = VARIANTS,
    node_cap: Optional[int] = None,
    convert_via_t0: bool = False,
) -> tuple[list[BenchRecord], list[str]]:
    """Records for one instance (rounds ascending, then the average row)."""
    variants = [normalize_variant(v) for v in variants]
    cap = resolve_node_cap(node_cap)
    rounds = len(inst.announcements) + 1
    by_variant: dict[str, list[int]] = {}
    aborted: list[str] = []
    laws_t0: Optional[list[NodeRef]] = None
    for variant in variants:
        manager = make_manager(variant, inst.vocab, node_cap=cap)
        try:
            counts, laws = _pipeline(inst, manager)
        except ResourceLimitError as exc:
            logger.warning("%s aborted for %s n=%s: %s", variant, inst.name, inst.n, exc)
            aborted.append(variant)
            continue
        by_variant[variant] = counts
        if variant == "T0":
            laws_t0 = laws
    if convert_via_t0:
        targets = [v for v in ("T1", "E0", "E1") if v in by_variant]
        if targets:
            if laws_t0 is None:
                manager = make_manager("T0", inst.vocab, node_cap=cap)
                _, laws_t0 = _pipeline(inst, manager)
            for target in targets:
                converted = _converted_counts(inst, laws_t0, target, cap)
                if converted != by_variant[target]:
                    raise BenchError(
                        f"conversion cross-check failed for {target}: "
                        f"native {by_variant[target]}, converted {converted}"
                    )
    records = []
    for k in range(rounds):
        sizes = tuple(
            by_variant[v][k] if v in by_variant else MISSING for v in VARIANTS
        )
        records.append(BenchRecord(n=inst.n, m=inst.m, round=k, sizes=sizes))
    averages = tuple(
        _round_half_up(sum(by_variant[v]), rounds) if v in by_variant else MISSING
        for v in VARIANTS
    )
    records.append(BenchRecord(n=inst.n, m=inst.m, round=-1, sizes=averages))
    return records, aborted


def format_dat(table: BenchTable) -> str:
    lines = [" ".join(table.columns)]
    for rec in table.records:
        cells = [str(rec.n)]
        if table.has_m:
            cells.append(str(rec.m))
        cells.append(str(rec.round))
        cells.extend(str(s) for s in rec.sizes)
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def write_dat(table: BenchTable, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(format_dat(table))
    except OSError as exc:
        raise BenchError(f"cannot write {path}: {exc}") from exc


def _run(
    instances: Iterable[PuzzleInstance],
    has_m: bool,
    variants: Sequence[str],
    node_cap: Optional[int],
    convert_via_t0: bool,
) -> BenchTable:
    table = BenchTable(has_m=has_m)
    for inst in instances:
        records, aborted = measure_instance(
            inst, variants=variants, node_cap=node_cap, convert_via_t0=convert_via_t0
        )
        table.records.extend(records)
        table.aborted.extend(f"{inst.name} n={inst.n}: {v}" for v in aborted)
    return table


def bench_muddy_children(
    n_from: int = 5,
    n_to: int = 40,
    step: int = 5,
    m: Optional[int] = None,
    variants: Sequence[str] = VARIANTS,
    node_cap: Optional[int] = None,
    convert_via_t0: bool = False,
) -> BenchTable:
    if step <= 0 or n_from < 1 or n_to < n_from:
        raise BenchError("need 1 <= n-from <= n-to and a positive step")
    instances = (
        muddy_children(n, m if m is not None else n)
        for n in range(n_from, n_to + 1, step)
    )
    return _run(instances, True, variants, node_cap, convert_via_t0)


def bench_dining(
    n_list: Sequence[int] = (3, 5, 7, 9, 11, 13),
    variants: Sequence[str] = VARIANTS,
    node_cap: Optional[int] = None,
    convert_via_t0: bool = False,
) -> BenchTable:
    instances = (dining_cryptographers(n) for n in n_list)
    return _run(instances, False, variants, node_cap, convert_via_t0)


def bench_sum_product(
    bound_from: int = 65,
    bound_to: int = 100,
    step: int = 5,
    variants: Sequence[str] = VARIANTS,
    node_cap: Optional[int] = None,
    convert_via_t0: bool = False,
) -> BenchTable:
    if step <= 0 or bound_from < 5 or bound_to < bound_from:
        raise BenchError("need 5 <= from <= to and a positive step")
    instances = (
        sum_and_product(b) for b in range(bound_from, bound_to + 1, step)
    )
    return _run(instances, False, variants, node_cap, convert_via_t0)
