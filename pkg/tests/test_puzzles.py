import random
from fractions import Fraction

import pytest

from zddel.dd import Atom, DdManager, big_and
from zddel.epistemic import Knows, Scene, knows_whether
from zddel.kripke import ks_to_kripke
from zddel.puzzles import (
    InvalidInstanceError,
    dining_cryptographers,
    muddy_children,
    sap_decode,
    sap_layout,
    sap_pairs,
    sap_solutions,
    sum_and_product,
)

from oracles import solve_sum_product_dialogue

RULES = ["EQ", "T0", "T1", "E0", "E1"]


def run_updates(inst, rule="EQ"):
    """Structures per round, whether-announcements resolved at the actual."""
    structure = inst.build(rule=rule)
    rounds = [structure]
    for psi, mode in inst.announcements:
        if mode == "whether":
            scene = Scene(structure, inst.actual)
            structure = scene.announce_whether(psi).structure
        else:
            structure = structure.update(psi)
        rounds.append(structure)
    return rounds


# -- muddy children ------------------------------------------------------------


def test_muddy_children_validation():
    with pytest.raises(InvalidInstanceError):
        muddy_children(3, 0)
    with pytest.raises(InvalidInstanceError):
        muddy_children(3, 4)


def test_muddy_children_sparsity_trajectory():
    rounds = run_updates(muddy_children(3))
    sparsities = [s.sparsity() for s in rounds]
    assert sparsities == [Fraction(7, 8), Fraction(1, 2), Fraction(1, 8)]
    assert sum(sparsities) / len(sparsities) == Fraction(1, 2)


def test_muddy_children_final_law_is_the_full_conjunction():
    for rule in RULES:
        rounds = run_updates(muddy_children(4), rule=rule)
        m = rounds[-1].manager
        assert rounds[-1].theta == m.from_formula(
            big_and(Atom(i) for i in range(4))
        )
    e0 = run_updates(muddy_children(4), rule="E0")[-1]
    assert e0.manager.node_count(e0.theta) == 0


def test_muddy_children_partial_mud_matches_full_mud_prefix():
    full = run_updates(muddy_children(5, 5))
    part = run_updates(muddy_children(5, 3))
    assert len(part) == 3  # rounds 0..2 for m-1 = 2 announcements
    for a, b in zip(part, full):
        assert a.theta.u == b.theta.u


def test_muddy_children_announcements_truthful():
    for n, m in ((3, 3), (4, 2), (5, 4)):
        inst = muddy_children(n, m)
        structure = inst.build()
        for psi, mode in inst.announcements:
            scene = Scene(structure, inst.actual)
            assert scene.eval(psi) == 1
            structure = structure.update(psi)


def test_muddy_children_endgame_knowledge():
    # all muddy: afterwards everyone knows their own state
    inst = muddy_children(4)
    final = run_updates(inst)[-1]
    scene = Scene(final, inst.actual)
    assert scene.eval(big_and(Knows(i, Atom(i - 1)) for i in range(1, 5))) == 1
    # partial mud: after m-1 rounds each muddy child knows it is muddy
    for n, m in ((3, 2), (4, 3), (5, 2)):
        inst = muddy_children(n, m)
        final = run_updates(inst)[-1]
        scene = Scene(final, inst.actual)
        model = ks_to_kripke(final)
        for i in range(1, m + 1):
            phi = Knows(i, Atom(i - 1))
            assert scene.eval(phi) == 1
            assert model.eval(inst.actual, phi) == 1


# -- dining cryptographers -------------------------------------------------------


def test_dining_validation():
    with pytest.raises(InvalidInstanceError):
        dining_cryptographers(4)
    with pytest.raises(InvalidInstanceError):
        dining_cryptographers(1)


def test_dining_observations_for_three():
    inst = dining_cryptographers(3)
    assert inst.vocab.names == ("p0", "p1", "p2", "p3", "c1", "c2", "c3")
    # agent i sees the own payment bit and the two adjacent coins
    assert inst.obs[1] == (1, 6, 4)
    assert inst.obs[2] == (2, 4, 5)
    assert inst.obs[3] == (3, 5, 6)


def test_dining_sparsity_trajectory():
    rounds = run_updates(dining_cryptographers(3))
    sparsities = [s.sparsity() for s in rounds]
    # three parity constraints; the third also reveals the payment parity
    assert sparsities == [
        Fraction(1, 4),
        Fraction(1, 8),
        Fraction(1, 16),
        Fraction(1, 64),
    ]


def test_dining_sparsity_never_increases():
    for n in (3, 5):
        rounds = run_updates(dining_cryptographers(n))
        sparsities = [s.sparsity() for s in rounds]
        assert all(a >= b for a, b in zip(sparsities, sparsities[1:]))


@pytest.mark.parametrize("n", [3, 5])
def test_dining_nonpayers_learn_whether_outsider_paid(n):
    base = dining_cryptographers(n)
    structure = base.build()
    for actual in structure.states():
        inst = dining_cryptographers(n, actual=actual)
        final = run_updates(inst)[-1]
        scene = Scene(final, actual)
        for agent in range(1, n + 1):
            if agent in actual:  # the payer already knows everything
                continue
            assert scene.eval(knows_whether(agent, Atom(0))) == 1


def test_dining_announced_parities_reveal_outsider_bit():
    # in every surviving state the parities imply whether the outsider paid
    for n in (3, 5):
        inst = dining_cryptographers(n)
        final = run_updates(inst)[-1]
        payers = range(1, n + 1)
        for state in final.states():
            crypto_paid = any(i in state for i in payers)
            assert crypto_paid == (0 not in state)


# -- sum and product ---------------------------------------------------------------


def test_sap_layout_widths():
    assert sap_layout(100) == (7, 14)
    assert sap_layout(64) == (6, 12)
    assert sap_layout(65) == (7, 13)
    assert sap_layout(128) == (7, 14)


def test_sap_encoding_of_five():
    inst = sum_and_product(100)
    # x = 5 is the 7-bit string 0000101: bits 5 and 7 of the x block
    assert inst.vocab.names[:7] == ("x1", "x2", "x3", "x4", "x5", "x6", "x7")
    state = next(
        s for s in [frozenset({4, 6})] if sap_decode(s, 100)[0] == 5
    )
    assert sap_decode(state, 100) == (5, 0)


def test_sap_pair_count_and_sparsity():
    pairs = sap_pairs(100)
    assert len(pairs) == 2352
    inst = sum_and_product(100)
    structure = inst.build(rule="T0")
    assert structure.num_states() == 2352
    sparsity = structure.sparsity()
    assert sparsity == Fraction(2352, 1 << 35)
    assert sparsity < Fraction(1369, 10**10)


def test_sap_solutions_bound_100():
    assert sap_solutions(100) == {(4, 13)}
    assert solve_sum_product_dialogue(100) == {(4, 13)}


def test_sap_solutions_small_bounds_match_oracle():
    for bound in (50, 64, 65, 70):
        assert sap_solutions(bound) == solve_sum_product_dialogue(bound), bound


def test_sap_bound_65_has_a_solution():
    assert solve_sum_product_dialogue(65)


def test_sap_states_decode_to_feasible_pairs():
    inst = sum_and_product(65)
    structure = inst.build(rule="T0")
    pairs = set(sap_pairs(65))
    for state in structure.states():
        assert sap_decode(state, 65) in pairs


def test_sap_sparsity_never_increases():
    inst = sum_and_product(65)
    structure = inst.build(rule="T0")
    last = structure.sparsity()
    for psi, _ in inst.announcements:
        structure = structure.update(psi)
        cur = structure.sparsity()
        assert cur <= last
        last = cur


def test_sap_rule_independence():
    rng = random.Random(3)
    expected = solve_sum_product_dialogue(50)
    for rule in RULES:
        assert sap_solutions(50, rule=rule) == expected
