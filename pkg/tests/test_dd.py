import random

import pytest

from zddel.dd import (
    And,
    Atom,
    ConfigError,
    DdManager,
    EliminationRule,
    ManagerMismatchError,
    Not,
    OrderingError,
    ResourceLimitError,
    Top,
    UnsupportedOperationError,
    Vocabulary,
    VocabularyError,
    big_and,
    big_or,
    bot,
    implies,
    is_isomorphic,
    or_,
    variant_via_t0,
    xor_,
)

from oracles import (
    index_state,
    matches_reference,
    random_formula,
    reference_diagram,
    table_states,
    truth_table,
)

RULES = ["EQ", "T0", "T1", "E0", "E1"]
PQR = ["p", "q", "r"]
Q_AND_NOT_R = And(Atom(1), Not(Atom(2)))


def managers_pqr():
    for rule in RULES:
        yield DdManager(PQR, rule)
    yield DdManager(PQR, "EQ", complement_edges=True)


# -- manager construction ---------------------------------------------------


def test_new_manager_empty_store():
    m = DdManager(PQR, "T0")
    assert len(m) == 0
    assert m.num_vars == 3


def test_complement_edges_require_eq():
    DdManager(["p"], "EQ", complement_edges=True)
    with pytest.raises(ConfigError):
        DdManager(["p"], "E1", complement_edges=True)


def test_vocabulary_validation():
    with pytest.raises(VocabularyError):
        Vocabulary([])
    with pytest.raises(VocabularyError):
        Vocabulary(["p", "p"])
    voc = Vocabulary(PQR)
    assert voc.index("q") == 1
    with pytest.raises(VocabularyError):
        voc.index("z")


# -- constants ---------------------------------------------------------------


def test_constants_under_eq_are_terminals():
    m = DdManager(PQR, "EQ")
    assert m.node_count(m.constant(1)) == 0
    assert m.node_count(m.constant(0)) == 0


def test_constant_one_under_t0_is_a_chain():
    m = DdManager(PQR, "T0")
    one = m.constant(1)
    assert m.node_count(one) == 3
    assert m.level_counts(one) == {"p": 1, "q": 1, "r": 1}
    # each node branches to the next level on both edges
    hi, lo = m.cofactors(one, "p")
    assert hi == lo


def test_constant_one_under_t1_is_a_terminal():
    m = DdManager(PQR, "T1")
    assert m.node_count(m.constant(1)) == 0


@pytest.mark.parametrize("rule", RULES)
def test_constants_evaluate_constantly(rule):
    m = DdManager(PQR, rule)
    for b in (0, 1):
        c = m.constant(b)
        for s in range(8):
            assert m.evaluate(c, index_state(3, s)) == b


# -- make_node ---------------------------------------------------------------


def test_make_node_elimination_patterns():
    eq = DdManager(PQR, "EQ")
    s = eq.var("r")
    assert eq.make_node("q", s, s) == s

    t0 = DdManager(PQR, "T0")
    s = t0.make_node("r", t0._ref(t0._terminal(1)), t0._ref(t0._terminal(0)))
    zero = t0._ref(t0._terminal(0))
    assert t0.make_node("q", zero, s) == s
    fresh = t0.make_node("q", s, zero)
    assert fresh != s and t0._top(fresh.u) == 1


def test_make_node_rejects_order_violation():
    m = DdManager(PQR, "EQ")
    d = m.var("p")
    with pytest.raises(OrderingError):
        m.make_node("r", d, d)


def test_manager_mismatch_is_rejected():
    m1 = DdManager(PQR, "EQ")
    m2 = DdManager(PQR, "EQ")
    with pytest.raises(ManagerMismatchError):
        m1.apply("and", m1.one, m2.one)


# -- from_formula: the running example ---------------------------------------


@pytest.mark.parametrize(
    "rule,count,profile",
    [
        ("EQ", 2, {"q": 1, "r": 1}),
        ("T0", 2, {"p": 1, "q": 1}),
        ("T1", 4, {"p": 1, "q": 1, "r": 2}),
        ("E0", 2, {"p": 1, "r": 1}),
        ("E1", 3, {"p": 1, "q": 1, "r": 1}),
    ],
)
def test_q_and_not_r_diagram_shapes(rule, count, profile):
    m = DdManager(PQR, rule)
    d = m.from_formula(Q_AND_NOT_R)
    assert m.node_count(d) == count
    assert m.level_counts(d) == profile


def test_q_and_not_r_evaluation_all_variants():
    for m in managers_pqr():
        d = m.from_formula(Q_AND_NOT_R)
        assert m.evaluate(d, {"p", "q"}) == 1
        assert m.evaluate(d, {"p", "q", "r"}) == 0
        assert m.evaluate(d, {"q"}) == 1


def test_negated_example_under_t0_has_four_nodes():
    m = DdManager(PQR, "T0")
    d = m.negate(m.from_formula(Q_AND_NOT_R))
    assert m.node_count(d) == 4
    assert m.level_counts(d) == {"p": 1, "q": 1, "r": 2}


def test_from_formula_rejects_unknown_atom():
    m = DdManager(PQR, "EQ")
    with pytest.raises(VocabularyError):
        m.from_formula(Atom(7))


def test_canonicity_on_equivalent_formulas():
    for m in managers_pqr():
        a = m.from_formula(And(Atom(1), Not(Atom(2))))
        b = m.from_formula(Not(or_(Not(Atom(1)), Atom(2))))
        assert a == b


# -- cofactors ---------------------------------------------------------------


def test_cofactors_of_constants_under_eq():
    m = DdManager(PQR, "EQ")
    one = m.one
    assert m.cofactors(one, "q") == (one, one)


def test_cofactors_jump_semantics():
    t0 = DdManager(PQR, "T0")
    sub = t0.from_formula(And(Not(Atom(0)), Atom(1)))  # ~p & q skips p
    assert t0._top(sub.u) == 1
    sub_hi, sub_lo = t0.cofactors(sub, "p")
    assert sub_hi == t0._ref(t0._terminal(0))
    assert sub_lo == sub

    t1 = DdManager(PQR, "T1")
    zero_term = t1._ref(t1._terminal(0))
    hi, lo = t1.cofactors(zero_term, "q")
    assert hi == t1._ref(t1._terminal(1))
    assert lo == zero_term


def test_cofactors_below_top_is_an_error():
    m = DdManager(PQR, "EQ")
    d = m.var("q")
    with pytest.raises(OrderingError):
        m.cofactors(d, "r")


# -- apply / negate ----------------------------------------------------------


def test_apply_identities():
    for m in managers_pqr():
        f = m.from_formula(Q_AND_NOT_R)
        assert m.apply("and", f, m.one) == f
        assert m.apply("xor", f, f) == m.zero
        assert m.apply("or", f, m.zero) == f


def test_apply_matches_formula_conjunction():
    for m in managers_pqr():
        q = m.from_formula(Atom(1))
        not_r = m.from_formula(Not(Atom(2)))
        assert m.apply("and", q, not_r) == m.from_formula(Q_AND_NOT_R)


def test_apply_unknown_operator():
    m = DdManager(PQR, "EQ")
    with pytest.raises(ValueError):
        m.apply("nand", m.one, m.zero)


def test_negate_involution_and_constants():
    for m in managers_pqr():
        assert m.negate(m.zero) == m.one
        f = m.from_formula(Q_AND_NOT_R)
        assert m.negate(m.negate(f)) == f


def test_apply_homomorphism_exhaustive_small():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(1, 6)
        voc = [f"v{i}" for i in range(n)]
        f = random_formula(rng, n, 3)
        g = random_formula(rng, n, 3)
        tf, tg = truth_table(f, n), truth_table(g, n)
        for rule in RULES:
            m = DdManager(voc, rule)
            df, dg = m.from_formula(f), m.from_formula(g)
            for op, table in (("and", tf & tg), ("or", tf | tg), ("xor", tf ^ tg)):
                r = m.apply(op, df, dg)
                for s in range(1 << n):
                    assert m.evaluate(r, index_state(n, s)) == (table >> s) & 1


# -- restrict / quantifiers ---------------------------------------------------


def test_restrict_examples():
    for m in managers_pqr():
        f = m.from_formula(Q_AND_NOT_R)
        assert m.restrict(f, "r", 0) == m.from_formula(Atom(1))
        assert m.restrict(f, "r", 1) == m.zero
        assert m.restrict(f, "p", 1) == f  # f ignores p


def test_quantifier_examples():
    for m in managers_pqr():
        f = m.from_formula(Q_AND_NOT_R)
        assert m.forall(f, ["p"]) == f
        assert m.forall(f, ["q"]) == m.zero
        assert m.exists(f, ["q", "r"]) == m.one


def test_quantify_matches_restrict_definition():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(1, 6)
        voc = [f"v{i}" for i in range(n)]
        f = random_formula(rng, n, 3)
        subset = [v for v in range(n) if rng.random() < 0.5]
        for rule in RULES:
            m = DdManager(voc, rule)
            d = m.from_formula(f)
            expect_all, expect_any = d, d
            for v in subset:
                expect_all = m.apply(
                    "and", m.restrict(expect_all, v, 1), m.restrict(expect_all, v, 0)
                )
                expect_any = m.apply(
                    "or", m.restrict(expect_any, v, 1), m.restrict(expect_any, v, 0)
                )
            assert m.forall(d, subset) == expect_all
            assert m.exists(d, subset) == expect_any
            assert m.exists(d, subset) == m.negate(m.forall(m.negate(d), subset))


# -- evaluation and counting ---------------------------------------------------


def test_or_chain_counts():
    n = 7
    voc = [f"v{i}" for i in range(n)]
    chain = big_or(Atom(i) for i in range(n))
    eq = DdManager(voc, "EQ")
    assert eq.node_count(eq.from_formula(chain)) == n
    t1 = DdManager(voc, "T1")
    assert t1.node_count(t1.from_formula(chain)) == 0
    e0 = DdManager(voc, "E0")
    assert e0.node_count(e0.from_formula(big_and(Atom(i) for i in range(n)))) == 0


def test_sat_count_examples():
    for m in managers_pqr():
        assert m.sat_count(m.from_formula(Q_AND_NOT_R)) == 2
        assert m.sat_count(m.one) == 8
        assert m.sat_count(m.zero) == 0


def test_states_enumeration():
    for m in managers_pqr():
        f = m.from_formula(Q_AND_NOT_R)
        assert set(m.states(f)) == {frozenset({1}), frozenset({0, 1})}
        assert m.states(m.zero) == []


def test_states_respects_limit():
    m = DdManager([f"v{i}" for i in range(10)], "EQ")
    with pytest.raises(ResourceLimitError):
        m.states(m.one, limit=100)


def test_node_cap_enforced():
    voc = [f"v{i}" for i in range(12)]
    m = DdManager(voc, "EQ", node_cap=20)
    rng = random.Random(3)
    with pytest.raises(ResourceLimitError):
        for _ in range(50):
            m.from_formula(random_formula(rng, 12, 5))


# -- graph transformations -----------------------------------------------------


def test_complement_vars_example():
    for m in managers_pqr():
        d = m.complement_vars(m.from_formula(Q_AND_NOT_R))
        assert d == m.from_formula(And(Not(Atom(1)), Atom(2)))


def test_variant_via_t0_matches_native_builds():
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randrange(1, 7)
        voc = [f"v{i}" for i in range(n)]
        f = random_formula(rng, n, 4)
        for rule in ("T1", "E0", "E1"):
            native = DdManager(voc, rule)
            d_native = native.from_formula(f)
            built_mgr, d_built = variant_via_t0(rule, f, voc)
            assert is_isomorphic(native, d_native, built_mgr, d_built)
            assert native.node_count(d_native) == built_mgr.node_count(d_built)


def test_flip_edges_unsupported_with_complement_edges():
    src = DdManager(PQR, "EQ", complement_edges=True)
    dst = DdManager(PQR, "E0")
    f = src.from_formula(Q_AND_NOT_R)
    with pytest.raises(UnsupportedOperationError):
        src.flip_edges(f, dst)


# -- complement-edge mode -------------------------------------------------------


def test_bddc_then_edges_are_regular():
    m = DdManager(PQR, "EQ", complement_edges=True)
    rng = random.Random(23)
    for _ in range(20):
        m.from_formula(random_formula(rng, 3, 4))
    m.check_invariants()
    for i in range(m._n_terms, len(m._var)):
        assert m._hi[i] & 1 == 0


def test_bddc_negation_is_free():
    m = DdManager(PQR, "EQ", complement_edges=True)
    f = m.from_formula(Q_AND_NOT_R)
    before = len(m)
    g = m.negate(f)
    assert len(m) == before
    assert g.u == f.u ^ 1


def test_bddc_never_larger_than_plain():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randrange(1, 8)
        voc = [f"v{i}" for i in range(n)]
        f = random_formula(rng, n, 4)
        plain = DdManager(voc, "EQ")
        withc = DdManager(voc, "EQ", complement_edges=True)
        assert withc.node_count(withc.from_formula(f)) <= plain.node_count(
            plain.from_formula(f)
        )


# -- reduction soundness and reference agreement --------------------------------


def test_store_invariants_after_random_workload():
    rng = random.Random(41)
    for rule in RULES:
        m = DdManager([f"v{i}" for i in range(5)], rule)
        refs = [m.from_formula(random_formula(rng, 5, 4)) for _ in range(15)]
        for f, g in zip(refs, refs[1:]):
            m.apply("xor", f, g)
            m.forall(f, [0, 2])
        m.check_invariants()


def test_reference_diagram_agreement():
    rng = random.Random(59)
    for _ in range(50):
        n = rng.randrange(1, 7)
        voc = [f"v{i}" for i in range(n)]
        f = random_formula(rng, n, 4)
        table = truth_table(f, n)
        for rule in RULES:
            m = DdManager(voc, rule)
            d = m.from_formula(f)
            root, nodes = reference_diagram(n, table, rule)
            assert matches_reference(m, d, root, nodes)
            assert m.node_count(d) == len(nodes)
            assert m.sat_count(d) == bin(table).count("1")
            assert set(m.states(d)) == table_states(n, table)


def test_evaluation_agrees_across_all_six_representations():
    rng = random.Random(73)
    for _ in range(25):
        n = rng.randrange(1, 7)
        voc = [f"v{i}" for i in range(n)]
        f = random_formula(rng, n, 4)
        table = truth_table(f, n)
        managers = [DdManager(voc, rule) for rule in RULES]
        managers.append(DdManager(voc, "EQ", complement_edges=True))
        for m in managers:
            d = m.from_formula(f)
            for s in range(1 << n):
                assert m.evaluate(d, index_state(n, s)) == (table >> s) & 1


# -- formula helpers -------------------------------------------------------------


def test_derived_formula_builders():
    n = 3
    assert truth_table(bot(), n) == 0
    a, b = Atom(0), Atom(1)
    full = (1 << (1 << n)) - 1
    ta, tb = truth_table(a, n), truth_table(b, n)
    assert truth_table(or_(a, b), n) == ta | tb
    assert truth_table(implies(a, b), n) == (full ^ ta) | tb
    assert truth_table(xor_(a, b), n) == ta ^ tb
    assert truth_table(big_and([]), n) == full
    assert truth_table(big_or([]), n) == 0


def test_to_dot_smoke():
    for m in managers_pqr():
        text = m.to_dot(m.from_formula(Q_AND_NOT_R))
        assert text.startswith("digraph")
        assert "style=solid" in text and "style=dashed" in text
