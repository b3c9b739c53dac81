"""Canonical ordered decision diagrams with selectable node-elimination rules.

A :class:`DdManager` owns a fixed, ordered vocabulary and a hash-consed node
store reduced under one elimination rule:

* ``EQ`` -- classic BDD reduction, drop nodes whose children coincide;
  optionally with complement edges ("BDDc" mode),
* ``T0`` -- classic zero-suppressed rule, drop nodes whose Then-edge hits 0,
* ``T1``, ``E0``, ``E1`` -- the three remaining asymmetric variants.

Every handle returned by a manager denotes a Boolean function over the full
vocabulary.  Variables that a path skips are interpreted per rule: EQ ignores
them, T0/T1 force them false (a true value short-circuits to 0 resp. 1), and
E0/E1 force them true (a false value short-circuits to 0 resp. 1).  All
operations (apply, restrict, quantification, counting, enumeration) are
implemented uniformly over the five rules through rule-aware cofactors.

Handles are exposed as :class:`NodeRef` values tied to their manager; mixing
managers raises.  A manager is single-owner: no concurrent mutation, but
distinct managers are fully independent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

DEFAULT_NODE_CAP = 10_000_000
DEFAULT_STATE_LIMIT = 1 << 20

# bit layout for packed unique-table / cache keys
_REF_BITS = 29
_REF_MASK = (1 << _REF_BITS) - 1


class DdError(Exception):
    """Base class for decision-diagram errors."""


class ConfigError(DdError):
    """Invalid manager configuration."""


class OrderingError(DdError):
    """Variable order violated when building a node."""


class VocabularyError(DdError):
    """Unknown variable, or invalid vocabulary."""


class ManagerMismatchError(DdError):
    """Handles from different managers were combined."""


class ResourceLimitError(DdError):
    """A node or state budget was exceeded."""


class UnsupportedOperationError(DdError):
    """Operation not available in this manager mode."""


class EliminationRule(enum.Enum):
    """Which (Then, Else) child pattern removes a node during reduction."""

    EQ = "EQ"
    T0 = "T0"
    T1 = "T1"
    E0 = "E0"
    E1 = "E1"


# For the four asymmetric rules: which branch value escapes when a level is
# skipped, and the constant the escape produces.  T0: a true skipped variable
# yields 0; T1: true yields 1; E0: false yields 0; E1: false yields 1.
_ESC_BRANCH = {
    EliminationRule.T0: 1,
    EliminationRule.T1: 1,
    EliminationRule.E0: 0,
    EliminationRule.E1: 0,
}
_ESC_VALUE = {
    EliminationRule.T0: 0,
    EliminationRule.T1: 1,
    EliminationRule.E0: 0,
    EliminationRule.E1: 1,
}


class Vocabulary:
    """Immutable ordered set of variable names; position = diagram level."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise VocabularyError("vocabulary must not be empty")
        if len(set(names)) != len(names):
            raise VocabularyError("duplicate variable names in vocabulary")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise VocabularyError(f"unknown variable {name!r}") from None

    def atom(self, name: str) -> "Atom":
        return Atom(self.index(name))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vocabulary) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Vocabulary({list(self.names)!r})"


# ---------------------------------------------------------------------------
# Boolean formula AST.  Core connectives are Top / Atom / Not / And; the rest
# are derived, matching the usual definitions bot = ~Top, a|b = ~(~a & ~b),
# a->b = ~(a & ~b).  The epistemic layer reuses these node types and adds its
# own operators, so `sub`/`left`/`right` are deliberately untyped here.


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Atom:
    var: int


@dataclass(frozen=True)
class Not:
    sub: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


BoolFormula = Union[Top, Atom, Not, And]


def bot() -> Not:
    return Not(Top())


def or_(a, b) -> Not:
    return Not(And(Not(a), Not(b)))


def implies(a, b) -> Not:
    return Not(And(a, Not(b)))


def xor_(a, b):
    return or_(And(a, Not(b)), And(Not(a), b))


def _fold_balanced(op, items, empty):
    """Fold with a balanced tree so huge conjunctions stay shallow."""
    items = list(items)
    if not items:
        return empty
    while len(items) > 1:
        items = [
            op(items[i], items[i + 1]) if i + 1 < len(items) else items[i]
            for i in range(0, len(items), 2)
        ]
    return items[0]


def big_and(items) -> object:
    return _fold_balanced(And, items, Top())


def big_or(items) -> object:
    return _fold_balanced(or_, items, bot())


def big_xor(items) -> object:
    return _fold_balanced(xor_, items, bot())


@dataclass(frozen=True)
class NodeRef:
    """Handle to a Boolean function inside one manager."""

    manager: "DdManager"
    u: int

    def __and__(self, other: "NodeRef") -> "NodeRef":
        return self.manager.apply("and", self, other)

    def __or__(self, other: "NodeRef") -> "NodeRef":
        return self.manager.apply("or", self, other)

    def __xor__(self, other: "NodeRef") -> "NodeRef":
        return self.manager.apply("xor", self, other)

    def __invert__(self) -> "NodeRef":
        return self.manager.negate(self)

    def __repr__(self) -> str:
        return f"NodeRef({self.u})"


_OP_AND, _OP_OR, _OP_XOR = 0, 1, 2
_OP_CODES = {"and": _OP_AND, "or": _OP_OR, "xor": _OP_XOR}
_OP_TABLE = {
    _OP_AND: (0, 0, 0, 1),  # indexed by 2*a+b
    _OP_OR: (0, 1, 1, 1),
    _OP_XOR: (0, 1, 1, 0),
}


class DdManager:
    """Hash-consed store of reduced ordered decision-diagram nodes.

    Internal handles are plain ints.  In the default (plain) mode the refs
    0 and 1 are the terminals and internal nodes get ids from 2.  With
    ``complement_edges=True`` (rule EQ only) a ref is ``id << 1 | sign``
    where id 0 is the single 1-terminal; the sign bit negates the function.
    Complement bits are kept off Then-edges of stored nodes, which makes the
    form canonical.
    """

    def __init__(
        self,
        vocab: Union[Vocabulary, Sequence[str]],
        rule: Union[EliminationRule, str] = EliminationRule.EQ,
        complement_edges: bool = False,
        node_cap: int = DEFAULT_NODE_CAP,
    ):
        if not isinstance(vocab, Vocabulary):
            vocab = Vocabulary(vocab)
        if isinstance(rule, str):
            rule = EliminationRule(rule.upper())
        if complement_edges and rule is not EliminationRule.EQ:
            raise ConfigError(
                f"complement edges require rule EQ, not {rule.value}"
            )
        self.vocab = vocab
        self.rule = rule
        self.complement_edges = complement_edges
        self.node_cap = node_cap
        self._n = len(vocab)
        self._esc_branch = _ESC_BRANCH.get(rule)
        self._esc_value = _ESC_VALUE.get(rule)
        # parallel node store; terminals live at the front with var level n
        if complement_edges:
            self._var = [self._n]
            self._hi = [0]
            self._lo = [0]
            self._n_terms = 1
            self._t1 = 0  # ref of the 1-terminal
            self._t0 = 1  # complemented 1-terminal
        else:
            self._var = [self._n, self._n]
            self._hi = [0, 1]
            self._lo = [0, 1]
            self._n_terms = 2
            self._t0 = 0
            self._t1 = 1
        self._unique: dict[int, int] = {}
        self._apply_cache: dict[int, int] = {}
        self._restrict_cache: dict[int, int] = {}
        self._quant_cache: dict[int, int] = {}
        self._sat_cache: dict[int, int] = {}
        self._const_cache: dict[tuple[int, int], int] = {}
        self._var_cache: dict[int, int] = {}
        self._qsets: dict[tuple[int, ...], int] = {}

    # -- low-level helpers -------------------------------------------------

    def _idx(self, u: int) -> int:
        return u >> 1 if self.complement_edges else u

    def _top(self, u: int) -> int:
        return self._var[u >> 1 if self.complement_edges else u]

    def _is_terminal(self, u: int) -> bool:
        return (u >> 1 if self.complement_edges else u) < self._n_terms

    def _terminal(self, b: int) -> int:
        return self._t1 if b else self._t0

    def _terminal_value(self, u: int) -> int:
        if self.complement_edges:
            return 1 - (u & 1)
        return u

    def _children(self, u: int) -> tuple[int, int]:
        """(Then, Else) of an internal ref, complement bit pushed down."""
        if self.complement_edges:
            i = u >> 1
            if u & 1:
                return self._hi[i] ^ 1, self._lo[i] ^ 1
            return self._hi[i], self._lo[i]
        return self._hi[u], self._lo[u]

    def _make(self, v: int, hi: int, lo: int) -> int:
        """Reduced, hash-consed node; callers guarantee the order invariant."""
        rule = self.rule
        if rule is EliminationRule.EQ:
            if hi == lo:
                return hi
            if self.complement_edges and hi & 1:
                return self._make(v, hi ^ 1, lo ^ 1) ^ 1
        elif self._esc_branch == 1:
            if hi == self._terminal(self._esc_value):
                return lo
        else:
            if lo == self._terminal(self._esc_value):
                return hi
        key = (v << (2 * _REF_BITS)) | (hi << _REF_BITS) | lo
        u = self._unique.get(key)
        if u is None:
            i = len(self._var)
            if i >= self.node_cap:
                raise ResourceLimitError(
                    f"node store exceeded cap of {self.node_cap} nodes"
                )
            self._var.append(v)
            self._hi.append(hi)
            self._lo.append(lo)
            u = (i << 1) if self.complement_edges else i
            self._unique[key] = u
        return u

    def _raw(self, v: int, hi: int, lo: int) -> int:
        """Hash-cons without reduction; rejects nodes the rule would remove.

        Used when copying flipped graphs in: the image of a correct flip is
        already reduced, so hitting a reducible pattern here means the
        transformation was applied for the wrong rule.
        """
        if self._top(hi) <= v or self._top(lo) <= v:
            raise OrderingError("children must sit strictly below the node")
        u = self._make(v, hi, lo)
        if self._is_terminal(u) or self._top(u) != v:
            raise DdError(
                f"copied node ({v}, {hi}, {lo}) is reducible under "
                f"{self.rule.value}; flip applied for the wrong rule"
            )
        return u

    def _const_at(self, b: int, lvl: int) -> int:
        """Canonical constant-``b`` function over levels >= lvl."""
        key = (b, lvl)
        u = self._const_cache.get(key)
        if u is None:
            if lvl == self._n:
                u = self._terminal(b)
            else:
                c = self._const_at(b, lvl + 1)
                u = self._make(lvl, c, c)
            self._const_cache[key] = u
        return u

    def _var_at(self, v: int) -> int:
        """Canonical diagram of the projection function for variable v."""
        u = self._var_cache.get(v)
        if u is None:
            u = self._make(v, self._const_at(1, v + 1), self._const_at(0, v + 1))
            for w in range(v - 1, -1, -1):
                u = self._make(w, u, u)
            self._var_cache[v] = u
        return u

    def _cofactors_at(self, u: int, lvl: int) -> tuple[int, int]:
        """(f|lvl=1, f|lvl=0) for a ref whose top is at or below lvl."""
        if self._top(u) == lvl:
            return self._children(u)
        if self.rule is EliminationRule.EQ:
            return u, u
        esc = self._terminal(self._esc_value)
        if self._esc_branch == 1:
            return esc, u
        return u, esc

    # -- ref plumbing -------------------------------------------------------

    def _u(self, f: NodeRef) -> int:
        if not isinstance(f, NodeRef) or f.manager is not self:
            raise ManagerMismatchError("handle does not belong to this manager")
        return f.u

    def _ref(self, u: int) -> NodeRef:
        return NodeRef(self, u)

    def _level(self, var: Union[int, str]) -> int:
        if isinstance(var, str):
            return self.vocab.index(var)
        if not 0 <= var < self._n:
            raise VocabularyError(f"variable index {var} out of range")
        return var

    def _state(self, state: Iterable[Union[int, str]]) -> frozenset[int]:
        return frozenset(self._level(v) for v in state)

    # -- public API ----------------------------------------------------------

    @property
    def num_vars(self) -> int:
        return self._n

    def __len__(self) -> int:
        """Number of internal nodes currently stored."""
        return len(self._var) - self._n_terms

    @property
    def zero(self) -> NodeRef:
        return self._ref(self._const_at(0, 0))

    @property
    def one(self) -> NodeRef:
        return self._ref(self._const_at(1, 0))

    def constant(self, b: int) -> NodeRef:
        """Canonical representation of the constant ``b`` over the vocabulary.

        Under the asymmetric rules one of the constants is not a bare
        terminal but a chain of nodes, e.g. constant 1 under T0.
        """
        return self._ref(self._const_at(1 if b else 0, 0))

    def var(self, var: Union[int, str]) -> NodeRef:
        return self._ref(self._var_at(self._level(var)))

    def make_node(self, var: Union[int, str], hi: NodeRef, lo: NodeRef) -> NodeRef:
        """Reduced node for (var, hi, lo); may return a child directly."""
        v = self._level(var)
        hi_u = self._u(hi)
        lo_u = self._u(lo)
        if self._top(hi_u) <= v or self._top(lo_u) <= v:
            raise OrderingError(
                f"children of level {v} must have top variables below it"
            )
        return self._ref(self._make(v, hi_u, lo_u))

    def cofactors(self, f: NodeRef, var: Union[int, str]) -> tuple[NodeRef, NodeRef]:
        """(f with var=1, f with var=0); var must not sit below f's top node."""
        u = self._u(f)
        v = self._level(var)
        if self._top(u) < v:
            raise OrderingError(
                f"level {v} is already below the top node of this diagram"
            )
        c1, c0 = self._cofactors_at(u, v)
        return self._ref(c1), self._ref(c0)

    def apply(self, op: str, f: NodeRef, g: NodeRef) -> NodeRef:
        try:
            code = _OP_CODES[op]
        except KeyError:
            raise ValueError(f"unknown operator {op!r}") from None
        return self._ref(self._apply_at(code, self._u(f), self._u(g), 0))

    def negate(self, f: NodeRef) -> NodeRef:
        u = self._u(f)
        if self.complement_edges:
            return self._ref(u ^ 1)
        return self._ref(self._apply_at(_OP_XOR, u, self._const_at(1, 0), 0))

    def restrict(self, f: NodeRef, var: Union[int, str], b: int) -> NodeRef:
        return self._ref(
            self._restrict(self._u(f), self._level(var), 1 if b else 0)
        )

    def forall(self, f: NodeRef, variables: Iterable[Union[int, str]]) -> NodeRef:
        return self._ref(self._quantify(self._u(f), variables, _OP_AND))

    def exists(self, f: NodeRef, variables: Iterable[Union[int, str]]) -> NodeRef:
        return self._ref(self._quantify(self._u(f), variables, _OP_OR))

    def from_formula(self, formula) -> NodeRef:
        """Canonical diagram of a Boolean formula over this vocabulary."""
        return self._ref(self._build(formula))

    def _build(self, formula) -> int:
        if isinstance(formula, Top):
            return self._const_at(1, 0)
        if isinstance(formula, Atom):
            v = formula.var
            if not 0 <= v < self._n:
                raise VocabularyError(f"atom index {v} out of range")
            return self._var_at(v)
        if isinstance(formula, Not):
            u = self._build(formula.sub)
            if self.complement_edges:
                return u ^ 1
            return self._apply_at(_OP_XOR, u, self._const_at(1, 0), 0)
        if isinstance(formula, And):
            return self._apply_at(
                _OP_AND, self._build(formula.left), self._build(formula.right), 0
            )
        raise TypeError(f"not a Boolean formula node: {type(formula).__name__}")

    def evaluate(self, f: NodeRef, state: Iterable[Union[int, str]]) -> int:
        """Walk root to terminal, applying the rule's jump semantics."""
        u = self._u(f)
        s = self._state(state)
        lvl = 0
        eq = self.rule is EliminationRule.EQ
        esc_branch, esc_value = self._esc_branch, self._esc_value
        while True:
            t = self._top(u)
            if not eq and t > lvl:
                for w in range(lvl, t):
                    if (w in s) == (esc_branch == 1):
                        return esc_value
            if t == self._n:
                return self._terminal_value(u)
            hi, lo = self._children(u)
            u = hi if t in s else lo
            lvl = t + 1

    def node_count(self, f: NodeRef) -> int:
        """Distinct internal nodes reachable from f; terminals excluded."""
        u = self._u(f)
        seen: set[int] = set()
        stack = [self._idx(u)]
        while stack:
            i = stack.pop()
            if i < self._n_terms or i in seen:
                continue
            seen.add(i)
            stack.append(self._idx(self._hi[i]))
            stack.append(self._idx(self._lo[i]))
        return len(seen)

    def sat_count(self, f: NodeRef) -> int:
        """Number of states of the full vocabulary on which f is 1."""
        return self._sat(self._u(f), 0)

    def level_counts(self, f: NodeRef) -> dict[str, int]:
        """Reachable internal nodes per variable name."""
        u = self._u(f)
        seen: set[int] = set()
        stack = [self._idx(u)]
        counts: dict[str, int] = {}
        while stack:
            i = stack.pop()
            if i < self._n_terms or i in seen:
                continue
            seen.add(i)
            name = self.vocab.names[self._var[i]]
            counts[name] = counts.get(name, 0) + 1
            stack.append(self._idx(self._hi[i]))
            stack.append(self._idx(self._lo[i]))
        return counts

    def states(
        self, f: NodeRef, limit: int = DEFAULT_STATE_LIMIT
    ) -> list[frozenset[int]]:
        """All satisfying states, in ascending order of the var-0-first
        bit pattern.  Guarded by ``limit`` (checked via sat_count first)."""
        count = self.sat_count(f)
        if count > limit:
            raise ResourceLimitError(
                f"{count} satisfying states exceed the limit of {limit}"
            )
        out: list[frozenset[int]] = []
        self._enum(self._u(f), 0, [], out)
        return out

    def sparsity(self, f: NodeRef) -> Fraction:
        return Fraction(self.sat_count(f), 1 << self._n)

    # -- apply / restrict / quantify internals -------------------------------

    def _apply_at(self, op: int, f: int, g: int, lvl: int) -> int:
        res = self._apply(op, f, g)
        # XOR(1,1)=0 breaks skip-consistency under T1/E1: levels skipped by
        # both operands must materialize a constant-0 escape branch.
        if op == _OP_XOR and self._esc_value == 1:
            t = min(self._top(f), self._top(g))
            for w in range(t - 1, lvl - 1, -1):
                z = self._const_at(0, w + 1)
                if self._esc_branch == 1:
                    res = self._make(w, z, res)
                else:
                    res = self._make(w, res, z)
        return res

    def _apply(self, op: int, f: int, g: int) -> int:
        """Core apply; the result is valid at context min(top(f), top(g))."""
        if f == g:
            if op == _OP_XOR:
                return self._const_at(0, self._top(f))
            return f
        if f > g:
            f, g = g, f
        # terminal identities, valid only where the terminal is a constant
        # at any depth (the escape terminal; both terminals under EQ)
        rule = self.rule
        if self._is_terminal(f):
            val = self._terminal_value(f)
            if rule is EliminationRule.EQ or val == self._esc_value:
                if op == _OP_AND:
                    if val == 0:
                        return f
                    return g
                if op == _OP_OR:
                    if val == 1:
                        return f
                    return g
                if val == 0:
                    return g  # XOR with constant 0
        key = (((f << _REF_BITS) | g) << 2) | op
        res = self._apply_cache.get(key)
        if res is not None:
            return res
        t = min(self._top(f), self._top(g))
        if t == self._n:
            table = _OP_TABLE[op]
            res = self._terminal(
                table[2 * self._terminal_value(f) + self._terminal_value(g)]
            )
        else:
            f1, f0 = self._cofactors_at(f, t)
            g1, g0 = self._cofactors_at(g, t)
            r1 = self._apply_at(op, f1, g1, t + 1)
            r0 = self._apply_at(op, f0, g0, t + 1)
            res = self._make(t, r1, r0)
        self._apply_cache[key] = res
        return res

    def _restrict(self, f: int, v: int, b: int) -> int:
        t = self._top(f)
        if t >= v:
            if t == v:
                hi, lo = self._children(f)
                c = hi if b else lo
            else:
                c1, c0 = self._cofactors_at(f, v)
                c = c1 if b else c0
            return self._make(v, c, c)
        key = ((v << 1 | b) << _REF_BITS) | f
        res = self._restrict_cache.get(key)
        if res is None:
            hi, lo = self._children(f)
            res = self._make(
                t, self._restrict(hi, v, b), self._restrict(lo, v, b)
            )
            self._restrict_cache[key] = res
        return res

    def _quantify(self, f: int, variables, op: int) -> int:
        levels = tuple(sorted({self._level(v) for v in variables}))
        if not levels:
            return f
        aid = self._qsets.setdefault(levels, len(self._qsets))
        n = self._n
        # next quantified level at or above each level
        level_set = set(levels)
        nxt = [n] * (n + 1)
        for lv in reversed(range(n)):
            nxt[lv] = lv if lv in level_set else nxt[lv + 1]

        def rec(u: int, lvl: int) -> int:
            q = nxt[lvl]
            if q == n:
                return u
            if self._is_terminal(u):
                val = self._terminal_value(u)
                if self.rule is EliminationRule.EQ or val == self._esc_value:
                    return u  # constant at any depth
            key = (((aid * (n + 1) + q) * 3 + op) << _REF_BITS) | u
            res = self._quant_cache.get(key)
            if res is not None:
                return res
            t = self._top(u)
            if q < t:
                c1, c0 = self._cofactors_at(u, q)
                g = self._apply_at(op, rec(c1, q + 1), rec(c0, q + 1), q + 1)
                res = self._make(q, g, g)
            else:
                hi, lo = self._children(u)
                r1 = rec(hi, t + 1)
                r0 = rec(lo, t + 1)
                if t == q:
                    g = self._apply_at(op, r1, r0, t + 1)
                    res = self._make(t, g, g)
                else:
                    res = self._make(t, r1, r0)
            self._quant_cache[key] = res
            return res

        return rec(f, 0)

    # -- counting and enumeration --------------------------------------------

    def _sat(self, u: int, lvl: int) -> int:
        n = self._n
        if self.complement_edges and u & 1:
            return (1 << (n - lvl)) - self._sat(u ^ 1, lvl)
        t = self._top(u)
        if t == n:
            val = self._terminal_value(u)
            if self.rule is EliminationRule.EQ:
                return val << (n - lvl)
            if self._esc_value == 0:
                return 1 if val else 0
            return (1 << (n - lvl)) if val else (1 << (n - lvl)) - 1
        inner = self._sat_cache.get(u)
        if inner is None:
            hi, lo = self._children(u)
            inner = self._sat(hi, t + 1) + self._sat(lo, t + 1)
            self._sat_cache[u] = inner
        skipped = t - lvl
        if self.rule is EliminationRule.EQ:
            return inner << skipped
        if self._esc_value == 0:
            return inner
        return inner + (((1 << skipped) - 1) << (n - t))

    def _enum(self, u: int, lvl: int, acc: list[int], out) -> None:
        if self._sat(u, lvl) == 0:
            return
        n = self._n
        if lvl == n:
            if self._terminal_value(u):
                out.append(frozenset(acc))
            return
        t = self._top(u)
        if t == lvl:
            hi, lo = self._children(u)
            self._enum(lo, lvl + 1, acc, out)
            acc.append(lvl)
            self._enum(hi, lvl + 1, acc, out)
            acc.pop()
            return
        # level lvl is skipped
        if self.rule is EliminationRule.EQ:
            self._enum(u, lvl + 1, acc, out)
            acc.append(lvl)
            self._enum(u, lvl + 1, acc, out)
            acc.pop()
            return
        if self._esc_branch == 0:
            if self._esc_value == 1:
                self._free(lvl + 1, acc, out)  # E1: false escapes to 1
            acc.append(lvl)
            self._enum(u, lvl + 1, acc, out)
            acc.pop()
            return
        self._enum(u, lvl + 1, acc, out)  # T0/T1: continue on false
        if self._esc_value == 1:
            acc.append(lvl)
            self._free(lvl + 1, acc, out)  # T1: true escapes to 1
            acc.pop()

    def _free(self, lvl: int, acc: list[int], out) -> None:
        """All extensions of acc over levels >= lvl."""
        if lvl == self._n:
            out.append(frozenset(acc))
            return
        self._free(lvl + 1, acc, out)
        acc.append(lvl)
        self._free(lvl + 1, acc, out)
        acc.pop()

    # -- graph transformations -----------------------------------------------

    def flip_leaves(self, f: NodeRef, target: "DdManager") -> NodeRef:
        """Copy f's graph into `target` with terminal labels 0/1 swapped."""
        return self._copy_flipped(f, target, swap_leaves=True, swap_edges=False)

    def flip_edges(self, f: NodeRef, target: "DdManager") -> NodeRef:
        """Copy f's graph into `target` with Then/Else edges swapped."""
        return self._copy_flipped(f, target, swap_leaves=False, swap_edges=True)

    def _copy_flipped(
        self,
        f: NodeRef,
        target: "DdManager",
        swap_leaves: bool,
        swap_edges: bool,
    ) -> NodeRef:
        if self.complement_edges or target.complement_edges:
            raise UnsupportedOperationError(
                "graph flips are not defined in complement-edge mode"
            )
        if target.vocab != self.vocab:
            raise VocabularyError("flip target must share the vocabulary")
        u = self._u(f)
        memo: dict[int, int] = {}

        def rec(w: int) -> int:
            if w < 2:
                return (w ^ 1) if swap_leaves else w
            r = memo.get(w)
            if r is None:
                th = rec(self._hi[w])
                el = rec(self._lo[w])
                if swap_edges:
                    th, el = el, th
                r = target._raw(self._var[w], th, el)
                memo[w] = r
            return r

        return target._ref(rec(u))

    def complement_vars(self, f: NodeRef) -> NodeRef:
        """Diagram of s -> f(complement of s), in the same manager."""
        u = self._u(f)
        memo: dict[tuple[int, int], int] = {}

        def rec(w: int, lvl: int) -> int:
            if lvl == self._n:
                return w
            key = (w, lvl)
            r = memo.get(key)
            if r is None:
                c1, c0 = self._cofactors_at(w, lvl)
                r = self._make(lvl, rec(c0, lvl + 1), rec(c1, lvl + 1))
                memo[key] = r
            return r

        return self._ref(rec(u, 0))

    # -- introspection ---------------------------------------------------------

    def check_invariants(self) -> None:
        """Verify store canonicity: reducedness, uniqueness, edge discipline."""
        seen: set[tuple[int, int, int]] = set()
        for i in range(self._n_terms, len(self._var)):
            v, hi, lo = self._var[i], self._hi[i], self._lo[i]
            if self._top(hi) <= v or self._top(lo) <= v:
                raise AssertionError(f"node {i} violates the variable order")
            if self.rule is EliminationRule.EQ:
                if hi == lo:
                    raise AssertionError(f"node {i} matches the EQ pattern")
                if self.complement_edges and hi & 1:
                    raise AssertionError(f"node {i} has a complemented Then-edge")
            elif self._esc_branch == 1:
                if hi == self._terminal(self._esc_value):
                    raise AssertionError(
                        f"node {i} matches the {self.rule.value} pattern"
                    )
            else:
                if lo == self._terminal(self._esc_value):
                    raise AssertionError(
                        f"node {i} matches the {self.rule.value} pattern"
                    )
            triple = (v, hi, lo)
            if triple in seen:
                raise AssertionError(f"duplicate node {triple}")
            seen.add(triple)

    def to_dot(self, f: NodeRef, name: str = "dd") -> str:
        """Graphviz text: solid Then-edges, dashed Else-edges."""
        u = self._u(f)
        lines = [f"digraph {name} {{"]
        seen: set[int] = set()

        def node_id(w: int) -> str:
            i = self._idx(w)
            if i < self._n_terms:
                return f"t{self._terminal_value(w)}"
            return f"n{i}"

        def rec(w: int) -> None:
            i = self._idx(w)
            if i < self._n_terms or i in seen:
                return
            seen.add(i)
            v = self._var[i]
            lines.append(
                f'  n{i} [shape=circle, label="{self.vocab.names[v]}"];'
            )
            hi, lo = self._hi[i], self._lo[i]
            hi_mark = " arrowhead=odot" if self.complement_edges and hi & 1 else ""
            lo_mark = " arrowhead=odot" if self.complement_edges and lo & 1 else ""
            lines.append(f"  n{i} -> {node_id(hi)} [style=solid{hi_mark}];")
            lines.append(f"  n{i} -> {node_id(lo)} [style=dashed{lo_mark}];")
            rec(hi)
            rec(lo)

        if self.complement_edges:
            lines.append('  t1 [shape=box, label="1"];')
            if u & 1:
                lines.append("  root [shape=point];")
                lines.append(f"  root -> {node_id(u)} [arrowhead=odot];")
        else:
            for b in (0, 1):
                lines.append(f'  t{b} [shape=box, label="{b}"];')
        rec(u)
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        mode = "BDDc" if self.complement_edges else self.rule.value
        return f"<DdManager {mode} over {self._n} vars, {len(self)} nodes>"


def variant_via_t0(
    rule: Union[EliminationRule, str],
    formula,
    vocab: Union[Vocabulary, Sequence[str]],
) -> tuple[DdManager, NodeRef]:
    """Build a T1/E0/E1 diagram out of T0 diagrams via leaf/edge flips.

    T1 is the leaf-flipped T0 diagram of the negated function, E0 the
    edge-flipped T0 diagram of the variable-complemented function, and E1
    gets both flips applied to the T0 diagram of the negated
    variable-complemented function.  Returns the target manager and the
    copied root; the result is graph-isomorphic to a native build.
    """
    if isinstance(rule, str):
        rule = EliminationRule(rule.upper())
    source = DdManager(vocab, EliminationRule.T0)
    base = source.from_formula(formula)
    if rule is EliminationRule.T0:
        return source, base
    if rule is EliminationRule.EQ:
        raise ConfigError("flip construction covers the T1/E0/E1 rules only")
    target = DdManager(vocab, rule)
    if rule is EliminationRule.T1:
        return target, source.flip_leaves(source.negate(base), target)
    if rule is EliminationRule.E0:
        return target, source.flip_edges(source.complement_vars(base), target)
    g = source.negate(source.complement_vars(base))
    return target, source._copy_flipped(g, target, swap_leaves=True, swap_edges=True)


def is_isomorphic(ma: DdManager, fa: NodeRef, mb: DdManager, fb: NodeRef) -> bool:
    """Structural equality of two diagrams, including edge roles and leaves."""
    if ma.complement_edges or mb.complement_edges:
        raise UnsupportedOperationError(
            "isomorphism check supports plain-mode diagrams only"
        )
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}

    def rec(a: int, b: int) -> bool:
        a_term = ma._is_terminal(a)
        b_term = mb._is_terminal(b)
        if a_term or b_term:
            if not (a_term and b_term):
                return False
            return ma._terminal_value(a) == mb._terminal_value(b)
        if a in fwd:
            return fwd[a] == b
        if b in bwd:
            return False
        if ma._var[a] != mb._var[b]:
            return False
        fwd[a] = b
        bwd[b] = a
        return rec(ma._hi[a], mb._hi[b]) and rec(ma._lo[a], mb._lo[b])

    return rec(ma._u(fa), mb._u(fb))
