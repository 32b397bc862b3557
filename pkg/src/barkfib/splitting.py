"""Splitting candidates, trace obstructions, and monodromy factorizations.

When a fiber of type ``original`` deforms so that the fiber over the
origin becomes ``main``, the difference of Euler numbers must be carried
by subordinate fibers drawn from {I_n, II, III}.  This module enumerates
the possible multisets, rules candidates out by exact trace congruences,
and searches for (or verifies) explicit factorizations of the original
monodromy into conjugates of the factors' standard matrices.
"""

from dataclasses import dataclass
from itertools import permutations
from math import isqrt

from .kodaira import FiberClass, euler, standard_monodromy
from .sl2z import IDENTITY, Mat2, Word, conj, eval_word, inverse, parse_word, trace

FORBIDDEN = "forbidden"
UNDECIDED = "undecided"

MINUS_IDENTITY = Mat2(-1, 0, 0, -1)


class SearchBudgetExceeded(RuntimeError):
    """Raised when a factorization search would exceed its node budget."""


def multiset(*fibers):
    """Canonical multiset: a tuple sorted by the fiber sort key."""
    return tuple(sorted(fibers, key=FiberClass.sort_key))


def normalize_multiset(fibers):
    return multiset(*fibers)


def euler_deficit(original, main, genus=1):
    """Total Euler number available to subordinate fibers.

    The genus-g correction terms 2(1-g) cancel between the two fibers,
    so for every base genus >= 1 the deficit is e(original) - e(main).
    A negative difference means ``main`` cannot arise from ``original``.
    """
    if genus < 1:
        raise ValueError("base genus must be at least 1")
    d = euler(original) - euler(main)
    if d < 0:
        raise ValueError(
            "invalid main fiber: euler(%s) = %d exceeds euler(%s) = %d"
            % (main, euler(main), original, euler(original))
        )
    return d


def _int_partitions(total, cap=None):
    """Partitions of ``total`` as descending tuples of positive ints."""
    if cap is None or cap > total:
        cap = total
    if total == 0:
        yield ()
        return
    for first in range(cap, 0, -1):
        for rest in _int_partitions(total - first, first):
            yield (first,) + rest


def _part_key(f):
    # Larger Euler number first; at equal size the cusp/tacnode class
    # precedes the nodal one (II before I2, III before I3).
    return (-euler(f), 0 if f.kind in ("II", "III") else 1)


def enumerate_multisets(deficit):
    """All multisets over {I_n (n >= 1), II, III} with Euler sum ``deficit``.

    These are the only reduced fiber types whose singularities are all of
    type A: I_n carries n nodes, II one A2 point, III one A3 point.  IV is
    excluded (an ordinary triple point is not an A-singularity), as are
    all starred and multiple classes.

    The output order is deterministic: fewer parts first, then larger
    parts first, with II/III preceding the equal-size nodal class.
    """
    if deficit < 1:
        raise ValueError("deficit must be positive")
    I1 = FiberClass("I", 1)
    out = []
    for part_sizes in _int_partitions(deficit):
        k2 = part_sizes.count(2)
        k3 = part_sizes.count(3)
        plain = [FiberClass("I", n) for n in part_sizes if n not in (2, 3)]
        for a2 in range(k2 + 1):
            for a3 in range(k3 + 1):
                ms = list(plain)
                ms += [FiberClass("II")] * a2
                ms += [FiberClass("I", 2)] * (k2 - a2)
                ms += [FiberClass("III")] * a3
                ms += [FiberClass("I", 3)] * (k3 - a3)
                out.append(multiset(*ms))
    out.sort(key=lambda ms: (len(ms), [_part_key(f) for f in sorted(ms, key=_part_key)]))
    return out


def _fiber_trace(f):
    return trace(standard_monodromy(f))


def _is_square(x):
    return x >= 0 and isqrt(x) ** 2 == x


def _shift_admissible(c, other):
    """Can the integer trace shift ``c`` occur next to a factor of class
    ``other``?

    Writing the I_k factor as I + kN with N a rank-one integral nilpotent
    and absorbing the second conjugation, the target trace equals
    trace(other) + k*c with c = trace(N*B) for B in the class of
    ``other``.  Running over all N this pins c exactly for the (quasi-)
    unipotent classes and pins its sign for the elliptic ones:

      I_0, I_0*    : c = 0
      I_j  (j >= 1): c = -j*r^2 for some integer r
      I_j* (j >= 1): c = +j*r^2
      II, III, IV  : c < 0      (c is minus a positive definite form)
      II*, III*, IV*: c > 0

    Only the necessary direction is used, so "admissible" can never
    wrongly exclude a realizable splitting.
    """
    other = other.reduced()
    if other.kind == "I":
        if other.n == 0:
            return c == 0
        return c <= 0 and (-c) % other.n == 0 and _is_square((-c) // other.n)
    if other.kind == "I*":
        if other.n == 0:
            return c == 0
        return c >= 0 and c % other.n == 0 and _is_square(c // other.n)
    if other.kind in ("II", "III", "IV"):
        return c < 0
    return c > 0


def obstruction_I_k_pair(target, k, other):
    """Two-factor obstruction when one factor is of class I_k.

    If the monodromy of ``target`` were a product of a conjugate of the
    I_k matrix and a conjugate of the matrix of ``other``, then
    trace(target) - trace(other) would equal k*c for an admissible shift
    c (see _shift_admissible).  Returns ``forbidden`` when no admissible
    c exists, else ``undecided``.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    delta = _fiber_trace(target) - _fiber_trace(other)
    if delta % k != 0:
        return FORBIDDEN
    return UNDECIDED if _shift_admissible(delta // k, other) else FORBIDDEN


def _require_central(target):
    if standard_monodromy(target) != MINUS_IDENTITY:
        raise ValueError("target %s does not have central monodromy -I" % (target,))


def obstruction_central_pair(target, x1, x2):
    """Two-factor obstruction for a target with monodromy -I.

    A1*A2 = -I forces A1 = -A2^{-1}, hence trace(x1) = -trace(x2).
    """
    _require_central(target)
    if _fiber_trace(x1) != -_fiber_trace(x2):
        return FORBIDDEN
    return UNDECIDED


def obstruction_central_triple_I_k(target, k, x1, x2):
    """Three-factor obstruction for a central target with an I_k factor.

    With the I_k factor written as I + kN, centrality forces
    trace(x1) + k*c = -trace(x2), so k must divide
    trace(x1) + trace(x2).  The rule applies only to decompositions with
    exactly three factors.
    """
    _require_central(target)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if (_fiber_trace(x1) + _fiber_trace(x2)) % k != 0:
        return FORBIDDEN
    return UNDECIDED


def decomposition_verdict(target, parts):
    """Apply every applicable obstruction to a full factor list.

    ``parts`` is the complete multiset of factor classes (main fiber plus
    subordinates).  Central targets with two or three factors use the
    centrality rules; non-central targets with two factors use the I_k
    pair rule for each unipotent factor.  Longer factor lists carry no
    trace obstruction.  Returns (verdict, reasons).
    """
    parts = list(parts)
    reasons = []
    central = standard_monodromy(target) == MINUS_IDENTITY
    if central and len(parts) == 2:
        v = obstruction_central_pair(target, parts[0], parts[1])
        if v == FORBIDDEN:
            return FORBIDDEN, [
                "central pair rule: trace(%s) = %d but -trace(%s) = %d"
                % (parts[0], _fiber_trace(parts[0]), parts[1], -_fiber_trace(parts[1]))
            ]
        reasons.append("central pair rule passed")
    elif central and len(parts) == 3:
        for i, p in enumerate(parts):
            p = p.reduced()
            if p.kind == "I" and p.n >= 1:
                rest = [q for j, q in enumerate(parts) if j != i]
                v = obstruction_central_triple_I_k(target, p.n, rest[0], rest[1])
                if v == FORBIDDEN:
                    return FORBIDDEN, [
                        "central triple rule: %d does not divide trace(%s)+trace(%s)"
                        % (p.n, rest[0], rest[1])
                    ]
                reasons.append("central triple rule passed for I_%d factor" % p.n)
    elif not central and len(parts) == 2:
        for i, p in enumerate(parts):
            p = p.reduced()
            if p.kind == "I" and p.n >= 1:
                other = parts[1 - i]
                v = obstruction_I_k_pair(target, p.n, other)
                if v == FORBIDDEN:
                    return FORBIDDEN, [
                        "trace shift rule: trace(%s)-trace(%s) = %d admits no valid"
                        " multiple of %d"
                        % (
                            target,
                            other,
                            _fiber_trace(target) - _fiber_trace(other),
                            p.n,
                        )
                    ]
                reasons.append("trace shift rule passed for I_%d factor" % p.n)
    if not reasons:
        reasons.append("no trace obstruction applies to %d factors" % len(parts))
    return UNDECIDED, reasons


@dataclass(frozen=True)
class FactorizationWitness:
    """An explicit factorization: target monodromy as an ordered product
    of conjugated standard matrices."""

    target: FiberClass
    factors: tuple  # of (FiberClass, Word) pairs

    def product(self):
        m = IDENTITY
        for base, conjugator in self.factors:
            m = m * conj(standard_monodromy(base), eval_word(conjugator))
        return m


def verify_witness(w):
    """True iff the witness product equals the target monodromy exactly."""
    return w.product() == standard_monodromy(w.target)


def _witness(target_text, *factor_texts):
    from .kodaira import parse_fiber

    factors = []
    for item in factor_texts:
        if isinstance(item, str):
            base, word_text = item, ""
        else:
            base, word_text = item
        factors.append((parse_fiber(base), parse_word(word_text)))
    return FactorizationWitness(parse_fiber(target_text), tuple(factors))


def witness_I_star_family(n):
    """The splitting I_n* -> I_{n+4} + I_1 + I_1, valid for every n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _witness(
        "I%d*" % n, ("I1", "s0 s2"), ("I1", "s0^3 s2"), ("I%d" % (n + 4), "")
    )


# Exact product identities, one per known splitting with an explicit
# word.  Each verifies by verify_witness; the tuple order is the product
# order (left to right).
WITNESS_TABLE = [
    ("II = I1 . I1^(s0 s2)", _witness("II", "I1", ("I1", "s0 s2"))),
    ("III = II . I1", _witness("III", "II", "I1")),
    ("III = I2 . I1^(s2)", _witness("III", "I2", ("I1", "s2"))),
    ("IV = II . II", _witness("IV", "II", "II")),
    ("IV = I2 . II^(s2)", _witness("IV", "I2", ("II", "s2"))),
    ("IV = III . I1^(s0 s2)", _witness("IV", "III", ("I1", "s0 s2"))),
    ("IV = I3 . I1^(s2)", _witness("IV", "I3", ("I1", "s2"))),
    ("II* = IV* . II", _witness("II*", "IV*", "II")),
    (
        "II* = I2* . I1^(s2) . I1^(s0 s2)",
        _witness("II*", "I2*", ("I1", "s2"), ("I1", "s0 s2")),
    ),
    (
        "II* = I5 . I1^(s2) . I1 . I1^(s0 s2) . I1^(s0 s2) . I1",
        _witness(
            "II*",
            "I5",
            ("I1", "s2"),
            "I1",
            ("I1", "s0 s2"),
            ("I1", "s0 s2"),
            "I1",
        ),
    ),
    (
        "II* = I8 . I1^(s0^-1 s2) . I1^(s0^-1 s2^-2)",
        _witness("II*", "I8", ("I1", "s0^-1 s2"), ("I1", "s0^-1 s2^-2")),
    ),
    ("III* = I1*^(s2^-1) . I2", _witness("III*", ("I1*", "s2^-1"), "I2")),
    (
        "III* = I0* . I1 . I1^(s0 s2) . I1",
        _witness("III*", "I0*", "I1", ("I1", "s0 s2"), "I1"),
    ),
    (
        "III* = I7 . I1^(s0^-4 s2) . I1^(s0^-1 s2)",
        _witness("III*", "I7", ("I1", "s0^-4 s2"), ("I1", "s0^-1 s2")),
    ),
    (
        "III* = I6 . II^(s0^-4 s2) . I1^(s0^-1 s2)",
        _witness("III*", "I6", ("II", "s0^-4 s2"), ("I1", "s0^-1 s2")),
    ),
    (
        "III* = I6 . I1^(s0^-2 s2) . I2^(s2)",
        _witness("III*", "I6", ("I1", "s0^-2 s2"), ("I2", "s2")),
    ),
    (
        "IV* = I0* . I1 . I1^(s0 s2)",
        _witness("IV*", "I0*", "I1", ("I1", "s0 s2")),
    ),
    (
        "IV* = I6 . I1^(s0^-3 s2) . I1^(s2)",
        _witness("IV*", "I6", ("I1", "s0^-3 s2"), ("I1", "s2")),
    ),
    (
        "I0* = I4 . I1^(s0^-1 s2) . I1^(s0 s2)",
        _witness("I0*", "I4", ("I1", "s0^-1 s2"), ("I1", "s0 s2")),
    ),
    (
        "I0* = I3 . II^(s0^-2) . I1^(s0 s2)",
        _witness("I0*", "I3", ("II", "s0^-2"), ("I1", "s0 s2")),
    ),
]

# The I_n* family instantiated at small n; together with WITNESS_TABLE
# this is the full identity list checked by `barkfib verify-words`.
WITNESS_FAMILY_RANGE = range(1, 7)


def all_witnesses():
    rows = list(WITNESS_TABLE)
    for n in WITNESS_FAMILY_RANGE:
        rows.append(
            (
                "I%d* = I1^(s0 s2) . I1^(s0^3 s2) . I%d" % (n, n + 4),
                witness_I_star_family(n),
            )
        )
    return rows


def _conjugator_stream(max_len, exp_cap, counter, budget):
    """All normalized alternating words of length <= max_len, with their
    evaluations.  Increments counter[0] per word and enforces the budget."""

    def bump():
        counter[0] += 1
        if counter[0] > budget:
            raise SearchBudgetExceeded(
                "conjugator enumeration exceeded %d nodes" % budget
            )

    bump()
    yield Word([]), IDENTITY
    exps = [e for e in range(-exp_cap, exp_cap + 1) if e != 0]
    frontier = [((("s0", e),), None) for e in exps] + [
        ((("s2", e),), None) for e in exps
    ]
    level = []
    for letters, _ in frontier:
        bump()
        w = Word(list(letters))
        m = eval_word(w)
        yield w, m
        level.append((letters, m))
    for _ in range(max_len - 1):
        nxt = []
        for letters, m in level:
            last_gen = letters[-1][0]
            gen = "s2" if last_gen == "s0" else "s0"
            for e in exps:
                bump()
                new_letters = letters + ((gen, e),)
                g = m * eval_word(Word([(gen, e)]))
                yield Word(list(new_letters)), g
                nxt.append((new_letters, g))
        level = nxt


def search_factorization(
    target, parts, max_conj_len, exp_cap=8, node_budget=10**7
):
    """Exhaustive bounded search for a factorization witness.

    Args:
        target: the fiber class whose monodromy is to be factored.
        parts: the multiset of factor classes.
        max_conj_len: maximum normalized length of each conjugator word.
        exp_cap: maximum |exponent| per letter.
        node_budget: hard cap on explored nodes.

    Returns:
        A verified FactorizationWitness, or None if no witness exists
        within the bounds.  None is evidence, not an impossibility proof.

    Raises:
        SearchBudgetExceeded: when the bounded space is still too large.
    """
    if max_conj_len < 0:
        raise ValueError("max_conj_len must be nonnegative")
    parts = normalize_multiset(parts)
    if not parts:
        return None
    target_m = standard_monodromy(target)
    counter = [0]

    def bump(amount=1):
        counter[0] += amount
        if counter[0] > node_budget:
            raise SearchBudgetExceeded("search exceeded %d nodes" % node_budget)

    # One table of conjugators shared by all factor positions, and one
    # deduplicated {conjugated matrix: word} map per distinct class.
    conjugators = list(
        _conjugator_stream(max_conj_len, exp_cap, counter, node_budget)
    )
    by_class = {}
    for f in set(parts):
        base = standard_monodromy(f)
        table = {}
        for w, g in conjugators:
            bump()
            m = conj(base, g)
            if m not in table:
                table[m] = w
        by_class[f] = table

    seen_orders = set()
    for order in permutations(parts):
        if order in seen_orders:
            continue
        seen_orders.add(order)
        last = order[-1]
        last_table = by_class[last]
        prefix = order[:-1]

        def dfs(idx, acc, chosen):
            bump()
            if idx == len(prefix):
                want = inverse(acc) * target_m
                w = last_table.get(want)
                if w is None:
                    return None
                return FactorizationWitness(
                    target, tuple(zip(order, list(chosen) + [w]))
                )
            for m, w in by_class[order[idx]].items():
                bump()
                found = dfs(idx + 1, acc * m, chosen + [w])
                if found is not None:
                    return found
            return None

        witness = dfs(0, IDENTITY, [])
        if witness is not None:
            if not verify_witness(witness):
                raise AssertionError("search produced a non-verifying witness")
            return witness
    return None
