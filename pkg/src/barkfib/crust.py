"""Stellar fibers, branches, subbranches, and simple crusts.

A stellar fiber is a core component of multiplicity m0 (a projective
line unless stated otherwise) with chains of projective lines attached.
Along each chain the multiplicities m0 > m1 > ... > m_lam > 0 satisfy
the integrality condition that every

    r_i = (m_{i-1} + m_{i+1}) / m_i        (m_{lam+1} = 0)

is an integer greater than 1.  A crust is a subdivisor n0*core + partial
chains ("subbranches") compatible with the same recurrence; barking it
off with multiplicity l deforms the fiber.  Subbranches are classified
by their end behavior into types A_l, B_l, C_l, and a crust is simple
when every subbranch carries one of these labels and the core admits a
suitable meromorphic section.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian


@dataclass(frozen=True)
class Branch:
    """One chain of a stellar fiber.

    Parameters
    ----------
    core_mult : int
        Multiplicity m0 of the core the chain is attached to.
    mults : tuple of int
        Chain multiplicities m1, ..., m_lam (possibly invalid; see
        `validate_branch`).
    """

    core_mult: int
    mults: tuple

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))
        if self.core_mult < 1:
            raise ValueError("core multiplicity must be positive")
        if any(m < 1 for m in self.mults):
            raise ValueError("branch multiplicities must be positive")

    @property
    def length(self):
        return len(self.mults)

    def mult(self, i):
        """m_i with the conventions m_0 = core_mult and m_{lam+1} = 0."""
        if i == 0:
            return self.core_mult
        if 1 <= i <= self.length:
            return self.mults[i - 1]
        if i == self.length + 1:
            return 0
        raise IndexError("multiplicity index %d out of range" % i)

    def ratio(self, i):
        """The integer r_i = (m_{i-1} + m_{i+1}) / m_i, for 1 <= i <= lam."""
        num = self.mult(i - 1) + self.mult(i + 1)
        den = self.mult(i)
        if num % den != 0:
            raise ValueError(
                "branch ratio r_%d = %d/%d is not an integer" % (i, num, den)
            )
        return num // den


def validate_branch(b):
    """Check the chain condition: strict decrease and all r_i integral, > 1.

    Returns
    -------
    bool
    """
    seq = (b.core_mult,) + b.mults
    if any(x <= y for x, y in zip(seq, seq[1:])):
        return False
    for i in range(1, b.length + 1):
        num = b.mult(i - 1) + b.mult(i + 1)
        den = b.mult(i)
        if num % den != 0 or num // den <= 1:
            return False
    return True


@dataclass(frozen=True)
class StellarFiber:
    """A core of multiplicity ``core_mult`` and genus ``core_genus`` with
    ``h = len(branches)`` chains attached."""

    core_mult: int
    core_genus: int
    branches: tuple

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.branches:
            raise ValueError("a stellar fiber needs at least one branch")
        for b in self.branches:
            if b.core_mult != self.core_mult:
                raise ValueError("branch core multiplicity mismatch")

    @property
    def h(self):
        return len(self.branches)


@dataclass(frozen=True)
class Subbranch:
    """A recurrence-compatible partial chain over a branch.

    The values n1, ..., n_nu (nu >= 0 entries) satisfy 0 < n_i <= m_i
    and, from the second entry on, the parent's recurrence
    n_{i+1} = r_i n_i - n_{i-1}.  ``n0`` is the crust's core multiplicity
    and seeds the recurrence.
    """

    n0: int
    values: tuple
    parent: Branch

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.n0 < 1:
            raise ValueError("n0 must be positive")
        if len(self.values) > self.parent.length:
            raise ValueError("subbranch longer than its branch")
        for i, v in enumerate(self.values, start=1):
            if not 1 <= v <= self.parent.mult(i):
                raise ValueError(
                    "subbranch value n_%d = %d outside (0, m_%d = %d]"
                    % (i, v, i, self.parent.mult(i))
                )
        for i in range(1, len(self.values)):
            expect = self.parent.ratio(i) * self.values[i - 1] - (
                self.values[i - 2] if i >= 2 else self.n0
            )
            if self.values[i] != expect:
                raise ValueError(
                    "subbranch breaks the recurrence at n_%d: %d != %d"
                    % (i + 1, self.values[i], expect)
                )

    @property
    def nu(self):
        return len(self.values)

    def value(self, i):
        """n_i for 0 <= i <= nu."""
        return self.n0 if i == 0 else self.values[i - 1]


def extend_subbranch(sb):
    """The sentinel value n_{nu+1} given by the recurrence.

    For nu = 0 the sentinel is defined to be 0.  The result may be
    nonpositive; that is what the type-A test looks for.
    """
    nu = sb.nu
    if nu == 0:
        return 0
    return sb.parent.ratio(nu) * sb.value(nu) - sb.value(nu - 1)


def classify_subbranch(sb, l):
    """All end-behavior labels the subbranch carries for bark multiplicity l.

    Writing n_{nu+1} for the sentinel of `extend_subbranch` and requiring
    the bound l*n_i <= m_i for every 0 <= i <= nu:

    * ``A``  --  bound holds and n_{nu+1} <= 0;
    * ``B``  --  bound holds, n_nu = 1 and m_nu = l;
    * ``C``  --  bound holds, n_nu = n_{nu+1} and (m_nu - m_{nu+1}) | l.

    Returns
    -------
    set of str
        Subset of {"A", "B", "C"}; empty means the subbranch cannot
        belong to a simple crust with this l.
    """
    if l < 1:
        raise ValueError("bark multiplicity must be positive")
    nu = sb.nu
    for i in range(nu + 1):
        if l * sb.value(i) > sb.parent.mult(i):
            return set()
    sentinel = extend_subbranch(sb)
    labels = set()
    if sentinel <= 0:
        labels.add("A")
    if sb.value(nu) == 1 and sb.parent.mult(nu) == l:
        labels.add("B")
    if sb.value(nu) == sentinel and l % (sb.parent.mult(nu) - sb.parent.mult(nu + 1)) == 0:
        labels.add("C")
    return labels


def is_proportional(sb):
    """Whether the subbranch scales the branch: m0*n1 = n0*m1.

    Proportionality propagates down the recurrence, so n_i/m_i is the
    constant n0/m0 along the whole subbranch (checked here).  Inside a
    simple crust a proportional subbranch is necessarily of type A and
    runs the full branch length; that stronger fact is enforced where
    crusts are assembled, since a bare subbranch may be truncated.
    """
    if sb.nu == 0:
        return False
    prop = sb.parent.core_mult * sb.value(1) == sb.n0 * sb.parent.mult(1)
    if prop:
        for i in range(1, sb.nu + 1):
            if sb.parent.core_mult * sb.value(i) != sb.n0 * sb.parent.mult(i):
                raise AssertionError("proportional subbranch with drifting ratio")
    return prop


def core_section_exists(fiber, n0, first_values):
    """Existence and zero count of the crust's core section.

    Parameters
    ----------
    fiber : StellarFiber
        Must have a rational core (core_genus 0).
    n0 : int
        Crust core multiplicity.
    first_values : sequence of int
        The first subbranch value n1 per branch, 0 for empty subbranches.

    Returns
    -------
    (exists, zero_degree) : (bool, int or None)
        With r0 = sum(m1)/m0 and r0' = sum(n1)/n0, a section exists iff
        r0 <= r0' and the divisor degree n0*(r0' - r0) is an integer;
        that degree (the number of extra zeros, D = 0 iff r0 = r0') is
        returned when it exists.
    """
    if fiber.core_genus != 0:
        raise ValueError("core section analysis requires a rational core")
    if len(first_values) != fiber.h:
        raise ValueError("need one leading value per branch")
    m0 = fiber.core_mult
    sum_m1 = sum(b.mult(1) for b in fiber.branches)
    sum_n1 = sum(int(v) for v in first_values)
    r0 = Fraction(sum_m1, m0)
    r0p = Fraction(sum_n1, n0)
    degree = n0 * (r0p - r0)
    if r0 > r0p or degree.denominator != 1:
        return False, None
    return True, int(degree)


@dataclass(frozen=True)
class SimpleCrust:
    """A crust all of whose subbranches classify as A_l, B_l, or C_l and
    whose core section exists.  Construction validates everything."""

    n0: int
    subbranches: tuple
    l: int

    def __post_init__(self):
        object.__setattr__(self, "subbranches", tuple(self.subbranches))
        if self.l < 1:
            raise ValueError("bark multiplicity must be positive")
        if not self.subbranches:
            raise ValueError("a crust needs one subbranch per branch")
        m0 = self.subbranches[0].parent.core_mult
        if not self.n0 < m0:
            raise ValueError("crust core multiplicity must satisfy n0 < m0")
        for sb in self.subbranches:
            if sb.n0 != self.n0:
                raise ValueError("subbranch n0 disagrees with crust n0")
            if sb.parent.core_mult != m0:
                raise ValueError("subbranch parents belong to different fibers")
            labels = classify_subbranch(sb, self.l)
            if not labels:
                raise ValueError(
                    "subbranch %s is not of type A/B/C for l = %d"
                    % (list(sb.values), self.l)
                )
            if is_proportional(sb):
                if "A" not in labels or sb.nu != sb.parent.length:
                    raise ValueError(
                        "proportional subbranch must be full-length of type A"
                    )
        exists, _ = self.core_section()
        if not exists:
            raise ValueError("crust admits no core section (r0 > r0')")

    def fiber(self):
        m0 = self.subbranches[0].parent.core_mult
        return StellarFiber(m0, 0, tuple(sb.parent for sb in self.subbranches))

    def first_values(self):
        return tuple(sb.value(1) if sb.nu >= 1 else 0 for sb in self.subbranches)

    def core_section(self):
        return core_section_exists(self.fiber(), self.n0, self.first_values())

    def proportional_subbranches(self):
        return tuple(sb for sb in self.subbranches if is_proportional(sb))


def _subbranch_options(branch, n0, l):
    """Admissible subbranches of one branch, deterministically ordered:
    the empty one first, then by (n1, nu)."""
    options = []
    empty = Subbranch(n0, (), branch)
    if classify_subbranch(empty, l):
        options.append(empty)
    for n1 in range(1, branch.mult(1) + 1 if branch.length else 1):
        vals = [n1]
        for i in range(1, branch.length):
            nxt = branch.ratio(i) * vals[i - 1] - (vals[i - 2] if i >= 2 else n0)
            if not 1 <= nxt <= branch.mult(i + 1):
                break
            vals.append(nxt)
        for nu in range(1, len(vals) + 1):
            sb = Subbranch(n0, tuple(vals[:nu]), branch)
            if classify_subbranch(sb, l):
                options.append(sb)
    return options


def enumerate_simple_crusts(fiber, l):
    """Every simple crust of a stellar fiber for bark multiplicity l.

    The search runs n0 over 1..m0-1 and, per branch, the empty subbranch
    or a leading value n1 in 1..m1 with the rest forced by the
    recurrence; combinations are kept when all subbranches classify and
    the core section exists.  Output order is deterministic.
    """
    if l < 1:
        raise ValueError("bark multiplicity must be positive")
    for b in fiber.branches:
        if not validate_branch(b):
            raise ValueError("fiber branch %s violates the chain condition" % (b,))
    if fiber.core_genus != 0:
        raise ValueError("crust enumeration requires a rational core")
    crusts = []
    for n0 in range(1, fiber.core_mult):
        if l * n0 > fiber.core_mult:
            continue
        per_branch = [_subbranch_options(b, n0, l) for b in fiber.branches]
        if any(not opts for opts in per_branch):
            continue
        for combo in _cartesian(*per_branch):
            exists, _ = core_section_exists(
                fiber, n0, [sb.value(1) if sb.nu >= 1 else 0 for sb in combo]
            )
            if not exists:
                continue
            try:
                crusts.append(SimpleCrust(n0, combo, l))
            except ValueError:
                continue
    return crusts


def stellar_to_json(fiber):
    return {
        "core_mult": fiber.core_mult,
        "core_genus": fiber.core_genus,
        "branches": [list(b.mults) for b in fiber.branches],
    }


def stellar_from_json(data):
    core = int(data["core_mult"])
    return StellarFiber(
        core,
        int(data.get("core_genus", 0)),
        tuple(Branch(core, tuple(ms)) for ms in data["branches"]),
    )


def crust_to_json(crust):
    return {
        "n0": crust.n0,
        "subbranches": [list(sb.values) for sb in crust.subbranches],
        "l": crust.l,
    }


def crust_from_json(fiber, data):
    subs = data["subbranches"]
    if len(subs) != fiber.h:
        raise ValueError("crust lists %d subbranches for %d branches" % (len(subs), fiber.h))
    n0 = int(data["n0"])
    return SimpleCrust(
        n0,
        tuple(Subbranch(n0, tuple(vs), b) for b, vs in zip(fiber.branches, subs)),
        int(data.get("l", 1)),
    )


# Normally minimal stellar models of the splittable fiber types.  The
# chain condition holds for every branch (checked in the test suite).
# I_n* fibers are constellar (two cores joined by a chain) and carry no
# StellarFiber model here; their splittings ship as fixture data only.
STELLAR_MODELS = {
    name: stellar_from_json(raw)
    for name, raw in {
        "II": {"core_mult": 6, "core_genus": 0, "branches": [[3], [2], [1]]},
        "III": {"core_mult": 4, "core_genus": 0, "branches": [[2], [1], [1]]},
        "IV": {"core_mult": 3, "core_genus": 0, "branches": [[1], [1], [1]]},
        "II*": {
            "core_mult": 6,
            "core_genus": 0,
            "branches": [[5, 4, 3, 2, 1], [4, 2], [3]],
        },
        "III*": {
            "core_mult": 4,
            "core_genus": 0,
            "branches": [[3, 2, 1], [3, 2, 1], [2]],
        },
        "IV*": {
            "core_mult": 3,
            "core_genus": 0,
            "branches": [[2, 1], [2, 1], [2, 1]],
        },
        "I0*": {"core_mult": 2, "core_genus": 0, "branches": [[1], [1], [1], [1]]},
    }.items()
}
