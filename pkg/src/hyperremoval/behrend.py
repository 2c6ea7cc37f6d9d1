"""
Dense subsets of [m] without non-trivial solutions to

    y_1 + ... + y_{t-1} = (t-1) * y_t

(a solution is trivial when all y_i are equal), together with exact
oracles that check the property.

Three generators are available: the sphere construction (digit vectors of
a fixed squared norm, read in base 2(t-1)d so the (t-1)-fold sums never
carry), a first-fit greedy set, and an exact branch-and-bound search for
small m. `behrend_set` returns the best of what applies.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from hyperremoval.config import DEFAULT_ORACLE_CAP, EXHAUSTIVE_CAP
from hyperremoval.errors import BudgetExceededError, ParameterError, require

logger = logging.getLogger(__name__)

__all__ = [
    'BehrendSet', 'VerificationResult', 'behrend_set', 'sphere_set', 'greedy_set',
    'verify_solution_free', 'max_solution_free_bruteforce', 'spot_check',
]

SMALL_M = 30

VERIFIED = 'verified'
VIOLATED = 'violated'
UNVERIFIED = 'unverified'


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of a solution-freeness check."""

    status: str
    counterexample: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.status == VERIFIED


@dataclass(frozen=True)
class BehrendSet:
    """
    A subset of [1..m] free of non-trivial solutions for arity t.

    Attributes:
        construction: 'sphere', 'greedy' or 'exhaustive'
        verification: 'verified' or 'unverified' (oracle cap exceeded)
        parameters: construction parameters (d, D, R for the sphere)
    """

    m: int
    t: int
    elements: Tuple[int, ...]
    construction: str
    verification: str = UNVERIFIED
    parameters: dict = field(default_factory=dict, compare=False)

    @property
    def size(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_dict(self):
        return {'m': self.m, 't': self.t, 'elements': list(self.elements),
                'construction': self.construction, 'verification': self.verification}

    @classmethod
    def from_dict(cls, data):
        return cls(int(data['m']), int(data['t']), tuple(data['elements']),
                   data.get('construction', 'external'), data.get('verification', UNVERIFIED))


def _check_arity(t):
    if t < 3:
        raise ParameterError(f'equation arity t must be at least 3, got {t}')


def verify_solution_free(B, t, m=None, cap=DEFAULT_ORACLE_CAP):
    """
    Exact check that B has no non-trivial solution.

    t = 3 uses a scan over all pairs; larger t splits the (t-1)-fold sum into
    two halves (meet in the middle), keeping two representatives per half-sum.

    Args:
        B: Iterable of positive integers
        t: Equation arity
        m: Optional range bound; B must lie in [1..m]
        cap: Work limit; beyond it the result is 'unverified'

    Returns:
        VerificationResult; on violation the counterexample is (y_1, ..., y_t)
    """
    _check_arity(t)
    elements = sorted(set(B))
    if m is not None and elements and (elements[0] < 1 or elements[-1] > m):
        raise ParameterError(f'set is not contained in [1..{m}]')
    present = set(elements)

    if t == 3:
        if len(elements) * (len(elements) - 1) // 2 > cap:
            return VerificationResult(UNVERIFIED)
        for i, a in enumerate(elements):
            for b in elements[i + 1:]:
                if (a + b) % 2 == 0 and (a + b) // 2 in present:
                    return VerificationResult(VIOLATED, (a, b, (a + b) // 2))
        return VerificationResult(VERIFIED)

    left_size = t // 2
    right_size = t - 1 - left_size
    halves = []
    for size in (left_size, right_size):
        count = 1
        for i in range(size):
            count = count * (len(elements) + i) // (i + 1)
        if count * max(1, len(elements)) > cap:
            return VerificationResult(UNVERIFIED)
        sums = {}
        for combo in itertools.combinations_with_replacement(elements, size):
            reps = sums.setdefault(sum(combo), [])
            if len(reps) < 2:
                reps.append(combo)
        halves.append(sums)
    left, right = halves
    for z in elements:
        target = (t - 1) * z
        for total, left_reps in sorted(left.items()):
            right_reps = right.get(target - total)
            if not right_reps:
                continue
            for lrep in left_reps:
                for rrep in right_reps:
                    ys = lrep + rrep
                    if any(y != z for y in ys):
                        return VerificationResult(VIOLATED, ys + (z,))
    return VerificationResult(VERIFIED)


def spot_check(B, t, samples=10_000, seed=0):
    """
    Randomized check for sets too large for the exact oracle: draws random
    (t-2)-tuples and a target, and tests whether the missing summand is in B.

    Returns:
        VerificationResult with status 'violated' or 'unverified'
    """
    _check_arity(t)
    elements = np.array(sorted(set(B)), dtype=np.int64)
    if len(elements) < 2:
        return VerificationResult(UNVERIFIED)
    present = set(elements.tolist())
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        z = int(rng.choice(elements))
        ys = [int(y) for y in rng.choice(elements, size=t - 2)]
        last = (t - 1) * z - sum(ys)
        if last in present and any(y != z for y in ys + [last]):
            return VerificationResult(VIOLATED, tuple(ys) + (last, z))
    return VerificationResult(UNVERIFIED)


def _sphere_parameters(m, t):
    """Best (size, d, D, R) over digit bounds d and dimensions D >= 2 fitting in [1..m]."""
    best = None
    d = 2
    while True:
        base = 2 * (t - 1) * d
        if (d - 1) * base + (d - 1) + 1 > m:
            break
        D = 2
        while sum((d - 1) * base ** i for i in range(D)) + 1 <= m:
            squares = np.zeros((d - 1) ** 2 + 1, dtype=np.int64)
            squares[[a * a for a in range(d)]] = 1
            counts = np.array([1], dtype=np.int64)
            for _ in range(D):
                counts = np.convolve(counts, squares)
            R = int(np.argmax(counts))
            candidate = (int(counts[R]), d, D, R)
            if best is None or candidate[0] > best[0]:
                best = candidate
            D += 1
        d += 1
    return best


def sphere_set(m, t, d=None, D=None):
    """
    Sphere construction: digit vectors x in {0..d-1}^D with |x|^2 = R,
    read as integers in base 2(t-1)d and shifted by one.

    Args:
        m: Range bound
        t: Equation arity
        d, D: Optional fixed digit bound and dimension (default: best fit)

    Returns:
        BehrendSet tagged 'sphere'
    """
    _check_arity(t)
    if m < 1:
        raise ParameterError(f'm must be positive, got {m}')
    if d is None or D is None:
        found = _sphere_parameters(m, t)
        if found is None:
            return BehrendSet(m, t, (1,), 'sphere', parameters={'d': 1, 'D': 1, 'R': 0})
        _, d, D, R = found
    else:
        base = 2 * (t - 1) * d
        if sum((d - 1) * base ** i for i in range(D)) + 1 > m:
            raise ParameterError(f'sphere parameters d={d}, D={D} do not fit in [1..{m}]')
        squares = np.zeros((d - 1) ** 2 + 1, dtype=np.int64)
        squares[[a * a for a in range(d)]] = 1
        counts = np.array([1], dtype=np.int64)
        for _ in range(D):
            counts = np.convolve(counts, squares)
        R = int(np.argmax(counts))
    base = 2 * (t - 1) * d
    elements = sorted(1 + sum(x * base ** i for i, x in enumerate(digits))
                      for digits in itertools.product(range(d), repeat=D)
                      if sum(x * x for x in digits) == R)
    return BehrendSet(m, t, tuple(elements), 'sphere', parameters={'d': d, 'D': D, 'R': R})


def greedy_set(m, t):
    """
    First-fit set: scan 1..m and keep every number that creates no solution.

    A candidate c is the largest element so far, so it can only occur among
    the left-hand summands; `reach[j]` marks the sums of j kept elements.
    The set for m is a prefix of the set for m + 1.
    """
    _check_arity(t)
    limit = (t - 1) * m
    reach = [np.zeros(limit + 1, dtype=bool) for _ in range(t - 1)]
    reach[0][0] = True
    kept = []
    for c in range(1, m + 1):
        if kept:
            old = np.array(kept, dtype=np.int64)
            blocked = False
            for j in range(1, t - 1):
                targets = (t - 1) * old - j * c
                targets = targets[(targets >= 0) & (targets <= limit)]
                if targets.size and reach[t - 1 - j][targets].any():
                    blocked = True
                    break
            if blocked:
                continue
        kept.append(c)
        previous = [r.copy() for r in reach]
        for i in range(1, t - 1):
            for j in range(1, i + 1):
                shift = j * c
                if shift <= limit:
                    reach[i][shift:] |= previous[i - j][:limit + 1 - shift]
    return BehrendSet(m, t, tuple(kept), 'greedy')


def _makes_solution(x, chosen, t):
    """Whether adding x (smaller than all of chosen) creates a non-trivial solution."""
    if t == 3:
        return any(2 * z - x in chosen for z in chosen)
    ordered = tuple(sorted(chosen))

    @lru_cache(maxsize=None)
    def representable(total, count):
        if count == 0:
            return total == 0
        return any(y <= total and representable(total - y, count - 1) for y in ordered)

    for z in ordered:
        for j in range(1, t - 1):
            target = (t - 1) * z - j * x
            if target > 0 and representable(target, t - 1 - j):
                return True
    return False


def max_solution_free_bruteforce(m, t, cap=EXHAUSTIVE_CAP):
    """
    Exact maximum size of a solution-free subset of [1..m].

    The equation is translation invariant, so the optimum r(j) for [1..j] is
    either r(j-1) or r(j-1)+1, and only sets containing j need searching;
    r(x) bounds what the rest of [1..x] can add.

    Returns:
        Tuple (size, sorted witness set)
    """
    _check_arity(t)
    if m > cap:
        raise BudgetExceededError(f'exhaustive search capped at m={cap}, got {m}', limit=cap, used=m)
    best = [0]
    witness = [()]
    for j in range(1, m + 1):
        goal = best[-1] + 1
        found = _branch(j, goal, best, t)
        if found is None:
            best.append(best[-1])
            witness.append(witness[-1])
        else:
            best.append(goal)
            witness.append(tuple(sorted(found)))
    return best[m], witness[m]


def _branch(top, goal, best, t):
    chosen = {top}

    def extend(x):
        if len(chosen) == goal:
            return True
        if x < 1 or len(chosen) + best[x] < goal:
            return False
        if not _makes_solution(x, chosen, t):
            chosen.add(x)
            if extend(x - 1):
                return True
            chosen.remove(x)
        return extend(x - 1)

    return set(chosen) if extend(top - 1) else None


def behrend_set(m, t, oracle_cap=DEFAULT_ORACLE_CAP, small_m=SMALL_M):
    """
    A dense solution-free subset of [1..m].

    Exact search for m <= small_m, otherwise the larger of the sphere and
    greedy sets (sphere on ties). The result is verified by the exact oracle
    whenever that fits in `oracle_cap`, else flagged 'unverified'.

    Returns:
        BehrendSet
    """
    _check_arity(t)
    if m < 1:
        raise ParameterError(f'm must be positive, got {m}')
    if m <= small_m:
        _, elements = max_solution_free_bruteforce(m, t)
        chosen = BehrendSet(m, t, elements, 'exhaustive')
    else:
        sphere = sphere_set(m, t)
        greedy = greedy_set(m, t)
        chosen = sphere if sphere.size >= greedy.size else greedy
        logger.debug('Sphere set has %d elements, greedy set %d', sphere.size, greedy.size)
    result = verify_solution_free(chosen.elements, t, m, cap=oracle_cap)
    require(result.status != VIOLATED, 'generated set has the solution %s', result.counterexample)
    chosen = BehrendSet(m, t, chosen.elements, chosen.construction, result.status, chosen.parameters)
    logger.info('Behrend set for m=%d, t=%d: %d elements (%s, %s)',
                m, t, chosen.size, chosen.construction, chosen.verification)
    return chosen
