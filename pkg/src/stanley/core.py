"""Greedy generation of 3-AP-free integer sequences.

A sequence is extended greedily: starting from a finite seed containing 0,
the next term is always the least integer above the current maximum that
does not complete a three-term arithmetic progression x < y < z (with
x + z = 2y) together with two earlier terms.  Because candidates are
always larger than everything chosen so far, a candidate only ever needs
to be tested as the *largest* element of a progression.

The generator keeps a byte-per-value sieve of blocked values: whenever a
term t is appended, every value 2*t - x for earlier terms x becomes
forever inadmissible.  Appending is one vectorized scatter per term and
candidate scanning is a chunked argmin over the sieve, so generating n
terms costs O(n^2) sieve writes with small constants.  The sieve grows
geometrically when a term-count bound is requested and the final value is
not known in advance; regrowth re-marks all pairs, which stays cheap
because regrowths are logarithmic in the final value.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidSeedError, OverflowLimitError

# Sieve arithmetic runs in int64; values past this cap would risk wrap-around.
VALUE_CAP = 2**62

_SCAN_CHUNK = 8192


@dataclass(frozen=True)
class APWitness:
    """A nontrivial arithmetic progression x < y < z with x + z = 2*y."""

    x: int
    y: int
    z: int


@dataclass(frozen=True)
class GreedySequence:
    """Result of a greedy run: the seed, the terms, and the bounds used."""

    seed: tuple[int, ...]
    terms: tuple[int, ...]
    count_bound: int | None = None
    value_bound: int | None = None

    def __len__(self) -> int:
        return len(self.terms)


def has_3ap(elements: Iterable[int]) -> APWitness | None:
    """Return a witness progression inside ``elements``, or None.

    Scans every pair (x, y) with x < y and asks whether 2*y - x is also
    present; that finds the progression by its middle element, so the scan
    is complete.
    """
    values = sorted(set(elements))
    present = set(values)
    for j, y in enumerate(values):
        for x in values[:j]:
            z = 2 * y - x
            if z in present:
                return APWitness(x, y, z)
    return None


def is_admissible(chosen: Iterable[int], candidate: int) -> bool:
    """Would appending ``candidate`` keep ``chosen`` free of 3-APs?

    ``chosen`` must be 3-AP-free already and ``candidate`` must exceed its
    maximum; a smaller candidate is a contract violation (ValueError).
    Only progressions ending at ``candidate`` can arise, so one membership
    probe per earlier term suffices.
    """
    members = set(chosen)
    if members and candidate <= max(members):
        raise ValueError(
            f"candidate {candidate} does not exceed max(chosen) = {max(members)}"
        )
    for y in members:
        x = 2 * y - candidate
        if x >= 0 and x in members:
            return False
    return True


def validate_seed(seed: Iterable[int]) -> tuple[int, ...]:
    """Canonicalize and validate a seed set.

    Returns the seed as a strictly increasing tuple.  Raises
    InvalidSeedError when the seed is empty, has duplicates or negative
    entries, lacks 0, or contains a 3-term progression (the witness is
    attached to the error).
    """
    raw = list(seed)
    if not raw:
        raise InvalidSeedError("seed is empty")
    if any(isinstance(v, bool) for v in raw):
        raise InvalidSeedError("seed entries must be plain integers")
    try:
        values = [operator.index(v) for v in raw]
    except TypeError:
        raise InvalidSeedError("seed entries must be plain integers") from None
    if len(set(values)) != len(values):
        raise InvalidSeedError("seed contains duplicate elements")
    ordered = tuple(sorted(values))
    if ordered[0] < 0:
        raise InvalidSeedError(f"seed contains negative element {ordered[0]}")
    if ordered[0] != 0:
        raise InvalidSeedError("seed must contain 0")
    if ordered[-1] >= VALUE_CAP:
        raise OverflowLimitError(f"seed element {ordered[-1]} exceeds value cap")
    witness = has_3ap(ordered)
    if witness is not None:
        raise InvalidSeedError(
            f"seed contains the arithmetic progression "
            f"({witness.x}, {witness.y}, {witness.z})",
            witness=witness,
        )
    return ordered


def _mark_pairs(blocked: np.ndarray, terms: np.ndarray, k: int) -> None:
    # Re-mark every blocked value 2*y - x over all pairs x < y of the
    # first k terms.  Used after a sieve regrowth; idempotent.
    cap = len(blocked)
    for j in range(1, k):
        vals = 2 * int(terms[j]) - terms[:j]
        vals = vals[vals < cap]
        blocked[vals] = True


def _next_free(blocked: np.ndarray, start: int, stop: int) -> int:
    # First index in [start, stop) whose sieve byte is still False, or -1.
    pos = start
    while pos < stop:
        window = blocked[pos : min(pos + _SCAN_CHUNK, stop)]
        idx = int(np.argmin(window))
        if not window[idx]:
            return pos + idx
        pos += len(window)
    return -1


def generate(
    seed: Iterable[int],
    count: int | None = None,
    limit: int | None = None,
) -> GreedySequence:
    """Greedily extend ``seed`` into a 3-AP-free sequence.

    Exactly one stopping rule is required: ``count`` asks for that many
    terms in total (seed included), ``limit`` asks for every term with
    value <= limit.  When both are given, generation stops at whichever
    bound is hit first.  The result is deterministic in the seed alone.
    """
    seed_t = validate_seed(seed)
    if count is None and limit is None:
        raise ValueError("need a count bound or a value limit")
    if count is not None and count < len(seed_t):
        raise ValueError(f"count {count} is below the seed length {len(seed_t)}")
    if limit is not None and limit < seed_t[-1]:
        raise ValueError(f"limit {limit} is below max(seed) = {seed_t[-1]}")
    if limit is not None and limit >= VALUE_CAP:
        raise OverflowLimitError(f"limit {limit} exceeds value cap")

    if count is not None and count == len(seed_t):
        return GreedySequence(seed_t, seed_t, count, limit)

    # Sieve capacity: exact when a value limit exists, a growth-law guess
    # (a_n is roughly n**log2(3) for the tamest seeds, far larger for
    # chaotic ones) otherwise.  Underestimates regrow geometrically.
    if limit is not None:
        cap = limit + 2
    else:
        cap = int(2 * count ** 1.585) + 4 * seed_t[-1] + 256
    if cap >= VALUE_CAP:
        raise OverflowLimitError("required sieve capacity leaves the 64-bit range")

    terms_buf = np.zeros(max(count or 0, len(seed_t), 1024), dtype=np.int64)
    terms_buf[: len(seed_t)] = seed_t
    k = len(seed_t)

    blocked = np.zeros(cap, dtype=bool)
    _mark_pairs(blocked, terms_buf, k)

    last = seed_t[-1]
    while True:
        if count is not None and k >= count:
            break
        scan_stop = cap if limit is None else min(cap, limit + 1)
        c = _next_free(blocked, last + 1, scan_stop)
        if c < 0:
            if limit is not None and scan_stop == limit + 1:
                break  # value bound exhausted
            new_cap = cap * 4
            if new_cap >= VALUE_CAP:
                raise OverflowLimitError("sieve capacity left the 64-bit range")
            cap = new_cap
            blocked = np.zeros(cap, dtype=bool)
            _mark_pairs(blocked, terms_buf, k)
            continue
        if c >= VALUE_CAP // 2:
            raise OverflowLimitError("term value left the 64-bit range")
        if k == len(terms_buf):
            terms_buf = np.concatenate([terms_buf, np.zeros(len(terms_buf), np.int64)])
        terms_buf[k] = c
        vals = 2 * c - terms_buf[:k]
        vals = vals[vals < cap]
        blocked[vals] = True
        k += 1
        last = c

    terms = tuple(int(v) for v in terms_buf[:k])
    return GreedySequence(seed_t, terms, count, limit)


def minimal_generating_prefix(terms: Sequence[int]) -> int:
    """Length of the shortest prefix that greedily regenerates ``terms``.

    Requires terms[0] == 0.  If a prefix of length p works then so does
    every longer one (the greedy successor of a working prefix is the next
    term), so a binary search over the prefix length is sound.  The full
    sequence is always a working prefix of itself.
    """
    values = tuple(int(v) for v in terms)
    if not values or values[0] != 0:
        raise ValueError("sequence must start at 0")

    def works(p: int) -> bool:
        return generate(values[:p], count=len(values)).terms == values

    lo, hi = 1, len(values)
    while lo < hi:
        mid = (lo + hi) // 2
        if works(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
