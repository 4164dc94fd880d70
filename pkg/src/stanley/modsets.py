"""Modular and near-modular 3-AP-free covering sets.

A set A is *near-modular* with respect to N when it contains 0, has no
nontrivial progression modulo N (x = 2y - z mod N with x, y, z in A forces
x = y = z), and covers every residue: each r in [0, N) is 2y - z mod N for
some y >= z in A.  It is *modular* when additionally every element lies in
[0, N).  A modular set tiles its greedy extension: the sequence generated
from seed A is exactly A + N*S where S is the greedy sequence grown from
{0} alone, so expansion reduces to a closed form.

The family table below ships eight base sets, near-modular with respect to
3**(i+1) for i = 1..4.  Shifting the largest element of a family set by
j*3**(i+1) keeps it near-modular and raises the character of the composed
sequence by 2*j*3**(i+1); the character planner leans on exactly that.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, NotModularError

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class ModSetViolation:
    """Why verification failed or stopped short.

    kind: "missing-zero", "mod-ap" (witness x, y, z), "uncovered-residue"
    (the residue), or "out-of-range" (offending elements).
    """

    kind: str
    details: tuple[int, ...] = ()


@dataclass(frozen=True)
class ModSetReport:
    verdict: str  # "modular" | "near-modular-only" | "invalid"
    violation: ModSetViolation | None = None

    @property
    def ok(self) -> bool:
        return self.verdict != "invalid"


@dataclass(frozen=True)
class NearModularSet:
    elements: tuple[int, ...]
    modulus: int
    verdict: str | None = None


def _canonical(elements: Iterable[int]) -> tuple[int, ...]:
    values = sorted(int(v) for v in elements)
    if len(set(values)) != len(values):
        raise ValueError("elements must be distinct")
    if values and values[0] < 0:
        raise ValueError("elements must be nonnegative")
    return tuple(values)


def _find_mod_ap(values: Sequence[int], modulus: int) -> tuple[int, int, int] | None:
    # Any x = 2y - z (mod N) with (x, y, z) not all equal is a violation.
    arr = np.asarray(values, dtype=np.int64)
    res = arr % modulus
    uniq, counts = np.unique(res, return_counts=True)
    if (counts > 1).any():
        r = int(uniq[np.argmax(counts > 1)])
        x, y = (int(v) for v in arr[res == r][:2])
        return (x, y, y)  # x = 2y - y (mod N) with x != y
    present = np.zeros(modulus, dtype=bool)
    present[res] = True
    pair = (2 * arr[:, None] - arr[None, :]) % modulus  # indexed [y, z]
    hits = present[pair]
    # With all residues distinct, the diagonal y == z only ever finds the
    # trivial x = y = z solution.
    np.fill_diagonal(hits, False)
    if not hits.any():
        return None
    yi, zi = np.argwhere(hits)[0]
    r = int(pair[yi, zi])
    x = int(arr[res == r][0])
    return (x, int(arr[yi]), int(arr[zi]))


def _coverage_gap(values: Sequence[int], modulus: int) -> int | None:
    arr = np.asarray(values, dtype=np.int64)
    pair = (2 * arr[:, None] - arr[None, :]) % modulus
    mask = arr[:, None] >= arr[None, :]  # covering pairs need y >= z
    covered = np.zeros(modulus, dtype=bool)
    covered[pair[mask]] = True
    if covered.all():
        return None
    return int(np.argmin(covered))


def verify_near_modular(elements: Iterable[int], modulus: int) -> ModSetReport:
    """Check the near-modular conditions for A with respect to ``modulus``.

    Verdict "modular" when A additionally sits inside [0, modulus),
    "near-modular-only" when some element sticks out, "invalid" with the
    first violation otherwise.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    values = _canonical(elements)
    if not values or values[0] != 0:
        return ModSetReport("invalid", ModSetViolation("missing-zero"))
    ap = _find_mod_ap(values, modulus)
    if ap is not None:
        return ModSetReport("invalid", ModSetViolation("mod-ap", ap))
    gap = _coverage_gap(values, modulus)
    if gap is not None:
        return ModSetReport("invalid", ModSetViolation("uncovered-residue", (gap,)))
    verdict = "modular" if values[-1] < modulus else "near-modular-only"
    return ModSetReport(verdict)


def verify_modular(elements: Iterable[int], modulus: int) -> ModSetReport:
    """Like verify_near_modular but elements must also lie in [0, modulus)."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    values = _canonical(elements)
    if not values or values[0] != 0:
        return ModSetReport("invalid", ModSetViolation("missing-zero"))
    outside = tuple(v for v in values if v >= modulus)
    if outside:
        return ModSetReport("invalid", ModSetViolation("out-of-range", outside))
    report = verify_near_modular(values, modulus)
    if report.verdict != "modular":
        return ModSetReport("invalid", report.violation)
    return report


def zero_sequence_value(n: int) -> int:
    """n-th value (0-indexed) of the greedy sequence grown from {0} alone.

    Closed form: write n in binary and read those digits in ternary, so
    the values are exactly the integers whose base-3 digits are 0 or 1.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    value = 0
    power = 1
    while n:
        if n & 1:
            value += power
        power *= 3
        n >>= 1
    return value


def _zero_sequence_stream():
    n = 0
    while True:
        yield zero_sequence_value(n)
        n += 1


def expand_modular(
    elements: Iterable[int],
    modulus: int,
    count: int | None = None,
    limit: int | None = None,
) -> list[int]:
    """Sorted values of A + modulus * S({0}) for a verified modular A.

    Raises NotModularError when verification fails.  Because max(A) <
    modulus, emitting blocks in closed-form order is already sorted.
    """
    if count is None and limit is None:
        raise ValueError("need a count bound or a value limit")
    values = _canonical(elements)
    report = verify_modular(values, modulus)
    if report.verdict != "modular":
        raise NotModularError(
            f"set is not modular with respect to {modulus}: {report.violation}",
            report=report,
        )
    out: list[int] = []
    for base in _zero_sequence_stream():
        offset = modulus * base
        if limit is not None and offset > limit:
            break
        for a in values:
            v = offset + a
            if limit is not None and v > limit:
                break
            out.append(v)
            if count is not None and len(out) >= count:
                return out
        if limit is None and count is not None and len(out) >= count:
            return out
    return out


# Family table: near-modular base sets with respect to 3**(i+1), i = 1..4.
# |A| = 2**(i+1); max is 2*3**i for the A side and 4*3**i for the B side.
_FAMILY_BASE: dict[tuple[int, str], tuple[int, ...]] = {
    (1, "A"): (0, 2, 5, 6),
    (1, "B"): (0, 4, 10, 12),
    (2, "A"): (0, 1, 4, 6, 10, 13, 15, 18),
    (2, "B"): (0, 2, 8, 12, 20, 26, 30, 36),
    (3, "A"): (0, 2, 3, 5, 11, 14, 18, 21, 29, 30, 32, 38, 41, 45, 48, 54),
    (3, "B"): (0, 4, 6, 10, 22, 28, 36, 42, 58, 60, 64, 76, 82, 90, 96, 108),
    (4, "A"): (
        0, 2, 8, 9, 15, 20, 24, 26,
        54, 56, 62, 63, 69, 74, 78, 80,
        83, 89, 90, 96, 101, 105, 107, 135,
        137, 143, 144, 150, 155, 159, 161, 162,
    ),
    (4, "B"): (
        0, 4, 16, 18, 30, 40, 48, 52,
        108, 112, 124, 126, 138, 148, 156, 160,
        166, 178, 180, 192, 202, 210, 214, 270,
        274, 286, 288, 300, 310, 318, 322, 324,
    ),
}

FAMILY_INDICES = (1, 2, 3, 4)
FAMILY_SIDES = ("A", "B")


def family_modulus(index: int) -> int:
    if index not in FAMILY_INDICES:
        raise ValueError(f"family index must be one of {FAMILY_INDICES}")
    return 3 ** (index + 1)


def family_set(index: int, side: str, shift: int = 0) -> tuple[int, ...]:
    """Family base set with its largest element shifted by shift*3**(i+1)."""
    if index not in FAMILY_INDICES:
        raise ValueError(f"family index must be one of {FAMILY_INDICES}")
    if side not in FAMILY_SIDES:
        raise ValueError("side must be 'A' or 'B'")
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    base = _FAMILY_BASE[(index, side)]
    if shift == 0:
        return base
    return base[:-1] + (base[-1] + shift * family_modulus(index),)


@dataclass(frozen=True)
class FamilyEntry:
    index: int
    side: str
    modulus: int
    elements: tuple[int, ...]


def family_table() -> tuple[FamilyEntry, ...]:
    """All eight shipped base sets, in (index, side) order."""
    return tuple(
        FamilyEntry(i, s, family_modulus(i), _FAMILY_BASE[(i, s)])
        for i in FAMILY_INDICES
        for s in FAMILY_SIDES
    )


# ---------------------------------------------------------------------------
# Exhaustive search for near-modular sets.


def _extension_ok(chosen: list[int], residues: set[int], cand: int, modulus: int) -> bool:
    # Incremental progression check: adding cand must not create
    # x = 2y - z (mod N) in any role.  The modulus here is odd (a power of
    # three), so duplicated residues are the only degenerate case and are
    # rejected up front.
    cr = cand % modulus
    if cr in residues:
        return False
    for y in chosen:
        if (2 * y - cand) % modulus in residues:
            return False
        if (2 * cand - y) % modulus in residues:
            return False
    for y in chosen:
        for z in chosen:
            if (2 * y - z) % modulus == cr:
                return False
    return True


def _covers(chosen: Sequence[int], modulus: int) -> bool:
    covered = bytearray(modulus)
    for idx, y in enumerate(chosen):
        for z in chosen[: idx + 1]:
            covered[(2 * y - z) % modulus] = 1
    return all(covered)


def _branch_search(args) -> tuple[list[tuple[int, ...]], int]:
    prefix, modulus, size, max_element, node_cap = args
    chosen = list(prefix)
    residues = {v % modulus for v in chosen}
    found: list[tuple[int, ...]] = []
    nodes = 0

    def rec(start: int) -> None:
        nonlocal nodes
        slots_left = size - 1 - len(chosen)  # middle slots still to fill
        if slots_left == 0:
            nodes += 1
            if nodes > node_cap:
                raise BudgetExceededError(f"node budget exceeded ({node_cap})")
            if not _extension_ok(chosen, residues, max_element, modulus):
                return
            full = chosen + [max_element]
            if _covers(full, modulus):
                found.append(tuple(full))
            return
        for cand in range(start, max_element - slots_left + 1):
            nodes += 1
            if nodes > node_cap:
                raise BudgetExceededError(f"node budget exceeded ({node_cap})")
            if not _extension_ok(chosen, residues, cand, modulus):
                continue
            chosen.append(cand)
            residues.add(cand % modulus)
            rec(cand + 1)
            chosen.pop()
            residues.remove(cand % modulus)

    rec(prefix[-1] + 1)
    return found, nodes


def search_near_modular(
    ell: int,
    max_element: int,
    budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
    first_only: bool = False,
) -> list[NearModularSet]:
    """All near-modular sets mod 3**(ell+1) of size 2**(ell+1) ending at
    ``max_element``.

    Backtracking over ascending elements with 0 forced first and
    ``max_element`` forced last; partial progressions modulo N are pruned
    as they appear.  Results come back sorted and duplicate-free, and are
    identical for every worker count: the tree splits at fixed depth-2
    prefixes, branches are independent, and branch results are merged in
    prefix order.  ``first_only`` stops at the lexicographically first hit.
    Exceeding ``budget`` raises BudgetExceededError.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if budget < 1:
        raise ValueError("budget must be positive")
    if workers < 1:
        raise ValueError("workers must be positive")
    modulus = 3 ** (ell + 1)
    size = 2 ** (ell + 1)
    if max_element < size - 1:
        return []

    # Depth-2 prefix split: fix the two smallest middle elements.
    prefixes: list[tuple[int, int, int]] = []
    nodes_used = 0
    for v1 in range(1, max_element - (size - 3)):
        nodes_used += 1
        if not _extension_ok([0], {0}, v1, modulus):
            continue
        res1 = {0, v1 % modulus}
        for v2 in range(v1 + 1, max_element - (size - 4)):
            nodes_used += 1
            if _extension_ok([0, v1], res1, v2, modulus):
                prefixes.append((0, v1, v2))
    if nodes_used > budget:
        raise BudgetExceededError(f"node budget exceeded ({budget})")

    jobs = [(p, modulus, size, max_element, budget) for p in prefixes]
    results: list[tuple[int, ...]] = []

    if workers == 1 or first_only or len(jobs) <= 1:
        for job in jobs:
            found, nodes = _branch_search(job)
            nodes_used += nodes
            if nodes_used > budget:
                raise BudgetExceededError(f"node budget exceeded ({budget})")
            results.extend(found)
            if first_only and results:
                results = [min(results)]
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for found, nodes in pool.map(_branch_search, jobs, chunksize=1):
                nodes_used += nodes
                if nodes_used > budget:
                    raise BudgetExceededError(f"node budget exceeded ({budget})")
                results.extend(found)

    results.sort()
    return [
        NearModularSet(r, modulus, "modular" if r[-1] < modulus else "near-modular-only")
        for r in results
    ]
