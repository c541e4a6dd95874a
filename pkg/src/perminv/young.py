"""Exact Young-diagram combinatorics for the symmetric group.

A partition is a plain tuple of weakly decreasing positive ints; the empty
tuple is the unique partition of 0. Everything here is exact: counts are
Python ints, ratios are ``fractions.Fraction``. No floating point enters
this module, so every identity it checks holds with zero slack.

The one piece of notation worth spelling out: for ``theta`` of size k and a
group size n, ``bar(theta, n)`` puts a first row of length n - k on top of
theta, and ``bar_star(theta, n)`` a row of length n - k - 1 (one box
shorter).  ``trim_first_row`` removes the last box of the first row.  These
three constructions drive the eigenvalue formula ``eigenvalue_m``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial

Partition = tuple[int, ...]


def is_partition(parts) -> bool:
    """True if *parts* is a weakly decreasing sequence of positive ints."""
    parts = tuple(parts)
    if any((not isinstance(p, int)) or p < 1 for p in parts):
        return False
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def check_partition(parts) -> Partition:
    parts = tuple(parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition: {parts!r}")
    return parts


def size(lam: Partition) -> int:
    return sum(lam)


@cache
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, each exactly once, in reverse-lexicographic order.

    >>> partitions(4)
    ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return tuple(_partitions_bounded(n, n))


@cache
def _partitions_bounded(n: int, max_part: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def transpose(lam: Partition) -> Partition:
    """Conjugate diagram: column lengths become row lengths."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def hook_length(lam: Partition, i: int, j: int) -> int:
    """Hook length of box (i, j), 1-indexed: arm + leg + 1."""
    if i < 1 or i > len(lam) or j < 1 or j > lam[i - 1]:
        raise ValueError(f"box ({i}, {j}) is not in {lam}")
    leg = sum(1 for p in lam if p >= j)  # column length of column j
    return (lam[i - 1] - j) + (leg - i) + 1


def hook_product(lam: Partition) -> int:
    tr = transpose(lam)
    prod = 1
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            prod *= (row - j) + (tr[j - 1] - i) + 1
    return prod


def dim(lam: Partition) -> int:
    """Dimension of the irreducible S_n module for lam, n = size(lam).

    Hook length formula: n! divided by the product of all hook lengths.
    dim(()) == 1.
    """
    return factorial(size(lam)) // hook_product(lam)


def removable(lam: Partition) -> list[Partition]:
    """All partitions obtained from lam by deleting one corner box."""
    out = []
    for i in range(len(lam)):
        below = lam[i + 1] if i + 1 < len(lam) else 0
        if lam[i] > below:
            parts = list(lam)
            parts[i] -= 1
            if parts[i] == 0:
                parts.pop(i)
            out.append(tuple(parts))
    return out


def level(lam: Partition) -> int:
    """Number of boxes below the first row."""
    if not lam:
        raise ValueError("level of the empty partition is undefined")
    return size(lam) - lam[0]


def bar(theta: Partition, n: int) -> Partition:
    """(n - k, theta) for k = size(theta); raises if not a valid diagram."""
    k = size(theta)
    if k > n:
        raise ValueError(f"size({theta}) = {k} exceeds n = {n}")
    first = n - k
    if first == 0:
        if theta:
            raise ValueError(f"bar({theta}, {n}) has an empty first row")
        return ()
    if theta and first < theta[0]:
        raise ValueError(f"bar({theta}, {n}): first row {first} < {theta[0]}")
    return (first,) + tuple(theta)


def has_bar(theta: Partition, n: int) -> bool:
    k = size(theta)
    if k > n:
        return False
    first = n - k
    return first >= (theta[0] if theta else 0)


def bar_star(theta: Partition, n: int) -> Partition | None:
    """(n - k - 1, theta) as a diagram of size n - 1, or None if invalid."""
    return bar(theta, n - 1) if has_bar(theta, n - 1) else None


def trim_first_row(lam: Partition) -> Partition | None:
    """lam with the last box of its first row removed; None if invalid."""
    if not lam:
        return None
    first = lam[0] - 1
    second = lam[1] if len(lam) > 1 else 0
    if first < second:
        return None
    if first == 0:
        return ()
    return (first,) + lam[1:]


def eigenvalue_m(lam: Partition, n: int) -> Fraction:
    """Eigenvalue of the challenge-averaged operator on the lam block.

    n * (1 - dim(trim_first_row(lam)) / dim(lam)), or exactly n when the
    trimmed diagram does not exist.  Exact rational output.
    """
    lam = check_partition(lam) if lam else ()
    if size(lam) != n:
        raise ValueError(f"size({lam}) != {n}")
    trimmed = trim_first_row(lam)
    if trimmed is None:
        return Fraction(n)
    return n * (1 - Fraction(dim(trimmed), dim(lam)))


def ratio_bound_check(theta: Partition, n: int) -> tuple[Fraction, Fraction, bool]:
    """Exact check of dim(bar_star)/dim(bar) >= (n - 2k)/n for theta of size k.

    Returns (ratio, bound, holds).  Requires k <= n/2 and both bar shapes
    valid, which pins the regime where the bound is claimed.
    """
    k = size(theta)
    if 2 * k > n:
        raise ValueError(f"need size(theta) <= n/2, got {k} > {n}/2")
    lam = bar(theta, n)
    lam_star = bar_star(theta, n)
    if lam_star is None:
        raise ValueError(f"bar_star({theta}, {n}) is not a valid diagram")
    ratio = Fraction(dim(lam_star), dim(lam))
    bound = Fraction(n - 2 * k, n)
    return ratio, bound, ratio >= bound


# ---------------------------------------------------------------------------
# Characters via the Murnaghan-Nakayama recursion on beta-sets.


def cycle_type(perm: tuple[int, ...]) -> Partition:
    """Cycle type of a permutation of range(n), as a partition of n."""
    n = len(perm)
    seen = [False] * n
    lens = []
    for i in range(n):
        if seen[i]:
            continue
        m, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            m += 1
        lens.append(m)
    return tuple(sorted(lens, reverse=True))


def conjugacy_class_size(cycles: Partition) -> int:
    """Number of permutations of the given cycle type."""
    n = size(cycles)
    z = 1
    mult: dict[int, int] = {}
    for c in cycles:
        mult[c] = mult.get(c, 0) + 1
    for c, m in mult.items():
        z *= c**m * factorial(m)
    return factorial(n) // z


def character(lam: Partition, cycles: Partition) -> int:
    """Irreducible character of S_n at the class with the given cycle type."""
    lam = check_partition(lam) if lam else ()
    cycles = check_partition(cycles) if cycles else ()
    if size(lam) != size(cycles):
        raise ValueError(f"size mismatch: {lam} vs {cycles}")
    return _mn(lam, tuple(sorted(cycles, reverse=True)))


def identities_report(max_n: int, char_max_n: int = 8) -> dict:
    """Exhaustive exact identity sweep up to max_n.

    Checks, with zero tolerance: the branching sum for every diagram, the
    sum of squared dimensions against n!, the dimension-ratio lower bound
    (n - 2k)/n for every theta of size k <= n/2 with both bar shapes valid,
    the eigenvalue bound e <= 2k for every valid bar shape, and character
    orthogonality up to char_max_n.
    """
    branching_failures = []
    burnside_failures = []
    ratio_failures = []
    eig_failures = []
    ratio_checked = 0
    eig_checked = 0
    for n in range(1, max_n + 1):
        total = 0
        for lam in partitions(n):
            d = dim(lam)
            total += d * d
            if d != sum(dim(mu) for mu in removable(lam)):
                branching_failures.append({"n": n, "lambda": list(lam)})
        if total != factorial(n):
            burnside_failures.append({"n": n, "sum": total})
        for k in range(0, n // 2 + 1):
            for theta in partitions(k):
                if has_bar(theta, n) and bar_star(theta, n) is not None:
                    ratio_checked += 1
                    _, _, holds = ratio_bound_check(theta, n)
                    if not holds:
                        ratio_failures.append({"n": n, "theta": list(theta)})
        for k in range(0, n):
            for theta in partitions(k):
                if has_bar(theta, n):
                    eig_checked += 1
                    if eigenvalue_m(bar(theta, n), n) > 2 * k:
                        eig_failures.append({"n": n, "theta": list(theta)})
    orth_failures = []
    for n in range(1, char_max_n + 1):
        classes = partitions(n)
        sizes = {c: conjugacy_class_size(c) for c in classes}
        tables = {lam: {c: character(lam, c) for c in classes} for lam in classes}
        for i, lam in enumerate(classes):
            for mu in classes[i:]:
                inner = sum(sizes[c] * tables[lam][c] * tables[mu][c] for c in classes)
                want = factorial(n) if lam == mu else 0
                if inner != want:
                    orth_failures.append({"n": n, "lambda": list(lam), "mu": list(mu)})
    passed = not (
        branching_failures or burnside_failures or ratio_failures or eig_failures or orth_failures
    )
    return {
        "max_n": max_n,
        "char_max_n": char_max_n,
        "ratio_checked": ratio_checked,
        "eigenvalue_checked": eig_checked,
        "branching_failures": branching_failures,
        "burnside_failures": burnside_failures,
        "ratio_failures": ratio_failures,
        "eigenvalue_failures": eig_failures,
        "orthogonality_failures": orth_failures,
        "pass": passed,
    }


@cache
def _mn(lam: Partition, cycles: Partition) -> int:
    # Rim hooks of length t correspond to beta-numbers b with b - t >= 0 and
    # b - t free; the sign is (-1)^(number of beta-numbers jumped over).
    if not cycles:
        return 1
    t, rest = cycles[0], cycles[1:]
    r = len(lam)
    beta = [lam[i] + (r - 1 - i) for i in range(r)]
    bset = set(beta)
    total = 0
    for b in beta:
        low = b - t
        if low < 0 or low in bset:
            continue
        crossed = sum(1 for c in beta if low < c < b)
        new_beta = sorted((bset - {b}) | {low}, reverse=True)
        parts = [new_beta[i] - (r - 1 - i) for i in range(r)]
        while parts and parts[-1] == 0:
            parts.pop()
        total += (-1) ** crossed * _mn(tuple(parts), rest)
    return total
