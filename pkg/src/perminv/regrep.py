"""The regular representation of S_N as dense matrices, for small N.

Everything lives in the N!-dimensional group algebra with basis vectors
indexed by the lexicographic enumeration of S_N.  The module builds the
partial-assignment subspaces A_k and A_k^y, the per-challenge high/low
projectors, their sum M over all challenges, and the isotypic projectors of
the two-sided action, then verifies the predicted decompositions and the
spectrum of M by brute force.

Two arithmetic flavors coexist.  Ranks of spanning sets are decided with
exact integer arithmetic (unnormalized assignment vectors are 0/1 integer
vectors): fraction-free Bareiss elimination on the integer Gram matrix up to
N = 5, and agreement of two independent prime-field eliminations plus a
float spectral-gap cross-check at N = 6.  Orthonormal bases, projectors and
eigensolves are double precision, with the exact ranks pinning every rank
decision the float side makes.

The default size cap is N = 6 (dimension 720).  Set PERMINV_MAX_N=7 to
allow N = 7; dense 5040^2 float matrices cost ~200 MB each.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations, permutations
from math import factorial

import numpy as np

from perminv import young
from perminv.young import Partition

HARD_CAP = 7
DEFAULT_CAP = 6

_RANK_PRIMES = (1_000_003, 999_983)


class CapacityError(ValueError):
    """Requested N needs dense matrices beyond the configured cap."""


def max_n() -> int:
    """Current cap on N: DEFAULT_CAP unless PERMINV_MAX_N raises it (<= 7)."""
    raw = os.environ.get("PERMINV_MAX_N")
    if raw is None:
        return DEFAULT_CAP
    try:
        val = int(raw)
    except ValueError as exc:
        raise CapacityError(f"PERMINV_MAX_N={raw!r} is not an integer") from exc
    return max(1, min(HARD_CAP, val))


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > max_n():
        raise CapacityError(
            f"n = {n} exceeds the cap {max_n()} "
            "(set PERMINV_MAX_N=7 to allow n = 7; ~200 MB per dense matrix)"
        )


# ---------------------------------------------------------------------------
# Group enumeration and composition.

Perm = tuple[int, ...]


@cache
def enumerate_group(n: int) -> tuple[Perm, ...]:
    """All permutations of range(n) in lexicographic one-line order."""
    _check_n(n)
    return tuple(permutations(range(n)))


@cache
def perm_index_map(n: int) -> dict[Perm, int]:
    return {p: i for i, p in enumerate(enumerate_group(n))}


@cache
def perms_matrix(n: int) -> np.ndarray:
    arr = np.array(enumerate_group(n), dtype=np.intp)
    arr.setflags(write=False)
    return arr


def perm_compose(p: Perm, q: Perm) -> Perm:
    """p after q: compose(p, q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


@cache
def composition_table(n: int) -> np.ndarray:
    """comp[a, b] = index of compose(perms[a], perms[b])."""
    perms = perms_matrix(n)
    f = len(perms)
    weights = n ** np.arange(n, dtype=np.int64)
    lut = np.full(n**n, -1, dtype=np.int64)
    lut[perms @ weights] = np.arange(f)
    comp = np.empty((f, f), dtype=np.int32)
    for a in range(f):
        comp[a] = lut[perms[a][perms] @ weights]
    comp.setflags(write=False)
    return comp


@cache
def inverse_indices(n: int) -> np.ndarray:
    idx = perm_index_map(n)
    arr = np.array([idx[perm_inverse(p)] for p in enumerate_group(n)], dtype=np.int64)
    arr.setflags(write=False)
    return arr


def act_index_map(n: int, pi_d: Perm, pi_r: Perm) -> np.ndarray:
    """Index map of the two-sided action |pi> -> |pi_r . pi . pi_d^{-1}>."""
    idx = perm_index_map(n)
    comp = composition_table(n)
    right = comp[:, idx[perm_inverse(tuple(pi_d))]]  # pi . pi_d^{-1}
    return comp[idx[tuple(pi_r)], right].astype(np.int64)


def act(pi_d: Perm, pi_r: Perm, v: np.ndarray) -> np.ndarray:
    """Apply the two-sided action to an amplitude vector over S_n."""
    n = len(pi_d)
    if len(pi_r) != n or v.shape != (factorial(n),):
        raise ValueError("dimension mismatch")
    out = np.empty_like(v)
    out[act_index_map(n, pi_d, pi_r)] = v
    return out


# ---------------------------------------------------------------------------
# Partial assignments and their spanning vectors.


@cache
def assignments(n: int, k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All k-partial assignments as tuples of (input, output) pairs.

    Deterministic lexicographic order: domains in combination order, images
    in permutation order.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= {n}, got {k}")
    out = []
    for dom in combinations(range(n), k):
        for img in permutations(range(n), k):
            out.append(tuple(zip(dom, img)))
    return tuple(out)


@cache
def assignments_with_image(n: int, k: int, y: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if not 0 <= y < n:
        raise ValueError(f"challenge {y} not in range({n})")
    return tuple(a for a in assignments(n, k) if any(v == y for _, v in a))


def assignment_indicator(n: int, alpha) -> np.ndarray:
    """0/1 vector marking the permutations compatible with alpha (exact)."""
    alpha = tuple(alpha)
    xs = [x for x, _ in alpha]
    vs = [v for _, v in alpha]
    if len(set(xs)) != len(xs) or len(set(vs)) != len(vs):
        raise ValueError(f"assignment not injective: {alpha}")
    perms = perms_matrix(n)
    mask = np.ones(len(perms), dtype=bool)
    for x, v in alpha:
        mask &= perms[:, x] == v
    return mask.astype(np.int8)


def assignment_vector(n: int, alpha) -> np.ndarray:
    """Unit-norm uniform superposition over permutations compatible with alpha."""
    ind = assignment_indicator(n, alpha).astype(np.float64)
    return ind / np.sqrt(factorial(n - len(tuple(alpha))))


def _indicator_rows(n: int, alphas) -> np.ndarray:
    perms = perms_matrix(n)
    rows = np.empty((len(alphas), len(perms)), dtype=np.int8)
    for i, alpha in enumerate(alphas):
        mask = np.ones(len(perms), dtype=bool)
        for x, v in alpha:
            mask &= perms[:, x] == v
        rows[i] = mask
    return rows


# ---------------------------------------------------------------------------
# Exact ranks: Bareiss on the integer Gram matrix (N <= 5), two prime fields
# plus a float spectral-gap cross-check (N = 6).


def _gram_int(rows: np.ndarray) -> np.ndarray:
    """Exact integer Gram matrix of an integer row matrix, on the smaller side."""
    v = rows.astype(np.float64)
    g = v @ v.T if rows.shape[0] <= rows.shape[1] else v.T @ v
    if g.size and np.abs(g).max() >= 2**52:
        raise OverflowError("Gram entries too large for exact float accumulation")
    return np.rint(g).astype(np.int64)


def _rank_bareiss(mat: np.ndarray) -> int:
    """Rank over Q via fraction-free elimination; entries stay exact minors."""
    rows = [[int(x) for x in row] for row in mat]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, len(rows)):
            rr = rows[r]
            mult = rr[col]
            for c in range(col + 1, ncols):
                num = pr[col] * rr[c] - mult * pr[c]
                q, rem = divmod(num, prev)
                if rem:  # pragma: no cover - guards the Sylvester identity
                    raise ArithmeticError("inexact division in Bareiss step")
                rr[c] = q
            rr[col] = 0
        prev = pr[col]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = (mat % p).astype(np.int64)
    nrows, ncols = a.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        r = rank + int(nz[0])
        if r != rank:
            a[[rank, r]] = a[[r, rank]]
        a[rank] = a[rank] * pow(int(a[rank, c]), p - 2, p) % p
        below = a[rank + 1 :]
        if below.size:
            below -= below[:, c : c + 1] * a[rank]
            below %= p
        rank += 1
    return rank


def _float_rank_gap_ok(gram: np.ndarray, r: int) -> bool:
    """True if the Gram spectrum shows a clean gap at the claimed rank r."""
    w = np.linalg.eigvalsh(gram.astype(np.float64))
    if r == 0:
        return w.size == 0 or w[-1] < 1e-6
    if r > w.size:
        return False
    kept = w[-r]
    dropped = w[-r - 1] if r < w.size else 0.0
    return kept > 1e6 * max(dropped, w[-1] * 1e-14)


def exact_rank(rows: np.ndarray, n: int) -> int:
    """Rank over Q of an integer matrix of group-algebra vectors."""
    if rows.shape[0] == 0:
        return 0
    gram = _gram_int(rows)
    if n <= 5:
        return _rank_bareiss(gram)
    ranks = {_rank_mod_p(gram, p) for p in _RANK_PRIMES}
    if len(ranks) != 1:
        raise ArithmeticError(f"prime-field ranks disagree: {sorted(ranks)}")
    r = ranks.pop()
    if not _float_rank_gap_ok(gram, r):
        raise ArithmeticError(f"float spectrum does not confirm rank {r}")
    return r


# ---------------------------------------------------------------------------
# Orthonormal bases and subspaces.


def _orthonormal_basis(rows: np.ndarray, expected_rank: int) -> np.ndarray:
    """Orthonormal basis (columns) of the row space, with known exact rank.

    The rank decision is made elsewhere in exact arithmetic; here we only
    insist that the float Gram spectrum confirms it with a wide gap.
    """
    m, d = rows.shape
    if expected_rank == 0:
        return np.zeros((d, 0))
    v = rows.astype(np.float64)
    small_side = m <= d
    g = v @ v.T if small_side else v.T @ v
    w, u = np.linalg.eigh(g)
    kept, dropped = w[-expected_rank], (w[-expected_rank - 1] if expected_rank < w.size else 0.0)
    if kept <= 1e6 * max(dropped, w[-1] * 1e-14):
        raise ArithmeticError(
            f"ambiguous spectral gap for rank {expected_rank}: {kept:.3e} vs {dropped:.3e}"
        )
    uk = u[:, -expected_rank:]
    basis = (v.T @ uk) / np.sqrt(w[-expected_rank:]) if small_side else uk
    q, _ = np.linalg.qr(basis)  # one polish pass to machine orthonormality
    return q


@dataclass(eq=False)
class Subspace:
    """A subspace of the group algebra with an exactly certified dimension."""

    n: int
    dim: int
    basis: np.ndarray  # shape (n!, dim), orthonormal columns, read-only


def _make_subspace(n: int, alphas) -> Subspace:
    rows = _indicator_rows(n, alphas)
    r = exact_rank(rows, n)
    q = _orthonormal_basis(rows, expected_rank=r)
    q.setflags(write=False)
    return Subspace(n=n, dim=r, basis=q)


@cache
def subspace_a(n: int, k: int) -> Subspace:
    """A_k: span of all k-partial-assignment vectors, exact rank attached."""
    _check_n(n)
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n-1, got k={k}")
    return _make_subspace(n, assignments(n, k))


@cache
def subspace_a_y(n: int, k: int, y: int) -> Subspace:
    """A_k^y: span of k-assignment vectors with y in the image; A_0^y = {0}."""
    _check_n(n)
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n-1, got k={k}")
    if k == 0:
        return Subspace(n=n, dim=0, basis=np.zeros((factorial(n), 0)))
    return _make_subspace(n, assignments_with_image(n, k, y))


@cache
def a_projector(n: int, k: int) -> np.ndarray:
    q = subspace_a(n, k).basis
    p = q @ q.T
    p.setflags(write=False)
    return p


def _assert_projector(p: np.ndarray, name: str) -> None:
    sym = np.abs(p - p.T).max()
    if sym > 1e-12:
        raise ArithmeticError(f"{name}: symmetry residual {sym:.3e} > 1e-12")
    idem = np.abs(p @ p - p).max()
    if idem > 1e-8:
        raise ArithmeticError(f"{name}: idempotence residual {idem:.3e} > 1e-8")


@cache
def high_projection(n: int, y: int) -> np.ndarray:
    """Orthogonal projector onto the high subspace for challenge y.

    Built constructively as the orthogonal sum over i of A_i^y with A_{i-1}
    projected out; the chain containment A_{i-1} in A_i^y makes the
    increment dimensions exact differences of certified ranks.
    """
    _check_n(n)
    if not 0 <= y < n:
        raise ValueError(f"challenge {y} not in range({n})")
    f = factorial(n)
    p = np.zeros((f, f))
    for i in range(1, n):
        sy = subspace_a_y(n, i, y)
        sprev = subspace_a(n, i - 1)
        expected = sy.dim - sprev.dim
        if expected == 0:
            continue
        resid = sy.basis - sprev.basis @ (sprev.basis.T @ sy.basis)
        b = _orthonormal_basis(resid.T, expected_rank=expected)
        p += b @ b.T
    _assert_projector(p, f"high_projection({n}, {y})")
    p.setflags(write=False)
    return p


@cache
def low_projection(n: int, y: int) -> np.ndarray:
    """Orthogonal projector onto the low subspace for challenge y."""
    _check_n(n)
    if not 0 <= y < n:
        raise ValueError(f"challenge {y} not in range({n})")
    f = factorial(n)
    p = np.zeros((f, f))
    for i in range(0, n):
        si = subspace_a(n, i)
        sy = subspace_a_y(n, i, y)
        expected = si.dim - sy.dim
        if expected == 0:
            continue
        if sy.dim == 0:
            resid = si.basis
        else:
            resid = si.basis - sy.basis @ (sy.basis.T @ si.basis)
        b = _orthonormal_basis(resid.T, expected_rank=expected)
        p += b @ b.T
    _assert_projector(p, f"low_projection({n}, {y})")
    p.setflags(write=False)
    return p


_M_CACHE: dict[int, np.ndarray] = {}
_M_LOCK = threading.Lock()


def build_m(n: int, threads: int | None = None) -> np.ndarray:
    """Sum of the high projectors over all challenges: symmetric PSD, not
    idempotent.  Independent per-challenge constructions may run in
    parallel; the result is cached and identical either way."""
    _check_n(n)
    with _M_LOCK:
        cached = _M_CACHE.get(n)
    if cached is not None:
        return cached
    for k in range(n):  # shared pieces, built once up front
        subspace_a(n, k)
    workers = threads if threads else min(n, os.cpu_count() or 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            projs = list(ex.map(lambda y: high_projection(n, y), range(n)))
    else:
        projs = [high_projection(n, y) for y in range(n)]
    m = np.zeros_like(projs[0])
    for p in projs:
        m = m + p
    m.setflags(write=False)
    with _M_LOCK:
        _M_CACHE.setdefault(n, m)
    return m


# ---------------------------------------------------------------------------
# Isotypic projectors from characters.


@cache
def _class_data(n: int) -> tuple[np.ndarray, tuple[Partition, ...]]:
    """Per-element conjugacy class index and the list of cycle types."""
    types: dict[Partition, int] = {}
    elem_class = np.empty(factorial(n), dtype=np.int64)
    for i, p in enumerate(enumerate_group(n)):
        ct = young.cycle_type(p)
        elem_class[i] = types.setdefault(ct, len(types))
    elem_class.setflags(write=False)
    return elem_class, tuple(types)


@cache
def isotypic_projector(n: int, lam: Partition) -> np.ndarray:
    """Projector onto the isotypic component of lam in the group algebra.

    Character sum over the left action |pi> -> |pi . g^{-1}>: the two-sided
    isotypic component coincides with the one-sided one, so this is the
    block projector with rank dim(lam)^2.
    """
    _check_n(n)
    lam = young.check_partition(lam) if lam else ()
    if young.size(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    f = factorial(n)
    elem_class, types = _class_data(n)
    chars = [young.character(lam, ct) for ct in types]
    comp = composition_table(n)
    inv_idx = inverse_indices(n)
    cols = np.arange(f)
    p = np.zeros((f, f))
    for gi in range(f):
        c = chars[elem_class[gi]]
        if c == 0:
            continue
        p[comp[:, inv_idx[gi]], cols] += c
    p *= young.dim(lam) / f
    _assert_projector(p, f"isotypic_projector({n}, {lam})")
    p.setflags(write=False)
    return p


@cache
def stabilizer_indices(n: int, y: int) -> tuple[int, ...]:
    return tuple(i for i, p in enumerate(enumerate_group(n)) if p[y] == y)


def _drop_fixed_point(ct: Partition) -> Partition:
    """Cycle type on the complement of one fixed point: remove a 1-cycle."""
    parts = list(ct)
    parts.remove(1)
    return tuple(parts)


@cache
def range_restricted_projector(n: int, mu: Partition, y: int) -> np.ndarray:
    """Projector onto the mu-isotypic part of the right action of the
    stabilizer of y (mu a partition of n - 1, acting on the range side)."""
    _check_n(n)
    mu = young.check_partition(mu) if mu else ()
    if young.size(mu) != n - 1:
        raise ValueError(f"{mu} is not a partition of {n - 1}")
    f = factorial(n)
    perms = enumerate_group(n)
    comp = composition_table(n)
    cols = np.arange(f)
    p = np.zeros((f, f))
    for gi in stabilizer_indices(n, y):
        ct = _drop_fixed_point(young.cycle_type(perms[gi]))
        c = young.character(mu, ct)
        if c == 0:
            continue
        p[comp[gi, :], cols] += c
    p *= young.dim(mu) / factorial(n - 1)
    _assert_projector(p, f"range_restricted_projector({n}, {mu}, {y})")
    p.setflags(write=False)
    return p


def block_branch_projector(n: int, theta: Partition, rho: Partition, y: int) -> np.ndarray:
    """Projector onto the (bar(theta), bar(rho)_y) sub-isotypic block."""
    lam = young.bar(theta, n)
    mu = young.bar(rho, n - 1)
    return isotypic_projector(n, lam) @ range_restricted_projector(n, mu, y)


# ---------------------------------------------------------------------------
# Predicted dimensions from the combinatorics.


def valid_thetas(n: int) -> list[Partition]:
    """All theta (any size 0..n-1) whose bar diagram of size n is valid."""
    out: list[Partition] = []
    for k in range(n):
        out.extend(t for t in young.partitions(k) if young.has_bar(t, n))
    return out


def predicted_a_dim(n: int, k: int) -> int:
    total = 0
    for j in range(k + 1):
        for theta in young.partitions(j):
            if young.has_bar(theta, n):
                total += young.dim(young.bar(theta, n)) ** 2
    return total


def predicted_high_rank(n: int) -> int:
    total = 0
    for theta in valid_thetas(n):
        d_bar = young.dim(young.bar(theta, n))
        for rho in young.removable(theta):
            total += d_bar * young.dim(young.bar(rho, n - 1))
    return total


def predicted_low_rank(n: int) -> int:
    total = 0
    for theta in valid_thetas(n):
        star = young.bar_star(theta, n)
        if star is not None:
            total += young.dim(young.bar(theta, n)) * young.dim(star)
    return total


# ---------------------------------------------------------------------------
# Reports.


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class SpectrumBlock:
    lam: Partition
    e_predicted: Fraction
    mult_predicted: int
    e_observed: float | None
    mult_observed: int | None
    ok: bool

    def to_dict(self) -> dict:
        return {
            "lambda": list(self.lam),
            "e_predicted": _fraction_str(self.e_predicted),
            "e_observed": self.e_observed,
            "mult_predicted": self.mult_predicted,
            "mult_observed": self.mult_observed,
            "ok": self.ok,
        }


@dataclass
class SpectrumReport:
    n: int
    blocks: list[SpectrumBlock]
    off_block_residual: float
    block_residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "blocks": [b.to_dict() for b in self.blocks],
            "off_block_residual": self.off_block_residual,
            "block_residual": self.block_residual,
            "pass": self.passed,
        }


def _cluster(sorted_vals: np.ndarray, tol: float) -> list[tuple[float, int]]:
    clusters: list[tuple[float, int]] = []
    start = 0
    for i in range(1, len(sorted_vals) + 1):
        if i == len(sorted_vals) or sorted_vals[i] - sorted_vals[i - 1] > tol:
            chunk = sorted_vals[start:i]
            clusters.append((float(chunk.mean()), len(chunk)))
            start = i
    return clusters


def spectrum(
    n: int,
    cluster_tol: float = 1e-6,
    block_tol: float = 1e-7,
    off_tol: float = 1e-8,
    threads: int | None = None,
) -> SpectrumReport:
    """Eigendecompose M, cluster its spectrum, and reconcile each cluster
    with the predicted per-block eigenvalue and multiplicity.

    Blocks sharing an eigenvalue merge into one observed cluster; the
    reconciliation compares the cluster count against the summed predicted
    multiplicities.  Cluster-match failures are reported, not raised.
    """
    m = build_m(n, threads=threads)
    eigs = np.sort(np.linalg.eigvalsh(m))
    clusters = _cluster(eigs, cluster_tol)

    lams = list(young.partitions(n))
    predicted: dict[Fraction, list[tuple[Partition, int]]] = {}
    for lam in lams:
        e = young.eigenvalue_m(lam, n)
        predicted.setdefault(e, []).append((lam, young.dim(lam) ** 2))

    used = set()
    blocks: list[SpectrumBlock] = []
    all_ok = True
    for e, members in sorted(predicted.items()):
        target = float(e)
        match = None
        for ci, (mean, count) in enumerate(clusters):
            if ci not in used and abs(mean - target) <= cluster_tol:
                match = (ci, mean, count)
                break
        group_mult = sum(d2 for _, d2 in members)
        if match is None:
            for lam, d2 in members:
                blocks.append(SpectrumBlock(lam, e, d2, None, None, False))
            all_ok = False
            continue
        ci, mean, count = match
        used.add(ci)
        ok = count == group_mult
        all_ok &= ok
        for lam, d2 in members:
            blocks.append(SpectrumBlock(lam, e, d2, mean, count, ok))
    if len(used) != len(clusters):
        all_ok = False

    projs = {lam: isotypic_projector(n, lam) for lam in lams}
    mp = {lam: m @ projs[lam] for lam in lams}
    block_res = max(
        float(np.abs(mp[lam] - float(young.eigenvalue_m(lam, n)) * projs[lam]).max())
        for lam in lams
    )
    off_res = 0.0
    for lam in lams:
        pm = projs[lam] @ m
        for mu in lams:
            if mu != lam:
                off_res = max(off_res, float(np.abs(pm @ projs[mu]).max()))

    passed = all_ok and block_res <= block_tol and off_res <= off_tol
    blocks.sort(key=lambda b: lams.index(b.lam))
    return SpectrumReport(n, blocks, off_res, block_res, passed)


@dataclass
class AvgBoundReport:
    n: int
    k: int
    samples: int
    seed: int
    exact_max: float
    predicted_max: Fraction
    bound: Fraction
    sample_max: float
    sample_slack: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "samples": self.samples,
            "seed": self.seed,
            "exact_max": self.exact_max,
            "predicted_max": _fraction_str(self.predicted_max),
            "bound": _fraction_str(self.bound),
            "sample_max": self.sample_max,
            "sample_slack": self.sample_slack,
            "pass": self.passed,
        }


def max_level_eigenvalue(n: int, k: int) -> Fraction:
    """max of the block eigenvalue over diagrams with at most k boxes below
    the first row (equivalently over valid bar shapes of size <= k)."""
    best = Fraction(0)
    for j in range(k + 1):
        for theta in young.partitions(j):
            if young.has_bar(theta, n):
                best = max(best, young.eigenvalue_m(young.bar(theta, n), n))
    return best


def avg_bound_check(n: int, k: int, samples: int = 100, seed: int = 0) -> AvgBoundReport:
    """Check that challenge-averaged high-subspace mass on A_k is <= 2k/n.

    The exact maximum is the top eigenvalue of M restricted to A_k divided
    by n; it must match max_{level <= k} e / n and respect the 2k/n bound.
    Seeded random unit vectors in A_k sample the bound's slack.
    """
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n-1, got k={k}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sub = subspace_a(n, k)
    m = build_m(n)
    b = sub.basis.T @ m @ sub.basis
    exact_max = float(np.linalg.eigvalsh(b)[-1]) / n
    predicted = max_level_eigenvalue(n, k) / n
    bound = Fraction(2 * k, n)

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        c = rng.standard_normal(sub.dim) + 1j * rng.standard_normal(sub.dim)
        c /= np.linalg.norm(c)
        val = float(np.real(np.conj(c) @ (b @ c))) / n
        worst = max(worst, val)
    passed = (
        abs(exact_max - float(predicted)) <= 1e-6
        and exact_max <= float(bound) + 1e-9
        and worst <= float(bound) + 1e-9
    )
    return AvgBoundReport(
        n=n,
        k=k,
        samples=samples,
        seed=seed,
        exact_max=exact_max,
        predicted_max=predicted,
        bound=bound,
        sample_max=worst,
        sample_slack=float(bound) - worst,
        passed=passed,
    )


@dataclass
class ChangeChallengeReport:
    n: int
    trials: int
    seed: int
    max_conjugation_residual: float
    max_commutation_residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "max_conjugation_residual": self.max_conjugation_residual,
            "max_commutation_residual": self.max_commutation_residual,
            "pass": self.passed,
        }


def change_of_challenge_check(n: int, trials: int = 20, seed: int = 0) -> ChangeChallengeReport:
    """Conjugating the high projector by the two-sided action relabels the
    challenge by the range-side permutation, and M commutes with the action."""
    rng = np.random.default_rng(seed)
    m = build_m(n)
    conj_res = 0.0
    comm_res = 0.0
    for _ in range(trials):
        pi_d = tuple(int(v) for v in rng.permutation(n))
        pi_r = tuple(int(v) for v in rng.permutation(n))
        y = int(rng.integers(n))
        amap = act_index_map(n, pi_d, pi_r)
        inv = np.argsort(amap)
        conj = high_projection(n, y)[np.ix_(inv, inv)]
        conj_res = max(conj_res, float(np.abs(conj - high_projection(n, pi_r[y])).max()))
        comm_res = max(comm_res, float(np.abs(m[np.ix_(inv, inv)] - m).max()))
    passed = conj_res <= 1e-8 and comm_res <= 1e-8
    return ChangeChallengeReport(n, trials, seed, conj_res, comm_res, passed)


@dataclass
class DecompReport:
    n: int
    a_dims: list[dict]
    high_ranks: list[dict]
    low_ranks: list[dict]
    chain_residual: float | None
    complement_residual: float | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a_dims": self.a_dims,
            "high_ranks": self.high_ranks,
            "low_ranks": self.low_ranks,
            "chain_residual": self.chain_residual,
            "complement_residual": self.complement_residual,
            "pass": self.passed,
        }


def nested_chain_residual(n: int) -> float:
    """Max containment residual along A_0 < A_1^y < A_1 < ... for all y."""
    worst = 0.0
    for y in range(n):
        for i in range(1, n):
            qy = subspace_a_y(n, i, y).basis
            qprev = subspace_a(n, i - 1).basis
            qi = subspace_a(n, i).basis
            # A_{i-1} inside A_i^y
            r1 = qprev - qy @ (qy.T @ qprev)
            # A_i^y inside A_i
            r2 = qy - qi @ (qi.T @ qy)
            worst = max(
                worst,
                float(np.linalg.norm(r1, ord=2)) if r1.size else 0.0,
                float(np.linalg.norm(r2, ord=2)) if r2.size else 0.0,
            )
    return worst


def decomposition_report(n: int) -> DecompReport:
    """Exact dimension identities for A_k and the high/low projector ranks.

    A_k dimensions are checked for any n within the cap; projector ranks and
    the nested-chain containments only up to n = 5, where the exact-rank
    telescoping applies at reasonable cost.
    """
    a_dims = []
    ok = True
    for k in range(n):
        computed = subspace_a(n, k).dim
        pred = predicted_a_dim(n, k)
        good = computed == pred
        ok &= good
        a_dims.append({"k": k, "dim": computed, "predicted": pred, "ok": good})

    high_rows: list[dict] = []
    low_rows: list[dict] = []
    chain_res: float | None = None
    comp_res: float | None = None
    if n <= 5:
        pred_high = predicted_high_rank(n)
        pred_low = predicted_low_rank(n)
        for y in range(n):
            exact_high = sum(
                subspace_a_y(n, i, y).dim - subspace_a(n, i - 1).dim for i in range(1, n)
            )
            exact_low = sum(
                subspace_a(n, i).dim - subspace_a_y(n, i, y).dim for i in range(n)
            )
            tr_high = int(round(float(np.trace(high_projection(n, y)))))
            tr_low = int(round(float(np.trace(low_projection(n, y)))))
            good_h = exact_high == pred_high == tr_high
            good_l = exact_low == pred_low == tr_low
            ok &= good_h and good_l
            high_rows.append(
                {"y": y, "rank": exact_high, "trace": tr_high, "predicted": pred_high, "ok": good_h}
            )
            low_rows.append(
                {"y": y, "rank": exact_low, "trace": tr_low, "predicted": pred_low, "ok": good_l}
            )
        chain_res = nested_chain_residual(n)
        ok &= chain_res <= 1e-8
        comp_res = max(
            float(
                np.abs(
                    high_projection(n, y) + low_projection(n, y) - np.eye(factorial(n))
                ).max()
            )
            for y in range(n)
        )
        ok &= comp_res <= 1e-8
    return DecompReport(n, a_dims, high_rows, low_rows, chain_res, comp_res, ok)


def branch_projector_residuals(n: int, y: int) -> tuple[float, float]:
    """(orthogonality residual, reconstruction residual) for the sub-isotypic
    blocks of the high projector at challenge y.

    Orthogonality: the bar(theta) isotypic projector absorbs its own branch
    blocks and annihilates those of any other theta.  Reconstruction: the
    branch blocks sum to the constructively built high projector.
    """
    thetas = [t for t in valid_thetas(n) if t]
    orth = 0.0
    total = np.zeros((factorial(n), factorial(n)))
    blocks: dict[Partition, list[np.ndarray]] = {}
    for theta in thetas:
        blocks[theta] = [
            block_branch_projector(n, theta, rho, y) for rho in young.removable(theta)
        ]
    for theta in thetas:
        p_iso = isotypic_projector(n, young.bar(theta, n))
        for block in blocks[theta]:
            orth = max(orth, float(np.abs(p_iso @ block - block).max()))
            total += block
        for other in thetas:
            if other == theta:
                continue
            for block in blocks[other]:
                orth = max(orth, float(np.abs(p_iso @ block).max()))
    recon = float(np.abs(total - high_projection(n, y)).max())
    return orth, recon
