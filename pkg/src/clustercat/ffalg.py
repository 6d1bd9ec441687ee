"""Dense linear algebra and subspace enumeration over prime fields F_p.

Matrices are lists of rows of Python ints reduced mod p.  Everything here
is sized for desk-scale quiver representations (a few dozen unknowns), so
plain lists beat numpy on call overhead.
"""

from __future__ import annotations

from itertools import combinations, product

DEFAULT_PRIMES = (2, 3, 5, 7, 11)
DEFAULT_SUBSPACE_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    """An enumeration would visit more items than the configured budget."""

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, int(p ** 0.5) + 1))


def primes_from(start: int = 2):
    p = start
    while True:
        if is_prime(p):
            yield p
        p += 1


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B, p: int, inner: int | None = None) -> list[list[int]]:
    """A (r x k) times B (k x c) mod p; ``inner`` gives k when A has no rows."""
    k = len(B) if inner is None else inner
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for t in range(k):
            a = row[t]
            if a:
                brow = B[t]
                for j in range(cols):
                    acc[j] += a * brow[j]
        out.append([x % p for x in acc])
    return out


def matvec(A, v, p: int) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) % p for row in A]


def transpose(A, cols: int | None = None) -> list[list[int]]:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def rref(rows, p: int, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = [[x % p for x in row] for row in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        if inv != 1:
            A[r] = [(x * inv) % p for x in A[r]]
        prow = A[r]
        for i in range(len(A)):
            if i != r:
                f = A[i][c]
                if f:
                    A[i] = [(x - f * y) % p for x, y in zip(A[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows, p: int, ncols: int | None = None) -> int:
    """Rank by forward elimination only (cheaper than full RREF)."""
    A = [[x % p for x in row] for row in rows if any(x % p for x in row)]
    if not A:
        return 0
    if ncols is None:
        ncols = len(A[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        prow = A[r]
        for i in range(r + 1, len(A)):
            f = A[i][c]
            if f:
                f = f * inv % p
                A[i] = [(x - f * y) % p for x, y in zip(A[i], prow)]
        r += 1
        if r == len(A):
            break
    return r


def solve_kernel(rows, p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of {x : A x = 0}, itself in reduced row echelon form.

    ``ncols`` must be given when ``rows`` is empty.
    """
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    if basis:
        basis, _ = rref(basis, p, ncols)
    return basis


def reduce_vector(v, basis, pivots, p: int) -> list[int]:
    """Reduce ``v`` modulo the span of an RREF ``basis`` with the given pivots."""
    v = [x % p for x in v]
    for row, pc in zip(basis, pivots):
        f = v[pc]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return v


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspaces(ambient_dim: int, sub_dim: int, p: int,
              budget: int = DEFAULT_SUBSPACE_BUDGET):
    """Yield every ``sub_dim``-dimensional subspace of F_p^ambient_dim once.

    Each subspace is given by its basis rows in reduced row echelon form;
    subspaces are emitted in lexicographic order of their pivot columns.
    """
    if not 0 <= sub_dim <= ambient_dim:
        raise ValueError("need 0 <= sub_dim <= ambient_dim")
    estimate = gaussian_binomial(ambient_dim, sub_dim, p)
    if estimate > budget:
        raise BudgetExceeded(
            f"[{ambient_dim} choose {sub_dim}]_{p} = {estimate} exceeds budget {budget}",
            estimate,
        )
    return _subspaces(ambient_dim, sub_dim, p)


def _subspaces(n: int, k: int, p: int):
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        # row r may have free entries at non-pivot columns right of its pivot
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset]
        for values in product(range(p), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), val in zip(slots, values):
                rows[r][c] = val
            yield rows


def projective_points(dim: int, p: int):
    """Vectors of F_p^dim with first nonzero coordinate 1, one per line."""
    for lead in range(dim):
        for tail in product(range(p), repeat=dim - lead - 1):
            yield (0,) * lead + (1,) + tail
