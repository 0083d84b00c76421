"""Counting spanning converging trees (in-arborescences) in ring digraphs.

The cofactor route: for a digraph Laplacian with zero row sums, every
cofactor taken in row v equals the number of spanning trees converging to v,
so the principal minor at (v, v) already is the per-root count and the total
is their sum.  Minors are evaluated with fraction-free integer elimination,
because these counts serve as ground truth for the oracle tests.

For the ring digraph missing exactly the reverse arcs at positions i and n,
the total admits the closed form (i**2 + n + (n-i)**2) / 2, which reduces to
n(n+2)/4 at i = n/2 (n even) and (n+1)**2/4 at i = (n+-1)/2 (n odd); those
values are simultaneously trigonometric product identities, checked in
:func:`trig_product_check`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from . import rootfind
from .polycore import IntPolynomial
from .ringgraph import RingDigraph, arcs

BRUTE_FORCE_LIMIT = 9


@dataclass(frozen=True)
class ArborescenceCount:
    """Per-root spanning converging tree counts plus their sum."""

    per_root: tuple[int, ...]
    total: int


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    m = [[int(v) for v in row] for row in matrix]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # every division here is exact (Bareiss)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def count_by_cofactor(laplacian_matrix: Sequence[Sequence[int]]) -> ArborescenceCount:
    """All per-root in-arborescence counts of an integer Laplacian.

    ``per_root[v]`` is the principal (v, v) minor, exact.
    """
    rows = [[int(v) for v in row] for row in laplacian_matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if any(sum(row) != 0 for row in rows):
        raise ValueError("not a Laplacian: row sums must be zero")
    per_root = []
    for v in range(n):
        minor = [
            [rows[i][j] for j in range(n) if j != v]
            for i in range(n) if i != v
        ]
        per_root.append(bareiss_determinant(minor))
    return ArborescenceCount(tuple(per_root), sum(per_root))


def tree_count_formula(n: int, i: int) -> int:
    """Closed-form total count for the two-gap ring digraph with gaps (i, n-i).

    Equals (i**2 + n + (n-i)**2) / 2; the numerator is even for every valid
    (n, i), which the test suite sweeps rather than assumes.
    """
    if not 1 <= i < n:
        raise ValueError(f"need 1 <= i < n, got i={i}, n={n}")
    num = i * i + n + (n - i) * (n - i)
    if num % 2 != 0:
        raise ArithmeticError(f"count formula not integral at n={n}, i={i}")
    return num // 2


def brute_force_count(g, root: int, n: int | None = None) -> int:
    """Count spanning converging trees rooted at ``root`` by enumeration.

    Every non-root vertex picks one outgoing arc; a choice is a converging
    tree iff following the picks from each vertex reaches the root without
    revisiting a vertex.  Guarded to n <= 9 (combinatorial blow-up).
    """
    if isinstance(g, RingDigraph):
        arc_list = arcs(g)
        n = g.n
    else:
        arc_list = [(int(u), int(v)) for u, v in g]
        if n is None:
            n = max(max(u, v) for u, v in arc_list)
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"enumeration guarded to n <= {BRUTE_FORCE_LIMIT}, got {n}")
    if not 1 <= root <= n:
        raise ValueError(f"root {root} out of range 1..{n}")

    out: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in arc_list:
        out[u].append(v)
    non_root = [v for v in range(1, n + 1) if v != root]
    if any(not out[v] for v in non_root):
        return 0

    count = 0
    for choice in itertools.product(*(out[v] for v in non_root)):
        succ = dict(zip(non_root, choice))
        if all(_reaches_root(v, succ, root) for v in non_root):
            count += 1
    return count


def _reaches_root(v: int, succ: dict[int, int], root: int) -> bool:
    seen = set()
    while v != root:
        if v in seen:
            return False
        seen.add(v)
        v = succ[v]
    return True


def trig_product_check(n: int) -> tuple[float, float]:
    """Evaluate both sides of the product identity for the balanced tree count.

    Even n: (prod_{k<n/2} 2cos(pi*k/n) * prod_{k<=n/2} 2cos(pi*k/(n+2)))**2
    against n(n+2)/4.  Odd n: (prod_{k<=(n-1)/2} 2cos(pi*k/(n+1)))**4 against
    (n+1)**2/4.  Returns (product side, closed form).
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if n % 2 == 0:
        lhs = 1.0
        for k in range(1, n // 2):
            lhs *= 2 * math.cos(math.pi * k / n)
        for k in range(1, n // 2 + 1):
            lhs *= 2 * math.cos(math.pi * k / (n + 2))
        return lhs * lhs, n * (n + 2) / 4
    lhs = 1.0
    for k in range(1, (n - 1) // 2 + 1):
        lhs *= 2 * math.cos(math.pi * k / (n + 1))
    return lhs ** 4, (n + 1) ** 2 / 4


def path_laplacian(n: int) -> list[list[int]]:
    """Laplacian of the undirected path on n vertices.

    Tridiagonal with diagonal (1, 2, ..., 2, 1) and -1 off-diagonals.  Note
    this is not the cycle Laplacian (no corner entries); the cycle's spectrum
    is 4*sin(pi*k/n)**2, k = 0..n-1, while the path's is 4*cos(pi*k/(2n))**2,
    k = 1..n.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    mat = [[0] * n for _ in range(n)]
    for v in range(n):
        deg = (1 if v > 0 else 0) + (1 if v < n - 1 else 0)
        mat[v][v] = deg
        if v > 0:
            mat[v][v - 1] = -1
        if v < n - 1:
            mat[v][v + 1] = -1
    return mat


def path_matrix_spectrum(n: int) -> tuple[IntPolynomial, list[float]]:
    """Characteristic polynomial of the path Laplacian plus closed-form roots.

    The polynomial always equals z_poly(n) + z_poly(n-1) exactly (an identity
    the tests pin down); the roots are 4*cos(pi*k/(2n))**2, k = 1..n.
    """
    poly = rootfind.char_poly_exact(path_laplacian(n))
    roots = [4 * math.cos(math.pi * k / (2 * n)) ** 2 for k in range(1, n + 1)]
    return poly, roots


def count_record(g: RingDigraph) -> dict:
    """JSON-ready per-root and total counts for one ring digraph."""
    from .ringgraph import laplacian

    counts = count_by_cofactor(laplacian(g))
    return {
        "n": g.n,
        "mask": g.mask_string(),
        "per_root": list(counts.per_root),
        "total": counts.total,
    }
