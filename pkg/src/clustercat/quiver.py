"""Simply laced Dynkin quivers and their root-theoretic data.

Vertices are numbered ``1..n`` exactly as the caller supplies them; every
vector returned here is a tuple indexed by ``vertex - 1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import product

Vector = tuple[int, ...]

SUPPORTED_TYPES = (
    [f"A{n}" for n in range(1, 9)] + [f"D{n}" for n in range(4, 7)] + ["E6", "E7", "E8"]
)


class QuiverError(ValueError):
    """Raised for arrow lists that do not orient the declared Dynkin graph."""


def dynkin_edges(type_label: str) -> list[tuple[int, int]]:
    """Standard edge list of a Dynkin diagram.

    A_n is the path 1-2-...-n, D_n the path 1-...-(n-1) with n attached to
    n-2 (so D4 has centre 2), E_n the path 1-...-(n-1) with n attached to 3.
    """
    kind, n = _split_type(type_label)
    if kind == "A":
        return [(i, i + 1) for i in range(1, n)]
    if kind == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    return [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]


def _split_type(type_label: str) -> tuple[str, int]:
    if type_label not in SUPPORTED_TYPES:
        raise QuiverError(f"unsupported Dynkin type {type_label!r}")
    return type_label[0], int(type_label[1:])


def _arm_lengths(n: int, edges: list[tuple[int, int]]) -> list[int]:
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    branch = [v for v in adj if len(adj[v]) == 3]
    if not branch:
        return [n - 1]
    centre = branch[0]
    arms = []
    for start in sorted(adj[centre]):
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def _shape_signature(n: int, edges: list[tuple[int, int]]) -> tuple:
    degrees = [0] * (n + 1)
    for a, b in edges:
        degrees[a] += 1
        degrees[b] += 1
    return (sorted(degrees[1:]), _arm_lengths(n, edges))


def _is_tree(n: int, edges: list[tuple[int, int]]) -> bool:
    if len(edges) != n - 1:
        return False
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


@dataclass(frozen=True)
class Quiver:
    type_label: str
    arrows: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return _split_type(self.type_label)[1]

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    # -- Euler form and friends -------------------------------------------

    @cached_property
    def euler_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        E = [[int(i == j) for j in range(n)] for i in range(n)]
        for s, t in self.arrows:
            E[s - 1][t - 1] -= 1
        return tuple(tuple(row) for row in E)

    def euler_form(self, d, e) -> int:
        if len(d) != self.n or len(e) != self.n:
            raise ValueError("vector length does not match the number of vertices")
        value = sum(x * y for x, y in zip(d, e))
        for s, t in self.arrows:
            value -= d[s - 1] * e[t - 1]
        return value

    def symmetric_form(self, d, e) -> int:
        return self.euler_form(d, e) + self.euler_form(e, d)

    def tits_form(self, d) -> int:
        return self.euler_form(d, d)

    def unit(self, i: int) -> Vector:
        return tuple(int(j == i) for j in self.vertices)

    @cached_property
    def _paths(self) -> tuple[tuple[int, ...], ...]:
        # paths[i][j] = number of oriented paths from i to j (trees: 0 or 1)
        n = self.n
        out = {v: [t for s, t in self.arrows if s == v] for v in self.vertices}
        table = []
        for i in self.vertices:
            row = [0] * n
            stack = [i]
            while stack:
                v = stack.pop()
                row[v - 1] += 1
                stack.extend(out[v])
            table.append(tuple(row))
        return tuple(table)

    def dim_projective(self, i: int) -> Vector:
        """dim P_i: (P_i)_j counts paths i -> j."""
        return self._paths[i - 1]

    def dim_injective(self, i: int) -> Vector:
        """dim I_i: (I_i)_j counts paths j -> i."""
        return tuple(self._paths[j - 1][i - 1] for j in self.vertices)

    def is_sink(self, v: int) -> bool:
        return all(s != v for s, _ in self.arrows)

    def is_source(self, v: int) -> bool:
        return all(t != v for _, t in self.arrows)

    def reflect(self, v: int) -> "Quiver":
        """Reverse every arrow incident to ``v``."""
        arrows = tuple((t, s) if v in (s, t) else (s, t) for s, t in self.arrows)
        return Quiver(self.type_label, arrows)

    def opposite(self) -> "Quiver":
        return Quiver(self.type_label, tuple((t, s) for s, t in self.arrows))

    @cached_property
    def sink_order(self) -> tuple[int, ...]:
        """Vertices ordered so that i precedes j whenever there is a path j -> i."""
        order, placed = [], set()
        while len(order) < self.n:
            for v in self.vertices:
                if v in placed:
                    continue
                if all(t in placed for s, t in self.arrows if s == v):
                    order.append(v)
                    placed.add(v)
        return tuple(order)

    # -- Coxeter transformation -------------------------------------------

    @cached_property
    def _coxeter_matrices(self):
        n = self.n
        E = [[Fraction(x) for x in row] for row in self.euler_matrix]
        Einv = _inverse(E)
        Et = [[E[j][i] for j in range(n)] for i in range(n)]
        Phi = _matmul([[-x for x in row] for row in Einv], Et)
        EtInv = _inverse(Et)
        Phi_inv = _matmul([[-x for x in row] for row in EtInv], E)
        as_int = lambda M: tuple(tuple(int(x) for x in row) for row in M)
        return as_int(Phi), as_int(Phi_inv)

    def coxeter(self, d, power: int = 1) -> Vector:
        """Apply Phi**power; Phi(dim M) = dim tau M, Phi(dim P_i) = -dim I_i."""
        M = self._coxeter_matrices[0 if power >= 0 else 1]
        v = tuple(d)
        for _ in range(abs(power)):
            v = tuple(sum(M[i][j] * v[j] for j in range(self.n)) for i in range(self.n))
        return v

    # -- roots --------------------------------------------------------------

    @cached_property
    def preprojective_table(self) -> tuple[tuple[Vector, int, int], ...]:
        """(root, k, i) with root = dim tau^-k P_i, sorted along the AR quiver."""
        pos = {v: idx for idx, v in enumerate(self.sink_order)}
        table = []
        for i in self.vertices:
            d, k = self.dim_projective(i), 0
            while all(x >= 0 for x in d):
                table.append((d, k, i))
                d = self.coxeter(d, -1)
                k += 1
        table.sort(key=lambda item: (item[1], pos[item[2]]))
        return tuple(table)

    def positive_roots(self) -> list[Vector]:
        """All positive roots, listed along a linear extension of the AR quiver."""
        return [d for d, _, _ in self.preprojective_table]

    def is_positive_root(self, d) -> bool:
        return tuple(d) in self._root_set

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.positive_roots())

    def b_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        B = [[0] * n for _ in range(n)]
        for s, t in self.arrows:
            B[s - 1][t - 1] += 1
            B[t - 1][s - 1] -= 1
        return tuple(tuple(row) for row in B)

    def apply_b(self, e) -> Vector:
        B = self.b_matrix()
        return tuple(sum(B[i][j] * e[j] for j in range(self.n)) for i in range(self.n))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"type": self.type_label, "arrows": [list(a) for a in self.arrows]}

    def __str__(self) -> str:
        arrows = ",".join(f"{s}->{t}" for s, t in self.arrows)
        return f"{self.type_label}[{arrows}]"


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def _inverse(M):
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def parse_arrows(text: str) -> list[tuple[int, int]]:
    """Parse the compact form ``"1->2,3->2"``."""
    text = text.strip()
    if not text:
        return []
    arrows = []
    for chunk in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*->\s*(\d+)\s*", chunk)
        if not m:
            raise QuiverError(f"cannot parse arrow {chunk!r}")
        arrows.append((int(m.group(1)), int(m.group(2))))
    return arrows


def build_quiver(type_label: str, arrows) -> Quiver:
    """Validate ``arrows`` as an orientation of the Dynkin graph ``type_label``."""
    if isinstance(arrows, str):
        arrows = parse_arrows(arrows)
    kind, n = _split_type(type_label)
    arrows = tuple((int(s), int(t)) for s, t in arrows)
    if len(set(arrows)) != len(arrows):
        raise QuiverError("duplicate arrows")
    for s, t in arrows:
        if not (1 <= s <= n and 1 <= t <= n) or s == t:
            raise QuiverError(f"arrow {s}->{t} is not between distinct vertices 1..{n}")
    edges = [tuple(sorted(a)) for a in arrows]
    if len(set(edges)) != len(edges):
        raise QuiverError("two arrows join the same pair of vertices")
    if not _is_tree(n, edges):
        raise QuiverError(f"arrows do not form a tree on {n} vertices")
    if _shape_signature(n, edges) != _shape_signature(n, dynkin_edges(type_label)):
        raise QuiverError(f"underlying graph is not of type {type_label}")
    return Quiver(type_label, arrows)


def standard_quiver(type_label: str, orientation: str = "linear") -> Quiver:
    """Preset orientations of the standard diagram.

    ``linear`` points every edge (a, b), a < b, as b -> a; ``alternating``
    makes the vertices of one bipartite class sources.
    """
    edges = dynkin_edges(type_label)
    if orientation == "linear":
        return build_quiver(type_label, [(b, a) for a, b in edges])
    if orientation == "alternating":
        _, n = _split_type(type_label)
        colour = {1: 0}
        todo = [1]
        while todo:
            v = todo.pop()
            for a, b in edges:
                for x, y in ((a, b), (b, a)):
                    if x == v and y not in colour:
                        colour[y] = 1 - colour[v]
                        todo.append(y)
        return build_quiver(type_label, [(a, b) if colour[a] == 0 else (b, a) for a, b in edges])
    raise QuiverError(f"unknown orientation preset {orientation!r}")


def quiver_from_json(data) -> Quiver:
    if isinstance(data, str):
        data = json.loads(data)
    arrows = data["arrows"]
    return build_quiver(data["type"], arrows)


def root_oracle(q: Quiver) -> list[Vector]:
    """Positive roots by brute force: nonnegative d with <d,d> = 1 in a box."""
    # largest coefficient of the highest root
    bound = {"A": 1, "D": 2}.get(q.type_label[0]) or {"E6": 3, "E7": 4, "E8": 6}[q.type_label]
    found = []
    for d in product(range(bound + 1), repeat=q.n):
        if any(d) and q.tits_form(d) == 1:
            found.append(d)
    return found
