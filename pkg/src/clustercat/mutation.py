"""Seeds, mutation and exchange graphs of finite-type cluster algebras."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .ffalg import BudgetExceeded
from .laurent import LaurentPoly
from .quiver import Quiver

DEFAULT_BFS_BUDGET = 5000


class SeedError(ValueError):
    pass


@dataclass(frozen=True)
class Seed:
    """Cluster of m Laurent polynomials (the last m - n frozen) and an m x n matrix."""

    cluster: tuple[LaurentPoly, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m, n = len(self.matrix), self.rank
        if len(self.cluster) != m or any(len(row) != n for row in self.matrix):
            raise SeedError("cluster length and matrix shape disagree")
        if any(self.matrix[i][j] != -self.matrix[j][i] for i in range(n) for j in range(n)):
            raise SeedError("principal part of the exchange matrix is not antisymmetric")

    @property
    def rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def mutable(self) -> tuple[LaurentPoly, ...]:
        return self.cluster[:self.rank]

    def key(self) -> frozenset:
        return frozenset(self.mutable)


def initial_seed(q: Quiver, coefficients: str = "none") -> Seed:
    """The seed (x, B_Q); with ``principal`` the matrix gets an identity block below."""
    n = q.n
    B = [list(row) for row in q.b_matrix()]
    if coefficients == "principal":
        B += [[int(i == j) for j in range(n)] for i in range(n)]
    elif coefficients != "none":
        raise SeedError(f"unknown coefficient pattern {coefficients!r}")
    m = len(B)
    return Seed(tuple(LaurentPoly.variable(i + 1, m) for i in range(m)),
                tuple(tuple(row) for row in B))


def mutate_matrix(B, j: int) -> tuple[tuple[int, ...], ...]:
    """Matrix mutation in direction j (1-based)."""
    k0 = j - 1
    out = []
    for i, row in enumerate(B):
        new = []
        for k, b in enumerate(row):
            if i == k0 or k == k0:
                new.append(-b)
            else:
                bij, bjk = row[k0], B[k0][k]
                new.append(b + (abs(bij) * bjk + bij * abs(bjk)) // 2)
        out.append(tuple(new))
    return tuple(out)


def mutate(s: Seed, j: int) -> Seed:
    """x_j x_j' = prod_{b_ij > 0} x_i^b_ij + prod_{b_ij < 0} x_i^-b_ij."""
    if not 1 <= j <= s.rank:
        raise SeedError(f"cannot mutate at {j}")
    nvars = s.cluster[0].nvars
    pos = LaurentPoly.one(nvars)
    neg = LaurentPoly.one(nvars)
    for i, row in enumerate(s.matrix):
        b = row[j - 1]
        if b > 0:
            pos = pos * s.cluster[i] ** b
        elif b < 0:
            neg = neg * s.cluster[i] ** (-b)
    new = (pos + neg).exact_div(s.cluster[j - 1])
    cluster = s.cluster[:j - 1] + (new,) + s.cluster[j:]
    return Seed(cluster, mutate_matrix(s.matrix, j))


def d_vector(x: LaurentPoly, rank: int | None = None) -> tuple[int, ...]:
    """Denominator vector in the mutable variables; the initial x_i gives -e_i."""
    rank = x.nvars if rank is None else rank
    if x.is_monomial():
        (e, c), = x.terms
        if c == 1 and sum(e[:rank]) == 1 and all(v in (0, 1) for v in e[:rank]) \
                and not any(e[rank:]):
            return tuple(-v for v in e[:rank])
    return x.denominator()[:rank]


@dataclass
class ExchangeGraph:
    seeds: list[Seed]
    edges: list[tuple[int, int, int]]
    variables: set = field(default_factory=set)

    @property
    def rank(self) -> int:
        return self.seeds[0].rank

    def cluster_keys(self) -> set[frozenset]:
        return {s.key() for s in self.seeds}

    def labels(self) -> list[list[list[int]]]:
        return [sorted(list(d_vector(x, self.rank)) for x in s.mutable) for s in self.seeds]

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        for k, lab in enumerate(self.labels()):
            G.add_node(k, label=json.dumps(lab, separators=(",", ":")))
        for a, b, j in self.edges:
            G.add_edge(a, b, direction=j)
        return G

    def to_json(self) -> dict:
        data = nx.node_link_data(self.to_networkx(), edges="links")
        data["clusters"] = len(self.seeds)
        data["variables"] = len(self.variables)
        return data

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for k, lab in enumerate(self.labels()):
            text = " ".join("(" + ",".join(map(str, v)) + ")" for v in lab)
            lines.append(f'  {k} [label="{text}"];')
        for a, b, j in self.edges:
            lines.append(f'  {a} -- {b} [label="{j}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def exchange_graph(s: Seed, budget: int = DEFAULT_BFS_BUDGET) -> ExchangeGraph:
    """Breadth-first search over seeds, identified by unordered mutable cluster."""
    index = {s.key(): 0}
    seeds, edges = [s], []
    variables = set(s.mutable)
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for j in range(1, s.rank + 1):
            t = mutate(seeds[a], j)
            key = t.key()
            b = index.get(key)
            if b is None:
                if len(seeds) >= budget:
                    raise BudgetExceeded(f"not finite within budget ({budget} seeds)", budget)
                b = index[key] = len(seeds)
                seeds.append(t)
                variables.update(t.mutable)
                queue.append(b)
            if a < b:
                edges.append((a, b, j))
    return ExchangeGraph(seeds, edges, variables)


def variables_vs_objects(cat, budget: int = DEFAULT_BFS_BUDGET) -> dict:
    """Compare BFS cluster variables with X of indecomposables, and clusters with tilting objects."""
    from .ccmap import x_of

    g = exchange_graph(initial_seed(cat.quiver), budget)
    objects = {x_of(cat, z) for z in cat.indecomposables}
    keys = g.cluster_keys()
    tilting = cat.tilting_objects()
    tilting_hits = sum(1 for t in tilting
                       if frozenset(x_of(cat, z) for z, _ in t.summands()) in keys)
    return {
        "clusters": len(g.seeds),
        "variables": len(g.variables),
        "indecomposables": len(cat.indecomposables),
        "tilting_objects": len(tilting),
        "variables_match": g.variables == objects,
        "tilting_clusters_match": tilting_hits == len(tilting) == len(keys),
        "positive": all(x.nonnegative() for x in g.variables),
    }


def projection_check(q: Quiver, budget: int = DEFAULT_BFS_BUDGET) -> dict:
    """Setting principal coefficients to 1 maps lifted clusters onto the plain ones."""
    plain = exchange_graph(initial_seed(q), budget)
    lifted = exchange_graph(initial_seed(q, "principal"), budget)
    n = q.n
    projected = {frozenset(x.truncate_vars(n) for x in s.mutable) for s in lifted.seeds}
    return {
        "plain_clusters": len(plain.seeds),
        "lifted_clusters": len(lifted.seeds),
        "commutes": projected == plain.cluster_keys() and len(lifted.seeds) == len(plain.seeds),
    }
