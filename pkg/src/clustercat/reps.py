"""Explicit representations of Dynkin quivers over F_p.

Indecomposables are produced by BGP reflection functors, iso-types are
detected from the Hom-dimension vector against the indecomposables (the
matrix of Hom dimensions is unitriangular along the AR order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import cycle

from . import ffalg
from .quiver import Quiver, Vector


class RepError(ValueError):
    pass


Matrix = tuple[tuple[int, ...], ...]


def _freeze(M) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in M)


@dataclass(frozen=True)
class Rep:
    """A representation: vector spaces F_p^dims[v-1], one matrix per arrow.

    ``maps[a]`` is the matrix of arrow ``quiver.arrows[a] = (s, t)`` with
    shape dims[t] x dims[s].
    """

    quiver: Quiver
    dims: Vector
    maps: tuple[Matrix, ...]
    p: int

    def __post_init__(self):
        if len(self.dims) != self.quiver.n or len(self.maps) != len(self.quiver.arrows):
            raise RepError("representation does not match its quiver")
        for (s, t), M in zip(self.quiver.arrows, self.maps):
            if len(M) != self.dims[t - 1] or any(len(r) != self.dims[s - 1] for r in M):
                raise RepError(f"arrow {s}->{t} has a matrix of the wrong shape")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def map_of(self, a: int) -> Matrix:
        return self.maps[a]

    def is_semisimple(self) -> bool:
        return all(not any(any(r) for r in M) for M in self.maps)

    def dual(self) -> "Rep":
        """The transpose representation over the opposite quiver."""
        return Rep(self.quiver.opposite(), self.dims,
                   tuple(_freeze(ffalg.transpose(M, self.dims[s - 1]))
                         for (s, t), M in zip(self.quiver.arrows, self.maps)),
                   self.p)


def zero_rep(q: Quiver, p: int) -> Rep:
    return Rep(q, (0,) * q.n, tuple(() for _ in q.arrows), p)


def simple_rep(q: Quiver, i: int, p: int) -> Rep:
    dims = q.unit(i)
    return Rep(q, dims, tuple(tuple(() for _ in range(dims[t - 1])) for s, t in q.arrows), p)


def direct_sum(reps, q: Quiver | None = None, p: int | None = None) -> Rep:
    reps = list(reps)
    if not reps:
        return zero_rep(q, p)
    q, p = reps[0].quiver, reps[0].p
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(q.n))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        M = ffalg.zeros(dims[t - 1], dims[s - 1])
        ro = co = 0
        for r in reps:
            block = r.maps[a]
            for i, row in enumerate(block):
                M[ro + i][co:co + len(row)] = row
            ro += r.dims[t - 1]
            co += r.dims[s - 1]
        maps.append(_freeze(M))
    return Rep(q, dims, tuple(maps), p)


# -- reflection functors -----------------------------------------------------

def reflect_at_sink(M: Rep, k: int) -> Rep:
    """S_k^+ : kernel of the sum of the maps into the sink k."""
    q = M.quiver
    incoming = [(a, s) for a, (s, t) in enumerate(q.arrows) if t == k]
    if any(s == k for s, _ in q.arrows):
        raise RepError(f"vertex {k} is not a sink")
    widths = [M.dims[s - 1] for _, s in incoming]
    total = sum(widths)
    h = [[] for _ in range(M.dims[k - 1])]
    for a, s in incoming:
        for r in range(M.dims[k - 1]):
            h[r].extend(M.maps[a][r])
    K = ffalg.solve_kernel(h, M.p, total) if total else []
    newq = q.reflect(k)
    maps = list(M.maps)
    offset = 0
    for (a, s), w in zip(incoming, widths):
        # arrow now k -> s; matrix dims[s] x len(K)
        maps[a] = _freeze([[K[c][offset + r] for c in range(len(K))] for r in range(w)])
        offset += w
    dims = list(M.dims)
    dims[k - 1] = len(K)
    return Rep(newq, tuple(dims), tuple(maps), M.p)


def reflect_at_source(M: Rep, k: int) -> Rep:
    """S_k^- : cokernel of the sum of the maps out of the source k."""
    q = M.quiver
    outgoing = [(a, t) for a, (s, t) in enumerate(q.arrows) if s == k]
    if any(t == k for _, t in q.arrows):
        raise RepError(f"vertex {k} is not a source")
    heights = [M.dims[t - 1] for _, t in outgoing]
    total = sum(heights)
    dk = M.dims[k - 1]
    # image of M_k in the sum: columns of the stacked matrix
    cols = []
    for c in range(dk):
        col = []
        for a, t in outgoing:
            col.extend(M.maps[a][r][c] for r in range(M.dims[t - 1]))
        cols.append(col)
    basis, pivots = ffalg.rref(cols, M.p, total) if cols else ([], [])
    pivset = set(pivots)
    keep = [c for c in range(total) if c not in pivset]
    newq = q.reflect(k)
    maps = list(M.maps)
    offset = 0
    for (a, t), hgt in zip(outgoing, heights):
        # arrow now t -> k; matrix len(keep) x dims[t]
        block = []
        for r in range(hgt):
            e = [0] * total
            e[offset + r] = 1
            red = ffalg.reduce_vector(e, basis, pivots, M.p)
            block.append([red[c] for c in keep])
        maps[a] = _freeze(ffalg.transpose(block, len(keep)))
        offset += hgt
    dims = list(M.dims)
    dims[k - 1] = len(keep)
    return Rep(newq, tuple(dims), tuple(maps), M.p)


def _reflect_vector(q: Quiver, d, k: int) -> Vector:
    c = q.symmetric_form(d, q.unit(k))
    return tuple(x - c * (i == k - 1) for i, x in enumerate(d))


def build_indecomposable(q: Quiver, root, p: int) -> Rep:
    """Indecomposable with dimension vector ``root``, via reflection functors.

    Reflect along the admissible sink sequence until the vector becomes the
    simple root of the next sink, then rebuild with the inverse functors.
    """
    d = tuple(root)
    if not q.is_positive_root(d):
        raise RepError(f"{d} is not a positive root of {q.type_label}")
    steps = []
    cur = q
    for k in cycle(q.sink_order):
        if d == cur.unit(k):
            break
        steps.append((k, cur))
        d = _reflect_vector(cur, d, k)
        if any(x < 0 for x in d):
            raise RepError("reflection left the positive roots")
        cur = cur.reflect(k)
    M = simple_rep(cur, k, p)
    for k, before in reversed(steps):
        M = reflect_at_source(M, k)
        assert M.quiver == before
    return Rep(q, M.dims, M.maps, p)


# -- Hom and Ext -------------------------------------------------------------

def _check_pair(M: Rep, N: Rep):
    if M.quiver != N.quiver or M.p != N.p:
        raise RepError("representations over different quivers or primes")


def _hom_system(M: Rep, N: Rep):
    q = M.quiver
    offset, nvars = [], 0
    for v in range(q.n):
        offset.append(nvars)
        nvars += N.dims[v] * M.dims[v]
    rows = []
    for a, (s, t) in enumerate(q.arrows):
        s0, t0 = s - 1, t - 1
        Ma, Na = M.maps[a], N.maps[a]
        ms, ns, mt, nt = M.dims[s0], N.dims[s0], M.dims[t0], N.dims[t0]
        # (N_a f_s - f_t M_a)[r][c], r < nt, c < ms
        for r in range(nt):
            for c in range(ms):
                row = [0] * nvars
                for k in range(ns):
                    x = Na[r][k]
                    if x:
                        row[offset[s0] + k * ms + c] += x
                for k in range(mt):
                    x = Ma[k][c]
                    if x:
                        row[offset[t0] + r * mt + k] -= x
                if any(row):
                    rows.append(row)
    return rows, nvars, offset


def hom_dim(M: Rep, N: Rep) -> int:
    _check_pair(M, N)
    if not any(a and b for a, b in zip(M.dims, N.dims)):
        return 0
    rows, nvars, _ = _hom_system(M, N)
    return nvars - ffalg.rank(rows, M.p, nvars)


def hom_space(M: Rep, N: Rep) -> list[tuple[Matrix, ...]]:
    """Basis of Hom(M, N); each morphism is a tuple of matrices N_v x M_v."""
    _check_pair(M, N)
    rows, nvars, offset = _hom_system(M, N)
    basis = ffalg.solve_kernel(rows, M.p, nvars) if nvars else []
    return [unflatten_morphism(M, N, vec, offset) for vec in basis]


def unflatten_morphism(M: Rep, N: Rep, vec, offset=None):
    if offset is None:
        offset, acc = [], 0
        for v in range(M.quiver.n):
            offset.append(acc)
            acc += N.dims[v] * M.dims[v]
    out = []
    for v in range(M.quiver.n):
        m, nn = M.dims[v], N.dims[v]
        out.append(tuple(tuple(vec[offset[v] + r * m + c] for c in range(m)) for r in range(nn)))
    return tuple(out)


def ext_dim(M: Rep, N: Rep) -> int:
    """dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>."""
    return hom_dim(M, N) - M.quiver.euler_form(M.dims, N.dims)


def ext_cocycles(N: Rep, M: Rep):
    """Representatives for a basis of Ext^1(N, M) (extensions 0->M->Y->N->0).

    Returns (basis, layout): each basis element is the flat vector of the
    maps g_a : N_s -> M_t, and ``layout`` locates each arrow's block.
    This is the cokernel of f -> (M_a f_s - f_t N_a).
    """
    _check_pair(M, N)
    q, p = M.quiver, M.p
    layout, total = [], 0
    for s, t in q.arrows:
        layout.append(total)
        total += M.dims[t - 1] * N.dims[s - 1]
    images = []
    for v in range(q.n):
        for r in range(M.dims[v]):
            for c in range(N.dims[v]):
                # f_v = E_rc (M_v x N_v)
                img = [0] * total
                for a, (s, t) in enumerate(q.arrows):
                    s0, t0 = s - 1, t - 1
                    ns, mt = N.dims[s0], M.dims[t0]
                    if s0 == v:  # M_a f_s: column c of result gets M_a[:, r]
                        for i in range(mt):
                            img[layout[a] + i * ns + c] += M.maps[a][i][r]
                    if t0 == v:  # - f_t N_a: row r gets -N_a[c, :]
                        for j in range(ns):
                            img[layout[a] + r * ns + j] -= N.maps[a][c][j]
                images.append(img)
    _, pivots = ffalg.rref(images, p, total) if images else ([], [])
    pivset = set(pivots)
    basis = []
    for c in range(total):
        if c not in pivset:
            e = [0] * total
            e[c] = 1
            basis.append(e)
    return basis, layout


def extension_rep(N: Rep, M: Rep, g, layout) -> Rep:
    """Middle term of 0 -> M -> Y -> N -> 0 given by the cocycle ``g``."""
    q = M.quiver
    dims = tuple(m + n for m, n in zip(M.dims, N.dims))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        s0, t0 = s - 1, t - 1
        ms, ns, mt, nt = M.dims[s0], N.dims[s0], M.dims[t0], N.dims[t0]
        Y = ffalg.zeros(mt + nt, ms + ns)
        for i in range(mt):
            Y[i][:ms] = M.maps[a][i]
            for j in range(ns):
                Y[i][ms + j] = g[layout[a] + i * ns + j]
        for i in range(nt):
            Y[mt + i][ms:] = N.maps[a][i]
        maps.append(_freeze(Y))
    return Rep(q, dims, tuple(maps), M.p)


# -- submodules, kernels, cokernels -------------------------------------------

def subrep(M: Rep, bases) -> Rep:
    """The subrepresentation spanned by RREF bases (one list of rows per vertex)."""
    q, p = M.quiver, M.p
    pivots = [ffalg.rref(B, p, M.dims[v])[1] if B else [] for v, B in enumerate(bases)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        s0, t0 = s - 1, t - 1
        cols = []
        for b in bases[s0]:
            img = ffalg.matvec(M.maps[a], b, p)
            cols.append([img[c] for c in pivots[t0]])
        maps.append(_freeze(ffalg.transpose(cols, len(bases[t0]))))
    dims = tuple(len(B) for B in bases)
    return Rep(q, dims, tuple(maps), p)


def quotient_rep(M: Rep, bases) -> Rep:
    """M modulo the subrepresentation spanned by RREF bases."""
    q, p = M.quiver, M.p
    piv = []
    for v, B in enumerate(bases):
        piv.append(ffalg.rref(B, p, M.dims[v])[1] if B else [])
    keep = [[c for c in range(M.dims[v]) if c not in set(piv[v])] for v in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        s0, t0 = s - 1, t - 1
        cols = []
        for c in keep[s0]:
            img = [M.maps[a][r][c] for r in range(M.dims[t0])]
            red = ffalg.reduce_vector(img, bases[t0], piv[t0], p) if bases[t0] else img
            cols.append([red[k] for k in keep[t0]])
        maps.append(_freeze(ffalg.transpose(cols, len(keep[t0]))))
    dims = tuple(len(k) for k in keep)
    return Rep(q, dims, tuple(maps), p)


def kernel_rep(M: Rep, N: Rep, f) -> Rep:
    """Kernel of the morphism f : M -> N (f[v] has shape N_v x M_v)."""
    p = M.p
    bases = []
    for v in range(M.quiver.n):
        if M.dims[v] == 0:
            bases.append([])
        elif N.dims[v] == 0:
            bases.append(ffalg.identity(M.dims[v]))
        else:
            bases.append(ffalg.solve_kernel(f[v], p, M.dims[v]))
    return subrep(M, bases)


def cokernel_rep(M: Rep, N: Rep, f) -> Rep:
    """Cokernel of the morphism f : M -> N."""
    p = M.p
    bases = []
    for v in range(N.quiver.n):
        if M.dims[v] == 0 or N.dims[v] == 0:
            bases.append([])
        else:
            cols = ffalg.transpose(f[v], M.dims[v])
            bases.append(ffalg.rref(cols, p, N.dims[v])[0])
    return quotient_rep(N, bases)


# -- iso-types -----------------------------------------------------------------

@dataclass(frozen=True)
class IsoType:
    """A multiset of positive roots: the iso-class of a module over Dynkin Q."""

    items: tuple[tuple[Vector, int], ...] = ()

    @classmethod
    def of(cls, mapping) -> "IsoType":
        merged = {}
        pairs = mapping.items() if isinstance(mapping, dict) else mapping
        for root, mult in pairs:
            root = tuple(root)
            merged[root] = merged.get(root, 0) + mult
            if merged[root] < 0:
                raise RepError("negative multiplicity")
        return cls(tuple(sorted((r, m) for r, m in merged.items() if m)))

    def as_dict(self) -> dict:
        return dict(self.items)

    def roots(self):
        for r, m in self.items:
            for _ in range(m):
                yield r

    def __add__(self, other: "IsoType") -> "IsoType":
        return IsoType.of(list(self.items) + list(other.items))

    def __bool__(self) -> bool:
        return bool(self.items)

    def dim(self, n: int) -> Vector:
        out = [0] * n
        for r, m in self.items:
            for i, x in enumerate(r):
                out[i] += m * x
        return tuple(out)

    def to_json(self) -> dict:
        return {"module": {json.dumps(list(r), separators=(",", ":")): m for r, m in self.items},
                "shifted_projectives": {}}


class RepEngine:
    """Per-quiver tables: indecomposables per prime, Hom dimensions, AR order."""

    def __init__(self, quiver: Quiver, base_prime: int = 2):
        self.quiver = quiver
        self.base_prime = base_prime
        self._indec: dict[tuple[Vector, int], Rep] = {}
        self._exceptional: dict[Vector, IsoType] = {}

    @cached_property
    def roots(self) -> tuple[Vector, ...]:
        return tuple(self.quiver.positive_roots())

    @cached_property
    def index(self) -> dict[Vector, int]:
        return {r: i for i, r in enumerate(self.roots)}

    def indecomposable(self, root, p: int) -> Rep:
        key = (tuple(root), p)
        if key not in self._indec:
            self._indec[key] = build_indecomposable(self.quiver, root, p)
        return self._indec[key]

    def rep_of(self, t: IsoType, p: int) -> Rep:
        return direct_sum([self.indecomposable(r, p) for r in t.roots()], self.quiver, p)

    @cached_property
    def hom_table(self) -> tuple[tuple[int, ...], ...]:
        """hom_table[k][l] = dim Hom(Z_k, Z_l) over the base prime."""
        p = self.base_prime
        reps = [self.indecomposable(r, p) for r in self.roots]
        return tuple(tuple(hom_dim(a, b) for b in reps) for a in reps)

    def hom_table_at(self, p: int) -> tuple[tuple[int, ...], ...]:
        reps = [self.indecomposable(r, p) for r in self.roots]
        return tuple(tuple(hom_dim(a, b) for b in reps) for a in reps)

    @cached_property
    def ext_table(self) -> tuple[tuple[int, ...], ...]:
        q = self.quiver
        H = self.hom_table
        return tuple(tuple(H[k][l] - q.euler_form(a, b) for l, b in enumerate(self.roots))
                     for k, a in enumerate(self.roots))

    @cached_property
    def hom_order(self) -> tuple[int, ...]:
        """Indices of the indecomposables topologically sorted for Z_i -> Z_j."""
        n = len(self.roots)
        H = self.hom_table
        indeg = [sum(1 for k in range(n) if k != l and H[k][l]) for l in range(n)]
        order, ready = [], [l for l in range(n) if indeg[l] == 0]
        while ready:
            k = ready.pop(0)
            order.append(k)
            for l in range(n):
                if l != k and H[k][l]:
                    indeg[l] -= 1
                    if indeg[l] == 0:
                        ready.append(l)
        if len(order) != n:
            raise RepError("Hom relation has a cycle; not a directed module category")
        return tuple(order)

    def hom(self, a: IsoType, b: IsoType) -> int:
        H, idx = self.hom_table, self.index
        return sum(ma * mb * H[idx[x]][idx[y]] for x, ma in a.items for y, mb in b.items)

    def ext(self, a: IsoType, b: IsoType) -> int:
        X, idx = self.ext_table, self.index
        return sum(ma * mb * X[idx[x]][idx[y]] for x, ma in a.items for y, mb in b.items)

    def ext_roots(self, x, y) -> int:
        return self.ext_table[self.index[tuple(x)]][self.index[tuple(y)]]

    def decompose(self, M: Rep) -> IsoType:
        """Krull-Schmidt multiplicities from dim Hom(Z_k, M) for all k."""
        if M.quiver != self.quiver:
            raise RepError("representation over a different quiver")
        if M.total_dim == 0:
            return IsoType()
        q = self.quiver
        if M.is_semisimple():
            return IsoType.of({q.unit(i + 1): m for i, m in enumerate(M.dims) if m})
        H = self.hom_table
        h = [hom_dim(self.indecomposable(r, M.p), M) for r in self.roots]
        mult = [0] * len(self.roots)
        for k in reversed(self.hom_order):
            val = h[k] - sum(H[k][l] * mult[l] for l in range(len(self.roots)) if l != k)
            if val < 0:
                raise RepError("inconsistent Hom-dimension system")
            mult[k] = val
        t = IsoType.of({r: m for r, m in zip(self.roots, mult) if m})
        if t.dim(q.n) != M.dims:
            raise RepError("decomposition does not reproduce the dimension vector")
        return t

    def is_projective_root(self, root) -> bool:
        return any(tuple(root) == self.quiver.dim_projective(i) for i in self.quiver.vertices)

    def is_injective_root(self, root) -> bool:
        return any(tuple(root) == self.quiver.dim_injective(i) for i in self.quiver.vertices)

    def projective_vertex(self, root) -> int | None:
        for i in self.quiver.vertices:
            if tuple(root) == self.quiver.dim_projective(i):
                return i
        return None

    def injective_vertex(self, root) -> int | None:
        for i in self.quiver.vertices:
            if tuple(root) == self.quiver.dim_injective(i):
                return i
        return None

    def ar_translate(self, t: IsoType, direction: int = 1) -> IsoType:
        q = self.quiver
        out = {}
        for r, m in t.items:
            if direction == 1 and self.is_projective_root(r):
                raise RepError(f"tau of the projective {r}")
            if direction == -1 and self.is_injective_root(r):
                raise RepError(f"tau^-1 of the injective {r}")
            image = q.coxeter(r, direction)
            out[image] = out.get(image, 0) + m
        return IsoType.of(out)

    def self_ext(self, t: IsoType) -> int:
        return self.ext(t, t)

    def exceptional_module(self, d) -> IsoType:
        """The unique rigid module with dimension vector ``d``."""
        d = tuple(d)
        if any(x < 0 for x in d):
            raise RepError("dimension vectors are nonnegative")
        if d not in self._exceptional:
            found = self._rigid_search(d)
            if found is None:
                raise RepError(f"no rigid module of dimension {d}")
            self._exceptional[d] = found
        return self._exceptional[d]

    def _rigid_search(self, d: Vector) -> IsoType | None:
        roots = self.roots
        X = self.ext_table

        def dfs(rest, start, chosen):
            if not any(rest):
                return dict(chosen)
            for k in range(start, len(roots)):
                r = roots[k]
                if any(x > y for x, y in zip(r, rest)):
                    continue
                if any(X[k][j] or X[j][k] for j in chosen):
                    continue
                m_max = min(y // x for x, y in zip(r, rest) if x)
                for m in range(m_max, 0, -1):
                    chosen[k] = m
                    nxt = tuple(y - m * x for x, y in zip(r, rest))
                    res = dfs(nxt, k + 1, chosen)
                    if res is not None:
                        return res
                    del chosen[k]
            return None

        res = dfs(d, 0, {})
        if res is None:
            return None
        return IsoType.of({roots[k]: m for k, m in res.items()})

    def isotypes_of_dim(self, d):
        """Every iso-type with dimension vector ``d`` (exhaustive)."""
        roots = self.roots
        d = tuple(d)

        def rec(rest, start):
            if not any(rest):
                yield {}
                return
            for k in range(start, len(roots)):
                r = roots[k]
                if any(x > y for x, y in zip(r, rest)):
                    continue
                m_max = min(y // x for x, y in zip(r, rest) if x)
                for m in range(1, m_max + 1):
                    nxt = tuple(y - m * x for x, y in zip(r, rest))
                    for tail in rec(nxt, k + 1):
                        yield {roots[k]: m, **tail}

        for mapping in rec(d, 0):
            yield IsoType.of(mapping)
