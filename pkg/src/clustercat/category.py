"""Objects of the cluster category C_Q and extensions between them.

An object is a module part (multiset of positive roots) plus shifted
projectives SP_i.  Middle terms of triangles are identified with module
linear algebra only; see :meth:`ClusterCategory.count_triangles` for the
case split.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import networkx as nx

from . import ffalg
from .ffalg import projective_points
from .qpoly import DEFAULT_PRIMES, QPoly, interpolate_many, projective_space
from .quiver import Quiver, Vector
from .reps import (IsoType, Rep, RepEngine, cokernel_rep, ext_cocycles,
                   extension_rep, hom_space, kernel_rep)


class ObjectError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CCObject:
    """M = M_0 + SP_M: module part plus multiplicities of shifted projectives."""

    module: IsoType = IsoType()
    sp: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, module=None, sp=None) -> "CCObject":
        if module is None:
            module = IsoType()
        elif not isinstance(module, IsoType):
            module = IsoType.of(module)
        merged = {}
        for i, m in (sp.items() if isinstance(sp, dict) else (sp or ())):
            merged[int(i)] = merged.get(int(i), 0) + m
            if merged[int(i)] < 0:
                raise ObjectError("negative multiplicity")
        return cls(module, tuple(sorted((i, m) for i, m in merged.items() if m)))

    @classmethod
    def indec_module(cls, root) -> "CCObject":
        return cls.of({tuple(root): 1})

    @classmethod
    def shifted(cls, i: int, mult: int = 1) -> "CCObject":
        return cls.of(sp={i: mult})

    def sp_dict(self) -> dict[int, int]:
        return dict(self.sp)

    def __add__(self, other: "CCObject") -> "CCObject":
        sp = self.sp_dict()
        for i, m in other.sp:
            sp[i] = sp.get(i, 0) + m
        return CCObject.of(self.module + other.module, sp)

    def __sub__(self, other: "CCObject") -> "CCObject":
        mod = self.module.as_dict()
        for r, m in other.module.items:
            mod[r] = mod.get(r, 0) - m
        sp = self.sp_dict()
        for i, m in other.sp:
            sp[i] = sp.get(i, 0) - m
        if any(v < 0 for v in mod.values()) or any(v < 0 for v in sp.values()):
            raise ObjectError("difference is not an object")
        return CCObject.of(mod, sp)

    def contains(self, other: "CCObject") -> bool:
        try:
            self - other
        except ObjectError:
            return False
        return True

    def times(self, k: int) -> "CCObject":
        return CCObject.of({r: k * m for r, m in self.module.items},
                           {i: k * m for i, m in self.sp})

    def summands(self) -> list[tuple["CCObject", int]]:
        """Indecomposable summands with multiplicities."""
        out = [(CCObject.indec_module(r), m) for r, m in self.module.items]
        out += [(CCObject.shifted(i), m) for i, m in self.sp]
        return out

    def summand_count(self) -> int:
        return sum(m for _, m in self.summands())

    def is_indecomposable(self) -> bool:
        return self.summand_count() == 1

    def is_zero(self) -> bool:
        return not self.module and not self.sp

    def is_module(self) -> bool:
        return not self.sp

    def only_root(self) -> Vector:
        (r, _), = self.module.items
        return r

    def only_vertex(self) -> int:
        (i, _), = self.sp
        return i

    def to_json(self) -> dict:
        return {"module": {json.dumps(list(r), separators=(",", ":")): m
                           for r, m in self.module.items},
                "sp": {str(i): m for i, m in self.sp}}

    def key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> "CCObject":
        if isinstance(data, str):
            data = json.loads(data)
        module = {tuple(json.loads(k)): v for k, v in data.get("module", {}).items()}
        return cls.of(module, {int(k): v for k, v in data.get("sp", {}).items()})


ZERO = CCObject()


@dataclass
class TriangleCount:
    """Projectivized classes in Ext^1_C(n, m) sorted by middle term Y.

    ``polys`` holds exact point-count polynomials when the classes were
    enumerated directly; ``chis`` always holds the Euler characteristics.
    """

    n: CCObject
    m: CCObject
    dim: int
    polys: dict | None
    chis: dict
    method: str = "direct"

    def chi(self, y: CCObject) -> int:
        return self.chis.get(y, 0)

    def partition_ok(self) -> bool:
        if self.polys is not None:
            total = QPoly()
            for poly in self.polys.values():
                total = total + poly
            if total != projective_space(self.dim):
                return False
        return sum(self.chis.values()) == self.dim


class ClusterCategory:
    """Per-quiver context for C_Q; every table is built lazily and then fixed."""

    def __init__(self, quiver: Quiver, primes=DEFAULT_PRIMES,
                 budget: int = ffalg.DEFAULT_SUBSPACE_BUDGET):
        self.quiver = quiver
        self.n = quiver.n
        self.primes = tuple(primes)
        self.budget = budget
        self.engine = RepEngine(quiver)
        self._middle: dict = {}
        self.cache: dict = {}

    # -- objects ----------------------------------------------------------

    @cached_property
    def indecomposables(self) -> tuple[CCObject, ...]:
        mods = [CCObject.indec_module(r) for r in self.engine.roots]
        return tuple(mods + [CCObject.shifted(i) for i in self.quiver.vertices])

    def simple(self, i: int) -> CCObject:
        return CCObject.indec_module(self.quiver.unit(i))

    def projective(self, i: int) -> CCObject:
        return CCObject.indec_module(self.quiver.dim_projective(i))

    def injective(self, i: int) -> CCObject:
        return CCObject.indec_module(self.quiver.dim_injective(i))

    def name(self, x: CCObject) -> str:
        if x.is_zero():
            return "0"
        q = self.quiver
        parts = []
        for r, m in x.module.items:
            label = f"root:[{','.join(map(str, r))}]"
            for kind, dim in (("S", q.unit), ("P", q.dim_projective), ("I", q.dim_injective)):
                hit = [i for i in q.vertices if dim(i) == r]
                if hit:
                    label = f"{kind}{hit[0]}"
                    break
            parts.append(label if m == 1 else f"{m}*{label}")
        parts += [f"SP{i}" if m == 1 else f"{m}*SP{i}" for i, m in x.sp]
        return "+".join(parts)

    def parse(self, text: str) -> CCObject:
        return parse_object(self.quiver, text)

    def dim_module(self, x: CCObject) -> Vector:
        return x.module.dim(self.n)

    # -- H^0 and Ext in C ---------------------------------------------------

    def h0(self, x: CCObject) -> IsoType:
        return x.module

    def _ext_indec(self, a: CCObject, b: CCObject) -> int:
        if a.module and b.module:
            return self.engine.ext_roots(a.only_root(), b.only_root()) + \
                self.engine.ext_roots(b.only_root(), a.only_root())
        if a.sp and b.sp:
            return 0
        if a.sp:
            return b.only_root()[a.only_vertex() - 1]
        return a.only_root()[b.only_vertex() - 1]

    def ext1_dim_cc(self, x: CCObject, y: CCObject) -> int:
        total = 0
        for a, ma in x.summands():
            for b, mb in y.summands():
                total += ma * mb * self._ext_indec(a, b)
        return total

    def is_exceptional(self, x: CCObject) -> bool:
        return self.ext1_dim_cc(x, x) == 0

    def block_dims(self, n: CCObject, m: CCObject) -> dict[str, int]:
        """Dimensions of the four blocks of Ext^1_C(n, m).

        module: Ext^1_kQ(n0, m0); dual: D Ext^1_kQ(m0, n0);
        sp_source: Hom(P(n_sp), m0); sp_target: Hom(n0, I(m_sp)).
        """
        e = self.engine
        dn, dm = self.dim_module(n), self.dim_module(m)
        return {
            "module": e.ext(n.module, m.module),
            "dual": e.ext(m.module, n.module),
            "sp_source": sum(k * dm[i - 1] for i, k in n.sp),
            "sp_target": sum(k * dn[i - 1] for i, k in m.sp),
        }

    # -- triangles ------------------------------------------------------------

    def _split_projective(self, t: IsoType):
        proj, rest = {}, {}
        for r, m in t.items:
            i = self.engine.projective_vertex(r)
            if i is None:
                rest[r] = m
            else:
                proj[i] = proj.get(i, 0) + m
        return proj, IsoType.of(rest)

    def _split_injective(self, t: IsoType):
        inj, rest = {}, {}
        for r, m in t.items:
            i = self.engine.injective_vertex(r)
            if i is None:
                rest[r] = m
            else:
                inj[i] = inj.get(i, 0) + m
        return inj, IsoType.of(rest)

    def shift_module(self, t: IsoType) -> CCObject:
        """S K in C for a module K: tau on non-projectives, SP_i on P_i."""
        proj, rest = self._split_projective(t)
        return CCObject.of(self.engine.ar_translate(rest, 1), proj)

    def shift(self, x: CCObject) -> CCObject:
        """S x in C; S SP_i = S^2 P_i is the injective I_i."""
        q = self.quiver
        inj = IsoType.of({q.dim_injective(i): m for i, m in x.sp})
        return self.shift_module(x.module) + CCObject.of(inj)

    def unshift_module(self, t: IsoType) -> CCObject:
        """S^-1 K in C: tau^-1 on non-injectives, SP_i on I_i."""
        inj, rest = self._split_injective(t)
        return CCObject.of(self.engine.ar_translate(rest, -1), inj)

    def count_triangles(self, n: CCObject, m: CCObject, p: int, block: str | None = None):
        """|P Ext^1_C(n, m)_Y (F_p)| for every Y, by enumerating classes.

        Only one block of Ext^1_C(n, m) may be nonzero (or ``block`` names the
        block to restrict to).  Per block the triangle m -> Y -> n -> Sm is:

        module:     0 -> m0 -> Y0 -> n0 -> 0, Y0 the extension module;
        dual:       phi : tau^-1 n0 -> m0, Y = coker phi + S ker phi;
        sp_source:  f : P(n_sp) -> m0, Y = coker f + S ker f;
        sp_target:  g : n0 -> I(m_sp), Y = ker g + S^-1 coker g;

        and summands not touched by the block are carried along unchanged.
        """
        dims = self.block_dims(n, m)
        if block is None:
            live = [k for k, v in dims.items() if v]
            if len(live) > 1:
                raise ObjectError(f"Ext^1_C mixes blocks {live}; use the elementary-vector reduction")
            if not live:
                return {}
            block = live[0]
        e = self.engine
        counts: dict[CCObject, int] = {}

        def bump(y: CCObject):
            counts[y] = counts.get(y, 0) + 1

        n_sp = CCObject.of(sp=n.sp)
        m_sp = CCObject.of(sp=m.sp)
        if block == "module":
            N, M = e.rep_of(n.module, p), e.rep_of(m.module, p)
            basis, layout = ext_cocycles(N, M)
            rest = n_sp + m_sp
            for c in projective_points(len(basis), p):
                g = _combine_vectors(basis, c, p)
                Y = extension_rep(N, M, g, layout)
                bump(CCObject.of(e.decompose(Y)) + rest)
        elif block == "dual":
            inj, n_ni = self._split_injective(n.module)
            T = e.rep_of(e.ar_translate(n_ni, -1), p)
            M = e.rep_of(m.module, p)
            rest = CCObject.of(IsoType.of({e.quiver.dim_injective(i): k for i, k in inj.items()})) \
                + n_sp + m_sp
            for phi in self._morphisms(T, M, p):
                ker = e.decompose(kernel_rep(T, M, phi))
                cok = e.decompose(cokernel_rep(T, M, phi))
                bump(CCObject.of(cok) + self.shift_module(ker) + rest)
        elif block == "sp_source":
            P = e.rep_of(IsoType.of({e.quiver.dim_projective(i): k for i, k in n.sp}), p)
            M = e.rep_of(m.module, p)
            rest = CCObject.of(n.module) + m_sp
            for f in self._morphisms(P, M, p):
                ker = e.decompose(kernel_rep(P, M, f))
                cok = e.decompose(cokernel_rep(P, M, f))
                bump(CCObject.of(cok) + self.shift_module(ker) + rest)
        elif block == "sp_target":
            N = e.rep_of(n.module, p)
            I = e.rep_of(IsoType.of({e.quiver.dim_injective(i): k for i, k in m.sp}), p)
            rest = CCObject.of(m.module) + n_sp
            for g in self._morphisms(N, I, p):
                ker = e.decompose(kernel_rep(N, I, g))
                cok = e.decompose(cokernel_rep(N, I, g))
                bump(CCObject.of(ker) + self.unshift_module(cok) + rest)
        else:
            raise ObjectError(f"unknown block {block!r}")
        return counts

    def _morphisms(self, A: Rep, B: Rep, p: int):
        basis = hom_space(A, B)
        for c in projective_points(len(basis), p):
            yield _combine_morphisms(basis, c, p)

    def middle_terms(self, n: CCObject, m: CCObject) -> TriangleCount:
        """Middle terms Y of triangles m -> Y -> n -> Sm, with class counts.

        Single-block pairs (all pairs of indecomposables among them) are
        enumerated over several primes and interpolated; other pairs go through
        the elementary-vector reduction and only carry Euler characteristics.
        """
        key = (n, m)
        if key in self._middle:
            return self._middle[key]
        d = self.ext1_dim_cc(n, m)
        live = [k for k, v in self.block_dims(n, m).items() if v]
        if d == 0:
            tc = TriangleCount(n, m, 0, {}, {})
        elif len(live) == 1:
            polys = interpolate_many(lambda p: self.count_triangles(n, m, p), d - 1, self.primes)
            tc = TriangleCount(n, m, d, polys, {y: P.chi() for y, P in polys.items() if P.chi()})
        else:
            tc = TriangleCount(n, m, d, None, self.elementary_reduction(n, m), "elementary")
        self._middle[key] = tc
        return tc

    def elementary_reduction(self, n: CCObject, m: CCObject) -> dict:
        """chi(P Ext^1(n, m)_Y) = z_i z_j c_ij when m + n - Y = Z_i + Z_j - Y_ij."""
        chis: dict[CCObject, int] = {}
        for zi, mi in m.summands():
            for zj, nj in n.summands():
                if not self._ext_indec(zj, zi):
                    continue
                base = (m + n) - zi - zj
                for yij, c in self.middle_terms(zj, zi).chis.items():
                    y = base + yij
                    chis[y] = chis.get(y, 0) + mi * nj * c
        return {y: c for y, c in chis.items() if c}

    def module_extension_counts(self, n: IsoType, m: IsoType, p: int) -> dict:
        """Counts for the Ext^1_kQ(n, m) block alone (extensions 0->m->Y->n->0)."""
        return self.count_triangles(CCObject.of(n), CCObject.of(m), p, block="module")

    # -- tilting objects ---------------------------------------------------------

    @cached_property
    def compatibility_graph(self) -> nx.Graph:
        G = nx.Graph()
        ind = self.indecomposables
        G.add_nodes_from(range(len(ind)))
        for a, b in combinations(range(len(ind)), 2):
            if self._ext_indec(ind[a], ind[b]) == 0:
                G.add_edge(a, b)
        return G

    def tilting_objects(self, max_rank: int = 6) -> list[CCObject]:
        """Maximal Ext-orthogonal sets of indecomposables (each has n members)."""
        if self.n > max_rank:
            raise ffalg.BudgetExceeded(f"tilting enumeration capped at rank {max_rank}")
        ind = self.indecomposables
        out = []
        for clique in nx.find_cliques(self.compatibility_graph):
            obj = CCObject()
            for k in clique:
                obj = obj + ind[k]
            out.append(obj)
        return sorted(out, key=CCObject.key)

    # -- lambda vectors and exceptional objects ---------------------------------

    def lambda_vector(self, x: CCObject) -> Vector:
        """lambda_i = -<alpha_i, dim M_0> + (multiplicity of SP_i)."""
        q = self.quiver
        d = self.dim_module(x)
        sp = x.sp_dict()
        return tuple(-q.euler_form(q.unit(i), d) + sp.get(i, 0) for i in q.vertices)

    def exceptional_module(self, d) -> CCObject:
        return CCObject.of(self.engine.exceptional_module(d))

    def exceptional_from_lambda(self, v) -> CCObject:
        """The unique exceptional object with lambda vector ``v``.

        On the stratum with shifted-projective support I the system is
        triangular: d_i = sum_{i->j} d_j - v_i off I (need d_i >= 0) and
        m_i = v_i - sum_{i->j} d_j on I with d_i = 0 (need m_i >= 1).
        """
        v = tuple(v)
        cache = self.cache.setdefault("exc_lambda", {})
        if v in cache:
            return cache[v]
        q = self.quiver
        succ = {i: [t for s, t in q.arrows if s == i] for i in q.vertices}
        found = []
        for mask in range(1 << self.n):
            I = {i for i in q.vertices if mask >> (i - 1) & 1}
            d, sp, ok = {}, {}, True
            for i in q.sink_order:
                out = sum(d[j] for j in succ[i])
                if i in I:
                    d[i] = 0
                    sp[i] = v[i - 1] - out
                    if sp[i] < 1:
                        ok = False
                        break
                else:
                    d[i] = out - v[i - 1]
                    if d[i] < 0:
                        ok = False
                        break
            if ok:
                dim = tuple(d[i] for i in q.vertices)
                found.append(CCObject.of(self.engine.exceptional_module(dim), sp))
        if len(found) != 1:
            raise ObjectError(f"lambda = {v} has {len(found)} exceptional preimages")
        cache[v] = found[0]
        return found[0]

    def exceptional_objects_in_box(self, radius: int) -> dict:
        """lambda -> exceptional object for every lambda with |lambda|_inf <= radius."""
        from itertools import product
        return {v: self.exceptional_from_lambda(v)
                for v in product(range(-radius, radius + 1), repeat=self.n)}


def _combine_vectors(basis, c, p):
    out = [0] * len(basis[0])
    for coef, vec in zip(c, basis):
        if coef:
            for i, x in enumerate(vec):
                if x:
                    out[i] = (out[i] + coef * x) % p
    return out


def _combine_morphisms(basis, c, p):
    first = basis[0]
    out = [[[0] * len(row) for row in mat] for mat in first]
    for coef, f in zip(c, basis):
        if not coef:
            continue
        for v, mat in enumerate(f):
            for r, row in enumerate(mat):
                for k, x in enumerate(row):
                    if x:
                        out[v][r][k] = (out[v][r][k] + coef * x) % p
    return tuple(tuple(tuple(row) for row in mat) for mat in out)


_TOKEN = re.compile(r"^(?:(\d+)\s*\*\s*)?(S|P|I|SP)(\d+)$|^(?:(\d+)\s*\*\s*)?root:\[([\d,\s]+)\]$")


def parse_object(q: Quiver, text: str) -> CCObject:
    """Parse "2*S1+S2", "P2", "I2", "SP2", "root:[1,2,1,1]" or "0"."""
    text = text.strip()
    if text in ("0", ""):
        return ZERO
    obj = ZERO
    depth, start, pieces = 0, 0, []
    for k, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "+" and depth == 0:
            pieces.append(text[start:k])
            start = k + 1
    pieces.append(text[start:])
    for piece in pieces:
        piece = piece.strip()
        mt = _TOKEN.match(piece)
        if not mt:
            raise ObjectError(f"cannot parse object {piece!r}")
        if mt.group(2):
            mult = int(mt.group(1) or 1)
            kind, i = mt.group(2), int(mt.group(3))
            if not 1 <= i <= q.n:
                raise ObjectError(f"vertex {i} out of range")
            if kind == "SP":
                x = CCObject.shifted(i, mult)
            else:
                root = {"S": q.unit, "P": q.dim_projective, "I": q.dim_injective}[kind](i)
                x = CCObject.of({root: mult})
        else:
            mult = int(mt.group(4) or 1)
            root = tuple(int(s) for s in mt.group(5).split(","))
            if len(root) != q.n or not q.is_positive_root(root):
                raise ObjectError(f"{root} is not a positive root of {q.type_label}")
            x = CCObject.of({root: mult})
        obj = obj + x
    return obj
