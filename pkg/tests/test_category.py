import json
import random
from itertools import product

import pytest

from clustercat.category import CCObject, ClusterCategory, ObjectError, parse_object
from clustercat.qpoly import QPoly
from clustercat.quiver import build_quiver
from clustercat.reps import IsoType, ext_cocycles, extension_rep

from conftest import category

SWEEP = [("A2", "linear"), ("A3", "linear"), ("A3", "alternating"), ("A4", "linear"),
         ("D4", "linear"), ("D4", "alternating")]


def names(cat, polys):
    return {cat.name(y): str(P) for y, P in polys.items()}


def test_a2_doubled_simples_counts(a2):
    S1, S2 = a2.simple(1), a2.simple(2)
    tc = a2.middle_terms(S2.times(2), S1.times(2))
    assert tc.dim == 4
    assert names(a2, tc.polys) == {"S2+S1+P2": "q^2 + 2q + 1", "2*P2": "q^3 - q"}
    dual = a2.middle_terms(S1.times(2), S2.times(2))
    assert names(a2, dual.polys) == {"S2+S1": "q^2 + 2q + 1", "0": "q^3 - q"}


def test_d4_centre_counts(d4):
    N, M = d4.simple(2), d4.injective(2)
    # classes in Ext^1(M, N): triangles N -> Y -> M
    tc = d4.middle_terms(M, N)
    U = d4.parse("root:[1,2,1,1]")
    R, S, T = (d4.parse(f"root:[{r}]") for r in ("0,1,1,1", "1,1,0,1", "1,1,1,0"))
    P1, P3, P4 = d4.projective(1), d4.projective(3), d4.projective(4)
    assert tc.polys == {U: QPoly((-2, 1)), R + P1: QPoly((1,)), S + P3: QPoly((1,)),
                        T + P4: QPoly((1,))}
    dual = d4.middle_terms(N, M)
    SP = [d4.parse(f"SP{i}") for i in range(1, 5)]
    assert dual.polys == {SP[1]: QPoly((-2, 1)), SP[0] + d4.simple(1): QPoly((1,)),
                          SP[2] + d4.simple(3): QPoly((1,)), SP[3] + d4.simple(4): QPoly((1,))}


def brute_extension_classes(cat, N, M, p):
    """Projectivized class counts per middle term, summing over every cocycle.

    Each class is a coset of the coboundaries, so counting all cocycles with
    middle term Y and dividing by the coset size gives the class count.
    """
    eng = cat.engine
    Nr, Mr = eng.rep_of(N, p), eng.rep_of(M, p)
    basis, layout = ext_cocycles(Nr, Mr)
    total = sum(Mr.dims[t - 1] * Nr.dims[s - 1] for s, t in cat.quiver.arrows)
    coset = p ** (total - len(basis))
    tally = {}
    for g in product(range(p), repeat=total):
        if not any(g):
            continue
        Y = eng.decompose(extension_rep(Nr, Mr, list(g), layout))
        tally[Y] = tally.get(Y, 0) + 1
    split = N + M
    out = {}
    for Y, c in tally.items():
        if Y == split:
            c -= coset - 1  # nonzero cocycles in the zero class
        if c:
            assert c % (coset * (p - 1)) == 0
            out[Y] = c // (coset * (p - 1))
    return out


@pytest.mark.parametrize("p", [2, 3])
def test_module_block_matches_cocycle_brute_force(a2, d4, p):
    cases = [(a2, a2.simple(2).times(2), a2.simple(1).times(2)),
             (a2, a2.simple(2), a2.simple(1)),
             (d4, d4.injective(2), d4.simple(2))]
    for cat, n, m in cases:
        direct = cat.count_triangles(n, m, p)
        brute = brute_extension_classes(cat, n.module, m.module, p)
        assert {y.module: c for y, c in direct.items()} == brute


@pytest.mark.parametrize("t,o", SWEEP)
def test_calabi_yau_symmetry_and_partition(t, o):
    cat = category(t, o)
    ind = cat.indecomposables
    for a in ind:
        for b in ind:
            assert cat.ext1_dim_cc(a, b) == cat.ext1_dim_cc(b, a)
            tc = cat.middle_terms(a, b)
            assert tc.partition_ok()
            assert sum(tc.chis.values()) == cat.ext1_dim_cc(a, b)


@pytest.mark.parametrize("t,o", SWEEP)
def test_triangle_with_zero_middle_term(t, o):
    cat = category(t, o)
    for x in cat.indecomposables:
        tc = cat.middle_terms(cat.shift(x), x)
        assert tc.dim == 1
        assert tc.polys == {CCObject(): QPoly((1,))}


@pytest.mark.parametrize("t,o", SWEEP)
def test_nonsplit_module_extensions_avoid_end_terms(t, o):
    cat = category(t, o)
    mods = [z for z in cat.indecomposables if z.is_module()]
    for n in mods:
        for m in mods:
            if not cat.engine.ext(n.module, m.module):
                continue
            for y in cat.count_triangles(n, m, 2, block="module"):
                assert not y.contains(n) and not y.contains(m)


def test_ext_rules(a2):
    S1, S2, SP1, SP2 = a2.simple(1), a2.simple(2), a2.parse("SP1"), a2.parse("SP2")
    assert a2.ext1_dim_cc(S2, S1) == 1
    assert a2.ext1_dim_cc(SP1, SP2) == 0
    assert a2.ext1_dim_cc(SP1, a2.projective(2)) == 1
    assert a2.ext1_dim_cc(SP2, S1) == 0


def test_h0(a2):
    x = a2.parse("S1+SP2")
    assert a2.h0(x) == IsoType.of({(1, 0): 1})
    assert not a2.h0(a2.parse("SP2"))


def test_is_exceptional(a2):
    assert all(a2.is_exceptional(z) for z in a2.indecomposables)
    assert not a2.is_exceptional(a2.parse("S1+S2"))
    assert not a2.is_exceptional(a2.parse("S1+SP1"))
    assert a2.is_exceptional(a2.parse("S2+SP1"))


@pytest.mark.parametrize("t,count", [("A2", 5), ("A3", 14), ("A4", 42), ("D4", 50)])
def test_tilting_counts(t, count):
    cat = category(t)
    objs = cat.tilting_objects()
    assert len(objs) == count
    assert all(o.summand_count() == cat.n and cat.is_exceptional(o) for o in objs)


def test_lambda_vectors(a2):
    assert a2.lambda_vector(a2.parse("SP1")) == (1, 0)
    assert a2.lambda_vector(a2.parse("SP2")) == (0, 1)
    assert a2.lambda_vector(CCObject()) == (0, 0)
    assert a2.lambda_vector(a2.simple(1)) == (-1, 1)
    x, y = a2.parse("S1"), a2.parse("2*SP2")
    assert a2.lambda_vector(x + y) == tuple(a + b for a, b in zip(a2.lambda_vector(x),
                                                                   a2.lambda_vector(y)))


def test_exceptional_from_lambda_small_box(a2):
    found = {}
    for v in product(range(-2, 3), repeat=2):
        x = a2.exceptional_from_lambda(v)
        assert a2.is_exceptional(x) and a2.lambda_vector(x) == v
        found[x] = v
    assert len(found) == 25
    assert a2.exceptional_from_lambda((0, 1)) == a2.parse("SP2")


@pytest.mark.parametrize("t", ["A3", "D4"])
def test_exceptional_from_lambda_round_trip(t):
    cat = category(t)
    rng = random.Random(7)
    tilts = cat.tilting_objects()
    for _ in range(40):
        t_obj = rng.choice(tilts)
        x = CCObject()
        for z, _ in t_obj.summands():
            x = x + z.times(rng.randrange(3))
        assert cat.exceptional_from_lambda(cat.lambda_vector(x)) == x


def test_prop_2_5_on_decomposables(a2):
    # 2*S2 and 2*S1: one elementary pair, z_i z_j = 4
    n, m = a2.simple(2).times(2), a2.simple(1).times(2)
    assert a2.elementary_reduction(n, m) == {
        y: P.chi() for y, P in a2.middle_terms(n, m).polys.items() if P.chi()}


def test_mixed_blocks_use_reduction(a2):
    n = a2.parse("S2+SP1")
    m = a2.parse("S1+P2")
    tc = a2.middle_terms(n, m)
    assert tc.method == "elementary" and tc.polys is None
    assert sum(tc.chis.values()) == tc.dim


def test_parse_and_names():
    q = build_quiver("D4", "1->2,3->2,4->2")
    x = parse_object(q, "2*S1+root:[1,2,1,1]+SP3")
    cat = ClusterCategory(q)
    assert cat.name(x) == "2*S1+root:[1,2,1,1]+SP3"
    assert cat.parse(cat.name(x)) == x
    assert parse_object(q, "0") == CCObject()
    for bad in ("S9", "root:[1,1,1,2]", "Q1", "2*"):
        with pytest.raises(ObjectError):
            parse_object(q, bad)


def test_json_round_trip(a2):
    x = a2.parse("2*S2+SP2")
    assert x.to_json() == {"module": {"[0,1]": 2}, "sp": {"2": 1}}
    assert CCObject.from_json(json.dumps(x.to_json())) == x


def test_subtraction_guard(a2):
    with pytest.raises(ObjectError):
        a2.simple(1) - a2.simple(2)
