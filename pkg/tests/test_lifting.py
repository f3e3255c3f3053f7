import random

import pytest

from ltbe import (
    BranchVal,
    INF,
    KindMismatch,
    SemiringKind,
    SemiringValue,
    UndefinedSum,
    ValRel,
    dirac,
    lift_double_extension,
    lift_egli_milner,
    lift_extension,
    lift_poly,
    parse_expr,
)
from modelgen import lowered, random_branchvals, random_valrel

B, P, T = SemiringKind.BOOL, SemiringKind.PROB, SemiringKind.TROPICAL

LTS_A = parse_expr("{*} + {a} * Id")


def tv(x):
    return SemiringValue(T, x)


def pv(x):
    return SemiringValue(P, x)


def bv_bool(*keys):
    return BranchVal(B, tuple((k, SemiringValue(B, True)) for k in keys))


class TestLiftPoly:
    def test_tropical_closed_form(self):
        rel = ValRel(T, ["x"], ["y"], [[tv(7)]])
        out = lift_poly(LTS_A, rel)
        assert out.get("i0(@*)", "i0(@*)") == tv(0)
        assert out.get("i1((@a,x))", "i1((@a,y))") == tv(7)
        assert out.get("i0(@*)", "i1((@a,y))") == tv(INF)
        assert out.get("i1((@a,x))", "i0(@*)") == tv(INF)

    def test_prob_closed_form(self):
        rel = ValRel(P, ["x"], ["y"], [[pv(0.25)]])
        out = lift_poly(LTS_A, rel)
        assert out.get("i0(@*)", "i0(@*)") == pv(1.0)
        assert out.get("i1((@a,x))", "i1((@a,y))") == pv(0.25)
        assert out.get("i0(@*)", "i1((@a,y))") == pv(0.0)

    def test_label_mismatch_is_bottom(self):
        expr = parse_expr("{a,b} * Id")
        rel = ValRel.top(["x"], ["y"], B)
        out = lift_poly(expr, rel)
        assert out.get("(@a,x)", "(@a,y)").payload is True
        assert out.get("(@a,x)", "(@b,y)").payload is False

    def test_identity_returns_same_relation(self):
        rel = random_valrel(random.Random(3), T, ["x", "y"], ["p", "q"])
        assert lift_poly(parse_expr("Id"), rel) == rel

    def test_constant_becomes_equality(self):
        rel = random_valrel(random.Random(4), P, ["x"], ["y"])
        out = lift_poly(parse_expr("{m,n}"), rel)
        assert out.get("@m", "@m") == pv(1.0)
        assert out.get("@m", "@n") == pv(0.0)

    def test_power_equals_iterated_product(self):
        body = parse_expr("{*} + Id")
        power = parse_expr("({*} + Id)^{u,v}")
        pair = parse_expr("({*} + Id) * ({*} + Id)")
        rng = random.Random(9)
        rel = random_valrel(rng, T, ["x", "y"], ["p"])
        left = lift_poly(power, rel)
        right = lift_poly(pair, rel)
        assert [
            [left.at(i, j) for j in range(len(left.cols))] for i in range(len(left.rows))
        ] == [[right.at(i, j) for j in range(len(right.cols))] for i in range(len(right.rows))]


class TestLiftExtension:
    def test_tropical_min_plus(self):
        rel = ValRel(T, ["x1", "x2"], ["y"], [[tv(3)], [tv(0)]])
        t = BranchVal(T, (("x1", tv(2)), ("x2", tv(5))))
        out = lift_extension(rel, [t])
        assert out.get(t.key(), "y") == tv(5)  # min(2 + 3, 5 + 0)

    def test_bool_singleton_exists(self):
        rel = ValRel.top(["x"], ["y"], B)
        out = lift_extension(rel, [bv_bool("x")])
        assert out.get(bv_bool("x").key(), "y").payload is True

    def test_prob_single_weight(self):
        rel = ValRel.top(["x"], ["y"], P)
        t = BranchVal(P, (("x", pv(0.5)),))
        assert lift_extension(rel, [t]).get(t.key(), "y") == pv(0.5)

    def test_empty_support_is_bottom(self):
        for kind, bottom in ((B, False), (P, 0.0), (T, INF)):
            rel = ValRel.top(["x"], ["y"], kind)
            empty = BranchVal(kind, ())
            assert lift_extension(rel, [empty]).get(empty.key(), "y").payload == bottom

    def test_unit_law_dirac(self):
        rng = random.Random(17)
        for kind in SemiringKind:
            for _ in range(30):
                rows = [f"x{i}" for i in range(rng.randint(1, 5))]
                cols = [f"y{i}" for i in range(rng.randint(1, 5))]
                rel = random_valrel(rng, kind, rows, cols)
                x = rng.choice(rows)
                d = dirac(kind, x)
                out = lift_extension(rel, [d])
                for y in cols:
                    assert out.get(d.key(), y) == rel.get(x, y)  # exact, not approx

    def test_bool_matches_set_theoretic_exists(self):
        rng = random.Random(23)
        rows = ["x0", "x1", "x2"]
        cols = ["y0", "y1"]
        for _ in range(40):
            rel = random_valrel(rng, B, rows, cols)
            supports = random_branchvals(rng, B, rows, 5)
            out = lift_extension(rel, [supports[0]])
            for y in cols:
                expected = any(rel.get(x, y).payload for x in supports[0].support_keys())
                assert out.get(supports[0].key(), y).payload == expected

    def test_undefined_sum_surfaces(self):
        rel = ValRel.top(["x", "y"], ["z"], P)
        overweight = BranchVal(P, (("x", pv(0.8)), ("y", pv(0.8))))
        with pytest.raises(UndefinedSum):
            lift_extension(rel, [overweight])

    def test_valid_subprobability_never_undefined(self):
        rng = random.Random(31)
        rows = ["x0", "x1", "x2"]
        for _ in range(50):
            rel = random_valrel(rng, P, rows, ["y"])
            for t in random_branchvals(rng, P, rows, 4):
                lift_extension(rel, [t])  # must not raise

    def test_kind_mismatch(self):
        rel = ValRel.top(["x"], ["y"], B)
        with pytest.raises(KindMismatch):
            lift_extension(rel, [dirac(P, "x")])


class TestLiftDoubleExtension:
    def test_tropical_closed_form(self):
        rel = ValRel(T, ["x"], ["y1", "y2"], [[tv(7), tv(2)]])
        t = BranchVal(T, (("x", tv(1)),))
        u = BranchVal(T, (("y1", tv(0)), ("y2", tv(4))))
        out = lift_double_extension(rel, [t], [u])
        assert out.get(t.key(), u.key()) == tv(7)  # min(1+0+7, 1+4+2)

    def test_dirac_dirac_is_lookup(self):
        rel = ValRel(P, ["x"], ["y"], [[pv(0.3)]])
        out = lift_double_extension(rel, [dirac(P, "x")], [dirac(P, "y")])
        assert out.get(dirac(P, "x").key(), dirac(P, "y").key()) == pv(0.3)

    def test_bool_common_related_pair(self):
        rel = ValRel(B, ["x1", "x2"], ["y1"], [[SemiringValue(B, False)], [SemiringValue(B, True)]])
        t = bv_bool("x1", "x2")
        u = bv_bool("y1")
        assert lift_double_extension(rel, [t], [u]).get(t.key(), u.key()).payload is True
        t2 = bv_bool("x1")
        assert lift_double_extension(rel, [t2], [u]).get(t2.key(), u.key()).payload is False

    def test_empty_side_is_bottom(self):
        rel = ValRel.top(["x"], ["y"], T)
        t = BranchVal(T, (("x", tv(0)),))
        empty = BranchVal(T, ())
        out = lift_double_extension(rel, [t], [empty])
        assert out.get(t.key(), empty.key()) == tv(INF)

    @pytest.mark.parametrize("kind", list(SemiringKind))
    def test_agrees_with_one_side_at_a_time(self, kind):
        # left extension followed by the dual (right side) extension, the
        # latter computed through transposition
        rng = random.Random(41)
        rows = ["x0", "x1"]
        cols = ["y0", "y1"]
        for _ in range(25):
            rel = random_valrel(rng, kind, rows, cols)
            ts = random_branchvals(rng, kind, rows, 3)
            us = random_branchvals(rng, kind, cols, 3)
            direct = lift_double_extension(rel, ts, us)
            left = lift_extension(rel, ts)
            transposed = ValRel.tabulate(kind, cols, left.rows, lambda c, r: left.get(r, c))
            right = lift_extension(transposed, us)
            for t in ts:
                for u in us:
                    a = direct.get(t.key(), u.key())
                    b = right.get(u.key(), t.key())
                    if kind is P:
                        assert a.payload == pytest.approx(b.payload, abs=1e-12)
                    else:
                        assert a == b


class TestEgliMilner:
    def test_empty_empty_related(self):
        rel = ValRel.top(["x"], ["y"], B)
        e = BranchVal(B, ())
        assert lift_egli_milner(rel, [e], [e]).get(e.key(), e.key()).payload is True

    def test_nonempty_vs_empty(self):
        rel = ValRel.top(["x"], ["y"], B)
        t, e = bv_bool("x"), BranchVal(B, ())
        out = lift_egli_milner(rel, [t], [e])
        assert out.get(t.key(), e.key()).payload is False

    def test_matched_singletons(self):
        rel = ValRel.top(["x"], ["y"], B)
        t, u = bv_bool("x"), bv_bool("y")
        assert lift_egli_milner(rel, [t], [u]).get(t.key(), u.key()).payload is True

    def test_requires_both_directions(self):
        rel = ValRel(
            B,
            ["x1", "x2"],
            ["y1", "y2"],
            [
                [SemiringValue(B, True), SemiringValue(B, False)],
                [SemiringValue(B, False), SemiringValue(B, False)],
            ],
        )
        t = bv_bool("x1", "x2")  # x2 has no partner
        u = bv_bool("y1")
        assert lift_egli_milner(rel, [t], [u]).get(t.key(), u.key()).payload is False

    def test_non_bool_rejected(self):
        rel = ValRel.top(["x"], ["y"], P)
        with pytest.raises(KindMismatch):
            lift_egli_milner(rel, [dirac(P, "x")], [dirac(P, "y")])


class TestMonotonicity:
    @pytest.mark.parametrize("kind", list(SemiringKind))
    def test_all_liftings_preserve_order(self, kind):
        rng = random.Random(59)
        expr = parse_expr("{*} + {a,b} * Id")
        for _ in range(20):
            rows = [f"x{i}" for i in range(rng.randint(1, 4))]
            cols = [f"y{i}" for i in range(rng.randint(1, 4))]
            upper = random_valrel(rng, kind, rows, cols)
            below = lowered(rng, upper)
            assert lift_poly(expr, below).pointwise_leq(lift_poly(expr, upper))
            ts = random_branchvals(rng, kind, rows, 3)
            us = random_branchvals(rng, kind, cols, 3)
            assert lift_extension(below, ts).pointwise_leq(lift_extension(upper, ts))
            assert lift_double_extension(below, ts, us).pointwise_leq(
                lift_double_extension(upper, ts, us)
            )
            if kind is B:
                assert lift_egli_milner(below, ts, us).pointwise_leq(
                    lift_egli_milner(upper, ts, us)
                )
