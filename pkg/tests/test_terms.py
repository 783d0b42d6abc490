import pytest
from conftest import N, V, vanilla_terms
from hypothesis import given

from vanillalc.alpha import alpha_eq, barendregt, canonical_key
from vanillalc.errors import CalculusMismatch
from vanillalc.terms import (
    HOLE,
    App,
    Cut,
    CutFrame,
    Lam,
    Sel,
    Subtr,
    SubtrFrame,
    Var,
    all_vars,
    calculus_of,
    context_at,
    format_position,
    free_vars,
    is_valid_position,
    parse_position,
    plug,
    plug_context,
    positions,
    replace_at,
    size,
    split,
    subterm_at,
)

x, y, z, w, u = (Var(n) for n in "xyzwu")


class TestVar:
    def test_tag_zero_is_not_printed(self):
        assert str(Var("y")) == "y"
        assert str(Var("y", 2)) == "y2"

    def test_total_order(self):
        assert sorted([Var("y", 1), Var("x", 3), Var("y")]) == [Var("x", 3), Var("y"), Var("y", 1)]

    def test_of_splits_trailing_tag(self):
        assert Var.of("y12") == Var("y", 12)
        assert Var.of("y") == Var("y")
        assert Var.of("x0") == Var("x0")

    def test_immutable(self):
        with pytest.raises(AttributeError):
            x.name = "q"


class TestFreeVars:
    def test_abstraction(self):
        assert free_vars(N(r"\x. x y")) == {y}

    def test_subtraction_binder(self):
        assert free_vars(V("let z = y @ w in z")) == {y, w}

    def test_cut_content_is_outside_scope(self):
        assert free_vars(V("let x = x in x")) == {x}

    def test_head_bound_by_enclosing_binder(self):
        assert free_vars(V(r"\y. let z = y @ w in z")) == {w}


class TestSize:
    @pytest.mark.parametrize("text,n", [("x", 1), (r"\x. x", 2), (r"(\x. x) y", 4)])
    def test_natural(self, text, n):
        assert size(N(text)) == n

    def test_subtraction_head_is_not_a_node(self):
        assert size(V("let z = y @ w in z")) == 3


class TestAlpha:
    def test_examples(self):
        assert alpha_eq(N(r"\x. x"), N(r"\y. y"))
        assert alpha_eq(N("let x = z in x"), N("let w = z in w"))
        assert not alpha_eq(N(r"\x. y"), N(r"\x. z"))

    def test_free_versus_bound(self):
        assert not alpha_eq(N(r"\x. y"), N(r"\y. y"))
        assert not alpha_eq(V("let x = x in x"), V("let y = x in x"))

    def test_subtraction_heads(self):
        assert alpha_eq(V(r"\f. let a = f @ u in a"), V(r"\g. let b = g @ u in b"))
        assert not alpha_eq(V(r"\f. let a = f @ u in a"), V(r"\g. let b = f @ u in b"))

    def test_calculi_differ(self):
        assert canonical_key(N("let x = y in x")) != canonical_key(V("let x = y in x"))

    @given(vanilla_terms)
    def test_barendregt_is_alpha_variant(self, t):
        b = barendregt(t)
        assert alpha_eq(t, b)
        binders = [u.binder for _, u in positions(b) if hasattr(u, "binder")]
        assert len(binders) == len(set(binders))
        assert not set(binders) & b.fv


class TestPositions:
    def test_preorder(self):
        t = N("x y")
        assert [p for p, _ in positions(t)] == [(), (Sel.AppFun,), (Sel.AppArg,)]

    def test_replace_and_subterm(self):
        t = V("let a = x @ y in a")
        p = (Sel.SubtrContent,)
        assert subterm_at(t, p) == y
        assert replace_at(t, p, z) == V("let a = x @ z in a")
        assert not is_valid_position(t, (Sel.AppFun,))

    def test_format_roundtrip(self):
        p = (Sel.CutBody, Sel.SubtrContent)
        assert format_position(p) == "/CutBody/SubtrContent"
        assert parse_position(format_position(p)) == p
        assert parse_position("/") == ()

    def test_context_plugging_captures(self):
        c = context_at(V("let x = y in x"), (Sel.CutBody,))
        assert c == Cut(y, x, HOLE)
        assert plug_context(c, x) == V("let x = y in x")


class TestCalculus:
    def test_classification(self):
        assert calculus_of(N("x y")) == "natural"
        assert calculus_of(V("let a = x @ y in a")) == "vanilla"
        assert calculus_of(N(r"\x. x")) == "both"

    def test_mixed_rejected(self):
        with pytest.raises(CalculusMismatch):
            calculus_of(App(Cut(x, y, y), x))


class TestSplit:
    def test_value(self):
        t = V(r"\x. x")
        assert split(t) == ((), t)

    def test_frames(self):
        s = V(r"\q. q")
        t = Cut(s, x, Subtr(z, u, y, w))
        assert split(t) == ((CutFrame(s, x), SubtrFrame(z, u, y)), w)

    def test_plug(self):
        assert plug((), x) == x
        assert plug([CutFrame(y, x)], x) == V("let x = y in x")
        t = V(r"let x = y in \z. z")
        assert plug(*split(t)) == t

    @given(vanilla_terms)
    def test_roundtrip(self, t):
        frames, v = split(t)
        assert alpha_eq(plug(frames, v), t)
        assert split(plug(frames, v)) == (frames, v)

    def test_all_vars(self):
        assert all_vars(V("let a = f @ b in c")) == {Var("a"), Var("f"), Var("b"), Var("c")}
        assert Lam(x, x) == N(r"\x. x")
