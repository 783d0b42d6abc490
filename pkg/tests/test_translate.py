import itertools

import pytest
from conftest import N, V, natural_terms, natural_values, vanilla_terms, vanilla_values, variables
from hypothesis import given

from vanillalc.alpha import alpha_eq
from vanillalc.errors import ResidualCut
from vanillalc.rewriting import CALCULI, Redex, RuleId, Status, is_cut_free, is_normal, normalize, redexes
from vanillalc.subst import subst_nd, subst_value
from vanillalc.terms import (
    HOLE,
    CutFrame,
    ESubFrame,
    Sel,
    Subtr,
    SubtrFrame,
    Var,
    count_nodes,
    plug,
    plug_context,
    positions,
    subterm_at,
)
from vanillalc.testkit import GenConfig, gen_cut_free, gen_typed
from vanillalc.translate import (
    nd_to_sc,
    reaches_by_db,
    sc_to_nd,
    simulate_cut_in_vsc,
    simulate_vsc_in_vanilla,
    strip_renaming_cuts,
    translate_ctx,
    translate_position,
)
from vanillalc.typecheck import check_nd, check_sc

x, y, s, u = Var("x"), Var("y"), Var("s"), Var("u")


class TestTranslations:
    def test_nd_to_sc(self):
        assert nd_to_sc(N("x")) == N("x")
        assert nd_to_sc(N("x y")) == V("let a = x in let b = a @ y in b")
        assert nd_to_sc(N("let x = s in t")) == V("let x = s in t")

    def test_fresh_names_skip_used(self):
        assert alpha_eq(nd_to_sc(N("a b")), V("let q = a in let r = q @ b in r"))
        assert nd_to_sc(N("a b")) == V("let a1 = a in let b1 = a1 @ b in b1")

    def test_sc_to_nd(self):
        assert sc_to_nd(V("let x = y @ s in t")) == N("let x = y s in t")
        assert sc_to_nd(V(r"\x. x")) == N(r"\x. x")
        assert sc_to_nd(nd_to_sc(N("x y"))) == N("let a = x in let b = a y in b")

    @given(natural_terms)
    def test_round_trip_preserves_free_variables(self, t):
        assert sc_to_nd(nd_to_sc(t)).fv == t.fv


class TestContexts:
    def test_frames(self):
        assert translate_ctx("sc-to-nd", [CutFrame(s, x)]) == (ESubFrame(s, x),)
        assert translate_ctx("sc-to-nd", [SubtrFrame(y, s, x)]) == (ESubFrame(N("y s"), x),)
        assert translate_ctx("sc-to-nd", ()) == ()
        assert translate_ctx("nd-to-sc", [ESubFrame(N("y s"), x)]) == \
            (CutFrame(V("let a = y in let b = a @ s in b"), x),)

    def test_positions(self):
        assert translate_position("nd-to-sc", (Sel.AppArg, Sel.AppFun)) == \
            (Sel.CutBody, Sel.SubtrContent, Sel.CutContent)
        assert translate_position("sc-to-nd", (Sel.SubtrContent, Sel.SubtrBody)) == \
            (Sel.CutContent, Sel.AppArg, Sel.CutBody)

    @given(vanilla_terms, vanilla_terms)
    def test_vanilla_context_commutes(self, t, r):
        for p, _ in positions(t):
            ctx = translate_ctx("sc-to-nd", _hole(t, p))
            assert plug_context(ctx, sc_to_nd(r)) == sc_to_nd(_plug(t, p, r))
            q = translate_position("sc-to-nd", p)
            assert subterm_at(sc_to_nd(_plug(t, p, r)), q) == sc_to_nd(r)

    @given(natural_terms, natural_terms)
    def test_natural_context_commutes(self, t, r):
        for p, _ in positions(t):
            ctx = translate_ctx("nd-to-sc", _hole(t, p))
            assert alpha_eq(plug_context(ctx, nd_to_sc(r)), nd_to_sc(_plug(t, p, r)))
            q = translate_position("nd-to-sc", p)
            assert alpha_eq(subterm_at(nd_to_sc(_plug(t, p, r)), q), nd_to_sc(r))

    @given(vanilla_terms)
    def test_left_contexts(self, t):
        from vanillalc.terms import split

        frames, v = split(t)
        assert plug(translate_ctx("sc-to-nd", frames), sc_to_nd(v)) == sc_to_nd(t)


def _hole(t, p):
    from vanillalc.terms import context_at

    return context_at(t, p)


def _plug(t, p, r):
    from vanillalc.terms import replace_at

    return replace_at(t, p, r)


class TestTranslationsAndSubstitution:
    @given(natural_values, variables, natural_terms)
    def test_nd_to_sc_commutes(self, v, a, t):
        assert alpha_eq(nd_to_sc(subst_nd(t, a, v)), subst_value(nd_to_sc(v), a, nd_to_sc(t)))

    @given(vanilla_values, variables, vanilla_terms)
    def test_sc_to_nd_up_to_db(self, v, a, t):
        src = subst_nd(sc_to_nd(t), a, sc_to_nd(v))
        goal = sc_to_nd(subst_value(v, a, t))
        assert reaches_by_db(src, goal, count_nodes(t, Subtr)) is not None


class TestNormalForms:
    def test_cut_free_images_are_vsc_normal(self):
        witnesses = 0
        for t in itertools.islice(gen_cut_free(GenConfig(1, 12)), 300):
            img = sc_to_nd(t)
            assert is_normal(img, CALCULI["vsc"])
            witnesses += not is_normal(img, CALCULI["sc"])
        assert witnesses > 0

    def test_strip(self):
        assert strip_renaming_cuts(nd_to_sc(N("x y"))) == (V("let b = x @ y in b"), 1)
        assert strip_renaming_cuts(nd_to_sc(N(r"\x. x"))) == (N(r"\x. x"), 0)
        out, k = strip_renaming_cuts(nd_to_sc(N("let x = y z in w x x")))
        assert is_cut_free(out) and k <= 6

    def test_residual(self):
        with pytest.raises(ResidualCut):
            strip_renaming_cuts(V(r"let x = \y. y in x"))


class TestSimulations:
    def test_variable_cut(self):
        t = V("let x = y in x")
        rep = simulate_cut_in_vsc(t, Redex(RuleId.CutElim, ()))
        assert rep.matched and rep.shape == "vs;dB*0"
        assert alpha_eq(rep.target.final, N("y"))

    def test_abstraction_cut(self):
        t = V(r"let x = \y. y in let w = x @ u in w")
        rep = simulate_cut_in_vsc(t, Redex(RuleId.CutElim, ()))
        assert rep.shape == "vs;dB*1"
        assert rep.target.rules == ["vs", "dB"]

    def test_db_two_cuts(self):
        rep = simulate_vsc_in_vanilla(N(r"(\x. x) y"), Redex(RuleId.DbAtDistance, ()))
        assert rep.shape == "cut;cut"
        assert alpha_eq(rep.target.steps[0].result, V("let b = (let x = y in x) in b"))
        assert alpha_eq(rep.target.final, V("let x = y in x"))

    def test_vs_one_cut(self):
        for text in ["let x = y in x", "let x = (let y = u in v) in z x x"]:
            t = N(text)
            rep = simulate_vsc_in_vanilla(t, redexes(t, {RuleId.VsSub})[0])
            assert rep.shape == "cut" and len(rep.target) == 1

    def test_report_json(self):
        rep = simulate_vsc_in_vanilla(N(r"(\x. x) y"), Redex(RuleId.DbAtDistance, ()))
        j = rep.to_json()
        assert j["shape"] == "cut;cut" and j["matched"] is True
        assert [st["rule"] for st in j["target"]["steps"]] == ["cut", "cut"]

    @given(vanilla_terms)
    def test_every_cut(self, t):
        for r in redexes(t, {RuleId.CutElim}):
            rep = simulate_cut_in_vsc(t, r)
            assert rep.matched and rep.target.rules[0] == "vs"
            assert set(rep.target.rules[1:]) <= {"dB"}

    @given(natural_terms)
    def test_every_vsc_step(self, t):
        for r in redexes(t, CALCULI["vsc"]):
            rep = simulate_vsc_in_vanilla(t, r)
            assert len(rep.target) == (2 if r.rule is RuleId.DbAtDistance else 1)


class TestTyping:
    def test_translations_preserve_types(self):
        for ctx, t, a in itertools.islice(gen_typed("natural", GenConfig(3, 9)), 150):
            check_sc(ctx, nd_to_sc(t), a)
        for ctx, t, a in itertools.islice(gen_typed("vanilla", GenConfig(4, 9)), 150):
            check_nd(ctx, sc_to_nd(t), a)


class TestTermination:
    def test_vanilla_run_maps_to_vsc_normal_run(self):
        for ctx, t, a in itertools.islice(gen_typed("vanilla", GenConfig(5, 9)), 60):
            run = normalize(t, {RuleId.CutElim}, "lo", 500)
            assert run.status is Status.Normal
            cur = t
            for st in run.steps:
                rep = simulate_cut_in_vsc(cur, st.redex)
                cur = st.result
                assert alpha_eq(rep.target.final, sc_to_nd(cur))
            assert is_normal(sc_to_nd(cur), CALCULI["vsc"])

    def test_vsc_run_maps_to_cut_free_run(self):
        for ctx, t, a in itertools.islice(gen_typed("natural", GenConfig(6, 9)), 60):
            run = normalize(t, CALCULI["vsc"], "lo", 500)
            assert run.status is Status.Normal
            cur = t
            for st in run.steps:
                rep = simulate_vsc_in_vanilla(cur, st.redex)
                cur = st.result
                assert alpha_eq(rep.target.final, nd_to_sc(cur))
            out, k = strip_renaming_cuts(nd_to_sc(cur))
            assert is_cut_free(out) and k <= cur.size
