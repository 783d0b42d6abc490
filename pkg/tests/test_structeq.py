import itertools
import random

from conftest import V

from vanillalc.alpha import alpha_eq
from vanillalc.rewriting import AllPathsTerminate, RuleId, reduction_graph, redexes, step_at
from vanillalc.structeq import (
    Equivalent,
    NotFound,
    bisim_probe,
    captured,
    equiv_bounded,
    equivalence_class,
    postponement_probe,
    root_moves,
    weak_positions,
)
from vanillalc.terms import Cut, Sel, Subtr, Var, count_nodes
from vanillalc.testkit import GenConfig, gen_typed
from vanillalc.typecheck import check_sc

INDEP = V("let x = s in let y = u in t")
SWAPPED = V("let y = u in let x = s in t")


class TestWeakContexts:
    def test_no_abstraction_bodies(self):
        t = V(r"let x = s in \z. t")
        assert all(Sel.LamBody not in p for p in weak_positions(t))
        assert (Sel.CutBody, Sel.LamBody) not in weak_positions(t)

    def test_domain(self):
        t = V("let x = (let z = a @ b in c) in d")
        assert captured(t, (Sel.CutContent, Sel.SubtrBody)) == {Var("z")}
        assert captured(t, (Sel.CutBody,)) == {Var("x")}


class TestMoves:
    def test_swap_independent_cuts(self):
        assert any(alpha_eq(m, SWAPPED) for m in root_moves(INDEP))

    def test_not_under_abstraction(self):
        t = V(r"let x = s in \z. t")
        assert not any(alpha_eq(m, V(r"\z. let x = s in t")) for m in root_moves(t))

    def test_variable(self):
        assert root_moves(V("x")) == []

    def test_dependent_cuts_do_not_swap(self):
        t = V("let x = s in let y = x in y")
        assert not any(alpha_eq(m, V("let y = x in let x = s in y")) for m in root_moves(t))

    def test_head_capture_blocked(self):
        t = V("let y = a in let z = y @ b in z")
        assert root_moves(t) == []

    def test_invariants(self):
        for ctx, t, a in itertools.islice(gen_typed("vanilla", GenConfig(11, 10)), 80):
            for m in root_moves(t):
                assert m.fv == t.fv and m.size == t.size
                assert count_nodes(m, Cut) == count_nodes(t, Cut)
                assert count_nodes(m, Subtr) == count_nodes(t, Subtr)
                check_sc(ctx, m, a)


class TestEquiv:
    def test_reflexive(self):
        assert equiv_bounded(INDEP, INDEP, 0) == Equivalent(())

    def test_one_move(self):
        res = equiv_bounded(INDEP, SWAPPED, 1)
        assert res and len(res.path) == 1

    def test_abstraction_barrier(self):
        res = equiv_bounded(V(r"let x = s in \z. t"), V(r"\z. let x = s in t"), 6)
        assert isinstance(res, NotFound) and not res

    def test_symmetric(self):
        assert equiv_bounded(SWAPPED, INDEP, 1)

    def test_class_is_closed(self):
        cls = equivalence_class(V("let x = a in let y = b in let z = c in x"))
        assert len(cls) >= 3


class TestBisimulation:
    def test_self(self):
        assert bisim_probe(INDEP, INDEP).ok

    def test_independent_cuts(self):
        rep = bisim_probe(INDEP, SWAPPED, 2)
        assert rep.ok and len(rep.diagrams) == 4

    def test_generated_pairs(self):
        rng = random.Random(3)
        n = 0
        for ctx, t, a in itertools.islice(gen_typed("vanilla", GenConfig(12, 10)), 150):
            moves = root_moves(t)
            if not moves:
                continue
            u = rng.choice(moves)
            assert bisim_probe(t, u, 4).ok
            rt = reduction_graph(t, {RuleId.CutElim}, 10_000)
            ru = reduction_graph(u, {RuleId.CutElim}, 10_000)
            assert isinstance(rt, AllPathsTerminate) and rt.max_len == ru.max_len
            n += 1
        assert n > 20

    def test_postponement(self):
        t = V("let x = a in let y = (let z = b in z) in let w = y @ x in w")
        r = redexes(t, {RuleId.CutElim})[0]
        t1 = step_at(t, r)
        m = root_moves(t1)[0]
        assert postponement_probe(t, [("cut", t1), ("move", m)])
