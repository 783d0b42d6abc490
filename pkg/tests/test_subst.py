import pytest
from conftest import N, V, natural_terms, natural_values, vanilla_terms, vanilla_values, variables
from hypothesis import assume, given

from vanillalc.alpha import alpha_eq, barendregt
from vanillalc.errors import NotAValue
from vanillalc.subst import fresh, rename, subst_nd, subst_value
from vanillalc.terms import App, ESub, Lam, Var
from vanillalc.testkit import oracle_subst

x, y, z, w, u = (Var(n) for n in "xyzwu")


# A de Bruijn substitution used as an independent reference for subst_nd.
def to_db(t, env=()):
    if isinstance(t, Var):
        return ("i", env.index(t)) if t in env else ("f", t)
    if isinstance(t, Lam):
        return ("L", to_db(t.body, (t.binder,) + env))
    if isinstance(t, App):
        return ("A", to_db(t.fun, env), to_db(t.arg, env))
    return ("E", to_db(t.content, env), to_db(t.body, (t.binder,) + env))


def shift(d, by, cutoff=0):
    tag = d[0]
    if tag == "i":
        return ("i", d[1] + by) if d[1] >= cutoff else d
    if tag == "f":
        return d
    if tag == "L":
        return ("L", shift(d[1], by, cutoff + 1))
    if tag == "A":
        return ("A", shift(d[1], by, cutoff), shift(d[2], by, cutoff))
    return ("E", shift(d[1], by, cutoff), shift(d[2], by, cutoff + 1))


def db_subst(d, x, s, depth=0):
    tag = d[0]
    if tag == "f":
        return shift(s, depth) if d[1] == x else d
    if tag == "i":
        return d
    if tag == "L":
        return ("L", db_subst(d[1], x, s, depth + 1))
    if tag == "A":
        return ("A", db_subst(d[1], x, s, depth), db_subst(d[2], x, s, depth))
    return ("E", db_subst(d[1], x, s, depth), db_subst(d[2], x, s, depth + 1))


class TestFresh:
    def test_bumps_past_largest_tag(self):
        assert fresh(y, {y, Var("y", 3), x}) == Var("y", 4)
        assert fresh(y, set()) == Var("y", 1)


class TestSubstNd:
    def test_examples(self):
        assert subst_nd(N("x y"), x, z) == N("z y")
        assert subst_nd(N(r"\x. x"), x, z) == N(r"\x. x")

    def test_capture_forces_freshening(self):
        got = subst_nd(N(r"\y. x"), x, N("y w"))
        assert got == N(r"\y1. y w")
        assert to_db(got) == db_subst(to_db(N(r"\y. x")), x, to_db(N("y w")))

    def test_esub_binds_body_only(self):
        assert subst_nd(N("let x = x in x"), x, z) == N("let x = z in x")

    @given(natural_terms, variables, natural_terms)
    def test_matches_de_bruijn(self, t, v, s):
        assert to_db(subst_nd(t, v, s)) == db_subst(to_db(t), v, to_db(s))

    @given(natural_terms, variables, natural_terms)
    def test_alpha_invariant(self, t, v, s):
        assert alpha_eq(subst_nd(barendregt(t), v, barendregt(s)), subst_nd(t, v, s))

    @given(natural_terms, variables, variables)
    def test_rename_matches_subst(self, t, a, b):
        assert rename(t, a, b) == subst_nd(t, a, b)


class TestSubstValue:
    def test_variable_clause(self):
        v = V(r"\q. q")
        assert subst_value(v, x, x) == v

    def test_variable_head(self):
        assert subst_value(z, x, V("let w = x @ y in w")) == V("let w = z @ y in w")

    def test_abstraction_head(self):
        got = subst_value(V(r"\y. y"), x, V("let w = x @ u in w"))
        assert got == V("let w = (let y = u in y) in w")
        assert alpha_eq(got, oracle_subst("vanilla", V("let w = x @ u in w"), x, V(r"\y. y")))

    def test_rejects_non_values(self):
        with pytest.raises(NotAValue, match="substituted term must be a value"):
            subst_value(V("let a = y in a"), x, x)

    def test_capture_avoided_under_subtraction_binder(self):
        got = subst_value(y, x, V("let y = z @ x in y"))
        assert got == V("let y = z @ y in y")
        got = subst_value(y, x, V("let y = z @ u in x"))
        assert alpha_eq(got, V("let q = z @ u in y"))

    @given(vanilla_values, variables, vanilla_terms)
    def test_vacuous(self, v, a, t):
        assume(a not in t.fv)
        assert subst_value(v, a, t) is t

    @given(vanilla_values, variables, vanilla_terms)
    def test_free_variables(self, v, a, t):
        got = subst_value(v, a, t).fv
        bound = (t.fv - {a}) | v.fv
        assert got <= bound
        if a in t.fv:
            assert got == bound

    @given(variables, variables, vanilla_terms)
    def test_renaming_preserves_size(self, v, a, t):
        assert subst_value(v, a, t).size == t.size

    @given(vanilla_values, variables, vanilla_terms)
    def test_agrees_with_oracle(self, v, a, t):
        assert alpha_eq(subst_value(v, a, t), oracle_subst("vanilla", t, a, v))

    @given(vanilla_values, variables, vanilla_terms)
    def test_alpha_invariant(self, v, a, t):
        assert alpha_eq(subst_value(barendregt(v), a, barendregt(t)), subst_value(v, a, t))

    @given(natural_values, variables, natural_terms)
    def test_natural_oracle(self, v, a, t):
        assert alpha_eq(subst_nd(t, a, v), oracle_subst("natural", t, a, v))
