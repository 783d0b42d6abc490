import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from vanillalc.syntax import parse_term
from vanillalc.terms import App, Cut, ESub, Lam, Subtr, Var

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def N(text):
    return parse_term(text, "natural")


def V(text):
    return parse_term(text, "vanilla")


NAMES = [Var("x"), Var("y"), Var("z"), Var("x", 1)]
variables = st.sampled_from(NAMES)


def _natural(children):
    return st.one_of(
        st.builds(Lam, variables, children),
        st.builds(App, children, children),
        st.builds(ESub, children, variables, children),
    )


def _vanilla(children):
    return st.one_of(
        st.builds(Lam, variables, children),
        st.builds(Cut, children, variables, children),
        st.builds(Subtr, variables, children, variables, children),
    )


natural_terms = st.recursive(variables, _natural, max_leaves=8)
vanilla_terms = st.recursive(variables, _vanilla, max_leaves=8)
natural_values = st.one_of(variables, st.builds(Lam, variables, natural_terms))
vanilla_values = st.one_of(variables, st.builds(Lam, variables, vanilla_terms))


@pytest.fixture
def nat():
    return N


@pytest.fixture
def van():
    return V
