from __future__ import annotations

from hypothesis import given, settings, strategies as st

from arenscalc.expr import ExprAst, parse
from arenscalc.suites import (
    CHAIN_GROUPS,
    GOLDEN_ORDERS,
    SuiteRow,
    SuiteSection,
    full_suite,
    render_report,
)
from arenscalc.tensor import random_map, realize


def test_catalog_is_well_formed():
    assert len(GOLDEN_ORDERS) == 6
    total = sum(len(pairs) for _, pairs in CHAIN_GROUPS)
    assert total == 17
    for _, pairs in CHAIN_GROUPS:
        for lhs, rhs in pairs:
            assert parse(lhs).base == "f"
            assert parse(rhs).base == "f"


def test_render_report_escapes_pipes():
    section = SuiteSection(
        "demo",
        (SuiteRow("name|with pipe", True, "detail|pipe"),),
    )
    text = render_report((section,), "Configuration: demo.")
    assert "name\\|with pipe" in text
    assert "detail\\|pipe" in text
    # table rows keep exactly three payload columns
    row_line = [ln for ln in text.splitlines() if "name" in ln][0]
    assert row_line.count(" | ") == 2


def test_render_report_counts_failures():
    section = SuiteSection(
        "demo",
        (SuiteRow("good", True), SuiteRow("bad", False, "boom")),
    )
    text = render_report((section,), "cfg")
    assert "Summary: 2 checks, 1 FAILED." in text
    assert "| bad | FAIL | boom |" in text


def test_full_suite_section_order_is_stable():
    sections = full_suite(seed=0, trials=2, instances=1, dims=(2, 2, 2, 2))
    titles = [s.title for s in sections]
    assert titles == [
        "Limit orders of the six extensions",
        "Symbolic classifier",
        "Six-extension sweep on random tensors",
        "Proof-chain identities",
        "Factorization through a linear map",
        "Bilinear slice bridge",
        "Nested bilinear constraint",
        "Finite group convolution (complete regularity)",
        "Tri-derivations and the fourth adjoint",
        "Adjoint pairing identity",
    ]
    assert all(s.passed for s in sections)


# every word in the operation alphabet realizes to a well-formed tensor
# whose entry multiset is exactly that of the base map (adjoints and
# flips only permute and relabel axes)
@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="*ijrts", max_size=8))
def test_realize_permutes_entries(ops):
    base = random_map(3, (1, 2, 2), 2, seed=13, name="f")
    out = realize(ExprAst("f", tuple(ops)), base)
    assert sorted(out.entries) == sorted(base.entries)
    assert len(out.axis_labels) == 4
    assert len(set(out.axis_labels)) == 4


# an arity-n map is reproduced exactly by n+1 adjoints
@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_full_adjoint_cycle_reproduces_map(arity, seed):
    dims = tuple(((seed + k) % 3) + 1 for k in range(arity))
    base = random_map(arity, dims, ((seed + arity) % 3) + 1, seed=seed, name="f")
    out = realize(ExprAst("f", ("*",) * (arity + 1)), base)
    assert out.entries == base.entries
    assert out.axis_labels == base.axis_labels
    assert out.shape == base.shape
