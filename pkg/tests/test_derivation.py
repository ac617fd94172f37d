from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from arenscalc.algebra import (
    InvalidAlgebra,
    group_algebra,
    cayley_fixture,
    matrix_algebra,
    regular_module,
    truncated_poly_algebra,
)
from arenscalc.derivation import (
    FIXTURE_NAMES,
    TriDerivationCandidate,
    composite_extension_checks,
    derivation_fixture,
    dual_action_composite,
    fourth_adjoint_check,
    is_tri_derivation,
    leibniz_sum,
    right_action_composite,
)
from arenscalc.tensor import (
    basis_vector,
    evaluate,
    from_function,
    pair,
    vector,
    zero_vector,
)

# ---------------------------------------------------------------------------
# independent oracle for the degree-weighted fixture
#
# Polynomials modulo x^3 as coefficient triples.  The candidate sends a
# monomial triple (x^a, x^b, x^c) to abc.x^(a+b+c-1).  The three slot
# identities are verified here with plain integer arithmetic, touching
# none of the tensor machinery.

N = 3


def _mono(k):
    return tuple(1 if i == k else 0 for i in range(N))


def _scale(c, u):
    return tuple(c * x for x in u)


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _mul(u, v):
    out = [0] * N
    for a in range(N):
        for b in range(N):
            if a + b < N:
                out[a + b] += u[a] * v[b]
    return tuple(out)


def _d_mono(a, b, c):
    deg = a + b + c - 1
    out = [0] * N
    if 0 <= deg < N:
        out[deg] = a * b * c
    return tuple(out)


def test_degree_weighted_identities_by_hand():
    zero = (0,) * N
    for a, b, c, d in product(range(N), repeat=4):
        # first slot: D(u.v, b, c) = D(u,b,c).v + u.D(v,b,c)
        prod = _mul(_mono(a), _mono(d))
        lhs = zero
        for deg, coeff in enumerate(prod):
            lhs = _add(lhs, _scale(coeff, _d_mono(deg, b, c)))
        rhs = _add(_mul(_d_mono(a, b, c), _mono(d)), _mul(_mono(a), _d_mono(d, b, c)))
        assert lhs == rhs
        # middle slot
        prod = _mul(_mono(b), _mono(d))
        lhs = zero
        for deg, coeff in enumerate(prod):
            lhs = _add(lhs, _scale(coeff, _d_mono(a, deg, c)))
        rhs = _add(_mul(_d_mono(a, b, c), _mono(d)), _mul(_mono(b), _d_mono(a, d, c)))
        assert lhs == rhs
        # last slot
        prod = _mul(_mono(c), _mono(d))
        lhs = zero
        for deg, coeff in enumerate(prod):
            lhs = _add(lhs, _scale(coeff, _d_mono(a, b, deg)))
        rhs = _add(_mul(_d_mono(a, b, c), _mono(d)), _mul(_mono(c), _d_mono(a, b, d)))
        assert lhs == rhs


def test_degree_weighted_fixture_matches_formula():
    cand = derivation_fixture("poly3-euler")
    for a, b, c in product(range(N), repeat=3):
        got = evaluate(
            cand.tri_map, [basis_vector(N, a), basis_vector(N, b), basis_vector(N, c)]
        )
        assert got.coords == tuple(Fraction(v) for v in _d_mono(a, b, c))


# ---------------------------------------------------------------------------
# accepted candidates


def test_zero_candidate_passes():
    rep = is_tri_derivation(derivation_fixture("zero"))
    assert rep.holds
    assert "ok" in rep.render()


def test_degree_weighted_candidate_passes():
    rep = is_tri_derivation(derivation_fixture("poly3-euler"))
    assert rep.holds


def test_degree_weighted_candidate_is_nonzero():
    cand = derivation_fixture("poly3-euler")
    assert any(v != 0 for v in cand.tri_map.entries)


# ---------------------------------------------------------------------------
# rejected candidates, with pinned first witnesses (lexicographic scan)


def test_sum_form_fails_on_unital_algebra():
    model, delta = truncated_poly_algebra(3)
    d = leibniz_sum(regular_module(model), delta, "sumD")
    rep = is_tri_derivation(
        TriDerivationCandidate("sumD", d, regular_module(model))
    )
    assert not rep.holds
    assert rep.first_slot.witness == (0, 0, 1, 0)


def test_sum_form_witness_replay():
    # quadruple (1, 1, x, 1): multiplying the unit into slot one leaves
    # D(1,1,x) = x on the left, while the sum rule produces it twice
    model, delta = truncated_poly_algebra(3)
    mod = regular_module(model)
    d = leibniz_sum(mod, delta, "sumD")
    e0, x = basis_vector(3, 0), basis_vector(3, 1)
    lhs = evaluate(d, [evaluate(model.multiplication, [e0, e0]), e0, x])
    inner = evaluate(d, [e0, e0, x])
    rhs = vector(
        tuple(
            u + v
            for u, v in zip(
                evaluate(mod.right_action, [inner, e0]).coords,
                evaluate(mod.left_action, [e0, inner]).coords,
            )
        )
    )
    assert lhs.coords == (0, 1, 0)
    assert rhs.coords == (0, 2, 0)


def test_convolution_candidate_rejected_at_origin():
    rep = is_tri_derivation(derivation_fixture("z3-conv"))
    assert not rep.holds
    assert rep.first_slot.witness == (0, 0, 0, 0)


def test_matrix_inner_candidate_rejected():
    rep = is_tri_derivation(derivation_fixture("matrix2-inner"))
    assert not rep.holds
    assert rep.first_slot.witness == (0, 0, 0, 3)
    assert rep.middle_slot.witness == (0, 0, 0, 2)
    assert rep.last_slot.witness == (0, 0, 0, 2)


def test_matrix_inner_witness_replay():
    cand = derivation_fixture("matrix2-inner")
    d, mod = cand.tri_map, cand.module
    pi = mod.algebra.multiplication
    e11, e22 = basis_vector(4, 0), basis_vector(4, 3)
    lhs = evaluate(d, [evaluate(pi, [e11, e22]), e11, e11])
    inner_abc = evaluate(d, [e11, e11, e11])
    inner_dbc = evaluate(d, [e22, e11, e11])
    rhs = vector(
        tuple(
            u + v
            for u, v in zip(
                evaluate(mod.right_action, [inner_abc, e22]).coords,
                evaluate(mod.left_action, [e11, inner_dbc]).coords,
            )
        )
    )
    assert lhs != rhs


# ---------------------------------------------------------------------------
# composites


def test_right_composite_matches_definition():
    cand = derivation_fixture("poly3-euler")
    a = basis_vector(3, 1)
    phi = right_action_composite(cand, a)
    d, ract = cand.tri_map, cand.module.right_action
    for ic, ib, id_ in product(range(3), repeat=3):
        ec, eb, ed = (basis_vector(3, k) for k in (ic, ib, id_))
        want = evaluate(ract, [evaluate(d, [a, eb, ec]), ed])
        assert evaluate(phi, [ec, eb, ed]) == want


def test_right_composite_linear_in_anchor():
    cand = derivation_fixture("poly3-euler")
    e0, e1 = basis_vector(3, 0), basis_vector(3, 1)
    mixed = vector((1, 2, 0))
    phi = right_action_composite(cand, mixed)
    phi0 = right_action_composite(cand, e0)
    phi1 = right_action_composite(cand, e1)
    combined = tuple(u + 2 * v for u, v in zip(phi0.entries, phi1.entries))
    assert phi.entries == combined


def test_dual_composite_pairing_oracle():
    cand = derivation_fixture("poly3-euler")
    xstar = basis_vector(3, 2)
    psi = dual_action_composite(cand, xstar)
    d, lact = cand.tri_map, cand.module.left_action
    for ia, id_, ib, ic in product(range(3), repeat=4):
        ea, ed, eb, ec = (basis_vector(3, k) for k in (ia, id_, ib, ic))
        got = pair(evaluate(psi, [ea, ed, eb]), ec)
        want = pair(xstar, evaluate(lact, [eb, evaluate(d, [ea, ed, ec])]))
        assert got == want


def test_composites_vanish_on_zero_inputs():
    cand = derivation_fixture("poly3-euler")
    assert all(
        v == 0 for v in right_action_composite(cand, zero_vector(3)).entries
    )
    assert all(
        v == 0 for v in dual_action_composite(cand, zero_vector(3)).entries
    )
    zero_cand = derivation_fixture("zero")
    assert all(
        v == 0
        for v in right_action_composite(zero_cand, basis_vector(3, 1)).entries
    )
    assert all(
        v == 0
        for v in dual_action_composite(zero_cand, basis_vector(3, 1)).entries
    )


# ---------------------------------------------------------------------------
# extension statements about the composites


@pytest.mark.parametrize("name", ["zero", "poly3-euler"])
def test_composite_extension_checks_pass(name):
    rows = composite_extension_checks(derivation_fixture(name))
    assert all(ok for _, ok, _ in rows), [lbl for lbl, ok, _ in rows if not ok]
    labels = [lbl for lbl, _, _ in rows]
    for needle in (
        "hypothesis: right action extensions agree",
        "right composites, item 1: plain equals t-conjugated",
        "right composites, item 2: plain equals i-conjugated",
        "right composites, item 3: plain equals i-conjugated (repeat)",
        "right composites, item 4: plain equals r-conjugated",
        "dual composites, item 4: plain equals r-conjugated",
    ):
        assert needle in labels


@pytest.mark.parametrize("name", ["zero", "poly3-euler"])
def test_fourth_adjoint_round_trip(name):
    rows = fourth_adjoint_check(derivation_fixture(name))
    assert all(ok for _, ok, _ in rows), [lbl for lbl, ok, _ in rows if not ok]
    labels = [lbl for lbl, _, _ in rows]
    assert "fourth adjoint reproduces the candidate" in labels
    assert "fourth adjoint is again a derivation (first product)" in labels
    assert "fourth adjoint is again a derivation (second product)" in labels
    assert "right composites: r-conjugated equals i-conjugated" in labels
    assert "dual composites: t-conjugated equals plain" in labels


# ---------------------------------------------------------------------------
# fixture registry and shape checking


def test_fixture_registry_names():
    assert set(FIXTURE_NAMES) == {"zero", "poly3-euler", "z3-conv", "matrix2-inner"}
    for name in FIXTURE_NAMES:
        cand = derivation_fixture(name)
        assert cand.tri_map.arity == 3


def test_fixture_registry_unknown():
    with pytest.raises(InvalidAlgebra, match="zero"):
        derivation_fixture("nope")


def test_candidate_shape_mismatch():
    from arenscalc.tensor import ShapeMismatch

    model, _ = truncated_poly_algebra(3)
    bad = from_function("D", (3, 3), 3, lambda *_: 0)
    with pytest.raises(ShapeMismatch):
        TriDerivationCandidate("bad", bad, regular_module(model))


def test_matrix_inner_delta_is_commutator():
    # the inner map of the matrix fixture must be a -> [E12, a]
    cand = derivation_fixture("matrix2-inner")
    model = matrix_algebra(2)
    mult = model.multiplication
    e12 = basis_vector(4, 1)
    # recover delta from the sum form at (a, 1, 1): D(a,e,e) = delta(a)
    unit = model.unit
    d = cand.tri_map
    for k in range(4):
        a = basis_vector(4, k)
        got = evaluate(d, [a, unit, unit])
        want_coords = tuple(
            u - v
            for u, v in zip(
                evaluate(mult, [e12, a]).coords, evaluate(mult, [a, e12]).coords
            )
        )
        assert got.coords == want_coords
