"""Batch verification suites over random instances and fixed fixtures.

Each runner returns a titled section of uniform rows so the command-line
report can render them as one document.  All randomness flows from a
single seed; a fixed seed gives a byte-identical report.

The chain catalog collects the displayed two-sided tensor equalities
from the equivalence arguments this package models: the criteria for
the two three-cycle extensions to agree, the limit-interchange
hypotheses and what they force, the tower of equalities behind the
all-six-coincide criterion, the pulled-back conjugation pairs, and the
hypotheses used by the nested-map construction.  Every one of them is
an exact transposition fact for finite rational tensors, so a single
mismatch in millions of entries marks a bookkeeping bug.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (
    GROUP_FIXTURES,
    ConstraintViolated,
    cayley_fixture,
    group_algebra,
    nested_bilinear_check,
    slice_bridge_check,
)
from .derivation import (
    composite_extension_checks,
    derivation_fixture,
    fourth_adjoint_check,
    is_tri_derivation,
)
from .expr import parse
from .semantics import (
    UNCOND_EQUAL,
    classify_text,
    flip_conjugation_checks,
    natural_extensions,
)
from .tensor import (
    adjoint,
    basis_vector,
    build_factored,
    compose_codomain,
    compose_into_slot,
    equal,
    evaluate,
    from_function,
    pair,
    random_map,
    realize,
    vector,
)


@dataclass(frozen=True)
class SuiteRow:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteSection:
    title: str
    rows: tuple[SuiteRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


GOLDEN_ORDERS = {
    "f^{i****i}": ("in2", "in1", "in3"),
    "f^{j****j}": ("in1", "in3", "in2"),
    "f^{r****r}": ("in3", "in2", "in1"),
    "f^{****}": ("in1", "in2", "in3"),
    "f^{t****s}": ("in3", "in1", "in2"),
    "f^{s****t}": ("in2", "in3", "in1"),
}

CHAIN_GROUPS = (
    (
        "close-to-regular criteria",
        (
            ("f^{s***t*}", "f^{t**}"),
            ("f^{s******}", "f^{t***}"),
            ("f^{t*****}", "f^{s***t}"),
            ("f^{s****t}", "f^{t****s}"),
        ),
    ),
    (
        "limit interchange",
        (
            ("f^{****s**t}", "f^{s**t****}"),
            ("f^{****t**s}", "f^{t**s****}"),
            ("f^{****}", "f^{s****t}"),
            ("f^{****}", "f^{t****s}"),
        ),
    ),
    (
        "complete regularity tower",
        (
            ("f^{******}", "f^{i***s}"),
            ("f^{*****}", "f^{r***r}"),
            ("f^{i****i}", "f^{****}"),
            ("f^{j****j}", "f^{****}"),
            ("f^{r****r}", "f^{****}"),
        ),
    ),
    (
        "conjugation pullbacks",
        (
            ("f^{i****i}", "f^{rs****t}"),
            ("f^{j****j}", "f^{rt****s}"),
        ),
    ),
    (
        "nested-map hypotheses",
        (
            ("f^{t***r}", "f^{r***t}"),
            ("f^{t****s}", "f^{r****r}"),
        ),
    ),
)

_DIM_CHOICES = (1, 2, 3)

Dims = tuple[int, ...] | None


def _pick_dims(rng: random.Random, count: int, fixed: Dims) -> tuple[int, ...]:
    if fixed is None:
        return tuple(rng.choice(_DIM_CHOICES) for _ in range(count))
    return tuple(fixed[i % len(fixed)] for i in range(count))


def _rand_tri(rng: random.Random, fixed: Dims = None, name: str = "f"):
    dx, dy, dz, dw = _pick_dims(rng, 4, fixed)
    return random_map(3, (dx, dy, dz), dw, seed=rng.randrange(1 << 30), name=name)


def run_limit_order_goldens() -> SuiteSection:
    rows = []
    for expr, order in natural_extensions("f"):
        want = GOLDEN_ORDERS[expr.render()]
        rows.append(
            SuiteRow(
                f"{expr.render()} -> ({', '.join(want)})",
                order == want,
                "" if order == want else f"got ({', '.join(order)})",
            )
        )
    return SuiteSection("Limit orders of the six extensions", tuple(rows))


def run_symbolic_suite() -> SuiteSection:
    rows = []
    report = flip_conjugation_checks("f")
    for row in report.rows:
        rows.append(
            SuiteRow(
                f"flip {row.flip}: {row.stated_pair[0]} vs {row.stated_pair[1]}",
                row.ok,
                row.condition,
            )
        )
    for a, b in (("f^{i****i}", "f^{rs****t}"), ("f^{j****j}", "f^{rt****s}")):
        verdict = classify_text(a, b)
        rows.append(
            SuiteRow(f"{a} = {b}", verdict.kind == UNCOND_EQUAL, verdict.render())
        )
    return SuiteSection("Symbolic classifier", tuple(rows))


def run_extension_sweep(seed: int, trials: int = 100, dims: Dims = None) -> SuiteSection:
    rng = random.Random(seed)
    failures = []
    for k in range(trials):
        f = _rand_tri(rng, dims)
        exts = [realize(expr, f) for expr, _ in natural_extensions("f")]
        for other in exts[1:]:
            rep = equal(exts[0], other)
            if not rep.equal:
                failures.append(f"trial {k}: {rep.render()}")
                break
    detail = f"{trials - len(failures)}/{trials} trials"
    if failures:
        detail += "; first failure: " + failures[0]
    return SuiteSection(
        "Six-extension sweep on random tensors",
        (SuiteRow("all six realized extensions coincide", not failures, detail),),
    )


def run_chain_suite(seed: int, instances: int = 25, dims: Dims = None) -> SuiteSection:
    rng = random.Random(seed)
    rows = []
    for group, pairs in CHAIN_GROUPS:
        for lhs_text, rhs_text in pairs:
            lhs_expr, rhs_expr = parse(lhs_text), parse(rhs_text)
            failure = ""
            good = 0
            for k in range(instances):
                f = _rand_tri(rng, dims)
                rep = equal(realize(lhs_expr, f), realize(rhs_expr, f))
                if rep.equal:
                    good += 1
                elif not failure:
                    failure = f"instance {k}: {rep.render()}"
            rows.append(
                SuiteRow(
                    f"[{group}] {lhs_text} = {rhs_text}",
                    good == instances,
                    failure or f"{good}/{instances} instances",
                )
            )
    return SuiteSection("Proof-chain identities", tuple(rows))


def run_factorization_suite(
    seed: int, instances: int = 25, dims: Dims = None
) -> SuiteSection:
    rng = random.Random(seed)
    counts = {
        "single-sided factor identity": 0,
        "single-sided pointwise form": 0,
        "two-sided first identity": 0,
        "two-sided second identity": 0,
        "two-sided construction consistency": 0,
    }
    first_failure: dict[str, str] = {}

    def tally(label: str, rep) -> None:
        if rep.equal:
            counts[label] += 1
        elif label not in first_failure:
            first_failure[label] = rep.render()

    for _ in range(instances):
        dx, dy, dz, dw, ds = _pick_dims(rng, 5, dims)
        g = random_map(3, (dx, ds, dz), dw, seed=rng.randrange(1 << 30), name="g")
        h = random_map(1, (dy,), ds, seed=rng.randrange(1 << 30), name="h")
        f = build_factored(g, h, 2, name="f")
        lhs = realize(parse("f^{t*****}"), f)
        rhs = compose_codomain(
            realize(parse("h^{***}"), h), realize(parse("g^{t*****}"), g)
        )
        tally("single-sided factor identity", equal(lhs, rhs))
        aux_lhs = realize(parse("f^{t****s}"), f)
        aux_rhs = compose_into_slot(realize(parse("g^{t****s}"), g), h, 2)
        tally("single-sided pointwise form", equal(aux_lhs, aux_rhs))

        core = random_map(3, (dx, ds, ds), dw, seed=rng.randrange(1 << 30), name="c")
        h1 = random_map(1, (dy,), ds, seed=rng.randrange(1 << 30), name="h1")
        h2 = random_map(1, (dz,), ds, seed=rng.randrange(1 << 30), name="h2")
        gg = compose_into_slot(core, h2, 3, name="g")
        kk = compose_into_slot(core, h1, 2, name="K")
        f2 = compose_into_slot(gg, h1, 2, name="f")
        f2b = compose_into_slot(kk, h2, 3, name="f")
        tally("two-sided construction consistency", equal(f2, f2b))
        tally(
            "two-sided first identity",
            equal(
                realize(parse("f^{*****}"), f2),
                compose_codomain(
                    realize(parse("h^{***}"), h2), realize(parse("K^{*****}"), kk)
                ),
            ),
        )
        tally(
            "two-sided second identity",
            equal(
                realize(parse("f^{******}"), f2),
                compose_codomain(
                    realize(parse("h^{***}"), h1), realize(parse("g^{******}"), gg)
                ),
            ),
        )

    rows = tuple(
        SuiteRow(
            label,
            counts[label] == instances,
            first_failure.get(label, f"{counts[label]}/{instances} instances"),
        )
        for label in counts
    )
    return SuiteSection("Factorization through a linear map", rows)


def run_slice_bridge_suite(seed: int, pairs: int = 25, dims: Dims = None) -> SuiteSection:
    rng = random.Random(seed)
    counts: dict[str, int] = {}
    first_failure: dict[str, str] = {}
    for _ in range(pairs):
        f = _rand_tri(rng, dims)
        wstar = vector(tuple(rng.randint(-9, 9) for _ in range(f.codomain_dim)))
        for label, ok, detail in slice_bridge_check(f, wstar).rows:
            counts[label] = counts.get(label, 0) + (1 if ok else 0)
            if not ok and label not in first_failure:
                first_failure[label] = detail
    rows = tuple(
        SuiteRow(
            label,
            counts[label] == pairs,
            first_failure.get(label, f"{counts[label]}/{pairs} pairs"),
        )
        for label in counts
    )
    return SuiteSection("Bilinear slice bridge", rows)


def run_nested_bilinear_cases(seed: int) -> SuiteSection:
    rows = []
    f = random_map(3, (2, 2, 2), 2, seed=seed, name="f")
    zero2 = from_function("m", (2, 2), 2, lambda *_: 0)
    try:
        checks = nested_bilinear_check(f, zero2, zero2)
        ok = all(flag for _, flag, _ in checks)
        rows.append(
            SuiteRow(
                "zero inner map accepted",
                ok,
                "; ".join(d for _, _, d in checks),
            )
        )
    except ConstraintViolated as exc:
        rows.append(SuiteRow("zero inner map accepted", False, str(exc)))

    scalar_f = from_function("f", (1, 1, 1), 1, lambda *_: 1)
    scalar_inner = from_function("m", (1, 1), 1, lambda *_: 1)
    scalar_cand = from_function("th", (1, 1), 1, lambda *_: 1)
    try:
        nested_bilinear_check(scalar_f, scalar_inner, scalar_cand)
        rows.append(
            SuiteRow("nonlinear scalar candidate rejected", False, "no violation raised")
        )
    except ConstraintViolated as exc:
        rows.append(SuiteRow("nonlinear scalar candidate rejected", True, str(exc)))

    zero1 = from_function("m", (1, 1), 1, lambda *_: 0)
    try:
        checks = nested_bilinear_check(scalar_f, zero1, zero1)
        rows.append(
            SuiteRow(
                "zero scalar case accepted",
                all(flag for _, flag, _ in checks),
                ""),
        )
    except ConstraintViolated as exc:
        rows.append(SuiteRow("zero scalar case accepted", False, str(exc)))
    return SuiteSection("Nested bilinear constraint", tuple(rows))


def run_group_fixture_suite(names=GROUP_FIXTURES) -> SuiteSection:
    rows = []
    for name in names:
        model, triple = group_algebra(cayley_fixture(name))
        exts = [realize(expr, triple) for expr, _ in natural_extensions(triple.name)]
        bad = ""
        for other in exts[1:]:
            rep = equal(exts[0], other)
            if not rep.equal:
                bad = rep.render()
                break
        rows.append(SuiteRow(f"{name}: six extensions coincide", not bad, bad))
        pi = model.multiplication
        stacked = compose_into_slot(pi, pi, 1, name="pipi")
        rep = equal(triple, stacked)
        rows.append(
            SuiteRow(f"{name}: triple map factors through the product", rep.equal, rep.render())
        )
    return SuiteSection("Finite group convolution (complete regularity)", tuple(rows))


def run_derivation_suite() -> SuiteSection:
    rows = []
    for name in ("zero", "poly3-euler"):
        cand = derivation_fixture(name)
        rep = is_tri_derivation(cand)
        rows.append(SuiteRow(f"{name}: slot identities hold", rep.holds, rep.render()))
        harness = fourth_adjoint_check(cand)
        rows.append(
            SuiteRow(
                f"{name}: fourth-adjoint harness ({len(harness)} checks)",
                all(ok for _, ok, _ in harness),
                "; ".join(lbl for lbl, ok, _ in harness if not ok) or "all passed",
            )
        )
        ext_checks = composite_extension_checks(cand)
        rows.append(
            SuiteRow(
                f"{name}: composite extension statements ({len(ext_checks)} checks)",
                all(ok for _, ok, _ in ext_checks),
                "; ".join(lbl for lbl, ok, _ in ext_checks if not ok) or "all passed",
            )
        )
    for name in ("z3-conv", "matrix2-inner"):
        cand = derivation_fixture(name)
        rep = is_tri_derivation(cand)
        rejected = not rep.holds
        witnessed = any(
            check.witness is not None
            for check in (rep.first_slot, rep.middle_slot, rep.last_slot)
        )
        rows.append(
            SuiteRow(
                f"{name}: rejected with witness",
                rejected and witnessed,
                rep.render(),
            )
        )
    return SuiteSection("Tri-derivations and the fourth adjoint", tuple(rows))


def run_adjoint_pairing(
    seed: int, instances: int = 200, dims: Dims = None
) -> SuiteSection:
    rng = random.Random(seed)
    failures = []
    for k in range(instances):
        arity = rng.choice((1, 2, 3))
        picked = _pick_dims(rng, arity + 1, dims)
        f = random_map(arity, picked[:arity], picked[arity], seed=rng.randrange(1 << 30))
        fstar = adjoint(f)
        ok = True
        for idx in _all_indices(picked[:arity]):
            args = [basis_vector(d, i) for d, i in zip(picked[:arity], idx)]
            for l in range(picked[arity]):
                w = basis_vector(picked[arity], l)
                lhs = pair(evaluate(fstar, [w] + args[:-1]), args[-1])
                rhs = pair(w, evaluate(f, args))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            failures.append(str(k))
    detail = f"{instances - len(failures)}/{instances} instances"
    if failures:
        detail += "; failing instances: " + ", ".join(failures[:5])
    return SuiteSection(
        "Adjoint pairing identity",
        (SuiteRow("pairing identity on all basis tuples", not failures, detail),),
    )


def _all_indices(dims):
    if not dims:
        return [()]
    rest = _all_indices(dims[1:])
    return [(i,) + tail for i in range(dims[0]) for tail in rest]


def full_suite(
    seed: int = 0,
    trials: int = 100,
    instances: int = 25,
    dims: Dims = None,
    fixtures=GROUP_FIXTURES,
) -> tuple[SuiteSection, ...]:
    return (
        run_limit_order_goldens(),
        run_symbolic_suite(),
        run_extension_sweep(seed, trials, dims),
        run_chain_suite(seed + 1, instances, dims),
        run_factorization_suite(seed + 2, instances, dims),
        run_slice_bridge_suite(seed + 3, instances, dims),
        run_nested_bilinear_cases(seed + 4),
        run_group_fixture_suite(fixtures),
        run_derivation_suite(),
        run_adjoint_pairing(seed + 5, dims=dims),
    )


def render_report(sections, config_line: str) -> str:
    """Markdown report; deterministic for a fixed configuration."""
    out = ["# Extension calculus verification report", "", config_line, ""]
    total = 0
    failed = 0
    for section in sections:
        out.append(f"## {section.title}")
        out.append("")
        out.append("| check | result | detail |")
        out.append("|---|---|---|")
        for row in section.rows:
            total += 1
            if not row.passed:
                failed += 1
            mark = "PASS" if row.passed else "FAIL"
            detail = row.detail.replace("|", "\\|")
            out.append(f"| {row.name.replace('|', chr(92) + '|')} | {mark} | {detail} |")
        out.append("")
    verdict = "all passed" if failed == 0 else f"{failed} FAILED"
    out.append(f"Summary: {total} checks, {verdict}.")
    out.append("")
    return "\n".join(out)
