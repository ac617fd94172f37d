"""Slot-wise derivations of tri-linear maps and their fourth adjoints.

A tri-linear map D from three copies of an algebra into a two-sided
module is a tri-derivation when multiplying any one argument by a
fourth element splits into a right-action term plus a left-action term,
in each of the three slots separately.  Multilinearity makes checking
the three identities on basis quadruples complete.

The two composite families built from a tri-derivation both fix one
datum and rearrange the rest: the right-action composite fixes the
first argument and post-multiplies, and the dual-action composite fixes
a carrier functional and pulls it back through the adjoint.  Their
extension identities are what the fourth-adjoint harness verifies, in
both directions, alongside rebuilding the whole structure from fourth
adjoints and re-running the slot checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import (
    AlgebraModel,
    BanachModuleModel,
    InvalidAlgebra,
    cayley_fixture,
    group_algebra,
    matrix_algebra,
    regular_module,
    regularity_check,
    truncated_poly_algebra,
)
from .expr import ExprAst
from .tensor import (
    MultiMap,
    ShapeMismatch,
    Vector,
    adjoint,
    basis_vector,
    equal,
    evaluate,
    from_function,
    realize,
)


def _vadd(u: Vector, v: Vector) -> Vector:
    return Vector(tuple(a + b for a, b in zip(u.coords, v.coords)))


@dataclass(frozen=True)
class TriDerivationCandidate:
    name: str
    tri_map: MultiMap
    module: BanachModuleModel

    def __post_init__(self):
        n = self.module.algebra.dim
        d = self.module.carrier_dim
        if self.tri_map.arity != 3:
            raise ShapeMismatch(f"{self.name}: candidate must be tri-linear")
        if self.tri_map.input_dims != (n, n, n) or self.tri_map.codomain_dim != d:
            raise ShapeMismatch(
                f"{self.name}: shape {self.tri_map.shape} does not chain "
                f"through algebra dim {n} into carrier dim {d}"
            )


@dataclass(frozen=True)
class SlotCheck:
    ok: bool
    witness: tuple[int, int, int, int] | None = None


@dataclass(frozen=True)
class DerivationReport:
    """One slot check per identity; witnesses are basis index quadruples."""

    first_slot: SlotCheck
    middle_slot: SlotCheck
    last_slot: SlotCheck

    @property
    def holds(self) -> bool:
        return self.first_slot.ok and self.middle_slot.ok and self.last_slot.ok

    def render(self) -> str:
        parts = []
        for label, check in (
            ("first", self.first_slot),
            ("middle", self.middle_slot),
            ("last", self.last_slot),
        ):
            if check.ok:
                parts.append(f"{label} slot: ok")
            else:
                parts.append(f"{label} slot: fails at basis quadruple {check.witness}")
        return "; ".join(parts)


def is_tri_derivation(cand: TriDerivationCandidate) -> DerivationReport:
    """Check the three slot identities on every basis quadruple.

    Witnesses record the first failing quadruple per identity in
    lexicographic scan order.
    """
    D = cand.tri_map
    pi = cand.module.algebra.multiplication
    lact = cand.module.left_action
    ract = cand.module.right_action
    n = cand.module.algebra.dim
    es = [basis_vector(n, k) for k in range(n)]
    witness: list[tuple[int, int, int, int] | None] = [None, None, None]
    for ia, ib, ic, id_ in product(range(n), repeat=4):
        a, b, c, d = es[ia], es[ib], es[ic], es[id_]
        dabc = evaluate(D, [a, b, c])
        right_term = evaluate(ract, [dabc, d])
        if witness[0] is None:
            lhs = evaluate(D, [evaluate(pi, [a, d]), b, c])
            rhs = _vadd(right_term, evaluate(lact, [a, evaluate(D, [d, b, c])]))
            if lhs != rhs:
                witness[0] = (ia, ib, ic, id_)
        if witness[1] is None:
            lhs = evaluate(D, [a, evaluate(pi, [b, d]), c])
            rhs = _vadd(right_term, evaluate(lact, [b, evaluate(D, [a, d, c])]))
            if lhs != rhs:
                witness[1] = (ia, ib, ic, id_)
        if witness[2] is None:
            lhs = evaluate(D, [a, b, evaluate(pi, [c, d])])
            rhs = _vadd(right_term, evaluate(lact, [c, evaluate(D, [a, b, d])]))
            if lhs != rhs:
                witness[2] = (ia, ib, ic, id_)
    return DerivationReport(
        SlotCheck(witness[0] is None, witness[0]),
        SlotCheck(witness[1] is None, witness[1]),
        SlotCheck(witness[2] is None, witness[2]),
    )


# ---------------------------------------------------------------------------
# composite maps


def right_action_composite(
    cand: TriDerivationCandidate, a: Vector, name: str | None = None
) -> MultiMap:
    """The map (c, b, d) -> right_action(D(a, b, c), d) for a fixed a."""
    D = cand.tri_map
    ract = cand.module.right_action
    n = cand.module.algebra.dim
    if a.dim != n:
        raise ShapeMismatch(f"fixed element dim {a.dim} vs algebra dim {n}")
    es = [basis_vector(n, k) for k in range(n)]
    cols = {
        (ic, ib, id_): evaluate(ract, [evaluate(D, [a, es[ib], es[ic]]), es[id_]])
        for ic, ib, id_ in product(range(n), repeat=3)
    }
    return from_function(
        name if name is not None else f"{cand.name}.rc",
        (n, n, n),
        cand.module.carrier_dim,
        lambda l, ic, ib, id_: cols[(ic, ib, id_)].coords[l],
    )


def dual_action_composite(
    cand: TriDerivationCandidate, xstar: Vector, name: str | None = None
) -> MultiMap:
    """The map (a, d, b) -> D*(left_action*(xstar, b), a, d).

    Lands in the algebra dual; the codomain axis is labelled with a star
    to keep the dual level visible to later realizations.
    """
    D = cand.tri_map
    n = cand.module.algebra.dim
    if xstar.dim != cand.module.carrier_dim:
        raise ShapeMismatch(
            f"functional dim {xstar.dim} vs carrier dim {cand.module.carrier_dim}"
        )
    dstar = adjoint(D)
    lstar = adjoint(cand.module.left_action)
    es = [basis_vector(n, k) for k in range(n)]
    cols = {}
    for ib in range(n):
        pulled = evaluate(lstar, [xstar, es[ib]])
        for ia, id_ in product(range(n), repeat=2):
            cols[(ia, id_, ib)] = evaluate(dstar, [pulled, es[ia], es[id_]])
    return from_function(
        name if name is not None else f"{cand.name}.dc",
        (n, n, n),
        n,
        lambda l, ia, id_, ib: cols[(ia, id_, ib)].coords[l],
        labels=("out*", "in1", "in2", "in3"),
    )


# ---------------------------------------------------------------------------
# extension harnesses

Row = tuple[str, bool, str]

_EXT_OPS = {
    "": ("*",) * 4,
    "i": ("i", "*", "*", "*", "*", "i"),
    "j": ("j", "*", "*", "*", "*", "j"),
    "r": ("r", "*", "*", "*", "*", "r"),
    "t": ("t", "*", "*", "*", "*", "s"),
    "s": ("s", "*", "*", "*", "*", "t"),
}


def _extensions(m: MultiMap, leads) -> dict[str, MultiMap]:
    return {lead: realize(ExprAst(m.name, _EXT_OPS[lead]), m) for lead in leads}


def _family_rows(
    cand: TriDerivationCandidate,
    build,
    count: int,
    pairs: list[tuple[str, str, str]],
) -> list[Row]:
    """Check extension equalities of a composite family over a basis.

    ``build`` makes the composite for one basis index; ``pairs`` lists
    (row label, lead letter, lead letter) equalities to verify for all
    of them.  One report row per pair, aggregated across the basis.
    """
    leads = {lead for _, la, lb in pairs for lead in (la, lb)}
    failures: dict[str, str] = {}
    for k in range(count):
        comp = build(k)
        exts = _extensions(comp, leads)
        for label, la, lb in pairs:
            if label in failures:
                continue
            rep = equal(exts[la], exts[lb])
            if not rep.equal:
                failures[label] = f"basis {k}: {rep.render()}"
    return [
        (label, label not in failures, failures.get(label, f"{count} bases checked"))
        for label, _, _ in pairs
    ]


def composite_extension_checks(cand: TriDerivationCandidate) -> list[Row]:
    """The four conditional extension statements about the composites.

    Each statement says: under a hypothesis on the right action or on
    the base map's own extensions, two extensions of every right-action
    composite agree; the dual-action composites obey the same pattern.
    In the exact rational model every hypothesis holds, so each row is
    an unconditional check here, with the hypotheses asserted first.
    """
    D = cand.tri_map
    rows: list[Row] = []
    reg = regularity_check(cand.module.right_action)
    rows.append(("hypothesis: right action extensions agree", reg.equal, reg.render()))
    dexts = _extensions(D, ("", "i", "j", "s"))
    for label, la, lb in (
        ("hypothesis: base extensions j-vs-plain", "j", ""),
        ("hypothesis: base extensions j-vs-i", "j", "i"),
        ("hypothesis: base extensions j-vs-s", "j", "s"),
    ):
        rep = equal(dexts[la], dexts[lb])
        rows.append((label, rep.equal, rep.render()))

    n = cand.module.algebra.dim
    d = cand.module.carrier_dim
    item_pairs = [
        ("item 1: plain equals t-conjugated", "", "t"),
        ("item 1: r-conjugated equals i-conjugated", "r", "i"),
        ("item 2: plain equals i-conjugated", "", "i"),
        ("item 2: r-conjugated equals t-conjugated", "r", "t"),
        ("item 3: plain equals i-conjugated (repeat)", "", "i"),
        ("item 4: plain equals r-conjugated", "", "r"),
    ]
    phi_rows = _family_rows(
        cand,
        lambda k: right_action_composite(cand, basis_vector(n, k), name=f"rc{k}"),
        n,
        [(f"right composites, {lbl}", la, lb) for lbl, la, lb in item_pairs],
    )
    psi_rows = _family_rows(
        cand,
        lambda k: dual_action_composite(cand, basis_vector(d, k), name=f"dc{k}"),
        d,
        [(f"dual composites, {lbl}", la, lb) for lbl, la, lb in item_pairs],
    )
    return rows + phi_rows + psi_rows


def fourth_adjoint_check(cand: TriDerivationCandidate) -> list[Row]:
    """Rebuild everything from fourth adjoints and re-check; both ways.

    Forward: realize the fourth adjoint of the candidate and the triple
    extensions of the product and both actions, confirm each reproduces
    its original exactly (they must, since every map here is a finite
    tensor), and re-run the slot checks on the rebuilt structure, once
    per canonical product.  Backward: verify the two condition families
    on the composites that characterize when the rebuilt map is again a
    derivation.
    """
    D = cand.tri_map
    alg = cand.module.algebra
    rows: list[Row] = []
    dxx = realize(ExprAst(D.name, ("*",) * 4), D)
    rep = equal(dxx, D)
    rows.append(("fourth adjoint reproduces the candidate", rep.equal, rep.render()))

    for tag, ops in (("first", ("*", "*", "*")), ("second", ("r", "*", "*", "*", "r"))):
        pixx = realize(ExprAst(alg.multiplication.name, ops), alg.multiplication)
        lxx = realize(ExprAst("l", ops), cand.module.left_action)
        rxx = realize(ExprAst("r", ops), cand.module.right_action)
        drift = [
            r for r in (
                equal(pixx, alg.multiplication),
                equal(lxx, cand.module.left_action),
                equal(rxx, cand.module.right_action),
            ) if not r.equal
        ]
        if drift:
            rows.append((f"extended structure ({tag} product)", False, drift[0].render()))
            continue
        ext_alg = AlgebraModel(alg.dim, pixx, alg.unit, alg.basis_names)
        ext_alg.validate()
        ext_mod = BanachModuleModel(ext_alg, cand.module.carrier_dim, lxx, rxx)
        ext_mod.validate()
        ext_cand = TriDerivationCandidate(f"{cand.name}.ext", dxx, ext_mod)
        ext_rep = is_tri_derivation(ext_cand)
        rows.append(
            (
                f"fourth adjoint is again a derivation ({tag} product)",
                ext_rep.holds,
                ext_rep.render(),
            )
        )

    n, d = alg.dim, cand.module.carrier_dim
    rows += _family_rows(
        cand,
        lambda k: right_action_composite(cand, basis_vector(n, k), name=f"rc{k}"),
        n,
        [
            ("right composites: r-conjugated equals i-conjugated", "r", "i"),
            ("right composites: i-conjugated equals s-conjugated", "i", "s"),
        ],
    )
    rows += _family_rows(
        cand,
        lambda k: dual_action_composite(cand, basis_vector(d, k), name=f"dc{k}"),
        d,
        [
            ("dual composites: j-conjugated equals t-conjugated", "j", "t"),
            ("dual composites: t-conjugated equals plain", "t", ""),
        ],
    )
    return rows


# ---------------------------------------------------------------------------
# fixtures


def leibniz_sum(module: BanachModuleModel, delta: MultiMap, name: str) -> MultiMap:
    """The three-term sum D(a,b,c) = d(a)bc + ad(b)c + abd(c) on X = A.

    On a unital algebra this is never a tri-derivation unless it
    vanishes on unit-padded triples: plugging the unit into the
    multiplied slot doubles one side.  Kept as a named builder because
    its rejection witnesses make good negative fixtures.
    """
    alg = module.algebra
    if module.carrier_dim != alg.dim:
        raise ShapeMismatch("sum form needs the algebra acting on itself")
    pi = alg.multiplication
    n = alg.dim
    es = [basis_vector(n, k) for k in range(n)]

    def term(u, v, w):
        return evaluate(pi, [evaluate(pi, [u, v]), w])

    cols = {}
    for ia, ib, ic in product(range(n), repeat=3):
        da = evaluate(delta, [es[ia]])
        db = evaluate(delta, [es[ib]])
        dc = evaluate(delta, [es[ic]])
        total = _vadd(
            _vadd(term(da, es[ib], es[ic]), term(es[ia], db, es[ic])),
            term(es[ia], es[ib], dc),
        )
        cols[(ia, ib, ic)] = total
    return from_function(
        name, (n, n, n), n, lambda l, ia, ib, ic: cols[(ia, ib, ic)].coords[l]
    )


def _poly3_euler() -> TriDerivationCandidate:
    model, _ = truncated_poly_algebra(3)
    mod = regular_module(model)
    # degree-weighted: monomial triple (a, b, c) lands on abc.x^(a+b+c-1);
    # each slot map is then a multiple of x^k d/dx with k >= 1
    n = 3

    def fn(l, a, b, c):
        return a * b * c if a + b + c - 1 == l else 0

    D = from_function("D", (n, n, n), n, fn)
    return TriDerivationCandidate("poly3-euler", D, mod)


def _zero() -> TriDerivationCandidate:
    model, _ = truncated_poly_algebra(3)
    mod = regular_module(model)
    D = from_function("D", (3, 3, 3), 3, lambda *_: 0)
    return TriDerivationCandidate("zero", D, mod)


def _z3_conv() -> TriDerivationCandidate:
    model, triple = group_algebra(cayley_fixture("z3"))
    mod = regular_module(model)
    return TriDerivationCandidate("z3-conv", triple, mod)


def _matrix2_inner() -> TriDerivationCandidate:
    model = matrix_algebra(2)
    mod = regular_module(model)
    pi = model.multiplication
    m = basis_vector(4, 1)  # E12
    es = [basis_vector(4, k) for k in range(4)]
    inner = from_function(
        "ad",
        (4,),
        4,
        lambda l, k: evaluate(pi, [m, es[k]]).coords[l]
        - evaluate(pi, [es[k], m]).coords[l],
    )
    D = leibniz_sum(mod, inner, "D")
    return TriDerivationCandidate("matrix2-inner", D, mod)


FIXTURE_NAMES = ("zero", "poly3-euler", "z3-conv", "matrix2-inner")

_FIXTURE_BUILDERS = {
    "zero": _zero,
    "poly3-euler": _poly3_euler,
    "z3-conv": _z3_conv,
    "matrix2-inner": _matrix2_inner,
}


def derivation_fixture(name: str) -> TriDerivationCandidate:
    try:
        build = _FIXTURE_BUILDERS[name]
    except KeyError:
        raise InvalidAlgebra(
            f"unknown derivation fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}"
        ) from None
    return build()
