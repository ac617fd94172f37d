"""Finite-dimensional test beds for the extension calculus.

Group algebras from Cayley tables, truncated polynomial algebras with
their Euler derivation, matrix algebras, and two-sided module
structures.  On top of these sit the bilinear checks: the two canonical
extensions of a product, the regularity comparison between them, the
slice construction that turns a tri-linear map into a bilinear one, and
the nested-map constraint check.

Everything here lives in the exact rational model, where dual spaces are
identified with the spaces themselves through the dot pairing.  In that
model the two canonical extensions of any bilinear map coincide; the
checks below verify this collapse rather than assume it, which makes
them sharp regression tests for the axis bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import islice, permutations, product

from .expr import ExprAst
from .tensor import (
    DimensionMismatch,
    IdentityReport,
    MultiMap,
    Vector,
    basis_vector,
    equal,
    evaluate,
    from_function,
    realize,
    slice_slot,
    vector,
)


class InvalidCayleyTable(Exception):
    pass


class InvalidAlgebra(Exception):
    pass


class ConstraintViolated(Exception):
    """A sample point where a claimed pointwise constraint fails."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True)
class CayleyTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int

    def __post_init__(self):
        n = self.order
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise InvalidCayleyTable(f"table must be {n}x{n}")
        if not 0 <= self.identity < n:
            raise InvalidCayleyTable(f"identity index {self.identity} out of range")
        full = set(range(n))
        for k, row in enumerate(self.table):
            if set(row) != full:
                raise InvalidCayleyTable(f"row {k} is not a permutation")
        for k in range(n):
            if set(self.table[i][k] for i in range(n)) != full:
                raise InvalidCayleyTable(f"column {k} is not a permutation")
        e = self.identity
        for k in range(n):
            if self.table[e][k] != k or self.table[k][e] != k:
                raise InvalidCayleyTable(f"element {e} is not an identity")
        for i, j, k in product(range(n), repeat=3):
            if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                raise InvalidCayleyTable(f"associativity fails at ({i}, {j}, {k})")

    def product(self, i: int, j: int) -> int:
        return self.table[i][j]

    def render(self) -> str:
        lines = [f"group {self.order} {self.identity}"]
        lines += [" ".join(str(v) for v in row) for row in self.table]
        return "\n".join(lines) + "\n"


def parse_cayley(text: str) -> CayleyTable:
    """Parse the text form: ``group <n> <identity>`` then n rows of n indices."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise InvalidCayleyTable("empty table text")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "group":
        raise InvalidCayleyTable(f"bad header {lines[0]!r}")
    try:
        n, e = int(head[1]), int(head[2])
        rows = tuple(tuple(int(v) for v in ln.split()) for ln in lines[1:])
    except ValueError as exc:
        raise InvalidCayleyTable(f"non-integer entry: {exc}") from exc
    if len(rows) != n:
        raise InvalidCayleyTable(f"expected {n} rows, got {len(rows)}")
    return CayleyTable(n, rows, e)


def _cyclic(n: int) -> CayleyTable:
    rows = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return CayleyTable(n, rows, 0)


def _sym3() -> CayleyTable:
    # permutations of {0,1,2} in lexicographic order; (p.q)(x) = p(q(x))
    perms = list(permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    rows = tuple(
        tuple(index[tuple(p[q[x]] for x in range(3))] for q in perms) for p in perms
    )
    return CayleyTable(6, rows, 0)


GROUP_FIXTURES = ("z2", "z3", "z4", "s3")


def cayley_fixture(name: str) -> CayleyTable:
    if name == "z2":
        return _cyclic(2)
    if name == "z3":
        return _cyclic(3)
    if name == "z4":
        return _cyclic(4)
    if name == "s3":
        return _sym3()
    raise InvalidCayleyTable(f"unknown group fixture {name!r}")


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class AlgebraModel:
    dim: int
    multiplication: MultiMap
    unit: Vector | None
    basis_names: tuple[str, ...]

    def validate(self) -> None:
        pi = self.multiplication
        if pi.arity != 2 or pi.input_dims != (self.dim, self.dim) or pi.codomain_dim != self.dim:
            raise InvalidAlgebra(f"product shape {pi.shape} does not match dim {self.dim}")
        if len(self.basis_names) != self.dim:
            raise InvalidAlgebra("one basis name per dimension")
        es = [basis_vector(self.dim, k) for k in range(self.dim)]
        for i, j, k in product(range(self.dim), repeat=3):
            left = evaluate(pi, [evaluate(pi, [es[i], es[j]]), es[k]])
            right = evaluate(pi, [es[i], evaluate(pi, [es[j], es[k]])])
            if left != right:
                raise InvalidAlgebra(
                    f"associativity fails at ({self.basis_names[i]}, "
                    f"{self.basis_names[j]}, {self.basis_names[k]})"
                )
        if self.unit is not None:
            if self.unit.dim != self.dim:
                raise InvalidAlgebra("unit has wrong dimension")
            for k in range(self.dim):
                if evaluate(pi, [self.unit, es[k]]) != es[k] or evaluate(pi, [es[k], self.unit]) != es[k]:
                    raise InvalidAlgebra(f"unit law fails at basis {self.basis_names[k]}")


def group_algebra(t: CayleyTable) -> tuple[AlgebraModel, MultiMap]:
    """Group algebra of a finite group plus its triple-convolution map.

    The product sends basis deltas to the delta of the group product; the
    triple map convolves three arguments at once.
    """
    n = t.order
    pi = from_function(
        "pi", (n, n), n, lambda l, i, j: 1 if t.product(i, j) == l else 0
    )
    triple = from_function(
        "conv3",
        (n, n, n),
        n,
        lambda l, i, j, k: 1 if t.product(t.product(i, j), k) == l else 0,
    )
    model = AlgebraModel(
        n, pi, basis_vector(n, t.identity), tuple(f"g{k}" for k in range(n))
    )
    model.validate()
    return model, triple


def truncated_poly_algebra(n: int) -> tuple[AlgebraModel, MultiMap]:
    """Polynomials modulo x^n, plus the degree-weighting derivation.

    The derivation sends x^k to k.x^k.  Its defining product rule is
    re-checked on every basis pair at construction time.
    """
    if n < 2:
        raise InvalidAlgebra("need degree bound >= 2")
    pi = from_function(
        "pi", (n, n), n, lambda l, a, b: 1 if a + b == l else 0
    )
    names = ("1", "x") + tuple(f"x^{k}" for k in range(2, n))
    model = AlgebraModel(n, pi, basis_vector(n, 0), names)
    model.validate()
    delta = from_function(
        "euler", (n,), n, lambda l, k: k if l == k else 0
    )
    es = [basis_vector(n, k) for k in range(n)]
    for a, b in product(range(n), repeat=2):
        lhs = evaluate(delta, [evaluate(pi, [es[a], es[b]])])
        rhs_coords = tuple(
            u + v
            for u, v in zip(
                evaluate(pi, [evaluate(delta, [es[a]]), es[b]]).coords,
                evaluate(pi, [es[a], evaluate(delta, [es[b]])]).coords,
            )
        )
        if lhs.coords != rhs_coords:
            raise InvalidAlgebra(f"product rule fails at (x^{a}, x^{b})")
    return model, delta


def matrix_algebra(k: int) -> AlgebraModel:
    """k-by-k matrices over the rationals on the elementary-matrix basis."""
    if k < 1:
        raise InvalidAlgebra("need k >= 1")
    dim = k * k

    def fn(l, u, v):
        p1, q1 = divmod(u, k)
        p2, q2 = divmod(v, k)
        return 1 if q1 == p2 and l == p1 * k + q2 else 0

    pi = from_function("pi", (dim, dim), dim, fn)
    unit = vector(tuple(1 if divmod(m, k)[0] == divmod(m, k)[1] else 0 for m in range(dim)))
    names = tuple(f"E{p + 1}{q + 1}" for p in range(k) for q in range(k))
    model = AlgebraModel(dim, pi, unit, names)
    model.validate()
    return model


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class BanachModuleModel:
    """An algebra acting on a carrier space from both sides."""

    algebra: AlgebraModel
    carrier_dim: int
    left_action: MultiMap
    right_action: MultiMap

    def validate(self) -> None:
        n, d = self.algebra.dim, self.carrier_dim
        if self.left_action.input_dims != (n, d) or self.left_action.codomain_dim != d:
            raise InvalidAlgebra(f"left action shape {self.left_action.shape}")
        if self.right_action.input_dims != (d, n) or self.right_action.codomain_dim != d:
            raise InvalidAlgebra(f"right action shape {self.right_action.shape}")
        pi = self.algebra.multiplication
        ea = [basis_vector(n, i) for i in range(n)]
        ex = [basis_vector(d, i) for i in range(d)]
        lact, ract = self.left_action, self.right_action
        for i, j, m in product(range(n), range(n), range(d)):
            ab = evaluate(pi, [ea[i], ea[j]])
            if evaluate(lact, [ab, ex[m]]) != evaluate(lact, [ea[i], evaluate(lact, [ea[j], ex[m]])]):
                raise InvalidAlgebra(f"left module law fails at ({i}, {j}, {m})")
            if evaluate(ract, [ex[m], ab]) != evaluate(ract, [evaluate(ract, [ex[m], ea[i]]), ea[j]]):
                raise InvalidAlgebra(f"right module law fails at ({m}, {i}, {j})")
            if evaluate(lact, [ea[i], evaluate(ract, [ex[m], ea[j]])]) != evaluate(
                ract, [evaluate(lact, [ea[i], ex[m]]), ea[j]]
            ):
                raise InvalidAlgebra(f"action compatibility fails at ({i}, {m}, {j})")


def regular_module(model: AlgebraModel) -> BanachModuleModel:
    """The algebra acting on itself by multiplication from both sides."""
    mod = BanachModuleModel(model, model.dim, model.multiplication, model.multiplication)
    mod.validate()
    return mod


# ---------------------------------------------------------------------------
# bilinear extension checks


def arens_products(m: MultiMap) -> tuple[MultiMap, MultiMap]:
    """The two canonical extensions of a bilinear map.

    In the exact rational model both come back as the original tensor;
    that collapse is asserted, so a disagreement signals an axis bug
    rather than genuine irregularity.
    """
    if m.arity != 2:
        raise DimensionMismatch(f"{m.name}: need a bilinear map, got arity {m.arity}")
    first = realize(ExprAst(m.name, ("*", "*", "*")), m)
    second = realize(ExprAst(m.name, ("r", "*", "*", "*", "r")), m)
    for ext in (first, second):
        rep = equal(m, ext)
        if not rep.equal:
            raise InvalidAlgebra(f"extension drifted from the base map: {rep.render()}")
    return first, second


def regularity_check(m: MultiMap) -> IdentityReport:
    """Compare the two canonical extensions of a bilinear map entrywise."""
    if m.arity != 2:
        raise DimensionMismatch(f"{m.name}: need a bilinear map, got arity {m.arity}")
    first = realize(ExprAst(m.name, ("*", "*", "*")), m)
    second = realize(ExprAst(m.name, ("r", "*", "*", "*", "r")), m)
    return equal(first, second)


@dataclass(frozen=True)
class BridgeReport:
    sliced: MultiMap
    rows: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.rows)


def slice_bridge_check(f: MultiMap, wstar: Vector) -> BridgeReport:
    """Slice a tri-linear map down to a bilinear one and check the bridge.

    The sliced map fixes a codomain functional in the once-adjointed
    cycled map.  Its double extension must match the corresponding slice
    of the six-fold adjoint, and the sliced map must pass the two-sided
    extension comparison.
    """
    if f.arity != 3:
        raise DimensionMismatch(f"{f.name}: need a tri-linear map")
    if wstar.dim != f.codomain_dim:
        raise DimensionMismatch(
            f"functional dim {wstar.dim} vs codomain dim {f.codomain_dim}"
        )
    cycled = realize(ExprAst(f.name, ("s", "*")), f)
    m = slice_slot(cycled, 1, wstar)
    lhs = slice_slot(realize(ExprAst(f.name, ("s",) + ("*",) * 6), f), 2, wstar)
    rhs = realize(ExprAst(m.name, ("*",) * 4), m)
    bridge = equal(lhs, rhs)
    reg = regularity_check(m)
    remark = equal(
        realize(ExprAst(f.name, ("s", "*", "*", "*", "*", "t")), f),
        realize(ExprAst(f.name, ("r", "*", "*", "*", "*", "r")), f),
    )
    rows = (
        ("slice bridge identity", bridge.equal, bridge.render()),
        ("sliced map extension comparison", reg.equal, reg.render()),
        ("cycled-vs-reversed extension remark", remark.equal, remark.render()),
    )
    return BridgeReport(m, rows)


GRID_COORDS = (-1, 0, 1, 2)
GRID_LIMIT = 256


def sample_grid(dim: int) -> tuple[Vector, ...]:
    """Deterministic sample vectors with small integer coordinates.

    Nonlinear constraints need more than basis vectors; degree-two
    discrepancies surface at coordinates beyond {0, 1}.
    """
    pts = product(GRID_COORDS, repeat=dim)
    return tuple(vector(p) for p in islice(pts, GRID_LIMIT))


def nested_bilinear_check(
    f: MultiMap, inner: MultiMap, candidate: MultiMap
) -> tuple[tuple[str, bool, str], ...]:
    """Validate a bilinear map claimed to equal f(x, y, inner(x, y)).

    The claim is nonlinear in each argument, so it cannot be synthesized
    or checked on basis vectors alone; it is sampled on the grid instead.
    Raises ConstraintViolated at the first failing sample point.  The
    accompanying rows assert the two extension identities of f that the
    construction relies on, plus the extension comparison for the
    candidate itself.
    """
    if f.arity != 3 or inner.arity != 2 or candidate.arity != 2:
        raise DimensionMismatch("need arities 3, 2, 2")
    if inner.input_dims != f.input_dims[:2] or inner.codomain_dim != f.input_dims[2]:
        raise DimensionMismatch(
            f"inner map {inner.shape} does not chain into {f.shape}"
        )
    if candidate.input_dims != f.input_dims[:2] or candidate.codomain_dim != f.codomain_dim:
        raise DimensionMismatch(
            f"candidate {candidate.shape} does not match {f.shape}"
        )
    for x in sample_grid(f.input_dims[0]):
        for y in sample_grid(f.input_dims[1]):
            want = evaluate(f, [x, y, evaluate(inner, [x, y])])
            got = evaluate(candidate, [x, y])
            if got != want:
                raise ConstraintViolated(
                    f"candidate disagrees at x={tuple(map(str, x.coords))}, "
                    f"y={tuple(map(str, y.coords))}: "
                    f"{tuple(map(str, got.coords))} vs {tuple(map(str, want.coords))}",
                    point=(x, y),
                )
    hyp1 = equal(
        realize(ExprAst(f.name, ("t", "*", "*", "*", "r")), f),
        realize(ExprAst(f.name, ("r", "*", "*", "*", "t")), f),
    )
    hyp2 = equal(
        realize(ExprAst(f.name, ("*", "*", "*", "*", "t", "*", "*", "s")), f),
        realize(ExprAst(f.name, ("t", "*", "*", "s", "*", "*", "*", "*")), f),
    )
    reg = regularity_check(candidate)
    return (
        ("mixed-adjoint hypothesis", hyp1.equal, hyp1.render()),
        ("interchange hypothesis", hyp2.equal, hyp2.render()),
        ("candidate extension comparison", reg.equal, reg.render()),
    )
