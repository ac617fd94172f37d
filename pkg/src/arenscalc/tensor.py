"""Dense exact-rational realizations of multilinear maps.

A map f : V1 x ... x Vn -> C between finite-dimensional rational spaces is
stored as a dense tensor with the codomain axis first, entries in row-major
order.  The dual pairing is the dot product in the chosen bases and biduals
are identified with the original spaces, so dual levels only matter mod 2.
Under that pairing the adjoint is a pure axis rotation,

    adjoint(F)[k; l, i1, ..., i_{n-1}] = F[l; i1, ..., i_{n-1}, k],

and a flip permutes the input axes.  Every axis carries a label naming the
base axis it came from (``out``, ``in1``, ...), with a trailing ``*`` when
the axis currently sits at odd dual level; comparisons align axes by label
so that two realizations are compared slot-order blind.

All entries are ``fractions.Fraction`` and all checks are exact.  An
absolute tolerance can be passed to ``equal`` for data imported from floats;
nothing in this package produces inexact values itself.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import semantics
from .expr import ADJOINT, ExprAst, flip_perm


class DimensionMismatch(Exception):
    """Vectors or maps with incompatible dimensions."""


class ShapeMismatch(Exception):
    """Two maps that cannot be compared (arity, labels, or dims differ)."""


@dataclass(frozen=True)
class Vector:
    coords: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def vector(values) -> Vector:
    return Vector(tuple(Fraction(v) for v in values))


def zero_vector(dim: int) -> Vector:
    return Vector((Fraction(0),) * dim)


def basis_vector(dim: int, k: int) -> Vector:
    return Vector(tuple(Fraction(1 if i == k else 0) for i in range(dim)))


def pair(functional: Vector, arg: Vector) -> Fraction:
    """Dot-product pairing of a functional against a vector."""
    if functional.dim != arg.dim:
        raise DimensionMismatch(
            f"pairing dims differ: {functional.dim} vs {arg.dim}"
        )
    return sum((a * b for a, b in zip(functional, arg)), Fraction(0))


def default_labels(arity: int) -> tuple[str, ...]:
    return ("out",) + tuple(f"in{k}" for k in range(1, arity + 1))


def toggle_dual(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def split_label(label: str) -> tuple[str, int]:
    """Base axis name and parity of a label."""
    if label.endswith("*"):
        return label[:-1], 1
    return label, 0


@dataclass(frozen=True)
class MultiMap:
    name: str
    arity: int
    input_dims: tuple[int, ...]
    codomain_dim: int
    axis_labels: tuple[str, ...]
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.arity < 1 or len(self.input_dims) != self.arity:
            raise ShapeMismatch(
                f"{self.name}: arity {self.arity} vs input dims {self.input_dims}"
            )
        if any(d < 1 for d in self.shape):
            raise ShapeMismatch(f"{self.name}: dims must be positive: {self.shape}")
        if len(self.axis_labels) != self.arity + 1:
            raise ShapeMismatch(f"{self.name}: need {self.arity + 1} axis labels")
        if len(set(self.axis_labels)) != len(self.axis_labels):
            raise ShapeMismatch(f"{self.name}: axis labels must be unique")
        expected = 1
        for d in self.shape:
            expected *= d
        if len(self.entries) != expected:
            raise ShapeMismatch(
                f"{self.name}: {len(self.entries)} entries for shape {self.shape}"
            )

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.codomain_dim,) + self.input_dims

    def entry(self, index: tuple[int, ...]) -> Fraction:
        flat = 0
        for size, i in zip(self.shape, index):
            if not 0 <= i < size:
                raise DimensionMismatch(f"index {index} out of range for {self.shape}")
            flat = flat * size + i
        return self.entries[flat]


def from_function(name, input_dims, codomain_dim, fn, labels=None) -> MultiMap:
    """Build a map entrywise; fn takes (cod_index, *input_indices)."""
    input_dims = tuple(input_dims)
    labels = tuple(labels) if labels is not None else default_labels(len(input_dims))
    shape = (codomain_dim,) + input_dims
    entries = tuple(Fraction(fn(*idx)) for idx in product(*(range(d) for d in shape)))
    return MultiMap(name, len(input_dims), input_dims, codomain_dim, labels, entries)


def transpose(m: MultiMap, new_axes: tuple[int, ...], name: str | None = None) -> MultiMap:
    """Reorder all axes (codomain included); new axis b draws old axis
    new_axes[b].  Axis 0 of the result is its codomain."""
    if sorted(new_axes) != list(range(m.arity + 1)):
        raise ShapeMismatch(f"bad axis order {new_axes} for arity {m.arity}")
    old_shape = m.shape
    new_shape = tuple(old_shape[a] for a in new_axes)
    slot_of_old = {a: b for b, a in enumerate(new_axes)}
    entries = []
    for idx in product(*(range(d) for d in new_shape)):
        old_idx = tuple(idx[slot_of_old[a]] for a in range(m.arity + 1))
        entries.append(m.entry(old_idx))
    return MultiMap(
        name if name is not None else m.name,
        m.arity,
        new_shape[1:],
        new_shape[0],
        tuple(m.axis_labels[a] for a in new_axes),
        tuple(entries),
    )


def adjoint(m: MultiMap) -> MultiMap:
    """Adjoint under the dot pairing: the last input axis becomes the
    codomain and the old codomain becomes the first input; both pick up a
    dual star."""
    n = m.arity
    moved = transpose(m, (n,) + tuple(range(n)), name=m.name + "*")
    labels = list(moved.axis_labels)
    labels[0] = toggle_dual(labels[0])
    labels[1] = toggle_dual(labels[1])
    return MultiMap(
        moved.name, moved.arity, moved.input_dims, moved.codomain_dim,
        tuple(labels), moved.entries,
    )


def flip(m: MultiMap, letter: str) -> MultiMap:
    perm = flip_perm(letter, m.arity)
    return transpose(m, (0,) + tuple(1 + k for k in perm), name=m.name + letter)


def evaluate(m: MultiMap, args) -> Vector:
    """Apply the map to one vector per input slot."""
    args = list(args)
    if len(args) != m.arity:
        raise DimensionMismatch(f"{m.name}: expected {m.arity} arguments")
    for d, v in zip(m.input_dims, args):
        if v.dim != d:
            raise DimensionMismatch(
                f"{m.name}: argument dims {[a.dim for a in args]} vs {m.input_dims}"
            )
    coords = []
    for l in range(m.codomain_dim):
        total = Fraction(0)
        for idx in product(*(range(d) for d in m.input_dims)):
            coeff = m.entry((l,) + idx)
            if coeff == 0:
                continue
            term = coeff
            for v, i in zip(args, idx):
                term *= v.coords[i]
            total += term
        coords.append(total)
    return Vector(tuple(coords))


def realize(expr: ExprAst, base: MultiMap) -> MultiMap:
    """Apply an expression's operations to a concrete base map.

    The final axis labels are cross-checked against an independently
    computed axis assignment; a disagreement means the two bookkeeping
    paths have drifted apart and is raised as a hard error.
    """
    out = base
    for op in expr.ops:
        out = adjoint(out) if op == ADJOINT else flip(out, op)
    asg = semantics.axis_semantics(expr, base.arity)
    base_by_axis = dict(
        zip(("out",) + tuple(f"in{k}" for k in range(1, base.arity + 1)), base.axis_labels)
    )

    def predicted(axis: str, level: int) -> str:
        root, parity = split_label(base_by_axis[axis])
        return root + "*" * ((parity + level) % 2)

    want = (predicted(asg.codomain_axis, asg.codomain_level),) + tuple(
        predicted(a, lv) for a, lv in zip(asg.slot_axes, asg.slot_levels)
    )
    if want != out.axis_labels:
        raise RuntimeError(
            f"axis bookkeeping drift for {expr.render()}: "
            f"tensor says {out.axis_labels}, assignment says {want}"
        )
    out_name = ExprAst(base.name, expr.ops).render()
    return MultiMap(
        out_name, out.arity, out.input_dims, out.codomain_dim,
        out.axis_labels, out.entries,
    )


def align_like(m: MultiMap, target_labels: tuple[str, ...]) -> MultiMap:
    if set(m.axis_labels) != set(target_labels):
        raise ShapeMismatch(
            f"cannot align labels {m.axis_labels} to {target_labels}"
        )
    new_axes = tuple(m.axis_labels.index(lab) for lab in target_labels)
    return transpose(m, new_axes)


@dataclass(frozen=True)
class IdentityReport:
    left_name: str
    right_name: str
    equal: bool
    first_mismatch: tuple | None = None

    def render(self) -> str:
        if self.equal:
            return f"PASS  {self.left_name} == {self.right_name}"
        idx, lv, rv = self.first_mismatch
        return (
            f"FAIL  {self.left_name} != {self.right_name} "
            f"at index {list(idx)}: {lv} vs {rv}"
        )


def equal(left: MultiMap, right: MultiMap, atol: Fraction | float | None = None) -> IdentityReport:
    """Entrywise comparison after aligning the right map's axes by label."""
    if left.arity != right.arity:
        raise ShapeMismatch(f"arity {left.arity} vs {right.arity}")
    aligned = align_like(right, left.axis_labels)
    if aligned.shape != left.shape:
        raise ShapeMismatch(
            f"dims {left.shape} vs {aligned.shape} after label alignment"
        )
    tol = Fraction(0) if atol is None else Fraction(atol)
    for pos, idx in enumerate(product(*(range(d) for d in left.shape))):
        a, b = left.entries[pos], aligned.entries[pos]
        if abs(a - b) > tol:
            return IdentityReport(
                left.name, right.name, False, (idx, str(a), str(b))
            )
    return IdentityReport(left.name, right.name, True)


def random_map(arity, input_dims, codomain_dim, seed, entry_bound=9, name="f") -> MultiMap:
    """Deterministic random integer-entried map for a given seed."""
    rng = random.Random(seed)
    return from_function(
        name, input_dims, codomain_dim,
        lambda *_: rng.randint(-entry_bound, entry_bound),
    )


def compose_into_slot(outer: MultiMap, inner: MultiMap, slot: int, name=None) -> MultiMap:
    """Feed ``inner``'s value into input ``slot`` (1-based) of ``outer``.

    The result is a fresh base map of arity outer.arity - 1 + inner.arity
    with default axis labels; inner's inputs take over the slot position.
    """
    if not 1 <= slot <= outer.arity:
        raise ShapeMismatch(f"slot {slot} out of range for arity {outer.arity}")
    if outer.input_dims[slot - 1] != inner.codomain_dim:
        raise DimensionMismatch(
            f"slot {slot} of {outer.name} has dim {outer.input_dims[slot - 1]}, "
            f"but {inner.name} lands in dim {inner.codomain_dim}"
        )
    pre = outer.input_dims[: slot - 1]
    post = outer.input_dims[slot:]
    dims = pre + inner.input_dims + post
    mid = inner.codomain_dim

    def fn(l, *idx):
        a = idx[: len(pre)]
        b = idx[len(pre): len(pre) + inner.arity]
        c = idx[len(pre) + inner.arity:]
        total = Fraction(0)
        for m_ in range(mid):
            lhs = outer.entry((l,) + a + (m_,) + c)
            if lhs == 0:
                continue
            total += lhs * inner.entry((m_,) + b)
        return total

    return from_function(
        name if name is not None else f"{outer.name}.{inner.name}.s{slot}",
        dims, outer.codomain_dim, fn,
    )


def build_factored(g: MultiMap, h: MultiMap, slot: int, name=None) -> MultiMap:
    """The map (x1, .., xn) -> g(x1, .., h(x_slot), .., xn) for linear h."""
    if h.arity != 1:
        raise ShapeMismatch(f"{h.name}: factoring map must be linear")
    return compose_into_slot(g, h, slot, name=name)


def compose_codomain(post: MultiMap, m: MultiMap, name=None) -> MultiMap:
    """Apply a linear map to the output of ``m``; keeps ``m``'s labels."""
    if post.arity != 1:
        raise ShapeMismatch(f"{post.name}: codomain composition needs a linear map")
    if post.input_dims[0] != m.codomain_dim:
        raise DimensionMismatch(
            f"{post.name} expects dim {post.input_dims[0]}, "
            f"{m.name} lands in dim {m.codomain_dim}"
        )

    def fn(j, *idx):
        total = Fraction(0)
        for l in range(m.codomain_dim):
            c = post.entry((j, l))
            if c == 0:
                continue
            total += c * m.entry((l,) + idx)
        return total

    return from_function(
        name if name is not None else f"{post.name}.{m.name}",
        m.input_dims, post.codomain_dim, fn, labels=m.axis_labels,
    )


def slice_slot(m: MultiMap, slot: int, vec: Vector, name=None) -> MultiMap:
    """Contract input ``slot`` (1-based) with a fixed vector."""
    if not 1 <= slot <= m.arity:
        raise ShapeMismatch(f"slot {slot} out of range for arity {m.arity}")
    if m.arity == 1:
        raise ShapeMismatch("cannot slice the only input away")
    if vec.dim != m.input_dims[slot - 1]:
        raise DimensionMismatch(
            f"slot {slot} of {m.name} has dim {m.input_dims[slot - 1]}, vector {vec.dim}"
        )
    dims = m.input_dims[: slot - 1] + m.input_dims[slot:]
    labels = (m.axis_labels[0],) + tuple(
        lab for k, lab in enumerate(m.axis_labels[1:]) if k != slot - 1
    )

    def fn(l, *idx):
        total = Fraction(0)
        for i, coeff in enumerate(vec):
            if coeff == 0:
                continue
            full = idx[: slot - 1] + (i,) + idx[slot - 1:]
            total += coeff * m.entry((l,) + full)
        return total

    return from_function(
        name if name is not None else f"{m.name}|s{slot}",
        dims, m.codomain_dim, fn, labels=labels,
    )


# ---------------------------------------------------------------------------
# serialization


def to_dict(m: MultiMap) -> dict:
    return {
        "name": m.name,
        "arity": m.arity,
        "input_dims": list(m.input_dims),
        "codomain_dim": m.codomain_dim,
        "axis_labels": list(m.axis_labels),
        "entries": [str(e) for e in m.entries],
    }


def _entry_from_json(v) -> Fraction:
    if isinstance(v, str) or isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)
    raise ShapeMismatch(f"bad entry {v!r} in map file")


def from_dict(d: dict) -> MultiMap:
    try:
        return MultiMap(
            name=d["name"],
            arity=int(d["arity"]),
            input_dims=tuple(int(x) for x in d["input_dims"]),
            codomain_dim=int(d["codomain_dim"]),
            axis_labels=tuple(d["axis_labels"]),
            entries=tuple(_entry_from_json(v) for v in d["entries"]),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ShapeMismatch(f"malformed map data: {exc}") from exc


def save_map(m: MultiMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_dict(m), fh, indent=1)
        fh.write("\n")


def load_map(path) -> MultiMap:
    with open(path, encoding="utf-8") as fh:
        return from_dict(json.load(fh))
