"""Which base axis each slot of an expression draws from, and in what order
iterated weak* limits are taken.

Every expression over a trilinear base map shuffles the same four axes
around: the three input axes ``in1 in2 in3`` and the codomain axis ``out``.
An adjoint rotates the codomain axis into slot 1 and the last slot out to the
codomain (both picking up a dual level); a flip permutes the slots.  The
*axis assignment* records where each axis ended up and at what dual level.

The shape  flip p, four adjoints, flip q  is special: it extends the base map
to the biduals, and the value is the iterated weak* limit

    lim over slot 1 of f^p   lim over slot 2   lim over slot 3

of the base map along bounded nets, outermost first.  Read in base-axis
names, that order is just p itself; the trailing flip only renames slots.
Two such extensions with the same limit order are equal outright; with
different limit orders they are equal exactly when the corresponding limit
interchange is permitted, and the six interchange conditions that come from
conjugating by a flip all reduce to close-to-regularity of a flipped base
map.  Everything else the symbolic layer refuses to decide.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .expr import (
    ADJOINT,
    ExprAst,
    FLIP_PERMS,
    IDENTITY_PERM,
    base_signature,
    compose_flips,
    flip_perm,
    invert_flip,
    parse,
    signature_of,
)

INPUT_AXES = ("in1", "in2", "in3")
CODOMAIN_AXIS = "out"

Perm = tuple[int, ...]
LimitOrder = tuple[str, str, str]


def order_of_perm(perm: Perm) -> LimitOrder:
    return tuple(INPUT_AXES[k] for k in perm)  # type: ignore[return-value]


def perm_of_order(order: LimitOrder) -> Perm:
    return tuple(INPUT_AXES.index(axis) for axis in order)


@dataclass(frozen=True)
class AxisAssignment:
    """Base axis and dual level for every slot and for the codomain."""

    slot_axes: tuple[str, ...]
    slot_levels: tuple[int, ...]
    codomain_axis: str
    codomain_level: int

    def role_key(self):
        """Collapsed comparison key: which axes are inputs at which parity,
        plus the codomain axis and parity.  Slot order is deliberately not
        part of the key; comparisons align slots by axis name."""
        inputs = frozenset(
            (axis, level % 2) for axis, level in zip(self.slot_axes, self.slot_levels)
        )
        return inputs, (self.codomain_axis, self.codomain_level % 2)

    def level_map(self) -> dict[str, int]:
        levels = dict(zip(self.slot_axes, self.slot_levels))
        levels[self.codomain_axis] = self.codomain_level
        return levels


def axis_semantics(expr: ExprAst, base_arity: int = 3) -> AxisAssignment:
    slots = [(axis, 0) for axis in INPUT_AXES[:base_arity]]
    cod = (CODOMAIN_AXIS, 0)
    for op in expr.ops:
        if op == ADJOINT:
            moved_in = (cod[0], cod[1] + 1)
            moved_out = (slots[-1][0], slots[-1][1] + 1)
            slots = [moved_in] + slots[:-1]
            cod = moved_out
        else:
            perm = flip_perm(op, len(slots))
            slots = [slots[k] for k in perm]
    return AxisAssignment(
        slot_axes=tuple(axis for axis, _ in slots),
        slot_levels=tuple(level for _, level in slots),
        codomain_axis=cod[0],
        codomain_level=cod[1],
    )


def limit_order(expr: ExprAst) -> LimitOrder | None:
    """Iterated limit order (outermost first) of a canonical extension.

    Canonical means the operations normalize to  flips, four adjoints,
    flips.  Leading flips compose into a single permutation p and the order
    is p read in base-axis names; trailing flips only rename slots and do
    not affect the order.  Returns None for every other shape.
    """
    lead: Perm = IDENTITY_PERM
    adjoints = 0
    state = "lead"
    for op in expr.ops:
        if op == ADJOINT:
            if state == "trail":
                return None
            state = "adj"
            adjoints += 1
        else:
            perm = flip_perm(op, 3)
            if state == "lead":
                lead = compose_flips(lead, perm)
            else:
                state = "trail"
    if adjoints != 4:
        return None
    return order_of_perm(lead)


# the six extension shapes, keyed by leading flip letter ("" = no flip);
# the trailing flip is the inverse, so the domain comes back in base order
EXTENSION_FLIPS = ("i", "j", "r", "", "t", "s")


def extension_expr(lead: str, base: str = "f") -> ExprAst:
    if lead == "":
        return ExprAst(base, tuple(ADJOINT * 4))
    inv = PERM_LETTERS[invert_flip(FLIP_PERMS[lead])]
    return ExprAst(base, (lead,) + tuple(ADJOINT * 4) + (inv,))


PERM_LETTERS = {perm: letter for letter, perm in FLIP_PERMS.items()}
PERM_LETTERS[IDENTITY_PERM] = ""


def natural_extensions(base: str = "f") -> list[tuple[ExprAst, LimitOrder]]:
    """The six bidual extensions with their limit orders."""
    out = []
    for lead in EXTENSION_FLIPS:
        expr = extension_expr(lead, base)
        order = limit_order(expr)
        assert order is not None
        out.append((expr, order))
    return out


def _normalized_ops(expr: ExprAst) -> tuple:
    """Ops with adjacent flips composed and identity flips dropped."""
    out: list = []
    pending: Perm | None = None
    for op in expr.ops:
        if op == ADJOINT:
            if pending is not None and pending != IDENTITY_PERM:
                out.append(pending)
            pending = None
            out.append(ADJOINT)
        else:
            perm = flip_perm(op, 3)
            pending = perm if pending is None else compose_flips(pending, perm)
    if pending is not None and pending != IDENTITY_PERM:
        out.append(pending)
    return tuple(out)


# interchange conditions that collapse to close-to-regularity of a flipped
# base map; keyed by the unordered pair of leading-flip permutations
_CTR_TABLE: dict[frozenset, str] = {
    frozenset({FLIP_PERMS["t"], FLIP_PERMS["s"]}): "",
    frozenset({FLIP_PERMS["i"], FLIP_PERMS["j"]}): "r",
    frozenset({FLIP_PERMS["j"], FLIP_PERMS["r"]}): "i",
    frozenset({FLIP_PERMS["i"], FLIP_PERMS["r"]}): "j",
    frozenset({FLIP_PERMS["s"], IDENTITY_PERM}): "t",
    frozenset({FLIP_PERMS["t"], IDENTITY_PERM}): "s",
}


def condition_name(order_a: LimitOrder, order_b: LimitOrder, base: str = "f") -> str:
    key = frozenset({perm_of_order(order_a), perm_of_order(order_b)})
    letter = _CTR_TABLE.get(key)
    if letter is None:
        lo, hi = sorted((order_a, order_b))
        return f"limit-interchange(({','.join(lo)}),({','.join(hi)}))"
    if letter == "":
        return f"close-to-regular({base})"
    return f"close-to-regular({base}^{letter})"


UNCOND_EQUAL = "UNCOND-EQUAL"
EQUAL_IFF = "EQUAL-IFF"
DISTINCT = "DISTINCT"
NOT_COMPARABLE = "NOT-COMPARABLE"


@dataclass(frozen=True)
class Verdict:
    kind: str
    condition: str | None = None
    witness: dict = field(default_factory=dict)

    def render(self) -> str:
        if self.kind == EQUAL_IFF:
            return f"{EQUAL_IFF} {self.condition}"
        return self.kind


def classify(left: ExprAst, right: ExprAst, base_arity: int = 3) -> Verdict:
    """Decide symbolically how two expressions over one base map relate.

    Comparisons are slot-order blind: maps are matched up by which base axis
    each slot draws from, so a trailing flip never separates two
    expressions.  Dual levels are collapsed mod 2 when checking that the two
    signatures live on the same spaces, but expressions whose uncollapsed
    levels disagree are refused rather than conflated.
    """
    sig_left = signature_of(left, base_signature(base_arity))
    sig_right = signature_of(right, base_signature(base_arity))
    if left.base != right.base:
        return Verdict(
            NOT_COMPARABLE,
            witness={"reason": f"different base maps {left.base!r} and {right.base!r}"},
        )
    asg_left = axis_semantics(left, base_arity)
    asg_right = axis_semantics(right, base_arity)
    if asg_left.role_key() != asg_right.role_key():
        return Verdict(
            DISTINCT,
            witness={
                "left_signature": sig_left.collapsed().render(),
                "right_signature": sig_right.collapsed().render(),
            },
        )
    if _normalized_ops(left) == _normalized_ops(right):
        return Verdict(UNCOND_EQUAL, witness={"reason": "identical normal forms"})
    levels_left = asg_left.level_map()
    levels_right = asg_right.level_map()
    if levels_left != levels_right:
        return Verdict(
            NOT_COMPARABLE,
            witness={
                "reason": "dual levels disagree before collapsing",
                "left_levels": levels_left,
                "right_levels": levels_right,
            },
        )
    if left.adjoint_count() == 0 and right.adjoint_count() == 0:
        return Verdict(UNCOND_EQUAL, witness={"reason": "flips only; slots align by axis"})
    order_left = limit_order(left)
    order_right = limit_order(right)
    if order_left is not None and order_right is not None:
        if order_left == order_right:
            return Verdict(
                UNCOND_EQUAL,
                witness={"limit_order": list(order_left)},
            )
        return Verdict(
            EQUAL_IFF,
            condition=condition_name(order_left, order_right, left.base),
            witness={
                "left_order": list(order_left),
                "right_order": list(order_right),
            },
        )
    return Verdict(
        NOT_COMPARABLE,
        witness={"reason": "no limit order on at least one side"},
    )


def classify_text(left: str, right: str, base_arity: int = 3) -> Verdict:
    return classify(parse(left), parse(right), base_arity)


# ---------------------------------------------------------------------------
# interchange-condition lattice


def equality_classes(pairs) -> dict[LimitOrder, LimitOrder]:
    """Union-find closure of asserted order equalities over the six orders."""
    parent: dict[LimitOrder, LimitOrder] = {
        order_of_perm(flip_perm(letter, 3) if letter else IDENTITY_PERM): order_of_perm(
            flip_perm(letter, 3) if letter else IDENTITY_PERM
        )
        for letter in EXTENSION_FLIPS
    }

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return {order: find(order) for order in parent}


def entails(premises, conclusion: tuple[LimitOrder, LimitOrder]) -> bool:
    """Do the asserted interchanges force the concluded one?"""
    classes = equality_classes(premises)
    a, b = conclusion
    return classes[a] == classes[b]


def complete_regularity_premises() -> list[tuple[LimitOrder, LimitOrder]]:
    """Pairs asserting that all six extensions coincide."""
    base = order_of_perm(IDENTITY_PERM)
    return [
        (base, order_of_perm(flip_perm(letter, 3)))
        for letter in EXTENSION_FLIPS
        if letter
    ]


# ---------------------------------------------------------------------------
# flip-conjugation correspondences

# conjugating close-to-regularity by a flip p turns the defining pair of
# extensions of f^p into a pair of extensions of f itself
CONJUGATION_ITEMS = (
    ("r", ("i", "j")),
    ("i", ("j", "r")),
    ("j", ("i", "r")),
    ("t", ("s", "")),
    ("s", ("t", "")),
)


@dataclass(frozen=True)
class ConjugationRow:
    flip: str
    pulled_back: tuple[str, str]
    stated_pair: tuple[str, str]
    condition: str
    ok: bool


@dataclass(frozen=True)
class ConjugationReport:
    rows: tuple[ConjugationRow, ...]
    all_ok: bool


def flip_conjugation_checks(base: str = "f") -> ConjugationReport:
    """Check that the defining pair for close-to-regularity of each flipped
    base map pulls back to the expected pair of extensions, and that the
    classifier names the condition accordingly."""
    rows = []
    for letter, (lead_a, lead_b) in CONJUGATION_ITEMS:
        pulled = (
            ExprAst(base, (letter, "t", *ADJOINT * 4, "s")),
            ExprAst(base, (letter, "s", *ADJOINT * 4, "t")),
        )
        pulled_orders = {limit_order(e) for e in pulled}
        stated = (extension_expr(lead_a, base), extension_expr(lead_b, base))
        stated_orders = {limit_order(e) for e in stated}
        verdict = classify(stated[0], stated[1])
        expected = f"close-to-regular({base}^{letter})"
        stated_by_order = {limit_order(e): e for e in stated}
        ok = (
            pulled_orders == stated_orders
            and verdict.kind == EQUAL_IFF
            and verdict.condition == expected
            and all(
                classify(e, stated_by_order[limit_order(e)]).kind == UNCOND_EQUAL
                for e in pulled
            )
        )
        rows.append(
            ConjugationRow(
                flip=letter,
                pulled_back=(pulled[0].render(), pulled[1].render()),
                stated_pair=(stated[0].render(), stated[1].render()),
                condition=verdict.condition or verdict.kind,
                ok=ok,
            )
        )
    return ConjugationReport(tuple(rows), all(r.ok for r in rows))
