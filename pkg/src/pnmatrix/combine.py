"""Combining logics: product-based combination and context-partition decision.

The strict product of two matrices characterizes the join of their
multiple-conclusion logics.  For single-conclusion logics the same holds
only when both inputs are saturated, so the single-mode combinators either
demand saturation evidence or fall back to finite-power approximants.  The
context-partition decision procedure answers queries about the combined
logic through queries about the parts alone, two-sorting each formula by
treating maximal foreign subformulas as fresh variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .analysis import RefutationBounds, RefutationResult, refute_saturation
from .engine import decide_multiple, decide_single
from .matrix_core import PNMatrix, power, strict_product
from .syntax import (
    Formula,
    MonolithMap,
    Signature,
    Substitution,
    apply_substitution,
    formula_key,
    print_formula,
    skeleton,
    subformula_closure,
    variables,
)

#: partition enumeration is exponential in the context size
CTX_CAP = 12
INSTANCE_CAP = 2000


@dataclass(frozen=True)
class CombinedLogic:
    left: PNMatrix
    right: PNMatrix
    product: PNMatrix
    mode: str  # "multiple" | "single"
    status: str  # "exact" | "conditional-on-saturation" | "finite-power-approximation"
    notes: tuple[str, ...] = ()


class SaturationRefused(ValueError):
    """Raised when a single-mode combination input is provably not saturated."""

    def __init__(self, side: str, result: RefutationResult):
        self.side = side
        self.result = result
        super().__init__(
            f"{side} input is not saturated (witness: {result.witness.pretty()}); "
            "its single-conclusion logic is not captured by the product"
        )


def combine_multiple(m1: PNMatrix, m2: PNMatrix) -> CombinedLogic:
    """The multiple-conclusion join; the product is exact unconditionally."""
    return CombinedLogic(
        left=m1, right=m2, product=strict_product(m1, m2), mode="multiple", status="exact"
    )


def combine_single_saturated(
    m1: PNMatrix,
    m2: PNMatrix,
    bounds: RefutationBounds = RefutationBounds(),
) -> CombinedLogic:
    """Single-conclusion join via the product, guarded by saturation checks.

    Refuses when either input is provably unsaturated within the refuter's
    bounds.  The result is exact when both inputs are flagged as known
    saturated in their metadata, and conditional on saturation otherwise.
    """
    for side, m in (("left", m1), ("right", m2)):
        if not m.meta.get("known_saturated"):
            result = refute_saturation(m, bounds)
            if result.refuted:
                raise SaturationRefused(side, result)
    both_known = bool(m1.meta.get("known_saturated")) and bool(
        m2.meta.get("known_saturated")
    )
    status = "exact" if both_known else "conditional-on-saturation"
    notes = ()
    if not both_known:
        notes = (
            "saturation of the inputs was not refuted within bounds but is unproven",
        )
    return CombinedLogic(
        left=m1,
        right=m2,
        product=strict_product(m1, m2),
        mode="single",
        status=status,
        notes=notes,
    )


def combine_single_power(m1: PNMatrix, m2: PNMatrix, k: int) -> CombinedLogic:
    """Single-conclusion join approximated through finite k-th powers.

    Powers only approach saturation in the limit, so the result is labeled an
    approximation: it may still miss consequences of the true join, but every
    consequence it validates for the parts' common single-conclusion fragment
    is reliable once the powered inputs are saturated.
    """
    p1, p2 = power(m1, k), power(m2, k)
    return CombinedLogic(
        left=m1,
        right=m2,
        product=strict_product(p1, p2),
        mode="single",
        status="finite-power-approximation",
        notes=(f"inputs raised to power {k} before taking the product",),
    )


# ---------------------------------------------------------------------------
# context-partition decision
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CombinedDecision:
    answer: str  # "yes" | "no"
    certified: bool
    mode: str
    context: tuple[Formula, ...]
    partitions_checked: int
    failing_partition: Optional[tuple[tuple[Formula, ...], tuple[Formula, ...]]] = None
    note: str = ""


def _skeletonize(formulas: Iterable[Formula], sig: Signature, mm: MonolithMap):
    return [skeleton(f, sig, mm)[0] for f in formulas]


def _part_holds(m: PNMatrix, sig: Signature, left, right, mode: str) -> bool:
    mm = MonolithMap()
    sleft = _skeletonize(left, sig, mm)
    sright = _skeletonize(right, sig, mm)
    if mode == "multiple":
        return decide_multiple(m, sleft, sright).answer == "yes"
    return any(decide_single(m, sleft, b).answer == "yes" for b in sright)


def decide_combined_ctx(
    m1: PNMatrix,
    m2: PNMatrix,
    gamma: Iterable[Formula],
    delta: Iterable[Formula],
    mode: str = "multiple",
    ctx_extra: Iterable[Formula] = (),
) -> CombinedDecision:
    """Decide a query about the combined logic using only the two parts.

    The context is the subformula closure of the query (plus any extras);
    for every two-sided partition of it, the query padded with the partition
    must hold over one of the parts, with foreign subformulas abstracted to
    fresh variables.  Partitions that merely repeat a premise or conclusion
    on the opposite side hold trivially and are skipped.  The answer is
    certified exact when the strict product of the parts is total.
    """
    if mode not in ("single", "multiple"):
        raise ValueError(f"bad mode {mode!r}")
    gamma = tuple(dict.fromkeys(gamma))
    delta = tuple(dict.fromkeys(delta))
    if mode == "single" and len(delta) != 1:
        raise ValueError("single mode takes exactly one conclusion")
    ctx = tuple(subformula_closure(gamma + delta + tuple(ctx_extra)))
    if len(ctx) > CTX_CAP:
        raise ValueError(
            f"context has {len(ctx)} formulas, exceeding the cap of {CTX_CAP}"
        )
    product = strict_product(m1, m2)
    certified = product.is_total()
    overlap = set(gamma) & set(delta)
    if overlap:
        return CombinedDecision(
            answer="yes",
            certified=certified,
            mode=mode,
            context=ctx,
            partitions_checked=0,
            note="premises and conclusions overlap",
        )
    # partitions placing a premise on the right or a conclusion on the left
    # hold by overlap, so only the remaining context formulas vary
    rest = [f for f in ctx if f not in gamma and f not in delta]
    checked = 0
    for size in range(len(rest) + 1):
        for low in itertools.combinations(rest, size):
            low_set = set(low)
            high = tuple(f for f in rest if f not in low_set)
            checked += 1
            left = gamma + low
            right = high + delta
            if _part_holds(m1, m1.sig, left, right, mode):
                continue
            if _part_holds(m2, m2.sig, left, right, mode):
                continue
            return CombinedDecision(
                answer="no",
                certified=certified,
                mode=mode,
                context=ctx,
                partitions_checked=checked,
                failing_partition=(tuple(gamma) + low, high + tuple(delta)),
            )
    return CombinedDecision(
        answer="yes",
        certified=certified,
        mode=mode,
        context=ctx,
        partitions_checked=checked,
    )


# ---------------------------------------------------------------------------
# axiom strengthening
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomSet:
    name: str
    axioms: tuple[Formula, ...]


@dataclass(frozen=True)
class AxiomDecision:
    answer: str  # "yes" | "unknown"
    depth_used: int
    instances_used: int
    note: str = ""


def axiom_instances(
    axioms: Iterable[Formula], universe: Sequence[Formula], cap: int = INSTANCE_CAP
) -> list[Formula]:
    """Instances of the axioms under all substitutions into the universe.

    Deterministic order: axioms in the given order, substitution targets in
    the universe's order.  Raises ValueError past the instance cap.
    """
    universe = list(universe)
    out: list[Formula] = []
    seen: set[Formula] = set()
    for ax in axioms:
        vs = sorted(variables(ax))
        for targets in itertools.product(universe, repeat=len(vs)):
            inst = apply_substitution(ax, Substitution.of(dict(zip(vs, targets))))
            if inst not in seen:
                seen.add(inst)
                out.append(inst)
                if len(out) > cap:
                    raise ValueError(f"more than {cap} axiom instances")
    return out


def decide_with_axioms(
    m: PNMatrix,
    axioms: AxiomSet,
    gamma: Iterable[Formula],
    a: Formula,
    max_depth: int = 2,
    instance_cap: int = INSTANCE_CAP,
) -> AxiomDecision:
    """Semi-decision of consequence strengthened by axiom schemata.

    The axioms are instantiated over a growing universe of subformulas
    (starting from the query's own, then closing over the instances found);
    the query holds if at some depth the premises plus the instances entail
    the conclusion over the matrix.  A negative search outcome only yields
    "unknown": deeper instantiation might still succeed.
    """
    gamma = tuple(dict.fromkeys(gamma))
    universe = subformula_closure(gamma + (a,))
    instances: list[Formula] = []
    for depth in range(1, max_depth + 1):
        try:
            instances = axiom_instances(axioms.axioms, universe, cap=instance_cap)
        except ValueError as e:
            return AxiomDecision(
                answer="unknown", depth_used=depth, instances_used=0, note=str(e)
            )
        if decide_single(m, gamma + tuple(instances), a).answer == "yes":
            return AxiomDecision(
                answer="yes", depth_used=depth, instances_used=len(instances)
            )
        universe = subformula_closure(list(universe) + instances)
    return AxiomDecision(
        answer="unknown",
        depth_used=max_depth,
        instances_used=len(instances),
        note="no derivation found at this instantiation depth",
    )
