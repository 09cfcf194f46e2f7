"""Analysis tools: value separators, saturation refutation, split advice.

A separator for two values is a one-variable formula whose possible-value
sets at those values are both non-empty and exactly one of which lies inside
the designated set; a matrix is monadic (over a subsignature) when every pair
of distinct usable values has one.  The saturation refuter searches, within
explicit bounds, for a finitely generated theory witnessing that a matrix
fails to be saturated.  Split advice combines the two with a divergence
battery comparing a matrix against the strict product of two of its reducts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .engine import Verdict, decide_multiple, decide_single, possible_values
from .matrix_core import PNMatrix, reduct, strict_product, viable_components
from .syntax import (
    App,
    Formula,
    Signature,
    Var,
    formula_key,
    formula_size,
    print_formula,
)


# ---------------------------------------------------------------------------
# one-variable formula enumeration
# ---------------------------------------------------------------------------

def one_variable_formulas(
    sig: Signature, var: str = "p", max_depth: int = 2, cap: int = 5000
) -> list[Formula]:
    """All formulas over `sig` in the single variable `var` up to `max_depth`,
    in increasing subformula order, truncated at `cap`."""
    return formula_pool(sig, (var,), max_depth, cap)


def formula_pool(
    sig: Signature, variables: Sequence[str], max_depth: int, cap: int
) -> list[Formula]:
    """Formulas over the given variables up to the given depth, size-ordered."""
    base: list[Formula] = [Var(v) for v in variables]
    base += [App(c, ()) for c, k in sig if k == 0]
    frontier = set(base)
    everything = set(base)
    for _ in range(max_depth):
        new: set[Formula] = set()
        pool = list(everything)
        for c, k in sig:
            if k == 0:
                continue
            for args in itertools.product(pool, repeat=k):
                if any(a in frontier for a in args):
                    f = App(c, tuple(args))
                    if f not in everything:
                        new.add(f)
        if not new:
            break
        everything |= new
        frontier = new
    return sorted(everything, key=formula_key)[:cap]


# ---------------------------------------------------------------------------
# separators and monadicity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparatorBounds:
    max_depth: int = 3
    max_candidates: int = 5000


def _candidate_vectors(m: PNMatrix, var: str, bounds: SeparatorBounds):
    """One-variable formulas with their possible-value vectors, level-wise.

    Formulas whose vector duplicates an earlier one still appear as
    candidates but are never used to build deeper formulas, which keeps the
    level growth bounded by the number of distinct vectors.
    """
    out: list[tuple[Formula, tuple[frozenset[str], ...]]] = []
    seen: set[tuple[frozenset[str], ...]] = set()
    generators: list[Formula] = []
    level: list[Formula] = sorted(
        [Var(var)] + [App(c, ()) for c, k in m.sig if k == 0], key=formula_key
    )
    depth = 0
    while level and len(out) < bounds.max_candidates:
        fresh: list[Formula] = []
        for f in level:
            if len(out) >= bounds.max_candidates:
                break
            vec = tuple(possible_values(m, f, x) for x in m.values)
            out.append((f, vec))
            if vec not in seen:
                seen.add(vec)
                fresh.append(f)
        if depth >= bounds.max_depth or not fresh:
            break
        fresh_set = set(fresh)
        generators += fresh
        nxt: set[Formula] = set()
        for c, k in m.sig:
            if k == 0:
                continue
            for args in itertools.product(generators, repeat=k):
                if any(a in fresh_set for a in args):
                    nxt.add(App(c, tuple(args)))
        level = sorted(nxt, key=formula_key)
        depth += 1
    return out


def _separates(vec_x, vec_y, designated) -> bool:
    return bool(vec_x) and bool(vec_y) and (vec_x <= designated) != (vec_y <= designated)


def find_separator(
    m: PNMatrix,
    x: str,
    y: str,
    bounds: SeparatorBounds = SeparatorBounds(),
    var: str = "p",
) -> Optional[Formula]:
    """First one-variable formula (in enumeration order) separating x from y."""
    ix, iy = m.values.index(x), m.values.index(y)
    for f, vec in _candidate_vectors(m, var, bounds):
        if _separates(vec[ix], vec[iy], m.designated):
            return f
    return None


@dataclass(frozen=True)
class SeparatorTable:
    pairs: tuple[tuple[tuple[str, str], Optional[Formula]], ...]
    monadic: bool
    usable: frozenset[str]
    spurious: frozenset[str]
    bounds: SeparatorBounds

    def separator(self, x: str, y: str) -> Optional[Formula]:
        for (a, b), f in self.pairs:
            if {a, b} == {x, y}:
                return f
        raise KeyError((x, y))

    def separators_used(self) -> frozenset[Formula]:
        return frozenset(f for _, f in self.pairs if f is not None)


def monadicity_report(
    m: PNMatrix,
    sub_sig: Optional[Signature] = None,
    bounds: SeparatorBounds = SeparatorBounds(),
    var: str = "p",
) -> SeparatorTable:
    """Separator search for every pair of distinct usable values.

    With sub_sig, separators are drawn from that subsignature only (the
    search runs over the corresponding reduct, values unchanged).
    """
    mr = reduct(m, sub_sig) if sub_sig is not None else m
    report = viable_components(mr)
    usable = [v for v in mr.values if v in report.usable]
    candidates = _candidate_vectors(mr, var, bounds)
    index = {v: i for i, v in enumerate(mr.values)}
    pairs = []
    for x, y in itertools.combinations(usable, 2):
        found = None
        for f, vec in candidates:
            if _separates(vec[index[x]], vec[index[y]], mr.designated):
                found = f
                break
        pairs.append(((x, y), found))
    return SeparatorTable(
        pairs=tuple(pairs),
        monadic=all(f is not None for _, f in pairs),
        usable=frozenset(usable),
        spurious=report.spurious,
        bounds=bounds,
    )


# ---------------------------------------------------------------------------
# saturation refutation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RefutationBounds:
    max_vars: int = 3
    max_depth: int = 2
    max_pool: int = 24
    max_premises: int = 2
    max_phi: int = 3


@dataclass(frozen=True)
class SaturationWitness:
    """A theory base and a finite set it entails collectively but not singly.

    decide_multiple(m, gamma0, phi) is yes while decide_single(m, gamma0, a)
    is no for every a in phi; no single valuation can then realize the theory
    generated by gamma0, so the matrix is not saturated.
    """

    gamma0: tuple[Formula, ...]
    phi: tuple[Formula, ...]

    def pretty(self) -> str:
        left = ", ".join(print_formula(f) for f in self.gamma0) or "-"
        right = ", ".join(print_formula(f) for f in self.phi)
        return f"{left} |- {right}"


@dataclass(frozen=True)
class RefutationResult:
    refuted: bool
    witness: Optional[SaturationWitness]
    bounds: RefutationBounds
    theories_checked: int


def check_saturation_witness(m: PNMatrix, w: SaturationWitness) -> list[str]:
    """Independent re-verification of a witness; empty list means valid."""
    problems = []
    if not w.phi:
        problems.append("witness needs a non-empty right-hand side")
    if decide_multiple(m, w.gamma0, w.phi).answer != "yes":
        problems.append("gamma0 does not entail phi collectively")
    for a in w.phi:
        if decide_single(m, w.gamma0, a).answer != "no":
            problems.append(f"{print_formula(a)} already follows singly from gamma0")
    return problems


def refute_saturation(
    m: PNMatrix, bounds: RefutationBounds = RefutationBounds()
) -> RefutationResult:
    """Bounded search for a saturation counterexample.

    Candidate theory bases are drawn from a size-ordered pool of formulas;
    for each base, the pool formulas it does not entail singly are collected,
    and a base is explored further only if it entails that collection as a
    whole (otherwise no subset can witness).  A negative result only means
    no witness exists within these bounds.
    """
    variables = ("p", "q", "r", "s", "t")[: bounds.max_vars]
    pool = formula_pool(m.sig, variables, bounds.max_depth, cap=10 ** 6)[: bounds.max_pool]
    bases: list[tuple[Formula, ...]] = []
    for size in range(bounds.max_premises + 1):
        bases.extend(itertools.combinations(pool, size))
    bases.sort(
        key=lambda g: (
            sum(formula_size(f) for f in g),
            tuple(sorted(print_formula(f) for f in g)),
        )
    )
    checked = 0
    for gamma0 in bases:
        checked += 1
        g = list(gamma0)
        n = [
            a
            for a in pool
            if a not in gamma0 and decide_single(m, g, a).answer == "no"
        ]
        if not n or decide_multiple(m, g, n).answer != "yes":
            continue
        for size in range(1, bounds.max_phi + 1):
            for phi in itertools.combinations(n, size):
                if decide_multiple(m, g, phi).answer == "yes":
                    witness = SaturationWitness(gamma0=gamma0, phi=phi)
                    return RefutationResult(
                        refuted=True,
                        witness=witness,
                        bounds=bounds,
                        theories_checked=checked,
                    )
    return RefutationResult(
        refuted=False, witness=None, bounds=bounds, theories_checked=checked
    )


# ---------------------------------------------------------------------------
# split advice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Divergence:
    premise: Formula
    conclusion: Formula
    matrix_verdict: Verdict
    product_verdict: Verdict

    def pretty(self) -> str:
        return (
            f"{print_formula(self.premise)} |- {print_formula(self.conclusion)}: "
            f"matrix says {self.matrix_verdict.answer}, "
            f"split product says {self.product_verdict.answer}"
        )


@dataclass(frozen=True)
class SplitVerdict:
    verdict: str  # "split-safe-multiple" | "split-safe-single-conditional" | "unsafe-evidence" | "inconclusive"
    divergences: tuple[Divergence, ...]
    separators: SeparatorTable
    saturation: RefutationResult
    samples_run: int


def split_advice(
    m: PNMatrix,
    sig1: Signature,
    sig2: Signature,
    samples: int = 200,
    battery_depth: int = 2,
    sep_bounds: SeparatorBounds = SeparatorBounds(),
    ref_bounds: RefutationBounds = RefutationBounds(),
) -> SplitVerdict:
    """Assess splitting a matrix into its sig1/sig2 reducts.

    Runs a deterministic battery of one-variable single-premise queries
    against the strict product of the two reducts (the product can only be
    weaker, so any divergence is hard evidence the split loses consequences),
    then a separator search over the shared subsignature and a saturation
    refutation on the matrix itself to pick a verdict.
    """
    union = sig1.union(sig2)
    if not union.is_subsignature_of(m.sig):
        raise ValueError("split signatures must cover a subsignature of the matrix")
    shared = sig1.intersection(sig2)
    product = strict_product(reduct(m, sig1), reduct(m, sig2))
    forms = one_variable_formulas(union, max_depth=battery_depth)
    pairs = sorted(
        ((a, b) for a in forms for b in forms if a != b),
        key=lambda ab: (
            formula_size(ab[0]) + formula_size(ab[1]),
            print_formula(ab[0]),
            print_formula(ab[1]),
        ),
    )[:samples]
    divergences = []
    for a, b in pairs:
        vm = decide_multiple(m, [a], [b])
        vp = decide_multiple(product, [a], [b])
        if vm.answer != vp.answer:
            divergences.append(Divergence(a, b, vm, vp))
    separators = monadicity_report(m, shared, bounds=sep_bounds)
    saturation = refute_saturation(m, bounds=ref_bounds)
    if divergences:
        verdict = "unsafe-evidence"
    elif separators.monadic:
        verdict = (
            "split-safe-multiple"
            if saturation.refuted
            else "split-safe-single-conditional"
        )
    else:
        verdict = "inconclusive"
    return SplitVerdict(
        verdict=verdict,
        divergences=tuple(divergences),
        separators=separators,
        saturation=saturation,
        samples_run=len(pairs),
    )
