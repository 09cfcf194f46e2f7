"""Finite truth-table structures with partial, non-deterministic entries.

A PNMatrix carries a finite ordered value set, a designated subset and, for
each connective, a total table from value tuples to (possibly empty) sets of
values.  This module provides the matrix algebra: classification, reducts,
fully non-deterministic extensions, strict products, sums, finite powers,
viability analysis (spurious-value detection), pruning, and strict
homomorphism checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .syntax import Signature

#: caps guarding the exponential constructions
VIABILITY_CAP = 16
VALUE_CAP = 4096

Table = Mapping[tuple[str, ...], frozenset[str]]


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class PNMatrix:
    sig: Signature
    values: tuple[str, ...]
    designated: frozenset[str]
    tables: Mapping[str, Table]
    #: free-form metadata (fixture provenance, saturation flags); not part of identity
    meta: Mapping[str, object] = field(default_factory=dict, compare=False, hash=False)

    def entry(self, conn: str, args: tuple[str, ...]) -> frozenset[str]:
        return self.tables[conn][args]

    @property
    def undesignated(self) -> frozenset[str]:
        return frozenset(self.values) - self.designated

    def is_total(self) -> bool:
        return all(e for t in self.tables.values() for e in t.values())

    def is_deterministic(self) -> bool:
        return all(len(e) <= 1 for t in self.tables.values() for e in t.values())


def make_matrix(
    sig: Signature,
    values: Sequence[str],
    designated: Iterable[str],
    tables: Mapping[str, Mapping[tuple[str, ...], Iterable[str]]],
    meta: Optional[Mapping[str, object]] = None,
) -> PNMatrix:
    """Normalize and validate a PNMatrix; raise MatrixError on any defect."""
    m = PNMatrix(
        sig=sig,
        values=tuple(values),
        designated=frozenset(designated),
        tables={c: {k: frozenset(v) for k, v in t.items()} for c, t in tables.items()},
        meta=dict(meta or {}),
    )
    errors = validate(m)
    if errors:
        raise MatrixError("; ".join(errors))
    return m


def validate(m: PNMatrix) -> list[str]:
    """Check all structural invariants; return an itemized list of failures."""
    errors: list[str] = []
    vals = set(m.values)
    if len(m.values) != len(vals):
        errors.append("duplicate value names")
    if not m.designated <= vals:
        errors.append(f"designated values {sorted(m.designated - vals)} not in value set")
    declared = set(m.sig.names())
    if set(m.tables) != declared:
        missing = declared - set(m.tables)
        extra = set(m.tables) - declared
        if missing:
            errors.append(f"missing tables for {sorted(missing)}")
        if extra:
            errors.append(f"tables for undeclared connectives {sorted(extra)}")
    for name, arity in m.sig:
        table = m.tables.get(name)
        if table is None:
            continue
        expected = set(itertools.product(m.values, repeat=arity))
        got = set(table)
        for tup in sorted(expected - got):
            errors.append(f"missing entry {name}{tup}")
        for tup in sorted(got - expected):
            errors.append(f"unexpected entry {name}{tup}")
        for tup, out in table.items():
            if not out <= vals:
                errors.append(f"entry {name}{tup} outputs unknown values {sorted(out - vals)}")
    return errors


def classify(m: PNMatrix) -> str:
    """One of "matrix", "Nmatrix", "Pmatrix", "PNmatrix"."""
    total, det = m.is_total(), m.is_deterministic()
    if total and det:
        return "matrix"
    if total:
        return "Nmatrix"
    if det:
        return "Pmatrix"
    return "PNmatrix"


# ---------------------------------------------------------------------------
# Reduct / extension / renaming
# ---------------------------------------------------------------------------

def reduct(m: PNMatrix, sub_sig: Signature) -> PNMatrix:
    if not sub_sig.is_subsignature_of(m.sig):
        raise MatrixError("reduct target is not a subsignature")
    return PNMatrix(
        sig=sub_sig,
        values=m.values,
        designated=m.designated,
        tables={c: m.tables[c] for c in sub_sig.names()},
        meta={},
    )


def extend(m: PNMatrix, big_sig: Signature) -> PNMatrix:
    """Interpret the new connectives of big_sig fully non-deterministically."""
    if not m.sig.is_subsignature_of(big_sig):
        raise MatrixError("extension target does not contain the matrix signature")
    full = frozenset(m.values)
    tables = dict(m.tables)
    for name, arity in big_sig:
        if name not in m.sig:
            tables[name] = {
                tup: full for tup in itertools.product(m.values, repeat=arity)
            }
    return PNMatrix(sig=big_sig, values=m.values, designated=m.designated, tables=tables)


def rename_connectives(m: PNMatrix, renaming: Mapping[str, str]) -> PNMatrix:
    """Rename connectives (used e.g. to make two copies of a signature disjoint)."""
    sig = Signature.of({renaming.get(n, n): k for n, k in m.sig})
    tables = {renaming.get(c, c): t for c, t in m.tables.items()}
    return PNMatrix(sig=sig, values=m.values, designated=m.designated, tables=tables, meta=dict(m.meta))


def restrict(m: PNMatrix, keep: Iterable[str]) -> PNMatrix:
    """Restrict the carrier to a subset of values, intersecting all entries."""
    keep_set = frozenset(keep)
    values = tuple(v for v in m.values if v in keep_set)
    tables = {
        c: {
            tup: out & keep_set
            for tup, out in t.items()
            if all(x in keep_set for x in tup)
        }
        for c, t in m.tables.items()
    }
    return PNMatrix(
        sig=m.sig,
        values=values,
        designated=m.designated & keep_set,
        tables=tables,
    )


# ---------------------------------------------------------------------------
# Combinations of matrices
# ---------------------------------------------------------------------------

def pair_name(x: str, y: str) -> str:
    return f"{x}|{y}"


def strict_product(m1: PNMatrix, m2: PNMatrix) -> PNMatrix:
    """Pair compatible values and constrain each component by its own table.

    Values are the pairs (x, y) that are either both designated or both
    undesignated, named "x|y"; designated pairs are those with both sides
    designated.  A connective owned by one side constrains that component
    only; shared connectives constrain both.
    """
    sig = m1.sig.union(m2.sig)  # raises on arity clash
    pairs = [
        (x, y)
        for x in m1.values
        for y in m2.values
        if (x in m1.designated) == (y in m2.designated)
    ]
    if len(pairs) > VALUE_CAP:
        raise MatrixError(f"strict product would have {len(pairs)} values (cap {VALUE_CAP})")
    values = tuple(pair_name(x, y) for x, y in pairs)
    designated = frozenset(
        pair_name(x, y) for x, y in pairs if x in m1.designated
    )
    tables: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
    for name, arity in sig:
        table: dict[tuple[str, ...], frozenset[str]] = {}
        for combo in itertools.product(pairs, repeat=arity):
            xs = tuple(x for x, _ in combo)
            ys = tuple(y for _, y in combo)
            left = m1.entry(name, xs) if name in m1.sig else frozenset(m1.values)
            right = m2.entry(name, ys) if name in m2.sig else frozenset(m2.values)
            out = frozenset(
                pair_name(x, y) for x, y in pairs if x in left and y in right
            )
            table[tuple(pair_name(x, y) for x, y in combo)] = out
        tables[name] = table
    return PNMatrix(sig=sig, values=values, designated=designated, tables=tables)


def sum_matrices(ms: Sequence[PNMatrix]) -> PNMatrix:
    """Disjoint union over a common signature; cross-copy entries are empty."""
    if not ms:
        raise MatrixError("sum of zero matrices")
    sig = ms[0].sig
    for m in ms[1:]:
        if m.sig != sig:
            raise MatrixError("sum requires identical signatures")
    tag = lambda i, x: f"{i}.{x}"
    values = tuple(tag(i, x) for i, m in enumerate(ms) for x in m.values)
    if len(values) > VALUE_CAP:
        raise MatrixError(f"sum would have {len(values)} values (cap {VALUE_CAP})")
    designated = frozenset(tag(i, x) for i, m in enumerate(ms) for x in m.designated)
    origin = {tag(i, x): (i, x) for i, m in enumerate(ms) for x in m.values}
    tables: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
    for name, arity in sig:
        table: dict[tuple[str, ...], frozenset[str]] = {}
        for combo in itertools.product(values, repeat=arity):
            indices = {origin[v][0] for v in combo}
            if arity > 0 and len(indices) > 1:
                table[combo] = frozenset()
            else:
                i = indices.pop() if indices else None
                if i is None:
                    # nullary connective: union of the tagged outputs
                    out = frozenset(
                        tag(j, x) for j, m in enumerate(ms) for x in m.entry(name, ())
                    )
                    table[combo] = out
                else:
                    raw = ms[i].entry(name, tuple(origin[v][1] for v in combo))
                    table[combo] = frozenset(tag(i, x) for x in raw)
        tables[name] = table
    return PNMatrix(sig=sig, values=values, designated=designated, tables=tables)


def power(m: PNMatrix, k: int) -> PNMatrix:
    """Finite k-th power: k-tuples of values, componentwise tables.

    A tuple is designated iff every component is.
    """
    if k < 1:
        raise MatrixError("power requires k >= 1")
    if len(m.values) ** k > VALUE_CAP:
        raise MatrixError(f"power would have {len(m.values) ** k} values (cap {VALUE_CAP})")
    tuples = list(itertools.product(m.values, repeat=k))
    name_of = {t: "&".join(t) for t in tuples}
    values = tuple(name_of[t] for t in tuples)
    designated = frozenset(
        name_of[t] for t in tuples if all(x in m.designated for x in t)
    )
    tables: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
    for conn, arity in m.sig:
        table: dict[tuple[str, ...], frozenset[str]] = {}
        for combo in itertools.product(tuples, repeat=arity):
            per_coord = [m.entry(conn, tuple(t[i] for t in combo)) for i in range(k)]
            out = frozenset(name_of[t] for t in itertools.product(*per_coord))
            table[tuple(name_of[t] for t in combo)] = out
        tables[conn] = table
    return PNMatrix(sig=m.sig, values=values, designated=designated, tables=tables)


# ---------------------------------------------------------------------------
# Viability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ViabilityReport:
    """Maximal viable value sets, their union, and the spurious complement.

    A set W is viable when every table entry over W intersects W; the values
    usable by some valuation are exactly those inside some viable set.
    """

    maximal: tuple[frozenset[str], ...]
    usable: frozenset[str]
    spurious: frozenset[str]


_viability_cache: dict[int, tuple[PNMatrix, ViabilityReport]] = {}


def _is_viable(m: PNMatrix, w: frozenset[str]) -> bool:
    for name, arity in m.sig:
        table = m.tables[name]
        for tup in itertools.product(sorted(w), repeat=arity):
            if not table[tup] & w:
                return False
    return True


def viable_components(m: PNMatrix) -> ViabilityReport:
    """Exhaustive subset scan for the maximal viable value sets.

    Output order: by descending size, then lexicographically on the sorted
    member list.  Results are cached per matrix object.
    """
    cached = _viability_cache.get(id(m))
    if cached is not None and cached[0] is m:
        return cached[1]
    if len(m.values) > VIABILITY_CAP:
        raise MatrixError(
            f"viability scan over {len(m.values)} values exceeds cap {VIABILITY_CAP}"
        )
    n = len(m.values)
    maximal: list[frozenset[str]] = []
    # scan subsets from large to small so maximality is a simple containment check
    for size in range(n, 0, -1):
        for combo in itertools.combinations(m.values, size):
            w = frozenset(combo)
            if any(w <= big for big in maximal):
                continue
            if _is_viable(m, w):
                maximal.append(w)
    maximal.sort(key=lambda w: (-len(w), sorted(w)))
    usable = frozenset().union(*maximal) if maximal else frozenset()
    report = ViabilityReport(
        maximal=tuple(maximal),
        usable=usable,
        spurious=frozenset(m.values) - usable,
    )
    _viability_cache[id(m)] = (m, report)
    return report


def prune(m: PNMatrix) -> PNMatrix:
    """Drop spurious values; the result decides the same queries as m."""
    report = viable_components(m)
    if report.spurious == frozenset():
        return m
    return restrict(m, report.usable)


# ---------------------------------------------------------------------------
# Strict homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValueMap:
    """A total map between the carriers of two matrices."""

    mapping: tuple[tuple[str, str], ...]

    @staticmethod
    def of(mapping: Mapping[str, str]) -> "ValueMap":
        return ValueMap(tuple(sorted(mapping.items())))

    def __call__(self, x: str) -> str:
        for k, v in self.mapping:
            if k == x:
                return v
        raise KeyError(x)


def check_strict_hom(h: ValueMap, m: PNMatrix, m0: PNMatrix) -> Optional[str]:
    """None if h is a strict homomorphism from m to m0, else the first violation.

    Strictness: h(x) designated in m0 exactly when x is designated in m;
    structure: h maps every table output into the corresponding m0 entry,
    for every connective of m0's signature.
    """
    if not m0.sig.is_subsignature_of(m.sig):
        return "target signature is not a subsignature of the source"
    try:
        images = {x: h(x) for x in m.values}
    except KeyError as e:
        return f"map not total: missing {e.args[0]!r}"
    for x, hx in images.items():
        if hx not in set(m0.values):
            return f"value {x!r} maps to unknown value {hx!r}"
        if (x in m.designated) != (hx in m0.designated):
            return f"strictness violated at {x!r} -> {hx!r}"
    for name, arity in m0.sig:
        for tup in itertools.product(m.values, repeat=arity):
            image_out = {images[y] for y in m.entry(name, tup)}
            target = m0.entry(name, tuple(images[x] for x in tup))
            if not image_out <= target:
                return (
                    f"{name}{tup}: image {sorted(image_out)} not within "
                    f"{sorted(target)}"
                )
    return None


def projection(m_product: PNMatrix, side: int) -> ValueMap:
    """The coordinate projection out of a strict product (side 1 or 2)."""
    mapping = {}
    for v in m_product.values:
        x, y = v.split("|", 1)
        mapping[v] = x if side == 1 else y
    return ValueMap.of(mapping)


def inclusion(m_sum: PNMatrix, index: int) -> ValueMap:
    """The tagged inclusion of summand `index` into a sum (partial inverse)."""
    return ValueMap.of(
        {x.split(".", 1)[1]: x for x in m_sum.values if x.startswith(f"{index}.")}
    )
