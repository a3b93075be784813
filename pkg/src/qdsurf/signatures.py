"""NEC and Fuchsian signatures: areas, genera, presentations, enumeration.

All area arithmetic is exact rational (`fractions.Fraction`); minimal-area
comparisons must be exact ties, never float-near-ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple


class SignatureError(ValueError):
    pass


class IncompatibleOrderError(ValueError):
    """The group order cannot act with this quotient signature."""


class KernelKind(Enum):
    ORIENTABLE_UNBORDERED = "orientable-unbordered"
    NON_ORIENTABLE_UNBORDERED = "non-orientable-unbordered"
    BORDERED = "bordered"


@dataclass(frozen=True)
class NECSignature:
    """(genus; +/-; [proper periods]; {period cycles}).

    Periods are stored in the order given; use :meth:`canonical` when
    comparing signatures as combinatorial objects.
    """

    genus: int
    orientable: bool
    proper_periods: Tuple[int, ...] = ()
    period_cycles: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise SignatureError("genus must be non-negative")
        if not self.orientable and self.genus < 1:
            raise SignatureError("non-orientable genus starts at 1")
        if any(m < 2 for m in self.proper_periods):
            raise SignatureError("proper periods must be at least 2")
        if any(n < 2 for cyc in self.period_cycles for n in cyc):
            raise SignatureError("link periods must be at least 2")
        object.__setattr__(self, "proper_periods", tuple(self.proper_periods))
        object.__setattr__(
            self, "period_cycles", tuple(tuple(c) for c in self.period_cycles)
        )

    # -- basic shape ----------------------------------------------------------

    @property
    def cycle_count(self) -> int:
        return len(self.period_cycles)

    def is_fuchsian(self) -> bool:
        return self.orientable and not self.period_cycles

    def is_proper_nec(self) -> bool:
        return not self.is_fuchsian()

    def is_surface_signature(self) -> bool:
        return not self.proper_periods and all(not c for c in self.period_cycles)

    # -- area -----------------------------------------------------------------

    def reduced_area(self) -> Fraction:
        eta = 2 if self.orientable else 1
        total = Fraction(eta * self.genus + self.cycle_count - 2)
        for m in self.proper_periods:
            total += 1 - Fraction(1, m)
        for cyc in self.period_cycles:
            for n in cyc:
                total += Fraction(1, 2) * (1 - Fraction(1, n))
        return total

    def is_hyperbolic(self) -> bool:
        return self.reduced_area() > 0

    # -- canonical form / text format ------------------------------------------

    def canonical(self) -> "NECSignature":
        periods = tuple(sorted(self.proper_periods))
        cycles = tuple(
            sorted((_least_rotation(c) for c in self.period_cycles),
                   key=lambda c: (len(c), c))
        )
        return NECSignature(self.genus, self.orientable, periods, cycles)

    def sort_key(self) -> tuple:
        c = self.canonical()
        return (
            c.reduced_area(),
            c.genus,
            not c.orientable,
            c.proper_periods,
            c.period_cycles,
        )

    def format(self) -> str:
        sign = "+" if self.orientable else "-"
        periods = ",".join(str(m) for m in self.proper_periods) or "-"
        if self.period_cycles:
            cycles = ",".join(
                "(" + (",".join(str(n) for n in cyc) or "-") + ")"
                for cyc in self.period_cycles
            )
        else:
            cycles = "-"
        return f"({self.genus};{sign};[{periods}];{{{cycles}}})"

    def __str__(self) -> str:
        return self.format()


def _least_rotation(cycle: Tuple[int, ...]) -> Tuple[int, ...]:
    if len(cycle) < 2:
        return tuple(cycle)
    rotations = [tuple(cycle[i:] + cycle[:i]) for i in range(len(cycle))]
    return min(rotations)


class _SigReader:
    """Tiny recursive-descent reader with position-annotated failures."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, expected: str):
        raise SignatureError(
            f"cannot parse signature at position {self.pos}: expected {expected} "
            f"in {self.text!r}"
        )

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, token: str):
        if not self.text.startswith(token, self.pos):
            self.fail(repr(token))
        self.pos += len(token)

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("a digit")
        return int(self.text[start:self.pos])

    def int_list(self, closer: str) -> Tuple[int, ...]:
        if self.peek() == "-":
            self.pos += 1
            return ()
        out = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            out.append(self.integer())
        if self.peek() != closer:
            self.fail(f"',' or {closer!r}")
        return tuple(out)


def parse_signature(text: str) -> NECSignature:
    """Parse the bit-exact text format, e.g. ``(0;+;[2,4];{(-)})``."""
    reader = _SigReader(text.strip())
    reader.take("(")
    genus = reader.integer()
    reader.take(";")
    sign = reader.peek()
    if sign not in "+-":
        reader.fail("'+' or '-'")
    reader.pos += 1
    orientable = sign == "+"
    reader.take(";")
    reader.take("[")
    periods = reader.int_list("]")
    reader.take("]")
    reader.take(";")
    reader.take("{")
    cycles: List[Tuple[int, ...]] = []
    if reader.peek() == "-":
        reader.pos += 1
    else:
        while True:
            reader.take("(")
            cycles.append(reader.int_list(")"))
            reader.take(")")
            if reader.peek() == ",":
                reader.pos += 1
                continue
            break
    reader.take("}")
    reader.take(")")
    if reader.pos != len(reader.text):
        reader.fail("end of signature")
    try:
        return NECSignature(genus, orientable, periods, tuple(cycles))
    except SignatureError as exc:
        raise SignatureError(f"{exc} (in {text!r})") from None


def rh_genus(sig: NECSignature, group_order: int, kind: KernelKind) -> int:
    """Solve the Riemann-Hurwitz relation for the kernel's genus."""
    area = sig.reduced_area()
    if area <= 0:
        raise IncompatibleOrderError(f"{sig} is not hyperbolic")
    scaled = group_order * area
    if kind is KernelKind.ORIENTABLE_UNBORDERED:
        value = (scaled + 2) / 2
    elif kind is KernelKind.NON_ORIENTABLE_UNBORDERED:
        value = scaled + 2
    else:
        value = scaled + 1
    if value.denominator != 1:
        raise IncompatibleOrderError(
            f"order {group_order} with {sig} gives non-integral genus {value}"
        )
    return int(value)


# -- presentations -------------------------------------------------------------

ELLIPTIC = "elliptic"
REFLECTION = "reflection"
BOUNDARY = "boundary"
HYPERBOLIC_A = "hyperbolic_a"
HYPERBOLIC_B = "hyperbolic_b"
GLIDE = "glide"

SlotKey = Tuple


@dataclass(frozen=True)
class GeneratorSlot:
    kind: str
    key: SlotKey           # ("elliptic", i) / ("reflection", i, j) / ...
    orientation: int       # +1 orientation-preserving, -1 reversing
    period: Optional[int] = None  # elliptic order, when applicable

    def label(self) -> str:
        if self.kind == REFLECTION:
            return f"reflection:{self.key[1]}:{self.key[2]}"
        return f"{self.kind}:{self.key[1]}"


@dataclass(frozen=True)
class Relation:
    tag: str               # "elliptic-order" | "corner" | "closing" | "long"
    word: Tuple[Tuple[SlotKey, int], ...]
    order: Optional[int] = None  # for corner relations: the link period


@dataclass(frozen=True)
class PresentationSkeleton:
    signature: NECSignature
    slots: Tuple[GeneratorSlot, ...]
    relations: Tuple[Relation, ...]

    def slot(self, key: SlotKey) -> GeneratorSlot:
        for s in self.slots:
            if s.key == key:
                return s
        raise KeyError(key)

    def slot_keys(self) -> Tuple[SlotKey, ...]:
        return tuple(s.key for s in self.slots)

    def long_relation(self) -> Relation:
        for rel in self.relations:
            if rel.tag == "long":
                return rel
        raise AssertionError("presentation is missing its long relation")


def presentation(sig: NECSignature) -> PresentationSkeleton:
    """Canonical generators and relations, in the conventional order.

    Per cycle i with s_i link periods there are s_i + 1 reflections
    c_{i,0}..c_{i,s_i}; the closing relation e_i c_{i0} e_i^{-1} c_{i,s_i} = 1
    ties the last one to the first.  An empty cycle carries one reflection
    that commutes with its boundary generator.
    """
    slots: List[GeneratorSlot] = []
    relations: List[Relation] = []

    for i, m in enumerate(sig.proper_periods, start=1):
        key = (ELLIPTIC, i)
        slots.append(GeneratorSlot(ELLIPTIC, key, +1, m))
        relations.append(Relation("elliptic-order", ((key, m),), order=m))

    for i, cyc in enumerate(sig.period_cycles, start=1):
        s = len(cyc)
        refl_keys = [(REFLECTION, i, j) for j in range(s + 1)] if s else [(REFLECTION, i, 0)]
        for key in refl_keys:
            slots.append(GeneratorSlot(REFLECTION, key, -1, 2))
        for j, n in enumerate(cyc, start=1):
            relations.append(
                Relation("corner", ((refl_keys[j - 1], 1), (refl_keys[j], 1)), order=n)
            )

    for i in range(1, sig.cycle_count + 1):
        key = (BOUNDARY, i)
        slots.append(GeneratorSlot(BOUNDARY, key, +1))
        s = len(sig.period_cycles[i - 1])
        first = (REFLECTION, i, 0)
        last = (REFLECTION, i, s) if s else first
        relations.append(
            Relation("closing", ((key, 1), (first, 1), (key, -1), (last, 1)))
        )

    long_word: List[Tuple[SlotKey, int]] = []
    long_word.extend(((ELLIPTIC, i), 1) for i in range(1, len(sig.proper_periods) + 1))
    long_word.extend(((BOUNDARY, i), 1) for i in range(1, sig.cycle_count + 1))
    if sig.orientable:
        for i in range(1, sig.genus + 1):
            ka, kb = (HYPERBOLIC_A, i), (HYPERBOLIC_B, i)
            slots.append(GeneratorSlot(HYPERBOLIC_A, ka, +1))
            slots.append(GeneratorSlot(HYPERBOLIC_B, kb, +1))
            long_word.extend([(ka, 1), (kb, 1), (ka, -1), (kb, -1)])
    else:
        for i in range(1, sig.genus + 1):
            kd = (GLIDE, i)
            slots.append(GeneratorSlot(GLIDE, kd, -1))
            long_word.extend([(kd, 1), (kd, 1)])
    relations.append(Relation("long", tuple(long_word)))

    return PresentationSkeleton(sig, tuple(slots), tuple(relations))


def orientation_double(sig: NECSignature) -> NECSignature:
    """Signature of the canonical orientation-preserving half.

    Supported for non-orientable signatures without period cycles: genus
    drops by one, becomes orientable, and every proper period doubles up.
    """
    if sig.orientable or sig.period_cycles:
        raise SignatureError("unsupported-shape: need non-orientable, no period cycles")
    periods: List[int] = []
    for m in sorted(sig.proper_periods):
        periods.extend((m, m))
    return NECSignature(sig.genus - 1, True, tuple(periods), ())


# -- enumeration ----------------------------------------------------------------

ShapeFilter = Callable[[NECSignature], bool]


def shape_fuchsian(sig: NECSignature) -> bool:
    return sig.is_fuchsian()


def shape_proper_nec(sig: NECSignature) -> bool:
    return sig.is_proper_nec()


def shape_glide_only(sig: NECSignature) -> bool:
    """Non-orientable without period cycles (no reflections at all)."""
    return (not sig.orientable) and not sig.period_cycles


def shape_bordered_qualifying(sig: NECSignature) -> bool:
    """Has an empty period-cycle or two cyclically consecutive link periods 2.

    This is the classical necessary shape condition for a bordered surface
    kernel; a qualifying cycle is where a reflection can die.
    """
    for cyc in sig.period_cycles:
        if not cyc:
            return True
        if len(cyc) >= 2:
            for j in range(len(cyc)):
                if cyc[j] == 2 and cyc[(j + 1) % len(cyc)] == 2:
                    return True
    return False


def enumerate_signatures(
    area_bound: Fraction,
    allowed_periods: Iterable[int],
    shape_filter: Optional[ShapeFilter] = None,
    max_cycles: int = 2,
) -> List[NECSignature]:
    """Every canonical signature with reduced area in (0, area_bound].

    Complete within the stated constraints: genus, period count and cycle
    lengths are all bounded by the area inequality, so the search terminates.
    Output is duplicate-free and sorted by (area, canonical form).
    """
    bound = Fraction(area_bound)
    periods = sorted({int(p) for p in allowed_periods if int(p) >= 2})
    found: Dict[tuple, NECSignature] = {}
    if bound <= 0:
        return []

    def period_budget(base: Fraction) -> Fraction:
        return bound - base

    def proper_multisets(budget: Fraction):
        """Nondecreasing period tuples with total contribution <= budget."""
        out: List[Tuple[Tuple[int, ...], Fraction]] = []

        def rec(prefix: List[int], start: int, used: Fraction):
            out.append((tuple(prefix), used))
            for idx in range(start, len(periods)):
                m = periods[idx]
                cost = 1 - Fraction(1, m)
                if used + cost > budget:
                    continue
                prefix.append(m)
                rec(prefix, idx, used + cost)
                prefix.pop()

        rec([], 0, Fraction(0))
        return out

    def cycle_tuples(budget: Fraction):
        """Canonical-rotation cycle tuples with cost <= budget (cost halves)."""
        out: List[Tuple[Tuple[int, ...], Fraction]] = [((), Fraction(0))]
        stack: List[Tuple[Tuple[int, ...], Fraction]] = [((), Fraction(0))]
        while stack:
            prefix, used = stack.pop()
            for m in periods:
                cost = Fraction(1, 2) * (1 - Fraction(1, m))
                if used + cost > budget:
                    continue
                cand = prefix + (m,)
                stack.append((cand, used + cost))
                if cand == _least_rotation(cand):
                    out.append((cand, used + cost))
        return out

    for orientable in (True, False):
        eta = 2 if orientable else 1
        h = 0 if orientable else 1
        while True:
            if Fraction(eta * h - 2) > bound:
                break
            for k in range(0, max_cycles + 1):
                base = Fraction(eta * h + k - 2)
                if base > bound:
                    break
                budget = period_budget(base)
                cyc_pool = cycle_tuples(budget) if k else [((), Fraction(0))]
                # choose k cycles as a nondecreasing multiset
                cyc_pool.sort(key=lambda t: (len(t[0]), t[0]))

                def choose_cycles(idx: int, chosen: List[Tuple[int, ...]], used: Fraction):
                    if len(chosen) == k:
                        for pp, pused in proper_multisets(budget - used):
                            total = base + used + pused
                            if 0 < total <= bound:
                                sig = NECSignature(
                                    h, orientable, pp, tuple(chosen)
                                ).canonical()
                                key = (sig.genus, sig.orientable,
                                       sig.proper_periods, sig.period_cycles)
                                found.setdefault(key, sig)
                        return
                    for i in range(idx, len(cyc_pool)):
                        cyc, cost = cyc_pool[i]
                        if used + cost > budget:
                            continue
                        chosen.append(cyc)
                        choose_cycles(i, chosen, used + cost)
                        chosen.pop()

                choose_cycles(0, [], Fraction(0))
            h += 1

    sigs = [s for s in found.values() if shape_filter is None or shape_filter(s)]
    sigs.sort(key=lambda s: s.sort_key())
    return sigs
