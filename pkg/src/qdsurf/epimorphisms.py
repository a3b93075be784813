"""Surface-kernel epimorphism enumeration.

Given an NEC signature and a finite group, list every assignment of group
elements to the canonical generators that defines a surjective homomorphism
whose kernel is a surface group of the requested kind:

* ``RIEMANN_SURFACE``: torsion-free orientable unbordered kernel.  Elliptic
  images keep their exact orders; with an orientation target H (index two)
  all orientation-reversing generators land outside H, so the kernel sits in
  the canonical Fuchsian subgroup.
* ``BORDERED_KLEIN``: reflections may die (each trivial reflection produces
  boundary); corner and elliptic orders stay exact; at least one reflection
  must die.
* ``UNBORDERED_KLEIN``: reflections stay alive as involutions, orders stay
  exact, and the image of the orientation-preserving part must be the whole
  group (non-orientable kernel).

The long relation is never searched: it is solved for one generator (a glide
via square roots, a hyperbolic partner via a linear scan, otherwise the last
elliptic or boundary generator in closed form).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from .groups import Element, FiniteGroup, Subgroup
from .signatures import (
    BOUNDARY,
    ELLIPTIC,
    GLIDE,
    HYPERBOLIC_A,
    HYPERBOLIC_B,
    REFLECTION,
    IncompatibleOrderError,
    KernelKind,
    NECSignature,
    PresentationSkeleton,
    Relation,
    SlotKey,
    presentation,
    rh_genus,
)


class KernelConstraint(Enum):
    RIEMANN_SURFACE = "riemann"
    BORDERED_KLEIN = "bordered"
    UNBORDERED_KLEIN = "unbordered"

    @property
    def kernel_kind(self) -> KernelKind:
        if self is KernelConstraint.RIEMANN_SURFACE:
            return KernelKind.ORIENTABLE_UNBORDERED
        if self is KernelConstraint.BORDERED_KLEIN:
            return KernelKind.BORDERED
        return KernelKind.NON_ORIENTABLE_UNBORDERED


class CheckResult(NamedTuple):
    ok: bool
    diagnosis: Optional[str]


@dataclass(frozen=True)
class GeneratingVector:
    """Images of a signature's canonical generators in a finite group."""

    signature: NECSignature
    group: FiniteGroup
    images: Tuple[Tuple[SlotKey, Element], ...]
    constraint: KernelConstraint
    orientation_target: Optional[Subgroup] = None

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.images))

    def image(self, key: SlotKey) -> Element:
        return self._map[key]

    def image_map(self) -> Dict[SlotKey, Element]:
        return dict(self.images)

    def skeleton(self) -> PresentationSkeleton:
        return presentation(self.signature)

    def elliptic_images(self) -> Tuple[Element, ...]:
        return tuple(v for (k, v) in self.images if k[0] == ELLIPTIC)

    def evaluate(self, word: Tuple[Tuple[SlotKey, int], ...]) -> Element:
        acc = self.group.identity
        for key, exp in word:
            g = self._map[key]
            if exp < 0:
                g = self.group.inv(g)
                exp = -exp
            for _ in range(exp):
                acc = self.group.mul(acc, g)
        return acc

    def genus(self) -> int:
        return rh_genus(self.signature, self.group.order, self.constraint.kernel_kind)

    def sort_key(self) -> tuple:
        return tuple(v for _, v in self.images)

    # -- stable external formats -------------------------------------------

    def as_text(self) -> str:
        skel = self.skeleton()
        lines = []
        for slot in skel.slots:
            lines.append(f"{slot.label()} -> {self.group.render(self._map[slot.key])}")
        return "\n".join(lines)

    def as_json_obj(self) -> List[Dict[str, str]]:
        skel = self.skeleton()
        return [
            {"generator": slot.label(), "image": self.group.render(self._map[slot.key])}
            for slot in skel.slots
        ]

    def as_json(self) -> str:
        return json.dumps(self.as_json_obj(), sort_keys=True)

    def __hash__(self):
        return hash((self.signature, self.group, self.images, self.constraint))


def _sign_closure(group: FiniteGroup, signed_gens: Sequence[Tuple[Element, int]]) -> set:
    """Closure of (image, orientation character) pairs in G x {+1,-1}."""
    seen = {(group.identity, 1)}
    frontier = [(group.identity, 1)]
    gens = list(dict.fromkeys(signed_gens))
    inv_gens = [(group.inv(g), s) for g, s in gens]
    while frontier:
        nxt = []
        for h, hs in frontier:
            for g, gs in gens + inv_gens:
                cand = (group.mul(h, g), hs * gs)
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return seen


def kernel_is_orientation_preserving_proper(vec: GeneratingVector) -> bool:
    """True when the image of the orientation-preserving part is the whole group.

    Equivalently (1, -1) lies in the signed closure, i.e. the kernel picks up
    orientation-reversing elements and is non-orientable.
    """
    skel = vec.skeleton()
    signed = [(vec.image(s.key), s.orientation) for s in skel.slots]
    closure = _sign_closure(vec.group, signed)
    return (vec.group.identity, -1) in closure


def check_vector(vec: GeneratingVector) -> CheckResult:
    """Validate relations, image constraints, orientation and surjectivity.

    Returns (ok, diagnosis); the diagnosis names the first failing check.
    """
    g = vec.group
    skel = vec.skeleton()
    target = vec.orientation_target
    mode = vec.constraint

    for slot in skel.slots:
        if slot.key not in vec._map:
            return CheckResult(False, "missing-generator-image")
        g.check_member(vec.image(slot.key))

    if mode is KernelConstraint.RIEMANN_SURFACE and vec.signature.is_proper_nec() and target is None:
        return CheckResult(False, "orientation-target-required")

    for rel in skel.relations:
        if rel.tag == "elliptic-order":
            key = rel.word[0][0]
            if g.element_order(vec.image(key)) != rel.order:
                return CheckResult(False, "elliptic-order-violated")

    for slot in skel.slots:
        if slot.kind != REFLECTION:
            continue
        img = vec.image(slot.key)
        trivial = img == g.identity
        involution = (not trivial) and g.mul(img, img) == g.identity
        if mode is KernelConstraint.RIEMANN_SURFACE or mode is KernelConstraint.UNBORDERED_KLEIN:
            if not involution:
                return CheckResult(False, "reflection-image-invalid")
        else:
            if not (trivial or involution):
                return CheckResult(False, "reflection-image-invalid")

    for rel in skel.relations:
        if rel.tag == "corner":
            prod = vec.evaluate(rel.word)
            if g.element_order(prod) != rel.order:
                return CheckResult(False, "corner-order-violated")

    for rel in skel.relations:
        if rel.tag in ("closing", "long"):
            if vec.evaluate(rel.word) != g.identity:
                return CheckResult(False, "relation-violated")

    if target is not None:
        for slot in skel.slots:
            inside = target.contains(vec.image(slot.key))
            if inside != (slot.orientation == 1):
                return CheckResult(False, "orientation-violated")

    if not g.generates([v for _, v in vec.images]):
        return CheckResult(False, "not-surjective")

    if mode is KernelConstraint.BORDERED_KLEIN:
        if not any(
            vec.image(s.key) == g.identity for s in skel.slots if s.kind == REFLECTION
        ):
            return CheckResult(False, "no-boundary")

    if mode is KernelConstraint.UNBORDERED_KLEIN:
        if not kernel_is_orientation_preserving_proper(vec):
            return CheckResult(False, "kernel-orientable")

    return CheckResult(True, None)


# -- enumeration ---------------------------------------------------------------


def _candidates(
    slot, group: FiniteGroup, mode: KernelConstraint, target: Optional[Subgroup]
) -> Tuple[Element, ...]:
    if slot.kind == ELLIPTIC:
        pool = group.elements_of_order(slot.period)
        if mode is KernelConstraint.RIEMANN_SURFACE and target is not None:
            pool = tuple(e for e in pool if target.contains(e))
        return pool
    if slot.kind == REFLECTION:
        invs = group.involutions()
        if mode is KernelConstraint.RIEMANN_SURFACE:
            if target is not None:
                invs = tuple(e for e in invs if not target.contains(e))
            return invs
        if mode is KernelConstraint.UNBORDERED_KLEIN:
            return invs
        return (group.identity,) + invs
    # boundary, hyperbolic, glide
    pool = group.elements()
    if mode is KernelConstraint.RIEMANN_SURFACE and target is not None:
        if slot.orientation == 1:
            return tuple(e for e in pool if target.contains(e))
        return tuple(e for e in pool if not target.contains(e))
    return pool


def enumerate_vectors(
    sig: NECSignature,
    group: FiniteGroup,
    constraint: KernelConstraint,
    orientation_target: Optional[Subgroup] = None,
    require_surjective: bool = True,
    first_only: bool = False,
) -> List[GeneratingVector]:
    """Complete, deterministic list of admissible generating vectors."""
    if constraint is KernelConstraint.RIEMANN_SURFACE and sig.is_proper_nec() and orientation_target is None:
        raise ValueError("riemann-surface kernels on a proper NEC signature need an orientation target")
    # precondition: the kernel genus must come out integral
    rh_genus(sig, group.order, constraint.kernel_kind)

    skel = presentation(sig)
    slot_by_key = {s.key: s for s in skel.slots}

    derived: Dict[SlotKey, Tuple[SlotKey, SlotKey]] = {}
    for i, cyc in enumerate(sig.period_cycles, start=1):
        if len(cyc) >= 1:
            derived[(REFLECTION, i, len(cyc))] = ((BOUNDARY, i), (REFLECTION, i, 0))

    eliminated: Optional[SlotKey] = None
    if sig.genus > 0 and not sig.orientable:
        eliminated = (GLIDE, sig.genus)
    elif sig.genus > 0 and sig.orientable:
        eliminated = (HYPERBOLIC_B, sig.genus)
    elif sig.proper_periods:
        eliminated = (ELLIPTIC, len(sig.proper_periods))
    elif sig.cycle_count:
        eliminated = (BOUNDARY, sig.cycle_count)
    else:
        raise IncompatibleOrderError(f"{sig} has no generators to search")

    searched = [
        s for s in skel.slots if s.key not in derived and s.key != eliminated
    ]
    cand_map = {
        s.key: _candidates(s, group, constraint, orientation_target) for s in searched
    }
    searched.sort(key=lambda s: (len(cand_map[s.key]), skel.slots.index(s)))
    search_keys = [s.key for s in searched]

    # relations checkable during the search (all slots searched)
    prunable: List[Tuple[Relation, FrozenSet[SlotKey]]] = []
    search_set = set(search_keys)
    for rel in skel.relations:
        keys = {k for k, _ in rel.word}
        if rel.tag in ("corner", "closing") and keys <= search_set:
            prunable.append((rel, frozenset(keys)))
    # map: after assigning slot at depth d, which relations become checkable
    depth_of = {k: d for d, k in enumerate(search_keys)}
    checks_at: List[List[Relation]] = [[] for _ in search_keys]
    for rel, keys in prunable:
        checks_at[max(depth_of[k] for k in keys)].append(rel)

    long_rel = skel.long_relation()
    results: List[GeneratingVector] = []
    assignment: Dict[SlotKey, Element] = {}

    def eval_word(word) -> Element:
        acc = group.identity
        for key, exp in word:
            g = assignment[key]
            if exp < 0:
                g = group.inv(g)
                exp = -exp
            for _ in range(exp):
                acc = group.mul(acc, g)
        return acc

    def relation_ok(rel: Relation) -> bool:
        if rel.tag == "corner":
            return group.element_order(eval_word(rel.word)) == rel.order
        return eval_word(rel.word) == group.identity

    def solve_eliminated() -> List[Element]:
        """Images for the eliminated slot satisfying the long relation."""
        word = long_rel.word
        if eliminated[0] == ELLIPTIC or eliminated[0] == BOUNDARY:
            prefix = group.identity
            suffix = group.identity
            seen = False
            for key, exp in word:
                if key == eliminated:
                    seen = True
                    continue
                part = assignment[key]
                if exp < 0:
                    part = group.inv(part)
                if not seen:
                    prefix = group.mul(prefix, part)
                else:
                    suffix = group.mul(suffix, part)
            value = group.mul(group.inv(prefix), group.inv(suffix))
            return [value]
        if eliminated[0] == GLIDE:
            residual = group.identity
            for key, exp in word:
                if key == eliminated:
                    continue
                part = assignment[key]
                if exp < 0:
                    part = group.inv(part)
                residual = group.mul(residual, part)
            return list(group.square_roots(group.inv(residual)))
        # hyperbolic partner: prefix * [a_h, b] = 1  =>  [a_h, b] = prefix^-1
        prefix = group.identity
        for key, exp in word[:-4]:
            part = assignment[key]
            if exp < 0:
                part = group.inv(part)
            prefix = group.mul(prefix, part)
        target_c = group.inv(prefix)
        a_key = (HYPERBOLIC_A, eliminated[1])
        a = assignment[a_key]
        return [
            b for b in group.elements() if group.commutator(a, b) == target_c
        ]

    def finish_candidate(value: Element) -> Optional[GeneratingVector]:
        assignment[eliminated] = value
        for dkey, (ekey, ckey) in derived.items():
            e_img = assignment[ekey]
            c_img = assignment[ckey]
            assignment[dkey] = group.mul(group.mul(e_img, c_img), group.inv(e_img))
        images = tuple((s.key, assignment[s.key]) for s in skel.slots)
        vec = GeneratingVector(sig, group, images, constraint, orientation_target)
        ok, diag = check_vector(vec)
        if not ok and diag == "not-surjective" and not require_surjective:
            ok = True
        for dkey in derived:
            assignment.pop(dkey, None)
        assignment.pop(eliminated, None)
        return vec if ok else None

    def backtrack(depth: int) -> bool:
        if depth == len(search_keys):
            for value in solve_eliminated():
                vec = finish_candidate(value)
                if vec is not None:
                    results.append(vec)
                    if first_only:
                        return True
            return False
        key = search_keys[depth]
        for cand in cand_map[key]:
            assignment[key] = cand
            if all(relation_ok(rel) for rel in checks_at[depth]):
                if backtrack(depth + 1):
                    return True
            del assignment[key]
        return False

    backtrack(0)
    results.sort(key=lambda v: v.sort_key())
    return results


def admissible(
    sig: NECSignature,
    group: FiniteGroup,
    constraint: KernelConstraint,
    orientation_target: Optional[Subgroup] = None,
) -> bool:
    """Whether at least one admissible generating vector exists."""
    return bool(
        enumerate_vectors(sig, group, constraint, orientation_target, first_only=True)
    )


def vector_from_images(
    sig: NECSignature,
    group: FiniteGroup,
    images: Dict[SlotKey, Element],
    constraint: KernelConstraint,
    orientation_target: Optional[Subgroup] = None,
    fill_derived: bool = True,
) -> GeneratingVector:
    """Assemble a vector from explicit images, deriving bound reflections.

    ``images`` may omit the last reflection of each non-empty cycle; it is
    then computed from the closing relation.
    """
    skel = presentation(sig)
    data = dict(images)
    if fill_derived:
        for i, cyc in enumerate(sig.period_cycles, start=1):
            key = (REFLECTION, i, len(cyc))
            if len(cyc) >= 1 and key not in data:
                e_img = data[(BOUNDARY, i)]
                c_img = data[(REFLECTION, i, 0)]
                data[key] = group.mul(group.mul(e_img, c_img), group.inv(e_img))
    ordered = tuple((s.key, data[s.key]) for s in skel.slots)
    return GeneratingVector(sig, group, ordered, constraint, orientation_target)
