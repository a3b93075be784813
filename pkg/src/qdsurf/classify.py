"""Topological-equivalence classification of generating vectors.

Orbits are closures under registered signature moves (pre-composition) and
automorphism post-composition.  Moves only ever merge orbits, so a single
orbit certifies uniqueness, while separation is certified by a move-invariant
summary, independent of whether the registered move set is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .actions import conformal_part_vector, fix_profile, is_purely_non_free
from .epimorphisms import GeneratingVector, KernelConstraint, check_vector
from .groups import Automorphism, Element, FiniteGroup
from .signatures import BOUNDARY, ELLIPTIC, REFLECTION, NECSignature

State = Tuple[Element, ...]


class NoMoveSetError(ValueError):
    """Raised when no move set is registered for a signature shape."""


class OrbitMemoryError(RuntimeError):
    pass


@dataclass(frozen=True)
class Move:
    name: str
    transform: Callable[[FiniteGroup, State], Optional[State]]


@dataclass(frozen=True)
class MoveSet:
    shape: str
    moves: Tuple[Move, ...]


@dataclass(frozen=True)
class Orbit:
    representative: GeneratingVector
    size: int
    invariant: tuple

    def as_json_obj(self) -> dict:
        return {
            "representative": self.representative.as_json_obj(),
            "size": self.size,
            "invariant": _invariant_json(self.invariant),
        }


def _invariant_json(inv):
    if isinstance(inv, tuple):
        return [_invariant_json(x) for x in inv]
    return inv


# -- registered move sets -------------------------------------------------------


def _braid_moves(r: int) -> Tuple[Move, ...]:
    moves = []
    for i in range(r - 1):
        def fwd(group, state, i=i):
            s = list(state)
            a, b = s[i], s[i + 1]
            s[i], s[i + 1] = group.mul(group.mul(a, b), group.inv(a)), a
            return tuple(s)

        def bwd(group, state, i=i):
            s = list(state)
            a, b = s[i], s[i + 1]
            s[i], s[i + 1] = b, group.mul(group.mul(group.inv(b), a), b)
            return tuple(s)

        moves.append(Move(f"braid:{i + 1}", fwd))
        moves.append(Move(f"braid-inverse:{i + 1}", bwd))
    return tuple(moves)


def _glide_triple_moves() -> Tuple[Move, ...]:
    """Moves for (1;-;[m1,m2,m3];{-}); state order (b1, b2, b3, d)."""

    def cyclic(group, state):
        b1, b2, b3, d = state
        return (b3, b1, b2, group.mul(group.mul(b3, d), b3))

    def ell(group, state):
        b1, b2, b3, d = state
        di = group.inv(d)
        return (
            group.mul(group.mul(di, b3), d),
            group.mul(group.mul(di, b2), d),
            b1,
            group.mul(b1, di),
        )

    return (Move("cycle", cyclic), Move("L", ell))


def _bordered_pair_moves() -> Tuple[Move, ...]:
    """The L move for (0;+;[m1,m2];{(-)}); state (b1, b2, c10, e1)."""

    def ell(group, state):
        b1, b2, c10, e1 = state
        b2i = group.inv(b2)
        return (
            group.mul(b2, b2),
            b2i,
            group.mul(b1, c10),
            b2i,
        )

    return (Move("L", ell),)


def default_moves(sig: NECSignature) -> MoveSet:
    """Registered moves for the supported signature shapes."""
    canon = sig.canonical()
    r = len(canon.proper_periods)
    if canon.is_fuchsian() and canon.genus == 0 and r >= 2:
        return MoveSet("genus0-fuchsian", _braid_moves(r))
    if (
        not canon.orientable
        and canon.genus == 1
        and not canon.period_cycles
        and r == 3
    ):
        return MoveSet("glide-triple", _glide_triple_moves())
    if (
        canon.orientable
        and canon.genus == 0
        and r == 2
        and len(canon.period_cycles) == 1
    ):
        return MoveSet("bordered-pair", _bordered_pair_moves())
    raise NoMoveSetError(f"no-move-set: {canon.format()}")


# -- invariants ------------------------------------------------------------------


def separating_invariant(vec: GeneratingVector) -> tuple:
    """Move- and automorphism-invariant summary of a vector.

    Components: the multiset of (period, image order, image class size) over
    elliptic generators; the multiset of (order, class size, fixed points)
    over nontrivial conjugacy classes when a fixed-point model applies; and
    the purely-non-free flag.  Post-composition permutes conjugacy classes
    preserving (order, size), and registered moves preserve per-element fixed
    point counts, so each component is constant on orbits.
    """
    grp = vec.group
    skel = vec.skeleton()
    elliptic = []
    for slot in skel.slots:
        if slot.kind == ELLIPTIC:
            img = vec.image(slot.key)
            elliptic.append(
                (slot.period, grp.element_order(img), len(grp.class_of(img)))
            )
    elliptic_summary = tuple(sorted(elliptic))

    fix_vec: Optional[GeneratingVector] = None
    if vec.constraint is KernelConstraint.RIEMANN_SURFACE and vec.signature.is_fuchsian():
        fix_vec = vec
    elif (
        vec.constraint is KernelConstraint.RIEMANN_SURFACE
        and not vec.signature.orientable
        and vec.signature.genus == 1
        and not vec.signature.period_cycles
        and vec.orientation_target is not None
    ):
        fix_vec = conformal_part_vector(vec)

    if fix_vec is None:
        return (elliptic_summary, None, None)
    fgrp = fix_vec.group
    profile = fix_profile(fix_vec)
    fix_summary = tuple(
        sorted(
            (fgrp.element_order(rep), len(fgrp.class_of(rep)), count)
            for rep, count in profile.items()
        )
    )
    return (elliptic_summary, fix_summary, is_purely_non_free(fix_vec))


# -- orbit computation -------------------------------------------------------------


def _state_of(vec: GeneratingVector) -> State:
    return tuple(v for _, v in vec.images)


def _vector_with_state(template: GeneratingVector, state: State) -> GeneratingVector:
    keys = [k for k, _ in template.images]
    return GeneratingVector(
        template.signature,
        template.group,
        tuple(zip(keys, state)),
        template.constraint,
        template.orientation_target,
    )


def _searchable_state(template: GeneratingVector, state: State) -> bool:
    vec = _vector_with_state(template, state)
    ok, _ = check_vector(vec)
    return ok


def _move_states(
    template: GeneratingVector,
    state: State,
    moves: Optional[MoveSet],
    auts: Sequence[Automorphism],
) -> Iterable[State]:
    group = template.group
    if moves is not None:
        for move in moves.moves:
            if moves.shape in ("genus0-fuchsian", "glide-triple"):
                # slot order is exactly the packed order these moves expect
                cand = move.transform(group, state)
            else:  # bordered-pair: slots are elliptic1, elliptic2, c10, [c11], e1
                named = dict(zip([k for k, _ in template.images], state))
                packed = (
                    named[(ELLIPTIC, 1)],
                    named[(ELLIPTIC, 2)],
                    named[(REFLECTION, 1, 0)],
                    named[(BOUNDARY, 1)],
                )
                out = move.transform(group, packed)
                if out is None:
                    continue
                named[(ELLIPTIC, 1)], named[(ELLIPTIC, 2)] = out[0], out[1]
                named[(REFLECTION, 1, 0)], named[(BOUNDARY, 1)] = out[2], out[3]
                cycle = template.signature.period_cycles[0]
                if len(cycle) >= 1:
                    e_img, c_img = named[(BOUNDARY, 1)], named[(REFLECTION, 1, 0)]
                    named[(REFLECTION, 1, len(cycle))] = group.mul(
                        group.mul(e_img, c_img), group.inv(e_img)
                    )
                cand = tuple(named[k] for k, _ in template.images)
            if cand is not None:
                yield cand
    for aut in auts:
        yield tuple(aut.apply(g) for g in state)


def classify(
    vectors: Sequence[GeneratingVector],
    moves: Optional[MoveSet],
    auts: Sequence[Automorphism],
    memory_cap: int = 10**7,
) -> List[Orbit]:
    """Partition vectors into orbits under moves and Aut post-composition."""
    if not vectors:
        return []
    template = vectors[0]
    for vec in vectors:
        if vec.signature != template.signature or vec.group != template.group:
            raise ValueError("all vectors must share one signature and group")
    input_states = {_state_of(v): idx for idx, v in enumerate(vectors)}

    assigned: Dict[State, int] = {}
    orbits: List[Orbit] = []
    ordered = sorted(input_states)
    visited_total = 0
    for start in ordered:
        if start in assigned:
            continue
        orbit_id = len(orbits)
        frontier = [start]
        seen = {start}
        best = start
        while frontier:
            visited_total += len(frontier)
            if visited_total > memory_cap:
                raise OrbitMemoryError("orbit closure exceeded the memory cap")
            nxt = []
            for state in frontier:
                if state in input_states:
                    assigned[state] = orbit_id
                if state < best:
                    best = state
                for cand in _move_states(template, state, moves, auts):
                    if cand in seen:
                        continue
                    if not _searchable_state(template, cand):
                        continue
                    seen.add(cand)
                    nxt.append(cand)
            frontier = nxt
        rep_vec = _vector_with_state(template, best)
        member_count = sum(1 for s, i in assigned.items() if i == orbit_id and s in input_states)
        orbits.append(Orbit(rep_vec, member_count, separating_invariant(rep_vec)))
    orbits.sort(key=lambda o: _state_of(o.representative))
    return orbits
