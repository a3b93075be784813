"""Geometric data derived from a conformal action.

Fixed points are counted through the coset-stabilizer model: a point above
the i-th cone corresponds to a coset h<c_i>, and an element g fixes it
exactly when h^-1 g h lands in <c_i>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .groups import (
    DomainError,
    Element,
    FiniteGroup,
    SemidirectC2Group,
    Subgroup,
    SubgroupViewGroup,
    quasi_dihedral,
)
from .epimorphisms import GeneratingVector, KernelConstraint, check_vector, vector_from_images
from .signatures import ELLIPTIC, GLIDE, NECSignature


class UnsupportedVectorError(ValueError):
    pass


def _require_fuchsian_riemann(vec: GeneratingVector) -> None:
    if vec.constraint is not KernelConstraint.RIEMANN_SURFACE or not vec.signature.is_fuchsian():
        raise UnsupportedVectorError(
            "fixed points are defined for conformal vectors on Fuchsian signatures"
        )


def fixed_point_count(vec: GeneratingVector, g: Element) -> int:
    """Number of fixed points of g on the covering surface."""
    _require_fuchsian_riemann(vec)
    grp = vec.group
    if g == grp.identity:
        raise DomainError("fixed points are counted for nontrivial elements only")
    grp.check_member(g)
    cls = grp.class_of(g)
    centralizer = grp.centralizer_order(g)
    total = 0
    for c in vec.elliptic_images():
        cyc = grp.subgroup_closure([c])
        hits = len(cls & cyc)
        if hits:
            total += centralizer * hits // len(cyc)
    return total


def fix_profile(vec: GeneratingVector) -> Dict[Element, int]:
    """Fixed-point count for one representative of each nontrivial class."""
    _require_fuchsian_riemann(vec)
    grp = vec.group
    return {
        rep: fixed_point_count(vec, rep)
        for rep, _ in grp.conjugacy_classes()
        if rep != grp.identity
    }


def fix_profile_report(vec: GeneratingVector) -> List[dict]:
    """Fixed-point counts as a stable JSON-ready report.

    One entry per nontrivial conjugacy class, keyed ``element`` (the class
    representative in normal form) and ``fixed_points``.
    """
    grp = vec.group
    return [
        {"element": grp.render(rep), "fixed_points": count}
        for rep, count in sorted(fix_profile(vec).items())
    ]


def is_purely_non_free(vec: GeneratingVector) -> bool:
    """Every nontrivial cyclic subgroup meets a point stabilizer.

    Equivalently, every element of prime order has at least one fixed point;
    an element acts freely exactly when its whole cyclic subgroup misses the
    stabilizers, so this is the subgroup-wise reading of "every element acts
    with fixed points".
    """
    _require_fuchsian_riemann(vec)
    grp = vec.group
    for rep, _ in grp.conjugacy_classes():
        order = grp.element_order(rep)
        if order == 1:
            continue
        if _is_prime(order) and fixed_point_count(vec, rep) == 0:
            return False
    return True


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class QuotientOrbifold:
    genus: int
    orientable: bool
    cone_orders: Tuple[int, ...]

    def signature(self) -> NECSignature:
        return NECSignature(self.genus, self.orientable, self.cone_orders, ())

    def as_json_obj(self) -> dict:
        return {
            "genus": self.genus,
            "orientable": self.orientable,
            "cone_orders": list(self.cone_orders),
        }


def quotient_signature(vec: GeneratingVector, subgroup: Subgroup) -> QuotientOrbifold:
    """Genus and cone orders of (surface)/H for H inside the acting group.

    Cone points correspond to short orbits of each elliptic image on the
    coset space G/H; the genus comes from the Riemann-Hurwitz relation for
    the degree-[G:H] cover of the base orbifold.
    """
    _require_fuchsian_riemann(vec)
    grp = vec.group
    if subgroup.parent != grp:
        raise DomainError("subgroup must live in the vector's group")
    cosets = subgroup.left_cosets()
    coset_index = {}
    for idx, coset in enumerate(cosets):
        for member in coset:
            coset_index[member] = idx
    degree = len(cosets)

    cones: List[int] = []
    periods = vec.signature.proper_periods
    for c, m in zip(vec.elliptic_images(), periods):
        seen = set()
        for start in range(degree):
            if start in seen:
                continue
            length = 0
            current = start
            while True:
                seen.add(current)
                rep = min(cosets[current])
                current = coset_index[grp.mul(c, rep)]
                length += 1
                if current == start:
                    break
            if length < m:
                if m % length:
                    raise AssertionError("orbit length must divide the cone order")
                cones.append(m // length)
    base_area = Fraction(2 * vec.signature.genus - 2)
    for m in periods:
        base_area += 1 - Fraction(1, m)
    lifted = degree * base_area
    cone_part = sum((1 - Fraction(1, q) for q in cones), Fraction(0))
    genus2 = lifted - cone_part + 2
    if genus2.denominator != 1 or genus2 < 0 or int(genus2) % 2:
        raise AssertionError(
            f"inconsistent quotient genus for H of index {degree}: 2g = {genus2}"
        )
    return QuotientOrbifold(int(genus2) // 2, True, tuple(sorted(cones)))


@dataclass(frozen=True)
class JacobianLedger:
    """Dimension bookkeeping for the isotypical decomposition."""

    n: int
    entries: Tuple[Tuple[str, int, int], ...]  # (factor label, multiplicity, genus)

    @property
    def target_genus(self) -> int:
        return self.n

    def dimension_sum(self) -> int:
        return sum(mult * genus for _, mult, genus in self.entries)

    def validate(self) -> None:
        if self.dimension_sum() != self.target_genus:
            raise AssertionError(
                f"ledger sums to {self.dimension_sum()}, expected {self.target_genus}"
            )

    def as_json_obj(self) -> dict:
        return {
            "target_genus": self.target_genus,
            "factors": [
                {"factor": label, "multiplicity": mult, "genus": genus}
                for label, mult, genus in self.entries
            ],
        }


def triangular_vector(n: int) -> GeneratingVector:
    """The minimal-genus conformal vector on (0;+;[2,4,4n];{-})."""
    g = quasi_dihedral(n)
    sig = NECSignature(0, True, (2, 4, 4 * n), ())
    images = {
        (ELLIPTIC, 1): g.element(1, 0),             # y
        (ELLIPTIC, 2): g.element(1, -1),            # y x^-1
        (ELLIPTIC, 3): g.element(0, 1),             # x
    }
    vec = vector_from_images(sig, g, images, KernelConstraint.RIEMANN_SURFACE)
    ok, diag = check_vector(vec)
    if not ok:
        raise AssertionError(f"triangular vector failed its own check: {diag}")
    return vec


def smallest_odd_prime_factor(n: int) -> Optional[int]:
    for p in range(3, n + 1, 2):
        if n % p == 0:
            return p
    return None


def jacobian_ledger(n: int) -> JacobianLedger:
    """Isogeny-dimension ledger induced by the triangular action.

    For even n the two reflection-type involution classes coincide, so the
    four-group argument applies and the Jacobian is isogenous to a square:
    [(S/<y>, 2, n/2)].  For odd n the rotation factor through the smallest
    odd prime p (n = pk) appears as well; when the dihedral quotient
    S/<x^{4k}, y> has positive genus (odd composite n) it enters with
    multiplicity -2, recording the uncancelled side of the isogeny relation
    J x J^2_{S/D} ~ J_{S/<x^{4k}>} x J^2_{S/<y>}.  All genera are recomputed
    from the coset model and the signed sum is validated.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    vec = triangular_vector(n)
    grp: SemidirectC2Group = vec.group  # type: ignore[assignment]
    h_y = grp.subgroup([grp.element(1, 0)])
    g1 = quotient_signature(vec, h_y).genus
    if n % 2 == 0:
        ledger = JacobianLedger(n, (("S/<y>", 2, g1),))
    else:
        p = smallest_odd_prime_factor(n)
        k = n // p
        h_rot = grp.subgroup([grp.element(0, 4 * k)])
        g2 = quotient_signature(vec, h_rot).genus
        entries = [("S/<y>", 2, g1), (f"S/<x^{4 * k}>", 1, g2)]
        h_dih = grp.subgroup([grp.element(0, 4 * k), grp.element(1, 0)])
        g_d = quotient_signature(vec, h_dih).genus
        if g_d:
            entries.append((f"S/<x^{4 * k},y>", -2, g_d))
        ledger = JacobianLedger(n, tuple(entries))
    ledger.validate()
    return ledger


def pseudo_real_conformal_part(group: FiniteGroup) -> List[Subgroup]:
    """Index-two subgroups containing every involution of the group.

    Only these can be the conformal part of an action on a surface without
    anticonformal involutions.
    """
    return group.index_two_subgroup_containing(group.involutions())


@dataclass(frozen=True)
class ParityVerdict:
    involutions: int
    residue: int
    verdict: str  # "obstructed" | "not-obstructed" | "inconclusive"

    def as_json_obj(self) -> dict:
        return {
            "involutions": self.involutions,
            "residue_mod_4": self.residue,
            "verdict": self.verdict,
        }


def sylow_parity_obstruction(
    group: FiniteGroup, overgroup_non_exceptional: bool = True
) -> ParityVerdict:
    """Involution-count obstruction to an index-two overgroup action.

    A group of order 2^m k (m >= 2) with a non-exceptional Sylow 2-subgroup
    has an involution count congruent to 3 mod 4; if the overgroup in the
    would-be extension must be non-exceptional (input flag, sourced from the
    cited classification) and the count here is incongruent, no such
    extension exists.
    """
    if group.order % 4:
        raise DomainError("the obstruction requires order divisible by 4")
    inv = group.involution_count()
    residue = inv % 4
    if not overgroup_non_exceptional:
        verdict = "inconclusive"
    elif residue != 3:
        verdict = "obstructed"
    else:
        verdict = "not-obstructed"
    return ParityVerdict(inv, residue, verdict)


def conformal_part_vector(vec: GeneratingVector) -> GeneratingVector:
    """Restrict a glide-type action to its orientation-preserving half.

    Supported for vectors on (1;-;[m_1..m_r];{-}) with an orientation
    target: the half is a genus-zero Fuchsian vector into the target, with
    periods doubled up and images (v_1..v_r, D v_r^-1 D^-1,.., D v_1^-1 D^-1).
    """
    sig = vec.signature
    if sig.orientable or sig.period_cycles or sig.genus != 1:
        raise UnsupportedVectorError("supported for genus-one glide signatures only")
    if vec.orientation_target is None:
        raise UnsupportedVectorError("an orientation target is required")
    grp = vec.group
    d_img = vec.image((GLIDE, 1))
    vs = vec.elliptic_images()
    mirrored = [grp.conj(grp.inv(v), d_img) for v in reversed(vs)]
    periods = sig.proper_periods + tuple(reversed(sig.proper_periods))
    half_sig = NECSignature(0, True, periods, ())
    half_group = SubgroupViewGroup(vec.orientation_target)
    images = {}
    for idx, value in enumerate(list(vs) + mirrored, start=1):
        images[(ELLIPTIC, idx)] = value
    half = vector_from_images(half_sig, half_group, images, KernelConstraint.RIEMANN_SURFACE)
    ok, diag = check_vector(half)
    if not ok:
        raise AssertionError(f"conformal part failed validation: {diag}")
    return half
