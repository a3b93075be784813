"""One-shot verifiers for the paper-level claims, keyed by a fixed registry.

Each verifier recomputes its claim from scratch through the library and
reports ``confirmed``, ``refuted`` (with a counterexample payload) or
``inconclusive`` (with the exhausted bound).  The registry is the single
source of truth for the CLI and the batch runner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .actions import (
    conformal_part_vector,
    fixed_point_count,
    is_purely_non_free,
    jacobian_ledger,
    pseudo_real_conformal_part,
    sylow_parity_obstruction,
    triangular_vector,
)
from .classify import NoMoveSetError, classify, default_moves
from .dessins import dessin_data, regular_monodromy
from .epimorphisms import (
    GeneratingVector,
    KernelConstraint,
    admissible,
    check_vector,
    enumerate_vectors,
    vector_from_images,
)
from .genus import (
    BoundTooSmallError,
    GenusRecord,
    HYPERBOLIC_EXPECTED,
    ejemplo_family_vector,
    pseudo_real_min,
    pure_symmetric_genus,
    real_genus,
    strong_symmetric_genus,
    symmetric_crosscap,
    symmetric_hyperbolic_genus,
    tps1_family_vector,
    tps_family_vector,
)
from .groups import (
    automorphism_from_generator_images,
    automorphism_group,
    dihedral_index_two,
    doubled_quasi_dihedral,
    index_two_by_tag,
    quasi_dihedral,
)
from .signatures import (
    BOUNDARY,
    ELLIPTIC,
    REFLECTION,
    NECSignature,
    parse_signature,
)

CONFIRMED = "confirmed"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TheoremResult:
    theorem: str
    n: int
    status: str
    evidence: dict


@dataclass(frozen=True)
class VerifyReport:
    theorem: str
    results: tuple

    @property
    def status(self) -> str:
        ranks = {CONFIRMED: 0, REFUTED: 2, INCONCLUSIVE: 3}
        worst = max((ranks[r.status] for r in self.results), default=0)
        return {0: CONFIRMED, 2: REFUTED, 3: INCONCLUSIVE}[worst]

    def exit_code(self) -> int:
        return {CONFIRMED: 0, REFUTED: 2, INCONCLUSIVE: 3}[self.status]

    def as_json_obj(self) -> dict:
        return {
            "schema_version": 1,
            "theorem": self.theorem,
            "status": self.status,
            "results": [
                {"n": r.n, "status": r.status, "evidence": r.evidence}
                for r in self.results
            ],
        }


def _witness_json(vec: GeneratingVector) -> dict:
    return {
        "signature": vec.signature.format(),
        "images": vec.as_json_obj(),
    }


def _record_evidence(record: GenusRecord) -> dict:
    return {
        "value": record.value,
        "witness": _witness_json(record.witness),
        "witness_signatures": record.witness_signatures(),
        "certificates": len(record.certificates),
        "search_bound": None if record.search_bound is None else str(record.search_bound),
    }


def _value_check(theorem: str, n: int, record: GenusRecord, expected: int,
                 extra: Optional[dict] = None) -> TheoremResult:
    evidence = _record_evidence(record)
    evidence["expected"] = expected
    if extra:
        evidence.update(extra)
    status = CONFIRMED if record.value == expected else REFUTED
    if status == REFUTED:
        evidence["counterexample"] = _witness_json(record.witness)
    return TheoremResult(theorem, n, status, evidence)


def _orbit_summary(vectors, sig, group, auts) -> dict:
    try:
        moves = default_moves(sig)
    except NoMoveSetError:
        moves = None
    orbits = classify(vectors, moves, auts)
    invariants = sorted({repr(o.invariant) for o in orbits})
    return {
        "vectors": len(vectors),
        "orbits": len(orbits),
        "distinct_invariants": len(invariants),
        "coarse": moves is None,
    }


# -- the twelve registry entries -------------------------------------------------


def check_pta(n: int, workers: int = 1) -> TheoremResult:
    """Triangular action: admissible signature, fixed points, parity, dessin."""
    group = quasi_dihedral(n)
    sig_good = NECSignature(0, True, (2, 4, 4 * n), ())
    sig_bad = NECSignature(0, True, (4, 4, 4 * n), ())
    evidence: dict = {}
    ok = True

    evidence["signature_2_4_4n_admissible"] = admissible(
        sig_good, group, KernelConstraint.RIEMANN_SURFACE
    )
    evidence["signature_4_4_4n_admissible"] = admissible(
        sig_bad, group, KernelConstraint.RIEMANN_SURFACE
    )
    ok &= evidence["signature_2_4_4n_admissible"] and not evidence["signature_4_4_4n_admissible"]

    vec = triangular_vector(n)
    fix_central = fixed_point_count(vec, group.element(0, 2 * n))
    fix_rot = fixed_point_count(vec, group.element(0, 1))
    evidence["fix_x_2n"] = fix_central
    evidence["fix_x"] = fix_rot
    ok &= fix_central == 2 * n + 2 and fix_rot == 2

    pnf = is_purely_non_free(vec)
    evidence["purely_non_free"] = pnf
    ok &= pnf == (n % 2 == 0)

    vectors = enumerate_vectors(sig_good, group, KernelConstraint.RIEMANN_SURFACE)
    orbit_info = _orbit_summary(vectors, sig_good, group, automorphism_group(group))
    evidence["classification"] = orbit_info
    ok &= orbit_info["orbits"] == 1

    # regular dessin of the pair (x, y x^{4n-1})
    a = group.element(0, 1)
    b = group.element(1, 4 * n - 1)
    pair = regular_monodromy(group, a, b)
    graph = dessin_data(pair)
    white_val = sorted(v for _, v in graph.white)
    black_val = sorted(v for _, v in graph.black)
    bipartite_ok = (
        white_val == [4 * n, 4 * n]
        and black_val == [4] * (2 * n)
        and all(m == 2 for _, _, m in graph.edges)
        and len(graph.edges) == 2 * 2 * n
    )
    evidence["dessin"] = {
        "genus": graph.genus,
        "white_valencies": white_val,
        "black_valencies": black_val,
        "doubled_complete_bipartite": bipartite_ok,
        "faces": len(graph.face_lengths),
    }
    ok &= graph.genus == n and bipartite_ok
    return TheoremResult("thm-pta", n, CONFIRMED if ok else REFUTED, evidence)


def check_strong_1(n: int, workers: int = 1) -> TheoremResult:
    record = strong_symmetric_genus(n, workers=workers)
    return _value_check("cor-strong-1", n, record, n)


def check_strong_2(n: int, workers: int = 1) -> TheoremResult:
    expected = n if n % 2 == 0 else 3 * n
    record = pure_symmetric_genus(n, workers=workers)
    return _value_check("cor-strong-2", n, record, expected)


def check_vj(n: int, workers: int = 1) -> TheoremResult:
    """Jacobian decomposition bookkeeping for the triangular action.

    The recorded claim splits into the square case (stated for powers of
    two, valid for every even n) and the odd case with a rotation factor of
    genus one.  The recorded mixed decomposition for even n with an odd
    prime factor fails its own dimension count, so those n report the
    recomputed decomposition as a counterexample.
    """
    from .actions import quotient_signature, smallest_odd_prime_factor

    ledger = jacobian_ledger(n)
    ledger.validate()
    evidence = {"ledger": ledger.as_json_obj()}
    g_y = ledger.entries[0][2]
    evidence["g_quotient_by_reflection"] = g_y
    if n % 2:
        expect_y = (n - 1) // 2
        g_rot = ledger.entries[1][2]
        evidence["expected_g_y"] = expect_y
        evidence["expected_g_rot"] = 1
        ok = g_y == expect_y and g_rot == 1 and 2 * g_y + g_rot == n
        return TheoremResult("thm-vj", n, CONFIRMED if ok else REFUTED, evidence)
    p = smallest_odd_prime_factor(n)
    if p is None:
        ok = len(ledger.entries) == 1 and 2 * g_y == n
        evidence["expected_g_y"] = n // 2
        return TheoremResult("thm-vj", n, CONFIRMED if ok else REFUTED, evidence)
    # even n with an odd prime factor: the recorded mixed decomposition
    # must satisfy 2*(n-2)/2 + 2 = n; recompute its ingredients honestly
    vec = triangular_vector(n)
    grp = vec.group
    k = n // p
    g_rot = quotient_signature(vec, grp.subgroup([(0, 4 * k)])).genus
    g_dihedral = quotient_signature(vec, grp.subgroup([(0, 4 * k), (1, 0)])).genus
    evidence["g_quotient_by_rotation_power"] = g_rot
    evidence["g_quotient_by_dihedral_2p"] = g_dihedral
    evidence["recorded_expected_g_y"] = (n - 2) // 2
    evidence["recorded_identity_holds"] = 2 * g_y + g_rot == n
    if evidence["recorded_identity_holds"] and g_y == (n - 2) // 2:
        return TheoremResult("thm-vj", n, CONFIRMED, evidence)
    evidence["counterexample"] = ledger.as_json_obj()
    return TheoremResult("thm-vj", n, REFUTED, evidence)


def _check_hyp(tag: str):
    def run(n: int, workers: int = 1) -> TheoremResult:
        theorem = f"thm-hyp1-{tag}"
        expected = HYPERBOLIC_EXPECTED[tag](n)
        try:
            record = symmetric_hyperbolic_genus(n, tag, workers=workers)
        except BoundTooSmallError as exc:
            return TheoremResult(theorem, n, INCONCLUSIVE, {"exhausted_bound": str(exc.bound)})
        result = _value_check(theorem, n, record, expected)
        if result.status != CONFIRMED:
            return result
        group = quasi_dihedral(n)
        target = index_two_by_tag(group, tag)
        vectors = enumerate_vectors(
            record.witness_signature, group, KernelConstraint.RIEMANN_SURFACE, target
        )
        orbit_info = _orbit_summary(
            vectors, record.witness_signature, group, automorphism_group(group)
        )
        evidence = dict(result.evidence)
        evidence["classification"] = orbit_info
        status = CONFIRMED if orbit_info["orbits"] == 1 else REFUTED
        return TheoremResult(theorem, n, status, evidence)

    return run


def check_pmprs(n: int, workers: int = 1) -> TheoremResult:
    theorem = "prop-pmprs"
    try:
        record = pseudo_real_min(n, "conformal_antic", workers=workers)
    except BoundTooSmallError as exc:
        return TheoremResult(theorem, n, INCONCLUSIVE, {"exhausted_bound": str(exc.bound)})
    result = _value_check(theorem, n, record, 2 * n + 1)
    if result.status != CONFIRMED:
        return result
    evidence = dict(result.evidence)
    group = quasi_dihedral(n)
    target = dihedral_index_two(group)
    vectors = enumerate_vectors(
        record.witness_signature, group, KernelConstraint.RIEMANN_SURFACE, target
    )
    orbit_info = _orbit_summary(
        vectors, record.witness_signature, group, automorphism_group(group)
    )
    evidence["classification"] = orbit_info

    half = conformal_part_vector(record.witness)
    fix_central = fixed_point_count(half, group.element(0, 2 * n))
    fix_refl = [
        fixed_point_count(half, group.element(1, 2 * s)) for s in range(2 * n)
    ]
    evidence["fix_x_2n"] = fix_central
    evidence["fix_reflections"] = sorted(set(fix_refl))
    evidence["conformal_part_signature"] = half.signature.canonical().format()
    evidence["conformal_part_candidates"] = [
        s.iso_tag() for s in pseudo_real_conformal_part(group)
    ]
    family = {}
    for k in (3, 4, 5):
        vec = tps_family_vector(n, k)
        family[f"k={k}"] = vec.genus()
    evidence["glide_family_genera"] = family
    # every reflection fixes 4 points for even n; for odd n the two
    # reflection classes share the same total (one class acts freely)
    refl_ok = set(fix_refl) == {4} if n % 2 == 0 else sum(fix_refl) == 8 * n
    ok = (
        orbit_info["orbits"] == 1
        and fix_central == 4 * n
        and refl_ok
        and evidence["conformal_part_candidates"] == ["dihedral"]
        and all(family[f"k={k}"] == 2 * n * k - 4 * n + 1 for k in (3, 4, 5))
    )
    return TheoremResult(theorem, n, CONFIRMED if ok else REFUTED, evidence)


def check_tps2(n: int, workers: int = 1) -> TheoremResult:
    group = quasi_dihedral(n)
    verdict = sylow_parity_obstruction(group)
    evidence = {"parity": verdict.as_json_obj()}
    if n % 2 == 0:
        ok = verdict.verdict == "obstructed" and verdict.involutions % 4 == 1
        vec = ejemplo_family_vector(n, 1, 2)
        evidence["index_two_construction"] = {
            "genus": vec.genus(),
            "expected": 24 * n + 1,
            "signature": vec.signature.canonical().format(),
        }
        ok &= vec.genus() == 24 * n + 1
    else:
        # for odd n the parity check must NOT obstruct (constructions exist)
        ok = verdict.verdict == "not-obstructed"
    return TheoremResult("thm-tps2", n, CONFIRMED if ok else REFUTED, evidence)


def check_mps_plus(n: int, workers: int = 1) -> TheoremResult:
    theorem = "thm-mps+"
    if n % 2 == 0:
        return TheoremResult(theorem, n, CONFIRMED, {"applicable": False})
    try:
        record = pseudo_real_min(n, "conformal_only_odd", workers=workers)
    except BoundTooSmallError as exc:
        return TheoremResult(theorem, n, INCONCLUSIVE, {"exhausted_bound": str(exc.bound)})
    result = _value_check(theorem, n, record, 6 * n + 1)
    if result.status != CONFIRMED:
        return result
    evidence = dict(result.evidence)
    group = doubled_quasi_dihedral(n)
    target = group.subgroup([group.element(0, 2), group.element(1, 0)])
    vectors = enumerate_vectors(
        record.witness_signature, group, KernelConstraint.RIEMANN_SURFACE, target
    )
    orbit_info = _orbit_summary(
        vectors, record.witness_signature, group, automorphism_group(group)
    )
    evidence["classification"] = orbit_info
    family = {}
    for l, r in ((2, 1), (3, 1), (2, 3)):
        vec = tps1_family_vector(n, l, r)
        family[f"l={l},r={r}"] = vec.genus()
    evidence["glide_family_genera"] = family
    ok = (
        orbit_info["distinct_invariants"] >= 2
        and all(
            family[f"l={l},r={r}"] == 4 * n * l + 6 * n * r - 8 * n + 1
            for l, r in ((2, 1), (3, 1), (2, 3))
        )
    )
    return TheoremResult(theorem, n, CONFIRMED if ok else REFUTED, evidence)


def real_genus_bridging_identity(n: int) -> bool:
    """The explicit composition carrying the boundary action to its partner.

    Applies the recorded tuple rewriting to the minimal bordered vector and
    post-composes with the automorphism x -> x^{4n-1}; the result must be the
    recorded partner tuple componentwise.
    """
    group = quasi_dihedral(n)
    y = group.element(1, 0)
    xy = group.mul(group.element(0, 1), y)
    theta1 = {
        "b1": y,
        "b2": xy,
        "e1": group.element(0, 2 * n + 1),
        "c10": group.identity,
    }
    theta1["c11"] = group.conj(theta1["c10"], theta1["e1"])
    # tuple rewriting: b1 -> b2^2, b2 -> b2^-1, e1 -> b2^-1, c10 -> b1 c10,
    # c11 -> b2^-1 c10 b1 b2
    b2i = group.inv(theta1["b2"])
    moved = {
        "b1": group.mul(theta1["b2"], theta1["b2"]),
        "b2": b2i,
        "e1": b2i,
        "c10": group.mul(theta1["b1"], theta1["c10"]),
        "c11": group.mul(
            group.mul(group.mul(b2i, theta1["c10"]), theta1["b1"]), theta1["b2"]
        ),
    }
    psi = automorphism_from_generator_images(
        group, group.element(0, 4 * n - 1), group.element(1, 0)
    )
    if psi is None:
        return False
    image = {k: psi.apply(v) for k, v in moved.items()}
    theta2 = {
        "b1": group.element(0, 2 * n),
        "b2": group.element(1, 1),
        "e1": group.element(1, 1),
        "c10": y,
        "c11": group.element(1, 2 * n + 2),
    }
    return image == theta2


def check_real_a(n: int, workers: int = 1) -> TheoremResult:
    theorem = "thm-real-a"
    try:
        record = real_genus(n, workers=workers)
    except BoundTooSmallError as exc:
        return TheoremResult(theorem, n, INCONCLUSIVE, {"exhausted_bound": str(exc.bound)})
    result = _value_check(theorem, n, record, 2 * n + 1)
    if result.status != CONFIRMED:
        return result
    evidence = dict(result.evidence)
    group = quasi_dihedral(n)
    sig = parse_signature("(0;+;[2,4];{(-)})")
    vectors = enumerate_vectors(sig, group, KernelConstraint.BORDERED_KLEIN)
    orbit_info = _orbit_summary(vectors, sig, group, automorphism_group(group))
    evidence["classification"] = orbit_info
    evidence["bridging_identity"] = real_genus_bridging_identity(n)
    ok = orbit_info["orbits"] == 1 and evidence["bridging_identity"]
    return TheoremResult(theorem, n, CONFIRMED if ok else REFUTED, evidence)


def check_real_b(n: int, workers: int = 1) -> TheoremResult:
    theorem = "thm-real-b"
    try:
        record = symmetric_crosscap(n, workers=workers)
    except BoundTooSmallError as exc:
        return TheoremResult(theorem, n, INCONCLUSIVE, {"exhausted_bound": str(exc.bound)})
    result = _value_check(theorem, n, record, 2 * n + 2)
    if result.status != CONFIRMED:
        return result
    evidence = dict(result.evidence)
    sigs = record.witness_signatures()
    expected_sigs = ["(0;+;[2,4];{(-)})", "(0;+;[4];{(2,2)})"]
    evidence["witness_signatures"] = sigs
    ok = sigs == expected_sigs

    group = quasi_dihedral(n)
    # the orientation-reversing kernel certificate on the corner witness
    sig2 = parse_signature("(0;+;[4];{(2,2)})")
    xy = group.mul(group.element(0, 1), group.element(1, 0))
    images = {
        (ELLIPTIC, 1): xy,
        (BOUNDARY, 1): group.element(1, 4 * n - 1),
        (REFLECTION, 1, 0): group.element(1, 0),
        (REFLECTION, 1, 1): group.element(0, 2 * n),
    }
    vec = vector_from_images(sig2, group, images, KernelConstraint.UNBORDERED_KLEIN)
    ok_vec, diag = check_vector(vec)
    word = (((ELLIPTIC, 1), 1), ((REFLECTION, 1, 0), 1)) * (2 * n) + (((REFLECTION, 1, 1), 1),)
    certificate = vec.evaluate(word) == group.identity
    evidence["corner_witness_valid"] = ok_vec
    evidence["reversing_word_trivial"] = certificate
    ok &= ok_vec and certificate

    if n == 3:
        special = parse_signature("(0;+;[-];{(2,2,3,4)})")
        inadmissible = not admissible(special, group, KernelConstraint.UNBORDERED_KLEIN)
        evidence["pure_reflection_route_inadmissible"] = inadmissible
        ok &= inadmissible
    return TheoremResult(theorem, n, CONFIRMED if ok else REFUTED, evidence)


REGISTRY: Dict[str, Callable[..., TheoremResult]] = {
    "thm-pta": check_pta,
    "cor-strong-1": check_strong_1,
    "cor-strong-2": check_strong_2,
    "thm-vj": check_vj,
    "thm-hyp1-D": _check_hyp("D"),
    "thm-hyp1-DC": _check_hyp("DC"),
    "thm-hyp1-C": _check_hyp("C"),
    "prop-pmprs": check_pmprs,
    "thm-tps2": check_tps2,
    "thm-mps+": check_mps_plus,
    "thm-real-a": check_real_a,
    "thm-real-b": check_real_b,
}


def theorem_ids() -> List[str]:
    return list(REGISTRY)


def run_theorem(theorem: str, ns: Sequence[int], workers: int = 1) -> VerifyReport:
    if theorem not in REGISTRY:
        raise KeyError(theorem)
    check = REGISTRY[theorem]
    results = []
    for n in ns:
        result = check(n, workers=workers)
        if result.status == REFUTED and "counterexample" not in result.evidence:
            evidence = dict(result.evidence)
            evidence["counterexample"] = {
                "failed_checks": [
                    key for key, value in evidence.items() if value is False
                ]
            }
            result = TheoremResult(result.theorem, result.n, result.status, evidence)
        results.append(result)
    return VerifyReport(theorem, tuple(results))
