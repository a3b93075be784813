"""Acceptance gate: one test per recorded criterion, exact tolerances.

Each test prints a single ``ACCEPTANCE k ...: PASS/FAIL`` line (visible with
``pytest -s``) and fails loudly with the list of offending sub-checks.  All
arithmetic is exact; the stated time budgets are asserted.
"""

import random
import time
from fractions import Fraction
from itertools import product

from qdsurf.actions import (
    conformal_part_vector,
    fixed_point_count,
    is_purely_non_free,
    jacobian_ledger,
    quotient_signature,
    sylow_parity_obstruction,
    triangular_vector,
)
from qdsurf.classify import classify, default_moves
from qdsurf.dessins import dessin_data, regular_monodromy
from qdsurf.epimorphisms import (
    GeneratingVector,
    KernelConstraint,
    admissible,
    check_vector,
    enumerate_vectors,
)
from qdsurf.genus import (
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
from qdsurf.groups import (
    automorphism_group,
    cyclic_index_two,
    dicyclic_index_two,
    dihedral_index_two,
    doubled_quasi_dihedral,
    euler_phi,
    quasi_dihedral,
)
from qdsurf.signatures import (
    NECSignature,
    enumerate_signatures,
    parse_signature,
    shape_bordered_qualifying,
    shape_fuchsian,
    shape_glide_only,
    shape_proper_nec,
)
from qdsurf.theorems import real_genus_bridging_identity

RIEMANN = KernelConstraint.RIEMANN_SURFACE
BORDERED = KernelConstraint.BORDERED_KLEIN
UNBORDERED = KernelConstraint.UNBORDERED_KLEIN


def _finish(num, name, t0, failures, budget):
    elapsed = time.time() - t0
    status = "PASS" if not failures and elapsed <= budget else "FAIL"
    detail = f" - {'; '.join(failures)}" if failures else ""
    print(f"ACCEPTANCE {num} ({name}): {status} [{elapsed:.1f}s]{detail}")
    assert elapsed <= budget, f"criterion {num} exceeded {budget}s ({elapsed:.1f}s)"
    assert not failures, f"criterion {num}: " + "; ".join(failures)


def _check(failures, condition, message):
    if not condition:
        failures.append(message)


def _exhaustion_covers(record, shape_filter, group):
    """Every enumerated signature strictly below the witness area is certified."""
    witness_area = record.witness.signature.reduced_area()
    periods = sorted(o for o in group.order_census() if o >= 2)
    certified = {sig for sig, _ in record.certificates}
    for sig in enumerate_signatures(witness_area, periods, shape_filter):
        if sig.reduced_area() < witness_area and sig.format() not in certified:
            return False
    return True


def test_criterion_1_group_structure_suite():
    t0 = time.time()
    failures = []
    for n in range(2, 11):
        g = quasi_dihedral(n)
        expected_classes = 2 * n + 3 if n % 2 == 0 else 2 * n + 6
        _check(failures, len(g.conjugacy_classes()) == expected_classes,
               f"n={n}: class count")
        _check(failures, g.involution_count() == 2 * n + 1, f"n={n}: inv(G)")
        _check(failures,
               dihedral_index_two(g).as_group().involution_count() == 2 * n + 1,
               f"n={n}: inv(D)")
        _check(failures,
               cyclic_index_two(g).as_group().involution_count() == 1,
               f"n={n}: inv(C)")
        _check(failures,
               dicyclic_index_two(g).as_group().involution_count() == 1,
               f"n={n}: inv(DC)")
        _check(failures,
               len(automorphism_group(g)) == euler_phi(4 * n) * 2 * n,
               f"n={n}: |Aut|")
        subs = g.index_two_subgroups()
        _check(failures, len(subs) == 3, f"n={n}: index-2 count")
        _check(failures,
               sorted(s.iso_tag() for s in subs) == ["cyclic", "dicyclic", "dihedral"],
               f"n={n}: index-2 types")
    _finish(1, "group structure, n=2..10", t0, failures, 5.0)


def test_criterion_2_triangular_action():
    t0 = time.time()
    failures = []
    for n in range(2, 6):
        g = quasi_dihedral(n)
        sig = NECSignature(0, True, (2, 4, 4 * n), ())
        vecs = enumerate_vectors(sig, g, RIEMANN)
        _check(failures, bool(vecs), f"n={n}: no vectors")
        orbits = classify(vecs, default_moves(sig), automorphism_group(g))
        _check(failures, len(orbits) == 1, f"n={n}: {len(orbits)} orbits")
        vec = triangular_vector(n)
        _check(failures,
               fixed_point_count(vec, g.element(0, 2 * n)) == 2 * n + 2,
               f"n={n}: Fix(x^2n)")
        _check(failures, fixed_point_count(vec, g.element(0, 1)) == 2,
               f"n={n}: Fix(x)")
        _check(failures, is_purely_non_free(vec) == (n % 2 == 0),
               f"n={n}: purely-non-free parity")
    _finish(2, "triangular action, n=2..5", t0, failures, 30.0)


def test_criterion_3_minimal_genus_searches():
    t0 = time.time()
    failures = []
    for n in (2, 3, 4):
        g = quasi_dihedral(n)
        rec = strong_symmetric_genus(n)
        _check(failures, rec.value == n, f"sigma0({n}) = {rec.value} != {n}")
        _check(failures, _exhaustion_covers(rec, shape_fuchsian, g),
               f"sigma0({n}): exhaustion gap")

        expected_p = n if n % 2 == 0 else 3 * n
        rec = pure_symmetric_genus(n)
        _check(failures, rec.value == expected_p,
               f"sigma_p({n}) = {rec.value} != {expected_p}")
        _check(failures, _exhaustion_covers(rec, shape_fuchsian, g),
               f"sigma_p({n}): exhaustion gap")

        for tag, expected in (("D", 2 * n + 1),
                              ("DC", n if n % 2 == 0 else n - 1),
                              ("C", 2 * n - 1)):
            rec = symmetric_hyperbolic_genus(n, tag)
            _check(failures, rec.value == expected,
                   f"sigma_hyp({tag},{n}) = {rec.value} != {expected}")
            _check(failures, _exhaustion_covers(rec, shape_proper_nec, g),
                   f"sigma_hyp({tag},{n}): exhaustion gap")
    _finish(3, "minimal-genus searches, n=2..4", t0, failures, 300.0)


def test_criterion_4_klein_surface_suite():
    t0 = time.time()
    failures = []
    for n in (2, 3, 4):
        g = quasi_dihedral(n)
        rec = real_genus(n)
        _check(failures, rec.value == 2 * n + 1,
               f"rho({n}) = {rec.value} != {2 * n + 1}")

        def rho_shape(sig):
            return sig.is_proper_nec() and shape_bordered_qualifying(sig)

        _check(failures, _exhaustion_covers(rec, rho_shape, g),
               f"rho({n}): exhaustion gap")
        sig = parse_signature("(0;+;[2,4];{(-)})")
        vecs = enumerate_vectors(sig, g, BORDERED)
        orbits = classify(vecs, default_moves(sig), automorphism_group(g))
        _check(failures, len(orbits) == 1, f"rho({n}): {len(orbits)} orbits")
        _check(failures, real_genus_bridging_identity(n),
               f"rho({n}): bridging identity")

        rec = symmetric_crosscap(n)
        _check(failures, rec.value == 2 * n + 2,
               f"crosscap({n}) = {rec.value} != {2 * n + 2}")
        _check(failures, _exhaustion_covers(rec, shape_proper_nec, g),
               f"crosscap({n}): exhaustion gap")
        if n != 3:
            _check(failures,
                   rec.witness_signatures() == ["(0;+;[2,4];{(-)})", "(0;+;[4];{(2,2)})"],
                   f"crosscap({n}): witness signatures")
    g3 = quasi_dihedral(3)
    _check(failures,
           not admissible(parse_signature("(0;+;[-];{(2,2,3,4)})"), g3, UNBORDERED),
           "n=3: pure-reflection route must be inadmissible")
    _check(failures, symmetric_crosscap(3).value == 8, "crosscap(3) != 8")
    _finish(4, "Klein-surface suite, n=2..4 with n=3 special case", t0, failures, 120.0)


def test_criterion_5_pseudo_real_suite():
    t0 = time.time()
    failures = []
    for n in (2, 3, 4):
        g = quasi_dihedral(n)
        rec = pseudo_real_min(n, "conformal_antic")
        _check(failures, rec.value == 2 * n + 1,
               f"pseudo-real-D({n}) = {rec.value} != {2 * n + 1}")
        _check(failures, _exhaustion_covers(rec, shape_glide_only, g),
               f"pseudo-real-D({n}): exhaustion gap")
        target = dihedral_index_two(g)
        vecs = enumerate_vectors(rec.witness.signature, g, RIEMANN, target)
        orbits = classify(vecs, default_moves(rec.witness.signature),
                          automorphism_group(g))
        _check(failures, len(orbits) == 1,
               f"pseudo-real-D({n}): {len(orbits)} orbits")

        half = conformal_part_vector(rec.witness)
        _check(failures,
               fixed_point_count(half, g.element(0, 2 * n)) == 4 * n,
               f"n={n}: Fix(x^2n) on minimal vector")
        if n % 2 == 0:
            refl = {fixed_point_count(half, g.element(1, 2 * s)) for s in range(2 * n)}
            _check(failures, refl == {4}, f"n={n}: reflection fixed points")
    for n in (2, 4):
        verdict = sylow_parity_obstruction(quasi_dihedral(n))
        _check(failures,
               verdict.residue == 1 and verdict.verdict == "obstructed",
               f"n={n}: parity obstruction")
    ghat = doubled_quasi_dihedral(3)
    rec = pseudo_real_min(3, "conformal_only_odd")
    _check(failures, rec.value == 19, f"pseudo-real-hat(3) = {rec.value} != 19")
    target = ghat.subgroup([ghat.element(0, 2), ghat.element(1, 0)])
    vecs = enumerate_vectors(rec.witness.signature, ghat, RIEMANN, target)
    orbits = classify(vecs, default_moves(rec.witness.signature),
                      automorphism_group(ghat))
    distinct = {o.invariant for o in orbits}
    _check(failures, len(distinct) >= 2,
           f"pseudo-real-hat(3): {len(distinct)} orbit classes")
    _finish(5, "pseudo-real suite", t0, failures, 120.0)


def test_criterion_6_genus_formula_families():
    t0 = time.time()
    failures = []
    for n, k in product((2, 3, 4), (3, 4, 5, 6)):
        vec = tps_family_vector(n, k)
        expected = 2 * n * k - 4 * n + 1
        _check(failures, check_vector(vec).ok, f"tps({n},{k}): invalid")
        _check(failures, vec.genus() == expected, f"tps({n},{k}): genus")
    for n, l, r in product((3, 5), (2, 3), (1, 3)):
        vec = tps1_family_vector(n, l, r)
        expected = 4 * n * l + 6 * n * r - 8 * n + 1
        _check(failures, check_vector(vec).ok, f"tps1({n},{l},{r}): invalid")
        _check(failures, vec.genus() == expected, f"tps1({n},{l},{r}): genus")
    for n, alpha, beta in product((2, 3), (1, 2), (2, 4)):
        vec = ejemplo_family_vector(n, alpha, beta)
        expected = 12 * n * beta + 8 * n * alpha - 8 * n + 1
        _check(failures, check_vector(vec).ok,
               f"ejemplo({n},{alpha},{beta}): invalid")
        _check(failures, vec.genus() == expected,
               f"ejemplo({n},{alpha},{beta}): genus")
    _finish(6, "genus-formula families", t0, failures, 60.0)


def test_criterion_7_dessins():
    t0 = time.time()
    failures = []
    for n in range(2, 11):
        g = quasi_dihedral(n)
        eta = g.element(0, 1)
        tau = g.element(1, 4 * n - 1)
        pair = regular_monodromy(g, eta, tau)
        _check(failures, pair.generated_group_order() == 8 * n,
               f"n={n}: monodromy group order")
        graph = dessin_data(pair)
        _check(failures, graph.genus == n, f"n={n}: dessin genus")
        _check(failures,
               sorted(v for _, v in graph.white) == [4 * n, 4 * n]
               and sorted(v for _, v in graph.black) == [4] * (2 * n),
               f"n={n}: valencies")
        _check(failures,
               len(graph.edges) == 4 * n and all(m == 2 for _, _, m in graph.edges),
               f"n={n}: doubled complete bipartite graph")
    _finish(7, "dessins, n=2..10", t0, failures, 5.0)


def test_criterion_8_jacobian_ledgers():
    t0 = time.time()
    failures = []
    for n in (4, 8):
        ledger = jacobian_ledger(n)
        _check(failures,
               len(ledger.entries) == 1 and ledger.entries[0][2] == n // 2,
               f"n={n}: square decomposition")
    for n in (3, 5, 6, 10):
        vec = triangular_vector(n)
        g = vec.group
        p = 3 if n % 3 == 0 else 5
        k = n // p
        g_y = quotient_signature(vec, g.subgroup([(1, 0)])).genus
        g_rot = quotient_signature(vec, g.subgroup([(0, 4 * k)])).genus
        expect_y = (n - 1) // 2 if n % 2 else (n - 2) // 2
        expect_rot = 1 if n % 2 else 2
        _check(failures, g_y == expect_y,
               f"n={n}: g(S/<y>) = {g_y} != {expect_y}")
        _check(failures, g_rot == expect_rot,
               f"n={n}: g(S/<x^4k>) = {g_rot} != {expect_rot}")
        _check(failures, 2 * g_y + g_rot == n,
               f"n={n}: mixed identity 2*{g_y}+{g_rot} != {n}")
    _finish(8, "Jacobian ledgers", t0, failures, 10.0)


def test_criterion_9_property_suites():
    t0 = time.time()
    failures = []

    # backtracking equals naive enumeration (n = 2, small signatures)
    from qdsurf.signatures import presentation

    g2 = quasi_dihedral(2)
    for sig, mode, target in (
        (NECSignature(0, True, (2, 4, 8), ()), RIEMANN, None),
        (parse_signature("(0;+;[2,4];{(-)})"), UNBORDERED, None),
        (NECSignature(1, False, (2, 2, 2), ()), RIEMANN, dihedral_index_two(g2)),
    ):
        skel = presentation(sig)
        pools = []
        for slot in skel.slots:
            if slot.kind == "elliptic":
                pool = g2.elements_of_order(slot.period)
            elif slot.kind == "reflection":
                pool = (g2.identity,) + g2.involutions()
            else:
                pool = g2.elements()
            pools.append([(slot.key, v) for v in pool])
        naive = set()
        for combo in product(*pools):
            vec = GeneratingVector(sig, g2, tuple(combo), mode, target)
            if check_vector(vec).ok:
                naive.add(tuple(v for _, v in combo))
        fast = {
            tuple(v for _, v in vec.images)
            for vec in enumerate_vectors(sig, g2, mode, target)
        }
        _check(failures, fast == naive, f"oracle mismatch on {sig.format()}")

    # coset-model fixed-point identity, exhaustively for n <= 6
    for n in range(2, 7):
        vec = triangular_vector(n)
        g = vec.group
        total = sum(
            fixed_point_count(vec, el) for el in g.elements() if el != g.identity
        )
        expected = sum(
            (g.order // g.element_order(c)) * (g.element_order(c) - 1)
            for c in vec.elliptic_images()
        )
        _check(failures, total == expected, f"n={n}: fixed-point identity")

    # signature text format round-trips on 1000 generated signatures
    rng = random.Random(424242)
    for _ in range(1000):
        orientable = rng.random() < 0.6
        h = rng.randint(0 if orientable else 1, 3)
        periods = tuple(rng.randint(2, 40) for _ in range(rng.randint(0, 6)))
        cycles = tuple(
            tuple(rng.randint(2, 15) for _ in range(rng.randint(0, 5)))
            for _ in range(rng.randint(0, 3))
        )
        sig = NECSignature(h, orientable, periods, cycles)
        if parse_signature(sig.format()) != sig:
            failures.append(f"round-trip failed for {sig.format()}")
            break

    # determinism across worker counts
    a = strong_symmetric_genus(2, workers=1).as_json_obj()
    b = strong_symmetric_genus(2, workers=2).as_json_obj()
    _check(failures, a == b, "sigma0 worker determinism")
    c = symmetric_crosscap(2, workers=1).as_json_obj()
    d = symmetric_crosscap(2, workers=2).as_json_obj()
    _check(failures, c == d, "crosscap worker determinism")

    _finish(9, "property suites", t0, failures, 120.0)
