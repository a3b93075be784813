"""Static data quoted from the classification literature.

These facts are consumed as lookup tables, never re-derived: the list of
Fuchsian signatures that always extend to a larger group, the handful of NEC
signature extensions used by the minimal-genus arguments, and closed-form
bordered/crosscap genera of the standard order-4n subgroups.
"""

from __future__ import annotations

from typing import List, Optional

from .signatures import NECSignature, parse_signature


def fuchsian_always_extends(sig: NECSignature) -> Optional[str]:
    """Name of the extension row when every group of this signature extends.

    Matches the classical table of non-finitely-maximal Fuchsian signatures;
    ``None`` means the signature is (generically) finitely maximal, so an
    action with this quotient can be chosen with full automorphism group
    equal to the acting group.
    """
    c = sig.canonical()
    if not c.orientable or c.period_cycles:
        return None
    h, periods = c.genus, c.proper_periods
    r = len(periods)
    if h == 2 and r == 0:
        return "(2;[-]) < (0;[2,2,2,2,2,2])"
    if h == 1 and r == 1:
        return "(1;[t]) < (0;[2,2,2,2t])"
    if h == 1 and r == 2 and periods[0] == periods[1]:
        return "(1;[t,t]) < (0;[2,2,2,2,t])"
    if h == 0 and r == 4:
        a, b, cc, d = periods
        if a == b == cc == d:
            return "(0;[t,t,t,t]) < (0;[2,2,2,t])"
        if a == b and cc == d:
            return "(0;[t,t,u,u]) < (0;[2,2,t,u])"
    if h == 0 and r == 3:
        a, b, cc = periods
        if a == b or b == cc or a == cc:
            return "(0;[t,t,u]) < (0;[2,t,2u])"
        sporadic = {
            (7, 7, 7): "(0;[7,7,7]) < (0;[2,3,7])",
            (2, 7, 7): "(0;[2,7,7]) < (0;[2,3,7])",
            (3, 3, 7): "(0;[3,3,7]) < (0;[2,3,7])",
            (4, 8, 8): "(0;[4,8,8]) < (0;[2,3,8])",
            (3, 8, 8): "(0;[3,8,8]) < (0;[2,3,8])",
            (9, 9, 9): "(0;[9,9,9]) < (0;[2,3,9])",
            (4, 4, 5): "(0;[4,4,5]) < (0;[2,4,5])",
        }
        if (a, b, cc) in sporadic:
            return sporadic[(a, b, cc)]
        if b == 4 * a and cc == 4 * a:
            return "(0;[t,4t,4t]) < (0;[2,3,4t])"
        if b == 2 * a and cc == 2 * a:
            return "(0;[t,2t,2t]) < (0;[2,4,2t])"
        if a == 3 and cc == 3 * b:
            return "(0;[3,t,3t]) < (0;[2,3,3t])"
        if a == 2 and cc == 2 * b:
            return "(0;[2,t,2t]) < (0;[2,3,2t])"
    return None


_NEC_EXTENSION_ROWS = {
    "(0;+;[4,4];{(-)})": ["(0;+;[2,4];{(-)})", "(0;+;[4];{(2,2)})"],
    "(1;-;[4,4];{-})": ["(0;+;[2,4];{(-)})"],
    "(1;-;[2,4];{-})": ["(0;+;[2];{(2,4)})"],
}


def extension_lookup(sig: NECSignature) -> List[NECSignature]:
    """Recorded index-two NEC extensions of the given signature."""
    rows = _NEC_EXTENSION_ROWS.get(sig.canonical().format(), [])
    return [parse_signature(s) for s in rows]


def bordered_genus_dicyclic(n: int) -> int:
    """Bordered (real) genus of the dicyclic subgroup of order 4n."""
    return 6 if n == 3 else 2 * n + 1


def crosscap_cyclic(n: int) -> int:
    """Crosscap number of the cyclic subgroup of order 4n."""
    return 2 * n + 1


def crosscap_dihedral(half: int) -> int:
    """Crosscap number of the dihedral group of order 2*half (when above 1)."""
    return half + 1 if half % 2 == 0 else half


def crosscap_dicyclic(n: int) -> int:
    """Crosscap number of the dicyclic subgroup of order 4n."""
    return 7 if n == 3 else 2 * n + 2
