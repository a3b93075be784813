"""Regular dessins d'enfants of two-generator groups.

A generating pair (a, b) acts on the group by right multiplication; white
vertices are the cycles of the a-permutation, black vertices those of the
b-permutation, and faces the cycles of the (ba)-permutation.  Edge labels
are group elements in normal-form order, so every construction here is
deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .groups import DomainError, Element, FiniteGroup

Perm = Tuple[int, ...]


@dataclass(frozen=True)
class MonodromyPair:
    edge_count: int
    perm_white: Perm
    perm_black: Perm

    def __post_init__(self):
        for perm in (self.perm_white, self.perm_black):
            if sorted(perm) != list(range(self.edge_count)):
                raise DomainError("monodromy entries must be permutations of the edges")

    def is_transitive(self) -> bool:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for image in (self.perm_white[e], self.perm_black[e]):
                    if image not in seen:
                        seen.add(image)
                        nxt.append(image)
            frontier = nxt
        return len(seen) == self.edge_count

    def generated_group_order(self) -> int:
        identity = tuple(range(self.edge_count))
        seen = {identity}
        frontier = [identity]
        gens = [self.perm_white, self.perm_black]
        gens += [_perm_inverse(p) for p in gens]
        while frontier:
            nxt = []
            for p in frontier:
                for q in gens:
                    comp = tuple(q[p[i]] for i in range(self.edge_count))
                    if comp not in seen:
                        seen.add(comp)
                        nxt.append(comp)
            frontier = nxt
        return len(seen)


def _perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _cycles(p: Perm) -> List[Tuple[int, ...]]:
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cyc.append(cur)
            cur = p[cur]
        cycles.append(tuple(cyc))
    return cycles


def regular_monodromy(group: FiniteGroup, a: Element, b: Element) -> MonodromyPair:
    """Right-regular monodromy pair of a generating pair."""
    if not group.generates([a, b]):
        raise DomainError("the pair does not generate the group")
    elements = group.elements()
    index = {g: i for i, g in enumerate(elements)}
    white = tuple(index[group.mul(g, a)] for g in elements)
    black = tuple(index[group.mul(g, b)] for g in elements)
    return MonodromyPair(len(elements), white, black)


@dataclass(frozen=True)
class DessinGraph:
    white: Tuple[Tuple[int, int], ...]     # (vertex id, valency)
    black: Tuple[Tuple[int, int], ...]
    edges: Tuple[Tuple[int, int, int], ...]  # (white id, black id, multiplicity)
    face_lengths: Tuple[int, ...]
    genus: int

    @property
    def edge_count(self) -> int:
        return sum(mult for _, _, mult in self.edges)

    @property
    def face_count(self) -> int:
        return len(self.face_lengths)

    def as_json_obj(self) -> dict:
        return {
            "white": [{"id": i, "valency": v} for i, v in self.white],
            "black": [{"id": i, "valency": v} for i, v in self.black],
            "edges": [
                {"white": w, "black": b, "multiplicity": m} for w, b, m in self.edges
            ],
            "faces": list(self.face_lengths),
            "genus": self.genus,
        }

    def as_json(self) -> str:
        return json.dumps(self.as_json_obj(), sort_keys=True)

    def to_dot(self) -> str:
        lines = ["graph dessin {"]
        for i, _ in self.white:
            lines.append(f'  w{i} [shape=circle, style=filled, fillcolor=white, label="w{i}"];')
        for i, _ in self.black:
            lines.append(f'  b{i} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label="b{i}"];')
        for w, b, mult in self.edges:
            for _ in range(mult):
                lines.append(f"  w{w} -- b{b};")
        lines.append("}")
        return "\n".join(lines)


def dessin_data(pair: MonodromyPair) -> DessinGraph:
    """Vertices, edge multiset, faces and genus of the bipartite map."""
    if not pair.is_transitive():
        raise DomainError("the monodromy pair must act transitively")
    white_cycles = _cycles(pair.perm_white)
    black_cycles = _cycles(pair.perm_black)
    face_perm = tuple(pair.perm_white[pair.perm_black[i]] for i in range(pair.edge_count))
    face_cycles = _cycles(face_perm)

    white = tuple((i, len(c)) for i, c in enumerate(white_cycles))
    black = tuple((i, len(c)) for i, c in enumerate(black_cycles))
    white_of = {}
    for i, c in enumerate(white_cycles):
        for e in c:
            white_of[e] = i
    black_of = {}
    for i, c in enumerate(black_cycles):
        for e in c:
            black_of[e] = i
    mult: Dict[Tuple[int, int], int] = {}
    for e in range(pair.edge_count):
        key = (white_of[e], black_of[e])
        mult[key] = mult.get(key, 0) + 1
    edges = tuple(sorted((w, b, m) for (w, b), m in mult.items()))

    vertices = len(white_cycles) + len(black_cycles)
    euler = vertices - pair.edge_count + len(face_cycles)
    if euler % 2:
        raise AssertionError("odd Euler characteristic for a closed surface")
    genus = (2 - euler) // 2
    if genus < 0:
        raise AssertionError("negative genus from the Euler formula")
    graph = DessinGraph(
        white, black, edges, tuple(sorted(len(c) for c in face_cycles)), genus
    )
    if sum(v for _, v in graph.white) != pair.edge_count:
        raise AssertionError("white valencies must sum to the edge count")
    if sum(v for _, v in graph.black) != pair.edge_count:
        raise AssertionError("black valencies must sum to the edge count")
    return graph


def generator_pair_classes(group: FiniteGroup) -> List[Tuple[Element, Element]]:
    """Generating pairs up to simultaneous conjugation, deterministically."""
    elements = group.elements()
    seen: set = set()
    reps: List[Tuple[Element, Element]] = []
    for a in elements:
        for b in elements:
            if (a, b) in seen:
                continue
            if not group.generates([a, b]):
                continue
            orbit = {(group.conj(a, h), group.conj(b, h)) for h in elements}
            seen |= orbit
            reps.append(min(orbit))
    reps.sort()
    return reps
