"""Exact arithmetic and structure theory for the finite groups used here.

Elements live in a fixed normal form: a torsion bit ``j``, an exponent ``i``
modulo the order of the distinguished cyclic subgroup, and (for direct
products with a cyclic factor) one extra cyclic coordinate ``c``.  Elements
are plain tuples, so they hash, sort and pickle cheaply; groups are immutable
after construction and cache derived data lazily.  Everything here is a pure
function of its inputs, which keeps concurrent callers safe without locks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

Element = Tuple[int, ...]


class UnsupportedFamilyError(ValueError):
    """Raised when an operation is only defined for specific group families."""


class DomainError(ValueError):
    """Raised when an element does not belong to the group at hand."""


def _gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if _gcd(k, n) == 1)


class FiniteGroup:
    """Base class: a finite group on normal-form tuples.

    Subclasses provide ``order``, ``identity``, ``mul``, ``inv``,
    ``_element_iter`` and ``render``; everything else is derived and cached.
    """

    name: str = "G"

    # -- primitive operations -------------------------------------------------

    @property
    def order(self) -> int:
        raise NotImplementedError

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def _element_iter(self) -> Iterable[Element]:
        raise NotImplementedError

    def contains(self, g: Element) -> bool:
        raise NotImplementedError

    def render(self, g: Element) -> str:
        raise NotImplementedError

    def key(self) -> tuple:
        raise NotImplementedError

    # -- derived, cached ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"<{self.name} order={self.order}>"

    def check_member(self, g: Element) -> None:
        if not self.contains(g):
            raise DomainError(f"{g!r} is not an element of {self.name}")

    def elements(self) -> Tuple[Element, ...]:
        cached = self.__dict__.get("_elements")
        if cached is None:
            cached = tuple(sorted(self._element_iter()))
            if len(cached) != self.order:
                raise AssertionError(
                    f"{self.name}: {len(cached)} normal forms != order {self.order}"
                )
            self.__dict__["_elements"] = cached
        return cached

    def conj(self, g: Element, h: Element) -> Element:
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def commutator(self, a: Element, b: Element) -> Element:
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def power(self, g: Element, k: int) -> Element:
        if k < 0:
            return self.power(self.inv(g), -k)
        acc = self.identity
        base = g
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, g: Element) -> int:
        orders = self.__dict__.setdefault("_order_cache", {})
        got = orders.get(g)
        if got is None:
            self.check_member(g)
            k = 1
            acc = g
            while acc != self.identity:
                acc = self.mul(acc, g)
                k += 1
            orders[g] = got = k
        return got

    def elements_of_order(self, k: int) -> Tuple[Element, ...]:
        census = self.__dict__.get("_census")
        if census is None:
            census = {}
            for g in self.elements():
                census.setdefault(self.element_order(g), []).append(g)
            census = {o: tuple(v) for o, v in census.items()}
            self.__dict__["_census"] = census
        return census.get(k, ())

    def order_census(self) -> Dict[int, int]:
        self.elements_of_order(1)
        return {o: len(v) for o, v in self.__dict__["_census"].items()}

    def involutions(self) -> Tuple[Element, ...]:
        return self.elements_of_order(2)

    def involution_count(self) -> int:
        return len(self.involutions())

    def is_abelian(self) -> bool:
        got = self.__dict__.get("_abelian")
        if got is None:
            els = self.elements()
            got = all(
                self.mul(a, b) == self.mul(b, a) for a in els for b in els
            )
            self.__dict__["_abelian"] = got
        return got

    def conjugacy_classes(self) -> Tuple[Tuple[Element, FrozenSet[Element]], ...]:
        """Classes as (lexicographically least representative, member set)."""
        got = self.__dict__.get("_classes")
        if got is None:
            els = self.elements()
            seen: set = set()
            classes = []
            for g in els:
                if g in seen:
                    continue
                cls = frozenset(self.conj(g, h) for h in els)
                seen |= cls
                classes.append((min(cls), cls))
            got = tuple(sorted(classes))
            self.__dict__["_classes"] = got
        return got

    def class_of(self, g: Element) -> FrozenSet[Element]:
        lookup = self.__dict__.get("_class_lookup")
        if lookup is None:
            lookup = {}
            for _, cls in self.conjugacy_classes():
                for member in cls:
                    lookup[member] = cls
            self.__dict__["_class_lookup"] = lookup
        return lookup[g]

    def centralizer_order(self, g: Element) -> int:
        return self.order // len(self.class_of(g))

    def center(self) -> FrozenSet[Element]:
        els = self.elements()
        return frozenset(
            g for g in els if all(self.mul(g, h) == self.mul(h, g) for h in els)
        )

    def subgroup_closure(self, gens: Iterable[Element]) -> FrozenSet[Element]:
        frontier = [self.identity] + [g for g in gens]
        seen = set(frontier)
        gens = list(dict.fromkeys(gens))
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    for prod in (self.mul(h, g), self.mul(h, self.inv(g))):
                        if prod not in seen:
                            seen.add(prod)
                            nxt.append(prod)
            frontier = nxt
        return frozenset(seen)

    def generates(self, gens: Iterable[Element]) -> bool:
        return len(self.subgroup_closure(gens)) == self.order

    def subgroup(self, gens: Iterable[Element]) -> "Subgroup":
        gens = tuple(dict.fromkeys(gens))
        for g in gens:
            self.check_member(g)
        return Subgroup(self, self.subgroup_closure(gens), gens)

    def cyclic_subgroup(self, g: Element) -> "Subgroup":
        return self.subgroup([g])

    def square_roots(self, g: Element) -> Tuple[Element, ...]:
        table = self.__dict__.get("_sqrt")
        if table is None:
            table = {}
            for h in self.elements():
                table.setdefault(self.mul(h, h), []).append(h)
            table = {k: tuple(v) for k, v in table.items()}
            self.__dict__["_sqrt"] = table
        return table.get(g, ())

    def commutator_subgroup(self) -> FrozenSet[Element]:
        els = self.elements()
        gens = {self.commutator(a, b) for a in els for b in els}
        return self.subgroup_closure(gens)

    def index_two_subgroups(self) -> List["Subgroup"]:
        """Kernels of all surjections onto the group of order two.

        Computed through the elementary-abelian quotient: every index-two
        subgroup contains each square and each commutator, so it is pulled
        back from a hyperplane of G / <squares, commutators>.
        """
        els = self.elements()
        m_gens = {self.mul(g, g) for g in els}
        m_gens |= {self.commutator(a, b) for a in els for b in els}
        m = self.subgroup_closure(m_gens)
        if self.order % (2 * len(m)) != 0:
            return []
        # coset space of M, as frozensets
        cosets: List[FrozenSet[Element]] = []
        assigned: Dict[Element, int] = {}
        for g in els:
            if g in assigned:
                continue
            coset = frozenset(self.mul(g, h) for h in m)
            idx = len(cosets)
            cosets.append(coset)
            for member in coset:
                assigned[member] = idx
        k = len(cosets)
        if k == 1:
            return []
        # quotient is elementary abelian of order k = 2^d; subgroups of index
        # two correspond to its nontrivial characters.
        id_idx = assigned[self.identity]
        out = []
        # quotient is elementary abelian of order k = 2^d; index-two subgroups
        # are unions of half the cosets closed under multiplication.
        for mask in range(1, 1 << k):
            chosen = [i for i in range(k) if (mask >> i) & 1]
            if len(chosen) != k // 2 or id_idx not in chosen:
                continue
            members = frozenset().union(*(cosets[i] for i in chosen))
            closed = True
            sample = [min(c) for c in (cosets[i] for i in chosen)]
            for a in sample:
                for b in sample:
                    if assigned[self.mul(a, b)] not in chosen:
                        closed = False
                        break
                if not closed:
                    break
            if closed:
                gens = _small_generating_set(self, members)
                out.append(Subgroup(self, members, gens))
        out.sort(key=lambda s: sorted(s.elements))
        return out

    def index_two_subgroup_containing(self, elements: Iterable[Element]) -> List["Subgroup"]:
        need = list(elements)
        return [s for s in self.index_two_subgroups() if all(s.contains(g) for g in need)]


def _small_generating_set(group: FiniteGroup, members: FrozenSet[Element]) -> Tuple[Element, ...]:
    picked: List[Element] = []
    have: FrozenSet[Element] = frozenset([group.identity])
    for g in sorted(members):
        if g in have:
            continue
        picked.append(g)
        have = group.subgroup_closure(picked)
        if have == members:
            break
    return tuple(picked)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a parent group: element set plus a generator list."""

    parent: FiniteGroup
    elements: FrozenSet[Element]
    generators: Tuple[Element, ...]

    def __post_init__(self):
        if self.parent.identity not in self.elements:
            raise DomainError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def contains(self, g: Element) -> bool:
        return g in self.elements

    def as_group(self) -> "SubgroupViewGroup":
        return SubgroupViewGroup(self)

    def sorted_elements(self) -> Tuple[Element, ...]:
        return tuple(sorted(self.elements))

    def left_cosets(self) -> Tuple[FrozenSet[Element], ...]:
        seen: set = set()
        out = []
        for g in self.parent.elements():
            if g in seen:
                continue
            coset = frozenset(self.parent.mul(g, h) for h in self.elements)
            seen |= coset
            out.append(coset)
        return tuple(out)

    # element-order census, used to tell C / D / DC apart in reports
    def iso_tag(self) -> str:
        view = self.as_group()
        n = view.order
        max_order = max(view.element_order(g) for g in view.elements())
        inv = view.involution_count()
        if max_order == n:
            return "cyclic"
        if n % 4 == 0 and inv == n // 2 + 1:
            return "dihedral"
        if n % 4 == 0 and inv == 1:
            return "dicyclic"
        return "other"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.elements))


class SemidirectC2Group(FiniteGroup):
    """C_N extended by an order-two element acting as exponent t, t^2 = 1 mod N.

    Normal form: (j, i) standing for y^j x^i with j in {0,1}, i mod N, and
    the rewriting rule y x^k = x^{t k} y.
    """

    def __init__(self, modulus: int, twist: int, letters: Tuple[str, str] = ("x", "y"),
                 name: Optional[str] = None):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        twist %= modulus
        if (twist * twist) % modulus != 1 % modulus:
            raise ValueError(f"twist {twist} is not an involution mod {modulus}")
        self.modulus = modulus
        self.twist = twist
        self.letters = letters
        self.name = name or f"C{modulus}:C2(t={twist})"

    def key(self) -> tuple:
        return ("semidirect", self.modulus, self.twist)

    @property
    def order(self) -> int:
        return 2 * self.modulus

    @property
    def identity(self) -> Element:
        return (0, 0)

    def element(self, j: int, i: int) -> Element:
        return (j % 2, i % self.modulus)

    def mul(self, a: Element, b: Element) -> Element:
        j1, i1 = a
        j2, i2 = b
        if j2:
            return ((j1 + j2) & 1, (i1 * self.twist + i2) % self.modulus)
        return (j1, (i1 + i2) % self.modulus)

    def inv(self, a: Element) -> Element:
        j, i = a
        if j:
            return (1, (-i * self.twist) % self.modulus)
        return (0, (-i) % self.modulus)

    def _element_iter(self) -> Iterable[Element]:
        return ((j, i) for j in (0, 1) for i in range(self.modulus))

    def contains(self, g: Element) -> bool:
        return (
            len(g) == 2
            and g[0] in (0, 1)
            and 0 <= g[1] < self.modulus
        )

    def render(self, g: Element) -> str:
        j, i = g
        xs, ys = self.letters[0], self.letters[1]
        parts = []
        if j:
            parts.append(ys)
        if i:
            parts.append(xs if i == 1 else f"{xs}^{i}")
        return "*".join(parts) if parts else "1"

    @property
    def cyclic_generator(self) -> Element:
        return (0, 1)

    @property
    def torsion_generator(self) -> Element:
        return (1, 0)

    def designated_generators(self) -> Tuple[Element, ...]:
        return (self.cyclic_generator, self.torsion_generator)


def quasi_dihedral(n: int) -> SemidirectC2Group:
    """The generalized quasi-dihedral group of order 8n (n >= 2)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return SemidirectC2Group(4 * n, 2 * n - 1, ("x", "y"), name=f"G{n}")


def doubled_quasi_dihedral(n: int) -> SemidirectC2Group:
    """Order-16n extension with the same twist; defined for odd n >= 3."""
    if n < 3 or n % 2 == 0:
        raise ValueError("defined for odd n >= 3 only")
    return SemidirectC2Group(8 * n, 2 * n - 1, ("z", "y"), name=f"Ghat{n}")


class ProductWithCyclicGroup(FiniteGroup):
    """Direct product of a SemidirectC2 group with a cyclic factor.

    Normal form: (j, i, c); the extra coordinate keeps report output readable
    instead of packing everything into one integer.
    """

    def __init__(self, inner: SemidirectC2Group, cyclic_order: int,
                 letter: str = "z", name: Optional[str] = None):
        if cyclic_order < 2:
            raise ValueError("cyclic factor must have order >= 2")
        self.inner = inner
        self.cyclic_order = cyclic_order
        self.letter = letter
        self.name = name or f"{inner.name}xC{cyclic_order}"

    def key(self) -> tuple:
        return ("product", self.inner.key(), self.cyclic_order)

    @property
    def order(self) -> int:
        return self.inner.order * self.cyclic_order

    @property
    def identity(self) -> Element:
        return (0, 0, 0)

    def element(self, j: int, i: int, c: int) -> Element:
        return (j % 2, i % self.inner.modulus, c % self.cyclic_order)

    def mul(self, a: Element, b: Element) -> Element:
        inner = self.inner.mul(a[:2], b[:2])
        return (inner[0], inner[1], (a[2] + b[2]) % self.cyclic_order)

    def inv(self, a: Element) -> Element:
        inner = self.inner.inv(a[:2])
        return (inner[0], inner[1], (-a[2]) % self.cyclic_order)

    def _element_iter(self) -> Iterable[Element]:
        return (
            (j, i, c)
            for j in (0, 1)
            for i in range(self.inner.modulus)
            for c in range(self.cyclic_order)
        )

    def contains(self, g: Element) -> bool:
        return (
            len(g) == 3
            and g[0] in (0, 1)
            and 0 <= g[1] < self.inner.modulus
            and 0 <= g[2] < self.cyclic_order
        )

    def render(self, g: Element) -> str:
        base = self.inner.render(g[:2])
        if g[2]:
            zpart = self.letter if g[2] == 1 else f"{self.letter}^{g[2]}"
            return zpart if base == "1" else f"{base}*{zpart}"
        return base

    def designated_generators(self) -> Tuple[Element, ...]:
        jx = self.inner.cyclic_generator
        jy = self.inner.torsion_generator
        return ((jx[0], jx[1], 0), (jy[0], jy[1], 0), (0, 0, 1))


def product_with_cyclic(inner: SemidirectC2Group, m: int, letter: str = "z") -> ProductWithCyclicGroup:
    return ProductWithCyclicGroup(inner, m, letter)


class SubgroupViewGroup(FiniteGroup):
    """A subgroup viewed as a group; multiplication delegates to the parent."""

    def __init__(self, subgroup: Subgroup):
        self.base = subgroup
        self.name = f"{subgroup.parent.name}|sub{subgroup.order}"

    def key(self) -> tuple:
        return ("view", self.base.parent.key(), tuple(sorted(self.base.elements)))

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def identity(self) -> Element:
        return self.base.parent.identity

    def mul(self, a: Element, b: Element) -> Element:
        return self.base.parent.mul(a, b)

    def inv(self, a: Element) -> Element:
        return self.base.parent.inv(a)

    def _element_iter(self) -> Iterable[Element]:
        return iter(self.base.elements)

    def contains(self, g: Element) -> bool:
        return g in self.base.elements

    def render(self, g: Element) -> str:
        return self.base.parent.render(g)

    def designated_generators(self) -> Tuple[Element, ...]:
        return self.base.generators


@dataclass(frozen=True)
class Automorphism:
    """An automorphism stored as an explicit bijection table.

    For the quasi-dihedral family the parameters (u, shift) with
    x -> x^u, y -> y x^shift are retained for reporting.
    """

    group: FiniteGroup
    mapping: Tuple[Tuple[Element, Element], ...]
    exponent: Optional[int] = None
    shift: Optional[int] = None

    def __post_init__(self):
        table = dict(self.mapping)
        object.__setattr__(self, "_table", table)
        if len(table) != self.group.order or len(set(table.values())) != self.group.order:
            raise ValueError("mapping is not a bijection on the group")

    def apply(self, g: Element) -> Element:
        return self._table[g]

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        mapping = tuple(sorted((g, self.apply(other.apply(g))) for g in self._table))
        return Automorphism(self.group, mapping)

    def inverse(self) -> "Automorphism":
        mapping = tuple(sorted((b, a) for a, b in self.mapping))
        return Automorphism(self.group, mapping)

    def verify(self) -> bool:
        els = self.group.elements()
        return all(
            self.apply(self.group.mul(a, b)) == self.group.mul(self.apply(a), self.apply(b))
            for a in els
            for b in els
        )

    def __hash__(self) -> int:
        return hash((self.group, self.mapping))


def automorphism_from_generator_images(
    group: SemidirectC2Group, x_image: Element, y_image: Element
) -> Optional[Automorphism]:
    """Build the homomorphism x -> x_image, y -> y_image if it exists."""
    n = group.modulus
    t = group.twist
    # relation checks
    if group.power(x_image, n) != group.identity:
        return None
    if group.mul(y_image, y_image) != group.identity:
        return None
    lhs = group.mul(group.mul(y_image, x_image), group.inv(y_image))
    if lhs != group.power(x_image, t):
        return None
    xpow = [group.identity]
    for _ in range(n - 1):
        xpow.append(group.mul(xpow[-1], x_image))
    pairs = []
    for j in (0, 1):
        lead = y_image if j else group.identity
        for i in range(n):
            pairs.append(((j, i), group.mul(lead, xpow[i])))
    images = {b for _, b in pairs}
    if len(images) != group.order:
        return None
    exponent = x_image[1] if x_image[0] == 0 else None
    shift = y_image[1] if y_image[0] == 1 else None
    return Automorphism(group, tuple(sorted(pairs)), exponent=exponent, shift=shift)


def automorphism_group(group: FiniteGroup) -> List[Automorphism]:
    """All automorphisms, for the semidirect family only.

    Images of the cyclic generator must again generate the cyclic normal
    subgroup and images of the torsion generator are involutions outside it;
    each candidate pair is verified to define a bijective homomorphism.
    """
    if not isinstance(group, SemidirectC2Group):
        raise UnsupportedFamilyError("generic-automorphisms-unavailable")
    n = group.modulus
    out: List[Automorphism] = []
    x_candidates = [(0, u) for u in range(1, n) if _gcd(u, n) == 1]
    y_candidates = [g for g in group.involutions() if g[0] == 1]
    for xi in x_candidates:
        for yi in y_candidates:
            auto = automorphism_from_generator_images(group, xi, yi)
            if auto is not None:
                out.append(auto)
    out.sort(key=lambda a: a.mapping)
    return out


def identity_automorphism(group: FiniteGroup) -> Automorphism:
    return Automorphism(group, tuple((g, g) for g in group.elements()))


# -- convenience accessors for the three index-two subgroups -----------------

def cyclic_index_two(g: SemidirectC2Group) -> Subgroup:
    """<x>."""
    return g.subgroup([g.cyclic_generator])


def dihedral_index_two(g: SemidirectC2Group) -> Subgroup:
    """<x^2, y>."""
    return g.subgroup([g.element(0, 2), g.torsion_generator])


def dicyclic_index_two(g: SemidirectC2Group) -> Subgroup:
    """<x^2, y x>."""
    return g.subgroup([g.element(0, 2), g.element(1, 1)])


INDEX_TWO_TAGS = {"C": cyclic_index_two, "D": dihedral_index_two, "DC": dicyclic_index_two}


def index_two_by_tag(g: SemidirectC2Group, tag: str) -> Subgroup:
    try:
        return INDEX_TWO_TAGS[tag](g)
    except KeyError:
        raise ValueError(f"unknown subgroup tag {tag!r}; expected C, D or DC") from None
