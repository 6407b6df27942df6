"""Concrete model of G = D ⋊ E for cyclic D of order p^n.

D is written additively as Z/p^n and E as the unique subgroup of order e
of the unit group (Z/p^n)^*, acting by multiplication.  Group elements
are pairs (x, r) with x in Z/p^n and r a unit in E, multiplying by

    (x, r) * (y, s) = (x + r*y mod p^n, r*s mod p^n).

The module also implements the subgroup calculus of G x G needed for
bimodule computations: restriction of automorphisms between levels,
automorphism cosets modulo the image of E, E-hat characters (written
additively as Z/e), explicit subgroups of G x G with shape tags and
linear characters, double cosets, star products, and conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    BadLevel,
    BadOrder,
    CharacterIllDefined,
    NotPrime,
    ParamsMismatch,
    TwoBlocked,
)
from .exactarith import is_prime

GElement = tuple  # (x, r) with x in Z/p^n and r a unit lying in E
GGPair = tuple  # (g, h) with g, h GElements


@dataclass(frozen=True)
class ModelParams:
    """The triple (p, n, e): |D| = p^n, |E| = e with e | p - 1."""

    p: int
    n: int
    e: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"p = {self.p} is not prime")
        if self.n < 1:
            raise BadOrder(f"n = {self.n} must be positive")
        if self.p == 2 and self.e > 1:
            raise TwoBlocked("p = 2 forces a trivial inertial subgroup")
        if self.e < 1 or (self.p - 1) % self.e != 0:
            raise BadOrder(f"e = {self.e} does not divide p - 1 = {self.p - 1}")

    # ---------------------------------------------------------------- sizes

    @cached_property
    def pn(self) -> int:
        return self.p**self.n

    @cached_property
    def group_order(self) -> int:
        return self.pn * self.e

    @cached_property
    def unit_group_order(self) -> int:
        return self.pn // self.p * (self.p - 1)

    @cached_property
    def multiplicity(self) -> int:
        """(p^n - 1)/e, the exceptional multiplicity of the model."""
        return (self.pn - 1) // self.e

    def nontrivial_coset_count(self, level: int) -> int:
        """(p^(n-level) - 1)/e; counts nontrivial double cosets at the level."""
        if not 0 <= level <= self.n:
            raise BadLevel(f"level {level} outside 0..{self.n}")
        return (self.p ** (self.n - level) - 1) // self.e

    # ------------------------------------------------------------- E and D

    @cached_property
    def primitive_root(self) -> int:
        """Smallest generator of the cyclic unit group (Z/p^n)^* (p odd)."""
        if self.p == 2:
            if self.pn <= 2:
                return 1
            if self.pn == 4:
                return 3
            raise BadOrder("the unit group mod 2^n is not cyclic for n >= 3")
        order = self.unit_group_order
        prime_factors = set()
        t, d = order, 2
        while d * d <= t:
            while t % d == 0:
                prime_factors.add(d)
                t //= d
            d += 1
        if t > 1:
            prime_factors.add(t)
        for g in range(2, self.pn):
            if g % self.p == 0:
                continue
            if all(pow(g, order // q, self.pn) != 1 for q in prime_factors):
                return g
        raise AssertionError("no primitive root found")

    @cached_property
    def e_generator(self) -> int:
        """Generator of E, the unique order-e subgroup of the units."""
        if self.e == 1:
            return 1
        return pow(self.primitive_root, self.unit_group_order // self.e, self.pn)

    @cached_property
    def subgroup_E(self) -> tuple[int, ...]:
        g = self.e_generator
        members = {1}
        cur = g
        while cur not in members:
            members.add(cur)
            cur = cur * g % self.pn
        assert len(members) == self.e
        return tuple(sorted(members))

    @cached_property
    def e_dlog(self) -> dict[int, int]:
        """Discrete log on E with respect to its generator; values mod e."""
        table = {}
        cur = 1
        for k in range(self.e):
            table[cur] = k
            cur = cur * self.e_generator % self.pn
        return table

    def d_subgroup(self, i: int) -> tuple[int, ...]:
        """Elements of D_i, the subgroup of D of order p^i."""
        if not 0 <= i <= self.n:
            raise BadLevel(f"level {i} outside 0..{self.n}")
        step = self.p ** (self.n - i)
        return tuple(range(0, self.pn, step))

    def die_elements(self, i: int) -> tuple[GElement, ...]:
        """Elements of D_i E in canonical (x, r) order; i = 0 gives E."""
        return tuple(
            (x, r) for x in self.d_subgroup(i) for r in self.subgroup_E
        )

    # --------------------------------------------------------- element ops

    @property
    def identity(self) -> GElement:
        return (0, 1)

    def g_mul(self, a: GElement, b: GElement) -> GElement:
        x, r = a
        y, s = b
        return ((x + r * y) % self.pn, r * s % self.pn)

    def g_inv(self, a: GElement) -> GElement:
        x, r = a
        ri = pow(r, -1, self.pn)
        return (-ri * x % self.pn, ri)

    def g_conj(self, s: GElement, a: GElement) -> GElement:
        return self.g_mul(self.g_mul(s, a), self.g_inv(s))

    def g_elements(self) -> tuple[GElement, ...]:
        return tuple((x, r) for x in range(self.pn) for r in self.subgroup_E)

    def char_value(self, lam: int, r: int) -> int:
        """Value (mod e) of the additive character lam on the unit r in E."""
        return lam * self.e_dlog[r] % self.e if self.e > 1 else 0


def make_params(p: int, n: int, e: int) -> ModelParams:
    return ModelParams(p, n, e)


# --------------------------------------------------------------------------
# restriction maps and automorphism cosets
# --------------------------------------------------------------------------


def pi(params: ModelParams, i: int, unit: int) -> int:
    """Restrict an automorphism (a unit) to level i: reduction mod p^i."""
    if not 1 <= i <= params.n:
        raise BadLevel(f"level {i} outside 1..{params.n}")
    if unit % params.p == 0:
        raise BadOrder(f"{unit} is not a unit (divisible by {params.p})")
    return unit % params.p**i


@lru_cache(maxsize=None)
def _pi_e_image(params: ModelParams, i: int) -> tuple[int, ...]:
    return tuple(sorted({s % params.p**i for s in params.subgroup_E}))


@dataclass(frozen=True)
class AutCoset:
    """A coset of the image of E inside Aut(D_i), by its least representative."""

    level: int
    rep: int

    def members(self, params: ModelParams) -> tuple[int, ...]:
        q = params.p**self.level
        return tuple(sorted(self.rep * s % q for s in _pi_e_image(params, self.level)))


def canonical_coset(params: ModelParams, i: int, unit: int) -> AutCoset:
    if not 1 <= i <= params.n:
        raise BadLevel(f"level {i} outside 1..{params.n}")
    if unit % params.p == 0:
        raise BadOrder(f"{unit} is not a unit (divisible by {params.p})")
    q = params.p**i
    rep = min(unit * s % q for s in _pi_e_image(params, i))
    return AutCoset(level=i, rep=rep)


def coset_mul(params: ModelParams, a: AutCoset, b: AutCoset) -> AutCoset:
    if a.level != b.level:
        raise BadLevel("cosets at different levels")
    return canonical_coset(params, a.level, a.rep * b.rep % params.p**a.level)


def coset_restrict(params: ModelParams, a: AutCoset, k: int) -> AutCoset:
    if k > a.level:
        raise BadLevel("cannot restrict to a higher level")
    return canonical_coset(params, k, a.rep % params.p**k)


# --------------------------------------------------------------------------
# subgroups of G x G
# --------------------------------------------------------------------------

TAG_EXE = "ExE"
TAG_EXONE = "ExOne"
TAG_ONEXE = "OnexE"
TAG_DIAG_P = "TwistedDiagP"
TAG_DIAG_PE = "TwistedDiagPE"
TAG_EXPLICIT = "Explicit"


class SubgroupGG:
    """A subgroup of G x G with a shape tag and optional linear character.

    The character maps each element to Z/e (additive); when present it is
    checked to be a homomorphism.
    """

    def __init__(self, params, tag, elements, character=None, check=True):
        self.params = params
        self.tag = tag
        self.elements = frozenset(elements)
        self.character = dict(character) if character is not None else None
        if check:
            self._check_subgroup()
            if self.character is not None:
                self._check_character()

    # ------------------------------------------------------------- checks

    def _check_subgroup(self):
        params = self.params
        ident = (params.identity, params.identity)
        if ident not in self.elements:
            raise ValueError("subgroup misses the identity")
        for a1, a2 in self.elements:
            inv = (params.g_inv(a1), params.g_inv(a2))
            if inv not in self.elements:
                raise ValueError("subgroup not closed under inverses")
        for a1, a2 in self.elements:
            for b1, b2 in self.elements:
                prod = (params.g_mul(a1, b1), params.g_mul(a2, b2))
                if prod not in self.elements:
                    raise ValueError("subgroup not closed under products")

    def _check_character(self):
        params = self.params
        chi = self.character
        if set(chi) != set(self.elements):
            raise CharacterIllDefined("character not defined on every element")
        for a in self.elements:
            for b in self.elements:
                prod = (params.g_mul(a[0], b[0]), params.g_mul(a[1], b[1]))
                if chi[prod] != (chi[a] + chi[b]) % params.e:
                    raise CharacterIllDefined(
                        f"character is not a homomorphism at {a} * {b}"
                    )

    # -------------------------------------------------------------- views

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupGG)
            and self.params == other.params
            and self.elements == other.elements
            and self.character == other.character
        )

    def __repr__(self):
        return f"SubgroupGG(tag={self.tag}, order={len(self.elements)})"

    def first_projection(self) -> frozenset:
        return frozenset(a for a, _ in self.elements)

    def second_projection(self) -> frozenset:
        return frozenset(b for _, b in self.elements)

    def left_kernel(self) -> frozenset:
        """k_1: elements g of G with (g, 1) in the subgroup."""
        ident = self.params.identity
        return frozenset(a for a, b in self.elements if b == ident)

    def right_kernel(self) -> frozenset:
        """k_2: elements h of G with (1, h) in the subgroup."""
        ident = self.params.identity
        return frozenset(b for a, b in self.elements if a == ident)

    def retagged(self) -> "SubgroupGG":
        tag = recognize_shape(self.params, self.elements)
        return SubgroupGG(
            self.params,
            tag if tag is not None else (TAG_EXPLICIT,),
            self.elements,
            self.character,
            check=False,
        )


# ----------------------------------------------------------- constructors


def _tilde(params, i, unit, g):
    """The automorphism of D_i E extending multiplication by the unit."""
    x, r = g
    return (unit * x % params.pn, r)


def subgroup_exe(params, lam=None, mu=None) -> SubgroupGG:
    """E x E; with characters, carries (rho, sigma) -> lam(rho) - mu(sigma)."""
    elements = [((0, r), (0, s)) for r in params.subgroup_E for s in params.subgroup_E]
    character = None
    if lam is not None:
        character = {
            ((0, r), (0, s)): (params.char_value(lam, r) - params.char_value(mu, s))
            % params.e
            for r in params.subgroup_E
            for s in params.subgroup_E
        }
    return SubgroupGG(params, (TAG_EXE,), elements, character)


def subgroup_exone(params, lam=None) -> SubgroupGG:
    elements = [((0, r), params.identity) for r in params.subgroup_E]
    character = None
    if lam is not None:
        character = {
            ((0, r), params.identity): params.char_value(lam, r)
            for r in params.subgroup_E
        }
    return SubgroupGG(params, (TAG_EXONE,), elements, character)


def subgroup_onexe(params, mu=None) -> SubgroupGG:
    elements = [(params.identity, (0, s)) for s in params.subgroup_E]
    character = None
    if mu is not None:
        character = {
            (params.identity, (0, s)): params.char_value(mu, s)
            for s in params.subgroup_E
        }
    return SubgroupGG(params, (TAG_ONEXE,), elements, character)


def subgroup_diag_p(params, i, unit) -> SubgroupGG:
    """Twisted diagonal of D_i: {(unit*y, y) : y in D_i}."""
    if not 1 <= i <= params.n:
        raise BadLevel(f"level {i} outside 1..{params.n}")
    elements = [((unit * y % params.pn, 1), (y, 1)) for y in params.d_subgroup(i)]
    return SubgroupGG(params, (TAG_DIAG_P, i, unit % params.p**i), elements)


def subgroup_diag_pe(params, i, unit, lam=None) -> SubgroupGG:
    """Twisted diagonal of D_i E; with a character it is lam on the E part."""
    if not 1 <= i <= params.n:
        raise BadLevel(f"level {i} outside 1..{params.n}")
    elements = []
    character = {} if lam is not None else None
    for g in params.die_elements(i):
        pair = (_tilde(params, i, unit, g), g)
        elements.append(pair)
        if character is not None:
            character[pair] = params.char_value(lam, g[1])
    return SubgroupGG(
        params, (TAG_DIAG_PE, i, unit % params.p**i), elements, character
    )


def delta_g(params) -> SubgroupGG:
    """The plain diagonal of G."""
    return subgroup_diag_pe(params, params.n, 1)


# --------------------------------------------------------- shape recognition


def recognize_shape(params, elements) -> tuple | None:
    """Match an explicit element set against the known shapes, or None."""
    elements = frozenset(elements)
    e_set = frozenset((0, r) for r in params.subgroup_E)
    ident = params.identity
    if elements == frozenset((a, b) for a in e_set for b in e_set):
        return (TAG_EXE,)
    if elements == frozenset((a, ident) for a in e_set):
        return (TAG_EXONE,)
    if elements == frozenset((ident, b) for b in e_set):
        return (TAG_ONEXE,)
    second = frozenset(b for _, b in elements)
    if len(second) != len(elements):
        return None
    # candidate twisted diagonal: the set is the graph of a map on `second`
    for i in range(params.n, 0, -1):
        d_i = frozenset((y, 1) for y in params.d_subgroup(i))
        if second == d_i:
            kinds = (TAG_DIAG_P, i)
            break
        die = frozenset(params.die_elements(i))
        if second == die:
            kinds = (TAG_DIAG_PE, i)
            break
    else:
        return None
    tag_name, i = kinds
    gen = (params.p ** (params.n - i), 1)
    graph = dict((b, a) for a, b in elements)
    img = graph[gen]
    if img[1] != 1 or img[0] % params.p ** (params.n - i) != 0:
        return None
    unit = img[0] // params.p ** (params.n - i)
    if unit % params.p == 0:
        return None
    unit %= params.p**i
    for b, a in graph.items():
        y, r = b
        if a != (unit * y % params.pn, r):
            return None
    return (tag_name, i, unit)


# --------------------------------------------------------------- star, conj


def star(x: SubgroupGG, y: SubgroupGG) -> SubgroupGG:
    """The composition subgroup {(g, k) : (g, h) in X, (h, k) in Y}.

    When both factors carry characters the result carries the sum through
    any connecting element; disagreement between connecting elements raises
    CharacterIllDefined.
    """
    if x.params != y.params:
        raise ParamsMismatch("star of subgroups over different params")
    params = x.params
    by_first: dict = {}
    for h, k in y.elements:
        by_first.setdefault(h, []).append(k)
    with_chars = x.character is not None and y.character is not None
    elements = set()
    character = {} if with_chars else None
    for g, h in x.elements:
        for k in by_first.get(h, ()):
            pair = (g, k)
            elements.add(pair)
            if with_chars:
                value = (x.character[(g, h)] + y.character[(h, k)]) % params.e
                if character.setdefault(pair, value) != value:
                    raise CharacterIllDefined(
                        f"connecting elements disagree at {pair}"
                    )
    return SubgroupGG(
        params, (TAG_EXPLICIT,), elements, character, check=False
    ).retagged()


def conj(s: GGPair, x: SubgroupGG) -> SubgroupGG:
    """Conjugate a subgroup of G x G by the pair s, transporting characters."""
    params = x.params
    s1, s2 = s
    elements = set()
    character = {} if x.character is not None else None
    for a, b in x.elements:
        pair = (params.g_conj(s1, a), params.g_conj(s2, b))
        elements.add(pair)
        if character is not None:
            character[pair] = x.character[(a, b)]
    return SubgroupGG(
        params, (TAG_EXPLICIT,), elements, character, check=False
    ).retagged()


# --------------------------------------------------------------------------
# index tables and double cosets
#
# Elements of G are indexed in lexicographic (x, r) order; index 0 is the
# identity.  The multiplication table lets the brute-force scans below run
# as numpy index arithmetic, which keeps them exact.
# --------------------------------------------------------------------------


class GroupTable:
    def __init__(self, params: ModelParams):
        self.params = params
        self.elems = list(params.g_elements())
        self.index = {g: i for i, g in enumerate(self.elems)}
        order = len(self.elems)
        mul = np.empty((order, order), dtype=np.int32)
        for i, a in enumerate(self.elems):
            for j, b in enumerate(self.elems):
                mul[i, j] = self.index[params.g_mul(a, b)]
        self.mul = mul
        inv = np.empty(order, dtype=np.int32)
        for i, a in enumerate(self.elems):
            inv[i] = self.index[params.g_inv(a)]
        self.inv = inv

    def subgroup_indices(self, level: int) -> np.ndarray:
        members = self.params.die_elements(level)
        return np.array(sorted(self.index[g] for g in members), dtype=np.int32)


@lru_cache(maxsize=None)
def group_table(params: ModelParams) -> GroupTable:
    return GroupTable(params)


@lru_cache(maxsize=None)
def double_coset_partition(params: ModelParams, i: int, j: int) -> tuple:
    """(D_i E, D_j E)-double cosets as index tuples, in order of least member."""
    if not (0 <= i <= params.n and 0 <= j <= params.n):
        raise BadLevel("levels outside range")
    table = group_table(params)
    left = table.subgroup_indices(i)
    right = table.subgroup_indices(j)
    order = len(table.elems)
    seen = np.zeros(order, dtype=bool)
    cosets = []
    for g in range(order):
        if seen[g]:
            continue
        block = np.unique(table.mul[np.ix_(table.mul[left, g], right)])
        seen[block] = True
        cosets.append(tuple(int(x) for x in block))
    return tuple(cosets)


def double_cosets(params: ModelParams, i: int, j: int) -> list[GElement]:
    """Canonical representatives: identity's coset first, then least-first."""
    table = group_table(params)
    return [table.elems[block[0]] for block in double_coset_partition(params, i, j)]


def double_cosets_in_d(params: ModelParams, i: int, j: int) -> list[GElement]:
    """One representative per double coset, chosen inside D."""
    table = group_table(params)
    reps = []
    for block in double_coset_partition(params, i, j):
        in_d = [table.elems[t] for t in block if table.elems[t][1] == 1]
        assert in_d, "every double coset meets D"
        reps.append(min(in_d))
    return reps


# --------------------------------------------------------------------------
# brute-force verification helpers (no structure theory used)
# --------------------------------------------------------------------------


def gg_generators(params: ModelParams) -> list[GGPair]:
    ident = params.identity
    gens = [((1, 1), ident), (ident, (1, 1))]
    if params.e > 1:
        gens += [((0, params.e_generator), ident), (ident, (0, params.e_generator))]
    return gens


def normalizer_bruteforce(params: ModelParams, sub: SubgroupGG) -> set[GGPair]:
    """All (s1, s2) in G x G normalizing the subgroup, by full scan."""
    table = group_table(params)
    order = len(table.elems)
    member = np.zeros((order, order), dtype=bool)
    for a, b in sub.elements:
        member[table.index[a], table.index[b]] = True
    mask = np.ones((order, order), dtype=bool)
    all_idx = np.arange(order, dtype=np.int32)
    for a, b in sub.elements:
        ga, gb = table.index[a], table.index[b]
        conj_a = table.mul[table.mul[all_idx, ga], table.inv[all_idx]]
        conj_b = table.mul[table.mul[all_idx, gb], table.inv[all_idx]]
        mask &= member[np.ix_(conj_a, conj_b)]
    out = set()
    for s1 in range(order):
        for s2 in np.nonzero(mask[s1])[0]:
            out.add((table.elems[s1], table.elems[int(s2)]))
    return out


def conjugate_subgroup_orbit(params: ModelParams, sub: SubgroupGG) -> set[frozenset]:
    """Orbit of the subgroup under G x G conjugation (generator closure)."""
    gens = gg_generators(params)
    start = frozenset(sub.elements)
    orbit = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for s1, s2 in gens:
            moved = frozenset(
                (params.g_conj(s1, a), params.g_conj(s2, b)) for a, b in cur
            )
            if moved not in orbit:
                orbit.add(moved)
                frontier.append(moved)
    return orbit


def are_conjugate_bruteforce(params, sub_a: SubgroupGG, sub_b: SubgroupGG) -> bool:
    if len(sub_a) != len(sub_b):
        return False
    return frozenset(sub_b.elements) in conjugate_subgroup_orbit(params, sub_a)
