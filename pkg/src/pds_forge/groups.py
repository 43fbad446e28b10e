"""Exact arithmetic in finite abelian groups.

A group is a product of prime-power cyclic factors in canonical order
(sorted by (prime, exponent)); elements are coordinate vectors reduced
componentwise.  Elements are also addressed by their mixed-radix rank with
the *first* (most significant) factor varying slowest, so subsets can be
stored as index sets or bitsets.  The rank function is part of the on-disk
contract of the verifier: index 0 is always the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt, lcm, prod

import numpy as np

from .arith import factorint, is_prime, is_prime_power
from .errors import DomainError, GroupMismatchError


def _canonical_key(factor: int) -> tuple[int, int]:
    ((p, e),) = factorint(factor).items()
    return (p, e)


@dataclass(frozen=True, order=True)
class GroupSpec:
    """A finite abelian group as a product of prime-power cyclic factors.

    Two specs describing isomorphic groups compare equal, because the
    primary decomposition is canonically sorted on construction.
    """

    factors: tuple[int, ...]

    def __init__(self, factors):
        factors = tuple(int(n) for n in factors)
        if not factors:
            raise DomainError("a group needs at least one factor")
        for n in factors:
            if not is_prime_power(n):
                raise DomainError(f"factor {n} is not a prime power")
        object.__setattr__(self, "factors", tuple(sorted(factors, key=_canonical_key)))

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse the CLI syntax: a comma-separated factor list, e.g. '2,2,2,5,5,5'."""
        try:
            factors = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError as exc:
            raise DomainError(f"bad group spec {text!r}") from exc
        return cls(factors)

    def __str__(self) -> str:
        return ",".join(str(n) for n in self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    # --- index <-> coordinates (most significant factor first) ---

    def coords_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise DomainError(f"index {index} out of range for group of order {self.order}")
        coords = []
        for n in reversed(self.factors):
            coords.append(index % n)
            index //= n
        return tuple(reversed(coords))

    def index_of(self, coords) -> int:
        coords = self.reduce(coords)
        index = 0
        for c, n in zip(coords, self.factors):
            index = index * n + c
        return index

    def reduce(self, coords) -> tuple[int, ...]:
        if len(coords) != len(self.factors):
            raise DomainError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        return tuple(c % n for c, n in zip(coords, self.factors))

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.factors))

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, coords)

    def elements(self):
        for i in range(self.order):
            yield GroupElement(self, self.coords_of(i))

    # --- index-level operations (used by the searcher's hot paths) ---

    def compose_idx(self, i: int, j: int) -> int:
        a, b = self.coords_of(i), self.coords_of(j)
        return self.index_of(tuple(x + y for x, y in zip(a, b)))

    def inverse_idx(self, i: int) -> int:
        return self.index_of(tuple(-c for c in self.coords_of(i)))

    def order_of_idx(self, i: int) -> int:
        coords = self.coords_of(i)
        return lcm(*(n // gcd(n, c) for c, n in zip(coords, self.factors)))

    def power_idx(self, i: int, s: int) -> int:
        return self.index_of(tuple(c * s for c in self.coords_of(i)))


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    coords: tuple[int, ...]

    def __init__(self, spec: GroupSpec, coords):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coords", spec.reduce(coords))

    @property
    def index(self) -> int:
        index = 0
        for c, n in zip(self.coords, self.spec.factors):
            index = index * n + c
        return index

    def _check(self, other: "GroupElement") -> None:
        if self.spec != other.spec:
            raise GroupMismatchError(f"elements of {self.spec} and {other.spec} cannot be combined")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.spec, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.spec, tuple(-c for c in self.coords))

    def __pow__(self, s: int) -> "GroupElement":
        return GroupElement(self.spec, tuple(c * s for c in self.coords))

    def order(self) -> int:
        return lcm(*(n // gcd(n, c) for c, n in zip(self.coords, self.spec.factors)))


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def inverse(a: GroupElement) -> GroupElement:
    return a.inverse()


def power(a: GroupElement, s: int) -> GroupElement:
    return a**s


def element_order(a: GroupElement) -> int:
    return a.order()


@dataclass(frozen=True)
class OrbitPartition:
    """Partition of a group into power-coprime classes {g^s : gcd(s, o(g)) = 1}.

    The identity is a singleton; every orbit is inverse-closed and has size
    phi(o(g)) for the common order o(g) of its members.
    """

    spec: GroupSpec
    orbits: tuple[tuple[int, ...], ...]


def lmt_orbits(spec: GroupSpec) -> OrbitPartition:
    """Partition element indices into classes closed under coprime powers."""
    v = spec.order
    seen = [False] * v
    orbits = []
    for i in range(v):
        if seen[i]:
            continue
        o = spec.order_of_idx(i)
        orbit = sorted({spec.power_idx(i, s) for s in range(1, o + 1) if gcd(s, o) == 1})
        for j in orbit:
            seen[j] = True
        orbits.append(tuple(orbit))
    orbits.sort(key=lambda orb: orb[0])
    return OrbitPartition(spec, tuple(orbits))


def sylow(spec: GroupSpec, q: int) -> tuple[GroupSpec, tuple[int, ...]]:
    """The Sylow q-subgroup and the indices of its elements inside the group.

    Returns (subgroup spec, embedding) where embedding[i] is the parent-group
    index of the subgroup element with rank i.
    """
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    if spec.order % q != 0:
        raise DomainError(f"{q} does not divide the group order {spec.order}")
    positions = [i for i, n in enumerate(spec.factors) if n % q == 0]
    sub = GroupSpec(tuple(spec.factors[i] for i in positions))
    embedding = []
    for s in range(sub.order):
        sub_coords = sub.coords_of(s)
        coords = [0] * len(spec.factors)
        for pos, c in zip(positions, sub_coords):
            coords[pos] = c
        embedding.append(spec.index_of(tuple(coords)))
    return sub, tuple(embedding)


# --- the projective plane induced by the subgroup lattice of Z_p^3 ---


def _projective_reps(p: int) -> list[tuple[int, int, int]]:
    """Lexicographically least generators of the 1-dimensional subspaces of F_p^3."""
    reps = [(0, 0, 1)]
    reps += [(0, 1, z) for z in range(p)]
    reps += [(1, y, z) for y in range(p) for z in range(p)]
    return sorted(reps)


@dataclass(frozen=True)
class PlaneDesign:
    """The projective plane of order p realized on the subgroup lattice of Z_p^3.

    points[i] / lines[j] are sorted tuples of element indices (the order-p
    resp. order-p^2 subgroups, identity included); incidence[i, j] is
    containment.
    """

    p: int
    spec: GroupSpec
    points: tuple[tuple[int, ...], ...]
    lines: tuple[tuple[int, ...], ...]
    incidence: np.ndarray = field(compare=False)


def build_plane(p: int) -> PlaneDesign:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    spec = GroupSpec((p, p, p))
    reps = _projective_reps(p)

    points = []
    for rep in reps:
        members = sorted(spec.index_of(tuple(s * c for c in rep)) for s in range(p))
        points.append(tuple(members))

    # Order-p^2 subgroups are exactly the kernels of the nonzero functionals,
    # so the same rep list doubles as the list of line normals.
    lines = []
    line_point_sets = []
    for normal in reps:
        incident = [
            i for i, rep in enumerate(reps)
            if sum(a * b for a, b in zip(normal, rep)) % p == 0
        ]
        members = sorted(
            idx for idx in range(spec.order)
            if sum(a * b for a, b in zip(normal, spec.coords_of(idx))) % p == 0
        )
        lines.append(tuple(members))
        line_point_sets.append(tuple(incident))

    order = sorted(range(len(lines)), key=lambda j: lines[j])
    lines = [lines[j] for j in order]
    line_point_sets = [line_point_sets[j] for j in order]

    n = len(reps)
    incidence = np.zeros((n, n), dtype=bool)
    for j, incident in enumerate(line_point_sets):
        for i in incident:
            incidence[i, j] = True
    return PlaneDesign(p, spec, tuple(points), tuple(lines), incidence)
