"""Ground-truth engine: exact difference counting, PDS verification, and
exhaustive backtracking search over inverse-closed building blocks.

The search treats the group as a set of atoms that any regular PDS must be a
union of: multiplier orbits when pruning is on (valid only for square Delta),
or plain inverse pairs {g, g^-1} otherwise.  The DFS core runs over
precomputed difference tables and is JIT-compiled when numba is available;
results are verified independently by difference_profile, which never goes
through the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .arith import is_perfect_square
from .errors import DomainError
from .groups import GroupSpec, lmt_orbits, sylow
from .params import PdsParams

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap

_MAX_SEARCH_ORDER = 4096
_SOLUTION_CAP = 8192


@dataclass(frozen=True)
class CandidateSet:
    """A subset of non-identity group elements, stored as sorted indices."""

    spec: GroupSpec
    members: tuple[int, ...]

    def __init__(self, spec: GroupSpec, members):
        members = tuple(sorted(set(int(m) for m in members)))
        for m in members:
            if not 0 <= m < spec.order:
                raise DomainError(f"element index {m} out of range")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)

    def coords(self) -> list[tuple[int, ...]]:
        return [self.spec.coords_of(m) for m in self.members]


@dataclass(frozen=True)
class DifferenceProfile:
    """counts[x] = number of ordered pairs (g, h) in D x D, g != h, gh^-1 = x."""

    spec: GroupSpec
    counts: dict[int, int]


@dataclass(frozen=True)
class PdsVerdict:
    size_ok: bool
    identity_excluded: bool
    inverse_closed: bool
    counts_ok: bool
    trivial: bool

    @property
    def valid(self) -> bool:
        return self.size_ok and self.identity_excluded and self.inverse_closed and self.counts_ok


def difference_profile(candidate: CandidateSet) -> DifferenceProfile:
    """Exact difference multiset of D, off the identity.

    Small sets use direct pair enumeration; dense sets switch to counting
    |D meet xD| per group element, which is cheaper once |D|^2 > v*log2(v).
    """
    spec = candidate.spec
    members = candidate.members
    if 0 in members:
        raise DomainError("difference profiles are defined for identity-free sets")
    v = spec.order
    counts: dict[int, int] = {}
    log2v = max(1, v.bit_length() - 1)
    if len(members) ** 2 <= v * log2v:
        inv = {h: spec.inverse_idx(h) for h in members}
        for g in members:
            for h in members:
                if g == h:
                    continue
                d = spec.compose_idx(g, inv[h])
                counts[d] = counts.get(d, 0) + 1
    else:
        member_set = set(members)
        for x in range(1, v):
            c = sum(1 for h in members if spec.compose_idx(x, h) in member_set)
            if c:
                counts[x] = c
    return DifferenceProfile(spec, counts)


def _is_subgroup(spec: GroupSpec, indices: set[int]) -> bool:
    if 0 not in indices:
        return False
    for g in indices:
        if spec.inverse_idx(g) not in indices:
            return False
        for h in indices:
            if spec.compose_idx(g, h) not in indices:
                return False
    return True


def verify_pds(candidate: CandidateSet, params: PdsParams) -> PdsVerdict:
    """Check D against (v, k, lambda, mu) and test triviality exactly."""
    spec = candidate.spec
    if spec.order != params.v:
        raise DomainError(f"group order {spec.order} does not match v = {params.v}")
    members = set(candidate.members)
    size_ok = len(members) == params.k
    identity_excluded = 0 not in members
    inverse_closed = all(spec.inverse_idx(g) in members for g in members)
    counts_ok = False
    if identity_excluded:
        profile = difference_profile(candidate).counts
        counts_ok = all(
            profile.get(x, 0) == (params.lam if x in members else params.mu)
            for x in range(1, spec.order)
        )
    trivial = _is_subgroup(spec, members | {0}) or _is_subgroup(
        spec, set(range(spec.order)) - members
    )
    return PdsVerdict(size_ok, identity_excluded, inverse_closed, counts_ok, trivial)


@njit(cache=True)
def _search_kernel(diff, flat, ptr, elem_atom, suffix, k, lam, mu, out):  # pragma: no cover
    v = diff.shape[0]
    natoms = ptr.shape[0] - 1
    counts = np.zeros(v, np.int32)
    members = np.empty(k, np.int32)
    in_d = np.zeros(v, np.int8)
    astate = np.zeros(natoms, np.int8)  # 0 undecided, 1 in, 2 out
    stage = np.zeros(natoms, np.int8)  # 1 include active, 2 exclude active
    maxlm = lam if lam > mu else mu
    nmem = 0
    nsol = 0
    pos = 0
    backtracking = False

    while pos >= 0:
        if not backtracking and (pos == natoms or nmem == k):
            if nmem == k:
                ok = True
                for x in range(1, v):
                    target = lam if in_d[x] == 1 else mu
                    if counts[x] != target:
                        ok = False
                        break
                if ok:
                    if nsol >= out.shape[0]:
                        return -1
                    for i in range(k):
                        out[nsol, i] = members[i]
                    # insertion sort for deterministic member order
                    for i in range(1, k):
                        key = out[nsol, i]
                        j = i - 1
                        while j >= 0 and out[nsol, j] > key:
                            out[nsol, j + 1] = out[nsol, j]
                            j -= 1
                        out[nsol, j + 1] = key
                    nsol += 1
            backtracking = True
            pos -= 1
            continue

        if backtracking:
            s = stage[pos]
            if s == 1:
                # undo the include
                start, end = ptr[pos], ptr[pos + 1]
                for _ in range(end - start):
                    nmem -= 1
                    x = members[nmem]
                    in_d[x] = 0
                    for j in range(nmem):
                        h = members[j]
                        counts[diff[x, h]] -= 1
                        counts[diff[h, x]] -= 1
                astate[pos] = 0
                # try the exclude branch
                feasible = nmem + suffix[pos + 1] >= k
                if feasible:
                    r2 = 2 * (k - nmem)
                    for i in range(ptr[pos], ptr[pos + 1]):
                        x = flat[i]
                        if counts[x] > mu or counts[x] + r2 < mu:
                            feasible = False
                            break
                if feasible:
                    astate[pos] = 2
                    stage[pos] = 2
                    backtracking = False
                    pos += 1
                    if pos < natoms:
                        stage[pos] = 0
                else:
                    stage[pos] = 0
                    pos -= 1
            else:
                astate[pos] = 0
                stage[pos] = 0
                pos -= 1
            continue

        # forward step at a fresh frame
        asize = ptr[pos + 1] - ptr[pos]
        included = False
        if nmem + asize <= k:
            # add the atom, then check the profile cuts
            start, end = ptr[pos], ptr[pos + 1]
            for i in range(start, end):
                x = flat[i]
                for j in range(nmem):
                    h = members[j]
                    counts[diff[x, h]] += 1
                    counts[diff[h, x]] += 1
                members[nmem] = x
                in_d[x] = 1
                nmem += 1
            astate[pos] = 1
            ok = True
            r2 = 2 * (k - nmem)
            for x in range(1, v):
                c = counts[x]
                if c == 0:
                    if in_d[x] == 1 and r2 < lam:
                        ok = False
                        break
                    continue
                st = astate[elem_atom[x]] if elem_atom[x] >= 0 else 0
                if in_d[x] == 1:
                    if c > lam or c + r2 < lam:
                        ok = False
                        break
                elif st == 2:
                    if c > mu or c + r2 < mu:
                        ok = False
                        break
                elif c > maxlm:
                    ok = False
                    break
            if ok:
                included = True
                stage[pos] = 1
                pos += 1
                if pos < natoms:
                    stage[pos] = 0
            else:
                # self-undo the failed include
                for _ in range(end - start):
                    nmem -= 1
                    x = members[nmem]
                    in_d[x] = 0
                    for j in range(nmem):
                        h = members[j]
                        counts[diff[x, h]] -= 1
                        counts[diff[h, x]] -= 1
                astate[pos] = 0
        if included:
            continue
        # include failed or impossible: try exclude directly
        feasible = nmem + suffix[pos + 1] >= k
        if feasible:
            r2 = 2 * (k - nmem)
            for i in range(ptr[pos], ptr[pos + 1]):
                x = flat[i]
                if counts[x] > mu or counts[x] + r2 < mu:
                    feasible = False
                    break
        if feasible:
            astate[pos] = 2
            stage[pos] = 2
            pos += 1
            if pos < natoms:
                stage[pos] = 0
        else:
            backtracking = True
            pos -= 1
    return nsol


def _difference_table(spec: GroupSpec) -> np.ndarray:
    v = spec.order
    inv = [spec.inverse_idx(j) for j in range(v)]
    table = np.empty((v, v), dtype=np.int32)
    for g in range(v):
        for h in range(v):
            table[g, h] = spec.compose_idx(g, inv[h])
    return table


def _inverse_pair_atoms(spec: GroupSpec) -> list[tuple[int, ...]]:
    atoms = []
    seen = set()
    for g in range(1, spec.order):
        if g in seen:
            continue
        ginv = spec.inverse_idx(g)
        atom = (g,) if ginv == g else (g, ginv)
        seen.update(atom)
        atoms.append(tuple(sorted(atom)))
    return atoms


def search(
    spec: GroupSpec,
    params: PdsParams,
    prune_lmt: bool = True,
    order2_in_d: int | None = None,
) -> list[CandidateSet]:
    """All regular PDS with the given parameters, in lexicographic order.

    With prune_lmt, candidates are unions of multiplier orbits (sound only
    when Delta is a perfect square); without it, unions of inverse pairs,
    which is the exhaustive ground truth.  order2_in_d optionally keeps only
    solutions with that many elements of order 2 (a post-filter; it does not
    change the search).
    """
    if spec.order != params.v:
        raise DomainError(f"group order {spec.order} does not match v = {params.v}")
    if spec.order > _MAX_SEARCH_ORDER:
        raise DomainError(f"search supports groups of order <= {_MAX_SEARCH_ORDER}")
    if prune_lmt:
        if params.delta < 0 or not is_perfect_square(params.delta):
            raise DomainError("multiplier-orbit pruning requires a perfect-square Delta")
        atoms = [orb for orb in lmt_orbits(spec).orbits if orb != (0,)]
        atoms.sort(key=lambda orb: (-len(orb), orb[0]))
    else:
        atoms = _inverse_pair_atoms(spec)

    v = spec.order
    k = params.k
    diff = _difference_table(spec)
    flat = np.array([x for atom in atoms for x in atom], dtype=np.int32)
    ptr = np.zeros(len(atoms) + 1, dtype=np.int32)
    for i, atom in enumerate(atoms):
        ptr[i + 1] = ptr[i] + len(atom)
    elem_atom = np.full(v, -1, dtype=np.int32)
    for i, atom in enumerate(atoms):
        for x in atom:
            elem_atom[x] = i
    suffix = np.zeros(len(atoms) + 1, dtype=np.int32)
    for i in range(len(atoms) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + len(atoms[i])

    if k == 0:
        # the empty set has an all-zero profile, so it qualifies iff mu == 0
        results = [CandidateSet(spec, ())] if params.mu == 0 else []
    else:
        out = np.empty((_SOLUTION_CAP, k), dtype=np.int32)
        nsol = _search_kernel(
            diff, flat, ptr, elem_atom, suffix, int(k), int(params.lam), int(params.mu), out
        )
        if nsol < 0:
            raise DomainError(f"more than {_SOLUTION_CAP} solutions; raise the cap")
        results = [CandidateSet(spec, out[i]) for i in range(nsol)]

    if order2_in_d is not None:
        results = [
            c for c in results
            if sum(1 for m in c.members if spec.order_of_idx(m) == 2) == order2_in_d
        ]
    results.sort(key=lambda c: c.members)
    return results


def empirical_block_count(candidate: CandidateSet, line_coords) -> int:
    """|(L x N) meet D| for an order-p^2 subgroup L of the odd part of a
    group Z_2^3 x Z_p^3; line_coords lists L as coordinate triples."""
    spec = candidate.spec
    if len(spec.factors) != 6 or spec.factors[:3] != (2, 2, 2):
        raise DomainError("block counts are defined on groups Z_2^3 x Z_p^3")
    line = {tuple(int(c) % spec.factors[3] for c in coords) for coords in line_coords}
    count = 0
    for m in candidate.members:
        coords = spec.coords_of(m)
        if coords[3:] in line:
            count += 1
    return count


# --- set files: one element per line, comma-separated coordinates ---


def read_set_file(path, spec: GroupSpec) -> CandidateSet:
    members = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                coords = tuple(int(tok) for tok in line.split(","))
            except ValueError as exc:
                raise DomainError(f"bad set file line: {line!r}") from exc
            members.append(spec.index_of(coords))
    return CandidateSet(spec, members)


def write_set_file(path, candidate: CandidateSet) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# group {candidate.spec}\n")
        for coords in candidate.coords():
            fh.write(",".join(str(c) for c in coords) + "\n")
