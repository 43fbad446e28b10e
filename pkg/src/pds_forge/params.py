"""Exact feasibility arithmetic on PDS parameter quadruples (v, k, lambda, mu).

Implements the strongly-regular-graph identity, Ma's integrality and
divisibility conditions, the complement/dual maps, the Sylow-structure
exclusions, and the subgroup-intersection size computation.  All tests are
exact integer arithmetic; perfect squares are detected with isqrt.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .arith import factorint, is_perfect_square, prime_support
from .errors import DomainError
from .groups import GroupSpec


@dataclass(frozen=True, order=True)
class PdsParams:
    v: int
    k: int
    lam: int
    mu: int

    @property
    def beta(self) -> int:
        return self.lam - self.mu

    @property
    def delta(self) -> int:
        return self.beta**2 + 4 * (self.k - self.mu)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam},{self.mu})"


def srg_consistent(params: PdsParams) -> bool:
    """The degree/count identity k(k - lambda - 1) = mu(v - k - 1), exactly."""
    v, k, lam, mu = params.as_tuple()
    return k * (k - lam - 1) == mu * (v - k - 1)


def nontrivial_range(params: PdsParams) -> bool:
    """Whether -sqrt(Delta) < beta < sqrt(Delta) - 2 holds (square Delta only)."""
    d = params.delta
    if d < 0 or not is_perfect_square(d):
        raise DomainError(f"Delta = {d} is not a perfect square; see conference_case")
    r = isqrt(d)
    return -r < params.beta < r - 2


def complement(params: PdsParams) -> PdsParams:
    v, k, lam, mu = params.as_tuple()
    if v < k + 1:
        raise DomainError(f"complement undefined for k = {k} > v - 1 = {v - 1}")
    return PdsParams(v, v - k - 1, v - 2 * k - 2 + mu, v - 2 * k + lam)


def dual_delta(params: PdsParams) -> int | None:
    """v^2 / Delta, or None when Delta does not divide v^2 (a feasibility failure)."""
    d = params.delta
    if d <= 0:
        raise DomainError(f"dual requires Delta > 0, got {d}")
    if (params.v**2) % d != 0:
        return None
    return params.v**2 // d


def parity_check(params: PdsParams) -> bool:
    return (params.beta - params.delta) % 2 == 0


def divisibility_check(params: PdsParams) -> bool:
    """Delta | v^2, Delta | (2k - beta)^2, and v, Delta, v^2/Delta share prime support."""
    d = params.delta
    v = params.v
    if d <= 0:
        return False
    if (v * v) % d != 0 or (2 * params.k - params.beta) ** 2 % d != 0:
        return False
    support = prime_support(v)
    return prime_support(d) == support and prime_support(v * v // d) == support


def conference_case(params: PdsParams) -> bool:
    """Feasibility of a non-square Delta: only the (4t+1, 2t, t-1, t) family in
    groups of odd prime-power order p^(2s+1) with p = 1 mod 4 survives."""
    v, k, lam, mu = params.as_tuple()
    if is_perfect_square(params.delta):
        raise DomainError("conference_case applies only when Delta is not a square")
    t = mu
    if t < 1 or (v, k, lam, mu) != (4 * t + 1, 2 * t, t - 1, t):
        return False
    fac = factorint(v)
    if len(fac) != 1:
        return False
    ((p, e),) = fac.items()
    return p % 4 == 1 and e % 2 == 1


def ma2_exclusion_reasons(spec: GroupSpec) -> dict[int, list[str]]:
    """For each prime, the Sylow-structure reasons excluding a nontrivial PDS."""
    by_prime: dict[int, list[int]] = {}
    for n in spec.factors:
        ((p, e),) = factorint(n).items()
        by_prime.setdefault(p, []).append(e)
    reasons: dict[int, list[str]] = {}
    for p, exps in sorted(by_prime.items()):
        rs = []
        if len(exps) == 1 and spec.order != p:
            rs.append(f"cyclic Sylow-{p}")
        if len(exps) == 2 and exps[0] != exps[1]:
            rs.append(f"Sylow-{p} of shape Z_{p}^{max(exps)} x Z_{p}^{min(exps)}")
        if rs:
            reasons[p] = rs
    return reasons


def ma2_excludes(spec: GroupSpec) -> set[int]:
    """Primes whose Sylow structure rules out any nontrivial PDS in the group."""
    return set(ma2_exclusion_reasons(spec))


@dataclass(frozen=True)
class SubPdsReport:
    """Admissible sizes of D intersected with a coprime-index subgroup N.

    pi = gcd(|N|, sqrt(Delta)); Delta_1 = pi^2; theta is the unique integer
    with (2*theta - 1)*pi <= beta < (2*theta + 1)*pi; beta_1 = beta - 2*theta*pi.
    Each admitted size s is an integer root of
        (2s - n - beta_1)^2 = (n + beta_1)^2 - (Delta_1 - beta_1^2)(n - 1)
    lying in [0, n-1].  An empty size set is a contradiction for the parameters.
    """

    n: int
    pi: int
    delta1: int
    theta: int
    beta1: int
    sizes: tuple[int, ...]


def ma1_sizes(params: PdsParams, n: int) -> SubPdsReport:
    d = params.delta
    if d < 0 or not is_perfect_square(d):
        raise DomainError(f"Delta = {d} must be a perfect square")
    v = params.v
    if n < 1 or v % n != 0:
        raise DomainError(f"{n} does not divide v = {v}")
    if gcd(n, v // n) != 1:
        raise DomainError(f"gcd(|N|, v/|N|) must be 1, got n = {n}, v = {v}")
    if (v // n) % 2 == 0:
        raise DomainError(f"v/|N| must be odd, got {v // n}")
    beta = params.beta
    pi = gcd(n, isqrt(d))
    theta = (beta + pi) // (2 * pi)
    beta1 = beta - 2 * theta * pi
    delta1 = pi * pi
    disc = (n + beta1) ** 2 - (delta1 - beta1**2) * (n - 1)
    sizes = []
    if disc >= 0 and is_perfect_square(disc):
        root = isqrt(disc)
        for num in (n + beta1 - root, n + beta1 + root):
            if num % 2 == 0 and 0 <= num // 2 <= n - 1:
                sizes.append(num // 2)
    return SubPdsReport(n, pi, delta1, theta, beta1, tuple(sorted(set(sizes))))


def enumerate_feasible(v: int) -> list[PdsParams]:
    """All quadruples with 1 <= k <= v/2 passing the full feasibility sieve.

    Order of checks: the lambda/mu range bound, the SRG identity (which
    determines mu from k and lambda), parity, then the nontrivial range plus
    divisibility (square Delta) or the conference condition (non-square).
    """
    if v < 2:
        raise DomainError(f"group order must be >= 2, got {v}")
    out = []
    for k in range(1, v // 2 + 1):
        den = v - k - 1
        if den <= 0:
            continue
        for lam in range(0, k):
            num = k * (k - lam - 1)
            if num < 0 or num % den != 0:
                continue
            mu = num // den
            if not 0 <= mu <= k - 1:
                continue
            params = PdsParams(v, k, lam, mu)
            if not parity_check(params):
                continue
            if params.delta >= 0 and is_perfect_square(params.delta):
                if nontrivial_range(params) and divisibility_check(params):
                    out.append(params)
            else:
                if conference_case(params):
                    out.append(params)
    out.sort(key=lambda q: (q.k, q.lam))
    return out
