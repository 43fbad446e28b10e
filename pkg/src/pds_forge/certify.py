"""Per-prime nonexistence certificates for PDS in abelian groups of order 8p^3.

For a concrete prime p >= 5 the pipeline replays, as exact computations, the
chain of arguments that closes every candidate parameter branch: the Sylow
reduction to Z_2^3 x Z_p^3, the two admissible Delta values, the exact k
bound, the mu = (x^2 - 1)/(2p) branch enumeration, the order-2 intersection
sizes, the aggregated orbit-count system, the bounded partition enumeration,
the block-count quadratic, and the projective-plane parity argument.

Every closed-form identity the derivation uses is *asserted* against the
computed value (raising CertificationError on mismatch) rather than assumed:
the certificate is a checker, and the formulas are its oracles.  The result
is a replayable Certificate: each step's evidence can be recomputed from its
recorded inputs alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .arith import is_perfect_square, is_prime, prime_support
from .errors import CertificationError, DomainError
from .groups import GroupSpec
from .params import PdsParams, ma1_sizes, ma2_exclusion_reasons, srg_consistent

NONEXISTENCE = "NONEXISTENCE"
INCONCLUSIVE = "INCONCLUSIVE"
OK = "OK"
CONTRADICTION = "CONTRADICTION"
BRANCH = "BRANCH"


@dataclass(frozen=True)
class Step:
    id: str
    name: str
    paper_ref: str
    inputs: dict
    evidence: dict
    verdict: str
    parent: str | None = None


@dataclass
class Certificate:
    p: int
    steps: list[Step] = field(default_factory=list)
    verdict: str = INCONCLUSIVE


# ---------------------------------------------------------------------------
# pipeline operations
# ---------------------------------------------------------------------------


def _require_prime(p: int) -> None:
    if p < 5 or not is_prime(p):
        raise DomainError(f"the pipeline needs a prime p >= 5, got {p}")


def group_reduction(p: int) -> dict:
    """Enumerate the nine abelian groups of order 8p^3 and apply the
    Sylow-structure exclusions; the only survivor must be Z_2^3 x Z_p^3."""
    _require_prime(p)
    two_parts = [(8,), (4, 2), (2, 2, 2)]
    p_parts = [(p**3,), (p**2, p), (p, p, p)]
    candidates = [GroupSpec(a + b) for a in two_parts for b in p_parts]
    excluded = {}
    survivors = []
    for spec in candidates:
        reasons = ma2_exclusion_reasons(spec)
        if reasons:
            excluded[str(spec)] = [r for rs in reasons.values() for r in rs]
        else:
            survivors.append(spec)
    if survivors != [GroupSpec((2, 2, 2, p, p, p))]:
        raise CertificationError(f"unexpected survivor set {survivors} at p = {p}")
    return {
        "candidates": [str(s) for s in candidates],
        "excluded": excluded,
        "survivors": [str(s) for s in survivors],
    }


def delta_candidates(p: int) -> set[int]:
    """All perfect squares Delta <= v dividing v^2 with prime support {2, p};
    the scan must come back as exactly {4p^2, 16p^2}."""
    _require_prime(p)
    v = 8 * p**3
    support = prime_support(v)
    found = set()
    for d in range(1, isqrt(v) + 1):
        delta = d * d
        if (v * v) % delta != 0:
            continue
        if prime_support(delta) == support and prime_support(v * v // delta) == support:
            found.add(delta)
    if found != {4 * p * p, 16 * p * p}:
        raise CertificationError(f"Delta scan for p = {p} returned {sorted(found)}")
    return found


def _k_poly(p: int, delta: int, k: int) -> int:
    # c*(v-1)^2 + k*(1 + k - v)*v  with c = delta/4; nonnegativity of this
    # discriminant is what forces lambda to be real/integral.
    v = 8 * p**3
    c = delta // 4
    return c * (v - 1) ** 2 + k * (1 + k - v) * v


def k_bound_exact(p: int, delta: int) -> int:
    """Largest k <= v/2 keeping the lambda-discriminant nonnegative, by exact
    integer root isolation; asserted against the closed-form ceiling."""
    _require_prime(p)
    if delta == 16 * p * p:
        closed_form = 4 * p * p + 3 * p - 1          # floor(4p^2 + 3p - 1/2)
    elif delta == 4 * p * p:
        closed_form = (4 * p * p + p - 2) // 4       # floor(p^2 + p/4 - 1/2)
    else:
        raise DomainError(f"Delta must be 4p^2 or 16p^2, got {delta}")
    # The polynomial is decreasing on [0, (v-1)/2]; bisect for the sign change.
    lo, hi = 0, (8 * p**3 - 1) // 2
    if _k_poly(p, delta, hi) >= 0:
        raise CertificationError("no sign change below v/2")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _k_poly(p, delta, mid) >= 0:
            lo = mid
        else:
            hi = mid
    bound = lo
    if not (_k_poly(p, delta, bound) >= 0 > _k_poly(p, delta, bound + 1)):
        raise CertificationError("root isolation failed")
    if bound > closed_form:
        raise CertificationError(
            f"exact bound {bound} exceeds closed form {closed_form} (p={p}, Delta={delta})"
        )
    return bound


def mu_candidates(p: int, delta: int) -> list[tuple[int, int, int, int]]:
    """Surviving (k, lambda, mu, beta) tuples for the given Delta.

    Writes k = (sqrt(Delta)/2)*x + beta/2 and mu = (x^2-1)/(2p) resp.
    (x^2-1)/(8p), then keeps integral, nontrivial-range, k-bounded branches.
    The outcome is asserted: empty for Delta = 4p^2; for Delta = 16p^2 the
    mu = 2p+2 pair plus, iff 16p - 7 is a square, the mu = 2p-2 pair.
    """
    _require_prime(p)
    kb = k_bound_exact(p, delta)
    if delta == 16 * p * p:
        half_step, mu_div = 2 * p, 2 * p
    else:
        half_step, mu_div = p, 8 * p
    sq = isqrt(delta)
    v = 8 * p**3
    out = []
    for x in range(0, kb // half_step + 3):
        num = x * x - 1
        if num < mu_div or num % mu_div != 0:
            continue
        mu = num // mu_div
        # beta^2 + 2*beta = delta - 4*half_step*x + 4*mu
        disc = 1 + delta - 4 * half_step * x + 4 * mu
        if disc < 0:
            continue
        s = isqrt(disc)
        if s * s != disc:
            continue
        for beta in (-1 - s, -1 + s):
            if beta % 2 != 0:
                continue
            k = half_step * x + beta // 2
            lam = mu + beta
            if lam < 0 or not 1 <= k <= kb:
                continue
            if not -sq < beta < sq - 2:
                continue
            cand = PdsParams(v, k, lam, mu)
            if not srg_consistent(cand) or cand.delta != delta:
                raise CertificationError(f"inconsistent branch {cand} at p = {p}")
            out.append((k, lam, mu, beta))
    out.sort()

    expected = []
    if delta == 16 * p * p:
        expected = [
            (4 * p * p + 2 * p - 2, 2 * p - 2, 2 * p + 2, -4),
            (4 * p * p + 2 * p + 1, 2 * p + 4, 2 * p + 2, 2),
        ]
        if is_perfect_square(16 * p - 7):
            s = isqrt(16 * p - 7)
            for beta in (-1 - s, -1 + s):
                k = 4 * p * p - 2 * p + beta // 2
                expected.append((k, 2 * p - 2 + beta, 2 * p - 2, beta))
        expected.sort()
    if out != expected:
        raise CertificationError(
            f"mu candidates {out} differ from closed forms {expected} (p={p}, Delta={delta})"
        )
    return out


def c_system(p: int, params: PdsParams, a: int) -> tuple[Fraction, Fraction]:
    """The aggregated orbit-count system for |D meet Sylow_2| = a:
    S1 = sum of the C values, S2 = sum of their squares, as exact rationals."""
    s1 = Fraction(params.k - a, p - 1)
    s2 = s1 + Fraction(a * params.lam + (7 - a) * params.mu - a * (a - 1), p - 1)
    return s1, s2


def enumerate_c_solutions(s1: int, s2: int, length: int) -> list[tuple[int, ...]]:
    """All descending `length`-tuples of nonnegative integers with the given
    sum and sum of squares; complete by enumerating the parts >= 2 against
    the invariant sum(c*(c-1)) = s2 - s1."""
    if s1 < 0 or s2 < 0 or length < 0:
        raise DomainError("sums and length must be nonnegative")
    t = s2 - s1
    if t < 0:
        return []
    solutions = []

    def parts_ge2(max_part: int, budget: int, acc: list[int]) -> None:
        if budget == 0:
            ones = s1 - sum(acc)
            if ones >= 0 and len(acc) + ones <= length:
                tup = tuple(acc) + (1,) * ones + (0,) * (length - len(acc) - ones)
                solutions.append(tup)
            return
        c = max_part
        while c * (c - 1) > budget:
            c -= 1
        for part in range(c, 1, -1):
            if sum(acc) + part > s1:
                continue
            acc.append(part)
            parts_ge2(part, budget - part * (part - 1), acc)
            acc.pop()

    cap = 2
    while cap * (cap - 1) <= t:
        cap += 1
    parts_ge2(cap, t, [])
    solutions.sort(reverse=True)
    return solutions


def block_roots(p: int, params: PdsParams) -> set[int]:
    """Integer roots m of the two-way difference count over an order-8p^2
    subgroup: m(m-1) + (k-m)(k-m-(p-1))/(p-1) = lambda*m + mu*(8p^2 - 1 - m)."""
    k, lam, mu = params.k, params.lam, params.mu
    # multiplied through by (p-1):  p*m^2 - (2k + (p-1)(lam-mu))*m
    #                               + k^2 - (p-1)*k - (p-1)*mu*(8p^2 - 1) = 0
    qa = p
    qb = -(2 * k + (p - 1) * (lam - mu))
    qc = k * k - (p - 1) * k - (p - 1) * mu * (8 * p * p - 1)
    disc = qb * qb - 4 * qa * qc
    roots: set[int] = set()
    if disc >= 0 and is_perfect_square(disc):
        s = isqrt(disc)
        for num in (-qb - s, -qb + s):
            if num % (2 * qa) == 0:
                roots.add(num // (2 * qa))
    for m in roots:
        lhs = Fraction(m * (m - 1)) + Fraction((k - m) * (k - m - (p - 1)), p - 1)
        rhs = Fraction(lam * m + mu * (8 * p * p - 1 - m))
        if lhs != rhs:
            raise CertificationError(f"root {m} fails substitution at p = {p}")
    if (k, lam, mu) == (4 * p * p + 2 * p - 2, 2 * p - 2, 2 * p + 2):
        if roots != {2 * (p + 1), 2 * (3 * p - 1)}:
            raise CertificationError(f"unexpected block roots {roots} at p = {p}")
    if (k, lam, mu) == (4 * p * p + 2 * p + 1, 2 * p + 4, 2 * p + 2):
        if roots != {2 * p + 5, 6 * p + 1}:
            raise CertificationError(f"unexpected block roots {roots} at p = {p}")
    return roots


def line_weights(m_roots, a: int, p: int) -> set[Fraction]:
    """Block weights (m - a)/(p - 1); non-integers contradict integrality."""
    return {Fraction(m - a, p - 1) for m in m_roots}


def parity_obstruction(solutions, weights, s1: int) -> str:
    """CONTRADICTION iff every solution tuple contains an odd entry (no point
    weighting is then compatible with all-even block weights), vacuously so
    for an empty solution list; INCONCLUSIVE if some tuple is all-even."""
    for w in weights:
        if w % 2 != 0:
            raise DomainError(f"parity argument needs even block weights, got {w}")
    if s1 % 2 != 0:
        raise DomainError(f"parity argument needs an even total weight, got {s1}")
    for tup in solutions:
        if all(c % 2 == 0 for c in tup):
            return INCONCLUSIVE
    return CONTRADICTION


def sporadic_classify(p: int) -> dict:
    """Whether the mu = 2p-2 branch exists: 16p - 7 must be a perfect square,
    and then p falls into exactly one of the two quadratic families in y."""
    _require_prime(p)
    t = 16 * p - 7
    s = isqrt(t)
    if s * s != t:
        return {"square": False, "value": t}
    if s % 8 == 3:
        y = (s - 3) // 8
        form = "4y^2+3y+1"
        expected = 4 * y * y + 3 * y + 1
    elif s % 8 == 5:
        y = (s - 5) // 8
        form = "4y^2+5y+2"
        expected = 4 * y * y + 5 * y + 2
    else:
        raise CertificationError(f"sqrt(16p-7) = {s} not 3 or 5 mod 8 at p = {p}")
    if expected != p:
        raise CertificationError(f"family {form} with y = {y} gives {expected}, not {p}")
    return {"square": True, "value": t, "root": s, "y": y, "form": form}


# ---------------------------------------------------------------------------
# certificate assembly
# ---------------------------------------------------------------------------


def _rle(tup) -> list[list[int]]:
    out: list[list[int]] = []
    for c in tup:
        if out and out[-1][0] == c:
            out[-1][1] += 1
        else:
            out.append([c, 1])
    return out


def _unrle(pairs) -> tuple[int, ...]:
    out: list[int] = []
    for value, count in pairs:
        out.extend([int(value)] * int(count))
    return tuple(out)


class _Builder:
    def __init__(self, p: int):
        self.cert = Certificate(p)
        self._n = 0

    def add(self, name, paper_ref, inputs, evidence, verdict, parent=None) -> Step:
        self._n += 1
        step = Step(f"s{self._n}", name, paper_ref, inputs, evidence, verdict, parent)
        self.cert.steps.append(step)
        return step


def certify(p: int, all_a: bool = False) -> Certificate:
    """Run the full pipeline for one prime and return the certificate.

    The verdict is NONEXISTENCE iff every parameter branch terminates in a
    contradiction step; anything the pipeline cannot close is reported as
    INCONCLUSIVE, never silently passed.  With all_a=True the order-2
    intersection loop sweeps a = 0..7 instead of only the admissible sizes.
    """
    _require_prime(p)
    b = _Builder(p)
    v = 8 * p**3
    all_closed = True

    red = group_reduction(p)
    b.add("group_reduction", "Sylow-structure exclusions (Ma)", {"p": p}, red, OK)

    deltas = sorted(delta_candidates(p))
    dstep = b.add(
        "delta_candidates",
        "square divisor support scan",
        {"p": p},
        {"deltas": deltas},
        BRANCH,
    )

    for delta in deltas:
        kb = k_bound_exact(p, delta)
        kstep = b.add(
            "k_bound_exact",
            "discriminant nonnegativity bound",
            {"p": p, "delta": delta},
            {"k_max": kb},
            OK,
            parent=dstep.id,
        )
        branches = mu_candidates(p, delta)
        mstep = b.add(
            "mu_candidates",
            "mu integrality branch enumeration",
            {"p": p, "delta": delta},
            {"branches": [list(t) for t in branches]},
            CONTRADICTION if not branches else BRANCH,
            parent=kstep.id,
        )
        if not branches:
            continue

        b.add(
            "sporadic_classify",
            "16p-7 square classification",
            {"p": p},
            sporadic_classify(p),
            OK,
            parent=mstep.id,
        )

        for k, lam, mu, beta in branches:
            params = PdsParams(v, k, lam, mu)
            report = ma1_sizes(params, 8)
            astep = b.add(
                "ma1_sizes",
                "subgroup intersection sizes (Ma)",
                {"v": v, "k": k, "lam": lam, "mu": mu, "n": 8},
                {
                    "pi": report.pi,
                    "theta": report.theta,
                    "beta1": report.beta1,
                    "sizes": list(report.sizes),
                },
                CONTRADICTION if not report.sizes else BRANCH,
                parent=mstep.id,
            )
            if not report.sizes:
                continue
            a_values = list(range(8)) if all_a else list(report.sizes)
            for a in a_values:
                s1, s2 = c_system(p, params, a)
                integral = s1.denominator == 1 and s2.denominator == 1
                cstep = b.add(
                    "c_system",
                    "aggregated orbit-count sums",
                    {"p": p, "k": k, "lam": lam, "mu": mu, "a": a},
                    {"S1": str(s1), "S2": str(s2), "integral": integral},
                    CONTRADICTION if not integral else BRANCH,
                    parent=astep.id,
                )
                if not integral:
                    continue
                if mu != 2 * p + 2:
                    # No plane argument is attempted outside the mu = 2p+2
                    # branches; an integral system here stays open.
                    b.add(
                        "branch_open",
                        "no applicable closing argument",
                        {"p": p, "k": k, "lam": lam, "mu": mu, "a": a},
                        {},
                        INCONCLUSIVE,
                        parent=cstep.id,
                    )
                    all_closed = False
                    continue
                length = p * p + p + 1
                sols = enumerate_c_solutions(int(s1), int(s2), length)
                sstep = b.add(
                    "enumerate_c_solutions",
                    "bounded partition enumeration",
                    {"S1": int(s1), "S2": int(s2), "length": length},
                    {"count": len(sols), "solutions": [_rle(t) for t in sols]},
                    CONTRADICTION if not sols else BRANCH,
                    parent=cstep.id,
                )
                if not sols:
                    continue
                roots = block_roots(p, params)
                rstep = b.add(
                    "block_roots",
                    "block-count quadratic",
                    {"p": p, "k": k, "lam": lam, "mu": mu},
                    {"roots": sorted(roots)},
                    CONTRADICTION if len(roots) < 2 else BRANCH,
                    parent=sstep.id,
                )
                if len(roots) < 2:
                    continue
                weights = line_weights(roots, a, p)
                w_integral = all(w.denominator == 1 for w in weights)
                wstep = b.add(
                    "line_weights",
                    "block weight integrality",
                    {"p": p, "roots": sorted(roots), "a": a},
                    {"weights": sorted(str(w) for w in weights)},
                    CONTRADICTION if not w_integral else BRANCH,
                    parent=rstep.id,
                )
                if not w_integral:
                    continue
                int_weights = sorted(int(w) for w in weights)
                if any(w % 2 != 0 for w in int_weights) or int(s1) % 2 != 0:
                    b.add(
                        "branch_open",
                        "parity argument inapplicable",
                        {"p": p, "weights": int_weights, "S1": int(s1)},
                        {},
                        INCONCLUSIVE,
                        parent=wstep.id,
                    )
                    all_closed = False
                    continue
                verdict = parity_obstruction(sols, int_weights, int(s1))
                b.add(
                    "parity_obstruction",
                    "projective-plane parity argument",
                    {
                        "solutions": [_rle(t) for t in sols],
                        "weights": int_weights,
                        "S1": int(s1),
                    },
                    {"verdict": verdict},
                    verdict,
                    parent=wstep.id,
                )
                if verdict != CONTRADICTION:
                    all_closed = False

    b.cert.verdict = NONEXISTENCE if all_closed else INCONCLUSIVE
    return b.cert


# ---------------------------------------------------------------------------
# serialization and replay
# ---------------------------------------------------------------------------


def _jsonify(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonify(e) for e in x]
    if isinstance(x, dict):
        return {str(key): _jsonify(val) for key, val in x.items()}
    return x


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "p": str(cert.p),
        "verdict": cert.verdict,
        "steps": [
            {
                "id": s.id,
                "name": s.name,
                "paper_ref": s.paper_ref,
                "inputs": _jsonify(s.inputs),
                "evidence": _jsonify(s.evidence),
                "verdict": s.verdict,
                "parent": s.parent,
            }
            for s in cert.steps
        ],
    }


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), sort_keys=True, indent=2)


def _i(x) -> int:
    return int(x)


def _replay_group_reduction(inp):
    return group_reduction(_i(inp["p"]))


def _replay_delta_candidates(inp):
    return {"deltas": sorted(delta_candidates(_i(inp["p"])))}


def _replay_k_bound(inp):
    return {"k_max": k_bound_exact(_i(inp["p"]), _i(inp["delta"]))}


def _replay_mu_candidates(inp):
    return {"branches": [list(t) for t in mu_candidates(_i(inp["p"]), _i(inp["delta"]))]}


def _replay_sporadic(inp):
    return sporadic_classify(_i(inp["p"]))


def _replay_ma1(inp):
    params = PdsParams(_i(inp["v"]), _i(inp["k"]), _i(inp["lam"]), _i(inp["mu"]))
    r = ma1_sizes(params, _i(inp["n"]))
    return {"pi": r.pi, "theta": r.theta, "beta1": r.beta1, "sizes": list(r.sizes)}


def _replay_c_system(inp):
    p = _i(inp["p"])
    params = PdsParams(8 * p**3, _i(inp["k"]), _i(inp["lam"]), _i(inp["mu"]))
    s1, s2 = c_system(p, params, _i(inp["a"]))
    return {
        "S1": str(s1),
        "S2": str(s2),
        "integral": s1.denominator == 1 and s2.denominator == 1,
    }


def _replay_c_solutions(inp):
    sols = enumerate_c_solutions(_i(inp["S1"]), _i(inp["S2"]), _i(inp["length"]))
    return {"count": len(sols), "solutions": [_rle(t) for t in sols]}


def _replay_block_roots(inp):
    p = _i(inp["p"])
    params = PdsParams(8 * p**3, _i(inp["k"]), _i(inp["lam"]), _i(inp["mu"]))
    return {"roots": sorted(block_roots(p, params))}


def _replay_line_weights(inp):
    roots = [_i(m) for m in inp["roots"]]
    ws = line_weights(roots, _i(inp["a"]), _i(inp["p"]))
    return {"weights": sorted(str(w) for w in ws)}


def _replay_parity(inp):
    sols = [_unrle(pairs) for pairs in inp["solutions"]]
    weights = [_i(w) for w in inp["weights"]]
    verdict = parity_obstruction(sols, weights, _i(inp["S1"]))
    return {"verdict": verdict}


def _replay_branch_open(inp):
    return {}


_REPLAYERS = {
    "group_reduction": _replay_group_reduction,
    "delta_candidates": _replay_delta_candidates,
    "k_bound_exact": _replay_k_bound,
    "mu_candidates": _replay_mu_candidates,
    "sporadic_classify": _replay_sporadic,
    "ma1_sizes": _replay_ma1,
    "c_system": _replay_c_system,
    "enumerate_c_solutions": _replay_c_solutions,
    "block_roots": _replay_block_roots,
    "line_weights": _replay_line_weights,
    "parity_obstruction": _replay_parity,
    "branch_open": _replay_branch_open,
}


def replay_certificate(doc) -> list[str]:
    """Recompute every step's evidence from its inputs and byte-compare the
    canonical serialization; returns a list of mismatch descriptions."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    mismatches = []
    for step in doc["steps"]:
        replayer = _REPLAYERS.get(step["name"])
        if replayer is None:
            mismatches.append(f"{step['id']}: unknown operation {step['name']}")
            continue
        recomputed = json.dumps(_jsonify(replayer(step["inputs"])), sort_keys=True)
        stored = json.dumps(step["evidence"], sort_keys=True)
        if recomputed.encode() != stored.encode():
            mismatches.append(f"{step['id']} ({step['name']}): evidence mismatch")
    return mismatches
