"""The set of moduli on which a recurrence is residue complete.

:func:`classify` decides every modulus up to a bound in two independent ways.
The structural pass works upward through the moduli. It excludes them with
cheap arithmetic rules (candidate primes, the invariant gcd, exponent caps,
divisor closure) and includes them with the lifting rules. It brute-forces
only the moduli no rule decides. A separate sweep brute-forces every modulus.
The two must agree exactly.

The members are then summarized as families ``base * prod p^e`` over lift
primes p whose every lifting step is certified.  Certification uses the
p-adic growth of the matrix order: for odd p, once k(p^(c+1)) = p*k(p^c)
the order keeps multiplying by p at every further level, so the hypothesis
k(pm) = p*k(m) can be settled for all exponents at once by comparing
p-valuations.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .arith import factorize, valuation
from .completeness import (
    DEFAULT_CEILING,
    candidate_primes,
    complete,
    lift_five,
    lift_new_prime,
    lift_repeated_prime,
    prime_power_rule,
)
from .core import Recurrence
from .errors import Disagreement, OutOfScope
from .order import STABILIZATION_CAP, order, order_lifted, stabilization_exponent

log = logging.getLogger(__name__)

SOURCES = (
    "bruteforce",
    "lift-repeated-prime",
    "lift-new-prime",
    "lift-five",
    "power-of-two-cap",
    "power-of-three",
    "power-of-seven-cap",
    "candidate-primes",
    "invariant-gcd",
    "divisor-closure",
    "trivial-seed",
)


@dataclass(frozen=True)
class Evidence:
    modulus: int
    complete: bool
    source: str
    parent: int | None = None  # modulus the verdict was lifted from or inherited from
    detail: str = ""

    def as_dict(self) -> dict:
        d = {"modulus": self.modulus, "complete": self.complete, "verdictSource": self.source}
        if self.parent is not None:
            d["from"] = self.parent
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class Family:
    """All moduli ``base * prod(p^e for p in lift_primes)`` with every e >= 0."""

    base: int
    lift_primes: tuple[int, ...]
    conditions: str
    first_step: int | None = None  # lift prime whose first step was settled by brute force

    def members_up_to(self, bound: int) -> list[int]:
        out = [self.base] if self.base <= bound else []
        for p in self.lift_primes:
            out = [x * p**e for x in out for e in range(_max_exp(x, p, bound) + 1)]
        return sorted(out)

    def contains(self, m: int) -> bool:
        if m % self.base:
            return False
        rest = m // self.base
        for p in self.lift_primes:
            while rest % p == 0:
                rest //= p
        return rest == 1

    def as_dict(self) -> dict:
        return {
            "baseModulus": self.base,
            "liftPrimes": list(self.lift_primes),
            "conditions": self.conditions,
        }

    def __str__(self):
        if not self.lift_primes:
            return str(self.base)
        return f"{self.base}*" + "*".join(f"{p}^e{i}" for i, p in enumerate(self.lift_primes))


def _max_exp(x: int, p: int, bound: int) -> int:
    e = 0
    while x * p ** (e + 1) <= bound:
        e += 1
    return e


@dataclass(frozen=True)
class ClassificationResult:
    spec: Recurrence
    bound: int
    members: tuple[int, ...]
    structure: tuple[Family, ...]
    evidence: tuple[Evidence, ...]
    candidates: tuple[int, ...]
    notes: tuple[str, ...] = field(default=())

    def evidence_for(self, m: int) -> Evidence:
        return self.evidence[m - 2]

    def as_dict(self, full_evidence: bool = False) -> dict:
        ev = self.evidence if full_evidence else [e for e in self.evidence if e.complete]
        return {
            "spec": {"a": self.spec.a, "b": self.spec.b, "q": self.spec.q, "sign": self.spec.sign},
            "bound": self.bound,
            "members": list(self.members),
            "structure": [f.as_dict() for f in self.structure],
            "evidence": [e.as_dict() for e in ev],
            "candidatePrimes": list(self.candidates),
            "notes": list(self.notes),
        }


# -- structural pass ---------------------------------------------------------


class _Rules:
    """Per-recurrence constants shared by the structural pass and certification."""

    def __init__(self, rec: Recurrence):
        q = rec.q
        self.rec = rec
        self.q = q
        self.invariant = rec.invariant
        self.candidates = candidate_primes(q, 1).union
        self.omega_odd = tuple(p for p in candidate_primes(q, 1).omega if p > 2)
        self.cap2 = prime_power_rule(q, 2).max_exponent
        self.cap7 = prime_power_rule(q, 7).max_exponent
        three = prime_power_rule(q, 3)
        self.three_unbounded = three.max_exponent is None and gcd(self.invariant, 3) == 1
        self.three_max = three.max_exponent
        self.five_lift = (q * (q * q + 4)) % 5 != 0 and self.invariant % 5 in (1, 4)

    def lift_kind(self, p: int) -> str | None:
        if p in self.omega_odd:
            return "omega"
        if p == 5 and self.five_lift:
            return "five"
        return None


def _structural_verdict(m: int, rules: _Rules, known: dict[int, Evidence]) -> Evidence:
    rec = rules.rec
    fac = factorize(m)
    if rec.is_trivial_mod(m):
        return Evidence(m, False, "trivial-seed")
    for p, _ in fac:
        if p not in rules.candidates:
            return Evidence(m, False, "candidate-primes", detail=f"prime {p} cannot divide a complete modulus")
    if gcd(rules.invariant, m) != 1:
        return Evidence(m, False, "invariant-gcd",
                        detail=f"gcd(invariant {rules.invariant}, {m}) = {gcd(rules.invariant, m)}")
    exps = dict(fac)
    if exps.get(2, 0) > rules.cap2:
        return Evidence(m, False, "power-of-two-cap", detail=f"2-exponent above {rules.cap2}")
    if exps.get(7, 0) > rules.cap7:
        return Evidence(m, False, "power-of-seven-cap", detail=f"7-exponent above {rules.cap7}")
    if 3 in exps and rules.three_max is not None and exps[3] > rules.three_max:
        return Evidence(m, False, "power-of-three", detail=f"3-exponent above {rules.three_max}")
    for p, _ in fac:
        parent = m // p
        if parent > 1 and not known[parent].complete:
            return Evidence(m, False, "divisor-closure", parent, f"divisor {parent} is incomplete")
    if len(fac) == 1 and fac[0][0] == 3 and gcd(rules.invariant, 3) == 1 and rules.q % 3:
        # exponent caps were applied above, so this power is within the rule's range
        return Evidence(m, True, "power-of-three")
    for p, _ in fac:
        parent = m // p
        if parent < 2:
            continue
        kind = rules.lift_kind(p)
        if kind == "omega":
            lift = lift_repeated_prime if parent % p == 0 else lift_new_prime
            verdict = lift(rec, p, parent, ceiling=0, base_complete=True)
        elif kind == "five" and parent % 5 == 0:
            verdict = lift_five(rec, parent, ceiling=0, base_complete=True)
        else:
            continue
        if verdict.applicable:
            return Evidence(m, True, verdict.rule, parent, f"k({m}) = {p}*k({parent})")
    return Evidence(m, complete(rec, m), "bruteforce")


# -- family certification ----------------------------------------------------


def _stable_from(q: int, p: int) -> int | None:
    c = stabilization_exponent(q, 1, p)
    return c if c <= STABILIZATION_CAP else None


def _certified(rules: _Rules, base: int, p: int, lifts: tuple[int, ...]) -> bool:
    """Does k(p*m) = p*k(m) hold for every m = base * prod(r^e, r in lifts)?

    Write m = p^e * R.  Only the p-part of k changes when p's exponent grows,
    so the condition reduces to valuation inequalities involving k(p^e) and
    the largest p-valuation k(R) can reach over the family.
    """
    q = rules.q
    kind = rules.lift_kind(p)
    if kind is None or (kind == "five" and base % 5):
        return False
    if kind == "omega" and gcd(rules.invariant, p) != 1:
        return False
    c = _stable_from(q, p)
    if c is None:
        return False
    e0 = valuation(base, p)
    rest = base // p**e0
    k_rest = order(q, rest)
    v_rest = valuation(k_rest, p)
    # p-valuation of k(r^f) does not depend on f >= 1 when r != p
    v_max = max([v_rest] + [valuation(order(q, r), p) for r in lifts if r != p])
    e_start = max(e0, 1)
    if c > e_start:
        return False
    if valuation(order_lifted(q, 1, p, e_start).order, p) < v_max:
        return False
    if e0 == 0:
        k1 = order(q, p)
        v1 = valuation(k1, p)
        if not (v_rest == v_max == v1 - 1):
            return False
        cofactor = k1 // p**v1
        if k_rest % cofactor:
            return False
    return True


def _certified_lifts(rules: _Rules, base: int) -> tuple[int, ...]:
    lifts = tuple(p for p in rules.candidates if rules.lift_kind(p))
    while True:
        kept = tuple(p for p in lifts if _certified(rules, base, p, lifts))
        if kept == lifts:
            return kept
        lifts = kept


def _describe(rules: _Rules, base: int, lifts: tuple[int, ...]) -> str:
    parts = []
    for p in lifts:
        if p == 3:
            parts.append("every power of 3 (3 does not divide q, q != 4, 5 mod 9, invariant prime to 3)")
        elif rules.lift_kind(p) == "omega":
            parts.append(f"{p} | q^2+4; k(p*m) = p*k(m) certified for every exponent")
        else:
            parts.append("5 does not divide q(q^2+4), invariant = +-1 mod 5; k(5m) = 5k(m) certified")
    return "; ".join(parts) if parts else "single modulus, settled within the bound"


def _families(rules: _Rules, members: list[int]) -> list[Family]:
    fams: list[Family] = []
    for m in members:
        fac = factorize(m)
        if len(fac) == 1 and fac[0][0] == 3 and rules.three_unbounded:
            if not any(f.lift_primes == (3,) and f.contains(m) for f in fams):
                fams.append(Family(m, (3,), _describe(rules, m, (3,))))
        lifts = _certified_lifts(rules, m)
        covered = any(f.contains(m) and set(lifts) <= set(f.lift_primes) and 3 not in f.lift_primes
                      for f in fams)
        if not covered and not (lifts == () and any(f.contains(m) for f in fams)):
            fams.append(Family(m, lifts, _describe(rules, m, lifts)))
    return _merge_first_steps(fams)


def _merge_first_steps(fams: list[Family]) -> list[Family]:
    """Fold (B, L) and (B*p, L + {p}) with p not dividing B into (B, L + {p})."""
    changed = True
    while changed:
        changed = False
        for f in fams:
            for g in fams:
                if g is f or g.base % f.base or 3 in g.lift_primes or 3 in f.lift_primes:
                    continue
                p = g.base // f.base
                if p in g.lift_primes and f.base % p and set(g.lift_primes) == set(f.lift_primes) | {p}:
                    merged = Family(f.base, g.lift_primes, g.conditions + f"; first factor {p} checked by brute force",
                                    first_step=p)
                    fams = [x for x in fams if x is not f and x is not g] + [merged]
                    changed = True
                    break
            if changed:
                break
    return sorted(fams, key=lambda f: (f.base, f.lift_primes))


def expand(structure, bound: int) -> list[int]:
    out = set()
    for f in structure:
        out.update(x for x in f.members_up_to(bound) if x >= 2)
    return sorted(out)


# -- independent sweep -------------------------------------------------------


def _sweep_chunk(args) -> list[int]:
    a, b, q, lo, hi = args
    return [m for m in range(lo, hi) if complete(Recurrence(a, b, q), m)]


def bruteforce_members(rec: Recurrence, bound: int, workers: int = 1) -> list[int]:
    """{ m in [2, bound] : complete mod m }, by walking every period."""
    if workers <= 1:
        return _sweep_chunk((rec.a, rec.b, rec.q, 2, bound + 1))
    step = max(1, (bound - 1) // (4 * workers) + 1)
    chunks = [(rec.a, rec.b, rec.q, lo, min(lo + step, bound + 1)) for lo in range(2, bound + 1, step)]
    with ProcessPoolExecutor(workers) as pool:
        parts = list(pool.map(_sweep_chunk, chunks))
    return sorted(m for part in parts for m in part)


def _first_difference(x: list[int], y: list[int]) -> int:
    return min(set(x) ^ set(y))


def classify(rec: Recurrence, bound: int, workers: int = 1, check: bool = True) -> ClassificationResult:
    """Classify the complete moduli of ``rec`` up to ``bound`` and summarize them as families.

    Raises :class:`Disagreement` with the smallest witness if the structural
    pass, the family expansion and the brute-force sweep are not identical.
    """
    if rec.sign != 1:
        raise ValueError("classify handles sign=+1; use recurmod.variant_u for the other family")
    if bound < 2:
        raise ValueError("bound must be at least 2")
    if rec.a == 0 and rec.b == 0:
        raise ValueError("the zero seed has only the trivial period")
    rules = _Rules(rec)
    known: dict[int, Evidence] = {}
    for m in range(2, bound + 1):
        known[m] = _structural_verdict(m, rules, known)
    members = [m for m in range(2, bound + 1) if known[m].complete]
    log.debug("structural pass: %d members, %d brute-forced", len(members),
              sum(e.source == "bruteforce" for e in known.values()))

    structure = _families(rules, members)
    expanded = expand(structure, bound)
    if expanded != members:
        w = _first_difference(expanded, members)
        raise Disagreement(f"family expansion and structural pass differ at {w}", witness=w)
    if check:
        swept = bruteforce_members(rec, bound, workers)
        if swept != members:
            w = _first_difference(swept, members)
            raise Disagreement(f"structural verdict for {w} contradicts brute force", witness=w)

    notes = []
    if rules.three_unbounded and any(m % 3 == 0 and m != 3 ** valuation(m, 3) for m in members):
        notes.append("the exponent of 3 in composite members is known only up to the bound")
    for f in structure:
        if not f.lift_primes and f.base * 2 > bound:
            notes.append(f"family {f.base} sits near the bound; larger relatives are unexplored")
    return ClassificationResult(rec, bound, tuple(members), tuple(structure),
                                tuple(known[m] for m in range(2, bound + 1)),
                                rules.candidates, tuple(notes))


# -- explanations ------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    modulus: int
    complete: bool
    source: str
    parent: int | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v not in (None, "")}

    def __str__(self):
        verdict = "complete" if self.complete else "incomplete"
        via = f" from {self.parent}" if self.parent is not None else ""
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.modulus}: {verdict} by {self.source}{via}{extra}"


def explain(result: ClassificationResult, m: int, ceiling: int = DEFAULT_CEILING) -> list[Step]:
    """The chain of rules deciding whether ``m`` is a member, base case first."""
    if m < 2:
        raise OutOfScope("moduli below 2 are not classified")
    if m <= result.bound:
        chain = []
        ev = result.evidence_for(m)
        while True:
            chain.append(Step(ev.modulus, ev.complete, ev.source, ev.parent, ev.detail))
            if ev.parent is None or ev.source == "divisor-closure":
                if ev.source == "divisor-closure":
                    pe = result.evidence_for(ev.parent)
                    chain.append(Step(pe.modulus, pe.complete, pe.source, pe.parent, pe.detail))
                break
            ev = result.evidence_for(ev.parent)
        return chain[::-1]
    for p, _ in factorize(m):
        if p not in result.candidates:
            return [Step(m, False, "candidate-primes", detail=f"prime {p} cannot divide a complete modulus")]
    for d in sorted({m // p for p, _ in factorize(m)}):
        if 2 <= d <= result.bound and not result.evidence_for(d).complete:
            return explain(result, d) + [Step(m, False, "divisor-closure", d, f"divisor {d} is incomplete")]
    for f in result.structure:
        if f.contains(m):
            return _lift_chain(result, f, m, ceiling)
    raise OutOfScope(f"{m} exceeds the bound {result.bound} and matches no certified family")


def _lift_chain(result: ClassificationResult, fam: Family, m: int, ceiling: int) -> list[Step]:
    rec = result.spec
    if fam.lift_primes == (3,):
        return [Step(m, True, "power-of-three", detail="every power of 3 is complete")]
    exps = {p: 0 for p in fam.lift_primes}
    rest = m // fam.base
    for p in fam.lift_primes:
        while rest % p == 0:
            rest //= p
            exps[p] += 1
    # walk inside the bound first so the base of the chain is recorded evidence
    cur = fam.base
    order_of_lifts = [p for p in fam.lift_primes for _ in range(exps[p])]
    if fam.first_step in order_of_lifts:
        order_of_lifts.remove(fam.first_step)
        order_of_lifts.insert(0, fam.first_step)
    chain = explain(result, cur)
    for p in order_of_lifts:
        nxt = cur * p
        if nxt <= result.bound:
            chain = explain(result, nxt)
        else:
            if rec.q * (rec.q**2 + 4) % 5 and p == 5:
                v = lift_five(rec, cur, ceiling, base_complete=True)
            elif cur % p == 0:
                v = lift_repeated_prime(rec, p, cur, ceiling, base_complete=True)
            else:
                v = lift_new_prime(rec, p, cur, ceiling, base_complete=True)
            v.require()
            detail = f"k({nxt}) = {p}*k({cur})" + ("; brute force agrees" if v.verified else "")
            chain.append(Step(nxt, True, v.rule, cur, detail))
        cur = nxt
    return chain
