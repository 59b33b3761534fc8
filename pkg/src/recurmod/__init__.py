"""Second-order linear recurrences modulo m: periods, orders, residue completeness."""

from .classify import ClassificationResult, Evidence, Family, classify, explain
from .completeness import (
    CompletenessReport,
    candidate_primes,
    complete,
    completeness_report,
    lift_five,
    lift_new_prime,
    lift_repeated_prime,
    prime_power_rule,
    reduce_to_unit_seed,
    subsequence_classes,
)
from .core import Period, Recurrence, canonical_rotation, find_period, generate, invariant_of
from .errors import (
    DegenerateDiscriminant,
    Disagreement,
    FactorizationLimit,
    HypothesisViolation,
    OutOfScope,
    RecurrenceError,
    TrivialSeed,
)
from .fundamental import FundamentalSystem, enumerate_fs, verify_three_power_decomposition
from .order import order, order_composite, order_direct, order_lifted
from .variant_u import check_order_divisibility, complete_verdict, uniform_verdict

__all__ = [
    "ClassificationResult", "CompletenessReport", "DegenerateDiscriminant", "Disagreement",
    "Evidence", "FactorizationLimit", "Family", "FundamentalSystem", "HypothesisViolation",
    "OutOfScope", "Period", "Recurrence", "RecurrenceError", "TrivialSeed",
    "candidate_primes", "canonical_rotation", "check_order_divisibility", "classify", "complete",
    "complete_verdict", "completeness_report", "enumerate_fs", "explain", "find_period",
    "generate", "invariant_of", "lift_five", "lift_new_prime", "lift_repeated_prime", "order",
    "order_composite", "order_direct", "order_lifted", "prime_power_rule", "reduce_to_unit_seed",
    "subsequence_classes", "uniform_verdict", "verify_three_power_decomposition",
]
