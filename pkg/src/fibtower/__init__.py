"""Exact valuation and unit-residue analysis of iterated Fibonacci index towers."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    CapExceeded,
    FactorBudgetExceeded,
    FibTowerError,
    NoExponentError,
    NoWitnessError,
    PreconditionViolated,
)
from .fibcore import (
    DEFAULT_MAX_FIB_INDEX,
    addition_formula_check,
    cassini,
    fib,
    fib_iterative,
    fib_multiple_expansion,
    gcd_identity_check,
    index_divisibility_check,
    square_congruence_check,
    valuation,
)
from .modfib import (
    DEFAULT_FACTOR_BUDGET,
    DEFAULT_FACTOR_SEED,
    ChainLevel,
    FactoredNatural,
    PisanoChain,
    build_chain,
    ensure_factored,
    factorize,
    fib_mod,
    fib_pair_mod,
    is_prime,
    pisano_period,
    pisano_period_brute,
    pisano_prime,
)
from .lemmas import (
    DivisorPowerWitness,
    TruncationPair,
    binomial_power_divisibility,
    divisor_power_witness,
    truncated_expansion_check,
    truncated_expansion_residues,
)
from .oracle import (
    DEFAULT_ORACLE_MAX_INDEX,
    ENV_MAX_INDEX,
    OracleResult,
    oracle_budget,
    oracle_eval,
    oracle_feasible,
)
from .tower import (
    BRANCH_LABELS,
    AnalysisReport,
    CaseTag,
    TowerSpec,
    analyze,
    branch_label,
    classify,
    predicted_residue,
    tower_parity_check,
    tower_residue,
)
from .report import (
    CSV_COLUMNS,
    SweepReport,
    SweepRow,
    analysis_to_dict,
    parse_json,
    parse_range,
    render_csv,
    render_json,
    run_sweep,
)

__all__ = [
    "__version__",
    "AnalysisReport",
    "BRANCH_LABELS",
    "BudgetExceeded",
    "CapExceeded",
    "CaseTag",
    "ChainLevel",
    "CSV_COLUMNS",
    "DEFAULT_FACTOR_BUDGET",
    "DEFAULT_FACTOR_SEED",
    "DEFAULT_MAX_FIB_INDEX",
    "DEFAULT_ORACLE_MAX_INDEX",
    "DivisorPowerWitness",
    "ENV_MAX_INDEX",
    "FactorBudgetExceeded",
    "FactoredNatural",
    "FibTowerError",
    "NoExponentError",
    "NoWitnessError",
    "OracleResult",
    "PisanoChain",
    "PreconditionViolated",
    "SweepReport",
    "SweepRow",
    "TowerSpec",
    "TruncationPair",
    "addition_formula_check",
    "analysis_to_dict",
    "analyze",
    "binomial_power_divisibility",
    "branch_label",
    "build_chain",
    "cassini",
    "classify",
    "divisor_power_witness",
    "ensure_factored",
    "factorize",
    "fib",
    "fib_iterative",
    "fib_mod",
    "fib_multiple_expansion",
    "fib_pair_mod",
    "gcd_identity_check",
    "index_divisibility_check",
    "is_prime",
    "oracle_budget",
    "oracle_eval",
    "oracle_feasible",
    "parse_json",
    "parse_range",
    "pisano_period",
    "pisano_period_brute",
    "pisano_prime",
    "predicted_residue",
    "render_csv",
    "render_json",
    "run_sweep",
    "square_congruence_check",
    "tower_parity_check",
    "tower_residue",
    "truncated_expansion_check",
    "truncated_expansion_residues",
    "valuation",
]
