"""palinbase: exhaustive search for integers that are d-digit palindromes in
base 10 and, with the same digit count d, palindromes in some other base."""

from .bounds import (
    MAX_DIGITS,
    AnchorEntry,
    AnchorPlan,
    BaseInterval,
    adjacent_base_even_exclusion,
    anchor_plan,
    base_interval,
    even_length_divisor,
    integer_root,
    max_digits,
)
from .golden import GoldenEntry, golden_by_digits, load_golden
from .numerals import (
    DigitString,
    DomainError,
    InvalidBaseError,
    InvalidDigitError,
    digit_count,
    from_digits,
    is_d_digit_palindrome,
    is_palindrome,
    parse_digit_string,
    to_digits,
)
from .oracle import RuleReport, brute_force, verify_rule
from .results import PalindromeHit, hit_from_json, hit_to_json, hit_to_text
from .search import (
    Checkpoint,
    CheckpointError,
    ConsistencyError,
    SearchTask,
    append_checkpoint,
    load_checkpoints,
    merge,
    mirror_prefix,
    partition,
    prefix_range,
    scan,
    scan_anchored,
    scan_iter,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIGITS",
    "AnchorEntry",
    "AnchorPlan",
    "BaseInterval",
    "Checkpoint",
    "CheckpointError",
    "ConsistencyError",
    "DigitString",
    "DomainError",
    "GoldenEntry",
    "InvalidBaseError",
    "InvalidDigitError",
    "PalindromeHit",
    "RuleReport",
    "SearchTask",
    "adjacent_base_even_exclusion",
    "anchor_plan",
    "append_checkpoint",
    "base_interval",
    "brute_force",
    "digit_count",
    "even_length_divisor",
    "from_digits",
    "golden_by_digits",
    "hit_from_json",
    "hit_to_json",
    "hit_to_text",
    "integer_root",
    "is_d_digit_palindrome",
    "is_palindrome",
    "load_checkpoints",
    "load_golden",
    "max_digits",
    "merge",
    "mirror_prefix",
    "parse_digit_string",
    "partition",
    "prefix_range",
    "scan",
    "scan_anchored",
    "scan_iter",
    "to_digits",
    "verify_rule",
]
