"""Consts for the FH toolkit."""

DEFAULT_SEARCH_BOUND = 24
MAX_SEARCH_BOUND = 28
DEFAULT_CLOSURE_SWEEP_BOUND = 16
DEFAULT_ISOMORPHISM_BOUND = 10
DEFAULT_CATALOG_MAX_ORBITS = 16
DEFAULT_REALIZATION_LIMIT = 10 ** 6
DEFAULT_ADMISSIBLE_ATTEMPTS = 50

MAX_ARITY = 8

ENV_SEARCH_BOUND = "FH_BOUND"

ENGINE_EXHAUSTIVE = "exhaustive"
ENGINE_FLOW = "flow"
ENGINES = (ENGINE_EXHAUSTIVE, ENGINE_FLOW)

FRESH_PREFIX = "w__"
FRESH_SEPARATOR = "_"

GROUP_ID = "id"
GROUP_SYM = "sym"
GROUP_GEN = "gen"

KEY_STRUCTURE = "structure"
KEY_ARITY = "arity"
KEY_GROUP = "group"
KEY_ELEMENTS = "elements"
KEY_REL = "rel"
KEY_END = "end"
KEY_TYPE = "type"
KEY_TAIL = "tail"
KEY_COMMENT = "#"

KIND_PHI = "phi"
KIND_EXQUISITE = "exquisite"

RENDERER_TEXT = "text"
RENDERER_JSON = "json"

ERROR_PARSE = "parse"
ERROR_GROUP_CLOSURE = "group-closure"
ERROR_DUPLICATE_ENTRY = "duplicate-entry"
ERROR_ARITY_MISMATCH = "arity-mismatch"
ERROR_UNKNOWN_ELEMENT = "unknown-element"
ERROR_SHARED_MISMATCH = "shared-mismatch"
ERROR_OVERLAP = "overlap"
ERROR_SEARCH_BOUND = "search-bound"
ERROR_NOT_IN_CLASS = "not-in-class"
ERROR_NOT_STRONG_BASE = "not-strong-base"
ERROR_NOT_SUBGROUP = "not-subgroup"
ERROR_NOT_PROPER_SUBGROUP = "not-proper-subgroup"
ERROR_LENGTH_MISMATCH = "length-mismatch"
ERROR_NO_COLLISION = "no-collision"
ERROR_PRECONDITION = "precondition"
ERROR_DIM_MISMATCH = "dim-mismatch"
ERROR_LIFT_VERIFICATION = "lift-verification"
ERROR_VERIFICATION = "verification"
ERROR_USAGE = "usage"
ERROR_SAMPLE_EXHAUSTED = "sample-exhausted"

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2

SUITE_BASE_EXQUISITE = "base-exquisite"
SUITE_LIFT_CHAIN = "lift-chain"
SUITE_SUBMODULARITY = "submodularity"
SUITE_PREGEOMETRY = "pregeometry"
SUITE_CLOSURE_ORACLES = "closure-oracles"
SUITE_AMALGAM = "amalgam"
SUITE_TRANSFER = "transfer"
SUITE_REDUCT_CLASS = "reduct-class"
SUITE_DECOLLIDE = "decollide"
SUITE_MIXED_AMALGAM = "mixed-amalgam"
SUITE_GENERIC_AUDIT = "generic-audit"
SUITE_BENIGN = "benign"
