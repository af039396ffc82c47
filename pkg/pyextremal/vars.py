"""Global pyextremal values"""

# Engines
ENGINE_NAIVE = "naive"
ENGINE_LEX = "lex"
ENGINE_MEMO = "memo"
ENGINE_PARALLEL = "par"

ENGINE_NAMES = (ENGINE_NAIVE, ENGINE_LEX, ENGINE_MEMO, ENGINE_PARALLEL)

# Item remapping before canonical sorting
REMAP_NONE = "none"
REMAP_FREQ_ASC = "freq-asc"
REMAP_FREQ_DESC = "freq-desc"

REMAP_MODES = (REMAP_NONE, REMAP_FREQ_ASC, REMAP_FREQ_DESC)

# Range search strategies
SEARCH_BINARY = "binary"
SEARCH_GALLOPING = "galloping"

# Parallel worker backends
BACKEND_PROCESS = "process"
BACKEND_THREAD = "thread"

# Dataset file formats
FORMAT_TEXT = "text"
FORMAT_BINARY = "bin"

BINARY_MAGIC = b"XSET"
BINARY_VERSION = 1

# Items are unsigned 32-bit integers
ITEM_MAX = 2**32 - 1

# Range search counters, in report order
STAT_NEXT_ITEM = "next_item_calls"
STAT_NEXT_BEGIN_RANGE = "next_begin_range_calls"
STAT_NEXT_END_RANGE = "next_end_range_calls"
STAT_SUBSET_QUERIES = "subset_queries"

STAT_FIELDS = (
    STAT_NEXT_ITEM,
    STAT_NEXT_BEGIN_RANGE,
    STAT_NEXT_END_RANGE,
    STAT_SUBSET_QUERIES,
)

ENV_THREADS = "PYEXTREMAL_THREADS"

OPT_THREADS = "threads"
OPT_BACKEND = "backend"
OPT_CHUNK = "chunk"
OPT_SEARCH = "search"
OPT_VERIFY_WITNESS = "verify_witness"
OPT_ORACLE_CAP = "oracle_cap"
OPT_DUMP_GRAPHS = "dump_graphs"
OPT_RESUME_FRONTIER = "resume_frontier"

DEFAULT_OPTIONS = {
    OPT_THREADS: None,
    OPT_BACKEND: BACKEND_PROCESS,
    OPT_CHUNK: 1,
    OPT_SEARCH: SEARCH_BINARY,
    OPT_VERIFY_WITNESS: False,
    OPT_ORACLE_CAP: 2000,
    OPT_DUMP_GRAPHS: None,
    OPT_RESUME_FRONTIER: False,
}

DEFAULT_BENCH_REPS = 3

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class DatasetFormatError(ValueError):
    """Malformed dataset text or binary stream."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotCanonicalError(ValueError):
    """An engine was handed a dataset that is not lexicographically sorted."""


class ContractError(RuntimeError):
    """An engine precondition or postcondition was violated."""
