DEFAULT_TEST_RATIO = 0.10
DEFAULT_TRIALS = 10
DEFAULT_LP_ALPHA = 0.001
DEFAULT_RWR_C = 0.85
DEFAULT_RWR_TOL = 1e-9
DEFAULT_RWR_MAX_ITER = 1000
DEFAULT_AUC_SAMPLES = 100_000
MIN_WALK_LENGTH = 2
MAX_WALK_LENGTH = 7
ROC_MAX_POINTS = 500
# rows of the reach/steady-state matrices computed per work item
SOURCE_CHUNK_SIZE = 256
ROW_SUM_TOL = 1e-9
# relative digits kept when ranking scores; finer differences are ties
SCORE_TIE_DECIMALS = 12

JC = "jc"
RA = "ra"
AA = "aa"
CCLP = "cclp"
LP = "lp"
LRW = "lrw"
SRW = "srw"
RWR = "rwr"
MIRW = "mirw"
METHODS = (JC, RA, AA, CCLP, LP, LRW, SRW, RWR, MIRW)
WALK_METHODS = (LRW, SRW, MIRW)
ALL_METHODS_ALIAS = "all"

CN_MODE_RAW = "raw"
CN_MODE_PLUS_TWO = "plus_two"
CN_MODES = (CN_MODE_PLUS_TWO, CN_MODE_RAW)
DIRECTION_LITERAL = "literal_eq9"
DIRECTION_RECEIVED = "received"
DIRECTIONS = (DIRECTION_LITERAL, DIRECTION_RECEIVED)
NEGATIVE_AMI_CLAMP = "clamp_zero"
NEGATIVE_AMI_MODES = (NEGATIVE_AMI_CLAMP,)
# command line spellings of the influence settings
CLI_CN_MODES = {"plus-two": CN_MODE_PLUS_TWO, "raw": CN_MODE_RAW}
CLI_DIRECTIONS = {"literal": DIRECTION_LITERAL, "received": DIRECTION_RECEIVED}

AUC_EXACT = "exact"
AUC_SAMPLED = "sampled"
AUC_MODES = (AUC_EXACT, AUC_SAMPLED)
TOP_L_AUTO = "auto"

REPORT_FILENAME = "report.json"
METRICS_FILENAME = "metrics.csv"
ROC_FILENAME_TMPLT = "roc_{}.csv"
SWEEP_FILENAME = "sweep.csv"
STATS_FILENAME = "stats.csv"
CONFIG_FILENAME = "config.toml"
LOG_FILENAME = "log.txt"
METRICS_COLUMNS = (
    "dataset",
    "method",
    "trial",
    "seed",
    "auc",
    "precision",
    "L",
    "t",
    "wall_ms",
)

REGISTERED_DATASETS = ("karate", "dolphins", "football")
DATA_DIR_ENV = "LINKPRED_DATA_DIR"
EDGE_LIST_SUFFIX = ".edges"
COMMENT_PREFIXES = ("#", "%")
