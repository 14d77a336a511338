"""Application constants and configuration values."""

import os
from pathlib import Path


def get_package_directory() -> Path:
    """Get the directory holding the ``src`` package."""
    return Path(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


# ==================== Application Info ====================
APP_NAME = "pcfprod"
APP_VERSION = "1.0.0"
APP_DESCRIPTION = (
    "Products of parabolic cylinder functions via integral representations"
)

# ==================== File Paths ====================
BASE_DIR = get_package_directory()
DATA_DIR = BASE_DIR / "data"
LOGS_DIR = BASE_DIR.parent / "logs"
REPORTS_DIR = BASE_DIR.parent / "reports"

ORACLE_TABLE_FILE = DATA_DIR / "oracle_points.csv"
SETTINGS_FILE = DATA_DIR / "settings.json"

# ==================== Series Settings ====================
SERIES_MAX_TERMS = 500
SERIES_TOL = 1e-15
# z^2/2 reaches 450 inside the PCF envelope; the Kummer series needs more room
PCF_SERIES_MAX_TERMS = 1000
# c - a - b closer than this to an integer uses the logarithmic formulas
NEAR_INTEGER_TOL = 1e-10
KUMMER_MAX_ARG = 200.0

# ==================== Accuracy Envelopes ====================
PCF_MAX_ABS_Z = 30.0
PCF_MAX_ABS_NU = 10.0

# ==================== Quadrature Settings ====================
QUAD_REL_TOL = 1e-11
QUAD_ABS_TOL = 1e-14
QUAD_MAX_EVALS = 200_000
QUAD_INITIAL_STEP = 1.0
QUAD_MAX_LEVELS = 10
# tanh-sinh abscissae span [-TANH_SINH_S_MAX, TANH_SINH_S_MAX]
TANH_SINH_S_MAX = 6.0
EXP_SINH_S_MIN = -4.5
EXP_SINH_S_MAX = 3.5
# nodes whose log-weight falls below this are dropped
LOG_UNDERFLOW = -700.0
DEFAULT_KNOT = 1.0
# relative error charged to the special-function factors of each integrand
SPECFUN_REL_ERR = 1e-14

# ==================== Verification Settings ====================
VERIFY_TOL = 1e-8
CROSS_REP_TOL = 1e-7
ABS_FLOOR = 1e-12
LAPLACE_P_VALUES = (0.7, 1.0, 2.0)
ORACLE_DIGITS = 30
ORACLE_WORKING_DPS = 40
ORACLE_GUARANTEED_DIGITS_CAP = 15
IDENTITY_SAMPLES = 10
IDENTITY_SEED = 1729

PRODUCT_GRID_NU = (-1.75, -1.0, -0.5, -0.1)
PRODUCT_GRID_MU = (-1.5, -1.0, -0.5, 0.0, 0.5, 0.9)
PRODUCT_GRID_XY = (0.0, 0.25, 1.0, 2.5, 5.0)

# ==================== Representation Tags ====================
REP_TAGS = (
    "4.1", "4.2", "4.3", "4.4", "5.1",
    "kk", "erfc2", "di", "dneg-erfc", "dneg",
)
# picks (4.3) or (4.4) by region
DISPATCH_TAG = "dneg"
VERIFY_SUITES = ("identities", "quadrature", "products", "laplace", "audit", "all")
OUTPUT_FORMATS = ("text", "json")
TABLE_FORMATS = ("csv", "json")
TABLE_COLUMNS = ("rep", "nu", "mu", "x", "y", "value", "abs_err_est", "status")
ORACLE_COLUMNS = ("nu", "mu", "x_signed", "y", "value_30digits")
FLOAT_FORMAT = "{:.17g}"

# ==================== Exit Codes ====================
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REGION = 2
EXIT_NO_CONVERGENCE = 3
EXIT_IO = 4
EXIT_VERIFY_FAILED = 5

# ==================== Environment ====================
ENV_MAX_EVALS = "PCFPROD_MAX_EVALS"
ENV_LOG_LEVEL = "PCFPROD_LOG_LEVEL"

# ==================== Logging ====================
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
LOG_LEVEL = "WARNING"
LOG_FILE = "pcfprod.log"
MAX_LOG_SIZE = 10 * 1024 * 1024  # 10MB
LOG_BACKUP_COUNT = 5
