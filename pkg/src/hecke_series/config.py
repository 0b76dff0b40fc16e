import logging
import os

from dotenv import load_dotenv

# Load environment variables from the .env file in the project root
# Ensure this runs before accessing os.getenv for variables
dotenv_path = os.path.join(
    os.path.dirname(__file__), "..", "..", ".env"
)  # Assumes config.py is in src/hecke_series/
load_dotenv(dotenv_path=dotenv_path)

log = logging.getLogger(__name__)

# --- Series Defaults ---
# Truncation order used by every command unless --order / "order" overrides it
DEFAULT_ORDER = int(os.getenv("HECKE_DEFAULT_ORDER", "64"))

# --- Verification Settings ---
DEFAULT_SEED = int(os.getenv("HECKE_DEFAULT_SEED", "42"))
DEFAULT_TRIALS = int(os.getenv("HECKE_DEFAULT_TRIALS", "100"))
# Worker processes for verification trials (1 = run serially in-process)
VERIFY_WORKERS = int(os.getenv("HECKE_VERIFY_WORKERS", "1"))

# --- Logging ---
LOG_LEVEL = os.getenv("HECKE_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# --- API Server Settings ---
API_HOST = os.getenv("API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("API_PORT", "4000"))
# Largest truncation order a single HTTP request may ask for
API_MAX_ORDER = int(os.getenv("API_MAX_ORDER", "512"))


def _validate_config():
    """Checks that the numeric settings are usable."""
    positive = {
        "HECKE_DEFAULT_ORDER": DEFAULT_ORDER,
        "HECKE_DEFAULT_TRIALS": DEFAULT_TRIALS,
        "HECKE_VERIFY_WORKERS": VERIFY_WORKERS,
        "API_MAX_ORDER": API_MAX_ORDER,
    }
    invalid = [name for name, value in positive.items() if value < 1]
    if invalid:
        raise EnvironmentError(
            f"Configuration values must be positive. Please fix in .env: {', '.join(invalid)}"
        )
    if not 0 <= DEFAULT_SEED < 2**64:
        raise EnvironmentError("HECKE_DEFAULT_SEED must fit in an unsigned 64-bit integer")
    if logging.getLevelName(LOG_LEVEL) == f"Level {LOG_LEVEL}":
        raise EnvironmentError(f"Unknown HECKE_LOG_LEVEL '{LOG_LEVEL}'")


def describe_config() -> str:
    """One block summarising the active configuration, for startup logs."""
    return "\n".join(
        [
            "-" * 30,
            "Hecke Series Configuration Loaded:",
            f"  Default Order:   {DEFAULT_ORDER}",
            f"  Default Seed:    {DEFAULT_SEED}",
            f"  Default Trials:  {DEFAULT_TRIALS}",
            f"  Verify Workers:  {VERIFY_WORKERS}",
            f"  Log Level:       {LOG_LEVEL}",
            f"  API Host:        {API_HOST}:{API_PORT}",
            f"  API Max Order:   {API_MAX_ORDER}",
            "-" * 30,
        ]
    )
