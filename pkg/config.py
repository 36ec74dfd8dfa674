# config.py

import os
from dotenv import load_dotenv

# --- Load environment variables from .env file ---
# Variables already set in the process environment win over .env entries.
load_dotenv()

# --- ENUMERATION CAPS (Loaded from .env, overridable per call and by CLI flags) ---
CONTRIBUTOR_CAP = int(os.getenv("KIRCHHOFF_CONTRIBUTOR_CAP", "10000000"))  # Max contributors (or classes) visited per query
PERMANENT_MAX_N = int(os.getenv("KIRCHHOFF_PERMANENT_MAX_N", "24"))        # Ryser cost is 2^n * n
FOREST_SUBSET_CAP = int(os.getenv("KIRCHHOFF_FOREST_SUBSET_CAP", "2000000"))  # Edge subsets scanned for k-forests

# --- EXECUTION ---
DEFAULT_THREADS = int(os.getenv("KIRCHHOFF_THREADS", "1"))  # Worker threads for partitioned enumeration
LOG_LEVEL = os.getenv("KIRCHHOFF_LOG_LEVEL", "WARNING").upper()

# --- CAP VALIDATION ---
if CONTRIBUTOR_CAP <= 0:
    raise EnvironmentError(
        "FATAL ERROR: KIRCHHOFF_CONTRIBUTOR_CAP must be a positive integer. "
        "Please check your .env file."
    )
if PERMANENT_MAX_N <= 0 or FOREST_SUBSET_CAP <= 0:
    raise EnvironmentError(
        "FATAL ERROR: KIRCHHOFF_PERMANENT_MAX_N and KIRCHHOFF_FOREST_SUBSET_CAP must be positive."
    )
if DEFAULT_THREADS <= 0:
    raise EnvironmentError("FATAL ERROR: KIRCHHOFF_THREADS must be at least 1.")
if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
    raise EnvironmentError(f"FATAL ERROR: Unknown KIRCHHOFF_LOG_LEVEL '{LOG_LEVEL}'.")

# --- RANDOM GRAPH DEFAULTS (gen subcommand) ---
GEN_VERTICES = 5
GEN_EDGE_PROBABILITY = 0.5      # Erdos-Renyi edge probability
GEN_NEGATIVE_PROBABILITY = 0.0  # Probability that a generated edge is negative
GEN_SEED = 0

# --- OUTPUT ---
DEFAULT_FORMAT = "text"
OUTPUT_FORMATS = ("json", "dot", "csv", "text")
