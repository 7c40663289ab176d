import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Logging
LOG_LEVEL = os.getenv('COVER_LOG_LEVEL', 'INFO').upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Solver
CHECK_CONTRACTS = os.getenv('COVER_CHECK_CONTRACTS', 'False').lower() == 'true'
BOUND_SLACK = float(os.getenv('COVER_BOUND_SLACK', '1e-9'))

# Exact oracle caps (refuse rather than run unbounded)
ORACLE_MAX_ALPHA_N = int(os.getenv('ORACLE_MAX_ALPHA_N', '20'))
ORACLE_MAX_BETA_N = int(os.getenv('ORACLE_MAX_BETA_N', '18'))
ORACLE_MAX_PHI_N = int(os.getenv('ORACLE_MAX_PHI_N', '14'))
ORACLE_ALL_CLIQUES_N = int(os.getenv('ORACLE_ALL_CLIQUES_N', '10'))
EXACT_BASE_MAX_N = int(os.getenv('EXACT_BASE_MAX_N', '18'))

# Generation / benchmark
DEFAULT_COORD_MAX = int(os.getenv('GEN_COORD_MAX', '1000'))
BENCH_REPETITIONS = int(os.getenv('BENCH_REPETITIONS', '3'))

FORMAT_VERSION = 1
