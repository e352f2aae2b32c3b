import os

# Get the project root directory
PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))

# Input fixtures and published schema documents
DATA_DIR = os.path.join(PROJECT_ROOT, 'data')
GROUP_REP_FIXTURES_DIR = os.path.join(DATA_DIR, 'group_reps')
DOCS_DIR = os.path.join(PROJECT_ROOT, 'docs')

# Logging - every component appends to the same file
LOG_DIR = os.path.join(PROJECT_ROOT, 'logs')
LOG_FILE_PATH = os.path.join(LOG_DIR, 'rootlift.log')

# Runtime parameters of the lifting pipeline
LIFTING_PARAMS_PATH = os.path.join(PROJECT_ROOT, 'lifting', 'lifting.params')

# Experiment directory - the batch runner writes its csv summaries here
EXPERIMENT_DIR = os.path.join(PROJECT_ROOT, 'experiments')
EXPERIMENT_DATA_DIR = os.path.join(PROJECT_ROOT, 'experiments', 'experiment_data')

# Version reported in every CLI envelope
TOOL_VERSION = "0.3.0"
