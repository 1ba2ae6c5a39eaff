# Default coefficient ring (overridden by --prime / --trunc / --coeff / --field-degree)
DEFAULT_PRIME = 3
DEFAULT_TRUNCATION = 2
DEFAULT_COEFF = "witt-fp"
DEFAULT_FIELD_DEGREE = 1

# Randomized suites (verify / consistency)
DEFAULT_SAMPLES = 100
DEFAULT_SEED = 0
DEFAULT_WORD_LENGTH = 8
DEFAULT_SUPPORT = 4

# Output
DEFAULT_OUTPUT = "text"
LOG_TO_FILE = True
