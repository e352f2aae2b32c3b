"""
Exception taxonomy shared by every package.

Design NOTE on errors:
- Input problems (bad type strings, schema or GroupRep invariant violations) raise InputError, a ValueError.
- A failed mathematical assumption raises HypothesisError tagged with the name of that assumption, so a
  failure always names what was violated (e.g. "good-decomposition-type").
- An identity that must hold by construction but does not raises InvariantViolation; it signals an arithmetic bug.
- The CLI maps the three classes to exit codes 1, 2 and 3.
"""


class InputError(ValueError):
    """Malformed or inconsistent input."""


class HypothesisError(Exception):
    """A hypothesis of the lifting method fails for the given data.

    Args:
        hypothesis: short tag naming the violated assumption
        message: human readable diagnostics
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"[{hypothesis}] {message}")
        self.hypothesis = hypothesis
        self.message = message


class InvariantViolation(RuntimeError):
    """An internal identity failed to hold."""
