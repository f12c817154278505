"""Small shared value types: three-valued verdicts with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

TRUE = "true"
FALSE = "false"
UNKNOWN = "unknown"


@dataclass
class Verdict:
    """Outcome of a budgeted decision: true/false/unknown plus evidence.

    ``unknown`` means a search budget ran out; callers must never collapse
    it to false.
    """

    status: str
    witness: Any = None
    note: str = ""

    @property
    def is_true(self):
        return self.status == TRUE

    @property
    def is_false(self):
        return self.status == FALSE

    @property
    def is_unknown(self):
        return self.status == UNKNOWN

    def __bool__(self):
        raise TypeError(
            "Verdict is three-valued; test .is_true / .is_false explicitly")
