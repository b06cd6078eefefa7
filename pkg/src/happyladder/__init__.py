"""Generalized happy-number dynamics with exact, run-length encoded arithmetic."""

from .errors import (
    CapExceeded,
    FormulaConditionFailed,
    Infeasible,
    InvalidTarget,
    RepresentationOverflow,
    RleParseError,
)
from .ladder import Certificate, Ladder, LadderEntry, extend, willmap_holds
from .numerics import RleNumber, compare, format_rle, from_value, parse_rle, power_sum, value_of
from .preimage import min_preimage, min_preimage_excluding
from .search import find_cycles, height, scan, sigma_tau
from .waring import compute_g, thresholds

__version__ = "0.1.0"
