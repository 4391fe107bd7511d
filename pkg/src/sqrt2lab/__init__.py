"""Exact-arithmetic laboratory for the floor-sqrt2 parity map.

The map sends even n to floor(n / sqrt2) and odd n to floor(n * sqrt2).
Subpackages cover orbit iteration and statistics (:mod:`sqrt2lab.core`),
cycle detection and censuses (:mod:`sqrt2lab.cycles`), predecessor and
Beatty-sequence structure (:mod:`sqrt2lab.predecessors`), exact Q(sqrt2)
parity probabilities (:mod:`sqrt2lab.qsqrt2`) and a map-forced Duffing
oscillator (:mod:`sqrt2lab.duffing`).  The ``sqrt2lab`` command exposes
all of it as deterministic tables and figures.
"""

from .core import (
    SQRT2,
    BigOrbitState,
    MapConfig,
    OrbitStats,
    borderline_check,
    growth_estimate,
    growth_series,
    isqrt,
    iterate,
    log_of_big,
    orbit,
    orbit_states,
    orbit_stats,
    step,
    step_alpha,
)
from .cycles import (
    ClassifiedRange,
    CycleReport,
    Divergent,
    classify_range,
    counting_function,
    detect_cycle,
)
from .duffing import (
    DuffingParams,
    ForcingSignal,
    TrajectoryPoint,
    Transform,
    energy,
    equilibria,
    homoclinic_profile,
    melnikov,
    melnikov_scan,
    phase_portrait,
    sensitivity_split,
    separatrix_velocity,
    simulate,
)
from .errors import (
    BlowupError,
    CapExceededError,
    ClassificationMismatchError,
    DegenerateParamsError,
    InvalidProfileError,
    NonConvergentError,
    NonRepresentableError,
    OutOfRangeError,
    OutsideSeparatrixError,
    PatternBreakError,
    SingularSystemError,
    Sqrt2LabError,
    ZeroTermError,
    ZeroValueError,
)
from .predecessors import (
    BeattyCheck,
    GapWordLevel,
    PredecessorClass,
    PredecessorKind,
    PredecessorTree,
    beatty_partition_check,
    classify_predecessor,
    gap_words,
    no_predecessor_census,
    no_predecessor_numbers,
    predecessor_tree,
    predecessors_of,
    sqrt2_convergents,
)
from .qsqrt2 import (
    PARITY_KERNEL,
    ConstantsReport,
    ParityDistribution,
    QSqrt2,
    alpha_const,
    appendix_enumeration,
    constants_report,
    delta_const,
    delta_exponent,
    markov_pr,
    qadd,
    qeval,
    qmul,
    stationary_distribution,
    stationary_odd,
)

__version__ = "0.1.0"
