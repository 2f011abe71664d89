"""macdonald_interp constants and enumerations."""

import os
from enum import Enum

MI_DEFAULT_SEED = 20240501
MI_DEFAULT_POINTS = 3
MI_COORDINATE_RANGE = 10**6
MI_MAX_DENOMINATOR_HITS = 100
MI_THREADS_ENV = "SYMFUNC_THREADS"

# variable name prefixes used when rings are built on the fly
MI_X_PREFIX = "x"
MI_U_PREFIX = "u"
MI_Y_PREFIX = "y"
MI_Z_NAME = "z"
MI_A_NAME = "a"


class MIFamily(Enum):
    """Parameter families: generic (q,t) and the three degenerations."""

    QT = "qt"
    JACK = "jack"
    WHITTAKER = "whittaker"
    HL = "hl"


class MIBasis(Enum):
    """Bases of the algebra of symmetric functions."""

    MONOMIAL = "m"
    POWER_SUM = "p"
    MACDONALD_P = "P"
    MACDONALD_Q = "Q"


class MIShift(Enum):
    """Shift applied to each variable of a subset in a difference operator."""

    Q_FORWARD = "x->q*x"
    Q_BACKWARD = "u->u/q"
    ADD_BACKWARD = "x->x-1"
    ADD_FORWARD = "u->u+1"


class MIMode(Enum):
    """Verification backends."""

    SYMBOLIC = "symbolic"
    EVAL = "eval"


class MIStatus(Enum):
    """Suite outcomes."""

    PASS = "pass"
    FAIL = "fail"


# Profile with pinned desk-scale parameters; every suite finishes in minutes.
MI_DESK_PROFILE = "desk"


def resolve_threads(requested: int | None = None) -> int:
    """Number of worker threads for suites and evaluation points.

    Args:
        requested (int | None): Explicit value, typically from ``--threads``.

    Returns:
        int: ``requested`` if given, else ``SYMFUNC_THREADS``, else 1.
    """
    if requested is not None:
        return max(1, requested)
    env_value = os.environ.get(MI_THREADS_ENV, "")
    if env_value.strip().isdigit():
        return max(1, int(env_value))
    return 1
