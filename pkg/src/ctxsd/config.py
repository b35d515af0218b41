"""Central tolerance record.

Every numeric comparison in the package reads its tolerance from a single
``Tolerances`` value, so tests can pin the defaults and the CLI can relax
the comparison thresholds uniformly through the ``CTXSD_TOL`` environment
variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import DomainError

ENV_TOL = "CTXSD_TOL"


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds used across the package.

    The first group guards type invariants, the second parametrises the
    feasibility bisections, the last sets how closely independent routes to
    the same number must agree.
    """

    norm: float = 1e-12            # normalisation, Hermiticity, weight sums
    psd: float = 1e-10             # smallest admissible POVM eigenvalue
    completeness: float = 1e-10    # entrywise |sum of elements - identity|
    overlap: float = 1e-10         # stored overlap vs recomputed overlap

    bisection: float = 1e-12       # interval width at which bisection stops
    bisection_max_iter: int = 200

    exact: float = 1e-12           # identities that hold to rounding error
    closed_form: float = 1e-9      # measurement construction vs closed form
    oracle: float = 1e-9           # brute-force oracle vs closed form
    confidence_face: float = 1e-10  # membership of the maximal-confidence face
    advantage: float = 1e-12       # strict-gap threshold for advantage flags
    window: float = 1e-6           # advantage-window endpoint accuracy


DEFAULTS = Tolerances()


def from_env(base: Tolerances = DEFAULTS) -> Tolerances:
    """Return ``base`` with the comparison tolerances floored at CTXSD_TOL.

    The override can only loosen checks (useful on platforms with a weaker
    libm); the structural tolerances and the solver settings are untouched.
    """
    raw = os.environ.get(ENV_TOL)
    if raw is None:
        return base
    try:
        floor = float(raw)
    except ValueError:
        raise DomainError(f"{ENV_TOL} must be a number, got {raw!r}") from None
    if not floor > 0.0:
        raise DomainError(f"{ENV_TOL} must be positive, got {floor}")
    return replace(
        base,
        exact=max(base.exact, floor),
        closed_form=max(base.closed_form, floor),
        oracle=max(base.oracle, floor),
        confidence_face=max(base.confidence_face, floor),
        advantage=max(base.advantage, floor),
        window=max(base.window, floor),
    )
