"""Quantum side of binary state discrimination on a qubit.

Value types (pure states, 2x2 Hermitian operators, ensembles, labelled
POVMs) together with the three figures of merit and the optimal-measurement
constructions for equiprobable binary ensembles:

* minimum-error: projective measurement onto the eigenspaces of the
  weighted state difference,
* unambiguous: conclusive elements proportional to the mirror projectors,
* maximum-confidence: rank-one conclusive directions from a whitened
  eigenproblem, with the free conclusive weight maximised by bisection.

All functions are pure and all values immutable, so everything here is safe
to evaluate concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS, Tolerances
from .errors import (
    ContractError,
    DegenerateEnsembleError,
    DivergenceError,
    DomainError,
    InfeasibleWeightsError,
    UndefinedConfidenceError,
    UsdImpossibleError,
)

__all__ = [
    "CONCLUSIVE_1",
    "CONCLUSIVE_2",
    "INCONCLUSIVE",
    "PureState",
    "Operator2",
    "Ensemble",
    "Povm",
    "min_eig_2x2",
    "make_pure_pair",
    "mirror",
    "noisy_ensemble",
    "guessing_probability",
    "inconclusive_rate",
    "confidence",
    "helstrom_povm",
    "usd_povm",
    "usd_optimal",
    "mcm_povm",
    "mcm_optimal",
    "mcm_direction_angle",
    "mcm_direction_angle_alt",
]

CONCLUSIVE_1 = "conclusive-1"
CONCLUSIVE_2 = "conclusive-2"
INCONCLUSIVE = "inconclusive"
_VALID_LABELS = (CONCLUSIVE_1, CONCLUSIVE_2, INCONCLUSIVE)

_IDENTITY = np.eye(2, dtype=complex)


def min_eig_2x2(m: np.ndarray) -> float:
    """Smallest eigenvalue of a 2x2 Hermitian matrix, in closed form."""
    a = m[0, 0].real
    b = m[1, 1].real
    r = math.hypot(0.5 * (a - b), abs(m[0, 1]))
    return 0.5 * (a + b) - r


def _phase_fixed(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rescale by a global phase so the first nonzero amplitude is real >= 0."""
    for comp in v:
        if abs(comp) > tol:
            return v * (comp.conjugate() / abs(comp))
    raise DomainError("zero vector has no phase convention")


@dataclass(frozen=True)
class PureState:
    """A qubit ray stored as two complex amplitudes of unit norm."""

    amp0: complex
    amp1: complex

    def __post_init__(self) -> None:
        n = abs(self.amp0) ** 2 + abs(self.amp1) ** 2
        if abs(n - 1.0) > DEFAULTS.norm:
            raise DomainError(f"amplitudes have squared norm {n}, expected 1")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amp0, self.amp1], dtype=complex)

    def overlap(self, other: "PureState") -> complex:
        """Inner product <self|other>."""
        return complex(np.vdot(self.vector, other.vector))

    def projector(self) -> "Operator2":
        v = self.vector
        return Operator2(np.outer(v, v.conj()))


class Operator2:
    """2x2 complex Hermitian matrix: density operators and POVM elements.

    The constructor copies its input, freezes it and rejects matrices whose
    skew part exceeds the Hermiticity tolerance.
    """

    __slots__ = ("_m",)

    def __init__(self, matrix) -> None:
        m = np.array(matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ContractError(f"expected a 2x2 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > DEFAULTS.norm:
            raise DomainError("matrix is not Hermitian within tolerance")
        m.flags.writeable = False
        self._m = m

    @classmethod
    def identity(cls) -> "Operator2":
        return cls(_IDENTITY)

    @classmethod
    def zero(cls) -> "Operator2":
        return cls(np.zeros((2, 2), dtype=complex))

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def trace(self) -> float:
        return float(self._m[0, 0].real + self._m[1, 1].real)

    def min_eigenvalue(self) -> float:
        return min_eig_2x2(self._m)

    def eigenvalues(self) -> np.ndarray:
        """Both eigenvalues, ascending (LAPACK route)."""
        return np.linalg.eigvalsh(self._m)

    def __repr__(self) -> str:
        return f"Operator2({self._m.tolist()!r})"


@dataclass(frozen=True)
class Ensemble:
    """Binary ensemble: priors, density operators, dephasing level, overlap.

    ``overlap_sq`` is |<psi1|psi2>|^2 of the underlying pure pair. For
    noise < 1 the pure pair is recoverable from the density operators, and
    the stored value is checked against it on construction.
    """

    priors: tuple[float, ...]
    states: tuple[Operator2, ...]
    noise: float
    overlap_sq: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "priors", tuple(float(q) for q in self.priors))
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.priors) != len(self.states):
            raise ContractError("priors and states must have equal length")
        if any(q < -DEFAULTS.norm for q in self.priors):
            raise DomainError("priors must be nonnegative")
        if abs(sum(self.priors) - 1.0) > DEFAULTS.norm:
            raise DomainError("priors must sum to 1")
        if not 0.0 <= self.noise <= 1.0:
            raise DomainError(f"noise must lie in [0, 1], got {self.noise}")
        if not 0.0 <= self.overlap_sq <= 1.0:
            raise DomainError(f"overlap_sq must lie in [0, 1], got {self.overlap_sq}")
        for op in self.states:
            if not isinstance(op, Operator2):
                raise ContractError("states must be Operator2 values")
            if op.min_eigenvalue() < -DEFAULTS.psd:
                raise DomainError("density operator has a negative eigenvalue")
            if abs(op.trace - 1.0) > DEFAULTS.norm:
                raise DomainError("density operator must have unit trace")
        if len(self.states) == 2 and self.noise < 1.0:
            got = self._recovered_overlap_sq()
            if abs(got - self.overlap_sq) > DEFAULTS.overlap:
                raise ContractError(
                    f"stored overlap_sq {self.overlap_sq} disagrees with the "
                    f"value {got} recomputed from the states"
                )

    def _recovered_overlap_sq(self) -> float:
        a, b = (_pure_from_density(s, self.noise) for s in self.states)
        return abs(a.overlap(b)) ** 2

    @property
    def average(self) -> Operator2:
        """Prior-weighted average state."""
        acc = np.zeros((2, 2), dtype=complex)
        for q, s in zip(self.priors, self.states):
            acc = acc + q * s.matrix
        return Operator2(acc)


def _pure_from_density(op: Operator2, noise: float) -> PureState:
    """Invert rho = (1-p)|psi><psi| + p/2 and return |psi| (needs p < 1)."""
    proj = (op.matrix - 0.5 * noise * _IDENTITY) / (1.0 - noise)
    w, v = np.linalg.eigh(proj)
    if abs(w[1] - 1.0) > 1e-8 or abs(w[0]) > 1e-8:
        raise ContractError("state is not a dephased pure state")
    vec = _phase_fixed(v[:, 1])
    return PureState(complex(vec[0]), complex(vec[1]))


@dataclass(frozen=True)
class Povm:
    """Labelled POVM over {conclusive-1, conclusive-2, inconclusive}.

    Elements must be positive semidefinite and sum to the identity; an
    absent inconclusive element counts as the zero operator.
    """

    outcomes: tuple[tuple[str, Operator2], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        labels = [lab for lab, _ in self.outcomes]
        for lab in labels:
            if lab not in _VALID_LABELS:
                raise ContractError(f"unknown outcome label {lab!r}")
        if len(set(labels)) != len(labels):
            raise ContractError("duplicate outcome labels")
        total = np.zeros((2, 2), dtype=complex)
        for lab, op in self.outcomes:
            if op.min_eigenvalue() < -DEFAULTS.psd:
                raise ContractError(f"element {lab!r} has a negative eigenvalue")
            total = total + op.matrix
        if np.max(np.abs(total - _IDENTITY)) > DEFAULTS.completeness:
            raise ContractError("POVM elements do not sum to the identity")

    def element(self, label: str) -> Operator2:
        for lab, op in self.outcomes:
            if lab == label:
                return op
        raise ContractError(f"POVM has no outcome labelled {label!r}")

    def conclusive(self, i: int) -> Operator2:
        return self.element(f"conclusive-{i}")

    def inconclusive(self) -> Operator2:
        for lab, op in self.outcomes:
            if lab == INCONCLUSIVE:
                return op
        return Operator2.zero()

    @property
    def conclusive_count(self) -> int:
        return sum(1 for lab, _ in self.outcomes if lab != INCONCLUSIVE)


# ---------------------------------------------------------------------------
# ensembles


def make_pure_pair(theta: float) -> tuple[PureState, PureState]:
    """Two unit vectors symmetric about |0> with <psi1|psi2> = cos(theta).

    |psi1> = cos(theta/2)|0> - sin(theta/2)|1> and
    |psi2> = cos(theta/2)|0> + sin(theta/2)|1>, for theta in [0, pi].
    """
    if not 0.0 <= theta <= math.pi:
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    hc = math.cos(0.5 * theta)
    hs = math.sin(0.5 * theta)
    return PureState(complex(hc), complex(-hs)), PureState(complex(hc), complex(hs))


def mirror(state: PureState) -> PureState:
    """The orthogonal ray, phase-fixed (first nonzero amplitude real >= 0)."""
    raw = np.array([-state.amp1.conjugate(), state.amp0.conjugate()], dtype=complex)
    v = _phase_fixed(raw)
    return PureState(complex(v[0]), complex(v[1]))


def noisy_ensemble(theta: float, p: float) -> Ensemble:
    """Equiprobable dephased pair rho_i = (1-p)|psi_i><psi_i| + p/2."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    psi1, psi2 = make_pure_pair(theta)
    overlap_sq = math.cos(theta) ** 2

    def dephase(s: PureState) -> Operator2:
        return Operator2((1.0 - p) * s.projector().matrix + 0.5 * p * _IDENTITY)

    return Ensemble((0.5, 0.5), (dephase(psi1), dephase(psi2)), p, overlap_sq)


def _pure_pair_of(ens: Ensemble) -> tuple[PureState, PureState]:
    if len(ens.states) != 2:
        raise ContractError("binary ensemble required")
    if ens.noise != 0.0:
        raise ContractError("pure-state ensemble required (noise = 0)")
    a, b = (_pure_from_density(s, 0.0) for s in ens.states)
    return a, b


# ---------------------------------------------------------------------------
# figures of merit


def _expect(rho: Operator2, op: Operator2) -> float:
    return float(np.trace(rho.matrix @ op.matrix).real)


def guessing_probability(ens: Ensemble, m: Povm) -> float:
    """Average probability that the conclusive outcome names the state.

    sum_i q_i Tr[rho_i pi_i]; requires one conclusive outcome per state.
    """
    if m.conclusive_count != len(ens.states):
        raise ContractError(
            f"POVM has {m.conclusive_count} conclusive outcomes for "
            f"{len(ens.states)} states"
        )
    total = 0.0
    for i, (q, rho) in enumerate(zip(ens.priors, ens.states), start=1):
        total += q * _expect(rho, m.conclusive(i))
    return total


def inconclusive_rate(ens: Ensemble, m: Povm) -> float:
    """Tr[rho pi_0] under the prior-averaged state (0 if pi_0 is absent)."""
    return _expect(ens.average, m.inconclusive())


def confidence(ens: Ensemble, m: Povm, i: int) -> float:
    """Posterior probability that state i was prepared given outcome i."""
    if not 1 <= i <= len(ens.states):
        raise ContractError(f"outcome index {i} out of range")
    outcome_prob = _expect(ens.average, m.conclusive(i))
    if outcome_prob <= 0.0:
        raise UndefinedConfidenceError(f"outcome {i} has zero probability")
    joint = ens.priors[i - 1] * _expect(ens.states[i - 1], m.conclusive(i))
    return joint / outcome_prob


# ---------------------------------------------------------------------------
# minimum-error measurement


def helstrom_povm(ens: Ensemble) -> Povm:
    """Projective measurement onto the eigenspaces of q1 rho1 - q2 rho2.

    Outcome 1 collects the strictly positive eigenspace. When the weighted
    states coincide the measurement is a pure tie-break and falls back to
    the computational basis.
    """
    if len(ens.states) != 2:
        raise ContractError("binary ensemble required")
    x = ens.priors[0] * ens.states[0].matrix - ens.priors[1] * ens.states[1].matrix
    if np.max(np.abs(x)) <= DEFAULTS.norm:
        pi1 = np.diag([1.0 + 0.0j, 0.0j])
    else:
        w, v = np.linalg.eigh(x)
        pi1 = np.zeros((2, 2), dtype=complex)
        for k in range(2):
            if w[k] > 0.0:
                pi1 = pi1 + np.outer(v[:, k], v[:, k].conj())
    pi2 = _IDENTITY - pi1
    return Povm(((CONCLUSIVE_1, Operator2(pi1)), (CONCLUSIVE_2, Operator2(pi2))))


# ---------------------------------------------------------------------------
# unambiguous discrimination


def usd_povm(ens: Ensemble, gamma1: float, gamma2: float) -> Povm:
    """Unambiguous POVM pi_i = gamma_i |mirror(psi_j)><mirror(psi_j)|, j != i.

    Each conclusive element projects onto the ray orthogonal to the
    competing state, so a conclusive click identifies its state with
    certainty. Requires a pure ensemble and weights that leave
    pi_0 = 1 - pi_1 - pi_2 positive semidefinite.
    """
    for g in (gamma1, gamma2):
        if not 0.0 <= g <= 1.0:
            raise DomainError(f"weights must lie in [0, 1], got {g}")
    psi1, psi2 = _pure_pair_of(ens)
    pi1 = gamma1 * mirror(psi2).projector().matrix
    pi2 = gamma2 * mirror(psi1).projector().matrix
    pi0 = _IDENTITY - pi1 - pi2
    if min_eig_2x2(pi0) < -DEFAULTS.psd:
        raise InfeasibleWeightsError(
            f"weights ({gamma1}, {gamma2}) make the inconclusive element indefinite"
        )
    return Povm(
        (
            (CONCLUSIVE_1, Operator2(pi1)),
            (CONCLUSIVE_2, Operator2(pi2)),
            (INCONCLUSIVE, Operator2(pi0)),
        )
    )


def _bisect_max_weight(s: np.ndarray, tols: Tolerances) -> float:
    """Largest w in [0, 1] keeping 1 - w*s positive semidefinite.

    The smallest eigenvalue of 1 - w*s is concave and decreasing in w for
    s >= 0, so feasibility is an interval and bisection on the minimum
    eigenvalue converges monotonically.
    """

    def feasible(w: float) -> bool:
        return min_eig_2x2(_IDENTITY - w * s) >= -1e-15

    if feasible(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(tols.bisection_max_iter):
        if hi - lo <= tols.bisection:
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo


def usd_optimal(ens: Ensemble, tols: Tolerances = DEFAULTS) -> tuple[Povm, float]:
    """Minimise the inconclusive rate over feasible unambiguous weights.

    For an equiprobable pure pair the rate decreases linearly in
    gamma1 + gamma2 while the feasible set is convex and symmetric under
    swapping the weights, so the optimum sits at the largest symmetric
    weight with pi_0 still positive semidefinite; bisection on the minimum
    eigenvalue finds it. Coincident states admit no unambiguous
    measurement and raise.
    """
    psi1, psi2 = _pure_pair_of(ens)
    if ens.overlap_sq >= 1.0 - tols.norm:
        raise UsdImpossibleError("states are linearly dependent")
    s = mirror(psi2).projector().matrix + mirror(psi1).projector().matrix
    g = _bisect_max_weight(s, tols)
    m = usd_povm(ens, g, g)
    return m, inconclusive_rate(ens, m)


# ---------------------------------------------------------------------------
# maximum-confidence measurement


def _mcm_directions(
    ens: Ensemble, theta: float, p: float, alt_angle: bool
) -> tuple[np.ndarray, np.ndarray]:
    if alt_angle:
        phi = mcm_direction_angle_alt(theta, p)
        return (
            np.array([math.cos(0.5 * phi), -math.sin(0.5 * phi)], dtype=complex),
            np.array([math.cos(0.5 * phi), math.sin(0.5 * phi)], dtype=complex),
        )
    rho = ens.average.matrix
    w, v = np.linalg.eigh(rho)
    if w[0] <= DEFAULTS.norm:
        raise DegenerateEnsembleError(
            "average state is singular (no noise and coincident or antipodal pair)"
        )
    whiten = (v * (w**-0.5)) @ v.conj().T
    dirs = []
    for i, op in enumerate(ens.states):
        g = whiten @ op.matrix @ whiten
        wg, vg = np.linalg.eigh(g)
        if wg[1] - wg[0] <= 1e-12:
            # Every direction attains the maximal confidence here; take the
            # limit of the generic case so the pair stays symmetric and the
            # optimal inconclusive rate stays continuous in (theta, p).
            sign = -1.0 if i == 0 else 1.0
            u = np.array([1.0, sign]) / math.sqrt(2.0)
        else:
            u = vg[:, 1]
        d = whiten @ u
        d = _phase_fixed(d / np.linalg.norm(d))
        dirs.append(d)
    return dirs[0], dirs[1]


def mcm_povm(theta: float, p: float, alpha: float, *, alt_angle: bool = False) -> Povm:
    """Maximum-confidence POVM with conclusive elements alpha |phi_i><phi_i|.

    The direction |phi_i> maximises the retrodictive confidence
    q_i Tr[rho_i pi] / Tr[rho pi] over rank-one pi. Whitening by
    rho^(-1/2) turns that ratio into a Rayleigh quotient, so
    |phi_i> ~ rho^(-1/2) u with u the top eigenvector of
    rho^(-1/2) rho_i rho^(-1/2). The achieved confidence does not depend
    on alpha; alpha only scales the conclusive rate, and must leave
    pi_0 = 1 - pi_1 - pi_2 positive semidefinite.

    ``alt_angle`` swaps in a closed-form direction angle retained for
    comparison only (see :func:`mcm_direction_angle_alt`); everything else
    in the package uses the eigenvector construction.
    """
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    ens = noisy_ensemble(theta, p)
    d1, d2 = _mcm_directions(ens, theta, p, alt_angle)
    pi1 = alpha * np.outer(d1, d1.conj())
    pi2 = alpha * np.outer(d2, d2.conj())
    pi0 = _IDENTITY - pi1 - pi2
    if min_eig_2x2(pi0) < -DEFAULTS.psd:
        raise InfeasibleWeightsError(
            f"alpha = {alpha} makes the inconclusive element indefinite"
        )
    return Povm(
        (
            (CONCLUSIVE_1, Operator2(pi1)),
            (CONCLUSIVE_2, Operator2(pi2)),
            (INCONCLUSIVE, Operator2(pi0)),
        )
    )


def mcm_optimal(theta: float, p: float, tols: Tolerances = DEFAULTS) -> tuple[Povm, float]:
    """Largest feasible conclusive weight and the inconclusive rate it attains.

    alpha is maximised by bisection on the smallest eigenvalue of pi_0;
    the confidence is alpha-independent, so this is the measurement with
    maximal confidences and minimal inconclusive rate.
    """
    ens = noisy_ensemble(theta, p)
    d1, d2 = _mcm_directions(ens, theta, p, False)
    s = np.outer(d1, d1.conj()) + np.outer(d2, d2.conj())
    alpha = _bisect_max_weight(s, tols)
    m = mcm_povm(theta, p, alpha)
    return m, inconclusive_rate(ens, m)


def mcm_direction_angle(theta: float, p: float) -> float:
    """Angle phi of the second conclusive direction, |phi_2> = (cos(phi/2), sin(phi/2))."""
    ens = noisy_ensemble(theta, p)
    _, d2 = _mcm_directions(ens, theta, p, False)
    return 2.0 * math.atan2(float(d2[1].real), float(d2[0].real))


def mcm_direction_angle_alt(theta: float, p: float) -> float:
    """Comparison-only closed form for the conclusive direction angle.

    Kept so it can be plotted against :func:`mcm_direction_angle`; the two
    disagree, already in the noise-free limit, where the conclusive
    directions must be orthogonal to the competing state while this
    expression tends to zero. Not used by any construction unless
    requested through ``alt_angle``.
    """
    st = math.sin(theta)
    if st <= DEFAULTS.norm:
        raise DivergenceError("angle formula undefined at theta in {0, pi}")
    ct = math.cos(theta)
    t = p * ct * math.sqrt((1.0 - p * p * ct * ct) / (st * st))
    return math.atan(t)
