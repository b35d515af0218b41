"""Closed-form bound library and gap certificates.

One entry per cell of the scheme x figure table: for each of the three
discrimination schemes (MESD, USD, MCM) and each figure of merit (guessing
probability, inconclusive rate, confidence) this module evaluates the
quantum optimum and its noncontextual counterpart at fixed confusability,
and pairs them into signed gap certificates. Two cells are definitional
rather than comparative: a minimum-error measurement has no inconclusive
outcome (P_0 = 0) and unambiguous conclusive outcomes are certain (C = 1).

Quantum formulas are written in the overlap |<psi1|psi2>|; the comparison
convention overlap^2 = c is applied in exactly one place,
``overlap_from_confusability``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .config import DEFAULTS, Tolerances
from .errors import ContractError, DivergenceError, DomainError
from .ncmodel import nc_mcm_guessing, nc_mesd_confidences, omega_star

__all__ = [
    "SCHEMES",
    "FIGURES",
    "THEORIES",
    "BoundSpec",
    "GapCertificate",
    "DefinitionalCell",
    "ConfidencePairCell",
    "Table1Report",
    "overlap_from_confusability",
    "eval_bound",
    "gap",
    "table1_report",
]

SCHEMES = ("MESD", "USD", "MCM")
FIGURES = ("P_g", "P_0", "C")
THEORIES = ("quantum", "noncontextual")

QUANTUM = "quantum"
NONCONTEXTUAL = "noncontextual"


def overlap_from_confusability(c: float) -> float:
    """|<psi1|psi2>| matching confusability c: the square root."""
    return math.sqrt(c)


@dataclass(frozen=True)
class BoundSpec:
    """One cell request: scheme, figure, theory and its parameters.

    Parameter applicability follows the table: p only enters the MCM row,
    omega (and the arm index) only the noncontextual MESD confidence.
    """

    scheme: str
    figure: str
    theory: str
    c: float
    p: Optional[float] = None
    omega: Optional[float] = None
    outcome: int = 1

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ContractError(f"unknown scheme {self.scheme!r}")
        if self.figure not in FIGURES:
            raise ContractError(f"unknown figure {self.figure!r}")
        if self.theory not in THEORIES:
            raise ContractError(f"unknown theory {self.theory!r}")
        if not 0.0 <= self.c <= 1.0:
            raise DomainError(f"confusability must lie in [0, 1], got {self.c}")
        if self.scheme == "MCM":
            if self.p is None:
                raise ContractError("MCM bounds require the noise level p")
            if not 0.0 <= self.p <= 1.0:
                raise DomainError(f"noise must lie in [0, 1], got {self.p}")
        elif self.p is not None:
            raise ContractError(f"p is not a parameter of {self.scheme} bounds")
        mesd_conf_nc = (
            self.scheme == "MESD"
            and self.figure == "C"
            and self.theory == NONCONTEXTUAL
        )
        if mesd_conf_nc:
            if self.omega is None:
                raise ContractError(
                    "the noncontextual MESD confidence requires omega"
                )
            if not 0.0 <= self.omega <= 1.0:
                raise DomainError(f"omega must lie in [0, 1], got {self.omega}")
        elif self.omega is not None:
            raise ContractError("omega only parametrises the noncontextual MESD confidence")
        if self.outcome not in (1, 2):
            raise ContractError(f"outcome must be 1 or 2, got {self.outcome}")
        if self.outcome == 2 and not mesd_conf_nc:
            raise ContractError("only the noncontextual MESD confidence has distinct arms")


def _helstrom_value(c: float) -> float:
    return 0.5 * (1.0 + math.sqrt(1.0 - c))


def _mcm_confidence_quantum(c: float, p: float) -> float:
    denom_sq = 1.0 - (1.0 - p) ** 2 * c
    if denom_sq <= DEFAULTS.norm:
        raise DivergenceError("confidence undefined for a pure coincident pair")
    return 0.5 * (1.0 + (1.0 - p) * math.sqrt(1.0 - c) / math.sqrt(denom_sq))


def _mcm_confidence_nc(c: float, p: float) -> float:
    denom = 1.0 - (1.0 - p) * c
    if denom <= DEFAULTS.norm:
        raise DivergenceError("confidence undefined for a pure coincident pair")
    return 0.5 * (1.0 + (1.0 - p) * (1.0 - c) / denom)


def _mcm_guessing_quantum(c: float, p: float) -> float:
    o = overlap_from_confusability(c)
    t = (1.0 - p) * o
    return 0.5 * (1.0 - t + (1.0 - p) * math.sqrt((1.0 - t) / (1.0 + t)) * math.sqrt(1.0 - c))


def eval_bound(spec: BoundSpec) -> float:
    """Closed-form value of one table cell."""
    s, f, t, c = spec.scheme, spec.figure, spec.theory, spec.c
    if s == "MESD":
        if f == "P_0":
            return 0.0
        if f == "P_g":
            return _helstrom_value(c) if t == QUANTUM else 1.0 - 0.5 * c
        # confidence
        if t == QUANTUM:
            return _helstrom_value(c)
        return nc_mesd_confidences(c, spec.omega)[spec.outcome - 1]
    if s == "USD":
        if f == "C":
            return 1.0
        o = overlap_from_confusability(c)
        if f == "P_0":
            return o if t == QUANTUM else 0.5 * (1.0 + c)
        return 1.0 - o if t == QUANTUM else 0.5 * (1.0 - c)
    # MCM
    p = spec.p
    if f == "C":
        return _mcm_confidence_quantum(c, p) if t == QUANTUM else _mcm_confidence_nc(c, p)
    if f == "P_0":
        o = overlap_from_confusability(c)
        return (1.0 - p) * o if t == QUANTUM else 0.5 * (1.0 + (1.0 - p) * c)
    return _mcm_guessing_quantum(c, p) if t == QUANTUM else nc_mcm_guessing(c, p)


@dataclass(frozen=True)
class GapCertificate:
    """Signed quantum-minus-noncontextual gap for one figure of merit.

    ``advantage`` is True when the quantum value is strictly better than
    the noncontextual one beyond the tolerance, in the direction favoured
    by the figure (larger P_g and C, smaller P_0).
    """

    quantum: BoundSpec
    noncontextual: BoundSpec
    quantum_value: float
    noncontextual_value: float
    gap: float
    advantage: bool


def gap(
    quantum: BoundSpec,
    noncontextual: BoundSpec,
    tols: Tolerances = DEFAULTS,
) -> GapCertificate:
    """Certify the gap between a matching quantum / noncontextual pair."""
    if quantum.theory != QUANTUM or noncontextual.theory != NONCONTEXTUAL:
        raise ContractError("gap expects one quantum spec and one noncontextual spec")
    same_cell = (
        quantum.scheme == noncontextual.scheme
        and quantum.figure == noncontextual.figure
        and quantum.c == noncontextual.c
        and quantum.p == noncontextual.p
    )
    if not same_cell:
        raise ContractError("specs must agree on scheme, figure and parameters")
    qv = eval_bound(quantum)
    nv = eval_bound(noncontextual)
    signed = qv - nv
    if quantum.figure == "P_0":
        advantage = signed < -tols.advantage
    else:
        advantage = signed > tols.advantage
    return GapCertificate(quantum, noncontextual, qv, nv, signed, advantage)


@dataclass(frozen=True)
class DefinitionalCell:
    """Table cell fixed by the scheme's definition rather than a comparison."""

    value: float
    note: str


@dataclass(frozen=True)
class ConfidencePairCell:
    """Noncontextual MESD confidence cell: one certificate per arm.

    ``window`` holds the omega interval on which both arms show an
    advantage simultaneously (None at the degenerate confusabilities).
    """

    arm1: GapCertificate
    arm2: GapCertificate
    window: Optional[tuple[float, float]]
    advantage: bool


@dataclass(frozen=True)
class Table1Report:
    """All nine scheme x figure cells at a fixed parameter point."""

    c: float
    p: float
    omega: float
    cells: dict
    usd_possible: bool

    def cell(self, scheme: str, figure: str):
        return self.cells[(scheme, figure)]


def table1_report(
    c: float, p: float, omega: float, tols: Tolerances = DEFAULTS
) -> Table1Report:
    """Evaluate every cell of the gap table at one parameter point."""

    def pair(scheme: str, figure: str, **extra) -> GapCertificate:
        q = BoundSpec(scheme, figure, QUANTUM, c=c, p=p if scheme == "MCM" else None)
        n = BoundSpec(
            scheme, figure, NONCONTEXTUAL, c=c,
            p=p if scheme == "MCM" else None, **extra,
        )
        return gap(q, n, tols)

    arm1 = pair("MESD", "C", omega=omega, outcome=1)
    arm2 = pair("MESD", "C", omega=omega, outcome=2)
    if 0.0 < c < 1.0:
        w_star = omega_star(c)
        window: Optional[tuple[float, float]] = (w_star, 1.0 - w_star)
    else:
        window = None
    cells = {
        ("MESD", "P_g"): pair("MESD", "P_g"),
        ("MESD", "P_0"): DefinitionalCell(0.0, "no inconclusive outcome"),
        ("MESD", "C"): ConfidencePairCell(
            arm1, arm2, window, arm1.advantage and arm2.advantage
        ),
        ("USD", "P_g"): pair("USD", "P_g"),
        ("USD", "P_0"): pair("USD", "P_0"),
        ("USD", "C"): DefinitionalCell(1.0, "conclusive outcomes are certain"),
        ("MCM", "P_g"): pair("MCM", "P_g"),
        ("MCM", "P_0"): pair("MCM", "P_0"),
        ("MCM", "C"): pair("MCM", "C"),
    }
    return Table1Report(c, p, omega, cells, usd_possible=c < 1.0)
