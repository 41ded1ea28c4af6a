"""Limit experiments and the body comparator.

Two convergence experiments are exposed: the spherical-projection limit
(mu^(d-1) * area of the radial shadow of K + mu*v approaches the brightness
V_K(v)) and the pseudopyramid limit (d * vol ppyr(K + mu*v) / mu approaches
the same number).  The comparator replays the second limit over all rational
directions up to a height cutoff and declares two bodies distinct when some
direction separates their brightness estimates beyond tolerance and the
estimated convergence error.

A verdict of "equal-within-tolerance" is explicitly not a certificate of
equality: only finitely many directions and finitely large mu are examined.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .bodies import Ball, Body, bounding_radius, is_symmetric, translate
from .errors import MuTooSmall, NonConvergence
from .lattice import count
from .projections import (
    DirectionSample,
    as_direction,
    brightness_hull,
    spherical_area,
)
from .pseudopyramid import ppyr_volume_exact, ppyr_volume_montecarlo
from .rational import rat, ratvec

EQUAL = "equal-within-tolerance"
DISTINCT = "distinct"
INCONCLUSIVE = "inconclusive"

_TOLERANCE_NOTE = (
    "equal-within-tolerance is a finite-data verdict, not a proof of equality: "
    "only the listed rational directions and finite mu were examined"
)


@dataclass(frozen=True)
class ConvergenceRow:
    mu: float
    estimate: float
    reference: float
    abs_error: float
    bound: float | None = None
    sandwich_lo: float | None = None
    sandwich_hi: float | None = None


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple[ConvergenceRow, ...]


@dataclass(frozen=True)
class CompareRow:
    direction: DirectionSample
    brightness_a: float
    brightness_b: float
    gap: float
    tolerance: float


@dataclass(frozen=True)
class CompareVerdict:
    verdict: str
    witness: DirectionSample | None
    gap: float
    rows: tuple[CompareRow, ...]
    tolerance: float
    note: str


@dataclass(frozen=True)
class ProbeMismatch:
    w: tuple[int, ...]
    s: Fraction
    count_a: int
    count_b: int


def _check_schedule(body: Body, mu_list: Sequence[float]) -> float:
    if not mu_list:
        raise ValueError("mu schedule is empty")
    mus = [float(m) for m in mu_list]
    if any(b <= a for a, b in zip(mus, mus[1:])):
        raise ValueError("mu schedule must be strictly increasing")
    n_upper = float(bounding_radius(body).value)
    if mus[0] <= n_upper:
        raise MuTooSmall(
            f"mu={mus[0]} must exceed the bounding radius {n_upper:.6g}"
        )
    return n_upper


def _rational_translation(ds: DirectionSample, mu: float):
    """Exact translation vector for mu * v, preferring integer multiples of
    the primitive direction (so polytope translates stay rational in the
    small-denominator sense), plus the effectively realized mu."""
    if ds.primitive is not None:
        pn = ds.primitive_norm
        m = mu / pn
        m_int = round(m)
        if m_int >= 1 and abs(m - m_int) < 1e-9:
            return ratvec(m_int * c for c in ds.primitive), m_int * pn
    return ratvec(Fraction(mu * c) for c in ds.v), mu


def spherical_limit_table(
    body: Body,
    v: "DirectionSample | Sequence[float]",
    mu_list: Sequence[float],
    method: str = "exact",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
) -> ConvergenceTable:
    """Rows of (mu, mu^(d-1) * area S(K + mu v), brightness reference)."""
    ds = as_direction(v)
    _check_schedule(body, mu_list)
    d = body.dim
    reference = brightness_hull(body, ds)
    rows = []
    for mu in mu_list:
        mu = float(mu)
        w, mu_eff = _rational_translation(ds, mu)
        shifted = translate(body, w)
        area = spherical_area(shifted, method, samples=samples, seed=seed)
        if method == "montecarlo":
            area = area[0]
        estimate = mu_eff ** (d - 1) * area
        rows.append(
            ConvergenceRow(
                mu=mu_eff,
                estimate=estimate,
                reference=reference,
                abs_error=abs(estimate - reference),
            )
        )
    if method != "montecarlo":
        errs = [r.abs_error for r in rows]
        if any(b > a * 1.1 + 1e-12 for a, b in zip(errs, errs[1:])):
            raise NonConvergence("spherical limit errors failed to decrease")
    return ConvergenceTable(rows=tuple(rows))


def ppyr_limit_brightness(
    body: Body,
    v: "DirectionSample | Sequence[float]",
    mu_list: Sequence[float],
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    check_sandwich: bool = True,
) -> ConvergenceTable:
    """Rows of (mu, d * vol ppyr(K + mu v) / mu, brightness reference).

    Volumes are exact for polytope bodies and Monte-Carlo for balls.  Each
    row also records (and asserts) the two-sided enclosure
    ((mu -+ N)/mu)^d * mu^(d-1) * area S(K + mu v) around the estimate.
    """
    ds = as_direction(v)
    n_upper = _check_schedule(body, mu_list)
    d = body.dim
    reference = brightness_hull(body, ds)
    is_ball = isinstance(body.shape, Ball)
    rows = []
    for idx, mu in enumerate(mu_list):
        w, mu_eff = _rational_translation(ds, float(mu))
        shifted = translate(body, w)
        if is_ball:
            vol, vol_err = ppyr_volume_montecarlo(
                shifted, samples, seed=(seed, idx)
            )
        else:
            vol, vol_err = float(ppyr_volume_exact(shifted)), 0.0
        estimate = d * vol / mu_eff
        area = spherical_area(shifted, "exact")
        lo = ((mu_eff - n_upper) / mu_eff) ** d * mu_eff ** (d - 1) * area
        hi = ((mu_eff + n_upper) / mu_eff) ** d * mu_eff ** (d - 1) * area
        if check_sandwich:
            slack = 1e-6 * max(1.0, abs(estimate)) + 5.0 * d * vol_err / mu_eff
            if not (lo - slack <= estimate <= hi + slack):
                raise NonConvergence(
                    f"pseudopyramid sandwich violated at mu={mu_eff}: "
                    f"{lo} <= {estimate} <= {hi} fails"
                )
        rows.append(
            ConvergenceRow(
                mu=mu_eff,
                estimate=estimate,
                reference=reference,
                abs_error=abs(estimate - reference),
                sandwich_lo=lo,
                sandwich_hi=hi,
            )
        )
    return ConvergenceTable(rows=tuple(rows))


def rational_directions(d: int, h: int) -> list[DirectionSample]:
    """All primitive integer directions with entries in [-h, h], deduplicated
    up to sign (first nonzero entry positive), sorted by squared length then
    lexicographically."""
    if h < 1:
        raise ValueError("height must be >= 1")
    out = []
    for vec in product(range(-h, h + 1), repeat=d):
        nz = next((c for c in vec if c != 0), 0)
        if nz <= 0:
            continue
        if math.gcd(*(abs(c) for c in vec)) != 1:
            continue
        out.append(vec)
    out.sort(key=lambda p: (sum(c * c for c in p), p))
    return [DirectionSample.from_primitive(p) for p in out]


def _brightness_via_ppyr(
    body: Body,
    ds: DirectionSample,
    mu_max: float,
    samples: int,
    seed_tag: tuple,
) -> tuple[float, float]:
    """Richardson-extrapolated brightness estimate from two pseudopyramid
    volumes at mu and mu/2, plus an error allowance (the size of the
    extrapolation correction, inflated by Monte-Carlo noise for balls)."""
    pn = ds.primitive_norm
    d = body.dim
    n_upper = float(bounding_radius(body).value)
    m_hi = max(2, 2 * round(mu_max / (2.0 * pn)))
    while (m_hi // 2) * pn <= n_upper:
        m_hi *= 2
    is_ball = isinstance(body.shape, Ball)
    levels = {}
    for level, m in ((0, m_hi // 2), (1, m_hi)):
        w = tuple(m * c for c in ds.primitive)
        shifted = translate(body, ratvec(w))
        if is_ball:
            vol, vol_err = ppyr_volume_montecarlo(
                shifted, samples, seed=(*seed_tag, level)
            )
        else:
            vol, vol_err = float(ppyr_volume_exact(shifted)), 0.0
        mu = m * pn
        levels[level] = (d * vol / mu, d * vol_err / mu)
    est_lo, noise_lo = levels[0]
    est_hi, noise_hi = levels[1]
    richardson = 2.0 * est_hi - est_lo
    err = abs(richardson - est_hi) + 2.0 * noise_hi + noise_lo
    return richardson, err


def compare_bodies(
    body_a: Body,
    body_b: Body,
    h: int = 2,
    mu_max: float = 64.0,
    tol: float = 0.05,
    *,
    samples: int = 200_000,
    seed: int = 0,
) -> CompareVerdict:
    """Scan all rational directions of height <= h and compare brightness
    estimates of the two bodies obtained from pseudopyramid volumes.

    distinct: some gap exceeds tol plus both convergence-error estimates.
    equal-within-tolerance: every gap is within tol.  Anything in between is
    inconclusive.  Both bodies are expected to be symmetric; a warning is
    emitted otherwise (the verdict machinery still runs).
    """
    if body_a.dim != body_b.dim:
        raise ValueError("bodies live in different dimensions")
    both_symmetric = True
    for name, b in (("first", body_a), ("second", body_b)):
        if not is_symmetric(b):
            both_symmetric = False
            warnings.warn(
                f"{name} body is not symmetric: the equal-brightness test "
                "is only decisive for symmetric bodies",
                stacklevel=2,
            )
    directions = rational_directions(body_a.dim, h)
    if not both_symmetric:
        # sign deduplication leans on V(v) = V(-v) estimates converging the
        # same way, which needs symmetry; otherwise test both signs
        directions = [
            signed
            for ds in directions
            for signed in (
                ds,
                DirectionSample.from_primitive(tuple(-c for c in ds.primitive)),
            )
        ]
    rows = []
    for idx, ds in enumerate(directions):
        va, err_a = _brightness_via_ppyr(
            body_a, ds, mu_max, samples, seed_tag=(seed, 0, idx)
        )
        vb, err_b = _brightness_via_ppyr(
            body_b, ds, mu_max, samples, seed_tag=(seed, 1, idx)
        )
        gap = abs(va - vb)
        rows.append(
            CompareRow(
                direction=ds,
                brightness_a=va,
                brightness_b=vb,
                gap=gap,
                tolerance=tol + err_a + err_b,
            )
        )
    exceeding = [r for r in rows if r.gap > r.tolerance]
    if exceeding:
        witness = max(exceeding, key=lambda r: r.gap)
        verdict = DISTINCT
        gap = witness.gap
        wdir = witness.direction
    elif all(r.gap <= tol for r in rows):
        verdict = EQUAL
        gap = max((r.gap for r in rows), default=0.0)
        wdir = None
    else:
        verdict = INCONCLUSIVE
        gap = max((r.gap for r in rows), default=0.0)
        wdir = None
    return CompareVerdict(
        verdict=verdict,
        witness=wdir,
        gap=gap,
        rows=tuple(rows),
        tolerance=tol,
        note=_TOLERANCE_NOTE,
    )


def ehrhart_equality_probe(
    body_a: Body,
    body_b: Body,
    h: int,
    s_list: Sequence,
) -> ProbeMismatch | None:
    """First (w, s) where the lattice counts of s*(A + w) and s*(B + w)
    disagree, scanning integer w in lexicographic order over [-h, h]^d and
    s in the given order.  None when every probe agrees."""
    if body_a.dim != body_b.dim:
        raise ValueError("bodies live in different dimensions")
    svals = [rat(s) for s in s_list]
    if not svals:
        raise ValueError("s_list must be nonempty")
    for w in product(range(-h, h + 1), repeat=body_a.dim):
        for s in svals:
            ca = count(body_a, w, s)
            cb = count(body_b, w, s)
            if ca != cb:
                return ProbeMismatch(w=w, s=s, count_a=ca, count_b=cb)
    return None
