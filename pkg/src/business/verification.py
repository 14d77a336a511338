"""Verification suites.

Each suite returns :class:`VerifyRow` objects; :func:`run_verification`
collects them into a :class:`VerifyReport`. A row passes when its relative
difference from the reference is within the report threshold (cross
representation rows use the looser cross-representation threshold).
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from src.config.constants import (
    DISPATCH_TAG,
    IDENTITY_SAMPLES,
    IDENTITY_SEED,
    LAPLACE_P_VALUES,
    PRODUCT_GRID_MU,
    PRODUCT_GRID_NU,
    PRODUCT_GRID_XY,
    VERIFY_SUITES,
)
from src.config.settings import Settings
from src.models import (
    EvalPoint,
    HypParams,
    IdentityTag,
    PcfProdError,
    QuadShape,
    QuadSpec,
    Representation,
    ValidationError,
    VerifyReport,
    VerifyRow,
    relative_difference,
)
from src.algorithms.pcf import pcf_D, pcf_sum_residuals
from src.algorithms.quadrature import integrate, integrate_split
from src.algorithms.specfun import (
    DEFAULT_SETTINGS,
    bessel_I,
    bessel_K,
    beta,
    elliptic_K,
    erfc,
    f21,
    gamma,
    gauss_2f1,
    gauss_2f1_near_unity,
    incomplete_beta,
    kummer_phi,
    legendre_P,
    legendre_P_equal,
    rgamma,
)
from src.utils.helpers import grid_points
from . import products
from .laplace import laplace_pair
from .oracle import reference_value

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
# an arithmetic fault inside an integrand fails its row, not the run
EVALUATION_ERRORS = (PcfProdError, ArithmeticError, ValueError)


# ==================== Grids ====================
D_PHI_GRID = ((-1.5, -0.75, -0.25), (-1.5, -0.5, 0.5), (0.5, 1.5, 3.0), (0.5, 2.0, 5.0))
KK_POINTS = tuple((x, y) for x in (0.25, 1.0, 2.5) for y in (0.25, 1.0, 2.5))
ERFC2_POINTS = tuple((x, y) for x in (0.0, 1.0, 2.5) for y in (0.0, 1.0, 2.5))
DI_POINTS = tuple(
    (nu, x, y) for nu in (-1.5, -0.5) for x in (0.5, 2.0) for y in (0.5, 2.0, 5.0)
)
DNEG_ERFC_POINTS = tuple(
    (nu, x, y) for nu in (-1.5, -0.5) for x in (0.0, 1.0, 2.5) for y in (0.5, 2.0)
)
AUDIT_GRID = ((-1.5, -0.5), (-1.5, -0.5, 0.5), (0.25, 1.0, 2.5), (0.25, 1.0, 2.5))
LAPLACE_PARAMS = (
    EvalPoint(-0.5, -0.5, 1.0, 1.0),
    EvalPoint(-0.3, -0.7, 0.5, 1.5),
    EvalPoint(-0.8, -0.2, 1.5, 0.75),
)
# powers of two tried when an audited coefficient misses
AUDIT_EXPONENTS = (-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0)

ORIGIN = EvalPoint(0.0, 0.0, 0.0, 0.0)


def _row(
        suite: str,
        label: str,
        point: Optional[EvalPoint],
        value: float,
        reference: float,
        tol: float,
        abs_err_est: float = 0.0,
        rel_diff: Optional[float] = None,
        note: str = ""
) -> VerifyRow:
    point = point or ORIGIN
    if rel_diff is None:
        rel_diff = relative_difference(value, reference)
    return VerifyRow(
        suite=suite,
        label=label,
        nu=point.nu,
        mu=point.mu,
        x=point.x,
        y=point.y,
        value=value,
        abs_err_est=abs_err_est,
        oracle=reference,
        rel_diff=rel_diff,
        passed=rel_diff <= tol,
        note=note,
    )


def _failed_row(suite: str, label: str, point: Optional[EvalPoint], exc: Exception) -> VerifyRow:
    logger.warning(f"{suite}/{label} at {point}: {exc}")
    return _row(suite, label, point, math.nan, math.nan, 0.0, rel_diff=math.inf,
                note=f"{type(exc).__name__}: {exc}")


def _guarded(
        suite: str,
        label: str,
        point: Optional[EvalPoint],
        tol: float,
        compute: Callable[[], Tuple[float, float]]
) -> VerifyRow:
    """Row from ``compute() -> (value, reference)``, catching library errors."""
    try:
        value, reference = compute()
    except EVALUATION_ERRORS as exc:
        return _failed_row(suite, label, point, exc)
    return _row(suite, label, point, value, reference, tol)


def _mp(value) -> float:
    return float(value)


# ==================== Identities ====================

def _random_hyp_params(count: int, seed: int) -> List[Tuple[float, float, float]]:
    """Reproducible (a, b, c) with c > 1/2, rounded so row labels stay short."""
    rng = np.random.default_rng(seed)
    ab = rng.uniform(-0.9, 1.5, size=(count, 2)).round(3)
    c = rng.uniform(0.55, 2.5, size=count).round(3)
    return [(float(a), float(b), float(c_)) for (a, b), c_ in zip(ab, c)]


def identity_rows(settings: Settings, tol: float) -> List[VerifyRow]:
    """Special-function identities and extended-precision spot checks."""
    s = settings
    rows: List[VerifyRow] = []

    def add(label: str, compute: Callable[[], Tuple[float, float]],
            point: Optional[EvalPoint] = None) -> None:
        rows.append(_guarded("identities", label, point, tol, compute))

    for a in (-0.9, -0.3, 0.4):
        for b in (0.5, 1.5):
            for z in (0.5, 2.0, 10.0):
                add(f"kummer-transform a={a} b={b} z={z}", lambda a=a, b=b, z=z: (
                    kummer_phi(a, b, z, s).value,
                    math.exp(z) * kummer_phi(b - a, b, -z, s).value,
                ))

    for nu, z in ((-0.5, 0.0), (-1.2, 0.8), (-2.0, 1.0), (-0.3, 2.5)):
        point = EvalPoint(nu, 0.0, z, 0.0)
        try:
            sum_res, diff_res = pcf_sum_residuals(nu, z, s)
            scale = abs(pcf_D(nu, z, s).value) + abs(pcf_D(nu, -z, s).value)
        except EVALUATION_ERRORS as exc:
            rows.append(_failed_row("identities", "pcf-sum-difference", point, exc))
            continue
        for label, residual in (("pcf-sum", sum_res), ("pcf-difference", diff_res)):
            rows.append(_row("identities", label, point, residual, 0.0, tol,
                             rel_diff=abs(residual) / scale))

    for z in (0.25, 1.0, 3.0):
        add("pcf-half-bessel-k", lambda z=z: (
            pcf_D(-0.5, z, s).value,
            math.sqrt(z / (2.0 * math.pi)) * bessel_K(0.25, 0.25 * z * z, s),
        ), EvalPoint(-0.5, 0.0, z, 0.0))

    for z in (-2.0, -0.5, 0.0, 0.5, 2.0, 5.0):
        add("pcf-minus-one-erfc", lambda z=z: (
            pcf_D(-1.0, z, s).value,
            math.exp(0.25 * z * z) * math.sqrt(0.5 * math.pi) * erfc(z / math.sqrt(2.0)),
        ), EvalPoint(-1.0, 0.0, z, 0.0))

    add("kummer-bessel-i", lambda: (
        kummer_phi(0.75, 1.5, 2.0, s).value,
        gamma(1.25) * 0.5 ** -0.25 * math.e * bessel_I(0.25, 1.0, s),
    ))

    z = 0.3

    def direct(a: float, b: float, c: float) -> float:
        return f21(a, b, c, z, settings=s)[0]

    for a, b, c in _random_hyp_params(IDENTITY_SAMPLES, IDENTITY_SEED):
        add(f"2f1-euler ({a},{b},{c})", lambda a=a, b=b, c=c: (
            direct(a, b, c), (1 - z) ** (c - a - b) * f21(c - a, c - b, c, z, settings=s)[0]))
        add(f"2f1-pfaff-a ({a},{b},{c})", lambda a=a, b=b, c=c: (
            direct(a, b, c), (1 - z) ** -a * f21(a, c - b, c, z / (z - 1), settings=s)[0]))
        add(f"2f1-pfaff-b ({a},{b},{c})", lambda a=a, b=b, c=c: (
            direct(a, b, c), (1 - z) ** -b * f21(b, c - a, c, z / (z - 1), settings=s)[0]))
        add(f"2f1-connection ({a},{b},{c})", lambda a=a, b=b, c=c: (
            direct(a, b, c), gauss_2f1_near_unity(HypParams(a, b, c, z), 1 - z, s).value))

    for a, b in ((-0.2, 0.3), (0.25, 0.25)):
        for z in (0.1, 0.5, 0.9):
            root = math.sqrt(1.0 - z)
            add(f"2f1-quadratic ({a},{b}) z={z}", lambda a=a, b=b, z=z, root=root: (
                f21(a, b, a + b + 0.5, z, settings=s)[0],
                f21(2.0 * a, 2.0 * b, a + b + 0.5, 0.5 * (1.0 - root),
                    one_minus_z=0.5 * (1.0 + root), settings=s)[0],
            ))

    a, b = 0.3, 0.1
    for x in (0.1, 0.5, 0.9):
        add(f"2f1-legendre-sqrt x={x}", lambda x=x: (
            f21(a, b, a + b + 0.5, x, settings=s)[0],
            2.0 ** (a + b - 0.5) * gamma(a + b + 0.5) * x ** (0.25 * (1 - 2 * a - 2 * b))
            * legendre_P(a - b - 0.5, 0.5 - a - b, math.sqrt(1 - x), settings=s),
        ))

    a, b = 0.3, 0.7
    for x in (0.1, 0.5, 0.9):
        r = math.sqrt(x)
        order, degree = 1.5 - a - b, a - b - 0.5
        add(f"2f1-legendre-odd x={x}", lambda x=x, r=r: (
            f21(a, b, 1.5, x, settings=s)[0],
            -2.0 ** (a + b - 3.5) / SQRT_PI * gamma(a - 0.5) * gamma(b - 0.5)
            / r * (1 - x) ** (0.25 * (3 - 2 * a - 2 * b))
            * (legendre_P(degree, order, r, 1 - r, 1 + r, s)
               - legendre_P(degree, order, -r, 1 + r, 1 - r, s)),
        ))

    for a, b, z in ((0.3, 0.7, 0.4), (-0.5, 0.25, 0.8), (0.6, 1.5, 0.2),
                    (0.1, 0.9, 0.65), (-1.2, 0.4, 0.5), (0.8, 0.3, 0.95)):
        add(f"2f1-incomplete-beta ({a},{b},{z})", lambda a=a, b=b, z=z: (
            f21(a, b, b + 1.0, z, settings=s)[0],
            b * z ** -b * incomplete_beta(z, b, 1.0 - a, settings=s),
        ))

    for m in (0.3, 0.7, 0.95):
        add(f"2f1-elliptic m={m}", lambda m=m: (
            f21(0.5, 0.5, 1.0, m, settings=s)[0], 2.0 / math.pi * elliptic_K(m)))

    for z in (0.2, 0.5, 0.9):
        add(f"2f1-arcsin z={z}", lambda z=z: (
            f21(0.5, 0.5, 1.5, z * z, settings=s)[0], math.asin(z) / z))

    for nu, x in ((-0.5, 0.0), (-0.5, 0.9), (-1.0, 0.5), (-0.3, -0.4)):
        add(f"legendre-equal nu={nu} x={x}", lambda nu=nu, x=x: (
            legendre_P_equal(nu, x, s), legendre_P(nu, nu, x, settings=s)))

    for b in (0.75, 1.25):
        for x in (0.2, 0.6):
            r = math.sqrt(x)
            h = b - 0.5
            add(f"2f1-beta-form b={b} x={x}", lambda b=b, x=x, r=r, h=h: (
                f21(1.0, b, 1.5, x, settings=s)[0],
                2.0 ** (2 * b - 3) / r * (1 - x) ** (0.5 * (1 - 2 * b))
                * (incomplete_beta(0.5 * (1 + r), h, h, 0.5 * (1 - r), s)
                   - incomplete_beta(0.5 * (1 - r), h, h, 0.5 * (1 + r), s)),
            ))

    for a, b, c in ((0.3, 0.2, 1.0), (-0.25, -0.3, 0.775), (0.5, 0.5, 1.5), (1.0, 0.5, 2.0)):
        add(f"2f1-gauss-point ({a},{b},{c})", lambda a=a, b=b, c=c: (
            gauss_2f1(HypParams(a, b, c, 1.0), 0.0, s).value,
            gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b),
        ))

    for nu, mu, x, y in ((-0.5, -0.5, 1.0, 1.0), (-1.5, 0.5, 2.0, 0.5), (-0.1, -1.0, 0.25, 2.5)):
        point = EvalPoint(nu, mu, x, y)
        damp = math.exp(-0.25 * x * x)
        add("decomposition-odd", lambda nu=nu, mu=mu, x=x, y=y, damp=damp: (
            pcf_D(nu, -x, s).value * pcf_D(mu, y, s).value,
            pcf_D(mu, y, s).value * (
                pcf_D(nu, x, s).value
                + x * 2.0 ** (0.5 * (nu + 3)) * SQRT_PI * damp * rgamma(-0.5 * nu)
                * kummer_phi(0.5 * (1 - nu), 1.5, 0.5 * x * x, s).value),
        ), point)
        add("decomposition-even", lambda nu=nu, mu=mu, x=x, y=y, damp=damp: (
            pcf_D(nu, -x, s).value * pcf_D(mu, y, s).value,
            pcf_D(mu, y, s).value * (
                -pcf_D(nu, x, s).value
                + 2.0 ** (0.5 * (nu + 2)) * SQRT_PI * damp * rgamma(0.5 * (1 - nu))
                * kummer_phi(-0.5 * nu, 0.5, 0.5 * x * x, s).value),
        ), point)

    rows.extend(_extended_precision_rows(s, tol))
    return rows


def _extended_precision_rows(s: Settings, tol: float) -> List[VerifyRow]:
    rows: List[VerifyRow] = []
    with mpmath.workdps(30):
        checks: List[Tuple[str, Callable[[], float], float]] = [
            ("gamma(3.7)", lambda: gamma(3.7), _mp(mpmath.gamma(3.7))),
            ("kummer(-0.25,0.5,2)", lambda: kummer_phi(-0.25, 0.5, 2.0, s).value,
             _mp(mpmath.hyp1f1(-0.25, 0.5, 2))),
            ("2f1(0.6,0.7;1.55;0.99)",
             lambda: gauss_2f1_near_unity(HypParams(0.6, 0.7, 1.55, 0.99), 0.01, s).value,
             _mp(mpmath.hyp2f1(0.6, 0.7, 1.55, mpmath.mpf(99) / 100))),
            ("bessel_I(0.25,1)", lambda: bessel_I(0.25, 1.0, s), _mp(mpmath.besseli(0.25, 1))),
            ("bessel_K(0.25,1)", lambda: bessel_K(0.25, 1.0, s), _mp(mpmath.besselk(0.25, 1))),
            ("elliptic_K(0.999999)", lambda: elliptic_K(0.999999, 1e-6),
             _mp(mpmath.ellipk(1 - mpmath.mpf(10) ** -6))),
            ("legendre_P(-0.25,0.35,0.5)", lambda: legendre_P(-0.25, 0.35, 0.5, settings=s),
             _mp(mpmath.legenp(-0.25, 0.35, 0.5, type=2))),
            ("pcf_D(-0.3,1)", lambda: pcf_D(-0.3, 1.0, s).value, _mp(mpmath.pcfd(-0.3, 1))),
            ("pcf_D(-0.7,0)", lambda: pcf_D(-0.7, 0.0, s).value, _mp(mpmath.pcfd(-0.7, 0))),
        ]
    for label, compute, reference in checks:
        rows.append(_guarded("identities", label, None, tol,
                             lambda compute=compute, reference=reference: (compute(), reference)))
    return rows


# ==================== Quadrature ====================

def quadrature_rows(settings: Settings, tol: float) -> List[VerifyRow]:
    """Exactness of the engine on Gamma and Beta integrals, plus additivity."""
    rows: List[VerifyRow] = []
    exponents = (-0.9, -0.5, 0.0, 0.7)

    def one(t: float, left: float, right: float) -> float:
        return 1.0

    def spec(shape: QuadShape, lower: float, upper: float, alpha: float,
             g: Callable[[float, float, float], float], beta_: float = 0.0) -> QuadSpec:
        return QuadSpec(shape=shape, lower=lower, upper=upper, left_exponent=alpha,
                        right_exponent=beta_, smooth_factor=g,
                        rel_tol=settings.quad_rel_tol, abs_tol=settings.quad_abs_tol,
                        max_evals=settings.quad_max_evals, max_levels=settings.quad_max_levels)

    def add(label: str, outcome_fn, reference: float) -> None:
        try:
            outcome = outcome_fn()
        except EVALUATION_ERRORS as exc:
            rows.append(_failed_row("quadrature", label, None, exc))
            return
        note = "" if outcome.converged else "not converged"
        rows.append(_row("quadrature", label, None, outcome.value, reference, tol,
                         abs_err_est=outcome.abs_err_est, note=note))

    for alpha in exponents:
        add(f"gamma alpha={alpha}",
            lambda alpha=alpha: integrate(spec(QuadShape.SEMI_INFINITE, 0.0, math.inf, alpha, one)),
            math.gamma(alpha + 1.0))
        for beta_ in exponents:
            add(f"beta alpha={alpha} beta={beta_}",
                lambda alpha=alpha, beta_=beta_: integrate(
                    spec(QuadShape.FINITE, 0.0, 1.0, alpha, one, beta_)),
                beta(alpha + 1.0, beta_ + 1.0))

    add("split exp at 1", lambda: integrate_split(
        spec(QuadShape.FINITE, 0.0, 1.0, 0.0, lambda t, l, r: math.exp(-t)),
        spec(QuadShape.SEMI_INFINITE, 1.0, math.inf, 0.0, one),
    ), 1.0)
    add("split sqrt-pi at 0.5", lambda: integrate_split(
        spec(QuadShape.FINITE, 0.0, 0.5, -0.5, lambda t, l, r: math.exp(-t)),
        spec(QuadShape.SEMI_INFINITE, 0.5, math.inf, 0.0, lambda t, l, r: t ** -0.5),
    ), SQRT_PI)
    return rows


# ==================== Products ====================

def _product_job(job: Tuple[str, Tuple[float, float, float, float], Settings, float]) -> VerifyRow:
    """Evaluate one representation at one point against its oracle."""
    tag, values, settings, tol = job
    point = EvalPoint(*values)
    rep = Representation.from_tag(tag)
    try:
        result = products.evaluate(rep, point, settings)
        oracle = reference_value(rep, point)
    except EVALUATION_ERRORS as exc:
        return _failed_row("products", tag, point, exc)
    note = "swapped" if result.swapped else ""
    return _row("products", tag, point, result.value, oracle.value, tol,
                abs_err_est=result.abs_err_est, note=note)


def product_jobs(
        settings: Settings,
        tol: float,
        grid: Optional[Sequence[Sequence[float]]] = None
) -> List[Tuple[str, Tuple[float, float, float, float], Settings, float]]:
    """Jobs for every representation on its region of the grids, in grid order."""
    nu, mu, xy = (PRODUCT_GRID_NU, PRODUCT_GRID_MU, PRODUCT_GRID_XY) if grid is None else grid
    jobs = []

    def add(rep: Representation, point: EvalPoint) -> None:
        if products.in_region(rep, point):
            jobs.append((rep.value, (point.nu, point.mu, point.x, point.y), settings, tol))

    for rep in (Representation.R41, Representation.R42, Representation.R43, Representation.R44):
        for point in grid_points(list(nu), list(mu), list(xy), list(xy)):
            add(rep, point)
    for point in grid_points(*(list(axis) for axis in D_PHI_GRID)):
        add(Representation.R51, point)
    for x, y in KK_POINTS:
        add(Representation.KK, EvalPoint(-0.5, -0.5, x, y))
    for x, y in ERFC2_POINTS:
        add(Representation.ERFC2, EvalPoint(-1.0, -1.0, x, y))
    for nu_, x, y in DI_POINTS:
        add(Representation.DI, EvalPoint(nu_, -0.5, x, y))
    for nu_, x, y in DNEG_ERFC_POINTS:
        add(Representation.DNEG_ERFC, EvalPoint(nu_, -1.0, x, y))
    return jobs


def _run_jobs(jobs: List, workers: int) -> List[VerifyRow]:
    if workers > 1 and len(jobs) > 1:
        logger.info(f"Evaluating {len(jobs)} product points on {workers} workers")
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_product_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_product_job(job) for job in jobs]


def _cross_rows(rows: List[VerifyRow], first: str, second: str,
                accept: Callable[[VerifyRow], bool], tol: float) -> List[VerifyRow]:
    """Agreement between two representations at every point both evaluated."""
    by_point: Dict[Tuple[float, float, float, float], VerifyRow] = {
        (r.nu, r.mu, r.x, r.y): r for r in rows if r.label == second and math.isfinite(r.value)
    }
    out = []
    for row in rows:
        if row.label != first or not math.isfinite(row.value) or not accept(row):
            continue
        other = by_point.get((row.nu, row.mu, row.x, row.y))
        if other is None:
            continue
        point = EvalPoint(row.nu, row.mu, row.x, row.y)
        out.append(_row("products", f"{first}~{second}", point, row.value, other.value, tol,
                        abs_err_est=row.abs_err_est + other.abs_err_est))
    return out


def product_rows(
        settings: Settings,
        tol: float,
        workers: int = 1,
        grid: Optional[Sequence[Sequence[float]]] = None
) -> List[VerifyRow]:
    """Oracle equivalence of every representation plus mutual agreement checks."""
    rows = _run_jobs(product_jobs(settings, tol, grid), workers)
    cross_tol = max(tol, settings.cross_rep_tol)

    rows.extend(_cross_rows(rows, "4.1", "4.2", lambda r: r.x > 0 and r.y > 0, cross_tol))
    rows.extend(_cross_rows(rows, "4.3", "4.4",
                            lambda r: -1 < r.nu < 0 and r.mu < 0 and r.x > 0, cross_tol))

    s = settings
    for nu, mu, y in ((-0.5, -0.5, 1.0), (-1.5, -1.0, 2.5)):
        point = EvalPoint(nu, mu, 0.0, y)
        rows.append(_guarded("products", "dneg~4.1 at x=0", point, tol, lambda point=point: (
            products.evaluate(DISPATCH_TAG, point, s).value,
            products.product_DD(point, s).value,
        )))
    for nu, mu, x, y in ((-0.5, -1.0, 1.0, 2.5), (-1.75, -0.1, 0.25, 1.0)):
        point = EvalPoint(nu, mu, x, y)
        rows.append(_guarded("products", "4.1 symmetry", point, tol, lambda point=point: (
            products.product_DD(point, s).value,
            products.product_DD(point.swapped(), s).value,
        )))
    for x, y in ((1.0, 1.0), (0.5, 2.0)):
        point = EvalPoint(-0.5, -0.5, 2.0 * math.sqrt(x), 2.0 * math.sqrt(y))
        rows.append(_guarded("products", "kk~4.1", point, tol, lambda x=x, y=y, point=point: (
            products.product_DD(point, s).value,
            math.sqrt(point.x * point.y) / (2.0 * math.pi) * products.product_KK(x, y, s).value,
        )))
    rows.append(_guarded("products", "erfc2 origin", EvalPoint(-1.0, -1.0, 0.0, 0.0), tol,
                         lambda: (products.product_erfc2(0.0, 0.0, s).value, 1.0)))
    return rows


# ==================== Laplace ====================

def laplace_rows(
        settings: Settings,
        tol: float,
        p_values: Iterable[float] = LAPLACE_P_VALUES,
        params: Iterable[EvalPoint] = LAPLACE_PARAMS
) -> List[VerifyRow]:
    """Residuals of every inverse Laplace identity at several p."""
    rows: List[VerifyRow] = []
    params = list(params)
    for identity in IdentityTag:
        for p in p_values:
            for point in params:
                label = f"{identity.value} p={p}"
                try:
                    pair = laplace_pair(identity, p, point, settings)
                except EVALUATION_ERRORS as exc:
                    rows.append(_failed_row("laplace", label, point, exc))
                    continue
                rows.append(_row("laplace", label, point, pair.rhs, pair.lhs, tol,
                                 abs_err_est=pair.rhs_err, rel_diff=pair.residual))
    return rows


# ==================== Coefficient audit ====================

def _remainder(rep: Representation, point: EvalPoint) -> float:
    """D_nu(-x) D_mu(y) minus the sign-carrying D_nu(x) D_mu(y) term, in mpmath."""
    nu, mu, x, y = (mpmath.mpf(v) for v in (point.nu, point.mu, point.x, point.y))
    with mpmath.workdps(30):
        dmu = mpmath.pcfd(mu, y)
        damp = mpmath.exp(-x * x / 4)
        if rep is Representation.R43:
            value = (x * mpmath.power(2, (nu + 3) / 2) * mpmath.sqrt(mpmath.pi) * damp
                     * mpmath.rgamma(-nu / 2) * dmu
                     * mpmath.hyp1f1((1 - nu) / 2, mpmath.mpf(3) / 2, x * x / 2))
        else:
            value = (mpmath.power(2, (nu + 2) / 2) * mpmath.sqrt(mpmath.pi) * damp
                     * mpmath.rgamma((1 - nu) / 2) * dmu
                     * mpmath.hyp1f1(-nu / 2, mpmath.mpf(1) / 2, x * x / 2))
        return float(value)


def _power_of_two_note(value: float, implied: float) -> str:
    """Describe an exact power-of-two mismatch between a term and its implied value."""
    if value == 0.0 or implied == 0.0 or (value > 0) != (implied > 0):
        return ""
    k = math.log2(implied / value)
    for exponent in AUDIT_EXPONENTS:
        if abs(k - exponent) < 1e-6:
            return f"coefficient matches after factor 2^{exponent:g}"
    return ""


def audit_rows(
        settings: Settings,
        tol: float,
        grid: Sequence[Sequence[float]] = AUDIT_GRID
) -> List[VerifyRow]:
    """Per-term evidence for the three-term forms.

    The first term is compared with D_nu(x) D_mu(y); each coefficient-bearing
    term is compared with the value implied by the remainder of the product
    decomposition once the other term is taken as computed.
    """
    rows: List[VerifyRow] = []
    for rep in (Representation.R43, Representation.R44):
        for point in grid_points(*(list(axis) for axis in grid)):
            if point.x <= 0 or not products.in_region(rep, point):
                continue
            try:
                terms = products.coefficient_terms(rep, point, settings)
                product = reference_value(Representation.R41, EvalPoint(
                    point.nu, point.mu, point.x, point.y)).value
                remainder = _remainder(rep, point)
            except EVALUATION_ERRORS as exc:
                rows.append(_failed_row("audit", rep.value, point, exc))
                continue

            first, finite, tail = terms
            sign = 1.0 if rep is Representation.R43 else -1.0
            rows.append(_row("audit", f"{rep.value}:{first.label}", point, first.value,
                             sign * product, tol, abs_err_est=first.abs_err_est))
            for term, other in ((finite, tail), (tail, finite)):
                implied = remainder - other.value
                rel = relative_difference(term.value, implied)
                note = _power_of_two_note(term.value, implied) if rel > tol else ""
                if note:
                    logger.warning(f"{rep.value} {term.label} at {point}: {note}")
                rows.append(_row("audit", f"{rep.value}:{term.label}", point, term.value,
                                 implied, tol, abs_err_est=term.abs_err_est,
                                 rel_diff=rel, note=note))
    return rows


# ==================== Runner ====================

def expand_suites(suites: Iterable[str]) -> List[str]:
    """Resolve ``all`` and reject unknown names, keeping the canonical order."""
    requested = set(suites)
    unknown = requested - set(VERIFY_SUITES)
    if unknown:
        raise ValidationError(f"Unknown suite(s): {', '.join(sorted(unknown))}")
    if "all" in requested:
        requested = set(VERIFY_SUITES) - {"all"}
    return [name for name in VERIFY_SUITES if name in requested]


def run_verification(
        suites: Iterable[str],
        settings: Optional[Settings] = None,
        tol: Optional[float] = None,
        workers: int = 1
) -> VerifyReport:
    """Run the named suites and collect their rows.

    Args:
        suites: Suite names from VERIFY_SUITES
        settings: Numerical settings
        tol: Pass threshold; defaults to ``settings.verify_tol``
        workers: Processes for the product grid

    Returns:
        VerifyReport with rows in suite order
    """
    settings = settings or DEFAULT_SETTINGS
    tol = settings.verify_tol if tol is None else tol
    names = expand_suites(suites)
    report = VerifyReport(threshold=tol, suites=names)

    runners: Dict[str, Callable[[], List[VerifyRow]]] = {
        "identities": lambda: identity_rows(settings, tol),
        "quadrature": lambda: quadrature_rows(settings, tol),
        "products": lambda: product_rows(settings, tol, workers),
        "laplace": lambda: laplace_rows(settings, tol),
        "audit": lambda: audit_rows(settings, tol),
    }
    for name in names:
        logger.info(f"Running {name} suite")
        rows = runners[name]()
        report.extend(rows)
        failed = sum(1 for row in rows if not row.passed)
        logger.info(f"{name}: {len(rows) - failed}/{len(rows)} passed")

    summary = report.summary()
    logger.info(f"Verification finished: {summary['passed']}/{summary['total']} passed, "
                f"max rel diff {report.max_rel_diff:.2e}")
    return report
