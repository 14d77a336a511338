"""Compiled scalar kernels for the special-function layer.

Every kernel is ``nopython`` compiled and never raises. Series kernels return
``(value, abs_err_est, terms_used, status)`` where ``status`` is one of the
``STATUS_*`` codes below; the wrappers in :mod:`src.algorithms.specfun`
translate codes into exceptions.
"""

import math

from numba import njit

from src.config.constants import NEAR_INTEGER_TOL

STATUS_OK = 0
STATUS_NO_CONVERGENCE = 1
STATUS_POLE = 2
STATUS_DIVERGENT = 3
STATUS_DOMAIN = 4

EPS = 2.220446049250313e-16
EULER_GAMMA = 0.5772156649015329
SQRT_PI = 1.7724538509055160
SQRT2 = 1.4142135623730951
LN2 = 0.6931471805599453


# ==================== Elementary helpers ====================

@njit(cache=True)
def is_nonpositive_integer(x):
    return x <= 0.0 and x == math.floor(x)


@njit(cache=True)
def two_sum(a, b):
    """Error-free sum: a + b == s + e exactly."""
    s = a + b
    bp = s - a
    e = (a - (s - bp)) + (b - bp)
    return s, e


@njit(cache=True)
def rgamma(x):
    """Reciprocal gamma, exactly zero at the poles of gamma."""
    if is_nonpositive_integer(x):
        return 0.0
    if x > 170.0:
        return math.exp(-math.lgamma(x))
    if x < -170.0:
        # 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
        return math.sin(math.pi * x) / math.pi * math.exp(math.lgamma(1.0 - x))
    return 1.0 / math.gamma(x)


@njit(cache=True)
def digamma(x):
    """Digamma function; NaN at the poles."""
    if is_nonpositive_integer(x):
        return math.nan
    result = 0.0
    if x < 0.5:
        result = -math.pi / math.tan(math.pi * x)
        x = 1.0 - x
    while x < 10.0:
        result -= 1.0 / x
        x += 1.0
    f = 1.0 / (x * x)
    series = f * (1.0 / 12.0 - f * (1.0 / 120.0 - f * (1.0 / 252.0 - f * (
        1.0 / 240.0 - f * (1.0 / 132.0 - f * 691.0 / 32760.0)))))
    return result + math.log(x) - 0.5 / x - series


# ==================== Kummer Phi ====================

@njit(cache=True)
def kummer_series(a, b, z, tol, max_terms):
    """Direct sum of Phi(a; b; z) for z >= 0."""
    total = 1.0
    comp = 0.0
    term = 1.0
    abs_sum = 1.0
    if z == 0.0 or a == 0.0:
        return 1.0, 0.0, 1, STATUS_OK
    n = 0
    while n < max_terms:
        term *= (a + n) / ((b + n) * (n + 1.0)) * z
        s = total + term
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        abs_sum += abs(term)
        n += 1
        value = total + comp
        if term == 0.0:
            return value, 4.0 * EPS * abs_sum, n + 1, STATUS_OK
        nxt = abs((a + n) / ((b + n) * (n + 1.0)) * z)
        if n + 1.0 > z and nxt < 1.0:
            tail = abs(term) * nxt / (1.0 - nxt)
            if tail <= tol * abs(value) or tail <= EPS * EPS * abs_sum:
                return value, tail + 4.0 * EPS * abs_sum, n + 1, STATUS_OK
    return total + comp, abs(term) + 4.0 * EPS * abs_sum, n + 1, STATUS_NO_CONVERGENCE


@njit(cache=True)
def kummer(a, b, z, tol, max_terms):
    """Phi(a; b; z); negative z goes through Phi(a;b;z) = e^z Phi(b-a;b;-z)."""
    if is_nonpositive_integer(b):
        return math.nan, math.inf, 0, STATUS_POLE
    if z < 0.0:
        value, err, n, status = kummer_series(b - a, b, -z, tol, max_terms)
        scale = math.exp(z)
        return value * scale, err * scale, n, status
    return kummer_series(a, b, z, tol, max_terms)


# ==================== Gauss 2F1 ====================

@njit(cache=True)
def hyp2f1_series(a, b, c, z, tol, max_terms):
    """Direct Gauss series; geometric for |z| <= 0.5, finite when terminating."""
    if z == 0.0 or a == 0.0 or b == 0.0:
        return 1.0, 0.0, 1, STATUS_OK
    total = 1.0
    comp = 0.0
    term = 1.0
    abs_sum = 1.0
    az = abs(z)
    n = 0
    while n < max_terms:
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        s = total + term
        if abs(total) >= abs(term):
            comp += (total - s) + term
        else:
            comp += (term - s) + total
        total = s
        abs_sum += abs(term)
        n += 1
        value = total + comp
        if term == 0.0:
            return value, 4.0 * EPS * abs_sum, n + 1, STATUS_OK
        nxt = abs((a + n) * (b + n) / ((c + n) * (n + 1.0)) * z)
        bound = max(nxt, az)
        if bound < 1.0:
            tail = abs(term) * bound / (1.0 - bound)
            if tail <= tol * abs(value) or tail <= EPS * EPS * abs_sum:
                return value, tail + 4.0 * EPS * abs_sum, n + 1, STATUS_OK
    return total + comp, abs(term) + 4.0 * EPS * abs_sum, n + 1, STATUS_NO_CONVERGENCE


@njit(cache=True)
def _log_sum_2f1(a, b, m, omz, tol, max_terms):
    """Sum_n (a)_n (b)_n / (n! (n+m)!) w^n [ln w - psi(n+1) - psi(n+m+1) + psi(a+n) + psi(b+n)].

    Shared tail of the integer c-a-b connection formulas.
    """
    lg = math.log(omz)
    coef = 1.0 / math.gamma(m + 1.0)
    psi_n1 = -EULER_GAMMA
    psi_nm1 = digamma(m + 1.0)
    psi_a = digamma(a)
    psi_b = digamma(b)
    total = 0.0
    abs_sum = 0.0
    n = 0
    while n < max_terms:
        contrib = coef * (lg - psi_n1 - psi_nm1 + psi_a + psi_b)
        total += contrib
        abs_sum += abs(contrib)
        ratio = (a + n) * (b + n) / ((n + 1.0) * (n + m + 1.0)) * omz
        psi_n1 += 1.0 / (n + 1.0)
        psi_nm1 += 1.0 / (n + m + 1.0)
        psi_a += 1.0 / (a + n)
        psi_b += 1.0 / (b + n)
        coef *= ratio
        n += 1
        if coef == 0.0:
            return total, 4.0 * EPS * abs_sum, n, STATUS_OK
        bound = max(abs(ratio), omz)
        if bound < 1.0:
            # brackets grow like 2 ln n; factor 2 covers the next few terms
            tail = 2.0 * abs(contrib) * bound / (1.0 - bound)
            if tail <= tol * abs(total) or tail <= EPS * EPS * abs_sum:
                return total, tail + 4.0 * EPS * abs_sum, n, STATUS_OK
    return total, abs(coef) + 4.0 * EPS * abs_sum, n, STATUS_NO_CONVERGENCE


@njit(cache=True)
def _finite_sum_2f1(a, b, m, omz):
    """Sum_{n<m} (a)_n (b)_n / (n! (1-m)_n) w^n."""
    total = 0.0
    coef = 1.0
    for n in range(m):
        total += coef
        if n + 1 < m:
            coef *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * omz
    return total


@njit(cache=True)
def hyp2f1_near_one(a, b, c, omz, tol, max_terms):
    """F(a, b; c; 1 - omz) from the exactly supplied complement omz in [0, 0.5]."""
    if is_nonpositive_integer(c):
        return math.nan, math.inf, 0, STATUS_POLE
    if omz < 0.0 or omz > 1.0:
        return math.nan, math.inf, 0, STATUS_DOMAIN
    if omz == 1.0:
        return 1.0, 0.0, 0, STATUS_OK
    s = c - a - b

    # terminating cases
    if is_nonpositive_integer(a) or is_nonpositive_integer(b):
        return hyp2f1_series(a, b, c, 1.0 - omz, tol, max_terms)
    if is_nonpositive_integer(c - a) or is_nonpositive_integer(c - b):
        if omz == 0.0:
            if s > 0.0:
                return 0.0, 0.0, 0, STATUS_OK
            return math.nan, math.inf, 0, STATUS_DIVERGENT
        value, err, n, status = hyp2f1_series(c - a, c - b, c, 1.0 - omz, tol, max_terms)
        scale = omz ** s
        return value * scale, err * scale, n, status

    gc = math.gamma(c)
    m_real = math.floor(s + 0.5)
    if abs(s - m_real) > NEAR_INTEGER_TOL:
        if omz == 0.0:
            if s > 0.0:
                value = gc * math.gamma(s) * rgamma(c - a) * rgamma(c - b)
                return value, 8.0 * EPS * abs(value), 0, STATUS_OK
            return math.nan, math.inf, 0, STATUS_DIVERGENT
        coef1 = gc * math.gamma(s) * rgamma(c - a) * rgamma(c - b)
        coef2 = gc * math.gamma(-s) * rgamma(a) * rgamma(b) * omz ** s
        v1 = 0.0
        e1 = 0.0
        n1 = 0
        st1 = STATUS_OK
        if coef1 != 0.0:
            v1, e1, n1, st1 = hyp2f1_series(a, b, 1.0 - s, omz, tol, max_terms)
        v2 = 0.0
        e2 = 0.0
        n2 = 0
        st2 = STATUS_OK
        if coef2 != 0.0:
            v2, e2, n2, st2 = hyp2f1_series(c - a, c - b, 1.0 + s, omz, tol, max_terms)
        p1 = coef1 * v1
        p2 = coef2 * v2
        value = p1 + p2
        err = abs(coef1) * e1 + abs(coef2) * e2 + 8.0 * EPS * (abs(p1) + abs(p2))
        return value, err, max(n1, n2), max(st1, st2)

    m = int(m_real)
    if m == 0:
        if omz == 0.0:
            return math.nan, math.inf, 0, STATUS_DIVERGENT
        pref = gc * rgamma(a) * rgamma(b)
        total, err, n, status = _log_sum_2f1(a, b, 0, omz, tol, max_terms)
        # the tail sums ln w - 2 psi(n+1) + psi(a+n) + psi(b+n); flip the sign
        value = -pref * total
        return value, abs(pref) * err + 4.0 * EPS * abs(value), n, status
    if m > 0:
        part1 = (math.gamma(float(m)) * gc * rgamma(a + m) * rgamma(b + m)
                 * _finite_sum_2f1(a, b, m, omz))
        if omz == 0.0:
            return part1, 8.0 * EPS * abs(part1), m, STATUS_OK
        sign = -1.0 if m % 2 == 0 else 1.0
        pref = sign * omz ** m * gc * rgamma(a) * rgamma(b)
        total, err, n, status = _log_sum_2f1(a + m, b + m, m, omz, tol, max_terms)
        value = part1 + pref * total
        err_total = abs(pref) * err + 8.0 * EPS * (abs(part1) + abs(pref * total))
        return value, err_total, n + m, status
    k = -m
    if omz == 0.0:
        return math.nan, math.inf, 0, STATUS_DIVERGENT
    part1 = (math.gamma(float(k)) * gc * rgamma(a) * rgamma(b) * omz ** (-k)
             * _finite_sum_2f1(a - k, b - k, k, omz))
    sign = -1.0 if k % 2 == 0 else 1.0
    pref = sign * gc * rgamma(a - k) * rgamma(b - k)
    total, err, n, status = _log_sum_2f1(a, b, k, omz, tol, max_terms)
    value = part1 + pref * total
    err_total = abs(pref) * err + 8.0 * EPS * (abs(part1) + abs(pref * total))
    return value, err_total, n + k, status


@njit(cache=True)
def hyp2f1(a, b, c, z, omz, tol, max_terms):
    """F(a, b; c; z) on (-inf, 1] with region dispatch.

    ``omz`` must equal 1 - z; callers pass it exactly when z is near 1.
    """
    if is_nonpositive_integer(c):
        return math.nan, math.inf, 0, STATUS_POLE
    if z > 1.0 or omz < 0.0:
        return math.nan, math.inf, 0, STATUS_DOMAIN
    if a > b:
        a, b = b, a
    if z == 0.0 or a == 0.0 or b == 0.0:
        return 1.0, 0.0, 1, STATUS_OK
    if omz < 0.5:
        return hyp2f1_near_one(a, b, c, omz, tol, max_terms)
    if z >= -0.5:
        return hyp2f1_series(a, b, c, z, tol, max_terms)
    # Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)), 1 - w = 1/(1-z)
    scale = omz ** (-a)
    omw = 1.0 / omz
    if omw < 0.5:
        value, err, n, status = hyp2f1_near_one(a, c - b, c, omw, tol, max_terms)
    else:
        value, err, n, status = hyp2f1_series(a, c - b, c, z / (z - 1.0), tol, max_terms)
    return value * scale, err * scale, n, status


# ==================== Bessel and elliptic ====================

@njit(cache=True)
def bessel_i_series(order, z, tol, max_terms):
    """I_order(z) by the ascending series, z > 0."""
    if z <= 0.0:
        return math.nan, math.inf, 0, STATUS_DOMAIN
    if order < 0.0 and order == math.floor(order):
        order = -order
    half = 0.5 * z
    q = half * half
    term = math.exp(order * math.log(half)) * rgamma(order + 1.0)
    total = term
    abs_sum = abs(term)
    k = 0
    while k < max_terms:
        denom = (k + 1.0) * (k + 1.0 + order)
        term *= q / denom
        total += term
        abs_sum += abs(term)
        k += 1
        if k + 1.0 + order > 0.0:
            nxt = q / ((k + 1.0) * (k + 1.0 + order))
            if nxt < 1.0:
                tail = abs(term) * nxt / (1.0 - nxt)
                if tail <= tol * abs(total) or tail <= EPS * EPS * abs_sum:
                    return total, tail + 4.0 * EPS * abs_sum, k + 1, STATUS_OK
    return total, abs(term) + 4.0 * EPS * abs_sum, k + 1, STATUS_NO_CONVERGENCE


@njit(cache=True)
def elliptic_k_agm(one_minus_m):
    """Complete elliptic integral K in the parameter convention, from 1 - m."""
    if one_minus_m <= 0.0:
        return math.nan, math.inf, 0, STATUS_DOMAIN
    a = 1.0
    b = math.sqrt(one_minus_m)
    n = 0
    while abs(a - b) > 2.0 * EPS * a and n < 64:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        n += 1
    value = 0.5 * math.pi / a
    status = STATUS_OK if n < 64 else STATUS_NO_CONVERGENCE
    return value, 8.0 * EPS * value, n, status


# ==================== Parabolic cylinder ====================

@njit(cache=True)
def pcf_d(nu, z, tol, max_terms):
    """D_nu(z) from the two-Kummer definition with compensated assembly."""
    zz = 0.5 * z * z
    v1, e1, n1, s1 = kummer(-0.5 * nu, 0.5, zz, tol, max_terms)
    v2, e2, n2, s2 = kummer(0.5 * (1.0 - nu), 1.5, zz, tol, max_terms)
    r1 = SQRT_PI * rgamma(0.5 * (1.0 - nu))
    # (z / sqrt 2) Gamma(-1/2) = -sqrt(2 pi) z
    r2 = -SQRT2 * SQRT_PI * z * rgamma(-0.5 * nu)
    t1 = r1 * v1
    t2 = r2 * v2
    s, e = two_sum(t1, t2)
    scale = math.exp(0.5 * nu * LN2 - 0.25 * z * z)
    value = (s + e) * scale
    err = scale * (abs(r1) * e1 + abs(r2) * e2 + 2.0 * EPS * (abs(t1) + abs(t2)))
    err += EPS * abs(value)
    return value, err, n1 + n2, max(s1, s2)
