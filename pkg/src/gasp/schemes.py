"""Exponent-vector constructions and their closed-form server counts.

Two families are built here.  The "small" construction strides the mask
exponents of the finer-partitioned side so that its cross terms collapse
onto the coarse progression already present in the table; it wins when
the collusion tolerance T is below min(K, L).  The "big" construction
packs all mask exponents into one run of consecutive integers, which is
better once T reaches min(K, L).  The grouped construction interpolates
between the two for square problems (K = L = T) by splitting the mask
exponents into G runs anchored at consecutive multiples of K.

Server counts have closed forms for small and big (piecewise in K, L, T);
the grouped family is counted by enumeration only.  All rates are exact
``fractions.Fraction`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .degree_table import (
    ExponentAssignment,
    SchemeParams,
    count_terms,
    is_decodable,
    is_t_secure_assignment,
)
from .errors import ParameterError


@dataclass(frozen=True)
class PolynomialCode:
    """A validated code: parameters, exponents, and its true server count."""

    params: SchemeParams
    assignment: ExponentAssignment
    n_servers: int
    scheme_label: str

    @property
    def alpha_masks(self) -> tuple[int, ...]:
        return self.assignment.alpha[self.params.k:]

    @property
    def beta_masks(self) -> tuple[int, ...]:
        return self.assignment.beta[self.params.l:]

    @property
    def rate(self) -> Fraction:
        return Fraction(self.params.k * self.params.l, self.n_servers)


@dataclass(frozen=True)
class GroupedSpec:
    """Euclidean split K = Q*G + R of the mask exponents into groups."""

    k: int
    g: int
    q: int
    r: int

    @classmethod
    def of(cls, k: int, g: int) -> "GroupedSpec":
        if not 1 <= g <= k:
            raise ParameterError(f"group count must satisfy 1 <= G <= K, got G={g}, K={k}")
        q, r = divmod(k, g)
        return cls(k=k, g=g, q=q, r=r)


@dataclass(frozen=True)
class RateReport:
    """Server counts and rates of the combined scheme and both baselines."""

    n_small: int
    n_big: int
    n_gasp: int
    rate_gasp: Fraction
    rate_r1: Fraction | None
    rate_r2: Fraction


@dataclass(frozen=True)
class OptimizationResult:
    """Best (K, L) found for a fixed worker pool."""

    k: int
    l: int
    n_used: int
    rate: Fraction


def build_code(
    params: SchemeParams, assignment: ExponentAssignment, scheme_label: str
) -> PolynomialCode:
    """Validate an assignment and wrap it with its recomputed server count."""
    if not is_decodable(assignment, params):
        raise ParameterError(f"{scheme_label} assignment is not decodable for {params}")
    if not is_t_secure_assignment(assignment, params):
        raise ParameterError(f"{scheme_label} assignment is not {params.t}-secure")
    return PolynomialCode(
        params=params,
        assignment=assignment,
        n_servers=count_terms(assignment, params),
        scheme_label=scheme_label,
    )


def gasp_big(params: SchemeParams) -> ExponentAssignment:
    """Masks on both sides are KL, KL+1, ..., KL+T-1.

    For L <= K the data exponents are 0..K-1 down the rows and multiples
    of K across the columns; for K < L the two progressions trade places.
    """
    k, l, t = params.k, params.l, params.t
    masks = tuple(k * l + i for i in range(t))
    if l <= k:
        alpha = tuple(range(k)) + masks
        beta = tuple(k * j for j in range(l)) + masks
    else:
        alpha = tuple(l * i for i in range(k)) + masks
        beta = tuple(range(l)) + masks
    return ExponentAssignment(alpha, beta)


def gasp_small(params: SchemeParams) -> ExponentAssignment:
    """Masks on the finer side stride by the fine block count.

    For K <= L: alpha masks are KL, KL+K, ..., KL+K(T-1) and beta masks
    are KL, KL+1, ..., KL+T-1.  For L < K the roles swap.
    """
    k, l, t = params.k, params.l, params.t
    if k <= l:
        alpha = tuple(range(k)) + tuple(k * l + k * i for i in range(t))
        beta = tuple(k * j for j in range(l)) + tuple(k * l + i for i in range(t))
    else:
        alpha = tuple(l * i for i in range(k)) + tuple(k * l + i for i in range(t))
        beta = tuple(range(l)) + tuple(k * l + l * i for i in range(t))
    return ExponentAssignment(alpha, beta)


def gasp_auto(params: SchemeParams) -> PolynomialCode:
    """Pick small for T < min(K, L), big otherwise, and build the code."""
    if params.t < min(params.k, params.l):
        return build_code(params, gasp_small(params), "small")
    return build_code(params, gasp_big(params), "big")


def gasp_grouped(k: int, g: int) -> ExponentAssignment:
    """Grouped masks for the square case K = L = T.

    The alpha masks form G runs of Q = floor(K/G) consecutive integers,
    run number i starting at K*K + i*K, plus one final run of R = K - Q*G
    integers starting at K*K + G*K when R > 0.  Beta is the same as in
    the big construction.  G=1 reproduces big, G=K reproduces small.
    """
    spec = GroupedSpec.of(k, g)
    masks: list[int] = []
    for grp in range(spec.g):
        start = k * k + grp * k
        masks.extend(start + i for i in range(spec.q))
    if spec.r:
        start = k * k + spec.g * k
        masks.extend(start + i for i in range(spec.r))
    alpha = tuple(range(k)) + tuple(masks)
    beta = tuple(k * j for j in range(k)) + tuple(k * k + i for i in range(k))
    return ExponentAssignment(alpha, beta)


def n_big_closed(params: SchemeParams) -> int:
    """Closed-form server count of the big construction."""
    k, l, t = params.k, params.l, params.t
    if l <= k:
        return (k + t) * (l + 1) - 1 if t < k else 2 * k * l + 2 * t - 1
    return (l + t) * (k + 1) - 1 if t < l else 2 * k * l + 2 * t - 1


def _n_small_oriented(k: int, l: int, t: int) -> int:
    # Piecewise count for the k <= l orientation.  Branch boundaries meet:
    # the floor term makes t = k and t = k(l-1)+1 agree across branches.
    if l == 1:
        if t < k:
            return 2 * k + t * t
        return k * t + k + t
    if t == 1 and t < k:
        return k * l + k + l
    if 2 <= t < k:
        return k * l + k + l + t * t + t - 3
    if k <= t <= k * (l - 1) + 1:
        return k * l + k * t + l + 2 * t - 3 - (t - 2) // k
    return 2 * k * l + k * t - k + t


def n_small_closed(params: SchemeParams) -> int:
    """Closed-form server count of the small construction."""
    k, l, t = params.k, params.l, params.t
    if k <= l:
        return _n_small_oriented(k, l, t)
    return _n_small_oriented(l, k, t)


def download_rate(params: SchemeParams, n: int) -> Fraction:
    """Ratio of desired output blocks to downloaded blocks, KL/N."""
    if n < 1:
        raise ParameterError(f"server count must be positive, got {n}")
    return Fraction(params.k * params.l, n)


def rate_r1(k: int, t: int) -> Fraction:
    """Baseline rate K^2/(K+T)^2 of the square-partition competitor."""
    return Fraction(k * k, (k + t) * (k + t))


def rate_r2(params: SchemeParams) -> Fraction:
    """Baseline rate KL/((K+T)(L+1)-1) of the gap-free competitor."""
    k, l, t = params.k, params.l, params.t
    return Fraction(k * l, (k + t) * (l + 1) - 1)


def rate_report(params: SchemeParams) -> RateReport:
    """Counts and rates of both constructions plus the literature baselines."""
    n_small = n_small_closed(params)
    n_big = n_big_closed(params)
    n_gasp = n_small if params.t < min(params.k, params.l) else n_big
    return RateReport(
        n_small=n_small,
        n_big=n_big,
        n_gasp=n_gasp,
        rate_gasp=download_rate(params, n_gasp),
        rate_r1=rate_r1(params.k, params.t) if params.k == params.l else None,
        rate_r2=rate_r2(params),
    )


def kakar_heuristic(n: int, t: int) -> tuple[int, int] | None:
    """Near-optimal (K, L) for the gap-free baseline with N workers.

    L is the smallest positive integer at least -3/2 + sqrt(1/4 + N/T),
    then K = floor((N+1)/(L+1) - T).  Returns None when no K >= 1 fits.
    """
    if n < 2 * t + 1:
        raise ParameterError(f"need N >= 2T+1, got N={n}, T={t}")
    # l_hat >= -3/2 + sqrt(1/4 + n/t)  <=>  (2*t*l_hat + 3*t)^2 >= t^2 + 4*n*t
    d = t * t + 4 * n * t
    l_hat = 1
    while (2 * t * l_hat + 3 * t) ** 2 < d:
        l_hat += 1
    k_hat = (n + 1 - t * (l_hat + 1)) // (l_hat + 1)
    if k_hat < 1:
        return None
    assert (k_hat + t) * (l_hat + 1) - 1 <= n
    return k_hat, l_hat


def kakar_rate(n: int, t: int) -> Fraction | None:
    """Rate achieved by the baseline heuristic with N workers, or None."""
    pair = kakar_heuristic(n, t)
    if pair is None:
        return None
    k_hat, l_hat = pair
    return Fraction(k_hat * l_hat, (k_hat + t) * (l_hat + 1) - 1)


def optimize_gasp(n: int, t: int) -> OptimizationResult | None:
    """Brute-force the best (K, L) whose combined scheme fits N workers.

    Maximizes KL / min(n_small, n_big) over all K, L with KL <= N (every
    branch of both counting formulas is >= KL, so nothing larger can fit).
    Ties break toward smaller K+L, then smaller K.
    """
    if n < 2 * t + 1:
        raise ParameterError(f"need N >= 2T+1, got N={n}, T={t}")
    best: OptimizationResult | None = None
    best_key: tuple[Fraction, int, int] | None = None
    for k in range(1, n + 1):
        for l in range(1, n // k + 1):
            params = SchemeParams(k, l, t)
            n_used = min(n_small_closed(params), n_big_closed(params))
            if n_used > n:
                continue
            rate = Fraction(k * l, n_used)
            key = (-rate, k + l, k)
            if best_key is None or key < best_key:
                best = OptimizationResult(k=k, l=l, n_used=n_used, rate=rate)
                best_key = key
    return best


def grouped_sweep(k: int) -> list[tuple[int, int, Fraction]]:
    """(G, N, rate) for every group count G = 1..K at K = L = T.

    No closed form is known for the grouped count, so N comes from
    enumerating the degree table each time.
    """
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    params = SchemeParams(k, k, k)
    rows = []
    for g in range(1, k + 1):
        n = count_terms(gasp_grouped(k, g), params)
        rows.append((g, n, Fraction(k * k, n)))
    return rows


def code_for_scheme(params: SchemeParams, scheme: str, g: int | None = None) -> PolynomialCode:
    """Build a validated code by scheme name: small, big, auto, or grouped."""
    if scheme == "small":
        return build_code(params, gasp_small(params), "small")
    if scheme == "big":
        return build_code(params, gasp_big(params), "big")
    if scheme == "auto":
        return gasp_auto(params)
    if scheme == "grouped":
        if g is None:
            raise ParameterError("grouped scheme needs a group count G")
        if not (params.k == params.l == params.t):
            raise ParameterError("grouped scheme is defined only for K = L = T")
        return build_code(params, gasp_grouped(params.k, g), f"grouped({g})")
    raise ParameterError(f"unknown scheme {scheme!r}")


def format_rate(rate: Fraction) -> str:
    """Render a rate with exactly three decimals, rounding half-up."""
    scaled = (2000 * rate.numerator + rate.denominator) // (2 * rate.denominator)
    return f"{scaled // 1000}.{scaled % 1000:03d}"
