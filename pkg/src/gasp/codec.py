"""The secure multiplication pipeline: plan search, encode, evaluate, decode.

The user splits A into K row blocks and B into L column blocks, hides
each side behind T uniformly random mask matrices, and ships one masked
linear combination of blocks per server.  Each server multiplies its two
shares; the user interpolates the product polynomial from the N returned
matrices through one generalized Vandermonde solve and reads every block
product A_k B_l off its own coefficient.

An evaluation plan fixes the field and the N evaluation points.  A plan
is only returned once three conditions have been verified: the
generalized Vandermonde matrix over the code's exponent set is
invertible, and the two T x N mask power matrices have every maximal
minor invertible, which is what makes any T shares jointly uniform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import gf
from .degree_table import outer_sum, terms
from .errors import (
    ParameterError,
    PlanSearchError,
    PlanVerificationError,
)
from .gf import FieldMatrix, PrimeFieldSpec
from .schemes import PolynomialCode

DEFAULT_MAX_ATTEMPTS = 200


@dataclass(frozen=True)
class BlockShapes:
    """Full matrix sizes: A is r x s, B is s x t."""

    r: int
    s: int
    t: int

    def __post_init__(self) -> None:
        for name, value in (("r", self.r), ("s", self.s), ("t", self.t)):
            if not isinstance(value, int) or value < 1:
                raise ParameterError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class EvaluationPlan:
    """Field, evaluation points, and the exponent set used to interpolate.

    Plans produced by :func:`find_evaluation_plan` are verified; building
    one directly performs shape checks only, which the audit helpers use
    to construct deliberately broken plans.
    """

    field: PrimeFieldSpec
    points: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if len(self.points) != len(self.exponents):
            raise ParameterError("need as many points as exponents")
        if any(not 0 <= x < self.field.p for x in self.points):
            raise ParameterError("points must be reduced residues")
        if list(self.exponents) != sorted(set(self.exponents)):
            raise ParameterError("exponents must be strictly increasing")

    def to_text(self) -> str:
        return (
            f"p={self.field.p}\n"
            f"points={','.join(str(x) for x in self.points)}\n"
            f"J={','.join(str(j) for j in self.exponents)}\n"
        )

    @classmethod
    def from_text(cls, text: str) -> "EvaluationPlan":
        fields = {}
        for line in text.strip().splitlines():
            key, _, value = line.partition("=")
            fields[key] = value
        try:
            p = int(fields["p"])
            points = tuple(int(x) for x in fields["points"].split(","))
            exponents = tuple(int(x) for x in fields["J"].split(","))
        except (KeyError, ValueError) as exc:
            raise ParameterError(f"malformed plan text: {exc}") from exc
        return cls(PrimeFieldSpec(p), points, exponents)


@dataclass(frozen=True)
class MaskSet:
    """The T random matrices added to each side before sharing."""

    r_masks: tuple[FieldMatrix, ...]
    s_masks: tuple[FieldMatrix, ...]


@dataclass(frozen=True)
class ShareBundle:
    """Per-server encoded matrices f(a_n) and g(a_n)."""

    field: PrimeFieldSpec
    f_shares: tuple[FieldMatrix, ...]
    g_shares: tuple[FieldMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.f_shares) != len(self.g_shares):
            raise ParameterError("share lists must have equal length")

    @property
    def n_servers(self) -> int:
        return len(self.f_shares)


@dataclass(frozen=True)
class CostReport:
    """Total symbols moved: N(rs/K + st/L) up, N rt/(KL) down."""

    upload_symbols: int
    download_symbols: int


def code_exponents(code: PolynomialCode) -> tuple[int, ...]:
    """Ascending term set of the code's degree table."""
    return terms(outer_sum(code.assignment, code.params))


def default_field(code: PolynomialCode) -> PrimeFieldSpec:
    """Smallest prime above max(J) * N: headroom for rejection sampling."""
    exps = code_exponents(code)
    return PrimeFieldSpec(gf.next_prime(max(exps) * code.n_servers))


def _mask_power_matrix(p: int, points, mask_exponents) -> FieldMatrix:
    entries = tuple(pow(x % p, e, p) for e in mask_exponents for x in points)
    return FieldMatrix(len(mask_exponents), len(points), entries)


def _plan_conditions(
    code: PolynomialCode, plan: EvaluationPlan, mds_samples: int | None = None
) -> bool:
    p = plan.field.p
    if gf.det(p, gf.generalized_vandermonde(p, plan.points, plan.exponents)) == 0:
        return False
    p_matrix = _mask_power_matrix(p, plan.points, code.alpha_masks)
    q_matrix = _mask_power_matrix(p, plan.points, code.beta_masks)
    return gf.is_mds(p, p_matrix, samples=mds_samples) and gf.is_mds(
        p, q_matrix, samples=mds_samples
    )


def find_evaluation_plan(
    code: PolynomialCode,
    field: PrimeFieldSpec | None = None,
    seed: int = 0,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    points: tuple[int, ...] | None = None,
    mds_samples: int | None = None,
) -> EvaluationPlan:
    """Find (or verify) N distinct nonzero points passing all conditions.

    Sampling is rejection-based and reproducible from ``seed``.  Passing
    ``points`` skips the search and verifies that exact assignment,
    raising :class:`PlanVerificationError` if it fails.
    """
    if field is None:
        field = default_field(code)
    n = code.n_servers
    if field.p <= n:
        raise ParameterError(f"field must satisfy p > N, got p={field.p}, N={n}")
    exponents = code_exponents(code)

    if points is not None:
        plan = EvaluationPlan(field, tuple(x % field.p for x in points), exponents)
        if len(set(plan.points)) != n:
            raise PlanVerificationError("points must be distinct")
        if not _plan_conditions(code, plan, mds_samples):
            raise PlanVerificationError("supplied points fail the plan conditions")
        return plan

    rng = random.Random(seed)
    for _ in range(max_attempts):
        candidate = tuple(rng.sample(range(1, field.p), n))
        plan = EvaluationPlan(field, candidate, exponents)
        if _plan_conditions(code, plan, mds_samples):
            return plan
    raise PlanSearchError(max_attempts)


def _check_shapes(code: PolynomialCode, shapes: BlockShapes) -> None:
    if shapes.r % code.params.k:
        raise ParameterError(f"K={code.params.k} must divide r={shapes.r}")
    if shapes.t % code.params.l:
        raise ParameterError(f"L={code.params.l} must divide t={shapes.t}")


def _check_matrix(name: str, m: FieldMatrix, rows: int, cols: int, p: int) -> None:
    if (m.rows, m.cols) != (rows, cols):
        raise ParameterError(f"{name} must be {rows} x {cols}, got {m.rows} x {m.cols}")
    if any(not 0 <= e < p for e in m.entries):
        raise ParameterError(f"{name} entries must be reduced mod {p}")


def random_matrix(p: int, rows: int, cols: int, rng: random.Random) -> FieldMatrix:
    return FieldMatrix(rows, cols, tuple(rng.randrange(p) for _ in range(rows * cols)))


def _row_blocks(m: FieldMatrix, count: int) -> list[FieldMatrix]:
    rows_per = m.rows // count
    return [
        FieldMatrix(rows_per, m.cols, m.entries[i * rows_per * m.cols:(i + 1) * rows_per * m.cols])
        for i in range(count)
    ]


def _col_blocks(m: FieldMatrix, count: int) -> list[FieldMatrix]:
    cols_per = m.cols // count
    blocks = []
    for j in range(count):
        entries = tuple(
            m.entries[i * m.cols + c]
            for i in range(m.rows)
            for c in range(j * cols_per, (j + 1) * cols_per)
        )
        blocks.append(FieldMatrix(m.rows, cols_per, entries))
    return blocks


def _combine(p: int, blocks: list[FieldMatrix], coeffs: list[int]) -> FieldMatrix:
    rows, cols = blocks[0].rows, blocks[0].cols
    acc = [0] * (rows * cols)
    for block, c in zip(blocks, coeffs):
        if c:
            for idx, e in enumerate(block.entries):
                acc[idx] = (acc[idx] + c * e) % p
    return FieldMatrix(rows, cols, tuple(acc))


def encode(
    a: FieldMatrix,
    b: FieldMatrix,
    code: PolynomialCode,
    plan: EvaluationPlan,
    shapes: BlockShapes,
    seed: int = 0,
    masks: MaskSet | None = None,
    with_masks: bool = False,
):
    """Produce one masked share pair per server.

    Server n receives f(a_n) = sum_k A_k a_n^alpha[k] + sum_t R_t
    a_n^alpha[K+t] and the matching g(a_n).  Masks are drawn from a
    seeded uniform source unless injected via ``masks`` (for audits).
    Returns the bundle alone, or (bundle, masks) when ``with_masks`` is
    set; production callers should discard the masks.
    """
    p = plan.field.p
    params = code.params
    _check_shapes(code, shapes)
    _check_matrix("A", a, shapes.r, shapes.s, p)
    _check_matrix("B", b, shapes.s, shapes.t, p)

    block_rows = shapes.r // params.k
    block_cols = shapes.t // params.l
    if masks is None:
        rng = random.Random(seed)
        masks = MaskSet(
            r_masks=tuple(
                random_matrix(p, block_rows, shapes.s, rng) for _ in range(params.t)
            ),
            s_masks=tuple(
                random_matrix(p, shapes.s, block_cols, rng) for _ in range(params.t)
            ),
        )
    else:
        for i, m in enumerate(masks.r_masks):
            _check_matrix(f"r_masks[{i}]", m, block_rows, shapes.s, p)
        for i, m in enumerate(masks.s_masks):
            _check_matrix(f"s_masks[{i}]", m, shapes.s, block_cols, p)
        if len(masks.r_masks) != params.t or len(masks.s_masks) != params.t:
            raise ParameterError(f"need T={params.t} masks per side")

    f_blocks = _row_blocks(a, params.k) + list(masks.r_masks)
    g_blocks = _col_blocks(b, params.l) + list(masks.s_masks)
    f_shares = []
    g_shares = []
    for point in plan.points:
        f_coeffs = [pow(point, e, p) for e in code.assignment.alpha]
        g_coeffs = [pow(point, e, p) for e in code.assignment.beta]
        f_shares.append(_combine(p, f_blocks, f_coeffs))
        g_shares.append(_combine(p, g_blocks, g_coeffs))
    bundle = ShareBundle(plan.field, tuple(f_shares), tuple(g_shares))
    if with_masks:
        return bundle, masks
    return bundle


def server_evaluate(bundle: ShareBundle, n: int) -> FieldMatrix:
    """What server n computes: the product of its two shares."""
    if not 0 <= n < bundle.n_servers:
        raise ParameterError(f"server index {n} out of range")
    return gf.mat_mul(bundle.field.p, bundle.f_shares[n], bundle.g_shares[n])


def decode(
    responses: tuple[FieldMatrix, ...],
    code: PolynomialCode,
    plan: EvaluationPlan,
    shapes: BlockShapes,
) -> FieldMatrix:
    """Recover the full product A @ B from all N server responses.

    One N x N solve handles every scalar position at once: the right-hand
    side has one column per entry of the (r/K) x (t/L) response blocks.
    The coefficient at exponent alpha[k] + beta[l] is exactly A_k B_l.
    """
    p = plan.field.p
    params = code.params
    _check_shapes(code, shapes)
    n = code.n_servers
    if len(responses) != n:
        raise ParameterError(f"need all {n} responses, got {len(responses)}")
    block_rows = shapes.r // params.k
    block_cols = shapes.t // params.l
    for i, resp in enumerate(responses):
        _check_matrix(f"responses[{i}]", resp, block_rows, block_cols, p)

    gv = gf.generalized_vandermonde(p, plan.points, plan.exponents)
    rhs = FieldMatrix(
        n,
        block_rows * block_cols,
        tuple(e for resp in responses for e in resp.entries),
    )
    coeffs = gf.solve(p, gv, rhs)

    exp_index = {e: i for i, e in enumerate(plan.exponents)}
    out = [0] * (shapes.r * shapes.t)
    for k_i in range(params.k):
        for l_i in range(params.l):
            block = coeffs.row(exp_index[code.assignment.alpha[k_i] + code.assignment.beta[l_i]])
            for bi in range(block_rows):
                for bj in range(block_cols):
                    out[(k_i * block_rows + bi) * shapes.t + l_i * block_cols + bj] = block[
                        bi * block_cols + bj
                    ]
    return FieldMatrix(shapes.r, shapes.t, tuple(out))


def cost(code: PolynomialCode, shapes: BlockShapes) -> CostReport:
    """Exact symbol counts for one full multiplication."""
    _check_shapes(code, shapes)
    n = code.n_servers
    k, l = code.params.k, code.params.l
    upload = n * (shapes.r * shapes.s // k + shapes.s * shapes.t // l)
    download = n * shapes.r * shapes.t // (k * l)
    return CostReport(upload_symbols=upload, download_symbols=download)
