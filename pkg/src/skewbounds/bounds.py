"""Product and sum uncertainty lower bounds and their refinement chains.

Conventions: modulus vectors x, y are nonnegative with sum(x**2) = I(A),
sum(y**2) = I(B).  The refinement chain I_k interpolates between
I_1 = I(A) I(B) and I_{d^2} = (sum x_i y_i)^2, never dropping below the
Cauchy-Schwarz bound |Corr(A, B)|^2.  The finer S_{pq} table starts at
S_{10} = I_1 and descends lexicographically in (p, q), with S_{p,p-1} = I_p.

All chain values are computed by direct summation of the defining formulas;
the consecutive-difference identities are exposed separately so tests can
cross-check the two independent formulations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ComplexityRefusal,
    DimensionMismatch,
    InvariantViolation,
    LengthMismatch,
)
from .linalg import DensityMatrix
from .loo import GramFactor, expand, gram_matrix, loo_basis, modulus_vector
from .metrics import MetricSpec
from .skewinfo import correlation, skew_information

# Hard cap on enumerated permutation candidates for exhaustive searches.
EXHAUSTIVE_CAP = 10**6


@dataclass(frozen=True)
class SearchStrategy:
    """How to search permutation space: exhaustive or seeded sampling."""

    kind: str = "exhaustive"  # "exhaustive" | "sampled"
    n_samples: int = 200
    seed: int = 0


def _as_modulus_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(f"modulus vectors of shapes {x.shape} and {y.shape}")
    return x, y


def cauchy_bound(
    rho: DensityMatrix, A: np.ndarray, B: np.ndarray, m: MetricSpec
) -> float:
    """|Corr(A, B)|^2, the plain Cauchy-Schwarz lower bound on I(A) I(B)."""
    return abs(correlation(rho, A, B, m)) ** 2


def chain_Ik(x, y) -> np.ndarray:
    """The refinement chain I_1 ... I_n, n = len(x), by direct summation.

    I_k keeps the cross terms x_i^2 y_j^2 + x_j^2 y_i^2 for pairs reaching
    beyond position k and replaces the pairs inside the first k positions by
    their geometric-mean counterparts 2 x_i y_i x_j y_j.
    """
    x, y = _as_modulus_pair(x, y)
    n = len(x)
    x2, y2 = x * x, y * y
    xy = x * y
    diag = float(np.dot(x2, y2))
    # prefix sums over pairs i < j <= k of the two pair weights
    total_cross = 0.0
    cross_prefix = np.zeros(n + 1)
    geo_prefix = np.zeros(n + 1)
    for k in range(1, n):
        total_cross += float(np.sum(x2[:k]) * y2[k] + np.sum(y2[:k]) * x2[k])
        geo_prefix[k + 1] = geo_prefix[k] + 2.0 * float(np.sum(xy[:k]) * xy[k])
        cross_prefix[k + 1] = total_cross
    out = np.empty(n)
    for k in range(1, n + 1):
        out[k - 1] = diag + (total_cross - cross_prefix[k]) + geo_prefix[k]
    return out


def chain_Ik_step(x, y, k: int) -> float:
    """Consecutive difference I_{k+1} - I_k = -sum_{i<=k} (x_i y_{k+1} - y_i x_{k+1})^2."""
    x, y = _as_modulus_pair(x, y)
    return -float(np.sum((x[:k] * y[k] - y[:k] * x[k]) ** 2))


def spq_order(n: int) -> list[tuple[int, int]]:
    """The descending-chain key order (1,0), (2,1), (3,1), (3,2), ..."""
    keys = [(1, 0)]
    for p in range(2, n + 1):
        keys.extend((p, q) for q in range(1, p))
    return keys


def table_Spq(x, y) -> dict[tuple[int, int], float]:
    """The refinement table S_{pq} by direct summation.

    S_{pq} subtracts from sum_{ij} x_i^2 y_j^2 every cross-difference square
    (x_j y_i - x_i y_j)^2 with i < j <= p-1, plus the first q such squares
    against position p.  Includes S_{10} (nothing subtracted) and satisfies
    S_{p,p-1} = I_p.
    """
    x, y = _as_modulus_pair(x, y)
    n = len(x)
    total = float(np.sum(x * x) * np.sum(y * y))
    # Q[i, j] = (x_j y_i - x_i y_j)^2, 0-based
    Q = (np.outer(y, x) - np.outer(x, y)) ** 2
    table = {(1, 0): total}
    tri = 0.0  # sum of Q over i < j <= p-1 (1-based)
    for p in range(2, n + 1):
        tri += float(np.sum(Q[: p - 2, p - 2])) if p >= 3 else 0.0
        col = np.cumsum(Q[: p - 1, p - 1])
        for q in range(1, p):
            table[(p, q)] = total - tri - float(col[q - 1])
    return table


def spq_step_identities(x, y) -> list[tuple[str, float, float]]:
    """The three difference identities of the S table, as (name, lhs, rhs).

    Each rhs is minus a single cross-difference square; tests assert
    lhs == rhs to pin the direct summation against the recursive form.
    """
    x, y = _as_modulus_pair(x, y)
    n = len(x)
    S = table_Spq(x, y)
    out = []
    out.append(
        ("S21-S10", S[(2, 1)] - S[(1, 0)], -float((x[1] * y[0] - x[0] * y[1]) ** 2))
    )
    for p in range(2, n + 1):
        for q in range(2, p):
            out.append(
                (
                    f"S{p}{q}-S{p}{q-1}",
                    S[(p, q)] - S[(p, q - 1)],
                    -float((x[p - 1] * y[q - 1] - x[q - 1] * y[p - 1]) ** 2),
                )
            )
    for p in range(3, n + 1):
        out.append(
            (
                f"S{p}1-S{p-1}{p-2}",
                S[(p, 1)] - S[(p - 1, p - 2)],
                -float((x[p - 1] * y[0] - x[0] * y[p - 1]) ** 2),
            )
        )
    return out


def _product_pair_candidates(n: int, strategy: SearchStrategy):
    """Yield (pi_A, pi_B) index-tuple pairs in a deterministic order."""
    if strategy.kind == "exhaustive":
        count = math.factorial(n) ** 2
        if count > EXHAUSTIVE_CAP:
            raise ComplexityRefusal(
                f"exhaustive pair search over {count} candidates exceeds cap "
                f"{EXHAUSTIVE_CAP}; use the sampled strategy"
            )
        perms = list(itertools.permutations(range(n)))
        for pa in perms:
            for pb in perms:
                yield pa, pb
        return
    if strategy.kind != "sampled":
        raise ComplexityRefusal(f"unknown strategy kind {strategy.kind!r}")
    identity = tuple(range(n))
    yield identity, identity
    # sorted pairings are appended by the caller (they need x, y)
    rng = np.random.default_rng(strategy.seed)
    for _ in range(strategy.n_samples):
        yield tuple(rng.permutation(n)), tuple(rng.permutation(n))


def best_permuted_product_bound(
    x,
    y,
    which: str = "Ik",
    strategy: SearchStrategy = SearchStrategy(),
) -> tuple[float, tuple[tuple[int, ...], tuple[int, ...]], tuple[int, ...]]:
    """Best non-trivial permuted chain bound on the product I(A) I(B).

    Returns (value, (pi_A, pi_B), index) where index is (k,) for the I chain
    or (p, q) for the S table.  Both chains descend for any fixed pair, so
    the best index is always the head (k = 2, resp. (2, 1)); the search is
    over permutation pairs.  Exhaustive enumeration requires n! ** 2 within
    the cap, otherwise a seeded sample (always including the identity pair
    and both sorted pairings) certifies a lower bound on the true max.
    """
    x, y = _as_modulus_pair(x, y)
    n = len(x)
    if which not in ("Ik", "Spq"):
        raise ValueError(f"unknown chain selector {which!r}")
    total = float(np.sum(x * x) * np.sum(y * y))

    candidates = list(_product_pair_candidates(n, strategy))
    if strategy.kind == "sampled":
        asc_x = tuple(int(i) for i in np.argsort(x, kind="stable"))
        asc_y = tuple(int(i) for i in np.argsort(y, kind="stable"))
        desc_y = tuple(reversed(asc_y))
        candidates = [candidates[0], (asc_x, asc_y), (asc_x, desc_y)] + candidates[1:]

    best = -np.inf
    best_pair = None
    for pa, pb in candidates:
        # head of either chain: total minus the first cross-difference square
        q = (x[pa[0]] * y[pb[1]] - y[pb[0]] * x[pa[1]]) ** 2
        val = total - q
        if val > best:
            best = val
            best_pair = (pa, pb)
    index = (2,) if which == "Ik" else (2, 1)
    return float(best), best_pair, index


def parallelogram_value(vectors: list[np.ndarray], perms: list[tuple[int, ...]]) -> float:
    """The sum-form lower bound for one tuple of permutations.

    (1/(2N-2)) [ sum_{i<j} ||Xi^pi + Xj^pj||^2
                 + (2/(N(N-1))) (sum_{i<j} ||Xi^pi - Xj^pj||)^2 ]
    """
    N = len(vectors)
    Xp = [np.asarray(v)[list(p)] for v, p in zip(vectors, perms)]
    plus = 0.0
    minus = 0.0
    for i in range(N):
        for j in range(i + 1, N):
            plus += float(np.sum((Xp[i] + Xp[j]) ** 2))
            minus += float(np.sqrt(np.sum((Xp[i] - Xp[j]) ** 2)))
    return (plus + (2.0 / (N * (N - 1))) * minus**2) / (2.0 * N - 2.0)


def sum_bound_parallelogram(
    moduli: list[np.ndarray], strategy: SearchStrategy = SearchStrategy()
) -> tuple[float, list[tuple[int, ...]]]:
    """Best parallelogram-law sum bound over candidate permutation tuples.

    Returns (value, witness tuple of permutations).  The bound is invariant
    under composing every permutation with a common one, so exhaustive
    enumeration fixes the first permutation to the identity and sweeps the
    remaining n! ** (N-1) tuples (capped).
    """
    N = len(moduli)
    if N < 2:
        raise DimensionMismatch("sum bound needs at least 2 observables")
    vectors = [np.asarray(v, dtype=float) for v in moduli]
    n = len(vectors[0])
    for v in vectors:
        if v.shape != (n,):
            raise LengthMismatch("modulus vectors must share one length")
    identity = tuple(range(n))

    if strategy.kind == "exhaustive":
        count = math.factorial(n) ** (N - 1)
        if count > EXHAUSTIVE_CAP:
            raise ComplexityRefusal(
                f"exhaustive tuple search over {count} candidates exceeds cap "
                f"{EXHAUSTIVE_CAP}; use the sampled strategy"
            )
        perms = list(itertools.permutations(range(n)))
        candidates = (
            (identity,) + rest for rest in itertools.product(perms, repeat=N - 1)
        )
    elif strategy.kind == "sampled":
        rng = np.random.default_rng(strategy.seed)
        cand_list = [
            tuple(identity for _ in range(N)),
            tuple(
                tuple(int(i) for i in np.argsort(v, kind="stable")) for v in vectors
            ),
        ]
        for _ in range(strategy.n_samples):
            cand_list.append(tuple(tuple(rng.permutation(n)) for _ in range(N)))
        candidates = iter(cand_list)
    else:
        raise ComplexityRefusal(f"unknown strategy kind {strategy.kind!r}")

    best = -np.inf
    witness = None
    for tup in candidates:
        val = parallelogram_value(vectors, list(tup))
        if val > best:
            best = val
            witness = list(tup)
    return float(best), witness


def sum_bound_norm(
    rho: DensityMatrix, observables: list[np.ndarray], m: MetricSpec
) -> float:
    """The matrix-norm baseline bound from skew information of combinations.

    max over x in {0,1} of (1/(2N-2)) [ (2/(N(N-1)))
    (sum_{i<j} sqrt(I(A_i + (-1)^x A_j)))^2 + sum_{i<j} I(A_i + (-1)^(x+1) A_j) ].
    """
    N = len(observables)
    if N < 2:
        raise DimensionMismatch("sum bound needs at least 2 observables")
    best = -np.inf
    for xbit in (0, 1):
        sgn = (-1.0) ** xbit
        root_sum = 0.0
        lin_sum = 0.0
        for i in range(N):
            for j in range(i + 1, N):
                root_sum += np.sqrt(
                    skew_information(rho, observables[i] + sgn * observables[j], m)
                )
                lin_sum += skew_information(
                    rho, observables[i] - sgn * observables[j], m
                )
        val = ((2.0 / (N * (N - 1))) * root_sum**2 + lin_sum) / (2.0 * N - 2.0)
        best = max(best, val)
    return float(best)


@dataclass(frozen=True)
class ProductChain:
    """All product-form bounds for one (rho, A, B, metric) instance."""

    product: float
    cauchy: float
    I_seq: np.ndarray
    S_table: dict[tuple[int, int], float] = field(repr=False)


def product_chain(
    rho: DensityMatrix,
    A: np.ndarray,
    B: np.ndarray,
    m: MetricSpec,
    basis: list[np.ndarray] | None = None,
    factor: GramFactor | None = None,
) -> ProductChain:
    """Evaluate product, Cauchy-Schwarz bound, and both refinement chains."""
    if basis is None:
        basis = loo_basis(rho.dim)
    if factor is None:
        factor = gram_matrix(rho, basis, m)
    x = modulus_vector(factor, expand(A, basis))
    y = modulus_vector(factor, expand(B, basis))
    return ProductChain(
        product=skew_information(rho, A, m) * skew_information(rho, B, m),
        cauchy=cauchy_bound(rho, A, B, m),
        I_seq=chain_Ik(x, y),
        S_table=table_Spq(x, y),
    )


def check_product_chain(pc: ProductChain, tol: float = 1e-9) -> None:
    """Assert every ordering relation of the chains; raise InvariantViolation."""
    n = len(pc.I_seq)
    eq_tol = 1e-10
    if abs(pc.I_seq[0] - pc.product) > max(eq_tol, tol):
        raise InvariantViolation(
            f"I_1 = {pc.I_seq[0]!r} differs from product {pc.product!r}"
        )
    if abs(pc.S_table[(1, 0)] - pc.product) > max(eq_tol, tol):
        raise InvariantViolation("S_10 differs from product")
    for k in range(1, n):
        if pc.I_seq[k] > pc.I_seq[k - 1] + eq_tol:
            raise InvariantViolation(f"I chain increases at k = {k + 1}")
    keys = spq_order(n)
    for a, b in zip(keys, keys[1:]):
        if pc.S_table[b] > pc.S_table[a] + eq_tol:
            raise InvariantViolation(f"S chain increases at {b}")
    for p in range(2, n + 1):
        if abs(pc.S_table[(p, p - 1)] - pc.I_seq[p - 1]) > eq_tol:
            raise InvariantViolation(f"S_{{{p},{p - 1}}} != I_{p}")
    lo = pc.cauchy - tol
    hi = pc.product + tol
    for k in range(n):
        if not (lo <= pc.I_seq[k] <= hi):
            raise InvariantViolation(f"I_{k + 1} outside [cauchy, product]")
    for key, val in pc.S_table.items():
        if not (lo <= val <= hi):
            raise InvariantViolation(f"S_{key} outside [cauchy, product]")


@dataclass(frozen=True)
class SumBoundReport:
    """Sum of skew informations with both lower bounds and the witness."""

    sum_value: float
    parallelogram: float
    witness_perms: list[tuple[int, ...]]
    norm_bound: float


def sum_bound_report(
    rho: DensityMatrix,
    observables: list[np.ndarray],
    m: MetricSpec,
    strategy: SearchStrategy = SearchStrategy(),
    basis: list[np.ndarray] | None = None,
    factor: GramFactor | None = None,
) -> SumBoundReport:
    """Evaluate the sum-form bounds for a family of observables."""
    if basis is None:
        basis = loo_basis(rho.dim)
    if factor is None:
        factor = gram_matrix(rho, basis, m)
    moduli = [modulus_vector(factor, expand(A, basis)) for A in observables]
    para, witness = sum_bound_parallelogram(moduli, strategy)
    return SumBoundReport(
        sum_value=float(sum(skew_information(rho, A, m) for A in observables)),
        parallelogram=para,
        witness_perms=witness,
        norm_bound=sum_bound_norm(rho, observables, m),
    )


def check_sum_report(report: SumBoundReport, tol: float = 1e-9) -> None:
    """Assert the sum dominates both of its lower bounds."""
    if report.sum_value < report.parallelogram - tol:
        raise InvariantViolation(
            f"sum {report.sum_value!r} below parallelogram bound {report.parallelogram!r}"
        )
    if report.sum_value < report.norm_bound - tol:
        raise InvariantViolation(
            f"sum {report.sum_value!r} below norm bound {report.norm_bound!r}"
        )
