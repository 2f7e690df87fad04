"""The eight-parameter cubic engine: invariant, local rule, and LP mutation.

Clusters are ordered scalar triples (x1, x2, x3), compass-read as (w, n, e).
Scalars may be ints, Fractions, or complex floats; every operation is plain
ring arithmetic except the rational mutation, which divides by the mutated
entry.  Parameters are never transported by any operation: exchange
polynomials are re-derived from the parameters wherever needed, since they
are a conserved datum of the dynamics.

Index convention: i in {1, 2, 3} and (i, j, k) always cyclic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import InexactDivision, LaurentPoly, exact_div


class DivisionByZero(ZeroDivisionError):
    """Rational mutation attempted at a zero entry (a topograph black hole)."""


@dataclass(frozen=True)
class MasterParams:
    delta: tuple
    sigma: tuple
    zeta: object = 0
    tau: object = 0


def markov() -> MasterParams:
    """sigma = delta = 0, tau = 3: the Vieta / Markov specialization."""
    return MasterParams((0, 0, 0), (0, 0, 0), 0, 3)


def conway(zeta=0) -> MasterParams:
    """sigma = 0, delta = -2, tau = 0: the arithmetic-progression rule.

    With zeta = -disc the solution set is exactly the cluster set of the
    binary quadratic forms of that discriminant.
    """
    return MasterParams((-2, -2, -2), (0, 0, 0), zeta, 0)


def discriminant_params(disc) -> MasterParams:
    """Conway specialization pinned to one discriminant value."""
    return conway(zeta=-disc)


def pvi(theta) -> MasterParams:
    """Monodromy-manifold dictionary: tau = -1, sigma_i = -theta_i, zeta = theta4."""
    t1, t2, t3, t4 = theta
    return MasterParams((0, 0, 0), (-t1, -t2, -t3), t4, -1)


def _jk(i: int) -> tuple[int, int]:
    j = i % 3 + 1
    return j, j % 3 + 1


def exchange_value(params: MasterParams, i: int, a, b):
    """F_i evaluated at (x_j, x_k) = (a, b)."""
    j, k = _jk(i)
    return (
        a * a
        + b * b
        + params.delta[i - 1] * a * b
        + params.sigma[j - 1] * a
        + params.sigma[k - 1] * b
        + params.zeta
    )


def exchange_poly(params: MasterParams, i: int) -> LaurentPoly:
    """The exchange polynomial F_i = x_j^2 + x_k^2 + delta_i x_j x_k + sigma_j x_j + sigma_k x_k + zeta."""
    j, k = _jk(i)
    return exchange_value(params, i, LaurentPoly.gen(j), LaurentPoly.gen(k))


def invariant(params: MasterParams, cluster):
    """I_Mas(w, n, e); the constant the local rule preserves (zeta excluded)."""
    w, n, e = cluster
    d1, d2, d3 = params.delta
    s1, s2, s3 = params.sigma
    return (
        w * w + n * n + e * e
        + d1 * n * e + d2 * e * w + d3 * w * n
        + s1 * w + s2 * n + s3 * e
        - params.tau * w * n * e
    )


def residual(params: MasterParams, cluster):
    """Master-equation left-minus-right; zero exactly on solutions."""
    return invariant(params, cluster) + params.zeta


def local_rule(params: MasterParams, cluster, i: int):
    """Polynomial rule x_i -> tau x_j x_k - x_i - delta_j x_k - delta_k x_j - sigma_i.

    Defined for every input; agrees with the rational mutation on solutions.
    """
    j, k = _jk(i)
    xi, xj, xk = cluster[i - 1], cluster[j - 1], cluster[k - 1]
    s = (
        params.tau * xj * xk
        - xi
        - params.delta[j - 1] * xk
        - params.delta[k - 1] * xj
        - params.sigma[i - 1]
    )
    out = list(cluster)
    out[i - 1] = s
    return tuple(out)


def mutate(params: MasterParams, cluster, i: int):
    """Rational LP mutation x_i -> F_i(x_j, x_k)/x_i."""
    j, k = _jk(i)
    xi = cluster[i - 1]
    if xi == 0:
        raise DivisionByZero(f"mutation at index {i} of {cluster}")
    f = exchange_value(params, i, cluster[j - 1], cluster[k - 1])
    if isinstance(f, int) and isinstance(xi, int):
        quot, rem = divmod(f, xi)
        new = quot if rem == 0 else Fraction(f, xi)
    else:
        new = f / xi
    out = list(cluster)
    out[i - 1] = new
    return tuple(out)


def permute(cluster, perm) -> tuple:
    """Reorder entries: result[k] = cluster[perm[k]] with 1-based positions.

    (3, 2, 1) is the outer swap (13); (3, 1, 2) is the 3-cycle (a,b,c)->(c,a,b).
    """
    return tuple(cluster[p - 1] for p in perm)


@dataclass(frozen=True)
class Seed:
    """LP seed: a cluster of Laurent polynomials plus the (fixed) parameters."""

    cluster: tuple
    params: MasterParams


def identity_seed(params: MasterParams) -> Seed:
    return Seed((LaurentPoly.gen(1), LaurentPoly.gen(2), LaurentPoly.gen(3)), params)


def mutate_seed(seed: Seed, i: int) -> Seed:
    """Exact seed mutation; raises InexactDivision on a non-Laurent step."""
    j, k = _jk(i)
    f = exchange_value(seed.params, i, seed.cluster[j - 1], seed.cluster[k - 1])
    if not seed.cluster[i - 1]:
        raise DivisionByZero(f"seed entry {i} is the zero polynomial")
    new = exact_div(f, seed.cluster[i - 1])
    out = list(seed.cluster)
    out[i - 1] = new
    return Seed(tuple(out), seed.params)


def permute_seed(seed: Seed, perm) -> Seed:
    """Reorder the cluster only; the parameters are deliberately not permuted."""
    return Seed(permute(seed.cluster, perm), seed.params)


def _close(a, b, tol) -> bool:
    if tol == 0:
        return a == b
    scale = max(1.0, abs(a), abs(b))
    return abs(a - b) <= tol * scale


def verify_exchange_invariance(params: MasterParams, cluster, i: int, tol=0) -> bool:
    """Check the absorbing-monomial identity behind exchange-polynomial conservation.

    With M = x_i'^2, the mutated exchange polynomials must satisfy both the
    factorization G = (freed factor) * H and F' = M * H = F at the mutated
    cluster, for each of the two indices j != i.
    """
    j, k = _jk(i)
    xi = cluster[i - 1]
    if xi == 0:
        raise DivisionByZero(f"mutation at index {i} of {cluster}")
    mutated = mutate(params, cluster, i)
    xi2 = mutated[i - 1]
    if xi2 == 0:
        raise DivisionByZero("mutated entry vanished; H is undefined")
    m = xi2 * xi2

    for t, other in ((j, k), (k, j)):
        xo = cluster[other - 1]
        # F_i with x_t <- 0 frees the factor xo^2 + sigma_other * xo + zeta
        freed = xo * xo + params.sigma[other - 1] * xo + params.zeta
        sub = _scalar_div(freed, xi2)
        # G_t by direct substitution x_i <- freed/x_i' into F_t
        g = exchange_value_at(params, t, cluster, {i: sub})
        h = 1 + _scalar_div(params.sigma[i - 1], xi2) + _scalar_div(params.delta[t - 1] * xo, xi2) + _scalar_div(freed, m)
        if not _close(g, freed * h, tol):
            return False
        if not _close(m * h, exchange_value_at(params, t, mutated, {}), tol):
            return False
    return True


def exchange_value_at(params: MasterParams, i: int, cluster, overrides: dict):
    """F_i at the cluster, with entries optionally overridden by index."""
    j, k = _jk(i)
    a = overrides.get(j, cluster[j - 1])
    b = overrides.get(k, cluster[k - 1])
    return exchange_value(params, i, a, b)


def _scalar_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        quot, rem = divmod(a, b)
        return quot if rem == 0 else Fraction(a, b)
    return a / b
