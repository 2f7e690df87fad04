"""The topograph as exchange graph: generator actions, walks, BFS, DOT export.

Generators act on clusters on the left-to-right reading of a walk, and the
accumulated 2x2 matrix is the product in application order, so that a walk
from q1 to q2 satisfies q2 = q1 o M as forms (coefficient substitution
x -> rx + ty, y -> sx + uy).  Matrix identities hold projectively (up to a
global sign), as befits PGL_2(Z).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import master
from .master import MasterParams, mutate, permute

Matrix = tuple  # ((a, b), (c, d)) over the integers

IDENTITY: Matrix = ((1, 0), (0, 1))

# matrix images of the generators; mu2 = S
GENERATORS: dict[str, Matrix] = {
    "S": ((-1, 0), (0, 1)),
    "T": ((-1, 1), (0, 1)),
    "U": ((0, 1), (1, 0)),
    "E": ((0, -1), (1, 0)),
    "V": ((0, 1), (-1, 1)),
    "V2": ((-1, 1), (-1, 0)),
    "mu1": ((1, 0), (2, -1)),
    "mu2": ((-1, 0), (0, 1)),
    "mu3": ((-1, 2), (0, 1)),
}


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_det(a: Matrix) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def proj_eq(a: Matrix, b: Matrix) -> bool:
    """Equality in PGL_2(Z): equal up to a global sign."""
    neg = ((-b[0][0], -b[0][1]), (-b[1][0], -b[1][1]))
    return a == b or a == neg


def apply(params: MasterParams, cluster, tag: str):
    """Act on a cluster by one generator tag."""
    if tag == "S" or tag == "mu2":
        return mutate(params, cluster, 2)
    if tag == "T":
        return permute(cluster, (1, 3, 2))
    if tag == "U":
        return permute(cluster, (3, 2, 1))
    if tag == "E":
        return permute(mutate(params, cluster, 2), (3, 2, 1))
    if tag == "V":
        return permute(cluster, (3, 1, 2))
    if tag == "V2":
        return permute(cluster, (2, 3, 1))
    if tag == "mu1":
        return mutate(params, cluster, 1)
    if tag == "mu3":
        return mutate(params, cluster, 3)
    raise KeyError(f"unknown generator {tag!r}")


@dataclass(frozen=True)
class Walk:
    start: tuple
    tags: tuple

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))


def walk_matrix(walk: Walk) -> Matrix:
    m = IDENTITY
    for tag in walk.tags:
        m = mat_mul(m, GENERATORS[tag])
    return m


def apply_walk(params: MasterParams, walk: Walk):
    c = tuple(walk.start)
    for tag in walk.tags:
        c = apply(params, c, tag)
    return c


def form_coeffs(cluster) -> tuple:
    """(a, b, c) of a x^2 + b xy + c y^2 from cluster values (q(1,0), q(1,1), q(0,1))."""
    w, n, e = cluster
    return (w, n - w - e, e)


def cluster_from_coeffs(a, b, c) -> tuple:
    return (a, a + b + c, c)


def compose_form(coeffs, m: Matrix) -> tuple:
    """(q o M)(x, y) = q(rx + ty, sx + uy) on integer coefficient triples."""
    a, b, c = coeffs
    (r, t), (s, u) = m
    return (
        a * r * r + b * r * s + c * s * s,
        2 * a * r * t + b * (r * u + t * s) + 2 * c * s * u,
        a * t * t + b * t * u + c * u * u,
    )


def verify_walk(params: MasterParams, walk: Walk) -> bool:
    """Check q_start o (accumulated matrix) = q_end as integer forms."""
    end = apply_walk(params, walk)
    composed = compose_form(form_coeffs(walk.start), walk_matrix(walk))
    return composed == form_coeffs(end)


@dataclass
class BfsResult:
    start: tuple
    depth: int
    clusters: set = field(default_factory=set)
    edges: set = field(default_factory=set)  # (cluster, index, cluster)
    pruned: bool = False


def bfs(params: MasterParams, start, depth: int) -> BfsResult:
    """All ordered clusters within `depth` mutations of `start`.

    Branches through a zero entry cannot be mutated rationally; they are
    recorded via the `pruned` flag rather than raising.
    """
    start = tuple(start)
    res = BfsResult(start=start, depth=depth, clusters={start})
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for c in frontier:
            for i in (1, 2, 3):
                if c[i - 1] == 0:
                    res.pruned = True
                    continue
                m = mutate(params, c, i)
                res.edges.add((c, i, m))
                if m not in res.clusters:
                    res.clusters.add(m)
                    nxt.append(m)
        frontier = nxt
    return res


def values(res: BfsResult) -> list:
    """Sorted distinct face values appearing in the enumerated clusters."""
    vals = {v for c in res.clusters for v in c}
    return sorted(vals)


def to_dot(res: BfsResult) -> str:
    """Deterministic DOT rendering: lexicographic nodes, mutation-index edge labels."""
    nodes = sorted(res.clusters)
    ids = {c: f"n{k}" for k, c in enumerate(nodes)}
    lines = ["graph topograph {"]
    for c in nodes:
        label = ":".join(str(v) for v in c)
        lines.append(f'  {ids[c]} [label="{label}"];')
    seen = set()
    for a, i, b in sorted(res.edges, key=lambda e: (e[0], e[2], e[1])):
        key = frozenset((a, b)), i
        if key in seen:
            continue
        seen.add(key)
        lines.append(f'  {ids[a]} -- {ids[b]} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
