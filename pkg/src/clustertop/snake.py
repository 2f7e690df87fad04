"""Words over {L, R, S}, diamond-tiled snake graphs, rattles, and matchings.

Geometric conventions (calibrated against the worked straight-run and
zigzag counts; the brute-force matcher works on the explicit cell complex,
so they are testable rather than assumed):

* a tile centered at (x, y) is the diamond with vertices W = (x-1, y),
  N = (x, y+1), E = (x+1, y), S = (x, y-1); its four edges are named
  NW, NE, SW, SE and carry the obvious cardinal attributes (NW is both
  northern and western, and so on);
* a word without leading S grows the graph northward from tile 0, letter L
  gluing the next tile to the NW, letter R to the NE; a leading S mirrors
  the construction, growing southward (L to the SW, R to the SE);
* the rattle is the unique free southern edge of tile 0 (northern for an
  S-word); for the one-tile graph all four edges are rattles and the
  (ns, ew) labels select one, with ew fixed by the magnitude of the
  associated fraction (western iff |fraction| >= 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Farey, mediant


class SInBody(ValueError):
    """A word operation meant for {L, R} received an S."""


class TooLarge(ValueError):
    """Brute-force matching enumeration beyond the tile cap."""


BRUTE_FORCE_TILE_CAP = 24


@dataclass(frozen=True)
class Word:
    has_s: bool
    body: str

    def __post_init__(self):
        if any(ch not in "LR" for ch in self.body):
            raise SInBody(f"body must be over {{L,R}}: {self.body!r}")

    @classmethod
    def parse(cls, text: str) -> "Word":
        if text.startswith("S"):
            return cls(True, text[1:])
        return cls(False, text)

    def __str__(self) -> str:
        return ("S" if self.has_s else "") + self.body


def _check_lr(w: str) -> None:
    if any(ch not in "LR" for ch in w):
        raise SInBody(f"expected a word over {{L,R}}, got {w!r}")


_FLIP = str.maketrans("LR", "RL")


def opposite(w: str) -> str:
    """Flip every letter."""
    _check_lr(w)
    return w.translate(_FLIP)


def dual(w: str) -> str:
    """Flip the letters at odd positions (first, third, ...)."""
    _check_lr(w)
    return "".join(ch.translate(_FLIP) if k % 2 == 0 else ch for k, ch in enumerate(w))


def codual(w: str) -> str:
    """dual of the opposite (equivalently, opposite of the dual)."""
    return dual(opposite(w))


_SIDES = ("NW", "NE", "SW", "SE")


@dataclass
class SnakeGraph:
    tiles: list  # tile centers, in gluing order
    vertices: list  # lattice points
    edges: list  # (u, v) vertex pairs, u < v
    edge_sides: list  # per edge, list of (tile index, side name)

    @property
    def n_tiles(self) -> int:
        return len(self.tiles)


@dataclass
class Rattlesnake:
    graph: SnakeGraph
    rattle: int  # edge index
    ns: str  # "northern" | "southern"
    ew: str  # "eastern" | "western"
    word: Word | None  # None for the degenerate single-edge graphs


def _tile_edges(center):
    x, y = center
    w, n, e, s = (x - 1, y), (x, y + 1), (x + 1, y), (x, y - 1)
    return {"NW": (w, n), "NE": (n, e), "SW": (s, w), "SE": (s, e)}


def _degenerate(ew: str) -> Rattlesnake:
    # 0 and infinity degenerate the single tile into one tilted edge
    u, v = ((0, 0), (1, 1)) if ew == "eastern" else ((0, 0), (-1, 1))
    g = SnakeGraph(tiles=[], vertices=[u, v], edges=[(min(u, v), max(u, v))], edge_sides=[[]])
    return Rattlesnake(graph=g, rattle=0, ns="southern", ew=ew, word=None)


def build_graph(word: Word | str) -> Rattlesnake:
    """Assemble the cell complex of a word and mark its rattle."""
    if isinstance(word, str):
        word = Word.parse(word)
    dy = -1 if word.has_s else 1
    centers = [(0, 0)]
    for ch in word.body:
        x, y = centers[-1]
        centers.append((x + (-1 if ch == "L" else 1), x * 0 + y + dy))
    edge_ix: dict = {}
    edges: list = []
    sides: list = []
    vertices: dict = {}
    for t, c in enumerate(centers):
        for side, (u, v) in _tile_edges(c).items():
            key = (min(u, v), max(u, v))
            if key not in edge_ix:
                edge_ix[key] = len(edges)
                edges.append(key)
                sides.append([])
            sides[edge_ix[key]].append((t, side))
            vertices[u] = vertices[v] = True
    g = SnakeGraph(tiles=centers, vertices=sorted(vertices), edges=edges, edge_sides=sides)

    ns = "northern" if word.has_s else "southern"
    if word.body:
        ew = "eastern" if word.body[0] == "L" else "western"
    else:
        f = word_to_fraction(word)
        ew = "western" if f.den == 0 or abs(f.num) >= f.den else "eastern"
    if word.has_s:
        side = "NE" if ew == "eastern" else "NW"
    else:
        side = "SE" if ew == "eastern" else "SW"
    rattle = edge_ix[tuple(sorted(_tile_edges(centers[0])[side]))]
    return Rattlesnake(graph=g, rattle=rattle, ns=ns, ew=ew, word=word)


def rattles(g: SnakeGraph) -> list:
    """Edges whose endpoints have equal degree <= 2."""
    deg: dict = {}
    for u, v in g.edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return [k for k, (u, v) in enumerate(g.edges) if deg[u] == deg[v] and deg[u] <= 2]


def _count(g: SnakeGraph, forced: int | None) -> int:
    if g.n_tiles > BRUTE_FORCE_TILE_CAP:
        raise TooLarge(f"brute force capped at {BRUTE_FORCE_TILE_CAP} tiles")
    adj: dict = {v: [] for v in g.vertices}
    for k, (u, v) in enumerate(g.edges):
        adj[u].append((k, v))
        adj[v].append((k, u))
    covered = set()
    if forced is not None:
        u, v = g.edges[forced]
        covered.update((u, v))

    def rec() -> int:
        best = None
        for v in g.vertices:
            if v in covered:
                continue
            avail = [(k, u) for k, u in adj[v] if u not in covered]
            if not avail:
                return 0
            if best is None or len(avail) < len(best[1]):
                best = (v, avail)
                if len(avail) == 1:
                    break
        if best is None:
            return 1
        v, avail = best
        total = 0
        covered.add(v)
        for _, u in avail:
            covered.add(u)
            total += rec()
            covered.remove(u)
        covered.remove(v)
        return total

    return rec()


def count_matchings(g: SnakeGraph) -> int:
    """Perfect matchings of the cell complex, by brute-force enumeration."""
    return _count(g, None)


def count_matchings_with_rattle(rs: Rattlesnake) -> int:
    """Perfect matchings containing the rattle edge."""
    return _count(rs.graph, rs.rattle)


def word_to_fraction(word: Word | str) -> Farey:
    """Signed endpoint of the Stern-Brocot descent driven by dual(body).

    The raw letter L recurses toward the larger subinterval and R toward
    the smaller; the final mediant is returned, negated for an S-word.
    The empty body gives 1/1.
    """
    if isinstance(word, str):
        word = Word.parse(word)
    lo, hi = Farey(0, 1), Farey(1, 0)
    for ch in dual(word.body):
        m = mediant(lo, hi)
        if ch == "L":
            lo = m
        else:
            hi = m
    f = mediant(lo, hi)
    return -f if word.has_s else f


def fraction_to_word(f: Farey) -> Word:
    """Inverse of word_to_fraction on nonzero finite fractions."""
    if f.den == 0 or f.num == 0:
        raise ValueError(f"{f} has a degenerate (tile-free) rattlesnake, not a word")
    r, s = abs(f.num), f.den
    lo, hi = Farey(0, 1), Farey(1, 0)
    raw = []
    while True:
        m = mediant(lo, hi)
        if m.num * s == r * m.den:
            break
        if r * m.den < m.num * s:
            raw.append("R")
            hi = m
        else:
            raw.append("L")
            lo = m
    return Word(f.num < 0, dual("".join(raw)))


def fraction_to_rattlesnake(f: Farey) -> Rattlesnake:
    """The marked snake graph of a rational (or infinite) Farey fraction."""
    if f.den == 0:
        return _degenerate("western")
    if f.num == 0:
        return _degenerate("eastern")
    return build_graph(fraction_to_word(f))


def rattlesnake_to_fraction(rs: Rattlesnake) -> Farey:
    """Recover the fraction from matching counts alone.

    |z| = m/(M - m) for a western rattle and (M - m)/m for an eastern one,
    with M the total count and m the rattle-forced count; a northern rattle
    contributes the minus sign.
    """
    m = count_matchings_with_rattle(rs)
    total = count_matchings(rs.graph)
    if rs.ew == "western":
        num, den = m, total - m
    else:
        num, den = total - m, m
    if rs.ns == "northern":
        num = -num
    return Farey(num, den)


def counts_from_word(word: Word | str) -> tuple:
    """Fast path: (total, with-rattle) counts via the fraction, no enumeration."""
    f = word_to_fraction(word)
    r, s = abs(f.num), f.den
    return (r + s, max(r, s))


def to_json(rs: Rattlesnake) -> dict:
    """Stable JSON-ready dump of a rattlesnake (tiles, gluings, rattle id)."""
    return {
        "word": str(rs.word) if rs.word is not None else None,
        "tiles": [list(c) for c in rs.graph.tiles],
        "gluings": rs.word.body if rs.word is not None else "",
        "rattle": {"edge": rs.rattle, "ns": rs.ns, "ew": rs.ew},
        "vertices": [list(v) for v in rs.graph.vertices],
        "edges": [[list(u), list(v)] for u, v in rs.graph.edges],
    }
