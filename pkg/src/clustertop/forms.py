"""Binary integral quadratic forms as clusters: roots, walks, and reduction.

A form is handled as its cluster (w, n, e) = (q(1,0), q(1,1), q(0,1)) of a
binary quadratic form q(x, y) = w x^2 + (n-w-e) xy + e y^2; its discriminant
is the Conway-specialization invariant of the cluster.  The geodesic triangle
walk is carried out in the upper half-plane (conformally the same picture as
the disk), fully exactly.

Mouth bookkeeping: the river of a square discriminant has two mouths whose
value sets are negatives of each other.  The mouth whose positive value is
smaller in magnitude than its negative one is the left mouth (the side where
the reduction halts against the lake); ties happen only at a weir, where the
halting side is taken as left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .exact import Farey, Surd, chi, inside_semicircle
from .snake import Word, dual
from .master import discriminant_params, DivisionByZero

INFINITY = Farey(1, 0)


class InconsistentDiscriminant(ValueError):
    """Cluster does not solve the discriminant equation it was claimed to."""


_OTH = ((1, 2), (2, 0), (0, 1))  # 0-based "other two" slots per mutated slot


def discriminant(cluster) -> int:
    """(n - w - e)^2 - 4we; equals the Conway-specialization invariant."""
    w, n, e = cluster
    return (n - w - e) ** 2 - 4 * w * e


def form_coeffs(cluster) -> tuple:
    w, n, e = cluster
    return (w, n - w - e, e)


def cluster_from_coeffs(a, b, c) -> tuple:
    return (a, a + b + c, c)


def is_square(d: int) -> bool:
    return d >= 0 and isqrt(d) ** 2 == d


def root(cluster):
    """The root z_q in the closed upper half-plane, or INFINITY.

    (sqrt(D) - delta)/(2a) for a != 0 (conjugated into the upper half-plane
    for negative definite forms), -c/delta for a = 0 < delta, else infinity.
    """
    w, n, e = cluster
    delta = n - w - e
    disc = delta * delta - 4 * w * e
    if w != 0:
        if disc < 0 and w < 0:
            return Surd(delta, 1, -2 * w, disc)
        return Surd(-delta, 1, 2 * w, disc)
    if delta > 0:
        return Surd(-e, 0, delta, disc)
    return INFINITY


def _local(c: tuple, i: int, disc: int) -> tuple:
    j, k = _OTH[i - 1]
    s = 2 * (c[j] + c[k]) - c[i - 1]
    out = list(c)
    out[i - 1] = s
    return tuple(out)


def _mut(c: tuple, i: int, disc: int) -> tuple:
    j, k = _OTH[i - 1]
    f = (c[j] - c[k]) ** 2 - disc
    x = c[i - 1]
    quot, rem = divmod(f, x)
    if rem:
        raise InconsistentDiscriminant(f"{c} is not on the discriminant-{disc} topograph")
    out = list(c)
    out[i - 1] = quot
    return tuple(out)


# -- the triangle walk -------------------------------------------------------

def _raw_letters(z: Surd):
    """Yield the raw cutting-sequence letters of the Stern-Brocot descent.

    L recurses toward the larger subinterval, R toward the smaller; returns
    (endpoint Farey, exact_hit) when the descent stops.  Never stops for a
    real irrational z.
    """
    p, q, r, D = z.p, z.q, z.r, z.D
    cplx = q != 0 and D < 0
    an, ad, bn, bd = 0, 1, 1, 0
    while True:
        mn, md = an + bn, ad + bd
        if not cplx and q == 0:
            t = p * md - mn * r
            if t == 0:
                return Farey(mn, md), True
            if t < 0 and p * ad > an * r:
                yield "R"
                bn, bd = mn, md
            elif t > 0 and (bd == 0 or p * bd < bn * r):
                yield "L"
                an, ad = mn, md
            else:
                return Farey(mn, md), False
        elif cplx:
            # strict circle membership, denominators cleared
            cn = an * md + mn * ad
            rn = mn * ad - an * md
            d2 = 2 * ad * md
            if (p * d2 - cn * r) ** 2 + q * q * (-D) * d2 * d2 < rn * rn * r * r:
                yield "R"
                bn, bd = mn, md
                continue
            if bd == 0:
                inside_right = p * md > mn * r
            else:
                cn = mn * bd + bn * md
                rn = bn * md - mn * bd
                d2 = 2 * md * bd
                inside_right = (p * d2 - cn * r) ** 2 + q * q * (-D) * d2 * d2 < rn * rn * r * r
            if inside_right:
                yield "L"
                an, ad = mn, md
            else:
                return Farey(mn, md), False
        else:
            # real irrational: interval membership via sign-tracked squaring
            if _cmp_real(p, q, r, D, mn, md) < 0 and _cmp_real(p, q, r, D, an, ad) > 0:
                yield "R"
                bn, bd = mn, md
            elif _cmp_real(p, q, r, D, mn, md) > 0 and (bd == 0 or _cmp_real(p, q, r, D, bn, bd) < 0):
                yield "L"
                an, ad = mn, md
            else:
                return Farey(mn, md), False


def _cmp_real(p: int, q: int, r: int, D: int, n: int, d: int) -> int:
    """Sign of (p + q*sqrt(D))/r - n/d for D > 0 nonsquare."""
    a = p * d - n * r
    b = q * d
    if a == 0 or b == 0:
        return (a > 0) - (a < 0) or (b > 0) - (b < 0)
    sa = 1 if a > 0 else -1
    sb = 1 if b > 0 else -1
    if sa == sb:
        return sa
    return sa if a * a > b * b * D else sb


def _word_letters(z):
    """Stream the word letters (optional S, then dual of the raw letters)."""
    if isinstance(z, Farey):
        return
    if chi(z) == 1:
        yield "S"
        z = z.reflect()
    flip = {"L": "R", "R": "L"}
    pos = 0
    gen = _raw_letters(z)
    while True:
        try:
            ch = next(gen)
        except StopIteration:
            return
        yield flip[ch] if pos % 2 == 0 else ch
        pos += 1


def farey_walk(z, max_steps: int = 4096):
    """Run the triangle walk: (Word, endpoint, terminated).

    terminated is False when max_steps ran out (real irrational roots).
    """
    if isinstance(z, Farey) and z.is_infinite:
        return Word(False, ""), INFINITY, True
    if isinstance(z, Farey):
        z = Surd(z.num, 0, z.den, 0)
    has_s = chi(z) == 1
    zz = z.reflect() if has_s else z
    raw = []
    endpoint = None
    gen = _raw_letters(zz)
    for _ in range(max_steps):
        try:
            raw.append(next(gen))
        except StopIteration as stop:
            endpoint = stop.value[0]
            break
    terminated = endpoint is not None
    if endpoint is None:
        lo, hi = Farey(0, 1), Farey(1, 0)
        for ch in raw:
            m = Farey(lo.num + hi.num, lo.den + hi.den)
            if ch == "L":
                lo = m
            else:
                hi = m
        endpoint = Farey(lo.num + hi.num, lo.den + hi.den)
    if has_s:
        endpoint = -endpoint
    return Word(has_s, dual("".join(raw))), endpoint, terminated


class _IndexScan:
    """S -> mu_i, L -> mu_(i-1), R -> mu_(i+1), starting from i = 2."""

    def __init__(self):
        self.i = 2

    def push(self, ch: str) -> int:
        if ch == "S":
            idx = self.i
        elif ch == "L":
            idx = (self.i - 2) % 3 + 1
        else:
            idx = self.i % 3 + 1
        self.i = idx
        return idx


def word_to_mutations(word: Word | str) -> list:
    """Stateful extraction of the mutation-index sequence of a word."""
    if isinstance(word, str):
        word = Word.parse(word)
    scan = _IndexScan()
    return [scan.push(ch) for ch in str(word)]


# -- reduced tuples ----------------------------------------------------------

@dataclass(frozen=True)
class Well:
    values: tuple  # sorted triple

@dataclass(frozen=True)
class Lake:
    m: int

@dataclass(frozen=True)
class Mouths:
    left: tuple
    right: tuple

@dataclass(frozen=True)
class Bends:
    cycle: tuple  # ((before, after), ...) cluster pairs, one river period


@dataclass
class ReductionLog:
    word: Word
    mutations: list = field(default_factory=list)
    clusters: list = field(default_factory=list)
    hops: list = field(default_factory=list)  # positions where the local rule crossed a lake


def classify_vertex(cluster, disc: int) -> str:
    """Bestiary lookup: well | lake | mouth-left | mouth-right | bend | ordinary."""
    c = tuple(cluster)
    if c == (0, 0, 0) or discriminant(c) != disc:
        raise InconsistentDiscriminant(f"{c} does not solve the discriminant-{disc} equation")
    if disc < 0:
        mx = max(abs(v) for v in c)
        for i in (1, 2, 3):
            if max(abs(v) for v in _local(c, i, disc)) < mx:
                return "ordinary"
        return "well"
    if disc == 0:
        return "lake" if 0 in c else "ordinary"
    if is_square(disc):
        if 0 in c:
            comp = [v for v in c if v != 0]
            if len(comp) <= 1 or comp[0] * comp[1] < 0:
                return _mouth_side(c)
        return "ordinary"
    return "bend" if min(c) < 0 < max(c) else "ordinary"


def _mouth_side(c) -> str:
    pos, neg = max(c), -min(c)
    if pos < neg:
        return "mouth-left"
    if pos > neg:
        return "mouth-right"
    return "mouth-left"  # weir tie; the halting side plays left


def _p_vs_m(c) -> int:
    """-1 for a left mouth set (positive value smaller), +1 right, 0 weir tie."""
    pos, neg = max(c), -min(c)
    return (pos > neg) - (pos < neg)


def _river_next(c: tuple, prev: int) -> int:
    """The unique forward continuation: i != prev whose fixed faces straddle 0."""
    for i in (1, 2, 3):
        if i == prev:
            continue
        j, k = _OTH[i - 1]
        if c[j] * c[k] < 0:
            return i
    raise InconsistentDiscriminant(f"no river continuation at {c}")


def _cross_mouth(c: tuple, disc: int, log: ReductionLog | None):
    """From one mouth, hop over the lake and ride the river to the other mouth."""
    zeros = [i + 1 for i in range(3) if c[i] == 0]
    if len(zeros) == 2:
        # double lake: the only possible mutation is at the nonzero slot
        idx = ({1, 2, 3} - set(zeros)).pop()
        c = _mut(c, idx, disc)
        _rec(log, idx, c, hop=False)
        return c
    idx = zeros[0]
    c = _local(c, idx, disc)
    _rec(log, idx, c, hop=True)
    prev = idx
    while 0 not in c:
        prev = _river_next(c, prev)
        c = _local(c, prev, disc)
        _rec(log, prev, c, hop=False)
    return c


def _rec(log: ReductionLog | None, idx: int, c: tuple, hop: bool = False):
    if log is None:
        return
    if hop:
        log.hops.append(len(log.mutations))
    log.mutations.append(idx)
    log.clusters.append(c)


def _label_mouths(m1: tuple, m2: tuple, m1_blocked: bool) -> tuple:
    s1 = _p_vs_m(m1)
    if s1 < 0:
        return m1, m2
    if s1 > 0:
        return m2, m1
    return (m1, m2) if m1_blocked else (m2, m1)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _primitive(seq: list) -> int:
    """Smallest period of a cyclic sequence."""
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and all(seq[t] == seq[t % d] for t in range(n)):
            return d
    return n


def reduce(cluster, max_steps: int = 1_000_000):
    """Run the snake-graph-driven cluster reduction.

    Returns (ReducedTuple, ReductionLog).  The log's mutation/cluster
    sequences include the lake hop and shore descent for square
    discriminants, and one river period for nonsquare positive ones.
    """
    c = tuple(int(v) for v in cluster)
    if c == (0, 0, 0):
        raise InconsistentDiscriminant("the zero cluster is degenerate")
    disc = discriminant(c)
    z = root(c)
    letters = _word_letters(z)
    scan = _IndexScan()
    consumed = []
    log = ReductionLog(word=Word(False, ""), clusters=[c])

    def word_of():
        s = "".join(consumed)
        return Word.parse(s) if s else Word(False, "")

    if disc < 0:
        for ch in letters:
            consumed.append(ch)
            idx = scan.push(ch)
            c = _mut(c, idx, disc)
            _rec(log, idx, c)
        log.word = word_of()
        return Well(tuple(sorted(c))), log

    if disc == 0:
        if 0 not in c:
            for ch in letters:
                consumed.append(ch)
                idx = scan.push(ch)
                c = _mut(c, idx, disc)
                _rec(log, idx, c)
                if 0 in c:
                    break
        while 0 not in c:  # defensive: finish greedily along the local rule
            c, idx = _greedy_step(c, disc)
            _rec(log, idx, c)
        log.word = word_of()
        m = next(v for v in c if v != 0) if any(c) else 0
        return Lake(m), log

    if is_square(disc):
        blocked = False
        for ch in letters:
            idx_preview = _IndexScan()
            idx_preview.i = scan.i
            idx = idx_preview.push(ch)
            if c[idx - 1] == 0:
                blocked = True  # black hole: the word wants to leave the lake
                break
            consumed.append(ch)
            scan.push(ch)
            c = _mut(c, idx, disc)
            _rec(log, idx, c)
        log.word = word_of()
        while 0 not in c:  # defensive: word ended off the lakeshore
            c, idx = _greedy_step(c, disc)
            _rec(log, idx, c)
        comp = [v for v in c if v != 0]
        if len(comp) == 2 and comp[0] * comp[1] > 0:
            # lakeshore: descend to the mouth by decreasing absolute values
            while len(comp) == 2 and comp[0] * comp[1] > 0:
                idx = max((i for i in (1, 2, 3) if c[i - 1] != 0), key=lambda i: abs(c[i - 1]))
                c = _mut(c, idx, disc)
                _rec(log, idx, c)
                comp = [v for v in c if v != 0]
        m1 = c
        m2 = _cross_mouth(c, disc, log)
        left, right = _label_mouths(m1, m2, blocked)
        return Mouths(left, right), log

    # nonsquare positive discriminant: enter and ride the periodic river
    prev = None
    steps = 0
    for ch in letters:
        consumed.append(ch)
        idx = scan.push(ch)
        j, k = _OTH[idx - 1]
        crossed_river = c[j] * c[k] < 0
        c = _mut(c, idx, disc)
        _rec(log, idx, c)
        if crossed_river:
            prev = idx
            break
        steps += 1
        if steps > max_steps:
            raise RuntimeError("no river crossing found (max_steps exceeded)")
    log.word = word_of()
    if prev is None:
        raise InconsistentDiscriminant(f"walk terminated off the river for {cluster}")
    start_state = (c, prev)
    bends = []
    while True:
        prev = _river_next(c, prev)
        before = c
        c = _local(c, prev, disc)
        _rec(log, prev, c)
        if _sign(c[prev - 1]) != _sign(before[prev - 1]):
            bends.append((before, c))
        if (c, prev) == start_state:
            break
        steps += 1
        if steps > max_steps:
            raise RuntimeError("river period exceeded max_steps")
    d = _primitive([_bend_canonical(b) for b in bends])
    return Bends(tuple(bends[:d])), log


def _greedy_step(c: tuple, disc: int):
    """One strictly max-|value|-decreasing local-rule move (must exist)."""
    cur = max(abs(v) for v in c)
    best = None
    for i in (1, 2, 3):
        s = _local(c, i, disc)
        mx = max(abs(v) for v in s)
        if mx < cur and (best is None or mx < best[2]):
            best = (s, i, mx)
    if best is None:
        raise InconsistentDiscriminant(f"stalled without reaching the lakeshore at {c}")
    return best[0], best[1]


def _bend_canonical(pair) -> tuple:
    """(-, z', +): the post-bend cluster reordered around the mutated value."""
    before, after = pair
    slot = next(i for i in range(3) if before[i] != after[i])
    z = after[slot]
    others = [after[i] for i in range(3) if i != slot]
    return (min(others), z, max(others))


def oracle_reduce(cluster):
    """Greedy-descent oracle: minimize the maximum absolute value, then classify."""
    c = tuple(int(v) for v in cluster)
    if c == (0, 0, 0):
        raise InconsistentDiscriminant("the zero cluster is degenerate")
    disc = discriminant(c)
    while True:
        cur = max(abs(v) for v in c)
        best = None
        for i in (1, 2, 3):
            s = _local(c, i, disc)
            mx = max(abs(v) for v in s)
            if mx < cur and (best is None or mx < best[1]):
                best = (s, mx)
        if best is None:
            break
        c = best[0]
    if disc < 0:
        return Well(tuple(sorted(c)))
    if disc == 0:
        if 0 not in c:
            raise InconsistentDiscriminant(f"zero-discriminant stall off the lake at {c}")
        return Lake(next((v for v in c if v != 0), 0))
    if is_square(disc):
        if 0 not in c:
            # stalled mid-river: ride to a mouth first
            prev = _river_next(c, 0)
            c = _local(c, prev, disc)
            while 0 not in c:
                prev = _river_next(c, prev)
                c = _local(c, prev, disc)
        m1 = c
        m2 = _cross_mouth(c, disc, None)
        left, right = _label_mouths(m1, m2, True)
        return Mouths(left, right)
    # nonsquare: walk the river exhaustively until the state cycle closes
    prev = _river_next(c, 0)
    c = _local(c, prev, disc)
    start_state = (c, prev)
    bends = []
    while True:
        prev = _river_next(c, prev)
        before = c
        c = _local(c, prev, disc)
        if _sign(c[prev - 1]) != _sign(before[prev - 1]):
            bends.append((before, c))
        if (c, prev) == start_state:
            break
    d = _primitive([_bend_canonical(b) for b in bends])
    return Bends(tuple(bends[:d]))


def canonical_reduced_cluster(tp, log: ReductionLog | None = None):
    """Canonical reduced cluster(s) of a reduced tuple.

    Wells additionally need the reduction log (parity of the mutation count
    selects the orientation).
    """
    if isinstance(tp, Well):
        final = tuple(log.clusters[-1]) if log else tp.values
        rots = [final, (final[2], final[0], final[1]), (final[1], final[2], final[0])]
        cand = next(r for r in rots if r[1] == max(final))
        if log and len(log.mutations) % 2 == 1:
            cand = (cand[2], cand[1], cand[0])
        return cand
    if isinstance(tp, Lake):
        return (tp.m, 0, tp.m)
    if isinstance(tp, Mouths):
        return (tuple(sorted(tp.left)), tuple(sorted(tp.right, reverse=True)))
    if isinstance(tp, Bends):
        return tuple(_bend_canonical(b) for b in tp.cycle)
    raise TypeError(f"not a reduced tuple: {tp!r}")


# -- equivalence -------------------------------------------------------------

def _cycle_normal(keys: list, with_reversal: bool) -> tuple:
    n = len(keys)
    if n == 0:
        return ()
    cands = [tuple(keys[t:] + keys[:t]) for t in range(n)]
    if with_reversal:
        rev = keys[::-1]
        cands += [tuple(rev[t:] + rev[:t]) for t in range(n)]
    return min(cands)


def tuple_key(tp) -> tuple:
    """Comparison key up to the tuple's symmetry (PGL viewpoint)."""
    if isinstance(tp, Well):
        return ("well", tp.values)
    if isinstance(tp, Lake):
        return ("lake", tp.m)
    if isinstance(tp, Mouths):
        return ("mouths", tuple(sorted(tp.left)), tuple(sorted(tp.right)))
    if isinstance(tp, Bends):
        keys = [tuple(sorted((tuple(sorted(a)), tuple(sorted(b))))) for a, b in tp.cycle]
        d = _primitive(keys)
        return ("bends", _cycle_normal(keys[:d], with_reversal=True))
    raise TypeError(f"not a reduced tuple: {tp!r}")


def _strict_key(tp, log) -> tuple:
    canon = canonical_reduced_cluster(tp, log)
    if isinstance(tp, Bends):
        keys = list(canon)
        d = _primitive(keys)
        return ("bends", _cycle_normal(keys[:d], with_reversal=False))
    return (type(tp).__name__.lower(), canon)


def equivalent(q1, q2) -> bool:
    """Same discriminant and same tuple of reduced vertices."""
    c1, c2 = tuple(q1), tuple(q2)
    if discriminant(c1) != discriminant(c2):
        return False
    t1, _ = reduce(c1)
    t2, _ = reduce(c2)
    return tuple_key(t1) == tuple_key(t2)


def strict_equivalent(q1, q2) -> bool:
    """Equivalent with the same tuple of canonical reduced clusters."""
    c1, c2 = tuple(q1), tuple(q2)
    if discriminant(c1) != discriminant(c2):
        return False
    t1, l1 = reduce(c1)
    t2, l2 = reduce(c2)
    if tuple_key(t1) != tuple_key(t2):
        return False
    return _strict_key(t1, l1) == _strict_key(t2, l2)
