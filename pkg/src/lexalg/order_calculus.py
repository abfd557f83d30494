"""Countable linear order types with multiplicities.

Orders are finite sums of five primitives: a finite chain, ``w`` (the
non-negative integers), ``w*`` (the negative integers), ``z`` (all
integers) and ``q`` (the rationals, realised as the dyadic rationals in
the open unit interval).  Each primitive segment carries a multiplicity
rule assigning a matrix size ``n >= 2`` to every point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .exceptions import (
    MultiplicityError,
    OrderSyntaxError,
    PositionError,
    UnsupportedOrderError,
)


# ---------------------------------------------------------------------------
# order expressions

@dataclass(frozen=True)
class Finite:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"Finite segment needs k >= 1, got {self.k!r}")


@dataclass(frozen=True)
class OmegaPlus:
    pass


@dataclass(frozen=True)
class OmegaMinus:
    pass


@dataclass(frozen=True)
class Zeta:
    pass


@dataclass(frozen=True)
class Eta:
    pass


Primitive = Union[Finite, OmegaPlus, OmegaMinus, Zeta, Eta]


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if len(terms) < 2:
            raise ValueError("Sum needs at least two terms")
        if any(isinstance(t, Sum) for t in terms):
            raise ValueError("Sum terms must be flattened")


OrderExpr = Union[Finite, OmegaPlus, OmegaMinus, Zeta, Eta, Sum]

WELL_ORDERED = (Finite, OmegaPlus)
INFINITE = (OmegaPlus, OmegaMinus, Zeta, Eta)


def segments(expr):
    """The primitive segments of ``expr`` from left to right."""
    return expr.terms if isinstance(expr, Sum) else (expr,)


def make_sum(terms):
    """Build a flattened expression from a sequence; ``None`` when empty."""
    flat = []
    for t in terms:
        if t is None:
            continue
        flat.extend(segments(t))
    if not flat:
        return None
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


# ---------------------------------------------------------------------------
# multiplicities

@dataclass(frozen=True)
class Explicit:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        _check_values(self.values)


@dataclass(frozen=True)
class Constant:
    n: int

    def __post_init__(self):
        _check_values((self.n,))


@dataclass(frozen=True)
class Periodic:
    pattern: tuple

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(self.pattern))
        if not self.pattern:
            raise MultiplicityError("periodic pattern must be nonempty")
        _check_values(self.pattern)


Multiplicity = Union[Explicit, Constant, Periodic]


def _check_values(values):
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 2:
            raise MultiplicityError(f"multiplicity must be an integer >= 2, got {v!r}")


def multiplicity_at(prim, weight, coordinate):
    """Matrix size attached to ``coordinate`` of a primitive segment."""
    if isinstance(weight, Constant):
        return weight.n
    if isinstance(weight, Explicit):
        return weight.values[coordinate - 1]
    return weight.pattern[coordinate % len(weight.pattern)]


# ---------------------------------------------------------------------------
# weighted orders

@dataclass(frozen=True)
class WeightedOrder:
    """An order expression with one multiplicity rule per primitive segment.

    ``factors`` optionally attaches a triangular digraph algebra to a
    segment; every position of that segment then uses that algebra in
    place of the upper triangular algebra of the same size.
    """

    expr: object
    weights: tuple
    factors: tuple = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        segs = segments(self.expr)
        if len(segs) != len(self.weights):
            raise MultiplicityError(
                f"{len(segs)} segments but {len(self.weights)} weights")
        fixed = []
        for prim, weight in zip(segs, self.weights):
            if isinstance(prim, Finite):
                if isinstance(weight, Constant):
                    weight = Explicit((weight.n,) * prim.k)
                elif isinstance(weight, Periodic):
                    raise MultiplicityError("finite segments take explicit values")
                if len(weight.values) != prim.k:
                    raise MultiplicityError(
                        f"finite segment of length {prim.k} given "
                        f"{len(weight.values)} values")
            else:
                if isinstance(weight, Periodic) and len(weight.pattern) == 1:
                    weight = Constant(weight.pattern[0])
                if isinstance(weight, Explicit):
                    raise MultiplicityError("infinite segments take a constant or a pattern")
                if isinstance(prim, Eta) and isinstance(weight, Periodic):
                    raise MultiplicityError("a q segment only accepts a constant multiplicity")
            fixed.append(weight)
        object.__setattr__(self, "weights", tuple(fixed))
        if self.factors is not None:
            factors = tuple(self.factors)
            if len(factors) != len(segs):
                raise MultiplicityError("factors must align with segments")
            for weight, alg in zip(self.weights, factors):
                if alg is None:
                    continue
                if not alg.triangular:
                    raise MultiplicityError("attached factor algebras must be triangular")
                sizes = set(weight.values if isinstance(weight, Explicit)
                            else weight.pattern if isinstance(weight, Periodic)
                            else (weight.n,))
                if sizes != {alg.n}:
                    raise MultiplicityError(
                        f"factor of size {alg.n} attached to multiplicities {sorted(sizes)}")
            object.__setattr__(self, "factors", factors)

    @property
    def segments(self):
        return segments(self.expr)

    def factor(self, segment):
        if self.factors is None:
            return None
        return self.factors[segment]

    def multiplicity(self, position):
        return multiplicity_at(self.segments[position.segment],
                               self.weights[position.segment], position.coordinate)

    def __str__(self):
        return format_order(self)


# ---------------------------------------------------------------------------
# positions

@dataclass(frozen=True, order=True)
class Position:
    segment: int
    coordinate: object

    def to_json(self):
        c = self.coordinate
        return {"segment": self.segment,
                "coordinate": c if isinstance(c, int) else str(c)}


def is_dyadic(x):
    d = x.denominator
    return d & (d - 1) == 0


def check_position(w, p):
    segs = w.segments
    if not 0 <= p.segment < len(segs):
        raise PositionError(f"segment index {p.segment} out of range")
    prim, c = segs[p.segment], p.coordinate
    if isinstance(prim, Eta):
        if not isinstance(c, (int, Fraction)):
            raise PositionError(f"q coordinate must be rational, got {c!r}")
        c = Fraction(c)
        if not (0 < c < 1 and is_dyadic(c)):
            raise PositionError(f"q coordinate must be a dyadic rational in (0,1), got {c}")
        return
    if not isinstance(c, int) or isinstance(c, bool):
        raise PositionError(f"integer coordinate required, got {c!r}")
    if isinstance(prim, Finite) and not 1 <= c <= prim.k:
        raise PositionError(f"coordinate {c} outside 1..{prim.k}")
    if isinstance(prim, OmegaPlus) and c < 0:
        raise PositionError(f"w coordinate must be >= 0, got {c}")
    if isinstance(prim, OmegaMinus) and c > -1:
        raise PositionError(f"w* coordinate must be <= -1, got {c}")


# ---------------------------------------------------------------------------
# text format

_NAMES = {OmegaPlus: "w", OmegaMinus: "w*", Zeta: "z", Eta: "q"}


def format_order(w):
    parts = []
    for prim, weight in zip(w.segments, w.weights):
        if isinstance(weight, Explicit):
            values = weight.values
        elif isinstance(weight, Periodic):
            values = weight.pattern
        else:
            values = (weight.n,)
        head = str(prim.k) if isinstance(prim, Finite) else _NAMES[type(prim)]
        parts.append(f"{head}[{','.join(map(str, values))}]")
    return " + ".join(parts)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise OrderSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos]), start

    def weight(self):
        self.expect("[")
        values = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            values.append(self.integer())
        self.expect("]")
        for v, at in values:
            if v < 2:
                raise MultiplicityError(
                    f"multiplicity {v} below 2 at position {at}")
        return [v for v, _ in values]

    def primitive(self):
        ch = self.peek()
        if ch.isdigit():
            k, at = self.integer()
            if k < 1:
                self.error("finite segment length must be >= 1", at)
            values = self.weight()
            if len(values) == 1:
                return Finite(k), Explicit(tuple(values) * k)
            if len(values) != k:
                raise MultiplicityError(
                    f"finite segment {k} given {len(values)} values at position {at}")
            return Finite(k), Explicit(tuple(values))
        if ch in ("w", "z", "q"):
            self.pos += 1
            prim = {"w": OmegaPlus(), "z": Zeta(), "q": Eta()}[ch]
            if ch == "w" and self.peek() == "*":
                self.pos += 1
                prim = OmegaMinus()
            at = self.pos
            values = self.weight()
            if len(values) == 1:
                return prim, Constant(values[0])
            if isinstance(prim, Eta):
                raise MultiplicityError(
                    f"a q segment only accepts a constant multiplicity (position {at})")
            return prim, Periodic(tuple(values))
        self.error("expected a primitive (INT, w, w*, z or q)")

    def parse(self):
        prims, weights = [], []
        while True:
            p, wt = self.primitive()
            prims.append(p)
            weights.append(wt)
            ch = self.peek()
            if ch == "":
                break
            if ch != "+":
                self.error("expected '+' or end of input")
            self.pos += 1
        return WeightedOrder(make_sum(prims), tuple(weights))


def parse_order(text):
    """Parse the ASCII order grammar, e.g. ``"w*[2] + 3[2,3,2] + q[2]"``."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# rewriting

def _rewrite_pair(a, b):
    if isinstance(a, Finite) and isinstance(b, Finite):
        return Finite(a.k + b.k)
    if isinstance(a, Finite) and isinstance(b, OmegaPlus):
        return OmegaPlus()
    if isinstance(a, OmegaMinus) and isinstance(b, Finite):
        return OmegaMinus()
    if isinstance(a, OmegaMinus) and isinstance(b, OmegaPlus):
        return Zeta()
    if isinstance(a, Eta) and isinstance(b, Eta):
        return Eta()
    return None


def normalize(expr):
    """Apply the order-isomorphism rewrites until nothing changes.

    Rules: finite+finite, finite+w -> w, w*+finite -> w*, w*+w -> z,
    q+q -> q and q+1+q -> q.  Only a single point may be absorbed between
    two dense segments; two adjacent points would break density.
    """
    terms = list(segments(expr))
    changed = True
    while changed:
        changed = False
        for i in range(len(terms) - 1):
            merged = _rewrite_pair(terms[i], terms[i + 1])
            if merged is not None:
                terms[i:i + 2] = [merged]
                changed = True
                break
            if (i + 2 < len(terms) and isinstance(terms[i], Eta)
                    and terms[i + 1] == Finite(1) and isinstance(terms[i + 2], Eta)):
                terms[i:i + 3] = [Eta()]
                changed = True
                break
    return make_sum(terms)


def has_first(expr):
    return isinstance(segments(expr)[0], WELL_ORDERED)


def is_well_ordered(expr):
    return all(isinstance(t, WELL_ORDERED) for t in segments(expr))


def wois_boundary(expr):
    """Number of leading segments forming the maximal well-ordered initial segment."""
    count = 0
    for t in segments(expr):
        if not isinstance(t, WELL_ORDERED):
            break
        count += 1
    return count


def wois_split(expr):
    """Split into (maximal well-ordered initial segment, remainder).

    Either side is ``None`` when empty.  The first segment that is not
    finite or ``w`` has no least element, so no part of it can extend a
    well-ordered initial segment.
    """
    terms = segments(expr)
    b = wois_boundary(expr)
    return make_sum(terms[:b]), make_sum(terms[b:])


def wois_split_weighted(w):
    """``wois_split`` on a weighted order; sides are WeightedOrders or ``None``."""
    b = wois_boundary(w.expr)
    segs = w.segments

    def side(lo, hi):
        if lo == hi:
            return None
        factors = None if w.factors is None else w.factors[lo:hi]
        return WeightedOrder(make_sum(segs[lo:hi]), w.weights[lo:hi], factors)

    return side(0, b), side(b, len(segs))


# ---------------------------------------------------------------------------
# maximal intervals

def _primitive_period(seq):
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and all(seq[i] == seq[i % d] for i in range(n)):
            return tuple(seq[:d])
    return tuple(seq)


@dataclass(frozen=True)
class FiniteInterval:
    values: tuple

    @property
    def length(self):
        return len(self.values)

    def to_json(self):
        return {"tag": "FiniteInterval", "length": self.length, "values": list(self.values)}


@dataclass(frozen=True)
class ZPlusInterval:
    """Stream ``prefix`` followed by ``period`` repeated forever."""

    prefix: tuple
    period: tuple

    def canonical(self):
        prefix, period = tuple(self.prefix), _primitive_period(self.period)
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1:] + period[:-1]
        return ZPlusInterval(prefix, period)

    def value(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def to_json(self):
        return {"tag": "ZPlusInterval", "prefix": list(self.prefix), "period": list(self.period)}


@dataclass(frozen=True)
class ZMinusInterval:
    """``period`` repeated leftwards forever, then ``suffix`` at the right end."""

    period: tuple
    suffix: tuple

    def canonical(self):
        period, suffix = _primitive_period(self.period), tuple(self.suffix)
        while suffix and suffix[0] == period[0]:
            suffix = suffix[1:]
            period = period[1:] + period[:1]
        return ZMinusInterval(period, suffix)

    def value(self, d):
        """Value at distance ``d >= 1`` from the right end."""
        m = len(self.suffix)
        if d <= m:
            return self.suffix[m - d]
        return self.period[(-(d - m)) % len(self.period)]

    def to_json(self):
        return {"tag": "ZMinusInterval", "period": list(self.period), "suffix": list(self.suffix)}


@dataclass(frozen=True)
class ZInterval:
    """``left`` repeated leftwards, ``middle``, then ``right`` repeated rightwards."""

    left: tuple
    middle: tuple
    right: tuple

    def value(self, i):
        m = len(self.middle)
        if 0 <= i < m:
            return self.middle[i]
        if i >= m:
            return self.right[(i - m) % len(self.right)]
        return self.left[i % len(self.left)]

    def canonical(self):
        """Representative of the sequence up to translation."""
        left, right = _primitive_period(self.left), _primitive_period(self.right)
        middle = tuple(self.middle)
        while middle and middle[-1] == right[-1]:
            middle = middle[:-1]
            right = right[-1:] + right[:-1]
        while middle and middle[0] == left[0]:
            middle = middle[1:]
            left = left[1:] + left[:1]
        if not middle:
            if left == right:
                best = min(right[i:] + right[:i] for i in range(len(right)))
                return ZInterval(best, (), best)
            for _ in range(len(left) * len(right)):
                if left[-1] != right[-1]:
                    break
                left = left[-1:] + left[:-1]
                right = right[-1:] + right[:-1]
        return ZInterval(left, middle, right)

    @property
    def fully_periodic(self):
        c = self.canonical()
        return not c.middle and c.left == c.right

    def to_json(self):
        return {"tag": "ZInterval", "left": list(self.left),
                "middle": list(self.middle), "right": list(self.right)}


@dataclass(frozen=True)
class DenseSingletonField:
    n: int

    def to_json(self):
        return {"tag": "DenseSingletonField", "n": self.n}


IntervalTag = Union[FiniteInterval, ZPlusInterval, ZMinusInterval, ZInterval, DenseSingletonField]


def _initial_interval(prim, weight):
    if isinstance(prim, Finite):
        return FiniteInterval(weight.values)
    if isinstance(prim, Eta):
        return DenseSingletonField(weight.n)
    pattern = weight.pattern if isinstance(weight, Periodic) else (weight.n,)
    if isinstance(prim, OmegaPlus):
        return ZPlusInterval((), pattern)
    if isinstance(prim, OmegaMinus):
        return ZMinusInterval(pattern, ())
    return ZInterval(pattern, (), pattern)


def _merge_intervals(a, b):
    if isinstance(a, FiniteInterval) and isinstance(b, FiniteInterval):
        return FiniteInterval(a.values + b.values)
    if isinstance(a, FiniteInterval) and isinstance(b, ZPlusInterval):
        return ZPlusInterval(a.values + b.prefix, b.period)
    if isinstance(a, ZMinusInterval) and isinstance(b, FiniteInterval):
        return ZMinusInterval(a.period, a.suffix + b.values)
    if isinstance(a, ZMinusInterval) and isinstance(b, ZPlusInterval):
        return ZInterval(a.period, a.suffix + b.prefix, b.period)
    if isinstance(a, DenseSingletonField) and isinstance(b, DenseSingletonField) and a.n == b.n:
        return a
    return None


def _canon(iv):
    return iv.canonical() if isinstance(iv, (ZPlusInterval, ZMinusInterval, ZInterval)) else iv


def interval_decomposition(w):
    """Maximal intervals of ``w`` in order, each with its multiplicity data.

    Merges follow the ``normalize`` rewrites; a dense segment absorbs a
    neighbouring single point only when its multiplicity matches.
    """
    items = [_initial_interval(p, wt) for p, wt in zip(w.segments, w.weights)]
    changed = True
    while changed:
        changed = False
        for i in range(len(items) - 1):
            merged = _merge_intervals(items[i], items[i + 1])
            if merged is not None:
                items[i:i + 2] = [merged]
                changed = True
                break
            if i + 2 < len(items):
                a, mid, b = items[i:i + 3]
                if (isinstance(a, DenseSingletonField) and a == b
                        and mid == FiniteInterval((a.n,))):
                    items[i:i + 3] = [a]
                    changed = True
                    break
    return [_canon(iv) for iv in items]


# ---------------------------------------------------------------------------
# classification

def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def supernatural(prefix, period):
    """Supernatural number of ``prefix`` then ``period`` repeated forever.

    Returned as ``(infinite_primes, ((p, e), ...))``.
    """
    infinite = set()
    for v in period:
        infinite.update(_factorize(v))
    finite = {}
    for v in prefix:
        for p, e in _factorize(v).items():
            if p not in infinite:
                finite[p] = finite.get(p, 0) + e
    return tuple(sorted(infinite)), tuple(sorted(finite.items()))


def _common_base(a, b):
    """True when ``a**i == b**j`` for some positive ``i``, ``j``."""
    fa, fb = _factorize(a), _factorize(b)
    if set(fa) != set(fb):
        return False
    primes = sorted(fa)
    p0 = primes[0]
    return all(fa[p] * fb[p0] == fb[p] * fa[p0] for p in primes)


def _invariant(iv):
    if isinstance(iv, FiniteInterval):
        return ("T", math.prod(iv.values))
    if isinstance(iv, ZPlusInterval):
        return ("Z+", supernatural(iv.prefix, iv.period))
    if isinstance(iv, ZMinusInterval):
        return ("Z-", supernatural(iv.suffix, iv.period))
    if isinstance(iv, ZInterval):
        return ("Z", iv.canonical())
    return ("Q", iv.n)


def _invariant_sequence(w):
    seq = [_invariant(iv) for iv in interval_decomposition(w)]
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i][0] == "Q" and seq[i] == seq[i + 1]:
                del seq[i + 1]
                changed = True
                break
            if (i + 2 < len(seq) and seq[i][0] == "Q" and seq[i] == seq[i + 2]
                    and seq[i + 1] == ("T", seq[i][1])):
                del seq[i + 1:i + 3]
                changed = True
                break
    return seq


def _same_invariant(a, b):
    if a[0] != b[0]:
        return False
    if a[0] != "Z":
        return a[1] == b[1]
    if a[1] == b[1]:
        return True
    # a fully periodic two-sided stream regroups into a constant one
    if a[1].fully_periodic and b[1].fully_periodic:
        return _common_base(math.prod(a[1].right), math.prod(b[1].right))
    return False


def check_classifiable(w):
    if w.factors is not None and any(f is not None for f in w.factors):
        raise UnsupportedOrderError("classification covers upper triangular factors only")
    for prim, weight in zip(w.segments, w.weights):
        if isinstance(prim, Eta) and not isinstance(weight, Constant):
            raise UnsupportedOrderError("q segments must carry constant multiplicities")


def classify_iso(a, b):
    """Decide whether two lexicographic products are isomorphic.

    The maximal intervals must line up one to one.  A finite interval is
    compared by the product of its sizes, ``w`` and ``w*`` intervals by
    their supernatural numbers, dense fields by their constant, and ``z``
    intervals by their multiplicity stream up to translation.
    """
    check_classifiable(a)
    check_classifiable(b)
    sa, sb = _invariant_sequence(a), _invariant_sequence(b)
    return len(sa) == len(sb) and all(_same_invariant(x, y) for x, y in zip(sa, sb))


# ---------------------------------------------------------------------------
# canonical chains

def dyadic_fill():
    """All dyadic rationals in (0,1), by denominator then numerator."""
    den = 2
    while True:
        for num in range(1, den, 2):
            yield Fraction(num, den)
        den *= 2


def eta_schedule(depth):
    """Coordinates of a dense segment at stages ``1..depth``.

    Stage 1 is ``{1/2}``.  Each later stage adds a point below the current
    minimum, which keeps the chain predecessor-fair, and the next unused
    dyadic of :func:`dyadic_fill`, which makes the chain cofinal.
    """
    current = {Fraction(1, 2)}
    fill = dyadic_fill()
    stages = [frozenset(current)]
    for _ in range(depth - 1):
        current.add(min(current) / 2)
        for x in fill:
            if x not in current:
                current.add(x)
                break
        stages.append(frozenset(current))
    return stages


def canonical_chain(w, depth):
    """Increasing list of sorted position tuples, one per stage."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    eta = None
    stages = []
    for k in range(1, depth + 1):
        pts = []
        for s, prim in enumerate(w.segments):
            if isinstance(prim, Finite):
                coords = range(1, prim.k + 1)
            elif isinstance(prim, OmegaPlus):
                coords = range(0, k)
            elif isinstance(prim, OmegaMinus):
                coords = range(-k, 0)
            elif isinstance(prim, Zeta):
                coords = range(-k, k)
            else:
                if eta is None:
                    eta = eta_schedule(depth)
                coords = sorted(eta[k - 1])
            pts.extend(Position(s, c) for c in coords)
        stages.append(tuple(sorted(pts)))
    return stages


def has_outside_predecessor(w, stage, p):
    """Whether some point of the order below ``p`` is missing from ``stage``."""
    present = set(stage)
    for s, prim in enumerate(w.segments[:p.segment]):
        if not isinstance(prim, Finite):
            return True
        if any(Position(s, c) not in present for c in range(1, prim.k + 1)):
            return True
    prim = w.segments[p.segment]
    if isinstance(prim, (OmegaMinus, Zeta, Eta)):
        return True
    if isinstance(prim, Finite):
        lo = 1
    else:
        lo = 0
    return any(Position(p.segment, c) not in present for c in range(lo, p.coordinate))


def is_predecessor_fair(w, chain):
    """Check that every point missing a predecessor gets one at the next stage."""
    for before, after in zip(chain, chain[1:]):
        new = set(after) - set(before)
        for p in before:
            if has_outside_predecessor(w, before, p) and not any(q < p for q in new):
                return False
    return True
