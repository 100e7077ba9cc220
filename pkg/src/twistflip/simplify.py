"""Reducing a multicurve to total weight at most ``2 * zeta``.

Two engines are provided. :func:`simplify_flips_only` applies the best
reducing flip until none is left. :func:`simplify_accelerated` also looks
for long parallel runs of the curve through the heaviest edge. From such a
run it builds a short loop and either twists along it or, when the run
closes up on itself, removes those parallel components outright.

Both engines keep a :class:`MoveLog` whose replay reproduces the final state
exactly.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction

import gmpy2

from .coords import MultiCurve, flip_value
from .errors import InadmissibleResult, LemmaViolation, NullHomotopic, StandardizationFailed
from .tracer import Chain, block_partition, max_edge
from .twist import DisjointComponent, build_twist_curve, select_power, standardize, twist_length, twist_power

log = logging.getLogger(__name__)

__all__ = [
    "ExtractMove",
    "FlipMove",
    "MoveLog",
    "TheoremConstants",
    "TwistLogMove",
    "best_flip",
    "certified_thresholds",
    "order_blocks_by_insulation",
    "SimplifyResult",
    "apply_move",
    "replay",
    "simplify_accelerated",
    "simplify_flips_only",
    "theorem_constants",
]


# -- moves -------------------------------------------------------------------


@dataclass(frozen=True)
class FlipMove:
    edge: int
    kind = "flip"

    @property
    def length(self):
        return 1

    def to_json(self):
        return {"move": "flip", "edge": self.edge}


@dataclass(frozen=True)
class TwistLogMove:
    """A twist power as recorded in the log.

    ``power`` follows the convention ``T' = T_delta^power (T)``. The curve
    coordinates on the fixed triangulation change by the inverse power.
    """

    delta: tuple
    power: int
    kind = "twist"

    @property
    def length(self):
        return twist_length(sum(self.delta), self.power)

    @property
    def curve_power(self):
        return -self.power

    def to_json(self):
        return {"move": "twist", "delta": list(self.delta), "power": str(self.power)}


@dataclass(frozen=True)
class ExtractMove:
    delta: tuple
    multiplicity: int
    kind = "extract"

    @property
    def length(self):
        return 1

    def to_json(self):
        return {"move": "extract", "delta": list(self.delta), "multiplicity": str(self.multiplicity)}


@dataclass
class MoveLog:
    initial_total: int
    moves: list = field(default_factory=list)
    totals: list = field(default_factory=list)
    rounds: list = field(default_factory=list)  # (total before, total after) per outer iteration
    stalled: bool = False

    def append(self, move, total):
        self.moves.append(move)
        self.totals.append(total)

    @property
    def final_total(self):
        return self.totals[-1] if self.totals else self.initial_total

    def count(self, kind):
        return sum(1 for m in self.moves if m.kind == kind)

    @property
    def metric_length(self):
        return sum(m.length for m in self.moves)

    def summary(self):
        return {
            "summary": True,
            "initial_total": str(self.initial_total),
            "final_total": str(self.final_total),
            "flips": self.count("flip"),
            "twists": self.count("twist"),
            "extracts": self.count("extract"),
            "metric_length": self.metric_length,
            "stalled": self.stalled,
        }

    def to_jsonl(self):
        lines = []
        for move, total in zip(self.moves, self.totals):
            record = move.to_json()
            record["length"] = move.length
            record["total"] = str(total)
            lines.append(json.dumps(record))
        lines.append(json.dumps(self.summary()))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text):
        moves, totals, summary = [], [], None
        for line in text.splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            if record.get("summary"):
                summary = record
                continue
            kind = record["move"]
            if kind == "flip":
                moves.append(FlipMove(int(record["edge"])))
            elif kind == "twist":
                moves.append(TwistLogMove(tuple(record["delta"]), int(record["power"])))
            elif kind == "extract":
                moves.append(ExtractMove(tuple(record["delta"]), int(record["multiplicity"])))
            else:
                raise ValueError(f"unknown move {kind!r}")
            totals.append(int(record["total"]))
        initial = int(summary["initial_total"]) if summary else (totals[0] if totals else 0)
        out = cls(initial, moves, totals)
        if summary:
            out.stalled = bool(summary.get("stalled", False))
        return out


def apply_move(T, weights, move):
    """One logged move applied to ``(T, weights)``."""
    w = list(weights)
    if move.kind == "flip":
        w[move.edge] = flip_value(T, w, move.edge)
        return T.flip(move.edge), w
    if move.kind == "twist":
        return T, list(twist_power(T, w, move.delta, move.curve_power).weights)
    if move.kind == "extract":
        return T, [x - move.multiplicity * d for x, d in zip(w, move.delta)]
    raise ValueError(move)


def replay(T, gamma, moves):
    """Apply ``moves`` to the initial state; returns ``(T', gamma')``."""
    w = list(gamma.weights if hasattr(gamma, "weights") else gamma)
    for move in getattr(moves, "moves", moves):
        T, w = apply_move(T, w, move)
    return T, MultiCurve.validated(T, w)


# -- flips -------------------------------------------------------------------


def best_flip(T, gamma):
    """``(edge, reduction)`` for the flip that lowers the total most, or None."""
    w = gamma.weights if hasattr(gamma, "weights") else gamma
    best = None
    for e in range(T.zeta):
        if not T.is_flippable(e):
            continue
        reduction = w[e] - flip_value(T, w, e)
        if reduction > 0 and (best is None or reduction > best[1]):
            best = (e, reduction)
    return best


@dataclass
class SimplifyResult:
    initial_triangulation: object
    initial_weights: tuple
    triangulation: object
    curve: MultiCurve
    log: MoveLog

    def __iter__(self):
        return iter((self.triangulation, self.curve, self.log))


def simplify_flips_only(T, gamma, max_moves=None):
    """Greedy flips until simple, no flip reduces, or ``max_moves`` is reached.

    Stopping above ``2 * zeta`` sets ``log.stalled``: this happens for
    multicurves with parallel components, whose weight flips cannot remove.
    """
    w = list(gamma.weights if hasattr(gamma, "weights") else gamma)
    T0, w0 = T, tuple(w)
    total = sum(w)
    mlog = MoveLog(total)
    limit = 2 * T.zeta
    while total > limit:
        if max_moves is not None and len(mlog.moves) >= max_moves:
            mlog.stalled = True
            break
        bf = best_flip(T, w)
        if bf is None:
            mlog.stalled = True
            break
        e, reduction = bf
        w[e] -= reduction
        T = T.flip(e)
        total -= reduction
        mlog.append(FlipMove(e), total)
    if mlog.moves:
        mlog.rounds.append((mlog.initial_total, total))
    return SimplifyResult(T0, w0, T, MultiCurve(T, w), mlog)


# -- the accelerated engine --------------------------------------------------


def _chain_of(block, x):
    return Chain(tuple(block.point(i, x) for i in range(len(block.types))))


def twist_candidates(T, w, limit=4):
    """Loops built from the widest self-returning blocks at the heaviest edge.

    Yields ``DisjointComponent`` or ``TwistCurve`` objects, best first, over
    both coorientations.
    """
    e_max, _ = max_edge(w)
    for side in (1, -1):
        part = block_partition(T, w, e_max, side)
        returning = [b for b in part.blocks if b.first_return is not None and b.first_return[0] == 0]
        returning.sort(key=lambda b: (-b.width, b.lo))
        for block in returning[:limit]:
            j = block.first_return[1]
            try:
                yield build_twist_curve(T, w, _chain_of(block, block.lo), j, block.width)
            except (ValueError, NullHomotopic) as exc:
                log.debug("block [%s, %s) rejected: %s", block.lo, block.hi, exc)


def _reduce_once(T, w, total):
    """An extract or twist that lowers the total, or None."""
    for cand in twist_candidates(T, w):
        delta = cand.delta
        if isinstance(cand, DisjointComponent):
            new = [x - cand.multiplicity * d for x, d in zip(w, delta.weights)]
            try:
                MultiCurve.validated(T, new)
            except InadmissibleResult:
                continue
            except ValueError:
                continue
            return ExtractMove(delta.weights, cand.multiplicity), new
        try:
            std = standardize(T, delta)
        except StandardizationFailed as exc:
            log.debug("twist curve %s not standardisable: %s", delta.weights, exc)
            continue
        k = select_power(T, w, delta, bound=total, standardization=std)
        if k:
            new = list(twist_power(T, w, delta, k, standardization=std).weights)
            return TwistLogMove(delta.weights, -k), new
    return None


def simplify_accelerated(T, gamma, ratio=None, max_moves=None):
    """Flips while they make proportional progress, otherwise twist or extract.

    ``ratio`` is the flip progress threshold as a fraction of the current
    total (default ``1 / (64 * zeta)``).
    """
    w = list(gamma.weights if hasattr(gamma, "weights") else gamma)
    T0, w0 = T, tuple(w)
    ratio = Fraction(1, 64 * T.zeta) if ratio is None else Fraction(ratio)
    total = sum(w)
    mlog = MoveLog(total)
    limit = 2 * T.zeta
    round_start = total
    while total > limit:
        if max_moves is not None and len(mlog.moves) >= max_moves:
            mlog.stalled = True
            break
        bf = best_flip(T, w)
        if bf is not None and bf[1] >= ratio * total:
            e, reduction = bf
            w[e] -= reduction
            T = T.flip(e)
            total -= reduction
            mlog.append(FlipMove(e), total)
            continue
        outcome = _reduce_once(T, w, total)
        if outcome is not None:
            move, w = outcome
            total = sum(w)
            mlog.append(move, total)
        elif bf is not None:
            e, reduction = bf
            w[e] -= reduction
            T = T.flip(e)
            total -= reduction
            mlog.append(FlipMove(e), total)
        else:
            raise LemmaViolation(f"no reducing move at total {total} > {limit}")
        mlog.rounds.append((round_start, total))
        round_start = total
    if mlog.moves and (not mlog.rounds or mlog.rounds[-1][1] != total):
        mlog.rounds.append((round_start, total))
    return SimplifyResult(T0, w0, T, MultiCurve(T, w), mlog)


# -- exact constants ---------------------------------------------------------


@dataclass(frozen=True)
class TheoremConstants:
    """Exact constants of the worst-case progress guarantee.

    ``m`` is the per-move progress target ``total / D`` and ``A`` the
    insulation offset ``(2E + m - 2) / 4``. Both are exact rationals
    (``gmpy2.mpq``); ``D`` has millions of digits once ``zeta = 9``.
    """

    zeta: int
    B: int
    C: int
    D: int
    total: int = 0
    E: int = 0

    @cached_property
    def m(self):
        return gmpy2.mpq(self.total, self.D)

    @cached_property
    def A(self):
        return (2 * self.E + self.m - 2) / 4

    def block_bound(self, n):
        """``B_n = 40 m B (10B + 1)^(n-1)`` for ``1 <= n <= C``."""
        if not 1 <= n <= self.C:
            raise ValueError(f"block index {n} outside 1..{self.C}")
        return 40 * self.m * self.B * gmpy2.mpz(10 * self.B + 1) ** (n - 1)

    def exceeds_block_bound(self, n, width):
        """``width > B_n`` without forming ``B_n``.

        Dividing through by ``40 B (10B + 1)^(n-1)`` turns the test into
        ``2 zeta width (10B + 1)^(C - n + 1) > total``.
        """
        if not 1 <= n <= self.C:
            raise ValueError(f"block index {n} outside 1..{self.C}")
        if width <= 0:
            return False
        e = self.C - n + 1
        base = 10 * self.B + 1
        if e * (base.bit_length() - 1) >= self.total.bit_length():
            return True
        return 2 * self.zeta * width * base**e > self.total

    def first_return_threshold(self, k):
        """Block width above which a ``k``-insulated chain returns to e_max first."""
        A, B = self.A, self.B
        return self.E - 2 * (A - A * B + B * k)

    def first_return_forced(self, k, width):
        """``width > first_return_threshold(k)`` in integer arithmetic.

        The threshold is ``I + (B - 1) m / 2`` with ``I`` an integer.
        """
        B = self.B
        excess = width - (self.E - 2 * B * k + (B - 1) * (self.E - 1))
        if excess <= 0:
            return False
        return excess * 2 * gmpy2.mpz(self.D) > (B - 1) * self.total

    def guaranteed(self):
        return self.total > self.D


def theorem_constants(zeta, total=0, E=0):
    B = 5 ** (2 * zeta)
    C = 2 ** (2 * zeta)
    D = int(80 * zeta * B * gmpy2.mpz(10 * B + 1) ** C)
    return TheoremConstants(zeta, B, C, D, int(total), int(E))


def order_blocks_by_insulation(partition):
    """Blocks in the order of their most insulated points (leftmost on ties)."""
    return sorted(partition.blocks, key=lambda b: (-b.insulation, b.lo))


def certified_thresholds(T, gamma):
    """Constants plus the per-block predicates they induce, for audit."""
    w = gamma.weights if hasattr(gamma, "weights") else tuple(gamma)
    total = sum(w)
    e_max, E = max_edge(w)
    consts = theorem_constants(T.zeta, total, E)
    report = {"constants": consts, "theorem_applies": consts.guaranteed(), "blocks": []}
    if E:
        part = block_partition(T, w, e_max, 1)
        for n, block in enumerate(order_blocks_by_insulation(part), 1):
            report["blocks"].append(
                {
                    "n": n,
                    "interval": (block.lo, block.hi),
                    "width": block.width,
                    "insulation": block.insulation,
                    "over_bound": consts.exceeds_block_bound(n, block.width),
                    "first_return_forced": consts.first_return_forced(block.insulation, block.width),
                    "first_return": block.first_return,
                }
            )
    return report
