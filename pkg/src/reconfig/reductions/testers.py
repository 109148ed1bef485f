"""Pair testers over grid colorings and their graph emulation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..errors import ValidationError
from ..instances import WeightedMultigraph


@dataclass(frozen=True)
class PairTester:
    """Samples a position pair (0-based) and accepts iff the colors differ."""
    positions: int
    pairs: tuple  # of (i, j, p) with i < j

    def __post_init__(self):
        total = Fraction(0)
        for i, j, p in self.pairs:
            if i == j:
                raise ValidationError("tester pair with identical positions")
            if not (0 <= i < self.positions and 0 <= j < self.positions):
                raise ValidationError("tester position out of range")
            if p <= 0:
                raise ValidationError("tester probabilities must be positive")
            total += p
        if total != 1:
            raise ValidationError(f"tester probabilities sum to {total}, not 1")

    @classmethod
    def from_weights(cls, positions: int, weighted) -> "PairTester":
        """Merge (i, j, w) entries into canonical sorted pairs."""
        acc: dict = {}
        for i, j, w in weighted:
            key = (min(i, j), max(i, j))
            acc[key] = acc.get(key, Fraction(0)) + Fraction(w)
        return cls(positions, tuple((i, j, p) for (i, j), p in sorted(acc.items()) if p))

    def scaled(self, factor, offset: int = 0):
        return [(i + offset, j + offset, p * factor) for i, j, p in self.pairs]


def _pos(k, x, y):
    return (x - 1) * k + (y - 1)


def _stripe_weights(k: int, offset: int = 0):
    cells = list(product(range(1, k + 1), repeat=2))
    p = Fraction(1, k * k * (k - 1) * (k - 1))
    for (x1, y1), (x2, y2) in product(cells, cells):
        if x1 != x2 and y1 != y2:
            yield _pos(k, x1, y1) + offset, _pos(k, x2, y2) + offset, p


def build_stripe_tester(k: int) -> PairTester:
    if k < 2:
        raise ValidationError("stripe tester needs k >= 2")
    return PairTester.from_weights(k * k, _stripe_weights(k))


def _consistency_weights(k: int):
    cells = list(product(range(1, k + 1), repeat=2))
    q = Fraction(1, 2 * k**3 * (k - 1))
    off = k * k
    for (x1, y1), (x2, y2) in product(cells, cells):
        if y1 != y2:  # row test
            yield _pos(k, x1, y1), off + _pos(k, x2, y2), q
        if x1 != x2:  # column test
            yield _pos(k, x1, y1), off + _pos(k, x2, y2), q


def build_consistency_tester(k: int) -> PairTester:
    """Positions 0..k²-1 hold f, k²..2k²-1 hold g."""
    if k < 2:
        raise ValidationError("consistency tester needs k >= 2")
    return PairTester.from_weights(2 * k * k, _consistency_weights(k))


def edge_tester_z(rho) -> Fraction:
    rho = Fraction(rho)
    return 4 / rho + 1


def build_edge_tester(k: int, rho=Fraction(1)) -> PairTester:
    rho = Fraction(rho)
    if k < 2:
        raise ValidationError("edge tester needs k >= 2")
    if not 0 < rho <= 1:
        raise ValidationError("rho must lie in (0, 1]")
    Z = edge_tester_z(rho)
    ws = 2 / (rho * Z)
    wc = 1 / Z
    off = k * k

    def gen():
        for i, j, p in _stripe_weights(k):
            yield i, j, p * ws
        for i, j, p in _stripe_weights(k, off):
            yield i, j, p * ws
        for i, j, p in _consistency_weights(k):
            yield i, j, p * wc

    return PairTester.from_weights(2 * k * k, gen())


def tester_to_graph(t: PairTester) -> WeightedMultigraph:
    return WeightedMultigraph(t.positions, tuple((i + 1, j + 1, p) for i, j, p in t.pairs))
