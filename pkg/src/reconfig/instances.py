"""Graphs, CNF formulas, configurations and reconfiguration sequences.

Vertices and variables are 1-indexed (DIMACS style).  Weights are stored as
``fractions.Fraction``; nothing here ever holds a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import ParseError, ValidationError

Text = Union[str, bytes]


def _as_fraction(w) -> Fraction:
    if isinstance(w, float):
        raise TypeError("weights must be exact (int, str or Fraction), not float")
    return Fraction(w)


@dataclass(frozen=True)
class WeightedMultigraph:
    n: int
    edges: tuple  # of (u, v, Fraction)

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("vertex count must be nonnegative")
        norm = []
        for idx, e in enumerate(self.edges):
            u, v, w = e
            w = _as_fraction(w)
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValidationError(f"edge {idx + 1}: endpoint out of range")
            if u == v:
                raise ValidationError(f"edge {idx + 1}: self-loop at vertex {u}")
            if w < 0:
                raise ValidationError(f"edge {idx + 1}: negative weight")
            norm.append((int(u), int(v), w))
        object.__setattr__(self, "edges", tuple(norm))
        if norm and self.total_weight == 0:
            raise ValidationError("total edge weight must be positive")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "WeightedMultigraph":
        """Build from (u, v) or (u, v, w) tuples; missing weights default to 1."""
        out = []
        for e in edges:
            if len(e) == 2:
                out.append((e[0], e[1], Fraction(1)))
            else:
                out.append(tuple(e))
        return cls(n, tuple(out))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, _, w in self.edges), Fraction(0))

    def is_simple(self) -> bool:
        """Unit weights and no parallel edges."""
        seen = set()
        for u, v, w in self.edges:
            key = (min(u, v), max(u, v))
            if w != 1 or key in seen:
                return False
            seen.add(key)
        return True

    def degrees(self) -> list[int]:
        """Edge-count degree of each vertex (index 0 unused)."""
        deg = [0] * (self.n + 1)
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def weighted_degrees(self) -> list[Fraction]:
        deg = [Fraction(0)] * (self.n + 1)
        for u, v, w in self.edges:
            deg[u] += w
            deg[v] += w
        return deg

    def integer_weights(self) -> tuple[list[int], int]:
        """Scale weights to integers: returns (int weights, common denominator)."""
        L = 1
        for _, _, w in self.edges:
            L = L * w.denominator // math.gcd(L, w.denominator)
        return [int(w * L) for _, _, w in self.edges], L

    def unit_multiplicity(self) -> list[tuple[int, int]]:
        """Expand weights over a common denominator into repeated unit edges."""
        ints, _ = self.integer_weights()
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        g = g or 1
        out = []
        for (u, v, _), c in zip(self.edges, ints):
            out.extend([(u, v)] * (c // g))
        return out

    def edge_multiset(self) -> dict:
        acc: dict = {}
        for u, v, w in self.edges:
            key = (min(u, v), max(u, v))
            acc[key] = acc.get(key, Fraction(0)) + w
        return acc


@dataclass(frozen=True)
class Coloring:
    k: int
    colors: tuple

    def __post_init__(self):
        cols = tuple(int(c) for c in self.colors)
        if self.k < 1:
            raise ValidationError("color count must be positive")
        for i, c in enumerate(cols):
            if not 1 <= c <= self.k:
                raise ValidationError(f"vertex {i + 1}: color {c} outside 1..{self.k}")
        object.__setattr__(self, "colors", cols)

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        """Color of vertex v (1-indexed)."""
        return self.colors[v - 1]

    def recolor(self, v: int, c: int) -> "Coloring":
        cols = list(self.colors)
        cols[v - 1] = c
        return Coloring(self.k, tuple(cols))

    def to_line(self) -> str:
        return " ".join(str(c) for c in self.colors)


@dataclass(frozen=True)
class Assignment:
    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValidationError(f"variable {i + 1}: bit {b} not in {{0,1}}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, s: str) -> "Assignment":
        return cls(tuple(int(ch) for ch in s.strip()))

    def __len__(self):
        return len(self.bits)

    def __getitem__(self, x: int) -> int:
        """Value of variable x (1-indexed)."""
        return self.bits[x - 1]

    def flip(self, x: int) -> "Assignment":
        bits = list(self.bits)
        bits[x - 1] ^= 1
        return Assignment(tuple(bits))

    def to_line(self) -> str:
        return "".join(str(b) for b in self.bits)


def literal_true(lit: int, a: Assignment) -> bool:
    return a.bits[abs(lit) - 1] == (1 if lit > 0 else 0)


@dataclass(frozen=True)
class CnfFormula:
    n: int
    k: int  # 0 means mixed width
    clauses: tuple

    def __post_init__(self):
        cl = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for j, c in enumerate(cl):
            if not c:
                raise ValidationError(f"clause {j + 1} is empty")
            seen = set()
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise ValidationError(f"clause {j + 1}: literal {lit} out of range")
                if abs(lit) in seen:
                    raise ValidationError(f"clause {j + 1}: variable {abs(lit)} repeated")
                seen.add(abs(lit))
            if self.k > 0 and len(c) != self.k:
                raise ValidationError(f"clause {j + 1} has width {len(c)}, expected {self.k}")
        object.__setattr__(self, "clauses", cl)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def clause_satisfied(self, j: int, a: Assignment) -> bool:
        return any(literal_true(l, a) for l in self.clauses[j])

    def first_violated(self, a: Assignment) -> int | None:
        """0-based index of the first violated clause, or None."""
        for j in range(len(self.clauses)):
            if not self.clause_satisfied(j, a):
                return j
        return None

    def num_satisfied(self, a: Assignment) -> int:
        if len(a) != self.n:
            raise ValidationError(f"assignment has {len(a)} bits, formula has {self.n} variables")
        return sum(1 for j in range(len(self.clauses)) if self.clause_satisfied(j, a))


@dataclass(frozen=True)
class CutReconfigInstance:
    graph: WeightedMultigraph
    k: int
    start: Coloring
    end: Coloring

    def __post_init__(self):
        for name, f in (("start", self.start), ("end", self.end)):
            if f.k != self.k:
                raise ValidationError(f"{name} coloring uses k={f.k}, instance k={self.k}")
            if len(f) != self.graph.n:
                raise ValidationError(f"{name} coloring has length {len(f)}, graph has {self.graph.n} vertices")


@dataclass(frozen=True)
class SatReconfigInstance:
    formula: CnfFormula
    start: Assignment
    end: Assignment

    def __post_init__(self):
        for name, a in (("start", self.start), ("end", self.end)):
            if len(a) != self.formula.n:
                raise ValidationError(f"{name} has {len(a)} bits, formula has {self.formula.n} variables")

    def check_endpoints(self) -> None:
        """Raise ValidationError if an endpoint violates some clause."""
        for name, a in (("start", self.start), ("end", self.end)):
            j = self.formula.first_violated(a)
            if j is not None:
                raise ValidationError(f"{name} violates clause {j + 1}")


Config = Union[Coloring, Assignment]


def _hamming(a: Sequence, b: Sequence) -> int:
    return sum(1 for x, y in zip(a, b) if x != y)


@dataclass(frozen=True)
class ReconfigSequence:
    kind: str  # "cut" or "sat"
    steps: tuple

    def __post_init__(self):
        if self.kind not in ("cut", "sat"):
            raise ValidationError(f"unknown sequence kind {self.kind!r}")
        steps = tuple(self.steps)
        if not steps:
            raise ValidationError("a reconfiguration sequence must be nonempty")
        want = Coloring if self.kind == "cut" else Assignment
        for i, s in enumerate(steps):
            if not isinstance(s, want):
                raise ValidationError(f"step {i}: expected {want.__name__}")
        raw = [s.colors if self.kind == "cut" else s.bits for s in steps]
        for i in range(1, len(raw)):
            if len(raw[i]) != len(raw[0]):
                raise ValidationError(f"step {i}: length differs from step 0")
            if _hamming(raw[i - 1], raw[i]) > 1:
                raise ValidationError(f"step {i}: differs from step {i - 1} in more than one position")
        object.__setattr__(self, "steps", steps)

    def __len__(self):
        return len(self.steps)

    def validate_for(self, inst) -> None:
        """Check kind, sizes and endpoints against an instance."""
        if isinstance(inst, CutReconfigInstance):
            if self.kind != "cut":
                raise ValidationError("sequence kind is not cut")
            for i, s in enumerate(self.steps):
                if s.k != inst.k or len(s) != inst.graph.n:
                    raise ValidationError(f"step {i}: incompatible with instance")
        elif isinstance(inst, SatReconfigInstance):
            if self.kind != "sat":
                raise ValidationError("sequence kind is not sat")
            for i, s in enumerate(self.steps):
                if len(s) != inst.formula.n:
                    raise ValidationError(f"step {i}: incompatible with instance")
        else:
            raise TypeError("unknown instance type")
        if self.steps[0] != inst.start:
            raise ValidationError("step 0: does not equal the instance start")
        if self.steps[-1] != inst.end:
            raise ValidationError(f"step {len(self.steps) - 1}: does not equal the instance end")

    def concat(self, other: "ReconfigSequence") -> "ReconfigSequence":
        """Join two sequences sharing the boundary configuration."""
        if self.steps[-1] != other.steps[0]:
            raise ValidationError("sequences do not share a boundary configuration")
        return ReconfigSequence(self.kind, self.steps + other.steps[1:])

    def reversed(self) -> "ReconfigSequence":
        return ReconfigSequence(self.kind, tuple(reversed(self.steps)))


class SequenceBuilder:
    """Accumulate single-site moves, dropping no-op steps."""

    def __init__(self, first: Config):
        self.kind = "cut" if isinstance(first, Coloring) else "sat"
        self._cur = list(first.colors if self.kind == "cut" else first.bits)
        self._k = first.k if self.kind == "cut" else None
        self._steps = [first]

    def set(self, site: int, value: int) -> None:
        if self._cur[site - 1] == value:
            return
        self._cur[site - 1] = value
        if self.kind == "cut":
            self._steps.append(Coloring(self._k, tuple(self._cur)))
        else:
            self._steps.append(Assignment(tuple(self._cur)))

    @property
    def current(self) -> Config:
        return self._steps[-1]

    def build(self) -> ReconfigSequence:
        return ReconfigSequence(self.kind, tuple(self._steps))


# ---------------------------------------------------------------- file formats

def _lines(text: Text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad {what} {tok!r}", no) from None


def parse_cut_instance(text: Text) -> CutReconfigInstance:
    n = k = None
    edges = []
    start = end = None
    for no, line in _lines(text):
        tok = line.split()
        tag = tok[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate header", no)
            if len(tok) != 4 or tok[1] != "cutreconf":
                raise ParseError("malformed header, expected 'p cutreconf <n> <k>'", no)
            n, k = _int(tok[2], no, "vertex count"), _int(tok[3], no, "color count")
            if n < 1 or k < 1:
                raise ParseError("vertex and color counts must be positive", no)
            continue
        if n is None:
            raise ParseError("content before header", no)
        if tag == "e":
            if len(tok) != 4:
                raise ParseError("edge line must be 'e <u> <v> <num>/<den>'", no)
            u, v = _int(tok[1], no, "vertex"), _int(tok[2], no, "vertex")
            try:
                w = Fraction(tok[3])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad weight {tok[3]!r}", no) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", no)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", no)
            if w < 0:
                raise ParseError("negative weight", no)
            edges.append((u, v, w))
        elif tag in ("s", "t"):
            cols = [_int(t, no, "color") for t in tok[1:]]
            if len(cols) != n:
                raise ParseError(f"expected {n} colors, got {len(cols)}", no)
            for c in cols:
                if not 1 <= c <= k:
                    raise ParseError(f"color {c} out of range 1..{k}", no)
            if tag == "s":
                if start is not None:
                    raise ParseError("duplicate start line", no)
                start = Coloring(k, tuple(cols))
            else:
                if end is not None:
                    raise ParseError("duplicate end line", no)
                end = Coloring(k, tuple(cols))
        else:
            raise ParseError(f"unknown line tag {tag!r}", no)
    if n is None:
        raise ParseError("missing header")
    if start is None or end is None:
        raise ParseError("missing start ('s') or end ('t') line")
    try:
        graph = WeightedMultigraph(n, tuple(edges))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None
    return CutReconfigInstance(graph, k, start, end)


def serialize_cut_instance(inst: CutReconfigInstance) -> str:
    out = [f"p cutreconf {inst.graph.n} {inst.k}"]
    for u, v, w in inst.graph.edges:
        out.append(f"e {u} {v} {w.numerator}/{w.denominator}")
    out.append("s " + inst.start.to_line())
    out.append("t " + inst.end.to_line())
    return "\n".join(out) + "\n"


def _parse_bits(tok: list, n: int, no: int) -> Assignment:
    s = "".join(tok)
    if len(s) != n or any(ch not in "01" for ch in s):
        raise ParseError(f"expected a bitstring of length {n}", no)
    return Assignment.from_string(s)


def parse_sat_instance(text: Text) -> SatReconfigInstance:
    n = m = k = None
    clauses = []
    start = end = None
    for no, line in _lines(text):
        tok = line.split()
        tag = tok[0]
        if tag == "c" and n is None:
            continue
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate header", no)
            if len(tok) != 5 or tok[1] != "satreconf":
                raise ParseError("malformed header, expected 'p satreconf <n> <m> <k>'", no)
            n, m, k = (_int(t, no, "header field") for t in tok[2:])
            if n < 1 or m < 0 or k < 0:
                raise ParseError("header fields out of range", no)
            continue
        if n is None:
            raise ParseError("content before header", no)
        if tag in ("s", "t"):
            a = _parse_bits(tok[1:], n, no)
            if tag == "s":
                start = a
            else:
                end = a
            continue
        lits = [_int(t, no, "literal") for t in tok]
        if lits[-1] != 0 or 0 in lits[:-1]:
            raise ParseError("clause line must end with a single 0", no)
        lits = lits[:-1]
        if not lits:
            raise ParseError("empty clause", no)
        seen = set()
        for lit in lits:
            if abs(lit) > n:
                raise ParseError(f"literal {lit} out of range", no)
            if abs(lit) in seen:
                raise ParseError(f"variable {abs(lit)} repeated in clause", no)
            seen.add(abs(lit))
        if k > 0 and len(lits) != k:
            raise ParseError(f"clause has width {len(lits)}, expected {k}", no)
        clauses.append(tuple(lits))
    if n is None:
        raise ParseError("missing header")
    if len(clauses) != m:
        raise ParseError(f"header announces {m} clauses, found {len(clauses)}")
    if start is None or end is None:
        raise ParseError("missing start ('s') or end ('t') line")
    inst = SatReconfigInstance(CnfFormula(n, k, tuple(clauses)), start, end)
    try:
        inst.check_endpoints()
    except ValidationError as exc:
        raise ParseError(str(exc)) from None
    return inst


def serialize_sat_instance(inst: SatReconfigInstance) -> str:
    phi = inst.formula
    out = [f"p satreconf {phi.n} {phi.m} {phi.k}"]
    for c in phi.clauses:
        out.append(" ".join(str(l) for l in c) + " 0")
    out.append("s " + inst.start.to_line())
    out.append("t " + inst.end.to_line())
    return "\n".join(out) + "\n"


def parse_dimacs_cnf(text: Text) -> CnfFormula:
    """Plain ``p cnf`` file; width is inferred (0 when mixed)."""
    n = None
    clauses = []
    pending: list = []
    for no, line in _lines(text):
        if line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "cnf":
                raise ParseError("malformed header, expected 'p cnf <n> <m>'", no)
            n = _int(tok[2], no, "variable count")
            continue
        if n is None:
            raise ParseError("content before header", no)
        for t in tok:
            lit = _int(t, no, "literal")
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if n is None:
        raise ParseError("missing header")
    widths = {len(c) for c in clauses}
    k = widths.pop() if len(widths) == 1 else 0
    try:
        return CnfFormula(n, k, tuple(clauses))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def serialize_sequence(seq: ReconfigSequence) -> str:
    return "\n".join(s.to_line() for s in seq.steps) + "\n"


def parse_sequence(text: Text, inst) -> ReconfigSequence:
    """Parse a sequence file against an instance (to learn kind and k)."""
    steps = []
    cut = isinstance(inst, CutReconfigInstance)
    for no, line in _lines(text):
        if cut:
            cols = [_int(t, no, "color") for t in line.split()]
            try:
                steps.append(Coloring(inst.k, tuple(cols)))
            except ValidationError as exc:
                raise ParseError(str(exc), no) from None
        else:
            s = line.replace(" ", "")
            if any(ch not in "01" for ch in s):
                raise ParseError("expected a bitstring", no)
            steps.append(Assignment.from_string(s))
    if not steps:
        raise ParseError("empty sequence file")
    return ReconfigSequence("cut" if cut else "sat", tuple(steps))
