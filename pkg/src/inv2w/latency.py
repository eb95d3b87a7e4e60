"""Dataflow latency model for straight-line inverse code.

Each instruction issues as soon as all of its operands are ready and its
result is ready ``latency`` cycles later.  Issue width is unbounded and
multiplies are fully pipelined, so the total latency is the critical path.
"""

from __future__ import annotations

import enum
import graphlib
from dataclasses import dataclass, field, fields
from pathlib import Path

from .inverse import AlgoKind, iteration_count, parse_algo
from .seeds import SeedKind, check_seed_width, parse_seed


class Op(enum.Enum):
    MUL = "mul"
    ADD = "add"
    SUB = "sub"
    XOR = "xor"
    MUL3 = "mul3"
    CONST = "const"
    INPUT = "input"


@dataclass(frozen=True)
class CostModel:
    mul: int = 3
    add: int = 1  # also covers SUB
    xor: int = 1
    mul3: int = 1  # 3*a as one add-with-shift / LEA

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"latency {f.name} must be an int >= 1, got {v!r}")

    def latency(self, op: Op) -> int:
        if op in (Op.CONST, Op.INPUT):
            return 0
        if op in (Op.ADD, Op.SUB):
            return self.add
        return getattr(self, op.value)

    @classmethod
    def parse(cls, text: str, base: "CostModel | None" = None) -> "CostModel":
        """Read ``key=value`` lines (keys mul, add, xor, mul3; ``#`` comments)."""
        values = {} if base is None else {f.name: getattr(base, f.name) for f in fields(cls)}
        known = {f.name for f in fields(cls)}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key = key.strip().lower()
            if not sep or key not in known:
                raise ValueError(f"line {lineno}: expected one of {sorted(known)} = <int>")
            try:
                values[key] = int(val.strip())
            except ValueError:
                raise ValueError(f"line {lineno}: {val.strip()!r} is not an integer") from None
        return cls(**values)

    @classmethod
    def load(cls, path) -> "CostModel":
        return cls.parse(Path(path).read_text())


@dataclass(frozen=True)
class Instr:
    id: int
    op: Op
    operands: tuple[int, ...] = ()
    dest: str = ""
    label: str = ""


@dataclass
class Program:
    instrs: list[Instr] = field(default_factory=list)
    output: int | None = None
    name: str = ""

    def __post_init__(self):
        ids = {i.id for i in self.instrs}
        if len(ids) != len(self.instrs):
            raise ValueError("duplicate instruction ids")
        if self.output is not None and self.output not in ids:
            raise ValueError(f"output {self.output} is not an instruction")

    def by_id(self) -> dict[int, Instr]:
        return {i.id: i for i in self.instrs}

    def arithmetic(self) -> list[Instr]:
        return [i for i in self.instrs if i.op not in (Op.CONST, Op.INPUT)]

    def count(self, op: Op) -> int:
        return sum(1 for i in self.instrs if i.op is op)


@dataclass
class Schedule:
    issue: dict[int, int]
    ready: dict[int, int]
    total_latency: int

    def validate(self, program: Program, model: CostModel):
        for ins in program.instrs:
            start = max((self.ready[o] for o in ins.operands), default=0)
            if self.issue[ins.id] < start:
                raise AssertionError(f"instr {ins.id} issues before its operands are ready")
            if self.ready[ins.id] != self.issue[ins.id] + model.latency(ins.op):
                raise AssertionError(f"instr {ins.id} has the wrong ready cycle")


def schedule(program: Program, model: CostModel | None = None) -> Schedule:
    """Earliest-issue schedule; raises graphlib.CycleError on a cyclic graph."""
    model = model or CostModel()
    instrs = program.by_id()
    for ins in program.instrs:
        missing = [o for o in ins.operands if o not in instrs]
        if missing:
            raise ValueError(f"instr {ins.id} uses undefined operands {missing}")
    order = graphlib.TopologicalSorter({i.id: i.operands for i in program.instrs})
    issue, ready = {}, {}
    for iid in order.static_order():
        ins = instrs[iid]
        issue[iid] = max((ready[o] for o in ins.operands), default=0)
        ready[iid] = issue[iid] + model.latency(ins.op)
    total = ready[program.output] if program.output is not None else 0
    return Schedule(issue, ready, total)


class _Builder:
    def __init__(self, name):
        self.instrs = []
        self.name = name
        self._consts = {}

    def emit(self, op, operands=(), dest="", label=""):
        ins = Instr(len(self.instrs), op, tuple(operands), dest, label)
        self.instrs.append(ins)
        return ins.id

    def const(self, v):
        if v not in self._consts:
            self._consts[v] = self.emit(Op.CONST, dest=str(v), label=str(v))
        return self._consts[v]

    def program(self, out):
        return Program(self.instrs, out, self.name)


def _emit_seed(b, a, seed):
    if seed in (SeedKind.K4_MONT, SeedKind.K5):
        t = b.emit(Op.MUL3, [a], "tmp", "tmp = 3*a")
        return b.emit(Op.XOR, [t, b.const(2)], "x0", "x0 = tmp ^ 2")
    if seed is SeedKind.K4_ALT:
        t = b.emit(Op.XOR, [a, b.const(2)], "tmp", "tmp = a ^ 2")
        t2 = b.emit(Op.ADD, [a, a], "tmp2", "tmp2 = a + a")
        return b.emit(Op.SUB, [t, t2], "x0", "x0 = tmp - tmp2")
    if seed is SeedKind.K1:
        return b.const(1)
    return a  # x0 = a


PROGRAMS = {
    "fig1": AlgoKind.IMPROVED,
    "fig2": AlgoKind.NEWTON,
    "fig3": AlgoKind.DUMAS_ORIGINAL,
}


def build_program(algo, width: int = 64, seed: SeedKind | str | None = SeedKind.K4_MONT) -> Program:
    """Dataflow graph of the straight-line code for ``algo`` at ``width``."""
    algo = parse_algo(algo)
    if algo is AlgoKind.EUCLID:
        raise ValueError("Euclid has data-dependent control flow; no fixed program")
    b = _Builder(algo.value)
    a = b.emit(Op.INPUT, dest="a", label="a")

    if algo is AlgoKind.DUMAS_ORIGINAL:
        p = iteration_count(width, 2)
        y = b.emit(Op.SUB, [a, b.const(1)], "y", "y = a - 1")
        u = b.emit(Op.SUB, [b.const(2), a], "u0", "u0 = 2 - a")
        y = b.emit(Op.MUL, [y, y], "y", "y *= y")
        for n in range(p):
            t = b.emit(Op.ADD, [b.const(1), y], "tmp", "tmp = (1 + y)")
            u = b.emit(Op.MUL, [u, t], f"u{n + 1}", f"u{n + 1} = u{n} * tmp")
            if n + 1 < p:
                y = b.emit(Op.MUL, [y, y], "y", "y *= y")
        return b.program(u)

    seed = SeedKind.K4_MONT if seed is None else parse_seed(seed)
    check_seed_width(seed, width)
    p = iteration_count(width, seed.bits)
    x = _emit_seed(b, a, seed)

    if algo is AlgoKind.NEWTON:
        for n in range(p):
            t = b.emit(Op.MUL, [a, x], "tmp", f"tmp = a*x{n}")
            t = b.emit(Op.SUB, [b.const(2), t], "tmp", "tmp = 2 - tmp")
            x = b.emit(Op.MUL, [x, t], f"x{n + 1}", f"x{n + 1} = x{n} * tmp")
        return b.program(x)

    t = b.emit(Op.MUL, [a, x], "tmp", "tmp = a*x0")
    y = b.emit(Op.SUB, [b.const(1), t], "y", "y = 1 - tmp")
    for n in range(p):
        t = b.emit(Op.ADD, [b.const(1), y], "tmp", "tmp = (1 + y)")
        x = b.emit(Op.MUL, [x, t], f"x{n + 1}", f"x{n + 1} = x{n} * tmp")
        if n + 1 < p:
            y = b.emit(Op.MUL, [y, y], "y", "y *= y")
    return b.program(x)


def render_timeline(s: Schedule, p: Program) -> str:
    """Per-cycle listing; operations issuing on the same cycle share a row."""
    if not p.instrs or p.output is None:
        return ""
    ops = p.arithmetic()
    rows = []
    for cycle in range(s.total_latency + 1):
        now = [i.label for i in ops if s.issue[i.id] == cycle]
        if now:
            text = ", ".join(now)
        elif cycle == s.total_latency:
            text = f"return {p.by_id()[p.output].dest}"
        else:
            waiting = []
            for i in ops:
                if s.issue[i.id] < cycle < s.ready[i.id] and i.dest not in waiting:
                    waiting.append(i.dest)
            text = f"(no instruction possible, waiting on {', '.join(waiting)})"
        rows.append(f"{cycle:>3}: {text}")
    return "\n".join(rows)
