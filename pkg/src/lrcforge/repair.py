"""Repair groups, local erasure repair and global erasure decoding."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cyclic import CyclicCode
from .errors import AmbiguousErasure, EmptyLocalDual, InvalidParams, LengthMismatch, LocalRepairInfeasible


@dataclass(frozen=True, eq=False)
class RepairGroup:
    """Coordinates ``offset, offset+rho, ..., offset+(r+delta-2)*rho``."""

    offset: int
    positions: tuple
    local_checks: np.ndarray | None = None


def repair_groups(n: int, r: int, delta: int) -> list[RepairGroup]:
    L = r + delta - 1
    if r < 1 or delta < 2 or n < 1 or n % L:
        raise InvalidParams(f"need r >= 1, delta >= 2 and (r+delta-1) | n (n={n}, r={r}, delta={delta})")
    rho = n // L
    return [RepairGroup(t, tuple(t + j * rho for j in range(L))) for t in range(rho)]


def local_parities(code: CyclicCode, group: RepairGroup) -> np.ndarray:
    """Basis of dual codewords supported inside ``group``, on the group's columns."""
    gf = code.gf
    H = code.parity_check.reduced
    inside = set(group.positions)
    comp = [j for j in range(code.n) if j not in inside]
    combos = gf.nullspace(H[:, comp].T)
    if combos.shape[0] == 0:
        raise EmptyLocalDual(f"no dual codeword is supported inside group {group.offset}")
    local = gf.matmul(combos, H[:, list(group.positions)])
    R, _ = gf.rref(local)
    if R.shape[0] == 0:
        raise EmptyLocalDual(f"no dual codeword is supported inside group {group.offset}")
    R.setflags(write=False)
    return R


class RepairPlan:
    """Repair groups of a code together with their (lazily built) local checks."""

    def __init__(self, code: CyclicCode, r: int, delta: int):
        self.code = code
        self.r = r
        self.delta = delta
        self.rho = code.n // (r + delta - 1)
        self.groups = repair_groups(code.n, r, delta)
        self._checks: dict[int, np.ndarray] = {}

    def checks(self, offset: int) -> np.ndarray:
        if offset not in self._checks:
            self._checks[offset] = local_parities(self.code, self.groups[offset])
        return self._checks[offset]

    def group_of(self, i: int) -> RepairGroup:
        return self.groups[i % self.rho]

    def with_checks(self) -> list[RepairGroup]:
        return [RepairGroup(g.offset, g.positions, self.checks(g.offset)) for g in self.groups]


@dataclass(frozen=True, eq=False)
class ErasurePattern:
    """A received word plus the set of erased coordinates.

    Values at erased coordinates are meaningless; 0 is a legal symbol so the
    erasures are carried as an explicit set.
    """

    word: np.ndarray
    erased: frozenset

    def __post_init__(self):
        w = np.array(self.word, dtype=np.int64)
        w.setflags(write=False)
        object.__setattr__(self, "word", w)
        erased = frozenset(int(i) for i in self.erased)
        if any(not 0 <= i < w.size for i in erased):
            raise InvalidParams("erased index out of range")
        object.__setattr__(self, "erased", erased)

    @classmethod
    def from_codeword(cls, codeword, erased) -> ErasurePattern:
        w = np.array(codeword, dtype=np.int64)
        w[list(erased)] = 0
        return cls(w, frozenset(erased))

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.word.size, dtype=bool)
        m[list(self.erased)] = True
        return m


@dataclass
class RepairResult:
    word: np.ndarray
    path: str  # "none", "local" or "global"
    contacts: dict = field(default_factory=dict)  # group offset -> positions read

    @property
    def max_contact(self) -> int:
        return max((len(c) for c in self.contacts.values()), default=0)


def _repair_in_group(gf, checks, positions, erased, word):
    """Solve the erased symbols of one group; return (values, contact positions)."""
    pos_index = {p: i for i, p in enumerate(positions)}
    E = [p for p in positions if p in erased]
    others = [p for p in positions if p not in erased]
    rank = checks.shape[0]
    e = len(E)
    attempts = []
    if rank > e:
        attempts.append(others[: rank - e])
    attempts.append([])
    for zeroed in attempts:
        if zeroed:
            combos = gf.nullspace(checks[:, [pos_index[p] for p in zeroed]].T)
            Y = gf.matmul(combos, checks)
        else:
            Y = checks
        A = Y[:, [pos_index[p] for p in E]]
        cand = [p for p in others if p not in set(zeroed)]
        C = [p for p in cand if Y[:, pos_index[p]].any()]
        if C:
            rhs = gf.neg[gf.matmul(Y[:, [pos_index[p] for p in C]], word[C])]
        else:
            rhs = np.zeros(Y.shape[0], dtype=np.int64)
        x = gf.solve(A, rhs)
        if x is not None:
            return x, tuple(C)
    return None, ()


def local_repair(code: CyclicCode, received: ErasurePattern, r: int, delta: int,
                 plan: RepairPlan | None = None) -> RepairResult:
    """Recover every erasure from symbols inside its own repair group."""
    if received.word.size != code.n:
        raise LengthMismatch(f"received length {received.word.size} != n={code.n}")
    plan = plan or RepairPlan(code, r, delta)
    out = received.word.copy()
    if not received.erased:
        return RepairResult(out, "none")
    by_group: dict[int, list[int]] = {}
    for i in sorted(received.erased):
        by_group.setdefault(i % plan.rho, []).append(i)
    for offset in sorted(by_group):
        if len(by_group[offset]) > delta - 1:
            raise LocalRepairInfeasible(offset, by_group[offset])
    contacts = {}
    for offset in sorted(by_group):
        grp = plan.groups[offset]
        E = by_group[offset]
        values, C = _repair_in_group(code.gf, plan.checks(offset), grp.positions, set(E), received.word)
        if values is None:
            raise LocalRepairInfeasible(offset, E)
        out[E] = values
        contacts[offset] = C
    return RepairResult(out, "local", contacts)


def global_erasure_decode(code: CyclicCode, received: ErasurePattern) -> np.ndarray:
    """Solve the parity-check system for all erased symbols at once."""
    if received.word.size != code.n:
        raise LengthMismatch(f"received length {received.word.size} != n={code.n}")
    out = received.word.copy()
    E = sorted(received.erased)
    if not E:
        return out
    gf = code.gf
    H = code.parity_check.reduced
    if len(E) > H.shape[0]:
        raise AmbiguousErasure(f"{len(E)} erasures exceed n-k={H.shape[0]}")
    K = [j for j in range(code.n) if j not in received.erased]
    rhs = gf.neg[gf.matmul(H[:, K], received.word[K])] if K else np.zeros(H.shape[0], np.int64)
    x = gf.solve(H[:, E], rhs)
    if x is None:
        raise AmbiguousErasure(f"erased columns {E} are linearly dependent")
    out[E] = x
    return out


def repair(code: CyclicCode, received: ErasurePattern, r: int, delta: int,
           plan: RepairPlan | None = None) -> RepairResult:
    """Local repair when every group is within budget, global decoding otherwise."""
    try:
        return local_repair(code, received, r, delta, plan)
    except LocalRepairInfeasible:
        return RepairResult(global_erasure_decode(code, received), "global",
                            {-1: tuple(j for j in range(code.n) if j not in received.erased)})
