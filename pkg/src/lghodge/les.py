"""Dimension chasing in long exact sequences.

A sequence ``0 -> V_1 -> V_2 -> ... -> V_k -> 0`` is described by its terms
(label plus optional known dimension) and the arrows between neighbours
(optional known rank, optional ``injective``/``surjective``/``zero`` flags).
Exactness plus rank-nullity gives ``dim V_i = rank(in_i) + rank(out_i)`` with
the two boundary arrows of rank zero; flags pin a rank to a neighbouring
dimension.  The solver runs interval propagation over all dims and ranks to a
fixpoint.  Several sequences may be solved together: terms with the same label
are the same space, which is how chases are glued (e.g. a filtration piece
shared by two short exact sequences).
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

DIM_BOUND = 10**6
FLAGS = frozenset({"injective", "surjective", "zero"})


class MalformedSpec(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    label: str
    dim: int | None = None


@dataclass(frozen=True)
class Arrow:
    rank: int | None = None
    flags: frozenset[str] = frozenset()
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "flags", frozenset(self.flags))


@dataclass(frozen=True)
class ExactSequenceSpec:
    terms: tuple[Term, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        arrows = tuple(self.arrows) if self.arrows else tuple(Arrow() for _ in self.terms[1:])
        object.__setattr__(self, "arrows", arrows)
        self._validate()

    def _validate(self) -> None:
        if not self.terms:
            raise MalformedSpec("a sequence needs at least one term")
        if len(self.arrows) != len(self.terms) - 1:
            raise MalformedSpec(f"{len(self.terms)} terms need {len(self.terms) - 1} arrows, got {len(self.arrows)}")
        dims: dict[str, int] = {}
        for t in self.terms:
            if t.dim is not None:
                if not isinstance(t.dim, int) or t.dim < 0:
                    raise MalformedSpec(f"dimension of {t.label!r} must be a nonnegative integer")
                if dims.setdefault(t.label, t.dim) != t.dim:
                    raise MalformedSpec(f"label {t.label!r} given two different dimensions")
        for i, a in enumerate(self.arrows):
            key = self.arrow_key(i)
            unknown = a.flags - FLAGS
            if unknown:
                raise MalformedSpec(f"arrow {key}: unknown flags {sorted(unknown)}")
            if a.rank is not None and (not isinstance(a.rank, int) or a.rank < 0):
                raise MalformedSpec(f"arrow {key}: rank must be a nonnegative integer")
            src, tgt = self.terms[i].dim, self.terms[i + 1].dim
            if "zero" in a.flags:
                if a.rank not in (None, 0):
                    raise MalformedSpec(f"arrow {key}: flagged zero but rank {a.rank}")
                if "injective" in a.flags and src not in (None, 0):
                    raise MalformedSpec(f"arrow {key}: zero and injective from a nonzero source")
                if "surjective" in a.flags and tgt not in (None, 0):
                    raise MalformedSpec(f"arrow {key}: zero and surjective onto a nonzero target")

    def arrow_key(self, i: int) -> str:
        a = self.arrows[i]
        return a.name or f"{self.terms[i].label}->{self.terms[i + 1].label}"

    def arrow_index(self, key: str) -> int:
        for i in range(len(self.arrows)):
            if self.arrow_key(i) == key:
                return i
        raise KeyError(key)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(t.label for t in self.terms)

    def with_facts(
        self,
        dims: Mapping[str, int] | None = None,
        flags: Mapping[str, Iterable[str]] | None = None,
        ranks: Mapping[str, int] | None = None,
    ) -> ExactSequenceSpec:
        """A copy with extra known dims, arrow flags or arrow ranks."""
        dims = dict(dims or {})
        terms = tuple(replace(t, dim=dims[t.label]) if t.label in dims else t for t in self.terms)
        arrows = list(self.arrows)
        for key, fl in (flags or {}).items():
            i = self.arrow_index(key)
            arrows[i] = replace(arrows[i], flags=arrows[i].flags | frozenset(fl))
        for key, r in (ranks or {}).items():
            i = self.arrow_index(key)
            arrows[i] = replace(arrows[i], rank=r)
        return ExactSequenceSpec(terms, tuple(arrows))

    # JSON

    @classmethod
    def from_json_obj(cls, obj) -> ExactSequenceSpec:
        if not isinstance(obj, dict) or "terms" not in obj:
            raise MalformedSpec("sequence JSON must be an object with 'terms'")
        try:
            terms = tuple(Term(str(t["label"]), t.get("dim")) for t in obj["terms"])
            arrows = tuple(
                Arrow(a.get("rank"), frozenset(a.get("flags", ())), a.get("name"))
                for a in obj.get("arrows", [{} for _ in terms[1:]])
            )
        except (TypeError, KeyError, AttributeError) as exc:
            raise MalformedSpec(f"bad sequence JSON: {exc}") from None
        return cls(terms, arrows)

    @classmethod
    def from_json(cls, text: str) -> ExactSequenceSpec:
        try:
            return cls.from_json_obj(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MalformedSpec(f"invalid JSON: {exc}") from None

    def to_json_obj(self) -> dict:
        arrows = []
        for a in self.arrows:
            d = {"rank": a.rank, "flags": sorted(a.flags)}
            if a.name:
                d["name"] = a.name
            arrows.append(d)
        return {"terms": [{"label": t.label, "dim": t.dim} for t in self.terms], "arrows": arrows}


class Status(enum.Enum):
    SOLVED = "solved"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class ChaseSolution:
    status: Status
    dims: dict[str, int]
    ranks: dict[str, int]
    free: tuple[str, ...] = ()
    witness: str | None = None
    bounds: dict[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED

    def dim_vector(self, labels: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.dims[l] for l in labels)


@dataclass
class _Linear:
    """``sum(coef * var) == const``."""

    terms: list[tuple[int, str]]
    const: int
    why: str


class _Infeasible(Exception):
    def __init__(self, why: str):
        self.why = why


def _dim_var(label: str) -> str:
    return f"dim[{label}]"


def _rank_var(seq: int, i: int) -> str:
    return f"rank[{seq}:{i}]"


def _constraints(specs: Sequence[ExactSequenceSpec]) -> tuple[list[_Linear], dict[str, str]]:
    cons: list[_Linear] = []
    rank_names: dict[str, str] = {}
    for s, spec in enumerate(specs):
        n = len(spec.terms)
        for i in range(n - 1):
            key = spec.arrow_key(i)
            if key in rank_names.values():
                key = f"{key}@{s}"
            rank_names[_rank_var(s, i)] = key
        for i, t in enumerate(spec.terms):
            parts = [(1, _dim_var(t.label))]
            if i > 0:
                parts.append((-1, _rank_var(s, i - 1)))
            if i < n - 1:
                parts.append((-1, _rank_var(s, i)))
            cons.append(_Linear(parts, 0, f"exactness at {t.label}"))
            if t.dim is not None:
                cons.append(_Linear([(1, _dim_var(t.label))], t.dim, f"dim {t.label} = {t.dim}"))
        for i, a in enumerate(spec.arrows):
            r = _rank_var(s, i)
            key = spec.arrow_key(i)
            if a.rank is not None:
                cons.append(_Linear([(1, r)], a.rank, f"rank {key} = {a.rank}"))
            if "zero" in a.flags:
                cons.append(_Linear([(1, r)], 0, f"{key} is zero"))
            # By exactness, injective means the incoming arrow is zero and
            # surjective means the outgoing one is.  Stating that directly keeps
            # propagation complete: the dim-based form alone cannot derive it.
            if "injective" in a.flags:
                cons.append(_Linear([(1, r), (-1, _dim_var(spec.terms[i].label))], 0, f"{key} injective"))
                if i > 0:
                    cons.append(_Linear([(1, _rank_var(s, i - 1))], 0, f"{key} injective"))
            if "surjective" in a.flags:
                cons.append(_Linear([(1, r), (-1, _dim_var(spec.terms[i + 1].label))], 0, f"{key} surjective"))
                if i + 1 < n - 1:
                    cons.append(_Linear([(1, _rank_var(s, i + 1))], 0, f"{key} surjective"))
    return cons, rank_names


def _tighten(c: _Linear, bounds: dict[str, list[int]]) -> list[str]:
    changed = []
    for j, (a, x) in enumerate(c.terms):
        # a*x = const - sum_{i != j} a_i x_i
        lo = hi = c.const
        for i, (b, y) in enumerate(c.terms):
            if i == j:
                continue
            ylo, yhi = bounds[y]
            if b > 0:
                lo -= b * yhi
                hi -= b * ylo
            else:
                lo -= b * ylo
                hi -= b * yhi
        if a < 0:
            lo, hi = -hi, -lo
        cur = bounds[x]
        new_lo, new_hi = max(cur[0], lo), min(cur[1], hi)
        if new_lo > new_hi:
            raise _Infeasible(c.why)
        if (new_lo, new_hi) != (cur[0], cur[1]):
            cur[0], cur[1] = new_lo, new_hi
            changed.append(x)
    return changed


def solve_system(specs: Sequence[ExactSequenceSpec]) -> ChaseSolution:
    """Solve several exact sequences at once; equal labels are the same space."""
    cons, rank_names = _constraints(specs)
    labels: list[str] = []
    for spec in specs:
        for t in spec.terms:
            if t.label not in labels:
                labels.append(t.label)
    bounds: dict[str, list[int]] = {_dim_var(l): [0, DIM_BOUND] for l in labels}
    for r in rank_names:
        bounds[r] = [0, DIM_BOUND]

    by_var: dict[str, list[int]] = {v: [] for v in bounds}
    for k, c in enumerate(cons):
        for _, x in c.terms:
            by_var[x].append(k)

    queue = deque(range(len(cons)))
    queued = set(queue)
    witness = None
    try:
        while queue:
            k = queue.popleft()
            queued.discard(k)
            for x in _tighten(cons[k], bounds):
                for k2 in by_var[x]:
                    if k2 not in queued:
                        queue.append(k2)
                        queued.add(k2)
    except _Infeasible as exc:
        witness = exc.why

    dims = {l: bounds[_dim_var(l)][0] for l in labels if bounds[_dim_var(l)][0] == bounds[_dim_var(l)][1]}
    ranks = {rank_names[r]: bounds[r][0] for r in rank_names if bounds[r][0] == bounds[r][1]}
    report = {l: tuple(bounds[_dim_var(l)]) for l in labels}
    report.update({rank_names[r]: tuple(bounds[r]) for r in rank_names})
    if witness is not None:
        return ChaseSolution(Status.INCONSISTENT, dims, ranks, (), witness, report)
    free = tuple(l for l in labels if l not in dims) + tuple(
        rank_names[r] for r in rank_names if rank_names[r] not in ranks
    )
    status = Status.UNDERDETERMINED if free else Status.SOLVED
    return ChaseSolution(status, dims, ranks, free, None, report)


def solve(spec: ExactSequenceSpec) -> ChaseSolution:
    return solve_system([spec])


def satisfies(spec: ExactSequenceSpec, sol: ChaseSolution) -> bool:
    """Re-check every constraint of ``spec`` literally against a full solution."""
    try:
        d = [sol.dims[t.label] for t in spec.terms]
        r = [sol.ranks[spec.arrow_key(i)] for i in range(len(spec.arrows))]
    except KeyError:
        return False
    full = [0] + r + [0]
    for i, t in enumerate(spec.terms):
        if d[i] < 0 or d[i] != full[i] + full[i + 1]:
            return False
        if t.dim is not None and t.dim != d[i]:
            return False
    for i, a in enumerate(spec.arrows):
        if r[i] < 0 or (a.rank is not None and a.rank != r[i]):
            return False
        if "zero" in a.flags and r[i] != 0:
            return False
        if "injective" in a.flags and r[i] != d[i]:
            return False
        if "surjective" in a.flags and r[i] != d[i + 1]:
            return False
    return True


def euler_check(spec: ExactSequenceSpec) -> bool:
    """Alternating sum of dimensions vanishes (all dims must be known)."""
    if any(t.dim is None for t in spec.terms):
        raise ValueError("euler_check needs every dimension to be known")
    return sum((-1) ** i * t.dim for i, t in enumerate(spec.terms)) == 0


def completed(spec: ExactSequenceSpec, sol: ChaseSolution) -> ExactSequenceSpec:
    """``spec`` with every dimension the solution forced filled in."""
    return spec.with_facts(dims={l: sol.dims[l] for l in spec.labels if l in sol.dims})


def format_solution(spec: ExactSequenceSpec, sol: ChaseSolution) -> str:
    width = max(len(t.label) for t in spec.terms)
    lines = [f"status: {sol.status.value}"]
    for i, t in enumerate(spec.terms):
        val = sol.dims.get(t.label)
        given = "" if t.dim is None else "  (given)"
        lines.append(f"  {t.label.ljust(width)}  dim = {'?' if val is None else val}{given}")
        if i < len(spec.arrows):
            key = spec.arrow_key(i)
            r = sol.ranks.get(key)
            flags = ", ".join(sorted(spec.arrows[i].flags))
            lines.append(f"  {'|'.rjust(width)}  rank({key}) = {'?' if r is None else r}" + (f"  [{flags}]" if flags else ""))
    if sol.free:
        lines.append("free: " + ", ".join(sol.free))
    if sol.witness:
        lines.append("violated: " + sol.witness)
    return "\n".join(lines)
