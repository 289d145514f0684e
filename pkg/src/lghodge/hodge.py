"""Landau-Ginzburg Hodge numbers f, h, i for the elliptic surfaces, and the checks.

* ``h^{p,q}(Y,w)`` is read off the weight filtration of ``N = log T`` on the
  relative groups ``H^{n+a}(Y, Y_b)``;
* ``f^{p,q}(Y,w) = h^p(Z, Omega^q_Z(log D, f))`` is obtained by chasing the
  dimension facts about the logarithmic sheaves (listed in
  :data:`F_AXIOMS`) through exact sequences;
* ``i^{p,q}(Y,w)`` is not computed; only the divisibility obstruction coming
  from ``12 - d`` identical nodal fibers is.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .les import Arrow, ChaseSolution, ExactSequenceSpec, Term, solve_system
from .linalg import Matrix
from .nilpotent import WeightFiltration, jordan_profile, weight_filtration
from .surface import N_DIM, SurfaceModel, build_surface_model, fano_type


class NotFanoType(ValueError):
    pass


class NotDelPezzo(ValueError):
    pass


class Family(enum.Enum):
    H = "h"
    F = "f"
    X = "x"
    I = "i"


@dataclass(frozen=True)
class HodgeTable:
    """``values[p][q]`` for ``0 <= p, q <= n``."""

    family: Family
    n: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vals = tuple(tuple(int(x) for x in row) for row in self.values)
        if len(vals) != self.n + 1 or any(len(r) != self.n + 1 for r in vals):
            raise ValueError(f"a Hodge table of dimension {self.n} needs {self.n + 1}x{self.n + 1} entries")
        if any(x < 0 for r in vals for x in r):
            raise ValueError("Hodge numbers are nonnegative")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, family: Family, n: int, entries: Mapping[tuple[int, int], int]) -> HodgeTable:
        return cls(family, n, tuple(tuple(entries.get((p, q), 0) for q in range(n + 1)) for p in range(n + 1)))

    def __getitem__(self, pq: tuple[int, int]) -> int:
        p, q = pq
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return 0
        return self.values[p][q]

    def degree_sum(self, m: int) -> int:
        return sum(self[p, m - p] for p in range(self.n + 1))

    def degree_sums(self) -> tuple[int, ...]:
        return tuple(self.degree_sum(m) for m in range(2 * self.n + 1))

    def transposed(self) -> HodgeTable:
        return HodgeTable(self.family, self.n, tuple(zip(*self.values)))

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {(p, q): v for p, row in enumerate(self.values) for q, v in enumerate(row) if v}

    def to_json_obj(self) -> dict[str, int]:
        return {f"{p},{q}": self.values[p][q] for p in range(self.n + 1) for q in range(self.n + 1)}


# h-numbers


def lg_hodge_numbers(n: int, groups: Mapping[int, Matrix], family: Family = Family.H) -> HodgeTable:
    """``h^{p,q}`` from nilpotent operators on the groups ``H^{n+a}(Y, Y_b)``.

    ``groups[a]`` is ``N`` acting on ``H^{n+a}``; absent keys are zero groups.
    For a table entry ``(p, q)`` put ``a = p + q - n`` and use the filtration
    centered at ``n - |a|``: the entry is ``gr_{2(n-p)}`` when ``a >= 0`` and
    ``gr_{2q}`` when ``a < 0``.
    """
    filtrations: dict[int, WeightFiltration] = {}
    for a, op in groups.items():
        c = n - abs(a)
        if c < 0:
            raise ValueError(f"H^{n + a} is outside the range of a dimension {n} model")
        if (op ** c).is_zero() or not (op ** (c + 1)).is_zero():
            raise NotFanoType(f"N on H^{n + a} fails N^{c} != 0, N^{c + 1} = 0")
        filtrations[a] = weight_filtration(op, c)
    entries = {}
    for p in range(n + 1):
        for q in range(n + 1):
            a = p + q - n
            w = filtrations.get(a)
            if w is None:
                continue
            entries[p, q] = w.gr(2 * (n - p)) if a >= 0 else w.gr(2 * q)
    return HodgeTable.from_mapping(family, n, entries)


def h_table(model: SurfaceModel) -> HodgeTable:
    if not fano_type(model):
        raise NotFanoType(f"(Y, w) is not of Fano type for d = {model.d}")
    return lg_hodge_numbers(N_DIM, model.relative_groups(), Family.H)


# f-numbers

F_AXIOMS = {
    "h(O_Z)": "Z rational: h^i(O_Z) = (1, 0, 0)",
    "Serre duality": "h^i(omega_Z) = h^{2-i}(O_Z)",
    "Omega^0(log D)(-D)": "= O_Z(-D) = omega_Z since D is anticanonical",
    "Omega^2(log D)(-D)": "= O_Z(-D) = omega_Z since Omega^2(log D) = O_Z",
    "E_1 degeneration": "H^*(Omega^*(log D)(-D)) degenerates at E_1 and abuts to H^*(j_! C_Y)",
    "f-adapted 0-forms": "Omega^0(log D, f) = O_Z(-D) = omega_Z",
    "f-adapted 2-forms": "Omega^2(log D, f) = Omega^2(log D) = O_Z",
    "f-adapted 1-forms": "0 -> Omega^1(log D)(-D) -> Omega^1(log D, f) -> O_D -> 0",
    "h(O_D)": "h^i(O_D) = (1, 1, 0) for D of arithmetic genus 1",
    "boundary H^0(O_D) -> H^1": "nonzero, detected on the section E",
}

_OMEGA = "Omega"


def _h(sheaf: str, i: int) -> str:
    return f"H^{i}({sheaf})"


@dataclass(frozen=True)
class FPipeline:
    d: int
    h_O: tuple[int, ...]
    h_omega: tuple[int, ...]
    h_omega1_minus_D: tuple[int, ...]
    h_omega1_f: tuple[int, ...]
    table: HodgeTable
    specs: dict[str, list[ExactSequenceSpec]] = field(default_factory=dict, compare=False)


def e1_degeneration_specs(hc_Y, h_log0, h_log2) -> list[ExactSequenceSpec]:
    """Short exact sequences of the Hodge-type filtration ``F^2 <= F^1 <= H^k``.

    ``F^2 H^k = E^{2,k-2}``, ``F^1/F^2 = E^{1,k-1}`` and ``H^k/F^1 = E^{0,k}``
    where ``E^{p,i} = H^i(Omega^p(log D)(-D))``.  The unknowns are the ``E^{1,*}``.
    """
    o0, o1, o2 = (f"{_OMEGA}^{p}(log D)(-D)" for p in range(3))

    def dim(table, i):
        return table[i] if 0 <= i < len(table) else 0

    specs = []
    for k in range(len(hc_Y)):
        f1 = f"F^1 H^{k}"
        e1 = Term(_h(o1, k - 1), None if 0 <= k - 1 <= 2 else 0)
        specs.append(ExactSequenceSpec((Term(_h(o2, k - 2), dim(h_log2, k - 2)), Term(f1), e1)))
        specs.append(
            ExactSequenceSpec((Term(f1), Term(f"H^{k}(j_!C_Y)", hc_Y[k]), Term(_h(o0, k), dim(h_log0, k))))
        )
    return specs


def residue_sequence_spec(h_o1_minus_d, h_O_D) -> ExactSequenceSpec:
    """Cohomology of ``0 -> Omega^1(log D)(-D) -> Omega^1(log D, f) -> O_D -> 0``."""
    a, b, c = f"{_OMEGA}^1(log D)(-D)", f"{_OMEGA}^1(log D, f)", "O_D"
    terms = []
    for i in range(3):
        terms += [Term(_h(a, i), h_o1_minus_d[i]), Term(_h(b, i)), Term(_h(c, i), h_O_D[i])]
    spec = ExactSequenceSpec(tuple(terms), tuple(Arrow() for _ in terms[1:]))
    return spec.with_facts(flags={f"{_h(c, 0)}->{_h(a, 1)}": {"injective"}})


def f_pipeline(d: int, model: SurfaceModel | None = None) -> FPipeline:
    model = model or build_surface_model(d, with_monodromy=False)
    h_O = (1, 0, 0)
    h_omega = tuple(h_O[2 - i] for i in range(3))
    h_log0 = h_log2 = h_omega

    e1 = e1_degeneration_specs(model.hc_Y, h_log0, h_log2)
    sol = _require(solve_system(e1), "E_1 bookkeeping")
    o1 = f"{_OMEGA}^1(log D)(-D)"
    h_o1 = tuple(sol.dims[_h(o1, i)] for i in range(3))

    residue = residue_sequence_spec(h_o1, (1, 1, 0))
    sol2 = _require(solve_system([residue]), "residue sequence")
    h_o1_f = tuple(sol2.dims[_h(f"{_OMEGA}^1(log D, f)", i)] for i in range(3))

    # f^{p,q} = h^p(Omega^q(log D, f)) with Omega^0(log D,f) = omega_Z, Omega^2(log D,f) = O_Z
    columns = (h_omega, h_o1_f, h_O)
    table = HodgeTable(Family.F, 2, tuple(tuple(columns[q][p] for q in range(3)) for p in range(3)))
    return FPipeline(d, h_O, h_omega, h_o1, h_o1_f, table, {"E_1": e1, "residue": [residue]})


def _require(sol: ChaseSolution, what: str) -> ChaseSolution:
    if not sol.solved:
        raise RuntimeError(f"{what} chase did not close: {sol.status.value} {sol.free or sol.witness}")
    return sol


def f_table(d: int) -> HodgeTable:
    if not isinstance(d, int) or not 0 <= d <= 9:
        raise ValueError(f"d must be an integer in 0..9, got {d!r}")
    return f_pipeline(d).table


# the del Pezzo side


def x_hodge_table(d: int) -> HodgeTable:
    """Hodge diamond of a del Pezzo surface of degree d: P^2 blown up in 9 - d points."""
    if not isinstance(d, int) or not 1 <= d <= 9:
        raise NotDelPezzo(f"no del Pezzo surface of degree {d} (d = 0 is the non-Fano 9-point blowup)")
    h11 = 1 + (9 - d)  # each blowup adds one exceptional class
    return HodgeTable.from_mapping(Family.X, 2, {(0, 0): 1, (1, 1): h11, (2, 2): 1})


# i-numbers: divisibility obstruction


class IVerdict(enum.Enum):
    HOLDS = "holds"
    COUNTEREXAMPLE = "counterexample-impossible-to-avoid"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class IObstruction:
    d: int
    verdict: IVerdict
    divisor: int | None = None
    candidates: int = 0
    matches: int = 0
    extension: bool = False
    reason: str = ""

    def to_json_obj(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "divisor": self.divisor,
            "candidates": self.candidates,
            "matches": self.matches,
            "extension": self.extension,
            "reason": self.reason,
        }


def divisible_tables(n: int, degree_dims, k: int):
    """All tables with entries in ``k * Z_{>=0}`` whose degree-m sums are ``degree_dims[m]``."""
    per_degree = []
    for m, total in enumerate(degree_dims):
        cells = [(p, m - p) for p in range(n + 1) if 0 <= m - p <= n]
        if total % k or (total and not cells):
            return
        options = [
            combo
            for combo in itertools.product(range(0, total + 1, k), repeat=len(cells))
            if sum(combo) == total
        ]
        per_degree.append([dict(zip(cells, c)) for c in options])
    for choice in itertools.product(*per_degree):
        entries = {}
        for part in choice:
            entries.update(part)
        yield HodgeTable.from_mapping(Family.I, n, entries)


def i_obstruction(d: int, model: SurfaceModel | None = None) -> IObstruction:
    """Can the i-numbers match the h-table when ``12 - d`` identical nodal fibers contribute?

    Every critical fiber has a single node, hence one vanishing cycle, and all
    of them contribute the same way; so each ``i^{p,q}`` is a multiple of the
    number of singular fibers.
    """
    if not isinstance(d, int) or not 0 <= d <= 9:
        return IObstruction(d, IVerdict.NOT_APPLICABLE, reason="d outside 0..9: no nodal-fiber model")
    model = model or build_surface_model(d)
    fibers = 12 - d
    if fibers * 1 != sum(model.h_rel):
        return IObstruction(d, IVerdict.NOT_APPLICABLE, reason="vanishing cycles do not account for H(Y, Y_b)")
    if not fano_type(model):
        return IObstruction(d, IVerdict.NOT_APPLICABLE, divisor=fibers, reason="no h-table: not of Fano type")
    h = h_table(model)
    candidates = matches = 0
    for t in divisible_tables(N_DIM, model.h_rel, fibers):
        candidates += 1
        matches += t.values == h.values
    direct = all(v % fibers == 0 for row in h.values for v in row)
    assert direct == (matches > 0)
    verdict = IVerdict.HOLDS if matches else IVerdict.COUNTEREXAMPLE
    reason = (
        f"{candidates} tables with entries divisible by {fibers} and the right degree sums; "
        f"{matches} equal the h-table"
    )
    return IObstruction(d, verdict, fibers, candidates, matches, extension=d != 9, reason=reason)


# all checks


class Check(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NA = "n/a"

    @classmethod
    def of(cls, ok: bool) -> Check:
        return cls.PASS if ok else cls.FAIL


@dataclass(frozen=True)
class ConjectureReport:
    d: int
    model: SurfaceModel = field(repr=False)
    h: HodgeTable | None
    f: HodgeTable
    x: HodgeTable | None
    partition: tuple[int, ...]
    fano_type: bool
    sum_identity: dict[str, dict[int, Check]]
    f_equals_h: Check
    mirror_rotation: Check
    fano_matches_expected: Check
    i_obstruction: IObstruction

    def checks(self) -> dict[str, Check]:
        out = {}
        for fam, per in self.sum_identity.items():
            for m, c in per.items():
                out[f"sum_identity.{fam}.{m}"] = c
        out["f_equals_h"] = self.f_equals_h
        out["mirror_rotation"] = self.mirror_rotation
        out["fano_type_expected"] = self.fano_matches_expected
        return out

    def failures(self) -> list[str]:
        return [k for k, c in self.checks().items() if c is Check.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures()

    def to_json_obj(self) -> dict:
        return {
            "d": self.d,
            "h": self.h.to_json_obj() if self.h else None,
            "f": self.f.to_json_obj(),
            "x": self.x.to_json_obj() if self.x else None,
            "checks": {
                "sum_identity": {
                    fam: {str(m): c.value for m, c in per.items()} for fam, per in self.sum_identity.items()
                },
                "f_equals_h": self.f_equals_h.value,
                "mirror_rotation": self.mirror_rotation.value,
                "fano_type": self.fano_type,
                "fano_type_expected": self.fano_matches_expected.value,
                "jordan_partition": list(self.partition),
                "i_obstruction": self.i_obstruction.to_json_obj(),
                "all_pass": self.ok,
            },
        }


def check_all(d: int) -> ConjectureReport:
    model = build_surface_model(d)

    partition = jordan_profile(model.N_rel).partition
    fano = fano_type(model)
    h = h_table(model) if fano else None
    f = f_pipeline(d, model).table
    x = x_hodge_table(d) if 1 <= d <= 9 else None

    sums: dict[str, dict[int, Check]] = {}
    for name, table in (("h", h), ("f", f)):
        if table is None:
            sums[name] = {m: Check.NA for m in range(2 * N_DIM + 1)}
        else:
            sums[name] = {m: Check.of(table.degree_sum(m) == model.h_rel[m]) for m in range(2 * N_DIM + 1)}

    f_eq_h = Check.NA if h is None else Check.of(f.values == h.values)
    rotation = Check.NA if x is None else Check.of(
        all(f[p, q] == x[p, 2 - q] for p in range(3) for q in range(3))
    )
    return ConjectureReport(
        d=d,
        model=model,
        h=h,
        f=f,
        x=x,
        partition=partition,
        fano_type=fano,
        sum_identity=sums,
        f_equals_h=f_eq_h,
        mirror_rotation=rotation,
        fano_matches_expected=Check.of(fano == (d >= 1)),
        i_obstruction=i_obstruction(d, model),
    )
