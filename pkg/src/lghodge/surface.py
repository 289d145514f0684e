"""Topological model of a rational elliptic surface with an ``I_d`` fiber at infinity.

``Z -> P^1`` is a rational elliptic surface with a section ``E`` whose fiber
at infinity ``D`` is of type ``I_d`` (``0 <= d <= 9``), ``Y = Z - D`` and
``Y_b`` is a smooth fiber near infinity.  The cohomology tables are not typed
in: each one comes out of a long exact sequence fed to :mod:`lghodge.les`,
with the classical inputs listed in :data:`AXIOMS`.

The monodromy on ``H_2(Y, Y_b)`` is assembled as ``T = I + ell . boundary``
in the basis ``a_1..a_{10-d}, e~_1, e~_2``: the ``a_i`` span the image of
``H_2(Y)`` and ``e~_1, e~_2`` lift a basis ``e_1, e_2`` of ``H_1(Y_b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import lattice
from .les import Arrow, ChaseSolution, ExactSequenceSpec, Term, solve_system
from .linalg import Matrix, Subspace, kernel, rank
from .nilpotent import unipotent_log

N_DIM = 2  # complex dimension of Y

AXIOMS = {
    "chi(O_Z)": "Z is rational, so chi(O_Z) = 1",
    "K_Z^2": "-K_Z = D is a fiber, so K_Z^2 = 0",
    "b_odd(Z)": "a rational surface has b_1 = b_3 = 0",
    "h(D), d=0": "D is a smooth elliptic curve: h = (1, 2, 1)",
    "normalization": "for d >= 1 the normalization of D is d disjoint P^1 glued at d nodes",
    "H0(C_D) -> H0(pi_*)": "injective (D is connected)",
    "h(Y_b)": "Y_b is a smooth elliptic curve: h = (1, 2, 1)",
    "H0(Y) -> H0(Y_b)": "surjective (Y and Y_b connected)",
    "H2(Y) -> H2(Y_b)": "surjective (restriction of an ample class)",
    "H2(Y_b) -> H2(Y)": "injective (dual of the previous surjection)",
    "T on H_1(Y_b)": "trivial for d = 0; unipotent with T - I of rank one for d >= 1",
}


class ChaseFailed(RuntimeError):
    pass


def _check_d(d: int) -> None:
    if not isinstance(d, int) or not 0 <= d <= 9:
        raise ValueError(f"d must be an integer in 0..9, got {d!r}")


def _solved(specs: list[ExactSequenceSpec], what: str) -> ChaseSolution:
    sol = solve_system(specs)
    if not sol.solved:
        raise ChaseFailed(f"{what}: {sol.status.value} (free: {sol.free}, witness: {sol.witness})")
    return sol


def _triple_les(names: tuple[str, str, str], tables: tuple, top: int, flags=None) -> ExactSequenceSpec:
    """Cohomology sequence of ``0 -> A -> B -> C -> 0`` in degrees ``0..top``.

    ``tables`` holds, per sheaf, a tuple of dims (None for unknown) or None
    when nothing is known; degrees past the end of a tuple are zero.
    ``flags`` maps ``(degree, position)`` to arrow flags, where position 0, 1, 2
    is the arrow out of ``H^i(A)``, ``H^i(B)``, ``H^i(C)``.
    """
    flags = flags or {}
    terms, arrows = [], []
    for i in range(top + 1):
        for pos, (name, table) in enumerate(zip(names, tables)):
            dim = None
            if table is not None:
                dim = table[i] if i < len(table) else 0
            terms.append(Term(f"H^{i}({name})", dim))
            if not (i == top and pos == 2):
                arrows.append(flags.get((i, pos), frozenset()))
    return ExactSequenceSpec(tuple(terms), tuple(Arrow(flags=f) for f in arrows))


def betti_Z() -> tuple[int, ...]:
    """Betti numbers of Z from Noether's formula ``e = 12 chi(O) - K^2``."""
    euler = 12 * 1 - 0
    b0 = b4 = 1
    b1 = b3 = 0
    return (b0, b1, euler - b0 - b4 + b1 + b3, b3, b4)


def chase_h_D(d: int) -> tuple[tuple[int, ...], list[ExactSequenceSpec] | None]:
    """``h^i(D)`` via the normalization sequence ``0 -> C_D -> pi_* C -> (+) C_p -> 0``."""
    _check_d(d)
    if d == 0:
        return (1, 2, 1), None
    spec = _triple_les(
        ("C_D", "pi_*C", "C_pts"),
        ((1, None, None), (d, 0, d), (d, 0, 0)),
        top=2,
        flags={(0, 0): {"injective"}},
    )
    sol = _solved([spec], "normalization chase")
    return tuple(sol.dims[f"H^{i}(C_D)"] for i in range(3)), [spec]


def chase_hc_Y(d: int, h_Z, h_D) -> tuple[tuple[int, ...], list[ExactSequenceSpec]]:
    """``h^i_c(Y)`` from ``0 -> j_! C_Y -> C_Z -> C_D -> 0``.

    ``r: H^0(Z) -> H^0(D)`` is onto since D is connected; ``s: H^2(Z) -> H^2(D)``
    is onto by the lattice certificate.
    """
    cert = lattice.restriction_surjective(d)
    flags = {(0, 1): {"surjective"}}
    if cert.surjective:
        flags[(2, 1)] = {"surjective"}
    spec = _triple_les(("j_!C_Y", "C_Z", "C_D"), (None, h_Z, h_D), top=4, flags=flags)
    sol = _solved([spec], "compact support chase")
    return tuple(sol.dims[f"H^{i}(j_!C_Y)"] for i in range(5)), [spec]


def chase_h_rel(h_Y) -> tuple[tuple[int, ...], list[ExactSequenceSpec]]:
    """``dim H^k(Y, Y_b)`` from the cohomology sequence of the pair."""
    h_Yb = (1, 2, 1)
    terms = []
    for k in range(5):
        terms += [
            Term(f"H^{k}(Y,Y_b)"),
            Term(f"H^{k}(Y)", h_Y[k]),
            Term(f"H^{k}(Y_b)", h_Yb[k] if k < 3 else 0),
        ]
    spec = ExactSequenceSpec(tuple(terms))
    spec = spec.with_facts(flags={"H^0(Y)->H^0(Y_b)": {"surjective"}, "H^2(Y)->H^2(Y_b)": {"surjective"}})
    sol = _solved([spec], "relative cohomology chase")
    return tuple(sol.dims[f"H^{k}(Y,Y_b)"] for k in range(5)), [spec]


def homology_sequence(d: int, h_Y, h_rel2: int | None = None) -> ExactSequenceSpec:
    """``0 -> H_2(Y_b) -> H_2(Y) -> H_2(Y, Y_b) -> H_1(Y_b) -> 0``."""
    return ExactSequenceSpec(
        (Term("H_2(Y_b)", 1), Term("H_2(Y)", h_Y[2]), Term("H_2(Y,Y_b)", h_rel2), Term("H_1(Y_b)", 2)),
    ).with_facts(flags={"H_2(Y_b)->H_2(Y)": {"injective"}})


def chase_invariant_dim(d: int, h_Y) -> tuple[int, list[ExactSequenceSpec]]:
    """Rank of ``H_2(Y) -> H_2(Y, Y_b)``, the dimension of the T-invariants."""
    spec = homology_sequence(d, h_Y)
    sol = _solved([spec], "homology chase")
    return sol.ranks["H_2(Y)->H_2(Y,Y_b)"], [spec]


# monodromy


def fiber_monodromy(d: int) -> Matrix:
    """Monodromy of ``H_1(Y_b)`` around an ``I_d`` fiber: ``e_2 -> e_2 + d e_1``."""
    _check_d(d)
    return Matrix([[1, d], [0, 1]])


def boundary_matrix(a_dim: int) -> Matrix:
    """``H_2(Y, Y_b) -> H_1(Y_b)``: projection onto the lifted block."""
    return Matrix([[0] * a_dim + [1, 0], [0] * a_dim + [0, 1]])


def ell_matrix(d: int, a_dim: int, col1=None, col2_a=None) -> Matrix:
    """The map ``H_1(Y_b) -> H_2(Y, Y_b)``, ``x -> [x times the loop]``.

    Columns are the images of ``e_1, e_2``.  By default ``ell(e_1) = a_1`` and
    ``ell(e_2) = d e~_1`` (``a_2`` when ``d = 0``); ``col1`` / ``col2_a``
    override the A-block parts, which the boundary does not see.
    """
    c1 = list(col1) if col1 is not None else [1] + [0] * (a_dim - 1)
    if col2_a is not None:
        c2 = list(col2_a)
    elif d == 0:
        c2 = [0, 1] + [0] * (a_dim - 2)
    else:
        c2 = [0] * a_dim
    return Matrix.from_columns([c1 + [0, 0], c2 + [d, 0]], a_dim + 2)


@dataclass(frozen=True)
class MonodromyAssembly:
    d: int
    a_dim: int
    ell: Matrix
    boundary: Matrix
    fiber_monodromy: Matrix
    T_rel: Matrix

    b_dim: int = 2

    def invariant_checks(self) -> dict[str, bool]:
        n = self.a_dim + self.b_dim
        identity = Matrix.identity(n)
        fixed = kernel(self.T_rel - identity)
        return {
            "ell injective": rank(self.ell) == self.b_dim,
            "boundary . ell = T_B - I": self.boundary @ self.ell == self.fiber_monodromy - Matrix.identity(2),
            "T_rel = I + ell . boundary": self.T_rel == identity + self.ell @ self.boundary,
            "fixed space = ker(boundary)": fixed == kernel(self.boundary) and fixed.dim == self.a_dim,
        }

    def verify(self) -> None:
        bad = [k for k, ok in self.invariant_checks().items() if not ok]
        if bad:
            raise AssertionError(f"monodromy assembly for d = {self.d} violates: {', '.join(bad)}")


def assemble_monodromy(d: int, a_dim: int, ell: Matrix | None = None) -> MonodromyAssembly:
    boundary = boundary_matrix(a_dim)
    ell = ell if ell is not None else ell_matrix(d, a_dim)
    t = Matrix.identity(a_dim + 2) + ell @ boundary
    return MonodromyAssembly(d, a_dim, ell, boundary, fiber_monodromy(d), t)


def build_relative_monodromy(d: int) -> MonodromyAssembly:
    _check_d(d)
    h_Y = build_surface_model(d, with_monodromy=False).h_Y
    a_dim, _ = chase_invariant_dim(d, h_Y)
    asm = assemble_monodromy(d, a_dim)
    asm.verify()
    return asm


# the full model


@dataclass(frozen=True)
class SurfaceModel:
    d: int
    euler_Z: int
    h_Z: tuple[int, ...]
    h_D: tuple[int, ...]
    hc_Y: tuple[int, ...]
    h_Y: tuple[int, ...]
    h_rel: tuple[int, ...]
    assembly: MonodromyAssembly | None = None
    chases: dict[str, list[ExactSequenceSpec]] = field(default_factory=dict, compare=False)

    @property
    def T_rel(self) -> Matrix:
        return self.assembly.T_rel

    @cached_property
    def N_rel(self) -> Matrix:
        return unipotent_log(self.T_rel)

    @cached_property
    def N_cohomology(self) -> Matrix:
        """The log of the dual monodromy acting on ``H^2(Y, Y_b)``."""
        return self.N_rel.transpose()

    @property
    def fiber_monodromy(self) -> Matrix:
        return self.assembly.fiber_monodromy

    def relative_groups(self) -> dict[int, Matrix]:
        """Nonzero groups ``H^{n+a}(Y, Y_b)`` keyed by ``a`` with their operator N."""
        out = {}
        for k, dim in enumerate(self.h_rel):
            if dim == 0:
                continue
            if k != 2:
                raise ValueError(f"no operator modeled on H^{k}(Y, Y_b)")
            out[k - N_DIM] = self.N_cohomology
        return out


def build_surface_model(d: int, *, with_monodromy: bool = True) -> SurfaceModel:
    _check_d(d)
    h_Z = betti_Z()
    euler = sum((-1) ** i * b for i, b in enumerate(h_Z))
    h_D, d_specs = chase_h_D(d)
    hc_Y, hc_specs = chase_hc_Y(d, h_Z, h_D)
    h_Y = tuple(reversed(hc_Y))  # Poincare duality on the smooth 4-manifold Y
    h_rel, rel_specs = chase_h_rel(h_Y)
    chases = {"h_D": d_specs or [], "hc_Y": hc_specs, "h_rel": rel_specs}

    asm = None
    if with_monodromy:
        a_dim, hom_specs = chase_invariant_dim(d, h_Y)
        chases["H_2 invariants"] = hom_specs
        asm = assemble_monodromy(d, a_dim)
        asm.verify()
        if asm.a_dim + asm.b_dim != h_rel[2]:
            raise ChaseFailed("monodromy basis does not match dim H^2(Y, Y_b)")
    return SurfaceModel(d, euler, h_Z, h_D, hc_Y, h_Y, h_rel, asm, chases)


def fano_type(model: SurfaceModel) -> bool:
    """``N^{n-|a|} != 0`` and ``N^{n-|a|+1} = 0`` on every nonzero ``H^{n+a}(Y, Y_b)``."""
    for a, n_op in model.relative_groups().items():
        k = N_DIM - abs(a)
        if (n_op ** k).is_zero() or not (n_op ** (k + 1)).is_zero():
            return False
    return True


def fixed_space(model: SurfaceModel) -> Subspace:
    return kernel(model.T_rel - Matrix.identity(model.T_rel.rows))
