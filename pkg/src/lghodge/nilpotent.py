"""Jordan analysis of nilpotent operators and monodromy weight filtrations.

The weight filtration of a nilpotent ``N`` centered at ``m`` is built from a
Jordan basis: a chain ``v, Nv, ..., N^(s-1) v`` puts ``N^j v`` in weight
``m + (s - 1) - 2j``.  :func:`verify_filtration_axioms` re-checks the result
using subspace operations only, so it doubles as an independent oracle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .linalg import LinalgError, Matrix, ShapeError, Subspace, Vector, image, kernel, rank, solve


class NotNilpotent(LinalgError):
    pass


class NotUnipotent(LinalgError):
    pass


class CenterTooSmall(LinalgError):
    pass


def _require_square(m: Matrix) -> None:
    if not m.is_square():
        raise ShapeError(f"expected a square matrix, got {m.rows}x{m.cols}")


def is_nilpotent(n: Matrix) -> bool:
    _require_square(n)
    p = n
    for _ in range(n.rows):
        if p.is_zero():
            return True
        p = p @ n
    return False


@dataclass(frozen=True)
class NilpotentProfile:
    dim: int
    power_ranks: tuple[int, ...]
    partition: tuple[int, ...]
    chains: tuple[tuple[Vector, ...], ...]

    @property
    def nilpotency_index(self) -> int:
        return len(self.power_ranks) - 1

    def chain_basis(self) -> Matrix:
        """Chain vectors as columns, chain by chain."""
        return Matrix.from_columns([v for c in self.chains for v in c], self.dim)


def power_ranks(n: Matrix) -> tuple[int, ...]:
    """``(rank N^0, rank N^1, ..., 0)``; stops at the first zero power."""
    ranks = [n.rows]
    p = Matrix.identity(n.rows)
    while ranks[-1] > 0:
        p = p @ n
        r = rank(p)
        if r == ranks[-1]:
            raise NotNilpotent("operator is not nilpotent")
        ranks.append(r)
    return tuple(ranks)


def partition_from_ranks(ranks: tuple[int, ...]) -> tuple[int, ...]:
    r = list(ranks) + [0, 0]
    parts: list[int] = []
    for k in range(1, len(ranks)):
        parts += [k] * (r[k - 1] - 2 * r[k] + r[k + 1])
    return tuple(sorted(parts, reverse=True))


def jordan_profile(n: Matrix, *, reverse: bool = False) -> NilpotentProfile:
    """Jordan partition and a Jordan chain basis of a nilpotent operator.

    Chains are produced largest first.  For a block size ``s`` the bottoms of
    all chains of length ``>= s`` form a basis of ``im N^(s-1) & ker N``; new
    bottoms are taken greedily from the canonical basis of that space (in
    reverse order if ``reverse``) and lifted through ``N^(s-1)``.
    """
    _require_square(n)
    if not is_nilpotent(n):
        raise NotNilpotent("operator is not nilpotent")
    dim = n.rows
    ranks = power_ranks(n)
    ker_n = kernel(n)

    powers = [Matrix.identity(dim)]
    for _ in range(len(ranks)):
        powers.append(powers[-1] @ n)

    bottoms = Subspace.zero(dim)
    chains: list[tuple[Vector, ...]] = []
    for s in range(len(ranks) - 1, 0, -1):
        target = image(powers[s - 1]) & ker_n
        candidates = list(target.basis)
        if reverse:
            candidates.reverse()
        for u in candidates:
            if bottoms.dim == target.dim:
                break
            if u in bottoms:
                continue
            v = solve(powers[s - 1], u)
            assert v is not None
            chain = [v]
            for _ in range(s - 1):
                chain.append(n.apply(chain[-1]))
            chains.append(tuple(chain))
            bottoms = bottoms + Subspace.span([u], dim)

    partition = tuple(len(c) for c in chains)
    expected = partition_from_ranks(ranks)
    if partition != expected:  # pragma: no cover - guards the construction
        raise LinalgError(f"chain partition {partition} disagrees with rank partition {expected}")
    return NilpotentProfile(dim, ranks, partition, tuple(chains))


def partition_counts(partition) -> dict[int, int]:
    return dict(sorted(Counter(partition).items(), reverse=True))


def format_partition(partition) -> str:
    """``(3, 1, 1)`` -> ``"{3, 1^2}"``."""
    bits = []
    for size, count in partition_counts(partition).items():
        bits.append(f"{size}" if count == 1 else f"{size}^{count}")
    return "{" + ", ".join(bits) + "}"


def check_chains(n: Matrix, profile: NilpotentProfile) -> bool:
    """Each chain is a genuine Jordan chain and together they form a basis."""
    for chain in profile.chains:
        for a, b in zip(chain, chain[1:]):
            if n.apply(a) != b:
                return False
        if any(x != 0 for x in n.apply(chain[-1])):
            return False
    vecs = [v for c in profile.chains for v in c]
    return len(vecs) == profile.dim and Subspace.span(vecs, profile.dim).dim == profile.dim


# logarithm / exponential


def unipotent_log(t: Matrix) -> Matrix:
    """``log T = sum_{k>=1} (-1)^(k+1) (T - I)^k / k``; the series is finite."""
    _require_square(t)
    m = t - Matrix.identity(t.rows)
    if not is_nilpotent(m):
        raise NotUnipotent("T - I is not nilpotent")
    out = Matrix.zeros(t.rows)
    p = Matrix.identity(t.rows)
    for k in range(1, t.rows + 1):
        p = p @ m
        if p.is_zero():
            break
        out = out + p.scale(Fraction((-1) ** (k + 1), k))
    return out


def nilpotent_exp(n: Matrix) -> Matrix:
    _require_square(n)
    if not is_nilpotent(n):
        raise NotNilpotent("exp is only computed exactly for nilpotent operators")
    out = Matrix.identity(n.rows)
    p = Matrix.identity(n.rows)
    for k in range(1, n.rows + 1):
        p = p @ n
        if p.is_zero():
            break
        out = out + p.scale(Fraction(1, factorial(k)))
    return out


# weight filtration


@dataclass(frozen=True)
class WeightFiltration:
    center: int
    subspaces: tuple[Subspace, ...]

    @property
    def ambient_dim(self) -> int:
        return self.subspaces[-1].ambient_dim

    def W(self, k: int) -> Subspace:
        """``W_k`` with the conventions ``W_{<0} = 0`` and ``W_{>2m} = V``."""
        if k < 0:
            return Subspace.zero(self.ambient_dim)
        if k >= len(self.subspaces):
            return self.subspaces[-1]
        return self.subspaces[k]

    @property
    def graded_dims(self) -> tuple[int, ...]:
        return tuple(self.W(k).dim - self.W(k - 1).dim for k in range(2 * self.center + 1))

    def gr(self, k: int) -> int:
        if k < 0 or k > 2 * self.center:
            return 0
        return self.graded_dims[k]

    def shifted(self, offset: int) -> WeightFiltration:
        """Relabel ``W_k`` as ``W_{k + offset}`` (for negative tests)."""
        n = self.ambient_dim
        subs = tuple(self.W(k - offset) for k in range(2 * self.center + 1))
        subs = subs[:-1] + (Subspace.full(n),)
        return WeightFiltration(self.center, subs)

    def to_json_obj(self) -> dict:
        return {
            "center": self.center,
            "graded_dims": list(self.graded_dims),
            "bases": [w.to_json_obj() for w in self.subspaces],
        }


def weight_filtration(n: Matrix, m: int, *, reverse: bool = False) -> WeightFiltration:
    _require_square(n)
    if m < 0:
        raise CenterTooSmall("center must be nonnegative")
    if not is_nilpotent(n):
        raise NotNilpotent("operator is not nilpotent")
    if not (n ** (m + 1)).is_zero():
        raise CenterTooSmall(f"N^{m + 1} != 0, so no weight filtration centered at {m}")
    profile = jordan_profile(n, reverse=reverse)
    weighted: list[tuple[int, Vector]] = []
    for chain in profile.chains:
        s = len(chain)
        for j, v in enumerate(chain):
            weighted.append((m + (s - 1) - 2 * j, v))
    subs = tuple(
        Subspace.span([v for w, v in weighted if w <= k], n.rows) for k in range(2 * m + 1)
    )
    return WeightFiltration(m, subs)


@dataclass(frozen=True)
class FiltrationReport:
    nested: bool
    exhaustive: bool
    lowers_weight: bool
    hard_lefschetz: bool

    @property
    def ok(self) -> bool:
        return self.nested and self.exhaustive and self.lowers_weight and self.hard_lefschetz


def verify_filtration_axioms(n: Matrix, w: WeightFiltration) -> FiltrationReport:
    """Check ``N W_i <= W_{i-2}`` and that ``N^l: gr_{m+l} -> gr_{m-l}`` is an iso.

    Only subspace arithmetic is used.  The induced map on graded pieces has
    image ``(N^l W_{m+l} + W_{m-l-1}) / W_{m-l-1}``, so it is an isomorphism
    exactly when that quotient and both graded pieces share one dimension.
    """
    _require_square(n)
    if n.rows != w.ambient_dim:
        raise ShapeError("filtration and operator live on different spaces")
    m = w.center
    top = 2 * m
    nested = all(w.W(k - 1) <= w.W(k) for k in range(top + 1))
    exhaustive = w.W(top).dim == n.rows
    lowers = all(w.W(i).image_under(n) <= w.W(i - 2) for i in range(top + 1))
    lefschetz = True
    nl = Matrix.identity(n.rows)
    for l in range(m + 1):
        if l:
            nl = nl @ n
        below = w.W(m - l - 1)
        im_dim = (w.W(m + l).image_under(nl) + below).dim - below.dim
        if not (w.gr(m + l) == w.gr(m - l) == im_dim):
            lefschetz = False
            break
    return FiltrationReport(nested, exhaustive, lowers, lefschetz)
