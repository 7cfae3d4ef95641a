"""Matrix-unit representation data for the finite-dimensional fiber.

A MatrixRep stores, for each pair (i, j) of ambient indices, the d x d matrix
by which the gl matrix unit E_ij acts on the fiber.  validate_rep checks the
commutator table [E_ij, E_kl] = delta_jk E_il - delta_li E_kj on every index
quadruple and reports whether the identity sum(E_ii) acts as zero (required
when the fiber feeds the divergence-free jet module, advisory otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .linalg import Matrix, mat_add, mat_identity, mat_is_zero, mat_mul, mat_scale, mat_sub, mat_zero
from .scalars import SC_ONE, SC_ZERO, Scalar


@dataclass(frozen=True)
class MatrixRep:
    """Action of the N x N matrix units on a d-dimensional space.

    units[a][b] is the matrix of E_{a+1, b+1} (0-based storage of 1-based units).
    """

    n: int
    d: int
    units: Tuple[Tuple[Matrix, ...], ...]

    def unit(self, i: int, j: int) -> Matrix:
        """Matrix of E_ij, 1-based indices."""
        return self.units[i - 1][j - 1]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "E": [[[[c.to_json() for c in row] for row in mat] for mat in mats] for mats in self.units],
        }

    @staticmethod
    def from_json(obj: dict) -> "MatrixRep":
        n, d = int(obj["n"]), int(obj["d"])
        units = tuple(
            tuple(
                tuple(tuple(Scalar.from_json(c) for c in row) for row in mat)
                for mat in mats
            )
            for mats in obj["E"]
        )
        rep = MatrixRep(n, d, units)
        if len(units) != n or any(len(row) != n for row in units):
            raise ValueError("matrix-unit table has wrong shape")
        for mats in units:
            for mat in mats:
                if len(mat) != d or any(len(r) != d for r in mat):
                    raise ValueError("matrix-unit entries have wrong dimension")
        return rep


@dataclass
class RepReport:
    commutator_failures: List[str] = field(default_factory=list)
    trace_zero: bool = True

    @property
    def commutators_ok(self) -> bool:
        return not self.commutator_failures


def validate_rep(rep: MatrixRep) -> RepReport:
    """Check all matrix-unit commutator relations and the identity-acts-as-zero condition."""
    report = RepReport()
    n, d = rep.n, rep.d
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            eij = rep.unit(i, j)
            for k in range(1, n + 1):
                ekl_row = rep.units[k - 1]
                for l in range(1, n + 1):
                    ekl = ekl_row[l - 1]
                    lhs = mat_sub(mat_mul(eij, ekl), mat_mul(ekl, eij))
                    rhs = mat_zero(d, d)
                    if j == k:
                        rhs = mat_add(rhs, rep.unit(i, l))
                    if l == i:
                        rhs = mat_sub(rhs, rep.unit(k, j))
                    if lhs != rhs:
                        report.commutator_failures.append(f"[E_{i}{j}, E_{k}{l}] relation fails")
    total = mat_zero(d, d)
    for i in range(1, n + 1):
        total = mat_add(total, rep.unit(i, i))
    report.trace_zero = mat_is_zero(total)
    return report


def natural_rep(n: int) -> MatrixRep:
    """The defining action: d = n, E_ij sends e_j to e_i.

    The identity acts as the identity here, so the divergence-free jet
    constructor will not accept it; use traceless_natural_rep there.
    """
    units = tuple(
        tuple(
            tuple(
                tuple(SC_ONE if (r == i and c == j) else SC_ZERO for c in range(n))
                for r in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )
    return MatrixRep(n, n, units)


def trivial_rep(n: int) -> MatrixRep:
    """One-dimensional fiber on which every matrix unit acts as zero."""
    zero = ((SC_ZERO,),)
    units = tuple(tuple(zero for _ in range(n)) for _ in range(n))
    return MatrixRep(n, 1, units)


def traceless_natural_rep(n: int) -> MatrixRep:
    """Natural action with the diagonal shifted so sum(E_ii) acts as zero.

    Off-diagonal units are unchanged; E_ii acts as the elementary unit minus
    (1/n) times the identity.  The commutator table is preserved because the
    shift is central.
    """
    base = natural_rep(n)
    shift = mat_scale(Scalar(Fraction(-1, n)), mat_identity(n))
    units = tuple(
        tuple(
            mat_add(base.units[i][j], shift) if i == j else base.units[i][j]
            for j in range(n)
        )
        for i in range(n)
    )
    return MatrixRep(n, n, units)


def rep_from_spec(spec: str, n: int) -> MatrixRep:
    """Resolve a named preset rep: natural | trivial | traceless-natural."""
    if spec == "natural":
        return natural_rep(n)
    if spec == "trivial":
        return trivial_rep(n)
    if spec == "traceless-natural":
        return traceless_natural_rep(n)
    raise ValueError(f"unknown representation spec: {spec!r}")
