"""Finite-dimensional commutative associative unital coefficient algebras.

An algebra B is given by an explicit structure-constant table over a chosen
basis b_0, ..., b_{K-1}, with b_0 always the unit.  Each instance also carries
the evaluation data used by the module constructions: an algebra homomorphism
psi: B -> scalars with psi(1) = 1 and a linear form phi: B -> scalars with
phi(1) = 1.

Only explicit tables (plus the truncated-polynomial convenience constructor)
are supported; every shipped constructor passes validate().
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .scalars import SC_ONE, SC_ZERO, Rat, Scalar, as_scalar, coef_vec

Coords = Tuple[Scalar, ...]


class BAlgebra:
    """Commutative associative unital algebra with psi and phi evaluation data.

    mult[i][j] is the coordinate vector of the product b_i * b_j.
    """

    def __init__(
        self,
        dim: int,
        names: Sequence[str],
        mult: Sequence[Sequence[Sequence[Union[Scalar, Rat]]]],
        psi: Sequence[Union[Scalar, Rat]],
        phi: Sequence[Union[Scalar, Rat]],
    ):
        if dim < 1:
            raise ValueError("algebra dimension must be >= 1")
        if len(names) != dim or len(mult) != dim or len(psi) != dim or len(phi) != dim:
            raise ValueError("inconsistent table sizes for algebra dimension")
        self.dim = dim
        self.names = tuple(str(x) for x in names)
        self.mult: Tuple[Tuple[Coords, ...], ...] = tuple(
            tuple(coef_vec(row_j) for row_j in row_i) for row_i in mult
        )
        for row in self.mult:
            for vec in row:
                if len(vec) != dim:
                    raise ValueError("structure-constant vectors must have length dim")
        self.psi: Coords = coef_vec(psi)
        self.phi: Coords = coef_vec(phi)

    # -- products -------------------------------------------------------------

    def mul_basis(self, i: int, j: int) -> Coords:
        return self.mult[i][j]

    def mul_coords(self, x: Coords, y: Coords) -> Coords:
        out: List[Scalar] = [SC_ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, m in enumerate(self.mult[i][j]):
                    if m:
                        out[k] = out[k] + c * m
        return tuple(out)

    def unit_coords(self) -> Coords:
        return tuple(SC_ONE if k == 0 else SC_ZERO for k in range(self.dim))

    def psi_value(self, x: Coords) -> Scalar:
        acc = SC_ZERO
        for xc, pc in zip(x, self.psi):
            acc = acc + xc * pc
        return acc

    def phi_value(self, x: Coords) -> Scalar:
        acc = SC_ZERO
        for xc, pc in zip(x, self.phi):
            acc = acc + xc * pc
        return acc

    # -- elements ---------------------------------------------------------------

    def unit(self) -> "BElem":
        return BElem(self, self.unit_coords())

    def basis_elem(self, k: int) -> "BElem":
        if not 0 <= k < self.dim:
            raise ValueError(f"basis index {k} out of range for dim {self.dim}")
        return BElem(self, tuple(SC_ONE if i == k else SC_ZERO for i in range(self.dim)))

    def elem(self, coords: Sequence[Union[Scalar, Rat]]) -> "BElem":
        v = coef_vec(coords)
        if len(v) != self.dim:
            raise ValueError("coordinate vector length mismatch")
        return BElem(self, v)

    # -- validation ---------------------------------------------------------------

    def validate(self) -> List[str]:
        """List every violated invariant; an empty report means valid."""
        report: List[str] = []
        d = self.dim
        for i in range(d):
            for j in range(i + 1, d):
                if self.mult[i][j] != self.mult[j][i]:
                    report.append(f"commutativity: {self.names[i]}*{self.names[j]} != {self.names[j]}*{self.names[i]}")
        for i in range(d):
            e_i = tuple(SC_ONE if k == i else SC_ZERO for k in range(d))
            if self.mult[0][i] != e_i:
                report.append(f"unit: 1*{self.names[i]} != {self.names[i]}")
            if self.mult[i][0] != e_i:
                report.append(f"unit: {self.names[i]}*1 != {self.names[i]}")
        for i in range(d):
            for j in range(d):
                ij = self.mult[i][j]
                for k in range(d):
                    left = self.mul_coords(ij, tuple(SC_ONE if t == k else SC_ZERO for t in range(d)))
                    right = self.mul_coords(
                        tuple(SC_ONE if t == i else SC_ZERO for t in range(d)), self.mult[j][k]
                    )
                    if left != right:
                        report.append(
                            f"associativity: ({self.names[i]}*{self.names[j]})*{self.names[k]}"
                            f" != {self.names[i]}*({self.names[j]}*{self.names[k]})"
                        )
        if self.psi[0] != SC_ONE:
            report.append("psi(1) != 1")
        for i in range(d):
            for j in range(i, d):
                lhs = self.psi_value(self.mult[i][j])
                rhs = self.psi[i] * self.psi[j]
                if lhs != rhs:
                    report.append(
                        f"psi homomorphism: psi({self.names[i]}*{self.names[j]})={lhs}"
                        f" != psi({self.names[i]})*psi({self.names[j]})={rhs}"
                    )
        if self.phi[0] != SC_ONE:
            report.append("phi(1) != 1")
        return report

    # -- equality / serialization ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, BAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.names == other.names
            and self.mult == other.mult
            and self.psi == other.psi
            and self.phi == other.phi
        )

    def __hash__(self):
        return hash((self.dim, self.names, self.mult, self.psi, self.phi))

    def __repr__(self):
        return f"BAlgebra(dim={self.dim}, names={list(self.names)})"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "names": list(self.names),
            "mult": [[[c.to_json() for c in vec] for vec in row] for row in self.mult],
            "psi": [c.to_json() for c in self.psi],
            "phi": [c.to_json() for c in self.phi],
        }

    @staticmethod
    def from_json(obj: dict) -> "BAlgebra":
        alg = BAlgebra(
            dim=int(obj["dim"]),
            names=obj["names"],
            mult=[[[Scalar.from_json(c) for c in vec] for vec in row] for row in obj["mult"]],
            psi=[Scalar.from_json(c) for c in obj["psi"]],
            phi=[Scalar.from_json(c) for c in obj["phi"]],
        )
        report = alg.validate()
        if report:
            raise ValueError("invalid algebra table: " + "; ".join(report))
        return alg


@dataclass(frozen=True)
class BElem:
    """An element of a BAlgebra, stored by coordinates over the basis."""

    algebra: BAlgebra
    coords: Coords

    def __mul__(self, other: "BElem") -> "BElem":
        if self.algebra != other.algebra:
            raise ValueError("algebra mismatch in product")
        return BElem(self.algebra, self.algebra.mul_coords(self.coords, other.coords))

    def __add__(self, other: "BElem") -> "BElem":
        if self.algebra != other.algebra:
            raise ValueError("algebra mismatch in sum")
        return BElem(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c: Union[Scalar, Rat]) -> "BElem":
        cs = as_scalar(c)
        return BElem(self.algebra, tuple(cs * a for a in self.coords))

    def psi(self) -> Scalar:
        return self.algebra.psi_value(self.coords)

    def phi(self) -> Scalar:
        return self.algebra.phi_value(self.coords)

    def is_zero(self) -> bool:
        return all(not c for c in self.coords)


def scalars_algebra() -> BAlgebra:
    """B = scalars themselves: the one-dimensional algebra with psi = phi = id."""
    return BAlgebra(1, ["1"], [[[SC_ONE]]], [SC_ONE], [SC_ONE])


def truncated_poly_algebra(
    m: int,
    psi: Optional[Sequence[Union[Scalar, Rat]]] = None,
    phi: Optional[Sequence[Union[Scalar, Rat]]] = None,
) -> BAlgebra:
    """The truncated polynomial algebra on one nilpotent generator x with x^(m+1) = 0.

    Basis 1, x, ..., x^m.  psi defaults to evaluation at 0 (psi(x^k) = 0 for
    k > 0, the only homomorphism since x is nilpotent); phi defaults to the
    same but may be any linear form with phi(1) = 1.
    """
    if m < 0:
        raise ValueError("truncation order must be >= 0")
    dim = m + 1
    names = ["1"] + [f"x^{k}" if k > 1 else "x" for k in range(1, dim)]
    mult = [
        [
            [SC_ONE if (i + j == k and i + j <= m) else SC_ZERO for k in range(dim)]
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    eval_at_zero = [SC_ONE] + [SC_ZERO] * m
    psi_v = coef_vec(psi) if psi is not None else tuple(eval_at_zero)
    phi_v = coef_vec(phi) if phi is not None else tuple(eval_at_zero)
    alg = BAlgebra(dim, names, mult, psi_v, phi_v)
    report = alg.validate()
    if report:
        raise ValueError("invalid evaluation data: " + "; ".join(report))
    return alg
