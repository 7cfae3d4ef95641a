"""Windowed graded weight modules and the explicit module actions.

The modules here all have shape (fiber) (x) (Laurent monomials): a vector of a
d-dimensional fiber sitting at each integer degree.  Computations are
truncated to a degree window [-K, K]^N; producing nonzero support outside the
window raises WindowOverflowError rather than truncating silently (silent
truncation would fabricate axiom violations downstream).

JetModuleS carries the divergence-free jet action

    D(u,r) . w@s = [(u|s+beta) I + sum_{i,j} u_i r_j E_ji] w @ (s+r)   (r != 0)
    D(u,0) . w@s = (u|alpha+s) w @ s
    t^r    . w@s = w @ (s+r)

and requires a fiber on which the identity matrix acts as zero.  JetModuleH
carries the Hamiltonian analogue for even N, whose degree-r generator acts by

    [(bar(r)|s) + (r|beta)] I + (quadratic matrix-unit combination in r)

with the double-indexed part of the combination summed over a configurable
index range (see h_matrix; the shipped default is the one that satisfies the
module axiom for all even N).

MapModule extends a jet module by a coefficient algebra B with evaluation
data (psi, phi), a nonzero scalar c and a bilinear form f:

    t^r (x) b     -> c psi(b) shift_r        (r != 0)
    t^0 (x) b     -> c phi(b) id
    D(u,r) (x) b  -> psi(b) (base action)    (r != 0)
    D(u,0) (x) b  -> [f(u,b) + (u|s) psi(b)] id on degree s
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .balgebra import BAlgebra, BElem
from .lie import LieContext, LieElem, der_groups, elem_monomial, fun_groups, hamiltonian_component, trivial_context
from .linalg import Matrix, mat_add, mat_apply, mat_identity, mat_scale, rank
from .reps import MatrixRep, validate_rep
from .scalars import (
    SC_ONE,
    SC_ZERO,
    CoefVec,
    ExpVec,
    Rat,
    Scalar,
    as_scalar,
    bar,
    coef_vec,
    is_zero_vec,
    pair,
    vec_add,
)

H_CONVENTIONS = ("split", "i<j", "i<=j", "all")


class WindowOverflowError(Exception):
    """A module action produced nonzero support outside the degree window."""

    def __init__(self, degree: ExpVec, stage: Optional[int] = None):
        self.degree = degree
        self.stage = stage
        where = f" at word stage {stage}" if stage is not None else ""
        super().__init__(f"support escaped the window at degree {list(degree)}{where}")


@dataclass(frozen=True)
class Window:
    """Degrees restricted to [-k, k] componentwise."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("window size must be >= 1")

    def contains(self, deg: ExpVec) -> bool:
        k = self.k
        return all(-k <= a <= k for a in deg)

    def degrees(self, n: int) -> List[ExpVec]:
        return list(itertools.product(range(-self.k, self.k + 1), repeat=n))


class ModVec:
    """Sparse degree-graded vector: a fiber vector at each supported degree."""

    __slots__ = ("module", "support")

    def __init__(self, module, support: Optional[Dict[ExpVec, Tuple[Scalar, ...]]] = None):
        self.module = module
        self.support: Dict[ExpVec, Tuple[Scalar, ...]] = {}
        if support:
            for deg, vec in support.items():
                if any(vec):
                    if not module.window.contains(deg):
                        raise WindowOverflowError(deg)
                    self.support[deg] = tuple(vec)

    def __add__(self, other: "ModVec") -> "ModVec":
        if self.module is not other.module:
            raise ValueError("vectors belong to different modules")
        out = dict(self.support)
        for deg, vec in other.support.items():
            if deg in out:
                out[deg] = tuple(a + b for a, b in zip(out[deg], vec))
            else:
                out[deg] = vec
        return ModVec(self.module, out)

    def __sub__(self, other: "ModVec") -> "ModVec":
        return self + other.scale(Scalar(-1))

    def scale(self, c: Union[Scalar, Rat]) -> "ModVec":
        cs = as_scalar(c)
        return ModVec(self.module, {deg: tuple(cs * a for a in vec) for deg, vec in self.support.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModVec):
            return NotImplemented
        return self.module is other.module and self.support == other.support

    def is_zero(self) -> bool:
        return not self.support

    def sorted_support(self) -> List[Tuple[ExpVec, Tuple[Scalar, ...]]]:
        return sorted(self.support.items())

    def __repr__(self):
        if not self.support:
            return "0"
        return " + ".join(f"{list(vec)}@t^{list(deg)}" for deg, vec in self.sorted_support())

    def to_json(self) -> dict:
        return {
            "support": [
                {"deg": list(deg), "vec": [c.to_json() for c in vec]}
                for deg, vec in self.sorted_support()
            ]
        }

    @staticmethod
    def from_json(module, obj: dict) -> "ModVec":
        support: Dict[ExpVec, Tuple[Scalar, ...]] = {}
        for entry in obj["support"]:
            deg = tuple(int(x) for x in entry["deg"])
            vec = tuple(Scalar.from_json(c) for c in entry["vec"])
            if len(deg) != module.n or len(vec) != module.dim:
                raise ValueError("vector entry has wrong shape for the module")
            if deg in support:
                vec = tuple(a + b for a, b in zip(support[deg], vec))
            support[deg] = vec
        return ModVec(module, support)


def unit_combination(rep: MatrixRep, u: CoefVec, r: ExpVec) -> Matrix:
    """sum_{i,j} u_i r_j E_ji on the fiber (the jet-action matrix term)."""
    d = rep.d
    acc_re = [[0] * d for _ in range(d)]
    acc_im = [[0] * d for _ in range(d)]
    for i0, ui in enumerate(u):
        if not ui:
            continue
        for j0, rj in enumerate(r):
            if not rj:
                continue
            cre = ui.re * rj
            cim = ui.im * rj
            unit = rep.units[j0][i0]
            for a in range(d):
                row = unit[a]
                are = acc_re[a]
                aim = acc_im[a]
                for bcol in range(d):
                    e = row[bcol]
                    if e.re or e.im:
                        are[bcol] = are[bcol] + cre * e.re - cim * e.im
                        aim[bcol] = aim[bcol] + cre * e.im + cim * e.re
    return tuple(
        tuple(Scalar(acc_re[a][bcol], acc_im[a][bcol]) for bcol in range(d)) for a in range(d)
    )


class _JetModule:
    """Shared plumbing for the two jet-module flavours (fiber at every degree)."""

    n: int
    rep: MatrixRep
    alpha: CoefVec
    beta: CoefVec
    window: Window
    ctx: LieContext

    @property
    def dim(self) -> int:
        return self.rep.d

    def zero_vec(self) -> ModVec:
        return ModVec(self)

    def basis_vec(self, deg: Sequence[int], idx: int) -> ModVec:
        d = tuple(int(x) for x in deg)
        vec = tuple(SC_ONE if i == idx else SC_ZERO for i in range(self.dim))
        return ModVec(self, {d: vec})

    def vec(self, support: Dict[ExpVec, Sequence[Union[Scalar, Rat]]]) -> ModVec:
        return ModVec(self, {tuple(deg): coef_vec(v) for deg, v in support.items()})

    # hooks implemented by the flavours ------------------------------------------

    def der_matrix(self, u: CoefVec, r: ExpVec, s: ExpVec) -> Matrix:
        raise NotImplementedError

    def _shift_factor(self, r: ExpVec, b_idx: int) -> Scalar:
        return SC_ONE

    def _der_matrix_b(self, u: CoefVec, r: ExpVec, b_idx: int, s: ExpVec) -> Matrix:
        return self.der_matrix(u, r, s)

    # generic action --------------------------------------------------------------

    def _groups(self, elem: LieElem):
        funs = sorted(fun_groups(elem).items())
        ders = sorted(der_groups(elem).items())
        return funs, ders

    def act(self, elem: LieElem, v: ModVec) -> ModVec:
        if elem.ctx != self.ctx:
            raise ValueError("element context does not match the module")
        if v.module is not self:
            raise ValueError("vector belongs to a different module")
        funs, ders = self._groups(elem)
        out: Dict[ExpVec, List[Scalar]] = {}

        def deposit(deg: ExpVec, vec: Sequence[Scalar]):
            if not any(vec):
                return
            if not self.window.contains(deg):
                raise WindowOverflowError(deg)
            if deg in out:
                acc = out[deg]
                for i, x in enumerate(vec):
                    acc[i] = acc[i] + x
            else:
                out[deg] = list(vec)

        for s, vec in v.support.items():
            for (r, b_idx), coef in funs:
                factor = self._shift_factor(r, b_idx) * coef
                if factor:
                    deposit(vec_add(s, r), [factor * x for x in vec])
            for (r, b_idx), u in ders:
                mat = self._der_matrix_b(u, r, b_idx, s)
                deposit(vec_add(s, r), mat_apply(mat, vec))
        return ModVec(self, {deg: tuple(vec) for deg, vec in out.items()})

    def act_matrix(self, elem: LieElem, s: ExpVec) -> Matrix:
        """Matrix of a degree-homogeneous element from the degree-s fiber."""
        if elem.ctx != self.ctx:
            raise ValueError("element context does not match the module")
        if elem.is_zero():
            return mat_scale(SC_ZERO, mat_identity(self.dim))
        elem.homogeneous_degree()
        funs, ders = self._groups(elem)
        mat = None
        for (r, b_idx), coef in funs:
            contrib = mat_scale(self._shift_factor(r, b_idx) * coef, mat_identity(self.dim))
            mat = contrib if mat is None else mat_add(mat, contrib)
        for (r, b_idx), u in ders:
            contrib = self._der_matrix_b(u, r, b_idx, s)
            mat = contrib if mat is None else mat_add(mat, contrib)
        return mat


class JetModuleS(_JetModule):
    """Jet module for the divergence-free algebra: traceless fiber, parameters alpha, beta."""

    def __init__(
        self,
        n: int,
        rep: MatrixRep,
        alpha: Sequence[Union[Scalar, Rat]],
        beta: Sequence[Union[Scalar, Rat]],
        window: Window,
    ):
        if rep.n != n:
            raise ValueError("representation ambient size differs from N")
        report = validate_rep(rep)
        if not report.commutators_ok:
            raise ValueError("matrix-unit commutator relations fail: " + report.commutator_failures[0])
        if not report.trace_zero:
            raise ValueError("the identity must act as zero on the fiber of this module")
        self.n = n
        self.rep = rep
        self.alpha = coef_vec(alpha)
        self.beta = coef_vec(beta)
        if len(self.alpha) != n or len(self.beta) != n:
            raise ValueError("alpha/beta must have length N")
        self.window = window
        self.ctx = trivial_context(n)

    def der_matrix(self, u: CoefVec, r: ExpVec, s: ExpVec) -> Matrix:
        if is_zero_vec(r):
            scal = pair(u, self.alpha) + pair(u, s)
            return mat_scale(scal, mat_identity(self.dim))
        if pair(u, r):
            raise ValueError("derivation component is not divergence free")
        scal = pair(u, self.beta) + pair(u, s)
        mat = unit_combination(self.rep, u, r)
        return tuple(
            tuple(cell + scal if i == j else cell for j, cell in enumerate(row))
            for i, row in enumerate(mat)
        )


class JetModuleH(_JetModule):
    """Jet module for the Hamiltonian algebra (even N), parameters alpha, beta.

    convention selects the index range of the double-indexed matrix terms:
    'split' (default: unordered pairs for the two symmetric groups, all
    ordered pairs for the mixed group), 'i<j', 'i<=j', or 'all'.
    """

    def __init__(
        self,
        n: int,
        rep: MatrixRep,
        alpha: Sequence[Union[Scalar, Rat]],
        beta: Sequence[Union[Scalar, Rat]],
        window: Window,
        convention: str = "split",
    ):
        if n % 2 != 0:
            raise ValueError("the Hamiltonian module needs an even number of variables")
        if rep.n != n:
            raise ValueError("representation ambient size differs from N")
        report = validate_rep(rep)
        if not report.commutators_ok:
            raise ValueError("matrix-unit commutator relations fail: " + report.commutator_failures[0])
        if convention not in H_CONVENTIONS:
            raise ValueError(f"unknown index convention {convention!r}; choose from {H_CONVENTIONS}")
        self.n = n
        self.rep = rep
        self.alpha = coef_vec(alpha)
        self.beta = coef_vec(beta)
        if len(self.alpha) != n or len(self.beta) != n:
            raise ValueError("alpha/beta must have length N")
        self.window = window
        self.convention = convention
        self.ctx = trivial_context(n)
        self._h_cache: Dict[ExpVec, Matrix] = {}

    def h_matrix(self, r: ExpVec) -> Matrix:
        """Matrix-unit part of the degree-r generator action (quadratic in r)."""
        cached = self._h_cache.get(r)
        if cached is not None:
            return cached
        m = self.n // 2
        acc: Dict[Tuple[int, int], int] = {}

        def add(row: int, col: int, c: int):
            if c:
                acc[(row, col)] = acc.get((row, col), 0) + c

        for i in range(m):
            add(m + i, i, r[m + i] * r[m + i])
            add(i, i, r[i] * r[m + i])
            add(m + i, m + i, -r[i] * r[m + i])
            add(i, m + i, -r[i] * r[i])

        if self.convention == "i<j":
            sym_pairs = mixed_pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
        elif self.convention == "i<=j":
            sym_pairs = mixed_pairs = [(i, j) for i in range(m) for j in range(i, m)]
        elif self.convention == "all":
            sym_pairs = mixed_pairs = [(i, j) for i in range(m) for j in range(m)]
        else:  # split
            sym_pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
            mixed_pairs = [(i, j) for i in range(m) for j in range(m) if i != j]

        for i, j in sym_pairs:
            c1 = r[m + i] * r[m + j]
            add(m + j, i, c1)
            add(m + i, j, c1)
            c3 = -r[i] * r[j]
            add(i, m + j, c3)
            add(j, m + i, c3)
        for i, j in mixed_pairs:
            c2 = r[i] * r[m + j]
            add(i, j, c2)
            add(m + j, m + i, -c2)

        d = self.dim
        rows = [[SC_ZERO] * d for _ in range(d)]
        for (row, col), c in acc.items():
            unit = self.rep.units[row][col]
            for a in range(d):
                ua = unit[a]
                for bcol in range(d):
                    if ua[bcol]:
                        rows[a][bcol] = rows[a][bcol] + ua[bcol] * c
        mat = tuple(tuple(row) for row in rows)
        self._h_cache[r] = mat
        return mat

    def der_matrix(self, u: CoefVec, r: ExpVec, s: ExpVec) -> Matrix:
        if is_zero_vec(r):
            scal = pair(u, self.alpha) + pair(u, s)
            return mat_scale(scal, mat_identity(self.dim))
        mu = hamiltonian_component(u, r)
        if mu is None:
            raise ValueError("derivation component is outside the Hamiltonian span")
        scal = pair(bar(r), s) + pair(self.beta, r)
        hmat = self.h_matrix(r)
        base = tuple(
            tuple(cell + scal if i == j else cell for j, cell in enumerate(row))
            for i, row in enumerate(hmat)
        )
        return base if mu == SC_ONE else mat_scale(mu, base)


class MapModule(_JetModule):
    """A jet module extended by a coefficient algebra B via (psi, phi, c, f)."""

    def __init__(
        self,
        base: _JetModule,
        algebra: BAlgebra,
        c: Union[Scalar, Rat] = 1,
        f: Optional[Sequence[Sequence[Union[Scalar, Rat]]]] = None,
    ):
        self.base = base
        self.n = base.n
        self.rep = base.rep
        self.alpha = base.alpha
        self.beta = base.beta
        self.window = base.window
        self.algebra = algebra
        self.c = as_scalar(c)
        if not self.c:
            raise ValueError("the zero-degree scalar c must be nonzero")
        if f is None:
            f = [
                [base.alpha[i] if k == 0 else SC_ZERO for k in range(algebra.dim)]
                for i in range(base.n)
            ]
        self.f = tuple(coef_vec(row) for row in f)
        if len(self.f) != base.n or any(len(row) != algebra.dim for row in self.f):
            raise ValueError("f must be an N x dim(B) matrix")
        for i in range(base.n):
            if self.f[i][0] != base.alpha[i]:
                raise ValueError("f(., unit) must agree with the base weight alpha")
        self.ctx = LieContext(base.n, algebra)

    @property
    def weight(self) -> CoefVec:
        return self.base.alpha

    def f_value(self, u: CoefVec, b_idx: int) -> Scalar:
        acc = SC_ZERO
        for ui, row in zip(u, self.f):
            if ui:
                acc = acc + ui * row[b_idx]
        return acc

    def f_elem_value(self, u: CoefVec, b: BElem) -> Scalar:
        acc = SC_ZERO
        for k, coord in enumerate(b.coords):
            if coord:
                acc = acc + coord * self.f_value(u, k)
        return acc

    def _shift_factor(self, r: ExpVec, b_idx: int) -> Scalar:
        if is_zero_vec(r):
            return self.c * self.algebra.phi[b_idx]
        return self.c * self.algebra.psi[b_idx]

    def _der_matrix_b(self, u: CoefVec, r: ExpVec, b_idx: int, s: ExpVec) -> Matrix:
        if is_zero_vec(r):
            scal = self.f_value(u, b_idx) + pair(u, s) * self.algebra.psi[b_idx]
            return mat_scale(scal, mat_identity(self.dim))
        psi_b = self.algebra.psi[b_idx]
        base = self.base.der_matrix(u, r, s)
        return base if psi_b == SC_ONE else mat_scale(psi_b, base)

    def der_matrix(self, u: CoefVec, r: ExpVec, s: ExpVec) -> Matrix:
        return self._der_matrix_b(u, r, 0, s)


def apply_word(ops: Sequence[LieElem], v: ModVec) -> ModVec:
    """Apply a word of Lie elements right-to-left (the last op acts first).

    Window overflow reports the 0-based stage (position in ops) that failed.
    """
    module = v.module
    out = v
    for stage in range(len(ops) - 1, -1, -1):
        try:
            out = module.act(ops[stage], out)
        except WindowOverflowError as exc:
            raise WindowOverflowError(exc.degree, stage=stage) from None
    return out


def weight_multiplicities(module: _JetModule) -> Dict[ExpVec, int]:
    """Fiber dimension at every window degree (constant d for these modules)."""
    return {deg: module.dim for deg in module.window.degrees(module.n)}


@dataclass
class InjectivityLayer:
    source: ExpVec
    target: ExpVec
    rank: int
    injective: bool


@dataclass
class InjectivityReport:
    degree: ExpVec
    b_coords: Tuple[Scalar, ...]
    layers: List[InjectivityLayer]
    verdict: str

    def to_json(self) -> dict:
        return {
            "deg": list(self.degree),
            "b": [c.to_json() for c in self.b_coords],
            "layers": [
                {
                    "from": list(l.source),
                    "to": list(l.target),
                    "rank": l.rank,
                    "injective": l.injective,
                }
                for l in self.layers
            ],
            "verdict": self.verdict,
        }


def injectivity_diagnostic(module: _JetModule, r: Sequence[int], b: Optional[BElem] = None) -> InjectivityReport:
    """Rank of the degree-r monomial operator between every pair of adjacent window layers.

    Verdict 'injective-everywhere' if the operator has full column rank from
    each window degree whose shift stays in the window, else 'kernel-found'
    (the nilpotent branch of the dichotomy).
    """
    deg = tuple(int(x) for x in r)
    if is_zero_vec(deg):
        raise ValueError("the diagnostic needs a nonzero degree")
    elem = elem_monomial(module.ctx, deg, b)
    b_coords = b.coords if b is not None else module.ctx.algebra.unit_coords()
    layers: List[InjectivityLayer] = []
    all_injective = True
    for s in module.window.degrees(module.n):
        target = vec_add(s, deg)
        if not module.window.contains(target):
            continue
        mat = module.act_matrix(elem, s)
        rk = rank(mat)
        inj = rk == module.dim
        all_injective = all_injective and inj
        layers.append(InjectivityLayer(s, target, rk, inj))
    verdict = "injective-everywhere" if all_injective else "kernel-found"
    return InjectivityReport(deg, tuple(b_coords), layers, verdict)
