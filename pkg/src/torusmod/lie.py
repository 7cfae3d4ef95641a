"""Sparse elements of the map extended Witt algebra and its subalgebras.

An element lives in (W_N |x A_N) (x) B: a formal linear combination of basis
terms t^r (x) b_k (Laurent monomials, kind FUN) and t^r d_i (x) b_k
(derivations, kind DER), with Gaussian-rational coefficients.  Terms are kept
in a dict keyed by (kind, i, deg, b) with zero coefficients pruned after every
operation, so structural equality is the test oracle.

Basis brackets (degree derivation d_i = t_i d/dt_i, indices 1-based):

    [t^r d_i, t^s d_j] = s_i t^(r+s) d_j - r_j t^(r+s) d_i
    [t^r d_i, t^s]     = s_i t^(r+s)
    [t^r, t^s]         = 0

and B components multiply through the structure-constant table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .balgebra import BAlgebra, BElem, scalars_algebra
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

FUN = 0
DER = 1

# (kind, i, deg, b): i is the 1-based derivation index, 0 for FUN terms.
BasisKey = Tuple[int, int, ExpVec, int]


@dataclass(frozen=True)
class LieContext:
    """Shared shape data: the number of torus variables and the coefficient algebra."""

    n: int
    algebra: BAlgebra

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one torus variable")


def trivial_context(n: int) -> LieContext:
    return LieContext(n, scalars_algebra())


class ContextMismatch(ValueError):
    pass


class LieElem:
    """Immutable sparse linear combination of basis terms over one context."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: LieContext, terms: Optional[Dict[BasisKey, Scalar]] = None):
        self.ctx = ctx
        self.terms: Dict[BasisKey, Scalar] = {}
        if terms:
            for key, coef in terms.items():
                if coef:
                    self.terms[key] = coef

    # -- ring-module operations ----------------------------------------------

    def __add__(self, other: "LieElem") -> "LieElem":
        _check_ctx(self, other)
        out = dict(self.terms)
        for key, coef in other.terms.items():
            acc = out.get(key)
            s = coef if acc is None else acc + coef
            if s:
                out[key] = s
            elif acc is not None:
                del out[key]
        return LieElem(self.ctx, out)

    def __sub__(self, other: "LieElem") -> "LieElem":
        return self + (-other)

    def __neg__(self) -> "LieElem":
        return LieElem(self.ctx, {key: -coef for key, coef in self.terms.items()})

    def scale(self, c: Union[Scalar, Rat]) -> "LieElem":
        cs = as_scalar(c)
        if not cs:
            return LieElem(self.ctx)
        return LieElem(self.ctx, {key: cs * coef for key, coef in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElem):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_support(self) -> set:
        return {key[2] for key in self.terms}

    def homogeneous_degree(self) -> ExpVec:
        degs = self.degree_support()
        if len(degs) != 1:
            raise ValueError(f"element is not degree-homogeneous: degrees {sorted(degs)}")
        return next(iter(degs))

    def sorted_terms(self) -> List[Tuple[BasisKey, Scalar]]:
        # canonical order: kind, then lexicographic degree, then i, then b
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][2], kv[0][1], kv[0][3]))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (kind, i, deg, b), coef in self.sorted_terms():
            head = f"t^{list(deg)}" if kind == FUN else f"t^{list(deg)}d_{i}"
            suffix = "" if b == 0 else f"(x){self.ctx.algebra.names[b]}"
            bits.append(f"({coef})*{head}{suffix}")
        return " + ".join(bits)

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> list:
        out = []
        for (kind, i, deg, b), coef in self.sorted_terms():
            entry = {"kind": "fun" if kind == FUN else "der", "deg": list(deg), "b": b, "coef": coef.to_json()}
            if kind == DER:
                entry["i"] = i
            out.append(entry)
        return out

    @staticmethod
    def from_json(ctx: LieContext, obj: Iterable[dict]) -> "LieElem":
        terms: Dict[BasisKey, Scalar] = {}
        for entry in obj:
            kind_s = entry["kind"]
            if kind_s == "fun":
                kind, i = FUN, 0
            elif kind_s == "der":
                kind, i = DER, int(entry["i"])
                if not 1 <= i <= ctx.n:
                    raise ContextMismatch(f"derivation index {i} out of range 1..{ctx.n}")
            else:
                raise ValueError(f"unknown term kind: {kind_s!r}")
            deg = tuple(int(x) for x in entry["deg"])
            if len(deg) != ctx.n:
                raise ContextMismatch(f"degree {deg} has wrong length for N={ctx.n}")
            b = int(entry.get("b", 0))
            if not 0 <= b < ctx.algebra.dim:
                raise ContextMismatch(f"coefficient-algebra index {b} out of range")
            coef = Scalar.from_json(entry["coef"])
            key = (kind, i, deg, b)
            acc = terms.get(key, SC_ZERO) + coef
            if acc:
                terms[key] = acc
            elif key in terms:
                del terms[key]
        return LieElem(ctx, terms)


def _check_ctx(x: LieElem, y: LieElem):
    if x.ctx != y.ctx:
        raise ContextMismatch("elements live over different contexts")


def _b_coords(ctx: LieContext, b: Union[BElem, int, None]) -> Tuple[Scalar, ...]:
    if b is None:
        return ctx.algebra.unit_coords()
    if isinstance(b, int):
        return ctx.algebra.basis_elem(b).coords
    if b.algebra != ctx.algebra:
        raise ContextMismatch("coefficient-algebra element from a different algebra")
    return b.coords


# -- constructors -------------------------------------------------------------


def zero(ctx: LieContext) -> LieElem:
    return LieElem(ctx)


def elem_monomial(ctx: LieContext, r: Sequence[int], b: Union[BElem, int, None] = None) -> LieElem:
    """t^r (x) b."""
    deg = tuple(int(x) for x in r)
    if len(deg) != ctx.n:
        raise ValueError(f"degree length {len(deg)} != N={ctx.n}")
    terms: Dict[BasisKey, Scalar] = {}
    for k, coord in enumerate(_b_coords(ctx, b)):
        if coord:
            terms[(FUN, 0, deg, k)] = coord
    return LieElem(ctx, terms)


def elem_D(
    ctx: LieContext,
    u: Sequence[Union[Scalar, Rat]],
    r: Sequence[int],
    b: Union[BElem, int, None] = None,
) -> LieElem:
    """D(u, r) (x) b = sum_i u_i t^r d_i (x) b."""
    uv = coef_vec(u)
    deg = tuple(int(x) for x in r)
    if len(uv) != ctx.n or len(deg) != ctx.n:
        raise ValueError("coefficient/degree vector length mismatch with context")
    coords = _b_coords(ctx, b)
    terms: Dict[BasisKey, Scalar] = {}
    for i, ui in enumerate(uv, start=1):
        if not ui:
            continue
        for k, coord in enumerate(coords):
            if coord:
                terms[(DER, i, deg, k)] = ui * coord
    return LieElem(ctx, terms)


def elem_d(ctx: LieContext, i: int) -> LieElem:
    """The i-th degree derivation d_i (1-based)."""
    if not 1 <= i <= ctx.n:
        raise ValueError(f"derivation index {i} out of range 1..{ctx.n}")
    u = [0] * ctx.n
    u[i - 1] = 1
    return elem_D(ctx, u, (0,) * ctx.n)


def elem_dab(ctx: LieContext, a: int, b: int, r: Sequence[int], tensor: Union[BElem, int, None] = None) -> LieElem:
    """The divergence-free generator r_b t^r d_a - r_a t^r d_b (1-based a != b)."""
    if a == b:
        raise ValueError("the two derivation indices must differ")
    if not (1 <= a <= ctx.n and 1 <= b <= ctx.n):
        raise ValueError(f"derivation indices out of range 1..{ctx.n}")
    deg = tuple(int(x) for x in r)
    u = [SC_ZERO] * ctx.n
    u[a - 1] = Scalar(deg[b - 1])
    u[b - 1] = Scalar(-deg[a - 1])
    return elem_D(ctx, u, deg, tensor)


def elem_h(ctx: LieContext, r: Sequence[int], tensor: Union[BElem, int, None] = None) -> LieElem:
    """The Hamiltonian generator D(bar(r), r); needs even N."""
    deg = tuple(int(x) for x in r)
    return elem_D(ctx, bar(deg), deg, tensor)


def elem_I(
    ctx: LieContext,
    u: Sequence[Union[Scalar, Rat]],
    r: Sequence[int],
    b1: BElem,
    b2: BElem,
    c: Union[Scalar, Rat] = 1,
) -> LieElem:
    """psi(b1) D(u,r) (x) b2  -  c D(u,0) (x) b1 b2, for (u|r) = 0 and r != 0.

    A zero u is accepted at any degree (the element is then zero).
    """
    uv = coef_vec(u)
    deg = tuple(int(x) for x in r)
    if pair(uv, deg):
        raise ValueError("first slot must pair to zero with the degree")
    if is_zero_vec(deg) and any(uv):
        raise ValueError("degree must be nonzero")
    psi_b1 = b1.psi()
    first = elem_D(ctx, uv, deg, b2).scale(psi_b1)
    second = elem_D(ctx, uv, (0,) * ctx.n, b1 * b2).scale(as_scalar(c))
    return first - second


# -- the bracket engine ------------------------------------------------------------


def bracket(x: LieElem, y: LieElem) -> LieElem:
    """Bilinear antisymmetric bracket of the map extended algebra."""
    _check_ctx(x, y)
    ctx = x.ctx
    mult = ctx.algebra.mult
    out: Dict[BasisKey, Scalar] = {}

    def accumulate(kind: int, i: int, deg: ExpVec, bvec, coef: Scalar):
        for k, m in enumerate(bvec):
            if not m:
                continue
            key = (kind, i, deg, k)
            acc = out.get(key)
            s = coef * m if acc is None else acc + coef * m
            if s:
                out[key] = s
            elif acc is not None:
                del out[key]

    for (k1, i1, r, b1), c1 in x.terms.items():
        for (k2, i2, s, b2), c2 in y.terms.items():
            if k1 == FUN and k2 == FUN:
                continue
            coef = c1 * c2
            rs = vec_add(r, s)
            bvec = mult[b1][b2]
            if k1 == DER and k2 == DER:
                si = s[i1 - 1]
                rj = r[i2 - 1]
                if si:
                    accumulate(DER, i2, rs, bvec, coef * si)
                if rj:
                    accumulate(DER, i1, rs, bvec, coef * (-rj))
            elif k1 == DER:
                si = s[i1 - 1]
                if si:
                    accumulate(FUN, 0, rs, bvec, coef * si)
            else:
                rj = r[i2 - 1]
                if rj:
                    accumulate(FUN, 0, rs, bvec, coef * (-rj))
    return LieElem(ctx, out)


def jacobi_defect(x: LieElem, y: LieElem, z: LieElem) -> LieElem:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero for a genuine Lie structure."""
    return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))


def divergence(x: LieElem) -> LieElem:
    """div(D(u,r) (x) b) = (u|r) t^r (x) b; input must contain only derivation terms."""
    out: Dict[BasisKey, Scalar] = {}
    for (kind, i, deg, b), coef in x.terms.items():
        if kind != DER:
            raise ValueError("divergence is defined on derivation terms only")
        ri = deg[i - 1]
        if not ri:
            continue
        key = (FUN, 0, deg, b)
        acc = out.get(key, SC_ZERO) + coef * ri
        if acc:
            out[key] = acc
        elif key in out:
            del out[key]
    return LieElem(x.ctx, out)


def der_groups(x: LieElem) -> Dict[Tuple[ExpVec, int], CoefVec]:
    """Group the derivation terms of x by (degree, b-index) into coefficient vectors."""
    n = x.ctx.n
    groups: Dict[Tuple[ExpVec, int], List[Scalar]] = {}
    for (kind, i, deg, b), coef in x.terms.items():
        if kind != DER:
            continue
        key = (deg, b)
        if key not in groups:
            groups[key] = [SC_ZERO] * n
        groups[key][i - 1] = coef
    return {key: tuple(v) for key, v in groups.items()}


def fun_groups(x: LieElem) -> Dict[Tuple[ExpVec, int], Scalar]:
    return {(deg, b): coef for (kind, i, deg, b), coef in x.terms.items() if kind == FUN}


def hamiltonian_component(u: CoefVec, r: ExpVec) -> Optional[Scalar]:
    """The scalar mu with u = mu * bar(r), or None if u is not proportional to bar(r).

    For r = 0 every u qualifies (the degree derivations); the returned scalar
    is then meaningless and SC_ONE is reported.
    """
    if is_zero_vec(r):
        return SC_ONE
    rb = bar(r)
    pivot = next(idx for idx, val in enumerate(rb) if val)
    mu = u[pivot] / Scalar(rb[pivot])
    for idx, val in enumerate(rb):
        if u[idx] != mu * Scalar(val):
            return None
    return mu


def in_hamiltonian_span(x: LieElem) -> bool:
    """Whether x lies in span{h_r} + span{d_i} + the monomial part, per degree.

    Monomial (FUN) terms always qualify: they form the abelian ideal of the
    extended algebra.  Needs even N.
    """
    if x.ctx.n % 2 != 0:
        raise ValueError("the Hamiltonian subalgebra needs an even number of variables")
    for (deg, _b), u in der_groups(x).items():
        if hamiltonian_component(u, deg) is None:
            return False
    return True


def in_divergence_free_span(x: LieElem) -> bool:
    """Whether every derivation component of x is divergence free."""
    return all(not pair(u, deg) for (deg, _b), u in der_groups(x).items())
