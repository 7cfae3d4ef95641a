"""Property suites over configurable N, window, coefficient algebra and fiber.

Each suite enumerates (or, above the case budget, seed-samples) a family of
exact identities and returns a Verdict listing every violation together with
the reproducing inputs.  Identical config and seed give identical verdicts;
exhaustive suites ignore the seed entirely.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .balgebra import BAlgebra, BElem, scalars_algebra, truncated_poly_algebra
from .lie import (
    DER,
    FUN,
    LieContext,
    LieElem,
    bracket,
    elem_D,
    elem_I,
    elem_d,
    elem_dab,
    elem_h,
    elem_monomial,
    divergence,
    trivial_context,
)
from .linalg import Matrix, mat_add, mat_identity, mat_mul, mat_scale, mat_sub, scalar_diagonal_of
from .modules import (
    H_CONVENTIONS,
    JetModuleH,
    JetModuleS,
    MapModule,
    Window,
    injectivity_diagnostic,
    unit_combination,
)
from .reps import MatrixRep, rep_from_spec, validate_rep
from .scalars import (
    SC_ONE,
    SC_ZERO,
    CoefVec,
    ExpVec,
    Scalar,
    as_scalar,
    bar,
    coef_vec,
    is_zero_vec,
    pair,
    vec_add,
    vec_neg,
)

SUITE_NAMES = (
    "jacobi",
    "sn_closure",
    "hn_closure",
    "rep_axioms",
    "module_axiom_S",
    "module_axiom_H",
    "module_axiom_map_S",
    "module_axiom_map_H",
    "quasi_assoc",
    "evaluation_property",
    "scalar_property",
    "t_operator_brackets",
    "i_element_brackets",
    "injectivity",
)

MAX_STORED_FAILURES = 25

# small-denominator rationals for sampled parameters; avoids the degeneracies
# of integer-only choices while keeping exact arithmetic cheap
_POOL = tuple(Fraction(p, q) for q in (1, 2, 3) for p in range(-3, 4))
_POOL_NONZERO = tuple(x for x in _POOL if x)


@dataclass
class SuiteConfig:
    n: int = 2
    window_k: int = 2
    b_spec: str = "truncpoly:2"
    rep_spec: str = "traceless-natural"
    c: Fraction = Fraction(1)
    seed: int = 7
    case_budget: int = 2_000_000
    samples: int = 5
    h_convention: str = "split"
    alpha: Optional[Sequence[Fraction]] = None
    beta: Optional[Sequence[Fraction]] = None
    phi: Optional[Sequence[Fraction]] = None
    f: Optional[Sequence[Sequence[Fraction]]] = None
    rep_inline: Optional[MatrixRep] = None
    algebra_inline: Optional[BAlgebra] = None

    def __post_init__(self):
        if self.window_k < 1:
            raise ValueError("windowK must be >= 1")
        if self.case_budget < 1:
            raise ValueError("caseBudget must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")

    def algebra(self) -> BAlgebra:
        if self.algebra_inline is not None:
            return self.algebra_inline
        if self.b_spec == "trivial":
            return scalars_algebra()
        if self.b_spec.startswith("truncpoly:"):
            return truncated_poly_algebra(int(self.b_spec.split(":", 1)[1]))
        raise ValueError(f"unknown coefficient-algebra spec: {self.b_spec!r}")

    def rep(self, n: Optional[int] = None) -> MatrixRep:
        if self.rep_inline is not None:
            return self.rep_inline
        return rep_from_spec(self.rep_spec, self.n if n is None else n)

    def window(self) -> Window:
        return Window(self.window_k)

    def rng(self, suite: str) -> random.Random:
        return random.Random(f"{self.seed}:{suite}")

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "windowK": self.window_k,
            "bSpec": self.b_spec,
            "repSpec": self.rep_spec,
            "c": str(self.c),
            "seed": self.seed,
            "caseBudget": self.case_budget,
            "samples": self.samples,
            "hConvention": self.h_convention,
        }
        if self.alpha is not None:
            out["alpha"] = [str(x) for x in self.alpha]
        if self.beta is not None:
            out["beta"] = [str(x) for x in self.beta]
        if self.phi is not None:
            out["phi"] = [str(x) for x in self.phi]
        if self.f is not None:
            out["f"] = [[str(x) for x in row] for row in self.f]
        return out

    @staticmethod
    def from_json(obj: dict) -> "SuiteConfig":
        kw = {}
        mapping = {
            "n": ("n", int),
            "windowK": ("window_k", int),
            "bSpec": ("b_spec", str),
            "repSpec": ("rep_spec", str),
            "c": ("c", Fraction),
            "seed": ("seed", int),
            "caseBudget": ("case_budget", int),
            "samples": ("samples", int),
            "hConvention": ("h_convention", str),
        }
        for key, (attr, conv) in mapping.items():
            if key in obj:
                kw[attr] = conv(obj[key])
        if "alpha" in obj:
            kw["alpha"] = [Fraction(x) for x in obj["alpha"]]
        if "beta" in obj:
            kw["beta"] = [Fraction(x) for x in obj["beta"]]
        if "phi" in obj:
            kw["phi"] = [Fraction(x) for x in obj["phi"]]
        if "f" in obj:
            kw["f"] = [[Fraction(x) for x in row] for row in obj["f"]]
        return SuiteConfig(**kw)


@dataclass
class Verdict:
    suite: str
    cases: int = 0
    failures: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    _dropped: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures and self._dropped == 0

    def add_failure(self, inputs: str, expected: str, got: str):
        if len(self.failures) < MAX_STORED_FAILURES:
            self.failures.append({"input": inputs, "expected": expected, "got": got})
        else:
            self._dropped += 1

    def finish(self) -> "Verdict":
        if self._dropped:
            self.notes.append(f"{self._dropped} further failures not stored")
        return self

    def to_json(self, elapsed_ms: Optional[int] = None) -> dict:
        out = {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "passed": self.passed,
            "notes": self.notes,
        }
        if elapsed_ms is not None:
            out["elapsedMs"] = elapsed_ms
        return out


# -- sampling helpers --------------------------------------------------------------


def _sample_vec(rng: random.Random, n: int) -> CoefVec:
    return coef_vec([rng.choice(_POOL) for _ in range(n)])


def _sample_phi(rng: random.Random, dim: int) -> List[Fraction]:
    return [Fraction(1)] + [rng.choice(_POOL) for _ in range(dim - 1)]


def _sample_f(rng: random.Random, n: int, dim: int, alpha: CoefVec) -> List[List[Scalar]]:
    return [[alpha[i] if k == 0 else Scalar(rng.choice(_POOL)) for k in range(dim)] for i in range(n)]


def _with_phi(algebra: BAlgebra, phi: Sequence[Fraction]) -> BAlgebra:
    return BAlgebra(algebra.dim, algebra.names, algebra.mult, algebra.psi, coef_vec(phi))


def _param_sets(cfg: SuiteConfig, rng: random.Random) -> List[Tuple[CoefVec, CoefVec]]:
    if cfg.alpha is not None or cfg.beta is not None:
        alpha = coef_vec(cfg.alpha) if cfg.alpha is not None else coef_vec([0] * cfg.n)
        beta = coef_vec(cfg.beta) if cfg.beta is not None else coef_vec([0] * cfg.n)
        return [(alpha, beta)]
    return [(_sample_vec(rng, cfg.n), _sample_vec(rng, cfg.n)) for _ in range(cfg.samples)]


def _sample_perp(rng: random.Random, r: ExpVec) -> CoefVec:
    """A nonzero rational vector u with (u|r) = 0 (uses a two-slot rotation of r)."""
    n = len(r)
    nz = [i for i, x in enumerate(r) if x]
    u = [Fraction(0)] * n
    if not nz:
        u[rng.randrange(n)] = rng.choice(_POOL_NONZERO)
    elif len(nz) == n and n > 1 or len(nz) > 1:
        a, b = rng.sample(nz, 2) if len(nz) >= 2 else (nz[0], nz[0])
        if a == b:
            a = nz[0]
            b = next(i for i in range(n) if i != a)
        sc = rng.choice(_POOL_NONZERO)
        u[a] = sc * r[b]
        u[b] = -sc * r[a]
    else:
        a = nz[0]
        b = rng.choice([i for i in range(n) if i != a])
        sc = rng.choice(_POOL_NONZERO)
        u[a] = sc * r[b]
        u[b] = -sc * r[a]
    return coef_vec(u)


def _nonzero_degrees(n: int, k: int) -> List[ExpVec]:
    return [d for d in itertools.product(range(-k, k + 1), repeat=n) if any(d)]


# -- generator families ---------------------------------------------------------------


def _s_generators(ctx: LieContext, k: int, b_indices: Sequence[int]) -> List[LieElem]:
    gens: List[LieElem] = []
    for bi in b_indices:
        for r in _nonzero_degrees(ctx.n, k):
            for a in range(1, ctx.n + 1):
                for b in range(a + 1, ctx.n + 1):
                    g = elem_dab(ctx, a, b, r, bi)
                    if not g.is_zero():
                        gens.append(g)
        for i in range(1, ctx.n + 1):
            u = [0] * ctx.n
            u[i - 1] = 1
            gens.append(elem_D(ctx, u, (0,) * ctx.n, bi))
        for r in itertools.product(range(-k, k + 1), repeat=ctx.n):
            gens.append(elem_monomial(ctx, r, bi))
    return gens


def _h_generators(ctx: LieContext, k: int, b_indices: Sequence[int]) -> List[LieElem]:
    gens: List[LieElem] = []
    for bi in b_indices:
        for r in _nonzero_degrees(ctx.n, k):
            gens.append(elem_h(ctx, r, bi))
        for i in range(1, ctx.n + 1):
            u = [0] * ctx.n
            u[i - 1] = 1
            gens.append(elem_D(ctx, u, (0,) * ctx.n, bi))
        for r in itertools.product(range(-k, k + 1), repeat=ctx.n):
            gens.append(elem_monomial(ctx, r, bi))
    return gens


# -- the commutator-equals-bracket sweep ------------------------------------------------


def _valid_degrees(window: Window, n: int, p: ExpVec, q: ExpVec) -> List[ExpVec]:
    out = []
    for s in window.degrees(n):
        if (
            window.contains(vec_add(s, p))
            and window.contains(vec_add(s, q))
            and window.contains(vec_add(vec_add(s, p), q))
        ):
            out.append(s)
    return out


def _axiom_sweep(
    verdict: Verdict,
    module,
    gens: List[LieElem],
    rng: random.Random,
    budget: int,
    tag: str = "",
):
    """Check act(x)act(y) - act(y)act(x) = act([x,y]) on all window-compatible cases.

    One case is a generator pair at one support degree; the matrices compare
    the full fiber at once.  Checking unordered pairs suffices because both
    sides are antisymmetric in (x, y).
    """
    n = module.n
    window = module.window
    degs = [g.homogeneous_degree() for g in gens]
    valid_cache: Dict[Tuple[ExpVec, ExpVec], List[ExpVec]] = {}

    def valid(p: ExpVec, q: ExpVec) -> List[ExpVec]:
        key = (p, q) if p <= q else (q, p)
        got = valid_cache.get(key)
        if got is None:
            got = _valid_degrees(window, n, key[0], key[1])
            valid_cache[key] = got
        return got

    pairs = [(i, j) for i in range(len(gens)) for j in range(i, len(gens))]
    total = 0
    for i, j in pairs:
        total += len(valid(degs[i], degs[j]))
    if total > budget:
        rng.shuffle(pairs)
        verdict.notes.append(
            f"{tag}: {total} cases exceed budget {budget}; seed-sampled pair subset"
        )

    matcache: Dict[Tuple[int, ExpVec], Matrix] = {}

    def mat_of(idx: int, s: ExpVec) -> Matrix:
        key = (idx, s)
        got = matcache.get(key)
        if got is None:
            got = module.act_matrix(gens[idx], s)
            matcache[key] = got
        return got

    spent = 0
    for i, j in pairs:
        if spent >= budget:
            break
        p, q = degs[i], degs[j]
        svals = valid(p, q)
        if not svals:
            continue
        x, y = gens[i], gens[j]
        z = bracket(x, y)
        for s in svals:
            spent += 1
            verdict.cases += 1
            lhs = mat_sub(
                mat_mul(mat_of(i, vec_add(s, q)), mat_of(j, s)),
                mat_mul(mat_of(j, vec_add(s, p)), mat_of(i, s)),
            )
            rhs = module.act_matrix(z, s)
            if lhs != rhs:
                verdict.add_failure(
                    f"{tag} x={x!r} y={y!r} at degree {list(s)}",
                    f"act([x,y]) = {rhs}",
                    f"commutator = {lhs}",
                )
            if spent >= budget:
                break


# -- individual suites --------------------------------------------------------------------


def suite_jacobi(cfg: SuiteConfig) -> Verdict:
    """Exhaustive Jacobi identity over decorated basis triples of (W_N |x A_N) (x) B.

    Degrees run over the window box with all pairwise degree sums kept inside
    the box; triples are enumerated unordered (the cyclic defect is alternating
    in its arguments, so order adds nothing).
    """
    verdict = Verdict("jacobi")
    n, k = cfg.n, cfg.window_k
    algebra = cfg.algebra()
    dimb = algebra.dim

    kinds = [(FUN, 0)] + [(DER, i) for i in range(1, n + 1)]
    degs = list(itertools.product(range(-k, k + 1), repeat=n))
    basis: List[Tuple[int, int, ExpVec]] = [(kind, i, d) for d in degs for kind, i in kinds]
    nb = len(basis)

    def gb(t1, t2) -> List[Tuple[Tuple[int, int, ExpVec], int]]:
        k1, i1, r = t1
        k2, i2, s = t2
        if k1 == FUN and k2 == FUN:
            return []
        rs = vec_add(r, s)
        out = []
        if k1 == DER and k2 == DER:
            si = s[i1 - 1]
            rj = r[i2 - 1]
            if si:
                out.append(((DER, i2, rs), si))
            if rj:
                out.append(((DER, i1, rs), -rj))
        elif k1 == DER:
            si = s[i1 - 1]
            if si:
                out.append(((FUN, 0, rs), si))
        else:
            rj = r[i2 - 1]
            if rj:
                out.append(((FUN, 0, rs), -rj))
        return out

    def double(x, inner):
        out: Dict[Tuple[int, int, ExpVec], int] = {}
        for key2, c2 in inner:
            for keyo, co in gb(x, key2):
                v = out.get(keyo, 0) + co * c2
                if v:
                    out[keyo] = v
                elif keyo in out:
                    del out[keyo]
        return out

    # cyclic B products for every ordered index triple; their equality is
    # exactly commutativity+associativity of B at that triple
    btriples = []
    for k1, k2, k3 in itertools.product(range(dimb), repeat=3):
        e1, e2, e3 = (algebra.basis_elem(t).coords for t in (k1, k2, k3))
        p1 = algebra.mul_coords(e1, algebra.mul_coords(e2, e3))
        p2 = algebra.mul_coords(e2, algebra.mul_coords(e3, e1))
        p3 = algebra.mul_coords(e3, algebra.mul_coords(e1, e2))
        btriples.append(((k1, k2, k3), p1, p2, p3, p1 == p2 == p3))

    def term_name(t, bi) -> str:
        kind, i, d = t
        head = f"t^{list(d)}" if kind == FUN else f"t^{list(d)}d_{i}"
        return head + (f"(x){algebra.names[bi]}" if dimb > 1 else "")

    def check_triple(a: int, b: int, c: int):
        ta, tb, tc = basis[a], basis[b], basis[c]
        g1 = double(ta, gb(tb, tc))
        g2 = double(tb, gb(tc, ta))
        g3 = double(tc, gb(ta, tb))
        s_tot: Dict[Tuple[int, int, ExpVec], int] = dict(g1)
        for g in (g2, g3):
            for key, v in g.items():
                acc = s_tot.get(key, 0) + v
                if acc:
                    s_tot[key] = acc
                elif key in s_tot:
                    del s_tot[key]
        for (ks, p1, p2, p3, same) in btriples:
            verdict.cases += 1
            if same:
                ok = not s_tot or not any(p1)
            else:
                keys = set(g1) | set(g2) | set(g3)
                ok = True
                for key in keys:
                    v1, v2, v3 = g1.get(key, 0), g2.get(key, 0), g3.get(key, 0)
                    for comp in range(dimb):
                        if v1 * p1[comp] + v2 * p2[comp] + v3 * p3[comp]:
                            ok = False
                            break
                    if not ok:
                        break
            if not ok:
                names = ", ".join(term_name(t, bi) for t, bi in zip((ta, tb, tc), ks))
                verdict.add_failure(f"triple ({names})", "0", "nonzero cyclic defect")

    boxk = k

    def pair_ok(d1: ExpVec, d2: ExpVec) -> bool:
        return all(-boxk <= x + y <= boxk for x, y in zip(d1, d2))

    ok_rows = [[pair_ok(basis[i][2], basis[j][2]) for j in range(nb)] for i in range(nb)]

    total_g = 0
    for a in range(nb):
        oka = ok_rows[a]
        for b in range(a, nb):
            if not oka[b]:
                continue
            okb = ok_rows[b]
            for c in range(b, nb):
                if oka[c] and okb[c]:
                    total_g += 1
    total = total_g * dimb ** 3

    if total <= cfg.case_budget:
        for a in range(nb):
            oka = ok_rows[a]
            for b in range(a, nb):
                if not oka[b]:
                    continue
                okb = ok_rows[b]
                for c in range(b, nb):
                    if oka[c] and okb[c]:
                        check_triple(a, b, c)
    else:
        rng = cfg.rng("jacobi")
        want = max(1, cfg.case_budget // dimb ** 3)
        verdict.notes.append(
            f"{total} decorated triples exceed budget {cfg.case_budget}; "
            f"checking {want} seed-sampled triples (seed {cfg.seed})"
        )
        seen = 0
        while seen < want:
            a, b, c = sorted(rng.randrange(nb) for _ in range(3))
            if ok_rows[a][b] and ok_rows[a][c] and ok_rows[b][c]:
                check_triple(a, b, c)
                seen += 1
    return verdict.finish()


def suite_sn_closure(cfg: SuiteConfig) -> Verdict:
    """Brackets of divergence-free generators stay divergence free (exact)."""
    verdict = Verdict("sn_closure")
    ctx = trivial_context(cfg.n)
    gens: List[LieElem] = []
    for r in _nonzero_degrees(cfg.n, cfg.window_k):
        for a in range(1, cfg.n + 1):
            for b in range(a + 1, cfg.n + 1):
                g = elem_dab(ctx, a, b, r)
                if not g.is_zero():
                    gens.append(g)
    for i in range(1, cfg.n + 1):
        gens.append(elem_d(ctx, i))
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            verdict.cases += 1
            div = divergence(bracket(gens[i], gens[j]))
            if not div.is_zero():
                verdict.add_failure(f"x={gens[i]!r} y={gens[j]!r}", "div[x,y] = 0", repr(div))
    return verdict.finish()


def suite_hn_closure(cfg: SuiteConfig) -> Verdict:
    """[h_r, h_s] = (bar(r)|s) h_(r+s) for all window degree pairs (exact)."""
    verdict = Verdict("hn_closure")
    if cfg.n % 2 != 0:
        raise ValueError("the Hamiltonian closure suite needs an even N")
    ctx = trivial_context(cfg.n)
    degs = list(itertools.product(range(-cfg.window_k, cfg.window_k + 1), repeat=cfg.n))
    hmap = {r: elem_h(ctx, r) for r in degs}
    for r in degs:
        hr = hmap[r]
        for s in degs:
            verdict.cases += 1
            lhs = bracket(hr, hmap[s])
            rs = vec_add(r, s)
            rhs_elem = hmap.get(rs)
            if rhs_elem is None:
                rhs_elem = elem_h(ctx, rs)
                hmap[rs] = rhs_elem
            rhs = rhs_elem.scale(pair(bar(r), s))
            if lhs != rhs:
                verdict.add_failure(f"r={list(r)} s={list(s)}", repr(rhs), repr(lhs))
    return verdict.finish()


def suite_rep_axioms(cfg: SuiteConfig) -> Verdict:
    """Matrix-unit commutator table of the configured fiber; trace condition noted."""
    verdict = Verdict("rep_axioms")
    rep = cfg.rep()
    report = validate_rep(rep)
    verdict.cases = rep.n ** 4
    for msg in report.commutator_failures:
        verdict.add_failure(msg, "commutator relation", "violated")
    verdict.notes.append(
        "identity acts as zero" if report.trace_zero else "identity does not act as zero (fine for the Hamiltonian path, rejected by the divergence-free jet constructor)"
    )
    return verdict.finish()


def _probe_h_conventions(cfg: SuiteConfig) -> List[str]:
    """Try the module axiom under every double-sum index convention (small probe)."""
    notes = []
    ctx = trivial_context(cfg.n)
    rng = cfg.rng("h-convention-probe")
    alpha, beta = _sample_vec(rng, cfg.n), _sample_vec(rng, cfg.n)
    probe_degs = _nonzero_degrees(cfg.n, 1)
    for conv in H_CONVENTIONS:
        module = JetModuleH(cfg.n, rep_from_spec("natural", cfg.n), alpha, beta, Window(cfg.window_k), conv)
        bad = 0
        total = 0
        s0 = (0,) * cfg.n
        for r in probe_degs:
            for s in probe_degs:
                x, y = elem_h(ctx, r), elem_h(ctx, s)
                lhs = mat_sub(
                    mat_mul(module.act_matrix(x, vec_add(s0, s)), module.act_matrix(y, s0)),
                    mat_mul(module.act_matrix(y, vec_add(s0, r)), module.act_matrix(x, s0)),
                )
                rhs = module.act_matrix(bracket(x, y), s0)
                total += 1
                if lhs != rhs:
                    bad += 1
        notes.append(
            f"double-sum convention {conv!r}: {'satisfies' if bad == 0 else 'violates'} the module axiom "
            f"({bad}/{total} probe failures at N={cfg.n})"
        )
    return notes


def suite_module_axiom_S(cfg: SuiteConfig) -> Verdict:
    verdict = Verdict("module_axiom_S")
    rng = cfg.rng("module_axiom_S")
    ctx = trivial_context(cfg.n)
    gens = _s_generators(ctx, cfg.window_k, [0])
    params = _param_sets(cfg, rng)
    per_budget = max(1, cfg.case_budget // len(params))
    for alpha, beta in params:
        module = JetModuleS(cfg.n, cfg.rep(), alpha, beta, cfg.window())
        _axiom_sweep(verdict, module, gens, rng, per_budget, tag=f"alpha={list(alpha)} beta={list(beta)}")
    return verdict.finish()


def suite_module_axiom_H(cfg: SuiteConfig) -> Verdict:
    verdict = Verdict("module_axiom_H")
    if cfg.n % 2 != 0:
        raise ValueError("the Hamiltonian module axiom suite needs an even N")
    rng = cfg.rng("module_axiom_H")
    ctx = trivial_context(cfg.n)
    gens = _h_generators(ctx, cfg.window_k, [0])
    params = _param_sets(cfg, rng)
    per_budget = max(1, cfg.case_budget // len(params))
    for alpha, beta in params:
        module = JetModuleH(cfg.n, cfg.rep(), alpha, beta, cfg.window(), cfg.h_convention)
        _axiom_sweep(verdict, module, gens, rng, per_budget, tag=f"alpha={list(alpha)} beta={list(beta)}")
    verdict.notes.extend(_probe_h_conventions(cfg))
    return verdict.finish()


def _map_module(cfg: SuiteConfig, rng: random.Random, hamiltonian: bool):
    algebra = cfg.algebra()
    alpha, beta = (
        (coef_vec(cfg.alpha), coef_vec(cfg.beta))
        if cfg.alpha is not None and cfg.beta is not None
        else (_sample_vec(rng, cfg.n), _sample_vec(rng, cfg.n))
    )
    phi = cfg.phi if cfg.phi is not None else _sample_phi(rng, algebra.dim)
    algebra = _with_phi(algebra, phi)
    f = cfg.f if cfg.f is not None else _sample_f(rng, cfg.n, algebra.dim, alpha)
    if hamiltonian:
        base = JetModuleH(cfg.n, cfg.rep(), alpha, beta, cfg.window(), cfg.h_convention)
    else:
        base = JetModuleS(cfg.n, cfg.rep(), alpha, beta, cfg.window())
    return MapModule(base, algebra, cfg.c, f)


def _suite_module_axiom_map(cfg: SuiteConfig, hamiltonian: bool) -> Verdict:
    name = "module_axiom_map_H" if hamiltonian else "module_axiom_map_S"
    verdict = Verdict(name)
    rng = cfg.rng(name)
    per_budget = max(1, cfg.case_budget // cfg.samples)
    for sample in range(cfg.samples):
        module = _map_module(cfg, rng, hamiltonian)
        ctx = module.ctx
        b_indices = list(range(ctx.algebra.dim))
        gens = (
            _h_generators(ctx, cfg.window_k, b_indices)
            if hamiltonian
            else _s_generators(ctx, cfg.window_k, b_indices)
        )
        _axiom_sweep(verdict, module, gens, rng, per_budget, tag=f"sample {sample}")
    verdict.notes.append(f"c = {cfg.c}")
    return verdict.finish()


def suite_module_axiom_map_S(cfg: SuiteConfig) -> Verdict:
    return _suite_module_axiom_map(cfg, hamiltonian=False)


def suite_module_axiom_map_H(cfg: SuiteConfig) -> Verdict:
    return _suite_module_axiom_map(cfg, hamiltonian=True)


def suite_quasi_assoc(cfg: SuiteConfig) -> Verdict:
    """Measured composite constants of the monomial operators.

    Checks that t^m (x) b composed with t^n (x) b' is an exact scalar multiple
    of the degree-(m+n) monomial operator, that the scalar factors through the
    (psi, phi) case table, and that the base constants satisfy
    lambda = mu = c and lambda^2 = mu c.
    """
    verdict = Verdict("quasi_assoc")
    rng = cfg.rng("quasi_assoc")
    module = _map_module(cfg, rng, hamiltonian=False)
    algebra = module.ctx.algebra
    window = module.window
    n = module.n
    degs = list(itertools.product(range(-cfg.window_k, cfg.window_k + 1), repeat=n))
    c = module.c

    measured_base: Dict[str, List[Tuple[ExpVec, ExpVec, Scalar]]] = {"lambda": [], "mu": [], "c": []}
    for m_deg in degs:
        for n_deg in degs:
            svals = [
                s
                for s in degs
                if window.contains(vec_add(s, n_deg)) and window.contains(vec_add(vec_add(s, n_deg), m_deg))
            ]
            if not svals:
                continue
            for k1 in range(algebra.dim):
                for k2 in range(algebra.dim):
                    verdict.cases += 1
                    op_m = elem_monomial(module.ctx, m_deg, k1)
                    op_n = elem_monomial(module.ctx, n_deg, k2)
                    tgt = elem_monomial(module.ctx, vec_add(m_deg, n_deg))
                    lam: Optional[Scalar] = None
                    consistent = True
                    for s in svals:
                        comp = mat_mul(module.act_matrix(op_m, vec_add(s, n_deg)), module.act_matrix(op_n, s))
                        tmat = module.act_matrix(tgt, s)
                        # the target operator is c * shift: scalar c * I at every degree
                        tscal = scalar_diagonal_of(tmat)
                        cscal = scalar_diagonal_of(comp)
                        if tscal is None or not tscal or cscal is None:
                            consistent = False
                            break
                        ratio = cscal / tscal
                        if lam is None:
                            lam = ratio
                        elif lam != ratio:
                            consistent = False
                            break
                    if not consistent or lam is None:
                        verdict.add_failure(
                            f"m={list(m_deg)} n={list(n_deg)} b={algebra.names[k1]} b'={algebra.names[k2]}",
                            "composite = scalar * monomial operator",
                            "no consistent scalar",
                        )
                        continue
                    m0 = is_zero_vec(m_deg)
                    n0 = is_zero_vec(n_deg)
                    if not m0 and not n0:
                        base_kind = "mu" if is_zero_vec(vec_add(m_deg, n_deg)) else "lambda"
                        factor = algebra.psi[k1] * algebra.psi[k2]
                    elif not m0 and n0:
                        base_kind = "c"
                        factor = algebra.psi[k1] * algebra.phi[k2]
                    elif m0 and not n0:
                        base_kind = "c"
                        factor = algebra.phi[k1] * algebra.psi[k2]
                    else:
                        base_kind = "c"
                        factor = algebra.phi[k1] * algebra.phi[k2]
                    expected = factor * c
                    if lam != expected:
                        verdict.add_failure(
                            f"m={list(m_deg)} n={list(n_deg)} b={algebra.names[k1]} b'={algebra.names[k2]}",
                            f"{expected}",
                            f"{lam}",
                        )
                    if k1 == 0 and k2 == 0:
                        measured_base[base_kind].append((m_deg, n_deg, lam))

    lam_vals = {v for _, _, v in measured_base["lambda"]}
    mu_vals = {v for _, _, v in measured_base["mu"]}
    c_vals = {v for _, _, v in measured_base["c"]}
    for kind, vals in (("lambda", lam_vals), ("mu", mu_vals), ("c", c_vals)):
        if len(vals) > 1:
            verdict.add_failure(f"base constant {kind}", "a single scalar", f"{len(vals)} distinct values")
    if lam_vals and mu_vals and c_vals:
        lam, mu, cc = next(iter(lam_vals)), next(iter(mu_vals)), next(iter(c_vals))
        if not (lam == c and mu == c and cc == c):
            verdict.add_failure("pattern lambda = mu = c", f"all equal {c}", f"lambda={lam} mu={mu} c={cc}")
        if lam * lam != mu * cc:
            verdict.add_failure("constraint lambda^2 = mu c", f"{mu * cc}", f"{lam * lam}")
        verdict.notes.append(f"measured lambda={lam} mu={mu} c={cc}")
    return verdict.finish()


def _sampled_der_tuples(cfg: SuiteConfig, rng: random.Random, hamiltonian: bool, count: int):
    """(u, r) pairs with the right membership for the chosen flavour, r != 0."""
    nz = _nonzero_degrees(cfg.n, cfg.window_k)
    out = []
    for _ in range(count):
        r = rng.choice(nz)
        u = coef_vec(bar(r)) if hamiltonian else _sample_perp(rng, r)
        out.append((u, r))
    return out


def _suite_eval_or_scalar(cfg: SuiteConfig, scalar_property: bool) -> Verdict:
    name = "scalar_property" if scalar_property else "evaluation_property"
    verdict = Verdict(name)
    rng = cfg.rng(name)
    flavours = [False] + ([True] if cfg.n % 2 == 0 else [])
    for hamiltonian in flavours:
        module = _map_module(cfg, rng, hamiltonian)
        ctx = module.ctx
        algebra = ctx.algebra
        degs = module.window.degrees(cfg.n)
        if scalar_property:
            for _ in range(10):
                u = _sample_vec(rng, cfg.n)
                for k in range(algebra.dim):
                    elem = elem_D(ctx, u, (0,) * cfg.n, k)
                    for s in degs:
                        verdict.cases += 1
                        mat = module.act_matrix(elem, s)
                        got = scalar_diagonal_of(mat)
                        expected = module.f_value(u, k) + pair(u, s) * algebra.psi[k]
                        if got is None or got != expected:
                            verdict.add_failure(
                                f"D({list(u)},0)(x){algebra.names[k]} at degree {list(s)}",
                                f"scalar {expected} * identity",
                                f"{mat}",
                            )
        else:
            for u, r in _sampled_der_tuples(cfg, rng, hamiltonian, 12):
                unit_elem = elem_D(ctx, u, r, 0)
                for k in range(algebra.dim):
                    elem = elem_D(ctx, u, r, k)
                    psi_k = algebra.psi[k]
                    for s in degs:
                        if not module.window.contains(vec_add(s, r)):
                            continue
                        verdict.cases += 1
                        lhs = module.act_matrix(elem, s)
                        rhs = mat_scale(psi_k, module.act_matrix(unit_elem, s))
                        if lhs != rhs:
                            verdict.add_failure(
                                f"D({list(u)},{list(r)})(x){algebra.names[k]} at degree {list(s)}",
                                "psi(b) * action of D(u,r)(x)1",
                                "different operator",
                            )
    return verdict.finish()


def suite_evaluation_property(cfg: SuiteConfig) -> Verdict:
    return _suite_eval_or_scalar(cfg, scalar_property=False)


def suite_scalar_property(cfg: SuiteConfig) -> Verdict:
    return _suite_eval_or_scalar(cfg, scalar_property=True)


def _word_matrix(module, ops: Sequence[LieElem], s: ExpVec) -> Optional[Matrix]:
    """Matrix at degree s of a right-to-left word; None if it leaves the window."""
    mat = mat_identity(module.dim)
    deg = s
    for op in reversed(ops):
        if op.is_zero():
            return mat_scale(SC_ZERO, mat_identity(module.dim))
        p = op.homogeneous_degree()
        mat = mat_mul(module.act_matrix(op, deg), mat)
        deg = vec_add(deg, p)
        if not module.window.contains(deg):
            return None
    return mat


def suite_t_operator_brackets(cfg: SuiteConfig) -> Verdict:
    """Operator brackets of the composite words t^(-r) b1 D(u,r) b2 on the window.

    The bracket of two such words equals c times the three-term combination of
    composite words (the displayed identity is its c = 1 normalization); for
    the Hamiltonian flavour the combination is the divergence-free one
    specialized to u = bar(r), and the mixed zero-degree bracket identity is
    checked verbatim.
    """
    verdict = Verdict("t_operator_brackets")
    rng = cfg.rng("t_operator_brackets")
    tuples_per_flavour = max(20, 2 * cfg.samples)
    flavours = [False] + ([True] if cfg.n % 2 == 0 else [])
    for hamiltonian in flavours:
        module = _map_module(cfg, rng, hamiltonian)
        ctx = module.ctx
        algebra = ctx.algebra
        c = module.c
        degs = module.window.degrees(cfg.n)

        def t_word(u: CoefVec, r: ExpVec, b1: BElem, b2: BElem) -> List[LieElem]:
            return [elem_monomial(ctx, vec_neg(r), b1), elem_D(ctx, u, r, b2)]

        def rand_belem() -> BElem:
            return algebra.elem([rng.choice(_POOL) if i else Fraction(1) for i in range(algebra.dim)])

        made = 0
        while made < tuples_per_flavour:
            r = rng.choice(_nonzero_degrees(cfg.n, cfg.window_k))
            s_deg = rng.choice(_nonzero_degrees(cfg.n, cfg.window_k))
            if rng.random() < 0.2:
                s_deg = (0,) * cfg.n
            u = coef_vec(bar(r)) if hamiltonian else _sample_perp(rng, r)
            if is_zero_vec(s_deg):
                v: CoefVec = _sample_vec(rng, cfg.n)
            else:
                v = coef_vec(bar(s_deg)) if hamiltonian else _sample_perp(rng, s_deg)
            b1, b2, b3, b4 = rand_belem(), rand_belem(), rand_belem(), rand_belem()
            made += 1
            us = pair(u, s_deg)
            vr = pair(v, r)
            w = tuple(us * vi - vr * ui for ui, vi in zip(u, v))
            t1 = t_word(u, r, b1, b2)
            t2 = t_word(v, s_deg, b3, b4)
            rhs_words = [
                (SC_ONE, t_word(w, vec_add(r, s_deg), b1 * b3, b2 * b4)),
                (-us, t_word(v, s_deg, b1 * b2 * b3, b4)),
                (vr, t_word(u, r, b1 * b3 * b4, b2)),
            ]
            for s0 in degs:
                if not (
                    module.window.contains(vec_add(s0, r))
                    and module.window.contains(vec_add(s0, s_deg))
                    and module.window.contains(vec_add(vec_add(s0, r), s_deg))
                ):
                    continue
                verdict.cases += 1
                m1 = _word_matrix(module, t1, s0)
                m2 = _word_matrix(module, t2, s0)
                lhs = mat_sub(mat_mul(m1, m2), mat_mul(m2, m1))
                rhs = None
                for coeff, word in rhs_words:
                    part = _word_matrix(module, word, s0)
                    part = mat_scale(coeff, part)
                    rhs = part if rhs is None else mat_add(rhs, part)
                rhs = mat_scale(c, rhs)
                if lhs != rhs:
                    verdict.add_failure(
                        f"{'H' if hamiltonian else 'S'} r={list(r)} s={list(s_deg)} at degree {list(s0)}",
                        "c * three-term composite combination",
                        "different operator",
                    )

        # mixed zero-degree bracket: [t^0 b1 D(u,0) b2, t^(-r) b3 D(ubar,r) b4]
        if hamiltonian:
            for _ in range(tuples_per_flavour):
                r = rng.choice(_nonzero_degrees(cfg.n, cfg.window_k))
                u = _sample_vec(rng, cfg.n)
                b1, b2, b3, b4 = rand_belem(), rand_belem(), rand_belem(), rand_belem()
                t0 = t_word(u, (0,) * cfg.n, b1, b2)
                tr = t_word(coef_vec(bar(r)), r, b3, b4)
                ur = pair(u, r)
                phi_b1 = algebra.phi_value(b1.coords)
                for s0 in degs:
                    if not module.window.contains(vec_add(s0, r)):
                        continue
                    verdict.cases += 1
                    m1 = _word_matrix(module, t0, s0)
                    m2 = _word_matrix(module, tr, s0)
                    lhs = mat_sub(mat_mul(m1, m2), mat_mul(m2, m1))
                    ra = _word_matrix(module, t_word(coef_vec(bar(r)), r, b2 * b3, b4), s0)
                    rb = _word_matrix(module, t_word(coef_vec(bar(r)), r, b3, b2 * b4), s0)
                    rhs = mat_scale(ur * c * phi_b1, mat_sub(rb, ra))
                    if lhs != rhs:
                        verdict.add_failure(
                            f"H mixed r={list(r)} at degree {list(s0)}",
                            "(u,r) c phi(b1) (T(..., b3, b2 b4) - T(..., b2 b3, b4))",
                            "different operator",
                        )
    verdict.notes.append("three-term identity checked with the composite scale lambda = c (verbatim at c = 1)")
    return verdict.finish()


def suite_i_element_brackets(cfg: SuiteConfig) -> Verdict:
    """Bracket identity of the elements psi(b1) D(u,r) b2 - c D(u,0) b1 b2 in the Lie engine.

    The displayed identity is the c = 1 normalization and is checked with
    c = 1; for c != 1 the two correction terms acquire a factor c (the
    zero-degree parts no longer cancel against a span element).
    """
    verdict = Verdict("i_element_brackets")
    rng = cfg.rng("i_element_brackets")
    algebra = cfg.algebra()
    ctx = LieContext(cfg.n, algebra)
    c = SC_ONE
    nz = _nonzero_degrees(cfg.n, cfg.window_k)
    count = max(100, 10 * cfg.samples)

    def rand_belem() -> BElem:
        return algebra.elem([rng.choice(_POOL) if i else Fraction(1) for i in range(algebra.dim)])

    flavours = [False] + ([True] if cfg.n % 2 == 0 else [])
    for hamiltonian in flavours:
        for _ in range(count):
            r = rng.choice(nz)
            s = rng.choice(nz)
            u = coef_vec(bar(r)) if hamiltonian else _sample_perp(rng, r)
            v = coef_vec(bar(s)) if hamiltonian else _sample_perp(rng, s)
            b1, b2, b3, b4 = rand_belem(), rand_belem(), rand_belem(), rand_belem()
            us = pair(u, s)
            vr = pair(v, r)
            w = tuple(us * vi - vr * ui for ui, vi in zip(u, v))
            lhs = bracket(elem_I(ctx, u, r, b1, b2, c), elem_I(ctx, v, s, b3, b4, c))
            rhs = (
                elem_I(ctx, w, vec_add(r, s), b1 * b3, b2 * b4, c)
                - elem_I(ctx, v, s, b3, b1 * b2 * b4, c).scale(us)
                + elem_I(ctx, u, r, b1, b2 * b3 * b4, c).scale(vr)
            )
            verdict.cases += 1
            if lhs != rhs:
                verdict.add_failure(
                    f"{'H' if hamiltonian else 'S'} u={list(u)} r={list(r)} v={list(v)} s={list(s)}",
                    repr(rhs),
                    repr(lhs),
                )
    verdict.notes.append("identity verified at the c = 1 normalization")
    return verdict.finish()


def suite_injectivity(cfg: SuiteConfig) -> Verdict:
    """Rank dichotomy of monomial operators: c psi(b) != 0 gives injectivity on
    every layer, psi(b) = 0 gives the identically-zero (nilpotent) branch."""
    verdict = Verdict("injectivity")
    rng = cfg.rng("injectivity")
    module = _map_module(cfg, rng, hamiltonian=False)
    algebra = module.ctx.algebra
    belems = [algebra.unit()] + [algebra.basis_elem(k) for k in range(1, algebra.dim)]
    for r in _nonzero_degrees(cfg.n, cfg.window_k):
        for b in belems:
            verdict.cases += 1
            report = injectivity_diagnostic(module, r, b)
            factor = module.c * algebra.psi_value(b.coords)
            expected = "injective-everywhere" if factor else "kernel-found"
            if report.verdict != expected:
                verdict.add_failure(
                    f"t^{list(r)}(x)[{', '.join(str(x) for x in b.coords)}]",
                    expected,
                    report.verdict,
                )
            elif not factor and any(layer.rank != 0 for layer in report.layers):
                verdict.add_failure(
                    f"t^{list(r)}(x)[{', '.join(str(x) for x in b.coords)}]",
                    "identically zero operator",
                    "nonzero rank on some layer",
                )
    return verdict.finish()


_SUITES: Dict[str, Callable[[SuiteConfig], Verdict]] = {
    "jacobi": suite_jacobi,
    "sn_closure": suite_sn_closure,
    "hn_closure": suite_hn_closure,
    "rep_axioms": suite_rep_axioms,
    "module_axiom_S": suite_module_axiom_S,
    "module_axiom_H": suite_module_axiom_H,
    "module_axiom_map_S": suite_module_axiom_map_S,
    "module_axiom_map_H": suite_module_axiom_map_H,
    "quasi_assoc": suite_quasi_assoc,
    "evaluation_property": suite_evaluation_property,
    "scalar_property": suite_scalar_property,
    "t_operator_brackets": suite_t_operator_brackets,
    "i_element_brackets": suite_i_element_brackets,
    "injectivity": suite_injectivity,
}


def run_suite(name: str, cfg: SuiteConfig) -> Verdict:
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    return _SUITES[name](cfg)


def run_all(cfg: SuiteConfig) -> List[Verdict]:
    """Every suite in canonical order; per-suite errors are recorded, not raised."""
    verdicts = []
    for name in SUITE_NAMES:
        try:
            verdicts.append(run_suite(name, cfg))
        except Exception as exc:  # noqa: BLE001 - a failing suite must not abort the batch
            v = Verdict(name)
            v.add_failure("suite raised", "a verdict", f"{type(exc).__name__}: {exc}")
            verdicts.append(v.finish())
    return verdicts
