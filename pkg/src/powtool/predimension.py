"""Predimension calculus and classification of pairs (L, W).

A Configuration presents the generic point of a pair: a K-linear subspace L
of V^{n+l} and a variety W over Q in the matching torus coordinates, with
optional exact values for the trailing l torus parameters.

The predimension of the generic point is

    delta = lin.dim_K + tr.deg of the exponential image - lin.dim_Q
          = dim L + dim W - dim (minimal Q-linear envelope of L),

computed exactly from the symbolic data.  Classification decides freeness
(no proper Q-linear subspace contains L), specialness (free and
dim L + dim W < n, the overdetermined case), and normality up to a height
bound (every Q-quotient pair stays non-overdetermined); the normality
verdict is sound for violations and explicitly bounded for confirmations.

Evaluable certificates collect, for a list of candidate obstruction
subspaces M, the exceptional-locus tests, quotient exceptional tests and
bounded torsion-coset lists that every solution of a special system must
satisfy; "no disjunct holds" on a genuine point means the candidate list is
incomplete, never that a verdict was wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import BadEmbedding, EmptyVariety, NotContained, NotOnVariety
from .groebner import DEFAULT_BUDGET
from .subspaces import (KLinearSubspace, QLinearSubspace, dim_fiber,
                        enumerate_q_subspaces, homogeneous_part,
                        maximal_q_subspace, minimal_q_envelope,
                        q_contained_in_k, q_fiber_at_zero, quotient_characters,
                        quotient_subspace)
from .toric import (LaurentIdeal, SubtorusSpec, TorsionPoint, dim_variety,
                    generic_fiber_dim, fiber_dim_at, point_on_variety,
                    quotient_by_subtorus, specialize, torsion_cosets_bounded)


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """A pair (L, W) with matching ambient sizes, presenting its generic point."""

    L: KLinearSubspace
    W: LaurentIdeal
    params: tuple | None = None
    kernel_intersection_dim: int = 0

    def __post_init__(self):
        if self.W.nvars != self.L.ambient:
            raise ValueError("W must live on n + l torus coordinates")
        if self.params is not None:
            params = tuple(Fraction(p) for p in self.params)
            if len(params) != self.L.l:
                raise ValueError("parameter count must equal l")
            if any(p == 0 for p in params):
                raise ValueError("parameters must be nonzero")
            object.__setattr__(self, "params", params)
        if self.kernel_intersection_dim not in (0, 1):
            raise ValueError("kernel intersection dimension must be 0 or 1 "
                             "for a rank-1 kernel")

    @property
    def n(self) -> int:
        return self.L.n

    @property
    def l(self) -> int:
        return self.L.l

    def specialized_variety(self) -> LaurentIdeal:
        if self.l == 0:
            return self.W
        if self.params is None:
            raise ValueError("parametrized configuration needs parameter values")
        return specialize(self.W, self.params)


@dataclass(frozen=True)
class KernelSpec:
    """Rank-1 cyclic kernel of exp: a formal generator or numeric 2*pi*i."""

    mode: str = "symbolic"
    precision_bits: int = 128

    def __post_init__(self):
        if self.mode not in ("symbolic", "numeric"):
            raise ValueError("kernel mode must be symbolic or numeric")

    def numeric_generator(self):
        if self.mode != "numeric":
            raise ValueError("symbolic kernel has no numeric value")
        with mp.workprec(self.precision_bits):
            return 2j * mp.pi


@dataclass(frozen=True)
class NormalVerdict:
    """Either confirmed up to a height bound or violated by a witness subspace."""

    up_to_height: int | None = None
    violated_by: QLinearSubspace | None = None

    @property
    def is_violated(self) -> bool:
        return self.violated_by is not None

    def describe(self) -> str:
        if self.is_violated:
            return "violated"
        return f"normal_up_to_height_{self.up_to_height}"


@dataclass(frozen=True)
class PairClassification:
    dim_L: int
    dim_W: int
    envelope: QLinearSubspace
    N_L: QLinearSubspace
    is_free: bool
    is_special: bool
    normal_verdict: NormalVerdict
    delta: int


# ---------------------------------------------------------------------------
# Predimension
# ---------------------------------------------------------------------------

def _effective_dims(config: Configuration, budget: int):
    """(dim L(a), dim W(s), lin.dim_Q of the generic point over the parameters)."""
    W_s = config.specialized_variety()
    dw = dim_variety(W_s, budget)
    if dw is None:
        raise EmptyVariety("specialized variety is empty; no generic point")
    env = minimal_q_envelope(config.L.as_unparametrized())
    if config.l == 0:
        return config.L.dim, dw, env.dim, env
    dl = dim_fiber(config.L)
    env0 = q_fiber_at_zero(env, config.n)
    return dl, dw, env0.dim, env


def delta_of(config: Configuration, budget: int = DEFAULT_BUDGET) -> int:
    """Predimension of the configuration's generic point (relative to the
    parameters when l > 0)."""
    dl, dw, dq, _ = _effective_dims(config, budget)
    return dl + dw - dq


def delta_relative(big: Configuration, small: Configuration,
                   embedding=None, budget: int = DEFAULT_BUDGET) -> int:
    """delta(big) - delta(small) for small embedded coordinate-wise in big."""
    if embedding is None:
        embedding = tuple(range(small.n))
    embedding = tuple(int(i) for i in embedding)
    if len(embedding) != small.n:
        raise BadEmbedding("embedding must list one big coordinate per small one")
    if len(set(embedding)) != len(embedding):
        raise BadEmbedding("embedding is not injective")
    if any(i < 0 or i >= big.n for i in embedding):
        raise BadEmbedding("embedding index out of range")
    return delta_of(big, budget) - delta_of(small, budget)


def check_class_bound(configs, d: int, kernel: KernelSpec,
                      budget: int = DEFAULT_BUDGET):
    """Per-config verdicts of delta relative to the kernel >= -d.

    For a rank-1 standard kernel the declared kernel overlap enters the
    K-linear and Q-linear dimensions equally, so the relative value equals
    the configuration's own delta.
    """
    del kernel  # rank-1 cyclic kernel: mode does not change the arithmetic
    return [delta_of(c, budget) >= -d for c in configs]


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def classify_pair(config: Configuration, height_bound: int = 1,
                  budget: int = DEFAULT_BUDGET) -> PairClassification:
    """Full verdict for the pair: dims, freeness, specialness, bounded normality."""
    dl, dw, dq, env = _effective_dims(config, budget)
    n, l = config.n, config.l
    free = env.dim == n + l
    special = free and dl + dw < n
    L0 = homogeneous_part(config.L) if l else config.L
    N_L = maximal_q_subspace(L0)
    verdict = _normality_verdict(config, height_bound, budget)
    return PairClassification(
        dim_L=dl, dim_W=dw, envelope=env, N_L=N_L,
        is_free=free, is_special=special,
        normal_verdict=verdict, delta=dl + dw - dq)


def _normality_verdict(config: Configuration, height_bound: int,
                       budget: int) -> NormalVerdict:
    W_s = config.specialized_variety()
    n = config.n
    for M in enumerate_q_subspaces(n, height_bound):
        Lq = quotient_subspace(config.L, M)
        dim_lq = dim_fiber(Lq) if config.l else Lq.dim
        Wq = quotient_by_subtorus(W_s, M, budget)
        dim_wq = dim_variety(Wq, budget)
        if dim_wq is None:
            continue  # empty quotient puts no points in the torus
        if dim_lq + dim_wq < n - M.dim:
            return NormalVerdict(violated_by=M)
    return NormalVerdict(up_to_height=height_bound)


def quotient_pair(config: Configuration, M: QLinearSubspace,
                  budget: int = DEFAULT_BUDGET) -> Configuration:
    """(L/M, W/expM) in matching quotient coordinates; requires M ⊆ L(0).

    Specialness of the input propagates to the output: with M inside L(0)
    the quotient loses exactly dim M from both sides' ambient dimension
    budget while d(W, expM) >= 0 only helps the inequality.
    """
    if M.n != config.n:
        raise ValueError("M must live in V^n")
    L0 = homogeneous_part(config.L) if config.l else config.L
    if not q_contained_in_k(M, L0):
        raise NotContained("M is not contained in L(0)")
    Lq = quotient_subspace(config.L, M)
    Wq = quotient_by_subtorus(config.W, M, budget)
    return Configuration(L=Lq, W=Wq, params=config.params,
                         kernel_intersection_dim=config.kernel_intersection_dim)


# ---------------------------------------------------------------------------
# Evaluable certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiDisjunct:
    kind: str                       # exceptional | quotient_exceptional | torsion_cosets
    subspace: QLinearSubspace       # the M this disjunct belongs to
    variety: LaurentIdeal           # the variety the test runs against
    chars: tuple                    # character rows mapping base points downstairs
    fiber_space: QLinearSubspace | None = None
    generic_dim: int | None = None
    cosets: tuple = ()


@dataclass(frozen=True)
class PhiCertificate:
    """Quantifier-free certificate: a point of the pair must satisfy some disjunct.

    Disjunct order is deterministic: for each M in list order the
    exceptional-locus test then the quotient exceptional test, followed by
    every M's torsion-coset list.  Evaluation returns the first index that
    holds.
    """

    config: Configuration
    subspaces: tuple
    disjuncts: tuple


def _dedup_subspaces(cands, extra):
    seen = []
    for M in list(cands) + list(extra):
        if all(M != other for other in seen):
            seen.append(M)
    return seen


def _map_point(chars, point):
    """Image of an exact point under the monomial map given by integer rows."""
    if isinstance(point, TorsionPoint):
        exps = tuple(sum(m * e for m, e in zip(row, point.exponents)) % point.order
                     for row in chars)
        return TorsionPoint(len(chars), point.order, exps)
    out = []
    for row in chars:
        v = Fraction(1)
        for x, e in zip(point, row):
            v *= Fraction(x) ** e
        out.append(v)
    return tuple(out)


def _values_match(point, rows, reference: TorsionPoint) -> bool:
    """Do the characters of ``point`` on ``rows`` agree with the reference coset?"""
    for row in rows:
        want = reference.char_value(row)
        if isinstance(point, TorsionPoint):
            if point.char_value(row) != want:
                return False
        else:
            v = Fraction(1)
            for x, e in zip(point, row):
                v *= Fraction(x) ** e
            if want == 0:
                if v != 1:
                    return False
            elif want == Fraction(1, 2):
                if v != -1:
                    return False
            else:
                return False  # rational value never equals a higher-order root
    return True


def build_phi_certificate(config: Configuration, M_candidates,
                          torsion_bound: int = 2,
                          budget: int = DEFAULT_BUDGET) -> PhiCertificate:
    """Assemble the evaluable certificate for a special configuration."""
    dl, dw, dq, env = _effective_dims(config, budget)
    n, l = config.n, config.l
    if not (env.dim == n + l and dl + dw < n):
        raise ValueError("certificates are only defined for special pairs")
    W_s = config.specialized_variety()
    L0 = homogeneous_part(config.L) if l else config.L
    N_L0 = maximal_q_subspace(L0)
    subspaces = _dedup_subspaces(M_candidates,
                                 [N_L0, QLinearSubspace.zero_subspace(n)])
    for M in subspaces:
        if not q_contained_in_k(M, L0):
            raise NotContained("candidate M is not contained in L(0)")
    main, torsion = [], []
    for M in subspaces:
        d_M = generic_fiber_dim(W_s, M, budget)
        main.append(PhiDisjunct(kind="exceptional", subspace=M, variety=W_s,
                                chars=(), fiber_space=M, generic_dim=d_M))
        chars_M = quotient_characters(M)
        Lq = quotient_subspace(config.L, M)
        N_LM = maximal_q_subspace(homogeneous_part(Lq) if l else Lq)
        W_M = quotient_by_subtorus(W_s, M, budget)
        d_q = generic_fiber_dim(W_M, N_LM, budget)
        main.append(PhiDisjunct(kind="quotient_exceptional", subspace=M,
                                variety=W_M, chars=chars_M,
                                fiber_space=N_LM, generic_dim=d_q))
        # preimage of N_{L/M} under the quotient map (contains M automatically)
        rows_tot = []
        for row in N_LM.matrix.int_rows():
            pulled = [sum(int(row[i]) * chars_M[i][j] for i in range(len(chars_M)))
                      for j in range(n)]
            rows_tot.append(pulled)
        M_tot = QLinearSubspace.from_rows(n, rows_tot) if rows_tot \
            else QLinearSubspace.full_space(n)
        chars_tot = quotient_characters(M_tot)
        c2 = len(chars_tot)
        if c2 == 0:
            cosets = ()
        else:
            W_tot = quotient_by_subtorus(W_s, M_tot, budget)
            trivial = SubtorusSpec(
                c2, tuple(tuple(1 if j == i else 0 for j in range(c2))
                          for i in range(c2)))
            cosets = tuple(torsion_cosets_bounded(W_tot, [trivial], torsion_bound,
                                                  budget))
        torsion.append(PhiDisjunct(kind="torsion_cosets", subspace=M,
                                   variety=W_s, chars=chars_tot, cosets=cosets))
    return PhiCertificate(config=config, subspaces=tuple(subspaces),
                          disjuncts=tuple(main) + tuple(torsion))


def eval_phi_certificate(cert: PhiCertificate, point,
                         budget: int = DEFAULT_BUDGET):
    """Index of the first disjunct the exact point satisfies, or None.

    The point must lie on the (specialized) variety; NotOnVariety otherwise.
    None means no disjunct holds, which for a genuine point of a special
    self-sufficient pair signals an incomplete candidate list.
    """
    W_s = cert.config.specialized_variety()
    if not point_on_variety(W_s, point):
        raise NotOnVariety("point is not on the variety")
    for idx, dis in enumerate(cert.disjuncts):
        if dis.kind == "exceptional":
            fd = fiber_dim_at(dis.variety, dis.fiber_space, point, budget)
            if fd is not None and fd > dis.generic_dim:
                return idx
        elif dis.kind == "quotient_exceptional":
            img = _map_point(dis.chars, point) if dis.chars else point
            if dis.variety.nvars == 0:
                continue
            if not point_on_variety(dis.variety, img):
                continue
            fd = fiber_dim_at(dis.variety, dis.fiber_space, img, budget)
            if fd is not None and fd > dis.generic_dim:
                return idx
        else:
            if not dis.chars:
                continue
            img = _map_point(dis.chars, point)
            for T, zeta in dis.cosets:
                if _values_match(img, T.lattice_rows, zeta):
                    return idx
    return None
