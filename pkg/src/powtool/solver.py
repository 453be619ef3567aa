"""High-precision search for solutions of exponential-sum systems.

A pair (L, W) with real numeric lambda values compiles into equations
sum_i a_i exp(r_i . u) = 0 on u in C^d, where d = dim L and the real rows
r_i come from embedding a K-basis of L.  Solutions are found by damped
Newton iteration from multi-start points sampled inside hyperplane-avoiding
balls, verified by re-evaluating residuals at doubled precision, and
reported in the ambient V-coordinates z = P u.

Coset confinement of a solution list is detected by scanning bounded-height
integer rows m and clustering the values m . z modulo 2*pi*i.

All numerics use mpmath at an explicit precision; every routine is
deterministic given its inputs and seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import mpmath as mp

from .errors import MarginInfeasible, NotRealEmbedded
from .exponent_field import EmbeddingSpec, numeric_embed
from .groebner import DEFAULT_BUDGET
from .predimension import Configuration, classify_pair
from .subspaces import homogeneous_part
from .toric import specialize


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpSumSystem:
    """Compiled equations sum_j (coeff, row) meaning sum coeff*exp(row . u)."""

    dim_domain: int
    equations: tuple          # tuple of tuples of (mpc coeff, tuple-of-mpf row)
    embedding_matrix: tuple   # n x d rows of mpf: z = P u
    precision_bits: int
    provenance: tuple         # (description, ...) pairs for reporting

    @property
    def n_ambient(self):
        return len(self.embedding_matrix)


@dataclass(frozen=True)
class BallSpec:
    center: tuple
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class NewtonOutcome:
    status: str               # converged | diverged | singular_jacobian | escaped_to_singularity
    solution: tuple | None
    residual: object | None
    iterations: int


@dataclass(frozen=True)
class AttemptRecord:
    index: int
    status: str
    iterations: int
    round_index: int


@dataclass(frozen=True)
class SolveReport:
    solutions: tuple          # tuples of mpc, in V-coordinates z
    domain_points: tuple      # tuples of mpc, in u-coordinates
    residuals: tuple
    attempts: int
    records: tuple            # AttemptRecord per attempt
    ball: BallSpec
    seed: int
    precision_bits: int
    escaped_real_parts: tuple
    filtered: int
    provenance: tuple


@dataclass(frozen=True)
class CosetEntry:
    row: tuple                # integer row m
    shift: tuple              # (Re(m.z), Im(m.z) mod 2*pi) at the representative
    members: tuple            # solution indices


@dataclass(frozen=True)
class CosetReport:
    entries: tuple
    uncovered: tuple
    height_bound: int
    tolerance: float


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------

def compile_system(config: Configuration, emb: EmbeddingSpec,
                   params=None) -> ExpSumSystem:
    """Compile (L, W) with real lambda values into exponential-sum equations.

    L must be homogeneous in x (run affine_decompose first and absorb the
    shift into W's parameters); supplied parameters fold into coefficients.
    """
    if emb is None or emb.nlambdas != config.L.nlambdas:
        raise NotRealEmbedded("an embedding with one real value per lambda is required")
    if params is None:
        params = config.params
    if config.l and any(not e.is_zero for row in config.L.a_block().rows for e in row):
        raise ValueError("L has live parameter columns; apply the shift reduction first")
    W_s = config.W if config.l == 0 else specialize(config.W, params)
    L0 = homogeneous_part(config.L) if config.l else config.L
    basis = L0.spanning_rows()
    d = basis.nrows
    if d == 0:
        raise ValueError("L is zero dimensional; nothing to solve for")
    n = config.n
    prec = emb.precision_bits
    with mp.workprec(prec):
        P = [[numeric_embed(basis.entry(i, j), emb) for i in range(d)]
             for j in range(n)]
        equations = []
        for g in W_s.generators:
            if g.is_zero:
                continue
            terms = []
            for mon, coeff in sorted(g.terms.items()):
                row = tuple(mp.fsum(mon[j] * P[j][k] for j in range(n))
                            for k in range(d))
                terms.append((mp.mpc(mp.mpf(coeff.numerator) / coeff.denominator), row))
            if terms:
                equations.append(tuple(terms))
    if not equations:
        raise ValueError("W has no nonzero generators to solve")
    prov = (("lambda_values", ",".join(emb.lambda_values)),
            ("precision_bits", str(prec)),
            ("n", str(n)), ("dim_domain", str(d)))
    return ExpSumSystem(dim_domain=d, equations=tuple(equations),
                        embedding_matrix=tuple(tuple(r) for r in P),
                        precision_bits=prec, provenance=prov)


# ---------------------------------------------------------------------------
# Ball selection (hyperplane avoidance by iterative halving)
# ---------------------------------------------------------------------------

def ball_avoiding_hyperplanes(outer: BallSpec, hyperplanes, R: float,
                              margin: float = 0.0) -> BallSpec:
    """A radius-R ball inside ``outer`` clearing every hyperplane by R + margin.

    ``outer`` must have radius 2^m R for m = len(hyperplanes).  At step k the
    current ball is halved and its center moved along the k-th hyperplane's
    normal, away from the hyperplane, just far enough that the remaining
    moves cannot spoil the clearance.  MarginInfeasible can only occur when
    a hyperplane passes within ``margin`` of the current center at its step.
    """
    hyperplanes = list(hyperplanes)
    mcount = len(hyperplanes)
    if abs(outer.radius - (2 ** mcount) * R) > 1e-9 * max(1.0, outer.radius):
        raise ValueError("outer radius must equal 2^m R")
    if mcount == 0:
        return outer
    center = list(outer.center)
    rho = outer.radius
    for k, (normal, offset) in enumerate(hyperplanes):
        normal = [float(v) for v in normal]
        norm = math.sqrt(sum(v * v for v in normal))
        if norm == 0:
            raise ValueError("hyperplane normal must be nonzero")
        unit = [v / norm for v in normal]
        off = float(offset) / norm
        rho_next = rho / 2.0
        signed = sum(u * c for u, c in zip(unit, center)) - off
        dist = abs(signed)
        needed = rho_next + margin
        move = max(0.0, needed - dist)
        budget = rho - rho_next
        if move > budget + 1e-12 * max(1.0, budget):
            raise MarginInfeasible(
                f"hyperplane {k} passes within the margin of the current center")
        if move > 0:
            sign = 1.0 if signed >= 0 else -1.0
            center = [c + sign * move * u for c, u in zip(center, unit)]
        rho = rho_next
    return BallSpec(tuple(center), R)


# ---------------------------------------------------------------------------
# Newton iteration
# ---------------------------------------------------------------------------

def system_residual(sys: ExpSumSystem, u, prec=None):
    """Values of every compiled equation at u, at the given precision."""
    with mp.workprec(prec or sys.precision_bits):
        vals = []
        for eq in sys.equations:
            acc = mp.mpc(0)
            for coeff, row in eq:
                acc += coeff * mp.exp(mp.fsum(r * x for r, x in zip(row, u)))
            vals.append(acc)
        return vals


def system_jacobian(sys: ExpSumSystem, u, prec=None):
    """Analytic Jacobian: d/du_k sum coeff*exp(row.u) = sum coeff*row_k*exp(row.u)."""
    with mp.workprec(prec or sys.precision_bits):
        J = mp.matrix(len(sys.equations), sys.dim_domain)
        for i, eq in enumerate(sys.equations):
            for coeff, row in eq:
                e = coeff * mp.exp(mp.fsum(r * x for r, x in zip(row, u)))
                for k in range(sys.dim_domain):
                    J[i, k] += row[k] * e
        return J


def _escapes(sys: ExpSumSystem, u, threshold):
    for eq in sys.equations:
        for _, row in eq:
            re = mp.re(mp.fsum(r * x for r, x in zip(row, u)))
            if abs(re) > threshold:
                return True
    return False


def newton_solve(sys: ExpSumSystem, start, tol, max_iter: int = 60) -> NewtonOutcome:
    """Damped Newton iteration; least-squares steps when overdetermined."""
    neq, d = len(sys.equations), sys.dim_domain
    if neq < d:
        raise ValueError("system must be square or overdetermined")
    with mp.workprec(sys.precision_bits):
        tol = mp.mpf(tol)
        escape_at = mp.mpf(sys.precision_bits) * mp.log(2)
        u = [mp.mpc(x) for x in start]
        if _escapes(sys, u, escape_at):
            return NewtonOutcome("escaped_to_singularity", tuple(u), None, 0)
        fvals = system_residual(sys, u)
        res = max(abs(v) for v in fvals)
        for it in range(1, max_iter + 1):
            if res < tol:
                return NewtonOutcome("converged", tuple(u), res, it - 1)
            J = system_jacobian(sys, u)
            rhs = mp.matrix([-v for v in fvals])
            try:
                if neq == d:
                    step = mp.lu_solve(J, rhs)
                else:
                    step = mp.qr_solve(J, rhs)[0]
            except (ZeroDivisionError, ValueError):
                return NewtonOutcome("singular_jacobian", tuple(u), res, it)
            lam = mp.mpf(1)
            accepted = False
            escaped = False
            while lam > mp.mpf(2) ** -24:
                cand = [x + lam * step[k] for k, x in enumerate(u)]
                if _escapes(sys, cand, escape_at):
                    escaped = True
                    lam /= 2
                    continue
                cand_vals = system_residual(sys, cand)
                cand_res = max(abs(v) for v in cand_vals)
                if cand_res < res:
                    u, fvals, res = cand, cand_vals, cand_res
                    accepted = True
                    break
                lam /= 2
            if not accepted:
                status = "escaped_to_singularity" if escaped else "diverged"
                return NewtonOutcome(status, tuple(u), res, it)
        if res < tol:
            return NewtonOutcome("converged", tuple(u), res, max_iter)
        return NewtonOutcome("diverged", tuple(u), res, max_iter)


# ---------------------------------------------------------------------------
# Multi-start search
# ---------------------------------------------------------------------------

def _sample_in_ball(rng, ball: BallSpec):
    d = len(ball.center)
    vec = [rng.gauss(0.0, 1.0) for _ in range(d)]
    norm = math.sqrt(sum(v * v for v in vec)) or 1.0
    scale = ball.radius * (rng.random() ** (1.0 / d))
    return [c + scale * v / norm for c, v in zip(ball.center, vec)]


def ec_search(config: Configuration, emb: EmbeddingSpec, params=None,
              region: BallSpec | None = None, avoid=(), budget: int = 100,
              seed: int = 0, tol: float = 1e-12, max_iter: int = 60,
              classification=None, height_bound: int = 1,
              gb_budget: int = DEFAULT_BUDGET) -> SolveReport:
    """Multi-start Newton search over (Re(L) + iB), radius doubling on failure.

    The configuration must classify free, with normality not violated up to
    the height bound (checked here unless a classification is supplied).
    Starting points have real and imaginary parts sampled in a
    hyperplane-avoiding sub-ball of the region; converged solutions are
    re-verified at doubled precision and reported in V-coordinates.
    """
    if classification is None:
        classification = classify_pair(config, height_bound, gb_budget)
    if not classification.is_free:
        raise ValueError("pair must be free for the solution search")
    if classification.normal_verdict.is_violated:
        raise ValueError("pair violates normality; the search contract needs "
                         "a normal pair")
    sys = compile_system(config, emb, params)
    d = sys.dim_domain
    if region is None:
        region = BallSpec((0.0,) * d, 8.0)
    if len(region.center) != d:
        raise ValueError("region center has wrong dimension")
    avoid = list(avoid)
    mcount = len(avoid)
    rng = random.Random(seed)
    prec = sys.precision_bits
    tol_mp = mp.mpf(tol)

    solutions, domain_points, residuals, records = [], [], [], []
    escapes = []
    dedup_tol = mp.mpf(tol) ** mp.mpf("0.5")
    filtered = 0
    first_ball = None
    chunk = max(1, budget // 3)
    attempt = 0
    round_index = 0
    while attempt < budget:
        outer = BallSpec(region.center, region.radius * (2 ** round_index))
        inner_r = outer.radius / (2 ** mcount)
        ball = ball_avoiding_hyperplanes(outer, avoid, inner_r) if avoid else \
            BallSpec(outer.center, inner_r)
        if first_ball is None:
            first_ball = ball
        for _ in range(min(chunk, budget - attempt)):
            p = _sample_in_ball(rng, ball)
            q = _sample_in_ball(rng, ball)
            with mp.workprec(prec):
                start = [mp.mpc(a, b) for a, b in zip(p, q)]
            outcome = newton_solve(sys, start, tol, max_iter)
            status = outcome.status
            if status == "converged":
                ok = _verify_solution(sys, outcome.solution, tol_mp)
                if not ok:
                    status = "diverged"
                elif _violates_excluded(outcome.solution, avoid, tol):
                    filtered += 1
                else:
                    if not _is_duplicate(outcome.solution, domain_points, dedup_tol):
                        with mp.workprec(prec):
                            z = tuple(
                                mp.fsum(sys.embedding_matrix[j][k] * outcome.solution[k]
                                        for k in range(d))
                                for j in range(sys.n_ambient))
                        solutions.append(z)
                        domain_points.append(tuple(outcome.solution))
                        residuals.append(outcome.residual)
            elif status == "escaped_to_singularity":
                with mp.workprec(prec):
                    z_re = tuple(
                        mp.re(mp.fsum(sys.embedding_matrix[j][k] * outcome.solution[k]
                                      for k in range(d)))
                        for j in range(sys.n_ambient))
                escapes.append(z_re)
            records.append(AttemptRecord(index=attempt, status=status,
                                         iterations=outcome.iterations,
                                         round_index=round_index))
            attempt += 1
        if solutions:
            break
        round_index += 1
    prov = sys.provenance + (("seed", str(seed)), ("budget", str(budget)),
                             ("tol", repr(float(tol))),
                             ("region_radius", repr(region.radius)))
    return SolveReport(solutions=tuple(solutions),
                       domain_points=tuple(domain_points),
                       residuals=tuple(residuals),
                       attempts=attempt, records=tuple(records),
                       ball=first_ball, seed=seed, precision_bits=prec,
                       escaped_real_parts=tuple(escapes), filtered=filtered,
                       provenance=prov)


def _verify_solution(sys: ExpSumSystem, u, tol) -> bool:
    vals = system_residual(sys, u, prec=2 * sys.precision_bits)
    return max(abs(v) for v in vals) < 4 * tol


def _violates_excluded(u, avoid, tol) -> bool:
    threshold = max(float(tol) ** 0.5, 1e-9)
    for normal, offset in avoid:
        norm = math.sqrt(sum(float(v) ** 2 for v in normal))
        signed = sum(float(v) * float(mp.re(x)) for v, x in zip(normal, u)) \
            - float(offset)
        if abs(signed) / norm < threshold:
            return True
    return False


def _is_duplicate(u, accepted, dedup_tol) -> bool:
    for other in accepted:
        if max(abs(x - y) for x, y in zip(u, other)) < dedup_tol:
            return True
    return False


# ---------------------------------------------------------------------------
# Coset confinement detection
# ---------------------------------------------------------------------------

def _canonical_rows(n: int, height: int):
    from itertools import product
    rows = []
    for cand in product(range(-height, height + 1), repeat=n):
        if all(v == 0 for v in cand):
            continue
        g = 0
        for v in cand:
            g = math.gcd(g, v)
        if g != 1:
            continue
        lead = next(v for v in cand if v != 0)
        if lead < 0:
            continue
        rows.append(cand)
    rows.sort()
    return rows


def confinement_detect(solutions, kernel=None, height_bound: int = 3,
                       tol: float = 1e-8, precision_bits: int = 128) -> CosetReport:
    """Cover the solutions by cosets m.z = shift (mod 2*pi*i) of bounded height.

    Greedy cover over pairwise clusters of the residues; every listed coset
    covers at least one previously uncovered solution and each member's
    residue is within tol of the listed shift.  Points no bounded-height
    relation touches stay in ``uncovered``.
    """
    del kernel  # the kernel of exp is 2*pi*i Z, realized below via mp.pi
    solutions = [tuple(mp.mpc(x) for x in s) for s in solutions]
    if not solutions:
        raise ValueError("need at least one solution")
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    n = len(solutions[0])
    with mp.workprec(precision_bits):
        tau = 2 * mp.pi
        tol_mp = mp.mpf(tol)
        candidates = []  # (members frozenset, row, seed_index, shift)
        seen_member_sets = {}
        for row in _canonical_rows(n, height_bound):
            residues = []
            for z in solutions:
                v = mp.fsum(mi * zi for mi, zi in zip(row, z))
                re = mp.re(v)
                im = mp.im(v) % tau
                residues.append((re, im))
            for s, (re_s, im_s) in enumerate(residues):
                members = []
                for t, (re_t, im_t) in enumerate(residues):
                    dre = abs(re_t - re_s)
                    dim_ = abs(im_t - im_s)
                    dim_ = min(dim_, tau - dim_)
                    if dre < tol_mp and dim_ < tol_mp:
                        members.append(t)
                if len(members) < 2:
                    continue
                key = (row, tuple(members))
                if key not in seen_member_sets:
                    seen_member_sets[key] = True
                    candidates.append((tuple(members), row, s, (re_s, im_s)))
        covered = set()
        entries = []
        while True:
            best = None
            for members, row, s, shift in candidates:
                gain = sum(1 for t in members if t not in covered)
                if gain == 0:
                    continue
                rank = (-gain, row, s)
                if best is None or rank < best[0]:
                    best = (rank, members, row, shift)
            if best is None:
                break
            _, members, row, shift = best
            entries.append(CosetEntry(row=row, shift=shift, members=members))
            covered.update(members)
        uncovered = tuple(i for i in range(len(solutions)) if i not in covered)
    return CosetReport(entries=tuple(entries), uncovered=uncovered,
                       height_bound=height_bound, tolerance=float(tol))
