"""powtool: exact algebra and high-precision solving for exponential sums.

The package splits into an exact symbolic side and a numeric side:

* ``exponent_field`` - arithmetic in K = Q(l1..lm), Q-basis extraction,
  real embedding;
* ``exact_linalg`` - matrices over K and Q, integer lattice utilities;
* ``subspaces`` - K-linear / Q-linear subspace calculus on V^n;
* ``toric`` - Laurent ideals, Groebner bases, subtorus quotients, torsion
  cosets;
* ``predimension`` - the delta calculus, pair classification, certificates;
* ``solver`` - compiled exponential-sum systems, Newton multi-start search,
  coset confinement detection;
* ``cli`` - the ``powtool`` command and the problem-file DSL.
"""

from .errors import (BadEmbedding, BudgetExceeded, EmptyVariety,
                     MarginInfeasible, NearSingularEvaluation, NotContained,
                     NotOnVariety, NotRealEmbedded, ParseError, PowtoolError)
from .exponent_field import (EmbeddingSpec, ExponentScalar, numeric_embed,
                             qbasis_decompose, scalar_arith)
from .exact_linalg import KMatrix, QMatrix, kernel_basis, rref, solve_linear
from .subspaces import (AffineCoset, KLinearSubspace, QLinearSubspace,
                        affine_decompose, dim_of, enumerate_q_subspaces,
                        maximal_q_subspace, minimal_q_envelope,
                        orth_complement, quotient_subspace, rational_section,
                        subspace_lattice)
from .toric import (GroebnerBasis, LaurentIdeal, SubtorusSpec, TorsionPoint,
                    buchberger_basis, dim_variety, exceptional_locus_member,
                    fiber_dim_at, generic_fiber_dim, quotient_by_subtorus,
                    specialize, torsion_cosets_bounded, torus_of)
from .predimension import (Configuration, KernelSpec, PairClassification,
                           PhiCertificate, build_phi_certificate,
                           check_class_bound, classify_pair, delta_of,
                           delta_relative, eval_phi_certificate, quotient_pair)
from .solver import (BallSpec, CosetReport, ExpSumSystem, SolveReport,
                     ball_avoiding_hyperplanes, compile_system,
                     confinement_detect, ec_search, newton_solve)
from .cli import ProblemFile, Report, parse_problem, run_command

__version__ = "0.1.0"
