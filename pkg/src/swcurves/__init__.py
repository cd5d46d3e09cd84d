"""swcurves: spectral curves of Seiberg-Witten integrable systems.

Exact symbolic construction of the SU(n) adjoint families over an elliptic
curve and the periodic Toda curves for the classical groups, together with
the numerical verification layer: branch residues, period monodromy, genus
measurements, massive vacua, AKS commutation, and Duistermaat-Heckman
linearity.
"""

from .exactcore import (
    BranchError, DegenerateInputError, NeedsHigherOrderError,
    PuiseuxSeries, discriminant, puiseux_branches, resultant,
    series_sqrt, sylvester_matrix,
)
from .weierstrass import (
    EllipticCurveModel, FunctionFieldElement, GENERIC_CURVE,
    expand_y, expand_y_inverse, reduce_element, x_expansion, xk_basis,
)
from .su_adjoint import (
    NoDistinguishedSolutionError, ResidueReport, SpectralFamily,
    block_inheritance, branch_residues, check_first_order_poles,
    degeneration_check_su2, leading_polynomial, pn_closed, pn_list,
    pn_solve, pure_curve_structure, spectral_family, su2_consistency,
)
from .numerics import (
    AnalyticEllipticData, ContinuationError, MonodromyMatrix, PeriodFrame,
    ProximityError, curve_from_nome, elliptic_periods, gamma2_membership,
    kahler_potential, lattice_data, model_consistency, monodromy,
    monodromy_report, sw1_periods, weierstrass_functions,
)
from .toda import (
    ChevalleyRealization, LaxOperator, PlaneCurveModel, ShapeError,
    TodaCharpoly, charpoly_matches_family, cover_genus, genus_table,
    riemann_hurwitz, substitution_identities, toda_charpoly, toda_family,
    verify_all_substitutions,
)
from .vacua import (
    SubgroupClass, VacuumPoint, all_vacua, count_index_subgroups,
    cover_to_curve, node_count, su2_vacua,
)
from .symplectic import (
    DegenerateFitError, OrbitPoint2Sphere, SplitAlgebra, aks_bracket,
    dh_linearity_fit, kks_sphere_integral, random_tridiagonal_point,
    split_algebra, tridiagonal_point,
)
from .suite import run_battery

__version__ = "0.1.0"
