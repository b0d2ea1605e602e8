"""Dihedral group frames with the full spark property: exact certification and numeric tools."""
from .certifier import (
    CertificateReport,
    block_constant_C,
    case_a_det,
    certify_at_lambda,
    certify_full_spark_symbolic,
    classify_subset,
    kappa,
    kappa_coefficient_check,
    subset_det_symbolic,
)
from .exactfield import CycloElement, cyclo_root_power, cyclotomic_polynomial
from .frames import (
    FrameEnsemble,
    analysis,
    construct_w,
    frame_bounds,
    frame_operator,
    genericity_experiment,
    numeric_spark_check,
    reconstruct_from_subset,
    synthesis,
)
from .polyring import PolyMatrix, TPoly, polymatrix_det, polymatrix_det_laplace, vandermonde_det
from .subsets import enumerate_subsets

__version__ = "0.1.0"
