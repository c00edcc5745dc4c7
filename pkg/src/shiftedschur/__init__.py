"""Shifted Schur measures, their Pfaffian fermion kernel and edge/bulk scaling limits."""

from .airy import airy_derivative, airy_kernel, airy_p
from .kernel import ConsistencyError, JTable, j_coefficient, kernel_K, one_point, table_for
from .limit_shape import density, expected_profile, limit_shape, sine_kernel
from .miwa import DomainError, MiwaParams, chi, phi, solve_minimal_multicritical, validate
from .partitions import StrictPartition, enumerate_strict, sample
from .scaling import edge_j, edge_kernel, largest_part_law, pfaffian_to_determinant_check
from .schur_q import partition_function, probability, schur_P, schur_Q, weight
from .skew import correlation, correlation_matrix, gap_probability, pfaffian
from .tracy_widom import fredholm_det, tw_cdf

__version__ = "0.1.0"
