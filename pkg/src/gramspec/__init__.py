"""Exact computations on faces of Gram spectrahedra of binary forms."""

__version__ = "0.1.0"

from .bounds import common_real_root_certificate, density_experiment, diagram, max_polyhedral_dim
from .construction import (
    ScalarPicker,
    careful_special_basis,
    cofactor_q,
    hermitian_simplex_face,
    special_basis,
    symmetric_simplex_face,
)
from .errors import GramSpecError, InvalidInput, VerificationError
from .extreme import (
    enumerate_rank_one,
    rank_one_forms,
    face_from_factorization,
    gcd_rank_bound,
    low_rank_selection,
    rank_two_from_rank_one,
)
from .forms import INF, BinaryForm, RootList
from .gram import (
    FaceReport,
    GramTensor,
    diagonal_relations_only,
    face_dimension_formula,
    face_dimension_kernel,
    gram_from_sos,
    mu,
    supporting_face,
)
from .linalg import Matrix
from .scalars import GaussianRational
from .subspaces import Subspace, conj_product, product, span
