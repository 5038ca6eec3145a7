"""Quasi-random sequences in the orthogonal group and on Grassmannians.

Uniformly distributed matrix sequences are built by the subgroup recursion:
low-discrepancy sphere points choose coset representatives (reflections),
a square-block convolution interleaves them with the previous level, and
Champernowne-digit cumulative products (Veech's generator) finish the job.
Pushing the sequence to subspace form gives quasi-random points on G(n, k),
which drive Crofton-type estimates of intrinsic volumes of polytopes next
to a Haar-random baseline.
"""

from .estimator import (
    ComparisonReport,
    ConvergenceTrace,
    ExperimentSpec,
    compare,
    intrinsic_volume,
    reference_value,
    run,
)
from .geometry import (
    Polytope,
    ball_volume,
    builtin,
    crofton_constant,
    hull_measure,
    load_polytope,
    project,
    random_spherical_polytope,
)
from .grassmann import Subspace, beta_k, complement, principal_angles
from .lowdisc import SequenceSpec, point_at, points, radical_inverse
from .orthogonal import (
    OrthoSequence,
    OrthoSequenceSpec,
    convolution_index,
    coset_rep,
    default_ortho_spec,
    o2_element,
    ortho_element,
    random_ortho,
    random_ortho_batch,
    t_inverse,
)
from .sphere import sphere_points, sphere_sequence, to_sphere_even, to_sphere_odd
from .udsg import (
    GeneratorSpec,
    champernowne_digit,
    generate,
    generated,
    occurrence_positions,
    r_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonReport",
    "ConvergenceTrace",
    "ExperimentSpec",
    "GeneratorSpec",
    "OrthoSequence",
    "OrthoSequenceSpec",
    "Polytope",
    "SequenceSpec",
    "Subspace",
    "ball_volume",
    "beta_k",
    "builtin",
    "champernowne_digit",
    "compare",
    "complement",
    "convolution_index",
    "coset_rep",
    "crofton_constant",
    "default_ortho_spec",
    "generate",
    "generated",
    "hull_measure",
    "intrinsic_volume",
    "load_polytope",
    "o2_element",
    "occurrence_positions",
    "ortho_element",
    "point_at",
    "points",
    "principal_angles",
    "project",
    "r_sequence",
    "radical_inverse",
    "random_ortho",
    "random_ortho_batch",
    "random_spherical_polytope",
    "reference_value",
    "run",
    "sphere_points",
    "sphere_sequence",
    "t_inverse",
    "to_sphere_even",
    "to_sphere_odd",
]
