"""k-edges, crossing identities and shellability classes of good drawings of K_n."""

__version__ = "0.1.0"

from .constructors import (
    gen_convex,
    gen_cylindrical,
    gen_random,
    gen_twopage,
    harary_hill,
    search_twopage_optimal,
)
from .drawing import (
    DrawingSpec,
    PlanarizedDrawing,
    build,
    delete_vertex,
    faces,
    triangle_partition,
    validate_goodness,
)
from .geometry import from_points
from .kedge import check_cr_identity, check_recursion, invariant_stats, k_value, profile
from .deviations import check_kdev_identities, deviations, scan_conjecture
from .shellability import (
    find_pair_sequence,
    find_seq_shell,
    is_alternating_class,
    is_seq_shellable,
    is_sps,
    verify_certificate,
)
