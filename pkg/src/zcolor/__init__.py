"""Integer colorings of link diagrams.

Decide Z-colorability by exact integer linear algebra, build parallels
(cables) of diagrams, construct small-palette colorings of even parallels,
and rewrite colored diagrams by verified local moves.
"""

from .algebra import (
    ColoringLattice,
    ColoringMatrix,
    coloring_matrix,
    determinant,
    diagram_lattice,
    fox_coloring_count,
    is_z_colorable,
    kernel_lattice,
    smith_normal_form,
    solve_partial,
)
from .cabling import (
    CableError,
    CableSpec,
    insert_full_twist,
    linking_equals_writhe,
    parallel,
    two_parallel_untwisted,
)
from .coloring import (
    Coloring,
    ColoringError,
    DiffSpectrum,
    diff_spectrum,
    is_simple,
    minimize_palette_on_diagram,
    palette,
    verify_coloring,
)
from .diagram import (
    Crossing,
    Diagram,
    DiagramError,
    PDSyntaxError,
    canonical,
    components,
    is_connected,
    linking_number,
    parse_pd,
    serialize_pd,
    validate,
    writhe,
)
from .moves import (
    MoveTrace,
    replay_trace,
    verify_local_equivalence,
)
from .parallel_coloring import (
    BoundaryPattern,
    ConstructionError,
    NoApplicableMoveError,
    RegionColoring,
    color_even_parallel,
    color_two_parallel,
    delete_color_moves,
    propagate_region,
)
from .rewrite import (
    DiffPath,
    NoDiffPathError,
    RewriteError,
    eliminate_max_diff,
    find_diff_path,
    to_simple_coloring,
)

__all__ = [
    "BoundaryPattern",
    "CableError",
    "CableSpec",
    "Coloring",
    "ColoringError",
    "ColoringLattice",
    "ColoringMatrix",
    "ConstructionError",
    "Crossing",
    "Diagram",
    "DiagramError",
    "DiffPath",
    "DiffSpectrum",
    "MoveTrace",
    "NoApplicableMoveError",
    "NoDiffPathError",
    "PDSyntaxError",
    "RegionColoring",
    "RewriteError",
    "canonical",
    "color_even_parallel",
    "color_two_parallel",
    "coloring_matrix",
    "components",
    "delete_color_moves",
    "determinant",
    "diagram_lattice",
    "diff_spectrum",
    "eliminate_max_diff",
    "find_diff_path",
    "fox_coloring_count",
    "insert_full_twist",
    "is_connected",
    "is_simple",
    "is_z_colorable",
    "kernel_lattice",
    "linking_equals_writhe",
    "linking_number",
    "minimize_palette_on_diagram",
    "palette",
    "parallel",
    "parse_pd",
    "propagate_region",
    "replay_trace",
    "serialize_pd",
    "smith_normal_form",
    "solve_partial",
    "to_simple_coloring",
    "two_parallel_untwisted",
    "validate",
    "verify_coloring",
    "verify_local_equivalence",
    "writhe",
]

__version__ = "0.1.0"
