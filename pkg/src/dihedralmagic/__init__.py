"""Semi-magic squares over dihedral groups.

Build 2m x 2m squares over D_{2m^2} from four blocks carved out of a
classical magic square, verify row/column product conditions under linear,
circular, semicircular, and arbitrary per-line orderings, and brute-force
small existence and nonexistence claims with reproducible certificates.
"""

from .base_squares import (
    ClassicCheck,
    IntMagicSquare,
    bundled_square,
    classic_constant,
    from_rows,
    generate,
    parse_int_square,
    serialize_int_square,
    translate,
    verify_classic,
)
from .construct import (
    Admissibility,
    BlockSet,
    ConstantPair,
    Construction,
    admissibility,
    block_constants,
    build,
    build_even_blocks,
    build_odd_blocks,
    diagonal_starts,
    expected_constant,
    glue,
)
from .formats import parse_square, serialize_square, square_from_json, square_to_json
from .grids import GroupGrid
from .group import (
    DihedralElement,
    enumerate_elements,
    identity,
    parse_token,
    reflection,
    rotation,
    sequence_product,
)
from .power_squares import (
    PowerCheck,
    PowerSquareDoc,
    PowerSquares,
    build_power_squares,
    check_sums,
    expected_sums,
    parse_power_square,
    serialize_power_square,
)
from .search import (
    SearchOutcome,
    Spectrum,
    linear_ordering_search,
    rectangle_search,
    small_square_search,
    sms2_nonexistence,
    sms4_search,
    spectrum_enumerate,
)
from .verify import (
    VerificationReport,
    check_coverage,
    circular_line_products,
    circular_products,
    diagonal_products,
    exists_arbitrary,
    exists_circular,
    exists_semicircular,
    linear_line_products,
    linear_products,
    semicircular_line_products,
    semicircular_products,
    shifted_block_products,
    verify_linear,
    verify_rectangle,
)

__version__ = "0.1.0"

__all__ = [
    "Admissibility",
    "BlockSet",
    "ClassicCheck",
    "ConstantPair",
    "Construction",
    "DihedralElement",
    "GroupGrid",
    "IntMagicSquare",
    "PowerCheck",
    "PowerSquareDoc",
    "PowerSquares",
    "SearchOutcome",
    "Spectrum",
    "VerificationReport",
    "admissibility",
    "block_constants",
    "build",
    "build_even_blocks",
    "build_odd_blocks",
    "build_power_squares",
    "bundled_square",
    "check_coverage",
    "check_sums",
    "circular_line_products",
    "circular_products",
    "classic_constant",
    "diagonal_products",
    "diagonal_starts",
    "enumerate_elements",
    "exists_arbitrary",
    "exists_circular",
    "exists_semicircular",
    "expected_constant",
    "expected_sums",
    "from_rows",
    "generate",
    "glue",
    "identity",
    "linear_line_products",
    "linear_ordering_search",
    "linear_products",
    "parse_int_square",
    "parse_power_square",
    "parse_square",
    "parse_token",
    "rectangle_search",
    "reflection",
    "rotation",
    "semicircular_line_products",
    "semicircular_products",
    "sequence_product",
    "serialize_int_square",
    "serialize_power_square",
    "serialize_square",
    "shifted_block_products",
    "small_square_search",
    "sms2_nonexistence",
    "sms4_search",
    "spectrum_enumerate",
    "square_from_json",
    "square_to_json",
    "translate",
    "verify_classic",
    "verify_linear",
    "verify_rectangle",
    "__version__",
]
