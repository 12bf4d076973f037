#pragma once

#include <vector>

#include "qrtw/rational_function.hpp"

namespace qrtw {

using RFMatrix = std::vector<std::vector<RationalFunction>>;
using RFVector = std::vector<RationalFunction>;

// Gaussian elimination over the rational-function field. The matrix must be
// square; throws SingularSystem when no pivot survives as a nonzero rational
// function. Exact-zero pivot tests via rf_equal_exact against zero reduce to
// the stored normal form, so a zero entry is always recognized.
RFVector solve_linear(const RFMatrix& coeff, const RFVector& rhs);

// determinant by Laplace expansion along the row with fewest nonzero entries
// (the Jacobians here are sparse; this avoids ever forming dense products)
RationalFunction det(const RFMatrix& m);

} // namespace qrtw
