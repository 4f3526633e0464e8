#pragma once

#include <vector>

#include "sextic/ade.hpp"
#include "sextic/num.hpp"

namespace sextic {

/// A proposed splitting curve described symbolically: degree, the pairing
/// t = (B~ . Gamma~+) of its lift with the branch transform, and its tangency
/// data at the singular points (tau index, 0 = point off the curve).
struct SplitCurveSpec {
    int degree = 1;
    Rat t_gamma;
    std::vector<std::pair<ADEComponent, int>> incidences;
};

enum class SplitTestResult { Equality, StrictInequality, Infeasible };

/// Evaluate degree^2/2 + sum sigma_P against t_gamma: Equality marks the
/// curve as pre-Z-splitting, StrictInequality as splitting only, Infeasible
/// as inconsistent input.
SplitTestResult pre_z_split_test(const SplitCurveSpec& spec);

/// Left-hand side of the test, exposed for reporting.
Rat pre_z_split_lhs(const SplitCurveSpec& spec);

}  // namespace sextic
