#include "sextic/criterion.hpp"

#include "sextic/errors.hpp"

namespace sextic {

Rat pre_z_split_lhs(const SplitCurveSpec& spec) {
    if (spec.degree < 1) throw domain_error("pre_z_split_test: degree must be positive");
    Rat lhs = make_rat(static_cast<long>(spec.degree) * spec.degree, 2);
    for (const auto& [comp, tau] : spec.incidences) lhs += sigma_p(comp, tau);
    return lhs;
}

SplitTestResult pre_z_split_test(const SplitCurveSpec& spec) {
    Rat lhs = pre_z_split_lhs(spec);
    if (lhs == spec.t_gamma) return SplitTestResult::Equality;
    if (lhs < spec.t_gamma) return SplitTestResult::StrictInequality;
    return SplitTestResult::Infeasible;
}

}  // namespace sextic
