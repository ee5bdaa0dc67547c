#include "spinecho/params.hpp"

#include <cmath>
#include <stdexcept>

#include "spinecho/errors.hpp"

namespace spinecho {

void ChainParams::validate(bool require_even) const {
    std::vector<std::string> bad;
    if (!std::isfinite(gamma)) bad.push_back("gamma must be finite");
    if (gamma < 0.0) bad.push_back("gamma must be >= 0");
    if (!std::isfinite(lambda)) bad.push_back("lambda must be finite");
    if (n_sites < 2) bad.push_back("n_sites must be >= 2");
    if (require_even && n_sites % 2 != 0) bad.push_back("n_sites must be even");
    if (!bad.empty()) throw ConfigError(std::move(bad));
}

BranchParams derive_branch_params(const CentralSpinParams& cs, int n_sites) {
    if (n_sites < 2) throw ConfigError({"n_sites must be >= 2"});
    const double hyp = std::hypot(cs.mu, cs.nu);
    if (hyp == 0.0) throw ConfigError({"central spin eigenbasis undefined (mu = nu = 0)"});
    BranchParams bp;
    bp.big_delta = 0.5 * hyp;
    bp.delta = cs.g * (cs.mu / hyp) / static_cast<double>(n_sites);
    return bp;
}

}  // namespace spinecho
