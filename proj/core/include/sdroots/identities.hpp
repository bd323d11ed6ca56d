#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdroots/fields.hpp"

namespace sdroots {

struct IdentityResult {
    std::string name;
    std::string formula;  // serialized as "paper_ref"
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct IdentitySuiteConfig {
    int N = 8;                  // grid size per direction; band limit N/2
    std::uint64_t seed = 7;
    Vec3 lengths{6.283185307179586, 6.283185307179586, 6.283185307179586};
    double tolerance = 1e-10;
};

// The eleven κ = 0 operator identities on random real band-limited fields.
std::vector<IdentityResult> run_identity_suite(const IdentitySuiteConfig& cfg);

}  // namespace sdroots
