#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bubblekit {

/// One quantitative check of the verification suite. `criterion` groups the
/// checks (1 constants, 2 vortex closed forms, 3 nonexistence at maxima,
/// 4 residual decay, 5 cluster geometry, 6 boundary-expansion identities,
/// 7 interaction calculus). `measured` is compared against `bound` with the
/// direction implied by the check itself; `pass` is the verdict.
struct VerifyCheck {
  int criterion = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
};

std::vector<VerifyCheck> run_verification(const VerifyOptions& opt = {});

int count_failures(const std::vector<VerifyCheck>& checks);

}  // namespace bubblekit
