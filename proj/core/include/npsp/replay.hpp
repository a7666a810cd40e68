#pragma once

#include "npsp/shares.hpp"

namespace npsp {

// The published three-party walkthrough: fixed inputs, fixed commodity
// randomness (third share forced), fixed v2. Running the protocol on this
// fixture must reproduce the known intermediate and final values exactly.
struct ReplayFixture {
  std::vector<DiagVec> data;  // A, B, C
  ShareSet shares;            // R_a, R_b, R_c with r_a, r_b set and r_c forced
  Scalar v2;
};

inline ReplayFixture appendix_b_fixture() {
  ReplayFixture f;
  f.data = {
      DiagVec({1, 1, 1}),
      DiagVec({0, 1, 1}),
      DiagVec({1, 0, 1}),
  };
  f.shares = inject_share_set(
      {
          DiagVec({172, 243, 136}),
          DiagVec({274, 356, 180}),
          DiagVec({341, 357, 69}),
      },
      {Scalar(8015322), Scalar(10543269), std::nullopt});
  f.v2 = 3;
  return f;
}

}  // namespace npsp
