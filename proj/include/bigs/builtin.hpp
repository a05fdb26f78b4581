#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bigs/acs.hpp"
#include "bigs/big.hpp"
#include "bigs/design.hpp"

namespace bigs {

/// Names accepted by builtin_population and `reproduce`.
std::vector<std::string> builtin_names();

/// Five grids in a row with y = 1, 0, 2, 10, 1000 and threshold 5. Grid
/// labels are the y-values.
AcsPopulation thompson1990();

/// Cycle-motif BIGs for T-SBS with N = 40, n = 2 and s0 = {3, 12}.
///
/// stages = 2: beta_k = M_k for A, B, C, D. The member sets give the
/// |alpha_i| lists 1111, 2231 and 2132; D is present in the population but
/// not observed from s0.
/// stages = 4: beta_k = M_k plus the neighbouring nodes, with |beta_k| =
/// 15, 16, 14, 12. Only the sizes and the placement of units 3 and 12 are
/// known, so the remaining ancestors are filler units 1..40 taken in order.
struct Table4Case {
  Big big;
  Design design;
  std::vector<std::size_t> s0;
};
Table4Case table4_bigs(int stages);

}  // namespace bigs
