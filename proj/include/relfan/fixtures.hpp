#pragma once

// Small reference degenerations used by tests, the acceptance suite and the
// CLI data files.

#include "relfan/hodge_data.hpp"

namespace relfan::fixtures {

/// Rank 2, k = -1, gamma' = [[1,1],[0,1]] (N' e2 = e1), <e2, e1>' = 1.
DegenerationData fix_a();
/// Rank 3, k = -2, gamma' = I + J + J^2 (N' = J + J^2/2), symmetric pairing
/// with det 8. H' + N'(H') is strictly larger than H'.
DegenerationData fix_d();
/// Rank 2, k = -1, gamma' = I.
DegenerationData trivial();
/// Rank 1, k = -2, gamma' = I, <e1, e1>' = 1.
DegenerationData trivial_rank_one();

}  // namespace relfan::fixtures
