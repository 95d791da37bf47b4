// Process-wide knobs. The size bound caps the largest cochain table any brute-force
// routine will materialize, measured in generator entries (|G|^degree_max * gens(M)).
// Default 2^20, overridable via the LOGKFL_SIZE_BOUND environment variable or the setter
// (tests raise it for the big sweeps).
#pragma once

#include <cstdint>

namespace logkfl {

std::uint64_t size_bound();
void set_size_bound(std::uint64_t bound);

}  // namespace logkfl
