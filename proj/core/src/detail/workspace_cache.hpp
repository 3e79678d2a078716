#pragma once

#include "lociso/ball.hpp"

namespace lociso::detail {

// Per-thread BFS workspace sized for m; two slots so that alternating
// between a pair of windows does not re-zero the stamp arrays.
BallWorkspace& workspace_for(const Structure& m);

}  // namespace lociso::detail
