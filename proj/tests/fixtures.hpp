#pragma once

#include "rbn/network.hpp"

namespace test {

// n=2, k=2, both nodes read (0, 1); node 0 is XNOR, node 1 copies node 0.
// Periods {1, 2}, translations {0, 0}.
inline rbn::Network net_t2() {
  return rbn::Network(2, 2, {0, 1, 0, 1}, {1, 0, 0, 1, 0, 0, 1, 1}, {1, 2}, {0, 0});
}

}  // namespace test
