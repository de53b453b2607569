#include "pathfree/rational.hpp"

#include <cmath>
#include <limits>

namespace pathfree {

double round_up(double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, std::numeric_limits<double>::infinity());
  return v;
}

double round_down(double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = std::nextafter(v, -std::numeric_limits<double>::infinity());
  return v;
}

}  // namespace pathfree
