#include "tslice/time.hpp"

namespace tslice {

std::string to_string(const TimeRef& t) {
  if (t.is_point()) return std::to_string(t.start());
  return "[" + std::to_string(t.start()) + ", " + (t.is_open() ? std::string("*") : std::to_string(*t.end())) +
         "]";
}

} // namespace tslice
