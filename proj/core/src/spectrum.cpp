#include "diffspec/spectrum.hpp"

#include <sstream>

namespace diffspec {

std::string to_string(const Spectrum& s) {
  std::ostringstream os;
  bool first = true;
  for (auto [i, c] : s.omega) {
    if (!first) os << ' ';
    os << i << ':' << c;
    first = false;
  }
  return os.str();
}

}  // namespace diffspec
