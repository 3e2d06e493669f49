#include "model.hpp"

#include <cmath>

#include "error.hpp"

namespace crawlfv {

void PhysParams::validate() const {
  const struct {
    const char* name;
    double value;
  } fields[] = {{"k_d", k_d}, {"delta", delta}, {"gamma", gamma},
                {"D", D},     {"k_on", k_on},   {"k_off", k_off}};
  for (const auto& f : fields)
    if (!std::isfinite(f.value) || f.value < 0.0)
      throw Error(ErrorCode::BadValue,
                  std::string(f.name) + " must be finite and nonnegative");
  if (!(D > 0.0)) throw Error(ErrorCode::BadValue, "D must be positive");
}

const char* to_string(BoundaryMode mode) noexcept {
  return mode == BoundaryMode::Paper ? "paper" : "face";
}

BoundaryMode boundary_mode_from_string(const std::string& s) {
  if (s == "paper") return BoundaryMode::Paper;
  if (s == "face") return BoundaryMode::Face;
  throw Error(ErrorCode::BadValue, "boundary mode must be 'paper' or 'face', got '" + s + "'");
}

}  // namespace crawlfv
