#pragma once

#include <string>
#include <vector>

namespace crawlfv {

/// Physical coefficients of the crawling-cell model.
struct PhysParams {
  double k_d = 1.0;    ///< bulk depolymerization rate
  double delta = 2.0;  ///< inhibition strength of bound molecules on polymerization
  double gamma = 2.0;  ///< friction/mobility factor of the domain velocity
  double D = 1.0;      ///< diffusion coefficient
  double k_on = 0.3;   ///< membrane activation rate
  double k_off = 1.0;  ///< membrane deactivation rate

  /// Throws BadValue unless all are finite and nonnegative with D > 0.
  void validate() const;

  bool operator==(const PhysParams&) const = default;
};

/// How Dirichlet pressure data enter the discrete operator.
///  - Paper: ghost cells one full step outside the annulus; first order.
///  - Face: data imposed on the physical circles with half-cell flux
///    distance; second order.
enum class BoundaryMode { Paper, Face };

const char* to_string(BoundaryMode mode) noexcept;
BoundaryMode boundary_mode_from_string(const std::string& s);

/// Scaled bound concentration mu~ = R mu, one value per angular cell.
struct BoundaryField {
  std::vector<double> values;
};

/// Scaled bulk concentration c~ = r c, flattened as k + j N_theta.
struct CellField {
  std::vector<double> values;
};

/// Positive part [x]_+.
inline double positive_part(double x) noexcept { return x > 0.0 ? x : 0.0; }

}  // namespace crawlfv
