#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mixar {

enum class Family { Causal, Noncausal, Mixed };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// Autoregression with lag polynomial phi(L) = 1 - phi_1 L - ... - phi_r L^r
/// and lead polynomial varphi(L^-1) = 1 - varphi_1 L^-1 - ... - varphi_s L^-s.
///
/// Causal models carry no lead coefficients and noncausal models no lag
/// coefficients; mixed models need at least one of each. A causal model with
/// r = 0 is white noise.
struct ModelSpec {
  Family family = Family::Causal;
  std::vector<double> phi;
  std::vector<double> varphi;

  static ModelSpec causal(std::vector<double> phi);
  static ModelSpec noncausal(std::vector<double> varphi);
  static ModelSpec mixed(std::vector<double> phi, std::vector<double> varphi);

  /// Rebuilds a spec from the flat parameter vector used by the optimizer
  /// (lag coefficients first, then lead coefficients).
  static ModelSpec from_params(Family family, std::size_t r, std::size_t s,
                               std::span<const double> params);

  std::size_t r() const { return phi.size(); }
  std::size_t s() const { return varphi.size(); }
  std::size_t order() const { return phi.size() + varphi.size(); }

  std::vector<double> params() const;

  /// "AR(2,0)", "MAR(1,1)", "AR(0,2)".
  std::string label() const;

  /// Throws Error(Order) when the family and coefficient counts disagree.
  void validate() const;

  bool operator==(const ModelSpec&) const = default;
};

struct StationarityCheck {
  bool stationary = false;
  std::vector<double> moduli;  // root moduli, ascending
};

/// Roots of 1 - c_1 z - ... - c_k z^k via companion-matrix eigenvalues.
/// Trailing zero coefficients lower the degree.
std::vector<std::complex<double>> lag_polynomial_roots(std::span<const double> coeffs);

/// lag_polynomial_roots with each complex root followed by its exact conjugate.
std::vector<std::complex<double>> paired_roots(std::span<const double> coeffs);

/// Stationarity of 1 - c_1 z - ... - c_k z^k: every root strictly outside the
/// unit circle. Throws Error(Order) on an empty vector.
StationarityCheck check_stationary(std::span<const double> coeffs);

/// Both polynomials of the model satisfy check_stationary (empty ones trivially).
bool is_stationary(const ModelSpec& spec);

/// Smallest root modulus across both polynomials; +inf for white noise.
double min_root_modulus(const ModelSpec& spec);

/// Lag-only AR(r+s) polynomial 1 - c_1 z - ... - c_{r+s} z^{r+s} whose roots
/// inside the unit circle carry the lead dynamics. The innovations of the
/// representation are the source innovations scaled by `scale`.
struct CausalRepresentation {
  std::vector<double> coeffs;
  double scale = 1.0;
};

/// |varphi_s| below this floor is treated as a degenerate (lower) order.
inline constexpr double kLeadFloor = 1e-6;

CausalRepresentation noncausal_to_causal(const ModelSpec& spec);
ModelSpec causal_to_noncausal(const CausalRepresentation& rep, std::size_t s);
CausalRepresentation mixed_to_causal(const ModelSpec& spec);

/// Splits the roots of a causal representation into r roots outside the unit
/// circle (lag part) and s roots inside (reciprocated into the lead part).
/// Throws Error(Partition) when the counts do not match and Error(Boundary)
/// when a root lies within 1e-8 of the unit circle.
ModelSpec factor_initial_values(const CausalRepresentation& rep, std::size_t r,
                                std::size_t s);

struct Residuals {
  std::vector<double> eps;  // t = r+1 .. T-s (1-based)
  double sse = 0.0;
};

/// eps_t = varphi(L^-1) phi(L) y_t on the interior where both filters apply.
Residuals residuals(const ModelSpec& spec, std::span<const double> y);

/// Lag coefficients c with prod_k (1 - z / root_k) = 1 - c_1 z - ... - c_n z^n.
/// Roots must come in conjugate pairs; an imaginary residue above 1e-10 in
/// the expanded product throws Error(Domain).
std::vector<double> polynomial_from_roots(std::span<const std::complex<double>> roots);

/// JSON round trip: {"family":"mixed","r":1,"s":1,"phi":[0.7],"varphi":[0.2]}
std::string to_json(const ModelSpec& spec);
ModelSpec model_from_json(const std::string& text);

}  // namespace mixar
