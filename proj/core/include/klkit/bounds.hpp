#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klkit/kernel.hpp"

namespace klkit {

enum class BoundId {
  LEBEDEV_15,
  FAMILY_17,
  HALF_RANGE_18,
  OLENKO_19,
  MODIFIED_110,
  DELTA_111,
  MU_EQ_NU_112,
  LS_RE_113,
  LS_IM_114,
  K1_115,
  VIA_116_117,
  DELTA_118,
  COMPOSITE_126,
  ITER_128,
  ITER_129,
  ITER_130,
  EXP_DECAY_315,
};

/// Which kernel quantity a bound controls.
enum class MeasuredQuantity {
  AbsKItau,      // |K_{i tau}(x)|
  AbsKComplex,   // |K_{mu + i tau}(x)|
  AbsReKComplex, // |Re K_{mu + i tau}(x)|
  AbsImKComplex, // |Im K_{mu + i tau}(x)|
};

const std::vector<BoundId>& all_bound_ids();
std::string to_string(BoundId id);
std::optional<BoundId> bound_id_from_string(const std::string& name);
std::string to_string(MeasuredQuantity q);

/// Names of the parameters an id takes, in canonical order.
const std::vector<std::string>& bound_parameter_names(BoundId id);

using BoundParams = std::map<std::string, double>;

struct BoundDescriptor {
  BoundId id;
  BoundParams params;
  double order_mu;
  MeasuredQuantity measured;
  /// Human-readable parameter domain and (x, tau) validity region.
  std::string parameter_domain;
  std::string validity;
  /// Short descriptive name of the inequality family.
  std::string family;

  /// Every catalog inequality is claimed for all x > 0, tau > 0.
  bool valid_at(const EvaluationPoint& p) const;
  double param(const std::string& name) const;
};

/// Builds and validates a descriptor; throws DomainError on missing, unknown
/// or out-of-domain parameters. Integer parameters (M, N, n) must be
/// integral-valued.
BoundDescriptor make_descriptor(BoundId id, const BoundParams& params = {});

/// Landau constant and Olenko's alpha.
inline constexpr double kLandauB = 0.674885;
inline constexpr double kOlenkoAlpha = 1.855757;

/// Olenko's upper estimate of sup sqrt(x)|J_nu(x)| for nu > 0.
double olenko_c(double nu);

/// The constant c_nu used by the bound families: sqrt(2/pi) when
/// |nu| <= 1/2, olenko_c(nu) for nu > 1/2.
double c_nu(double nu);

/// Numerical sup of sqrt(x)|J_nu(x)| over (0, x_max], scanning with
/// step 1/step_density and refining the best sample by golden section.
double measure_c(double nu, double x_max = 1000.0, unsigned step_density = 16);

double log_bound(const BoundDescriptor& d, const EvaluationPoint& p);
double evaluate_bound(const BoundDescriptor& d, const EvaluationPoint& p);

/// n log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t n);

/// Cartesian product, x outer, tau inner.
std::vector<EvaluationPoint> log_grid(double x_lo, double x_hi, std::size_t nx,
                                      double tau_lo, double tau_hi,
                                      std::size_t ntau);

/// 25 x 25 over x in [0.01, 100], tau in [0.1, 40].
std::vector<EvaluationPoint> default_grid();

/// One descriptor per catalog entry with the default parameter choices.
std::vector<BoundDescriptor> default_catalog();

/// The measured kernel quantity at each grid point; nullopt where the
/// kernel evaluation raised an accuracy error.
std::vector<std::optional<double>> measure_kernel(const BoundDescriptor& d,
                                                  const std::vector<EvaluationPoint>& grid,
                                                  const QuadratureConfig& cfg,
                                                  unsigned workers = 1);

inline constexpr double kRatioSlack = 1e-9;

struct BoundCertificate {
  BoundDescriptor descriptor;
  std::vector<EvaluationPoint> grid;
  std::vector<std::optional<double>> ratios;
  double max_ratio = 0.0;
  std::size_t worst_index = 0;
  std::vector<std::size_t> indeterminate;
  bool pass = false;

  const EvaluationPoint& worst_point() const { return grid.at(worst_index); }
};

BoundCertificate certify_bound(const BoundDescriptor& d,
                               const std::vector<EvaluationPoint>& grid,
                               const QuadratureConfig& cfg = {},
                               unsigned workers = 1);

/// Certifies all descriptors on one grid, sharing kernel evaluations
/// between descriptors that measure the same quantity.
std::vector<BoundCertificate> certify_catalog(const std::vector<BoundDescriptor>& ds,
                                              const std::vector<EvaluationPoint>& grid,
                                              const QuadratureConfig& cfg = {},
                                              unsigned workers = 1);

/// Assembles a certificate from precomputed kernel values.
BoundCertificate assemble_certificate(const BoundDescriptor& d,
                                      const std::vector<EvaluationPoint>& grid,
                                      const std::vector<std::optional<double>>& kernel);

}  // namespace klkit
