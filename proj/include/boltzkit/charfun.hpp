// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boltzkit/grid.hpp"

namespace boltzkit {

/// Catalog of closed-form characteristic functions. dirac_pair(a) is the
/// symmetric two-point law (delta_{ae} + delta_{-ae})/2 with axis value
/// cos(a xi.e) and isotropization sin(ar)/(ar); shifted_dirac(a) is the
/// single point mass delta_{ae} (not radial), kept for the mean-obstruction
/// witnesses.
class AnalyticCharFn {
 public:
  enum class Family { gaussian, stable, dirac_pair, shifted_dirac, point_mass };

  struct Component {
    Family family;
    double weight;
    double p1 = 0.0;  // gaussian: sigma^2 | stable: alpha_s | dirac: a
    double p2 = 0.0;  // stable: scale
  };

  static AnalyticCharFn gaussian(double sigma2);
  static AnalyticCharFn stable(double alpha_s, double scale = 1.0);
  static AnalyticCharFn dirac_pair(double a);
  static AnalyticCharFn shifted_dirac(double a);
  static AnalyticCharFn point_mass();
  static AnalyticCharFn mixture(
      std::vector<std::pair<double, AnalyticCharFn>> parts);

  /// e.g. "gaussian(1)", "stable(1.5)", "stable(1.5,2)", "dirac_pair(2)",
  /// "point_mass", "mixture(0.5*gaussian(1)+0.5*dirac_pair(2))"
  static AnalyticCharFn parse(std::string_view spec);
  std::string spec() const;

  const std::vector<Component>& components() const { return comps_; }
  bool isotropic() const;
  bool is_single_shifted_dirac() const;

  /// phi(r) - 1 for the isotropic (direction-averaged) characteristic
  /// function; exact small-r handling (expm1 / series).
  double radial_delta(double r) const;
  /// phi - 1 at |xi| = r with polar cosine t against the distinguished axis
  /// (complex for shifted_dirac). t = 1 is the axis itself.
  std::complex<double> axis_delta(double r, double t = 1.0) const;

  /// Exact second moment; nullopt = infinite.
  std::optional<double> second_moment() const;
  /// Exact |v|^alpha moment where a closed form exists (gaussian, dirac,
  /// stable below its index, mixtures thereof); nullopt = unknown/infinite.
  std::optional<double> moment(double alpha) const;

  /// Suggested quadrature truncation radius: beyond it every non-oscillatory
  /// component is below ~1e-18 and oscillatory tails are handled analytically.
  double suggested_r_star(double fallback = 60.0) const;

 private:
  std::vector<Component> comps_;
};

/// Sampled isotropic characteristic function on a radial grid. The primary
/// storage is delta = phi - 1 (exact 0 at r = 0), which keeps the small-r
/// behaviour that all the norms probe at full precision.
class RadialCharFn {
 public:
  RadialCharFn(RadialGrid grid, std::vector<double> delta_re,
               std::vector<double> delta_im = {});

  static RadialCharFn sample(const AnalyticCharFn& fn, const RadialGrid& grid);
  /// Sample along the distinguished axis (complex in general).
  static RadialCharFn sample_axis(const AnalyticCharFn& fn,
                                  const RadialGrid& grid);

  const RadialGrid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  bool is_real() const { return delta_im_.empty(); }

  std::span<const double> delta_re() const { return delta_re_; }
  std::span<const double> delta_im() const { return delta_im_; }
  const std::vector<double>& slopes_re() const;

  double value_re(std::size_t i) const { return 1.0 + delta_re_[i]; }
  double delta_at(double r) const;  // interpolated real part of delta
  std::complex<double> delta_at_c(double r) const;

  /// analytic bound used past r_max
  static constexpr double tail_bound() { return 2.0; }

  /// columns r, re, im (17 significant digits)
  void write_csv(std::ostream& os) const;
  static RadialCharFn read_csv(std::istream& is);

 private:
  void validate_and_clean();
  RadialGrid grid_;
  std::vector<double> delta_re_, delta_im_;
  mutable std::vector<double> slopes_re_, slopes_im_;
  mutable bool slopes_ready_ = false;
  void ensure_slopes() const;
};

}  // namespace boltzkit
