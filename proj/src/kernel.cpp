// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "boltzkit/detail/fit.hpp"
#include "boltzkit/errors.hpp"
#include "boltzkit/quadrature.hpp"

namespace boltzkit {

using detail::loglog_slope;

namespace {

constexpr double kPiHalf = 1.5707963267948966;

double lin_interp(const std::vector<double>& x, const std::vector<double>& y,
                  double t) {
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  auto it = std::upper_bound(x.begin(), x.end(), t);
  std::size_t j = std::size_t(it - x.begin()) - 1;
  const double w = (t - x[j]) / (x[j + 1] - x[j]);
  return y[j] + w * (y[j + 1] - y[j]);
}

double weight_term(double alpha, double theta) {
  return std::pow(std::sin(0.5 * theta), alpha) +
         std::pow(std::cos(0.5 * theta), alpha);
}

}  // namespace

AngularKernel AngularKernel::constant(double level) {
  if (level < 0.0) throw std::domain_error("constant kernel: level < 0");
  AngularKernel k;
  k.form_ = Form::constant;
  k.level_ = level;
  return k;
}

AngularKernel AngularKernel::power_law(double s, double K,
                                       std::function<double(double)> regular) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("power_law: s in (0,1)");
  if (!(K > 0.0)) throw std::domain_error("power_law: K > 0");
  AngularKernel k;
  k.form_ = Form::power_law;
  k.s_ = s;
  k.K_ = K;
  k.regular_ = std::move(regular);
  return k;
}

AngularKernel AngularKernel::tabulated(std::vector<double> theta,
                                       std::vector<double> values) {
  if (theta.size() != values.size() || theta.size() < 3)
    throw std::domain_error("tabulated kernel: need >= 3 (theta, value) pairs");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (i > 0 && theta[i] <= theta[i - 1])
      throw std::domain_error("tabulated kernel: theta must increase");
    if (values[i] < 0.0)
      throw std::domain_error("tabulated kernel: negative value");
  }
  if (theta.front() <= 0.0 || theta.back() > M_PI + 1e-12)
    throw std::domain_error("tabulated kernel: theta range (0, pi]");
  AngularKernel k;
  k.form_ = Form::tabulated;
  if (theta.back() > kPiHalf * (1.0 + 1e-12)) {
    // fold [0, pi] onto [0, pi/2]
    std::vector<double> folded_t, folded_v;
    for (double t : theta) {
      const double tf = (t > kPiHalf) ? M_PI - t : t;
      if (tf > 0.0) folded_t.push_back(tf);
    }
    std::sort(folded_t.begin(), folded_t.end());
    folded_t.erase(std::unique(folded_t.begin(), folded_t.end(),
                               [](double a, double b) {
                                 return std::abs(a - b) < 1e-14;
                               }),
                   folded_t.end());
    for (double t : folded_t)
      folded_v.push_back(lin_interp(theta, values, t) +
                         lin_interp(theta, values, M_PI - t));
    k.tab_theta_ = std::move(folded_t);
    k.tab_val_ = std::move(folded_v);
  } else {
    k.tab_theta_ = std::move(theta);
    k.tab_val_ = std::move(values);
  }
  const std::size_t m = std::min<std::size_t>(3, k.tab_theta_.size());
  k.tab_power_ = loglog_slope({k.tab_theta_.data(), m}, {k.tab_val_.data(), m});
  return k;
}

AngularKernel AngularKernel::with_cutoff(double n) const {
  if (!(n > 0.0)) throw std::domain_error("cutoff level must be positive");
  AngularKernel k = *this;
  k.cutoff_ = n;
  return k;
}

AngularKernel AngularKernel::without_cutoff() const {
  AngularKernel k = *this;
  k.cutoff_.reset();
  return k;
}

double AngularKernel::cutoff() const {
  if (!cutoff_) throw std::logic_error("kernel has no cutoff");
  return *cutoff_;
}

double AngularKernel::eval_raw(double theta) const {
  if (!(theta > 0.0) || theta > kPiHalf * (1.0 + 1e-12))
    throw std::domain_error("AngularKernel: theta outside (0, pi/2]");
  switch (form_) {
    case Form::constant:
      return level_;
    case Form::power_law: {
      const double g = regular_ ? regular_(theta) : 1.0;
      return K_ * std::pow(theta, -(2.0 + 2.0 * s_)) * g;
    }
    case Form::tabulated:
      if (theta < tab_theta_.front())
        return tab_val_.front() *
               std::pow(theta / tab_theta_.front(), tab_power_);
      return lin_interp(tab_theta_, tab_val_, theta);
  }
  return 0.0;
}

double AngularKernel::eval(double theta) const {
  const double b = eval_raw(theta);
  return cutoff_ ? std::min(b, *cutoff_) : b;
}

bool AngularKernel::integrable_without_cutoff() const {
  switch (form_) {
    case Form::constant:
      return true;
    case Form::power_law:
      return false;
    case Form::tabulated:
      return tab_power_ > -2.0;
  }
  return false;
}

double AngularKernel::small_angle_power() const {
  switch (form_) {
    case Form::constant:
      return 0.0;
    case Form::power_law:
      return -(2.0 + 2.0 * s_);
    case Form::tabulated:
      return tab_power_;
  }
  return 0.0;
}

std::vector<double> AngularKernel::breakpoints() const {
  std::vector<double> pts;
  if (form_ == Form::tabulated) {
    for (double t : tab_theta_)
      if (t > 0.0 && t < kPiHalf) pts.push_back(t);
  }
  if (cutoff_ && form_ == Form::power_law) {
    // crossover of min{K theta^-(2+2s) g, n}; the pure-power estimate is a
    // fine split point even when g != 1
    const double tc = std::pow(K_ / *cutoff_, 1.0 / (2.0 + 2.0 * s_));
    if (tc > 0.0 && tc < kPiHalf) pts.push_back(tc);
  }
  if (cutoff_ && form_ == Form::tabulated) {
    for (std::size_t i = 1; i < tab_theta_.size(); ++i) {
      const bool lo = tab_val_[i - 1] > *cutoff_;
      const bool hi = tab_val_[i] > *cutoff_;
      if (lo != hi) {
        const double w = (*cutoff_ - tab_val_[i - 1]) /
                         (tab_val_[i] - tab_val_[i - 1]);
        pts.push_back(tab_theta_[i - 1] +
                      w * (tab_theta_[i] - tab_theta_[i - 1]));
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::string AngularKernel::spec() const {
  std::ostringstream os;
  os.precision(17);
  switch (form_) {
    case Form::constant:
      os << "constant(" << level_ << ")";
      break;
    case Form::power_law:
      os << "power_law(s=" << s_ << ",K=" << K_ << ")";
      break;
    case Form::tabulated:
      os << "tabulated(" << tab_theta_.size() << " nodes)";
      break;
  }
  if (cutoff_) os << ";cutoff=" << *cutoff_;
  return os.str();
}

AngularKernel AngularKernel::parse(std::string_view spec) {
  std::string s(spec);
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  std::optional<double> cut;
  if (auto pos = s.find(";cutoff="); pos != std::string::npos) {
    cut = std::stod(s.substr(pos + 8));
    s = s.substr(0, pos);
  }
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw ConfigError("kernel spec: expected form(args): '" + s + "'");
  const std::string name = s.substr(0, open);
  const std::string args = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> parts;
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  auto value_of = [&](const std::string& part) {
    auto eq = part.find('=');
    return std::stod(eq == std::string::npos ? part : part.substr(eq + 1));
  };
  AngularKernel k = [&] {
    if (name == "constant") {
      if (parts.size() != 1) throw ConfigError("constant(level)");
      return AngularKernel::constant(value_of(parts[0]));
    }
    if (name == "power_law") {
      if (parts.empty() || parts.size() > 2)
        throw ConfigError("power_law(s[,K])");
      double sv = value_of(parts[0]);
      double Kv = parts.size() > 1 ? value_of(parts[1]) : 1.0;
      return AngularKernel::power_law(sv, Kv);
    }
    throw ConfigError("unknown kernel form '" + name + "'");
  }();
  if (cut) k = k.with_cutoff(*cut);
  return k;
}

SingularityIndex singularity_index(const AngularKernel& kernel) {
  const double p = kernel.small_angle_power();
  const double infimum = std::max(0.0, -(2.0 + p));
  SingularityIndex out{infimum, 0.0};
  for (int k = 1; k <= 40; ++k) {
    const double a0 = 0.05 * k;
    if (a0 > infimum + 1e-12) {
      out.admissible = a0;
      return out;
    }
  }
  throw ClassificationError(
      "no integrable weight exponent <= 2 for kernel " + kernel.spec());
}

namespace {

// adaptive integral of f over [0, pi/2] split at kernel breakpoints
QuadratureResult integrate_split(const AngularKernel& kernel,
                                 const std::function<double(double)>& f,
                                 double abs_tol) {
  std::vector<double> pts = kernel.breakpoints();
  pts.insert(pts.begin(), 0.0);
  pts.push_back(kPiHalf);
  QuadratureResult total;
  const double tol_each = abs_tol / double(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto r = integrate_adaptive(f, pts[i], pts[i + 1], tol_each);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace

const RateConstant& KernelConstants::operator()(double alpha) const {
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (std::abs(exponents[i] - alpha) < 1e-12) return at[i];
  throw std::out_of_range("KernelConstants: exponent not computed");
}

KernelConstants rate_constants(const AngularKernel& kernel,
                               std::span<const double> exponents,
                               double abs_tol) {
  if (!kernel.has_cutoff() && !kernel.integrable_without_cutoff())
    throw std::domain_error(
        "rate_constants: singular kernel without cutoff; use lambda_limit");
  for (double a : exponents)
    if (a < 0.0 || a > 2.0)
      throw std::domain_error("rate_constants: exponents must lie in [0,2]");

  KernelConstants out;
  out.exponents.assign(exponents.begin(), exponents.end());

  auto gamma_of = [&](double alpha) {
    auto r = integrate_split(
        kernel,
        [&](double t) { return kernel.eval(t) * weight_term(alpha, t) *
                               std::sin(t); },
        abs_tol / (2.0 * M_PI));
    if (!r.converged)
      throw NumericError("rate_constants: quadrature did not converge",
                         2.0 * M_PI * r.error);
    return std::pair<double, double>(2.0 * M_PI * r.value,
                                     2.0 * M_PI * r.error);
  };

  auto [g2, g2err] = gamma_of(2.0);
  out.gamma2 = g2;
  out.gamma2_residual = g2err;
  for (double a : exponents) {
    auto [g, gerr] = gamma_of(a);
    out.at.push_back({g, g - g2, gerr + g2err});
  }
  return out;
}

LambdaLimit lambda_limit(const AngularKernel& kernel, double alpha,
                         double abs_tol) {
  if (kernel.has_cutoff())
    throw std::domain_error("lambda_limit: expects the non-cutoff kernel");
  if (alpha <= 0.0 || alpha > 2.0)
    throw std::domain_error("lambda_limit: alpha in (0, 2]");
  const double infimum = singularity_index(kernel).infimum;
  if (alpha <= infimum + 1e-12)
    throw DivergenceError("lambda_limit: alpha at or below the singularity "
                          "infimum " + std::to_string(infimum));

  auto direct = [&](double t) {
    return kernel.eval_raw(t) * (weight_term(alpha, t) - 1.0) * std::sin(t);
  };

  LambdaLimit out;
  if (kernel.integrable_without_cutoff()) {
    auto r = integrate_split(kernel, direct, abs_tol / (2.0 * M_PI));
    out.value = 2.0 * M_PI * r.value;
    out.residual = 2.0 * M_PI * r.error;
    return out;
  }

  // singular power near 0: b ~ C theta^p, p = -(2+2s_eff) < -2
  const double p = kernel.small_angle_power();
  const double two_s = -(2.0 + p);  // effective 2s
  const double theta0 = 0.05;
  // log substitution theta = e^t: the integrand becomes
  //   C g(theta) (sin theta/theta) [2^-a A e^{(a-2s)t} + B e^{(2-2s)t}]
  // with A = (sin(t/2)/(t/2))^a -> 1 and B = (cos^a(t/2)-1)/t^2 -> -a/8.
  auto coeff_C = [&](double theta) {
    // kernel value with the pure power stripped off
    return kernel.eval_raw(theta) * std::pow(theta, -p);
  };
  auto stable_form = [&](double t) {
    const double theta = std::exp(t);
    const double half = 0.5 * theta;
    const double A = std::pow(half < 1e-8 ? 1.0 : std::sin(half) / half, alpha);
    double B;
    if (theta < 1e-4) {
      // cos^a(t/2) - 1 = -a t^2/8 (1 - (3a-2) t^2/48) + O(t^6)
      B = -alpha / 8.0 *
          (1.0 - (3.0 * alpha - 2.0) * theta * theta / 48.0);
    } else {
      const double cm1 = -2.0 * std::pow(std::sin(0.25 * theta), 2);
      B = std::expm1(alpha * std::log1p(cm1)) / (theta * theta);
    }
    const double sinc_t = theta < 1e-8 ? 1.0 : std::sin(theta) / theta;
    return coeff_C(theta) * sinc_t *
           (std::pow(2.0, -alpha) * A * std::exp((alpha - two_s) * t) +
            B * std::exp((2.0 - two_s) * t));
  };

  const double Ceff = coeff_C(std::min(theta0, 1e-3));
  const double gap = alpha - two_s;
  double t_min = std::log(abs_tol * gap /
                          (10.0 * Ceff * std::pow(2.0, -alpha))) / gap;
  t_min = std::min(t_min, std::log(theta0) - 1.0);
  const double below_bound =
      Ceff * std::pow(2.0, -alpha) * std::exp(gap * t_min) / gap;

  auto r_sing = integrate_adaptive(stable_form, t_min, std::log(theta0),
                                   abs_tol / (4.0 * M_PI));
  auto r_reg = integrate_adaptive(direct, theta0, kPiHalf,
                                  abs_tol / (4.0 * M_PI));
  if (!r_sing.converged || !r_reg.converged)
    throw NumericError("lambda_limit: quadrature did not converge",
                       2.0 * M_PI * (r_sing.error + r_reg.error));
  out.value = 2.0 * M_PI * (r_sing.value + r_reg.value);
  out.residual = 2.0 * M_PI * (r_sing.error + r_reg.error + below_bound);
  return out;
}

double ThetaRule::total() const {
  double acc = 0.0;
  for (double w : weight) acc += w;
  return acc;
}

ThetaRule make_theta_rule(const AngularKernel& kernel, int order) {
  std::vector<double> pts = kernel.breakpoints();
  pts.insert(pts.begin(), 0.0);
  pts.push_back(kPiHalf);
  // refine wide ratio segments geometrically so a fixed-order rule per piece
  // resolves steep power-law decay
  std::vector<double> refined;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    refined.push_back(pts[i]);
    if (pts[i] > 0.0) {
      double t = pts[i] * 2.0;
      while (t < pts[i + 1] / 1.5) {
        refined.push_back(t);
        t *= 2.0;
      }
    }
  }
  refined.push_back(kPiHalf);

  ThetaRule rule;
  const int piece_order = refined.size() > 2
                              ? std::max(16, order / 4)
                              : order;
  for (std::size_t i = 0; i + 1 < refined.size(); ++i) {
    const auto& [x, w] = gauss_legendre(piece_order);
    const double mid = 0.5 * (refined[i] + refined[i + 1]);
    const double half = 0.5 * (refined[i + 1] - refined[i]);
    for (std::size_t q = 0; q < x.size(); ++q) {
      const double theta = mid + half * x[q];
      rule.theta.push_back(theta);
      rule.weight.push_back(half * w[q] * kernel.eval(theta) *
                            std::sin(theta));
    }
  }
  return rule;
}

}  // namespace boltzkit
