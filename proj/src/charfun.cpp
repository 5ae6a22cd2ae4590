// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "boltzkit/errors.hpp"

namespace boltzkit {

namespace {

// sin(x)/x - 1, full precision near 0
double sinc_delta(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-3) {
    const double x2 = x * x;
    return -x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return std::sin(x) / x - 1.0;
}

double tgamma_half(double p) { return std::tgamma(p); }

// E|V|^p for the standard 3D normal: 2^(p/2) Gamma((3+p)/2) / Gamma(3/2)
double normal_speed_moment(double p) {
  return std::pow(2.0, 0.5 * p) * tgamma_half(0.5 * (3.0 + p)) /
         tgamma_half(1.5);
}

}  // namespace

AnalyticCharFn AnalyticCharFn::gaussian(double sigma2) {
  if (!(sigma2 >= 0.0)) throw std::domain_error("gaussian: sigma2 >= 0");
  AnalyticCharFn f;
  f.comps_.push_back({Family::gaussian, 1.0, sigma2, 0.0});
  return f;
}

AnalyticCharFn AnalyticCharFn::stable(double alpha_s, double scale) {
  if (!(alpha_s > 0.0 && alpha_s < 2.0))
    throw std::domain_error("stable: alpha_s in (0,2)");
  if (!(scale > 0.0)) throw std::domain_error("stable: scale > 0");
  AnalyticCharFn f;
  f.comps_.push_back({Family::stable, 1.0, alpha_s, scale});
  return f;
}

AnalyticCharFn AnalyticCharFn::dirac_pair(double a) {
  if (!(a >= 0.0)) throw std::domain_error("dirac_pair: a >= 0");
  AnalyticCharFn f;
  f.comps_.push_back({Family::dirac_pair, 1.0, a, 0.0});
  return f;
}

AnalyticCharFn AnalyticCharFn::shifted_dirac(double a) {
  AnalyticCharFn f;
  f.comps_.push_back({Family::shifted_dirac, 1.0, a, 0.0});
  return f;
}

AnalyticCharFn AnalyticCharFn::point_mass() {
  AnalyticCharFn f;
  f.comps_.push_back({Family::point_mass, 1.0, 0.0, 0.0});
  return f;
}

AnalyticCharFn AnalyticCharFn::mixture(
    std::vector<std::pair<double, AnalyticCharFn>> parts) {
  AnalyticCharFn f;
  double total = 0.0;
  for (auto& [w, g] : parts) {
    if (!(w > 0.0)) throw std::domain_error("mixture: weights must be > 0");
    total += w;
    for (auto c : g.comps_) {
      c.weight *= w;
      f.comps_.push_back(c);
    }
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::domain_error("mixture: weights must sum to 1");
  return f;
}

bool AnalyticCharFn::isotropic() const {
  for (const auto& c : comps_)
    if (c.family == Family::shifted_dirac && c.p1 != 0.0) return false;
  return true;
}

bool AnalyticCharFn::is_single_shifted_dirac() const {
  return comps_.size() == 1 && comps_[0].family == Family::shifted_dirac &&
         comps_[0].p1 != 0.0;
}

double AnalyticCharFn::radial_delta(double r) const {
  double acc = 0.0;
  for (const auto& c : comps_) {
    switch (c.family) {
      case Family::gaussian:
        acc += c.weight * std::expm1(-0.5 * c.p1 * r * r);
        break;
      case Family::stable:
        acc += c.weight * std::expm1(-std::pow(c.p2 * r, c.p1));
        break;
      case Family::dirac_pair:
      case Family::shifted_dirac:
        acc += c.weight * sinc_delta(c.p1 * r);
        break;
      case Family::point_mass:
        break;
    }
  }
  return acc;
}

std::complex<double> AnalyticCharFn::axis_delta(double r, double t) const {
  std::complex<double> acc = 0.0;
  for (const auto& c : comps_) {
    switch (c.family) {
      case Family::gaussian:
        acc += c.weight * std::expm1(-0.5 * c.p1 * r * r);
        break;
      case Family::stable:
        acc += c.weight * std::expm1(-std::pow(c.p2 * r, c.p1));
        break;
      case Family::dirac_pair: {
        // cos(x) - 1 = -2 sin^2(x/2)
        const double s = std::sin(0.5 * c.p1 * r * t);
        acc += c.weight * (-2.0 * s * s);
        break;
      }
      case Family::shifted_dirac: {
        const double s = std::sin(0.5 * c.p1 * r * t);
        acc += std::complex<double>(c.weight * (-2.0 * s * s),
                                    -c.weight * std::sin(c.p1 * r * t));
        break;
      }
      case Family::point_mass:
        break;
    }
  }
  return acc;
}

std::optional<double> AnalyticCharFn::second_moment() const {
  double acc = 0.0;
  for (const auto& c : comps_) {
    switch (c.family) {
      case Family::gaussian:
        acc += c.weight * 3.0 * c.p1;
        break;
      case Family::stable:
        return std::nullopt;
      case Family::dirac_pair:
      case Family::shifted_dirac:
        acc += c.weight * c.p1 * c.p1;
        break;
      case Family::point_mass:
        break;
    }
  }
  return acc;
}

std::optional<double> AnalyticCharFn::moment(double alpha) const {
  double acc = 0.0;
  for (const auto& c : comps_) {
    switch (c.family) {
      case Family::gaussian:
        acc += c.weight * std::pow(c.p1, 0.5 * alpha) *
               normal_speed_moment(alpha);
        break;
      case Family::stable: {
        if (alpha >= c.p1) return std::nullopt;
        // V = scale * sqrt(2A) G with E A^p = Gamma(1-p/rho)/Gamma(1-p),
        // rho = alpha_s/2
        const double rho = 0.5 * c.p1;
        const double p = 0.5 * alpha;
        const double EAp = std::tgamma(1.0 - p / rho) / std::tgamma(1.0 - p);
        acc += c.weight * std::pow(c.p2, alpha) * std::pow(2.0, p) * EAp *
               normal_speed_moment(alpha);
        break;
      }
      case Family::dirac_pair:
      case Family::shifted_dirac:
        acc += c.weight * std::pow(c.p1, alpha);
        break;
      case Family::point_mass:
        break;
    }
  }
  return acc;
}

double AnalyticCharFn::suggested_r_star(double fallback) const {
  double r = fallback;
  for (const auto& c : comps_) {
    switch (c.family) {
      case Family::gaussian:
        if (c.p1 > 0.0) r = std::max(r, 10.0 / std::sqrt(c.p1));
        break;
      case Family::stable:
        r = std::max(r, std::pow(42.0, 1.0 / c.p1) / c.p2);
        break;
      case Family::dirac_pair:
      case Family::shifted_dirac:
        if (c.p1 > 0.0) r = std::max(r, 60.0 / c.p1);
        break;
      case Family::point_mass:
        break;
    }
  }
  return std::min(r, 5e4);
}

std::string AnalyticCharFn::spec() const {
  std::ostringstream os;
  os.precision(17);
  auto one = [&](const Component& c) {
    switch (c.family) {
      case Family::gaussian:
        os << "gaussian(" << c.p1 << ")";
        break;
      case Family::stable:
        os << "stable(" << c.p1;
        if (c.p2 != 1.0) os << "," << c.p2;
        os << ")";
        break;
      case Family::dirac_pair:
        os << "dirac_pair(" << c.p1 << ")";
        break;
      case Family::shifted_dirac:
        os << "shifted_dirac(" << c.p1 << ")";
        break;
      case Family::point_mass:
        os << "point_mass";
        break;
    }
  };
  if (comps_.size() == 1 && comps_[0].weight == 1.0) {
    one(comps_[0]);
    return os.str();
  }
  os << "mixture(";
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) os << "+";
    os << comps_[i].weight << "*";
    one(comps_[i]);
  }
  os << ")";
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<double> parse_args(std::string_view inner) {
  std::vector<double> args;
  std::string cur;
  for (char ch : inner) {
    if (ch == ',') {
      args.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) args.push_back(std::stod(cur));
  return args;
}

// split "a*f(x)+b*g(y)" at top-level '+'
std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '+' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

}  // namespace

AnalyticCharFn AnalyticCharFn::parse(std::string_view spec) {
  std::string_view s = trim(spec);
  if (s == "point_mass" || s == "point_mass()") return point_mass();
  auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')')
    throw ConfigError("family spec: expected name(args): '" +
                      std::string(spec) + "'");
  const std::string_view name = trim(s.substr(0, open));
  const std::string_view inner = s.substr(open + 1, s.size() - open - 2);
  if (name == "mixture") {
    std::vector<std::pair<double, AnalyticCharFn>> parts;
    for (auto part : split_top(inner)) {
      part = trim(part);
      auto star = part.find('*');
      if (star == std::string_view::npos)
        throw ConfigError("mixture component needs 'weight*family(...)'");
      const double w = std::stod(std::string(trim(part.substr(0, star))));
      parts.emplace_back(w, parse(part.substr(star + 1)));
    }
    return mixture(std::move(parts));
  }
  auto args = parse_args(inner);
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw ConfigError("family spec '" + std::string(name) +
                        "': wrong argument count");
  };
  if (name == "gaussian") {
    need(1, 1);
    return gaussian(args[0]);
  }
  if (name == "stable") {
    need(1, 2);
    return stable(args[0], args.size() > 1 ? args[1] : 1.0);
  }
  if (name == "dirac_pair") {
    need(1, 1);
    return dirac_pair(args[0]);
  }
  if (name == "shifted_dirac") {
    need(1, 1);
    return shifted_dirac(args[0]);
  }
  throw ConfigError("unknown family '" + std::string(name) + "'");
}

RadialCharFn::RadialCharFn(RadialGrid grid, std::vector<double> delta_re,
                           std::vector<double> delta_im)
    : grid_(std::move(grid)),
      delta_re_(std::move(delta_re)),
      delta_im_(std::move(delta_im)) {
  validate_and_clean();
  // eager slopes: interpolation stays a pure read afterwards, safe to share
  // across workers
  ensure_slopes();
}

void RadialCharFn::validate_and_clean() {
  if (delta_re_.size() != grid_.size())
    throw std::invalid_argument("RadialCharFn: value/grid size mismatch");
  if (!delta_im_.empty() && delta_im_.size() != grid_.size())
    throw std::invalid_argument("RadialCharFn: imaginary size mismatch");
  if (delta_re_[0] != 0.0 ||
      (!delta_im_.empty() && delta_im_[0] != 0.0))
    throw std::invalid_argument("RadialCharFn: phi(0) must be exactly 1");
  double max_im = 0.0;
  for (double v : delta_im_) max_im = std::max(max_im, std::abs(v));
  if (!delta_im_.empty() && max_im < 1e-12) delta_im_.clear();
  for (std::size_t i = 0; i < delta_re_.size(); ++i) {
    const double re = 1.0 + delta_re_[i];
    const double im = delta_im_.empty() ? 0.0 : delta_im_[i];
    if (std::sqrt(re * re + im * im) > 1.0 + 1e-12)
      throw std::invalid_argument(
          "RadialCharFn: |phi| exceeds 1 + 1e-12 at node " +
          std::to_string(i));
  }
}

RadialCharFn RadialCharFn::sample(const AnalyticCharFn& fn,
                                  const RadialGrid& grid) {
  std::vector<double> d(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    d[i] = fn.radial_delta(grid[i]);
  d[0] = 0.0;
  return RadialCharFn(grid, std::move(d));
}

RadialCharFn RadialCharFn::sample_axis(const AnalyticCharFn& fn,
                                       const RadialGrid& grid) {
  std::vector<double> re(grid.size()), im(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto v = fn.axis_delta(grid[i]);
    re[i] = v.real();
    im[i] = v.imag();
  }
  re[0] = 0.0;
  im[0] = 0.0;
  return RadialCharFn(grid, std::move(re), std::move(im));
}

void RadialCharFn::ensure_slopes() const {
  if (slopes_ready_) return;
  SlopeOperator op(grid_);
  slopes_re_ = op.apply(delta_re_);
  if (!delta_im_.empty()) slopes_im_ = op.apply(delta_im_);
  slopes_ready_ = true;
}

const std::vector<double>& RadialCharFn::slopes_re() const {
  ensure_slopes();
  return slopes_re_;
}

double RadialCharFn::delta_at(double r) const {
  ensure_slopes();
  const std::size_t j = grid_.bracket(r);
  return hermite_piece(grid_[j], grid_[j + 1], delta_re_[j], delta_re_[j + 1],
                       slopes_re_[j], slopes_re_[j + 1], r);
}

std::complex<double> RadialCharFn::delta_at_c(double r) const {
  ensure_slopes();
  const std::size_t j = grid_.bracket(r);
  const double re = hermite_piece(grid_[j], grid_[j + 1], delta_re_[j],
                                  delta_re_[j + 1], slopes_re_[j],
                                  slopes_re_[j + 1], r);
  if (delta_im_.empty()) return {re, 0.0};
  const double im = hermite_piece(grid_[j], grid_[j + 1], delta_im_[j],
                                  delta_im_[j + 1], slopes_im_[j],
                                  slopes_im_[j + 1], r);
  return {re, im};
}

void RadialCharFn::write_csv(std::ostream& os) const {
  os << "r,re,im\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double im = delta_im_.empty() ? 0.0 : delta_im_[i];
    os << grid_[i] << ',' << 1.0 + delta_re_[i] << ',' << im << '\n';
  }
}

RadialCharFn RadialCharFn::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("r,re,im", 0) != 0)
    throw ConfigError("charfn csv: missing 'r,re,im' header");
  std::vector<double> r, re, im;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double vals[3];
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(ss, cell, ','))
        throw ConfigError("charfn csv: bad row '" + line + "'");
      vals[k] = std::stod(cell);
    }
    r.push_back(vals[0]);
    re.push_back(vals[1] - 1.0);
    im.push_back(vals[2]);
  }
  return RadialCharFn(RadialGrid::from_nodes(std::move(r)), std::move(re),
                      std::move(im));
}

}  // namespace boltzkit
