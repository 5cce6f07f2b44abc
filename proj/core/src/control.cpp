#include "lk/control.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lk {

ControlFunction ControlFunction::linear(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw std::invalid_argument("ControlFunction::linear: rate must be >= 0");
  ControlFunction w;
  w.linear_ = true;
  w.rate_ = rate;
  return w;
}

ControlFunction ControlFunction::tabulated(std::vector<double> s_axis,
                                           std::vector<double> t_axis,
                                           std::vector<double> values) {
  if (s_axis.size() < 2 || t_axis.size() < 2)
    throw std::invalid_argument("ControlFunction::tabulated: axes need >= 2 nodes");
  if (values.size() != s_axis.size() * t_axis.size())
    throw std::invalid_argument("ControlFunction::tabulated: values size must be |s|*|t|");
  auto strictly_increasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1]))
        return false;
    return true;
  };
  if (!strictly_increasing(s_axis) || !strictly_increasing(t_axis))
    throw std::invalid_argument("ControlFunction::tabulated: axes must be strictly increasing");
  ControlFunction w;
  w.linear_ = false;
  w.s_axis_ = std::move(s_axis);
  w.t_axis_ = std::move(t_axis);
  w.values_ = std::move(values);
  return w;
}

double ControlFunction::rate() const {
  if (!linear_)
    throw std::logic_error("ControlFunction::rate: not a linear control");
  return rate_;
}

namespace {

// Cell index i with axis[i] <= u <= axis[i+1], clamping u to the axis range.
std::size_t cell_of(const std::vector<double>& axis, double& u) {
  const double tol = 1e-12 * std::max(1.0, std::abs(axis.back()));
  if (u < axis.front() - tol || u > axis.back() + tol)
    throw std::invalid_argument("ControlFunction: query outside tabulated range");
  u = std::min(std::max(u, axis.front()), axis.back());
  auto it = std::upper_bound(axis.begin(), axis.end(), u);
  std::size_t i = static_cast<std::size_t>(it - axis.begin());
  if (i == 0)
    return 0;
  if (i >= axis.size())
    return axis.size() - 2;
  return i - 1;
}

} // namespace

double ControlFunction::operator()(double s, double t) const {
  if (s > t)
    throw std::invalid_argument("ControlFunction: requires s <= t");
  if (linear_)
    return rate_ * (t - s);
  double ss = s, tt = t;
  const std::size_t i = cell_of(s_axis_, ss);
  const std::size_t j = cell_of(t_axis_, tt);
  const double ws = (ss - s_axis_[i]) / (s_axis_[i + 1] - s_axis_[i]);
  const double wt = (tt - t_axis_[j]) / (t_axis_[j + 1] - t_axis_[j]);
  const std::size_t nt = t_axis_.size();
  const double v00 = values_[i * nt + j];
  const double v01 = values_[i * nt + j + 1];
  const double v10 = values_[(i + 1) * nt + j];
  const double v11 = values_[(i + 1) * nt + j + 1];
  return (1 - ws) * ((1 - wt) * v00 + wt * v01) + ws * ((1 - wt) * v10 + wt * v11);
}

int Composition::order() const noexcept {
  int n = 0;
  for (int p : parts)
    n += p;
  return n;
}

std::string Composition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      os << ',';
    os << parts[i];
  }
  os << ')';
  return os.str();
}

std::vector<Composition> enumerate_compositions(int n) {
  if (n < 1)
    throw std::invalid_argument("enumerate_compositions: n must be >= 1");
  if (n > kMaxCompositionOrder) {
    std::ostringstream os;
    os << "enumerate_compositions: n = " << n << " exceeds the cap "
       << kMaxCompositionOrder << " (count doubles per level: 2^(n-1))";
    throw std::length_error(os.str());
  }
  std::vector<Composition> out;
  out.reserve(std::size_t{1} << (n - 1));
  std::vector<int> current;
  // Depth-first with ascending first part yields lexicographic order.
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(Composition{current});
      return;
    }
    for (int first = 1; first <= remaining; ++first) {
      current.push_back(first);
      self(self, remaining - first);
      current.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

IteratedIntegrator::IteratedIntegrator(const DriverFamily& family,
                                       std::size_t resolution,
                                       std::span<const double> extra)
    : family_(&family) {
  const double T = family.horizon();
  std::vector<double> merged = family.breakpoints();
  merged.insert(merged.end(), extra.begin(), extra.end());
  TimeGrid grid = TimeGrid::uniform_with(T, std::max<std::size_t>(resolution, 1), merged);
  nodes_ = grid.points();

  const double x00 = family.x0()(0.0).real();
  x0_.resize(nodes_.size());
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    x0_[j] = family.x0()(nodes_[j]).real() - x00;

  mode_values_.resize(family.truncation_level());
  for (std::size_t m = 1; m <= family.truncation_level(); ++m) {
    auto& vals = mode_values_[m - 1];
    vals.resize(nodes_.size());
    const DriverPath& path = family.mode(m);
    for (std::size_t j = 0; j < nodes_.size(); ++j)
      vals[j] = path(nodes_[j]);
  }
}

std::size_t IteratedIntegrator::node_index(double t) const {
  const double tol = 1e-12 * std::max(1.0, nodes_.back());
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol);
  if (it != nodes_.end() && std::abs(*it - t) <= tol)
    return static_cast<std::size_t>(it - nodes_.begin());
  throw std::invalid_argument("IteratedIntegrator::node_index: t is not a grid node");
}

std::vector<Complex> IteratedIntegrator::profile(const Composition& comp) const {
  const std::size_t J = nodes_.size();
  if (comp.parts.empty())
    throw std::invalid_argument("IteratedIntegrator::profile: empty composition");
  for (int p : comp.parts)
    if (p < 1)
      throw std::invalid_argument("IteratedIntegrator::profile: parts must be >= 1");

  for (int p : comp.parts)
    if (static_cast<std::size_t>(p) > family_->truncation_level())
      return std::vector<Complex>(J, Complex(0.0)); // zero mode beyond truncation

  std::vector<Complex> level(J, Complex(1.0)); // J_0 == 1
  std::vector<Complex> next(J);
  std::vector<Complex> g(J);
  for (int part : comp.parts) {
    const auto& xm = mode_values_[static_cast<std::size_t>(part) - 1];
    for (std::size_t j = 0; j < J; ++j)
      g[j] = level[j] * std::exp(-static_cast<double>(part) * x0_[j]);
    next[0] = Complex(0.0);
    for (std::size_t j = 1; j < J; ++j)
      next[j] = next[j - 1] + 0.5 * (g[j - 1] + g[j]) * (xm[j] - xm[j - 1]);
    level.swap(next);
  }
  const double n = static_cast<double>(comp.order());
  for (std::size_t j = 0; j < J; ++j)
    level[j] *= std::exp(n * x0_[j]);
  return level;
}

Complex IteratedIntegrator::value(const Composition& comp, double t) const {
  return profile(comp)[node_index(t)];
}

Complex iterated_integral(const DriverFamily& family, const Composition& comp,
                          double t, int refinement) {
  if (comp.parts.empty())
    throw std::invalid_argument("iterated_integral: empty composition");
  for (int p : comp.parts) {
    if (p < 1)
      throw std::invalid_argument("iterated_integral: parts must be >= 1");
    if (static_cast<std::size_t>(p) > family.truncation_level())
      throw std::invalid_argument(
          "iterated_integral: part exceeds the stored truncation level");
  }
  if (refinement < 1)
    throw std::invalid_argument("iterated_integral: refinement must be >= 1");
  // Refinement counts sub-steps per driver segment.
  const std::vector<double> bp = family.breakpoints();
  std::vector<double> nodes;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    for (int k = 1; k < refinement; ++k)
      nodes.push_back(bp[i] + (bp[i + 1] - bp[i]) * k / refinement);
  nodes.push_back(t);
  IteratedIntegrator integ(family, 1, nodes);
  return integ.value(comp, t);
}

VerificationReport verify_controlled(const DriverFamily& family,
                                     const ControlFunction& omega, int n_max,
                                     const TimeGrid& grid, std::size_t resolution) {
  if (n_max < 1)
    throw std::invalid_argument("verify_controlled: n_max must be >= 1");
  if (n_max > kMaxCompositionOrder)
    throw std::length_error("verify_controlled: n_max exceeds the composition cap");

  VerificationReport report;
  report.subject = "omega-controlled driver";

  IteratedIntegrator integ(family, resolution, grid.points());
  std::vector<std::size_t> idx(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    idx[j] = integ.node_index(grid[j]);

  const double T = grid.horizon();
  const double w0T = omega(0.0, T);

  // w(0, t) at grid nodes.
  std::vector<double> w0(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    w0[j] = omega(0.0, grid[j]);

  double factorial = 1.0; // (n-1)! running
  for (int n = 1; n <= n_max; ++n) {
    const double fact_n = factorial * n; // n!
    const double w0T_pow = std::pow(w0T, n - 1);
    for (const auto& comp : enumerate_compositions(n)) {
      const std::vector<Complex> prof = integ.profile(comp);
      std::vector<Complex> v(grid.size());
      for (std::size_t j = 0; j < grid.size(); ++j)
        v[j] = prof[idx[j]];

      // Level bound |V(t)| <= w(0,t)^n / n!.
      {
        double worst = std::numeric_limits<double>::infinity();
        std::size_t worst_j = 0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const double rhs = std::pow(w0[j], n) / fact_n;
          const double margin = rhs + kControlSlack * rhs - std::abs(v[j]);
          if (margin < worst) {
            worst = margin;
            worst_j = j;
          }
        }
        CheckRow row;
        std::ostringstream name;
        name << "level|n=" << n << "|comp=" << comp.to_string();
        row.check = name.str();
        row.status = (worst >= 0.0) ? CheckStatus::pass : CheckStatus::fail;
        row.margin = worst;
        std::ostringstream os;
        os << "t=" << grid[worst_j];
        row.witness = os.str();
        report.rows.push_back(std::move(row));
      }

      // Increment bound |V(t) - V(s)| <= w(s,t) w(0,T)^{n-1} / (n-1)!.
      {
        double worst = std::numeric_limits<double>::infinity();
        std::size_t worst_s = 0, worst_t = 0;
        for (std::size_t a = 0; a < grid.size(); ++a) {
          for (std::size_t b = a + 1; b < grid.size(); ++b) {
            const double rhs = omega(grid[a], grid[b]) * w0T_pow / factorial;
            const double margin = rhs + kControlSlack * rhs - std::abs(v[b] - v[a]);
            if (margin < worst) {
              worst = margin;
              worst_s = a;
              worst_t = b;
            }
          }
        }
        CheckRow row;
        std::ostringstream name;
        name << "increment|n=" << n << "|comp=" << comp.to_string();
        row.check = name.str();
        row.status = (worst >= 0.0) ? CheckStatus::pass : CheckStatus::fail;
        row.margin = worst;
        std::ostringstream os;
        os << "s=" << grid[worst_s] << " t=" << grid[worst_t];
        row.witness = os.str();
        report.rows.push_back(std::move(row));
      }
    }
    factorial = fact_n;
  }
  return report;
}

VerificationReport check_superadditive(const ControlFunction& omega,
                                       const TimeGrid& grid) {
  VerificationReport report;
  report.subject = "control-function axioms";
  const auto& pts = grid.points();

  double scale = 1.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a; b < pts.size(); ++b)
      scale = std::max(scale, std::abs(omega(pts[a], pts[b])));
  const double tol = 1e-12 * scale;

  {
    double worst = std::numeric_limits<double>::infinity();
    double worst_t = 0.0;
    for (double t : pts) {
      const double margin = tol - std::abs(omega(t, t));
      if (margin < worst) {
        worst = margin;
        worst_t = t;
      }
    }
    CheckRow row;
    row.check = "diagonal_zero";
    row.status = (worst >= 0.0) ? CheckStatus::pass : CheckStatus::fail;
    row.margin = worst;
    std::ostringstream os;
    os << "t=" << worst_t;
    row.witness = os.str();
    report.rows.push_back(std::move(row));
  }

  {
    double worst = std::numeric_limits<double>::infinity();
    std::pair<double, double> at{0, 0};
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a; b < pts.size(); ++b) {
        const double margin = omega(pts[a], pts[b]) + tol;
        if (margin < worst) {
          worst = margin;
          at = {pts[a], pts[b]};
        }
      }
    }
    CheckRow row;
    row.check = "nonnegative";
    row.status = (worst >= 0.0) ? CheckStatus::pass : CheckStatus::fail;
    row.margin = worst;
    std::ostringstream os;
    os << "s=" << at.first << " t=" << at.second;
    row.witness = os.str();
    report.rows.push_back(std::move(row));
  }

  {
    double worst = std::numeric_limits<double>::infinity();
    std::array<double, 3> at{0, 0, 0};
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a; b < pts.size(); ++b) {
        for (std::size_t c = b; c < pts.size(); ++c) {
          const double margin = omega(pts[a], pts[c]) + tol -
                                omega(pts[a], pts[b]) - omega(pts[b], pts[c]);
          if (margin < worst) {
            worst = margin;
            at = {pts[a], pts[b], pts[c]};
          }
        }
      }
    }
    CheckRow row;
    row.check = "superadditive";
    row.status = (worst >= 0.0) ? CheckStatus::pass : CheckStatus::fail;
    row.margin = worst;
    std::ostringstream os;
    os << "s=" << at[0] << " t=" << at[1] << " u=" << at[2];
    row.witness = os.str();
    report.rows.push_back(std::move(row));
  }

  return report;
}

} // namespace lk
