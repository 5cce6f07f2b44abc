#include "lk/driver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lk {

namespace {

double clamp_to_horizon(double t, double horizon, const char* who) {
  const double tol = 1e-12 * std::max(1.0, horizon);
  if (t < -tol || t > horizon + tol) {
    std::ostringstream os;
    os << who << ": time " << t << " outside [0, " << horizon << "]";
    throw std::invalid_argument(os.str());
  }
  return std::min(std::max(t, 0.0), horizon);
}

} // namespace

DriverPath::DriverPath(std::vector<double> times, std::vector<Complex> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size())
    throw std::invalid_argument("DriverPath: times/values length mismatch");
  if (times_.size() < 2)
    throw std::invalid_argument("DriverPath: need at least two breakpoints");
  if (times_.front() != 0.0)
    throw std::invalid_argument("DriverPath: first breakpoint must be 0");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("DriverPath: breakpoints must be strictly increasing");
  if (!std::isfinite(times_.back()) || !(times_.back() > 0.0))
    throw std::invalid_argument("DriverPath: horizon must be positive and finite");
}

DriverPath DriverPath::zero(double horizon) {
  return DriverPath({0.0, horizon}, {Complex(0.0), Complex(0.0)});
}

std::size_t DriverPath::segment_of(double t) const {
  // Index i with times_[i] <= t < times_[i+1]; last segment owns t = T.
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  if (i == 0)
    return 0;
  if (i >= times_.size())
    return times_.size() - 2;
  return i - 1;
}

Complex DriverPath::operator()(double t) const {
  t = clamp_to_horizon(t, horizon(), "DriverPath::operator()");
  const std::size_t i = segment_of(t);
  const double t0 = times_[i], t1 = times_[i + 1];
  const double w = (t - t0) / (t1 - t0);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

Complex DriverPath::density(double t) const {
  t = clamp_to_horizon(t, horizon(), "DriverPath::density");
  const std::size_t i = segment_of(t);
  return (values_[i + 1] - values_[i]) / (times_[i + 1] - times_[i]);
}

double DriverPath::total_variation(double s, double t) const {
  s = clamp_to_horizon(s, horizon(), "DriverPath::total_variation");
  t = clamp_to_horizon(t, horizon(), "DriverPath::total_variation");
  if (s > t)
    throw std::invalid_argument("DriverPath::total_variation: requires s <= t");
  if (s == t)
    return 0.0;
  double tv = 0.0;
  double u = s;
  Complex xu = (*this)(u);
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
    const double b = times_[i + 1];
    if (b <= s)
      continue;
    if (b >= t)
      break;
    tv += std::abs(values_[i + 1] - xu);
    u = b;
    xu = values_[i + 1];
  }
  tv += std::abs((*this)(t) - xu);
  return tv;
}

bool DriverPath::is_real() const noexcept {
  for (const auto& v : values_)
    if (v.imag() != 0.0)
      return false;
  return true;
}

bool DriverPath::is_zero() const noexcept {
  for (const auto& v : values_)
    if (v != Complex(0.0))
      return false;
  return true;
}

DriverPath make_piecewise_linear(std::vector<double> times, std::vector<Complex> values) {
  return DriverPath(std::move(times), std::move(values));
}

DriverPath make_piecewise_linear(std::vector<double> times, std::vector<double> values) {
  std::vector<Complex> cv(values.begin(), values.end());
  return DriverPath(std::move(times), std::move(cv));
}

double total_variation(const DriverPath& path, double s, double t) {
  return path.total_variation(s, t);
}

DriverFamily::DriverFamily(DriverPath x0, std::vector<DriverPath> modes,
                           std::optional<double> decay_ratio)
    : x0_(std::move(x0)), modes_(std::move(modes)), decay_ratio_(decay_ratio),
      zero_(DriverPath::zero(x0_.horizon())) {
  if (!x0_.is_real())
    throw std::invalid_argument("DriverFamily: x0 must be real-valued");
  const double T = x0_.horizon();
  for (const auto& m : modes_)
    if (m.horizon() != T)
      throw std::invalid_argument("DriverFamily: all paths must share the final time T");
  if (decay_ratio_ && !(*decay_ratio_ > 0.0 && *decay_ratio_ < 1.0))
    throw std::invalid_argument("DriverFamily: decay_ratio must lie in (0, 1)");
}

const DriverPath& DriverFamily::mode(std::size_t n) const {
  if (n < 1)
    throw std::invalid_argument("DriverFamily::mode: index is 1-based");
  if (n <= modes_.size())
    return modes_[n - 1];
  return zero_;
}

double DriverFamily::decay_scale() const {
  if (!decay_ratio_)
    throw std::logic_error("DriverFamily::decay_scale: no decay_ratio declared");
  const double q = *decay_ratio_;
  double k = 0.0;
  double qn = 1.0;
  for (std::size_t n = 1; n <= modes_.size(); ++n) {
    qn *= q;
    const double tv = modes_[n - 1].total_variation();
    if (tv > 0.0)
      k = std::max(k, tv / qn);
  }
  return k;
}

std::vector<double> DriverFamily::breakpoints() const {
  std::vector<double> pts = x0_.times();
  for (const auto& m : modes_)
    pts.insert(pts.end(), m.times().begin(), m.times().end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

XiValue eval_xi(const DriverFamily& family, Complex z, double t) {
  if (!(std::abs(z) < 1.0))
    throw std::domain_error("eval_xi: requires |z| < 1");
  // Horner on x_M, ..., x_1: sum = z(x_1 + z(x_2 + ... )).
  Complex acc(0.0);
  const std::size_t M = family.truncation_level();
  for (std::size_t n = M; n >= 1; --n)
    acc = z * (family.mode(n)(t) + acc);
  XiValue out{acc, std::nullopt};
  if (family.decay_ratio()) {
    const double q = *family.decay_ratio();
    const double k = family.decay_scale();
    const double qr = q * std::abs(z);
    out.tail_bound = k * std::pow(qr, static_cast<double>(M + 1)) / (1.0 - qr);
  }
  return out;
}

Complex stieltjes_integral(const std::function<Complex(double)>& g,
                           const DriverPath& path, double s, double t,
                           int refinement) {
  const double T = path.horizon();
  s = clamp_to_horizon(s, T, "stieltjes_integral");
  t = clamp_to_horizon(t, T, "stieltjes_integral");
  if (s > t)
    throw std::invalid_argument("stieltjes_integral: requires s <= t");
  if (refinement < 1)
    throw std::invalid_argument("stieltjes_integral: refinement must be >= 1");
  if (s == t)
    return Complex(0.0);

  Complex acc(0.0);
  const auto& bp = path.times();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double a = std::max(bp[i], s);
    const double b = std::min(bp[i + 1], t);
    if (b <= a)
      continue;
    // Product-trapezoid on [a, b]: increments of x are exact on linear pieces.
    const double h = (b - a) / refinement;
    Complex g0 = g(a);
    Complex x0 = path(a);
    for (int k = 1; k <= refinement; ++k) {
      const double u1 = (k == refinement) ? b : a + k * h;
      const Complex g1 = g(u1);
      const Complex x1 = path(u1);
      acc += 0.5 * (g0 + g1) * (x1 - x0);
      g0 = g1;
      x0 = x1;
    }
  }
  return acc;
}

VerificationReport check_driver_conditions(const DriverFamily& family) {
  VerificationReport report;
  report.subject = "driver-conditions";

  {
    const Complex v0 = family.x0()(0.0);
    CheckRow row;
    row.check = "x0_initial_zero";
    row.status = (v0 == Complex(0.0)) ? CheckStatus::pass : CheckStatus::fail;
    row.margin = -std::abs(v0);
    std::ostringstream os;
    os << "x0(0) = " << v0.real();
    row.witness = os.str();
    report.rows.push_back(std::move(row));
  }

  // Finiteness of sum_{n<=M} |dx_n|([0,T]) r^n: automatic for a truncation;
  // the sampled values are reported for context.
  for (double r : {0.5, 0.9, 0.99}) {
    double sum = 0.0;
    double rn = 1.0;
    for (std::size_t n = 1; n <= family.truncation_level(); ++n) {
      rn *= r;
      sum += family.mode(n).total_variation() * rn;
    }
    CheckRow row;
    row.check = "variation_series_finite";
    row.status = std::isfinite(sum) ? CheckStatus::pass : CheckStatus::fail;
    row.margin = sum;
    std::ostringstream os;
    os << "r=" << r << " sum=" << sum << " (stored truncation M="
       << family.truncation_level() << ")";
    row.witness = os.str();
    report.rows.push_back(std::move(row));
  }

  {
    CheckRow row;
    row.check = "declared_tail_bound";
    row.status = CheckStatus::info;
    if (family.decay_ratio()) {
      const double q = *family.decay_ratio();
      const double k = family.decay_scale();
      const double r = 0.9;
      const double qr = q * r;
      const double bound =
          k * std::pow(qr, static_cast<double>(family.truncation_level() + 1)) / (1.0 - qr);
      row.margin = bound;
      std::ostringstream os;
      os << "q=" << q << " K=" << k << " tail(r=0.9)<=" << bound
         << " [declared, not proven]";
      row.witness = os.str();
    } else {
      row.margin = 0.0;
      row.witness = "no decay_ratio declared; tail unknown";
    }
    report.rows.push_back(std::move(row));
  }

  return report;
}

} // namespace lk
