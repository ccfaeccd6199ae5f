#include "asz/windows.hpp"

#include "asz/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace asz {

namespace {

constexpr double kPi = std::numbers::pi;

void check_a(double a) {
  if (!(a > 0)) throw InvalidParameter("window parameter a must be > 0");
}

double sinc(double x) { return std::fabs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// int_T^inf cos(w t) / t^2 dt. Repeated integration by parts gives an asymptotic
// series in 1/(wT); it is summed down to its smallest term.
double cos_tail(double w, double T) {
  if (std::fabs(w) < 1e-14) return 1.0 / T;
  const std::complex<double> iw(0.0, w);
  std::complex<double> term = -std::exp(iw * T) / (iw * T * T);
  std::complex<double> sum = term;
  for (int n = 2; n < 200; ++n) {
    std::complex<double> next = term * static_cast<double>(n) / (iw * T);
    if (std::abs(next) >= std::abs(term) || std::abs(next) < 1e-20) break;
    sum += next;
    term = next;
  }
  return sum.real();
}

}  // namespace

double fejer_window(double a, double t) {
  check_a(a);
  double s = sinc(a * t);
  return s * s;
}

double fejer_hat(double a, double s) {
  check_a(a);
  return std::max(0.0, 1.0 - std::fabs(s) / (2.0 * a)) / (2.0 * a);
}

double fejer_hat_quadrature(double a, double s) {
  check_a(a);
  // Vhat(s) = (1/pi) int_0^inf V(t) cos(s t) dt
  // the tail series needs |w| T large for every frequency w in {s, s - 2a, s + 2a}
  double wmin = 1e300;
  for (double w : {s, s - 2 * a, s + 2 * a})
    if (std::fabs(w) > 1e-14) wmin = std::min(wmin, std::fabs(w));
  const double T = std::ceil(std::min(2e5, std::max(4000.0, 60.0 / wmin)));
  using boost::math::quadrature::gauss;
  double body = 0;
  for (double x0 = 0; x0 < T; x0 += 1.0)
    body += gauss<double, 15>::integrate([&](double t) { return fejer_window(a, t) * std::cos(s * t); }, x0, x0 + 1.0);
  // sin^2(at) cos(st) = cos(st)/2 - cos((s+2a)t)/4 - cos((s-2a)t)/4
  double tail = (0.5 * cos_tail(s, T) - 0.25 * cos_tail(s + 2 * a, T) - 0.25 * cos_tail(s - 2 * a, T)) / (a * a);
  return (body + tail) / kPi;
}

Window Window::fejer(double a) {
  check_a(a);
  Window w;
  w.a_ = a;
  return w;
}

Window Window::sampled(int N, std::vector<double> hat_values) {
  if (N < 1) throw InvalidParameter("sampled window needs N >= 1");
  if (hat_values.empty()) throw InvalidParameter("sampled window needs Vhat(0)");
  Window w;
  w.sampled_N_ = N;
  w.samples_ = std::move(hat_values);
  return w;
}

double Window::hat(double s) const {
  if (!is_fejer()) throw InvalidParameter("continuous transform of a sampled window");
  return fejer_hat(a_, s);
}

double Window::hat_at(int r, int N) const {
  if (is_fejer()) return fejer_hat(a_, static_cast<double>(r) / N);
  if (N != sampled_N_) throw InvalidParameter("sampled window used at a different scale");
  std::size_t k = static_cast<std::size_t>(std::abs(r));
  return k < samples_.size() ? samples_[k] : 0.0;
}

int Window::max_frequency(int N) const {
  if (!is_fejer()) return static_cast<int>(samples_.size()) - 1;
  // Vhat(r/N) = 0 once |r| >= 2aN
  return static_cast<int>(std::ceil(2.0 * a_ * N)) ;
}

double Window::support() const {
  if (is_fejer()) return 2.0 * a_;
  return static_cast<double>(samples_.size()) / sampled_N_;
}

double Window::periodized(double t, int N) const {
  double s = hat_at(0, N);
  const int R = max_frequency(N);
  for (int r = 1; r <= R; ++r) s += 2.0 * hat_at(r, N) * std::cos(r * t);
  return s / N;
}

double Window::periodized_closed(double t, int N) const {
  if (!is_fejer()) throw InvalidParameter("closed form needs a Fejer window");
  const double m = 2.0 * a_ * N;
  if (std::fabs(m - std::round(m)) > 1e-12) throw InvalidParameter("closed form needs 2aN integral");
  const double h = std::sin(t / 2.0);
  if (std::fabs(h) < 1e-6) return periodized(t, N);
  const double x = std::sin(a_ * N * t);
  return x * x / (a_ * a_ * N * N * 4.0 * h * h);
}

double Window::periodized_direct(double t, int N, int terms) const {
  if (!is_fejer()) throw InvalidParameter("direct sum needs a Fejer window");
  double s = 0;
  for (int n = -terms; n <= terms; ++n) s += fejer_window(a_, N * (t + 2 * kPi * n));
  return s;
}

double pair_kernel_integral(const Window& w1, const Window& w2) {
  if (!w1.is_fejer() || !w2.is_fejer()) throw InvalidParameter("kernel integral needs Fejer windows");
  const double S = std::min({w1.support(), w2.support(), 1.0});
  using boost::math::quadrature::gauss;
  auto f = [&](double x) { return w1.hat(x) * w2.hat(-x) * std::max(0.0, 1.0 - std::fabs(x)); };
  // piecewise polynomial between the kinks at 0 and +-S, so Gauss is exact here
  return gauss<double, 20>::integrate(f, -S, 0.0) + gauss<double, 20>::integrate(f, 0.0, S);
}

double two_level_limit(const Window& w1, const Window& w2) {
  return w1.hat(0) * w2.hat(0) - pair_kernel_integral(w1, w2);
}

double pair_kernel_integral_2d(const Window& w1, const Window& w2, double L, int jobs) {
  if (!w1.is_fejer() || !w2.is_fejer()) throw InvalidParameter("2-D quadrature needs Fejer windows");
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& xs = G::abscissa();
  const auto& ws = G::weights();
  // symmetric rule stored as nonnegative half; expand it
  std::vector<double> nodes, weights;
  const double width = kPi;
  const int panels = static_cast<int>(std::ceil(2 * L / width));
  const double start = -panels * width / 2;
  for (int k = 0; k < panels; ++k) {
    const double c = start + (k + 0.5) * width, h = width / 2;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      nodes.push_back(c + h * xs[i]);
      weights.push_back(h * ws[i]);
      if (xs[i] != 0) {
        nodes.push_back(c - h * xs[i]);
        weights.push_back(h * ws[i]);
      }
    }
  }
  const std::size_t n = nodes.size();
  std::vector<double> v1(n), v2(n);
  for (std::size_t i = 0; i < n; ++i) {
    v1[i] = fejer_window(w1.a(), nodes[i]) * weights[i];
    v2[i] = fejer_window(w2.a(), nodes[i]) * weights[i];
  }
  std::vector<double> rows(n, 0.0);
#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double s = sinc((nodes[static_cast<std::size_t>(i)] - nodes[j]) / 2);
      acc += v2[j] * s * s;
    }
    rows[static_cast<std::size_t>(i)] = v1[static_cast<std::size_t>(i)] * acc;
  }
  double total = 0;
  for (double r : rows) total += r;
  return total / (4 * kPi * kPi);
}

double two_level_unitary_exact(const Window& w1, const Window& w2, int N) {
  if (N < 1) throw InvalidParameter("N must be >= 1");
  // E[sum_{j,k}] - E[sum_j] with E|tr U^r|^2 = min(|r|, N), E tr U^r = 0 (r != 0)
  double s = w1.hat_at(0, N) * w2.hat_at(0, N) * (static_cast<double>(N) * N - N);
  const int R = std::min(w1.max_frequency(N), w2.max_frequency(N));
  for (int r = -R; r <= R; ++r) {
    if (r == 0) continue;
    s += w1.hat_at(r, N) * w2.hat_at(-r, N) * (std::min(std::abs(r), N) - N);
  }
  return s / (static_cast<double>(N) * N);
}

}  // namespace asz
