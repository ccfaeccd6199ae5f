#pragma once

#include <cstdint>
#include <vector>

namespace asz {

// V(t) = (sin(a t)/(a t))^2
double fejer_window(double a, double t);
// Vhat(s) = (1/2pi) int V(t) e^{-ist} dt = (1/(2a)) max(0, 1 - |s|/(2a))
double fejer_hat(double a, double s);
// the same transform by quadrature over [0, T] with an asymptotic tail; for checking the closed form
double fejer_hat_quadrature(double a, double s);

// A one-variable window described through its Fourier transform.
// Fejer windows are closed form; a sampled window carries Vhat(r/N) for r >= 0
// at one fixed N and is taken to be even.
class Window {
 public:
  static Window fejer(double a);
  static Window sampled(int N, std::vector<double> hat_values);

  bool is_fejer() const { return sampled_N_ == 0; }
  double a() const { return a_; }
  // Vhat(r/N)
  double hat_at(int r, int N) const;
  double hat(double s) const;  // Fejer only
  // largest |r| with Vhat(r/N) possibly nonzero
  int max_frequency(int N) const;
  // right end of the support of Vhat
  double support() const;

  // v_N(t) = sum_n V(N (t + 2 pi n)) = (1/N) sum_r Vhat(r/N) e^{irt}
  double periodized(double t, int N) const;
  // closed form through sum_n 1/(t+2 pi n)^2 = 1/(4 sin^2(t/2)); Fejer with 2aN integral only
  double periodized_closed(double t, int N) const;
  // direct truncated sum over n, for tests
  double periodized_direct(double t, int N, int terms) const;

 private:
  double a_ = 0;
  int sampled_N_ = 0;
  std::vector<double> samples_;
};

// limit of the two-level statistic for V(t,u) = V1(t) V2(u):
// Vhat(0,0) - int Vhat1(sigma) Vhat2(-sigma) K(sigma) d sigma, K = max(0, 1 - |sigma|)
double two_level_limit(const Window& w1, const Window& w2);
// int Vhat1(sigma) Vhat2(-sigma) K(sigma) d sigma alone
double pair_kernel_integral(const Window& w1, const Window& w2);
// the same integral as (1/4pi^2) iint V1(t) V2(u) sinc^2((t-u)/2) by 2-D quadrature on [-L, L]^2
double pair_kernel_integral_2d(const Window& w1, const Window& w2, double L = 800.0, int jobs = 1);
// exact expectation over U(N) of sum_{j != k} v1_N(theta_j) v2_N(theta_k)
double two_level_unitary_exact(const Window& w1, const Window& w2, int N);

}  // namespace asz
