#include "asz/rmt.hpp"

#include "asz/errors.hpp"
#include "asz/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace asz {

std::string to_string(Ensemble e) { return e == Ensemble::unitary ? "unitary" : "usp"; }

Ensemble parse_ensemble(const std::string& s) {
  if (s == "unitary" || s == "U") return Ensemble::unitary;
  if (s == "usp" || s == "USp") return Ensemble::usp;
  throw InvalidParameter("unknown ensemble: " + s);
}

CMatrix symplectic_form(int two_m) {
  const int m = two_m / 2;
  CMatrix J = CMatrix::Zero(two_m, two_m);
  for (int i = 0; i < m; ++i) {
    J(i, m + i) = 1.0;
    J(m + i, i) = -1.0;
  }
  return J;
}

namespace {

std::complex<double> complex_normal(std::mt19937_64& g) {
  double re = standard_normal(g);
  double im = standard_normal(g);
  return {re, im};
}

CMatrix haar_unitary(int N, std::mt19937_64& g) {
  CMatrix Z(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) Z(i, j) = complex_normal(g);
  Eigen::HouseholderQR<CMatrix> qr(Z);
  CMatrix Q = qr.householderQ();
  CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < N; ++j) {
    std::complex<double> d = R(j, j);
    double a = std::abs(d);
    Q.col(j) *= a > 0 ? d / a : 1.0;
  }
  return Q;
}

// columns u_k and -J conj(u_k); each new u is a Gaussian vector projected off
// the span so far, which is closed under v -> J conj(v)
CMatrix haar_usp(int N, std::mt19937_64& g) {
  const int m = N / 2;
  CMatrix J = symplectic_form(N);
  CMatrix U = CMatrix::Zero(N, N);
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXcd v(N);
    for (int i = 0; i < N; ++i) v(i) = complex_normal(g);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) {
        v -= U.col(j) * U.col(j).dot(v);
        v -= U.col(m + j) * U.col(m + j).dot(v);
      }
    }
    v /= v.norm();
    U.col(k) = v;
    U.col(m + k) = -(J * v.conjugate());
  }
  return U;
}

}  // namespace

MatrixSample sample_haar(Ensemble e, int N, std::mt19937_64& rng) {
  if (N < 1) throw InvalidParameter("N must be >= 1");
  if (e == Ensemble::usp && N % 2) throw InvalidParameter("USp needs even N");
  return {e, e == Ensemble::unitary ? haar_unitary(N, rng) : haar_usp(N, rng)};
}

double unitarity_defect(const MatrixSample& m) {
  const auto n = m.U.rows();
  return (m.U.adjoint() * m.U - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double symplectic_defect(const MatrixSample& m) {
  CMatrix J = symplectic_form(static_cast<int>(m.U.rows()));
  return (m.U.transpose() * J * m.U - J).cwiseAbs().maxCoeff();
}

std::vector<std::complex<double>> eigenvalues(const CMatrix& U) {
  Eigen::ComplexEigenSolver<CMatrix> es(U, false);
  if (es.info() != Eigen::Success) throw ArithmeticError("eigenvalue solver failed");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<std::vector<std::complex<double>>> sample_spectra(Ensemble e, int N, std::uint64_t count,
                                                               std::uint64_t seed, int jobs) {
  if (e == Ensemble::usp && N % 2) throw InvalidParameter("USp needs even N");
  if (N < 1) throw InvalidParameter("N must be >= 1");
  std::vector<std::vector<std::complex<double>>> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs > 0 ? jobs : 1)
  for (std::int64_t i = 0; i < n; ++i) {
    auto g = stream_engine(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = eigenvalues(sample_haar(e, N, g).U);
  }
  return out;
}

void Welford::add(double x) {
  ++n;
  double delta = x - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (x - mean);
}

void Welford::merge(const Welford& o) {
  if (o.n == 0) return;
  if (n == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
  const double delta = o.mean - mean;
  const double tot = na + nb;
  mean += delta * nb / tot;
  m2 += o.m2 + delta * delta * na * nb / tot;
  n += o.n;
}

MomentEstimate Welford::estimate(std::uint64_t seed) const {
  MomentEstimate m;
  m.mean = mean;
  m.count = n;
  m.seed = seed;
  if (n > 1) m.stderr_ = std::sqrt(m2 / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
  return m;
}

namespace {

std::complex<double> power_sum(const std::vector<std::complex<double>>& ev, int r) {
  std::complex<double> s = 0;
  for (auto z : ev) s += std::pow(z, r);
  return s;
}

}  // namespace

MomentEstimate trace_moment(const std::vector<std::vector<std::complex<double>>>& spectra, MomentKind kind,
                            int r, int s, std::uint64_t seed) {
  Welford w;
  for (const auto& ev : spectra) {
    auto tr = power_sum(ev, r);
    double x = 0;
    switch (kind) {
      case MomentKind::single: x = tr.real(); break;
      case MomentKind::conj_pair: x = (tr * std::conj(power_sum(ev, s))).real(); break;
      case MomentKind::pair: x = (tr * power_sum(ev, s)).real(); break;
    }
    w.add(x);
  }
  return w.estimate(seed);
}

MomentEstimate trace_moment(Ensemble e, int N, MomentKind kind, int r, int s, std::uint64_t samples,
                            std::uint64_t seed, int jobs) {
  if (samples < 100) throw InvalidParameter("need at least 100 samples");
  return trace_moment(sample_spectra(e, N, samples, seed, jobs), kind, r, s, seed);
}

double moment_prediction(Ensemble e, int N, MomentKind kind, int r, int s) {
  if (e == Ensemble::unitary) {
    switch (kind) {
      case MomentKind::single: return r == 0 ? N : 0;
      case MomentKind::conj_pair: return r == s ? std::min(std::abs(r), N) : 0;
      case MomentKind::pair: return 0;
    }
  }
  if (kind == MomentKind::single) return (r % 2 == 0 && r >= 1 && r <= N) ? -1.0 : 0.0;
  throw InvalidParameter("no closed form for this USp moment");
}

TwoLevelEstimate two_level_unitary(int N, const Window& w1, const Window& w2, std::uint64_t samples,
                                   std::uint64_t seed, double theta, int jobs) {
  auto spectra = sample_spectra(Ensemble::unitary, N, samples, seed, jobs);
  std::vector<double> vals(spectra.size());
  const auto n = static_cast<std::int64_t>(spectra.size());
#pragma omp parallel for schedule(static) num_threads(jobs > 0 ? jobs : 1)
  for (std::int64_t i = 0; i < n; ++i) {
    double s1 = 0, s2 = 0, diag = 0;
    for (auto z : spectra[static_cast<std::size_t>(i)]) {
      double t = std::arg(z) - theta;
      double a = w1.periodized(t, N), b = w2.periodized(t, N);
      s1 += a;
      s2 += b;
      diag += a * b;
    }
    vals[static_cast<std::size_t>(i)] = s1 * s2 - diag;
  }
  Welford w;
  for (double v : vals) w.add(v);
  TwoLevelEstimate out;
  out.estimate = w.estimate(seed);
  out.prediction = two_level_unitary_exact(w1, w2, N);
  out.limit = two_level_limit(w1, w2);
  return out;
}

}  // namespace asz
