#pragma once

#include "asz/windows.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace asz {

enum class Ensemble { unitary, usp };

std::string to_string(Ensemble e);
Ensemble parse_ensemble(const std::string& s);

using CMatrix = Eigen::MatrixXcd;

struct MatrixSample {
  Ensemble ensemble = Ensemble::unitary;
  CMatrix U;
};

// standard skew form [[0, I], [-I, 0]] of size 2m
CMatrix symplectic_form(int two_m);

// Haar sample of U(N) or USp(N), N even for usp
MatrixSample sample_haar(Ensemble e, int N, std::mt19937_64& rng);
// max entry of |U*U - I|, and of |U^T J U - J| for usp
double unitarity_defect(const MatrixSample& m);
double symplectic_defect(const MatrixSample& m);

std::vector<std::complex<double>> eigenvalues(const CMatrix& U);

// eigenvalues of samples 0..count-1 drawn from stream_engine(seed, index)
std::vector<std::vector<std::complex<double>>> sample_spectra(Ensemble e, int N, std::uint64_t count,
                                                               std::uint64_t seed, int jobs = 1);

struct MomentEstimate {
  double mean = 0;
  double stderr_ = 0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

// running mean and variance, mergeable
struct Welford {
  std::uint64_t n = 0;
  double mean = 0;
  double m2 = 0;
  void add(double x);
  void merge(const Welford& o);
  MomentEstimate estimate(std::uint64_t seed) const;
};

enum class MomentKind {
  single,     // Re tr U^r
  conj_pair,  // Re tr U^r conj(tr U^s)
  pair        // Re tr U^r tr U^s
};

MomentEstimate trace_moment(const std::vector<std::vector<std::complex<double>>>& spectra, MomentKind kind,
                            int r, int s, std::uint64_t seed);
MomentEstimate trace_moment(Ensemble e, int N, MomentKind kind, int r, int s, std::uint64_t samples,
                            std::uint64_t seed, int jobs = 1);

// Diaconis-Shahshahani values: conj_pair on U(N) gives delta_{rs} min(r, N),
// pair gives 0, single on USp(2m) gives -1 for even r <= 2m and 0 otherwise
double moment_prediction(Ensemble e, int N, MomentKind kind, int r, int s);

struct TwoLevelEstimate {
  MomentEstimate estimate;
  double prediction = 0;  // exact U(N) expectation
  double limit = 0;       // N -> infinity
};

// sum_{j != k} v1_N(theta_j - theta) v2_N(theta_k - theta) over Haar U(N)
TwoLevelEstimate two_level_unitary(int N, const Window& w1, const Window& w2, std::uint64_t samples,
                                   std::uint64_t seed, double theta, int jobs = 1);

}  // namespace asz
