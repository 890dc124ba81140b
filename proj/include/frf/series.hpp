#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "frf/coefficients.hpp"
#include "frf/errors.hpp"

namespace frf {

// Assumed growth bound |S_k(f; x, t)| <= constant * x^alpha, uniform in t.
struct AlphaHypothesis {
    double alpha;
    double constant;
};

// One series F(t) = sum_{n>=1} f(n) e^(2 pi i n^k t) / n^p, optionally
// carrying the exponent hypothesis that certifies truncation errors.
class SeriesSpec {
  public:
    SeriesSpec(CoefficientSource source, int k, double p,
               std::optional<AlphaHypothesis> hypothesis = std::nullopt);

    const CoefficientSource& source() const { return source_; }
    int k() const { return k_; }
    double p() const { return p_; }
    const std::optional<AlphaHypothesis>& alpha_hypothesis() const { return hypothesis_; }

  private:
    CoefficientSource source_;
    int k_;
    double p_;
    std::optional<AlphaHypothesis> hypothesis_;
};

// Samples of a series over a t grid.
struct SampleGrid {
    Eigen::ArrayXd t_values;
    Eigen::ArrayXcd values;
    std::int64_t n_used = 0;  // truncation order of the partial sums
    // Certified sup-norm distance to the full series, when a hypothesis
    // (or a geometric tail) provides one.
    std::optional<double> tail_bound;
};

// W(t) = sum_{j>=1} f(j) a^j e^(2 pi i b^j t) with 0 < a < 1, b >= 2.
class WeierstrassSpec {
  public:
    WeierstrassSpec(double a, std::int64_t b, CoefficientSource source);

    double a() const { return a_; }
    std::int64_t b() const { return b_; }
    const CoefficientSource& source() const { return source_; }

  private:
    double a_;
    std::int64_t b_;
    CoefficientSource source_;
};

// S_k(f; x, t) = sum_{n <= x} f(n) e^(2 pi i n^k t).
std::complex<double> exp_sum(const CoefficientSource& f, int k, double x, double t);

// |S_k(f; x_i, t_j)| for every ladder rung and grid point; row i is rung
// x_points[i].  One ascending-n Kahan sweep per t, so entry (i, j) is
// bit-identical to |exp_sum(f, k, x_points[i], t_grid[j])|.
Eigen::MatrixXd exp_sum_prefix_profile(const CoefficientSource& f, int k,
                                       std::span<const double> x_points,
                                       std::span<const double> t_grid, int n_threads = 1);

// F_N(t): the series truncated at n = N.
std::complex<double> partial_sum(const SeriesSpec& series, std::int64_t n_terms, double t);

// Smallest truncation certifying sup-norm error <= accuracy under the
// series hypothesis; without one, the uncertified default ceil(1/accuracy).
std::int64_t truncation_for_accuracy(const SeriesSpec& series, double accuracy);

// N = floor((1/h)^(1/k)): matches the truncation used in the increment
// analysis at step size h.
std::int64_t choose_truncation(const SeriesSpec& series, double target_h);

// Certified bound on sup_t |F(t) - F_N(t)|; requires the hypothesis.
double tail_bound(const SeriesSpec& series, std::int64_t n_terms);

// Evaluates F_N on t_values (ascending, inside [0, 1]) with N chosen for
// the requested accuracy.  Deterministic for any n_threads.
SampleGrid evaluate_grid(const SeriesSpec& series, const Eigen::ArrayXd& t_values,
                         double accuracy, int n_threads = 1);

std::complex<double> weierstrass_eval(const WeierstrassSpec& w, double t,
                                      std::int64_t terms);

// Terms needed so the geometric tail bound * a^(T+1) / (1 - a) drops
// below accuracy.
std::int64_t weierstrass_terms_for(const WeierstrassSpec& w, double accuracy);

SampleGrid weierstrass_grid(const WeierstrassSpec& w, const Eigen::ArrayXd& t_values,
                            std::int64_t terms, int n_threads = 1);

// F(t) = sum f(n) e^(2 pi i n^2 t) / n^2 evaluated via the k = p = 2
// series with the trivial alpha = 1 hypothesis.
std::complex<double> riemann_eval(const CoefficientSource& f, double t, double accuracy);

// Residual |sum_{n<=x} a(n) phi(n) - (A(x) phi(x) - int_1^x A(u) phi'(u) du)|
// with the integral evaluated exactly piecewise (A is constant between
// integers, so no phi' is needed).
double abel_identity_check(std::span<const std::complex<double>> a_values,
                           const std::function<double(double)>& phi, double x);

// t_i = i / m for i = 0..m-1.
Eigen::ArrayXd uniform_grid(std::int64_t m);

}  // namespace frf
