#include "frf/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frf/phase.hpp"
#include "parallel.hpp"

namespace frf {

namespace {

// Compensated accumulation, one lane per component.  Terms are always
// added in ascending n, which together with the compensation makes every
// sum bit-reproducible across runs and thread counts.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

struct KahanComplex {
    KahanSum re, im;
    void add(std::complex<double> v) {
        re.add(v.real());
        im.add(v.imag());
    }
    std::complex<double> value() const { return {re.s, im.s}; }
};

inline double power_weight(std::int64_t n, double p) {
    if (p == 1.0) return 1.0 / static_cast<double>(n);
    if (p == 2.0) return 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    return std::pow(static_cast<double>(n), -p);
}

// Single ascending-n sweep shared by every summation entry point.  After
// crossing checkpoint x_points[i] the current sum is handed to sink(i, S).
template <class Weight, class Sink>
void sweep(const CoefficientSource& f, int k, std::span<const double> x_points, double t,
           Weight weight, Sink sink) {
    const PhaseReducer reducer(t);
    KahanComplex acc;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < x_points.size(); ++i) {
        const std::int64_t stop = static_cast<std::int64_t>(std::floor(x_points[i]));
        while (n < stop) {
            ++n;
            const double frac = reducer.pow_frac(static_cast<std::uint64_t>(n), k);
            acc.add(coeff(f, n) * (weight(n) * unit_phase(frac)));
        }
        sink(i, acc.value());
    }
}

void check_ladder_available(const CoefficientSource& f, double x_max, const char* who) {
    const auto limit = f.available_limit();
    const auto need = static_cast<std::int64_t>(std::floor(x_max));
    if (limit && need > *limit)
        throw range_error(std::string(who) + ": needs f(n) up to n = " +
                          std::to_string(need) + " but source provides only " +
                          std::to_string(*limit));
}

}  // namespace

SeriesSpec::SeriesSpec(CoefficientSource source, int k, double p,
                       std::optional<AlphaHypothesis> hypothesis)
    : source_(std::move(source)), k_(k), p_(p), hypothesis_(hypothesis) {
    if (k < 1) throw argument_error("SeriesSpec: k must be a positive integer");
    if (!(p > 0.0) || !std::isfinite(p))
        throw argument_error("SeriesSpec: p must be a positive real");
    if (hypothesis_) {
        const double lo = std::max(0.0, p - k);
        if (!(hypothesis_->alpha > lo) || !(hypothesis_->alpha < p))
            throw argument_error(
                "SeriesSpec: alpha hypothesis inadmissible; need max(0, p - k) < alpha < p");
        if (!(hypothesis_->constant > 0.0) || !std::isfinite(hypothesis_->constant))
            throw argument_error("SeriesSpec: hypothesis constant must be positive");
    }
}

WeierstrassSpec::WeierstrassSpec(double a, std::int64_t b, CoefficientSource source)
    : a_(a), b_(b), source_(std::move(source)) {
    if (!(a > 0.0) || !(a < 1.0)) throw argument_error("WeierstrassSpec: need 0 < a < 1");
    if (b < 2) throw argument_error("WeierstrassSpec: need integer b >= 2");
    if (!(a * static_cast<double>(b) > 1.0))
        throw argument_error("WeierstrassSpec: need a * b > 1");
}

std::complex<double> exp_sum(const CoefficientSource& f, int k, double x, double t) {
    if (k < 1) throw argument_error("exp_sum: k must be >= 1");
    if (!std::isfinite(x) || x < 0.0) throw argument_error("exp_sum: x must be finite and >= 0");
    check_ladder_available(f, x, "exp_sum");
    std::complex<double> out{0.0, 0.0};
    const double pts[1] = {x};
    sweep(f, k, pts, t, [](std::int64_t) { return 1.0; },
          [&](std::size_t, std::complex<double> s) { out = s; });
    return out;
}

Eigen::MatrixXd exp_sum_prefix_profile(const CoefficientSource& f, int k,
                                       std::span<const double> x_points,
                                       std::span<const double> t_grid, int n_threads) {
    if (k < 1) throw argument_error("exp_sum_prefix_profile: k must be >= 1");
    if (x_points.empty() || t_grid.empty())
        throw argument_error("exp_sum_prefix_profile: empty ladder or t grid");
    for (std::size_t i = 0; i < x_points.size(); ++i) {
        if (!std::isfinite(x_points[i]) || x_points[i] < 1.0)
            throw argument_error("exp_sum_prefix_profile: ladder rungs must be >= 1");
        if (i > 0 && !(x_points[i] > x_points[i - 1]))
            throw argument_error("exp_sum_prefix_profile: ladder must be strictly ascending");
    }
    check_ladder_available(f, x_points.back(), "exp_sum_prefix_profile");
    Eigen::MatrixXd profile(static_cast<Eigen::Index>(x_points.size()),
                            static_cast<Eigen::Index>(t_grid.size()));
    detail::parallel_for(static_cast<std::int64_t>(t_grid.size()), n_threads,
                         [&](std::int64_t j) {
                             sweep(f, k, x_points, t_grid[static_cast<std::size_t>(j)],
                                   [](std::int64_t) { return 1.0; },
                                   [&](std::size_t i, std::complex<double> s) {
                                       profile(static_cast<Eigen::Index>(i),
                                               static_cast<Eigen::Index>(j)) = std::abs(s);
                                   });
                         });
    return profile;
}

std::complex<double> partial_sum(const SeriesSpec& series, std::int64_t n_terms, double t) {
    if (n_terms < 1) throw argument_error("partial_sum: need n_terms >= 1");
    check_ladder_available(series.source(), static_cast<double>(n_terms), "partial_sum");
    const double p = series.p();
    std::complex<double> out{0.0, 0.0};
    const double pts[1] = {static_cast<double>(n_terms)};
    sweep(series.source(), series.k(), pts, t,
          [p](std::int64_t n) { return power_weight(n, p); },
          [&](std::size_t, std::complex<double> s) { out = s; });
    return out;
}

double tail_bound(const SeriesSpec& series, std::int64_t n_terms) {
    if (!series.alpha_hypothesis())
        throw contract_error("tail_bound: series carries no alpha hypothesis");
    if (n_terms < 1) throw argument_error("tail_bound: need n_terms >= 1");
    const double k = static_cast<double>(series.k());
    const double p = series.p();
    const double alpha = series.alpha_hypothesis()->alpha;
    const double c = series.alpha_hypothesis()->constant;
    // Summation by parts transfers the growth bound to the weighted tail:
    // exponent (alpha + k - p)/k and constant c * (1 + |k - p|/(alpha + k - p)).
    const double alpha_t = (alpha + k - p) / k;
    const double c_t = c * (1.0 + std::abs(k - p) / (alpha + k - p));
    return c_t * (2.0 + 1.0 / (1.0 - alpha_t)) *
           std::pow(static_cast<double>(n_terms), k * (alpha_t - 1.0));
}

std::int64_t truncation_for_accuracy(const SeriesSpec& series, double accuracy) {
    if (!(accuracy > 0.0) || !std::isfinite(accuracy))
        throw argument_error("truncation_for_accuracy: accuracy must be positive");
    if (!series.alpha_hypothesis()) {
        const double nd = std::ceil(1.0 / accuracy);
        if (!(nd < 9.0e18))
            throw resource_error("truncation_for_accuracy: default truncation overflows");
        return std::max<std::int64_t>(1, static_cast<std::int64_t>(nd));
    }
    const double decay = series.p() - series.alpha_hypothesis()->alpha;  // k * (1 - alpha_t)
    const double k1 = tail_bound(series, 1);
    const double nd = std::pow(k1 / accuracy, 1.0 / decay);
    if (!(nd < 9.0e18))
        throw resource_error("truncation_for_accuracy: required truncation exceeds int64 at accuracy " +
                             std::to_string(accuracy));
    std::int64_t n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(nd)));
    // Polish the closed-form estimate against the actual (monotone) bound.
    for (int i = 0; i < 64 && n > 1 && tail_bound(series, n - 1) <= accuracy; ++i) --n;
    while (tail_bound(series, n) > accuracy) ++n;
    return n;
}

std::int64_t choose_truncation(const SeriesSpec& series, double target_h) {
    if (!(target_h > 0.0) || !(target_h <= 1.0))
        throw argument_error("choose_truncation: need 0 < target_h <= 1");
    const double inv = 1.0 / target_h;
    if (series.k() == 1) return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(inv)));
    auto powk = [&](std::int64_t v) {
        long double r = 1.0L;
        for (int i = 0; i < series.k(); ++i) r *= static_cast<long double>(v);
        return r;
    };
    const long double target = static_cast<long double>(inv);
    std::int64_t m = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::floor(std::pow(inv, 1.0 / series.k()))));
    while (powk(m + 1) <= target) ++m;
    while (m > 1 && powk(m) > target) --m;
    return m;
}

SampleGrid evaluate_grid(const SeriesSpec& series, const Eigen::ArrayXd& t_values,
                         double accuracy, int n_threads) {
    if (t_values.size() == 0) throw argument_error("evaluate_grid: empty t grid");
    for (Eigen::Index i = 0; i < t_values.size(); ++i) {
        if (!(t_values[i] >= 0.0) || !(t_values[i] <= 1.0))
            throw argument_error("evaluate_grid: t values must lie in [0, 1]");
        if (i > 0 && !(t_values[i] > t_values[i - 1]))
            throw argument_error("evaluate_grid: t values must be strictly ascending");
    }
    const std::int64_t n = truncation_for_accuracy(series, accuracy);
    if (const auto limit = series.source().available_limit(); limit && n > *limit)
        throw resource_error("evaluate_grid: accuracy " + std::to_string(accuracy) +
                             " requires N = " + std::to_string(n) +
                             " coefficients but only " + std::to_string(*limit) +
                             " are available");
    SampleGrid grid;
    grid.t_values = t_values;
    grid.values.resize(t_values.size());
    grid.n_used = n;
    if (series.alpha_hypothesis()) grid.tail_bound = tail_bound(series, n);
    detail::parallel_for(t_values.size(), n_threads, [&](std::int64_t i) {
        grid.values[static_cast<Eigen::Index>(i)] = partial_sum(series, n, t_values[i]);
    });
    return grid;
}

std::complex<double> weierstrass_eval(const WeierstrassSpec& w, double t,
                                      std::int64_t terms) {
    if (terms < 1) throw argument_error("weierstrass_eval: need terms >= 1");
    if (const auto limit = w.source().available_limit(); limit && terms > *limit)
        throw range_error("weierstrass_eval: terms exceed coefficient availability");
    const PhaseReducer reducer(t);
    detail::LimbPow b_pow;  // b^j mod 2^1088, exact for the phase at any j
    KahanComplex acc;
    double a_pow = 1.0;
    for (std::int64_t j = 1; j <= terms; ++j) {
        a_pow *= w.a();
        b_pow.mul(static_cast<std::uint64_t>(w.b()));
        const double frac =
            reducer.limbs_frac(std::span<const std::uint64_t>(b_pow.w.data(), b_pow.len));
        acc.add(coeff(w.source(), j) * (a_pow * unit_phase(frac)));
    }
    return acc.value();
}

std::int64_t weierstrass_terms_for(const WeierstrassSpec& w, double accuracy) {
    if (!(accuracy > 0.0) || !std::isfinite(accuracy))
        throw argument_error("weierstrass_terms_for: accuracy must be positive");
    const double bound = std::max(w.source().declared_bound(), 1e-300);
    std::int64_t terms = 1;
    double tail = bound * w.a() * w.a() / (1.0 - w.a());  // bound * a^(T+1)/(1-a), T = 1
    while (tail > accuracy) {
        ++terms;
        tail *= w.a();
        if (terms > 100000)
            throw resource_error("weierstrass_terms_for: accuracy unreachable, needs > 1e5 terms");
    }
    return terms;
}

SampleGrid weierstrass_grid(const WeierstrassSpec& w, const Eigen::ArrayXd& t_values,
                            std::int64_t terms, int n_threads) {
    if (t_values.size() == 0) throw argument_error("weierstrass_grid: empty t grid");
    if (terms < 1) throw argument_error("weierstrass_grid: need terms >= 1");
    SampleGrid grid;
    grid.t_values = t_values;
    grid.values.resize(t_values.size());
    grid.n_used = terms;
    grid.tail_bound =
        w.source().declared_bound() * std::pow(w.a(), static_cast<double>(terms + 1)) /
        (1.0 - w.a());
    detail::parallel_for(t_values.size(), n_threads, [&](std::int64_t i) {
        grid.values[static_cast<Eigen::Index>(i)] = weierstrass_eval(w, t_values[i], terms);
    });
    return grid;
}

std::complex<double> riemann_eval(const CoefficientSource& f, double t, double accuracy) {
    const double bound = f.declared_bound();
    if (bound == 0.0) return {0.0, 0.0};
    // Trivial growth bound |S_2(f; x, t)| <= bound * x, i.e. alpha = 1.
    const SeriesSpec series(f, 2, 2.0, AlphaHypothesis{1.0, bound});
    const std::int64_t n = truncation_for_accuracy(series, accuracy);
    if (const auto limit = f.available_limit(); limit && n > *limit)
        throw resource_error("riemann_eval: accuracy " + std::to_string(accuracy) +
                             " requires N = " + std::to_string(n) +
                             " coefficients but only " + std::to_string(*limit) +
                             " are available");
    return partial_sum(series, n, t);
}

double abel_identity_check(std::span<const std::complex<double>> a_values,
                           const std::function<double(double)>& phi, double x) {
    const auto n_max = static_cast<std::int64_t>(a_values.size());
    if (n_max < 1) throw argument_error("abel_identity_check: empty coefficient list");
    if (!(x >= 1.0) || !(x <= static_cast<double>(n_max)))
        throw argument_error("abel_identity_check: need 1 <= x <= len(a_values)");
    const auto terms = static_cast<std::int64_t>(std::floor(x));
    auto phi_at = [&](double u) {
        const double v = phi(u);
        if (!std::isfinite(v)) throw numeric_error("abel_identity_check: phi not finite");
        return v;
    };
    KahanComplex lhs;
    KahanComplex integral;  // int_1^x A(u) dphi(u), exact piecewise (A is a step function)
    KahanComplex prefix;
    for (std::int64_t n = 1; n <= terms; ++n) {
        const std::complex<double> a = a_values[static_cast<std::size_t>(n - 1)];
        lhs.add(a * phi_at(static_cast<double>(n)));
        prefix.add(a);
        const double seg_end = std::min(static_cast<double>(n + 1), x);
        if (seg_end > static_cast<double>(n))
            integral.add(prefix.value() *
                         (phi_at(seg_end) - phi_at(static_cast<double>(n))));
    }
    const std::complex<double> rhs = prefix.value() * phi_at(x) - integral.value();
    return std::abs(lhs.value() - rhs);
}

Eigen::ArrayXd uniform_grid(std::int64_t m) {
    if (m < 1) throw argument_error("uniform_grid: need m >= 1");
    Eigen::ArrayXd t(m);
    for (std::int64_t i = 0; i < m; ++i)
        t[static_cast<Eigen::Index>(i)] =
            static_cast<double>(i) / static_cast<double>(m);
    return t;
}

}  // namespace frf
