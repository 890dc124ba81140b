#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "frf/errors.hpp"

namespace frf {

// Moebius mu and Liouville lambda on 1..limit, built together by one
// linear sieve pass.
class SieveTable {
  public:
    explicit SieveTable(std::int64_t limit);

    std::int64_t limit() const { return limit_; }

    int mu(std::int64_t n) const {
        check(n);
        return mu_[static_cast<std::size_t>(n)];
    }

    int lambda(std::int64_t n) const {
        check(n);
        return lambda_[static_cast<std::size_t>(n)];
    }

  private:
    void check(std::int64_t n) const {
        if (n < 1 || n > limit_)
            throw range_error("SieveTable: n = " + std::to_string(n) +
                              " outside sieve range [1, " + std::to_string(limit_) + "]");
    }

    std::int64_t limit_;
    std::vector<std::int8_t> mu_;
    std::vector<std::int8_t> lambda_;
};

std::shared_ptr<const SieveTable> build_sieve(std::int64_t limit);

enum class CoefficientKind { Constant, Moebius, Liouville, RandomSigns, Custom };

// A bounded arithmetic coefficient sequence f : {1, 2, ...} -> C.
//
// All built-in families satisfy |f(n)| <= declared_bound() (= 1 except
// for scaled constants).  RandomSigns is a pure function of (seed, n),
// so evaluation order and thread count never change a value.
class CoefficientSource {
  public:
    static CoefficientSource constant(std::complex<double> value);
    static CoefficientSource moebius(std::shared_ptr<const SieveTable> sieve);
    static CoefficientSource liouville(std::shared_ptr<const SieveTable> sieve);
    static CoefficientSource random_signs(std::uint64_t seed);
    // table[i] holds f(i+1)
    static CoefficientSource custom(std::vector<std::complex<double>> table);

    CoefficientKind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }

    // sup_n |f(n)|; always known for the built-in families.
    double declared_bound() const { return bound_; }

    // Largest n with f(n) defined, or nullopt when unbounded.
    std::optional<std::int64_t> available_limit() const;

    std::complex<double> operator()(std::int64_t n) const;

  private:
    CoefficientSource() = default;

    CoefficientKind kind_ = CoefficientKind::Constant;
    std::complex<double> value_{1.0, 0.0};
    std::shared_ptr<const SieveTable> sieve_;
    std::vector<std::complex<double>> table_;
    std::uint64_t seed_ = 0;
    double bound_ = 1.0;
};

inline std::complex<double> coeff(const CoefficientSource& f, std::int64_t n) {
    return f(n);
}

}  // namespace frf
