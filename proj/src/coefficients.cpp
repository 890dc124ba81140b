#include "frf/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <new>

namespace frf {

namespace {

// SplitMix64 output for the n-th stream element of a given seed.  A
// counter-based generator: no state to advance, any n can be queried in
// any order.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t n) {
    std::uint64_t z = seed + n * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

SieveTable::SieveTable(std::int64_t limit) : limit_(limit) {
    if (limit < 1) throw argument_error("build_sieve: limit must be >= 1");
    if (limit > (std::int64_t{1} << 31))
        throw resource_error("build_sieve: limit " + std::to_string(limit) +
                             " exceeds supported maximum 2^31");
    try {
        const auto size = static_cast<std::size_t>(limit) + 1;
        mu_.assign(size, 0);
        lambda_.assign(size, 0);
        std::vector<std::int32_t> primes;
        std::vector<bool> composite(size, false);
        mu_[1] = 1;
        lambda_[1] = 1;
        for (std::int64_t i = 2; i <= limit; ++i) {
            if (!composite[static_cast<std::size_t>(i)]) {
                primes.push_back(static_cast<std::int32_t>(i));
                mu_[static_cast<std::size_t>(i)] = -1;
                lambda_[static_cast<std::size_t>(i)] = -1;
            }
            for (std::int32_t p : primes) {
                const std::int64_t ip = i * p;
                if (ip > limit) break;
                composite[static_cast<std::size_t>(ip)] = true;
                // lambda is completely multiplicative; mu vanishes once
                // p^2 divides ip.
                lambda_[static_cast<std::size_t>(ip)] =
                    static_cast<std::int8_t>(-lambda_[static_cast<std::size_t>(i)]);
                if (i % p == 0) {
                    mu_[static_cast<std::size_t>(ip)] = 0;
                    break;
                }
                mu_[static_cast<std::size_t>(ip)] =
                    static_cast<std::int8_t>(-mu_[static_cast<std::size_t>(i)]);
            }
        }
    } catch (const std::bad_alloc&) {
        throw resource_error("build_sieve: allocation failed for limit " +
                             std::to_string(limit));
    }
}

std::shared_ptr<const SieveTable> build_sieve(std::int64_t limit) {
    return std::make_shared<const SieveTable>(limit);
}

CoefficientSource CoefficientSource::constant(std::complex<double> value) {
    CoefficientSource f;
    f.kind_ = CoefficientKind::Constant;
    f.value_ = value;
    f.bound_ = std::abs(value);
    return f;
}

CoefficientSource CoefficientSource::moebius(std::shared_ptr<const SieveTable> sieve) {
    if (!sieve) throw argument_error("CoefficientSource::moebius: null sieve");
    CoefficientSource f;
    f.kind_ = CoefficientKind::Moebius;
    f.sieve_ = std::move(sieve);
    return f;
}

CoefficientSource CoefficientSource::liouville(std::shared_ptr<const SieveTable> sieve) {
    if (!sieve) throw argument_error("CoefficientSource::liouville: null sieve");
    CoefficientSource f;
    f.kind_ = CoefficientKind::Liouville;
    f.sieve_ = std::move(sieve);
    return f;
}

CoefficientSource CoefficientSource::random_signs(std::uint64_t seed) {
    CoefficientSource f;
    f.kind_ = CoefficientKind::RandomSigns;
    f.seed_ = seed;
    return f;
}

CoefficientSource CoefficientSource::custom(std::vector<std::complex<double>> table) {
    if (table.empty()) throw argument_error("CoefficientSource::custom: empty table");
    CoefficientSource f;
    f.kind_ = CoefficientKind::Custom;
    double b = 0.0;
    for (const auto& v : table) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw argument_error("CoefficientSource::custom: non-finite entry");
        b = std::max(b, std::abs(v));
    }
    f.bound_ = b;
    f.table_ = std::move(table);
    return f;
}

std::optional<std::int64_t> CoefficientSource::available_limit() const {
    switch (kind_) {
        case CoefficientKind::Moebius:
        case CoefficientKind::Liouville:
            return sieve_->limit();
        case CoefficientKind::Custom:
            return static_cast<std::int64_t>(table_.size());
        default:
            return std::nullopt;
    }
}

std::complex<double> CoefficientSource::operator()(std::int64_t n) const {
    if (n < 1) throw range_error("coeff: n must be >= 1");
    switch (kind_) {
        case CoefficientKind::Constant:
            return value_;
        case CoefficientKind::Moebius:
            return {static_cast<double>(sieve_->mu(n)), 0.0};
        case CoefficientKind::Liouville:
            return {static_cast<double>(sieve_->lambda(n)), 0.0};
        case CoefficientKind::RandomSigns: {
            const std::uint64_t z = splitmix64_at(seed_, static_cast<std::uint64_t>(n));
            return {(z >> 63) ? -1.0 : 1.0, 0.0};
        }
        case CoefficientKind::Custom: {
            if (n > static_cast<std::int64_t>(table_.size()))
                throw range_error("coeff: n = " + std::to_string(n) +
                                  " beyond custom table of size " +
                                  std::to_string(table_.size()));
            return table_[static_cast<std::size_t>(n - 1)];
        }
    }
    throw contract_error("coeff: unknown coefficient kind");
}

}  // namespace frf
