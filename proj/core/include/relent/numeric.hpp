#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace relent {

/// Neumaier-compensated running sum. Summation order is the call order, so a
/// fixed iteration order gives bit-stable results.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;

/// Table of ln(i!) for i = 0..max, filled from lgamma once at construction.
class LogFactorialTable {
public:
    explicit LogFactorialTable(std::int64_t max);

    double operator()(std::int64_t i) const { return table_[static_cast<std::size_t>(i)]; }
    std::int64_t max() const noexcept { return static_cast<std::int64_t>(table_.size()) - 1; }

private:
    std::vector<double> table_;
};

/// ln C(n, k) through lgamma.
double log_binomial_coefficient(double n, double k);

/// ln( sum_i exp(xs_i) ) with the max-shift trick. Returns -inf for empty input.
double log_sum_exp(std::span<const double> xs);

}  // namespace relent
