#include "relent/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relent {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

LogFactorialTable::LogFactorialTable(std::int64_t max)
    : table_(static_cast<std::size_t>(std::max<std::int64_t>(max, 0)) + 1) {
    for (std::size_t i = 0; i < table_.size(); ++i) {
        table_[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
}

double log_binomial_coefficient(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_sum_exp(std::span<const double> xs) {
    if (xs.empty()) return -std::numeric_limits<double>::infinity();
    const double m = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(m)) return m;
    CompensatedSum s;
    for (double x : xs) s.add(std::exp(x - m));
    return m + std::log(s.value());
}

}  // namespace relent
