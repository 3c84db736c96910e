#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridlock {

using Rational = boost::multiprecision::cpp_rational;

class BoundsError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Euler's totient by trial factorization. Throws BoundsError for i < 1.
[[nodiscard]] int64_t euler_phi(int64_t i);
// phi[0..limit] by a linear sieve; phi[0] is 0.
[[nodiscard]] std::vector<int64_t> phi_table(int64_t limit);

[[nodiscard]] int64_t phi_sum(int64_t k);
// sum_{i <= m} phi(i) / i, exact.
[[nodiscard]] Rational phi_ratio_sum(int64_t m);

// 1 + 8 * sum_{i=1}^{m} floor(n / i) * phi(i)
[[nodiscard]] int64_t coverage_bound(int64_t n, int64_t m);

// Cells one point of an s-set can dominate through lines to the other s - 1
// points: slope class j offers 4 phi(j) lines of 2 floor(n / j) cells each
// besides the fixed point, and the s - 1 heaviest lines are taken.
[[nodiscard]] int64_t greedy_coverage_bound(int64_t n, int64_t s);

// Smallest s with C(s, 2) (n - 2) + s >= n^2.
[[nodiscard]] int64_t trivial_lower_bound(int64_t n);
// Smallest s with s * greedy_coverage_bound(n, s) >= n^2.
[[nodiscard]] int64_t phi_lower_bound(int64_t n);

struct BoundReport {
    int64_t n = 0;
    int64_t trivial_lower = 0;
    int64_t phi_lower = 0;
    // 2 ceil(n / 2) for n >= 3; n^2 below that.
    int64_t construction_upper = 0;
    std::string notes;
};

[[nodiscard]] BoundReport bound_report(int64_t n);

struct JansonEstimate {
    int64_t n = 0;
    int64_t m = 0;
    Rational mu_exact;
    Rational delta_exact;
    double mu = 0;
    double delta = 0;
    // 2 n^2 exp(-mu + delta); the only inexact step.
    double failure_bound = 0;

    // failure_bound < 1 with 1e-9 slack: a dominating m-set of T_n exists.
    [[nodiscard]] bool certifies_existence() const { return failure_bound < 1.0 - 1e-9; }
};

[[nodiscard]] bool is_prime(int64_t n);

// Throws BoundsError when n is not prime or m lies outside [0, n^2].
[[nodiscard]] JansonEstimate janson_failure_bound(int64_t n, int64_t m);

} // namespace gridlock
