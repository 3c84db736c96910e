#include "gridlock/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace gridlock {

int64_t euler_phi(int64_t i) {
    if (i < 1)
        throw BoundsError("euler_phi needs i >= 1, got " + std::to_string(i));
    int64_t result = i;
    int64_t rest = i;
    for (int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p)
            continue;
        while (rest % p == 0)
            rest /= p;
        result -= result / p;
    }
    if (rest > 1)
        result -= result / rest;
    return result;
}

std::vector<int64_t> phi_table(int64_t limit) {
    if (limit < 0)
        throw BoundsError("phi_table needs a non-negative limit");
    std::vector<int64_t> phi(static_cast<size_t>(limit) + 1);
    std::vector<int64_t> primes;
    if (limit >= 1)
        phi[1] = 1;
    for (int64_t i = 2; i <= limit; ++i) {
        if (phi[static_cast<size_t>(i)] == 0) {
            phi[static_cast<size_t>(i)] = i - 1;
            primes.push_back(i);
        }
        for (int64_t p : primes) {
            const int64_t ip = i * p;
            if (ip > limit)
                break;
            if (i % p == 0) {
                phi[static_cast<size_t>(ip)] = phi[static_cast<size_t>(i)] * p;
                break;
            }
            phi[static_cast<size_t>(ip)] = phi[static_cast<size_t>(i)] * (p - 1);
        }
    }
    return phi;
}

int64_t phi_sum(int64_t k) {
    if (k < 1)
        throw BoundsError("phi_sum needs k >= 1");
    const auto phi = phi_table(k);
    int64_t total = 0;
    for (int64_t i = 1; i <= k; ++i)
        total += phi[static_cast<size_t>(i)];
    return total;
}

Rational phi_ratio_sum(int64_t m) {
    if (m < 1)
        throw BoundsError("phi_ratio_sum needs m >= 1");
    const auto phi = phi_table(m);
    Rational total = 0;
    for (int64_t i = 1; i <= m; ++i)
        total += Rational(phi[static_cast<size_t>(i)], i);
    return total;
}

int64_t coverage_bound(int64_t n, int64_t m) {
    if (n < 1 || m < 0)
        throw BoundsError("coverage_bound needs n >= 1 and m >= 0");
    const auto phi = phi_table(m);
    int64_t sum = 0;
    for (int64_t i = 1; i <= m; ++i)
        sum += (n / i) * phi[static_cast<size_t>(i)];
    return 1 + 8 * sum;
}

namespace {

// Walks slope classes in increasing j, handing out lines heaviest first.
class GreedyLines {
public:
    explicit GreedyLines(int64_t n) : n_{n} { }

    // Coverage of the next heaviest line; 0 once lines cover nothing.
    int64_t next() {
        while (left_in_class_ == 0) {
            ++j_;
            if (j_ > n_)
                return 0;
            left_in_class_ = 4 * euler_phi(j_);
        }
        --left_in_class_;
        return 2 * (n_ / j_);
    }

private:
    int64_t n_;
    int64_t j_ = 0;
    int64_t left_in_class_ = 0;
};

} // namespace

int64_t greedy_coverage_bound(int64_t n, int64_t s) {
    if (n < 1 || s < 1)
        throw BoundsError("greedy_coverage_bound needs n >= 1 and s >= 1");
    GreedyLines lines(n);
    int64_t total = 1;
    for (int64_t taken = 0; taken < s - 1; ++taken) {
        const int64_t c = lines.next();
        if (c == 0)
            break;
        total += c;
    }
    return total;
}

int64_t trivial_lower_bound(int64_t n) {
    if (n < 2)
        throw BoundsError("trivial_lower_bound needs n >= 2");
    const int64_t cells = n * n;
    for (int64_t s = 1;; ++s)
        if (s * (s - 1) / 2 * (n - 2) + s >= cells)
            return s;
}

int64_t phi_lower_bound(int64_t n) {
    if (n < 2)
        throw BoundsError("phi_lower_bound needs n >= 2");
    const int64_t cells = n * n;
    GreedyLines lines(n);
    int64_t cover = 1; // greedy_coverage_bound(n, s), grown one line per step
    for (int64_t s = 1;; ++s) {
        if (s > 1)
            cover += lines.next();
        if (s * cover >= cells)
            return s;
    }
}

BoundReport bound_report(int64_t n) {
    BoundReport r;
    r.n = n;
    r.trivial_lower = trivial_lower_bound(n);
    r.phi_lower = phi_lower_bound(n);
    r.construction_upper = n >= 3 ? 2 * ((n + 1) / 2) : n * n;
    r.notes = "lower bounds: pair counting (trivial) and per-point slope-class coverage (phi); "
              "upper bound: two central columns";
    if (r.phi_lower < r.trivial_lower)
        r.notes += "; the pair-counting bound is the stronger lower bound at this n";
    return r;
}

bool is_prime(int64_t n) {
    if (n < 2)
        return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

JansonEstimate janson_failure_bound(int64_t n, int64_t m) {
    if (!is_prime(n))
        throw BoundsError("janson_failure_bound needs a prime torus side, got " + std::to_string(n));
    if (m < 0 || m > n * n)
        throw BoundsError("sample size must lie in [0, n^2]");
    JansonEstimate e;
    e.n = n;
    e.m = m;
    const Rational p(m, n * n);
    // Dominating pairs of a fixed point: (n + 1) C(n - 1, 2).
    const Rational pairs = Rational((n + 1) * (n - 1) * (n - 2), 2);
    // Collinear triples through it: (n + 1) C(n - 1, 3), each counted twice, halved.
    const Rational triples = Rational((n + 1) * (n - 1) * (n - 2) * (n - 3), 12);
    e.mu_exact = p + pairs * p * p;
    e.delta_exact = triples * p * p * p;
    e.mu = e.mu_exact.convert_to<double>();
    e.delta = e.delta_exact.convert_to<double>();
    e.failure_bound = 2.0 * static_cast<double>(n * n) * std::exp(-e.mu + e.delta);
    return e;
}

} // namespace gridlock
