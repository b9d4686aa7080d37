#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ahp/error.hpp"
#include "ahp/model.hpp"
#include "ahp/ratio.hpp"

namespace ahp {

/// Positive reciprocal matrix over a sibling group. Row-major; entry(i, j) is how much more
/// important element i is than element j.
class ComparisonMatrix {
public:
    ComparisonMatrix() = default;

    /// Builds from an explicit square matrix (used by tests and generators); no reciprocity check.
    ComparisonMatrix(std::vector<std::string> elements, std::vector<double> entries)
        : elements_(std::move(elements)), entries_(std::move(entries)) {
        if (entries_.size() != elements_.size() * elements_.size()) {
            throw Error(ErrorCode::BadOrder, "matrix entries do not match element count");
        }
    }

    std::size_t size() const { return elements_.size(); }
    const std::vector<std::string>& elements() const { return elements_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
    std::span<const double> row(std::size_t i) const { return {entries_.data() + i * size(), size()}; }
    const std::vector<double>& entries() const { return entries_; }

private:
    std::vector<std::string> elements_;
    std::vector<double> entries_;
};

/// Builds the reciprocal matrix from one-directional judgments. Reciprocals are formed in exact
/// rational arithmetic before conversion, so entry(i,j) * entry(j,i) is 1 up to a single rounding.
inline ComparisonMatrix build_matrix(const std::vector<std::string>& elements,
                                     const std::vector<PairwiseJudgment>& judgments) {
    const std::size_t n = elements.size();
    auto index_of = [&](const std::string& name) -> std::size_t {
        auto it = std::find(elements.begin(), elements.end(), name);
        if (it == elements.end()) throw Error(ErrorCode::UnknownElement, "'" + name + "' is not an element of the matrix");
        return static_cast<std::size_t>(it - elements.begin());
    };

    std::vector<Ratio> exact(n * n, Ratio(0));
    for (std::size_t i = 0; i < n; ++i) exact[i * n + i] = Ratio(1);

    for (const auto& j : judgments) {
        auto a = index_of(j.left);
        auto b = index_of(j.right);
        if (a == b || !j.value.positive()) {
            throw Error(ErrorCode::BadValue, "judgment (" + j.left + ", " + j.right + ") is not a positive off-diagonal ratio");
        }
        Ratio& forward = exact[a * n + b];
        Ratio& backward = exact[b * n + a];
        if (forward.positive()) {
            if (forward == j.value) {
                throw Error(ErrorCode::DuplicatePair, "pair (" + j.left + ", " + j.right + ") is judged more than once");
            }
            throw Error(ErrorCode::ConflictingPair, "pair (" + j.left + ", " + j.right + ") is judged with contradictory values");
        }
        forward = j.value;
        backward = j.value.reciprocal();
    }

    std::vector<double> entries(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
        if (!exact[k].positive()) {
            throw Error(ErrorCode::MissingPair,
                        "no judgment for pair (" + elements[k / n] + ", " + elements[k % n] + ")");
        }
        entries[k] = exact[k].to_double();
    }
    return ComparisonMatrix(elements, std::move(entries));
}

struct PriorityVector {
    std::vector<double> weights;
    double lambda_max = 0.0;
    int iterations = 0;
    bool converged = true;
};

namespace detail {

inline std::vector<double> multiply(const ComparisonMatrix& m, std::span<const double> v) {
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto row = m.row(i);
        out[i] = std::inner_product(row.begin(), row.end(), v.begin(), 0.0);
    }
    return out;
}

inline double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

} // namespace detail

/// Dominant eigenvector by power iteration with L1 normalization, from `start` (uniform when empty).
/// Stops when the L1 change between normalized iterates drops below `tolerance`; on hitting
/// `max_iterations` the last iterate is returned with converged = false.
inline PriorityVector principal_eigenvector(const ComparisonMatrix& matrix, double tolerance = 1e-10,
                                            int max_iterations = 1000, std::span<const double> start = {}) {
    const std::size_t n = matrix.size();
    PriorityVector result;
    if (n == 0) throw Error(ErrorCode::BadOrder, "empty comparison matrix");
    if (n == 1) {
        result.weights = {1.0};
        result.lambda_max = 1.0;
        return result;
    }
    if (n == 2) {
        // exact for reciprocal 2x2: w = (a, 1) / (a + 1), lambda = 2
        double a = matrix(0, 1);
        result.weights = {a / (a + 1.0), 1.0 / (a + 1.0)};
        result.lambda_max = 2.0;
        return result;
    }

    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    if (!start.empty()) {
        if (start.size() != n) throw Error(ErrorCode::BadOrder, "start vector has the wrong length");
        double s = detail::sum(start);
        std::transform(start.begin(), start.end(), v.begin(), [s](double x) { return x / s; });
    }

    result.converged = false;
    for (int it = 1; it <= max_iterations; ++it) {
        auto next = detail::multiply(matrix, v);
        double s = detail::sum(next);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= s;
            change += std::abs(next[i] - v[i]);
        }
        v = std::move(next);
        result.iterations = it;
        if (change < tolerance) {
            result.converged = true;
            break;
        }
    }
    // Rayleigh-style estimate sum(M v) / sum(v), with sum(v) == 1
    result.lambda_max = detail::sum(detail::multiply(matrix, v));
    result.weights = std::move(v);
    return result;
}

enum class ConsistencyStatus { Ideal, Acceptable, Inconsistent };

inline std::string_view to_string(ConsistencyStatus status) {
    switch (status) {
        case ConsistencyStatus::Ideal: return "IDEAL";
        case ConsistencyStatus::Acceptable: return "ACCEPTABLE";
        case ConsistencyStatus::Inconsistent: return "INCONSISTENT";
    }
    return "UNKNOWN";
}

/// IDEAL below 10%, ACCEPTABLE up to and including 20%, INCONSISTENT above.
inline ConsistencyStatus classify_consistency(double ratio) {
    if (ratio < 0.10) return ConsistencyStatus::Ideal;
    if (ratio <= 0.20) return ConsistencyStatus::Acceptable;
    return ConsistencyStatus::Inconsistent;
}

struct ConsistencyReport {
    double lambda_max = 0.0;
    int n = 0;
    double consistency_index = 0.0;
    double random_index = 0.0;
    double consistency_ratio = 0.0;
    ConsistencyStatus status = ConsistencyStatus::Ideal;
};

/// Saaty's random consistency index; orders above 10 reuse the n = 10 value.
inline double saaty_random_index(int n) {
    static constexpr std::array<double, 11> table{0.0, 0.00, 0.00, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
    if (n < 1) throw Error(ErrorCode::BadOrder, "matrix order must be at least 1");
    return table[static_cast<std::size_t>(std::min(n, 10))];
}

inline ConsistencyReport consistency(double lambda_max, int n) {
    if (n < 1) throw Error(ErrorCode::BadOrder, "matrix order must be at least 1");
    ConsistencyReport report;
    report.lambda_max = lambda_max;
    report.n = n;
    report.random_index = saaty_random_index(n);
    if (n > 2) {
        report.consistency_index = (lambda_max - n) / (n - 1);
        report.consistency_ratio = report.consistency_index / report.random_index;
    }
    report.status = classify_consistency(report.consistency_ratio);
    return report;
}

} // namespace ahp
