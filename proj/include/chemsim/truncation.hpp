#pragma once

#include <optional>
#include <string>

namespace chemsim {

/// Truncation level of the regularized problem.
///
/// A finite level m clamps the identity to [-1, m+1] with C2 bridges on
/// (-1, 0) and (m, m+2). The untruncated variant keeps a(u) = u for u >= 0
/// and only applies the lower bridge, which is what the original problem
/// needs.
class TruncationParams {
public:
    static TruncationParams level(int m);
    static TruncationParams untruncated() { return TruncationParams{}; }

    bool truncated() const { return m_.has_value(); }
    /// Throws std::logic_error when untruncated.
    int m() const;

    std::string to_string() const;

    bool operator==(const TruncationParams&) const = default;

private:
    TruncationParams() = default;
    std::optional<int> m_;
};

/// Upper bound of a(u) over the whole real line: m+1 for a finite level,
/// +infinity when untruncated.
double truncation_ceiling(const TruncationParams& p);

double eval_a(double u, const TruncationParams& p);
double eval_a_prime(double u, const TruncationParams& p);
double eval_a_second(double u, const TruncationParams& p);

/// m-independent bounds satisfied by the bridges.
inline constexpr double kMaxAPrime = 23.0 / 16.0;
inline constexpr double kMaxASecond = 3.75;

/// Consumption rate max(a(u), 0)^s entering the v-equation.
double consumption_rate(double u, double s, const TruncationParams& p);

// Energy primitives, defined for r >= 0 and s >= 1. Invalid arguments
// throw std::domain_error.
double eval_g_prime(double r, double s, const TruncationParams& p);
double eval_g(double r, double s, const TruncationParams& p);
/// Shifted derivative (a(r) + 1/j)^(s-1) / (s-1), for 1 < s < 2 and j >= 1.
double eval_g_j_prime(double r, double s, long long j, const TruncationParams& p);

struct PowerGap {
    double lhs;  // |w2^s - w1^s|
    double rhs;  // s (w2 + w1)^(s-1) |w2 - w1|
};

PowerGap power_gap(double w1, double w2, double s);

}  // namespace chemsim
