#include "chemsim/truncation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace chemsim {

namespace {

constexpr double kQuadTol = 1e-10;

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
    double acc = 0.0;
    for (std::size_t k = N; k-- > 0;) acc = acc * x + c[k];
    return acc;
}

// Lower bridge on (-1, 0), written in t = u + 1 in (0, 1).
//   a'(u) = chi(t) = 3t^2 - 2t^3 + t^2 (1-t)^2 q(t - 1/2)
//   q(x)  = 15 - 24x - 90x^2 + 100x^3 + 1080x^4
// chi(0) = 0, chi(1) = 1, chi'(0) = chi'(1) = 0, int_0^1 chi = 1 and the
// maximum chi(1/2) = 23/16. max |chi'| is about 3.67.
constexpr std::array<double, 5> kBumpQ{15.0, -24.0, -90.0, 100.0, 1080.0};
constexpr std::array<double, 4> kBumpQPrime{-24.0, -180.0, 300.0, 4320.0};

// int_0^t chi, expanded about t = 0 (used for t <= 1/2).
constexpr std::array<double, 10> kPrimitiveLeft{
    0.0, 0.0, 0.0, 125.0 / 6.0, -130.0, 895.0 / 2.0, -5219.0 / 6.0, 940.0, -1055.0 / 2.0, 120.0};
// int_{1-s}^1 chi, expanded about s = 1 - t = 0 (used for t > 1/2).
constexpr std::array<double, 10> kPrimitiveRight{
    0.0, 1.0, 0.0, 115.0 / 6.0, -155.0, 1097.0 / 2.0, -6121.0 / 6.0, 1040.0, -1105.0 / 2.0, 120.0};

double lower_value(double t) {
    if (t <= 0.5) return -1.0 + horner(kPrimitiveLeft, t);
    return -horner(kPrimitiveRight, 1.0 - t);
}

double lower_slope(double t) {
    const double w = t * (1.0 - t);
    return t * t * (3.0 - 2.0 * t) + w * w * horner(kBumpQ, t - 0.5);
}

double lower_curvature(double t) {
    const double w = t * (1.0 - t);
    const double x = t - 0.5;
    return 6.0 * w + 2.0 * w * (1.0 - 2.0 * t) * horner(kBumpQ, x) + w * w * horner(kBumpQPrime, x);
}

// Upper bridge on (m, m+2), written in t = (u - m)/2 in (0, 1):
//   a = m + 2(t - t^3 + t^4/2),  a' = 1 - 3t^2 + 2t^3,  a'' = 3t(t - 1).
double upper_offset(double t) { return 2.0 * (t - t * t * t + 0.5 * t * t * t * t); }
double upper_slope(double t) { return 1.0 - t * t * (3.0 - 2.0 * t); }
double upper_curvature(double t) { return 3.0 * t * (t - 1.0); }

void require_energy_args(double r, double s) {
    if (!(s >= 1.0)) throw std::domain_error("energy primitive requires s >= 1");
    if (!(r >= 0.0)) throw std::domain_error("energy primitive requires r >= 0");
}

double g_closed_form(double r, double s) {
    if (s == 1.0) return (r + 1.0) * std::log1p(r) - r;
    return std::pow(r, s) / (s * (s - 1.0));
}

}  // namespace

TruncationParams TruncationParams::level(int m) {
    if (m < 1) throw std::invalid_argument("truncation level m must be >= 1");
    TruncationParams p;
    p.m_ = m;
    return p;
}

int TruncationParams::m() const {
    if (!m_) throw std::logic_error("untruncated parameters have no level");
    return *m_;
}

std::string TruncationParams::to_string() const {
    return m_ ? std::to_string(*m_) : std::string("none");
}

double truncation_ceiling(const TruncationParams& p) {
    return p.truncated() ? static_cast<double>(p.m()) + 1.0 : std::numeric_limits<double>::infinity();
}

double eval_a(double u, const TruncationParams& p) {
    if (u <= -1.0) return -1.0;
    if (u < 0.0) return lower_value(u + 1.0);
    if (!p.truncated()) return u;
    const double m = p.m();
    if (u <= m) return u;
    if (u < m + 2.0) return m + upper_offset(0.5 * (u - m));
    return m + 1.0;
}

double eval_a_prime(double u, const TruncationParams& p) {
    if (u <= -1.0) return 0.0;
    if (u < 0.0) return lower_slope(u + 1.0);
    if (!p.truncated()) return 1.0;
    const double m = p.m();
    if (u <= m) return 1.0;
    if (u < m + 2.0) return upper_slope(0.5 * (u - m));
    return 0.0;
}

double eval_a_second(double u, const TruncationParams& p) {
    if (u <= -1.0) return 0.0;
    if (u < 0.0) return lower_curvature(u + 1.0);
    if (!p.truncated()) return 0.0;
    const double m = p.m();
    if (u <= m) return 0.0;
    if (u < m + 2.0) return upper_curvature(0.5 * (u - m));
    return 0.0;
}

double consumption_rate(double u, double s, const TruncationParams& p) {
    const double a = eval_a(u, p);
    if (a <= 0.0) return 0.0;
    return s == 1.0 ? a : std::pow(a, s);
}

double eval_g_prime(double r, double s, const TruncationParams& p) {
    require_energy_args(r, s);
    const double a = eval_a(r, p);
    if (s == 1.0) return std::log1p(a);
    return std::pow(a, s - 1.0) / (s - 1.0);
}

double eval_g(double r, double s, const TruncationParams& p) {
    require_energy_args(r, s);
    if (!p.truncated() || r <= p.m()) return g_closed_form(r, s);

    const double m = p.m();
    double total = g_closed_form(m, s);
    const double bridge_end = std::min(r, m + 2.0);
    auto integrand = [&](double x) { return eval_g_prime(x, s, p); };
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, m, bridge_end, 15,
                                                                           kQuadTol);
    if (r > m + 2.0) total += (r - (m + 2.0)) * eval_g_prime(m + 2.0, s, p);
    return total;
}

double eval_g_j_prime(double r, double s, long long j, const TruncationParams& p) {
    if (!(s > 1.0 && s < 2.0)) throw std::domain_error("shifted primitive requires 1 < s < 2");
    if (j < 1) throw std::domain_error("shift index j must be >= 1");
    if (!(r >= 0.0)) throw std::domain_error("energy primitive requires r >= 0");
    return std::pow(eval_a(r, p) + 1.0 / static_cast<double>(j), s - 1.0) / (s - 1.0);
}

PowerGap power_gap(double w1, double w2, double s) {
    const double lhs = std::abs(std::pow(w2, s) - std::pow(w1, s));
    const double rhs = s * std::pow(w2 + w1, s - 1.0) * std::abs(w2 - w1);
    return {lhs, rhs};
}

}  // namespace chemsim
