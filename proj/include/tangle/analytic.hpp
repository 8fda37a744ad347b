#pragma once

// Reference closed-form tangles for the accelerated GHZ state with r_b = r_c = r.
// Each function transcribes its expression term by term, with no
// simplification, so comparing against the numeric pipeline tests the
// closed-form algebra itself.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tangle/channels.hpp"
#include "tangle/rindler.hpp"

namespace tangle::analytic {

/// Thrown when no closed form exists for the requested point.
class NoOracleCoverage : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct AnalyticPoint {
    AccelerationParam r{0.0};
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    ChannelKind kind = ChannelKind::PhaseDamping;

    AnalyticPoint() = default;
    AnalyticPoint(ChannelKind k, AccelerationParam acc, double a, double b, double c)
        : r(acc), p0(a), p1(b), p2(c), kind(k) {
        require_probability(p0, "AnalyticPoint");
        require_probability(p1, "AnalyticPoint");
        require_probability(p2, "AnalyticPoint");
    }
};

namespace detail {

inline void require_kind(const AnalyticPoint &pt, ChannelKind want, const char *what) {
    if (pt.kind != want) {
        throw std::invalid_argument(std::string(what) + ": wrong channel kind " + std::string(to_string(pt.kind)));
    }
}

struct Trig {
    double c2, c4, s2, s4, s8, sin2r_sq, sin2r_4, cos4r;
};

inline Trig trig(double r) {
    const double c = std::cos(r);
    const double s = std::sin(r);
    const double s2r = std::sin(2.0 * r);
    return {c * c,           c * c * c * c, s * s, s * s * s * s, std::pow(s, 8), s2r * s2r, s2r * s2r * s2r * s2r,
            std::cos(4.0 * r)};
}

// Bracketed sums inside the phase-damping one-tangles.
inline double pd_bracket_a(const Trig &t, double q) {
    return -2.0 + 2.0 * t.c4 + 2.0 * std::sqrt(q * t.c4) + 2.0 * std::sqrt(q * t.c4 + t.s8) + t.sin2r_sq;
}
inline double pd_bracket_b(const Trig &t, double q) {
    return -1.0 + 8.0 * std::sqrt(q * t.c4) + t.cos4r + 2.0 * std::sqrt(16.0 * q * t.c4 + t.sin2r_4);
}

// Phase-flip brackets; `abs_prod` is |(1-2p0)(1-2p1)(1-2p2)| and `sq_prod` its square.
inline double pf_bracket_a(const Trig &t, double abs_prod, double sq_prod) {
    return -2.0 + 2.0 * t.c2 * (abs_prod + t.c2) + 2.0 * std::sqrt(sq_prod * t.c4 + t.s8) + t.sin2r_sq;
}
inline double pf_bracket_b(const Trig &t, double abs_prod, double sq_prod) {
    return -4.0 + 4.0 * abs_prod * t.c2 + 4.0 * t.c4 + 4.0 * t.s4 + t.sin2r_sq +
           std::sqrt(16.0 * sq_prod * t.c4 + t.sin2r_4);
}

}  // namespace detail

/// Phase-damping one-tangles (N_A(BC), N_B(AC), N_C(AB)).
inline std::array<double, 3> pd_one_tangles(const AnalyticPoint &pt) {
    detail::require_kind(pt, ChannelKind::PhaseDamping, "pd_one_tangles");
    const auto t = detail::trig(pt.r.value());
    const double q = (1.0 - pt.p0) * (1.0 - pt.p1) * (1.0 - pt.p2);
    const double na = detail::pd_bracket_a(t, q) / 4.0;
    const double nb = detail::pd_bracket_b(t, q) / 16.0;
    return {na, nb, nb};
}

inline double pd_pi_tangle(const AnalyticPoint &pt) {
    detail::require_kind(pt, ChannelKind::PhaseDamping, "pd_pi_tangle");
    const auto t = detail::trig(pt.r.value());
    const double q = (1.0 - pt.p0) * (1.0 - pt.p1) * (1.0 - pt.p2);
    const double a = detail::pd_bracket_a(t, q);
    const double b = detail::pd_bracket_b(t, q);
    return (8.0 * a * a + b * b) / 384.0;
}

/// Phase-flip one-tangles (N_A(BC), N_B(AC), N_C(AB)).
inline std::array<double, 3> pf_one_tangles(const AnalyticPoint &pt) {
    detail::require_kind(pt, ChannelKind::PhaseFlip, "pf_one_tangles");
    const auto t = detail::trig(pt.r.value());
    const double prod = (1.0 - 2.0 * pt.p0) * (1.0 - 2.0 * pt.p1) * (1.0 - 2.0 * pt.p2);
    const double na = detail::pf_bracket_a(t, std::abs(prod), prod * prod) / 4.0;
    const double nb = detail::pf_bracket_b(t, std::abs(prod), prod * prod) / 8.0;
    return {na, nb, nb};
}

inline double pf_pi_tangle(const AnalyticPoint &pt) {
    detail::require_kind(pt, ChannelKind::PhaseFlip, "pf_pi_tangle");
    const auto t = detail::trig(pt.r.value());
    const double prod = (1.0 - 2.0 * pt.p0) * (1.0 - 2.0 * pt.p1) * (1.0 - 2.0 * pt.p2);
    const double abs_factors = std::abs(1.0 - 2.0 * pt.p0) * std::abs(1.0 - 2.0 * pt.p1) * std::abs(1.0 - 2.0 * pt.p2);
    const double a = detail::pf_bracket_a(t, std::abs(prod), prod * prod);
    const double b = detail::pf_bracket_b(t, abs_factors, prod * prod);
    return (2.0 * a * a + b * b) / 96.0;
}

/// True when bf_special_cases has a closed form for `pt`: inertial (r = 0) with
/// one coupled qubit or equal-strength coupling on all three.
inline bool bf_has_coverage(const AnalyticPoint &pt) {
    if (pt.kind != ChannelKind::BitFlip || pt.r.value() != 0.0) {
        return false;
    }
    const int coupled = (pt.p0 != 0.0) + (pt.p1 != 0.0) + (pt.p2 != 0.0);
    return coupled <= 1 || (pt.p0 == pt.p1 && pt.p1 == pt.p2);
}

/// Bit-flip one-tangles for the inertial special cases.
inline std::array<double, 3> bf_special_cases(const AnalyticPoint &pt) {
    detail::require_kind(pt, ChannelKind::BitFlip, "bf_special_cases");
    if (!bf_has_coverage(pt)) {
        throw NoOracleCoverage("bf_special_cases: no closed form for this point; use the numeric pipeline");
    }
    auto single = [](double p) { return -1.0 + 2.0 * std::sqrt(1.0 - 2.0 * p + 2.0 * p * p); };
    if (pt.p1 == 0.0 && pt.p2 == 0.0) {
        return {single(pt.p0), 1.0, 1.0};
    }
    if (pt.p0 == 0.0 && pt.p2 == 0.0) {
        return {1.0, single(pt.p1), 1.0};
    }
    if (pt.p0 == 0.0 && pt.p1 == 0.0) {
        return {1.0, 1.0, single(pt.p2)};
    }
    const double p = pt.p0;
    const double v = -1.0 + 2.0 * std::sqrt(2.0) * std::sqrt((-1.0 + p) * (-1.0 + p) * p * p) +
                     2.0 * std::sqrt(1.0 - 6.0 * p + 16.0 * p * p - 20.0 * p * p * p + 10.0 * p * p * p * p);
    return {v, v, v};
}

}  // namespace tangle::analytic
