#pragma once

#include <array>
#include <cmath>
#include <span>

#include "parden/common/errors.hpp"

namespace parden {

/// Decoded trade-off hyper-parameters of the portfolio program: risk
/// aversion, trading-cost weight, holding-cost weight, leverage cap.
struct TradeoffVector {
    double gamma_risk = 1.0;
    double gamma_trade = 0.0;
    double gamma_hold = 0.0;
    double leverage_max = 1.0;

    void validate() const {
        if (!(gamma_risk > 0.0))
            throw ContractViolation("TradeoffVector: gamma_risk must be > 0");
        if (gamma_trade < 0.0 || gamma_hold < 0.0)
            throw ContractViolation("TradeoffVector: cost weights must be >= 0");
        if (leverage_max < 1.0)
            throw ContractViolation(
                "TradeoffVector: leverage_max < 1 makes the constraint set empty");
    }
};

/// Maps encoded search coordinates in [0,1]^4 onto trade-off bounds:
/// log-uniform for the three gammas, uniform for the leverage cap.
struct SearchSpace {
    static constexpr int kDims = 4;

    double gamma_risk_lo = 1e-2, gamma_risk_hi = 1e2;
    double gamma_trade_lo = 1e-3, gamma_trade_hi = 1e1;
    double gamma_hold_lo = 1e-3, gamma_hold_hi = 1e1;
    double leverage_lo = 1.0, leverage_hi = 3.0;

    TradeoffVector decode(std::span<const double> x) const {
        if (x.size() != kDims) throw ContractViolation("SearchSpace::decode: need 4 coordinates");
        for (double v : x) {
            if (!(v >= -1e-9 && v <= 1.0 + 1e-9))
                throw ContractViolation("SearchSpace::decode: coordinate outside [0,1]");
        }
        const auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
        TradeoffVector t;
        t.gamma_risk = log_interp(clamp01(x[0]), gamma_risk_lo, gamma_risk_hi);
        t.gamma_trade = log_interp(clamp01(x[1]), gamma_trade_lo, gamma_trade_hi);
        t.gamma_hold = log_interp(clamp01(x[2]), gamma_hold_lo, gamma_hold_hi);
        t.leverage_max = leverage_lo + clamp01(x[3]) * (leverage_hi - leverage_lo);
        return t;
    }

    std::array<double, kDims> encode(const TradeoffVector& t) const {
        return {log_frac(t.gamma_risk, gamma_risk_lo, gamma_risk_hi),
                log_frac(t.gamma_trade, gamma_trade_lo, gamma_trade_hi),
                log_frac(t.gamma_hold, gamma_hold_lo, gamma_hold_hi),
                (t.leverage_max - leverage_lo) / (leverage_hi - leverage_lo)};
    }

private:
    static double log_interp(double x, double lo, double hi) {
        return std::exp(std::log(lo) + x * (std::log(hi) - std::log(lo)));
    }
    static double log_frac(double v, double lo, double hi) {
        return (std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo));
    }
};

}  // namespace parden
