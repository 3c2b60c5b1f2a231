#pragma once

#include "basinreach/landscape.hpp"

#include <cstdint>
#include <string>

namespace basinreach {

enum class Regime {
    stability,  ///< sup alpha < 2/L, forward descent stays stable
    prox,       ///< sup alpha < 1/L, each descent step has a unique implicit inverse
};

/// Nonsummable, nonincreasing step sizes: constant c, or c / (k+1)^p with p in [0, 1].
class StepSchedule {
public:
    enum class Kind { constant, power };

    static StepSchedule constant(double c);
    static StepSchedule power(double c, double p);
    /// Parses "constant:C" or "power:C:P".
    static StepSchedule parse(const std::string& text);

    Kind kind() const { return kind_; }
    double c() const { return c_; }
    double p() const { return p_; }
    double sup_alpha() const { return c_; }

    double alpha(std::int64_t k) const;
    /// sum_{k=0}^{K-1} alpha(k).
    double partial_sum(std::int64_t K) const;

    /// A K with partial_sum(K) > M, from the integral lower bound of the sum.
    std::int64_t steps_to_exceed(double M) const;

    /// Same family with c multiplied by `factor`.
    StepSchedule scaled(double factor) const;

    std::string to_string() const;

private:
    StepSchedule(Kind kind, double c, double p) : kind_(kind), c_(c), p_(p) {}

    Kind kind_;
    double c_;
    double p_;
};

double alpha(const StepSchedule& s, std::int64_t k);
double partial_sum(const StepSchedule& s, std::int64_t K);
bool admissible(const StepSchedule& s, const ObjectiveFunction& f, Regime regime);

}  // namespace basinreach
