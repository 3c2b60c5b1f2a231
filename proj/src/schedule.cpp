#include "basinreach/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace basinreach {

namespace {

double parse_number(const std::string& s, const std::string& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw PreconditionError("schedule: cannot parse " + what + " '" + s + "'");
    }
    if (used != s.size()) throw PreconditionError("schedule: cannot parse " + what + " '" + s + "'");
    return v;
}

}  // namespace

StepSchedule StepSchedule::constant(double c)
{
    if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("schedule: c must be positive");
    return StepSchedule(Kind::constant, c, 0.0);
}

StepSchedule StepSchedule::power(double c, double p)
{
    if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("schedule: c must be positive");
    if (p > 1.0) throw PreconditionError("schedule: p > 1 gives a summable sequence");
    if (!(p >= 0.0)) throw PreconditionError("schedule: p must lie in [0, 1]");
    return StepSchedule(Kind::power, c, p);
}

StepSchedule StepSchedule::parse(const std::string& text)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(':', start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts[0] == "constant" && parts.size() == 2) return constant(parse_number(parts[1], "c"));
    if (parts[0] == "power" && parts.size() == 3)
        return power(parse_number(parts[1], "c"), parse_number(parts[2], "p"));
    throw PreconditionError("schedule: expected 'constant:C' or 'power:C:P', got '" + text + "'");
}

double StepSchedule::alpha(std::int64_t k) const
{
    if (kind_ == Kind::constant || p_ == 0.0) return c_;
    return c_ / std::pow(static_cast<double>(k) + 1.0, p_);
}

double StepSchedule::partial_sum(std::int64_t K) const
{
    if (kind_ == Kind::constant) return c_ * static_cast<double>(std::max<std::int64_t>(K, 0));
    double s = 0.0;
    for (std::int64_t k = 0; k < K; ++k) s += alpha(k);
    return s;
}

std::int64_t StepSchedule::steps_to_exceed(double M) const
{
    if (M < 0.0) return 0;
    const double target = M / c_;
    double K = 0.0;
    if (kind_ == Kind::constant || p_ == 0.0) {
        K = std::floor(target) + 1.0;
    } else if (p_ == 1.0) {
        // sum_{j=1}^{K} 1/j > ln(K + 1)
        K = std::ceil(std::exp(target));
    } else {
        // sum_{j=1}^{K} j^-p > ((K + 1)^(1-p) - 1) / (1 - p)
        K = std::ceil(std::pow(target * (1.0 - p_) + 1.0, 1.0 / (1.0 - p_)));
    }
    if (!(K < 9.0e18)) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(K);
}

StepSchedule StepSchedule::scaled(double factor) const
{
    return kind_ == Kind::constant ? constant(c_ * factor) : power(c_ * factor, p_);
}

std::string StepSchedule::to_string() const
{
    char buf[96];
    if (kind_ == Kind::constant)
        std::snprintf(buf, sizeof buf, "constant:%.17g", c_);
    else
        std::snprintf(buf, sizeof buf, "power:%.17g:%.17g", c_, p_);
    return buf;
}

double alpha(const StepSchedule& s, std::int64_t k) { return s.alpha(k); }

double partial_sum(const StepSchedule& s, std::int64_t K) { return s.partial_sum(K); }

bool admissible(const StepSchedule& s, const ObjectiveFunction& f, Regime regime)
{
    const double limit = regime == Regime::stability ? 2.0 : 1.0;
    return s.sup_alpha() * f.lipschitz() < limit;
}

}  // namespace basinreach
