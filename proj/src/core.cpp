#include "basinreach/core.hpp"
#include "basinreach/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace basinreach {

Box Box::cube(int dim, double half_width)
{
    return Box{Vec::Constant(dim, -half_width), Vec::Constant(dim, half_width)};
}

bool Box::contains(const Vec& x) const
{
    if (x.size() != lower.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    }
    return true;
}

bool Box::contains_ball(const Vec& center, double radius) const
{
    if (center.size() != lower.size()) return false;
    for (Eigen::Index i = 0; i < center.size(); ++i) {
        if (center[i] - radius < lower[i] || center[i] + radius > upper[i]) return false;
    }
    return true;
}

Vec make_vec(const std::vector<double>& values)
{
    Vec v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
    return v;
}

std::vector<double> to_std(const Vec& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

std::string format_point(const Vec& x)
{
    std::string out = "(";
    char buf[32];
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g", x[i]);
        if (i) out += ", ";
        out += buf;
    }
    return out + ")";
}

double DirectionSampler::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double DirectionSampler::gaussian()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Vec DirectionSampler::direction(int dim)
{
    Vec d(dim);
    for (;;) {
        for (int i = 0; i < dim; ++i) d[i] = gaussian();
        const double n = d.norm();
        if (n > 1e-12) return d / n;
    }
}

}  // namespace basinreach
