#pragma once

#include "basinreach/core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace basinreach {

enum class CriticalKind { local_min, local_max, saddle };

std::string to_string(CriticalKind kind);

struct CriticalPoint {
    Vec point;
    CriticalKind kind;
    double f_value;
};

/// A C^1 objective with an L-Lipschitz gradient on its operating box.
///
/// Immutable once built; copies share nothing mutable, so one instance can be
/// used from concurrent trajectory runs.
class ObjectiveFunction {
public:
    using ValueFn = std::function<double(const Vec&)>;
    using GradFn = std::function<Vec(const Vec&)>;
    using HessFn = std::function<Mat(const Vec&)>;

    /// `hessian` may be empty. `lipschitz` must be nonnegative and is only
    /// claimed on `box`.
    ObjectiveFunction(std::string name, ValueFn value, GradFn gradient, HessFn hessian,
                      double lipschitz, Box box, std::vector<CriticalPoint> critical_points = {},
                      std::vector<double> params = {});

    const std::string& name() const { return name_; }
    const std::vector<double>& params() const { return params_; }
    int dim() const { return box_.dim(); }

    double value(const Vec& x) const { return value_(x); }
    Vec gradient(const Vec& x) const { return gradient_(x); }
    bool has_hessian() const { return static_cast<bool>(hessian_); }
    /// Throws PreconditionError when no Hessian was supplied.
    Mat hessian(const Vec& x) const;

    double lipschitz() const { return lipschitz_; }
    const Box& box() const { return box_; }
    const std::vector<CriticalPoint>& critical_points() const { return critical_points_; }

    /// Catalog entry within `tol` of x, if any.
    std::optional<CriticalPoint> find_critical(const Vec& x, double tol = 1e-8) const;

private:
    std::string name_;
    std::vector<double> params_;
    ValueFn value_;
    GradFn gradient_;
    HessFn hessian_;
    double lipschitz_;
    Box box_;
    std::vector<CriticalPoint> critical_points_;
};

/// Builtin benchmarks:
///   quad        params = eigenvalues l_1..l_n > 0, f = 1/2 sum l_i x_i^2, box [-10,10]^n, L = max l_i
///   double_well params = [b] (default 1.5, b >= 1), f = (x^2 - 1)^2, box [-b,b], L = 12 b^2 - 4
///   himmelblau  params = [w] (default 5, w >= 4), box [-w,w]^2
///   saddle      f = x^2 - y^2, box [-10,10]^2, L = 2
ObjectiveFunction make_builtin(const std::string& name, const std::vector<double>& params = {});

std::vector<std::string> builtin_names();

/// Largest Hessian spectral norm of Himmelblau's function over the candidate
/// set {-w, 0, w}^2 (box corners and the edge points where the diagonal
/// entries are stationary). For w = 5 this is 286 + sqrt(1664).
double himmelblau_lipschitz(double half_width);

/// f(x) = level on `box`; zero gradient, L = 0.
ObjectiveFunction constant_function(double level, const Box& box);

/// Pointwise maximum of finitely many smooth pieces sharing one box.
class MaxFunction {
public:
    /// With no activity_tol the default 1e-9 * (1 + |value(x)|) is used.
    explicit MaxFunction(std::vector<ObjectiveFunction> pieces,
                         std::optional<double> activity_tol = std::nullopt);

    const std::vector<ObjectiveFunction>& pieces() const { return pieces_; }
    int dim() const { return pieces_.front().dim(); }
    const Box& box() const { return pieces_.front().box(); }
    double lipschitz() const;

    double value(const Vec& x) const;
    double activity_tol(double value_at_x) const;

private:
    std::vector<ObjectiveFunction> pieces_;
    std::optional<double> activity_tol_;
};

/// g = max{f, level}.
MaxFunction cap(const ObjectiveFunction& f, double level);

/// Gradients of the pieces active within the activity tolerance, in piece order.
std::vector<Vec> clarke_generators(const MaxFunction& g, const Vec& x);

/// Minimum-norm point of the convex hull of `generators` (Wolfe's algorithm).
Vec min_norm_element(const std::vector<Vec>& generators);

}  // namespace basinreach
