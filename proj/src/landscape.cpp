#include "basinreach/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace basinreach {

std::string to_string(CriticalKind kind)
{
    switch (kind) {
    case CriticalKind::local_min: return "local_min";
    case CriticalKind::local_max: return "local_max";
    case CriticalKind::saddle: return "saddle";
    }
    return "unknown";
}

ObjectiveFunction::ObjectiveFunction(std::string name, ValueFn value, GradFn gradient,
                                     HessFn hessian, double lipschitz, Box box,
                                     std::vector<CriticalPoint> critical_points,
                                     std::vector<double> params)
    : name_(std::move(name)),
      params_(std::move(params)),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      lipschitz_(lipschitz),
      box_(std::move(box)),
      critical_points_(std::move(critical_points))
{
    if (!value_ || !gradient_) throw PreconditionError(name_ + ": value and gradient are required");
    if (box_.dim() <= 0 || box_.upper.size() != box_.lower.size())
        throw PreconditionError(name_ + ": malformed operating box");
    if (!(lipschitz_ >= 0.0) || !std::isfinite(lipschitz_))
        throw PreconditionError(name_ + ": Lipschitz constant must be finite and nonnegative");
}

Mat ObjectiveFunction::hessian(const Vec& x) const
{
    if (!hessian_) throw PreconditionError(name_ + ": no Hessian available");
    return hessian_(x);
}

std::optional<CriticalPoint> ObjectiveFunction::find_critical(const Vec& x, double tol) const
{
    for (const auto& cp : critical_points_) {
        if (cp.point.size() == x.size() && (cp.point - x).norm() <= tol) return cp;
    }
    return std::nullopt;
}

namespace {

ObjectiveFunction make_quad(const std::vector<double>& eig)
{
    if (eig.empty()) throw PreconditionError("quad: at least one eigenvalue is required");
    for (double l : eig) {
        if (!(l > 0.0) || !std::isfinite(l))
            throw PreconditionError("quad: eigenvalues must be positive (0 must be a minimum)");
    }
    const int n = static_cast<int>(eig.size());
    const Vec lam = make_vec(eig);
    const double L = lam.maxCoeff();
    std::vector<CriticalPoint> cps{{Vec::Zero(n), CriticalKind::local_min, 0.0}};
    return ObjectiveFunction(
        "quad",
        [lam](const Vec& x) { return 0.5 * lam.dot(x.cwiseProduct(x)); },
        [lam](const Vec& x) -> Vec { return lam.cwiseProduct(x); },
        [lam](const Vec&) -> Mat { return lam.asDiagonal(); },
        L, Box::cube(n, 10.0), std::move(cps), eig);
}

ObjectiveFunction make_double_well(const std::vector<double>& params)
{
    if (params.size() > 1) throw PreconditionError("double_well: expects at most one parameter (b)");
    const double b = params.empty() ? 1.5 : params[0];
    if (!(b >= 1.0) || !std::isfinite(b))
        throw PreconditionError("double_well: box half-width b must be >= 1");
    std::vector<CriticalPoint> cps{
        {make_vec({-1.0}), CriticalKind::local_min, 0.0},
        {make_vec({0.0}), CriticalKind::local_max, 1.0},
        {make_vec({1.0}), CriticalKind::local_min, 0.0},
    };
    return ObjectiveFunction(
        "double_well",
        [](const Vec& x) {
            const double s = x[0] * x[0] - 1.0;
            return s * s;
        },
        [](const Vec& x) -> Vec {
            Vec g(1);
            g[0] = 4.0 * x[0] * (x[0] * x[0] - 1.0);
            return g;
        },
        [](const Vec& x) -> Mat {
            Mat h(1, 1);
            h(0, 0) = 12.0 * x[0] * x[0] - 4.0;
            return h;
        },
        12.0 * b * b - 4.0, Box::cube(1, b), std::move(cps), {b});
}

Mat himmelblau_hessian(const Vec& v)
{
    const double x = v[0], y = v[1];
    Mat h(2, 2);
    h(0, 0) = 12.0 * x * x + 4.0 * y - 42.0;
    h(0, 1) = h(1, 0) = 4.0 * x + 4.0 * y;
    h(1, 1) = 12.0 * y * y + 4.0 * x - 26.0;
    return h;
}

// Newton-refined roots of grad f (|grad| < 1e-12), regenerated by the
// landscape unit tests.
std::vector<CriticalPoint> himmelblau_catalog()
{
    auto cp = [](double x, double y, CriticalKind kind, double f) {
        return CriticalPoint{make_vec({x, y}), kind, f};
    };
    using K = CriticalKind;
    return {
        cp(3.0, 2.0, K::local_min, 0.0),
        cp(-2.8051180869527449, 3.1313125182505730, K::local_min, 0.0),
        cp(-3.7793102533777469, -3.2831859912861694, K::local_min, 0.0),
        cp(3.5844283403304917, -1.8481265269644036, K::local_min, 0.0),
        cp(-0.27084459066734761, -0.92303855647998146, K::local_max, 181.61652152258270),
        cp(0.086677504555396352, 2.8842547011747761, K::saddle, 67.719150087526140),
        cp(-3.0730257507643896, -0.081353044287967512, K::saddle, 104.01516291755811),
        cp(3.3851541836070209, 0.073851879837749288, K::saddle, 13.311926270405590),
        cp(-0.12796134673068007, -1.9537149802445764, K::saddle, 178.33723920192746),
    };
}

ObjectiveFunction make_himmelblau(const std::vector<double>& params)
{
    if (params.size() > 1) throw PreconditionError("himmelblau: expects at most one parameter (w)");
    const double w = params.empty() ? 5.0 : params[0];
    if (!(w >= 4.0) || !std::isfinite(w))
        throw PreconditionError("himmelblau: box half-width w must be >= 4");
    return ObjectiveFunction(
        "himmelblau",
        [](const Vec& v) {
            const double a = v[0] * v[0] + v[1] - 11.0;
            const double b = v[0] + v[1] * v[1] - 7.0;
            return a * a + b * b;
        },
        [](const Vec& v) -> Vec {
            const double a = v[0] * v[0] + v[1] - 11.0;
            const double b = v[0] + v[1] * v[1] - 7.0;
            Vec g(2);
            g[0] = 4.0 * v[0] * a + 2.0 * b;
            g[1] = 2.0 * a + 4.0 * v[1] * b;
            return g;
        },
        himmelblau_hessian, himmelblau_lipschitz(w), Box::cube(2, w), himmelblau_catalog(), {w});
}

ObjectiveFunction make_saddle(const std::vector<double>& params)
{
    if (!params.empty()) throw PreconditionError("saddle: takes no parameters");
    std::vector<CriticalPoint> cps{{Vec::Zero(2), CriticalKind::saddle, 0.0}};
    return ObjectiveFunction(
        "saddle",
        [](const Vec& v) { return v[0] * v[0] - v[1] * v[1]; },
        [](const Vec& v) -> Vec {
            Vec g(2);
            g[0] = 2.0 * v[0];
            g[1] = -2.0 * v[1];
            return g;
        },
        [](const Vec&) -> Mat {
            Mat h = Mat::Zero(2, 2);
            h(0, 0) = 2.0;
            h(1, 1) = -2.0;
            return h;
        },
        2.0, Box::cube(2, 10.0), std::move(cps));
}

}  // namespace

double himmelblau_lipschitz(double half_width)
{
    const double c[3] = {-half_width, 0.0, half_width};
    double best = 0.0;
    for (double x : c) {
        for (double y : c) {
            const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(himmelblau_hessian(make_vec({x, y})),
                                                              Eigen::EigenvaluesOnly)
                               .eigenvalues();
            best = std::max(best, ev.cwiseAbs().maxCoeff());
        }
    }
    return best;
}

ObjectiveFunction make_builtin(const std::string& name, const std::vector<double>& params)
{
    if (name == "quad") return make_quad(params);
    if (name == "double_well") return make_double_well(params);
    if (name == "himmelblau") return make_himmelblau(params);
    if (name == "saddle") return make_saddle(params);
    throw PreconditionError("unknown function '" + name + "'");
}

std::vector<std::string> builtin_names()
{
    return {"quad", "double_well", "himmelblau", "saddle"};
}

ObjectiveFunction constant_function(double level, const Box& box)
{
    const int n = box.dim();
    return ObjectiveFunction(
        "constant", [level](const Vec&) { return level; },
        [n](const Vec&) -> Vec { return Vec::Zero(n); }, [n](const Vec&) -> Mat { return Mat::Zero(n, n); },
        0.0, box, {}, {level});
}

MaxFunction::MaxFunction(std::vector<ObjectiveFunction> pieces, std::optional<double> activity_tol)
    : pieces_(std::move(pieces)), activity_tol_(activity_tol)
{
    if (pieces_.empty()) throw PreconditionError("MaxFunction needs at least one piece");
    for (const auto& p : pieces_) {
        if (p.dim() != pieces_.front().dim())
            throw PreconditionError("MaxFunction pieces must share a dimension");
    }
    if (activity_tol_ && !(*activity_tol_ >= 0.0))
        throw PreconditionError("activity_tol must be nonnegative");
}

double MaxFunction::lipschitz() const
{
    double L = 0.0;
    for (const auto& p : pieces_) L = std::max(L, p.lipschitz());
    return L;
}

double MaxFunction::value(const Vec& x) const
{
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& p : pieces_) v = std::max(v, p.value(x));
    return v;
}

double MaxFunction::activity_tol(double value_at_x) const
{
    return activity_tol_ ? *activity_tol_ : 1e-9 * (1.0 + std::abs(value_at_x));
}

MaxFunction cap(const ObjectiveFunction& f, double level)
{
    if (!std::isfinite(level)) throw PreconditionError("cap level must be finite");
    return MaxFunction({f, constant_function(level, f.box())});
}

std::vector<Vec> clarke_generators(const MaxFunction& g, const Vec& x)
{
    if (!g.box().contains(x)) throw LeftBoxError("clarke_generators: point outside box", x);
    std::vector<double> values;
    values.reserve(g.pieces().size());
    double vmax = -std::numeric_limits<double>::infinity();
    for (const auto& p : g.pieces()) {
        values.push_back(p.value(x));
        vmax = std::max(vmax, values.back());
    }
    const double cutoff = vmax - g.activity_tol(vmax);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= cutoff) out.push_back(g.pieces()[i].gradient(x));
    }
    return out;
}

namespace {

// Minimizer of |G v| over the affine hull {sum v = 1} of the columns in `active`.
Eigen::VectorXd affine_minimizer(const std::vector<Vec>& gens, const std::vector<int>& active)
{
    const int k = static_cast<int>(active.size());
    Mat kkt = Mat::Zero(k + 1, k + 1);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            kkt(i, j) = kkt(j, i) = gens[active[i]].dot(gens[active[j]]);
        }
        kkt(i, k) = kkt(k, i) = 1.0;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs[k] = 1.0;
    const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    return sol.head(k);
}

Vec combine(const std::vector<Vec>& gens, const std::vector<int>& active, const Eigen::VectorXd& w)
{
    Vec x = Vec::Zero(gens.front().size());
    for (std::size_t i = 0; i < active.size(); ++i) x += w[static_cast<Eigen::Index>(i)] * gens[active[i]];
    return x;
}

}  // namespace

Vec min_norm_element(const std::vector<Vec>& generators)
{
    if (generators.empty()) throw PreconditionError("min_norm_element: empty generator set");
    if (generators.size() == 1) return generators.front();

    const int m = static_cast<int>(generators.size());
    double scale = 0.0;
    int start = 0;
    for (int i = 0; i < m; ++i) {
        const double s = generators[i].squaredNorm();
        if (s > scale) scale = s;
        if (s < generators[start].squaredNorm()) start = i;
    }
    if (scale == 0.0) return Vec::Zero(generators.front().size());

    constexpr double weight_eps = 1e-14;
    const double gap_tol = 1e-14 * scale;

    std::vector<int> active{start};
    Eigen::VectorXd w = Eigen::VectorXd::Ones(1);
    Vec x = generators[start];

    for (int major = 0; major < 50 * m + 50; ++major) {
        int j = 0;
        double best = x.dot(generators[0]);
        for (int i = 1; i < m; ++i) {
            const double d = x.dot(generators[i]);
            if (d < best) {
                best = d;
                j = i;
            }
        }
        if (x.squaredNorm() - best <= gap_tol) break;
        if (std::find(active.begin(), active.end(), j) != active.end()) break;

        active.push_back(j);
        w.conservativeResize(w.size() + 1);
        w[w.size() - 1] = 0.0;

        for (int minor = 0; minor <= m; ++minor) {
            const Eigen::VectorXd v = affine_minimizer(generators, active);
            if ((v.array() > weight_eps).all()) {
                w = v;
                break;
            }
            double theta = 1.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                if (v[i] <= weight_eps) theta = std::min(theta, w[i] / (w[i] - v[i]));
            }
            w = (1.0 - theta) * w + theta * v;
            std::vector<int> kept;
            std::vector<double> kept_w;
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                if (w[i] > weight_eps) {
                    kept.push_back(active[static_cast<std::size_t>(i)]);
                    kept_w.push_back(w[i]);
                }
            }
            active = std::move(kept);
            w = Eigen::Map<Eigen::VectorXd>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
            w /= w.sum();
        }
        x = combine(generators, active, w);
    }
    return x;
}

}  // namespace basinreach
