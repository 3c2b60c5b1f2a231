#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace basinreach {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad step size, wrong target kind, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterate left the operating box on which the Lipschitz constant is valid.
class LeftBoxError : public Error {
public:
    LeftBoxError(const std::string& what, Vec point) : Error(what), point_(std::move(point)) {}
    const Vec& point() const { return point_; }

private:
    Vec point_;
};

/// Axis-aligned operating box.
struct Box {
    Vec lower;
    Vec upper;

    static Box cube(int dim, double half_width);

    int dim() const { return static_cast<int>(lower.size()); }
    bool contains(const Vec& x) const;
    double diameter() const { return (upper - lower).norm(); }
    /// True when the closed ball of the given radius fits inside the box.
    bool contains_ball(const Vec& center, double radius) const;
};

Vec make_vec(const std::vector<double>& values);
std::vector<double> to_std(const Vec& v);
std::string format_point(const Vec& x);

}  // namespace basinreach
