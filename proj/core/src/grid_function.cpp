#include "fpcr/grid_function.hpp"

#include <cmath>
#include <utility>

namespace fpcr {

const char* space_name(Space space) { return space == Space::L2 ? "l2" : "w12"; }

GridFunction::GridFunction(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw InvalidGridError("GridFunction needs at least 2 grid points, got " +
                           std::to_string(values_.size()));
  }
  if (!values_.allFinite()) {
    throw PreconditionError("GridFunction values must all be finite");
  }
}

GridFunction GridFunction::zero(Eigen::Index m) {
  return GridFunction(Eigen::VectorXd::Zero(m));
}

GridFunction GridFunction::constant(Eigen::Index m, double value) {
  return GridFunction(Eigen::VectorXd::Constant(m, value));
}

GridFunction GridFunction::sample(Eigen::Index m, const std::function<double(double)>& fn) {
  const Eigen::VectorXd u = grid_points(m);
  Eigen::VectorXd v(m);
  for (Eigen::Index k = 0; k < m; ++k) v[k] = fn(u[k]);
  return GridFunction(std::move(v));
}

Eigen::VectorXd grid_points(Eigen::Index m) {
  if (m < 2) {
    throw InvalidGridError("grid_points requires m >= 2, got " + std::to_string(m));
  }
  return Eigen::VectorXd::LinSpaced(m, 0.0, 1.0);
}

Eigen::VectorXd quadrature_weights(Eigen::Index m) {
  if (m < 2) {
    throw InvalidGridError("quadrature_weights requires m >= 2, got " + std::to_string(m));
  }
  const double h = 1.0 / static_cast<double>(m - 1);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, h);
  w[0] = 0.5 * h;
  w[m - 1] = 0.5 * h;
  return w;
}

Eigen::MatrixXd difference_matrix(Eigen::Index m) {
  if (m < 3) {
    throw InvalidGridError("difference_matrix requires m >= 3, got " + std::to_string(m));
  }
  const double h = 1.0 / static_cast<double>(m - 1);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  d(0, 0) = -1.0 / h;
  d(0, 1) = 1.0 / h;
  for (Eigen::Index k = 1; k + 1 < m; ++k) {
    d(k, k - 1) = -0.5 / h;
    d(k, k + 1) = 0.5 / h;
  }
  d(m - 1, m - 2) = -1.0 / h;
  d(m - 1, m - 1) = 1.0 / h;
  return d;
}

Eigen::MatrixXd gram_matrix(Eigen::Index m, Space space) {
  const Eigen::VectorXd w = quadrature_weights(m);
  if (space == Space::L2) {
    return w.asDiagonal();
  }
  const Eigen::MatrixXd d = difference_matrix(m);
  Eigen::MatrixXd gram = Eigen::MatrixXd(w.asDiagonal()) + d.transpose() * w.asDiagonal() * d;
  // kill rounding asymmetry so downstream eigensolvers see an exactly
  // symmetric matrix
  gram = 0.5 * (gram + gram.transpose()).eval();
  return gram;
}

namespace {

void check_same_grid(const GridFunction& f, const GridFunction& g, const char* op) {
  if (f.grid_size() != g.grid_size()) {
    throw DimensionError(std::string(op) + ": grid sizes differ (" +
                         std::to_string(f.grid_size()) + " vs " + std::to_string(g.grid_size()) +
                         ")");
  }
}

double trapezoid_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd w = quadrature_weights(a.size());
  return (a.array() * b.array() * w.array()).sum();
}

}  // namespace

double inner_product(const GridFunction& f, const GridFunction& g, Space space) {
  check_same_grid(f, g, "inner_product");
  double result = trapezoid_dot(f.values(), g.values());
  if (space == Space::W12) {
    result += trapezoid_dot(derivative(f).values(), derivative(g).values());
  }
  return result;
}

GridFunction derivative(const GridFunction& f) {
  const Eigen::Index m = f.grid_size();
  if (m < 3) {
    throw InvalidGridError("derivative requires m >= 3, got " + std::to_string(m));
  }
  const double h = 1.0 / static_cast<double>(m - 1);
  const Eigen::VectorXd& v = f.values();
  Eigen::VectorXd d(m);
  d[0] = (v[1] - v[0]) / h;
  for (Eigen::Index k = 1; k + 1 < m; ++k) {
    d[k] = (v[k + 1] - v[k - 1]) / (2.0 * h);
  }
  d[m - 1] = (v[m - 1] - v[m - 2]) / h;
  return GridFunction(std::move(d));
}

double sup_norm(const GridFunction& f) { return f.values().cwiseAbs().maxCoeff(); }

double norm(const GridFunction& f, Space space) {
  return std::sqrt(std::max(0.0, inner_product(f, f, space)));
}

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  check_same_grid(f, g, "operator+");
  return GridFunction(f.values() + g.values());
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  check_same_grid(f, g, "operator-");
  return GridFunction(f.values() - g.values());
}

GridFunction operator*(double scalar, const GridFunction& f) {
  return GridFunction(scalar * f.values());
}

}  // namespace fpcr
