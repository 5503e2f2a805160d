#pragma once

#include <Eigen/Core>
#include <functional>

#include "fpcr/errors.hpp"

namespace fpcr {

/// Ambient function space on [0,1]. L2 carries the integral inner product;
/// W12 (the first-order Sobolev space) adds the derivative term.
enum class Space { L2, W12 };

const char* space_name(Space space);

/// A real function on [0,1] sampled at m uniform grid points including both
/// endpoints. Immutable after construction; every operation returns a new
/// instance.
class GridFunction {
 public:
  explicit GridFunction(Eigen::VectorXd values);

  static GridFunction zero(Eigen::Index m);
  static GridFunction constant(Eigen::Index m, double value);
  /// Sample a callable at the grid points of grid_points(m).
  static GridFunction sample(Eigen::Index m, const std::function<double(double)>& fn);

  Eigen::Index grid_size() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](Eigen::Index k) const { return values_[k]; }

 private:
  Eigen::VectorXd values_;
};

/// Uniform grid u_k = (k-1)/(m-1), k = 1..m; includes 0 and 1.
Eigen::VectorXd grid_points(Eigen::Index m);

/// Trapezoid quadrature weights on the uniform grid: 1/(2(m-1)) at the
/// endpoints, 1/(m-1) inside.
Eigen::VectorXd quadrature_weights(Eigen::Index m);

/// Finite-difference matrix D with (Df)_k = f'(u_k): central differences at
/// interior points, first-order one-sided differences at the endpoints.
Eigen::MatrixXd difference_matrix(Eigen::Index m);

/// Gram matrix M of the tagged inner product on grid values, so that
/// inner_product(f,g,space) == f^T M g. L2 gives the diagonal quadrature
/// weights; W12 adds D^T W D.
Eigen::MatrixXd gram_matrix(Eigen::Index m, Space space);

double inner_product(const GridFunction& f, const GridFunction& g, Space space);
GridFunction derivative(const GridFunction& f);
double sup_norm(const GridFunction& f);
double norm(const GridFunction& f, Space space);

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(double scalar, const GridFunction& f);

}  // namespace fpcr
