#pragma once

#include <functional>
#include <memory>
#include <string>

#include "hybridopt/manifold.hpp"

namespace hybridopt {

/// Shared counters used to certify the zeroth-order property of a run:
/// cost_evals counts raw evaluations of the underlying cost, and
/// gradient_oracle_calls counts invocations of the finite-difference
/// gradient oracle. A model-free flow path must leave the latter untouched.
struct EvalCounters {
  long long cost_evals = 0;
  long long gradient_oracle_calls = 0;
};

/// A cost accessed by evaluation only. The callable is treated as a black
/// box; nothing in the library differentiates it analytically.
class CostFunction {
 public:
  CostFunction() = default;
  CostFunction(ManifoldKind kind,
               std::function<double(const Eigen::VectorXd&)> fn,
               std::string label = "");

  double eval(const ManifoldPoint& z) const;

  const ManifoldKind& kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const std::shared_ptr<EvalCounters>& counters() const { return counters_; }

 private:
  ManifoldKind kind_;
  std::function<double(const Eigen::VectorXd&)> fn_;
  std::string label_;
  std::shared_ptr<EvalCounters> counters_ = std::make_shared<EvalCounters>();
};

/// A scalar field on the manifold with the counters of the cost it wraps,
/// so derivative-oracle bookkeeping follows composed quantities (warped
/// costs, switching scalars) as well as the raw cost.
struct ScalarField {
  std::function<double(const ManifoldPoint&)> f;
  std::shared_ptr<EvalCounters> counters;

  double operator()(const ManifoldPoint& z) const { return f(z); }
};

ScalarField as_field(const CostFunction& cost);

/// Central-difference Riemannian gradient over the orthonormal frame:
/// gᵢ = [f(exp_map(z, h·eᵢ)) − f(exp_map(z, −h·eᵢ))]/(2h), returned as
/// Σ gᵢ eᵢ. This is the brute-force oracle behind every gradient-based
/// check; each call increments gradient_oracle_calls.
TangentVector fd_gradient(const ScalarField& f, const ManifoldPoint& z,
                          double h = tol().fd_step);

/// Built-in costs selectable by name: "circle_1_minus_z1" on S¹,
/// "sphere_1_minus_z3" on S², and "constant:<v>" on any manifold.
CostFunction builtin_cost(const ManifoldKind& kind, const std::string& name);

/// Polynomial in the embedded coordinates: sum of coef·Π zᵢ^powers[i].
struct PolynomialTerm {
  double coef = 0.0;
  std::vector<int> powers;
};
CostFunction polynomial_cost(const ManifoldKind& kind,
                             const std::vector<PolynomialTerm>& terms,
                             std::string label = "polynomial");

}  // namespace hybridopt
