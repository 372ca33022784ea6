#include "hybridopt/cost.hpp"

#include <cmath>

namespace hybridopt {

CostFunction::CostFunction(ManifoldKind kind,
                           std::function<double(const Eigen::VectorXd&)> fn,
                           std::string label)
    : kind_(kind), fn_(std::move(fn)), label_(std::move(label)) {}

double CostFunction::eval(const ManifoldPoint& z) const {
  if (!(z.kind == kind_))
    throw KindMismatchError("cost '" + label_ + "' evaluated on the wrong manifold");
  ++counters_->cost_evals;
  return fn_(z.coords);
}

ScalarField as_field(const CostFunction& cost) {
  return {[&cost](const ManifoldPoint& z) { return cost.eval(z); },
          cost.counters()};
}

TangentVector fd_gradient(const ScalarField& f, const ManifoldPoint& z, double h) {
  if (h <= 0.0 || h >= injectivity_radius(z.kind))
    throw ValidationError("fd step must be positive and below the injectivity radius");
  if (f.counters) ++f.counters->gradient_oracle_calls;
  const auto frame = tangent_frame(z);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(z.coords.size());
  for (const auto& e : frame) {
    const double fp = f.f(exp_map(z, {z, h * e.vec}));
    const double fm = f.f(exp_map(z, {z, -h * e.vec}));
    g += ((fp - fm) / (2.0 * h)) * e.vec;
  }
  return {z, g};
}

CostFunction builtin_cost(const ManifoldKind& kind, const std::string& name) {
  if (name == "circle_1_minus_z1") {
    if (kind.type != ManifoldType::CircleS1)
      throw ValidationError("cost circle_1_minus_z1 requires the circle");
    return CostFunction(kind, [](const Eigen::VectorXd& z) { return 1.0 - z[0]; },
                        name);
  }
  if (name == "sphere_1_minus_z3") {
    if (kind.type != ManifoldType::SphereS2)
      throw ValidationError("cost sphere_1_minus_z3 requires the sphere");
    return CostFunction(kind, [](const Eigen::VectorXd& z) { return 1.0 - z[2]; },
                        name);
  }
  if (name.rfind("constant:", 0) == 0) {
    const double v = std::stod(name.substr(9));
    return CostFunction(kind, [v](const Eigen::VectorXd&) { return v; }, name);
  }
  throw ValidationError("unknown cost name '" + name + "'");
}

CostFunction polynomial_cost(const ManifoldKind& kind,
                             const std::vector<PolynomialTerm>& terms,
                             std::string label) {
  const int d = kind.ambient_dim();
  for (const auto& t : terms) {
    if (static_cast<int>(t.powers.size()) != d)
      throw ValidationError("polynomial term has wrong number of powers");
    for (int p : t.powers)
      if (p < 0 || p > 16) throw ValidationError("polynomial power out of range");
  }
  return CostFunction(
      kind,
      [terms](const Eigen::VectorXd& z) {
        double sum = 0.0;
        for (const auto& t : terms) {
          double m = t.coef;
          for (size_t i = 0; i < t.powers.size(); ++i)
            for (int p = 0; p < t.powers[i]; ++p) m *= z[static_cast<int>(i)];
          sum += m;
        }
        return sum;
      },
      std::move(label));
}

}  // namespace hybridopt
