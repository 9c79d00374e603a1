#include "superlap/heat.hpp"

#include <cmath>

#include "superlap/errors.hpp"
#include "superlap/spectral.hpp"

namespace superlap {

std::string to_string(TimeScheme scheme) {
  return scheme == TimeScheme::implicit_euler ? "implicit-euler" : "crank-nicolson";
}

TimeScheme parse_time_scheme(const std::string& text) {
  if (text == "implicit-euler") return TimeScheme::implicit_euler;
  if (text == "crank-nicolson") return TimeScheme::crank_nicolson;
  throw ConfigError("unknown scheme '" + text + "' (expected implicit-euler|crank-nicolson)");
}

HeatStepper::HeatStepper(const AssembledSystem& sys, double dt, TimeScheme scheme)
    : HeatStepper(sys, interior_operator(sys), dt, scheme) {}

HeatStepper::HeatStepper(const AssembledSystem& sys, ReducedOperator reduced, double dt,
                         TimeScheme scheme)
    : reduced_(std::move(reduced)),
      mass_(interior_mass(sys)),
      omega_length_(sys.mesh.omega().length()),
      dt_(dt),
      scheme_(scheme) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("heat: dt must be positive");
  ones_mass_ = mass_ * Eigen::VectorXd::Ones(mass_.rows());
  const double theta = scheme == TimeScheme::implicit_euler ? 1.0 : 0.5;
  lhs_.compute(mass_ + theta * dt * reduced_.op);
  if (lhs_.info() != Eigen::Success)
    throw SingularityError("heat: factorization of M + theta dt A failed");
  rhs_ = mass_ - (1.0 - theta) * dt * reduced_.op;
}

Eigen::VectorXd HeatStepper::step(const Eigen::VectorXd& u) const {
  if (u.size() != mass_.rows()) throw DomainError("heat step: interior vector has the wrong size");
  return lhs_.solve(rhs_ * u);
}

double HeatStepper::total_mass(const Eigen::VectorXd& u) const { return ones_mass_.dot(u); }

double HeatStepper::energy(const Eigen::VectorXd& u) const { return 0.5 * u.dot(reduced_.op * u); }

double HeatStepper::deviation(const Eigen::VectorXd& u) const {
  const Eigen::VectorXd d = u.array() - total_mass(u) / omega_length_;
  return d.dot(mass_ * d);
}

HeatTrace evolve(const HeatStepper& stepper, const Eigen::VectorXd& u0, double t_end) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("heat: T_end must be positive");
  const auto steps = static_cast<long>(std::llround(t_end / stepper.dt()));
  if (steps < 1) throw DomainError("heat: T_end is shorter than one step");
  HeatTrace trace;
  const auto record = [&](long n, const Eigen::VectorXd& u) {
    trace.times.push_back(static_cast<double>(n) * stepper.dt());
    trace.mass.push_back(stepper.total_mass(u));
    trace.energy.push_back(stepper.energy(u));
    trace.deviation.push_back(stepper.deviation(u));
  };
  Eigen::VectorXd u = u0;
  record(0, u);
  for (long n = 1; n <= steps; ++n) {
    u = stepper.step(u);
    record(n, u);
  }
  trace.final_interior = u;
  trace.final_field = stepper.reduced().full_field(u);
  return trace;
}

HeatTrace evolve(const AssembledSystem& sys, const Eigen::VectorXd& u0, double dt, double t_end,
                 TimeScheme scheme) {
  return evolve(HeatStepper(sys, dt, scheme), u0, t_end);
}

}  // namespace superlap
