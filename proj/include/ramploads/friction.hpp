#pragma once

#include <string>
#include <variant>

namespace ramploads {

struct Frictionless {};

/// f = k·w_ρ·w^α
struct VelocityPower {
  double k = 1.0;
  double alpha = 2.0;
};

/// f = η·N
struct Coulomb {
  double eta = 0.1;
};

/// (u, v) = μ·(u₁, v₁), with (u₁, v₁) the frictionless layer velocity.
struct VelocityScaled {
  double mu = 1.0;
};

using FrictionSpec = std::variant<Frictionless, VelocityPower, Coulomb, VelocityScaled>;

/// Throws InvalidExponent / InvalidParameter on k ≤ 0, α < 1, η ≤ 0, μ ∉ (0, 1].
void validate(const FrictionSpec& spec);

std::string describe(const FrictionSpec& spec);

}  // namespace ramploads
