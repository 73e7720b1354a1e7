#include "ramploads/friction.hpp"

#include <cmath>
#include <sstream>

#include "ramploads/errors.hpp"

namespace ramploads {
namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

void validate(const FrictionSpec& spec) {
  std::visit(overloaded{
                 [](const Frictionless&) {},
                 [](const VelocityPower& m) {
                   if (!(m.alpha >= 1.0) || !std::isfinite(m.alpha)) {
                     throw Error(ErrorCode::InvalidExponent, "velocity-power friction needs alpha >= 1");
                   }
                   if (!(m.k > 0.0) || !std::isfinite(m.k)) {
                     throw Error(ErrorCode::InvalidParameter, "velocity-power friction needs k > 0");
                   }
                 },
                 [](const Coulomb& m) {
                   if (!(m.eta > 0.0) || !std::isfinite(m.eta)) {
                     throw Error(ErrorCode::InvalidParameter, "Coulomb friction needs eta > 0");
                   }
                 },
                 [](const VelocityScaled& m) {
                   if (!(m.mu > 0.0 && m.mu <= 1.0)) {
                     throw Error(ErrorCode::InvalidParameter, "velocity scaling needs 0 < mu <= 1");
                   }
                 },
             },
             spec);
}

std::string describe(const FrictionSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&](const Frictionless&) { out << "frictionless"; },
                 [&](const VelocityPower& m) { out << "vpower:k=" << m.k << ",alpha=" << m.alpha; },
                 [&](const Coulomb& m) { out << "coulomb:eta=" << m.eta; },
                 [&](const VelocityScaled& m) { out << "scaled:mu=" << m.mu; },
             },
             spec);
  return out.str();
}

}  // namespace ramploads
