#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "bigint.hpp"

namespace mdet {

enum class Engine { laplace, bareiss, modular_crt, structural };

constexpr const char* engine_name(Engine e) {
  switch (e) {
    case Engine::laplace: return "laplace";
    case Engine::bareiss: return "bareiss";
    case Engine::modular_crt: return "modular_crt";
    case Engine::structural: return "structural";
  }
  return "?";
}

inline std::optional<Engine> engine_from_name(std::string_view name) {
  for (Engine e : {Engine::laplace, Engine::bareiss, Engine::modular_crt, Engine::structural})
    if (name == engine_name(e)) return e;
  return std::nullopt;
}

enum class Certification { certified, probabilistic };

struct PrimeResidue {
  u64 prime = 0;
  u64 residue = 0;  // in [0, prime)
  friend bool operator==(const PrimeResidue&, const PrimeResidue&) = default;
};

// exact determinant value plus engine provenance
struct DetResult {
  Int value;
  Engine engine = Engine::bareiss;
  Certification certification = Certification::certified;
  std::vector<PrimeResidue> prime_trace;
};

// -1 for odd d, +1 for even d
inline int conjectured_value(i64 d) {
  if (d < 1) throw std::invalid_argument("conjectured_value: d must be >= 1");
  return d % 2 == 0 ? 1 : -1;
}

}  // namespace mdet
