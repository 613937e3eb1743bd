#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace etl {

/// The four truth values of the De Morgan lattice.
///
/// The enum order Zero < Neither < Both < One is the scan order used when
/// enumerating valuations for countermodels; it is unrelated to the lattice
/// order below.
enum class TruthValue : std::uint8_t { Zero = 0, Neither = 1, Both = 2, One = 3 };

/// Lattice order: Zero <= Both <= One and Zero <= Neither <= One;
/// Both and Neither are incomparable.
constexpr bool lattice_leq(TruthValue a, TruthValue b) {
  return a == b || a == TruthValue::Zero || b == TruthValue::One;
}

constexpr TruthValue join(TruthValue a, TruthValue b) {
  if (lattice_leq(a, b)) return b;
  if (lattice_leq(b, a)) return a;
  return TruthValue::One;  // join of the incomparable pair
}

constexpr TruthValue meet(TruthValue a, TruthValue b) {
  if (lattice_leq(a, b)) return a;
  if (lattice_leq(b, a)) return b;
  return TruthValue::Zero;
}

/// Negation swaps One and Zero; Both and Neither are fixed points.
constexpr TruthValue negate(TruthValue a) {
  switch (a) {
    case TruthValue::One: return TruthValue::Zero;
    case TruthValue::Zero: return TruthValue::One;
    default: return a;
  }
}

constexpr bool designated(TruthValue a) {
  return a == TruthValue::One || a == TruthValue::Both;
}

constexpr bool antidesignated(TruthValue a) {
  return a == TruthValue::Zero || a == TruthValue::Both;
}

constexpr char to_char(TruthValue a) {
  switch (a) {
    case TruthValue::Zero: return '0';
    case TruthValue::Neither: return 'N';
    case TruthValue::Both: return 'B';
    case TruthValue::One: return '1';
  }
  return '?';
}

inline std::optional<TruthValue> truth_value_from_char(char c) {
  switch (c) {
    case '0': return TruthValue::Zero;
    case 'N': case 'n': return TruthValue::Neither;
    case 'B': case 'b': return TruthValue::Both;
    case '1': return TruthValue::One;
    default: return std::nullopt;
  }
}

/// The four valuation regimes. Classical and the two three-valued flavors
/// restrict which truth values may occur.
enum class Flavor { Classical, K3, P3, B4 };

/// Permitted values, ascending in the countermodel scan order.
inline const std::vector<TruthValue>& flavor_values(Flavor f) {
  static const std::vector<TruthValue> classical{TruthValue::Zero, TruthValue::One};
  static const std::vector<TruthValue> k3{TruthValue::Zero, TruthValue::Neither,
                                          TruthValue::One};
  static const std::vector<TruthValue> p3{TruthValue::Zero, TruthValue::Both,
                                          TruthValue::One};
  static const std::vector<TruthValue> b4{TruthValue::Zero, TruthValue::Neither,
                                          TruthValue::Both, TruthValue::One};
  switch (f) {
    case Flavor::Classical: return classical;
    case Flavor::K3: return k3;
    case Flavor::P3: return p3;
    case Flavor::B4: return b4;
  }
  return b4;
}

constexpr bool flavor_permits(Flavor f, TruthValue v) {
  switch (f) {
    case Flavor::Classical: return v == TruthValue::Zero || v == TruthValue::One;
    case Flavor::K3: return v != TruthValue::Both;
    case Flavor::P3: return v != TruthValue::Neither;
    case Flavor::B4: return true;
  }
  return true;
}

inline std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Classical: return "classical";
    case Flavor::K3: return "k3";
    case Flavor::P3: return "p3";
    case Flavor::B4: return "b4";
  }
  return "?";
}

inline std::optional<Flavor> parse_flavor(std::string name) {
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "classical") return Flavor::Classical;
  if (name == "k3") return Flavor::K3;
  if (name == "p3") return Flavor::P3;
  if (name == "b4") return Flavor::B4;
  return std::nullopt;
}

}  // namespace etl
