#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fockcheck::numkit {

using Index = std::int32_t;

/// Exact scalar: 64-bit signed integer, every operation overflow-checked.
using Exact = std::int64_t;
using Real = double;

template <typename T>
concept Scalar = std::same_as<T, Exact> || std::same_as<T, Real>;

/// Raised when exact arithmetic would wrap. Never caught inside the library.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& where)
      : std::overflow_error("exact integer overflow in " + where +
                            "; reduce the truncation depth or the polynomial degree") {}
};

template <Scalar T>
struct Arith;

template <>
struct Arith<Exact> {
  static Exact add(Exact a, Exact b) {
    Exact r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("add");
    return r;
  }
  static Exact sub(Exact a, Exact b) {
    Exact r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("sub");
    return r;
  }
  static Exact mul(Exact a, Exact b) {
    Exact r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("mul");
    return r;
  }
  static Exact neg(Exact a) { return sub(0, a); }
};

template <>
struct Arith<Real> {
  static Real add(Real a, Real b) { return a + b; }
  static Real sub(Real a, Real b) { return a - b; }
  static Real mul(Real a, Real b) { return a * b; }
  static Real neg(Real a) { return -a; }
};

}  // namespace fockcheck::numkit
