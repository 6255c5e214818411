#pragma once

#include <optional>

#include <doctest.h>

#include "psig/error.hpp"
#include "psig/types.hpp"

// Runs fn and reports which error code (if any) escaped.
template <typename Fn>
std::optional<psig::ErrorCode> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const psig::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define CHECK_CODE(expr, expected) CHECK(error_of([&] { (void)(expr); }) == std::optional<psig::ErrorCode>(expected))

inline double max_diff(const psig::Matrix& a, const psig::Matrix& b) { return psig::max_abs(a - b); }
