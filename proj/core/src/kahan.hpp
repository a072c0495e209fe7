#pragma once

namespace mixar {

// Compensated summation; the order of add() calls fixes the result bit-for-bit.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace mixar
