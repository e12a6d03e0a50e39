#include "wlab/special.hpp"

#include "wlab/errors.hpp"

namespace wlab {

double laguerre(int n, double x) {
  if (n < 0) throw DomainError("laguerre: order must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;        // L_0
  double cur = 1.0 - x;     // L_1
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite(int n, double x) {
  if (n < 0) throw DomainError("hermite: order must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;        // H_0
  double cur = 2.0 * x;     // H_1
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace wlab
