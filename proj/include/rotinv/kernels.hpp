#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "rotinv/index.hpp"

namespace rotinv {

class Functional;
class RnDerivative;

/// Execution policy for the data-parallel kernels. `Serial` is the reference
/// path the tests compare the OpenMP path against.
enum class Exec { Serial, Parallel };

/// Runs body(i) for i in [0, n). The first exception thrown by any iteration
/// is rethrown on the calling thread once the loop has finished.
template <class Body>
void parallel_for(std::ptrdiff_t n, Exec exec, Body&& body) {
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::mutex m;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

/// [psi(x_i^* x_j)] over the monomial basis.
Eigen::MatrixXcd gram_kernel(const Functional& psi, const std::vector<Index4>& basis, Exec exec);

/// [tau2(x_i^* x_j d_T)] over the monomial basis, from the coefficients of d_T.
Eigen::MatrixXcd d_matrix_kernel(const RnDerivative& D, const std::vector<Index4>& basis,
                                 Exec exec);

}  // namespace rotinv
