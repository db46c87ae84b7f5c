#pragma once
// Central finite-difference gradient verification (float64 only).
//
// The checker never trusts the tape: it reruns the full forward pass with
// one coordinate displaced by +/-h and compares the central difference
// against the analytic gradient from a single backward pass.  Large leaves
// can be spot-checked on a random subset of coordinates; every leaf is
// always touched at least once.

#include <functional>
#include <string>
#include <vector>

#include "setplan/rng.hpp"
#include "setplan/tape.hpp"
#include "setplan/tensor.hpp"

namespace setplan::ad {

struct GradCheckReport {
  double max_err = 0;          // max over coords of |fd-an|/max(|fd|,|an|,floor)
  double floor = 1e-4;
  std::string worst;           // "name[i]" of the worst coordinate
  double worst_fd = 0, worst_an = 0;
  std::int64_t coords_checked = 0;

  bool ok(double tol) const { return max_err < tol; }
  std::string summary() const;
};

// forward builds the computation on the given tape and returns the scalar
// loss; it must read leaf values afresh on every call.
GradCheckReport finite_difference_check(
    const std::vector<Tensor<double>>& leaves,
    const std::function<Tensor<double>(Tape<double>&)>& forward,
    double h = 1e-5, double floor = 1e-4, int max_coords_per_leaf = 0,
    rng::Stream* coord_rng = nullptr);

}  // namespace setplan::ad
