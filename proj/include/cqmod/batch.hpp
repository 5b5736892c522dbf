#pragma once

#include <string>
#include <vector>

#include "cqmod/solver.hpp"

namespace cqmod {

// Execution policy for the data-parallel kernels. Parallel runs distribute
// independent elements over OpenMP threads; every element is computed by
// the same serial code either way, so results are bit-identical across
// policies (the serial path doubles as the reference implementation).
enum class Execution {
    serial,
    parallel,
};

// True when the parallel policy actually multi-threads in this build.
bool parallel_available();

// Integrates one ray per entry of thetas. Throws the first failure (by
// element order) after the batch finishes.
std::vector<RaySolution> solve_rays(const SchwarzParams& params,
                                    const std::vector<double>& thetas, const OdeTolerance& tol,
                                    Execution exec);

// Outcome of one element of a batched solve: exactly one of result/error is
// set; failures are reported per element so a batch can keep going.
struct BatchOutcome {
    std::optional<ModulusResult> result;
    std::string error;
};

std::vector<BatchOutcome> solve_many(const std::vector<QuadrilateralSpec>& specs,
                                     const SolverConfig& config, const OdeTolerance& tol,
                                     Execution exec);

struct BoundarySample {
    double theta;
    complex f;
};

// Boundary correspondence samples f(e^{i theta}) on a uniform theta grid of
// n_samples points over [0, 2 pi), skipping directions closer than
// `exclusion` to the four singular rays +-beta (mod pi).
std::vector<BoundarySample> boundary_samples(const SchwarzParams& params, int n_samples,
                                             const OdeTolerance& tol, Execution exec,
                                             double exclusion = 1e-3);

} // namespace cqmod
