#include "cqmod/batch.hpp"

#include <cmath>
#include <exception>

namespace cqmod {

bool parallel_available() {
#ifdef CQMOD_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

namespace {

// Runs fn(i) for i in [0, n) under the requested policy, capturing the
// first failure by element order and rethrowing it afterwards.
template <typename Fn>
void for_each_index(long n, Execution exec, Fn&& fn) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    bool failed = false;
#ifdef CQMOD_HAVE_OPENMP
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
#pragma omp atomic write
                failed = true;
            }
        }
    } else
#else
    (void)exec;
#endif
    {
        for (long i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
                failed = true;
            }
        }
    }
    if (failed)
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
}

} // namespace

std::vector<RaySolution> solve_rays(const SchwarzParams& params,
                                    const std::vector<double>& thetas, const OdeTolerance& tol,
                                    Execution exec) {
    std::vector<RaySolution> out(thetas.size());
    for_each_index(static_cast<long>(thetas.size()), exec, [&](long i) {
        const std::size_t u = static_cast<std::size_t>(i);
        out[u] = solve_ray(params, thetas[u], tol);
    });
    return out;
}

std::vector<BatchOutcome> solve_many(const std::vector<QuadrilateralSpec>& specs,
                                     const SolverConfig& config, const OdeTolerance& tol,
                                     Execution exec) {
    std::vector<BatchOutcome> out(specs.size());
    for_each_index(static_cast<long>(specs.size()), exec, [&](long i) {
        const std::size_t u = static_cast<std::size_t>(i);
        try {
            out[u].result = solve_beta(specs[u], config, tol);
        } catch (const std::exception& e) {
            out[u].error = e.what();
        }
    });
    return out;
}

std::vector<BoundarySample> boundary_samples(const SchwarzParams& params, int n_samples,
                                             const OdeTolerance& tol, Execution exec,
                                             double exclusion) {
    if (n_samples < 0) throw domain_error("boundary_samples: n_samples must be non-negative");
    std::vector<double> thetas;
    thetas.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double theta = 2.0 * M_PI * i / n_samples;
        double r = std::fmod(theta, M_PI);
        if (r < 0.0) r += M_PI;
        const double dist = std::min(std::abs(r - params.beta), std::abs(r - (M_PI - params.beta)));
        if (dist >= exclusion) thetas.push_back(theta);
    }
    const std::vector<RaySolution> rays = solve_rays(params, thetas, tol, exec);
    std::vector<BoundarySample> out(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) out[i] = {thetas[i], rays[i].f_end};
    return out;
}

} // namespace cqmod
