#pragma once

#include <stdexcept>
#include <string>

namespace cqmod {

// Machine-readable failure kinds. CLI exit codes map invalid_input-style
// codes (domain, degenerate_input) to 2 and every runtime failure to 1.
enum class errc {
    domain,             // argument outside the documented domain
    degenerate_input,   // repeated points, coincident probe coordinates, ...
    singularity,        // coefficient evaluated at one of its poles
    pole_on_ray,        // |v| vanished at the ray endpoint, f would blow up
    max_steps_exceeded, // step budget exhausted (stiffness / singular ray)
    accuracy_loss,      // a symmetry diagnostic exceeded its bound
    bracket_failure,    // seed interval does not bracket the sign change
    infeasible,         // computed parameter window is empty
    non_convergence,    // bisection ended on a boundary with a large residual
    inconsistency,      // refined solution left its seed box
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

class domain_error : public error {
  public:
    explicit domain_error(const std::string& what) : error(errc::domain, what) {}
};

class degenerate_input_error : public error {
  public:
    explicit degenerate_input_error(const std::string& what)
        : error(errc::degenerate_input, what) {}
};

class singularity_error : public error {
  public:
    explicit singularity_error(const std::string& what) : error(errc::singularity, what) {}
};

// Failures raised while integrating a ray or validating its output.
class integration_error : public error {
  public:
    integration_error(errc code, const std::string& what) : error(code, what) {}
};

// Failures of the nested bisection (bracketing, feasibility, convergence).
class solver_error : public error {
  public:
    solver_error(errc code, const std::string& what) : error(code, what) {}
};

inline bool is_invalid_input(errc code) noexcept {
    return code == errc::domain || code == errc::degenerate_input;
}

} // namespace cqmod
