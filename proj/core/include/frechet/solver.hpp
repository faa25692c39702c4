#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frechet/problem.hpp"

namespace frechet {

// Step-acceptance parameters of one orbit pass.
//
// eps is the residual scale of the acceptance test |g(u)-g(x)-t ybar|_k <
// eps t (image units).  step_cap bounds the dimensionless step fractions t;
// make() couples step_cap = eps as in the source construction, make_scaled()
// decouples them so the pass takes O(1/step_cap) steps at every target
// scale.  mu sits at the midpoint of the admissible interval
// (sigma, sigma/(1-step_cap)).
struct StepParams {
    double eps;      // residual scale, in (0, |ybar|_k)
    double step_cap; // t < step_cap, in (0,1)
    double sigma;    // Pi-ball scale; 1 in the kornerstone reduction
    double mu;       // mu > sigma > (1-step_cap) mu
    int k;           // graded residual level

    static StepParams make(double eps, int k, double sigma = 1.0);
    static StepParams make_scaled(double eps, double step_cap, int k, double sigma = 1.0);
};

struct OrbitStepRecord {
    double t;
    double step_norm; // ||x_{i+1}-x_i||_{X_s}
    double residual;  // |g(x_{i+1}) - p_i ybar|_k, certified < eps p_i
    int backtracks;
};

struct OrbitTrace {
    std::vector<OrbitStepRecord> steps;
    double p = 0.0; // accumulated sum of accepted t_i, lands in (1-eps, 1)
    double eps = 0.0;
    int k = 0;
    double ybar_k = 0.0;           // |ybar|_k
    double final_residual = 0.0;   // |g(x_hat) - ybar|_k, certified < eps(1+|ybar|_k)
    double ball_certificate = 0.0; // s_norm(x_hat - x0, s), certified <= sigma
    double orbit_length = 0.0;     // sum ||x_{i+1}-x_i||_{X_s}, certified < mu
    bool accepted = true;          // solve(): whether the outer loop kept this pass
};

enum class SolveStatus { converged, step_failure, max_iterations, left_domain };

std::string to_string(SolveStatus s);

struct OrbitResult {
    SolveStatus status = SolveStatus::converged;
    Point x;
    OrbitTrace trace;
};

// Working data of one orbit pass: the shifted map g = f(x0 + .) - f(x0) is
// represented implicitly through the cached f(x0).
struct OrbitState {
    Point x;        // current ambient iterate x0 + displacement
    double p = 0.0; // sum of accepted t_i, strictly increasing
    Point f_base;   // f at the orbit base; set on the first step if empty
    OrbitTrace trace;
};

// Acceptance test of the orbit: t in (||u-x||_{X_s}/mu, step_cap) and
// |g(u) - g(x) - t ybar|_k < eps t, with the residual measured in the
// reindexed image seminorms.
bool accept_step(const TameProblem& problem, const LevelVector& s, const StepParams& params,
                 const Point& x, const Point& u, double t, const Point& ybar);

struct OrbitStepResult {
    SolveStatus status = SolveStatus::converged;
    OrbitState state;
};

// One accepted orbit move: h = right_inverse(x, ybar), t backtracked by
// halving (cap 60).  Candidate steps leaving U are rejected.
OrbitStepResult orbit_step(const TameProblem& problem, const LevelVector& s,
                           const StepParams& params, OrbitState state, const Point& ybar);

// Full Proposition-4 pass from x0 toward ybar: iterates orbit_step until the
// partial sum lands in (1-eps, 1), then certifies
//   |f(x_hat) - f(x0) - ybar|_k   <  eps (1 + |ybar|_k),
//   s_norm(x_hat - x0, s)        <=  sigma,
//   orbit length                  <  mu.
// A violated certificate surfaces as step_failure with the measured values
// in the trace.  The slice profile defaults to tame_profile(ybar).
OrbitResult run_orbit(const TameProblem& problem, const Point& x0, const Point& ybar,
                      const StepParams& params, const LevelVector* slice = nullptr);

// Single pass in the Banach slice (X_s, ||.||_s) with sigma = 1: returns
// x_hat in x0 + Pi_s(X) with |f(x_hat) - y|_k < eps1.
OrbitResult pi_solve(const TameProblem& problem, const Point& x0, const Point& y,
                     const LevelVector& s, double eps1, int k);

struct SolveOptions {
    double eps0 = 0.1;       // initial relative residual scale, halved each restart
    int k0 = 0;
    int max_outer = 200;
    double graded_tol = 0.0; // optional: additionally require |f(x)-y|_N <= graded_tol
    // optional per-level residual targets ||f(x)-y||_n <= profile[n]; the
    // right gate when the target's seminorm profile spans many scales
    std::vector<double> graded_tol_profile;
    bool keep_traces = true;
};

struct SolveReport {
    SolveStatus status = SolveStatus::max_iterations;
    Point solution;
    double residual_rho = 0.0;           // rho(f(x_hat), y) in the base image metric
    std::vector<double> residual_graded; // per-level ||f(x_hat)-y||_n
    std::vector<OrbitTrace> orbit_traces;
    int outer_iterations = 0;
    // linear-rate openness certificate (measured)
    double rho_prime_initial = 0.0; // rho'(f(x0), y) in the reindexed image metric
    double rho_moved = 0.0;         // rho_X(x0, x_hat)
    bool radius_ok = true;          // rho'(f(x0), y) < m_U(x0) held at entry
    double m_U_x0 = 0.0;
    double tol = 0.0;

    nlohmann::json to_json(bool with_traces) const;
};

// Outer refinement loop around run_orbit: v = y - f(x_cur), one certified
// pass toward v at level k, restart with halved eps and k raised by the
// schedule, until rho(f(x_cur), y) <= tol.  A pass that does not decrease
// the residual is discarded; either way the next pass runs finer.
SolveReport solve(const TameProblem& problem, const Point& y, const Point& x0, double tol,
                  const SolveOptions& opts = {});

} // namespace frechet
