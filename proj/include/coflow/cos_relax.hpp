#pragma once
// Continuous relaxation of joint routing and rate allocation, written as a
// linear program. With q_i = T*b_i and p_i,l = x_i,l * q_i the relaxation is
//
//   minimize T
//   q_i >= V_i                                   (volume rows)
//   net inflow of p_i at s_i = -q_i              (source rows)
//   net inflow of p_i at d_i = +q_i              (destination rows)
//   net inflow of p_i elsewhere = 0              (conservation rows)
//   sum_i |p_i,l| <= T * B_l                     (capacity rows)
//
// Each signed p_i,l is split into p+ - p- with both parts nonnegative, and
// |p_i,l| is modelled as p+ + p-.

#include <vector>

#include "coflow/coflow.hpp"
#include "coflow/lp.hpp"
#include "coflow/network.hpp"

namespace coflow {

struct CosRelaxModel {
    lp::LinearProgram program;
    int t_var = -1;
    std::vector<int> q_var;                     // per flow
    std::vector<std::vector<int>> p_plus;       // [flow][link]
    std::vector<std::vector<int>> p_minus;      // [flow][link]
    std::size_t volume_rows = 0;
    std::size_t endpoint_rows = 0;
    std::size_t conservation_rows = 0;
    std::size_t capacity_rows = 0;
};

/// Builds the relaxation over every link of `net` using each flow's residual
/// volume. Rejects empty coflows, zero residuals and endpoints outside `net`.
CosRelaxModel build_cos_relax_cvx(const Network& net, const Coflow& coflow);

struct RelaxedSolution {
    double t = 0.0;                        // relaxed CCT lower bound T'
    std::vector<double> rate;              // b'_i = q'_i / T'
    std::vector<std::vector<double>> x;    // x'_i,l = p'_i,l / q'_i, in [-1, 1]
};

/// Inverts the substitutions. Throws coflow::Error when the LP is not
/// optimal or T' is zero.
RelaxedSolution recover_relaxed(const CosRelaxModel& model, const lp::LpSolution& solution, const Coflow& coflow);

/// How to choose among several optimal relaxed solutions.
enum class RelaxTieBreak {
    kNone,         // whatever vertex the simplex ends on
    kLightRoutes,  // re-solve with T held at its optimum, minimising
                   // sum_l w_l * sum_i |p_i,l| with w_l = B_l^cap / B_l
};

/// Relative slack on T when re-solving for the tie-break.
inline constexpr double kTieBreakSlack = 1e-7;

/// Build, solve and recover in one step. Throws Unschedulable when the
/// relaxation is infeasible (some flow has no path with bandwidth). The
/// returned t is always the optimum of the first solve; `raw` receives the
/// solution the x values were recovered from.
RelaxedSolution solve_cos_relax(const Network& net, const Coflow& coflow, lp::LpSolution* raw = nullptr,
                                RelaxTieBreak tie_break = RelaxTieBreak::kLightRoutes);

}  // namespace coflow
