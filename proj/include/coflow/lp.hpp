#pragma once
// Linear programs in general form and a self-contained revised simplex solver.
//
//   minimize    c^T x
//   subject to  a_r^T x  {<=, =, >=}  b_r      for every constraint r
//               lower_j <= x_j <= upper_j     (either side may be infinite)

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace coflow::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInfinity;
    double cost = 0.0;
};

struct Term {
    int var = 0;
    double coef = 0.0;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;
    Relation relation = Relation::kLessEqual;
    double rhs = 0.0;
};

class LinearProgram {
  public:
    int add_variable(std::string name, double lower = 0.0, double upper = kInfinity, double cost = 0.0);
    int add_constraint(std::string name, std::vector<Term> terms, Relation relation, double rhs);
    void set_cost(int var, double cost);

    std::size_t variable_count() const { return variables_.size(); }
    std::size_t constraint_count() const { return constraints_.size(); }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const Variable& variable(int var) const { return variables_.at(static_cast<std::size_t>(var)); }

    /// Throws coflow::Error on an invalid index, non-finite coefficient or
    /// crossed bounds.
    void validate() const;

    /// One line per objective, constraint and bound, for debugging.
    std::string dump() const;

  private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kNumericalFailure };

const char* status_name(Status status);

struct LpSolution {
    Status status = Status::kNumericalFailure;
    double objective = 0.0;
    std::vector<double> values;
    std::size_t iterations = 0;

    bool optimal() const { return status == Status::kOptimal; }
};

// Tolerances live here and nowhere else.
struct SolverOptions {
    double feasibility_tolerance = 1e-7;
    double optimality_tolerance = 1e-9;
    double pivot_tolerance = 1e-9;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    std::size_t degenerate_switch = 50;
    /// 0 picks a limit from the problem size.
    std::size_t max_iterations = 0;
    /// Pivots between basis reinversions; 0 picks one from the row count.
    std::size_t refactor_interval = 0;
    /// Use Bland's rule from the first pivot.
    bool bland_only = false;
};

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options = {});

/// Largest constraint or bound violation of `x`.
double max_violation(const LinearProgram& lp, std::span<const double> x);

}  // namespace coflow::lp
