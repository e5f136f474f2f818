#include "coflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "coflow/kernels.hpp"
#include "coflow/network.hpp"

namespace coflow::lp {

int LinearProgram::add_variable(std::string name, double lower, double upper, double cost) {
    variables_.push_back(Variable{std::move(name), lower, upper, cost});
    return static_cast<int>(variables_.size() - 1);
}

int LinearProgram::add_constraint(std::string name, std::vector<Term> terms, Relation relation, double rhs) {
    constraints_.push_back(Constraint{std::move(name), std::move(terms), relation, rhs});
    return static_cast<int>(constraints_.size() - 1);
}

void LinearProgram::set_cost(int var, double cost) { variables_.at(static_cast<std::size_t>(var)).cost = cost; }

void LinearProgram::validate() const {
    for (const Variable& v : variables_) {
        if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper || v.lower == kInfinity ||
            v.upper == -kInfinity) {
            throw Error("variable '" + v.name + "' has invalid bounds");
        }
        if (!std::isfinite(v.cost)) throw Error("variable '" + v.name + "' has a non-finite cost");
    }
    for (const Constraint& c : constraints_) {
        if (!std::isfinite(c.rhs)) throw Error("constraint '" + c.name + "' has a non-finite rhs");
        for (const Term& t : c.terms) {
            if (t.var < 0 || static_cast<std::size_t>(t.var) >= variables_.size()) {
                throw Error("constraint '" + c.name + "' references unknown variable " + std::to_string(t.var));
            }
            if (!std::isfinite(t.coef)) throw Error("constraint '" + c.name + "' has a non-finite coefficient");
        }
    }
}

std::string LinearProgram::dump() const {
    std::ostringstream out;
    out.precision(17);
    auto term = [&](double coef, int var) {
        out << (coef < 0 ? " - " : " + ") << std::fabs(coef) << " " << variables_[static_cast<std::size_t>(var)].name;
    };
    out << "minimize:";
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        if (variables_[j].cost != 0.0) term(variables_[j].cost, static_cast<int>(j));
    }
    out << "\n";
    for (const Constraint& c : constraints_) {
        out << c.name << ":";
        for (const Term& t : c.terms) term(t.coef, t.var);
        switch (c.relation) {
            case Relation::kLessEqual: out << " <= "; break;
            case Relation::kEqual: out << " = "; break;
            case Relation::kGreaterEqual: out << " >= "; break;
        }
        out << c.rhs << "\n";
    }
    for (const Variable& v : variables_) out << "bound: " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
    return out.str();
}

const char* status_name(Status status) {
    switch (status) {
        case Status::kOptimal: return "optimal";
        case Status::kInfeasible: return "infeasible";
        case Status::kUnbounded: return "unbounded";
        case Status::kIterationLimit: return "iteration_limit";
        case Status::kNumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
    double worst = 0.0;
    for (std::size_t j = 0; j < lp.variable_count(); ++j) {
        const Variable& v = lp.variables()[j];
        worst = std::max({worst, v.lower - x[j], x[j] - v.upper});
    }
    for (const Constraint& c : lp.constraints()) {
        double activity = 0.0;
        for (const Term& t : c.terms) activity += t.coef * x[static_cast<std::size_t>(t.var)];
        switch (c.relation) {
            case Relation::kLessEqual: worst = std::max(worst, activity - c.rhs); break;
            case Relation::kGreaterEqual: worst = std::max(worst, c.rhs - activity); break;
            case Relation::kEqual: worst = std::max(worst, std::fabs(activity - c.rhs)); break;
        }
    }
    return worst;
}

namespace {

enum class State : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

struct Entry {
    int row;
    double coef;
};

enum class Outcome { kOptimal, kUnbounded, kIterationLimit, kSingular };

// Bounded-variable revised simplex with an explicit dense basis inverse
// (column-major, binv_[c * m + r] = row r, column c).
class Simplex {
  public:
    Simplex(const LinearProgram& lp, const SolverOptions& options) : opt_(options) {
        lp.validate();
        m_ = lp.constraint_count();
        n_struct_ = lp.variable_count();
        for (const Variable& v : lp.variables()) {
            add_column(v.lower, v.upper, v.cost);
            x_.back() = initial_value(v.lower, v.upper);
            state_.back() = initial_state(v.lower, v.upper);
        }
        rhs_.resize(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            const Constraint& c = lp.constraints()[r];
            rhs_[r] = c.rhs;
            for (const Term& t : c.terms) {
                if (t.coef != 0.0) cols_[static_cast<std::size_t>(t.var)].push_back({static_cast<int>(r), t.coef});
            }
        }
        // Residual of each row with every structural variable at its starting bound.
        std::vector<double> residual = rhs_;
        for (std::size_t j = 0; j < n_struct_; ++j) {
            if (x_[j] == 0.0) continue;
            for (const Entry& e : cols_[j]) residual[static_cast<std::size_t>(e.row)] -= e.coef * x_[j];
        }
        basis_.assign(m_, -1);
        binv_.assign(m_ * m_, 0.0);
        for (std::size_t r = 0; r < m_; ++r) {
            const Relation rel = lp.constraints()[r].relation;
            double slack_coef = 0.0;
            if (rel == Relation::kLessEqual) slack_coef = 1.0;
            if (rel == Relation::kGreaterEqual) slack_coef = -1.0;
            int basic = -1;
            double coef = 1.0;
            if (slack_coef != 0.0) {
                const int s = add_column(0.0, kInfinity, 0.0);
                cols_[static_cast<std::size_t>(s)].push_back({static_cast<int>(r), slack_coef});
                const double value = residual[r] / slack_coef;
                if (value >= 0.0) {
                    basic = s;
                    coef = slack_coef;
                    x_[static_cast<std::size_t>(s)] = value;
                }
            }
            if (basic < 0) {
                coef = residual[r] >= 0.0 ? 1.0 : -1.0;
                basic = add_column(0.0, kInfinity, 0.0);
                cols_[static_cast<std::size_t>(basic)].push_back({static_cast<int>(r), coef});
                x_[static_cast<std::size_t>(basic)] = std::fabs(residual[r]);
                artificials_.push_back(basic);
            }
            basis_[r] = basic;
            state_[static_cast<std::size_t>(basic)] = State::kBasic;
            binv_[r * m_ + r] = 1.0 / coef;
        }
        y_.assign(m_, 0.0);
        max_iterations_ = opt_.max_iterations ? opt_.max_iterations : 50 * (m_ + cols_.size()) + 1000;
        refactor_interval_ = opt_.refactor_interval ? opt_.refactor_interval : std::max<std::size_t>(100, m_);
    }

    LpSolution run() {
        LpSolution sol;
        if (!artificials_.empty()) {
            for (int a : artificials_) cost_[static_cast<std::size_t>(a)] = 1.0;
            compute_duals();
            const Outcome phase1 = iterate();
            if (phase1 == Outcome::kIterationLimit || phase1 == Outcome::kSingular) {
                return finish(sol, phase1 == Outcome::kSingular ? Status::kNumericalFailure : Status::kIterationLimit);
            }
            double infeasibility = 0.0;
            for (int a : artificials_) infeasibility = std::max(infeasibility, x_[static_cast<std::size_t>(a)]);
            if (infeasibility > opt_.feasibility_tolerance) return finish(sol, Status::kInfeasible);
            for (int a : artificials_) {
                cost_[static_cast<std::size_t>(a)] = 0.0;
                upper_[static_cast<std::size_t>(a)] = 0.0;
                if (state_[static_cast<std::size_t>(a)] != State::kBasic) x_[static_cast<std::size_t>(a)] = 0.0;
            }
        }
        for (std::size_t j = 0; j < n_struct_; ++j) cost_[j] = phase2_cost_[j];
        compute_duals();
        switch (iterate()) {
            case Outcome::kOptimal: return finish(sol, Status::kOptimal);
            case Outcome::kUnbounded: return finish(sol, Status::kUnbounded);
            case Outcome::kIterationLimit: return finish(sol, Status::kIterationLimit);
            case Outcome::kSingular: return finish(sol, Status::kNumericalFailure);
        }
        return finish(sol, Status::kNumericalFailure);
    }

  private:
    static double initial_value(double lower, double upper) {
        if (std::isfinite(lower)) return lower;
        if (std::isfinite(upper)) return upper;
        return 0.0;
    }
    static State initial_state(double lower, double upper) {
        if (std::isfinite(lower)) return State::kAtLower;
        if (std::isfinite(upper)) return State::kAtUpper;
        return State::kFree;
    }

    int add_column(double lower, double upper, double cost) {
        cols_.emplace_back();
        lower_.push_back(lower);
        upper_.push_back(upper);
        phase2_cost_.push_back(cost);
        cost_.push_back(0.0);
        x_.push_back(0.0);
        state_.push_back(State::kAtLower);
        return static_cast<int>(cols_.size() - 1);
    }

    std::span<double> binv_col(std::size_t c) { return {binv_.data() + c * m_, m_}; }

    void compute_duals() {
        std::vector<double> cb(m_);
        for (std::size_t r = 0; r < m_; ++r) cb[r] = cost_[static_cast<std::size_t>(basis_[r])];
        for (std::size_t c = 0; c < m_; ++c) y_[c] = kernels::dot(cb, binv_col(c));
    }

    void compute_basic_values() {
        std::vector<double> residual = rhs_;
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            if (state_[j] == State::kBasic || x_[j] == 0.0) continue;
            for (const Entry& e : cols_[j]) residual[static_cast<std::size_t>(e.row)] -= e.coef * x_[j];
        }
        std::vector<double> xb(m_, 0.0);
        for (std::size_t c = 0; c < m_; ++c) {
            if (residual[c] != 0.0) kernels::axpy_sub(-residual[c], binv_col(c), xb);
        }
        for (std::size_t r = 0; r < m_; ++r) x_[static_cast<std::size_t>(basis_[r])] = xb[r];
    }

    // Gauss-Jordan inversion of the current basis with partial pivoting.
    bool refactor() {
        std::vector<double> mat(m_ * m_, 0.0);  // row-major basis matrix
        std::vector<double> inv(m_ * m_, 0.0);  // row-major accumulated row operations
        for (std::size_t k = 0; k < m_; ++k) {
            for (const Entry& e : cols_[static_cast<std::size_t>(basis_[k])]) {
                mat[static_cast<std::size_t>(e.row) * m_ + k] = e.coef;
            }
            inv[k * m_ + k] = 1.0;
        }
        std::vector<char> used(m_, 0);
        std::vector<std::size_t> pivot_row(m_);
        for (std::size_t k = 0; k < m_; ++k) {
            std::size_t p = m_;
            double best = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double v = std::fabs(mat[i * m_ + k]);
                if (!used[i] && v > best) {
                    best = v;
                    p = i;
                }
            }
            if (p == m_ || best < 1e-11) return false;
            used[p] = 1;
            pivot_row[k] = p;
            const double inv_piv = 1.0 / mat[p * m_ + k];
            std::span<double> mrow(mat.data() + p * m_ + k, m_ - k);
            std::span<double> irow(inv.data() + p * m_, m_);
            kernels::scale(inv_piv, mrow);
            kernels::scale(inv_piv, irow);
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == p) continue;
                const double f = mat[i * m_ + k];
                if (f == 0.0) continue;
                kernels::axpy_sub(f, mrow, std::span<double>(mat.data() + i * m_ + k, m_ - k));
                kernels::axpy_sub(f, irow, std::span<double>(inv.data() + i * m_, m_));
            }
        }
        for (std::size_t k = 0; k < m_; ++k) {
            const double* src = inv.data() + pivot_row[k] * m_;
            for (std::size_t c = 0; c < m_; ++c) binv_[c * m_ + k] = src[c];
        }
        compute_basic_values();
        compute_duals();
        return true;
    }

    Outcome iterate() {
        std::vector<double> alpha(m_), row(m_);
        std::size_t since_refactor = 0;
        std::size_t degenerate_run = 0;
        bool bland = opt_.bland_only;
        const double dtol = opt_.optimality_tolerance;
        const double ptol = opt_.pivot_tolerance;
        const double ftol = opt_.feasibility_tolerance;

        while (true) {
            if (iterations_ >= max_iterations_) return Outcome::kIterationLimit;
            if (since_refactor >= refactor_interval_) {
                if (!refactor()) return Outcome::kSingular;
                since_refactor = 0;
            }

            // Pricing.
            int q = -1;
            double dq = 0.0;
            double best = 0.0;
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                const State s = state_[j];
                if (s == State::kBasic || lower_[j] == upper_[j]) continue;
                double d = cost_[j];
                for (const Entry& e : cols_[j]) d -= y_[static_cast<std::size_t>(e.row)] * e.coef;
                const bool eligible = (s == State::kAtLower && d < -dtol) || (s == State::kAtUpper && d > dtol) ||
                                      (s == State::kFree && std::fabs(d) > dtol);
                if (!eligible) continue;
                if (bland) {
                    q = static_cast<int>(j);
                    dq = d;
                    break;
                }
                if (std::fabs(d) > best) {
                    best = std::fabs(d);
                    q = static_cast<int>(j);
                    dq = d;
                }
            }
            if (q < 0) {
                if (since_refactor > 0) {
                    if (!refactor()) return Outcome::kSingular;
                    since_refactor = 0;
                    continue;
                }
                return Outcome::kOptimal;
            }
            const auto qi = static_cast<std::size_t>(q);
            const double dir = dq < 0.0 ? 1.0 : -1.0;

            std::fill(alpha.begin(), alpha.end(), 0.0);
            for (const Entry& e : cols_[qi]) kernels::axpy_sub(-e.coef, binv_col(static_cast<std::size_t>(e.row)), alpha);

            // Ratio test: Harris two-pass normally, textbook min-ratio with
            // smallest-index ties under Bland's rule.
            auto limit = [&](std::size_t r, double slack) {
                const double delta = -dir * alpha[r];
                const auto b = static_cast<std::size_t>(basis_[r]);
                if (delta < 0.0 && std::isfinite(lower_[b])) return (x_[b] - lower_[b] + slack) / -delta;
                if (delta > 0.0 && std::isfinite(upper_[b])) return (upper_[b] - x_[b] + slack) / delta;
                return kInfinity;
            };
            std::ptrdiff_t leave = -1;
            double theta = kInfinity;
            if (!bland) {
                double theta_max = kInfinity;
                for (std::size_t r = 0; r < m_; ++r) {
                    if (std::fabs(alpha[r]) > ptol) theta_max = std::min(theta_max, limit(r, ftol));
                }
                double best_pivot = 0.0;
                for (std::size_t r = 0; r < m_; ++r) {
                    if (std::fabs(alpha[r]) <= ptol) continue;
                    const double t = limit(r, 0.0);
                    if (t == kInfinity) continue;
                    if (t <= theta_max && std::fabs(alpha[r]) > best_pivot) {
                        best_pivot = std::fabs(alpha[r]);
                        leave = static_cast<std::ptrdiff_t>(r);
                        theta = std::max(0.0, t);
                    }
                }
            } else {
                for (std::size_t r = 0; r < m_; ++r) {
                    if (std::fabs(alpha[r]) <= ptol) continue;
                    const double t = std::max(0.0, limit(r, 0.0));
                    if (t == kInfinity) continue;
                    if (leave < 0 || t < theta - 1e-12 * (1.0 + theta)) {
                        leave = static_cast<std::ptrdiff_t>(r);
                        theta = t;
                    } else if (t <= theta + 1e-12 * (1.0 + theta) &&
                               basis_[r] < basis_[static_cast<std::size_t>(leave)]) {
                        leave = static_cast<std::ptrdiff_t>(r);
                        theta = std::min(theta, t);
                    }
                }
            }
            const double span_q = upper_[qi] - lower_[qi];
            if (leave < 0 && !std::isfinite(span_q)) return Outcome::kUnbounded;

            ++iterations_;
            if (std::isfinite(span_q) && span_q <= theta) {
                // Bound flip: the entering variable crosses to its other bound.
                for (std::size_t r = 0; r < m_; ++r) x_[static_cast<std::size_t>(basis_[r])] -= dir * span_q * alpha[r];
                const bool to_upper = dir > 0.0;
                x_[qi] = to_upper ? upper_[qi] : lower_[qi];
                state_[qi] = to_upper ? State::kAtUpper : State::kAtLower;
                degenerate_run = 0;
                bland = opt_.bland_only;
                continue;
            }

            const auto lr = static_cast<std::size_t>(leave);
            for (std::size_t r = 0; r < m_; ++r) x_[static_cast<std::size_t>(basis_[r])] -= dir * theta * alpha[r];
            const double entering_value = x_[qi] + dir * theta;
            const auto out = static_cast<std::size_t>(basis_[lr]);
            const bool out_to_lower = -dir * alpha[lr] < 0.0;
            x_[out] = out_to_lower ? lower_[out] : upper_[out];
            state_[out] = out_to_lower ? State::kAtLower : State::kAtUpper;
            x_[qi] = entering_value;
            state_[qi] = State::kBasic;
            basis_[lr] = q;

            const double pivot = alpha[lr];
            for (std::size_t c = 0; c < m_; ++c) row[c] = binv_[c * m_ + lr];
            kernels::axpy_sub(-dq / pivot, row, y_);
            for (std::size_t c = 0; c < m_; ++c) {
                if (row[c] == 0.0) continue;
                const double v = row[c] / pivot;
                std::span<double> col = binv_col(c);
                kernels::axpy_sub(v, alpha, col);
                col[lr] = v;
            }
            ++since_refactor;

            if (theta <= 1e-12) {
                if (++degenerate_run >= opt_.degenerate_switch) bland = true;
            } else {
                degenerate_run = 0;
                bland = opt_.bland_only;
            }
        }
    }

    LpSolution& finish(LpSolution& sol, Status status) {
        sol.status = status;
        sol.iterations = iterations_;
        sol.values.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_struct_));
        sol.objective = 0.0;
        for (std::size_t j = 0; j < n_struct_; ++j) sol.objective += phase2_cost_[j] * sol.values[j];
        return sol;
    }

    SolverOptions opt_;
    std::size_t m_ = 0;
    std::size_t n_struct_ = 0;
    std::vector<std::vector<Entry>> cols_;
    std::vector<double> lower_, upper_, phase2_cost_, cost_, x_, rhs_, y_, binv_;
    std::vector<State> state_;
    std::vector<int> basis_;
    std::vector<int> artificials_;
    std::size_t iterations_ = 0;
    std::size_t max_iterations_ = 0;
    std::size_t refactor_interval_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& options) {
    if (lp.constraint_count() == 0) {
        // Every variable sits at its cheapest bound.
        lp.validate();
        LpSolution sol;
        sol.status = Status::kOptimal;
        for (const Variable& v : lp.variables()) {
            double x = 0.0;
            if (v.cost > 0.0) x = v.lower;
            else if (v.cost < 0.0) x = v.upper;
            else x = std::isfinite(v.lower) ? v.lower : (std::isfinite(v.upper) ? v.upper : 0.0);
            if (!std::isfinite(x)) {
                sol.status = Status::kUnbounded;
                x = 0.0;
            }
            sol.values.push_back(x);
            sol.objective += v.cost * x;
        }
        return sol;
    }
    Simplex simplex(lp, options);
    return simplex.run();
}

}  // namespace coflow::lp
