#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "coflow/cos_relax.hpp"
#include "coflow/kernels.hpp"
#include "coflow/lp.hpp"
#include "coflow/oracle.hpp"

using namespace coflow;
using lp::LinearProgram;
using lp::Relation;
using lp::Status;

namespace {

struct BackendGuard {
    kernels::Backend saved = kernels::active_backend();
    ~BackendGuard() { kernels::set_backend(saved); }
};

LinearProgram beale() {
    // Cycles under the textbook largest-coefficient rule without anti-cycling.
    LinearProgram p;
    const int x4 = p.add_variable("x4", 0, lp::kInfinity, -0.75);
    const int x5 = p.add_variable("x5", 0, lp::kInfinity, 20);
    const int x6 = p.add_variable("x6", 0, lp::kInfinity, -0.5);
    const int x7 = p.add_variable("x7", 0, lp::kInfinity, 6);
    p.add_constraint("r1", {{x4, 0.25}, {x5, -8}, {x6, -1}, {x7, 9}}, Relation::kLessEqual, 0);
    p.add_constraint("r2", {{x4, 0.5}, {x5, -12}, {x6, -0.5}, {x7, 3}}, Relation::kLessEqual, 0);
    p.add_constraint("r3", {{x6, 1}}, Relation::kLessEqual, 1);
    return p;
}

LinearProgram random_lp(Rng& rng) {
    LinearProgram p;
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    std::uniform_real_distribution<double> coef(-5, 5);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int j = 0; j < n; ++j) {
        double lo = 0, hi = 10;
        switch (coin(rng)) {
            case 0: lo = -4; break;
            case 1: hi = 3; break;
            case 2: lo = 1; hi = 6; break;
            default: break;
        }
        p.add_variable("x" + std::to_string(j), lo, hi, coef(rng));
    }
    for (int r = 0; r < m; ++r) {
        std::vector<lp::Term> terms;
        for (int j = 0; j < n; ++j) {
            if (coin(rng) != 0) terms.push_back({j, std::round(coef(rng) * 4) / 4});
        }
        const Relation rel = static_cast<Relation>(std::uniform_int_distribution<int>(0, 2)(rng));
        p.add_constraint("c" + std::to_string(r), terms, rel, coef(rng) * 3);
    }
    return p;
}

}  // namespace

TEST_CASE("trivial programs") {
    LinearProgram p;
    const int x = p.add_variable("x", -lp::kInfinity, lp::kInfinity, 1);
    p.add_constraint("floor", {{x, 1}}, Relation::kGreaterEqual, 3);
    const auto s = lp::solve_lp(p);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(3));
    CHECK(s.values[0] == doctest::Approx(3));

    LinearProgram q;
    const int a = q.add_variable("a", 0, 4, -1);
    const int b = q.add_variable("b", 0, lp::kInfinity, -2);
    q.add_constraint("sum", {{a, 1}, {b, 1}}, Relation::kEqual, 5);
    const auto t = lp::solve_lp(q);
    REQUIRE(t.optimal());
    CHECK(t.objective == doctest::Approx(-10));
    CHECK(t.values[1] == doctest::Approx(5));
}

TEST_CASE("degenerate program terminates under both pricing modes") {
    const LinearProgram p = beale();
    for (bool bland : {false, true}) {
        lp::SolverOptions opt;
        opt.bland_only = bland;
        const auto s = lp::solve_lp(p, opt);
        REQUIRE(s.optimal());
        CHECK(s.objective == doctest::Approx(-1.25));
        CHECK(lp::max_violation(p, s.values) <= 1e-7);
    }
    CHECK(*oracle::vertex_enumeration(p) == doctest::Approx(-1.25));
}

TEST_CASE("infeasible and unbounded are reported") {
    LinearProgram inf;
    const int x = inf.add_variable("x", 0, lp::kInfinity, 1);
    inf.add_constraint("lo", {{x, 1}}, Relation::kGreaterEqual, 3);
    inf.add_constraint("hi", {{x, 1}}, Relation::kLessEqual, 1);
    CHECK(lp::solve_lp(inf).status == Status::kInfeasible);

    LinearProgram unb;
    const int y = unb.add_variable("y", 0, lp::kInfinity, -1);
    const int z = unb.add_variable("z", 0, lp::kInfinity, 0);
    unb.add_constraint("diff", {{y, 1}, {z, -1}}, Relation::kLessEqual, 2);
    CHECK(lp::solve_lp(unb).status == Status::kUnbounded);
    lp::SolverOptions bland;
    bland.bland_only = true;
    CHECK(lp::solve_lp(unb, bland).status == Status::kUnbounded);

    LinearProgram free_var;
    const int w = free_var.add_variable("w", -lp::kInfinity, lp::kInfinity, 1);
    free_var.add_constraint("cap", {{w, 1}}, Relation::kLessEqual, 4);
    CHECK(lp::solve_lp(free_var).status == Status::kUnbounded);
    CHECK(std::string(lp::status_name(Status::kUnbounded)) == "unbounded");
}

TEST_CASE("validation and dump") {
    LinearProgram p;
    const int x = p.add_variable("x", 0, 5, 1);
    p.add_constraint("row", {{x, 2}}, Relation::kLessEqual, 4);
    p.validate();
    const std::string d = p.dump();
    CHECK(d.find("row") != std::string::npos);
    CHECK(d.find("x") != std::string::npos);

    LinearProgram bad_index = p;
    bad_index.add_constraint("bad", {{3, 1}}, Relation::kLessEqual, 1);
    CHECK_THROWS_AS(bad_index.validate(), Error);
    LinearProgram bad_coef = p;
    bad_coef.add_constraint("nan", {{x, std::nan("")}}, Relation::kLessEqual, 1);
    CHECK_THROWS_AS(bad_coef.validate(), Error);
    LinearProgram crossed;
    crossed.add_variable("c", 3, 1);
    CHECK_THROWS_AS(crossed.validate(), Error);
}

TEST_CASE("random programs match vertex enumeration") {
    Rng rng(2718);
    int optimal = 0, infeasible = 0;
    for (int t = 0; t < 400; ++t) {
        const LinearProgram p = random_lp(rng);
        CAPTURE(t);
        const auto oracle_value = oracle::vertex_enumeration(p);
        for (bool bland : {false, true}) {
            lp::SolverOptions opt;
            opt.bland_only = bland;
            const auto s = lp::solve_lp(p, opt);
            if (!oracle_value) {
                CHECK(s.status == Status::kInfeasible);
                continue;
            }
            REQUIRE(s.optimal());
            CHECK(s.objective == doctest::Approx(*oracle_value).epsilon(1e-7).scale(1.0));
            CHECK(lp::max_violation(p, s.values) <= 1e-7);
        }
        (oracle_value ? optimal : infeasible)++;
    }
    CHECK(optimal > 100);
    CHECK(infeasible > 10);
}

TEST_CASE("solves are deterministic and backend independent") {
    const Network net = fat_tree(4, 2, 10);
    Rng rng(5);
    const Coflow cf = random_coflow(net, 6, 0.7, 1000, rng);
    const CosRelaxModel model = build_cos_relax_cvx(net, cf);
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::kScalar);
    const auto a = lp::solve_lp(model.program);
    const auto b = lp::solve_lp(model.program);
    REQUIRE(a.optimal());
    CHECK(a.values == b.values);
    CHECK(a.iterations == b.iterations);
    if (kernels::backend_supported(kernels::Backend::kAvx2)) {
        kernels::set_backend(kernels::Backend::kAvx2);
        const auto c = lp::solve_lp(model.program);
        CHECK(c.values == a.values);
        CHECK(c.objective == a.objective);
        CHECK(c.iterations == a.iterations);
    }
}
