// Acceptance suite: runs every criterion at its pinned order with exact
// (zero-tolerance) comparisons and prints one pass/fail line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qmf/verify.hpp"

namespace {

struct Criterion {
    int number;
    std::string name;
    std::vector<std::string> suites;
    std::vector<std::string> check_ids; // empty = every check of the suites
    qmf::VerifyOptions opt;
    double seconds_limit;
};

bool run_criterion(const Criterion& c)
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<qmf::SuiteReport> reports;
    for (const auto& suite : c.suites) {
        auto part = qmf::run_suites(suite, c.opt);
        reports.insert(reports.end(), part.begin(), part.end());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool pass = true;
    std::string detail;
    std::size_t matched = 0;
    for (const auto& rep : reports) {
        for (const auto& check : rep.checks) {
            const bool wanted =
                c.check_ids.empty()
                || std::find(c.check_ids.begin(), c.check_ids.end(), check.id)
                       != c.check_ids.end();
            if (!wanted) {
                continue;
            }
            ++matched;
            if (!check.pass) {
                pass = false;
                if (detail.empty()) {
                    detail = check.id + ": " + check.detail;
                }
            }
        }
    }
    if (!c.check_ids.empty() && matched < c.check_ids.size()) {
        pass = false;
        detail = "missing checks in suite output";
    }
    if (secs > c.seconds_limit) {
        pass = false;
        detail = "runtime " + std::to_string(secs) + "s exceeds "
                 + std::to_string(c.seconds_limit) + "s";
    }
    std::printf("[%s] criterion %2d: %s (%.2fs, limit %.0fs)%s%s\n", pass ? "PASS" : "FAIL",
                c.number, c.name.c_str(), secs, c.seconds_limit,
                detail.empty() ? "" : " -- ", detail.c_str());
    return pass;
}

} // namespace

int main()
{
    using qmf::VerifyOptions;
    std::vector<Criterion> criteria;

    {
        VerifyOptions opt;
        opt.qorder = 20;
        criteria.push_back({1,
                            "modular identity suite at q-order 20",
                            {"theta"},
                            {"jacobi-quartic", "half-period-dual-representations",
                             "half-period-sum-zero", "half-period-difference",
                             "log-derivative-third", "log-derivative-second-theta1",
                             "log-derivative-second-theta2", "log-derivative-second-theta3",
                             "derivative-triple-product", "derivative-eta-cube"},
                            opt,
                            5.0});
    }
    {
        VerifyOptions opt;
        criteria.push_back({2,
                            "electric constants with the q^2 erratum pinned to 48",
                            {"electric"},
                            {"registry-h-q0", "registry-h-q1", "registry-h-q2",
                             "registry-V-q0", "registry-V-q1", "registry-V-q2",
                             "registry-T-q0", "registry-T-q1", "registry-T-q2",
                             "t-two-route-agreement", "t-q2-pinned"},
                            opt,
                            1.0});
    }
    {
        VerifyOptions opt;
        opt.torder = 26;
        criteria.push_back({3,
                            "Weierstrass certificate to t-order 26 and branch identity",
                            {"weierstrass"},
                            {"wp-ode-certificate", "sigma3-branch-root"},
                            opt,
                            10.0});
    }
    {
        VerifyOptions opt;
        opt.qorder = 8;
        opt.torder = 12;
        criteria.push_back({4,
                            "electric blow-up kernel identities, q-order 8 / t-order 12",
                            {"blowup"},
                            {"blowup-electric-even", "blowup-electric-odd"},
                            opt,
                            30.0});
    }
    {
        VerifyOptions opt;
        opt.torder = 10;
        criteria.push_back({5,
                            "magnetic blow-up kernel identities over Q(i), t-order 10",
                            {"blowup"},
                            {"blowup-magnetic-even", "blowup-magnetic-odd"},
                            opt,
                            30.0});
    }
    {
        VerifyOptions opt;
        opt.qorder = 20; // duplication at 20; the chain clamps to 10..12
        criteria.push_back({6,
                            "duplication formulae (q-order 20) and the elliptic chain",
                            {"theta", "elliptic"},
                            {"duplication-theta2", "duplication-half-period",
                             "duplication-theta1-theta3", "v-from-modulus", "h-as-integral",
                             "t-as-integral-ratio", "integral-theta-identity",
                             "legendre-first", "legendre-second"},
                            opt,
                            5.0});
    }
    {
        VerifyOptions opt;
        opt.qorder = 12;
        criteria.push_back({7,
                            "operator series: route agreement and compositions, order 12",
                            {"elliptic"},
                            {"ab-route-agreement", "a-composition", "b-composition"},
                            opt,
                            5.0});
    }
    {
        VerifyOptions opt;
        opt.datasets = 50;
        opt.lambda_order = 6;
        opt.d_order = 6;
        criteria.push_back({8,
                            "evaluator agreement on 50 randomized data sets + residuals",
                            {"donaldson"},
                            {"evaluator-agreement", "pde-residuals-vanish"},
                            opt,
                            60.0});
    }
    {
        VerifyOptions opt;
        criteria.push_back({9,
                            "blow-up propagation and generating-function commutation",
                            {"blowup"},
                            {"propagation-simple", "propagation-order-two",
                             "commutation-generating-function",
                             "double-blowup-consistency", "simple-type-preserved"},
                            opt,
                            60.0});
    }
    {
        VerifyOptions opt;
        opt.datasets = 2;
        criteria.push_back({10,
                            "simple-type reduction to the two-sector constant shape",
                            {"donaldson"},
                            {"simple-type-reduction", "simple-type-guard"},
                            opt,
                            1.0});
    }
    {
        VerifyOptions opt;
        criteria.push_back({11,
                            "conjectural basic-class series leading coefficients",
                            {"electric"},
                            {"conjectural-fk-leading", "conjectural-fk-parity-guard",
                             "conjectural-fk-zero"},
                            opt,
                            1.0});
    }

    int failures = 0;
    for (const auto& c : criteria) {
        if (!run_criterion(c)) {
            ++failures;
        }
    }
    if (failures == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    } else {
        std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    }
    return failures == 0 ? 0 : 1;
}
