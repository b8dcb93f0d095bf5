#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qmf {

struct VerifyOptions {
    int qorder = 12;
    int torder = 12;
    int lambda_order = 6;
    int d_order = 6;
    int datasets = 50;
    unsigned long seed = 0x51d0f5ULL;
    /// Override for the expected T q^2 registry value (negative control).
    std::optional<long> t2_expected;
};

struct CheckResult {
    std::string id;     // identity slug
    std::string tag;    // topic tag
    std::string orders; // orders used, e.g. "q<=20"
    bool pass = false;
    std::string detail; // first mismatching exponent or note, empty when clean
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// theta, electric, magnetic, elliptic, weierstrass, blowup, donaldson.
const std::vector<std::string>& suite_names();

/// Run one named suite ("all" runs every suite in order).
std::vector<SuiteReport> run_suites(const std::string& name, const VerifyOptions& opt);

/// Deterministic plain-text rendering, one line per check.
std::string render_reports(const std::vector<SuiteReport>& reports);

} // namespace qmf
