// Verification report and the acceptance checks.
#ifndef DUNKL_VERIFICATION_HPP
#define DUNKL_VERIFICATION_HPP

#include <cstdint>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

namespace dunkl {

struct CheckRecord {
    std::string name;
    std::string anchor;  // identity or bound being checked
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;  // residual <= tolerance
    double runtime_ms = 0.0;
    std::string detail;
};

/// Append-only collection of check records; safe for concurrent appends.
class VerificationReport {
public:
    void append(CheckRecord r);
    std::vector<CheckRecord> records() const;
    bool all_passed() const;
    std::size_t size() const;

    /// Full report including timings.
    std::string to_json(int precision = 17) const;
    /// check,residual,tolerance,passed; contains no timings, so it is
    /// byte-identical across runs with the same configuration.
    std::string to_csv(int precision = 17, const std::string& header_comment = {}) const;

private:
    mutable std::mutex mutex_;
    std::vector<CheckRecord> records_;
};

struct VerificationConfig {
    double k = 0.5;          // used by the checks that do not fix their own k values
    int N = 64;              // truncation degree for expansions of non band-limited functions
    std::uint64_t seed = 1;  // random points and the band-limited family
    int family_size = 5;     // band-limited members used by the norm certificates
};

struct Criterion {
    int id;
    std::string name;
    std::function<CheckRecord(const VerificationConfig&)> run;
};

/// The thirteen acceptance criteria in order.
const std::vector<Criterion>& acceptance_criteria();

/// Runs the selected criteria (all when `ids` is empty), appending one record
/// each and printing one PASS/FAIL line per criterion to `log` if given.
/// A check that throws is recorded as failed with the error in `detail`.
void run_acceptance(const VerificationConfig& cfg, VerificationReport& report, const std::vector<int>& ids = {},
                    std::ostream* log = nullptr);

}  // namespace dunkl

#endif
