#ifndef QUASIFORM_REPORT_HPP
#define QUASIFORM_REPORT_HPP

#include <chrono>
#include <optional>

#include "json.hpp"

#include "quasiform/errors.hpp"
#include "quasiform/script.hpp"

namespace qf::cli
{

inline constexpr const char *report_version = "1.0";

struct RunOptions {
    /// Re-run every symbolic identity behind a certificate.
    bool verify_certificates = false;
    /// Add wall-clock seconds per command; reports are then not reproducible.
    bool timings = false;
    /// Checked between commands and corpus cases.
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct RunOutcome {
    nlohmann::ordered_json report;
    /// False when a corpus expectation failed.
    bool assertions_passed = true;
};

/// Throws library errors unchanged, Timeout past the deadline.
RunOutcome run_script(const Script &script, const RunOptions &options);

/// The built-in reference cases with their stored expectations.
nlohmann::ordered_json run_corpus(const RunOptions &options, bool &all_passed);

nlohmann::ordered_json invariants_report(const QuasilinearForm &q);
nlohmann::ordered_json compare_report(const QuasilinearForm &q, const QuasilinearForm &r);
nlohmann::ordered_json ruling_report(const QuasilinearForm &q, bool verify_certificates);
nlohmann::ordered_json regular_report(const QuasilinearForm &q);
nlohmann::ordered_json splitting_report(const QuasilinearForm &q);

/// 2 input, 3 resource, 1 otherwise.
int exit_code_for(const Error &e) noexcept;

} // namespace qf::cli

#endif
