#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "latlrr/counterexample.hpp"
#include "latlrr/problems.hpp"
#include "latlrr/solver.hpp"
#include "latlrr/verify.hpp"

namespace latlrr {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "1";

// Exit codes shared by the CLI and the command layer.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCertificateFailure = 3;
inline constexpr int kExitSolverNonConvergence = 4;

struct CommandResult {
    nlohmann::json report;
    int exit_code = kExitOk;
};

// Matrices up to 64x64 are embedded as {rows, cols, data}; larger ones are
// written next to the report and referenced by relative path.
nlohmann::json matrix_to_json(const Matrix& X,
                              const std::filesystem::path& report_path,
                              const std::string& name);

nlohmann::json tolerance_to_json(const ToleranceProfile& tol);
nlohmann::json certificate_to_json(const CertificateReport& cert,
                                   const std::filesystem::path& report_path,
                                   const std::string& name);
nlohmann::json diagnostics_to_json(const SolverDiagnostics& diag);

CommandResult cmd_generate(const ProblemSpec& spec,
                           const std::filesystem::path& out_path);

CommandResult cmd_counterexample(const std::filesystem::path& matrix_path,
                                 const std::string& mode, std::uint64_t seed,
                                 const std::filesystem::path& out_path,
                                 const ToleranceProfile& tol);

CommandResult cmd_solve(const std::filesystem::path& matrix_path,
                        const std::string& problem,
                        const std::optional<std::filesystem::path>& a_path,
                        const SolverOptions& opts,
                        const std::filesystem::path& out_path,
                        const ToleranceProfile& tol);

CommandResult cmd_verify(const std::filesystem::path& matrix_path,
                         const std::filesystem::path& z_path,
                         const std::filesystem::path& l_path,
                         const std::filesystem::path& out_path,
                         const ToleranceProfile& tol);

CommandResult cmd_exhibit(const std::filesystem::path& matrix_path, int count,
                          std::uint64_t seed,
                          const std::filesystem::path& out_path,
                          const ToleranceProfile& tol);

CommandResult cmd_property_suite(std::uint64_t seed,
                                 const std::filesystem::path& out_path,
                                 const ToleranceProfile& tol, int max_dim = 60,
                                 int max_rank = 20);

void write_report(const nlohmann::json& report,
                  const std::filesystem::path& out_path);

} // namespace latlrr
