#pragma once

#include "slabqd/iteration.hpp"
#include "slabqd/problem.hpp"
#include "slabqd/sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace slabqd::cli {

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 1;
inline constexpr int exit_diverged = 2;
inline constexpr int exit_negative_flux = 3;
inline constexpr int exit_max_iterations = 4;
inline constexpr int exit_self_check_failed = 5;

/// Bad configuration or command-line input. The message starts with the
/// offending field path.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int quadrature_order = 10;
    Closure closure = Closure::dd;
    BoundarySpec boundary;
    std::vector<MaterialRegion> regions;
    std::optional<double> cell_width;
    std::vector<double> widths;
    SchemeKind scheme = SchemeKind::si;
    IterationOptions iteration;
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

/// Mesh described by a config; geometry errors surface as ConfigError.
Mesh make_mesh(const RunConfig& cfg);

int exit_code(Status status);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

struct SolveReport {
    Solution solution;
    Mesh mesh;
};

SolveReport run_solve(const RunConfig& cfg);
void write_flux_csv(std::ostream& os, const Mesh& mesh, const std::vector<double>& phi);
void write_history_csv(std::ostream& os, const IterationHistory& history);

struct ScanRequest {
    std::vector<double> c_values{0.4, 0.6, 0.9, 0.99};
    std::vector<double> sigma_t_h_values{0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
    std::vector<SchemeKind> schemes{SchemeKind::si, SchemeKind::cqd, SchemeKind::lpcqd};
    std::size_t cells = 100;
    Closure closure = Closure::dd;
    int quadrature_order = 10;
    IterationOptions iteration;
    unsigned threads = 0; // 0: hardware concurrency
};

struct ScanRow {
    double c = 0.0;
    double sigma_t_h = 0.0;
    SchemeKind scheme = SchemeKind::si;
    std::optional<double> rho_numerical;
    Status status = Status::max_iterations;
    double rho_fourier = 0.0;
    int iterations = 0;
};

/// Rows in (c, sigma_t_h, scheme) input order regardless of thread count.
std::vector<ScanRow> run_scan(const ScanRequest& req);
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

struct FourierRequest {
    double c = 0.0;
    double sigma_t_h = 1.0;
    int quadrature_order = 10;
    Closure closure = Closure::dd;
    std::size_t cells = 100;
    std::string boundary_model = "reflective";
    std::vector<SchemeKind> schemes{SchemeKind::si, SchemeKind::cqd, SchemeKind::lpcqd};
    std::size_t dense = 0; // 0: discrete slab frequencies
    bool self_check = false;
};

/// Writes the symbol table; returns the number of self-check violations
/// (always 0 unless `req.self_check`).
std::size_t write_fourier_csv(std::ostream& os, const FourierRequest& req,
                              std::ostream& diagnostics);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace slabqd::cli
