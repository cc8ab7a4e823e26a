#include "slabqd/cli.hpp"

#include "slabqd/errors.hpp"
#include "slabqd/fourier.hpp"
#include "slabqd/quadrature.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace slabqd::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) {
            config_fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        config_fail(path.empty() ? key : path + "." + key, "required field is missing");
    }
    return *it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        config_fail(path, "expected a number");
    }
    return v.get<double>();
}

int as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) {
        config_fail(path, "expected an integer");
    }
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) {
        config_fail(path, "expected a string");
    }
    return v.get<std::string>();
}

template <typename Parse>
auto parse_enum(const json& v, const std::string& path, Parse parse) {
    try {
        return parse(as_string(v, path));
    } catch (const std::invalid_argument& e) {
        config_fail(path, e.what());
    }
}

template <typename T>
std::vector<T> split_list(const std::vector<std::string>& items, T (*parse)(std::string_view),
                          const char* option) {
    std::vector<T> out;
    for (const auto& s : items) {
        try {
            out.push_back(parse(s));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string(option) + ": " + e.what());
        }
    }
    return out;
}

void write_or_throw(const std::filesystem::path& path, const auto& writer) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    writer(os);
    if (!os) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    }
}

} // namespace

RunConfig parse_run_config(const json& doc) {
    if (!doc.is_object()) {
        config_fail("<root>", "expected a JSON object");
    }
    reject_unknown_keys(doc, "",
                        {"quadrature_order", "closure", "boundary", "regions", "cell_width",
                         "widths", "scheme", "tolerance", "max_iterations", "lp_alpha"});

    RunConfig cfg;
    if (doc.contains("quadrature_order")) {
        cfg.quadrature_order = as_integer(doc["quadrature_order"], "quadrature_order");
        const int n = cfg.quadrature_order;
        if (n < 2 || n > 64 || n % 2 != 0) {
            config_fail("quadrature_order", "must be even and in [2, 64]");
        }
    }
    if (doc.contains("closure")) {
        cfg.closure = parse_enum(doc["closure"], "closure", parse_closure);
    }

    const json& boundary = require(doc, "boundary", "");
    if (!boundary.is_object()) {
        config_fail("boundary", "expected an object");
    }
    reject_unknown_keys(boundary, "boundary", {"left", "right"});
    cfg.boundary.left =
        parse_enum(require(boundary, "left", "boundary"), "boundary.left", parse_boundary_kind);
    cfg.boundary.right =
        parse_enum(require(boundary, "right", "boundary"), "boundary.right", parse_boundary_kind);

    const json& regions = require(doc, "regions", "");
    if (!regions.is_array() || regions.empty()) {
        config_fail("regions", "expected a non-empty array");
    }
    for (std::size_t r = 0; r < regions.size(); ++r) {
        const std::string path = "regions[" + std::to_string(r) + "]";
        const json& reg = regions[r];
        if (!reg.is_object()) {
            config_fail(path, "expected an object");
        }
        reject_unknown_keys(reg, path, {"width", "sigma_t", "sigma_s", "q"});
        MaterialRegion m;
        m.width = as_number(require(reg, "width", path), path + ".width");
        m.sigma_t = as_number(require(reg, "sigma_t", path), path + ".sigma_t");
        m.sigma_s = as_number(require(reg, "sigma_s", path), path + ".sigma_s");
        m.q = as_number(require(reg, "q", path), path + ".q");
        if (!(m.width > 0.0)) {
            config_fail(path + ".width", "must be positive");
        }
        if (m.sigma_t < 0.0 || m.sigma_s < 0.0 || m.q < 0.0) {
            config_fail(path, "cross sections and source must be non-negative");
        }
        if (m.sigma_s > m.sigma_t) {
            config_fail(path, "sigma_s exceeds sigma_t");
        }
        cfg.regions.push_back(m);
    }

    const bool has_width = doc.contains("cell_width");
    const bool has_widths = doc.contains("widths");
    if (has_width == has_widths) {
        config_fail("cell_width", "exactly one of cell_width or widths must be given");
    }
    if (has_width) {
        cfg.cell_width = as_number(doc["cell_width"], "cell_width");
        if (!(*cfg.cell_width > 0.0)) {
            config_fail("cell_width", "must be positive");
        }
    } else {
        const json& widths = doc["widths"];
        if (!widths.is_array() || widths.empty()) {
            config_fail("widths", "expected a non-empty array");
        }
        for (std::size_t j = 0; j < widths.size(); ++j) {
            const std::string path = "widths[" + std::to_string(j) + "]";
            const double w = as_number(widths[j], path);
            if (!(w > 0.0)) {
                config_fail(path, "must be positive");
            }
            cfg.widths.push_back(w);
        }
    }

    if (doc.contains("scheme")) {
        cfg.scheme = parse_enum(doc["scheme"], "scheme", parse_scheme);
    }
    if (doc.contains("tolerance")) {
        cfg.iteration.tolerance = as_number(doc["tolerance"], "tolerance");
        if (!(cfg.iteration.tolerance > 0.0)) {
            config_fail("tolerance", "must be positive");
        }
    }
    if (doc.contains("max_iterations")) {
        cfg.iteration.max_iterations = as_integer(doc["max_iterations"], "max_iterations");
        if (cfg.iteration.max_iterations < 1) {
            config_fail("max_iterations", "must be at least 1");
        }
    }
    if (doc.contains("lp_alpha")) {
        cfg.iteration.lp_boundary_alpha = as_number(doc["lp_alpha"], "lp_alpha");
        if (!(cfg.iteration.lp_boundary_alpha >= 0.0 && cfg.iteration.lp_boundary_alpha <= 1.0)) {
            config_fail("lp_alpha", "must lie in [0, 1]");
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw ConfigError(path.string() + ": cannot open config file");
    }
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_run_config(doc);
}

Mesh make_mesh(const RunConfig& cfg) {
    try {
        if (cfg.cell_width) {
            return build_mesh(cfg.regions, cfg.boundary, *cfg.cell_width);
        }
        return build_mesh_nonuniform(cfg.regions, cfg.boundary, cfg.widths);
    } catch (const std::invalid_argument& e) {
        // AlignmentError and MaterialError name the region themselves.
        throw ConfigError(std::string("regions: ") + e.what());
    }
}

int exit_code(Status status) {
    switch (status) {
    case Status::converged:
        return exit_ok;
    case Status::diverged:
        return exit_diverged;
    case Status::negative_flux_abort:
        return exit_negative_flux;
    case Status::max_iterations:
        return exit_max_iterations;
    }
    return exit_config_error;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0.0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

SolveReport run_solve(const RunConfig& cfg) {
    Mesh mesh = make_mesh(cfg);
    if (cfg.scheme == SchemeKind::lpcqd && mesh.cells() < 2) {
        throw ConfigError("scheme: lpcqd needs at least two cells");
    }
    const QuadratureSet quad = gauss_legendre(cfg.quadrature_order);
    Solution sol = solve(cfg.scheme, mesh, quad, cfg.closure, cfg.iteration);
    return {std::move(sol), std::move(mesh)};
}

void write_flux_csv(std::ostream& os, const Mesh& mesh, const std::vector<double>& phi) {
    os << "x_center,phi\n";
    for (std::size_t j = 0; j < phi.size(); ++j) {
        os << format_double(mesh.center(j)) << ',' << format_double(phi[j]) << '\n';
    }
}

void write_history_csv(std::ostream& os, const IterationHistory& history) {
    os << "iter,diff_norm,rho_estimate\n";
    for (std::size_t l = 0; l < history.size(); ++l) {
        os << (l + 1) << ',' << format_double(history[l].diff_norm) << ',';
        if (history[l].rho_estimate) {
            os << format_double(*history[l].rho_estimate);
        }
        os << '\n';
    }
}

std::vector<ScanRow> run_scan(const ScanRequest& req) {
    if (req.c_values.empty() || req.sigma_t_h_values.empty() || req.schemes.empty()) {
        throw ConfigError("scan: c, sigma-t-h and scheme lists must be non-empty");
    }
    req.iteration.validate();
    const QuadratureSet quad = gauss_legendre(req.quadrature_order);

    std::vector<ScanRow> rows;
    for (double c : req.c_values) {
        for (double th : req.sigma_t_h_values) {
            for (SchemeKind s : req.schemes) {
                ScanRow row;
                row.c = c;
                row.sigma_t_h = th;
                row.scheme = s;
                rows.push_back(row);
            }
        }
    }
    for (const auto& row : rows) {
        if (!(row.c >= 0.0 && row.c <= 1.0) || !(row.sigma_t_h > 0.0)) {
            throw ConfigError("scan: c must lie in [0, 1] and sigma-t-h must be positive");
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            ScanRow& row = rows[i];
            const RhoMeasurement m = measure_rho(row.scheme, row.c, row.sigma_t_h, req.cells,
                                                 req.closure, quad, req.iteration);
            row.rho_numerical = m.rho;
            row.status = m.status;
            row.iterations = m.iterations;
            const FourierConfig fc = make_fourier_config(row.c, 1.0, row.sigma_t_h, req.cells, quad,
                                                         req.closure, BoundaryModel::reflective);
            row.rho_fourier = spectral_radius(fc, row.scheme).rho;
        }
    };

    unsigned threads = req.threads != 0 ? req.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(rows.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "c,sigma_t_h,scheme,rho_numerical,status,rho_fourier,iterations\n";
    for (const auto& r : rows) {
        os << format_double(r.c) << ',' << format_double(r.sigma_t_h) << ',' << to_string(r.scheme)
           << ',';
        if (r.rho_numerical) {
            os << format_double(*r.rho_numerical);
        }
        os << ',' << to_string(r.status) << ',' << format_double(r.rho_fourier) << ','
           << r.iterations << '\n';
    }
}

std::size_t write_fourier_csv(std::ostream& os, const FourierRequest& req,
                              std::ostream& diagnostics) {
    if (req.schemes.empty()) {
        throw ConfigError("--schemes: at least one scheme is required");
    }
    if (!(req.c >= 0.0 && req.c <= 1.0)) {
        throw ConfigError("--c: must lie in [0, 1]");
    }
    if (!(req.sigma_t_h > 0.0)) {
        throw ConfigError("--sigma-t-h: must be positive");
    }
    if (req.cells == 0) {
        throw ConfigError("--cells: must be positive");
    }
    BoundaryModel model;
    try {
        model = parse_boundary_model(req.boundary_model);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--boundary-model: ") + e.what());
    }
    QuadratureSet quad = [&] {
        try {
            return gauss_legendre(req.quadrature_order);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("--order: ") + e.what());
        }
    }();
    const FourierConfig cfg =
        make_fourier_config(req.c, 1.0, req.sigma_t_h, req.cells, quad, req.closure, model);
    const std::vector<double> omegas =
        req.dense > 0 ? dense_frequency_grid(cfg, req.dense) : frequency_grid(cfg);

    std::size_t violations = 0;
    constexpr double self_check_tol = 1e-12;
    if (req.self_check) {
        for (double omega : omegas) {
            const SymbolResult r = evaluate_symbols(omega, cfg);
            for (const complex& v : {r.si, r.cqd, r.lpcqd}) {
                if (std::abs(v.imag()) > self_check_tol) {
                    ++violations;
                    diagnostics << "self-check: non-real symbol at omega=" << format_double(omega)
                                << " (im=" << format_double(v.imag()) << ")\n";
                }
            }
            if (cfg.closure == Closure::dd && !r.pole) {
                const double gap = std::abs(r.cqd - rho_cqd_dd(omega, cfg));
                if (gap > self_check_tol * std::max(1.0, std::abs(r.cqd))) {
                    ++violations;
                    diagnostics << "self-check: DD closed form differs by " << format_double(gap)
                                << " at omega=" << format_double(omega) << '\n';
                }
            }
        }
    }

    os << "omega,scheme,re,im,abs\n";
    for (SchemeKind s : req.schemes) {
        for (double omega : omegas) {
            const complex v = rho(s, omega, cfg);
            os << format_double(omega) << ',' << to_string(s) << ',' << format_double(v.real())
               << ',' << format_double(v.imag()) << ',' << format_double(std::abs(v)) << '\n';
        }
    }
    for (SchemeKind s : req.schemes) {
        const SpectralRadius sr = spectral_radius(cfg, s, omegas);
        const complex v = rho(s, sr.omega, cfg);
        os << format_double(sr.omega) << ',' << to_string(s) << "_max," << format_double(v.real())
           << ',' << format_double(v.imag()) << ',' << format_double(sr.rho) << '\n';
    }
    return violations;
}

namespace {

std::vector<SchemeKind> parse_schemes(const std::vector<std::string>& items) {
    std::vector<SchemeKind> out;
    for (const auto& s : items) {
        if (s.empty()) {
            continue;
        }
        try {
            out.push_back(parse_scheme(s));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("--schemes: ") + e.what());
        }
    }
    if (out.empty()) {
        throw ConfigError("--schemes: at least one scheme is required");
    }
    return out;
}

Closure parse_closure_option(const std::string& text) {
    try {
        return parse_closure(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--closure: ") + e.what());
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Slab S_N solver with source iteration and quasidiffusion acceleration"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    auto* solve_cmd = app.add_subcommand("solve", "Solve one configured problem");
    solve_cmd->add_option("--config", config_path, "JSON problem configuration")->required();
    solve_cmd->add_option("--out-dir", out_dir, "Directory for flux.csv and history.csv");

    ScanRequest scan;
    std::vector<std::string> scan_schemes{"si", "cqd", "lpcqd"};
    std::string scan_closure = "dd";
    std::string scan_out = ".";
    auto* scan_cmd = app.add_subcommand("scan", "Measure convergence rates over a parameter grid");
    scan_cmd->add_option("--c", scan.c_values, "Scattering ratios")->delimiter(',');
    scan_cmd->add_option("--sigma-t-h", scan.sigma_t_h_values, "Optical cell widths")
        ->delimiter(',');
    scan_cmd->add_option("--schemes", scan_schemes, "Schemes (si,cqd,lpcqd)")->delimiter(',');
    scan_cmd->add_option("--cells", scan.cells, "Cells per slab");
    scan_cmd->add_option("--closure", scan_closure, "dd or sc");
    scan_cmd->add_option("--order", scan.quadrature_order, "Gauss-Legendre order");
    scan_cmd->add_option("--tolerance", scan.iteration.tolerance, "Relative convergence tolerance");
    scan_cmd->add_option("--max-iterations", scan.iteration.max_iterations, "Iteration cap");
    scan_cmd->add_option("--lp-alpha", scan.iteration.lp_boundary_alpha,
                         "Vacuum-boundary prolongation weight");
    scan_cmd->add_option("--threads", scan.threads, "Worker threads (0: all cores)");
    scan_cmd->add_option("--out-dir", scan_out, "Directory for scan.csv");

    FourierRequest four;
    std::vector<std::string> four_schemes{"si", "cqd", "lpcqd"};
    std::string four_closure = "dd";
    std::string four_out;
    auto* four_cmd = app.add_subcommand("fourier", "Tabulate analytic iteration symbols");
    four_cmd->add_option("--c", four.c, "Scattering ratio")->required();
    four_cmd->add_option("--sigma-t-h", four.sigma_t_h, "Optical cell width")->required();
    four_cmd->add_option("--order", four.quadrature_order, "Gauss-Legendre order");
    four_cmd->add_option("--closure", four_closure, "dd or sc");
    four_cmd->add_option("--cells", four.cells, "Cells in the slab");
    four_cmd->add_option("--boundary-model", four.boundary_model, "periodic or reflective");
    four_cmd->add_option("--schemes", four_schemes, "Schemes (si,cqd,lpcqd)")->delimiter(',');
    four_cmd->add_option("--dense", four.dense, "Uniform frequency count instead of slab modes");
    four_cmd->add_flag("--self-check", four.self_check, "Verify realness and the DD closed form");
    four_cmd->add_option("--out", four_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        if (*solve_cmd) {
            const RunConfig cfg = load_run_config(config_path);
            const SolveReport report = run_solve(cfg);
            const std::filesystem::path dir(out_dir);
            ensure_directory(dir);
            write_or_throw(dir / "flux.csv", [&](std::ostream& os) {
                write_flux_csv(os, report.mesh, report.solution.phi);
            });
            write_or_throw(dir / "history.csv", [&](std::ostream& os) {
                write_history_csv(os, report.solution.history);
            });
            out << to_string(cfg.scheme) << ": " << to_string(report.solution.status) << " after "
                << report.solution.iterations_used << " iterations\n";
            return exit_code(report.solution.status);
        }
        if (*scan_cmd) {
            scan.schemes = parse_schemes(scan_schemes);
            scan.closure = parse_closure_option(scan_closure);
            if (scan.quadrature_order < 2 || scan.quadrature_order > 64 ||
                scan.quadrature_order % 2 != 0) {
                throw ConfigError("--order: must be even and in [2, 64]");
            }
            if (scan.cells == 0) {
                throw ConfigError("--cells: must be positive");
            }
            try {
                scan.iteration.validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            const auto rows = run_scan(scan);
            const std::filesystem::path dir(scan_out);
            ensure_directory(dir);
            write_or_throw(dir / "scan.csv", [&](std::ostream& os) { write_scan_csv(os, rows); });
            out << "wrote " << rows.size() << " scan rows\n";
            return exit_ok;
        }
        if (*four_cmd) {
            four.schemes = parse_schemes(four_schemes);
            four.closure = parse_closure_option(four_closure);
            std::size_t violations = 0;
            write_or_throw(four_out, [&](std::ostream& os) {
                violations = write_fourier_csv(os, four, err);
            });
            if (violations > 0) {
                err << "self-check failed: " << violations << " violation(s)\n";
                return exit_self_check_failed;
            }
            return exit_ok;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    }
    return exit_config_error;
}

} // namespace slabqd::cli
