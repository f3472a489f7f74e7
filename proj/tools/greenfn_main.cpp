#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "greenfn/config.hpp"
#include "greenfn/verify.hpp"

namespace {

using namespace greenfn;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitError = 2;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_point(std::ofstream& out, const Point& p) {
    out << fmt(p.x());
    if (p.dim() == 2) out << "," << fmt(p.y());
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void dump_gmatrix(const Mat& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            if (c) out << ",";
            out << fmt(g(r, c).real()) << "," << fmt(g(r, c).imag());
        }
        out << "\n";
    }
}

int cmd_green(const ProblemConfig& cfg, const std::string& method, const std::string& output,
              const std::string& dump_g) {
    const auto t0 = std::chrono::steady_clock::now();
    auto gop = cfg.build_green(method);
    const double t_assemble = elapsed_ms(t0);

    const std::string path = output.empty() ? cfg.output_path : output;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    const bool two_d = cfg.domain.dim() == 2;
    out << (two_d ? "x,y,xp,yp,re_G,im_G" : "x,xp,re_G,im_G") << "\n";
    double bc_residual = 0.0;
    const auto t1 = std::chrono::steady_clock::now();
    for (const Point& xp : cfg.green_sources) {
        for (const Point& x : cfg.green_grid) {
            const Complex g = gop->eval(x, xp);
            write_point(out, x);
            out << ",";
            write_point(out, xp);
            out << "," << fmt(g.real()) << "," << fmt(g.imag()) << "\n";
        }
        const SpinorBoundaryFunction r =
            gop->boundary_op().apply(gop->trace(xp), WhichSet::direct);
        for (const auto& c : r.comps)
            bc_residual = std::max(bc_residual, c.size() ? c.cwiseAbs().maxCoeff() : 0.0);
    }
    const double t_eval = elapsed_ms(t1);
    if (!dump_g.empty()) {
        const auto* direct = dynamic_cast<const GreenOperator*>(gop.get());
        if (direct == nullptr)
            throw ConfigError("--dump-g needs the direct method");
        dump_gmatrix(direct->gmatrix().flat, dump_g);
        std::cout << "g matrix: " << dump_g << "\n";
    }
    std::cout << "method: " << gop->method() << "\n"
              << "condition_estimate: " << fmt(gop->condition_estimate()) << "\n"
              << "bc_residual_max: " << fmt(bc_residual) << "\n"
              << "assemble_ms: " << fmt(t_assemble) << "\n"
              << "eval_ms: " << fmt(t_eval) << "\n"
              << "output: " << path << "\n";
    return kExitOk;
}

int cmd_solve(const ProblemConfig& cfg, const std::string& method, const std::string& output,
              const std::string& residuals_path) {
    const auto t0 = std::chrono::steady_clock::now();
    auto gop = cfg.build_green(method);
    const VolumeQuadrature vq = cfg.volume();
    const FieldSolution sol = solve_bvp(gop, vq, cfg.source, cfg.boundary_data, cfg.output_grid);
    const double t_solve = elapsed_ms(t0);

    const std::string path = output.empty() ? cfg.output_path : output;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    const bool two_d = cfg.domain.dim() == 2;
    out << (two_d ? "x,y,re_u,im_u" : "x,re_u,im_u") << "\n";
    for (size_t i = 0; i < sol.sample_points().size(); ++i) {
        write_point(out, sol.sample_points()[i]);
        const Complex u = sol.sample_values()[static_cast<Eigen::Index>(i)];
        out << "," << fmt(u.real()) << "," << fmt(u.imag()) << "\n";
    }
    const ResidualReport rep = residual_report(sol, *gop, cfg.source, cfg.boundary_data);
    if (!residuals_path.empty()) {
        std::ofstream rout(residuals_path);
        if (!rout) throw ConfigError("cannot open " + residuals_path + " for writing");
        rout << "name,value\n";
        rout << "pde_residual," << fmt(rep.pde_residual) << "\n";
        for (size_t j = 0; j < rep.boundary_residuals.size(); ++j)
            rout << "boundary_residual_" << j << "," << fmt(rep.boundary_residuals[j]) << "\n";
        std::cout << "residuals: " << residuals_path << "\n";
    }
    std::cout << "method: " << sol.method_name() << "\n"
              << "condition_estimate: " << fmt(sol.condition_estimate()) << "\n"
              << "pde_residual: " << fmt(rep.pde_residual) << "\n"
              << "boundary_residual_max: " << fmt(rep.max_boundary_residual) << "\n"
              << "solve_ms: " << fmt(t_solve) << "\n"
              << "output: " << path << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, bool csv) {
    const auto rows = run_verify(suite);
    bool all_pass = true;
    if (csv) {
        std::cout << "suite,name,max_error,tolerance,pass\n";
        for (const auto& r : rows) {
            std::cout << r.suite << "," << r.name << "," << fmt(r.max_error) << ","
                      << fmt(r.tolerance) << "," << (r.pass() ? "pass" : "FAIL") << "\n";
            all_pass = all_pass && r.pass();
        }
    } else {
        std::printf("%-10s %-32s %-14s %-10s %s\n", "suite", "name", "max_error", "tolerance",
                    "result");
        for (const auto& r : rows) {
            std::printf("%-10s %-32s %-14.3e %-10.0e %s\n", r.suite.c_str(), r.name.c_str(),
                        r.max_error, r.tolerance, r.pass() ? "pass" : "FAIL");
            all_pass = all_pass && r.pass();
        }
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green function construction and boundary value problems"};
    app.require_subcommand(1);

    std::string config_path, method, output, dump_g, residuals_path;
    std::string suite = "all";
    bool csv = false;

    auto* green = app.add_subcommand("green", "sample the constructed Green function to CSV");
    green->add_option("--config", config_path, "problem config (JSON)")->required();
    green->add_option("--method", method, "direct|recursive (overrides config)");
    green->add_option("--output", output, "output CSV path (overrides config)");
    green->add_option("--dump-g", dump_g, "dump the flattened g matrix to CSV");

    auto* solve = app.add_subcommand("solve", "solve the boundary value problem and sample u");
    solve->add_option("--config", config_path, "problem config (JSON)")->required();
    solve->add_option("--method", method, "direct|recursive (overrides config)");
    solve->add_option("--output", output, "output CSV path (overrides config)");
    solve->add_option("--residuals", residuals_path, "write a residual-report CSV");

    auto* verify = app.add_subcommand("verify", "run the built-in verification suites");
    verify->add_option("suite", suite, "all|assembly|recursive|bvp")->capture_default_str();
    verify->add_flag("--csv", csv, "CSV output instead of the aligned table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (green->parsed()) return cmd_green(parse_config_file(config_path), method, output, dump_g);
        if (solve->parsed())
            return cmd_solve(parse_config_file(config_path), method, output, residuals_path);
        return cmd_verify(suite, csv);
    } catch (const IllPosed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
