#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sylv/bench.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

// "synth:<kind>:<n>:<seed>" or a bundle directory path
void apply_problem_override(sylv::BenchConfig& cfg, const std::string& spec) {
    if (spec.rfind("synth:", 0) == 0) {
        std::vector<std::string> p;
        std::istringstream is(spec);
        std::string tok;
        while (std::getline(is, tok, ':')) p.push_back(tok);
        if (p.size() < 3 || p.size() > 4)
            throw sylv::ConfigError("expected synth:<kind>:<n>[:<seed>], got '" + spec + "'");
        sylv::SyntheticSpec s;
        s.kind = sylv::system_kind_from_string(p[1]);
        s.n = std::stol(p[2]);
        s.seed = p.size() == 4 ? std::stoull(p[3]) : 0;
        cfg.synthetic = s;
        cfg.bundle_path.clear();
    } else {
        cfg.bundle_path = spec;
        cfg.synthetic.reset();
    }
}

struct CommonFlags {
    std::string config_path;
    std::string problem;
    std::string ranks;
    std::string methods;
    double h2_tol = -1.0;
    int h2_max_sweeps = -1;
    int penzl_kp = -1;
    int penzl_km = -1;
    long oracle_cap = -1;
    std::string out;
    long long seed = -1;
    int adi_cycle = -1;
    double truncate_tol = -1.0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--problem", f.problem,
                    "bundle directory or synth:<kind>:<n>[:<seed>] (overrides the config)");
    cmd->add_option("--ranks", f.ranks, "comma-separated rank list, e.g. 2,4,8");
    cmd->add_option("--methods", f.methods, "subset of extended,pseudo-h2,penzl-adi");
    cmd->add_option("--h2-tol", f.h2_tol, "shift-change convergence tolerance");
    cmd->add_option("--h2-max-sweeps", f.h2_max_sweeps, "sweep cap for the shift iteration");
    cmd->add_option("--penzl-kp", f.penzl_kp, "Ritz values of A for the heuristic shifts");
    cmd->add_option("--penzl-km", f.penzl_km, "Ritz values of A^{-1} for the heuristic shifts");
    cmd->add_option("--oracle-cap", f.oracle_cap, "max n*m for the vectorized direct solve");
    cmd->add_option("--out", f.out, "output file (CSV for run, text otherwise)");
    cmd->add_option("--seed", f.seed, "seed override for a synthetic problem");
    cmd->add_option("--adi-cycle", f.adi_cycle,
                    "cycle a heuristic shift list this many times over the r steps");
    cmd->add_option("--truncate-tol", f.truncate_tol,
                    "relative singular-value cutoff for the lifted solution factors");
}

sylv::BenchConfig build_config(const CommonFlags& f) {
    sylv::BenchConfig cfg;
    if (!f.config_path.empty()) cfg = sylv::BenchConfig::from_json_file(f.config_path);
    if (!f.problem.empty()) apply_problem_override(cfg, f.problem);
    if (!f.ranks.empty()) {
        cfg.ranks.clear();
        for (const auto& tok : split_csv(f.ranks)) cfg.ranks.push_back(std::stoi(tok));
    }
    if (!f.methods.empty()) {
        cfg.methods.clear();
        for (const auto& tok : split_csv(f.methods))
            cfg.methods.push_back(sylv::method_from_string(tok));
    }
    if (f.h2_tol >= 0.0) cfg.h2_tol = f.h2_tol;
    if (f.h2_max_sweeps >= 0) cfg.h2_max_sweeps = f.h2_max_sweeps;
    if (f.penzl_kp >= 0) cfg.penzl_k_plus = f.penzl_kp;
    if (f.penzl_km >= 0) cfg.penzl_k_minus = f.penzl_km;
    if (f.oracle_cap >= 0) cfg.oracle_cap = f.oracle_cap;
    if (!f.out.empty()) cfg.out_csv = f.out;
    if (f.seed >= 0) {
        if (!cfg.synthetic) throw sylv::ConfigError("--seed applies to synthetic problems only");
        cfg.synthetic->seed = static_cast<std::uint64_t>(f.seed);
    }
    if (f.adi_cycle >= 1) cfg.adi_cycle = f.adi_cycle;
    if (f.truncate_tol >= 0.0) cfg.rkpm_truncate_tol = f.truncate_tol;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-rank Sylvester/Lyapunov benchmark and theorem-verification harness"};
    app.require_subcommand(1);

    CommonFlags run_flags, verify_flags, shifts_flags;
    CLI::App* run = app.add_subcommand("run", "rank sweep over the configured methods");
    add_common_flags(run, run_flags);
    CLI::App* verify = app.add_subcommand("verify", "theorem checks at pseudo-optimal shifts");
    add_common_flags(verify, verify_flags);
    CLI::App* shifts = app.add_subcommand("shifts", "emit the shift sets only");
    add_common_flags(shifts, shifts_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            sylv::BenchConfig cfg = build_config(run_flags);
            sylv::BenchResult result = sylv::run_benchmark(cfg);
            if (cfg.out_csv.empty()) sylv::write_csv(result, std::cout);
            return 0;
        }
        if (verify->parsed()) {
            sylv::BenchConfig cfg = build_config(verify_flags);
            sylv::VerifyReport report = sylv::verify_theorems(cfg);
            sylv::print_report(report, std::cout);
            return report.all_passed() ? 0 : 3;
        }
        if (shifts->parsed()) {
            sylv::BenchConfig cfg = build_config(shifts_flags);
            auto listings = sylv::compute_shift_listings(cfg);
            if (cfg.out_csv.empty()) {
                sylv::print_shift_listings(listings, std::cout);
            } else {
                std::ofstream out(cfg.out_csv);
                if (!out) throw sylv::ConfigError("cannot open '" + cfg.out_csv + "'");
                sylv::print_shift_listings(listings, out);
            }
            return 0;
        }
    } catch (const sylv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const sylv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
