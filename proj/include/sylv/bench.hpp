#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sylv/problem.hpp"
#include "sylv/shift_set.hpp"

namespace sylv {

enum class Method { extended, pseudo_h2, penzl_adi };

Method method_from_string(const std::string& s);
std::string to_string(Method m);

struct SyntheticSpec {
    SystemKind kind = SystemKind::random_stable;
    Eigen::Index n = 6;
    std::uint64_t seed = 0;
};

/// Declarative benchmark configuration: a JSON file plus flag overrides.
struct BenchConfig {
    std::string bundle_path;                // one of bundle_path /
    std::optional<SyntheticSpec> synthetic; // synthetic must be set
    std::vector<int> ranks;
    std::vector<Method> methods = {Method::extended, Method::pseudo_h2, Method::penzl_adi};

    double h2_tol = 1e-8;
    int h2_max_sweeps = 100;
    std::vector<double> h2_seed_shifts;  // empty: log-spaced Ritz-bound default

    int penzl_k_plus = 10;
    int penzl_k_minus = 10;
    int adi_cycle = 1;  // >1 cycles a smaller heuristic shift list over r steps

    double rkpm_truncate_tol = 0.0;
    Eigen::Index oracle_cap = 62500;
    Eigen::Index schur_cap = 2000;  // direct dense solve tier for exact errors

    std::string out_csv;

    static BenchConfig from_json_file(const std::string& path);
    void validate() const;  // everything not needing the problem dimensions
};

/// How the exact solution for the error columns was obtained.
enum class ErrorSource { kronecker, schur, residual };

std::string to_string(ErrorSource s);

struct BenchRow {
    int r = 0;
    double floor = 0.0;
    double err_extended = 0.0;
    double err_pseudo_h2 = 0.0;
    double err_penzl_adi = 0.0;
    double equiv_gap = 0.0;
    double orth_rel = 0.0;
    double time_extended = 0.0;
    double time_pseudo_h2 = 0.0;
    double time_penzl_adi = 0.0;
    bool h2_converged = false;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    ErrorSource error_source = ErrorSource::kronecker;
    std::string problem_label;
    Eigen::Index n = 0, m = 0;
    bool is_lyapunov = false;
};

struct LoadedProblem {
    SylvesterProblem problem;
    bool is_lyapunov = false;
    std::string label;
};

LoadedProblem load_bench_problem(const BenchConfig& cfg);

/// Runs every configured method over the rank sweep. A method failure on
/// one rank leaves NaN in its cells and the run continues. Writes the CSV
/// to cfg.out_csv when set.
BenchResult run_benchmark(const BenchConfig& cfg);

/// Deterministic except for the time columns; floats carry 17 significant
/// digits.
void write_csv(const BenchResult& result, std::ostream& out);

struct TheoremCheck {
    std::string name;
    int r = 0;
    double measured = 0.0;
    double threshold = 0.0;
    bool exceed = false;    // pass when measured > threshold instead of <=
    bool advisory = false;  // reported but never fails the run
    enum class Status { pass, fail, skipped } status = Status::skipped;
    std::string note;
};

struct VerifyReport {
    std::vector<TheoremCheck> checks;
    bool all_passed() const;
};

/// Theorem suite at pseudo-optimal shifts for every configured rank:
/// the equivalence gap, the residual subspace orthogonality (symmetric
/// case), the mirror condition, the interpolation defects, and the factored
/// iteration's column-space containment. Checks are skipped, not failed,
/// when the shift iteration does not converge.
VerifyReport verify_theorems(const BenchConfig& cfg);

void print_report(const VerifyReport& report, std::ostream& out);

struct ShiftListing {
    Method method = Method::pseudo_h2;
    int r = 0;
    ShiftSet shifts;
    bool converged = true;  // meaningful for the iterated family
};

std::vector<ShiftListing> compute_shift_listings(const BenchConfig& cfg);
void print_shift_listings(const std::vector<ShiftListing>& listings, std::ostream& out);

}  // namespace sylv
