#pragma once

#include "qlops/distillation.hpp"
#include "qlops/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qlops::report {

using model::Config;
using model::ScenarioDef;

struct ScenarioResult {
    std::string name;
    std::string platform;
    std::string code_label;   // e.g. "[[72, 12, 6]] Z" or "surface d=13"
    std::string code_key;     // CSV-safe identifier, e.g. "gb72_Z", "surface_d13"
    std::string source_label; // matched scenarios: the code they track
    long k = 0;
    int distance = 0;
    double p0 = 0.0;
    double p_l = 0.0;
    double t_r = 0.0;
    double t_sec = 0.0;
    long cycles = 0;
    long long physical_qubits = 0;
    double qlops = 0.0;
    double density = 0.0;
    bool parallel_decoder = false;
    bool boundary = false;   // ceil(t_r/t_sec) sat on an integer boundary
    double qlops_alt = 0.0;  // the N+1 reading when flagged
    double density_alt = 0.0;
    std::optional<distill::FactoryPlan> factory;
    std::vector<std::string> notes;
};

ScenarioResult evaluate_scenario(const Config& config, const ScenarioDef& scenario);

// Evaluates every scenario (or just `only`), preserving configuration
// order.  Results are deterministic for fixed inputs.
std::vector<ScenarioResult> evaluate_all(const Config& config,
                                         const std::optional<std::string>& only = std::nullopt);

// Case-study inputs reduced to what the ratio arithmetic needs.
struct CaseStudy {
    double q = 0.0;       // operations per second
    double runtime = 0.0; // seconds
    double toffoli_count = 0.0;
    double clifford_per_toffoli = 10.0;
};

// Lower bound on algorithm runtime: clifford_per_toffoli * toffoli / q.
double runtime_lower_bound(const CaseStudy& cs);

// (Q_a t_a) / (Q_b t_b), additionally divided by the Toffoli-count ratio
// when normalize_by_toffoli is set.
double cross_platform_ratio(const CaseStudy& a, const CaseStudy& b, bool normalize_by_toffoli);

struct CaseStudyResult {
    std::string name;
    std::string label;
    CaseStudy study;
    long long physical_qubits = 0; // from qubit_groups, 0 when not given
    // Density per quoted qubit reading; multiple readings flag a
    // discrepancy in the source data and are all surfaced.
    std::vector<std::pair<std::string, double>> densities;
    double runtime_bound = 0.0;
    double underestimation = 0.0; // runtime / bound
};

struct ComparisonResult {
    std::string name;
    std::string a;
    std::string b;
    double ratio = 0.0;
    double ratio_per_toffoli = 0.0;
};

std::vector<CaseStudyResult> evaluate_case_studies(const Config& config);
std::vector<ComparisonResult> evaluate_comparisons(const Config& config,
                                                   const std::vector<CaseStudyResult>& studies);

enum class Format { Csv, Markdown, PlotData };

// Renders results to named documents.  CSV carries the fixed header
// code,p0,distance,physical_qubits,qlops,density plus a factory CSV when
// any scenario planned one; Markdown mirrors the comparison-table layout;
// PlotData emits one (error-rate, density) series per platform.
// Numeric fields are printed at 6 significant figures and the rendering
// is byte-deterministic.
std::map<std::string, std::string> render(const Config& config,
                                          const std::vector<ScenarioResult>& results,
                                          Format format);

// Case-study report (always markdown-ish text).
std::string render_case_studies(const std::vector<CaseStudyResult>& studies,
                                const std::vector<ComparisonResult>& comparisons);

// Writes rendered documents into out_dir.
void emit(const Config& config, const std::vector<ScenarioResult>& results, Format format,
          const std::string& out_dir);

Format parse_format(const std::string& name);

} // namespace qlops::report
