#include "qlops/report.hpp"
#include "qlops/error_rates.hpp"
#include "qlops/errors.hpp"
#include "qlops/metrics.hpp"
#include "qlops/sec.hpp"
#include "qlops/units.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qlops::report {

namespace {

using model::CodeFamily;
using model::CodeSpec;
using model::DecodeMode;
using model::DecoderEntry;
using model::DecoderProfile;
using model::HardwareParams;
using model::PlatformKind;
using units::format_sig;

std::string gb_label(const CodeSpec& code, DecodeMode mode)
{
    std::ostringstream out;
    out << "[[" << code.n << ", " << code.k << ", " << code.d << "]] "
        << model::to_string(mode);
    return out.str();
}

const DecoderEntry& entry_for_code(const DecoderProfile& decoder, const std::string& code_id,
                                   const std::string& context)
{
    const auto it = decoder.by_code.find(code_id);
    if (it == decoder.by_code.end())
        throw ValidationError(context + ": decoder '" + decoder.id + "' has no entry for code '" +
                              code_id + "'");
    return it->second;
}

const DecoderEntry& entry_for_distance(const DecoderProfile& decoder, int d,
                                       const std::string& context)
{
    const auto it = decoder.by_distance.find(d);
    if (it == decoder.by_distance.end())
        throw ValidationError(context + ": decoder '" + decoder.id + "' has no entry for d=" +
                              std::to_string(d));
    return it->second;
}

const model::FitModel& fit_for(const HardwareParams& hw, const std::string& context)
{
    if (!hw.fit)
        throw InfeasibleError(context + ": platform '" + hw.name +
                              "' has no suppression fit (above threshold or uncalibrated)");
    if (!(hw.fit->slope < 0.0))
        throw InfeasibleError(context + ": platform '" + hw.name +
                              "' fit has non-negative slope (above threshold)");
    return *hw.fit;
}

void attach_factory(ScenarioResult& result, const Config& config, const HardwareParams& hw,
                    const metrics::LogicalCycle& cycle, const std::string& context)
{
    const model::FitModel& fit = fit_for(hw, context);
    std::function<double(int)> t_sec_dist;
    if (hw.kind == PlatformKind::Superconducting) {
        const double fixed = sec::surface_sec_length(hw);
        t_sec_dist = [fixed](int) { return fixed; };
    } else {
        // Distillation blocks are surface patches even on the GB platform;
        // the cycle is quoted at the largest protocol distance.
        const HardwareParams* hw_copy = &hw;
        t_sec_dist = [hw_copy](int d) { return sec::atom_surface_sec_length(*hw_copy, d); };
    }
    result.factory = distill::plan_factory(result.k, fit, cycle.duration, t_sec_dist, result.p0,
                                           config.distillation_search.d_min,
                                           config.distillation_search.d_max);
}

} // namespace

ScenarioResult evaluate_scenario(const Config& config, const ScenarioDef& scenario)
{
    const std::string context = "scenario '" + scenario.name + "'";
    const HardwareParams* hw = config.find_platform(scenario.platform);
    const DecoderProfile* decoder = config.find_decoder(scenario.decoder);
    if (hw == nullptr)
        throw ValidationError(context + ": unknown platform '" + scenario.platform + "'");
    if (decoder == nullptr)
        throw ValidationError(context + ": unknown decoder '" + scenario.decoder + "'");

    ScenarioResult result;
    result.name = scenario.name;
    result.platform = scenario.platform;

    if (scenario.code) {
        const CodeSpec* code = config.find_code(*scenario.code);
        if (code == nullptr)
            throw ValidationError(context + ": unknown code '" + *scenario.code + "'");
        const DecoderEntry& entry = entry_for_code(*decoder, code->id, context);
        if (!entry.p_l)
            throw ValidationError(context + ": decoder entry for '" + code->id +
                                  "' lacks a measured p_l");
        const long patches = scenario.patches.value_or(1);
        result.code_label = gb_label(*code, decoder->mode);
        result.code_key = code->id + "_" + model::to_string(decoder->mode);
        result.k = code->k * patches;
        result.distance = code->d;
        result.p_l = *entry.p_l;
        result.p0 = rates::p0_from_pl(*entry.p_l, code->k, code->d);
        result.t_r = entry.t_r;
        if (scenario.t_sec_override) {
            result.t_sec = *scenario.t_sec_override;
        } else if (entry.t_sec) {
            result.t_sec = *entry.t_sec;
        } else if (code->family == CodeFamily::GBGrid) {
            if (!code->layout)
                throw ValidationError(context + ": no measured t_sec and no layout to compute one");
            result.t_sec = sec::schedule_gb_sec(*code->layout, *hw).total;
            result.notes.push_back("t_sec computed from layout");
        } else if (hw->kind == PlatformKind::Superconducting) {
            result.t_sec = sec::surface_sec_length(*hw);
        } else {
            result.t_sec = sec::atom_surface_sec_length(*hw, code->d);
        }
        result.physical_qubits = metrics::physical_qubits(*code, patches);
    } else {
        const CodeSpec* source = config.find_code(*scenario.match_code);
        const DecoderProfile* source_decoder = config.find_decoder(*scenario.match_decoder);
        if (source == nullptr)
            throw ValidationError(context + ": unknown code '" + *scenario.match_code + "'");
        if (source_decoder == nullptr)
            throw ValidationError(context + ": unknown decoder '" + *scenario.match_decoder + "'");
        const DecoderEntry& source_entry = entry_for_code(*source_decoder, source->id, context);
        if (!source_entry.p_l)
            throw ValidationError(context + ": decoder entry for '" + source->id +
                                  "' lacks a measured p_l");
        result.p_l = *source_entry.p_l;
        result.p0 = rates::p0_from_pl(*source_entry.p_l, source->k, source->d);
        result.source_label = gb_label(*source, source_decoder->mode);

        const model::FitModel& fit = fit_for(*hw, context);
        result.distance = rates::match_distance(fit, result.p0, scenario.match_d_min,
                                                scenario.match_d_max, scenario.parity);
        const long patches = scenario.patches.value_or(source->k);
        result.k = patches;
        result.code_label = "surface d=" + std::to_string(result.distance);
        result.code_key = "surface_d" + std::to_string(result.distance);
        result.t_r = entry_for_distance(*decoder, result.distance, context).t_r;
        if (scenario.t_sec_override)
            result.t_sec = *scenario.t_sec_override;
        else if (hw->kind == PlatformKind::Superconducting)
            result.t_sec = sec::surface_sec_length(*hw);
        else
            result.t_sec = sec::atom_surface_sec_length(*hw, result.distance);
        result.physical_qubits = patches * metrics::surface_patch_qubits(result.distance);
    }

    const metrics::LogicalCycle cycle =
        metrics::logical_cycle(result.t_r, result.t_sec, result.distance);
    result.cycles = cycle.cycles;
    result.qlops = static_cast<double>(result.k) / cycle.duration;
    result.density = metrics::qlops_density(result.qlops, result.physical_qubits);
    result.boundary = cycle.boundary;
    if (cycle.boundary) {
        result.qlops_alt = static_cast<double>(result.k) / cycle.duration_alt;
        result.density_alt = metrics::qlops_density(result.qlops_alt, result.physical_qubits);
        result.notes.push_back("t_r/t_sec on a ceiling boundary; both readings reported");
    }
    result.parallel_decoder =
        metrics::needs_parallel_decoder(result.t_r, result.distance, result.t_sec);
    if (result.parallel_decoder)
        result.notes.push_back("t_r > d*t_sec: a parallel window decoder is required");

    if (scenario.factory)
        attach_factory(result, config, *hw, cycle, context);
    return result;
}

std::vector<ScenarioResult> evaluate_all(const Config& config,
                                         const std::optional<std::string>& only)
{
    std::vector<ScenarioResult> results;
    bool matched = false;
    for (const ScenarioDef& scenario : config.scenarios) {
        if (only && scenario.name != *only)
            continue;
        matched = true;
        results.push_back(evaluate_scenario(config, scenario));
    }
    if (only && !matched)
        throw ValidationError("unknown scenario '" + *only + "'");
    return results;
}

double runtime_lower_bound(const CaseStudy& cs)
{
    if (!(cs.q > 0.0) || !(cs.clifford_per_toffoli > 0.0) || cs.toffoli_count < 0.0)
        throw DomainError("runtime_lower_bound: invalid case study");
    return cs.clifford_per_toffoli * cs.toffoli_count / cs.q;
}

double cross_platform_ratio(const CaseStudy& a, const CaseStudy& b, bool normalize_by_toffoli)
{
    if (!(a.q > 0.0 && b.q > 0.0 && a.runtime > 0.0 && b.runtime > 0.0))
        throw DomainError("cross_platform_ratio: invalid case study");
    double ratio = (a.q * a.runtime) / (b.q * b.runtime);
    if (normalize_by_toffoli) {
        if (!(a.toffoli_count > 0.0 && b.toffoli_count > 0.0))
            throw DomainError("cross_platform_ratio: toffoli counts must be positive");
        ratio /= a.toffoli_count / b.toffoli_count;
    }
    return ratio;
}

std::vector<CaseStudyResult> evaluate_case_studies(const Config& config)
{
    std::vector<CaseStudyResult> results;
    for (const model::CaseStudyDef& def : config.case_studies) {
        CaseStudyResult result;
        result.name = def.name;
        result.label = def.label;
        if (def.style == model::CaseStudyStyle::LatticeSurgery)
            result.study.q = metrics::qlops(def.k, def.t_r, def.t_sec, def.d);
        else
            result.study.q = metrics::qlops_correlated(def.k, def.t_sec, def.rounds_per_op);
        result.study.runtime = def.runtime;
        result.study.toffoli_count = def.toffoli_count;
        result.study.clifford_per_toffoli = def.clifford_per_toffoli;

        if (!def.qubit_groups.empty()) {
            std::vector<metrics::PatchGroup> groups;
            for (const model::QubitGroup& group : def.qubit_groups) {
                metrics::PatchGroup g;
                g.patches = group.patches;
                g.qubits_per_patch = group.qubits_per_patch
                                         ? *group.qubits_per_patch
                                         : metrics::surface_patch_qubits(*group.distance);
                groups.push_back(g);
            }
            result.physical_qubits = metrics::physical_qubits_mixed(groups);
            result.densities.emplace_back(
                "qubit_groups", result.study.q / static_cast<double>(result.physical_qubits));
        }
        for (const auto& [label, count] : def.qubit_readings)
            result.densities.emplace_back(label, result.study.q / count);

        result.runtime_bound = runtime_lower_bound(result.study);
        result.underestimation =
            result.runtime_bound > 0.0 ? def.runtime / result.runtime_bound : 0.0;
        results.push_back(std::move(result));
    }
    return results;
}

std::vector<ComparisonResult> evaluate_comparisons(const Config& config,
                                                   const std::vector<CaseStudyResult>& studies)
{
    const auto lookup = [&studies](const std::string& name) -> const CaseStudyResult& {
        for (const CaseStudyResult& study : studies)
            if (study.name == name)
                return study;
        throw ValidationError("unknown case study '" + name + "'");
    };
    std::vector<ComparisonResult> results;
    for (const model::CaseStudyCompare& compare : config.comparisons) {
        ComparisonResult result;
        result.name = compare.name;
        result.a = compare.a;
        result.b = compare.b;
        const CaseStudy& a = lookup(compare.a).study;
        const CaseStudy& b = lookup(compare.b).study;
        result.ratio = cross_platform_ratio(a, b, false);
        result.ratio_per_toffoli = cross_platform_ratio(a, b, true);
        results.push_back(result);
    }
    return results;
}

namespace {

std::string render_scenario_csv(const std::vector<ScenarioResult>& results)
{
    std::ostringstream out;
    out << "code,p0,distance,physical_qubits,qlops,density\n";
    for (const ScenarioResult& r : results) {
        out << r.code_key << ',' << format_sig(r.p0) << ',' << r.distance << ','
            << r.physical_qubits << ',' << format_sig(r.qlops) << ',' << format_sig(r.density)
            << '\n';
    }
    return out.str();
}

std::string protocol_label(const distill::DistillationProtocol& p)
{
    std::ostringstream out;
    out << "(15-to-1)_" << p.d_x << "." << p.d_z << "." << p.d_m;
    return out.str();
}

std::string render_factory_csv(const std::vector<ScenarioResult>& results)
{
    std::ostringstream out;
    out << "code,p0,protocol,distillation_error,unit_qubits,cycles,total_qubits\n";
    for (const ScenarioResult& r : results) {
        if (!r.factory)
            continue;
        const distill::FactoryPlan& f = *r.factory;
        out << r.code_key << ',' << format_sig(r.p0) << ',' << protocol_label(f.protocol)
            << ',' << format_sig(f.p_out) << ',' << f.unit_qubits << ','
            << format_sig(f.expected_cycles) << ',' << f.total_qubits << '\n';
    }
    return out.str();
}

std::string render_markdown(const Config& config, const std::vector<ScenarioResult>& results)
{
    std::ostringstream out;
    out << "# QLOPS report\n\n";
    out << "| Scenario | Code | p0 | Distance | Physical qubits | QLOPS | QLOPS density | Notes |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const ScenarioResult& r : results) {
        std::string notes;
        if (r.parallel_decoder)
            notes += "parallel-window";
        if (r.boundary) {
            if (!notes.empty())
                notes += "; ";
            notes += "boundary alt " + format_sig(r.qlops_alt);
        }
        std::string label = r.code_label;
        if (!r.source_label.empty())
            label += " vs " + r.source_label;
        out << "| " << r.name << " | " << label << " | " << format_sig(r.p0) << " | " << r.distance
            << " | " << r.physical_qubits << " | " << format_sig(r.qlops) << " | "
            << format_sig(r.density) << " | " << notes << " |\n";
    }

    bool any_factory = std::any_of(results.begin(), results.end(),
                                   [](const ScenarioResult& r) { return r.factory.has_value(); });
    if (any_factory) {
        out << "\n## Magic state distillation\n\n";
        out << "| Scenario | p0 | Protocol | Distillation error | Qubits per unit | Cycles | "
               "Units | Total qubits |\n";
        out << "|---|---|---|---|---|---|---|---|\n";
        for (const ScenarioResult& r : results) {
            if (!r.factory)
                continue;
            const distill::FactoryPlan& f = *r.factory;
            out << "| " << r.name << " | " << format_sig(r.p0) << " | "
                << protocol_label(f.protocol) << " | " << format_sig(f.p_out) << " | "
                << f.unit_qubits << " | " << format_sig(f.expected_cycles) << " | " << f.units
                << " | " << f.total_qubits << " |\n";
        }
    }

    std::vector<std::string> notes = config.warnings;
    for (const ScenarioResult& r : results)
        for (const std::string& note : r.notes)
            notes.push_back(r.name + ": " + note);
    if (!notes.empty()) {
        out << "\n## Notes\n\n";
        for (const std::string& note : notes)
            out << "- " << note << '\n';
    }
    return out.str();
}

std::map<std::string, std::string> render_plotdata(const std::vector<ScenarioResult>& results)
{
    // One (error rate, density) series per platform, in scenario order.
    std::map<std::string, std::string> files;
    std::vector<std::string> platform_order;
    std::map<std::string, std::ostringstream> series;
    for (const ScenarioResult& r : results) {
        if (series.find(r.platform) == series.end()) {
            platform_order.push_back(r.platform);
            series[r.platform] << "error_rate,density\n";
        }
        series[r.platform] << format_sig(r.p0) << ',' << format_sig(r.density) << '\n';
    }
    for (const std::string& platform : platform_order)
        files["plot_" + platform + ".csv"] = series[platform].str();
    return files;
}

} // namespace

std::map<std::string, std::string> render(const Config& config,
                                          const std::vector<ScenarioResult>& results,
                                          Format format)
{
    std::map<std::string, std::string> files;
    switch (format) {
    case Format::Csv:
        files["scenarios.csv"] = render_scenario_csv(results);
        if (std::any_of(results.begin(), results.end(),
                        [](const ScenarioResult& r) { return r.factory.has_value(); }))
            files["factories.csv"] = render_factory_csv(results);
        break;
    case Format::Markdown:
        files["report.md"] = render_markdown(config, results);
        break;
    case Format::PlotData:
        files = render_plotdata(results);
        break;
    }
    return files;
}

std::string render_case_studies(const std::vector<CaseStudyResult>& studies,
                                const std::vector<ComparisonResult>& comparisons)
{
    std::ostringstream out;
    out << "# Case studies\n\n";
    for (const CaseStudyResult& s : studies) {
        out << "## " << s.label << "\n\n";
        out << "- QLOPS: " << format_sig(s.study.q) << '\n';
        if (s.physical_qubits > 0)
            out << "- physical qubits: " << s.physical_qubits << '\n';
        for (const auto& [label, density] : s.densities)
            out << "- density (" << label << "): " << format_sig(density) << '\n';
        if (s.densities.size() > 1)
            out << "- note: qubit readings disagree; densities listed per reading\n";
        out << "- runtime lower bound (" << format_sig(s.study.clifford_per_toffoli, 3)
            << " Cliffords/Toffoli): " << format_sig(s.runtime_bound) << " s\n";
        out << "- reported runtime: " << format_sig(s.study.runtime) << " s ("
            << format_sig(s.underestimation) << "x the bound)\n\n";
    }
    if (!comparisons.empty()) {
        out << "## Cross-platform ratios\n\n";
        for (const ComparisonResult& c : comparisons) {
            out << "- " << c.a << " vs " << c.b << ": Q*t ratio " << format_sig(c.ratio)
                << ", per-Toffoli " << format_sig(c.ratio_per_toffoli) << '\n';
        }
    }
    return out.str();
}

void emit(const Config& config, const std::vector<ScenarioResult>& results, Format format,
          const std::string& out_dir)
{
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, contents] : render(config, results, format)) {
        const std::filesystem::path path = std::filesystem::path(out_dir) / name;
        std::ofstream stream(path, std::ios::binary);
        if (!stream)
            throw IoError("cannot write '" + path.string() + "'");
        stream << contents;
    }
}

Format parse_format(const std::string& name)
{
    if (name == "csv")
        return Format::Csv;
    if (name == "md" || name == "markdown")
        return Format::Markdown;
    if (name == "plotdata")
        return Format::PlotData;
    throw ValidationError("unknown report format '" + name + "'");
}

} // namespace qlops::report
