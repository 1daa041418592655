#include "qlops/qlops.h"

#include "qlops/distillation.hpp"
#include "qlops/error_rates.hpp"
#include "qlops/errors.hpp"
#include "qlops/metrics.hpp"
#include "qlops/model.hpp"
#include "qlops/report.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

thread_local std::string g_last_error;

qlops_status record(const std::exception& error, qlops_status status)
{
    g_last_error = error.what();
    return status;
}

// Runs `body`, translating the error taxonomy onto status codes.
template <typename Fn>
qlops_status guarded(Fn&& body)
{
    try {
        body();
        return QLOPS_OK;
    } catch (const qlops::ParseError& e) {
        return record(e, QLOPS_ERR_PARSE);
    } catch (const qlops::ValidationError& e) {
        return record(e, QLOPS_ERR_VALIDATION);
    } catch (const qlops::DomainError& e) {
        return record(e, QLOPS_ERR_DOMAIN);
    } catch (const qlops::InfeasibleError& e) {
        return record(e, QLOPS_ERR_INFEASIBLE);
    } catch (const qlops::IoError& e) {
        return record(e, QLOPS_ERR_IO);
    } catch (const std::exception& e) {
        return record(e, QLOPS_ERR_UNKNOWN);
    }
}

char* copy_string(const std::string& text)
{
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

} // namespace

struct qlops_config {
    qlops::model::Config config;
};

struct qlops_results {
    qlops::model::Config config; // render needs the warnings
    std::vector<qlops::report::ScenarioResult> results;
};

extern "C" {

int qlops_status_exit_code(qlops_status status)
{
    if (status == QLOPS_OK)
        return 0;
    return status == QLOPS_ERR_INFEASIBLE ? 2 : 1;
}

const char* qlops_last_error(void)
{
    return g_last_error.c_str();
}

void qlops_string_free(char* text)
{
    std::free(text);
}

qlops_status qlops_config_load(const char* path, qlops_config** out)
{
    if (path == nullptr || out == nullptr) {
        g_last_error = "qlops_config_load: null argument";
        return QLOPS_ERR_BAD_ARG;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<qlops_config>();
        handle->config = qlops::model::load_config(path);
        *out = handle.release();
    });
}

void qlops_config_free(qlops_config* config)
{
    delete config;
}

size_t qlops_config_warning_count(const qlops_config* config)
{
    return config == nullptr ? 0 : config->config.warnings.size();
}

const char* qlops_config_warning(const qlops_config* config, size_t index)
{
    if (config == nullptr || index >= config->config.warnings.size())
        return nullptr;
    return config->config.warnings[index].c_str();
}

qlops_status qlops_config_to_json(const qlops_config* config, char** json_out)
{
    if (config == nullptr || json_out == nullptr) {
        g_last_error = "qlops_config_to_json: null argument";
        return QLOPS_ERR_BAD_ARG;
    }
    return guarded([&] { *json_out = copy_string(qlops::model::to_node(config->config).dump(2)); });
}

qlops_status qlops_eval(const qlops_config* config, const char* scenario, qlops_results** out)
{
    if (config == nullptr || out == nullptr) {
        g_last_error = "qlops_eval: null argument";
        return QLOPS_ERR_BAD_ARG;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<qlops_results>();
        handle->config = config->config;
        std::optional<std::string> only;
        if (scenario != nullptr)
            only = scenario;
        handle->results = qlops::report::evaluate_all(config->config, only);
        *out = handle.release();
    });
}

void qlops_results_free(qlops_results* results)
{
    delete results;
}

size_t qlops_results_count(const qlops_results* results)
{
    return results == nullptr ? 0 : results->results.size();
}

qlops_status qlops_results_get(const qlops_results* results, size_t index,
                               qlops_scenario_view* out)
{
    if (results == nullptr || out == nullptr || index >= results->results.size()) {
        g_last_error = "qlops_results_get: bad handle or index";
        return QLOPS_ERR_BAD_ARG;
    }
    const qlops::report::ScenarioResult& r = results->results[index];
    *out = {};
    out->name = r.name.c_str();
    out->platform = r.platform.c_str();
    out->code_label = r.code_label.c_str();
    out->k = r.k;
    out->distance = r.distance;
    out->p0 = r.p0;
    out->t_r = r.t_r;
    out->t_sec = r.t_sec;
    out->cycles = r.cycles;
    out->physical_qubits = r.physical_qubits;
    out->qlops = r.qlops;
    out->density = r.density;
    out->parallel_decoder = r.parallel_decoder ? 1 : 0;
    out->boundary = r.boundary ? 1 : 0;
    out->qlops_alt = r.qlops_alt;
    out->has_factory = r.factory.has_value() ? 1 : 0;
    if (r.factory) {
        out->proto_d_x = r.factory->protocol.d_x;
        out->proto_d_z = r.factory->protocol.d_z;
        out->proto_d_m = r.factory->protocol.d_m;
        out->factory_p_out = r.factory->p_out;
        out->factory_p_accept = r.factory->p_accept;
        out->factory_cycles = r.factory->expected_cycles;
        out->factory_unit_qubits = r.factory->unit_qubits;
        out->factory_units = r.factory->units;
        out->factory_total_qubits = r.factory->total_qubits;
    }
    return QLOPS_OK;
}

qlops_status qlops_results_emit(const qlops_results* results, const char* format,
                                const char* out_dir)
{
    if (results == nullptr || format == nullptr || out_dir == nullptr) {
        g_last_error = "qlops_results_emit: null argument";
        return QLOPS_ERR_BAD_ARG;
    }
    return guarded([&] {
        qlops::report::emit(results->config, results->results,
                            qlops::report::parse_format(format), out_dir);
    });
}

qlops_status qlops_fit_csv(const char* samples_path, qlops_fit_view* out)
{
    if (samples_path == nullptr || out == nullptr) {
        g_last_error = "qlops_fit_csv: null argument";
        return QLOPS_ERR_BAD_ARG;
    }
    return guarded([&] {
        const auto samples = qlops::rates::read_calibration_csv(samples_path);
        const auto fit = qlops::rates::fit_from_calibration(samples);
        out->intercept = fit.model.intercept;
        out->slope = fit.model.slope;
        out->d_min = fit.model.d_min;
        out->d_max = fit.model.d_max;
        out->samples = samples.size();
        out->max_abs_residual = fit.max_abs_residual;
    });
}

qlops_status qlops_factory_report(const qlops_config* config, const char* code_id,
                                  char** text_out)
{
    if (config == nullptr || code_id == nullptr || text_out == nullptr) {
        g_last_error = "qlops_factory_report: null argument";
        return QLOPS_ERR_BAD_ARG;
    }
    return guarded([&] {
        if (config->config.find_code(code_id) == nullptr)
            throw qlops::ValidationError("unknown code '" + std::string(code_id) + "'");
        std::vector<qlops::report::ScenarioResult> rows;
        for (const auto& scenario : config->config.scenarios) {
            const bool references = (scenario.code && *scenario.code == code_id) ||
                                    (scenario.match_code && *scenario.match_code == code_id);
            if (!references)
                continue;
            auto with_factory = scenario;
            with_factory.factory = true;
            rows.push_back(qlops::report::evaluate_scenario(config->config, with_factory));
        }
        if (rows.empty())
            throw qlops::ValidationError("no scenario references code '" + std::string(code_id) +
                                         "'");
        const auto files =
            qlops::report::render(config->config, rows, qlops::report::Format::Markdown);
        *text_out = copy_string(files.at("report.md"));
    });
}

qlops_status qlops_case_study_report(const qlops_config* config, char** text_out)
{
    if (config == nullptr || text_out == nullptr) {
        g_last_error = "qlops_case_study_report: null argument";
        return QLOPS_ERR_BAD_ARG;
    }
    return guarded([&] {
        const auto studies = qlops::report::evaluate_case_studies(config->config);
        const auto comparisons = qlops::report::evaluate_comparisons(config->config, studies);
        *text_out = copy_string(qlops::report::render_case_studies(studies, comparisons));
    });
}

qlops_status qlops_p0_from_pl(double p_l, long k, int d, double* out)
{
    if (out == nullptr)
        return QLOPS_ERR_BAD_ARG;
    return guarded([&] { *out = qlops::rates::p0_from_pl(p_l, k, d); });
}

qlops_status qlops_metric(long k, double t_r, double t_sec, int d, double* out)
{
    if (out == nullptr)
        return QLOPS_ERR_BAD_ARG;
    return guarded([&] { *out = qlops::metrics::qlops(k, t_r, t_sec, d); });
}

qlops_status qlops_metric_correlated(long k, double t_sec, long rounds_per_op, double* out)
{
    if (out == nullptr)
        return QLOPS_ERR_BAD_ARG;
    return guarded([&] { *out = qlops::metrics::qlops_correlated(k, t_sec, rounds_per_op); });
}

qlops_status qlops_distillation_unit_qubits(int d_x, int d_z, int d_m, long long* out)
{
    if (out == nullptr)
        return QLOPS_ERR_BAD_ARG;
    return guarded([&] { *out = qlops::distill::unit_qubits({d_x, d_z, d_m}); });
}

qlops_status qlops_distillation_units_needed(long k, double t_unit, double t_logical,
                                             long long* out)
{
    if (out == nullptr)
        return QLOPS_ERR_BAD_ARG;
    return guarded([&] { *out = qlops::distill::units_needed(k, t_unit, t_logical); });
}

} // extern "C"
