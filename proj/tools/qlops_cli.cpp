// qlops command-line front end.  Thin shell over the shared library's
// C API; subcommands map one-to-one onto API calls.

#include <qlops/qlops.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

namespace {

bool verbose()
{
    const char* level = std::getenv("QLOPS_LOG");
    return level != nullptr && *level != '\0';
}

int fail(qlops_status status)
{
    std::fprintf(stderr, "error: %s\n", qlops_last_error());
    return qlops_status_exit_code(status);
}

struct ConfigHandle {
    qlops_config* ptr = nullptr;
    ~ConfigHandle() { qlops_config_free(ptr); }
};

struct ResultsHandle {
    qlops_results* ptr = nullptr;
    ~ResultsHandle() { qlops_results_free(ptr); }
};

int load_config(const std::string& path, ConfigHandle& config)
{
    const qlops_status status = qlops_config_load(path.c_str(), &config.ptr);
    if (status != QLOPS_OK)
        return fail(status);
    if (verbose()) {
        for (size_t i = 0; i < qlops_config_warning_count(config.ptr); ++i)
            std::fprintf(stderr, "warning: %s\n", qlops_config_warning(config.ptr, i));
    }
    return 0;
}

int run_eval(const std::string& config_path, const std::string& scenario,
             const std::string& format, const std::string& out_dir)
{
    ConfigHandle config;
    if (const int rc = load_config(config_path, config); rc != 0)
        return rc;

    ResultsHandle results;
    qlops_status status =
        qlops_eval(config.ptr, scenario.empty() ? nullptr : scenario.c_str(), &results.ptr);
    if (status != QLOPS_OK)
        return fail(status);

    status = qlops_results_emit(results.ptr, format.c_str(), out_dir.c_str());
    if (status != QLOPS_OK)
        return fail(status);

    for (size_t i = 0; i < qlops_results_count(results.ptr); ++i) {
        qlops_scenario_view view{};
        if (qlops_results_get(results.ptr, i, &view) != QLOPS_OK)
            continue;
        std::printf("%-28s d=%-3d qubits=%-8lld QLOPS=%-14.6g density=%.6g%s\n", view.name,
                    view.distance, view.physical_qubits, view.qlops, view.density,
                    view.boundary ? " (boundary)" : "");
    }
    std::printf("wrote %s report to %s\n", format.c_str(), out_dir.c_str());
    return 0;
}

int run_fit(const std::string& samples, const std::string& platform)
{
    qlops_fit_view fit{};
    const qlops_status status = qlops_fit_csv(samples.c_str(), &fit);
    if (status != QLOPS_OK)
        return fail(status);
    if (!platform.empty())
        std::printf("platform: %s\n", platform.c_str());
    std::printf("samples: %zu\n", fit.samples);
    std::printf("intercept: %.10g\n", fit.intercept);
    std::printf("slope: %.10g\n", fit.slope);
    std::printf("fitted range: d in [%d, %d]\n", fit.d_min, fit.d_max);
    std::printf("max |residual| (ln p0): %.4g\n", fit.max_abs_residual);
    return 0;
}

int run_factory(const std::string& config_path, const std::string& code)
{
    ConfigHandle config;
    if (const int rc = load_config(config_path, config); rc != 0)
        return rc;
    char* text = nullptr;
    const qlops_status status = qlops_factory_report(config.ptr, code.c_str(), &text);
    if (status != QLOPS_OK)
        return fail(status);
    std::fputs(text, stdout);
    qlops_string_free(text);
    return 0;
}

int run_case_study(const std::string& config_path)
{
    ConfigHandle config;
    if (const int rc = load_config(config_path, config); rc != 0)
        return rc;
    char* text = nullptr;
    const qlops_status status = qlops_case_study_report(config.ptr, &text);
    if (status != QLOPS_OK)
        return fail(status);
    std::fputs(text, stdout);
    qlops_string_free(text);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"QLOPS benchmarking toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string scenario;
    std::string format = "csv";
    std::string out_dir = ".";
    auto* eval = app.add_subcommand("eval", "Evaluate scenarios and emit a report");
    eval->add_option("--config", config_path, "Configuration file")->required();
    eval->add_option("--scenario", scenario, "Evaluate a single scenario");
    eval->add_option("--format", format, "Report format: csv, md or plotdata")
        ->check(CLI::IsMember({"csv", "md", "markdown", "plotdata"}));
    eval->add_option("--out", out_dir, "Output directory")->required();

    std::string samples;
    std::string platform;
    auto* fit = app.add_subcommand("fit", "Fit ln(p0) vs distance from memory-experiment samples");
    fit->add_option("--samples", samples, "CSV with columns d,p_L,k")->required();
    fit->add_option("--platform", platform, "Platform label for the printout");

    std::string factory_config;
    std::string factory_code;
    auto* factory = app.add_subcommand("factory", "Distillation factory plans for one code");
    factory->add_option("--config", factory_config, "Configuration file")->required();
    factory->add_option("--code", factory_code, "Code identifier")->required();

    std::string case_config;
    auto* case_study = app.add_subcommand("case-study", "Case-study ratios and runtime bounds");
    case_study->add_option("--config", case_config, "Configuration file")->required();

    CLI11_PARSE(app, argc, argv);

    if (eval->parsed())
        return run_eval(config_path, scenario, format, out_dir);
    if (fit->parsed())
        return run_fit(samples, platform);
    if (factory->parsed())
        return run_factory(factory_config, factory_code);
    if (case_study->parsed())
        return run_case_study(case_config);
    return 1;
}
