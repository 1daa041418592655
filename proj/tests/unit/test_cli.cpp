#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the installed CLI binary.

namespace {

namespace fs = std::filesystem;

const std::string kCli = QLOPS_CLI_PATH;
const std::string kConfig = std::string(QLOPS_SOURCE_DIR) + "/configs/paper.cfg";

int run(const std::string& args, const std::string& stdout_file = "/dev/null")
{
    const std::string command = kCli + " " + args + " > " + stdout_file + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path)
{
    std::ifstream stream(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

fs::path temp_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("cli: eval writes deterministic reports in all formats")
{
    const fs::path out_a = temp_dir("qlops_cli_a");
    const fs::path out_b = temp_dir("qlops_cli_b");

    CHECK(run("eval --config " + kConfig + " --format csv --out " + out_a.string()) == 0);
    CHECK(run("eval --config " + kConfig + " --format csv --out " + out_b.string()) == 0);
    REQUIRE(fs::exists(out_a / "scenarios.csv"));
    REQUIRE(fs::exists(out_a / "factories.csv"));
    CHECK(slurp(out_a / "scenarios.csv") == slurp(out_b / "scenarios.csv"));
    CHECK(slurp(out_a / "factories.csv") == slurp(out_b / "factories.csv"));

    const fs::path out_md = temp_dir("qlops_cli_md");
    CHECK(run("eval --config " + kConfig + " --format md --out " + out_md.string()) == 0);
    CHECK(fs::exists(out_md / "report.md"));

    const fs::path out_plot = temp_dir("qlops_cli_plot");
    CHECK(run("eval --config " + kConfig + " --format plotdata --out " + out_plot.string()) == 0);
    CHECK(fs::exists(out_plot / "plot_atom_future.csv"));
    CHECK(fs::exists(out_plot / "plot_sc_current.csv"));
    CHECK(fs::exists(out_plot / "plot_sc_future.csv"));
}

TEST_CASE("cli: scenario filter")
{
    const fs::path out = temp_dir("qlops_cli_single");
    CHECK(run("eval --config " + kConfig + " --scenario gb72_z_atom_future --format csv --out " +
              out.string()) == 0);
    const std::string csv = slurp(out / "scenarios.csv");
    CHECK(csv.find("gb72_Z") != std::string::npos);
    CHECK(csv.find("gb288") == std::string::npos);
}

TEST_CASE("cli: fit prints coefficients")
{
    const fs::path out = temp_dir("qlops_cli_fit") / "fit.txt";
    CHECK(run("fit --samples " + std::string(QLOPS_SOURCE_DIR) +
                  "/configs/samples/sc_current_memory.csv --platform sc_current",
              out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("platform: sc_current") != std::string::npos);
    CHECK(text.find("intercept: -4.36") != std::string::npos);
    CHECK(text.find("slope: -0.55") != std::string::npos);
}

TEST_CASE("cli: factory and case-study subcommands")
{
    const fs::path factory_out = temp_dir("qlops_cli_factory") / "factory.txt";
    CHECK(run("factory --config " + kConfig + " --code gb72", factory_out.string()) == 0);
    CHECK(slurp(factory_out).find("(15-to-1)") != std::string::npos);

    const fs::path case_out = temp_dir("qlops_cli_case") / "case.txt";
    CHECK(run("case-study --config " + kConfig, case_out.string()) == 0);
    const std::string text = slurp(case_out);
    CHECK(text.find("RSA2048") != std::string::npos);
    CHECK(text.find("Cross-platform ratios") != std::string::npos);
}

TEST_CASE("cli: exit codes distinguish validation from infeasibility")
{
    CHECK(run("eval --config /no/such/file --format csv --out /tmp/qlops_nowhere") == 1);

    // A scenario that needs a suppression fit on a platform that has none
    // (above threshold) is infeasible: exit code 2.
    const fs::path dir = temp_dir("qlops_cli_infeasible");
    const fs::path config_path = dir / "infeasible.cfg";
    {
        std::ofstream config(config_path);
        config << R"(
platforms {
  atom_now {
    kind neutral_atom
    coherence_time 1.5s
    gate_time_1q 0.5us
    gate_time_2q 0.2us
    infid_1q 1e-3
    infid_2q 5e-3
    readout_time 500us
    readout_error 2e-3
    prep_time 0s
    prep_error 7e-3
    movement_accel 0.02
    lattice_spacing 5
  }
}
codes {
  gb72 { family gb_grid  n 72  k 12  d 6 }
}
decoders {
  lookup { mode z_only  entries { gb72 { t_r 0.000633  p_l 0.0008372  t_sec 0.002677 } } }
  surface { mode all_syndromes  entries { d5 2.0955e-7 } }
}
scenarios {
  impossible { platform atom_now  decoder surface  match { code gb72  decoder lookup } }
}
)";
    }
    CHECK(run("eval --config " + config_path.string() + " --format csv --out " + dir.string()) ==
          2);

    // Bad validation data exits 1.
    const fs::path bad_path = dir / "bad.cfg";
    {
        std::ofstream config(bad_path);
        config << "platforms { p { kind superconducting coherence_time 80us gate_time_1q 0.025us "
                  "gate_time_2q 0.04us infid_1q 5e-4 infid_2q 2e-3 readout_time 0.5us "
                  "readout_error 1.3 prep_time 0.1us prep_error 5e-3 } }\n";
    }
    CHECK(run("eval --config " + bad_path.string() + " --format csv --out " + dir.string()) == 1);

    CHECK(run("definitely-not-a-subcommand") != 0);
}

TEST_CASE("cli: empty scenario list is a success")
{
    const fs::path dir = temp_dir("qlops_cli_empty");
    const fs::path config_path = dir / "empty.cfg";
    {
        std::ofstream config(config_path);
        config << R"(
platforms {
  p {
    kind superconducting
    coherence_time 80us
    gate_time_1q 0.025us
    gate_time_2q 0.04us
    infid_1q 5e-4
    infid_2q 2e-3
    readout_time 0.5us
    readout_error 7e-3
    prep_time 0.1us
    prep_error 5e-3
  }
}
)";
    }
    CHECK(run("eval --config " + config_path.string() + " --format csv --out " + dir.string()) ==
          0);
    const std::string csv = slurp(dir / "scenarios.csv");
    CHECK(csv == "code,p0,distance,physical_qubits,qlops,density\n");
}
