#pragma once

#include "qlops/config_node.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qlops::model {

enum class PlatformKind { Superconducting, NeutralAtom };

// Log-linear suppression model: p0(d) = exp(intercept + slope * d).
// `slope` must be negative for a sub-threshold platform.  The fitted
// distance range is carried along so consumers can tell when they are
// extrapolating.
struct FitModel {
    double intercept = 0.0;
    double slope = 0.0;
    int d_min = 1;
    int d_max = 64;
};

struct HardwareParams {
    std::string name;
    PlatformKind kind = PlatformKind::Superconducting;
    double coherence_time = 0.0; // seconds
    double gate_time_1q = 0.0;   // seconds
    double gate_time_2q = 0.0;   // seconds
    double infid_1q = 0.0;
    double infid_2q = 0.0;
    double readout_time = 0.0;   // seconds
    double readout_error = 0.0;
    double prep_time = 0.0;      // seconds
    double prep_error = 0.0;
    // Neutral-atom only.  Presence on a superconducting platform is a
    // validation error; absence on a neutral-atom platform is allowed
    // until an operation actually needs the value.
    std::optional<double> movement_error;
    std::optional<double> unintended_error;
    std::optional<double> movement_accel;  // micrometers / microsecond^2
    std::optional<double> lattice_spacing; // micrometers
    std::optional<FitModel> fit;
};

struct GridCoord {
    int row = 0;
    int col = 0;
    friend bool operator==(const GridCoord&, const GridCoord&) = default;
    friend auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

// Inclusive rectangle of grid cells.
struct GridRect {
    int row0 = 0;
    int col0 = 0;
    int row1 = 0;
    int col1 = 0;
    bool contains(GridCoord c) const
    {
        return c.row >= row0 && c.row <= row1 && c.col >= col0 && c.col <= col1;
    }
    friend bool operator==(const GridRect&, const GridRect&) = default;
};

// One ancilla with the data-qubit offsets of its stabilizer check.
struct CheckDef {
    int ancilla_id = 0;
    GridCoord home;
    std::vector<GridCoord> offsets;
    friend bool operator==(const CheckDef&, const CheckDef&) = default;
};

struct GridLayout {
    int rows = 0;
    int cols = 0;
    std::vector<GridCoord> data_positions;
    std::vector<CheckDef> x_checks;
    std::vector<CheckDef> z_checks;
    std::vector<GridRect> parking_regions;
    friend bool operator==(const GridLayout&, const GridLayout&) = default;
};

enum class CodeFamily { SurfacePatch, GBGrid };

struct CodeSpec {
    std::string id;
    long n = 0; // data qubits
    long k = 0; // logical qubits
    int d = 0;  // distance
    CodeFamily family = CodeFamily::SurfacePatch;
    std::optional<GridLayout> layout; // GBGrid only
};

enum class DecodeMode { ZOnly, AllSyndromes };

// Measured decoder data for one code or one distance: reaction time,
// and optionally the memory-experiment logical error rate and the
// measured cycle length that came out of the same run.
struct DecoderEntry {
    double t_r = 0.0; // seconds
    std::optional<double> p_l;
    std::optional<double> t_sec; // seconds
};

struct DecoderProfile {
    std::string id;
    DecodeMode mode = DecodeMode::ZOnly;
    std::map<std::string, DecoderEntry> by_code;
    std::map<int, DecoderEntry> by_distance;
};

enum class MatchParity { Odd, Any };

// A scenario either evaluates a code directly on a platform, or matches a
// surface-code distance to the logical error level of a reference
// (code, decoder) pair on another platform.
struct ScenarioDef {
    std::string name;
    std::string platform;
    std::string decoder;
    std::optional<std::string> code;       // direct evaluation
    std::optional<std::string> match_code; // matched surface evaluation
    std::optional<std::string> match_decoder;
    std::optional<long> patches;
    MatchParity parity = MatchParity::Odd;
    int match_d_min = 3;
    int match_d_max = 41;
    bool factory = false;
    std::optional<double> t_sec_override; // seconds
};

struct QubitGroup {
    std::string name;
    long long patches = 0;
    std::optional<long long> qubits_per_patch;
    std::optional<int> distance; // 2d^2-1 per patch when set
};

enum class CaseStudyStyle { LatticeSurgery, Correlated };

struct CaseStudyDef {
    std::string name;
    std::string label;
    CaseStudyStyle style = CaseStudyStyle::LatticeSurgery;
    long k = 0;
    double t_sec = 0.0; // seconds
    double t_r = 0.0;   // seconds (lattice-surgery style)
    int d = 0;
    long rounds_per_op = 1; // correlated style
    double runtime = 0.0;   // seconds
    double toffoli_count = 0.0;
    double clifford_per_toffoli = 10.0;
    std::vector<QubitGroup> qubit_groups;
    // Alternative readings of the qubit count that the density should be
    // quoted against.  When they disagree the report surfaces all of them.
    std::vector<std::pair<std::string, double>> qubit_readings;
};

struct CaseStudyCompare {
    std::string name;
    std::string a;
    std::string b;
};

struct DistillationSearch {
    int d_min = 3;
    int d_max = 41;
};

struct Config {
    std::vector<HardwareParams> platforms;
    std::vector<CodeSpec> codes;
    std::vector<DecoderProfile> decoders;
    std::vector<ScenarioDef> scenarios;
    std::vector<CaseStudyDef> case_studies;
    std::vector<CaseStudyCompare> comparisons;
    DistillationSearch distillation_search;
    // Non-fatal data issues found at load time (e.g. a reaction-time table
    // that is not monotone in distance).  Reports echo these.
    std::vector<std::string> warnings;

    const HardwareParams* find_platform(const std::string& name) const;
    const CodeSpec* find_code(const std::string& id) const;
    const DecoderProfile* find_decoder(const std::string& id) const;
};

// Loads either the nested key-value text format or its JSON rendering.
// All invariants are validated; durations are normalized to seconds.
Config load_config(const std::string& path);
Config config_from_node(const cfg::Node& root, const std::string& origin,
                        const std::string& base_dir);

// Canonical JSON rendering (durations in seconds).  Feeding the result
// back through config_from_node reproduces the same model.
cfg::Node to_node(const Config& config);

// Layout documents are stand-alone files with a single `layout` section.
GridLayout load_layout(const std::string& path);
void validate_layout(const GridLayout& layout, const std::string& context);

const char* to_string(PlatformKind kind);
const char* to_string(CodeFamily family);
const char* to_string(DecodeMode mode);

} // namespace qlops::model
