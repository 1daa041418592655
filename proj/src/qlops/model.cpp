#include "qlops/model.hpp"
#include "qlops/errors.hpp"
#include "qlops/units.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

namespace qlops::model {

namespace {

using cfg::Node;

[[noreturn]] void invalid(const std::string& path, const std::string& message)
{
    throw ValidationError(path + ": " + message);
}

const Node& require_object(const Node& node, const std::string& path)
{
    if (!node.is_object())
        invalid(path, "expected a section");
    return node;
}

const Node* find(const Node& node, const std::string& key)
{
    const auto it = node.find(key);
    return it == node.end() ? nullptr : &*it;
}

const Node& require(const Node& node, const std::string& key, const std::string& path)
{
    const Node* child = find(node, key);
    if (child == nullptr)
        invalid(path, "missing required key '" + key + "'");
    return *child;
}

double read_number(const Node& node, const std::string& path)
{
    if (!node.is_number())
        invalid(path, "expected a number");
    return node.get<double>();
}

double read_duration(const Node& node, const std::string& path)
{
    double value = 0.0;
    if (node.is_number()) {
        value = node.get<double>();
    } else if (node.is_string()) {
        try {
            value = units::parse_duration(node.get<std::string>());
        } catch (const ParseError& error) {
            invalid(path, error.what());
        }
    } else {
        invalid(path, "expected a duration (number of seconds or 's'/'ms'/'us' literal)");
    }
    if (!(value >= 0.0) || !std::isfinite(value))
        invalid(path, "duration must be non-negative");
    return value;
}

double read_probability(const Node& node, const std::string& path)
{
    const double value = read_number(node, path);
    if (!(value >= 0.0 && value <= 1.0))
        invalid(path, "probability out of range");
    return value;
}

long long read_count(const Node& node, const std::string& path, long long min_value)
{
    if (!node.is_number_integer())
        invalid(path, "expected an integer");
    const long long value = node.get<long long>();
    if (value < min_value)
        invalid(path, "count must be >= " + std::to_string(min_value));
    return value;
}

std::string read_string(const Node& node, const std::string& path)
{
    if (!node.is_string())
        invalid(path, "expected a string");
    return node.get<std::string>();
}

bool read_bool(const Node& node, const std::string& path)
{
    if (!node.is_boolean())
        invalid(path, "expected true or false");
    return node.get<bool>();
}

std::vector<long long> read_int_list(const Node& node, const std::string& path)
{
    std::vector<long long> values;
    if (!node.is_array())
        invalid(path, "expected a list");
    for (const auto& item : node) {
        if (!item.is_number_integer())
            invalid(path, "expected a list of integers");
        values.push_back(item.get<long long>());
    }
    return values;
}

std::vector<GridCoord> read_coord_pairs(const Node& node, const std::string& path)
{
    const auto flat = read_int_list(node, path);
    if (flat.size() % 2 != 0)
        invalid(path, "expected an even number of integers (row col pairs)");
    std::vector<GridCoord> coords;
    coords.reserve(flat.size() / 2);
    for (size_t i = 0; i < flat.size(); i += 2)
        coords.push_back({static_cast<int>(flat[i]), static_cast<int>(flat[i + 1])});
    return coords;
}

std::vector<GridRect> read_rect_list(const Node& node, const std::string& path)
{
    const auto flat = read_int_list(node, path);
    if (flat.size() % 4 != 0)
        invalid(path, "expected groups of four integers (row0 col0 row1 col1)");
    std::vector<GridRect> rects;
    for (size_t i = 0; i < flat.size(); i += 4) {
        GridRect rect{static_cast<int>(flat[i]), static_cast<int>(flat[i + 1]),
                      static_cast<int>(flat[i + 2]), static_cast<int>(flat[i + 3])};
        if (rect.row1 < rect.row0 || rect.col1 < rect.col0)
            invalid(path, "rectangle corners out of order");
        rects.push_back(rect);
    }
    return rects;
}

FitModel bind_fit(const Node& node, const std::string& path)
{
    require_object(node, path);
    FitModel fit;
    fit.intercept = read_number(require(node, "intercept", path), path + ".intercept");
    fit.slope = read_number(require(node, "slope", path), path + ".slope");
    if (const Node* n = find(node, "d_min"))
        fit.d_min = static_cast<int>(read_count(*n, path + ".d_min", 1));
    if (const Node* n = find(node, "d_max"))
        fit.d_max = static_cast<int>(read_count(*n, path + ".d_max", 1));
    if (fit.d_max < fit.d_min)
        invalid(path, "fit range is empty");
    // p0(d) = exp(a + b d) must stay inside (0, 1) over the declared range;
    // the exponential is monotone so the endpoints decide.
    for (int d : {fit.d_min, fit.d_max}) {
        const double log_p = fit.intercept + fit.slope * d;
        if (!(log_p < 0.0))
            invalid(path, "fit predicts p0 >= 1 at d=" + std::to_string(d));
    }
    return fit;
}

HardwareParams bind_platform(const std::string& name, const Node& node, const std::string& path)
{
    require_object(node, path);
    HardwareParams hw;
    hw.name = name;
    const std::string kind = read_string(require(node, "kind", path), path + ".kind");
    if (kind == "superconducting")
        hw.kind = PlatformKind::Superconducting;
    else if (kind == "neutral_atom")
        hw.kind = PlatformKind::NeutralAtom;
    else
        invalid(path + ".kind", "unknown platform kind '" + kind + "'");

    hw.coherence_time = read_duration(require(node, "coherence_time", path), path + ".coherence_time");
    hw.gate_time_1q = read_duration(require(node, "gate_time_1q", path), path + ".gate_time_1q");
    hw.gate_time_2q = read_duration(require(node, "gate_time_2q", path), path + ".gate_time_2q");
    hw.infid_1q = read_probability(require(node, "infid_1q", path), path + ".infid_1q");
    hw.infid_2q = read_probability(require(node, "infid_2q", path), path + ".infid_2q");
    hw.readout_time = read_duration(require(node, "readout_time", path), path + ".readout_time");
    hw.readout_error = read_probability(require(node, "readout_error", path), path + ".readout_error");
    hw.prep_time = read_duration(require(node, "prep_time", path), path + ".prep_time");
    hw.prep_error = read_probability(require(node, "prep_error", path), path + ".prep_error");

    struct AtomField {
        const char* key;
        std::optional<double>* slot;
        bool probability;
    };
    const AtomField atom_fields[] = {
        {"movement_error", &hw.movement_error, true},
        {"unintended_error", &hw.unintended_error, true},
        {"movement_accel", &hw.movement_accel, false},
        {"lattice_spacing", &hw.lattice_spacing, false},
    };
    for (const auto& field : atom_fields) {
        const Node* n = find(node, field.key);
        if (n == nullptr)
            continue;
        const std::string field_path = path + "." + field.key;
        if (hw.kind != PlatformKind::NeutralAtom)
            invalid(field_path, "neutral-atom field on a superconducting platform");
        const double value = field.probability ? read_probability(*n, field_path)
                                               : read_number(*n, field_path);
        if (!field.probability && !(value > 0.0))
            invalid(field_path, "must be positive");
        *field.slot = value;
    }
    if (const Node* n = find(node, "fit"))
        hw.fit = bind_fit(*n, path + ".fit");
    return hw;
}

void append_check_group(std::vector<CheckDef>& checks, const Node& node, const std::string& path)
{
    require_object(node, path);
    std::vector<GridCoord> homes;
    if (const Node* n = find(node, "homes_rect")) {
        for (const GridRect& rect : read_rect_list(*n, path + ".homes_rect"))
            for (int r = rect.row0; r <= rect.row1; ++r)
                for (int c = rect.col0; c <= rect.col1; ++c)
                    homes.push_back({r, c});
    }
    if (const Node* n = find(node, "homes")) {
        const auto extra = read_coord_pairs(*n, path + ".homes");
        homes.insert(homes.end(), extra.begin(), extra.end());
    }
    if (homes.empty())
        invalid(path, "check group has no ancilla homes");
    const auto offsets = read_coord_pairs(require(node, "offsets", path), path + ".offsets");
    if (offsets.empty())
        invalid(path, "check group has no offsets");
    for (const GridCoord& home : homes) {
        CheckDef def;
        def.ancilla_id = static_cast<int>(checks.size());
        def.home = home;
        def.offsets = offsets;
        checks.push_back(std::move(def));
    }
}

std::vector<CheckDef> bind_checks(const Node& node, const std::string& path)
{
    require_object(node, path);
    std::vector<CheckDef> checks;
    if (find(node, "offsets") != nullptr) {
        append_check_group(checks, node, path);
        return checks;
    }
    for (const auto& [name, group] : node.items())
        append_check_group(checks, group, path + "." + name);
    if (checks.empty())
        invalid(path, "no check groups defined");
    return checks;
}

GridLayout bind_layout(const Node& node, const std::string& path)
{
    require_object(node, path);
    GridLayout layout;
    const Node& grid = require(node, "grid", path);
    const auto dims = read_int_list(grid, path + ".grid");
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1)
        invalid(path + ".grid", "expected two positive integers (rows cols)");
    layout.rows = static_cast<int>(dims[0]);
    layout.cols = static_cast<int>(dims[1]);

    if (const Node* n = find(node, "data_rects")) {
        for (const GridRect& rect : read_rect_list(*n, path + ".data_rects"))
            for (int r = rect.row0; r <= rect.row1; ++r)
                for (int c = rect.col0; c <= rect.col1; ++c)
                    layout.data_positions.push_back({r, c});
    }
    if (const Node* n = find(node, "data")) {
        const auto extra = read_coord_pairs(*n, path + ".data");
        layout.data_positions.insert(layout.data_positions.end(), extra.begin(), extra.end());
    }
    layout.x_checks = bind_checks(require(node, "x_checks", path), path + ".x_checks");
    layout.z_checks = bind_checks(require(node, "z_checks", path), path + ".z_checks");
    layout.parking_regions = read_rect_list(require(node, "parking_rects", path), path + ".parking_rects");
    validate_layout(layout, path);
    return layout;
}

DecoderEntry bind_decoder_entry(const Node& node, const std::string& path)
{
    DecoderEntry entry;
    if (node.is_object()) {
        entry.t_r = read_duration(require(node, "t_r", path), path + ".t_r");
        if (const Node* n = find(node, "p_l"))
            entry.p_l = read_probability(*n, path + ".p_l");
        if (const Node* n = find(node, "t_sec"))
            entry.t_sec = read_duration(*n, path + ".t_sec");
    } else {
        entry.t_r = read_duration(node, path);
    }
    if (!(entry.t_r > 0.0))
        invalid(path, "reaction time must be positive");
    if (entry.t_sec && !(*entry.t_sec > 0.0))
        invalid(path, "cycle length must be positive");
    return entry;
}

DecoderProfile bind_decoder(const std::string& id, const Node& node, const std::string& path,
                            std::vector<std::string>& warnings)
{
    require_object(node, path);
    DecoderProfile profile;
    profile.id = id;
    const std::string mode = read_string(require(node, "mode", path), path + ".mode");
    if (mode == "z_only")
        profile.mode = DecodeMode::ZOnly;
    else if (mode == "all_syndromes")
        profile.mode = DecodeMode::AllSyndromes;
    else
        invalid(path + ".mode", "unknown decode mode '" + mode + "'");

    const Node& entries = require(node, "entries", path);
    require_object(entries, path + ".entries");
    for (const auto& [key, value] : entries.items()) {
        const std::string entry_path = path + ".entries." + key;
        if (key.size() > 1 && key.front() == 'd' &&
            key.find_first_not_of("0123456789", 1) == std::string::npos) {
            profile.by_distance[std::stoi(key.substr(1))] = bind_decoder_entry(value, entry_path);
        } else {
            profile.by_code[key] = bind_decoder_entry(value, entry_path);
        }
    }
    if (profile.by_code.empty() && profile.by_distance.empty())
        invalid(path + ".entries", "decoder profile has no entries");

    // Reaction times are expected to grow with distance; a dip usually
    // means a data-entry problem, so surface it instead of failing.
    double previous = 0.0;
    int previous_d = 0;
    for (const auto& [d, entry] : profile.by_distance) {
        if (previous_d != 0 && entry.t_r < previous) {
            warnings.push_back("decoder '" + id + "': t_r not monotone between d=" +
                               std::to_string(previous_d) + " and d=" + std::to_string(d));
        }
        previous = entry.t_r;
        previous_d = d;
    }
    return profile;
}

CodeSpec bind_code(const std::string& id, const Node& node, const std::string& path,
                   const std::string& base_dir)
{
    require_object(node, path);
    CodeSpec code;
    code.id = id;
    code.n = static_cast<long>(read_count(require(node, "n", path), path + ".n", 1));
    code.k = static_cast<long>(read_count(require(node, "k", path), path + ".k", 1));
    code.d = static_cast<int>(read_count(require(node, "d", path), path + ".d", 1));
    const std::string family = read_string(require(node, "family", path), path + ".family");
    if (family == "surface_patch")
        code.family = CodeFamily::SurfacePatch;
    else if (family == "gb_grid")
        code.family = CodeFamily::GBGrid;
    else
        invalid(path + ".family", "unknown code family '" + family + "'");

    if (code.n < code.k)
        invalid(path, "n >= k >= 1 violated");
    if (code.family == CodeFamily::SurfacePatch &&
        code.n != static_cast<long>(code.d) * code.d)
        invalid(path, "surface patch requires n = d^2");

    const Node* layout_node = find(node, "layout");
    const Node* layout_file = find(node, "layout_file");
    if (layout_node != nullptr && layout_file != nullptr)
        invalid(path, "give either layout or layout_file, not both");
    if (layout_node != nullptr || layout_file != nullptr) {
        if (code.family != CodeFamily::GBGrid)
            invalid(path, "layouts only apply to gb_grid codes");
        if (layout_node != nullptr) {
            code.layout = bind_layout(*layout_node, path + ".layout");
        } else {
            const std::string rel = read_string(*layout_file, path + ".layout_file");
            std::filesystem::path resolved(rel);
            if (!resolved.is_absolute())
                resolved = std::filesystem::path(base_dir) / rel;
            code.layout = load_layout(resolved.string());
        }
        if (static_cast<long>(code.layout->data_positions.size()) != code.n)
            invalid(path, "layout data qubit count does not match n");
        const long ancillas = static_cast<long>(code.layout->x_checks.size() +
                                                code.layout->z_checks.size());
        if (ancillas != code.n)
            invalid(path, "gb grid expects n ancilla qubits (got " + std::to_string(ancillas) + ")");
    }
    return code;
}

ScenarioDef bind_scenario(const std::string& name, const Node& node, const std::string& path)
{
    require_object(node, path);
    ScenarioDef scenario;
    scenario.name = name;
    scenario.platform = read_string(require(node, "platform", path), path + ".platform");
    scenario.decoder = read_string(require(node, "decoder", path), path + ".decoder");
    if (const Node* n = find(node, "code"))
        scenario.code = read_string(*n, path + ".code");
    if (const Node* n = find(node, "match")) {
        require_object(*n, path + ".match");
        scenario.match_code = read_string(require(*n, "code", path + ".match"), path + ".match.code");
        scenario.match_decoder =
            read_string(require(*n, "decoder", path + ".match"), path + ".match.decoder");
    }
    if (scenario.code.has_value() == scenario.match_code.has_value())
        invalid(path, "scenario needs exactly one of 'code' or 'match'");
    if (const Node* n = find(node, "patches"))
        scenario.patches = static_cast<long>(read_count(*n, path + ".patches", 1));
    if (const Node* n = find(node, "parity")) {
        const std::string parity = read_string(*n, path + ".parity");
        if (parity == "odd")
            scenario.parity = MatchParity::Odd;
        else if (parity == "any")
            scenario.parity = MatchParity::Any;
        else
            invalid(path + ".parity", "expected 'odd' or 'any'");
    }
    if (const Node* n = find(node, "match_range")) {
        const auto range = read_int_list(*n, path + ".match_range");
        if (range.size() != 2 || range[0] < 1 || range[1] < range[0])
            invalid(path + ".match_range", "expected 'd_min d_max'");
        scenario.match_d_min = static_cast<int>(range[0]);
        scenario.match_d_max = static_cast<int>(range[1]);
    }
    if (const Node* n = find(node, "factory"))
        scenario.factory = read_bool(*n, path + ".factory");
    if (const Node* n = find(node, "t_sec"))
        scenario.t_sec_override = read_duration(*n, path + ".t_sec");
    return scenario;
}

CaseStudyDef bind_case_study(const std::string& name, const Node& node, const std::string& path)
{
    require_object(node, path);
    CaseStudyDef study;
    study.name = name;
    study.label = name;
    if (const Node* n = find(node, "label"))
        study.label = read_string(*n, path + ".label");
    const std::string style = read_string(require(node, "style", path), path + ".style");
    if (style == "lattice_surgery")
        study.style = CaseStudyStyle::LatticeSurgery;
    else if (style == "correlated")
        study.style = CaseStudyStyle::Correlated;
    else
        invalid(path + ".style", "unknown case-study style '" + style + "'");

    study.k = static_cast<long>(read_count(require(node, "k", path), path + ".k", 1));
    study.t_sec = read_duration(require(node, "t_sec", path), path + ".t_sec");
    if (study.style == CaseStudyStyle::LatticeSurgery) {
        study.t_r = read_duration(require(node, "t_r", path), path + ".t_r");
        study.d = static_cast<int>(read_count(require(node, "d", path), path + ".d", 1));
    } else if (const Node* n = find(node, "rounds_per_op")) {
        study.rounds_per_op = static_cast<long>(read_count(*n, path + ".rounds_per_op", 1));
    }
    study.runtime = read_duration(require(node, "runtime", path), path + ".runtime");
    study.toffoli_count = read_number(require(node, "toffoli", path), path + ".toffoli");
    if (study.toffoli_count < 0.0)
        invalid(path + ".toffoli", "must be non-negative");
    if (const Node* n = find(node, "clifford_per_toffoli")) {
        study.clifford_per_toffoli = read_number(*n, path + ".clifford_per_toffoli");
        if (!(study.clifford_per_toffoli > 0.0))
            invalid(path + ".clifford_per_toffoli", "must be positive");
    }
    if (const Node* n = find(node, "qubit_groups")) {
        require_object(*n, path + ".qubit_groups");
        for (const auto& [group_name, group_node] : n->items()) {
            const std::string group_path = path + ".qubit_groups." + group_name;
            require_object(group_node, group_path);
            QubitGroup group;
            group.name = group_name;
            group.patches = read_count(require(group_node, "patches", group_path),
                                       group_path + ".patches", 1);
            if (const Node* q = find(group_node, "qubits_per_patch"))
                group.qubits_per_patch = read_count(*q, group_path + ".qubits_per_patch", 1);
            if (const Node* q = find(group_node, "distance"))
                group.distance = static_cast<int>(read_count(*q, group_path + ".distance", 1));
            if (group.qubits_per_patch.has_value() == group.distance.has_value())
                invalid(group_path, "give exactly one of qubits_per_patch or distance");
            study.qubit_groups.push_back(std::move(group));
        }
    }
    if (const Node* n = find(node, "qubit_readings")) {
        require_object(*n, path + ".qubit_readings");
        for (const auto& [label, value] : n->items()) {
            const double count = read_number(value, path + ".qubit_readings." + label);
            if (!(count > 0.0))
                invalid(path + ".qubit_readings." + label, "must be positive");
            study.qubit_readings.emplace_back(label, count);
        }
    }
    return study;
}

void cross_check(const Config& config)
{
    for (const auto& scenario : config.scenarios) {
        const std::string where = "scenarios." + scenario.name;
        if (config.find_platform(scenario.platform) == nullptr)
            invalid(where, "unknown platform '" + scenario.platform + "'");
        if (config.find_decoder(scenario.decoder) == nullptr)
            invalid(where, "unknown decoder '" + scenario.decoder + "'");
        if (scenario.code && config.find_code(*scenario.code) == nullptr)
            invalid(where, "unknown code '" + *scenario.code + "'");
        if (scenario.match_code && config.find_code(*scenario.match_code) == nullptr)
            invalid(where, "unknown code '" + *scenario.match_code + "'");
        if (scenario.match_decoder && config.find_decoder(*scenario.match_decoder) == nullptr)
            invalid(where, "unknown decoder '" + *scenario.match_decoder + "'");
    }
    for (const auto& compare : config.comparisons) {
        const std::string where = "comparisons." + compare.name;
        const auto known = [&](const std::string& name) {
            return std::any_of(config.case_studies.begin(), config.case_studies.end(),
                               [&](const CaseStudyDef& s) { return s.name == name; });
        };
        if (!known(compare.a))
            invalid(where, "unknown case study '" + compare.a + "'");
        if (!known(compare.b))
            invalid(where, "unknown case study '" + compare.b + "'");
    }
}

cfg::Node fit_to_node(const FitModel& fit)
{
    Node node = Node::object();
    node["intercept"] = fit.intercept;
    node["slope"] = fit.slope;
    node["d_min"] = fit.d_min;
    node["d_max"] = fit.d_max;
    return node;
}

cfg::Node layout_to_node(const GridLayout& layout)
{
    Node node = Node::object();
    node["grid"] = Node::array({layout.rows, layout.cols});
    Node data = Node::array();
    for (const GridCoord& c : layout.data_positions) {
        data.push_back(c.row);
        data.push_back(c.col);
    }
    node["data"] = std::move(data);
    const auto checks_to_node = [](const std::vector<CheckDef>& checks) {
        // Re-group ancillas that share an offset list; one group object each.
        Node groups = Node::object();
        std::vector<std::vector<GridCoord>> seen;
        for (const CheckDef& check : checks) {
            size_t group_index = seen.size();
            for (size_t i = 0; i < seen.size(); ++i) {
                if (seen[i] == check.offsets) {
                    group_index = i;
                    break;
                }
            }
            if (group_index == seen.size()) {
                seen.push_back(check.offsets);
                Node group = Node::object();
                group["homes"] = Node::array();
                Node offsets = Node::array();
                for (const GridCoord& o : check.offsets) {
                    offsets.push_back(o.row);
                    offsets.push_back(o.col);
                }
                group["offsets"] = std::move(offsets);
                groups["group_" + std::to_string(group_index)] = std::move(group);
            }
            Node& homes = groups["group_" + std::to_string(group_index)]["homes"];
            homes.push_back(check.home.row);
            homes.push_back(check.home.col);
        }
        return groups;
    };
    node["x_checks"] = checks_to_node(layout.x_checks);
    node["z_checks"] = checks_to_node(layout.z_checks);
    Node parking = Node::array();
    for (const GridRect& rect : layout.parking_regions) {
        parking.push_back(rect.row0);
        parking.push_back(rect.col0);
        parking.push_back(rect.row1);
        parking.push_back(rect.col1);
    }
    node["parking_rects"] = std::move(parking);
    return node;
}

} // namespace

const HardwareParams* Config::find_platform(const std::string& name) const
{
    for (const auto& hw : platforms)
        if (hw.name == name)
            return &hw;
    return nullptr;
}

const CodeSpec* Config::find_code(const std::string& id) const
{
    for (const auto& code : codes)
        if (code.id == id)
            return &code;
    return nullptr;
}

const DecoderProfile* Config::find_decoder(const std::string& id) const
{
    for (const auto& decoder : decoders)
        if (decoder.id == id)
            return &decoder;
    return nullptr;
}

void validate_layout(const GridLayout& layout, const std::string& context)
{
    const auto in_grid = [&](GridCoord c) {
        return c.row >= 0 && c.row < layout.rows && c.col >= 0 && c.col < layout.cols;
    };
    std::set<std::pair<int, int>> data;
    for (const GridCoord& c : layout.data_positions) {
        if (!in_grid(c))
            invalid(context, "data position outside the grid");
        if (!data.emplace(c.row, c.col).second)
            invalid(context, "duplicate data position");
    }
    const auto check_group = [&](const std::vector<CheckDef>& checks, const char* label) {
        for (const CheckDef& check : checks) {
            if (!in_grid(check.home))
                invalid(context, std::string(label) + " ancilla home outside the grid");
            if (data.count({check.home.row, check.home.col}) != 0)
                invalid(context, std::string(label) + " ancilla home overlaps a data position");
            for (const GridCoord& offset : check.offsets) {
                const GridCoord target{check.home.row + offset.row, check.home.col + offset.col};
                if (!in_grid(target) || data.count({target.row, target.col}) == 0)
                    invalid(context, std::string(label) + " check offset does not land on a data qubit");
            }
        }
    };
    check_group(layout.x_checks, "x");
    check_group(layout.z_checks, "z");
    if (layout.parking_regions.empty())
        invalid(context, "layout needs at least one parking region");
    for (const GridRect& rect : layout.parking_regions) {
        if (rect.row0 < 0 || rect.col0 < 0 || rect.row1 >= layout.rows || rect.col1 >= layout.cols)
            invalid(context, "parking region outside the grid");
        for (const GridCoord& c : layout.data_positions)
            if (rect.contains(c))
                invalid(context, "parking region overlaps the data region");
    }
}

GridLayout load_layout(const std::string& path)
{
    const Node doc = cfg::load_document(path);
    const Node* layout = find(require_object(doc, path), "layout");
    if (layout == nullptr)
        throw ValidationError(path + ": missing 'layout' section");
    return bind_layout(*layout, path + ".layout");
}

Config config_from_node(const Node& root, const std::string& origin, const std::string& base_dir)
{
    require_object(root, origin);
    Config config;

    if (const Node* section = find(root, "platforms")) {
        require_object(*section, origin + ".platforms");
        for (const auto& [name, node] : section->items())
            config.platforms.push_back(bind_platform(name, node, origin + ".platforms." + name));
    }
    if (const Node* section = find(root, "codes")) {
        require_object(*section, origin + ".codes");
        for (const auto& [id, node] : section->items())
            config.codes.push_back(bind_code(id, node, origin + ".codes." + id, base_dir));
    }
    if (const Node* section = find(root, "decoders")) {
        require_object(*section, origin + ".decoders");
        for (const auto& [id, node] : section->items())
            config.decoders.push_back(
                bind_decoder(id, node, origin + ".decoders." + id, config.warnings));
    }
    if (const Node* section = find(root, "scenarios")) {
        require_object(*section, origin + ".scenarios");
        for (const auto& [name, node] : section->items())
            config.scenarios.push_back(bind_scenario(name, node, origin + ".scenarios." + name));
    }
    if (const Node* section = find(root, "case_studies")) {
        require_object(*section, origin + ".case_studies");
        for (const auto& [name, node] : section->items())
            config.case_studies.push_back(
                bind_case_study(name, node, origin + ".case_studies." + name));
    }
    if (const Node* section = find(root, "comparisons")) {
        require_object(*section, origin + ".comparisons");
        for (const auto& [name, node] : section->items()) {
            const std::string path = origin + ".comparisons." + name;
            require_object(node, path);
            CaseStudyCompare compare;
            compare.name = name;
            compare.a = read_string(require(node, "a", path), path + ".a");
            compare.b = read_string(require(node, "b", path), path + ".b");
            config.comparisons.push_back(std::move(compare));
        }
    }
    if (const Node* section = find(root, "distillation_search")) {
        const std::string path = origin + ".distillation_search";
        require_object(*section, path);
        config.distillation_search.d_min =
            static_cast<int>(read_count(require(*section, "d_min", path), path + ".d_min", 1));
        config.distillation_search.d_max =
            static_cast<int>(read_count(require(*section, "d_max", path), path + ".d_max", 1));
        if (config.distillation_search.d_max < config.distillation_search.d_min)
            invalid(path, "search range is empty");
    }

    cross_check(config);
    return config;
}

Config load_config(const std::string& path)
{
    const Node root = cfg::load_document(path);
    const std::string base_dir = std::filesystem::path(path).parent_path().string();
    return config_from_node(root, path, base_dir.empty() ? "." : base_dir);
}

cfg::Node to_node(const Config& config)
{
    Node root = Node::object();
    Node platforms = Node::object();
    for (const auto& hw : config.platforms) {
        Node node = Node::object();
        node["kind"] = (hw.kind == PlatformKind::Superconducting) ? "superconducting" : "neutral_atom";
        node["coherence_time"] = hw.coherence_time;
        node["gate_time_1q"] = hw.gate_time_1q;
        node["gate_time_2q"] = hw.gate_time_2q;
        node["infid_1q"] = hw.infid_1q;
        node["infid_2q"] = hw.infid_2q;
        node["readout_time"] = hw.readout_time;
        node["readout_error"] = hw.readout_error;
        node["prep_time"] = hw.prep_time;
        node["prep_error"] = hw.prep_error;
        if (hw.movement_error)
            node["movement_error"] = *hw.movement_error;
        if (hw.unintended_error)
            node["unintended_error"] = *hw.unintended_error;
        if (hw.movement_accel)
            node["movement_accel"] = *hw.movement_accel;
        if (hw.lattice_spacing)
            node["lattice_spacing"] = *hw.lattice_spacing;
        if (hw.fit)
            node["fit"] = fit_to_node(*hw.fit);
        platforms[hw.name] = std::move(node);
    }
    root["platforms"] = std::move(platforms);

    Node codes = Node::object();
    for (const auto& code : config.codes) {
        Node node = Node::object();
        node["family"] = (code.family == CodeFamily::SurfacePatch) ? "surface_patch" : "gb_grid";
        node["n"] = code.n;
        node["k"] = code.k;
        node["d"] = code.d;
        if (code.layout)
            node["layout"] = layout_to_node(*code.layout);
        codes[code.id] = std::move(node);
    }
    root["codes"] = std::move(codes);

    Node decoders = Node::object();
    for (const auto& decoder : config.decoders) {
        Node node = Node::object();
        node["mode"] = (decoder.mode == DecodeMode::ZOnly) ? "z_only" : "all_syndromes";
        Node entries = Node::object();
        const auto entry_to_node = [](const DecoderEntry& entry) {
            Node n = Node::object();
            n["t_r"] = entry.t_r;
            if (entry.p_l)
                n["p_l"] = *entry.p_l;
            if (entry.t_sec)
                n["t_sec"] = *entry.t_sec;
            return n;
        };
        for (const auto& [code_id, entry] : decoder.by_code)
            entries[code_id] = entry_to_node(entry);
        for (const auto& [d, entry] : decoder.by_distance)
            entries["d" + std::to_string(d)] = entry_to_node(entry);
        node["entries"] = std::move(entries);
        decoders[decoder.id] = std::move(node);
    }
    root["decoders"] = std::move(decoders);

    Node scenarios = Node::object();
    for (const auto& scenario : config.scenarios) {
        Node node = Node::object();
        node["platform"] = scenario.platform;
        node["decoder"] = scenario.decoder;
        if (scenario.code)
            node["code"] = *scenario.code;
        if (scenario.match_code) {
            Node match = Node::object();
            match["code"] = *scenario.match_code;
            match["decoder"] = *scenario.match_decoder;
            node["match"] = std::move(match);
        }
        if (scenario.patches)
            node["patches"] = *scenario.patches;
        node["parity"] = (scenario.parity == MatchParity::Odd) ? "odd" : "any";
        node["match_range"] = Node::array({scenario.match_d_min, scenario.match_d_max});
        node["factory"] = scenario.factory;
        if (scenario.t_sec_override)
            node["t_sec"] = *scenario.t_sec_override;
        scenarios[scenario.name] = std::move(node);
    }
    root["scenarios"] = std::move(scenarios);

    Node case_studies = Node::object();
    for (const auto& study : config.case_studies) {
        Node node = Node::object();
        node["label"] = study.label;
        node["style"] = (study.style == CaseStudyStyle::LatticeSurgery) ? "lattice_surgery" : "correlated";
        node["k"] = study.k;
        node["t_sec"] = study.t_sec;
        if (study.style == CaseStudyStyle::LatticeSurgery) {
            node["t_r"] = study.t_r;
            node["d"] = study.d;
        } else {
            node["rounds_per_op"] = study.rounds_per_op;
        }
        node["runtime"] = study.runtime;
        node["toffoli"] = study.toffoli_count;
        node["clifford_per_toffoli"] = study.clifford_per_toffoli;
        if (!study.qubit_groups.empty()) {
            Node groups = Node::object();
            for (const auto& group : study.qubit_groups) {
                Node g = Node::object();
                g["patches"] = group.patches;
                if (group.qubits_per_patch)
                    g["qubits_per_patch"] = *group.qubits_per_patch;
                if (group.distance)
                    g["distance"] = *group.distance;
                groups[group.name] = std::move(g);
            }
            node["qubit_groups"] = std::move(groups);
        }
        if (!study.qubit_readings.empty()) {
            Node readings = Node::object();
            for (const auto& [label, value] : study.qubit_readings)
                readings[label] = value;
            node["qubit_readings"] = std::move(readings);
        }
        case_studies[study.name] = std::move(node);
    }
    root["case_studies"] = std::move(case_studies);

    Node comparisons = Node::object();
    for (const auto& compare : config.comparisons) {
        Node node = Node::object();
        node["a"] = compare.a;
        node["b"] = compare.b;
        comparisons[compare.name] = std::move(node);
    }
    root["comparisons"] = std::move(comparisons);

    Node search = Node::object();
    search["d_min"] = config.distillation_search.d_min;
    search["d_max"] = config.distillation_search.d_max;
    root["distillation_search"] = std::move(search);
    return root;
}

const char* to_string(PlatformKind kind)
{
    return kind == PlatformKind::Superconducting ? "superconducting" : "neutral_atom";
}

const char* to_string(CodeFamily family)
{
    return family == CodeFamily::SurfacePatch ? "surface_patch" : "gb_grid";
}

const char* to_string(DecodeMode mode)
{
    return mode == DecodeMode::ZOnly ? "Z" : "ALL";
}

} // namespace qlops::model
