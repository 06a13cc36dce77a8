#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qpg/error.hpp"
#include "qpg/scenario.hpp"

namespace qpg {

namespace {

constexpr std::array kTaskNames{"phasematch", "transfer", "schmidt", "efficiency", "selectivity", "herald"};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// ini_parser keeps trailing "; note" in the value
std::string_view strip_comment(std::string_view s) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == ';' || s[i] == '#') && (s[i - 1] == ' ' || s[i - 1] == '\t')) return s.substr(0, i);
    }
    return s;
}

[[noreturn]] void bad_value(std::string_view path, std::string_view text, std::string_view what) {
    throw ParseError("bad_value",
                     std::string(path) + ": cannot read '" + std::string(text) + "' as " + std::string(what));
}

double read_real(std::string_view path, std::string_view text) {
    const auto t = trim(text);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || p != t.data() + t.size() || !std::isfinite(v)) bad_value(path, text, "a number");
    return v;
}

long long read_integer(std::string_view path, std::string_view text) {
    const auto t = trim(text);
    long long v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || p != t.data() + t.size()) bad_value(path, text, "an integer");
    return v;
}

std::size_t read_count(std::string_view path, std::string_view text) {
    const long long v = read_integer(path, text);
    if (v < 0) throw ValidationError("invalid_value", std::string(path) + " must be non-negative");
    return static_cast<std::size_t>(v);
}

bool read_bool(std::string_view path, std::string_view text) {
    const auto t = trim(text);
    if (t == "true" || t == "yes" || t == "1") return true;
    if (t == "false" || t == "no" || t == "0") return false;
    bad_value(path, text, "a boolean");
}

std::vector<cplx> read_coefficients(std::string_view path, std::string_view text) {
    std::vector<cplx> out;
    std::string s(text);
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) {
            out.emplace_back(read_real(path, tok), 0.0);
        } else {
            std::string_view v(tok);
            out.emplace_back(read_real(path, v.substr(0, colon)), read_real(path, v.substr(colon + 1)));
        }
    }
    if (out.empty()) bad_value(path, text, "a coefficient list");
    return out;
}

std::string write_coefficients(const std::vector<cplx>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ", ";
        s += format_double(c[i].real());
        if (c[i].imag() != 0.0) s += ":" + format_double(c[i].imag());
    }
    return s;
}

enum class Kind { Real, Integer, Boolean, Text };

struct Field {
    std::string_view path;
    Kind kind;
    std::function<void(Scenario&, std::string_view)> set;
    std::function<std::optional<std::string>(const Scenario&)> get;
};

template <class T>
Field real_field(std::string_view path, T Scenario::*member) {
    return {path, Kind::Real,
            [path, member](Scenario& s, std::string_view v) { s.*member = read_real(path, v); },
            [member](const Scenario& s) -> std::optional<std::string> {
                if constexpr (std::is_same_v<T, std::optional<double>>) {
                    if (!(s.*member)) return std::nullopt;
                    return format_double(*(s.*member));
                } else {
                    return format_double(s.*member);
                }
            }};
}

Field count_field(std::string_view path, std::size_t Scenario::*member) {
    return {path, Kind::Integer,
            [path, member](Scenario& s, std::string_view v) { s.*member = read_count(path, v); },
            [member](const Scenario& s) -> std::optional<std::string> { return std::to_string(s.*member); }};
}

Field int_field(std::string_view path, int Scenario::*member) {
    return {path, Kind::Integer,
            [path, member](Scenario& s, std::string_view v) {
                const long long x = read_integer(path, v);
                if (x < -1000000 || x > 1000000) throw ValidationError("invalid_value", std::string(path) + " out of range");
                s.*member = static_cast<int>(x);
            },
            [member](const Scenario& s) -> std::optional<std::string> { return std::to_string(s.*member); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back({"task", Kind::Text, [](Scenario& s, std::string_view v) { s.task = parse_task(trim(v)); },
                     [](const Scenario& s) -> std::optional<std::string> { return std::string(task_name(s.task)); }});

        f.push_back(real_field("material.length_mm", &Scenario::length_mm));
        f.push_back(real_field("material.poling_period_um", &Scenario::poling_period_um));
        f.push_back(real_field("material.temperature_c", &Scenario::temperature_c));
        f.push_back(int_field("material.qpm_order", &Scenario::qpm_order));
        f.push_back({"material.polarization", Kind::Text,
                     [](Scenario& s, std::string_view v) { s.polarization = Polarization::parse(trim(v)); },
                     [](const Scenario& s) -> std::optional<std::string> { return s.polarization.str(); }});
        f.push_back({"material.calibrate", Kind::Text,
                     [](Scenario& s, std::string_view v) { s.calibrate = parse_calibration(trim(v)); },
                     [](const Scenario& s) -> std::optional<std::string> {
                         return std::string(calibration_name(s.calibrate));
                     }});
        f.push_back(real_field("material.delta_k_offset", &Scenario::delta_k_offset));

        f.push_back(real_field("gating.center_nm", &Scenario::gating_center_nm));
        f.push_back(real_field("gating.fwhm_nm", &Scenario::gating_fwhm_nm));
        f.push_back({"gating.order", Kind::Integer,
                     [](Scenario& s, std::string_view v) {
                         const long long x = read_integer("gating.order", v);
                         if (x < 0 || x > ModeSpec::kDefaultMaxOrder) {
                             throw ValidationError("invalid_value", "gating.order must lie in [0, 20]");
                         }
                         s.gating_order = static_cast<int>(x);
                     },
                     [](const Scenario& s) -> std::optional<std::string> {
                         if (!s.gating_order) return std::nullopt;
                         return std::to_string(*s.gating_order);
                     }});
        f.push_back({"gating.coefficients", Kind::Text,
                     [](Scenario& s, std::string_view v) {
                         s.gating_coefficients = read_coefficients("gating.coefficients", v);
                     },
                     [](const Scenario& s) -> std::optional<std::string> {
                         if (s.gating_coefficients.empty()) return std::nullopt;
                         return write_coefficients(s.gating_coefficients);
                     }});

        f.push_back(real_field("input.center_nm", &Scenario::input_center_nm));
        f.push_back(real_field("input.fwhm_ratio", &Scenario::fwhm_ratio));
        f.push_back(real_field("input.span_sigma", &Scenario::span_sigma));
        f.push_back(count_field("input.n_points", &Scenario::n_points));

        f.push_back(real_field("gate.theta", &Scenario::theta));
        f.push_back(real_field("gate.power_w", &Scenario::power_w));
        f.push_back(real_field("gate.gamma", &Scenario::gamma));
        f.push_back(real_field("gate.theta_max", &Scenario::theta_max));
        f.push_back(count_field("gate.steps", &Scenario::steps));

        f.push_back(count_field("schmidt.rank", &Scenario::rank));

        f.push_back(int_field("selectivity.max_gate_order", &Scenario::max_gate_order));
        f.push_back(int_field("selectivity.max_input_order", &Scenario::max_input_order));
        f.push_back({"selectivity.matched", Kind::Boolean,
                     [](Scenario& s, std::string_view v) { s.matched = read_bool("selectivity.matched", v); },
                     [](const Scenario& s) -> std::optional<std::string> {
                         return std::string(s.matched ? "true" : "false");
                     }});

        f.push_back(real_field("herald.source_schmidt_number", &Scenario::source_schmidt_number));
        f.push_back(count_field("herald.source_modes", &Scenario::source_modes));

        f.push_back({"output.dir", Kind::Text,
                     [](Scenario& s, std::string_view v) { s.output_dir = std::string(trim(v)); },
                     [](const Scenario& s) -> std::optional<std::string> { return s.output_dir; }});
        f.push_back({"output.prefix", Kind::Text,
                     [](Scenario& s, std::string_view v) { s.prefix = std::string(trim(v)); },
                     [](const Scenario& s) -> std::optional<std::string> {
                         if (s.prefix.empty()) return std::nullopt;
                         return s.prefix;
                     }});
        return f;
    }();
    return table;
}

const Field& field(std::string_view path) {
    for (const auto& f : fields()) {
        if (f.path == path) return f;
    }
    throw ValidationError("unknown_parameter", "unknown scenario key '" + std::string(path) + "'");
}

std::pair<std::string_view, std::string_view> split_path(std::string_view path) {
    const auto dot = path.find('.');
    if (dot == std::string_view::npos) return {{}, path};
    return {path.substr(0, dot), path.substr(dot + 1)};
}

bool is_section(std::string_view name) {
    return std::any_of(fields().begin(), fields().end(),
                       [name](const Field& f) { return split_path(f.path).first == name; });
}

void require(bool ok, const char* code, const std::string& message) {
    if (!ok) throw ValidationError(code, message);
}

}  // namespace

Task parse_task(std::string_view text) {
    if (text.empty()) throw ValidationError("missing_task", "scenario has no task");
    for (std::size_t i = 0; i < kTaskNames.size(); ++i) {
        if (text == kTaskNames[i]) return static_cast<Task>(i);
    }
    throw ValidationError("unknown_task", "unknown task '" + std::string(text) + "'");
}

std::string_view task_name(Task t) { return kTaskNames[static_cast<std::size_t>(t)]; }

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

void Scenario::validate() const {
    require(length_mm > 0.0, "invalid_value", "material.length_mm must be positive");
    require(poling_period_um > 0.0, "invalid_value", "material.poling_period_um must be positive");
    require(temperature_c >= SellmeierModel::kMinTemperatureC && temperature_c <= SellmeierModel::kMaxTemperatureC,
            "invalid_value", "material.temperature_c outside the Sellmeier range [20, 250]");
    require(qpm_order > 0 && qpm_order % 2 == 1, "invalid_value", "material.qpm_order must be a positive odd integer");
    require(!delta_k_offset || calibrate == Calibration::None, "conflicting_offset",
            "material.delta_k_offset needs calibrate = none");

    require(gating_center_nm > 0.0 && input_center_nm > 0.0, "invalid_value", "center wavelengths must be positive");
    require(gating_fwhm_nm > 0.0, "invalid_value", "gating.fwhm_nm must be positive");
    require(!(gating_order && !gating_coefficients.empty()), "conflicting_gating",
            "set gating.order or gating.coefficients, not both");
    require(gating_coefficients.size() <= static_cast<std::size_t>(ModeSpec::kDefaultMaxOrder) + 1, "invalid_value",
            "gating.coefficients holds at most 21 entries");
    if (!gating_coefficients.empty()) {
        require(std::any_of(gating_coefficients.begin(), gating_coefficients.end(),
                            [](cplx c) { return c != cplx{}; }),
                "zero_coefficients", "gating.coefficients are all zero");
    }

    require(fwhm_ratio > 0.0, "invalid_value", "input.fwhm_ratio must be positive");
    require(span_sigma > 0.0, "invalid_value", "input.span_sigma must be positive");
    require(n_points >= 16, "invalid_value", "input.n_points must be at least 16");

    require(!(theta && power_w), "conflicting_coupling", "set gate.theta or gate.power_w, not both");
    require(!theta || *theta >= 0.0, "invalid_value", "gate.theta must be non-negative");
    require(!power_w || *power_w >= 0.0, "invalid_value", "gate.power_w must be non-negative");
    require(gamma > 0.0, "invalid_value", "gate.gamma must be positive");
    require(theta_max > 0.0, "invalid_value", "gate.theta_max must be positive");
    require(steps >= 2, "invalid_value", "gate.steps must be at least 2");

    require(rank >= 1 && rank <= n_points, "invalid_value", "schmidt.rank must lie in [1, n_points]");

    require(max_gate_order >= 0 && max_gate_order <= ModeSpec::kDefaultMaxOrder && max_input_order >= 0 &&
                max_input_order <= ModeSpec::kDefaultMaxOrder,
            "invalid_value", "selectivity orders must lie in [0, 20]");

    require(source_schmidt_number >= 1.0, "invalid_value", "herald.source_schmidt_number must be >= 1");
    require(source_modes >= 1, "invalid_value", "herald.source_modes must be positive");

    require(!output_dir.empty(), "invalid_value", "output.dir must not be empty");
    require(prefix.find_first_of("/\\") == std::string::npos, "invalid_value",
            "output.prefix must not contain path separators");
}

QpgSetup Scenario::setup() const {
    QpgSetup s;
    s.input_center_nm = input_center_nm;
    s.gate_center_nm = gating_center_nm;
    s.gate_fwhm_nm = gating_fwhm_nm;
    s.fwhm_ratio = fwhm_ratio;
    if (gating_order) {
        s.gate_coefficients.assign(static_cast<std::size_t>(*gating_order) + 1, cplx{});
        s.gate_coefficients.back() = 1.0;
    } else if (!gating_coefficients.empty()) {
        s.gate_coefficients = gating_coefficients;
    }
    s.material.length = length_mm * 1e-3;
    s.material.poling_period = poling_period_um * 1e-6;
    s.material.temperature = temperature_c;
    s.material.qpm_order = qpm_order;
    s.material.polarization = polarization;
    s.material.delta_k_offset = delta_k_offset.value_or(0.0);
    s.calibration = calibrate;
    s.n_points = n_points;
    s.span_sigmas = span_sigma;
    return s;
}

std::optional<double> Scenario::coupling() const {
    if (theta) return *theta;
    if (power_w) return gamma * std::sqrt(*power_w);
    return std::nullopt;
}

std::string Scenario::effective_prefix() const { return prefix.empty() ? std::string(task_name(task)) : prefix; }

std::vector<std::string> parameter_paths() {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.emplace_back(f.path);
    return out;
}

void set_parameter(Scenario& s, std::string_view path, std::string_view value) { field(path).set(s, value); }

std::string get_parameter(const Scenario& s, std::string_view path) {
    return field(path).get(s).value_or(std::string{});
}

Scenario parse_scenario(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError("parse_error", std::string("line ") + std::to_string(e.line()) + ": " + e.message());
    }
    Scenario s;
    bool have_task = false;
    for (const auto& [key, node] : tree) {
        if (node.empty()) {
            if (node.data().empty() && is_section(key)) continue;  // empty [section]
            if (key == "task") have_task = true;
            field(key).set(s, strip_comment(node.data()));
            continue;
        }
        for (const auto& [sub, leaf] : node) {
            field(key + "." + sub).set(s, strip_comment(leaf.data()));
        }
    }
    if (!have_task) throw ValidationError("missing_task", "scenario has no task");
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("unreadable", "cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string to_ini(const Scenario& s) {
    std::string out;
    std::string_view section;
    for (const auto& f : fields()) {
        const auto value = f.get(s);
        if (!value) continue;
        const auto [sec, key] = split_path(f.path);
        if (sec != section) {
            out += "\n[" + std::string(sec) + "]\n";
            section = sec;
        }
        out += std::string(key) + " = " + *value + "\n";
    }
    return out;
}

nlohmann::json to_json(const Scenario& s) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& f : fields()) {
        const auto value = f.get(s);
        if (!value) continue;
        const auto [sec, key] = split_path(f.path);
        nlohmann::json v;
        switch (f.kind) {
            case Kind::Real: v = read_real(f.path, *value); break;
            case Kind::Integer: v = read_integer(f.path, *value); break;
            case Kind::Boolean: v = read_bool(f.path, *value); break;
            case Kind::Text: v = *value; break;
        }
        if (sec.empty()) {
            j[std::string(key)] = v;
        } else {
            j[std::string(sec)][std::string(key)] = v;
        }
    }
    return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("invalid_scenario", "scenario JSON must be an object");
    auto text_of = [](const std::string& path, const nlohmann::json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) return format_double(v.get<double>());
        throw ValidationError("invalid_value", path + " has an unsupported JSON type");
    };
    Scenario s;
    bool have_task = false;
    for (const auto& [key, node] : j.items()) {
        if (!node.is_object()) {
            if (key == "task") have_task = true;
            field(key).set(s, text_of(key, node));
            continue;
        }
        for (const auto& [sub, leaf] : node.items()) {
            const std::string path = key + "." + sub;
            field(path).set(s, text_of(path, leaf));
        }
    }
    if (!have_task) throw ValidationError("missing_task", "scenario has no task");
    s.validate();
    return s;
}

}  // namespace qpg
