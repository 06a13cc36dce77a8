#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "qpg/error.hpp"
#include "qpg/scenario.hpp"

namespace {

int exit_code(const qpg::Error& e) {
    switch (e.category()) {
        case qpg::Error::Category::Parse: return 2;
        case qpg::Error::Category::Validation:
        case qpg::Error::Category::Domain: return 3;
        case qpg::Error::Category::Numeric: return 4;
    }
    return 1;
}

std::string_view category_name(qpg::Error::Category c) {
    switch (c) {
        case qpg::Error::Category::Parse: return "parse";
        case qpg::Error::Category::Validation: return "validation";
        case qpg::Error::Category::Domain: return "domain";
        case qpg::Error::Category::Numeric: return "numeric";
    }
    return "unknown";
}

void report(std::string_view code, std::string_view category, std::string_view message) {
    nlohmann::json j = {{"error", {{"code", code}, {"category", category}, {"message", message}}}};
    std::cerr << j.dump() << '\n';
}

struct Overrides {
    std::optional<std::string> out_dir;
    std::optional<std::size_t> resolution;

    void apply(qpg::Scenario& s) const {
        if (out_dir) s.output_dir = *out_dir;
        if (resolution) s.n_points = *resolution;
        s.validate();
    }
};

void print_paths(const std::vector<std::filesystem::path>& paths) {
    for (const auto& p : paths) std::cout << p.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum pulse gate simulator"};
    app.require_subcommand(1);

    Overrides overrides;
    auto add_overrides = [&](CLI::App* cmd) {
        cmd->add_option("--out-dir", overrides.out_dir, "Directory for artifacts (overrides output.dir)");
        cmd->add_option("--resolution", overrides.resolution, "Grid points per band (overrides input.n_points)")
            ->check(CLI::Range(16, 1 << 14));
    };

    std::string scenario_file;
    auto* run = app.add_subcommand("run", "Evaluate a scenario file");
    run->add_option("file", scenario_file, "Scenario file")->required();
    add_overrides(run);

    std::string param;
    std::vector<std::string> values;
    unsigned threads = 0;
    auto* sw = app.add_subcommand("sweep", "Evaluate a scenario once per parameter value");
    sw->add_option("file", scenario_file, "Scenario file")->required();
    sw->add_option("--param", param, "Dotted parameter path, e.g. material.length_mm")->required();
    sw->add_option("--values", values, "Comma-separated values")->delimiter(',')->expected(0, -1)->required();
    sw->add_option("--threads", threads, "Worker threads (0: all cores)");
    add_overrides(sw);

    auto* presets = app.add_subcommand("presets", "List or print the shipped scenarios");
    presets->require_subcommand(1);
    presets->add_subcommand("list", "List preset names");
    std::string preset_name, emit_to;
    auto* emit = presets->add_subcommand("emit", "Print a preset's scenario text");
    emit->add_option("name", preset_name, "Preset name")->required();
    emit->add_option("-o,--output", emit_to, "Write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            qpg::Scenario s = qpg::load_scenario(scenario_file);
            overrides.apply(s);
            print_paths(qpg::write_artifacts(qpg::run_scenario(s), s.output_dir));
        } else if (sw->parsed()) {
            qpg::Scenario s = qpg::load_scenario(scenario_file);
            overrides.apply(s);
            // a bare --values arrives as one empty string
            std::erase(values, std::string{});
            print_paths(qpg::write_sweep(qpg::sweep(s, param, values, threads), s.output_dir));
        } else if (presets->got_subcommand("list")) {
            for (const auto& p : qpg::presets()) std::cout << p.name << "\t" << p.description << '\n';
        } else if (emit->parsed()) {
            const auto& p = qpg::find_preset(preset_name);
            if (emit_to.empty()) {
                std::cout << p.text;
            } else {
                std::ofstream out(emit_to, std::ios::binary);
                out << p.text;
                if (!out) throw qpg::ValidationError("unwritable", "cannot write " + emit_to);
            }
        }
    } catch (const qpg::Error& e) {
        report(e.code(), category_name(e.category()), e.what());
        return exit_code(e);
    } catch (const std::exception& e) {
        report("internal", "internal", e.what());
        return 1;
    }
    return 0;
}
