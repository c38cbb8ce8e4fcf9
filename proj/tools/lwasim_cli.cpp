#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lwa/metrics.hpp"
#include "lwa/scenario.hpp"
#include "lwa/simulator.hpp"

namespace {

constexpr const char* kSeedEnvVar = "LWASIM_SEED";

int cmd_run(const std::string& scenario_ref, const std::string& out_path, bool seed_set,
            std::uint64_t seed, bool duration_set, double duration, bool no_reorder) {
    lwa::scenario::Scenario s = lwa::scenario::resolve_scenario(scenario_ref);
    if (seed_set) {
        s.seed = seed;
    } else if (const char* env = std::getenv(kSeedEnvVar)) {
        s.seed = std::stoull(env);
    }
    if (duration_set) s.duration_s = duration;
    if (no_reorder) s.reorder.enabled = false;
    lwa::scenario::validate(s);

    lwa::metrics::Report report = lwa::sim::run(s);
    lwa::metrics::write_csv_file(report, out_path);

    const auto& sum = report.summary;
    std::cout << "scenario " << s.name << " seed " << s.seed << ": " << sum.sourced_sdus
              << " sdus offered, " << sum.delivered_sdus << " delivered, goodput "
              << sum.mean_goodput_bps / 1e6 << " Mbps, raw ooo " << sum.ooo_raw_fraction
              << ", skipped " << sum.reorder_skipped << ", late " << sum.reorder_late << "\n";
    std::cout << "wrote " << report.records.size() << " rows to " << out_path << "\n";
    if (sum.integrity_failures) {
        std::cerr << "integrity failures: " << sum.integrity_failures << "\n";
        return 2;
    }
    if (!sum.conservation_ok) {
        std::cerr << "flow conservation violated\n";
        return 2;
    }
    return 0;
}

int cmd_presets() {
    for (const auto& name : lwa::scenario::preset_names()) std::cout << name << "\n";
    return 0;
}

int cmd_validate(const std::string& scenario_ref) {
    lwa::scenario::Scenario s = lwa::scenario::resolve_scenario(scenario_ref);
    std::cout << "ok: " << s.name << " (" << s.duration_s << " s, seed " << s.seed << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LTE-WiFi split-bearer protocol engine and dual-link simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a scenario and write the metrics CSV");
    std::string scenario_ref, out_path;
    std::uint64_t seed = 0;
    double duration = 0.0;
    bool no_reorder = false;
    run->add_option("--scenario", scenario_ref,
                    "Scenario file path, or presets:<name>")
        ->required();
    run->add_option("--out", out_path, "Output CSV path")->required();
    auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
    auto* dur_opt = run->add_option("--duration", duration, "Override the duration in seconds");
    run->add_flag("--no-reorder", no_reorder, "Disable the UE reorder buffer");

    auto* presets = app.add_subcommand("presets", "List built-in scenarios");

    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    std::string validate_ref;
    validate->add_option("--scenario", validate_ref, "Scenario file path, or presets:<name>")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(run))
            return cmd_run(scenario_ref, out_path, seed_opt->count() > 0, seed,
                           dur_opt->count() > 0, duration, no_reorder);
        if (app.got_subcommand(presets)) return cmd_presets();
        if (app.got_subcommand(validate)) return cmd_validate(validate_ref);
    } catch (const lwa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const lwa::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
