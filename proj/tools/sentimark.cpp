// Command-line front door: ingest, run, synth, select-terms, regress.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sentimark/errors.hpp"
#include "sentimark/pipeline.hpp"
#include "sentimark/synth.hpp"

namespace {

using sentimark::Errc;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::RankDeficient:
        case Errc::Underdetermined:
        case Errc::ZeroVariance:
        case Errc::DegenerateTable:
            return 2;
        case Errc::Internal:
            return 3;
        default:
            return 1;
    }
}

std::map<std::string, std::string> parse_overrides(
    const std::vector<std::string>& sets) {
    std::map<std::string, std::string> overrides;
    for (const auto& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            sentimark::fail(Errc::BadConfig, "--set expects key=value, got '" + kv + "'");
        }
        overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return overrides;
}

std::string default_config_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SENTIMARK_CONFIG")) return env;
    return "config.ini";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sentimark: social-media sentiment vs used-car prices"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string series_csv;

    auto add_config_opts = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path,
                        "config file (default $SENTIMARK_CONFIG or config.ini)");
        cmd->add_option("--set", sets, "override a config key, key=value")
            ->take_all();
    };

    CLI::App* ingest = app.add_subcommand("ingest", "validate all configured inputs");
    add_config_opts(ingest);

    CLI::App* run = app.add_subcommand("run", "score, partition, aggregate, regress");
    add_config_opts(run);

    CLI::App* select = app.add_subcommand("select-terms",
                                          "chi-square salient-term selection only");
    add_config_opts(select);

    CLI::App* regress = app.add_subcommand("regress",
                                           "regression grid from a series CSV");
    add_config_opts(regress);
    regress->add_option("--series", series_csv, "precomputed series CSV")->required();

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic fixture");
    sentimark::SyntheticSpec spec;
    std::string synth_outdir = "fixture";
    std::string price_dataset = "D2";
    double beta_s = 0.9;
    synth->add_option("--outdir", synth_outdir, "output directory");
    synth->add_option("--seed", spec.seed, "random seed");
    synth->add_option("--docs", spec.n_docs, "event corpus size");
    synth->add_option("--base-docs", spec.n_base_docs, "baseline corpus size");
    synth->add_option("--listings", spec.n_listings, "listing count");
    synth->add_option("--beta-s", beta_s, "planted S coefficient");
    synth->add_option("--noise", spec.noise_sigma, "price noise sigma");
    synth->add_option("--geo-amp", spec.geo_amplitude, "geo sentiment drift amplitude");
    synth->add_option("--interest-amp", spec.interest_amplitude,
                      "interest sentiment drift amplitude");
    synth->add_option("--price-dataset", price_dataset,
                      "dataset whose series drives prices (D1..D4)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            spec.planted_beta["S"] = beta_s;
            spec.price_dataset = sentimark::parse_dataset(price_dataset);
            auto output = sentimark::generate_fixture(spec, synth_outdir);
            std::cout << "wrote " << output.files.size() << " files to "
                      << synth_outdir << "\n";
            return 0;
        }

        auto overrides = parse_overrides(sets);
        auto config = sentimark::load_config(default_config_path(config_path),
                                             overrides);

        if (ingest->parsed()) {
            auto summary = sentimark::cmd_ingest(config, std::cout);
            std::cout << "documents: " << summary.documents << "\n";
            return 0;
        }
        if (run->parsed()) {
            auto result = sentimark::cmd_run(config, std::cout);
            std::cout << "wrote " << result.outputs.size() << " files to "
                      << config.outdir << "\n";
            if (result.all_cells_failed) {
                std::cerr << "error: every grid cell failed numerically\n";
                return 2;
            }
            return 0;
        }
        if (select->parsed()) {
            sentimark::cmd_select_terms(config, std::cout);
            return 0;
        }
        if (regress->parsed()) {
            auto grid = sentimark::cmd_regress(config, series_csv, std::cout);
            bool all_failed =
                !grid.empty() &&
                std::all_of(grid.begin(), grid.end(),
                            [](const sentimark::FitResult& f) { return !f.ok(); });
            if (all_failed) {
                std::cerr << "error: every grid cell failed numerically\n";
                return 2;
            }
            return 0;
        }
    } catch (const sentimark::PipelineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
