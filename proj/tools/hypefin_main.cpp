// hypefin: news-sentiment scoring, measure reweighting, and direction
// forecasting over CSV inputs. See README.md for the file formats.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hypefin/errors.hpp"
#include "hypefin/pipeline.hpp"

namespace {

using hypefin::pipeline::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& config, std::string& config_path) {
    cmd->add_option("--config", config_path, "key = value config file; flags override");
    cmd->add_option("--news", config.news_path, "news CSV (date,ticker,source,title,score)");
    cmd->add_option("--prices", config.prices_path, "price CSV (date,ticker,close)");
    cmd->add_option("--weights", config.weights_path,
                    "weight-table CSV or builtin:appendix_a");
    cmd->add_option("--out-dir", config.out_dir, "output directory");
    cmd->add_option("--dedupe-threshold", config.dedupe_threshold,
                    "title Jaccard threshold for duplicate removal");
    cmd->add_option("--w-today", config.params.w_today, "today weight");
    cmd->add_option("--w-past-pos-to-neg", config.params.w_past_pos_to_neg,
                    "past weight on positive-to-negative shifts");
    cmd->add_option("--w-past-neg-to-pos", config.params.w_past_neg_to_pos,
                    "past weight on negative-to-positive shifts");
    cmd->add_option("--w-past-no-shift", config.params.w_past_no_shift,
                    "past weight when direction is unchanged");
    cmd->add_option("--neutral-band", config.params.neutral_band,
                    "scores inside (-band, band) count as neutral");
    cmd->add_option("--memory-cutoff", config.params.memory_cutoff,
                    "carried weight below this resets the recursion");
    cmd->add_flag("--use-grid", config.use_grid, "search the default parameter grid");
    cmd->add_option("--grid-step", config.grid_step, "grid resolution");
    cmd->add_option("--train-frac", config.split.train_frac, "training fraction");
    cmd->add_option("--val-frac", config.split.val_frac, "validation fraction");
    cmd->add_option("--test-frac", config.split.test_frac, "test fraction");
    cmd->add_option("--split-seed", config.split.seed, "base split seed");
    cmd->add_option("--split-mode", [&config](const std::vector<std::string>& v) {
        hypefin::pipeline::apply_config_line(config, "split_mode", v.front());
        return true;
    }, "random or chronological");
    cmd->add_option("--n-states", config.n_states, "random states to sweep");
    cmd->add_option("--target", [&config](const std::vector<std::string>& v) {
        hypefin::pipeline::apply_config_line(config, "target", v.front());
        return true;
    }, "return_direction or volatility_direction");
    cmd->add_option("--measure-mode", [&config](const std::vector<std::string>& v) {
        hypefin::pipeline::apply_config_line(config, "measure_mode", v.front());
        return true;
    }, "off, sector_reweight, or three_state");
    cmd->add_option("--model", [&config](const std::vector<std::string>& v) {
        hypefin::pipeline::apply_config_line(config, "model", v.front());
        return true;
    }, "lda or logistic");
    cmd->add_option("--vol-window", config.vol_window, "rolling volatility window (days)");
    cmd->add_option("--annualization", config.annualization, "volatility annualization factor");
    cmd->add_option("--hype-window", config.hype_window, "hype detection window (days)");
    cmd->add_option("--hype-baseline", config.hype_baseline, "hype baseline span (days)");
    cmd->add_option("--hype-threshold", config.hype_threshold,
                    "sentiment-vs-price gap for hype classification");
    cmd->add_option("--kappa", config.kappa, "measure dampening parameter");
    cmd->add_option("--synth-spec", config.synth_spec_path, "generator spec file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"news-sentiment forecasting with hype-adjusted measure reweighting"};
    app.require_subcommand(1);

    struct Cmd {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&);
    };
    const Cmd cmds[] = {
        {"ingest", "parse, dedupe, and normalize news + price CSVs",
         hypefin::pipeline::cmd_ingest},
        {"score", "compute daily and compound sentiment series",
         hypefin::pipeline::cmd_score},
        {"forecast", "sweep classifiers and emit reports + comparison",
         hypefin::pipeline::cmd_forecast},
        {"hype", "per-ticker hype report and reweighting factors",
         hypefin::pipeline::cmd_hype},
        {"synth", "generate a synthetic news/price dataset",
         hypefin::pipeline::cmd_synth},
    };

    RunConfig config;
    std::string config_path;

    // Load the config file before CLI11 parses, so flags override file values.
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            config_path = arg.substr(9);
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << config_path << "\n";
            return 1;
        }
        try {
            config = hypefin::pipeline::load_config(in);
        } catch (const hypefin::ConfigError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    for (const auto& c : cmds)
        add_common_options(app.add_subcommand(c.name, c.help), config, config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (const auto& c : cmds)
            if (app.get_subcommand(c.name)->parsed()) return c.run(config);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const hypefin::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const hypefin::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
