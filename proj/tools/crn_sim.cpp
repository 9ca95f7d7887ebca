// crn_sim: seeded experiment runner. Writes <out>/<suite>.csv.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "crn/config.hpp"
#include "crn/experiments.hpp"

namespace {

struct Options {
    std::string config_path;
    std::int64_t seed_offset = 0;
    std::string out_dir;
};

void print_error(const std::string& field, const std::string& message) {
    std::cerr << "error field=" << field << " message=\"" << message << "\"\n";
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw crn::ConfigError("--out", "cannot write '" + (dir / name).string() + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed spectrum access simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file (absent keys keep defaults)");
    app.add_option("--seed-offset", opt.seed_offset, "added to every configured seed")->check(CLI::NonNegativeNumber);
    app.add_option("--out", opt.out_dir, "output directory (default: $CRN_SIM_OUT or output.directory)");

    auto* convergence = app.add_subcommand("convergence", "summed Winner weight per mini-round");
    auto* regret = app.add_subcommand("regret", "regret curves for the learning policies");
    auto* periodic = app.add_subcommand("periodic", "throughput under periodic weight updates");
    auto* bench = app.add_subcommand("mwis-bench", "exact vs PTAS vs distributed MWIS");
    bool no_enforce = false;
    bench->add_flag("--no-enforce", no_enforce, "report ratio violations instead of failing");

    CLI11_PARSE(app, argc, argv);

    try {
        crn::ExperimentConfig config;
        if (!opt.config_path.empty()) config = crn::load_config(opt.config_path);
        config.apply_seed_offset(static_cast<std::uint64_t>(opt.seed_offset));
        crn::validate(config);

        std::filesystem::path dir = config.output.directory;
        if (const char* env = std::getenv("CRN_SIM_OUT"); env && *env) dir = env;
        if (!opt.out_dir.empty()) dir = opt.out_dir;

        if (convergence->parsed()) {
            auto result = crn::run_convergence_suite(config);
            auto out = open_output(dir, "convergence.csv");
            crn::write_convergence_csv(out, result);
        } else if (regret->parsed()) {
            auto result = crn::run_regret_suite(config);
            auto out = open_output(dir, "regret.csv");
            crn::write_regret_csv(out, result, config.output.record_every);
        } else if (periodic->parsed()) {
            auto result = crn::run_periodic_suite(config);
            auto out = open_output(dir, "periodic.csv");
            crn::write_periodic_csv(out, result);
        } else if (bench->parsed()) {
            auto result = crn::run_mwis_bench(config, !no_enforce);
            auto out = open_output(dir, "mwis_bench.csv");
            crn::write_bench_csv(out, result);
        }
    } catch (const crn::ConfigError& e) {
        print_error(e.field(), e.detail());
        return 2;
    } catch (const std::exception& e) {
        print_error("<run>", e.what());
        return 1;
    }
    return 0;
}
