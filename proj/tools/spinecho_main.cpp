// spinecho: Loschmidt echo and Berry phase sweeps for a central spin coupled
// to an XY chain. Subcommands build the same config document the `run`
// subcommand reads from a file, so flags and file keys stay in lockstep.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinecho/errors.hpp"
#include "spinecho/sweep.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::vector<double> gammas;
    double lambda_single = 0.0;
    double lambda_lo = 0.0, lambda_hi = 0.0, lambda_step = 0.0;
    std::vector<int> sizes;
    double mu = 0.0, nu = 0.0, g = 0.0, delta = 0.0;
    std::string output;
    std::string format;
    int threads = -1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--gammas", f.gammas, "chain anisotropy values");
    cmd->add_option("--lambda", f.lambda_single, "single transverse field value");
    cmd->add_option("--lambda-lo", f.lambda_lo, "field grid start");
    cmd->add_option("--lambda-hi", f.lambda_hi, "field grid end");
    cmd->add_option("--lambda-step", f.lambda_step, "field grid step");
    cmd->add_option("--sizes", f.sizes, "chain sizes N (0 = thermodynamic limit)");
    cmd->add_option("--mu", f.mu, "central spin sigma_z coefficient (x2)");
    cmd->add_option("--nu", f.nu, "central spin sigma_x coefficient (x2)");
    cmd->add_option("--g", f.g, "central spin/chain coupling");
    cmd->add_option("--delta", f.delta, "direct branch field shift (overrides mu/nu/g)");
    cmd->add_option("--output", f.output, "output path (default stdout)");
    cmd->add_option("--format", f.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", f.threads, "worker threads, 0 = auto");
}

void collect_common(const CLI::App* cmd, const CommonFlags& f, json& doc) {
    json chain = json::object();
    if (cmd->count("--gammas")) chain["gammas"] = f.gammas;
    if (cmd->count("--lambda")) chain["lambda"] = f.lambda_single;
    if (cmd->count("--lambda-lo") || cmd->count("--lambda-hi") || cmd->count("--lambda-step")) {
        chain["lambda"] = {{"lo", f.lambda_lo}, {"hi", f.lambda_hi}, {"step", f.lambda_step}};
    }
    if (cmd->count("--sizes")) chain["sizes"] = f.sizes;
    if (!chain.empty()) doc["chain"] = chain;

    json cs = json::object();
    if (cmd->count("--mu")) cs["mu"] = f.mu;
    if (cmd->count("--nu")) cs["nu"] = f.nu;
    if (cmd->count("--g")) cs["g"] = f.g;
    if (cmd->count("--delta")) cs["delta"] = f.delta;
    if (!cs.empty()) doc["central_spin"] = cs;

    json out = json::object();
    if (cmd->count("--output")) out["path"] = f.output;
    if (cmd->count("--format")) out["format"] = f.format;
    if (!out.empty()) doc["output"] = out;
    if (cmd->count("--threads")) doc["threads"] = f.threads;
}

int execute(const json& doc) {
    std::vector<std::string> warnings;
    const spinecho::SweepConfig config = spinecho::validate_config(doc, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';

    const std::vector<spinecho::ResultRow> rows = spinecho::run_experiment(config);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!config.output_path.empty() && config.output_path != "-") {
        file.open(config.output_path, std::ios::binary);
        if (!file) throw spinecho::ConfigError({"cannot open output file " + config.output_path});
        os = &file;
    }
    if (config.format == spinecho::OutputFormat::csv)
        spinecho::write_csv(rows, *os);
    else
        spinecho::write_json(rows, *os);
    os->flush();
    if (!*os) throw spinecho::NumericalError("output stream failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loschmidt echo and Berry phase of a central spin coupled to an XY chain"};
    app.require_subcommand(1);

    CommonFlags le_flags, berry_flags, scaling_flags, oracle_flags;
    std::string le_experiment = "le_time_lambda";
    double t_lo = 0.0, t_hi = 0.0, t_step = 0.0;
    std::string berry_experiment = "berry_surface";
    bool berry_derivative = false;
    std::string scaling_target;
    std::vector<int> scaling_sizes;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    int oracle_instances = 0;
    std::uint64_t oracle_seed = 0;
    std::string config_path;

    CLI::App* le = app.add_subcommand("le", "Loschmidt echo time series");
    le->add_option("--experiment", le_experiment, "le_time_lambda | le_time_sizes | le_time_gammas")
        ->check(CLI::IsMember({"le_time_lambda", "le_time_sizes", "le_time_gammas"}));
    add_common(le, le_flags);
    le->add_option("--t-lo", t_lo, "time grid start");
    le->add_option("--t-hi", t_hi, "time grid end");
    le->add_option("--t-step", t_step, "time grid step");

    CLI::App* berry = app.add_subcommand("berry", "ground-state Berry phase sweeps");
    berry->add_option("--experiment", berry_experiment, "berry_surface | berry_xx_sizes")
        ->check(CLI::IsMember({"berry_surface", "berry_xx_sizes"}));
    berry->add_flag("--derivative", berry_derivative, "emit d beta/d lambda instead of beta");
    add_common(berry, berry_flags);

    CLI::App* scaling = app.add_subcommand("scaling", "pseudocritical point finite-size scaling");
    scaling->add_option("--target", scaling_target, "dbeta | df")
        ->check(CLI::IsMember({"dbeta", "df"}));
    scaling->add_option("--scaling-sizes", scaling_sizes, "sizes for the fit");
    scaling->add_option("--bracket-lo", bracket_lo, "peak bracket start");
    scaling->add_option("--bracket-hi", bracket_hi, "peak bracket end");
    add_common(scaling, scaling_flags);

    CLI::App* oracle = app.add_subcommand("oracle", "product formula vs 2x2 evolution check");
    oracle->add_option("--instances", oracle_instances, "number of random instances");
    oracle->add_option("--seed", oracle_seed, "RNG seed");
    add_common(oracle, oracle_flags);

    CLI::App* run = app.add_subcommand("run", "run a config file");
    run->add_option("config", config_path, "JSON config document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        json doc = json::object();
        if (le->parsed()) {
            doc["experiment"] = le_experiment;
            collect_common(le, le_flags, doc);
            if (le->count("--t-lo") || le->count("--t-hi") || le->count("--t-step")) {
                doc["time"] = {{"lo", t_lo}, {"hi", t_hi}, {"step", t_step}};
            }
        } else if (berry->parsed()) {
            doc["experiment"] = berry_experiment;
            collect_common(berry, berry_flags, doc);
            if (berry_derivative) doc["output"]["derivative"] = true;
        } else if (scaling->parsed()) {
            doc["experiment"] = "dbeta_scaling";
            collect_common(scaling, scaling_flags, doc);
            json sc = json::object();
            if (scaling->count("--target")) sc["target"] = scaling_target;
            if (scaling->count("--scaling-sizes")) sc["sizes"] = scaling_sizes;
            if (scaling->count("--bracket-lo") || scaling->count("--bracket-hi"))
                sc["bracket"] = {bracket_lo, bracket_hi};
            if (!sc.empty()) doc["scaling"] = sc;
        } else if (oracle->parsed()) {
            doc["experiment"] = "oracle_check";
            collect_common(oracle, oracle_flags, doc);
            json orc = json::object();
            if (oracle->count("--instances")) orc["instances"] = oracle_instances;
            if (oracle->count("--seed")) orc["seed"] = oracle_seed;
            if (!orc.empty()) doc["oracle"] = orc;
        } else if (run->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot open config file " << config_path << '\n';
                return 1;
            }
            try {
                doc = json::parse(in);
            } catch (const json::parse_error& e) {
                std::cerr << "error: config parse failure: " << e.what() << '\n';
                return 1;
            }
        }
        return execute(doc);
    } catch (const spinecho::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const spinecho::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
