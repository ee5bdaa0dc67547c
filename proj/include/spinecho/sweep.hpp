#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinecho/params.hpp"

namespace spinecho {

enum class Experiment {
    le_time_lambda,   // L over lambda x t          (echo surface)
    le_time_sizes,    // L over N x t at fixed lambda
    le_time_gammas,   // L over gamma x t at fixed lambda
    berry_surface,    // beta_g (or its derivative) over gamma x lambda
    berry_xx_sizes,   // beta_g over lambda for several sizes at gamma = 0
    dbeta_scaling,    // pseudocritical peak positions and fitted exponent
    oracle_check,     // product formula vs 2x2 evolution on random instances
};

const char* experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(const std::string& name);

enum class OutputFormat { csv, json };

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
    std::vector<double> points() const;
};

struct SweepConfig {
    Experiment experiment = Experiment::le_time_lambda;
    std::vector<double> gammas;
    GridSpec lambda;
    std::vector<int> sizes;  // 0 marks the thermodynamic limit (berry only)
    CentralSpinParams cs;
    std::optional<double> delta_override;  // wins over (mu, nu, g) when given
    GridSpec times;
    bool berry_derivative = false;  // emit d beta/d lambda instead of beta
    // scaling
    std::string scaling_target = "dbeta";  // "dbeta" | "df"
    std::vector<int> scaling_sizes;
    double bracket_lo = 0.5;
    double bracket_hi = 1.0;
    // oracle
    int oracle_instances = 100;
    std::uint64_t oracle_seed = 20260808;
    // output
    std::string output_path;  // empty = stdout
    OutputFormat format = OutputFormat::csv;
    unsigned threads = 0;  // 0 = auto
};

// Self-describing output row; fixed column order
// experiment,gamma,lambda,n_sites,delta,mu,nu,g,t,value,flag.
struct ResultRow {
    const char* experiment = "";
    double gamma = 0.0;
    double lambda = 0.0;
    int n_sites = 0;
    double delta = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double g = 0.0;
    double t = 0.0;
    double value = 0.0;
    std::string flag;
};

// Resolves the raw document against per-experiment defaults, rejecting unknown
// keys, odd sizes, empty grids, and malformed sections in a single pass
// (ConfigError lists every violation). Non-fatal notes (e.g. delta overriding
// mu/nu/g) land in *warnings.
SweepConfig validate_config(const nlohmann::json& doc,
                            std::vector<std::string>* warnings = nullptr);

// Runs the sweep. Grid points execute concurrently (resolve_threads decides
// the worker count) but rows are assembled in declaration order, so identical
// configs produce byte-identical output no matter the thread count.
std::vector<ResultRow> run_experiment(const SweepConfig& config);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void write_json(const std::vector<ResultRow>& rows, std::ostream& os);

// ECHO_THREADS env var overrides the flag; 0 means hardware concurrency.
unsigned resolve_threads(unsigned flag_value);

// fn(i) for i in [0, n), distributed over `threads` workers. Exceptions are
// collected and the one with the smallest index is rethrown after join.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace spinecho
