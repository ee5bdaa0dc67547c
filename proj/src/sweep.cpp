#include "spinecho/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "spinecho/berry.hpp"
#include "spinecho/errors.hpp"
#include "spinecho/loschmidt.hpp"
#include "spinecho/oracle.hpp"
#include "spinecho/random.hpp"
#include "spinecho/spectrum.hpp"

namespace spinecho {

using nlohmann::json;

const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::le_time_lambda: return "le_time_lambda";
        case Experiment::le_time_sizes: return "le_time_sizes";
        case Experiment::le_time_gammas: return "le_time_gammas";
        case Experiment::berry_surface: return "berry_surface";
        case Experiment::berry_xx_sizes: return "berry_xx_sizes";
        case Experiment::dbeta_scaling: return "dbeta_scaling";
        case Experiment::oracle_check: return "oracle_check";
    }
    return "?";
}

std::optional<Experiment> experiment_from_name(const std::string& name) {
    for (Experiment e : {Experiment::le_time_lambda, Experiment::le_time_sizes,
                         Experiment::le_time_gammas, Experiment::berry_surface,
                         Experiment::berry_xx_sizes, Experiment::dbeta_scaling,
                         Experiment::oracle_check}) {
        if (name == experiment_name(e)) return e;
    }
    return std::nullopt;
}

std::vector<double> GridSpec::points() const {
    std::vector<double> pts;
    if (step <= 0.0 || hi < lo) return pts;
    const auto count = static_cast<std::size_t>((hi - lo) / step + 1e-9) + 1;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(lo + static_cast<double>(i) * step);
    return pts;
}

unsigned resolve_threads(unsigned flag_value) {
    if (const char* env = std::getenv("ECHO_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 0) flag_value = static_cast<unsigned>(v);
    }
    if (flag_value == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
    return flag_value;
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    threads = std::min<std::size_t>(threads, n);
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_index = n;
    std::exception_ptr err;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---- config parsing ---------------------------------------------------------

void check_keys(const json& obj, const char* section,
                std::initializer_list<const char*> allowed,
                std::vector<std::string>& bad) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) bad.push_back(std::string("unknown key '") + it.key() + "' in " + section);
    }
}

bool get_number(const json& obj, const char* key, double& out,
                std::vector<std::string>& bad, const char* section) {
    if (!obj.contains(key)) return false;
    if (!obj[key].is_number()) {
        bad.push_back(std::string(section) + "." + key + " must be a number");
        return false;
    }
    out = obj[key].get<double>();
    return true;
}

bool get_grid(const json& obj, const char* key, GridSpec& out,
              std::vector<std::string>& bad, const char* section) {
    if (!obj.contains(key)) return false;
    const json& v = obj[key];
    if (v.is_number()) {
        const double x = v.get<double>();
        out = GridSpec{x, x, 1.0};
        return true;
    }
    if (v.is_object()) {
        check_keys(v, key, {"lo", "hi", "step"}, bad);
        GridSpec g;
        bool ok = true;
        ok &= get_number(v, "lo", g.lo, bad, key);
        ok &= get_number(v, "hi", g.hi, bad, key);
        ok &= get_number(v, "step", g.step, bad, key);
        if (!ok) {
            bad.push_back(std::string(section) + "." + key + " needs lo, hi, step");
            return false;
        }
        if (g.step <= 0.0) {
            bad.push_back(std::string(section) + "." + key + ".step must be > 0");
            return false;
        }
        if (g.hi < g.lo) {
            bad.push_back(std::string(section) + "." + key + " must have hi >= lo");
            return false;
        }
        out = g;
        return true;
    }
    bad.push_back(std::string(section) + "." + key + " must be a number or {lo,hi,step}");
    return false;
}

bool get_doubles(const json& obj, const char* key, std::vector<double>& out,
                 std::vector<std::string>& bad, const char* section) {
    if (!obj.contains(key)) return false;
    const json& v = obj[key];
    if (v.is_number()) {
        out = {v.get<double>()};
        return true;
    }
    if (v.is_array() && !v.empty()) {
        out.clear();
        for (const auto& e : v) {
            if (!e.is_number()) {
                bad.push_back(std::string(section) + "." + key + " must hold numbers");
                return false;
            }
            out.push_back(e.get<double>());
        }
        return true;
    }
    bad.push_back(std::string(section) + "." + key + " must be a non-empty number array");
    return false;
}

bool get_ints(const json& obj, const char* key, std::vector<int>& out,
              std::vector<std::string>& bad, const char* section) {
    if (!obj.contains(key)) return false;
    const json& v = obj[key];
    if (v.is_number_integer()) {
        out = {v.get<int>()};
        return true;
    }
    if (v.is_array() && !v.empty()) {
        out.clear();
        for (const auto& e : v) {
            if (!e.is_number_integer()) {
                bad.push_back(std::string(section) + "." + key + " must hold integers");
                return false;
            }
            out.push_back(e.get<int>());
        }
        return true;
    }
    bad.push_back(std::string(section) + "." + key + " must be a non-empty integer array");
    return false;
}

void apply_defaults(SweepConfig& c) {
    switch (c.experiment) {
        case Experiment::le_time_lambda:
            c.gammas = {1.0};
            c.lambda = {0.0, 2.0, 0.01};
            c.sizes = {100};
            c.delta_override = 0.05;
            break;
        case Experiment::le_time_sizes:
            c.gammas = {1.0};
            c.lambda = {1.0, 1.0, 1.0};
            c.sizes = {50, 100, 150, 200};
            c.delta_override = 0.05;
            break;
        case Experiment::le_time_gammas:
            c.gammas = {0.0, 0.01, 0.05, 0.1, 0.5, 1.0};
            c.lambda = {1.0, 1.0, 1.0};
            c.sizes = {100};
            c.delta_override = 0.05;
            break;
        case Experiment::berry_surface:
            c.gammas = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5,
                        0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0};
            c.lambda = {0.0, 2.0, 0.01};
            c.sizes = {0};
            break;
        case Experiment::berry_xx_sizes:
            c.gammas = {0.0};
            c.lambda = {0.0, 1.2, 0.001};
            c.sizes = {10, 20, 50, 100, 0};
            break;
        case Experiment::dbeta_scaling:
            c.scaling_sizes = {51, 101, 251, 501, 1001};
            c.gammas = {1.0};
            break;
        case Experiment::oracle_check:
            break;
    }
    c.times = {0.0, 20.0, 0.01};
}

bool is_le(Experiment e) {
    return e == Experiment::le_time_lambda || e == Experiment::le_time_sizes ||
           e == Experiment::le_time_gammas;
}

bool is_berry(Experiment e) {
    return e == Experiment::berry_surface || e == Experiment::berry_xx_sizes;
}

}  // namespace

SweepConfig validate_config(const json& doc, std::vector<std::string>* warnings) {
    std::vector<std::string> bad;
    if (!doc.is_object() && !doc.is_null())
        throw ConfigError({"config document must be a JSON object"});

    SweepConfig c;
    if (doc.is_object()) {
        check_keys(doc, "config",
                   {"experiment", "chain", "central_spin", "time", "scaling", "oracle",
                    "output", "threads"},
                   bad);
        if (doc.contains("experiment")) {
            if (!doc["experiment"].is_string()) {
                bad.push_back("experiment must be a string");
            } else if (auto e = experiment_from_name(doc["experiment"].get<std::string>())) {
                c.experiment = *e;
            } else {
                bad.push_back("unknown experiment '" + doc["experiment"].get<std::string>() + "'");
            }
        }
    }
    apply_defaults(c);

    bool cs_given = false;
    bool delta_given = false;

    if (doc.is_object()) {
        if (doc.contains("chain")) {
            const json& ch = doc["chain"];
            if (!ch.is_object()) {
                bad.push_back("chain must be an object");
            } else {
                check_keys(ch, "chain", {"gammas", "lambda", "sizes"}, bad);
                get_doubles(ch, "gammas", c.gammas, bad, "chain");
                get_grid(ch, "lambda", c.lambda, bad, "chain");
                get_ints(ch, "sizes", c.sizes, bad, "chain");
            }
        }
        if (doc.contains("central_spin")) {
            const json& cs = doc["central_spin"];
            if (!cs.is_object()) {
                bad.push_back("central_spin must be an object");
            } else {
                check_keys(cs, "central_spin", {"mu", "nu", "g", "delta"}, bad);
                cs_given = cs.contains("mu") || cs.contains("nu") || cs.contains("g");
                get_number(cs, "mu", c.cs.mu, bad, "central_spin");
                get_number(cs, "nu", c.cs.nu, bad, "central_spin");
                get_number(cs, "g", c.cs.g, bad, "central_spin");
                double d;
                if (get_number(cs, "delta", d, bad, "central_spin")) {
                    c.delta_override = d;
                    delta_given = true;
                }
            }
        }
        if (doc.contains("time")) {
            json wrap;
            wrap["time"] = doc["time"];
            get_grid(wrap, "time", c.times, bad, "config");
        }
        if (doc.contains("scaling")) {
            const json& sc = doc["scaling"];
            if (!sc.is_object()) {
                bad.push_back("scaling must be an object");
            } else {
                check_keys(sc, "scaling", {"target", "sizes", "bracket"}, bad);
                if (sc.contains("target")) {
                    if (sc["target"].is_string() && (sc["target"] == "df" || sc["target"] == "dbeta"))
                        c.scaling_target = sc["target"].get<std::string>();
                    else
                        bad.push_back("scaling.target must be 'df' or 'dbeta'");
                }
                get_ints(sc, "sizes", c.scaling_sizes, bad, "scaling");
                if (sc.contains("bracket")) {
                    const json& b = sc["bracket"];
                    if (b.is_array() && b.size() == 2 && b[0].is_number() && b[1].is_number()) {
                        c.bracket_lo = b[0].get<double>();
                        c.bracket_hi = b[1].get<double>();
                    } else {
                        bad.push_back("scaling.bracket must be [lo, hi]");
                    }
                }
            }
        }
        if (doc.contains("oracle")) {
            const json& orc = doc["oracle"];
            if (!orc.is_object()) {
                bad.push_back("oracle must be an object");
            } else {
                check_keys(orc, "oracle", {"instances", "seed"}, bad);
                if (orc.contains("instances")) {
                    if (orc["instances"].is_number_integer() && orc["instances"].get<int>() > 0)
                        c.oracle_instances = orc["instances"].get<int>();
                    else
                        bad.push_back("oracle.instances must be a positive integer");
                }
                if (orc.contains("seed")) {
                    if (orc["seed"].is_number_unsigned() || orc["seed"].is_number_integer())
                        c.oracle_seed = orc["seed"].get<std::uint64_t>();
                    else
                        bad.push_back("oracle.seed must be an integer");
                }
            }
        }
        if (doc.contains("output")) {
            const json& out = doc["output"];
            if (!out.is_object()) {
                bad.push_back("output must be an object");
            } else {
                check_keys(out, "output", {"path", "format", "derivative"}, bad);
                if (out.contains("path")) {
                    if (out["path"].is_string())
                        c.output_path = out["path"].get<std::string>();
                    else
                        bad.push_back("output.path must be a string");
                }
                if (out.contains("format")) {
                    if (out["format"] == "csv")
                        c.format = OutputFormat::csv;
                    else if (out["format"] == "json")
                        c.format = OutputFormat::json;
                    else
                        bad.push_back("output.format must be 'csv' or 'json'");
                }
                if (out.contains("derivative")) {
                    if (out["derivative"].is_boolean())
                        c.berry_derivative = out["derivative"].get<bool>();
                    else
                        bad.push_back("output.derivative must be a boolean");
                }
            }
        }
        if (doc.contains("threads")) {
            if (doc["threads"].is_number_integer() && doc["threads"].get<int>() >= 0)
                c.threads = doc["threads"].get<unsigned>();
            else
                bad.push_back("threads must be a non-negative integer");
        }
    }

    // semantic checks
    for (double g : c.gammas) {
        if (!std::isfinite(g) || g < 0.0) bad.push_back("gamma must be finite and >= 0");
    }
    if (c.lambda.points().empty()) bad.push_back("lambda grid is empty");
    if (is_le(c.experiment) || is_berry(c.experiment)) {
        if (c.sizes.empty()) bad.push_back("chain.sizes is empty");
        for (int n : c.sizes) {
            if (n == 0) {
                if (!is_berry(c.experiment))
                    bad.push_back("n_sites = 0 (thermodynamic) is only valid for berry experiments");
            } else if (n < 2) {
                bad.push_back("n_sites must be >= 2");
            } else if (n % 2 != 0) {
                bad.push_back("n_sites must be even");
            }
        }
    }
    if (is_le(c.experiment) && c.times.points().empty()) bad.push_back("time grid is empty");
    if (c.experiment == Experiment::dbeta_scaling) {
        if (c.scaling_sizes.size() < 4) bad.push_back("scaling.sizes needs at least 4 sizes");
        for (std::size_t i = 1; i < c.scaling_sizes.size(); ++i)
            if (c.scaling_sizes[i] <= c.scaling_sizes[i - 1])
                bad.push_back("scaling.sizes must be strictly increasing");
        if (!(c.bracket_lo < c.bracket_hi)) bad.push_back("scaling.bracket must have lo < hi");
        if (c.gammas.size() != 1) bad.push_back("dbeta_scaling uses a single gamma");
    }
    if (delta_given && cs_given && warnings)
        warnings->push_back("both delta and (mu, nu, g) given: delta wins for the echo shift");

    if (!bad.empty()) throw ConfigError(std::move(bad));
    return c;
}

// ---- experiment runners -----------------------------------------------------

namespace {

struct CsColumns {
    double mu, nu, g;
};

// mu/nu/g columns echo the central spin only when it actually entered the run.
CsColumns cs_columns(const SweepConfig& c) {
    if (c.delta_override.has_value()) return {kNaN, kNaN, kNaN};
    return {c.cs.mu, c.cs.nu, c.cs.g};
}

std::vector<ResultRow> run_le(const SweepConfig& c) {
    const std::vector<double> lambdas = c.lambda.points();
    const std::vector<double> times = c.times.points();
    const char* tag = experiment_name(c.experiment);
    const CsColumns cols = cs_columns(c);

    struct Item {
        double gamma, lambda;
        int n;
    };
    std::vector<Item> items;
    for (double g : c.gammas)
        for (double lam : lambdas)
            for (int n : c.sizes) items.push_back({g, lam, n});

    std::vector<std::vector<ResultRow>> blocks(items.size());
    parallel_for(items.size(), resolve_threads(c.threads), [&](std::size_t i) {
        const Item& it = items[i];
        try {
            const MomentumGrid grid(it.n);
            const double delta = c.delta_override ? *c.delta_override
                                                  : derive_branch_params(c.cs, it.n).delta;
            const bool degen = has_degenerate_mode(grid, it.gamma, it.lambda + delta) ||
                               has_degenerate_mode(grid, it.gamma, it.lambda - delta);
            const EchoFactors f = EchoFactors::build(grid, it.gamma, it.lambda, delta);
            const EchoSeries series = echo_series(f, times);
            std::vector<ResultRow>& rows = blocks[i];
            rows.reserve(times.size());
            for (std::size_t j = 0; j < times.size(); ++j) {
                rows.push_back({tag, it.gamma, it.lambda, it.n, delta, cols.mu, cols.nu,
                                cols.g, times[j], series.values[j],
                                degen ? "degenerate" : ""});
            }
        } catch (const std::exception& e) {
            throw NumericalError("at grid point gamma=" + std::to_string(it.gamma) +
                                 " lambda=" + std::to_string(it.lambda) +
                                 " n_sites=" + std::to_string(it.n) + ": " + e.what());
        }
    });

    std::vector<ResultRow> rows;
    rows.reserve(items.size() * times.size());
    for (auto& b : blocks) rows.insert(rows.end(), b.begin(), b.end());
    return rows;
}

std::vector<ResultRow> run_berry(const SweepConfig& c) {
    const std::vector<double> lambdas = c.lambda.points();
    const char* tag = experiment_name(c.experiment);

    struct Item {
        double gamma;
        int n;
    };
    std::vector<Item> items;
    for (double g : c.gammas)
        for (int n : c.sizes) items.push_back({g, n});

    std::vector<std::vector<ResultRow>> blocks(items.size());
    parallel_for(items.size(), resolve_threads(c.threads), [&](std::size_t i) {
        const Item& it = items[i];
        double current_lambda = lambdas.front();
        try {
            std::vector<ResultRow>& rows = blocks[i];
            rows.reserve(lambdas.size());
            if (it.n == 0) {
                for (double lam : lambdas) {
                    current_lambda = lam;
                    // the derivative quadrature diverges on the critical line;
                    // only evaluate it when it is actually being emitted
                    const double value =
                        c.berry_derivative
                            ? berry_phase_thermodynamic(it.gamma, lam, c.cs).dbeta_dlambda
                            : berry_beta_thermodynamic(it.gamma, lam, c.cs);
                    rows.push_back({tag, it.gamma, lam, 0, 0.0, c.cs.mu, c.cs.nu, c.cs.g,
                                    kNaN, value, ""});
                }
            } else {
                const double delta = c.delta_override
                                         ? *c.delta_override
                                         : derive_branch_params(c.cs, it.n).delta;
                const MomentumGrid grid(it.n);
                ChainParams chain{it.gamma, 0.0, it.n};
                for (double lam : lambdas) {
                    current_lambda = lam;
                    chain.lambda = lam;
                    const BerryResult r = berry_phase_finite(chain, c.cs, delta);
                    const bool degen = has_degenerate_mode(grid, it.gamma, lam + delta);
                    rows.push_back({tag, it.gamma, lam, it.n, delta, c.cs.mu, c.cs.nu,
                                    c.cs.g, kNaN,
                                    c.berry_derivative ? r.dbeta_dlambda : r.beta,
                                    degen ? "degenerate" : ""});
                }
            }
        } catch (const std::exception& e) {
            throw NumericalError("at grid point gamma=" + std::to_string(it.gamma) +
                                 " lambda=" + std::to_string(current_lambda) +
                                 " n_sites=" + std::to_string(it.n) + ": " + e.what());
        }
    });

    std::vector<ResultRow> rows;
    for (auto& b : blocks) rows.insert(rows.end(), b.begin(), b.end());
    return rows;
}

std::vector<ResultRow> run_scaling(const SweepConfig& c) {
    const ScalingTarget target =
        c.scaling_target == "df" ? ScalingTarget::df : ScalingTarget::dbeta;
    ScalingFit fit;
    try {
        fit = scaling_fit(c.scaling_sizes, c.cs, c.gammas.front(), target);
    } catch (const NumericalError& e) {
        throw NumericalError("scaling fit (target " + c.scaling_target +
                             ", gamma=" + std::to_string(c.gammas.front()) + "): " + e.what());
    }
    const char* tag = experiment_name(c.experiment);

    std::vector<ResultRow> rows;
    rows.reserve(fit.sizes.size() + 1);
    for (std::size_t i = 0; i < fit.sizes.size(); ++i) {
        const int n = fit.sizes[i];
        const double delta = (target == ScalingTarget::df)
                                 ? 0.0
                                 : derive_branch_params(c.cs, n).delta;
        rows.push_back({tag, c.gammas.front(), kNaN, n, delta, c.cs.mu, c.cs.nu, c.cs.g,
                        kNaN, fit.peak_positions[i], "peak_position"});
    }
    rows.push_back({tag, c.gammas.front(), kNaN, 0, kNaN, c.cs.mu, c.cs.nu, c.cs.g, kNaN,
                    fit.exponent, "exponent"});
    return rows;
}

std::vector<ResultRow> run_oracle(const SweepConfig& c) {
    const char* tag = experiment_name(c.experiment);
    const int count = c.oracle_instances;
    std::vector<ResultRow> rows(static_cast<std::size_t>(count));

    parallel_for(static_cast<std::size_t>(count), resolve_threads(c.threads),
                 [&](std::size_t i) {
                     // splitmix-style per-instance seed so instances are
                     // independent of the worker schedule
                     Rng rng(c.oracle_seed ^ (0x9E3779B97F4A7C15ull * (i + 1)));
                     static constexpr int kSizes[3] = {8, 10, 12};
                     const int n = kSizes[rng.pick(3)];
                     const double gamma = rng.uniform(0.0, 1.0);
                     const double lambda = rng.uniform(0.0, 2.0);
                     const double delta = rng.uniform(0.0, 0.2);
                     const double t = rng.uniform(0.0, 5.0);
                     const ChainParams chain{gamma, lambda, n};
                     const double via_formula =
                         loschmidt_echo(mode_table(chain, delta), t);
                     const double via_oracle = oracle_echo(chain, delta, t);
                     rows[i] = {tag,   gamma, lambda, n, delta, kNaN,
                                kNaN,  kNaN,  t,      std::abs(via_formula - via_oracle),
                                ""};
                 });
    return rows;
}

}  // namespace

std::vector<ResultRow> run_experiment(const SweepConfig& config) {
    switch (config.experiment) {
        case Experiment::le_time_lambda:
        case Experiment::le_time_sizes:
        case Experiment::le_time_gammas:
            return run_le(config);
        case Experiment::berry_surface:
        case Experiment::berry_xx_sizes:
            return run_berry(config);
        case Experiment::dbeta_scaling:
            return run_scaling(config);
        case Experiment::oracle_check:
            return run_oracle(config);
    }
    return {};
}

// ---- writers ----------------------------------------------------------------

namespace {

// %.17g reproduces every double exactly; "nan" spelled out so the sign of a
// quiet NaN never leaks into diffs.
void format_double(char* buf, std::size_t cap, double v) {
    if (std::isnan(v))
        std::snprintf(buf, cap, "nan");
    else
        std::snprintf(buf, cap, "%.17g", v);
}

}  // namespace

void write_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
    os << "experiment,gamma,lambda,n_sites,delta,mu,nu,g,t,value,flag\n";
    char num[8][32];
    char line[512];
    for (const ResultRow& r : rows) {
        format_double(num[0], 32, r.gamma);
        format_double(num[1], 32, r.lambda);
        format_double(num[2], 32, r.delta);
        format_double(num[3], 32, r.mu);
        format_double(num[4], 32, r.nu);
        format_double(num[5], 32, r.g);
        format_double(num[6], 32, r.t);
        format_double(num[7], 32, r.value);
        const int len = std::snprintf(line, sizeof line, "%s,%s,%s,%d,%s,%s,%s,%s,%s,%s,%s\n",
                                      r.experiment, num[0], num[1], r.n_sites, num[2],
                                      num[3], num[4], num[5], num[6], num[7],
                                      r.flag.c_str());
        os.write(line, len);
    }
}

void write_json(const std::vector<ResultRow>& rows, std::ostream& os) {
    auto field = [&os](const char* name, double v, bool comma = true) {
        char buf[32];
        if (std::isnan(v)) {
            os << '"' << name << "\":null";
        } else {
            format_double(buf, 32, v);
            os << '"' << name << "\":" << buf;
        }
        if (comma) os << ',';
    };
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ResultRow& r = rows[i];
        os << "{\"experiment\":\"" << r.experiment << "\",";
        field("gamma", r.gamma);
        field("lambda", r.lambda);
        os << "\"n_sites\":" << r.n_sites << ',';
        field("delta", r.delta);
        field("mu", r.mu);
        field("nu", r.nu);
        field("g", r.g);
        field("t", r.t);
        field("value", r.value);
        os << "\"flag\":\"" << r.flag << "\"}";
        if (i + 1 < rows.size()) os << ',';
        os << '\n';
    }
    os << "]\n";
}

}  // namespace spinecho
