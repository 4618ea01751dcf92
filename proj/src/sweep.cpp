#include "catamp/sweep.hpp"

#include "catamp/circuits.hpp"
#include "catamp/iterate.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace catamp {

namespace {

using json = nlohmann::json;

struct BadConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double fixed_or(const SweepConfig& cfg, const std::string& key, double dflt) {
    auto it = cfg.fixed.find(key);
    return it == cfg.fixed.end() ? dflt : it->second;
}

Range axis_or(const SweepConfig& cfg, const std::string& key, Range dflt) {
    auto it = cfg.axes.find(key);
    if (it != cfg.axes.end()) return it->second;
    auto f = cfg.fixed.find(key);  // a scalar flag collapses the axis
    if (f != cfg.fixed.end()) return {f->second, f->second, 1};
    return dflt;
}

Parity parse_parity(const std::string& s) {
    if (s == "odd" || s == "-") return Parity::Odd;
    if (s == "even" || s == "+") return Parity::Even;
    throw BadConfig("parity must be odd|even");
}

std::string fnum(double v) { return format_num(v); }

using RowFn =
    std::function<std::vector<std::string>(const std::vector<double>&)>;

// Evaluate `fn` over the cartesian grid of `axes` (row-major, first axis
// outermost) on a worker pool; deterministic output order.
SweepTable run_grid(const SweepConfig& cfg,
                    const std::vector<Range>& axes,
                    std::vector<std::string> columns, const RowFn& fn) {
    std::vector<std::vector<double>> vals;
    size_t n = 1;
    for (const auto& a : axes) {
        vals.push_back(a.values());
        n *= vals.back().size();
    }
    SweepTable table;
    table.columns = std::move(columns);
    table.rows.resize(n);

    int jobs = cfg.jobs > 0 ? cfg.jobs
                            : static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min<size_t>(jobs, n);

    std::atomic<size_t> next{0};
    std::atomic<int> underflows{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= n) return;
            std::vector<double> point(axes.size());
            size_t rem = i;
            for (size_t a = axes.size(); a-- > 0;) {
                point[a] = vals[a][rem % vals[a].size()];
                rem /= vals[a].size();
            }
            try {
                table.rows[i] = fn(point);
                if (!table.rows[i].empty() &&
                    table.rows[i].back().rfind("underflow", 0) == 0)
                    underflows.fetch_add(1);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    table.n_underflow = underflows.load();
    return table;
}

std::vector<std::string> with_status(std::vector<std::string> row,
                                     const char* status = "ok") {
    row.emplace_back(status);
    return row;
}

// --- experiments ------------------------------------------------------

SweepTable exp_pssv_scan(const SweepConfig& cfg) {
    const double T = fixed_or(cfg, "T", 0.99);
    const double eps = fixed_or(cfg, "epsilon", 1.0);
    const auto ax_xi = axis_or(cfg, "xi", {0.8, 15.0, 72});
    const auto ax_beta = axis_or(cfg, "beta", {0.05, 3.0, 60});
    return run_grid(
        cfg, {ax_xi, ax_beta}, {"xi", "beta", "fidelity", "success", "status"},
        [&](const std::vector<double>& p) {
            const PssvResult r = generate_pssv(SqueezingSpec(-p[0], eps), T);
            const double f = std::clamp(
                overlap(r.state, op_cat_projector(CatSpec(p[1], Parity::Odd))),
                0.0, 1.0);
            return with_status({fnum(p[0]), fnum(p[1]), fnum(f), fnum(r.success)});
        });
}

SweepTable exp_pssv_purity(const SweepConfig& cfg) {
    const auto ax_xi = axis_or(cfg, "xi", {0.5, 10.0, 39});
    const auto ax_eps = axis_or(cfg, "epsilon", {1.0, 3.0, 21});
    return run_grid(
        cfg, {ax_xi, ax_eps},
        {"xi", "epsilon", "purity", "purity_closed_form", "status"},
        [&](const std::vector<double>& p) {
            const SqueezingSpec s(-p[0], p[1]);
            return with_status({fnum(p[0]), fnum(p[1]),
                                fnum(purity(squeezed_vacuum(s))),
                                fnum(s.purity())});
        });
}

SweepTable exp_cat_amp_scan(const SweepConfig& cfg) {
    const double window = fixed_or(cfg, "window", 1.0);
    const Parity par = parse_parity(cfg.parity);
    const auto ax_alpha = axis_or(cfg, "alpha", {0.1, 3.0, 30});
    const auto ax_beta = axis_or(cfg, "beta", {0.05, 6.0, 60});
    return run_grid(
        cfg, {ax_alpha, ax_beta},
        {"alpha", "beta", "fidelity", "success", "status"},
        [&](const std::vector<double>& p) {
            const WignerObject in = cat(CatSpec(p[0], par));
            const HeraldedState h = amplify(in, in, window);
            try {
                const double f =
                    heralded_fidelity(h, CatSpec(p[1], Parity::Even));
                return with_status({fnum(p[0]), fnum(p[1]), fnum(f),
                                    fnum(heralded_success(h))});
            } catch (const UnderflowError& e) {
                return with_status({fnum(p[0]), fnum(p[1]), "nan",
                                    fnum(e.log_trace)},
                                   "underflow-log-success");
            }
        });
}

SweepTable exp_cat_amp_optimal(const SweepConfig& cfg) {
    const double window = fixed_or(cfg, "window", 1.0);
    const Parity par = parse_parity(cfg.parity);
    const auto ax_alpha = axis_or(cfg, "alpha", {0.1, 3.0, 30});
    return run_grid(
        cfg, {ax_alpha},
        {"alpha", "beta_star", "fidelity", "success", "gain", "status"},
        [&](const std::vector<double>& p) {
            const WignerObject in = cat(CatSpec(p[0], par));
            const OptimizationResult r =
                optimize_target_size(amplify(in, in, window), Parity::Even);
            return with_status({fnum(p[0]), fnum(r.argument), fnum(r.fidelity),
                                fnum(r.success), fnum(r.argument / p[0])});
        });
}

SweepTable exp_window_robustness(const SweepConfig& cfg) {
    const double alpha = fixed_or(cfg, "alpha", 1.0);
    const Parity par = parse_parity(cfg.parity);
    const auto ax_win = axis_or(cfg, "window", {0.1, 10.0, 50});
    return run_grid(
        cfg, {ax_win},
        {"window", "fidelity_matched", "beta_star", "max_fidelity", "success",
         "status"},
        [&](const std::vector<double>& p) {
            const WignerObject in = cat(CatSpec(alpha, par));
            const HeraldedState h = amplify(in, in, p[0]);
            const double fm = heralded_fidelity(
                h, CatSpec(std::numbers::sqrt2 * alpha, Parity::Even));
            const OptimizationResult r = optimize_target_size(h, Parity::Even);
            return with_status({fnum(p[0]), fnum(fm), fnum(r.argument),
                                fnum(r.fidelity), fnum(r.success)});
        });
}

SweepTable exp_pssv_amp_scan(const SweepConfig& cfg) {
    const double T = fixed_or(cfg, "T", 0.95);
    const double eps = fixed_or(cfg, "epsilon", 1.0);
    const double window = fixed_or(cfg, "window", 1.0);
    const auto ax_xi = axis_or(cfg, "xi", {0.5, 10.0, 39});
    const auto ax_beta = axis_or(cfg, "beta", {0.05, 4.0, 40});
    return run_grid(
        cfg, {ax_xi, ax_beta},
        {"xi", "beta", "fidelity", "success", "pssv_success", "status"},
        [&](const std::vector<double>& p) {
            const PssvResult r = generate_pssv(SqueezingSpec(-p[0], eps), T);
            const HeraldedState h = amplify(r.state, r.state, window);
            try {
                const double f =
                    heralded_fidelity(h, CatSpec(p[1], Parity::Even));
                return with_status({fnum(p[0]), fnum(p[1]), fnum(f),
                                    fnum(heralded_success(h)),
                                    fnum(r.success)});
            } catch (const UnderflowError& e) {
                return with_status(
                    {fnum(p[0]), fnum(p[1]), "nan", fnum(e.log_trace),
                     fnum(r.success)},
                    "underflow-log-success");
            }
        });
}

SweepTable exp_backward_opt(const SweepConfig& cfg) {
    const double T = fixed_or(cfg, "T", 0.95);
    const double window = fixed_or(cfg, "window", 1.0);
    const InputMode mode =
        (cfg.seed == "pssv") ? InputMode::Pssv : InputMode::IdealCat;
    const auto ax_beta = axis_or(cfg, "beta", {0.1, 4.0, 40});
    return run_grid(
        cfg, {ax_beta},
        {"beta", "argument", "fidelity", "success", "at_edge", "status"},
        [&](const std::vector<double>& p) {
            const OptimizationResult r =
                optimize_input_for_target(p[0], mode, T, window);
            return with_status({fnum(p[0]), fnum(r.argument), fnum(r.fidelity),
                                fnum(r.success), r.at_edge ? "1" : "0"});
        });
}

SweepTable exp_robustness(const SweepConfig& cfg) {
    const double xi = fixed_or(cfg, "xi", 3.0);
    const double T = fixed_or(cfg, "T", 0.99);
    const auto ax_eps = axis_or(cfg, "epsilon", {1.0, 3.0, 21});
    return run_grid(
        cfg, {ax_eps},
        {"epsilon", "purity", "beta_star", "max_fidelity", "rel_drop",
         "success", "status"},
        [&](const std::vector<double>& p) {
            const SqueezingSpec s(-xi, p[0]);
            const PssvResult r = generate_pssv(s, T);
            const OptimizationResult o =
                optimize_target_size(r.state, Parity::Odd);
            const PssvResult pure = generate_pssv(SqueezingSpec::pure(xi), T);
            const OptimizationResult o1 =
                optimize_target_size(pure.state, Parity::Odd);
            const double drop = (o1.fidelity - o.fidelity) / o1.fidelity;
            return with_status({fnum(p[0]), fnum(s.purity()), fnum(o.argument),
                                fnum(o.fidelity), fnum(drop),
                                fnum(r.success)});
        });
}

PolyGaussWavefunction make_seed(const SweepConfig& cfg) {
    if (cfg.seed == "squeezed-photon") {
        const double xi = fixed_or(cfg, "xi", 3.0);
        return wf_squeezed_fock1(std::pow(10.0, xi / 20.0));
    }
    if (cfg.seed == "cat") {
        const double alpha = fixed_or(cfg, "alpha", 1.0);
        return wf_cat(CatSpec(alpha, parse_parity(cfg.parity)));
    }
    throw BadConfig("seed must be squeezed-photon|cat");
}

SweepTable exp_iterate(const SweepConfig& cfg) {
    if (cfg.k < 1 || cfg.k > kMaxIterations)
        throw BadConfig("iterate: k must be in [1, 12]");
    SweepTable t;
    t.columns = {"k",           "beta_star",      "fidelity",
                 "log_p_stage", "log_p_compound", "status"};
    PolyGaussWavefunction phi = wf_normalize(make_seed(cfg)).first;
    double log_compound = 0.0;
    for (int k = 1; k <= cfg.k; ++k) {
        IterStage st = iterate_step(phi, k - 1);
        phi = st.phi;
        const double log_p = 2.0 * st.log_stage_norm;
        log_compound = 2.0 * log_compound + log_p;
        const SizeResult sz = effective_size(phi, Parity::Even);
        t.rows.push_back(with_status({fnum(k), fnum(sz.beta_star),
                                      fnum(sz.fidelity), fnum(log_p),
                                      fnum(log_compound)}));
    }
    return t;
}

SweepTable exp_success_scaling(const SweepConfig& cfg) {
    if (cfg.k < 1 || cfg.k > kMaxIterations)
        throw BadConfig("success-scaling: k must be in [1, 12]");
    const double window = fixed_or(cfg, "window", 0.0);
    const auto ax_xi = axis_or(cfg, "xi", {0.5, 9.0, 6});
    SweepTable t;
    t.columns = {"xi",           "k",    "p_stage", "log_p_stage",
                 "log_p_compound", "mode", "status"};
    const std::string mode =
        window > 0.0 ? "window-" + fnum(window) + "-snu" : "density";
    for (double xi : ax_xi.values()) {
        const PolyGaussWavefunction seed =
            wf_squeezed_fock1(std::pow(10.0, xi / 20.0));
        for (const ScalingRow& r : success_scaling(seed, cfg.k, window)) {
            const char* status =
                r.log_p_compound < -700.0 ? "underflow-log-only" : "ok";
            t.rows.push_back(with_status(
                {fnum(xi), fnum(r.k), fnum(r.p_stage), fnum(r.log_p_stage),
                 fnum(r.log_p_compound), mode},
                status));
            if (status[0] == 'u') ++t.n_underflow;
        }
    }
    return t;
}

SweepTable exp_perr(const SweepConfig& cfg) {
    const auto ax_beta = axis_or(cfg, "beta", {0.0, 4.0, 81});
    const auto ax_win = axis_or(cfg, "window", {0.1, 10.0, 50});
    return run_grid(cfg, {ax_beta, ax_win},
                    {"beta", "window", "perr", "status"},
                    [&](const std::vector<double>& p) {
                        return with_status({fnum(p[0]), fnum(p[1]),
                                            fnum(perr(p[0], p[1]))});
                    });
}

SweepTable exp_wigner_grid(const SweepConfig& cfg) {
    const double alpha = fixed_or(cfg, "alpha", 1.0);
    const double window = fixed_or(cfg, "window", 1.0);
    const Parity par = parse_parity(cfg.parity);
    const int n = std::max(cfg.grid, 2);
    const double lim = 2.0 * alpha + 3.0;
    const Range ax{-lim, lim, n};
    const WignerObject in = cat(CatSpec(alpha, par));
    const HeraldedState h = amplify(in, in, window);
    return run_grid(cfg, {ax, ax}, {"x", "p", "wigner", "status"},
                    [&](const std::vector<double>& p) {
                        return with_status(
                            {fnum(p[0]), fnum(p[1]),
                             fnum(heralded_wigner_at(h, p[0], p[1]))});
                    });
}

}  // namespace

std::vector<double> Range::values() const {
    std::vector<double> v;
    if (steps <= 1) return {start};
    v.reserve(steps);
    for (int i = 0; i < steps; ++i)
        v.push_back(start + (stop - start) * i / (steps - 1));
    return v;
}

Range Range::parse(const std::string& s) {
    Range r;
    const size_t c1 = s.find(':');
    if (c1 == std::string::npos) {
        r.start = r.stop = std::stod(s);
        r.steps = 1;
        return r;
    }
    const size_t c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw BadConfig("range must be start:stop:steps or a number: " + s);
    r.start = std::stod(s.substr(0, c1));
    r.stop = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    r.steps = std::stoi(s.substr(c2 + 1));
    if (r.steps < 1) throw BadConfig("range steps must be >= 1: " + s);
    return r;
}

std::string format_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SweepTable run_sweep(const SweepConfig& cfg) {
    if (cfg.experiment == "pssv-scan") return exp_pssv_scan(cfg);
    if (cfg.experiment == "pssv-purity") return exp_pssv_purity(cfg);
    if (cfg.experiment == "cat-amp-scan") return exp_cat_amp_scan(cfg);
    if (cfg.experiment == "cat-amp-optimal") return exp_cat_amp_optimal(cfg);
    if (cfg.experiment == "window-robustness") return exp_window_robustness(cfg);
    if (cfg.experiment == "pssv-amp-scan") return exp_pssv_amp_scan(cfg);
    if (cfg.experiment == "backward-opt") return exp_backward_opt(cfg);
    if (cfg.experiment == "robustness") return exp_robustness(cfg);
    if (cfg.experiment == "iterate") return exp_iterate(cfg);
    if (cfg.experiment == "success-scaling") return exp_success_scaling(cfg);
    if (cfg.experiment == "perr") return exp_perr(cfg);
    if (cfg.experiment == "wigner-grid") return exp_wigner_grid(cfg);
    throw BadConfig("unknown experiment: " + cfg.experiment);
}

namespace {

json manifest_json(const SweepConfig& cfg, const SweepTable& t,
                   double wall_seconds) {
    json axes = json::object();
    for (const auto& [k, r] : cfg.axes)
        axes[k] = fnum(r.start) + ":" + fnum(r.stop) + ":" +
                  std::to_string(r.steps);
    json fixed = json::object();
    for (const auto& [k, v] : cfg.fixed) fixed[k] = v;
    return json{{"experiment", cfg.experiment},
                {"version", kVersion},
                {"axes", axes},
                {"fixed", fixed},
                {"seed", cfg.seed},
                {"parity", cfg.parity},
                {"k", cfg.k},
                {"grid", cfg.grid},
                {"format", cfg.format},
                {"jobs", cfg.jobs},
                {"wall_seconds", wall_seconds},
                {"rows", t.rows.size()},
                {"underflow_warned", t.n_underflow}};
}

std::string to_csv(const SweepTable& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

json cell_json(const std::string& cell) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end && *end == '\0' && end != cell.c_str() && std::isfinite(v))
        return v;
    return cell;
}

std::string to_json_doc(const SweepConfig& cfg, const SweepTable& t,
                        double wall_seconds) {
    json doc;
    doc["manifest"] = manifest_json(cfg, t, wall_seconds);
    doc["columns"] = t.columns;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& c : row) r.push_back(cell_json(c));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
        f << content;
        if (!f.good()) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void write_outputs(const SweepConfig& cfg, const SweepTable& table,
                   double wall_seconds) {
    const bool csv = cfg.format == "csv";
    if (!csv && cfg.format != "json")
        throw BadConfig("format must be csv|json");
    const std::string data =
        csv ? to_csv(table) : to_json_doc(cfg, table, wall_seconds);
    if (cfg.out.empty()) {
        std::fwrite(data.data(), 1, data.size(), stdout);
        return;
    }
    atomic_write(cfg.out, data);
    if (csv)
        atomic_write(cfg.out + ".manifest.json",
                     manifest_json(cfg, table, wall_seconds).dump(2) + "\n");
}

}  // namespace catamp
