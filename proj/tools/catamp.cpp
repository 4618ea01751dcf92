// catamp: parameter-sweep runner for heralded cat-state generation and
// homodyne-heralded amplification.

#include "catamp/sweep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <string>

namespace {

struct RawOpts {
    std::string xi, beta, alpha, window, epsilon, T;
    std::string parity = "odd";
    std::string seed = "squeezed-photon";
    int k = 8;
    int grid = 64;
    int jobs = 0;
    std::string out;
    std::string format = "csv";
    bool quiet = false;
};

struct ExperimentInfo {
    const char* name;
    const char* help;
};

constexpr ExperimentInfo kExperiments[] = {
    {"pssv-scan",
     "Fidelity and click probability of photon-subtracted squeezed vacuum "
     "against odd-cat targets, over squeezing level and target size."},
    {"pssv-purity",
     "Purity of impure squeezed vacuum over squeezing level and impurity "
     "ratio, with the closed-form value alongside."},
    {"cat-amp-scan",
     "Amplification of two equal ideal cats: output fidelity with even-cat "
     "targets and heralding success, over input and target size."},
    {"cat-amp-optimal",
     "Best target size, fidelity, success, and size gain of the amplified "
     "state for each ideal-cat input size."},
    {"window-robustness",
     "Amplified-state fidelity and success as a function of the homodyne "
     "acceptance window, at fixed input size."},
    {"pssv-amp-scan",
     "Amplification of two equal PSSV states: output fidelity and both "
     "success probabilities, over squeezing level and target size."},
    {"backward-opt",
     "For each target size, the input (cat size, or squeezing for PSSV "
     "inputs via --seed pssv) that maximizes the amplified fidelity."},
    {"robustness",
     "Degradation of the best PSSV fidelity with squeezing impurity at "
     "fixed squeezing level."},
    {"iterate",
     "Repeated amplify-and-herald iteration in the pure-state picture: "
     "per-step effective size, fidelity, and heralding densities."},
    {"success-scaling",
     "Per-stage and compound heralding success of the iteration across "
     "squeezing levels (densities by default; probabilities with --window)."},
    {"perr",
     "Probability of mistaking an even cat for vacuum from a windowed "
     "x-quadrature measurement, over cat size and window."},
    {"wigner-grid",
     "Wigner function of the amplified output on an (x, p) grid."},
};

void add_common_options(CLI::App* sub, RawOpts* o) {
    const char* range_help = " (number or start:stop:steps)";
    sub->add_option("--xi", o->xi,
                    std::string("squeezing level in dB, >= 0") + range_help);
    sub->add_option("--epsilon", o->epsilon,
                    std::string("impurity ratio, >= 1") + range_help);
    sub->add_option("--T", o->T, "beam splitter transmittance in (0,1)");
    sub->add_option("--window", o->window,
                    std::string("homodyne window width in SNU") + range_help);
    sub->add_option("--alpha", o->alpha,
                    std::string("input cat size") + range_help);
    sub->add_option("--beta", o->beta,
                    std::string("target cat size") + range_help);
    sub->add_option("--parity", o->parity, "input parity: odd|even")
        ->check(CLI::IsMember({"odd", "even"}));
    sub->add_option("--k", o->k, "iteration count (1..12)");
    sub->add_option("--seed", o->seed,
                    "iteration seed or input family: squeezed-photon|cat|pssv");
    sub->add_option("--grid", o->grid, "grid resolution per axis");
    sub->add_option("--out", o->out, "output path (default: stdout)");
    sub->add_option("--format", o->format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", o->jobs,
                    "worker threads (0 = machine parallelism)");
    sub->add_flag("--quiet", o->quiet, "suppress the completion note");
    sub->set_config("--config", "",
                    "flat key=value config file; command-line flags override");
}

void place(catamp::SweepConfig* cfg, const std::string& key,
           const std::string& raw) {
    if (raw.empty()) return;
    const catamp::Range r = catamp::Range::parse(raw);
    if (r.steps == 1)
        cfg->fixed[key] = r.start;
    else
        cfg->axes[key] = r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner-calculus sweeps for heralded cat-state generation, "
                 "homodyne-heralded amplification, and iterated scaling"};
    app.require_subcommand(1);

    RawOpts opts;
    for (const auto& e : kExperiments)
        add_common_options(app.add_subcommand(e.name, e.help), &opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    catamp::SweepConfig cfg;
    cfg.experiment = app.get_subcommands().front()->get_name();
    try {
        place(&cfg, "xi", opts.xi);
        place(&cfg, "beta", opts.beta);
        place(&cfg, "alpha", opts.alpha);
        place(&cfg, "window", opts.window);
        place(&cfg, "epsilon", opts.epsilon);
        if (!opts.T.empty()) cfg.fixed["T"] = std::stod(opts.T);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "catamp: bad parameter: %s\n", e.what());
        return 2;
    }
    cfg.seed = opts.seed;
    cfg.parity = opts.parity;
    cfg.k = opts.k;
    cfg.grid = opts.grid;
    cfg.out = opts.out;
    cfg.format = opts.format;
    cfg.jobs = opts.jobs;
    cfg.quiet = opts.quiet;

    try {
        const auto t0 = std::chrono::steady_clock::now();
        const catamp::SweepTable table = catamp::run_sweep(cfg);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        catamp::write_outputs(cfg, table, wall);
        if (!cfg.quiet && !cfg.out.empty())
            std::fprintf(stderr,
                         "catamp: %zu rows (%d underflow-warned) in %.2fs -> %s\n",
                         table.rows.size(), table.n_underflow, wall,
                         cfg.out.c_str());
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "catamp: invalid configuration: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "catamp: numeric failure: %s\n", e.what());
        return 1;
    }
    return 0;
}
