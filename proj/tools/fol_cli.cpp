// fol: train max-loss learners on CSV data, run the synthetic benchmarks,
// audit the sampler's regret inequality.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O or parse error,
// 3 invariant violation.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fol/baselines.hpp"
#include "fol/fol_driver.hpp"
#include "fol/io.hpp"
#include "fol/kernels.hpp"
#include "fol/robustness.hpp"
#include "fol/synthetic.hpp"

using namespace fol;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitInvariant = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_if(const std::string& path, const std::string& contents) {
    if (!path.empty()) io::write_file_atomic(path, contents);
}

std::string csv_field(double v) { return io::format_double(v); }

// --- train -------------------------------------------------------------------

struct TrainOptions {
    std::string data;
    std::string algorithm = "fol";
    std::string learner = "perceptron";
    std::string loss;
    double rate = 1.0;
    double decay = 0.0;
    double power = 0.75;
    double l2 = 0.0;

    std::size_t T = 0;
    std::size_t k = 0;
    double eta = 0.0;
    double gamma = 0.5;
    bool theorem_mode = false;
    double epsilon = 0.0;
    double delta = 0.1;
    std::optional<double> C;
    std::optional<double> margin;
    std::optional<double> radius;
    std::string mode = "majority";
    std::string policy = "presampled";
    std::uint64_t seed = 0;
    std::size_t eval_every = 0;

    std::size_t epochs = 10;
    std::size_t boost_rounds = 0;
    bool warm_start = false;

    double slack_budget = 1.0;
    std::string slack_norm = "l1";
    double slack_rate = 0.0;
    bool slack_multiplicative = false;

    std::string model_out = "model.json";
    std::string metrics_out = "metrics.csv";
    std::string summary_out;
    std::string rounds_out;
    std::string slack_out;
};

LearnerParams learner_params(const TrainOptions& o) {
    LearnerParams p;
    p.base_rate = o.rate;
    p.decay = o.decay;
    p.power = o.power;
    p.l2 = o.l2;
    if (!o.loss.empty()) p.report_loss = parse_loss_kind(o.loss);
    return p;
}

double max_norm(const Dataset& ds) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) r2 = std::max(r2, dot(ds.features(i), ds.features(i)));
    return std::sqrt(r2);
}

FolConfig fol_config(const TrainOptions& o, const Dataset& ds) {
    FolConfig c;
    c.gamma = o.gamma;
    c.seed = o.seed;
    c.output_mode = parse_ensemble_mode(o.mode);
    c.snapshot_policy = parse_snapshot_policy(o.policy);
    c.eval_every = o.eval_every;
    c.log_rounds = !o.rounds_out.empty();
    c.theorem_mode = o.theorem_mode;
    if (o.theorem_mode) {
        if (o.T != 0 || o.k != 0) throw ConfigError("--theorem-mode derives T and k; do not pass them");
        double C = 0.0;
        if (o.C) {
            C = *o.C;
        } else if (o.margin) {
            C = perceptron_mistake_bound(o.radius.value_or(max_norm(ds)), *o.margin);
        } else {
            throw ConfigError("--theorem-mode needs --C or --margin (with optional --radius)");
        }
        const auto p = theorem1_params(ds.size(), C, o.epsilon, o.delta);
        c.T = p.T;
        c.k = p.k;
        c.eta = o.eta;
        std::cerr << "theorem mode: m=" << ds.size() << " C=" << io::format_double(C)
                  << " epsilon=" << io::format_double(o.epsilon) << " delta=" << io::format_double(o.delta)
                  << " -> T=" << p.T << " k=" << p.k << " eta=" << io::format_double(p.eta) << '\n';
    } else {
        if (o.T == 0 || o.k == 0) throw ConfigError("pass --T and --k, or use --theorem-mode");
        c.T = o.T;
        c.k = o.k;
        c.eta = o.eta;
        std::cerr << "fol: m=" << ds.size() << " T=" << c.T << " k=" << c.k
                  << " eta=" << io::format_double(c.resolved_eta(ds.size()))
                  << " gamma=" << io::format_double(c.gamma) << '\n';
    }
    c.validate(ds.size());
    return c;
}

int run_train(const TrainOptions& o) {
    const auto ds = io::read_dataset_csv(o.data);
    const auto kind = parse_learner_kind(o.learner);
    const auto params = learner_params(o);
    OnlineLearner learner(kind, ds.dimension(), params);
    Rng rng(o.seed);

    json model;
    RunMetrics metrics;
    if (o.algorithm == "fol" || o.algorithm == "fol-slack") {
        const auto config = fol_config(o, ds);
        FolResult result;
        if (o.algorithm == "fol") {
            result = run(ds, learner, config, rng);
        } else {
            SlackState slack{{}, o.slack_budget, parse_slack_norm(o.slack_norm)};
            if (!(o.slack_budget >= 0.0)) throw ConfigError("--slack-budget must be non-negative");
            auto r = fol_with_slack(ds, learner, config, slack, rng, {o.slack_rate, o.slack_multiplicative});
            write_if(o.slack_out, io::slack_csv(r.slack.xi));
            result = std::move(r.fol);
        }
        model = io::ensemble_to_json(result.ensemble, to_string(kind), result.averaged);
        model["snapshot_rounds"] = result.snapshot_rounds;
        write_if(o.rounds_out, io::rounds_csv(result.metrics.rounds));
        metrics = std::move(result.metrics);
    } else if (o.algorithm == "sgd") {
        if (o.epochs == 0) throw ConfigError("--epochs must be positive");
        auto r = sgd_average(ds, learner, o.epochs, rng);
        model = io::hypothesis_to_json(r.hypothesis, to_string(kind));
        metrics = std::move(r.metrics);
    } else if (o.algorithm == "adaboost") {
        const std::size_t rounds = o.boost_rounds != 0 ? o.boost_rounds : std::max<std::size_t>(1, o.epochs / 2);
        auto factory = [&] { return OnlineLearner(kind, ds.dimension(), params); };
        auto r = adaboost(ds, factory, rounds, rng, {o.warm_start});
        std::cerr << "adaboost: " << rounds << " rounds = " << io::format_double(r.epochs) << " epochs\n";
        model = io::weighted_ensemble_to_json(r.ensemble, to_string(kind));
        json weak = json::array();
        for (const auto& b : r.rounds) {
            weak.push_back({{"t", b.t}, {"weighted_error", b.weighted_error}, {"alpha", b.alpha}, {"retries", b.retries}});
        }
        model["rounds"] = weak;
        metrics = std::move(r.metrics);
    } else {
        throw ConfigError("unknown algorithm: " + o.algorithm);
    }

    const auto rows = io::metrics_rows(metrics);
    io::write_file_atomic(o.model_out, dump(model));
    io::write_file_atomic(o.metrics_out, io::metrics_csv(rows));
    write_if(o.summary_out, dump(io::summarize(rows)));
    std::cerr << "final: ensemble_lmax=" << io::format_double(metrics.final.ensemble_lmax)
              << " ensemble_mistakes=" << metrics.final.ensemble_mistakes
              << " last_mistakes=" << metrics.final.last_mistakes << '\n';
    return 0;
}

// --- bench-gap -----------------------------------------------------------------

struct GapOptions {
    double alpha = 0.05;
    std::vector<double> epsilons{0.01};
    double budget_multiplier = 50.0;
    std::size_t seeds = 20;
    std::uint64_t seed = 0;
    double delta = 0.1;
    double sgd_rate = 0.1;
    std::size_t coupon_trials = 1000;
    std::string out = "gap.csv";
    std::string summary_out = "gap_summary.json";
};

int run_bench_gap(const GapOptions& o) {
    if (o.epsilons.empty()) throw ConfigError("empty epsilon grid");
    for (double e : o.epsilons) {
        if (!(e > 0.0 && e < 1.0)) throw ConfigError("epsilon grid values must be in (0,1)");
    }
    std::string csv = "alpha,epsilon,seed,metric,value\n";
    json summary = {{"alpha", o.alpha}, {"budget_multiplier", o.budget_multiplier}, {"seeds", o.seeds},
                    {"sgd_rate", o.sgd_rate}, {"grid", json::array()}};
    const std::size_t grid = o.epsilons.size();
    std::vector<GapRaceReport> races(grid);
    std::vector<CouponCollectorReport> lemmas(grid);
    std::vector<std::string> failures(grid);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t g = 0; g < grid; ++g) {
        try {
            Rng rng(mix_seed(o.seed, g));
            races[g] = gap_race(o.alpha, o.epsilons[g], o.budget_multiplier, o.seeds, rng, {o.delta, 0, o.sgd_rate});
            lemmas[g] = gap_lemma1_check(o.alpha, o.epsilons[g], o.delta, o.coupon_trials, rng);
        } catch (const std::exception& e) {
            failures[g] = e.what();
        }
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw ConfigError(f);
    }
    for (std::size_t g = 0; g < grid; ++g) {
        const double eps = o.epsilons[g];
        const auto& race = races[g];
        const auto& lemma = lemmas[g];
        const std::string prefix = csv_field(o.alpha) + ',' + csv_field(eps) + ',';
        for (const auto& row : race.rows) {
            const std::string p = prefix + std::to_string(row.seed) + ',';
            csv += p + "train_size," + std::to_string(row.train_size) + '\n';
            csv += p + "rare_in_sample," + std::to_string(row.rare_in_sample) + '\n';
            csv += p + "fol_solved," + (row.fol_iterations ? "1" : "0") + '\n';
            if (row.fol_iterations) csv += p + "fol_iterations," + std::to_string(*row.fol_iterations) + '\n';
            csv += p + "sgd_solved," + (row.sgd_iterations ? "1" : "0") + '\n';
            if (row.sgd_iterations) csv += p + "sgd_iterations," + std::to_string(*row.sgd_iterations) + '\n';
            csv += p + "sgd_final_error," + csv_field(row.sgd_final_error) + '\n';
        }
        summary["grid"].push_back({{"epsilon", eps},
                                   {"budget", race.budget},
                                   {"fol_success_fraction", race.fol_success_fraction},
                                   {"sgd_failure_fraction", race.sgd_failure_fraction},
                                   {"fol_median_iterations", race.fol_median_iterations},
                                   {"sgd_median_iterations", race.sgd_median_iterations},
                                   {"coupon_collector",
                                    {{"m", lemma.m},
                                     {"trials", lemma.trials},
                                     {"all_present_frequency", lemma.all_present_frequency},
                                     {"missing_frequency", lemma.missing_frequency},
                                     {"missing_bound", lemma.missing_bound},
                                     {"sigma", lemma.sigma},
                                     {"bound_respected", lemma.bound_respected},
                                     {"erm_zero_error_frequency", lemma.erm_zero_error_frequency}}}});
        std::cerr << "epsilon=" << io::format_double(eps) << " budget=" << race.budget
                  << " fol_success=" << io::format_double(race.fol_success_fraction)
                  << " sgd_failure=" << io::format_double(race.sgd_failure_fraction) << '\n';
    }
    io::write_file_atomic(o.out, csv);
    io::write_file_atomic(o.summary_out, dump(summary));
    return 0;
}

// --- bench-mixture ---------------------------------------------------------------

struct MixtureOptions {
    std::size_t d = 4;
    double lambda2 = 0.01;
    std::vector<std::size_t> m_grid{50, 100, 200, 400, 800, 1600, 3200};
    double epsilon = 0.01;
    double delta = 0.1;
    std::size_t seeds = 50;
    std::uint64_t seed = 0;
    std::string tie_break = "fewest";
    std::string out = "mixture.csv";
    std::string summary_out = "mixture_summary.json";
};

int run_bench_mixture(const MixtureOptions& o) {
    if (o.m_grid.empty()) throw ConfigError("empty m grid");
    if (o.d == 0 || o.d > 10) throw ConfigError("--d must be in [1, 10]");
    if (o.seeds == 0) throw ConfigError("--seeds must be positive");
    Rng rng(o.seed);
    const MixtureDistribution dist{o.d, o.lambda2};
    const auto rep = mixture_erm_experiment(dist, o.m_grid, o.epsilon, o.delta, o.seeds, rng, parse_tie_break(o.tie_break));
    std::string csv = "m,seed,metric,value\n";
    for (const auto& row : rep.rows) {
        const std::string p = std::to_string(row.m) + ',' + std::to_string(row.seed) + ',';
        csv += p + "rare_count," + std::to_string(row.rare_count) + '\n';
        csv += p + "erm_mask," + std::to_string(row.erm_mask) + '\n';
        csv += p + "typical_error," + csv_field(row.typical_error) + '\n';
        csv += p + "rare_error," + csv_field(row.rare_error) + '\n';
        csv += p + "both_within_epsilon," + (row.both_within_epsilon ? "1" : "0") + '\n';
    }
    json summary = {{"d", o.d},
                    {"lambda2", o.lambda2},
                    {"epsilon", o.epsilon},
                    {"delta", o.delta},
                    {"seeds", o.seeds},
                    {"tie_break", std::string(to_string(rep.tie_break))},
                    {"min_wrong_rare_error", rep.gap_constant},
                    {"sample_size_reached", rep.sample_size_reached ? json(*rep.sample_size_reached) : json(nullptr)},
                    {"grid", json::array()}};
    for (const auto& s : rep.summary) {
        summary["grid"].push_back({{"m", s.m},
                                   {"success_fraction", s.success_fraction},
                                   {"mean_rare_error", s.mean_rare_error},
                                   {"mean_typical_error", s.mean_typical_error},
                                   {"mean_rare_count", s.mean_rare_count}});
    }
    io::write_file_atomic(o.out, csv);
    io::write_file_atomic(o.summary_out, dump(summary));
    std::cerr << "min wrong L_D2 = " << io::format_double(rep.gap_constant) << '\n';
    return 0;
}

// --- bench-robust ------------------------------------------------------------------

struct RobustOptions {
    std::vector<std::size_t> m_grid{100000, 200000, 500000};
    std::vector<std::size_t> k_grid{1, 5, 10};
    double rare_scale = 1000.0 * std::log(100.0);  // m2 = rare_scale * k
    double n_divisor = 100.0;                       // n = m / (n_divisor * k)
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    std::string out = "robust.csv";
    std::string summary_out = "robust_summary.json";
};

int run_bench_robust(const RobustOptions& o) {
    if (o.m_grid.empty() || o.k_grid.empty()) throw ConfigError("empty grid");
    if (o.trials == 0) throw ConfigError("--trials must be positive");
    std::string csv = "m,k,m2,n,metric,value\n";
    json summary = {{"trials", o.trials}, {"grid", json::array()}};

    // The worked example: m = 1e5 scale, k = 10, n = m/(100k), m2 = 1000 ln(100) k.
    const double ek = 10.0, em = 1e5;
    const auto example = theorem3_bound(ek, 1000.0 * std::log(100.0) * ek, em, em / (100.0 * ek));
    summary["example"] = {{"bound", example.value}, {"at_most_0_03", example.value <= 0.03}};

    bool all_ok = true;
    std::size_t index = 0;
    for (std::size_t m : o.m_grid) {
        for (std::size_t k : o.k_grid) {
            const auto m2 = static_cast<std::size_t>(std::llround(o.rare_scale * static_cast<double>(k)));
            const auto n = static_cast<std::size_t>(static_cast<double>(m) / (o.n_divisor * static_cast<double>(std::max<std::size_t>(k, 1))));
            if (k + m2 > m) throw ConfigError("grid point m=" + std::to_string(m) + " k=" + std::to_string(k) + " has k + m2 > m");
            Rng rng(mix_seed(o.seed, index++));
            const auto bound = theorem3_bound(static_cast<double>(k), static_cast<double>(m2), static_cast<double>(m), static_cast<double>(n));
            const auto est = monte_carlo_bad_event(m, k, m2, n, o.trials, rng);
            const bool ok = est.probability <= bound.value + 3.0 * est.std_error;
            all_ok = all_ok && (ok || !bound.hypothesis_holds);
            const std::string p = std::to_string(m) + ',' + std::to_string(k) + ',' + std::to_string(m2) + ',' + std::to_string(n) + ',';
            csv += p + "bound," + csv_field(bound.value) + '\n';
            csv += p + "probability," + csv_field(est.probability) + '\n';
            csv += p + "std_error," + csv_field(est.std_error) + '\n';
            csv += p + "within_bound," + (ok ? "1" : "0") + '\n';
            summary["grid"].push_back({{"m", m}, {"k", k}, {"m2", m2}, {"n", n},
                                       {"bound", bound.value}, {"hypothesis_holds", bound.hypothesis_holds},
                                       {"probability", est.probability}, {"std_error", est.std_error},
                                       {"within_bound", ok}});
        }
    }
    summary["all_within_bound"] = all_ok;
    io::write_file_atomic(o.out, csv);
    io::write_file_atomic(o.summary_out, dump(summary));
    std::cerr << "example bound " << io::format_double(example.value) << ", grid "
              << (all_ok ? "within" : "outside") << " bound\n";
    return 0;
}

// --- compare ----------------------------------------------------------------------

struct CompareOptions {
    std::string data;
    std::size_t m = 2000;
    std::size_t d = 20;
    double margin = 1.0;
    double radius = 10.0;
    std::uint64_t data_seed = 1;
    std::vector<std::string> algorithms{"fol", "sgd", "adaboost"};
    std::string learner = "sgd-logistic";
    double rate = 1.0;
    std::size_t epochs = 20;
    std::uint64_t seed = 0;
    std::string out = "compare.csv";
    std::string summary_out = "compare_summary.json";
};

int run_compare(const CompareOptions& o) {
    Dataset ds;
    if (!o.data.empty()) {
        ds = io::read_dataset_csv(o.data);
    } else {
        Rng data_rng(o.data_seed);
        ds = make_separable(o.m, o.d, o.margin, o.radius, data_rng).data;
    }
    if (o.epochs < 2) throw ConfigError("--epochs must be at least 2");
    const auto kind = parse_learner_kind(o.learner);
    LearnerParams params;
    params.base_rate = o.rate;
    const std::size_t m = ds.size();

    std::string csv = "algorithm,step,epochs,metric,value\n";
    json summary = {{"m", m}, {"d", ds.dimension()}, {"epochs", o.epochs}, {"learner", o.learner},
                    {"algorithms", json::object()}};
    auto emit = [&](const std::string& name, const RunMetrics& metrics) {
        for (const auto& r : io::metrics_rows(metrics)) {
            csv += name + ',' + std::to_string(r.step) + ',' + csv_field(r.epochs) + ',' + r.metric + ',' + csv_field(r.value) + '\n';
        }
        const auto& f = metrics.final;
        summary["algorithms"][name] = {{"epochs", f.epochs},
                                       {"ensemble_mistakes", f.ensemble_mistakes},
                                       {"ensemble_lmax", f.ensemble_lmax},
                                       {"last_mistakes", f.last_mistakes},
                                       {"rounds_to_consistency", f.rounds_to_consistency ? json(*f.rounds_to_consistency) : json(nullptr)}};
    };

    for (std::size_t a = 0; a < o.algorithms.size(); ++a) {
        const auto& name = o.algorithms[a];
        Rng rng(mix_seed(o.seed, a));
        if (name == "fol") {
            FolConfig c;
            c.T = o.epochs * m;
            c.k = std::min<std::size_t>(c.T, 100);
            c.eval_every = m;
            OnlineLearner learner(kind, ds.dimension(), params);
            emit(name, run(ds, learner, c, rng).metrics);
        } else if (name == "sgd") {
            OnlineLearner learner(kind, ds.dimension(), params);
            emit(name, sgd_average(ds, learner, o.epochs, rng).metrics);
        } else if (name == "adaboost") {
            auto factory = [&] { return OnlineLearner(kind, ds.dimension(), params); };
            emit(name, adaboost(ds, factory, o.epochs / 2, rng).metrics);
        } else {
            throw ConfigError("unknown algorithm in --algorithms: " + name);
        }
    }
    io::write_file_atomic(o.out, csv);
    io::write_file_atomic(o.summary_out, dump(summary));
    return 0;
}

// --- audit --------------------------------------------------------------------------

struct AuditOptions {
    std::string data;
    std::size_t m = 8;
    std::size_t d = 3;
    std::size_t T = 500;
    double eta = 0.0;
    double gamma = 0.5;
    std::string learner = "ogd-hinge";
    double rate = 0.1;
    std::uint64_t seed = 0;
    std::string report_out;
};

int run_audit(const AuditOptions& o) {
    if (!(o.eta >= 0.0) || !std::isfinite(o.eta)) throw ConfigError("--eta must be positive (0 selects 1/(2m))");
    Dataset ds;
    Rng rng(o.seed);
    if (!o.data.empty()) {
        ds = io::read_dataset_csv(o.data);
    } else {
        if (o.m == 0 || o.d == 0) throw ConfigError("--m and --d must be positive");
        std::vector<double> x(o.m * o.d);
        std::vector<int> y(o.m);
        for (auto& v : x) v = 2.0 * uniform01(rng) - 1.0;
        for (auto& l : y) l = uniform01(rng) < 0.5 ? -1 : 1;
        ds = Dataset(o.d, std::move(x), std::move(y));
    }
    const std::size_t m = ds.size();
    if (m > PPlayer::kMaxAuditSize) throw ConfigError("audit requires m <= " + std::to_string(PPlayer::kMaxAuditSize));

    FolConfig c;
    c.eta = o.eta;
    c.gamma = o.gamma;
    c.audit = true;
    RegretReport report;
    if (o.T == 0) {
        c.T = 1;
        c.validate(m);
        report = audit_regret({}, {}, m, c.resolved_eta(m));
    } else {
        c.T = o.T;
        c.k = 1;
        c.validate(m);
        LearnerParams params;
        params.base_rate = o.rate;
        OnlineLearner learner(parse_learner_kind(o.learner), ds.dimension(), params);
        report = *run(ds, learner, c, rng).metrics.regret;
    }
    json j = {{"schema_version", io::kSchemaVersion},
              {"m", m},
              {"rounds", report.rounds},
              {"eta", c.resolved_eta(m)},
              {"gamma", c.gamma},
              {"bound", report.bound},
              {"corner_lhs", report.corner_lhs},
              {"max_violation", report.max_violation},
              {"worst_corner", report.worst_corner},
              {"holds", report.holds()}};
    write_if(o.report_out, dump(j));
    std::cerr << "audit: rounds=" << report.rounds << " bound=" << io::format_double(report.bound)
              << " max_violation=" << io::format_double(report.max_violation) << '\n';
    if (!report.holds()) {
        throw InvariantViolation("regret inequality violated at corner " + std::to_string(report.worst_corner) +
                                 " by " + io::format_double(report.max_violation));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Max-loss minimization by focused online learning"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI file");

    TrainOptions train;
    auto* t = app.add_subcommand("train", "Train on a dataset CSV");
    t->add_option("--data", train.data, "Dataset CSV (label first, then features)")->required();
    t->add_option("--algorithm", train.algorithm, "fol | fol-slack | sgd | adaboost")
        ->check(CLI::IsMember({"fol", "fol-slack", "sgd", "adaboost"}));
    t->add_option("--learner", train.learner, "perceptron | ogd-hinge | sgd-logistic");
    t->add_option("--loss", train.loss, "Reported loss: zero-one | hinge | logistic (default: the learner's)");
    t->add_option("--rate", train.rate, "Base learning rate");
    t->add_option("--decay", train.decay, "Rate decay: eta_t = rate (1 + decay t)^-power");
    t->add_option("--power", train.power, "Rate decay power");
    t->add_option("--l2", train.l2, "L2 regularization");
    t->add_option("--T", train.T, "Rounds");
    t->add_option("--k", train.k, "Ensemble size");
    t->add_option("--eta", train.eta, "Sampler step (0 = 1/(2m))");
    t->add_option("--gamma", train.gamma, "Uniform exploration share");
    t->add_flag("--theorem-mode", train.theorem_mode, "Derive T, k, eta from --epsilon, --delta and C");
    t->add_option("--epsilon", train.epsilon, "Target max loss in theorem mode");
    t->add_option("--delta", train.delta, "Failure probability in theorem mode");
    t->add_option("--C", train.C, "Mistake bound of the learner");
    t->add_option("--margin", train.margin, "Geometric margin; sets C = radius^2 / margin^2");
    t->add_option("--radius", train.radius, "Data radius (default: largest example norm)");
    t->add_option("--mode", train.mode, "majority | average");
    t->add_option("--policy", train.policy, "presampled | storeall");
    t->add_option("--seed", train.seed, "Random seed");
    t->add_option("--eval-every", train.eval_every, "Checkpoint period in rounds (0 = final only)");
    t->add_option("--epochs", train.epochs, "Epochs for sgd, or 2 x boosting rounds for adaboost");
    t->add_option("--boost-rounds", train.boost_rounds, "Boosting rounds (overrides --epochs)");
    t->add_flag("--warm-start", train.warm_start, "Start each weak learner from the previous one");
    t->add_option("--slack-budget", train.slack_budget, "Slack budget K (fol-slack)");
    t->add_option("--slack-norm", train.slack_norm, "l1 | l2sq");
    t->add_option("--slack-rate", train.slack_rate, "Slack step (0 = 1/(2m))");
    t->add_flag("--slack-multiplicative", train.slack_multiplicative, "Feed (1 - xi) loss instead of loss - xi");
    t->add_option("--model-out", train.model_out, "Model JSON path");
    t->add_option("--metrics-out", train.metrics_out, "Metrics CSV path");
    t->add_option("--summary-out", train.summary_out, "Metrics summary JSON path");
    t->add_option("--rounds-out", train.rounds_out, "Per-round log CSV path (fol)");
    t->add_option("--slack-out", train.slack_out, "Final slack CSV path (fol-slack)");

    GapOptions gap;
    auto* g = app.add_subcommand("bench-gap", "Focused vs uniform sampling on the four-point gap distribution");
    g->add_option("--alpha", gap.alpha, "Margin parameter alpha");
    g->add_option("--epsilon", gap.epsilons, "Rare-point probability (repeatable for a sweep)")->delimiter(',');
    g->add_option("--budget-multiplier", gap.budget_multiplier, "Budget = multiplier (1/epsilon + 1/alpha)");
    g->add_option("--seeds", gap.seeds, "Seeds per grid point");
    g->add_option("--seed", gap.seed, "Base seed");
    g->add_option("--delta", gap.delta, "Sets the training-set size 2 ln(4/delta)/epsilon");
    g->add_option("--sgd-rate", gap.sgd_rate, "Step of the uniform hinge SGD");
    g->add_option("--coupon-trials", gap.coupon_trials, "Trials for the coupon-collector check");
    g->add_option("--out", gap.out, "Long-format CSV path");
    g->add_option("--summary-out", gap.summary_out, "JSON summary path");

    MixtureOptions mix;
    auto* x = app.add_subcommand("bench-mixture", "ERM over conjunctions on a typical/rare mixture");
    x->add_option("--d", mix.d, "Number of boolean features (<= 10)");
    x->add_option("--lambda2", mix.lambda2, "Rare-component weight");
    x->add_option("--m-grid", mix.m_grid, "Sample sizes")->delimiter(',');
    x->add_option("--epsilon", mix.epsilon, "Error target");
    x->add_option("--delta", mix.delta, "Failure probability");
    x->add_option("--seeds", mix.seeds, "Seeds");
    x->add_option("--seed", mix.seed, "Base seed");
    x->add_option("--tie-break", mix.tie_break, "fewest | most literals among ERM ties");
    x->add_option("--out", mix.out, "Long-format CSV path");
    x->add_option("--summary-out", mix.summary_out, "JSON summary path");

    RobustOptions rob;
    auto* r = app.add_subcommand("bench-robust", "Sub-sampling bad-event bound vs Monte Carlo");
    r->add_option("--m-grid", rob.m_grid, "Dataset sizes")->delimiter(',');
    r->add_option("--k-grid", rob.k_grid, "Outlier counts")->delimiter(',');
    r->add_option("--rare-scale", rob.rare_scale, "m2 = rare-scale * k");
    r->add_option("--n-divisor", rob.n_divisor, "n = m / (n-divisor * k)");
    r->add_option("--trials", rob.trials, "Monte Carlo trials per grid point");
    r->add_option("--seed", rob.seed, "Base seed");
    r->add_option("--out", rob.out, "Long-format CSV path");
    r->add_option("--summary-out", rob.summary_out, "JSON summary path");

    CompareOptions cmp;
    auto* c = app.add_subcommand("compare", "Epoch-aligned error curves of FOL, SGD and AdaBoost");
    c->add_option("--data", cmp.data, "Dataset CSV (default: a generated separable set)");
    c->add_option("--m", cmp.m, "Generated set size");
    c->add_option("--d", cmp.d, "Generated dimension");
    c->add_option("--margin", cmp.margin, "Generated geometric margin");
    c->add_option("--radius", cmp.radius, "Generated radius");
    c->add_option("--data-seed", cmp.data_seed, "Seed of the generated set");
    c->add_option("--algorithms", cmp.algorithms, "Subset of fol,sgd,adaboost")->delimiter(',');
    c->add_option("--learner", cmp.learner, "Learner for every algorithm");
    c->add_option("--rate", cmp.rate, "Learning rate");
    c->add_option("--epochs", cmp.epochs, "Epoch budget (AdaBoost rounds count two epochs each)");
    c->add_option("--seed", cmp.seed, "Base seed");
    c->add_option("--out", cmp.out, "Long-format CSV path");
    c->add_option("--summary-out", cmp.summary_out, "JSON summary path");

    AuditOptions aud;
    auto* a = app.add_subcommand("audit", "Check the sampler's regret inequality on a logged run");
    a->add_option("--data", aud.data, "Dataset CSV with at most 256 rows (default: random data)");
    a->add_option("--m", aud.m, "Random dataset size");
    a->add_option("--d", aud.d, "Random dataset dimension");
    a->add_option("--T", aud.T, "Rounds (0 passes vacuously)");
    a->add_option("--eta", aud.eta, "Sampler step (0 = 1/(2m))");
    a->add_option("--gamma", aud.gamma, "Uniform exploration share");
    a->add_option("--learner", aud.learner, "perceptron | ogd-hinge | sgd-logistic");
    a->add_option("--rate", aud.rate, "Learner rate");
    a->add_option("--seed", aud.seed, "Random seed");
    a->add_option("--report-out", aud.report_out, "Audit report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (t->parsed()) return run_train(train);
        if (g->parsed()) return run_bench_gap(gap);
        if (x->parsed()) return run_bench_mixture(mix);
        if (r->parsed()) return run_bench_robust(rob);
        if (c->parsed()) return run_compare(cmp);
        if (a->parsed()) return run_audit(aud);
    } catch (const io::ParseError& e) {
        std::cerr << "error: parse: " << e.what() << '\n';
        return kExitIo;
    } catch (const io::IoError& e) {
        std::cerr << "error: io: " << e.what() << '\n';
        return kExitIo;
    } catch (const InvariantViolation& e) {
        std::cerr << "error: invariant: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const BoostingAborted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return kExitConfig;
}
