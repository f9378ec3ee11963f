#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kcost/constructions.hpp"
#include "kcost/coreset.hpp"
#include "kcost/cost.hpp"
#include "kcost/generators.hpp"
#include "kcost/geometry.hpp"
#include "kcost/io.hpp"
#include "kcost/metricspace.hpp"
#include "kcost/nets.hpp"
#include "kcost/rng.hpp"
#include "kcost/sampling.hpp"
#include "kcost/solvers.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kcost;

constexpr const char* kVersion = "0.1.0";

std::string iso_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json base_report(const std::string& command, json config) {
    json r;
    r["tool"] = "kcost";
    r["version"] = kVersion;
    r["command"] = command;
    r["timestamp"] = iso_now();
    r["config"] = std::move(config);
    return r;
}

void emit(const json& r, const std::string& path) {
    const std::string text = r.dump(2) + "\n";
    if (!path.empty()) {
        std::ofstream f(path);
        f << text;
        if (!f) throw std::runtime_error("write failed: " + path);
    }
    std::cout << text;
}

json summary(const Dataset& x) { return json{{"n", x.size()}, {"dim", x.dim()}}; }

json spec_json(const LowerBoundSpec& s) {
    return json{{"epsilon", s.epsilon},
                {"k", s.k},
                {"d", s.d},
                {"t", s.t},
                {"r", s.r},
                {"eta", s.eta},
                {"realized_n", s.realized_n},
                {"apex_spacing", s.apex_spacing},
                {"delta_apex", s.delta_apex},
                {"kind", cost_kind_name(s.kind)},
                {"directions", s.directions.size()}};
}

CostKind kind_from(const std::string& s) {
    if (s == "means") return CostKind::means;
    if (s == "median") return CostKind::median;
    throw CLI::ValidationError("--kind", "expected 'means' or 'median'");
}

SolveMethod method_from(const std::string& s) { return solve_method_from_name(s); }

// Common option bundle shared by commands that read a dataset and run a
// solver oracle.
struct OracleOpts {
    std::string data;
    std::string kind = "means";
    std::string oracle = "dp1d";
    int restarts = 8;
    std::uint64_t seed = 0;
};

void add_oracle_opts(CLI::App* c, const std::shared_ptr<OracleOpts>& o,
                     bool data_required = true) {
    auto* d = c->add_option("--data", o->data, "dataset CSV");
    if (data_required) d->required();
    c->add_option("--kind", o->kind, "means | median")->capture_default_str();
    c->add_option("--oracle", o->oracle, "dp1d | enumerate | lloyd")
        ->capture_default_str();
    c->add_option("--restarts", o->restarts, "restarts for the lloyd oracle")
        ->capture_default_str();
    c->add_option("--seed", o->seed, "rng seed")->envname("KCOST_SEED");
}

// ---------------------------------------------------------------- gen

void register_gen(CLI::App& app, int* rc) {
    auto* gen = app.add_subcommand("gen", "generate datasets");
    gen->require_subcommand(1);
    (void)rc;

    {
        struct Opts {
            double epsilon = 1.0 / 32;
            int t = 2;
            std::string out, report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = gen->add_subcommand("lower1d",
                                      "two-sided hierarchical 1-d hard instance");
        c->add_option("--epsilon", o->epsilon, "precision in (0, 1/8)")->required();
        c->add_option("--t", o->t, "levels per side")->required();
        c->add_option("--out", o->out, "dataset CSV path");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            auto [x, spec] = gen_lower_1d(o->epsilon, o->t);
            if (!o->out.empty()) write_dataset_csv(o->out, x);
            json r = base_report("gen lower1d", json{{"epsilon", o->epsilon},
                                                     {"t", o->t},
                                                     {"seed", 0},
                                                     {"out", o->out}});
            r["spec"] = spec_json(spec);
            r["data"] = summary(x);
            emit(r, o->report);
        });
    }
    {
        struct Opts {
            double epsilon = 1.0 / 32;
            int k = 2;
            int d = 2;
            int t = 1;
            std::string kind = "means";
            std::size_t pool = 0;
            std::uint64_t seed = 0;
            std::string out, report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = gen->add_subcommand("lowerd", "fan-shaped d-dimensional hard instance");
        c->add_option("--epsilon", o->epsilon, "precision in (0, 1/8)")->required();
        c->add_option("--k", o->k, "apex count")->required();
        c->add_option("--d", o->d, "dimension")->required();
        c->add_option("--t", o->t, "levels per ray")->required();
        c->add_option("--kind", o->kind, "means | median")->capture_default_str();
        c->add_option("--pool", o->pool, "net candidate pool (0 = default)");
        c->add_option("--seed", o->seed, "rng seed")->envname("KCOST_SEED");
        c->add_option("--out", o->out, "dataset CSV path");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            const CostKind kind = kind_from(o->kind);
            const double scale = kind == CostKind::means
                                     ? std::sqrt(8.0 * o->epsilon)
                                     : 4.0 * o->epsilon;
            const SphereNet net = build_net(o->d, scale, o->pool, o->seed);
            auto [x, spec] = gen_lower_ddim(o->epsilon, o->k, o->d, o->t, net, kind);
            if (!o->out.empty()) write_dataset_csv(o->out, x);
            json r = base_report("gen lowerd", json{{"epsilon", o->epsilon},
                                                    {"k", o->k},
                                                    {"d", o->d},
                                                    {"t", o->t},
                                                    {"kind", o->kind},
                                                    {"pool", o->pool},
                                                    {"seed", o->seed},
                                                    {"out", o->out}});
            r["spec"] = spec_json(spec);
            r["net"] = json{{"scale", scale}, {"size", net.size()}};
            r["data"] = summary(x);
            emit(r, o->report);
        });
    }
    {
        struct Opts {
            std::string kind = "uniform-box";
            std::size_t n = 100;
            int d = 2;
            int k = 1;
            double box_lo = 0.0, box_hi = 1.0;
            double sigma = 0.0;
            double separation = 0.0;
            std::uint64_t seed = 0;
            std::string out, report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = gen->add_subcommand("random", "random test data");
        c->add_option("--kind", o->kind,
                      "uniform-box | gaussian-mixture | separated-clusters")
            ->capture_default_str();
        c->add_option("--n", o->n, "point count")->required();
        c->add_option("--d", o->d, "dimension")->capture_default_str();
        c->add_option("--k", o->k, "components / clusters")->capture_default_str();
        c->add_option("--box-lo", o->box_lo, "box lower corner coordinate");
        c->add_option("--box-hi", o->box_hi, "box upper corner coordinate");
        c->add_option("--sigma", o->sigma, "intra-cluster spread");
        c->add_option("--separation", o->separation,
                      "min center gap over max intra radius");
        c->add_option("--seed", o->seed, "rng seed")->envname("KCOST_SEED");
        c->add_option("--out", o->out, "dataset CSV path");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            RandomSpec rs;
            if (o->kind == "uniform-box") rs.kind = RandomKind::uniform_box;
            else if (o->kind == "gaussian-mixture") rs.kind = RandomKind::gaussian_mixture;
            else if (o->kind == "separated-clusters")
                rs.kind = RandomKind::separated_clusters;
            else
                throw CLI::ValidationError("--kind", "unknown generator kind");
            rs.n = o->n;
            rs.d = o->d;
            rs.k = o->k;
            rs.box_lo = o->box_lo;
            rs.box_hi = o->box_hi;
            rs.sigma = o->sigma;
            rs.separation = o->separation;
            const Dataset x = gen_random(rs, o->seed);
            if (!o->out.empty()) write_dataset_csv(o->out, x);
            json r = base_report("gen random", json{{"kind", o->kind},
                                                    {"n", o->n},
                                                    {"d", o->d},
                                                    {"k", o->k},
                                                    {"box_lo", o->box_lo},
                                                    {"box_hi", o->box_hi},
                                                    {"sigma", o->sigma},
                                                    {"separation", o->separation},
                                                    {"seed", o->seed},
                                                    {"out", o->out}});
            r["data"] = summary(x);
            emit(r, o->report);
        });
    }
}

// ---------------------------------------------------------------- solve

void register_solve(CLI::App& app, int* rc) {
    struct Opts : OracleOpts {
        int k = 1;
        std::string method = "dp1d";
        std::string centers_out, report;
    };
    auto o = std::make_shared<Opts>();
    auto* c = app.add_subcommand("solve", "optimal or heuristic k-clustering cost");
    c->add_option("--data", o->data, "dataset CSV")->required();
    c->add_option("--k", o->k, "cluster count")->required();
    c->add_option("--kind", o->kind, "means | median")->capture_default_str();
    c->add_option("--method", o->method, "dp1d | enumerate | lloyd")
        ->capture_default_str();
    c->add_option("--restarts", o->restarts, "restarts for lloyd")->capture_default_str();
    c->add_option("--seed", o->seed, "rng seed")->envname("KCOST_SEED");
    c->add_option("--centers-out", o->centers_out, "write centers CSV here");
    c->add_option("--report", o->report, "copy the JSON report to this path");
    (void)rc;
    c->callback([o] {
        const Dataset x = read_dataset_csv(o->data);
        const auto res = solve(x, o->k, kind_from(o->kind), method_from(o->method),
                               o->seed, o->restarts);
        if (!o->centers_out.empty()) write_dataset_csv(o->centers_out, res.centers);
        json r = base_report("solve", json{{"data", o->data},
                                           {"k", o->k},
                                           {"kind", o->kind},
                                           {"method", o->method},
                                           {"restarts", o->restarts},
                                           {"seed", o->seed}});
        r["data_summary"] = summary(x);
        r["value"] = res.value;
        r["exact"] = res.exact;
        r["method_used"] = solve_method_name(res.method);
        r["centers"] = res.centers.size();
        emit(r, o->report);
    });
}

// ---------------------------------------------------------------- seed

void register_seed(CLI::App& app, int* rc) {
    struct Opts : OracleOpts {
        int m = 0;
        std::string experiment;
        int k = 1;
        double epsilon = 0.5;
        double c_const = 1.0;
        int trials = 20;
        std::string centers_out, report;
    };
    auto o = std::make_shared<Opts>();
    auto* c = app.add_subcommand("seed", "adaptive distance sampling");
    add_oracle_opts(c, o);
    c->add_option("--m", o->m, "number of picks (plain trace mode)");
    c->add_option("--experiment", o->experiment, "'overseed' for the success-rate study");
    c->add_option("--k", o->k, "reference cluster count (overseed)");
    c->add_option("--epsilon", o->epsilon, "target cost fraction (overseed)");
    c->add_option("--c-const", o->c_const, "epsilon is divided by this before the "
                                           "size oracle (overseed)")
        ->capture_default_str();
    c->add_option("--trials", o->trials, "seeding repetitions (overseed)")
        ->capture_default_str();
    c->add_option("--centers-out", o->centers_out, "write picked points CSV here");
    c->add_option("--report", o->report, "copy the JSON report to this path");
    (void)rc;
    c->callback([o] {
        const Dataset x = read_dataset_csv(o->data);
        const CostKind kind = kind_from(o->kind);
        if (o->experiment.empty()) {
            if (o->m < 1)
                throw CLI::ValidationError("--m", "plain trace mode needs --m >= 1");
            const SeedingTrace t = d2_sample(x, o->m, kind, o->seed);
            if (!o->centers_out.empty())
                write_dataset_csv(o->centers_out, centers_from_trace(x, t));
            json r = base_report("seed", json{{"data", o->data},
                                              {"m", o->m},
                                              {"kind", o->kind},
                                              {"seed", o->seed}});
            r["data_summary"] = summary(x);
            r["chosen"] = t.chosen;
            r["cost_after"] = t.cost_after;
            r["early_stop"] = t.early_stop;
            emit(r, o->report);
            return;
        }
        if (o->experiment != "overseed")
            throw CLI::ValidationError("--experiment", "unknown experiment");
        const SolveMethod method = method_from(o->oracle);
        const bool exact = method != SolveMethod::lloyd_multistart;
        const auto seed = o->seed;
        const auto restarts = o->restarts;
        DeltaFn delta = [method, kind, seed, restarts](const Dataset& xx, int kk) {
            return solve(xx, kk, kind, method, derive_seed(seed, 0xDE1AULL), restarts)
                .value;
        };
        LFn lfn = [method, kind, seed, restarts](const Dataset& xx, int kk, double e) {
            return estimate_L(xx, kk, e, kind, method, derive_seed(seed, 0x1FA7ULL),
                              restarts)
                .l_hat;
        };
        const OverseedReport rep = overseed_experiment(
            x, o->k, o->epsilon, o->c_const, o->trials, kind, o->seed, delta, lfn, exact);
        json r = base_report("seed overseed", json{{"data", o->data},
                                                   {"k", o->k},
                                                   {"epsilon", o->epsilon},
                                                   {"c_const", o->c_const},
                                                   {"trials", o->trials},
                                                   {"kind", o->kind},
                                                   {"oracle", o->oracle},
                                                   {"restarts", o->restarts},
                                                   {"seed", o->seed}});
        r["data_summary"] = summary(x);
        r["m_used"] = rep.m_used;
        r["delta_k"] = rep.delta_k;
        r["oracle_exact"] = rep.oracle_exact;
        r["successes"] = rep.successes;
        r["success_rate"] = rep.success_rate;
        r["final_costs"] = rep.final_costs;
        r["mean_cost_after"] = rep.mean_cost_after;
        emit(r, o->report);
    });
}

// ---------------------------------------------------------------- construct

void register_construct(CLI::App& app, int* rc) {
    auto* con = app.add_subcommand("construct", "cost-preserving small point sets");
    con->require_subcommand(1);

    {
        struct Opts {
            std::string data;
            double epsilon = 0.5;
            std::string kind = "means";
            std::string out, report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = con->add_subcommand("upper1d", "1-d grid around the origin");
        c->add_option("--data", o->data, "1-d dataset CSV")->required();
        c->add_option("--epsilon", o->epsilon, "precision in (0, 1]")->required();
        c->add_option("--kind", o->kind, "means | median")->capture_default_str();
        c->add_option("--out", o->out, "grid CSV path");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            const Dataset x = read_dataset_csv(o->data);
            if (x.dim() != 1) throw std::invalid_argument("upper1d needs 1-d data");
            const CostKind kind = kind_from(o->kind);
            const Upper1d u = build_1d_upper(x.flat(), o->epsilon, kind);
            if (!o->out.empty()) {
                Dataset g(1);
                for (double v : u.s) g.push1(v);
                write_dataset_csv(o->out, g);
            }
            const double cost = cost_1d_sorted(u.s, x.flat(), kind);
            json r = base_report("construct upper1d", json{{"data", o->data},
                                                           {"epsilon", o->epsilon},
                                                           {"kind", o->kind},
                                                           {"seed", 0}});
            r["data_summary"] = summary(x);
            r["size"] = u.s.size();
            r["size_bound"] = u.size_bound;
            r["phi0"] = u.phi0;
            r["r_scale"] = u.r_scale;
            r["grid"] = u.grid;
            r["ratio_r"] = u.ratio_r;
            r["t"] = u.t;
            r["cost"] = cost;
            r["ratio"] = u.phi0 > 0.0 ? cost / u.phi0 : 0.0;
            r["pass"] = true;  // the builder throws when the guarantee fails
            emit(r, o->report);
        });
    }
    {
        struct Opts : OracleOpts {
            double epsilon = 0.5;
            int k = 0;
            std::string clusters;
            std::string out, report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = con->add_subcommand("fan", "per-cluster direction-net grids");
        add_oracle_opts(c, o);
        c->add_option("--epsilon", o->epsilon, "precision in (0, 1]")->required();
        c->add_option("--k", o->k, "cluster with the oracle at this k");
        c->add_option("--clusters", o->clusters, "centers CSV (overrides --k)");
        c->add_option("--out", o->out, "output point CSV path");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            const Dataset x = read_dataset_csv(o->data);
            const CostKind kind = kind_from(o->kind);
            Clustering cl;
            if (!o->clusters.empty()) {
                cl = clustering_from_centers(read_dataset_csv(o->clusters), x, kind);
            } else if (o->k >= 1) {
                const auto res = solve(x, o->k, kind, method_from(o->oracle), o->seed,
                                       o->restarts);
                cl = clustering_from_centers(res.centers, x, kind);
            } else {
                throw CLI::ValidationError("--k", "need --clusters or --k >= 1");
            }
            NetSource nets(derive_seed(o->seed, 0xFA4ULL));
            const FanResult f = build_fan_coreset(x, cl, o->epsilon, kind, nets);
            if (!o->out.empty()) write_dataset_csv(o->out, f.xi);
            json r = base_report("construct fan", json{{"data", o->data},
                                                       {"epsilon", o->epsilon},
                                                       {"kind", o->kind},
                                                       {"k", o->k},
                                                       {"clusters", o->clusters},
                                                       {"oracle", o->oracle},
                                                       {"restarts", o->restarts},
                                                       {"seed", o->seed}});
            r["data_summary"] = summary(x);
            r["size"] = f.xi.size();
            r["baseline"] = f.baseline;
            r["cost"] = f.cost;
            r["cost_ratio"] = f.ratio;
            r["net_scale"] = f.net_scale;
            r["net_size"] = f.net_size;
            r["rays_used"] = f.rays_used;
            r["patched_rays"] = f.patched_rays;
            r["max_snap_ratio"] = f.max_snap_ratio;
            r["sizes"] = f.per_cell_sizes;
            r["pass"] = true;  // the builder throws when the guarantee fails
            emit(r, o->report);
        });
    }
    {
        struct Opts {
            std::string metric;
            std::size_t center = 0;
            double epsilon = 0.5;
            std::string report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = con->add_subcommand("annuli", "metric 1-center representatives");
        c->add_option("--metric", o->metric, "distance matrix CSV")->required();
        c->add_option("--center", o->center, "index of the center point")
            ->capture_default_str();
        c->add_option("--epsilon", o->epsilon, "precision in (0, 1]")->required();
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            const FiniteMetric m = read_metric_csv(o->metric);
            if (const auto v = validate_metric(m))
                throw std::invalid_argument("not a metric: " + v->describe());
            if (o->center >= m.size())
                throw std::invalid_argument("center index out of range");
            std::vector<std::size_t> ys(m.size());
            std::iota(ys.begin(), ys.end(), 0);
            const AnnuliResult a = build_metric_annuli(m, ys, o->center, o->epsilon);
            json r = base_report("construct annuli", json{{"metric", o->metric},
                                                          {"center", o->center},
                                                          {"epsilon", o->epsilon},
                                                          {"seed", 0}});
            r["n"] = m.size();
            r["reps"] = a.reps;
            r["size"] = a.reps.size();
            r["r_mean"] = a.r_mean;
            r["t"] = a.t;
            r["annulus_sizes"] = a.annulus_sizes;
            r["annulus_rep_counts"] = a.annulus_rep_counts;
            r["baseline"] = a.baseline;
            r["cost"] = a.cost;
            r["cost_ratio"] = a.ratio;
            r["pass"] = true;  // the builder throws when the guarantee fails
            emit(r, o->report);
        });
    }
    (void)rc;
}

// ---------------------------------------------------------------- coreset

void register_coreset(CLI::App& app, int* rc) {
    auto* cs = app.add_subcommand("coreset", "weighted summaries and their checks");
    cs->require_subcommand(1);

    {
        struct Opts : OracleOpts {
            int k = 1;
            double epsilon = 0.5;
            std::string method = "fan";
            double beta = 1.0;
            std::string out, report;
        };
        auto o = std::make_shared<Opts>();
        o->oracle = "lloyd";
        auto* c = cs->add_subcommand("build", "construct a weighted coreset");
        add_oracle_opts(c, o);
        c->add_option("--k", o->k, "cluster count")->required();
        c->add_option("--epsilon", o->epsilon, "coreset precision")->required();
        c->add_option("--method", o->method, "fan | d2")->capture_default_str();
        c->add_option("--beta", o->beta, "d2: oversampling multiplier")
            ->capture_default_str();
        c->add_option("--out", o->out, "weighted CSV path");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            const Dataset x = read_dataset_csv(o->data);
            const double geo_eps = o->epsilon * o->epsilon / 32.0;
            json extra;
            CenterSet s(x.dim());
            if (o->method == "fan") {
                const auto res = solve(x, o->k, CostKind::means,
                                       method_from(o->oracle), o->seed, o->restarts);
                const Clustering cl =
                    clustering_from_centers(res.centers, x, CostKind::means);
                NetSource nets(derive_seed(o->seed, 0xFA4ULL));
                const FanResult f =
                    build_fan_coreset(x, cl, geo_eps, CostKind::means, nets);
                s = f.xi;
                extra["geometric_epsilon"] = geo_eps;
                extra["fan_cost_ratio"] = f.ratio;
                extra["fan_baseline"] = f.baseline;
            } else if (o->method == "d2") {
                const LEstimate l = estimate_L(x, o->k, geo_eps, CostKind::means,
                                               method_from(o->oracle), o->seed,
                                               o->restarts);
                const auto m = static_cast<std::size_t>(std::min<double>(
                    static_cast<double>(x.size()),
                    std::max(1.0, std::ceil(o->beta * l.l_hat))));
                const SeedingTrace t = d2_sample(x, static_cast<int>(m),
                                                 CostKind::means,
                                                 derive_seed(o->seed, 0x5EEDULL));
                s = centers_from_trace(x, t);
                extra["geometric_epsilon"] = geo_eps;
                extra["l_hat"] = l.l_hat;
                extra["l_exact"] = l.exact;
                extra["beta"] = o->beta;
                extra["m"] = m;
            } else {
                throw CLI::ValidationError("--method", "expected 'fan' or 'd2'");
            }
            const WeightedSet ws = weigh(s, x);
            if (!o->out.empty()) write_weighted_csv(o->out, ws);
            json r = base_report("coreset build", json{{"data", o->data},
                                                       {"k", o->k},
                                                       {"epsilon", o->epsilon},
                                                       {"method", o->method},
                                                       {"beta", o->beta},
                                                       {"oracle", o->oracle},
                                                       {"restarts", o->restarts},
                                                       {"seed", o->seed}});
            r["data_summary"] = summary(x);
            r["size"] = ws.size();
            r["weight_sum"] =
                std::accumulate(ws.weights.begin(), ws.weights.end(), 0.0);
            for (auto& [key, val] : extra.items()) r[key] = val;
            emit(r, o->report);
        });
    }
    {
        struct Opts {
            std::string data, coreset;
            int k = 1;
            double epsilon = 0.5;
            int trials = 99;
            std::uint64_t seed = 0;
            std::string report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = cs->add_subcommand("validate", "Monte-Carlo weighted-coreset check");
        c->add_option("--data", o->data, "dataset CSV")->required();
        c->add_option("--coreset", o->coreset, "weighted CSV")->required();
        c->add_option("--k", o->k, "candidate centers per trial")->required();
        c->add_option("--epsilon", o->epsilon, "allowed relative deviation")->required();
        c->add_option("--trials", o->trials, "candidate sets to draw")
            ->capture_default_str();
        c->add_option("--seed", o->seed, "rng seed")->envname("KCOST_SEED");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o, rc] {
            const Dataset x = read_dataset_csv(o->data);
            const WeightedSet ws = read_weighted_csv(o->coreset);
            const CoresetCertificate cert =
                validate_coreset(x, ws, o->k, o->epsilon, o->trials, o->seed);
            json r = base_report("coreset validate", json{{"data", o->data},
                                                          {"coreset", o->coreset},
                                                          {"k", o->k},
                                                          {"epsilon", o->epsilon},
                                                          {"trials", o->trials},
                                                          {"seed", o->seed}});
            r["data_summary"] = summary(x);
            r["coreset_size"] = ws.size();
            r["certificate"] = json{
                {"epsilon", cert.epsilon},
                {"trials", cert.trials},
                {"worst_relative_error", cert.worst_relative_error},
                {"pass", cert.pass},
                {"worst_source", candidate_source_name(cert.worst_source)}};
            emit(r, o->report);
            if (!cert.pass) *rc = 2;
        });
    }
    {
        struct Opts : OracleOpts {
            std::string set;
            int k = 1;
            double epsilon = 0.5;
            std::string report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = cs->add_subcommand("check-geometric",
                                     "cost of a point set against the k-optimum");
        add_oracle_opts(c, o);
        c->add_option("--set", o->set, "candidate point set CSV")->required();
        c->add_option("--k", o->k, "reference cluster count")->required();
        c->add_option("--epsilon", o->epsilon, "allowed cost fraction")->required();
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o, rc] {
            const Dataset x = read_dataset_csv(o->data);
            const Dataset s = read_dataset_csv(o->set);
            const CostKind kind = kind_from(o->kind);
            const SolveMethod method = method_from(o->oracle);
            const auto seed = o->seed;
            const auto restarts = o->restarts;
            DeltaFn delta = [method, kind, seed, restarts](const Dataset& xx, int kk) {
                return solve(xx, kk, kind, method, seed, restarts).value;
            };
            const GeometricCheck g =
                check_geometric(s, x, o->k, o->epsilon, kind, delta);
            json r = base_report("coreset check-geometric",
                                 json{{"data", o->data},
                                      {"set", o->set},
                                      {"k", o->k},
                                      {"epsilon", o->epsilon},
                                      {"kind", o->kind},
                                      {"oracle", o->oracle},
                                      {"restarts", o->restarts},
                                      {"seed", o->seed}});
            r["data_summary"] = summary(x);
            r["set_size"] = s.size();
            r["cost"] = g.phi;
            r["delta_k"] = g.delta_k;
            r["ratio"] = g.ratio;
            r["oracle_exact"] = method != SolveMethod::lloyd_multistart;
            r["pass"] = g.pass;
            emit(r, o->report);
            if (!g.pass) *rc = 2;
        });
    }
}

// ---------------------------------------------------------------- nets

void register_nets(CLI::App& app, int* rc) {
    auto* ns = app.add_subcommand("nets", "unit-sphere packings and covers");
    ns->require_subcommand(1);

    struct Opts {
        int d = 2;
        double epsilon = 0.5;
        std::size_t pool = 0;
        std::size_t probes = 200000;
        std::uint64_t seed = 0;
        std::string out, report;
    };
    auto o = std::make_shared<Opts>();
    auto* c = ns->add_subcommand("build", "build and certify one net");
    c->add_option("--d", o->d, "ambient dimension")->required();
    c->add_option("--epsilon", o->epsilon, "scale in (0, 1)")->required();
    c->add_option("--pool", o->pool, "candidate pool size (0 = default)");
    c->add_option("--probes", o->probes, "cover-check sample count (d >= 3)")
        ->capture_default_str();
    c->add_option("--seed", o->seed, "rng seed")->envname("KCOST_SEED");
    c->add_option("--out", o->out, "net CSV path");
    c->add_option("--report", o->report, "copy the JSON certificate to this path");
    c->callback([o, rc] {
        const SphereNet net = build_net(o->d, o->epsilon, o->pool, o->seed);
        if (!o->out.empty()) write_dataset_csv(o->out, net.points);
        const double min_pairwise = verify_packing(net);
        const double max_gap = verify_cover(net, o->probes, o->seed);
        const bool packs = packing_pass(net, min_pairwise);
        const bool covers = cover_pass(net, max_gap);
        const double size_bound =
            std::pow(1.0 + 2.0 / o->epsilon, static_cast<double>(o->d));
        json r = base_report("nets build", json{{"d", o->d},
                                                {"epsilon", o->epsilon},
                                                {"pool", o->pool},
                                                {"probes", o->probes},
                                                {"seed", o->seed}});
        r["certificate"] = json{{"epsilon", net.epsilon},
                                {"kind", net_kind_name(net.kind)},
                                {"max_gap", max_gap},
                                {"min_pairwise", min_pairwise},
                                {"pool", net.pool_examined},
                                {"size", net.size()},
                                {"size_bound", size_bound},
                                {"cover_pass", covers},
                                {"packing_pass", packs}};
        emit(r, o->report);
        if (!(packs && covers)) *rc = 2;
    });
}

// ---------------------------------------------------------------- metric

void register_metric(CLI::App& app, int* rc) {
    auto* mt = app.add_subcommand("metric", "finite-metric covers and dimensions");
    mt->require_subcommand(1);

    {
        struct Opts {
            std::string metric;
            std::string report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = mt->add_subcommand("validate", "check metric axioms");
        c->add_option("--metric", o->metric, "distance matrix CSV")->required();
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o, rc] {
            const FiniteMetric m = read_metric_csv(o->metric);
            const auto v = validate_metric(m);
            json r = base_report("metric validate",
                                 json{{"metric", o->metric}, {"seed", 0}});
            r["n"] = m.size();
            r["ok"] = !v.has_value();
            if (v) r["violation"] = v->describe();
            emit(r, o->report);
            if (v) *rc = 2;
        });
    }
    {
        struct Opts {
            std::string metric;
            double r = 1.0;
            std::string report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = mt->add_subcommand("cover", "greedy diameter-r cover");
        c->add_option("--metric", o->metric, "distance matrix CSV")->required();
        c->add_option("--r", o->r, "diameter bound")->required();
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            const FiniteMetric m = read_metric_csv(o->metric);
            const CoverResult cov = greedy_cover(m, o->r);
            double max_dia = 0.0;
            for (const auto& part : cov.parts)
                max_dia = std::max(max_dia, diameter(m, part));
            json r = base_report("metric cover",
                                 json{{"metric", o->metric}, {"r", o->r}, {"seed", 0}});
            r["n"] = m.size();
            r["size"] = cov.size();
            json sizes = json::array();
            for (const auto& part : cov.parts) sizes.push_back(part.size());
            r["part_sizes"] = sizes;
            r["max_part_diameter"] = max_dia;
            r["valid"] = max_dia <= o->r;
            emit(r, o->report);
        });
    }
    {
        struct Opts {
            std::string metric;
            std::size_t samples = 64;
            std::uint64_t seed = 0;
            std::string report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = mt->add_subcommand("doubling", "doubling-dimension estimate");
        c->add_option("--metric", o->metric, "distance matrix CSV")->required();
        c->add_option("--samples", o->samples, "sampled balls")->capture_default_str();
        c->add_option("--seed", o->seed, "rng seed")->envname("KCOST_SEED");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            const FiniteMetric m = read_metric_csv(o->metric);
            const double d_hat = estimate_doubling(m, o->samples, o->seed);
            json r = base_report("metric doubling", json{{"metric", o->metric},
                                                         {"samples", o->samples},
                                                         {"seed", o->seed}});
            r["n"] = m.size();
            r["d_hat"] = d_hat;
            emit(r, o->report);
        });
    }
    {
        struct Opts {
            std::string metric;
            double epsilon = 0.5;
            std::size_t samples = 64;
            std::uint64_t seed = 0;
            std::string report;
        };
        auto o = std::make_shared<Opts>();
        auto* c = mt->add_subcommand("gamma", "ball-cover count at scale epsilon*r");
        c->add_option("--metric", o->metric, "distance matrix CSV")->required();
        c->add_option("--epsilon", o->epsilon, "scale in (0, 1)")->required();
        c->add_option("--samples", o->samples, "sampled (center, radius) pairs")
            ->capture_default_str();
        c->add_option("--seed", o->seed, "rng seed")->envname("KCOST_SEED");
        c->add_option("--report", o->report, "copy the JSON report to this path");
        c->callback([o] {
            const FiniteMetric m = read_metric_csv(o->metric);
            const std::size_t gamma =
                gamma_estimate(m, o->epsilon, o->samples, o->seed);
            const double d_hat = estimate_doubling(m, o->samples, o->seed);
            const double soft_bound = std::pow(4.0 / o->epsilon, d_hat + 1.0);
            json r = base_report("metric gamma", json{{"metric", o->metric},
                                                      {"epsilon", o->epsilon},
                                                      {"samples", o->samples},
                                                      {"seed", o->seed}});
            r["n"] = m.size();
            r["gamma_hat"] = gamma;
            r["d_hat"] = d_hat;
            r["soft_bound"] = soft_bound;
            // Both sides are greedy estimates; informational only.
            r["within_soft_bound"] = static_cast<double>(gamma) <= soft_bound;
            emit(r, o->report);
        });
    }
    (void)rc;
}

// ---------------------------------------------------------------- estimate-l

void register_estimate_l(CLI::App& app, int* rc) {
    struct Opts : OracleOpts {
        int k = 1;
        double epsilon = 0.5;
        std::string report;
    };
    auto o = std::make_shared<Opts>();
    auto* c = app.add_subcommand("estimate-l",
                                 "least m with cost(m) <= epsilon * cost(k)");
    add_oracle_opts(c, o);
    c->add_option("--k", o->k, "reference cluster count")->required();
    c->add_option("--epsilon", o->epsilon, "cost fraction")->required();
    c->add_option("--report", o->report, "copy the JSON report to this path");
    (void)rc;
    c->callback([o] {
        const Dataset x = read_dataset_csv(o->data);
        const LEstimate l = estimate_L(x, o->k, o->epsilon, kind_from(o->kind),
                                       method_from(o->oracle), o->seed, o->restarts);
        json r = base_report("estimate-l", json{{"data", o->data},
                                                {"k", o->k},
                                                {"epsilon", o->epsilon},
                                                {"kind", o->kind},
                                                {"oracle", o->oracle},
                                                {"restarts", o->restarts},
                                                {"seed", o->seed}});
        r["data_summary"] = summary(x);
        r["l_hat"] = l.l_hat;
        r["exact"] = l.exact;
        r["delta_k"] = l.delta_k_used;
        emit(r, o->report);
    });
}

// ---------------------------------------------------------------- decay-curve

void register_decay_curve(CLI::App& app, int* rc) {
    struct Opts : OracleOpts {
        int m_max = 0;
        std::string out, report;
    };
    auto o = std::make_shared<Opts>();
    auto* c = app.add_subcommand("decay-curve", "optimal cost for m = 1..m_max");
    add_oracle_opts(c, o);
    c->add_option("--m-max", o->m_max, "largest m (0 = n)");
    c->add_option("--out", o->out, "curve CSV path");
    c->add_option("--report", o->report, "copy the JSON report to this path");
    (void)rc;
    c->callback([o] {
        const Dataset x = read_dataset_csv(o->data);
        const DecayCurve curve = decay_curve(x, kind_from(o->kind),
                                             method_from(o->oracle), o->m_max, o->seed,
                                             o->restarts);
        if (!o->out.empty()) write_curve_csv(o->out, curve);
        json r = base_report("decay-curve", json{{"data", o->data},
                                                 {"kind", o->kind},
                                                 {"oracle", o->oracle},
                                                 {"m_max", o->m_max},
                                                 {"restarts", o->restarts},
                                                 {"seed", o->seed}});
        r["data_summary"] = summary(x);
        r["m"] = curve.m;
        r["cost"] = curve.cost;
        r["exact"] = curve.exact;
        emit(r, o->report);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cost-function laboratory for k-clustering bounds"};
    app.require_subcommand(1);
    int rc = 0;

    register_gen(app, &rc);
    register_solve(app, &rc);
    register_seed(app, &rc);
    register_construct(app, &rc);
    register_coreset(app, &rc);
    register_nets(app, &rc);
    register_metric(app, &rc);
    register_estimate_l(app, &rc);
    register_decay_curve(app, &rc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        // Failed construction guarantee: the certificate is the casualty.
        std::cerr << "certificate failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
