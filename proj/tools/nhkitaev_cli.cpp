// Command-line front end: phase diagrams, dispersion scans, quench dynamics,
// overlap diagnostics, and the dense-oracle self check. CSV output is
// deterministic (fixed row order, 17 significant digits, no timestamps);
// run-specific metadata lives in the {out}.meta.json sidecar.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nhkitaev/nhkitaev.hpp>

using namespace nhkitaev;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
    std::string subcommand;
    double j = 1.0;
    std::string delta = "1";  // scalar, or min:max:step where a sweep is meaningful
    std::string mu = "1";
    double delta_h = kNaN;
    double mu_h = kNaN;
    int sites = 0;  // subcommand-dependent default applied after parsing
    double t = 1.0;
    std::string times;
    int k_nodes = 4096;
    int t_nodes = 2048;
    double tol_ep = 1e-9;
    double tol_oracle = 1e-8;
    int workers = 0;  // 0 = NHKITAEV_WORKERS env or hardware
    std::string out = "nhkitaev";
    bool corrupt_sign = false;
};

json config_to_json(const RunConfig& c) {
    json o;
    o["subcommand"] = c.subcommand;
    o["j"] = c.j;
    o["delta"] = c.delta;
    o["mu"] = c.mu;
    if (std::isfinite(c.delta_h)) o["delta_h"] = c.delta_h;
    if (std::isfinite(c.mu_h)) o["mu_h"] = c.mu_h;
    o["sites"] = c.sites;
    o["t"] = c.t;
    o["times"] = c.times;
    o["k_nodes"] = c.k_nodes;
    o["t_nodes"] = c.t_nodes;
    o["tol_ep"] = c.tol_ep;
    o["tol_oracle"] = c.tol_oracle;
    o["workers"] = c.workers;
    o["out"] = c.out;
    o["corrupt_sign"] = c.corrupt_sign;
    return o;
}

void apply_json(const json& o, RunConfig& c) {
    if (o.contains("j")) c.j = o.at("j").get<double>();
    if (o.contains("delta")) {
        if (o.at("delta").is_string())
            c.delta = o.at("delta").get<std::string>();
        else
            c.delta = format_g17(o.at("delta").get<double>());
    }
    if (o.contains("mu")) {
        if (o.at("mu").is_string())
            c.mu = o.at("mu").get<std::string>();
        else
            c.mu = format_g17(o.at("mu").get<double>());
    }
    if (o.contains("delta_h")) c.delta_h = o.at("delta_h").get<double>();
    if (o.contains("mu_h")) c.mu_h = o.at("mu_h").get<double>();
    if (o.contains("sites")) c.sites = o.at("sites").get<int>();
    if (o.contains("t")) c.t = o.at("t").get<double>();
    if (o.contains("times")) c.times = o.at("times").get<std::string>();
    if (o.contains("k_nodes")) c.k_nodes = o.at("k_nodes").get<int>();
    if (o.contains("t_nodes")) c.t_nodes = o.at("t_nodes").get<int>();
    if (o.contains("tol_ep")) c.tol_ep = o.at("tol_ep").get<double>();
    if (o.contains("tol_oracle")) c.tol_oracle = o.at("tol_oracle").get<double>();
    if (o.contains("workers")) c.workers = o.at("workers").get<int>();
    if (o.contains("out")) c.out = o.at("out").get<std::string>();
    if (o.contains("corrupt_sign")) c.corrupt_sign = o.at("corrupt_sign").get<bool>();
}

// "lo:hi:step" -> inclusive grid; plain number -> single point
std::vector<double> parse_grid(const std::string& spec, const char* what) {
    const auto bad = [&] {
        throw validation_error(std::string(what) + ": cannot parse '" + spec + "'");
    };
    if (spec.empty()) bad();
    if (spec.find(':') == std::string::npos) {
        char* end = nullptr;
        const double v = std::strtod(spec.c_str(), &end);
        if (end == spec.c_str() || *end != '\0' || !std::isfinite(v)) bad();
        return {v};
    }
    double lo = 0, hi = 0, step = 0;
    char trail = '\0';
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &trail) != 3) bad();
    if (!(step > 0.0) || hi < lo) throw validation_error(std::string(what) + ": empty range");
    const int n = int(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = lo + i * step;
    return grid;
}

double parse_scalar(const std::string& spec, const char* what) {
    const auto g = parse_grid(spec, what);
    if (g.size() != 1)
        throw validation_error(std::string(what) + ": expected a single value, got a range");
    return g[0];
}

// comma-separated list or lo:hi:step
std::vector<double> parse_times(const std::string& spec) {
    if (spec.find(':') != std::string::npos) return parse_grid(spec, "times");
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t next = spec.find(',', pos);
        const std::string tok = spec.substr(pos, next == std::string::npos ? next : next - pos);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
            throw validation_error("times: cannot parse '" + tok + "'");
        out.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw validation_error("times: empty list");
    return out;
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// deterministic metadata: everything needed to re-run, nothing run-specific
void stamp_meta(ResultTable& t, const RunConfig& c) {
    t.meta.emplace_back("tool", "nhkitaev_cli");
    t.meta.emplace_back("version", kVersion);
    t.meta.emplace_back("subcommand", c.subcommand);
    t.meta.emplace_back("j", format_g17(c.j));
    t.meta.emplace_back("delta", c.delta);
    t.meta.emplace_back("mu", c.mu);
    if (std::isfinite(c.delta_h)) t.meta.emplace_back("delta_h", format_g17(c.delta_h));
    if (std::isfinite(c.mu_h)) t.meta.emplace_back("mu_h", format_g17(c.mu_h));
    if (c.sites > 0) t.meta.emplace_back("sites", std::to_string(c.sites));
    if (!c.times.empty()) t.meta.emplace_back("times", c.times);
    t.meta.emplace_back("k_nodes", std::to_string(c.k_nodes));
    t.meta.emplace_back("t_nodes", std::to_string(c.t_nodes));
    t.meta.emplace_back("tol_ep", format_g17(c.tol_ep));
}

void write_sidecar(const RunConfig& c, const std::vector<std::string>& outputs) {
    json o;
    o["tool"] = "nhkitaev_cli";
    o["version"] = kVersion;
    o["timestamp"] = iso_timestamp();
    o["config"] = config_to_json(c);
    o["outputs"] = outputs;
    std::ofstream os(c.out + ".meta.json");
    if (!os) throw validation_error("cannot open output file: " + c.out + ".meta.json");
    os << o.dump(2) << "\n";
}

int cmd_phase_diagram(const RunConfig& c) {
    const auto mus = parse_grid(c.mu, "mu");
    const auto deltas = parse_grid(c.delta, "delta");
    struct Point {
        double mu, delta;
    };
    std::vector<Point> pts;
    pts.reserve(mus.size() * deltas.size());
    for (double m : mus)
        for (double d : deltas) pts.push_back({m, d});
    const auto rows = indexed_parallel_map(
        pts,
        [&](const Point& q) -> std::vector<double> {
            const auto lab = classify(NhParams{c.j, q.delta, q.mu}, c.tol_ep);
            return {q.mu, q.delta, double(int(lab.kind)), lab.k_c, lab.broken_fraction};
        },
        c.workers);
    ResultTable t;
    stamp_meta(t, c);
    t.meta.emplace_back("label", "0=unbroken 1=exceptional-line 2=broken");
    t.columns = {"mu", "delta", "label", "k_c", "broken_fraction"};
    for (auto& r : rows) t.add_row(std::move(r));
    write_csv_file(t, c.out + ".csv");
    write_sidecar(c, {c.out + ".csv"});
    std::printf("phase-diagram: %zu points -> %s.csv\n", pts.size(), c.out.c_str());
    return 0;
}

int cmd_dispersion(const RunConfig& c) {
    const NhParams p{c.j, parse_scalar(c.delta, "delta"), parse_scalar(c.mu, "mu")};
    p.validate();
    std::vector<double> ks(c.k_nodes + 1);
    for (int i = 0; i <= c.k_nodes; ++i)
        ks[i] = -std::numbers::pi + 2.0 * std::numbers::pi * i / c.k_nodes;
    const auto rows = indexed_parallel_map(
        ks,
        [&](double k) -> std::vector<double> {
            const cplx e = dispersion_nh(k, p);
            return {k, e.real(), e.imag(), double(is_defective_momentum(k, p, c.tol_ep))};
        },
        c.workers);
    ResultTable t;
    stamp_meta(t, c);
    t.columns = {"k", "re_eps", "im_eps", "ep_flag"};
    for (auto& r : rows) t.add_row(std::move(r));
    write_csv_file(t, c.out + ".csv");
    write_sidecar(c, {c.out + ".csv"});
    std::printf("dispersion: %zu momenta -> %s.csv\n", ks.size(), c.out.c_str());
    return 0;
}

int cmd_pair_dynamics(const RunConfig& c) {
    const NhParams p{c.j, parse_scalar(c.delta, "delta"), parse_scalar(c.mu, "mu")};
    p.validate();
    const auto g = momentum_grid(c.sites);
    const auto times = parse_times(c.times);
    const QuadSettings quad{c.t_nodes, c.k_nodes};

    // on the exceptional line, append the continuum mode k_c (not a ring
    // momentum) so the Jordan-dynamics row N -> 1/2 is part of the output
    std::vector<double> ks(g.paired);
    const auto lab = classify(p, c.tol_ep);
    if (lab.kind == PhaseKind::ExceptionalLine && p.mu >= p.j && p.j > 0.0)
        ks.push_back(critical_momentum(p));

    struct KT {
        double k, t;
    };
    std::vector<KT> kts;
    kts.reserve(ks.size() * times.size());
    for (double k : ks)
        for (double t : times) kts.push_back({k, t});
    const auto nk_rows = indexed_parallel_map(
        kts,
        [&](const KT& q) -> std::vector<double> {
            const auto r = pair_density(q.k, p, q.t);
            return {r.k, r.t, r.n_k, r.norm_sq, r.period};
        },
        c.workers);
    ResultTable tk;
    stamp_meta(tk, c);
    tk.columns = {"k", "t", "n_k", "norm_sq", "period"};
    for (auto& r : nk_rows) tk.add_row(std::move(r));
    write_csv_file(tk, c.out + "_nk_t.csv");

    const auto nbark_rows = indexed_parallel_map(
        ks,
        [&](double k) -> std::vector<double> {
            const auto r = avg_pair_density_time_or_asymptote(k, p, quad);
            return {k, r.value, r.est_error, double(r.ep_asymptote)};
        },
        c.workers);
    ResultTable tb;
    stamp_meta(tb, c);
    tb.columns = {"k", "n_bar_k", "est_error", "asymptote"};
    for (auto& r : nbark_rows) tb.add_row(std::move(r));
    write_csv_file(tb, c.out + "_nbar_k.csv");

    const auto nbart_rows = indexed_parallel_map(
        times,
        [&](double t) -> std::vector<double> {
            const auto r = avg_pair_density_momentum(p, t, quad);
            return {t, r.value, r.est_error, total_pair_number(p, g, t)};
        },
        c.workers);
    ResultTable tt;
    stamp_meta(tt, c);
    tt.columns = {"t", "n_bar_t", "est_error", "n_total"};
    for (auto& r : nbart_rows) tt.add_row(std::move(r));
    write_csv_file(tt, c.out + "_nbar_t.csv");

    write_sidecar(c, {c.out + "_nk_t.csv", c.out + "_nbar_k.csv", c.out + "_nbar_t.csv"});
    std::printf("pair-dynamics: %zu momenta x %zu times -> %s_{nk_t,nbar_k,nbar_t}.csv\n",
                ks.size(), times.size(), c.out.c_str());
    return 0;
}

int cmd_overlap(const RunConfig& c) {
    if (!std::isfinite(c.delta_h) || !std::isfinite(c.mu_h))
        throw validation_error("overlap: --delta-h and --mu-h are required");
    const NhParams p{c.j, parse_scalar(c.delta, "delta"), parse_scalar(c.mu, "mu")};
    const HermParams hp{c.j, c.delta_h, c.mu_h};
    p.validate();
    hp.validate();
    const auto g = momentum_grid(c.sites);
    const auto times = parse_times(c.times);

    const auto recs = indexed_parallel_map(
        times, [&](double t) { return overlap_total(p, hp, g, t); }, c.workers);

    ResultTable tok;
    stamp_meta(tok, c);
    tok.columns = {"t", "k", "o_k"};
    for (const auto& rec : recs)
        for (const auto& m : rec.modes) tok.add_row({rec.t, m.k, m.o_k});
    write_csv_file(tok, c.out + "_ok.csv");

    ResultTable tot;
    stamp_meta(tot, c);
    tot.columns = {"t", "o_total"};
    for (const auto& rec : recs) tot.add_row({rec.t, rec.o_total});
    write_csv_file(tot, c.out + "_ot.csv");

    write_sidecar(c, {c.out + "_ok.csv", c.out + "_ot.csv"});
    for (const auto& rec : recs) std::printf("O(t=%g) = %.6f\n", rec.t, rec.o_total);
    return 0;
}

int cmd_oracle_check(const RunConfig& c) {
    if (c.sites < 4 || c.sites > 10)
        throw validation_error("oracle-check: need 4 <= sites <= 10");
    const NhParams p{c.j, parse_scalar(c.delta, "delta"), parse_scalar(c.mu, "mu")};
    p.validate();
    std::optional<HermParams> hp;
    if (std::isfinite(c.delta_h) && std::isfinite(c.mu_h))
        hp = HermParams{c.j, c.delta_h, c.mu_h};

    const auto H = build_dense(p, c.sites);
    const auto pt = pt_check(H, c.sites, 1e-10);
    std::printf("pt_residual: %.3e (%s)\n", pt.residual, pt.pass ? "pass" : "FAIL");
    bool ok = pt.pass;

    if (c.corrupt_sign) {
        // negative control: dense side built with the conjugated pairing sign
        const auto g = momentum_grid(c.sites);
        const auto wrong = build_dense(HermParams{p.j, p.delta, p.mu}, c.sites);
        const auto psi = dense_evolve(wrong, c.t, dense_vacuum(c.sites));
        const double dev =
            std::abs(dense_pair_number(psi, c.sites, g) - total_pair_number(p, g, c.t));
        std::printf("consistency_max_dev: %.3e (%s)\n", dev,
                    dev < c.tol_oracle ? "pass" : "FAIL");
        ok = ok && dev < c.tol_oracle;
    } else {
        const auto r = momentum_consistency(p, c.sites, c.t, c.tol_oracle, hp);
        std::printf("consistency_dev_pair: %.3e\n", r.dev_pair);
        std::printf("consistency_dev_norm: %.3e\n", r.dev_norm);
        if (hp) std::printf("consistency_dev_overlap: %.3e\n", r.dev_overlap);
        std::printf("consistency_max_dev: %.3e (%s)\n", r.max_dev, r.pass ? "pass" : "FAIL");
        ok = ok && r.pass;
    }
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-Hermitian Kitaev chain simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RunConfig cli;  // values written by flags
    std::string config_path;

    struct SubOpts {
        CLI::App* cmd = nullptr;
        CLI::Option *j = nullptr, *delta = nullptr, *mu = nullptr, *delta_h = nullptr,
                    *mu_h = nullptr, *sites = nullptr, *t = nullptr, *times = nullptr,
                    *k_nodes = nullptr, *t_nodes = nullptr, *tol_ep = nullptr,
                    *tol_oracle = nullptr, *workers = nullptr, *out = nullptr,
                    *corrupt = nullptr, *config = nullptr;
    };
    auto add_common = [&](CLI::App* sub) {
        SubOpts o;
        o.cmd = sub;
        o.j = sub->add_option("--j", cli.j, "hopping J");
        o.delta = sub->add_option("--delta", cli.delta, "pairing strength (value or lo:hi:step)");
        o.mu = sub->add_option("--mu", cli.mu, "chemical potential (value or lo:hi:step)");
        o.delta_h = sub->add_option("--delta-h", cli.delta_h, "hermitian reference pairing");
        o.mu_h = sub->add_option("--mu-h", cli.mu_h, "hermitian reference chemical potential");
        o.sites = sub->add_option("--sites", cli.sites, "ring length N");
        o.t = sub->add_option("--t", cli.t, "single evolution time");
        o.times = sub->add_option("--times", cli.times, "time list t1,t2,... or lo:hi:step");
        o.k_nodes = sub->add_option("--k-nodes", cli.k_nodes, "momentum quadrature nodes");
        o.t_nodes = sub->add_option("--t-nodes", cli.t_nodes, "time quadrature nodes");
        o.tol_ep = sub->add_option("--tol-ep", cli.tol_ep, "exceptional-line tolerance");
        o.tol_oracle = sub->add_option("--tol-oracle", cli.tol_oracle, "oracle tolerance");
        o.workers = sub->add_option("--workers", cli.workers, "worker threads (0 = auto)");
        o.out = sub->add_option("--out", cli.out, "output path stem");
        o.config = sub->add_option("--config", config_path, "JSON config file");
        o.corrupt = sub->add_flag("--corrupt-sign", cli.corrupt_sign);
        o.corrupt->group("");  // test hook, hidden from help
        return o;
    };

    std::vector<SubOpts> subs;
    subs.push_back(add_common(app.add_subcommand("phase-diagram", "PT-phase map over (mu, delta)")));
    subs.push_back(add_common(app.add_subcommand("dispersion", "complex spectrum over k")));
    auto* pd = app.add_subcommand("pair-dynamics", "N_k(t), N-bar_k, N-bar(t) tables");
    pd->alias("evolve");
    subs.push_back(add_common(pd));
    subs.push_back(add_common(app.add_subcommand("overlap", "O_k and O(t) against the hermitian ground state")));
    subs.push_back(add_common(app.add_subcommand("oracle-check", "dense real-space cross-validation")));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const SubOpts* act = nullptr;
        for (const auto& s : subs)
            if (s.cmd->parsed()) act = &s;
        if (!act) throw validation_error("no subcommand given");

        RunConfig cfg;  // defaults
        cfg.subcommand = act->cmd->get_name();
        // subcommand-specific defaults
        if (cfg.subcommand == "phase-diagram") {
            cfg.mu = "-3:3:0.02";
            cfg.delta = "-2:2:0.02";
        } else if (cfg.subcommand == "pair-dynamics") {
            cfg.sites = 40;
            cfg.times = "0:30:0.25";
        } else if (cfg.subcommand == "overlap") {
            cfg.sites = 61;
            cfg.times = "50,100";
        } else if (cfg.subcommand == "oracle-check") {
            cfg.sites = 6;
        }

        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw validation_error("cannot read config file: " + config_path);
            json o;
            try {
                is >> o;
            } catch (const json::exception& e) {
                throw validation_error(std::string("config parse error: ") + e.what());
            }
            apply_json(o, cfg);
        }
        // explicit flags win over config file
        if (*act->j) cfg.j = cli.j;
        if (*act->delta) cfg.delta = cli.delta;
        if (*act->mu) cfg.mu = cli.mu;
        if (*act->delta_h) cfg.delta_h = cli.delta_h;
        if (*act->mu_h) cfg.mu_h = cli.mu_h;
        if (*act->sites) cfg.sites = cli.sites;
        if (*act->t) cfg.t = cli.t;
        if (*act->times) cfg.times = cli.times;
        if (*act->k_nodes) cfg.k_nodes = cli.k_nodes;
        if (*act->t_nodes) cfg.t_nodes = cli.t_nodes;
        if (*act->tol_ep) cfg.tol_ep = cli.tol_ep;
        if (*act->tol_oracle) cfg.tol_oracle = cli.tol_oracle;
        if (*act->workers) cfg.workers = cli.workers;
        if (*act->out) cfg.out = cli.out;
        if (*act->corrupt) cfg.corrupt_sign = cli.corrupt_sign;

        if (cfg.subcommand == "phase-diagram") return cmd_phase_diagram(cfg);
        if (cfg.subcommand == "dispersion") return cmd_dispersion(cfg);
        if (cfg.subcommand == "pair-dynamics") return cmd_pair_dynamics(cfg);
        if (cfg.subcommand == "overlap") return cmd_overlap(cfg);
        if (cfg.subcommand == "oracle-check") return cmd_oracle_check(cfg);
        throw validation_error("unknown subcommand");
    } catch (const validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 2;
    }
}
