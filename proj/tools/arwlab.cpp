// arwlab: command-line front door for the lattice-gas toolkit.
//
// Subcommands: geometry, stabilize, estimate-escape, fixation, dd, recursion,
// slt-demo, kernel-table. Every run resolves its configuration (JSON file plus
// flag overrides, flags win), embeds the config hash in each output file, and
// refuses to overwrite a file carrying a different hash.
//
// Exit codes: 0 success, 1 config error, 2 non-stabilized, 3 refused
// certificate.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arwlab/experiments.hpp"
#include "arwlab/multiscale.hpp"
#include "arwlab/rw_kernels.hpp"
#include "arwlab/serialize.hpp"
#include "arwlab/soft_local_time.hpp"

namespace {

using arwlab::Json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNonStabilized = 2;
constexpr int kExitRefused = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::uint64_t seed = 1;
    long long trials = 100;
    int jobs = 0;
};

Json load_config(const Common& c) {
    if (c.config_path.empty()) return Json::object();
    std::ifstream in(c.config_path);
    if (!in) throw ConfigError("cannot open config file: " + c.config_path);
    Json j;
    in >> j;
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    return j;
}

std::string resolve_out_dir(const Common& c) {
    if (!c.out_dir.empty()) return c.out_dir;
    if (const char* env = std::getenv("ARWLAB_OUT")) return env;
    return ".";
}

std::string read_embedded_hash(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) return {};
    if (p.extension() == ".json") {
        try {
            Json j;
            in >> j;
            return j.value("config_hash", std::string{});
        } catch (...) {
            return {};
        }
    }
    std::string line;
    std::getline(in, line);
    const std::string tag = "# config-hash: ";
    if (line.rfind(tag, 0) == 0) return line.substr(tag.size());
    return {};
}

void write_file(const std::filesystem::path& p, const std::string& hash,
                const std::string& body) {
    const std::string existing = read_embedded_hash(p);
    if (!existing.empty() && existing != hash)
        throw ConfigError("refusing to overwrite " + p.string() +
                          ": embedded config hash differs");
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + p.string());
    out << body;
}

// emits {experiment}-{hash}.csv (with a hash header line) and/or the JSON
// sidecar, depending on --format
void emit(const Common& c, const std::string& experiment, const Json& config,
          const std::string& csv_body, Json payload) {
    const std::string hash = arwlab::config_hash(config);
    const std::filesystem::path dir = resolve_out_dir(c);
    std::filesystem::create_directories(dir);
    const std::string base = experiment + "-" + hash;
    // "config" is reserved for state snapshots; the resolved run
    // configuration travels under its own key
    payload["run_config"] = config;
    payload["config_hash"] = hash;
    if (c.format == "csv" && !csv_body.empty())
        write_file(dir / (base + ".csv"), hash,
                   "# config-hash: " + hash + "\n" + csv_body);
    write_file(dir / (base + ".json"), hash, payload.dump(2) + "\n");
    std::cout << experiment << ": wrote " << (dir / base).string() << ".{csv,json}\n";
}

arwlab::BigRat parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return arwlab::BigRat(arwlab::BigInt(s));
    return arwlab::BigRat(arwlab::BigInt(s.substr(0, slash)),
                          arwlab::BigInt(s.substr(slash + 1)));
}

arwlab::Model parse_model(const std::string& s) {
    if (s == "arw") return arwlab::Model::ARW;
    if (s == "ssm") return arwlab::Model::SSM;
    throw ConfigError("model must be arw or ssm");
}

// ---------------------------------------------------------------- geometry

int cmd_geometry(const Common& c, int d, long long L, long long R,
                 const std::string& index_str) {
    Json cfg{{"experiment", "geometry"}, {"d", d}, {"L", L}, {"R", R},
             {"index", index_str}};
    arwlab::Site index = index_str.empty() ? arwlab::Site::origin(d)
                                           : arwlab::site_from_key(index_str);
    if (index.dim() != d) throw ConfigError("geometry: index dimension mismatch");
    arwlab::KernelTriple t;
    try {
        t = arwlab::kernel_triple(L, R, index);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    Json payload{{"d", d},
                 {"side", L},
                 {"ring", R},
                 {"offset", arwlab::site_key(index)},
                 {"lower", arwlab::box_descriptor(t.outer)["lower"]},
                 {"outer", arwlab::box_descriptor(t.outer)},
                 {"middle", arwlab::box_descriptor(t.middle)},
                 {"inner", arwlab::box_descriptor(t.inner)}};
    std::ostringstream csv;
    csv << "box,lower,side\n";
    auto row = [&](const char* name, const arwlab::Box& b) {
        csv << name << "," << arwlab::site_key(b.lower) << ","
            << arwlab::site_key(arwlab::Site(b.side)) << "\n";
    };
    row("outer", t.outer);
    row("middle", t.middle);
    row("inner", t.inner);
    emit(c, "geometry", cfg, csv.str(), payload);
    return kExitOk;
}

// --------------------------------------------------------------- stabilize

int cmd_stabilize(const Common& c, const Json& file_cfg, const std::string& model_s,
                  int d, double lambda, long long kappa, long long budget) {
    Json cfg{{"experiment", "stabilize"}, {"model", model_s}, {"d", d},
             {"lambda", lambda}, {"kappa", kappa}, {"budget", budget},
             {"seed", c.seed}};
    std::optional<arwlab::Box> domain;
    if (file_cfg.contains("domain")) {
        domain = arwlab::box_from_json(file_cfg.at("domain"));
        cfg["domain"] = file_cfg.at("domain");
    }
    const arwlab::Model model = parse_model(model_s);

    if (model == arwlab::Model::ARW) {
        arwlab::World w;
        w.d = d;
        w.domain = domain;
        if (file_cfg.contains("particles")) {
            cfg["particles"] = file_cfg.at("particles");
            for (auto& [key, val] : file_cfg.at("particles").items()) {
                const arwlab::Site x = arwlab::site_from_key(key);
                if (val.is_string() && val.get<std::string>() == "s")
                    w.sleeping.insert(x);
                else
                    w.add_active(x, val.get<long long>());
            }
        }
        arwlab::TapeSet tapes(d, lambda, c.seed);
        arwlab::StabilizeOptions opts;
        opts.policy = arwlab::OrderPolicy::SiteSweep;
        opts.max_steps = budget;
        const auto res = arwlab::stabilize(w, tapes, opts);
        Json payload = arwlab::world_snapshot(w, c.seed);
        payload["stabilized"] = res.status == arwlab::StabilizeStatus::Stabilized;
        emit(c, "stabilize", cfg, {}, payload);
        return res.status == arwlab::StabilizeStatus::Stabilized ? kExitOk
                                                                 : kExitNonStabilized;
    }

    arwlab::SsmWorld w;
    w.d = d;
    w.kappa = kappa;
    w.domain = domain;
    std::vector<arwlab::Message> msgs;
    if (file_cfg.contains("messages")) {
        cfg["messages"] = file_cfg.at("messages");
        for (auto& [key, val] : file_cfg.at("messages").items()) {
            const arwlab::Site x = arwlab::site_from_key(key);
            for (long long i = 0; i < val.get<long long>(); ++i)
                msgs.push_back(arwlab::Message{x, arwlab::MsgKind::Ordinary});
        }
    }
    arwlab::DirectionTapes tapes(d, c.seed);
    arwlab::SsmStabilizeOptions opts;
    opts.max_steps = budget;
    const auto res = arwlab::stabilize_ssm(w, std::move(msgs), tapes, opts);
    Json payload = arwlab::ssm_snapshot(w, c.seed);
    payload["stabilized"] = res.status == arwlab::StabilizeStatus::Stabilized;
    emit(c, "stabilize", cfg, {}, payload);
    return res.status == arwlab::StabilizeStatus::Stabilized ? kExitOk
                                                             : kExitNonStabilized;
}

// --------------------------------------------------------- estimate-escape

int cmd_estimate_escape(const Common& c, const Json& file_cfg,
                        const std::string& model_s, int d, double lambda,
                        long long kappa, double zeta, long long box_side) {
    if (c.trials <= 0) throw ConfigError("estimate-escape: trials must be > 0");
    arwlab::EscapeSpec spec;
    spec.model = parse_model(model_s);
    spec.d = d;
    spec.lambda = lambda;
    spec.kappa = kappa;
    spec.density = zeta;
    spec.box = arwlab::Box::cube(arwlab::Site::origin(d), box_side);
    spec.trials = c.trials;
    spec.seed = c.seed;
    spec.jobs = c.jobs;
    if (file_cfg.contains("sites"))
        for (auto& s : file_cfg.at("sites"))
            spec.fixed_sites.push_back(arwlab::Site(s.get<std::vector<arwlab::Coord>>()));
    Json cfg{{"experiment", "estimate-escape"}, {"model", model_s}, {"d", d},
             {"lambda", lambda}, {"kappa", kappa}, {"zeta", zeta},
             {"box_side", box_side}, {"trials", c.trials}, {"seed", c.seed}};
    if (file_cfg.contains("sites")) cfg["sites"] = file_cfg.at("sites");

    const arwlab::TrialReport rep = arwlab::estimate_escape(spec);
    std::ostringstream csv;
    csv << "trials,successes,excluded,estimate,lo,hi\n"
        << rep.trials << "," << rep.successes << "," << rep.excluded << ","
        << rep.interval.estimate << "," << rep.interval.lo << "," << rep.interval.hi
        << "\n";
    Json payload{{"trials", rep.trials},
                 {"successes", rep.successes},
                 {"excluded", rep.excluded},
                 {"estimate", rep.interval.estimate},
                 {"wilson_lo", rep.interval.lo},
                 {"wilson_hi", rep.interval.hi},
                 {"seed", rep.seed}};
    emit(c, "estimate-escape", cfg, csv.str(), payload);
    return kExitOk;
}

// ---------------------------------------------------------------- fixation

int cmd_fixation(const Common& c, const Json& file_cfg, int d, double zeta,
                 double lambda, double horizon, bool tape_proxy) {
    if (c.trials <= 0) throw ConfigError("fixation: trials must be > 0");
    arwlab::FixationSpec spec;
    spec.d = d;
    spec.zeta = zeta;
    spec.lambda = lambda;
    spec.horizon = horizon;
    spec.tape_proxy = tape_proxy;
    spec.trials = c.trials;
    spec.seed = c.seed;
    spec.jobs = c.jobs;
    if (file_cfg.contains("m_ladder"))
        spec.m_ladder = file_cfg.at("m_ladder").get<std::vector<long long>>();
    if (file_cfg.contains("l_grid"))
        spec.l_grid = file_cfg.at("l_grid").get<std::vector<long long>>();
    Json cfg{{"experiment", "fixation"}, {"d", d}, {"zeta", zeta},
             {"lambda", lambda}, {"horizon", horizon}, {"tape_proxy", tape_proxy},
             {"m_ladder", spec.m_ladder}, {"l_grid", spec.l_grid},
             {"trials", c.trials}, {"seed", c.seed}};

    const arwlab::FixationTable table = arwlab::fixation_tail(spec);
    std::ostringstream csv;
    csv << "M,l,tail\n";
    Json rows = Json::array();
    for (std::size_t i = 0; i < table.m_ladder.size(); ++i)
        for (std::size_t j = 0; j < table.l_grid.size(); ++j) {
            csv << table.m_ladder[i] << "," << table.l_grid[j] << ","
                << table.tail[i][j] << "\n";
            rows.push_back(Json{{"M", table.m_ladder[i]},
                                {"l", table.l_grid[j]},
                                {"tail", table.tail[i][j]}});
        }
    emit(c, "fixation", cfg, csv.str(), Json{{"rows", rows}, {"seed", c.seed}});
    return kExitOk;
}

// ---------------------------------------------------------------------- dd

int cmd_dd(const Common& c, const std::string& model_s, int d, long long n,
           double lambda, long long kappa, long long insertions) {
    if (insertions <= 0) throw ConfigError("dd: insertions must be > 0");
    arwlab::DDSpec spec;
    spec.model = parse_model(model_s);
    spec.d = d;
    spec.n = n;
    spec.lambda = lambda;
    spec.kappa = kappa;
    spec.insertions = insertions;
    spec.seed = c.seed;
    Json cfg{{"experiment", "dd"}, {"model", model_s}, {"d", d}, {"n", n},
             {"lambda", lambda}, {"kappa", kappa}, {"insertions", insertions},
             {"seed", c.seed}};

    const arwlab::DDCurve curve = arwlab::driven_dissipation(spec);
    std::ostringstream csv;
    csv << "insertion,remaining\n";
    for (std::size_t i = 0; i < curve.remaining.size(); ++i)
        csv << (i + 1) << "," << curve.remaining[i] << "\n";
    Json payload{{"inserted", curve.inserted},
                 {"dissipated", curve.dissipated},
                 {"remaining", curve.remaining},
                 {"aborted", curve.aborted},
                 {"seed", c.seed}};
    emit(c, "dd", cfg, csv.str(), payload);
    return curve.aborted ? kExitNonStabilized : kExitOk;
}

// --------------------------------------------------------------- recursion

int cmd_recursion(const Common& c, const std::string& L0_s, const std::string& gamma_s,
                  int d, double c3, double c4, int k_bar, int k_max,
                  const std::string& zeta0_s, const std::string& p_start_s) {
    if (k_max < k_bar) throw ConfigError("recursion: k_max must be >= k_bar");
    Json cfg{{"experiment", "recursion"}, {"L0", L0_s}, {"gamma", gamma_s},
             {"d", d}, {"c3", c3}, {"c4", c4}, {"k_bar", k_bar},
             {"k_max", k_max}, {"zeta0", zeta0_s}, {"p_start", p_start_s}};

    arwlab::ScaleTable table;
    arwlab::DensityLadder ladder;
    try {
        table = arwlab::scale_table(arwlab::BigInt(L0_s), parse_rational(gamma_s), k_max + 1);
        ladder = arwlab::density_ladder(parse_rational(zeta0_s), k_max + 1);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    arwlab::RecursionParams params;
    params.d = d;
    params.c3 = c3;
    params.c4 = c4;
    params.k_bar = k_bar;
    if (p_start_s.empty()) {
        const arwlab::BigFloat logL =
            boost::multiprecision::log(arwlab::BigFloat(table.L[k_bar]));
        params.p_start = boost::multiprecision::exp(-logL * logL);
    } else {
        params.p_start = arwlab::BigFloat(p_start_s);
    }

    const arwlab::Certificate cert = arwlab::decay_certificate(params, table, k_max);
    std::ostringstream csv;
    csv << "k,L_k,R_k,zeta_k,threshold,margin,ok\n";
    csv.precision(17);
    for (const auto& row : cert.rows) {
        csv << row.k << "," << table.L[row.k] << "," << table.R[row.k] << ","
            << ladder.zeta[row.k].convert_to<double>() << ","
            << row.threshold.convert_to<double>() << ","
            << row.margin.convert_to<double>() << "," << (row.induction_ok ? 1 : 0)
            << "\n";
    }
    Json payload{{"granted", cert.granted},
                 {"start_ok", cert.start_ok},
                 {"failing_k", cert.failing_k},
                 {"first_small_ring_k", table.first_small_ring}};
    emit(c, "recursion", cfg, csv.str(), payload);
    if (!cert.granted) {
        std::cerr << "recursion: certificate refused at k = " << cert.failing_k << "\n";
        return kExitRefused;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- slt-demo

int cmd_slt_demo(const Common& c, int d, double t, double zeta_prime,
                 long long window_radius, long long target_radius,
                 long long walkers) {
    if (walkers < 0 || zeta_prime <= 0 || t <= 0)
        throw ConfigError("slt-demo: need walkers >= 0, t > 0, zeta' > 0");
    Json cfg{{"experiment", "slt-demo"}, {"d", d}, {"t", t},
             {"zeta_prime", zeta_prime}, {"window_radius", window_radius},
             {"target_radius", target_radius}, {"walkers", walkers},
             {"seed", c.seed}};
    std::vector<arwlab::Site> starts(static_cast<std::size_t>(walkers),
                                     arwlab::Site::origin(d));
    const arwlab::Box window = arwlab::Box::ball(d, window_radius);
    const arwlab::Box target = arwlab::Box::ball(d, target_radius);
    arwlab::CouplingReport rep;
    try {
        rep = arwlab::couple_walks_to_cloud(starts, t, zeta_prime, target, window,
                                            c.seed);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    Json picks = Json::array();
    for (const auto& p : rep.picks) picks.push_back(arwlab::site_key(p));
    Json payload{{"G_max", rep.g_max},
                 {"zeta_prime", rep.zeta_prime},
                 {"dominated", rep.dominated},
                 {"picks", picks},
                 {"cloud_size", rep.cloud_size},
                 {"seed", rep.seed}};
    emit(c, "slt-demo", cfg, {}, payload);
    return kExitOk;
}

// ------------------------------------------------------------ kernel-table

int cmd_kernel_table(const Common& c, std::vector<double> times, long long radius,
                     double eps) {
    if (times.empty()) times = {0.5, 1, 4, 16};
    if (radius < 0) throw ConfigError("kernel-table: radius must be >= 0");
    Json cfg{{"experiment", "kernel-table"}, {"t", times}, {"radius", radius},
             {"eps", eps}};
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,x,p\n";
    for (double t : times)
        for (long long x = -radius; x <= radius; ++x)
            csv << t << "," << x << "," << arwlab::heat_kernel_1d(t, x, eps) << "\n";
    emit(c, "kernel-table", cfg, csv.str(), Json::object());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arwlab: lattice-gas simulation and numerics toolkit"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--config", common.config_path, "JSON config file (flags override)");
    app.add_option("--seed", common.seed, "master seed");
    app.add_option("--trials", common.trials, "number of Monte Carlo trials");
    app.add_option("--jobs", common.jobs, "worker threads (0 = all cores)");
    app.add_option("--out", common.out_dir, "output directory (or ARWLAB_OUT)");
    app.add_option("--format", common.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // geometry
    auto* geo = app.add_subcommand("geometry", "kernel-triple geometry descriptor");
    int geo_d = 1;
    long long geo_L = 10, geo_R = 2;
    std::string geo_index;
    geo->add_option("--d", geo_d);
    geo->add_option("--L", geo_L);
    geo->add_option("--R", geo_R);
    geo->add_option("--index", geo_index, "comma-separated box index");

    // stabilize
    auto* stab = app.add_subcommand("stabilize", "stabilize an inline configuration");
    std::string stab_model = "arw";
    int stab_d = 1;
    double stab_lambda = 1.0;
    long long stab_kappa = 2, stab_budget = 1'000'000;
    stab->add_option("--model", stab_model);
    stab->add_option("--d", stab_d);
    stab->add_option("--lambda", stab_lambda);
    stab->add_option("--kappa", stab_kappa);
    stab->add_option("--budget", stab_budget);

    // estimate-escape
    auto* esc = app.add_subcommand("estimate-escape", "escape-probability estimator");
    std::string esc_model = "arw";
    int esc_d = 1;
    double esc_lambda = 1.0, esc_zeta = 0.0;
    long long esc_kappa = 2, esc_box = 11;
    esc->add_option("--model", esc_model);
    esc->add_option("--d", esc_d);
    esc->add_option("--lambda", esc_lambda);
    esc->add_option("--kappa", esc_kappa);
    esc->add_option("--zeta", esc_zeta, "Poisson start density");
    esc->add_option("--box-side", esc_box);

    // fixation
    auto* fix = app.add_subcommand("fixation", "origin fixation-tail table");
    int fix_d = 1;
    double fix_zeta = 0.25, fix_lambda = 1.0, fix_horizon = 50;
    bool fix_proxy = false;
    fix->add_option("--d", fix_d);
    fix->add_option("--zeta", fix_zeta);
    fix->add_option("--lambda", fix_lambda);
    fix->add_option("--horizon", fix_horizon);
    fix->add_flag("--tape-proxy", fix_proxy, "stabilization-proxy backend");

    // dd
    auto* dd = app.add_subcommand("dd", "driven-dissipation curve");
    std::string dd_model = "ssm";
    int dd_d = 2;
    long long dd_n = 30, dd_kappa = 3, dd_insertions = 500;
    double dd_lambda = 1.0;
    dd->add_option("--model", dd_model);
    dd->add_option("--d", dd_d);
    dd->add_option("--n", dd_n, "box side");
    dd->add_option("--lambda", dd_lambda);
    dd->add_option("--kappa", dd_kappa);
    dd->add_option("--insertions", dd_insertions);

    // recursion
    auto* rec = app.add_subcommand("recursion", "decay-certificate table");
    std::string rec_L0 = "10000", rec_gamma = "1/10", rec_zeta0 = "1/2", rec_p;
    int rec_d = 1, rec_kbar = 0, rec_kmax = 20;
    double rec_c3 = 1.0, rec_c4 = 1.0;
    rec->add_option("--L0", rec_L0);
    rec->add_option("--gamma", rec_gamma, "rational, e.g. 1/10");
    rec->add_option("--zeta0", rec_zeta0, "rational base density");
    rec->add_option("--d", rec_d);
    rec->add_option("--c3", rec_c3);
    rec->add_option("--c4", rec_c4);
    rec->add_option("--kbar", rec_kbar);
    rec->add_option("--kmax", rec_kmax);
    rec->add_option("--p-start", rec_p, "starting bound (default: the threshold)");

    // slt-demo
    auto* slt = app.add_subcommand("slt-demo", "one soft-local-time coupling round");
    int slt_d = 1;
    double slt_t = 4.0, slt_zp = 2.0;
    long long slt_window = 40, slt_target = 3, slt_walkers = 4;
    slt->add_option("--d", slt_d);
    slt->add_option("--t", slt_t);
    slt->add_option("--zeta-prime", slt_zp);
    slt->add_option("--window-radius", slt_window);
    slt->add_option("--target-radius", slt_target);
    slt->add_option("--walkers", slt_walkers);

    // kernel-table
    auto* ker = app.add_subcommand("kernel-table", "1d heat-kernel CSV table");
    std::vector<double> ker_t;
    long long ker_radius = 8;
    double ker_eps = 1e-12;
    ker->add_option("--t", ker_t, "times (repeatable)");
    ker->add_option("--radius", ker_radius);
    ker->add_option("--eps", ker_eps);

    // shared flags may appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        const Json file_cfg = load_config(common);
        // file config may also set the shared knobs; flags win
        if (app.count("--seed") == 0 && file_cfg.contains("seed"))
            common.seed = file_cfg.at("seed").get<std::uint64_t>();
        if (app.count("--trials") == 0 && file_cfg.contains("trials"))
            common.trials = file_cfg.at("trials").get<long long>();

        if (geo->parsed()) return cmd_geometry(common, geo_d, geo_L, geo_R, geo_index);
        if (stab->parsed())
            return cmd_stabilize(common, file_cfg, stab_model, stab_d, stab_lambda,
                                 stab_kappa, stab_budget);
        if (esc->parsed())
            return cmd_estimate_escape(common, file_cfg, esc_model, esc_d, esc_lambda,
                                       esc_kappa, esc_zeta, esc_box);
        if (fix->parsed())
            return cmd_fixation(common, file_cfg, fix_d, fix_zeta, fix_lambda,
                                fix_horizon, fix_proxy);
        if (dd->parsed())
            return cmd_dd(common, dd_model, dd_d, dd_n, dd_lambda, dd_kappa,
                          dd_insertions);
        if (rec->parsed())
            return cmd_recursion(common, rec_L0, rec_gamma, rec_d, rec_c3, rec_c4,
                                 rec_kbar, rec_kmax, rec_zeta0, rec_p);
        if (slt->parsed())
            return cmd_slt_demo(common, slt_d, slt_t, slt_zp, slt_window, slt_target,
                                slt_walkers);
        if (ker->parsed()) return cmd_kernel_table(common, ker_t, ker_radius, ker_eps);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
