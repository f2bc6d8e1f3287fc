// pdbs: planted dense bipartite subgraph detection toolkit.
//
// Subcommands: sample, detect, risk, oracle, lowdeg, phase, sweep.
// Exit codes: 0 success, 2 usage error, 3 enumeration budget exceeded,
// 4 graph parse error. Every run echoes its fully resolved configuration
// into the output; identical invocations produce byte-identical outputs for
// any --threads value.

#include <charconv>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "pdbs/detect.hpp"
#include "pdbs/edgelist.hpp"
#include "pdbs/errors.hpp"
#include "pdbs/lowdeg.hpp"
#include "pdbs/mc.hpp"
#include "pdbs/measures.hpp"
#include "pdbs/oracle.hpp"
#include "pdbs/sample.hpp"

using json = nlohmann::ordered_json;
using namespace pdbs;

namespace {

// Shortest round-trip decimal for doubles, used for all CSV numbers.
std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParamError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParamError("cannot open '" + path + "' for writing");
    out << content;
}

// Common knobs shared by the subcommands.
struct CommonOpts {
    ModelParams params;
    std::string seed_text = "1729";
    uint64_t seed_root = 1729;
    int threads = 1;
    double scan_cap = 1e7;
    double enum_cap = 1e7;
    std::string out;
    std::string format = "json";

    void resolve_seed() {
        if (seed_text == "random") {
            std::random_device rd;
            seed_root = (uint64_t{rd()} << 32) ^ rd();
        } else {
            auto [ptr, ec] =
                std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed_root);
            if (ec != std::errc{} || ptr != seed_text.data() + seed_text.size())
                throw ParamError("--seed expects an unsigned integer or 'random'");
        }
    }

    DetectOptions detect_options() const {
        DetectOptions opt;
        opt.scan_cap = scan_cap;
        opt.lrt_cap = enum_cap;
        opt.threads = threads;
        opt.seed = Seed{seed_root}.child("detector");
        return opt;
    }
};

void add_model_flags(CLI::App* cmd, CommonOpts& o, bool required = true) {
    auto* n = cmd->add_option("--n", o.params.n, "vertex count");
    auto* kr = cmd->add_option("--kr", o.params.k_right, "right planted size");
    auto* kl = cmd->add_option("--kl", o.params.k_left, "left planted size");
    auto* p = cmd->add_option("--p", o.params.p, "planted edge probability");
    auto* q = cmd->add_option("--q", o.params.q, "background edge probability");
    if (required) {
        n->required();
        kr->required();
        kl->required();
        p->required();
        q->required();
    }
}

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed_text, "seed root (integer) or 'random'")
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads; results do not depend on it")
        ->capture_default_str();
    cmd->add_option("--scan-cap", o.scan_cap, "enumeration cap for the exact scan")
        ->envname("SCAN_CAP")
        ->capture_default_str();
    cmd->add_option("--enum-cap", o.enum_cap, "cap for placement/subset enumerations")
        ->envname("ENUM_CAP")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "output path ('-' or empty for stdout)");
}

json params_json(const ModelParams& pr) {
    return json{{"n", pr.n}, {"kr", pr.k_right}, {"kl", pr.k_left}, {"p", pr.p}, {"q", pr.q}};
}

// The echoed config carries everything that can influence the numbers.
// --threads is absent: results never depend on it, and outputs must stay
// byte-identical across thread counts.
json config_json(const CommonOpts& o, std::initializer_list<std::pair<std::string, json>> extra) {
    json cfg;
    cfg["params"] = params_json(o.params);
    cfg["seed"] = o.seed_root;
    cfg["scan_cap"] = o.scan_cap;
    cfg["enum_cap"] = o.enum_cap;
    for (const auto& [key, value] : extra) cfg[key] = value;
    return cfg;
}

// "lo:hi:step" (half-open: hi excluded) | "a,b,c" | single value.
// Ranges over plain decimals step in scaled integers so that a cell like
// 6 * 0.05 comes out as 0.3, not 0.30000000000000004.
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto parse_one = [](const std::string& s) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ParamError("bad number '" + s + "' in grid");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3) throw ParamError("range must be lo:hi:step");

        auto decimals = [](const std::string& s) -> int {
            size_t dot = s.find('.');
            if (s.find_first_not_of("0123456789.-") != std::string::npos) return -1;
            return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
        };
        int d_lo = decimals(parts[0]), d_hi = decimals(parts[1]), d_step = decimals(parts[2]);
        int places = std::max({d_lo, d_hi, d_step});
        if (places >= 0 && places <= 9) {
            double scale = std::pow(10.0, places);
            int64_t lo = std::llround(parse_one(parts[0]) * scale);
            int64_t hi = std::llround(parse_one(parts[1]) * scale);
            int64_t step = std::llround(parse_one(parts[2]) * scale);
            if (step <= 0) throw ParamError("range step must be positive");
            for (int64_t v = lo; v < hi; v += step) out.push_back(double(v) / scale);
        } else {
            double lo = parse_one(parts[0]), hi = parse_one(parts[1]), step = parse_one(parts[2]);
            if (step <= 0) throw ParamError("range step must be positive");
            for (int i = 0;; ++i) {
                double v = lo + i * step;
                if (v >= hi - step * 1e-9) break;
                out.push_back(v);
            }
        }
        if (out.empty()) throw ParamError("empty range");
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_one(item));
    if (out.empty()) throw ParamError("empty grid");
    return out;
}

std::vector<int> parse_int_grid(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_grid(text)) out.push_back(static_cast<int>(v + 0.5));
    return out;
}

std::string witness_names(const RegionLabel& label) {
    std::string s;
    for (TestKind w : label.witnesses) {
        if (!s.empty()) s += '+';
        s += test_name(w);
    }
    return s;
}

json estimate_json(const RiskEstimate& est) {
    return json{{"method", method_name(est.method)}, {"trials", est.trials},
                {"type1", est.type1_hat},           {"type2", est.type2_hat},
                {"risk", est.risk_hat},             {"ci_half_width", est.ci_half_width},
                {"seed", est.seed}};
}

std::string risk_csv_row(const ModelParams& pr, const RiskEstimate& est, const std::string& error) {
    std::string row = std::to_string(pr.n) + "," + std::to_string(pr.k_right) + "," +
                      std::to_string(pr.k_left) + "," + fmt(pr.p) + "," + fmt(pr.q) + "," +
                      method_name(est.method) + "," + std::to_string(est.trials) + ",";
    if (error.empty())
        row += fmt(est.type1_hat) + "," + fmt(est.type2_hat) + "," + fmt(est.risk_hat) + "," +
               fmt(est.ci_half_width);
    else
        row += ",,,";
    row += "," + std::to_string(est.seed);
    if (!error.empty()) row += ",\"" + error + "\"";
    return row + "\n";
}

constexpr const char* kRiskCsvHeader = "n,kr,kl,p,q,method,trials,type1,type2,risk,ci,seed\n";

// ---- subcommand runners ----

int run_sample(CommonOpts& o, const std::string& model, const std::string& sets_out) {
    o.resolve_seed();
    Seed seed{o.seed_root};
    json sets_doc;
    std::string edges_text;
    if (model == "er") {
        if (o.params.n < 1) throw ParamError("--n is required");
        edges_text = serialize(sample_er(o.params.n, o.params.q, seed));
    } else if (model == "planted" || model == "union") {
        auto [graph, sets] =
            model == "union" ? sample_planted_union(o.params, seed) : sample_planted(o.params, seed);
        edges_text = serialize(graph);
        sets_doc = json{{"right", sets.right}, {"left", sets.left}};
    } else {
        throw ParamError("unknown model '" + model + "'");
    }
    write_output(o.out, edges_text);
    if (!sets_out.empty() && !sets_doc.is_null()) {
        sets_doc["config"] = config_json(o, {{"model", model}});
        write_output(sets_out, sets_doc.dump(2) + "\n");
    }
    return 0;
}

int run_detect(CommonOpts& o, const std::string& in_path, const std::string& method_text,
               int restarts, const std::string& model) {
    o.resolve_seed();
    Method method = method_from_name(method_text);
    DetectOptions opt = o.detect_options();
    opt.restarts = restarts;

    Graph g(1);
    if (!in_path.empty()) {
        g = parse_edge_list(read_file(in_path));
        if (o.params.n == 0) o.params.n = g.n();
    } else {
        Seed seed{o.seed_root};
        if (model == "er")
            g = sample_er(o.params.n, o.params.q, seed);
        else if (model == "union")
            g = sample_planted_union(o.params, seed).first;
        else
            g = sample_planted(o.params, seed).first;
    }
    o.params.validate();

    DetectionOutcome outcome = run_test(g, o.params, method, opt);
    json doc;
    doc["config"] = config_json(o, {{"method", method_text},
                                    {"restarts", restarts},
                                    {"input", in_path.empty() ? json(model) : json(in_path)}});
    doc["method"] = method_name(outcome.method);
    doc["statistic"] = outcome.statistic;
    doc["threshold"] = outcome.threshold;
    doc["verdict"] = outcome.verdict;
    doc["exact"] = outcome.exact;
    write_output(o.out, doc.dump(2) + "\n");
    return 0;
}

int run_risk(CommonOpts& o, const std::string& method_text, int64_t trials, int restarts) {
    o.resolve_seed();
    Method method = method_from_name(method_text);
    DetectOptions opt = o.detect_options();
    opt.restarts = restarts;
    RiskEstimate est = mc_risk(method, o.params, trials, Seed{o.seed_root}, opt);

    json cfg = config_json(o, {{"method", method_text}, {"trials", trials}, {"restarts", restarts}});
    if (o.format == "csv") {
        std::string text = "# config " + cfg.dump() + "\n";
        text += kRiskCsvHeader;
        text += risk_csv_row(o.params, est, "");
        write_output(o.out, text);
    } else {
        json doc;
        doc["config"] = cfg;
        doc.update(estimate_json(est));
        write_output(o.out, doc.dump(2) + "\n");
    }
    return 0;
}

int run_oracle(CommonOpts& o) {
    o.resolve_seed();
    SecondMoment m2 = second_moment_exact(o.params);
    ExactRisk risk = bayes_risk_exact(o.params, o.enum_cap);
    json doc;
    doc["config"] = config_json(o, {});
    doc["m2"] = m2.value;
    doc["tv"] = risk.tv;
    doc["bayes_risk"] = risk.bayes_risk;
    doc["lower_bound"] = risk_lower_bound(m2);
    write_output(o.out, doc.dump(2) + "\n");
    return 0;
}

int run_lowdeg(CommonOpts& o, int degree_cap, bool curve, double lambda_flag) {
    o.resolve_seed();
    double lambda;
    if (lambda_flag >= 0) {
        lambda = lambda_flag;
        if (o.params.k_right < 1 || o.params.k_left < 1 ||
            o.params.k_right + o.params.k_left > o.params.n)
            throw ParamError("invalid planted sizes");
    } else {
        o.params.validate();
        lambda = chi2_bernoulli(o.params.p, o.params.q);
    }

    json doc;
    doc["config"] =
        config_json(o, {{"degree", degree_cap}, {"lambda", lambda}, {"curve", curve}});
    auto report_json = [](const LowDegreeReport& rep) {
        return json{{"degree", rep.degree_cap},
                    {"norm_sq", rep.norm_sq},
                    {"terms", rep.terms_enumerated},
                    {"per_degree", rep.per_degree}};
    };
    if (curve) {
        auto reports = low_degree_curve(o.params.n, o.params.k_right, o.params.k_left, lambda,
                                        degree_cap, o.enum_cap, o.threads);
        doc["curve"] = json::array();
        for (const auto& rep : reports) doc["curve"].push_back(report_json(rep));
    } else {
        doc.update(report_json(low_degree_norm_sq(o.params.n, o.params.k_right, o.params.k_left,
                                                  lambda, degree_cap, o.enum_cap, o.threads)));
    }
    write_output(o.out, doc.dump(2) + "\n");
    return 0;
}

int run_phase(CommonOpts& o, const std::string& family, const std::string& beta_text,
              const std::string& alpha_text, double tol) {
    double balance;
    if (family == "balanced")
        balance = 1.0;
    else if (family == "light")
        balance = 2.0 / 3.0;
    else if (family == "moderate")
        balance = 0.5;
    else if (family == "extreme")
        balance = 0.0;
    else
        throw ParamError("unknown family '" + family + "'");

    auto betas = parse_grid(beta_text);
    auto alphas = parse_grid(alpha_text);
    auto cells = phase_grid(betas, alphas, balance, tol);

    json cfg;
    cfg["family"] = family;
    cfg["balance"] = balance;
    cfg["beta"] = beta_text;
    cfg["alpha"] = alpha_text;
    cfg["tol"] = tol;

    if (o.format == "json") {
        json doc;
        doc["config"] = cfg;
        doc["cells"] = json::array();
        for (const auto& cell : cells)
            doc["cells"].push_back(json{{"beta", cell.beta},
                                        {"alpha", cell.alpha},
                                        {"label", region_name(cell.label.region)},
                                        {"witnesses", witness_names(cell.label)}});
        write_output(o.out, doc.dump(2) + "\n");
    } else {
        std::string text = "# config " + cfg.dump() + "\n";
        text += "beta,alpha,label,witnesses\n";
        for (const auto& cell : cells)
            text += fmt(cell.beta) + "," + fmt(cell.alpha) + "," +
                    region_name(cell.label.region) + "," + witness_names(cell.label) + "\n";
        write_output(o.out, text);
    }
    return 0;
}

int run_sweep(CommonOpts& o, const std::string& n_text, const std::string& kr_text,
              const std::string& kl_text, const std::string& p_text, const std::string& q_text,
              const std::string& methods_text, int64_t trials, int restarts) {
    o.resolve_seed();
    std::vector<ModelParams> grid;
    for (int n : parse_int_grid(n_text))
        for (int kr : parse_int_grid(kr_text))
            for (int kl : parse_int_grid(kl_text))
                for (double p : parse_grid(p_text))
                    for (double q : parse_grid(q_text)) grid.push_back({n, kr, kl, p, q});

    std::vector<Method> methods;
    std::stringstream ss(methods_text);
    std::string item;
    while (std::getline(ss, item, ',')) methods.push_back(method_from_name(item));
    if (methods.empty()) throw ParamError("no methods given");

    DetectOptions opt = o.detect_options();
    opt.restarts = restarts;
    auto rows = sweep(grid, methods, trials, Seed{o.seed_root}, opt);

    json cfg;
    cfg["grid"] = json{{"n", n_text}, {"kr", kr_text}, {"kl", kl_text}, {"p", p_text},
                       {"q", q_text}};
    cfg["seed"] = o.seed_root;
    cfg["scan_cap"] = o.scan_cap;
    cfg["enum_cap"] = o.enum_cap;
    cfg["methods"] = methods_text;
    cfg["trials"] = trials;
    cfg["restarts"] = restarts;
    cfg["cells"] = grid.size();
    if (o.format == "json") {
        json doc;
        doc["config"] = cfg;
        doc["rows"] = json::array();
        for (const auto& row : rows) {
            json r;
            r["params"] = params_json(row.params);
            r.update(estimate_json(row.estimate));
            r["method"] = method_name(row.method);
            if (!row.error.empty()) r["error"] = row.error;
            doc["rows"].push_back(r);
        }
        write_output(o.out, doc.dump(2) + "\n");
    } else {
        std::string text = "# config " + cfg.dump() + "\n";
        text += kRiskCsvHeader;
        for (const auto& row : rows) {
            RiskEstimate est = row.estimate;
            est.method = row.method;
            est.trials = trials;
            text += risk_csv_row(row.params, est, row.error);
        }
        write_output(o.out, text);
    }
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"planted dense bipartite subgraph detection toolkit"};
    app.require_subcommand(1);
    app.set_config("--config");

    // sample
    CommonOpts sample_opts;
    std::string sample_model = "planted", sets_out;
    auto* cmd_sample = app.add_subcommand("sample", "draw a graph and write its edge list");
    add_model_flags(cmd_sample, sample_opts, false);
    add_common_flags(cmd_sample, sample_opts);
    cmd_sample->add_option("--model", sample_model, "planted | union | er")
        ->capture_default_str();
    cmd_sample->add_option("--sets-out", sets_out, "write planted sets as JSON");

    // detect
    CommonOpts detect_opts;
    std::string in_path, detect_method = "count", detect_model = "planted";
    int detect_restarts = 50;
    auto* cmd_detect = app.add_subcommand("detect", "run one test on a graph");
    add_model_flags(cmd_detect, detect_opts, false);
    add_common_flags(cmd_detect, detect_opts);
    cmd_detect->add_option("--in", in_path, "edge-list file (otherwise a graph is sampled)");
    cmd_detect->add_option("--method", detect_method, "scan | scan-greedy | count | degree | lrt")
        ->capture_default_str();
    cmd_detect->add_option("--model", detect_model, "sampling model when --in is absent")
        ->capture_default_str();
    cmd_detect->add_option("--restarts", detect_restarts, "greedy scan restarts")
        ->capture_default_str();

    // risk
    CommonOpts risk_opts;
    std::string risk_method = "count";
    int64_t risk_trials = 200;
    int risk_restarts = 50;
    auto* cmd_risk = app.add_subcommand("risk", "Monte Carlo risk estimate for one test");
    add_model_flags(cmd_risk, risk_opts);
    add_common_flags(cmd_risk, risk_opts);
    cmd_risk->add_option("--method", risk_method)->capture_default_str();
    cmd_risk->add_option("--trials", risk_trials)->capture_default_str();
    cmd_risk->add_option("--restarts", risk_restarts)->capture_default_str();
    cmd_risk->add_option("--format", risk_opts.format, "json | csv")->capture_default_str();

    // oracle
    CommonOpts oracle_opts;
    auto* cmd_oracle =
        app.add_subcommand("oracle", "exact second moment, Bayes risk, and risk bound");
    add_model_flags(cmd_oracle, oracle_opts);
    add_common_flags(cmd_oracle, oracle_opts);

    // lowdeg
    CommonOpts lowdeg_opts;
    int lowdeg_degree = 3;
    bool lowdeg_curve = false;
    double lowdeg_lambda = -1;
    auto* cmd_lowdeg = app.add_subcommand("lowdeg", "degree-capped likelihood-ratio norm");
    add_model_flags(cmd_lowdeg, lowdeg_opts, false);
    cmd_lowdeg->get_option("--n")->required();
    cmd_lowdeg->get_option("--kr")->required();
    cmd_lowdeg->get_option("--kl")->required();
    add_common_flags(cmd_lowdeg, lowdeg_opts);
    cmd_lowdeg->add_option("--degree", lowdeg_degree, "degree cap")->capture_default_str();
    cmd_lowdeg->add_flag("--curve", lowdeg_curve, "report every cap up to --degree");
    cmd_lowdeg->add_option("--lambda", lowdeg_lambda,
                           "chi-square divergence; overrides --p/--q when given");

    // phase
    CommonOpts phase_opts;
    phase_opts.format = "csv";
    std::string phase_family = "balanced", phase_beta = "0:1:0.05", phase_alpha = "0:2:0.1";
    double phase_tol = 1e-9;
    auto* cmd_phase = app.add_subcommand("phase", "phase-diagram grid of region labels");
    add_common_flags(cmd_phase, phase_opts);
    cmd_phase->add_option("--family", phase_family, "balanced | light | moderate | extreme")
        ->capture_default_str();
    cmd_phase->add_option("--beta", phase_beta, "lo:hi:step or list")->capture_default_str();
    cmd_phase->add_option("--alpha", phase_alpha, "lo:hi:step or list")->capture_default_str();
    cmd_phase->add_option("--tol", phase_tol, "boundary tolerance")->capture_default_str();
    cmd_phase->add_option("--format", phase_opts.format, "csv | json")->capture_default_str();

    // sweep
    CommonOpts sweep_opts;
    sweep_opts.format = "csv";
    std::string sweep_n, sweep_kr, sweep_kl, sweep_p, sweep_q, sweep_methods = "count";
    int64_t sweep_trials = 100;
    int sweep_restarts = 50;
    auto* cmd_sweep = app.add_subcommand("sweep", "risk estimates over a parameter grid");
    add_common_flags(cmd_sweep, sweep_opts);
    cmd_sweep->add_option("--n", sweep_n, "values or lo:hi:step")->required();
    cmd_sweep->add_option("--kr", sweep_kr)->required();
    cmd_sweep->add_option("--kl", sweep_kl)->required();
    cmd_sweep->add_option("--p", sweep_p)->required();
    cmd_sweep->add_option("--q", sweep_q)->required();
    cmd_sweep->add_option("--method", sweep_methods, "comma-separated methods")
        ->capture_default_str();
    cmd_sweep->add_option("--trials", sweep_trials)->capture_default_str();
    cmd_sweep->add_option("--restarts", sweep_restarts)->capture_default_str();
    cmd_sweep->add_option("--format", sweep_opts.format, "csv | json")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[usage]: " << e.what() << "\n";
        return 2;
    }

    if (cmd_sample->parsed()) return run_sample(sample_opts, sample_model, sets_out);
    if (cmd_detect->parsed())
        return run_detect(detect_opts, in_path, detect_method, detect_restarts, detect_model);
    if (cmd_risk->parsed()) return run_risk(risk_opts, risk_method, risk_trials, risk_restarts);
    if (cmd_oracle->parsed()) return run_oracle(oracle_opts);
    if (cmd_lowdeg->parsed())
        return run_lowdeg(lowdeg_opts, lowdeg_degree, lowdeg_curve, lowdeg_lambda);
    if (cmd_phase->parsed())
        return run_phase(phase_opts, phase_family, phase_beta, phase_alpha, phase_tol);
    if (cmd_sweep->parsed())
        return run_sweep(sweep_opts, sweep_n, sweep_kr, sweep_kl, sweep_p, sweep_q, sweep_methods,
                         sweep_trials, sweep_restarts);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error[budget]: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error[parse]: " << e.what() << "\n";
        return 4;
    } catch (const ParamError& e) {
        std::cerr << "error[usage]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
}
