// Command-line harness: algebra evaluation, verification suites and
// parameter sweeps with machine-readable reports.
//
//   symcone verify <suite> [--cone ...] [--s ...] [--tol ...] [--out r.json]
//   symcone sweep  <suite> --axis name=start:stop:count [--csv out.csv]
//   symcone algebra <det|minor|power|inverse|spectral> --cone ... --x ...
//
// Exit codes: 0 pass, 1 suite failure, 2 usage/config errors.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "symcone/cone.hpp"
#include "symcone/suites.hpp"

using namespace symcone;

namespace {

void load_config_file(const std::string& path, SuiteConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad config line: '" + line + "'");
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "cone") {
            cfg.cone_text = value;
        } else if (key == "nodes") {
            cfg.nodes = std::stoul(value);
        } else if (key == "samples") {
            cfg.samples = std::stoul(value);
        } else if (key == "scheme") {
            cfg.scheme = value;
        } else if (key == "tol") {
            cfg.tol = std::stod(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else {
            cfg.params[key] = value;
        }
    }
}

SweepAxis parse_axis(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("axis must be name=start:stop:count");
    SweepAxis ax;
    ax.name = text.substr(0, eq);
    std::string rest = text.substr(eq + 1);
    auto c1 = rest.find(':');
    auto c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("axis must be name=start:stop:count");
    double start = std::stod(rest.substr(0, c1));
    double stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
    std::size_t count = std::stoul(rest.substr(c2 + 1));
    if (count == 0) throw std::invalid_argument("axis count must be positive");
    for (std::size_t i = 0; i < count; ++i) {
        double t = count == 1 ? 0.0 : double(i) / double(count - 1);
        ax.values.push_back(start + t * (stop - start));
    }
    return ax;
}

int run_verify(SuiteConfig cfg) {
    VerificationReport rep = run_suite(cfg);
    std::string json = rep.to_json();
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        out << json << "\n";
    }
    for (const auto& cs : rep.cases) {
        std::cout << (cs.pass ? "PASS " : "FAIL ") << rep.suite << ": " << cs.name
                  << " [" << cs.inputs << "] computed=" << cs.computed;
        if (cs.expected != 0.0) std::cout << " expected=" << cs.expected;
        std::cout << "\n";
    }
    std::cout << (rep.aggregate_pass ? "PASS" : "FAIL") << " " << rep.suite
              << " aggregate (" << rep.cases.size() << " cases, " << rep.wall_ms
              << " ms)\n";
    if (cfg.out_path.empty()) std::cout << json << "\n";
    return rep.aggregate_pass ? 0 : 1;
}

int run_sweep(SuiteConfig cfg, const std::vector<std::string>& axis_texts,
              const std::string& csv_path) {
    std::vector<SweepAxis> axes;
    for (const auto& t : axis_texts) axes.push_back(parse_axis(t));
    SweepResult res = sweep(cfg, axes);
    std::string csv = res.to_csv();
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << csv;
    } else {
        std::cout << csv;
    }
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        out << res.to_json() << "\n";
    }
    std::cout << "sweep complete: " << res.rows.size() << " cells\n";
    return 0;
}

int run_algebra(const std::string& op, const std::string& cone_text,
                const std::string& x_text, const std::string& s_text, std::size_t k) {
    Cone cone = parse_cone(cone_text);
    Element x = parse_multiindex(x_text).e;
    if (op == "det") {
        std::cout << determinant(cone, x) << "\n";
    } else if (op == "minor") {
        std::cout << principal_minor(cone, k, x) << " " << rotated_minor(cone, k, x)
                  << "\n";
    } else if (op == "power") {
        MultiIndex s = parse_multiindex(s_text);
        std::cout << power_function(cone, s, x) << "\n";
    } else if (op == "inverse") {
        Element inv = inverse(cone, x);
        std::cout << to_string(MultiIndex(inv)) << "\n";
    } else if (op == "spectral") {
        auto sd = spectral(cone, x);
        std::cout << "lambda = " << to_string(MultiIndex(sd.eigenvalues)) << "\n";
        for (const auto& ci : sd.idempotents)
            std::cout << "c = " << to_string(MultiIndex(ci)) << "\n";
    } else {
        throw std::invalid_argument("unknown algebra op '" + op + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for tube domains over symmetric cones"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string suite, config_path, csv_path;
    std::vector<std::string> axis_texts, sets;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cone", cfg.cone_text, "halfline or lorentz:<n>[:u=...]");
        sub->add_option("--nodes", cfg.nodes, "tensor nodes per axis");
        sub->add_option("--samples", cfg.samples, "monte carlo sample count");
        sub->add_option("--scheme", cfg.scheme, "tensor_gauss or monte_carlo");
        sub->add_option("--tol", cfg.tol, "relative tolerance override");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out_path, "JSON report path");
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--set", sets, "extra parameter key=value")->take_all();
        for (const char* key : {"s", "p", "q", "beta", "nu", "alpha", "xi", "delta",
                                "epsilon", "beta_violating"}) {
            sub->add_option_function<std::string>(
                std::string("--") + key,
                [&cfg, key = std::string(key)](const std::string& v) {
                    cfg.params[key] = v;
                },
                std::string("suite parameter ") + key);
        }
    };

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite id")->required();
    add_common(verify);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid sweep over parameters");
    sweep_cmd->add_option("suite", suite, "suite id")->required();
    sweep_cmd->add_option("--axis", axis_texts, "axis name=start:stop:count")
        ->required()
        ->take_all();
    sweep_cmd->add_option("--csv", csv_path, "CSV output path");
    add_common(sweep_cmd);

    CLI::App* algebra = app.add_subcommand("algebra", "evaluate cone algebra");
    std::string alg_op, alg_x, alg_s = "1", alg_cone = "halfline";
    std::size_t alg_k = 1;
    algebra->add_option("op", alg_op, "det|minor|power|inverse|spectral")->required();
    algebra->add_option("--cone", alg_cone, "cone spec");
    algebra->add_option("--x", alg_x, "point coordinates")->required();
    algebra->add_option("--s", alg_s, "power multi-index");
    algebra->add_option("--k", alg_k, "minor index");

    CLI::App* suites_cmd = app.add_subcommand("suites", "list registered suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (suites_cmd->parsed()) {
            for (const auto& name : registered_suites()) std::cout << name << "\n";
            return 0;
        }
        if (!config_path.empty()) load_config_file(config_path, cfg);
        for (const auto& kv : sets) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--set expects key=value");
            cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        cfg.suite = suite;
        if (verify->parsed()) return run_verify(cfg);
        if (sweep_cmd->parsed()) return run_sweep(cfg, axis_texts, csv_path);
        if (algebra->parsed()) return run_algebra(alg_op, alg_cone, alg_x, alg_s, alg_k);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
