// gdr: command-line front end for the generalized Douglas-Rachford library.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gdr/error.hpp"
#include "gdr/experiment.hpp"

namespace {

struct Flags {
    std::string instance;
    std::string config;
    std::string out;
    std::string x0;
    std::string op;
    std::string kappa_mode;
    long long seed = -1;
    int cycles = 0;
    double tol = -1;
    long long samples = 0;
    double delta = -1;
    double eps = -1;
    double margin = -1;
};

void add_common(CLI::App* sub, Flags& f, bool run_flags)
{
    sub->add_option("--instance", f.instance, "catalog name or path to an instance JSON file");
    sub->add_option("--config", f.config, "run configuration JSON file");
    sub->add_option("--out", f.out, "output directory (default .)");
    if (!run_flags) return;
    sub->add_option("--seed", f.seed, "RNG seed for estimators and random starts");
    sub->add_option("--cycles", f.cycles, "number of cycles");
    sub->add_option("--tol", f.tol, "stop when a cycle moves less than this");
    sub->add_option("--samples", f.samples, "estimator samples");
    sub->add_option("--delta", f.delta, "estimator ball radius");
    sub->add_option("--eps", f.eps, "regularity parameter eps");
    sub->add_option("--margin", f.margin, "certification margin on the fitted rate");
    sub->add_option("--x0", f.x0, "start point as comma-separated coordinates, or 'random'");
    sub->add_option("--operator", f.op, "operator override: ap, dr, raar, affine_combo");
    sub->add_option("--kappa-mode", f.kappa_mode, "per_pair or global");
}

gdr::Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gdr::InvalidArgument("cannot open '" + path + "'");
    try {
        return gdr::Json::parse(in);
    } catch (const gdr::Json::parse_error& e) {
        throw gdr::InvalidArgument("malformed JSON in '" + path + "': " + e.what());
    }
}

gdr::Json parse_x0(const std::string& s)
{
    if (s == "random") return "random";
    gdr::Json a = gdr::Json::array();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw gdr::InvalidArgument("--x0: bad coordinate '" + item + "'");
        a.push_back(v);
    }
    return a;
}

gdr::RunConfig build_config(const Flags& f)
{
    gdr::Json j = f.config.empty() ? gdr::Json::object() : read_json_file(f.config);
    if (!j.is_object()) throw gdr::InvalidArgument("config: expected a JSON object");
    if (!f.instance.empty()) {
        const bool is_file = f.instance.size() > 5 && f.instance.ends_with(".json");
        j["instance"] = is_file ? read_json_file(f.instance) : gdr::Json(f.instance);
    }
    if (!j.contains("instance")) throw gdr::InvalidArgument("no instance given (--instance or config.instance)");
    if (!f.out.empty()) j["out"] = f.out;
    if (f.seed >= 0) j["seed"] = f.seed;
    if (f.cycles != 0) j["cycles"] = f.cycles;
    if (f.tol >= 0) j["stop_tol"] = f.tol;
    if (f.samples != 0) j["estimator"]["samples"] = f.samples;
    if (f.delta >= 0) j["estimator"]["delta"] = f.delta;
    if (f.eps >= 0) j["eps"] = f.eps;
    if (f.margin >= 0) j["margin"] = f.margin;
    if (!f.x0.empty()) j["x0"] = parse_x0(f.x0);
    if (!f.op.empty()) j["operator"] = f.op;
    if (!f.kappa_mode.empty()) j["kappa_mode"] = f.kappa_mode;
    return gdr::config_from_json(j);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"generalized Douglas-Rachford experiments"};
    app.require_subcommand(1);
    Flags f;
    CLI::App* run = app.add_subcommand("run", "run a cyclic schedule and write trajectory.csv and report.json");
    CLI::App* predict = app.add_subcommand("predict", "predict the linear rate from regularity constants");
    CLI::App* certify = app.add_subcommand("certify", "compare the predicted rate with a run");
    CLI::App* estimate = app.add_subcommand("estimate", "sample CQ-numbers, moduli and (eps, delta)-regularity");
    CLI::App* graph = app.add_subcommand("graph", "check the connectivity conditions of the schedule");
    CLI::App* catalog = app.add_subcommand("catalog", "list the built-in instances");
    for (CLI::App* s : {run, predict, certify, estimate}) add_common(s, f, true);
    add_common(graph, f, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return gdr::kExitConfig;
    }

    if (catalog->parsed()) {
        for (const auto& e : gdr::catalog_entries()) std::printf("%-28s %s\n", e.usage.c_str(), e.description.c_str());
        return gdr::kExitOk;
    }

    gdr::RunConfig cfg;
    try {
        cfg = build_config(f);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gdr: config error: %s\n", e.what());
        return gdr::kExitConfig;
    }

    try {
        gdr::CommandResult r;
        if (run->parsed()) r = gdr::command_run(cfg);
        else if (predict->parsed()) r = gdr::command_predict(cfg);
        else if (certify->parsed()) r = gdr::command_certify(cfg);
        else if (estimate->parsed()) r = gdr::command_estimate(cfg);
        else r = gdr::command_graph(cfg);
        gdr::write_report(cfg, r.report);
        std::printf("%s\n", r.summary.c_str());
        return r.exit_code;
    } catch (const gdr::NumericAbort& e) {
        std::fprintf(stderr, "gdr: numeric abort: %s\n", e.what());
        return gdr::kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gdr: error: %s\n", e.what());
        return gdr::kExitConfig;
    }
}
