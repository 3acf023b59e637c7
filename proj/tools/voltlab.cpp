// voltlab command-line front end.
//
//   voltlab describe --spot spot.csv
//   voltlab report --spot spot.csv --futures futures.csv --out-dir out
//   voltlab simulate --params "alpha0=0.05,alpha=0.05,beta=0.9" -T 3000 --out spot.csv

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "voltlab/study.hpp"

namespace {

using namespace voltlab;

struct CliState {
    StudyConfig config;
    std::string spot;
    std::string futures;
    std::string event_date;
    std::string pre;
    std::string post;
    std::string full;
    std::string coint;
    std::string family = "garch";
    std::string mean_lags;
    bool unconstrained = false;
    std::string out_dir;
    std::string formats = "md,json,csv";
    std::uint64_t seed = 1;

    // simulate
    std::string params;
    std::size_t length = 3000;
    std::size_t burn_in = 500;
    std::string start_date = "2005-04-08";
    std::string out;
    std::string companion_out;

    // render
    std::string from;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) parts.push_back(item.substr(b, e - b + 1));
    }
    return parts;
}

std::size_t parse_count(const std::string& s) {
    std::size_t pos = 0;
    const auto v = std::stoul(s, &pos);
    if (pos != s.size()) throw Error("not an integer: " + s);
    return v;
}

double parse_number(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw Error("not a number: " + s);
    return v;
}

void add_study_options(CLI::App* sub, CliState& st, bool needs_futures) {
    sub->add_option("--spot", st.spot, "Spot price file (date,close)")->required();
    auto* fut = sub->add_option("--futures", st.futures, "Futures price file (date,close)");
    if (needs_futures) fut->required();
    sub->add_option("--event-date", st.event_date, "Event date (default 2010-04-16)");
    sub->add_option("--pre", st.pre, "Pre-event window START:END");
    sub->add_option("--post", st.post, "Post-event window START:END");
    sub->add_option("--full", st.full, "Full-sample window START:END");
    sub->add_option("--coint-window", st.coint, "Cointegration and causality window START:END");
    sub->add_option("--family", st.family, "garch, tgarch or arch");
    sub->add_option("--p", st.config.p, "ARCH order");
    sub->add_option("--q", st.config.q, "GARCH order");
    sub->add_option("--mean-lags", st.mean_lags, "Comma-separated AR lags in the mean, e.g. 4");
    sub->add_flag("--unconstrained", st.unconstrained, "Estimate without positivity constraints");
    sub->add_option("--max-lag", st.config.granger_max_lag, "Largest Granger lag");
    sub->add_option("--seed", st.seed, "Random seed");
    sub->add_option("--out-dir", st.out_dir, "Output directory (default $VOLTLAB_OUT or .)");
    sub->add_option("--format", st.formats, "Comma-separated subset of md,json,csv");
    sub->add_flag("--parallel", st.config.parallel, "Run independent blocks concurrently");
}

void finalize_config(CliState& st) {
    auto& c = st.config;
    c.spot_file = st.spot;
    if (!st.futures.empty()) c.futures_file = st.futures;
    if (!st.event_date.empty()) c.event_date = parse_date(st.event_date);
    if (!st.pre.empty()) c.pre = parse_window(st.pre);
    if (!st.post.empty()) c.post = parse_window(st.post);
    if (!st.full.empty()) c.full = parse_window(st.full);
    if (!st.coint.empty()) c.coint = parse_window(st.coint);
    c.family = parse_vol_family(st.family);
    c.constrained = !st.unconstrained;
    c.mean_lags.clear();
    for (const auto& s : split(st.mean_lags, ',')) c.mean_lags.push_back(parse_count(s));
    c.validate();
}

OutputFormats parse_formats(const std::string& s) {
    OutputFormats f{false, false, false};
    for (const auto& part : split(s, ',')) {
        if (part == "md" || part == "markdown") f.markdown = true;
        else if (part == "json") f.json = true;
        else if (part == "csv") f.csv = true;
        else throw Error("unknown format '" + part + "'");
    }
    return f;
}

std::filesystem::path out_dir(const CliState& st) {
    if (!st.out_dir.empty()) return st.out_dir;
    if (const char* env = std::getenv("VOLTLAB_OUT"); env && *env) return env;
    return ".";
}

int emit(const StudyReport& rep, const CliState& st) {
    const auto paths = write_report(rep, out_dir(st), parse_formats(st.formats), rep.command);
    for (const auto& b : rep.blocks) {
        std::cout << fmt::format("{:<8} {:<18} {:<20} {}\n", to_string(b.status), b.id, b.label, b.reason);
    }
    for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
    const int code = rep.exit_code();
    if (code != 0) {
        std::cerr << "failed blocks:";
        for (const auto& b : rep.blocks) {
            if (b.status == BlockStatus::failed) std::cerr << " " << b.id;
        }
        std::cerr << "\n";
    }
    return code;
}

VolParams parse_params(const VolModelSpec& spec, const std::string& text) {
    const auto names = VolParams::names(spec);
    std::vector<double> theta(names.size(), 0.0);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;
    bool have_alpha0 = false;
    for (const auto& kv : split(text, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("parameter '" + kv + "' is not name=value");
        std::string key = kv.substr(0, eq);
        if (key == "alpha" || key == "beta" || key == "gamma") key += "[1]";
        if (key == "mu") key = "mean_const";
        auto it = index.find(key);
        if (it == index.end()) {
            throw Error(fmt::format("parameter '{}' does not belong to {}({},{})", key, to_string(spec.family),
                                    spec.p, spec.q));
        }
        theta[it->second] = parse_number(kv.substr(eq + 1));
        if (key == "alpha0") have_alpha0 = true;
    }
    if (!have_alpha0) throw Error("--params must set alpha0");
    return VolParams::unpack(spec, theta);
}

int run_simulate(const CliState& st) {
    if (st.out.empty()) throw Error("simulate needs --out");
    VolModelSpec spec;
    spec.family = parse_vol_family(st.family);
    spec.p = st.config.p;
    spec.q = spec.family == VolFamily::arch ? 0 : st.config.q;
    for (const auto& s : split(st.mean_lags, ',')) spec.mean_lags.push_back(parse_count(s));
    spec.include_mean_constant = true;
    spec = spec.normalized();
    const auto params = parse_params(spec, st.params);
    const auto prices = simulate_prices(spec, params, st.length, st.burn_in, st.seed, parse_date(st.start_date), "spot");
    auto write = [](const std::string& path, const std::string& content) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path);
        f << content;
    };
    write(st.out, prices_to_csv(prices));
    std::cout << "wrote " << st.out << " (" << prices.size() << " prices)\n";
    if (!st.companion_out.empty()) {
        const auto companion = simulate_companion(prices, st.seed + 0x9e3779b97f4a7c15ULL);
        write(st.companion_out, prices_to_csv(companion));
        std::cout << "wrote " << st.companion_out << "\n";
    }
    return 0;
}

int run_render(const CliState& st) {
    std::ifstream in(st.from, std::ios::binary);
    if (!in) throw Error("cannot read " + st.from);
    const auto doc = Json::parse(in);
    const auto md = render_markdown(doc);
    if (st.out.empty()) {
        std::cout << md;
    } else {
        std::ofstream f(st.out, std::ios::binary);
        if (!f) throw Error("cannot write " + st.out);
        f << md;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voltlab: volatility, cointegration and causality analysis of price series"};
    app.require_subcommand(1);
    CliState st;

    auto* describe = app.add_subcommand("describe", "Descriptive statistics, correlograms, histograms");
    add_study_options(describe, st, false);
    auto* fitc = app.add_subcommand("fit", "GARCH-family fits before and after the event date");
    add_study_options(fitc, st, false);
    auto* coint = app.add_subcommand("coint", "ADF battery, Engle-Granger, Johansen and ECM");
    add_study_options(coint, st, true);
    auto* granger = app.add_subcommand("granger", "Granger causality scan on differenced log prices");
    add_study_options(granger, st, true);
    auto* report = app.add_subcommand("report", "Full pipeline in a single report");
    add_study_options(report, st, false);

    auto* sim = app.add_subcommand("simulate", "Write a simulated price file");
    sim->add_option("--family", st.family, "garch, tgarch or arch");
    sim->add_option("--p", st.config.p, "ARCH order");
    sim->add_option("--q", st.config.q, "GARCH order");
    sim->add_option("--mean-lags", st.mean_lags, "Comma-separated AR lags in the mean");
    sim->add_option("--params", st.params, "e.g. alpha0=0.05,alpha=0.05,beta=0.9")->required();
    sim->add_option("-T,--length", st.length, "Number of returns");
    sim->add_option("--burn-in", st.burn_in, "Discarded start-up draws");
    sim->add_option("--seed", st.seed, "Random seed");
    sim->add_option("--start-date", st.start_date, "First date of the file");
    sim->add_option("--out", st.out, "Price file to write")->required();
    sim->add_option("--companion-out", st.companion_out, "Also write a cointegrated second series");

    auto* render = app.add_subcommand("render", "Re-render markdown from a JSON report");
    render->add_option("--from", st.from, "JSON report")->required();
    render->add_option("--out", st.out, "Markdown file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) return run_simulate(st);
        if (render->parsed()) return run_render(st);
        finalize_config(st);
        const auto in = load_inputs(st.config);
        if (describe->parsed()) return emit(cmd_describe(st.config, in), st);
        if (fitc->parsed()) return emit(cmd_fit(st.config, in, st.config.family), st);
        if (coint->parsed()) return emit(cmd_coint(st.config, in), st);
        if (granger->parsed()) return emit(cmd_granger(st.config, in), st);
        if (report->parsed()) return emit(cmd_report(st.config, in), st);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
