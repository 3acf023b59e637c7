#include "voltlab/study.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <random>

#include <fmt/format.h>

#include "voltlab/causality.hpp"
#include "voltlab/cointegration.hpp"
#include "voltlab/descriptive.hpp"
#include "voltlab/error.hpp"
#include "voltlab/unitroot.hpp"

namespace voltlab {

namespace {

constexpr std::string_view kToolVersion = "0.1.0";

Block run_block(std::string id, std::string label, std::string title,
                const std::function<void(Block&)>& body) {
    Block b;
    b.id = std::move(id);
    b.label = std::move(label);
    b.title = std::move(title);
    b.data = Json::object();
    try {
        body(b);
    } catch (const std::exception& e) {
        b.status = BlockStatus::failed;
        b.reason = e.what();
    }
    return b;
}

Block skipped_block(std::string id, std::string label, std::string title, std::string reason) {
    Block b;
    b.id = std::move(id);
    b.label = std::move(label);
    b.title = std::move(title);
    b.status = BlockStatus::skipped;
    b.reason = std::move(reason);
    b.data = Json::object();
    return b;
}

struct NamedWindow {
    std::string name;
    Window window;
};

std::vector<NamedWindow> describe_windows(const StudyConfig& c) {
    return {{"full", c.full}, {"pre", c.pre}, {"post", c.post}};
}

std::vector<NamedWindow> event_windows(const StudyConfig& c) { return {{"pre", c.pre}, {"post", c.post}}; }

PriceSeries window_prices(const PriceSeries& p, const Window& w) {
    return slice_by_date(p, w.start, w.end);
}

/// Returns inside a window; throws when fewer than `min_returns` remain.
ReturnSeries window_returns(const PriceSeries& p, const Window& w, std::size_t min_returns) {
    auto sliced = window_prices(p, w);
    if (sliced.size() < min_returns + 1) {
        throw Error(fmt::format("window {} has {} returns; at least {} required", format_window(w),
                                sliced.size() > 0 ? sliced.size() - 1 : 0, min_returns));
    }
    return to_returns(sliced);
}

Json window_json(const NamedWindow& w) {
    return {{"name", w.name}, {"start", format_date(w.window.start)}, {"end", format_date(w.window.end)}};
}

Json config_json(const StudyConfig& c) {
    Json lags = c.mean_lags;
    return {{"spot_file", c.spot_file.string()},
            {"futures_file", c.futures_file ? Json(c.futures_file->string()) : Json(nullptr)},
            {"event_date", format_date(c.event_date)},
            {"full", format_window(c.full)},
            {"pre", format_window(c.pre)},
            {"post", format_window(c.post)},
            {"coint", format_window(c.coint)},
            {"p", c.p},
            {"q", c.q},
            {"mean_lags", lags},
            {"constrained", c.constrained},
            {"correlogram_lags", c.correlogram_lags},
            {"arch_lm_lags", c.arch_lm_lags},
            {"johansen_lags", c.johansen_lags},
            {"granger_max_lag", c.granger_max_lag}};
}

StudyReport new_report(std::string command, const StudyConfig& c) {
    StudyReport r;
    r.command = std::move(command);
    r.config = config_json(c);
    return r;
}

// ---------------------------------------------------------------------------
// describe

void add_describe_blocks(StudyReport& rep, const StudyConfig& c, const StudyInputs& in) {
    for (const auto& w : describe_windows(c)) {
        rep.blocks.push_back(run_block(
            "descriptive." + w.name, "Table 4.1", "Descriptive statistics of returns (%), " + w.name,
            [&](Block& b) {
                const auto sliced = window_prices(in.spot, w.window);
                if (sliced.size() < 3) {
                    b.status = BlockStatus::skipped;
                    b.reason = fmt::format("window {} has fewer than 2 returns", format_window(w.window));
                    return;
                }
                const auto r = to_returns(sliced);
                const auto s = summary(r.values());
                b.data = {{"kind", "descriptive"}, {"window", window_json(w)}, {"stats", s}};
                if (!s.degenerate()) {
                    const auto h = histogram(r.values(), c.histogram_bins);
                    const auto name = "histogram_" + w.name + ".csv";
                    rep.artifacts.push_back({name, histogram_csv(h)});
                    b.data["histogram_csv"] = name;
                }
            }));
    }
    for (const auto& w : describe_windows(c)) {
        rep.blocks.push_back(run_block(
            "correlogram." + w.name, "Table 4.2",
            fmt::format("Autocorrelations of returns up to lag {}, {}", c.correlogram_lags, w.name),
            [&](Block& b) {
                const auto sliced = window_prices(in.spot, w.window);
                if (sliced.size() < 4 * c.correlogram_lags + 2) {
                    b.status = BlockStatus::skipped;
                    b.reason = fmt::format("window {} is too short for {} lags", format_window(w.window),
                                           c.correlogram_lags);
                    return;
                }
                const auto r = to_returns(sliced);
                const auto rows = ljung_box(r.values(), c.correlogram_lags);
                const auto summ = summarize_correlogram(rows);
                const auto name = "correlogram_" + w.name + ".csv";
                rep.artifacts.push_back({name, correlogram_csv(rows)});
                b.data = {{"kind", "correlogram"},
                          {"window", window_json(w)},
                          {"n_obs", r.size()},
                          {"summary", summ},
                          {"rows", rows},
                          {"correlogram_csv", name}};
            }));
    }
}

// ---------------------------------------------------------------------------
// ADF and ARCH-LM

Json adf_row(std::string series, std::span<const double> x, Deterministic det) {
    AdfSpec spec;
    spec.deterministic = det;
    Json row = {{"series", std::move(series)}};
    try {
        row["result"] = adf_test(x, spec);
    } catch (const Error& e) {
        row["result"] = nullptr;
        row["error"] = e.what();
    }
    return row;
}

bool rows_have_error(const Json& rows) {
    return std::any_of(rows.begin(), rows.end(), [](const Json& r) { return r.contains("error"); });
}

void finish_rows(Block& b, Json rows) {
    if (rows_have_error(rows)) {
        b.status = BlockStatus::failed;
        std::string reason;
        for (const auto& r : rows) {
            if (r.contains("error")) {
                if (!reason.empty()) reason += "; ";
                reason += r.at("series").get<std::string>() + ": " + r.at("error").get<std::string>();
            }
        }
        b.reason = reason;
    }
    b.data["rows"] = std::move(rows);
}

void add_adf_blocks(StudyReport& rep, const StudyConfig& c, const StudyInputs& in) {
    rep.blocks.push_back(run_block("adf.full", "Table 5.1.1", "ADF test on daily returns, full sample",
                                   [&](Block& b) {
                                       b.data = {{"kind", "adf"}};
                                       Json rows = Json::array();
                                       const auto r = window_returns(in.spot, c.full, 2);
                                       rows.push_back(adf_row("returns (full)", r.values(),
                                                              Deterministic::constant_trend));
                                       finish_rows(b, std::move(rows));
                                   }));
    rep.blocks.push_back(run_block("adf.event", "Table 5.2.1",
                                   "ADF test on daily returns before and after the event",
                                   [&](Block& b) {
                                       b.data = {{"kind", "adf"}};
                                       Json rows = Json::array();
                                       for (const auto& w : event_windows(c)) {
                                           try {
                                               const auto r = window_returns(in.spot, w.window, 2);
                                               rows.push_back(adf_row("returns (" + w.name + ")", r.values(),
                                                                      Deterministic::constant_trend));
                                           } catch (const Error& e) {
                                               rows.push_back({{"series", "returns (" + w.name + ")"},
                                                               {"result", nullptr},
                                                               {"error", e.what()}});
                                           }
                                       }
                                       finish_rows(b, std::move(rows));
                                   }));
}

void add_arch_lm_block(StudyReport& rep, const StudyConfig& c, const StudyInputs& in) {
    rep.blocks.push_back(run_block(
        "arch_lm.event", "Table 5.2.2",
        fmt::format("ARCH-LM test with {} lags on demeaned returns", c.arch_lm_lags), [&](Block& b) {
            b.data = {{"kind", "arch_lm"}};
            Json rows = Json::array();
            for (const auto& w : event_windows(c)) {
                Json row = {{"series", "returns (" + w.name + ")"}};
                try {
                    const auto r = window_returns(in.spot, w.window, 2);
                    std::vector<double> e(r.values().begin(), r.values().end());
                    double mean = 0.0;
                    for (double v : e) mean += v;
                    mean /= static_cast<double>(e.size());
                    for (double& v : e) v -= mean;
                    row["result"] = arch_lm_test(e, c.arch_lm_lags);
                } catch (const Error& ex) {
                    row["result"] = nullptr;
                    row["error"] = ex.what();
                }
                rows.push_back(std::move(row));
            }
            finish_rows(b, std::move(rows));
        }));
}

// ---------------------------------------------------------------------------
// GARCH / TGARCH

struct WindowFit {
    std::string name;
    std::optional<VolModelFit> fit;
    std::vector<Date> dates;
    std::string error;
};

WindowFit fit_window(const StudyConfig& c, const StudyInputs& in, const NamedWindow& w,
                     const VolModelSpec& spec) {
    WindowFit out;
    out.name = w.name;
    try {
        const auto r = window_returns(in.spot, w.window, 2);
        out.dates.assign(r.dates().begin(), r.dates().end());
        auto f = fit(spec, r.values());
        if (r.size() < c.min_fit_returns) {
            f.warnings.push_back(fmt::format("window has {} returns, below the {} recommended",
                                             r.size(), c.min_fit_returns));
        }
        out.fit = std::move(f);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

double param_or_nan(const VolModelFit& f, std::string_view name) {
    for (std::size_t i = 0; i < f.param_names.size(); ++i) {
        if (f.param_names[i] == name) return f.estimates[i];
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void add_fit_block(StudyReport& rep, const StudyConfig& c, const StudyInputs& in, VolFamily family) {
    const auto spec = c.model(family);
    const std::string fam = to_string(family);
    std::string lower = fam;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    const std::string label = family == VolFamily::tgarch ? "Table 5.2.4" : "Table 5.2.3";
    const std::string title = fmt::format("{}({},{}) before and after the event", fam, spec.p, spec.q);
    rep.blocks.push_back(run_block("fit." + lower, label, title, [&](Block& b) {
        const auto windows = event_windows(c);
        std::vector<WindowFit> fits;
        if (c.parallel) {
            std::vector<std::future<WindowFit>> jobs;
            for (const auto& w : windows) {
                jobs.push_back(std::async(std::launch::async, [&c, &in, w, spec] { return fit_window(c, in, w, spec); }));
            }
            for (auto& j : jobs) fits.push_back(j.get());
        } else {
            for (const auto& w : windows) fits.push_back(fit_window(c, in, w, spec));
        }

        Json wj = Json::array();
        std::string reason;
        for (std::size_t i = 0; i < fits.size(); ++i) {
            const auto& wf = fits[i];
            Json entry = {{"window", window_json(windows[i])}};
            if (!wf.fit) {
                entry["fit"] = nullptr;
                entry["error"] = wf.error;
                if (!reason.empty()) reason += "; ";
                reason += wf.name + ": " + wf.error;
            } else {
                entry["fit"] = *wf.fit;
                if (family == VolFamily::tgarch) {
                    entry["alpha_plus_gamma"] =
                        json_number(param_or_nan(*wf.fit, "alpha[1]") + param_or_nan(*wf.fit, "gamma[1]"));
                }
                const auto grid = symmetric_grid(4.0 * std::sqrt(wf.fit->sigma0_sq), 81);
                const auto nic_name = fmt::format("news_impact_{}_{}.csv", lower, wf.name);
                const auto var_name = fmt::format("variance_{}_{}.csv", lower, wf.name);
                rep.artifacts.push_back({nic_name, news_impact_csv(news_impact_curve(*wf.fit, grid))});
                rep.artifacts.push_back({var_name, variance_path_csv(*wf.fit, wf.dates)});
                entry["news_impact_csv"] = nic_name;
                entry["variance_csv"] = var_name;
            }
            wj.push_back(std::move(entry));
        }
        b.data = {{"kind", "vol_fit"}, {"family", fam}, {"windows", wj}};
        if (fits.size() == 2 && fits[0].fit && fits[1].fit) {
            Json cmp = Json::object();
            for (const auto& name : fits[1].fit->param_names) {
                cmp["delta " + name] =
                    json_number(param_or_nan(*fits[1].fit, name) - param_or_nan(*fits[0].fit, name));
            }
            cmp["delta persistence"] = json_number(fits[1].fit->persistence - fits[0].fit->persistence);
            b.data["comparison"] = cmp;
        }
        if (!reason.empty()) {
            b.status = BlockStatus::failed;
            b.reason = reason;
        }
    }));
}

// ---------------------------------------------------------------------------
// cointegration and causality

struct CointData {
    std::vector<Date> dates;
    std::vector<double> ln_spot;
    std::vector<double> ln_futures;
};

CointData coint_data(const StudyConfig& c, const StudyInputs& in) {
    if (!in.futures) throw Error("a futures file is required");
    const auto s = to_log(window_prices(in.spot, c.coint));
    const auto f = to_log(window_prices(*in.futures, c.coint));
    if (s.empty() || f.empty()) {
        throw Error(fmt::format("no observations in window {}", format_window(c.coint)));
    }
    auto a = align(s, f);
    return {std::move(a.dates), std::move(a.y), std::move(a.x)};
}

std::vector<double> diff(const std::vector<double>& v, double scale = 1.0) {
    std::vector<double> d(v.size() > 0 ? v.size() - 1 : 0);
    for (std::size_t t = 1; t < v.size(); ++t) d[t - 1] = scale * (v[t] - v[t - 1]);
    return d;
}

void add_coint_blocks(StudyReport& rep, const StudyConfig& c, const StudyInputs& in) {
    const std::string no_futures = "no futures file supplied";
    if (!in.futures) {
        rep.blocks.push_back(skipped_block("adf.battery", "Table A.5.3.1", "ADF tests on levels and differences", no_futures));
        rep.blocks.push_back(skipped_block("coint.eg", "Table A.5.3.1", "Engle-Granger cointegrating regression", no_futures));
        rep.blocks.push_back(skipped_block("coint.johansen", "Johansen summary", "Johansen trace and max-eigenvalue tests", no_futures));
        rep.blocks.push_back(skipped_block("ecm.full", "Table A.5.3.6 (I)", "Error-correction model", no_futures));
        rep.blocks.push_back(skipped_block("ecm.pruned", "Table A.5.3.6 (II)", "Error-correction model, insignificant terms removed", no_futures));
        return;
    }
    std::optional<CointData> data;
    std::string data_error;
    try {
        data = coint_data(c, in);
    } catch (const Error& e) {
        data_error = e.what();
    }
    auto need_data = [&]() -> const CointData& {
        if (!data) throw Error(data_error);
        return *data;
    };

    rep.blocks.push_back(run_block("adf.battery", "Table A.5.3.1", "ADF tests on levels and differences", [&](Block& b) {
        const auto& d = need_data();
        b.data = {{"kind", "adf"}, {"window", format_window(c.coint)}};
        Json rows = Json::array();
        const auto det = Deterministic::constant_trend;
        rows.push_back(adf_row("ln(spot)", d.ln_spot, det));
        rows.push_back(adf_row("ln(futures)", d.ln_futures, det));
        rows.push_back(adf_row("spot returns", diff(d.ln_spot, 100.0), det));
        rows.push_back(adf_row("futures returns", diff(d.ln_futures, 100.0), det));
        rows.push_back(adf_row("diff ln(spot)", diff(d.ln_spot), det));
        rows.push_back(adf_row("diff ln(futures)", diff(d.ln_futures), det));
        finish_rows(b, std::move(rows));
    }));

    std::optional<EgResult> eg;
    rep.blocks.push_back(run_block("coint.eg", "Table A.5.3.1", "Engle-Granger cointegrating regression", [&](Block& b) {
        const auto& d = need_data();
        eg = engle_granger(d.ln_spot, d.ln_futures);
        b.data = {{"kind", "engle_granger"},
                  {"y", "ln(spot)"},
                  {"x", "ln(futures)"},
                  {"window", format_window(c.coint)},
                  {"result", *eg}};
    }));

    rep.blocks.push_back(run_block("coint.johansen", "Johansen summary", "Johansen trace and max-eigenvalue tests", [&](Block& b) {
        const auto& d = need_data();
        Matrix z(static_cast<Eigen::Index>(d.ln_spot.size()), 2);
        for (std::size_t t = 0; t < d.ln_spot.size(); ++t) {
            z(static_cast<Eigen::Index>(t), 0) = d.ln_spot[t];
            z(static_cast<Eigen::Index>(t), 1) = d.ln_futures[t];
        }
        b.data = {{"kind", "johansen"}, {"result", johansen(z, c.johansen_lags)}};
    }));

    const bool have_eg = eg.has_value();
    const bool coint = have_eg && eg->cointegrated_at_5pct;
    auto ecm_block = [&](std::string id, std::string label, std::string title, bool pruned) {
        if (!have_eg) {
            rep.blocks.push_back(skipped_block(std::move(id), std::move(label), std::move(title),
                                               "Engle-Granger step failed"));
            return;
        }
        if (!coint) {
            rep.blocks.push_back(skipped_block(std::move(id), std::move(label), std::move(title),
                                               "no cointegration at 5%"));
            return;
        }
        rep.blocks.push_back(run_block(std::move(id), std::move(label), std::move(title), [&](Block& b) {
            const auto& d = need_data();
            const auto f = pruned ? fit_ecm_pruned(d.ln_spot, d.ln_futures, eg->residuals())
                                  : fit_ecm(d.ln_spot, d.ln_futures, eg->residuals(), {true, true});
            b.data = {{"kind", "ecm"}, {"dependent", "diff ln(spot)"}, {"result", f}};
        }));
    };
    ecm_block("ecm.full", "Table A.5.3.6 (I)", "Error-correction model", false);
    ecm_block("ecm.pruned", "Table A.5.3.6 (II)", "Error-correction model, insignificant terms removed", true);
}

void add_granger_block(StudyReport& rep, const StudyConfig& c, const StudyInputs& in) {
    const std::string title = "Granger causality between differenced log prices";
    if (!in.futures) {
        rep.blocks.push_back(skipped_block("granger", "Table 5.4.1", title, "no futures file supplied"));
        return;
    }
    rep.blocks.push_back(run_block("granger", "Table 5.4.1", title, [&](Block& b) {
        const auto d = coint_data(c, in);
        const auto dy = diff(d.ln_spot);
        const auto dx = diff(d.ln_futures);
        const auto rows = granger_scan(dy, dx, c.granger_max_lag, c.parallel);
        std::string csv = "lag,f_x_to_y,p_x_to_y,f_y_to_x,p_y_to_x\n";
        for (const auto& r : rows) {
            csv += fmt::format("{},{:.10g},{:.10g},{:.10g},{:.10g}\n", r.lag, r.f_x_to_y, r.p_x_to_y,
                               r.f_y_to_x, r.p_y_to_x);
        }
        rep.artifacts.push_back({"granger.csv", csv});
        b.data = {{"kind", "granger"},
                  {"y", "diff ln(spot)"},
                  {"x", "diff ln(futures)"},
                  {"window", format_window(c.coint)},
                  {"rows", rows}};
    }));
}

}  // namespace

// ---------------------------------------------------------------------------

Window parse_window(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw Error(fmt::format("window '{}' is not of the form START:END", text));
    }
    Window w{parse_date(text.substr(0, colon)), parse_date(text.substr(colon + 1))};
    if (!(w.start < w.end)) throw Error(fmt::format("window '{}' ends before it starts", text));
    return w;
}

std::string format_window(const Window& w) { return format_date(w.start) + ":" + format_date(w.end); }

void StudyConfig::validate() const {
    for (const auto* w : {&full, &pre, &post, &coint}) {
        if (!(w->start < w->end)) throw Error(fmt::format("window {} is not ordered", format_window(*w)));
    }
    if (pre.end > event_date || event_date > post.start) {
        throw Error(fmt::format("event date {} must lie between the pre window end {} and the post window start {}",
                                format_date(event_date), format_date(pre.end), format_date(post.start)));
    }
    if (p < 1) throw Error("--p must be at least 1");
    if (granger_max_lag < 1) throw Error("--max-lag must be at least 1");
}

VolModelSpec StudyConfig::model(VolFamily f) const {
    VolModelSpec s;
    s.family = f;
    s.p = p;
    s.q = f == VolFamily::arch ? 0 : q;
    s.mean_lags = mean_lags;
    s.constrained = constrained;
    return s.normalized();
}

std::string to_string(BlockStatus s) {
    switch (s) {
    case BlockStatus::ok:
        return "ok";
    case BlockStatus::skipped:
        return "skipped";
    case BlockStatus::failed:
        return "failed";
    }
    return "?";
}

int StudyReport::exit_code() const {
    const bool failed = std::any_of(blocks.begin(), blocks.end(),
                                    [](const Block& b) { return b.status == BlockStatus::failed; });
    return failed ? 2 : 0;
}

Json StudyReport::to_json() const {
    Json blocks_json = Json::array();
    std::vector<std::string> failed;
    for (const auto& b : blocks) {
        blocks_json.push_back({{"id", b.id},
                               {"label", b.label},
                               {"title", b.title},
                               {"status", voltlab::to_string(b.status)},
                               {"reason", b.reason},
                               {"data", b.data}});
        if (b.status == BlockStatus::failed) failed.push_back(b.id);
    }
    return {{"tool", "voltlab"},
            {"version", kToolVersion},
            {"command", command},
            {"status", failed.empty() ? "ok" : "partial"},
            {"failed_blocks", failed},
            {"config", config},
            {"blocks", blocks_json}};
}

StudyInputs load_inputs(const StudyConfig& config) {
    StudyInputs in;
    ParseOptions spot_opts;
    spot_opts.label = "spot";
    in.spot = load_prices(config.spot_file, spot_opts);
    if (config.futures_file) {
        ParseOptions fut_opts;
        fut_opts.label = "futures";
        in.futures = load_prices(*config.futures_file, fut_opts);
    }
    return in;
}

StudyReport cmd_describe(const StudyConfig& config, const StudyInputs& in) {
    auto rep = new_report("describe", config);
    add_describe_blocks(rep, config, in);
    return rep;
}

StudyReport cmd_fit(const StudyConfig& config, const StudyInputs& in, VolFamily family) {
    auto rep = new_report("fit", config);
    add_fit_block(rep, config, in, family);
    return rep;
}

StudyReport cmd_coint(const StudyConfig& config, const StudyInputs& in) {
    if (!in.futures) throw Error("coint needs both --spot and --futures");
    auto rep = new_report("coint", config);
    add_coint_blocks(rep, config, in);
    return rep;
}

StudyReport cmd_granger(const StudyConfig& config, const StudyInputs& in) {
    if (!in.futures) throw Error("granger needs both --spot and --futures");
    auto rep = new_report("granger", config);
    add_granger_block(rep, config, in);
    return rep;
}

StudyReport cmd_report(const StudyConfig& config, const StudyInputs& in) {
    auto rep = new_report("report", config);
    add_describe_blocks(rep, config, in);
    add_adf_blocks(rep, config, in);
    add_arch_lm_block(rep, config, in);
    add_fit_block(rep, config, in, VolFamily::garch);
    add_fit_block(rep, config, in, VolFamily::tgarch);
    add_coint_blocks(rep, config, in);
    add_granger_block(rep, config, in);
    return rep;
}

std::vector<std::filesystem::path> write_report(const StudyReport& report, const std::filesystem::path& dir,
                                                const OutputFormats& formats, std::string_view stem) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto write = [&](const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        out << content;
        if (!out) throw Error("failed writing " + path.string());
        written.push_back(path);
    };
    const Json doc = report.to_json();
    if (formats.json) write(dir / (std::string(stem) + ".json"), doc.dump(2) + "\n");
    if (formats.markdown) write(dir / (std::string(stem) + ".md"), render_markdown(doc));
    if (formats.csv) {
        for (const auto& a : report.artifacts) write(dir / a.filename, a.content);
    }
    return written;
}

PriceSeries simulate_prices(const VolModelSpec& spec, const VolParams& params, std::size_t length,
                            std::size_t burn_in, std::uint64_t seed, Date start, std::string label) {
    auto r = simulate(spec, params, length, burn_in, seed);
    auto dates = business_days(start, length + 1);
    std::vector<Date> rdates(dates.begin() + 1, dates.end());
    ReturnSeries rs(std::move(rdates), std::move(r), label);
    return prices_from_returns(rs, dates.front(), 100.0, std::move(label));
}

PriceSeries simulate_companion(const PriceSeries& base, std::uint64_t seed, double rho, double noise_sd,
                               std::string label) {
    if (!(std::abs(rho) < 1.0)) throw Error("simulate_companion: |rho| must be below 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, noise_sd);
    std::vector<double> values(base.size());
    double u = z(rng) / std::sqrt(1.0 - rho * rho);
    for (std::size_t t = 0; t < base.size(); ++t) {
        if (t > 0) u = rho * u + z(rng);
        values[t] = base[t] * std::exp(u);
    }
    return PriceSeries(std::vector<Date>(base.dates().begin(), base.dates().end()), std::move(values),
                       std::move(label));
}

}  // namespace voltlab
