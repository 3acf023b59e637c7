// Markdown rendering of a report document. Everything printed comes from the
// JSON; no statistic is recomputed here.

#include <cctype>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "voltlab/study.hpp"

namespace voltlab {

std::string format_stat(double v) {
    if (std::isnan(v)) return "n/a";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    const auto s = fmt::format("{:.4f}", v);
    return s == "-0.0000" ? "0.0000" : s;
}

std::string format_pvalue(double p) {
    if (std::isnan(p)) return "n/a";
    if (p > 0.0 && p < 1e-4) {
        int e = static_cast<int>(std::floor(std::log10(p)));
        long m = std::lround(p / std::pow(10.0, e));
        if (m >= 10) {
            m = 1;
            ++e;
        }
        return fmt::format("{}.E{:+03d}", m, e);
    }
    return format_stat(p);
}

namespace {

std::string stat(const Json& j) {
    if (j.is_null()) return "n/a";
    return format_stat(number_from_json(j));
}

std::string pval(const Json& j) {
    if (j.is_null()) return "n/a";
    return format_pvalue(number_from_json(j));
}

std::string count(const Json& j) {
    if (j.is_null()) return "n/a";
    return std::to_string(j.get<long long>());
}

std::string text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

const Json& at(const Json& j, const char* key) {
    static const Json null_json;
    if (!j.is_object()) return null_json;
    auto it = j.find(key);
    return it == j.end() ? null_json : *it;
}

void table_header(std::string& out, std::initializer_list<std::string_view> cols) {
    out += "|";
    for (auto c : cols) out += fmt::format(" {} |", c);
    out += "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i) out += i == 0 ? "---|" : "---:|";
    out += "\n";
}

void table_row(std::string& out, const std::vector<std::string>& cells) {
    out += "|";
    for (const auto& c : cells) out += fmt::format(" {} |", c);
    out += "\n";
}

std::string window_text(const Json& w) {
    if (w.is_string()) return w.get<std::string>();
    return fmt::format("{} ({} to {})", text(at(w, "name")), text(at(w, "start")), text(at(w, "end")));
}

void render_descriptive(std::string& out, const Json& d) {
    const auto& s = at(d, "stats");
    out += fmt::format("Window: {}\n\n", window_text(at(d, "window")));
    table_header(out, {"Statistic", "Value"});
    table_row(out, {"N. obs", count(at(s, "n_obs"))});
    table_row(out, {"Mean", stat(at(s, "mean"))});
    table_row(out, {"Geometric mean rate", stat(at(s, "geo_mean_rate"))});
    table_row(out, {"Std. dev.", stat(at(s, "std_dev"))});
    table_row(out, {"Minimum", stat(at(s, "min"))});
    table_row(out, {"Maximum", stat(at(s, "max"))});
    table_row(out, {"Skewness", stat(at(s, "skewness"))});
    table_row(out, {"Kurtosis", stat(at(s, "kurtosis"))});
    table_row(out, {"Excess kurtosis", stat(at(s, "kurtosis_excess"))});
    if (at(s, "degenerate").is_boolean() && at(s, "degenerate").get<bool>()) {
        out += "\nDegenerate window: returns have zero variance.\n";
    }
    if (at(d, "histogram_csv").is_string()) {
        out += fmt::format("\nHistogram data: `{}`\n", text(at(d, "histogram_csv")));
    }
}

void render_correlogram(std::string& out, const Json& d) {
    const auto& s = at(d, "summary");
    out += fmt::format("Window: {}, {} returns, lags 1 to {}\n\n", window_text(at(d, "window")),
                       count(at(d, "n_obs")), count(at(s, "max_lag")));
    table_header(out, {"", "AC", "PAC"});
    const auto& ac = at(s, "ac");
    const auto& pac = at(s, "pac");
    const std::pair<const char*, const char*> rows[] = {
        {"Minimum", "min"},   {"Maximum", "max"},  {"Mean", "mean"},
        {"Std. dev.", "std_dev"}, {"Skewness", "skewness"}, {"Excess kurtosis", "kurtosis_excess"}};
    for (const auto& [name, key] : rows) table_row(out, {name, stat(at(ac, key)), stat(at(pac, key))});
    out += fmt::format("\nQ-stat at lag {}: {} (Prob. {}). Chi2 (5%, df: {}): {}\n", count(at(s, "max_lag")),
                       stat(at(s, "q_stat")), pval(at(s, "q_pvalue")), count(at(s, "chi2_df")),
                       stat(at(s, "chi2_crit_5pct")));
    if (at(d, "correlogram_csv").is_string()) {
        out += fmt::format("\nPer-lag values: `{}`\n", text(at(d, "correlogram_csv")));
    }
}

void render_adf(std::string& out, const Json& d) {
    if (at(d, "window").is_string()) out += fmt::format("Window: {}\n\n", text(at(d, "window")));
    table_header(out, {"Series", "Terms", "t-Statistic", "Prob.", "Lags", "N", "1%", "5%", "10%", "Verdict"});
    for (const auto& row : at(d, "rows")) {
        const auto& r = at(row, "result");
        if (r.is_null()) {
            table_row(out, {text(at(row, "series")), "n/a", "n/a", "n/a", "n/a", "n/a", "n/a", "n/a", "n/a",
                            "error: " + text(at(row, "error"))});
            continue;
        }
        const auto& cv = at(r, "critical_values");
        const bool stationary = at(r, "stationary_at_5pct").get<bool>();
        table_row(out, {text(at(row, "series")), text(at(r, "deterministic")), stat(at(r, "statistic")), pval(at(r, "p_value")),
                        count(at(r, "lags")), count(at(r, "n_obs")), stat(at(cv, "1%")), stat(at(cv, "5%")),
                        stat(at(cv, "10%")), stationary ? "stationary" : "unit root"});
    }
}

void render_arch_lm(std::string& out, const Json& d) {
    table_header(out, {"Series", "Lags", "F-statistic", "Prob. F", "Obs*R-squared", "Prob. Chi-Square"});
    for (const auto& row : at(d, "rows")) {
        const auto& r = at(row, "result");
        if (r.is_null()) {
            table_row(out, {text(at(row, "series")), "n/a", "n/a", "n/a", "n/a", "error: " + text(at(row, "error"))});
            continue;
        }
        table_row(out, {text(at(row, "series")), count(at(r, "lags")), stat(at(r, "f_stat")),
                        pval(at(r, "f_pvalue")), stat(at(r, "lm_stat")), pval(at(r, "lm_pvalue"))});
    }
}

void render_vol_fit(std::string& out, const Json& d) {
    for (const auto& w : at(d, "windows")) {
        out += fmt::format("### {}\n\n", window_text(at(w, "window")));
        const auto& f = at(w, "fit");
        if (f.is_null()) {
            out += fmt::format("Fit failed: {}\n\n", text(at(w, "error")));
            continue;
        }
        table_header(out, {"Parameter", "Estimate", "Std. error", "Prob."});
        for (const auto& p : at(f, "params")) {
            table_row(out, {text(at(p, "name")), stat(at(p, "estimate")), stat(at(p, "std_error")),
                            pval(at(p, "p_value"))});
        }
        if (w.contains("alpha_plus_gamma")) table_row(out, {"alpha+gamma", stat(at(w, "alpha_plus_gamma")), "", ""});
        out += fmt::format("\nLog-likelihood {}, persistence {}, {} returns ({} in the likelihood), ",
                           stat(at(f, "log_likelihood")), stat(at(f, "persistence")), count(at(f, "n_obs")),
                           count(at(f, "n_effective")));
        out += fmt::format("converged: {}, gradient norm {}.\n",
                           at(f, "converged").get<bool>() ? "yes" : "no", pval(at(f, "gradient_norm")));
        for (const auto& msg : at(f, "warnings")) out += fmt::format("\n- warning: {}\n", text(msg));
        if (w.contains("news_impact_csv")) {
            out += fmt::format("\nNews impact curve: `{}`; conditional variance: `{}`\n",
                               text(at(w, "news_impact_csv")), text(at(w, "variance_csv")));
        }
        out += "\n";
    }
    const auto& cmp = at(d, "comparison");
    if (cmp.is_object()) {
        out += "### Change after the event\n\n";
        table_header(out, {"Quantity", "Post minus pre"});
        for (const auto& [k, v] : cmp.items()) table_row(out, {k, stat(v)});
    }
}

void render_coef_table(std::string& out, const Json& rows) {
    table_header(out, {"Variable", "Coefficient", "Std. Error", "t-Statistic", "Prob."});
    for (const auto& r : rows) {
        table_row(out, {text(at(r, "name")), stat(at(r, "coef")), stat(at(r, "std_error")), stat(at(r, "t_stat")),
                        pval(at(r, "p_value"))});
    }
}

void render_eg(std::string& out, const Json& d) {
    const auto& r = at(d, "result");
    out += fmt::format("Window: {}\n\n", text(at(d, "window")));
    out += fmt::format("{} = {} + {} {}\n\n", text(at(d, "y")), stat(at(r, "intercept")), stat(at(r, "slope")),
                       text(at(d, "x")));
    render_coef_table(out, at(r, "regression"));
    const auto& adf = at(r, "residual_adf");
    const auto& cv = at(adf, "critical_values");
    out += fmt::format("\nR-squared {}, {} observations.\n\n", stat(at(r, "r_squared")), count(at(r, "n_obs")));
    out += fmt::format("Residual ADF (no deterministic terms, {} lags): {} (Prob. {}); critical values 1% {}, 5% {}, 10% {}.\n\n",
                       count(at(adf, "lags")), stat(at(adf, "statistic")), pval(at(adf, "p_value")),
                       stat(at(cv, "1%")), stat(at(cv, "5%")), stat(at(cv, "10%")));
    if (at(r, "degenerate").get<bool>()) out += "Residuals are identically zero.\n\n";
    out += at(r, "cointegrated_at_5pct").get<bool>() ? "Residuals are stationary: cointegrated at 5%.\n"
                                                     : "Residuals have a unit root: no cointegration at 5%.\n";
}

void render_johansen(std::string& out, const Json& d) {
    const auto& r = at(d, "result");
    std::string det = at(r, "deterministic").get<std::string>();
    if (!det.empty()) det[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(det[0])));
    out += fmt::format("{}, {} lagged differences, {} observations.\n\n", det, count(at(r, "var_lags")),
                       count(at(r, "n_obs")));
    table_header(out, {"Rank <=", "Eigenvalue", "Trace", "5% crit.", "Max-eigen", "5% crit."});
    for (const auto& row : at(r, "ranks")) {
        table_row(out, {count(at(row, "rank")), stat(at(row, "eigenvalue")), stat(at(row, "trace")),
                        stat(at(row, "trace_crit_5pct")), stat(at(row, "max_eig")),
                        stat(at(row, "max_eig_crit_5pct"))});
    }
    const auto rank = at(r, "selected_rank").get<long long>();
    out += fmt::format("\nThe trace test indicates {} cointegrating equation{} at the 0.05 level.\n", rank,
                       rank == 1 ? "" : "s");
}

void render_ecm(std::string& out, const Json& d) {
    const auto& r = at(d, "result");
    out += fmt::format("Dependent variable: {}\n\n", text(at(d, "dependent")));
    render_coef_table(out, at(r, "coefficients"));
    out += fmt::format("\nR-squared {}, {} observations. Adjustment coefficient on u(-1): {} (pi = {}).\n",
                       stat(at(r, "r_squared")), count(at(r, "n_obs")), stat(at(r, "adjustment_coef")),
                       stat(at(r, "pi")));
}

void render_granger(std::string& out, const Json& d) {
    out += fmt::format("Y = {}, X = {}, window {}\n\n", text(at(d, "y")), text(at(d, "x")), text(at(d, "window")));
    table_header(out, {"Lags", "F (X does not cause Y)", "Prob.", "F (Y does not cause X)", "Prob."});
    for (const auto& r : at(d, "rows")) {
        table_row(out, {count(at(r, "lag")), stat(at(r, "f_x_to_y")), pval(at(r, "p_x_to_y")),
                        stat(at(r, "f_y_to_x")), pval(at(r, "p_y_to_x"))});
    }
}

}  // namespace

std::string render_markdown(const Json& report) {
    std::string out;
    out += fmt::format("# voltlab {} report\n\n", text(at(report, "command")));
    out += fmt::format("Version {}. Status: {}.\n\n", text(at(report, "version")), text(at(report, "status")));
    const auto& cfg = at(report, "config");
    if (cfg.is_object()) {
        table_header(out, {"Setting", "Value"});
        for (const auto& [k, v] : cfg.items()) table_row(out, {k, v.is_null() ? "none" : text(v)});
        out += "\n";
    }
    for (const auto& b : at(report, "blocks")) {
        out += fmt::format("## {}: {}\n\n", text(at(b, "label")), text(at(b, "title")));
        const auto status = text(at(b, "status"));
        if (status == "skipped") {
            out += fmt::format("Skipped: {}\n\n", text(at(b, "reason")));
            continue;
        }
        if (status == "failed") out += fmt::format("**Failed:** {}\n\n", text(at(b, "reason")));
        const auto& d = at(b, "data");
        const auto kind = at(d, "kind").is_string() ? at(d, "kind").get<std::string>() : std::string{};
        if (kind == "descriptive") render_descriptive(out, d);
        else if (kind == "correlogram") render_correlogram(out, d);
        else if (kind == "adf") render_adf(out, d);
        else if (kind == "arch_lm") render_arch_lm(out, d);
        else if (kind == "vol_fit") render_vol_fit(out, d);
        else if (kind == "engle_granger") render_eg(out, d);
        else if (kind == "johansen") render_johansen(out, d);
        else if (kind == "ecm") render_ecm(out, d);
        else if (kind == "granger") render_granger(out, d);
        out += "\n";
    }
    return out;
}

}  // namespace voltlab
