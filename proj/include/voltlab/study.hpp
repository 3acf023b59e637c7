#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voltlab/serialize.hpp"
#include "voltlab/series.hpp"
#include "voltlab/volatility.hpp"

namespace voltlab {

struct Window {
    Date start;
    Date end;
};

/// Parses "START:END" with either date format on each side.
Window parse_window(std::string_view text);
std::string format_window(const Window& w);

struct StudyConfig {
    std::filesystem::path spot_file;
    std::optional<std::filesystem::path> futures_file;
    Date event_date{std::chrono::year{2010}, std::chrono::month{4}, std::chrono::day{16}};
    Window full{Date{std::chrono::year{2005}, std::chrono::month{4}, std::chrono::day{8}},
                Date{std::chrono::year{2016}, std::chrono::month{4}, std::chrono::day{8}}};
    Window pre{Date{std::chrono::year{2007}, std::chrono::month{4}, std::chrono::day{16}},
               Date{std::chrono::year{2010}, std::chrono::month{4}, std::chrono::day{16}}};
    Window post{Date{std::chrono::year{2010}, std::chrono::month{4}, std::chrono::day{16}},
                Date{std::chrono::year{2013}, std::chrono::month{4}, std::chrono::day{19}}};
    /// Used by the cointegration and causality blocks.
    Window coint{Date{std::chrono::year{2010}, std::chrono::month{4}, std::chrono::day{16}},
                 Date{std::chrono::year{2016}, std::chrono::month{4}, std::chrono::day{8}}};

    VolFamily family = VolFamily::garch;
    std::size_t p = 1;
    std::size_t q = 1;
    std::vector<std::size_t> mean_lags;
    bool constrained = true;

    std::size_t correlogram_lags = 36;
    std::size_t arch_lm_lags = 3;
    std::size_t johansen_lags = 2;
    std::size_t granger_max_lag = 10;
    std::size_t histogram_bins = 50;
    /// Fewer returns than this in a fit window produces a warning.
    std::size_t min_fit_returns = 250;
    bool parallel = false;

    /// Throws on ill-ordered windows or an event date outside pre.end..post.start.
    void validate() const;
    VolModelSpec model(VolFamily f) const;
};

enum class BlockStatus { ok, skipped, failed };
std::string to_string(BlockStatus s);

/// One unit of the report. `data` carries every number the renderer prints.
struct Block {
    std::string id;
    std::string label;  ///< analogue table in the reference study, e.g. "Table 4.1"
    std::string title;
    BlockStatus status = BlockStatus::ok;
    std::string reason;
    Json data;
};

/// Plot data or other side files written next to the report.
struct Artifact {
    std::string filename;
    std::string content;
};

struct StudyReport {
    std::string command;
    Json config;
    std::vector<Block> blocks;
    std::vector<Artifact> artifacts;

    /// 0 when no block failed, 2 otherwise.
    int exit_code() const;
    Json to_json() const;
};

struct StudyInputs {
    PriceSeries spot;
    std::optional<PriceSeries> futures;
};

StudyInputs load_inputs(const StudyConfig& config);

StudyReport cmd_describe(const StudyConfig& config, const StudyInputs& in);
StudyReport cmd_fit(const StudyConfig& config, const StudyInputs& in, VolFamily family);
StudyReport cmd_coint(const StudyConfig& config, const StudyInputs& in);
StudyReport cmd_granger(const StudyConfig& config, const StudyInputs& in);
/// describe, ADF, ARCH-LM, GARCH, TGARCH, cointegration, Granger, in that order.
StudyReport cmd_report(const StudyConfig& config, const StudyInputs& in);

/// Markdown built only from the JSON document.
std::string render_markdown(const Json& report);

/// "0.1234", or "6.E-08" style below 1e-4.
std::string format_pvalue(double p);
std::string format_stat(double v);

struct OutputFormats {
    bool markdown = true;
    bool json = true;
    bool csv = true;
};

/// Writes <stem>.json, <stem>.md and the CSV artifacts into `dir`.
std::vector<std::filesystem::path> write_report(const StudyReport& report,
                                                const std::filesystem::path& dir,
                                                const OutputFormats& formats, std::string_view stem);

/// Prices 100 * exp(cumsum(r) / 100) on `length + 1` business days from
/// `start`, so the file yields exactly `length` returns.
PriceSeries simulate_prices(const VolModelSpec& spec, const VolParams& params, std::size_t length,
                            std::size_t burn_in, std::uint64_t seed, Date start,
                            std::string label = "simulated");

/// A second price series cointegrated with `base`: ln f = ln p + u with u a
/// stationary AR(1) with coefficient `rho` and innovation s.d. `noise_sd`.
PriceSeries simulate_companion(const PriceSeries& base, std::uint64_t seed, double rho = 0.8,
                               double noise_sd = 0.002, std::string label = "companion");

}  // namespace voltlab
