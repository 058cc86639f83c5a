#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fol/baselines.hpp"
#include "fol/core_types.hpp"
#include "fol/fol_driver.hpp"
#include "fol/p_player.hpp"
#include "fol/robustness.hpp"
#include "fol/w_player.hpp"

#include <json.hpp>

namespace fol::io {

inline constexpr int kSchemaVersion = 1;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dataset CSV: one row per example, label (-1/+1) first, then d features.
// A header row is detected when the first field of the first row is not a number.
Dataset parse_dataset_csv(const std::string& text);
Dataset read_dataset_csv(const std::filesystem::path& path);
std::string dataset_to_csv(const Dataset& ds, bool header = true);

// Shortest text that parses back to the same double.
std::string format_double(double v);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

// --- JSON ---------------------------------------------------------------

nlohmann::json hypothesis_to_json(const Hypothesis& h, std::string_view kind);
Hypothesis hypothesis_from_json(const nlohmann::json& j);

nlohmann::json ensemble_to_json(const EnsembleHypothesis& ens, std::string_view learner,
                                const std::optional<Hypothesis>& averaged = std::nullopt);
EnsembleHypothesis ensemble_from_json(const nlohmann::json& j);

nlohmann::json weighted_ensemble_to_json(const WeightedEnsemble& ens, std::string_view learner);

// --- metrics --------------------------------------------------------------

// Long-format metric row: one value of one metric at one step.
struct MetricRow {
    std::size_t step = 0;
    double epochs = 0.0;
    std::string metric;
    double value = 0.0;
};

std::vector<MetricRow> metrics_rows(const RunMetrics& metrics);
std::string metrics_csv(std::span<const MetricRow> rows);
std::vector<MetricRow> parse_metrics_csv(const std::string& text);

// {"rows": n, "last": {metric: value at the largest step}}
nlohmann::json summarize(std::span<const MetricRow> rows);

std::string rounds_csv(std::span<const RoundRecord> rounds);
std::string slack_csv(std::span<const double> xi);

}  // namespace fol::io
