#include "fol/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace fol::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::size_t parse_size(std::string_view s, std::size_t line) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(s) + "'");
    }
    return v;
}

template <class Fn>
void for_each_line(const std::string& text, Fn&& fn) {
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        ++line_no;
        const std::string_view line(text.data() + start,
                                    (end == std::string::npos ? text.size() : end) - start);
        fn(line_no, trim(line));
        if (end == std::string::npos) break;
        start = end + 1;
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Dataset parse_dataset_csv(const std::string& text) {
    std::size_t d = 0;
    std::vector<double> x;
    std::vector<int> y;
    bool first = true;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (line.empty()) return;
        const auto fields = split(line);
        if (first) {
            first = false;
            if (!parse_number(fields.front())) return;  // header
        }
        if (fields.size() < 2) throw ParseError(line_no, "expected a label and at least one feature");
        if (d == 0) d = fields.size() - 1;
        if (fields.size() - 1 != d) {
            throw ParseError(line_no, "expected " + std::to_string(d) + " features, got " +
                                          std::to_string(fields.size() - 1));
        }
        const auto label = parse_number(fields[0]);
        if (!label || (*label != 1.0 && *label != -1.0)) {
            throw ParseError(line_no, "label must be -1 or +1, got '" + std::string(fields[0]) + "'");
        }
        y.push_back(static_cast<int>(*label));
        for (std::size_t j = 1; j < fields.size(); ++j) {
            const auto v = parse_number(fields[j]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError(line_no, "bad feature value '" + std::string(fields[j]) + "'");
            }
            x.push_back(*v);
        }
    });
    if (y.empty()) throw ParseError(0, "dataset has no examples");
    return Dataset(d, std::move(x), std::move(y));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dataset read_dataset_csv(const std::filesystem::path& path) { return parse_dataset_csv(read_file(path)); }

std::string dataset_to_csv(const Dataset& ds, bool header) {
    std::string out;
    if (header) {
        out += "label";
        for (std::size_t j = 0; j < ds.dimension(); ++j) out += ",x" + std::to_string(j);
        out += '\n';
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out += ds.label(i) > 0 ? "1" : "-1";
        for (double v : ds.features(i)) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

nlohmann::json hypothesis_to_json(const Hypothesis& h, std::string_view kind) {
    return {{"schema_version", kSchemaVersion},
            {"kind", std::string(kind)},
            {"d", h.dimension()},
            {"weights", h.weights}};
}

Hypothesis hypothesis_from_json(const nlohmann::json& j) {
    Hypothesis h{j.at("weights").get<std::vector<double>>()};
    if (j.contains("d") && j.at("d").get<std::size_t>() != h.dimension()) {
        throw std::invalid_argument("hypothesis JSON: d does not match weights");
    }
    return h;
}

nlohmann::json ensemble_to_json(const EnsembleHypothesis& ens, std::string_view learner,
                                const std::optional<Hypothesis>& averaged) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& h : ens.members) members.push_back(h.weights);
    nlohmann::json j = {{"schema_version", kSchemaVersion},
                        {"type", "ensemble"},
                        {"kind", std::string(learner)},
                        {"mode", std::string(to_string(ens.mode))},
                        {"d", ens.dimension()},
                        {"k", ens.size()},
                        {"members", members}};
    if (averaged) j["averaged"] = hypothesis_to_json(*averaged, learner);
    return j;
}

EnsembleHypothesis ensemble_from_json(const nlohmann::json& j) {
    EnsembleHypothesis ens;
    ens.mode = parse_ensemble_mode(j.at("mode").get<std::string>());
    for (const auto& w : j.at("members")) ens.members.push_back(Hypothesis{w.get<std::vector<double>>()});
    return ens;
}

nlohmann::json weighted_ensemble_to_json(const WeightedEnsemble& ens, std::string_view learner) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& h : ens.members) members.push_back(h.weights);
    return {{"schema_version", kSchemaVersion},
            {"type", "weighted-ensemble"},
            {"kind", std::string(learner)},
            {"d", ens.members.empty() ? 0 : ens.members.front().dimension()},
            {"alphas", ens.alphas},
            {"members", members}};
}

std::vector<MetricRow> metrics_rows(const RunMetrics& metrics) {
    std::vector<MetricRow> rows;
    for (const auto& c : metrics.checkpoints) {
        rows.push_back({c.step, c.epochs, "current_lmax", c.current_lmax});
        rows.push_back({c.step, c.epochs, "current_lavg", c.current_lavg});
        rows.push_back({c.step, c.epochs, "current_mistakes", static_cast<double>(c.current_mistakes)});
        if (c.ensemble) {
            rows.push_back({c.step, c.epochs, "ensemble_size", static_cast<double>(c.ensemble->size)});
            rows.push_back({c.step, c.epochs, "ensemble_lmax", c.ensemble->lmax});
            rows.push_back({c.step, c.epochs, "ensemble_lavg", c.ensemble->lavg});
            rows.push_back({c.step, c.epochs, "ensemble_mistakes", static_cast<double>(c.ensemble->mistakes)});
        }
    }
    const auto& f = metrics.final;
    const std::size_t s = f.rounds;
    const double e = f.epochs;
    rows.push_back({s, e, "final_ensemble_lmax", f.ensemble_lmax});
    rows.push_back({s, e, "final_ensemble_lavg", f.ensemble_lavg});
    rows.push_back({s, e, "final_ensemble_mistakes", static_cast<double>(f.ensemble_mistakes)});
    rows.push_back({s, e, "final_last_lmax", f.last_lmax});
    rows.push_back({s, e, "final_last_lavg", f.last_lavg});
    rows.push_back({s, e, "final_last_mistakes", static_cast<double>(f.last_mistakes)});
    rows.push_back({s, e, "final_cumulative_loss", f.cumulative_loss});
    if (f.rounds_to_consistency) {
        rows.push_back({s, e, "final_rounds_to_consistency", static_cast<double>(*f.rounds_to_consistency)});
    }
    if (f.last_iterate_consistent_at) {
        rows.push_back({s, e, "final_last_iterate_consistent_at", static_cast<double>(*f.last_iterate_consistent_at)});
    }
    if (metrics.regret) {
        rows.push_back({s, e, "final_regret_bound", metrics.regret->bound});
        rows.push_back({s, e, "final_regret_max_violation", metrics.regret->max_violation});
    }
    return rows;
}

std::string metrics_csv(std::span<const MetricRow> rows) {
    std::string out = "step,epochs,metric,value\n";
    for (const auto& r : rows) {
        out += std::to_string(r.step) + ',' + format_double(r.epochs) + ',' + r.metric + ',' +
               format_double(r.value) + '\n';
    }
    return out;
}

std::vector<MetricRow> parse_metrics_csv(const std::string& text) {
    std::vector<MetricRow> rows;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (line.empty() || line_no == 1) return;
        const auto f = split(line);
        if (f.size() != 4) throw ParseError(line_no, "expected 4 columns");
        const auto epochs = parse_number(f[1]);
        const auto value = parse_number(f[3]);
        if (!epochs || !value) throw ParseError(line_no, "bad numeric field");
        rows.push_back({parse_size(f[0], line_no), *epochs, std::string(f[2]), *value});
    });
    return rows;
}

nlohmann::json summarize(std::span<const MetricRow> rows) {
    // Rows are written in step order; the last occurrence of a metric wins.
    nlohmann::json last = nlohmann::json::object();
    std::size_t max_step = 0;
    for (const auto& r : rows) {
        last[r.metric] = r.value;
        max_step = std::max(max_step, r.step);
    }
    return {{"rows", rows.size()}, {"max_step", max_step}, {"last", last}};
}

std::string rounds_csv(std::span<const RoundRecord> rounds) {
    std::string out = "t,i_t,p_it,loss\n";
    for (const auto& r : rounds) {
        out += std::to_string(r.t) + ',' + std::to_string(r.index) + ',' + format_double(r.probability) +
               ',' + format_double(r.loss) + '\n';
    }
    return out;
}

std::string slack_csv(std::span<const double> xi) {
    std::string out = "index,slack\n";
    for (std::size_t i = 0; i < xi.size(); ++i) out += std::to_string(i) + ',' + format_double(xi[i]) + '\n';
    return out;
}

}  // namespace fol::io
