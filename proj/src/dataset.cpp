#include "hosim/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace hosim {

namespace {

// Reads one whitespace-trimmed line; skips blank lines at EOF gracefully.
bool next_token_line(std::istream& in, std::string& line, std::int64_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        const auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r\n");
        line = line.substr(b, e - b + 1);
        return true;
    }
    return false;
}

std::int64_t parse_int(const std::string& tok, const char* file, std::int64_t line_no) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(std::string(file) + ":" + std::to_string(line_no) +
                         ": expected an integer, got '" + tok + "'");
    }
    return value;
}

double parse_real(const std::string& tok, const char* file, std::int64_t line_no) {
    try {
        std::size_t pos = 0;
        const double value = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        throw ParseError(std::string(file) + ":" + std::to_string(line_no) +
                         ": expected a number, got '" + tok + "'");
    }
}

} // namespace

SimplexDataset SimplexDataset::from_simplices(std::vector<Simplex> simplices,
                                              std::int64_t num_ids,
                                              std::vector<Label> labels,
                                              std::uint64_t duplicate_nodes_removed) {
    for (auto& s : simplices) {
        std::sort(s.nodes.begin(), s.nodes.end());
        const auto last = std::unique(s.nodes.begin(), s.nodes.end());
        duplicate_nodes_removed += static_cast<std::uint64_t>(s.nodes.end() - last);
        s.nodes.erase(last, s.nodes.end());
        if (s.nodes.empty()) throw DataError("simplex with no nodes");
        if (s.nodes.back() >= num_ids) throw DataError("node id out of range");
    }
    std::stable_sort(simplices.begin(), simplices.end(),
                     [](const Simplex& a, const Simplex& b) { return a.time < b.time; });
    if (labels.empty()) {
        labels.resize(num_ids);
        for (std::int64_t i = 0; i < num_ids; ++i) labels[i] = i;
    }
    SimplexDataset ds;
    ds.simplices_ = std::move(simplices);
    ds.num_ids_ = num_ids;
    ds.labels_ = std::move(labels);
    ds.duplicate_nodes_removed_ = duplicate_nodes_removed;
    return ds;
}

std::vector<bool> SimplexDataset::active_mask() const {
    std::vector<bool> seen(num_ids_, false);
    for (const auto& s : simplices_) {
        for (NodeId u : s.nodes) seen[u] = true;
    }
    return seen;
}

std::int64_t SimplexDataset::count_active_nodes() const {
    const auto seen = active_mask();
    return std::count(seen.begin(), seen.end(), true);
}

SimplexDataset parse_dataset(std::istream& nverts, std::istream& simplices, std::istream& times) {
    std::vector<std::int64_t> sizes;
    std::string line;
    std::int64_t line_no = 0;
    while (next_token_line(nverts, line, line_no)) {
        const std::int64_t k = parse_int(line, "nverts", line_no);
        if (k < 1) {
            throw ParseError("nverts:" + std::to_string(line_no) +
                             ": simplex size must be >= 1, got " + std::to_string(k));
        }
        sizes.push_back(k);
    }

    std::unordered_map<Label, NodeId> remap;
    std::vector<Label> labels;
    std::uint64_t dups = 0;
    std::vector<Simplex> out;
    out.reserve(sizes.size());

    line_no = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        Simplex s;
        s.nodes.reserve(sizes[i]);
        for (std::int64_t j = 0; j < sizes[i]; ++j) {
            if (!next_token_line(simplices, line, line_no)) {
                throw ParseError("simplices: ran out of node ids at simplex " +
                                 std::to_string(i + 1) + " (node " + std::to_string(j + 1) +
                                 " of " + std::to_string(sizes[i]) + ")");
            }
            const Label raw = parse_int(line, "simplices", line_no);
            auto [it, inserted] = remap.try_emplace(raw, static_cast<NodeId>(labels.size()));
            if (inserted) labels.push_back(raw);
            s.nodes.push_back(it->second);
        }
        std::sort(s.nodes.begin(), s.nodes.end());
        const auto last = std::unique(s.nodes.begin(), s.nodes.end());
        dups += static_cast<std::uint64_t>(s.nodes.end() - last);
        s.nodes.erase(last, s.nodes.end());
        out.push_back(std::move(s));
    }
    if (next_token_line(simplices, line, line_no)) {
        throw ParseError("simplices:" + std::to_string(line_no) +
                         ": trailing node id beyond the sizes given in nverts");
    }

    line_no = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!next_token_line(times, line, line_no)) {
            throw ParseError("times: expected " + std::to_string(out.size()) +
                             " timestamps, found " + std::to_string(i));
        }
        out[i].time = parse_real(line, "times", line_no);
    }
    if (next_token_line(times, line, line_no)) {
        throw ParseError("times:" + std::to_string(line_no) + ": more timestamps than simplices");
    }

    const auto n_ids = static_cast<std::int64_t>(labels.size());
    return SimplexDataset::from_simplices(std::move(out), n_ids, std::move(labels), dups);
}

SimplexDataset load_three_file(const std::string& prefix) {
    std::ifstream nv(prefix + "-nverts.txt");
    std::ifstream sx(prefix + "-simplices.txt");
    std::ifstream tm(prefix + "-times.txt");
    if (!nv || !sx || !tm) {
        throw DataError("cannot open dataset files with prefix '" + prefix +
                        "' (need -nverts.txt, -simplices.txt, -times.txt)");
    }
    return parse_dataset(nv, sx, tm);
}

SimplexDataset parse_jsonl(std::istream& in, const std::string& name) {
    std::unordered_map<Label, NodeId> remap;
    std::vector<Label> labels;
    std::uint64_t dups = 0;
    std::vector<Simplex> out;

    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(name + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!rec.is_object() || !rec.contains("nodes") || !rec.contains("time") ||
            !rec["nodes"].is_array()) {
            throw ParseError(name + ":" + std::to_string(line_no) +
                             ": expected {\"nodes\":[...],\"time\":...}");
        }
        Simplex s;
        for (const auto& v : rec["nodes"]) {
            if (!v.is_number_integer()) {
                throw ParseError(name + ":" + std::to_string(line_no) + ": node ids must be integers");
            }
            const Label raw = v.get<Label>();
            auto [it, inserted] = remap.try_emplace(raw, static_cast<NodeId>(labels.size()));
            if (inserted) labels.push_back(raw);
            s.nodes.push_back(it->second);
        }
        if (s.nodes.empty()) {
            throw ParseError(name + ":" + std::to_string(line_no) + ": empty node set");
        }
        s.time = rec["time"].get<double>();
        std::sort(s.nodes.begin(), s.nodes.end());
        const auto last = std::unique(s.nodes.begin(), s.nodes.end());
        dups += static_cast<std::uint64_t>(s.nodes.end() - last);
        s.nodes.erase(last, s.nodes.end());
        out.push_back(std::move(s));
    }

    const auto n_ids = static_cast<std::int64_t>(labels.size());
    return SimplexDataset::from_simplices(std::move(out), n_ids, std::move(labels), dups);
}

SimplexDataset load_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file '" + path + "'");
    return parse_jsonl(in, path);
}

SimplexDataset load_dataset(const std::string& path_or_prefix) {
    if (path_or_prefix.ends_with(".json") || path_or_prefix.ends_with(".jsonl")) {
        return load_jsonl(path_or_prefix);
    }
    return load_three_file(path_or_prefix);
}

namespace {

void write_time(std::ostream& out, double t) {
    // round-trippable without drowning integer timestamps in digits
    if (t == std::floor(t) && std::abs(t) < 1e15) {
        out << static_cast<std::int64_t>(t);
    } else {
        out << std::setprecision(17) << t;
    }
}

// canonical form: labels ascending, independent of the internal remapping
std::vector<Label> sorted_labels(const SimplexDataset& ds, const Simplex& s) {
    std::vector<Label> out;
    out.reserve(s.nodes.size());
    for (NodeId u : s.nodes) out.push_back(ds.label_of(u));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

void write_three_file(const SimplexDataset& ds, const std::string& prefix) {
    std::ofstream nv(prefix + "-nverts.txt");
    std::ofstream sx(prefix + "-simplices.txt");
    std::ofstream tm(prefix + "-times.txt");
    if (!nv || !sx || !tm) throw DataError("cannot write dataset files with prefix '" + prefix + "'");
    for (const auto& s : ds.simplices()) {
        nv << s.nodes.size() << "\n";
        for (Label l : sorted_labels(ds, s)) sx << l << "\n";
        write_time(tm, s.time);
        tm << "\n";
    }
}

void write_jsonl(const SimplexDataset& ds, std::ostream& out) {
    for (const auto& s : ds.simplices()) {
        nlohmann::json rec;
        auto& nodes = rec["nodes"];
        nodes = nlohmann::json::array();
        for (Label l : sorted_labels(ds, s)) nodes.push_back(l);
        rec["time"] = s.time;
        out << rec.dump() << "\n";
    }
}

SimplexDataset filter_max_size(const SimplexDataset& ds, std::size_t max_size) {
    if (max_size < 1) throw DataError("filter_max_size: max_size must be >= 1");
    return ds.filtered([max_size](const Simplex& s) { return s.nodes.size() <= max_size; });
}

SimplexDataset only_size(const SimplexDataset& ds, std::size_t k) {
    return ds.filtered([k](const Simplex& s) { return s.nodes.size() == k; });
}

double percentile_time(const SimplexDataset& ds, double quantile) {
    if (ds.empty()) throw DataError("percentile_time: empty dataset");
    const std::int64_t n = ds.size();
    std::int64_t idx = static_cast<std::int64_t>(std::ceil(quantile * static_cast<double>(n)));
    idx = std::clamp<std::int64_t>(idx, 1, n);
    return ds.simplices()[idx - 1].time; // simplices are time-sorted
}

DatasetSplit temporal_split(const SimplexDataset& ds, double quantile) {
    if (!(quantile > 0.0 && quantile < 1.0)) {
        throw DataError("temporal_split: quantile must be in (0, 1)");
    }
    if (ds.empty()) throw DataError("temporal_split: empty dataset");
    const double t_star = percentile_time(ds, quantile);
    DatasetSplit split;
    split.split_time = t_star;
    split.train = ds.filtered([t_star](const Simplex& s) { return s.time <= t_star; });
    split.test = ds.filtered([t_star](const Simplex& s) { return s.time > t_star; });
    if (split.test.empty()) {
        throw DataError("temporal_split: test set is empty (all simplices share the split time)");
    }
    return split;
}

SimplexDataset prefix_filter(const SimplexDataset& ds, double x_percent) {
    if (!(x_percent > 0.0 && x_percent <= 1.0)) {
        throw DataError("prefix_filter: fraction must be in (0, 1]");
    }
    if (ds.empty()) return ds;
    const double t_star = percentile_time(ds, x_percent);
    return ds.filtered([t_star](const Simplex& s) { return s.time <= t_star; });
}

DatasetStats summary_stats(const SimplexDataset& ds) {
    DatasetStats st;
    st.n_simplices = ds.size();
    st.duplicate_nodes_removed = ds.duplicate_nodes_removed();
    st.n_nodes = ds.count_active_nodes();
    std::set<std::vector<NodeId>> unique;
    for (const auto& s : ds.simplices()) {
        ++st.size_histogram[s.nodes.size()];
        unique.insert(s.nodes);
    }
    st.n_unique_simplices = static_cast<std::int64_t>(unique.size());
    return st;
}

} // namespace hosim
