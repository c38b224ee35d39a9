#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hosim/errors.hpp"

namespace hosim {

// Dense internal node id. Original labels live in SimplexDataset::labels().
using NodeId = std::uint32_t;
using Label = std::int64_t;

struct Simplex {
    std::vector<NodeId> nodes; // sorted, no duplicates
    double time = 0.0;
};

struct DatasetStats {
    std::int64_t n_nodes = 0; // distinct nodes appearing in some simplex
    std::int64_t n_simplices = 0;
    std::int64_t n_unique_simplices = 0; // distinct node-sets, timestamps ignored
    std::uint64_t duplicate_nodes_removed = 0;
    std::map<std::size_t, std::int64_t> size_histogram;
};

// A time-sorted sequence of node-set interactions. Immutable after
// construction; safe for concurrent reads. Datasets derived by filtering or
// splitting keep the parent's id space and label table, so node ids stay
// comparable across the pieces.
class SimplexDataset {
public:
    SimplexDataset() = default;

    // `labels` maps internal id -> original label; empty means identity.
    static SimplexDataset from_simplices(std::vector<Simplex> simplices,
                                         std::int64_t num_ids,
                                         std::vector<Label> labels = {},
                                         std::uint64_t duplicate_nodes_removed = 0);

    const std::vector<Simplex>& simplices() const { return simplices_; }
    std::int64_t size() const { return static_cast<std::int64_t>(simplices_.size()); }
    bool empty() const { return simplices_.empty(); }

    // Size of the id space: every node id is < num_ids(). For freshly parsed
    // datasets this equals the number of distinct nodes; for derived datasets
    // some ids may no longer appear.
    std::int64_t num_ids() const { return num_ids_; }

    std::int64_t count_active_nodes() const;
    std::vector<bool> active_mask() const;

    const std::vector<Label>& labels() const { return labels_; }
    Label label_of(NodeId u) const { return labels_[u]; }

    std::uint64_t duplicate_nodes_removed() const { return duplicate_nodes_removed_; }

    // Same simplices restricted by predicate; id space and labels preserved.
    template <typename Pred>
    SimplexDataset filtered(Pred&& keep) const {
        std::vector<Simplex> out;
        for (const auto& s : simplices_) {
            if (keep(s)) out.push_back(s);
        }
        SimplexDataset ds;
        ds.simplices_ = std::move(out);
        ds.num_ids_ = num_ids_;
        ds.labels_ = labels_;
        ds.duplicate_nodes_removed_ = duplicate_nodes_removed_;
        return ds;
    }

private:
    std::vector<Simplex> simplices_;
    std::int64_t num_ids_ = 0;
    std::vector<Label> labels_;
    std::uint64_t duplicate_nodes_removed_ = 0;
};

struct DatasetSplit {
    SimplexDataset train;
    SimplexDataset test;
    double split_time = 0.0;
};

// Three-stream text format: line k of `nverts` gives |S_k|, `simplices`
// lists node labels one per line in simplex order, `times` gives t_k.
SimplexDataset parse_dataset(std::istream& nverts, std::istream& simplices, std::istream& times);

// <prefix>-nverts.txt / <prefix>-simplices.txt / <prefix>-times.txt
SimplexDataset load_three_file(const std::string& prefix);

// One JSON object per line: {"nodes":[...],"time":...}
SimplexDataset parse_jsonl(std::istream& in, const std::string& name = "<jsonl>");
SimplexDataset load_jsonl(const std::string& path);

// Dispatch: "*.json"/"*.jsonl" -> JSON lines, otherwise three-file prefix.
SimplexDataset load_dataset(const std::string& path_or_prefix);

void write_three_file(const SimplexDataset& ds, const std::string& prefix);
void write_jsonl(const SimplexDataset& ds, std::ostream& out);

SimplexDataset filter_max_size(const SimplexDataset& ds, std::size_t max_size = 25);
SimplexDataset only_size(const SimplexDataset& ds, std::size_t k);

// split_time is the smallest timestamp t such that at least
// ceil(quantile * N) simplices have time <= t; ties go to train.
double percentile_time(const SimplexDataset& ds, double quantile);
DatasetSplit temporal_split(const SimplexDataset& ds, double quantile = 0.8);
SimplexDataset prefix_filter(const SimplexDataset& ds, double x_percent);

DatasetStats summary_stats(const SimplexDataset& ds);

} // namespace hosim
