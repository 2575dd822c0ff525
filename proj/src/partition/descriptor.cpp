#include "amgkit/partition/descriptor.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

namespace amgkit {

namespace {
std::atomic<std::uint64_t> next_family{1};
}

Partition Partition::block(index_t n_global, int n_shards) {
    if (n_shards < 1) throw PartitionError("partition: need at least one shard");
    if (n_global < 0) throw PartitionError("partition: negative index space");
    Partition p;
    p.n_global_ = n_global;
    p.owned_.resize(n_shards);
    for (int s = 0; s < n_shards; ++s) {
        const index_t first = n_global * s / n_shards;
        const index_t last = n_global * (s + 1) / n_shards;
        auto& owned = p.owned_[s];
        owned.resize(static_cast<std::size_t>(last - first));
        for (index_t g = first; g < last; ++g) owned[g - first] = g;
    }
    return p;
}

Partition Partition::explicit_sets(index_t n_global, std::vector<std::vector<index_t>> owned) {
    if (owned.empty()) throw PartitionError("partition: need at least one shard");
    std::vector<int> owner(static_cast<std::size_t>(n_global), -1);
    for (std::size_t s = 0; s < owned.size(); ++s) {
        auto& set = owned[s];
        std::sort(set.begin(), set.end());
        for (const index_t g : set) {
            if (g < 0 || g >= n_global) {
                throw PartitionError("partition: index " + std::to_string(g) + " outside [0, " +
                                     std::to_string(n_global) + ")");
            }
            if (owner[g] != -1) {
                throw PartitionError("partition: index " + std::to_string(g) +
                                     " owned by shards " + std::to_string(owner[g]) + " and " +
                                     std::to_string(s));
            }
            owner[g] = static_cast<int>(s);
        }
    }
    const auto gap = std::find(owner.begin(), owner.end(), -1);
    if (gap != owner.end()) {
        throw PartitionError("partition: index " + std::to_string(gap - owner.begin()) +
                             " is owned by no shard");
    }
    Partition p;
    p.n_global_ = n_global;
    p.owned_ = std::move(owned);
    return p;
}

std::optional<index_t> Descriptor::global_to_local(index_t g) const {
    auto it = std::lower_bound(owned_.begin(), owned_.end(), g);
    if (it != owned_.end() && *it == g) return static_cast<index_t>(it - owned_.begin());
    it = std::lower_bound(halo_.begin(), halo_.end(), g);
    if (it != halo_.end() && *it == g) return n_owned() + static_cast<index_t>(it - halo_.begin());
    return std::nullopt;
}

index_t Descriptor::local_to_global(index_t l) const {
    if (l < 0 || l >= n_local()) {
        throw std::out_of_range("local index " + std::to_string(l) + " outside shard " +
                                std::to_string(shard_id_));
    }
    return l < n_owned() ? owned_[l] : halo_[l - n_owned()];
}

DescriptorFamily build_descriptors(const Partition& partition, const CsrMatrix& adjacency) {
    const index_t n = partition.n_global();
    if (adjacency.n_rows != n || adjacency.n_cols != n) {
        throw PartitionError("build_descriptors: adjacency must be square of size " +
                             std::to_string(n));
    }
    const int n_shards = partition.n_shards();
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < n_shards; ++s) {
        for (const index_t g : partition.owned()[s]) owner[g] = s;
    }

    const std::uint64_t family = next_family.fetch_add(1);
    std::vector<Descriptor> shards(n_shards);
    for (int s = 0; s < n_shards; ++s) {
        Descriptor& d = shards[s];
        d.shard_id_ = s;
        d.n_shards_ = n_shards;
        d.n_global_ = n;
        d.family_ = family;
        d.owned_ = partition.owned()[s];
        for (const index_t row : d.owned_) {
            for (index_t k = adjacency.row_ptr[row]; k < adjacency.row_ptr[row + 1]; ++k) {
                const index_t col = adjacency.col_idx[k];
                if (owner[col] != s) d.halo_.push_back(col);
            }
        }
        std::sort(d.halo_.begin(), d.halo_.end());
        d.halo_.erase(std::unique(d.halo_.begin(), d.halo_.end()), d.halo_.end());

        // Halo globals grouped by owner; within a group they stay ascending.
        for (index_t h = 0; h < d.n_halo(); ++h) {
            const int from = owner[d.halo_[h]];
            auto it = std::find_if(d.recvs_.begin(), d.recvs_.end(),
                                   [&](const NeighbourList& nl) { return nl.shard == from; });
            if (it == d.recvs_.end()) {
                d.recvs_.push_back({from, {}});
                it = d.recvs_.end() - 1;
            }
            it->local_indices.push_back(d.n_owned() + h);
        }
        std::sort(d.recvs_.begin(), d.recvs_.end(),
                  [](const NeighbourList& a, const NeighbourList& b) { return a.shard < b.shard; });
    }

    // A send list mirrors the receiver's recv list, translated to the owner's locals.
    for (int t = 0; t < n_shards; ++t) {
        for (const NeighbourList& recv : shards[t].recvs_) {
            Descriptor& owner_desc = shards[recv.shard];
            NeighbourList send{t, {}};
            send.local_indices.reserve(recv.local_indices.size());
            for (const index_t l : recv.local_indices) {
                const index_t g = shards[t].local_to_global(l);
                send.local_indices.push_back(*owner_desc.global_to_local(g));
            }
            owner_desc.sends_.push_back(std::move(send));
        }
    }

    DescriptorFamily out;
    out.reserve(n_shards);
    for (auto& d : shards) {
        std::sort(d.sends_.begin(), d.sends_.end(),
                  [](const NeighbourList& a, const NeighbourList& b) { return a.shard < b.shard; });
        d.assembled_ = true;
        out.push_back(std::make_shared<const Descriptor>(std::move(d)));
    }
    return out;
}

}  // namespace amgkit
