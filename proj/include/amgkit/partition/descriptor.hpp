#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "amgkit/sparse/csr.hpp"

namespace amgkit {

/// Local indices exchanged with one neighbouring shard, in ascending global order.
struct NeighbourList {
    int shard = 0;
    std::vector<index_t> local_indices;

    bool operator==(const NeighbourList&) const = default;
};

/// How [0, N) is split among shards: contiguous blocks, or explicit owned sets.
class Partition {
public:
    static Partition block(index_t n_global, int n_shards);
    static Partition explicit_sets(index_t n_global, std::vector<std::vector<index_t>> owned);

    index_t n_global() const { return n_global_; }
    int n_shards() const { return static_cast<int>(owned_.size()); }
    /// Sorted owned globals of each shard.
    const std::vector<std::vector<index_t>>& owned() const { return owned_; }

private:
    index_t n_global_ = 0;
    std::vector<std::vector<index_t>> owned_;
};

/// Index space of one shard. Local numbering puts the owned globals first
/// (ascending), followed by the halo globals (ascending).
class Descriptor {
public:
    int shard_id() const { return shard_id_; }
    int n_shards() const { return n_shards_; }
    index_t n_global() const { return n_global_; }
    index_t n_owned() const { return static_cast<index_t>(owned_.size()); }
    index_t n_halo() const { return static_cast<index_t>(halo_.size()); }
    index_t n_local() const { return n_owned() + n_halo(); }
    bool assembled() const { return assembled_; }
    /// Identifies the family of descriptors built together.
    std::uint64_t family() const { return family_; }

    std::span<const index_t> owned_globals() const { return owned_; }
    std::span<const index_t> halo_globals() const { return halo_; }
    /// Owned local indices each neighbour needs from this shard.
    const std::vector<NeighbourList>& sends() const { return sends_; }
    /// Halo local indices this shard receives from each neighbour.
    const std::vector<NeighbourList>& recvs() const { return recvs_; }

    std::optional<index_t> global_to_local(index_t g) const;
    /// Throws std::out_of_range for l outside [0, n_local).
    index_t local_to_global(index_t l) const;

private:
    friend std::vector<std::shared_ptr<const Descriptor>> build_descriptors(const Partition&,
                                                                            const CsrMatrix&);
    int shard_id_ = 0;
    int n_shards_ = 1;
    index_t n_global_ = 0;
    bool assembled_ = false;
    std::uint64_t family_ = 0;
    std::vector<index_t> owned_;
    std::vector<index_t> halo_;
    std::vector<NeighbourList> sends_;
    std::vector<NeighbourList> recvs_;
};

using DescriptorFamily = std::vector<std::shared_ptr<const Descriptor>>;

/// Assembles one descriptor per shard. Halo entries are the non-owned
/// columns referenced by owned rows of the adjacency pattern.
DescriptorFamily build_descriptors(const Partition& partition, const CsrMatrix& adjacency);

}  // namespace amgkit
