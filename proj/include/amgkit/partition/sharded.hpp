#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "amgkit/partition/descriptor.hpp"
#include "amgkit/sparse/matrix.hpp"

namespace amgkit {

/// One shard's slice of a distributed vector: owned values followed by
/// halo copies, in the descriptor's local numbering.
class ShardedVector {
public:
    ShardedVector() = default;
    explicit ShardedVector(std::shared_ptr<const Descriptor> desc);

    const Descriptor& descriptor() const { return *desc_; }
    const std::shared_ptr<const Descriptor>& descriptor_ptr() const { return desc_; }

    std::span<const double> owned() const { return {data_.data(), owned_size()}; }
    /// Writable owned view; marks the halo stale.
    std::span<double> owned_mut() {
        halo_fresh_ = false;
        return {data_.data(), owned_size()};
    }
    std::span<const double> halo() const { return std::span<const double>(data_).subspan(owned_size()); }
    std::span<const double> local() const { return data_; }

    bool halo_fresh() const { return halo_fresh_; }
    void mark_stale() { halo_fresh_ = false; }

    /// Test hook: overwrite every halo slot with NaN and mark it stale.
    void poison_halo();

private:
    friend void halo_exchange(std::span<ShardedVector> family);
    std::size_t owned_size() const { return static_cast<std::size_t>(desc_->n_owned()); }

    std::shared_ptr<const Descriptor> desc_;
    std::vector<double> data_;
    bool halo_fresh_ = false;
};

using DistVector = std::vector<ShardedVector>;

/// Owned rows of a global matrix with columns renumbered to local indices.
struct ShardedMatrix {
    std::shared_ptr<const Descriptor> descriptor;
    SparseMatrix local_rows;
};

using DistMatrix = std::vector<ShardedMatrix>;

DistVector make_dist_vector(const DescriptorFamily& family);
/// Splits a global vector into owned parts (halo left stale).
DistVector scatter(const DescriptorFamily& family, std::span<const double> global);
void scatter_into(std::span<const double> global, DistVector& v);
Vector gather(const DistVector& v);
void gather_into(const DistVector& v, std::span<double> global);

DistMatrix shard_matrix(const DescriptorFamily& family, const CsrMatrix& global,
                        Format format = Format::Csr, index_t hack_size = kDefaultHackSize);

/// Copies every owner value into the matching halo slots of its neighbours.
/// All sends are packed before any receive is unpacked, so the result does
/// not depend on processing order.
void halo_exchange(std::span<ShardedVector> family);

/// y_owned <- A x on every shard; performs exactly one halo exchange on x.
void sharded_spmv(const DistMatrix& a, DistVector& x, DistVector& y);

/// Dot products of several vector pairs in a single collective. Partial sums
/// are formed per shard and combined in ascending shard order.
void fused_dots(std::span<const std::pair<const DistVector*, const DistVector*>> pairs,
                std::span<double> out);
double dot(const DistVector& x, const DistVector& y);

/// Counts halo exchanges performed through halo_exchange (for tests).
std::size_t halo_exchange_count();

}  // namespace amgkit
