#include "amgkit/partition/sharded.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

namespace amgkit {

namespace {

std::atomic<std::size_t> exchanges{0};

void check_family(std::span<const ShardedVector> family) {
    if (family.empty()) return;
    const auto& first = family.front().descriptor();
    if (static_cast<int>(family.size()) != first.n_shards()) {
        throw PartitionError("shard family has " + std::to_string(family.size()) +
                             " parts, descriptors expect " + std::to_string(first.n_shards()));
    }
    for (std::size_t s = 0; s < family.size(); ++s) {
        const auto& d = family[s].descriptor();
        if (d.family() != first.family() || d.shard_id() != static_cast<int>(s) || !d.assembled()) {
            throw PartitionError("mismatched shard family at part " + std::to_string(s));
        }
    }
}

}  // namespace

ShardedVector::ShardedVector(std::shared_ptr<const Descriptor> desc)
    : desc_(std::move(desc)), data_(static_cast<std::size_t>(desc_->n_local()), 0.0) {
    halo_fresh_ = desc_->n_halo() == 0;
}

void ShardedVector::poison_halo() {
    for (std::size_t i = owned_size(); i < data_.size(); ++i) {
        data_[i] = std::numeric_limits<double>::quiet_NaN();
    }
    halo_fresh_ = desc_->n_halo() == 0;
}

DistVector make_dist_vector(const DescriptorFamily& family) {
    DistVector v;
    v.reserve(family.size());
    for (const auto& d : family) v.emplace_back(d);
    return v;
}

DistVector scatter(const DescriptorFamily& family, std::span<const double> global) {
    DistVector v = make_dist_vector(family);
    scatter_into(global, v);
    return v;
}

void scatter_into(std::span<const double> global, DistVector& v) {
    for (auto& part : v) {
        const auto globals = part.descriptor().owned_globals();
        auto owned = part.owned_mut();
        for (std::size_t l = 0; l < globals.size(); ++l) owned[l] = global[globals[l]];
    }
}

Vector gather(const DistVector& v) {
    Vector out(v.empty() ? 0 : static_cast<std::size_t>(v.front().descriptor().n_global()), 0.0);
    gather_into(v, out);
    return out;
}

void gather_into(const DistVector& v, std::span<double> global) {
    for (const auto& part : v) {
        const auto globals = part.descriptor().owned_globals();
        const auto owned = part.owned();
        for (std::size_t l = 0; l < globals.size(); ++l) global[globals[l]] = owned[l];
    }
}

DistMatrix shard_matrix(const DescriptorFamily& family, const CsrMatrix& global, Format format,
                        index_t hack_size) {
    DistMatrix out;
    out.reserve(family.size());
    for (const auto& d : family) {
        CsrMatrix local(d->n_owned(), d->n_local());
        std::vector<std::pair<index_t, double>> row;
        for (index_t l = 0; l < d->n_owned(); ++l) {
            const index_t g = d->owned_globals()[l];
            row.clear();
            for (index_t k = global.row_ptr[g]; k < global.row_ptr[g + 1]; ++k) {
                const auto lc = d->global_to_local(global.col_idx[k]);
                if (!lc) {
                    throw PartitionError("shard_matrix: column " +
                                         std::to_string(global.col_idx[k]) +
                                         " is not visible on shard " +
                                         std::to_string(d->shard_id()));
                }
                row.emplace_back(*lc, global.values[k]);
            }
            std::sort(row.begin(), row.end());
            for (const auto& [c, v] : row) {
                local.col_idx.push_back(c);
                local.values.push_back(v);
            }
            local.row_ptr[l + 1] = static_cast<index_t>(local.col_idx.size());
        }
        out.push_back({d, convert(SparseMatrix(std::move(local)), format, hack_size)});
    }
    return out;
}

void halo_exchange(std::span<ShardedVector> family) {
    check_family(family);
    ++exchanges;
    // Pack phase: every owner fills its outgoing buffers.
    std::vector<std::vector<std::vector<double>>> outbox(family.size());
    for (std::size_t s = 0; s < family.size(); ++s) {
        const auto& sends = family[s].descriptor().sends();
        outbox[s].resize(sends.size());
        for (std::size_t n = 0; n < sends.size(); ++n) {
            auto& buf = outbox[s][n];
            buf.reserve(sends[n].local_indices.size());
            for (const index_t l : sends[n].local_indices) buf.push_back(family[s].data_[l]);
        }
    }
    // Unpack phase.
    for (std::size_t s = 0; s < family.size(); ++s) {
        auto& part = family[s];
        for (const auto& recv : part.descriptor().recvs()) {
            const auto& sender_sends = family[recv.shard].descriptor().sends();
            std::size_t n = 0;
            while (sender_sends[n].shard != static_cast<int>(s)) ++n;
            const auto& buf = outbox[recv.shard][n];
            for (std::size_t i = 0; i < recv.local_indices.size(); ++i) {
                part.data_[recv.local_indices[i]] = buf[i];
            }
        }
        part.halo_fresh_ = true;
    }
}

void sharded_spmv(const DistMatrix& a, DistVector& x, DistVector& y) {
    if (a.size() != x.size() || a.size() != y.size()) {
        throw PartitionError("sharded_spmv: shard counts differ");
    }
    halo_exchange(x);
    for (std::size_t s = 0; s < a.size(); ++s) {
        a[s].local_rows.spmv(1.0, x[s].local(), 0.0, y[s].owned_mut());
    }
}

void fused_dots(std::span<const std::pair<const DistVector*, const DistVector*>> pairs,
                std::span<double> out) {
    const std::size_t n_shards = pairs.empty() ? 0 : pairs.front().first->size();
    std::vector<double> partial(pairs.size() * n_shards, 0.0);
    for (std::size_t s = 0; s < n_shards; ++s) {
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto x = (*pairs[p].first)[s].owned();
            const auto y = (*pairs[p].second)[s].owned();
            double sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
            partial[p * n_shards + s] = sum;
        }
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        double total = 0.0;
        for (std::size_t s = 0; s < n_shards; ++s) total += partial[p * n_shards + s];
        out[p] = total;
    }
}

double dot(const DistVector& x, const DistVector& y) {
    const std::pair<const DistVector*, const DistVector*> pair{&x, &y};
    double out = 0.0;
    fused_dots({&pair, 1}, {&out, 1});
    return out;
}

std::size_t halo_exchange_count() { return exchanges.load(); }

}  // namespace amgkit
