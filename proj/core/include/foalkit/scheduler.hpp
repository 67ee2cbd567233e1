// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "foalkit/image.hpp"
#include "foalkit/oamix.hpp"

namespace foalkit {

enum class Domain { A, B };

struct SampleIndex {
    std::string id;
    std::string label_path;
    std::string image_path;
    bool has_soc = false;
    long long soc_area = 0;  // largest small-object-category region, pixels
};

/// Scans a label map for small-object regions. has_soc is true when some
/// connected SOC region has area strictly above cfg.area_threshold.
SampleIndex index_sample(std::string id, const LabelMap& labels, const CategoryConfig& cfg);

struct SocSets {
    std::vector<std::string> soc_ids;
    std::vector<std::string> all_ids;
};

/// soc_ids = entries flagged has_soc, all_ids = every entry, input order
/// preserved. Throws EmptyDataset on an empty index.
SocSets build_soc_sets(const std::vector<SampleIndex>& index);

struct Draw {
    std::string id;
    bool soc_branch = false;    // previous-iteration comparison chose the SOC pool
    bool from_soc_pool = false; // actually drawn from it (false when that pool is empty)
};

/// Per-domain feedback sampler. Each domain keeps the previous iteration's
/// SOC appearance loss and global reconstruction loss; a draw uses the SOC
/// pool when z_soc_prev > z_global_prev (strictly), the full pool otherwise
/// and before the first update. Draws are deterministic in (seed, update
/// sequence); the two domains use independent RNG streams. Single writer:
/// callers serialize access.
class SchedulerState {
  public:
    SchedulerState(SocSets sets_a, SocSets sets_b, std::uint64_t seed);

    Draw next_sample(Domain domain);

    /// Stores this iteration's signals for the domain's next draw.
    /// Throws NegativeLoss when either value is negative.
    void update(Domain domain, double z_soc, double z_global);

    long long iteration() const { return iteration_; }
    const SocSets& sets(Domain domain) const;

  private:
    struct DomainState {
        SocSets sets;
        std::mt19937_64 rng;
        double z_soc_prev = 0.0;
        double z_global_prev = 0.0;
        bool initialized = false;
    };

    DomainState& state(Domain domain);

    DomainState a_;
    DomainState b_;
    long long iteration_ = 0;
};

}  // namespace foalkit
