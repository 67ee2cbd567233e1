// Copyright (c) 2026 foalkit contributors
// Licensed under the Apache License, Version 2.0.

#include "foalkit/scheduler.hpp"

#include <algorithm>
#include <utility>

#include "foalkit/error.hpp"
#include "foalkit/imageops.hpp"
#include "foalkit/random.hpp"

namespace foalkit {

SampleIndex index_sample(std::string id, const LabelMap& labels, const CategoryConfig& cfg) {
    SampleIndex entry;
    entry.id = std::move(id);
    for (CategoryId category : cfg.soc_set) {
        const BinaryMask m = category_mask(labels, category);
        for (const ConnectedRegion& region : connected_components(m, category)) {
            entry.soc_area = std::max(entry.soc_area, region.area);
        }
    }
    entry.has_soc = entry.soc_area > cfg.area_threshold;
    return entry;
}

SocSets build_soc_sets(const std::vector<SampleIndex>& index) {
    if (index.empty()) {
        throw EmptyDataset("build_soc_sets: empty sample index");
    }
    SocSets sets;
    for (const SampleIndex& entry : index) {
        sets.all_ids.push_back(entry.id);
        if (entry.has_soc) {
            sets.soc_ids.push_back(entry.id);
        }
    }
    return sets;
}

SchedulerState::SchedulerState(SocSets sets_a, SocSets sets_b, std::uint64_t seed) {
    if (sets_a.all_ids.empty() || sets_b.all_ids.empty()) {
        throw EmptyDataset("scheduler: each domain needs at least one sample");
    }
    a_.sets = std::move(sets_a);
    b_.sets = std::move(sets_b);
    a_.rng.seed(seed);
    b_.rng.seed(seed ^ 0x9E3779B97F4A7C15ULL);
}

SchedulerState::DomainState& SchedulerState::state(Domain domain) {
    return domain == Domain::A ? a_ : b_;
}

const SocSets& SchedulerState::sets(Domain domain) const {
    return domain == Domain::A ? a_.sets : b_.sets;
}

Draw SchedulerState::next_sample(Domain domain) {
    DomainState& st = state(domain);
    Draw draw;
    draw.soc_branch = st.initialized && st.z_soc_prev > st.z_global_prev;
    draw.from_soc_pool = draw.soc_branch && !st.sets.soc_ids.empty();
    const std::vector<std::string>& pool = draw.from_soc_pool ? st.sets.soc_ids : st.sets.all_ids;
    draw.id = pool[uniform_index(st.rng, pool.size())];
    return draw;
}

void SchedulerState::update(Domain domain, double z_soc, double z_global) {
    if (z_soc < 0.0 || z_global < 0.0) {
        throw NegativeLoss("scheduler: loss signals must be non-negative");
    }
    DomainState& st = state(domain);
    st.z_soc_prev = z_soc;
    st.z_global_prev = z_global;
    st.initialized = true;
    ++iteration_;
}

}  // namespace foalkit
