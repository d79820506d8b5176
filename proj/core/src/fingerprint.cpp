// SPDX-License-Identifier: Apache-2.0
//
// beamloc: beam-RSRP fingerprint positioning toolkit
// Copyright (C) 2026 The beamloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "beamloc/fingerprint.hpp"

#include "beamloc/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace beamloc
{

std::vector<BeamReading> SampleSet::readings(const FingerprintSample &sample) const
{
    std::vector<BeamReading> out;
    for (std::size_t i = 0; i < beams.size(); ++i)
    {
        if (sample.rsrp[i] > noise_floor)
        {
            out.push_back({beams[i].cell_id, beams[i].beam_id, sample.rsrp[i]});
        }
    }
    return out;
}

int select_serving(std::span<const BeamReading> readings)
{
    if (readings.empty())
    {
        throw FeatureError("select_serving: no readings");
    }
    const BeamReading *best = &readings.front();
    for (const auto &r : readings)
    {
        if (r.rsrp > best->rsrp ||
            (r.rsrp == best->rsrp && BeamKey{r.cell_id, r.beam_id} < BeamKey{best->cell_id, best->beam_id}))
        {
            best = &r;
        }
    }
    return best->cell_id;
}

namespace
{

// Contiguous ranges of the sorted beam table, one per cell.
struct CellIndex
{
    struct Range
    {
        int cell_id;
        std::size_t begin;
        std::size_t end;
    };
    std::vector<Range> ranges;

    explicit CellIndex(std::span<const BeamKey> beams)
    {
        for (std::size_t i = 0; i < beams.size(); ++i)
        {
            if (ranges.empty() || ranges.back().cell_id != beams[i].cell_id)
            {
                ranges.push_back({beams[i].cell_id, i, i + 1});
            }
            else
            {
                ranges.back().end = i + 1;
            }
        }
    }

    const Range *find(int cell_id) const
    {
        auto it = std::lower_bound(ranges.begin(), ranges.end(), cell_id,
                                   [](const Range &r, int id) { return r.cell_id < id; });
        return (it != ranges.end() && it->cell_id == cell_id) ? &*it : nullptr;
    }
};

} // namespace

SampleSet generate_samples(const Scenario &scenario, const PropagationConfig &config, unsigned jobs)
{
    const auto locations = enumerate_locations(scenario);
    if (locations.empty())
    {
        throw FeatureError("generate_samples: the location grid is empty");
    }

    SampleSet set;
    set.noise_floor = config.noise_floor;
    set.scenario_seed = scenario.rng_seed;

    // scenario order -> sorted key order
    std::vector<BeamKey> scenario_keys;
    std::vector<std::size_t> site_of_beam;
    for (std::size_t s = 0; s < scenario.sites.size(); ++s)
    {
        for (const auto &sector : scenario.sites[s].sectors)
        {
            for (const auto &beam : sector.beams)
            {
                scenario_keys.push_back({sector.cell_id, beam.beam_id});
                site_of_beam.push_back(s);
            }
        }
    }
    std::vector<std::size_t> order(scenario_keys.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scenario_keys[a] < scenario_keys[b]; });
    for (std::size_t i = 0; i < order.size(); ++i)
    {
        set.beams.push_back(scenario_keys[order[i]]);
        if (i > 0 && !(set.beams[i - 1] < set.beams[i]))
        {
            throw FeatureError("generate_samples: duplicate (cell, beam) key in scenario");
        }
    }

    std::vector<std::optional<FingerprintSample>> slots(locations.size());
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
        {
            const auto m = measure_location(locations[i], scenario, config);
            FingerprintSample s;
            s.location = locations[i];
            s.rsrp.resize(order.size());
            std::size_t best = order.size();
            for (std::size_t k = 0; k < order.size(); ++k)
            {
                const double v = m.rsrp[order[k]];
                s.rsrp[k] = v;
                // keys ascend, so a strict comparison keeps the lowest key on ties
                if (v > config.noise_floor && (best == order.size() || v > s.rsrp[best]))
                {
                    best = k;
                }
            }
            if (best == order.size())
            {
                continue;
            }
            s.serving_cell = set.beams[best].cell_id;
            s.los_to_serving = m.los_to_site[site_of_beam[order[best]]];
            slots[i] = std::move(s);
        }
    };

    const unsigned n_jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(locations.size())));
    if (n_jobs == 1)
    {
        worker(0, locations.size());
    }
    else
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (locations.size() + n_jobs - 1) / n_jobs;
        for (unsigned t = 0; t < n_jobs; ++t)
        {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(locations.size(), begin + chunk);
            if (begin < end)
            {
                pool.emplace_back(worker, begin, end);
            }
        }
    }

    set.samples.reserve(slots.size());
    for (auto &slot : slots)
    {
        if (slot)
        {
            set.samples.push_back(std::move(*slot));
        }
        else
        {
            ++set.undetected_locations;
        }
    }
    return set;
}

SampleSet filter_los(SampleSet samples)
{
    std::erase_if(samples.samples, [](const FingerprintSample &s) { return !s.los_to_serving; });
    return samples;
}

double los_fraction(const SampleSet &samples)
{
    if (samples.samples.empty())
    {
        return 0.0;
    }
    const auto n = std::count_if(samples.samples.begin(), samples.samples.end(),
                                 [](const FingerprintSample &s) { return s.los_to_serving; });
    return static_cast<double>(n) / static_cast<double>(samples.samples.size());
}

std::string FieldDescriptor::name() const
{
    std::string base;
    const std::string k = std::to_string(slot);
    switch (kind)
    {
    case FieldKind::serving_beam_id:
        base = "serving_beam_id_" + k;
        break;
    case FieldKind::serving_rsrp:
        base = "serving_rsrp_" + k;
        break;
    case FieldKind::serving_cell_id:
        base = "serving_cell_id";
        break;
    case FieldKind::neighbor_cell_id:
        base = "neighbor_" + k + "_cell_id";
        break;
    case FieldKind::neighbor_beam_id:
        base = "neighbor_" + k + "_beam_id";
        break;
    case FieldKind::neighbor_rsrp:
        base = "neighbor_" + k + "_rsrp";
        break;
    }
    if (one_hot_id >= 0)
    {
        base += "=" + std::to_string(one_hot_id);
    }
    return base;
}

IdDomain IdDomain::from_beams(std::span<const BeamKey> beams)
{
    IdDomain d;
    int max_beam = -1;
    for (const auto &k : beams)
    {
        if (d.cell_ids.empty() || d.cell_ids.back() != k.cell_id)
        {
            d.cell_ids.push_back(k.cell_id);
        }
        max_beam = std::max(max_beam, k.beam_id);
    }
    d.beams_per_cell = max_beam + 1;
    return d;
}

std::vector<FieldDescriptor> feature_layout(const FeatureConfig &config, const IdDomain &domain)
{
    if (config.n_serving_beams < 1)
    {
        throw FeatureError("n_serving_beams must be >= 1");
    }
    if (config.n_neighbor_cells < 0)
    {
        throw FeatureError("n_neighbor_cells must be >= 0");
    }
    const bool one_hot = config.id_encoding == IdEncoding::one_hot;
    std::vector<FieldDescriptor> layout;
    auto push_beam_id = [&](FieldKind kind, int slot) {
        if (!one_hot)
        {
            layout.push_back({kind, slot, -1});
            return;
        }
        for (int b = 0; b < domain.beams_per_cell; ++b)
        {
            layout.push_back({kind, slot, b});
        }
    };
    auto push_cell_id = [&](FieldKind kind, int slot) {
        if (!one_hot)
        {
            layout.push_back({kind, slot, -1});
            return;
        }
        for (int c : domain.cell_ids)
        {
            layout.push_back({kind, slot, c});
        }
    };

    for (int i = 1; i <= config.n_serving_beams; ++i)
    {
        push_beam_id(FieldKind::serving_beam_id, i);
    }
    for (int i = 1; i <= config.n_serving_beams; ++i)
    {
        layout.push_back({FieldKind::serving_rsrp, i, -1});
    }
    if (config.include_serving_cell_id)
    {
        push_cell_id(FieldKind::serving_cell_id, 0);
    }
    for (int i = 1; i <= config.n_neighbor_cells; ++i)
    {
        push_cell_id(FieldKind::neighbor_cell_id, i);
        push_beam_id(FieldKind::neighbor_beam_id, i);
        layout.push_back({FieldKind::neighbor_rsrp, i, -1});
    }
    return layout;
}

std::vector<std::string> layout_names(std::span<const FieldDescriptor> layout)
{
    std::vector<std::string> names;
    names.reserve(layout.size());
    for (const auto &f : layout)
    {
        names.push_back(f.name());
    }
    return names;
}

namespace
{

struct RankedBeam
{
    int cell_id;
    int beam_id;
    double rsrp;
};

bool stronger(const RankedBeam &a, const RankedBeam &b)
{
    if (a.rsrp != b.rsrp)
    {
        return a.rsrp > b.rsrp;
    }
    if (a.cell_id != b.cell_id)
    {
        return a.cell_id < b.cell_id;
    }
    return a.beam_id < b.beam_id;
}

Extraction extract_with_index(const SampleSet &set, const CellIndex &index, const FingerprintSample &sample,
                              const FeatureConfig &config,
                              const std::shared_ptr<const std::vector<FieldDescriptor>> &layout)
{
    Extraction out;
    const auto ns = static_cast<std::size_t>(config.n_serving_beams);
    const auto nn = static_cast<std::size_t>(config.n_neighbor_cells);

    std::vector<RankedBeam> serving;
    std::vector<RankedBeam> neighbors;
    for (const auto &range : index.ranges)
    {
        if (range.cell_id == sample.serving_cell)
        {
            for (std::size_t i = range.begin; i < range.end; ++i)
            {
                if (sample.rsrp[i] > set.noise_floor)
                {
                    serving.push_back({range.cell_id, set.beams[i].beam_id, sample.rsrp[i]});
                }
            }
        }
        else if (nn > 0)
        {
            std::optional<RankedBeam> best;
            for (std::size_t i = range.begin; i < range.end; ++i)
            {
                if (sample.rsrp[i] > set.noise_floor)
                {
                    RankedBeam rb{range.cell_id, set.beams[i].beam_id, sample.rsrp[i]};
                    if (!best || stronger(rb, *best))
                    {
                        best = rb;
                    }
                }
            }
            if (best)
            {
                neighbors.push_back(*best);
            }
        }
    }
    if (serving.size() < ns)
    {
        out.reason = ExclusionReason::too_few_serving_beams;
        return out;
    }
    if (neighbors.size() < nn)
    {
        out.reason = ExclusionReason::too_few_neighbor_cells;
        return out;
    }
    std::partial_sort(serving.begin(), serving.begin() + static_cast<std::ptrdiff_t>(ns), serving.end(), stronger);
    std::partial_sort(neighbors.begin(), neighbors.begin() + static_cast<std::ptrdiff_t>(nn), neighbors.end(),
                      stronger);

    FeatureVector fv;
    fv.layout = layout;
    fv.values.reserve(layout->size());
    auto id_value = [](int id, int one_hot_id) {
        if (one_hot_id < 0)
        {
            return static_cast<double>(id);
        }
        return id == one_hot_id ? 1.0 : 0.0;
    };
    for (const auto &f : *layout)
    {
        const auto slot = static_cast<std::size_t>(f.slot);
        switch (f.kind)
        {
        case FieldKind::serving_beam_id:
            fv.values.push_back(id_value(serving[slot - 1].beam_id, f.one_hot_id));
            break;
        case FieldKind::serving_rsrp:
            fv.values.push_back(serving[slot - 1].rsrp);
            break;
        case FieldKind::serving_cell_id:
            fv.values.push_back(id_value(sample.serving_cell, f.one_hot_id));
            break;
        case FieldKind::neighbor_cell_id:
            fv.values.push_back(id_value(neighbors[slot - 1].cell_id, f.one_hot_id));
            break;
        case FieldKind::neighbor_beam_id:
            fv.values.push_back(id_value(neighbors[slot - 1].beam_id, f.one_hot_id));
            break;
        case FieldKind::neighbor_rsrp:
            fv.values.push_back(neighbors[slot - 1].rsrp);
            break;
        }
    }
    out.vector = std::move(fv);
    return out;
}

} // namespace

Extraction extract_features(const SampleSet &set, const FingerprintSample &sample, const FeatureConfig &config,
                            const std::shared_ptr<const std::vector<FieldDescriptor>> &layout, const IdDomain &)
{
    return extract_with_index(set, CellIndex(set.beams), sample, config, layout);
}

Extraction extract_features(const SampleSet &set, const FingerprintSample &sample, const FeatureConfig &config)
{
    const auto domain = IdDomain::from_beams(set.beams);
    auto layout = std::make_shared<const std::vector<FieldDescriptor>>(feature_layout(config, domain));
    return extract_with_index(set, CellIndex(set.beams), sample, config, layout);
}

Eigen::VectorXd NormStats::divisor() const
{
    return std.unaryExpr([](double s) { return s == 0.0 ? 1.0 : s; });
}

NormStats NormStats::compute(const Eigen::MatrixXd &rows)
{
    NormStats st;
    const auto n = static_cast<double>(rows.rows());
    st.mean = rows.colwise().sum().transpose() / n;
    st.std.resize(rows.cols());
    for (Eigen::Index c = 0; c < rows.cols(); ++c)
    {
        const double var = (rows.col(c).array() - st.mean(c)).square().sum() / n;
        st.std(c) = std::sqrt(var);
    }
    return st;
}

Eigen::MatrixXd Dataset::select_features(std::span<const std::size_t> rows) const
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), features.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        out.row(static_cast<Eigen::Index>(i)) = features.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

Eigen::MatrixXd Dataset::select_labels(std::span<const std::size_t> rows) const
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), labels.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        out.row(static_cast<Eigen::Index>(i)) = labels.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

namespace
{

struct ExtractedRows
{
    std::vector<std::vector<double>> values;
    std::vector<Point2> labels;
    std::vector<int> serving;
    std::vector<std::size_t> sample_ids;
    ExclusionCounts excluded;
};

ExtractedRows extract_all(const SampleSet &samples, const FeatureConfig &config,
                          const std::shared_ptr<const std::vector<FieldDescriptor>> &layout)
{
    const CellIndex index(samples.beams);
    ExtractedRows rows;
    for (std::size_t i = 0; i < samples.samples.size(); ++i)
    {
        const auto &s = samples.samples[i];
        auto ex = extract_with_index(samples, index, s, config, layout);
        switch (ex.reason)
        {
        case ExclusionReason::too_few_serving_beams:
            ++rows.excluded.too_few_serving_beams;
            continue;
        case ExclusionReason::too_few_neighbor_cells:
            ++rows.excluded.too_few_neighbor_cells;
            continue;
        case ExclusionReason::none:
            break;
        }
        rows.values.push_back(std::move(ex.vector->values));
        rows.labels.push_back(s.location);
        rows.serving.push_back(s.serving_cell);
        rows.sample_ids.push_back(i);
    }
    return rows;
}

void split_rows(std::size_t n, double fraction, std::uint64_t seed, std::vector<std::size_t> &train,
                std::vector<std::size_t> &test)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    rng.shuffle(perm);
    auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
    train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
}

// Builds a dataset from a subset of extracted rows with the given split.
Dataset assemble(const ExtractedRows &rows, std::span<const std::size_t> members, const FeatureConfig &config,
                 std::vector<FieldDescriptor> layout, double fraction, std::uint64_t seed,
                 std::uint64_t scenario_seed)
{
    Dataset ds;
    ds.config = config;
    ds.layout = std::move(layout);
    ds.split_fraction = fraction;
    ds.split_seed = seed;
    ds.scenario_seed = scenario_seed;
    const auto n = static_cast<Eigen::Index>(members.size());
    const auto d = static_cast<Eigen::Index>(ds.layout.size());
    ds.features.resize(n, d);
    ds.labels.resize(n, 2);
    for (Eigen::Index r = 0; r < n; ++r)
    {
        const auto src = members[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < d; ++c)
        {
            ds.features(r, c) = rows.values[src][static_cast<std::size_t>(c)];
        }
        ds.labels(r, 0) = rows.labels[src].x;
        ds.labels(r, 1) = rows.labels[src].y;
        ds.serving_cells.push_back(rows.serving[src]);
        ds.sample_ids.push_back(rows.sample_ids[src]);
    }
    split_rows(members.size(), fraction, seed, ds.train_rows, ds.test_rows);
    ds.norm = NormStats::compute(ds.select_features(ds.train_rows));
    return ds;
}

void check_fraction(double f)
{
    if (!(f > 0.0 && f < 1.0))
    {
        throw FeatureError("split_fraction must lie in (0, 1)");
    }
}

} // namespace

Dataset build_dataset(const SampleSet &samples, const FeatureConfig &config, double split_fraction,
                      std::uint64_t seed)
{
    check_fraction(split_fraction);
    const auto domain = IdDomain::from_beams(samples.beams);
    auto layout = std::make_shared<const std::vector<FieldDescriptor>>(feature_layout(config, domain));
    auto rows = extract_all(samples, config, layout);
    if (rows.values.size() < 10)
    {
        throw FeatureError("build_dataset: fewer than 10 usable samples (" + std::to_string(rows.values.size()) +
                           ")");
    }
    std::vector<std::size_t> all(rows.values.size());
    std::iota(all.begin(), all.end(), 0);
    auto ds = assemble(rows, all, config, *layout, split_fraction, seed, samples.scenario_seed);
    ds.excluded = rows.excluded;
    return ds;
}

Eigen::MatrixXd normalize(const NormStats &stats, const Eigen::MatrixXd &rows)
{
    if (rows.cols() != stats.size())
    {
        throw FeatureError("normalize: column count " + std::to_string(rows.cols()) + " does not match statistics (" +
                           std::to_string(stats.size()) + ")");
    }
    const Eigen::RowVectorXd mean = stats.mean.transpose();
    const Eigen::RowVectorXd inv = stats.divisor().cwiseInverse().transpose();
    return (rows.rowwise() - mean).array().rowwise() * inv.array();
}

Eigen::MatrixXd denormalize(const NormStats &stats, const Eigen::MatrixXd &rows)
{
    if (rows.cols() != stats.size())
    {
        throw FeatureError("denormalize: column count mismatch");
    }
    const Eigen::RowVectorXd mean = stats.mean.transpose();
    const Eigen::RowVectorXd div = stats.divisor().transpose();
    return (rows.array().rowwise() * div.array()).matrix().rowwise() + mean;
}

CellPartition partition_by_cell(const SampleSet &samples, FeatureConfig config, double split_fraction,
                                std::uint64_t seed, std::size_t min_rows)
{
    check_fraction(split_fraction);
    config.include_serving_cell_id = false;
    const auto domain = IdDomain::from_beams(samples.beams);
    auto layout = std::make_shared<const std::vector<FieldDescriptor>>(feature_layout(config, domain));
    const auto rows = extract_all(samples, config, layout);

    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < rows.serving.size(); ++i)
    {
        groups[rows.serving[i]].push_back(i);
    }
    CellPartition out;
    for (const auto &[cell, members] : groups)
    {
        if (members.size() < std::max<std::size_t>(min_rows, 2))
        {
            out.skipped.emplace_back(cell, members.size());
            continue;
        }
        auto ds = assemble(rows, members, config, *layout, split_fraction,
                           splitmix64(seed ^ static_cast<std::uint64_t>(cell)), samples.scenario_seed);
        out.cells.emplace(cell, std::move(ds));
    }
    return out;
}

CellPartition partition_by_cell(const Dataset &pooled, std::size_t min_rows)
{
    std::vector<Eigen::Index> keep;
    std::vector<FieldDescriptor> layout;
    for (std::size_t c = 0; c < pooled.layout.size(); ++c)
    {
        if (pooled.layout[c].kind != FieldKind::serving_cell_id)
        {
            keep.push_back(static_cast<Eigen::Index>(c));
            layout.push_back(pooled.layout[c]);
        }
    }
    std::vector<bool> is_test(static_cast<std::size_t>(pooled.rows()), false);
    for (auto r : pooled.test_rows)
    {
        is_test[r] = true;
    }
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < pooled.serving_cells.size(); ++i)
    {
        groups[pooled.serving_cells[i]].push_back(i);
    }

    CellPartition out;
    for (const auto &[cell, members] : groups)
    {
        const auto n_train = static_cast<std::size_t>(
            std::count_if(members.begin(), members.end(), [&](std::size_t r) { return !is_test[r]; }));
        if (members.size() < min_rows || n_train == 0)
        {
            out.skipped.emplace_back(cell, members.size());
            continue;
        }
        Dataset ds;
        ds.config = pooled.config;
        ds.config.include_serving_cell_id = false;
        ds.layout = layout;
        ds.scenario_seed = pooled.scenario_seed;
        ds.split_seed = pooled.split_seed;
        ds.split_fraction = pooled.split_fraction;
        const auto n = static_cast<Eigen::Index>(members.size());
        ds.features.resize(n, static_cast<Eigen::Index>(keep.size()));
        ds.labels.resize(n, 2);
        for (Eigen::Index r = 0; r < n; ++r)
        {
            const auto src = members[static_cast<std::size_t>(r)];
            for (std::size_t c = 0; c < keep.size(); ++c)
            {
                ds.features(r, static_cast<Eigen::Index>(c)) = pooled.features(static_cast<Eigen::Index>(src), keep[c]);
            }
            ds.labels.row(r) = pooled.labels.row(static_cast<Eigen::Index>(src));
            ds.serving_cells.push_back(cell);
            ds.sample_ids.push_back(pooled.sample_ids[src]);
            (is_test[src] ? ds.test_rows : ds.train_rows).push_back(static_cast<std::size_t>(r));
        }
        ds.norm = NormStats::compute(ds.select_features(ds.train_rows));
        out.cells.emplace(cell, std::move(ds));
    }
    return out;
}

std::string to_string(IdEncoding encoding)
{
    return encoding == IdEncoding::numeric ? "numeric" : "one_hot";
}

IdEncoding id_encoding_from_string(const std::string &name)
{
    if (name == "numeric")
    {
        return IdEncoding::numeric;
    }
    if (name == "one_hot")
    {
        return IdEncoding::one_hot;
    }
    throw FeatureError("unknown id encoding '" + name + "'");
}

nlohmann::json to_json(const FeatureConfig &config)
{
    return {{"name", config.name},
            {"n_serving_beams", config.n_serving_beams},
            {"n_neighbor_cells", config.n_neighbor_cells},
            {"include_serving_cell_id", config.include_serving_cell_id},
            {"id_encoding", to_string(config.id_encoding)}};
}

FeatureConfig feature_config_from_json(const nlohmann::json &j)
{
    FeatureConfig c;
    c.name = j.at("name").get<std::string>();
    c.n_serving_beams = j.at("n_serving_beams").get<int>();
    c.n_neighbor_cells = j.at("n_neighbor_cells").get<int>();
    c.include_serving_cell_id = j.at("include_serving_cell_id").get<bool>();
    c.id_encoding = id_encoding_from_string(j.at("id_encoding").get<std::string>());
    return c;
}

} // namespace beamloc
