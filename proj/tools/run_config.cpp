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

#include "run_config.hpp"

#include "beamloc/io.hpp"
#include "beamloc/random.hpp"

#include <yaml-cpp/yaml.h>

#include <set>

namespace beamloc::app
{

namespace
{

// Strict view over one mapping: every key must be consumed, so typos surface
// as errors naming the section and key.
class Section
{
  public:
    Section(YAML::Node node, std::string path) : m_node(std::move(node)), m_path(std::move(path))
    {
        if (m_node && !m_node.IsNull() && !m_node.IsMap())
        {
            throw ConfigError("section '" + m_path + "' must be a mapping");
        }
    }

    bool has(const std::string &key) const { return m_node && m_node[key]; }

    template <typename T>
    T get(const std::string &key, const T &fallback)
    {
        m_seen.insert(key);
        if (!has(key))
        {
            return fallback;
        }
        return convert<T>(m_node[key], key);
    }

    template <typename T>
    T require(const std::string &key)
    {
        m_seen.insert(key);
        if (!has(key))
        {
            throw ConfigError("missing required key '" + qualified(key) + "'");
        }
        return convert<T>(m_node[key], key);
    }

    Section child(const std::string &key)
    {
        m_seen.insert(key);
        return Section(has(key) ? m_node[key] : YAML::Node(), qualified(key));
    }

    YAML::Node raw(const std::string &key)
    {
        m_seen.insert(key);
        return has(key) ? m_node[key] : YAML::Node();
    }

    void finish() const
    {
        if (!m_node || m_node.IsNull())
        {
            return;
        }
        for (const auto &kv : m_node)
        {
            const auto key = kv.first.as<std::string>();
            if (!m_seen.count(key))
            {
                throw ConfigError("unknown key '" + qualified(key) + "'");
            }
        }
    }

    std::string qualified(const std::string &key) const { return m_path.empty() ? key : m_path + "." + key; }

  private:
    template <typename T>
    T convert(const YAML::Node &n, const std::string &key) const
    {
        try
        {
            return n.as<T>();
        }
        catch (const YAML::Exception &)
        {
            throw ConfigError("key '" + qualified(key) + "' has an invalid value");
        }
    }

    YAML::Node m_node;
    std::string m_path;
    std::set<std::string> m_seen;
};

void require_that(bool ok, const Section &s, const std::string &key, const std::string &what)
{
    if (!ok)
    {
        throw ConfigError("key '" + s.qualified(key) + "' " + what);
    }
}

void parse_scenario(Section s, ScenarioConfig &c)
{
    c.area_width = s.get("area_width", c.area_width);
    c.area_height = s.get("area_height", c.area_height);
    c.grid_resolution = s.get("grid_resolution", c.grid_resolution);
    require_that(c.grid_resolution > 0.0, s, "grid_resolution", "must be positive");
    c.carrier_frequency_ghz = s.get("carrier_frequency_ghz", c.carrier_frequency_ghz);
    c.tx_power = s.get("tx_power_dbm", c.tx_power);
    c.mechanical_downtilt = s.get("mechanical_downtilt_deg", c.mechanical_downtilt);

    auto sites = s.child("sites");
    c.sites.rows = sites.get("rows", c.sites.rows);
    c.sites.columns = sites.get("columns", c.sites.columns);
    if (sites.has("origin"))
    {
        auto o = sites.get<std::vector<double>>("origin", {});
        require_that(o.size() == 2, sites, "origin", "must be [x, y]");
        c.sites.origin = {o[0], o[1]};
    }
    c.sites.spacing_x = sites.get("spacing_x", c.sites.spacing_x);
    c.sites.spacing_y = sites.get("spacing_y", c.sites.spacing_y);
    c.sites.height = sites.get("height", c.sites.height);
    c.sites.sector_azimuths = sites.get("sector_azimuths", c.sites.sector_azimuths);
    sites.finish();

    auto beams = s.child("beams");
    c.beams.count = beams.get("count", c.beams.count);
    c.beams.elevation_steers = beams.get("elevation_steers", c.beams.elevation_steers);
    c.beams.azimuth_span = beams.get("azimuth_span_deg", c.beams.azimuth_span);
    c.beams.azimuth_beamwidth = beams.get("azimuth_beamwidth_deg", c.beams.azimuth_beamwidth);
    c.beams.elevation_beamwidth = beams.get("elevation_beamwidth_deg", c.beams.elevation_beamwidth);
    c.beams.element_gain = beams.get("element_gain_dbi", c.beams.element_gain);
    c.beams.front_to_back = beams.get("front_to_back_db", c.beams.front_to_back);
    if (beams.has("array_gain_dbi"))
    {
        c.beams.array_gain = beams.get("array_gain_dbi", 0.0);
    }
    else
    {
        beams.get("array_gain_dbi", 0.0);
    }
    beams.finish();

    auto blocks = s.child("blocks");
    c.blocks.enabled = blocks.get("enabled", c.blocks.enabled);
    c.blocks.street_width = blocks.get("street_width", c.blocks.street_width);
    c.blocks.blocks_per_span_x = blocks.get("blocks_per_span_x", c.blocks.blocks_per_span_x);
    c.blocks.blocks_per_span_y = blocks.get("blocks_per_span_y", c.blocks.blocks_per_span_y);
    c.blocks.setback_min = blocks.get("setback_min", c.blocks.setback_min);
    c.blocks.setback_max = blocks.get("setback_max", c.blocks.setback_max);
    c.blocks.height_min = blocks.get("height_min", c.blocks.height_min);
    c.blocks.height_max = blocks.get("height_max", c.blocks.height_max);
    c.blocks.park_probability = blocks.get("park_probability", c.blocks.park_probability);
    c.blocks.min_building_size = blocks.get("min_building_size", c.blocks.min_building_size);
    blocks.finish();

    auto extra = s.raw("buildings");
    if (extra && !extra.IsNull())
    {
        if (!extra.IsSequence())
        {
            throw ConfigError("key '" + s.qualified("buildings") + "' must be a list");
        }
        for (std::size_t i = 0; i < extra.size(); ++i)
        {
            Section b(extra[i], s.qualified("buildings") + "[" + std::to_string(i) + "]");
            auto lo = b.require<std::vector<double>>("min_corner");
            auto hi = b.require<std::vector<double>>("max_corner");
            require_that(lo.size() == 2, b, "min_corner", "must be [x, y]");
            require_that(hi.size() == 2, b, "max_corner", "must be [x, y]");
            Building bd;
            bd.footprint = Rect{{lo[0], lo[1]}, {hi[0], hi[1]}};
            bd.height = b.get("height", bd.height);
            b.finish();
            c.extra_buildings.push_back(bd);
        }
    }
    s.finish();
}

void parse_propagation(Section s, PropagationConfig &c)
{
    try
    {
        c.model = path_loss_model_from_string(s.get<std::string>("model", to_string(c.model)));
    }
    catch (const std::invalid_argument &)
    {
        throw ConfigError("key '" + s.qualified("model") + "' must be free_space or umi_los_nlos");
    }
    c.nlos_extra_loss_exponent = s.get("nlos_extra_loss_exponent", c.nlos_extra_loss_exponent);
    c.shadow_fading_sigma = s.get("shadow_fading_sigma_db", c.shadow_fading_sigma);
    require_that(c.shadow_fading_sigma >= 0.0, s, "shadow_fading_sigma_db", "must be >= 0");
    c.noise_floor = s.get("noise_floor_dbm", c.noise_floor);
    c.ue_height = s.get("ue_height", c.ue_height);
    c.height_aware_los = s.get("height_aware_los", c.height_aware_los);
    s.finish();
}

void parse_train(Section s, TrainConfig &c)
{
    c.batch_size = s.get("batch_size", c.batch_size);
    require_that(c.batch_size >= 1, s, "batch_size", "must be >= 1");
    c.max_epochs = s.get("max_epochs", c.max_epochs);
    c.adam.learning_rate = s.get("learning_rate", c.adam.learning_rate);
    c.adam.beta1 = s.get("beta1", c.adam.beta1);
    c.adam.beta2 = s.get("beta2", c.adam.beta2);
    c.adam.epsilon = s.get("epsilon", c.adam.epsilon);
    c.early_stop.patience = s.get("patience", c.early_stop.patience);
    require_that(c.early_stop.patience >= 1, s, "patience", "must be >= 1");
    c.early_stop.min_delta = s.get("min_delta", c.early_stop.min_delta);
    c.normalize_labels = s.get("normalize_labels", c.normalize_labels);
    s.finish();
}

void parse_tree(Section s, TreeConfig &c)
{
    const int depth = s.get("max_depth", c.max_depth.value_or(0));
    c.max_depth = depth > 0 ? std::optional<int>(depth) : std::nullopt;
    c.min_samples_leaf = s.get("min_samples_leaf", c.min_samples_leaf);
    c.min_samples_split = s.get("min_samples_split", c.min_samples_split);
    require_that(c.min_samples_split >= 2, s, "min_samples_split", "must be >= 2");
    s.finish();
}

} // namespace

const FeatureConfig &RunConfig::feature_set(const std::string &name) const
{
    for (const auto &f : feature_sets)
    {
        if (f.name == name)
        {
            return f;
        }
    }
    throw ConfigError("unknown feature set '" + name + "'");
}

RunConfig parse_run_config(const std::string &text, std::optional<std::uint64_t> seed_override)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (const YAML::Exception &e)
    {
        throw ConfigError(std::string("config is not valid YAML: ") + e.what());
    }
    Section top(root, "");
    RunConfig c;
    if (seed_override)
    {
        top.get<std::uint64_t>("seed", 0);
        c.seed = *seed_override;
    }
    else
    {
        c.seed = top.require<std::uint64_t>("seed");
    }
    c.output_dir = top.get<std::string>("output_dir", c.output_dir.string());

    parse_scenario(top.child("scenario"), c.scenario);
    c.scenario.seed = c.seed;
    parse_propagation(top.child("propagation"), c.propagation);
    c.propagation.shadowing_seed = derive_seed(c.seed, SeedStream::shadowing);

    auto ds = top.child("dataset");
    c.split_fraction = ds.get("split_fraction", c.split_fraction);
    require_that(c.split_fraction > 0.0 && c.split_fraction < 1.0, ds, "split_fraction", "must lie in (0, 1)");
    c.min_cell_rows = ds.get("min_cell_rows", c.min_cell_rows);
    ds.finish();

    parse_train(top.child("train"), c.train);
    parse_tree(top.child("tree"), c.tree);

    auto features = top.raw("features");
    if (!features || !features.IsSequence() || features.size() == 0)
    {
        throw ConfigError("key 'features' must be a non-empty list");
    }
    for (std::size_t i = 0; i < features.size(); ++i)
    {
        Section f(features[i], "features[" + std::to_string(i) + "]");
        FeatureConfig fc;
        fc.name = f.require<std::string>("name");
        fc.n_serving_beams = f.get("serving_beams", fc.n_serving_beams);
        require_that(fc.n_serving_beams >= 1 && fc.n_serving_beams <= 8, f, "serving_beams", "must lie in 1..8");
        fc.n_neighbor_cells = f.get("neighbor_cells", fc.n_neighbor_cells);
        require_that(fc.n_neighbor_cells >= 0 && fc.n_neighbor_cells <= 4, f, "neighbor_cells",
                          "must lie in 0..4");
        fc.include_serving_cell_id = f.get("include_serving_cell_id", fc.include_serving_cell_id);
        const auto enc = f.get<std::string>("id_encoding", "numeric");
        require_that(enc == "numeric" || enc == "one_hot", f, "id_encoding", "must be numeric or one_hot");
        fc.id_encoding = id_encoding_from_string(enc);
        f.finish();
        for (const auto &prev : c.feature_sets)
        {
            require_that(prev.name != fc.name, f, "name", "duplicates an earlier feature set");
        }
        c.feature_sets.push_back(fc);
    }

    auto experiments = top.raw("experiments");
    if (experiments && !experiments.IsNull())
    {
        if (!experiments.IsSequence())
        {
            throw ConfigError("key 'experiments' must be a list");
        }
        std::set<std::string> ids;
        for (std::size_t i = 0; i < experiments.size(); ++i)
        {
            Section e(experiments[i], "experiments[" + std::to_string(i) + "]");
            ExperimentSpec x;
            x.id = e.require<std::string>("id");
            require_that(ids.insert(x.id).second, e, "id", "is not unique");
            x.feature_set = e.require<std::string>("features");
            try
            {
                c.feature_set(x.feature_set);
            }
            catch (const ConfigError &)
            {
                throw ConfigError("key '" + e.qualified("features") + "' references unknown feature set '" +
                                  x.feature_set + "'");
            }
            try
            {
                x.topology = topology_from_string(e.get<std::string>("topology", "network_level"));
                x.model = model_kind_from_string(e.get<std::string>("model", "mlp"));
            }
            catch (const EvalError &err)
            {
                throw ConfigError(e.qualified("topology/model") + ": " + err.what());
            }
            x.hidden_layers = e.get("hidden_layers", x.hidden_layers);
            for (int h : x.hidden_layers)
            {
                require_that(h >= 1, e, "hidden_layers", "widths must be >= 1");
            }
            x.replicas = e.get("replicas", x.replicas);
            require_that(x.replicas >= 1, e, "replicas", "must be >= 1");
            x.train = c.train;
            if (e.has("train"))
            {
                parse_train(e.child("train"), x.train);
            }
            else
            {
                e.child("train");
            }
            x.tree = c.tree;
            if (e.has("tree"))
            {
                parse_tree(e.child("tree"), x.tree);
            }
            else
            {
                e.child("tree");
            }
            e.finish();
            c.experiments.push_back(std::move(x));
        }
    }
    top.finish();
    return c;
}

RunConfig load_run_config(const std::filesystem::path &path, std::optional<std::uint64_t> seed_override)
{
    std::string text;
    try
    {
        text = read_text(path);
    }
    catch (const IoError &e)
    {
        throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    return parse_run_config(text, seed_override);
}

std::vector<ExperimentDescriptor> expand_matrix(const RunConfig &config)
{
    std::vector<ExperimentDescriptor> out;
    for (const auto &x : config.experiments)
    {
        for (int r = 0; r < x.replicas; ++r)
        {
            ExperimentDescriptor d;
            d.id = x.replicas > 1 ? x.id + "-r" + std::to_string(r) : x.id;
            d.features = config.feature_set(x.feature_set);
            d.topology = x.topology;
            d.model = x.model;
            d.hidden_layers = x.hidden_layers;
            d.train = x.train;
            d.tree = x.tree;
            d.replica = r;
            const auto idx = static_cast<std::uint64_t>(r);
            d.split_seed = derive_seed(config.seed, SeedStream::split, idx);
            d.init_seed = derive_seed(config.seed, SeedStream::init, idx);
            d.train.seed = derive_seed(config.seed, SeedStream::shuffle, idx);
            d.min_cell_rows = config.min_cell_rows;
            out.push_back(std::move(d));
        }
    }
    return out;
}

} // namespace beamloc::app
