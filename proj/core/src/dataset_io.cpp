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
#include "beamloc/io.hpp"

#include <nlohmann/json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace beamloc
{

void write_text_atomic(const std::filesystem::path &path, std::string_view contents)
{
    if (path.has_parent_path())
    {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out)
        {
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace
{

nlohmann::json layout_to_json(const std::vector<FieldDescriptor> &layout)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &f : layout)
    {
        arr.push_back({{"kind", static_cast<int>(f.kind)}, {"slot", f.slot}, {"one_hot_id", f.one_hot_id}});
    }
    return arr;
}

std::vector<FieldDescriptor> layout_from_json(const nlohmann::json &arr)
{
    std::vector<FieldDescriptor> layout;
    for (const auto &j : arr)
    {
        const int kind = j.at("kind").get<int>();
        if (kind < 0 || kind > static_cast<int>(FieldKind::neighbor_rsrp))
        {
            throw IoError("dataset sidecar: bad field kind");
        }
        layout.push_back({static_cast<FieldKind>(kind), j.at("slot").get<int>(), j.at("one_hot_id").get<int>()});
    }
    return layout;
}

std::vector<double> to_vector(const Eigen::VectorXd &v)
{
    return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd from_vector(const std::vector<double> &v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double parse_double(const std::string &s)
{
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE)
    {
        throw IoError("dataset csv: bad number '" + s + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
    {
        cells.push_back(cell);
    }
    return cells;
}

} // namespace

void save_dataset(const Dataset &dataset, const std::filesystem::path &csv_path,
                  const std::filesystem::path &sidecar_path)
{
    std::string csv;
    for (const auto &name : layout_names(dataset.layout))
    {
        csv += name;
        csv += ',';
    }
    csv += "label_x,label_y\n";
    for (Eigen::Index r = 0; r < dataset.rows(); ++r)
    {
        for (Eigen::Index c = 0; c < dataset.features.cols(); ++c)
        {
            csv += format_double(dataset.features(r, c));
            csv += ',';
        }
        csv += format_double(dataset.labels(r, 0));
        csv += ',';
        csv += format_double(dataset.labels(r, 1));
        csv += '\n';
    }

    nlohmann::json side;
    side["feature_config"] = to_json(dataset.config);
    side["layout"] = layout_to_json(dataset.layout);
    side["norm_stats"] = {{"mean", to_vector(dataset.norm.mean)}, {"std", to_vector(dataset.norm.std)}};
    side["train_rows"] = dataset.train_rows;
    side["test_rows"] = dataset.test_rows;
    side["serving_cells"] = dataset.serving_cells;
    side["sample_ids"] = dataset.sample_ids;
    side["seeds"] = {{"scenario", dataset.scenario_seed}, {"split", dataset.split_seed}};
    side["split_fraction"] = dataset.split_fraction;
    side["excluded"] = {{"too_few_serving_beams", dataset.excluded.too_few_serving_beams},
                        {"too_few_neighbor_cells", dataset.excluded.too_few_neighbor_cells}};

    write_text_atomic(csv_path, csv);
    write_text_atomic(sidecar_path, side.dump(2) + "\n");
}

Dataset load_dataset(const std::filesystem::path &csv_path, const std::filesystem::path &sidecar_path)
{
    Dataset ds;
    nlohmann::json side;
    try
    {
        side = nlohmann::json::parse(read_text(sidecar_path));
        ds.config = feature_config_from_json(side.at("feature_config"));
        ds.layout = layout_from_json(side.at("layout"));
        ds.norm.mean = from_vector(side.at("norm_stats").at("mean").get<std::vector<double>>());
        ds.norm.std = from_vector(side.at("norm_stats").at("std").get<std::vector<double>>());
        ds.train_rows = side.at("train_rows").get<std::vector<std::size_t>>();
        ds.test_rows = side.at("test_rows").get<std::vector<std::size_t>>();
        ds.serving_cells = side.at("serving_cells").get<std::vector<int>>();
        ds.sample_ids = side.at("sample_ids").get<std::vector<std::size_t>>();
        ds.scenario_seed = side.at("seeds").at("scenario").get<std::uint64_t>();
        ds.split_seed = side.at("seeds").at("split").get<std::uint64_t>();
        ds.split_fraction = side.at("split_fraction").get<double>();
        ds.excluded.too_few_serving_beams = side.at("excluded").at("too_few_serving_beams").get<std::size_t>();
        ds.excluded.too_few_neighbor_cells = side.at("excluded").at("too_few_neighbor_cells").get<std::size_t>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw IoError("dataset sidecar " + sidecar_path.string() + ": " + e.what());
    }

    std::istringstream in(read_text(csv_path));
    std::string line;
    if (!std::getline(in, line))
    {
        throw IoError("dataset csv " + csv_path.string() + " is empty");
    }
    auto header = split_csv_line(line);
    auto expected = layout_names(ds.layout);
    expected.emplace_back("label_x");
    expected.emplace_back("label_y");
    if (header != expected)
    {
        throw IoError("dataset csv header does not match the sidecar layout");
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line))
    {
        if (line.empty())
        {
            continue;
        }
        auto cells = split_csv_line(line);
        if (cells.size() != expected.size())
        {
            throw IoError("dataset csv: row " + std::to_string(rows.size() + 1) + " has wrong column count");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto &c : cells)
        {
            row.push_back(parse_double(c));
        }
        rows.push_back(std::move(row));
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto d = static_cast<Eigen::Index>(ds.layout.size());
    ds.features.resize(n, d);
    ds.labels.resize(n, 2);
    for (Eigen::Index r = 0; r < n; ++r)
    {
        const auto &row = rows[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < d; ++c)
        {
            ds.features(r, c) = row[static_cast<std::size_t>(c)];
        }
        ds.labels(r, 0) = row[static_cast<std::size_t>(d)];
        ds.labels(r, 1) = row[static_cast<std::size_t>(d) + 1];
    }
    if (ds.serving_cells.size() != rows.size() || ds.sample_ids.size() != rows.size() ||
        ds.train_rows.size() + ds.test_rows.size() != rows.size() || ds.norm.size() != d)
    {
        throw IoError("dataset sidecar is inconsistent with the csv row count");
    }
    return ds;
}

} // namespace beamloc
