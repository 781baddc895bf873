#include "lemica/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lemica {

std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, end);
}

std::string error_matrix_to_csv(const ErrorMatrix& m) {
    std::string out = "i,j,error,samples\n";
    for (int len = 2; len <= m.max_skip; ++len) {
        for (int i = 0; i + len <= m.num_steps; ++i) {
            out += std::to_string(i) + "," + std::to_string(i + len) + "," +
                   format_double(m.at(i, i + len)) + "," + std::to_string(m.sample_count) + "\n";
        }
    }
    return out;
}

ErrorMatrix error_matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "i,j,error,samples") {
        throw std::runtime_error("error_matrix_from_csv: bad header");
    }
    struct Row { int i, j, samples; double error; };
    std::vector<Row> rows;
    int max_j = 0, max_len = 1, samples = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Row r;
        std::istringstream ls(line);
        char comma;
        if (!(ls >> r.i >> comma >> r.j >> comma >> r.error >> comma >> r.samples)) {
            throw std::runtime_error("error_matrix_from_csv: bad row: " + line);
        }
        if (samples < 0) samples = r.samples;
        if (r.samples != samples) {
            throw std::runtime_error("error_matrix_from_csv: inconsistent sample counts");
        }
        max_j = std::max(max_j, r.j);
        max_len = std::max(max_len, r.j - r.i);
        rows.push_back(r);
    }
    if (rows.empty()) {
        throw std::runtime_error("error_matrix_from_csv: no rows");
    }
    ErrorMatrix m = ErrorMatrix::zeros(max_j, max_len, samples);
    for (const auto& r : rows) m.set(r.i, r.j, r.error);
    m.validate();
    return m;
}

nlohmann::json error_matrix_to_json(const ErrorMatrix& m) {
    nlohmann::json values = nlohmann::json::array();
    for (int len = 1; len <= m.max_skip; ++len) {
        for (int i = 0; i + len <= m.num_steps; ++i) {
            values.push_back({{"i", i}, {"j", i + len}, {"error", m.at(i, i + len)}});
        }
    }
    return {{"num_steps", m.num_steps},
            {"max_skip", m.max_skip},
            {"sample_count", m.sample_count},
            {"values", values}};
}

ErrorMatrix error_matrix_from_json(const nlohmann::json& j) {
    ErrorMatrix m = ErrorMatrix::zeros(j.at("num_steps").get<int>(), j.at("max_skip").get<int>(),
                                       j.at("sample_count").get<int>());
    for (const auto& row : j.at("values")) {
        m.set(row.at("i").get<int>(), row.at("j").get<int>(), row.at("error").get<double>());
    }
    m.validate();
    return m;
}

nlohmann::json local_profile_to_json(const LocalErrorProfile& p) {
    return {{"num_steps", p.num_steps}, {"rel_l1", p.rel_l1}};
}

LocalErrorProfile local_profile_from_json(const nlohmann::json& j) {
    LocalErrorProfile p;
    p.num_steps = j.at("num_steps").get<int>();
    p.rel_l1 = j.at("rel_l1").get<std::vector<double>>();
    if (static_cast<int>(p.rel_l1.size()) != p.num_steps - 1) {
        throw std::runtime_error("local_profile_from_json: wrong profile length");
    }
    return p;
}

nlohmann::json schedule_to_json(const ScheduleFile& s) {
    nlohmann::json j = {{"num_steps", s.num_steps},
                        {"budget", s.budget},
                        {"nodes", s.nodes},
                        {"signature", s.signature},
                        {"strategy", s.strategy}};
    if (s.threshold) j["threshold"] = *s.threshold;
    if (s.realized_budget) j["realized_budget"] = *s.realized_budget;
    return j;
}

ScheduleFile schedule_from_json(const nlohmann::json& j) {
    ScheduleFile s;
    s.num_steps = j.at("num_steps").get<int>();
    s.budget = j.at("budget").get<int>();
    s.nodes = j.at("nodes").get<std::vector<int>>();
    s.signature = j.at("signature").get<std::vector<double>>();
    s.strategy = j.at("strategy").get<std::string>();
    if (j.contains("threshold")) s.threshold = j.at("threshold").get<double>();
    if (j.contains("realized_budget")) s.realized_budget = j.at("realized_budget").get<int>();
    return s;
}

nlohmann::json model_config_to_json(const MixtureModel& model, const NoiseSchedule& schedule) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : model.components) {
        comps.push_back({{"mean", c.mean}, {"weight", c.weight}});
    }
    return {{"dim", model.dim},
            {"component_std", model.component_std},
            {"components", comps},
            {"num_steps", schedule.num_steps},
            {"alpha_bar", "cosine"}};
}

std::pair<MixtureModel, NoiseSchedule> model_config_from_json(const nlohmann::json& j) {
    MixtureModel model;
    model.dim = j.at("dim").get<int>();
    model.component_std = j.at("component_std").get<double>();
    for (const auto& c : j.at("components")) {
        model.components.push_back(
            {c.at("mean").get<Vec>(), c.at("weight").get<double>()});
    }
    model.validate();

    const int T = j.at("num_steps").get<int>();
    NoiseSchedule schedule;
    const auto& ab = j.at("alpha_bar");
    if (ab.is_string()) {
        if (ab.get<std::string>() != "cosine") {
            throw std::runtime_error("model_config_from_json: unknown alpha_bar schedule '" +
                                     ab.get<std::string>() + "'");
        }
        schedule = NoiseSchedule::cosine(T);
    } else {
        schedule.num_steps = T;
        schedule.alpha_bar = ab.get<std::vector<double>>();
        schedule.validate();
    }
    return {std::move(model), std::move(schedule)};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace lemica
