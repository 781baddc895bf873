#ifndef LEMICA_IO_HPP
#define LEMICA_IO_HPP

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lemica/error_oracle.hpp"
#include "lemica/model.hpp"
#include "lemica/schedule_graph.hpp"

namespace lemica {

// shortest round-trip representation, locale-independent
std::string format_double(double v);

// ErrorMatrix CSV: header "i,j,error,samples", one row per stored skip
// segment; unit segments are omitted (implied zero).
std::string error_matrix_to_csv(const ErrorMatrix& m);
ErrorMatrix error_matrix_from_csv(const std::string& text);

nlohmann::json error_matrix_to_json(const ErrorMatrix& m);
ErrorMatrix error_matrix_from_json(const nlohmann::json& j);

nlohmann::json local_profile_to_json(const LocalErrorProfile& p);
LocalErrorProfile local_profile_from_json(const nlohmann::json& j);

// Schedule file consumed by replay and by external inference stacks.
struct ScheduleFile {
    int num_steps = 0;
    int budget = 0;
    std::vector<int> nodes;
    std::vector<double> signature;  // descending
    std::string strategy;           // lexmin | shortest | greedy
    std::optional<double> threshold;       // greedy only
    std::optional<int> realized_budget;    // greedy only
};

nlohmann::json schedule_to_json(const ScheduleFile& s);
ScheduleFile schedule_from_json(const nlohmann::json& j);

// Model + schedule config, e.g.
// {"dim":8,"component_std":0.1,"components":[{"mean":[...],"weight":0.25},...],
//  "num_steps":30,"alpha_bar":"cosine"}
nlohmann::json model_config_to_json(const MixtureModel& model, const NoiseSchedule& schedule);
std::pair<MixtureModel, NoiseSchedule> model_config_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace lemica

#endif
