#pragma once

#include <json.hpp>

#include "fatou/pipeline.hpp"

namespace fatou {

using Json = nlohmann::ordered_json;

// Versioned, timestamp-free report: identical runs give identical bytes.
// Complex numbers serialize as [re, im] pairs.
Json report_json(const AnalysisResult& res);
std::string report_string(const AnalysisResult& res);
void write_report(const std::string& path, const AnalysisResult& res);

Json json_complex(Complex z);
Complex complex_from_json(const Json& j);

}  // namespace fatou
