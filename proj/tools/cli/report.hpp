#pragma once

// Run reports and their JSON / CSV renderings.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace relent::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };

/// Command output. Scalar results live in `outputs`; tabular results fill
/// `columns` and `rows`, which the JSON rendering adds to outputs as "rows".
struct RunReport {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    std::optional<std::uint64_t> seed;
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

/// %.17g for finite doubles; "inf", "-inf" and "nan" otherwise.
std::string format_double(double x);

/// Pretty JSON with the fixed field order command, version, seed, inputs, outputs.
void write_json(std::ostream& out, const RunReport& report, std::string_view version);

/// Header plus rows for tabular reports, otherwise one row of the scalar outputs.
void write_csv(std::ostream& out, const RunReport& report);

/// Serializes any ordered_json value, numbers through format_double.
void dump(std::ostream& out, const Json& value, int indent = 0);

}  // namespace relent::cli
