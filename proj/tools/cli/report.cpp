#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace relent::cli {

namespace {

void pad(std::ostream& out, int indent) {
    for (int i = 0; i < indent; ++i) out << ' ';
}

std::string scalar_text(const Json& v) {
    switch (v.type()) {
        case Json::value_t::number_float:
            return format_double(v.get<double>());
        case Json::value_t::string:
            return v.get<std::string>();
        case Json::value_t::null:
            return "";
        default:
            return v.dump();
    }
}

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

Json table_as_json(const RunReport& report) {
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json obj = Json::object();
        for (std::size_t c = 0; c < report.columns.size(); ++c) obj[report.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    return rows;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void dump(std::ostream& out, const Json& value, int indent) {
    switch (value.type()) {
        case Json::value_t::object: {
            if (value.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            std::size_t i = 0;
            for (const auto& [key, item] : value.items()) {
                pad(out, indent + 2);
                out << Json(key).dump() << ": ";
                dump(out, item, indent + 2);
                out << (++i < value.size() ? ",\n" : "\n");
            }
            pad(out, indent);
            out << '}';
            return;
        }
        case Json::value_t::array: {
            if (value.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                pad(out, indent + 2);
                dump(out, value[i], indent + 2);
                out << (i + 1 < value.size() ? ",\n" : "\n");
            }
            pad(out, indent);
            out << ']';
            return;
        }
        case Json::value_t::number_float: {
            const double x = value.get<double>();
            // JSON has no literal for non-finite numbers.
            if (std::isfinite(x)) {
                out << format_double(x);
            } else {
                out << '"' << format_double(x) << '"';
            }
            return;
        }
        default:
            out << value.dump();
    }
}

void write_json(std::ostream& out, const RunReport& report, std::string_view version) {
    Json doc = Json::object();
    doc["command"] = report.command;
    doc["version"] = std::string(version);
    doc["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
    doc["inputs"] = report.inputs;
    Json outputs = report.outputs;
    if (!report.columns.empty()) outputs["rows"] = table_as_json(report);
    doc["outputs"] = std::move(outputs);
    dump(out, doc);
    out << '\n';
}

void write_csv(std::ostream& out, const RunReport& report) {
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    if (!report.columns.empty()) {
        line(report.columns);
        for (const auto& row : report.rows) {
            std::vector<std::string> cells;
            for (const auto& v : row) cells.push_back(scalar_text(v));
            line(cells);
        }
        return;
    }
    std::vector<std::string> header, cells;
    for (const auto& [key, item] : report.outputs.items()) {
        if (!is_scalar(item)) continue;
        header.push_back(key);
        cells.push_back(scalar_text(item));
    }
    line(header);
    line(cells);
}

}  // namespace relent::cli
