#include "woven/report_json.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "woven/errors.hpp"

namespace woven {
namespace {

using nlohmann::json;

double entry_to_double(const json& v, const char* where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        const char* begin = s.c_str();
        char* end = nullptr;
        const double parsed = std::strtod(begin, &end);
        if (end == begin || end != begin + s.size()) {
            throw ParseError(std::string(where) + ": cannot parse numeric string \"" + s + "\"");
        }
        return parsed;
    }
    throw ParseError(std::string(where) + ": entries must be numbers or numeric strings");
}

std::vector<std::vector<double>> rows_from_json(const json& arr, const char* where) {
    if (!arr.is_array()) throw ParseError(std::string(where) + " must be an array of arrays");
    std::vector<std::vector<double>> rows;
    rows.reserve(arr.size());
    for (const json& row : arr) {
        if (!row.is_array()) throw ParseError(std::string(where) + " must be an array of arrays");
        std::vector<double> r;
        r.reserve(row.size());
        for (const json& v : row) r.push_back(entry_to_double(v, where));
        rows.push_back(std::move(r));
    }
    return rows;
}

void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed,
                           const char* what) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError(std::string(what) + ": unknown field \"" + item.key() + "\"");
        }
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    json j = json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in file: " + path);
    return j;
}

}  // namespace

Frame frame_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("frame: top level must be a JSON object");
    reject_unknown_fields(j, {"dim", "vectors"}, "frame");
    if (!j.contains("dim") || !j.contains("vectors")) {
        throw ParseError("frame: required fields are \"dim\" and \"vectors\"");
    }
    if (!j["dim"].is_number_integer()) throw ParseError("frame: \"dim\" must be an integer");
    const long long dim = j["dim"].get<long long>();
    if (dim < 1) throw ShapeError("frame: \"dim\" must be at least 1");
    return Frame(static_cast<std::size_t>(dim), rows_from_json(j["vectors"], "frame vectors"));
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix: top level must be a JSON object");
    reject_unknown_fields(j, {"matrix"}, "matrix");
    if (!j.contains("matrix")) throw ParseError("matrix: required field is \"matrix\"");
    return Matrix::from_rows(rows_from_json(j["matrix"], "matrix"));
}

Frame load_frame(const std::string& path) { return frame_from_json(read_json_file(path)); }

Matrix load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }

json frame_to_json(const Frame& f) {
    json vectors = json::array();
    for (std::size_t i = 0; i < f.size(); ++i) vectors.push_back(f.vector(i));
    return json{{"dim", f.dim()}, {"vectors", vectors}};
}

json bounds_to_json(const BoundsReport& b) {
    return json{{"lower", b.lower}, {"upper", b.upper}};
}

json excess_to_json(const ExcessReport& e) {
    return json{{"excess", e.excess},
                {"riesz_indices", e.riesz_indices},
                {"redundant_indices", e.redundant_indices}};
}

json verdict_to_json(const WeavingVerdict& v) {
    json j{{"woven", v.woven},
           {"universal_lower", v.universal_lower},
           {"universal_upper", v.universal_upper},
           {"partitions_checked", v.partitions_checked}};
    if (v.witness) {
        j["witness"] = json{{"sigma", v.witness->assignment.sigma_indices()},
                            {"choice", v.witness->assignment.choice},
                            {"lambda_min", v.witness->lambda_min}};
    }
    return j;
}

json certificate_to_json(const CertificateResult& c) {
    json j{{"name", c.name},
           {"kind", c.kind == CertificateKind::TwoSided ? "two_sided" : "upper_only"},
           {"applicable", c.applicable},
           {"quantities", c.quantities}};
    if (c.guaranteed_lower) j["guaranteed_lower"] = *c.guaranteed_lower;
    if (c.guaranteed_upper) j["guaranteed_upper"] = *c.guaranteed_upper;
    if (c.failed_condition) j["failed_condition"] = *c.failed_condition;
    return j;
}

std::string render_report(const std::string& command, const std::vector<std::string>& inputs,
                          const json& result, bool deterministic) {
    json report{{"version", kReportVersion},
                {"command", command},
                {"inputs", inputs},
                {"result", result}};
    if (!deterministic) {
        std::time_t now = std::time(nullptr);
        std::tm tm_utc{};
        gmtime_r(&now, &tm_utc);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        report["timestamp"] = stamp;
    }
    return report.dump(2) + "\n";
}

}  // namespace woven
