#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "woven/certificates.hpp"
#include "woven/frame.hpp"
#include "woven/matrix.hpp"
#include "woven/weaving.hpp"

// JSON interchange: strict parsers for the input file formats and
// serializers for every report payload.
//
// Frame file     {"dim": <int>, "vectors": [[<entry>, ...], ...]}
// Matrix file    {"matrix": [[<entry>, ...], ...]}
//
// An <entry> is a JSON number or a string parsed with C strtod, which
// accepts decimal and hex-float notation ("0x1.8p1").  Strings exist for
// bit-exact fixtures; everything is emitted back as plain JSON numbers in
// shortest round-trip decimal form, so parse(serialize(x)) == x at full
// binary64 precision.  Unknown fields are rejected, not ignored: a typo in a
// fixture should fail loudly.

namespace woven {

// -- parsing (ParseError / ShapeError / ValueError) ---------------------------

Frame frame_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);

// Read and parse a file; IO failures surface as ParseError naming the path.
Frame load_frame(const std::string& path);
Matrix load_matrix(const std::string& path);

// -- serialization -------------------------------------------------------------

nlohmann::json frame_to_json(const Frame& f);
nlohmann::json bounds_to_json(const BoundsReport& b);
nlohmann::json excess_to_json(const ExcessReport& e);
nlohmann::json verdict_to_json(const WeavingVerdict& v);
nlohmann::json certificate_to_json(const CertificateResult& c);

// -- report envelope -------------------------------------------------------------
//
// {"version": "1", "command": ..., "inputs": [...], "result": ...,
//  "timestamp": ...}.  Keys are emitted sorted, numbers in shortest
// round-trip form, so identical invocations give byte-identical reports.
// The timestamp (ISO 8601 UTC) is the one run-dependent field; deterministic
// mode omits it.

inline constexpr const char* kReportVersion = "1";

std::string render_report(const std::string& command, const std::vector<std::string>& inputs,
                          const nlohmann::json& result, bool deterministic);

}  // namespace woven
