#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qpgeom/conditions.hpp"
#include "qpgeom/construct.hpp"
#include "qpgeom/curve.hpp"
#include "qpgeom/oracle.hpp"

namespace qpgeom {

using Json = nlohmann::ordered_json;

/// Malformed input. `line` is 1-based, 0 when unknown; `field` is a path
/// such as "terms[2].alpha".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, int line, std::string field, const std::string& message);
    const std::string& source() const { return source_; }
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::string source_;
    int line_;
    std::string field_;
};

/// Values are strings ("2/5", "0.15", "~0.4618") or JSON numbers. Integers
/// are exact; other numbers are approximate with tolerance `eps`.
Numeric numeric_from_json(const Json& value, double eps);
Json to_json(const Numeric& x);

struct Bundle {
    WalkSpec walk;
    std::optional<TermSet> terms;
    Json provenance;  ///< null when absent
};

/// A walk object with keys p_s_t, h_s, v_t, or a bundle
/// {"walk": ..., "terms": [...], "provenance": ...}.
Bundle parse_bundle(const std::string& text, const std::string& source, const Tolerances& tol);
/// A list of {"rho", "sigma", "alpha"} objects, or a bundle with "terms".
TermSet parse_terms(const std::string& text, const std::string& source, const Tolerances& tol);

/// Throws ParseError when the file cannot be read.
std::string read_file(const std::string& path);

Json to_json(const WalkSpec& w);
Json to_json(const TermSet& g);
Json to_json(const ValidationVerdict& v);
Json to_json(const ConditionReport& r);
Json to_json(const InvariantCheck& c);
Json to_json(const Chain& c);

void write_pi_csv(std::ostream& os, const StationaryEstimate& est);
void write_curve_csv(std::ostream& os, const std::vector<CurveSample>& samples);

}  // namespace qpgeom
