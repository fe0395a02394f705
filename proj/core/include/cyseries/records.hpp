#pragma once

// JSON persistence for formulas, congruence specs, hunt candidates and
// verification reports.
//
// Exact numbers are never written as floats: a rational is
// {"num": "...", "den": "..."} with decimal strings, and an element of Q(sqrt d)
// is {"rat": <rational>, "coef": <rational>, "disc": "d"}. Approximate reals
// (hunt roots, partial sums) are decimal strings in scientific notation.
//
// A record file holds one JSON object, a JSON array of objects, or one object
// per line. Every object carries a "kind" field.

#include <filesystem>
#include <string>
#include <vector>

#include "cyseries/hunter.hpp"
#include "cyseries/verifier.hpp"

namespace cys {

/// Significant digits kept for approximate reals.
inline constexpr int kPersistedRealDigits = 40;

std::string formula_to_json(const FormulaRecord& f);
FormulaRecord formula_from_json(const std::string& text);

std::string congruence_to_json(const CongruenceSpec& c);
CongruenceSpec congruence_from_json(const std::string& text);

std::string candidate_to_json(const HuntCandidate& h);
HuntCandidate candidate_from_json(const std::string& text);

std::string verify_report_to_json(const FormulaRecord& f, int digits, const VerifyResult& r);
std::string congruence_report_to_json(const CongruenceSpec& c, const CongruenceResult& r);

/// Reads every object in a record file (see above) as compact JSON strings,
/// in file order. Throws ParseError on malformed input.
std::vector<std::string> read_record_objects(const std::filesystem::path& path);
/// Value of the "kind" field of a JSON object.
std::string record_kind(const std::string& text);

/// Objects of kind "formula" / "congruence" in a record file.
std::vector<FormulaRecord> load_formulas(const std::filesystem::path& path);
std::vector<CongruenceSpec> load_congruences(const std::filesystem::path& path);

/// Append-only JSON-lines file.
class ResultStore {
public:
    explicit ResultStore(std::filesystem::path path);
    const std::filesystem::path& path() const noexcept { return path_; }
    /// Appends one compact JSON object as a line.
    void append(const std::string& json);
    std::vector<std::string> lines() const;

private:
    std::filesystem::path path_;
};

}  // namespace cys
