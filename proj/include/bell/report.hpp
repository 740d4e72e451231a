#pragma once

#include "bell/ow.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace bell {

using OrderedJson = nlohmann::ordered_json;

/// Shared run settings for the command-line surface.
struct RunConfig {
    double ow_tol = kDefaultOwTol;
    double behavior_tol = 1e-12;
    std::uint64_t seed = 1;
    int samples = 100;
    enum class Format { kJson, kText, kCsv } format = Format::kJson;
    std::string out_path;  // empty: stdout

    void validate() const;
};

OrderedJson report_json(const OwReport&, std::uint64_t seed);
OrderedJson certificate_json(const std::optional<ConstantCertificate>&);
OrderedJson gamma_json(const GammaSolution&, std::uint64_t seed);

/// Fixed scan schema: seed, input parameters, achieved value, worst gap,
/// verdict. Identical seeds and configs give byte-identical rows.
std::string scan_csv_header(const std::vector<std::string>& param_names);
std::string scan_csv_row(std::uint64_t seed, const std::vector<double>& params,
                         double value, double max_gap, bool verdict);

/// Write to config.out_path or stdout.
void emit(const std::string& text, const RunConfig&);

}  // namespace bell
