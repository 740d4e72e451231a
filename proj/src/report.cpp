#include "bell/report.hpp"

#include "bell/table_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace bell {

void RunConfig::validate() const
{
    if (ow_tol <= 0 || behavior_tol <= 0)
        throw std::invalid_argument("RunConfig: tolerances must be positive");
    if (samples < 1) throw std::invalid_argument("RunConfig: samples must be >= 1");
}

OrderedJson report_json(const OwReport& r, std::uint64_t seed)
{
    OrderedJson j;
    j["direction"] = steering_name(r.direction);
    j["tol"] = r.tol;
    j["seed"] = seed;
    OrderedJson contexts = OrderedJson::array();
    for (const OwContext& c : r.contexts) {
        OrderedJson e;
        if (r.direction == Steering::kBobToAlice) {
            e["y"] = c.context[0];
            e["b"] = c.context[1];
        } else if (r.direction == Steering::kTwoToOne) {
            e["x"] = c.context[0];
            e["y"] = c.context[1];
            e["a"] = c.context[2];
            e["b"] = c.context[3];
        } else {
            e["x"] = c.context[0];
            e["a"] = c.context[1];
        }
        e["weight"] = c.weight;
        if (c.zero_weight) {
            e["zero_weight"] = true;
        } else {
            e["expectation"] = c.expectation;
            e["lambda_max"] = c.lambda_max;
            e["gap"] = c.gap;
        }
        contexts.push_back(std::move(e));
    }
    j["contexts"] = std::move(contexts);
    j["max_gap"] = r.max_gap;
    j["verdict"] = r.verdict ? "ow" : "not-ow";
    return j;
}

OrderedJson certificate_json(const std::optional<ConstantCertificate>& cert)
{
    OrderedJson j;
    if (!cert) {
        j["k"] = nullptr;
        j["equivalent"] = false;
        return j;
    }
    j["k"] = cert->k;
    if (cert->witness) {
        j["alpha"] = cert->witness->alpha;
        j["beta"] = cert->witness->beta;
        j["gamma"] = cert->witness->gamma;
        j["delta"] = cert->witness->delta;
    } else {
        j["alpha"] = nullptr;
        j["beta"] = nullptr;
        j["gamma"] = nullptr;
        j["delta"] = nullptr;
    }
    j["residual"] = cert->residual;
    j["equivalent"] = true;
    return j;
}

OrderedJson gamma_json(const GammaSolution& sol, std::uint64_t seed)
{
    OrderedJson j;
    j["seed"] = seed;
    if (sol.gamma) j["gamma"] = *sol.gamma;
    else j["gamma"] = nullptr;
    OrderedJson cands = OrderedJson::array();
    for (const GammaCandidate& c : sol.candidates) {
        OrderedJson e;
        e["x"] = c.x;
        e["a"] = c.a;
        if (c.gamma) e["gamma"] = *c.gamma;
        else e["gamma"] = nullptr;
        cands.push_back(std::move(e));
    }
    j["candidates"] = std::move(cands);
    j["spread"] = sol.spread;
    if (sol.report) j["report"] = report_json(*sol.report, seed);
    if (!sol.note.empty()) j["note"] = sol.note;
    return j;
}

std::string scan_csv_header(const std::vector<std::string>& param_names)
{
    std::ostringstream os;
    os << "seed";
    for (const auto& n : param_names) os << ',' << n;
    os << ",value,max_gap,verdict";
    return os.str();
}

std::string scan_csv_row(std::uint64_t seed, const std::vector<double>& params,
                         double value, double max_gap, bool verdict)
{
    std::ostringstream os;
    os << seed;
    for (double p : params) os << ',' << format_number(p);
    os << ',' << format_number(value) << ',' << format_number(max_gap) << ','
       << (verdict ? "ow" : "not-ow");
    return os.str();
}

void emit(const std::string& text, const RunConfig& config)
{
    if (config.out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(config.out_path);
    if (!out) throw std::runtime_error("cannot write " + config.out_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

}  // namespace bell
