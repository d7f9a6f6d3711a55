#include "tropbscs/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace tropbscs::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Trop entry_from_json(const json& v) {
    if (v.is_number()) return Trop(v.get<double>());
    if (v.is_string() && v.get<std::string>() == "-inf") return Trop::zero();
    throw ParseError("matrix entries must be numbers or \"-inf\", got " + v.dump());
}

double number_field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
        throw ParseError(std::string("missing numeric field \"") + key + "\"");
    }
    return obj.at(key).get<double>();
}

std::string join_entries(std::span<const Trop> entries) {
    std::string out = "[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ", ";
        out += to_json(entries[i]);
    }
    return out + "]";
}

}  // namespace

std::string format_number(double v) {
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

Matrix matrix_from_json(std::string_view text) {
    const json j = parse(text);
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty JSON array");
    if (!j.front().is_array()) {
        std::vector<Trop> e;
        for (const auto& v : j) e.push_back(entry_from_json(v));
        const std::size_t n = e.size();
        return Matrix(n, 1, std::move(e));
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().size();
    std::vector<Trop> e;
    e.reserve(rows * cols);
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) throw ParseError("matrix rows differ in length");
        for (const auto& v : row) e.push_back(entry_from_json(v));
    }
    return Matrix(rows, cols, std::move(e));
}

Vector vector_from_json(std::string_view text) {
    const json j = parse(text);
    if (!j.is_array()) throw ParseError("vector must be a JSON array");
    std::vector<Trop> e;
    for (const auto& v : j) {
        // Accept a column written as [[x], [y]] as well as a flat list.
        if (v.is_array()) {
            if (v.size() != 1) throw ParseError("vector rows must hold one entry");
            e.push_back(entry_from_json(v.front()));
        } else {
            e.push_back(entry_from_json(v));
        }
    }
    return Vector(std::move(e));
}

std::string to_json(Trop x) {
    return x.is_zero() ? std::string("\"-inf\"") : format_number(x.value());
}

std::string to_json(const Vector& x) { return join_entries(x.entries()); }

std::string to_json(const Matrix& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i) out += ", ";
        out += join_entries(a.entries().subspan(i * a.cols(), a.cols()));
    }
    return out + "]";
}

bscs::StationParams station_from_json(std::string_view text) {
    const json j = parse(text);
    if (!j.is_object()) throw ParseError("station config must be a JSON object");
    if (!j.contains("dist") || !j.at("dist").is_object() || j.at("dist").size() != 1) {
        throw ParseError("station config needs \"dist\" with exactly one of exp, uniform, det");
    }
    const json& dist_obj = j.at("dist");
    const std::string kind = dist_obj.begin().key();
    const json& body = dist_obj.begin().value();
    auto dist = [&]() -> bscs::InterarrivalDist {
        if (kind == "exp") return bscs::InterarrivalDist::exponential(number_field(body, "mean"));
        if (kind == "uniform")
            return bscs::InterarrivalDist::uniform(number_field(body, "lo"), number_field(body, "hi"));
        if (kind == "det") return bscs::InterarrivalDist::deterministic(number_field(body, "a"));
        throw ParseError("unknown interarrival distribution \"" + kind + "\"");
    }();

    const double m = number_field(j, "m");
    if (m < 1 || m != std::floor(m)) throw ParseError("\"m\" must be a positive integer");
    bscs::StationParams params{dist, number_field(j, "b"), number_field(j, "c"),
                               static_cast<std::size_t>(m)};
    params.validate();
    return params;
}

std::string to_json(const bscs::StationParams& params) {
    ordered_json dist;
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, bscs::Exponential>) {
                dist["exp"] = {{"mean", d.mean}};
            } else if constexpr (std::is_same_v<D, bscs::Uniform>) {
                dist["uniform"] = {{"lo", d.lo}, {"hi", d.hi}};
            } else {
                dist["det"] = {{"a", d.a}};
            }
        },
        params.dist.kind());
    ordered_json j;
    j["dist"] = dist;
    j["b"] = params.b;
    j["c"] = params.c;
    j["m"] = params.m;
    return j.dump();
}

NetworkConfig network_from_json(std::string_view text) {
    const json j = parse(text);
    NetworkConfig cfg;
    const json* list = &j;
    if (j.is_object()) {
        if (!j.contains("stations")) throw ParseError("network config needs \"stations\"");
        list = &j.at("stations");
        if (j.contains("M")) {
            const double fleet = number_field(j, "M");
            if (fleet < 1 || fleet != std::floor(fleet)) throw ParseError("\"M\" must be a positive integer");
            cfg.fleet = static_cast<std::size_t>(fleet);
        }
    }
    if (!list->is_array() || list->empty()) throw ParseError("network needs a nonempty station array");
    for (const auto& s : *list) {
        network::NetworkStation st{number_field(s, "a"), number_field(s, "b"), number_field(s, "c"),
                                   number_field(s, "r")};
        st.validate();
        cfg.stations.push_back(st);
    }
    return cfg;
}

std::string plan_to_json(const network::AllocationPlan& plan,
                         const std::vector<network::NetworkStation>& stations) {
    ordered_json j;
    j["counts"] = plan.counts;
    j["objective"] = plan.total_income_rate;
    std::vector<std::size_t> thresholds;
    std::vector<bool> saturated;
    for (std::size_t i = 0; i < stations.size(); ++i) {
        thresholds.push_back(network::threshold(stations[i]));
        saturated.push_back(i < plan.counts.size() && plan.counts[i] >= thresholds.back());
    }
    j["thresholds"] = thresholds;
    j["saturated"] = saturated;
    if (plan.warning) j["warning"] = *plan.warning;
    return j.dump(2);
}

std::string trace_to_csv(const bscs::SimTrace& trace, std::size_t stride) {
    if (stride < 1) throw PreconditionError("stride must be >= 1");
    std::ostringstream out;
    out << "k,x,y,lambda_hat\n";
    for (const auto& row : trace.rows) {
        if (row.k % stride != 0) continue;
        out << row.k << ',' << format_number(row.x) << ',' << format_number(row.y) << ','
            << format_number(row.lambda_hat) << '\n';
    }
    return out.str();
}

std::string figure_to_csv(const bscs::SimTrace& trace, std::size_t stride, double exact) {
    std::ostringstream out;
    out << "k,lambda_hat\n";
    for (const auto& p : bscs::estimator_series(trace, stride)) {
        out << p.k << ',' << format_number(p.lambda_hat) << '\n';
    }
    out << "exact," << format_number(exact) << '\n';
    return out.str();
}

std::string growth_to_csv(const GrowthTrace& trace) {
    std::ostringstream out;
    out << "k,norm,estimate\n";
    for (const auto& s : trace.steps) {
        out << s.k << ',' << format_number(s.norm.value()) << ',' << format_number(s.estimate)
            << '\n';
    }
    return out.str();
}

}  // namespace tropbscs::io
