#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "anfnl/bits.hpp"
#include "anfnl/int128.hpp"

namespace anfnl {

/// One affine function at the minimum distance. complement=1 means the
/// nearest function is l_w ⊕ 1 rather than l_w.
struct NearestAffine {
    Mask w = 0;
    i128 walsh = 0;
    i128 distance = 0;
    bool complement = false;

    friend bool operator==(const NearestAffine&, const NearestAffine&) = default;
};

/// A leaf of the distance tree attaining the maximum |F|, together with the
/// linear functions it stands for. When the sub-vector expansion is too large
/// to enumerate, `truncated` is set and only the count is reported.
struct Witness {
    std::string path;
    i128 value = 0;
    std::vector<Mask> linear_functions;
    bool truncated = false;
    u128 count = 0;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct EnumStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t pruned = 0;

    friend bool operator==(const EnumStats&, const EnumStats&) = default;
};

struct AnalysisReport {
    int n = 0;
    std::size_t monomial_count = 0;     // p
    std::size_t coefficient_count = 0;  // k
    i128 weight = 0;
    i128 nonlinearity = 0;
    i128 max_abs_half_walsh = 0;
    std::vector<Witness> witnesses;
    std::vector<NearestAffine> nearest;
    EnumStats stats;
    double seconds = 0.0;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

inline nlohmann::json json_int(i128 v) {
    if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
    if (v > 0 && static_cast<u128>(v) <= UINT64_MAX) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

inline nlohmann::json json_uint(u128 v) {
    if (v <= UINT64_MAX) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

inline i128 json_to_i128(const nlohmann::json& j) {
    if (j.is_number_unsigned()) return static_cast<i128>(j.get<std::uint64_t>());
    if (j.is_number_integer()) return static_cast<i128>(j.get<std::int64_t>());
    return i128_from_string(j.get<std::string>());
}

inline u128 json_to_u128(const nlohmann::json& j) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    i128 v = json_to_i128(j);
    if (v < 0) throw std::invalid_argument("negative value for unsigned field");
    return static_cast<u128>(v);
}

inline nlohmann::json report_to_json(const AnalysisReport& r) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : r.witnesses) {
        nlohmann::json funcs = nlohmann::json::array();
        for (Mask m : w.linear_functions) funcs.push_back(m);
        witnesses.push_back({{"path", w.path},
                             {"value", json_int(w.value)},
                             {"linear_functions", funcs},
                             {"truncated", w.truncated ? 1 : 0},
                             {"count", json_uint(w.count)}});
    }
    nlohmann::json nearest = nlohmann::json::array();
    for (const auto& a : r.nearest)
        nearest.push_back({{"w", a.w},
                           {"walsh", json_int(a.walsh)},
                           {"distance", json_int(a.distance)},
                           {"complement", a.complement ? 1 : 0}});
    return nlohmann::json{{"n", r.n},
                          {"p", r.monomial_count},
                          {"k", r.coefficient_count},
                          {"weight", json_int(r.weight)},
                          {"nonlinearity", json_int(r.nonlinearity)},
                          {"max_abs_walsh", json_int(checked_mul(2, r.max_abs_half_walsh))},
                          {"witnesses", witnesses},
                          {"nearest", nearest},
                          {"stats",
                           {{"nodes", r.stats.nodes},
                            {"leaves", r.stats.leaves},
                            {"pruned", r.stats.pruned},
                            {"seconds", r.seconds}}}};
}

inline AnalysisReport report_from_json(const nlohmann::json& j) {
    AnalysisReport r;
    r.n = j.at("n").get<int>();
    r.monomial_count = j.at("p").get<std::size_t>();
    r.coefficient_count = j.at("k").get<std::size_t>();
    r.weight = json_to_i128(j.at("weight"));
    r.nonlinearity = json_to_i128(j.at("nonlinearity"));
    r.max_abs_half_walsh = json_to_i128(j.at("max_abs_walsh")) / 2;
    for (const auto& w : j.at("witnesses")) {
        Witness wit;
        wit.path = w.at("path").get<std::string>();
        wit.value = json_to_i128(w.at("value"));
        for (const auto& m : w.at("linear_functions")) wit.linear_functions.push_back(m.get<Mask>());
        wit.truncated = w.at("truncated").get<int>() != 0;
        wit.count = json_to_u128(w.at("count"));
        r.witnesses.push_back(std::move(wit));
    }
    for (const auto& a : j.at("nearest")) {
        NearestAffine na;
        na.w = a.at("w").get<Mask>();
        na.walsh = json_to_i128(a.at("walsh"));
        na.distance = json_to_i128(a.at("distance"));
        na.complement = a.at("complement").get<int>() != 0;
        r.nearest.push_back(na);
    }
    const auto& s = j.at("stats");
    r.stats.nodes = s.at("nodes").get<std::uint64_t>();
    r.stats.leaves = s.at("leaves").get<std::uint64_t>();
    r.stats.pruned = s.at("pruned").get<std::uint64_t>();
    r.seconds = s.at("seconds").get<double>();
    return r;
}

/// Formats a linear function as "x2+x5" style text ("0" for w = 0).
inline std::string linear_function_name(Mask w, int n) {
    if (w == 0) return "0";
    std::string out;
    for (int idx = 1; idx <= n; ++idx)
        if (w & variable_mask(idx, n)) {
            if (!out.empty()) out += "+";
            out += "x" + std::to_string(idx);
        }
    return out;
}

inline void print_report_text(const AnalysisReport& r, std::ostream& os) {
    os << "n = " << r.n << ", p = " << r.monomial_count << ", k = " << r.coefficient_count << "\n";
    os << "weight = " << to_string(r.weight) << "\n";
    os << "max |W| = " << to_string(checked_mul(2, r.max_abs_half_walsh)) << "  (max |F| = "
       << to_string(r.max_abs_half_walsh) << ")\n";
    os << "nonlinearity = " << to_string(r.nonlinearity) << "\n";
    if (!r.witnesses.empty()) {
        os << "witness paths:\n";
        for (const auto& w : r.witnesses) {
            os << "  " << w.path << "  F=" << to_string(w.value) << "  rows:";
            if (w.truncated) {
                os << " " << to_string(w.count) << " linear functions (not enumerated)";
            } else {
                for (Mask m : w.linear_functions) os << " " << mask_to_hex(m);
            }
            os << "\n";
        }
    }
    if (!r.nearest.empty()) {
        os << "nearest affine functions:\n";
        for (const auto& a : r.nearest) {
            os << "  w=" << mask_to_hex(a.w) << " (" << linear_function_name(a.w, r.n) << ")"
               << (a.complement ? " + 1" : "") << "  W=" << to_string(a.walsh) << "  distance "
               << to_string(a.distance) << "\n";
        }
    }
    os << "stats: nodes=" << r.stats.nodes << " leaves=" << r.stats.leaves << " pruned=" << r.stats.pruned
       << " seconds=" << r.seconds << "\n";
}

}  // namespace anfnl
