#pragma once

// Discretization of attribute values into 10 fixed-width bins fit on the
// train split, control-token rendering, and the test-time bin policies
// (oracle, per-type mode, per-type mean, lay/technical extremes).

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "atlas/attributes.hpp"
#include "atlas/corpus.hpp"
#include "atlas/errors.hpp"

namespace atlas::controls {

enum class Attribute { L, R, BG, CWE };

inline constexpr std::array<Attribute, 4> kAttributes = {
    Attribute::L, Attribute::R, Attribute::BG, Attribute::CWE};

inline std::string to_string(Attribute a) {
    switch (a) {
        case Attribute::L: return "L";
        case Attribute::R: return "R";
        case Attribute::BG: return "BG";
        default: return "CWE";
    }
}

inline double attribute_value(const attributes::AttributeVector& v, Attribute a) {
    switch (a) {
        case Attribute::L: return static_cast<double>(v.length_chars);
        case Attribute::R: return v.fkgl;
        case Attribute::BG: return v.bg_pct;
        default: return v.cwe;
    }
}

inline constexpr int kNumBins = 10;

struct BinRange {
    double min = 0.0;
    double max = 0.0;
    int n_bins = kNumBins;
};

struct BinningScheme {
    BinRange l, r, bg, cwe;

    const BinRange& range(Attribute a) const {
        switch (a) {
            case Attribute::L: return l;
            case Attribute::R: return r;
            case Attribute::BG: return bg;
            default: return cwe;
        }
    }
    BinRange& range(Attribute a) {
        return const_cast<BinRange&>(
            static_cast<const BinningScheme*>(this)->range(a));
    }
};

// Per-attribute bin indices, each in [0, 9], canonical order L, R, BG, CWE.
struct BinRecord {
    int l = 0;
    int r = 0;
    int bg = 0;
    int cwe = 0;

    bool operator==(const BinRecord&) const = default;
    int get(Attribute a) const {
        switch (a) {
            case Attribute::L: return l;
            case Attribute::R: return r;
            case Attribute::BG: return bg;
            default: return cwe;
        }
    }
    void set(Attribute a, int v) {
        switch (a) {
            case Attribute::L: l = v; break;
            case Attribute::R: r = v; break;
            case Attribute::BG: bg = v; break;
            default: cwe = v; break;
        }
    }
};

struct ControlTokenSeq {
    BinRecord bins;
    std::string rendered;  // "<len_i> <rdb_j> <bg_k> <cwe_m> "
};

enum class BinPolicy { ORACLE, MODE, MEAN, LAY_EXTREME, TECHNICAL_EXTREME };

// ---------------------------------------------------------------------
// Fitting and binning

// Ranges are observed extrema over ALL reference summaries of the train
// pool (abstracts and both lay types share one bin vocabulary).
inline BinningScheme fit_bins(
    const std::vector<attributes::AttributeVector>& train_vectors) {
    if (train_vectors.size() < 2)
        throw ValidationError("fit_bins: need at least 2 attribute vectors");
    BinningScheme scheme;
    for (Attribute a : kAttributes) {
        double lo = attribute_value(train_vectors.front(), a);
        double hi = lo;
        for (const auto& v : train_vectors) {
            double x = attribute_value(v, a);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (!(hi > lo))
            throw DegenerateDataError("fit_bins: attribute " + to_string(a) +
                                      " is constant over the train pool");
        scheme.range(a) = BinRange{lo, hi, kNumBins};
    }
    return scheme;
}

// floor(10 * (v - min) / (max - min)); the max maps to bin 9 and
// out-of-range values clamp, so binning is total at test time.
inline int bin_of(double value, Attribute attribute, const BinningScheme& scheme) {
    const BinRange& r = scheme.range(attribute);
    double t = (value - r.min) / (r.max - r.min);
    int bin = static_cast<int>(std::floor(t * r.n_bins));
    return std::clamp(bin, 0, r.n_bins - 1);
}

inline BinRecord bin_record(const attributes::AttributeVector& v,
                            const BinningScheme& scheme) {
    BinRecord rec;
    for (Attribute a : kAttributes)
        rec.set(a, bin_of(attribute_value(v, a), a, scheme));
    return rec;
}

// ---------------------------------------------------------------------
// Token rendering

inline std::string render_prefix(const BinRecord& bins) {
    return "<len_" + std::to_string(bins.l) + "> <rdb_" + std::to_string(bins.r) +
           "> <bg_" + std::to_string(bins.bg) + "> <cwe_" +
           std::to_string(bins.cwe) + "> ";
}

inline ControlTokenSeq make_sequence(const BinRecord& bins) {
    return ControlTokenSeq{bins, render_prefix(bins)};
}

inline ControlTokenSeq control_tokens(const attributes::AttributeVector& v,
                                      const BinningScheme& scheme) {
    return make_sequence(bin_record(v, scheme));
}

// Inverse of render_prefix on the head of a source string; empty when the
// prefix is absent or malformed.
inline std::optional<BinRecord> parse_prefix(std::string_view source) {
    BinRecord rec;
    static const std::array<std::string_view, 4> names = {"len", "rdb", "bg", "cwe"};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::string open = "<" + std::string(names[i]) + "_";
        if (source.compare(pos, open.size(), open) != 0) return std::nullopt;
        pos += open.size();
        std::size_t close = source.find('>', pos);
        if (close == std::string_view::npos) return std::nullopt;
        int value = 0;
        for (std::size_t p = pos; p < close; ++p) {
            if (source[p] < '0' || source[p] > '9') return std::nullopt;
            value = value * 10 + (source[p] - '0');
        }
        if (close == pos || value >= kNumBins) return std::nullopt;
        rec.set(kAttributes[i], value);
        pos = close + 1;
        if (pos >= source.size() || source[pos] != ' ') return std::nullopt;
        ++pos;
    }
    return rec;
}

// ---------------------------------------------------------------------
// Test-time policies

using VectorsByType =
    std::map<corpus::SummaryType, std::vector<attributes::AttributeVector>>;

// Most common bin per type and attribute; ties break toward the lower
// bin index.
inline std::map<corpus::SummaryType, ControlTokenSeq> mode_bins(
    const VectorsByType& train_vectors_by_type, const BinningScheme& scheme) {
    std::map<corpus::SummaryType, ControlTokenSeq> out;
    for (const auto& [type, vectors] : train_vectors_by_type) {
        if (vectors.empty())
            throw ValidationError("mode_bins: no vectors for summary type " +
                                  corpus::to_string(type));
        BinRecord rec;
        for (Attribute a : kAttributes) {
            std::array<int, kNumBins> counts{};
            for (const auto& v : vectors)
                ++counts[static_cast<std::size_t>(
                    bin_of(attribute_value(v, a), a, scheme))];
            int best = 0;
            for (int b = 1; b < kNumBins; ++b)
                if (counts[static_cast<std::size_t>(b)] >
                    counts[static_cast<std::size_t>(best)])
                    best = b;
            rec.set(a, best);
        }
        out.emplace(type, make_sequence(rec));
    }
    return out;
}

// Bin of the per-type mean attribute value (the alternative reading of
// the test-time policy; see README).
inline std::map<corpus::SummaryType, ControlTokenSeq> mean_bins(
    const VectorsByType& train_vectors_by_type, const BinningScheme& scheme) {
    std::map<corpus::SummaryType, ControlTokenSeq> out;
    for (const auto& [type, vectors] : train_vectors_by_type) {
        if (vectors.empty())
            throw ValidationError("mean_bins: no vectors for summary type " +
                                  corpus::to_string(type));
        BinRecord rec;
        for (Attribute a : kAttributes) {
            double sum = 0.0;
            for (const auto& v : vectors) sum += attribute_value(v, a);
            rec.set(a, bin_of(sum / static_cast<double>(vectors.size()), a, scheme));
        }
        out.emplace(type, make_sequence(rec));
    }
    return out;
}

enum class Direction { LAY, TECHNICAL };

// Lowest (LAY) or highest (TECHNICAL) bin with >= min_count observations
// over the full train pool, for R, BG and CWE; length stays at the mode
// bin of the requested summary type.
inline ControlTokenSeq extreme_bins(const VectorsByType& train_vectors_by_type,
                                    const BinningScheme& scheme,
                                    Direction direction,
                                    corpus::SummaryType type,
                                    int min_count = 100) {
    auto modes = mode_bins(train_vectors_by_type, scheme);
    auto mode_it = modes.find(type);
    if (mode_it == modes.end())
        throw ValidationError("extreme_bins: no vectors for summary type " +
                              corpus::to_string(type));

    BinRecord rec;
    rec.l = mode_it->second.bins.l;
    for (Attribute a : {Attribute::R, Attribute::BG, Attribute::CWE}) {
        std::array<int, kNumBins> counts{};
        for (const auto& [t, vectors] : train_vectors_by_type)
            for (const auto& v : vectors)
                ++counts[static_cast<std::size_t>(
                    bin_of(attribute_value(v, a), a, scheme))];
        int chosen = -1;
        if (direction == Direction::LAY) {
            for (int b = 0; b < kNumBins; ++b)
                if (counts[static_cast<std::size_t>(b)] >= min_count) {
                    chosen = b;
                    break;
                }
        } else {
            for (int b = kNumBins - 1; b >= 0; --b)
                if (counts[static_cast<std::size_t>(b)] >= min_count) {
                    chosen = b;
                    break;
                }
        }
        if (chosen < 0)
            throw DegenerateDataError(
                "extreme_bins: no bin of attribute " + to_string(a) + " has at least " +
                std::to_string(min_count) + " observations");
        rec.set(a, chosen);
    }
    return make_sequence(rec);
}

// ---------------------------------------------------------------------
// Persistence

inline nlohmann::ordered_json scheme_to_json(const BinningScheme& scheme) {
    nlohmann::ordered_json j;
    for (Attribute a : kAttributes) {
        const BinRange& r = scheme.range(a);
        j[to_string(a)] = {{"min", r.min}, {"max", r.max}, {"n_bins", r.n_bins}};
    }
    return j;
}

inline BinningScheme scheme_from_json(const nlohmann::json& j) {
    BinningScheme scheme;
    for (Attribute a : kAttributes) {
        const std::string name = to_string(a);
        if (!j.contains(name))
            throw ValidationError("binning scheme: missing attribute '" + name + "'");
        const auto& e = j.at(name);
        BinRange r;
        r.min = e.at("min").get<double>();
        r.max = e.at("max").get<double>();
        r.n_bins = e.value("n_bins", kNumBins);
        if (r.n_bins != kNumBins)
            throw ValidationError("binning scheme: n_bins must be 10");
        if (!(r.max > r.min))
            throw DegenerateDataError("binning scheme: attribute " + name +
                                      " has max <= min");
        scheme.range(a) = r;
    }
    return scheme;
}

inline void save_scheme(const std::string& path, const BinningScheme& scheme) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << scheme_to_json(scheme).dump(2) << '\n';
}

inline BinningScheme load_scheme(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": JSON parse error: " + e.what());
    }
    return scheme_from_json(j);
}

}  // namespace atlas::controls
