#pragma once

#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "atlas/errors.hpp"

namespace atlas::jsonl {

// One JSON object per line. Blank lines are skipped; parse failures carry
// the file name and 1-based line number.
inline void for_each_line(
    const std::string& path,
    const std::function<void(std::size_t line_no, const nlohmann::json&)>& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        if (blank) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": JSON parse error: " + e.what());
        }
        fn(line_no, record);
    }
}

inline std::vector<nlohmann::json> read_file(const std::string& path) {
    std::vector<nlohmann::json> records;
    for_each_line(path, [&](std::size_t, const nlohmann::json& j) {
        records.push_back(j);
    });
    return records;
}

template <typename Range>
void write_file(const std::string& path, const Range& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    for (const auto& r : records) out << r.dump() << '\n';
}

}  // namespace atlas::jsonl
