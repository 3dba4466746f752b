#pragma once

// Cue phrases marking a sentence as background information under the
// heuristic backend. Matched case-insensitively as substrings.

#include <string>
#include <vector>

namespace atlas::data {

inline const std::vector<std::string>& background_cues() {
    static const std::vector<std::string> cues = {
        "is known to",
        "are known to",
        "is known that",
        "previous studies",
        "previous work",
        "previous research",
        "prior studies",
        "plays a role in",
        "play a role in",
        "plays an important role",
        "play an important role",
        "are a type of",
        "is a type of",
        "are a kind of",
        "is a kind of",
        "has been shown",
        "have been shown",
        "it is thought",
        "it is believed",
        "is essential for",
        "are essential for",
        "is important for",
        "are important for",
        "is the process",
        "are the process",
        "is defined as",
        "are defined as",
        "researchers have",
        "scientists have",
        "for many years",
        "has long been",
        "have long been",
        "in many organisms",
        "in most organisms",
    };
    return cues;
}

}  // namespace atlas::data
