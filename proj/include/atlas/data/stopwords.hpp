#pragma once

// Default English stopword list used by the content-word filter.

#include <set>
#include <sstream>
#include <string>
#include <string_view>

namespace atlas::data {

namespace detail {

inline constexpr std::string_view kStopwords = R"(
a about above after again against all am an and any are aren't as at be
because been before being below between both but by can cannot can't
could couldn't did didn't do does doesn't doing don't down during each
few for from further had hadn't has hasn't have haven't having he he'd
he'll her here here's hers herself he's him himself his how how's i i'd
if i'll i'm in into is isn't it its it's itself i've let's me more most
mustn't my myself no nor not of off on once only or other ought our ours
ourselves out over own same shan't she she'd she'll she's should
shouldn't so some such than that that's the their theirs them themselves
then there there's these they they'd they'll they're they've this those
through to too under until up very was wasn't we we'd we'll we're were
weren't we've what what's when when's where where's which while who whom
who's why why's will with won't would wouldn't you you'd you'll your
you're yours yourself yourselves you've also may might must shall upon
within without however therefore thus via et al e.g i.e
)";

}  // namespace detail

inline const std::set<std::string>& stopwords() {
    static const std::set<std::string> words = [] {
        std::set<std::string> set;
        std::istringstream in{std::string(detail::kStopwords)};
        std::string w;
        while (in >> w) set.insert(w);
        return set;
    }();
    return words;
}

}  // namespace atlas::data
