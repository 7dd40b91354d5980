#pragma once

#include <span>
#include <string_view>

namespace contree {

struct CorpusEntry {
    std::string_view name;
    std::string_view text;
};

/// The graphs shipped in corpus/, compiled in.
std::span<const CorpusEntry> bundled_corpus();
const CorpusEntry* find_corpus(std::string_view name);

}  // namespace contree
