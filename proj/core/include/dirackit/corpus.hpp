#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dirackit {

// A built-in worked example: a complete input document, the verdict each of
// its declared checks must produce, and a note recording where the expected
// values come from.
struct CorpusItem {
  std::string id;
  std::string document;  // JSON text in the input-document format
  std::vector<std::pair<std::string, std::string>> expected;  // check, verdict
  std::string source;  // how the expected table was derived
};

const std::vector<CorpusItem>& corpus();
const CorpusItem* find_corpus_item(const std::string& id);

}  // namespace dirackit
