#pragma once

#include <string>
#include <vector>

#include "twistvol/diagram.hpp"

namespace twistvol {

struct CorpusEntry {
  std::string name;
  std::string family;
  LinkDiagram diagram;
};

/// Built-in diagrams with at most 12 crossings, in a fixed order.
const std::vector<CorpusEntry>& corpus();
/// Throws InputError for an unknown name.
const CorpusEntry& corpus_entry(const std::string& name);

}  // namespace twistvol
