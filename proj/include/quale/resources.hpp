#pragma once

#include <filesystem>

#include "quale/noun_phrases.hpp"
#include "quale/qrkb.hpp"
#include "quale/templates.hpp"

namespace quale {

// $QUALE_DATA_DIR if set, otherwise the data directory the library was
// built against.
std::filesystem::path default_data_dir();

TemplateTable load_templates_file(const std::filesystem::path& path,
                                  TemplateTable::Coverage coverage = TemplateTable::Coverage::Complete);
Qrkb load_qrkb_file(const std::filesystem::path& path);
ChunkingExtractor load_chunker_file(const std::filesystem::path& path);

}  // namespace quale
