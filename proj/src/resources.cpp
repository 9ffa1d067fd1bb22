#include "quale/resources.hpp"

#include <cstdlib>

#include "quale/corpus.hpp"
#include "quale/error.hpp"

#ifndef QUALE_DATA_DIR
#define QUALE_DATA_DIR "data"
#endif

namespace quale {

namespace {

template <typename F>
auto with_path(const std::filesystem::path& path, F&& f) {
  auto text = read_file(path);
  try {
    return f(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("QUALE_DATA_DIR"); env && *env) return env;
  return QUALE_DATA_DIR;
}

TemplateTable load_templates_file(const std::filesystem::path& path, TemplateTable::Coverage coverage) {
  return with_path(path, [&](const std::string& t) { return TemplateTable::parse(t, coverage); });
}

Qrkb load_qrkb_file(const std::filesystem::path& path) {
  return with_path(path, [](const std::string& t) { return load_qrkb(t); });
}

ChunkingExtractor load_chunker_file(const std::filesystem::path& path) {
  return with_path(path, [](const std::string& t) { return ChunkingExtractor::from_lexicon(t); });
}

}  // namespace quale
