#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "sqavoid/search.hpp"

namespace sqavoid {

struct ResultCache::Impl {
  std::mutex mu;
  std::unordered_map<std::uint64_t, SearchResult> entries;
  std::ofstream out;
};

ResultCache::ResultCache(std::string path)
    : path_(std::move(path)), impl_(std::make_shared<Impl>()) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    auto parsed = parse_line(line);
    if (!parsed) continue;
    auto it = impl_->entries.find(parsed->m);
    // Replay: later lines win unless they would downgrade an exact entry.
    if (it == impl_->entries.end() || parsed->exact || !it->second.exact)
      impl_->entries[parsed->m] = std::move(*parsed);
  }
  in.close();
  impl_->out.open(path_, std::ios::app);
}

std::string ResultCache::directory_from_env() {
  const char* dir = std::getenv("SQAVOID_CACHE_DIR");
  return dir ? dir : "";
}

std::optional<SearchResult> ResultCache::lookup(std::uint64_t m) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->entries.find(m);
  if (it == impl_->entries.end()) return std::nullopt;
  return it->second;
}

void ResultCache::append(const SearchResult& r) {
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->entries.find(r.m);
  if (it == impl_->entries.end() || r.exact || !it->second.exact)
    impl_->entries[r.m] = r;
  if (impl_->out.is_open()) {
    impl_->out << format_line(r) << '\n';
    impl_->out.flush();
  }
}

std::string ResultCache::format_line(const SearchResult& r) {
  std::ostringstream os;
  os << r.m << ',' << r.best_size << ',' << (r.exact ? 1 : 0) << ','
     << r.upper_bound << ',';
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    if (i) os << '-';
    os << r.witness[i];
  }
  return os.str();
}

std::optional<SearchResult> ResultCache::parse_line(const std::string& line) {
  if (line.empty()) return std::nullopt;
  std::istringstream is(line);
  SearchResult r;
  char sep = 0;
  int exact = 0;
  if (!(is >> r.m >> sep) || sep != ',') return std::nullopt;
  std::uint32_t best = 0;
  if (!(is >> best >> sep) || sep != ',') return std::nullopt;
  if (!(is >> exact >> sep) || sep != ',') return std::nullopt;
  if (!(is >> r.upper_bound >> sep) || sep != ',') return std::nullopt;
  r.best_size = best;
  r.lower_bound = best;
  r.exact = exact != 0;
  std::uint64_t v = 0;
  while (is >> v) {
    r.witness.push_back(v);
    if (!(is >> sep) || sep != '-') break;
  }
  if (r.witness.size() != r.best_size) return std::nullopt;
  return r;
}

}  // namespace sqavoid
