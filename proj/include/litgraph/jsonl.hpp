#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include <json.hpp>

#include "litgraph/error.hpp"

namespace litgraph {

using json = nlohmann::json;
// Preserves insertion order of keys; used for all file output so records
// have a stable field order and diffs are reproducible.
using ojson = nlohmann::ordered_json;

// Calls fn(line_number, record) for every non-empty line. Throws ParseError
// with the offending line number on malformed JSON.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const json&)>& fn);

class JsonlWriter {
 public:
  explicit JsonlWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw Error("cannot open for writing: " + path.string());
  }

  void write(const ojson& record) { out_ << record.dump() << '\n'; }

  void close() { out_.close(); }

 private:
  std::ofstream out_;
};

// Writes through a temp file in the same directory, renaming on success, so a
// failed stage never leaves a partial output behind.
class AtomicFile {
 public:
  explicit AtomicFile(const std::filesystem::path& path)
      : final_path_(path), tmp_path_(path.string() + ".tmp"), out_(tmp_path_) {
    if (!out_) throw Error("cannot open for writing: " + tmp_path_.string());
  }

  ~AtomicFile() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_path_, ec);
    }
  }

  std::ofstream& stream() { return out_; }

  void write_line(const ojson& record) { out_ << record.dump() << '\n'; }

  void commit() {
    out_.close();
    std::filesystem::rename(tmp_path_, final_path_);
    committed_ = true;
  }

 private:
  std::filesystem::path final_path_;
  std::filesystem::path tmp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace litgraph
