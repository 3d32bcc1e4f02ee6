#pragma once

// Run manifests and deterministic report serialization for the command-line
// tool. Every run writes its artifacts plus one manifest.json describing the
// invocation. Reruns with the same inputs and seed must produce byte-identical
// files, so nothing here depends on locale, hash order, or wall-clock time
// (the timestamp honors SOURCE_DATE_EPOCH): key order is fixed by the caller
// and doubles are printed with %.17g, which round-trips exactly.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace iia {

inline constexpr const char* kToolName = "iiaflow";
inline constexpr const char* kToolVersion = "0.1.0";

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out;
}

// JSON has no representation for non-finite values; they become null.
inline std::string json_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Streaming pretty-printer with explicit structure calls. The caller fixes
// the key order, which is what makes the output reproducible.
class JsonWriter {
 public:
  JsonWriter() { levels_.push_back({0}); }

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(const std::string& name) {
    separate();
    os_ << '"' << json_escape(name) << "\": ";
    have_key_ = true;
  }

  void value(const std::string& s) { scalar('"' + json_escape(s) + '"'); }
  void value(const char* s) { value(std::string(s)); }
  void value(double x) { scalar(json_double(x)); }
  void value(bool b) { scalar(b ? "true" : "false"); }
  void value(int x) { scalar(std::to_string(x)); }
  void value(long long x) { scalar(std::to_string(x)); }
  // caller guarantees the text is valid JSON (used to inline config files)
  void raw(const std::string& text) { scalar(text); }
  void null() { scalar("null"); }

  std::string str() const { return os_.str() + "\n"; }

 private:
  struct Level {
    int count = 0;
  };
  std::vector<Level> levels_;
  std::ostringstream os_;
  bool have_key_ = false;

  void separate() {
    if (have_key_) {
      have_key_ = false;
      return;
    }
    Level& l = levels_.back();
    if (levels_.size() > 1) {
      if (l.count > 0) os_ << ',';
      os_ << '\n' << std::string(2 * (levels_.size() - 1), ' ');
    }
    ++l.count;
  }

  void open(char ch) {
    separate();
    os_ << ch;
    levels_.push_back({0});
  }

  void close(char ch) {
    Level l = levels_.back();
    levels_.pop_back();
    if (l.count > 0) os_ << '\n' << std::string(2 * (levels_.size() - 1), ' ');
    os_ << ch;
  }

  void scalar(const std::string& text) {
    separate();
    os_ << text;
  }
};

// UTC, second resolution. SOURCE_DATE_EPOCH overrides the clock so that
// archived runs can be reproduced bit for bit.
inline std::string run_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ManifestInput {
  std::string path;     // as given on the command line
  std::string content;  // file text; inlined verbatim when it is JSON
  bool is_json = true;
};

struct RunManifest {
  std::string command;
  std::vector<ManifestInput> inputs;
  std::vector<std::string> artifacts;  // basenames next to the manifest
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::string outcome;  // one-line summary
  int exit_code = 0;

  std::string to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("tool");
    w.value(kToolName);
    w.key("version");
    w.value(kToolVersion);
    w.key("command");
    w.value(command);
    w.key("timestamp");
    w.value(run_timestamp());
    w.key("inputs");
    w.begin_array();
    for (const auto& in : inputs) {
      w.begin_object();
      w.key("path");
      w.value(in.path);
      w.key("content");
      if (in.is_json)
        w.raw(in.content);
      else
        w.value(in.content);
      w.end_object();
    }
    w.end_array();
    if (has_seed) {
      w.key("seed");
      w.value(static_cast<long long>(seed));
    }
    w.key("artifacts");
    w.begin_array();
    for (const auto& a : artifacts) w.value(a);
    w.end_array();
    w.key("outcome");
    w.value(outcome);
    w.key("exit_code");
    w.value(exit_code);
    w.end_object();
    return w.str();
  }
};

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed while writing " + path);
}

inline std::string trim_trailing_ws(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

}  // namespace iia
