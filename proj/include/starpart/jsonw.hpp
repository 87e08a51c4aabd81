#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace starpart {

// Streaming JSON writer. Object keys keep insertion order, doubles print
// with 17 significant digits (enough to round-trip IEEE values), objects
// are pretty-printed one key per line, and arrays stay on a single line.
// Non-finite doubles have no JSON representation and are emitted as the
// strings "inf", "-inf", or "nan".
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{', State::object); }
  JsonWriter& end_object() { return close(State::object); }
  JsonWriter& begin_array() { return open('[', State::array); }
  JsonWriter& end_array() { return close(State::array); }

  JsonWriter& key(std::string_view name) {
    separator();
    append_string(name);
    out_ += ": ";
    pending_value_ = true;
    return *this;
  }

  JsonWriter& value(std::string_view s) {
    separator();
    append_string(s);
    return *this;
  }
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& value(bool b) {
    separator();
    out_ += b ? "true" : "false";
    return *this;
  }
  JsonWriter& value(double d) {
    if (!std::isfinite(d)) {
      return value(std::isnan(d) ? "nan" : (d > 0 ? "inf" : "-inf"));
    }
    separator();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    out_ += buf;
    return *this;
  }
  JsonWriter& value(std::int64_t n) {
    separator();
    char buf[24];
    std::snprintf(buf, sizeof buf, "%" PRId64, n);
    out_ += buf;
    return *this;
  }
  JsonWriter& value(std::uint64_t n) {
    separator();
    char buf[24];
    std::snprintf(buf, sizeof buf, "%" PRIu64, n);
    out_ += buf;
    return *this;
  }
  JsonWriter& value(int n) { return value(static_cast<std::int64_t>(n)); }

  // Finish the document: a trailing newline, then hand the text over.
  std::string take() {
    out_ += '\n';
    return std::move(out_);
  }

 private:
  enum class State { object, array };

  JsonWriter& open(char ch, State st) {
    separator();
    out_ += ch;
    stack_.push_back(st);
    count_.push_back(0);
    return *this;
  }

  JsonWriter& close(State st) {
    const bool had_elements = count_.back() > 0;
    stack_.pop_back();
    count_.pop_back();
    if (st == State::object) {
      if (had_elements) newline_indent();
      out_ += '}';
    } else {
      out_ += ']';
    }
    return *this;
  }

  // Comma/indent bookkeeping before every element; a value directly after
  // key() sits on the key's line instead.
  void separator() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (stack_.empty()) return;  // the single top-level value
    if (stack_.back() == State::array) {
      if (count_.back() > 0) out_ += ", ";
    } else {
      if (count_.back() > 0) out_ += ',';
      newline_indent();
    }
    ++count_.back();
  }

  void newline_indent() {
    out_ += '\n';
    out_.append(2 * stack_.size(), ' ');
  }

  void append_string(std::string_view s) {
    out_ += '"';
    for (const char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<State> stack_;
  std::vector<int> count_;
  bool pending_value_ = false;
};

}  // namespace starpart
