#pragma once

// Line-oriented session files:
//
//   ring Q[x,y,z] grevlex          (field Q or GF(p); order optional, grevlex by default)
//   ideal I = x, y
//   module M = coker [[x, y], [z, x]] twists [0, 0]
//   module N = quotient I          (R/I)
//   module F = free [0, 1]
//   task check-oic M max_i=2
//
// '#' starts a comment. Matrices are written row by row.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forge/parse.hpp"
#include "forge/presentation.hpp"

namespace forge {

class SessionError : public InputError {
 public:
  SessionError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        message_(what) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_, column_;
  std::string message_;
};

enum class ArgType { Int, Count, Bool, Word, Name, NameList, Poly, PolyList };

struct TaskKind {
  std::string name;
  bool needs_target = true;  // corpus names its output instead
  std::map<std::string, ArgType> args;
};

inline const std::vector<TaskKind>& task_kinds() {
  static const std::vector<TaskKind> kinds{
      {"resolve", true, {{"over", ArgType::Name}, {"max_len", ArgType::Count}}},
      {"betti", true, {{"over", ArgType::Name}, {"max_len", ArgType::Count}}},
      {"grade", true, {{"over", ArgType::Name}}},
      {"embed", true, {{"x", ArgType::PolyList}, {"route", ArgType::Word}, {"D", ArgType::Int}, {"split", ArgType::Bool}}},
      {"shamash", true, {{"x", ArgType::Poly}, {"length", ArgType::Count}, {"D", ArgType::Int}}},
      {"check-oic", true,
       {{"over", ArgType::Name}, {"max_i", ArgType::Count}, {"probes", ArgType::Count}, {"seed", ArgType::Count}}},
      {"nzd-check", true, {{"over", ArgType::Name}}},
      {"tor-seq", true, {{"N", ArgType::NameList}, {"seed", ArgType::Count}}},
      {"corpus", false,
       {{"count", ArgType::Count}, {"seed", ArgType::Count}, {"check", ArgType::Word}, {"probes", ArgType::Count}}},
  };
  return kinds;
}

inline const TaskKind* find_task_kind(const std::string& name) {
  for (const auto& k : task_kinds())
    if (k.name == name) return &k;
  return nullptr;
}

inline const std::map<std::string, std::vector<std::string>>& word_choices() {
  static const std::map<std::string, std::vector<std::string>> choices{
      {"route", {"auto", "base", "dual_cone", "tor_syzygy"}},
      {"check", {"oic", "none"}},
  };
  return choices;
}

struct TaskSpec {
  std::string kind;
  std::string target;
  std::vector<std::pair<std::string, std::string>> args;
  std::size_t line = 0;

  std::optional<std::string> arg(const std::string& key) const {
    for (const auto& [k, v] : args)
      if (k == key) return v;
    return std::nullopt;
  }
  long long int_arg(const std::string& key, long long fallback) const {
    auto v = arg(key);
    return v ? std::stoll(*v) : fallback;
  }
  bool bool_arg(const std::string& key, bool fallback) const {
    auto v = arg(key);
    return v ? *v == "true" : fallback;
  }
};

template <CoefficientField K>
struct Binding {
  std::string name;
  std::optional<Ideal<K>> ideal;            // set for `ideal` lines
  std::optional<Presentation<K>> module;    // set for `module` lines
  std::size_t line = 0;

  bool is_ideal() const { return ideal.has_value(); }
  // Ideals act as the cyclic module R/I where a module is expected.
  Presentation<K> as_module(const RingPtr<K>& R) const { return module ? *module : quotient_presentation(*ideal, R); }
};

template <CoefficientField K>
struct Session {
  std::string field_spec;  // "Q" or "GF(p)"
  RingPtr<K> ring;
  std::vector<Binding<K>> bindings;
  std::vector<TaskSpec> tasks;

  const Binding<K>* find(const std::string& name) const {
    for (const auto& b : bindings)
      if (b.name == name) return &b;
    return nullptr;
  }

  std::string serialize() const {
    std::string out = "ring " + field_spec + "[";
    const auto& vars = ring->variables();
    for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? "," : "") + vars[i];
    out += "] " + to_string(ring->order()) + "\n";
    auto ints = [](const std::vector<int>& v) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
      return s + "]";
    };
    for (const auto& b : bindings) {
      if (b.is_ideal()) {
        out += "ideal " + b.name + " =";
        for (std::size_t i = 0; i < b.ideal->generators.size(); ++i)
          out += (i ? ", " : " ") + b.ideal->generators[i].to_string();
        out += "\n";
        continue;
      }
      const auto& P = *b.module;
      out += "module " + b.name + " = coker [";
      if (P.relations.cols() > 0) {
        auto rows = P.relations.to_strings();
        for (std::size_t i = 0; i < rows.size(); ++i) {
          out += (i ? ", [" : "[");
          for (std::size_t j = 0; j < rows[i].size(); ++j) out += (j ? ", " : "") + rows[i][j];
          out += "]";
        }
      }
      out += "] twists " + ints(P.generators().degrees) + "\n";
    }
    for (const auto& t : tasks) {
      out += "task " + t.kind + " " + t.target;
      for (const auto& [k, v] : t.args) out += " " + k + "=" + v;
      out += "\n";
    }
    return out;
  }
};

namespace detail {

// Cursor over one line; columns are 1-based.
class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what, std::optional<std::size_t> at = std::nullopt) const {
    throw SessionError(line_, (at ? *at : pos_) + 1, what);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  // identifier: letters, digits, '_' and '-' (task kinds contain '-')
  std::string word(const std::string& what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '-'))
      ++pos_;
    if (start == pos_) fail("expected " + what);
    return std::string(text_.substr(start, pos_ - start));
  }
  // Text up to the matching close bracket of a '[' at the cursor, exclusive.
  std::size_t position() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  std::string_view text() const { return text_; }
  std::size_t line() const { return line_; }
  std::string_view rest() {
    skip_space();
    return text_.substr(pos_);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

// Splits at commas outside parentheses and brackets; returns (offset, piece) pairs.
inline std::vector<std::pair<std::size_t, std::string_view>> split_top_level(std::string_view s, std::size_t offset) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      out.emplace_back(offset + start, s.substr(start, i - start));
      start = i + 1;
    } else if (s[i] == '(' || s[i] == '[') {
      ++depth;
    } else if (s[i] == ')' || s[i] == ']') {
      --depth;
    }
  }
  return out;
}

inline bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

template <CoefficientField K>
Polynomial<K> parse_at(const RingPtr<K>& R, const LineCursor& cur, std::string_view text, std::size_t offset,
                       bool homogeneous = true) {
  std::size_t lead = 0;
  while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
  try {
    auto p = parse_polynomial(R, text);
    if (homogeneous && !p.homogeneity().homogeneous()) cur.fail("inhomogeneous polynomial " + p.to_string(), offset + lead);
    return p;
  } catch (const ParseError& e) {
    std::string msg = e.what();
    auto colon = msg.find(": ");
    cur.fail(colon == std::string::npos ? msg : msg.substr(colon + 2), offset + e.column() - 1);
  }
}

// The bracketed text starting at the cursor (which must sit on '['), brackets included.
inline std::string_view bracketed(LineCursor& cur) {
  if (!cur.peek('[')) cur.fail("expected '['");
  std::size_t start = cur.position();
  int depth = 0;
  auto t = cur.text();
  for (std::size_t i = start; i < t.size(); ++i) {
    if (t[i] == '[') ++depth;
    if (t[i] == ']' && --depth == 0) {
      cur.seek(i + 1);
      return t.substr(start, i + 1 - start);
    }
  }
  cur.fail("unbalanced '['", start);
}

inline std::vector<int> parse_int_list(LineCursor& cur) {
  std::size_t start = cur.position();
  auto body = bracketed(cur);
  std::vector<int> out;
  auto inner = body.substr(1, body.size() - 2);
  if (blank(inner)) return out;
  for (auto [off, piece] : split_top_level(inner, start + 1)) {
    std::string s(piece);
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
            s.end());
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      out.push_back(v);
    } catch (const std::exception&) {
      cur.fail("expected an integer", off);
    }
  }
  return out;
}

inline bool is_count(const std::string& s) {
  return !s.empty() && s.size() < 10 && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c); });
}

inline bool is_int(const std::string& s) { return is_count(s) || (s.size() > 1 && s[0] == '-' && is_count(s.substr(1))); }

template <CoefficientField K>
void parse_ideal_line(Session<K>& S, LineCursor& cur) {
  Binding<K> b;
  b.line = cur.line();
  std::size_t at = (cur.skip_space(), cur.position());
  b.name = cur.word("a name");
  if (S.find(b.name)) cur.fail("name '" + b.name + "' is already bound", at);
  cur.expect('=');
  std::size_t start = (cur.skip_space(), cur.position());
  Ideal<K> I;
  auto rest = cur.text().substr(start);
  if (!blank(rest))
    for (auto [off, piece] : split_top_level(rest, start)) {
      if (blank(piece)) cur.fail("empty generator", off);
      auto p = parse_at(S.ring, cur, piece, off);
      if (!p.is_zero()) I.generators.push_back(p);
    }
  b.ideal = std::move(I);
  S.bindings.push_back(std::move(b));
}

template <CoefficientField K>
void parse_module_line(Session<K>& S, LineCursor& cur) {
  const RingPtr<K>& R = S.ring;
  Binding<K> b;
  b.line = cur.line();
  std::size_t at = (cur.skip_space(), cur.position());
  b.name = cur.word("a name");
  if (S.find(b.name)) cur.fail("name '" + b.name + "' is already bound", at);
  cur.expect('=');
  std::size_t kw_at = (cur.skip_space(), cur.position());
  auto kw = cur.word("'coker', 'quotient' or 'free'");
  if (kw == "quotient") {
    std::size_t name_at = (cur.skip_space(), cur.position());
    auto name = cur.word("an ideal name");
    const auto* src = S.find(name);
    if (!src) cur.fail("unknown name '" + name + "'", name_at);
    if (!src->is_ideal()) cur.fail("'" + name + "' is not an ideal", name_at);
    b.module = quotient_presentation(*src->ideal, R);
  } else if (kw == "free") {
    auto twists = parse_int_list(cur);
    b.module = Presentation<K>::free(R, FreeModule(twists));
  } else if (kw == "coker") {
    std::size_t mat_at = (cur.skip_space(), cur.position());
    auto body = bracketed(cur);
    std::vector<std::vector<Polynomial<K>>> rows;
    auto inner = body.substr(1, body.size() - 2);
    if (!blank(inner))
      for (auto [roff, rtext] : split_top_level(inner, mat_at + 1)) {
        std::size_t lead = 0;
        while (lead < rtext.size() && std::isspace(static_cast<unsigned char>(rtext[lead]))) ++lead;
        auto r = rtext.substr(lead);
        while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.remove_suffix(1);
        if (r.size() < 2 || r.front() != '[' || r.back() != ']') cur.fail("expected a row '[...]'", roff + lead);
        std::vector<Polynomial<K>> row;
        auto rin = r.substr(1, r.size() - 2);
        if (!blank(rin))
          for (auto [eoff, etext] : split_top_level(rin, roff + lead + 1)) {
            if (blank(etext)) cur.fail("empty matrix entry", eoff);
            row.push_back(parse_at(R, cur, etext, eoff));
          }
        if (!rows.empty() && row.size() != rows[0].size()) cur.fail("rows have different lengths", roff + lead);
        rows.push_back(std::move(row));
      }
    std::vector<int> twists;
    if (!cur.done()) {
      std::size_t tw_at = (cur.skip_space(), cur.position());
      if (cur.word("'twists'") != "twists") cur.fail("expected 'twists'", tw_at);
      std::size_t list_at = (cur.skip_space(), cur.position());
      twists = parse_int_list(cur);
      if (!rows.empty() && twists.size() != rows.size())
        cur.fail("expected " + std::to_string(rows.size()) + " twists, one per row", list_at);
    } else {
      if (rows.empty()) cur.fail("an empty matrix needs 'twists' to fix the rank");
      twists.assign(rows.size(), 0);
    }
    FreeModule target(twists);
    std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    std::vector<VectorElement<K>> cols;
    std::vector<int> degs;
    for (std::size_t j = 0; j < ncols; ++j) {
      VectorElement<K> c;
      for (const auto& row : rows) c.push_back(row[j]);
      std::optional<int> d;
      try {
        d = vector_degree(c, target);
      } catch (const InhomogeneousError& e) {
        cur.fail("column " + std::to_string(j + 1) + " is not homogeneous for these twists", mat_at);
      }
      if (!d) continue;  // zero column
      cols.push_back(std::move(c));
      degs.push_back(*d);
    }
    b.module = Presentation<K>{ModuleMap<K>(R, FreeModule(degs), target, cols)};
  } else {
    cur.fail("expected 'coker', 'quotient' or 'free'", kw_at);
  }
  if (!cur.done()) cur.fail("unexpected text after module");
  S.bindings.push_back(std::move(b));
}

template <CoefficientField K>
void check_arg(const Session<K>& S, const LineCursor& cur, const std::string& key, const std::string& value,
               ArgType type, std::size_t at) {
  auto name_ok = [&](const std::string& n, std::size_t off) {
    if (!S.find(n)) cur.fail("unknown name '" + n + "'", off);
  };
  switch (type) {
    case ArgType::Int:
      if (!is_int(value)) cur.fail(key + " expects an integer", at);
      break;
    case ArgType::Count:
      if (!is_count(value)) cur.fail(key + " expects a non-negative integer", at);
      break;
    case ArgType::Bool:
      if (value != "true" && value != "false") cur.fail(key + " expects true or false", at);
      break;
    case ArgType::Word: {
      const auto& ch = word_choices().at(key);
      if (std::find(ch.begin(), ch.end(), value) == ch.end()) cur.fail("unknown " + key + " '" + value + "'", at);
      break;
    }
    case ArgType::Name:
      name_ok(value, at);
      if (key == "over" && !S.find(value)->is_ideal()) cur.fail("'" + value + "' is not an ideal", at);
      break;
    case ArgType::NameList:
      for (auto [off, piece] : split_top_level(value, at)) name_ok(std::string(piece), off);
      break;
    case ArgType::Poly:
      parse_at(S.ring, cur, value, at);
      break;
    case ArgType::PolyList:
      for (auto [off, piece] : split_top_level(value, at)) {
        if (blank(piece)) cur.fail("empty element in " + key, off);
        parse_at(S.ring, cur, piece, off);
      }
      break;
  }
}

template <CoefficientField K>
void parse_task_line(Session<K>& S, LineCursor& cur) {
  TaskSpec t;
  t.line = cur.line();
  std::size_t kind_at = (cur.skip_space(), cur.position());
  t.kind = cur.word("a task kind");
  const TaskKind* kind = find_task_kind(t.kind);
  if (!kind) cur.fail("unknown task kind '" + t.kind + "'", kind_at);
  std::size_t target_at = (cur.skip_space(), cur.position());
  t.target = cur.word("a name");
  const auto* target = S.find(t.target);
  if (kind->needs_target && !target) cur.fail("unknown name '" + t.target + "'", target_at);
  if (t.kind == "nzd-check" && !target->is_ideal()) cur.fail("nzd-check needs an ideal", target_at);
  std::set<std::string> seen;
  while (!cur.done()) {
    std::size_t key_at = cur.position();
    auto key = cur.word("key=value");
    if (!cur.peek('=')) cur.fail("expected '=' after " + key);
    cur.expect('=');
    std::size_t val_at = cur.position();
    auto t_ = cur.text();
    std::size_t end = val_at;
    while (end < t_.size() && !std::isspace(static_cast<unsigned char>(t_[end]))) ++end;
    std::string value(t_.substr(val_at, end - val_at));
    if (value.empty()) cur.fail("missing value for " + key, val_at);
    cur.seek(end);
    auto it = kind->args.find(key);
    if (it == kind->args.end()) cur.fail("task " + t.kind + " takes no argument '" + key + "'", key_at);
    if (!seen.insert(key).second) cur.fail("argument '" + key + "' given twice", key_at);
    check_arg(S, cur, key, value, it->second, val_at);
    t.args.emplace_back(key, value);
  }
  if ((t.kind == "embed" || t.kind == "shamash") && !t.arg("x"))
    cur.fail("task " + t.kind + " needs x=...", target_at);
  S.tasks.push_back(std::move(t));
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == '\n') {
      auto line = text.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      auto hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      out.push_back(line);
      start = i + 1;
    }
  return out;
}

struct RingHeader {
  std::string field;  // "Q" or "GF(p)"
  std::uint32_t characteristic = 0;
  std::vector<std::string> variables;
  MonomialOrder order = MonomialOrder::grevlex;
  std::size_t line = 0;
};

inline RingHeader parse_ring_header(std::string_view text) {
  auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (blank(lines[n])) continue;
    LineCursor cur(lines[n], n + 1);
    std::size_t kw_at = (cur.skip_space(), cur.position());
    if (cur.word("'ring'") != "ring") cur.fail("the first statement must be 'ring'", kw_at);
    RingHeader h;
    h.line = n + 1;
    std::size_t f_at = (cur.skip_space(), cur.position());
    auto f = cur.word("a field");
    if (f == "Q" || f == "QQ") {
      h.field = "Q";
    } else if (f == "GF") {
      cur.expect('(');
      std::size_t p_at = (cur.skip_space(), cur.position());
      auto p = cur.word("a prime");
      if (!is_count(p)) cur.fail("expected a prime", p_at);
      auto v = std::stoull(p);
      if (v < 2 || v >= (1ull << 31)) cur.fail("characteristic must be a prime below 2^31", p_at);
      h.characteristic = static_cast<std::uint32_t>(v);
      cur.expect(')');
      h.field = "GF(" + p + ")";
    } else {
      cur.fail("unknown field '" + f + "' (use Q or GF(p))", f_at);
    }
    cur.expect('[');
    std::set<std::string> seen;
    while (true) {
      std::size_t v_at = (cur.skip_space(), cur.position());
      auto v = cur.word("a variable");
      if (!std::isalpha(static_cast<unsigned char>(v[0])) || v.find('-') != std::string::npos)
        cur.fail("bad variable name '" + v + "'", v_at);
      if (!seen.insert(v).second) cur.fail("variable '" + v + "' repeated", v_at);
      h.variables.push_back(v);
      if (cur.peek(']')) break;
      cur.expect(',');
    }
    cur.expect(']');
    if (!cur.done()) {
      std::size_t o_at = (cur.skip_space(), cur.position());
      auto o = cur.word("a monomial order");
      try {
        h.order = parse_order(o);
      } catch (const Error&) {
        cur.fail("unknown monomial order '" + o + "'", o_at);
      }
    }
    if (!cur.done()) cur.fail("unexpected text after ring");
    return h;
  }
  throw SessionError(1, 1, "empty session: expected 'ring'");
}

}  // namespace detail

template <CoefficientField K>
Session<K> parse_session_with(std::string_view text, K field) {
  auto header = detail::parse_ring_header(text);
  Session<K> S;
  S.field_spec = header.field;
  try {
    S.ring = make_ring<K>(header.variables, std::move(field), header.order);
  } catch (const Error& e) {
    throw SessionError(header.line, 1, e.what());
  }
  auto lines = detail::split_lines(text);
  for (std::size_t n = header.line; n < lines.size(); ++n) {
    if (detail::blank(lines[n])) continue;
    detail::LineCursor cur(lines[n], n + 1);
    std::size_t kw_at = (cur.skip_space(), cur.position());
    auto kw = cur.word("a statement");
    if (kw == "ideal")
      detail::parse_ideal_line(S, cur);
    else if (kw == "module")
      detail::parse_module_line(S, cur);
    else if (kw == "task")
      detail::parse_task_line(S, cur);
    else if (kw == "ring")
      cur.fail("only one 'ring' statement is allowed", kw_at);
    else
      cur.fail("unknown statement '" + kw + "'", kw_at);
  }
  return S;
}

using AnySession = std::variant<Session<Rationals>, Session<PrimeField>>;

inline AnySession parse_session(std::string_view text) {
  auto header = detail::parse_ring_header(text);
  if (header.field == "Q") return parse_session_with(text, Rationals{});
  try {
    PrimeField F(header.characteristic);
    return parse_session_with(text, F);
  } catch (const SessionError&) {
    throw;
  } catch (const Error& e) {
    throw SessionError(header.line, 1, e.what());
  }
}

}  // namespace forge
