#include "taxo/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "taxo/errors.hpp"

namespace taxo {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) b++;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) e--;
  return std::string(s.substr(b, e - b));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Finishes a corpus: checks id uniqueness and accumulates source counts.
void finalize(Corpus& corpus) {
  std::unordered_map<std::string, std::size_t> seen;
  std::set<std::string> duplicates;
  for (const Post& post : corpus.posts) {
    if (++seen[post.id] > 1) duplicates.insert(post.id);
    corpus.source_counts[post.source]++;
  }
  if (!duplicates.empty()) {
    std::string msg = "duplicate post ids:";
    for (const std::string& id : duplicates) msg += " " + id;
    throw InputError(msg);
  }
}

void add_post(Corpus& corpus, Post post, const std::string& where) {
  corpus.skips.total_records++;
  if (trim(post.body).empty()) {
    corpus.skips.skipped++;
    corpus.skips.reasons.push_back(where + ": empty body");
    return;
  }
  corpus.posts.push_back(std::move(post));
}

// --- CSV ------------------------------------------------------------------

// Splits one RFC-4180 record starting at `pos`. Returns false at end of
// input. Quoted fields may contain commas, escaped quotes ("") and newlines.
bool next_record(const std::string& text, std::size_t& pos,
                 std::size_t& line_no, std::vector<std::string>& fields) {
  fields.clear();
  if (pos >= text.size()) return false;
  std::string field;
  bool quoted = false;
  bool any = false;
  const std::size_t record_line = line_no;
  while (pos < text.size()) {
    char c = text[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field += '"';
          pos += 2;
        } else {
          quoted = false;
          pos++;
          if (pos < text.size() && text[pos] != ',' && text[pos] != '\r' &&
              text[pos] != '\n') {
            throw InputError("malformed quoting at line " +
                             std::to_string(line_no));
          }
        }
      } else {
        if (c == '\n') line_no++;
        field += c;
        pos++;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty())
        throw InputError("malformed quoting at line " + std::to_string(line_no));
      quoted = true;
      any = true;
      pos++;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
      pos++;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') pos++;
      pos++;
      line_no++;
      break;
    } else {
      field += c;
      any = true;
      pos++;
    }
  }
  if (quoted)
    throw InputError("unterminated quoted field starting near line " +
                     std::to_string(record_line));
  fields.push_back(std::move(field));
  if (!any && fields.size() == 1 && fields[0].empty()) {
    // blank line: try the next record
    return next_record(text, pos, line_no, fields);
  }
  return true;
}

}  // namespace

Corpus parse_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  const std::string text = read_file(path);
  std::size_t pos = 0;
  std::size_t line_no = 1;
  std::vector<std::string> fields;

  if (!next_record(text, pos, line_no, fields))
    throw InputError("empty CSV file: " + path.string());

  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < fields.size(); i++) col[trim(fields[i])] = i;

  auto lookup = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = col.find(name);
    if (it == col.end()) return std::nullopt;
    return it->second;
  };
  const auto body_col = lookup(schema.body);
  if (!body_col)
    throw InputError("CSV is missing the mapped body column '" + schema.body +
                     "': " + path.string());
  const auto id_col = lookup(schema.id);
  const auto source_col = lookup(schema.source);
  const auto thread_col = lookup(schema.thread_id);
  const auto author_col = lookup(schema.author);
  const auto ts_col = lookup(schema.timestamp);

  const std::string default_source = path.stem().string();
  auto get = [&](const std::vector<std::string>& row,
                 std::optional<std::size_t> c) -> std::optional<std::string> {
    if (!c || *c >= row.size()) return std::nullopt;
    std::string v = trim(row[*c]);
    if (v.empty()) return std::nullopt;
    return v;
  };

  Corpus corpus;
  std::size_t row_ordinal = 0;
  while (next_record(text, pos, line_no, fields)) {
    Post post;
    post.id = get(fields, id_col).value_or(std::to_string(row_ordinal));
    post.source = get(fields, source_col).value_or(default_source);
    post.thread_id = get(fields, thread_col);
    post.author = get(fields, author_col);
    post.timestamp = get(fields, ts_col);
    if (*body_col < fields.size()) post.body = fields[*body_col];
    add_post(corpus, std::move(post), "row " + std::to_string(row_ordinal));
    row_ordinal++;
  }
  finalize(corpus);
  return corpus;
}

// --- XML ------------------------------------------------------------------

namespace {

// Minimal parser for the canonical corpus schema: elements, text nodes, the
// five standard entities, comments, CDATA and an optional XML declaration.
class XmlCursor {
 public:
  XmlCursor(const std::string& text, const std::string& file)
      : text_(text), file_(file) {}

  void skip_prolog() {
    skip_misc();
    if (peek_starts("<?xml")) {
      std::size_t end = text_.find("?>", pos_);
      if (end == std::string::npos) fail("unterminated XML declaration");
      advance_to(end + 2);
    }
    skip_misc();
  }

  bool try_open(const std::string& name) {
    skip_misc();
    if (!peek_starts("<" + name)) return false;
    std::size_t after = pos_ + 1 + name.size();
    if (after < text_.size() && text_[after] != '>' &&
        !std::isspace(static_cast<unsigned char>(text_[after])))
      return false;
    std::size_t end = text_.find('>', pos_);
    if (end == std::string::npos) fail("unterminated start tag <" + name + ">");
    advance_to(end + 1);
    return true;
  }

  void open(const std::string& name) {
    if (!try_open(name)) fail("expected <" + name + ">");
  }

  void close(const std::string& name) {
    skip_misc();
    if (!peek_starts("</" + name)) fail("expected </" + name + ">");
    std::size_t end = text_.find('>', pos_);
    if (end == std::string::npos) fail("unterminated end tag </" + name + ">");
    advance_to(end + 1);
  }

  bool at_close(const std::string& name) {
    skip_misc();
    return peek_starts("</" + name);
  }

  // Returns the next child element name without consuming it, or empty when
  // the next token is not a start tag.
  std::string peek_element() {
    skip_misc();
    if (pos_ >= text_.size() || text_[pos_] != '<') return "";
    if (peek_starts("</")) return "";
    std::size_t i = pos_ + 1;
    std::string name;
    while (i < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i])) ||
                                text_[i] == '_' || text_[i] == '-'))
      name += text_[i++];
    return name;
  }

  // Reads text content up to the next tag, decoding entities and CDATA.
  std::string text_content() {
    std::string out;
    while (pos_ < text_.size()) {
      if (text_[pos_] == '<') {
        if (peek_starts("<![CDATA[")) {
          std::size_t end = text_.find("]]>", pos_);
          if (end == std::string::npos) fail("unterminated CDATA section");
          out += text_.substr(pos_ + 9, end - pos_ - 9);
          advance_to(end + 3);
          continue;
        }
        if (peek_starts("<!--")) {
          skip_comment();
          continue;
        }
        break;
      }
      if (text_[pos_] == '&') {
        out += decode_entity();
        continue;
      }
      if (text_[pos_] == '\n') line_++;
      out += text_[pos_++];
    }
    return out;
  }

  bool done() {
    skip_misc();
    return pos_ >= text_.size();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(file_ + ":" + std::to_string(line_) + ": " + what);
  }

  std::size_t line() const { return line_; }

 private:
  bool peek_starts(const std::string& s) const {
    return text_.compare(pos_, s.size(), s) == 0;
  }

  void advance_to(std::size_t new_pos) {
    for (std::size_t i = pos_; i < new_pos && i < text_.size(); i++)
      if (text_[i] == '\n') line_++;
    pos_ = new_pos;
  }

  void skip_comment() {
    std::size_t end = text_.find("-->", pos_);
    if (end == std::string::npos) fail("unterminated comment");
    advance_to(end + 3);
  }

  void skip_misc() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') line_++;
        pos_++;
      } else if (peek_starts("<!--")) {
        skip_comment();
      } else {
        return;
      }
    }
  }

  std::string decode_entity() {
    static const std::pair<const char*, char> entities[] = {
        {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'},
        {"&quot;", '"'}, {"&apos;", '\''}};
    for (const auto& [name, ch] : entities) {
      if (peek_starts(name)) {
        pos_ += std::strlen(name);
        return std::string(1, ch);
      }
    }
    fail("unknown entity reference");
  }

  const std::string& text_;
  std::string file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

Corpus parse_xml(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  XmlCursor xml(text, path.filename().string());
  xml.skip_prolog();
  xml.open("corpus");

  const std::string default_source = path.stem().string();
  Corpus corpus;
  std::size_t element_ordinal = 0;
  while (!xml.at_close("corpus")) {
    const std::size_t element_line = xml.line();
    xml.open("post");
    Post post;
    bool has_body = false;
    while (!xml.at_close("post")) {
      std::string child = xml.peek_element();
      if (child.empty())
        xml.fail("expected a child element inside <post>");
      xml.open(child);
      std::string value = trim(xml.text_content());
      xml.close(child);
      if (child == "id") {
        post.id = value;
      } else if (child == "source") {
        post.source = value;
      } else if (child == "thread_id") {
        if (!value.empty()) post.thread_id = value;
      } else if (child == "author") {
        if (!value.empty()) post.author = value;
      } else if (child == "timestamp") {
        if (!value.empty()) post.timestamp = value;
      } else if (child == "body") {
        post.body = value;
        has_body = true;
      } else {
        xml.fail("unknown element <" + child + "> inside <post>");
      }
    }
    xml.close("post");

    corpus.skips.total_records++;
    if (!has_body) {
      corpus.skips.skipped++;
      corpus.skips.reasons.push_back("post at line " +
                                     std::to_string(element_line) +
                                     ": missing <body>");
    } else if (trim(post.body).empty()) {
      corpus.skips.skipped++;
      corpus.skips.reasons.push_back("post at line " +
                                     std::to_string(element_line) +
                                     ": empty body");
    } else {
      if (post.id.empty()) post.id = std::to_string(element_ordinal);
      if (post.source.empty()) post.source = default_source;
      corpus.posts.push_back(std::move(post));
    }
    element_ordinal++;
  }
  xml.close("corpus");
  if (!xml.done()) throw InputError(path.string() + ": trailing content after </corpus>");
  finalize(corpus);
  return corpus;
}

Corpus merge_corpora(std::vector<Corpus> parts) {
  Corpus merged;
  for (Corpus& part : parts) {
    for (Post& post : part.posts) merged.posts.push_back(std::move(post));
    merged.skips.total_records += part.skips.total_records;
    merged.skips.skipped += part.skips.skipped;
    for (std::string& r : part.skips.reasons)
      merged.skips.reasons.push_back(std::move(r));
  }
  finalize(merged);
  return merged;
}

}  // namespace taxo
