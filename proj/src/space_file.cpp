#include "qpolish/space_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace qpolish {

SpaceFileError::SpaceFileError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;
  std::string text;
};

std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string raw(text.substr(start, end - start));
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream in(raw);
    Line l{number, {}, raw};
    for (std::string w; in >> w;) l.words.push_back(w);
    if (!l.words.empty()) out.push_back(std::move(l));
    start = end + 1;
  }
  return out;
}

class Reader {
 public:
  Reader(std::vector<Line> lines, std::string source) : lines_(std::move(lines)), source_(std::move(source)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& what) const { throw SpaceFileError(source_, line, what); }
  [[noreturn]] void fail(const std::string& what) const { fail(current_line(), what); }

  std::size_t current_line() const {
    if (pos_ < lines_.size()) return lines_[pos_].number;
    return lines_.empty() ? 1 : lines_.back().number;
  }
  bool done() const { return pos_ >= lines_.size(); }
  bool next_is(const std::string& keyword) const { return !done() && lines_[pos_].words[0] == keyword; }
  const Line& take(const std::string& expecting) {
    if (done()) fail("unexpected end of file, expected " + expecting);
    return lines_[pos_++];
  }

  std::size_t number(const Line& l, const std::string& word) const {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc() || p != word.data() + word.size()) fail(l.number, "expected a natural number, got '" + word + "'");
    return v;
  }

  /// "<keyword> <n>"
  std::size_t keyword_count(const std::string& keyword) {
    const Line& l = take("'" + keyword + " <n>'");
    if (l.words.size() != 2 || l.words[0] != keyword) fail(l.number, "expected '" + keyword + " <n>'");
    return number(l, l.words[1]);
  }

 private:
  std::vector<Line> lines_;
  std::string source_;
  std::size_t pos_ = 0;
};

SpaceFile read_finite(Reader& r) {
  const std::size_t n = r.keyword_count("points");
  if (n > FiniteSpace::max_points) r.fail("at most " + std::to_string(FiniteSpace::max_points) + " points");
  std::map<std::size_t, std::vector<Point>> subbasis;
  while (!r.done()) {
    const Line& l = r.take("subbasic");
    if (l.words[0] != "subbasic" || l.words.size() < 2 || l.words[1].empty() || l.words[1].back() != ':') {
      r.fail(l.number, "expected 'subbasic <i>: <points>'");
    }
    const std::size_t i = r.number(l, l.words[1].substr(0, l.words[1].size() - 1));
    if (subbasis.count(i)) r.fail(l.number, "subbasic " + std::to_string(i) + " listed twice");
    std::vector<Point> members;
    for (std::size_t w = 2; w < l.words.size(); ++w) {
      const std::size_t p = r.number(l, l.words[w]);
      if (p >= n) r.fail(l.number, "point " + std::to_string(p) + " out of range for " + std::to_string(n) + " points");
      members.push_back(static_cast<Point>(p));
    }
    subbasis[i] = std::move(members);
  }
  std::vector<std::vector<Point>> list;
  for (auto& [i, m] : subbasis) list.push_back(std::move(m));
  FiniteSpace fs = FiniteSpace::from_subbasis(n, list);
  return {"finite", make_finite(fs), fs, std::nullopt};
}

SpaceFile read_generator(Reader& r) {
  const Line& l = r.take("'gen <description>'");
  if (l.words[0] != "gen" || l.words.size() < 2) r.fail(l.number, "expected 'gen <description>'");
  const std::string description = l.text.substr(l.text.find("gen") + 3);
  SpacePtr space;
  try {
    space = make_generator(description);
  } catch (const std::invalid_argument& e) {
    r.fail(l.number, e.what());
  }
  if (!r.done()) r.fail("trailing content after the generator line");
  return {"generator", space, std::nullopt, std::nullopt};
}

SpaceFile read_table(Reader& r) {
  const std::size_t n = r.keyword_count("points");
  const std::size_t m = r.keyword_count("subbasics");
  if (m > 63) r.fail("at most 63 subbasics");
  std::vector<std::vector<bool>> rows;
  for (std::size_t p = 0; p < n; ++p) {
    const Line& l = r.take("row " + std::to_string(p));
    std::vector<bool> row;
    for (const auto& w : l.words) {
      for (char c : w) {
        if (c != '0' && c != '1') r.fail(l.number, std::string("row entries must be 0 or 1, got '") + c + "'");
        row.push_back(c == '1');
      }
    }
    if (row.size() != m) {
      r.fail(l.number, "row " + std::to_string(p) + " has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(m));
    }
    rows.push_back(std::move(row));
  }
  if (!r.done()) r.fail("more rows than the declared " + std::to_string(n) + " points");
  return {"table", std::make_shared<TableSpace>(std::move(rows), m), std::nullopt, std::nullopt};
}

}  // namespace

SpaceFile parse_space_file(std::string_view text, const std::string& source) {
  Reader r(significant_lines(text), source);
  const Line& head = r.take("'kind finite|generator|table'");
  if (head.words.size() != 2 || head.words[0] != "kind") r.fail(head.number, "expected 'kind finite|generator|table'");
  const std::string kind = head.words[1];
  if (kind != "finite" && kind != "generator" && kind != "table") r.fail(head.number, "unknown kind '" + kind + "'");
  std::optional<std::size_t> depth;
  if (r.next_is("depth")) {
    const std::size_t line = r.current_line();
    depth = r.keyword_count("depth");
    if (*depth == 0) r.fail(line, "depth must be positive");
  }
  SpaceFile out = kind == "finite" ? read_finite(r) : kind == "generator" ? read_generator(r) : read_table(r);
  out.depth = depth;
  return out;
}

SpaceFile load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpaceFileError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_space_file(buf.str(), path);
}

}  // namespace qpolish
