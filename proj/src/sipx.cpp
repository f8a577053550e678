// SIPX reader/writer.
//
//   SIPX 1
//   FIRSTSTAGE n1 m1
//   C c_1 ... c_n1
//   A                      (followed by m1 rows of n1 numbers)
//   B b_1 ... b_m1
//   SECONDSTAGE n2 m2
//   W                      (followed by m2 rows of n2 numbers)
//   U u_1 ... u_n2
//   SCENARIOS S
//   SCEN p                 (repeated S times through ENDSCEN)
//   Q ...  H ...  T (m2 rows of n1 numbers)  ENDSCEN
//
// '#' starts a comment. A leading "# name: <id>" comment carries the instance
// name; otherwise the file stem is used.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "model.hpp"

namespace fendec {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (number == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
      const auto hash = raw.find('#');
      if (hash != std::string::npos) {
        const std::string comment = raw.substr(hash + 1);
        const auto tag = comment.find("name:");
        if (tag != std::string::npos && name_.empty()) {
          std::istringstream ns(comment.substr(tag + 5));
          ns >> name_;
        }
        raw.erase(hash);
      }
      std::istringstream ts(raw);
      Line line{number, {}};
      std::string tok;
      while (ts >> tok) line.tokens.push_back(tok);
      if (!line.tokens.empty()) lines_.push_back(std::move(line));
    }
    last_line_ = number;
  }

  const Line& next(const char* expecting) {
    if (pos_ >= lines_.size())
      throw ParseError(last_line_, std::string("unexpected end of file, expected ") + expecting);
    return lines_[pos_++];
  }

  bool done() const { return pos_ >= lines_.size(); }
  const std::string& name() const { return name_; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
  std::string name_;
};

double to_number(const Line& line, std::size_t idx) {
  const auto& tok = line.tokens.at(idx);
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line.number, "non-numeric token '" + tok + "'");
  return v;
}

std::size_t to_count(const Line& line, std::size_t idx) {
  const auto& tok = line.tokens.at(idx);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line.number, "expected a nonnegative integer, got '" + tok + "'");
  return v;
}

const Line& expect_keyword(LineReader& in, const std::string& keyword, std::size_t args) {
  const Line& line = in.next(keyword.c_str());
  if (line.tokens.front() != keyword)
    throw ParseError(line.number, "expected section " + keyword + ", found '" +
                                      line.tokens.front() + "'");
  if (line.tokens.size() != args + 1)
    throw ParseError(line.number, keyword + " expects " + std::to_string(args) +
                                      " values, found " +
                                      std::to_string(line.tokens.size() - 1));
  return line;
}

std::vector<double> read_vector(LineReader& in, const std::string& keyword, std::size_t n) {
  const Line& line = expect_keyword(in, keyword, n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = to_number(line, i + 1);
  return v;
}

Matrix read_matrix(LineReader& in, const std::string& keyword, std::size_t rows,
                   std::size_t cols) {
  expect_keyword(in, keyword, 0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Line& line = in.next(keyword.c_str());
    if (line.tokens.size() != cols)
      throw ParseError(line.number, keyword + " row " + std::to_string(r) + " expects " +
                                        std::to_string(cols) + " values, found " +
                                        std::to_string(line.tokens.size()));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = to_number(line, c);
  }
  return m;
}

void put_number(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void put_vector(std::string& out, const char* keyword, std::span<const double> v) {
  out += keyword;
  for (double x : v) {
    out += ' ';
    put_number(out, x);
  }
  out += '\n';
}

void put_matrix(std::string& out, const char* keyword, const Matrix& m) {
  out += keyword;
  out += '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      put_number(out, row[c]);
    }
    out += '\n';
  }
}

}  // namespace

TwoStageInstance parse_instance(const std::string& text, const std::string& name) {
  LineReader in(text);
  const Line& magic = expect_keyword(in, "SIPX", 1);
  if (magic.tokens[1] != "1")
    throw ParseError(magic.number, "unsupported SIPX version '" + magic.tokens[1] + "'");

  TwoStageInstance inst;
  inst.name = in.name().empty() ? name : in.name();

  const Line& fs = expect_keyword(in, "FIRSTSTAGE", 2);
  const auto n1 = to_count(fs, 1), m1 = to_count(fs, 2);
  if (n1 == 0) throw ParseError(fs.number, "n1 must be at least 1");
  inst.first.c = read_vector(in, "C", n1);
  inst.first.A = read_matrix(in, "A", m1, n1);
  inst.first.b = read_vector(in, "B", m1);

  const Line& ss = expect_keyword(in, "SECONDSTAGE", 2);
  const auto n2 = to_count(ss, 1), m2 = to_count(ss, 2);
  inst.W = read_matrix(in, "W", m2, n2);
  inst.u = read_vector(in, "U", n2);

  const Line& sl = expect_keyword(in, "SCENARIOS", 1);
  const auto S = to_count(sl, 1);
  inst.scenarios.reserve(S);
  for (std::size_t s = 0; s < S; ++s) {
    Scenario sc;
    const Line& head = expect_keyword(in, "SCEN", 1);
    sc.p = to_number(head, 1);
    sc.q = read_vector(in, "Q", n2);
    sc.h = read_vector(in, "H", m2);
    sc.T = read_matrix(in, "T", m2, n1);
    expect_keyword(in, "ENDSCEN", 0);
    inst.scenarios.push_back(std::move(sc));
  }
  if (!in.done()) {
    const Line& extra = in.next("end of file");
    throw ParseError(extra.number, "trailing content '" + extra.tokens.front() + "'");
  }
  return inst;
}

TwoStageInstance read_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_instance(buf.str(), std::filesystem::path(path).stem().string());
}

std::string format_instance(const TwoStageInstance& inst) {
  std::string out = "SIPX 1\n";
  if (!inst.name.empty()) out += "# name: " + inst.name + "\n";
  out += "FIRSTSTAGE " + std::to_string(inst.n1()) + " " + std::to_string(inst.m1()) + "\n";
  put_vector(out, "C", inst.first.c);
  put_matrix(out, "A", inst.first.A);
  put_vector(out, "B", inst.first.b);
  out += "SECONDSTAGE " + std::to_string(inst.n2()) + " " + std::to_string(inst.m2()) + "\n";
  put_matrix(out, "W", inst.W);
  put_vector(out, "U", inst.u);
  out += "SCENARIOS " + std::to_string(inst.scenarios.size()) + "\n";
  for (const auto& sc : inst.scenarios) {
    out += "SCEN ";
    put_number(out, sc.p);
    out += '\n';
    put_vector(out, "Q", sc.q);
    put_vector(out, "H", sc.h);
    put_matrix(out, "T", sc.T);
    out += "ENDSCEN\n";
  }
  return out;
}

void write_instance(const TwoStageInstance& inst, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write instance file '" + path + "'");
  f << format_instance(inst);
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace fendec
