#include "ceig/tensor_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ceig {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
}

// Splits a line into whitespace-separated tokens, dropping `#` comments.
std::vector<std::string> tokenize(std::string_view line) {
  if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
  std::vector<std::string> toks;
  std::istringstream in{std::string(line)};
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& tok, std::size_t line_no, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
  }
  return v;
}

double parse_real(const std::string& tok, std::size_t line_no) {
  // strtod rather than from_chars: GCC 11 lacks from_chars for floats with
  // full scientific-notation coverage in all modes.
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) {
    fail(line_no, "expected real value, got '" + tok + "'");
  }
  if (errno == ERANGE && (v == HUGE_VAL || v == -HUGE_VAL)) {
    fail(line_no, "value out of range: '" + tok + "'");
  }
  return v;
}

std::string render(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

PiezoTensor parse_tensor_file(std::string_view text, const SymmetrizationPolicy& policy,
                              std::string name) {
  std::vector<TensorEntry> entries;
  int n = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (n < 0) {
      if (toks[0] != "n") fail(line_no, "expected header 'n <dim>', got '" + toks[0] + "'");
      if (toks.size() != 2) fail(line_no, "header must be exactly 'n <dim>'");
      n = parse_int(toks[1], line_no, "dimension");
      if (n < 1) fail(line_no, "dimension must be >= 1");
      continue;
    }
    if (toks.size() != 4) {
      fail(line_no, "expected 'i j k value', got " + std::to_string(toks.size()) + " fields");
    }
    TensorEntry e;
    e.i = parse_int(toks[0], line_no, "index i");
    e.j = parse_int(toks[1], line_no, "index j");
    e.k = parse_int(toks[2], line_no, "index k");
    e.value = parse_real(toks[3], line_no);
    entries.push_back(e);
  }
  if (n < 0) throw std::invalid_argument("missing 'n <dim>' header");
  return PiezoTensor::build(n, entries, policy, std::move(name));
}

std::string write_tensor_file(const PiezoTensor& A) {
  std::string out;
  if (!A.name().empty()) out += "# " + A.name() + "\n";
  out += "n " + std::to_string(A.dim()) + "\n";
  for (const TensorEntry& e : A.nonzero_entries()) {
    out += std::to_string(e.i) + " " + std::to_string(e.j) + " " + std::to_string(e.k) + " " +
           render(e.value) + "\n";
  }
  return out;
}

PiezoTensor load_tensor_file(const std::filesystem::path& path,
                             const SymmetrizationPolicy& policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_tensor_file(buf.str(), policy, path.stem().string());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace ceig
