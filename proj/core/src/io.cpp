#include "weaktile/io.hpp"

#include <fstream>
#include <sstream>

namespace weaktile::io {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Reads the header and returns the group; skips comments before it.
GroupSpec read_header(std::istream& is, std::size_t& line_no) {
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::string tag = "group:";
    if (line.rfind(tag, 0) != 0) throw ParseError("line " + std::to_string(line_no) + ": expected 'group:' header");
    try {
      return GroupSpec::parse(trim(line.substr(tag.size())));
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  throw ParseError("missing 'group:' header");
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_coords(const Coords& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

Coords parse_coords(const GroupSpec& spec, const std::string& text) {
  Coords c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size()) throw ParseError("bad residue '" + item + "'");
    c.push_back(static_cast<std::uint32_t>(v));
  }
  if (c.size() != spec.rank()) {
    throw ParseError("expected " + std::to_string(spec.rank()) + " residues, got " + std::to_string(c.size()));
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= spec.orders()[i]) throw ParseError("residue out of range in '" + text + "'");
  }
  return c;
}

void write_set(std::ostream& os, const ElementSet& set) {
  os << "group: " << set.spec().str() << '\n';
  Coords c;
  for (auto x : set) {
    set.spec().coords(x, c);
    os << format_coords(c) << '\n';
  }
}

void write_set(const std::filesystem::path& path, const ElementSet& set) {
  auto out = open_out(path);
  write_set(out, set);
}

ElementSet read_set(std::istream& is) {
  std::size_t line_no = 0;
  GroupSpec spec = read_header(is, line_no);
  std::vector<std::uint64_t> elems;
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    try {
      elems.push_back(spec.index(parse_coords(spec, line)));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return {spec, std::move(elems)};
}

ElementSet read_set(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_set(in);
}

void write_weights(std::ostream& os, const GroupFunction& f) {
  os << "group: " << f.spec().str() << '\n';
  Coords c;
  for (const auto& [x, w] : f.weights()) {
    f.spec().coords(x, c);
    os << format_coords(c) << " : " << w.num() << '/' << w.den() << '\n';
  }
}

void write_weights(const std::filesystem::path& path, const GroupFunction& f) {
  auto out = open_out(path);
  write_weights(out, f);
}

GroupFunction read_weights(std::istream& is) {
  std::size_t line_no = 0;
  GroupSpec spec = read_header(is, line_no);
  std::vector<GroupFunction::Entry> w;
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": missing ':'");
    try {
      auto x = spec.index(parse_coords(spec, trim(line.substr(0, colon))));
      w.emplace_back(x, Rational::parse(trim(line.substr(colon + 1))));
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return {spec, std::move(w)};
}

GroupFunction read_weights(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_weights(in);
}

}  // namespace weaktile::io
