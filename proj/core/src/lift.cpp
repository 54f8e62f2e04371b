#include "weaktile/lift.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json_util.hpp"
#include "parallel.hpp"

namespace weaktile::lift {

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  // m is small; extended Euclid on signed values
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr) {
    std::int64_t qq = r / nr;
    t -= qq * nt;
    std::swap(t, nt);
    r -= qq * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::invalid_argument("not invertible");
  return static_cast<std::uint64_t>((t % static_cast<std::int64_t>(m) + static_cast<std::int64_t>(m)) %
                                    static_cast<std::int64_t>(m));
}

// x mod 6m with x = a (mod 6), x = b (mod m)
std::uint32_t crt6(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t t = (b % m + m - a % m) % m * inv_mod(6 % m, m) % m;
  return static_cast<std::uint32_t>(a + 6 * t);
}

}  // namespace

CrtMap::CrtMap(std::uint32_t p, std::uint32_t q)
    : p_(p), q_(q), E_({6, 6, 6, 6, 6, q, p, p, p, p}), F_({6 * p, 6 * p, 6 * p, 6 * p, 6 * q}) {
  if (std::gcd(p, 6u) != 1 || std::gcd(q, 6u) != 1 || std::gcd(p, q) != 1) {
    throw std::invalid_argument("CRT box needs 6, p and q pairwise coprime");
  }
}

std::uint64_t CrtMap::flatten(std::uint64_t e) const {
  Coords c = E_.coords(e);
  Coords x(5);
  for (int i = 0; i < 4; ++i) x[i] = crt6(c[i], c[6 + i], p_);
  x[4] = crt6(c[4], c[5], q_);
  return F_.index(x);
}

std::uint64_t CrtMap::unflatten(std::uint64_t xi) const {
  Coords x = F_.coords(xi);
  Coords c(10);
  for (int i = 0; i < 4; ++i) {
    c[i] = x[i] % 6;
    c[6 + i] = x[i] % p_;
  }
  c[4] = x[4] % 6;
  c[5] = x[4] % q_;
  return E_.index(c);
}

std::uint64_t CrtMap::dual(std::uint64_t chi) const {
  Coords c = E_.coords(chi);
  Coords x(5);
  for (int i = 0; i < 4; ++i) x[i] = crt6(p_ * c[i] % 6, 6ull * c[6 + i] % p_, p_);
  x[4] = crt6(q_ * c[4] % 6, 6ull * c[5] % q_, q_);
  return F_.index(x);
}

ElementSet flatten(const CrtMap& m, const ElementSet& s) {
  if (!(s.spec() == m.E())) throw ShapeMismatch("set is not on G x H");
  std::vector<std::uint64_t> out;
  out.reserve(s.size());
  for (auto e : s) out.push_back(m.flatten(e));
  return {m.box(), std::move(out)};
}

GroupFunction flatten(const CrtMap& m, const GroupFunction& f) {
  if (!(f.spec() == m.E())) throw ShapeMismatch("function is not on G x H");
  std::vector<GroupFunction::Entry> w;
  w.reserve(f.support_size());
  for (const auto& [x, v] : f.weights()) w.emplace_back(m.flatten(x), v);
  return {m.box(), std::move(w)};
}

ElementSet flatten(const lonely::LonelyInstance& inst) {
  if (!inst.Pt) throw CapExceeded("Pt is not materialized");
  return flatten(CrtMap(inst.p, inst.q), *inst.Pt);
}

// ---------------------------------------------------------------------------

std::uint64_t LatticeLift::pk_size() const {
  std::uint64_t n = P.size();
  for (std::size_t i = 0; i < box.rank(); ++i) n *= k;
  return n;
}

bool LatticeLift::in_Pk(std::uint64_t x) const {
  Coords c = domain.coords(x);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] %= box.orders()[i];
  return P.contains(box.index(c));
}

GroupFunction LatticeLift::wk() const {
  std::vector<GroupFunction::Entry> e;
  e.reserve(w.support_size());
  for (const auto& [y, v] : w.weights()) e.emplace_back(domain.index(box.coords(y)), v);
  return {domain, std::move(e)};
}

std::vector<std::uint64_t> LatticeLift::anchors() const {
  const std::size_t r = box.rank();
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < r; ++i) cells *= k;
  std::vector<std::uint64_t> out;
  out.reserve(P.size() * cells);
  Coords c, t(r);
  for (auto x : P) {
    box.coords(x, c);
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
      std::uint64_t rest = cell;
      for (std::size_t i = 0; i < r; ++i) {
        t[i] = c[i] + static_cast<std::uint32_t>(rest % k) * box.orders()[i];
        rest /= k;
      }
      out.push_back(domain.index(t));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticeLift periodize(const ElementSet& P, const GroupFunction& w, std::uint32_t k, const VerificationReport& w_report) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!(P.spec() == w.spec())) throw ShapeMismatch("P and w live on different boxes");
  if (!w_report.passed() || w_report.checked == 0) throw std::invalid_argument("w is not verified on the box");
  LatticeLift L;
  L.k = k;
  L.box = P.spec();
  std::vector<std::uint32_t> orders;
  for (auto n : L.box.orders()) {
    std::uint64_t m = static_cast<std::uint64_t>(n) * k;
    if (m > UINT32_MAX) throw std::invalid_argument("lift domain too large");
    orders.push_back(static_cast<std::uint32_t>(m));
  }
  L.domain = GroupSpec(orders);
  L.P = P;
  L.w = w;
  return L;
}

namespace {

std::vector<std::uint64_t> check_points(const GroupSpec& spec, const SweepMode& mode) {
  std::vector<std::uint64_t> pts;
  if (mode.kind == SweepKind::Exhaustive) {
    if (spec.size() > group_limits().enumeration_cap) throw CapExceeded("lift domain too large for an exhaustive sweep");
    pts.resize(spec.size());
    for (std::uint64_t i = 0; i < spec.size(); ++i) pts[i] = i;
    return pts;
  }
  std::mt19937_64 rng(mode.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, spec.size() - 1);
  pts.push_back(0);
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    Coords c(spec.rank(), 0);
    c[i] = 1;
    pts.push_back(spec.index(c));
  }
  for (std::uint64_t i = 0; i < mode.samples; ++i) pts.push_back(pick(rng));
  return pts;
}

// offset + y, reduced by floor mod into the domain
std::uint64_t shifted(const GroupSpec& spec, std::uint64_t y, const std::vector<std::int64_t>& offset) {
  if (offset.empty()) return y;
  Coords c = spec.coords(y);
  std::vector<std::int64_t> v(c.begin(), c.end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += offset[i];
  return spec.index(spec.reduce(v));
}

// Runs check(x) -> optional failure text over the points, workers in parallel.
template <class Check>
VerificationReport sweep(const GroupSpec& spec, const SweepMode& mode, const std::vector<std::int64_t>& offset,
                         Check&& check) {
  if (!offset.empty() && offset.size() != spec.rank()) throw ShapeMismatch("offset has the wrong length");
  auto pts = check_points(spec, mode);
  const unsigned workers = lonely::lonely_limits().workers;
  std::vector<std::vector<std::pair<std::uint64_t, std::string>>> fails(std::max(1u, workers));
  detail::parallel_chunks(pts.size(), workers, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      std::string f = check(shifted(spec, pts[i], offset));
      if (!f.empty()) fails[w].emplace_back(i, std::move(f));
    }
  });
  VerificationReport rep;
  rep.mode = mode.str();
  rep.checked = pts.size();
  std::size_t total = 0;
  for (auto& f : fails)
    for (auto& [i, s] : f) {
      if (rep.failures.size() < 100) rep.failures.push_back(std::move(s));
      ++total;
    }
  if (total > 100) rep.failures.push_back("... " + std::to_string(total - 100) + " further failures suppressed");
  return rep;
}

std::string point_str(const GroupSpec& spec, std::uint64_t x) { return "(" + detail::coords_json(spec, x).dump() + ")"; }

}  // namespace

VerificationReport verify_lift(const LatticeLift& lift, const SweepMode& mode, const std::vector<std::int64_t>& offset) {
  const GroupFunction h = lift.wk();
  const GroupSpec& D = lift.domain;
  return sweep(D, mode, offset, [&](std::uint64_t x) -> std::string {
    Rational s(0);
    for (const auto& [y, v] : h.weights())
      if (lift.in_Pk(D.sub(x, y))) s += v;
    if (s == Rational(1)) return {};
    return "(1_P(k) * w(k))" + point_str(D, x) + " = " + s.str();
  });
}

ComplementMeasure complement_measure(const LatticeLift& lift, const SweepMode& mode) {
  ComplementMeasure c;
  const GroupFunction h = lift.wk();
  c.origin_mass = h.at(0);
  c.mu = h - GroupFunction::delta(lift.domain, 0);
  c.nonnegative = c.mu.is_nonnegative();
  const GroupSpec& D = lift.domain;
  c.identity = sweep(D, mode, {}, [&](std::uint64_t x) -> std::string {
    Rational s(0);
    for (const auto& [y, v] : c.mu.weights())
      if (lift.in_Pk(D.sub(x, y))) s += v;
    Rational want(lift.in_Pk(x) ? 0 : 1);
    if (s == want) return {};
    return "(1_P(k) * mu)" + point_str(D, x) + " = " + s.str() + ", expected " + want.str();
  });
  return c;
}

// ---------------------------------------------------------------------------
// cubes.json

CubeFile to_cube_file(const LatticeLift& lift, const std::vector<std::string>& citations) {
  CubeFile c;
  c.p = lift.p;
  c.q = lift.q;
  c.k = lift.k;
  c.box = lift.domain.orders();
  Coords x;
  for (auto a : lift.anchors()) {
    lift.domain.coords(a, x);
    c.anchors.insert(c.anchors.end(), x.begin(), x.end());
  }
  const GroupFunction wk = lift.wk();
  for (const auto& [y, v] : wk.weights()) c.weight.emplace_back(lift.domain.coords(y), v);
  c.trusted_citations = citations;
  return c;
}

namespace {

void write_row(std::ostream& os, const std::uint32_t* v, std::size_t n) {
  os << '[';
  for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << v[i];
  os << ']';
}

}  // namespace

void export_cubes(const CubeFile& c, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  const std::size_t r = c.box.size();
  os << "{\n  \"schema\": \"weaktile.cubes/1\",\n";
  os << "  \"p\": " << c.p << ",\n  \"q\": " << c.q << ",\n  \"k\": " << c.k << ",\n";
  os << "  \"box\": ";
  write_row(os, c.box.data(), r);
  os << ",\n  \"cube_count\": " << c.cube_count() << ",\n  \"anchors\": [";
  for (std::size_t i = 0; i < c.cube_count(); ++i) {
    os << (i ? ",\n    " : "\n    ");
    write_row(os, c.anchors.data() + i * r, r);
  }
  os << (c.cube_count() ? "\n  ],\n" : "],\n");
  os << "  \"weight\": {\n    \"period\": ";
  write_row(os, c.box.data(), r);
  os << ",\n    \"support\": [";
  for (std::size_t i = 0; i < c.weight.size(); ++i) {
    os << (i ? ",\n      " : "\n      ") << "{\"x\": ";
    write_row(os, c.weight[i].first.data(), c.weight[i].first.size());
    os << ", \"w\": \"" << detail::fraction(c.weight[i].second) << "\"}";
  }
  os << (c.weight.empty() ? "]\n  },\n" : "\n    ]\n  },\n");
  os << "  \"trusted_citations\": [";
  for (std::size_t i = 0; i < c.trusted_citations.size(); ++i)
    os << (i ? ",\n    " : "\n    ") << detail::json(c.trusted_citations[i]).dump();
  os << (c.trusted_citations.empty() ? "]\n}\n" : "\n  ]\n}\n");
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

void export_cubes(const LatticeLift& lift, const std::filesystem::path& path, const std::vector<std::string>& citations) {
  export_cubes(to_cube_file(lift, citations), path);
}

namespace {

struct CubeSax : nlohmann::json_sax<detail::json> {
  CubeFile& out;
  std::vector<std::string> path;  // container keys; "" for array elements
  std::string key_;
  std::vector<std::uint32_t> cur_x;
  std::string cur_w;
  std::string error;

  explicit CubeSax(CubeFile& o) : out(o) {}

  [[nodiscard]] bool at(std::initializer_list<const char*> want) const {
    if (path.size() != want.size()) return false;
    std::size_t i = 0;
    for (auto w : want)
      if (path[i++] != w) return false;
    return true;
  }

  bool number(std::uint64_t v) {
    auto u = static_cast<std::uint32_t>(v);
    if (at({""})) {
      if (key_ == "p") out.p = u;
      else if (key_ == "q") out.q = u;
      else if (key_ == "k") out.k = u;
    } else if (at({"", "box"})) {
      out.box.push_back(u);
    } else if (at({"", "anchors", ""})) {
      out.anchors.push_back(u);
    } else if (at({"", "weight", "support", "", "x"})) {
      cur_x.push_back(u);
    }
    return true;
  }

  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t v) override {
    if (v < 0) {
      error = "negative coordinate";
      return false;
    }
    return number(static_cast<std::uint64_t>(v));
  }
  bool number_unsigned(number_unsigned_t v) override { return number(v); }
  bool number_float(number_float_t, const string_t&) override {
    error = "unexpected float";
    return false;
  }
  bool string(string_t& s) override {
    if (at({""}) && key_ == "schema" && s != "weaktile.cubes/1") {
      error = "unknown schema " + s;
      return false;
    }
    if (at({"", "weight", "support", ""}) && key_ == "w") cur_w = s;
    if (at({"", "trusted_citations"})) out.trusted_citations.push_back(s);
    return true;
  }
  bool binary(binary_t&) override { return true; }
  bool start_object(std::size_t) override {
    path.push_back(container_key());
    is_array_.push_back(false);
    return true;
  }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override {
    if (at({"", "weight", "support", ""})) {
      out.weight.emplace_back(cur_x, Rational::parse(cur_w));
      cur_x.clear();
      cur_w.clear();
    }
    path.pop_back();
    is_array_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    path.push_back(container_key());
    is_array_.push_back(true);
    return true;
  }
  bool end_array() override {
    path.pop_back();
    is_array_.pop_back();
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) override {
    error = "parse error at byte " + std::to_string(pos) + ": " + ex.what();
    return false;
  }

  // key for a container opened now: the pending object key, or "" inside arrays
  std::string container_key() const {
    if (path.empty() || is_array_.back()) return "";
    return key_;
  }

  std::vector<bool> is_array_;  // parallel to path
};

}  // namespace

CubeFile import_cubes(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  CubeFile c;
  CubeSax sax(c);
  bool ok = detail::json::sax_parse(is, &sax);
  if (!ok) throw std::runtime_error("bad cubes file " + path.string() + ": " + sax.error);
  if (c.box.empty() || c.anchors.size() % c.box.size() != 0) throw std::runtime_error("bad cubes file: anchor shape");
  return c;
}

}  // namespace weaktile::lift
