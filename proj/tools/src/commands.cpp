#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "manifest.hpp"
#include "weaktile/cyclo.hpp"
#include "weaktile/deciders.hpp"
#include "weaktile/io.hpp"
#include "weaktile/lift.hpp"
#include "weaktile/lonely.hpp"

namespace fs = std::filesystem;

namespace weaktile::cli {

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json sizes_json(const lonely::LonelyInstance& inst) {
  return {{"p", inst.p}, {"q", inst.q}, {"full_scale", inst.full_scale}, {"Pt_size", inst.pt_size()}};
}

struct LoadedInstance {
  std::uint32_t p = 0, q = 0;
  std::vector<Coords> basis;
  fs::path b_file;
};

LoadedInstance read_instance_file(const fs::path& path) {
  const json j = json::parse(read_file(path));
  if (j.value("schema", "") != "weaktile.instance/1") throw std::invalid_argument(path.string() + " is not an instance file");
  LoadedInstance li;
  li.p = j.at("p").get<std::uint32_t>();
  li.q = j.at("q").get<std::uint32_t>();
  for (const auto& v : j.at("basis")) li.basis.push_back(v.get<Coords>());
  li.b_file = path.parent_path() / j.at("files").at("B").get<std::string>();
  return li;
}

lonely::LonelyInstance load_instance(const fs::path& path) {
  auto li = read_instance_file(path);
  return lonely::build_instance(li.p, li.q, lonely::BSource::file(li.b_file.string()), li.basis);
}

std::string plural(std::uint64_t n, const std::string& what) { return std::to_string(n) + " " + what; }

std::string check_key(const std::string& name) {
  if (name == "l32" || name == "non-tile") return "non-tile";
  if (name == "l33" || name == "pd-tile") return "pd-tile";
  if (name == "l34" || name == "non-vanishing") return "non-vanishing";
  if (name == "l35" || name == "counting") return "counting";
  throw lonely::ParameterError("unknown check '" + name + "'");
}

}  // namespace

int guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const lonely::FiberMismatch& e) {
    std::cerr << "fiber mismatch: " << e.what() << "\n";
    return kFailed;
  } catch (const lonely::VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kFailed;
  } catch (const lonely::SearchExhausted& e) {
    std::cerr << "no result: " << e.what() << "\n";
    return kUnknown;
  } catch (const cyclo::CapacityExceeded& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kUnknown;
  } catch (const CapExceeded& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kUnknown;
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kRejected;
  } catch (const json::exception& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kRejected;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}

// ---------------------------------------------------------------------------

int cmd_construct(const Context& ctx, const ConstructArgs& a) {
  Run run(ctx.command_line, ctx.config, a.out, "construct");
  run.parameters() = {{"p", a.p}, {"q", a.q}, {"B", a.b_file.empty() ? "search" : "file"}};

  run.phase_begin("build_instance");
  const Budget budget{ctx.config.get("search.budget")};
  auto src = a.b_file.empty() ? lonely::BSource::search(budget) : lonely::BSource::file(a.b_file);
  auto inst = lonely::build_instance(a.p, a.q, src);

  run.phase_begin("write");
  fs::create_directories(run.out_dir());
  std::map<std::string, std::string> files{{"B", "B.set"}, {"B_spectrum", "B.set.spectrum"}};
  io::write_set(run.out_dir() / "B.set", inst.B.X);
  io::write_set(run.out_dir() / "B.set.spectrum", inst.B.spectrum);
  run.attach("B.set");
  run.attach("B.set.spectrum");
  if (inst.Pt) {
    io::write_set(run.out_dir() / "A.set", inst.A.materialize());
    io::write_set(run.out_dir() / "Pt.set", *inst.Pt);
    run.attach("A.set");
    run.attach("Pt.set");
    files["A"] = "A.set";
    files["Pt"] = "Pt.set";
  }
  run.certificate("instance.json", lonely::instance_json(inst, files));
  run.citations(lonely::trusted_citations());

  run.check("B spectral", inst.B.verified, plural(inst.B.X.size(), "points, spectrum verified exactly"));
  run.check("A size", inst.A.size() == 1296ull * a.q, std::to_string(inst.A.size()));
  run.check("Pt size", inst.pt_size() == inst.A.size() * 2 * a.p, std::to_string(inst.pt_size()));
  run.note("instance", sizes_json(inst));
  std::cout << "full_scale " << (inst.full_scale ? "true" : "false") << "\n";
  return run.finish(run.all_passed() ? kOk : kFailed);
}

// ---------------------------------------------------------------------------

int cmd_check(const Context& ctx, const CheckArgs& a) {
  const ElementSet X = io::read_set(fs::path(a.set_file));
  const std::string stem = fs::path(a.set_file).filename().string();
  Run run(ctx.command_line, ctx.config, a.out, "check-" + a.property + "-" + stem);
  const Budget budget{a.budget.value_or(ctx.config.get("search.budget"))};
  run.parameters() = {{"property", a.property}, {"set", stem}, {"group", X.spec().orders()},
                      {"size", X.size()}, {"budget", budget.nodes}};
  const std::string out = stem + "." + a.property + ".json";
  run.phase_begin("decide");

  if (a.property == "tile") {
    auto d = decide_tile(X, budget);
    run.note("verdict", to_string(d.verdict));
    std::cout << "verdict " << to_string(d.verdict) << "\n";
    if (d.verdict == TileVerdict::Unknown) {
      run.certificate(out, json{{"verdict", "unknown"}, {"nodes", d.nodes}, {"budget", budget.nodes}, {"reason", d.reason}}.dump(2));
      return run.finish(kUnknown);
    }
    if (d.verdict == TileVerdict::Tile) {
      auto cert = *d.certificate;
      const bool ok = verify_tiling(cert);
      run.mode("tiling", "exact");
      VerificationReport r{"exact", X.size() * cert.translations.size(), {}};
      if (!ok) r.failures.push_back("X + L is not a partition");
      run.certificate(out, certificate_json(cert, r));
      run.check("tiling certificate", ok, plural(cert.translations.size(), "translations"));
    } else {
      run.certificate(out, non_tile_json(X, d.reason));
      run.check("non-tile", true, d.reason);
    }
  } else if (a.property == "spectral") {
    auto d = decide_spectral(X, budget);
    run.note("verdict", to_string(d.verdict));
    std::cout << "verdict " << to_string(d.verdict) << "\n";
    if (d.verdict == SpectralVerdict::Unknown) {
      run.certificate(out, json{{"verdict", "unknown"}, {"nodes", d.nodes}, {"budget", budget.nodes}, {"reason", d.reason}}.dump(2));
      return run.finish(kUnknown);
    }
    if (d.verdict == SpectralVerdict::Spectral) {
      auto cert = *d.certificate;
      const bool ok = verify_spectrum(cert);
      run.mode("spectrum", "exact");
      VerificationReport r{"exact", cert.spectrum.size() * cert.spectrum.size(), {}};
      if (!ok) r.failures.push_back("spectrum not orthogonal");
      run.certificate(out, certificate_json(cert, r));
      run.check("spectrum certificate", ok, "size " + std::to_string(cert.spectrum.size()));
      if (X.spec().size() % X.size() != 0) {
        run.check("non-tile by size", true, std::to_string(X.size()) + " does not divide " + std::to_string(X.spec().size()));
      }
    } else {
      run.certificate(out, non_spectral_json(X, d));
      run.check("non-spectral", d.exhaustive_proof, d.reason);
    }
  } else if (a.property == "pdtile") {
    auto d = decide_pd_tiling(X);
    run.note("verdict", to_string(d.verdict));
    std::cout << "verdict " << to_string(d.verdict) << "\n";
    if (d.verdict == PdVerdict::Inconclusive) {
      run.certificate(out, json{{"verdict", "inconclusive"}, {"reason", d.reason}}.dump(2));
      return run.finish(kUnknown);
    }
    if (d.verdict == PdVerdict::PdTile) {
      run.mode("witness", "exhaustive");
      auto r = verify_pd_witness(X, d.witness->h, SweepMode::exhaustive());
      run.certificate(out, certificate_json(*d.witness, r));
      run.check("pd witness", r.passed(), plural(r.checked, "checks"));
    } else {
      auto f = *d.farkas;
      const bool ok = verify_farkas(X, f);
      run.certificate(out, certificate_json(X, f));
      run.check("infeasibility certificate", ok, d.reason);
    }
  } else {
    throw std::invalid_argument("property must be tile, spectral or pdtile");
  }
  return run.finish(run.all_passed() ? kOk : kFailed);
}

// ---------------------------------------------------------------------------

int cmd_verify(const Context& ctx, const VerifyArgs& a) {
  const std::string key = check_key(a.name);
  const fs::path ipath(a.instance);
  const fs::path out = a.out.empty() ? (ipath.has_parent_path() ? ipath.parent_path() : fs::path(".")) : fs::path(a.out);
  const std::uint64_t seed = ctx.config.get("seed");
  const SweepMode mode = SweepMode::parse(a.mode, seed);
  Run run(ctx.command_line, ctx.config, out, "verify-" + key);
  run.citations(lonely::trusted_citations());

  if (key == "counting") {
    const auto li = read_instance_file(ipath);
    run.parameters() = {{"p", li.p}, {"q", li.q}};
    auto c = lonely::counting_certificate(li.p, li.q);
    run.certificate("counting.json", lonely::counting_json(c));
    run.note("counting", {{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}, {"full_scale", c.full_scale}});
    run.check("counting inequality", c.holds, c.lhs + (c.holds ? " < " : " >= ") + c.rhs);
    if (!a.candidate.empty()) {
      run.phase_begin("candidate");
      auto inst = lonely::build_instance(li.p, li.q, lonely::BSource::file(li.b_file.string()), li.basis);
      const ElementSet S = io::read_set(fs::path(a.candidate));
      auto an = lonely::analyze_spectrum_candidate(inst, S, ctx.config.get("spectrum.pair_budget"));
      run.certificate("counting.candidate.json", lonely::spectrum_analysis_json(inst, an));
      run.check("candidate refuted", an.refuted(), an.refutation);
    }
    return run.finish(run.all_passed() ? kOk : kFailed);
  }

  run.phase_begin("build_instance");
  auto inst = load_instance(ipath);
  run.parameters() = sizes_json(inst);

  if (key == "non-tile") {
    run.phase_begin("fibers");
    auto c = lonely::certify_non_tile(inst);
    run.mode("fibers", "exhaustive");
    run.certificate("non-tile.json", lonely::non_tile_json(inst, c));
    run.check("fibers are translates of B", c.fiber_check, plural(c.fibers_checked, "fibers"));
    run.check("B is not a tile", c.b_nontile, c.b_nontile_reason);
    for (std::uint64_t i = 0; i < a.random_t; ++i) {
      auto t = lonely::random_shift_map(inst.A, inst.H, 16, seed + i);
      auto other = inst.with_shift(std::move(t));
      auto ci = lonely::certify_non_tile(other);
      run.check("random shift map " + std::to_string(i), ci.valid(), plural(ci.fibers_checked, "fibers"));
    }
  } else if (key == "pd-tile") {
    run.phase_begin("factors");
    auto f = lonely::factor_witnesses(inst);
    run.check("w_A", f.w_A_report.passed(), f.w_A_report.mode + ", " + plural(f.w_A_report.checked, "checks"));
    run.check("w_B", f.w_B_report.passed(), f.w_B_report.mode + ", " + plural(f.w_B_report.checked, "checks"));
    run.phase_begin("cosets");
    auto r = lonely::certify_pd_tiling(inst, f.w_A, f.w_B);
    run.mode("cosets", "exhaustive");
    run.certificate("pd-tile.json", lonely::pd_tiling_json(inst, r, f));
    run.check("coset-wise convolution", r.coset_failures == 0, plural(r.cosets_checked, "cosets"));
    run.check("transform nonnegative", r.transform_nonnegative, "product of the factor transforms");
    if (mode.kind == SweepKind::Sampled) {
      run.phase_begin("pointwise");
      run.mode("pointwise", mode.str());
      auto pr = verify_pd_witness(inst.E, [&](std::uint64_t e) { return inst.in_Pt(e); }, r.witness.h, mode);
      run.check("pointwise witness", pr.passed(), mode.str() + ", " + plural(pr.checked, "checks"));
    }
  } else {
    run.phase_begin("sweep");
    run.mode("duals", mode.str());
    auto r = lonely::verify_non_vanishing(inst, mode);
    run.certificate("non-vanishing.json", lonely::non_vanishing_json(inst, r));
    run.note("case_histogram", {{"all_zero", r.case_histogram[0]}, {"all_full", r.case_histogram[1]},
                                {"mixed", r.case_histogram[2]}});
    run.check("no vanishing transform", r.counterexamples.empty(),
              plural(r.duals_covered, "duals") + ", " + plural(r.counterexamples.size(), "counterexamples"));
    run.check("cross-checks", r.cross_check_failures == 0, r.zero_test);
    if (mode.kind == SweepKind::Exhaustive) {
      const bool all = r.case_histogram[0] && r.case_histogram[1] && r.case_histogram[2];
      run.check("all case classes present", all, "");
    }
  }
  return run.finish(run.all_passed() ? kOk : kFailed);
}

// ---------------------------------------------------------------------------

int cmd_lift(const Context& ctx, const LiftArgs& a) {
  if (a.k == 0) throw std::invalid_argument("k must be positive");
  const fs::path cubes(a.out);
  const fs::path dir = cubes.has_parent_path() ? cubes.parent_path() : fs::path(".");
  const std::uint64_t seed = ctx.config.get("seed");
  const SweepMode mode = SweepMode::parse(a.mode, seed), w_mode = SweepMode::parse(a.w_mode, seed);
  Run run(ctx.command_line, ctx.config, dir, "lift-k" + std::to_string(a.k));
  run.citations(lonely::trusted_citations());

  run.phase_begin("build_instance");
  auto inst = load_instance(fs::path(a.instance));
  if (!inst.Pt) throw std::invalid_argument("lift needs a materialized Pt (raise lonely.materialize_pt)");
  run.parameters() = sizes_json(inst);
  run.parameters()["k"] = a.k;

  run.phase_begin("witness");
  auto f = lonely::factor_witnesses(inst);
  auto pd = lonely::certify_pd_tiling(inst, f.w_A, f.w_B);
  run.check("witness on G x H", pd.passed(), plural(pd.cosets_checked, "cosets"));

  run.phase_begin("box");
  const lift::CrtMap m(inst.p, inst.q);
  const ElementSet P = lift::flatten(inst);
  const GroupFunction w = lift::flatten(m, pd.witness.h);
  run.mode("w_on_box", w_mode.str());
  auto wr = verify_pd_witness(P, w, w_mode);
  run.check("witness on box", wr.passed(), w_mode.str() + ", " + plural(wr.checked, "checks"));
  if (!wr.passed()) return run.finish(kFailed);

  run.phase_begin("lift");
  auto L = lift::periodize(P, w, a.k, wr);
  L.p = inst.p;
  L.q = inst.q;
  run.mode("lift", mode.str());
  auto lr = lift::verify_lift(L, mode);
  run.check("periodic convolution", lr.passed(), mode.str() + ", " + plural(lr.checked, "points"));

  run.phase_begin("complement");
  auto cm = lift::complement_measure(L, mode);
  run.check("origin mass", cm.origin_mass == Rational(1), cm.origin_mass.str());
  run.check("complement nonnegative", cm.nonnegative, "");
  run.check("complement identity", cm.identity.passed(), plural(cm.identity.checked, "points"));

  run.phase_begin("export");
  fs::create_directories(dir);
  lift::export_cubes(L, cubes, lonely::trusted_citations());
  run.attach(cubes.filename().string());
  run.phase_begin("roundtrip");
  const auto back = lift::import_cubes(cubes);
  const fs::path again = dir / (cubes.filename().string() + ".roundtrip");
  lift::export_cubes(back, again);
  const bool same = read_file(again) == read_file(cubes);
  fs::remove(again);
  run.check("cube count", back.cube_count() == L.pk_size(), std::to_string(back.cube_count()));
  run.check("round trip", same, "re-export is byte-identical");

  run.note("lift", {{"box", L.box.orders()}, {"domain", L.domain.orders()}, {"cubes", L.pk_size()},
                    {"weight_support", w.support_size()}});
  json rep;
  rep["schema"] = "weaktile.lift_report/1";
  rep["p"] = inst.p;
  rep["q"] = inst.q;
  rep["k"] = a.k;
  rep["box"] = L.box.orders();
  rep["domain"] = L.domain.orders();
  rep["cubes"] = L.pk_size();
  rep["w_on_box"] = {{"mode", wr.mode}, {"checked", wr.checked}, {"failures", wr.failures}};
  rep["lift"] = {{"mode", lr.mode}, {"checked", lr.checked}, {"failures", lr.failures}};
  rep["complement"] = {{"origin_mass", cm.origin_mass.str()},
                       {"nonnegative", cm.nonnegative},
                       {"identity", {{"mode", cm.identity.mode}, {"checked", cm.identity.checked}, {"failures", cm.identity.failures}}}};
  rep["round_trip"] = same;
  rep["trusted_citations"] = lonely::trusted_citations();
  run.certificate("lift-k" + std::to_string(a.k) + ".json", rep.dump(2));
  return run.finish(run.all_passed() ? kOk : kFailed);
}

// ---------------------------------------------------------------------------

int cmd_search_b(const Context& ctx, const SearchBArgs& a) {
  const fs::path out(a.out);
  const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
  Run run(ctx.command_line, ctx.config, dir, "search-b-" + out.filename().string());
  const Budget budget{a.budget.value_or(ctx.config.get("search.budget"))};
  run.parameters() = {{"p", a.p}, {"dim", a.dim}, {"budget", budget.nodes}};
  run.phase_begin("search");
  auto b = lonely::construct_B(a.p, lonely::BSource::search(budget), a.dim);
  fs::create_directories(dir);
  io::write_set(out, b.certificate.X);
  io::write_set(fs::path(a.out + ".spectrum"), b.certificate.spectrum);
  run.attach(out.filename().string());
  run.attach(out.filename().string() + ".spectrum");
  run.note("nodes", b.nodes);
  run.check("spectrum certificate", b.certificate.verified,
            plural(b.certificate.X.size(), "points") + " in " + b.certificate.X.spec().str());
  const std::uint64_t n = b.certificate.X.spec().size();
  if (n % b.certificate.X.size() != 0)
    run.check("non-tile by size", true, std::to_string(b.certificate.X.size()) + " does not divide " + std::to_string(n));
  return run.finish(run.all_passed() ? kOk : kFailed);
}

}  // namespace weaktile::cli
