#include "fanih/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include "fanih/error.hpp"
#include "fanih/io.hpp"

namespace fanih {

namespace {

struct Options {
  std::string file;
  bool json = false;
  int max_degree = -1;
  std::vector<std::string> modes;
  std::string suite = "all";
  long cone = -1;
  std::string ray;
  std::string out_path;
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::QuasiConvexityUnknown:
      return kExitQuasiConvexityUnknown;
    case ErrorKind::Parse:
    case ErrorKind::NotStrictlyConvex:
    case ErrorKind::RedundantRay:
    case ErrorKind::OverlappingCones:
    case ErrorKind::NotCommonFace:
    case ErrorKind::NotPurelyDimensional:
    case ErrorKind::ConeNotInFan:
    case ErrorKind::RayNotInterior:
    case ErrorKind::NotFullDim:
    case ErrorKind::InvalidArgument:
    case ErrorKind::FaceLatticeTooLarge:
      return kExitInput;
    default:
      return kExitInternal;
  }
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? " " : "") << v[i];
  return ss.str();
}

int resolve_degree(const Options& o, int n, std::ostream& err) {
  if (o.max_degree < 0) return 2 * n;
  if (o.max_degree % 2) throw Error(ErrorKind::InvalidArgument, "--max-degree must be even");
  if (o.max_degree < 2 * n)
    err << "warning: --max-degree " << o.max_degree << " is below 2n = " << 2 * n << "\n";
  return o.max_degree;
}

Json header(const std::string& command, const Options& o) {
  return {{"schema", kSchemaVersion}, {"command", command}, {"file", o.file}};
}

int cmd_betti(const Options& o, std::ostream& out, std::ostream& err) {
  auto fan = read_fan_file(o.file);
  const int d = resolve_degree(o, fan->ambient_dim(), err);
  const auto b = ih_betti(fan, d);
  const auto bc = ih_betti_compact(fan, d);
  if (o.json) {
    Json j = header("betti", o);
    j["betti"] = b;
    j["betti_compact"] = bc;
    j["sheaf"] = dump_sheaf(minimal_extension(fan, 0, d));
    out << j.dump(2) << "\n";
  } else {
    out << join(b) << "\n" << "compact: " << join(bc) << "\n";
  }
  return kExitOk;
}

int cmd_hvector(const Options& o, std::ostream& out, std::ostream& err) {
  const Polytope p = read_polytope_file(o.file);
  std::vector<std::string> modes = o.modes.empty() ? std::vector<std::string>{"oracle"} : o.modes;
  const int d = resolve_degree(o, p.dim, err);
  Json j = header("hvector", o);
  std::vector<std::pair<std::string, std::string>> lines;
  bool agree = true, compared = false;
  const auto oracle = stanley_h(p);
  auto as_long = [](const BettiVector& b) { return HVector(b.begin(), b.end()); };
  for (const auto& m : modes) {
    if (m == "oracle") {
      j["oracle"] = oracle;
      lines.emplace_back("oracle", join(oracle));
    } else if (m == "face") {
      const auto b = as_long(ih_betti(face_fan(p).fan, d));
      j["face"] = b;
      lines.emplace_back("face", join(b));
      compared = true;
      agree = agree && b == oracle;
    } else if (m == "normal") {
      const auto b = as_long(ih_betti(normal_fan(p).fan, d));
      const auto polar_oracle = stanley_h(polar(p));
      j["normal"] = b;
      j["oracle_polar"] = polar_oracle;
      lines.emplace_back("normal", join(b));
      lines.emplace_back("oracle_polar", join(polar_oracle));
      compared = true;
      agree = agree && b == polar_oracle;
    }
  }
  if (compared) {
    if (!j.contains("oracle")) {
      j["oracle"] = oracle;
      lines.emplace_back("oracle", join(oracle));
    }
    j["agree"] = agree;
    lines.emplace_back("agree", agree ? "yes" : "no");
  }
  if (o.json)
    out << j.dump(2) << "\n";
  else
    for (const auto& [k, v] : lines) out << k << ": " << v << "\n";
  return compared && !agree ? kExitCheckFailed : kExitOk;
}

struct CheckResult {
  std::string name;
  std::string status;  // PASS, FAIL, SKIP
  std::string detail;
  Json data = nullptr;
};

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  auto fan = read_fan_file(o.file);
  const int n = fan->ambient_dim();
  const int d = resolve_degree(o, n, err);
  const auto cls = classify(*fan);
  const bool qc = cls.quasi_convex == FanClass::Tri::Yes;
  const bool all = o.suite == "all";
  std::vector<CheckResult> results;
  using Check = std::function<CheckResult()>;
  auto run = [&](const std::string& name, bool needs_qc, const Check& check) {
    if (!all && o.suite != name) return;
    if (needs_qc && !qc) {
      if (!all) throw Error(ErrorKind::QuasiConvexityUnknown, "suite " + name + " needs a quasi-convex fan");
      results.push_back({name, "SKIP", "quasi-convexity not recognized", nullptr});
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::QuasiConvexityUnknown) throw;
      r = {name, "FAIL", e.what(), nullptr};
    }
    r.name = name;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    err << name << ": " << ms.count() << " ms\n";
    results.push_back(r);
  };

  run("pd", true, [&] {
    auto r = pd_check(fan, d);
    std::string detail = "betti " + join(r.pairing.betti) + ", compact " + join(r.pairing.betti_compact);
    if (!r.palindromic) detail += ", not palindromic";
    for (std::size_t k = 0; k < r.pairing.blocks.size(); ++k) {
      const auto& b = r.pairing.blocks[k];
      if (b.rows() != b.cols() || rank(b) != b.rows()) detail += ", block " + std::to_string(k) + " degenerate";
    }
    return CheckResult{"", r.ok ? "PASS" : "FAIL", detail, to_json(r.pairing)};
  });
  run("hl", true, [&]() -> CheckResult {
    if (!cls.complete) return {"", "SKIP", "fan is not complete"};
    auto psi = find_strictly_convex(*fan);
    if (!psi) return {"", "SKIP", "no strictly convex conewise linear function"};
    auto r = hl_check(fan, *psi, d);
    std::string detail;
    for (const auto& s : r.steps)
      detail += (detail.empty() ? "" : ", ") + std::string("L^") + std::to_string((s.to_degree - s.from_degree) / 2) +
                " degree " + std::to_string(s.from_degree) + " rank " + std::to_string(s.rank) + "/" +
                std::to_string(s.rows);
    return {"", r.ok ? "PASS" : "FAIL", detail, to_json(r)};
  });
  run("dual", false, [&]() -> CheckResult {
    auto e = minimal_extension(fan, 0, d);
    auto de = dual_sheaf(e);
    std::vector<std::string> bad;
    if (!is_flabby(e)) bad.push_back("E not flabby");
    if (!is_flabby(de.sheaf) || !is_compatible(de.sheaf)) bad.push_back("dual not pure");
    for (const auto& c : fan->cones())
      if (degrees(de.sheaf, c.id) != degrees(e, c.id))
        bad.push_back("cone " + std::to_string(c.id) + " degrees " + join(degrees(de.sheaf, c.id)) + " vs " +
                      join(degrees(e, c.id)));
    if (!bidual_check(e)) bad.push_back("biduality");
    auto v = vanishing_check(fan, d);
    for (const auto& f : v.failures) bad.push_back("vanishing " + f);
    if (bad.empty()) return {"", "PASS", "purity, biduality, self-dual degrees, vanishing"};
    std::string detail;
    for (const auto& b : bad) detail += (detail.empty() ? "" : "; ") + b;
    return {"", "FAIL", detail};
  });
  run("decomp", false, [&]() -> CheckResult {
    auto rep = decompose(minimal_extension(fan, 0, d));
    bool only_unit = rep.kernel_degrees[0] == std::vector<int>{0};
    for (std::size_t c = 1; c < rep.kernel_degrees.size(); ++c)
      if (!rep.kernel_degrees[c].empty()) only_unit = false;
    return {"", rep.balanced && only_unit ? "PASS" : "FAIL", rep.balanced ? "E is simple" : "unbalanced"};
  });
  run("compat", true, [&]() -> CheckResult {
    const ConeId top = fan->maximal_cones().front();
    Vec dir(static_cast<std::size_t>(n));
    for (auto r : fan->cone(top).rays)
      for (std::size_t i = 0; i < dir.size(); ++i) dir[i] += fan->ray(r)[i];
    auto pi = stellar_subdivision(fan, top, dir);
    auto rep = refinement_compatibility(pi, d);
    return {"", rep.equal ? "PASS" : "FAIL",
            "stellar subdivision of cone " + std::to_string(top) + ", " + std::to_string(rep.pairs) + " pairs"};
  });
  if (results.empty()) throw Error(ErrorKind::InvalidArgument, "unknown suite " + o.suite);

  bool ok = true;
  for (const auto& r : results)
    if (r.status == "FAIL") ok = false;
  if (o.json) {
    Json j = header("verify", o);
    Json arr = Json::array();
    for (const auto& r : results) {
      Json item = {{"name", r.name}, {"status", r.status}, {"detail", r.detail}};
      if (!r.data.is_null()) item["report"] = r.data;
      arr.push_back(item);
    }
    j["results"] = arr;
    j["ok"] = ok;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : results) out << r.status << " " << r.name << ": " << r.detail << "\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_subdivide(const Options& o, std::ostream& out, std::ostream& err) {
  auto fan = read_fan_file(o.file);
  const int n = fan->ambient_dim();
  const int d = resolve_degree(o, n, err);
  const ConeId sigma = o.cone < 0 ? fan->maximal_cones().front() : static_cast<ConeId>(o.cone);
  if (sigma >= fan->size()) throw Error(ErrorKind::ConeNotInFan, "cone " + std::to_string(sigma));
  Vec dir(static_cast<std::size_t>(n));
  if (o.ray.empty()) {
    for (auto r : fan->cone(sigma).rays)
      for (std::size_t i = 0; i < dir.size(); ++i) dir[i] += fan->ray(r)[i];
  } else {
    dir.clear();
    std::stringstream ss(o.ray);
    std::string tok;
    while (std::getline(ss, tok, ',')) dir.push_back(parse_rational(tok));
    if (dir.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::Parse, "--ray has the wrong length");
  }
  auto pi = stellar_subdivision(fan, sigma, dir);
  const Json refined = dump_fan(*pi.source);
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out_path);
    f << refined.dump(2) << "\n";
  }

  std::string compat_status, compat_detail;
  std::size_t pairs = 0;
  const bool qc = classify(*pi.target).quasi_convex == FanClass::Tri::Yes &&
                  classify(*pi.source).quasi_convex == FanClass::Tri::Yes;
  if (qc) {
    auto rep = refinement_compatibility(pi, d);
    compat_status = rep.equal ? "PASS" : "FAIL";
    pairs = rep.pairs;
  } else {
    compat_status = "SKIP";
    compat_detail = "quasi-convexity not recognized";
  }
  auto di = direct_image(pi, minimal_extension(pi.source, 0, d));
  auto dec = decompose(di.sheaf);

  if (o.json) {
    Json j = header("subdivide", o);
    j["cone"] = sigma;
    j["ray"] = to_json(primitive(dir));
    j["refined"] = refined;
    j["compatibility"] = {{"status", compat_status}, {"pairs", pairs}, {"detail", compat_detail}};
    j["decomposition"] = to_json(dec);
    out << j.dump(2) << "\n";
  } else {
    std::string ray_text;
    for (const auto& x : primitive(dir)) ray_text += (ray_text.empty() ? "" : ",") + to_string(x);
    out << "subdivided cone " << sigma << " along " << ray_text << ": " << pi.source->rays().size() << " rays, "
        << pi.source->maximal_cones().size()
        << " maximal cones\n";
    out << "compatibility: " << compat_status;
    if (qc) out << " (" << pairs << " pairs)";
    if (!compat_detail.empty()) out << " (" << compat_detail << ")";
    out << "\n";
    out << "decomposition: " << (dec.balanced ? "balanced" : "unbalanced") << "\n";
    for (std::size_t c = 0; c < dec.kernel_degrees.size(); ++c)
      if (!dec.kernel_degrees[c].empty())
        out << "  K_" << c << " (rays " << join(pi.target->cone(c).rays) << "): degrees "
            << join(dec.kernel_degrees[c]) << "\n";
    if (o.out_path.empty()) out << refined.dump() << "\n";
  }
  return compat_status == "FAIL" ? kExitCheckFailed : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intersection cohomology of polyhedral fans"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", o.file, what)->required();
    sub->add_flag("--json", o.json, "Print a JSON report");
    sub->add_option("--max-degree", o.max_degree, "Truncation degree (even, default 2n)");
  };
  auto* betti = app.add_subcommand("betti", "IH Betti numbers of a fan");
  common(betti, "Fan file");
  auto* hvec = app.add_subcommand("hvector", "Generalized h-vector of a polytope");
  common(hvec, "Polytope file");
  hvec->add_option("--mode", o.modes, "face, normal and/or oracle")
      ->check(CLI::IsMember({"face", "normal", "oracle"}))
      ->delimiter(',');
  auto* verify = app.add_subcommand("verify", "Run theorem checks on a fan");
  common(verify, "Fan file");
  verify->add_option("--suite", o.suite, "pd, hl, dual, decomp, compat or all")
      ->check(CLI::IsMember({"pd", "hl", "dual", "decomp", "compat", "all"}));
  auto* sub = app.add_subcommand("subdivide", "Stellar subdivision with compatibility report");
  common(sub, "Fan file");
  sub->add_option("--cone", o.cone, "Cone id (default: first maximal cone)");
  sub->add_option("--ray", o.ray, "Comma separated direction (default: sum of the cone's rays)");
  sub->add_option("--out", o.out_path, "Write the refined fan here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    if (*betti) return cmd_betti(o, out, err);
    if (*hvec) return cmd_hvector(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    return cmd_subdivide(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace fanih
