#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wslice/catalog.hpp"
#include "wslice/longroot.hpp"
#include "wslice/poisson.hpp"
#include "wslice/report.hpp"
#include "wslice/rmatrix.hpp"
#include "wslice/sl3case.hpp"
#include "wslice/verify.hpp"

using namespace wslice;
using report::Json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string command;
  std::string type = "A";
  int rank = 2;
  std::string word;
  std::string ordering = "angle";
  std::string order;
  std::string group = "sl3";
  std::string structure = "tau";
  std::string rmatrix = "standard";
  std::string emit = "table";
  bool verify = false;
  bool deep = false;
  bool type_given = false;
  std::uint64_t seed = 7;
  int points = 10;
  std::string format = "json";
  std::string output;
};

Json config_json(const JobConfig& c) {
  Json j{{"command", c.command}, {"seed", c.seed}};
  if (c.command == "analyze" || c.command == "rmatrix") {
    j["type"] = c.type;
    j["rank"] = c.rank;
    j["word"] = c.word;
    j["ordering"] = c.ordering;
    if (!c.order.empty()) j["order"] = c.order;
  } else if (c.command == "bracket-table") {
    j["group"] = c.group;
    j["structure"] = c.structure;
    j["rmatrix"] = c.rmatrix;
  } else if (c.command == "sl3") {
    j["emit"] = c.emit;
  } else if (c.command == "catalog") {
    if (c.type_given) {
      j["type"] = c.type;
      j["rank"] = c.rank;
    }
    j["verify"] = c.verify;
    j["deep"] = c.deep;
  } else if (c.command == "longroot") {
    j["type"] = c.type;
    j["rank"] = c.rank;
    j["verify"] = c.verify;
    j["points"] = c.points;
  } else if (c.command == "verify-all") {
    j["type"] = c.type;
    j["rank"] = c.rank;
    j["deep"] = c.deep;
    j["points"] = c.points;
  }
  return j;
}

JobConfig config_from_json(const nlohmann::json& j) {
  JobConfig c;
  c.command = j.at("command").get<std::string>();
  c.seed = j.value("seed", c.seed);
  c.type_given = j.contains("type");
  c.type = j.value("type", c.type);
  c.rank = j.value("rank", c.rank);
  c.word = j.value("word", c.word);
  c.ordering = j.value("ordering", c.ordering);
  c.order = j.value("order", c.order);
  c.group = j.value("group", c.group);
  c.structure = j.value("structure", c.structure);
  c.rmatrix = j.value("rmatrix", c.rmatrix);
  c.emit = j.value("emit", c.emit);
  c.verify = j.value("verify", c.verify);
  c.deep = j.value("deep", c.deep);
  c.points = j.value("points", c.points);
  return c;
}

RootSystemData root_system_of(const JobConfig& c) {
  if (c.type.size() != 1) throw UsageError("type must be a single letter A-G: " + c.type);
  try {
    return build_root_system(c.type[0], c.rank);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Json result(const JobConfig& c, Json body, bool pass) {
  Json out{{"config", config_json(c)}};
  for (auto& [k, v] : body.items()) out[k] = v;
  out["pass"] = pass;
  return out;
}

void require_deep(const JobConfig& c, const RootSystemData& rs) {
  if (rs.type_label == 'E' && rs.rank >= 7 && !c.deep) throw UsageError("E7 and E8 need --deep");
}

std::string element_label(const Json& v) {
  if (!v.is_object()) return "";
  if (v.contains("id")) return v["id"].dump();
  if (v.contains("entry")) return v["entry"]["name"].get<std::string>();
  return "";
}

std::string join_path(const std::string& a, const std::string& b) { return a.empty() ? b : b.empty() ? a : a + "/" + b; }

void collect_failures(const Json& j, const std::string& path, Json& out) {
  if (j.is_object()) {
    if (j.contains("name") && j.contains("pass") && j["pass"].is_boolean() && !j["pass"].get<bool>())
      out.push_back(path.empty() ? j["name"].get<std::string>() : path + "/" + j["name"].get<std::string>());
    for (const auto& [k, v] : j.items())
      if (k != "config" && k != "diagnostics") collect_failures(v, path.empty() ? k : path + "/" + k, out);
  } else if (j.is_array()) {
    for (const auto& v : j) collect_failures(v, join_path(path, element_label(v)), out);
  }
}

Json checks_of(const std::vector<Check>& cs) { return report::checks(cs); }

// analyze / rmatrix

Json run_analyze(const JobConfig& c, bool& pass) {
  auto rs = root_system_of(c);
  if (c.word.empty()) throw UsageError("--word is required");
  WeylWord w = [&] {
    try {
      return parse_word(rs, c.word);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  DecompositionOptions opt;
  if (c.ordering == "construction") opt.order = DecompositionOptions::Order::Construction;
  else if (c.ordering != "angle") throw UsageError("--ordering must be angle or construction");
  if (!c.order.empty()) {
    std::stringstream in(c.order);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        opt.explicit_order.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw UsageError("--order must be comma separated part indices");
      }
    }
  }
  SliceData sd;
  try {
    sd = analyze(rs, w, opt);
  } catch (const std::invalid_argument& e) {
    if (opt.explicit_order.empty()) throw;
    throw UsageError(e.what());
  }
  pass = sd.ok();
  if (c.command == "analyze") return Json{{"root_system", report::root_system(rs)}, {"slice", report::slice(sd, rs)}};
  auto cb = build_chevalley(rs);
  auto R = build_r(sd, cb);
  auto cs = report::rmatrix_checks(sd, cb, R);
  pass = pass && all_pass(cs);
  return Json{{"slice_checks", checks_of(sd.checks)}, {"rmatrix", report::rmatrix(R)}, {"checks", checks_of(cs)}};
}

// bracket-table

Json run_bracket_table(const JobConfig& c, bool& pass) {
  int n;
  if (c.group == "sl2") n = 2;
  else if (c.group == "sl3") n = 3;
  else throw UsageError("--group must be sl2 or sl3");
  if (c.structure != "tau" && c.structure != "pbr") throw UsageError("--structure must be tau or pbr");
  if (c.rmatrix != "standard" && c.rmatrix != "lower") throw UsageError("--rmatrix must be standard or lower");
  auto ctx = verify::detail::sl(n);
  auto R = c.rmatrix == "standard" ? standard_rcontext(ctx) : lower_rcontext(ctx);
  auto t = c.structure == "tau" ? verify::detail::tau_table(ctx, R) : verify::detail::pbr_table(ctx, R);
  std::vector<Check> cs;
  cs.push_back({"antisymmetric", t.antisymmetric(), ""});
  auto jv = t.jacobi_violation();
  const auto& names = t.vars()->names;
  cs.push_back({"jacobi", !jv, jv ? names[(*jv)[0]] + "," + names[(*jv)[1]] + "," + names[(*jv)[2]] : ""});
  if (n == 3 && c.structure == "tau" && c.rmatrix == "standard") {
    auto g = verify::gst_table();
    for (const auto& ch : g.checks) cs.push_back(ch);
  }
  pass = all_pass(cs);
  return Json{{"table", report::table(t)}, {"checks", checks_of(cs)}};
}

// sl3

Json run_sl3(const JobConfig& c, bool& pass) {
  if (c.emit == "table") {
    auto cr = verify::wps_table();
    pass = cr.pass();
    return Json{{"table", report::table(verify::detail::sl3_reduced_table())}, {"checks", checks_of(cr.checks)}};
  }
  if (c.emit == "fiber") {
    auto fiber = sl3::singular_fiber(verify::detail::sl3_reduced_table());
    auto cr = verify::brsing_table();
    pass = cr.pass();
    return Json{{"table", report::table(fiber.table)},
                {"relation", report::polynomial(fiber.relation)},
                {"gamma_on_fiber", report::polynomial(fiber.gamma_on_fiber)},
                {"checks", checks_of(cr.checks)}};
  }
  if (c.emit == "casimirs") {
    auto [c1, c2] = sl3::casimirs();
    auto cr = verify::casimirs();
    pass = cr.pass();
    return Json{{"casimirs", {report::polynomial(c1), report::polynomial(c2)}}, {"checks", checks_of(cr.checks)}};
  }
  throw UsageError("--emit must be table, fiber or casimirs");
}

// catalog

Json run_catalog(const JobConfig& c, bool& pass) {
  std::vector<std::pair<char, int>> scope;
  if (c.type_given) {
    root_system_of(c);
    try {
      catalog::subregular(c.type[0], c.rank);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    require_deep(c, root_system_of(c));
    scope.push_back({c.type[0], c.rank});
  } else {
    scope = c.deep ? catalog::deep_scope() : catalog::default_scope();
  }
  Json entries = Json::array();
  pass = true;
  for (const auto& rep : catalog::verify_catalog(scope)) {
    Json e = report::entry_report(rep, c.type_given);
    pass = pass && rep.error.empty() && (!c.verify || rep.pass());
    if (rep.entry.type_label == 'F' && rep.entry.rank == 4) {
      auto rs = build_root_system('F', 4);
      try {
        e["plane_search"] = report::plane_search(catalog::f4_plane_search(rs, rep.entry.s_e));
      } catch (const std::runtime_error& err) {
        e["plane_search"] = Json{{"found", false}, {"error", err.what()}};
      }
    }
    entries.push_back(e);
  }
  return Json{{"entries", entries}};
}

// longroot

Json model_section(const JobConfig& c, int n, bool& pass) {
  auto md = longroot::make_model(n);
  auto fs = longroot::coordinate_functions(md);
  std::mt19937_64 rng(c.seed);
  int agree = 0, anti = 0, diff_ok = 0, diff_total = 0, four_ok = 0, total = 0;
  for (int k = 0; k < c.points; ++k) {
    auto p = md.sample(rng);
    for (const auto& f : fs) {
      ++diff_total;
      if (longroot::differential_check(f, md, p).pass) ++diff_ok;
    }
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = a + 1; b < fs.size(); ++b) {
        ++total;
        Q s = longroot::str_bracket(fs[a], fs[b], md, p.m);
        if (s == longroot::reduced_bracket_at(fs[a], fs[b], md, p)) ++agree;
        if (s == -longroot::str_bracket(fs[b], fs[a], md, p.m)) ++anti;
        if (longroot::four_term_defect(fs[a], fs[b], md, p.m) == 0) ++four_ok;
      }
  }
  auto frac = [](int ok, int all) { return std::to_string(ok) + "/" + std::to_string(all); };
  std::vector<Check> cs{{"differential", diff_ok == diff_total, frac(diff_ok, diff_total)},
                        {"str.equals_reduced", agree == total, frac(agree, total)},
                        {"str.antisymmetric", anti == total, frac(anti, total)},
                        {"four_terms.tau", four_ok == total, frac(four_ok, total)}};
  Json out{{"group", "SL(" + std::to_string(n) + ")"}, {"points", c.points}};
  if (md.z_cartan.size() == 1 && md.z_roots.empty()) {
    auto sc = longroot::symbolic_chart(md);
    auto t = longroot::symbolic_table(md, sc);
    cs.push_back({"closed_form.chart", longroot::chart_round_trip(sc), ""});
    cs.push_back({"closed_form.antisymmetric", t.antisymmetric(), ""});
    cs.push_back({"closed_form.jacobi", !t.jacobi_violation(), ""});
    out["closed_form"] = report::table(t);
  }
  out["checks"] = checks_of(cs);
  pass = pass && all_pass(cs);
  return out;
}

Json run_longroot(const JobConfig& c, bool& pass) {
  auto rs = root_system_of(c);
  auto rep = longroot::lie_report(rs.type_label, rs.rank);
  Json out{{"lie", report::lie_report(rep, rs)}};
  pass = rep.error.empty();
  if (!c.verify) {
    out["lie"].erase("checks");
    out["lie"].erase("pass");
    return out;
  }
  pass = rep.pass();
  if (rs.type_label == 'A' && rs.rank <= 2) out["model"] = model_section(c, rs.rank + 1, pass);
  return out;
}

// verify-all

std::vector<Check> checks_of_lie(const longroot::LieReport& rep) {
  auto cs = rep.checks;
  if (!rep.error.empty()) cs.push_back({"lie_report", false, rep.error});
  return cs;
}

Json run_verify_all(const JobConfig& c, bool& pass) {
  auto rs = root_system_of(c);
  require_deep(c, rs);
  const char t = rs.type_label;
  const int r = rs.rank;
  const bool sl3_case = t == 'A' && r == 2;
  using Job = std::future<std::vector<verify::Criterion>>;
  auto job = [](auto fn) { return std::async(std::launch::async, fn); };
  std::vector<Job> jobs;
  if (sl3_case)
    jobs.push_back(job([] { return std::vector{verify::gst_table(), verify::wps_table(), verify::brsing_table(), verify::casimirs()}; }));
  jobs.push_back(job([t, r] {
    auto [c5, c6] = verify::rmatrix_criteria({{t, r}});
    return std::vector{c5, c6};
  }));
  if (sl3_case) jobs.push_back(job([seed = c.seed] { return std::vector{verify::tangency(seed)}; }));
  bool has_entry = true;
  try {
    catalog::subregular(t, r);
  } catch (const std::invalid_argument&) {
    has_entry = false;
  }
  if (has_entry)
    jobs.push_back(job([t, r] {
      auto rep = catalog::verify_entry(t, r);
      std::string failed = rep.error;
      for (const auto& cl : rep.claims)
        if (!cl.pass) failed += (failed.empty() ? "" : ",") + cl.name;
      return std::vector{verify::Criterion{8, "subregular catalog claims", {{rep.entry.name(), catalog::family_claims_pass(rep), failed}}}};
    }));
  jobs.push_back(job([t, r, sl3_case, seed = c.seed, points = c.points] {
    verify::Criterion c9{9, "reflection in a long root", checks_of_lie(longroot::lie_report(t, r))};
    if (sl3_case) c9.checks.push_back(verify::longroot_claims(seed, points).checks.back());
    return std::vector{c9};
  }));
  if (sl3_case) jobs.push_back(job([seed = c.seed] { return std::vector{verify::jacobi_suites(seed)}; }));
  Json crit = Json::array();
  pass = true;
  for (auto& j : jobs)
    for (const auto& cr : j.get()) {
      crit.push_back(verify::criterion_json(cr));
      pass = pass && cr.pass();
    }
  return Json{{"criteria", crit}};
}

Json dispatch(const JobConfig& c, bool& pass) {
  if (c.command == "analyze" || c.command == "rmatrix") return run_analyze(c, pass);
  if (c.command == "bracket-table") return run_bracket_table(c, pass);
  if (c.command == "sl3") return run_sl3(c, pass);
  if (c.command == "catalog") return run_catalog(c, pass);
  if (c.command == "longroot") return run_longroot(c, pass);
  if (c.command == "verify-all") return run_verify_all(c, pass);
  throw UsageError("unknown command " + c.command);
}

void render_text(const Json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    if (j.contains("name") && j.contains("pass") && j["pass"].is_boolean()) {
      os << (j["pass"].get<bool>() ? "PASS " : "FAIL ") << (path.empty() ? "" : path + "/") << j["name"].get<std::string>();
      if (j.contains("detail") && !j["detail"].get<std::string>().empty()) os << " (" << j["detail"].get<std::string>() << ")";
      os << "\n";
      return;
    }
    for (const auto& [k, v] : j.items()) {
      if (k == "config" || k == "id") continue;
      if (v.is_string() || v.is_number()) os << (path.empty() ? "" : path + "/") << k << ": " << v.dump() << "\n";
      else if (k == "text" && v.is_string()) os << path << ": " << v.get<std::string>() << "\n";
      else if (k != "pass") render_text(v, path.empty() ? k : path + "/" + k, os);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& v = j[i];
      std::string label = join_path(path, element_label(v));
      if (v.is_object() && v.contains("pair")) {
        os << path << "/{" << v["pair"][0].get<std::string>() << "," << v["pair"][1].get<std::string>()
           << "} = " << v["value"]["text"].get<std::string>() << "\n";
        continue;
      }
      if (v.is_object()) render_text(v, label, os);
    }
  }
}

std::string render(const Json& out, const std::string& format) {
  if (format == "json") return out.dump(2) + "\n";
  std::ostringstream os;
  render_text(out, "", os);
  os << "result: " << (out["pass"].get<bool>() ? "pass" : "fail") << "\n";
  if (out.contains("failures"))
    for (const auto& f : out["failures"]) os << "failure: " << f.get<std::string>() << "\n";
  return os.str();
}

std::filesystem::path output_path(const JobConfig& c) {
  const char* env = std::getenv("WSLICE_OUTPUT_DIR");
  std::filesystem::path dir = env && *env ? env : "";
  if (!c.output.empty()) {
    std::filesystem::path p = c.output;
    return p.is_relative() && !dir.empty() ? dir / p : p;
  }
  if (dir.empty()) return {};
  return dir / (c.command + (c.format == "json" ? ".json" : ".txt"));
}

int run(JobConfig c) {
  if (c.format != "json" && c.format != "text") throw UsageError("--format must be json or text");
  if (c.points < 1) throw UsageError("--points must be positive");
  bool pass = false;
  Json body = dispatch(c, pass);
  Json out = result(c, std::move(body), pass);
  Json failures = Json::array();
  collect_failures(out, "", failures);
  if (!pass) out["failures"] = failures;
  std::string text = render(out, c.format);
  auto path = output_path(c);
  if (path.empty()) {
    std::cout << text;
  } else {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl group slices, r-matrices and reduced Poisson brackets"};
  app.require_subcommand(1);
  JobConfig c;
  std::string config_file;
  auto common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "RNG seed for sampled checks");
    s->add_option("--output,-o", c.output, "output file, relative to WSLICE_OUTPUT_DIR if set");
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto typed = [&](CLI::App* s, bool required) {
    auto t = s->add_option("--type,-t", c.type, "simple type A-G");
    auto r = s->add_option("--rank,-r", c.rank, "rank");
    if (required) {
      t->required();
      r->required();
    }
  };

  auto* an = app.add_subcommand("analyze", "Weyl element slice data");
  typed(an, true);
  an->add_option("--word,-w", c.word, "comma separated roots, e.g. 1,2,1+2")->required();
  common(an);
  auto* rm = app.add_subcommand("rmatrix", "r-matrix of a Weyl element");
  typed(rm, true);
  rm->add_option("--word,-w", c.word, "comma separated roots")->required();
  common(rm);
  for (auto* sub : {an, rm}) {
    sub->add_option("--ordering", c.ordering, "angle or construction")->check(CLI::IsMember({"angle", "construction"}));
    sub->add_option("--order", c.order, "permutation of the invariant parts, e.g. 1,0");
  }
  auto* bt = app.add_subcommand("bracket-table", "coordinate bracket table on SL(2) or SL(3)");
  bt->add_option("--group", c.group, "sl2 or sl3")->check(CLI::IsMember({"sl2", "sl3"}));
  bt->add_option("--structure", c.structure, "tau or pbr")->check(CLI::IsMember({"tau", "pbr"}));
  bt->add_option("--rmatrix", c.rmatrix, "standard or lower")->check(CLI::IsMember({"standard", "lower"}));
  common(bt);
  auto* s3 = app.add_subcommand("sl3", "reduced brackets on the SL(3) slice");
  s3->add_option("--emit", c.emit, "table, fiber or casimirs")->check(CLI::IsMember({"table", "fiber", "casimirs"}));
  common(s3);
  auto* ca = app.add_subcommand("catalog", "subregular catalog");
  typed(ca, false);
  ca->add_flag("--verify", c.verify, "check the family claims");
  ca->add_flag("--deep", c.deep, "extended rank scope");
  common(ca);
  auto* lr = app.add_subcommand("longroot", "reflection in a long root");
  typed(lr, true);
  lr->add_flag("--verify", c.verify, "run the checks");
  lr->add_option("--points", c.points, "sampled points");
  common(lr);
  auto* va = app.add_subcommand("verify-all", "all gates for one type");
  typed(va, true);
  va->add_flag("--deep", c.deep, "extended rank scope");
  va->add_option("--points", c.points, "sampled points");
  common(va);
  auto* rc = app.add_subcommand("run", "replay the config object of an earlier output");
  rc->add_option("config", config_file, "JSON file with a config object")->required()->check(CLI::ExistingFile);
  common(rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    auto* sub = app.get_subcommands().front();
    if (sub == rc) {
      std::ifstream in(config_file);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad config file: ") + e.what());
      }
      JobConfig loaded;
      try {
        loaded = config_from_json(j.contains("config") ? j["config"] : j);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad config: ") + e.what());
      }
      loaded.output = c.output;
      loaded.format = c.format;
      if (rc->count("--seed")) loaded.seed = c.seed;
      return run(loaded);
    }
    c.command = sub->get_name();
    auto given = [&](const char* name) {
      auto* opt = sub->get_option_no_throw(name);
      return opt && opt->count() > 0;
    };
    c.type_given = given("--type");
    if (c.command == "catalog" && c.type_given != given("--rank"))
      throw UsageError("--type and --rank go together");
    return run(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
