#include "engel/algorithmics.hpp"
#include "engel/analysis.hpp"
#include "engel/catalog.hpp"
#include "engel/io.hpp"
#include "engel/net.hpp"
#include "engel/protocols.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace engel;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitProtocol = 4;

class BudgetStop : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  bool kv = false;
  std::vector<std::pair<std::string, std::string>> rows;

  void add(const std::string& key, const std::string& value) { rows.emplace_back(key, value); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "yes" : "no")); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    add(key, os.str());
  }

  void print(std::ostream& os) const {
    if (kv) {
      for (const auto& [k, v] : rows) {
        const bool quote = v.empty() || v.find_first_of(" \t\"=") != std::string::npos;
        os << k << '=';
        if (!quote) {
          os << v << '\n';
          continue;
        }
        os << '"';
        for (char c : v) {
          if (c == '"' || c == '\\') os << '\\';
          os << c;
        }
        os << "\"\n";
      }
      return;
    }
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.first.size());
    for (const auto& [k, v] : rows) os << k << std::string(w - k.size(), ' ') << "  " << v << '\n';
  }
};

struct GroupArgs {
  std::string name;
  std::string file;

  void attach(CLI::App* app) {
    auto* n = app->add_option("--name", name, "catalog group (burnside3:m, freenil:m:c, expquot:m:c:q, S3, C:k, ...)");
    auto* f = app->add_option("--file", file, "presentation file");
    n->excludes(f);
  }

  PresentationPtr load() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw InvalidArgument("cannot read " + file);
      std::stringstream buf;
      buf << in.rdbuf();
      return parse_presentation(buf.str());
    }
    if (name.empty()) throw InvalidArgument("give --name or --file");
    return catalog_by_name(name);
  }
};

GroupElement element(const PresentationPtr& p, const std::string& text) {
  return collect(p, FreeWord::parse(text, p->ngens()));
}

std::vector<GroupElement> element_list(const PresentationPtr& p, const std::string& text) {
  std::vector<GroupElement> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(element(p, part));
  return out;
}

std::vector<GroupElement> defining(const PresentationPtr& p) {
  std::vector<GroupElement> out;
  for (auto i : p->defining_generators()) out.push_back(GroupElement::generator(p, i));
  return out;
}

std::string show(const GroupElement& x) { return x.is_identity() ? "1" : x.to_string(); }

void check_status(SearchStatus s) {
  if (s == SearchStatus::kExhausted) throw BudgetStop("search budget exhausted");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

struct Verb {
  CLI::App* app;
  std::function<void(Output&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engel group toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
  std::vector<Verb> verbs;
  auto leaf = [](CLI::App* parent, const std::string& name, const std::string& help) {
    return parent->add_subcommand(name, help);
  };

  // ---- group ----
  auto* group = app.add_subcommand("group", "build, describe and export presentations");
  group->require_subcommand(1);

  std::string family, label, out_path;
  unsigned fm = 2, fc = 2;
  std::string fq = "25";
  auto* gbuild = leaf(group, "build", "build a presentation from a family");
  gbuild->add_option("--family", family, "burnside3, freenil, expquot, classic")->required();
  gbuild->add_option("--m", fm, "generators");
  gbuild->add_option("--c", fc, "class");
  gbuild->add_option("--q", fq, "exponent quotient modulus");
  gbuild->add_option("--label", label, "classic group name");
  gbuild->add_option("--out", out_path, "write presentation here");
  verbs.push_back({gbuild, [&](Output& o) {
                     PresentationPtr p;
                     if (family == "burnside3") p = build_burnside3(fm);
                     else if (family == "freenil") p = build_free_nilpotent(fm, fc);
                     else if (family == "expquot") p = build_exponent_quotient(fm, fc, BigInt(fq));
                     else if (family == "classic") p = build_classic(label);
                     else throw InvalidArgument("unknown family '" + family + "'");
                     const auto text = emit_presentation(*p);
                     if (out_path.empty()) {
                       std::cout << text << '\n';
                       return;
                     }
                     write_file(out_path, text + "\n");
                     o.add("label", p->label());
                     o.add("ngens", p->ngens());
                     o.add("written", out_path);
                   }});

  GroupArgs info_g;
  auto* ginfo = leaf(group, "info", "order, exponent, class and structure");
  info_g.attach(ginfo);
  verbs.push_back({ginfo, [&](Output& o) {
                     auto p = info_g.load();
                     o.add("label", p->label());
                     o.add("ngens", p->ngens());
                     std::string orders;
                     for (std::size_t i = 0; i < p->ngens(); ++i)
                       orders += (i ? " " : "") + (p->is_finite(i) ? p->relative_order(i).str() : std::string("inf"));
                     o.add("relative_orders", orders);
                     const auto order = p->group_order();
                     o.add("order", order ? order->str() : std::string("inf"));
                     if (ElementTable::fits(*p)) {
                       const auto s = describe_group(ElementTable(p));
                       o.add("exponent", s.exponent.str());
                       o.add("class", s.nilpotency_class ? std::to_string(*s.nilpotency_class) : std::string("not nilpotent"));
                       o.add("abelian", s.abelian);
                       o.add("center", s.center_size);
                       o.add("conjugacy_classes", s.conjugacy_classes);
                       std::string lcs;
                       for (auto x : s.lower_central_sizes) lcs += (lcs.empty() ? "" : " ") + std::to_string(x);
                       o.add("lower_central_series", lcs);
                     } else {
                       o.add("nilpotent_shape", p->nilpotent_shape());
                       if (p->nilpotent_shape()) o.add("class_bound", p->layer_count());
                     }
                   }});

  GroupArgs export_g;
  bool export_table = false;
  std::string export_out;
  auto* gexport = leaf(group, "export", "print the presentation text or the Cayley table");
  export_g.attach(gexport);
  gexport->add_flag("--table", export_table, "Cayley table of a small finite group");
  gexport->add_option("--out", export_out, "write here instead of stdout");
  verbs.push_back({gexport, [&](Output&) {
                     auto p = export_g.load();
                     std::ostringstream os;
                     if (!export_table) {
                       os << emit_presentation(*p) << '\n';
                     } else {
                       if (!ElementTable::fits(*p)) throw InvalidArgument("group too large for a Cayley table");
                       ElementTable t(p);
                       for (std::size_t k = 0; k < t.size(); ++k) os << k << ' ' << show(t.element(k)) << '\n';
                       for (std::size_t a = 0; a < t.size(); ++a) {
                         for (std::size_t b = 0; b < t.size(); ++b) os << (b ? " " : "") << t.mul(a, b);
                         os << '\n';
                       }
                     }
                     if (export_out.empty()) std::cout << os.str();
                     else write_file(export_out, os.str());
                   }});

  // ---- calc ----
  auto* calc = app.add_subcommand("calc", "arithmetic on normal forms");
  calc->require_subcommand(1);
  GroupArgs calc_g;
  std::string cx, cy;
  std::string ck = "1";
  unsigned cn = 1;
  std::vector<std::string> cmore;

  auto* cmul = leaf(calc, "mul", "x * y");
  calc_g.attach(cmul);
  cmul->add_option("--x", cx)->required();
  cmul->add_option("--y", cy)->required();
  verbs.push_back({cmul, [&](Output& o) {
                     auto p = calc_g.load();
                     o.add("result", show(element(p, cx) * element(p, cy)));
                   }});

  auto* cpow = leaf(calc, "pow", "x^k");
  calc_g.attach(cpow);
  cpow->add_option("--x", cx)->required();
  cpow->add_option("--k", ck)->required();
  verbs.push_back({cpow, [&](Output& o) {
                     auto p = calc_g.load();
                     auto x = element(p, cx);
                     o.add("result", show(power(x, BigInt(ck))));
                     o.add("order_of_x", element_order(x).to_string());
                   }});

  auto* ccomm = leaf(calc, "comm", "left-normed commutator [x, y, ...]");
  calc_g.attach(ccomm);
  ccomm->add_option("--x", cx)->required();
  ccomm->add_option("--y", cy)->required();
  ccomm->add_option("--then", cmore, "further entries");
  verbs.push_back({ccomm, [&](Output& o) {
                     auto p = calc_g.load();
                     std::vector<GroupElement> xs{element(p, cx), element(p, cy)};
                     for (const auto& m : cmore) xs.push_back(element(p, m));
                     auto r = commutator(xs);
                     o.add("result", show(r));
                     o.add("identity", r.is_identity());
                   }});

  auto* cengel = leaf(calc, "engel", "[x, _n y]");
  calc_g.attach(cengel);
  cengel->add_option("--x", cx)->required();
  cengel->add_option("--y", cy)->required();
  cengel->add_option("--n", cn)->required();
  verbs.push_back({cengel, [&](Output& o) {
                     auto p = calc_g.load();
                     auto r = engel_commutator(element(p, cx), element(p, cy), cn);
                     o.add("result", r.is_identity() ? std::string("identity") : r.to_string());
                     o.add("identity", r.is_identity());
                   }});

  // ---- engel ----
  auto* engel_cmd = app.add_subcommand("engel", "Engel laws and element classification");
  engel_cmd->require_subcommand(1);
  GroupArgs law_g;
  std::string law_text = "engel2";
  std::uint64_t law_samples = 0, seed = 0;
  auto* echeck = leaf(engel_cmd, "check-law", "test a law exhaustively or on samples");
  law_g.attach(echeck);
  echeck->add_option("--law", law_text, "engel2, engel3a, engel3b, engel4, engel:<n>, locnil:<r>:<m>");
  auto* samples_opt = echeck->add_option("--samples", law_samples, "sample count instead of exhaustive");
  auto* law_seed = echeck->add_option("--seed", seed);
  samples_opt->needs(law_seed);
  verbs.push_back({echeck, [&](Output& o) {
                     auto p = law_g.load();
                     const auto law = LawSpec::parse(law_text);
                     const auto mode = law_samples ? CheckMode::sampled(law_samples, seed) : CheckMode::full();
                     const auto v = check_law(p, law, mode);
                     o.add("law", law.name());
                     o.add("mode", std::string(mode.exhaustive ? "exhaustive" : "sampled"));
                     o.add("holds", v.holds);
                     o.add("checked", v.checked);
                     std::string w;
                     for (const auto& x : v.witness) w += (w.empty() ? "" : ", ") + show(x);
                     if (!v.holds) o.add("witness", w);
                   }});

  GroupArgs cls_g;
  std::string side = "right";
  unsigned n_max = 10;
  auto* eclass = leaf(engel_cmd, "classify", "right or left Engel elements up to n_max");
  cls_g.attach(eclass);
  eclass->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
  eclass->add_option("--n-max", n_max);
  verbs.push_back({eclass, [&](Output& o) {
                     auto p = cls_g.load();
                     const auto c = classify_engel_elements(p, side == "left" ? EngelSide::kLeft : EngelSide::kRight, n_max);
                     o.add("side", side);
                     o.add("elements", c.elements.size());
                     o.add("engel", c.engel_count);
                     o.add("not_engel", c.not_engel_count);
                     o.add("undetermined", c.undetermined_count);
                     o.add("group_engel_n", c.group_engel_n ? std::to_string(*c.group_engel_n) : std::string("none"));
                   }});

  // ---- degree ----
  GroupArgs deg_g;
  unsigned deg_n = 1, deg_radius = 4;
  std::string deg_mode = "exact";
  std::uint64_t deg_samples = 100000, deg_seed = 0;
  double deg_conf = 0.95;
  bool deg_bounds = false;
  auto* degree = app.add_subcommand("degree", "degree of n-nilpotency");
  deg_g.attach(degree);
  degree->add_option("--n", deg_n);
  degree->add_option("--mode", deg_mode)->check(CLI::IsMember({"exact", "montecarlo", "ball"}));
  degree->add_option("--samples", deg_samples);
  degree->add_option("--confidence", deg_conf);
  degree->add_option("--radius", deg_radius, "ball mode: largest radius");
  auto* deg_seed_opt = degree->add_option("--seed", deg_seed);
  degree->add_flag("--bounds", deg_bounds, "check the classical bounds too");
  verbs.push_back({degree, [&](Output& o) {
                     auto p = deg_g.load();
                     if (deg_mode != "exact" && deg_seed_opt->count() == 0)
                       throw InvalidArgument("--seed is required for randomized modes");
                     o.add("n", deg_n);
                     o.add("mode", deg_mode);
                     if (deg_mode == "exact") {
                       DegreeReport r;
                       try {
                         r = degree_exact(p, deg_n);
                       } catch (const BudgetExceeded& e) {
                         throw BudgetStop(e.what());
                       }
                       o.add("degree", r.fraction());
                       o.add("value", r.value);
                     } else if (deg_mode == "montecarlo") {
                       const auto r = degree_montecarlo(p, deg_n, deg_samples, deg_conf, deg_seed);
                       o.add("hits", r.satisfied.str());
                       o.add("samples", r.total.str());
                       o.add("value", r.value);
                       o.add("lower", r.lower);
                       o.add("upper", r.upper);
                       o.add("confidence", r.confidence);
                     } else {
                       for (const auto& pt : degree_ball_estimate(p, defining(p), deg_n, deg_radius, deg_seed))
                         o.add("radius_" + std::to_string(pt.radius),
                               std::to_string(pt.ratio) + (pt.exact ? " exact" : " sampled") + " ball=" +
                                   std::to_string(pt.ball_size));
                     }
                     if (deg_bounds) {
                       const auto b = check_degree_bounds(p, deg_n);
                       for (const auto& c : b.checks)
                         o.add(c.name, std::string(!c.applicable ? "n/a" : c.holds ? "holds" : "FAILS") +
                                           (c.detail.empty() ? "" : " (" + c.detail + ")"));
                     }
                   }});

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "decision and search problems");
  solve->require_subcommand(1);
  GroupArgs sg;
  std::uint64_t max_steps = 10'000'000;
  std::string sx, sy, sword, sgens, sn = "2";
  std::vector<std::string> spairs;
  std::string svariant = "single";
  bool sall = false;
  auto budget = [&] {
    SearchBudget b;
    b.max_steps = max_steps;
    return b;
  };
  auto solver = [&](const std::string& name, const std::string& help) {
    auto* a = leaf(solve, name, help);
    sg.attach(a);
    a->add_option("--max-steps", max_steps);
    return a;
  };

  auto* swp = solver("wp", "is the word trivial");
  swp->add_option("--word", sword)->required();
  verbs.push_back({swp, [&](Output& o) {
                     auto p = sg.load();
                     const auto w = FreeWord::parse(sword, p->ngens());
                     o.add("trivial", word_problem(p, w));
                     o.add("normal_form", show(collect(p, w)));
                   }});

  auto* spow = solver("power", "n with x^n = y");
  spow->add_option("--x", sx)->required();
  spow->add_option("--y", sy)->required();
  verbs.push_back({spow, [&](Output& o) {
                     auto p = sg.load();
                     const auto r = power_decision(element(p, sx), element(p, sy), budget());
                     check_status(r.status);
                     o.add("status", to_string(r.status));
                     if (r.status == SearchStatus::kFound) o.add("n", r.n.str());
                   }});

  auto* sdlp = solver("dlp", "exponents of y over the pc generators, or log base x");
  sdlp->add_option("--x", sx, "cyclic base");
  sdlp->add_option("--y", sy)->required();
  verbs.push_back({sdlp, [&](Output& o) {
                     auto p = sg.load();
                     auto y = element(p, sy);
                     if (sx.empty()) {
                       std::vector<GroupElement> basis;
                       for (std::size_t i = 0; i < p->ngens(); ++i) basis.push_back(GroupElement::generator(p, i));
                       const auto a = generalized_dlp(p, basis, y);
                       std::string s;
                       for (const auto& e : a) s += (s.empty() ? "" : " ") + e.str();
                       o.add("exponents", s);
                       return;
                     }
                     const auto r = dlp_cyclic(element(p, sx), y, budget());
                     check_status(r.status);
                     o.add("status", to_string(r.status));
                     if (r.status == SearchStatus::kFound) o.add("n", r.n.str());
                   }});

  auto* sroot = solver("root", "x with x^n = a");
  sroot->add_option("--a", sx)->required();
  sroot->add_option("--n", sn)->required();
  sroot->add_flag("--all", sall);
  verbs.push_back({sroot, [&](Output& o) {
                     auto p = sg.load();
                     const auto r = nth_root(element(p, sx), BigInt(sn), sall ? RootMode::kAll : RootMode::kAny, budget());
                     check_status(r.status);
                     o.add("status", to_string(r.status));
                     o.add("count", r.roots.size());
                     std::string s;
                     for (const auto& x : r.roots) s += (s.empty() ? "" : ", ") + show(x);
                     if (!r.roots.empty()) o.add("roots", s);
                   }});

  auto* sconj = solver("conj", "c with a_i^c = b_i");
  sconj->add_option("--pair", spairs, "a:b, repeatable")->required();
  sconj->add_option("--variant", svariant)->check(CLI::IsMember({"single", "multiple", "power"}));
  verbs.push_back({sconj, [&](Output& o) {
                     auto p = sg.load();
                     std::vector<std::pair<GroupElement, GroupElement>> pairs;
                     for (const auto& s : spairs) {
                       const auto colon = s.find(':');
                       if (colon == std::string::npos) throw InvalidArgument("pair must be a:b");
                       pairs.emplace_back(element(p, s.substr(0, colon)), element(p, s.substr(colon + 1)));
                     }
                     const auto v = svariant == "single"     ? ConjugacyVariant::kSingle
                                    : svariant == "multiple" ? ConjugacyVariant::kMultiple
                                                             : ConjugacyVariant::kPower;
                     const auto r = conjugacy_search(pairs, v, budget());
                     check_status(r.status);
                     o.add("status", to_string(r.status));
                     if (r.conjugator) o.add("conjugator", show(*r.conjugator));
                     if (r.conjugator && v == ConjugacyVariant::kPower) o.add("n", r.n.str());
                   }});

  auto* sgeo = solver("geodesic", "shortest word for g over a generating set");
  sgeo->add_option("--g", sx)->required();
  sgeo->add_option("--gens", sgens, "comma separated; defaults to the defining generators");
  verbs.push_back({sgeo, [&](Output& o) {
                     auto p = sg.load();
                     const auto X = sgens.empty() ? defining(p) : element_list(p, sgens);
                     const auto r = geodesic_length(p, X, element(p, sx), budget());
                     check_status(r.status);
                     o.add("status", to_string(r.status));
                     if (r.status == SearchStatus::kFound) {
                       o.add("length", r.length);
                       o.add("witness", r.witness.to_string());
                     }
                   }});

  auto* smem = solver("member", "is g in <H>");
  smem->add_option("--g", sx)->required();
  smem->add_option("--subgroup", sgens, "comma separated subgroup generators")->required();
  verbs.push_back({smem, [&](Output& o) {
                     auto p = sg.load();
                     const auto r = subgroup_membership(p, element_list(p, sgens), element(p, sx), budget());
                     check_status(r.status);
                     o.add("member", r.member);
                     o.add("subgroup_order", r.subgroup_order);
                   }});

  // ---- proto ----
  auto* proto = app.add_subcommand("proto", "run a protocol session");
  proto->require_subcommand(1);
  ProtocolConfig pc;
  std::string transport = "inproc", endpoints_text, transcript_out, modulus = "0", prime = "2147483647";
  long role = -1;
  unsigned users = 3;
  double timeout = 30;
  auto session_verb = [&](const std::string& name, const std::string& help) {
    auto* a = leaf(proto, name, help);
    a->add_option("--seed", pc.seed)->required();
    a->add_option("--group", pc.group, "catalog group; protocol default otherwise");
    a->add_option("--hash", pc.hash);
    a->add_option("--transport", transport)->check(CLI::IsMember({"inproc", "threads", "tcp"}));
    a->add_option("--role", role, "run only this party over tcp");
    a->add_option("--endpoints", endpoints_text, "host:port per party, comma separated");
    a->add_option("--timeout", timeout);
    a->add_option("--transcript", transcript_out, "write the transcript bytes here");
    return a;
  };
  auto run_session = [&](Output& o) {
    pc.modulus = BigInt(modulus);
    pc.prime = BigInt(prime);
    SessionOutcome s;
    if (role >= 0) {
      std::vector<Endpoint> eps;
      std::stringstream ss(endpoints_text);
      std::string part;
      while (std::getline(ss, part, ',')) eps.push_back(Endpoint::parse(part));
      s = session_run_role(pc, static_cast<std::size_t>(role), eps, timeout);
    } else {
      s = session_run(pc, parse_transport(transport));
    }
    o.add("protocol", pc.protocol);
    o.add("group", pc.group_or_default());
    o.add("ok", s.ok);
    for (const auto& p : s.parties) {
      const std::string k = "party" + std::to_string(p.index);
      o.add(k + "_role", p.role);
      if (!p.key_hash.empty()) o.add(k + "_key_hash", p.key_hash);
      if (!p.summary.empty()) o.add(k + "_result", p.summary);
      if (!p.error.empty()) o.add(k + "_error", p.error);
    }
    o.add("frames", s.transcript.size());
    o.add("transcript_sha256", s.transcript_hash);
    if (!transcript_out.empty())
      write_file(transcript_out, std::string(s.transcript_bytes.begin(), s.transcript_bytes.end()));
    if (!s.ok) throw ProtocolError(s.error);
  };

  auto* pmkep = session_verb("mkep", "multi-user commutator key exchange");
  pmkep->add_option("--users", users, "n+1 users");
  verbs.push_back({pmkep, [&](Output& o) {
                     if (users < 2) throw InvalidArgument("need at least 2 users");
                     pc.protocol = "mkep";
                     pc.n = users - 1;
                     run_session(o);
                   }});
  auto* peke = session_verb("eke2", "2-Engel key exchange");
  peke->add_option("--modulus", modulus, "unit component Z_N^*");
  verbs.push_back({peke, [&](Output& o) {
                     pc.protocol = "eke2";
                     run_session(o);
                   }});
  auto* psig = session_verb("sig4", "4-Engel signature");
  psig->add_option("--modulus", modulus, "unit component Z_N^*");
  verbs.push_back({psig, [&](Output& o) {
                     pc.protocol = "sig4";
                     run_session(o);
                   }});
  auto* psss1 = session_verb("sss1", "n-of-n sharing over the word problem");
  psss1->add_option("--participants", pc.participants);
  psss1->add_option("--bits", pc.bits);
  verbs.push_back({psss1, [&](Output& o) {
                     pc.protocol = "sss1";
                     run_session(o);
                   }});
  auto* psss2 = session_verb("sss2", "threshold sharing over the word problem");
  psss2->add_option("--participants", pc.participants);
  psss2->add_option("--threshold", pc.threshold);
  psss2->add_option("--prime", prime);
  verbs.push_back({psss2, [&](Output& o) {
                     pc.protocol = "sss2";
                     run_session(o);
                   }});
  auto* psdp = session_verb("sdp", "semidirect-product key exchange");
  verbs.push_back({psdp, [&](Output& o) {
                     pc.protocol = "sdp";
                     run_session(o);
                   }});

  GroupArgs lhn_g;
  std::string noise = "ball:1";
  std::size_t lhn_count = 10;
  std::uint64_t lhn_seed = 0;
  bool lhn_identity = false;
  auto* plhn = leaf(proto, "lhn", "samples (g, phi(g) * noise)");
  lhn_g.attach(plhn);
  plhn->add_option("--noise", noise, "none, ball:<r>, uniform");
  plhn->add_option("--count", lhn_count);
  plhn->add_option("--seed", lhn_seed)->required();
  plhn->add_flag("--identity", lhn_identity, "phi = identity instead of a random automorphism");
  verbs.push_back({plhn, [&](Output& o) {
                     auto p = lhn_g.name.empty() && lhn_g.file.empty() ? catalog_by_name("burnside3:2") : lhn_g.load();
                     Rng rng(lhn_seed);
                     const auto phi = lhn_identity ? identity_hom(p) : random_automorphism(p, rng);
                     std::string images;
                     for (const auto& im : phi.images()) images += (images.empty() ? "" : ", ") + show(im);
                     o.add("phi", images);
                     o.add("noise", NoiseSpec::parse(noise).name());
                     const auto samples = lhn_sample(phi, NoiseSpec::parse(noise), lhn_count, rng);
                     for (std::size_t i = 0; i < samples.size(); ++i)
                       o.add("sample" + std::to_string(i), show(samples[i].g) + " -> " + show(samples[i].h));
                   }});

  // ---- bench ----
  GroupArgs bench_g;
  std::uint64_t bench_seed = 0;
  std::size_t bench_iters = 10000;
  auto* bench = app.add_subcommand("bench", "time collection on random elements");
  bench_g.attach(bench);
  bench->add_option("--seed", bench_seed)->required();
  bench->add_option("--iterations", bench_iters);
  verbs.push_back({bench, [&](Output& o) {
                     auto p = bench_g.name.empty() && bench_g.file.empty() ? catalog_by_name("burnside3:4") : bench_g.load();
                     Rng rng(bench_seed);
                     std::vector<GroupElement> xs;
                     for (std::size_t i = 0; i < 256; ++i) xs.push_back(random_element_bounded(p, rng, 1000));
                     auto time = [&](const std::function<void(std::size_t)>& f) {
                       const auto t0 = std::chrono::steady_clock::now();
                       for (std::size_t i = 0; i < bench_iters; ++i) f(i);
                       const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                       return s > 0 ? static_cast<double>(bench_iters) / s : 0.0;
                     };
                     std::size_t sink = 0;
                     o.add("group", p->label());
                     o.add("iterations", bench_iters);
                     o.add("mul_per_s", time([&](std::size_t i) { sink += (xs[i % 256] * xs[(i * 7 + 1) % 256]).is_identity(); }));
                     o.add("comm_per_s",
                           time([&](std::size_t i) { sink += commutator(xs[i % 256], xs[(i * 5 + 3) % 256]).is_identity(); }));
                     o.add("pow_per_s", time([&](std::size_t i) { sink += power(xs[i % 256], 1000003).is_identity(); }));
                     o.add("encode_per_s", time([&](std::size_t i) { sink += encode_element(xs[i % 256]).size(); }));
                     (void)sink;
                   }});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Output out;
  out.kv = format == "kv";
  try {
    for (auto& v : verbs)
      if (v.app->parsed()) {
        v.run(out);
        break;
      }
    out.print(std::cout);
    return 0;
  } catch (const BudgetStop& e) {
    out.print(std::cout);
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const BudgetExceeded& e) {
    out.print(std::cout);
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ProtocolError& e) {
    out.print(std::cout);
    std::cerr << "protocol failure: " << e.what() << '\n';
    return kExitProtocol;
  } catch (const TransportError& e) {
    out.print(std::cout);
    std::cerr << "protocol failure: " << e.what() << '\n';
    return kExitProtocol;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
