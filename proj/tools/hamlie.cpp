#include "CLI11.hpp"
#include "json.hpp"

#include "hamlie/cohomology.hpp"
#include "hamlie/derivations.hpp"
#include "hamlie/expr.hpp"
#include "hamlie/isofile.hpp"
#include "hamlie/locality.hpp"
#include "hamlie/serialize.hpp"
#include "hamlie/specfile.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace hamlie;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string spec_path, target_path, iso_path;
  std::string suite, what, mode;
  std::vector<std::string> args;
  std::string u_expr, v_expr;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  int max_degree = 4;
  int max_power = 8;
  bool json = false;
};

AlgebraPtr load_algebra(const std::string& path) {
  return spec_to_algebra(load_spec_file(path));
}

int run_validate(const Options& opt) {
  AlgebraSpecDocument doc = load_spec_file(opt.spec_path);
  try {
    spec_to_algebra(doc);
  } catch (const std::invalid_argument& e) {
    if (opt.json) {
      nlohmann::json j{{"valid", false}, {"error", e.what()}};
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "invalid: " << e.what() << "\n";
    }
    return kExitMathFailure;
  }
  if (opt.json) {
    nlohmann::json j{{"valid", true},
                     {"name", doc.name},
                     {"field", doc.field.str()},
                     {"rank", doc.basis.size()}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "valid" << (doc.name.empty() ? "" : " (" + doc.name + ")") << ", field "
              << doc.field.str() << ", rank " << doc.basis.size() << "\n";
  }
  return kExitOk;
}

void print_element(const Element& e, bool json) {
  if (json)
    std::cout << element_to_json(e) << "\n";
  else
    std::cout << format_element(e) << "\n";
}

void print_scalar(const Scalar& s, bool json) {
  if (json)
    std::cout << nlohmann::json{{"value", s.str()}}.dump() << "\n";
  else
    std::cout << s.display() << "\n";
}

int run_eval(const Options& opt) {
  AlgebraPtr alg = load_algebra(opt.spec_path);
  // element arguments accept the expression grammar or the machine (JSON
  // record list) form; "@file" and "-" pull the text from a file or stdin,
  // which keeps JSON out of the shell-argument bracket handling
  auto parse_arg = [&](std::string text) {
    if (text == "-") {
      std::stringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else if (!text.empty() && text[0] == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw std::runtime_error("cannot open element file: " + text.substr(1));
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') return element_from_json(text, alg);
    return parse_element(text, alg);
  };
  auto need = [&](std::size_t n) {
    if (opt.args.size() != n)
      throw CLI::ValidationError("eval " + opt.what + " needs " + std::to_string(n) +
                                 " argument(s)");
  };
  if (opt.what == "product") {
    need(2);
    print_element(multiply(parse_arg(opt.args[0]), parse_arg(opt.args[1])), opt.json);
  } else if (opt.what == "bracket") {
    need(2);
    print_element(bracket_structural(parse_arg(opt.args[0]), parse_arg(opt.args[1])), opt.json);
  } else if (opt.what == "bracket-defining") {
    need(2);
    print_element(bracket_defining(parse_arg(opt.args[0]), parse_arg(opt.args[1])), opt.json);
  } else if (opt.what == "derivation") {
    need(2);
    DerivationSpec d = parse_derivation(opt.args[0], alg);
    print_element(eval_derivation(d, parse_arg(opt.args[1])), opt.json);
  } else if (opt.what == "cocycle") {
    need(3);
    Cocycle c = parse_cocycle(opt.args[0], alg);
    print_scalar(eval_cocycle(c, parse_arg(opt.args[1]), parse_arg(opt.args[2])), opt.json);
  } else {
    throw CLI::ValidationError("unknown eval operation '" + opt.what + "'");
  }
  return kExitOk;
}

struct SuiteResult {
  std::vector<PropertyReport> reports;
  bool ok() const {
    for (const auto& r : reports)
      if (!r.ok()) return false;
    return true;
  }
};

PropertyReport run_pair_property(const AlgebraPtr& alg, const std::string& name,
                                 std::size_t samples, std::uint64_t seed, int max_degree,
                                 int arity,
                                 const std::function<bool(std::vector<Element>&)>& pred) {
  PropertyReport rep;
  rep.name = name;
  rep.samples = samples;
  SampleOptions opt;
  opt.max_level = max_degree;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng = Rng::for_sample(seed, k);
    std::vector<Element> xs;
    for (int i = 0; i < arity; ++i) xs.push_back(sample_monomial(alg, rng, opt));
    if (pred(xs)) {
      ++rep.passes;
    } else if (!rep.counterexample) {
      std::string w;
      for (const auto& x : xs) w += (w.empty() ? "" : " ; ") + format_element(x);
      rep.counterexample = "sample " + std::to_string(k) + ": " + w;
    }
  }
  return rep;
}

SuiteResult run_suite(const Options& opt, const AlgebraPtr& alg) {
  SuiteResult out;
  const Shape& s = alg->shape();
  const Lattice& L = alg->lattice();
  if (opt.suite == "jacobi") {
    out.reports.push_back(run_pair_property(
        alg, "jacobi+skew", opt.samples, opt.seed, opt.max_degree, 3, [](auto& xs) {
          Element jac = bracket_structural(bracket_structural(xs[0], xs[1]), xs[2]) +
                        bracket_structural(bracket_structural(xs[1], xs[2]), xs[0]) +
                        bracket_structural(bracket_structural(xs[2], xs[0]), xs[1]);
          if (!jac.is_zero()) return false;
          if (!(bracket_structural(xs[0], xs[1]) + bracket_structural(xs[1], xs[0])).is_zero())
            return false;
          return bracket_structural(xs[0], xs[0]).is_zero();
        }));
  } else if (opt.suite == "leibniz") {
    out.reports.push_back(run_pair_property(
        alg, "leibniz", opt.samples, opt.seed, opt.max_degree, 3, [](auto& xs) {
          return bracket_structural(xs[0], multiply(xs[1], xs[2])) ==
                 multiply(bracket_structural(xs[0], xs[1]), xs[2]) +
                     multiply(xs[1], bracket_structural(xs[0], xs[2]));
        }));
  } else if (opt.suite == "oracle-equivalence") {
    out.reports.push_back(run_pair_property(
        alg, "structural=defining", opt.samples, opt.seed, opt.max_degree, 2, [](auto& xs) {
          return bracket_structural(xs[0], xs[1]) == bracket_defining(xs[0], xs[1]);
        }));
    auto ext = Algebra::make(alg->lattice(), true);
    out.reports.push_back(run_pair_property(
        ext, "structural=defining (enlarged)", opt.samples, opt.seed + 1, opt.max_degree, 2,
        [](auto& xs) {
          return bracket_structural(xs[0], xs[1]) == bracket_defining(xs[0], xs[1]);
        }));
  } else if (opt.suite == "derivation-law") {
    std::vector<std::pair<std::string, DerivationSpec>> gens{{"d0", DerivationSpec::d0()}};
    if (s.n() == s.l()[0]) gens.push_back({"d0'", DerivationSpec::d0_prime()});
    for (int p = 1; p <= s.dim(); ++p)
      if (!s.t_allowed(p)) gens.push_back({"d[" + std::to_string(p) + "]", DerivationSpec::d(p)});
    for (int q = 1; q <= s.dim(); ++q)
      if (s.t_allowed(q)) gens.push_back({"dt[" + std::to_string(q) + "]", DerivationSpec::dt(q)});
    auto plus = hom_plus_basis(L);
    for (std::size_t j = 0; j < plus.size(); ++j)
      gens.push_back({"dmu#" + std::to_string(j), DerivationSpec::dmu(plus[j])});
    std::uint64_t seed = opt.seed;
    for (auto& [name, d] : gens) {
      auto rep = check_derivation_law(alg, d, opt.samples, seed++);
      rep.name = "derivation-law " + name;
      out.reports.push_back(std::move(rep));
    }
  } else if (opt.suite == "cocycle-law") {
    std::vector<std::pair<std::string, Cocycle>> cs;
    if (s.n() == s.l()[0]) {
      for (int p : s.I_range(1, 1)) {
        cs.push_back({"phi[" + std::to_string(p) + "]", Cocycle::phi(p)});
        cs.push_back({"phi'[" + std::to_string(p) + "]", Cocycle::phi_prime(p)});
      }
      auto star = hom_star_complement(L);
      for (std::size_t j = 0; j < star.size(); ++j)
        cs.push_back({"phimu#" + std::to_string(j), Cocycle::phi_mu(star[j])});
    }
    Rng rng(opt.seed);
    SampleOptions sopt;
    sopt.max_level = opt.max_degree;
    for (int t = 0; t < 3; ++t) {
      LinearFunctional f;
      for (int k = 0; k < 6; ++k)
        f.values[sample_key(*alg, rng, sopt)] = sample_scalar(alg->field(), rng, true);
      cs.push_back({"coboundary#" + std::to_string(t), Cocycle::coboundary(f)});
    }
    std::uint64_t seed = opt.seed;
    for (auto& [name, c] : cs) {
      auto rep = check_cocycle_laws(alg, c, opt.samples, seed++);
      rep.name = "cocycle-law " + name;
      out.reports.push_back(std::move(rep));
    }
  } else if (opt.suite == "morphism") {
    Rng rng(opt.seed);
    for (int t = 0; t < 3; ++t) {
      auto r = random_preserving_iso(alg, rng);
      auto rep = verify_morphism(build_theta(r.iso, r.src, r.tgt, r.chi), opt.samples,
                                 opt.seed + static_cast<std::uint64_t>(t));
      rep.name = "morphism iso#" + std::to_string(t);
      out.reports.push_back(std::move(rep));
    }
  } else if (opt.suite == "nilpotency") {
    PropertyReport rep;
    rep.name = "nilpotency-bound";
    SampleOptions sopt;
    sopt.max_level = opt.max_degree;
    std::size_t tried = 0;
    for (std::size_t k = 0; tried < opt.samples && k < opt.samples * 40; ++k) {
      Rng rng = Rng::for_sample(opt.seed, k);
      Element u = sample_monomial(alg, rng, sopt);
      if (!set_membership(SetName::H2, u)) continue;
      Element v = sample_monomial(alg, rng, sopt);
      ++tried;
      auto res = nilpotency_bound_check(u, v);
      bool ok = res.zero_at_m &&
                (!res.sharp_expected || res.m < 2 || res.nonzero_at_m_minus_1);
      if (ok) {
        ++rep.passes;
      } else if (!rep.counterexample) {
        rep.counterexample = format_element(u) + " ; " + format_element(v);
      }
    }
    rep.samples = tried;
    out.reports.push_back(std::move(rep));
  } else {
    throw CLI::ValidationError("unknown check suite '" + opt.suite + "'");
  }
  return out;
}

int run_check(const Options& opt) {
  AlgebraPtr alg = load_algebra(opt.spec_path);
  SuiteResult res = run_suite(opt, alg);
  if (opt.json) {
    nlohmann::json j{{"suite", opt.suite},
                     {"samples", opt.samples},
                     {"seed", opt.seed},
                     {"max_degree", opt.max_degree}};
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : res.reports) {
      nlohmann::json one{{"name", r.name}, {"samples", r.samples}, {"passes", r.passes}};
      if (r.counterexample) one["counterexample"] = *r.counterexample;
      reports.push_back(std::move(one));
    }
    j["reports"] = std::move(reports);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "suite " << opt.suite << " samples=" << opt.samples << " seed=" << opt.seed
              << " max-degree=" << opt.max_degree << "\n";
    for (const auto& r : res.reports) std::cout << r.str() << "\n";
  }
  return res.ok() ? kExitOk : kExitMathFailure;
}

int run_h2(const Options& opt) {
  AlgebraPtr alg = load_algebra(opt.spec_path);
  H2Report rep = h2_report(alg->lattice());
  if (opt.json) {
    nlohmann::json j{{"dimension", rep.dimension},
                     {"phi_pairs", rep.phi_pairs},
                     {"hom_star_dim", rep.hom_star_dim}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << rep.str() << "\n";
  }
  return kExitOk;
}

int run_iso(const Options& opt) {
  AlgebraPtr src = load_algebra(opt.spec_path);
  AlgebraPtr tgt = opt.target_path.empty() ? src : load_algebra(opt.target_path);
  IsoDocument doc = load_iso_file(opt.iso_path, src->shape(), src->field());

  if (opt.mode == "validate") {
    auto rep = validate_preserving(doc.iso, src->lattice(), tgt->lattice());
    if (opt.json) {
      nlohmann::json j{{"valid", rep.ok}};
      if (!rep.ok) j["detail"] = rep.detail;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << (rep.ok ? "valid" : "invalid: " + rep.detail) << "\n";
    }
    return rep.ok ? kExitOk : kExitMathFailure;
  }

  Character chi;
  if (doc.chi) {
    chi = *doc.chi;
  } else {
    std::map<int, Scalar> b;
    for (int p : src->shape().I_range(1, 4))
      b[p] = doc.iso.ab.count(p) ? doc.iso.ab.at(p).second : Scalar(1);
    chi = extend_character(src->lattice(), b);
  }

  if (opt.mode == "apply") {
    if (opt.args.size() != 1) throw CLI::ValidationError("iso apply needs one element argument");
    AlgebraMorphism theta = build_theta(doc.iso, src, tgt, chi);
    print_element(theta.apply(parse_element(opt.args[0], src)), opt.json);
    return kExitOk;
  }
  if (opt.mode == "verify") {
    AlgebraMorphism theta = build_theta(doc.iso, src, tgt, chi);
    auto rep = verify_morphism(theta, opt.samples, opt.seed);
    if (opt.json) {
      nlohmann::json j{{"samples", rep.samples}, {"passes", rep.passes}};
      if (rep.counterexample) j["counterexample"] = *rep.counterexample;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << rep.str() << "\n";
    }
    return rep.ok() ? kExitOk : kExitMathFailure;
  }
  throw CLI::ValidationError("unknown iso action '" + opt.mode + "'");
}

int run_classify(const Options& opt) {
  AlgebraPtr alg = load_algebra(opt.spec_path);
  if (opt.mode == "orbit") {
    Element u = parse_element(opt.u_expr, alg);
    Element v = parse_element(opt.v_expr, alg);
    auto rep = ad_orbit(u, v, opt.max_power);
    if (opt.json) {
      nlohmann::json j{{"span_dims", rep.span_dims}, {"bounded", rep.bounded()}};
      if (rep.nilpotent_at) j["nilpotent_at"] = *rep.nilpotent_at;
      nlohmann::json powers = nlohmann::json::array();
      for (const auto& p : rep.powers) powers.push_back(format_element(p));
      j["powers"] = std::move(powers);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << rep.str() << (rep.bounded() ? " bounded" : " growing") << "\n";
    }
    return kExitOk;
  }
  if (opt.mode == "membership") {
    if (opt.args.size() != 1)
      throw CLI::ValidationError("classify membership needs one element argument");
    Element u = parse_element(opt.args[0], alg);
    bool h1 = set_membership(SetName::H1, u);
    bool h2 = set_membership(SetName::H2, u);
    bool h3 = set_membership(SetName::H3, u);
    bool m = set_membership(SetName::M, u);
    auto eig = eigen_membership(u, opt.samples > 16 ? 16 : opt.samples, opt.seed);
    std::optional<std::pair<bool, bool>> mfmn;
    if (m) mfmn = mf_mn_membership(u);
    if (opt.json) {
      nlohmann::json j{{"H1", h1}, {"H2", h2}, {"H3", h3}, {"M", m},
                       {"eigen_direct", eig.direct_check}};
      if (eig.mu) {
        nlohmann::json mu = nlohmann::json::array();
        for (const auto& x : *eig.mu) mu.push_back(x.str());
        j["mu"] = std::move(mu);
      }
      if (mfmn) {
        j["MF"] = mfmn->first;
        j["MN"] = mfmn->second;
      }
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "H1=" << h1 << " H2=" << h2 << " H3=" << h3 << " M=" << m;
      if (eig.mu) {
        std::cout << " M_mu with mu=(";
        for (std::size_t k = 0; k < eig.mu->size(); ++k)
          std::cout << (k ? "," : "") << (*eig.mu)[k].display();
        std::cout << ")";
      }
      std::cout << " eigen_direct=" << eig.direct_check;
      if (mfmn) std::cout << " MF=" << mfmn->first << " MN=" << mfmn->second;
      std::cout << "\n";
    }
    return kExitOk;
  }
  throw CLI::ValidationError("unknown classify mode '" + opt.mode + "'");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic kernel for nongraded Hamiltonian Lie algebras"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable output");

  auto* validate = app.add_subcommand("validate", "validate an .alg specification");
  validate->add_option("--spec", opt.spec_path, "algebra spec file")->required();

  auto* eval = app.add_subcommand("eval", "evaluate products, brackets, derivations, cocycles");
  eval->add_option("what", opt.what,
                   "operation: product|bracket|bracket-defining|derivation|cocycle")
      ->required();
  eval->add_option("args", opt.args, "expression arguments");
  eval->add_option("--spec", opt.spec_path, "algebra spec file")->required();

  auto* check = app.add_subcommand("check", "run a seeded property suite");
  check->add_option("suite", opt.suite,
                    "jacobi|leibniz|oracle-equivalence|derivation-law|cocycle-law|morphism|"
                    "nilpotency")
      ->required();
  check->add_option("--spec", opt.spec_path, "algebra spec file")->required();
  check->add_option("--samples", opt.samples, "sample count");
  check->add_option("--seed", opt.seed, "random seed");
  check->add_option("--max-degree", opt.max_degree, "multi-index level bound for samples");

  auto* iso = app.add_subcommand("iso", "validate/apply/verify a preserving isomorphism");
  iso->add_option("action", opt.mode, "validate|apply|verify")->required();
  iso->add_option("args", opt.args, "element argument for apply");
  iso->add_option("--spec", opt.spec_path, "source algebra spec")->required();
  iso->add_option("--target", opt.target_path, "target algebra spec (defaults to source)");
  iso->add_option("--iso", opt.iso_path, "iso description file")->required();
  iso->add_option("--samples", opt.samples, "sample count for verify");
  iso->add_option("--seed", opt.seed, "random seed for verify");

  auto* h2 = app.add_subcommand("h2", "second-cohomology report");
  h2->add_option("--spec", opt.spec_path, "algebra spec file")->required();

  auto* classify = app.add_subcommand("classify", "orbit and membership classifiers");
  classify->add_option("mode", opt.mode, "orbit|membership")->required();
  classify->add_option("args", opt.args, "element argument for membership");
  classify->add_option("--spec", opt.spec_path, "algebra spec file")->required();
  classify->add_option("--u", opt.u_expr, "acting element for orbit");
  classify->add_option("--v", opt.v_expr, "target element for orbit");
  classify->add_option("--max-power", opt.max_power, "orbit iteration bound");
  classify->add_option("--samples", opt.samples, "H2 sample count for the eigen check");
  classify->add_option("--seed", opt.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(opt);
    if (app.got_subcommand(eval)) return run_eval(opt);
    if (app.got_subcommand(check)) return run_check(opt);
    if (app.got_subcommand(iso)) return run_iso(opt);
    if (app.got_subcommand(h2)) return run_h2(opt);
    if (app.got_subcommand(classify)) return run_classify(opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathFailure;
  }
  return kExitUsage;
}
