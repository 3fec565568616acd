#include "qpolish/derivative.hpp"
#include "qpolish/extractors.hpp"
#include "qpolish/s0.hpp"
#include "qpolish/space_file.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace qpolish;

namespace {

struct Config {
  std::size_t depth = 64;
  std::size_t rank = 20;
  std::size_t steps = 100000;
  std::size_t max_steps = 64;
  std::size_t count = 16;
  std::uint64_t seed = 1;
  std::string format = "human";
  bool depth_given = false;
  bool structured() const { return format == "structured"; }
};

enum Exit { certified = 0, error = 1, inconclusive = 2 };

/// --depth wins over the file's depth line, which wins over the default.
Truncation window(const Config& cfg, const SpaceFile& sf) {
  return Truncation(sf.space, cfg.depth_given ? cfg.depth : sf.depth.value_or(cfg.depth));
}

std::string labels(const Space& s, const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? " " : "") + s.point_label(pts[i]);
  return out;
}

std::vector<Point> members(const PointSet& s) { return std::vector<Point>(s.begin(), s.end()); }

void print_checks(const Config& cfg, const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (cfg.structured()) {
      std::cout << "CHECK " << c.name << (c.pass ? " PASS" : " FAIL") << "\n";
    } else {
      std::cout << "  " << (c.pass ? "ok     " : "FAILED ") << c.name << "\n";
    }
  }
}

void print_report(const Config& cfg, const Space& s, const ExtractionReport& r) {
  if (cfg.structured()) {
    std::cout << "DEPTH " << r.depth << "\n";
    std::cout << "POINTS " << labels(s, r.points) << "\n";
    for (const auto& [sigma, p] : r.s0_map) std::cout << "MAP " << sigma.str() << " " << s.point_label(p) << "\n";
  } else {
    std::cout << r.tag << " at depth " << r.depth << ", " << r.points.size() << " points, " << r.steps_used
              << " steps\n";
    std::cout << "points: " << labels(s, r.points) << "\n";
    if (!r.s0_map.empty()) {
      std::cout << "embedding:\n";
      for (const auto& [sigma, p] : r.s0_map) std::cout << "  " << sigma.str() << " -> " << s.point_label(p) << "\n";
    }
    std::cout << "checks:\n";
  }
  print_checks(cfg, r.checks);
  if (!cfg.structured()) {
    for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
  }
}

void result(const Config& cfg, const std::string& value) {
  std::cout << (cfg.structured() ? "RESULT " : "result: ") << value << "\n";
}

/// Runs a command body and maps failures onto exit codes.
int guarded(const Config& cfg, const SpacePtr& space, const std::function<int()>& body) {
  try {
    return body();
  } catch (const CheckFailed& e) {
    if (space) print_report(cfg, *space, e.report());
    result(cfg, "inconclusive");
    return inconclusive;
  } catch (const Inconclusive& e) {
    if (!cfg.structured()) std::cout << "inconclusive: " << e.what() << "\n";
    result(cfg, "inconclusive");
    return inconclusive;
  } catch (const PreconditionError& e) {
    std::cerr << "error: precondition failed: " << e.what() << "\n";
    return error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return error;
  }
}

int emit(const Config& cfg, const Space& s, const ExtractionReport& r) {
  const ExtractionReport ok = certify(r);
  print_report(cfg, s, ok);
  result(cfg, ok.tag);
  return certified;
}

Budgets budgets(const Config& cfg) {
  Budgets b;
  b.rank_budget = cfg.rank;
  b.step_budget = cfg.steps;
  b.max_steps = cfg.max_steps;
  return b;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(std::stoul(item));
  }
  return out;
}

OpenDescriptor parse_open(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("open '" + text + "': expected punctured:P or basics:i,j");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "punctured") return OpenDescriptor::punctured_at(static_cast<Point>(std::stoul(rest)));
  if (kind == "basics") return OpenDescriptor::union_of(parse_indices(rest));
  throw std::invalid_argument("open '" + text + "': unknown kind '" + kind + "'");
}

int cmd_classify(const Config& cfg, const std::string& file) {
  SpacePtr space;
  return guarded(cfg, nullptr, [&] {
    const SpaceFile sf = load_space_file(file);
    space = sf.space;
    const Truncation t = window(cfg, sf);
    return guarded(cfg, space, [&] { return emit(cfg, *space, classify_countable(t, budgets(cfg))); });
  });
}

int cmd_extract(const Config& cfg, const std::string& which, const std::string& file, std::size_t height,
                bool count_given) {
  return guarded(cfg, nullptr, [&] {
    const SpaceFile sf = load_space_file(file);
    const SpacePtr space = sf.space;
    const Truncation t = window(cfg, sf);
    return guarded(cfg, space, [&] {
      if (which == "s0") return emit(cfg, *space, extract_S0(t, cfg.rank, cfg.steps));
      if (which == "s1") return emit(cfg, *space, extract_S1(t, cfg.count));
      if (which == "s2") return emit(cfg, *space, extract_S2(t, height));
      const std::size_t len = count_given ? cfg.count : std::max<std::size_t>(4, t.depth() / 4);
      return emit(cfg, *space, chain_or_max(t, len));
    });
  });
}

int cmd_derive(const Config& cfg, const std::string& file) {
  return guarded(cfg, nullptr, [&] {
    const SpaceFile sf = load_space_file(file);
    const SpacePtr space = sf.space;
    const RankResult r = rank(window(cfg, sf), cfg.max_steps);
    for (std::size_t k = 0; k < r.trace.stages.size(); ++k) {
      const PointSet& st = r.trace.stages[k];
      if (cfg.structured()) {
        std::cout << "STAGE " << k << " " << st.size() << "\n";
      } else {
        std::cout << "stage " << k << ": " << st.size() << " points";
        if (st.size() <= 16) std::cout << " {" << labels(*space, members(st)) << "}";
        std::cout << "\n";
      }
    }
    for (std::size_t i = 0; i < r.part_ranks.size(); ++i) {
      std::cout << (cfg.structured() ? "PART " : "part ") << i << " " << r.part_ranks[i].str() << "\n";
    }
    switch (r.value.shape) {
      case OrdinalValue::Shape::finite:
        result(cfg, "rank=" + std::to_string(r.value.n));
        return int{certified};
      case OrdinalValue::Shape::omega_plus:
        result(cfg, "rank=" + r.value.str());
        return int{certified};
      case OrdinalValue::Shape::did_not_stabilize:
        break;
    }
    if (!cfg.structured()) std::cout << "the derivative did not stabilize within the window and " << cfg.max_steps << " steps\n";
    result(cfg, "inconclusive");
    return int{inconclusive};
  });
}

int cmd_witness(const Config& cfg, const std::string& which, const std::string& file,
                const std::vector<std::string>& opens, const std::string& subset) {
  return guarded(cfg, nullptr, [&] {
    const SpaceFile sf = load_space_file(file);
    const SpacePtr space = sf.space;
    const Truncation t = window(cfg, sf);
    return guarded(cfg, space, [&] {
      if (which == "baire") {
        std::vector<OpenDescriptor> dense;
        for (const auto& o : opens) dense.push_back(parse_open(o));
        if (dense.empty()) {
          for (Point p : t.universe()) dense.push_back(OpenDescriptor::punctured_at(p));
        }
        return emit(cfg, *space, baire_witness(t, dense, cfg.count));
      }
      if (which == "sober") return emit(cfg, *space, sober_witness(t, cfg.count));
      PointSet y = t.universe();
      if (!subset.empty()) {
        y = t.empty_set();
        for (std::size_t p : parse_indices(subset)) {
          if (p >= t.depth()) throw std::out_of_range("point " + std::to_string(p) + " is not below the depth");
          y.insert(static_cast<Point>(p));
        }
      }
      return emit(cfg, *space, dense_open_family(t, y));
    });
  });
}

int cmd_eval(const Config& cfg, const std::string& file, const std::string& expr, const std::optional<Point>& point) {
  return guarded(cfg, nullptr, [&] {
    const SpaceFile sf = load_space_file(file);
    const SpacePtr space = sf.space;
    const Truncation t = window(cfg, sf);
    const BorelExpr e = parse_borel(expr);
    if (point) {
      if (*point >= t.depth()) throw std::out_of_range("point is not below the depth");
      result(cfg, eval(e, t, *point) ? "true" : "false");
    } else {
      result(cfg, extension(e, t).str());
    }
    return int{certified};
  });
}

int cmd_inspect(const Config& cfg, const std::string& file) {
  return guarded(cfg, nullptr, [&] {
    const SpaceFile sf = load_space_file(file);
    const Truncation t = window(cfg, sf);
    const std::pair<const char*, AxiomResult> rows[] = {
        {"T0", is_T0(t)}, {"T1", is_T1(t)}, {"TD", is_TD(t)}, {"T2", is_T2(t)}, {"perfect", is_perfect(t)}};
    for (const auto& [name, r] : rows) {
      std::cout << (cfg.structured() ? "PROPERTY " : "") << name << (cfg.structured() ? " " : ": ")
                << verdict_name(r.verdict);
      if (!r.witness.empty()) std::cout << " witness " << labels(*sf.space, r.witness);
      std::cout << "\n";
    }
    std::string sober;
    if (sf.finite) {
      sober = is_sober(*sf.finite) ? "sober" : "not_sober";
    } else {
      const SoberEvidence ev = sober_evidence(t);
      sober = ev.nonsober ? "nonsober_evidence" : "sober_no_evidence";
    }
    std::cout << (cfg.structured() ? "PROPERTY sober " : "sober: ") << sober << "\n";
    result(cfg, sf.space->tag());
    return int{certified};
  });
}

int cmd_s0(const Config& cfg, const std::string& op, const std::vector<std::string>& args) {
  return guarded(cfg, nullptr, [&] {
    auto need = [&](std::size_t n, const char* usage) {
      if (args.size() != n) throw std::invalid_argument(std::string("usage: s0 ") + op + " " + usage);
    };
    if (op == "decompose") {
      need(1, "<closed set>");
      const Decomposition d = s0_closed_decompose(S0ClosedSet::parse(args[0]), cfg.depth);
      std::string ds;
      for (const auto& s : d.d) ds += (ds.empty() ? "" : " ") + s.str();
      std::cout << (cfg.structured() ? "D " : "D: ") << ds << "\n";
      print_checks(cfg, d.checks);
      const bool ok = std::all_of(d.checks.begin(), d.checks.end(), [](const Check& c) { return c.pass; });
      result(cfg, ok ? "decomposition" : "inconclusive");
      return int{ok ? certified : inconclusive};
    }
    if (op == "certificate") {
      need(3, "<x> <open> <closed set>");
      const auto succ = not_locally_closed_certificate(SeqNat::parse(args[0]), S0Open::parse(args[1]),
                                                       S0ClosedSet::parse(args[2]), cfg.depth);
      result(cfg, "not_locally_closed " + succ[0].str() + " " + succ[1].str());
      return int{certified};
    }
    if (op == "inject") {
      need(1, "<prefix>");
      result(cfg, ap_injection(SeqNat::parse(args[0])).str());
      return int{certified};
    }
    if (op == "distinguish") {
      need(2, "<p prefix> <q prefix>");
      result(cfg, ap_distinguish(SeqNat::parse(args[0]), SeqNat::parse(args[1]), cfg.depth).str());
      return int{certified};
    }
    need(1, "<closed set>");
    const S0ClosedSet a = S0ClosedSet::parse(args[0]);
    std::mt19937_64 rng(cfg.seed);
    const std::vector<S0Open> opens = random_dense_opens(a, cfg.count, rng, cfg.depth);
    for (const auto& u : opens) std::cout << (cfg.structured() ? "OPEN " : "dense open: ") << u.str() << "\n";
    if (!s0_baire_check(a, opens, cfg.depth)) {
      throw std::logic_error("a dense open misses a specialization-maximal point of A");
    }
    result(cfg, "baire");
    return int{certified};
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Polish space toolkit: classify countable spaces and extract canonical subspaces"};
  app.require_subcommand(1);
  Config cfg;
  std::vector<CLI::Option*> depth_options;
  auto common = [&](CLI::App* sub) {
    depth_options.push_back(sub->add_option("--depth", cfg.depth, "truncation depth")->check(CLI::PositiveNumber));
    sub->add_option("--rank", cfg.rank, "rank budget for the S0 extraction");
    sub->add_option("--steps", cfg.steps, "step budget for the S0 extraction");
    sub->add_option("--max-steps", cfg.max_steps, "derivative steps");
    sub->add_option("--seed", cfg.seed, "seed for randomized inputs");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"human", "structured"}));
  };

  std::string file;
  auto* classify = app.add_subcommand("classify", "classify a countable space");
  classify->add_option("file", file, "space file")->required();
  common(classify);

  std::string which;
  std::size_t height = 4;
  auto* extract = app.add_subcommand("extract", "extract S0, S1, S2 or S_D");
  extract->add_option("kind", which, "s0, s1, s2 or sd")->required()->check(CLI::IsMember({"s0", "s1", "s2", "sd"}));
  extract->add_option("file", file, "space file")->required();
  auto* extract_count = extract->add_option("--count", cfg.count, "points for s1, chain length for sd");
  extract->add_option("--height", height, "tree height for s2");
  common(extract);

  auto* derive = app.add_subcommand("derive", "locally-closed derivative and rank");
  derive->add_option("file", file, "space file")->required();
  common(derive);

  std::vector<std::string> opens;
  std::string subset;
  auto* witness = app.add_subcommand("witness", "Baire, sobriety and dense-open witnesses");
  witness->add_option("kind", which, "baire, sober or dense")->required()->check(CLI::IsMember({"baire", "sober", "dense"}));
  witness->add_option("file", file, "space file")->required();
  witness->add_option("--count", cfg.count, "points to emit");
  witness->add_option("--open", opens, "baire: dense open, punctured:P or basics:i,j,...");
  witness->add_option("--subset", subset, "dense: points of Y, comma separated");
  common(witness);

  std::string expr;
  std::optional<Point> point;
  auto* evalc = app.add_subcommand("eval", "evaluate a Borel expression");
  evalc->add_option("file", file, "space file")->required();
  evalc->add_option("expr", expr, "expression")->required();
  evalc->add_option("--point", point, "evaluate at one point");
  common(evalc);

  auto* inspect = app.add_subcommand("inspect", "separation axioms, perfectness and sobriety");
  inspect->add_option("file", file, "space file")->required();
  common(inspect);

  std::string op;
  std::vector<std::string> args;
  auto* s0 = app.add_subcommand("s0", "closed sets of S0");
  s0->add_option("op", op, "decompose, certificate, inject, distinguish or baire")
      ->required()
      ->check(CLI::IsMember({"decompose", "certificate", "inject", "distinguish", "baire"}));
  s0->add_option("args", args, "operands");
  s0->add_option("--count", cfg.count, "baire: number of random dense opens");
  common(s0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : int{error};
  }

  for (const auto* o : depth_options) cfg.depth_given = cfg.depth_given || o->count() > 0;

  if (classify->parsed()) return cmd_classify(cfg, file);
  if (extract->parsed()) return cmd_extract(cfg, which, file, height, extract_count->count() > 0);
  if (derive->parsed()) return cmd_derive(cfg, file);
  if (witness->parsed()) return cmd_witness(cfg, which, file, opens, subset);
  if (evalc->parsed()) return cmd_eval(cfg, file, expr, point);
  if (inspect->parsed()) return cmd_inspect(cfg, file);
  return cmd_s0(cfg, op, args);
}
