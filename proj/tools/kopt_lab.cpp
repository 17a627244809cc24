// kopt-lab: generate instances, run 2-Opt and exact solvers, certify pairs of
// tours and produce JSON reports.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or IO error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kopt/kopt.hpp"
#include "kopt/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

class IoError : public kopt::Error {
 public:
  using kopt::Error::Error;
};

// Writes to the named file, or to stdout when the name is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const kopt::Json& j, const std::string& path) {
  Output out(path);
  out.stream() << j.dump(2) << '\n';
}

struct Options {
  std::uint64_t seed = 1;
  std::size_t n = 10;
  std::size_t n_min = 6;
  std::size_t n_max = 12;
  double p = 2.0;
  double lb_p = 1.0;  // the layered family defaults to L1
  int q = 3;
  int k = 2;
  std::size_t trials = 10;
  std::int64_t grid = 1000;
  std::string in, out, tour, opt;
  bool timing = false;
};

int gen_random(const Options& o) {
  const kopt::Instance inst = kopt::gen_random(o.n, o.grid, kopt::PNorm(o.p), o.seed);
  Output out(o.out);
  kopt::tsplib::write_instance(out.stream(), inst);
  return kOk;
}

int layered_p(double p) {
  if (p != static_cast<int>(p)) throw kopt::Unsupported("the layered family needs an integer p");
  return static_cast<int>(p);
}

int gen_lb(const Options& o) {
  const int p = layered_p(o.lb_p);
  {
    Output out(o.out);
    kopt::tsplib::write_lb_instance(out.stream(), o.k, p, o.q);
  }
  const kopt::LbGroupSizes sizes = kopt::lb_group_sizes(p, o.q);
  kopt::Json j;
  j["schema"] = kopt::kReportSchema;
  j["family"] = "layered";
  j["k"] = o.k;
  j["p"] = p;
  j["q"] = o.q;
  j["n"] = sizes.total().get_str();
  j["groups"] = {{"left", sizes.layered.get_str()},
                 {"right", sizes.layered.get_str()},
                 {"bridge", sizes.bridge.get_str()},
                 {"vertical", sizes.vertical.get_str()}};
  if (sizes.total() <= static_cast<unsigned long>(kopt::kMaxLbInMemory)) {
    const kopt::LowerBoundInstance lb = kopt::generate_lb_instance(o.k, p, o.q);
    const kopt::LbTour t = kopt::build_lb_tour(lb);
    const kopt::SpanningTreeBound tree = kopt::doubled_spanning_tree_tour(lb);
    j["tour_length"] = t.length().get_str();
    j["tour_floor"] = kopt::lb_tour_floor(lb).get_str();
    j["tree_length"] = tree.tree_length.get_str();
    j["tree_cap"] = tree.tree_cap.get_str();
    j["doubled_tree"] = tree.doubled().get_str();
    j["tour_cap"] = tree.tour_cap.get_str();
    if (!o.tour.empty()) {
      Output tf(o.tour);
      kopt::tsplib::write_tour(tf.stream(), t.tour, lb.instance.id() + ".T");
    }
  } else if (!o.tour.empty()) {
    throw kopt::Unsupported("tour output needs the family in memory");
  }
  // The summary goes to stdout only when the instance went to a file.
  if (!o.out.empty()) std::cout << j.dump(2) << '\n';
  return kOk;
}

int gen_3d(const Options& o) {
  const kopt::ThreeDInstance g = kopt::generate_3d_instance(o.k);
  kopt::Json j;
  j["schema"] = kopt::kReportSchema;
  j["family"] = "spatial";
  j["k"] = g.k;
  kopt::Json pts = kopt::Json::array();
  for (const kopt::Point3& p : g.instance.points3()) pts.push_back({p.x, p.y, p.z});
  j["points"] = std::move(pts);
  j["t"] = kopt::tour_json(g.t);
  j["s"] = kopt::tour_json(g.s);
  j["t_length"] = kopt::tour_length(g.instance, g.t);
  j["s_length"] = kopt::tour_length(g.instance, g.s);
  const bool s_opt = kopt::is_k_optimal(g.instance, g.s, 2).optimal;
  j["s_two_optimal"] = s_opt;
  emit(j, o.out);
  return s_opt ? kOk : kCheckFailed;
}

int solve_2opt(const Options& o) {
  const kopt::Instance inst = kopt::tsplib::read_instance_file(o.in);
  kopt::Tour start = [&] {
    if (!o.tour.empty()) return kopt::tsplib::read_tour_file(o.tour, inst.size());
    kopt::Rng rng(o.seed);
    return kopt::random_tour(inst.size(), rng);
  }();
  std::size_t moves = 0;
  const kopt::Tour s = kopt::two_opt(inst, start, &moves);
  kopt::Json j;
  j["schema"] = kopt::kReportSchema;
  j["instance"] = inst.id();
  j["n"] = inst.size();
  j["p"] = inst.norm().p();
  j["seed"] = o.seed;
  j["generator"] = std::string(kopt::Rng::kName);
  j["start_length"] = kopt::tour_length(inst, start);
  j["moves"] = moves;
  j["length"] = kopt::tour_length(inst, s);
  j["tour"] = kopt::tour_json(s);
  if (!o.out.empty()) {
    Output tf(o.out);
    kopt::tsplib::write_tour(tf.stream(), s, inst.id() + ".2opt");
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int solve_exact(const Options& o) {
  const kopt::Instance inst = kopt::tsplib::read_instance_file(o.in);
  const kopt::ExactSolution sol = kopt::exact_opt(inst);
  kopt::Json j;
  j["schema"] = kopt::kReportSchema;
  j["instance"] = inst.id();
  j["n"] = inst.size();
  j["p"] = inst.norm().p();
  j["solver"] = "held-karp";
  j["length"] = sol.length;
  j["tour"] = kopt::tour_json(sol.tour);
  if (!o.out.empty()) {
    Output tf(o.out);
    kopt::tsplib::write_tour(tf.stream(), sol.tour, inst.id() + ".opt");
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int certify(const Options& o) {
  const kopt::Instance inst = kopt::tsplib::read_instance_file(o.in);
  const kopt::Tour s = kopt::tsplib::read_tour_file(o.tour, inst.size());
  const kopt::Tour t = o.opt.empty() ? kopt::exact_opt(inst).tour
                                     : kopt::tsplib::read_tour_file(o.opt, inst.size());
  const kopt::Certificate cert = kopt::certify_pair(inst, t, s);
  kopt::Json j;
  j["schema"] = kopt::kReportSchema;
  j["instance"] = inst.id();
  j["p"] = inst.norm().p();
  j["optimal_tour"] = o.opt.empty() ? "held-karp" : "given";
  j["certificate"] = kopt::certificate_json(cert);
  emit(j, o.out);
  return cert.passed() ? kOk : kCheckFailed;
}

int scan_kopt(const Options& o) {
  kopt::Json j;
  j["schema"] = kopt::kReportSchema;
  auto scan = [&](const kopt::Instance& inst, const kopt::Tour& t) {
    const kopt::ScanReport r = kopt::scan_2opt_optimality(inst, t);
    j["instance"] = inst.id();
    j["scan"] = kopt::scan_json(r);
    // The verdict itself is data; only disagreement with the search routine
    // is a failure.
    const bool consistent = kopt::find_improving_2move(inst, t).has_value() == !r.two_optimal;
    j["consistent"] = consistent;
    if (t.size() <= kopt::kMaxThreeOptScan) {
      j["three_optimal"] = kopt::is_k_optimal(inst, t, 3).optimal;
    }
    return consistent;
  };
  bool ok = false;
  if (!o.in.empty()) {
    if (o.tour.empty()) throw CLI::ValidationError("scan-kopt", "--in needs --tour");
    const kopt::Instance inst = kopt::tsplib::read_instance_file(o.in);
    ok = scan(inst, kopt::tsplib::read_tour_file(o.tour, inst.size()));
  } else {
    const kopt::LowerBoundInstance lb = kopt::generate_lb_instance(o.k, layered_p(o.lb_p), o.q);
    j["family"] = {{"k", o.k}, {"p", lb.p}, {"q", lb.q}};
    ok = scan(lb.instance, kopt::build_lb_tour(lb).tour);
  }
  emit(j, o.out);
  return ok ? kOk : kCheckFailed;
}

int report(const Options& o) {
  kopt::ExperimentConfig cfg;
  cfg.seed = o.seed;
  cfg.n_min = o.n_min;
  cfg.n_max = o.n_max;
  cfg.grid = o.grid;
  cfg.p = o.p;
  cfg.trials = o.trials;
  cfg.timing = o.timing;
  const kopt::Json r = kopt::run_experiment(cfg);
  emit(r, o.out);
  return kopt::report_passed(r) ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kopt-lab: 2-Opt experiments, certificates and adversarial instances"};
  app.require_subcommand(1);
  Options o;

  auto* gr = app.add_subcommand("gen-random", "random grid instance in general position (TSPLIB)");
  gr->add_option("--n", o.n, "number of points")->required();
  gr->add_option("--seed", o.seed, "PRNG seed");
  gr->add_option("--grid", o.grid, "coordinates are drawn from 0..grid");
  gr->add_option("--p", o.p, "p-norm");
  gr->add_option("--out", o.out, "output file (default stdout)");

  auto* gl = app.add_subcommand("gen-lb", "layered lower-bound family (TSPLIB, streamed)");
  gl->add_option("--k", o.k, "k of the k-Opt neighbourhood");
  gl->add_option("--p", o.lb_p, "integer p-norm");
  gl->add_option("--q", o.q, "odd layer count >= 3");
  gl->add_option("--out", o.out, "instance file; a JSON summary then goes to stdout");
  gl->add_option("--tour", o.tour, "also write the constructed tour here");

  auto* g3 = app.add_subcommand("gen-3d", "spatial family with tours T and S (JSON)");
  g3->add_option("--k", o.k, "even size parameter");
  g3->add_option("--out", o.out, "output file (default stdout)");

  auto* s2 = app.add_subcommand("solve-2opt", "first-improvement 2-Opt from a random or given tour");
  s2->add_option("--in", o.in, "TSPLIB instance")->required();
  s2->add_option("--seed", o.seed, "seed of the random start tour");
  s2->add_option("--tour", o.tour, "start tour instead of a random one");
  s2->add_option("--out", o.out, "write the resulting tour here");

  auto* se = app.add_subcommand("solve-exact", "Held-Karp optimum (n <= 18)");
  se->add_option("--in", o.in, "TSPLIB instance")->required();
  se->add_option("--out", o.out, "write the optimal tour here");

  auto* ce = app.add_subcommand("certify", "certify a 2-optimal tour against an optimal one");
  ce->add_option("--in", o.in, "TSPLIB instance")->required();
  ce->add_option("--tour", o.tour, "the 2-optimal tour")->required();
  ce->add_option("--opt", o.opt, "optimal tour (default: Held-Karp)");
  ce->add_option("--out", o.out, "JSON output (default stdout)");

  auto* sk = app.add_subcommand("scan-kopt", "exhaustive improving-2-move scan");
  sk->add_option("--in", o.in, "TSPLIB instance (else the layered family)");
  sk->add_option("--tour", o.tour, "tour to scan, with --in");
  sk->add_option("--k", o.k, "layered family: k");
  sk->add_option("--p", o.lb_p, "layered family: integer p");
  sk->add_option("--q", o.q, "layered family: q");
  sk->add_option("--out", o.out, "JSON output (default stdout)");

  auto* rp = app.add_subcommand("report", "seeded experiment: 2-Opt vs optimum with certificates");
  rp->add_option("--seed", o.seed, "master seed");
  rp->add_option("--trials", o.trials, "number of trials");
  rp->add_option("--n-min", o.n_min, "smallest n");
  rp->add_option("--n-max", o.n_max, "largest n (<= 18)");
  rp->add_option("--n", o.n, "fixed n (sets both bounds)");
  rp->add_option("--grid", o.grid, "coordinate bound");
  rp->add_option("--p", o.p, "p-norm");
  rp->add_flag("--timing", o.timing, "record wall-clock times (breaks byte-identical output)");
  rp->add_option("--out", o.out, "JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (rp->parsed() && rp->count("--n") > 0) o.n_min = o.n_max = o.n;
    if (*gr) return gen_random(o);
    if (*gl) return gen_lb(o);
    if (*g3) return gen_3d(o);
    if (*s2) return solve_2opt(o);
    if (*se) return solve_exact(o);
    if (*ce) return certify(o);
    if (*sk) return scan_kopt(o);
    if (*rp) return report(o);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const kopt::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const kopt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
