// Command-line front end.  Every subcommand reads the shared text formats,
// prints a "key = value" report with a fixed key order, and exits with
//   0  success
//   1  usage / parse error
//   2  precondition failure
//   3  assertion failure (a certified conclusion did not hold)

#include "linrel/linrel.hpp"

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace linrel;

struct Args {
  std::map<std::string, std::string> flags;
  double tol = kDefaultTol;

  const std::string& get(const std::string& name) const {
    auto it = flags.find(name);
    if (it == flags.end()) fail(Err::ParseError, "missing required flag --" + name);
    return it->second;
  }
  std::optional<std::string> opt(const std::string& name) const {
    auto it = flags.find(name);
    if (it == flags.end()) return std::nullopt;
    return it->second;
  }
  double get_double(const std::string& name) const {
    return io_detail::parse_double(get(name));
  }
  long get_long(const std::string& name) const {
    try {
      return std::stol(get(name));
    } catch (const std::exception&) {
      fail(Err::ParseError, "flag --" + name + " expects an integer");
    }
  }
  long opt_long(const std::string& name, long fallback) const {
    return flags.count(name) ? get_long(name) : fallback;
  }
};

Args parse_args(int argc, char** argv, int first,
                const std::set<std::string>& allowed) {
  Args a;
  for (int i = first; i < argc; ++i) {
    std::string s = argv[i];
    if (s.rfind("--", 0) != 0)
      fail(Err::ParseError, "expected a --flag, got '" + s + "'");
    std::string name = s.substr(2);
    if (name != "tol" && !allowed.count(name))
      fail(Err::ParseError, "unknown flag --" + name);
    if (i + 1 >= argc) fail(Err::ParseError, "flag --" + name + " needs a value");
    a.flags[name] = argv[++i];
  }
  if (a.flags.count("tol")) {
    a.tol = io_detail::parse_double(a.flags["tol"]);
    require(a.tol > 0 && a.tol < 1, Err::ParseError, "--tol must lie in (0, 1)");
  }
  return a;
}

Subspace load_subspace(const std::string& path, double tol) {
  ParsedMatrix pm = read_matrix(path);
  return Subspace::span(pm.matrix, pm.field, tol);
}

SymmetricPair load_pair(const std::string& domain_path, const std::string& gram_path,
                        double tol) {
  Subspace v = load_subspace(domain_path, tol);
  ParsedMatrix g = read_matrix(gram_path);
  require(g.matrix.rows() == v.dim() && g.matrix.cols() == v.dim(), Err::DimensionMismatch,
          "Gram matrix size must match the domain dimension");
  return SymmetricPair{v, g.matrix};
}

void emit(const Report& rep) { std::cout << rep.str(); }

// ---------------------------------------------------------------------------

int cmd_gap(const Args& a) {
  Subspace m = load_subspace(a.get("left"), a.tol);
  Subspace n = load_subspace(a.get("right"), a.tol);
  GapReport g = gap_metrics(m, n);
  Interval h = hausdorff_estimate(m, n, static_cast<int>(a.opt_long("samples", 4096)),
                                  static_cast<std::uint64_t>(a.opt_long("seed", 0)));
  Report rep;
  rep.add("delta_mn", g.delta_mn);
  rep.add("delta_nm", g.delta_nm);
  rep.add("hat_delta", g.hat_delta);
  rep.add("gamma_mn", g.gamma_mn);
  rep.add("gamma_nm", g.gamma_nm);
  rep.add("hat_gamma", g.hat_gamma);
  rep.add("hausdorff_lo", h.lo);
  rep.add("hausdorff_hi", h.hi);
  emit(rep);
  return 0;
}

int cmd_pair_index(const Args& a) {
  Subspace m = load_subspace(a.get("left"), a.tol);
  Subspace n = load_subspace(a.get("right"), a.tol);
  FredholmPairReport r = pair_index(m, n);
  Report rep;
  rep.add("dim_intersection", r.dim_intersection);
  rep.add("codim_sum", r.codim_sum);
  rep.add("index", r.index);
  emit(rep);
  return 0;
}

int cmd_annihilator(const Args& a) {
  Subspace s = load_subspace(a.get("space"), a.tol);
  Form f = read_form(a.get("form"), a.tol);
  std::string side_str = a.get("side");
  Side side;
  if (side_str == "left")
    side = Side::Left;
  else if (side_str == "right")
    side = Side::Right;
  else
    fail(Err::ParseError, "--side must be left or right");
  Subspace ann = annihilator(s, f, side);
  Report rep;
  rep.add("dim", ann.dim());
  emit(rep);
  if (auto out = a.opt("out")) write_matrix(*out, ann.basis, ann.field);
  return 0;
}

int cmd_adjoint(const Args& a) {
  Relation t = read_relation(a.get("relation"), a.tol);
  Form omega = read_form(a.get("omega"), a.tol);
  Complex h(-1, 0);
  if (auto hs = a.opt("h")) {
    double hv = io_detail::parse_double(*hs);
    h = Complex(hv, 0);
  }
  SymmetryReport sym = classify_symmetry(t, omega, h);
  Report rep;
  rep.add("adjoint_dim", sym.adjoint.dim());
  rep.add("dom_dim", sym.adjoint.domain().dim());
  rep.add("ran_dim", sym.adjoint.range().dim());
  rep.add("ker_dim", sym.adjoint.kernel().dim());
  rep.add("mul_dim", sym.adjoint.multivalued_part().dim());
  rep.add("is_h_symmetric", sym.is_h_symmetric);
  rep.add("is_h_selfadjoint", sym.is_h_selfadjoint);
  rep.add("is_maximal_h_symmetric", sym.is_maximal_h_symmetric);
  emit(rep);
  if (auto out = a.opt("out")) write_relation(*out, sym.adjoint);
  return 0;
}

int cmd_classify(const Args& a) {
  Subspace lambda = load_subspace(a.get("space"), a.tol);
  Form omega = read_form(a.get("omega"), a.tol);
  IsotropicReport r = classify_subspace(lambda, omega);
  Report rep;
  rep.add("isotropic", r.isotropic);
  rep.add("coisotropic", r.coisotropic);
  rep.add("lagrangian", r.lagrangian);
  rep.add("symplectic_subspace", r.symplectic_subspace);
  rep.add("maximal_isotropic", r.maximal_isotropic);
  rep.add("h_lambda", r.h_lambda);
  rep.add("gamma_lambda", r.gamma_lambda);
  rep.add("indeterminate", r.indeterminate);
  rep.add("tolerance_warning", r.tolerance_warning);
  emit(rep);
  return 0;
}

int cmd_reduce(const Args& a) {
  Subspace lambda = load_subspace(a.get("space"), a.tol);
  Form omega = read_form(a.get("omega"), a.tol);
  Reduction red = reduce(lambda, omega);
  Report rep;
  rep.add("reduced_dim", static_cast<int>(red.section.cols()));
  if (auto sub = a.opt("subspace")) {
    Subspace alpha = load_subspace(*sub, a.tol);
    Subspace img = reduce_subspace(alpha, red, omega);
    rep.add("image_dim", img.dim());
    if (auto outs = a.opt("out-subspace")) write_matrix(*outs, img.basis, img.field);
  }
  emit(rep);
  if (auto out = a.opt("out")) {
    if (red.section.cols() > 0) write_form(*out, red.reduced);
  }
  return 0;
}

int cmd_split(const Args& a) {
  Relation t = read_relation(a.get("relation"), a.tol);
  Form omega = read_form(a.get("omega"), a.tol);
  std::optional<Subspace> y0;
  if (auto p = a.opt("y0")) y0 = load_subspace(*p, a.tol);
  TransversalSplit sp = transversal_split(t, omega, y0 ? &*y0 : nullptr);
  Report rep;
  rep.add("x0_dim", sp.x0.dim());
  rep.add("x1_dim", sp.x1.dim());
  rep.add("y0_dim", sp.y0.dim());
  rep.add("y1_dim", sp.y1.dim());
  rep.add("t0_dim", sp.t0.dim());
  rep.add("t1_dim", sp.t1.dim());
  emit(rep);
  return 0;
}

int cmd_morse(const Args& a) {
  SymmetricPair p = load_pair(a.get("domain"), a.get("gram"), a.tol);
  PairStats s = pair_stats(p);
  Report rep;
  rep.add("norm", s.norm);
  rep.add("m_plus", s.m_plus);
  rep.add("m_minus", s.m_minus);
  rep.add("m_zero", s.m_zero);
  rep.add("semidefinite", s.semidefinite);
  if (s.gamma)
    rep.add("gamma", *s.gamma);
  else
    rep.add("gamma", std::string("undefined"));
  emit(rep);
  return 0;
}

int cmd_cgap(const Args& a) {
  SymmetricPair q = load_pair(a.get("domain1"), a.get("gram1"), a.tol);
  SymmetricPair r = load_pair(a.get("domain2"), a.get("gram2"), a.tol);
  double c = a.get_double("c");
  CGapInterval iv = c_gap_bounds(q, r, c, static_cast<int>(a.opt_long("samples", 2048)),
                                 static_cast<std::uint64_t>(a.opt_long("seed", 0)));
  Report rep;
  rep.add("lo", iv.lo);
  rep.add("hi", iv.hi);
  emit(rep);
  return 0;
}

int cmd_witt(const Args& a) {
  Relation t = read_relation(a.get("relation"), a.tol);
  Form omega = read_form(a.get("omega"), a.tol);
  WittReport w = witt_parity(t, omega);
  Report rep;
  rep.add("dom_dim", w.dom_dim);
  rep.add("m_minus", w.m_minus);
  rep.add("ker_q_dim", w.ker_q_dim);
  rep.add("ker_t_dim", w.ker_t_dim);
  rep.add("identity_holds", w.identity_holds);
  rep.add("kernels_match", w.kernels_match);
  rep.add("parity", w.parity);
  emit(rep);
  return (w.identity_holds && w.kernels_match) ? 0 : 3;
}

int cmd_stability(const Args& a) {
  Subspace lambda = load_subspace(a.get("lambda"), a.tol);
  Form omega0 = read_form(a.get("omega0"), a.tol);
  Subspace mu = load_subspace(a.get("mu"), a.tol);
  Form omega = read_form(a.get("omega"), a.tol);
  std::string kind = a.get("kind");
  StabilityReport r;
  if (kind == "max-isotropic")
    r = max_isotropic_stability(lambda, omega0, mu, omega);
  else if (kind == "strong")
    r = strong_stability(lambda, omega0, mu, omega);
  else
    fail(Err::ParseError, "--kind must be max-isotropic or strong");
  Report rep;
  rep.add("h_lambda", r.h_lambda);
  rep.add("form_distance", r.form_distance);
  rep.add("delta_lambda_mu", r.delta_lambda_mu);
  rep.add("l_value", r.l_value);
  rep.add("lhs", r.lhs);
  rep.add("rhs", r.rhs);
  rep.add("certified", r.certified);
  rep.add("mu_maximal_isotropic", r.mu_maximal_isotropic);
  rep.add("h_mu", r.h_mu);
  rep.add("conclusion_checked", r.conclusion_checked);
  emit(rep);
  return (r.certified && !r.conclusion_checked) ? 3 : 0;
}

int cmd_mod2(const Args& a) {
  Relation t = read_relation(a.get("relation"), a.tol);
  Form omega0 = read_form(a.get("omega0"), a.tol);
  Mod2Report r = mod2_experiment(t, omega0, a.get_double("form-delta"),
                                 a.get_double("relation-delta"),
                                 static_cast<int>(a.get_long("trials")),
                                 static_cast<std::uint64_t>(a.get_long("seed")));
  Report rep;
  rep.add("base_parity", r.base_parity);
  rep.add("trials", r.trials);
  rep.add("violations", r.violations);
  rep.add("min_observed_margin", r.min_observed_margin);
  rep.add("path_parity_constant", r.path_parity_constant);
  emit(rep);
  return r.violations == 0 ? 0 : 3;
}

int cmd_cayley(const Args& a) {
  Form omega = read_form(a.get("omega"), a.tol);
  Form q = a.opt("q") ? read_form(*a.opt("q"), a.tol)
                      : default_q_form(omega.nx(), omega.field, a.tol);
  if (a.opt("unitary")) {
    ParsedMatrix pu = read_matrix(a.get("unitary"));
    Relation t = cayley_forward(pu.matrix, omega, q);
    SymmetryReport sym = classify_symmetry(t, omega, Complex(-1, 0));
    IndexReport idx = index_and_parity(t);
    Report rep;
    rep.add("ker_dim", idx.ker_dim);
    rep.add("mul_dim", t.multivalued_part().dim());
    rep.add("index", idx.index);
    rep.add("parity", idx.parity);
    rep.add("is_skew_adjoint", sym.is_h_selfadjoint);
    emit(rep);
    if (auto out = a.opt("out")) write_relation(*out, t);
    return sym.is_h_selfadjoint ? 0 : 3;
  }
  // inverse direction
  Relation t = read_relation(a.get("relation"), a.tol);
  Mat u = cayley_inverse(t, omega, q);
  Relation back = cayley_forward(u, omega, q);
  bool round_trip = approx_equal(back, t, 1e-7);
  Report rep;
  rep.add("unitary_defect", (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm());
  rep.add("round_trip", round_trip);
  emit(rep);
  if (auto out = a.opt("out")) write_matrix(*out, u, omega.field);
  return round_trip ? 0 : 3;
}

int cmd_connect(const Args& a) {
  Relation t0 = read_relation(a.get("t0"), a.tol);
  Relation t1 = read_relation(a.get("t1"), a.tol);
  Form omega = read_form(a.get("omega"), a.tol);
  Form q = a.opt("q") ? read_form(*a.opt("q"), a.tol)
                      : default_q_form(omega.nx(), omega.field, a.tol);
  int steps = static_cast<int>(a.opt_long("steps", 16));
  ConnectResult res = connect(t0, t1, omega, q, steps);
  bool endpoints_ok = approx_equal(res.path.front(), t0, 1e-7) &&
                      approx_equal(res.path.back(), t1, 1e-7);
  bool parity_constant = true;
  for (int kd : res.kernel_dims)
    if (kd % 2 != res.parity) parity_constant = false;
  Report rep;
  rep.add("steps", steps);
  rep.add("parity", res.parity);
  rep.add("endpoints_match", endpoints_ok);
  rep.add("parity_constant", parity_constant);
  emit(rep);
  if (auto prefix = a.opt("out-prefix")) {
    std::ostringstream manifest;
    manifest << "steps = " << steps << "\n";
    for (std::size_t i = 0; i < res.path.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%03zu.rel", prefix->c_str(), i);
      write_relation(name, res.path[i]);
      char tbuf[32];
      std::snprintf(tbuf, sizeof tbuf, "%.12f", res.times[i]);
      manifest << "step_" << i << " = " << name << " t=" << tbuf
               << " ker_dim=" << res.kernel_dims[i] << "\n";
    }
    write_file(*prefix + "_manifest.txt", manifest.str());
  }
  return (endpoints_ok && parity_constant) ? 0 : 3;
}

int cmd_experiment(const Args& a) {
  auto cfg = read_config(a.get("config"));
  auto need = [&](const std::string& key) -> std::string {
    auto it = cfg.find(key);
    if (it == cfg.end()) fail(Err::ParseError, "config is missing key '" + key + "'");
    return it->second;
  };
  auto get_or = [&](const std::string& key, const std::string& fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
  };
  const int n = static_cast<int>(std::stol(need("n")));
  const int ker_dim = static_cast<int>(std::stol(need("ker_dim")));
  const int trials = static_cast<int>(std::stol(need("trials")));
  const std::uint64_t seed = static_cast<std::uint64_t>(std::stoll(need("seed")));
  const double form_delta = io_detail::parse_double(get_or("form_delta", "0.01"));
  const double relation_delta = io_detail::parse_double(get_or("relation_delta", "0.01"));
  const std::string field_str = get_or("field", "real");
  const Field f = (field_str == "complex") ? Field::Complex : Field::Real;
  require(n >= 1, Err::InvalidArgument, "n must be positive");
  require(ker_dim >= 0 && ker_dim <= n, Err::InvalidArgument, "ker_dim out of range");

  Form omega0 = [&] {
    if (f == Field::Complex)
      return make_form(Complex(0, 1) * Mat::Identity(n, n), f, FormKind::Skew, a.tol);
    require(n % 2 == 0, Err::DegenerateForm,
            "a nondegenerate real skew form needs an even dimension");
    Mat j = Mat::Zero(n, n);
    j.topRightCorner(n / 2, n / 2) = Mat::Identity(n / 2, n / 2);
    j.bottomLeftCorner(n / 2, n / 2) = -Mat::Identity(n / 2, n / 2);
    return make_form(j, f, FormKind::Skew, a.tol);
  }();
  Relation t = random_skew_adjoint(n, ker_dim, omega0, seed);
  Mod2Report r = mod2_experiment(t, omega0, form_delta, relation_delta, trials, seed + 1);
  bool even_ok = skew_form_even_dimension_check(n, 32, seed + 2) &&
                 skew_form_even_dimension_check(n + 1, 32, seed + 3);
  Report rep;
  rep.add("n", n);
  rep.add("ker_dim", ker_dim);
  rep.add("base_parity", r.base_parity);
  rep.add("trials", r.trials);
  rep.add("violations", r.violations);
  rep.add("min_observed_margin", r.min_observed_margin);
  rep.add("path_parity_constant", r.path_parity_constant);
  rep.add("even_dimension_check", even_ok);
  emit(rep);
  return (r.violations == 0 && even_ok) ? 0 : 3;
}

void usage() {
  std::cerr <<
      "usage: linrel <command> [--tol T] [flags]\n"
      "commands:\n"
      "  gap         --left M --right N [--samples S] [--seed K]\n"
      "  pair-index  --left M --right N\n"
      "  annihilator --space S --form F --side left|right [--out FILE]\n"
      "  adjoint     --relation R --omega F [--h H] [--out FILE]\n"
      "  classify    --space S --omega F\n"
      "  reduce      --space S --omega F [--subspace A] [--out FILE] [--out-subspace FILE]\n"
      "  split       --relation R --omega F [--y0 FILE]\n"
      "  morse       --domain V --gram Q\n"
      "  cgap        --domain1 V --gram1 Q --domain2 W --gram2 R --c C [--samples S] [--seed K]\n"
      "  witt        --relation R --omega F\n"
      "  stability   --kind max-isotropic|strong --lambda L --omega0 F0 --mu M --omega F\n"
      "  mod2        --relation R --omega0 F --form-delta X --relation-delta Y --trials N --seed K\n"
      "  cayley      --omega F [--q Q] (--unitary U | --relation R) [--out FILE]\n"
      "  connect     --t0 A --t1 B --omega F [--q Q] [--steps N] [--out-prefix P]\n"
      "  experiment  --config FILE\n";
}

int exit_code_for(Err e) {
  return e == Err::ParseError ? 1 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage();
    return 1;
  }
  std::string cmd = argv[1];
  try {
    using Handler = int (*)(const Args&);
    struct Entry {
      const char* name;
      Handler fn;
      std::set<std::string> flags;
    };
    static const std::vector<Entry> table = {
        {"gap", cmd_gap, {"left", "right", "samples", "seed"}},
        {"pair-index", cmd_pair_index, {"left", "right"}},
        {"annihilator", cmd_annihilator, {"space", "form", "side", "out"}},
        {"adjoint", cmd_adjoint, {"relation", "omega", "h", "out"}},
        {"classify", cmd_classify, {"space", "omega"}},
        {"reduce", cmd_reduce, {"space", "omega", "subspace", "out", "out-subspace"}},
        {"split", cmd_split, {"relation", "omega", "y0"}},
        {"morse", cmd_morse, {"domain", "gram"}},
        {"cgap", cmd_cgap, {"domain1", "gram1", "domain2", "gram2", "c", "samples", "seed"}},
        {"witt", cmd_witt, {"relation", "omega"}},
        {"stability", cmd_stability, {"kind", "lambda", "omega0", "mu", "omega"}},
        {"mod2", cmd_mod2,
         {"relation", "omega0", "form-delta", "relation-delta", "trials", "seed"}},
        {"cayley", cmd_cayley, {"omega", "q", "unitary", "relation", "out"}},
        {"connect", cmd_connect, {"t0", "t1", "omega", "q", "steps", "out-prefix"}},
        {"experiment", cmd_experiment, {"config"}},
    };
    for (const auto& entry : table) {
      if (cmd == entry.name) {
        Args a = parse_args(argc, argv, 2, entry.flags);
        return entry.fn(a);
      }
    }
    usage();
    return 1;
  } catch (const linrel::Error& e) {
    std::cout << "error = " << linrel::err_name(e.code()) << "\n";
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
